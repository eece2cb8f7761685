//! Depth of a group algebra in its Drinfeld double, computed from the adjoint
//! character, and the diagonal embedding `G ≤ G × G`.

use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::chartab::{CharacterTable, TableSource};
use crate::classfn::{inner_product, multiplicity, tensor, ClassFunction};
use crate::depth::{induction_restriction_matrix, min_depth, Certificate, DepthReport};
use crate::error::{Error, Result};
use crate::group::{diagonal_subgroup, PermutationGroup};
use crate::intmat::IntMatrix;
use crate::moddepth::module_depth;

/// Character of the conjugation action of `G` on `kG`: `g ↦ |C_G(g)|`.
pub fn adjoint_character(table: &CharacterTable) -> ClassFunction {
    let group = table.group();
    let classes = group.classes();
    let values: Vec<i64> = (0..classes.len())
        .map(|k| classes.centralizer_order(k, group.order()) as i64)
        .collect();
    ClassFunction::from_integers(group.clone(), &values).expect("one value per class")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DoubleDepth {
    Exact(u32),
    Interval([u32; 2]),
}

#[derive(Clone, Debug, Serialize)]
pub struct DoubleDepthReport {
    pub group: String,
    pub order: usize,
    pub classes: usize,
    pub center_order: usize,
    pub centerless: bool,
    pub chi_ad: ClassFunction,
    #[serde(rename = "S")]
    pub s: IntMatrix,
    /// Number of zero entries of `S^0, S^1, ...` through the first repeat.
    pub s_zero_counts: Vec<usize>,
    pub ell_q: Option<u32>,
    /// Module depth of the adjoint character.
    pub dq: u32,
    pub d_odd_double: u32,
    pub d_double: DoubleDepth,
    pub components: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub violations: Vec<String>,
}

impl DoubleDepthReport {
    pub fn without_certificates(mut self) -> Self {
        self.certificate = None;
        self
    }
}

/// Connected components of the graph on indices with an edge wherever `s` is nonzero.
fn components(s: &IntMatrix) -> usize {
    let n = s.rows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..n {
        for j in 0..n {
            if s.get(i, j) != &BigInt::from(0) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

pub fn double_depth(table: &CharacterTable) -> Result<DoubleDepthReport> {
    let group = table.group();
    let r = table.len();
    let chi_ad = adjoint_character(table);
    let chars = table.characters();

    let rows: Vec<Vec<BigInt>> = chars
        .par_iter()
        .map(|chi_i| {
            chars
                .iter()
                .map(|chi_j| multiplicity(&tensor(&chi_ad, chi_j)?, chi_i))
                .collect()
        })
        .collect::<Result<_>>()?;
    let s = IntMatrix::from_rows(rows)?;

    let mut powers = vec![IntMatrix::identity(r), s.clone()];
    let mut n = 0usize;
    while !powers[n].same_zero_pattern(&powers[n + 1]) {
        n += 1;
        if n > r + 1 {
            return Err(Error::CapExceeded {
                cap: 2 * r as u32 + 3,
            });
        }
        let next = powers[n].mul(&s)?;
        powers.push(next);
    }
    let d_odd_double = 2 * n as u32 + 1;
    let s_zero_counts = powers.iter().map(IntMatrix::zero_count).collect();
    let certificate = Certificate {
        depth: d_odd_double,
        base: "S",
        lower_power: n as u32,
        higher_power: n as u32 + 1,
        lower: powers[n].clone(),
        higher: powers[n + 1].clone(),
    };

    let adjoint = module_depth(&chi_ad, table)?;
    let center = group.center();
    let centerless = center.order() == 1;
    let ell_q = if centerless {
        adjoint.faithful_at
    } else {
        None
    };
    let dq = adjoint.depth;
    let d_double = if centerless {
        DoubleDepth::Exact(2 * dq + 1)
    } else {
        DoubleDepth::Interval([2 * dq + 1, 2 * dq + 2])
    };
    let comps = components(&s);

    let mut violations = Vec::new();
    if !s.is_symmetric() {
        violations.push("S is not symmetric".into());
    }
    if chi_ad.degree().to_integer() != Some(BigInt::from(group.order())) {
        violations.push("chi_ad(1) differs from |G|".into());
    }
    let trivial = ClassFunction::trivial(group.clone());
    if inner_product(&chi_ad, &trivial)?.to_integer() != Some(BigInt::from(r)) {
        violations.push("<chi_ad, 1> differs from the number of classes".into());
    }
    if !adjoint.kernel_subgroup.same_as(&center) {
        violations.push("kernel of chi_ad differs from the center".into());
    }
    if comps != center.order() {
        violations.push(format!(
            "S has {comps} components but |Z(G)| = {}",
            center.order()
        ));
    }
    if d_odd_double != 2 * dq + 1 {
        violations.push(format!(
            "odd double depth {d_odd_double} differs from 2·{dq}+1"
        ));
    }
    if centerless != ell_q.is_some() {
        violations.push("ell_Q presence disagrees with the center".into());
    }
    // For the trivial group `χ_ad` is trivial, so its module depth 0 falls below `ell_Q = 1`.
    if let Some(l) = ell_q.filter(|_| group.order() > 1) {
        if d_odd_double != 2 * l + 1 {
            violations.push(format!(
                "odd double depth {d_odd_double} differs from 2·{l}+1"
            ));
        }
    }
    violations.extend(adjoint.verify(r));

    Ok(DoubleDepthReport {
        group: group.display_name(),
        order: group.order(),
        classes: r,
        center_order: center.order(),
        centerless,
        chi_ad,
        s,
        s_zero_counts,
        ell_q,
        dq,
        d_odd_double,
        d_double,
        components: comps,
        certificate: Some(certificate),
        violations,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagonalDepthReport {
    pub group: String,
    pub order: usize,
    pub product_order: usize,
    pub matrix: IntMatrix,
    pub report: DepthReport,
    pub centerless: bool,
    pub ell_q: Option<u32>,
    /// `2·dq + 1` when the group is centerless; this is `2·ell_Q + 1` unless the group is trivial.
    pub expected: Option<u32>,
    pub violations: Vec<String>,
}

impl DiagonalDepthReport {
    pub fn without_certificates(mut self) -> Self {
        self.report = self.report.without_certificates();
        self
    }
}

/// Depth of `{(g, g)} ≤ G × G` through the general subgroup pipeline, compared with
/// the adjoint-character prediction.
pub fn diagonal_depth(
    group: &Arc<PermutationGroup>,
    tables: &dyn TableSource,
    cap: usize,
) -> Result<DiagonalDepthReport> {
    let emb = diagonal_subgroup(group, cap)?;
    let table_gg = tables.table(&emb.supergroup)?;
    let table_d = tables.table(&emb.subgroup)?;
    let ir = induction_restriction_matrix(&emb, &table_gg, &table_d)?;
    let report = min_depth(&ir.matrix)?;
    let double = double_depth(&*tables.table(group)?)?;
    let expected = double.centerless.then_some(2 * double.dq + 1);

    let mut violations = report.verify();
    if let Some(e) = expected {
        if report.d != e {
            violations.push(format!(
                "diagonal depth {} differs from the predicted {e}",
                report.d
            ));
        }
    }
    Ok(DiagonalDepthReport {
        group: group.display_name(),
        order: group.order(),
        product_order: emb.supergroup.order(),
        matrix: ir.matrix,
        report,
        centerless: double.centerless,
        ell_q: double.ell_q,
        expected,
        violations,
    })
}
