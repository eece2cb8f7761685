//! Induction-restriction matrices and the zero-pattern depth criteria for
//! subgroup pairs.

use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::chartab::{CharacterTable, TableSource};
use crate::classfn::{induce, multiplicity, permutation_character, restrict, ClassFunction};
use crate::error::{Error, Result};
use crate::group::{quotient, PermutationGroup, SubgroupEmbedding};
use crate::intmat::IntMatrix;
use crate::moddepth::module_depth;

/// `M[i][j] = ⟨χ_i^H, χ_j^G↓H⟩`, rows indexed by `Irr(H)` and columns by `Irr(G)`.
#[derive(Clone, Debug, Serialize)]
pub struct InductionRestrictionMatrix {
    pub supergroup: String,
    pub subgroup: String,
    pub index: usize,
    pub matrix: IntMatrix,
}

pub fn induction_restriction_matrix(
    emb: &SubgroupEmbedding,
    table_g: &CharacterTable,
    table_h: &CharacterTable,
) -> Result<InductionRestrictionMatrix> {
    if !table_g.group().same_as(&emb.supergroup) || !table_h.group().same_as(&emb.subgroup) {
        return Err(Error::TableMismatch);
    }
    let chars_h = table_h.characters();
    let chars_g = table_g.characters();

    let by_restriction: Vec<Vec<BigInt>> = chars_g
        .par_iter()
        .map(|chi| {
            let res = restrict(chi, emb)?;
            chars_h.iter().map(|psi| multiplicity(&res, psi)).collect()
        })
        .collect::<Result<_>>()
        .map_err(|_| Error::TableMismatch)?;
    let by_induction: Vec<Vec<BigInt>> = chars_h
        .par_iter()
        .map(|psi| {
            let ind = induce(psi, emb)?;
            chars_g.iter().map(|chi| multiplicity(&ind, chi)).collect()
        })
        .collect::<Result<_>>()
        .map_err(|_| Error::TableMismatch)?;

    let restricted = IntMatrix::from_rows(by_restriction)?.transpose();
    let induced = IntMatrix::from_rows(by_induction)?;
    if restricted != induced {
        return Err(Error::TableMismatch);
    }
    if !restricted.zero_rows().is_empty() || !restricted.zero_cols().is_empty() {
        return Err(Error::TableMismatch);
    }
    Ok(InductionRestrictionMatrix {
        supergroup: emb.supergroup.display_name(),
        subgroup: emb.subgroup.display_name(),
        index: emb.index,
        matrix: restricted,
    })
}

/// Witness for one depth value: `higher ≤ q·lower` entrywise.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub depth: u32,
    /// `"M"` for the ladder `M^n`, `"T"` for powers of `MᵀM`, `"S"` for a symmetric base.
    pub base: &'static str,
    pub lower_power: u32,
    pub higher_power: u32,
    pub lower: IntMatrix,
    pub higher: IntMatrix,
}

impl Certificate {
    pub fn verify(&self) -> bool {
        self.lower.zeros_subset_of(&self.higher)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DepthCertificates {
    pub d: Certificate,
    pub d_odd: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_even: Option<Certificate>,
    pub d_h: Certificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct DepthReport {
    pub d: u32,
    pub d_odd: u32,
    pub d_even: Option<u32>,
    pub d_h: u32,
    /// Largest depth value examined for `d`, `d_odd` and `d_even`.
    pub search_cap: u32,
    /// Largest h-depth value examined.
    pub h_search_cap: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates: Option<DepthCertificates>,
}

impl DepthReport {
    pub fn without_certificates(mut self) -> Self {
        self.certificates = None;
        self
    }

    /// Violated invariants, empty when the report is consistent.
    pub fn verify(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (d, d_h) = (self.d as i64, self.d_h as i64);
        if !(d <= self.d_odd as i64 && self.d_odd as i64 <= d + 1) {
            out.push(format!(
                "d_odd = {} outside [d, d+1] for d = {d}",
                self.d_odd
            ));
        }
        if let Some(e) = self.d_even {
            if !(d <= e as i64 && e as i64 <= d + 1) {
                out.push(format!("d_even = {e} outside [d, d+1] for d = {d}"));
            }
        }
        if !(d_h - 2 <= d && d <= d_h + 1) {
            out.push(format!(
                "d = {d} outside [d_h - 2, d_h + 1] for d_h = {d_h}"
            ));
        }
        if self.d_odd.is_multiple_of(2)
            || self.d_even.is_some_and(|e| e % 2 == 1)
            || self.d_h.is_multiple_of(2)
        {
            out.push("depth parity mismatch".into());
        }
        if let Some(c) = &self.certificates {
            let all = [Some(&c.d), Some(&c.d_odd), c.d_even.as_ref(), Some(&c.d_h)];
            for cert in all.into_iter().flatten() {
                if !cert.verify() {
                    out.push(format!(
                        "certificate for depth {} does not verify",
                        cert.depth
                    ));
                }
            }
        }
        out
    }
}

/// Minimum depth, odd depth, even depth and h-depth of the pair with
/// induction-restriction matrix `m`.
///
/// Depth `n` holds when every zero of `M^{n-1}` is a zero of `M^{n+1}`, with
/// `M^0 = I`, `M^{2k} = (MMᵀ)^k` and `M^{2k+1} = (MMᵀ)^k M`. h-depth `2n-1` holds
/// when every zero of `T^{n-1}` is a zero of `T^n`, `T = MᵀM`.
pub fn min_depth(m: &IntMatrix) -> Result<DepthReport> {
    let (r, s) = (m.rows(), m.cols());
    if r == 0 || s == 0 {
        return Err(Error::DegenerateMatrix("empty matrix".into()));
    }
    if !m.is_nonnegative() {
        return Err(Error::DegenerateMatrix("negative entry".into()));
    }
    if !m.zero_rows().is_empty() || !m.zero_cols().is_empty() {
        return Err(Error::DegenerateMatrix("zero row or column".into()));
    }
    let mt = m.transpose();

    let search_cap = 2 * r as u32 + 2;
    let mut ladder = vec![IntMatrix::identity(r), m.clone()];
    let mut d = None;
    let mut d_odd = None;
    let mut d_even = None;
    for n in 1..=search_cap {
        let k = n as usize + 1;
        while ladder.len() <= k {
            let last = ladder.len() - 1;
            let next = if last % 2 == 0 {
                ladder[last].mul(m)?
            } else {
                ladder[last].mul(&mt)?
            };
            ladder.push(next);
        }
        let lower = &ladder[n as usize - 1];
        let higher = &ladder[n as usize + 1];
        if lower.zeros_subset_of(higher) {
            let cert = || Certificate {
                depth: n,
                base: "M",
                lower_power: n - 1,
                higher_power: n + 1,
                lower: lower.clone(),
                higher: higher.clone(),
            };
            if d.is_none() {
                d = Some(cert());
            }
            if n % 2 == 1 && d_odd.is_none() {
                d_odd = Some(cert());
            }
            if n % 2 == 0 && d_even.is_none() {
                d_even = Some(cert());
            }
        }
        if d_odd.is_some() && d_even.is_some() {
            break;
        }
    }
    let (d, d_odd) = match (d, d_odd) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::CapExceeded { cap: search_cap }),
    };

    let t = mt.mul(m)?;
    let h_steps = s as u32 + 1;
    let h_search_cap = 2 * h_steps - 1;
    let mut prev = IntMatrix::identity(s);
    let mut d_h = None;
    for n in 1..=h_steps {
        let next = prev.mul(&t)?;
        if prev.zeros_subset_of(&next) {
            d_h = Some(Certificate {
                depth: 2 * n - 1,
                base: "T",
                lower_power: n - 1,
                higher_power: n,
                lower: prev,
                higher: next,
            });
            break;
        }
        prev = next;
    }
    let d_h = d_h.ok_or(Error::CapExceeded { cap: h_search_cap })?;

    Ok(DepthReport {
        d: d.depth,
        d_odd: d_odd.depth,
        d_even: d_even.as_ref().map(|c| c.depth),
        d_h: d_h.depth,
        search_cap,
        h_search_cap,
        certificates: Some(DepthCertificates {
            d,
            d_odd,
            d_even,
            d_h,
        }),
    })
}

/// `M^{k}` in the ladder `M^0 = I`, `M^{2j} = (MMᵀ)^j`, `M^{2j+1} = (MMᵀ)^j M`.
pub fn ladder_power(m: &IntMatrix, k: u32) -> Result<IntMatrix> {
    let s = m.mul(&m.transpose())?;
    let half = s.pow(k / 2)?;
    if k.is_multiple_of(2) {
        Ok(half)
    } else {
        half.mul(m)
    }
}

/// Whether the pair with matrix `m` has depth `n`: zeros of `M^{n-1}` are zeros
/// of `M^{n+1}`.
pub fn satisfies_depth(m: &IntMatrix, n: u32) -> Result<bool> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange("depth is at least 1".into()));
    }
    Ok(ladder_power(m, n - 1)?.zeros_subset_of(&ladder_power(m, n + 1)?))
}

/// Character of `k[H\G]` as an `H`-module.
pub fn quotient_module_character(emb: &SubgroupEmbedding) -> ClassFunction {
    restrict(&permutation_character(emb), emb).expect("character of the supergroup")
}

/// Depth of a subgroup pair together with the module-depth interval and the
/// h-depth identity.
#[derive(Clone, Debug, Serialize)]
pub struct IntervalCheck {
    pub supergroup: String,
    pub subgroup: String,
    pub index: usize,
    pub normal: bool,
    pub matrix: IntMatrix,
    pub report: DepthReport,
    /// Module depth of `k[H\G]` over `H`.
    pub dq: u32,
    pub interval: [u32; 2],
    pub holds: bool,
    /// Module depth of `k[H\G]` over `G`; the h-depth equals `2·dq_over_g + 1`.
    pub dq_over_g: u32,
    pub d_h_expected: u32,
    pub violations: Vec<String>,
}

impl IntervalCheck {
    pub fn without_certificates(mut self) -> Self {
        self.report = self.report.without_certificates();
        self
    }
}

pub fn subgroup_depth_interval_check(
    emb: &SubgroupEmbedding,
    tables: &dyn TableSource,
) -> Result<IntervalCheck> {
    let table_g = tables.table(&emb.supergroup)?;
    let table_h = tables.table(&emb.subgroup)?;
    let ir = induction_restriction_matrix(emb, &table_g, &table_h)?;
    let report = min_depth(&ir.matrix)?;

    let dq = module_depth(&quotient_module_character(emb), &table_h)?.depth;
    let dq_over_g = module_depth(&permutation_character(emb), &table_g)?.depth;
    let interval = [2 * dq + 1, 2 * dq + 2];
    let holds = interval[0] <= report.d && report.d <= interval[1];
    let d_h_expected = 2 * dq_over_g + 1;
    let normal = emb.is_normal();

    let mut violations = report.verify();
    if !holds {
        violations.push(format!(
            "d = {} outside [{}, {}] for dq = {dq}",
            report.d, interval[0], interval[1]
        ));
    }
    if report.d_h != d_h_expected {
        violations.push(format!(
            "d_h = {} but 2·d(Q over G) + 1 = {d_h_expected}",
            report.d_h
        ));
    }
    if normal != (report.d <= 2) {
        violations.push(format!("normal = {normal} but d = {}", report.d));
    }
    Ok(IntervalCheck {
        supergroup: ir.supergroup,
        subgroup: ir.subgroup,
        index: ir.index,
        normal,
        matrix: ir.matrix,
        report,
        dq,
        interval,
        holds,
        dq_over_g,
        d_h_expected,
        violations,
    })
}

/// Comparison of `H ≤ G` with the corefree pair `H/N ≤ G/N`, `N` the core.
#[derive(Clone, Debug, Serialize)]
pub struct CorefreeReport {
    pub supergroup: String,
    pub subgroup: String,
    pub core: Arc<PermutationGroup>,
    pub core_trivial: bool,
    pub quotient_group: Arc<PermutationGroup>,
    pub quotient_subgroup: Arc<PermutationGroup>,
    pub d: u32,
    pub d_quotient: u32,
    /// Module depth of `k[H\G]` over `H`.
    pub common_d: u32,
    /// The same module depth computed over `H/N`.
    pub common_d_quotient: u32,
    pub interval: [u32; 2],
    pub inequality_holds: bool,
    pub interval_holds: bool,
    pub violations: Vec<String>,
}

pub fn corefree_compare(
    emb: &SubgroupEmbedding,
    tables: &dyn TableSource,
) -> Result<CorefreeReport> {
    let core = Arc::new(emb.core());
    let core_trivial = core.order() == 1;
    let quotient_emb = if core_trivial {
        emb.clone()
    } else {
        let (gq, map) = quotient(&emb.supergroup, &core)?;
        let hgens = emb
            .subgroup
            .generators()
            .iter()
            .map(|h| map.image(h))
            .filter(|x| !x.is_identity())
            .collect();
        let hq = Arc::new(gq.subgroup(hgens)?);
        SubgroupEmbedding::new(gq, hq)?
    };

    let original = subgroup_depth_interval_check(emb, tables)?;
    let reduced = if core_trivial {
        original.clone()
    } else {
        subgroup_depth_interval_check(&quotient_emb, tables)?
    };
    let (d, d_quotient) = (original.report.d, reduced.report.d);
    let common_d = original.dq;
    let common_d_quotient = reduced.dq;
    let interval = [2 * common_d + 1, 2 * common_d + 2];
    let inequality_holds = d_quotient <= d && d <= d_quotient + 1;
    let in_interval = |x: u32| interval[0] <= x && x <= interval[1];
    let interval_holds = in_interval(d) && in_interval(d_quotient);

    let mut violations = original.violations.clone();
    if !core_trivial {
        violations.extend(
            reduced
                .violations
                .iter()
                .map(|v| format!("quotient pair: {v}")),
        );
    }
    if common_d != common_d_quotient {
        violations.push(format!(
            "module depth {common_d} over H differs from {common_d_quotient} over H/N"
        ));
    }
    if !inequality_holds {
        violations.push(format!("d = {d} not in [{d_quotient}, {}]", d_quotient + 1));
    }
    if !interval_holds {
        violations.push(format!(
            "depths {d}, {d_quotient} not both in [{}, {}]",
            interval[0], interval[1]
        ));
    }
    Ok(CorefreeReport {
        supergroup: original.supergroup,
        subgroup: original.subgroup,
        core,
        core_trivial,
        quotient_group: quotient_emb.supergroup.clone(),
        quotient_subgroup: quotient_emb.subgroup.clone(),
        d,
        d_quotient,
        common_d,
        common_d_quotient,
        interval,
        inequality_holds,
        interval_holds,
        violations,
    })
}
