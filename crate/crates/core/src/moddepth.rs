//! Module depth of a character: supports of tensor powers, their cumulative
//! chain, kernels and the Burnside-Brauer bound.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::chartab::CharacterTable;
use crate::classfn::{decompose, tensor, union_of_classes, ClassFunction};
use crate::error::{Error, Result};
use crate::group::PermutationGroup;

/// Iterations of the support map before giving up on finding a repeat.
const SUPPORT_ITERATION_CAP: u32 = 100_000;

#[derive(Clone, Debug, Serialize)]
pub struct ModuleDepthReport {
    pub group: String,
    pub character: ClassFunction,
    #[serde(serialize_with = "crate::serde_util::bigints")]
    pub multiplicities: Vec<BigInt>,
    /// `supp(χ^n)` for `n = 1, 2, ...` up to the first repeated support.
    pub support_chain: Vec<Vec<usize>>,
    /// `U_n`, the union of the first `n` supports.
    pub cumulative_chain: Vec<Vec<usize>>,
    pub depth: u32,
    /// Least `n ≥ 1` with `U_{n+1} = U_n`.
    pub ell: u32,
    /// Least `n` with `supp(χ^n)` all of `Irr(G)`.
    pub faithful_at: Option<u32>,
    /// Least `n` with `U_n` all of `Irr(G)`.
    pub covered_at: Option<u32>,
    pub kernel_subgroup: Arc<PermutationGroup>,
}

impl ModuleDepthReport {
    /// Violated invariants, empty when the report is consistent.
    pub fn verify(&self, irreducibles: usize) -> Vec<String> {
        let mut out = Vec::new();
        for w in self.cumulative_chain.windows(2) {
            if !w[0].iter().all(|i| w[1].contains(i)) {
                out.push("cumulative chain is not monotone".into());
            }
        }
        if self.ell as usize > irreducibles.max(1) {
            out.push(format!("chain stabilizes at {} > {irreducibles}", self.ell));
        }
        let trivial_kernel = self.kernel_subgroup.order() == 1;
        if self.covered_at.is_some() != trivial_kernel {
            out.push("covering of Irr disagrees with kernel triviality".into());
        }
        if self.faithful_at.is_some() && !trivial_kernel {
            out.push("support of a power covers Irr despite a nontrivial kernel".into());
        }
        if self.character.is_trivial_multiple() != (self.depth == 0) {
            out.push("depth 0 disagrees with the character being a trivial multiple".into());
        }
        out
    }
}

/// The map `supp(χ^n) ↦ supp(χ^{n+1})`, which depends on supports alone.
struct SupportMap {
    start: Vec<bool>,
    step: Vec<Vec<bool>>,
}

impl SupportMap {
    fn new(chi: &ClassFunction, table: &CharacterTable) -> Result<(Self, Vec<BigInt>)> {
        let mult = decompose(chi, table)?;
        let start = mult.iter().map(|m| !m.is_zero()).collect();
        let step = table
            .characters()
            .par_iter()
            .map(|psi| {
                let prod = tensor(psi, chi)?;
                Ok(decompose(&prod, table)?
                    .iter()
                    .map(|m| !m.is_zero())
                    .collect())
            })
            .collect::<Result<_>>()?;
        Ok((Self { start, step }, mult))
    }

    fn apply(&self, set: &[bool]) -> Vec<bool> {
        let mut out = vec![false; set.len()];
        for (i, _) in set.iter().enumerate().filter(|(_, &b)| b) {
            for (o, &b) in out.iter_mut().zip(&self.step[i]) {
                *o |= b;
            }
        }
        out
    }

    /// Supports of `χ^1, χ^2, ...` up to and including the first one seen before.
    fn trajectory(&self) -> Result<Vec<Vec<bool>>> {
        let mut seen: HashMap<Vec<bool>, usize> = HashMap::new();
        let mut out = vec![self.start.clone()];
        loop {
            let last = out.last().expect("nonempty");
            if seen.insert(last.clone(), out.len()).is_some() {
                return Ok(out);
            }
            if out.len() as u32 > SUPPORT_ITERATION_CAP {
                return Err(Error::CapExceeded {
                    cap: SUPPORT_ITERATION_CAP,
                });
            }
            let next = self.apply(last);
            out.push(next);
        }
    }
}

fn indices(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i)
        .collect()
}

/// Supports of the powers and the cumulative chain, with its stabilization index.
struct Chains {
    supports: Vec<Vec<bool>>,
    cumulative: Vec<Vec<bool>>,
    ell: u32,
    multiplicities: Vec<BigInt>,
}

fn chains(chi: &ClassFunction, table: &CharacterTable) -> Result<Chains> {
    if !chi.group().same_as(table.group()) {
        return Err(Error::GroupMismatch);
    }
    let (map, multiplicities) = SupportMap::new(chi, table)?;
    if map.start.iter().all(|b| !b) {
        return Err(Error::NotACharacter("zero class function".into()));
    }
    let supports = map.trajectory()?;
    let mut cumulative: Vec<Vec<bool>> = Vec::with_capacity(supports.len());
    for s in &supports {
        let next = match cumulative.last() {
            Some(prev) => prev.iter().zip(s).map(|(a, b)| *a || *b).collect(),
            None => s.clone(),
        };
        cumulative.push(next);
    }
    let ell = cumulative
        .windows(2)
        .position(|w| w[0] == w[1])
        .map(|p| p as u32 + 1)
        .expect("the last support repeats an earlier one");
    Ok(Chains {
        supports,
        cumulative,
        ell,
        multiplicities,
    })
}

pub fn module_depth(chi: &ClassFunction, table: &CharacterTable) -> Result<ModuleDepthReport> {
    let c = chains(chi, table)?;
    let all = |m: &Vec<bool>| m.iter().all(|&b| b);
    let faithful_at = c.supports.iter().position(all).map(|p| p as u32 + 1);
    let covered_at = c.cumulative.iter().position(all).map(|p| p as u32 + 1);
    let depth = if chi.is_trivial_multiple() { 0 } else { c.ell };
    Ok(ModuleDepthReport {
        group: chi.group().display_name(),
        character: chi.clone(),
        multiplicities: c.multiplicities,
        support_chain: c.supports.iter().map(|m| indices(m)).collect(),
        cumulative_chain: c.cumulative.iter().map(|m| indices(m)).collect(),
        depth,
        ell: c.ell,
        faithful_at,
        covered_at,
        kernel_subgroup: Arc::new(chi.kernel()),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub n: u32,
    pub support: Vec<usize>,
    /// `{g : χ^n(g) = χ^n(1)}`, the common kernel of the constituents of `χ^n`.
    pub kernel: Arc<PermutationGroup>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportChainReport {
    pub group: String,
    pub steps: Vec<ChainStep>,
    pub ell: u32,
    /// Common kernel of all constituents of `χ, ..., χ^ℓ`.
    pub stabilized_kernel: Arc<PermutationGroup>,
    pub kernel_subgroup: Arc<PermutationGroup>,
    pub violations: Vec<String>,
}

/// Intersection of the kernels of the irreducibles flagged in `mask`.
fn common_kernel(table: &CharacterTable, mask: &[bool]) -> Result<PermutationGroup> {
    let r = table.len();
    let mut classes = vec![true; r];
    for i in indices(mask) {
        let row = &table.irreducibles()[i];
        for (k, c) in classes.iter_mut().enumerate() {
            *c &= row[k] == row[0];
        }
    }
    union_of_classes(table.group(), &classes)
}

pub fn support_chain(chi: &ClassFunction, table: &CharacterTable) -> Result<SupportChainReport> {
    let c = chains(chi, table)?;
    let steps = c
        .supports
        .iter()
        .enumerate()
        .map(|(n, mask)| {
            Ok(ChainStep {
                n: n as u32 + 1,
                support: indices(mask),
                kernel: Arc::new(common_kernel(table, mask)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let stabilized_kernel = Arc::new(common_kernel(table, &c.cumulative[c.ell as usize - 1])?);
    let kernel_subgroup = Arc::new(chi.kernel());

    let mut violations = Vec::new();
    if !(1 <= c.ell && c.ell as usize <= table.len()) {
        violations.push(format!("ell = {} outside [1, {}]", c.ell, table.len()));
    }
    if !stabilized_kernel.same_as(&kernel_subgroup) {
        violations.push(format!(
            "stabilized kernel of order {} differs from the kernel of order {}",
            stabilized_kernel.order(),
            kernel_subgroup.order()
        ));
    }
    if !steps[0].kernel.same_as(&kernel_subgroup) {
        violations.push("kernel of the first power differs from the character kernel".into());
    }
    Ok(SupportChainReport {
        group: chi.group().display_name(),
        steps,
        ell: c.ell,
        stabilized_kernel,
        kernel_subgroup,
        violations,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BurnsideBrauerReport {
    pub distinct_values: usize,
    pub ell: u32,
    pub holds: bool,
}

/// Number of distinct values of a faithful character, an upper bound for the
/// stabilization index of its support chain.
pub fn burnside_brauer_bound(
    chi: &ClassFunction,
    table: &CharacterTable,
) -> Result<BurnsideBrauerReport> {
    let kernel = chi.kernel();
    if kernel.order() != 1 {
        return Err(Error::NotFaithful {
            kernel_order: kernel.order(),
        });
    }
    let ell = chains(chi, table)?.ell;
    let distinct_values = chi.distinct_values();
    Ok(BurnsideBrauerReport {
        distinct_values,
        ell,
        holds: ell as usize <= distinct_values,
    })
}
