//! Class functions and the character calculus: inner products, tensor products,
//! restriction, induction and permutation characters.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::chartab::CharacterTable;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{PermutationGroup, SubgroupEmbedding};

/// A function on the conjugacy classes of a group, in canonical class order.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<PermutationGroup>,
    values: Vec<Cyclotomic>,
}

/// Serialized as the list of values in canonical class order.
impl serde::Serialize for ClassFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.values.iter().map(ToString::to_string))
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_as(&other.group) && self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(group: Arc<PermutationGroup>, values: Vec<Cyclotomic>) -> Result<Self> {
        let r = group.classes().len();
        if values.len() != r {
            return Err(Error::DimensionMismatch(format!(
                "class function has {} values for {r} classes",
                values.len()
            )));
        }
        Ok(Self { group, values })
    }

    pub(crate) fn new_unchecked(group: Arc<PermutationGroup>, values: Vec<Cyclotomic>) -> Self {
        Self { group, values }
    }

    pub fn from_integers(group: Arc<PermutationGroup>, values: &[i64]) -> Result<Self> {
        let e = group.classes().exponent;
        Self::new(
            group,
            values
                .iter()
                .map(|&v| Cyclotomic::from_integer(e, v))
                .collect(),
        )
    }

    pub fn trivial(group: Arc<PermutationGroup>) -> Self {
        let r = group.classes().len();
        Self::from_integers(group, &vec![1; r]).expect("right length")
    }

    /// `χ_reg(1) = |G|`, zero elsewhere.
    pub fn regular(group: Arc<PermutationGroup>) -> Self {
        let r = group.classes().len();
        let mut v = vec![0; r];
        v[0] = group.order() as i64;
        Self::from_integers(group, &v).expect("right length")
    }

    pub fn group(&self) -> &Arc<PermutationGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    fn check_same_group(&self, other: &Self) -> Result<()> {
        if self.group.same_as(&other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        Ok(Self::new_unchecked(
            self.group.clone(),
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new_unchecked(
            self.group.clone(),
            self.values.iter().map(|v| v.scale(q)).collect(),
        )
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::new_unchecked(
            self.group.clone(),
            self.values.iter().map(Cyclotomic::conj).collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        Self::new_unchecked(
            self.group.clone(),
            self.values.iter().map(|v| v.pow(n)).collect(),
        )
    }

    /// Number of distinct values over the classes.
    pub fn distinct_values(&self) -> usize {
        let mut vals: Vec<Cyclotomic> = self.values.clone();
        vals.sort();
        vals.dedup();
        vals.len()
    }

    /// `{g : χ(g) = χ(1)}`.
    pub fn kernel(&self) -> PermutationGroup {
        union_of_classes(&self.group, &self.kernel_classes())
            .expect("kernel of a character is a subgroup")
    }

    /// Classes on which the value equals the degree.
    pub fn kernel_classes(&self) -> Vec<bool> {
        self.values.iter().map(|v| v == &self.values[0]).collect()
    }

    /// True when every value equals `χ(1)` (a multiple of the trivial character).
    pub fn is_trivial_multiple(&self) -> bool {
        self.values.iter().all(|v| v == &self.values[0])
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(ToString::to_string).collect()
    }
}

/// The subgroup formed by the classes flagged in `mask`, which must be a union of
/// classes closed under multiplication.
pub fn union_of_classes(group: &PermutationGroup, mask: &[bool]) -> Result<PermutationGroup> {
    let classes = group.classes();
    let elems = (0..classes.len())
        .filter(|&k| mask[k])
        .flat_map(|k| classes.members[k].iter())
        .map(|&i| group.elements()[i].clone())
        .collect();
    PermutationGroup::from_closed_set(group.degree(), elems)
}

/// `⟨a, b⟩ = (1/|G|) Σ_k |C_k| a(g_k) conj(b(g_k))`.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<Cyclotomic> {
    a.check_same_group(b)?;
    let classes = a.group.classes();
    let e = a.values[0].conductor();
    let mut acc = Cyclotomic::zero(e);
    for k in 0..classes.len() {
        let term = &a.values[k] * &b.values[k].conj();
        acc = &acc
            + &term.scale(&BigRational::from_integer(BigInt::from(
                classes.class_sizes[k],
            )));
    }
    Ok(acc.scale(&BigRational::new(
        BigInt::from(1),
        BigInt::from(a.group.order()),
    )))
}

/// `⟨a, b⟩` as a nonnegative integer, failing when it is not one.
pub fn multiplicity(a: &ClassFunction, b: &ClassFunction) -> Result<BigInt> {
    let ip = inner_product(a, b)?;
    match ip.to_integer() {
        Some(n) if !n.is_negative() => Ok(n),
        _ => Err(Error::NotACharacter(format!(
            "inner product {ip} is not a nonnegative integer"
        ))),
    }
}

/// Pointwise product.
pub fn tensor(a: &ClassFunction, b: &ClassFunction) -> Result<ClassFunction> {
    a.check_same_group(b)?;
    Ok(ClassFunction::new_unchecked(
        a.group.clone(),
        a.values.iter().zip(&b.values).map(|(x, y)| x * y).collect(),
    ))
}

/// Multiplicities of the irreducibles of `table` in `chi`. Fails unless `chi` is a
/// character.
pub fn decompose(chi: &ClassFunction, table: &CharacterTable) -> Result<Vec<BigInt>> {
    if !chi.group.same_as(table.group()) {
        return Err(Error::GroupMismatch);
    }
    let mut out = Vec::with_capacity(table.len());
    for psi in table.characters() {
        out.push(multiplicity(chi, &psi)?);
    }
    // a class function with nonnegative integer multiplicities summing to zero is zero
    if out.iter().all(Zero::is_zero) && !chi.values.iter().all(Cyclotomic::is_zero) {
        return Err(Error::NotACharacter(
            "not in the span of the irreducibles".into(),
        ));
    }
    Ok(out)
}

/// Maps each class of the subgroup to the supergroup class containing it.
pub fn class_fusion(emb: &SubgroupEmbedding) -> Vec<usize> {
    let g = &emb.supergroup;
    let gc = g.classes();
    emb.subgroup
        .classes()
        .representatives
        .iter()
        .map(|h| gc.class_of[g.index_of(h).expect("subgroup element lies in G")])
        .collect()
}

pub fn restrict(chi: &ClassFunction, emb: &SubgroupEmbedding) -> Result<ClassFunction> {
    if !chi.group.same_as(&emb.supergroup) {
        return Err(Error::GroupMismatch);
    }
    let fusion = class_fusion(emb);
    Ok(ClassFunction::new_unchecked(
        emb.subgroup.clone(),
        fusion.iter().map(|&k| chi.values[k].clone()).collect(),
    ))
}

/// `Ind(α)(g) = |C_G(g)| Σ α(h_c) / |C_H(h_c)|` over subgroup classes `c` fusing
/// into the class of `g`.
pub fn induce(alpha: &ClassFunction, emb: &SubgroupEmbedding) -> Result<ClassFunction> {
    if !alpha.group.same_as(&emb.subgroup) {
        return Err(Error::GroupMismatch);
    }
    let fusion = class_fusion(emb);
    let g = &emb.supergroup;
    let gc = g.classes();
    let hc = emb.subgroup.classes();
    let h_order = emb.subgroup.order();
    let e = alpha.values[0].conductor();
    let mut values = vec![Cyclotomic::zero(e); gc.len()];
    for (c, &k) in fusion.iter().enumerate() {
        let weight = BigRational::new(
            BigInt::from(gc.centralizer_order(k, g.order())),
            BigInt::from(hc.centralizer_order(c, h_order)),
        );
        values[k] = &values[k] + &alpha.values[c].scale(&weight);
    }
    Ok(ClassFunction::new_unchecked(g.clone(), values))
}

/// Number of right cosets `Hx` fixed by each class representative.
pub fn permutation_character(emb: &SubgroupEmbedding) -> ClassFunction {
    let g = &emb.supergroup;
    let (reps, _) = emb.right_cosets();
    let transversal: Vec<_> = reps.iter().map(|&i| g.elements()[i].clone()).collect();
    let inverses: Vec<_> = transversal.iter().map(|x| x.inverse()).collect();
    let counts: Vec<i64> = g
        .classes()
        .representatives
        .iter()
        .map(|rep| {
            transversal
                .iter()
                .zip(&inverses)
                .filter(|(x, xi)| emb.subgroup.contains(&x.compose(rep).compose(xi)))
                .count() as i64
        })
        .collect();
    ClassFunction::from_integers(g.clone(), &counts).expect("right length")
}
