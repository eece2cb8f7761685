use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use sha2::{Digest, Sha256};

use crate::classes::ConjugacyClassData;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest group order enumerated unless the caller configures otherwise.
pub const DEFAULT_ORDER_CAP: usize = 200_000;

/// A finite permutation group with its complete element list.
///
/// Elements are kept sorted by image array, so `elements()[0]` is the identity and
/// element indices are a canonical, schedule-independent labelling.
#[derive(Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    lookup: HashMap<Permutation, usize>,
    label: Option<String>,
    classes: OnceLock<ConjugacyClassData>,
}

impl PermutationGroup {
    /// Closure of `generators` with the default order cap.
    pub fn generate(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::generate_capped(degree, generators, DEFAULT_ORDER_CAP)
    }

    pub fn generate_capped(
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ParameterOutOfRange("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let elements = closure(degree, &generators, cap)?;
        Ok(Self::from_sorted(degree, generators, elements))
    }

    fn from_sorted(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
    ) -> Self {
        let lookup = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Self {
            degree,
            generators,
            elements,
            lookup,
            label: None,
            classes: OnceLock::new(),
        }
    }

    /// Group on an element set already known to be closed; a small generating set
    /// is picked greedily in element order.
    pub fn from_closed_set(degree: usize, mut elements: Vec<Permutation>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let cap = elements.len().max(1);
        let mut generators: Vec<Permutation> = Vec::new();
        let mut current = closure(degree, &generators, cap)?;
        let mut members: std::collections::HashSet<Permutation> = current.iter().cloned().collect();
        for e in &elements {
            if !members.contains(e) {
                generators.push(e.clone());
                current = closure(degree, &generators, cap).map_err(|_| {
                    Error::NotASubgroup("element set is not closed under composition".into())
                })?;
                members = current.iter().cloned().collect();
            }
        }
        if current != elements {
            return Err(Error::NotASubgroup(
                "element set is not closed under composition".into(),
            ));
        }
        Ok(Self::from_sorted(degree, generators, current))
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_sorted(degree, Vec::new(), vec![Permutation::identity(degree)])
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Label if present, otherwise the generators in cycle notation.
    pub fn display_name(&self) -> String {
        match &self.label {
            Some(l) => l.clone(),
            None => {
                let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
                format!("<{}>", gens.join(", "))
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn identity(&self) -> &Permutation {
        &self.elements[0]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.lookup.get(g).copied()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.lookup.contains_key(g)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// Both describe the same set of permutations.
    pub fn same_as(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.degree == other.degree && self.elements == other.elements)
    }

    pub fn classes(&self) -> &ConjugacyClassData {
        self.classes
            .get_or_init(|| ConjugacyClassData::compute(self))
    }

    /// Subgroup generated by `gens`, which must lie in this group.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<Self> {
        for g in &gens {
            if g.degree() != self.degree {
                return Err(Error::DegreeMismatch {
                    expected: self.degree,
                    found: g.degree(),
                });
            }
            if !self.contains(g) {
                return Err(Error::NotASubgroup(format!("{g} is not an element")));
            }
        }
        Self::generate_capped(self.degree, gens, self.order())
    }

    /// Elements commuting with every generator.
    pub fn center(&self) -> Self {
        let elems: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|x| self.generators.iter().all(|g| x.compose(g) == g.compose(x)))
            .cloned()
            .collect();
        Self::from_closed_set(self.degree, elems).expect("center is a subgroup")
    }

    pub fn fingerprint(&self) -> GroupFingerprint {
        let mut sizes = self.classes().class_sizes.clone();
        sizes.sort_unstable();
        let mut hasher = Sha256::new();
        hasher.update((self.degree as u64).to_le_bytes());
        for g in &self.generators {
            for &i in g.images() {
                hasher.update(i.to_le_bytes());
            }
            hasher.update([0xff]);
        }
        GroupFingerprint {
            order: self.order(),
            degree: self.degree,
            class_sizes: sizes,
            generator_hash: hex::encode(hasher.finalize()),
        }
    }
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermutationGroup")
            .field("label", &self.label)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Serialized as a summary: name, degree, order and generators in cycle notation.
impl serde::Serialize for PermutationGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PermutationGroup", 4)?;
        st.serialize_field("name", &self.display_name())?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("order", &self.order())?;
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        st.serialize_field("generators", &gens)?;
        st.end()
    }
}

/// Identity of a group for cache lookups.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GroupFingerprint {
    pub order: usize,
    pub degree: usize,
    pub class_sizes: Vec<usize>,
    pub generator_hash: String,
}

impl GroupFingerprint {
    /// File-name friendly digest of the whole fingerprint.
    pub fn key(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(format!(
            "{}:{}:{:?}:{}",
            self.order, self.degree, self.class_sizes, self.generator_hash
        ));
        hex::encode(&hasher.finalize()[..16])
    }
}

fn closure(degree: usize, generators: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: std::collections::HashSet<Permutation> = std::collections::HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    let gens: Vec<&Permutation> = generators.iter().filter(|g| !g.is_identity()).collect();
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.compose(g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    Ok(elements)
}

/// `subgroup ≤ supergroup`, validated by element membership.
#[derive(Clone, Debug)]
pub struct SubgroupEmbedding {
    pub supergroup: Arc<PermutationGroup>,
    pub subgroup: Arc<PermutationGroup>,
    pub index: usize,
}

impl SubgroupEmbedding {
    pub fn new(supergroup: Arc<PermutationGroup>, subgroup: Arc<PermutationGroup>) -> Result<Self> {
        if supergroup.degree() != subgroup.degree() {
            return Err(Error::DegreeMismatch {
                expected: supergroup.degree(),
                found: subgroup.degree(),
            });
        }
        if let Some(bad) = subgroup.elements().iter().find(|h| !supergroup.contains(h)) {
            return Err(Error::NotASubgroup(format!(
                "{bad} does not lie in the supergroup"
            )));
        }
        let index = supergroup.order() / subgroup.order();
        Ok(Self {
            supergroup,
            subgroup,
            index,
        })
    }

    /// `H ≤ H`.
    pub fn identity(group: Arc<PermutationGroup>) -> Self {
        Self {
            supergroup: group.clone(),
            subgroup: group,
            index: 1,
        }
    }

    /// Right coset representatives `x` with `G = ⊔ Hx`, and the coset index of every
    /// element of `G` (by element index).
    pub fn right_cosets(&self) -> (Vec<usize>, Vec<usize>) {
        let g = &self.supergroup;
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut reps = Vec::with_capacity(self.index);
        for (xi, x) in g.elements().iter().enumerate() {
            if coset_of[xi] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(xi);
            for h in self.subgroup.elements() {
                let y = h.compose(x);
                coset_of[g.index_of(&y).expect("closed")] = c;
            }
        }
        (reps, coset_of)
    }

    /// `gHg⁻¹ = H` for every generator of the supergroup.
    pub fn is_normal(&self) -> bool {
        self.supergroup.generators().iter().all(|g| {
            self.subgroup
                .generators()
                .iter()
                .all(|h| self.subgroup.contains(&h.conjugate_by(g)))
        })
    }

    /// Largest normal subgroup of the supergroup inside the subgroup: the kernel of
    /// the action on right cosets.
    pub fn core(&self) -> PermutationGroup {
        let g = &self.supergroup;
        let (reps, coset_of) = self.right_cosets();
        let kernel: Vec<Permutation> = self
            .subgroup
            .elements()
            .iter()
            .filter(|h| {
                reps.iter().enumerate().all(|(c, &xi)| {
                    let y = g.elements()[xi].compose(h);
                    coset_of[g.index_of(&y).expect("closed")] == c
                })
            })
            .cloned()
            .collect();
        PermutationGroup::from_closed_set(g.degree(), kernel).expect("core is a subgroup")
    }
}

/// The natural surjection `G → G/N`, realised on right cosets of `N`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    group: Arc<PermutationGroup>,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
}

impl QuotientMap {
    pub fn image(&self, g: &Permutation) -> Permutation {
        let images = self
            .reps
            .iter()
            .map(|&xi| {
                let y = self.group.elements()[xi].compose(g);
                self.coset_of[self.group.index_of(&y).expect("element of G")] as u32
            })
            .collect();
        Permutation::from_images(images).expect("coset action is a bijection")
    }

    /// Coset index of `g`.
    pub fn coset(&self, g: &Permutation) -> Option<usize> {
        self.group.index_of(g).map(|i| self.coset_of[i])
    }

    pub fn degree(&self) -> usize {
        self.reps.len()
    }
}

/// `G/N` as a permutation group of degree `[G:N]`.
pub fn quotient(
    group: &Arc<PermutationGroup>,
    normal: &Arc<PermutationGroup>,
) -> Result<(Arc<PermutationGroup>, QuotientMap)> {
    let emb = SubgroupEmbedding::new(group.clone(), normal.clone())?;
    if !emb.is_normal() {
        return Err(Error::NotNormal);
    }
    let (reps, coset_of) = emb.right_cosets();
    let map = QuotientMap {
        group: group.clone(),
        reps,
        coset_of,
    };
    let gens: Vec<Permutation> = group
        .generators()
        .iter()
        .map(|g| map.image(g))
        .filter(|x| !x.is_identity())
        .collect();
    let mut q = PermutationGroup::generate_capped(map.degree(), gens, emb.index.max(1))?;
    q.label = match (group.label(), normal.label()) {
        (Some(a), Some(b)) => Some(format!("{a}/{b}")),
        _ => None,
    };
    Ok((Arc::new(q), map))
}

/// `G1 × G2` on the disjoint union of the point sets.
pub fn direct_product(
    a: &PermutationGroup,
    b: &PermutationGroup,
    cap: usize,
) -> Result<PermutationGroup> {
    if a.order().saturating_mul(b.order()) > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    let degree = a.degree() + b.degree();
    let ida = Permutation::identity(a.degree());
    let idb = Permutation::identity(b.degree());
    let gens = a
        .generators()
        .iter()
        .map(|g| g.direct_sum(&idb))
        .chain(b.generators().iter().map(|g| ida.direct_sum(g)))
        .collect();
    let mut p = PermutationGroup::generate_capped(degree, gens, cap)?;
    if let (Some(x), Some(y)) = (a.label(), b.label()) {
        p.label = Some(format!("{x} x {y}"));
    }
    Ok(p)
}

/// `{(g, g)} ≤ G × G`.
pub fn diagonal_subgroup(g: &PermutationGroup, cap: usize) -> Result<SubgroupEmbedding> {
    let product = Arc::new(direct_product(g, g, cap)?);
    let gens = g.generators().iter().map(|x| x.direct_sum(x)).collect();
    let mut diag = PermutationGroup::generate_capped(product.degree(), gens, g.order().max(1))?;
    if let Some(l) = g.label() {
        diag.label = Some(format!("diag({l})"));
    }
    SubgroupEmbedding::new(product, Arc::new(diag))
}
