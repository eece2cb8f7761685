#![allow(dead_code)]

use std::sync::Arc;

use subdepth::{Builtin, Permutation, PermutationGroup, SubgroupEmbedding, DEFAULT_ORDER_CAP};

pub fn named(b: Builtin) -> Arc<PermutationGroup> {
    Arc::new(b.build(DEFAULT_ORDER_CAP).unwrap())
}

pub fn perm(degree: usize, cycles: &[&[usize]]) -> Permutation {
    let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Permutation::from_cycles(degree, &cycles).unwrap()
}

pub fn generated(degree: usize, gens: &[&[&[usize]]]) -> Arc<PermutationGroup> {
    let gens = gens.iter().map(|g| perm(degree, g)).collect();
    Arc::new(PermutationGroup::generate(degree, gens).unwrap())
}

pub fn embed(g: &Arc<PermutationGroup>, h: Arc<PermutationGroup>) -> SubgroupEmbedding {
    SubgroupEmbedding::new(g.clone(), h).unwrap()
}

/// A pair with its expected normality, checked against brute force elsewhere.
pub struct Pair {
    pub name: &'static str,
    pub emb: SubgroupEmbedding,
}

/// Subgroups of S4 up to conjugacy, a selection in S5, and a few small pairs.
pub fn catalog() -> Vec<Pair> {
    let s4 = named(Builtin::Symmetric(4));
    let s5 = named(Builtin::Symmetric(5));
    let s3 = named(Builtin::Symmetric(3));
    let mut out = Vec::new();
    let mut add = |name, g: &Arc<PermutationGroup>, h| {
        out.push(Pair {
            name,
            emb: embed(g, h),
        })
    };
    add("1 < S4", &s4, generated(4, &[]));
    add("<(12)> < S4", &s4, generated(4, &[&[&[1, 2]]]));
    add("<(12)(34)> < S4", &s4, generated(4, &[&[&[1, 2], &[3, 4]]]));
    add("C3 < S4", &s4, generated(4, &[&[&[1, 2, 3]]]));
    add("V4 normal < S4", &s4, named(Builtin::Klein));
    add(
        "<(12),(34)> < S4",
        &s4,
        generated(4, &[&[&[1, 2]], &[&[3, 4]]]),
    );
    add("C4 < S4", &s4, generated(4, &[&[&[1, 2, 3, 4]]]));
    add("S3 < S4", &s4, generated(4, &[&[&[1, 2]], &[&[1, 2, 3]]]));
    add("D8 < S4", &s4, named(Builtin::Dihedral(8)));
    add("A4 < S4", &s4, named(Builtin::Alternating(4)));
    add("S4 < S4", &s4, s4.clone());
    add(
        "S4 < S5",
        &s5,
        generated(5, &[&[&[1, 2]], &[&[1, 2, 3, 4]]]),
    );
    add("A5 < S5", &s5, named(Builtin::Alternating(5)));
    add(
        "A4 < S5",
        &s5,
        generated(5, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]]),
    );
    add(
        "D10 < S5",
        &s5,
        generated(5, &[&[&[1, 2, 3, 4, 5]], &[&[2, 5], &[3, 4]]]),
    );
    add(
        "F20 < S5",
        &s5,
        generated(5, &[&[&[1, 2, 3, 4, 5]], &[&[2, 3, 5, 4]]]),
    );
    add("C5 < S5", &s5, generated(5, &[&[&[1, 2, 3, 4, 5]]]));
    add(
        "S3xS2 < S5",
        &s5,
        generated(5, &[&[&[1, 2]], &[&[1, 2, 3]], &[&[4, 5]]]),
    );
    add("S2 < S3", &s3, generated(3, &[&[&[1, 2]]]));
    add("A3 < S3", &s3, named(Builtin::Alternating(3)));
    let a5 = named(Builtin::Alternating(5));
    add(
        "A4 < A5",
        &a5,
        generated(5, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]]),
    );
    let d8 = named(Builtin::Dihedral(8));
    add("C4 < D8", &d8, generated(4, &[&[&[1, 2, 3, 4]]]));
    add("<(13)> < D8", &d8, generated(4, &[&[&[1, 3]]]));
    out
}

/// Brute-force normality: `g h g^-1 ∈ H` for all `g`, `h`.
pub fn normal_by_brute_force(emb: &SubgroupEmbedding) -> bool {
    emb.supergroup.elements().iter().all(|g| {
        emb.subgroup
            .elements()
            .iter()
            .all(|h| emb.subgroup.contains(&h.conjugate_by(g)))
    })
}

/// Plain `i64` matrix product.
pub fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.first().map_or(0, Vec::len);
    (0..n).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Every zero of `a` is a zero of `b`.
pub fn zeros_within(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .all(|(x, y)| *x != 0 || *y == 0)
}

/// The alternating ladder `I, M, MMᵀ, MMᵀM, ...` by repeated multiplication.
pub fn ladder(m: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let mt = transpose(m);
    let mut p = identity(m.len());
    for i in 0..k {
        p = mul(&p, if i % 2 == 0 { m } else { &mt });
    }
    p
}

/// Least depth `n` with `zeros(ladder(n-1)) ⊆ zeros(ladder(n+1))`.
pub fn naive_depth(m: &[Vec<i64>], parity: Option<usize>) -> usize {
    (1..)
        .filter(|n| parity.is_none_or(|p| n % 2 == p))
        .find(|&n| zeros_within(&ladder(m, n - 1), &ladder(m, n + 1)))
        .unwrap()
}

pub fn to_i64(m: &subdepth::IntMatrix) -> Vec<Vec<i64>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|x| i64::try_from(x).unwrap()).collect())
        .collect()
}
