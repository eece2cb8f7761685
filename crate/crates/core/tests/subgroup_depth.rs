#![allow(clippy::int_plus_one)]

mod common;

use common::{
    catalog, identity, mul, naive_depth, named, normal_by_brute_force, to_i64, transpose,
    zeros_within,
};
use subdepth::depth::{
    induction_restriction_matrix, satisfies_depth, subgroup_depth_interval_check,
};
use subdepth::{min_depth, Builtin, CharacterTable, ComputeTables, SubgroupEmbedding};

/// `⟨ψ_i, χ_j↓H⟩` from floating-point sums over the elements of `H`.
fn matrix_by_elements(emb: &SubgroupEmbedding) -> Vec<Vec<i64>> {
    let (g, h) = (&emb.supergroup, &emb.subgroup);
    let tg = CharacterTable::compute(g.clone()).unwrap();
    let th = CharacterTable::compute(h.clone()).unwrap();
    let (gc, hc) = (g.classes(), h.classes());
    (0..th.len())
        .map(|i| {
            (0..tg.len())
                .map(|j| {
                    let (mut re, mut im) = (0.0, 0.0);
                    for (k, x) in h.elements().iter().enumerate() {
                        let gk = gc.class_of[g.index_of(x).unwrap()];
                        let (a, b) = tg.value(j, gk).to_complex_approx();
                        let (c, d) = th.value(i, hc.class_of[k]).to_complex_approx();
                        re += a * c + b * d;
                        im += b * c - a * d;
                    }
                    let (re, im) = (re / h.order() as f64, im / h.order() as f64);
                    assert!(im.abs() < 1e-6 && (re - re.round()).abs() < 1e-6);
                    re.round() as i64
                })
                .collect()
        })
        .collect()
}

#[test]
fn matrix_agrees_with_elementwise_inner_products() {
    for pair in catalog() {
        let emb = &pair.emb;
        let tg = CharacterTable::compute(emb.supergroup.clone()).unwrap();
        let th = CharacterTable::compute(emb.subgroup.clone()).unwrap();
        let ir = induction_restriction_matrix(emb, &tg, &th).unwrap();
        assert_eq!(to_i64(&ir.matrix), matrix_by_elements(emb), "{}", pair.name);
    }
}

fn naive_h_depth(m: &[Vec<i64>]) -> usize {
    let t = mul(&transpose(m), m);
    let mut prev = identity(t.len());
    for n in 1.. {
        let next = mul(&prev, &t);
        if zeros_within(&prev, &next) {
            return 2 * n - 1;
        }
        prev = next;
    }
    unreachable!()
}

#[test]
fn depths_agree_with_naive_ladder() {
    for pair in catalog() {
        let emb = &pair.emb;
        let tg = CharacterTable::compute(emb.supergroup.clone()).unwrap();
        let th = CharacterTable::compute(emb.subgroup.clone()).unwrap();
        let m = induction_restriction_matrix(emb, &tg, &th).unwrap().matrix;
        let rep = min_depth(&m).unwrap();
        let plain = to_i64(&m);
        assert_eq!(rep.d as usize, naive_depth(&plain, None), "{}", pair.name);
        assert_eq!(
            rep.d_odd as usize,
            naive_depth(&plain, Some(1)),
            "{}",
            pair.name
        );
        assert_eq!(
            rep.d_even.map(|x| x as usize),
            Some(naive_depth(&plain, Some(0))),
            "{}",
            pair.name
        );
        assert_eq!(rep.d_h as usize, naive_h_depth(&plain), "{}", pair.name);
        assert!(rep.verify().is_empty(), "{}: {:?}", pair.name, rep.verify());
        for n in rep.d..=rep.search_cap {
            assert!(satisfies_depth(&m, n).unwrap(), "{} depth {n}", pair.name);
        }
        for n in 1..rep.d {
            assert!(!satisfies_depth(&m, n).unwrap(), "{} depth {n}", pair.name);
        }
    }
}

#[test]
fn normality_criterion() {
    for pair in catalog() {
        let normal = normal_by_brute_force(&pair.emb);
        assert_eq!(pair.emb.is_normal(), normal, "{}", pair.name);
        let check = subgroup_depth_interval_check(&pair.emb, &ComputeTables).unwrap();
        assert_eq!(check.report.d <= 2, normal, "{}", pair.name);
    }
}

#[test]
fn interval_and_h_depth_identity() {
    for pair in catalog() {
        let check = subgroup_depth_interval_check(&pair.emb, &ComputeTables).unwrap();
        assert!(
            check.violations.is_empty(),
            "{}: {:?}",
            pair.name,
            check.violations
        );
        let (d, dq) = (check.report.d, check.dq);
        assert!(2 * dq + 1 <= d && d <= 2 * dq + 2, "{}", pair.name);
        assert_eq!(check.report.d_h, 2 * check.dq_over_g + 1, "{}", pair.name);
    }
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    (1..=n.min(max))
        .rev()
        .flat_map(|k| {
            partitions(n - k, k).into_iter().map(move |mut p| {
                p.insert(0, k);
                p
            })
        })
        .collect()
}

/// Pairs `λ ⊢ n ⊂ μ ⊢ n+1` differing by one box.
fn branching_edges(n: usize) -> usize {
    let small = partitions(n, n);
    partitions(n + 1, n + 1)
        .iter()
        .map(|mu| {
            (0..mu.len())
                .filter(|&i| {
                    let mut lambda = mu.clone();
                    lambda[i] -= 1;
                    if lambda[i] == 0 {
                        lambda.pop();
                    }
                    small.contains(&lambda)
                })
                .count()
        })
        .sum()
}

#[test]
fn symmetric_chain() {
    for n in 2..=5 {
        let g = named(Builtin::Symmetric(n + 1));
        let gens = named(Builtin::Symmetric(n))
            .generators()
            .iter()
            .map(|p| p.extend_to(n + 1).unwrap())
            .collect();
        let h = std::sync::Arc::new(g.subgroup(gens).unwrap());
        let emb = SubgroupEmbedding::new(g, h).unwrap();
        let tg = CharacterTable::compute(emb.supergroup.clone()).unwrap();
        let th = CharacterTable::compute(emb.subgroup.clone()).unwrap();
        let m = to_i64(&induction_restriction_matrix(&emb, &tg, &th).unwrap().matrix);
        assert!(m.iter().flatten().all(|&x| x == 0 || x == 1));
        let edges = m.iter().flatten().filter(|&&x| x == 1).count();
        assert_eq!(edges, branching_edges(n));
        assert_eq!(naive_depth(&m, None), 2 * n - 1);
        let rep = subgroup_depth_interval_check(&emb, &ComputeTables).unwrap();
        assert_eq!(rep.report.d as usize, 2 * n - 1);
    }
}

#[test]
fn degenerate_matrices_rejected() {
    use subdepth::IntMatrix;
    assert!(min_depth(&IntMatrix::from_i64_rows(&[vec![1, 0], vec![0, 0]]).unwrap()).is_err());
    assert!(min_depth(&IntMatrix::from_i64_rows(&[vec![1, -1]]).unwrap()).is_err());
    assert!(min_depth(&IntMatrix::zeros(0, 0)).is_err());
}
