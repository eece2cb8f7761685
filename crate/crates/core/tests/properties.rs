mod common;

use std::sync::Arc;

use common::{mul, naive_depth, normal_by_brute_force, to_i64};
use proptest::prelude::*;
use subdepth::depth::{induction_restriction_matrix, subgroup_depth_interval_check};
use subdepth::{
    min_depth, CharacterTable, ComputeTables, IntMatrix, Permutation, PermutationGroup,
    SubgroupEmbedding,
};

fn permutation(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

/// A group on up to 5 points and a subgroup generated by some of its generators.
fn pair() -> impl Strategy<Value = SubgroupEmbedding> {
    (3usize..=5)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(permutation(n), 1..=3),
                prop::collection::vec(any::<bool>(), 3),
            )
                .prop_map(move |(gens, keep)| (n, gens, keep))
        })
        .prop_map(|(n, gens, keep)| {
            let g = Arc::new(PermutationGroup::generate(n, gens.clone()).unwrap());
            let sub: Vec<Permutation> = gens
                .into_iter()
                .zip(keep)
                .filter_map(|(p, k)| k.then_some(p))
                .collect();
            let h = Arc::new(g.subgroup(sub).unwrap());
            SubgroupEmbedding::new(g, h).unwrap()
        })
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, s)| prop::collection::vec(prop::collection::vec(0i64..=2, s), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_pairs_satisfy_depth_theorems(emb in pair()) {
        let tg = CharacterTable::compute(emb.supergroup.clone()).unwrap();
        tg.check_orthogonality().unwrap();
        let th = CharacterTable::compute(emb.subgroup.clone()).unwrap();
        let m = induction_restriction_matrix(&emb, &tg, &th).unwrap().matrix;
        let check = subgroup_depth_interval_check(&emb, &ComputeTables).unwrap();
        prop_assert!(check.violations.is_empty(), "{:?}", check.violations);
        prop_assert_eq!(check.report.d <= 2, normal_by_brute_force(&emb));
        prop_assert_eq!(check.report.d as usize, naive_depth(&to_i64(&m), None));
    }

    #[test]
    fn matrix_product_is_associative(a in small_matrix(), b in small_matrix(), c in small_matrix()) {
        let b: Vec<Vec<i64>> = b.iter().cycle().take(a[0].len()).cloned().collect();
        let c: Vec<Vec<i64>> = c.iter().cycle().take(b[0].len()).cloned().collect();
        let (ma, mb, mc) = (
            IntMatrix::from_i64_rows(&a).unwrap(),
            IntMatrix::from_i64_rows(&b).unwrap(),
            IntMatrix::from_i64_rows(&c).unwrap(),
        );
        let left = ma.mul(&mb).unwrap().mul(&mc).unwrap();
        let right = ma.mul(&mb.mul(&mc).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(to_i64(&left), mul(&mul(&a, &b), &c));
    }

    #[test]
    fn depth_of_random_matrices(m in small_matrix()) {
        let im = IntMatrix::from_i64_rows(&m).unwrap();
        match min_depth(&im) {
            Ok(rep) => {
                prop_assert!(rep.verify().is_empty(), "{:?}", rep.verify());
                prop_assert_eq!(rep.d as usize, naive_depth(&m, None));
            }
            Err(_) => prop_assert!(!im.zero_rows().is_empty() || !im.zero_cols().is_empty()),
        }
    }

    #[test]
    fn intmatrix_json_round_trip(m in small_matrix()) {
        let im = IntMatrix::from_i64_rows(&m).unwrap();
        let json = serde_json::to_string(&im).unwrap();
        let back: IntMatrix = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, im);
    }
}
