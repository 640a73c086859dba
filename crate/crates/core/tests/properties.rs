mod common;

use common::*;
use proptest::prelude::*;
use sphex::ews::{dual_automorphism, ExtendedWeightSemigroup};
use sphex::monoidcone::{
    extremal_rays, indecomposables, is_almost_excellent, is_excellent_semigroup, kernel_hilbert_basis, AffineMonoid,
};
use sphex::rootdata::{AmbientGroup, Series, SimpleFactor};
use sphex::torusquot::{analyze, null_cone_dimension, quotient_dimension, TorusActionSpec};
use std::collections::BTreeSet;

fn weights(max_rank: usize, max_n: usize, bound: i64) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1..=max_rank).prop_flat_map(move |rank| {
        (Just(rank), prop::collection::vec(prop::collection::vec(-bound..=bound, rank), 1..=max_n))
    })
}

fn generators(max_dim: usize, max_gens: usize) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1..=max_dim).prop_flat_map(move |dim| (Just(dim), prop::collection::vec(prop::collection::vec(0i64..=3, dim), 0..=max_gens)))
}

/// Largest coordinate subset containing no nonnegative dependency.
fn brute_null_cone(w: &[Vec<i64>]) -> usize {
    let circuits = positive_circuits(w);
    let n = w.len();
    (0u32..(1 << n))
        .filter(|mask| circuits.iter().all(|c| c.iter().enumerate().any(|(j, &x)| x > 0 && mask >> j & 1 == 0)))
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Minimal nonzero solutions in the box `[0, bound]^N`.
fn brute_hilbert_basis(w: &[Vec<i64>], bound: i64) -> BTreeSet<Vec<i64>> {
    let n = w.len();
    let rank = w[0].len();
    let mut sols = Vec::new();
    let mut a = vec![0i64; n];
    loop {
        let mut i = 0;
        while i < n && a[i] == bound {
            a[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        a[i] += 1;
        if (0..rank).all(|k| a.iter().zip(w).map(|(x, v)| x * v[k]).sum::<i64>() == 0) {
            sols.push(a.clone());
        }
    }
    let le = |x: &[i64], y: &[i64]| x.iter().zip(y).all(|(p, q)| p <= q);
    sols.iter().filter(|s| !sols.iter().any(|t| t != *s && le(t, s))).cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn quotient_dimension_matches_circuits((torus_rank, w) in weights(3, 6, 3)) {
        let a = TorusActionSpec::new(torus_rank, w.clone()).unwrap();
        prop_assert_eq!(quotient_dimension(&a), invariant_cone_dim(&w));
        prop_assert_eq!(rank(&kernel_hilbert_basis(&w)), invariant_cone_dim(&w));
    }

    #[test]
    fn null_cone_matches_brute_force((rank, w) in weights(3, 7, 2)) {
        let a = TorusActionSpec::new(rank, w.clone()).unwrap();
        prop_assert_eq!(null_cone_dimension(&a).unwrap(), brute_null_cone(&w));
    }

    #[test]
    fn hilbert_basis_matches_box_enumeration((rank, w) in weights(2, 4, 2)) {
        // coordinates of Hilbert basis elements are bounded by the sum of the circuits
        let circuits = positive_circuits(&w);
        let bound = (0..w.len()).map(|j| circuits.iter().map(|c| c[j]).sum::<i64>()).max().unwrap_or(0).max(1);
        prop_assume!(bound <= 8);
        let got: BTreeSet<Vec<i64>> = kernel_hilbert_basis(&w).into_iter().collect();
        prop_assert_eq!(got, brute_hilbert_basis(&w, bound), "rank {}", rank);
    }

    #[test]
    fn monoid_oracles((dim, gens) in generators(4, 6)) {
        let m = AffineMonoid::from_vectors(dim, gens.clone(), true).unwrap();
        let ind: BTreeSet<Vec<i64>> = indecomposables(&m).into_iter().collect();
        prop_assert_eq!(&ind, &brute_indecomposables(&gens));
        let rays: BTreeSet<Vec<i64>> = extremal_rays(&gens).into_iter().map(|r| r.direction().to_vec()).collect();
        prop_assert_eq!(&rays, &brute_extremal_rays(&gens));
        // excellent implies almost excellent
        let exc = is_excellent_semigroup(&m).excellent;
        prop_assert!(!exc || is_almost_excellent(&m).almost_excellent);
    }

    #[test]
    fn monoid_json_round_trip((dim, gens) in generators(4, 5), qa in any::<bool>()) {
        let m = AffineMonoid::from_vectors(dim, gens, qa).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        let back: AffineMonoid = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn torus_report_is_consistent((rank, w) in weights(2, 6, 2)) {
        let a = TorusActionSpec::new(rank, w).unwrap();
        let r = analyze(&a).unwrap();
        prop_assert_eq!(r.equidimensional, r.null_cone_dim + r.quotient_dim == a.dim());
        if let (Some(c), Some(d), Some(exc)) = (r.c, r.d, r.excellent) {
            prop_assert_eq!(exc, r.equidimensional);
            prop_assert_eq!(r.null_cone_dim, d);
            prop_assert!(r.quotient_dim >= c + d);
        }
    }

    #[test]
    fn duality_is_an_involution(
        lambdas in prop::collection::vec(prop::collection::vec(0i64..=2, 9), 1..=5),
        chis in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 5),
    ) {
        let ambient = AmbientGroup::new(vec![
            SimpleFactor::new(Series::A, 3).unwrap(),
            SimpleFactor::new(Series::D, 5).unwrap(),
            SimpleFactor::new(Series::G, 2).unwrap(),
        ])
        .unwrap();
        let pairs = lambdas.into_iter().zip(chis).map(|(mut l, c)| { l.resize(10, 0); (l, c) }).collect();
        if let Ok(s) = ExtendedWeightSemigroup::from_coords(ambient, 2, pairs) {
            let d = dual_automorphism(&s);
            prop_assert_eq!(dual_automorphism(&d), s.clone());
            prop_assert_eq!(d.rank(), s.rank());
        }
    }
}
