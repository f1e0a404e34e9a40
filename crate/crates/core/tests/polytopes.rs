mod common;

use std::collections::HashSet;

use polyring::polytope::{
    count_lattice, diagonal_of_tableau, enumerate_lattice, enumerate_lattice_with, in_stairstep, is_lattice_point, phi,
    phi_inv, psi, psi_inv, tableau_from_diagonal, top_projection, Rational,
};
use polyring::Weights;
use proptest::prelude::*;

fn weights() -> impl Strategy<Value = Weights> {
    prop::collection::vec(1u32..=3, 2..=7).prop_map(|w| Weights::new(w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lattice_points_round_trip_through_all_models(w in weights(), k in 1u32..=3) {
        let points = enumerate_lattice(&w, k);
        prop_assert_eq!(points.len(), count_lattice(&w, k));
        for d in &points {
            prop_assert!(is_lattice_point(d, &w, k));
            let t = tableau_from_diagonal(d, &w, k).unwrap();
            prop_assert_eq!(t.degree_over(&w), Some(k as usize));
            t.multiweight().validate().unwrap();
            prop_assert_eq!(&diagonal_of_tableau(&t), d);

            let q: Vec<Rational> = d.iter().map(|&x| Rational::from_integer(x)).collect();
            let gt = phi_inv(&q, &w, k);
            prop_assert!(gt.a.iter().chain(&gt.b).all(|x| x.is_integer()));
            prop_assert_eq!(&phi(&gt), &q);
            let (k1, k2) = psi(&gt);
            prop_assert!(in_stairstep(&k1, &k2, &w, k));
            prop_assert_eq!(psi_inv(&k1, &k2), gt);
            let mw = t.multiweight();
            prop_assert!(k1.iter().zip(&mw.k1).all(|(x, &y)| *x == Rational::from_integer(y as i64)));
            prop_assert!(k2.iter().zip(&mw.k2).all(|(x, &y)| *x == Rational::from_integer(y as i64)));
        }
    }

    #[test]
    fn enumeration_matches_a_box_search(w in prop::collection::vec(1u32..=2, 3..=5), k in 1u32..=2) {
        let w = Weights::new(w).unwrap();
        let n = w.len();
        let bound = (k as i64) * w.total() as i64;
        let mut found = 0;
        let mut d = vec![0i64; n - 1];
        loop {
            if is_lattice_point(&d, &w, k) {
                found += 1;
            }
            let mut i = 0;
            while i < d.len() && d[i] == bound {
                d[i] = 0;
                i += 1;
            }
            if i == d.len() {
                break;
            }
            d[i] += 1;
        }
        prop_assert_eq!(found, count_lattice(&w, k));
    }

    #[test]
    fn canonical_order_sorts_by_lg_degree(w in weights(), k in 1u32..=3, c in 2i64..=6) {
        let points = enumerate_lattice_with(&w, k, c).unwrap();
        let lg: Vec<i64> = points.iter().map(|d| tableau_from_diagonal(d, &w, k).unwrap().lg_degree(c).unwrap()).collect();
        prop_assert!(lg.windows(2).all(|p| p[0] <= p[1]));
        let as_set: HashSet<_> = points.into_iter().collect();
        prop_assert_eq!(as_set, enumerate_lattice(&w, k).into_iter().collect::<HashSet<_>>());
    }
}

#[test]
fn counts_of_equal_weights() {
    let table: [(usize, [usize; 4]); 3] = [(8, [14, 91, 364, 1085]), (6, [5, 15, 34, 65]), (5, [0, 6, 0, 16])];
    for (n, counts) in table {
        for (k, &c) in (1..=4).zip(&counts) {
            assert_eq!(count_lattice(&Weights::ones(n), k), c, "1^{n} degree {k}");
        }
    }
    for (n, r) in [(3, 1), (5, 6), (7, 36), (9, 232)] {
        assert_eq!(count_lattice(&Weights::new(vec![2; n]).unwrap(), 1), r);
    }
    assert_eq!(count_lattice(&Weights::ones(4), 1), 2);
    assert!(enumerate_lattice_with(&Weights::ones(4), 1, 1).is_err());
}

#[test]
fn top_rows_inject_into_a_cube() {
    for n in [6, 8] {
        let w = Weights::ones(n);
        for l in 1..=4u32 {
            let images: HashSet<Vec<u32>> = enumerate_lattice(&w, l)
                .iter()
                .map(|d| top_projection(&tableau_from_diagonal(d, &w, l).unwrap()))
                .collect();
            assert_eq!(images.len(), count_lattice(&w, l));
            assert!(images.iter().all(|v| v.len() == n - 3 && v.iter().all(|&x| x <= l)));
            assert!(count_lattice(&w, l) <= ((l + 1) as usize).pow(n as u32 - 3));
        }
    }
}

#[test]
fn infeasible_weights_have_no_points() {
    let w: Weights = "5,1,1,1".parse().unwrap();
    assert!(w.violates_polygon_inequality());
    assert!((1..=4).all(|k| count_lattice(&w, k) == 0));
    for w in common::weight_vectors(7) {
        if w.len() >= 3 && w.violates_polygon_inequality() {
            assert_eq!(count_lattice(&w, 2), 0, "{w}");
        }
    }
}
