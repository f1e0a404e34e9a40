use num_bigint::BigInt;
use polyring::oracle::Minors;
use polyring::straighten::ColumnProduct;
use polyring::{LinearCombination, Tableau};
use proptest::prelude::*;

fn product() -> impl Strategy<Value = ColumnProduct> {
    (2usize..=8).prop_flat_map(|n| {
        let col = (1..=n as u16, 1..n as u16).prop_map(|(i, j)| (i, if j >= i { j + 1 } else { j }));
        prop::collection::vec(col, 1..=6).prop_map(move |cols| ColumnProduct::new(n, cols).unwrap())
    })
}

fn star_of(p: &ColumnProduct) -> (bool, Tableau) {
    let (negative, cols) = p.normalized().expect("columns have distinct entries");
    let mut top: Vec<u16> = cols.iter().map(|c| c.0).collect();
    let mut bottom: Vec<u16> = cols.iter().map(|c| c.1).collect();
    top.sort_unstable();
    bottom.sort_unstable();
    (negative, Tableau::new(p.n(), top, bottom).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn straightening_agrees_with_minors(p in product(), seed in any::<u64>()) {
        let lc = p.straighten();
        for m in Minors::seeded(p.n(), seed, 20) {
            prop_assert_eq!(m.product(&p), m.combination(&lc));
        }
    }

    #[test]
    fn star_product_leads_for_every_constant(p in product()) {
        let lc = p.straighten();
        let (negative, star) = star_of(&p);
        prop_assert_eq!(lc.coeff(&star), BigInt::from(if negative { -1 } else { 1 }));
        for c in [2, 3, 7] {
            let top = star.lg_degree(c).unwrap();
            for t in lc.keys().filter(|t| **t != star) {
                prop_assert!(t.lg_degree(c).unwrap() < top);
            }
        }
    }

    #[test]
    fn outputs_keep_degree_and_content(p in product()) {
        let (_, star) = star_of(&p);
        for t in p.straighten().keys() {
            prop_assert_eq!(t.degree(), p.degree());
            prop_assert_eq!(t.content(), star.content());
        }
    }

    #[test]
    fn semistandard_tableaux_are_fixed(p in product()) {
        for t in p.straighten().keys() {
            let again = ColumnProduct::from_tableau(t).straighten();
            prop_assert_eq!(again, LinearCombination::from_term(t.clone(), 1));
        }
    }

    #[test]
    fn tableau_json_round_trips(p in product()) {
        let (_, star) = star_of(&p);
        let json = serde_json::to_string(&star).unwrap();
        prop_assert_eq!(serde_json::from_str::<Tableau>(&json).unwrap(), star);
    }
}

#[test]
fn small_identities() {
    let x = Tableau::parse_with_n("[1 2 / 3 4]", 4).unwrap();
    let sorted = ColumnProduct::new(4, vec![(1, 3), (2, 4)]).unwrap().straighten();
    assert_eq!(sorted, LinearCombination::from_term(x, 1));

    let flipped = ColumnProduct::new(2, vec![(2, 1)]).unwrap().straighten();
    let unit = Tableau::parse_with_n("[1 / 2]", 2).unwrap();
    assert_eq!(flipped, LinearCombination::from_term(unit.clone(), -1));

    let m = Minors::new(&[[1, 0], [0, 1], [0, 0], [0, 0]]);
    assert_eq!(m.tableau(&Tableau::parse_with_n("[1 / 2]", 4).unwrap()), BigInt::from(1));
    assert_eq!(m.tableau(&Tableau::empty(4)), BigInt::from(1));
}

#[test]
fn square_relation_on_fifty_matrices() {
    let p = ColumnProduct::new(4, vec![(1, 4), (2, 3)]).unwrap();
    let lc = p.straighten();
    assert_eq!(lc.term_count(), 2);
    for m in Minors::seeded(4, 99, 50) {
        assert_eq!(m.product(&p), m.combination(&lc));
    }
}
