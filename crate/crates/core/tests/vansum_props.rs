use cyclocert::cyclonum::{conductor, CyclotomicInteger, RootOfUnity};
use cyclocert::vansum::{
    classify_vanishing, match_row, min_rep, rotation_normal_form, table_rows, Sign,
};
use proptest::prelude::*;

fn root() -> impl Strategy<Value = RootOfUnity> {
    (1u64..=30, 0i64..30).prop_map(|(n, k)| RootOfUnity::new(n, k).unwrap())
}

fn sum(terms: &[RootOfUnity]) -> CyclotomicInteger {
    terms.iter().fold(CyclotomicInteger::zero(), |acc, t| {
        let (a, b) = CyclotomicInteger::lift_pair(&acc, &t.to_cyclotomic());
        a.add(&b).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn min_rep_is_a_representation(roots in prop::collection::vec(root(), 0..4)) {
        let a = sum(&roots);
        let rep = min_rep(&a, roots.len()).expect("the input itself is a representation");
        prop_assert!(rep.length <= roots.len());
        prop_assert_eq!(rep.terms.len(), rep.length);
        prop_assert!(sum(&rep.terms).same_value(&a));
        let c = conductor(&a);
        for t in &rep.terms {
            prop_assert_eq!((c * 2) % t.order(), 0);
        }
        if rep.length > 0 {
            prop_assert!(min_rep(&a, rep.length - 1).is_none());
        }
    }

    #[test]
    fn rotation_normal_form_ignores_rotation_and_order(
        roots in prop::collection::vec(root(), 1..6),
        rot in root(),
        shuffle in any::<prop::sample::Index>(),
    ) {
        let mut turned: Vec<RootOfUnity> = roots.iter().map(|t| t.mul(&rot)).collect();
        let i = shuffle.index(turned.len());
        turned.rotate_left(i);
        prop_assert_eq!(rotation_normal_form(&roots), rotation_normal_form(&turned));
    }

    #[test]
    fn rotated_table_rows_are_recognised(row in 0usize..7, rot in root()) {
        let r = &table_rows()[row];
        let turned: Vec<RootOfUnity> = r.canonical_terms.iter().map(|t| t.mul(&rot)).collect();
        prop_assert!(sum(&turned).is_zero());
        prop_assert_eq!(match_row(&turned).map(|c| c.label), Some(r.label.clone()));
        let parts = classify_vanishing(
            &turned.iter().map(|t| (Sign::Plus, *t)).collect::<Vec<_>>(),
        ).unwrap();
        prop_assert_eq!(parts.len(), 1);
    }
}

#[test]
fn table_rows_are_minimal_and_vanishing() {
    for row in table_rows() {
        let t = &row.canonical_terms;
        assert_eq!(t.len(), row.term_count);
        assert!(sum(t).is_zero(), "{}", row.label);
        for mask in 1..(1u32 << t.len()) - 1 {
            let sub: Vec<RootOfUnity> = (0..t.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| t[i])
                .collect();
            assert!(!sum(&sub).is_zero(), "{} has a vanishing part", row.label);
        }
    }
}

#[test]
fn classify_splits_pairs_and_pentagon() {
    let z = |n, k| RootOfUnity::new(n, k).unwrap();
    let one = RootOfUnity::one();
    let input: Vec<(Sign, RootOfUnity)> = vec![
        (Sign::Plus, one),
        (Sign::Minus, one),
        (Sign::Plus, z(5, 1)),
        (Sign::Plus, z(5, 2)),
        (Sign::Plus, z(5, 3)),
        (Sign::Plus, z(5, 4)),
        (Sign::Plus, one),
        (Sign::Minus, one),
        (Sign::Plus, one),
    ];
    let parts = classify_vanishing(&input).unwrap();
    let labels: Vec<&str> = parts.iter().map(|p| p.class.label.as_str()).collect();
    assert_eq!(labels, ["2", "2", "5"]);
    assert_eq!(parts[0].indices, [0, 1]);
    assert_eq!(parts[1].indices, [6, 7]);
}
