use mhermite::mhermite::{build_by_recurrence, build_explicit, orthogonality_defect, MultiIndex, WeightSystem};
use mhermite::numerics::{tol_below_precision, Wide};
use proptest::prelude::*;

fn shifts() -> impl Strategy<Value = Vec<i64>> {
    // multiples of 1/8 in [-20, 20], pairwise distinct
    prop::collection::btree_set(-160i64..=160, 3)
        .prop_map(|s| s.into_iter().collect())
        .prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn explicit_agrees_with_recurrence(c in shifts(), n in prop::collection::vec(0usize..=4, 3)) {
        prop_assume!(n.iter().sum::<usize>() <= 12);
        let w = WeightSystem::new(c.iter().map(|&v| Wide::ratio(v, 8)).collect()).unwrap();
        let idx = MultiIndex::new(n).unwrap();
        let a = build_by_recurrence(&idx, &w).unwrap();
        let b = build_explicit(&idx, &w).unwrap();
        prop_assert!(a.relative_distance(&b) <= tol_below_precision(10));
        prop_assert!(orthogonality_defect(&a, &idx, &w).unwrap() <= tol_below_precision(15));
    }
}

#[test]
fn scaled_system_keeps_chat() {
    let w = WeightSystem::symmetric_scaled(Wide::from_i64(6), 4).unwrap();
    assert_eq!(w.symmetric_c().unwrap(), &Wide::from_i64(12));
    assert_eq!(w.chat().unwrap(), &Wide::from_i64(6));
    let v = WeightSystem::symmetric(Wide::from_i64(15))
        .unwrap()
        .with_scaled_view(10)
        .unwrap();
    assert!((v.chat().unwrap().to_f64() - 4.743416490252569).abs() < 1e-14);
}
