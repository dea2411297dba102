use mhermite::asymptotics::SymmetricModel;
use mhermite::mhermite::WeightSystem;
use mhermite::numerics::Wide;
use mhermite::quadrature::{build_rule, decay_profile};

#[test]
fn reference_entries_nth_roots() {
    let rule = build_rule(10, &WeightSystem::symmetric(Wide::from_i64(15)).unwrap(), true).unwrap();
    let profile = decay_profile(&rule, 0);
    assert_eq!(profile.len(), 20);
    assert_eq!(profile[0].0, 11);
    assert!((profile[0].1 - 0.3042).abs() < 5e-4);
    assert_eq!(profile[19].0, 30);
    assert!((profile[19].1 - 0.0144).abs() < 5e-4);
    assert!(profile.iter().all(|(_, v)| *v < 1.0));
}

#[test]
fn nth_roots_stay_below_the_potential_bound() {
    let n = 10;
    let rule = build_rule(n, &WeightSystem::symmetric(Wide::from_i64(15)).unwrap(), true).unwrap();
    let chat = Wide::from_i64(15) / Wide::from(n).sqrt();
    let model = SymmetricModel::new(&chat).unwrap();
    let nu = model.nu_measures(256).unwrap();
    let ell = model.equilibrium_constants(&nu);
    let root_n = (n as f64).sqrt();
    for j in 1..=3 {
        for (k, value) in decay_profile(&rule, j - 1) {
            let x = rule.nodes()[k - 1].to_f64() / root_n;
            let bound = model.decay_bound(&nu, &ell, j, x, true);
            assert!(value <= bound + 0.05, "j={j} k={k}: {value} > {bound}");
        }
    }
}
