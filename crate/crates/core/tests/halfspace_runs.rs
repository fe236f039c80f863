use parity_ns::field::random_symmetric_solenoidal;
use parity_ns::halfspace::{check_omsy, extend, halfspace_run, restrict, ExtensionKind};
use parity_ns::nsops::SolverConfig;
use parity_ns::symtype::{Parity, TypeTuple};

fn cfg() -> SolverConfig {
    SolverConfig { n: 16, t_end: 0.1, ..Default::default() }
}

#[test]
fn symmetric_extension_conserves_split_and_kind() {
    let u = random_symmetric_solenoidal(&TypeTuple::diagonal(), 16, 5).unwrap().scale(1e-2);
    assert!(check_omsy(&u));
    let h = restrict(&u);
    let ext = extend(&h, ExtensionKind::Symmetric).unwrap();
    assert_eq!(ext.type_tuple(Default::default()), Some(TypeTuple::diagonal()));
    let r = halfspace_run(&h, ExtensionKind::Symmetric, &cfg()).unwrap();
    for rec in &r.records {
        println!("t={} imbalance={:e}", rec.t, rec.imbalance);
    }
    assert!(r.picard_converged);
    assert!(r.verdicts.split_equal);
    assert!(r.verdicts.symmetry_kept);
}

#[test]
fn zero_extension_leaks_energy() {
    let u = random_symmetric_solenoidal(&TypeTuple::diagonal(), 16, 5).unwrap().scale(1e-2);
    let r = halfspace_run(&restrict(&u), ExtensionKind::Zero, &cfg()).unwrap();
    println!("outside {:?}", r.records.iter().map(|x| x.outside_energy).collect::<Vec<_>>());
    assert!(r.verdicts.outside_energy_positive);
}

#[test]
fn antisymmetric_extension_loses_symmetry() {
    let kind = TypeTuple::real_canonical(Parity::unit(2));
    let u = random_symmetric_solenoidal(&kind, 16, 6).unwrap().scale(1e-2);
    let r = halfspace_run(&restrict(&u), ExtensionKind::Antisymmetric, &cfg()).unwrap();
    println!(
        "initial {:?} b {:?} max imbalance {:e}",
        r.initial_labels.map(|t| t.to_string()),
        r.initial_b_label.map(|t| t.to_string()),
        r.records.iter().map(|x| x.imbalance).fold(0.0, f64::max)
    );
    assert_eq!(r.initial_labels, Some(kind));
    assert!(r.verdicts.symmetry_lost);
}
