use arrangetop::arrangement::catalog::test_catalog;
use arrangetop::braid::{braid_monodromy, decone};
use arrangetop::milnorfiber::{milnor_spectrum, presentation, spectrum_crosscheck, PipelineOptions};
use arrangetop::resonance::{build_os, resonance_components, verify_components};

fn name(a: &arrangetop::arrangement::Arrangement) -> String {
    a.label().unwrap_or("?").to_string()
}

#[test]
fn pairs_of_lines_are_counted_once() {
    for a in test_catalog() {
        let l = a.lattice();
        let d = a.degree();
        let pairs: usize = l.points.iter().map(|p| p.multiplicity() * (p.multiplicity() - 1) / 2).sum();
        assert_eq!(pairs, d * (d - 1) / 2, "{}", name(&a));
    }
}

#[test]
fn monodromy_is_pure_with_expected_exponent_sum() {
    for a in test_catalog() {
        if a.degree() < 2 {
            continue;
        }
        let aa = decone(&a, a.degree() - 1).unwrap();
        let md = braid_monodromy(&aa).unwrap();
        let expected: i64 = aa.points.iter().map(|p| (p.lines.len() * (p.lines.len() - 1)) as i64).sum();
        assert_eq!(md.total_exponent_sum(), expected, "{}", name(&a));
        for e in &md.events {
            assert!(e.braid.is_pure(), "{}", name(&a));
            assert_eq!(e.local.exponent_sum(), (e.multiplicity * (e.multiplicity - 1)) as i64);
        }
    }
}

#[test]
fn presentations_pass_the_euler_audit() {
    for a in test_catalog() {
        let (md, p) = presentation(&a, &PipelineOptions::default()).unwrap();
        assert_eq!(p.euler_characteristic(), md.euler, "{}", name(&a));
        assert!(p.has_free_abelianization());
        assert_eq!(p.n, a.degree() - 1);
    }
}

#[test]
fn spectra_are_symmetric_with_full_invariant_part() {
    for a in test_catalog() {
        let s = milnor_spectrum(&a).unwrap();
        let d = a.degree() as u32;
        assert_eq!(s.dim(0), a.degree() - 1, "{}", name(&a));
        for e in 1..d {
            assert_eq!(s.dim(e), s.dim(d - e), "{}", name(&a));
        }
        assert_eq!(s.b1f, s.dims.values().sum::<usize>());
    }
}

#[test]
fn cyclic_cover_agrees_for_small_degree() {
    for a in test_catalog().into_iter().filter(|a| a.degree() <= 6) {
        assert!(spectrum_crosscheck(&a).unwrap(), "{}", name(&a));
    }
}

#[test]
fn resonance_components_verify() {
    for a in test_catalog() {
        let comps = resonance_components(&a).unwrap();
        assert!(verify_components(&build_os(&a), &comps).unwrap(), "{}", name(&a));
    }
}
