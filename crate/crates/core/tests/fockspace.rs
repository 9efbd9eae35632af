use num_complex::Complex64 as C64;
use proptest::prelude::*;
use sgcs::fockspace::*;
use sgcs::states::{gs_coeffs, sg_coeffs, su11_coeffs, Coherence};

#[test]
fn boson_commutator_interior() {
    let (a, ad, n) = build_boson(30).unwrap();
    let c = commutator(&a, &ad).unwrap();
    assert!(interior_gap(&c, &FockOperator::identity(30)).unwrap() < 1e-13);
    // the truncation shows up in the last row only
    assert!((c.get(29, 29).re + 29.0).abs() < 1e-12);
    assert!(ad.mul(&a).unwrap().max_gap(&n).unwrap() < 1e-12);
}

#[test]
fn v_commutator_exact() {
    let (v, vd) = build_v(12).unwrap();
    let c = commutator(&v, &vd).unwrap();
    let mut want = vec![0.0; 12];
    want[0] = 1.0;
    want[11] = -1.0;
    assert_eq!(c.max_gap(&FockOperator::diagonal(&want)).unwrap(), 0.0);
}

#[test]
fn su2_relations_and_casimir() {
    for kappa in [0.5, 1.0, 2.5, 6.0] {
        let (cm, cp, c0) = build_su2_ladder(kappa).unwrap();
        assert!(commutator(&c0, &cp).unwrap().max_gap(&cp).unwrap() < 1e-12);
        assert!(commutator(&c0, &cm).unwrap().max_gap(&cm.scaled_re(-1.0)).unwrap() < 1e-12);
        assert!(commutator(&cm, &cp).unwrap().max_gap(&c0.scaled_re(-2.0)).unwrap() < 1e-12);
    }
    assert!(build_su2_ladder(1.25).is_err());
}

#[test]
fn su11_casimir_interior() {
    for kappa in [1.0, 2.0, 5.0] {
        let cas = build_su11_casimir(kappa, 40).unwrap();
        let want = FockOperator::identity(40).scaled_re(kappa * (kappa - 1.0));
        assert!(interior_gap(&cas, &want).unwrap() < 1e-10);
    }
    assert!(build_su11_ladder(0.5, 10).is_err());
}

#[test]
fn quadratures_hermitian() {
    let (x, p) = build_quadratures(20).unwrap();
    assert_eq!(x.max_gap(&x.adjoint()).unwrap(), 0.0);
    assert!(p.max_gap(&p.adjoint()).unwrap() < 1e-15);
    let c = commutator(&x, &p).unwrap();
    assert!(interior_gap(&c, &FockOperator::identity(20).scaled(C64::new(0.0, 1.0))).unwrap() < 1e-14);
}

#[test]
fn displacement_builds_sg_and_gs() {
    let d = 40;
    let (v, vd) = build_v(d).unwrap();
    let e = matexp_apply(&vd.sub(&v).unwrap(), &FockVector::basis(d, 0).unwrap(), 0.8).unwrap();
    let sg = sg_coeffs(Coherence::real(0.8).unwrap(), d).unwrap();
    assert!(e.max_diff(&sg).unwrap() < 1e-8);

    let d = 80;
    let (a, ad, _) = build_boson(d).unwrap();
    let e = matexp_apply(&ad.sub(&a).unwrap(), &FockVector::basis(d, 0).unwrap(), 1.5).unwrap();
    let gs = gs_coeffs(Coherence::real(1.5).unwrap(), d).unwrap();
    assert!(e.max_diff(&gs).unwrap() < 1e-10);
}

#[test]
fn su11_displacement() {
    let d = 60;
    let (am, ap, _) = build_su11_ladder(2.0, d).unwrap();
    let e = matexp_apply(&ap.sub(&am).unwrap(), &FockVector::basis(d, 0).unwrap(), 0.6).unwrap();
    let su = su11_coeffs(Coherence::real(0.6f64.tanh()).unwrap(), 2.0, d).unwrap();
    assert!(e.max_diff(&su).unwrap() < 1e-8);
}

#[test]
fn dimension_checks() {
    let (a, _, _) = build_boson(4).unwrap();
    assert!(a.apply(&FockVector::basis(5, 0).unwrap()).is_err());
    assert!(FockVector::basis(3, 3).is_err());
    assert!(build_boson(1).is_err());
    assert!(a.block(5).is_err());
}

fn arb_vector(d: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d)
}

proptest! {
    #[test]
    fn antihermitian_exponential_is_unitary(raw in arb_vector(16), t in -2.0f64..2.0) {
        let (v, vd) = build_v(16).unwrap();
        let g = vd.sub(&v).unwrap();
        let c: Vec<C64> = raw.iter().map(|&(x, y)| C64::new(x, y)).collect();
        prop_assume!(c.iter().any(|z| z.norm() > 1e-3));
        let psi = FockVector::new(c).unwrap().normalize().unwrap();
        let out = matexp_apply(&g, &psi, t).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
        let back = matexp_apply(&g, &out, -t).unwrap();
        prop_assert!(back.max_diff(&psi).unwrap() < 1e-12);
    }

    #[test]
    fn expectation_of_hermitian_is_real(raw in arb_vector(12)) {
        let c: Vec<C64> = raw.iter().map(|&(x, y)| C64::new(x, y)).collect();
        prop_assume!(c.iter().any(|z| z.norm() > 1e-3));
        let psi = FockVector::new(c).unwrap().normalize().unwrap();
        let (x, p) = build_quadratures(12).unwrap();
        prop_assert!(expectation(&x, &psi).unwrap().im.abs() < 1e-13);
        prop_assert!(expectation(&p, &psi).unwrap().im.abs() < 1e-13);
        let (_, _, n) = build_boson(12).unwrap();
        prop_assert!(expectation(&n, &psi).unwrap().re >= -1e-15);
    }

    #[test]
    fn adjoint_is_involution(kappa in 1.0f64..10.0, d in 3usize..20) {
        let (am, ap, _) = build_su11_ladder(kappa, d).unwrap();
        prop_assert_eq!(am.adjoint().adjoint().max_gap(&am).unwrap(), 0.0);
        prop_assert_eq!(am.adjoint().max_gap(&ap).unwrap(), 0.0);
    }

    #[test]
    fn su11_entry_rate(kappa in 5.0f64..500.0, d in 3usize..15) {
        let (am, _, _) = build_su11_ladder(kappa, d).unwrap();
        for n in 0..d - 1 {
            let nf = n as f64;
            let v = am.get(n, n + 1).re / (2.0 * kappa).sqrt();
            prop_assert!((v - (nf + 1.0).sqrt()).abs() <= (nf + 1.0).sqrt() * nf / (4.0 * kappa) + 1e-14);
        }
    }
}
