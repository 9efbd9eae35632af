use num_complex::Complex64 as C64;
use proptest::prelude::*;
use sgcs::fockspace::{inner, FockVector};
use sgcs::states::*;
use sgcs::Error;

fn polar(r: f64, phi: f64) -> Coherence {
    Coherence::polar(r, phi).unwrap()
}

#[test]
fn coherence_validation() {
    assert!(Coherence::polar(-1.0, 0.0).is_err());
    assert!(Coherence::polar(f64::NAN, 0.0).is_err());
    let z = polar(1.0, 7.0);
    assert!(z.phi() > -std::f64::consts::PI && z.phi() <= std::f64::consts::PI);
    let w = Coherence::real(-2.0).unwrap();
    assert!((w.to_complex() - C64::new(-2.0, 0.0)).norm() < 1e-15);
}

#[test]
fn families_are_normalized() {
    let cases = [
        (Family::Sg, 1.7, 0.0),
        (Family::Msg, 3.0, 0.0),
        (Family::Sgi, 2.0, 2.5),
        (Family::Sgi, 8.0, 0.75),
        (Family::Sgii, 4.0, 3.5),
        (Family::Su11, 0.6, 2.0),
        (Family::Su2, 1.3, 3.0),
        (Family::Gs, 4.0, 0.0),
    ];
    for (f, r, k) in cases {
        let v = StateFamily::new(f, polar(r, 0.9), k).unwrap().build().unwrap();
        assert!((v.norm_sqr() - 1.0).abs() < 1e-12, "{f} r={r} κ={k}");
    }
}

#[test]
fn truncation_is_reported() {
    match gs_coeffs(polar(3.0, 0.0), 5) {
        Err(Error::Truncation { tail }) => assert!(tail > 1e-3),
        other => panic!("expected truncation error, got {other:?}"),
    }
}

#[test]
fn parameter_cones() {
    assert!(StateFamily::new(Family::Sgi, polar(1.0, 0.0), 0.5).is_err());
    assert!(StateFamily::new(Family::Sgii, polar(1.0, 0.0), 2.0).is_err());
    assert!(StateFamily::new(Family::Su11, polar(1.0, 0.0), 2.0).is_err());
    assert!(StateFamily::new(Family::Su2, polar(1.0, 0.0), 1.3).is_err());
    assert!(StateFamily::new(Family::Sg, polar(R_MAX + 1.0, 0.0), 1.0).is_err());
}

#[test]
fn msg_and_sgii_norm_oracles() {
    for r in [0.1, 1.0, 4.0, 9.0] {
        assert!(msg_norm(r).unwrap().rel_gap.unwrap() < 1e-10, "r={r}");
    }
    for l in [0usize, 1, 3, 6] {
        for r in [0.2, 1.0, 5.0] {
            assert!(sgii_norm(l, r).unwrap().rel_gap.unwrap() < 1e-10, "L={l} r={r}");
        }
    }
    assert!(sgii_norm(2, 0.0).unwrap().oracle.is_none());
}

#[test]
fn sgii_folded_matches_unfolded() {
    for (l, r, phi) in [(0usize, 0.7, 0.3), (2, 1.5, -1.0), (5, 3.0, 2.0)] {
        let z = polar(r, phi);
        let a = sgii_coeffs(z, l).unwrap();
        let b = sgii_unfolded(z, l).unwrap();
        assert!(a.max_diff(&b).unwrap() < 1e-12, "L={l}");
        assert_eq!(a.dim(), 2 * l + 2);
    }
}

#[test]
fn sgii_vacuum_limit() {
    // at r = 0 the weight sits on |0> and its partner |2L+1>
    let v = sgii_coeffs(polar(0.0, 0.0), 3).unwrap();
    let half = std::f64::consts::FRAC_1_SQRT_2;
    for (n, c) in v.coeffs().iter().enumerate() {
        let want = if n == 0 || n == 7 { half } else { 0.0 };
        assert!((c.re - want).abs() < 1e-14, "n={n}");
    }
}

#[test]
fn su11_overlap_matches_inner_product() {
    let t1 = C64::from_polar(0.4, 0.5);
    let t2 = C64::from_polar(0.3, -1.2);
    let k = 2.5;
    let a = su11_coeffs(Coherence::from_complex(t1).unwrap(), k, 200).unwrap();
    let b = su11_coeffs(Coherence::from_complex(t2).unwrap(), k, 200).unwrap();
    let direct = inner(&b, &a).unwrap();
    let closed = su11_overlap(t1, t2, k).unwrap();
    assert!((direct - closed).norm() < 1e-12);
}

#[test]
fn su2_is_binomial() {
    let v = su2_coeffs(polar(1.0, 0.0), 2.5).unwrap();
    let want = [1.0, 5.0, 10.0, 10.0, 5.0, 1.0];
    for (c, w) in v.coeffs().iter().zip(want) {
        assert!((c.norm_sqr() - w / 32.0).abs() < 1e-15);
    }
}

#[test]
fn sg_vacuum() {
    let v = sg_coeffs(polar(0.0, 0.0), 4).unwrap();
    assert_eq!(v.coeffs()[0], C64::new(1.0, 0.0));
}

#[test]
fn phases_follow_argument() {
    let phi = 0.8;
    let v = sgi_coeffs(polar(1.2, phi), 3.0, 30).unwrap();
    let w = sgi_coeffs(polar(1.2, 0.0), 3.0, 30).unwrap();
    for (n, (a, b)) in v.coeffs().iter().zip(w.coeffs()).enumerate() {
        let rot = b * C64::from_polar(1.0, n as f64 * phi);
        assert!((a - rot).norm() < 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sgi_normalized_and_oracle(kappa in 0.55f64..8.0, r in 0.0f64..10.0, phi in -3.0f64..3.0) {
        let s = StateFamily::new(Family::Sgi, polar(r, phi), kappa).unwrap();
        let v = s.build().unwrap();
        prop_assert!((v.norm_sqr() - 1.0).abs() < 1e-12);
        if r > 0.0 {
            let e = sgi_norm(kappa, r).unwrap();
            prop_assert!(e.rel_gap.unwrap() < 1e-9);
        }
    }

    #[test]
    fn sgi_at_one_is_msg(r in 0.0f64..10.0, phi in -3.0f64..3.0) {
        let z = polar(r, phi);
        let d = suggest_dim(Family::Msg, r, 1.0).unwrap();
        let a = sgi_coeffs(z, 1.0, d).unwrap();
        let b = msg_coeffs(z, d).unwrap();
        prop_assert!(a.max_diff(&b).unwrap() < 1e-10);
    }

    #[test]
    fn msg_is_rescaled_sg(r in 0.0f64..10.0) {
        let z = polar(r, 0.0);
        let d = suggest_dim(Family::Sg, r, 1.0).unwrap();
        let sg = sg_coeffs(z, d).unwrap();
        let scaled: Vec<C64> = sg.coeffs().iter().enumerate().map(|(n, c)| c / ((n + 1) as f64).sqrt()).collect();
        let scaled = FockVector::new(scaled).unwrap().normalize().unwrap();
        prop_assert!(scaled.max_diff(&msg_coeffs(z, d).unwrap()).unwrap() < 1e-10);
    }

    #[test]
    fn sgii_folding_symmetry(l in 0usize..20, r in 0.0f64..30.0) {
        let a = sgii_amplitudes(l, r).unwrap();
        let s: f64 = a.iter().map(|x| x * x).sum();
        prop_assert!((s - 1.0).abs() < 1e-12);
        for n in 0..=l {
            prop_assert_eq!(a[n], a[2 * l + 1 - n]);
        }
    }

    #[test]
    fn su11_and_su2_normalized(k2 in 2usize..20, r in 0.0f64..0.9) {
        let kappa = k2 as f64 / 2.0;
        if kappa >= 1.0 {
            let d = suggest_dim(Family::Su11, r, kappa).unwrap();
            prop_assert!((su11_coeffs(polar(r, 0.3), kappa, d).unwrap().norm_sqr() - 1.0).abs() < 1e-12);
        }
        prop_assert!((su2_coeffs(polar(r * 5.0, 0.3), kappa).unwrap().norm_sqr() - 1.0).abs() < 1e-12);
    }
}
