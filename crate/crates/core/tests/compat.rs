use cmclab_core::catalog::{self, ImmersionSpec};
use cmclab_core::compat::*;
use cmclab_core::diffgeo::{DerivativeMode, SurfaceData};
use cmclab_core::grid::{Axis, Grid2};
use cmclab_core::linalg::{det2, Mat2};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn helicoid_grid() -> Vec<[f64; 2]> {
    Grid2::new(Axis::new(-2.0, 2.0, 10).unwrap(), Axis::new(-2.0, 2.0, 10).unwrap()).points()
}

fn arl_grid() -> Vec<[f64; 2]> {
    Grid2::new(Axis::new(-1.0, 1.0, 10).unwrap(), Axis::new(0.3, 2.0, 10).unwrap()).points()
}

fn worst_m(sd: &SurfaceData, pts: &[[f64; 2]]) -> f64 {
    let rep = ResidualReport::collect("M", 1.0, pts, |p| {
        let r = residual_m(sd, p)?;
        Ok(vec![("M1", r[0]), ("M2", r[1]), ("M3", r[2]), ("M4", r[3])])
    })
    .unwrap();
    rep.max_abs
}

#[test]
fn m_system_closed_forms() {
    let hel = catalog::helicoid_data(0.25).unwrap();
    let arl = catalog::arl_data(0.25).unwrap();
    let (a, b) = (worst_m(&hel, &helicoid_grid()), worst_m(&arl, &arl_grid()));
    println!("closed: helicoid {a:e}, ARL {b:e}");
    assert!(a < 1e-7 && b < 1e-7);
}

#[test]
fn m_system_finite_differences() {
    let hel = catalog::helicoid_data(0.25).unwrap().with_mode(DerivativeMode::FiniteDifference);
    let arl = catalog::arl_data(0.25).unwrap().with_mode(DerivativeMode::FiniteDifference);
    let (a, b) = (worst_m(&hel, &helicoid_grid()), worst_m(&arl, &arl_grid()));
    println!("finite differences: helicoid {a:e}, ARL {b:e}");
    assert!(a < 1e-4 && b < 1e-4);
}

#[test]
fn wrong_mean_curvature_breaks_m1() {
    let hel = catalog::helicoid_data(0.25).unwrap().with_mean_curvature(0.3);
    let r = residual_m(&hel, [1.0, 0.5]).unwrap();
    assert!(r[0].abs() > 1e-3, "{r:?}");
}

#[test]
fn m_system_on_cylinders_and_slices() {
    for sd in [
        catalog::cylinder_data(-1.0, 0.6).unwrap(),
        catalog::cylinder_data(1.0, 0.8).unwrap(),
        catalog::slice_data(-1.0, 0.3).unwrap(),
        catalog::slice_data(1.0, 0.3).unwrap(),
    ] {
        let pts = [[0.1, 0.2], [-0.3, 0.4], [0.5, -0.5]];
        assert!(worst_m(&sd, &pts) < 1e-9, "{}", sd.name);
    }
}

#[test]
fn log_q_on_the_helicoid() {
    let sd = catalog::helicoid_data(0.25).unwrap();
    let mut worst = 0.0f64;
    for p in helicoid_grid() {
        if q_value(&sd, p).unwrap().abs() > 1e-6 {
            worst = worst.max(residual_log_q(&sd, p).unwrap().abs());
        }
    }
    println!("log q worst {worst:e}");
    assert!(worst < 1e-4);
}

#[test]
fn arl_angle_and_q() {
    let sd = catalog::arl_data(0.25).unwrap();
    for p in arl_grid() {
        let l = sd.local(p).unwrap();
        assert!((l.nu.value.powi(2) - 0.75).abs() < 1e-12);
        assert!(q_value(&sd, p).unwrap().abs() < 1e-9);
    }
}

#[test]
fn bochner_on_constant_curvature_surfaces() {
    let cases: Vec<(SurfaceData, Vec<[f64; 2]>)> = vec![
        (catalog::helicoid_data(0.25).unwrap(), helicoid_grid()),
        (catalog::helicoid_data(0.4).unwrap(), helicoid_grid()),
        (catalog::arl_data(0.25).unwrap(), arl_grid()),
        (catalog::cylinder_data(-1.0, 0.6).unwrap(), helicoid_grid()),
        (catalog::cylinder_data(1.0, 0.6).unwrap(), helicoid_grid()),
    ];
    for (sd, pts) in cases {
        let worst = pts.iter().map(|&p| residual_bochner(&sd, p, [0.0, 0.0], 0.0).unwrap().abs()).fold(0.0, f64::max);
        println!("{} Bochner worst {worst:e}", sd.name);
        assert!(worst < 1e-7, "{}", sd.name);
    }
}

#[test]
fn constant_curvature_identities() {
    for (sd, pts) in [(catalog::helicoid_data(0.25).unwrap(), helicoid_grid()), (catalog::arl_data(0.25).unwrap(), arl_grid())] {
        for p in pts {
            for r in residual_constant_k(&sd, p).unwrap() {
                assert!(r.abs() < 1e-9, "{} at {p:?}: {r}", sd.name);
            }
        }
    }
}

#[test]
fn gauss_codazzi_from_immersions() {
    let cases = [
        (ImmersionSpec::HelicoidH2R { h: 0.25 }, [[0.7, 0.3], [-1.2, 1.0], [0.0, 0.0]]),
        (ImmersionSpec::ParabolicPsl2 { tau: 0.5 }, [[0.2, 0.4], [-0.5, 0.8], [0.9, 0.15]]),
        (ImmersionSpec::ScrewMotionPsl2 { h: 0.25, tau: 0.5, eps: 1.0 }, [[0.6, 0.3], [1.5, -0.4], [-1.0, 1.0]]),
        (ImmersionSpec::ScrewMotionPsl2 { h: 0.25, tau: 0.5, eps: -1.0 }, [[0.6, 0.3], [1.5, -0.4], [-1.0, 1.0]]),
    ];
    for (spec, pts) in cases {
        for p in pts {
            let gc = gauss_codazzi_point(&spec, p, 1e-5).unwrap();
            let r = residual_c(&gc).unwrap();
            assert!(r.iter().all(|x| x.abs() < 1e-6), "{} at {p:?}: {r:?}", spec.name());
        }
    }
}

// The sister of an H-surface in E(κ, τ) must satisfy the product-space
// Gauss–Codazzi system in M²(κ − 4τ²)×ℝ with mean curvature √(H² + τ²).
#[test]
fn sister_of_numerical_data_satisfies_product_system() {
    let cases = [
        (ImmersionSpec::ParabolicPsl2 { tau: 0.5 }, [0.2, 0.4], 0.0),
        (ImmersionSpec::ScrewMotionPsl2 { h: 0.25, tau: 0.5, eps: 1.0 }, [0.6, 0.3], 0.25),
        (ImmersionSpec::ScrewMotionPsl2 { h: 0.25, tau: 0.5, eps: -1.0 }, [-0.8, 0.1], 0.25),
    ];
    for (spec, p, h) in cases {
        let gc = gauss_codazzi_point(&spec, p, 1e-5).unwrap();
        let sis = sister_point(&gc).unwrap();
        let r = residual_c(&sis).unwrap();
        assert!(r.iter().all(|x| x.abs() < 1e-6), "{}: {r:?}", spec.name());
        assert!(((sis.s[0][0] + sis.s[1][1]) / 2.0 - (h * h + 0.25f64).sqrt()).abs() < 1e-6);
        assert_eq!(sis.c, -2.0);
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn sym() -> impl Strategy<Value = Mat2> {
    (-3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0).prop_map(|(a, b, c)| [[a, b], [b, c]])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn sister_parameters_exact(hn in 1i64..200, hd in 1i64..60, tn in -200i64..200, td in 1i64..60, kn in -50i64..50) {
        prop_assume!(tn != 0);
        let (h, tau, kappa) = (rat(hn, hd), rat(tn, td), rat(kn, 7));
        let (h_bar_sq, kappa_bar) = sister_params_exact(&h, &tau, &kappa);
        let four = rat(4, 1);
        prop_assert_eq!(&four * &h_bar_sq + kappa_bar, &four * &h * &h + kappa);
    }

    #[test]
    fn sister_rotation_properties(s in sym(), h in 0.01f64..2.0, tau in -2.0f64..2.0, t in prop::array::uniform2(-1.0f64..1.0)) {
        prop_assume!(tau.abs() > 1e-3);
        // shift S so that its mean curvature is h
        let shift = h - (s[0][0] + s[1][1]) / 2.0;
        let s = [[s[0][0] + shift, s[0][1]], [s[1][0], s[1][1] + shift]];
        let sp = sister_params(h, tau);
        let (sb, tb) = sister_rotate(&s, &t, sp.theta, h, sp.h_bar);
        prop_assert!((sb[0][0] + sb[1][1] - 2.0 * sp.h_bar).abs() < 1e-12);
        prop_assert!((sb[0][1] - sb[1][0]).abs() < 1e-12);
        prop_assert!((det2(&sb) - det2(&s) - tau * tau).abs() < 1e-10 * (1.0 + det2(&s).abs()));
        prop_assert!((tb[0].hypot(tb[1]) - t[0].hypot(t[1])).abs() < 1e-12);
    }
}
