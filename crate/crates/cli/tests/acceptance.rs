//! One PASS/FAIL line per acceptance criterion, each at its stated tolerance.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use cmclab_core::catalog::{self, ImmersionSpec, ScrewParams, SurfaceType};
use cmclab_core::compat::{q_value, residual_bochner, residual_log_q, residual_m, sister_params, sister_params_exact, sister_rotate};
use cmclab_core::diffgeo::{self, DerivativeMode, SurfaceData};
use cmclab_core::grid::{Axis, Grid2};
use cmclab_core::moebius::*;
use cmclab_core::pairs::{classify_pair, BucketTag, CmcClass, PmcBucket, THEOREM_LIST};
use cmclab_core::polyverify::verify_lemma;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn grid(u: (f64, f64), v: (f64, f64)) -> Vec<[f64; 2]> {
    Grid2::new(Axis::new(u.0, u.1, 10).unwrap(), Axis::new(v.0, v.1, 10).unwrap()).points()
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn c1_exact_lemma() -> Outcome {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_cmclab")).arg("polycheck").output().map_err(|e| e.to_string())?;
    let dt = t.elapsed().as_secs_f64();
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success(), || format!("polycheck exited with {:?}", out.status.code()))?;
    ensure(text.contains("(M6)_18 = −486 c⁹ (4H² + c − K)"), || "identity line missing".into())?;
    let rep = verify_lemma();
    for name in ["p_6", "p_4", "r_0", "r_2", "(r|grad nu|^2)_4", "(r|grad nu|^2)_6", "(M6)_20", "(M6)_18", "(M6)_18 at K=4H^2+c"] {
        let c = rep.checks.iter().find(|c| c.name == name).ok_or(format!("no check {name}"))?;
        ensure(c.pass, || format!("{name}: found {}, expected {}", c.found, c.expected))?;
    }
    ensure(dt < 1.0, || format!("runtime {dt:.3} s"))?;
    Ok(format!("all coefficient identities exact, {dt:.3} s"))
}

fn c2_helicoid() -> Outcome {
    let t = Instant::now();
    let spec = ImmersionSpec::HelicoidH2R { h: 0.25 };
    let space = spec.ambient().unwrap();
    let (mut eh, mut ek) = (0.0f64, 0.0f64);
    for p in grid((-2.0, 2.0), (-2.0, 2.0)) {
        let cv = diffgeo::curvatures(&spec, &space, p, 1e-5).map_err(|e| e.to_string())?;
        eh = eh.max((cv.mean.abs() - 0.25).abs());
        ek = ek.max((cv.gauss_ext + 0.75).abs());
    }
    let dt = t.elapsed().as_secs_f64();
    ensure(eh < 1e-6 && ek < 1e-6, || format!("|H| err {eh:e}, K err {ek:e}"))?;
    ensure(dt < 5.0, || format!("runtime {dt:.2} s"))?;
    Ok(format!("max |H| err {eh:.1e}, max K err {ek:.1e}, {dt:.2} s"))
}

fn worst_m(sd: &SurfaceData, pts: &[[f64; 2]]) -> Result<f64, String> {
    let mut w = 0.0f64;
    for &p in pts {
        for x in residual_m(sd, p).map_err(|e| e.to_string())? {
            w = w.max(x.abs());
        }
    }
    Ok(w)
}

fn c3_m_system() -> Outcome {
    let hp = grid((-2.0, 2.0), (-2.0, 2.0));
    let ap = grid((-1.0, 1.0), (0.3, 2.0));
    let hel = catalog::helicoid_data(0.25).unwrap();
    let arl = catalog::arl_data(0.25).unwrap();
    let ch = worst_m(&hel, &hp)?;
    let ca = worst_m(&arl, &ap)?;
    let fh = worst_m(&hel.clone().with_mode(DerivativeMode::FiniteDifference), &hp)?;
    let fa = worst_m(&arl.clone().with_mode(DerivativeMode::FiniteDifference), &ap)?;
    ensure(ch < 1e-7 && ca < 1e-7, || format!("closed forms: helicoid {ch:e}, ARL {ca:e}"))?;
    ensure(fh < 1e-4 && fa < 1e-4, || format!("finite differences: helicoid {fh:e}, ARL {fa:e}"))?;
    Ok(format!("closed {:.1e}, finite differences {:.1e}", ch.max(ca), fh.max(fa)))
}

fn c4_arl() -> Outcome {
    let arl = catalog::arl_data(0.25).unwrap();
    let (mut en, mut eq) = (0.0f64, 0.0f64);
    for p in grid((-1.0, 1.0), (0.3, 2.0)) {
        let nu = arl.local(p).map_err(|e| e.to_string())?.nu.value;
        en = en.max((nu * nu - 0.75).abs());
        eq = eq.max(q_value(&arl, p).map_err(|e| e.to_string())?.abs());
    }
    ensure(en < 1e-12 && eq < 1e-9, || format!("ν² err {en:e}, |q| {eq:e}"))?;
    Ok(format!("ν² err {en:.1e}, max |q| {eq:.1e}"))
}

fn c5_parabolic() -> Outcome {
    let spec = ImmersionSpec::ParabolicPsl2 { tau: 0.5 };
    let space = spec.ambient().unwrap();
    let (mut eh, mut ek) = (0.0f64, 0.0f64);
    for p in grid((-1.0, 1.0), (0.1, 0.9)) {
        let cv = diffgeo::curvatures(&spec, &space, p, 1e-5).map_err(|e| e.to_string())?;
        eh = eh.max(cv.mean.abs());
        ek = ek.max((cv.gauss_ext + 1.0).abs());
    }
    ensure(eh < 1e-6 && ek < 1e-6, || format!("|H| {eh:e}, K err {ek:e}"))?;
    Ok(format!("max |H| {eh:.1e}, max K err {ek:.1e}"))
}

fn c6_screw() -> Outcome {
    let h3 = (2f64.sqrt() - 1.0).sqrt() / 2.0;
    let cases = [(0.25, 1.0, SurfaceType::TypeI), (0.25, -1.0, SurfaceType::TypeII), (h3, -1.0, SurfaceType::TypeIII)];
    let (mut eh, mut ek) = (0.0f64, 0.0f64);
    let mut tags = Vec::new();
    for (h, eps, ty) in cases {
        let sp = ScrewParams::new(h, 0.5, eps).map_err(|e| e.to_string())?;
        ensure(sp.surface_type() == ty, || format!("H = {h}, ε = {eps}: type {} instead of {}", sp.surface_type().label(), ty.label()))?;
        tags.push(ty.label());
        let spec = ImmersionSpec::ScrewMotionPsl2 { h, tau: 0.5, eps };
        let space = spec.ambient().unwrap();
        for p in grid((-2.0, 2.0), (-2.0, 2.0)) {
            let cv = diffgeo::curvatures(&spec, &space, p, 1e-5).map_err(|e| e.to_string())?;
            eh = eh.max((cv.mean.abs() - h).abs());
            ek = ek.max((cv.gauss_ext - (4.0 * h * h - 1.0)).abs());
        }
    }
    ensure(eh < 1e-6 && ek < 1e-6, || format!("H err {eh:e}, K err {ek:e}"))?;
    Ok(format!("types {}, max H err {eh:.1e}, max K err {ek:.1e}", tags.join("/")))
}

fn c7_log_q() -> Outcome {
    let hel = catalog::helicoid_data(0.25).unwrap();
    let mut w = 0.0f64;
    let mut n = 0;
    for p in grid((-2.0, 2.0), (-2.0, 2.0)) {
        if q_value(&hel, p).map_err(|e| e.to_string())?.abs() > 1e-6 {
            w = w.max(residual_log_q(&hel, p).map_err(|e| e.to_string())?.abs());
            n += 1;
        }
    }
    ensure(n > 0 && w < 1e-4, || format!("residual {w:e} over {n} points"))?;
    Ok(format!("max residual {w:.1e} over {n} points"))
}

fn c8_bochner() -> Outcome {
    let sq = grid((-2.0, 2.0), (-2.0, 2.0));
    let disk = grid((-0.6, 0.6), (-0.6, 0.6));
    let half = grid((-1.0, 1.0), (0.3, 2.0));
    let cases: Vec<(SurfaceData, &[[f64; 2]])> = vec![
        (catalog::helicoid_data(0.25).unwrap(), &sq),
        (catalog::arl_data(0.25).unwrap(), &half),
        (catalog::cylinder_data(-1.0, 0.5).unwrap(), &sq),
        (catalog::cylinder_data(1.0, 0.5).unwrap(), &sq),
        (catalog::slice_data(-1.0, 0.0).unwrap(), &disk),
        (catalog::slice_data(1.0, 0.0).unwrap(), &disk),
    ];
    let mut w = 0.0f64;
    for (sd, pts) in &cases {
        for &p in pts.iter() {
            w = w.max(residual_bochner(sd, p, [0.0, 0.0], 0.0).map_err(|e| format!("{}: {e}", sd.name))?.abs());
        }
    }
    ensure(w < 1e-7, || format!("max residual {w:e}"))?;
    Ok(format!("{} surfaces, max residual {w:.1e}", cases.len()))
}

fn c9_sister() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let four = r(4, 1);
    for _ in 0..1000 {
        let h = r(rng.gen_range(1..500), rng.gen_range(1..100));
        let mut tn = 0;
        while tn == 0 {
            tn = rng.gen_range(-500..500);
        }
        let tau = r(tn, rng.gen_range(1..100));
        let kappa = r(rng.gen_range(-50..50), rng.gen_range(1..20));
        let (hb2, kb) = sister_params_exact(&h, &tau, &kappa);
        ensure(&four * &hb2 + &kb == &four * &h * &h + &kappa, || format!("H = {h}, τ = {tau}"))?;
    }
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (a, b, c) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let s = [[a, b], [b, c]];
        let h = (a + c) / 2.0;
        let tau = rng.gen_range(0.01..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let sp = sister_params(h, tau);
        let (sb, _) = sister_rotate(&s, &[0.3, 0.4], sp.theta, h, sp.h_bar);
        worst = worst.max((sb[0][0] + sb[1][1] - 2.0 * sp.h_bar).abs());
    }
    ensure(worst < 1e-12, || format!("trace error {worst:e}"))?;
    Ok(format!("1000 exact parameter identities, max trace error {worst:.1e}"))
}

fn rand_rat(rng: &mut StdRng) -> BigRational {
    r(rng.gen_range(-12..=12), rng.gen_range(1..=6))
}

fn rand_pos(rng: &mut StdRng) -> BigRational {
    r(rng.gen_range(1..=12), rng.gen_range(1..=6))
}

fn rand_moebius(rng: &mut StdRng) -> Moebius {
    loop {
        if let Ok(f) = Moebius::from_action([0; 4].map(|_| rand_rat(rng))) {
            return if rng.gen_bool(0.5) { f.compose(&Moebius::eta()) } else { f };
        }
    }
}

fn rand_gy(rng: &mut StdRng) -> Moebius {
    let d = Moebius::dilation(&rand_pos(rng)).unwrap();
    if rng.gen_bool(0.5) { d.compose(&Moebius::xi()) } else { d }
}

fn rand_gx(rng: &mut StdRng) -> Moebius {
    let t = Moebius::translation(&rand_rat(rng)).compose(&Moebius::dilation(&rand_pos(rng)).unwrap());
    if rng.gen_bool(0.5) { t.compose(&Moebius::eta()) } else { t }
}

fn rho_inv(x: Option<BigRational>) -> Option<BigRational> {
    match x {
        None => Some(BigRational::zero()),
        Some(v) if v.is_zero() => None,
        Some(v) => Some(v.recip()),
    }
}

fn c10_moebius() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    for _ in 0..1000 {
        let f = rand_moebius(&mut rng);
        let (g1, g2) = (rand_gy(&mut rng), rand_gy(&mut rng));
        ensure(canonical_yy(&g1.compose(&f).compose(&g2)) == canonical_yy(&f), || format!("double coset of {f}"))?;
        let k = rand_gx(&mut rng);
        ensure(class_xy(&k.compose(&f).compose(&g2)) == class_xy(&f), || format!("class_xy of {f}"))?;
        if !f.in_gy() {
            let d = Moebius::dilation(&rand_pos(&mut rng)).unwrap();
            ensure(d.compose(&f).rho() == f.rho() && f.compose(&d).rho() == f.rho(), || format!("ρ under D for {f}"))?;
            let dx = d.compose(&Moebius::xi());
            ensure(dx.compose(&f).rho() == rho_inv(f.rho()), || format!("ρ under Dξ for {f}"))?;
        }
    }
    let mut checked = 0;
    for n in -60i64..=60 {
        for d in 1..=7 {
            let s = r(n, d);
            let t = BigRational::one() - &s;
            if s == t {
                continue;
            }
            let same = canonical_yy(&Moebius::m(&s)) == canonical_yy(&Moebius::m(&t));
            let outside = s.is_negative() || s > BigRational::one();
            ensure(same == outside, || format!("m_{s} vs m_{t}: equivalent = {same}"))?;
            checked += 1;
        }
    }
    Ok(format!("1000 random cosets, {checked} parameters for m_s vs m_(1-s)"))
}

fn c11_pairs() -> Outcome {
    let mut rng = StdRng::seed_from_u64(11);
    let mut seen = BTreeSet::new();
    for _ in 0..10_000 {
        let (a, b) = if rng.gen_range(0..10) == 0 {
            let k = |rng: &mut StdRng| rng.gen_range(1..=8) as f64 / 4.0;
            (CmcClass::cylinder(k(&mut rng)), CmcClass::cylinder(k(&mut rng)))
        } else {
            let f1 = rand_moebius(&mut rng);
            let rel = match rng.gen_range(0..8) {
                0 => rand_gx(&mut rng),
                1 => rand_gy(&mut rng),
                2 => rand_gy(&mut rng).compose(&Moebius::eta()).compose(&rand_gy(&mut rng)),
                3 => rand_gy(&mut rng).compose(&Moebius::m(&rand_rat(&mut rng))).compose(&rand_gy(&mut rng)),
                4 => rand_gx(&mut rng).compose(&Moebius::zeta()).compose(&rand_gy(&mut rng)),
                5 => Moebius::identity(),
                _ => rand_moebius(&mut rng),
            };
            let f2 = rel.compose(&f1);
            let pick = |rng: &mut StdRng, f: Moebius| if rng.gen_bool(0.5) { CmcClass::arl(f) } else { CmcClass::helicoid(f) };
            (pick(&mut rng, f1), pick(&mut rng, f2))
        };
        seen.insert(classify_pair(-1, &a, &b).map_err(|e| e.to_string())?.tag());
    }
    let expect: BTreeSet<BucketTag> = THEOREM_LIST.into_iter().collect();
    ensure(seen == expect, || format!("buckets {seen:?}"))?;
    match classify_pair(-1, &CmcClass::cylinder(1.0), &CmcClass::cylinder(1.0)).map_err(|e| e.to_string())? {
        PmcBucket::ProductOfCurves { mean_curvature } => {
            ensure((mean_curvature - 2f64.sqrt() / 2.0).abs() < 1e-15, || format!("H = {mean_curvature}"))?
        }
        b => return Err(format!("cylinders gave {b}")),
    }
    let table = [
        (PairKind::A(XyClass::IdClass), Stabilizer::FullD),
        (PairKind::A(XyClass::ZetaClass), Stabilizer::Trivial),
        (PairKind::B(CanonicalRep::Eta), Stabilizer::FullGY),
        (PairKind::B(CanonicalRep::M(r(2, 1))), Stabilizer::Trivial),
        (PairKind::B(CanonicalRep::M(r(0, 1))), Stabilizer::Trivial),
        (PairKind::B(CanonicalRep::EtaM(r(3, 1))), Stabilizer::Trivial),
        (PairKind::B(CanonicalRep::M(r(1, 2))), Stabilizer::OrderTwo { mu_sq: r(1, 1) }),
        (PairKind::B(CanonicalRep::M(r(1, 4))), Stabilizer::OrderTwo { mu_sq: r(3, 1) }),
        (PairKind::B(CanonicalRep::EtaM(r(2, 3))), Stabilizer::OrderTwo { mu_sq: r(1, 2) }),
    ];
    for (kind, want) in table {
        let got = stabilizer(&kind);
        ensure(got == want, || format!("{kind:?}: {got} instead of {want}"))?;
    }
    ensure(verify_order_two(&r(1, 4)), || "order-two element not verified".into())?;
    Ok(format!("10000 pairs, {} buckets, stabilizer table matches", seen.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("exact polynomial lemma", c1_exact_lemma),
        ("helicoid H and K", c2_helicoid),
        ("M1-M4 on helicoid and ARL", c3_m_system),
        ("ARL angle and q", c4_arl),
        ("parabolic PSL2 surface", c5_parabolic),
        ("screw-motion twins", c6_screw),
        ("log q identity", c7_log_q),
        ("Bochner identity", c8_bochner),
        ("sister correspondence", c9_sister),
        ("Moebius property suite", c10_moebius),
        ("pair classifier", c11_pairs),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match res {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
