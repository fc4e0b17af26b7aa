use std::collections::BTreeSet;

use cmclab_core::moebius::{Moebius, Stabilizer};
use cmclab_core::pairs::*;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rand_rat(rng: &mut StdRng) -> BigRational {
    r(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn rand_pos(rng: &mut StdRng) -> BigRational {
    r(rng.gen_range(1..=9), rng.gen_range(1..=5))
}

fn rand_general(rng: &mut StdRng) -> Moebius {
    loop {
        let e = [0; 4].map(|_| rand_rat(rng));
        if let Ok(f) = Moebius::from_action(e) {
            return f;
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

/// Relative position of the second class: generic, or a structured element
/// so that the degenerate buckets are reached too.
fn rand_relation(rng: &mut StdRng) -> Moebius {
    match rng.gen_range(0..8) {
        0 => rand_gx(rng),
        1 => rand_gy(rng),
        2 => rand_gy(rng).compose(&Moebius::eta()).compose(&rand_gy(rng)),
        3 => rand_gy(rng).compose(&Moebius::m(&rand_rat(rng))).compose(&rand_gy(rng)),
        4 => rand_gx(rng).compose(&Moebius::zeta()).compose(&rand_gy(rng)),
        5 => Moebius::identity(),
        _ => rand_general(rng),
    }
}

fn rand_pair(rng: &mut StdRng) -> (CmcClass, CmcClass) {
    if rng.gen_range(0..10) == 0 {
        let k = |rng: &mut StdRng| rng.gen_range(1..=8) as f64 / 4.0;
        return (CmcClass::cylinder(k(rng)), CmcClass::cylinder(k(rng)));
    }
    let f1 = rand_general(rng);
    let f2 = rand_relation(rng).compose(&f1);
    let pick = |rng: &mut StdRng, f: Moebius| if rng.gen_bool(0.5) { CmcClass::arl(f) } else { CmcClass::helicoid(f) };
    (pick(rng, f1), pick(rng, f2))
}

#[test]
fn fuzz_covers_exactly_the_theorem_list() {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut seen = BTreeSet::new();
    for _ in 0..10_000 {
        let (a, b) = rand_pair(&mut rng);
        let bucket = classify_pair(-1, &a, &b).unwrap();
        assert_eq!(classify_pair(-1, &b, &a).unwrap(), bucket, "asymmetric on {a:?} {b:?}");
        if let PmcBucket::BM(s) | PmcBucket::BEtaM(s) = &bucket {
            assert!(*s >= r(0, 1));
        }
        seen.insert(bucket.tag());
    }
    let expect: BTreeSet<_> = THEOREM_LIST.into_iter().collect();
    assert_eq!(seen, expect);
}

#[test]
fn sphere_products_only() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..500 {
        let (a, b) = rand_pair(&mut rng);
        match classify_pair(1, &a, &b) {
            Ok(bk) => assert_eq!(bk.tag(), BucketTag::ProductOfCurves),
            Err(e) => assert!(matches!(e, cmclab_core::CmcError::UnreachableBucket(_))),
        }
    }
}

#[test]
fn simultaneous_precomposition() {
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..2000 {
        let (a, b) = rand_pair(&mut rng);
        let g = rand_general(&mut rng);
        assert_eq!(
            classify_pair(-1, &a.precomposed(&g), &b.precomposed(&g)).unwrap(),
            classify_pair(-1, &a, &b).unwrap()
        );
    }
}

#[test]
fn unit_cylinders() {
    match classify_pair(-1, &CmcClass::cylinder(1.0), &CmcClass::cylinder(1.0)).unwrap() {
        PmcBucket::ProductOfCurves { mean_curvature } => assert!((mean_curvature - 2f64.sqrt() / 2.0).abs() < 1e-15),
        b => panic!("{b}"),
    }
}

#[test]
fn stabilizer_table() {
    let hel = CmcClass::helicoid(Moebius::identity());
    let with = |f: Moebius| classify_pair(-1, &hel, &CmcClass::helicoid(f)).unwrap();
    assert_eq!(classify_pair(-1, &hel, &CmcClass::arl(Moebius::identity())).unwrap().stabilizer(), Some(Stabilizer::FullD));
    assert_eq!(classify_pair(-1, &hel, &CmcClass::arl(Moebius::zeta())).unwrap().stabilizer(), Some(Stabilizer::Trivial));
    assert_eq!(with(Moebius::eta()).stabilizer(), Some(Stabilizer::FullGY));
    assert_eq!(with(Moebius::m(&r(2, 1))).stabilizer(), Some(Stabilizer::Trivial));
    assert_eq!(with(Moebius::m(&r(0, 1))).stabilizer(), Some(Stabilizer::Trivial));
    for (n, d) in [(1, 2), (1, 3), (2, 5)] {
        let s = r(n, d);
        let b = with(Moebius::m(&s));
        assert_eq!(b, PmcBucket::BM(s.clone()));
        assert_eq!(b.stabilizer(), Some(Stabilizer::OrderTwo { mu_sq: (r(1, 1) - &s) / &s }));
    }
    assert_eq!(with(Moebius::m(&r(1, 2))).stabilizer(), Some(Stabilizer::OrderTwo { mu_sq: r(1, 1) }));
    assert_eq!(PmcBucket::TorralboUrbano.stabilizer(), None);
}

#[test]
fn non_flat_normal_bundle_on_a_and_b_surfaces() {
    let h = 0.25;
    let pts: Vec<Complex64> = (0..6).flat_map(|i| (1..4).map(move |j| Complex64::new(-1.5 + 0.6 * i as f64, 0.5 * j as f64))).collect();
    let sup = |b: &PmcBucket| {
        pts.iter()
            .map(|&z| {
                let (n1, n2) = representative_angles(b, h, z).unwrap().unwrap();
                normal_curvature(n1, n2).unwrap().abs()
            })
            .fold(0.0, f64::max)
    };
    for b in [PmcBucket::AId, PmcBucket::AZeta, PmcBucket::BM(r(0, 1)), PmcBucket::BM(r(1, 3)), PmcBucket::BM(r(3, 1)), PmcBucket::BEtaM(r(1, 2)), PmcBucket::BEtaM(r(5, 1))] {
        assert!(sup(&b) > 1e-3, "{b}: {}", sup(&b));
    }
    // η preserves ν² of the helicoid, so ℬ_η has flat normal bundle
    assert!(sup(&PmcBucket::BEta) < 1e-12);
    assert!(representative_angles(&PmcBucket::TorralboUrbano, h, pts[0]).unwrap().is_none());
}

fn class_strategy() -> impl Strategy<Value = CmcClass> {
    (0u8..3, prop::array::uniform4(-6i64..=6), 1i64..4).prop_filter_map("singular", |(fam, e, d)| {
        let f = Moebius::from_action(e.map(|n| r(n, d))).ok()?;
        Some(match fam {
            0 => CmcClass::arl(f),
            1 => CmcClass::helicoid(f),
            _ => CmcClass::cylinder(d as f64 / 2.0),
        })
    })
}

fn signs() -> impl Strategy<Value = DataQuadruple> {
    prop::array::uniform4(any::<bool>()).prop_map(|b| {
        let s = |x: bool| if x { 1 } else { -1 };
        DataQuadruple { nu1: s(b[0]), dh1: s(b[1]), nu2: s(b[2]), dh2: s(b[3]) }
    })
}

proptest! {
    #[test]
    fn group_actions_are_involutions(a in class_strategy(), b in class_strategy(), s in signs()) {
        let p = SignedPair { signs: s, first: a, second: b };
        prop_assert_eq!(p.act_g1().act_g1(), p.clone());
        prop_assert_eq!(p.act_g2().act_g2(), p.clone());
        prop_assert_eq!(p.act_g3().act_g3(), p.clone());
        prop_assert!(unordered_equal(&p, &p.act_g1()));
        prop_assert!(unordered_equal(&p, &p.act_g2()));
        prop_assert!(unordered_equal(&p, &p.act_g3()));
        prop_assert!(unordered_equal(&p.act_g2(), &p));
    }

    #[test]
    fn single_sign_flip_leaves_the_orbit(a in class_strategy(), b in class_strategy(), s in signs()) {
        let p = SignedPair { signs: s, first: a, second: b };
        let mut q = p.clone();
        q.signs.nu1 = -q.signs.nu1;
        prop_assert!(!unordered_equal(&p, &q));
        let mut q = p.clone();
        q.signs.dh2 = -q.signs.dh2;
        prop_assert!(!unordered_equal(&p, &q));
    }

    #[test]
    fn orbit_has_eight_elements(a in class_strategy(), b in class_strategy(), s in signs()) {
        let p = SignedPair { signs: s, first: a, second: b };
        let orbit = p.orbit();
        prop_assert_eq!(orbit.len(), 8);
        for x in &orbit {
            prop_assert!(unordered_equal(&p, x));
        }
    }

    #[test]
    fn normal_curvature_antisymmetric(a in -1.0f64..1.0, b in -1.0f64..1.0) {
        prop_assert_eq!(normal_curvature(a, b).unwrap(), -normal_curvature(b, a).unwrap());
        prop_assert_eq!(normal_curvature(a, a).unwrap(), 0.0);
    }
}
