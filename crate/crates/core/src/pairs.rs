//! Unordered pairs of CMC classes in M²(c)×ℝ and the PMC surfaces of
//! M²(c)×M²(c) they correspond to, at the level of data.

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::catalog;
use crate::error::{CmcError, Result};
use crate::moebius::{canonical_yy, class_xy, stabilizer, CanonicalRep, Moebius, PairKind, Stabilizer, XyClass};

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Arl,
    Helicoid,
    /// Vertical cylinder over a curve of geodesic curvature k.
    Cylinder { k: f64 },
    Slice,
}

/// A congruence class: the ARL surface 𝒳∘f, the helicoid 𝒴∘f, or a
/// surface not parametrized by Ω (precompose is then the identity).
#[derive(Debug, Clone, PartialEq)]
pub struct CmcClass {
    pub family: Family,
    pub precompose: Moebius,
}

impl CmcClass {
    pub fn arl(f: Moebius) -> Self {
        Self { family: Family::Arl, precompose: f }
    }

    pub fn helicoid(f: Moebius) -> Self {
        Self { family: Family::Helicoid, precompose: f }
    }

    pub fn cylinder(k: f64) -> Self {
        Self { family: Family::Cylinder { k }, precompose: Moebius::identity() }
    }

    pub fn slice() -> Self {
        Self { family: Family::Slice, precompose: Moebius::identity() }
    }

    /// Precomposition by g, i.e. the class of Φ∘g.
    pub fn precomposed(&self, g: &Moebius) -> Self {
        match self.family {
            Family::Arl | Family::Helicoid => Self { family: self.family.clone(), precompose: self.precompose.compose(g) },
            _ => self.clone(),
        }
    }

    /// Equality of congruence classes.
    pub fn congruent(&self, o: &CmcClass) -> bool {
        let rel = || self.precompose.compose(&o.precompose.inverse());
        match (&self.family, &o.family) {
            (Family::Arl, Family::Arl) => rel().in_gx(),
            (Family::Helicoid, Family::Helicoid) => rel().in_gy(),
            (Family::Cylinder { k: a }, Family::Cylinder { k: b }) => a.abs() == b.abs(),
            (Family::Slice, Family::Slice) => true,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SliceKind {
    Arl,
    Helicoid,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum PmcBucket {
    ProductOfCurves { mean_curvature: f64 },
    CmcInSlice(SliceKind),
    TorralboUrbano,
    AId,
    AZeta,
    BEta,
    BM(#[serde(serialize_with = "ser_rat")] BigRational),
    BEtaM(#[serde(serialize_with = "ser_rat")] BigRational),
}

fn ser_rat<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// Bucket without its continuous parameter, for set comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BucketTag {
    ProductOfCurves,
    CmcInSliceArl,
    CmcInSliceHelicoid,
    TorralboUrbano,
    AId,
    AZeta,
    BEta,
    BM,
    BEtaM,
}

/// Every bucket the classification for c = −1 can produce.
pub const THEOREM_LIST: [BucketTag; 9] = [
    BucketTag::ProductOfCurves,
    BucketTag::CmcInSliceArl,
    BucketTag::CmcInSliceHelicoid,
    BucketTag::TorralboUrbano,
    BucketTag::AId,
    BucketTag::AZeta,
    BucketTag::BEta,
    BucketTag::BM,
    BucketTag::BEtaM,
];

impl PmcBucket {
    pub fn tag(&self) -> BucketTag {
        match self {
            PmcBucket::ProductOfCurves { .. } => BucketTag::ProductOfCurves,
            PmcBucket::CmcInSlice(SliceKind::Arl) => BucketTag::CmcInSliceArl,
            PmcBucket::CmcInSlice(SliceKind::Helicoid) => BucketTag::CmcInSliceHelicoid,
            PmcBucket::TorralboUrbano => BucketTag::TorralboUrbano,
            PmcBucket::AId => BucketTag::AId,
            PmcBucket::AZeta => BucketTag::AZeta,
            PmcBucket::BEta => BucketTag::BEta,
            PmcBucket::BM(_) => BucketTag::BM,
            PmcBucket::BEtaM(_) => BucketTag::BEtaM,
        }
    }

    /// Stabilizer of the A/B surfaces; `None` for the other buckets.
    pub fn stabilizer(&self) -> Option<Stabilizer> {
        let kind = match self {
            PmcBucket::AId => PairKind::A(XyClass::IdClass),
            PmcBucket::AZeta => PairKind::A(XyClass::ZetaClass),
            PmcBucket::BEta => PairKind::B(CanonicalRep::Eta),
            PmcBucket::BM(s) => PairKind::B(CanonicalRep::M(s.clone())),
            PmcBucket::BEtaM(s) => PairKind::B(CanonicalRep::EtaM(s.clone())),
            _ => return None,
        };
        Some(stabilizer(&kind))
    }

    /// Precomposition of the second factor (first is 𝒴) for the A/B buckets.
    pub fn representative(&self) -> Option<Moebius> {
        Some(match self {
            PmcBucket::AId => Moebius::identity(),
            PmcBucket::AZeta => Moebius::zeta(),
            PmcBucket::BEta => Moebius::eta(),
            PmcBucket::BM(s) => Moebius::m(s),
            PmcBucket::BEtaM(s) => Moebius::eta().compose(&Moebius::m(s)),
            _ => return None,
        })
    }
}

impl fmt::Display for PmcBucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PmcBucket::ProductOfCurves { mean_curvature } => write!(f, "ProductOfCurves(H = {mean_curvature})"),
            PmcBucket::CmcInSlice(SliceKind::Arl) => write!(f, "CmcInSlice(Arl)"),
            PmcBucket::CmcInSlice(SliceKind::Helicoid) => write!(f, "CmcInSlice(Helicoid)"),
            PmcBucket::TorralboUrbano => write!(f, "TorralboUrbano"),
            PmcBucket::AId => write!(f, "A_Id"),
            PmcBucket::AZeta => write!(f, "A_Zeta"),
            PmcBucket::BEta => write!(f, "B_Eta"),
            PmcBucket::BM(s) => write!(f, "B_M({s})"),
            PmcBucket::BEtaM(s) => write!(f, "B_EtaM({s})"),
        }
    }
}

fn b_bucket(rep: CanonicalRep) -> PmcBucket {
    match rep {
        CanonicalRep::Id => PmcBucket::CmcInSlice(SliceKind::Helicoid),
        CanonicalRep::Eta => PmcBucket::BEta,
        CanonicalRep::M(s) => PmcBucket::BM(s),
        CanonicalRep::EtaM(s) => PmcBucket::BEtaM(s),
    }
}

pub fn classify_pair(c: i32, first: &CmcClass, second: &CmcClass) -> Result<PmcBucket> {
    if c != 1 && c != -1 {
        return Err(CmcError::Parameter(format!("c must be ±1, got {c}")));
    }
    use Family::*;
    match (&first.family, &second.family) {
        (Cylinder { k: k1 }, Cylinder { k: k2 }) => {
            if !(k1.is_finite() && k2.is_finite()) {
                return Err(CmcError::Parameter("cylinder curvature must be finite".into()));
            }
            let h = (k1 * k1 + k2 * k2).sqrt() / 2.0;
            if h == 0.0 {
                return Err(CmcError::Parameter("two geodesic cylinders give a minimal surface".into()));
            }
            Ok(PmcBucket::ProductOfCurves { mean_curvature: h })
        }
        _ if c == 1 => Err(CmcError::UnreachableBucket(
            "for c = +1 only products of curves occur; both classes must be cylinders".into(),
        )),
        (Slice, _) | (_, Slice) => Err(CmcError::Parameter("a horizontal slice is minimal, not an H-surface with H > 0".into())),
        (Cylinder { .. }, _) | (_, Cylinder { .. }) => {
            Err(CmcError::Parameter("a cylinder (K = 0) cannot pair with a K = 4H² − 1 class".into()))
        }
        (Arl, Arl) => {
            let f = first.precompose.compose(&second.precompose.inverse());
            Ok(if f.in_gx() { PmcBucket::CmcInSlice(SliceKind::Arl) } else { PmcBucket::TorralboUrbano })
        }
        (Helicoid, Arl) | (Arl, Helicoid) => {
            let (hel, arl) = if first.family == Helicoid { (first, second) } else { (second, first) };
            let f = arl.precompose.compose(&hel.precompose.inverse());
            Ok(match class_xy(&f) {
                XyClass::IdClass => PmcBucket::AId,
                XyClass::ZetaClass => PmcBucket::AZeta,
            })
        }
        (Helicoid, Helicoid) => {
            let f = second.precompose.compose(&first.precompose.inverse());
            // the pair is unordered: f and f⁻¹ describe the same surface
            let rep = canonical_yy(&f).min(canonical_yy(&f.inverse()));
            Ok(b_bucket(rep))
        }
    }
}

/// K̄⊥ = (ν₂² − ν₁²)/2
pub fn normal_curvature(nu1: f64, nu2: f64) -> Result<f64> {
    for nu in [nu1, nu2] {
        if !(nu.abs() <= 1.0) {
            return Err(CmcError::Domain(format!("angle function must satisfy |ν| ≤ 1, got {nu}")));
        }
    }
    Ok((nu2 * nu2 - nu1 * nu1) / 2.0)
}

/// Angle functions (ν₁, ν₂) at z ∈ Ω of the representative pair of an A/B
/// bucket: 𝒴 paired with 𝒳∘f (A) or 𝒴∘f (B), both of mean curvature h.
pub fn representative_angles(bucket: &PmcBucket, h: f64, z: Complex64) -> Result<Option<(f64, f64)>> {
    let Some(f) = bucket.representative() else {
        return Ok(None);
    };
    let nu1 = catalog::helicoid_conformal(h, z)?.nu;
    let w = f.apply(z);
    let nu2 = match bucket {
        PmcBucket::AId | PmcBucket::AZeta => catalog::arl_conformal(h, w)?.nu,
        _ => catalog::helicoid_conformal(h, w)?.nu,
    };
    Ok(Some((nu1, nu2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DataQuadruple {
    pub nu1: i8,
    pub dh1: i8,
    pub nu2: i8,
    pub dh2: i8,
}

/// Sign data of the 4-uple (ν₁, dh₁, ν₂, dh₂) attached to an ordered pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedPair {
    pub signs: DataQuadruple,
    pub first: CmcClass,
    pub second: CmcClass,
}

impl SignedPair {
    pub fn new(first: CmcClass, second: CmcClass) -> Self {
        Self { signs: DataQuadruple { nu1: 1, dh1: 1, nu2: 1, dh2: 1 }, first, second }
    }

    fn swapped(&self) -> Self {
        let s = self.signs;
        Self {
            signs: DataQuadruple { nu1: s.nu2, dh1: s.dh2, nu2: s.nu1, dh2: s.dh1 },
            first: self.second.clone(),
            second: self.first.clone(),
        }
    }

    /// (ν₁, dh₁, ν₂, dh₂) ↦ (−ν₂, −dh₂, −ν₁, −dh₁)
    pub fn act_g1(&self) -> Self {
        self.swapped().flip_first().flip_second()
    }

    /// (ν₁, dh₁, ν₂, dh₂) ↦ (ν₂, dh₂, ν₁, dh₁)
    pub fn act_g2(&self) -> Self {
        self.swapped()
    }

    /// (ν₁, dh₁, ν₂, dh₂) ↦ (ν₁, dh₁, −ν₂, −dh₂)
    pub fn act_g3(&self) -> Self {
        self.flip_second()
    }

    /// Rotation by π of the first factor: (ν₁, dh₁) ↦ (−ν₁, −dh₁).
    pub fn flip_first(&self) -> Self {
        let mut o = self.clone();
        o.signs.nu1 = -o.signs.nu1;
        o.signs.dh1 = -o.signs.dh1;
        o
    }

    pub fn flip_second(&self) -> Self {
        let mut o = self.clone();
        o.signs.nu2 = -o.signs.nu2;
        o.signs.dh2 = -o.signs.dh2;
        o
    }

    fn same(&self, o: &Self) -> bool {
        self.signs == o.signs && self.first.congruent(&o.first) && self.second.congruent(&o.second)
    }

    /// The orbit under the group generated by G₁, G₂, G₃ and the factor flips.
    pub fn orbit(&self) -> Vec<SignedPair> {
        let mut out = Vec::with_capacity(8);
        for base in [self.clone(), self.swapped()] {
            for a in [false, true] {
                for b in [false, true] {
                    let mut x = base.clone();
                    if a {
                        x = x.flip_first();
                    }
                    if b {
                        x = x.flip_second();
                    }
                    out.push(x);
                }
            }
        }
        out
    }
}

pub fn unordered_equal(a: &SignedPair, b: &SignedPair) -> bool {
    a.orbit().iter().any(|x| x.same(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn examples() {
        let hel = CmcClass::helicoid(Moebius::identity());
        let arl = CmcClass::arl(Moebius::identity());
        assert_eq!(classify_pair(-1, &hel, &arl).unwrap(), PmcBucket::AId);
        assert_eq!(classify_pair(-1, &hel, &CmcClass::helicoid(Moebius::eta())).unwrap(), PmcBucket::BEta);
        assert_eq!(classify_pair(-1, &hel, &CmcClass::helicoid(Moebius::m(&q(-1)))).unwrap(), PmcBucket::BM(q(2)));
        assert_eq!(classify_pair(-1, &arl, &arl).unwrap(), PmcBucket::CmcInSlice(SliceKind::Arl));
        assert_eq!(classify_pair(-1, &arl, &CmcClass::arl(Moebius::zeta())).unwrap(), PmcBucket::TorralboUrbano);
        assert_eq!(classify_pair(-1, &hel, &CmcClass::helicoid(Moebius::xi())).unwrap(), PmcBucket::CmcInSlice(SliceKind::Helicoid));
    }

    #[test]
    fn product_of_curves() {
        let b = classify_pair(-1, &CmcClass::cylinder(1.0), &CmcClass::cylinder(1.0)).unwrap();
        assert_eq!(b, PmcBucket::ProductOfCurves { mean_curvature: 2f64.sqrt() / 2.0 });
        assert!(classify_pair(1, &CmcClass::cylinder(0.5), &CmcClass::cylinder(2.0)).is_ok());
    }

    #[test]
    fn rejected_pairs() {
        let hel = CmcClass::helicoid(Moebius::identity());
        assert!(matches!(classify_pair(1, &hel, &hel), Err(CmcError::UnreachableBucket(_))));
        assert!(classify_pair(-1, &hel, &CmcClass::cylinder(1.0)).is_err());
        assert!(classify_pair(-1, &CmcClass::slice(), &hel).is_err());
        assert!(classify_pair(0, &hel, &hel).is_err());
        assert!(classify_pair(-1, &CmcClass::cylinder(0.0), &CmcClass::cylinder(0.0)).is_err());
    }

    #[test]
    fn normal_curvature_examples() {
        assert_eq!(normal_curvature(0.4, 0.4).unwrap(), 0.0);
        let nu_arl = 3f64.sqrt() / 2.0;
        assert!((normal_curvature(nu_arl, 0.0).unwrap() + 3.0 / 8.0).abs() < 1e-15);
        assert_eq!(normal_curvature(0.1, 0.7).unwrap(), -normal_curvature(0.7, 0.1).unwrap());
        assert!(normal_curvature(1.5, 0.0).is_err());
    }

    #[test]
    fn quadruple_actions() {
        let a = SignedPair::new(CmcClass::helicoid(Moebius::identity()), CmcClass::arl(Moebius::zeta()));
        assert_eq!(a.act_g1().act_g1(), a);
        assert_eq!(a.act_g3().act_g3(), a);
        assert_eq!(a.act_g2().first, a.second);
        assert_eq!(a.act_g2().signs, a.signs);
        assert!(unordered_equal(&a, &a.act_g2()));
        assert!(unordered_equal(&a, &a));
        let mut b = a.clone();
        b.signs.nu1 = -1;
        assert!(!unordered_equal(&a, &b));
    }
}
