//! Exact isometries of the upper half-plane, PSL₂(ℝ) ∪ PSL₂⁻(ℝ), with
//! rational entries, and the double-coset classifications by G_X and G_Y.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{CmcError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Orientation {
    Plus,
    Minus,
}

impl Orientation {
    pub fn times(self, o: Orientation) -> Orientation {
        if self == o {
            Orientation::Plus
        } else {
            Orientation::Minus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Orientation::Plus => '+',
            Orientation::Minus => '-',
        }
    }
}

/// f = M∘η^o with η(z) = −z̄ and M = ((α, β), (γ, δ)), αδ − βγ > 0.
///
/// Entries are coprime integers whose first nonzero entry is positive, so
/// structural equality is equality of maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Moebius {
    m: [BigInt; 4],
    orientation: Orientation,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Moebius {
    /// Builds from stored entries; the determinant must be positive.
    pub fn new(entries: [BigRational; 4], orientation: Orientation) -> Result<Self> {
        let [a, b, c, d] = &entries;
        let det = a * d - b * c;
        if !det.is_positive() {
            return Err(CmcError::Domain(format!("stored matrix needs αδ − βγ > 0, got {det}")));
        }
        Ok(Self { m: normalize(entries), orientation })
    }

    pub fn from_ints(e: [i64; 4], orientation: Orientation) -> Result<Self> {
        Self::new(e.map(q), orientation)
    }

    /// From the displayed action: z ↦ (az+b)/(cz+d) if ad − bc > 0, and
    /// z ↦ (az̄+b)/(cz̄+d) if ad − bc < 0.
    pub fn from_action(e: [BigRational; 4]) -> Result<Self> {
        let [a, b, c, d] = e;
        let det = &a * &d - &b * &c;
        if det.is_zero() {
            return Err(CmcError::Domain("singular matrix".into()));
        }
        if det.is_positive() {
            Self::new([a, b, c, d], Orientation::Plus)
        } else {
            Self::new([-a, b, -c, d], Orientation::Minus)
        }
    }

    pub fn identity() -> Self {
        Self::from_ints([1, 0, 0, 1], Orientation::Plus).unwrap()
    }

    /// η(z) = −z̄
    pub fn eta() -> Self {
        Self::from_ints([1, 0, 0, 1], Orientation::Minus).unwrap()
    }

    /// ξ(z) = −1/z
    pub fn xi() -> Self {
        Self::from_ints([0, -1, 1, 0], Orientation::Plus).unwrap()
    }

    /// ζ(z) = 1/(1 − z)
    pub fn zeta() -> Self {
        Self::from_ints([0, 1, -1, 1], Orientation::Plus).unwrap()
    }

    /// m_s = ((s, 1−s), (−1, 1))
    pub fn m(s: &BigRational) -> Self {
        Self::new([s.clone(), q(1) - s, q(-1), q(1)], Orientation::Plus).unwrap()
    }

    /// z ↦ λz, λ > 0
    pub fn dilation(lambda: &BigRational) -> Result<Self> {
        Self::new([lambda.clone(), q(0), q(0), q(1)], Orientation::Plus)
    }

    /// z ↦ z + b
    pub fn translation(b: &BigRational) -> Self {
        Self::new([q(1), b.clone(), q(0), q(1)], Orientation::Plus).unwrap()
    }

    pub fn entries(&self) -> &[BigInt; 4] {
        &self.m
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn det(&self) -> BigInt {
        &self.m[0] * &self.m[3] - &self.m[1] * &self.m[2]
    }

    /// Entries (a, b, c, d) of the displayed action formula.
    pub fn action_entries(&self) -> [BigInt; 4] {
        let [a, b, c, d] = self.m.clone();
        match self.orientation {
            Orientation::Plus => [a, b, c, d],
            Orientation::Minus => [-a, b, -c, d],
        }
    }

    fn rat(&self) -> [BigRational; 4] {
        self.m.clone().map(BigRational::from_integer)
    }

    /// η M η
    fn conj_eta(m: &[BigRational; 4]) -> [BigRational; 4] {
        [m[0].clone(), -m[1].clone(), -m[2].clone(), m[3].clone()]
    }

    /// self ∘ other
    pub fn compose(&self, other: &Moebius) -> Moebius {
        let a = self.rat();
        let mut b = other.rat();
        if self.orientation == Orientation::Minus {
            b = Self::conj_eta(&b);
        }
        let prod = [
            &a[0] * &b[0] + &a[1] * &b[2],
            &a[0] * &b[1] + &a[1] * &b[3],
            &a[2] * &b[0] + &a[3] * &b[2],
            &a[2] * &b[1] + &a[3] * &b[3],
        ];
        Moebius::new(prod, self.orientation.times(other.orientation)).expect("determinants multiply")
    }

    pub fn inverse(&self) -> Moebius {
        let a = self.rat();
        let mut inv = [a[3].clone(), -a[1].clone(), -a[2].clone(), a[0].clone()];
        if self.orientation == Orientation::Minus {
            inv = Self::conj_eta(&inv);
        }
        Moebius::new(inv, self.orientation).expect("inverse keeps determinant sign")
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        let w = match self.orientation {
            Orientation::Plus => z,
            Orientation::Minus => -z.conj(),
        };
        let e: Vec<f64> = self.m.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
        (e[0] * w + e[1]) / (e[2] * w + e[3])
    }

    /// ρ = βγ/(αδ), `None` for ∞.
    pub fn rho(&self) -> Option<BigRational> {
        let [a, b, c, d] = &self.m;
        let den = a * d;
        let num = b * c;
        assert!(!(den.is_zero() && num.is_zero()), "invertible matrix has αδ or βγ nonzero");
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num, den))
        }
    }

    pub fn in_gx(&self) -> bool {
        self.m[2].is_zero()
    }

    pub fn in_gy(&self) -> bool {
        let [a, b, c, d] = &self.m;
        self.orientation == Orientation::Plus && ((b.is_zero() && c.is_zero()) || (a.is_zero() && d.is_zero()))
    }

    pub fn in_d(&self) -> bool {
        self.orientation == Orientation::Plus && self.m[1].is_zero() && self.m[2].is_zero()
    }

    pub fn in_t(&self) -> bool {
        self.orientation == Orientation::Plus && self.m[2].is_zero()
    }

    /// The positive rescaling of the stored entries by `k`; same map.
    pub fn rescaled_entries(&self, k: &BigRational) -> [BigRational; 4] {
        self.rat().map(|x| x * k)
    }
}

fn normalize(e: [BigRational; 4]) -> [BigInt; 4] {
    let lcm = e.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let mut n: Vec<BigInt> = e.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = n.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let first_neg = n.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false);
    for x in n.iter_mut() {
        *x = &*x / &g;
        if first_neg {
            *x = -&*x;
        }
    }
    [n[0].clone(), n[1].clone(), n[2].clone(), n[3].clone()]
}

impl fmt::Display for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.action_entries();
        write!(f, "(({a}, {b}), ({c}, {d})){}", self.orientation.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum XyClass {
    IdClass,
    ZetaClass,
}

impl fmt::Display for XyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            XyClass::IdClass => "IdClass",
            XyClass::ZetaClass => "ZetaClass",
        })
    }
}

/// Class under f ~ k∘f∘g with k ∈ G_X, g ∈ G_Y.
pub fn class_xy(f: &Moebius) -> XyClass {
    if f.m[2].is_zero() || f.m[3].is_zero() {
        XyClass::IdClass
    } else {
        XyClass::ZetaClass
    }
}

/// Representative under f ≈ g₁∘f∘g₂ with g₁, g₂ ∈ G_Y.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CanonicalRep {
    Id,
    Eta,
    M(BigRational),
    EtaM(BigRational),
}

impl CanonicalRep {
    fn rank(&self) -> u8 {
        match self {
            CanonicalRep::Id => 0,
            CanonicalRep::Eta => 1,
            CanonicalRep::M(_) => 2,
            CanonicalRep::EtaM(_) => 3,
        }
    }

    pub fn s(&self) -> Option<&BigRational> {
        match self {
            CanonicalRep::M(s) | CanonicalRep::EtaM(s) => Some(s),
            _ => None,
        }
    }

    /// The element id, η, m_s or η∘m_s.
    pub fn element(&self) -> Moebius {
        match self {
            CanonicalRep::Id => Moebius::identity(),
            CanonicalRep::Eta => Moebius::eta(),
            CanonicalRep::M(s) => Moebius::m(s),
            CanonicalRep::EtaM(s) => Moebius::eta().compose(&Moebius::m(s)),
        }
    }
}

impl Ord for CanonicalRep {
    fn cmp(&self, o: &Self) -> Ordering {
        self.rank().cmp(&o.rank()).then_with(|| self.s().cmp(&o.s()))
    }
}

impl PartialOrd for CanonicalRep {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for CanonicalRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalRep::Id => write!(f, "Id"),
            CanonicalRep::Eta => write!(f, "Eta"),
            CanonicalRep::M(s) => write!(f, "M({s})"),
            CanonicalRep::EtaM(s) => write!(f, "EtaM({s})"),
        }
    }
}

fn canonical_plus(f: &Moebius) -> BigRational {
    debug_assert!(f.orientation == Orientation::Plus && !f.in_gy());
    let [a, b, c, d] = &f.m;
    if c.is_zero() || d.is_zero() {
        return canonical_plus(&Moebius::xi().compose(f));
    }
    let det = f.det();
    let s0 = if (c * d).is_positive() {
        BigRational::new(-(b * c), det)
    } else {
        BigRational::new(a * d, det)
    };
    if s0.is_negative() {
        q(1) - s0
    } else {
        s0
    }
}

pub fn canonical_yy(f: &Moebius) -> CanonicalRep {
    if f.in_gy() {
        return CanonicalRep::Id;
    }
    match f.orientation {
        Orientation::Plus => CanonicalRep::M(canonical_plus(f)),
        Orientation::Minus => {
            let g = Moebius::eta().compose(f);
            if g.in_gy() {
                CanonicalRep::Eta
            } else {
                CanonicalRep::EtaM(canonical_plus(&g))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum PairKind {
    A(XyClass),
    B(CanonicalRep),
}

impl Serialize for CanonicalRep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Stabilizer {
    FullD,
    Trivial,
    FullGY,
    /// {id, g} with g(z) = −μ²/z conjugated into place; μ² rational.
    OrderTwo { mu_sq: BigRational },
}

impl fmt::Display for Stabilizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stabilizer::FullD => write!(f, "FullD"),
            Stabilizer::Trivial => write!(f, "Trivial"),
            Stabilizer::FullGY => write!(f, "FullGY"),
            Stabilizer::OrderTwo { mu_sq } => write!(f, "OrderTwo(mu^2 = {mu_sq})"),
        }
    }
}

pub fn stabilizer(kind: &PairKind) -> Stabilizer {
    match kind {
        PairKind::A(XyClass::IdClass) => Stabilizer::FullD,
        PairKind::A(XyClass::ZetaClass) => Stabilizer::Trivial,
        PairKind::B(CanonicalRep::Id | CanonicalRep::Eta) => Stabilizer::FullGY,
        PairKind::B(CanonicalRep::M(s) | CanonicalRep::EtaM(s)) => {
            if s.is_positive() && s < &q(1) {
                Stabilizer::OrderTwo { mu_sq: (q(1) - s) / s }
            } else {
                Stabilizer::Trivial
            }
        }
    }
}

/// g(z) = −μ²/z, i.e. ((0, μ), (−1/μ, 0)) up to scale.
pub fn order_two_element(mu_sq: &BigRational) -> Moebius {
    Moebius::new([q(0), mu_sq.clone(), q(-1), q(0)], Orientation::Plus).expect("μ² > 0")
}

/// Checks that g = ((0, μ), (−1/μ, 0)) satisfies m_s∘g∘m_s⁻¹ ∈ G_Y.
pub fn verify_order_two(s: &BigRational) -> bool {
    match stabilizer(&PairKind::B(CanonicalRep::M(s.clone()))) {
        Stabilizer::OrderTwo { mu_sq } => {
            let g = order_two_element(&mu_sq);
            let m = Moebius::m(s);
            let conj = m.compose(&g).compose(&m.inverse());
            g.in_gy() && conj.in_gy() && g.compose(&g) == Moebius::identity()
        }
        _ => false,
    }
}
