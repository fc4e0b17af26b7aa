//! Exact Laurent polynomials in (ν, H, K, c) over ℚ, and the coefficient
//! identities behind the degree-18 argument for constant Gauss curvature.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{CmcError, Result};

pub const NU: usize = 0;
pub const H: usize = 1;
pub const K: usize = 2;
pub const C: usize = 3;
pub const MAX_EXP: i32 = 64;
const NAMES: [&str; 4] = ["ν", "H", "K", "c"];

pub type Exp = [i32; 4];

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPoly {
    terms: BTreeMap<Exp, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl RationalPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(q: BigRational) -> Self {
        Self::monomial(q, [0; 4])
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n, 1))
    }

    pub fn monomial(q: BigRational, e: Exp) -> Self {
        let mut p = Self::zero();
        p.add_term(e, q);
        p
    }

    pub fn var(v: usize) -> Self {
        let mut e = [0; 4];
        e[v] = 1;
        Self::monomial(BigRational::one(), e)
    }

    pub fn nu() -> Self {
        Self::var(NU)
    }
    pub fn h() -> Self {
        Self::var(H)
    }
    pub fn k() -> Self {
        Self::var(K)
    }
    pub fn c() -> Self {
        Self::var(C)
    }

    /// c⁻¹, needed for W/c.
    pub fn c_inv() -> Self {
        Self::monomial(BigRational::one(), [0, 0, 0, -1])
    }

    fn add_term(&mut self, e: Exp, q: BigRational) {
        assert!(e.iter().all(|x| x.abs() <= MAX_EXP), "exponent out of range: {e:?}");
        if q.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += q;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, v * q);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::int(1), |acc, _| &acc * self)
    }

    /// Coefficient of v^n, as a polynomial in the remaining variables.
    pub fn coefficient_in(&self, v: usize, n: i32) -> Self {
        let mut out = Self::zero();
        for (e, q) in &self.terms {
            if e[v] == n {
                let mut f = *e;
                f[v] = 0;
                out.add_term(f, q.clone());
            }
        }
        out
    }

    pub fn degree_in(&self, v: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[v]).max()
    }

    pub fn is_even_in(&self, v: usize) -> bool {
        self.terms.keys().all(|e| e[v] % 2 == 0)
    }

    /// Replaces the variable `v` by the polynomial `by` (non-negative powers only).
    pub fn substitute(&self, v: usize, by: &Self) -> Result<Self> {
        let mut powers: BTreeMap<i32, Self> = BTreeMap::new();
        let mut out = Self::zero();
        for (e, q) in &self.terms {
            if e[v] < 0 {
                return Err(CmcError::Shape(format!("cannot substitute into negative power of {}", NAMES[v])));
            }
            let pw = powers.entry(e[v]).or_insert_with(|| by.pow(e[v] as u32)).clone();
            let mut f = *e;
            f[v] = 0;
            out = &out + &(&Self::monomial(q.clone(), f) * &pw);
        }
        Ok(out)
    }

    pub fn eval_exact(&self, x: &[BigRational; 4]) -> BigRational {
        let mut cache: [BTreeMap<i32, BigRational>; 4] = Default::default();
        let mut acc = BigRational::zero();
        for (e, q) in &self.terms {
            let mut t = q.clone();
            for i in 0..4 {
                if e[i] != 0 {
                    let pw = cache[i].entry(e[i]).or_insert_with(|| {
                        let b = if e[i] < 0 { x[i].recip() } else { x[i].clone() };
                        num_traits::pow(b, e[i].unsigned_abs() as usize)
                    });
                    t *= &*pw;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, x: [f64; 4]) -> f64 {
        self.terms
            .iter()
            .map(|(e, q)| q.to_f64().unwrap_or(f64::NAN) * (0..4).map(|i| x[i].powi(e[i])).product::<f64>())
            .sum()
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, o: &RationalPoly) -> RationalPoly {
        let mut out = self.clone();
        for (e, q) in &o.terms {
            out.add_term(*e, q.clone());
        }
        out
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, o: &RationalPoly) -> RationalPoly {
        self + &(-o)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly { terms: self.terms.iter().map(|(e, q)| (*e, -q)).collect() }
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, o: &RationalPoly) -> RationalPoly {
        let mut out = RationalPoly::zero();
        for (a, p) in &self.terms {
            for (b, q) in &o.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]], p * q);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for RationalPoly {
            type Output = RationalPoly;
            fn $f(self, o: RationalPoly) -> RationalPoly { (&self).$f(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        -&self
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first, for readability
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|a, b| b.0.cmp(a.0));
        for (i, (e, q)) in items.into_iter().enumerate() {
            let neg = q.is_negative();
            let mag = q.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono: Vec<String> = (0..4)
                .filter(|&v| e[v] != 0)
                .map(|v| if e[v] == 1 { NAMES[v].to_string() } else { format!("{}^{}", NAMES[v], e[v]) })
                .collect();
            if mono.is_empty() || !mag.is_one() {
                write!(f, "{mag}")?;
                if !mono.is_empty() {
                    write!(f, " ")?;
                }
            }
            write!(f, "{}", mono.join(" "))?;
        }
        Ok(())
    }
}

fn p(n: i64) -> RationalPoly {
    RationalPoly::int(n)
}

fn nu2() -> RationalPoly {
    RationalPoly::nu().pow(2)
}

fn h2() -> RationalPoly {
    RationalPoly::h().pow(2)
}

/// r = 3(H² − K − cν²)
pub fn poly_r() -> RationalPoly {
    let (k, c) = (RationalPoly::k(), RationalPoly::c());
    p(3) * (h2() - k - c * nu2())
}

/// W = 4H²cν²(H²−K−2c+3cν²) − 4(H²−K+cν²)(K−c−H²)(K+2cν²)
pub fn poly_w() -> RationalPoly {
    let (k, c) = (RationalPoly::k(), RationalPoly::c());
    let cn = &c * &nu2();
    let a = p(4) * h2() * cn.clone() * (h2() - k.clone() - p(2) * c.clone() + p(3) * cn.clone());
    let b = p(4) * (h2() - k.clone() + cn.clone()) * (k.clone() - c.clone() - h2()) * (k + p(2) * cn);
    a - b
}

/// The bracket multiplying r in p; equals q when ∇ν·∇h is eliminated.
fn q_bracket() -> RationalPoly {
    let (k, c) = (RationalPoly::k(), RationalPoly::c());
    let one_m = p(1) - nu2();
    p(4) * h2() * (h2() - k + c.clone() * nu2())
        + p(2) * h2() * c.clone() * one_m.clone()
        + RationalPoly::constant(rat(1, 4)) * c.pow(2) * one_m.pow(2)
}

/// p = −W + r·(4H²(H²−K+cν²) + 2H²c(1−ν²) + (c²/4)(1−ν²)²)
pub fn poly_p() -> RationalPoly {
    -poly_w() + poly_r() * q_bracket()
}

/// νΔν = (2K − 4H² − c)ν² − cν⁴
pub fn poly_nu_delta_nu() -> RationalPoly {
    let (k, c) = (RationalPoly::k(), RationalPoly::c());
    (p(2) * k - p(4) * h2() - c.clone()) * nu2() - c * nu2().pow(2)
}

/// r‖∇ν‖² = r(−K + cν²)(1 − ν²) + W/c
pub fn poly_r_gradnu_sq() -> RationalPoly {
    let (k, c) = (RationalPoly::k(), RationalPoly::c());
    poly_r() * (c * nu2() - k) * (p(1) - nu2()) + poly_w() * RationalPoly::c_inv()
}

/// Checks f is even of ν-degree ≤ 6 and returns (f′/ν, f″).
fn even_derivatives(f: &RationalPoly) -> Result<(RationalPoly, RationalPoly)> {
    let mut d1 = RationalPoly::zero();
    let mut d2 = RationalPoly::zero();
    for (e, q) in f.terms() {
        let n = e[NU];
        if n < 0 || n % 2 != 0 || n > 6 {
            return Err(CmcError::Shape(format!("expected even polynomial of ν-degree ≤ 6, found ν^{n}")));
        }
        if n == 0 {
            continue;
        }
        let nn = BigRational::from_integer(BigInt::from(n));
        let mut a = *e;
        a[NU] = n - 2;
        d1 = &d1 + &RationalPoly::monomial(q * &nn, a);
        d2 = &d2 + &RationalPoly::monomial(q * &nn * BigRational::from_integer(BigInt::from(n - 1)), a);
    }
    Ok((d1, d2))
}

/// r‖∇f‖² = ν²(f′/ν)²·(r‖∇ν‖²) for f even in ν.
pub fn poly_r_grad_sq_of(f: &RationalPoly) -> Result<RationalPoly> {
    let (d1, _) = even_derivatives(f)?;
    Ok(nu2() * d1.pow(2) * poly_r_gradnu_sq())
}

/// rΔf = (f′/ν)·r·(νΔν) + f″·(r‖∇ν‖²) for f even in ν.
pub fn poly_r_delta_of(f: &RationalPoly) -> Result<RationalPoly> {
    let (d1, d2) = even_derivatives(f)?;
    Ok(d1 * poly_r() * poly_nu_delta_nu() + d2 * poly_r_gradnu_sq())
}

/// 4Kp²r³ − pr²(rΔp) + r²(r‖∇p‖²) − p²(r‖∇r‖²) + p²r(rΔr) for given p.
pub fn build_m6_from(pp: &RationalPoly) -> Result<RationalPoly> {
    let r = poly_r();
    let k = RationalPoly::k();
    let p2 = pp.pow(2);
    let r2 = r.pow(2);
    Ok(p(4) * k * p2.clone() * r.pow(3) - pp.clone() * r2.clone() * poly_r_delta_of(pp)?
        + r2 * poly_r_grad_sq_of(pp)?
        - p2.clone() * poly_r_grad_sq_of(&r)?
        + p2 * r.clone() * poly_r_delta_of(&r)?)
}

pub fn build_m6() -> RationalPoly {
    build_m6_from(&poly_p()).expect("p is even of degree 6")
}

/// −486c⁹(4H² + c − K)
pub fn expected_m6_18() -> RationalPoly {
    let (k, c) = (RationalPoly::k(), RationalPoly::c());
    p(-486) * c.pow(9) * (p(4) * h2() + c - k)
}

/// Substitution K ↦ 4H² + c.
pub fn on_constant_k(f: &RationalPoly) -> Result<RationalPoly> {
    f.substitute(K, &(p(4) * h2() + RationalPoly::c()))
}

#[derive(Debug, Clone, Serialize)]
pub struct CoefficientCheck {
    pub name: String,
    pub expected: String,
    pub found: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub checks: Vec<CoefficientCheck>,
    /// Every even ν-coefficient of (M6), highest first.
    pub m6_coefficients: Vec<(i32, String)>,
    pub pass: bool,
}

impl LemmaReport {
    pub fn first_failure(&self) -> Option<&CoefficientCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

fn check(name: &str, expected: &RationalPoly, found: &RationalPoly) -> CoefficientCheck {
    CoefficientCheck {
        name: name.to_string(),
        expected: expected.to_string(),
        found: found.to_string(),
        pass: expected == found,
    }
}

/// Runs every coefficient check for a given p (the true one by default).
pub fn verify_lemma_with(pp: &RationalPoly) -> Result<LemmaReport> {
    let (k, c) = (RationalPoly::k(), RationalPoly::c());
    let r = poly_r();
    let rg = poly_r_gradnu_sq();
    let nd = poly_nu_delta_nu();
    let m6 = build_m6_from(pp)?;
    let m18 = m6.coefficient_in(NU, 18);
    let mut checks = vec![
        check("p_6", &(RationalPoly::constant(rat(-3, 4)) * c.pow(3)), &pp.coefficient_in(NU, 6)),
        check(
            "p_4",
            &(RationalPoly::constant(rat(-1, 4)) * c.pow(2) * (p(101) * h2() - p(29) * k.clone() + p(26) * c.clone())),
            &pp.coefficient_in(NU, 4),
        ),
        check("r_0", &(p(3) * (h2() - k.clone())), &r.coefficient_in(NU, 0)),
        check("r_2", &(p(-3) * c.clone()), &r.coefficient_in(NU, 2)),
        check("(nu Lap nu)_2", &(p(2) * k.clone() - p(4) * h2() - c.clone()), &nd.coefficient_in(NU, 2)),
        check("(nu Lap nu)_4", &(-c.clone()), &nd.coefficient_in(NU, 4)),
        check("(r|grad nu|^2)_4", &(c.clone() * (p(17) * h2() - p(8) * k + p(5) * c.clone())), &rg.coefficient_in(NU, 4)),
        check("(r|grad nu|^2)_6", &(-(c.clone() * r.coefficient_in(NU, 2))), &rg.coefficient_in(NU, 6)),
        check("(M6)_odd", &RationalPoly::zero(), &{
            let mut odd = RationalPoly::zero();
            for (e, q) in m6.terms() {
                if e[NU] % 2 != 0 {
                    odd = &odd + &RationalPoly::monomial(q.clone(), *e);
                }
            }
            odd
        }),
        check("(M6)_20", &RationalPoly::zero(), &m6.coefficient_in(NU, 20)),
        check("(M6)_18", &expected_m6_18(), &m18),
        check("(M6)_18 at K=4H^2+c", &RationalPoly::zero(), &on_constant_k(&m18)?),
    ];
    let too_high: RationalPoly = m6
        .terms()
        .filter(|(e, _)| e[NU] > 20)
        .fold(RationalPoly::zero(), |acc, (e, q)| &acc + &RationalPoly::monomial(q.clone(), *e));
    checks.push(check("(M6)_>20", &RationalPoly::zero(), &too_high));
    let top = m6.degree_in(NU).unwrap_or(0);
    let m6_coefficients = (0..=top.max(20)).rev().step_by(2).map(|n| (n, m6.coefficient_in(NU, n).to_string())).collect();
    let pass = checks.iter().all(|c| c.pass);
    Ok(LemmaReport { checks, m6_coefficients, pass })
}

pub fn verify_lemma() -> LemmaReport {
    verify_lemma_with(&poly_p()).expect("p is even of degree 6")
}
