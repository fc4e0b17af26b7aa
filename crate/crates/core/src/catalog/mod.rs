//! Closed forms for the explicit surfaces: immersions, metrics, angle and
//! height functions.

mod screw;

pub use screw::{ScrewBranch, ScrewConstants, ScrewParams, ScrewProfile, SurfaceType};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ambient::AmbientSpace;
use crate::diffgeo::{Dependence, DerivativeMode, MetricField, MetricJet, ScalarField, ScalarJet, SurfaceData};
use crate::error::{domain, param, Result};
use crate::linalg::{Mat2, Vec2, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ImmersionSpec {
    VerticalCylinder { c: f64, k: f64 },
    ArlSurface { h: f64 },
    HelicoidH2R { h: f64 },
    ParabolicPsl2 { tau: f64 },
    ScrewMotionPsl2 { h: f64, tau: f64, eps: f64 },
    CurveProduct { k1: f64, k2: f64 },
}

fn check_h(h: f64) -> Result<()> {
    if !(h != 0.0 && 4.0 * h * h < 1.0) {
        return param(format!("need 0 < 4H^2 < 1, got H = {h}"));
    }
    Ok(())
}

impl ImmersionSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::VerticalCylinder { c, k } => {
                if c == 0.0 || !c.is_finite() || !k.is_finite() {
                    return param("cylinder needs finite k and c != 0");
                }
                Ok(())
            }
            Self::ArlSurface { h } | Self::HelicoidH2R { h } => check_h(h),
            Self::ParabolicPsl2 { tau } => {
                if tau == 0.0 || !tau.is_finite() {
                    return param("parabolic surface needs tau != 0");
                }
                Ok(())
            }
            Self::ScrewMotionPsl2 { h, tau, eps } => ScrewParams::new(h, tau, eps).map(|_| ()),
            Self::CurveProduct { k1, k2 } => {
                if k1 == 0.0 && k2 == 0.0 {
                    return param("curve product needs (k1, k2) != (0, 0)");
                }
                Ok(())
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::VerticalCylinder { .. } => "cylinder",
            Self::ArlSurface { .. } => "arl",
            Self::HelicoidH2R { .. } => "helicoid",
            Self::ParabolicPsl2 { .. } => "parabolic",
            Self::ScrewMotionPsl2 { .. } => "screw",
            Self::CurveProduct { .. } => "curve-product",
        }
    }

    /// Mean curvature of the surface as a constant.
    pub fn mean_curvature(&self) -> f64 {
        match *self {
            Self::VerticalCylinder { k, .. } => k.abs() / 2.0,
            Self::ArlSurface { h } | Self::HelicoidH2R { h } | Self::ScrewMotionPsl2 { h, .. } => h,
            Self::ParabolicPsl2 { .. } => 0.0,
            Self::CurveProduct { k1, k2 } => (k1 * k1 + k2 * k2).sqrt() / 2.0,
        }
    }

    /// Intrinsic curvature of the surface as a constant.
    pub fn gauss_curvature(&self) -> f64 {
        match *self {
            Self::VerticalCylinder { .. } | Self::CurveProduct { .. } => 0.0,
            Self::ArlSurface { h } | Self::HelicoidH2R { h } | Self::ScrewMotionPsl2 { h, .. } => 4.0 * h * h - 1.0,
            Self::ParabolicPsl2 { .. } => -1.0,
        }
    }

    /// The model the immersion is written in.
    pub fn ambient(&self) -> Result<AmbientSpace> {
        self.validate()?;
        match *self {
            Self::VerticalCylinder { c, .. } => AmbientSpace::product_disk(c),
            Self::HelicoidH2R { .. } | Self::ArlSurface { .. } => AmbientSpace::product_disk(-1.0),
            Self::ParabolicPsl2 { tau } => AmbientSpace::ekt_half_plane(tau),
            Self::ScrewMotionPsl2 { tau, .. } => AmbientSpace::ekt_disk(tau),
            Self::CurveProduct { .. } => param("a curve product lives in a four-dimensional product"),
        }
    }

    /// Point where the normal is oriented so that ν ≥ 0 (or H ≥ 0 when ν = 0 there).
    pub fn reference_point(&self) -> Vec2 {
        match self {
            Self::HelicoidH2R { .. } | Self::ScrewMotionPsl2 { .. } => [1.0, 0.0],
            Self::ParabolicPsl2 { .. } => [0.0, 0.5],
            _ => [0.0, 0.0],
        }
    }

    pub fn immersion(&self, p: Vec2) -> Result<Vec3> {
        self.validate()?;
        let x = match *self {
            Self::HelicoidH2R { h } => helicoid_immersion(h, p[0], p[1])?,
            Self::ParabolicPsl2 { tau } => parabolic_immersion(tau, p[0], p[1])?,
            Self::ScrewMotionPsl2 { h, tau, eps } => ScrewParams::new(h, tau, eps)?.immersion(p[0], p[1]),
            Self::VerticalCylinder { c, k } => cylinder_immersion(c, k, p[0], p[1])?,
            Self::ArlSurface { .. } => return param("no closed-form immersion is available for the ARL surface"),
            Self::CurveProduct { .. } => return param("a curve product is not a surface in a 3-manifold"),
        };
        if !x.iter().all(|v| v.is_finite()) {
            return domain(format!("immersion overflows at {p:?}"));
        }
        Ok(x)
    }

    /// Closed-form first fundamental form in the immersion's coordinates, if known.
    pub fn closed_metric(&self, p: Vec2) -> Result<Option<Mat2>> {
        Ok(match *self {
            Self::HelicoidH2R { h } => {
                let cf = helicoid_closed_forms(h, p[0], p[1])?;
                Some([[cf.e, cf.f], [cf.f, cf.g]])
            }
            Self::ParabolicPsl2 { tau } => {
                let cf = parabolic_closed_forms(tau, p[0], p[1])?;
                Some([[cf.e, cf.f], [cf.f, cf.g]])
            }
            Self::ScrewMotionPsl2 { h, tau, eps } => {
                let (e, f, g) = ScrewParams::new(h, tau, eps)?.metric_coeffs(p[0]);
                Some([[e, f], [f, g]])
            }
            _ => None,
        })
    }
}

/// First fundamental form together with angle and height at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub nu: f64,
    pub height: f64,
}

fn sqrt_neg_k(h: f64) -> f64 {
    (1.0 - 4.0 * h * h).sqrt()
}

fn helicoid_arctan(h: f64, a: f64, sigma: f64) -> f64 {
    let k = -a * a;
    (((2.0 * a * sigma).exp() + 2.0 * k + 1.0) / (4.0 * h * a)).atan()
}

pub fn helicoid_immersion(h: f64, sigma: f64, tau: f64) -> Result<Vec3> {
    check_h(h)?;
    let a = sqrt_neg_k(h);
    let rho = ((a * sigma).cosh() / a).acosh();
    let at = helicoid_arctan(h, a, sigma);
    let lam = 2.0 * h * sigma + at;
    let phi = a * tau - at;
    let r = (rho / 2.0).tanh();
    if !rho.is_finite() || !(r < 1.0) {
        return domain(format!("helicoid leaves the disk at sigma = {sigma}"));
    }
    Ok([r * phi.cos(), r * phi.sin(), lam + phi])
}

pub fn helicoid_closed_forms(h: f64, sigma: f64, tau: f64) -> Result<ClosedForms> {
    check_h(h)?;
    let a = sqrt_neg_k(h);
    Ok(ClosedForms {
        e: 1.0,
        f: 0.0,
        g: (a * sigma).cosh().powi(2),
        nu: a * (a * sigma).tanh(),
        height: 2.0 * h * sigma + a * tau,
    })
}

/// Conformal factor λ with ds² = λ|dz|², angle and height at z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalData {
    pub factor: f64,
    pub nu: f64,
    pub height: f64,
}

fn conformal_factor(k: f64, z: Complex64) -> f64 {
    // 4/(K(z−z̄)²) with z−z̄ = 2i·Im z
    4.0 / (k * -(4.0 * z.im * z.im))
}

/// The diffeomorphism (σ, τ) ↦ z of the helicoid onto the upper half-plane.
pub fn helicoid_to_halfplane(h: f64, sigma: f64, tau: f64) -> Result<Complex64> {
    check_h(h)?;
    let a = sqrt_neg_k(h);
    let s = (a * sigma).cosh();
    Ok((-a * tau).exp() * Complex64::new((a * sigma).tanh(), 1.0 / s))
}

pub fn helicoid_conformal(h: f64, z: Complex64) -> Result<ConformalData> {
    check_h(h)?;
    if !(z.im > 0.0) {
        return domain(format!("{z} is not in the upper half-plane"));
    }
    let a = sqrt_neg_k(h);
    let k = -a * a;
    let r = z.norm();
    Ok(ConformalData {
        factor: conformal_factor(k, z),
        nu: a / 2.0 * (2.0 * z.re) / r,
        // i(z+z̄)/(z−z̄) = Re z / Im z
        height: 2.0 * h / a * (z.re / z.im).asinh() - r.ln(),
    })
}

pub fn arl_conformal(h: f64, z: Complex64) -> Result<ConformalData> {
    check_h(h)?;
    if !(z.im > 0.0) {
        return domain(format!("{z} is not in the upper half-plane"));
    }
    let a = sqrt_neg_k(h);
    let k = -a * a;
    Ok(ConformalData {
        factor: conformal_factor(k, z),
        nu: ((4.0 * h * h - 1.0) / -1.0).sqrt(),
        // (√−K / 2i)(z − z̄) = √−K · Im z
        height: -2.0 * h / a * (a * z.im).ln(),
    })
}

pub fn parabolic_immersion(tau: f64, x: f64, y: f64) -> Result<Vec3> {
    if !(y > 0.0 && y < 1.0) {
        return domain(format!("parabolic surface needs 0 < y < 1, got {y}"));
    }
    if tau == 0.0 {
        return param("parabolic surface needs tau != 0");
    }
    Ok([x, y, (4.0 * tau * tau + 1.0).sqrt() * y.asin()])
}

/// E, F, G and ν of the parabolic minimal surface. F is the coefficient in
/// E dx² + 2F dx dy + G dy².
pub fn parabolic_closed_forms(tau: f64, _x: f64, y: f64) -> Result<ClosedForms> {
    if !(y > 0.0 && y < 1.0) {
        return domain(format!("parabolic surface needs 0 < y < 1, got {y}"));
    }
    if tau == 0.0 {
        return param("parabolic surface needs tau != 0");
    }
    let t2 = 4.0 * tau * tau + 1.0;
    let s = (1.0 - y * y).sqrt();
    Ok(ClosedForms {
        e: t2 / (y * y),
        f: -2.0 * tau * t2.sqrt() / (y * s),
        g: (4.0 * tau * tau * y * y + 1.0) / (y * y * (1.0 - y * y)),
        nu: s / t2.sqrt(),
        height: t2.sqrt() * y.asin(),
    })
}

/// Euclidean centre offset and radius of a circle of geodesic curvature |k|
/// in the disk model of curvature c. The circle is centred at (d, 0).
pub fn cylinder_circle(c: f64, k: f64) -> Result<(f64, f64)> {
    if c == 0.0 {
        return param("cylinder needs c != 0");
    }
    let k = k.abs();
    if c > 0.0 {
        return Ok((0.0, ((k * k + c).sqrt() - k) / c));
    }
    let m = -c;
    let s = m.sqrt();
    if k > s {
        Ok((0.0, (k - (k * k - m).sqrt()) / m))
    } else if k == s {
        let r = 1.0 / (2.0 * s);
        Ok((r, r))
    } else {
        Ok((((2.0 - 2.0 * k / s) / m).sqrt(), 1.0 / s))
    }
}

pub fn cylinder_immersion(c: f64, k: f64, s: f64, t: f64) -> Result<Vec3> {
    let (d, r) = cylinder_circle(c, k)?;
    let p = [d - r * s.cos(), -r * s.sin(), t];
    if !(1.0 + c * (p[0] * p[0] + p[1] * p[1]) > 0.0) {
        return domain(format!("cylinder parameter s = {s} leaves the model"));
    }
    Ok(p)
}

/// Cylinder in arclength coordinates (s, t): flat metric, ν = 0, h = t.
pub fn cylinder_eval(c: f64, k: f64, p: Vec2) -> Result<(Mat2, f64, f64)> {
    ImmersionSpec::VerticalCylinder { c, k }.validate()?;
    Ok(([[1.0, 0.0], [0.0, 1.0]], 0.0, p[1]))
}

/// Product of two unit-speed curves: flat metric and |H| = √(k₁²+k₂²)/2.
pub fn curveproduct_eval(k1: f64, k2: f64, _p: Vec2) -> Result<(Mat2, f64)> {
    let spec = ImmersionSpec::CurveProduct { k1, k2 };
    spec.validate()?;
    Ok(([[1.0, 0.0], [0.0, 1.0]], spec.mean_curvature()))
}

fn sech2(x: f64) -> f64 {
    1.0 / x.cosh().powi(2)
}

/// Intrinsic data of the helicoid in (σ, τ).
pub fn helicoid_data(h: f64) -> Result<SurfaceData> {
    check_h(h)?;
    let a = sqrt_neg_k(h);
    let metric = MetricField::new(move |p: Vec2| Ok([[1.0, 0.0], [0.0, (a * p[0]).cosh().powi(2)]]))
        .with_jet(move |p: Vec2| {
            let x = a * p[0];
            let dg = a * (2.0 * x).sinh();
            Ok(MetricJet { g: [[1.0, 0.0], [0.0, x.cosh().powi(2)]], dg: [[[0.0, 0.0], [0.0, dg]], [[0.0; 2]; 2]] })
        })
        .with_dependence(Dependence::OnlyU);
    let nu = ScalarField::new(move |p: Vec2| Ok(a * (a * p[0]).tanh())).with_jet(move |p: Vec2| {
        let x = a * p[0];
        let s2 = sech2(x);
        Ok(ScalarJet {
            value: a * x.tanh(),
            grad: [a * a * s2, 0.0],
            hess: [[-2.0 * a * a * a * s2 * x.tanh(), 0.0], [0.0, 0.0]],
        })
    });
    let height = ScalarField::new(move |p: Vec2| Ok(2.0 * h * p[0] + a * p[1]))
        .with_jet(move |p: Vec2| Ok(ScalarJet { value: 2.0 * h * p[0] + a * p[1], grad: [2.0 * h, a], hess: [[0.0; 2]; 2] }));
    Ok(SurfaceData {
        name: "helicoid".into(),
        metric,
        nu,
        height,
        mean_curvature: h,
        gauss_curvature: -a * a,
        c: -1.0,
        mode: DerivativeMode::ClosedForm,
    })
}

fn require_upper(p: Vec2) -> Result<()> {
    if !(p[1] > 0.0) {
        return domain(format!("{p:?} is not in the upper half-plane"));
    }
    Ok(())
}

/// Intrinsic data of the ARL surface in half-plane coordinates z = x + iy.
pub fn arl_data(h: f64) -> Result<SurfaceData> {
    check_h(h)?;
    let a = sqrt_neg_k(h);
    let metric = MetricField::new(move |p: Vec2| {
        require_upper(p)?;
        let l = 1.0 / (a * a * p[1] * p[1]);
        Ok([[l, 0.0], [0.0, l]])
    })
    .with_jet(move |p: Vec2| {
        require_upper(p)?;
        let l = 1.0 / (a * a * p[1] * p[1]);
        let ly = -2.0 * l / p[1];
        Ok(MetricJet { g: [[l, 0.0], [0.0, l]], dg: [[[0.0; 2]; 2], [[ly, 0.0], [0.0, ly]]] })
    })
    .with_dependence(Dependence::OnlyV);
    let nu = ScalarField::constant(a);
    let hc = -2.0 * h / a;
    let height = ScalarField::new(move |p: Vec2| {
        require_upper(p)?;
        Ok(hc * (a * p[1]).ln())
    })
    .with_jet(move |p: Vec2| {
        require_upper(p)?;
        let y = p[1];
        Ok(ScalarJet { value: hc * (a * y).ln(), grad: [0.0, hc / y], hess: [[0.0, 0.0], [0.0, -hc / (y * y)]] })
    });
    Ok(SurfaceData {
        name: "arl".into(),
        metric,
        nu,
        height,
        mean_curvature: h,
        gauss_curvature: -a * a,
        c: -1.0,
        mode: DerivativeMode::ClosedForm,
    })
}

/// Vertical cylinder in arclength coordinates (s, t).
pub fn cylinder_data(c: f64, k: f64) -> Result<SurfaceData> {
    ImmersionSpec::VerticalCylinder { c, k }.validate()?;
    let metric = MetricField::new(|_| Ok([[1.0, 0.0], [0.0, 1.0]]))
        .with_jet(|_| Ok(MetricJet { g: [[1.0, 0.0], [0.0, 1.0]], dg: [[[0.0; 2]; 2]; 2] }));
    let height = ScalarField::new(|p: Vec2| Ok(p[1]))
        .with_jet(|p: Vec2| Ok(ScalarJet { value: p[1], grad: [0.0, 1.0], hess: [[0.0; 2]; 2] }));
    Ok(SurfaceData {
        name: "cylinder".into(),
        metric,
        nu: ScalarField::constant(0.0),
        height,
        mean_curvature: k.abs() / 2.0,
        gauss_curvature: 0.0,
        c,
        mode: DerivativeMode::ClosedForm,
    })
}

/// Horizontal slice M²(c)×{t0} in disk coordinates.
pub fn slice_data(c: f64, t0: f64) -> Result<SurfaceData> {
    if c == 0.0 {
        return param("slice needs c != 0");
    }
    let lam2 = move |p: Vec2| -> Result<f64> {
        let d = 1.0 + c * (p[0] * p[0] + p[1] * p[1]);
        if !(d > 0.0) {
            return domain(format!("{p:?} outside the disk model"));
        }
        Ok((2.0 / d).powi(2))
    };
    let metric = MetricField::new(move |p: Vec2| {
        let l = lam2(p)?;
        Ok([[l, 0.0], [0.0, l]])
    });
    Ok(SurfaceData {
        name: "slice".into(),
        metric,
        nu: ScalarField::constant(1.0),
        height: ScalarField::constant(t0),
        mean_curvature: 0.0,
        gauss_curvature: c,
        c,
        mode: DerivativeMode::ClosedForm,
    })
}

/// Closed-form first fundamental form of an immersion as a metric field.
pub fn closed_metric_field(spec: ImmersionSpec) -> Result<MetricField> {
    spec.validate()?;
    let dep = match spec {
        ImmersionSpec::HelicoidH2R { .. } | ImmersionSpec::ScrewMotionPsl2 { .. } => Dependence::OnlyU,
        ImmersionSpec::ParabolicPsl2 { .. } => Dependence::OnlyV,
        _ => Dependence::General,
    };
    if spec.closed_metric([1.0, 0.5])?.is_none() {
        return param(format!("no closed-form metric for {}", spec.name()));
    }
    Ok(MetricField::new(move |p| spec.closed_metric(p).map(|m| m.expect("checked above"))).with_dependence(dep))
}
