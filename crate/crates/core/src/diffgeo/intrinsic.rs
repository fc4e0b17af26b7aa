//! Two-dimensional Riemannian metrics and scalar fields on a parameter
//! domain, with the intrinsic operators the compatibility checks need.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{CmcError, Result};
use crate::fd;
use crate::linalg::{det2, inv2, Mat2, Vec2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DerivativeMode {
    /// Use analytic jets when a field provides them.
    ClosedForm,
    /// Ignore analytic jets and difference the field values.
    FiniteDifference,
}

/// Which coordinates the metric coefficients depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dependence {
    General,
    OnlyU,
    OnlyV,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricJet {
    pub g: Mat2,
    /// `dg[k]` is ∂_k g.
    pub dg: [Mat2; 2],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarJet {
    pub value: f64,
    pub grad: Vec2,
    pub hess: Mat2,
}

type MetricFn = Arc<dyn Fn(Vec2) -> Result<Mat2> + Send + Sync>;
type MetricJetFn = Arc<dyn Fn(Vec2) -> Result<MetricJet> + Send + Sync>;
type ScalarFn = Arc<dyn Fn(Vec2) -> Result<f64> + Send + Sync>;
type ScalarJetFn = Arc<dyn Fn(Vec2) -> Result<ScalarJet> + Send + Sync>;

#[derive(Clone)]
pub struct MetricField {
    value: MetricFn,
    jet: Option<MetricJetFn>,
    dependence: Dependence,
}

impl fmt::Debug for MetricField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricField")
            .field("closed_form_jet", &self.jet.is_some())
            .field("dependence", &self.dependence)
            .finish()
    }
}

impl MetricField {
    pub fn new(value: impl Fn(Vec2) -> Result<Mat2> + Send + Sync + 'static) -> Self {
        Self { value: Arc::new(value), jet: None, dependence: Dependence::General }
    }

    pub fn with_jet(mut self, jet: impl Fn(Vec2) -> Result<MetricJet> + Send + Sync + 'static) -> Self {
        self.jet = Some(Arc::new(jet));
        self
    }

    pub fn with_dependence(mut self, d: Dependence) -> Self {
        self.dependence = d;
        self
    }

    pub fn dependence(&self) -> Dependence {
        self.dependence
    }

    pub fn has_jet(&self) -> bool {
        self.jet.is_some()
    }

    pub fn metric(&self, p: Vec2) -> Result<Mat2> {
        (self.value)(p)
    }

    pub fn jet(&self, p: Vec2, mode: DerivativeMode) -> Result<MetricJet> {
        match (&self.jet, mode) {
            (Some(j), DerivativeMode::ClosedForm) => j(p),
            _ => self.fd_jet(p, fd::FIRST_STEP),
        }
    }

    fn flat(&self, p: Vec2) -> Result<Vec<f64>> {
        let g = self.metric(p)?;
        Ok(vec![g[0][0], g[0][1], g[1][1]])
    }

    fn unflat(v: &[f64]) -> Mat2 {
        [[v[0], v[1]], [v[1], v[2]]]
    }

    pub fn fd_jet(&self, p: Vec2, base: f64) -> Result<MetricJet> {
        let g = self.metric(p)?;
        let du = fd::d1(|t| self.flat([t, p[1]]), p[0], fd::scaled_step(base, p[0]))?;
        let dv = fd::d1(|t| self.flat([p[0], t]), p[1], fd::scaled_step(base, p[1]))?;
        Ok(MetricJet { g, dg: [Self::unflat(&du), Self::unflat(&dv)] })
    }

    /// First and second partials of (E, F, G) by differencing the values.
    /// Returns `(d[k], dd[k][l])` with entries ordered E, F, G.
    pub fn coefficient_derivatives(&self, p: Vec2, base: f64) -> Result<([[f64; 3]; 2], [[[f64; 3]; 2]; 2])> {
        let hu = fd::scaled_step(base, p[0]);
        let hv = fd::scaled_step(base, p[1]);
        let fu = |t: f64| self.flat([t, p[1]]);
        let fv = |t: f64| self.flat([p[0], t]);
        let arr = |v: Vec<f64>| [v[0], v[1], v[2]];
        let du = arr(fd::d1(fu, p[0], hu)?);
        let dv = arr(fd::d1(fv, p[1], hv)?);
        let duu = arr(fd::d2(fu, p[0], hu)?);
        let dvv = arr(fd::d2(fv, p[1], hv)?);
        let duv = arr(fd::d_mixed(|a, b| self.flat([a, b]), p[0], p[1], hu, hv)?);
        Ok(([du, dv], [[duu, duv], [duv, dvv]]))
    }
}

#[derive(Clone)]
pub struct ScalarField {
    value: ScalarFn,
    jet: Option<ScalarJetFn>,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField").field("closed_form_jet", &self.jet.is_some()).finish()
    }
}

impl ScalarField {
    pub fn new(value: impl Fn(Vec2) -> Result<f64> + Send + Sync + 'static) -> Self {
        Self { value: Arc::new(value), jet: None }
    }

    pub fn with_jet(mut self, jet: impl Fn(Vec2) -> Result<ScalarJet> + Send + Sync + 'static) -> Self {
        self.jet = Some(Arc::new(jet));
        self
    }

    pub fn constant(v: f64) -> Self {
        Self::new(move |_| Ok(v)).with_jet(move |_| Ok(ScalarJet { value: v, grad: [0.0; 2], hess: [[0.0; 2]; 2] }))
    }

    pub fn value(&self, p: Vec2) -> Result<f64> {
        (self.value)(p)
    }

    pub fn jet(&self, p: Vec2, mode: DerivativeMode) -> Result<ScalarJet> {
        match (&self.jet, mode) {
            (Some(j), DerivativeMode::ClosedForm) => j(p),
            _ => {
                let (value, grad, hess) = fd::jet2(|q| self.value(q), p, fd::SECOND_STEP)?;
                Ok(ScalarJet { value, grad, hess })
            }
        }
    }

    /// Pointwise map of the values (derivatives are then differenced).
    pub fn map(&self, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        let v = self.value.clone();
        Self::new(move |p| v(p).map(&f))
    }
}

/// Christoffel symbols Γ^k_ij of a 2D metric, indexed `[k][i][j]`.
pub fn christoffels2(j: &MetricJet) -> Result<[[[f64; 2]; 2]; 2]> {
    let ginv = inv2(&j.g)?;
    let mut gam = [[[0.0; 2]; 2]; 2];
    for k in 0..2 {
        for a in 0..2 {
            for b in 0..2 {
                let mut s = 0.0;
                for l in 0..2 {
                    s += ginv[k][l] * (j.dg[a][b][l] + j.dg[b][a][l] - j.dg[l][a][b]);
                }
                gam[k][a][b] = 0.5 * s;
            }
        }
    }
    Ok(gam)
}

fn check_metric(g: &Mat2) -> Result<()> {
    let d = det2(g);
    if !(d > 1e-14) {
        return Err(CmcError::Conditioning(format!("metric determinant {d:e}")));
    }
    Ok(())
}

/// g^{ij} a_i b_j for covectors a, b.
pub fn co_inner(ginv: &Mat2, a: &Vec2, b: &Vec2) -> f64 {
    let mut s = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            s += ginv[i][j] * a[i] * b[j];
        }
    }
    s
}

/// Δf = g^{ij}(f_ij − Γ^k_ij f_k).
pub fn laplacian_from_jets(m: &MetricJet, f: &ScalarJet) -> Result<f64> {
    check_metric(&m.g)?;
    let ginv = inv2(&m.g)?;
    let gam = christoffels2(m)?;
    let mut s = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let corr = gam[0][i][j] * f.grad[0] + gam[1][i][j] * f.grad[1];
            s += ginv[i][j] * (f.hess[i][j] - corr);
        }
    }
    Ok(s)
}

pub fn intrinsic_gradient_sq(metric: &MetricField, f: &ScalarField, p: Vec2, mode: DerivativeMode) -> Result<f64> {
    intrinsic_inner(metric, f, f, p, mode)
}

pub fn intrinsic_inner(
    metric: &MetricField,
    f: &ScalarField,
    g: &ScalarField,
    p: Vec2,
    mode: DerivativeMode,
) -> Result<f64> {
    let m = metric.metric(p)?;
    check_metric(&m)?;
    let ginv = inv2(&m)?;
    let a = f.jet(p, mode)?.grad;
    let b = g.jet(p, mode)?.grad;
    Ok(co_inner(&ginv, &a, &b))
}

pub fn intrinsic_laplacian(metric: &MetricField, f: &ScalarField, p: Vec2, mode: DerivativeMode) -> Result<f64> {
    laplacian_from_jets(&metric.jet(p, mode)?, &f.jet(p, mode)?)
}

fn coeffs(g: &Mat2) -> (f64, f64, f64) {
    (g[0][0], g[0][1], g[1][1])
}

/// Brioschi's formula from E, F, G and their partials up to order two.
pub fn gauss_curvature_brioschi(metric: &MetricField, p: Vec2, step: f64) -> Result<f64> {
    let g = metric.metric(p)?;
    let (e, f, gg) = coeffs(&g);
    let w = e * gg - f * f;
    if !(w > 1e-14) {
        return Err(CmcError::Conditioning(format!("EG - F^2 = {w:e}")));
    }
    let (d, dd) = metric.coefficient_derivatives(p, step)?;
    let (eu, fu, gu) = (d[0][0], d[0][1], d[0][2]);
    let (ev, fv, gv) = (d[1][0], d[1][1], d[1][2]);
    let evv = dd[1][1][0];
    let guu = dd[0][0][2];
    let fuv = dd[0][1][1];
    let m1 = [[-0.5 * evv + fuv - 0.5 * guu, 0.5 * eu, fu - 0.5 * ev], [fv - 0.5 * gu, e, f], [0.5 * gv, f, gg]];
    let m2 = [[0.0, 0.5 * ev, 0.5 * gu], [0.5 * ev, e, f], [0.5 * gu, f, gg]];
    Ok((crate::linalg::det3(&m1) - crate::linalg::det3(&m2)) / (w * w))
}

/// Gauss curvature, using the one-variable reductions when the metric
/// declares them and Brioschi otherwise.
pub fn gauss_curvature(metric: &MetricField, p: Vec2, step: f64) -> Result<f64> {
    let g = metric.metric(p)?;
    let (e, f, gg) = coeffs(&g);
    let w = e * gg - f * f;
    if !(w > 1e-14) {
        return Err(CmcError::Conditioning(format!("EG - F^2 = {w:e}")));
    }
    match metric.dependence() {
        Dependence::General => gauss_curvature_brioschi(metric, p, step),
        Dependence::OnlyV => {
            let (d, dd) = metric.coefficient_derivatives(p, step)?;
            let (ev, fv, gv) = (d[1][0], d[1][1], d[1][2]);
            let evv = dd[1][1][0];
            let egv = ev * gg + e * gv;
            Ok((ev * egv - 2.0 * w * evv - 2.0 * f * ev * fv) / (4.0 * w * w))
        }
        Dependence::OnlyU => {
            let (d, dd) = metric.coefficient_derivatives(p, step)?;
            let (eu, fu, gu) = (d[0][0], d[0][1], d[0][2]);
            let guu = dd[0][0][2];
            let wu = eu * gg + e * gu - 2.0 * f * fu;
            Ok((0.5 * wu * gu - w * guu) / (2.0 * w * w))
        }
    }
}

/// Everything the compatibility checks need at one point of a surface.
#[derive(Debug, Clone, Copy)]
pub struct LocalData {
    pub metric: MetricJet,
    pub ginv: Mat2,
    pub nu: ScalarJet,
    pub height: ScalarJet,
    pub lap_nu: f64,
    pub lap_h: f64,
}

impl LocalData {
    pub fn grad_nu_sq(&self) -> f64 {
        co_inner(&self.ginv, &self.nu.grad, &self.nu.grad)
    }
    pub fn grad_h_sq(&self) -> f64 {
        co_inner(&self.ginv, &self.height.grad, &self.height.grad)
    }
    pub fn grad_nu_dot_h(&self) -> f64 {
        co_inner(&self.ginv, &self.nu.grad, &self.height.grad)
    }
    /// ‖∇ν + a∇h‖².
    pub fn combo_sq(&self, a: f64) -> f64 {
        let v = [self.nu.grad[0] + a * self.height.grad[0], self.nu.grad[1] + a * self.height.grad[1]];
        co_inner(&self.ginv, &v, &v)
    }
}

/// A surface described intrinsically: metric, angle ν, height h, and the
/// constants H, K, c of the system being checked.
#[derive(Debug, Clone)]
pub struct SurfaceData {
    pub name: String,
    pub metric: MetricField,
    pub nu: ScalarField,
    pub height: ScalarField,
    pub mean_curvature: f64,
    pub gauss_curvature: f64,
    pub c: f64,
    pub mode: DerivativeMode,
}

impl SurfaceData {
    pub fn with_mode(mut self, mode: DerivativeMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_mean_curvature(mut self, h: f64) -> Self {
        self.mean_curvature = h;
        self
    }

    /// The data of the same immersion composed with the sign changes
    /// (ν, h) ↦ (sν·ν, sh·h).
    pub fn with_signs(mut self, s_nu: f64, s_h: f64) -> Self {
        self.nu = signed(&self.nu, s_nu);
        self.height = signed(&self.height, s_h);
        self
    }

    pub fn local(&self, p: Vec2) -> Result<LocalData> {
        let metric = self.metric.jet(p, self.mode)?;
        check_metric(&metric.g)?;
        let ginv = inv2(&metric.g)?;
        let nu = self.nu.jet(p, self.mode)?;
        let height = self.height.jet(p, self.mode)?;
        let lap_nu = laplacian_from_jets(&metric, &nu)?;
        let lap_h = laplacian_from_jets(&metric, &height)?;
        Ok(LocalData { metric, ginv, nu, height, lap_nu, lap_h })
    }
}

fn signed(f: &ScalarField, s: f64) -> ScalarField {
    let v = f.value.clone();
    let mut out = ScalarField::new(move |p| v(p).map(|x| s * x));
    if let Some(j) = f.jet.clone() {
        out = out.with_jet(move |p| {
            j(p).map(|k| ScalarJet {
                value: s * k.value,
                grad: [s * k.grad[0], s * k.grad[1]],
                hess: [[s * k.hess[0][0], s * k.hess[0][1]], [s * k.hess[1][0], s * k.hess[1][1]]],
            })
        });
    }
    out
}
