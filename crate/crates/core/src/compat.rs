//! Residuals of the compatibility systems satisfied by CMC surfaces in
//! M²(c)×ℝ, and the sister correspondence with E(κ, τ).

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::ImmersionSpec;
use crate::diffgeo::{self, co_inner, laplacian_from_jets, DerivativeMode, LocalData, ScalarField, SurfaceData};
use crate::error::{param, CmcError, Result};
use crate::fd;
use crate::linalg::{apply2, det2, inv2, quad2, Mat2, Vec2};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub point: Vec2,
    pub equation: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub name: String,
    pub residuals: Vec<Residual>,
    pub max_abs: f64,
    pub tol: f64,
    pub pass: bool,
}

impl ResidualReport {
    pub fn new(name: impl Into<String>, tol: f64, residuals: Vec<Residual>) -> Self {
        let max_abs = residuals.iter().map(|r| r.value.abs()).fold(0.0, |a: f64, b| if b.is_nan() { f64::NAN } else { a.max(b) });
        Self { name: name.into(), residuals, max_abs, tol, pass: max_abs < tol }
    }

    /// Evaluates `f` at every point (in parallel) and keeps grid order.
    pub fn collect<F>(name: impl Into<String>, tol: f64, points: &[Vec2], f: F) -> Result<Self>
    where
        F: Fn(Vec2) -> Result<Vec<(&'static str, f64)>> + Sync,
    {
        let rows: Vec<Vec<Residual>> = points
            .par_iter()
            .map(|&p| {
                f(p).map(|v| v.into_iter().map(|(e, value)| Residual { point: p, equation: e.to_string(), value }).collect())
            })
            .collect::<Result<_>>()?;
        Ok(Self::new(name, tol, rows.into_iter().flatten().collect()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussCodazziPoint {
    /// Shape operator on coordinate vectors.
    pub s: Mat2,
    /// Tangential part of ∂t, coordinate components.
    pub t: Vec2,
    pub nu: f64,
    /// Gradient of ν as a vector, coordinate components.
    pub grad_nu: Vec2,
    pub metric: Mat2,
    pub k: f64,
    /// Base curvature κ (c for products).
    pub c: f64,
    /// Bundle curvature; zero for products.
    pub tau: f64,
}

/// Residuals of K = det S + τ² + (κ − 4τ²)ν², ∇ν + (S + τJ)T = 0 and
/// ‖T‖² + ν² = 1; for τ = 0 these are the product-space equations.
pub fn residual_c(gc: &GaussCodazziPoint) -> Result<[f64; 3]> {
    let st = apply2(&gc.s, &gc.t);
    let jt = apply2(&metric_rotation(&gc.metric)?, &gc.t);
    let v = [gc.grad_nu[0] + st[0] + gc.tau * jt[0], gc.grad_nu[1] + st[1] + gc.tau * jt[1]];
    let tau2 = gc.tau * gc.tau;
    Ok([
        gc.k - det2(&gc.s) - tau2 - (gc.c - 4.0 * tau2) * gc.nu * gc.nu,
        quad2(&gc.metric, &v, &v).sqrt(),
        quad2(&gc.metric, &gc.t, &gc.t) + gc.nu * gc.nu - 1.0,
    ])
}

/// Gauss–Codazzi data of a catalog immersion at `p`.
pub fn gauss_codazzi_point(spec: &ImmersionSpec, p: Vec2, step: f64) -> Result<GaussCodazziPoint> {
    let space = spec.ambient()?;
    let cv = diffgeo::curvatures(spec, &space, p, step)?;
    let dnu = fd::grad2(|q| diffgeo::angle_height(spec, &space, q, step).map(|x| x.0), p, fd::SECOND_STEP)?;
    let ginv = inv2(&cv.forms.first)?;
    Ok(GaussCodazziPoint {
        s: cv.forms.shape_operator()?,
        t: cv.vertical_tangent,
        nu: cv.nu,
        grad_nu: apply2(&ginv, &dnu),
        metric: cv.forms.first,
        k: spec.gauss_curvature(),
        c: space.kappa(),
        tau: space.tau(),
    })
}

/// Image of E(κ, τ) data under the sister correspondence: data in
/// M²(κ − 4τ²)×ℝ with mean curvature √(H² + τ²).
pub fn sister_point(gc: &GaussCodazziPoint) -> Result<GaussCodazziPoint> {
    if gc.tau == 0.0 {
        return param("sister data need τ ≠ 0");
    }
    let h = (gc.s[0][0] + gc.s[1][1]) / 2.0;
    let sp = sister_params(h, gc.tau);
    let (s, t) = sister_rotate_in(&gc.metric, &gc.s, &gc.t, sp.theta, h, sp.h_bar)?;
    Ok(GaussCodazziPoint { s, t, c: gc.c + sp.kappa_shift, tau: 0.0, ..*gc })
}

fn m_from_local(l: &LocalData, h: f64, k: f64, c: f64) -> [f64; 4] {
    let nu = l.nu.value;
    [
        l.combo_sq(h) - (h * h - k + c * nu * nu) * (1.0 - nu * nu),
        l.lap_nu - (2.0 * k - c * (1.0 + nu * nu) - 4.0 * h * h) * nu,
        l.grad_h_sq() - (1.0 - nu * nu),
        l.lap_h - 2.0 * h * nu,
    ]
}

/// Residuals of (M1)–(M4).
pub fn residual_m(sd: &SurfaceData, p: Vec2) -> Result<[f64; 4]> {
    let l = sd.local(p)?;
    Ok(m_from_local(&l, sd.mean_curvature, sd.gauss_curvature, sd.c))
}

fn q_from_local(l: &LocalData, h: f64, k: f64, c: f64) -> f64 {
    let nu2 = l.nu.value * l.nu.value;
    2.0 * h * c * l.grad_nu_dot_h() + 4.0 * h * h * (h * h - k + c * nu2) + 2.0 * h * h * c * (1.0 - nu2)
        + c * c / 4.0 * (1.0 - nu2).powi(2)
}

/// The function q built from ν, ∇ν, ∇h and the constants.
pub fn q_value(sd: &SurfaceData, p: Vec2) -> Result<f64> {
    let l = sd.local(p)?;
    Ok(q_from_local(&l, sd.mean_curvature, sd.gauss_curvature, sd.c))
}

/// Residual of 4Kq² = qΔq − ‖∇q‖², derivatives of q by finite differences.
pub fn residual_log_q(sd: &SurfaceData, p: Vec2) -> Result<f64> {
    let q0 = q_value(sd, p)?;
    if q0.abs() < 1e-10 {
        return Err(CmcError::ZeroOfQ(q0));
    }
    let owned = sd.clone();
    let qf = ScalarField::new(move |x| q_value(&owned, x));
    let qj = qf.jet(p, DerivativeMode::FiniteDifference)?;
    let mj = sd.metric.jet(p, sd.mode)?;
    let ginv = inv2(&mj.g)?;
    let lap = laplacian_from_jets(&mj, &qj)?;
    let grad_sq = co_inner(&ginv, &qj.grad, &qj.grad);
    Ok(4.0 * sd.gauss_curvature * q0 * q0 - (q0 * lap - grad_sq))
}

/// Residual of the Bochner-type identity (M5) with ∇K and ΔK supplied.
pub fn residual_bochner(sd: &SurfaceData, p: Vec2, grad_k: Vec2, delta_k: f64) -> Result<f64> {
    let l = sd.local(p)?;
    let (h, k, c) = (sd.mean_curvature, sd.gauss_curvature, sd.c);
    let nu = l.nu.value;
    let nu2 = nu * nu;
    let gk2 = co_inner(&l.ginv, &grad_k, &grad_k);
    let gk_nu = co_inner(&l.ginv, &grad_k, &l.nu.grad);
    let gk_h = co_inner(&l.ginv, &grad_k, &l.height.grad);
    Ok((h * h - k + c * nu2) * delta_k + gk2 - 6.0 * c * nu * gk_nu - 2.0 * h * c * nu * gk_h
        + 6.0 * h * c * (h * h - k - c * nu2) * l.grad_nu_dot_h()
        + 4.0 * h * h * c * nu2 * (h * h - k - 2.0 * c + 3.0 * c * nu2)
        - 4.0 * (h * h - k + c * nu2) * (k - c - h * h) * (k + 2.0 * c * nu2))
}

/// Residuals of the three identities forced by K = 4H² + c.
pub fn residual_constant_k(sd: &SurfaceData, p: Vec2) -> Result<[f64; 3]> {
    let l = sd.local(p)?;
    let (h, c) = (sd.mean_curvature, sd.c);
    let nu = l.nu.value;
    let w = 4.0 * h * h + c - c * nu * nu;
    Ok([c * l.grad_nu_dot_h() - 2.0 * h * w, l.grad_nu_sq() + w * w / c, l.lap_nu - w * nu])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SisterParams {
    pub h_bar: f64,
    pub kappa_shift: f64,
    pub theta: f64,
}

/// H̄ = √(H²+τ²), κ̄ = κ − 4τ² and θ with iH̄ = e^{iθ}(τ + iH).
pub fn sister_params(h: f64, tau: f64) -> SisterParams {
    let h_bar = (h * h + tau * tau).sqrt();
    // e^{iθ} = iH̄ / (τ + iH) = H̄(H + iτ)/(τ² + H²)
    let theta = tau.atan2(h);
    SisterParams { h_bar, kappa_shift: -4.0 * tau * tau, theta }
}

/// Exact version: returns (H̄², κ̄).
pub fn sister_params_exact(h: &BigRational, tau: &BigRational, kappa: &BigRational) -> (BigRational, BigRational) {
    let four = BigRational::from_integer(4.into());
    (h * h + tau * tau, kappa - &four * tau * tau)
}

fn rotate(j: &Mat2, theta: f64) -> Mat2 {
    let (c, s) = (theta.cos(), theta.sin());
    [[c + s * j[0][0], s * j[0][1]], [s * j[1][0], c + s * j[1][1]]]
}

/// Rotation by π/2 in the metric g, acting on coordinate vectors.
pub fn metric_rotation(g: &Mat2) -> Result<Mat2> {
    let d = det2(g);
    if !(d > 0.0) {
        return Err(CmcError::Conditioning(format!("metric determinant {d:e}")));
    }
    let r = d.sqrt();
    Ok([[-g[0][1] / r, -g[1][1] / r], [g[0][0] / r, g[0][1] / r]])
}

fn sister_with(j: &Mat2, s: &Mat2, t: &Vec2, theta: f64, h: f64, h_bar: f64) -> (Mat2, Vec2) {
    let r = rotate(j, theta);
    let a = [[s[0][0] - h, s[0][1]], [s[1][0], s[1][1] - h]];
    let mut out = crate::linalg::mul2(&r, &a);
    out[0][0] += h_bar;
    out[1][1] += h_bar;
    (out, apply2(&r, t))
}

/// S̄ = e^{θJ}(S − HI) + H̄I and T̄ = e^{θJ}T in an orthonormal frame.
pub fn sister_rotate(s: &Mat2, t: &Vec2, theta: f64, h: f64, h_bar: f64) -> (Mat2, Vec2) {
    sister_with(&[[0.0, -1.0], [1.0, 0.0]], s, t, theta, h, h_bar)
}

/// As [`sister_rotate`], for coordinate components in the metric g.
pub fn sister_rotate_in(g: &Mat2, s: &Mat2, t: &Vec2, theta: f64, h: f64, h_bar: f64) -> Result<(Mat2, Vec2)> {
    Ok(sister_with(&metric_rotation(g)?, s, t, theta, h, h_bar))
}
