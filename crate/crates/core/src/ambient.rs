//! Ambient three-dimensional models: M²(c)×ℝ in the conformal disk and
//! E(−1, τ) in the half-plane and disk models.

use serde::{Deserialize, Serialize};

use crate::error::{domain, param, CmcError, Result};
use crate::fd;
use crate::linalg::{inv3, quad3, Mat3, Vec3};

pub type Christoffel = [[[f64; 3]; 3]; 3];
pub type Riemann = [[[[f64; 3]; 3]; 3]; 3];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AmbientSpace {
    ProductDisk { c: f64 },
    EktHalfPlane { tau: f64 },
    EktDisk { tau: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricAtPoint {
    pub g: Mat3,
    pub point: Vec3,
}

impl AmbientSpace {
    pub fn product_disk(c: f64) -> Result<Self> {
        if c == 0.0 || !c.is_finite() {
            return param("product model needs c != 0");
        }
        Ok(Self::ProductDisk { c })
    }

    pub fn ekt_half_plane(tau: f64) -> Result<Self> {
        if tau == 0.0 || !tau.is_finite() {
            return param("bundle curvature tau must be nonzero");
        }
        Ok(Self::EktHalfPlane { tau })
    }

    pub fn ekt_disk(tau: f64) -> Result<Self> {
        if tau == 0.0 || !tau.is_finite() {
            return param("bundle curvature tau must be nonzero");
        }
        Ok(Self::EktDisk { tau })
    }

    /// Base curvature of the fibration (κ, or c for the product).
    pub fn kappa(&self) -> f64 {
        match self {
            Self::ProductDisk { c } => *c,
            _ => -1.0,
        }
    }

    pub fn tau(&self) -> f64 {
        match self {
            Self::ProductDisk { .. } => 0.0,
            Self::EktHalfPlane { tau } | Self::EktDisk { tau } => *tau,
        }
    }

    pub fn contains(&self, p: Vec3) -> bool {
        if !p.iter().all(|x| x.is_finite()) {
            return false;
        }
        match self {
            Self::ProductDisk { c } => 1.0 + c * (p[0] * p[0] + p[1] * p[1]) > 0.0,
            Self::EktHalfPlane { .. } => p[1] > 0.0,
            Self::EktDisk { .. } => p[0] * p[0] + p[1] * p[1] < 1.0,
        }
    }

    pub fn metric(&self, p: Vec3) -> Result<MetricAtPoint> {
        match self {
            Self::ProductDisk { c } => product_metric(*c, p),
            Self::EktHalfPlane { tau } => ekt_halfplane_metric(*tau, p),
            Self::EktDisk { tau } => ekt_disk_metric(*tau, p),
        }
    }

    pub fn inner(&self, p: Vec3, a: &Vec3, b: &Vec3) -> Result<f64> {
        Ok(quad3(&self.metric(p)?.g, a, b))
    }

    /// The unit Killing field ∂t, identical in all three models.
    pub fn vertical_field(&self, p: Vec3) -> Result<Vec3> {
        if !self.contains(p) {
            return domain(format!("{p:?} outside the model"));
        }
        Ok([0.0, 0.0, 1.0])
    }

    fn metric_flat(&self, p: Vec3) -> Result<Vec<f64>> {
        let g = self.metric(p)?.g;
        Ok(g.iter().flat_map(|r| r.iter().copied()).collect())
    }

    /// Γ^k_ij indexed `[k][i][j]`, from central differences of the metric.
    pub fn christoffels(&self, p: Vec3, step: f64) -> Result<Christoffel> {
        if !(step > 0.0) {
            return param("finite-difference step must be positive");
        }
        let g = self.metric(p)?.g;
        let ginv = inv3(&g)?;
        // dg[l][i][j] = ∂_l g_ij
        let mut dg = [[[0.0; 3]; 3]; 3];
        for l in 0..3 {
            let h = fd::scaled_step(step, p[l]);
            for s in [-h, h] {
                let mut q = p;
                q[l] += s;
                if !self.contains(q) {
                    return Err(CmcError::Stencil(format!("stencil leaves the model at {q:?}")));
                }
            }
            let d = fd::d1(
                |t| {
                    let mut q = p;
                    q[l] = t;
                    self.metric_flat(q)
                },
                p[l],
                h,
            )?;
            for i in 0..3 {
                for j in 0..3 {
                    dg[l][i][j] = d[3 * i + j];
                }
            }
        }
        let mut gam = [[[0.0; 3]; 3]; 3];
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    let mut s = 0.0;
                    for l in 0..3 {
                        s += ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                    }
                    gam[k][i][j] = 0.5 * s;
                }
            }
        }
        Ok(gam)
    }

    /// R^l_ijk with R(∂i,∂j)∂k = R^l_ijk ∂l, indexed `[l][i][j][k]`.
    pub fn riemann(&self, p: Vec3) -> Result<Riemann> {
        let inner = 1e-4;
        let gam = self.christoffels(p, inner)?;
        let flat = |q: Vec3| -> Result<Vec<f64>> {
            let c = self.christoffels(q, inner)?;
            Ok(c.iter().flat_map(|a| a.iter().flat_map(|b| b.iter().copied())).collect())
        };
        // dgam[m][k][i][j] = ∂_m Γ^k_ij
        let mut dgam = [[[[0.0; 3]; 3]; 3]; 3];
        for m in 0..3 {
            let h = fd::scaled_step(fd::SECOND_STEP, p[m]);
            let d = fd::d1(
                |t| {
                    let mut q = p;
                    q[m] = t;
                    flat(q)
                },
                p[m],
                h,
            )?;
            for k in 0..3 {
                for i in 0..3 {
                    for j in 0..3 {
                        dgam[m][k][i][j] = d[9 * k + 3 * i + j];
                    }
                }
            }
        }
        let mut r = [[[[0.0; 3]; 3]; 3]; 3];
        for l in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        let mut s = dgam[i][l][j][k] - dgam[j][l][i][k];
                        for m in 0..3 {
                            s += gam[l][i][m] * gam[m][j][k] - gam[l][j][m] * gam[m][i][k];
                        }
                        r[l][i][j][k] = s;
                    }
                }
            }
        }
        Ok(r)
    }

    /// Sectional curvature of the plane spanned by `x`, `y` at `p`.
    pub fn sectional_curvature(&self, p: Vec3, x: &Vec3, y: &Vec3) -> Result<f64> {
        let g = self.metric(p)?.g;
        let r = self.riemann(p)?;
        // R(x,y)y
        let mut v = [0.0; 3];
        for l in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        v[l] += r[l][i][j][k] * x[i] * y[j] * y[k];
                    }
                }
            }
        }
        let area = quad3(&g, x, x) * quad3(&g, y, y) - quad3(&g, x, y).powi(2);
        if area <= 1e-300 {
            return Err(CmcError::Degenerate("plane spanned by parallel vectors".into()));
        }
        Ok(quad3(&g, &v, x) / area)
    }
}

/// λ²(dx²+dy²)+dt² with λ = 2/(1+c(x²+y²)).
pub fn product_metric(c: f64, p: Vec3) -> Result<MetricAtPoint> {
    if c == 0.0 {
        return param("product model needs c != 0");
    }
    let d = 1.0 + c * (p[0] * p[0] + p[1] * p[1]);
    if !(d > 0.0) || !p[2].is_finite() {
        return domain(format!("{p:?} outside the disk model of curvature {c}"));
    }
    let l2 = (2.0 / d).powi(2);
    Ok(MetricAtPoint { g: [[l2, 0.0, 0.0], [0.0, l2, 0.0], [0.0, 0.0, 1.0]], point: p })
}

/// (dx²+dy²)/y² + (−2τ/y dx + dt)².
pub fn ekt_halfplane_metric(tau: f64, p: Vec3) -> Result<MetricAtPoint> {
    if tau == 0.0 {
        return param("bundle curvature tau must be nonzero");
    }
    let y = p[1];
    if !(y > 0.0) || !p[0].is_finite() || !p[2].is_finite() {
        return domain(format!("{p:?} outside the upper half-space"));
    }
    let iy2 = 1.0 / (y * y);
    let g13 = -2.0 * tau / y;
    Ok(MetricAtPoint {
        g: [[iy2 + 4.0 * tau * tau * iy2, 0.0, g13], [0.0, iy2, 0.0], [g13, 0.0, 1.0]],
        point: p,
    })
}

/// λ²(dx²+dy²) + (2τ λ_y/λ dx − 2τ λ_x/λ dy + dt)² with λ = 2/(1−x²−y²).
pub fn ekt_disk_metric(tau: f64, p: Vec3) -> Result<MetricAtPoint> {
    if tau == 0.0 {
        return param("bundle curvature tau must be nonzero");
    }
    let d = 1.0 - p[0] * p[0] - p[1] * p[1];
    if !(d > 0.0) || !p[2].is_finite() {
        return domain(format!("{p:?} outside the unit disk"));
    }
    let lam = 2.0 / d;
    // λ_x/λ = 2x/d, λ_y/λ = 2y/d
    let a = 2.0 * tau * (2.0 * p[1] / d);
    let b = -2.0 * tau * (2.0 * p[0] / d);
    let l2 = lam * lam;
    Ok(MetricAtPoint {
        g: [[l2 + a * a, a * b, a], [a * b, l2 + b * b, b], [a, b, 1.0]],
        point: p,
    })
}
