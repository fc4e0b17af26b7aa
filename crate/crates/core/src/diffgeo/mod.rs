//! Extrinsic geometry of catalog immersions computed numerically from the
//! immersion map and the ambient metric.

mod intrinsic;

pub use intrinsic::*;

use crate::ambient::AmbientSpace;
use crate::catalog::ImmersionSpec;
use crate::error::{param, CmcError, Result};
use crate::fd;
use crate::linalg::{apply3, cross3, det2, inv2, inv3, mul2, quad3, trace2, Mat2, Vec2, Vec3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub first: Mat2,
    pub second: Mat2,
    /// Unit normal in ambient coordinates.
    pub normal: Vec3,
    pub point: Vec2,
}

impl FundamentalForms {
    /// Shape operator S = I⁻¹ II acting on coordinate vectors.
    pub fn shape_operator(&self) -> Result<Mat2> {
        Ok(mul2(&inv2(&self.first)?, &self.second))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Curvatures {
    pub forms: FundamentalForms,
    pub mean: f64,
    /// det S plus the ambient sectional curvature of the tangent plane.
    pub gauss_ext: f64,
    pub nu: f64,
    pub height: f64,
    /// Coordinates of T, the tangential part of the vertical field.
    pub vertical_tangent: Vec2,
}

struct Jet {
    x: Vec3,
    xu: Vec3,
    xv: Vec3,
}

struct Jet2 {
    first: Jet,
    xuu: Vec3,
    xuv: Vec3,
    xvv: Vec3,
}

fn check_space(spec: &ImmersionSpec, space: &AmbientSpace) -> Result<()> {
    let own = spec.ambient()?;
    if own != *space {
        return param(format!("{} is written in {own:?}, not {space:?}", spec.name()));
    }
    Ok(())
}

fn v3(v: Vec<f64>) -> Vec3 {
    [v[0], v[1], v[2]]
}

fn first_jet(spec: &ImmersionSpec, p: Vec2, step: f64) -> Result<Jet> {
    let x = spec.immersion(p)?;
    let f = |q: Vec2| spec.immersion(q).map(|v| v.to_vec());
    let xu = v3(fd::d1(|t| f([t, p[1]]), p[0], fd::scaled_step(step, p[0]))?);
    let xv = v3(fd::d1(|t| f([p[0], t]), p[1], fd::scaled_step(step, p[1]))?);
    Ok(Jet { x, xu, xv })
}

fn second_jet(spec: &ImmersionSpec, p: Vec2, step: f64) -> Result<Jet2> {
    let first = first_jet(spec, p, step)?;
    let f = |q: Vec2| spec.immersion(q).map(|v| v.to_vec());
    let base = 100.0 * step;
    let hu = fd::scaled_step(base, p[0]);
    let hv = fd::scaled_step(base, p[1]);
    let xuu = v3(fd::d2(|t| f([t, p[1]]), p[0], hu)?);
    let xvv = v3(fd::d2(|t| f([p[0], t]), p[1], hv)?);
    let xuv = v3(fd::d_mixed(|a, b| f([a, b]), p[0], p[1], hu, hv)?);
    Ok(Jet2 { first, xuu, xuv, xvv })
}

fn first_form(space: &AmbientSpace, j: &Jet) -> Result<Mat2> {
    let g = space.metric(j.x)?.g;
    let e = quad3(&g, &j.xu, &j.xu);
    let f = quad3(&g, &j.xu, &j.xv);
    let gg = quad3(&g, &j.xv, &j.xv);
    let i = [[e, f], [f, gg]];
    let d = det2(&i);
    if !(d > 1e-14 * (e * gg).max(1e-300)) {
        return Err(CmcError::Degenerate(format!("Jacobian has rank < 2 (EG - F^2 = {d:e})")));
    }
    Ok(i)
}

/// Unit normal g⁻¹(X_u × X_v)/|·| with no orientation fixed.
fn raw_normal(space: &AmbientSpace, j: &Jet) -> Result<Vec3> {
    let g = space.metric(j.x)?.g;
    let n = apply3(&inv3(&g)?, &cross3(&j.xu, &j.xv));
    let len = quad3(&g, &n, &n).sqrt();
    if !(len > 0.0) {
        return Err(CmcError::Degenerate("tangent vectors are parallel".into()));
    }
    Ok([n[0] / len, n[1] / len, n[2] / len])
}

fn angle(space: &AmbientSpace, j: &Jet, n: &Vec3) -> Result<f64> {
    let xi = space.vertical_field(j.x)?;
    space.inner(j.x, &xi, n)
}

fn second_form(space: &AmbientSpace, j: &Jet2, n: &Vec3, step: f64) -> Result<Mat2> {
    let gam = space.christoffels(j.first.x, step)?;
    let g = space.metric(j.first.x)?.g;
    let cov = |a: &Vec3, b: &Vec3, ab: &Vec3| -> Vec3 {
        let mut r = *ab;
        for (k, rk) in r.iter_mut().enumerate() {
            for i in 0..3 {
                for l in 0..3 {
                    *rk += gam[k][i][l] * a[i] * b[l];
                }
            }
        }
        r
    };
    let (xu, xv) = (&j.first.xu, &j.first.xv);
    let l = quad3(&g, &cov(xu, xu, &j.xuu), n);
    let m = quad3(&g, &cov(xu, xv, &j.xuv), n);
    let nn = quad3(&g, &cov(xv, xv, &j.xvv), n);
    Ok([[l, m], [m, nn]])
}

/// +1 or −1 so that ν ≥ 0 at the reference point, or H ≥ 0 there when ν vanishes.
fn orientation(spec: &ImmersionSpec, space: &AmbientSpace, step: f64) -> Result<f64> {
    let q = spec.reference_point();
    let j = second_jet(spec, q, step)?;
    let n = raw_normal(space, &j.first)?;
    let nu = angle(space, &j.first, &n)?;
    if nu.abs() > 1e-8 {
        return Ok(nu.signum());
    }
    let i = first_form(space, &j.first)?;
    let s = mul2(&inv2(&i)?, &second_form(space, &j, &n, step)?);
    Ok(if trace2(&s) < 0.0 { -1.0 } else { 1.0 })
}

pub fn induced_metric(spec: &ImmersionSpec, space: &AmbientSpace, p: Vec2, step: f64) -> Result<Mat2> {
    check_space(spec, space)?;
    first_form(space, &first_jet(spec, p, step)?)
}

/// Full extrinsic data at `p`: forms, signed H, extrinsic K, ν, h and T.
pub fn curvatures(spec: &ImmersionSpec, space: &AmbientSpace, p: Vec2, step: f64) -> Result<Curvatures> {
    check_space(spec, space)?;
    if !(step > 0.0) {
        return param("finite-difference step must be positive");
    }
    let sign = orientation(spec, space, step)?;
    let j = second_jet(spec, p, step)?;
    let i = first_form(space, &j.first)?;
    let n0 = raw_normal(space, &j.first)?;
    let n = [sign * n0[0], sign * n0[1], sign * n0[2]];
    let ii = second_form(space, &j, &n, step)?;
    let s = mul2(&inv2(&i)?, &ii);
    let nu = angle(space, &j.first, &n)?;
    let x = j.first.x;
    let sec = space.sectional_curvature(x, &j.first.xu, &j.first.xv)?;
    let xi = space.vertical_field(x)?;
    let rhs = [space.inner(x, &xi, &j.first.xu)?, space.inner(x, &xi, &j.first.xv)?];
    let iinv = inv2(&i)?;
    let t = [iinv[0][0] * rhs[0] + iinv[0][1] * rhs[1], iinv[1][0] * rhs[0] + iinv[1][1] * rhs[1]];
    Ok(Curvatures {
        forms: FundamentalForms { first: i, second: ii, normal: n, point: p },
        mean: 0.5 * trace2(&s),
        gauss_ext: det2(&s) + sec,
        nu,
        height: x[2],
        vertical_tangent: t,
    })
}

/// (FundamentalForms, H_num, K_ext).
pub fn second_form_and_curvatures(
    spec: &ImmersionSpec,
    space: &AmbientSpace,
    p: Vec2,
    step: f64,
) -> Result<(FundamentalForms, f64, f64)> {
    let c = curvatures(spec, space, p, step)?;
    Ok((c.forms, c.mean, c.gauss_ext))
}

/// (ν, h) with ν = g(∂t, N) for the oriented normal and h the t-coordinate.
pub fn angle_height(spec: &ImmersionSpec, space: &AmbientSpace, p: Vec2, step: f64) -> Result<(f64, f64)> {
    check_space(spec, space)?;
    let sign = orientation(spec, space, step)?;
    let j = first_jet(spec, p, step)?;
    first_form(space, &j)?;
    let n = raw_normal(space, &j)?;
    Ok((sign * angle(space, &j, &n)?, j.x[2]))
}

/// Ambient inner products of N with the two coordinate tangents.
pub fn normal_defect(spec: &ImmersionSpec, space: &AmbientSpace, p: Vec2, step: f64) -> Result<(f64, f64, f64)> {
    check_space(spec, space)?;
    let j = first_jet(spec, p, step)?;
    let n = raw_normal(space, &j)?;
    Ok((space.inner(j.x, &n, &j.xu)?, space.inner(j.x, &n, &j.xv)?, space.inner(j.x, &n, &n)?))
}
