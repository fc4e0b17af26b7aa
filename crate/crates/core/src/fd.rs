//! Central finite differences with one level of Richardson extrapolation.
//!
//! Every routine works on vector-valued closures so that metrics, immersions
//! and scalar fields share one implementation.

use crate::error::Result;

/// Base step for first derivatives, scaled by `1 + |x|`.
pub const FIRST_STEP: f64 = 1e-5;
/// Base step for second derivatives.
pub const SECOND_STEP: f64 = 1e-3;

pub fn scaled_step(base: f64, x: f64) -> f64 {
    base * (1.0 + x.abs())
}

fn combine(fine: Vec<f64>, coarse: Vec<f64>) -> Vec<f64> {
    fine.iter().zip(coarse.iter()).map(|(f, c)| (4.0 * f - c) / 3.0).collect()
}

fn axpy(out: &mut [f64], a: f64, x: &[f64]) {
    for (o, v) in out.iter_mut().zip(x) {
        *o += a * v;
    }
}

/// First derivative along a line, `f(x)` vector valued.
pub fn d1<F>(f: F, x: f64, h: f64) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<Vec<f64>>,
{
    let raw = |h: f64| -> Result<Vec<f64>> {
        let p = f(x + h)?;
        let m = f(x - h)?;
        Ok(p.iter().zip(&m).map(|(a, b)| (a - b) / (2.0 * h)).collect())
    };
    Ok(combine(raw(h / 2.0)?, raw(h)?))
}

/// Second derivative along a line.
pub fn d2<F>(f: F, x: f64, h: f64) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<Vec<f64>>,
{
    let c = f(x)?;
    let raw = |h: f64| -> Result<Vec<f64>> {
        let p = f(x + h)?;
        let m = f(x - h)?;
        Ok((0..c.len()).map(|i| (p[i] - 2.0 * c[i] + m[i]) / (h * h)).collect())
    };
    Ok(combine(raw(h / 2.0)?, raw(h)?))
}

/// Mixed partial ∂²f/∂u∂v of a function of two variables.
pub fn d_mixed<F>(f: F, u: f64, v: f64, hu: f64, hv: f64) -> Result<Vec<f64>>
where
    F: Fn(f64, f64) -> Result<Vec<f64>>,
{
    let raw = |s: f64| -> Result<Vec<f64>> {
        let (a, b) = (hu * s, hv * s);
        let pp = f(u + a, v + b)?;
        let mut out = vec![0.0; pp.len()];
        axpy(&mut out, 1.0, &pp);
        axpy(&mut out, -1.0, &f(u + a, v - b)?);
        axpy(&mut out, -1.0, &f(u - a, v + b)?);
        axpy(&mut out, 1.0, &f(u - a, v - b)?);
        for o in out.iter_mut() {
            *o /= 4.0 * a * b;
        }
        Ok(out)
    };
    Ok(combine(raw(0.5)?, raw(1.0)?))
}

/// Gradient and Hessian of a scalar function of two variables.
pub fn jet2<F>(f: F, p: [f64; 2], base: f64) -> Result<(f64, [f64; 2], [[f64; 2]; 2])>
where
    F: Fn([f64; 2]) -> Result<f64>,
{
    let hu = scaled_step(base, p[0]);
    let hv = scaled_step(base, p[1]);
    let v = f(p)?;
    let fu = |t: f64| f([t, p[1]]).map(|x| vec![x]);
    let fv = |t: f64| f([p[0], t]).map(|x| vec![x]);
    let gu = d1(fu, p[0], hu)?[0];
    let gv = d1(fv, p[1], hv)?[0];
    let huu = d2(fu, p[0], hu)?[0];
    let hvv = d2(fv, p[1], hv)?[0];
    let huv = d_mixed(|a, b| f([a, b]).map(|x| vec![x]), p[0], p[1], hu, hv)?[0];
    Ok((v, [gu, gv], [[huu, huv], [huv, hvv]]))
}

/// Gradient of a scalar function of two variables.
pub fn grad2<F>(f: F, p: [f64; 2], base: f64) -> Result<[f64; 2]>
where
    F: Fn([f64; 2]) -> Result<f64>,
{
    let gu = d1(|t| f([t, p[1]]).map(|x| vec![x]), p[0], scaled_step(base, p[0]))?[0];
    let gv = d1(|t| f([p[0], t]).map(|x| vec![x]), p[1], scaled_step(base, p[1]))?[0];
    Ok([gu, gv])
}
