//! Fixed-size helpers for 2×2 and 3×3 real matrices.

use crate::error::{CmcError, Result};

pub type Vec2 = [f64; 2];
pub type Vec3 = [f64; 3];
pub type Mat2 = [[f64; 2]; 2];
pub type Mat3 = [[f64; 3]; 3];

pub fn det2(m: &Mat2) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn inv2(m: &Mat2) -> Result<Mat2> {
    let d = det2(m);
    if d.abs() < 1e-14 {
        return Err(CmcError::Conditioning(format!("2x2 determinant {d:e}")));
    }
    Ok([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]])
}

pub fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut r = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

pub fn apply2(a: &Mat2, v: &Vec2) -> Vec2 {
    [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
}

pub fn quad2(g: &Mat2, a: &Vec2, b: &Vec2) -> f64 {
    let gb = apply2(g, b);
    a[0] * gb[0] + a[1] * gb[1]
}

pub fn trace2(m: &Mat2) -> f64 {
    m[0][0] + m[1][1]
}

pub fn det3(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn inv3(m: &Mat3) -> Result<Mat3> {
    let d = det3(m);
    if d.abs() < 1e-300 || !d.is_finite() {
        return Err(CmcError::Conditioning(format!("3x3 determinant {d:e}")));
    }
    let mut r = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (a, b) = ((j + 1) % 3, (j + 2) % 3);
            let (c, e) = ((i + 1) % 3, (i + 2) % 3);
            r[i][j] = (m[a][c] * m[b][e] - m[a][e] * m[b][c]) / d;
        }
    }
    Ok(r)
}

pub fn apply3(m: &Mat3, v: &Vec3) -> Vec3 {
    let mut r = [0.0; 3];
    for i in 0..3 {
        r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    }
    r
}

pub fn quad3(g: &Mat3, a: &Vec3, b: &Vec3) -> f64 {
    let gb = apply3(g, b);
    a[0] * gb[0] + a[1] * gb[1] + a[2] * gb[2]
}

pub fn cross3(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Cholesky factorization succeeds iff the symmetric matrix is positive definite.
pub fn is_positive_definite3(m: &Mat3) -> bool {
    let mut l = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in 0..=i {
            let mut s = m[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if s <= 0.0 || !s.is_finite() {
                    return false;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    true
}

pub fn max_asym3(m: &Mat3) -> f64 {
    let mut r: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            r = r.max((m[i][j] - m[j][i]).abs());
        }
    }
    r
}
