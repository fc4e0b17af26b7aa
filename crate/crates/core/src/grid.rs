//! Rectangular parameter grids, evaluated in parallel in grid order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::linalg::Vec2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return param(format!("an axis needs at least 2 samples, got {count}"));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return param(format!("bad axis range [{min}, {max}]"));
        }
        Ok(Self { min, max, count })
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.min, self.max, self.count)
    }
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n).map(|i| if i == n - 1 { b } else { a + (b - a) * i as f64 / (n - 1) as f64 }).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid2 {
    pub u: Axis,
    pub v: Axis,
}

impl Grid2 {
    pub fn new(u: Axis, v: Axis) -> Self {
        Self { u, v }
    }

    /// Points in row-major order (u outer, v inner).
    pub fn points(&self) -> Vec<Vec2> {
        let vs = self.v.values();
        self.u.values().into_iter().flat_map(|u| vs.iter().map(move |&v| [u, v])).collect()
    }

    pub fn map<T: Send, F>(&self, f: F) -> Result<Vec<T>>
    where
        F: Fn(Vec2) -> Result<T> + Sync + Send,
    {
        self.points().into_par_iter().map(f).collect()
    }
}
