//! Screw-motion invariant twins in E(−1, τ), disk model.

use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScrewConstants {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Pitch of the screw motion.
    pub l: f64,
    pub d: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurfaceType {
    TypeI,
    TypeII,
    TypeIII,
}

impl SurfaceType {
    pub fn label(&self) -> &'static str {
        match self {
            Self::TypeI => "I",
            Self::TypeII => "II",
            Self::TypeIII => "III",
        }
    }
}

/// Which closed form to use for f and u.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ScrewBranch {
    /// Decide from τ²(1−8H²) = 4H⁴ up to a relative tolerance of 1e−12.
    #[default]
    Auto,
    Generic,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScrewParams {
    pub h: f64,
    pub tau: f64,
    pub eps: f64,
    pub branch: ScrewBranch,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScrewProfile {
    pub f: f64,
    pub u: f64,
    pub du: f64,
}

impl ScrewParams {
    pub fn new(h: f64, tau: f64, eps: f64) -> Result<Self> {
        Self::with_branch(h, tau, eps, ScrewBranch::Auto)
    }

    pub fn with_branch(h: f64, tau: f64, eps: f64, branch: ScrewBranch) -> Result<Self> {
        if !(h > 0.0 && 4.0 * h * h < 1.0) {
            return param(format!("screw surfaces need 0 < H < 1/2, got H = {h}"));
        }
        if tau == 0.0 || !tau.is_finite() {
            return param("screw surfaces need tau != 0");
        }
        if eps != 1.0 && eps != -1.0 {
            return param(format!("epsilon must be +1 or -1, got {eps}"));
        }
        let p = Self { h, tau, eps, branch };
        if branch == ScrewBranch::Degenerate && 8.0 * h * h >= 1.0 {
            return param("the degenerate branch needs 8H^2 < 1");
        }
        Ok(p)
    }

    /// τ²(1−8H²) − 4H⁴, whose sign separates types I and II when ετ < 0.
    pub fn discriminant(&self) -> f64 {
        let h2 = self.h * self.h;
        self.tau * self.tau * (1.0 - 8.0 * h2) - 4.0 * h2 * h2
    }

    pub fn is_degenerate(&self) -> bool {
        match self.branch {
            ScrewBranch::Generic => false,
            ScrewBranch::Degenerate => true,
            ScrewBranch::Auto => {
                let h2 = self.h * self.h;
                self.discriminant().abs() < 1e-12 * (self.tau * self.tau + h2 * h2)
            }
        }
    }

    fn et_positive(&self) -> bool {
        self.eps * self.tau > 0.0
    }

    fn w(&self) -> f64 {
        (1.0 - 4.0 * self.h * self.h).sqrt()
    }

    fn s4(&self) -> f64 {
        (4.0 * self.tau * self.tau + 1.0).sqrt()
    }

    fn q(&self) -> f64 {
        (self.h * self.h + self.tau * self.tau).sqrt()
    }

    pub fn constants(&self) -> ScrewConstants {
        let (h, tau, eps) = (self.h, self.tau, self.eps);
        let (w, s4, q) = (self.w(), self.s4(), self.q());
        ScrewConstants {
            a: h * w / q * (s4 - 2.0 * eps * tau),
            b: -h * w / q * (s4 + 2.0 * eps * tau),
            c: -eps * tau * w / (2.0 * h * q),
            l: -2.0 * tau + eps * s4,
            d: eps * tau * (1.0 - 4.0 * h * h) / (h * s4),
        }
    }

    pub fn surface_type(&self) -> SurfaceType {
        if self.et_positive() {
            SurfaceType::TypeI
        } else if self.is_degenerate() {
            SurfaceType::TypeIII
        } else if self.discriminant() < 0.0 {
            SurfaceType::TypeI
        } else {
            SurfaceType::TypeII
        }
    }

    pub fn profile(&self, sigma: f64) -> ScrewProfile {
        let k = self.constants();
        let (h, w) = (self.h, self.w());
        let th = (sigma / 2.0).tanh();
        let ch = sigma.cosh();
        let degenerate = self.is_degenerate();
        let f = if !self.et_positive() && degenerate {
            th / (4.0 * h * h * th * th + w * w).sqrt()
        } else {
            ((ch - k.a) / (ch - k.b)).sqrt()
        };
        let u = if !degenerate {
            let lead = 2.0 * h * self.s4() / w * sigma;
            let arc = |x: f64| x * (x - k.c) / (1.0 - x * x).sqrt() * (((1.0 + x) / (1.0 - x)).sqrt() * th).atan();
            lead + 2.0 * self.q() / (w * w) * (arc(k.a) - arc(k.b))
        } else {
            let r8 = (1.0 - 8.0 * h * h).sqrt();
            let lead = 2.0 * h * w / r8 * sigma;
            if self.et_positive() {
                lead + r8 * (w / (2.0 * h) * th).atan()
            } else {
                lead - r8 * (2.0 * h / w * th).atan()
            }
        };
        ScrewProfile { f, u, du: self.du(sigma) }
    }

    /// u′ with the removable factor cancelled on the degenerate branches.
    pub fn du(&self, sigma: f64) -> f64 {
        let k = self.constants();
        let ch = sigma.cosh();
        let lead = 2.0 * self.h * self.s4() / self.w();
        if self.is_degenerate() {
            if self.et_positive() {
                lead * ch / (ch - k.a)
            } else {
                lead * ch / (ch - k.b)
            }
        } else {
            lead * (ch - k.c) * ch / ((ch - k.a) * (ch - k.b))
        }
    }

    /// ρ′ for ρ = 2 artanh f.
    pub fn drho(&self, sigma: f64) -> f64 {
        let k = self.constants();
        if !self.et_positive() && self.is_degenerate() {
            let h = self.h;
            let w2 = 1.0 - 4.0 * h * h;
            let th = (sigma / 2.0).tanh();
            let dth = 0.5 * (1.0 - th * th);
            let s = 4.0 * h * h * th * th + w2;
            let f = th / s.sqrt();
            let df = dth * w2 / s.powf(1.5);
            2.0 * df / (1.0 - f * f)
        } else {
            let ch = sigma.cosh();
            sigma.sinh() / ((ch - k.a) * (ch - k.b)).sqrt()
        }
    }

    pub fn immersion(&self, sigma: f64, theta: f64) -> [f64; 3] {
        let p = self.profile(sigma);
        let l = self.constants().l;
        [p.f * theta.cos(), p.f * theta.sin(), p.u + l * theta]
    }

    /// (E, F, G) of the induced metric in (σ, θ).
    pub fn metric_coeffs(&self, sigma: f64) -> (f64, f64, f64) {
        let (h, tau, eps) = (self.h, self.tau, self.eps);
        let (w, s4, q) = (self.w(), self.s4(), self.q());
        let du = self.du(sigma);
        let dr = self.drho(sigma);
        let ch = sigma.cosh();
        let e = dr * dr + du * du;
        let f = du / (h * w * s4) * (eps * h * w - 2.0 * tau * q * ch);
        let g = (h * h + tau * tau) / (h * h * w * w) * ch * ch;
        (e, f, g)
    }
}
