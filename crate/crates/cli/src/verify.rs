use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use cmclab_core::catalog::{self, ImmersionSpec};
use cmclab_core::compat::{
    gauss_codazzi_point, q_value, residual_bochner, residual_c, residual_constant_k, residual_log_q, residual_m,
    sister_point, ResidualReport,
};
use cmclab_core::diffgeo::{self, DerivativeMode, SurfaceData};
use cmclab_core::grid::{Axis, Grid2};
use cmclab_core::linalg::Vec2;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::curves::parse_range;
use crate::numfmt::json_num;
use crate::{CliError, CliResult, Outcome};

const EXTRINSIC_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Surface {
    Helicoid,
    Arl,
    Parabolic,
    Screw,
    Cylinder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Closed,
    Fd,
}

#[derive(Args, Debug, Default)]
pub struct VerifyArgs {
    /// TOML file with the same keys as the flags; flags win
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    surface: Option<Surface>,
    /// Mean curvature used by the checks
    #[arg(long = "H", allow_hyphen_values = true)]
    h: Option<f64>,
    /// Gauss curvature; fixes the geometry of the helicoid and ARL surface
    #[arg(long = "K", allow_hyphen_values = true)]
    k: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<f64>,
    /// Curvature of the base curve of a vertical cylinder
    #[arg(long = "curve-k", allow_hyphen_values = true)]
    curve_k: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    /// Derivatives of the intrinsic data: closed forms or finite differences
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long = "u-range", allow_hyphen_values = true)]
    u_range: Option<String>,
    #[arg(long = "v-range", allow_hyphen_values = true)]
    v_range: Option<String>,
    #[arg(long = "u-count")]
    u_count: Option<usize>,
    #[arg(long = "v-count")]
    v_count: Option<usize>,
    /// Tolerance override NAME=VALUE, repeatable
    #[arg(long = "tol")]
    tol: Vec<String>,
    /// Report file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    surface: Option<Surface>,
    #[serde(rename = "H")]
    h: Option<f64>,
    #[serde(rename = "K")]
    k: Option<f64>,
    tau: Option<f64>,
    eps: Option<f64>,
    curve_k: Option<f64>,
    c: Option<f64>,
    mode: Option<Mode>,
    u_range: Option<[f64; 2]>,
    v_range: Option<[f64; 2]>,
    u_count: Option<usize>,
    v_count: Option<usize>,
    #[serde(default)]
    tol: BTreeMap<String, f64>,
    out: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub surface: Surface,
    pub h: f64,
    pub k: Option<f64>,
    pub tau: f64,
    pub eps: f64,
    pub curve_k: f64,
    pub c: f64,
    pub mode: Mode,
    pub grid: Grid2,
    pub tol: BTreeMap<String, f64>,
    pub out: Option<PathBuf>,
}

fn default_grid(s: Surface) -> ([f64; 2], [f64; 2]) {
    match s {
        Surface::Helicoid | Surface::Screw => ([-2.0, 2.0], [-2.0, 2.0]),
        // the cylinder's u is the Euclidean angle on its base circle
        Surface::Cylinder => ([-0.9, 0.9], [-2.0, 2.0]),
        Surface::Arl => ([-1.0, 1.0], [0.3, 2.0]),
        Surface::Parabolic => ([-1.0, 1.0], [0.1, 0.9]),
    }
}

fn range_flag(s: &Option<String>) -> CliResult<Option<[f64; 2]>> {
    s.as_deref().map(|r| parse_range(r).map(|(a, b)| [a, b])).transpose()
}

impl VerifyConfig {
    pub fn resolve(args: &VerifyArgs) -> CliResult<Self> {
        let file: ConfigFile = match &args.config {
            Some(p) => {
                let text = std::fs::read_to_string(p)?;
                toml::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", p.display())))?
            }
            None => ConfigFile::default(),
        };
        let surface = args.surface.or(file.surface).ok_or_else(|| CliError::Usage("--surface is required".into()))?;
        let (du, dv) = default_grid(surface);
        let u = range_flag(&args.u_range)?.or(file.u_range).unwrap_or(du);
        let v = range_flag(&args.v_range)?.or(file.v_range).unwrap_or(dv);
        let nu = args.u_count.or(file.u_count).unwrap_or(10);
        let nv = args.v_count.or(file.v_count).unwrap_or(10);
        let grid = Grid2::new(Axis::new(u[0], u[1], nu)?, Axis::new(v[0], v[1], nv)?);
        let mut tol = file.tol;
        for t in &args.tol {
            let (name, val) = t.split_once('=').ok_or_else(|| CliError::Usage(format!("--tol needs NAME=VALUE, got {t:?}")))?;
            let val: f64 = val.parse().map_err(|_| CliError::Usage(format!("bad tolerance {val:?}")))?;
            if !(val > 0.0) {
                return Err(CliError::Usage(format!("tolerance must be positive, got {val}")));
            }
            tol.insert(name.to_string(), val);
        }
        let k = args.k.or(file.k);
        // the helicoid and ARL surface are determined by K = 4H² − 1
        let h = match (args.h.or(file.h), k) {
            (Some(h), _) => h,
            (None, Some(k)) if k > -1.0 => (1.0 + k).sqrt() / 2.0,
            (None, Some(k)) => return Err(CliError::Usage(format!("K = {k} gives no real H"))),
            (None, None) => 0.25,
        };
        Ok(Self {
            surface,
            h,
            k,
            tau: args.tau.or(file.tau).unwrap_or(0.5),
            eps: args.eps.or(file.eps).unwrap_or(1.0),
            curve_k: args.curve_k.or(file.curve_k).unwrap_or(0.5),
            c: args.c.or(file.c).unwrap_or(-1.0),
            mode: args.mode.or(file.mode).unwrap_or(Mode::Closed),
            grid,
            tol,
            out: args.out.clone().or(file.out),
        })
    }

    /// Mean curvature that fixes the geometry (from K when given).
    fn geometry_h(&self) -> CliResult<f64> {
        match self.k {
            Some(k) if k > -1.0 && k < 0.0 => Ok((1.0 + k).sqrt() / 2.0),
            Some(k) => Err(CliError::Usage(format!("need -1 < K < 0 for this surface, got {k}"))),
            None => Ok(self.h),
        }
    }

    fn tol(&self, name: &str, default: f64) -> f64 {
        self.tol.get(name).copied().unwrap_or(default)
    }
}

#[derive(Serialize)]
pub struct CheckRow {
    name: String,
    max_abs: Box<RawValue>,
    tol: Box<RawValue>,
    pass: bool,
}

#[derive(Serialize)]
pub struct Report {
    surface: String,
    checks: Vec<CheckRow>,
    pass: bool,
}

type Check = (&'static str, f64, Box<dyn Fn(Vec2) -> cmclab_core::Result<Vec<(&'static str, f64)>> + Sync>);

fn m_checks(sd: &SurfaceData, cfg: &VerifyConfig) -> Vec<Check> {
    let m_tol = match cfg.mode {
        Mode::Closed => 1e-7,
        Mode::Fd => 1e-4,
    };
    let mut out: Vec<Check> = Vec::new();
    for (i, name) in ["M1", "M2", "M3", "M4"].into_iter().enumerate() {
        let sd = sd.clone();
        out.push((name, m_tol, Box::new(move |p| Ok(vec![(name, residual_m(&sd, p)?[i])]))));
    }
    let s = sd.clone();
    out.push(("Bochner", 1e-7, Box::new(move |p| Ok(vec![("M5", residual_bochner(&s, p, [0.0, 0.0], 0.0)?)]))));
    out
}

fn k_const_check(sd: &SurfaceData) -> Check {
    let s = sd.clone();
    ("K-const", 1e-7, Box::new(move |p| {
        let r = residual_constant_k(&s, p)?;
        Ok(vec![("a", r[0]), ("b", r[1]), ("c", r[2])])
    }))
}

fn log_q_check(sd: &SurfaceData) -> Check {
    let s = sd.clone();
    ("log-q", 1e-4, Box::new(move |p| {
        if q_value(&s, p)?.abs() <= 1e-6 {
            return Ok(vec![]);
        }
        Ok(vec![("log-q", residual_log_q(&s, p)?)])
    }))
}

fn extrinsic_checks(spec: ImmersionSpec, h: f64, k: f64) -> Vec<Check> {
    let space = spec.ambient().expect("catalog surfaces with immersions have an ambient");
    vec![
        ("H-extrinsic", 1e-6, Box::new(move |p| {
            let cv = diffgeo::curvatures(&spec, &space, p, EXTRINSIC_STEP)?;
            Ok(vec![("H", cv.mean.abs() - h.abs())])
        })),
        ("K-extrinsic", 1e-6, Box::new(move |p| {
            let cv = diffgeo::curvatures(&spec, &space, p, EXTRINSIC_STEP)?;
            Ok(vec![("K", cv.gauss_ext - k)])
        })),
        ("gauss-codazzi", 1e-6, Box::new(move |p| {
            let r = residual_c(&gauss_codazzi_point(&spec, p, EXTRINSIC_STEP)?)?;
            Ok(vec![("C1", r[0]), ("C4", r[1]), ("C5", r[2])])
        })),
    ]
}

fn sister_check(spec: ImmersionSpec) -> Check {
    ("sister-gauss-codazzi", 1e-6, Box::new(move |p| {
        let r = residual_c(&sister_point(&gauss_codazzi_point(&spec, p, EXTRINSIC_STEP)?)?)?;
        Ok(vec![("C1", r[0]), ("C4", r[1]), ("C5", r[2])])
    }))
}

fn mode_of(m: Mode) -> DerivativeMode {
    match m {
        Mode::Closed => DerivativeMode::ClosedForm,
        Mode::Fd => DerivativeMode::FiniteDifference,
    }
}

fn build_checks(cfg: &VerifyConfig) -> CliResult<(String, Vec<Check>)> {
    let mode = mode_of(cfg.mode);
    Ok(match cfg.surface {
        Surface::Helicoid => {
            let hg = cfg.geometry_h()?;
            let k = cfg.k.unwrap_or(4.0 * hg * hg - 1.0);
            let sd = catalog::helicoid_data(hg)?.with_mode(mode).with_mean_curvature(cfg.h);
            let mut checks = m_checks(&sd, cfg);
            checks.push(k_const_check(&sd));
            checks.push(log_q_check(&sd));
            let spec = ImmersionSpec::HelicoidH2R { h: hg };
            spec.validate()?;
            checks.extend(extrinsic_checks(spec, cfg.h, k));
            ("helicoid".into(), checks)
        }
        Surface::Arl => {
            let hg = cfg.geometry_h()?;
            let sd = catalog::arl_data(hg)?.with_mode(mode).with_mean_curvature(cfg.h);
            let mut checks = m_checks(&sd, cfg);
            checks.push(k_const_check(&sd));
            let (h, c) = (cfg.h, sd.c);
            let s = sd.clone();
            checks.push(("nu-constant", 1e-12, Box::new(move |p| {
                let nu = s.local(p)?.nu.value;
                Ok(vec![("nu^2", nu * nu - (4.0 * h * h + c) / c)])
            })));
            let s = sd.clone();
            checks.push(("q-vanishing", 1e-9, Box::new(move |p| Ok(vec![("q", q_value(&s, p)?)]))));
            ("arl".into(), checks)
        }
        Surface::Parabolic => {
            let spec = ImmersionSpec::ParabolicPsl2 { tau: cfg.tau };
            spec.validate()?;
            let mut checks = extrinsic_checks(spec, 0.0, -1.0);
            checks.push(sister_check(spec));
            ("parabolic".into(), checks)
        }
        Surface::Screw => {
            let spec = ImmersionSpec::ScrewMotionPsl2 { h: cfg.h, tau: cfg.tau, eps: cfg.eps };
            spec.validate()?;
            let mut checks = extrinsic_checks(spec, cfg.h, 4.0 * cfg.h * cfg.h - 1.0);
            checks.push(sister_check(spec));
            ("screw".into(), checks)
        }
        Surface::Cylinder => {
            let spec = ImmersionSpec::VerticalCylinder { c: cfg.c, k: cfg.curve_k };
            spec.validate()?;
            let sd = catalog::cylinder_data(cfg.c, cfg.curve_k)?.with_mode(mode);
            let mut checks = m_checks(&sd, cfg);
            checks.push(log_q_check(&sd));
            checks.extend(extrinsic_checks(spec, spec.mean_curvature(), 0.0));
            ("cylinder".into(), checks)
        }
    })
}

pub fn evaluate(cfg: &VerifyConfig) -> CliResult<Report> {
    let (surface, checks) = build_checks(cfg)?;
    let pts = cfg.grid.points();
    let mut rows = Vec::new();
    for (name, default_tol, f) in checks {
        let rep = ResidualReport::collect(name, cfg.tol(name, default_tol), &pts, |p| f(p))?;
        rows.push(CheckRow { name: rep.name, max_abs: json_num(rep.max_abs), tol: json_num(rep.tol), pass: rep.pass });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(Report { surface, checks: rows, pass })
}

pub fn run(args: VerifyArgs) -> CliResult<Outcome> {
    let cfg = VerifyConfig::resolve(&args)?;
    let report = evaluate(&cfg)?;
    let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    match &cfg.out {
        Some(p) => std::fs::write(p, &text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(if report.pass { Outcome::Pass } else { Outcome::Fail })
}
