use clap::Args;
use cmclab_core::moebius::{canonical_yy, class_xy, stabilizer, CanonicalRep, Moebius, Orientation, PairKind};
use cmclab_core::pairs::{classify_pair, CmcClass, PmcBucket};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::numfmt::num;
use crate::{CliError, CliResult, Outcome};

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

pub fn parse_rational(s: &str) -> CliResult<BigRational> {
    let s = s.trim();
    let parse_int = |x: &str| x.trim().parse::<BigInt>().map_err(|_| CliError::Usage(format!("bad rational {s:?}")));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return usage(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

pub fn parse_orientation(s: &str) -> CliResult<Orientation> {
    match s.trim() {
        "+" => Ok(Orientation::Plus),
        "-" => Ok(Orientation::Minus),
        o => usage(format!("orientation must be + or -, got {o:?}")),
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Entries (a, b, c, d) of the action formula for a named or explicit matrix.
fn parse_entries(s: &str) -> CliResult<[BigRational; 4]> {
    let s = s.trim();
    Ok(match s {
        "id" => [int(1), int(0), int(0), int(1)],
        "eta" => [int(-1), int(0), int(0), int(1)],
        "xi" => [int(0), int(-1), int(1), int(0)],
        "zeta" => [int(0), int(1), int(-1), int(1)],
        _ if s.starts_with('m') => {
            let t = parse_rational(&s[1..])?;
            [t.clone(), int(1) - t, int(-1), int(1)]
        }
        _ => {
            let parts: Vec<&str> = s.split(',').collect();
            if parts.len() != 4 {
                return usage(format!("matrix needs four comma-separated rationals, got {s:?}"));
            }
            [parse_rational(parts[0])?, parse_rational(parts[1])?, parse_rational(parts[2])?, parse_rational(parts[3])?]
        }
    })
}

/// z ↦ (az+b)/(cz+d) needs ad − bc > 0 for `+`; z ↦ (az̄+b)/(cz̄+d) needs
/// ad − bc < 0 for `-`.
pub fn parse_moebius(matrix: &str, orientation: Option<Orientation>) -> CliResult<Moebius> {
    let e = parse_entries(matrix)?;
    let det = &e[0] * &e[3] - &e[1] * &e[2];
    if det.is_zero() {
        return usage(format!("matrix {matrix:?} is singular"));
    }
    let implied = if det.is_positive() { Orientation::Plus } else { Orientation::Minus };
    if let Some(o) = orientation {
        if o != implied {
            return usage(format!(
                "orientation {} does not match {matrix:?}: holomorphic maps need ad - bc > 0, antiholomorphic maps (az̄+b)/(cz̄+d) need ad - bc < 0",
                o.symbol()
            ));
        }
    }
    Ok(Moebius::from_action(e)?)
}

#[derive(Args, Debug)]
pub struct MoebiusArgs {
    /// a,b,c,d as rationals p/q, or one of id, eta, xi, zeta, m<s>
    #[arg(long, allow_hyphen_values = true)]
    matrix: String,
    #[arg(long, allow_hyphen_values = true)]
    orientation: Option<String>,
}

pub fn render_moebius(args: &MoebiusArgs) -> CliResult<String> {
    let o = args.orientation.as_deref().map(parse_orientation).transpose()?;
    let f = parse_moebius(&args.matrix, o)?;
    let xy = class_xy(&f);
    let yy = canonical_yy(&f);
    let rho = f.rho().map(|r| r.to_string()).unwrap_or_else(|| "inf".into());
    let b_stab = match &yy {
        CanonicalRep::Id => "none (f in G_Y)".to_string(),
        rep => stabilizer(&PairKind::B(rep.clone())).to_string(),
    };
    Ok(format!(
        "element: {f}\nrho: {rho}\nin_GX: {}\nin_GY: {}\nclass_xy: {xy}\ncanonical_yy: {yy}\nstabilizer_A: {}\nstabilizer_B: {b_stab}\n",
        f.in_gx(),
        f.in_gy(),
        stabilizer(&PairKind::A(xy)),
    ))
}

pub fn run_moebius(args: MoebiusArgs) -> CliResult<Outcome> {
    print!("{}", render_moebius(&args)?);
    Ok(Outcome::Pass)
}

/// `hel:<matrix>[:<orient>]`, `arl:<matrix>[:<orient>]`, `cyl:<k>` or `slice`.
pub fn parse_class(s: &str) -> CliResult<CmcClass> {
    let s = s.trim();
    if s == "slice" {
        return Ok(CmcClass::slice());
    }
    let (fam, rest) = s.split_once(':').ok_or_else(|| CliError::Usage(format!("bad class descriptor {s:?}")))?;
    match fam {
        "cyl" => {
            let k: f64 = rest.trim().parse().map_err(|_| CliError::Usage(format!("bad curvature in {s:?}")))?;
            Ok(CmcClass::cylinder(k))
        }
        "hel" | "arl" => {
            let (m, o) = match rest.rsplit_once(':') {
                Some((m, o)) => (m, Some(parse_orientation(o)?)),
                None => (rest, None),
            };
            let f = parse_moebius(m, o)?;
            Ok(if fam == "hel" { CmcClass::helicoid(f) } else { CmcClass::arl(f) })
        }
        _ => usage(format!("unknown family {fam:?}; use hel, arl, cyl or slice")),
    }
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(long, allow_hyphen_values = true)]
    first: String,
    #[arg(long, allow_hyphen_values = true)]
    second: String,
    #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
    c: i32,
}

pub fn render_pair(args: &PairArgs) -> CliResult<String> {
    let a = parse_class(&args.first)?;
    let b = parse_class(&args.second)?;
    let bucket = classify_pair(args.c, &a, &b)?;
    let mut out = format!("bucket: {}\n", tag_text(&bucket));
    match &bucket {
        PmcBucket::ProductOfCurves { mean_curvature } => out.push_str(&format!("mean_curvature: {}\n", num(*mean_curvature))),
        PmcBucket::BM(s) | PmcBucket::BEtaM(s) => out.push_str(&format!("s: {s}\n")),
        _ => {}
    }
    if let Some(st) = bucket.stabilizer() {
        out.push_str(&format!("stabilizer: {st}\n"));
    }
    Ok(out)
}

fn tag_text(b: &PmcBucket) -> String {
    match b {
        PmcBucket::ProductOfCurves { .. } => "ProductOfCurves".into(),
        other => other.to_string(),
    }
}

pub fn run_pair(args: PairArgs) -> CliResult<Outcome> {
    print!("{}", render_pair(&args)?);
    Ok(Outcome::Pass)
}
