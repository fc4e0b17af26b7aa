use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use cmclab_core::catalog::{ScrewBranch, ScrewParams};
use cmclab_core::grid::linspace;
use serde::Serialize;
use serde_json::value::RawValue;

use crate::numfmt::{json_num, num};
use crate::{CliError, CliResult, Outcome};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Branch {
    Auto,
    Generic,
    Degenerate,
}

#[derive(Args, Debug)]
pub struct CurvesArgs {
    #[arg(long)]
    tau: f64,
    #[arg(long, allow_hyphen_values = true)]
    eps: f64,
    #[arg(long = "H")]
    h: f64,
    /// σ range as min:max
    #[arg(long, default_value = "-5:5", allow_hyphen_values = true)]
    range: String,
    #[arg(long, default_value_t = 400)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Branch::Auto)]
    branch: Branch,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn parse_range(s: &str) -> CliResult<(f64, f64)> {
    let (a, b) = s.split_once(':').ok_or_else(|| CliError::Usage(format!("range must be min:max, got {s:?}")))?;
    let p = |x: &str| x.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("bad number {x:?} in range")));
    let (a, b) = (p(a)?, p(b)?);
    if !(a < b) {
        return Err(CliError::Usage(format!("empty range {s:?}")));
    }
    Ok((a, b))
}

#[derive(Serialize)]
struct Row {
    sigma: Box<RawValue>,
    f: Box<RawValue>,
    u: Box<RawValue>,
    #[serde(rename = "type")]
    kind: &'static str,
}

pub fn render(args: &CurvesArgs) -> CliResult<String> {
    let branch = match args.branch {
        Branch::Auto => ScrewBranch::Auto,
        Branch::Generic => ScrewBranch::Generic,
        Branch::Degenerate => ScrewBranch::Degenerate,
    };
    let sp = ScrewParams::with_branch(args.h, args.tau, args.eps, branch)?;
    if args.samples < 2 {
        return Err(CliError::Usage("need at least 2 samples".into()));
    }
    let (a, b) = parse_range(&args.range)?;
    let label = sp.surface_type().label();
    let rows: Vec<(f64, f64, f64)> = linspace(a, b, args.samples)
        .into_iter()
        .map(|s| {
            let p = sp.profile(s);
            (s, p.f, p.u)
        })
        .collect();
    Ok(match args.format {
        Format::Csv => {
            let mut out = String::from("sigma,f,u,type\n");
            for (s, f, u) in rows {
                out.push_str(&format!("{},{},{},{}\n", num(s), num(f), num(u), label));
            }
            out
        }
        Format::Json => {
            let rows: Vec<Row> = rows
                .into_iter()
                .map(|(s, f, u)| Row { sigma: json_num(s), f: json_num(f), u: json_num(u), kind: label })
                .collect();
            serde_json::to_string_pretty(&rows).expect("serializable") + "\n"
        }
    })
}

pub fn run(args: CurvesArgs) -> CliResult<Outcome> {
    let text = render(&args)?;
    match &args.out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(Outcome::Pass)
}
