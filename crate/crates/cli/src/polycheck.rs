use std::path::PathBuf;

use clap::Args;
use cmclab_core::polyverify::verify_lemma;

use crate::{CliResult, Outcome};

#[derive(Args, Debug)]
pub struct PolycheckArgs {
    /// Also write the coefficient table as JSON
    #[arg(long)]
    json: Option<PathBuf>,
}

pub fn render() -> (String, String, bool) {
    let rep = verify_lemma();
    let mut out = String::new();
    for c in &rep.checks {
        out.push_str(&format!("{:<22} {:<4} {}\n", c.name, if c.pass { "ok" } else { "FAIL" }, c.found));
        if !c.pass {
            out.push_str(&format!("{:<22} expected {}\n", "", c.expected));
        }
    }
    out.push_str("\ncoefficients of (M6) in nu:\n");
    for (n, coeff) in &rep.m6_coefficients {
        out.push_str(&format!("  nu^{n:<2} : {coeff}\n"));
    }
    if rep.pass {
        out.push_str("\n(M6)_18 = −486 c⁹ (4H² + c − K)\n");
    } else if let Some(f) = rep.first_failure() {
        out.push_str(&format!("\nverification failed at {}\n", f.name));
    }
    let json = serde_json::to_string_pretty(&rep).expect("serializable") + "\n";
    (out, json, rep.pass)
}

pub fn run(args: PolycheckArgs) -> CliResult<Outcome> {
    let (text, json, pass) = render();
    print!("{text}");
    if let Some(p) = args.json {
        std::fs::write(p, json)?;
    }
    Ok(if pass { Outcome::Pass } else { Outcome::Fail })
}
