use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use semifield::knuth::Family;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Construct,
    Aut,
    Iso,
    Classify,
    Family,
    Verify,
    Catalog,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Construct => "construct",
            Command::Aut => "aut",
            Command::Iso => "iso",
            Command::Classify => "classify",
            Command::Family => "family",
            Command::Verify => "verify",
            Command::Catalog => "catalog",
        }
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: semifield::Error| e.to_string())
}

/// One invocation. Field elements and polynomials are kept as text and
/// parsed against the tower when the job runs.
#[derive(Parser, Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[command(name = "semifield", version, about = "Petit algebras, their automorphisms and isomorphisms")]
pub struct JobSpec {
    #[arg(value_enum)]
    pub command: Option<Command>,
    /// Characteristic of the base field.
    #[arg(long)]
    pub p: Option<u32>,
    /// F = F_{p^r}.
    #[arg(long)]
    pub r: Option<u32>,
    /// K = F_{q^n}.
    #[arg(long)]
    pub n: Option<u32>,
    /// Degree of t^m - a; defaults to n.
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    /// Constant of the cyclic algebra t^m - a.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, value_parser = parse_family)]
    pub family: Option<Family>,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Largest algebra order handed to brute-force searches.
    #[arg(long = "oracle-bound")]
    pub oracle_bound: Option<u128>,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Read the job from a file holding its canonical text.
    #[arg(long, conflicts_with = "command")]
    #[serde(skip)]
    pub spec: Option<PathBuf>,
}

fn quote(s: &str) -> String {
    format!("\"{s}\"")
}

impl JobSpec {
    /// Flags in a fixed order, text values quoted.
    pub fn canonical(&self) -> String {
        let mut out = self.command.map(|c| c.name().to_string()).unwrap_or_default();
        let mut flag = |name: &str, value: Option<String>| {
            if let Some(v) = value {
                let _ = write!(out, " --{name} {v}");
            }
        };
        flag("p", self.p.map(|v| v.to_string()));
        flag("r", self.r.map(|v| v.to_string()));
        flag("n", self.n.map(|v| v.to_string()));
        flag("m", self.m.map(|v| v.to_string()));
        flag("f", self.f.as_deref().map(quote));
        flag("g", self.g.as_deref().map(quote));
        flag("a", self.a.as_deref().map(quote));
        flag("family", self.family.map(|f| f.to_string()));
        flag("eta", self.eta.as_deref().map(quote));
        flag("mu", self.mu.as_deref().map(quote));
        flag("oracle-bound", self.oracle_bound.map(|v| v.to_string()));
        flag("out", self.out.as_ref().map(|p| quote(&p.display().to_string())));
        if self.json {
            out.push_str(" --json");
        }
        out.trim_start().to_string()
    }

    /// Parses canonical text, or any argument list in the same syntax.
    pub fn from_text(text: &str) -> Result<JobSpec, String> {
        let body: Vec<&str> = text.lines().filter(|l| !l.trim_start().starts_with('#')).collect();
        let args = split_args(&body.join(" "))?;
        let spec = JobSpec::try_parse_from(std::iter::once("semifield".to_string()).chain(args))
            .map_err(|e| e.to_string())?;
        if spec.spec.is_some() {
            return Err("spec files cannot reference other spec files".into());
        }
        Ok(spec)
    }
}

/// Whitespace splitting with double-quoted segments.
pub fn split_args(s: &str) -> Result<Vec<String>, String> {
    let mut args = Vec::new();
    let mut cur = String::new();
    let mut in_arg = false;
    let mut quoted = false;
    for ch in s.chars() {
        match ch {
            '"' => {
                quoted = !quoted;
                in_arg = true;
            }
            c if c.is_whitespace() && !quoted => {
                if in_arg {
                    args.push(std::mem::take(&mut cur));
                    in_arg = false;
                }
            }
            c => {
                cur.push(c);
                in_arg = true;
            }
        }
    }
    if quoted {
        return Err("unterminated quote".into());
    }
    if in_arg {
        args.push(cur);
    }
    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text_round_trips() {
        let spec = JobSpec::from_text("aut --n 2 --p 3 --f \"t^2 - x\" --json --r 1").unwrap();
        assert_eq!(spec.canonical(), "aut --p 3 --r 1 --n 2 --f \"t^2 - x\" --json");
        assert_eq!(JobSpec::from_text(&spec.canonical()).unwrap(), spec);
    }

    #[test]
    fn comments_and_newlines_are_ignored() {
        let spec = JobSpec::from_text("# job\nclassify\n  --p 3 --m 2\n").unwrap();
        assert_eq!(spec.canonical(), "classify --p 3 --m 2");
    }

    #[test]
    fn bad_text_is_rejected() {
        assert!(JobSpec::from_text("aut --p \"3").is_err());
        assert!(JobSpec::from_text("frobnicate").is_err());
        assert!(JobSpec::from_text("family --family kn7").is_err());
        assert!(JobSpec::from_text("--spec x.txt").is_err());
    }
}
