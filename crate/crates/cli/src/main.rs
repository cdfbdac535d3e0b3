use std::process::ExitCode;

use clap::Parser;
use semifield_cli::{render, run, Command, JobSpec};

fn emit(spec: &JobSpec, body: &str) -> Result<(), String> {
    match &spec.out {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let mut spec = JobSpec::parse();
    if let Some(path) = spec.spec.take() {
        let loaded = std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))
            .and_then(|text| JobSpec::from_text(&text));
        spec = match loaded {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        };
    }
    let outcome = match run(&spec) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return ExitCode::from(e.status as u8);
        }
    };
    let body: String = if spec.command == Some(Command::Catalog) {
        outcome.records.iter().map(|r| format!("{r}\n")).collect()
    } else if spec.json {
        outcome.records.iter().map(|r| format!("{}\n", serde_json::to_string_pretty(r).expect("json"))).collect()
    } else {
        outcome.records.iter().map(render::text).collect()
    };
    if let Err(e) = emit(&spec, &body) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if let Some(d) = outcome.diagnostic {
        eprintln!("{d}");
    }
    ExitCode::from(outcome.status as u8)
}
