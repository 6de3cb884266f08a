mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde::Serialize;

use args::{Cli, Format};
use commands::{Failure, Output};

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    parameters: &'a std::collections::BTreeMap<String, String>,
    results: &'a serde_json::Value,
    status: &'a str,
    elapsed_ms: Option<u64>,
}

fn render(out: &Output, format: Format, elapsed_ms: Option<u64>) -> Result<String, String> {
    Ok(match format {
        Format::Pretty => {
            let mut s = out.pretty.clone();
            if let Some(ms) = elapsed_ms {
                s.push_str(&format!("elapsed: {ms} ms\n"));
            }
            s
        }
        Format::Json => {
            let env = Envelope {
                command: out.command,
                parameters: &out.parameters,
                results: &out.results,
                status: &out.status,
                elapsed_ms,
            };
            let mut s = serde_json::to_string_pretty(&env).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            for row in &out.csv {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let g = &cli.global;
    let start = Instant::now();
    let result = scheme_spectra::par::with_jobs(g.jobs, || commands::run(&cli.command, g.timing));
    let elapsed = g.timing.then(|| start.elapsed().as_millis() as u64);
    let out = match result {
        Ok(o) => o,
        Err(Failure::Usage(m)) => {
            eprintln!("scheme-spectra: {m}");
            return ExitCode::from(2);
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal inconsistency: {m}");
            return ExitCode::from(1);
        }
    };
    let text = match render(&out, g.format, elapsed) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot render output: {e}");
            return ExitCode::from(1);
        }
    };
    let written = match &g.out {
        Some(path) => std::fs::write(path, text.as_bytes()).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(out.exit as u8)
}
