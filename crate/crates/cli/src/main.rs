//! `gab`: projective duality tables, expression evaluation, the worked scene
//! and the randomized identity suites.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gab_core::check::{self, CheckConfig};
use gab_core::expr::{self, Environment, ExprError};
use gab_core::{pga, scene, Signature};

const USAGE_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "gab", version, about = "Conformal and projective geometric algebra toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the projective dual of every PGA basis blade.
    Table {
        /// Euclidean dimension.
        #[arg(short, default_value_t = 3, value_parser = clap::value_parser!(u8).range(2..=6))]
        n: u8,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate an expression and print its canonical form.
    Eval {
        /// Euclidean dimension.
        #[arg(short, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=8))]
        n: u8,
        /// Bind NAME to the value of EXPR; later bindings see earlier ones.
        #[arg(long = "let", value_name = "NAME=EXPR", value_parser = parse_binding)]
        bindings: Vec<(String, String)>,
        expr: String,
    },
    /// Build the worked scene in R^3 and report entities, derived values and
    /// incidence checks.
    Demo {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the seeded identity suites.
    Check {
        /// Dimension `N` or inclusive range `A..B`, within 2..6.
        #[arg(short, default_value = "3", value_parser = parse_dims)]
        n: RangeInclusive<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        iters: usize,
    },
}

fn parse_binding(text: &str) -> Result<(String, String), String> {
    let (name, value) = text.split_once('=').ok_or("expected NAME=EXPR")?;
    let name = name.trim();
    let mut chars = name.chars();
    let valid = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid {
        return Err(format!("`{name}` is not a valid name"));
    }
    if expr::is_blade_literal(name) || expr::Func::from_name(name).is_some() {
        return Err(format!("`{name}` is reserved"));
    }
    Ok((name.to_string(), value.to_string()))
}

fn parse_dims(text: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|e| format!("`{s}`: {e}"));
    let range = match text.split_once("..") {
        Some((lo, hi)) => parse(lo)?..=parse(hi)?,
        None => {
            let n = parse(text)?;
            n..=n
        }
    };
    if range.is_empty() || *range.start() < 2 || *range.end() > 6 {
        return Err(format!("`{text}` must lie within 2..6"));
    }
    Ok(range)
}

fn color_enabled() -> Result<bool, String> {
    match std::env::var("GAB_COLOR") {
        Err(_) => Ok(false),
        Ok(v) if v == "0" => Ok(false),
        Ok(v) if v == "1" => Ok(true),
        Ok(v) => Err(format!("GAB_COLOR must be 0 or 1, got `{v}`")),
    }
}

/// Error message with the offending source line and a caret under `offset`.
fn describe(err: &ExprError, source: &str, label: &str) -> String {
    let offset = err.offset().min(source.len());
    let column = source[..offset].chars().count();
    let mut out = format!("error in {label}: {err}\n");
    let _ = writeln!(out, "  {source}");
    let _ = writeln!(out, "  {}^", " ".repeat(column));
    out
}

fn eval(n: usize, bindings: &[(String, String)], text: &str) -> Result<String, String> {
    let sig = Signature::cga(n).map_err(|e| e.to_string())?;
    let mut env = Environment::new(sig);
    for (name, source) in bindings {
        let label = format!("--let {name}");
        let value = expr::parse(source)
            .and_then(|e| expr::evaluate(&e, &env))
            .map_err(|e| describe(&e, source, &label))?;
        env = env.with(name.clone(), value).map_err(|e| e.to_string())?;
    }
    let value = expr::parse(text)
        .and_then(|e| expr::evaluate(&e, &env))
        .map_err(|e| describe(&e, text, "expression"))?;
    Ok(value.to_string())
}

fn run(command: Command, color: bool) -> Result<(String, bool), String> {
    match command {
        Command::Table { n, format } => {
            let rows = pga::duality_table(n.into()).map_err(|e| e.to_string())?;
            let out = match format {
                Format::Text => pga::render_table_text(&rows),
                Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
            };
            Ok((out, true))
        }
        Command::Eval { n, bindings, expr } => eval(n.into(), &bindings, &expr).map(|s| (s + "\n", true)),
        Command::Demo { format } => {
            let report = scene::demo_scene().map_err(|e| e.to_string())?;
            let out = match format {
                Format::Text => scene::render_scene_text(&report, color),
                Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
            };
            Ok((out, report.all_pass()))
        }
        Command::Check { n, seed, iters } => {
            let config = CheckConfig {
                dims: n.collect(),
                iters,
                seed,
            };
            let results = check::run_all(&config, pga::sharp).map_err(|e| e.to_string())?;
            let ok = results.iter().all(|r| r.ok());
            Ok((check::render_results(&results, color), ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let color = match color_enabled() {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(USAGE_ERROR);
        }
    };
    match run(cli.command, color) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(msg) => {
            eprint!("{msg}");
            if !msg.ends_with('\n') {
                eprintln!();
            }
            ExitCode::FAILURE
        }
    }
}
