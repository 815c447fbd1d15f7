use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use stargate::descriptor::{self, Descriptor, SeriesOptions};
use stargate::exactnum::rational::parse_rational;
use stargate::exactnum::Rational;
use stargate::fieldforge::{forge, ForgeOptions, DEFAULT_PRECISION_BITS};
use stargate::starcheck::DEFAULT_PRIME_BOUND;
use stargate::Error;

const PRECISION_ENV: &str = "STARGATE_PRECISION_BITS";

#[derive(Parser, Debug)]
#[command(name = "stargate", version, about = "Exact checks on period-point descriptors")]
struct Cli {
    /// Largest prime scanned when looking for witness places.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME_BOUND,
          value_parser = clap::value_parser!(u64).range(2..))]
    prime_bound: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the ⋆ conditions and Σ-membership of the descriptor's point.
    StarCheck { input: PathBuf },
    /// Weight filtration profile, Jordan type and torus bound of the descriptor's operator.
    Filtration { input: PathBuf },
    /// Symplectic bases, Riemann relations and trivial-relation membership.
    Symplectic { input: PathBuf },
    /// Growth test on the descriptor's series and the height bound.
    GseriesCheck {
        input: PathBuf,
        /// Cap `C` in `d_n ≤ Cⁿ`, as an integer or `p/q`; overrides the descriptor.
        #[arg(long, value_parser = parse_cap)]
        cap: Option<Rational>,
        /// Truncate the series to this order before testing.
        #[arg(long)]
        order: Option<usize>,
        /// Use the strong variant of the height bound.
        #[arg(long)]
        strong: bool,
    },
    /// Build the CM field and designated places for a given β.
    Forge {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        beta: u64,
    },
    /// Regenerate the worked example descriptor and its verdict.
    Example,
}

fn parse_cap(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// A failure with its exit status: 2 for bad input, 3 for a broken internal invariant.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Internal(_)) { 3 } else { 2 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read_descriptor(path: &Path) -> Result<Descriptor, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    let desc: Descriptor = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Failure::input(format!("schema violation at `{path}`: {}", e.into_inner()))
    })?;
    desc.check_version()?;
    Ok(desc)
}

fn forge_options() -> Result<ForgeOptions, Failure> {
    let precision_bits = match std::env::var(PRECISION_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|&b| b >= 1)
            .ok_or_else(|| Failure::input(format!("{PRECISION_ENV} must be a positive integer, got {v:?}")))?,
        Err(_) => DEFAULT_PRECISION_BITS,
    };
    Ok(ForgeOptions {
        precision_bits,
        ..ForgeOptions::default()
    })
}

fn to_value<T: Serialize>(report: &T) -> Result<Value, Failure> {
    serde_json::to_value(report).map_err(|e| Failure {
        code: 3,
        message: format!("report serialization failed: {e}"),
    })
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    let bound = cli.prime_bound;
    match &cli.command {
        Command::StarCheck { input } => {
            to_value(&descriptor::run_star_check(&read_descriptor(input)?, bound)?)
        }
        Command::Filtration { input } => to_value(&descriptor::run_filtration(&read_descriptor(input)?)?),
        Command::Symplectic { input } => to_value(&descriptor::run_symplectic(&read_descriptor(input)?)?),
        Command::GseriesCheck {
            input,
            cap,
            order,
            strong,
        } => {
            let opts = SeriesOptions {
                order: *order,
                cap: cap.clone(),
                strong: *strong,
            };
            to_value(&descriptor::run_series(&read_descriptor(input)?, &opts)?)
        }
        Command::Forge { beta } => {
            let recipe = forge(*beta as usize, forge_options()?)?;
            to_value(&Descriptor {
                recipe: Some(recipe),
                ..Descriptor::empty()
            })
        }
        Command::Example => to_value(&descriptor::run_example(forge_options()?, bound)?),
    }
}

fn render_text(value: &Value, prefix: &str, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                render_text(v, &key, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                render_text(v, &format!("{prefix}[{i}]"), out);
            }
        }
        _ => {
            let _ = writeln!(out, "{prefix}: {value}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            let out = match cli.format {
                Format::Json => serde_json::to_string_pretty(&value).expect("value serializes") + "\n",
                Format::Text => {
                    let mut s = String::new();
                    render_text(&value, "", &mut s);
                    s
                }
            };
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_error_kind() {
        assert_eq!(Failure::from(Error::InvalidArgument("x".into())).code, 2);
        assert_eq!(Failure::from(Error::Precondition("x".into())).code, 2);
        assert_eq!(Failure::from(Error::Internal("x".into())).code, 3);
    }

    #[test]
    fn text_rendering_flattens() {
        let v: Value = serde_json::from_str(r#"{"a":{"b":[1,2]},"c":[{"d":true}]}"#).unwrap();
        let mut s = String::new();
        render_text(&v, "", &mut s);
        assert_eq!(s, "a.b: [1,2]\nc[0].d: true\n");
    }
}
