//! basicav: exact isogeny-class computations over finite fields.
//!
//! Polynomial coefficients on the command line are monic, leading
//! coefficient first: `basicav weil check --q 2 -- 1 -1 2` checks
//! t^2 - t + 2 over F_2. Every rational in the JSON output is an exact
//! "num/den" string.

use basicav::atlas::{write_atlas, AtlasConfig, AtlasError, OutputFormat};
use basicav::record::AtlasRecord;
use basicav::{format_rat, parse_rat};
use basicav_core::exact::IntPoly;
use basicav_core::mass::{lie_type_check, polarization_fiber_bound, sqrt_p_mass, FiberKind};
use basicav_core::quadratic::{
    construct_valuation_element, fundamental_unit, zeta_minus_one, QuadError, QuadraticField,
};
use basicav_core::slopes::{frobenius_power_bound, SlopeError};
use basicav_core::weil::{validate_weil, PrimePower};
use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::json;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "basicav",
    about = "Exact classification of isogeny classes of abelian varieties over finite fields",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weil polynomial operations.
    Weil {
        #[command(subcommand)]
        command: WeilCommand,
    },
    /// Slope decomposition of a Weil polynomial, with basicness and
    /// supersingularity flags.
    Slopes {
        /// Field size q = p^s.
        #[arg(long)]
        q: u64,
        /// Monic coefficients, leading first (e.g. 1 -1 2 for t^2 - t + 2).
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, num_args = 1..)]
        coefficients: Vec<i64>,
    },
    /// Mass of the principally polarized sqrt(p) isogeny class:
    /// zeta_{Q(sqrt p)}(-1)/4, with the polarization fiber bound.
    Mass {
        #[arg(long)]
        p: u64,
    },
    /// Enumerate isogeny classes into a JSONL/JSON/CSV atlas.
    Atlas {
        /// Field size; repeat for several fields (--q 2 --q 3).
        #[arg(long, required = true)]
        q: Vec<u64>,
        /// Dimension (1 or 2).
        #[arg(long)]
        g: u32,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Output format: jsonl (default), json, or csv.
        #[arg(long, default_value = "jsonl")]
        format: OutputFormat,
        /// Worker threads; defaults to BASICAV_JOBS or 1.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Construct (s, u) with u * conj(u) = p^s and prescribed valuations.
    ValuationElement {
        /// Squarefree radicand of the quadratic field.
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        p: u64,
        /// Comma-separated slopes, one per prime over p in splitting order
        /// (e.g. "1,0" or "1/2").
        #[arg(long)]
        slopes: String,
    },
    /// Fundamental unit of a real quadratic field.
    Unit {
        #[arg(long)]
        d: i64,
    },
    /// zeta_F(-1) for F = Q(sqrt(d)), d > 1, by two cross-checked formulas.
    Zeta {
        #[arg(long)]
        d: i64,
    },
    /// Uniform Frobenius power bound: lcm of all m with phi(m) <= 4g^2.
    Bound {
        #[arg(long)]
        g: u32,
    },
    /// Lie-type report for the sqrt(p) superspecial surface.
    LieType {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Subcommand)]
enum WeilCommand {
    /// Validate a monic polynomial as a q-Weil polynomial.
    Check {
        #[arg(long)]
        q: u64,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, num_args = 1..)]
        coefficients: Vec<i64>,
    },
}

/// Domain rejection (exit 1) vs unsupported case (exit 3).
enum CliError {
    Rejection(String),
    Unsupported(String),
}

impl From<SlopeError> for CliError {
    fn from(e: SlopeError) -> Self {
        match e {
            SlopeError::NonRegularCase { .. } => CliError::Unsupported(e.to_string()),
            other => CliError::Rejection(other.to_string()),
        }
    }
}

impl From<QuadError> for CliError {
    fn from(e: QuadError) -> Self {
        match e {
            QuadError::UnsupportedField => CliError::Unsupported(e.to_string()),
            other => CliError::Rejection(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Rejection(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Unsupported(msg)) => {
            eprintln!("unsupported: {msg}");
            ExitCode::from(3)
        }
    }
}

fn parse_poly(coefficients: &[i64]) -> Result<IntPoly, CliError> {
    if coefficients.first() != Some(&1) {
        return Err(CliError::Rejection(
            "coefficients must describe a monic polynomial (leading 1 first)".into(),
        ));
    }
    Ok(IntPoly::from_descending_i64(coefficients))
}

fn prime_power(q: u64) -> Result<PrimePower, CliError> {
    PrimePower::from_q(q).map_err(|e| CliError::Rejection(e.to_string()))
}

fn print_json(value: &serde_json::Value) {
    println!("{value}");
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Weil {
            command: WeilCommand::Check { q, coefficients },
        } => {
            let qq = prime_power(q)?;
            let f = parse_poly(&coefficients)?;
            match validate_weil(&f, qq) {
                Ok(w) => {
                    print_json(&json!({ "valid": true, "g": w.g() }));
                    Ok(())
                }
                Err(rej) => {
                    print_json(&json!({
                        "valid": false,
                        "reason": rej.reason_code(),
                        "detail": rej.to_string(),
                    }));
                    Err(CliError::Rejection(rej.to_string()))
                }
            }
        }
        Command::Slopes { q, coefficients } => {
            let qq = prime_power(q)?;
            let f = parse_poly(&coefficients)?;
            let w = validate_weil(&f, qq).map_err(|e| CliError::Rejection(e.to_string()))?;
            let record = AtlasRecord::build(&w)?;
            println!(
                "{}",
                serde_json::to_string(&record).expect("record serializes")
            );
            Ok(())
        }
        Command::Mass { p } => {
            let report = sqrt_p_mass(p).map_err(|e| CliError::Rejection(e.to_string()))?;
            let fiber =
                polarization_fiber_bound(p).map_err(|e| CliError::Rejection(e.to_string()))?;
            print_json(&json!({
                "p": p,
                "zeta": format_rat(&report.zeta_minus_one),
                "mass": format_rat(&report.mass.value),
                "nonempty": report.nonempty,
                "fiber": match fiber.kind {
                    FiberKind::ExactlyOne => "exactly-one",
                    FiberKind::AtMostTwo => "at-most-two",
                },
                "fundamental_unit_norm": fiber.witness,
            }));
            Ok(())
        }
        Command::Atlas {
            q,
            g,
            out,
            format,
            jobs,
        } => {
            let jobs = jobs
                .or_else(|| {
                    std::env::var("BASICAV_JOBS")
                        .ok()
                        .and_then(|v| v.parse().ok())
                })
                .unwrap_or(1);
            let cfg = AtlasConfig {
                q_values: q,
                g,
                format,
                jobs,
            };
            let summary = match out {
                Some(path) => {
                    let file = std::fs::File::create(&path)
                        .map_err(|e| CliError::Rejection(format!("{}: {e}", path.display())))?;
                    let mut writer = std::io::BufWriter::new(file);
                    let summary = write_atlas(&cfg, &mut writer).map_err(atlas_err)?;
                    writer.flush().map_err(|e| CliError::Rejection(e.to_string()))?;
                    summary
                }
                None => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    write_atlas(&cfg, &mut lock).map_err(atlas_err)?
                }
            };
            print_json(&serde_json::to_value(&summary).expect("summary serializes"));
            Ok(())
        }
        Command::ValuationElement { d, p, slopes } => {
            let field = QuadraticField::new(d)?;
            let targets = slopes
                .split(',')
                .map(|s| parse_rat(s).map_err(CliError::Rejection))
                .collect::<Result<Vec<_>, _>>()?;
            let out = construct_valuation_element(&field, p, &targets)?;
            print_json(&json!({
                "d": d,
                "p": p,
                "s": out.s,
                "u": out.u.to_string(),
                "norm": format!("{}^{}", p, out.s),
                "slopes": slopes,
            }));
            Ok(())
        }
        Command::Unit { d } => {
            let field = QuadraticField::new(d)?;
            let fu = fundamental_unit(&field)?;
            print_json(&json!({
                "d": d,
                "unit": fu.unit.to_string(),
                "norm": fu.norm,
            }));
            Ok(())
        }
        Command::Zeta { d } => {
            let field = QuadraticField::new(d)?;
            let z = zeta_minus_one(&field)?;
            print_json(&json!(format_rat(&z)));
            Ok(())
        }
        Command::Bound { g } => {
            if g == 0 {
                return Err(CliError::Rejection("g must be positive".into()));
            }
            let b = frobenius_power_bound(g);
            match b.to_u64() {
                Some(n) => print_json(&json!(n)),
                None => print_json(&json!(b.to_string())),
            }
            Ok(())
        }
        Command::LieType { p } => {
            if !basicav_core::exact::is_prime_u64(p) {
                return Err(CliError::Rejection(format!("{p} is not prime")));
            }
            let report = lie_type_check(p);
            print_json(&json!({
                "p": p,
                "cokernel_invariants": report.cokernel_invariants,
                "lie_dim": report.lie_dim,
                "length": report.length,
                "sqrt_p_acts_zero": report.sqrt_p_acts_zero,
                "lie_type": [report.lie_type.0, report.lie_type.1],
            }));
            Ok(())
        }
    }
}

fn atlas_err(e: AtlasError) -> CliError {
    match e {
        AtlasError::Slope(SlopeError::NonRegularCase { .. }) => {
            CliError::Unsupported(e.to_string())
        }
        other => CliError::Rejection(other.to_string()),
    }
}
