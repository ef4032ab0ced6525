//! ffdyn: exact arithmetic dynamics over rational function fields in
//! characteristic p.
//!
//! Exit codes: 0 on success, 1 on configuration or usage errors, 2 when a
//! mathematical contract check fails inside an audit.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::Rational64;
use serde_json::json;

use ffdyn_core::dynmap::audit::limit_theorem_audit;
use ffdyn_core::dynmap::orbits::{is_wandering, postcritical_test, OrbitConfig};
use ffdyn_core::dynmap::preimage::{preimage_crossratio_audit, preimage_field_data};
use ffdyn_core::experiment::{
    describe_map, orbit_table_csv, run_experiment, Budgets, ExperimentConfig,
    NonIsotrivialAssertion, REPORT_SCHEMA,
};
use ffdyn_core::ffcore::field::Field;
use ffdyn_core::laurent::exponent::{bound_audit, exponent_estimate};
use ffdyn_core::laurent::newton::NpConfig;
use ffdyn_core::mapexpr::{parse_map, parse_point, point_to_source};

#[derive(Parser)]
#[command(
    name = "ffdyn",
    version,
    about = "Exact arithmetic dynamics over F_q(t)"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Field spec: "p=5" or "q=25;modulus=1,1,1"
    #[arg(long, default_value = "p=5")]
    field: String,
    /// Map expression in z and t, e.g. "(z^2 + t)/(z^2 - 1)"
    #[arg(long)]
    map: String,
    /// Output format
    #[arg(long, default_value = "json")]
    format: String,
    /// Directory for report files (stdout when absent)
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a map expression and report its normalized form and factors
    Parse {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Forward orbit table of a seed point with proximity columns
    Orbit {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        seed_point: String,
        /// Targets for the proximity columns (repeatable)
        #[arg(long = "gamma")]
        gammas: Vec<String>,
        /// Orbit range "lo..hi"
        #[arg(long, default_value = "1..10")]
        n_range: String,
        /// Window slack for the degree-ratio check, as "num/den"
        #[arg(long, default_value = "1/10")]
        delta: String,
    },
    /// Post-critical verdict for a target point
    Postcritical {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        gamma: String,
        /// Fallback orbit budget
        #[arg(long, default_value_t = 256)]
        budget: u32,
    },
    /// Preimage fiber data at a given depth
    Preimages {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        gamma: String,
        #[arg(long, default_value_t = 1)]
        depth_m: u32,
    },
    /// Approximation-exponent estimate for the roots of the numerator
    Exponent {
        #[command(flatten)]
        common: CommonArgs,
        /// Height budget for the convergent search
        #[arg(long, default_value_t = 64)]
        budget: i64,
    },
    /// Orbit limit-ratio audit (advisory verdicts plus the raw table)
    AuditLimit {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        seed_point: String,
        #[arg(long = "gamma")]
        gammas: Vec<String>,
        #[arg(long, default_value = "6..12")]
        n_range: String,
        #[arg(long, default_value = "1/10")]
        delta: String,
    },
    /// Preimage fiber + conjugate cross-ratio audit
    AuditFibers {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        gamma: String,
        #[arg(long, default_value_t = 2)]
        depth_m: u32,
        /// Series precision for the embeddings
        #[arg(long, default_value_t = 48)]
        prec: i64,
    },
    /// Full experiment from a JSON config file or inline flags
    Run {
        /// JSON config file; inline flags are used when absent
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "p=5")]
        field: String,
        #[arg(long, default_value = "z^2 + t")]
        map: String,
        #[arg(long, default_value = "0")]
        seed_point: String,
        #[arg(long = "gamma")]
        gammas: Vec<String>,
        #[arg(long, default_value = "1..8")]
        n_range: String,
        #[arg(long, default_value_t = 1)]
        depth_m: u32,
        #[arg(long, default_value_t = 48)]
        prec: i64,
        #[arg(long, default_value_t = 64)]
        budget: i64,
        #[arg(long, default_value = "1/10")]
        delta: String,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        /// Assert non-isotriviality (echoed into the report)
        #[arg(long, default_value = "")]
        non_isotrivial_justification: String,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: String,
    },
}

fn parse_range(s: &str) -> anyhow::Result<(u32, u32)> {
    let parts: Vec<&str> = s.split("..").collect();
    if parts.len() != 2 {
        anyhow::bail!("range must look like 6..12");
    }
    Ok((parts[0].trim().parse()?, parts[1].trim().parse()?))
}

fn parse_ratio(s: &str) -> anyhow::Result<Rational64> {
    let parts: Vec<&str> = s.split('/').collect();
    match parts.len() {
        1 => Ok(Rational64::from_integer(parts[0].trim().parse()?)),
        2 => Ok(Rational64::new(
            parts[0].trim().parse()?,
            parts[1].trim().parse()?,
        )),
        _ => anyhow::bail!("ratio must look like 1/10"),
    }
}

fn emit(
    value: &serde_json::Value,
    csv: Option<&str>,
    common_format: &str,
    out_dir: &Option<PathBuf>,
) -> anyhow::Result<()> {
    match out_dir {
        None => {
            if common_format == "csv" {
                if let Some(c) = csv {
                    print!("{c}");
                } else {
                    anyhow::bail!("no CSV table for this subcommand");
                }
            } else {
                println!("{}", serde_json::to_string_pretty(value)?);
            }
        }
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(
                dir.join("report.json"),
                serde_json::to_string_pretty(value)?,
            )?;
            if let Some(c) = csv {
                fs::write(dir.join("orbit.csv"), c)?;
            }
            eprintln!("wrote {}", dir.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.cmd {
        Cmd::Parse { common } => {
            let v = describe_map(&common.field, &common.map)?;
            emit(&v, None, &common.format, &common.out_dir)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Orbit {
            common,
            seed_point,
            gammas,
            n_range,
            delta,
        }
        | Cmd::AuditLimit {
            common,
            seed_point,
            gammas,
            n_range,
            delta,
        } => {
            let field = Field::parse_spec(&common.field)?;
            let phi = parse_map(&common.map, &field)?;
            let seed = parse_point(&seed_point, &field)?;
            let gs: Vec<_> = gammas
                .iter()
                .map(|g| parse_point(g, &field))
                .collect::<Result<_, _>>()?;
            let range = parse_range(&n_range)?;
            let delta = parse_ratio(&delta)?;
            let rep = limit_theorem_audit(&phi, &seed, &gs, range, delta, &OrbitConfig::default())?;
            let csv = orbit_table_csv(&rep);
            let v = json!({
                "schema": REPORT_SCHEMA,
                "map": common.map,
                "seed_point": seed_point,
                "postcritical": rep.postcritical.iter().map(|(g, p)| json!({
                    "gamma": g, "verdict": format!("{p:?}"),
                })).collect::<Vec<_>>(),
                "rows": rep.rows.iter().map(|r| json!({
                    "n": r.n, "deg_a": r.deg_a, "deg_b": r.deg_b, "h": r.h,
                    "lambda": r.lambda.iter().map(|(k, v)| json!({
                        "gamma": k, "num": *v.numer(), "den": *v.denom(),
                    })).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "max_tail_ratio": rep.max_tail_ratio.iter().map(|(k, v)| json!({
                    "gamma": k, "num": *v.numer(), "den": *v.denom(),
                })).collect::<Vec<_>>(),
                "window_violations": rep.window_violations,
            });
            emit(&v, Some(&csv), &common.format, &common.out_dir)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Postcritical {
            common,
            gamma,
            budget,
        } => {
            let field = Field::parse_spec(&common.field)?;
            let phi = parse_map(&common.map, &field)?;
            let g = parse_point(&gamma, &field)?;
            let verdict = postcritical_test(&phi, &g, &OrbitConfig { max_steps: budget });
            let wander = is_wandering(&phi, &g)?;
            let v = json!({
                "schema": REPORT_SCHEMA,
                "gamma": point_to_source(&g),
                "verdict": format!("{verdict:?}"),
                "orbit": format!("{wander:?}"),
            });
            emit(&v, None, &common.format, &common.out_dir)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Preimages {
            common,
            gamma,
            depth_m,
        } => {
            let field = Field::parse_spec(&common.field)?;
            let phi = parse_map(&common.map, &field)?;
            let g = parse_point(&gamma, &field)?;
            let fiber = preimage_field_data(&phi, depth_m, &g)?;
            let v = json!({
                "schema": REPORT_SCHEMA,
                "gamma": point_to_source(&g),
                "depth": depth_m,
                "squarefree": fiber.squarefree,
                "derivative_vanishes": fiber.derivative_vanishes,
                "points": fiber.points.iter().map(|p| json!({
                    "minpoly": p.minpoly.as_ref().map(|m| format!("{m:?}")),
                    "degree": p.degree,
                    "ram_index": p.e,
                })).collect::<Vec<_>>(),
            });
            emit(&v, None, &common.format, &common.out_dir)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Exponent { common, budget } => {
            let field = Field::parse_spec(&common.field)?;
            let phi = ffdyn_core::mapexpr::parse_expr(&common.map)
                .map_err(anyhow::Error::from)
                .and_then(|_| parse_defining_poly(&common.map, &field))?;
            let rep = exponent_estimate(&phi, budget, &NpConfig::default())?;
            let audit = bound_audit(rep.degree, &rep.witnesses, false);
            let exit = if audit.liouville.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            };
            let v = json!({
                "schema": REPORT_SCHEMA,
                "degree": rep.degree,
                "budget": rep.budget,
                "h_floor": rep.h_floor,
                "best": {"num": *rep.best.numer(), "den": *rep.best.denom()},
                "unreachable_embeddings": rep.unreachable_embeddings,
                "witnesses": rep.witnesses.iter().map(|w| json!({
                    "r": format!("{:?}", w.r),
                    "h": w.h,
                    "w": {"num": *w.w.numer(), "den": *w.w.denom()},
                    "embedding": w.embedding,
                })).collect::<Vec<_>>(),
                "liouville": {
                    "fitted_c": {"num": *audit.liouville.fitted_c.numer(), "den": *audit.liouville.fitted_c.denom()},
                    "pass": audit.liouville.pass,
                },
            });
            emit(&v, None, &common.format, &common.out_dir)?;
            Ok(exit)
        }
        Cmd::AuditFibers {
            common,
            gamma,
            depth_m,
            prec,
        } => {
            let field = Field::parse_spec(&common.field)?;
            let phi = parse_map(&common.map, &field)?;
            let g = parse_point(&gamma, &field)?;
            let rep = preimage_crossratio_audit(&phi, &g, depth_m, prec, &NpConfig::default())?;
            let v = json!({
                "schema": REPORT_SCHEMA,
                "gamma": point_to_source(&g),
                "depth": rep.m,
                "fiber_size": rep.fiber_size,
                "factors": rep.factors.iter().map(|fr| json!({
                    "degree": fr.degree,
                    "status": format!("{:?}", fr.status),
                    "certificate": fr.certificate.as_ref().map(|c| format!("{c:?}")),
                })).collect::<Vec<_>>(),
            });
            emit(&v, None, &common.format, &common.out_dir)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Run {
            config,
            field,
            map,
            seed_point,
            gammas,
            n_range,
            depth_m,
            prec,
            budget,
            delta,
            rng_seed,
            non_isotrivial_justification,
            out_dir,
            format,
        } => {
            let cfg: ExperimentConfig = match config {
                Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
                None => {
                    let range = parse_range(&n_range)?;
                    let d = parse_ratio(&delta)?;
                    ExperimentConfig {
                        field,
                        map,
                        seed_point,
                        gammas: if gammas.is_empty() {
                            vec!["inf".into()]
                        } else {
                            gammas
                        },
                        n_range: range,
                        depth_m,
                        budgets: Budgets {
                            cf_budget: budget,
                            series_prec: prec,
                            postcritical_n: 256,
                            delta_num: *d.numer(),
                            delta_den: *d.denom(),
                        },
                        rng_seed,
                        non_isotrivial: NonIsotrivialAssertion {
                            asserted: !non_isotrivial_justification.is_empty(),
                            justification: non_isotrivial_justification,
                        },
                    }
                }
            };
            match run_experiment(&cfg) {
                Ok(rep) => {
                    emit(&rep.json, Some(&rep.orbit_csv), &format, &out_dir)?;
                    if rep.violations.is_empty() {
                        Ok(ExitCode::SUCCESS)
                    } else {
                        for v in &rep.violations {
                            eprintln!("contract violation: {v}");
                        }
                        Ok(ExitCode::from(2))
                    }
                }
                Err(ffdyn_core::Error::ConfigError(msg)) => {
                    eprintln!("configuration error: {msg}");
                    Ok(ExitCode::from(1))
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

/// For the exponent subcommand the expression defines an algebraic element:
/// the numerator of the parsed map-like expression is its defining
/// polynomial in z.
fn parse_defining_poly(
    source: &str,
    field: &Field,
) -> anyhow::Result<ffdyn_core::ffcore::kpoly::KPoly> {
    // reuse the map parser but allow degree >= 2 only
    let phi = parse_map(source, field)?;
    Ok(phi.numerator().clone())
}
