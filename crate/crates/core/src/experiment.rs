//! Experiment configuration and the full audit pipeline: orbit tables,
//! post-critical verdicts, preimage fibers, cross-ratio searches, exponent
//! estimates and bound fits, emitted as a versioned JSON report plus CSV
//! tables.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algext::factor_bivariate;
use crate::dynmap::audit::{limit_theorem_audit, LimitReport};
use crate::dynmap::height::height_discrepancy_bound;
use crate::dynmap::map::ProjPoint;
use crate::dynmap::orbits::{bad_reduction_places, is_wandering, OrbitConfig, WanderingVerdict};
use crate::dynmap::preimage::{preimage_crossratio_audit, preimage_field_data};
use crate::error::{Error, Result};
use crate::ffcore::field::Field;
use crate::laurent::exponent::{bound_audit, exponent_estimate};
use crate::laurent::newton::NpConfig;
use crate::mapexpr::{map_to_source, parse_map, parse_point, point_to_source};

pub const REPORT_SCHEMA: &str = "ffdyn-report/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Budgets {
    pub cf_budget: i64,
    pub series_prec: i64,
    pub postcritical_n: u32,
    pub delta_num: i64,
    pub delta_den: i64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            cf_budget: 64,
            series_prec: 48,
            postcritical_n: 256,
            delta_num: 1,
            delta_den: 10,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonIsotrivialAssertion {
    pub asserted: bool,
    pub justification: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub field: String,
    pub map: String,
    pub seed_point: String,
    pub gammas: Vec<String>,
    pub n_range: (u32, u32),
    pub depth_m: u32,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default)]
    pub rng_seed: u64,
    pub non_isotrivial: NonIsotrivialAssertion,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_range.0 == 0 || self.n_range.1 < self.n_range.0 {
            return Err(Error::ConfigError("empty orbit range".into()));
        }
        if self.depth_m == 0 {
            return Err(Error::ConfigError("preimage depth must be positive".into()));
        }
        if self.budgets.cf_budget < 1 || self.budgets.series_prec < 1 || self.budgets.delta_den < 1
        {
            return Err(Error::ConfigError("budgets must be positive".into()));
        }
        Ok(())
    }
}

/// The assembled report: a JSON document, CSV rendering of the orbit table,
/// and the list of mathematical contract violations (exit code 2 when
/// nonempty).
#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub json: Value,
    pub orbit_csv: String,
    pub violations: Vec<String>,
}

fn rat_json(r: &Rational64) -> Value {
    json!({"num": *r.numer(), "den": *r.denom()})
}

/// Run the full pipeline for one configuration.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let field =
        Field::parse_spec(&cfg.field).map_err(|e| Error::ConfigError(format!("field: {e}")))?;
    let phi = parse_map(&cfg.map, &field).map_err(|e| Error::ConfigError(format!("map: {e}")))?;
    let seed = parse_point(&cfg.seed_point, &field)
        .map_err(|e| Error::ConfigError(format!("seed point: {e}")))?;
    let gammas: Vec<ProjPoint> = cfg
        .gammas
        .iter()
        .map(|g| parse_point(g, &field).map_err(|e| Error::ConfigError(format!("gamma: {e}"))))
        .collect::<Result<_>>()?;
    let orbit_cfg = OrbitConfig {
        max_steps: cfg.budgets.postcritical_n,
    };
    let np_cfg = NpConfig::default();
    let delta = Rational64::new(cfg.budgets.delta_num, cfg.budgets.delta_den);

    let mut violations: Vec<String> = Vec::new();

    // wandering check up front so configuration errors surface clearly
    match is_wandering(&phi, &seed)? {
        WanderingVerdict::Wandering => {}
        WanderingVerdict::Preperiodic { preperiod, period } => {
            return Err(Error::ConfigError(format!(
                "seed point is preperiodic (preperiod {preperiod}, period {period})"
            )));
        }
    }

    let limit = limit_theorem_audit(&phi, &seed, &gammas, cfg.n_range, delta, &orbit_cfg)?;

    // preimage fibers and cross-ratio audits per gamma
    let mut fibers_json = Vec::new();
    for gamma in &gammas {
        let fiber = preimage_field_data(&phi, cfg.depth_m, gamma)?;
        let dm = (phi.degree() as i64).pow(cfg.depth_m);
        let total: i64 = fiber
            .points
            .iter()
            .map(|p| p.degree as i64 * p.e as i64)
            .sum();
        if total != dm {
            violations.push(format!(
                "fiber degree formula failed over {}: {total} != {dm}",
                point_to_source(gamma)
            ));
        }
        let cr = if fiber.size() >= 4 {
            match preimage_crossratio_audit(
                &phi,
                gamma,
                cfg.depth_m,
                cfg.budgets.series_prec,
                &np_cfg,
            ) {
                Ok(rep) => json!({
                    "fiber_size": rep.fiber_size,
                    "factors": rep.factors.iter().map(|fr| json!({
                        "degree": fr.degree,
                        "status": format!("{:?}", fr.status),
                        "certificate": fr.certificate.as_ref().map(|c| c.to_json()),
                    })).collect::<Vec<_>>(),
                }),
                Err(e) => json!({"error": format!("{e}")}),
            }
        } else {
            json!({"skipped": "fiber too small"})
        };

        // exponent estimates per fiber factor of degree >= 2
        let mut exponents = Vec::new();
        for p in &fiber.points {
            let minpoly = match &p.minpoly {
                Some(g) if p.degree >= 2 => g,
                _ => continue,
            };
            match exponent_estimate(minpoly, cfg.budgets.cf_budget, &np_cfg) {
                Ok(rep) => {
                    let audit = bound_audit(rep.degree, &rep.witnesses, false);
                    if !audit.liouville.pass {
                        violations.push(format!(
                            "Liouville bound recheck failed for fiber factor of degree {}",
                            rep.degree
                        ));
                    }
                    exponents.push(json!({
                        "degree": rep.degree,
                        "best": rat_json(&rep.best),
                        "h_floor": rep.h_floor,
                        "witness_count": rep.witnesses.len(),
                        "unreachable_embeddings": rep.unreachable_embeddings,
                        "liouville": {
                            "fitted_c": rat_json(&audit.liouville.fitted_c),
                            "pass": audit.liouville.pass,
                        },
                    }));
                }
                Err(e) => exponents.push(json!({
                    "degree": p.degree,
                    "error": format!("{e}"),
                })),
            }
        }

        fibers_json.push(json!({
            "gamma": point_to_source(gamma),
            "depth": cfg.depth_m,
            "squarefree": fiber.squarefree,
            "derivative_vanishes": fiber.derivative_vanishes,
            "points": fiber.points.iter().map(|p| json!({
                "minpoly": p.minpoly.as_ref().map(|g| g.to_json()),
                "degree": p.degree,
                "ram_index": p.e,
            })).collect::<Vec<_>>(),
            "cross_ratio_audit": cr,
            "exponent_estimates": exponents,
        }));
    }

    let bad_red: Vec<Value> = bad_reduction_places(&phi)
        .into_iter()
        .map(|(place, e)| {
            let label = match place {
                crate::ffcore::ratfunc::Place::Infinity => "infinity".to_string(),
                crate::ffcore::ratfunc::Place::Finite(pi) => pi.to_string_var("t"),
            };
            json!({"place": label, "ord": e})
        })
        .collect();

    let orbit_csv = orbit_table_csv(&limit);
    let json = json!({
        "schema": REPORT_SCHEMA,
        "config": {
            "field": cfg.field,
            "map": cfg.map,
            "normalized_map": map_to_source(&phi),
            "seed_point": cfg.seed_point,
            "gammas": cfg.gammas,
            "n_range": cfg.n_range,
            "depth_m": cfg.depth_m,
            "budgets": {
                "cf_budget": cfg.budgets.cf_budget,
                "series_prec": cfg.budgets.series_prec,
                "postcritical_n": cfg.budgets.postcritical_n,
                "delta": {"num": cfg.budgets.delta_num, "den": cfg.budgets.delta_den},
            },
            "rng_seed": cfg.rng_seed,
            "non_isotrivial_assertion": {
                "asserted": cfg.non_isotrivial.asserted,
                "justification": cfg.non_isotrivial.justification,
            },
        },
        "map": {
            "degree": phi.degree(),
            "height_discrepancy_bound": height_discrepancy_bound(&phi),
            "bad_reduction": bad_red,
        },
        "postcritical": limit.postcritical.iter().map(|(g, v)| json!({
            "gamma": g, "verdict": format!("{v:?}"),
        })).collect::<Vec<_>>(),
        "wandering": "Wandering",
        "orbit_table": limit.rows.iter().map(orbit_row_json).collect::<Vec<_>>(),
        "limit_verdicts": {
            "max_tail_ratio": limit.max_tail_ratio.iter().map(|(k, v)| {
                json!({"gamma": k, "ratio": rat_json(v)})
            }).collect::<Vec<_>>(),
            "window_violations": limit.window_violations,
            "delta": {"num": *limit.delta.numer(), "den": *limit.delta.denom()},
            "advisory": true,
        },
        "fibers": fibers_json,
        "violations": violations,
    });

    Ok(ExperimentReport {
        json,
        orbit_csv,
        violations,
    })
}

fn orbit_row_json(row: &crate::dynmap::audit::OrbitRow) -> Value {
    json!({
        "n": row.n,
        "deg_a": row.deg_a,
        "deg_b": row.deg_b,
        "h": row.h,
        "lambda": row.lambda.iter().map(|(k, v)| json!({
            "gamma": k, "value": rat_json(v),
        })).collect::<Vec<_>>(),
    })
}

/// CSV rendering of the orbit table: one row per n, one lambda column per
/// target.
pub fn orbit_table_csv(limit: &LimitReport) -> String {
    let mut gammas: Vec<String> = Vec::new();
    for row in &limit.rows {
        for k in row.lambda.keys() {
            if !gammas.contains(k) {
                gammas.push(k.clone());
            }
        }
    }
    gammas.sort();
    let mut out = String::from("n,deg_a,deg_b,h");
    for g in &gammas {
        out.push_str(&format!(",lambda[{g}]"));
    }
    out.push('\n');
    for row in &limit.rows {
        let degb = row
            .deg_b
            .map(|d| d.to_string())
            .unwrap_or_else(|| "".to_string());
        out.push_str(&format!("{},{},{},{}", row.n, row.deg_a, degb, row.h));
        for g in &gammas {
            match row.lambda.get(g) {
                Some(v) => out.push_str(&format!(",{}/{}", v.numer(), v.denom())),
                None => out.push(','),
            }
        }
        out.push('\n');
    }
    out
}

/// Parse-and-print report for the `parse` subcommand.
pub fn describe_map(field_spec: &str, source: &str) -> Result<Value> {
    let field = Field::parse_spec(field_spec)?;
    let phi = parse_map(source, &field)?;
    let factors_num = factor_bivariate(phi.numerator());
    let factors_den = factor_bivariate(phi.denominator());
    Ok(json!({
        "schema": REPORT_SCHEMA,
        "field": field.spec_string(),
        "source": source,
        "normalized": map_to_source(&phi),
        "degree": phi.degree(),
        "polynomial": phi.is_polynomial(),
        "numerator_factors": factors_num.iter().map(|(g, e)| json!({
            "factor": format!("{g:?}"), "multiplicity": e,
        })).collect::<Vec<_>>(),
        "denominator_factors": factors_den.iter().map(|(g, e)| json!({
            "factor": format!("{g:?}"), "multiplicity": e,
        })).collect::<Vec<_>>(),
    }))
}
