//! Python bindings: fields, rational maps, orbit/fiber/exponent audits, and
//! the disc combinatorics, with expressions passed as strings and exact
//! rationals returned as (numerator, denominator) pairs.

use num_rational::Rational64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ffdyn_core::berk;
use ffdyn_core::dynmap::audit::limit_theorem_audit;
use ffdyn_core::dynmap::height::{canonical_height, height_discrepancy_bound};
use ffdyn_core::dynmap::map::{ProjPoint, RationalMap as CoreMap};
use ffdyn_core::dynmap::orbits::{is_wandering, postcritical_test, OrbitConfig, WanderingVerdict};
use ffdyn_core::dynmap::preimage::preimage_field_data;
use ffdyn_core::dynmap::prox::proximity;
use ffdyn_core::experiment::{orbit_table_csv, run_experiment, ExperimentConfig};
use ffdyn_core::ffcore::field::Field as CoreField;
use ffdyn_core::laurent::exponent::{bound_audit, exponent_estimate};
use ffdyn_core::laurent::newton::NpConfig;
use ffdyn_core::mapexpr::{map_to_source, parse_map, parse_point, point_to_source};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rat_pair(r: &Rational64) -> (i64, i64) {
    (*r.numer(), *r.denom())
}

/// A finite constant field F_q.
#[pyclass(frozen)]
struct Field {
    inner: CoreField,
}

#[pymethods]
impl Field {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(Field {
            inner: CoreField::parse_spec(spec).map_err(err)?,
        })
    }

    fn spec(&self) -> String {
        self.inner.spec_string()
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    fn __repr__(&self) -> String {
        format!("Field({:?})", self.inner.spec_string())
    }
}

/// A rational map of degree >= 2 over F_q(t).
#[pyclass(frozen)]
struct RationalMap {
    field: CoreField,
    inner: CoreMap,
}

#[pymethods]
impl RationalMap {
    #[new]
    fn new(field: &Field, source: &str) -> PyResult<Self> {
        let inner = parse_map(source, &field.inner).map_err(err)?;
        Ok(RationalMap {
            field: field.inner.clone(),
            inner,
        })
    }

    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn source(&self) -> String {
        map_to_source(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("RationalMap({:?})", map_to_source(&self.inner))
    }

    /// Evaluate at a point expression ("0", "t", "(t+1)/t", "inf").
    fn eval(&self, point: &str) -> PyResult<String> {
        let p = parse_point(point, &self.field).map_err(err)?;
        Ok(point_to_source(&self.inner.eval(&p)))
    }

    /// Forward orbit [phi(a), ..., phi^n(a)] as point strings.
    fn orbit(&self, point: &str, n: usize) -> PyResult<Vec<String>> {
        let p = parse_point(point, &self.field).map_err(err)?;
        Ok(self
            .inner
            .orbit(&p, n)
            .iter()
            .map(point_to_source)
            .collect())
    }

    /// Post-critical verdict for a target point, as a string.
    fn postcritical(&self, gamma: &str) -> PyResult<String> {
        let g = parse_point(gamma, &self.field).map_err(err)?;
        Ok(format!(
            "{:?}",
            postcritical_test(&self.inner, &g, &OrbitConfig::default())
        ))
    }

    /// True when the forward orbit of the point is infinite.
    fn is_wandering(&self, point: &str) -> PyResult<bool> {
        let p = parse_point(point, &self.field).map_err(err)?;
        Ok(matches!(
            is_wandering(&self.inner, &p).map_err(err)?,
            WanderingVerdict::Wandering
        ))
    }

    /// The reported height-discrepancy constant.
    fn height_discrepancy_bound(&self) -> i64 {
        height_discrepancy_bound(&self.inner)
    }

    /// Canonical-height estimate after n steps: ((est_num, est_den),
    /// (err_num, err_den)).
    fn canonical_height(&self, point: &str, n: u32) -> PyResult<((i64, i64), (i64, i64))> {
        let p = parse_point(point, &self.field).map_err(err)?;
        let (est, errb) = canonical_height(&self.inner, &p, n);
        Ok((rat_pair(&est), rat_pair(&errb)))
    }

    /// Exact proximity lambda(P, Q) at infinity as (num, den).
    fn proximity(&self, p: &str, q: &str) -> PyResult<(i64, i64)> {
        let pp = parse_point(p, &self.field).map_err(err)?;
        let qq = parse_point(q, &self.field).map_err(err)?;
        Ok(rat_pair(&proximity(&pp, &qq).map_err(err)?))
    }

    /// Preimage fiber at depth m: list of (minpoly or None, degree,
    /// ramification index), plus the separability flag.
    #[allow(clippy::type_complexity)]
    fn preimage_fiber(
        &self,
        gamma: &str,
        m: u32,
    ) -> PyResult<(Vec<(Option<String>, usize, u32)>, bool)> {
        let g = parse_point(gamma, &self.field).map_err(err)?;
        let fiber = preimage_field_data(&self.inner, m, &g).map_err(err)?;
        let pts = fiber
            .points
            .iter()
            .map(|p| {
                (
                    p.minpoly.as_ref().map(|mp| format!("{mp:?}")),
                    p.degree,
                    p.e,
                )
            })
            .collect();
        Ok((pts, fiber.squarefree))
    }

    /// Orbit limit-ratio audit as a JSON string.
    #[pyo3(signature = (seed, gammas, lo, hi, delta_num=1, delta_den=10))]
    fn limit_audit(
        &self,
        seed: &str,
        gammas: Vec<String>,
        lo: u32,
        hi: u32,
        delta_num: i64,
        delta_den: i64,
    ) -> PyResult<String> {
        let s = parse_point(seed, &self.field).map_err(err)?;
        let gs: Vec<ProjPoint> = gammas
            .iter()
            .map(|g| parse_point(g, &self.field).map_err(err))
            .collect::<PyResult<_>>()?;
        let rep = limit_theorem_audit(
            &self.inner,
            &s,
            &gs,
            (lo, hi),
            Rational64::new(delta_num, delta_den),
            &OrbitConfig::default(),
        )
        .map_err(err)?;
        Ok(orbit_table_csv(&rep))
    }
}

/// Approximation-exponent estimate for the roots of the numerator of the
/// given expression; returns a JSON string with the witnesses and the
/// fitted Liouville constant.
#[pyfunction]
#[pyo3(signature = (field, source, budget=64))]
fn exponent_report(field: &Field, source: &str, budget: i64) -> PyResult<String> {
    let phi = parse_map(source, &field.inner).map_err(err)?;
    let g = phi.numerator().clone();
    let rep = exponent_estimate(&g, budget, &NpConfig::default()).map_err(err)?;
    let audit = bound_audit(rep.degree, &rep.witnesses, false);
    let v = serde_json::json!({
        "degree": rep.degree,
        "budget": rep.budget,
        "best": {"num": *rep.best.numer(), "den": *rep.best.denom()},
        "h_floor": rep.h_floor,
        "witness_count": rep.witnesses.len(),
        "liouville_fitted_c": {
            "num": *audit.liouville.fitted_c.numer(),
            "den": *audit.liouville.fitted_c.denom(),
        },
        "liouville_pass": audit.liouville.pass,
    });
    Ok(v.to_string())
}

/// A point of the Berkovich line: a classical point or a closed disc.
#[pyclass(frozen)]
struct BerkPoint {
    inner: berk::BerkPoint,
    field: CoreField,
}

#[pymethods]
impl BerkPoint {
    /// Type I point from a point expression.
    #[staticmethod]
    fn type_i(field: &Field, center: &str) -> PyResult<Self> {
        let p = parse_point(center, &field.inner).map_err(err)?;
        match p {
            ProjPoint::Finite(x) => Ok(BerkPoint {
                inner: berk::BerkPoint::type_i_rational(x),
                field: field.inner.clone(),
            }),
            ProjPoint::Infinity => Ok(BerkPoint {
                inner: berk::BerkPoint::Infty,
                field: field.inner.clone(),
            }),
        }
    }

    /// The disc with the given center and log-radius num/den.
    #[staticmethod]
    fn disc(field: &Field, center: &str, num: i64, den: i64) -> PyResult<Self> {
        let p = parse_point(center, &field.inner).map_err(err)?;
        match p {
            ProjPoint::Finite(x) => Ok(BerkPoint {
                inner: berk::BerkPoint::disc(x, Rational64::new(num, den)),
                field: field.inner.clone(),
            }),
            ProjPoint::Infinity => Err(err("disc centers must be finite")),
        }
    }

    fn kind(&self) -> String {
        format!("{:?}", self.inner.kind())
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __repr__(&self) -> String {
        format!("BerkPoint({})", self.inner.to_json())
    }
}

fn logval_to_py(v: berk::LogVal) -> PyResult<(i64, i64)> {
    match v {
        berk::LogVal::Fin(r) => Ok(rat_pair(&r)),
        berk::LogVal::NegInf => Err(err("value is -infinity")),
        berk::LogVal::PosInf => Err(err("value is +infinity")),
    }
}

/// Hsia kernel of two finite points, in log scale; raises on -infinity
/// (equal Type I points).
#[pyfunction]
fn hsia(a: &BerkPoint, b: &BerkPoint) -> PyResult<(i64, i64)> {
    if a.field != b.field {
        return Err(err("points over different fields"));
    }
    logval_to_py(berk::hsia(&a.inner, &b.inner).map_err(err)?)
}

/// Log of the kernel cross-ratio of four distinct finite points.
#[pyfunction]
fn cross_ratio_log(
    a: &BerkPoint,
    b: &BerkPoint,
    c: &BerkPoint,
    d: &BerkPoint,
) -> PyResult<(i64, i64)> {
    logval_to_py(berk::cross_ratio_log(&a.inner, &b.inner, &c.inner, &d.inner).map_err(err)?)
}

/// Run a full experiment from a JSON configuration string; returns the
/// report JSON. Raises on configuration errors; mathematical contract
/// violations are listed in the report's "violations" field.
#[pyfunction]
fn run_experiment_json(config: &str) -> PyResult<String> {
    let cfg: ExperimentConfig = serde_json::from_str(config).map_err(err)?;
    let rep = run_experiment(&cfg).map_err(err)?;
    Ok(rep.json.to_string())
}

#[pymodule]
fn ffdyn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<RationalMap>()?;
    m.add_class::<BerkPoint>()?;
    m.add_function(wrap_pyfunction!(exponent_report, m)?)?;
    m.add_function(wrap_pyfunction!(hsia, m)?)?;
    m.add_function(wrap_pyfunction!(cross_ratio_log, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment_json, m)?)?;
    Ok(())
}
