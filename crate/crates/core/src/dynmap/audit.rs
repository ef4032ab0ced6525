//! Empirical audit harnesses: the preimage proximity bound, the orbit
//! limit-ratio table, and the search oracle for maps with non-post-critical
//! 0 and infinity.

use std::collections::BTreeMap;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::ffcore::field::Field;
use crate::ffcore::kpoly::KPoly;
use crate::ffcore::ratfunc::RatFunc;
use crate::laurent::newton::{newton_puiseux_roots_partial, NpConfig, PuiseuxRoot};

use super::map::{ProjPoint, RationalMap};
use super::orbits::{
    is_wandering, postcritical_test, OrbitConfig, PostcriticalVerdict, WanderingVerdict,
};
use super::preimage::preimage_field_data;
use super::prox::{proximity, proximity_to_root};

/// One sample row of the inverse-bound audit.
#[derive(Clone, Debug)]
pub struct InverseBoundRow {
    pub sample: String,
    pub lhs: Rational64,
    pub best_lambda: Rational64,
    pub residual: Rational64,
}

#[derive(Clone, Debug)]
pub struct InverseBoundReport {
    pub m: u32,
    pub e_max: u32,
    /// minimal C with lambda(phi^m P, gamma) <= e_max * max_alpha
    /// lambda(P, alpha) + C over the samples
    pub fitted_c: Rational64,
    pub rows: Vec<InverseBoundRow>,
    pub skipped: usize,
}

/// Fit the constant in the preimage proximity bound over the samples.
pub fn inverse_bound_audit(
    phi: &RationalMap,
    m: u32,
    gamma: &ProjPoint,
    samples: &[ProjPoint],
    cfg: &NpConfig,
) -> Result<InverseBoundReport> {
    let fiber = preimage_field_data(phi, m, gamma)?;
    let e_max = fiber.points.iter().map(|p| p.e).max().unwrap_or(1);
    let it = phi.iterate(m)?;
    // precision for series comparisons against fiber points
    let max_h = samples.iter().map(|p| p.height()).max().unwrap_or(1).max(1);
    let prec = (phi.degree() as i64).pow(m) * max_h + 64;

    // collect fiber embeddings once
    let mut rational_pts: Vec<ProjPoint> = Vec::new();
    let mut embedded: Vec<PuiseuxRoot> = Vec::new();
    let mut unreachable = 0usize;
    for p in &fiber.points {
        match &p.minpoly {
            None => rational_pts.push(ProjPoint::Infinity),
            Some(g) if p.degree == 1 => {
                let root = g.coeff(0).neg().div(&g.coeff(1))?;
                rational_pts.push(ProjPoint::Finite(root));
            }
            Some(g) => {
                let (roots, un) = newton_puiseux_roots_partial(g, prec, cfg)?;
                unreachable += un;
                embedded.extend(roots);
            }
        }
    }

    let mut rows = Vec::new();
    let mut fitted = None::<Rational64>;
    let mut skipped = 0usize;
    for sample in samples {
        let image = it.eval(sample);
        if &image == gamma {
            skipped += 1;
            continue;
        }
        let lhs = proximity(&image, gamma)?;
        let mut best = None::<Rational64>;
        for rp in &rational_pts {
            if rp == sample {
                continue;
            }
            let lam = proximity(sample, rp)?;
            best = Some(best.map_or(lam, |b: Rational64| b.max(lam)));
        }
        for root in &embedded {
            let lam = proximity_to_root(sample, root)?;
            best = Some(best.map_or(lam, |b: Rational64| b.max(lam)));
        }
        let best = best.ok_or_else(|| Error::InvalidInput("empty fiber".into()))?;
        let residual = lhs - Rational64::from_integer(e_max as i64) * best;
        fitted = Some(fitted.map_or(residual, |f: Rational64| f.max(residual)));
        rows.push(InverseBoundRow {
            sample: format!("{sample:?}"),
            lhs,
            best_lambda: best,
            residual,
        });
    }
    let _ = unreachable;
    Ok(InverseBoundReport {
        m,
        e_max,
        fitted_c: fitted.unwrap_or_else(|| Rational64::from_integer(0)),
        rows,
        skipped,
    })
}

/// One orbit row: degrees, height, and proximity values per target.
#[derive(Clone, Debug)]
pub struct OrbitRow {
    pub n: u32,
    pub deg_a: i64,
    /// None when the orbit point is at infinity.
    pub deg_b: Option<i64>,
    pub h: i64,
    pub lambda: BTreeMap<String, Rational64>,
}

#[derive(Clone, Debug)]
pub struct LimitReport {
    pub rows: Vec<OrbitRow>,
    pub postcritical: Vec<(String, PostcriticalVerdict)>,
    /// max over the audited rows of lambda / h, per target
    pub max_tail_ratio: BTreeMap<String, Rational64>,
    /// rows where deg a / deg b leaves [1/2 - delta, 2 + delta]
    pub window_violations: Vec<u32>,
    pub delta: Rational64,
}

/// The orbit limit-ratio audit: emits the deg(a_n), deg(b_n), h, lambda
/// table for n in range and advisory verdicts. The seed must be wandering.
pub fn limit_theorem_audit(
    phi: &RationalMap,
    a: &ProjPoint,
    gammas: &[ProjPoint],
    n_range: (u32, u32),
    delta: Rational64,
    orbit_cfg: &OrbitConfig,
) -> Result<LimitReport> {
    if is_wandering(phi, a)? != WanderingVerdict::Wandering {
        return Err(Error::NotWandering);
    }
    let (lo, hi) = n_range;
    if lo == 0 || hi < lo {
        return Err(Error::InvalidInput(
            "empty or zero-based orbit range".into(),
        ));
    }
    let postcritical: Vec<(String, PostcriticalVerdict)> = gammas
        .iter()
        .map(|g| (format!("{g:?}"), postcritical_test(phi, g, orbit_cfg)))
        .collect();

    let orbit = phi.orbit(a, hi as usize);
    let mut rows = Vec::new();
    let mut max_ratio: BTreeMap<String, Rational64> = BTreeMap::new();
    let mut violations = Vec::new();
    let half = Rational64::new(1, 2);
    let two = Rational64::from_integer(2);
    for n in lo..=hi {
        let point = &orbit[(n - 1) as usize];
        let (deg_a, deg_b, h) = match point {
            ProjPoint::Finite(x) => {
                let da = x.num().deg_i().max(0);
                let db = x.den().deg_i();
                (da, Some(db), x.height())
            }
            ProjPoint::Infinity => (0, None, 0),
        };
        let mut lambda = BTreeMap::new();
        for g in gammas {
            let key = format!("{g:?}");
            if point == g {
                continue;
            }
            let lam = proximity(point, g)?;
            if h > 0 {
                let ratio = lam / Rational64::from_integer(h);
                let cur = max_ratio.entry(key.clone()).or_insert(ratio);
                if ratio > *cur {
                    *cur = ratio;
                }
            }
            lambda.insert(key, lam);
        }
        let in_window = match deg_b {
            Some(db) if db > 0 => {
                let ratio = Rational64::new(deg_a.max(0), db);
                ratio >= half - delta && ratio <= two + delta
            }
            _ => false,
        };
        if !in_window {
            violations.push(n);
        }
        rows.push(OrbitRow {
            n,
            deg_a,
            deg_b,
            h,
            lambda,
        });
    }
    Ok(LimitReport {
        rows,
        postcritical,
        max_tail_ratio: max_ratio,
        window_violations: violations,
        delta,
    })
}

/// Search oracle over small coefficient boxes: the first degree-2 map with
/// both 0 and infinity certified not post-critical, together with a
/// certified wandering seed. The box is scanned deterministically.
pub fn search_nonpostcritical_map(
    field: &Field,
    orbit_cfg: &OrbitConfig,
) -> Option<(RationalMap, ProjPoint)> {
    let t = RatFunc::var(field);
    let zero = ProjPoint::Finite(RatFunc::zero(field));
    let consts: Vec<RatFunc> = vec![
        RatFunc::zero(field),
        RatFunc::one(field),
        RatFunc::from_int(field, -1),
        t.clone(),
        t.neg(),
        t.add(&RatFunc::one(field)),
    ];
    for fn0 in &consts {
        for fd0 in &consts {
            // candidate (z^2 + fn0) / (z^2 + fd0)
            let num = KPoly::new(
                field.clone(),
                vec![fn0.clone(), RatFunc::zero(field), RatFunc::one(field)],
            );
            let den = KPoly::new(
                field.clone(),
                vec![fd0.clone(), RatFunc::zero(field), RatFunc::one(field)],
            );
            let phi = match RationalMap::new(num, den) {
                Ok(m) if m.degree() == 2 => m,
                _ => continue,
            };
            let pc0 = postcritical_test(&phi, &zero, orbit_cfg);
            if pc0 != PostcriticalVerdict::NotPostcritical {
                continue;
            }
            let pci = postcritical_test(&phi, &ProjPoint::Infinity, orbit_cfg);
            if pci != PostcriticalVerdict::NotPostcritical {
                continue;
            }
            // seed search
            for seed in [
                ProjPoint::Finite(RatFunc::zero(field)),
                ProjPoint::Finite(RatFunc::one(field)),
                ProjPoint::Finite(t.clone()),
            ] {
                if let Ok(WanderingVerdict::Wandering) = is_wandering(&phi, &seed) {
                    return Some((phi, seed));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::poly::Poly;
    use rand::SeedableRng;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn t(field: &Field) -> RatFunc {
        RatFunc::var(field)
    }

    fn phi_sq(field: &Field) -> RationalMap {
        RationalMap::from_polynomial(KPoly::new(
            field.clone(),
            vec![
                RatFunc::zero(field),
                RatFunc::zero(field),
                RatFunc::one(field),
            ],
        ))
        .unwrap()
    }

    fn phi_sq_plus_t(field: &Field) -> RationalMap {
        RationalMap::from_polynomial(KPoly::new(
            field.clone(),
            vec![t(field), RatFunc::zero(field), RatFunc::one(field)],
        ))
        .unwrap()
    }

    #[test]
    fn inverse_bound_for_squaring_at_one() {
        // phi = z^2, gamma = 1, samples 1 + t^(-k):
        // lambda(P^2, 1) = lambda(P, 1), best preimage lambda = k, C fit 0
        let f = f5();
        let phi = phi_sq(&f);
        let gamma = ProjPoint::Finite(RatFunc::one(&f));
        let samples: Vec<ProjPoint> = (1..=6)
            .map(|k| {
                let tk = Poly::monomial(&f, crate::ffcore::field::Fq(1), k);
                let x = RatFunc::one(&f).add(&RatFunc::new(Poly::one(&f), tk).unwrap());
                ProjPoint::Finite(x)
            })
            .collect();
        let rep = inverse_bound_audit(&phi, 1, &gamma, &samples, &NpConfig::default()).unwrap();
        assert_eq!(rep.e_max, 1);
        assert_eq!(rep.fitted_c, Rational64::from_integer(0));
        for (k, row) in rep.rows.iter().enumerate() {
            let k = (k + 1) as i64;
            assert_eq!(row.lhs, Rational64::from_integer(k));
            assert_eq!(row.best_lambda, Rational64::from_integer(k));
        }
    }

    #[test]
    fn inverse_bound_golden_fit() {
        // golden value from the oracle run: z^2 + t over gamma = 0 at depth
        // 1 fits C = 0 with e_max = 1 on seeded random samples
        let f = f5();
        let phi = phi_sq_plus_t(&f);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xC0);
        let samples: Vec<ProjPoint> = (0..12)
            .map(|_| ProjPoint::Finite(RatFunc::random(&f, 3, &mut rng)))
            .collect();
        let rep = inverse_bound_audit(
            &phi,
            1,
            &ProjPoint::Finite(RatFunc::zero(&f)),
            &samples,
            &NpConfig::default(),
        )
        .unwrap();
        assert_eq!(rep.e_max, 1);
        assert_eq!(rep.fitted_c, Rational64::from_integer(0));
        assert_eq!(rep.rows.len(), 12);
    }

    #[test]
    fn polynomial_orbit_lambda_ratio_is_one() {
        // phi = z^2 + t, a = 0, gamma = infinity: polynomial orbit keeps
        // deg b = 0 and lambda/h = 1 for every n
        let f = f5();
        let phi = phi_sq_plus_t(&f);
        let a = ProjPoint::Finite(RatFunc::zero(&f));
        let rep = limit_theorem_audit(
            &phi,
            &a,
            &[ProjPoint::Infinity],
            (1, 8),
            Rational64::new(1, 10),
            &OrbitConfig::default(),
        )
        .unwrap();
        for row in &rep.rows {
            assert_eq!(row.deg_b, Some(0));
            let lam = rep.rows[(row.n - 1) as usize]
                .lambda
                .get("Infinity")
                .copied()
                .unwrap();
            assert_eq!(lam, Rational64::from_integer(row.h));
        }
        let mr = rep.max_tail_ratio.get("Infinity").copied().unwrap();
        assert_eq!(mr, Rational64::from_integer(1));
    }

    #[test]
    fn preperiodic_seed_rejected() {
        let f = f5();
        let phi = phi_sq(&f);
        let err = limit_theorem_audit(
            &phi,
            &ProjPoint::Finite(RatFunc::one(&f)),
            &[ProjPoint::Infinity],
            (1, 5),
            Rational64::new(1, 10),
            &OrbitConfig::default(),
        )
        .unwrap_err();
        assert_eq!(err, Error::NotWandering);
    }

    #[test]
    fn search_finds_a_balanced_map() {
        let f = f5();
        let found = search_nonpostcritical_map(&f, &OrbitConfig::default());
        let (phi, seed) = found.expect("search oracle finds a candidate");
        assert_eq!(phi.degree(), 2);
        assert_eq!(
            postcritical_test(
                &phi,
                &ProjPoint::Finite(RatFunc::zero(&f)),
                &OrbitConfig::default()
            ),
            PostcriticalVerdict::NotPostcritical
        );
        assert_eq!(
            postcritical_test(&phi, &ProjPoint::Infinity, &OrbitConfig::default()),
            PostcriticalVerdict::NotPostcritical
        );
        assert_eq!(
            is_wandering(&phi, &seed).unwrap(),
            WanderingVerdict::Wandering
        );
    }
}
