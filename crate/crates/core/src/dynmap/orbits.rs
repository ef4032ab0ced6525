//! Exact orbit verdicts: post-critical tests and wandering certificates.
//!
//! Escape is certified through the provable height bound: once an orbit
//! height passes h(target) + 2*C/(d-1), the canonical-height comparison
//! keeps every later height above h(target), so membership tests terminate.

use num_rational::Rational64;

use crate::algext::elem::{AlgElem, ExtElem};
use crate::error::{Error, Result};

use super::crit::{critical_points, CritDatum, CritPoint, CriticalSet};
use super::height::escape_gap;
use super::map::{ProjPoint, RationalMap};

/// Limits for orbit exploration.
#[derive(Clone, Debug)]
pub struct OrbitConfig {
    /// fallback bound for algebraic critical orbits
    pub max_steps: u32,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        OrbitConfig { max_steps: 256 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PostcriticalVerdict {
    /// gamma = phi^n(c) for the critical point described by `witness`.
    Postcritical {
        witness: String,
        steps: u32,
    },
    NotPostcritical,
    /// Exact resolution not reached for some algebraic critical orbit.
    NotUpTo(u32),
    /// Inseparable map: every point is critical.
    InseparableAll,
}

/// Does gamma lie in the forward orbit of a critical point?
pub fn postcritical_test(
    phi: &RationalMap,
    gamma: &ProjPoint,
    cfg: &OrbitConfig,
) -> PostcriticalVerdict {
    let crits = match critical_points(phi) {
        CriticalSet::Inseparable => return PostcriticalVerdict::InseparableAll,
        CriticalSet::Points(pts) => pts,
    };
    let mut all_exact = true;
    for crit in &crits {
        match crit_orbit_contains(phi, crit, gamma, cfg) {
            OrbitOutcome::Hit(n) => {
                return PostcriticalVerdict::Postcritical {
                    witness: format!("{:?}", crit.point),
                    steps: n,
                };
            }
            OrbitOutcome::Misses => {}
            OrbitOutcome::Unresolved => {
                all_exact = false;
            }
        }
    }
    if all_exact {
        PostcriticalVerdict::NotPostcritical
    } else {
        PostcriticalVerdict::NotUpTo(cfg.max_steps)
    }
}

enum OrbitOutcome {
    Hit(u32),
    Misses,
    Unresolved,
}

fn crit_orbit_contains(
    phi: &RationalMap,
    crit: &CritDatum,
    gamma: &ProjPoint,
    cfg: &OrbitConfig,
) -> OrbitOutcome {
    let cutoff = Rational64::from_integer(gamma.height()) + escape_gap(phi) + escape_gap(phi);
    match &crit.point {
        CritPoint::Rational(p) => {
            let mut visited: Vec<ProjPoint> = vec![p.clone()];
            let mut cur = p.clone();
            for n in 1..=cfg.max_steps {
                cur = phi.eval(&cur);
                if &cur == gamma {
                    return OrbitOutcome::Hit(n);
                }
                if Rational64::from_integer(cur.height()) > cutoff {
                    return OrbitOutcome::Misses;
                }
                if visited.contains(&cur) {
                    return OrbitOutcome::Misses;
                }
                visited.push(cur.clone());
            }
            OrbitOutcome::Unresolved
        }
        CritPoint::Algebraic(alpha) => {
            let mut cur = ExtProj::generator(alpha);
            let mut visited: Vec<ExtProj> = vec![cur.clone()];
            for n in 1..=cfg.max_steps {
                cur = cur.apply(phi);
                if cur.equals_rational(gamma) {
                    return OrbitOutcome::Hit(n);
                }
                if cur.height() > cutoff {
                    return OrbitOutcome::Misses;
                }
                if visited.contains(&cur) {
                    return OrbitOutcome::Misses;
                }
                visited.push(cur.clone());
            }
            OrbitOutcome::Unresolved
        }
    }
}

/// A point of P^1(K(alpha)), normalized affine or infinity.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtProj {
    x: ExtElem,
    infinite: bool,
}

impl ExtProj {
    pub fn generator(alpha: &AlgElem) -> ExtProj {
        ExtProj {
            x: alpha.generator(),
            infinite: false,
        }
    }

    pub fn apply(&self, phi: &RationalMap) -> ExtProj {
        let alpha = self.x.parent().clone();
        if self.infinite {
            let d = phi.degree();
            let fd = alpha.from_ratfunc(&phi.numerator().coeff(d));
            let gd = alpha.from_ratfunc(&phi.denominator().coeff(d));
            return Self::normalize(fd, gd);
        }
        let fv = eval_kpoly_ext(phi.numerator(), &self.x);
        let gv = eval_kpoly_ext(phi.denominator(), &self.x);
        Self::normalize(fv, gv)
    }

    fn normalize(x0: ExtElem, x1: ExtElem) -> ExtProj {
        let alpha = x0.parent().clone();
        if x1.is_zero() {
            assert!(!x0.is_zero(), "indeterminate image");
            ExtProj {
                x: alpha.one(),
                infinite: true,
            }
        } else {
            ExtProj {
                x: x0.div(&x1).expect("nonzero denominator"),
                infinite: false,
            }
        }
    }

    pub fn equals_rational(&self, gamma: &ProjPoint) -> bool {
        match (self.infinite, gamma) {
            (true, ProjPoint::Infinity) => true,
            (false, ProjPoint::Finite(g)) => self.x.is_rational().map_or(false, |r| r == g),
            _ => false,
        }
    }

    pub fn height(&self) -> Rational64 {
        if self.infinite {
            Rational64::from_integer(0)
        } else {
            self.x.height()
        }
    }
}

fn eval_kpoly_ext(k: &crate::ffcore::kpoly::KPoly, x: &ExtElem) -> ExtElem {
    let alpha = x.parent();
    let mut acc = alpha.zero();
    for c in k.coeffs().iter().rev() {
        acc = acc.mul(x).add(&alpha.from_ratfunc(c));
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WanderingVerdict {
    Wandering,
    Preperiodic { preperiod: u32, period: u32 },
}

/// Decide whether the forward orbit of `a` is infinite. Fully decidable:
/// heights either pass the escape cutoff (wandering) or the orbit stays in
/// a finite height-bounded set and must repeat.
pub fn is_wandering(phi: &RationalMap, a: &ProjPoint) -> Result<WanderingVerdict> {
    let cutoff = escape_gap(phi) + escape_gap(phi);
    let mut visited: Vec<ProjPoint> = vec![a.clone()];
    let mut cur = a.clone();
    for _ in 0..1_000_000u32 {
        cur = phi.eval(&cur);
        if Rational64::from_integer(cur.height()) > cutoff {
            return Ok(WanderingVerdict::Wandering);
        }
        if let Some(pos) = visited.iter().position(|p| p == &cur) {
            return Ok(WanderingVerdict::Preperiodic {
                preperiod: pos as u32,
                period: (visited.len() - pos) as u32,
            });
        }
        visited.push(cur.clone());
    }
    Err(Error::LimitExceeded("orbit exploration".into()))
}

/// Orbit of a K-point as reduced numerator/denominator pairs.
pub fn orbit_fractions(phi: &RationalMap, a: &ProjPoint, upto: usize) -> Vec<ProjPoint> {
    phi.orbit(a, upto)
}

/// Naive bad-reduction evidence: the places dividing the homogeneous
/// resultant of the integral model, with multiplicities.
pub fn bad_reduction_places(phi: &RationalMap) -> Vec<(crate::ffcore::ratfunc::Place, i64)> {
    let (fb, gb) = super::height::integral_model(phi);
    let res = crate::ffcore::kpoly::resultant_forms(&fb.to_kpoly(), &gb.to_kpoly(), phi.degree());
    let r = res.num().clone();
    let mut out = Vec::new();
    for (pi, e) in crate::ffcore::factor::factor(&r) {
        out.push((crate::ffcore::ratfunc::Place::Finite(pi), e as i64));
    }
    out
}
