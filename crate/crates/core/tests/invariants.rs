//! Cross-module invariant suites beyond the per-module unit tests: degree
//! laws, ramification multiplicativity, the continued-fraction identity at
//! scale, and exponent-estimate consistency.

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ffdyn_core::algext::factor_bivariate;
use ffdyn_core::dynmap::crit::ramification_index;
use ffdyn_core::dynmap::map::{ProjPoint, RationalMap};
use ffdyn_core::ffcore::field::Field;
use ffdyn_core::ffcore::kpoly::KPoly;
use ffdyn_core::ffcore::poly::Poly;
use ffdyn_core::ffcore::ratfunc::RatFunc;
use ffdyn_core::laurent::cf::continued_fraction;
use ffdyn_core::laurent::exponent::{bound_audit, exponent_estimate};
use ffdyn_core::laurent::newton::{newton_puiseux_roots, NpConfig};

fn f5() -> Field {
    Field::prime(5).unwrap()
}

fn random_map(field: &Field, d: usize, rng: &mut ChaCha8Rng) -> RationalMap {
    loop {
        let fc: Vec<RatFunc> = (0..=d)
            .map(|_| RatFunc::from_poly(Poly::random_up_to(field, 2, rng)))
            .collect();
        let gc: Vec<RatFunc> = (0..=d)
            .map(|_| RatFunc::from_poly(Poly::random_up_to(field, 2, rng)))
            .collect();
        let f = KPoly::new(field.clone(), fc);
        let g = KPoly::new(field.clone(), gc);
        if f.deg_i().max(g.deg_i()) != d as i64 {
            continue;
        }
        if let Ok(m) = RationalMap::new(f, g) {
            if m.degree() == d {
                return m;
            }
        }
    }
}

/// deg(phi^n) = d^n on 50 random maps; degree-2 maps are iterated to n = 6,
/// degree-3 maps to n = 4 to keep the composition sizes at desk scale.
#[test]
fn iterate_degree_law() {
    let f = f5();
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for round in 0..50 {
        let d = 2 + (round % 2);
        let phi = random_map(&f, d, &mut rng);
        let nmax = if d == 2 { 6 } else { 4 };
        for n in 1..=nmax {
            let it = phi.iterate(n).unwrap();
            assert_eq!(it.degree(), d.pow(n), "round {round}, n {n}");
        }
    }
}

/// Ramification indices multiply under composition, at K-rational points.
#[test]
fn ramification_multiplicativity() {
    let f = f5();
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    let mut tested = 0usize;
    while tested < 40 {
        let phi = random_map(&f, 2, &mut rng);
        let psi = random_map(&f, 2, &mut rng);
        let comp = phi.compose(&psi).unwrap();
        let alpha = ProjPoint::Finite(RatFunc::from_poly(Poly::random_up_to(&f, 1, &mut rng)));
        let e_psi = ramification_index(&psi, &alpha);
        let e_phi = ramification_index(&phi, &psi.eval(&alpha));
        let e_comp = ramification_index(&comp, &alpha);
        assert_eq!(e_comp, e_psi * e_phi, "at {alpha:?}");
        tested += 1;
    }
    // and at a forced critical point: z^2 composed with z^3 at 0
    let z2 = ffdyn_core::mapexpr::parse_map("z^2", &f).unwrap();
    let z3 = ffdyn_core::mapexpr::parse_map("z^3", &f).unwrap();
    let z6 = z3.compose(&z2).unwrap();
    let zero = ProjPoint::Finite(RatFunc::zero(&f));
    assert_eq!(ramification_index(&z6, &zero), 6);
}

/// The approximation-order identity ord(alpha - p_n/q_n) = deg q_n +
/// deg q_{n+1} across 200 random algebraic series at precision 60. The
/// expansion verifies the identity internally; this drives it at scale.
#[test]
fn continued_fraction_identity_at_scale() {
    let f = f5();
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let cfg = NpConfig::default();
    let mut series_count = 0usize;
    while series_count < 200 {
        let dz = 2 + rng.random_range(0..2) as usize;
        let coeffs: Vec<RatFunc> = (0..=dz)
            .map(|_| RatFunc::from_poly(Poly::random_up_to(&f, 2, &mut rng)))
            .collect();
        let g = KPoly::new(f.clone(), coeffs);
        if g.degree() != Some(dz) {
            continue;
        }
        let fs = factor_bivariate(&g);
        if fs.len() != 1 || fs[0].1 != 1 {
            continue;
        }
        let roots = match newton_puiseux_roots(&fs[0].0, 60, &cfg) {
            Ok(r) => r,
            Err(_) => continue,
        };
        for root in &roots {
            if root.series.minimal_ram() != 1 || root.series.field().ext_deg() != 1 {
                continue;
            }
            let series = root
                .series
                .truncate(root.certified_prec.min(root.series.prec()));
            // the identity is asserted inside the expansion
            let cf = continued_fraction(&series, 16).unwrap();
            if cf.convergents.len() >= 2 {
                series_count += 1;
            }
        }
    }
}

/// Estimates are consistent: best >= 1, and best <= d + fitted C / min h.
#[test]
fn exponent_estimate_consistency() {
    let f = f5();
    let cfg = NpConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(54);
    let mut tested = 0usize;
    while tested < 12 {
        let dz = 2 + rng.random_range(0..2) as usize;
        let coeffs: Vec<RatFunc> = (0..=dz)
            .map(|_| RatFunc::from_poly(Poly::random_up_to(&f, 2, &mut rng)))
            .collect();
        let g = KPoly::new(f.clone(), coeffs);
        if g.degree() != Some(dz) {
            continue;
        }
        let fs = factor_bivariate(&g);
        if fs.len() != 1 || fs[0].1 != 1 {
            continue;
        }
        let rep = match exponent_estimate(&fs[0].0, 24, &cfg) {
            Ok(r) => r,
            Err(_) => continue,
        };
        if rep.witnesses.is_empty() {
            continue;
        }
        assert!(
            rep.best >= Rational64::from_integer(1),
            "best = {}",
            rep.best
        );
        let audit = bound_audit(rep.degree, &rep.witnesses, false);
        assert!(audit.liouville.pass);
        let min_h = rep.witnesses.iter().map(|w| w.h).min().unwrap();
        let cap = Rational64::from_integer(rep.degree as i64)
            + audit.liouville.fitted_c / Rational64::from_integer(min_h);
        assert!(rep.best <= cap, "best = {} exceeds {}", rep.best, cap);
        tested += 1;
    }
}
