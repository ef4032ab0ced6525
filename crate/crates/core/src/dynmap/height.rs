//! Height machinery for rational maps: the reported height-discrepancy
//! constant, the provable escape bound used by orbit certificates, and
//! canonical-height estimates.

use num_rational::Rational64;

use crate::ffcore::kpoly::{resultant_forms, BiPoly};
use crate::ffcore::poly::Poly;

use super::map::{ProjPoint, RationalMap};

/// Joint integral model of the map: clear denominators of both coordinate
/// polynomials together and remove the common t-content, so heights can be
/// read off coefficient degrees.
pub fn integral_model(phi: &RationalMap) -> (BiPoly, BiPoly) {
    let field = phi.field().clone();
    let mut den = Poly::one(&field);
    for c in phi
        .numerator()
        .coeffs()
        .iter()
        .chain(phi.denominator().coeffs())
    {
        let g = den.gcd(c.den());
        den = den.mul(&c.den().div_exact(&g));
    }
    let clear = |k: &crate::ffcore::kpoly::KPoly| -> Vec<Poly> {
        k.coeffs()
            .iter()
            .map(|c| c.num().mul(&den.div_exact(c.den())))
            .collect()
    };
    let fc = clear(phi.numerator());
    let gc = clear(phi.denominator());
    let mut cont = Poly::zero(&field);
    for c in fc.iter().chain(gc.iter()) {
        cont = cont.gcd(c);
        if cont.is_one() {
            break;
        }
    }
    if cont.is_zero() {
        cont = Poly::one(&field);
    }
    let fb = BiPoly::new(
        field.clone(),
        fc.iter().map(|c| c.div_exact(&cont)).collect(),
    );
    let gb = BiPoly::new(
        field.clone(),
        gc.iter().map(|c| c.div_exact(&cont)).collect(),
    );
    (fb, gb)
}

/// Max coefficient t-degree of the joint integral model.
pub fn coefficient_height(phi: &RationalMap) -> i64 {
    let (fb, gb) = integral_model(phi);
    fb.deg_t().max(gb.deg_t()).max(0)
}

/// The reported height-discrepancy constant:
/// max(coefficient height, deg_t of the homogeneous resultant).
pub fn height_discrepancy_bound(phi: &RationalMap) -> i64 {
    let (fb, gb) = integral_model(phi);
    let c1 = fb.deg_t().max(gb.deg_t()).max(0);
    let res = resultant_forms(&fb.to_kpoly(), &gb.to_kpoly(), phi.degree());
    debug_assert!(!res.is_zero());
    debug_assert!(res.is_polynomial());
    let dres = res.num().deg_i().max(0);
    c1.max(dres)
}

/// A provable two-sided bound: |h(phi(P)) - d h(P)| <= (2d - 1) * C1 for all
/// P over the algebraic closure (Sylvester-cofactor argument). Orbit escape
/// certificates use this constant, never the sharper reported one.
pub fn escape_bound(phi: &RationalMap) -> i64 {
    let c1 = coefficient_height(phi);
    (2 * phi.degree() as i64 - 1) * c1
}

/// C~ = C/(d-1): the telescoped height-vs-canonical-height gap.
pub fn escape_gap(phi: &RationalMap) -> Rational64 {
    Rational64::new(escape_bound(phi), phi.degree() as i64 - 1)
}

/// Canonical-height estimate h(phi^n(P)) / d^n with the telescoping error
/// bound C_phi / (d^n (d - 1)).
pub fn canonical_height(phi: &RationalMap, p: &ProjPoint, n: u32) -> (Rational64, Rational64) {
    let d = phi.degree() as i64;
    let mut cur = p.clone();
    for _ in 0..n {
        cur = phi.eval(&cur);
    }
    let dn = d.checked_pow(n).expect("degree power fits in i64");
    let est = Rational64::new(cur.height(), dn);
    let err = Rational64::new(height_discrepancy_bound(phi), dn * (d - 1));
    (est, err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::field::Field;
    use crate::ffcore::kpoly::KPoly;
    use crate::ffcore::ratfunc::RatFunc;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

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
    fn constant_coefficients_give_zero() {
        let f = f5();
        assert_eq!(height_discrepancy_bound(&phi_sq(&f)), 0);
        assert_eq!(escape_bound(&phi_sq(&f)), 0);
    }

    #[test]
    fn quadratic_plus_t_bound_is_one() {
        // coefficient degree 1; Res_z(X^2 + tY^2, Y^2) = 1
        let f = f5();
        assert_eq!(height_discrepancy_bound(&phi_sq_plus_t(&f)), 1);
    }

    #[test]
    fn rational_map_resultant_degree() {
        // (z^2 - t)/(z^2 - 1): Res of the forms is (t - 1)^2 up to a unit
        let f = f5();
        let num = KPoly::new(
            f.clone(),
            vec![t(&f).neg(), RatFunc::zero(&f), RatFunc::one(&f)],
        );
        let den = KPoly::new(
            f.clone(),
            vec![
                RatFunc::from_int(&f, -1),
                RatFunc::zero(&f),
                RatFunc::one(&f),
            ],
        );
        let phi = RationalMap::new(num, den).unwrap();
        let (fb, gb) = integral_model(&phi);
        let res = resultant_forms(&fb.to_kpoly(), &gb.to_kpoly(), 2);
        assert!(res.is_polynomial());
        assert_eq!(res.num().deg_i(), 2);
        assert_eq!(height_discrepancy_bound(&phi), 2);
    }

    #[test]
    fn exact_multiplicativity_for_powers() {
        let f = f5();
        let phi = phi_sq(&f);
        let p = ProjPoint::Finite(t(&f));
        for n in 1..=6 {
            let (est, err) = canonical_height(&phi, &p, n);
            assert_eq!(est, Rational64::from_integer(1));
            assert_eq!(err, Rational64::from_integer(0));
        }
    }

    #[test]
    fn canonical_height_of_critical_orbit() {
        // phi = z^2 + t, P = 0: deg phi^n(0) = 2^(n-1), estimate 1/2
        let f = f5();
        let phi = phi_sq_plus_t(&f);
        let p = ProjPoint::Finite(RatFunc::zero(&f));
        let (est, err) = canonical_height(&phi, &p, 8);
        assert_eq!(est, Rational64::new(1, 2));
        assert_eq!(err, Rational64::new(1, 256));
    }

    #[test]
    fn preperiodic_estimate_collapses() {
        // a fixed point has canonical height 0 within the error bound
        let f = f5();
        let phi = phi_sq(&f);
        let p = ProjPoint::Finite(RatFunc::one(&f));
        for n in [2u32, 6, 10] {
            let (est, err) = canonical_height(&phi, &p, n);
            assert!(est <= err, "estimate {est} should be within {err} of 0");
            assert_eq!(est, Rational64::from_integer(0));
        }
    }

    #[test]
    fn empirical_two_sided_bound_holds() {
        let f = f5();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..8 {
            let phi = crate::dynmap::testutil::random_map(&f, 2, &mut rng);
            let c = height_discrepancy_bound(&phi);
            let d = phi.degree() as i64;
            for _ in 0..60 {
                let p = ProjPoint::Finite(RatFunc::random(&f, 4, &mut rng));
                let q = phi.eval(&p);
                let diff = (q.height() - d * p.height()).abs();
                assert!(
                    diff <= c,
                    "map {phi:?}: |h(phi P) - d h(P)| = {diff} > {c} at {p:?}"
                );
            }
        }
    }
}
