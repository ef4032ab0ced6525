//! The chordal-metric proximity function at the place at infinity, in exact
//! base-p logarithmic units: lambda(P, Q) = -log_p rho(P, Q).

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::ffcore::ratfunc::{Place, RatFunc};
use crate::laurent::newton::PuiseuxRoot;
use crate::laurent::series::ratfunc_to_series;

use super::map::ProjPoint;

fn ord_inf(x: &RatFunc) -> i64 {
    x.ord_at(&Place::Infinity).expect("nonzero input")
}

/// lambda(P, Q) for distinct K-rational points, exact:
/// v(x - y) - min(v x, 0) - min(v y, 0) with the usual chart conventions at
/// infinity. Always nonnegative.
pub fn proximity(p: &ProjPoint, q: &ProjPoint) -> Result<Rational64> {
    if p == q {
        return Err(Error::EqualPoints);
    }
    let lam = match (p, q) {
        (ProjPoint::Infinity, ProjPoint::Infinity) => unreachable!("equal points"),
        (ProjPoint::Finite(x), ProjPoint::Infinity)
        | (ProjPoint::Infinity, ProjPoint::Finite(x)) => {
            if x.is_zero() {
                0
            } else {
                (-ord_inf(x)).max(0)
            }
        }
        (ProjPoint::Finite(x), ProjPoint::Finite(y)) => {
            let diff = x.sub(y);
            let vx = if x.is_zero() { 0 } else { ord_inf(x).min(0) };
            let vy = if y.is_zero() { 0 } else { ord_inf(y).min(0) };
            ord_inf(&diff) - vx - vy
        }
    };
    debug_assert!(lam >= 0);
    Ok(Rational64::from_integer(lam))
}

/// lambda(P, alpha) for a K-rational P against a series embedding of an
/// algebraic point. The valuation w extends ord at infinity with values in
/// (1/e)Z. Errors with `InsufficientPrecision` when the series window
/// cannot separate P from alpha.
pub fn proximity_to_root(p: &ProjPoint, root: &PuiseuxRoot) -> Result<Rational64> {
    let e = root.series.ram() as i64;
    let w_alpha = match root.series.ord() {
        Some(l) => Rational64::new(l, e),
        None => Rational64::from_integer(0), // zero-to-precision series: |alpha| <= small
    };
    match p {
        ProjPoint::Infinity => {
            let lam = (-w_alpha).max(Rational64::from_integer(0));
            Ok(lam)
        }
        ProjPoint::Finite(x) => {
            // a working window: the difference from a height-h rational is
            // bounded Liouville-style, so a generous multiple of the height
            // suffices to resolve the ord
            let cap = e * (16 * (x.height().max(1) + 2) + 64);
            let prec = root.certified_prec.min(root.series.prec()).min(cap);
            let xs = ratfunc_to_series(x, &root.emb, root.series.ram(), prec)?;
            let diff = xs.sub(&root.series.truncate(prec));
            let w_diff = match diff.ord() {
                Some(l) => Rational64::new(l, e),
                None => {
                    return Err(Error::InsufficientPrecision {
                        need: prec + 1,
                        have: prec,
                    })
                }
            };
            let vx = if x.is_zero() {
                Rational64::from_integer(0)
            } else {
                Rational64::from_integer(ord_inf(x)).min(Rational64::from_integer(0))
            };
            let va = w_alpha.min(Rational64::from_integer(0));
            Ok(w_diff - vx - va)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::field::Field;
    use crate::ffcore::poly::Poly;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn fin(x: RatFunc) -> ProjPoint {
        ProjPoint::Finite(x)
    }

    #[test]
    fn proximity_examples() {
        let f = f5();
        let t = RatFunc::var(&f);
        // lambda(t, inf) = 1
        assert_eq!(
            proximity(&fin(t.clone()), &ProjPoint::Infinity).unwrap(),
            Rational64::from_integer(1)
        );
        // lambda(0, inf) = 0
        assert_eq!(
            proximity(&fin(RatFunc::zero(&f)), &ProjPoint::Infinity).unwrap(),
            Rational64::from_integer(0)
        );
        // lambda(1/t, 0) = 1
        let tinv = RatFunc::new(Poly::one(&f), Poly::var(&f)).unwrap();
        assert_eq!(
            proximity(&fin(tinv), &fin(RatFunc::zero(&f))).unwrap(),
            Rational64::from_integer(1)
        );
        // equal points rejected
        assert_eq!(
            proximity(&fin(t.clone()), &fin(t.clone())).unwrap_err(),
            Error::EqualPoints
        );
    }

    #[test]
    fn proximity_nonnegative_random() {
        use rand::SeedableRng;
        let f = f5();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..500 {
            let x = RatFunc::random(&f, 4, &mut rng);
            let y = RatFunc::random(&f, 4, &mut rng);
            if x == y {
                continue;
            }
            let lam = proximity(&fin(x), &fin(y)).unwrap();
            assert!(lam >= Rational64::from_integer(0));
        }
    }

    #[test]
    fn comparison_lemma_strict_hypothesis() {
        // whenever lambda(x, inf) < lambda(x, y):
        //   lambda(x, y) <= v(x - y) + 2 lambda(x, inf)
        // (the archimedean log 2 slack vanishes at a non-archimedean place)
        use rand::SeedableRng;
        let f = f5();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(78);
        let mut tested = 0;
        while tested < 1000 {
            let x = RatFunc::random(&f, 4, &mut rng);
            let y = RatFunc::random(&f, 4, &mut rng);
            if x == y || x.is_zero() || y.is_zero() {
                continue;
            }
            let li = proximity(&fin(x.clone()), &ProjPoint::Infinity).unwrap();
            let lxy = proximity(&fin(x.clone()), &fin(y.clone())).unwrap();
            if !(li < lxy) {
                continue;
            }
            tested += 1;
            let vxy = Rational64::from_integer(ord_inf(&x.sub(&y)));
            assert!(lxy <= vxy + li + li, "x={x:?} y={y:?}");
        }
    }
}
