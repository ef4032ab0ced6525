//! The rational function field K = F_q(t): reduced fractions of polynomials,
//! places, orders of vanishing, and heights.

use std::fmt;

use rand::Rng;

use super::factor;
use super::field::{Field, Fq};
use super::poly::Poly;
use crate::error::{Error, Result};

/// A place of K = F_q(t): a monic irreducible polynomial or the place at
/// infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Infinity,
    Finite(Poly),
}

impl Place {
    /// Construct a finite place, verifying irreducibility.
    pub fn finite(pi: Poly) -> Result<Place> {
        if !factor::is_irreducible(&pi) {
            return Err(Error::NotIrreducible);
        }
        Ok(Place::Finite(pi.monic()))
    }

    /// Residue degree of the place.
    pub fn degree(&self) -> usize {
        match self {
            Place::Infinity => 1,
            Place::Finite(pi) => pi.degree().unwrap_or(0),
        }
    }
}

/// A reduced fraction num/den with den monic and gcd(num, den) = 1.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num.to_string_var("t"))
        } else {
            write!(
                f,
                "({})/({})",
                self.num.to_string_var("t"),
                self.den.to_string_var("t")
            )
        }
    }
}

impl RatFunc {
    /// Reduce num/den to canonical form: gcd cancelled, den monic.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num: Poly::zero(num.field()),
                den: Poly::one(den.field()),
            });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num.div_exact(&g), den.div_exact(&g));
        let field = den.field().clone();
        let lc_inv = field.inv(den.lc());
        num = num.scale(lc_inv);
        den = den.scale(lc_inv);
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        let one = Poly::one(p.field());
        RatFunc { num: p, den: one }
    }

    pub fn zero(field: &Field) -> RatFunc {
        RatFunc {
            num: Poly::zero(field),
            den: Poly::one(field),
        }
    }

    pub fn one(field: &Field) -> RatFunc {
        RatFunc {
            num: Poly::one(field),
            den: Poly::one(field),
        }
    }

    pub fn constant(field: &Field, c: Fq) -> RatFunc {
        RatFunc {
            num: Poly::constant(field, c),
            den: Poly::one(field),
        }
    }

    pub fn from_int(field: &Field, n: i64) -> RatFunc {
        RatFunc::constant(field, field.from_int(n))
    }

    pub fn var(field: &Field) -> RatFunc {
        RatFunc::from_poly(Poly::var(field))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }
    pub fn field(&self) -> &Field {
        self.den.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// For constants, the field element.
    pub fn as_constant(&self) -> Option<Fq> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        // cross-cancel first to keep degrees down
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let num = self.num.div_exact(&g1).mul(&other.num.div_exact(&g2));
        let den = self.den.div_exact(&g2).mul(&other.den.div_exact(&g1));
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn scale(&self, c: Fq) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        let mut acc = RatFunc::one(self.field());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// h(r) = max(deg num, deg den) of the reduced form; h(0) = 0.
    pub fn height(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        self.num.deg_i().max(self.den.deg_i())
    }

    /// Order of vanishing at a place. At infinity this is
    /// deg(den) - deg(num), so positive order means small at infinity.
    pub fn ord_at(&self, place: &Place) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        match place {
            Place::Infinity => Ok(self.den.deg_i() - self.num.deg_i()),
            Place::Finite(pi) => Ok(multiplicity(&self.num, pi) - multiplicity(&self.den, pi)),
        }
    }

    /// Formal derivative d/dt.
    pub fn derivative_t(&self) -> RatFunc {
        // (a/b)' = (a'b - ab') / b^2
        let num = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        let den = self.den.mul(&self.den);
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    /// All places where ord is nonzero, paired with the order. Includes the
    /// infinite place when its order is nonzero.
    pub fn divisor(&self) -> Result<Vec<(Place, i64)>> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let mut out = Vec::new();
        for (pi, e) in factor::factor(&self.num) {
            out.push((Place::Finite(pi), e as i64));
        }
        for (pi, e) in factor::factor(&self.den) {
            out.push((Place::Finite(pi), -(e as i64)));
        }
        let oinf = self.den.deg_i() - self.num.deg_i();
        if oinf != 0 {
            out.push((Place::Infinity, oinf));
        }
        Ok(out)
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, maxdeg: usize, rng: &mut R) -> RatFunc {
        let num = Poly::random_up_to(field, maxdeg, rng);
        let mut den = Poly::random_up_to(field, maxdeg, rng);
        while den.is_zero() {
            den = Poly::random_up_to(field, maxdeg, rng);
        }
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    /// Render compactly, usable by the expression parser round-trip.
    pub fn to_display(&self) -> String {
        format!("{self:?}")
    }

    /// JSON as ascending coefficient lists (digit lists for extension
    /// constants).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "num": poly_coeff_json(&self.num),
            "den": poly_coeff_json(&self.den),
        })
    }
}

fn poly_coeff_json(p: &Poly) -> serde_json::Value {
    let field = p.field();
    let coeffs: Vec<serde_json::Value> = p
        .coeffs()
        .iter()
        .map(|&c| {
            if field.ext_deg() == 1 {
                serde_json::json!(c.0)
            } else {
                serde_json::json!(field.digits(c))
            }
        })
        .collect();
    serde_json::json!(coeffs)
}

fn multiplicity(f: &Poly, pi: &Poly) -> i64 {
    let mut m = 0;
    let mut g = f.clone();
    loop {
        let (q, r) = g.divrem(pi);
        if !r.is_zero() {
            return m;
        }
        g = q;
        m += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let f = f5();
        // (t^2 - 1) / (t - 1) = t + 1
        let num = Poly::from_ints(&f, &[-1, 0, 1]);
        let den = Poly::from_ints(&f, &[-1, 1]);
        let r = RatFunc::new(num, den).unwrap();
        assert_eq!(r.num(), &Poly::from_ints(&f, &[1, 1]));
        assert!(r.den().is_one());
    }

    #[test]
    fn normalize_makes_denominator_monic() {
        let f = f5();
        // 2t / 2 = t
        let r = RatFunc::new(Poly::from_ints(&f, &[0, 2]), Poly::from_ints(&f, &[2])).unwrap();
        assert_eq!(r, RatFunc::var(&f));
    }

    #[test]
    fn zero_denominator_rejected() {
        let f = f5();
        let e = RatFunc::new(Poly::from_ints(&f, &[0, 0, 0, 1]), Poly::zero(&f));
        assert_eq!(e.unwrap_err(), Error::ZeroDenominator);
    }

    #[test]
    fn normalize_idempotent_random() {
        let f = f5();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let r = RatFunc::random(&f, 6, &mut rng);
            let again = RatFunc::new(r.num().clone(), r.den().clone()).unwrap();
            assert_eq!(r, again);
            assert_eq!(r.num().gcd(r.den()).degree(), Some(0));
        }
    }

    #[test]
    fn height_examples() {
        let f = f5();
        let r = RatFunc::new(
            Poly::from_ints(&f, &[1, 0, 0, 1]),
            Poly::from_ints(&f, &[-1, 1]),
        )
        .unwrap();
        assert_eq!(r.height(), 3);
        assert_eq!(RatFunc::from_int(&f, 3).height(), 0);
        let r2 = RatFunc::new(Poly::var(&f), Poly::from_ints(&f, &[1, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(r2.height(), 5);
    }

    #[test]
    fn ord_examples() {
        let f = f5();
        // ord_inf(t^2/(t^3+1)) = 3 - 2 = 1
        let r = RatFunc::new(
            Poly::monomial(&f, Fq(1), 2),
            Poly::from_ints(&f, &[1, 0, 0, 1]),
        )
        .unwrap();
        assert_eq!(r.ord_at(&Place::Infinity).unwrap(), 1);
        assert_eq!(RatFunc::var(&f).ord_at(&Place::Infinity).unwrap(), -1);
        // ord_t(t^2 (t+1)) = 2
        let r = RatFunc::from_poly(Poly::monomial(&f, Fq(1), 2).mul(&Poly::from_ints(&f, &[1, 1])));
        let place_t = Place::finite(Poly::var(&f)).unwrap();
        assert_eq!(r.ord_at(&place_t).unwrap(), 2);
    }

    #[test]
    fn ord_is_additive() {
        let f = f5();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let place_t = Place::finite(Poly::var(&f)).unwrap();
        for _ in 0..50 {
            let mut r = RatFunc::random(&f, 5, &mut rng);
            let mut s = RatFunc::random(&f, 5, &mut rng);
            if r.is_zero() {
                r = RatFunc::one(&f);
            }
            if s.is_zero() {
                s = RatFunc::one(&f);
            }
            let rs = r.mul(&s);
            for place in [&Place::Infinity, &place_t] {
                assert_eq!(
                    rs.ord_at(place).unwrap(),
                    r.ord_at(place).unwrap() + s.ord_at(place).unwrap()
                );
            }
        }
    }

    #[test]
    fn height_subadditive_and_inverse_invariant() {
        let f = f5();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let r = RatFunc::random(&f, 5, &mut rng);
            let s = RatFunc::random(&f, 5, &mut rng);
            assert!(r.mul(&s).height() <= r.height() + s.height());
            if !r.is_zero() {
                assert_eq!(r.inv().unwrap().height(), r.height());
            }
        }
    }

    #[test]
    fn product_formula() {
        // sum over places of ord_v(r) * deg(v) = 0
        let f = f5();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let mut r = RatFunc::random(&f, 4, &mut rng);
            if r.is_zero() {
                r = RatFunc::var(&f);
            }
            let total: i64 = r
                .divisor()
                .unwrap()
                .iter()
                .map(|(place, ord)| ord * place.degree() as i64)
                .sum();
            assert_eq!(total, 0);
        }
    }
}
