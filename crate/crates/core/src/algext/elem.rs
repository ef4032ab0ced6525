//! Simple extensions K(alpha) = K[z]/(G): elements, arithmetic, heights,
//! characteristic polynomials, and cached series embeddings.

use std::sync::{Arc, Mutex};

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::ffcore::field::Field;
use crate::ffcore::kpoly::KPoly;
use crate::ffcore::ratfunc::RatFunc;
use crate::laurent::newton::{newton_puiseux_roots, NpConfig, PuiseuxRoot};

use super::bivariate::factor_bivariate;

struct AlgInner {
    minpoly: KPoly, // monic irreducible over K
    separable: bool,
    embeddings: Mutex<Option<(i64, Vec<PuiseuxRoot>)>>,
}

/// An algebraic element over K, given by its monic irreducible minimal
/// polynomial. Cheap to clone; embeddings are computed lazily and memoized.
#[derive(Clone)]
pub struct AlgElem {
    inner: Arc<AlgInner>,
}

impl std::fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AlgElem({:?})", self.inner.minpoly)
    }
}

impl PartialEq for AlgElem {
    fn eq(&self, other: &Self) -> bool {
        self.inner.minpoly == other.inner.minpoly
    }
}
impl Eq for AlgElem {}

impl AlgElem {
    /// Wrap a minimal polynomial already certified irreducible (e.g. output
    /// of the bivariate factorization). Monicized.
    pub fn from_certified(minpoly: KPoly) -> AlgElem {
        let m = minpoly.monic();
        let separable = m.is_separable();
        AlgElem {
            inner: Arc::new(AlgInner {
                minpoly: m,
                separable,
                embeddings: Mutex::new(None),
            }),
        }
    }

    /// Certify irreducibility by factoring, then wrap.
    pub fn new_checked(minpoly: KPoly) -> Result<AlgElem> {
        if minpoly.degree().map_or(true, |d| d == 0) {
            return Err(Error::InvalidInput("constant minimal polynomial".into()));
        }
        let fs = factor_bivariate(&minpoly);
        if fs.len() != 1 || fs[0].1 != 1 {
            return Err(Error::NotIrreducible);
        }
        Ok(Self::from_certified(minpoly))
    }

    pub fn minpoly(&self) -> &KPoly {
        &self.inner.minpoly
    }

    pub fn degree(&self) -> usize {
        self.inner.minpoly.degree().unwrap()
    }

    pub fn is_separable(&self) -> bool {
        self.inner.separable
    }

    pub fn field(&self) -> &Field {
        self.inner.minpoly.field()
    }

    /// Weil height: (1/d) * max t-degree over the primitive integral model
    /// of the minimal polynomial.
    pub fn height(&self) -> Rational64 {
        let (_, prim) = self.inner.minpoly.primitive_part();
        Rational64::new(prim.deg_t().max(0), self.degree() as i64)
    }

    /// Series embeddings at infinity, memoized at the largest precision
    /// requested so far.
    pub fn embeddings(&self, prec: i64, cfg: &NpConfig) -> Result<Vec<PuiseuxRoot>> {
        let mut guard = self.inner.embeddings.lock().unwrap();
        if let Some((have, roots)) = guard.as_ref() {
            if *have >= prec {
                return Ok(roots.clone());
            }
        }
        let roots = newton_puiseux_roots(&self.inner.minpoly, prec, cfg)?;
        *guard = Some((prec, roots.clone()));
        Ok(roots)
    }

    /// The generator alpha as an element of K(alpha).
    pub fn generator(&self) -> ExtElem {
        let field = self.field();
        let d = self.degree();
        let mut coords = vec![RatFunc::zero(field); d];
        if d == 1 {
            // alpha is rational: -c0
            coords[0] = self.inner.minpoly.coeff(0).neg();
        } else {
            coords[1] = RatFunc::one(field);
        }
        ExtElem {
            parent: self.clone(),
            coords,
        }
    }

    pub fn from_ratfunc(&self, r: &RatFunc) -> ExtElem {
        let d = self.degree();
        let mut coords = vec![RatFunc::zero(self.field()); d];
        coords[0] = r.clone();
        ExtElem {
            parent: self.clone(),
            coords,
        }
    }

    pub fn zero(&self) -> ExtElem {
        self.from_ratfunc(&RatFunc::zero(self.field()))
    }

    pub fn one(&self) -> ExtElem {
        self.from_ratfunc(&RatFunc::one(self.field()))
    }

    /// Reduce a z-polynomial mod the minimal polynomial, producing the value
    /// at the generator.
    pub fn eval_kpoly(&self, g: &KPoly) -> ExtElem {
        let r = g.rem(&self.inner.minpoly);
        let d = self.degree();
        let mut coords = vec![RatFunc::zero(self.field()); d];
        for i in 0..d {
            coords[i] = r.coeff(i);
        }
        ExtElem {
            parent: self.clone(),
            coords,
        }
    }
}

/// An element of K(alpha), as coordinates in the power basis 1, alpha, ...,
/// alpha^(d-1).
#[derive(Clone, PartialEq, Eq)]
pub struct ExtElem {
    parent: AlgElem,
    coords: Vec<RatFunc>,
}

impl std::fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c:?})a^{i}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl ExtElem {
    pub fn parent(&self) -> &AlgElem {
        &self.parent
    }
    pub fn coords(&self) -> &[RatFunc] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> Option<&RatFunc> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn assert_same(&self, other: &ExtElem) {
        assert!(
            self.parent == other.parent,
            "elements of different extensions"
        );
    }

    pub fn add(&self, other: &ExtElem) -> ExtElem {
        self.assert_same(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.add(b))
            .collect();
        ExtElem {
            parent: self.parent.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &ExtElem) -> ExtElem {
        self.assert_same(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.sub(b))
            .collect();
        ExtElem {
            parent: self.parent.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> ExtElem {
        ExtElem {
            parent: self.parent.clone(),
            coords: self.coords.iter().map(|c| c.neg()).collect(),
        }
    }

    fn to_kpoly(&self) -> KPoly {
        KPoly::new(self.parent.field().clone(), self.coords.clone())
    }

    fn from_kpoly(parent: &AlgElem, k: &KPoly) -> ExtElem {
        let d = parent.degree();
        let r = k.rem(parent.minpoly());
        let mut coords = vec![RatFunc::zero(parent.field()); d];
        for i in 0..d.min(r.coeffs().len()) {
            coords[i] = r.coeff(i);
        }
        ExtElem {
            parent: parent.clone(),
            coords,
        }
    }

    pub fn mul(&self, other: &ExtElem) -> ExtElem {
        self.assert_same(other);
        let prod = self.to_kpoly().mul(&other.to_kpoly());
        Self::from_kpoly(&self.parent, &prod)
    }

    pub fn scale(&self, c: &RatFunc) -> ExtElem {
        ExtElem {
            parent: self.parent.clone(),
            coords: self.coords.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Inverse via extended gcd with the minimal polynomial. A nontrivial
    /// gcd contradicts certified irreducibility and is surfaced as
    /// `NotInvertible`.
    pub fn inv(&self) -> Result<ExtElem> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let a = self.to_kpoly();
        let (g, s, _) = a.xgcd(self.parent.minpoly());
        if g.degree() != Some(0) {
            return Err(Error::NotInvertible);
        }
        let sinv = g.coeff(0).inv()?;
        Ok(Self::from_kpoly(&self.parent, &s.scale(&sinv)))
    }

    pub fn div(&self, other: &ExtElem) -> Result<ExtElem> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u128) -> ExtElem {
        let mut acc = self.parent.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Characteristic polynomial of multiplication by this element, by the
    /// division-free Berkowitz method; a power of the minimal polynomial.
    pub fn char_poly(&self) -> KPoly {
        let field = self.parent.field().clone();
        let d = self.parent.degree();
        // matrix of multiplication by self on the power basis
        let mut m = vec![vec![RatFunc::zero(&field); d]; d];
        let mut col = self.clone();
        for j in 0..d {
            for i in 0..d {
                m[i][j] = col.coords[i].clone();
            }
            col = col.mul(&self.parent.generator());
        }
        berkowitz_char_poly(&m, &field)
    }

    /// Weil height of the element (degree-normalized pole count), via the
    /// characteristic polynomial.
    pub fn height(&self) -> Rational64 {
        if let Some(r) = self.is_rational() {
            return Rational64::from_integer(r.height());
        }
        let cp = self.char_poly();
        let (_, prim) = cp.primitive_part();
        Rational64::new(prim.deg_t().max(0), self.parent.degree() as i64)
    }
}

/// Characteristic polynomial det(x I - M) over K without divisions
/// (Berkowitz), returned as a polynomial in x over K.
fn berkowitz_char_poly(m: &[Vec<RatFunc>], field: &Field) -> KPoly {
    let n = m.len();
    // vectors of polynomial coefficients, built iteratively
    let mut c: Vec<RatFunc> = vec![RatFunc::one(field)];
    for i in 0..n {
        // principal submatrix of size i+1
        // Toeplitz column: [1, -m[i][i], -(R*S terms), ...]
        let mut col: Vec<RatFunc> = Vec::with_capacity(i + 2);
        col.push(RatFunc::one(field));
        col.push(m[i][i].neg());
        // powers: R A^k S where R = row (m[i][0..i]), S = column (m[0..i][i])
        if i > 0 {
            let r: Vec<RatFunc> = (0..i).map(|j| m[i][j].clone()).collect();
            let s: Vec<RatFunc> = (0..i).map(|j| m[j][i].clone()).collect();
            let mut vec_s = s.clone();
            for _k in 0..i {
                // entry: - R * vec_s
                let mut dot = RatFunc::zero(field);
                for j in 0..i {
                    dot = dot.add(&r[j].mul(&vec_s[j]));
                }
                col.push(dot.neg());
                // vec_s = A * vec_s with A = principal i x i submatrix
                let mut next = vec![RatFunc::zero(field); i];
                for a in 0..i {
                    for b in 0..i {
                        next[a] = next[a].add(&m[a][b].mul(&vec_s[b]));
                    }
                }
                vec_s = next;
            }
        }
        // c = toeplitz(col) * c
        let mut next = vec![RatFunc::zero(field); c.len() + 1];
        for (row, nc) in next.iter_mut().enumerate() {
            for (k, cv) in c.iter().enumerate() {
                if row >= k && row - k < col.len() {
                    *nc = nc.add(&col[row - k].mul(cv));
                }
            }
        }
        c = next;
    }
    // c holds coefficients of det(xI - M): c[0] x^n + c[1] x^(n-1) + ...
    let coeffs: Vec<RatFunc> = c.into_iter().rev().collect();
    KPoly::new(field.clone(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::poly::Poly;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn t(field: &Field) -> RatFunc {
        RatFunc::var(field)
    }

    fn sqrt_t(field: &Field) -> AlgElem {
        let g = KPoly::new(
            field.clone(),
            vec![t(field).neg(), RatFunc::zero(field), RatFunc::one(field)],
        );
        AlgElem::new_checked(g).unwrap()
    }

    #[test]
    fn generator_squares_to_t() {
        let f = f5();
        let a = sqrt_t(&f);
        let alpha = a.generator();
        let sq = alpha.mul(&alpha);
        assert_eq!(sq.is_rational().unwrap(), &t(&f));
    }

    #[test]
    fn inverse_of_generator() {
        // 1/alpha = alpha/t for alpha = sqrt(t)
        let f = f5();
        let a = sqrt_t(&f);
        let alpha = a.generator();
        let inv = alpha.inv().unwrap();
        let expected = alpha.scale(&t(&f).inv().unwrap());
        assert_eq!(inv, expected);
        assert_eq!(alpha.mul(&inv), a.one());
    }

    #[test]
    fn cubic_norm_identity() {
        // parent z^3 - t: (alpha + 1)(alpha^2 - alpha + 1) = alpha^3 + 1 = t + 1
        let f = f5();
        let g = KPoly::new(
            f.clone(),
            vec![
                t(&f).neg(),
                RatFunc::zero(&f),
                RatFunc::zero(&f),
                RatFunc::one(&f),
            ],
        );
        let a = AlgElem::new_checked(g).unwrap();
        let alpha = a.generator();
        let one = a.one();
        let lhs = alpha
            .add(&one)
            .mul(&alpha.mul(&alpha).sub(&alpha).add(&one));
        let expect = a.from_ratfunc(&t(&f).add(&RatFunc::one(&f)));
        assert_eq!(lhs, expect);
    }

    #[test]
    fn char_poly_of_generator_is_minpoly() {
        let f = f5();
        let a = sqrt_t(&f);
        let alpha = a.generator();
        let cp = alpha.char_poly();
        assert_eq!(cp.monic(), a.minpoly().clone());
    }

    #[test]
    fn heights() {
        let f = f5();
        let a = sqrt_t(&f);
        // h(sqrt t) = 1/2
        assert_eq!(a.height(), Rational64::new(1, 2));
        let alpha = a.generator();
        assert_eq!(alpha.height(), Rational64::new(1, 2));
        // h(alpha^2) = h(t) = 1
        assert_eq!(alpha.mul(&alpha).height(), Rational64::from_integer(1));
        // h of a rational element
        let r = a.from_ratfunc(
            &RatFunc::new(
                Poly::from_ints(&f, &[1, 0, 0, 1]),
                Poly::from_ints(&f, &[0, 1]),
            )
            .unwrap(),
        );
        assert_eq!(r.height(), Rational64::from_integer(3));
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = f5();
        let a = sqrt_t(&f);
        assert_eq!(a.zero().inv().unwrap_err(), Error::ZeroInput);
    }

    #[test]
    fn reducible_minpoly_rejected() {
        let f = f5();
        // z^2 - t^2 = (z-t)(z+t)
        let t2 = t(&f).mul(&t(&f));
        let g = KPoly::new(
            f.clone(),
            vec![t2.neg(), RatFunc::zero(&f), RatFunc::one(&f)],
        );
        assert_eq!(AlgElem::new_checked(g).unwrap_err(), Error::NotIrreducible);
    }
}
