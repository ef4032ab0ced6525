//! Polynomials in z with coefficients in K = F_q(t), plus the integral model
//! F_q[t][z] used by factorization and resultant computations.

use std::fmt;

use super::field::{Field, Fq};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// A polynomial in z over K, dense ascending coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct KPoly {
    field: Field,
    coeffs: Vec<RatFunc>,
}

impl fmt::Debug for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = format!("{c:?}");
            let part = match i {
                0 => cs,
                1 => format!("({cs})*z"),
                _ => format!("({cs})*z^{i}"),
            };
            parts.push(part);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl KPoly {
    pub fn new(field: Field, mut coeffs: Vec<RatFunc>) -> KPoly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        KPoly { field, coeffs }
    }

    pub fn zero(field: &Field) -> KPoly {
        KPoly {
            field: field.clone(),
            coeffs: vec![],
        }
    }

    pub fn one(field: &Field) -> KPoly {
        KPoly::constant(RatFunc::one(field))
    }

    pub fn constant(c: RatFunc) -> KPoly {
        let field = c.field().clone();
        KPoly::new(field, vec![c])
    }

    pub fn var(field: &Field) -> KPoly {
        KPoly::new(
            field.clone(),
            vec![RatFunc::zero(field), RatFunc::one(field)],
        )
    }

    /// Build from integer coefficient lists: each entry is (numerator ints).
    pub fn from_int_coeffs(field: &Field, coeffs: &[&[i64]]) -> KPoly {
        let cs = coeffs
            .iter()
            .map(|ints| RatFunc::from_poly(Poly::from_ints(field, ints)))
            .collect();
        KPoly::new(field.clone(), cs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(&self.field))
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }
    pub fn lc(&self) -> RatFunc {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(&self.field))
    }
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        KPoly::new(self.field.clone(), out)
    }

    pub fn sub(&self, other: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).sub(&other.coeff(i)));
        }
        KPoly::new(self.field.clone(), out)
    }

    pub fn neg(&self) -> KPoly {
        KPoly::new(
            self.field.clone(),
            self.coeffs.iter().map(|c| c.neg()).collect(),
        )
    }

    pub fn mul(&self, other: &KPoly) -> KPoly {
        if self.is_zero() || other.is_zero() {
            return KPoly::zero(&self.field);
        }
        let mut out = vec![RatFunc::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        KPoly::new(self.field.clone(), out)
    }

    pub fn scale(&self, c: &RatFunc) -> KPoly {
        KPoly::new(
            self.field.clone(),
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    pub fn shift_up(&self, n: usize) -> KPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![RatFunc::zero(&self.field); n];
        coeffs.extend_from_slice(&self.coeffs);
        KPoly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn divrem(&self, div: &KPoly) -> (KPoly, KPoly) {
        assert!(!div.is_zero(), "division by zero polynomial in K[z]");
        if self.coeffs.len() < div.coeffs.len() {
            return (KPoly::zero(&self.field), self.clone());
        }
        let lead_inv = div.lc().inv().expect("nonzero leading coefficient");
        let dd = div.coeffs.len() - 1;
        let mut rem: Vec<RatFunc> = self.coeffs.clone();
        let qd = rem.len() - 1 - dd;
        let mut quot = vec![RatFunc::zero(&self.field); qd + 1];
        for i in (0..=qd).rev() {
            let c = rem[i + dd].mul(&lead_inv);
            if !c.is_zero() {
                for (j, dc) in div.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].sub(&c.mul(dc));
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (
            KPoly::new(self.field.clone(), quot),
            KPoly::new(self.field.clone(), rem),
        )
    }

    pub fn rem(&self, div: &KPoly) -> KPoly {
        self.divrem(div).1
    }

    pub fn div_exact(&self, div: &KPoly) -> KPoly {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "inexact division in K[z]");
        q
    }

    pub fn divides(&self, other: &KPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic gcd in K[z], via a primitive pseudo-remainder sequence over
    /// F_q[t] to avoid fraction-field coefficient blowup.
    pub fn gcd(&self, other: &KPoly) -> KPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (_, mut a) = self.primitive_part();
        let (_, mut b) = other.primitive_part();
        if a.deg_z() < b.deg_z() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.is_zero() {
                return a.to_kpoly().monic();
            }
            if b.deg_z() == 0 {
                return KPoly::one(&self.field);
            }
            let r = pseudo_rem(&a, &b);
            if r.is_zero() {
                return b.to_kpoly().monic();
            }
            let rp = r.primitive_t();
            a = b;
            b = rp;
        }
    }

    /// Extended gcd: (g, s, t) with s*self + t*other = g, g monic.
    pub fn xgcd(&self, other: &KPoly) -> (KPoly, KPoly, KPoly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (KPoly::one(f), KPoly::zero(f));
        let (mut t0, mut t1) = (KPoly::zero(f), KPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = r0.lc().inv().expect("nonzero lc");
        (r0.scale(&c), s0.scale(&c), t0.scale(&c))
    }

    pub fn monic(&self) -> KPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.lc().inv().expect("nonzero lc");
        self.scale(&c)
    }

    pub fn pow(&self, e: u32) -> KPoly {
        let mut acc = KPoly::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative_z(&self) -> KPoly {
        if self.coeffs.len() <= 1 {
            return KPoly::zero(&self.field);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for i in 1..self.coeffs.len() {
            let n = RatFunc::from_int(&self.field, i as i64);
            out.push(self.coeffs[i].mul(&n));
        }
        KPoly::new(self.field.clone(), out)
    }

    /// Coefficient-wise d/dt.
    pub fn derivative_t(&self) -> KPoly {
        KPoly::new(
            self.field.clone(),
            self.coeffs.iter().map(|c| c.derivative_t()).collect(),
        )
    }

    pub fn eval_rat(&self, x: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Both-chart evaluation: value of the homogenized polynomial at [x0:x1],
    /// i.e. sum c_i x0^i x1^(n-i).
    pub fn eval_proj(&self, x0: &RatFunc, x1: &RatFunc, n: usize) -> RatFunc {
        let mut acc = RatFunc::zero(&self.field);
        let mut x0p = RatFunc::one(&self.field);
        let mut pows1 = Vec::with_capacity(n + 1);
        let mut x1p = RatFunc::one(&self.field);
        for _ in 0..=n {
            pows1.push(x1p.clone());
            x1p = x1p.mul(x1);
        }
        for i in 0..=n {
            let c = self.coeff(i);
            if !c.is_zero() {
                acc = acc.add(&c.mul(&x0p).mul(&pows1[n - i]));
            }
            x0p = x0p.mul(x0);
        }
        acc
    }

    /// Separability test: derivative nonzero and coprime with self.
    pub fn is_separable(&self) -> bool {
        let d = self.derivative_z();
        if d.is_zero() {
            return false;
        }
        self.gcd(&d).degree() == Some(0)
    }

    /// gcd(self, d/dz self) is constant; for derivative zero this is false
    /// unless the polynomial is constant.
    pub fn is_squarefree(&self) -> bool {
        self.is_separable() || self.is_constant()
    }

    /// Substitute z -> (a z + b)/(c z + d) and clear denominators: returns
    /// sum_i f_i (a z + b)^i (c z + d)^(n - i), a polynomial in z.
    pub fn compose_mobius(&self, a: &RatFunc, b: &RatFunc, c: &RatFunc, d: &RatFunc) -> KPoly {
        let field = &self.field;
        let n = match self.degree() {
            None => return KPoly::zero(field),
            Some(n) => n,
        };
        let lin1 = KPoly::new(field.clone(), vec![b.clone(), a.clone()]); // a z + b
        let lin2 = KPoly::new(field.clone(), vec![d.clone(), c.clone()]); // c z + d
        let mut pows1 = vec![KPoly::one(field)];
        let mut pows2 = vec![KPoly::one(field)];
        for i in 0..n {
            pows1.push(pows1[i].mul(&lin1));
            pows2.push(pows2[i].mul(&lin2));
        }
        let mut acc = KPoly::zero(field);
        for i in 0..=n {
            let coef = self.coeff(i);
            if coef.is_zero() {
                continue;
            }
            acc = acc.add(&pows1[i].mul(&pows2[n - i]).scale(&coef));
        }
        acc
    }

    /// Substitute z -> z + a.
    pub fn shift_z(&self, a: &RatFunc) -> KPoly {
        let field = &self.field;
        let one = RatFunc::one(field);
        let zero = RatFunc::zero(field);
        self.compose_mobius(&one, a, &zero, &one)
    }

    /// Clear denominators and t-content: returns (c, B) with self = c * B,
    /// where B has coprime polynomial coefficients (primitive in F_q[t][z])
    /// and c in K.
    pub fn primitive_part(&self) -> (RatFunc, BiPoly) {
        let field = &self.field;
        if self.is_zero() {
            return (
                RatFunc::zero(field),
                BiPoly {
                    field: field.clone(),
                    coeffs: vec![],
                },
            );
        }
        // lcm of denominators
        let mut den = Poly::one(field);
        for c in &self.coeffs {
            let g = den.gcd(c.den());
            den = den.mul(&c.den().div_exact(&g));
        }
        let cleared: Vec<Poly> = self
            .coeffs
            .iter()
            .map(|c| c.num().mul(&den.div_exact(c.den())))
            .collect();
        // t-content
        let mut cont = Poly::zero(field);
        for c in &cleared {
            cont = cont.gcd(c);
            if cont.is_one() {
                break;
            }
        }
        if cont.is_zero() {
            cont = Poly::one(field);
        }
        let prim: Vec<Poly> = cleared.iter().map(|c| c.div_exact(&cont)).collect();
        // normalize: make leading z-coefficient's leading t-coefficient 1
        let lead_unit = prim.last().unwrap().lc();
        let inv = field.inv(lead_unit);
        let prim: Vec<Poly> = prim.iter().map(|c| c.scale(inv)).collect();
        let content = RatFunc::new(cont.scale(lead_unit), den).expect("nonzero denominator");
        (
            content,
            BiPoly {
                field: field.clone(),
                coeffs: prim,
            },
        )
    }

    /// Resultant with respect to z. Convention fixed by
    /// Res(f, g) = lc(g)^deg(f) * prod over roots b of g of f(b),
    /// so Res(z - a, z - b) = b - a. Zero iff f and g share a z-factor.
    pub fn resultant_z(&self, other: &KPoly) -> RatFunc {
        resultant(self, other)
    }

    /// Max t-degree over the numerators/denominators after clearing: the
    /// t-degree of coefficients in the primitive integral model.
    pub fn coeff_height(&self) -> i64 {
        let (_, b) = self.primitive_part();
        b.deg_t()
    }

    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc, field: &Field) -> KPoly {
        KPoly::new(field.clone(), self.coeffs.iter().map(f).collect())
    }

    /// JSON with full coefficient data: ascending z-coefficients, each a
    /// numerator/denominator pair of ascending t-coefficient digit lists.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self.coeffs.iter().map(|c| c.to_json()).collect();
        serde_json::json!({"z_coeffs": coeffs, "display": format!("{self:?}")})
    }
}

fn resultant(f: &KPoly, g: &KPoly) -> RatFunc {
    let field = f.field().clone();
    if f.is_zero() || g.is_zero() {
        return RatFunc::zero(&field);
    }
    let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
    if dg == 0 {
        return g.lc().pow(df as u32);
    }
    if df == 0 {
        return f.lc().pow(dg as u32);
    }
    if df < dg {
        let sign = if (df * dg) % 2 == 1 { -1 } else { 1 };
        return resultant(g, f).scale(field.from_int(sign));
    }
    let r = f.rem(g);
    if r.is_zero() {
        return RatFunc::zero(&field);
    }
    let dr = r.degree().unwrap();
    let lead_pow = g.lc().pow((df - dr) as u32);
    lead_pow.mul(&resultant(&r, g))
}

/// Resultant of the degree-d homogenizations of f and g (binary forms),
/// as the determinant of the 2d x 2d Sylvester matrix. This is what controls
/// cancellation in homogeneous evaluation of a rational map.
pub fn resultant_forms(f: &KPoly, g: &KPoly, d: usize) -> RatFunc {
    let field = f.field().clone();
    let n = 2 * d;
    let mut mat = vec![vec![RatFunc::zero(&field); n]; n];
    for row in 0..d {
        for i in 0..=d {
            // descending coefficients of f as a degree-d form
            mat[row][row + i] = f.coeff(d - i);
        }
    }
    for row in 0..d {
        for i in 0..=d {
            mat[d + row][row + i] = g.coeff(d - i);
        }
    }
    determinant(mat)
}

/// Determinant over K by fraction Gaussian elimination.
pub fn determinant(mut mat: Vec<Vec<RatFunc>>) -> RatFunc {
    let n = mat.len();
    if n == 0 {
        return RatFunc::one(&Field::prime(2).unwrap());
    }
    let field = mat[0][0].field().clone();
    let mut det = RatFunc::one(&field);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !mat[r][col].is_zero());
        let pivot = match pivot {
            None => return RatFunc::zero(&field),
            Some(p) => p,
        };
        if pivot != col {
            mat.swap(pivot, col);
            det = det.neg();
        }
        let pval = mat[col][col].clone();
        det = det.mul(&pval);
        let pinv = pval.inv().unwrap();
        for r in col + 1..n {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].mul(&pinv);
            for c in col..n {
                let sub = factor.mul(&mat[col][c]);
                mat[r][c] = mat[r][c].sub(&sub);
            }
        }
    }
    det
}

/// Solve a linear system A x = b over K by Gaussian elimination.
/// Returns None if inconsistent; free variables are set to zero.
pub fn solve_linear(
    mut a: Vec<Vec<RatFunc>>,
    mut b: Vec<RatFunc>,
    field: &Field,
) -> Option<Vec<RatFunc>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let piv = (r..rows).find(|&i| !a[i][c].is_zero());
        let piv = match piv {
            None => continue,
            Some(p) => p,
        };
        a.swap(piv, r);
        b.swap(piv, r);
        let inv = a[r][c].inv().unwrap();
        for cc in c..cols {
            a[r][cc] = a[r][cc].mul(&inv);
        }
        b[r] = b[r].mul(&inv);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for cc in c..cols {
                    let sub = f.mul(&a[r][cc]);
                    a[i][cc] = a[i][cc].sub(&sub);
                }
                let sub = f.mul(&b[r]);
                b[i] = b[i].sub(&sub);
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // consistency
    for i in r..rows {
        if !b[i].is_zero() {
            return None;
        }
    }
    let mut x = vec![RatFunc::zero(field); cols];
    for (row, &c) in pivot_cols.iter().enumerate() {
        x[c] = b[row].clone();
    }
    Some(x)
}

/// Basis of the kernel of a rows x cols matrix over K.
pub fn kernel_basis(mut a: Vec<Vec<RatFunc>>, field: &Field) -> Vec<Vec<RatFunc>> {
    let rows = a.len();
    let cols = if rows == 0 { return vec![] } else { a[0].len() };
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0usize;
    for c in 0..cols {
        let piv = (r..rows).find(|&i| !a[i][c].is_zero());
        let piv = match piv {
            None => continue,
            Some(p) => p,
        };
        a.swap(piv, r);
        let inv = a[r][c].inv().unwrap();
        for cc in c..cols {
            a[r][cc] = a[r][cc].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for cc in c..cols {
                    let sub = f.mul(&a[r][cc]);
                    a[i][cc] = a[i][cc].sub(&sub);
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for c in 0..cols {
        if pivot_of_col[c].is_some() {
            continue;
        }
        let mut v = vec![RatFunc::zero(field); cols];
        v[c] = RatFunc::one(field);
        for cc in 0..cols {
            if let Some(pr) = pivot_of_col[cc] {
                v[cc] = a[pr][c].neg();
            }
        }
        basis.push(v);
    }
    basis
}

/// A polynomial in F_q[t][z]: dense in z, coefficients are t-polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPoly {
    field: Field,
    coeffs: Vec<Poly>,
}

impl BiPoly {
    pub fn new(field: Field, mut coeffs: Vec<Poly>) -> BiPoly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { field, coeffs }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> Poly {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&self.field))
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn deg_z(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }
    pub fn deg_t(&self) -> i64 {
        self.coeffs.iter().map(|c| c.deg_i()).max().unwrap_or(-1)
    }
    pub fn lc_z(&self) -> Poly {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| Poly::zero(&self.field))
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::new(self.field.clone(), vec![]);
        }
        let mut out = vec![Poly::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        BiPoly::new(self.field.clone(), out)
    }

    /// Specialize t = c, producing a univariate polynomial in z.
    pub fn specialize_t(&self, c: Fq) -> Poly {
        let vals: Vec<Fq> = self.coeffs.iter().map(|p| p.eval(c)).collect();
        Poly::new(self.field.clone(), vals)
    }

    pub fn to_kpoly(&self) -> KPoly {
        KPoly::new(
            self.field.clone(),
            self.coeffs
                .iter()
                .map(|p| RatFunc::from_poly(p.clone()))
                .collect(),
        )
    }

    pub fn map_coeffs(&self, target: &Field, f: impl Fn(&Poly) -> Poly) -> BiPoly {
        BiPoly::new(target.clone(), self.coeffs.iter().map(f).collect())
    }

    pub fn derivative_z(&self) -> BiPoly {
        if self.coeffs.len() <= 1 {
            return BiPoly::new(self.field.clone(), vec![]);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for i in 1..self.coeffs.len() {
            out.push(self.coeffs[i].scale(self.field.from_int(i as i64)));
        }
        BiPoly::new(self.field.clone(), out)
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).sub(&other.coeff(i)));
        }
        BiPoly::new(self.field.clone(), out)
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        BiPoly::new(self.field.clone(), out)
    }

    /// Multiply every z-coefficient by a t-polynomial.
    pub fn scale_t(&self, c: &Poly) -> BiPoly {
        BiPoly::new(
            self.field.clone(),
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    pub fn shift_z(&self, n: usize) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Poly::zero(&self.field); n];
        coeffs.extend_from_slice(&self.coeffs);
        BiPoly {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Remove the t-content.
    pub fn primitive_t(&self) -> BiPoly {
        let mut cont = Poly::zero(&self.field);
        for c in &self.coeffs {
            cont = cont.gcd(c);
            if cont.is_one() {
                break;
            }
        }
        if cont.is_zero() || cont.is_one() {
            return self.clone();
        }
        BiPoly::new(
            self.field.clone(),
            self.coeffs.iter().map(|c| c.div_exact(&cont)).collect(),
        )
    }
}

/// Pseudo-remainder of a by b in F_q[t][z] (b nonzero, deg_z b <= deg_z a).
fn pseudo_rem(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let db = b.deg_z();
    let lcb = b.lc_z();
    let mut r = a.clone();
    while !r.is_zero() && r.deg_z() >= db {
        let dr = r.deg_z();
        let lr = r.lc_z();
        r = r
            .scale_t(&lcb)
            .sub(&b.shift_z((dr - db) as usize).scale_t(&lr));
    }
    r
}

/// Evaluate a rational map pair homogeneously at [x0 : x1] given as
/// polynomials, returning un-reduced (numerator, denominator) values.
pub fn eval_pair_proj(
    f: &KPoly,
    g: &KPoly,
    d: usize,
    x0: &RatFunc,
    x1: &RatFunc,
) -> (RatFunc, RatFunc) {
    (f.eval_proj(x0, x1, d), g.eval_proj(x0, x1, d))
}

/// Sanity: f, g not both zero, shared-root test via resultant.
pub fn have_common_factor(f: &KPoly, g: &KPoly) -> Result<bool> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::InvalidInput("both polynomials are zero".into()));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(false);
    }
    Ok(f.gcd(g).degree() != Some(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn t(field: &Field) -> RatFunc {
        RatFunc::var(field)
    }

    #[test]
    fn resultant_linear() {
        let f = f5();
        let a = RatFunc::from_poly(Poly::from_ints(&f, &[2, 1])); // a = t + 2
        let b = t(&f);
        // Res(z - a, z - b) = b - a
        let za = KPoly::new(f.clone(), vec![a.neg(), RatFunc::one(&f)]);
        let zb = KPoly::new(f.clone(), vec![b.neg(), RatFunc::one(&f)]);
        assert_eq!(za.resultant_z(&zb), b.sub(&a));
    }

    #[test]
    fn resultant_with_constant() {
        let f = f5();
        // Res(z^2 + t, 1) = 1
        let g = KPoly::new(f.clone(), vec![t(&f), RatFunc::zero(&f), RatFunc::one(&f)]);
        assert_eq!(g.resultant_z(&KPoly::one(&f)), RatFunc::one(&f));
    }

    #[test]
    fn resultant_by_evaluation() {
        let f = f5();
        // Res(z^2 - t, z - t) = t^2 - t
        let g = KPoly::new(
            f.clone(),
            vec![t(&f).neg(), RatFunc::zero(&f), RatFunc::one(&f)],
        );
        let h = KPoly::new(f.clone(), vec![t(&f).neg(), RatFunc::one(&f)]);
        let expect = t(&f).mul(&t(&f)).sub(&t(&f));
        assert_eq!(g.resultant_z(&h), expect);
    }

    #[test]
    fn resultant_detects_common_factor() {
        let f = f5();
        let a = KPoly::new(f.clone(), vec![t(&f).neg(), RatFunc::one(&f)]); // z - t
        let b = a.mul(&KPoly::new(
            f.clone(),
            vec![RatFunc::one(&f), RatFunc::one(&f)],
        ));
        assert!(a.resultant_z(&b).is_zero());
        assert!(have_common_factor(&a, &b).unwrap());
    }

    #[test]
    fn primitive_part_roundtrip() {
        let f = f5();
        // (t z^2 + z)/ (t^2): content should be 1/t^2 * gcd-free structure
        let c0 = RatFunc::zero(&f);
        let c1 = RatFunc::new(Poly::one(&f), Poly::monomial(&f, Fq(1), 2)).unwrap();
        let c2 = RatFunc::new(Poly::var(&f), Poly::monomial(&f, Fq(1), 2)).unwrap();
        let g = KPoly::new(f.clone(), vec![c0, c1, c2]);
        let (content, prim) = g.primitive_part();
        // reassemble
        let back = prim.to_kpoly().scale(&content);
        assert_eq!(back, g);
        // primitive: t-content of coefficients is 1
        let mut cont = Poly::zero(&f);
        for c in prim.coeffs() {
            cont = cont.gcd(c);
        }
        assert!(cont.is_one());
    }

    #[test]
    fn mobius_composition_degree() {
        let f = f5();
        // f(z) = z^2 + t composed with z -> 1/z gives 1 + t z^2 (after clearing)
        let g = KPoly::new(f.clone(), vec![t(&f), RatFunc::zero(&f), RatFunc::one(&f)]);
        let comp = g.compose_mobius(
            &RatFunc::zero(&f),
            &RatFunc::one(&f),
            &RatFunc::one(&f),
            &RatFunc::zero(&f),
        );
        let expect = KPoly::new(f.clone(), vec![RatFunc::one(&f), RatFunc::zero(&f), t(&f)]);
        assert_eq!(comp, expect);
    }

    #[test]
    fn solve_linear_small() {
        let f = f5();
        let one = RatFunc::one(&f);
        let tt = t(&f);
        // x + t y = t^2 ; y = t  => x = 0
        let a = vec![
            vec![one.clone(), tt.clone()],
            vec![RatFunc::zero(&f), one.clone()],
        ];
        let b = vec![tt.mul(&tt), tt.clone()];
        let x = solve_linear(a, b, &f).unwrap();
        assert!(x[0].is_zero());
        assert_eq!(x[1], tt);
    }
}
