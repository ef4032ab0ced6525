//! Dense univariate polynomials over F_q.

use std::fmt;

use rand::Rng;

use super::field::{Field, Fq};

const KARATSUBA_CUTOFF: usize = 32;

/// A polynomial over F_q, dense ascending coefficients.
/// Invariant: `coeffs` is empty iff the polynomial is zero, otherwise the
/// last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Fq>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("t"))
    }
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Fq>) -> Poly {
        while coeffs.last() == Some(&Fq(0)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_ints(field: &Field, ints: &[i64]) -> Poly {
        let coeffs = ints.iter().map(|&n| field.from_int(n)).collect();
        Poly::new(field.clone(), coeffs)
    }

    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: vec![],
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: vec![Fq(1)],
        }
    }

    pub fn constant(field: &Field, c: Fq) -> Poly {
        Poly::new(field.clone(), vec![c])
    }

    /// The monomial c * t^n.
    pub fn monomial(field: &Field, c: Fq, n: usize) -> Poly {
        if field.is_zero(c) {
            return Poly::zero(field);
        }
        let mut coeffs = vec![Fq(0); n + 1];
        coeffs[n] = c;
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn var(field: &Field) -> Poly {
        Poly::monomial(field, Fq(1), 1)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq(0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Fq(1)]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with deg(0) = -1, convenient for height arithmetic.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> Fq {
        *self.coeffs.last().unwrap_or(&Fq(0))
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == Fq(1)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.add(self.coeff(i), other.coeff(i)));
        }
        Poly::new(f.clone(), out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.sub(self.coeff(i), other.coeff(i)));
        }
        Poly::new(f.clone(), out)
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: Fq) -> Poly {
        let f = &self.field;
        if f.is_zero(c) {
            return Poly::zero(f);
        }
        Poly::new(
            f.clone(),
            self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        )
    }

    pub fn shift_up(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Fq(0); n];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let out = mul_slices(&self.field, &self.coeffs, &other.coeffs);
        Poly::new(self.field.clone(), out)
    }

    /// Euclidean division, panics if divisor is zero.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        let f = &self.field;
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < div.coeffs.len() {
            return (Poly::zero(f), self.clone());
        }
        let dlead_inv = f.inv(div.lc());
        let dd = div.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let qd = rem.len() - 1 - dd;
        let mut quot = vec![Fq(0); qd + 1];
        for i in (0..=qd).rev() {
            let c = f.mul(rem[i + dd], dlead_inv);
            quot[i] = c;
            if !f.is_zero(c) {
                for (j, &dc) in div.coeffs.iter().enumerate() {
                    rem[i + j] = f.sub(rem[i + j], f.mul(c, dc));
                }
            }
        }
        rem.truncate(dd);
        (Poly::new(f.clone(), quot), Poly::new(f.clone(), rem))
    }

    pub fn rem(&self, div: &Poly) -> Poly {
        self.divrem(div).1
    }

    pub fn div_exact(&self, div: &Poly) -> Poly {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, s, t) with s*self + t*other = g, g monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
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
        let c = f.inv(r0.lc());
        (r0.scale(c), s0.scale(c), t0.scale(c))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lc()))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        if self.coeffs.len() <= 1 {
            return Poly::zero(f);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for i in 1..self.coeffs.len() {
            let n = f.from_int(i as i64);
            out.push(f.mul(self.coeffs[i], n));
        }
        Poly::new(f.clone(), out)
    }

    pub fn eval(&self, x: Fq) -> Fq {
        let f = &self.field;
        let mut acc = Fq(0);
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// self(x)^e mod m, binary powering.
    pub fn pow_mod(&self, mut e: u128, m: &Poly) -> Poly {
        let f = &self.field;
        let mut acc = Poly::one(f);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Apply a coefficient map (e.g. a field embedding or Frobenius).
    pub fn map_coeffs(&self, target: &Field, f: impl Fn(Fq) -> Fq) -> Poly {
        Poly::new(target.clone(), self.coeffs.iter().map(|&c| f(c)).collect())
    }

    /// Random polynomial of degree exactly n.
    pub fn random<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Poly {
        let mut coeffs: Vec<Fq> = (0..n).map(|_| field.random(rng)).collect();
        coeffs.push(field.random_nonzero(rng));
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Random polynomial of degree at most n (may be zero).
    pub fn random_up_to<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Poly {
        let coeffs: Vec<Fq> = (0..=n).map(|_| field.random(rng)).collect();
        Poly::new(field.clone(), coeffs)
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let cs = f.fq_to_string(c);
            let part = match i {
                0 => cs,
                1 => {
                    if c == Fq(1) && f.ext_deg() == 1 {
                        var.to_string()
                    } else {
                        format!("{cs}*{var}")
                    }
                }
                _ => {
                    if c == Fq(1) && f.ext_deg() == 1 {
                        format!("{var}^{i}")
                    } else {
                        format!("{cs}*{var}^{i}")
                    }
                }
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

fn mul_slices(f: &Field, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    if a.len().min(b.len()) < KARATSUBA_CUTOFF {
        return mul_schoolbook(f, a, b);
    }
    let half = a.len().max(b.len()) / 2;
    let (a0, a1) = split_at_clamped(a, half);
    let (b0, b1) = split_at_clamped(b, half);
    let z0 = mul_slices(f, a0, b0);
    let z2 = if a1.is_empty() || b1.is_empty() {
        vec![]
    } else {
        mul_slices(f, a1, b1)
    };
    let a01 = add_slices(f, a0, a1);
    let b01 = add_slices(f, b0, b1);
    let mut z1 = mul_slices(f, &a01, &b01);
    sub_assign(f, &mut z1, &z0, 0);
    sub_assign(f, &mut z1, &z2, 0);
    let mut out = vec![Fq(0); a.len() + b.len() - 1];
    add_assign(f, &mut out, &z0, 0);
    add_assign(f, &mut out, &z1, half);
    add_assign(f, &mut out, &z2, 2 * half);
    out
}

fn split_at_clamped(a: &[Fq], at: usize) -> (&[Fq], &[Fq]) {
    if at >= a.len() {
        (a, &[])
    } else {
        a.split_at(at)
    }
}

fn add_slices(f: &Field, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    let mut out = vec![Fq(0); a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] = c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] = f.add(out[i], c);
    }
    out
}

fn add_assign(f: &Field, out: &mut [Fq], src: &[Fq], off: usize) {
    for (i, &c) in src.iter().enumerate() {
        out[off + i] = f.add(out[off + i], c);
    }
}

fn sub_assign(f: &Field, out: &mut Vec<Fq>, src: &[Fq], off: usize) {
    if out.len() < off + src.len() {
        out.resize(off + src.len(), Fq(0));
    }
    for (i, &c) in src.iter().enumerate() {
        out[off + i] = f.sub(out[off + i], c);
    }
}

fn mul_schoolbook(f: &Field, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    let mut out = vec![Fq(0); a.len() + b.len() - 1];
    let p = f.p();
    if f.ext_deg() == 1 {
        // accumulate in u64 with periodic reduction; p^2 * batch stays < 2^63
        let batch = ((1u64 << 62) / (p * p)) as usize;
        for i in 0..out.len() {
            let lo = i.saturating_sub(b.len() - 1);
            let hi = i.min(a.len() - 1);
            let mut acc = 0u64;
            let mut cnt = 0usize;
            for j in lo..=hi {
                acc += a[j].0 * b[i - j].0;
                cnt += 1;
                if cnt == batch {
                    acc %= p;
                    cnt = 0;
                }
            }
            out[i] = Fq(acc % p);
        }
    } else {
        for (i, &x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
    }
    out
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
    fn divrem_roundtrip() {
        let f = f5();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = Poly::random(&f, 9, &mut rng);
            let b = Poly::random(&f, 4, &mut rng);
            let (q, r) = a.divrem(&b);
            assert_eq!(q.mul(&b).add(&r), a);
            assert!(r.deg_i() < b.deg_i());
        }
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let f = f5();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = Poly::random(&f, 100, &mut rng);
        let b = Poly::random(&f, 77, &mut rng);
        let kara = a.mul(&b);
        let school = Poly::new(f.clone(), mul_schoolbook(&f, a.coeffs(), b.coeffs()));
        assert_eq!(kara, school);
    }

    #[test]
    fn gcd_of_multiples() {
        let f = f5();
        let g = Poly::from_ints(&f, &[1, 1]); // t + 1
        let a = g.mul(&Poly::from_ints(&f, &[2, 0, 1]));
        let b = g.mul(&Poly::from_ints(&f, &[3, 1]));
        let d = a.gcd(&b);
        assert_eq!(d, g.monic());
    }

    #[test]
    fn xgcd_identity() {
        let f = f5();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = Poly::random(&f, 6, &mut rng);
            let b = Poly::random(&f, 4, &mut rng);
            let (g, s, t) = a.xgcd(&b);
            assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        }
    }

    #[test]
    fn derivative_char_p() {
        let f = f5();
        // d/dt (t^5) = 5 t^4 = 0
        let t5 = Poly::monomial(&f, Fq(1), 5);
        assert!(t5.derivative().is_zero());
    }
}
