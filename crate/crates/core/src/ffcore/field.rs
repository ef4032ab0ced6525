//! Finite fields F_q with q = p^k, represented as F_p[x]/(modulus).
//!
//! Elements are stored as a single `u64` encoding the coefficient vector in
//! base p, so they are `Copy` and hashable. All arithmetic goes through a
//! shared [`Field`] context which owns the modulus and its reduction table.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};

const MAX_EXT_DEG: usize = 32;

/// An element of F_q, encoded as base-p digits packed into a u64.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub u64);

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq({})", self.0)
    }
}

struct FieldCtx {
    p: u64,
    k: usize,
    /// Monic modulus over F_p, ascending, length k+1. For k = 1 this is [0, 1].
    modulus: Vec<u64>,
    /// red[i] = x^(k+i) mod modulus, as a coefficient vector of length k.
    red: Vec<Vec<u64>>,
    q: u64,
}

/// A finite field F_{p^k}. Cheap to clone; all element ops live here.
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}", self.0.p, self.0.k)
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Plain mod-p polynomial helpers used for modulus validation, before any
// Field exists. Vectors are ascending coefficient lists over F_p.
mod fp {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }
    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = super::inv_mod_p(m[dm], p);
        while r.len() > dm {
            let c = (r[r.len() - 1] * lead_inv) % p;
            let shift = r.len() - 1 - dm;
            for i in 0..=dm {
                let idx = shift + i;
                let sub = (c * m[i]) % p;
                r[idx] = (r[idx] + p - sub) % p;
            }
            trim(&mut r);
            if r.is_empty() {
                break;
            }
        }
        r
    }
    pub fn powmod_x(e: u128, m: &[u64], p: u64) -> Vec<u64> {
        // x^e mod m
        let mut result = vec![1u64];
        let mut base = rem(&[0, 1], m, p);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &base, p), m, p);
            }
            base = rem(&mul(&base, &base, p), m, p);
            e >>= 1;
        }
        result
    }
    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }
    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, &x) in a.iter().enumerate() {
            out[i] = x;
        }
        for (i, &y) in b.iter().enumerate() {
            out[i] = (out[i] + p - y) % p;
        }
        trim(&mut out);
        out
    }
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    // extended euclid on integers
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "not invertible mod p");
    (((t % p as i128) + p as i128) % p as i128) as u64
}

/// Irreducibility of a monic polynomial over F_p (used to validate moduli).
fn fp_is_irreducible(m: &[u64], p: u64) -> bool {
    let n = m.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    // x^(p^n) == x mod m, and gcd(x^(p^(n/l)) - x, m) = 1 for prime l | n
    let pn = (p as u128).checked_pow(n as u32);
    let pn = match pn {
        Some(v) => v,
        None => return false,
    };
    let xpn = fp::powmod_x(pn, m, p);
    if fp::sub(&xpn, &[0, 1], p) != Vec::<u64>::new() {
        return false;
    }
    let mut l = 2;
    let mut rest = n;
    let mut primes = vec![];
    while l * l <= rest {
        if rest % l == 0 {
            primes.push(l);
            while rest % l == 0 {
                rest /= l;
            }
        }
        l += 1;
    }
    if rest > 1 {
        primes.push(rest);
    }
    for l in primes {
        let e = (p as u128).pow((n / l) as u32);
        let xe = fp::powmod_x(e, m, p);
        let g = fp::gcd(&fp::sub(&xe, &[0, 1], p), m, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::BadFieldSpec(format!("{p} is not prime")));
        }
        Ok(Self::build(p, vec![0, 1]))
    }

    /// F_p[x]/(modulus); modulus is an ascending coefficient list over F_p,
    /// monic of degree k, verified irreducible.
    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::BadFieldSpec(format!("{p} is not prime")));
        }
        let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        fp::trim(&mut m);
        if m.len() < 2 {
            return Err(Error::BadFieldSpec("modulus must have degree >= 1".into()));
        }
        if *m.last().unwrap() != 1 {
            return Err(Error::BadFieldSpec("modulus must be monic".into()));
        }
        let k = m.len() - 1;
        if k > MAX_EXT_DEG {
            return Err(Error::BadFieldSpec(format!(
                "extension degree {k} too large"
            )));
        }
        if (p as u128)
            .checked_pow(k as u32)
            .map_or(true, |q| q > (1u128 << 62))
        {
            return Err(Error::BadFieldSpec(
                "field too large for packed encoding".into(),
            ));
        }
        if !fp_is_irreducible(&m, p) {
            return Err(Error::BadFieldSpec("modulus is reducible".into()));
        }
        Ok(Self::build(p, m))
    }

    /// Parse "p=5" or "q=25;modulus=1,1,1".
    pub fn parse_spec(spec: &str) -> Result<Field> {
        let spec = spec.trim();
        if let Some(ps) = spec.strip_prefix("p=") {
            let p: u64 = ps
                .trim()
                .parse()
                .map_err(|_| Error::BadFieldSpec(spec.into()))?;
            return Field::prime(p);
        }
        if let Some(rest) = spec.strip_prefix("q=") {
            let mut parts = rest.splitn(2, ';');
            let qs = parts.next().unwrap().trim();
            let q: u64 = qs.parse().map_err(|_| Error::BadFieldSpec(spec.into()))?;
            // factor q = p^k
            let mut p = 0u64;
            for d in 2..=q {
                if q % d == 0 {
                    p = d;
                    break;
                }
            }
            if p == 0 {
                return Err(Error::BadFieldSpec(spec.into()));
            }
            let mut k = 0usize;
            let mut qq = q;
            while qq > 1 {
                if qq % p != 0 {
                    return Err(Error::BadFieldSpec(format!("{q} is not a prime power")));
                }
                qq /= p;
                k += 1;
            }
            if k == 1 {
                return Field::prime(p);
            }
            let modstr = parts
                .next()
                .and_then(|s| s.trim().strip_prefix("modulus="))
                .ok_or_else(|| Error::BadFieldSpec("missing modulus".into()))?;
            let mut coeffs: Vec<u64> = Vec::new();
            for c in modstr.split(',') {
                coeffs.push(
                    c.trim()
                        .parse()
                        .map_err(|_| Error::BadFieldSpec(spec.into()))?,
                );
            }
            // Accept either degree-k list with implicit monic top or full k+1 list.
            if coeffs.len() == k {
                coeffs.push(1);
            }
            if coeffs.len() != k + 1 {
                return Err(Error::BadFieldSpec(format!(
                    "modulus must have {} coefficients",
                    k + 1
                )));
            }
            return Field::extension(p, coeffs);
        }
        Err(Error::BadFieldSpec(spec.into()))
    }

    /// Canonical spec string.
    pub fn spec_string(&self) -> String {
        if self.0.k == 1 {
            format!("p={}", self.0.p)
        } else {
            let coeffs: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
            format!("q={};modulus={}", self.0.q, coeffs.join(","))
        }
    }

    fn build(p: u64, modulus: Vec<u64>) -> Field {
        let k = modulus.len() - 1;
        let q = (p as u128).pow(k as u32) as u64;
        // reduction table x^(k+i) mod modulus for i in 0..k-1
        let mut red: Vec<Vec<u64>> = Vec::with_capacity(k.max(1));
        let mut cur = fp::rem(
            &{
                let mut v = vec![0u64; k];
                v.push(1);
                v
            },
            &modulus,
            p,
        );
        cur.resize(k, 0);
        for _ in 0..k {
            red.push(cur.clone());
            // multiply by x, reduce
            let mut next = vec![0u64; k + 1];
            for i in 0..k {
                next[i + 1] = cur[i];
            }
            let top = next[k];
            next.pop();
            if top != 0 {
                for i in 0..k {
                    let sub = (top * modulus[i]) % p;
                    next[i] = (next[i] + p - sub) % p;
                }
            }
            cur = next;
        }
        Field(Arc::new(FieldCtx {
            p,
            k,
            modulus,
            red,
            q,
        }))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    /// Extension degree over F_p.
    pub fn ext_deg(&self) -> usize {
        self.0.k
    }
    pub fn q(&self) -> u64 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Fq {
        Fq(0)
    }
    pub fn one(&self) -> Fq {
        Fq(1)
    }
    pub fn is_zero(&self, x: Fq) -> bool {
        x.0 == 0
    }

    pub fn from_int(&self, n: i64) -> Fq {
        let p = self.0.p as i64;
        Fq(((n % p + p) % p) as u64)
    }

    pub fn digits(&self, x: Fq) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.0.k);
        let mut n = x.0;
        for _ in 0..self.0.k {
            v.push(n % self.0.p);
            n /= self.0.p;
        }
        v
    }

    pub fn from_digits(&self, d: &[u64]) -> Fq {
        let mut n = 0u64;
        for &c in d.iter().rev() {
            n = n * self.0.p + (c % self.0.p);
        }
        Fq(n)
    }

    /// The canonical generator x of F_p[x]/(modulus) (equals 0 for k = 1? no:
    /// for k = 1 this is the image of x, i.e. the residue of x mod (x - a)).
    pub fn gen(&self) -> Fq {
        if self.0.k == 1 {
            // modulus is x (we use [0,1]), so gen is 0; not meaningful for k=1
            Fq(0)
        } else {
            Fq(self.0.p)
        }
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let p = self.0.p;
        if self.0.k == 1 {
            return Fq((a.0 + b.0) % p);
        }
        let mut out = 0u64;
        let mut pw = 1u64;
        let (mut x, mut y) = (a.0, b.0);
        for _ in 0..self.0.k {
            out += ((x % p + y % p) % p) * pw;
            x /= p;
            y /= p;
            pw *= p;
        }
        Fq(out)
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        let p = self.0.p;
        if self.0.k == 1 {
            return Fq((p - a.0) % p);
        }
        let mut out = 0u64;
        let mut pw = 1u64;
        let mut x = a.0;
        for _ in 0..self.0.k {
            out += ((p - x % p) % p) * pw;
            x /= p;
            pw *= p;
        }
        Fq(out)
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        let p = self.0.p;
        let k = self.0.k;
        if k == 1 {
            return Fq((a.0 * b.0) % p);
        }
        if a.0 == 0 || b.0 == 0 {
            return Fq(0);
        }
        let mut da = [0u64; MAX_EXT_DEG];
        let mut db = [0u64; MAX_EXT_DEG];
        let (mut x, mut y) = (a.0, b.0);
        for i in 0..k {
            da[i] = x % p;
            db[i] = y % p;
            x /= p;
            y /= p;
        }
        let mut prod = [0u64; 2 * MAX_EXT_DEG];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        // reduce powers k..2k-2 via table
        let mut out = [0u64; MAX_EXT_DEG];
        out[..k].copy_from_slice(&prod[..k]);
        for i in 0..k - 1 {
            let c = prod[k + i];
            if c == 0 {
                continue;
            }
            let row = &self.0.red[i];
            for j in 0..k {
                out[j] = (out[j] + c * row[j]) % p;
            }
        }
        let mut n = 0u64;
        for i in (0..k).rev() {
            n = n * p + out[i];
        }
        Fq(n)
    }

    pub fn pow(&self, a: Fq, mut e: u128) -> Fq {
        if e == 0 {
            return self.one();
        }
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fq) -> Fq {
        assert!(a.0 != 0, "division by zero in F_q");
        if self.0.k == 1 {
            return Fq(inv_mod_p(a.0, self.0.p));
        }
        self.pow(a, (self.0.q - 2) as u128)
    }

    pub fn div(&self, a: Fq, b: Fq) -> Fq {
        self.mul(a, self.inv(b))
    }

    /// x -> x^p, the absolute Frobenius.
    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.0.p as u128)
    }

    /// All field elements, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.0.q).map(Fq)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        Fq(rng.random_range(0..self.0.q))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        Fq(rng.random_range(1..self.0.q))
    }

    /// Does every base-p digit description make sense in this field?
    pub fn contains_encoding(&self, x: Fq) -> bool {
        x.0 < self.0.q
    }

    /// Find the extension F_{p^(k*j)} of this field, by deterministic search
    /// for an irreducible modulus over F_p. The embedding is computed
    /// separately (see `ffcore::embed`).
    pub fn extension_field(&self, j: usize) -> Result<Field> {
        let p = self.0.p;
        let n = self.0.k * j;
        if n > MAX_EXT_DEG {
            return Err(Error::LimitExceeded(format!("extension degree {n}")));
        }
        if n == 1 {
            return Field::prime(p);
        }
        // deterministic scan: x^n + (counter digits)
        let bound = (p as u128).pow(n as u32);
        let mut c: u128 = 1;
        while c < bound {
            let mut m = Vec::with_capacity(n + 1);
            let mut cc = c;
            for _ in 0..n {
                m.push((cc % p as u128) as u64);
                cc /= p as u128;
            }
            m.push(1);
            if fp_is_irreducible(&m, p) {
                return Ok(Self::build(p, m));
            }
            c += 1;
        }
        Err(Error::LimitExceeded("no irreducible modulus found".into()))
    }

    /// Render an element for display: plain integer for prime fields,
    /// digit list otherwise.
    pub fn fq_to_string(&self, x: Fq) -> String {
        if self.0.k == 1 {
            format!("{}", x.0)
        } else {
            let d = self.digits(x);
            let parts: Vec<String> = d.iter().map(|c| c.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_ops() {
        let f = Field::prime(5).unwrap();
        let a = f.from_int(3);
        let b = f.from_int(4);
        assert_eq!(f.add(a, b), f.from_int(2));
        assert_eq!(f.mul(a, b), f.from_int(2));
        assert_eq!(f.inv(a), f.from_int(2)); // 3*2 = 6 = 1
        assert_eq!(f.neg(b), f.from_int(1));
    }

    #[test]
    fn parse_specs() {
        let f = Field::parse_spec("p=5").unwrap();
        assert_eq!(f.q(), 5);
        let f25 = Field::parse_spec("q=25;modulus=1,1,1").unwrap();
        assert_eq!(f25.q(), 25);
        assert_eq!(f25.ext_deg(), 2);
        assert!(Field::parse_spec("p=6").is_err());
        // x^2 - 1 = (x-1)(x+1) is reducible over F_5
        assert!(Field::extension(5, vec![4, 0, 1]).is_err());
    }

    #[test]
    fn extension_arithmetic() {
        // F_25 = F_5[x]/(x^2 + x + 1); gen = x
        let f = Field::extension(5, vec![1, 1, 1]).unwrap();
        let x = f.gen();
        // x^2 = -x - 1 = 4x + 4
        let x2 = f.mul(x, x);
        assert_eq!(f.digits(x2), vec![4, 4]);
        // x * x^24 = x^25 = x (Frobenius stability of the multiplicative order)
        assert_eq!(f.pow(x, 25), x);
        // every nonzero element has an inverse
        for e in f.elements().skip(1) {
            let i = f.inv(e);
            assert_eq!(f.mul(e, i), f.one());
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = Field::extension(5, vec![1, 1, 1]).unwrap();
        for a in f.elements() {
            for b in f.elements().step_by(7) {
                let lhs = f.frobenius(f.add(a, b));
                let rhs = f.add(f.frobenius(a), f.frobenius(b));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn extension_field_search() {
        let f5 = Field::prime(5).unwrap();
        let f = f5.extension_field(3).unwrap();
        assert_eq!(f.q(), 125);
        assert_eq!(f.ext_deg(), 3);
    }
}
