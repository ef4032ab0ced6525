//! Truncated Laurent/Puiseux series at the place at infinity.
//!
//! A series lives in L((u)) where L is a finite constant field and u^e = 1/t
//! for the ramification index e, so the exponent of u^n is n/e as a power of
//! 1/t. Every series carries the precision up to which its coefficients are
//! known to agree with the value it represents; `exact` marks terminating
//! series known in full (Laurent polynomials in u).

use std::collections::BTreeMap;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::ffcore::embed::FieldEmbedding;
use crate::ffcore::field::{Field, Fq};
use crate::ffcore::kpoly::KPoly;
use crate::ffcore::poly::Poly;
use crate::ffcore::ratfunc::RatFunc;

/// Sentinel used as the effective precision of exact series.
pub const PREC_EXACT: i64 = i64::MAX / 4;

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    field: Field,
    ram: u32,
    /// Nonzero coefficients: exponent of u (u = t^(-1/ram)) -> coefficient.
    coeffs: BTreeMap<i64, Fq>,
    /// Coefficients at exponents < prec are exact; nothing is known beyond.
    prec: i64,
    exact: bool,
}

impl std::fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (n, c) in self.coeffs.iter().take(12) {
            parts.push(format!("{}*u^{}", self.field.fq_to_string(*c), n));
        }
        if self.coeffs.len() > 12 {
            parts.push("...".into());
        }
        let tail = if self.exact {
            "exact".to_string()
        } else {
            format!("O(u^{})", self.prec)
        };
        write!(f, "[e={}] {} + {}", self.ram, parts.join(" + "), tail)
    }
}

impl LaurentSeries {
    pub fn zero(field: &Field, ram: u32, prec: i64) -> LaurentSeries {
        LaurentSeries {
            field: field.clone(),
            ram,
            coeffs: BTreeMap::new(),
            prec,
            exact: false,
        }
    }

    pub fn exact_zero(field: &Field, ram: u32) -> LaurentSeries {
        LaurentSeries {
            field: field.clone(),
            ram,
            coeffs: BTreeMap::new(),
            prec: PREC_EXACT,
            exact: true,
        }
    }

    pub fn monomial(field: &Field, ram: u32, c: Fq, n: i64) -> LaurentSeries {
        let mut coeffs = BTreeMap::new();
        if !field.is_zero(c) {
            coeffs.insert(n, c);
        }
        LaurentSeries {
            field: field.clone(),
            ram,
            coeffs,
            prec: PREC_EXACT,
            exact: true,
        }
    }

    pub fn from_terms(
        field: &Field,
        ram: u32,
        terms: impl IntoIterator<Item = (i64, Fq)>,
        prec: i64,
        exact: bool,
    ) -> LaurentSeries {
        let mut coeffs = BTreeMap::new();
        for (n, c) in terms {
            if !field.is_zero(c) && (exact || n < prec) {
                coeffs.insert(n, c);
            }
        }
        LaurentSeries {
            field: field.clone(),
            ram,
            coeffs,
            prec: if exact { PREC_EXACT } else { prec },
            exact,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn ram(&self) -> u32 {
        self.ram
    }
    pub fn prec(&self) -> i64 {
        if self.exact {
            PREC_EXACT
        } else {
            self.prec
        }
    }
    pub fn is_exact(&self) -> bool {
        self.exact
    }
    pub fn terms(&self) -> impl Iterator<Item = (i64, Fq)> + '_ {
        self.coeffs.iter().map(|(&n, &c)| (n, c))
    }
    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: i64) -> Fq {
        self.coeffs.get(&n).copied().unwrap_or(Fq(0))
    }

    /// Smallest exponent with a (known) nonzero coefficient.
    pub fn lead(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Valuation lower bound: the lead exponent, or the precision horizon if
    /// no nonzero term is visible.
    pub fn ord_lower_bound(&self) -> i64 {
        self.lead().unwrap_or(self.prec())
    }

    /// Exact valuation in u-units; None when the series vanishes to its
    /// precision (unknown) or is exactly zero.
    pub fn ord(&self) -> Option<i64> {
        self.lead()
    }

    /// Valuation as a rational power of 1/t.
    pub fn ord_rational(&self) -> Option<Rational64> {
        self.lead().map(|l| Rational64::new(l, self.ram as i64))
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.exact && self.coeffs.is_empty()
    }

    /// True when only the exponent-0 term can be nonzero.
    pub fn is_constant_to_prec(&self) -> bool {
        self.coeffs.keys().all(|&n| n == 0)
    }

    /// Assert a precision from external knowledge (e.g. a convergence
    /// argument); keeps only terms below it and drops exactness.
    pub fn with_prec(&self, prec: i64) -> LaurentSeries {
        let coeffs = self.coeffs.range(..prec).map(|(&n, &c)| (n, c)).collect();
        LaurentSeries {
            field: self.field.clone(),
            ram: self.ram,
            coeffs,
            prec,
            exact: false,
        }
    }

    pub fn truncate(&self, prec: i64) -> LaurentSeries {
        if self.exact && prec >= PREC_EXACT {
            return self.clone();
        }
        let prec = prec.min(self.prec());
        let coeffs = self.coeffs.range(..prec).map(|(&n, &c)| (n, c)).collect();
        LaurentSeries {
            field: self.field.clone(),
            ram: self.ram,
            coeffs,
            prec,
            exact: false,
        }
    }

    pub fn neg(&self) -> LaurentSeries {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&n, &c)| (n, self.field.neg(c)))
            .collect();
        LaurentSeries {
            field: self.field.clone(),
            ram: self.ram,
            coeffs,
            prec: self.prec,
            exact: self.exact,
        }
    }

    pub fn scale(&self, c: Fq) -> LaurentSeries {
        if self.field.is_zero(c) {
            return if self.exact {
                LaurentSeries::exact_zero(&self.field, self.ram)
            } else {
                LaurentSeries::zero(&self.field, self.ram, self.prec)
            };
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&n, &a)| (n, self.field.mul(a, c)))
            .collect();
        LaurentSeries {
            field: self.field.clone(),
            ram: self.ram,
            coeffs,
            prec: self.prec,
            exact: self.exact,
        }
    }

    /// Multiply by c * u^k.
    pub fn mul_monomial(&self, c: Fq, k: i64) -> LaurentSeries {
        if self.field.is_zero(c) {
            return if self.exact {
                LaurentSeries::exact_zero(&self.field, self.ram)
            } else {
                LaurentSeries::zero(&self.field, self.ram, self.prec.saturating_add(k))
            };
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&n, &a)| (n + k, self.field.mul(a, c)))
            .collect();
        LaurentSeries {
            field: self.field.clone(),
            ram: self.ram,
            coeffs,
            prec: self.prec.saturating_add(k).min(PREC_EXACT),
            exact: self.exact,
        }
    }

    fn check_compat(&self, other: &LaurentSeries) {
        assert!(self.field == other.field, "constant field mismatch");
        assert!(self.ram == other.ram, "ramification mismatch");
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        self.check_compat(other);
        let exact = self.exact && other.exact;
        let prec = self.prec().min(other.prec());
        let mut coeffs = BTreeMap::new();
        for (&n, &c) in &self.coeffs {
            if exact || n < prec {
                coeffs.insert(n, c);
            }
        }
        for (&n, &c) in &other.coeffs {
            if exact || n < prec {
                let v = self.field.add(coeffs.get(&n).copied().unwrap_or(Fq(0)), c);
                if self.field.is_zero(v) {
                    coeffs.remove(&n);
                } else {
                    coeffs.insert(n, v);
                }
            }
        }
        LaurentSeries {
            field: self.field.clone(),
            ram: self.ram,
            coeffs,
            prec: if exact { PREC_EXACT } else { prec },
            exact,
        }
    }

    pub fn sub(&self, other: &LaurentSeries) -> LaurentSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        self.check_compat(other);
        let exact = self.exact && other.exact;
        // precision of the product: min over (P1 + l2, P2 + l1); an operand
        // that is exactly zero makes the product exactly zero.
        if self.is_exactly_zero() || other.is_exactly_zero() {
            return LaurentSeries::exact_zero(&self.field, self.ram);
        }
        let l1 = self.ord_lower_bound();
        let l2 = other.ord_lower_bound();
        let prec = if exact {
            PREC_EXACT
        } else {
            self.prec()
                .saturating_add(l2)
                .min(other.prec().saturating_add(l1))
                .min(PREC_EXACT)
        };
        // dense accumulation over the useful window
        let lo = l1 + l2;
        let hi = if exact {
            match (
                self.coeffs.keys().next_back(),
                other.coeffs.keys().next_back(),
            ) {
                (Some(&a), Some(&b)) => a + b + 1,
                _ => lo,
            }
        } else {
            prec
        };
        let width = (hi - lo).max(0) as usize;
        let mut acc = vec![Fq(0); width];
        for (&i, &a) in &self.coeffs {
            let jmax = hi - i;
            for (&j, &b) in other.coeffs.range(..jmax) {
                let n = (i + j - lo) as usize;
                acc[n] = self.field.add(acc[n], self.field.mul(a, b));
            }
        }
        let mut coeffs: BTreeMap<i64, Fq> = BTreeMap::new();
        for (off, c) in acc.into_iter().enumerate() {
            if !self.field.is_zero(c) {
                coeffs.insert(lo + off as i64, c);
            }
        }
        LaurentSeries {
            field: self.field.clone(),
            ram: self.ram,
            coeffs,
            prec,
            exact,
        }
    }

    /// Multiplicative inverse, computed to at most `want_prec`. Requires a
    /// visible nonzero lead term.
    pub fn inv_to(&self, want_prec: i64) -> Result<LaurentSeries> {
        let l = match self.lead() {
            Some(l) => l,
            None => return Err(Error::ZeroInput),
        };
        let f = &self.field;
        // exact monomial inverts exactly
        if self.exact && self.coeffs.len() == 1 {
            let c = self.coeff(l);
            return Ok(LaurentSeries::monomial(f, self.ram, f.inv(c), -l));
        }
        let out_prec = if self.exact {
            want_prec.min(1 << 22)
        } else {
            want_prec.min(self.prec - 2 * l)
        };
        // unit part a_0 + a_1 u + ..., with a_i = coeff(l + i), densified
        let nterms = (out_prec + l).max(0); // number of unit-part coefficients needed
        let mut a = vec![Fq(0); nterms.max(1) as usize];
        for (&n, &c) in self.coeffs.range(l..l + nterms.max(1)) {
            a[(n - l) as usize] = c;
        }
        let a0_inv = f.inv(a[0]);
        let mut b: Vec<Fq> = Vec::with_capacity(nterms.max(1) as usize);
        b.push(a0_inv);
        for n in 1..nterms as usize {
            // b_n = -a0^{-1} * sum_{k=1..n} a_k b_{n-k}
            let mut acc = Fq(0);
            for k in 1..=n {
                if f.is_zero(a[k]) {
                    continue;
                }
                acc = f.add(acc, f.mul(a[k], b[n - k]));
            }
            b.push(f.neg(f.mul(a0_inv, acc)));
        }
        let terms = b.into_iter().enumerate().map(|(i, c)| (-l + i as i64, c));
        Ok(LaurentSeries::from_terms(
            f, self.ram, terms, out_prec, false,
        ))
    }

    pub fn div_to(&self, other: &LaurentSeries, want_prec: i64) -> Result<LaurentSeries> {
        let quotient =
            self.mul(&other.inv_to(want_prec.saturating_add(
                other.lead().unwrap_or(0).abs() + self.ord_lower_bound().abs() + 4,
            ))?);
        if quotient.is_exact() {
            Ok(quotient)
        } else {
            Ok(quotient.truncate(want_prec))
        }
    }

    /// Rescale to a finer ramification lattice: e -> e * m.
    pub fn ramify(&self, m: u32) -> LaurentSeries {
        if m == 1 {
            return self.clone();
        }
        let m64 = m as i64;
        let coeffs = self.coeffs.iter().map(|(&n, &c)| (n * m64, c)).collect();
        LaurentSeries {
            field: self.field.clone(),
            ram: self.ram * m,
            coeffs,
            prec: self.prec.saturating_mul(m64).min(PREC_EXACT),
            exact: self.exact,
        }
    }

    /// If every exponent is divisible by m, coarsen the lattice: e -> e / m.
    pub fn try_unramify(&self, m: u32) -> Option<LaurentSeries> {
        if m == 1 {
            return Some(self.clone());
        }
        if self.ram % m != 0 {
            return None;
        }
        let m64 = m as i64;
        if !self.coeffs.keys().all(|&n| n % m64 == 0) {
            return None;
        }
        let coeffs = self.coeffs.iter().map(|(&n, &c)| (n / m64, c)).collect();
        let prec = if self.exact {
            PREC_EXACT
        } else {
            self.prec.div_euclid(m64)
        };
        Some(LaurentSeries {
            field: self.field.clone(),
            ram: self.ram / m,
            coeffs,
            prec,
            exact: self.exact,
        })
    }

    /// The smallest m such that all exponents lie in (e/m)Z, i.e. the true
    /// ramification needed by the visible support.
    pub fn minimal_ram(&self) -> u32 {
        let mut g: i64 = self.ram as i64;
        for &n in self.coeffs.keys() {
            g = gcd_i64(g, n.abs());
            if g == 1 {
                break;
            }
        }
        (self.ram as i64 / g.max(1)) as u32
    }

    /// Map coefficients through a field embedding.
    pub fn embed(&self, emb: &FieldEmbedding) -> LaurentSeries {
        assert!(emb.from_field() == &self.field);
        let target = emb.to_field().clone();
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&n, &c)| (n, emb.apply(c)))
            .collect();
        LaurentSeries {
            field: target,
            ram: self.ram,
            coeffs,
            prec: self.prec,
            exact: self.exact,
        }
    }

    /// Apply x -> x^(p^j) to every coefficient.
    pub fn frobenius_coeffs(&self, j: u32) -> LaurentSeries {
        let e = (self.field.p() as u128).pow(j);
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&n, &c)| (n, self.field.pow(c, e)))
            .collect();
        LaurentSeries {
            field: self.field.clone(),
            ram: self.ram,
            coeffs,
            prec: self.prec,
            exact: self.exact,
        }
    }

    /// Twist u -> zeta * u: multiplies the coefficient at u^n by zeta^n.
    pub fn twist(&self, zeta: Fq) -> LaurentSeries {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&n, &c)| {
                let z = if n >= 0 {
                    f.pow(zeta, n as u128)
                } else {
                    f.pow(f.inv(zeta), (-n) as u128)
                };
                (n, f.mul(c, z))
            })
            .collect();
        LaurentSeries {
            field: f.clone(),
            ram: self.ram,
            coeffs,
            prec: self.prec,
            exact: self.exact,
        }
    }

    /// Exact comparison of the shared known window.
    pub fn agrees_with(&self, other: &LaurentSeries, up_to: i64) -> bool {
        let bound = up_to.min(self.prec()).min(other.prec());
        let mut keys: Vec<i64> = self.coeffs.range(..bound).map(|(&n, _)| n).collect();
        keys.extend(other.coeffs.range(..bound).map(|(&n, _)| n));
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter().all(|n| self.coeff(n) == other.coeff(n))
    }

    /// Serialize as (exponent numerator, exponent denominator, digits) plus
    /// precision, mirroring the documented JSON layout.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(&n, &c)| serde_json::json!([n, self.ram, self.field.digits(c)]))
            .collect();
        serde_json::json!({
            "field": self.field.spec_string(),
            "ram": self.ram,
            "terms": terms,
            "prec": if self.exact { serde_json::Value::String("exact".into()) } else { serde_json::json!({"num": self.prec, "den": self.ram}) },
        })
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Expand a polynomial in t as an exact series at infinity: t^j = u^(-j*e).
pub fn poly_to_series(p: &Poly, emb: &FieldEmbedding, ram: u32) -> LaurentSeries {
    let target = emb.to_field().clone();
    let e = ram as i64;
    let terms = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, &c)| (-(j as i64) * e, emb.apply(c)));
    LaurentSeries::from_terms(&target, ram, terms, PREC_EXACT, true)
}

/// Expand a rational function at infinity to the requested precision; exact
/// when the denominator is a monomial.
pub fn ratfunc_to_series(
    r: &RatFunc,
    emb: &FieldEmbedding,
    ram: u32,
    prec: i64,
) -> Result<LaurentSeries> {
    let num = poly_to_series(r.num(), emb, ram);
    let den = poly_to_series(r.den(), emb, ram);
    if r.is_zero() {
        return Ok(LaurentSeries::exact_zero(emb.to_field(), ram));
    }
    num.div_to(&den, prec)
}

/// Evaluate a z-polynomial over K at a series, to the series' precision.
/// Coefficients are embedded through `emb`.
pub fn eval_kpoly_at_series(
    g: &KPoly,
    x: &LaurentSeries,
    emb: &FieldEmbedding,
) -> Result<LaurentSeries> {
    let ram = x.ram();
    let n = g.degree().unwrap_or(0) as i64;
    let l = x.ord_lower_bound().min(0);
    // conversion precision: enough that coefficient truncation is not the
    // bottleneck after multiplying by x^i
    let conv_prec = x
        .prec()
        .saturating_add(n.saturating_mul(-l))
        .saturating_add(4)
        .min(1 << 20);
    let mut acc = LaurentSeries::exact_zero(x.field(), ram);
    for i in (0..g.coeffs().len()).rev() {
        acc = acc.mul(x);
        let c = g.coeff(i);
        if !c.is_zero() {
            let cs = ratfunc_to_series(&c, emb, ram, conv_prec)?;
            acc = acc.add(&cs);
        }
    }
    Ok(acc)
}
