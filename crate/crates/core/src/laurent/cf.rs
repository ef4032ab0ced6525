//! Continued fractions of Laurent series: repeated polynomial-part
//! extraction and inversion, with the classical best-approximation
//! bookkeeping p_n/q_n.

use crate::error::{Error, Result};
use crate::ffcore::embed::FieldEmbedding;
use crate::ffcore::field::Field;
use crate::ffcore::poly::Poly;
use crate::ffcore::ratfunc::RatFunc;

use super::series::{poly_to_series, LaurentSeries};

/// A continued-fraction expansion [a_0; a_1, a_2, ...] with convergents.
#[derive(Clone, Debug)]
pub struct CfExpansion {
    /// Partial quotients; every quotient after the zeroth has degree >= 1.
    pub quotients: Vec<Poly>,
    /// Convergents p_n/q_n, reduced, aligned with `quotients`.
    pub convergents: Vec<RatFunc>,
    /// The expansion stopped because precision ran out.
    pub exhausted: bool,
    /// The series was rational and the expansion terminated exactly.
    pub terminated: bool,
}

impl CfExpansion {
    /// deg q_n for the n-th convergent.
    pub fn denominator_degree(&self, n: usize) -> i64 {
        self.convergents[n].den().deg_i()
    }

    /// ord(alpha - p_n/q_n) = deg q_n + deg q_{n+1}, available when the next
    /// convergent exists.
    pub fn approximation_order(&self, n: usize) -> Option<i64> {
        if n + 1 < self.convergents.len() {
            Some(self.denominator_degree(n) + self.denominator_degree(n + 1))
        } else {
            None
        }
    }

    /// JSON: partial quotients as ascending coefficient lists plus the
    /// convergents.
    pub fn to_json(&self) -> serde_json::Value {
        let field = self.quotients.first().map(|q| q.field().clone());
        let quotients: Vec<serde_json::Value> = self
            .quotients
            .iter()
            .map(|q| {
                let coeffs: Vec<serde_json::Value> = q
                    .coeffs()
                    .iter()
                    .map(|&c| match &field {
                        Some(f) if f.ext_deg() > 1 => serde_json::json!(f.digits(c)),
                        _ => serde_json::json!(c.0),
                    })
                    .collect();
                serde_json::json!(coeffs)
            })
            .collect();
        let convergents: Vec<serde_json::Value> =
            self.convergents.iter().map(|c| c.to_json()).collect();
        serde_json::json!({
            "quotients": quotients,
            "convergents": convergents,
            "exhausted": self.exhausted,
            "terminated": self.terminated,
        })
    }
}

/// Expand `alpha` until the convergent denominators exceed `budget` (one
/// extra quotient past the budget is produced so the last within-budget
/// approximation order is known). The series must be unramified, i.e. all
/// exponents integral.
pub fn continued_fraction(alpha: &LaurentSeries, budget: i64) -> Result<CfExpansion> {
    let e = alpha.minimal_ram();
    if e != 1 {
        return Err(Error::InvalidInput(
            "continued fractions need an unramified series".into(),
        ));
    }
    let alpha1 = alpha
        .try_unramify(alpha.ram())
        .unwrap_or_else(|| alpha.clone());
    let field = alpha1.field().clone();
    let mut quotients: Vec<Poly> = Vec::new();
    let mut convergents: Vec<RatFunc> = Vec::new();
    let mut exhausted = false;
    let mut terminated = false;

    // p_{-1}/q_{-1} = 1/0, p_0/q_0 set by the first quotient
    let mut p_prev = Poly::one(&field);
    let mut q_prev = Poly::zero(&field);
    let mut p_cur = Poly::zero(&field);
    let mut q_cur = Poly::one(&field);

    let mut x = alpha1.clone();
    loop {
        if x.prec() <= 0 {
            exhausted = true;
            break;
        }
        let a = polynomial_part(&x);
        let frac = x.sub(&poly_to_series(&a, &FieldEmbedding::identity(&field), 1));
        if quotients.is_empty() {
            p_cur = a.clone();
            q_cur = Poly::one(&field);
        } else {
            let p_next = a.mul(&p_cur).add(&p_prev);
            let q_next = a.mul(&q_cur).add(&q_prev);
            p_prev = p_cur;
            q_prev = q_cur;
            p_cur = p_next;
            q_cur = q_next;
        }
        quotients.push(a);
        let conv = RatFunc::new(p_cur.clone(), q_cur.clone())?;
        // theory: p_n and q_n are already coprime
        debug_assert_eq!(conv.den(), &q_cur.monic());
        convergents.push(conv);

        if frac.is_exactly_zero() {
            terminated = true;
            break;
        }
        if frac.is_zero_to_prec() {
            exhausted = true;
            break;
        }
        if q_cur.deg_i() > budget {
            // one-past-budget quotient computed; stop
            break;
        }
        let next_gain = frac.ord().unwrap();
        debug_assert!(next_gain >= 1, "fractional part must be small");
        let want = frac.prec() - 2 * next_gain + 2;
        if want <= 0 {
            exhausted = true;
            break;
        }
        x = frac.inv_to(frac.prec())?;
    }

    // internal identity check: ord(alpha - p_n/q_n) = deg q_n + deg q_{n+1}
    let id = FieldEmbedding::identity(&field);
    for n in 0..convergents.len().saturating_sub(1) {
        let conv = &convergents[n];
        // ord(alpha*q - p) should be deg q_{n+1}
        let qs = poly_to_series(conv.den(), &id, 1);
        let ps = poly_to_series(conv.num(), &id, 1);
        let resid = alpha1.mul(&qs).sub(&ps);
        let expect = convergents[n + 1].den().deg_i();
        if let Some(o) = resid.ord() {
            assert_eq!(
                o, expect,
                "continued fraction identity violated at convergent {n}"
            );
        }
    }

    Ok(CfExpansion {
        quotients,
        convergents,
        exhausted,
        terminated,
    })
}

/// The polynomial part: terms with non-positive u-exponent, as a polynomial
/// in t.
fn polynomial_part(x: &LaurentSeries) -> Poly {
    let field = x.field().clone();
    let mut coeffs: Vec<(usize, _)> = Vec::new();
    let mut maxdeg = 0usize;
    for (n, c) in x.terms() {
        if n <= 0 {
            let d = (-n) as usize;
            maxdeg = maxdeg.max(d);
            coeffs.push((d, c));
        }
    }
    let mut v = vec![field.zero(); maxdeg + 1];
    for (d, c) in coeffs {
        v[d] = c;
    }
    Poly::new(field, v)
}

/// First exponent at which the series leaves the embedded base field or the
/// integral lattice: approximations from K cannot match beyond it.
/// Returns the exponent in u-units, or None when no such obstruction is
/// visible within the precision window.
pub fn rational_matching_cutoff(s: &LaurentSeries, base_emb: &FieldEmbedding) -> Option<i64> {
    let e = s.ram() as i64;
    for (n, c) in s.terms() {
        if n % e != 0 {
            return Some(n);
        }
        if base_emb.preimage(c).is_none() {
            return Some(n);
        }
    }
    None
}

/// The sub-series approximable from the base field: integral exponents with
/// base-field coefficients, truncated at the matching cutoff, re-expressed
/// over the base field with ram 1.
pub fn base_rational_window(
    s: &LaurentSeries,
    base_emb: &FieldEmbedding,
    base: &Field,
) -> (LaurentSeries, Option<i64>) {
    let e = s.ram() as i64;
    let cutoff = rational_matching_cutoff(s, base_emb);
    let stop_u = cutoff.unwrap_or(s.prec().saturating_mul(1)).min(s.prec());
    let mut terms = Vec::new();
    for (n, c) in s.terms() {
        if n >= stop_u {
            break;
        }
        debug_assert!(n % e == 0);
        if let Some(pre) = base_emb.preimage(c) {
            terms.push((n / e, pre));
        }
    }
    let prec_v = stop_u.div_euclid(e);
    (
        LaurentSeries::from_terms(base, 1, terms, prec_v, false),
        cutoff,
    )
}
