//! Differential and Frobenius structure tests for algebraic elements:
//! whether the generator satisfies a Riccati equation
//! d(alpha)/dt = a alpha^2 + b alpha + c over K, and whether it satisfies a
//! Frobenius equation alpha = (a alpha^(p^n) + b)/(c alpha^(p^n) + d).

use crate::error::{Error, Result};
use crate::ffcore::kpoly::{kernel_basis, solve_linear};
use crate::ffcore::ratfunc::RatFunc;

use super::elem::{AlgElem, ExtElem};

/// Outcome of the Riccati test.
#[derive(Clone, Debug)]
pub enum RiccatiOutcome {
    /// Verified coefficients (a, b, c) with alpha' = a alpha^2 + b alpha + c.
    Yes { a: RatFunc, b: RatFunc, c: RatFunc },
    /// No solution; `rank` of the 4-column system certifies this (full rank
    /// 4 is only possible for degree >= 4).
    No { rank: usize },
}

/// Derivative of the generator by implicit differentiation of its minimal
/// polynomial: alpha' = -G_t(alpha) / G_z(alpha).
pub fn generator_derivative(alpha: &AlgElem) -> Result<ExtElem> {
    let g = alpha.minpoly();
    let gz = g.derivative_z();
    if gz.is_zero() || !alpha.is_separable() {
        return Err(Error::Inseparable);
    }
    let num = alpha.eval_kpoly(&g.derivative_t());
    let den = alpha.eval_kpoly(&gz);
    num.neg().div(&den)
}

/// Exact K-linear solve for the Riccati relation. For degree <= 3 the power
/// basis is spanned by 1, alpha, alpha^2, so the answer is always Yes.
pub fn riccati_test(alpha: &AlgElem) -> Result<RiccatiOutcome> {
    let field = alpha.field().clone();
    let d = alpha.degree();
    let gen = alpha.generator();
    let deriv = generator_derivative(alpha)?;
    let a2 = gen.mul(&gen);
    // rows: coordinates; columns: a, b, c
    let mut rows = Vec::with_capacity(d);
    for i in 0..d {
        rows.push(vec![
            a2.coords()[i].clone(),
            gen.coords()[i].clone(),
            if i == 0 {
                RatFunc::one(&field)
            } else {
                RatFunc::zero(&field)
            },
        ]);
    }
    let rhs: Vec<RatFunc> = deriv.coords().to_vec();
    match solve_linear(rows.clone(), rhs.clone(), &field) {
        Some(x) => {
            let (a, b, c) = (x[0].clone(), x[1].clone(), x[2].clone());
            // verify by substitution
            let lhs = deriv;
            let rhs_e = a2
                .scale(&a)
                .add(&gen.scale(&b))
                .add(&alpha.from_ratfunc(&c));
            if lhs == rhs_e {
                Ok(RiccatiOutcome::Yes { a, b, c })
            } else {
                Err(Error::InvalidInput("unverified linear solution".into()))
            }
        }
        None => {
            // rank of the augmented 4-column system
            let mut aug = rows;
            for (i, row) in aug.iter_mut().enumerate() {
                row.push(rhs[i].clone());
            }
            let ncols = 4;
            let rank = ncols - kernel_basis(aug, &field).len();
            Ok(RiccatiOutcome::No { rank })
        }
    }
}

/// Result of the Frobenius-equation search.
#[derive(Clone, Debug)]
pub struct FrobeniusRelation {
    pub n: u32,
    pub a: RatFunc,
    pub b: RatFunc,
    pub c: RatFunc,
    pub d: RatFunc,
}

/// Search 1 <= n <= nmax for a nondegenerate relation
/// alpha (c alpha^(p^n) + d) = a alpha^(p^n) + b with ad - bc != 0; returns
/// the least such n.
pub fn frobenius_test(alpha: &AlgElem, nmax: u32) -> Result<Option<FrobeniusRelation>> {
    let field = alpha.field().clone();
    let p = field.p() as u128;
    let deg = alpha.degree();
    let gen = alpha.generator();
    for n in 1..=nmax {
        let e = p
            .checked_pow(n)
            .ok_or_else(|| Error::LimitExceeded("Frobenius exponent overflow".into()))?;
        let beta = gen.pow(e);
        let alpha_beta = gen.mul(&beta);
        // equation: a*beta + b - c*(alpha*beta) - d*alpha = 0
        let mut rows = Vec::with_capacity(deg);
        for i in 0..deg {
            rows.push(vec![
                beta.coords()[i].clone(),
                if i == 0 {
                    RatFunc::one(&field)
                } else {
                    RatFunc::zero(&field)
                },
                alpha_beta.coords()[i].neg(),
                gen.coords()[i].neg(),
            ]);
        }
        let kernel = kernel_basis(rows, &field);
        if kernel.is_empty() {
            continue;
        }
        // look for a kernel point with ad - bc != 0: basis vectors, pairwise
        // sums, and triple sums cover the quadratic form when it is nonzero
        let mut candidates: Vec<Vec<RatFunc>> = kernel.clone();
        for i in 0..kernel.len() {
            for j in i + 1..kernel.len() {
                let sum: Vec<RatFunc> = kernel[i]
                    .iter()
                    .zip(&kernel[j])
                    .map(|(a, b)| a.add(b))
                    .collect();
                candidates.push(sum);
                for k in j + 1..kernel.len() {
                    let sum3: Vec<RatFunc> = kernel[i]
                        .iter()
                        .zip(&kernel[j])
                        .zip(&kernel[k])
                        .map(|((a, b), c)| a.add(b).add(c))
                        .collect();
                    candidates.push(sum3);
                }
            }
        }
        for cand in candidates {
            let (a, b, c, d) = (
                cand[0].clone(),
                cand[1].clone(),
                cand[2].clone(),
                cand[3].clone(),
            );
            let det = a.mul(&d).sub(&b.mul(&c));
            if det.is_zero() {
                continue;
            }
            // verify exactly
            let lhs = gen.mul(&beta.scale(&c).add(&alpha.from_ratfunc(&d)));
            let rhs = beta.scale(&a).add(&alpha.from_ratfunc(&b));
            if lhs == rhs {
                return Ok(Some(FrobeniusRelation { n, a, b, c, d }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::field::Field;
    use crate::ffcore::kpoly::KPoly;
    use crate::ffcore::poly::Poly;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn t(field: &Field) -> RatFunc {
        RatFunc::var(field)
    }

    #[test]
    fn riccati_for_sqrt_t() {
        // alpha = sqrt(t): alpha' = 1/(2t) * alpha, so (a,b,c) = (0, 1/(2t), 0)
        let f = f5();
        let g = KPoly::new(
            f.clone(),
            vec![t(&f).neg(), RatFunc::zero(&f), RatFunc::one(&f)],
        );
        let alpha = AlgElem::new_checked(g).unwrap();
        match riccati_test(&alpha).unwrap() {
            RiccatiOutcome::Yes { a, b, c } => {
                assert!(a.is_zero());
                assert!(c.is_zero());
                let two_t = t(&f).scale(f.from_int(2));
                assert_eq!(b, two_t.inv().unwrap());
            }
            RiccatiOutcome::No { .. } => panic!("expected a Riccati relation"),
        }
        // direct check of the derivative: alpha' = alpha/(2t)
        let d = generator_derivative(&alpha).unwrap();
        let gen = alpha.generator();
        let expect = gen.scale(&t(&f).scale(f.from_int(2)).inv().unwrap());
        assert_eq!(d, expect);
    }

    #[test]
    fn riccati_for_artin_schreier() {
        // z^5 - z - 1/t: G_z = -1, G_t = 1/t^2, so alpha' = 1/t^2 * 1/(-1)?
        // alpha' = -G_t/G_z = (1/t^2)/... : G = z^5 - z - t^(-1),
        // G_t = t^(-2), G_z = -1, alpha' = -(t^(-2))/(-1) = t^(-2), constant.
        let f = f5();
        let tinv = RatFunc::new(Poly::one(&f), Poly::var(&f)).unwrap();
        let g = KPoly::new(
            f.clone(),
            vec![
                tinv.neg(),
                RatFunc::from_int(&f, -1),
                RatFunc::zero(&f),
                RatFunc::zero(&f),
                RatFunc::zero(&f),
                RatFunc::one(&f),
            ],
        );
        let alpha = AlgElem::new_checked(g).unwrap();
        let d = generator_derivative(&alpha).unwrap();
        let t2inv = tinv.mul(&tinv);
        assert_eq!(d, alpha.from_ratfunc(&t2inv));
        match riccati_test(&alpha).unwrap() {
            RiccatiOutcome::Yes { a, b, c } => {
                assert!(a.is_zero());
                assert!(b.is_zero());
                assert_eq!(c, t2inv);
            }
            RiccatiOutcome::No { .. } => panic!("expected a Riccati relation"),
        }
    }

    #[test]
    fn frobenius_for_artin_schreier() {
        // alpha^5 = alpha + 1/t, so alpha = 1*alpha^5 + (-1/t): (a,b,c,d) =
        // (1, -1/t, 0, 1) at n = 1
        let f = f5();
        let tinv = RatFunc::new(Poly::one(&f), Poly::var(&f)).unwrap();
        let g = KPoly::new(
            f.clone(),
            vec![
                tinv.neg(),
                RatFunc::from_int(&f, -1),
                RatFunc::zero(&f),
                RatFunc::zero(&f),
                RatFunc::zero(&f),
                RatFunc::one(&f),
            ],
        );
        let alpha = AlgElem::new_checked(g).unwrap();
        let rel = frobenius_test(&alpha, 1)
            .unwrap()
            .expect("relation at n = 1");
        assert_eq!(rel.n, 1);
        // verify the relation directly: alpha*(c b + d) = a b + b0
        let gen = alpha.generator();
        let beta = gen.pow(5);
        let lhs = gen.mul(&beta.scale(&rel.c).add(&alpha.from_ratfunc(&rel.d)));
        let rhs = beta.scale(&rel.a).add(&alpha.from_ratfunc(&rel.b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn frobenius_quartic_golden_verdict() {
        // z^4 + t z + t admits no nondegenerate relation for n <= 2
        // (golden value recorded from the exact linear-algebra search)
        let f = f5();
        let g = KPoly::new(
            f.clone(),
            vec![
                t(&f),
                t(&f),
                RatFunc::zero(&f),
                RatFunc::zero(&f),
                RatFunc::one(&f),
            ],
        );
        let alpha = AlgElem::new_checked(g).unwrap();
        assert!(frobenius_test(&alpha, 2).unwrap().is_none());
    }

    #[test]
    fn riccati_vacuous_for_low_degree() {
        // deg <= 3: the quotient has dimension <= 3, so 1, alpha, alpha^2
        // span and the linear system is always solvable
        let f = f5();
        let g = KPoly::new(
            f.clone(),
            vec![
                t(&f).neg(),
                RatFunc::one(&f),
                RatFunc::zero(&f),
                RatFunc::one(&f),
            ],
        );
        let alpha = AlgElem::new_checked(g).unwrap();
        assert!(matches!(
            riccati_test(&alpha).unwrap(),
            RiccatiOutcome::Yes { .. }
        ));
    }

    #[test]
    fn frobenius_for_sqrt_of_unit() {
        // z^2 - u with u = 1 + 1/t over F_3: alpha^3 = u*alpha, so
        // alpha = alpha^3/u at n = 1
        let f3 = Field::prime(3).unwrap();
        let u = RatFunc::new(Poly::from_ints(&f3, &[1, 1]), Poly::var(&f3)).unwrap();
        let g = KPoly::new(
            f3.clone(),
            vec![u.neg(), RatFunc::zero(&f3), RatFunc::one(&f3)],
        );
        let alpha = AlgElem::new_checked(g).unwrap();
        let rel = frobenius_test(&alpha, 1)
            .unwrap()
            .expect("relation at n = 1");
        assert_eq!(rel.n, 1);
        let det = rel.a.mul(&rel.d).sub(&rel.b.mul(&rel.c));
        assert!(!det.is_zero());
    }
}
