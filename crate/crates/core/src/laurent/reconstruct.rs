//! Minimal-polynomial reconstruction from a series: exact kernel computation
//! over the base field on a coefficient window, then verification by
//! back-substitution at full available precision.

use crate::error::{Error, Result};
use crate::ffcore::embed::FieldEmbedding;
use crate::ffcore::field::Fq;
use crate::ffcore::kpoly::KPoly;
use crate::ffcore::poly::Poly;
use crate::ffcore::ratfunc::RatFunc;

use super::series::{eval_kpoly_at_series, LaurentSeries};

/// Search for a nonzero G over the base field with deg_z G <= degz_bound,
/// coefficient t-degrees <= degt_bound, and G(alpha) = 0 to the full
/// available precision. Scans bounds from small to large so the returned
/// polynomial is minimal. Returns None when no such polynomial exists within
/// the bounds.
pub fn minpoly_reconstruct(
    alpha: &LaurentSeries,
    base_emb: &FieldEmbedding,
    degz_bound: usize,
    degt_bound: usize,
) -> Result<Option<KPoly>> {
    let need = ((degz_bound + 1) * (degt_bound + 1) + degt_bound + 1) as i64;
    let e = alpha.ram() as i64;
    let have_v = alpha.prec() / e - alpha.ord_lower_bound().min(0).abs() * degz_bound as i64;
    if !alpha.is_exact() && have_v < need {
        return Err(Error::InsufficientPrecision { need, have: have_v });
    }

    // powers of alpha
    let mut powers: Vec<LaurentSeries> = Vec::with_capacity(degz_bound + 1);
    let one = LaurentSeries::monomial(alpha.field(), alpha.ram(), alpha.field().one(), 0);
    powers.push(one);
    for i in 0..degz_bound {
        powers.push(powers[i].mul(alpha));
    }

    for dz in 1..=degz_bound {
        for dt in 0..=degt_bound {
            if let Some(g) = try_bounds(alpha, base_emb, &powers, dz, dt)? {
                return Ok(Some(g));
            }
        }
    }
    Ok(None)
}

fn try_bounds(
    alpha: &LaurentSeries,
    base_emb: &FieldEmbedding,
    powers: &[LaurentSeries],
    dz: usize,
    dt: usize,
) -> Result<Option<KPoly>> {
    let lfield = alpha.field().clone();
    let base = base_emb.from_field().clone();
    let e = alpha.ram() as i64;
    let kb = base.ext_deg();
    let kl = lfield.ext_deg();
    let p = base.p();

    // term (i, j) is t^j alpha^i = u^(-j e) alpha^i
    let ncols_field = (dz + 1) * (dt + 1);
    // row range: exponents r where every term's coefficient is known
    let mut lo = i64::MAX;
    let mut hi = i64::MAX;
    for i in 0..=dz {
        let li = powers[i].ord_lower_bound();
        let pi = powers[i].prec();
        lo = lo.min(li - (dt as i64) * e);
        hi = hi.min(pi - (dt as i64) * e);
    }
    if hi <= lo {
        return Err(Error::InsufficientPrecision { need: 1, have: 0 });
    }
    // cap the window to keep the linear algebra small but overdetermined
    let span = hi - lo;
    let max_rows = (4 * ncols_field as i64 * e + 64).min(span);
    let hi_used = lo + max_rows;

    // embed images of base generator powers, for digit decomposition
    let mut gen_images = Vec::with_capacity(kb);
    {
        let g = base.gen();
        let mut acc = base.one();
        for _ in 0..kb {
            gen_images.push(base_emb.apply(acc));
            acc = base.mul(acc, g);
        }
    }

    let ncols = ncols_field * kb;
    let nrows = ((hi_used - lo) as usize) * kl;
    let mut mat: Vec<Vec<u64>> = vec![vec![0u64; ncols]; nrows];
    for (col_f, (i, j)) in (0..=dz)
        .flat_map(|i| (0..=dt).map(move |j| (i, j)))
        .enumerate()
    {
        let shift = -(j as i64) * e;
        for r in lo..hi_used {
            let c = powers[i].coeff(r - shift);
            if lfield.is_zero(c) {
                continue;
            }
            for (m, gi) in gen_images.iter().enumerate() {
                let v = lfield.mul(c, *gi);
                let digits = lfield.digits(v);
                for (l, &dgt) in digits.iter().enumerate() {
                    if dgt != 0 {
                        mat[((r - lo) as usize) * kl + l][col_f * kb + m] = dgt;
                    }
                }
            }
        }
    }

    let kernel = fp_kernel(&mat, p);
    'vectors: for vec in kernel {
        // assemble G over the base field
        let mut coeffs: Vec<RatFunc> = Vec::with_capacity(dz + 1);
        for i in 0..=dz {
            let mut tpoly = vec![Fq(0); dt + 1];
            for j in 0..=dt {
                let col_f = i * (dt + 1) + j;
                let digits: Vec<u64> = (0..kb).map(|m| vec[col_f * kb + m]).collect();
                tpoly[j] = base.from_digits(&digits);
            }
            coeffs.push(RatFunc::from_poly(Poly::new(base.clone(), tpoly)));
        }
        let g = KPoly::new(base.clone(), coeffs);
        if g.degree().map_or(true, |d| d == 0) {
            continue;
        }
        // verify at full precision
        let resid = eval_kpoly_at_series(&g, alpha, base_emb)?;
        if resid.is_exactly_zero() || resid.ord().is_none() {
            // normalize to the primitive integral representative
            let (_, prim) = g.primitive_part();
            return Ok(Some(prim.to_kpoly()));
        }
        // witnessed nonzero residual: try the next kernel vector
        continue 'vectors;
    }
    Ok(None)
}

/// Kernel basis of a matrix over F_p.
fn fp_kernel(mat: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    if mat.is_empty() {
        return vec![];
    }
    let rows = mat.len();
    let cols = mat[0].len();
    let mut m: Vec<Vec<u64>> = mat.to_vec();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0usize;
    for c in 0..cols {
        let mut piv = None;
        for i in r..rows {
            if m[i][c] % p != 0 {
                piv = Some(i);
                break;
            }
        }
        let piv = match piv {
            None => continue,
            Some(i) => i,
        };
        m.swap(r, piv);
        let inv = mod_inverse(m[r][c], p);
        for cc in c..cols {
            m[r][cc] = (m[r][cc] * inv) % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] % p != 0 {
                let f = m[i][c] % p;
                for cc in c..cols {
                    m[i][cc] = (m[i][cc] + p * p - f * m[r][cc] % p) % p;
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
        let mut v = vec![0u64; cols];
        v[c] = 1;
        for cc in 0..cols {
            if let Some(pr) = pivot_of_col[cc] {
                // x_cc = -sum over free columns
                let coeff = m[pr][c] % p;
                if coeff != 0 {
                    v[cc] = (p - coeff) % p;
                }
            }
        }
        basis.push(v);
    }
    basis
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Convenience wrapper when the series is over the base field itself.
pub fn minpoly_reconstruct_same_field(
    alpha: &LaurentSeries,
    degz_bound: usize,
    degt_bound: usize,
) -> Result<Option<KPoly>> {
    let emb = FieldEmbedding::identity(alpha.field());
    minpoly_reconstruct(alpha, &emb, degz_bound, degt_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::field::Field;
    use crate::ffcore::kpoly::KPoly;
    use crate::laurent::newton::{newton_puiseux_roots, NpConfig};
    use crate::laurent::series::ratfunc_to_series;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }
    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn reconstruct_binomial_root() {
        // root of z^2 - (1 + 1/t) over F_3; minimal polynomial t z^2 - t - 1
        let f = f3();
        let u = RatFunc::new(Poly::from_ints(&f, &[1, 1]), Poly::var(&f)).unwrap();
        let g = KPoly::new(
            f.clone(),
            vec![u.neg(), RatFunc::zero(&f), RatFunc::one(&f)],
        );
        let roots = newton_puiseux_roots(&g, 16, &NpConfig::default()).unwrap();
        let alpha = &roots[0];
        let rec = minpoly_reconstruct(&alpha.series, &alpha.emb, 2, 1)
            .unwrap()
            .expect("kernel found");
        // expected: t z^2 - (t+1), up to scalar; compare monic forms
        let expect = KPoly::new(
            f.clone(),
            vec![u.neg(), RatFunc::zero(&f), RatFunc::one(&f)],
        );
        assert_eq!(rec.monic(), expect.monic());
    }

    #[test]
    fn reconstruct_rational_series() {
        // series of 1 + 1/t: minimal polynomial z - 1 - 1/t, primitive t z - t - 1
        let f = f5();
        let r = RatFunc::new(Poly::from_ints(&f, &[1, 1]), Poly::var(&f)).unwrap();
        let emb = FieldEmbedding::identity(&f);
        let s = ratfunc_to_series(&r, &emb, 1, 12).unwrap();
        let rec = minpoly_reconstruct(&s, &emb, 1, 1).unwrap().expect("found");
        assert_eq!(rec.degree(), Some(1));
        let root = rec.coeff(0).neg().div(&rec.coeff(1)).unwrap();
        assert_eq!(root, r);
    }

    #[test]
    fn insufficient_precision_guard() {
        let f = f5();
        let s = LaurentSeries::from_terms(&f, 1, [(1, Fq(2)), (2, Fq(3))], 4, false);
        let emb = FieldEmbedding::identity(&f);
        let err = minpoly_reconstruct(&s, &emb, 2, 2).unwrap_err();
        assert!(matches!(err, Error::InsufficientPrecision { .. }));
    }

    #[test]
    fn noise_yields_none() {
        // a random-looking series with enough precision but no small minimal
        // polynomial
        let f = f5();
        let terms: Vec<(i64, Fq)> = vec![
            (1, Fq(2)),
            (2, Fq(1)),
            (3, Fq(4)),
            (5, Fq(1)),
            (8, Fq(3)),
            (13, Fq(2)),
            (21, Fq(4)),
            (34, Fq(1)),
        ];
        let s = LaurentSeries::from_terms(&f, 1, terms, 40, false);
        let emb = FieldEmbedding::identity(&f);
        let rec = minpoly_reconstruct(&s, &emb, 2, 2).unwrap();
        assert!(rec.is_none());
    }

    #[test]
    fn extension_coefficient_root_descends_to_base() {
        // z^2 - 2 over F_5: the root series lives in F_25 but the
        // reconstruction over the base returns z^2 - 2 itself
        let f = f5();
        let g = KPoly::from_int_coeffs(&f, &[&[-2], &[], &[1]]);
        let roots = newton_puiseux_roots(&g, 12, &NpConfig::default()).unwrap();
        let alpha = &roots[0];
        let rec = minpoly_reconstruct(&alpha.series, &alpha.emb, 2, 1)
            .unwrap()
            .expect("found");
        assert_eq!(rec.monic(), g.monic());
    }
}
