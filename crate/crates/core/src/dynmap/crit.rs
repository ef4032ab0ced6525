//! Critical points and ramification indices.

use crate::algext::elem::{AlgElem, ExtElem};
use crate::algext::factor_bivariate;
use crate::ffcore::kpoly::KPoly;
use crate::ffcore::ratfunc::RatFunc;

use super::map::{ProjPoint, RationalMap};

/// A critical point with its ramification index.
#[derive(Clone, Debug)]
pub struct CritDatum {
    pub point: CritPoint,
    pub e: u32,
}

#[derive(Clone, Debug)]
pub enum CritPoint {
    Rational(ProjPoint),
    /// One Galois orbit of algebraic critical points, as a certified
    /// irreducible minimal polynomial.
    Algebraic(AlgElem),
}

/// Critical locus of the map.
#[derive(Clone, Debug)]
pub enum CriticalSet {
    /// The Wronskian vanishes identically: the map factors through
    /// Frobenius and every point is critical.
    Inseparable,
    Points(Vec<CritDatum>),
}

/// Wronskian numerator f' g - f g' and the critical points with their
/// ramification indices, including the chart check at infinity.
pub fn critical_points(phi: &RationalMap) -> CriticalSet {
    let f = phi.numerator();
    let g = phi.denominator();
    let w = f.derivative_z().mul(g).sub(&f.mul(&g.derivative_z()));
    if w.is_zero() {
        return CriticalSet::Inseparable;
    }
    let mut out = Vec::new();
    for (factor, _mult) in factor_bivariate(&w) {
        match factor.degree() {
            Some(1) => {
                let root = factor.coeff(0).neg().div(&factor.coeff(1)).unwrap();
                let p = ProjPoint::Finite(root);
                let e = ramification_index(phi, &p);
                debug_assert!(e >= 2, "Wronskian root must be critical");
                out.push(CritDatum {
                    point: CritPoint::Rational(p),
                    e,
                });
            }
            Some(d) if d >= 2 => {
                let alg = AlgElem::from_certified(factor);
                let e = ramification_index_algebraic(phi, &alg);
                debug_assert!(e >= 2, "Wronskian root must be critical");
                out.push(CritDatum {
                    point: CritPoint::Algebraic(alg),
                    e,
                });
            }
            _ => {}
        }
    }
    let e_inf = ramification_index(phi, &ProjPoint::Infinity);
    if e_inf >= 2 {
        out.push(CritDatum {
            point: CritPoint::Rational(ProjPoint::Infinity),
            e: e_inf,
        });
    }
    CriticalSet::Points(out)
}

/// Ramification index of the map at a K-rational point: the multiplicity of
/// the point in the fiber over its image, computed in the appropriate
/// charts.
pub fn ramification_index(phi: &RationalMap, p: &ProjPoint) -> u32 {
    let field = phi.field().clone();
    match p {
        ProjPoint::Finite(x) => {
            let fv = phi.numerator().eval_rat(x);
            let gv = phi.denominator().eval_rat(x);
            let target = if gv.is_zero() {
                // pole: multiplicity of x in the denominator
                None
            } else {
                Some(fv.div(&gv).expect("nonzero"))
            };
            let h = match target {
                None => phi.denominator().clone(),
                Some(beta) => phi.numerator().sub(&phi.denominator().scale(&beta)),
            };
            root_multiplicity(&h, x)
        }
        ProjPoint::Infinity => {
            let swapped = phi.swap_chart_keep();
            // infinity maps to 0 under the swap; recurse on the finite chart
            let zero = ProjPoint::Finite(RatFunc::zero(&field));
            ramification_index(&swapped, &zero)
        }
    }
}

impl RationalMap {
    /// sigma . phi . sigma with sigma(z) = 1/z, valid for any degree.
    pub(crate) fn swap_chart_keep(&self) -> RationalMap {
        self.swap_chart()
    }
}

fn root_multiplicity(h: &KPoly, x: &RatFunc) -> u32 {
    // multiplicity of (z - x) in h
    let field = h.field().clone();
    let lin = KPoly::new(field, vec![x.neg(), RatFunc::one(h.field())]);
    let mut m = 0u32;
    let mut cur = h.clone();
    loop {
        let (q, r) = cur.divrem(&lin);
        if !r.is_zero() {
            return m;
        }
        m += 1;
        cur = q;
        if cur.is_zero() {
            return m;
        }
    }
}

/// Ramification index at an algebraic point given by its minimal polynomial
/// (the same for every conjugate root): the z-multiplicity of the root alpha
/// in f(z) g(alpha) - f(alpha) g(z), or in g(z) when phi(alpha) is infinite.
pub fn ramification_index_algebraic(phi: &RationalMap, alpha: &AlgElem) -> u32 {
    let gen = alpha.generator();
    let fv = alpha.eval_kpoly(phi.numerator());
    let gv = alpha.eval_kpoly(phi.denominator());
    let coeffs: Vec<ExtElem> = if gv.is_zero() {
        phi.denominator()
            .coeffs()
            .iter()
            .map(|c| alpha.from_ratfunc(c))
            .collect()
    } else {
        // B(z) = f(z) g(alpha) - f(alpha) g(z)
        let n = phi
            .numerator()
            .coeffs()
            .len()
            .max(phi.denominator().coeffs().len());
        (0..n)
            .map(|i| {
                let fc = alpha.from_ratfunc(&phi.numerator().coeff(i));
                let gc = alpha.from_ratfunc(&phi.denominator().coeff(i));
                fc.mul(&gv).sub(&fv.mul(&gc))
            })
            .collect()
    };
    // synthetic division by (z - gen) repeated
    let mut cur = coeffs;
    let mut m = 0u32;
    loop {
        // trim leading zeros
        while cur.last().map_or(false, |c| c.is_zero()) {
            cur.pop();
        }
        if cur.is_empty() {
            return m;
        }
        if cur.len() == 1 {
            return m + if cur[0].is_zero() { 1 } else { 0 };
        }
        // divide: b_{k-1} = a_k + gen * b_k, remainder a_0 + gen*b_0
        let mut b: Vec<ExtElem> = vec![alpha.zero(); cur.len() - 1];
        let n = cur.len() - 1;
        b[n - 1] = cur[n].clone();
        for i in (1..n).rev() {
            b[i - 1] = cur[i].add(&gen.mul(&b[i]));
        }
        let rem = cur[0].add(&gen.mul(&b[0]));
        if !rem.is_zero() {
            return m;
        }
        m += 1;
        cur = b;
    }
}
