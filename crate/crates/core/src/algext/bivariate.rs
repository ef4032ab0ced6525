//! Bivariate factorization over K = F_q(t): specialize t at a good point,
//! factor the specialization, Hensel-lift the factors (t - c)-adically, and
//! recombine subsets by exact trial division. Constant-field extension is
//! used when no good specialization point exists in F_q, with factors
//! descended along Frobenius orbits.

use crate::error::{Error, Result};
use crate::ffcore::embed::FieldEmbedding;
use crate::ffcore::factor as ufactor;
use crate::ffcore::field::{Field, Fq};
use crate::ffcore::kpoly::{BiPoly, KPoly};
use crate::ffcore::poly::Poly;
use crate::ffcore::ratfunc::RatFunc;

/// Factor F in K[z] into monic irreducibles with multiplicities.
/// The product of the factors, times the content in K, reassembles F.
pub fn factor_bivariate(f: &KPoly) -> Vec<(KPoly, u32)> {
    let field = f.field().clone();
    if f.degree().map_or(true, |d| d == 0) {
        return vec![];
    }
    let (_content, prim) = f.primitive_part();
    let monic_input = f.monic();
    let mut parts = distinct_factors(&prim);
    parts.sort_by(|a, b| (a.deg_i(), format!("{a:?}")).cmp(&(b.deg_i(), format!("{b:?}"))));
    let mut out = Vec::new();
    let mut rest = monic_input;
    for u in parts {
        let mut e = 0u32;
        loop {
            let (q, r) = rest.divrem(&u);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        debug_assert!(e > 0, "distinct factor must divide");
        out.push((u, e));
        let _ = &field;
    }
    debug_assert!(rest.is_constant());
    out
}

/// Distinct monic irreducible z-factors of a primitive integral polynomial.
fn distinct_factors(f: &BiPoly) -> Vec<KPoly> {
    if f.deg_z() <= 0 {
        return vec![];
    }
    let k = f.to_kpoly();
    let kp = k.derivative_z();
    if kp.is_zero() {
        // f(z) = h(z^p); same irreducible structure as h with z -> z^p
        return distinct_factors_inseparable(&k);
    }
    let c = k.gcd(&kp); // monic in K[z]
    let w = k.div_exact(&c);
    let (_, wprim) = w.primitive_part();
    let mut set = factor_squarefree_primitive(&wprim);
    if c.degree().map_or(false, |d| d > 0) {
        let (_, cprim) = c.primitive_part();
        for u in distinct_factors(&cprim) {
            if !set.contains(&u) {
                set.push(u);
            }
        }
    }
    set
}

fn distinct_factors_inseparable(k: &KPoly) -> Vec<KPoly> {
    let field = k.field().clone();
    let p = field.p() as usize;
    let mut h_coeffs = Vec::new();
    for i in (0..k.coeffs().len()).step_by(p) {
        h_coeffs.push(k.coeff(i));
    }
    let h = KPoly::new(field.clone(), h_coeffs);
    let (_, hprim) = h.primitive_part();
    let mut out = Vec::new();
    for g in distinct_factors(&hprim) {
        // g(z^p) is irreducible unless all its coefficients are p-th powers,
        // in which case it is the p-th power of the coefficient-root poly.
        if kpoly_coeffs_are_pth_powers(&g) {
            let root = kpoly_coeff_pth_root(&g);
            for u in distinct_factors(&root.primitive_part().1) {
                if !out.contains(&u) {
                    out.push(u);
                }
            }
        } else {
            let mut coeffs = vec![RatFunc::zero(&field); p * g.coeffs().len()];
            for (i, c) in g.coeffs().iter().enumerate() {
                coeffs[p * i] = c.clone();
            }
            let gzp = KPoly::new(field.clone(), coeffs).monic();
            if !out.contains(&gzp) {
                out.push(gzp);
            }
        }
    }
    out
}

fn kpoly_coeffs_are_pth_powers(g: &KPoly) -> bool {
    g.coeffs().iter().all(ratfunc_is_pth_power)
}

fn ratfunc_is_pth_power(r: &RatFunc) -> bool {
    if r.is_zero() {
        return true;
    }
    let p = r.field().p() as u32;
    let num = r.num().mul(&r.den().pow(p - 1));
    let pp = p as usize;
    num.coeffs()
        .iter()
        .enumerate()
        .all(|(i, c)| i % pp == 0 || r.field().is_zero(*c))
}

fn ratfunc_pth_root(r: &RatFunc) -> RatFunc {
    if r.is_zero() {
        return r.clone();
    }
    let field = r.field().clone();
    let p = field.p() as u32;
    // a/b = a b^(p-1) / b^p
    let num = r.num().mul(&r.den().pow(p - 1));
    let rn = poly_pth_root(&num);
    let rd = r.den().clone();
    RatFunc::new(rn, rd).expect("nonzero denominator")
}

fn poly_pth_root(f: &Poly) -> Poly {
    let field = f.field().clone();
    let p = field.p() as usize;
    let root_exp = (field.q() / field.p()) as u128;
    let mut coeffs = Vec::new();
    for i in (0..f.coeffs().len()).step_by(p) {
        coeffs.push(field.pow(f.coeff(i), root_exp));
    }
    Poly::new(field, coeffs)
}

fn kpoly_coeff_pth_root(g: &KPoly) -> KPoly {
    KPoly::new(
        g.field().clone(),
        g.coeffs().iter().map(ratfunc_pth_root).collect(),
    )
}

/// Factor a primitive squarefree polynomial with separable irreducible
/// factors, returning monic-in-K distinct irreducibles.
fn factor_squarefree_primitive(f: &BiPoly) -> Vec<KPoly> {
    let field = f.field().clone();
    let n = f.deg_z();
    if n <= 0 {
        return vec![];
    }
    if n == 1 {
        return vec![f.to_kpoly().monic()];
    }
    // deterministic scan for a good specialization point
    if let Some(c) = find_good_point(f, &field) {
        return factor_at_point(f, c);
    }
    // no good point in this constant field: extend and descend
    let mut j = 2usize;
    loop {
        let big = field
            .extension_field(j)
            .expect("constant-field extension for specialization");
        let emb = FieldEmbedding::new(&field, &big).expect("field embedding");
        let fb = f.map_coeffs(&big, |p| emb.apply_poly(p));
        if let Some(c) = find_good_point(&fb, &big) {
            let over_big = factor_at_point(&fb, c);
            return descend_frobenius_orbits(over_big, &field, &emb);
        }
        j += 1;
        assert!(j <= 8, "no good specialization point found");
    }
}

/// c is good when the leading z-coefficient does not vanish and the
/// specialization stays squarefree.
fn find_good_point(f: &BiPoly, field: &Field) -> Option<Fq> {
    let lc = f.lc_z();
    for c in field.elements() {
        if field.is_zero(lc.eval(c)) {
            continue;
        }
        let spec = f.specialize_t(c);
        let d = spec.derivative();
        if d.is_zero() {
            continue;
        }
        if spec.gcd(&d).degree() == Some(0) {
            return Some(c);
        }
    }
    None
}

/// Monicize, factor the specialization, Hensel-lift, recombine.
fn factor_at_point(f: &BiPoly, c: Fq) -> Vec<KPoly> {
    let field = f.field().clone();
    let n = f.deg_z() as usize;
    let k = f.to_kpoly();
    let lc = f.lc_z();
    // monic model fm(z) = lc^(n-1) f(z / lc)
    let lc_rf = RatFunc::from_poly(lc.clone());
    let mut fm_coeffs: Vec<Poly> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        // a_i * lc^(n-1-i); for i = n this is 1
        let a = f.coeff(i);
        if i == n {
            fm_coeffs.push(Poly::one(&field));
        } else {
            let mut acc = a;
            for _ in 0..(n - 1 - i) {
                acc = acc.mul(&lc);
            }
            fm_coeffs.push(acc);
        }
    }
    let fm = BiPoly::new(field.clone(), fm_coeffs);

    let spec = fm.specialize_t(c);
    let modular: Vec<Poly> = ufactor::factor(&spec)
        .into_iter()
        .map(|(u, e)| {
            debug_assert_eq!(e, 1);
            u
        })
        .collect();
    if modular.len() == 1 {
        return vec![k.monic()];
    }
    let bound = (fm.deg_t() + 2) as usize + 1;
    let pi = Poly::new(field.clone(), vec![field.neg(c), field.one()]); // t - c
    let lifted = hensel_lift_tree(&fm, &modular, &pi, bound);

    // recombination by subsets of increasing size, trial-dividing the
    // original (monic-in-K) polynomial
    let mut remaining: Vec<Poly2> = lifted;
    let mut target = k.monic();
    let mut found: Vec<KPoly> = Vec::new();
    let mut size = 1usize;
    while 2 * size <= remaining.len() {
        let mut advanced = false;
        let idxs: Vec<usize> = (0..remaining.len()).collect();
        for subset in subsets_of_size(&idxs, size) {
            let mut prod = Poly2::one(&field);
            for &i in &subset {
                prod = prod.mul_mod(&remaining[i], &pi, bound);
            }
            // candidate factor of f: primitive part of prod(lc * z)
            let cand = unmonicize(&prod, &lc_rf);
            if let Some(cand) = cand {
                if cand.degree().map_or(false, |d| d >= 1) && cand.divides(&target) {
                    let cm = cand.monic();
                    target = target.div_exact(&cm);
                    found.push(cm);
                    let mut keep = Vec::new();
                    for (i, p2) in remaining.into_iter().enumerate() {
                        if !subset.contains(&i) {
                            keep.push(p2);
                        }
                    }
                    remaining = keep;
                    advanced = true;
                    break;
                }
            }
        }
        if !advanced {
            size += 1;
        }
    }
    if target.degree().map_or(false, |d| d >= 1) {
        found.push(target.monic());
    }
    found
}

/// A z-polynomial with t-coefficients kept reduced modulo pi^bound.
#[derive(Clone, Debug)]
struct Poly2 {
    coeffs: Vec<Poly>,
}

impl Poly2 {
    fn one(field: &Field) -> Poly2 {
        Poly2 {
            coeffs: vec![Poly::one(field)],
        }
    }
    fn from_bipoly(b: &BiPoly) -> Poly2 {
        Poly2 {
            coeffs: b.coeffs().to_vec(),
        }
    }
    fn from_poly(field: &Field, p: &Poly) -> Poly2 {
        Poly2 {
            coeffs: p
                .coeffs()
                .iter()
                .map(|&c| Poly::constant(field, c))
                .collect(),
        }
    }
    fn deg(&self) -> i64 {
        let mut d = -1i64;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                d = i as i64;
            }
        }
        d
    }
    fn coeff(&self, i: usize) -> Poly {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.coeffs[0].field()))
    }
    fn mul_mod(&self, other: &Poly2, pi: &Poly, bound: usize) -> Poly2 {
        let field = self.coeffs[0].field().clone();
        let pib = pi_pow(pi, bound);
        let la = self.coeffs.len();
        let lb = other.coeffs.len();
        let mut out = vec![Poly::zero(&field); la + lb - 1];
        for i in 0..la {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..lb {
                out[i + j] = out[i + j]
                    .add(&self.coeffs[i].mul(&other.coeffs[j]))
                    .rem(&pib);
            }
        }
        Poly2 { coeffs: out }
    }
    fn sub(&self, other: &Poly2, field: &Field) -> Poly2 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeff(i);
            let b = other.coeff(i);
            let _ = field;
            out.push(a.sub(&b));
        }
        Poly2 { coeffs: out }
    }
}

fn pi_pow(pi: &Poly, e: usize) -> Poly {
    let mut acc = Poly::one(pi.field());
    for _ in 0..e {
        acc = acc.mul(pi);
    }
    acc
}

/// Hensel lift a list of pairwise-coprime monic modular factors of a monic
/// fm to precision pi^bound, by a factor tree.
fn hensel_lift_tree(fm: &BiPoly, modular: &[Poly], pi: &Poly, bound: usize) -> Vec<Poly2> {
    let field = fm.field().clone();
    if modular.len() == 1 {
        // reduce fm mod pi^bound
        let pib = pi_pow(pi, bound);
        return vec![Poly2 {
            coeffs: fm.coeffs().iter().map(|c| c.rem(&pib)).collect(),
        }];
    }
    let mid = modular.len() / 2;
    let (left, right) = modular.split_at(mid);
    let gl: Poly = left.iter().fold(Poly::one(&field), |a, b| a.mul(b));
    let gr: Poly = right.iter().fold(Poly::one(&field), |a, b| a.mul(b));
    let (gl2, gr2) = hensel_lift_pair(fm, &gl, &gr, pi, bound);
    // recurse: left factors lift inside gl2, right inside gr2
    let mut out = Vec::new();
    out.extend(hensel_lift_tree_inner(&gl2, left, pi, bound));
    out.extend(hensel_lift_tree_inner(&gr2, right, pi, bound));
    out
}

fn hensel_lift_tree_inner(target: &Poly2, modular: &[Poly], pi: &Poly, bound: usize) -> Vec<Poly2> {
    if modular.len() == 1 {
        return vec![target.clone()];
    }
    let field = target.coeffs[0].field().clone();
    let mid = modular.len() / 2;
    let (left, right) = modular.split_at(mid);
    let gl: Poly = left.iter().fold(Poly::one(&field), |a, b| a.mul(b));
    let gr: Poly = right.iter().fold(Poly::one(&field), |a, b| a.mul(b));
    let bi = BiPoly::new(field.clone(), target.coeffs.clone());
    let (gl2, gr2) = hensel_lift_pair(&bi, &gl, &gr, pi, bound);
    let mut out = Vec::new();
    out.extend(hensel_lift_tree_inner(&gl2, left, pi, bound));
    out.extend(hensel_lift_tree_inner(&gr2, right, pi, bound));
    out
}

/// Lift f = g*h mod pi to mod pi^bound; f monic in z with t-poly
/// coefficients, g, h monic over the residue field, coprime.
fn hensel_lift_pair(f: &BiPoly, g0: &Poly, h0: &Poly, pi: &Poly, bound: usize) -> (Poly2, Poly2) {
    let field = f.field().clone();
    // residue field representative of t: pi = t - c
    let c = field.neg(pi.coeff(0));
    // Bezout over the residue field: s*g0 + t*h0 = 1 in L[z]
    let (one, s, tt) = g0.xgcd(h0);
    assert!(one.is_one(), "modular factors must be coprime");
    let mut g = Poly2::from_poly(&field, g0);
    let mut h = Poly2::from_poly(&field, h0);
    let mut k = 1usize;
    while k < bound {
        // e = (f - g*h) / pi^k mod pi
        let gh = g.mul_mod(&h, pi, bound);
        let f2 = Poly2::from_bipoly(f);
        let diff = f2.sub(&gh, &field);
        // divide each coefficient by pi^k exactly, then reduce mod pi
        let pik = pi_pow(pi, k);
        let mut e_coeffs = Vec::with_capacity(diff.coeffs.len());
        let mut all_zero = true;
        for cc in &diff.coeffs {
            let (q, r) = cc.divrem(&pik);
            debug_assert!(r.is_zero(), "lift invariant violated");
            let v = q.eval(c);
            if !field.is_zero(v) {
                all_zero = false;
            }
            e_coeffs.push(v);
        }
        if all_zero {
            k += 1;
            continue;
        }
        let e = Poly::new(field.clone(), e_coeffs);
        // delta_g = (t*e) mod g0, delta_h = s*e + ((t*e) div g0) * h0
        let te = tt.mul(&e);
        let (q, dg) = te.divrem(g0);
        let dh = s.mul(&e).add(&q.mul(h0));
        // g += pi^k * dg ; h += pi^k * dh
        for (i, &cc) in dg.coeffs().iter().enumerate() {
            if field.is_zero(cc) {
                continue;
            }
            while g.coeffs.len() <= i {
                g.coeffs.push(Poly::zero(&field));
            }
            g.coeffs[i] = g.coeffs[i].add(&pik.scale(cc));
        }
        for (i, &cc) in dh.coeffs().iter().enumerate() {
            if field.is_zero(cc) {
                continue;
            }
            while h.coeffs.len() <= i {
                h.coeffs.push(Poly::zero(&field));
            }
            h.coeffs[i] = h.coeffs[i].add(&pik.scale(cc));
        }
        k += 1;
    }
    (g, h)
}

/// Map a monic factor H of the monicized model back to a candidate factor of
/// the original: primitive part of H(lc * z).
fn unmonicize(h: &Poly2, lc: &RatFunc) -> Option<KPoly> {
    let field = h.coeffs[0].field().clone();
    let n = h.deg();
    if n < 1 {
        return None;
    }
    let mut coeffs: Vec<RatFunc> = Vec::with_capacity(n as usize + 1);
    let mut lcp = RatFunc::one(&field);
    for i in 0..=n as usize {
        let c = RatFunc::from_poly(h.coeff(i));
        coeffs.push(c.mul(&lcp));
        lcp = lcp.mul(lc);
    }
    let kp = KPoly::new(field.clone(), coeffs);
    if kp.is_zero() {
        return None;
    }
    let (_, prim) = kp.primitive_part();
    Some(prim.to_kpoly())
}

fn subsets_of_size(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if size > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // next combination
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - size {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Descend a factorization over an extension constant field to the base:
/// group factors into Frobenius orbits and take orbit products.
fn descend_frobenius_orbits(factors: Vec<KPoly>, base: &Field, emb: &FieldEmbedding) -> Vec<KPoly> {
    let big = emb.to_field().clone();
    let qbase = base.q() as u128;
    let frob = |k: &KPoly| -> KPoly {
        k.map_coeffs(
            |c| {
                let num = c.num().map_coeffs(&big, |x| big.pow(x, qbase));
                let den = c.den().map_coeffs(&big, |x| big.pow(x, qbase));
                RatFunc::new(num, den).expect("nonzero denominator")
            },
            &big,
        )
    };
    let mut remaining = factors;
    let mut out = Vec::new();
    while let Some(first) = remaining.first().cloned() {
        // collect the Frobenius orbit of `first`
        let mut orbit = vec![first.clone()];
        let mut cur = frob(&first);
        while cur.monic() != first.monic() {
            orbit.push(cur.clone());
            cur = frob(&cur);
            assert!(orbit.len() <= remaining.len(), "orbit does not close");
        }
        // remove orbit members from remaining
        for member in &orbit {
            if let Some(pos) = remaining.iter().position(|f| f.monic() == member.monic()) {
                remaining.remove(pos);
            }
        }
        let mut prod = KPoly::one(&big);
        for member in &orbit {
            prod = prod.mul(&member.monic());
        }
        // descend coefficients to the base field
        let descended = descend_kpoly(&prod, base, emb)
            .expect("orbit product must have base-field coefficients");
        out.push(descended.monic());
    }
    out
}

fn descend_kpoly(k: &KPoly, base: &Field, emb: &FieldEmbedding) -> Result<KPoly> {
    let mut coeffs = Vec::with_capacity(k.coeffs().len());
    for c in k.coeffs() {
        let num = descend_poly(c.num(), base, emb)?;
        let den = descend_poly(c.den(), base, emb)?;
        coeffs.push(RatFunc::new(num, den)?);
    }
    Ok(KPoly::new(base.clone(), coeffs))
}

fn descend_poly(p: &Poly, base: &Field, emb: &FieldEmbedding) -> Result<Poly> {
    let mut coeffs = Vec::with_capacity(p.coeffs().len());
    for &c in p.coeffs() {
        let pre = emb
            .preimage(c)
            .ok_or_else(|| Error::InvalidInput("coefficient not in base field".into()))?;
        coeffs.push(pre);
    }
    Ok(Poly::new(base.clone(), coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn t(field: &Field) -> RatFunc {
        RatFunc::var(field)
    }

    fn z2_minus_t(field: &Field) -> KPoly {
        KPoly::new(
            field.clone(),
            vec![t(field).neg(), RatFunc::zero(field), RatFunc::one(field)],
        )
    }

    #[test]
    fn difference_of_squares_in_z() {
        // z^4 - t^2 = (z^2 - t)(z^2 + t)
        let f = f5();
        let t2 = t(&f).mul(&t(&f));
        let g = KPoly::new(
            f.clone(),
            vec![
                t2.neg(),
                RatFunc::zero(&f),
                RatFunc::zero(&f),
                RatFunc::zero(&f),
                RatFunc::one(&f),
            ],
        );
        let fs = factor_bivariate(&g);
        assert_eq!(fs.len(), 2);
        let mut degs: Vec<i64> = fs.iter().map(|(u, _)| u.deg_i()).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![2, 2]);
        let plus = KPoly::new(f.clone(), vec![t(&f), RatFunc::zero(&f), RatFunc::one(&f)]);
        let factors: Vec<&KPoly> = fs.iter().map(|(u, _)| u).collect();
        assert!(factors.contains(&&z2_minus_t(&f)));
        assert!(factors.contains(&&plus));
    }

    #[test]
    fn eisenstein_quadratic_irreducible() {
        let f = f5();
        let g = z2_minus_t(&f);
        let fs = factor_bivariate(&g);
        assert_eq!(fs, vec![(g.monic(), 1)]);
    }

    #[test]
    fn eisenstein_quartic_irreducible() {
        // z^4 - t, cross-checked by specialization counts
        let f = f5();
        let g = KPoly::new(
            f.clone(),
            vec![
                t(&f).neg(),
                RatFunc::zero(&f),
                RatFunc::zero(&f),
                RatFunc::zero(&f),
                RatFunc::one(&f),
            ],
        );
        let fs = factor_bivariate(&g);
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].0, g.monic());
        assert_eq!(fs[0].1, 1);
    }

    #[test]
    fn multiplicities_tracked() {
        let f = f5();
        let a = z2_minus_t(&f);
        let b = KPoly::new(f.clone(), vec![t(&f).neg(), RatFunc::one(&f)]); // z - t
        let g = a.mul(&a).mul(&b).mul(&b).mul(&b);
        let fs = factor_bivariate(&g);
        let mut mult_by_deg: Vec<(i64, u32)> = fs.iter().map(|(u, e)| (u.deg_i(), *e)).collect();
        mult_by_deg.sort_unstable();
        assert_eq!(mult_by_deg, vec![(1, 3), (2, 2)]);
    }

    #[test]
    fn inseparable_irreducible_kept_whole() {
        // z^5 - t is irreducible (and inseparable)
        let f = f5();
        let g = KPoly::new(
            f.clone(),
            vec![
                t(&f).neg(),
                RatFunc::zero(&f),
                RatFunc::zero(&f),
                RatFunc::zero(&f),
                RatFunc::zero(&f),
                RatFunc::one(&f),
            ],
        );
        let fs = factor_bivariate(&g);
        assert_eq!(fs, vec![(g.monic(), 1)]);
    }

    #[test]
    fn pth_power_structure() {
        // (z - t)^5 = z^5 - t^5: derivative vanishes, factor is (z - t)^5
        let f = f5();
        let b = KPoly::new(f.clone(), vec![t(&f).neg(), RatFunc::one(&f)]);
        let g = b.pow(5);
        let fs = factor_bivariate(&g);
        assert_eq!(fs, vec![(b.monic(), 5)]);
    }

    #[test]
    fn random_products_reassemble() {
        let f = f5();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for round in 0..40 {
            // build a product of two random lowish-degree polynomials
            let a = random_kpoly(&f, 3, 2, &mut rng);
            let b = random_kpoly(&f, 2, 2, &mut rng);
            let g = a.mul(&b);
            if g.degree().map_or(true, |d| d == 0) {
                continue;
            }
            let fs = factor_bivariate(&g);
            let mut prod = KPoly::constant(g.lc());
            for (u, e) in &fs {
                for _ in 0..*e {
                    prod = prod.mul(u);
                }
            }
            assert_eq!(prod, g, "round {round}");
        }
    }

    fn random_kpoly(field: &Field, dz: usize, dt: usize, rng: &mut ChaCha8Rng) -> KPoly {
        loop {
            let coeffs: Vec<RatFunc> = (0..=dz)
                .map(|_| RatFunc::from_poly(Poly::random_up_to(field, dt, rng)))
                .collect();
            let k = KPoly::new(field.clone(), coeffs);
            if k.degree() == Some(dz) {
                return k;
            }
        }
    }
}
