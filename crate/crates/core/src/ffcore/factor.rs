//! Univariate factorization over F_q: squarefree/distinct-degree/equal-degree
//! stages, irreducibility tests, root extraction, and deterministic searches
//! for irreducible polynomials.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Field, Fq};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Complete factorization into monic irreducibles with multiplicities.
/// The product of the factors times the unit leading coefficient equals the
/// input exactly.
pub fn factor(f: &Poly) -> Vec<(Poly, u32)> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut out: Vec<(Poly, u32)> = Vec::new();
    if f.degree() == Some(0) {
        return out;
    }
    let monic = f.monic();
    let mut parts = distinct_irreducible_factors(&monic);
    parts.sort_by(|a, b| (a.deg_i(), a.coeffs()).cmp(&(b.deg_i(), b.coeffs())));
    for u in parts {
        let mut e = 0u32;
        let mut g = monic.clone();
        loop {
            let (q, r) = g.divrem(&u);
            if !r.is_zero() {
                break;
            }
            g = q;
            e += 1;
        }
        debug_assert!(e > 0);
        out.push((u, e));
    }
    out
}

/// The set of distinct monic irreducible divisors.
fn distinct_irreducible_factors(f: &Poly) -> Vec<Poly> {
    if f.degree().map_or(true, |d| d == 0) {
        return vec![];
    }
    let fp = f.derivative();
    if fp.is_zero() {
        // f = h(x^p) and F_q is perfect, so f and its p-th root have the
        // same irreducible divisors.
        return distinct_irreducible_factors(&pth_root_poly(f));
    }
    let c = f.gcd(&fp);
    let w = f.div_exact(&c);
    let mut set = factor_squarefree(&w.monic());
    if c.degree().map_or(false, |d| d > 0) {
        for u in distinct_irreducible_factors(&c) {
            if !set.contains(&u) {
                set.push(u);
            }
        }
    }
    set
}

/// For f with f' = 0, write f(x) = h(x^p) and return the p-th root of f,
/// i.e. the polynomial g with g^p = f (valid over perfect F_q).
pub fn pth_root_poly(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.p() as usize;
    let q = field.q();
    // p-th root of a field element is x^(q/p)
    let root_exp = (q / field.p()) as u128;
    let mut coeffs = Vec::new();
    for i in (0..f.coeffs().len()).step_by(p) {
        coeffs.push(field.pow(f.coeff(i), root_exp));
    }
    Poly::new(field.clone(), coeffs)
}

/// Factor a monic squarefree polynomial with separable factors.
fn factor_squarefree(f: &Poly) -> Vec<Poly> {
    let field = f.field().clone();
    let mut out = Vec::new();
    let mut v = f.clone();
    if v.degree().map_or(true, |d| d == 0) {
        return out;
    }
    let x = Poly::var(&field);
    let q = field.q() as u128;
    let mut h = x.pow_mod(q, &v);
    let mut d = 1usize;
    while 2 * d <= v.degree().unwrap_or(0) {
        let g = h.sub(&x).gcd(&v);
        if g.degree().map_or(false, |dg| dg > 0) {
            out.extend(equal_degree_split(&g, d));
            v = v.div_exact(&g);
            if v.degree().map_or(true, |dv| dv == 0) {
                break;
            }
            h = h.rem(&v);
        }
        if 2 * (d + 1) > v.degree().unwrap_or(0) {
            break;
        }
        h = h.pow_mod(q, &v);
        d += 1;
    }
    if v.degree().map_or(false, |dv| dv > 0) {
        out.push(v);
    }
    out
}

/// Equal-degree factorization (Cantor-Zassenhaus). `f` is monic squarefree,
/// a product of irreducibles all of degree d.
fn equal_degree_split(f: &Poly, d: usize) -> Vec<Poly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xffd1_0001);
    let mut stack = vec![f.clone()];
    let mut out = Vec::new();
    while let Some(g) = stack.pop() {
        let dg = g.degree().unwrap();
        if dg == d {
            out.push(g);
            continue;
        }
        loop {
            if let Some((a, b)) = try_split(&g, d, &mut rng) {
                stack.push(a);
                stack.push(b);
                break;
            }
        }
    }
    out.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    out
}

fn try_split<R: Rng>(g: &Poly, d: usize, rng: &mut R) -> Option<(Poly, Poly)> {
    let field = g.field().clone();
    let n = g.degree().unwrap();
    let a = Poly::random_up_to(&field, n - 1, rng);
    if a.degree().map_or(true, |da| da == 0) {
        return None;
    }
    let c = a.gcd(g);
    if c.degree().map_or(false, |dc| dc > 0 && dc < n) {
        let other = g.div_exact(&c);
        return Some((c, other));
    }
    if field.p() > 2 {
        let qd = (field.q() as u128).checked_pow(d as u32)?;
        let e = (qd - 1) / 2;
        let b = a.pow_mod(e, g);
        let bm1 = b.sub(&Poly::one(&field));
        let c = bm1.gcd(g);
        if c.degree().map_or(false, |dc| dc > 0 && dc < n) {
            let other = g.div_exact(&c);
            return Some((c, other));
        }
    } else {
        // char 2: trace map
        let kd = (field.ext_deg() * d) as u32;
        let mut tr = a.rem(g);
        let mut cur = a.rem(g);
        for _ in 1..kd {
            cur = cur.mul(&cur).rem(g);
            tr = tr.add(&cur);
        }
        let c = tr.gcd(g);
        if c.degree().map_or(false, |dc| dc > 0 && dc < n) {
            let other = g.div_exact(&c);
            return Some((c, other));
        }
    }
    None
}

/// Irreducibility test: x^(q^n) = x mod f and gcd(x^(q^(n/l)) - x, f) = 1
/// for every prime l | n.
pub fn is_irreducible(f: &Poly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let field = f.field().clone();
    let q = field.q() as u128;
    let x = Poly::var(&field);
    let qn = match q.checked_pow(n as u32) {
        Some(v) => v,
        None => {
            // fall back to iterated q-powering
            let mut h = x.clone();
            for _ in 0..n {
                h = h.pow_mod(q, f);
            }
            if !h.sub(&x).rem(f).is_zero() {
                return false;
            }
            return prime_divisor_checks(f, n);
        }
    };
    let h = x.pow_mod(qn, f);
    if !h.sub(&x).rem(f).is_zero() {
        return false;
    }
    prime_divisor_checks(f, n)
}

fn prime_divisor_checks(f: &Poly, n: usize) -> bool {
    let field = f.field().clone();
    let q = field.q() as u128;
    let x = Poly::var(&field);
    for l in prime_divisors(n) {
        let m = n / l;
        let h = match q.checked_pow(m as u32) {
            Some(e) => x.pow_mod(e, f),
            None => {
                let mut h = x.clone();
                for _ in 0..m {
                    h = h.pow_mod(q, f);
                }
                h
            }
        };
        if h.sub(&x).gcd(f).degree() != Some(0) {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = vec![];
    let mut l = 2;
    while l * l <= n {
        if n % l == 0 {
            out.push(l);
            while n % l == 0 {
                n /= l;
            }
        }
        l += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Roots in F_q with multiplicities.
pub fn roots(f: &Poly) -> Vec<(Fq, u32)> {
    let field = f.field().clone();
    let mut out = Vec::new();
    for (u, e) in factor(f) {
        if u.degree() == Some(1) {
            // u = x + c, root = -c
            let root = field.neg(u.coeff(0));
            out.push((root, e));
        }
    }
    out
}

/// Deterministic search for a monic irreducible of degree n over `field`.
pub fn irreducible_of_degree(field: &Field, n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(Error::InvalidInput("degree 0".into()));
    }
    if n == 1 {
        return Ok(Poly::var(field));
    }
    let q = field.q() as u128;
    let bound = q
        .checked_pow(n as u32)
        .ok_or_else(|| Error::LimitExceeded("irreducible search space".into()))?;
    let mut c: u128 = 0;
    while c < bound {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut cc = c;
        for _ in 0..n {
            coeffs.push(Fq((cc % q) as u64));
            cc /= q;
        }
        coeffs.push(Fq(1));
        let cand = Poly::new(field.clone(), coeffs);
        if is_irreducible(&cand) {
            return Ok(cand);
        }
        c += 1;
    }
    Err(Error::LimitExceeded("no irreducible found".into()))
}

/// One root of a polynomial known to split into linear factors over `field`
/// (used for embedding construction). Deterministic.
pub fn any_root(f: &Poly) -> Option<Fq> {
    let field = f.field().clone();
    // small fields: direct scan is predictable and cheap
    if field.q() <= 4096 {
        for x in field.elements() {
            if field.is_zero(f.eval(x)) {
                return Some(x);
            }
        }
        return None;
    }
    roots(f).first().map(|(r, _)| *r)
}
