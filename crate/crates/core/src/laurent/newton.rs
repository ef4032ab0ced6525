//! Newton-polygon expansion of the roots of a z-polynomial over K in the
//! completion at infinity, with constant-field extension and ramification
//! handled exactly. Regular branches are finished by Newton iteration with a
//! measured convergence certificate; inseparable and wild cases are flagged.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::ffcore::embed::FieldEmbedding;
use crate::ffcore::factor;
use crate::ffcore::field::{Field, Fq};
use crate::ffcore::kpoly::KPoly;
use crate::ffcore::poly::Poly;
use crate::ffcore::ratfunc::RatFunc;

use super::series::{ratfunc_to_series, LaurentSeries, PREC_EXACT};

/// Limits for the expansion; beyond them the recursion reports
/// `WildUnsupported` rather than looping.
#[derive(Clone, Debug)]
pub struct NpConfig {
    pub depth_cap: usize,
    pub ram_cap: u32,
    pub work_prec: i64,
    pub retries: u32,
}

impl Default for NpConfig {
    fn default() -> Self {
        NpConfig {
            depth_cap: 64,
            ram_cap: 32,
            work_prec: 64,
            retries: 5,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootFlags {
    /// Ramification divisible by p, or an inseparable defining polynomial:
    /// uniqueness of the continuation is not guaranteed.
    pub inseparable: bool,
    /// Caps were reached while expanding this branch.
    pub wild: bool,
}

/// One series embedding of a root at the place at infinity.
#[derive(Clone, Debug)]
pub struct PuiseuxRoot {
    pub series: LaurentSeries,
    /// Ramification of the substitution t = s^ram used by this embedding.
    pub ram: u32,
    pub flags: RootFlags,
    /// Agreement with a true root is certified below this u-exponent;
    /// `PREC_EXACT` for terminating exact roots.
    pub certified_prec: i64,
    /// Embedding of the base constant field into the series' field,
    /// consistent with how the branch was constructed.
    pub emb: FieldEmbedding,
}

struct Branch {
    field: Field,
    emb: FieldEmbedding, // base -> field, composed along the chain
    ram: u32,
    partial: LaurentSeries,
    /// exponent of the last appended term on the current lattice; the next
    /// term must have a strictly larger exponent
    min_exp: Option<i64>,
    depth: usize,
    flags: RootFlags,
    /// number of roots this branch is responsible for
    owned: usize,
    /// finished: series is final (exact root or Newton-refined)
    finished: bool,
    certified: i64,
}

/// All series embeddings of roots of `g` at infinity, to `prec` powers of
/// 1/t, conjugate embeddings materialized separately.
pub fn newton_puiseux_roots(g: &KPoly, prec: i64, cfg: &NpConfig) -> Result<Vec<PuiseuxRoot>> {
    let (roots, unreachable) = newton_puiseux_roots_partial(g, prec, cfg)?;
    if unreachable > 0 {
        return Err(Error::WildUnsupported);
    }
    Ok(roots)
}

/// Like [`newton_puiseux_roots`] but branches that exceed the wildness caps
/// are dropped and counted instead of failing the whole call.
pub fn newton_puiseux_roots_partial(
    g: &KPoly,
    prec: i64,
    cfg: &NpConfig,
) -> Result<(Vec<PuiseuxRoot>, usize)> {
    let n = match g.degree() {
        None | Some(0) => return Ok((vec![], 0)),
        Some(n) => n,
    };
    let gp = g.derivative_z();
    if gp.is_zero() {
        return inseparable_roots(g, prec, cfg);
    }
    if g.gcd(&gp).degree() != Some(0) {
        return Err(Error::NotSquarefree);
    }
    if n == 1 {
        let root = g.coeff(0).neg().div(&g.coeff(1))?;
        let base = g.field();
        let emb = FieldEmbedding::identity(base);
        let s = ratfunc_to_series(&root, &emb, 1, prec)?;
        let certified = s.prec();
        return Ok((
            vec![PuiseuxRoot {
                series: s,
                ram: 1,
                flags: RootFlags::default(),
                certified_prec: certified,
                emb,
            }],
            0,
        ));
    }

    let mut work = cfg.work_prec.max(prec / 8 + 16);
    let mut last_err = Error::WildUnsupported;
    for _ in 0..=cfg.retries {
        let mut unreachable = 0usize;
        match expand_all(g, prec, work, cfg, &mut unreachable) {
            Ok(branches) => {
                let mut out = Vec::new();
                for b in branches {
                    out.extend(materialize(b, prec)?);
                }
                dedupe(&mut out);
                if out.len() > n {
                    return Err(Error::LimitExceeded(format!(
                        "{} series for a degree-{} polynomial",
                        out.len(),
                        n
                    )));
                }
                return Ok((out, unreachable));
            }
            Err(Error::PrecisionExhausted) => {
                last_err = Error::PrecisionExhausted;
                work *= 2;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err)
}

/// Handle d/dz g = 0: g(z) = h(z^p); roots are p-th roots of the roots of h.
fn inseparable_roots(g: &KPoly, prec: i64, cfg: &NpConfig) -> Result<(Vec<PuiseuxRoot>, usize)> {
    let field = g.field().clone();
    let p = field.p() as usize;
    let mut h_coeffs = Vec::new();
    for i in (0..g.coeffs().len()).step_by(p) {
        h_coeffs.push(g.coeff(i));
    }
    let h = KPoly::new(field.clone(), h_coeffs);
    if kpoly_is_pth_power(g) {
        return Err(Error::NotSquarefree);
    }
    let (sub, mut unreachable) =
        newton_puiseux_roots_partial(&h, prec.saturating_mul(p as i64), cfg)?;
    let mut out = Vec::new();
    for r in sub {
        let new_ram = r.series.ram() * p as u32;
        if new_ram > cfg.ram_cap {
            unreachable += 1;
            continue;
        }
        let series = series_pth_root(&r.series);
        let certified = if r.certified_prec >= PREC_EXACT {
            PREC_EXACT
        } else {
            series.prec()
        };
        out.push(PuiseuxRoot {
            series,
            ram: new_ram,
            flags: RootFlags {
                inseparable: true,
                wild: r.flags.wild,
            },
            certified_prec: certified,
            emb: r.emb,
        });
    }
    Ok((out, unreachable))
}

/// p-th root of a series: same exponent keys on a lattice p times finer,
/// coefficients replaced by their p-th roots (F_q is perfect).
fn series_pth_root(s: &LaurentSeries) -> LaurentSeries {
    let f = s.field().clone();
    let root_exp = (f.q() / f.p()) as u128;
    let terms: Vec<(i64, Fq)> = s.terms().map(|(n, c)| (n, f.pow(c, root_exp))).collect();
    LaurentSeries::from_terms(&f, s.ram() * f.p() as u32, terms, s.prec(), s.is_exact())
}

fn kpoly_is_pth_power(g: &KPoly) -> bool {
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

fn convert_kpoly(
    g: &KPoly,
    emb: &FieldEmbedding,
    ram: u32,
    prec: i64,
) -> Result<Vec<LaurentSeries>> {
    g.coeffs()
        .iter()
        .map(|c| ratfunc_to_series(c, emb, ram, prec))
        .collect()
}

fn eval_series_poly(coeffs: &[LaurentSeries], x: &LaurentSeries) -> LaurentSeries {
    let mut acc = LaurentSeries::exact_zero(x.field(), x.ram());
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Coefficients of P(x + y) as a polynomial in y, by repeated synthetic
/// evaluation (Horner shift).
fn taylor_shift(coeffs: &[LaurentSeries], x: &LaurentSeries) -> Vec<LaurentSeries> {
    let n = coeffs.len();
    let mut a: Vec<LaurentSeries> = coeffs.to_vec();
    if n <= 1 {
        return a;
    }
    for k in 0..n - 1 {
        for j in (k..n - 1).rev() {
            a[j] = a[j].add(&x.mul(&a[j + 1]));
        }
    }
    a
}

fn expand_all(
    g: &KPoly,
    prec: i64,
    work: i64,
    cfg: &NpConfig,
    unreachable: &mut usize,
) -> Result<Vec<Branch>> {
    let base = g.field().clone();
    let emb = FieldEmbedding::identity(&base);
    let root_branch = Branch {
        field: base.clone(),
        emb,
        ram: 1,
        partial: LaurentSeries::exact_zero(&base, 1),
        min_exp: None,
        depth: 0,
        flags: RootFlags::default(),
        owned: g.degree().unwrap_or(0),
        finished: false,
        certified: 0,
    };
    let mut done = Vec::new();
    let mut stack = vec![root_branch];
    while let Some(b) = stack.pop() {
        if b.depth > cfg.depth_cap {
            *unreachable += 1;
            continue;
        }
        step(g, b, prec, work, cfg, &mut stack, &mut done, unreachable)?;
    }
    Ok(done)
}

/// One expansion step for a branch.
#[allow(clippy::too_many_arguments)]
fn step(
    g: &KPoly,
    b: Branch,
    prec: i64,
    work: i64,
    cfg: &NpConfig,
    stack: &mut Vec<Branch>,
    done: &mut Vec<Branch>,
    unreachable: &mut usize,
) -> Result<()> {
    let e = b.ram;
    let lead_mag = b.partial.lead().map_or(0, |l| l.min(0).abs());
    let n = g.degree().unwrap() as i64;
    let work_u = work
        .saturating_mul(e as i64)
        .saturating_add(n.saturating_mul(lead_mag))
        .saturating_add(4);
    let gc = convert_kpoly(g, &b.emb, e, work_u)?;

    let shifted = taylor_shift(&gc, &b.partial);
    let res = &shifted[0];
    let der = shifted.get(1);

    let mut remaining = b.owned;
    if res.is_exactly_zero() {
        // the partial sum is an exact root; other edge roots continue below
        done.push(Branch {
            field: b.field.clone(),
            emb: b.emb.clone(),
            ram: b.ram,
            partial: b.partial.clone(),
            min_exp: b.min_exp,
            depth: b.depth,
            flags: b.flags.clone(),
            owned: 1,
            finished: true,
            certified: PREC_EXACT,
        });
        remaining -= 1;
        if remaining == 0 {
            return Ok(());
        }
    } else if b.owned == 1 {
        if let Some(kappa) = der.and_then(|d| d.ord()) {
            let rho = res.ord_lower_bound();
            if rho > 2 * kappa {
                // Newton basin reached: exactly one root continues this branch
                let target_u = prec.saturating_mul(e as i64);
                let (series, certified) =
                    newton_finish(g, &b.emb, &b.field, e, &b.partial, kappa, target_u)?;
                done.push(Branch {
                    field: b.field.clone(),
                    emb: b.emb.clone(),
                    ram: b.ram,
                    partial: series,
                    min_exp: b.min_exp,
                    depth: b.depth,
                    flags: b.flags.clone(),
                    owned: 1,
                    finished: true,
                    certified,
                });
                return Ok(());
            }
        }
    }

    // Newton polygon over the visible points
    let mut pts: Vec<(i64, i64)> = Vec::new();
    for (i, c) in shifted.iter().enumerate() {
        if let Some(v) = c.ord() {
            pts.push((i as i64, v));
        }
    }
    if pts.len() < 2 {
        return Err(Error::PrecisionExhausted);
    }
    let hull = lower_hull(&pts);
    // precision safety: coefficients with unknown ord must lie above the hull
    for (i, c) in shifted.iter().enumerate() {
        if c.ord().is_none() && !c.is_exactly_zero() {
            if let Some(line) = hull_value(&hull, i as i64) {
                if c.prec() <= line {
                    return Err(Error::PrecisionExhausted);
                }
            }
        }
    }

    for w in hull.windows(2) {
        let (i1, v1) = w[0];
        let (i2, v2) = w[1];
        let num = v1 - v2;
        let den = i2 - i1;
        let gdiv = gcd_i64(num, den);
        let (a, bb) = (num / gdiv, den / gdiv); // slope mu = a/bb, bb >= 1
        if let Some(min_exp) = b.min_exp {
            if Rational64::new(a, bb) <= Rational64::from_integer(min_exp) {
                continue;
            }
        }
        let ram_mult = bb as u32;
        let new_ram = b.ram * ram_mult;
        if new_ram > cfg.ram_cap {
            *unreachable += 1;
            continue;
        }
        // mu on the new lattice: (a/bb) * ram_mult = a
        let mu_on_new_lattice = a;
        // edge polynomial over the current constant field
        let mut edge_coeffs: Vec<Fq> = Vec::with_capacity((i2 - i1 + 1) as usize);
        for i in i1..=i2 {
            let numer = v1 * bb - (i - i1) * a;
            if numer % bb != 0 {
                edge_coeffs.push(Fq(0));
                continue;
            }
            let v = numer / bb;
            edge_coeffs.push(shifted[i as usize].coeff(v));
        }
        let edge_poly = Poly::new(b.field.clone(), edge_coeffs);
        debug_assert!(edge_poly.coeff(0) != Fq(0));

        for (root_field, step_emb, root, mult) in edge_roots(&edge_poly, &b.field)? {
            let emb2 = compose_embeddings(&b.emb, &step_emb)?;
            let mut partial = b.partial.clone();
            if ram_mult > 1 {
                partial = partial.ramify(ram_mult);
            }
            if root_field != b.field {
                partial = partial.embed(&step_emb);
            }
            let term = LaurentSeries::monomial(&root_field, new_ram, root, mu_on_new_lattice);
            let partial = partial.add(&term);
            let mut flags = b.flags.clone();
            if ram_mult as u64 % b.field.p() == 0 && ram_mult > 1 {
                flags.inseparable = true;
            }
            stack.push(Branch {
                field: root_field,
                emb: emb2,
                ram: new_ram,
                partial,
                min_exp: Some(mu_on_new_lattice),
                depth: b.depth + 1,
                flags,
                owned: mult as usize,
                finished: false,
                certified: 0,
            });
        }
    }
    Ok(())
}

/// Newton iteration with measured certificates. Returns the refined series
/// and the certified agreement exponent (u-units).
fn newton_finish(
    g: &KPoly,
    emb: &FieldEmbedding,
    field: &Field,
    ram: u32,
    start: &LaurentSeries,
    kappa0: i64,
    target_u: i64,
) -> Result<(LaurentSeries, i64)> {
    let n = g.degree().unwrap() as i64;
    let lead_mag = start.lead().map_or(0, |l| l.min(0).abs());
    let conv_prec = target_u
        .saturating_add(kappa0.abs())
        .saturating_add(n.saturating_mul(lead_mag))
        .saturating_add(16);
    let gc = convert_kpoly(g, emb, ram, conv_prec)?;
    let gpc = derivative_series_poly(&gc, field);

    // claimed working window; actual certification is measured from residuals
    let window = target_u.saturating_add(kappa0.abs()).saturating_add(8);
    let mut x = start.with_prec(window);
    let mut best_rho = i64::MIN;
    for _ in 0..96 {
        let res = eval_series_poly(&gc, &x);
        let der = eval_series_poly(&gpc, &x);
        let kappa = match der.ord() {
            Some(k) => k,
            None => return Err(Error::PrecisionExhausted),
        };
        let rho = res.ord_lower_bound();
        if res.is_exactly_zero() {
            return Ok((x.clone(), PREC_EXACT));
        }
        if rho >= target_u.saturating_add(kappa) {
            let certified = (rho - kappa).min(window);
            return Ok((
                x.with_prec(certified.min(target_u)),
                certified.min(target_u),
            ));
        }
        if rho <= best_rho {
            // no progress: the working precision is the bottleneck
            return Err(Error::PrecisionExhausted);
        }
        best_rho = rho;
        let delta = res.div_to(&der, window)?;
        x = x.sub(&delta).with_prec(window);
    }
    Err(Error::PrecisionExhausted)
}

fn derivative_series_poly(coeffs: &[LaurentSeries], field: &Field) -> Vec<LaurentSeries> {
    let mut out = Vec::new();
    for i in 1..coeffs.len() {
        out.push(coeffs[i].scale(field.from_int(i as i64)));
    }
    out
}

/// Roots of an edge polynomial over `field`, over extensions as needed.
/// Only nonzero roots are returned, one per Galois orbit over `field`,
/// together with their multiplicity in the edge polynomial.
fn edge_roots(e: &Poly, field: &Field) -> Result<Vec<(Field, FieldEmbedding, Fq, u32)>> {
    let mut out = Vec::new();
    for (u, mult) in factor::factor(e) {
        match u.degree() {
            Some(1) => {
                let root = field.neg(u.coeff(0));
                if !field.is_zero(root) {
                    out.push((field.clone(), FieldEmbedding::identity(field), root, mult));
                }
            }
            Some(d) if d >= 2 => {
                let bigger = field.extension_field(d)?;
                let emb = FieldEmbedding::new(field, &bigger)?;
                let lifted = emb.apply_poly(&u);
                let root = factor::any_root(&lifted).ok_or(Error::EmbeddingUnavailable)?;
                out.push((bigger, emb, root, mult));
            }
            _ => {}
        }
    }
    Ok(out)
}

fn compose_embeddings(first: &FieldEmbedding, second: &FieldEmbedding) -> Result<FieldEmbedding> {
    if second.from_field() == second.to_field() {
        return Ok(first.clone());
    }
    Ok(first.compose(second))
}

fn lower_hull(pts: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) * (p.1 - a.1) - (p.0 - a.0) * (b.1 - a.1);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

fn hull_value(hull: &[(i64, i64)], x: i64) -> Option<i64> {
    for w in hull.windows(2) {
        let (x1, y1) = w[0];
        let (x2, y2) = w[1];
        if x1 <= x && x <= x2 {
            let num = y1 * (x2 - x1) + (y2 - y1) * (x - x1);
            return Some(num.div_euclid(x2 - x1));
        }
    }
    None
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a.max(1)
}

/// Materialize the distinct conjugate embeddings of a finished branch:
/// coefficient-Frobenius orbits and tame twists u -> zeta u.
fn materialize(b: Branch, prec: i64) -> Result<Vec<PuiseuxRoot>> {
    debug_assert!(b.finished);
    let base = b.emb.from_field().clone();
    let mut series = b.partial.clone();
    let min_ram = series.minimal_ram();
    if min_ram < series.ram() {
        if let Some(s) = series.try_unramify(series.ram() / min_ram) {
            series = s;
        }
    }
    let e = series.ram();
    let target_u = prec.saturating_mul(e as i64);
    let certified = if b.certified >= PREC_EXACT {
        PREC_EXACT
    } else {
        // certified exponent was measured on the branch lattice; rescale
        (b.certified * e as i64 / b.ram as i64).min(target_u)
    };
    if !series.is_exact() {
        series = series.truncate(target_u.min(series.prec()));
    }

    let p = base.p();
    let mut tame = e as u64;
    while tame % p == 0 {
        tame /= p;
    }

    let lf = series.field().clone();
    let (big, ls_emb) = if tame > 1 {
        let mut j = 1usize;
        while (pow_u128(lf.q() as u128, j) - 1) % tame as u128 != 0 {
            j += 1;
            if j > 16 {
                return Err(Error::LimitExceeded("roots of unity search".into()));
            }
        }
        if j == 1 {
            (lf.clone(), FieldEmbedding::identity(&lf))
        } else {
            let big = lf.extension_field(j)?;
            let emb = FieldEmbedding::new(&lf, &big)?;
            (big, emb)
        }
    } else {
        (lf.clone(), FieldEmbedding::identity(&lf))
    };

    let s_big = if big == lf {
        series.clone()
    } else {
        series.embed(&ls_emb)
    };
    let emb_base_big = if big == lf {
        b.emb.clone()
    } else {
        b.emb.compose(&ls_emb)
    };
    let zeta = if tame > 1 {
        Some(element_of_order(&big, tame)?)
    } else {
        None
    };

    let kq = base.ext_deg() as u32;
    let frel = big.ext_deg() / base.ext_deg();
    let mut out: Vec<PuiseuxRoot> = Vec::new();
    for j in 0..frel.max(1) {
        let sj = s_big.frobenius_coeffs(kq * j as u32);
        let twists: Vec<LaurentSeries> = match &zeta {
            None => vec![sj],
            Some(z) => {
                let mut v = Vec::new();
                let mut zp = big.one();
                for _ in 0..tame {
                    v.push(sj.twist(zp));
                    zp = big.mul(zp, *z);
                }
                v
            }
        };
        for tw in twists {
            out.push(PuiseuxRoot {
                series: tw,
                ram: e,
                flags: b.flags.clone(),
                certified_prec: certified,
                emb: emb_base_big.clone(),
            });
        }
    }
    Ok(out)
}

fn pow_u128(b: u128, e: usize) -> u128 {
    let mut acc = 1u128;
    for _ in 0..e {
        acc = acc.saturating_mul(b);
    }
    acc
}

fn element_of_order(field: &Field, order: u64) -> Result<Fq> {
    let q1 = field.q() - 1;
    if q1 % order != 0 {
        return Err(Error::LimitExceeded("order does not divide q - 1".into()));
    }
    let cof = (q1 / order) as u128;
    for x in field.elements().skip(1) {
        let y = field.pow(x, cof);
        if y == field.one() {
            continue;
        }
        let mut ok = true;
        for l in prime_divisors_u64(order) {
            if field.pow(y, (order / l) as u128) == field.one() {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(y);
        }
    }
    Err(Error::LimitExceeded("no element of requested order".into()))
}

fn prime_divisors_u64(mut n: u64) -> Vec<u64> {
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

fn dedupe(roots: &mut Vec<PuiseuxRoot>) {
    let mut i = 0;
    while i < roots.len() {
        let mut j = i + 1;
        while j < roots.len() {
            let a = &roots[i];
            let b = &roots[j];
            if a.series.ram() == b.series.ram()
                && a.series.field() == b.series.field()
                && a.series.agrees_with(&b.series, PREC_EXACT)
            {
                roots.remove(j);
            } else {
                j += 1;
            }
        }
        i += 1;
    }
}

/// Verify a computed root by back-substitution: the residual must vanish to
/// the series' precision.
pub fn verify_root(g: &KPoly, root: &PuiseuxRoot) -> Result<bool> {
    let res = super::series::eval_kpoly_at_series(g, &root.series, &root.emb)?;
    if res.is_exactly_zero() {
        return Ok(true);
    }
    Ok(res.ord().is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }
    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn t_rf(field: &Field) -> RatFunc {
        RatFunc::var(field)
    }

    #[test]
    fn square_root_of_t() {
        // z^2 - t: two series +-t^(1/2), ram 2
        let f = f5();
        let g = KPoly::new(
            f.clone(),
            vec![t_rf(&f).neg(), RatFunc::zero(&f), RatFunc::one(&f)],
        );
        let roots = newton_puiseux_roots(&g, 10, &NpConfig::default()).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert_eq!(r.ram, 2);
            assert!(!r.flags.inseparable);
            assert_eq!(r.series.num_terms(), 1);
            let (n, c) = r.series.terms().next().unwrap();
            assert_eq!(n, -1);
            assert_eq!(f.mul(c, c), f.one());
            assert!(verify_root(&g, r).unwrap());
        }
        let (_, c0) = roots[0].series.terms().next().unwrap();
        let (_, c1) = roots[1].series.terms().next().unwrap();
        assert_eq!(f.add(c0, c1), f.zero());
    }

    #[test]
    fn binomial_square_root_series() {
        // z^2 - (1 + 1/t) over F_3: 1 + 2u + u^2 + ... and its negative
        let f = f3();
        let u = RatFunc::new(Poly::from_ints(&f, &[1, 1]), Poly::var(&f)).unwrap();
        let g = KPoly::new(
            f.clone(),
            vec![u.neg(), RatFunc::zero(&f), RatFunc::one(&f)],
        );
        let roots = newton_puiseux_roots(&g, 8, &NpConfig::default()).unwrap();
        assert_eq!(roots.len(), 2);
        let plus = roots
            .iter()
            .find(|r| r.series.coeff(0) == f.one())
            .expect("root with constant term 1");
        assert_eq!(plus.ram, 1);
        assert_eq!(plus.series.coeff(1), f.from_int(2));
        assert_eq!(plus.series.coeff(2), f.one());
        // verified by squaring: series^2 = 1 + u to precision
        let sq = plus.series.mul(&plus.series);
        assert_eq!(sq.coeff(0), f.one());
        assert_eq!(sq.coeff(1), f.one());
        for n in 2..sq.prec() {
            assert_eq!(sq.coeff(n), f.zero(), "term u^{n} should vanish");
        }
        for r in &roots {
            assert!(verify_root(&g, r).unwrap());
        }
    }

    #[test]
    fn artin_schreier_tower_of_five() {
        // z^5 - z - 1/t over F_5: five unramified series c + 4*(u + u^5 + u^25)
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
        let roots = newton_puiseux_roots(&g, 30, &NpConfig::default()).unwrap();
        assert_eq!(roots.len(), 5);
        let mut constants: Vec<u64> = Vec::new();
        for r in &roots {
            assert_eq!(r.ram, 1);
            constants.push(r.series.coeff(0).0);
            for n in 1..30 {
                let expect = if n == 1 || n == 5 || n == 25 {
                    f.from_int(4)
                } else {
                    f.zero()
                };
                assert_eq!(r.series.coeff(n), expect, "exponent {n}");
            }
            assert!(verify_root(&g, r).unwrap());
        }
        constants.sort_unstable();
        assert_eq!(constants, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn constant_field_extension_branch() {
        // z^2 - 2 over F_5: roots in F_25, constant series
        let f = f5();
        let g = KPoly::new(
            f.clone(),
            vec![
                RatFunc::from_int(&f, -2),
                RatFunc::zero(&f),
                RatFunc::one(&f),
            ],
        );
        let roots = newton_puiseux_roots(&g, 10, &NpConfig::default()).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert_eq!(r.series.field().q(), 25);
            assert!(r.series.is_constant_to_prec());
            let c = r.series.coeff(0);
            let sq = r.series.field().mul(c, c);
            assert_eq!(sq, r.series.field().from_int(2));
            assert!(verify_root(&g, r).unwrap());
        }
    }

    #[test]
    fn mixed_rational_and_irrational_roots() {
        // (z - t)(z^2 - t) : three roots, one exact rational
        let f = f5();
        let zt = KPoly::new(f.clone(), vec![t_rf(&f).neg(), RatFunc::one(&f)]);
        let z2t = KPoly::new(
            f.clone(),
            vec![t_rf(&f).neg(), RatFunc::zero(&f), RatFunc::one(&f)],
        );
        let g = zt.mul(&z2t);
        let roots = newton_puiseux_roots(&g, 12, &NpConfig::default()).unwrap();
        assert_eq!(roots.len(), 3);
        let rational: Vec<_> = roots.iter().filter(|r| r.ram == 1).collect();
        assert_eq!(rational.len(), 1);
        assert!(rational[0].series.is_exact());
        for r in &roots {
            assert!(verify_root(&g, r).unwrap());
        }
    }

    #[test]
    fn wild_ramification_is_reported() {
        // z^5 - z - t over F_5 needs unbounded ramification
        let f = f5();
        let g = KPoly::new(
            f.clone(),
            vec![
                t_rf(&f).neg(),
                RatFunc::from_int(&f, -1),
                RatFunc::zero(&f),
                RatFunc::zero(&f),
                RatFunc::zero(&f),
                RatFunc::one(&f),
            ],
        );
        let err = newton_puiseux_roots(&g, 10, &NpConfig::default()).unwrap_err();
        assert_eq!(err, Error::WildUnsupported);
    }

    #[test]
    fn pth_root_inseparable_branch() {
        // z^5 - t: inseparable, single series t^(1/5) with ram 5
        let f = f5();
        let g = KPoly::new(
            f.clone(),
            vec![
                t_rf(&f).neg(),
                RatFunc::zero(&f),
                RatFunc::zero(&f),
                RatFunc::zero(&f),
                RatFunc::zero(&f),
                RatFunc::one(&f),
            ],
        );
        let roots = newton_puiseux_roots(&g, 10, &NpConfig::default()).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].ram, 5);
        assert!(roots[0].flags.inseparable);
        assert!(roots[0].series.is_exact());
    }

    #[test]
    fn repeated_factor_rejected() {
        let f = f5();
        let zt = KPoly::new(f.clone(), vec![t_rf(&f).neg(), RatFunc::one(&f)]);
        let g = zt.mul(&zt);
        assert_eq!(
            newton_puiseux_roots(&g, 10, &NpConfig::default()).unwrap_err(),
            Error::NotSquarefree
        );
    }

    #[test]
    fn deep_precision_refinement() {
        // the binomial square root refined to 200 terms stays verified
        let f = f3();
        let u = RatFunc::new(Poly::from_ints(&f, &[1, 1]), Poly::var(&f)).unwrap();
        let g = KPoly::new(
            f.clone(),
            vec![u.neg(), RatFunc::zero(&f), RatFunc::one(&f)],
        );
        let roots = newton_puiseux_roots(&g, 200, &NpConfig::default()).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(r.certified_prec >= 200);
            assert!(verify_root(&g, r).unwrap());
            let sq = r.series.mul(&r.series);
            assert_eq!(sq.coeff(0), f.one());
            assert_eq!(sq.coeff(1), f.one());
            assert_eq!(sq.terms().filter(|&(n, _)| n > 1).count(), 0);
        }
    }
}
