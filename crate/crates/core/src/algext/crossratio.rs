//! Exact constancy tests for cross-ratios of four roots of a squarefree
//! polynomial, via certified series embeddings. Constancy means lying in the
//! algebraic closure of the constant field.

use crate::error::{Error, Result};
use crate::ffcore::embed::FieldEmbedding;
use crate::ffcore::factor;
use crate::ffcore::field::{Field, Fq};
use crate::ffcore::kpoly::KPoly;
use crate::laurent::newton::{newton_puiseux_roots, NpConfig, PuiseuxRoot};
use crate::laurent::reconstruct::minpoly_reconstruct;
use crate::laurent::series::LaurentSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstancyStatus {
    Constant,
    Nonconstant,
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct ConstancyVerdict {
    pub status: ConstancyStatus,
    /// For exact constants: the value and its field.
    pub constant_value: Option<(Field, Fq)>,
    /// Reconstructed minimal polynomial of the cross-ratio over K, when the
    /// reconstruction succeeded within its bounds.
    pub certificate: Option<KPoly>,
    /// Series precision the computation was certified to (u-units of the
    /// common lattice); `PREC_EXACT`-scale for exact verdicts.
    pub series_prec: i64,
}

/// The cross-ratio (a1, a2; a3, a4) = ((a1-a4)(a2-a3)) / ((a1-a3)(a2-a4)) of
/// four labeled roots of `f`, with an exact constancy verdict where the
/// arithmetic supports one.
pub fn cross_ratio_exact(
    f: &KPoly,
    indices: [usize; 4],
    prec: i64,
    cfg: &NpConfig,
) -> Result<ConstancyVerdict> {
    for i in 0..4 {
        for j in i + 1..4 {
            if indices[i] == indices[j] {
                return Err(Error::NotDistinct);
            }
        }
    }
    let roots = newton_puiseux_roots(f, prec, cfg).map_err(|e| match e {
        Error::WildUnsupported => Error::EmbeddingUnavailable,
        other => other,
    })?;
    if indices.iter().any(|&i| i >= roots.len()) {
        return Err(Error::EmbeddingUnavailable);
    }
    let picked: Vec<&PuiseuxRoot> = indices.iter().map(|&i| &roots[i]).collect();
    cross_ratio_of_roots(f, &picked)
}

/// Cross-ratio of four already-computed root embeddings.
pub fn cross_ratio_of_roots(f: &KPoly, picked: &[&PuiseuxRoot]) -> Result<ConstancyVerdict> {
    assert_eq!(picked.len(), 4);
    let base = f.field().clone();
    let (series, common_emb) = align_roots(&base, picked)?;

    let d14 = series[0].sub(&series[3]);
    let d23 = series[1].sub(&series[2]);
    let d13 = series[0].sub(&series[2]);
    let d24 = series[1].sub(&series[3]);
    for d in [&d14, &d23, &d13, &d24] {
        if d.is_exactly_zero() {
            return Err(Error::NotDistinct);
        }
    }
    let num = d14.mul(&d23);
    let den = d13.mul(&d24);

    let all_exact = num.is_exact() && den.is_exact();
    if all_exact {
        // beta constant iff num = c * den as Laurent polynomials in u
        let (ln, ld) = (num.lead().unwrap(), den.lead().unwrap());
        let field = num.field().clone();
        let c = field.div(num.coeff(ln), den.coeff(ld));
        let scaled = den.scale(c);
        if ln == ld && num == scaled {
            return Ok(ConstancyVerdict {
                status: ConstancyStatus::Constant,
                constant_value: Some((field, c)),
                certificate: None,
                series_prec: crate::laurent::series::PREC_EXACT,
            });
        }
        return Ok(ConstancyVerdict {
            status: ConstancyStatus::Nonconstant,
            constant_value: None,
            certificate: reconstruct_certificate(f, &num, &den, &common_emb),
            series_prec: crate::laurent::series::PREC_EXACT,
        });
    }

    // certified-precision series path
    if den.is_zero_to_prec() || num.is_zero_to_prec() {
        return Ok(undetermined(num.prec().min(den.prec())));
    }
    let beta = num.div_to(&den, num.prec().min(den.prec()))?;
    let cert_prec = beta.prec();
    if cert_prec <= beta.ord_lower_bound() {
        return Ok(undetermined(cert_prec));
    }
    let nonconst_term = beta.terms().any(|(n, _)| n != 0);
    let certificate = reconstruct_certificate(f, &num, &den, &common_emb);
    if nonconst_term {
        // a certified nonzero coefficient away from exponent 0: the true
        // cross-ratio cannot be a constant
        return Ok(ConstancyVerdict {
            status: ConstancyStatus::Nonconstant,
            constant_value: None,
            certificate,
            series_prec: cert_prec,
        });
    }
    // constant to precision: only an exact certificate could upgrade this
    if let Some(cert) = &certificate {
        if cert.degree() == Some(1) {
            // beta is certified rational; constant iff the root is constant
            let root = cert.coeff(0).neg().div(&cert.coeff(1))?;
            if root.is_constant() {
                return Ok(ConstancyVerdict {
                    status: ConstancyStatus::Constant,
                    constant_value: root.as_constant().map(|c| (base.clone(), c)),
                    certificate,
                    series_prec: cert_prec,
                });
            }
        }
    }
    Ok(undetermined(cert_prec))
}

fn undetermined(prec: i64) -> ConstancyVerdict {
    ConstancyVerdict {
        status: ConstancyStatus::Undetermined,
        constant_value: None,
        certificate: None,
        series_prec: prec,
    }
}

/// Attempt a certificate: the minimal polynomial of num/den over K. Bounds
/// grow with the degree of f; failure just omits the certificate.
fn reconstruct_certificate(
    f: &KPoly,
    num: &LaurentSeries,
    den: &LaurentSeries,
    emb: &FieldEmbedding,
) -> Option<KPoly> {
    let df = f.degree()?;
    let (_, prim) = f.primitive_part();
    let dt = prim.deg_t().max(1) as usize;
    let mut dz_bound = (df * (df - 1) / 2).clamp(2, 6);
    let mut dt_bound = (4 * dt).clamp(2, 10);
    let want = num.prec().min(den.prec()).min(1 << 16);
    let beta = num.div_to(den, want).ok()?;
    // shrink bounds until the precision window supports them (same formula
    // as the reconstruction guard)
    let e = beta.ram() as i64;
    loop {
        let need = ((dz_bound + 1) * (dt_bound + 1) + dt_bound + 1) as i64;
        let have_v = beta.prec() / e - beta.ord_lower_bound().min(0).abs() * dz_bound as i64;
        if beta.is_exact() || need <= have_v {
            break;
        }
        if dt_bound > 2 {
            dt_bound -= 1;
        } else if dz_bound > 2 {
            dz_bound -= 1;
        } else {
            return None;
        }
    }
    minpoly_reconstruct(&beta, emb, dz_bound, dt_bound)
        .ok()
        .flatten()
}

/// Bring four roots onto a common constant field and common ramification
/// lattice, with embeddings compatible over the base field.
fn align_roots(
    base: &Field,
    picked: &[&PuiseuxRoot],
) -> Result<(Vec<LaurentSeries>, FieldEmbedding)> {
    // common lattice
    let mut e_star = 1u32;
    for r in picked {
        e_star = lcm_u32(e_star, r.series.ram());
    }
    // common constant field
    let mut deg_star = 1usize;
    for r in picked {
        deg_star = lcm_usize(deg_star, r.series.field().ext_deg());
    }
    let big = if deg_star == base.ext_deg() {
        base.clone()
    } else {
        base.extension_field(deg_star / base.ext_deg().max(1))?
    };
    let base_to_big = FieldEmbedding::new(base, &big)?;

    let mut out = Vec::with_capacity(4);
    for r in picked {
        let usable = if !r.series.is_exact() && r.certified_prec < r.series.prec() {
            r.series.truncate(r.certified_prec)
        } else {
            r.series.clone()
        };
        let ramified = usable.ramify(e_star / usable.ram());
        let lf = ramified.field().clone();
        let embedded = if lf == big {
            ramified
        } else {
            let e = compatible_embedding(&lf, &big, &r.emb, &base_to_big)?;
            ramified.embed(&e)
        };
        out.push(embedded);
    }
    Ok((out, base_to_big))
}

/// An embedding from -> to that commutes with the given base embeddings,
/// i.e. maps the image of the base generator in `from` to its image in `to`.
fn compatible_embedding(
    from: &Field,
    to: &Field,
    base_from: &FieldEmbedding,
    base_to: &FieldEmbedding,
) -> Result<FieldEmbedding> {
    if base_from.from_field().ext_deg() == 1 {
        // the prime field embeds canonically; nothing to match
        return FieldEmbedding::new(from, to);
    }
    let modulus = crate::ffcore::poly::Poly::new(
        to.clone(),
        from.modulus()
            .iter()
            .map(|&c| to.from_int(c as i64))
            .collect(),
    );
    let source_gen = base_from.gen_image();
    let target_gen = base_to.gen_image();
    for (root, _) in factor::roots(&modulus) {
        let cand = FieldEmbedding::from_gen_image(from, to, root);
        if cand.apply(source_gen) == target_gen {
            return Ok(cand);
        }
    }
    Err(Error::EmbeddingUnavailable)
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}
fn gcd_u32(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a.max(1)
}
fn lcm_usize(a: usize, b: usize) -> usize {
    a / gcd_usize(a, b) * b
}
fn gcd_usize(a: usize, b: usize) -> usize {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a.max(1)
}
