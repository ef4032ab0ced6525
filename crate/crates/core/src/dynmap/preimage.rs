//! Preimage fibers phi^(-m)(gamma): defining polynomials, field data,
//! ramification, separability, and the conjugate cross-ratio audit.

use crate::algext::crossratio::{cross_ratio_of_roots, ConstancyStatus};
use crate::algext::factor_bivariate;
use crate::error::{Error, Result};
use crate::ffcore::kpoly::KPoly;
use crate::laurent::newton::{newton_puiseux_roots_partial, NpConfig};

use super::map::{ProjPoint, RationalMap};

/// One Galois orbit in the fiber.
#[derive(Clone, Debug)]
pub struct FiberPoint {
    /// None encodes the point at infinity.
    pub minpoly: Option<KPoly>,
    pub degree: usize,
    /// Ramification index of phi^m at every root of this factor.
    pub e: u32,
}

#[derive(Clone, Debug)]
pub struct FiberData {
    pub m: u32,
    /// Defining polynomial of the affine part of the fiber.
    pub defining: KPoly,
    pub points: Vec<FiberPoint>,
    /// gcd(F_m, dF_m/dz) = 1 (with the derivative nonzero): all roots simple.
    pub squarefree: bool,
    /// The z-derivative of F_m vanishes identically.
    pub derivative_vanishes: bool,
}

impl FiberData {
    /// Number of distinct geometric points in the fiber.
    pub fn size(&self) -> usize {
        self.points
            .iter()
            .map(|p| if p.minpoly.is_some() { p.degree } else { 1 })
            .sum()
    }
}

/// The fiber phi^(-m)(gamma) with minimal polynomials, degrees and
/// ramification indices; the sum of e * degree over the fiber equals d^m.
pub fn preimage_field_data(phi: &RationalMap, m: u32, gamma: &ProjPoint) -> Result<FiberData> {
    if m == 0 {
        return Err(Error::InvalidInput("preimage depth must be >= 1".into()));
    }
    let it = phi.iterate(m)?;
    let dm = it.degree() as i64;
    let fm = match gamma {
        ProjPoint::Finite(g) => it.numerator().sub(&it.denominator().scale(g)),
        ProjPoint::Infinity => it.denominator().clone(),
    };
    if fm.is_zero() {
        return Err(Error::InvalidInput("empty fiber polynomial".into()));
    }
    let deg_f = fm.deg_i();
    let mut points = Vec::new();
    let mut total = 0i64;
    for (factor, mult) in factor_bivariate(&fm) {
        let deg = factor.degree().unwrap();
        total += deg as i64 * mult as i64;
        points.push(FiberPoint {
            minpoly: Some(factor),
            degree: deg,
            e: mult,
        });
    }
    if deg_f < dm {
        let e_inf = (dm - deg_f) as u32;
        points.push(FiberPoint {
            minpoly: None,
            degree: 1,
            e: e_inf,
        });
        total += e_inf as i64;
    }
    debug_assert_eq!(total, dm, "fiber degree formula");
    let deriv = fm.derivative_z();
    let derivative_vanishes = deriv.is_zero();
    let squarefree = !derivative_vanishes && fm.gcd(&deriv).degree() == Some(0);
    Ok(FiberData {
        m,
        defining: fm,
        points,
        squarefree,
        derivative_vanishes,
    })
}

/// Per-factor status of the conjugate cross-ratio search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorCrStatus {
    /// d(alpha) <= d^m / 2: the small-degree side of the dichotomy.
    SmallDegree,
    /// d^m/2 < d(alpha) < 4: outside both sides; reported without a verdict.
    OutsideDichotomy,
    NonconstantFound,
    AllConstant,
    Undetermined,
}

/// Per-factor outcome, with the certificate of the first certified
/// non-constant cross-ratio when one was found.
#[derive(Clone, Debug)]
pub struct FactorCrReport {
    pub degree: usize,
    pub status: FactorCrStatus,
    pub certificate: Option<KPoly>,
}

#[derive(Clone, Debug)]
pub struct FiberCrossRatioReport {
    pub m: u32,
    pub fiber_size: usize,
    pub factors: Vec<FactorCrReport>,
}

/// For each irreducible fiber factor of large degree, search quadruples of
/// its conjugate embeddings for a certified non-constant cross-ratio.
pub fn preimage_crossratio_audit(
    phi: &RationalMap,
    gamma: &ProjPoint,
    m: u32,
    prec: i64,
    cfg: &NpConfig,
) -> Result<FiberCrossRatioReport> {
    let fiber = preimage_field_data(phi, m, gamma)?;
    let size = fiber.size();
    if size < 4 {
        return Err(Error::FiberTooSmall(size));
    }
    let dm = (phi.degree() as i64).pow(m);
    let mut factors = Vec::new();
    for p in &fiber.points {
        let minpoly = match &p.minpoly {
            None => continue,
            Some(g) => g,
        };
        let deg = p.degree as i64;
        if 2 * deg <= dm {
            factors.push(FactorCrReport {
                degree: p.degree,
                status: FactorCrStatus::SmallDegree,
                certificate: None,
            });
            continue;
        }
        if deg < 4 {
            factors.push(FactorCrReport {
                degree: p.degree,
                status: FactorCrStatus::OutsideDichotomy,
                certificate: None,
            });
            continue;
        }
        let (status, certificate) = search_factor(minpoly, prec, cfg)?;
        factors.push(FactorCrReport {
            degree: p.degree,
            status,
            certificate,
        });
    }
    Ok(FiberCrossRatioReport {
        m,
        fiber_size: size,
        factors,
    })
}

fn search_factor(g: &KPoly, prec: i64, cfg: &NpConfig) -> Result<(FactorCrStatus, Option<KPoly>)> {
    let (roots, unreachable) = newton_puiseux_roots_partial(g, prec, cfg)?;
    if roots.len() < 4 {
        return Ok((FactorCrStatus::Undetermined, None));
    }
    let mut saw_undetermined = unreachable > 0;
    let n = roots.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let picked = [&roots[a], &roots[b], &roots[c], &roots[d]];
                    match cross_ratio_of_roots(g, &picked) {
                        Ok(v) => match v.status {
                            ConstancyStatus::Nonconstant => {
                                return Ok((FactorCrStatus::NonconstantFound, v.certificate))
                            }
                            ConstancyStatus::Constant => {}
                            ConstancyStatus::Undetermined => saw_undetermined = true,
                        },
                        Err(Error::NotDistinct) => saw_undetermined = true,
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    if saw_undetermined {
        Ok((FactorCrStatus::Undetermined, None))
    } else {
        Ok((FactorCrStatus::AllConstant, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::field::Field;
    use crate::ffcore::ratfunc::RatFunc;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn t(field: &Field) -> RatFunc {
        RatFunc::var(field)
    }

    fn phi_sq_plus_t(field: &Field) -> RationalMap {
        RationalMap::from_polynomial(KPoly::new(
            field.clone(),
            vec![t(field), RatFunc::zero(field), RatFunc::one(field)],
        ))
        .unwrap()
    }

    fn phi_sq(field: &Field) -> RationalMap {
        RationalMap::from_polynomial(KPoly::new(
            field.clone(),
            vec![
                RatFunc::zero(field),
                RatFunc::zero(field),
                RatFunc::one(field),
            ],
        ))
        .unwrap()
    }

    #[test]
    fn simple_fiber_of_quadratic() {
        // phi = z^2 + t, gamma = 0: fiber z^2 + t, irreducible, e = 1
        let f = f5();
        let phi = phi_sq_plus_t(&f);
        let data = preimage_field_data(&phi, 1, &ProjPoint::Finite(RatFunc::zero(&f))).unwrap();
        assert!(data.squarefree);
        assert_eq!(data.points.len(), 1);
        assert_eq!(data.points[0].degree, 2);
        assert_eq!(data.points[0].e, 1);
    }

    #[test]
    fn deeper_fiber_eisenstein() {
        // phi = z^2, gamma = t, m = 2: z^4 - t irreducible
        let f = f5();
        let phi = phi_sq(&f);
        let data = preimage_field_data(&phi, 2, &ProjPoint::Finite(t(&f))).unwrap();
        assert!(data.squarefree);
        assert_eq!(data.points.len(), 1);
        assert_eq!(data.points[0].degree, 4);
        assert_eq!(data.points[0].e, 1);
    }

    #[test]
    fn postcritical_target_gives_non_squarefree_fiber() {
        // phi = z^2 + t, gamma = t = phi(0): F_1 = z^2
        let f = f5();
        let phi = phi_sq_plus_t(&f);
        let data = preimage_field_data(&phi, 1, &ProjPoint::Finite(t(&f))).unwrap();
        assert!(!data.squarefree);
        assert_eq!(data.points.len(), 1);
        assert_eq!(data.points[0].degree, 1);
        assert_eq!(data.points[0].e, 2);
    }

    #[test]
    fn fiber_with_infinity() {
        // phi = z^2: fiber over infinity is {infinity} with e = 2
        let f = f5();
        let phi = phi_sq(&f);
        let data = preimage_field_data(&phi, 1, &ProjPoint::Infinity).unwrap();
        assert_eq!(data.points.len(), 1);
        assert!(data.points[0].minpoly.is_none());
        assert_eq!(data.points[0].e, 2);
    }

    #[test]
    fn quartic_fiber_all_constant_cross_ratios() {
        // phi = z^2, gamma = t, m = 2: fiber z^4 - t; conjugates differ by
        // fourth roots of unity, so every cross-ratio is constant
        let f = f5();
        let phi = phi_sq(&f);
        let rep =
            preimage_crossratio_audit(&phi, &ProjPoint::Finite(t(&f)), 2, 24, &NpConfig::default())
                .unwrap();
        assert_eq!(rep.fiber_size, 4);
        assert_eq!(rep.factors.len(), 1);
        assert_eq!(rep.factors[0].degree, 4);
        assert_eq!(rep.factors[0].status, FactorCrStatus::AllConstant);
    }

    #[test]
    fn depth_two_dichotomy_goldens() {
        // golden values from the audit oracle runs:
        // - the balanced map (z^2+1)/(z^2+t) over gamma = 0 at depth 2
        //   splits into two quadratics, both on the small-degree side;
        // - z^2 + t over gamma = 0 at depth 2 stays an irreducible quartic
        //   and a certified non-constant conjugate cross-ratio exists.
        let f = f5();
        let num = KPoly::new(
            f.clone(),
            vec![RatFunc::one(&f), RatFunc::zero(&f), RatFunc::one(&f)],
        );
        let den = KPoly::new(f.clone(), vec![t(&f), RatFunc::zero(&f), RatFunc::one(&f)]);
        let balanced = RationalMap::new(num, den).unwrap();
        let zero = ProjPoint::Finite(RatFunc::zero(&f));
        let rep = preimage_crossratio_audit(&balanced, &zero, 2, 48, &NpConfig::default()).unwrap();
        assert_eq!(rep.fiber_size, 4);
        assert_eq!(rep.factors.len(), 2);
        for fr in &rep.factors {
            assert_eq!(fr.degree, 2);
            assert_eq!(fr.status, FactorCrStatus::SmallDegree);
        }

        let rep2 =
            preimage_crossratio_audit(&phi_sq_plus_t(&f), &zero, 2, 48, &NpConfig::default())
                .unwrap();
        assert_eq!(rep2.fiber_size, 4);
        assert_eq!(rep2.factors[0].degree, 4);
        assert_eq!(rep2.factors[0].status, FactorCrStatus::NonconstantFound);
        assert!(
            rep2.factors[0].certificate.is_some(),
            "certificate attached"
        );
    }

    #[test]
    fn small_fiber_rejected() {
        let f = f5();
        let phi = phi_sq(&f);
        let err =
            preimage_crossratio_audit(&phi, &ProjPoint::Finite(t(&f)), 1, 16, &NpConfig::default())
                .unwrap_err();
        assert_eq!(err, Error::FiberTooSmall(2));
    }
}
