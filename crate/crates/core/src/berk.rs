//! Exact combinatorics of Type I/II/III points of the Berkovich line over
//! the completion at infinity, in base-p logarithmic scale: diameters, the
//! join, the Hsia kernel, the kernel cross-ratio, and the constructive
//! quadruple selection.
//!
//! All magnitudes are rationals (or +-infinity); nothing here is floating
//! point. Type II/III classification is relative to the value group of the
//! base field, which is log-scale Z.

use num_rational::Rational64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::ffcore::field::Field;
use crate::ffcore::poly::Poly;
use crate::ffcore::ratfunc::{Place, RatFunc};
use crate::laurent::series::LaurentSeries;

/// log_p of an absolute value or radius: a rational, or +-infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogVal {
    NegInf,
    Fin(Rational64),
    PosInf,
}

impl LogVal {
    pub fn fin(n: i64, d: i64) -> LogVal {
        LogVal::Fin(Rational64::new(n, d))
    }
    pub fn integer(n: i64) -> LogVal {
        LogVal::Fin(Rational64::from_integer(n))
    }
    pub fn as_rational(&self) -> Option<Rational64> {
        match self {
            LogVal::Fin(r) => Some(*r),
            _ => None,
        }
    }
    pub fn is_finite(&self) -> bool {
        matches!(self, LogVal::Fin(_))
    }
}

impl PartialOrd for LogVal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for LogVal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        use LogVal::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Equal,
            (NegInf, _) => Less,
            (_, NegInf) => Greater,
            (PosInf, _) => Greater,
            (_, PosInf) => Less,
            (Fin(a), Fin(b)) => a.cmp(b),
        }
    }
}

impl std::ops::Add for LogVal {
    type Output = LogVal;
    fn add(self, rhs: LogVal) -> LogVal {
        use LogVal::*;
        match (self, rhs) {
            (Fin(a), Fin(b)) => Fin(a + b),
            (NegInf, PosInf) | (PosInf, NegInf) => panic!("indeterminate log sum"),
            (NegInf, _) | (_, NegInf) => NegInf,
            _ => PosInf,
        }
    }
}

impl std::ops::Sub for LogVal {
    type Output = LogVal;
    fn sub(self, rhs: LogVal) -> LogVal {
        use LogVal::*;
        match rhs {
            Fin(b) => match self {
                Fin(a) => Fin(a - b),
                other => other,
            },
            NegInf => match self {
                NegInf => panic!("indeterminate log difference"),
                _ => PosInf,
            },
            PosInf => match self {
                PosInf => panic!("indeterminate log difference"),
                _ => NegInf,
            },
        }
    }
}

/// Center of a disc: a K-rational point or a series embedding of an
/// algebraic point.
#[derive(Clone, Debug)]
pub enum Center {
    Rational(RatFunc),
    Series(LaurentSeries),
}

/// A Type I/II/III point: a closed disc (center, log-radius), or the point
/// at infinity. Two finite points are equal iff they have the same
/// log-diameter and their centers are within it.
#[derive(Clone, Debug)]
pub enum BerkPoint {
    Fin { center: Center, logdiam: LogVal },
    Infty,
}

/// Point type in the classical classification (relative to the base value
/// group).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    TypeI,
    TypeII,
    TypeIII,
    Infty,
}

impl BerkPoint {
    pub fn type_i_rational(x: RatFunc) -> BerkPoint {
        BerkPoint::Fin {
            center: Center::Rational(x),
            logdiam: LogVal::NegInf,
        }
    }

    pub fn type_i_series(x: LaurentSeries) -> BerkPoint {
        BerkPoint::Fin {
            center: Center::Series(x),
            logdiam: LogVal::NegInf,
        }
    }

    /// The disc with center a and radius p^logdiam.
    pub fn disc(center: RatFunc, logdiam: Rational64) -> BerkPoint {
        BerkPoint::Fin {
            center: Center::Rational(center),
            logdiam: LogVal::Fin(logdiam),
        }
    }

    pub fn kind(&self) -> PointKind {
        match self {
            BerkPoint::Infty => PointKind::Infty,
            BerkPoint::Fin { logdiam, .. } => match logdiam {
                LogVal::NegInf => PointKind::TypeI,
                LogVal::Fin(r) => {
                    if r.is_integer() {
                        PointKind::TypeII
                    } else {
                        PointKind::TypeIII
                    }
                }
                LogVal::PosInf => PointKind::Infty,
            },
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            BerkPoint::Infty => serde_json::json!({"kind": "infinity"}),
            BerkPoint::Fin { center, logdiam } => {
                let c = match center {
                    Center::Rational(x) => serde_json::json!(format!("{x:?}")),
                    Center::Series(s) => s.to_json(),
                };
                let ld = match logdiam {
                    LogVal::NegInf => serde_json::json!("-inf"),
                    LogVal::PosInf => serde_json::json!("+inf"),
                    LogVal::Fin(r) => serde_json::json!({"num": *r.numer(), "den": *r.denom()}),
                };
                serde_json::json!({"kind": format!("{:?}", self.kind()), "center": c, "logdiam": ld})
            }
        }
    }
}

/// log_p |a - b| for two centers; `NegInf` when equal. Errors when a series
/// comparison cannot be resolved within its precision.
pub fn center_log_dist(a: &Center, b: &Center) -> Result<LogVal> {
    match (a, b) {
        (Center::Rational(x), Center::Rational(y)) => {
            let d = x.sub(y);
            if d.is_zero() {
                Ok(LogVal::NegInf)
            } else {
                let v = d.ord_at(&Place::Infinity)?;
                Ok(LogVal::Fin(Rational64::from_integer(-v)))
            }
        }
        (Center::Series(s), Center::Rational(y)) | (Center::Rational(y), Center::Series(s)) => {
            let emb = crate::ffcore::embed::FieldEmbedding::new(y.field(), s.field())
                .map_err(|_| Error::EmbeddingUnavailable)?;
            let ys = crate::laurent::series::ratfunc_to_series(y, &emb, s.ram(), s.prec())?;
            series_log_dist(s, &ys)
        }
        (Center::Series(s1), Center::Series(s2)) => {
            if s1.ram() == s2.ram() && s1.field() == s2.field() {
                series_log_dist(s1, s2)
            } else {
                // bring onto a common lattice; fields must already agree
                let e = lcm_u32(s1.ram(), s2.ram());
                if s1.field() != s2.field() {
                    return Err(Error::InvalidInput(
                        "series centers over different constant fields".into(),
                    ));
                }
                let a1 = s1.ramify(e / s1.ram());
                let a2 = s2.ramify(e / s2.ram());
                series_log_dist(&a1, &a2)
            }
        }
    }
}

fn series_log_dist(a: &LaurentSeries, b: &LaurentSeries) -> Result<LogVal> {
    let d = a.sub(b);
    if d.is_exactly_zero() {
        return Ok(LogVal::NegInf);
    }
    match d.ord() {
        Some(l) => Ok(LogVal::Fin(Rational64::new(-l, d.ram() as i64))),
        None => Err(Error::InsufficientPrecision {
            need: d.prec() + 1,
            have: d.prec(),
        }),
    }
}

/// Canonical equality of Berkovich points: same diameter and centers within
/// it.
pub fn points_equal(a: &BerkPoint, b: &BerkPoint) -> Result<bool> {
    match (a, b) {
        (BerkPoint::Infty, BerkPoint::Infty) => Ok(true),
        (BerkPoint::Infty, _) | (_, BerkPoint::Infty) => Ok(false),
        (
            BerkPoint::Fin {
                center: c1,
                logdiam: d1,
            },
            BerkPoint::Fin {
                center: c2,
                logdiam: d2,
            },
        ) => {
            if d1 != d2 {
                return Ok(false);
            }
            let dist = center_log_dist(c1, c2)?;
            Ok(dist <= *d1)
        }
    }
}

/// diam: -inf for Type I, the stored log-diameter for II/III, +inf at
/// infinity.
pub fn diam(p: &BerkPoint) -> LogVal {
    match p {
        BerkPoint::Infty => LogVal::PosInf,
        BerkPoint::Fin { logdiam, .. } => *logdiam,
    }
}

/// The join: the smallest disc containing both, or infinity.
pub fn join(a: &BerkPoint, b: &BerkPoint) -> Result<BerkPoint> {
    match (a, b) {
        (BerkPoint::Infty, _) | (_, BerkPoint::Infty) => Ok(BerkPoint::Infty),
        (
            BerkPoint::Fin {
                center: c1,
                logdiam: d1,
            },
            BerkPoint::Fin {
                center: c2,
                logdiam: d2,
            },
        ) => {
            let dist = center_log_dist(c1, c2)?;
            let r = (*d1).max(*d2).max(dist);
            Ok(BerkPoint::Fin {
                center: c1.clone(),
                logdiam: r,
            })
        }
    }
}

/// The Hsia kernel in log scale: diam of the join. Finite operands only.
pub fn hsia(a: &BerkPoint, b: &BerkPoint) -> Result<LogVal> {
    if matches!(a, BerkPoint::Infty) || matches!(b, BerkPoint::Infty) {
        return Err(Error::InfinityOperand);
    }
    Ok(diam(&join(a, b)?))
}

/// log of the kernel cross-ratio of four distinct finite points:
/// hsia(1,4) + hsia(2,3) - hsia(1,3) - hsia(2,4). Positive iff the
/// cross-ratio exceeds 1.
pub fn cross_ratio_log(
    z1: &BerkPoint,
    z2: &BerkPoint,
    z3: &BerkPoint,
    z4: &BerkPoint,
) -> Result<LogVal> {
    let pts = [z1, z2, z3, z4];
    for p in &pts {
        if matches!(p, BerkPoint::Infty) {
            return Err(Error::InfinityOperand);
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if points_equal(pts[i], pts[j])? {
                return Err(Error::NotDistinct);
            }
        }
    }
    let s14 = hsia(z1, z4)?;
    let s23 = hsia(z2, z3)?;
    let s13 = hsia(z1, z3)?;
    let s24 = hsia(z2, z4)?;
    Ok((s14 + s23) - (s13 + s24))
}

/// Result of the constructive quadruple selection.
#[derive(Clone, Debug)]
pub enum Selection {
    Selected {
        quadruple: [BerkPoint; 4],
        cross_ratio: Rational64,
        case: u8,
    },
    HypothesesUnmet(String),
}

/// Given four distinct finite points of the same type and a finite sample
/// set S, construct four points of S with positive log cross-ratio, by the
/// concentric (case 1) or joined-pair (case 2) procedure. The returned
/// quadruple is verified before being returned.
pub fn select_quadruple(zeta: &[BerkPoint; 4], s: &[BerkPoint]) -> Result<Selection> {
    for p in zeta {
        if matches!(p, BerkPoint::Infty) {
            return Err(Error::InfinityOperand);
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if points_equal(&zeta[i], &zeta[j])? {
                return Err(Error::NotDistinct);
            }
        }
    }
    let kind = zeta[0].kind();
    if zeta.iter().any(|p| p.kind() != kind) {
        return Ok(Selection::HypothesesUnmet("mixed point types".into()));
    }

    // case split: are all pairwise joins among the four points?
    let mut all_joins_inside = true;
    'outer: for i in 0..4 {
        for j in i + 1..4 {
            let jp = join(&zeta[i], &zeta[j])?;
            let mut inside = false;
            for z in zeta.iter() {
                if points_equal(&jp, z)? {
                    inside = true;
                    break;
                }
            }
            if !inside {
                all_joins_inside = false;
                break 'outer;
            }
        }
    }

    if all_joins_inside {
        select_concentric(zeta, s)
    } else {
        select_joined_pair(zeta, s)
    }
}

/// Case 1: the four points are concentric discs with increasing radii; pick
/// sample points in the prescribed annuli.
fn select_concentric(zeta: &[BerkPoint; 4], s: &[BerkPoint]) -> Result<Selection> {
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by_key(|&i| diam(&zeta[i]));
    let r: Vec<LogVal> = order.iter().map(|&i| diam(&zeta[i])).collect();
    if r.windows(2).any(|w| w[0] >= w[1]) {
        return Ok(Selection::HypothesesUnmet(
            "concentric points without strictly increasing radii".into(),
        ));
    }
    // slots: (anchor index, lower bound, upper bound or None)
    let slots: [(usize, LogVal, Option<LogVal>); 4] = [
        (0, r[0], Some(r[1])),
        (1, r[1], Some(r[2])),
        (2, r[2], Some(r[3])),
        (3, r[3], None),
    ];
    let mut picks: Vec<BerkPoint> = Vec::with_capacity(4);
    for (anchor, lo, hi) in &slots {
        let zi = &zeta[order[*anchor]];
        let mut chosen = None;
        for cand in s {
            if matches!(cand, BerkPoint::Infty) {
                continue;
            }
            let sup = hsia(zi, cand)?;
            let ok = sup > *lo && hi.map_or(true, |h| sup < h);
            if ok {
                chosen = Some(cand.clone());
                break;
            }
        }
        match chosen {
            None => {
                return Ok(Selection::HypothesesUnmet(format!(
                    "no sample point in annulus {anchor}"
                )))
            }
            Some(c) => picks.push(c),
        }
    }
    // display order: z1 in annulus 0, z3 in annulus 1, z2 in annulus 2,
    // z4 beyond the largest radius
    let quadruple = [
        picks[0].clone(),
        picks[2].clone(),
        picks[1].clone(),
        picks[3].clone(),
    ];
    verify_selection(quadruple, 1)
}

/// Case 2: some join is a new point; take the pair whose join has maximal
/// kernel and pick two close sample points near each end.
fn select_joined_pair(zeta: &[BerkPoint; 4], s: &[BerkPoint]) -> Result<Selection> {
    // find a pair whose join is outside the set
    let mut pair = None;
    'outer: for i in 0..4 {
        for j in i + 1..4 {
            let jp = join(&zeta[i], &zeta[j])?;
            let mut inside = false;
            for z in zeta.iter() {
                if points_equal(&jp, z)? {
                    inside = true;
                    break;
                }
            }
            if !inside {
                pair = Some((i, j));
                break 'outer;
            }
        }
    }
    let (i, j) = pair.expect("case 2 requires an outside join");
    let sigma = hsia(&zeta[i], &zeta[j])?;
    let mut near_i: Vec<BerkPoint> = Vec::new();
    let mut near_j: Vec<BerkPoint> = Vec::new();
    for cand in s {
        if matches!(cand, BerkPoint::Infty) {
            continue;
        }
        if hsia(&zeta[i], cand)? < sigma {
            if near_i.len() < 2 {
                let dup = near_i
                    .iter()
                    .map(|p| points_equal(p, cand))
                    .collect::<Result<Vec<bool>>>()?
                    .into_iter()
                    .any(|b| b);
                if !dup {
                    near_i.push(cand.clone());
                }
            }
        } else if hsia(&zeta[j], cand)? < sigma && near_j.len() < 2 {
            let dup = near_j
                .iter()
                .map(|p| points_equal(p, cand))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .any(|b| b);
            if !dup {
                near_j.push(cand.clone());
            }
        }
        if near_i.len() == 2 && near_j.len() == 2 {
            break;
        }
    }
    if near_i.len() < 2 || near_j.len() < 2 {
        return Ok(Selection::HypothesesUnmet(
            "fewer than two sample points near each end of the pair".into(),
        ));
    }
    // (z1, z3) near zeta_i, (z2, z4) near zeta_j
    let quadruple = [
        near_i[0].clone(),
        near_j[0].clone(),
        near_i[1].clone(),
        near_j[1].clone(),
    ];
    verify_selection(quadruple, 2)
}

fn verify_selection(quadruple: [BerkPoint; 4], case: u8) -> Result<Selection> {
    let cr = cross_ratio_log(&quadruple[0], &quadruple[1], &quadruple[2], &quadruple[3])?;
    match cr {
        LogVal::Fin(r) if r > Rational64::from_integer(0) => Ok(Selection::Selected {
            quadruple,
            cross_ratio: r,
            case,
        }),
        other => Err(Error::InvalidInput(format!(
            "selected quadruple has non-positive cross-ratio {other:?}"
        ))),
    }
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    let mut g = a;
    let mut h = b;
    while h != 0 {
        let r = g % h;
        g = h;
        h = r;
    }
    a / g.max(1) * b
}

/// Random Type I/II/III point with a rational center, for the sampling
/// suites.
pub fn random_point<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> BerkPoint {
    let center = RatFunc::from_poly(Poly::random_up_to(field, 3, rng));
    match rng.random_range(0..3u8) {
        0 => BerkPoint::type_i_rational(center),
        1 => BerkPoint::disc(center, Rational64::from_integer(rng.random_range(-6..7))),
        _ => {
            let den = [2i64, 3][rng.random_range(0..2usize)];
            let num = rng.random_range(-12..13);
            BerkPoint::disc(center, Rational64::new(num, den))
        }
    }
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

    fn zero_disc(field: &Field, n: i64, d: i64) -> BerkPoint {
        BerkPoint::disc(RatFunc::zero(field), Rational64::new(n, d))
    }

    #[test]
    fn diam_examples() {
        let f = f5();
        assert_eq!(diam(&BerkPoint::type_i_rational(t(&f))), LogVal::NegInf);
        assert_eq!(diam(&zero_disc(&f, -2, 1)), LogVal::integer(-2));
        assert_eq!(diam(&BerkPoint::Infty), LogVal::PosInf);
    }

    #[test]
    fn join_examples() {
        let f = f5();
        // nested concentric discs
        let a = zero_disc(&f, -1, 1);
        let b = zero_disc(&f, -3, 1);
        let j = join(&a, &b).unwrap();
        assert!(points_equal(&j, &a).unwrap());
        // Type I points 0 and t: |t| = p, smallest disc has log-radius 1
        let p0 = BerkPoint::type_i_rational(RatFunc::zero(&f));
        let pt = BerkPoint::type_i_rational(t(&f));
        let j2 = join(&p0, &pt).unwrap();
        assert_eq!(diam(&j2), LogVal::integer(1));
        // join with infinity
        assert!(matches!(
            join(&a, &BerkPoint::Infty).unwrap(),
            BerkPoint::Infty
        ));
        // idempotent and commutative
        assert!(points_equal(&join(&a, &a).unwrap(), &a).unwrap());
        let ab = join(&a, &b).unwrap();
        let ba = join(&b, &a).unwrap();
        assert!(points_equal(&ab, &ba).unwrap());
    }

    #[test]
    fn hsia_examples() {
        let f = f5();
        // Type I points: the kernel is the distance
        let a = BerkPoint::type_i_rational(t(&f));
        let b = BerkPoint::type_i_rational(t(&f).mul(&t(&f)));
        // |t - t^2| = p^2
        assert_eq!(hsia(&a, &b).unwrap(), LogVal::integer(2));
        // concentric: max of radii
        let c1 = zero_disc(&f, -1, 1);
        let c2 = zero_disc(&f, 2, 1);
        assert_eq!(hsia(&c1, &c2).unwrap(), LogVal::integer(2));
        // self-kernel is the diameter
        assert_eq!(hsia(&c1, &c1).unwrap(), diam(&c1));
        assert_eq!(
            hsia(&a, &BerkPoint::Infty).unwrap_err(),
            Error::InfinityOperand
        );
    }

    #[test]
    fn cross_ratio_examples() {
        let f = f5();
        // (0, t; t^2, t^3): (3 + 2) - (2 + 3) = 0
        let p = |x: RatFunc| BerkPoint::type_i_rational(x);
        let t1 = t(&f);
        let t2 = t1.mul(&t1);
        let t3 = t2.mul(&t1);
        let cr = cross_ratio_log(&p(RatFunc::zero(&f)), &p(t1.clone()), &p(t2), &p(t3)).unwrap();
        assert_eq!(cr, LogVal::integer(0));
        // repeated point rejected
        let e = cross_ratio_log(
            &p(t1.clone()),
            &p(t1.clone()),
            &p(RatFunc::one(&f)),
            &p(RatFunc::zero(&f)),
        );
        assert_eq!(e.unwrap_err(), Error::NotDistinct);
    }

    #[test]
    fn ultrametric_triple_random() {
        let f = f5();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..2000 {
            let a = random_point(&f, &mut rng);
            let b = random_point(&f, &mut rng);
            let c = random_point(&f, &mut rng);
            let ab = hsia(&a, &b).unwrap();
            let bc = hsia(&b, &c).unwrap();
            let ac = hsia(&a, &c).unwrap();
            assert!(ac <= ab.max(bc));
            if ab != bc {
                assert_eq!(ac, ab.max(bc));
            }
        }
    }

    #[test]
    fn open_disc_membership_matches_kernel() {
        // {eta : hsia(zeta, eta) < r} = containment in the open disc, for
        // r above the diameter
        let f = f5();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let zeta = zero_disc(&f, -1, 1);
        let r = Rational64::new(3, 2);
        for _ in 0..500 {
            let eta = random_point(&f, &mut rng);
            let (c_eta, d_eta) = match &eta {
                BerkPoint::Fin { center, logdiam } => (center.clone(), *logdiam),
                _ => continue,
            };
            let kernel_side = hsia(&zeta, &eta).unwrap() < LogVal::Fin(r);
            let dist = match (&c_eta,) {
                (Center::Rational(x),) => center_log_dist(
                    &Center::Rational(x.clone()),
                    &Center::Rational(RatFunc::zero(&f)),
                )
                .unwrap(),
                _ => continue,
            };
            let disc_side = d_eta < LogVal::Fin(r) && dist < LogVal::Fin(r);
            assert_eq!(kernel_side, disc_side);
        }
    }

    #[test]
    fn selection_case1_concentric() {
        let f = f5();
        let zeta = [
            zero_disc(&f, 1, 1),
            zero_disc(&f, 2, 1),
            zero_disc(&f, 3, 1),
            zero_disc(&f, 4, 1),
        ];
        // sample points at half-integer log-distances from 0: ramified series
        // centers t^(3/2)-style
        let mk = |k2: i64| -> BerkPoint {
            // series with a single term u^(-k2) on the ram-2 lattice:
            // log distance from 0 is k2/2
            let s = LaurentSeries::monomial(&f, 2, crate::ffcore::field::Fq(1), -k2);
            BerkPoint::type_i_series(s)
        };
        let s: Vec<BerkPoint> = vec![mk(3), mk(5), mk(7), mk(9)];
        match select_quadruple(&zeta, &s).unwrap() {
            Selection::Selected {
                cross_ratio, case, ..
            } => {
                assert_eq!(case, 1);
                assert!(cross_ratio > Rational64::from_integer(0));
            }
            Selection::HypothesesUnmet(why) => panic!("selection failed: {why}"),
        }
    }

    #[test]
    fn selection_case2_joined_pair() {
        let f = f5();
        // zeta1, zeta2: small discs around 0 and t (join at log-radius 1),
        // plus two far discs to break the concentric structure
        let zeta = [
            zero_disc(&f, -2, 1),
            BerkPoint::disc(t(&f), Rational64::new(-2, 1)),
            BerkPoint::disc(t(&f).mul(&t(&f)), Rational64::new(-3, 1)),
            BerkPoint::disc(t(&f).mul(&t(&f)).mul(&t(&f)), Rational64::new(-5, 1)),
        ];
        // sample points very close to 0 and to t
        let near = |x: RatFunc, k: i64| -> BerkPoint {
            let shift = RatFunc::new(
                Poly::one(&f),
                Poly::monomial(&f, crate::ffcore::field::Fq(1), k as usize),
            )
            .unwrap();
            BerkPoint::type_i_rational(x.add(&shift))
        };
        let s = vec![
            near(RatFunc::zero(&f), 4),
            near(RatFunc::zero(&f), 5),
            near(t(&f), 4),
            near(t(&f), 5),
        ];
        match select_quadruple(&zeta, &s).unwrap() {
            Selection::Selected {
                cross_ratio, case, ..
            } => {
                assert_eq!(case, 2);
                assert!(cross_ratio > Rational64::from_integer(0));
            }
            Selection::HypothesesUnmet(why) => panic!("selection failed: {why}"),
        }
    }

    #[test]
    fn empty_sample_set_unmet() {
        let f = f5();
        let zeta = [
            zero_disc(&f, 1, 1),
            zero_disc(&f, 2, 1),
            zero_disc(&f, 3, 1),
            zero_disc(&f, 4, 1),
        ];
        match select_quadruple(&zeta, &[]).unwrap() {
            Selection::HypothesesUnmet(_) => {}
            Selection::Selected { .. } => panic!("empty sample set cannot satisfy"),
        }
    }
}
