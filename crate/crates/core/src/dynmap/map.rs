//! Rational maps on the projective line over K: construction, evaluation,
//! composition and cached iterates.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::ffcore::field::Field;
use crate::ffcore::kpoly::{resultant_forms, BiPoly, KPoly};
use crate::ffcore::poly::Poly;
use crate::ffcore::ratfunc::RatFunc;

/// A point of P^1(K), normalized: [x : 1] or [1 : 0].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ProjPoint {
    Finite(RatFunc),
    Infinity,
}

impl ProjPoint {
    pub fn coords(&self, field: &Field) -> (RatFunc, RatFunc) {
        match self {
            ProjPoint::Finite(x) => (x.clone(), RatFunc::one(field)),
            ProjPoint::Infinity => (RatFunc::one(field), RatFunc::zero(field)),
        }
    }

    pub fn from_coords(x0: &RatFunc, x1: &RatFunc) -> Result<ProjPoint> {
        if x1.is_zero() {
            if x0.is_zero() {
                return Err(Error::InvalidInput("both coordinates zero".into()));
            }
            Ok(ProjPoint::Infinity)
        } else {
            Ok(ProjPoint::Finite(x0.div(x1)?))
        }
    }

    /// Height: max degree of the reduced coordinates; h(infinity) = 0.
    pub fn height(&self) -> i64 {
        match self {
            ProjPoint::Finite(x) => x.height(),
            ProjPoint::Infinity => 0,
        }
    }
}

/// phi = f/g with f, g coprime in z and d = max(deg f, deg g) >= 2.
#[derive(Clone)]
pub struct RationalMap {
    f: KPoly,
    g: KPoly,
    d: usize,
    iterates: Arc<Mutex<BTreeMap<u32, RationalMap>>>,
}

impl std::fmt::Debug for RationalMap {
    fn fmt(&self, w: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(w, "({:?})/({:?})", self.f, self.g)
    }
}

impl PartialEq for RationalMap {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f && self.g == other.g
    }
}
impl Eq for RationalMap {}

impl RationalMap {
    /// Reduce to coprime form and validate the degree.
    pub fn new(f: KPoly, g: KPoly) -> Result<RationalMap> {
        let m = Self::new_any_degree(f, g)?;
        if m.d < 2 {
            return Err(Error::DegreeTooLow);
        }
        Ok(m)
    }

    /// Like `new` but allowing degree < 2 (identity representation for the
    /// zeroth iterate, degree-one changes of coordinates).
    pub fn new_any_degree(f: KPoly, g: KPoly) -> Result<RationalMap> {
        if g.is_zero() {
            return Err(Error::IdenticallyUndefined);
        }
        if f.is_zero() {
            return Err(Error::InvalidInput("the zero map is not allowed".into()));
        }
        let c = f.gcd(&g);
        let (mut f, mut g) = (f.div_exact(&c), g.div_exact(&c));
        // normalize: leading coefficient of g monic (or of f when g is a
        // nonzero constant fold it to 1)
        if g.degree() == Some(0) {
            let inv = g.coeff(0).inv()?;
            f = f.scale(&inv);
            g = KPoly::one(f.field());
        } else {
            let inv = g.lc().inv()?;
            f = f.scale(&inv);
            g = g.scale(&inv);
        }
        let d = f.deg_i().max(g.deg_i()) as usize;
        let m = RationalMap {
            f,
            g,
            d,
            iterates: Arc::new(Mutex::new(BTreeMap::new())),
        };
        debug_assert!(!resultant_forms(&m.f, &m.g, m.d).is_zero());
        Ok(m)
    }

    pub fn from_polynomial(f: KPoly) -> Result<RationalMap> {
        let one = KPoly::one(f.field());
        RationalMap::new(f, one)
    }

    pub fn numerator(&self) -> &KPoly {
        &self.f
    }
    pub fn denominator(&self) -> &KPoly {
        &self.g
    }
    pub fn degree(&self) -> usize {
        self.d
    }
    pub fn field(&self) -> &Field {
        self.f.field()
    }

    pub fn is_polynomial(&self) -> bool {
        self.g.degree() == Some(0)
    }

    /// Homogeneous evaluation with cancellation.
    pub fn eval(&self, p: &ProjPoint) -> ProjPoint {
        match p {
            ProjPoint::Finite(x) => {
                let fv = self.f.eval_rat(x);
                let gv = self.g.eval_rat(x);
                if gv.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(fv.div(&gv).expect("nonzero denominator"))
                }
            }
            ProjPoint::Infinity => {
                // [f_d : g_d], the top homogeneous coefficients
                let fd = self.f.coeff(self.d);
                let gd = self.g.coeff(self.d);
                if gd.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(fd.div(&gd).expect("nonzero denominator"))
                }
            }
        }
    }

    /// Composition self(other). Compositions of reduced maps are already
    /// reduced: a common z-factor would force a common projective root of
    /// the coordinate forms, contradicting the nonvanishing resultants.
    /// The arithmetic runs on the joint integral models, where coefficients
    /// are plain polynomials.
    pub fn compose(&self, other: &RationalMap) -> Result<RationalMap> {
        let field = self.field().clone();
        let d = self.d;
        let (sf, sg) = joint_integral_pair(&self.f, &self.g);
        let (of, og) = joint_integral_pair(&other.f, &other.g);
        // powers of other's integral numerator and denominator
        let mut fp = vec![BiPoly::new(field.clone(), vec![Poly::one(&field)])];
        let mut gp = vec![BiPoly::new(field.clone(), vec![Poly::one(&field)])];
        for i in 0..d {
            fp.push(fp[i].mul(&of));
            gp.push(gp[i].mul(&og));
        }
        let mut num = BiPoly::new(field.clone(), vec![]);
        let mut den = BiPoly::new(field.clone(), vec![]);
        for i in 0..=d {
            let basis = fp[i].mul(&gp[d - i]);
            let fc = sf.coeff(i);
            if !fc.is_zero() {
                num = num.add(&basis.scale_t(&fc));
            }
            let gc = sg.coeff(i);
            if !gc.is_zero() {
                den = den.add(&basis.scale_t(&gc));
            }
        }
        if den.is_zero() {
            return Err(Error::IdenticallyUndefined);
        }
        // drop the common t-content of the pair
        let mut cont = Poly::zero(&field);
        for c in num.coeffs().iter().chain(den.coeffs()) {
            cont = cont.gcd(c);
            if cont.is_one() {
                break;
            }
        }
        let (num, den) = if cont.is_zero() || cont.is_one() {
            (num, den)
        } else {
            (
                num.map_coeffs(&field, |c| c.div_exact(&cont)),
                den.map_coeffs(&field, |c| c.div_exact(&cont)),
            )
        };
        let mut num = num.to_kpoly();
        let mut den = den.to_kpoly();
        if den.degree() == Some(0) {
            let inv = den.coeff(0).inv()?;
            num = num.scale(&inv);
            den = KPoly::one(&field);
        } else {
            let inv = den.lc().inv()?;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        let dd = num.deg_i().max(den.deg_i()) as usize;
        debug_assert_eq!(dd, self.d * other.d, "composition degree law");
        Ok(RationalMap {
            f: num,
            g: den,
            d: dd,
            iterates: Arc::new(Mutex::new(BTreeMap::new())),
        })
    }

    /// The n-fold iterate, cached. n = 0 gives the identity representation.
    pub fn iterate(&self, n: u32) -> Result<RationalMap> {
        if n == 0 {
            let field = self.field();
            return RationalMap::new_any_degree(KPoly::var(field), KPoly::one(field));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        {
            let cache = self.iterates.lock().unwrap();
            if let Some(m) = cache.get(&n) {
                return Ok(m.clone());
            }
        }
        let prev = self.iterate(n - 1)?;
        let next = self.compose(&prev)?;
        let mut cache = self.iterates.lock().unwrap();
        cache.insert(n, next.clone());
        Ok(next)
    }

    /// Forward orbit of a point: [phi(a), phi^2(a), ..., phi^n(a)].
    pub fn orbit(&self, a: &ProjPoint, n: usize) -> Vec<ProjPoint> {
        let mut out = Vec::with_capacity(n);
        let mut cur = a.clone();
        for _ in 0..n {
            cur = self.eval(&cur);
            out.push(cur.clone());
        }
        out
    }

    /// Conjugate by the coordinate swap z -> 1/z: returns the map
    /// 1 / phi(1/z), used for chart changes at infinity.
    pub fn swap_chart(&self) -> RationalMap {
        let field = self.field().clone();
        let zero = RatFunc::zero(&field);
        let one = RatFunc::one(&field);
        // phi(1/z): substitute and clear z^d
        let fs = self.f.compose_mobius(&zero, &one, &one, &zero);
        let gs = self.g.compose_mobius(&zero, &one, &one, &zero);
        RationalMap::new_any_degree(gs, fs).expect("swap preserves validity")
    }
}

/// Clear denominators of a coordinate pair jointly, producing integral
/// polynomials in F_q[t][z] (common t-content left in place: callers that
/// care remove it afterwards).
fn joint_integral_pair(f: &KPoly, g: &KPoly) -> (BiPoly, BiPoly) {
    let field = f.field().clone();
    let mut den = Poly::one(&field);
    for c in f.coeffs().iter().chain(g.coeffs()) {
        let gg = den.gcd(c.den());
        den = den.mul(&c.den().div_exact(&gg));
    }
    let clear = |k: &KPoly| -> BiPoly {
        BiPoly::new(
            field.clone(),
            k.coeffs()
                .iter()
                .map(|c| c.num().mul(&den.div_exact(c.den())))
                .collect(),
        )
    };
    (clear(f), clear(g))
}
