//! The map-expression front end: parse expressions over {z, t, g, integer
//! constants, + - * / ^} into rational maps, with deterministic error
//! positions. `g` denotes the generator of an extension constant field.

use crate::dynmap::map::{ProjPoint, RationalMap};
use crate::error::{Error, Result};
use crate::ffcore::field::Field;
use crate::ffcore::kpoly::KPoly;
use crate::ffcore::poly::Poly;
use crate::ffcore::ratfunc::RatFunc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Z,
    T,
    Gen,
    Int(i64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

/// A parsed map expression; the source string is retained for reports.
#[derive(Clone, Debug)]
pub struct MapExpr {
    pub source: String,
    pub ast: Expr,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Z,
    T,
    Gen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next_tok(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let at = self.pos;
        if self.pos >= self.src.len() {
            return Ok((Tok::End, at));
        }
        let c = self.src[self.pos];
        self.pos += 1;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'z' => Tok::Z,
            b't' => Tok::T,
            b'g' => Tok::Gen,
            b'0'..=b'9' => {
                let mut n: i64 = (c - b'0') as i64;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    n = n
                        .checked_mul(10)
                        .and_then(|m| m.checked_add((self.src[self.pos] - b'0') as i64))
                        .ok_or(Error::SyntaxError(at))?;
                    self.pos += 1;
                }
                Tok::Int(n)
            }
            _ => return Err(Error::SyntaxError(at)),
        };
        Ok((tok, at))
    }
}

struct Parser<'a> {
    lx: Lexer<'a>,
    cur: Tok,
    cur_at: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Parser<'a>> {
        let mut lx = Lexer::new(src);
        let (cur, cur_at) = lx.next_tok()?;
        Ok(Parser { lx, cur, cur_at })
    }

    fn bump(&mut self) -> Result<()> {
        let (t, at) = self.lx.next_tok()?;
        self.cur = t;
        self.cur_at = at;
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.cur {
                Tok::Plus => {
                    self.bump()?;
                    let rhs = self.term()?;
                    acc = Expr::Add(Box::new(acc), Box::new(rhs));
                }
                Tok::Minus => {
                    self.bump()?;
                    let rhs = self.term()?;
                    acc = Expr::Sub(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            match self.cur {
                Tok::Star => {
                    self.bump()?;
                    let rhs = self.unary()?;
                    acc = Expr::Mul(Box::new(acc), Box::new(rhs));
                }
                Tok::Slash => {
                    self.bump()?;
                    let rhs = self.unary()?;
                    acc = Expr::Div(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.cur == Tok::Minus {
            self.bump()?;
            let inner = self.unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let mut acc = self.atom()?;
        while self.cur == Tok::Caret {
            self.bump()?;
            let neg = if self.cur == Tok::Minus {
                self.bump()?;
                true
            } else {
                false
            };
            let e = match self.cur {
                Tok::Int(n) => {
                    let e = i32::try_from(n).map_err(|_| Error::SyntaxError(self.cur_at))?;
                    self.bump()?;
                    if neg {
                        -e
                    } else {
                        e
                    }
                }
                _ => return Err(Error::SyntaxError(self.cur_at)),
            };
            acc = Expr::Pow(Box::new(acc), e);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.cur_at;
        let e = match self.cur.clone() {
            Tok::Int(n) => {
                self.bump()?;
                Expr::Int(n)
            }
            Tok::Z => {
                self.bump()?;
                Expr::Z
            }
            Tok::T => {
                self.bump()?;
                Expr::T
            }
            Tok::Gen => {
                self.bump()?;
                Expr::Gen
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.cur != Tok::RParen {
                    return Err(Error::SyntaxError(self.cur_at));
                }
                self.bump()?;
                inner
            }
            _ => return Err(Error::SyntaxError(at)),
        };
        Ok(e)
    }
}

/// Parse an expression string.
pub fn parse_expr(source: &str) -> Result<MapExpr> {
    let mut p = Parser::new(source)?;
    let ast = p.expr()?;
    if p.cur != Tok::End {
        return Err(Error::SyntaxError(p.cur_at));
    }
    Ok(MapExpr {
        source: source.to_string(),
        ast,
    })
}

/// A rational function in z over K, used while evaluating expressions.
#[derive(Clone)]
struct ZRat {
    num: KPoly,
    den: KPoly,
}

impl ZRat {
    fn constant(r: RatFunc) -> ZRat {
        let field = r.field().clone();
        ZRat {
            num: KPoly::constant(r),
            den: KPoly::one(&field),
        }
    }
    fn z(field: &Field) -> ZRat {
        ZRat {
            num: KPoly::var(field),
            den: KPoly::one(field),
        }
    }
    fn reduce(self) -> ZRat {
        let g = self.num.gcd(&self.den);
        if g.degree() == Some(0) {
            return self;
        }
        ZRat {
            num: self.num.div_exact(&g),
            den: self.den.div_exact(&g),
        }
    }
    fn add(&self, o: &ZRat) -> ZRat {
        ZRat {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
        .reduce()
    }
    fn sub(&self, o: &ZRat) -> ZRat {
        ZRat {
            num: self.num.mul(&o.den).sub(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
        .reduce()
    }
    fn mul(&self, o: &ZRat) -> ZRat {
        ZRat {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
        .reduce()
    }
    fn div(&self, o: &ZRat) -> Result<ZRat> {
        if o.num.is_zero() {
            return Err(Error::IdenticallyUndefined);
        }
        Ok(ZRat {
            num: self.num.mul(&o.den),
            den: self.den.mul(&o.num),
        }
        .reduce())
    }
    fn neg(&self) -> ZRat {
        ZRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn powi(&self, e: i32) -> Result<ZRat> {
        if e == 0 {
            let field = self.num.field();
            return Ok(ZRat {
                num: KPoly::one(field),
                den: KPoly::one(field),
            });
        }
        let (base, e) = if e < 0 {
            if self.num.is_zero() {
                return Err(Error::IdenticallyUndefined);
            }
            (
                ZRat {
                    num: self.den.clone(),
                    den: self.num.clone(),
                },
                -e,
            )
        } else {
            (self.clone(), e)
        };
        let mut acc = base.clone();
        for _ in 1..e {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

fn eval(ast: &Expr, field: &Field) -> Result<ZRat> {
    Ok(match ast {
        Expr::Z => ZRat::z(field),
        Expr::T => ZRat::constant(RatFunc::var(field)),
        Expr::Gen => {
            if field.ext_deg() == 1 {
                return Err(Error::ConfigError(
                    "the generator symbol g needs an extension field".into(),
                ));
            }
            ZRat::constant(RatFunc::constant(field, field.gen()))
        }
        Expr::Int(n) => ZRat::constant(RatFunc::from_int(field, *n)),
        Expr::Neg(e) => eval(e, field)?.neg(),
        Expr::Add(a, b) => eval(a, field)?.add(&eval(b, field)?),
        Expr::Sub(a, b) => eval(a, field)?.sub(&eval(b, field)?),
        Expr::Mul(a, b) => eval(a, field)?.mul(&eval(b, field)?),
        Expr::Div(a, b) => eval(a, field)?.div(&eval(b, field)?)?,
        Expr::Pow(a, e) => eval(a, field)?.powi(*e)?,
    })
}

/// Parse and evaluate into a rational map of degree >= 2.
pub fn parse_map(source: &str, field: &Field) -> Result<RationalMap> {
    let expr = parse_expr(source)?;
    let v = eval(&expr.ast, field)?;
    RationalMap::new(v.num, v.den)
}

/// Parse a z-free expression into a point of P^1(K); "inf" gives infinity.
pub fn parse_point(source: &str, field: &Field) -> Result<ProjPoint> {
    let s = source.trim();
    if s == "inf" || s == "infinity" || s == "oo" {
        return Ok(ProjPoint::Infinity);
    }
    let expr = parse_expr(s)?;
    let v = eval(&expr.ast, field)?;
    if v.num.degree().map_or(false, |d| d > 0) || v.den.degree().map_or(false, |d| d > 0) {
        return Err(Error::ConfigError(
            "point expression must not involve z".into(),
        ));
    }
    if v.den.coeff(0).is_zero() {
        return Err(Error::ConfigError(
            "point expression divides by zero".into(),
        ));
    }
    Ok(ProjPoint::Finite(v.num.coeff(0).div(&v.den.coeff(0))?))
}

fn fq_to_expr(field: &Field, c: crate::ffcore::field::Fq) -> String {
    if field.ext_deg() == 1 {
        return format!("{}", c.0);
    }
    let digits = field.digits(c);
    let mut parts = Vec::new();
    for (i, d) in digits.iter().enumerate() {
        if *d == 0 {
            continue;
        }
        let term = match i {
            0 => format!("{d}"),
            1 => format!("{d}*g"),
            _ => format!("{d}*g^{i}"),
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".to_string()
    } else if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        format!("({})", parts.join(" + "))
    }
}

fn poly_to_expr(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let field = p.field();
    let mut parts = Vec::new();
    for (i, &c) in p.coeffs().iter().enumerate().rev() {
        if field.is_zero(c) {
            continue;
        }
        let cs = fq_to_expr(field, c);
        let part = match i {
            0 => cs,
            1 => {
                if cs == "1" {
                    "t".to_string()
                } else {
                    format!("{cs}*t")
                }
            }
            _ => {
                if cs == "1" {
                    format!("t^{i}")
                } else {
                    format!("{cs}*t^{i}")
                }
            }
        };
        parts.push(part);
    }
    parts.join(" + ")
}

fn ratfunc_to_expr(r: &RatFunc) -> String {
    if r.is_polynomial() {
        poly_to_expr(r.num())
    } else {
        format!("({})/({})", poly_to_expr(r.num()), poly_to_expr(r.den()))
    }
}

fn kpoly_to_expr(k: &KPoly) -> String {
    if k.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (i, c) in k.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let cs = ratfunc_to_expr(c);
        let part = match i {
            0 => format!("({cs})"),
            1 => format!("({cs})*z"),
            _ => format!("({cs})*z^{i}"),
        };
        parts.push(part);
    }
    parts.join(" + ")
}

/// Canonical, reparsable rendering of a rational map.
pub fn map_to_source(phi: &RationalMap) -> String {
    if phi.is_polynomial() {
        kpoly_to_expr(phi.numerator())
    } else {
        format!(
            "({})/({})",
            kpoly_to_expr(phi.numerator()),
            kpoly_to_expr(phi.denominator())
        )
    }
}

/// Canonical rendering of a projective point.
pub fn point_to_source(p: &ProjPoint) -> String {
    match p {
        ProjPoint::Infinity => "inf".to_string(),
        ProjPoint::Finite(x) => ratfunc_to_expr(x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn parse_rational_quadratic() {
        let f = f5();
        let m = parse_map("(z^2 + t)/(z^2 - 1)", &f).unwrap();
        assert_eq!(m.degree(), 2);
        let num = m.numerator();
        assert_eq!(num.coeff(0), RatFunc::var(&f));
        assert_eq!(num.coeff(2), RatFunc::one(&f));
        let den = m.denominator();
        assert_eq!(den.coeff(0), RatFunc::from_int(&f, -1));
    }

    #[test]
    fn parse_polynomial_map() {
        let f = f5();
        let m = parse_map("z^2 + t", &f).unwrap();
        assert!(m.is_polynomial());
        assert_eq!(m.degree(), 2);
    }

    #[test]
    fn syntax_error_position() {
        let f = f5();
        let e = parse_map("z^", &f).unwrap_err();
        assert_eq!(e, Error::SyntaxError(2));
        let e2 = parse_map("z^2 + (t", &f).unwrap_err();
        assert_eq!(e2, Error::SyntaxError(8));
    }

    #[test]
    fn low_degree_rejected() {
        let f = f5();
        assert_eq!(parse_map("z + 1", &f).unwrap_err(), Error::DegreeTooLow);
        // z^2/z^2 reduces to degree 0
        assert_eq!(
            parse_map("(z^2)/(z^2)", &f).unwrap_err(),
            Error::DegreeTooLow
        );
    }

    #[test]
    fn division_by_zero_expression() {
        let f = f5();
        assert_eq!(
            parse_map("z^2/(1 - 1)", &f).unwrap_err(),
            Error::IdenticallyUndefined
        );
    }

    #[test]
    fn precedence_and_unary_minus() {
        let f = f5();
        // -z^2 parses as -(z^2): the map -z^2 + t
        let m = parse_map("-z^2 + t", &f).unwrap();
        assert_eq!(m.numerator().coeff(2), RatFunc::from_int(&f, -1));
        // 1/t*z^2: both orders give ((1/t) * z^2)
        let m2 = parse_map("1/t*z^2", &f).unwrap();
        let c = m2.numerator().coeff(2);
        let _ = c;
        assert_eq!(m2.degree(), 2);
    }

    #[test]
    fn point_parsing() {
        let f = f5();
        assert_eq!(parse_point("inf", &f).unwrap(), ProjPoint::Infinity);
        assert_eq!(
            parse_point("0", &f).unwrap(),
            ProjPoint::Finite(RatFunc::zero(&f))
        );
        let p = parse_point("(t+1)/t", &f).unwrap();
        match p {
            ProjPoint::Finite(x) => {
                assert_eq!(x.height(), 1);
            }
            _ => panic!(),
        }
        assert!(parse_point("z + 1", &f).is_err());
    }

    #[test]
    fn round_trip_random_expressions() {
        let f = f5();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut done = 0;
        while done < 200 {
            let src = random_source(&mut rng);
            let parsed = match parse_map(&src, &f) {
                Ok(m) => m,
                Err(_) => continue,
            };
            let printed = map_to_source(&parsed);
            let reparsed = parse_map(&printed, &f)
                .unwrap_or_else(|e| panic!("reparse of {printed:?} failed: {e:?}"));
            assert_eq!(parsed, reparsed, "source {src:?} printed {printed:?}");
            done += 1;
        }
    }

    fn random_source(rng: &mut ChaCha8Rng) -> String {
        // z^2 * c3 + z * c1 + c0 over small random t-coefficients, sometimes
        // divided by another quadratic
        let coeff = |rng: &mut ChaCha8Rng| -> String {
            match rng.random_range(0..5u8) {
                0 => format!("{}", rng.random_range(0..5u8)),
                1 => "t".into(),
                2 => format!("(t + {})", rng.random_range(1..5u8)),
                3 => format!("t^{}", rng.random_range(2..4u8)),
                _ => format!("(t^2 + {})", rng.random_range(0..5u8)),
            }
        };
        let quad = |rng: &mut ChaCha8Rng| -> String {
            format!(
                "({})*z^2 + ({})*z + ({})",
                coeff(rng),
                coeff(rng),
                coeff(rng)
            )
        };
        if rng.random_range(0..2u8) == 0 {
            quad(rng)
        } else {
            format!("({})/({})", quad(rng), quad(rng))
        }
    }
}
