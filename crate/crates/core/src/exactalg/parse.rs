//! Canonical textual form for ring elements and its parser.
//!
//! Grammar: a sum of terms; each term a rational coefficient times factors
//! `e[a,b,..]` (character, simple-root coordinates), `a[p1,p2,..]`
//! (cohomology root-variable monomial), `q^{r}` (r integer or half-integer),
//! `y^n`, `h^n`.  Fractions print as `(num)/(den)`.  Printer and parser are
//! mutually inverse on canonical forms.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::Error;
use crate::weyl::{Rat, RootSystem};

use super::poly::{ExpKey, LaurentPoly};
use super::ratfunc::RatFunc;

/// Which ring the lattice slot of the exponent key refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarMode {
    /// Characters e^λ, λ in the weight lattice.
    KTheory,
    /// Polynomial variables a_i (the simple roots) and ħ.
    Cohomology,
}

fn rat_str(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn term_body(rs: &RootSystem, mode: VarMode, key: &ExpKey) -> Vec<String> {
    let mut factors = vec![];
    if key.lam.iter().any(|&a| a != 0) {
        match mode {
            VarMode::KTheory => {
                let lam: Vec<Rat> = key.lam.iter().map(|&a| Rat::from_integer(a.into())).collect();
                let alpha = rs.weight_to_alpha(&lam);
                let coords: Vec<String> = alpha.iter().map(rat_str).collect();
                factors.push(format!("e[{}]", coords.join(",")));
            }
            VarMode::Cohomology => {
                let coords: Vec<String> = key.lam.iter().map(|a| a.to_string()).collect();
                factors.push(format!("a[{}]", coords.join(",")));
            }
        }
    }
    if key.q2 != 0 {
        if key.q2 == 2 {
            factors.push("q".to_string());
        } else {
            let r = Rat::new(BigInt::from(key.q2), BigInt::from(2));
            factors.push(format!("q^{{{}}}", rat_str(&r)));
        }
    }
    if key.y != 0 {
        if key.y == 1 {
            factors.push("y".to_string());
        } else {
            factors.push(format!("y^{}", key.y));
        }
    }
    if key.h != 0 {
        if key.h == 1 {
            factors.push("h".to_string());
        } else {
            factors.push(format!("h^{}", key.h));
        }
    }
    factors
}

pub fn render_poly(rs: &RootSystem, mode: VarMode, p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (key, coeff)) in p.terms.iter().enumerate() {
        let neg = coeff.is_negative();
        let mag = coeff.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let factors = term_body(rs, mode, key);
        if factors.is_empty() {
            out.push_str(&rat_str(&mag));
        } else if mag.is_one() {
            out.push_str(&factors.join("*"));
        } else {
            out.push_str(&rat_str(&mag));
            out.push('*');
            out.push_str(&factors.join("*"));
        }
    }
    out
}

pub fn render_ratfunc(rs: &RootSystem, mode: VarMode, f: &RatFunc) -> String {
    let f = f.normal_form();
    if f.den.is_one() {
        render_poly(rs, mode, &f.num)
    } else {
        format!("({})/({})", render_poly(rs, mode, &f.num), render_poly(rs, mode, &f.den))
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Lexer { s: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<(), Error> {
        match self.bump() {
            Some(x) if x == c => Ok(()),
            other => Err(Error::Parse(format!(
                "expected '{}', found {:?}",
                c as char,
                other.map(|b| b as char)
            ))),
        }
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') || self.s.get(self.pos) == Some(&b'+') {
            self.pos += 1;
        }
        let dstart = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == dstart {
            return Err(Error::Parse("expected a number".into()));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse("bad integer".into()))
    }

    fn rational(&mut self) -> Result<Rat, Error> {
        let n = self.integer()?;
        if self.peek() == Some(b'/') {
            // only treat as a fraction when a digit follows
            let save = self.pos;
            self.pos += 1;
            match self.integer() {
                Ok(d) if !d.is_zero() => return Ok(BigRational::new(n, d)),
                _ => self.pos = save,
            }
        }
        Ok(BigRational::from_integer(n))
    }
}

fn parse_exponent(lx: &mut Lexer) -> Result<Rat, Error> {
    // after '^': either {rat} or a bare rational
    if lx.peek() == Some(b'{') {
        lx.bump();
        let r = lx.rational()?;
        lx.expect(b'}')?;
        Ok(r)
    } else {
        lx.rational()
    }
}

fn parse_bracket_list(lx: &mut Lexer) -> Result<Vec<Rat>, Error> {
    lx.expect(b'[')?;
    let mut out = vec![lx.rational()?];
    while lx.peek() == Some(b',') {
        lx.bump();
        out.push(lx.rational()?);
    }
    lx.expect(b']')?;
    Ok(out)
}

fn parse_factor(
    rs: &RootSystem,
    mode: VarMode,
    lx: &mut Lexer,
) -> Result<LaurentPoly, Error> {
    let rank = rs.rank;
    match lx.peek() {
        Some(b'e') => {
            lx.bump();
            let alpha = parse_bracket_list(lx)?;
            if alpha.len() != rank {
                return Err(Error::Parse(format!(
                    "expected {} coordinates in e[..]",
                    rank
                )));
            }
            if mode != VarMode::KTheory {
                return Err(Error::Parse("characters e[..] are K-theory elements".into()));
            }
            let lamw = rs.alpha_to_weight(&alpha);
            let lam: Vec<i64> = lamw
                .iter()
                .map(|v| {
                    if v.is_integer() {
                        i64::try_from(v.to_integer())
                            .map_err(|_| Error::Parse("weight coordinate overflow".into()))
                    } else {
                        Err(Error::Parse("weight not in the weight lattice".into()))
                    }
                })
                .collect::<Result<_, _>>()?;
            Ok(LaurentPoly::e_weight(rank, &lam))
        }
        Some(b'a') => {
            lx.bump();
            let pows = parse_bracket_list(lx)?;
            if pows.len() != rank {
                return Err(Error::Parse(format!(
                    "expected {} exponents in a[..]",
                    rank
                )));
            }
            if mode != VarMode::Cohomology {
                return Err(Error::Parse("a[..] monomials are cohomology elements".into()));
            }
            let lam: Vec<i64> = pows
                .iter()
                .map(|v| {
                    if v.is_integer() {
                        i64::try_from(v.to_integer())
                            .map_err(|_| Error::Parse("exponent overflow".into()))
                    } else {
                        Err(Error::Parse("variable exponents must be integers".into()))
                    }
                })
                .collect::<Result<_, _>>()?;
            Ok(LaurentPoly::monomial(
                rank,
                ExpKey { lam, q2: 0, y: 0, h: 0 },
                Rat::one(),
            ))
        }
        Some(b'q') => {
            lx.bump();
            let mut q2 = 2i64;
            if lx.peek() == Some(b'^') {
                lx.bump();
                let r = parse_exponent(lx)?;
                let doubled = r * Rat::from_integer(2.into());
                if !doubled.is_integer() {
                    return Err(Error::Parse("q exponent must be a half-integer".into()));
                }
                q2 = i64::try_from(doubled.to_integer())
                    .map_err(|_| Error::Parse("q exponent overflow".into()))?;
            }
            Ok(LaurentPoly::q_half(rank, q2))
        }
        Some(b'y') => {
            lx.bump();
            let mut n = 1i64;
            if lx.peek() == Some(b'^') {
                lx.bump();
                let r = parse_exponent(lx)?;
                if !r.is_integer() {
                    return Err(Error::Parse("y exponent must be an integer".into()));
                }
                n = i64::try_from(r.to_integer())
                    .map_err(|_| Error::Parse("y exponent overflow".into()))?;
            }
            Ok(LaurentPoly::y_pow(rank, n))
        }
        Some(b'h') => {
            lx.bump();
            let mut n = 1i64;
            if lx.peek() == Some(b'^') {
                lx.bump();
                let r = parse_exponent(lx)?;
                if !r.is_integer() {
                    return Err(Error::Parse("h exponent must be an integer".into()));
                }
                n = i64::try_from(r.to_integer())
                    .map_err(|_| Error::Parse("h exponent overflow".into()))?;
            }
            Ok(LaurentPoly::monomial(
                rank,
                ExpKey { lam: vec![0; rank], q2: 0, y: 0, h: n },
                Rat::one(),
            ))
        }
        Some(c) if c.is_ascii_digit() => {
            let r = lx.rational()?;
            Ok(LaurentPoly::constant(rank, r))
        }
        other => Err(Error::Parse(format!(
            "unexpected {:?} in element",
            other.map(|b| b as char)
        ))),
    }
}

fn parse_term(rs: &RootSystem, mode: VarMode, lx: &mut Lexer) -> Result<LaurentPoly, Error> {
    let mut p = parse_factor(rs, mode, lx)?;
    while lx.peek() == Some(b'*') {
        lx.bump();
        p = p.mul(&parse_factor(rs, mode, lx)?);
    }
    Ok(p)
}

fn parse_sum(rs: &RootSystem, mode: VarMode, lx: &mut Lexer) -> Result<LaurentPoly, Error> {
    let mut neg = false;
    if lx.peek() == Some(b'-') {
        lx.bump();
        neg = true;
    } else if lx.peek() == Some(b'+') {
        lx.bump();
    }
    let first = parse_term(rs, mode, lx)?;
    let mut p = if neg { first.neg() } else { first };
    loop {
        match lx.peek() {
            Some(b'+') => {
                lx.bump();
                p = p.add(&parse_term(rs, mode, lx)?);
            }
            Some(b'-') => {
                lx.bump();
                p = p.sub(&parse_term(rs, mode, lx)?);
            }
            _ => break,
        }
    }
    Ok(p)
}

pub fn parse_poly(rs: &RootSystem, mode: VarMode, s: &str) -> Result<LaurentPoly, Error> {
    let mut lx = Lexer::new(s);
    if lx.peek() == Some(b'0') {
        // lone zero
        let save = lx.pos;
        lx.bump();
        if lx.peek().is_none() {
            return Ok(LaurentPoly::zero(rs.rank));
        }
        lx.pos = save;
    }
    let p = parse_sum(rs, mode, &mut lx)?;
    if let Some(c) = lx.peek() {
        return Err(Error::Parse(format!("trailing input at '{}'", c as char)));
    }
    Ok(p)
}

pub fn parse_ratfunc(rs: &RootSystem, mode: VarMode, s: &str) -> Result<RatFunc, Error> {
    let t = s.trim();
    // try the fraction shape (num)/(den) with balanced parentheses
    if t.starts_with('(') {
        let mut depth = 0usize;
        for (i, c) in t.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        let rest = t[i + 1..].trim_start();
                        if let Some(d) = rest.strip_prefix('/') {
                            let d = d.trim();
                            if d.starts_with('(') && d.ends_with(')') {
                                let num = parse_poly(rs, mode, &t[1..i])?;
                                let den = parse_poly(rs, mode, &d[1..d.len() - 1])?;
                                if den.is_zero() {
                                    return Err(Error::Parse("zero denominator".into()));
                                }
                                return Ok(RatFunc::new(num, den));
                            }
                        }
                        break;
                    }
                }
                _ => {}
            }
        }
    }
    Ok(RatFunc::from_poly(parse_poly(rs, mode, t)?))
}
