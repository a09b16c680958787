//! Sparse homogeneous polynomials over Q in n+1 variables x0..xn, with a
//! text grammar, canonical primitive representatives, exact multiplication
//! and evaluation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;

pub use crate::combinatorics::MultiIndex;
use crate::combinatorics::compositions;
use crate::error::{Error, Result};

/// Homogeneous polynomial; `terms` holds nonzero coefficients only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogPoly {
    n: u32,
    degree: u32,
    terms: BTreeMap<MultiIndex, BigRational>,
}

impl HomogPoly {
    /// Build from (index, coefficient) pairs; all indices must share one
    /// degree and have n+1 parts. Zero coefficients are dropped.
    pub fn from_terms<I>(n: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, BigRational)>,
    {
        let mut map = BTreeMap::new();
        let mut degree: Option<u32> = None;
        for (idx, c) in terms {
            if idx.len() != n as usize + 1 {
                return Err(Error::DimensionMismatch(idx.len() as u32, n + 1));
            }
            let d = idx.degree();
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => {
                    return Err(Error::MixedDegree { first: d0, second: d })
                }
                _ => {}
            }
            if !c.is_zero() {
                *map.entry(idx).or_insert_with(BigRational::zero) += c;
            }
        }
        map.retain(|_, c| !c.is_zero());
        let degree = degree.unwrap_or(0);
        if map.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(HomogPoly { n, degree, terms: map })
    }

    /// Single monomial c * x^I.
    pub fn monomial(n: u32, idx: MultiIndex, c: BigRational) -> Result<Self> {
        Self::from_terms(n, [(idx, c)])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending numeric-lex key order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &MultiIndex) -> BigRational {
        self.terms.get(idx).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Leading (largest in monomial lex order) term.
    pub fn leading(&self) -> (&MultiIndex, &BigRational) {
        self.terms.iter().next_back().expect("nonzero polynomial")
    }

    /// Coefficient vector over all degree-d monomials in monomial-lex
    /// (descending numeric-lex) column order.
    pub fn coeff_vector(&self) -> Vec<BigRational> {
        compositions(self.n, self.degree)
            .map(|idx| self.coeff(&idx))
            .collect()
    }

    pub fn is_primitive(&self) -> bool {
        let mut gcd = BigInt::zero();
        for c in self.terms.values() {
            if !c.denom().is_one() {
                return false;
            }
            gcd = gcd.gcd(c.numer());
        }
        gcd.is_one() && self.leading().1.is_positive()
    }

    /// The canonical scalar multiple with coprime integer coefficients and
    /// positive lex-leading coefficient. Idempotent.
    pub fn normalize_primitive(&self) -> HomogPoly {
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut numer_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c * BigRational::from_integer(denom_lcm.clone());
            debug_assert!(scaled.denom().is_one());
            numer_gcd = numer_gcd.gcd(scaled.numer());
        }
        let mut scale = BigRational::new(denom_lcm, numer_gcd);
        if !(self.leading().1 * &scale).is_positive() {
            scale = -scale;
        }
        let terms: BTreeMap<_, _> = self
            .terms
            .iter()
            .map(|(i, c)| (i.clone(), c * &scale))
            .collect();
        HomogPoly { n: self.n, degree: self.degree, terms }
    }

    /// Exact product; degrees add. Both factors must share the ambient n.
    pub fn mul(&self, other: &HomogPoly) -> Result<HomogPoly> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let mut map: BTreeMap<MultiIndex, BigRational> = BTreeMap::new();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let k = i.add(j);
                *map.entry(k).or_insert_with(BigRational::zero) += a * b;
            }
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(HomogPoly {
            n: self.n,
            degree: self.degree + other.degree,
            terms: map,
        })
    }

    /// Exact value at integer coordinates (length n+1).
    pub fn evaluate_int(&self, coords: &[BigInt]) -> Result<BigRational> {
        if coords.len() != self.n as usize + 1 {
            return Err(Error::DimensionMismatch(coords.len() as u32, self.n + 1));
        }
        let mut total = BigRational::zero();
        for (idx, c) in &self.terms {
            let mut m = BigInt::one();
            for (x, &e) in coords.iter().zip(idx.parts()) {
                m *= x.pow(e);
            }
            total += c * BigRational::from_integer(m);
        }
        Ok(total)
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = idx
                .parts()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        format!("x{v}")
                    } else {
                        format!("x{v}^{e}")
                    }
                })
                .collect();
            let coeff_str = if mag.denom().is_one() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            if vars.is_empty() {
                write!(f, "{coeff_str}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff_str, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(u32),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next_tok(&mut self) -> Result<(usize, Tok)> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((start, Tok::End));
        }
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'/' => {
                self.pos += 1;
                Tok::Slash
            }
            b'x' | b'X' => {
                self.pos += 1;
                let d = self.read_digits(start)?;
                Tok::Var(d.try_into().map_err(|_| Error::Parse {
                    pos: start,
                    msg: "variable index too large".into(),
                })?)
            }
            b'0'..=b'9' => {
                let d = self.read_digits(start)?;
                Tok::Num(BigInt::from(d) * BigInt::one())
            }
            other => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character `{}`", other as char),
                })
            }
        };
        Ok((start, tok))
    }

    fn read_digits(&mut self, err_pos: usize) -> Result<u128> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse { pos: err_pos, msg: "expected digits".into() });
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse { pos: err_pos, msg: "number too large".into() })
    }
}

/// Parse the polynomial grammar: signed terms `c*x0^a0*...*xn^an` with
/// integer or `p/q` coefficients; `^1` and `*` are optional; whitespace is
/// ignored.
pub fn parse_poly(text: &str, n: u32) -> Result<HomogPoly> {
    let mut lx = Lexer::new(text);
    let mut terms: Vec<(MultiIndex, BigRational)> = Vec::new();
    let mut degrees: Vec<(u32, usize)> = Vec::new();

    let (mut pos, mut tok) = lx.next_tok()?;
    if tok == Tok::End {
        return Err(Error::Parse { pos, msg: "empty polynomial".into() });
    }
    loop {
        // sign
        let mut sign = BigInt::one();
        loop {
            match tok {
                Tok::Plus => {}
                Tok::Minus => sign = -sign,
                _ => break,
            }
            let t = lx.next_tok()?;
            pos = t.0;
            tok = t.1;
        }
        let term_pos = pos;
        // coefficient
        let mut coeff = BigRational::from_integer(sign);
        let mut saw_anything = false;
        if let Tok::Num(v) = &tok {
            coeff *= BigRational::from_integer(v.clone());
            saw_anything = true;
            let t = lx.next_tok()?;
            pos = t.0;
            tok = t.1;
            if tok == Tok::Slash {
                let t = lx.next_tok()?;
                pos = t.0;
                tok = t.1;
                match &tok {
                    Tok::Num(d) if !d.is_zero() => {
                        coeff /= BigRational::from_integer(d.clone());
                        let t = lx.next_tok()?;
                        pos = t.0;
                        tok = t.1;
                    }
                    _ => {
                        return Err(Error::Parse {
                            pos,
                            msg: "expected nonzero denominator after `/`".into(),
                        })
                    }
                }
            }
        }
        // variable factors
        let mut exps = vec![0u32; n as usize + 1];
        loop {
            if tok == Tok::Star {
                let t = lx.next_tok()?;
                pos = t.0;
                tok = t.1;
                continue;
            }
            if let Tok::Var(v) = tok {
                if v > n {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("variable x{v} out of range (n = {n})"),
                    });
                }
                saw_anything = true;
                let t = lx.next_tok()?;
                pos = t.0;
                tok = t.1;
                let mut e = 1u32;
                if tok == Tok::Caret {
                    let t = lx.next_tok()?;
                    pos = t.0;
                    tok = t.1;
                    match &tok {
                        Tok::Num(v) => {
                            e = v.to_u32().ok_or(Error::Parse {
                                pos,
                                msg: "exponent too large".into(),
                            })?;
                            let t = lx.next_tok()?;
                            pos = t.0;
                            tok = t.1;
                        }
                        _ => {
                            return Err(Error::Parse {
                                pos,
                                msg: "expected exponent after `^`".into(),
                            })
                        }
                    }
                }
                exps[v as usize] += e;
                continue;
            }
            break;
        }
        if !saw_anything {
            return Err(Error::Parse {
                pos: term_pos,
                msg: "expected a coefficient or variable".into(),
            });
        }
        let idx = MultiIndex::new(exps);
        degrees.push((idx.degree(), term_pos));
        terms.push((idx, coeff));

        match tok {
            Tok::End => break,
            Tok::Plus | Tok::Minus => continue,
            _ => {
                return Err(Error::Parse {
                    pos,
                    msg: "expected `+`, `-`, or end of input".into(),
                })
            }
        }
    }

    // homogeneity check with both offending degrees
    if let Some(&(d0, _)) = degrees.first() {
        for &(d, _) in &degrees {
            if d != d0 {
                return Err(Error::MixedDegree { first: d0, second: d });
            }
        }
    }
    HomogPoly::from_terms(n, terms)
}

/// Dense random integer form of degree `d` (coefficients in [-9,9] \ {0}),
/// returned as its primitive representative. Used by the randomized suites.
pub fn random_primitive_form<R: Rng>(rng: &mut R, n: u32, d: u32) -> HomogPoly {
    loop {
        let terms: Vec<(MultiIndex, BigRational)> = compositions(n, d)
            .map(|idx| {
                let mut c = 0i64;
                while c == 0 {
                    c = rng.gen_range(-9..=9);
                }
                (idx, BigRational::from_integer(BigInt::from(c)))
            })
            .collect();
        if let Ok(p) = HomogPoly::from_terms(n, terms) {
            return p.normalize_primitive();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> BigRational {
        crate::num::parse_rational(s).unwrap()
    }

    #[test]
    fn parse_basic() {
        let f = parse_poly("x0^2 + x1^2 - x2^2", 2).unwrap();
        assert_eq!(f.degree(), 2);
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.coeff(&MultiIndex::new(vec![0, 0, 2])), rat("-1"));
    }

    #[test]
    fn parse_rational_coeff() {
        let f = parse_poly("1/2*x0*x1", 1).unwrap();
        assert_eq!(f.coeff(&MultiIndex::new(vec![1, 1])), rat("1/2"));
        // `*` optional
        let g = parse_poly("1/2 x0 x1", 1).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn parse_mixed_degree_rejected() {
        match parse_poly("x0^2 + x1", 1) {
            Err(Error::MixedDegree { first: 2, second: 1 }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_poly("x0^2 + ?", 1) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("x5", 2).is_err());
        assert!(parse_poly("", 1).is_err());
    }

    #[test]
    fn normalize_examples() {
        let f = parse_poly("1/2*x0*x1", 1).unwrap().normalize_primitive();
        assert_eq!(f, parse_poly("x0*x1", 1).unwrap());

        let g = parse_poly("6x0^2 + 4x1^2", 1).unwrap().normalize_primitive();
        assert_eq!(g, parse_poly("3x0^2 + 2x1^2", 1).unwrap());

        let h = parse_poly("-x0^2", 1).unwrap().normalize_primitive();
        assert_eq!(h, parse_poly("x0^2", 1).unwrap());
        assert!(h.is_primitive());
        assert_eq!(h.normalize_primitive(), h);
    }

    #[test]
    fn mul_examples() {
        let x0 = parse_poly("x0", 1).unwrap();
        let x1 = parse_poly("x1", 1).unwrap();
        assert_eq!(x0.mul(&x1).unwrap(), parse_poly("x0*x1", 1).unwrap());

        let s = parse_poly("x0+x1", 1).unwrap();
        assert_eq!(
            s.mul(&s).unwrap(),
            parse_poly("x0^2 + 2*x0*x1 + x1^2", 1).unwrap()
        );
    }

    #[test]
    fn evaluate_examples() {
        let conic = parse_poly("x0^2 + x1^2 - x2^2", 2).unwrap();
        let v = conic
            .evaluate_int(&[BigInt::from(3), BigInt::from(4), BigInt::from(5)])
            .unwrap();
        assert!(v.is_zero());

        let x0 = parse_poly("x0", 1).unwrap();
        assert!(x0
            .evaluate_int(&[BigInt::zero(), BigInt::one()])
            .unwrap()
            .is_zero());
    }

    #[test]
    fn display_roundtrip() {
        for s in [
            "x0^2 + x1^2 - x2^2",
            "3*x0^2 + 2*x1^2",
            "1/2*x0*x1 - 7/3*x1^2",
            "x0^3 + x1^3 + 1000000000000000000000000000000*x2^3",
        ] {
            let n = if s.contains("x2") { 2 } else { 1 };
            let f = parse_poly(s, n).unwrap();
            let g = parse_poly(&f.to_string(), n).unwrap();
            assert_eq!(f, g, "{s} -> {f}");
        }
    }
}
