use serde::Deserialize;

use crate::error::{Error, Result};
use crate::ff::{Monomial, PolynomialFp, PrimeField};
use crate::toric::FanData;

/// A parsed polynomial together with its variable table and any warnings.
#[derive(Clone, Debug)]
pub struct PolySource {
    pub raw: String,
    pub vars: Vec<String>,
    pub poly: PolynomialFp,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Caret,
    Star,
    Plus,
    Minus,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            _ if c.is_whitespace() => i += 1,
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(chars[start..i].iter().collect())));
            }
            'A'..='Z' | 'a'..='z' => {
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '(' | ')' => {
                return Err(Error::Parse("implicit product parentheses unsupported".into()));
            }
            _ => {
                return Err(Error::Parse(format!("unknown character '{c}' at position {i}")));
            }
        }
    }
    Ok(out)
}

fn reduce_decimal(digits: &str, p: u64) -> u64 {
    digits
        .bytes()
        .fold(0u64, |acc, d| (acc * 10 + u64::from(d - b'0')) % p)
}

struct RawTerm {
    negative: bool,
    coeff: u64,
    factors: Vec<(usize, u32)>,
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    p: u64,
    vars: Vec<String>,
    fixed_vars: bool,
    warnings: Vec<String>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn where_(&self) -> String {
        match self.toks.get(self.pos) {
            Some((at, _)) => format!("position {at}"),
            None => "end of input".into(),
        }
    }

    fn var_index(&mut self, name: &str) -> Result<usize> {
        if let Some(i) = self.vars.iter().position(|v| v == name) {
            return Ok(i);
        }
        if self.fixed_vars {
            return Err(Error::Parse(format!("unknown variable '{name}'")));
        }
        self.vars.push(name.to_string());
        Ok(self.vars.len() - 1)
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return Err(Error::Parse(format!("expected a variable at {}", self.where_())));
        };
        self.pos += 1;
        let idx = self.var_index(&name)?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok((idx, 1));
        }
        self.pos += 1;
        let Some(Tok::Int(digits)) = self.peek().cloned() else {
            return Err(Error::Parse(format!("expected an exponent at {}", self.where_())));
        };
        self.pos += 1;
        let exp: u32 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("exponent {digits} too large")))?;
        if exp == 0 {
            self.warnings
                .push(format!("{name}^0 treated as 1; write the factor absent instead"));
        }
        Ok((idx, exp))
    }

    fn term(&mut self, negative: bool) -> Result<RawTerm> {
        let mut coeff = 1u64;
        let mut factors = Vec::new();
        let mut had_int = false;
        if let Some(Tok::Int(digits)) = self.peek().cloned() {
            self.pos += 1;
            coeff = reduce_decimal(&digits, self.p);
            had_int = true;
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    factors.push(self.factor()?);
                }
                Some(Tok::Ident(_)) => factors.push(self.factor()?),
                _ => {}
            }
        } else {
            factors.push(self.factor()?);
        }
        if !had_int || !factors.is_empty() {
            loop {
                match self.peek() {
                    Some(Tok::Star) => {
                        self.pos += 1;
                        factors.push(self.factor()?);
                    }
                    Some(Tok::Ident(_)) => factors.push(self.factor()?),
                    _ => break,
                }
            }
        }
        Ok(RawTerm {
            negative,
            coeff,
            factors,
        })
    }

    fn polynomial(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            terms.push(self.term(negative)?);
            match self.peek() {
                None => break,
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                Some(t) => {
                    return Err(Error::Parse(format!(
                        "unexpected {} at {}",
                        describe(t),
                        self.where_()
                    )))
                }
            }
            self.pos += 1;
        }
        Ok(terms)
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(s) => format!("integer {s}"),
        Tok::Ident(s) => format!("identifier {s}"),
        Tok::Caret => "'^'".into(),
        Tok::Star => "'*'".into(),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
    }
}

/// Parses `text` over `F_p` with variables in first-appearance order.
pub fn parse_polynomial(text: &str, p: u64) -> Result<PolySource> {
    parse_polynomial_with_vars(text, p, None)
}

/// Parses `text` over `F_p`; with `vars`, the ring has exactly those
/// variables in that order and any other identifier is an error.
pub fn parse_polynomial_with_vars(text: &str, p: u64, vars: Option<&[String]>) -> Result<PolySource> {
    let field = PrimeField::new(p)?;
    if let Some(vs) = vars {
        for (i, v) in vs.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric());
            if !ok {
                return Err(Error::Parse(format!("invalid variable name '{v}'")));
            }
            if vs[..i].contains(v) {
                return Err(Error::Parse(format!("variable '{v}' listed twice")));
            }
        }
    }
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        p,
        vars: vars.map(<[String]>::to_vec).unwrap_or_default(),
        fixed_vars: vars.is_some(),
        warnings: Vec::new(),
    };
    let raw = parser.polynomial()?;
    let nvars = parser.vars.len().max(1);
    let mut terms = Vec::with_capacity(raw.len());
    for (k, t) in raw.iter().enumerate() {
        if t.coeff == 0 {
            parser
                .warnings
                .push(format!("coefficient of term {} is 0 mod {p}; term dropped", k + 1));
            continue;
        }
        let mut exps = vec![0u32; nvars];
        for &(i, a) in &t.factors {
            exps[i] = exps[i]
                .checked_add(a)
                .ok_or_else(|| Error::Parse("exponent overflow".into()))?;
        }
        let c = if t.negative { (p - t.coeff) % p } else { t.coeff };
        terms.push((Monomial::new(&exps), c));
    }
    let poly = PolynomialFp::from_terms(field, nvars, terms);
    if poly.is_zero() {
        return Err(Error::Parse("zero polynomial".into()));
    }
    let vars = if parser.vars.is_empty() {
        vec!["x0".to_string()]
    } else {
        parser.vars
    };
    Ok(PolySource {
        raw: text.to_string(),
        vars,
        poly,
        warnings: parser.warnings,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FanJson {
    dim: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
}

/// Parses `{"dim": d, "rays": [[…]], "cones": [[…]]}` into a validated fan.
pub fn parse_fan(bytes: &[u8]) -> Result<FanData> {
    let raw: FanJson =
        serde_json::from_slice(bytes).map_err(|e| Error::Parse(format!("fan JSON: {e}")))?;
    FanData::new(raw.dim, raw.rays, raw.cones)
}

/// `--e` syntax: `n` or inclusive `a..b`.
pub fn parse_e_range(text: &str) -> Result<(u32, u32)> {
    let bad = || Error::Parse(format!("invalid level '{text}'; expected n or a..b"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let n = text.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_style_examples() {
        let s = parse_polynomial("x0^3+x1^3+x2^3+x3^3", 5).unwrap();
        assert_eq!(s.poly.num_terms(), 4);
        assert_eq!(s.poly.homogeneous_degree(), Some(3));
        let s = parse_polynomial("x^2 - y^2", 7).unwrap();
        assert_eq!(s.vars, vec!["x", "y"]);
        assert_eq!(s.poly.coefficient(&Monomial::new(&[2, 0])), 1);
        assert_eq!(s.poly.coefficient(&Monomial::new(&[0, 2])), 6);
        let err = parse_polynomial("x^2(z^3-w^3)", 11).unwrap_err();
        assert_eq!(err, Error::Parse("implicit product parentheses unsupported".into()));
        let s = parse_polynomial("x^2*z^3 - x^2*w^3", 11).unwrap();
        assert_eq!(s.poly.num_terms(), 2);
    }

    #[test]
    fn errors_and_warnings() {
        assert_eq!(parse_polynomial("   ", 5).unwrap_err(), Error::Parse("empty input".into()));
        assert_eq!(parse_polynomial("x - x", 5).unwrap_err(), Error::Parse("zero polynomial".into()));
        assert!(parse_polynomial("x # y", 5).unwrap_err().to_string().contains("unknown character"));
        let s = parse_polynomial("5*x^2 + y^2 + z^0*w", 5).unwrap();
        assert_eq!(s.warnings.len(), 2);
        assert_eq!(s.poly.num_terms(), 2);
        assert!(parse_polynomial("x^", 5).is_err());
        assert!(parse_polynomial("x +", 5).is_err());
        assert!(parse_polynomial("2 3", 5).is_err());
        let vars = vec!["a".to_string(), "b".to_string()];
        assert!(parse_polynomial_with_vars("a + c", 5, Some(&vars)).is_err());
        let s = parse_polynomial_with_vars("b^2", 5, Some(&vars)).unwrap();
        assert_eq!(s.poly.nvars(), 2);
    }

    #[test]
    fn implicit_products_and_constants() {
        let s = parse_polynomial("3 x y^2 + 2*x*x*y*y - 7", 11).unwrap();
        assert_eq!(s.poly.coefficient(&Monomial::new(&[1, 2])), 3);
        assert_eq!(s.poly.coefficient(&Monomial::new(&[2, 2])), 2);
        assert_eq!(s.poly.coefficient(&Monomial::new(&[0, 0])), 4);
    }

    #[test]
    fn fans() {
        let p2 = br#"{"dim":2,"rays":[[1,0],[0,1],[-1,-1]],"cones":[[0,1],[1,2],[2,0]]}"#;
        assert_eq!(parse_fan(p2).unwrap().rays().len(), 3);
        let bad = br#"{"dim":2,"rays":[[2,2],[-1,0]],"cones":[[0,1]]}"#;
        assert_eq!(parse_fan(bad).unwrap_err().to_string(), "invalid input: ray 0 not primitive");
        let bad = br#"{"dim":2,"rays":[[1,0],[0,1],[-1,-1]],"cones":[[0,1,2]]}"#;
        assert!(parse_fan(bad).unwrap_err().to_string().contains("cone 0 has 3 rays, expected 2"));
        assert!(matches!(parse_fan(b"{\"dim\":2"), Err(Error::Parse(_))));
    }

    #[test]
    fn e_ranges() {
        assert_eq!(parse_e_range("2").unwrap(), (2, 2));
        assert_eq!(parse_e_range("1..3").unwrap(), (1, 3));
        assert!(parse_e_range("0").is_err());
        assert!(parse_e_range("3..1").is_err());
        assert!(parse_e_range("x").is_err());
    }
}
