//! Text formats for curves, parametrizations, forms and exponent lists.
//! Every error carries the 1-based column where parsing stopped.

use branchmod::curve::{CharExponents, Parametrization};
use branchmod::exact::{BivariatePoly, Rational, TruncatedSeries};
use branchmod::saito::OneForm;
use branchmod::{Error, Result};
use num_traits::{One, Zero};

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

/// Recursive-descent parser for sums of monomials in the given variables.
struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    /// Column of `s[0]` in the original input, 1-based.
    offset: usize,
    vars: &'a [u8],
}

type Monomial = (Vec<u32>, Rational);

impl<'a> Parser<'a> {
    fn column(&self) -> usize {
        self.offset + self.pos
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

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(self.column(), "expected a number"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits"))
    }

    fn exponent(&mut self) -> Result<u32> {
        let col = self.column();
        self.digits()?
            .parse()
            .map_err(|_| err(col, "exponent out of range"))
    }

    /// `number ['/' number]`
    fn coefficient(&mut self) -> Result<Rational> {
        let num = self.digits()?.to_string();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let col = self.column();
            let den = self.digits()?;
            if den.bytes().all(|b| b == b'0') {
                return Err(err(col, "zero denominator"));
            }
            return format!("{num}/{den}")
                .parse()
                .map_err(|_| err(col, "malformed rational"));
        }
        num.parse().map_err(|_| err(self.column(), "malformed integer"))
    }

    /// `factor ('*' factor)*` where a factor is a number or `var ['^' n]`.
    fn term(&mut self) -> Result<Monomial> {
        let mut exps = vec![0u32; self.vars.len()];
        let mut coeff = Rational::one();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= self.coefficient()?,
                Some(c) if self.vars.contains(&c) => {
                    let k = self.vars.iter().position(|&v| v == c).expect("checked");
                    self.pos += 1;
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.exponent()?
                    } else {
                        1
                    };
                    exps[k] += e;
                }
                Some(c) => {
                    return Err(err(
                        self.column(),
                        format!("unexpected character '{}'", c as char),
                    ))
                }
                None => return Err(err(self.column(), "unexpected end of input")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((exps, coeff));
            }
        }
    }

    /// `['+'|'-'] term (('+'|'-') term)*`
    fn sum(&mut self) -> Result<Vec<Monomial>> {
        let mut out = Vec::new();
        let mut sign = Rational::one();
        match self.peek() {
            Some(b'-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (e, c) = self.term()?;
            out.push((e, c * &sign));
            match self.peek() {
                Some(b'+') => {
                    sign = Rational::one();
                    self.pos += 1;
                }
                Some(b'-') => {
                    sign = -Rational::one();
                    self.pos += 1;
                }
                None => return Ok(out),
                Some(c) => {
                    return Err(err(
                        self.column(),
                        format!("unexpected character '{}'", c as char),
                    ))
                }
            }
        }
    }
}

fn parse_sum(s: &str, offset: usize, vars: &[u8]) -> Result<Vec<Monomial>> {
    if !s.is_ascii() {
        let bad = s.char_indices().find(|(_, c)| !c.is_ascii()).map_or(0, |(i, _)| i);
        return Err(err(offset + bad, "non-ASCII character"));
    }
    Parser {
        s: s.as_bytes(),
        pos: 0,
        offset,
        vars,
    }
    .sum()
}

/// A polynomial in `x` and `y`, e.g. `y^6 - x^7 + 2/3*x^4*y^4`.
pub fn parse_poly(s: &str) -> Result<BivariatePoly> {
    parse_poly_at(s, 1)
}

fn parse_poly_at(s: &str, offset: usize) -> Result<BivariatePoly> {
    let terms = parse_sum(s, offset, b"xy")?;
    Ok(BivariatePoly::from_terms(
        terms.into_iter().map(|(e, c)| ((e[0], e[1]), c)),
    ))
}

/// A polynomial in `t` as `(exponent, coefficient)` pairs.
fn parse_t_poly(s: &str, offset: usize) -> Result<Vec<(usize, Rational)>> {
    let terms = parse_sum(s, offset, b"t")?;
    let mut out: Vec<(usize, Rational)> = Vec::new();
    for (e, c) in terms {
        match out.iter_mut().find(|(k, _)| *k == e[0] as usize) {
            Some((_, acc)) => *acc += c,
            None => out.push((e[0] as usize, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out.sort_by_key(|(k, _)| *k);
    Ok(out)
}

/// Splits `a=...; b=...` into its two right-hand sides with their columns.
fn assignments<'a>(s: &'a str, keys: [&str; 2]) -> Result<[(&'a str, usize); 2]> {
    let mut found: [Option<(&str, usize)>; 2] = [None, None];
    let mut start = 0;
    for part in s.split(';') {
        let col = start + 1;
        start += part.len() + 1;
        if part.trim().is_empty() {
            continue;
        }
        let Some(eq) = part.find('=') else {
            return Err(err(col, "expected 'name=value'"));
        };
        let name = part[..eq].trim();
        let Some(k) = keys.iter().position(|&key| key == name) else {
            return Err(err(col, format!("unknown name '{name}', expected {} or {}", keys[0], keys[1])));
        };
        if found[k].is_some() {
            return Err(err(col, format!("'{name}' given twice")));
        }
        found[k] = Some((&part[eq + 1..], col + eq + 1));
    }
    match found {
        [Some(a), Some(b)] => Ok([a, b]),
        [None, _] => Err(err(s.len() + 1, format!("missing '{}='", keys[0]))),
        [_, None] => Err(err(s.len() + 1, format!("missing '{}='", keys[1]))),
    }
}

/// `x=<poly in t>; y=<poly in t>` as an exact parametrization, with room for
/// at least `precision` coefficients.
pub fn parse_param(s: &str, precision: usize) -> Result<Parametrization> {
    let [(xs, xc), (ys, yc)] = assignments(s, ["x", "y"])?;
    let x = parse_t_poly(xs, xc)?;
    let y = parse_t_poly(ys, yc)?;
    Ok(Parametrization::polynomial(&x, &y, precision))
}

/// `dx=<poly>; dy=<poly>` as the form `A dx + B dy`.
pub fn parse_form(s: &str) -> Result<OneForm> {
    let [(a, ac), (b, bc)] = assignments(s, ["dx", "dy"])?;
    Ok(OneForm::new(parse_poly_at(a, ac)?, parse_poly_at(b, bc)?))
}

/// Comma-separated positive integers, e.g. `5,13`.
pub fn parse_list(s: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    let mut col = 1;
    for part in s.split(',') {
        let t = part.trim();
        let lead = part.len() - part.trim_start().len();
        out.push(
            t.parse::<u64>()
                .map_err(|_| err(col + lead, format!("expected a positive integer, found '{t}'")))?,
        );
        col += part.len() + 1;
    }
    Ok(out)
}

/// Puiseux pairs `(m1,n1),(m2,n2),…`.
pub fn parse_pairs(s: &str) -> Result<Vec<(u64, u64)>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    let skip = |i: &mut usize| {
        while *i < bytes.len() && (bytes[*i].is_ascii_whitespace() || bytes[*i] == b',') {
            *i += 1;
        }
    };
    skip(&mut i);
    while i < bytes.len() {
        if bytes[i] != b'(' {
            return Err(err(i + 1, "expected '('"));
        }
        let Some(close) = s[i..].find(')') else {
            return Err(err(s.len() + 1, "unclosed '('"));
        };
        let inner = &s[i + 1..i + close];
        let nums = parse_list(inner).map_err(|e| match e {
            Error::Parse { position, message } => err(i + 1 + position, message),
            other => other,
        })?;
        if nums.len() != 2 {
            return Err(err(i + 1, "a Puiseux pair has two entries"));
        }
        out.push((nums[0], nums[1]));
        i += close + 1;
        skip(&mut i);
    }
    if out.is_empty() {
        return Err(err(1, "no Puiseux pair given"));
    }
    Ok(out)
}

pub fn parse_char(s: &str) -> Result<CharExponents> {
    CharExponents::new(parse_list(s)?)
}

/// The exact parametrization `x = t^β₀`, `y = Σ_{i>=1} t^{β_i}`.
pub fn characteristic_parametrization(c: &CharExponents, precision: usize) -> Parametrization {
    let b = c.betas();
    let y: Vec<(usize, Rational)> = b[1..].iter().map(|&k| (k as usize, Rational::one())).collect();
    let y = if y.is_empty() {
        vec![(2, Rational::one())]
    } else {
        y
    };
    Parametrization::polynomial(&[(b[0] as usize, Rational::one())], &y, precision)
}

/// Renders an exact series as a polynomial in `t`.
pub fn series_text(s: &TruncatedSeries) -> String {
    s.to_poly_string()
}
