//! Monomials, homogeneous polynomials and ideals, with the ideal file format.
//!
//! ```text
//! vars 4
//! field rational
//! x0*x2 - x1^2
//! x0*x3 - x1*x2
//! x1*x3 - x2^2
//! ```
//!
//! `field` is optional. Coefficients may be integers or `a/b`, written before
//! the variables with or without `*`. `#` starts a comment.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::field::{Field, FieldSpec, PrimeField};
use crate::format::{parse_rational, ParseError, ParseErrorKind};
use crate::table::Rational;

/// Exponent vector over `x_0, …, x_r`. Ordered by degree, then
/// lexicographically with `x_0 > x_1 > …` (graded lex).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn variable(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of degree `q` in `n` variables, largest first.
pub fn monomials_of_degree(num_vars: usize, q: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if num_vars == 0 {
        if q == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(0, q, &mut vec![0; num_vars], &mut out);
    out
}

/// Polynomial with exact rational coefficients and no zero terms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Polynomial::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from largest to smallest monomial.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Homogeneous ideal in `k[x_0, …, x_r]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub num_vars: usize,
    pub field: FieldSpec,
    pub generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(num_vars: usize, field: FieldSpec, generators: Vec<Polynomial>) -> Self {
        Ideal {
            num_vars,
            field,
            generators,
        }
    }

    /// Parses generator strings with the given variable count; convenience for tests and docs.
    pub fn from_strs(num_vars: usize, field: FieldSpec, gens: &[&str]) -> Result<Self, ParseError> {
        let mut text = format!("vars {num_vars}\nfield {field}\n");
        for g in gens {
            text.push_str(g);
            text.push('\n');
        }
        parse_ideal(&text)
    }

    pub fn with_field(&self, field: FieldSpec) -> Ideal {
        Ideal {
            field,
            ..self.clone()
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vars {}", self.num_vars)?;
        writeln!(f, "field {}", self.field)?;
        for g in &self.generators {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Parses an ideal file.
pub fn parse_ideal(text: &str) -> Result<Ideal, ParseError> {
    let mut num_vars = None;
    let mut field = None;
    let mut gens = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix("vars") {
            let n: usize = rest.trim().parse().map_err(|_| {
                ParseError::new(
                    line_no,
                    indent + 1,
                    ParseErrorKind::UnexpectedToken(trimmed.to_string()),
                )
            })?;
            if n == 0 || num_vars.is_some() {
                return Err(ParseError::new(
                    line_no,
                    indent + 1,
                    ParseErrorKind::UnexpectedToken(trimmed.to_string()),
                ));
            }
            num_vars = Some(n);
            continue;
        }
        let Some(n) = num_vars else {
            return Err(ParseError::new(
                line_no,
                indent + 1,
                ParseErrorKind::MissingVars,
            ));
        };
        if let Some(rest) = trimmed.strip_prefix("field") {
            let spec = FieldSpec::parse(rest).ok_or_else(|| {
                ParseError::new(
                    line_no,
                    indent + 7,
                    ParseErrorKind::BadField(rest.trim().to_string()),
                )
            })?;
            field = Some(spec);
            continue;
        }
        let poly = parse_polynomial(content, n, line_no)?;
        if poly.is_zero() {
            return Err(ParseError::new(
                line_no,
                indent + 1,
                ParseErrorKind::ZeroGenerator,
            ));
        }
        check_homogeneous(&poly, line_no, indent + 1)?;
        gens.push(poly);
    }
    let num_vars = num_vars.ok_or_else(|| ParseError::new(1, 1, ParseErrorKind::MissingVars))?;
    let field = field.unwrap_or_default();
    if let FieldSpec::Prime(p) = field {
        let f = PrimeField::new(p).expect("validated by FieldSpec::parse");
        for g in &gens {
            for (_, c) in g.terms() {
                if f.embed_rational(c).is_none() {
                    return Err(ParseError::new(
                        1,
                        1,
                        ParseErrorKind::CoefficientNotInField(c.to_string()),
                    ));
                }
            }
        }
    }
    Ok(Ideal::new(num_vars, field, gens))
}

fn check_homogeneous(poly: &Polynomial, line: usize, column: usize) -> Result<(), ParseError> {
    let mut degs = poly.terms().map(|(m, _)| m.degree());
    let first = degs.next().expect("nonzero");
    if let Some(other) = degs.find(|&d| d != first) {
        return Err(ParseError::new(
            line,
            column,
            ParseErrorKind::NonHomogeneous(first, other),
        ));
    }
    if first == 0 {
        return Err(ParseError::new(
            line,
            column,
            ParseErrorKind::ConstantGenerator,
        ));
    }
    Ok(())
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError::new(self.line, self.pos + 1, kind)
    }

    fn token_here(&self) -> String {
        let rest = &self.src[self.pos..];
        let end = rest
            .iter()
            .position(|b| b.is_ascii_whitespace() || matches!(b, b'+' | b'-'))
            .unwrap_or(rest.len())
            .max(1);
        String::from_utf8_lossy(&rest[..end.min(rest.len())]).into_owned()
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }
}

fn parse_polynomial(line: &str, num_vars: usize, line_no: usize) -> Result<Polynomial, ParseError> {
    let mut cur = Cursor {
        src: line.as_bytes(),
        pos: 0,
        line: line_no,
    };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        cur.skip_ws();
        let Some(b) = cur.peek() else { break };
        let negative = match b {
            b'+' => {
                cur.pos += 1;
                false
            }
            b'-' => {
                cur.pos += 1;
                true
            }
            _ if first => false,
            _ => return Err(cur.err(ParseErrorKind::UnexpectedToken(cur.token_here()))),
        };
        first = false;
        cur.skip_ws();
        let (m, mut c) = parse_term(&mut cur, num_vars)?;
        if negative {
            c = -c;
        }
        terms.push((m, c));
    }
    if terms.is_empty() {
        return Err(cur.err(ParseErrorKind::UnexpectedToken(String::new())));
    }
    Ok(Polynomial::from_terms(terms))
}

fn parse_term(cur: &mut Cursor<'_>, num_vars: usize) -> Result<(Monomial, Rational), ParseError> {
    let mut coeff = Rational::one();
    let mut exps = vec![0u32; num_vars];
    let mut expect_factor = false;
    if cur.peek().is_some_and(|b| b.is_ascii_digit()) {
        let start = cur.pos;
        let mut text = cur.digits().expect("digit present").to_string();
        if cur.peek() == Some(b'/') {
            cur.pos += 1;
            let den = cur
                .digits()
                .ok_or_else(|| cur.err(ParseErrorKind::BadNumber(cur.token_here())))?;
            text.push('/');
            text.push_str(den);
        }
        coeff = parse_rational(&text).ok_or_else(|| {
            ParseError::new(cur.line, start + 1, ParseErrorKind::BadNumber(text.clone()))
        })?;
        cur.skip_ws();
        if cur.peek() == Some(b'*') {
            cur.pos += 1;
            cur.skip_ws();
            expect_factor = true;
        }
    } else {
        expect_factor = true;
    }
    loop {
        match cur.peek() {
            Some(b'x') => {
                let start = cur.pos;
                cur.pos += 1;
                let idx: usize = cur.digits().and_then(|d| d.parse().ok()).ok_or_else(|| {
                    ParseError::new(
                        cur.line,
                        start + 1,
                        ParseErrorKind::UnknownVariable(cur_token(cur, start)),
                    )
                })?;
                if idx >= num_vars {
                    return Err(ParseError::new(
                        cur.line,
                        start + 1,
                        ParseErrorKind::UnknownVariable(format!("x{idx}")),
                    ));
                }
                let mut e = 1u32;
                cur.skip_ws();
                if cur.peek() == Some(b'^') {
                    cur.pos += 1;
                    cur.skip_ws();
                    e = cur
                        .digits()
                        .and_then(|d| d.parse().ok())
                        .ok_or_else(|| cur.err(ParseErrorKind::BadNumber(cur.token_here())))?;
                }
                exps[idx] += e;
                cur.skip_ws();
                if cur.peek() == Some(b'*') {
                    cur.pos += 1;
                    cur.skip_ws();
                    expect_factor = true;
                } else {
                    break;
                }
            }
            Some(b) if b.is_ascii_alphabetic() => {
                return Err(cur.err(ParseErrorKind::UnknownVariable(cur.token_here())));
            }
            _ if expect_factor => {
                return Err(cur.err(ParseErrorKind::UnexpectedToken(cur.token_here())));
            }
            _ => break,
        }
    }
    Ok((Monomial(exps), coeff))
}

fn cur_token(cur: &Cursor<'_>, start: usize) -> String {
    let rest = &cur.src[start..];
    let end = rest
        .iter()
        .position(|b| b.is_ascii_whitespace() || matches!(b, b'+' | b'-' | b'*'))
        .unwrap_or(rest.len());
    String::from_utf8_lossy(&rest[..end]).into_owned()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWISTED_CUBIC: &str = "vars 4\nx0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2";

    #[test]
    fn parses_twisted_cubic() {
        let ideal = parse_ideal(TWISTED_CUBIC).unwrap();
        assert_eq!(ideal.num_vars, 4);
        assert_eq!(ideal.field, FieldSpec::Prime(32003));
        assert_eq!(ideal.generators.len(), 3);
        assert!(ideal
            .generators
            .iter()
            .all(|g| g.homogeneous_degree() == Some(2)));
        // Leading term is the gradlex-largest monomial.
        assert_eq!(ideal.generators[0].to_string(), "x0*x2 - x1^2");
    }

    #[test]
    fn canonical_emission_round_trips() {
        let ideal =
            parse_ideal("vars 3\nfield rational\n  -x2^2+ 2x0*x1 + 1/2 * x0^2 # note\n").unwrap();
        let emitted = ideal.to_string();
        assert_eq!(
            emitted,
            "vars 3\nfield rational\n1/2*x0^2 + 2*x0*x1 - x2^2\n"
        );
        assert_eq!(parse_ideal(&emitted).unwrap(), ideal);
    }

    #[test]
    fn diagnostics_name_the_token() {
        let err = parse_ideal("vars 2\nx0^2 + x5").unwrap_err();
        assert_eq!((err.line, err.column), (2, 8));
        assert_eq!(err.kind, ParseErrorKind::UnknownVariable("x5".into()));

        let err = parse_ideal("vars 2\nx0^2 + x1").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NonHomogeneous(2, 1));

        let err = parse_ideal("vars 2\ny0").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnknownVariable(_)));

        let err = parse_ideal("x0").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingVars);

        let err = parse_ideal("vars 2\n3").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ConstantGenerator);

        let err = parse_ideal("vars 2\nx0 - x0").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::ZeroGenerator);

        let err = parse_ideal("vars 2\nfield gf 9\nx0").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::BadField(_)));

        let err = parse_ideal("vars 2\nfield gf 5\n1/5*x0").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::CoefficientNotInField(_)));

        let err = parse_ideal("vars 2\nx0 x1").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnexpectedToken(_)));

        let err = parse_ideal("vars 2\nx0*").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnexpectedToken(_)));
    }

    #[test]
    fn monomial_enumeration() {
        let ms = monomials_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0], Monomial::new(vec![2, 0, 0]));
        assert_eq!(ms[5], Monomial::new(vec![0, 0, 2]));
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(monomials_of_degree(4, 0), vec![Monomial::one(4)]);
        assert_eq!(monomials_of_degree(6, 3).len(), 56);
    }
}
