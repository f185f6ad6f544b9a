//! Text format for piecewise functions.
//!
//! ```text
//! spec     := segment (";" segment)* | expr          (bare expr: one segment on [0, 2pi])
//! segment  := "[" bound "," bound (")" | "]") ":" expr
//! bound    := ["-"] scalar
//! scalar   := number ["pi"] | "pi"
//! number   := digits ["." digits] ["/" digits]
//! expr     := ["+" | "-"] term (("+" | "-") term)*
//! term     := scalar ["*" atom] | atom
//! atom     := "x" ["^" digits] | "exp(" linear ")" | "cos(" trig ")" | "sin(" trig ")"
//! linear   := ["-"] [scalar ["*"]] "x"
//! trig     := linear [("+" | "-") scalar]
//! ```
//!
//! Whitespace is ignored between tokens. Only the last segment may close with
//! `]`; it owns its right end either way.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::exact::Exact;
use crate::piecewise::{Atom, PiecewiseFunction, Segment, Term, MAX_POWER};

pub fn parse_function(text: &str) -> Result<PiecewiseFunction> {
    Parser::new(text).spec()
}

/// Parses a single signed scalar such as `-3/2pi` or `0.25`.
pub fn parse_scalar(text: &str) -> Result<Exact> {
    let mut p = Parser::new(text);
    let v = p.signed_scalar()?;
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected '{c}'")));
    }
    Ok(v)
}

/// Parses a corpus: one spec per line, blank lines and `#` comment lines
/// skipped. Syntax errors report the corpus line.
pub fn parse_corpus(text: &str) -> Result<Vec<PiecewiseFunction>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| {
            parse_function(l).map_err(|e| match e {
                Error::Syntax { column, message, .. } => Error::Syntax {
                    line: i + 1,
                    column,
                    message,
                },
                other => other,
            })
        })
        .collect()
}

pub fn format_function(f: &PiecewiseFunction) -> String {
    let last = f.segments().len() - 1;
    f.segments()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let close = if i == last { ']' } else { ')' };
            format!("[{},{}{}: {}", s.lo(), s.hi(), close, format_terms(s.terms()))
        })
        .collect::<Vec<_>>()
        .join(" ; ")
}

fn format_terms(terms: &[Term]) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        let c = t.coefficient();
        let body = format_term_abs(c, t.atom());
        match (i, c.is_negative()) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

fn format_term_abs(c: Exact, atom: Atom) -> String {
    let c = if c.is_negative() { -c } else { c };
    if atom == Atom::Power(0) {
        return c.to_string();
    }
    let atom = format_atom(atom);
    if c == Exact::integer(1) {
        atom
    } else {
        format!("{c}*{atom}")
    }
}

fn format_linear(r: Exact) -> String {
    if r == Exact::integer(1) {
        "x".into()
    } else if r == Exact::integer(-1) {
        "-x".into()
    } else {
        format!("{r}*x")
    }
}

fn format_trig(name: &str, freq: Exact, phase: Exact) -> String {
    let mut s = format!("{name}({}", format_linear(freq));
    if phase.is_negative() {
        s.push_str(&format!("-{}", -phase));
    } else if !phase.is_zero() {
        s.push_str(&format!("+{phase}"));
    }
    s.push(')');
    s
}

fn format_atom(atom: Atom) -> String {
    match atom {
        Atom::Power(0) => "1".into(),
        Atom::Power(1) => "x".into(),
        Atom::Power(k) => format!("x^{k}"),
        Atom::Exp { rate } => format!("exp({})", format_linear(rate)),
        Atom::Cos { freq, phase } => format_trig("cos", freq, phase),
        Atom::Sin { freq, phase } => format_trig("sin", freq, phase),
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.location(pos);
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let message = match self.peek() {
                Some(found) => format!("expected '{c}', found '{found}'"),
                None => format!("expected '{c}', found end of input"),
            };
            Err(self.error(message))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let n = kw.chars().count();
        if self.pos + n <= self.chars.len() && self.chars[self.pos..self.pos + n].iter().copied().eq(kw.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn spec(&mut self) -> Result<PiecewiseFunction> {
        let f = if self.peek() == Some('[') {
            let mut segments = Vec::new();
            let mut closed_at = None;
            loop {
                let start = self.pos;
                let (seg, closed) = self.segment()?;
                if let Some(prev) = closed_at {
                    return Err(Error::Tiling(format!(
                        "segment closed with ']' at column {} is not the last segment",
                        self.location(prev).1
                    )));
                }
                if closed {
                    closed_at = Some(start);
                }
                segments.push(seg);
                if !self.eat(';') {
                    break;
                }
            }
            PiecewiseFunction::new(segments)?
        } else {
            let terms = self.expr()?;
            PiecewiseFunction::single(Exact::ZERO, Exact::pi_multiple(2, 1), terms)?
        };
        if let Some(c) = self.peek() {
            return Err(self.error(format!("unexpected '{c}'")));
        }
        Ok(f)
    }

    fn segment(&mut self) -> Result<(Segment, bool)> {
        self.expect('[')?;
        let lo = self.signed_scalar()?;
        self.expect(',')?;
        let hi = self.signed_scalar()?;
        let closed = if self.eat(']') {
            true
        } else if self.eat(')') {
            false
        } else {
            return Err(self.error("expected ')' or ']'"));
        };
        self.expect(':')?;
        let terms = self.expr()?;
        Ok((Segment::new(lo, hi, terms)?, closed))
    }

    fn signed_scalar(&mut self) -> Result<Exact> {
        let neg = self.eat('-');
        let v = self.scalar()?;
        Ok(if neg { -v } else { v })
    }

    fn starts_scalar(&mut self) -> bool {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => true,
            Some('p') => self.chars.get(self.pos + 1) == Some(&'i'),
            _ => false,
        }
    }

    fn scalar(&mut self) -> Result<Exact> {
        if self.eat_keyword("pi") {
            return Ok(Exact::pi_multiple(1, 1));
        }
        let r = self.number()?;
        let pi = self.eat_keyword("pi");
        Ok(Exact::from_ratio(r, pi))
    }

    fn digits(&mut self) -> Result<(i64, u32)> {
        self.skip_ws();
        let start = self.pos;
        let mut value: i64 = 0;
        while let Some(d) = self.chars.get(self.pos).and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as i64))
                .ok_or_else(|| self.error_at(start, "number too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        Ok((value, (self.pos - start) as u32))
    }

    fn number(&mut self) -> Result<Ratio<i64>> {
        let start = self.pos;
        let (int, _) = self.digits()?;
        let mut r = Ratio::from_integer(int);
        if self.chars.get(self.pos) == Some(&'.') {
            self.pos += 1;
            if !self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                return Err(self.error("expected digits after '.'"));
            }
            let (frac, len) = self.digits()?;
            let scale = 10i64
                .checked_pow(len)
                .ok_or_else(|| self.error_at(start, "number too precise"))?;
            r = int
                .checked_mul(scale)
                .and_then(|v| v.checked_add(frac))
                .map(|n| Ratio::new(n, scale))
                .ok_or_else(|| self.error_at(start, "number too large"))?;
        }
        if self.eat('/') {
            let (den, _) = self.digits()?;
            if den == 0 {
                return Err(self.error_at(start, "zero denominator"));
            }
            r = Ratio::new(
                *r.numer(),
                r.denom()
                    .checked_mul(den)
                    .ok_or_else(|| self.error_at(start, "number too large"))?,
            );
        }
        Ok(r)
    }

    fn expr(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        let mut neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let start = self.pos;
            let (c, atom) = self.term()?;
            let c = if neg { -c } else { c };
            terms.push(Term::new(c, atom).map_err(|e| match e {
                Error::Argument(m) => self.error_at(start, m),
                other => other,
            })?);
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(Exact, Atom)> {
        if self.starts_scalar() {
            let c = self.scalar()?;
            if self.eat('*') {
                Ok((c, self.atom()?))
            } else {
                Ok((c, Atom::Power(0)))
            }
        } else {
            Ok((Exact::integer(1), self.atom()?))
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        if self.eat_keyword("exp") {
            self.expect('(')?;
            let rate = self.linear()?;
            self.expect(')')?;
            return Ok(Atom::Exp { rate });
        }
        for (name, is_cos) in [("cos", true), ("sin", false)] {
            if self.eat_keyword(name) {
                self.expect('(')?;
                let freq = self.linear()?;
                let phase = if self.eat('+') {
                    self.scalar()?
                } else if self.eat('-') {
                    -self.scalar()?
                } else {
                    Exact::ZERO
                };
                self.expect(')')?;
                return Ok(if is_cos {
                    Atom::Cos { freq, phase }
                } else {
                    Atom::Sin { freq, phase }
                });
            }
        }
        if self.eat('x') {
            if self.eat('^') {
                let start = self.pos;
                let (k, _) = self.digits()?;
                let k = u32::try_from(k).map_err(|_| self.error_at(start, "exponent too large"))?;
                if k > MAX_POWER {
                    return Err(Error::UnsupportedExponent(k));
                }
                return Ok(Atom::Power(k));
            }
            return Ok(Atom::Power(1));
        }
        let message = match self.peek() {
            Some(c) => format!("expected a term, found '{c}'"),
            None => "expected a term, found end of input".into(),
        };
        Err(self.error(message))
    }

    /// `["-"] [scalar ["*"]] "x"`, returning the coefficient of x.
    fn linear(&mut self) -> Result<Exact> {
        let neg = self.eat('-');
        let r = if self.starts_scalar() {
            let r = self.scalar()?;
            self.eat('*');
            r
        } else {
            Exact::integer(1)
        };
        if !self.eat('x') {
            return Err(self.error("expected 'x'"));
        }
        Ok(if neg { -r } else { r })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("1/2pi").unwrap(), Exact::pi_multiple(1, 2));
        assert_eq!(parse_scalar(" -0.25 ").unwrap(), Exact::rational(-1, 4));
        assert_eq!(parse_scalar("pi").unwrap(), Exact::pi_multiple(1, 1));
        assert!(parse_scalar("1pi x").is_err());
        assert!(parse_scalar("").is_err());
    }

    #[test]
    fn shorthand_is_full_period() {
        let f = parse_function("1").unwrap();
        assert_eq!(f.domain(), (0.0, 2.0 * PI));
        assert_eq!(f.eval(3.0).unwrap(), 1.0);
        assert_eq!(format_function(&f), "[0,2pi]: 1");
    }

    #[test]
    fn square_wave() {
        let f = parse_function("[0,1pi): 1 ; [1pi,2pi]: 0").unwrap();
        assert_eq!(f.breakpoints(), vec![PI]);
        assert_eq!(f.segments()[0].hi(), Exact::pi_multiple(1, 1));
        assert_eq!(format_function(&f), "[0,1pi): 1 ; [1pi,2pi]: 0");
    }

    #[test]
    fn identity_format() {
        assert_eq!(format_function(&parse_function("x").unwrap()), "[0,2pi]: x");
    }

    #[test]
    fn overlap_is_tiling_error() {
        let e = parse_function("[0,1pi): 1 ; [0.5pi,2pi]: 0").unwrap_err();
        assert!(matches!(e, Error::Tiling(_)), "{e:?}");
    }

    #[test]
    fn gap_is_tiling_error() {
        let e = parse_function("[0,1): 1 ; [2,3]: 0").unwrap_err();
        assert!(matches!(e, Error::Tiling(_)), "{e:?}");
    }

    #[test]
    fn closed_interior_segment_rejected() {
        let e = parse_function("[0,1]: 1 ; [1,2]: 0").unwrap_err();
        assert!(matches!(e, Error::Tiling(_)), "{e:?}");
    }

    #[test]
    fn exponent_limit() {
        assert_eq!(parse_function("x^13").unwrap_err(), Error::UnsupportedExponent(13));
        assert!(parse_function("x^12").is_ok());
    }

    #[test]
    fn syntax_error_location() {
        match parse_function("[0,2pi]: 1 +").unwrap_err() {
            Error::Syntax { line, column, .. } => assert_eq!((line, column), (1, 13)),
            e => panic!("{e:?}"),
        }
        match parse_function("x *").unwrap_err() {
            Error::Syntax { line, column, .. } => assert_eq!((line, column), (1, 3)),
            e => panic!("{e:?}"),
        }
        match parse_function("[0,2pi]:\n  cos(x) $").unwrap_err() {
            Error::Syntax { line, column, .. } => assert_eq!((line, column), (2, 10)),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn case_sensitive_keywords() {
        assert!(parse_function("EXP(x)").is_err());
        assert!(parse_function("[0,2PI]: 1").is_err());
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse_function("[ 0 , 1 pi ) : 1 ; [ 1pi , 2 pi ] : 2 * x ^ 2 - exp ( - x )").unwrap();
        let b = parse_function("[0,1pi):1;[1pi,2pi]:2*x^2-exp(-x)").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rational_and_decimal_bounds_agree() {
        let a = parse_function("[0,0.5pi): 1 ; [1/2pi,2pi]: 0").unwrap();
        assert_eq!(a.breakpoints(), vec![0.5 * PI]);
    }

    #[test]
    fn term_values() {
        let f = parse_function("[0,3]: 2 - 1/2*x^2 + exp(-x) + 3*cos(2*x+1/2) - sin(-x-1pi)").unwrap();
        let x: f64 = 1.3;
        let expect = 2.0 - 0.5 * x * x + (-x).exp() + 3.0 * (2.0 * x + 0.5).cos() - (-x - PI).sin();
        assert!((f.eval(x).unwrap() - expect).abs() < 1e-14);
    }

    #[test]
    fn corpus_lines_and_comments() {
        let text = "# header\n1\n\n  # indented comment\nx\n[0,1pi): 1 ; [1pi,2pi]: 0\n";
        assert_eq!(parse_corpus(text).unwrap().len(), 3);
        match parse_corpus("1\n# c\nx +\n").unwrap_err() {
            Error::Syntax { line, .. } => assert_eq!(line, 3),
            e => panic!("{e:?}"),
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn scalar() -> impl Strategy<Value = String> {
            (1i64..50, 1i64..9, any::<bool>()).prop_map(|(n, d, pi)| format!("{n}/{d}{}", if pi { "pi" } else { "" }))
        }

        fn atom() -> impl Strategy<Value = String> {
            prop_oneof![
                Just("x".to_string()),
                (0u32..=12).prop_map(|k| format!("x^{k}")),
                scalar().prop_map(|r| format!("exp(-{r}*x)")),
                (scalar(), scalar()).prop_map(|(a, b)| format!("cos({a}*x+{b})")),
                (scalar(), scalar()).prop_map(|(a, b)| format!("sin(-{a}*x-{b})")),
            ]
        }

        fn term() -> impl Strategy<Value = String> {
            prop_oneof![
                scalar(),
                atom(),
                (scalar(), atom()).prop_map(|(c, a)| format!("{c}*{a}")),
            ]
        }

        fn expr() -> impl Strategy<Value = String> {
            (any::<bool>(), prop::collection::vec((any::<bool>(), term()), 1..4)).prop_map(|(lead, terms)| {
                let mut s = if lead { "-".to_string() } else { String::new() };
                for (i, (neg, t)) in terms.iter().enumerate() {
                    if i > 0 {
                        s.push_str(if *neg { " - " } else { " + " });
                    }
                    s.push_str(t);
                }
                s
            })
        }

        fn spec() -> impl Strategy<Value = String> {
            prop::collection::vec(expr(), 1..4).prop_map(|exprs| {
                let n = exprs.len() as i64;
                exprs
                    .iter()
                    .enumerate()
                    .map(|(i, e)| {
                        let close = if i as i64 == n - 1 { "]" } else { ")" };
                        format!("[{}/{}pi,{}/{}pi{close}: {e}", 2 * i, n, 2 * (i + 1), n)
                    })
                    .collect::<Vec<_>>()
                    .join(" ; ")
            })
        }

        proptest! {
            #[test]
            fn round_trip(text in spec()) {
                let f = parse_function(&text).unwrap();
                let printed = format_function(&f);
                prop_assert_eq!(parse_function(&printed).unwrap(), f);
                // canonical text is a fixed point
                prop_assert_eq!(format_function(&parse_function(&printed).unwrap()), printed);
            }
        }
    }
}
