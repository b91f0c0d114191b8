//! Line-oriented arrangement file format.
//!
//! ```text
//! m = 4
//! n = 2
//! z1 - (w) z2 = 0
//! ```
//!
//! A file holds a header (`m = ...`, `n = ...`) followed either by
//! hyperplane lines or by representative-equation lines
//! (`rep sh: z1 + z2 = 1`). Coefficients are integer combinations of `1` and
//! powers of `w` (the root of unity), parenthesized when they are more than
//! a bare integer or `w` power. Blank lines and `#` comments are skipped.

use std::fmt;

use num_bigint::BigInt;

use zetacob::arrangement::{Arrangement, Hyperplane};
use zetacob::cyclotomic::{l_of, CycElem};
use zetacob::symmetric::{RepEquation, Symmetry};

/// Position-annotated syntax or structure error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub token: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, token: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            token,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}: syntax error at token {}: {}",
            self.line, self.token, self.message
        )
    }
}

impl std::error::Error for ParseError {}

/// Result of parsing: either a concrete hyperplane list or representative
/// equations with their symmetry kind.
#[derive(Debug, Clone)]
pub enum ParsedFile {
    Hyperplanes(Arrangement),
    Representatives {
        m: u32,
        n: usize,
        symmetry: Symmetry,
        equations: Vec<RepEquation>,
    },
}

impl ParsedFile {
    pub fn order(&self) -> u32 {
        match self {
            ParsedFile::Hyperplanes(a) => a.order(),
            ParsedFile::Representatives { m, .. } => *m,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ParsedFile::Hyperplanes(a) => a.dim(),
            ParsedFile::Representatives { n, .. } => *n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Eq,
    Caret,
    LParen,
    RParen,
    Colon,
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '#' => break,
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '=' => {
                chars.next();
                out.push(Token::Eq);
            }
            '^' => {
                chars.next();
                out.push(Token::Caret);
            }
            '(' => {
                chars.next();
                out.push(Token::LParen);
            }
            ')' => {
                chars.next();
                out.push(Token::RParen);
            }
            ':' => {
                chars.next();
                out.push(Token::Colon);
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Int(s.parse().expect("digits parse")));
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Ident(s));
            }
            other => {
                return Err(ParseError::new(
                    lineno,
                    out.len() + 1,
                    format!("unexpected character '{}'", other),
                ));
            }
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn new(tokens: &'a [Token], line: usize) -> Self {
        Cursor {
            tokens,
            pos: 0,
            line,
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.pos + 1, message)
    }

    fn expect(&mut self, want: &Token, what: &str) -> Result<(), ParseError> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            _ => Err(ParseError::new(self.line, self.pos, format!("expected {}", what))),
        }
    }

    fn done(&self) -> bool {
        self.pos == self.tokens.len()
    }
}

/// One `c * w^k` atom; `k = 0` for plain integers.
fn parse_atom(cur: &mut Cursor, m: u32) -> Result<CycElem, ParseError> {
    let coeff = match cur.peek() {
        Some(Token::Int(_)) => {
            let Some(Token::Int(v)) = cur.next() else {
                unreachable!()
            };
            let v = v.clone();
            // optional explicit product sign, as in `2*w^2`
            if let Some(Token::Star) = cur.peek() {
                cur.next();
            }
            v
        }
        _ => BigInt::from(1),
    };
    let mut exponent: Option<u32> = None;
    if let Some(Token::Ident(name)) = cur.peek() {
        if name == "w" {
            cur.next();
            exponent = Some(1);
            if let Some(Token::Caret) = cur.peek() {
                cur.next();
                match cur.next() {
                    Some(Token::Int(e)) => {
                        let e: u32 = e
                            .to_string()
                            .parse()
                            .map_err(|_| cur.error("exponent out of range"))?;
                        exponent = Some(e);
                    }
                    _ => return Err(cur.error("expected exponent after '^'")),
                }
            }
        }
    }
    let base = match exponent {
        None => CycElem::one(m),
        Some(e) => CycElem::zeta_pow(m, e),
    };
    let scalar = CycElem::new(m, {
        let l = l_of(m).map_err(|e| cur.error(e.to_string()))?;
        let mut coords = vec![BigInt::from(0); l];
        coords[0] = coeff;
        coords
    })
    .map_err(|e| cur.error(e.to_string()))?;
    scalar
        .checked_mul(&base)
        .map_err(|e| cur.error(e.to_string()))
}

/// A signed sum of atoms, e.g. `1 + 2w^2 - w`.
fn parse_coef_expr(cur: &mut Cursor, m: u32) -> Result<CycElem, ParseError> {
    let mut acc = CycElem::zero(m);
    let mut sign_minus = match cur.peek() {
        Some(Token::Minus) => {
            cur.next();
            true
        }
        Some(Token::Plus) => {
            cur.next();
            false
        }
        _ => false,
    };
    loop {
        let atom = parse_atom(cur, m)?;
        let atom = if sign_minus { atom.neg() } else { atom };
        acc = acc.checked_add(&atom).map_err(|e| cur.error(e.to_string()))?;
        match cur.peek() {
            Some(Token::Plus) => {
                cur.next();
                sign_minus = false;
            }
            Some(Token::Minus) => {
                cur.next();
                sign_minus = true;
            }
            _ => break,
        }
    }
    Ok(acc)
}

/// `[coef] z<idx>` where coef is an int, a `w` power, or `( expr )`.
fn parse_term(cur: &mut Cursor, m: u32) -> Result<(usize, CycElem), ParseError> {
    let coef = match cur.peek() {
        Some(Token::LParen) => {
            cur.next();
            let c = parse_coef_expr(cur, m)?;
            cur.expect(&Token::RParen, "')'")?;
            c
        }
        Some(Token::Int(_)) => parse_atom(cur, m)?,
        Some(Token::Ident(name)) if name == "w" => parse_atom(cur, m)?,
        _ => CycElem::one(m),
    };
    match cur.next() {
        Some(Token::Ident(name)) if name.starts_with('z') && name.len() > 1 => {
            let idx: usize = name[1..]
                .parse()
                .map_err(|_| ParseError::new(cur.line, cur.pos, "bad variable index"))?;
            if idx == 0 {
                return Err(ParseError::new(
                    cur.line,
                    cur.pos,
                    "variable indices start at z1",
                ));
            }
            Ok((idx - 1, coef))
        }
        _ => Err(ParseError::new(cur.line, cur.pos, "expected a variable")),
    }
}

/// Linear form: `term {+- term} = coef-expr`, accumulated per variable.
fn parse_equation(
    cur: &mut Cursor,
    m: u32,
    max_var: usize,
) -> Result<(Vec<CycElem>, CycElem), ParseError> {
    let mut coeffs = vec![CycElem::zero(m); max_var];
    let mut top = 0usize;
    let mut sign_minus = match cur.peek() {
        Some(Token::Minus) => {
            cur.next();
            true
        }
        _ => false,
    };
    loop {
        let (idx, c) = parse_term(cur, m)?;
        if idx >= max_var {
            return Err(ParseError::new(
                cur.line,
                cur.pos,
                format!("variable z{} exceeds n = {}", idx + 1, max_var),
            ));
        }
        let c = if sign_minus { c.neg() } else { c };
        coeffs[idx] = coeffs[idx]
            .checked_add(&c)
            .map_err(|e| cur.error(e.to_string()))?;
        top = top.max(idx + 1);
        match cur.peek() {
            Some(Token::Plus) => {
                cur.next();
                sign_minus = false;
            }
            Some(Token::Minus) => {
                cur.next();
                sign_minus = true;
            }
            Some(Token::Eq) => {
                cur.next();
                break;
            }
            _ => return Err(cur.error("expected '+', '-' or '='")),
        }
    }
    let rhs = match cur.peek() {
        Some(Token::LParen) => {
            cur.next();
            let c = parse_coef_expr(cur, m)?;
            cur.expect(&Token::RParen, "')'")?;
            c
        }
        _ => parse_coef_expr(cur, m)?,
    };
    if !cur.done() {
        return Err(cur.error("trailing tokens after the equation"));
    }
    coeffs.truncate(top.max(1));
    Ok((coeffs, rhs))
}

fn parse_header_line(
    tokens: &[Token],
    lineno: usize,
    name: &str,
) -> Result<Option<u64>, ParseError> {
    match tokens {
        [Token::Ident(id), Token::Eq, Token::Int(v)] if id == name => {
            let v: u64 = v
                .to_string()
                .parse()
                .map_err(|_| ParseError::new(lineno, 3, format!("{} out of range", name)))?;
            Ok(Some(v))
        }
        _ => Ok(None),
    }
}

/// Parse a full arrangement file.
pub fn parse(text: &str) -> Result<ParsedFile, ParseError> {
    let mut m: Option<u32> = None;
    let mut n: Option<usize> = None;
    let mut hyperplanes: Vec<Hyperplane> = Vec::new();
    let mut equations: Vec<RepEquation> = Vec::new();
    let mut symmetry: Option<Symmetry> = None;
    let mut first_body_line = 0usize;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let tokens = tokenize(raw, lineno)?;
        if tokens.is_empty() {
            continue;
        }
        if m.is_none() {
            match parse_header_line(&tokens, lineno, "m")? {
                Some(v) if v >= 1 => {
                    m = Some(v as u32);
                    continue;
                }
                Some(_) => return Err(ParseError::new(lineno, 3, "m must be positive")),
                None => return Err(ParseError::new(lineno, 1, "expected header 'm = <int>'")),
            }
        }
        if n.is_none() {
            match parse_header_line(&tokens, lineno, "n")? {
                Some(v) => {
                    n = Some(v as usize);
                    continue;
                }
                None => return Err(ParseError::new(lineno, 1, "expected header 'n = <int>'")),
            }
        }
        let m = m.expect("header seen");
        let n = n.expect("header seen");
        if first_body_line == 0 {
            first_body_line = lineno;
        }

        // representative line?
        if let Some(Token::Ident(id)) = tokens.first() {
            if id == "rep" {
                let mut cur = Cursor::new(&tokens, lineno);
                cur.next(); // rep
                let kind = match cur.next() {
                    Some(Token::Ident(k)) if k == "sh" => Symmetry::Plain,
                    Some(Token::Ident(k)) if k == "csh" => Symmetry::Colored,
                    _ => return Err(ParseError::new(lineno, 2, "expected 'sh' or 'csh'")),
                };
                cur.expect(&Token::Colon, "':'")?;
                match symmetry {
                    Some(s) if s != kind => {
                        return Err(ParseError::new(
                            lineno,
                            2,
                            "mixed sh and csh representative lines",
                        ));
                    }
                    _ => symmetry = Some(kind),
                }
                let (coeffs, rhs) = parse_equation(&mut cur, m, n)?;
                let eq = RepEquation::new(m, coeffs, rhs)
                    .map_err(|e| ParseError::new(lineno, 1, e.to_string()))?;
                equations.push(eq);
                continue;
            }
        }

        let mut cur = Cursor::new(&tokens, lineno);
        let (mut coeffs, rhs) = parse_equation(&mut cur, m, n)?;
        coeffs.resize(n, CycElem::zero(m));
        hyperplanes.push(Hyperplane::new(coeffs, rhs));
    }

    let m = m.ok_or_else(|| ParseError::new(1, 1, "missing header 'm = <int>'"))?;
    let n = n.ok_or_else(|| ParseError::new(2, 1, "missing header 'n = <int>'"))?;

    match (hyperplanes.is_empty(), equations.is_empty()) {
        (false, false) => Err(ParseError::new(
            first_body_line,
            1,
            "file mixes hyperplane and rep lines",
        )),
        (_, true) => {
            let arr = Arrangement::new(m, n, hyperplanes)
                .map_err(|e| ParseError::new(first_body_line.max(1), 1, e.to_string()))?;
            Ok(ParsedFile::Hyperplanes(arr))
        }
        (true, false) => Ok(ParsedFile::Representatives {
            m,
            n,
            symmetry: symmetry.expect("rep lines set the kind"),
            equations,
        }),
    }
}

fn render_coeff_factor(c: &CycElem) -> Option<String> {
    // None means "bare variable" (coefficient one)
    let one = CycElem::one(c.order());
    if c == &one {
        return None;
    }
    Some(format!("({})", c))
}

fn render_linear_form(coeffs: &[CycElem], rhs: &CycElem) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_coord_zero() {
            continue;
        }
        let minus_one = CycElem::one(c.order()).neg();
        if out.is_empty() {
            if c == &minus_one {
                out.push_str(&format!("-z{}", i + 1));
            } else {
                match render_coeff_factor(c) {
                    None => out.push_str(&format!("z{}", i + 1)),
                    Some(f) => out.push_str(&format!("{} z{}", f, i + 1)),
                }
            }
        } else if c == &minus_one {
            out.push_str(&format!(" - z{}", i + 1));
        } else {
            match render_coeff_factor(c) {
                None => out.push_str(&format!(" + z{}", i + 1)),
                Some(f) => out.push_str(&format!(" + {} z{}", f, i + 1)),
            }
        }
    }
    out.push_str(&format!(" = {}", rhs));
    out
}

/// Render an arrangement in the file format; the output reparses to an
/// identical arrangement.
pub fn render_arrangement(arr: &Arrangement) -> String {
    let mut out = format!("m = {}\nn = {}\n", arr.order(), arr.dim());
    for h in arr.hyperplanes() {
        out.push_str(&render_linear_form(h.coeffs(), h.rhs()));
        out.push('\n');
    }
    out
}

/// Render representative equations in the file format.
pub fn render_representatives(
    m: u32,
    n: usize,
    symmetry: Symmetry,
    equations: &[RepEquation],
) -> String {
    let kind = match symmetry {
        Symmetry::Plain => "sh",
        Symmetry::Colored => "csh",
    };
    let mut out = format!("m = {}\nn = {}\n", m, n);
    for eq in equations {
        out.push_str(&format!(
            "rep {}: {}\n",
            kind,
            render_linear_form(eq.coeffs(), eq.rhs())
        ));
    }
    out
}
