//! Element expressions for `eval` and matrix literals for `matrix`/`oracle`.
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := coeff? factor+ | coeff
//! factor := ID | ID "*"
//! coeff  := INT | INT "/" INT
//! ```
//!
//! A bare coefficient means that multiple of the identity. Matrix literals are
//! `[[p, p], [p, p]]` with entries such as `2x^-2 - 1/3 + x`.

use std::str::FromStr;
use std::sync::Arc;

use gradcan::lpa::Generator;
use gradcan::{Field, GMatrix, Graph, GradedMatrixRing, LaurentPoly, LpaElement, Scalar};
use num_bigint::BigInt;

use crate::dsl::{is_ident_char, is_ident_start};
use crate::error::{CliError, CliResult, Location};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Star,
    Plus,
    Minus,
    Slash,
    Caret,
    LBrack,
    RBrack,
    Comma,
}

fn show(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Star => "`*`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LBrack => "`[`".into(),
        Tok::RBrack => "`]`".into(),
        Tok::Comma => "`,`".into(),
    }
}

/// Single-line input: locations are columns on line 1.
fn lex(text: &str) -> CliResult<Vec<(Tok, Location)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let at = Location { line: 1, col: i + 1 };
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), at));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(BigInt::from_str(&s).expect("digits")), at));
            continue;
        }
        let tok = match c {
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            ',' => Tok::Comma,
            _ => return Err(CliError::parse(at, format!("unexpected character `{c}`"))),
        };
        out.push((tok, at));
        i += 1;
    }
    Ok(out)
}

struct Cursor {
    toks: Vec<(Tok, Location)>,
    pos: usize,
    end: Location,
}

impl Cursor {
    fn new(text: &str) -> CliResult<Self> {
        let toks = lex(text)?;
        let end = Location {
            line: 1,
            col: text.chars().count() + 1,
        };
        Ok(Cursor { toks, pos: 0, end })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> Location {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, want: &str) -> CliError {
        match self.toks.get(self.pos) {
            Some((t, at)) => CliError::parse(*at, format!("expected {want}, found {}", show(t))),
            None => CliError::parse(self.end, format!("expected {want}, found end of input")),
        }
    }

    fn expect(&mut self, t: &Tok) -> CliResult<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(&show(t)))
        }
    }

    fn int(&mut self) -> Option<BigInt> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Some(n)
            }
            _ => None,
        }
    }

    /// `INT` or `INT / INT`, if present.
    fn coeff(&mut self, field: Field) -> CliResult<Option<Scalar>> {
        let at = self.here();
        let Some(num) = self.int() else {
            return Ok(None);
        };
        let den = if self.eat(&Tok::Slash) {
            self.int().ok_or_else(|| self.unexpected("a denominator"))?
        } else {
            BigInt::from(1)
        };
        Scalar::from_ratio(field, &num, &den)
            .map(Some)
            .map_err(|e| CliError::parse(at, format!("bad coefficient: {e}")))
    }
}

/// Parses an element of L_K(E) and returns its normal form.
pub fn parse_element(text: &str, g: &Arc<Graph>, field: Field) -> CliResult<LpaElement> {
    let mut cur = Cursor::new(text)?;
    if cur.peek().is_none() {
        return Err(cur.unexpected("a term"));
    }
    let mut acc = LpaElement::zero(g, field);
    let mut negate = cur.eat(&Tok::Minus);
    loop {
        let t = element_term(&mut cur, g, field)?;
        acc = if negate { acc.sub(&t)? } else { acc.add(&t)? };
        if cur.eat(&Tok::Plus) {
            negate = false;
        } else if cur.eat(&Tok::Minus) {
            negate = true;
        } else if cur.peek().is_none() {
            return Ok(acc);
        } else {
            return Err(cur.unexpected("`+`, `-` or end of input"));
        }
    }
}

fn element_term(cur: &mut Cursor, g: &Arc<Graph>, field: Field) -> CliResult<LpaElement> {
    let c = cur.coeff(field)?;
    let mut word = Vec::new();
    while let Some(Tok::Ident(name)) = cur.peek() {
        let name = name.clone();
        let at = cur.here();
        cur.pos += 1;
        let ghost = cur.eat(&Tok::Star);
        let gen = if let Some(v) = g.vertex_by_name(&name) {
            // vertices are self-adjoint
            Generator::Vertex(v)
        } else if let Some(e) = g.edge_by_name(&name) {
            if ghost {
                Generator::Ghost(e)
            } else {
                Generator::Edge(e)
            }
        } else {
            return Err(CliError::parse(at, format!("unknown vertex or edge `{name}`")));
        };
        word.push(gen);
    }
    if c.is_none() && word.is_empty() {
        return Err(cur.unexpected("a coefficient or an identifier"));
    }
    let c = c.unwrap_or_else(|| field.one());
    Ok(LpaElement::from_word(g, c, &word)?)
}

/// Parses a comma-separated shift list such as `0,1,1`.
pub fn parse_shifts(text: &str) -> CliResult<Vec<i64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("bad shift `{}` in `{text}`", s.trim())))
        })
        .collect()
}

/// Parses `[[p, ...], ...]` into an element of `ring`.
pub fn parse_matrix(text: &str, ring: &GradedMatrixRing, field: Field) -> CliResult<GMatrix> {
    let mut cur = Cursor::new(text)?;
    let mut rows = Vec::new();
    cur.expect(&Tok::LBrack)?;
    loop {
        let row_at = cur.here();
        cur.expect(&Tok::LBrack)?;
        let mut row = Vec::new();
        loop {
            let at = cur.here();
            let terms = poly(&mut cur, field)?;
            let p = LaurentPoly::from_terms(field, ring.step(), terms)
                .map_err(|e| CliError::parse(at, e.to_string()))?;
            row.push(p);
            if !cur.eat(&Tok::Comma) {
                break;
            }
        }
        cur.expect(&Tok::RBrack)?;
        if row.len() != ring.n() {
            return Err(CliError::parse(
                row_at,
                format!("row has {} entries, expected {}", row.len(), ring.n()),
            ));
        }
        rows.push(row);
        if !cur.eat(&Tok::Comma) {
            break;
        }
    }
    cur.expect(&Tok::RBrack)?;
    if cur.peek().is_some() {
        return Err(cur.unexpected("end of input"));
    }
    if rows.len() != ring.n() {
        return Err(CliError::Usage(format!(
            "matrix has {} rows, expected {}",
            rows.len(),
            ring.n()
        )));
    }
    Ok(GMatrix::from_rows(ring, field, rows)?)
}

fn poly(cur: &mut Cursor, field: Field) -> CliResult<Vec<(i64, Scalar)>> {
    let mut out = Vec::new();
    let mut negate = cur.eat(&Tok::Minus);
    loop {
        let (e, c) = mono(cur, field)?;
        out.push((e, if negate { -&c } else { c }));
        if cur.eat(&Tok::Plus) {
            negate = false;
        } else if cur.eat(&Tok::Minus) {
            negate = true;
        } else {
            return Ok(out);
        }
    }
}

fn mono(cur: &mut Cursor, field: Field) -> CliResult<(i64, Scalar)> {
    let c = cur.coeff(field)?;
    if c.is_some() {
        cur.eat(&Tok::Star);
    }
    let is_x = matches!(cur.peek(), Some(Tok::Ident(s)) if s == "x");
    if !is_x {
        return match c {
            Some(c) => Ok((0, c)),
            None => Err(cur.unexpected("a coefficient or `x`")),
        };
    }
    cur.pos += 1;
    let mut e = 1i64;
    if cur.eat(&Tok::Caret) {
        let neg = cur.eat(&Tok::Minus);
        let at = cur.here();
        let k = cur.int().ok_or_else(|| cur.unexpected("an exponent"))?;
        let k = i64::try_from(k).map_err(|_| CliError::parse(at, "exponent out of range"))?;
        e = if neg { -k } else { k };
    }
    Ok((e, c.unwrap_or_else(|| field.one())))
}
