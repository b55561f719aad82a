//! The `p=3,l=2,poly=2,1,h=1,0` system description and coefficient lists.
//!
//! Tokens are separated by commas or newlines. A token `key=value` starts a
//! key; a bare token appends another coefficient to the previous key, so
//! `poly=2,1` lists the lower coefficients `c_0 = 2`, `c_1 = 1` of the monic
//! polynomial `y^2 + y + 2`.

use std::fmt;
use std::str::FromStr;

use galois_quantum::gf::{FieldContext, FieldElement, IrreduciblePoly};

/// Parse failure with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

/// Splits on `,` and newlines, trimming blanks. Columns point at the first
/// non-blank character of each token.
fn tokenize(input: &str) -> Result<Vec<Token<'_>>, ParseError> {
    let mut tokens = Vec::new();
    for (line_no, line) in input.lines().enumerate() {
        let mut start = 0;
        for piece in line.split(',') {
            let lead = piece.len() - piece.trim_start().len();
            let column = line[..start + lead].chars().count() + 1;
            let text = piece.trim();
            if text.is_empty() {
                if line.trim().is_empty() {
                    break;
                }
                return Err(ParseError {
                    line: line_no + 1,
                    column,
                    message: "empty entry".into(),
                });
            }
            tokens.push(Token {
                text,
                line: line_no + 1,
                column,
            });
            start += piece.len() + 1;
        }
    }
    Ok(tokens)
}

fn parse_u32(tok: Token<'_>, text: &str) -> Result<u32, ParseError> {
    text.parse::<u32>()
        .map_err(|_| tok.error(format!("expected a non-negative integer, found {text:?}")))
}

/// Parses a comma-separated coefficient list such as `1,2`.
pub fn parse_coefficients(input: &str) -> Result<Vec<u32>, ParseError> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "expected at least one coefficient".into(),
        });
    }
    tokens.iter().map(|&t| parse_u32(t, t.text)).collect()
}

/// Parses `;`-separated coefficient lists, one field element each.
pub fn parse_element_list(input: &str) -> Result<Vec<Vec<u32>>, ParseError> {
    let mut offset = 0;
    let mut out = Vec::new();
    for part in input.split(';') {
        let coeffs = parse_coefficients(part).map_err(|mut e| {
            e.column += input[..offset].chars().count();
            e
        })?;
        out.push(coeffs);
        offset += part.len() + 1;
    }
    Ok(out)
}

/// A field `GF(p^l)` with its defining polynomial and inverse Planck constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSpec {
    pub p: u32,
    pub ell: usize,
    /// Lower coefficients `c_0, ..., c_{l-1}` of the monic polynomial.
    pub poly: Vec<u32>,
    /// Components of `h`; defaults to `1`.
    pub h: Vec<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Key {
    P,
    L,
    Poly,
    H,
}

impl FromStr for SystemSpec {
    type Err = ParseError;

    fn from_str(input: &str) -> Result<Self, ParseError> {
        let tokens = tokenize(input)?;
        let mut p: Option<(u32, Token<'_>)> = None;
        let mut ell: Option<(usize, Token<'_>)> = None;
        let mut poly: Option<(Vec<u32>, Token<'_>)> = None;
        let mut h: Option<(Vec<u32>, Token<'_>)> = None;
        let mut current: Option<Key> = None;

        for tok in tokens {
            let (key, value) = match tok.text.split_once('=') {
                Some((k, v)) => {
                    let key = match k.trim() {
                        "p" => Key::P,
                        "l" | "ell" => Key::L,
                        "poly" => Key::Poly,
                        "h" => Key::H,
                        other => return Err(tok.error(format!("unknown key {other:?}"))),
                    };
                    let taken = match key {
                        Key::P => p.is_some(),
                        Key::L => ell.is_some(),
                        Key::Poly => poly.is_some(),
                        Key::H => h.is_some(),
                    };
                    if taken {
                        return Err(tok.error(format!("duplicate key {:?}", k.trim())));
                    }
                    current = Some(key);
                    let v = v.trim();
                    if v.is_empty() {
                        return Err(tok.error(format!("missing value for {:?}", k.trim())));
                    }
                    (key, v)
                }
                None => match current {
                    Some(Key::Poly) | Some(Key::H) => (current.unwrap(), tok.text),
                    Some(_) => return Err(tok.error("p and l take a single value")),
                    None => return Err(tok.error("value given before any key")),
                },
            };
            let n = parse_u32(tok, value)?;
            match key {
                Key::P => p = Some((n, tok)),
                Key::L => ell = Some((n as usize, tok)),
                Key::Poly => poly.get_or_insert_with(|| (Vec::new(), tok)).0.push(n),
                Key::H => h.get_or_insert_with(|| (Vec::new(), tok)).0.push(n),
            }
        }

        let end = ParseError {
            line: input.lines().count().max(1),
            column: input.lines().last().map_or(0, |l| l.chars().count()) + 1,
            message: String::new(),
        };
        let missing = |key: &str| ParseError {
            message: format!("missing key {key:?}"),
            ..end.clone()
        };
        let (p, p_tok) = p.ok_or_else(|| missing("p"))?;
        let (poly, poly_tok) = poly.ok_or_else(|| missing("poly"))?;
        let ell = match ell {
            Some((l, tok)) if l != poly.len() => {
                return Err(tok.error(format!(
                    "l = {l} but poly lists {} coefficients",
                    poly.len()
                )))
            }
            Some((l, _)) => l,
            None => poly.len(),
        };
        if p < 2 {
            return Err(p_tok.error("p must be at least 2"));
        }
        if let Some(&c) = poly.iter().find(|&&c| c >= p) {
            return Err(poly_tok.error(format!("coefficient {c} is not reduced mod {p}")));
        }
        let h = match h {
            Some((h, tok)) => {
                if h.len() > ell {
                    return Err(tok.error(format!("h has more than l = {ell} components")));
                }
                if let Some(&c) = h.iter().find(|&&c| c >= p) {
                    return Err(tok.error(format!("component {c} is not reduced mod {p}")));
                }
                h
            }
            None => vec![1],
        };
        Ok(SystemSpec { p, ell, poly, h })
    }
}

/// Canonical form, with `h` padded to `l` components.
impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let mut h = self.h.clone();
        h.resize(self.ell, 0);
        write!(
            f,
            "p={},l={},poly={},h={}",
            self.p,
            self.ell,
            join(&self.poly),
            join(&h)
        )
    }
}

impl SystemSpec {
    /// Builds the field, checking primality, irreducibility and `h != 0`.
    pub fn context(&self) -> galois_quantum::Result<FieldContext> {
        FieldContext::new(self.p, IrreduciblePoly::new(self.poly.clone()), &self.h)
    }
}

/// Reads a field element from its component list, padding with zeros.
pub fn parse_element(ctx: &FieldContext, input: &str) -> Result<FieldElement, ParseError> {
    let coeffs = parse_coefficients(input)?;
    element_from(ctx, &coeffs).map_err(|message| ParseError {
        line: 1,
        column: 1,
        message,
    })
}

pub(crate) fn element_from(ctx: &FieldContext, coeffs: &[u32]) -> Result<FieldElement, String> {
    if coeffs.len() > ctx.ell() {
        return Err(format!("expected at most {} components", ctx.ell()));
    }
    if let Some(&c) = coeffs.iter().find(|&&c| c >= ctx.p()) {
        return Err(format!("component {c} is not reduced mod {}", ctx.p()));
    }
    let mut padded = coeffs.to_vec();
    padded.resize(ctx.ell(), 0);
    ctx.element(&padded).map_err(|e| e.to_string())
}
