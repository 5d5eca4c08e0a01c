//! Text syntax for sums of monomials, e.g. `e*f - h` or `x*y + (1/2) t z`.
//!
//! Coefficients are written before the monomial: bare integers (`2 e`),
//! parenthesised scalar literals (`(1/2) z`, `(1 + z3^1) x`), or nothing for
//! ±1. Factors of a monomial are joined by `*`; `x^3` abbreviates `x*x*x`.
//! The empty monomial renders as `1`.

use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, Scalar};

/// A parsed term: coefficient and the word of basis names.
pub type Term = (Scalar, Vec<String>);

fn coefficient_prefix(c: &Scalar) -> (bool, Option<String>) {
    if let Some(q) = c.as_rational() {
        let neg = q < num_traits::zero();
        let abs = if neg { -q } else { q };
        if abs == num_traits::one() {
            return (neg, None);
        }
        let text = if abs.is_integer() { abs.numer().to_string() } else { format!("({}/{})", abs.numer(), abs.denom()) };
        (neg, Some(text))
    } else {
        (false, Some(format!("({c})")))
    }
}

/// Renders `Σ c · key`, each key being an already formatted monomial (empty = unit),
/// optionally prefixed by a power of `t`.
pub fn render_terms(terms: impl IntoIterator<Item = (usize, String, Scalar)>) -> String {
    let mut out = String::new();
    for (tpow, key, c) in terms {
        if c.is_zero() {
            continue;
        }
        let (neg, coeff) = coefficient_prefix(&c);
        let mut parts: Vec<String> = Vec::new();
        if let Some(cf) = coeff {
            parts.push(cf);
        }
        match tpow {
            0 => {}
            1 => parts.push("t".into()),
            k => parts.push(format!("t^{k}")),
        }
        if !key.is_empty() {
            parts.push(key);
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        let body = parts.join(" ");
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn render_combination(terms: impl IntoIterator<Item = (String, Scalar)>) -> String {
    render_terms(terms.into_iter().map(|(k, c)| (0, k, c)))
}

/// Joins basis names with `*` (the unit renders as the empty string).
pub fn render_word<'a>(names: impl IntoIterator<Item = &'a str>) -> String {
    names.into_iter().collect::<Vec<_>>().join("*")
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Number(String),
    Paren(String),
    Ident(String),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let err = |m: String| Error::Parse { context: format!("expression `{s}`"), message: m };
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut toks = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1
            }
            '(' => {
                let start = i + 1;
                let mut depth = 1;
                i += 1;
                while i < chars.len() && depth > 0 {
                    match chars[i] {
                        '(' => depth += 1,
                        ')' => depth -= 1,
                        _ => {}
                    }
                    i += 1;
                }
                if depth != 0 {
                    return Err(err(format!("unbalanced parenthesis at position {start}")));
                }
                toks.push(Tok::Paren(chars[start..i - 1].iter().collect()));
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                toks.push(Tok::Number(chars[start..i].iter().collect()));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                toks.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(err(format!("unexpected character `{other}` at position {i}"))),
        }
    }
    Ok(toks)
}

/// Parses a sum of monomials. `conductor` resolves bare `z^k` inside parenthesised coefficients.
pub fn parse_expression(s: &str, conductor: u32) -> Result<Vec<Term>> {
    let err = |m: &str| Error::Parse { context: format!("expression `{s}`"), message: m.to_string() };
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(err("empty expression"));
    }
    let mut terms = Vec::new();
    let mut pos = 0;
    loop {
        let mut coeff = Scalar::one();
        while let Some(t @ (Tok::Plus | Tok::Minus)) = toks.get(pos) {
            if *t == Tok::Minus {
                coeff = -coeff;
            }
            pos += 1;
        }
        let mut word: Vec<String> = Vec::new();
        let mut saw_factor = false;
        while let Some(tok) = toks.get(pos) {
            match tok {
                Tok::Star => {
                    pos += 1;
                    continue;
                }
                Tok::Plus | Tok::Minus => break,
                Tok::Caret => return Err(err("`^` must follow a basis name")),
                Tok::Number(n) => {
                    coeff = &coeff * &parse_scalar(n, conductor)?;
                    pos += 1;
                }
                Tok::Paren(inner) => {
                    coeff = &coeff * &parse_scalar(inner, conductor)?;
                    pos += 1;
                }
                Tok::Ident(name) => {
                    pos += 1;
                    let mut reps = 1usize;
                    if toks.get(pos) == Some(&Tok::Caret) {
                        match toks.get(pos + 1) {
                            Some(Tok::Number(k)) => {
                                reps = k.parse().map_err(|_| err("bad exponent"))?;
                                pos += 2;
                            }
                            _ => return Err(err("expected exponent after `^`")),
                        }
                    }
                    word.extend(std::iter::repeat_n(name.clone(), reps));
                }
            }
            saw_factor = true;
        }
        if !saw_factor {
            return Err(err("missing term"));
        }
        terms.push((coeff, word));
        if pos >= toks.len() {
            break;
        }
    }
    Ok(terms)
}

/// Splits a whitespace/`*`/`,` separated word of basis names.
pub fn parse_word(parts: &[String]) -> Vec<String> {
    parts
        .iter()
        .flat_map(|p| p.split(|c: char| c == '*' || c == ',' || c.is_whitespace()))
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}
