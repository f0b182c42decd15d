//! Text grammar for polynomial and symbol terms:
//! `coeff * z^(a1,...,aN) * zbar^(b1,...,bN) [* t^k] [* log(t)]`, joined by `+`/`-`.

use super::bipoly::{BiPolynomial, Monomial};
use crate::arith::{GaussianRational, MultiIndex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ParsedTerm {
    pub coeff: GaussianRational,
    pub alpha: Option<MultiIndex>,
    pub beta: Option<MultiIndex>,
    pub t_power: i64,
    pub log: bool,
}

/// Split at top-level `+`/`-` that are not exponent or factor signs.
fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut negative = false;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let binary = depth == 0
            && (ch == '+' || ch == '-')
            && prev.is_some_and(|p| !matches!(p, '^' | '*' | '/' | '(' | '+' | '-'));
        if binary {
            out.push((negative, std::mem::take(&mut cur)));
            negative = ch == '-';
            prev = Some(ch);
            continue;
        }
        if depth == 0 && (ch == '+' || ch == '-') && cur.trim().is_empty() {
            if ch == '-' {
                negative = !negative;
            }
            prev = Some(ch);
            continue;
        }
        cur.push(ch);
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    out.push((negative, cur));
    out
}

fn split_factors(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur);
    out
}

fn merge_index(slot: &mut Option<MultiIndex>, idx: MultiIndex, term: &str) -> Result<()> {
    *slot = Some(match slot.take() {
        None => idx,
        Some(old) if old.dim() == idx.dim() => old.add(&idx),
        Some(old) => return Err(Error::Parse(format!("mixed index lengths {old} and {idx} in `{term}`"))),
    });
    Ok(())
}

fn parse_index(s: &str) -> Result<MultiIndex> {
    s.parse()
}

fn parse_term(negative: bool, term: &str) -> Result<ParsedTerm> {
    let mut t = ParsedTerm { coeff: GaussianRational::one(), alpha: None, beta: None, t_power: 0, log: false };
    for raw in split_factors(term) {
        let f: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if f.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{term}`")));
        }
        if let Some(rest) = f.strip_prefix("zbar") {
            let idx = match rest.strip_prefix('^') {
                Some(e) => parse_index(e)?,
                None if rest.is_empty() => MultiIndex::new(vec![1]),
                None => return Err(Error::Parse(format!("bad factor `{f}`"))),
            };
            merge_index(&mut t.beta, idx, term)?;
        } else if let Some(rest) = f.strip_prefix('z') {
            let idx = match rest.strip_prefix('^') {
                Some(e) => parse_index(e)?,
                None if rest.is_empty() => MultiIndex::new(vec![1]),
                None => return Err(Error::Parse(format!("bad factor `{f}`"))),
            };
            merge_index(&mut t.alpha, idx, term)?;
        } else if f == "log(t)" {
            if t.log {
                return Err(Error::Parse(format!("repeated log(t) in `{term}`")));
            }
            t.log = true;
        } else if let Some(rest) = f.strip_prefix('t') {
            let k = match rest.strip_prefix('^') {
                Some(e) => e
                    .trim_start_matches('(')
                    .trim_end_matches(')')
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{f}`")))?,
                None if rest.is_empty() => 1,
                None => return Err(Error::Parse(format!("bad factor `{f}`"))),
            };
            t.t_power += k;
        } else {
            let c: GaussianRational = f.parse()?;
            t.coeff = &t.coeff * &c;
        }
    }
    if negative {
        t.coeff = -t.coeff;
    }
    Ok(t)
}

pub fn parse_terms(s: &str) -> Result<Vec<ParsedTerm>> {
    if s.trim().is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    split_terms(s)
        .into_iter()
        .map(|(neg, body)| {
            if body.trim().is_empty() {
                Err(Error::Parse(format!("empty term in `{s}`")))
            } else {
                parse_term(neg, &body)
            }
        })
        .collect()
}

/// Common dimension of all indices, checked against `dim` when given.
pub fn resolve_dim(terms: &[ParsedTerm], dim: Option<usize>) -> Result<usize> {
    let mut found = dim;
    for t in terms {
        for idx in t.alpha.iter().chain(t.beta.iter()) {
            match found {
                None => found = Some(idx.dim()),
                Some(n) if n != idx.dim() => return Err(Error::DimensionMismatch { expected: n, found: idx.dim() }),
                _ => {}
            }
        }
    }
    found.ok_or_else(|| Error::Parse("cannot infer the dimension; give it explicitly".into()))
}

/// Parse a polynomial; `dim` may be omitted when some term carries an index.
pub fn parse_bipoly(s: &str, dim: Option<usize>) -> Result<BiPolynomial> {
    let terms = parse_terms(s)?;
    let n = resolve_dim(&terms, dim)?;
    let mut p = BiPolynomial::zero(n);
    for t in terms {
        if t.t_power != 0 || t.log {
            return Err(Error::Parse(format!("radial factor not allowed in a polynomial: `{s}`")));
        }
        let alpha = t.alpha.unwrap_or_else(|| MultiIndex::zero(n));
        let beta = t.beta.unwrap_or_else(|| MultiIndex::zero(n));
        p.add_term(Monomial::new(alpha, beta), t.coeff);
    }
    Ok(p)
}

impl std::str::FromStr for BiPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_bipoly(s, None)
    }
}
