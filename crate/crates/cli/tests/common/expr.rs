//! A small stand-alone reader for information expressions.
//!
//! Accepts sums of `[coeff[*]] H(A,B|C)` / `I(A;B|C)` terms and the literal
//! `0`, where `coeff` is an integer or `p/q`. Canonical forms are dense
//! vectors indexed by `mask - 1`.

use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Q = Ratio<i128>;

pub fn q(v: i128) -> Q {
    Q::from_integer(v)
}

/// Parses `"p"` or `"p/q"` as produced in JSON documents.
pub fn q_from_parts(num: &str, den: &str) -> Result<Q, String> {
    let n: i128 = num.parse().map_err(|_| format!("bad numerator {num:?}"))?;
    let d: i128 = den.parse().map_err(|_| format!("bad denominator {den:?}"))?;
    if d == 0 {
        return Err("zero denominator".into());
    }
    Ok(Q::new(n, d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    /// `H(alpha | gamma)` as bitmasks.
    H(u32, u32),
    /// `I(alpha ; beta | gamma)`.
    I(u32, u32, u32),
}

pub struct Universe {
    pub names: Vec<String>,
}

impl Universe {
    pub fn new(names: &[&str]) -> Self {
        Universe { names: names.iter().map(|s| s.to_string()).collect() }
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn dim(&self) -> usize {
        (1usize << self.n()) - 1
    }

    fn set(&self, text: &str) -> Result<u32, String> {
        let mut mask = 0;
        for name in text.split(',').map(str::trim) {
            let i = self.names.iter().position(|n| n == name).ok_or(format!("unknown variable {name:?}"))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    /// Reads a single measure such as `I(A;B,C|D)`.
    pub fn term(&self, text: &str) -> Result<Term, String> {
        let t = text.trim();
        let (kind, inner) = if let Some(r) = t.strip_prefix("H(") {
            ('H', r)
        } else if let Some(r) = t.strip_prefix("I(") {
            ('I', r)
        } else {
            return Err(format!("not a measure: {t:?}"));
        };
        let inner = inner.strip_suffix(')').ok_or(format!("unclosed measure: {t:?}"))?;
        let (main, given) = match inner.split_once('|') {
            Some((m, g)) => (m, self.set(g)?),
            None => (inner, 0),
        };
        match kind {
            'H' => Ok(Term::H(self.set(main)?, given)),
            _ => {
                let (a, b) = main.split_once(';').ok_or(format!("I needs two arguments: {t:?}"))?;
                Ok(Term::I(self.set(a)?, self.set(b)?, given))
            }
        }
    }

    pub fn term_vector(&self, t: &Term) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        let mut add = |mask: u32, c: i128| {
            if mask != 0 {
                v[mask as usize - 1] += q(c);
            }
        };
        match *t {
            Term::H(a, g) => {
                add(a | g, 1);
                add(g, -1);
            }
            Term::I(a, b, g) => {
                add(a | g, 1);
                add(b | g, 1);
                add(a | b | g, -1);
                add(g, -1);
            }
        }
        v
    }

    /// Canonical form of a whole expression.
    pub fn vector(&self, text: &str) -> Result<Vec<Q>, String> {
        let mut out = vec![Q::zero(); self.dim()];
        for (c, body) in split_terms(text)? {
            if body == "0" {
                continue;
            }
            let tv = self.term_vector(&self.term(&body)?);
            for (o, t) in out.iter_mut().zip(tv) {
                *o += c * t;
            }
        }
        Ok(out)
    }
}

/// Splits `a - 2*b + 1/2 c` into signed coefficients and measure bodies;
/// a bare `0` comes back with body `"0"`.
fn split_terms(text: &str) -> Result<Vec<(Q, String)>, String> {
    let mut raw: Vec<(Q, String)> = Vec::new();
    let mut sign = q(1);
    let mut cur = String::new();
    let mut depth = 0;
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 => {
                if !cur.trim().is_empty() {
                    raw.push((sign, std::mem::take(&mut cur)));
                }
                sign = if ch == '-' { q(-1) } else { q(1) };
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        raw.push((sign, cur));
    }
    raw.into_iter()
        .map(|(s, body)| {
            let body = body.trim();
            if body == "0" {
                return Ok((q(0), "0".to_string()));
            }
            let at = body.find(['H', 'I']).ok_or(format!("no measure in {body:?}"))?;
            let coeff = body[..at].trim().trim_end_matches('*').trim();
            let c = if coeff.is_empty() {
                q(1)
            } else if let Some((a, b)) = coeff.split_once('/') {
                q_from_parts(a.trim(), b.trim())?
            } else {
                q(coeff.parse().map_err(|_| format!("bad coefficient {coeff:?}"))?)
            };
            Ok((s * c, body[at..].to_string()))
        })
        .collect()
}

/// `(lhs, op, rhs)` with `op` one of `<=`, `>=`, `=`.
pub fn split_relation(text: &str) -> Result<(String, &'static str, String), String> {
    for op in ["<=", ">="] {
        if let Some((l, r)) = text.split_once(op) {
            return Ok((l.trim().to_string(), op, r.trim().to_string()));
        }
    }
    let (l, r) = text.split_once('=').ok_or(format!("no relation in {text:?}"))?;
    Ok((l.trim().to_string(), "=", r.trim().to_string()))
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |s, (x, y)| s + x * y)
}

/// Elemental rows in no particular order, computed from their definition.
pub fn elemental_rows(u: &Universe) -> Vec<(Term, Vec<Q>)> {
    let n = u.n();
    let full: u32 = (1 << n) - 1;
    let mut out = Vec::new();
    for i in 0..n {
        let t = Term::H(1 << i, full & !(1 << i));
        out.push((t.clone(), u.term_vector(&t)));
    }
    for i in 0..n {
        for j in i + 1..n {
            let rest = full & !(1 << i) & !(1 << j);
            for k in 0..=full {
                if k & !rest == 0 {
                    let t = Term::I(1 << i, 1 << j, k);
                    out.push((t.clone(), u.term_vector(&t)));
                }
            }
        }
    }
    out
}

/// Whether a term is one of the elemental measures over `n` variables.
pub fn is_elemental(t: &Term, n: usize) -> bool {
    let full: u32 = (1 << n) - 1;
    match *t {
        Term::H(a, g) => a.count_ones() == 1 && a & g == 0 && a | g == full,
        Term::I(a, b, g) => {
            n >= 2 && a.count_ones() == 1 && b.count_ones() == 1 && a != b && (a | b) & g == 0 && g & !full == 0
        }
    }
}

pub fn is_nonnegative(v: &Q) -> bool {
    !v.is_negative()
}
