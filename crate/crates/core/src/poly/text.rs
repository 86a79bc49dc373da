//! Text (`3*x^2*y^-1 - y + 1`) and JSON forms of polynomials.

use std::str::FromStr;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{Exp, LaurentPoly};
use crate::coeff::{format_coeff, parse_rational, Coeff, CoefficientDomain};
use crate::error::{Error, Result};

/// `{"domain": "Z", "terms": [[a, b, "c"], ...]}` with terms in ascending
/// exponent order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub domain: CoefficientDomain,
    pub terms: Vec<(i64, i64, String)>,
}

impl From<&LaurentPoly> for PolyJson {
    fn from(p: &LaurentPoly) -> Self {
        PolyJson {
            domain: p.domain,
            terms: p
                .terms()
                .map(|(e, c)| (e.x, e.y, format_coeff(c)))
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for LaurentPoly {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for (a, b, c) in &j.terms {
            terms.push((Exp::new(*a, *b), parse_rational(c)?));
        }
        LaurentPoly::from_terms(j.domain, terms)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        LaurentPoly::try_from(j).map_err(serde::de::Error::custom)
    }
}

fn format_monomial(e: Exp) -> String {
    let mut parts = Vec::new();
    for (name, k) in [("x", e.x), ("y", e.y)] {
        match k {
            0 => {}
            1 => parts.push(name.to_string()),
            k => parts.push(format!("{name}^{k}")),
        }
    }
    parts.join("*")
}

pub(super) fn format_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mono = format_monomial(e);
        if mono.is_empty() {
            out.push_str(&format_coeff(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format_coeff(&abs));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

/// Parses the text form over the given domain. Variables are `x`/`y`
/// (or `x1`/`x2`); exponents may be negative.
pub fn parse_poly(s: &str, domain: CoefficientDomain) -> Result<LaurentPoly> {
    let mut terms = Vec::new();
    for (sign, body) in split_terms(s)? {
        let (e, c) = parse_term(body)?;
        terms.push((e, if sign { -c } else { c }));
    }
    LaurentPoly::from_terms(domain, terms)
}

// Splits on top-level '+'/'-', skipping a '-' that directly follows '^'.
fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let mut negative = false;
    let mut start = 0;
    let mut prev: Option<char> = None;
    let mut pending = false;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && prev != Some('^') {
            let body = s[start..i].trim();
            if body.is_empty() {
                if pending {
                    return Err(Error::Parse(format!("dangling operator in {s:?}")));
                }
                // leading sign
                if ch == '-' {
                    negative = !negative;
                }
            } else {
                out.push((negative, body));
                negative = ch == '-';
            }
            pending = true;
            start = i + 1;
        } else if !ch.is_whitespace() {
            pending = false;
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    let body = s[start..].trim();
    if body.is_empty() {
        return Err(Error::Parse(format!("empty term in {s:?}")));
    }
    out.push((negative, body));
    Ok(out)
}

fn parse_term(t: &str) -> Result<(Exp, Coeff)> {
    let mut coeff = Coeff::one();
    let mut e = Exp::ZERO;
    for factor in t.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in {t:?}")));
        }
        let (base, exp) = match factor.split_once('^') {
            Some((b, k)) => {
                let k = i64::from_str(k.trim())
                    .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                (b.trim(), k)
            }
            None => (factor, 1),
        };
        match base {
            "x" | "x1" | "x_1" => e.x += exp,
            "y" | "x2" | "x_2" => e.y += exp,
            num => {
                if factor.contains('^') {
                    return Err(Error::Parse(format!("exponent on a coefficient: {factor:?}")));
                }
                coeff *= parse_rational(num)?;
            }
        }
    }
    Ok((e, coeff))
}

impl LaurentPoly {
    pub fn parse(s: &str, domain: CoefficientDomain) -> Result<Self> {
        parse_poly(s, domain)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomials always serialize")
    }
}
