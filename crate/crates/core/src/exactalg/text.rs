use super::{fmt_big, fmt_q, parse_big, parse_q, FactoredFunction, Unit, Q};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse {what} in {input:?}")]
pub struct ParseError {
    pub what: String,
    pub input: String,
}

fn perr(what: &str, input: &str) -> ParseError {
    ParseError { what: what.to_string(), input: input.to_string() }
}

fn fmt_x(x: &[i64]) -> String {
    let parts: Vec<String> = x.iter().map(|a| a.to_string()).collect();
    format!("theta[{}]", parts.join(","))
}

impl fmt::Display for FactoredFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(p) = self.product() else { return write!(f, "0") };
        let u = p.unit();
        let mut terms = Vec::new();
        if u.phase == Q::new(1, 2) {
            terms.push(format!("-{}", fmt_big(&u.mag)));
        } else {
            terms.push(fmt_big(&u.mag));
            if !u.phase.is_zero() {
                terms.push(format!("zeta^({})", fmt_q(&u.phase)));
            }
        }
        if !u.v_exp.is_zero() {
            terms.push(format!("v^({})", fmt_q(&u.v_exp)));
        }
        if !u.x.is_empty() {
            terms.push(fmt_x(&u.x));
        }
        for (fac, m) in p.factors() {
            let mut inner = Vec::new();
            if !fac.phase.is_zero() {
                inner.push(format!("zeta^({})", fmt_q(&fac.phase)));
            }
            if !fac.v_exp.is_zero() {
                inner.push(format!("v^({})", fmt_q(&fac.v_exp)));
            }
            if !fac.x.is_empty() {
                inner.push(fmt_x(&fac.x));
            }
            let pow = if *m == 1 { String::new() } else { format!("^({m})") };
            terms.push(format!("(1 - {}){}", inner.join(" "), pow));
        }
        write!(f, "{}", terms.join(" * "))
    }
}

fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '*' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn paren_value(s: &str, prefix: &str) -> Option<String> {
    let rest = s.strip_prefix(prefix)?;
    if rest.is_empty() {
        return Some("1".to_string());
    }
    let rest = rest.strip_prefix('^')?;
    let rest = rest.trim();
    match rest.strip_prefix('(') {
        Some(r) => r.strip_suffix(')').map(str::to_string),
        None => Some(rest.to_string()),
    }
}

fn parse_x(s: &str) -> Option<Vec<i64>> {
    let inner = s.strip_prefix("theta[")?.strip_suffix(']')?;
    if inner.trim().is_empty() {
        return Some(Vec::new());
    }
    inner.split(',').map(|a| a.trim().parse().ok()).collect()
}

/// Parse a `zeta^(p)`, `v^(k)` or `theta[x]` atom into `(phase, v, x)`.
fn parse_atom(t: &str, acc: &mut (Q, Q, Vec<i64>)) -> Option<()> {
    if t.starts_with("zeta") {
        acc.0 += parse_q(&paren_value(t, "zeta")?)?;
    } else if t.starts_with("theta") {
        let x = parse_x(t)?;
        if acc.2.is_empty() {
            acc.2 = x;
        } else if acc.2.len() == x.len() {
            acc.2.iter_mut().zip(&x).for_each(|(a, b)| *a += b);
        } else {
            return None;
        }
    } else if t.starts_with('v') {
        acc.1 += parse_q(&paren_value(t, "v")?)?;
    } else {
        return None;
    }
    Some(())
}

fn parse_factor(t: &str) -> Option<(Q, Q, Vec<i64>, i64)> {
    let mut depth = 0;
    let close = t.char_indices().find_map(|(i, c)| {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        (c == ')' && depth == 0).then_some(i)
    })?;
    let (body, tail) = (&t[..close], t[close + 1..].trim());
    let inner = body.strip_prefix('(')?.trim().strip_prefix('1')?.trim().strip_prefix('-')?;
    let mult = if tail.is_empty() {
        1
    } else {
        let tail = tail.strip_prefix('^')?.trim();
        let tail = tail.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(tail);
        tail.trim().parse().ok()?
    };
    let mut acc = (Q::zero(), Q::zero(), Vec::new());
    let mut seen = false;
    for atom in inner.split_whitespace() {
        parse_atom(atom, &mut acc)?;
        seen = true;
    }
    seen.then_some((acc.0, acc.1, acc.2, mult))
}

impl FromStr for FactoredFunction {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let s = s.trim();
        if s == "0" {
            return Ok(FactoredFunction::Zero);
        }
        let mut coef = BigRational::one();
        let mut mono = (Q::zero(), Q::zero(), Vec::new());
        let mut raw = Vec::new();
        for term in split_top(s) {
            if term.is_empty() {
                return Err(perr("empty term", s));
            }
            if term.starts_with('(') {
                raw.push(parse_factor(term).ok_or_else(|| perr("factor", term))?);
            } else if let Some(c) = parse_big(term) {
                coef *= c;
            } else {
                parse_atom(term, &mut mono).ok_or_else(|| perr("term", term))?;
            }
        }
        if coef.is_zero() {
            return Ok(FactoredFunction::Zero);
        }
        let phase = if coef.is_negative() { mono.0 + Q::new(1, 2) } else { mono.0 };
        let unit = Unit::new(coef.abs(), phase, mono.1, mono.2);
        FactoredFunction::from_raw(unit, raw).map_err(|e| perr(&e.to_string(), s))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonUnit {
    mag: String,
    phase: String,
    v: String,
    x: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonFactor {
    phase: String,
    v: String,
    x: Vec<i64>,
    mult: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonFunction {
    zero: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    unit: Option<JsonUnit>,
    #[serde(default)]
    factors: Vec<JsonFactor>,
    text: String,
}

impl Serialize for FactoredFunction {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let j = match self.product() {
            None => JsonFunction { zero: true, unit: None, factors: Vec::new(), text: "0".into() },
            Some(p) => {
                let u = p.unit();
                JsonFunction {
                    zero: false,
                    unit: Some(JsonUnit {
                        mag: fmt_big(&u.mag),
                        phase: fmt_q(&u.phase),
                        v: fmt_q(&u.v_exp),
                        x: u.x.clone(),
                    }),
                    factors: p
                        .factors()
                        .iter()
                        .map(|(f, m)| JsonFactor {
                            phase: fmt_q(&f.phase),
                            v: fmt_q(&f.v_exp),
                            x: f.x.clone(),
                            mult: *m,
                        })
                        .collect(),
                    text: self.to_string(),
                }
            }
        };
        j.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FactoredFunction {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = JsonFunction::deserialize(de)?;
        if j.zero {
            return Ok(FactoredFunction::Zero);
        }
        let bad = |s: &str| D::Error::custom(format!("bad rational {s:?}"));
        let u = j.unit.ok_or_else(|| D::Error::custom("missing unit"))?;
        let mag = parse_big(&u.mag).ok_or_else(|| bad(&u.mag))?;
        if !mag.is_positive() {
            return Err(D::Error::custom("unit magnitude must be positive"));
        }
        let unit = Unit::new(
            mag,
            parse_q(&u.phase).ok_or_else(|| bad(&u.phase))?,
            parse_q(&u.v).ok_or_else(|| bad(&u.v))?,
            u.x,
        );
        let mut raw = Vec::new();
        for f in j.factors {
            raw.push((
                parse_q(&f.phase).ok_or_else(|| bad(&f.phase))?,
                parse_q(&f.v).ok_or_else(|| bad(&f.v))?,
                f.x,
                f.mult,
            ));
        }
        let out = FactoredFunction::from_raw(unit, raw).map_err(D::Error::custom)?;
        if out.to_string() != j.text {
            return Err(D::Error::custom("text field disagrees with the structured form"));
        }
        Ok(out)
    }
}
