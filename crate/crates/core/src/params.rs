//! Pretzel parameter lists: parsing, normalization, type and mutation class.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered, nonzero crossing counts `p_1, ..., p_n` of a pretzel diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct ParamList(Vec<i64>);

/// Connectivity class of a pretzel diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PretzelKind {
    Type1,
    Type2,
    Type3,
    Link,
}

impl PretzelKind {
    pub fn is_knot(self) -> bool {
        !matches!(self, PretzelKind::Link)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PretzelKind::Type1 => "Type1",
            PretzelKind::Type2 => "Type2",
            PretzelKind::Type3 => "Type3",
            PretzelKind::Link => "Link",
        }
    }
}

impl fmt::Display for PretzelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Mutation-blind key: mutants share double branched covers, so every
/// obstruction computed from the cover depends only on this value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MutationClass {
    /// Sorted parameter multiset.
    pub multiset: Vec<i64>,
    /// Lexicographic minimum of the sorted multiset and its sorted negation.
    pub mirror_normalized: Vec<i64>,
}

impl MutationClass {
    /// Whether `mirror_normalized` came from the negated multiset.
    pub fn is_mirrored(&self) -> bool {
        self.multiset != self.mirror_normalized
    }

    /// Stable textual key, e.g. `-3,-3,-3,1,1,1,1`.
    pub fn key(&self) -> String {
        join(&self.mirror_normalized)
    }
}

impl ParamList {
    pub fn new(params: Vec<i64>) -> Result<Self> {
        if params.is_empty() {
            return Err(Error::EmptyParams);
        }
        if params.contains(&0) {
            return Err(Error::ZeroParameter);
        }
        Ok(ParamList(params))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    /// Number of `±1` entries.
    pub fn unitary_count(&self) -> usize {
        self.0.iter().filter(|p| p.abs() == 1).count()
    }

    pub fn non_unitary(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied().filter(|p| p.abs() > 1)
    }

    pub fn even_count(&self) -> usize {
        self.0.iter().filter(|p| *p % 2 == 0).count()
    }
}

impl TryFrom<Vec<i64>> for ParamList {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        ParamList::new(v)
    }
}

impl From<ParamList> for Vec<i64> {
    fn from(p: ParamList) -> Vec<i64> {
        p.0
    }
}

impl fmt::Display for ParamList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

pub(crate) fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

impl FromStr for ParamList {
    type Err = Error;

    /// Accepts `1,1,-3` style lists. Whitespace is ignored, a surrounding
    /// `P(...)` is allowed, and `[1^4]` / `[1^-4]` expand to repeated unitaries.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        let mut body = cleaned.as_str();
        if let Some(inner) = body
            .strip_prefix("P(")
            .or_else(|| body.strip_prefix("p("))
            .and_then(|b| b.strip_suffix(')'))
        {
            body = inner;
        } else if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
            body = inner;
        }
        if body.is_empty() {
            return Err(Error::EmptyParams);
        }
        let mut params = Vec::new();
        for token in body.split(',') {
            if token.is_empty() {
                return Err(Error::Parse(format!("empty entry in {s:?}")));
            }
            if let Some(inner) = token.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                params.extend(expand_unitary_block(inner)?);
            } else {
                let value: i64 = token
                    .parse()
                    .map_err(|_| Error::Parse(format!("not an integer: {token:?}")))?;
                params.push(value);
            }
        }
        ParamList::new(params)
    }
}

// `1^4`, `1^-4`, `-1^4`
fn expand_unitary_block(inner: &str) -> Result<Vec<i64>> {
    let (base, exp) = inner
        .split_once('^')
        .ok_or_else(|| Error::Parse(format!("expected [1^d], got [{inner}]")))?;
    let base: i64 = base
        .parse()
        .map_err(|_| Error::Parse(format!("bad base in [{inner}]")))?;
    let exp: i64 = exp
        .parse()
        .map_err(|_| Error::Parse(format!("bad exponent in [{inner}]")))?;
    if base.abs() != 1 {
        return Err(Error::Parse(format!(
            "only unitary blocks can be abbreviated, got [{inner}]"
        )));
    }
    if exp == 0 {
        return Err(Error::Parse(format!("empty unitary block [{inner}]")));
    }
    let sign = base * exp.signum();
    Ok(vec![sign; exp.unsigned_abs() as usize])
}

/// Type 1: `n` and every entry odd. Type 2 / Type 3: exactly one even entry
/// with `n` odd / even. Anything else is a link of two or more components.
pub fn classify_type(p: &ParamList) -> PretzelKind {
    let n = p.len();
    match p.even_count() {
        0 if n % 2 == 1 => PretzelKind::Type1,
        1 if n % 2 == 1 => PretzelKind::Type2,
        1 => PretzelKind::Type3,
        _ => PretzelKind::Link,
    }
}

/// Removes opposite unitary pairs, then folds each `±1` into a `∓2`
/// (which becomes `±2`). The user's order of the surviving entries is kept.
/// A pair is never cancelled if it is all that is left (only links get there).
pub fn normalize(p: &ParamList) -> ParamList {
    let mut v = cancel_unitary_pairs(p.as_slice().to_vec());
    loop {
        let Some(u) = v.iter().position(|x| x.abs() == 1) else {
            break;
        };
        let sign = v[u];
        let Some(j) = v.iter().position(|x| *x == -2 * sign) else {
            break;
        };
        v[j] = 2 * sign;
        v.remove(u);
    }
    ParamList(v)
}

fn cancel_unitary_pairs(mut v: Vec<i64>) -> Vec<i64> {
    loop {
        let plus = v.iter().position(|x| *x == 1);
        let minus = v.iter().position(|x| *x == -1);
        match (plus, minus) {
            (Some(a), Some(b)) if v.len() > 2 => {
                let (hi, lo) = if a > b { (a, b) } else { (b, a) };
                v.remove(hi);
                v.remove(lo);
            }
            _ => return v,
        }
    }
}

/// Whether `normalize` would leave `p` unchanged.
pub fn is_normalized(p: &ParamList) -> bool {
    normalize(p) == *p
}

pub fn mirror(p: &ParamList) -> ParamList {
    ParamList(p.0.iter().map(|x| -x).collect())
}

pub fn mutation_class(p: &ParamList) -> MutationClass {
    let mut multiset = p.0.clone();
    multiset.sort_unstable();
    let mut negated: Vec<i64> = multiset.iter().map(|x| -x).collect();
    negated.sort_unstable();
    let mirror_normalized = std::cmp::min(&multiset, &negated).clone();
    MutationClass {
        multiset,
        mirror_normalized,
    }
}
