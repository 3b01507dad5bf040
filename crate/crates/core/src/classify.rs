//! Verdicts: obstructions, ribbon families and bounded enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fibered::{is_fibered, FiberStatus, FiberVerdict, Subcase};
use crate::lattice::{signature, Embedding, SearchConfig, SearchOutcome};
use crate::matrix::is_perfect_square;
use crate::params::{classify_type, join, mutation_class, normalize, MutationClass, ParamList, PretzelKind};
use crate::plumbing::{determinant, negative_definite_graph, StarGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Donaldson {
    Embeddable { witness: Embedding },
    NotEmbeddable,
    Inconclusive,
    /// Not searched: a cheaper obstruction already fired.
    Skipped,
}

impl Donaldson {
    pub fn as_str(&self) -> &'static str {
        match self {
            Donaldson::Embeddable { .. } => "embeddable",
            Donaldson::NotEmbeddable => "not_embeddable",
            Donaldson::Inconclusive => "inconclusive",
            Donaldson::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub det: u64,
    pub det_square: bool,
    pub signature: i64,
    pub donaldson: Donaldson,
    /// Search nodes visited (0 when skipped).
    pub nodes: u64,
    /// The plumbing (and any witness) belongs to the mirror.
    pub graph_mirrored: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Obstruction {
    Determinant,
    Signature,
    Donaldson,
}

impl Obstruction {
    pub fn as_str(self) -> &'static str {
        match self {
            Obstruction::Determinant => "det",
            Obstruction::Signature => "sigma",
            Obstruction::Donaldson => "donaldson",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reasons")]
pub enum Status {
    RibbonKnown,
    NotSlice(Vec<Obstruction>),
    Exceptional,
    ObstructionsVanish,
    /// The embedding search hit its node limit.
    Inconclusive,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::RibbonKnown => f.write_str("RibbonKnown"),
            Status::NotSlice(reasons) => {
                let r: Vec<&str> = reasons.iter().map(|o| o.as_str()).collect();
                write!(f, "NotSlice({})", r.join("+"))
            }
            Status::Exceptional => f.write_str("Exceptional"),
            Status::ObstructionsVanish => f.write_str("ObstructionsVanish"),
            Status::Inconclusive => f.write_str("Inconclusive"),
            Status::NotApplicable => f.write_str("NotApplicable"),
        }
    }
}

impl Status {
    pub fn is_not_slice(&self) -> bool {
        matches!(self, Status::NotSlice(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum Family {
    /// `±P(1,1,1,1,−3,−3,−3)`.
    F1,
    /// Pairs `{q, −q}` plus one even `k`.
    F2 { pairs: Vec<i64>, k: i64 },
    /// `{1, 3, t+1, −4−t}` plus pairs.
    F3 { t: i64, pairs: Vec<i64> },
    /// `{k, −k−1}` plus pairs, `1 < k < q` for every pair.
    F4 { k: i64, pairs: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonFamily {
    #[serde(flatten)]
    pub family: Family,
    pub mirrored: bool,
}

impl RibbonFamily {
    pub fn tag(&self) -> &'static str {
        match self.family {
            Family::F1 => "F1",
            Family::F2 { .. } => "F2",
            Family::F3 { .. } => "F3",
            Family::F4 { .. } => "F4",
        }
    }
}

impl fmt::Display for RibbonFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.mirrored { "-" } else { "" };
        let pairs = |ps: &[i64]| {
            ps.iter()
                .flat_map(|q| [q.to_string(), (-q).to_string()])
                .collect::<Vec<_>>()
        };
        match &self.family {
            Family::F1 => write!(f, "F1 {sign}P(1,1,1,1,-3,-3,-3)"),
            Family::F2 { pairs: ps, k } => {
                let mut v = pairs(ps);
                v.push(k.to_string());
                write!(f, "F2 {sign}P({}) with k={k}", v.join(","))
            }
            Family::F3 { t, pairs: ps } => {
                let mut v = vec!["1".into(), "3".into(), (t + 1).to_string(), (-4 - t).to_string()];
                v.extend(pairs(ps));
                write!(f, "F3 {sign}P({}) with t={t}", v.join(","))
            }
            Family::F4 { k, pairs: ps } => {
                let mut v = vec![k.to_string(), (-k - 1).to_string()];
                v.extend(pairs(ps));
                write!(f, "F4 {sign}P({}) with k={k}", v.join(","))
            }
        }
    }
}

/// Sorted multiset as counts.
fn counts(ms: &[i64]) -> BTreeMap<i64, usize> {
    let mut c = BTreeMap::new();
    for &x in ms {
        *c.entry(x).or_insert(0) += 1;
    }
    c
}

/// Removes one copy of each value in `take`; `None` if something is missing.
fn remove_all(c: &BTreeMap<i64, usize>, take: &[i64]) -> Option<BTreeMap<i64, usize>> {
    let mut c = c.clone();
    for x in take {
        let n = c.get_mut(x)?;
        if *n == 0 {
            return None;
        }
        *n -= 1;
    }
    c.retain(|_, n| *n > 0);
    Some(c)
}

/// Splits into pairs `{q, −q}` with `q ≥ 3` odd; returns the `q`s ascending.
fn as_pairs(c: &BTreeMap<i64, usize>) -> Option<Vec<i64>> {
    let mut qs = Vec::new();
    for (&x, &n) in c {
        if x < 0 {
            if c.get(&-x) != Some(&n) {
                return None;
            }
        } else {
            if c.get(&-x) != Some(&n) || x < 3 || x % 2 == 0 {
                return None;
            }
            qs.extend(std::iter::repeat(x).take(n));
        }
    }
    Some(qs)
}

fn families_of(ms: &[i64]) -> Vec<Family> {
    let c = counts(ms);
    let mut out = Vec::new();
    let mut f1 = vec![1, 1, 1, 1, -3, -3, -3];
    f1.sort_unstable();
    if ms == f1 {
        out.push(Family::F1);
    }
    let evens: Vec<i64> = ms.iter().copied().filter(|x| x % 2 == 0).collect();
    if let [k] = evens[..] {
        if let Some(pairs) = remove_all(&c, &[k]).and_then(|r| as_pairs(&r)) {
            out.push(Family::F2 { pairs, k });
        }
    }
    for &b in c.keys().filter(|&&b| b <= -4) {
        let t = -4 - b;
        if let Some(pairs) = remove_all(&c, &[1, 3, t + 1, b]).and_then(|r| as_pairs(&r)) {
            out.push(Family::F3 { t, pairs });
        }
    }
    for &k in c.keys().filter(|&&k| k >= 2) {
        if let Some(pairs) = remove_all(&c, &[k, -k - 1]).and_then(|r| as_pairs(&r)) {
            if pairs.iter().all(|&q| k < q) {
                out.push(Family::F4 { k, pairs });
            }
        }
    }
    out
}

fn sorted(v: impl IntoIterator<Item = i64>) -> Vec<i64> {
    let mut v: Vec<i64> = v.into_iter().collect();
    v.sort_unstable();
    v
}

/// Every family instantiation of the class, up to mirror, in tag order
/// (direct matches before mirrored ones within a tag).
pub fn family_matches(c: &MutationClass) -> Vec<RibbonFamily> {
    let direct = families_of(&c.multiset);
    let mirrored = families_of(&sorted(c.multiset.iter().map(|x| -x)));
    let mut all: Vec<(usize, RibbonFamily)> = direct
        .into_iter()
        .map(|f| (false, f))
        .chain(mirrored.into_iter().map(|f| (true, f)))
        .map(|(m, family)| {
            let r = RibbonFamily { family, mirrored: m };
            let rank = ["F1", "F2", "F3", "F4"].iter().position(|t| *t == r.tag()).unwrap();
            (rank, r)
        })
        .collect();
    // stable: keeps direct before mirrored
    all.sort_by_key(|(rank, _)| *rank);
    all.into_iter().map(|(_, r)| r).collect()
}

pub fn match_family(c: &MutationClass) -> Option<RibbonFamily> {
    family_matches(c).into_iter().next()
}

fn exceptional_direct(ms: &[i64]) -> bool {
    let c = counts(ms);
    c.keys().any(|&a| {
        let r = a.rem_euclid(120);
        if r != 1 && r != 97 {
            return false;
        }
        let b = -a - 1;
        let Some(c3) = (a + 1).checked_mul(a + 1).map(|s| -s / 2) else {
            return false;
        };
        remove_all(&c, &[a, b, c3]).is_some_and(|rest| {
            rest.iter().all(|(x, n)| *x != 0 && rest.get(&-x) == Some(n))
        })
    })
}

/// Pairs `{p, −p}` plus a triple `(a, −a−1, −(a+1)²/2)` with
/// `a ≡ 1, 97 (mod 120)`, up to mirror.
pub fn is_exceptional(c: &MutationClass) -> bool {
    exceptional_direct(&c.multiset) || exceptional_direct(&sorted(c.multiset.iter().map(|x| -x)))
}

/// Cancels cyclically adjacent non-unitary pairs `(q, −q)`, `|q| ≥ 2`,
/// leftmost first, until none is left. Unitary entries never block
/// adjacency and are kept.
pub fn detectably_ribbon_reduce(p: &ParamList) -> ParamList {
    let mut v = p.as_slice().to_vec();
    loop {
        let idx: Vec<usize> = (0..v.len()).filter(|&i| v[i].abs() != 1).collect();
        let m = idx.len();
        let hit = (0..m).find(|&j| {
            let (a, b) = (v[idx[j]], v[idx[(j + 1) % m]]);
            m >= 2 && a == -b && (m > 2 || j == 0)
        });
        let Some(j) = hit else { break };
        let (i1, i2) = (idx[j], idx[(j + 1) % m]);
        v = v
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != i1 && *i != i2)
            .map(|(_, x)| *x)
            .collect();
        if v.is_empty() {
            break;
        }
    }
    // an even-length list of pairs can cancel to nothing; keep the input then
    ParamList::new(v).unwrap_or_else(|_| p.clone())
}

fn whitelisted_base(ms: &[i64]) -> bool {
    let c = counts(ms);
    match ms {
        [k] => k % 2 == 0,
        [a, b] => a + b == -1 || a + b == 1,
        _ => {
            ms == sorted([1, 1, 1, 1, -3, -3, -3])
                || c.keys().filter(|&&b| b <= -4).any(|&b| {
                    let t = -4 - b;
                    remove_all(&c, &[1, 3, t + 1, b]).is_some_and(|r| r.is_empty())
                })
        }
    }
}

/// Whether the adjacent-pair reduction ends at a known ribbon base.
pub fn is_detectably_ribbon(p: &ParamList) -> bool {
    let r = detectably_ribbon_reduce(p);
    let ms = sorted(r.as_slice().iter().copied());
    whitelisted_base(&ms) || whitelisted_base(&sorted(ms.iter().map(|x| -x)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub input: ParamList,
    pub normalized: ParamList,
    pub kind: PretzelKind,
    pub fibered: FiberVerdict,
    pub obstructions: Option<ObstructionReport>,
    pub family: Option<RibbonFamily>,
    pub family_matches: Vec<RibbonFamily>,
    pub exceptional: bool,
    pub detectably_ribbon: bool,
    pub status: Status,
}

/// Full pipeline with the default Donaldson search.
pub fn analyze(p: &ParamList, cfg: &SearchConfig) -> Result<Verdict> {
    analyze_with(p, |g| crate::lattice::find_embedding(g, cfg))
}

/// Full pipeline; `search` answers the embedding question for the
/// canonical negative definite graph (so callers can cache it).
pub fn analyze_with(p: &ParamList, search: impl FnOnce(&StarGraph) -> SearchOutcome) -> Result<Verdict> {
    let normalized = normalize(p);
    let kind = classify_type(&normalized);
    let fibered = is_fibered(&normalized);
    let class = mutation_class(&normalized);
    let detectably_ribbon = kind.is_knot() && is_detectably_ribbon(&normalized);
    let mut v = Verdict {
        input: p.clone(),
        normalized: normalized.clone(),
        kind,
        fibered,
        obstructions: None,
        family: None,
        family_matches: Vec::new(),
        exceptional: is_exceptional(&class),
        detectably_ribbon,
        status: Status::NotApplicable,
    };
    if !kind.is_knot() {
        return Ok(v);
    }
    v.family_matches = family_matches(&class);
    v.family = v.family_matches.first().cloned();

    let det_big = determinant(&normalized)?;
    let det = det_big
        .to_u64()
        .ok_or_else(|| Error::Internal(format!("determinant of P({normalized}) exceeds 64 bits")))?;
    let det_square = is_perfect_square(&det_big);
    let sigma = signature(&normalized)?;
    let g = negative_definite_graph(&normalized)?;

    let mut reasons = Vec::new();
    if !det_square {
        reasons.push(Obstruction::Determinant);
    }
    if sigma != 0 {
        reasons.push(Obstruction::Signature);
    }
    let (donaldson, nodes) = if reasons.is_empty() {
        let out = search(&g);
        let nodes = out.nodes();
        let d = match out {
            SearchOutcome::Embedding { embedding, .. } => Donaldson::Embeddable { witness: embedding },
            SearchOutcome::NoEmbedding { .. } => {
                reasons.push(Obstruction::Donaldson);
                Donaldson::NotEmbeddable
            }
            SearchOutcome::Inconclusive { .. } => Donaldson::Inconclusive,
        };
        (d, nodes)
    } else {
        (Donaldson::Skipped, 0)
    };
    let inconclusive = donaldson == Donaldson::Inconclusive;
    v.obstructions = Some(ObstructionReport {
        det,
        det_square,
        signature: sigma,
        donaldson,
        nodes,
        graph_mirrored: g.mirrored,
    });
    v.status = if !reasons.is_empty() {
        Status::NotSlice(reasons)
    } else if inconclusive {
        Status::Inconclusive
    } else if v.exceptional {
        Status::Exceptional
    } else if v.family.is_some() {
        Status::RibbonKnown
    } else {
        Status::ObstructionsVanish
    };
    Ok(v)
}

/// Distinct permutations of a sorted slice, in lexicographic order.
fn next_permutation(v: &mut [i64]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// First ordering of the class (unitary entries first, the even entry
/// last, odd non-unitary entries permuted) that is fibered; otherwise the
/// verdict of the sorted order. Returns the ordering and its verdict.
pub fn fibered_ordering(ms: &[i64]) -> (ParamList, FiberVerdict) {
    let units: Vec<i64> = ms.iter().copied().filter(|x| x.abs() == 1).collect();
    let evens: Vec<i64> = ms.iter().copied().filter(|x| x % 2 == 0).collect();
    let mut odd: Vec<i64> = sorted(ms.iter().copied().filter(|x| x.abs() != 1 && x % 2 != 0));
    let build = |odd: &[i64]| {
        let v: Vec<i64> = units.iter().chain(odd).chain(&evens).copied().collect();
        ParamList::new(v).expect("nonempty, nonzero")
    };
    let first = build(&odd);
    let first_verdict = is_fibered(&first);
    if first_verdict.is_fibered() || matches!(first_verdict.subcase, Subcase::T1 | Subcase::T2A | Subcase::T3A | Subcase::None) {
        return (first, first_verdict);
    }
    while next_permutation(&mut odd) {
        let p = build(&odd);
        let v = is_fibered(&p);
        if v.is_fibered() {
            return (p, v);
        }
    }
    (first, first_verdict)
}

/// Enumeration bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_strands: usize,
    pub max_abs_param: i64,
}

/// One row of an enumeration report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub class_key: String,
    /// Some ordering of the class is fibered.
    pub fiberable: bool,
    /// Verdict on the ordering used for fiberedness.
    pub verdict: Verdict,
}

impl ClassRecord {
    pub fn all_obstructions_pass(&self) -> bool {
        self.verdict.obstructions.as_ref().is_some_and(|o| {
            o.det_square && o.signature == 0 && matches!(o.donaldson, Donaldson::Embeddable { .. })
        })
    }

    pub fn has_unitary(&self) -> bool {
        self.verdict.normalized.unitary_count() > 0
    }
}

/// Sorted multisets of normalized knots within bounds, one per class
/// (mirror-normalized), ordered by length then lexicographically.
pub fn enumerate_classes(b: Bounds) -> Vec<Vec<i64>> {
    let values: Vec<i64> = (-b.max_abs_param..=b.max_abs_param).filter(|&x| x != 0).collect();
    let mut seen = BTreeSet::new();
    let mut cur = Vec::new();
    fn rec(values: &[i64], start: usize, cur: &mut Vec<i64>, max: usize, seen: &mut BTreeSet<(usize, Vec<i64>)>) {
        if !cur.is_empty() {
            let p = ParamList::new(cur.clone()).expect("nonzero");
            if classify_type(&p).is_knot() && normalize(&p) == p {
                let key = mutation_class(&p).mirror_normalized;
                seen.insert((key.len(), key));
            }
        }
        if cur.len() == max {
            return;
        }
        for i in start..values.len() {
            cur.push(values[i]);
            rec(values, i, cur, max, seen);
            cur.pop();
        }
    }
    rec(&values, 0, &mut cur, b.max_strands, &mut seen);
    seen.into_iter().map(|(_, k)| k).collect()
}

/// Analyzes every class within bounds (in parallel) and returns records in
/// class order.
pub fn enumerate(
    b: Bounds,
    search: impl Fn(&StarGraph) -> SearchOutcome + Sync,
) -> Result<Vec<ClassRecord>> {
    Ok(enumerate_timed(b, search)?.into_iter().map(|(r, _)| r).collect())
}

/// As [`enumerate`], with the wall time of each class in milliseconds.
pub fn enumerate_timed(
    b: Bounds,
    search: impl Fn(&StarGraph) -> SearchOutcome + Sync,
) -> Result<Vec<(ClassRecord, u64)>> {
    enumerate_classes(b)
        .into_par_iter()
        .map(|ms| {
            let start = Instant::now();
            let (ordering, fv) = fibered_ordering(&ms);
            let verdict = analyze_with(&ordering, &search)?;
            let rec = ClassRecord {
                class_key: join(&ms),
                fiberable: fv.status == FiberStatus::Fibered,
                verdict,
            };
            Ok((rec, start.elapsed().as_millis() as u64))
        })
        .collect()
}
