//! Wu class, signature and the Donaldson lattice embedding search.
//!
//! An embedding of a negative definite graph lattice of rank `k` into the
//! standard lattice `(Z^k, −Id)` is a `k × k` integer matrix `M` with
//! `−M Mᵀ = Q`. Pairings are written in the Euclidean convention used by
//! the search: `⟨v_i, v_i⟩ = −weight`, `⟨v_i, v_j⟩ = −1` on edges, else 0.
//!
//! The default search assigns rows vertex by vertex and explores only one
//! representative per orbit of the signed-permutation group of `Z^k`
//! that fixes the rows placed so far:
//! * columns never used before may only be introduced in order, with a
//!   positive, non-increasing tail of entries;
//! * columns whose entries agree on every placed row must receive
//!   non-increasing entries in the new row.
//!
//! Partial rows are pruned with Cauchy–Schwarz against the required
//! pairings. Two more cuts rely on the rank being equal: every column
//! must eventually be used, and (when the signature vanishes) the image
//! of the Wu class must be `(±1, ..., ±1)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::gf2;
use crate::matrix::SquareMatrix;
use crate::params::ParamList;
use crate::plumbing::{negative_definite_graph, IncidenceMatrix, StarGraph};

/// Characteristic vertex subset: `Q(w, x) ≡ Q(x, x) (mod 2)` for all `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WuClass {
    /// Membership per vertex, in graph vertex order.
    pub indicator: Vec<bool>,
}

impl WuClass {
    pub fn members(&self) -> Vec<usize> {
        (0..self.indicator.len()).filter(|&i| self.indicator[i]).collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.indicator[v]
    }

    pub fn as_vector(&self) -> Vec<i64> {
        self.indicator.iter().map(|&b| b as i64).collect()
    }
}

pub fn wu_class(g: &StarGraph) -> Result<WuClass> {
    wu_class_of(&g.incidence_matrix())
}

pub fn wu_class_of(q: &SquareMatrix) -> Result<WuClass> {
    let diag: Vec<i64> = (0..q.dim()).map(|i| q.get(i, i)).collect();
    let indicator = gf2::solve_unique(&q.rows(), &diag)?;
    Ok(WuClass { indicator })
}

/// `sign(Q) − Q(w, w)` for a negative definite form, i.e. `−k − Q(w, w)`.
fn graph_signature(q: &SquareMatrix, w: &WuClass) -> i64 {
    -(q.dim() as i64) - q.quadratic(&w.as_vector())
}

/// Knot signature from the canonical negative definite plumbing, with the
/// sign corrected when the plumbing belongs to the mirror.
pub fn signature(p: &ParamList) -> Result<i64> {
    let g = negative_definite_graph(p)?;
    let q = g.incidence_matrix();
    let s = graph_signature(&q, &wu_class_of(&q)?);
    Ok(if g.mirrored { -s } else { s })
}

/// Row `i` is the image of vertex `i` in the standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Embedding {
    pub rows: Vec<Vec<i64>>,
}

impl Embedding {
    pub fn rank(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// `−M Mᵀ`.
    pub fn gram(&self) -> SquareMatrix {
        let n = self.rows.len();
        let mut m = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, -dot(&self.rows[i], &self.rows[j]));
            }
        }
        m
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub wu_pruning: bool,
    pub node_limit: Option<u64>,
    /// Oracle mode: every integer row of the right norm, no symmetry
    /// breaking and no pruning beyond the norm bound.
    pub exhaustive: bool,
    /// Fan out the first level of the search over the rayon pool.
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            wu_pruning: true,
            node_limit: None,
            exhaustive: false,
            parallel: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SearchOutcome {
    Embedding { embedding: Embedding, nodes: u64 },
    NoEmbedding { nodes: u64 },
    Inconclusive { nodes: u64 },
}

impl SearchOutcome {
    pub fn nodes(&self) -> u64 {
        match self {
            SearchOutcome::Embedding { nodes, .. }
            | SearchOutcome::NoEmbedding { nodes }
            | SearchOutcome::Inconclusive { nodes } => *nodes,
        }
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            SearchOutcome::Embedding { embedding, .. } => Some(embedding),
            _ => None,
        }
    }

    pub fn exists(&self) -> Option<bool> {
        match self {
            SearchOutcome::Embedding { .. } => Some(true),
            SearchOutcome::NoEmbedding { .. } => Some(false),
            SearchOutcome::Inconclusive { .. } => None,
        }
    }
}

pub fn verify_embedding(g: &StarGraph, m: &Embedding) -> bool {
    verify_gram(&g.incidence_matrix(), m)
}

pub fn verify_gram(q: &SquareMatrix, m: &Embedding) -> bool {
    m.rows.len() == q.dim() && m.rows.iter().all(|r| r.len() == m.rank()) && m.gram() == *q
}

/// Restriction of an embedding to a subset of basis columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Projection {
    /// Original vertex index of each kept row.
    pub vertices: Vec<usize>,
    /// Pairings of the restricted rows; need not be a plumbing graph.
    pub form: IncidenceMatrix,
    pub embedding: Embedding,
}

/// Keeps the columns in `columns` (in that order), drops vertices whose
/// restricted row vanishes and recomputes the pairings.
pub fn project_embedding(m: &Embedding, columns: &[usize]) -> Projection {
    let mut vertices = Vec::new();
    let mut rows = Vec::new();
    for (i, row) in m.rows.iter().enumerate() {
        let r: Vec<i64> = columns.iter().map(|&c| row[c]).collect();
        if r.iter().any(|&x| x != 0) {
            vertices.push(i);
            rows.push(r);
        }
    }
    let embedding = Embedding { rows };
    Projection {
        vertices,
        form: IncidenceMatrix::from_matrix(embedding.gram()),
        embedding,
    }
}

/// Placement order: center, Wu vertices, then chains by decreasing length
/// walked outward.
fn placement_order(g: &StarGraph, wu: &WuClass) -> Vec<usize> {
    let mut order = vec![0];
    order.extend(wu.members().into_iter().filter(|&v| v != 0));
    let mut starts = Vec::with_capacity(g.legs.len());
    let mut next = 1;
    for chain in &g.legs {
        starts.push((next, chain.len()));
        next += chain.len();
    }
    let mut legs: Vec<usize> = (0..g.legs.len()).collect();
    legs.sort_by_key(|&l| std::cmp::Reverse(g.legs[l].len()));
    for l in legs {
        let (start, len) = starts[l];
        order.extend((start..start + len).filter(|v| !wu.contains(*v)));
    }
    order
}

/// The search problem in placement order.
struct Problem {
    k: usize,
    norms: Vec<i64>,
    /// `targets[i][j]` for `j < i`: required Euclidean pairing.
    targets: Vec<Vec<i64>>,
    /// `norm_suffix[i]`: sum of norms at positions `i..`.
    norm_suffix: Vec<i64>,
    /// Position after which the Wu rows are all placed, with their positions.
    wu_check: Option<(usize, Vec<usize>)>,
    exhaustive: bool,
}

impl Problem {
    fn new(q: &SquareMatrix, order: &[usize], wu: Option<&WuClass>, exhaustive: bool) -> Self {
        let n = order.len();
        let norms: Vec<i64> = order.iter().map(|&v| -q.get(v, v)).collect();
        let targets = (0..n)
            .map(|i| (0..i).map(|j| -q.get(order[i], order[j])).collect())
            .collect();
        let mut norm_suffix = vec![0; n + 1];
        for i in (0..n).rev() {
            norm_suffix[i] = norm_suffix[i + 1] + norms[i];
        }
        let wu_check = wu.map(|w| {
            let pos: Vec<usize> = (0..n).filter(|&i| w.contains(order[i])).collect();
            (pos.last().copied().unwrap_or(0), pos)
        });
        Problem {
            k: q.dim(),
            norms,
            targets,
            norm_suffix,
            wu_check,
            exhaustive,
        }
    }
}

enum Step {
    Found,
    Exhausted,
    Limit,
}

/// A candidate row and the number of columns in use after placing it.
type Candidate = (Vec<i64>, usize);

struct Search<'a> {
    p: &'a Problem,
    limit: Option<u64>,
    nodes: u64,
    rows: Vec<Vec<i64>>,
}

impl<'a> Search<'a> {
    fn new(p: &'a Problem, limit: Option<u64>) -> Self {
        Search {
            p,
            limit,
            nodes: 0,
            rows: Vec::with_capacity(p.norms.len()),
        }
    }

    fn dfs(&mut self, used: usize, blocks: &[bool]) -> Step {
        let depth = self.rows.len();
        if depth == self.p.norms.len() {
            return Step::Found;
        }
        for (row, new_used) in self.candidates(used, blocks) {
            match self.enter(row, new_used, blocks) {
                Some(Step::Exhausted) | None => {}
                Some(step) => return step,
            }
        }
        Step::Exhausted
    }

    /// Places `row` at the current depth and searches below it. `None` when
    /// the row was cut without descending.
    fn enter(&mut self, row: Vec<i64>, new_used: usize, blocks: &[bool]) -> Option<Step> {
        self.nodes += 1;
        if self.limit.is_some_and(|l| self.nodes > l) {
            return Some(Step::Limit);
        }
        let depth = self.rows.len();
        let p = self.p;
        if !p.exhaustive && (new_used as i64) + p.norm_suffix[depth + 1] < p.k as i64 {
            return None;
        }
        self.rows.push(row);
        if let Some((at, wu)) = &p.wu_check {
            if *at == depth && !self.wu_ok(wu) {
                self.rows.pop();
                return None;
            }
        }
        let next_blocks = if p.exhaustive {
            Vec::new()
        } else {
            let row = &self.rows[depth];
            let old = blocks.len();
            (0..new_used)
                .map(|j| j == 0 || j == old || (j < old && blocks[j]) || row[j] != row[j - 1])
                .collect()
        };
        let step = self.dfs(new_used, &next_blocks);
        if !matches!(step, Step::Found) {
            self.rows.pop();
        }
        Some(step)
    }

    fn wu_ok(&self, wu: &[usize]) -> bool {
        (0..self.p.k).all(|c| wu.iter().map(|&i| self.rows[i][c]).sum::<i64>().abs() == 1)
    }

    fn candidates(&self, used: usize, blocks: &[bool]) -> Vec<Candidate> {
        let depth = self.rows.len();
        let norm = self.p.norms[depth];
        let targets = &self.p.targets[depth];
        let mut out = Vec::new();
        if self.p.exhaustive {
            let mut x = vec![0; self.p.k];
            all_rows(&mut x, 0, norm, &mut |x| {
                if self.rows.iter().zip(targets).all(|(r, &t)| dot(r, x) == t) {
                    out.push((x.to_vec(), self.p.k));
                }
            });
            return out;
        }

        // suffix[r][j] = Σ_{c ≥ j} rows[r][c]², over used columns
        let suffix: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|r| {
                let mut s = vec![0; used + 1];
                for j in (0..used).rev() {
                    s[j] = s[j + 1] + r[j] * r[j];
                }
                s
            })
            .collect();
        let mut ctx = RowCtx {
            rows: &self.rows,
            targets,
            suffix: &suffix,
            blocks,
            used,
            k: self.p.k,
            x: vec![0; self.p.k],
            dots: vec![0; self.rows.len()],
            out: &mut out,
        };
        ctx.fill(0, norm);
        out
    }
}

struct RowCtx<'a> {
    rows: &'a [Vec<i64>],
    targets: &'a [i64],
    suffix: &'a [Vec<i64>],
    blocks: &'a [bool],
    used: usize,
    k: usize,
    x: Vec<i64>,
    dots: Vec<i64>,
    out: &'a mut Vec<Candidate>,
}

impl RowCtx<'_> {
    fn fill(&mut self, j: usize, budget: i64) {
        // Cauchy–Schwarz on the remaining used columns
        for (r, &t) in self.targets.iter().enumerate() {
            let gap = t - self.dots[r];
            if gap * gap > budget * self.suffix[r][j] {
                return;
            }
        }
        if j == self.used {
            self.fresh_tail(budget);
            return;
        }
        let cap = isqrt(budget);
        let upper = if j > 0 && !self.blocks[j] { self.x[j - 1].min(cap) } else { cap };
        for v in value_order(cap).filter(|&v| v <= upper) {
            self.x[j] = v;
            for (r, row) in self.rows.iter().enumerate() {
                self.dots[r] += v * row[j];
            }
            self.fill(j + 1, budget - v * v);
            for (r, row) in self.rows.iter().enumerate() {
                self.dots[r] -= v * row[j];
            }
        }
        self.x[j] = 0;
    }

    /// Positive non-increasing entries on fresh columns summing to `budget`
    /// in squares.
    fn fresh_tail(&mut self, budget: i64) {
        let mut tail = Vec::new();
        self.tail(&mut tail, budget, isqrt(budget));
    }

    fn tail(&mut self, tail: &mut Vec<i64>, budget: i64, max: i64) {
        if budget == 0 {
            let mut row = self.x.clone();
            row[self.used..self.used + tail.len()].copy_from_slice(tail);
            self.out.push((row, self.used + tail.len()));
            return;
        }
        if self.used + tail.len() == self.k {
            return;
        }
        for a in (1..=max.min(isqrt(budget))).rev() {
            tail.push(a);
            self.tail(tail, budget - a * a, a);
            tail.pop();
        }
    }
}

/// 0, 1, −1, 2, −2, ...
fn value_order(cap: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=cap).flat_map(|v| [v, -v]))
}

fn isqrt(n: i64) -> i64 {
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Every integer vector of squared length `budget`, in lexicographic order
/// with entries ascending.
fn all_rows(x: &mut [i64], j: usize, budget: i64, f: &mut impl FnMut(&[i64])) {
    if j == x.len() {
        if budget == 0 {
            f(x);
        }
        return;
    }
    let cap = isqrt(budget);
    for v in -cap..=cap {
        x[j] = v;
        all_rows(x, j + 1, budget - v * v, f);
    }
    x[j] = 0;
}

/// The graph with legs sorted by decreasing length, then by weights, and
/// the original index of each vertex of the sorted graph. Mutants share
/// this form.
pub fn canonical_form(g: &StarGraph) -> (StarGraph, Vec<usize>) {
    let mut starts = Vec::with_capacity(g.legs.len());
    let mut next = 1;
    for chain in &g.legs {
        starts.push(next);
        next += chain.len();
    }
    let mut legs: Vec<usize> = (0..g.legs.len()).collect();
    legs.sort_by(|&a, &b| {
        g.legs[b]
            .len()
            .cmp(&g.legs[a].len())
            .then_with(|| g.legs[a].cmp(&g.legs[b]))
    });
    let mut original = vec![0];
    for &l in &legs {
        original.extend(starts[l]..starts[l] + g.legs[l].len());
    }
    let canon = StarGraph {
        center_weight: g.center_weight,
        legs: legs.iter().map(|&l| g.legs[l].clone()).collect(),
        mirrored: g.mirrored,
    };
    (canon, original)
}

/// Searches for an embedding of the graph lattice into the standard
/// negative definite lattice of the same rank. The search runs on the
/// canonical form, so reordering legs only permutes the witness rows.
pub fn find_embedding(g: &StarGraph, cfg: &SearchConfig) -> SearchOutcome {
    let (canon, original) = canonical_form(g);
    let q = canon.incidence_matrix();
    let wu = wu_class_of(&q).ok();
    let empty = WuClass {
        indicator: vec![false; q.dim()],
    };
    let order = placement_order(&canon, wu.as_ref().unwrap_or(&empty));
    let wu_prune = wu
        .as_ref()
        .filter(|w| cfg.wu_pruning && !cfg.exhaustive && graph_signature(&q, w) == 0);
    let problem = Problem::new(&q, &order, wu_prune, cfg.exhaustive);
    let outcome = if cfg.parallel && cfg.node_limit.is_none() {
        run_parallel(&problem)
    } else {
        run_sequential(&problem, cfg.node_limit)
    };
    outcome.map(|rows| {
        let mut by_vertex = vec![Vec::new(); rows.len()];
        for (pos, row) in rows.into_iter().enumerate() {
            by_vertex[original[order[pos]]] = row;
        }
        let embedding = Embedding { rows: by_vertex };
        debug_assert!(verify_embedding(g, &embedding));
        embedding
    })
}

enum Raw {
    Found(Vec<Vec<i64>>, u64),
    Exhausted(u64),
    Limit(u64),
}

impl Raw {
    fn map(self, f: impl FnOnce(Vec<Vec<i64>>) -> Embedding) -> SearchOutcome {
        match self {
            Raw::Found(rows, nodes) => SearchOutcome::Embedding {
                embedding: f(rows),
                nodes,
            },
            Raw::Exhausted(nodes) => SearchOutcome::NoEmbedding { nodes },
            Raw::Limit(nodes) => SearchOutcome::Inconclusive { nodes },
        }
    }
}

fn run_sequential(p: &Problem, limit: Option<u64>) -> Raw {
    let mut s = Search::new(p, limit);
    match s.dfs(0, &[]) {
        Step::Found => Raw::Found(s.rows, s.nodes),
        Step::Exhausted => Raw::Exhausted(s.nodes),
        Step::Limit => Raw::Limit(s.nodes),
    }
}

/// Splits on the first row. Subtrees are searched independently; the
/// winner is the first subtree (in candidate order) holding a witness, and
/// the node count only includes subtrees up to the winner, so both match a
/// sequential run.
fn run_parallel(p: &Problem) -> Raw {
    let root = Search::new(p, None);
    let firsts = root.candidates(0, &[]);
    let results: Vec<(Option<Vec<Vec<i64>>>, u64)> = firsts
        .into_par_iter()
        .map(|(row, used)| {
            let mut s = Search::new(p, None);
            let step = s.enter(row, used, &[]);
            let found = matches!(step, Some(Step::Found)).then(|| s.rows);
            (found, s.nodes)
        })
        .collect();
    let mut nodes = 0;
    for (found, n) in results {
        nodes += n;
        if let Some(rows) = found {
            return Raw::Found(rows, nodes);
        }
    }
    Raw::Exhausted(nodes)
}
