//! Independent oracles for the integration tests. Nothing here calls the
//! library's invariant code: the signature comes from a Goeritz matrix of
//! the standard diagram, the Alexander polynomial from Fox calculus on the
//! same diagram.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use pretzelc::{Embedding, ParamList, StarGraph};

pub fn pl(v: &[i64]) -> ParamList {
    ParamList::new(v.to_vec()).unwrap()
}

/// One traversal of a twist region. Band ends are numbered 0 = left,
/// 1 = right; `start` is the end the strand enters from.
#[derive(Clone, Copy, Debug)]
pub struct Pass {
    pub band: usize,
    pub start: usize,
    pub down: bool,
}

/// Walks the standard diagram once, starting at the top left of band 0
/// heading down. Top arcs join TR_i to TL_{i+1}, bottom arcs BR_i to
/// BL_{i+1}, cyclically. Panics if the diagram is a link.
pub fn trace(p: &[i64]) -> Vec<Pass> {
    let n = p.len();
    let mut out = Vec::new();
    let (mut band, mut start, mut down) = (0usize, 0usize, true);
    loop {
        out.push(Pass { band, start, down });
        let exit = if p[band] % 2 == 0 { start } else { 1 - start };
        // leave through the opposite end, then follow the arc to the neighbour
        if exit == 1 {
            band = (band + 1) % n;
            start = 0;
        } else {
            band = (band + n - 1) % n;
            start = 1;
        }
        down = !down;
        if (band, start, down) == (0, 0, true) {
            break;
        }
        assert!(out.len() <= 2 * n, "P({p:?}) is a link");
    }
    assert_eq!(out.len(), 2 * n, "P({p:?}) is a link");
    out
}

/// Bands whose two strands run the same way.
pub fn parallel_bands(p: &[i64]) -> Vec<bool> {
    let mut downs = vec![Vec::new(); p.len()];
    for pass in trace(p) {
        downs[pass.band].push(pass.down);
    }
    downs.iter().map(|d| d[0] == d[1]).collect()
}

/// Signature of a symmetric rational matrix by symmetric elimination.
pub fn rational_signature(mut a: Vec<Vec<BigRational>>) -> i64 {
    let mut sig = 0;
    while !a.is_empty() {
        let n = a.len();
        if let Some(k) = (0..n).find(|&i| !a[i][i].is_zero()) {
            let piv = a[k][k].clone();
            sig += if piv.is_positive() { 1 } else { -1 };
            let row = a[k].clone();
            let mut next = Vec::with_capacity(n - 1);
            for i in (0..n).filter(|&i| i != k) {
                let f = &a[i][k] / &piv;
                next.push(
                    (0..n)
                        .filter(|&j| j != k)
                        .map(|j| &a[i][j] - &f * &row[j])
                        .collect(),
                );
            }
            a = next;
            continue;
        }
        // zero diagonal: add a row/column with a nonzero pairing to row 0
        let Some(j) = (1..n).find(|&j| !a[0][j].is_zero()) else {
            // row 0 is null
            a.remove(0);
            for r in &mut a {
                r.remove(0);
            }
            continue;
        };
        for c in 0..n {
            let v = a[j][c].clone();
            a[0][c] += v;
        }
        for r in 0..n {
            let v = a[r][j].clone();
            a[r][0] += v;
        }
    }
    sig
}

/// Gordon–Litherland signature of the standard pretzel diagram, using the
/// checkerboard surface made of two disks and the n twisted bands. The
/// white regions sit between consecutive bands; band i joins regions i
/// and i+1 with weight p_i. Crossings in bands whose strands run parallel
/// are the correction term.
pub fn goeritz_signature(p: &[i64]) -> i64 {
    let n = p.len();
    let mut lap = vec![vec![0i64; n]; n];
    for (i, &w) in p.iter().enumerate() {
        let (a, b) = (i, (i + 1) % n);
        if a == b {
            continue;
        }
        lap[a][a] += w;
        lap[b][b] += w;
        lap[a][b] -= w;
        lap[b][a] -= w;
    }
    let reduced: Vec<Vec<BigRational>> = lap[1..]
        .iter()
        .map(|r| r[1..].iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mu: i64 = parallel_bands(p)
        .iter()
        .zip(p)
        .filter(|(par, _)| **par)
        .map(|(_, w)| w)
        .sum();
    rational_signature(reduced) - mu
}

/// Integer polynomial, coefficient i of t^i.
pub type Poly = Vec<BigInt>;

fn trim(mut a: Poly) -> Poly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn p_add(a: &Poly, b: &Poly) -> Poly {
    let mut c = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        c[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        c[i] += x;
    }
    trim(c)
}

fn p_neg(a: &Poly) -> Poly {
    a.iter().map(|x| -x).collect()
}

fn p_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    trim(c)
}

/// Exact division; panics on a remainder.
fn p_div(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    if r.is_empty() {
        return r;
    }
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let top = r.last().unwrap();
        assert!((top % lead).is_zero(), "inexact polynomial division");
        let c = top / lead;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        q[shift] = c;
        r = trim(r);
    }
    assert!(r.is_empty(), "inexact polynomial division");
    trim(q)
}

fn poly(v: &[i64]) -> Poly {
    trim(v.iter().map(|&x| BigInt::from(x)).collect())
}

/// Fraction-free determinant over Z[t].
fn poly_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return poly(&[1]);
    }
    let mut sign = false;
    let mut prev = poly(&[1]);
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_empty()) else {
            return Vec::new();
        };
        if piv != k {
            m.swap(piv, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = p_add(&p_mul(&m[i][j], &m[k][k]), &p_neg(&p_mul(&m[i][k], &m[k][j])));
                m[i][j] = p_div(&v, &prev);
            }
            m[i][k] = Vec::new();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        p_neg(&d)
    } else {
        d
    }
}

#[derive(Default, Clone, Copy)]
struct Crossing {
    over: usize,
    under_in: usize,
    under_out: usize,
    sign: i64,
    over_dir: (i64, i64),
}

/// Alexander polynomial of P(p) from the Wirtinger presentation of the
/// standard diagram, normalized so the constant term is nonzero and the
/// leading coefficient positive. In band i the strand running upper left
/// to lower right is over when p_i > 0.
pub fn alexander(p: &[i64]) -> Poly {
    let mut index = Vec::with_capacity(p.len());
    let mut total = 0usize;
    for &w in p {
        index.push(total);
        total += w.unsigned_abs() as usize;
    }
    // (crossing, over?, direction) in traversal order
    let mut events = Vec::new();
    for pass in trace(p) {
        let w = p[pass.band];
        let len = w.unsigned_abs() as usize;
        let mut pos = pass.start;
        let ks: Vec<usize> = if pass.down { (0..len).collect() } else { (0..len).rev().collect() };
        for k in ks {
            let (backslash, dir) = match (pass.down, pos) {
                (true, 0) => (true, (1, -1)),
                (true, _) => (false, (-1, -1)),
                (false, 0) => (false, (1, 1)),
                (false, _) => (true, (-1, 1)),
            };
            let over = backslash == (w > 0);
            events.push((index[pass.band] + k, over, dir));
            pos = 1 - pos;
        }
    }
    let mut xs = vec![Crossing::default(); total];
    let mut dirs_under = vec![(0, 0); total];
    let mut arc = 0usize;
    for &(c, over, dir) in &events {
        if over {
            xs[c].over = arc % total;
            xs[c].over_dir = dir;
        } else {
            xs[c].under_in = arc;
            arc += 1;
            xs[c].under_out = arc % total;
            dirs_under[c] = dir;
        }
    }
    assert_eq!(arc, total);
    let mut m = vec![vec![Vec::new(); total]; total];
    for (c, x) in xs.iter_mut().enumerate() {
        let (o, u) = (x.over_dir, dirs_under[c]);
        x.sign = (o.0 * u.1 - o.1 * u.0).signum();
        let entries = if x.sign > 0 {
            [(x.over, poly(&[1, -1])), (x.under_in, poly(&[0, 1])), (x.under_out, poly(&[-1]))]
        } else {
            [(x.over, poly(&[-1, 1])), (x.under_in, poly(&[1])), (x.under_out, poly(&[0, -1]))]
        };
        for (col, v) in entries {
            m[c][col] = p_add(&m[c][col], &v);
        }
    }
    let minor: Vec<Vec<Poly>> = m[..total - 1].iter().map(|r| r[..total - 1].to_vec()).collect();
    let mut d = poly_det(minor);
    while d.first().is_some_and(Zero::is_zero) {
        d.remove(0);
    }
    if d.last().is_some_and(|x| x.is_negative()) {
        d = p_neg(&d);
    }
    d
}

pub fn is_monic(d: &Poly) -> bool {
    d.last().is_some_and(|x| x.abs().is_one())
}

pub fn eval(d: &Poly, t: i64) -> BigInt {
    d.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
}

/// Columns with signs normalized (first nonzero entry positive), sorted.
fn column_multiset(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let k = rows.first().map_or(0, Vec::len);
    let mut cols: Vec<Vec<i64>> = (0..k)
        .map(|j| {
            let c: Vec<i64> = rows.iter().map(|r| r[j]).collect();
            match c.iter().find(|&&x| x != 0) {
                Some(&x) if x < 0 => c.iter().map(|v| -v).collect(),
                _ => c,
            }
        })
        .collect();
    cols.sort();
    cols
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Whether two embeddings of `g` differ only by signed column
/// permutations and graph automorphisms swapping identical legs.
pub fn equivalent_embeddings(g: &StarGraph, a: &Embedding, b: &Embedding) -> bool {
    let target = column_multiset(&b.rows);
    let mut starts = Vec::new();
    let mut next = 1;
    for leg in &g.legs {
        starts.push(next);
        next += leg.len();
    }
    permutations(g.legs.len()).into_iter().any(|perm| {
        if perm.iter().enumerate().any(|(i, &j)| g.legs[i] != g.legs[j]) {
            return false;
        }
        let mut rows = vec![a.rows[0].clone()];
        for &j in &perm {
            rows.extend(a.rows[starts[j]..starts[j] + g.legs[j].len()].iter().cloned());
        }
        column_multiset(&rows) == target
    })
}
