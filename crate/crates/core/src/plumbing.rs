//! Star-shaped plumbing graphs of double branched covers.
//!
//! A pretzel knot `P([1^{±d}], p_{d+1}, ..., p_n)` double covers to the
//! boundary of the plumbing on a star: a central vertex of weight `∓d`
//! with one leaf of weight `p_i` per non-unitary parameter. If the Euler
//! number `e = ∓d − Σ 1/p_i` is negative, replacing each leaf of weight
//! `q ≥ 2` by a chain of `q − 1` vertices of weight −2 (and lowering the
//! center by one per replacement) gives the canonical negative definite
//! plumbing. If `e > 0` the same is done for the mirror.

use std::ops::Deref;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::params::{classify_type, mirror, ParamList};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StarGraph {
    pub center_weight: i64,
    /// Chains hanging off the center, each listed from the center outward.
    pub legs: Vec<Vec<i64>>,
    /// Set when the graph was built from the mirror of the input.
    pub mirrored: bool,
}

/// Intersection form of a plumbing in the vertex basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IncidenceMatrix(SquareMatrix);

impl Deref for IncidenceMatrix {
    type Target = SquareMatrix;

    fn deref(&self) -> &SquareMatrix {
        &self.0
    }
}

impl IncidenceMatrix {
    pub fn from_matrix(m: SquareMatrix) -> Self {
        assert!(m.is_symmetric(), "incidence matrices are symmetric");
        IncidenceMatrix(m)
    }

    pub fn into_inner(self) -> SquareMatrix {
        self.0
    }

    pub fn weights(&self) -> Vec<i64> {
        (0..self.dim()).map(|i| self.get(i, i)).collect()
    }
}

/// Where a vertex of a [`StarGraph`] sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Center,
    Leg { leg: usize, pos: usize },
}

impl StarGraph {
    pub fn rank(&self) -> usize {
        1 + self.legs.iter().map(Vec::len).sum::<usize>()
    }

    /// Vertices in matrix order: center first, then each leg outward.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.rank());
        out.push(Vertex::Center);
        for (leg, chain) in self.legs.iter().enumerate() {
            out.extend((0..chain.len()).map(|pos| Vertex::Leg { leg, pos }));
        }
        out
    }

    pub fn weight(&self, v: Vertex) -> i64 {
        match v {
            Vertex::Center => self.center_weight,
            Vertex::Leg { leg, pos } => self.legs[leg][pos],
        }
    }

    pub fn weights(&self) -> Vec<i64> {
        self.vertices().into_iter().map(|v| self.weight(v)).collect()
    }

    /// Edges as index pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(self.rank().saturating_sub(1));
        let mut next = 1;
        for chain in &self.legs {
            let mut prev = 0;
            for _ in chain {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        edges
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        incidence_matrix(self)
    }
}

pub fn incidence_matrix(g: &StarGraph) -> IncidenceMatrix {
    let mut m = SquareMatrix::zeros(g.rank());
    for (i, w) in g.weights().into_iter().enumerate() {
        m.set(i, i, w);
    }
    for (i, j) in g.edges() {
        m.set(i, j, 1);
        m.set(j, i, 1);
    }
    IncidenceMatrix(m)
}

fn require_knot(p: &ParamList) -> Result<()> {
    if classify_type(p).is_knot() {
        Ok(())
    } else {
        Err(Error::NotAKnot(p.to_string()))
    }
}

/// The plumbing star read directly off the parameters. Unitary entries all
/// feed the center: each `+1` contributes −1 and each `−1` contributes +1.
pub fn star_graph(p: &ParamList) -> Result<StarGraph> {
    require_knot(p)?;
    Ok(raw_star(p))
}

fn raw_star(p: &ParamList) -> StarGraph {
    let center_weight = -p
        .as_slice()
        .iter()
        .filter(|x| x.abs() == 1)
        .sum::<i64>();
    StarGraph {
        center_weight,
        legs: p.non_unitary().map(|q| vec![q]).collect(),
        mirrored: false,
    }
}

/// `e(Y) = c − Σ 1/p_i` over the non-unitary parameters, `c` the center weight.
pub fn euler_number(p: &ParamList) -> Result<BigRational> {
    require_knot(p)?;
    Ok(raw_euler(p))
}

fn raw_euler(p: &ParamList) -> BigRational {
    let g = raw_star(p);
    let mut e = BigRational::from_integer(BigInt::from(g.center_weight));
    for q in p.non_unitary() {
        e -= BigRational::new(BigInt::from(1), BigInt::from(q));
    }
    e
}

pub fn negative_definite_graph(p: &ParamList) -> Result<StarGraph> {
    require_knot(p)?;
    let e = raw_euler(p);
    if e.is_zero() {
        return Err(Error::ZeroEulerNumber(p.to_string()));
    }
    let mirrored = e.is_positive();
    let source = if mirrored { mirror(p) } else { p.clone() };
    let star = raw_star(&source);

    let mut center_weight = star.center_weight;
    let mut legs = Vec::with_capacity(star.legs.len());
    for leg in star.legs {
        let q = leg[0];
        if q >= 2 {
            legs.push(vec![-2; (q - 1) as usize]);
            center_weight -= 1;
        } else {
            legs.push(leg);
        }
    }
    let g = StarGraph {
        center_weight,
        legs,
        mirrored,
    };
    if !is_negative_definite(&g.incidence_matrix()) {
        return Err(Error::Internal(format!(
            "reduced plumbing for P({p}) is not negative definite"
        )));
    }
    Ok(g)
}

/// `|det|` of the star's intersection form, which is the knot determinant.
pub fn determinant(p: &ParamList) -> Result<BigInt> {
    Ok(star_graph(p)?.incidence_matrix().determinant().abs())
}

/// Leading principal minors alternate in sign, starting negative.
pub fn is_negative_definite(m: &SquareMatrix) -> bool {
    let minors = m.leading_minors();
    minors.len() == m.dim()
        && minors.iter().enumerate().all(|(k, d)| {
            // Δ_{k+1} has sign (−1)^{k+1}
            if k % 2 == 0 {
                d.is_negative()
            } else {
                d.is_positive()
            }
        })
}
