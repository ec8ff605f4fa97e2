//! Central hyperplane arrangements with integer normals, their intersection
//! lattices, Poincaré polynomials and the dense-flat bookkeeping.

use crate::error::{Error, Result};
use crate::field::integer_rank;
use crate::graph::{Edge, Sign, SignedGraph};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

/// Full-lattice computations refuse arrangements with more hyperplanes than this.
pub const FULL_LATTICE_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    Loop(usize),
    Edge(Edge),
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Loop(i) => write!(f, "x{i}"),
            Origin::Edge(e) => e.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Vec<i64>,
    /// `None` only for arrangements built directly from normals.
    pub origin: Option<Origin>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    hyperplanes: Vec<Hyperplane>,
    ambient_dim: usize,
    rank: usize,
}

/// A lattice element, recorded by the indices of the hyperplanes containing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Flat {
    pub rank: usize,
    pub members: Vec<usize>,
}

impl Flat {
    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, h: usize) -> bool {
        self.members.binary_search(&h).is_ok()
    }
}

/// Integer polynomial, coefficients by ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial(Vec<i64>);

impl Polynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.0.is_empty() || other.0.is_empty() {
            return Polynomial::default();
        }
        let mut out = vec![0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// Exact division by `1 + t`, if it divides.
    pub fn div_one_plus_t(&self) -> Option<Polynomial> {
        if self.0.is_empty() {
            return Some(Polynomial::default());
        }
        // synthetic division at the root -1, from the top coefficient down
        let n = self.0.len();
        let mut q = vec![0; n - 1];
        let mut carry = 0;
        for k in (1..n).rev() {
            carry = self.0[k] - carry;
            q[k - 1] = carry;
        }
        (self.0[0] == carry).then(|| Polynomial::new(q))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    f.write_str("t")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Combinatorial type of a rank-2 flat of a graphic arrangement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rank2Shape {
    /// `ij+` and `ij-`, no loops at `i`, `j`.
    DoubleEdge,
    /// Two edges on disjoint vertex pairs.
    DisjointEdges,
    /// `ij`, `jk` sharing one vertex, the closing edge `ik` absent.
    Path,
    /// Loop at `i` and a simple edge `ij`.
    LoopOnEdge,
    /// Loop at `k` and an edge `ij` avoiding `k`.
    LoopOffEdge,
    /// Loops at two vertices with no edge between them.
    TwoLoops,
    /// Loops at `i` and `j` plus one edge `ij`.
    LoopLoopEdge,
    /// Loop at `i` plus the double edge `ij`.
    LoopDoubleEdge,
    /// Triangle whose sign product is `-1`.
    NegativeTriangle,
    /// Double edge `ij` with loops at both ends.
    FullPencil4,
}

impl Arrangement {
    /// General constructor for internal localizations and non-graphic tests.
    pub fn from_normals(normals: Vec<Vec<i64>>) -> Result<Self> {
        let hyperplanes = normals
            .into_iter()
            .map(|normal| Hyperplane {
                normal,
                origin: None,
            })
            .collect();
        Self::from_hyperplanes(hyperplanes)
    }

    fn from_hyperplanes(hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        let Some(first) = hyperplanes.first() else {
            return Err(Error::EmptyGraph);
        };
        let ambient_dim = first.normal.len();
        for (a, h) in hyperplanes.iter().enumerate() {
            if h.normal.len() != ambient_dim || h.normal.iter().all(|&v| v == 0) {
                return Err(Error::Precondition(format!("bad normal {:?}", h.normal)));
            }
            for g in &hyperplanes[..a] {
                if integer_rank(&[g.normal.clone(), h.normal.clone()]) < 2 {
                    return Err(Error::Duplicate(format!("hyperplane {:?}", h.normal)));
                }
            }
        }
        let rank = integer_rank(
            &hyperplanes
                .iter()
                .map(|h| h.normal.clone())
                .collect::<Vec<_>>(),
        );
        Ok(Arrangement {
            hyperplanes,
            ambient_dim,
            rank,
        })
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn n(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_graphic(&self) -> bool {
        self.hyperplanes.iter().all(|h| h.origin.is_some())
    }

    fn rank_of(&self, members: impl IntoIterator<Item = usize>) -> usize {
        let rows: Vec<Vec<i64>> = members
            .into_iter()
            .map(|h| self.hyperplanes[h].normal.clone())
            .collect();
        integer_rank(&rows)
    }

    /// Smallest flat containing the given hyperplanes.
    pub fn closure(&self, generators: &[usize]) -> Flat {
        let rank = self.rank_of(generators.iter().copied());
        let members = (0..self.n())
            .filter(|h| {
                generators.contains(h)
                    || self.rank_of(generators.iter().copied().chain([*h])) == rank
            })
            .collect();
        Flat { rank, members }
    }

    /// The arrangement formed by a flat's members, keeping their origin tags.
    pub fn localize(&self, x: &Flat) -> Arrangement {
        Arrangement::from_hyperplanes(
            x.members
                .iter()
                .map(|&h| self.hyperplanes[h].clone())
                .collect(),
        )
        .expect("subarrangements of a valid arrangement are valid")
    }

    /// All flats of rank `1..=up_to_rank`, sorted by rank then members.
    pub fn flats(&self, up_to_rank: usize) -> Result<Vec<Flat>> {
        if up_to_rank == 0 || up_to_rank > self.rank {
            return Err(Error::RankBound {
                bound: up_to_rank,
                rank: self.rank,
            });
        }
        Ok(self.flats_unchecked(up_to_rank))
    }

    fn flats_unchecked(&self, up_to_rank: usize) -> Vec<Flat> {
        let mut all: Vec<Flat> = (0..self.n())
            .map(|h| Flat {
                rank: 1,
                members: vec![h],
            })
            .collect();
        let mut level = all.clone();
        for _ in 2..=up_to_rank {
            let mut next: HashSet<Flat> = HashSet::new();
            for x in &level {
                for h in (0..self.n()).filter(|h| !x.contains(*h)) {
                    if next
                        .iter()
                        .any(|y| y.contains(h) && x.members.iter().all(|m| y.contains(*m)))
                    {
                        continue;
                    }
                    let mut gens = x.members.clone();
                    gens.push(h);
                    next.insert(self.closure(&gens));
                }
            }
            let mut next: Vec<Flat> = next.into_iter().collect();
            next.sort();
            all.extend(next.iter().cloned());
            level = next;
        }
        all
    }

    pub fn rank2_flats(&self) -> Vec<Flat> {
        if self.rank < 2 {
            return Vec::new();
        }
        self.flats_unchecked(2)
            .into_iter()
            .filter(|x| x.rank == 2)
            .collect()
    }

    pub fn full_lattice(&self) -> Result<Vec<Flat>> {
        if self.n() > FULL_LATTICE_CAP {
            return Err(Error::CapExceeded(format!(
                "full lattice needs n <= {FULL_LATTICE_CAP}, got {}",
                self.n()
            )));
        }
        Ok(self.flats_unchecked(self.rank))
    }

    pub fn center(&self) -> Flat {
        Flat {
            rank: self.rank,
            members: (0..self.n()).collect(),
        }
    }

    /// Poincaré polynomial via the Möbius function of the full lattice.
    pub fn poincare_polynomial(&self) -> Result<Polynomial> {
        let lattice = self.full_lattice()?;
        let mut mobius: HashMap<&Flat, i64> = HashMap::new();
        let mut coeffs = vec![0i64; self.rank + 1];
        coeffs[0] = 1;
        for x in &lattice {
            // lattice is sorted by rank, so every flat below x is already done
            let below: i64 = lattice
                .iter()
                .take_while(|y| y.rank < x.rank)
                .filter(|y| y.members.iter().all(|m| x.contains(*m)))
                .map(|y| mobius[y])
                .sum();
            let mu = -(1 + below);
            mobius.insert(x, mu);
            coeffs[x.rank] += mu.abs();
        }
        Ok(Polynomial::new(coeffs))
    }

    /// A flat is dense iff `(1+t)^2` does not divide the Poincaré polynomial of its localization.
    pub fn is_dense(&self, x: &Flat) -> Result<bool> {
        match x.rank {
            1 => Ok(true),
            2 => Ok(x.multiplicity() >= 3),
            _ => {
                let p = self.localize(x).poincare_polynomial()?;
                Ok(p.div_one_plus_t()
                    .and_then(|q| q.div_one_plus_t())
                    .is_none())
            }
        }
    }

    /// Dense flats of rank `1..=up_to_rank`.
    pub fn dense_flats(&self, up_to_rank: usize) -> Result<Vec<Flat>> {
        let mut out = Vec::new();
        for x in self.flats(up_to_rank)? {
            if self.is_dense(&x)? {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Multiplicities of dense flats with `2 <= rank <= k`, optionally only
    /// those not contained in hyperplane `avoid` (i.e. `avoid` is not a member).
    pub fn m_list(&self, k: usize, avoid: Option<usize>) -> Result<Vec<usize>> {
        if k < 2 || k > self.rank {
            return Err(Error::RankBound {
                bound: k,
                rank: self.rank,
            });
        }
        if let Some(h) = avoid {
            if h >= self.n() {
                return Err(Error::Precondition(format!(
                    "hyperplane index {h} out of range"
                )));
            }
        }
        let mut out = Vec::new();
        for x in self.dense_flats(k)? {
            if x.rank >= 2 && avoid.is_none_or(|h| !x.contains(h)) {
                out.push(x.multiplicity());
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Every rank-2 flat with its shape, read off from the origin tags.
    pub fn rank2_profile(&self) -> Result<Vec<(Flat, Rank2Shape)>> {
        if !self.is_graphic() {
            return Err(Error::NotGraphic);
        }
        self.rank2_flats()
            .into_iter()
            .map(|x| {
                let origins: Vec<Origin> = x
                    .members
                    .iter()
                    .map(|&h| self.hyperplanes[h].origin.unwrap())
                    .collect();
                let shape = classify_rank2(&origins).ok_or_else(|| {
                    Error::TheoremViolation(format!(
                        "rank-2 flat {:?} matches no inventory shape",
                        origins.iter().map(ToString::to_string).collect::<Vec<_>>()
                    ))
                })?;
                Ok((x, shape))
            })
            .collect()
    }
}

fn classify_rank2(origins: &[Origin]) -> Option<Rank2Shape> {
    let mut loops = Vec::new();
    let mut edges = Vec::new();
    for o in origins {
        match o {
            Origin::Loop(i) => loops.push(*i),
            Origin::Edge(e) => edges.push(*e),
        }
    }
    let same_pair = |a: &Edge, b: &Edge| (a.i, a.j) == (b.i, b.j);
    let touches = |e: &Edge, v: usize| e.i == v || e.j == v;
    use Rank2Shape::*;
    match (loops.as_slice(), edges.as_slice()) {
        ([_, _], []) => Some(TwoLoops),
        ([v], [e]) => Some(if touches(e, *v) {
            LoopOnEdge
        } else {
            LoopOffEdge
        }),
        ([], [a, b]) if same_pair(a, b) => Some(DoubleEdge),
        ([], [a, b]) => {
            let shared = [a.i, a.j].iter().filter(|v| touches(b, **v)).count();
            Some(if shared == 0 { DisjointEdges } else { Path })
        }
        ([u, v], [e]) if touches(e, *u) && touches(e, *v) => Some(LoopLoopEdge),
        ([v], [a, b]) if same_pair(a, b) && touches(a, *v) => Some(LoopDoubleEdge),
        ([], [a, b, c]) => {
            let vertices: BTreeSet<usize> = [a.i, a.j, b.i, b.j, c.i, c.j].into_iter().collect();
            let pairs: BTreeSet<(usize, usize)> = [a, b, c].iter().map(|e| (e.i, e.j)).collect();
            let sign = a.sign.times(b.sign).times(c.sign);
            (vertices.len() == 3 && pairs.len() == 3 && sign == Sign::Minus)
                .then_some(NegativeTriangle)
        }
        ([u, v], [a, b]) if same_pair(a, b) && touches(a, *u) && touches(a, *v) => {
            Some(FullPencil4)
        }
        _ => None,
    }
}

/// One hyperplane per loop (`x_i = 0`) then one per signed edge
/// (`x_i + s x_j = 0`), in the serialized order of the graph.
pub fn build_arrangement(g: &SignedGraph) -> Result<Arrangement> {
    if g.hyperplane_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let l = g.vertex_count();
    let mut hyperplanes = Vec::with_capacity(g.hyperplane_count());
    for &i in g.loops() {
        let mut normal = vec![0; l];
        normal[i - 1] = 1;
        hyperplanes.push(Hyperplane {
            normal,
            origin: Some(Origin::Loop(i)),
        });
    }
    for e in g.edges() {
        let mut normal = vec![0; l];
        normal[e.i - 1] = 1;
        normal[e.j - 1] = e.sign.to_i64();
        hyperplanes.push(Hyperplane {
            normal,
            origin: Some(Origin::Edge(*e)),
        });
    }
    Arrangement::from_hyperplanes(hyperplanes)
}

/// `k` lines through the origin of the plane: normals `(1, 0), (1, 1), ..., (1, k-1)`.
pub fn pencil(k: usize) -> Arrangement {
    Arrangement::from_normals((0..k as i64).map(|s| vec![1, s]).collect())
        .expect("distinct normals")
}
