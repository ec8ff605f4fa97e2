//! Signed graphs with loops, switching, canonical forms and exhaustive
//! enumeration of switching/relabeling classes.
//!
//! Sign convention: an edge `(i, j, s)` stands for the hyperplane
//! `x_i + s x_j = 0`, so an ordinary (unsigned) edge is negative and yields
//! `x_i - x_j = 0`. A double edge is stored as two records with opposite signs.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

/// Largest vertex count accepted by [`enumerate_graphs`].
pub const ENUMERATION_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn from_i64(s: i64) -> Option<Self> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// A signed edge with normalized orientation `i < j` (1-based vertices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub sign: Sign,
}

impl Edge {
    /// Orientation is normalized; `a == b` is rejected by the graph constructor.
    pub fn new(a: usize, b: usize, sign: Sign) -> Self {
        let (i, j) = if a <= b { (a, b) } else { (b, a) };
        Edge { i, j, sign }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "x{}{}x{}", self.i, op, self.j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedGraph {
    vertex_count: usize,
    loops: BTreeSet<usize>,
    edges: BTreeSet<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnsignedGraph {
    pub vertex_count: usize,
    pub edges: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: usize,
    loops: Vec<usize>,
    edges: Vec<(usize, usize, i64)>,
}

impl SignedGraph {
    pub fn new(
        vertex_count: usize,
        loops: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = (usize, usize, Sign)>,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Malformed("vertex count must be positive".into()));
        }
        let check = |v: usize| {
            if v == 0 || v > vertex_count {
                Err(Error::VertexOutOfRange {
                    vertex: v,
                    count: vertex_count,
                })
            } else {
                Ok(())
            }
        };
        let mut loop_set = BTreeSet::new();
        for v in loops {
            check(v)?;
            if !loop_set.insert(v) {
                return Err(Error::Duplicate(format!("loop at {v}")));
            }
        }
        let mut edge_set = BTreeSet::new();
        for (a, b, s) in edges {
            check(a)?;
            check(b)?;
            if a == b {
                return Err(Error::SelfEdge(a));
            }
            let e = Edge::new(a, b, s);
            if !edge_set.insert(e) {
                return Err(Error::Duplicate(format!(
                    "edge [{},{},{}]",
                    e.i,
                    e.j,
                    s.to_i64()
                )));
            }
        }
        Ok(SignedGraph {
            vertex_count,
            loops: loop_set,
            edges: edge_set,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn loops(&self) -> &BTreeSet<usize> {
        &self.loops
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    /// Number of hyperplanes of the associated arrangement.
    pub fn hyperplane_count(&self) -> usize {
        self.loops.len() + self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize, sign: Sign) -> bool {
        self.edges.contains(&Edge::new(a, b, sign))
    }

    pub fn is_double(&self, a: usize, b: usize) -> bool {
        self.has_edge(a, b, Sign::Plus) && self.has_edge(a, b, Sign::Minus)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("graph documents always serialize")
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_doc()).expect("graph documents always serialize")
    }

    fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            vertices: self.vertex_count,
            loops: self.loops.iter().copied().collect(),
            edges: self
                .edges
                .iter()
                .map(|e| (e.i, e.j, e.sign.to_i64()))
                .collect(),
        }
    }

    /// Flip the sign of every edge at `v` (the coordinate change `x_v -> -x_v`).
    pub fn switch(&self, v: usize) -> Result<Self> {
        if v == 0 || v > self.vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count,
            });
        }
        Ok(self.switch_set(|u| u == v))
    }

    fn switch_set(&self, switched: impl Fn(usize) -> bool) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let sign = if switched(e.i) != switched(e.j) {
                    e.sign.flip()
                } else {
                    e.sign
                };
                Edge { sign, ..*e }
            })
            .collect();
        SignedGraph {
            vertex_count: self.vertex_count,
            loops: self.loops.clone(),
            edges,
        }
    }

    /// Relabel vertices: old vertex `v` becomes `perm[v - 1]` (1-based images).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.vertex_count + 1];
        if perm.len() != self.vertex_count
            || perm
                .iter()
                .any(|&p| p == 0 || p > self.vertex_count || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::Precondition(format!(
                "{perm:?} is not a permutation of 1..={}",
                self.vertex_count
            )));
        }
        Ok(self.relabel_unchecked(perm))
    }

    fn relabel_unchecked(&self, perm: &[usize]) -> Self {
        SignedGraph {
            vertex_count: self.vertex_count,
            loops: self.loops.iter().map(|&v| perm[v - 1]).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge::new(perm[e.i - 1], perm[e.j - 1], e.sign))
                .collect(),
        }
    }

    /// Vertices touched by an edge or a loop.
    pub fn support(&self) -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = self.loops.iter().copied().collect();
        for e in &self.edges {
            s.insert(e.i);
            s.insert(e.j);
        }
        s
    }

    /// Drop isolated vertices, relabeling the remaining ones in increasing order.
    pub fn without_isolated(&self) -> Result<Self> {
        let support: Vec<usize> = self.support().into_iter().collect();
        if support.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut new_id = vec![0; self.vertex_count + 1];
        for (k, &v) in support.iter().enumerate() {
            new_id[v] = k + 1;
        }
        Ok(SignedGraph {
            vertex_count: support.len(),
            loops: self.loops.iter().map(|&v| new_id[v]).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge::new(new_id[e.i], new_id[e.j], e.sign))
                .collect(),
        })
    }

    /// Connected in the sense that the supporting vertices form one component
    /// of the underlying graph and there are no isolated vertices.
    pub fn is_connected(&self) -> bool {
        let support = self.support();
        if support.len() != self.vertex_count {
            return false;
        }
        let u = underlying(self);
        let mut adj = vec![Vec::new(); self.vertex_count + 1];
        for &(a, b) in &u.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.vertex_count + 1];
        let mut queue = VecDeque::from([1]);
        seen[1] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.vertex_count
    }
}

impl fmt::Display for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

pub fn parse_graph(text: &str) -> Result<SignedGraph> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (a, b, s) in doc.edges {
        let sign = Sign::from_i64(s)
            .ok_or_else(|| Error::Malformed(format!("edge sign must be 1 or -1, got {s}")))?;
        edges.push((a, b, sign));
    }
    SignedGraph::new(doc.vertices, doc.loops, edges)
}

pub fn underlying(g: &SignedGraph) -> UnsignedGraph {
    UnsignedGraph {
        vertex_count: g.vertex_count,
        edges: g.edges.iter().map(|e| (e.i, e.j)).collect(),
    }
}

pub fn switch(g: &SignedGraph, v: usize) -> Result<SignedGraph> {
    g.switch(v)
}

/// Lexicographically next permutation; false once the last one is reached.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Minimum serialized document over all `l! * 2^l` relabelings composed with
/// switchings. Brute force; meant for `l <= 6`.
pub fn canonical_form(g: &SignedGraph) -> SignedGraph {
    let l = g.vertex_count;
    let mut best: Option<(String, SignedGraph)> = None;
    for mask in 0u32..(1 << l) {
        let switched = g.switch_set(|v| mask >> (v - 1) & 1 == 1);
        let mut perm: Vec<usize> = (1..=l).collect();
        loop {
            let h = switched.relabel_unchecked(&perm);
            let key = h.to_json();
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, h));
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    best.expect("at least the identity transform").1
}

/// Image of each loop bit, and for each pair its image pair and whether signs flip.
type Transform = (Vec<usize>, Vec<(usize, bool)>);

/// Integer coding of graphs on a fixed vertex count, used by the enumerator.
/// Low `l` bits hold loops; then two bits per vertex pair in lexicographic
/// pair order (bit 0: plus edge, bit 1: minus edge).
struct Coder {
    l: usize,
    pairs: Vec<(usize, usize)>,
    transforms: Vec<Transform>,
}

impl Coder {
    fn new(l: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..l)
            .flat_map(|i| (i + 1..l).map(move |j| (i, j)))
            .collect();
        let pair_index = |a: usize, b: usize| {
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            pairs.iter().position(|&p| p == (i, j)).unwrap()
        };
        let mut transforms = Vec::new();
        let mut perm: Vec<usize> = (0..l).collect();
        loop {
            for mask in 0usize..(1 << l) {
                let pair_map = pairs
                    .iter()
                    .map(|&(i, j)| {
                        let flip = (mask >> i & 1) != (mask >> j & 1);
                        (pair_index(perm[i], perm[j]), flip)
                    })
                    .collect();
                transforms.push((perm.clone(), pair_map));
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Coder {
            l,
            pairs,
            transforms,
        }
    }

    fn code_count(&self) -> u64 {
        1u64 << (self.l + 2 * self.pairs.len())
    }

    fn apply(&self, code: u64, t: &(Vec<usize>, Vec<(usize, bool)>)) -> u64 {
        let (perm, pair_map) = t;
        let mut out = 0u64;
        for (v, &img) in perm.iter().enumerate() {
            if code >> v & 1 == 1 {
                out |= 1 << img;
            }
        }
        for (k, &(img, flip)) in pair_map.iter().enumerate() {
            let mut state = code >> (self.l + 2 * k) & 3;
            if flip {
                state = (state & 1) << 1 | state >> 1;
            }
            out |= state << (self.l + 2 * img);
        }
        out
    }

    fn is_orbit_minimum(&self, code: u64) -> bool {
        self.transforms.iter().all(|t| self.apply(code, t) >= code)
    }

    fn has_isolated(&self, code: u64) -> bool {
        let mut touched = code & ((1 << self.l) - 1);
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            if code >> (self.l + 2 * k) & 3 != 0 {
                touched |= 1 << i | 1 << j;
            }
        }
        touched != (1 << self.l) - 1
    }

    fn decode(&self, code: u64) -> SignedGraph {
        let loops = (0..self.l).filter(|&v| code >> v & 1 == 1).map(|v| v + 1);
        let mut edges = Vec::new();
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            let state = code >> (self.l + 2 * k) & 3;
            if state & 1 == 1 {
                edges.push((i + 1, j + 1, Sign::Plus));
            }
            if state & 2 == 2 {
                edges.push((i + 1, j + 1, Sign::Minus));
            }
        }
        SignedGraph::new(self.l, loops, edges).expect("decoded graphs are valid")
    }
}

/// Deterministic stream of canonical forms, one per switching/relabeling
/// class of nonempty graphs without isolated vertices, by vertex count and
/// then by integer code.
pub struct GraphEnumerator {
    v_max: usize,
    connected_only: bool,
    coder: Coder,
    next_code: u64,
}

impl Iterator for GraphEnumerator {
    type Item = SignedGraph;

    fn next(&mut self) -> Option<SignedGraph> {
        loop {
            if self.next_code >= self.coder.code_count() {
                if self.coder.l >= self.v_max {
                    return None;
                }
                self.coder = Coder::new(self.coder.l + 1);
                self.next_code = 0;
            }
            let code = self.next_code;
            self.next_code += 1;
            if self.coder.has_isolated(code) || !self.coder.is_orbit_minimum(code) {
                continue;
            }
            let g = self.coder.decode(code);
            if self.connected_only && !g.is_connected() {
                continue;
            }
            return Some(canonical_form(&g));
        }
    }
}

pub fn enumerate_graphs(v_max: usize, connected_only: bool) -> Result<GraphEnumerator> {
    if v_max == 0 {
        return Err(Error::Precondition("v_max must be positive".into()));
    }
    if v_max > ENUMERATION_CAP {
        return Err(Error::CapExceeded(format!(
            "v_max = {v_max} > {ENUMERATION_CAP}"
        )));
    }
    Ok(GraphEnumerator {
        v_max,
        connected_only,
        coder: Coder::new(1),
        next_code: 0,
    })
}

/// Named graph families used throughout tests and the CLI.
pub mod families {
    use super::*;

    fn pairs(l: usize) -> impl Iterator<Item = (usize, usize)> {
        (1..=l).flat_map(move |i| (i + 1..=l).map(move |j| (i, j)))
    }

    /// Complete unsigned graph: the braid arrangement.
    pub fn complete_unsigned(l: usize) -> SignedGraph {
        SignedGraph::new(l, [], pairs(l).map(|(i, j)| (i, j, Sign::Minus))).unwrap()
    }

    /// Complete signed graph (all double edges): the Coxeter arrangement `D_l`.
    pub fn coxeter_d(l: usize) -> SignedGraph {
        SignedGraph::new(
            l,
            [],
            pairs(l).flat_map(|(i, j)| [(i, j, Sign::Plus), (i, j, Sign::Minus)]),
        )
        .unwrap()
    }

    /// `D_l` plus a loop at every vertex: the Coxeter arrangement `B_l`.
    pub fn coxeter_b(l: usize) -> SignedGraph {
        let d = coxeter_d(l);
        SignedGraph::new(l, 1..=l, d.edges.iter().map(|e| (e.i, e.j, e.sign))).unwrap()
    }

    /// Double edge `12` with loops at both ends: four lines through a point.
    pub fn looped_double_edge() -> SignedGraph {
        SignedGraph::new(2, [1, 2], [(1, 2, Sign::Plus), (1, 2, Sign::Minus)]).unwrap()
    }
}
