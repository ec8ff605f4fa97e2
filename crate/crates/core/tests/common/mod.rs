//! Test helpers that deliberately avoid the library's own lattice and
//! canonical-form code, so they can serve as oracles.
#![allow(dead_code)]

use milnor_core::graph::{Sign, SignedGraph};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeSet;

/// Decodes `loops` (bit per vertex) and `pairs` (2 bits per unordered pair
/// in lexicographic order: bit 0 plus edge, bit 1 minus edge).
pub fn graph_from_bits(v: usize, loops: u32, pairs: u64) -> Option<SignedGraph> {
    let mut edges = Vec::new();
    let mut slot = 0;
    for i in 1..=v {
        for j in i + 1..=v {
            let bits = (pairs >> (2 * slot)) & 3;
            if bits & 1 != 0 {
                edges.push((i, j, Sign::Plus));
            }
            if bits & 2 != 0 {
                edges.push((i, j, Sign::Minus));
            }
            slot += 1;
        }
    }
    let loop_list: Vec<usize> = (1..=v).filter(|k| loops >> (k - 1) & 1 != 0).collect();
    if loop_list.is_empty() && edges.is_empty() {
        return None;
    }
    SignedGraph::new(v, loop_list, edges).ok()
}

pub fn all_permutations(v: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..left.len() {
            let x = left.remove(k);
            prefix.push(x);
            rec(prefix, left, out);
            prefix.pop();
            left.insert(k, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (1..=v).collect(), &mut out);
    out
}

/// A graph as plain sorted lists, `(vertices, loops, edges)` with edges `(i, j, ±1)`, `i < j`.
pub type Plain = (usize, Vec<usize>, Vec<(usize, usize, i64)>);

pub fn plain(g: &SignedGraph) -> Plain {
    (
        g.vertex_count(),
        g.loops().iter().copied().collect(),
        g.edges()
            .iter()
            .map(|e| (e.i, e.j, e.sign.to_i64()))
            .collect(),
    )
}

fn transform(g: &Plain, perm: &[usize], switched: u32) -> Plain {
    let flip = |k: usize| if switched >> (k - 1) & 1 != 0 { -1 } else { 1 };
    let mut loops: Vec<usize> = g.1.iter().map(|&k| perm[k - 1]).collect();
    loops.sort();
    let mut edges: Vec<(usize, usize, i64)> =
        g.2.iter()
            .map(|&(i, j, s)| {
                let (a, b) = (perm[i - 1], perm[j - 1]);
                (a.min(b), a.max(b), s * flip(i) * flip(j))
            })
            .collect();
    edges.sort();
    (g.0, loops, edges)
}

/// Minimum over every relabelling and switching set; equal keys iff same orbit.
pub fn orbit_key(g: &SignedGraph, perms: &[Vec<usize>]) -> Plain {
    let p = plain(g);
    let mut best: Option<Plain> = None;
    for perm in perms {
        for s in 0..1u32 << p.0 {
            let t = transform(&p, perm, s);
            if best.as_ref().is_none_or(|b| &t < b) {
                best = Some(t);
            }
        }
    }
    best.expect("at least one transform")
}

/// Orbit keys of all graphs on exactly `v` vertices with no isolated vertex.
pub fn orbit_keys_on(v: usize) -> BTreeSet<Plain> {
    let perms = all_permutations(v);
    let pairs = v * (v - 1) / 2;
    let mut keys = BTreeSet::new();
    for loops in 0..1u32 << v {
        for code in 0..1u64 << (2 * pairs) {
            let Some(g) = graph_from_bits(v, loops, code) else {
                continue;
            };
            if g.support().len() != v {
                continue;
            }
            keys.insert(orbit_key(&g, &perms));
        }
    }
    keys
}

pub fn random_graph<R: Rng>(rng: &mut R, v: usize) -> Option<SignedGraph> {
    let loops = rng.gen_range(0..1u32 << v);
    let pairs = v * (v - 1) / 2;
    let code = rng.gen_range(0..1u64 << (2 * pairs));
    graph_from_bits(v, loops, code)
}

/// Applies a random relabelling followed by switchings at a random vertex set.
pub fn random_transform<R: Rng>(rng: &mut R, g: &SignedGraph) -> SignedGraph {
    let mut perm: Vec<usize> = (1..=g.vertex_count()).collect();
    perm.shuffle(rng);
    let mut h = g.relabel(&perm).unwrap();
    for v in 1..=g.vertex_count() {
        if rng.gen_bool(0.5) {
            h = h.switch(v).unwrap();
        }
    }
    h
}

const LARGE_PRIME: i64 = 1_000_000_007;

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1;
    b %= LARGE_PRIME;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % LARGE_PRIME;
        }
        b = b * b % LARGE_PRIME;
        e >>= 1;
    }
    r
}

/// Rank modulo a large prime. For the tiny integer normals used here every
/// minor is far smaller than the modulus, so this is the rank over Q.
pub fn rank_mod_large_prime(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(LARGE_PRIME)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let pivot = m[rank].clone();
        let inv = pow_mod(pivot[c], LARGE_PRIME - 2);
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c] * inv % LARGE_PRIME;
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x - f * y).rem_euclid(LARGE_PRIME);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Poincaré polynomial by deletion and contraction on the matroid of `normals`:
/// `P(M) = P(M \ e) + t P(M / e)` for `e` not a loop, `0` with a loop, `1` when empty.
pub fn poincare_deletion_contraction(normals: &[Vec<i64>]) -> Vec<i64> {
    fn rank_of(normals: &[Vec<i64>], set: &[usize]) -> usize {
        let rows: Vec<Vec<i64>> = set.iter().map(|&i| normals[i].clone()).collect();
        rank_mod_large_prime(&rows)
    }
    // `contracted` elements are fixed; `ground` is what remains.
    fn rec(normals: &[Vec<i64>], contracted: &mut Vec<usize>, ground: &[usize]) -> Vec<i64> {
        let Some((&e, rest)) = ground.split_first() else {
            return vec![1];
        };
        let base = rank_of(normals, contracted);
        contracted.push(e);
        let is_loop = rank_of(normals, contracted) == base;
        if is_loop {
            contracted.pop();
            return vec![0];
        }
        let contraction = rec(normals, contracted, rest);
        contracted.pop();
        let deletion = rec(normals, contracted, rest);
        let len = deletion.len().max(contraction.len() + 1);
        let mut out = vec![0; len];
        for (k, c) in deletion.iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in contraction.iter().enumerate() {
            out[k + 1] += c;
        }
        out
    }
    let ground: Vec<usize> = (0..normals.len()).collect();
    let mut p = rec(normals, &mut Vec::new(), &ground);
    while p.len() > 1 && p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// Wheel with hub 5 joined to the 4-cycle 1-2-3-4, plus a loop-only vertex 6.
pub fn wheel_with_loops() -> SignedGraph {
    use Sign::*;
    SignedGraph::new(
        6,
        [2, 3, 6],
        [
            (1, 2, Plus),
            (1, 2, Minus),
            (2, 3, Plus),
            (3, 4, Minus),
            (1, 4, Plus),
            (2, 5, Plus),
            (3, 5, Minus),
            (1, 5, Minus),
            (4, 5, Minus),
        ],
    )
    .unwrap()
}
