mod common;

use common::*;
use milnor_core::arrangement::build_arrangement;
use milnor_core::graph::families::{complete_unsigned, coxeter_d};
use milnor_core::graph::{canonical_form, enumerate_graphs, underlying, Sign, SignedGraph};
use milnor_core::milnor::exceptional_patterns;
use milnor_core::{beta_p, Error};
use std::collections::BTreeSet;

fn enumerated_keys(vmax: usize) -> BTreeSet<Plain> {
    enumerate_graphs(vmax, false)
        .unwrap()
        .map(|g| plain(&g))
        .collect()
}

#[test]
fn class_counts_match_direct_orbit_enumeration() {
    let mut expected = 0;
    for v in 1..=3 {
        expected += orbit_keys_on(v).len();
        assert_eq!(
            enumerate_graphs(v, false).unwrap().count(),
            expected,
            "vmax = {v}"
        );
    }
    assert_eq!(enumerate_graphs(2, false).unwrap().count(), 8);
}

#[test]
fn four_vertex_classes_match_direct_orbit_enumeration() {
    let perms4 = all_permutations(4);
    let streamed: Vec<SignedGraph> = enumerate_graphs(4, false)
        .unwrap()
        .filter(|g| g.vertex_count() == 4)
        .collect();
    let direct = orbit_keys_on(4);
    assert_eq!(streamed.len(), direct.len());
    let keys: BTreeSet<Plain> = streamed.iter().map(|g| orbit_key(g, &perms4)).collect();
    assert_eq!(keys, direct);
}

#[test]
fn stream_is_canonical_and_duplicate_free() {
    let classes: Vec<SignedGraph> = enumerate_graphs(3, false).unwrap().collect();
    let distinct: BTreeSet<String> = classes.iter().map(|g| g.to_json()).collect();
    assert_eq!(distinct.len(), classes.len());
    for g in &classes {
        assert_eq!(&canonical_form(g), g);
    }
}

#[test]
fn three_vertex_stream_contains_exceptional_classes() {
    let keys = enumerated_keys(3);
    let on_three: Vec<_> = exceptional_patterns()
        .into_iter()
        .filter(|(_, g, _)| g.vertex_count() == 3)
        .collect();
    assert_eq!(on_three.len(), 3);
    for (name, g, _) in on_three {
        assert!(keys.contains(&plain(&canonical_form(&g))), "{name} missing");
    }
}

#[test]
fn connected_stream_is_a_subset() {
    let all = enumerated_keys(3);
    let connected: Vec<SignedGraph> = enumerate_graphs(3, true).unwrap().collect();
    assert!(connected.len() < all.len());
    for g in &connected {
        assert!(g.is_connected());
        assert!(all.contains(&plain(g)));
    }
}

#[test]
fn enumeration_bounds() {
    assert!(matches!(
        enumerate_graphs(0, false),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        enumerate_graphs(7, false),
        Err(Error::CapExceeded(_))
    ));
}

/// Apex 1 over the triangle 2, 3, 4 with spoke 12 signed `e`, 13 `f`, 14 `g`
/// and rim edges `-ef`, `-eg`, `-fg`; every triangle is negative.
fn spoked_k4(e: Sign, f: Sign, g: Sign) -> SignedGraph {
    let rim = |a: Sign, b: Sign| a.times(b).flip();
    SignedGraph::new(
        4,
        [],
        [
            (1, 2, e),
            (1, 3, f),
            (1, 4, g),
            (2, 3, rim(e, f)),
            (2, 4, rim(e, g)),
            (3, 4, rim(f, g)),
        ],
    )
    .unwrap()
}

#[test]
fn unsigned_k4_is_the_all_negative_triangle_pattern() {
    use Sign::*;
    assert_eq!(spoked_k4(Minus, Minus, Minus), complete_unsigned(4));
    let k4 = canonical_form(&complete_unsigned(4));
    for e in [Plus, Minus] {
        for f in [Plus, Minus] {
            for g in [Plus, Minus] {
                assert_eq!(canonical_form(&spoked_k4(e, f, g)), k4);
            }
        }
    }
}

#[test]
fn canonical_form_is_constant_along_switchings() {
    let apex = &exceptional_patterns()[2].1;
    for v in 1..=3 {
        assert_eq!(
            canonical_form(apex),
            canonical_form(&apex.switch(v).unwrap())
        );
    }
    let d4 = canonical_form(&coxeter_d(4));
    assert_eq!(canonical_form(&d4), d4);
}

#[test]
fn switching_preserves_beta() {
    let d3 = build_arrangement(&coxeter_d(3)).unwrap();
    for v in 1..=3 {
        let s = build_arrangement(&coxeter_d(3).switch(v).unwrap()).unwrap();
        for p in [2, 3, 5] {
            assert_eq!(beta_p(&s, p).unwrap(), beta_p(&d3, p).unwrap());
        }
    }
}

#[test]
fn wheel_underlying_graph() {
    let g = wheel_with_loops();
    let u = underlying(&g);
    assert_eq!(u.vertex_count, 6);
    let expected: BTreeSet<(usize, usize)> = [
        (1, 2),
        (2, 3),
        (3, 4),
        (1, 4),
        (1, 5),
        (2, 5),
        (3, 5),
        (4, 5),
    ]
    .into_iter()
    .collect();
    assert_eq!(u.edges, expected);
    // vertex 6 carries only its loop
    assert!(g.support().contains(&6));
    assert!(u.edges.iter().all(|&(i, j)| i != 6 && j != 6));
    assert!(!g.is_connected());
}

#[test]
fn exceptional_patterns_are_distinct_classes() {
    let patterns: Vec<SignedGraph> = exceptional_patterns()
        .iter()
        .map(|(_, g, _)| canonical_form(g))
        .collect();
    let distinct: BTreeSet<String> = patterns.iter().map(|g| g.to_json()).collect();
    assert_eq!(distinct.len(), 5);
}
