use std::collections::{BTreeSet, HashMap};

use planar_cayley::construct::*;
use planar_cayley::Presentation;
use proptest::prelude::*;

fn tp(kind: GraphType, n: Option<u32>, m: Option<u32>) -> TypeParams {
    TypeParams::new(kind, n, m).unwrap()
}

fn grid() -> Vec<TypeParams> {
    use GraphType::*;
    vec![
        tp(I, Some(2), None),
        tp(I, Some(3), None),
        tp(II, Some(1), None),
        tp(II, Some(2), None),
        tp(III, Some(2), None),
        tp(III, Some(3), None),
        tp(IV, None, Some(2)),
        tp(IV, None, Some(3)),
        tp(V, Some(2), Some(2)),
        tp(V, Some(2), Some(3)),
        tp(VI, Some(2), Some(2)),
        tp(VI, Some(2), Some(3)),
        tp(VII, Some(2), Some(2)),
        tp(VII, Some(3), Some(2)),
        tp(VIII, None, Some(1)),
        tp(VIII, None, Some(2)),
        tp(IX, Some(1), None),
        tp(IX, Some(2), None),
    ]
}

/// Order of the group generated by permutations, by closure.
fn permutation_group_order(gens: &[Vec<usize>]) -> usize {
    let id: Vec<usize> = (0..gens[0].len()).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.len()
}

#[test]
fn dihedral_order_six_matches_permutation_closure() {
    // b = (0 1), c = (1 2) in S3: both involutions, bc of order 3.
    let oracle = permutation_group_order(&[vec![1, 0, 2], vec![0, 2, 1]]);
    let p = Presentation::parse("<b,c | b^2, c^2, (bc)^3>").unwrap();
    let e = enumerate_cosets(&p, 1000);
    assert!(e.is_complete());
    assert_eq!(e.table().len(), oracle);
}

#[test]
fn degenerate_bcd_group_has_four_elements() {
    let p = Presentation::parse("<b,c,d | b^2, c^2, d^2, bcd>").unwrap();
    let e = enumerate_cosets(&p, 1000);
    assert!(e.is_complete());
    assert_eq!(e.table().len(), 4);
    let q = Presentation::parse("<b,c,d | b^2, c^2, d^2, (bc)^2, bcd>").unwrap();
    assert_eq!(enumerate_cosets(&q, 1000).table().len(), 4);
}

#[test]
fn type_one_overflows() {
    let e = enumerate_cosets(&tp(GraphType::I, Some(2), None).presentation(), 1000);
    assert!(!e.is_complete());
}

#[test]
fn type_nine_is_a_doubled_square() {
    let b = construct(&tp(GraphType::IX, Some(2), None), 3).unwrap();
    assert!(b.is_complete());
    assert_eq!(b.len(), 4);
    assert_eq!(b.edges().len(), 6);
    let p = b.presentation();
    let [gb, gc, gd] = ["b", "c", "d"].map(|s| p.alphabet().find(s).unwrap());
    let pairs = |g: usize| -> BTreeSet<(usize, usize)> {
        b.edges().iter().filter(|e| e.colour == g).map(|e| (e.u.min(e.v), e.u.max(e.v))).collect()
    };
    assert_eq!(pairs(gc), pairs(gd));
    assert!(pairs(gb).is_disjoint(&pairs(gc)));
    // b and c alternate around a single 4-cycle.
    let mut cur = b.center();
    for k in 0..4 {
        cur = b.neighbour(cur, b.column_of(planar_cayley::presentation::Letter::pos([gb, gc][k % 2]))).unwrap();
        assert_eq!(cur == b.center(), k == 3);
    }
}

#[test]
fn type_nine_matches_full_enumeration() {
    let t = tp(GraphType::IX, Some(2), None);
    let e = enumerate_cosets(&t.presentation(), 1000);
    let oracle = ball_from_table(e.table(), usize::MAX / 4).unwrap();
    assert!(rooted_colour_isomorphic(&construct(&t, 6).unwrap(), &oracle));
    assert!(cross_check(&t, 6).unwrap());
}

#[test]
fn type_one_radius_three_counts_match_oracle() {
    let t = tp(GraphType::I, Some(2), None);
    let oracle = enumerated_ball(&t.presentation(), 3, DEFAULT_CAP).unwrap();
    let built = construct(&t, 3).unwrap();
    assert_eq!((built.len(), built.edges().len()), (oracle.len(), oracle.edges().len()));
    assert!(cross_check(&t, 3).unwrap());
}

#[test]
fn complete_table_clamps_radius() {
    let p = Presentation::parse("<b,c,d | b^2, c^2, d^2, (bc)^2, bcd>").unwrap();
    let e = enumerate_cosets(&p, 1000);
    let b = ball_from_table(e.table(), 10).unwrap();
    assert_eq!(b.len(), 4);
    assert!(b.is_complete());
    assert!(b.radius() <= 2);
}

#[test]
fn partial_table_has_undefined_interior() {
    let e = enumerate_cosets(&tp(GraphType::I, Some(2), None).presentation(), 2);
    assert!(!e.is_complete());
    assert!(matches!(ball_from_table(e.table(), 2), Err(TableBallError::UndefinedInterior { .. })));
}

#[test]
fn radius_zero_is_a_single_vertex() {
    let e = enumerate_cosets(&tp(GraphType::I, Some(2), None).presentation(), 100);
    let b = ball_from_table(e.table(), 0).unwrap();
    assert_eq!(b.len(), 1);
    assert_eq!(b.interior().count(), 0);
}

#[test]
fn construct_rejects_bad_parameters() {
    assert!(TypeParams::new(GraphType::I, Some(1), None).is_err());
    assert!(TypeParams::new(GraphType::V, Some(2), None).is_err());
    assert!(TypeParams::new(GraphType::IV, Some(2), Some(2)).is_err());
    assert!(TypeParams::new(GraphType::VIII, None, Some(0)).is_err());
    assert!(matches!(construct(&tp(GraphType::I, Some(2), None), 0), Err(ConstructError::InvalidParams(_))));
    // Type III takes its single parameter under either name.
    assert_eq!(TypeParams::new(GraphType::III, None, Some(2)).unwrap(), tp(GraphType::III, Some(2), None));
}

#[test]
fn certify_accepts_constructed_ball() {
    let t = tp(GraphType::I, Some(2), None);
    let b = construct(&t, 3).unwrap();
    let c = certify_ball(&b, &t.presentation()).unwrap();
    assert_eq!(c.vertices, b.len());
}

#[test]
fn deleted_b_edge_opens_traces() {
    let t = tp(GraphType::I, Some(2), None);
    let b = construct(&t, 4).unwrap();
    let p = t.presentation();
    let gb = p.alphabet().find("b").unwrap();
    let (e, _) = b.edges().iter().enumerate().find(|(_, e)| e.colour == gb && e.u == b.center()).unwrap();
    let broken = b.without_edge(e);
    let v = certify_ball(&broken, &p).unwrap_err();
    let rel = p.relators().iter().position(|r| r.len() == 4).unwrap();
    assert!(v.iter().any(|x| x.relator == Some(rel) && matches!(x.kind, ViolationKind::BrokenTrace { .. })));
}

#[test]
fn non_simple_relator_is_reported() {
    let p = Presentation::parse("<a,b | b^2, (ab)^2>").unwrap();
    let b = enumerated_ball(&p, 4, DEFAULT_CAP).unwrap();
    let q = Presentation::parse("<a,b | b^2, (ab)^3>").unwrap();
    let v = certify_ball(&b, &q).unwrap_err();
    assert!(v.iter().any(|x| matches!(x.kind, ViolationKind::FoldedTrace { step: 4 })));
}

#[test]
fn tiny_cap_is_inconclusive() {
    let t = tp(GraphType::VII, Some(2), Some(2));
    assert!(matches!(cross_check_with_cap(&t, 2, 10), Err(ConstructError::OracleInconclusive(_))));
}

#[test]
fn grid_cross_checks_at_radius_four() {
    for t in grid() {
        assert!(cross_check(&t, 4).unwrap(), "{t}");
    }
}

#[test]
fn json_round_trip() {
    for t in grid() {
        let b = construct(&t, 3).unwrap();
        let s = b.to_json_string();
        let back = CayleyBall::from_json_str(&s).unwrap();
        assert!(rooted_colour_isomorphic(&b, &back), "{t}");
        assert_eq!(back.to_json_string(), s);
    }
}

#[test]
fn malformed_json_is_rejected() {
    assert!(CayleyBall::from_json_str("{").is_err());
    let b = construct(&tp(GraphType::I, Some(2), None), 2).unwrap();
    let mut j = b.to_json();
    j.edges[0].v = 999;
    assert!(CayleyBall::from_json(&j).is_err());
}

/// Which slots of `v` lead back to `v` or to the same neighbour, and which neighbours
/// are joined by which colour: the coloured radius-1 neighbourhood up to isomorphism.
fn local_signature(b: &CayleyBall, v: usize) -> Vec<Option<usize>> {
    let k = b.columns().len();
    let nb: Vec<usize> = (0..k).map(|c| b.neighbour(v, c).unwrap()).collect();
    let mut sig = Vec::new();
    for &x in &nb {
        for c in 0..k {
            let y = b.neighbour(x, c);
            sig.push(y.map(|y| if y == v { k } else { nb.iter().position(|&z| z == y).map_or(k + 1, |i| i) }));
        }
    }
    sig
}

fn grid_strategy() -> impl Strategy<Value = TypeParams> {
    prop::sample::select(grid())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn deep_vertices_look_alike(t in grid_strategy(), r in 4usize..7) {
        let b = construct(&t, r).unwrap();
        let l = b.presentation().max_relator_len();
        let deep: Vec<usize> = (0..b.len()).filter(|&v| b.is_complete() || b.depth(v) + l < r).collect();
        let mut sigs: HashMap<Vec<Option<usize>>, usize> = HashMap::new();
        for &v in &deep {
            *sigs.entry(local_signature(&b, v)).or_default() += 1;
        }
        prop_assert!(sigs.len() <= 1);
    }

    #[test]
    fn parallel_edges_only_in_type_nine(t in grid_strategy(), r in 2usize..6) {
        let b = construct(&t, r).unwrap();
        let mut pairs: Vec<(usize, usize)> =
            b.endpoint_pairs().into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        pairs.sort_unstable();
        let parallel = pairs.windows(2).any(|w| w[0] == w[1]);
        prop_assert_eq!(parallel, t.kind == GraphType::IX);
    }

    #[test]
    fn interior_is_cubic(t in grid_strategy(), r in 2usize..6) {
        let b = construct(&t, r).unwrap();
        for v in b.interior() {
            prop_assert_eq!(b.degree(v), b.columns().len());
        }
        prop_assert_eq!(b.columns().len(), 3);
    }

    #[test]
    fn enumeration_log_replays(t in grid_strategy(), cap in 50usize..400) {
        let e = enumerate_cosets(&t.presentation(), cap);
        prop_assert!(e.table().replay_verify().is_ok());
    }
}
