use std::collections::BTreeSet;

use planar_cayley::construct::*;
use planar_cayley::embed::*;
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

fn grid_ball(t: &TypeParams) -> CayleyBall {
    construct(t, 6).unwrap()
}

fn gen(b: &CayleyBall, name: &str) -> usize {
    b.presentation().alphabet().find(name).unwrap()
}

/// Behaviour of each colour on interior edges, read directly off the spins.
fn observed(e: &RotationEmbedding) -> Vec<BTreeSet<bool>> {
    let b = e.ball();
    let mut out = vec![BTreeSet::new(); b.presentation().alphabet().len()];
    for x in b.edges() {
        if b.is_interior(x.u) && b.is_interior(x.v) {
            out[x.colour].insert(e.spin(x.u) == e.spin(x.v));
        }
    }
    out
}

#[test]
fn spin_table_examples() {
    use ColourSpin::*;
    let fixed = |t: TypeParams| match spin_table(&t) {
        SpinPattern::Fixed(v) => v,
        SpinPattern::AnyPlanar => panic!("fixed pattern expected"),
    };
    assert_eq!(fixed(tp(GraphType::I, Some(2), None)), vec![("a".into(), Preserving), ("b".into(), Preserving)]);
    assert_eq!(fixed(tp(GraphType::II, Some(2), None)), vec![("a".into(), Preserving), ("b".into(), Reversing)]);
    assert!(fixed(tp(GraphType::VI, Some(2), Some(2))).iter().all(|(_, s)| *s == Reversing));
    assert_eq!(spin_table(&tp(GraphType::IX, Some(2), None)), SpinPattern::AnyPlanar);
    assert!(vap_free(GraphType::I));
    assert!(!vap_free(GraphType::IV));
    assert!(!vap_free(GraphType::VII));
    let free: Vec<GraphType> = GraphType::ALL.into_iter().filter(|&k| vap_free(k)).collect();
    use GraphType::*;
    assert_eq!(free, vec![I, II, VI, VIII, IX]);
}

#[test]
fn type_one_has_uniform_spin_and_square_faces() {
    let t = tp(GraphType::I, Some(2), None);
    let b = construct(&t, 5).unwrap();
    let e = embed(&b, &t).unwrap();
    assert!((0..b.len()).all(|v| e.spin(v)));
    let faces = trace_faces(&e, default_face_bound(&b));
    let closed: Vec<&FaceWalk> = faces.closed().collect();
    assert!(!closed.is_empty());
    for f in closed {
        assert_eq!(f.length, FaceLength::Closed(4));
        assert!(f.relator_match);
        assert_eq!(f.colours(&b).len(), 2);
    }
}

#[test]
fn type_five_and_eight_spin_patterns() {
    let t = tp(GraphType::V, Some(2), Some(2));
    let b = construct(&t, 6).unwrap();
    let e = embed(&b, &t).unwrap();
    let o = observed(&e);
    assert_eq!(o[gen(&b, "c")], BTreeSet::from([true]));
    assert_eq!(o[gen(&b, "b")], BTreeSet::from([false]));
    assert_eq!(o[gen(&b, "d")], BTreeSet::from([false]));

    let t = tp(GraphType::VIII, None, Some(1));
    let b = construct(&t, 6).unwrap();
    let e = embed(&b, &t).unwrap();
    let o = observed(&e);
    assert_eq!(o[gen(&b, "b")], BTreeSet::from([true]));
    assert_eq!(o[gen(&b, "c")], BTreeSet::from([false]));
    assert_eq!(o[gen(&b, "d")], BTreeSet::from([false]));
}

#[test]
fn type_five_vertices_see_two_short_faces_and_one_infinite() {
    for (t, r) in [(tp(GraphType::V, Some(2), Some(2)), 7), (tp(GraphType::V, Some(2), Some(3)), 8)] {
        let b = construct(&t, r).unwrap();
        let e = embed(&b, &t).unwrap();
        let p = type_v_face_profile(&e).unwrap();
        assert!(p.checked > 0);
        assert_eq!(p.failure, None, "{t}");
    }
}

#[test]
fn single_cycle_has_two_faces() {
    let g = UGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
    let Planarity::Planar(c) = planarity_check(&g) else { panic!("cycle is planar") };
    assert_eq!(c.faces, 2);
    let walks = face_walks(&g, &c.rotation);
    assert!(walks.iter().all(|w| w.len() == 4));
}

/// Face circuits recomputed through the generic rotation-system face walker, kept when
/// every vertex on the face is interior.
fn oracle_closed_faces(e: &RotationEmbedding) -> BTreeSet<Vec<usize>> {
    let b = e.ball();
    let g = UGraph::from_ball(b);
    let mut out = BTreeSet::new();
    for w in face_walks(&g, &e.rotation_system()) {
        let verts: Vec<usize> = w
            .iter()
            .map(|&d| {
                let (u, v) = g.edges()[d / 2];
                if d % 2 == 0 {
                    u
                } else {
                    v
                }
            })
            .collect();
        if verts.iter().all(|&v| b.is_interior(v)) {
            let mut edges: Vec<usize> = w.iter().map(|d| d / 2).collect();
            edges.sort_unstable();
            edges.dedup();
            out.insert(edges);
        }
    }
    out
}

#[test]
fn closed_faces_match_generic_face_walker() {
    for t in grid() {
        let b = grid_ball(&t);
        let e = embed(&b, &t).unwrap();
        let ours: BTreeSet<Vec<usize>> =
            trace_faces(&e, default_face_bound(&b)).closed().map(FaceWalk::circuit).collect();
        assert_eq!(ours, oracle_closed_faces(&e), "{t}");
    }
}

#[test]
fn produced_embeddings_are_consistent_and_planar() {
    for t in grid() {
        let b = grid_ball(&t);
        let e = embed(&b, &t).unwrap();
        assert_eq!(e.genus(), 0, "{t}");
        let c = check_consistency(&e);
        assert!(c.consistent, "{t}: {c:?}");
        assert!(c.translations_checked > 0 || t.kind == GraphType::VII || t.kind == GraphType::V, "{t}");
        let g = UGraph::from_ball(&b);
        match planarity_check(&g) {
            Planarity::Planar(cert) => assert!(euler_consistent(&g, &cert.rotation), "{t}"),
            Planarity::NonPlanar(w) => panic!("{t}: {w:?}"),
        }
    }
}

#[test]
fn flipped_vertex_is_inconsistent() {
    let t = tp(GraphType::VI, Some(2), Some(3));
    let b = construct(&t, 5).unwrap();
    let e = embed(&b, &t).unwrap();
    let c = check_consistency(&e.with_flipped(b.center()));
    assert!(!c.consistent);
    let w = c.witness_edge.expect("witness edge");
    let edge = b.edge(w);
    assert!(edge.u == b.center() || edge.v == b.center());
}

#[test]
fn all_preserving_fails_on_type_six() {
    let t = tp(GraphType::VI, Some(2), Some(2));
    let b = construct(&t, 5).unwrap();
    let pattern = vec![ColourSpin::Preserving; 3];
    assert!(matches!(embed_with_pattern(&b, &pattern), Err(EmbedError::SpinConflict(_))));
    // All-preserving forces one spin everywhere; count that rotation's faces directly.
    let g = UGraph::from_ball(&b);
    let rot: Vec<Vec<usize>> = (0..b.len()).map(|v| (0..3).filter_map(|c| b.slot(v, c)).collect()).collect();
    let chi = g.len() as i64 - g.edges().len() as i64 + count_faces(&g, &rot) as i64;
    assert!(chi < 2);
}

#[test]
fn two_coloured_faces() {
    for t in [tp(GraphType::IV, None, Some(2)), tp(GraphType::V, Some(2), Some(2))] {
        let b = construct(&t, 6).unwrap();
        assert_eq!(two_coloured_face_check(&embed(&b, &t).unwrap()), Ok(true));
    }
    let t = tp(GraphType::I, Some(2), None);
    let b = construct(&t, 4).unwrap();
    assert!(matches!(two_coloured_face_check(&embed(&b, &t).unwrap()), Err(EmbedError::WrongType(_))));
}

#[test]
fn face_relator_correspondence_on_vap_free_types() {
    for t in grid().into_iter().filter(|t| vap_free(t.kind)) {
        let b = grid_ball(&t);
        let e = embed(&b, &t).unwrap();
        let c = face_relator_correspondence(&e);
        assert!(c.deep_relator_circuits > 0, "{t}");
        assert!(c.missing_faces.is_empty(), "{t}");
        if t.kind == GraphType::IX {
            // One face is bounded by b and d edges, the circuit of the derived (bd)^n.
            assert_eq!(c.extra_faces.len(), 1, "{t}");
            let colours: BTreeSet<&str> = c.extra_faces[0].iter().map(|&x| b.colour_name(b.edge(x).colour)).collect();
            assert_eq!(colours, BTreeSet::from(["b", "d"]));
            assert_eq!(c.extra_faces[0].len(), 2 * t.n.unwrap() as usize);
        } else {
            assert!(c.extra_faces.is_empty(), "{t}");
        }
    }
}

#[test]
fn embedding_json_shape() {
    let t = tp(GraphType::I, Some(2), None);
    let b = construct(&t, 3).unwrap();
    let j = serde_json::to_value(embed(&b, &t).unwrap().to_json()).unwrap();
    assert_eq!(j["colour_spin"]["a"], "preserving");
    assert_eq!(j["vertex"].as_array().unwrap().len(), b.len());
    assert_eq!(j["vertex"][0]["rotation"].as_array().unwrap().len(), 3);
    assert!(j["faces"][0]["relator_match"].is_boolean());
}

#[test]
fn complete_graph_on_five_vertices() {
    let g = UGraph::complete(5);
    let Planarity::NonPlanar(w) = planarity_check(&g) else { panic!("K5 is not planar") };
    assert_eq!(w.kind, KuratowskiKind::K5);
    assert!(verify_witness(&g, &w));
    assert!(!is_planar_path_addition(&g));
}

#[test]
fn petersen_graph_has_a_k33_subdivision() {
    let mut g = UGraph::new(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(i + 5, (i + 2) % 5 + 5);
    }
    let Planarity::NonPlanar(w) = planarity_check(&g) else { panic!("Petersen is not planar") };
    // A cubic graph cannot contain a subdivided K5.
    assert_eq!(w.kind, KuratowskiKind::K33);
    assert!(verify_witness(&g, &w));
}

#[test]
fn cbc_scaffold_is_a_subdivided_k33() {
    let g = cbc_scaffold(3);
    let s = suppress_degree_two(&g);
    assert_eq!((s.graph.len(), s.graph.edges().len()), (6, 9));
    assert!(small_isomorphic(&s.graph, &k33()));
    let Planarity::NonPlanar(w) = planarity_check(&g) else { panic!("scaffold is not planar") };
    assert_eq!(w.kind, KuratowskiKind::K33);
    assert!(verify_witness(&g, &w));
}

#[test]
fn suppression_examples() {
    let path = UGraph::from_edges(3, &[(0, 1), (1, 2)]);
    let s = suppress_degree_two(&path);
    assert_eq!(s.graph.len(), 2);
    assert_eq!(s.graph.edges(), &[(0, 1)]);
    let k4 = UGraph::complete(4);
    assert_eq!(suppress_degree_two(&k4).graph, k4);
    // A digon hanging off a vertex would turn into a loop; it is kept.
    let digon = UGraph::from_edges(2, &[(0, 1), (0, 1)]);
    assert_eq!(suppress_degree_two(&digon).graph.len(), 2);
}

#[test]
fn corrupted_witness_is_rejected() {
    let g = UGraph::complete(5);
    let Planarity::NonPlanar(mut w) = planarity_check(&g) else { panic!() };
    w.paths.pop();
    assert!(!verify_witness(&g, &w));
}

fn small_graph() -> impl Strategy<Value = UGraph> {
    (2usize..10).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..(3 * n)).prop_map(move |es| UGraph::from_edges(n, &es))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn left_right_and_path_addition_agree(g in small_graph()) {
        let lr = planarity_check(&g);
        prop_assert_eq!(lr.is_planar(), is_planar_path_addition(&g));
        match lr {
            Planarity::Planar(c) => prop_assert!(euler_consistent(&g, &c.rotation)),
            Planarity::NonPlanar(w) => prop_assert!(verify_witness(&g, &w)),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spins_agree_with_colours_edge_by_edge(t in prop::sample::select(grid()), r in 3usize..6) {
        let b = construct(&t, r).unwrap();
        let e = embed(&b, &t).unwrap();
        for x in b.edges() {
            let reversing = e.colour_spin()[x.colour] == ColourSpin::Reversing;
            prop_assert_eq!(e.spin(x.u) != e.spin(x.v), reversing);
        }
    }

    #[test]
    fn planarity_oracles_agree_on_balls(t in prop::sample::select(grid()), r in 2usize..6) {
        let b = construct(&t, r).unwrap();
        prop_assume!(b.len() <= 500);
        let g = UGraph::from_ball(&b);
        prop_assert!(is_planar(&g));
        prop_assert!(is_planar_path_addition(&g));
    }

    #[test]
    fn translates_of_faces_are_faces(t in prop::sample::select(grid()), r in 4usize..7) {
        let b = construct(&t, r).unwrap();
        let e = embed(&b, &t).unwrap();
        prop_assert_eq!(check_consistency(&e).translation_failure, None);
    }
}
