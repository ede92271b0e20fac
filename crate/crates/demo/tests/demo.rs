use planar_pls_demo::{embed, embed_view, preset_text, prove_and_verify, round_view, unfold_arcs, unfold_view};

#[test]
fn embed_reports_faces_and_positions() {
    let text = preset_text("grid", 9, 0).unwrap();
    let v = embed_view(&text).unwrap();
    assert!(v.planar);
    assert_eq!(v.positions.len(), 9);
    // 9 - 12 + f = 2.
    assert_eq!(v.faces.len(), 5);
    assert!(v.positions.iter().all(|&(x, y)| (0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y)));
}

#[test]
fn embed_reports_witness() {
    let v = embed_view(&preset_text("k33", 0, 0).unwrap()).unwrap();
    assert!(!v.planar);
    let (kind, edges) = v.witness.unwrap();
    assert_eq!(kind, "K33-subdivision");
    assert_eq!(edges.len(), 9);
}

#[test]
fn honest_round_accepts_and_tampering_rejects() {
    let text = preset_text("wheel", 10, 0).unwrap();
    assert!(round_view(&text, None, "").unwrap().accept);
    for field in ["dist", "parent", "n", "index", "pop"] {
        let r = round_view(&text, Some(1), field);
        match r {
            Ok(r) => assert!(!r.accept, "{field}"),
            Err(e) => assert!(e.contains("no edge certificate"), "{field}: {e}"),
        }
    }
}

#[test]
fn unfolding_has_2n_minus_1_indices() {
    let text = preset_text("rmp", 20, 4).unwrap();
    let u = unfold_view(&text, 5).unwrap();
    assert_eq!(u.tour.len(), 39);
    assert_eq!(u.tour[0], 5);
    assert_eq!(u.tree_edges.len(), 19);
    // 3n - 6 edges, n - 1 of them in the tree.
    assert_eq!(u.arcs.len(), 3 * 20 - 6 - 19);
    assert!(u.arcs.iter().all(|&(i, j)| u.tour[i as usize - 1] != u.tour[j as usize - 1]));
}

#[test]
fn json_wrappers_report_errors_inline() {
    assert!(embed("not a graph").contains("\"error\""));
    assert!(prove_and_verify(&preset_text("k5", 0, 0).unwrap(), 0, "").contains("\"error\""));
    assert!(unfold_arcs(&preset_text("tree", 8, 1).unwrap(), 99).contains("\"error\""));
    let ok: serde_json::Value = serde_json::from_str(&prove_and_verify(&preset_text("tree", 8, 1).unwrap(), 0, "")).unwrap();
    assert_eq!(ok["accept"], true);
}
