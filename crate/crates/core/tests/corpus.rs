use matchstick::corpus::{all_entries, get_document, get_entry, is_example_figure, list_corpus};
use matchstick::model::{edge_lengths, parse_graph, serialize_graph};
use matchstick::verifier::check_regular;
use matchstick::Edge;
use serde_json::Value;

/// Edge lengths computed straight from the stored JSON text, without the
/// model module.
fn raw_length(doc: &str, u: usize, v: usize) -> f64 {
    let value: Value = serde_json::from_str(doc).unwrap();
    let coord = |i: usize, k: usize| value["vertices"][i][k].as_str().unwrap().parse::<f64>().unwrap();
    (coord(u, 0) - coord(v, 0)).hypot(coord(u, 1) - coord(v, 1))
}

/// Half a unit in the last printed digit, but never tighter than 1e-9.
fn claim_tolerance(value: &str) -> f64 {
    let digits = value.split_once('.').map_or(0, |(_, f)| f.len()) as i32;
    (0.5 * 10f64.powi(-digits)).max(1e-9)
}

#[test]
fn serialization_is_byte_exact() {
    for e in all_entries() {
        let doc = get_document(&e.id).unwrap();
        assert_eq!(serialize_graph(&parse_graph(doc).unwrap()), doc, "{}", e.id);
    }
}

#[test]
fn inventory() {
    let list = list_corpus();
    assert_eq!(list.len(), 43);
    assert_eq!(list.iter().filter(|s| is_example_figure(&s.id)).count(), 38);
    let mut sizes: Vec<usize> = list.iter().filter(|s| is_example_figure(&s.id)).map(|s| s.vertices).collect();
    sizes.dedup();
    // the only figure captioned with 52 vertices actually has 51
    assert_eq!(sizes, (50..=62).filter(|&n| n != 52).collect::<Vec<_>>());
    assert_eq!(get_entry("title_51").unwrap().id, "fig_51v_asym_a");
    assert_eq!(get_document("title_51").unwrap(), get_document("fig_51v_asym_a").unwrap());
}

#[test]
fn four_regular_with_two_n_edges() {
    for e in all_entries() {
        let g = &e.graph;
        assert!(check_regular(g, 4).ok, "{}", e.id);
        assert_eq!(g.edges().len(), 2 * g.vertex_count(), "{}", e.id);
        if is_example_figure(&e.id) {
            assert!((2..=4).contains(&g.red_edges().len()), "{}", e.id);
        }
    }
}

#[test]
fn lengths_agree_with_raw_oracle() {
    for e in all_entries() {
        let doc = get_document(&e.id).unwrap();
        for l in edge_lengths(&e.graph) {
            assert_eq!(l.length, raw_length(doc, l.edge.0, l.edge.1), "{} {}", e.id, l.edge);
        }
    }
}

#[test]
fn fifty_vertex_caption_values() {
    let doc = get_document("fig_50v_asym").unwrap();
    for ((u, v), want) in [((45, 15), 1.0797549592), ((47, 49), 1.2721354299), ((48, 49), 1.2440648255)] {
        assert!((raw_length(doc, u, v) - want).abs() <= 1e-9);
    }
    let eps = get_entry("eps_27_left").unwrap();
    for &e in eps.graph.red_edges() {
        assert!((eps.graph.edge_length(e) - 0.845).abs() <= 5e-4);
    }
}

#[test]
fn caption_claims_reproduce_except_known_defects() {
    let mut failures = Vec::new();
    for e in all_entries() {
        for claim in e.caption_claims() {
            let ok = claim
                .edge
                .is_some_and(|edge| (e.graph.edge_length(edge) - claim.value.parse::<f64>().unwrap()).abs() <= claim_tolerance(&claim.value));
            if !ok {
                failures.push((e.id.as_str(), claim.labels));
            }
        }
    }
    failures.dedup_by_key(|f| f.0);
    let ids: Vec<&str> = failures.iter().map(|f| f.0).collect();
    assert_eq!(ids, vec!["eps_42", "fig_51v_asym_b"]);
}

#[test]
fn claimed_deviations_match_red_lengths() {
    // eps_42's caption values disagree with its coordinates
    for e in all_entries().into_iter().filter(|e| e.id != "eps_42") {
        for c in e.graph.claimed_deviations() {
            assert!(e.graph.is_red(c.edge));
            assert!((e.graph.edge_length(c.edge) - c.value()).abs() <= claim_tolerance(&c.length), "{} {}", e.id, c.edge);
        }
    }
}

#[test]
fn gray_edges_are_unit() {
    let mut off = Vec::new();
    for e in all_entries() {
        let worst = edge_lengths(&e.graph)
            .into_iter()
            .filter(|l| !e.graph.is_red(l.edge))
            .map(|l| l.deviation.abs())
            .fold(0.0, f64::max);
        if worst > 5e-10 {
            off.push((e.id.as_str(), worst));
        }
    }
    assert_eq!(off.len(), 1, "{off:?}");
    assert_eq!(off[0].0, "eps_42_limit");
    assert!((off[0].1 - 2.49e-5).abs() < 1e-6);
}

#[test]
fn labelled_figure_resolves_paper_numbers() {
    let e = get_entry("fig_51v_asym_d").unwrap();
    assert_eq!(e.graph.vertex_count(), 51);
    assert!(e.source.starts_with("52 vertices"));
    for c in e.caption_claims() {
        let edge = c.edge.expect("caption edge exists");
        assert!(e.graph.is_red(edge));
        assert_eq!(Edge::new(e.graph.vertex_by_label(c.labels.0).unwrap(), e.graph.vertex_by_label(c.labels.1).unwrap()), edge);
    }
}
