//! Embedded corpus of published coordinate sets.
//!
//! The JSON files under `crates/core/corpus/` are generated once by
//! `tools/extract_corpus.py` and compiled into the crate.

mod data;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{parse_graph, Edge, Graph};

#[derive(Debug, Clone, Deserialize)]
struct IndexRecord {
    id: String,
    #[allow(dead_code)]
    file: String,
    caption: String,
    aliases: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: String,
    pub graph: Graph,
    /// Figure caption, including the deviation line printed beneath it.
    pub source: String,
    pub aliases: Vec<String>,
}

impl CorpusEntry {
    /// Length claims parsed from the caption text. Unlike
    /// [`Graph::claimed_deviations`] these are not filtered against the red
    /// set, so caption errors stay visible.
    pub fn caption_claims(&self) -> Vec<CaptionClaim> {
        parse_caption_claims(&self.source)
            .into_iter()
            .map(|(labels, value)| {
                let edge = match (self.graph.vertex_by_label(labels.0), self.graph.vertex_by_label(labels.1)) {
                    (Some(u), Some(v)) => {
                        let e = Edge::new(u, v);
                        self.graph.edges().binary_search(&e).is_ok().then_some(e)
                    }
                    _ => None,
                };
                CaptionClaim { labels, edge, value }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaptionClaim {
    /// 1-based vertex labels as printed.
    pub labels: (u32, u32),
    /// The graph edge joining those vertices, if there is one.
    pub edge: Option<Edge>,
    pub value: String,
}

/// Extracts `|Pa,Pb|=|Pc,Pd|≈value` groups from caption text.
pub fn parse_caption_claims(text: &str) -> Vec<((u32, u32), String)> {
    let mut out = Vec::new();
    for group in text.split(", ") {
        let Some((pairs, value)) = group.split_once('≈') else { continue };
        let value: String = value.chars().take_while(|c| c.is_ascii_digit() || *c == '.').collect();
        if value.is_empty() {
            continue;
        }
        let pairs = pairs.rsplit(": ").next().unwrap_or(pairs);
        for pair in pairs.split('=') {
            let inner = pair.trim().trim_matches('|');
            let Some((a, b)) = inner.split_once(',') else { continue };
            let num = |s: &str| s.trim().trim_start_matches('P').parse::<u32>().ok();
            if let (Some(a), Some(b)) = (num(a), num(b)) {
                out.push(((a, b), value.clone()));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub id: String,
    pub vertices: usize,
    pub red_edges: usize,
    pub symmetry: Option<String>,
    pub caption: String,
    pub aliases: Vec<String>,
}

fn entries() -> &'static [CorpusEntry] {
    static ENTRIES: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        let index: Vec<IndexRecord> = serde_json::from_str(data::INDEX).expect("corpus index is valid JSON");
        index
            .into_iter()
            .map(|rec| {
                let text = data::FILES
                    .iter()
                    .find(|(id, _)| *id == rec.id)
                    .map(|(_, text)| *text)
                    .expect("every indexed id has a file");
                let graph = parse_graph(text).unwrap_or_else(|e| panic!("corpus file {}: {e}", rec.id));
                CorpusEntry { id: rec.id, graph, source: rec.caption, aliases: rec.aliases }
            })
            .collect()
    })
}

/// All entries, ordered by `(vertex count, id)`.
pub fn all_entries() -> Vec<&'static CorpusEntry> {
    let mut list: Vec<&CorpusEntry> = entries().iter().collect();
    list.sort_by(|a, b| (a.graph.vertex_count(), &a.id).cmp(&(b.graph.vertex_count(), &b.id)));
    list
}

pub fn list_corpus() -> Vec<CorpusSummary> {
    all_entries()
        .into_iter()
        .map(|e| CorpusSummary {
            id: e.id.clone(),
            vertices: e.graph.vertex_count(),
            red_edges: e.graph.red_edges().len(),
            symmetry: e.graph.symmetry_label().map(str::to_owned),
            caption: e.source.clone(),
            aliases: e.aliases.clone(),
        })
        .collect()
}

/// Looks up an entry by id or alias.
pub fn get_entry(id: &str) -> Result<&'static CorpusEntry> {
    entries()
        .iter()
        .find(|e| e.id == id || e.aliases.iter().any(|a| a == id))
        .ok_or_else(|| Error::UnknownId(id.to_owned()))
}

pub fn get_graph(id: &str) -> Result<Graph> {
    get_entry(id).map(|e| e.graph.clone())
}

/// Raw file text of an entry, byte-identical to the stored asset.
pub fn get_document(id: &str) -> Result<&'static str> {
    let entry = get_entry(id)?;
    Ok(data::FILES.iter().find(|(fid, _)| *fid == entry.id).map(|(_, t)| *t).expect("indexed"))
}

/// True for the examples-section figures (50–62 vertices), as opposed to the
/// Harborth graph and the Epsilon graphs.
pub fn is_example_figure(id: &str) -> bool {
    id.starts_with("fig_")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caption_claim_parsing() {
        let c = parse_caption_claims("61 vertices, mirror symmetry: |P31,P60|≈0.8891556455, |P31,P61|=|P60,P61|≈1.0097449640");
        assert_eq!(
            c,
            vec![
                ((31, 60), "0.8891556455".to_owned()),
                ((31, 61), "1.0097449640".to_owned()),
                ((60, 61), "1.0097449640".to_owned()),
            ]
        );
        let typo = parse_caption_claims("51 vertices, asymmetric: |P43,38|≈1.0096420153");
        assert_eq!(typo, vec![((43, 38), "1.0096420153".to_owned())]);
        assert!(parse_caption_claims("27 vertices, red edges ≈0.845").is_empty());
    }

    #[test]
    fn lookup() {
        assert_eq!(get_graph("harborth_52").unwrap().vertex_count(), 52);
        let eps = get_graph("eps_27_left").unwrap();
        assert_eq!((eps.vertex_count(), eps.red_edges().len()), (27, 6));
        assert_eq!(get_graph("nope"), Err(Error::UnknownId("nope".into())));
        assert_eq!(get_entry("title_51").unwrap().id, "fig_51v_asym_a");
    }
}
