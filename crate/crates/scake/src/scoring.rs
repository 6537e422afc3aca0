//! Word scorers.
//!
//! The native scorer multiplies four per-node factors: truss level, semantic
//! strength (weight-scaled neighbor levels), semantic connectivity (distinct
//! neighbor levels over the graph's maximum), and positional weight (sum of
//! reciprocal occurrence positions). The baseline scorers are weighted
//! PageRank, its teleport-biased variant, unweighted degree centrality, and
//! top-core retention.

use crate::candidates::TermOccurrences;
use crate::decompose::{CoreDecomposition, TrussDecomposition};
use crate::error::{Error, Result};
use crate::graph::{NodeId, TextGraph};
use crate::textproc::Document;
use std::collections::BTreeMap;
use std::collections::HashMap;

/// Scores for every node of a graph, keyed by term.
#[derive(Debug, Clone)]
pub struct ScoreVector {
    pub method: String,
    pub scores: BTreeMap<String, f64>,
    pub params: BTreeMap<String, String>,
}

impl ScoreVector {
    fn new(method: &str) -> ScoreVector {
        ScoreVector {
            method: method.to_string(),
            scores: BTreeMap::new(),
            params: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn get(&self, term: &str) -> Option<f64> {
        self.scores.get(term).copied()
    }

    /// `term<TAB>score` descending, fixed 6-decimal formatting.
    pub fn dump(&self, doc: &Document) -> String {
        let ranked = rank(self, doc, self.scores.len().max(1));
        let mut out = String::new();
        for (term, score) in ranked.iter() {
            out.push_str(&format!("{term}\t{score:.6}\n"));
        }
        out
    }
}

/// Ranked terms, descending score; ties break toward the earlier first
/// occurrence, then lexicographic order.
#[derive(Debug, Clone)]
pub struct RankedKeywords {
    items: Vec<(String, f64)>,
}

impl RankedKeywords {
    pub fn iter(&self) -> impl Iterator<Item = &(String, f64)> {
        self.items.iter()
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.items.iter().map(|(t, _)| t.as_str())
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// Sum of reciprocal 1-based stream positions of a term's occurrences.
/// Earlier and more frequent occurrences both raise the weight.
pub fn positional_weight(occ: &TermOccurrences) -> f64 {
    occ.positions.iter().map(|&p| 1.0 / p as f64).sum()
}

/// Weighted sum of neighbor truss levels.
pub fn semantic_strength(g: &TextGraph, td: &TrussDecomposition, v: NodeId) -> f64 {
    g.neighbors(v)
        .iter()
        .map(|&(u, w)| w as f64 * td.node_level(u) as f64)
        .sum()
}

/// Count of distinct neighbor truss levels over the graph's maximum level.
pub fn semantic_connectivity(g: &TextGraph, td: &TrussDecomposition, v: NodeId) -> f64 {
    let distinct: std::collections::BTreeSet<u32> = g
        .neighbors(v)
        .iter()
        .map(|&(u, _)| td.node_level(u))
        .collect();
    distinct.len() as f64 / td.maxtruss() as f64
}

/// Multiplicative combination of truss level, semantic strength, semantic
/// connectivity, and positional weight.
pub fn scscore(
    g: &TextGraph,
    td: &TrussDecomposition,
    weights: &BTreeMap<String, f64>,
) -> ScoreVector {
    let mut sv = ScoreVector::new("scscore");
    for v in 0..g.node_count() as NodeId {
        let term = g.term(v);
        let lambda = td.node_level(v) as f64;
        let chi = semantic_strength(g, td, v);
        let sc = semantic_connectivity(g, td, v);
        let omega = weights.get(term).copied().unwrap_or(0.0);
        sv.scores.insert(term.to_string(), lambda * chi * sc * omega);
    }
    sv
}

fn validate_pagerank_params(d: f64, tol: f64, max_iter: usize) -> Result<()> {
    if !d.is_finite() || d <= 0.0 || d >= 1.0 {
        return Err(Error::InvalidConfig(format!(
            "damping factor must be in (0, 1), got {d}"
        )));
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if max_iter == 0 {
        return Err(Error::InvalidConfig("max_iter must be >= 1".to_string()));
    }
    Ok(())
}

/// Power iteration with weight-proportional transitions on the undirected
/// view. Scores sum to 1 within the convergence tolerance. An empty graph
/// yields an empty vector.
pub fn pagerank(g: &TextGraph, d: f64, tol: f64, max_iter: usize) -> Result<ScoreVector> {
    validate_pagerank_params(d, tol, max_iter)?;
    let n = g.node_count();
    let mut sv = ScoreVector::new("pagerank");
    sv.params.insert("d".into(), format!("{d}"));
    sv.params.insert("tol".into(), format!("{tol}"));
    if n == 0 {
        return Ok(sv);
    }
    let uniform = vec![1.0 / n as f64; n];
    let scores = power_iterate(g, d, tol, max_iter, &uniform);
    for (v, score) in scores.into_iter().enumerate() {
        sv.scores.insert(g.term(v as NodeId).to_string(), score);
    }
    Ok(sv)
}

/// PageRank with a non-uniform restart distribution. The teleport map is
/// keyed by term; missing terms restart with zero probability. Values are
/// normalized to sum 1.
pub fn biased_pagerank(
    g: &TextGraph,
    teleport: &BTreeMap<String, f64>,
    d: f64,
    tol: f64,
    max_iter: usize,
) -> Result<ScoreVector> {
    validate_pagerank_params(d, tol, max_iter)?;
    let n = g.node_count();
    let mut sv = ScoreVector::new("biased_pagerank");
    sv.params.insert("d".into(), format!("{d}"));
    sv.params.insert("tol".into(), format!("{tol}"));
    if n == 0 {
        return Ok(sv);
    }
    let mut t: Vec<f64> = (0..n)
        .map(|v| teleport.get(g.term(v as NodeId)).copied().unwrap_or(0.0))
        .collect();
    if t.iter().any(|&x| x < 0.0 || !x.is_finite()) {
        return Err(Error::InvalidTeleport);
    }
    let sum: f64 = t.iter().sum();
    if sum <= 0.0 {
        return Err(Error::InvalidTeleport);
    }
    for x in &mut t {
        *x /= sum;
    }
    let scores = power_iterate(g, d, tol, max_iter, &t);
    for (v, score) in scores.into_iter().enumerate() {
        sv.scores.insert(g.term(v as NodeId).to_string(), score);
    }
    Ok(sv)
}

/// Shared power iteration: p'(v) = (1-d) t(v) + d * sum over neighbors u of
/// w_uv / strength(u) * p(u). Stops when the L1 change drops below `tol`.
fn power_iterate(g: &TextGraph, d: f64, tol: f64, max_iter: usize, teleport: &[f64]) -> Vec<f64> {
    let n = g.node_count();
    let strengths: Vec<f64> = (0..n).map(|v| g.strength(v as NodeId) as f64).collect();
    let mut p = teleport.to_vec();
    let mut next = vec![0.0f64; n];
    for _ in 0..max_iter {
        for v in 0..n {
            let mut acc = 0.0;
            for &(u, w) in g.neighbors(v as NodeId) {
                acc += w as f64 / strengths[u as usize] * p[u as usize];
            }
            next[v] = (1.0 - d) * teleport[v] + d * acc;
        }
        let delta: f64 = p
            .iter()
            .zip(next.iter())
            .map(|(a, b)| (a - b).abs())
            .sum();
        std::mem::swap(&mut p, &mut next);
        if delta < tol {
            break;
        }
    }
    p
}

/// Unweighted degree centrality: edge-endpoint counts; in-degree plus
/// out-degree for directed graphs.
pub fn degree_score(g: &TextGraph) -> ScoreVector {
    let mut deg = vec![0u32; g.node_count()];
    for e in g.edges() {
        deg[e.source as usize] += 1;
        deg[e.target as usize] += 1;
    }
    let mut sv = ScoreVector::new("degree");
    for (v, d) in deg.into_iter().enumerate() {
        sv.scores.insert(g.term(v as NodeId).to_string(), d as f64);
    }
    sv
}

/// All nodes whose weighted core number equals the maximum. Output size is
/// structure-determined, not capped by k.
pub fn kcore_retain(g: &TextGraph, cd: &CoreDecomposition) -> Vec<String> {
    let max = cd.max_core();
    (0..g.node_count() as NodeId)
        .filter(|&v| cd.core_number(v) == max)
        .map(|v| g.term(v).to_string())
        .collect()
}

/// Top-k by score, ties toward earlier first occurrence then lexicographic.
/// Returns min(k, node count) items.
pub fn rank(sv: &ScoreVector, doc: &Document, k: usize) -> RankedKeywords {
    let mut first_position: HashMap<&str, u32> = HashMap::new();
    for token in doc.tokens() {
        first_position.entry(&token.stem).or_insert(token.position);
    }
    let mut items: Vec<(String, f64)> = sv
        .scores
        .iter()
        .map(|(t, &s)| (t.clone(), s))
        .collect();
    items.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| {
                let pa = first_position.get(a.0.as_str()).copied().unwrap_or(u32::MAX);
                let pb = first_position.get(b.0.as_str()).copied().unwrap_or(u32::MAX);
                pa.cmp(&pb)
            })
            .then_with(|| a.0.cmp(&b.0))
    });
    items.truncate(k);
    RankedKeywords { items }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{truss_decompose, weighted_core_decompose};
    use crate::graph::TextGraph;
    use crate::textproc::{build_document, StopwordList};

    fn occ(positions: &[u32]) -> TermOccurrences {
        TermOccurrences {
            term: "t".into(),
            positions: positions.to_vec(),
        }
    }

    #[test]
    fn positional_weight_examples() {
        assert_eq!(positional_weight(&occ(&[1])), 1.0);
        assert!((positional_weight(&occ(&[1, 4])) - 1.25).abs() < 1e-12);
        assert!(positional_weight(&occ(&[2, 4])) > positional_weight(&occ(&[90, 99])));
    }

    #[test]
    fn semantic_strength_is_weighted_neighbor_levels() {
        // hub-a weight 2, hub-b weight 1; a,b,hub in one triangle with c?
        // Use a graph where levels are known: triangle a-b-hub (levels 3)
        // plus pendant p-hub (level 2).
        let g = TextGraph::from_term_edges(
            false,
            true,
            [
                ("hub", "a", 2),
                ("hub", "b", 1),
                ("a", "b", 1),
                ("hub", "p", 1),
            ],
        );
        let td = truss_decompose(&g).unwrap();
        let hub = g.node("hub").unwrap();
        // neighbors: a (w=2, lambda=3), b (w=1, lambda=3), p (w=1, lambda=2)
        let chi = semantic_strength(&g, &td, hub);
        assert!((chi - (2.0 * 3.0 + 1.0 * 3.0 + 1.0 * 2.0)).abs() < 1e-12);
    }

    #[test]
    fn triangle_free_strength_is_twice_degree_for_unit_weights() {
        let g = TextGraph::from_term_edges(
            false,
            true,
            [("a", "b", 1), ("a", "c", 1), ("a", "d", 1)],
        );
        let td = truss_decompose(&g).unwrap();
        let a = g.node("a").unwrap();
        assert!((semantic_strength(&g, &td, a) - 2.0 * 3.0).abs() < 1e-12);
    }

    #[test]
    fn semantic_connectivity_counts_distinct_levels() {
        // Graph: K4 over a,b,c,d (levels 4) and pendant p on a (level 2).
        let g = TextGraph::from_term_edges(
            false,
            true,
            [
                ("a", "b", 1),
                ("a", "c", 1),
                ("a", "d", 1),
                ("b", "c", 1),
                ("b", "d", 1),
                ("c", "d", 1),
                ("a", "p", 1),
            ],
        );
        let td = truss_decompose(&g).unwrap();
        assert_eq!(td.maxtruss(), 4);
        let a = g.node("a").unwrap();
        // a's neighbors: b,c,d at level 4 and p at level 2 -> 2 distinct / 4
        assert!((semantic_connectivity(&g, &td, a) - 0.5).abs() < 1e-12);
        let b = g.node("b").unwrap();
        // b's neighbors: a,c,d all level 4 -> 1 distinct / 4
        assert!((semantic_connectivity(&g, &td, b) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn triangle_free_connectivity_is_half() {
        let g = TextGraph::from_term_edges(false, true, [("a", "b", 1), ("b", "c", 1)]);
        let td = truss_decompose(&g).unwrap();
        for v in 0..g.node_count() as u32 {
            assert!((semantic_connectivity(&g, &td, v) - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn scscore_is_the_product_of_factors() {
        let g = TextGraph::from_term_edges(
            false,
            true,
            [
                ("hub", "a", 2),
                ("hub", "b", 1),
                ("a", "b", 1),
                ("hub", "p", 1),
            ],
        );
        let td = truss_decompose(&g).unwrap();
        let mut omega = BTreeMap::new();
        for term in ["hub", "a", "b", "p"] {
            omega.insert(term.to_string(), 1.25);
        }
        let sv = scscore(&g, &td, &omega);
        let hub = g.node("hub").unwrap();
        let expect = td.node_level(hub) as f64
            * semantic_strength(&g, &td, hub)
            * semantic_connectivity(&g, &td, hub)
            * 1.25;
        assert!((sv.get("hub").unwrap() - expect).abs() < 1e-12);
        // every connected node with an occurrence scores positive
        assert!(sv.scores.values().all(|&s| s > 0.0));
    }

    /// Exact fixed point by Gaussian elimination on (I - dP) x = (1-d) t.
    fn pagerank_oracle(g: &TextGraph, d: f64, teleport: &[f64]) -> Vec<f64> {
        let n = g.node_count();
        let mut a = vec![vec![0.0f64; n + 1]; n];
        for v in 0..n {
            a[v][v] = 1.0;
            for &(u, w) in g.neighbors(v as u32) {
                a[v][u as usize] -= d * w as f64 / g.strength(u) as f64;
            }
            a[v][n] = (1.0 - d) * teleport[v];
        }
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
                .unwrap();
            a.swap(col, pivot);
            let div = a[col][col];
            for x in a[col].iter_mut() {
                *x /= div;
            }
            for row in 0..n {
                if row != col && a[row][col].abs() > 0.0 {
                    let factor = a[row][col];
                    for x in 0..=n {
                        a[row][x] -= factor * a[col][x];
                    }
                }
            }
        }
        (0..n).map(|v| a[v][n]).collect()
    }

    #[test]
    fn pagerank_two_nodes_splits_evenly() {
        let g = TextGraph::from_term_edges(false, true, [("a", "b", 3)]);
        for d in [0.5, 0.85, 0.95] {
            let sv = pagerank(&g, d, 1e-10, 500).unwrap();
            assert!((sv.get("a").unwrap() - 0.5).abs() < 1e-8);
            assert!((sv.get("b").unwrap() - 0.5).abs() < 1e-8);
        }
    }

    #[test]
    fn pagerank_star_matches_linear_solve() {
        let g = TextGraph::from_term_edges(
            false,
            true,
            [("hub", "a", 1), ("hub", "b", 1), ("hub", "c", 1)],
        );
        let sv = pagerank(&g, 0.85, 1e-12, 1000).unwrap();
        let uniform = vec![0.25; 4];
        let exact = pagerank_oracle(&g, 0.85, &uniform);
        for v in 0..4u32 {
            let got = sv.get(g.term(v)).unwrap();
            assert!((got - exact[v as usize]).abs() < 1e-8, "node {v}");
        }
        let hub = sv.get("hub").unwrap();
        assert!(hub > sv.get("a").unwrap());
        let total: f64 = sv.scores.values().sum();
        assert!((total - 1.0).abs() < 1e-8);
    }

    #[test]
    fn pagerank_empty_graph_is_empty_vector() {
        let g = TextGraph::from_term_edges(false, true, std::iter::empty());
        let sv = pagerank(&g, 0.85, 1e-6, 100).unwrap();
        assert!(sv.is_empty());
    }

    #[test]
    fn pagerank_rejects_bad_damping() {
        let g = TextGraph::from_term_edges(false, true, [("a", "b", 1)]);
        assert!(pagerank(&g, 0.0, 1e-6, 100).is_err());
        assert!(pagerank(&g, 1.0, 1e-6, 100).is_err());
    }

    #[test]
    fn biased_two_nodes_matches_closed_form() {
        let g = TextGraph::from_term_edges(false, true, [("a", "b", 1)]);
        let mut t = BTreeMap::new();
        t.insert("a".to_string(), 1.0);
        t.insert("b".to_string(), 0.0);
        let sv = biased_pagerank(&g, &t, 0.85, 1e-12, 1000).unwrap();
        let exact = pagerank_oracle(&g, 0.85, &[1.0, 0.0]);
        assert!((sv.get("a").unwrap() - exact[0]).abs() < 1e-9);
        assert!((sv.get("b").unwrap() - exact[1]).abs() < 1e-9);
        assert!(sv.get("a").unwrap() > sv.get("b").unwrap());
        // hand value: x_a = 0.15 / (1 - 0.85^2)
        assert!((sv.get("a").unwrap() - 0.15 / (1.0 - 0.7225)).abs() < 1e-9);
    }

    #[test]
    fn biased_uniform_teleport_reduces_to_pagerank() {
        let g = TextGraph::from_term_edges(
            false,
            true,
            [
                ("a", "b", 2),
                ("b", "c", 1),
                ("c", "a", 3),
                ("c", "d", 1),
            ],
        );
        let tol = 1e-9;
        let plain = pagerank(&g, 0.9, tol, 2000).unwrap();
        let uniform: BTreeMap<String, f64> =
            g.terms().iter().map(|t| (t.clone(), 1.0)).collect();
        let biased = biased_pagerank(&g, &uniform, 0.9, tol, 2000).unwrap();
        for (term, score) in &plain.scores {
            assert!((score - biased.get(term).unwrap()).abs() < 2.0 * tol);
        }
    }

    #[test]
    fn biased_rejects_zero_teleport() {
        let g = TextGraph::from_term_edges(false, true, [("a", "b", 1)]);
        let zeros: BTreeMap<String, f64> =
            [("a", 0.0), ("b", 0.0)].iter().map(|(k, v)| (k.to_string(), *v)).collect();
        assert!(matches!(
            biased_pagerank(&g, &zeros, 0.85, 1e-6, 100),
            Err(Error::InvalidTeleport)
        ));
    }

    #[test]
    fn degree_scores() {
        let g = TextGraph::from_term_edges(
            false,
            true,
            [("a", "b", 9), ("b", "c", 9), ("a", "c", 9)],
        );
        let sv = degree_score(&g);
        assert!(sv.scores.values().all(|&d| d == 2.0));
        let star = TextGraph::from_term_edges(
            false,
            true,
            [("hub", "a", 1), ("hub", "b", 1), ("hub", "c", 1), ("hub", "d", 1)],
        );
        let sv = degree_score(&star);
        assert_eq!(sv.get("hub").unwrap(), 4.0);
        assert_eq!(sv.get("a").unwrap(), 1.0);
    }

    #[test]
    fn degree_counts_both_directions() {
        let g = TextGraph::from_term_edges(true, false, [("a", "b", 1), ("b", "a", 1)]);
        let sv = degree_score(&g);
        assert_eq!(sv.get("a").unwrap(), 2.0);
        assert_eq!(sv.get("b").unwrap(), 2.0);
    }

    #[test]
    fn kcore_retains_top_core_only() {
        let g = TextGraph::from_term_edges(
            false,
            true,
            [("a", "b", 1), ("b", "c", 1), ("a", "c", 1), ("c", "p", 1)],
        );
        let cd = weighted_core_decompose(&g).unwrap();
        let kept = kcore_retain(&g, &cd);
        assert_eq!(kept, vec!["a", "b", "c"]);
        // uniform clique keeps everything
        let clique = TextGraph::from_term_edges(
            false,
            true,
            [("x", "y", 1), ("y", "z", 1), ("x", "z", 1)],
        );
        let cd = weighted_core_decompose(&clique).unwrap();
        assert_eq!(kcore_retain(&clique, &cd).len(), 3);
    }

    #[test]
    fn rank_orders_and_truncates() {
        let stop = StopwordList::empty();
        let doc = build_document("beta alpha gamma delta beta.", &stop, false).unwrap();
        let mut sv = ScoreVector::new("test");
        sv.scores.insert("alpha".into(), 2.0);
        sv.scores.insert("beta".into(), 1.0);
        let top = rank(&sv, &doc, 1);
        assert_eq!(top.terms().collect::<Vec<_>>(), vec!["alpha"]);
        let all = rank(&sv, &doc, 10);
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn rank_breaks_ties_by_first_occurrence_then_name() {
        let stop = StopwordList::empty();
        // "delta" first occurs at position 1, "alpha" at 2, "zeta" at 3.
        let doc = build_document("delta alpha zeta.", &stop, false).unwrap();
        let mut sv = ScoreVector::new("test");
        sv.scores.insert("alpha".into(), 1.0);
        sv.scores.insert("delta".into(), 1.0);
        sv.scores.insert("zeta".into(), 1.0);
        let ranked = rank(&sv, &doc, 3);
        assert_eq!(
            ranked.terms().collect::<Vec<_>>(),
            vec!["delta", "alpha", "zeta"]
        );
    }

    #[test]
    fn scscore_ranking_invariant_under_weight_rescaling() {
        let g = TextGraph::from_term_edges(
            false,
            true,
            [
                ("a", "b", 1),
                ("b", "c", 2),
                ("a", "c", 1),
                ("c", "d", 3),
                ("d", "e", 1),
                ("c", "e", 2),
            ],
        );
        let scaled = TextGraph::from_term_edges(
            false,
            true,
            [
                ("a", "b", 5),
                ("b", "c", 10),
                ("a", "c", 5),
                ("c", "d", 15),
                ("d", "e", 5),
                ("c", "e", 10),
            ],
        );
        let stop = StopwordList::empty();
        let doc = build_document("a b c d e.", &stop, false).unwrap();
        let omega: BTreeMap<String, f64> = g
            .terms()
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), 1.0 / (i + 1) as f64))
            .collect();
        let td1 = truss_decompose(&g).unwrap();
        let td2 = truss_decompose(&scaled).unwrap();
        let r1 = rank(&scscore(&g, &td1, &omega), &doc, 5);
        let r2 = rank(&scscore(&scaled, &td2, &omega), &doc, 5);
        assert_eq!(
            r1.terms().collect::<Vec<_>>(),
            r2.terms().collect::<Vec<_>>()
        );
    }

    #[test]
    fn adding_an_occurrence_raises_omega_and_scscore() {
        let before = positional_weight(&occ(&[4, 9]));
        let after = positional_weight(&occ(&[4, 9, 50]));
        assert!(after > before);
    }
}
