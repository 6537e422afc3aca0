//! Text graph construction.
//!
//! Two builders: the parameterless context-aware graph, whose co-occurrence
//! unit is a pair of consecutive sentences, and a configurable sliding-window
//! builder covering the window-based construction schemes (window size,
//! source stream, overspan, direction, weighting).

use crate::candidates::CandidateSet;
use crate::textproc::Document;
use std::collections::{BTreeMap, BTreeSet, HashMap};

pub type NodeId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub source: NodeId,
    pub target: NodeId,
    pub weight: u32,
}

/// A simple graph over candidate terms. No self-loops, no parallel edges,
/// no isolated nodes; undirected edges are stored canonically with
/// `source < target`.
#[derive(Debug, Clone)]
pub struct TextGraph {
    directed: bool,
    weighted: bool,
    terms: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: Vec<Edge>,
    /// Undirected neighbor view (orientations merged), sorted by neighbor.
    adj: Vec<Vec<(NodeId, u32)>>,
}

impl TextGraph {
    fn from_edge_counts(
        directed: bool,
        weighted: bool,
        counts: BTreeMap<(String, String), u32>,
    ) -> TextGraph {
        let mut term_set: BTreeSet<&str> = BTreeSet::new();
        for (a, b) in counts.keys() {
            term_set.insert(a);
            term_set.insert(b);
        }
        let terms: Vec<String> = term_set.into_iter().map(str::to_string).collect();
        let index: HashMap<String, NodeId> = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as NodeId))
            .collect();
        let mut edges: Vec<Edge> = counts
            .into_iter()
            .map(|((a, b), w)| Edge {
                source: index[&a],
                target: index[&b],
                weight: if weighted { w } else { 1 },
            })
            .collect();
        edges.sort_by_key(|e| (e.source, e.target));
        let mut adj: Vec<BTreeMap<NodeId, u32>> = vec![BTreeMap::new(); terms.len()];
        for e in &edges {
            *adj[e.source as usize].entry(e.target).or_insert(0) += e.weight;
            *adj[e.target as usize].entry(e.source).or_insert(0) += e.weight;
        }
        let adj = adj
            .into_iter()
            .map(|m| m.into_iter().collect())
            .collect();
        TextGraph {
            directed,
            weighted,
            terms,
            index,
            edges,
            adj,
        }
    }

    /// Assemble from pre-indexed pairs: `universe` lists candidate terms in
    /// lexicographic order, `pairs` holds (a, b, weight) with a < b, sorted,
    /// weights positive. Terms without edges are dropped and ids compacted.
    fn from_sorted_id_pairs(
        directed: bool,
        weighted: bool,
        universe: &[&str],
        pairs: Vec<(u32, u32, u32)>,
    ) -> TextGraph {
        let mut used = vec![false; universe.len()];
        for &(a, b, _) in &pairs {
            used[a as usize] = true;
            used[b as usize] = true;
        }
        let mut remap = vec![u32::MAX; universe.len()];
        let mut terms = Vec::new();
        for (old, &is_used) in used.iter().enumerate() {
            if is_used {
                remap[old] = terms.len() as u32;
                terms.push(universe[old].to_string());
            }
        }
        let index: HashMap<String, NodeId> = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as NodeId))
            .collect();
        let edges: Vec<Edge> = pairs
            .into_iter()
            .map(|(a, b, w)| Edge {
                source: remap[a as usize],
                target: remap[b as usize],
                weight: if weighted { w } else { 1 },
            })
            .collect();
        // Edges are canonical (source < target) and sorted, so two ordered
        // passes fill each adjacency row already sorted: first the
        // smaller-id neighbors, then the larger ones.
        let mut degree = vec![0u32; terms.len()];
        for e in &edges {
            degree[e.source as usize] += 1;
            degree[e.target as usize] += 1;
        }
        let mut adj: Vec<Vec<(NodeId, u32)>> = degree
            .into_iter()
            .map(|d| Vec::with_capacity(d as usize))
            .collect();
        for e in &edges {
            adj[e.target as usize].push((e.source, e.weight));
        }
        for e in &edges {
            adj[e.source as usize].push((e.target, e.weight));
        }
        TextGraph {
            directed,
            weighted,
            terms,
            index,
            edges,
            adj,
        }
    }

    /// Build a graph directly from term edges. Self-loops are dropped;
    /// repeated pairs merge (weights sum when `weighted`). Undirected pairs
    /// are canonicalized.
    pub fn from_term_edges<'a, I>(directed: bool, weighted: bool, edges: I) -> TextGraph
    where
        I: IntoIterator<Item = (&'a str, &'a str, u32)>,
    {
        let mut counts: BTreeMap<(String, String), u32> = BTreeMap::new();
        for (a, b, w) in edges {
            if a == b {
                continue;
            }
            let key = if directed || a < b {
                (a.to_string(), b.to_string())
            } else {
                (b.to_string(), a.to_string())
            };
            let slot = counts.entry(key).or_insert(0);
            if weighted {
                *slot += w;
            } else {
                *slot = 1;
            }
        }
        TextGraph::from_edge_counts(directed, weighted, counts)
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn weighted(&self) -> bool {
        self.weighted
    }

    pub fn node_count(&self) -> usize {
        self.terms.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// A graph with no nodes. Short documents with aggressive filtering
    /// produce this legitimately; scorers return empty vectors for it.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, node: NodeId) -> &str {
        &self.terms[node as usize]
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn node(&self, term: &str) -> Option<NodeId> {
        self.index.get(term).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Undirected neighbor view: (neighbor, weight), sorted by neighbor id.
    pub fn neighbors(&self, node: NodeId) -> &[(NodeId, u32)] {
        &self.adj[node as usize]
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.adj[node as usize].len()
    }

    /// Sum of incident edge weights in the undirected view.
    pub fn strength(&self, node: NodeId) -> u64 {
        self.adj[node as usize].iter().map(|&(_, w)| w as u64).sum()
    }

    pub fn weight_between(&self, a: NodeId, b: NodeId) -> Option<u32> {
        let row = &self.adj[a as usize];
        row.binary_search_by_key(&b, |&(n, _)| n)
            .ok()
            .map(|i| row[i].1)
    }

    /// Deterministic edge list dump: `u<TAB>v<TAB>weight`, one per line,
    /// terms in stored order.
    pub fn dump_edges(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                self.terms[e.source as usize], self.terms[e.target as usize], e.weight
            ));
        }
        out
    }
}

/// Parameters of the sliding-window builder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowSpec {
    /// Window size in tokens, >= 2.
    pub size: usize,
    /// Slide over the original stream or the candidate-only stream.
    pub source: WindowSource,
    /// When false, windows never cross sentence boundaries or standalone
    /// punctuation.
    pub overspan: bool,
    pub directed: bool,
    pub weighted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowSource {
    Original,
    Processed,
}

impl WindowSpec {
    /// Window settings used by the PageRank-family extractors: size-4
    /// window over the original text, weighted, undirected, overspanning.
    pub fn textrank() -> WindowSpec {
        WindowSpec {
            size: 4,
            source: WindowSource::Original,
            overspan: true,
            directed: false,
            weighted: true,
        }
    }

    /// Degree-centrality extractor settings: size-2 window over processed
    /// text, directed, unweighted, stopped by punctuation.
    pub fn degext() -> WindowSpec {
        WindowSpec {
            size: 2,
            source: WindowSource::Processed,
            overspan: false,
            directed: true,
            weighted: false,
        }
    }

    /// Core-retention extractor settings: size-4 window over processed
    /// text, weighted, undirected, overspanning.
    pub fn graph_of_words() -> WindowSpec {
        WindowSpec {
            size: 4,
            source: WindowSource::Processed,
            overspan: true,
            directed: false,
            weighted: true,
        }
    }
}

/// Build the context-aware graph: each pair of consecutive sentences is a
/// pseudo-document; the Boolean term/pseudo-document incidence gives edge
/// weights as the number of pseudo-documents where both terms appear
/// (the off-diagonal of the term-term product). A single-sentence document
/// forms one pseudo-document.
///
/// Pair counts accumulate into an id-indexed matrix (dense up to 1024
/// candidate terms, hashed above that), which keeps the builder at one
/// array increment per pair per sentence slide.
pub fn build_cag(doc: &Document, cand: &CandidateSet) -> TextGraph {
    let terms: Vec<&str> = cand.iter().map(|occ| occ.term.as_str()).collect();
    let vocab = terms.len();
    let sentence_count = doc.sentence_count() as usize;
    // Candidate ids present per sentence, sorted and deduplicated.
    let mut by_sentence: Vec<Vec<u32>> = vec![Vec::new(); sentence_count];
    for (id, occ) in cand.iter().enumerate() {
        for &p in &occ.positions {
            let s = doc.tokens()[(p - 1) as usize].sentence_index as usize;
            by_sentence[s].push(id as u32);
        }
    }
    for members in &mut by_sentence {
        members.sort_unstable();
        members.dedup();
    }

    enum Acc {
        Dense(Vec<u32>),
        Sparse(HashMap<u64, u32>),
    }
    let mut acc = if vocab <= 1024 {
        Acc::Dense(vec![0u32; vocab * vocab])
    } else {
        Acc::Sparse(HashMap::new())
    };
    let bump = |members: &[u32], acc: &mut Acc| {
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                match acc {
                    Acc::Dense(m) => m[a as usize * vocab + b as usize] += 1,
                    Acc::Sparse(m) => {
                        *m.entry((a as u64) << 32 | b as u64).or_insert(0) += 1
                    }
                }
            }
        }
    };
    if sentence_count == 1 {
        bump(&by_sentence[0], &mut acc);
    } else {
        let mut union: Vec<u32> = Vec::new();
        for k in 0..sentence_count - 1 {
            union.clear();
            merge_sorted(&by_sentence[k], &by_sentence[k + 1], &mut union);
            bump(&union, &mut acc);
        }
    }
    let mut pairs: Vec<(u32, u32, u32)> = match acc {
        Acc::Dense(m) => {
            let mut out = Vec::new();
            for a in 0..vocab {
                let row = &m[a * vocab..(a + 1) * vocab];
                for (b, &w) in row.iter().enumerate().skip(a + 1) {
                    if w > 0 {
                        out.push((a as u32, b as u32, w));
                    }
                }
            }
            out
        }
        Acc::Sparse(m) => {
            let mut out: Vec<(u32, u32, u32)> = m
                .into_iter()
                .map(|(key, w)| ((key >> 32) as u32, key as u32, w))
                .collect();
            out.sort_unstable();
            out
        }
    };
    pairs.retain(|&(_, _, w)| w > 0);
    TextGraph::from_sorted_id_pairs(false, true, &terms, pairs)
}

fn merge_sorted(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// The candidate pseudo-document term sets of the context-aware builder,
/// in slide order. Exposed for structural checks on the construction.
pub fn cag_pseudo_documents(doc: &Document, cand: &CandidateSet) -> Vec<BTreeSet<String>> {
    let sentence_count = doc.sentence_count() as usize;
    let mut by_sentence: Vec<BTreeSet<String>> = vec![BTreeSet::new(); sentence_count];
    for occ in cand.iter() {
        for &p in &occ.positions {
            let s = doc.tokens()[(p - 1) as usize].sentence_index as usize;
            by_sentence[s].insert(occ.term.clone());
        }
    }
    if sentence_count == 1 {
        return by_sentence;
    }
    (0..sentence_count - 1)
        .map(|k| {
            by_sentence[k]
                .union(&by_sentence[k + 1])
                .cloned()
                .collect()
        })
        .collect()
}

/// Slide a token window over the document and link candidate pairs that
/// co-occur inside it. Each ordered position pair within the window counts
/// once toward the weight.
pub fn build_window_graph(doc: &Document, cand: &CandidateSet, spec: &WindowSpec) -> TextGraph {
    debug_assert!(spec.size >= 2);
    // Candidate term at each stream position.
    let mut term_at: HashMap<u32, &str> = HashMap::new();
    for occ in cand.iter() {
        for &p in &occ.positions {
            term_at.insert(p, occ.term.as_str());
        }
    }
    struct Item<'a> {
        term: Option<&'a str>,
        break_before: bool,
    }
    let items: Vec<Item> = match spec.source {
        WindowSource::Original => doc
            .tokens()
            .iter()
            .map(|t| Item {
                term: term_at.get(&t.position).copied(),
                break_before: t.break_before,
            })
            .collect(),
        WindowSource::Processed => {
            let mut items = Vec::new();
            let mut pending_break = false;
            for t in doc.tokens() {
                pending_break |= t.break_before;
                if let Some(&term) = term_at.get(&t.position) {
                    items.push(Item {
                        term: Some(term),
                        break_before: std::mem::take(&mut pending_break),
                    });
                } else {
                    // skipped token: its break carries to the next kept one
                }
            }
            items
        }
    };
    let mut counts: BTreeMap<(String, String), u32> = BTreeMap::new();
    for i in 0..items.len() {
        for j in (i + 1)..items.len().min(i + spec.size) {
            if !spec.overspan && items[j].break_before {
                break;
            }
            let (Some(a), Some(b)) = (items[i].term, items[j].term) else {
                continue;
            };
            if a == b {
                continue;
            }
            let key = if spec.directed || a < b {
                (a.to_string(), b.to_string())
            } else {
                (b.to_string(), a.to_string())
            };
            let slot = counts.entry(key).or_insert(0);
            if spec.weighted {
                *slot += 1;
            } else {
                *slot = 1;
            }
        }
    }
    TextGraph::from_edge_counts(spec.directed, spec.weighted, counts)
}

/// Topology summary of a graph. Clustering, path length, and density are
/// measured on the undirected simple view.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct GraphStats {
    pub nodes: usize,
    pub edges: usize,
    pub clustering: f64,
    pub avg_path_length: f64,
    pub density: f64,
    /// False when the graph has no pair of connected nodes.
    pub apl_defined: bool,
}

pub fn graph_stats(g: &TextGraph) -> GraphStats {
    let n = g.node_count();
    if n == 0 {
        return GraphStats {
            nodes: 0,
            edges: 0,
            clustering: 0.0,
            avg_path_length: 0.0,
            density: 0.0,
            apl_defined: false,
        };
    }
    // Global clustering: closed triples over connected triples.
    let neighbor_sets: Vec<BTreeSet<NodeId>> = (0..n)
        .map(|v| g.neighbors(v as NodeId).iter().map(|&(u, _)| u).collect())
        .collect();
    let mut closed = 0u64; // counts each triangle three times
    for v in 0..n {
        for &(u, _) in g.neighbors(v as NodeId) {
            if u as usize > v {
                closed += neighbor_sets[v]
                    .intersection(&neighbor_sets[u as usize])
                    .count() as u64;
            }
        }
    }
    let triples: u64 = (0..n)
        .map(|v| {
            let d = neighbor_sets[v].len() as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum();
    let clustering = if triples == 0 {
        0.0
    } else {
        3.0 * (closed as f64 / 3.0) / triples as f64
    };

    // Average path length over the largest connected component.
    let component = largest_component(g);
    let (apl, apl_defined) = if component.len() < 2 {
        (0.0, false)
    } else {
        let mut total = 0u64;
        let mut pairs = 0u64;
        for &start in &component {
            let dist = bfs_distances(g, start);
            for &v in &component {
                if v != start {
                    total += dist[v as usize] as u64;
                    pairs += 1;
                }
            }
        }
        (total as f64 / pairs as f64, true)
    };

    let undirected_edges: usize = neighbor_sets.iter().map(|s| s.len()).sum::<usize>() / 2;
    let density = if n < 2 {
        0.0
    } else {
        2.0 * undirected_edges as f64 / (n as f64 * (n as f64 - 1.0))
    };
    GraphStats {
        nodes: n,
        edges: g.edge_count(),
        clustering,
        avg_path_length: apl,
        density,
        apl_defined,
    }
}

fn largest_component(g: &TextGraph) -> Vec<NodeId> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut best: Vec<NodeId> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start as NodeId];
        let mut comp = Vec::new();
        seen[start] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &(u, _) in g.neighbors(v) {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    stack.push(u);
                }
            }
        }
        if comp.len() > best.len() {
            best = comp;
        }
    }
    best
}

fn bfs_distances(g: &TextGraph, start: NodeId) -> Vec<u32> {
    let n = g.node_count();
    let mut dist = vec![u32::MAX; n];
    dist[start as usize] = 0;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        for &(u, _) in g.neighbors(v) {
            if dist[u as usize] == u32::MAX {
                dist[u as usize] = dist[v as usize] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}
