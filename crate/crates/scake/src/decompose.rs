//! Hierarchical graph decomposition: truss levels over edges and nodes, and
//! the weighted core numbers used by the core-retention baseline.

use crate::error::{Error, Result};
use crate::graph::{NodeId, TextGraph};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

/// Per-edge and per-node truss levels. Edge levels are parallel to
/// `TextGraph::edges()`; node levels are indexed by node id.
#[derive(Debug, Clone)]
pub struct TrussDecomposition {
    edge_levels: Vec<u32>,
    node_levels: Vec<u32>,
    maxtruss: u32,
}

impl TrussDecomposition {
    pub fn edge_levels(&self) -> &[u32] {
        &self.edge_levels
    }

    pub fn node_level(&self, node: NodeId) -> u32 {
        self.node_levels[node as usize]
    }

    pub fn node_levels(&self) -> &[u32] {
        &self.node_levels
    }

    /// Highest truss level in the graph; 0 for an empty graph.
    pub fn maxtruss(&self) -> u32 {
        self.maxtruss
    }

    /// `node<TAB>level` followed by `u<TAB>v<TAB>level`, deterministic order.
    pub fn dump(&self, g: &TextGraph) -> String {
        let mut out = String::new();
        for (v, level) in self.node_levels.iter().enumerate() {
            out.push_str(&format!("{}\t{}\n", g.term(v as NodeId), level));
        }
        for (e, level) in g.edges().iter().zip(&self.edge_levels) {
            out.push_str(&format!(
                "{}\t{}\t{}\n",
                g.term(e.source),
                g.term(e.target),
                level
            ));
        }
        out
    }
}

/// Peel edges in order of triangle support. An edge removed at support `s`
/// gets level `max(current level, s + 2)`; the level sequence is monotone
/// non-decreasing, which makes the assignment equal to the largest `k` for
/// which the edge survives in the k-truss.
pub fn truss_decompose(g: &TextGraph) -> Result<TrussDecomposition> {
    if g.directed() {
        return Err(Error::UnsupportedGraph(
            "truss decomposition requires an undirected graph",
        ));
    }
    let n = g.node_count();
    let m = g.edge_count();
    let mut edge_id: HashMap<(NodeId, NodeId), usize> = HashMap::with_capacity(m);
    for (i, e) in g.edges().iter().enumerate() {
        edge_id.insert((e.source, e.target), i);
    }
    let id_of = |a: NodeId, b: NodeId, map: &HashMap<(NodeId, NodeId), usize>| {
        if a < b {
            map[&(a, b)]
        } else {
            map[&(b, a)]
        }
    };
    let mut adj: Vec<HashSet<NodeId>> = vec![HashSet::new(); n];
    for e in g.edges() {
        adj[e.source as usize].insert(e.target);
        adj[e.target as usize].insert(e.source);
    }
    let mut support = vec![0i64; m];
    for (i, e) in g.edges().iter().enumerate() {
        let (small, large) = if adj[e.source as usize].len() <= adj[e.target as usize].len() {
            (e.source, e.target)
        } else {
            (e.target, e.source)
        };
        support[i] = adj[small as usize]
            .iter()
            .filter(|w| adj[large as usize].contains(w))
            .count() as i64;
    }
    let mut heap: BinaryHeap<Reverse<(i64, usize)>> = (0..m)
        .map(|i| Reverse((support[i], i)))
        .collect();
    let mut alive = vec![true; m];
    let mut edge_levels = vec![2u32; m];
    let mut level = 2i64;
    while let Some(Reverse((s, e))) = heap.pop() {
        if !alive[e] || s != support[e] {
            continue;
        }
        alive[e] = false;
        level = level.max(s + 2);
        edge_levels[e] = level as u32;
        let (u, v) = {
            let edge = g.edges()[e];
            (edge.source, edge.target)
        };
        adj[u as usize].remove(&v);
        adj[v as usize].remove(&u);
        let (small, large) = if adj[u as usize].len() <= adj[v as usize].len() {
            (u, v)
        } else {
            (v, u)
        };
        let common: Vec<NodeId> = adj[small as usize]
            .iter()
            .filter(|w| adj[large as usize].contains(w))
            .copied()
            .collect();
        for w in common {
            for f in [id_of(u, w, &edge_id), id_of(v, w, &edge_id)] {
                if alive[f] {
                    support[f] -= 1;
                    heap.push(Reverse((support[f], f)));
                }
            }
        }
    }
    let node_levels = node_truss_levels(g, &edge_levels);
    let maxtruss = node_levels.iter().copied().max().unwrap_or(0);
    Ok(TrussDecomposition {
        edge_levels,
        node_levels,
        maxtruss,
    })
}

/// Node level: maximum truss level over incident edges.
pub fn node_truss_levels(g: &TextGraph, edge_levels: &[u32]) -> Vec<u32> {
    let mut node_levels = vec![0u32; g.node_count()];
    for (e, &level) in g.edges().iter().zip(edge_levels) {
        node_levels[e.source as usize] = node_levels[e.source as usize].max(level);
        node_levels[e.target as usize] = node_levels[e.target as usize].max(level);
    }
    node_levels
}

/// Weighted core numbers, indexed by node id.
#[derive(Debug, Clone)]
pub struct CoreDecomposition {
    core_numbers: Vec<u64>,
    max_core: u64,
}

impl CoreDecomposition {
    pub fn core_number(&self, node: NodeId) -> u64 {
        self.core_numbers[node as usize]
    }

    pub fn core_numbers(&self) -> &[u64] {
        &self.core_numbers
    }

    pub fn max_core(&self) -> u64 {
        self.max_core
    }
}

/// Generalized core peeling on weighted degree: repeatedly remove the node
/// of minimum weighted degree. A node's core number is the largest
/// threshold at which it survives when every remaining node keeps weighted
/// degree at or above that threshold.
pub fn weighted_core_decompose(g: &TextGraph) -> Result<CoreDecomposition> {
    if g.directed() {
        return Err(Error::UnsupportedGraph(
            "weighted core decomposition requires an undirected graph",
        ));
    }
    let n = g.node_count();
    let mut wdeg: Vec<u64> = (0..n).map(|v| g.strength(v as NodeId)).collect();
    let mut heap: BinaryHeap<Reverse<(u64, NodeId)>> = (0..n)
        .map(|v| Reverse((wdeg[v], v as NodeId)))
        .collect();
    let mut alive = vec![true; n];
    let mut core_numbers = vec![0u64; n];
    let mut current = 0u64;
    while let Some(Reverse((d, v))) = heap.pop() {
        if !alive[v as usize] || d != wdeg[v as usize] {
            continue;
        }
        alive[v as usize] = false;
        current = current.max(d);
        core_numbers[v as usize] = current;
        for &(u, w) in g.neighbors(v) {
            if alive[u as usize] {
                wdeg[u as usize] -= w as u64;
                heap.push(Reverse((wdeg[u as usize], u)));
            }
        }
    }
    let max_core = core_numbers.iter().copied().max().unwrap_or(0);
    Ok(CoreDecomposition {
        core_numbers,
        max_core,
    })
}
