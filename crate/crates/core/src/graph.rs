//! Finite simple graphs on the node set `0..n`.
//!
//! Graphs are small (Dynkin diagrams, exhaustive sweeps over a handful of
//! nodes), so adjacency is a dense [`BitMat`] and the combinatorial searches
//! below are exact brute force with pruning.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{BitMat, BitVec};

/// Largest graph handed to [`Graph::max_coclique`].
pub const MAX_COCLIQUE_NODES: usize = 32;
/// Largest graph handed to [`Graph::automorphisms`].
pub const MAX_AUTOMORPHISM_NODES: usize = 10;
/// Largest graph handed to [`Graph::canonical_code`].
pub const MAX_CANONICAL_NODES: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("node index {index} out of range for {count} nodes")]
    OutOfRange { index: usize, count: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("node {0} listed twice")]
    DuplicateNode(usize),
    #[error("{operation} supports at most {cap} nodes, graph has {count}")]
    TooLarge {
        operation: &'static str,
        cap: usize,
        count: usize,
    },
    #[error("invalid JSON graph: {0}")]
    Json(String),
    #[error("invalid Dynkin diagram {family}{rank}")]
    InvalidDiagram { family: DynkinFamily, rank: usize },
}

/// Cartan–Killing families of finite type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinFamily {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl DynkinFamily {
    #[must_use]
    pub fn is_simply_laced(self) -> bool {
        matches!(self, Self::A | Self::D | Self::E)
    }

    /// Whether `rank` names a diagram of this family.
    #[must_use]
    pub fn admits_rank(self, rank: usize) -> bool {
        match self {
            Self::A => rank >= 1,
            Self::B | Self::C => rank >= 2,
            Self::D => rank >= 4,
            Self::E => (6..=8).contains(&rank),
            Self::F => rank == 4,
            Self::G => rank == 2,
        }
    }
}

impl fmt::Display for DynkinFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for DynkinFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Self::A),
            "B" => Ok(Self::B),
            "C" => Ok(Self::C),
            "D" => Ok(Self::D),
            "E" => Ok(Self::E),
            "F" => Ok(Self::F),
            "G" => Ok(Self::G),
            other => Err(format!("unknown family {other:?}")),
        }
    }
}

/// A simple undirected graph with an intrinsic node order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: BitMat,
    labels: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    nodes: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Graph {
    /// The totally disconnected graph on `n` nodes.
    #[must_use]
    pub fn empty(n: usize) -> Self {
        Self {
            adj: BitMat::zeros(n, n),
            labels: None,
        }
    }

    pub fn with_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(i, j) in edges {
            g.insert_edge(i, j)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, i: usize, j: usize) -> Result<(), GraphError> {
        let n = self.node_count();
        for index in [i, j] {
            if index >= n {
                return Err(GraphError::OutOfRange { index, count: n });
            }
        }
        if i == j {
            return Err(GraphError::SelfLoop(i));
        }
        if self.adj.get(i, j) {
            return Err(GraphError::DuplicateEdge(i.min(j), i.max(j)));
        }
        self.adj.set(i, j, true);
        self.adj.set(j, i, true);
        Ok(())
    }

    /// Graph from a symmetric zero-diagonal adjacency matrix.
    pub fn from_adjacency(adj: BitMat) -> Result<Self, GraphError> {
        let n = adj.rows();
        if !adj.is_square() {
            return Err(GraphError::Json("adjacency matrix must be square".into()));
        }
        for i in 0..n {
            if adj.get(i, i) {
                return Err(GraphError::SelfLoop(i));
            }
        }
        if !adj.is_symmetric() {
            return Err(GraphError::Json("adjacency matrix must be symmetric".into()));
        }
        Ok(Self { adj, labels: None })
    }

    #[must_use]
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::with_edges(n, &edges).expect("path edges are valid")
    }

    #[must_use]
    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.adj.set(i, j, true);
                g.adj.set(j, i, true);
            }
        }
        g
    }

    /// `K₁,ₘ` with centre 0.
    #[must_use]
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::with_edges(leaves + 1, &edges).expect("star edges are valid")
    }

    #[must_use]
    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Self::with_edges(n, &edges).expect("cycle edges are valid")
    }

    /// The diagram of a finite-type Cartan datum, with the node numbering used
    /// by the explicit decorations in [`crate::cartan::ade_srs`]:
    ///
    /// * `Aₙ`: the path `0 – 1 – … – n−1`.
    /// * `D₂ₘ₊₂`: the path on `0..2m` plus nodes `2m`, `2m+1` both joined to node 0.
    /// * `D₂ₘ₊₁`: the path on `0..2m` plus node `2m` joined to node 1.
    /// * `E₆`, `E₈`: the path `A₄` resp. `A₆` plus a node joined to node 0 and
    ///   a last node joined to node 1.
    /// * `E₇`: the path `A₆` plus node 6 joined to node 2.
    ///
    /// For `B`, `C`, `F`, `G` this is the parity graph of the Cartan datum
    /// (edges where the symmetrized pairing is odd).
    pub fn dynkin(family: DynkinFamily, rank: usize) -> Result<Self, GraphError> {
        if !family.admits_rank(rank) {
            return Err(GraphError::InvalidDiagram { family, rank });
        }
        let attach = |chain: usize, extra: &[usize]| {
            let mut edges: Vec<_> = (1..chain).map(|i| (i - 1, i)).collect();
            for (k, &target) in extra.iter().enumerate() {
                edges.push((target, chain + k));
            }
            Self::with_edges(chain + extra.len(), &edges).expect("diagram edges are valid")
        };
        Ok(match (family, rank) {
            (DynkinFamily::A, n) => Self::path(n),
            (DynkinFamily::D, n) if n % 2 == 0 => attach(n - 2, &[0, 0]),
            (DynkinFamily::D, n) => attach(n - 1, &[1]),
            (DynkinFamily::E, 6) => attach(4, &[0, 1]),
            (DynkinFamily::E, 7) => attach(6, &[2]),
            (DynkinFamily::E, 8) => attach(6, &[0, 1]),
            _ => {
                let datum = crate::cartan::CartanDatum::of(family, rank)
                    .map_err(|_| GraphError::InvalidDiagram { family, rank })?;
                crate::cartan::parity_graph(&datum)
            }
        })
    }

    #[must_use]
    pub fn node_count(&self) -> usize {
        self.adj.rows()
    }

    #[must_use]
    pub fn adjacency(&self) -> &BitMat {
        &self.adj
    }

    #[must_use]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj.get(i, j)
    }

    /// Indicator vector of the neighbourhood of `i`.
    #[must_use]
    pub fn neighbors(&self, i: usize) -> &BitVec {
        self.adj.row(i)
    }

    #[must_use]
    pub fn degree(&self, i: usize) -> usize {
        self.adj.row(i).count_ones()
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    #[must_use]
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.node_count())
            .flat_map(|i| self.adj.row(i).ones().filter(move |&j| j > i).map(move |j| (i, j)))
            .collect()
    }

    #[must_use]
    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    #[must_use]
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[must_use]
    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.node_count(), "one label per node");
        self.labels = Some(labels);
        self
    }

    /// The graph on `nodes` (in the given order) with the inherited edges.
    /// New node `i` is old node `nodes[i]`.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<Self, GraphError> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        for &p in nodes {
            if p >= n {
                return Err(GraphError::OutOfRange { index: p, count: n });
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::DuplicateNode(p));
            }
        }
        let mut g = Self::empty(nodes.len());
        for (a, &p) in nodes.iter().enumerate() {
            for (b, &q) in nodes.iter().enumerate() {
                if self.adj.get(p, q) {
                    g.adj.set(a, b, true);
                }
            }
        }
        g.labels = self
            .labels
            .as_ref()
            .map(|ls| nodes.iter().map(|&p| ls[p].clone()).collect());
        Ok(g)
    }

    /// The graph with one node appended, adjacent exactly to the ones of `neighbors`.
    #[must_use]
    pub fn with_new_node(&self, neighbors: &BitVec) -> Self {
        let n = self.node_count();
        assert_eq!(neighbors.dim(), n, "indicator must cover every existing node");
        let mut g = Self::empty(n + 1);
        for (i, j) in self.edges() {
            g.adj.set(i, j, true);
            g.adj.set(j, i, true);
        }
        for q in neighbors.ones() {
            g.adj.set(n, q, true);
            g.adj.set(q, n, true);
        }
        g
    }

    #[must_use]
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let n = self.node_count();
        let mut g = Self::empty(n + other.node_count());
        for (i, j) in self.edges() {
            g.adj.set(i, j, true);
            g.adj.set(j, i, true);
        }
        for (i, j) in other.edges() {
            g.adj.set(n + i, n + j, true);
            g.adj.set(n + j, n + i, true);
        }
        g
    }

    #[must_use]
    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        if n == 0 {
            return true;
        }
        let mut seen = BitVec::unit(n, 0);
        let mut stack = vec![0];
        while let Some(p) = stack.pop() {
            for q in self.adj.row(p).ones() {
                if !seen.get(q) {
                    seen.set(q, true);
                    stack.push(q);
                }
            }
        }
        seen.count_ones() == n
    }

    #[must_use]
    pub fn is_independent(&self, nodes: &[usize]) -> bool {
        nodes
            .iter()
            .enumerate()
            .all(|(a, &p)| nodes[a + 1..].iter().all(|&q| !self.adj.get(p, q)))
    }

    fn masks(&self) -> Vec<u64> {
        (0..self.node_count()).map(|i| self.adj.row(i).to_mask()).collect()
    }

    /// A maximum independent set, lexicographically least among all maximum
    /// ones, by include-first branch and bound.
    pub fn max_coclique(&self) -> Result<Vec<usize>, GraphError> {
        let n = self.node_count();
        if n > MAX_COCLIQUE_NODES {
            return Err(GraphError::TooLarge {
                operation: "max_coclique",
                cap: MAX_COCLIQUE_NODES,
                count: n,
            });
        }
        fn search(adj: &[u64], cands: u64, current: u64, best: &mut (u64, u32)) {
            let size = current.count_ones();
            if cands == 0 {
                if size > best.1 {
                    *best = (current, size);
                }
                return;
            }
            if size + cands.count_ones() <= best.1 {
                return;
            }
            let v = cands.trailing_zeros() as usize;
            let bit = 1u64 << v;
            search(adj, cands & !bit & !adj[v], current | bit, best);
            search(adj, cands & !bit, current, best);
        }
        let adj = self.masks();
        let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
        let mut best = (0u64, 0u32);
        search(&adj, all, 0, &mut best);
        Ok(BitVec::from_mask(n, best.0).ones().collect())
    }

    /// Coclique number γ.
    pub fn coclique_number(&self) -> Result<usize, GraphError> {
        self.max_coclique().map(|c| c.len())
    }

    /// All adjacency-preserving permutations `p` (node `i ↦ p[i]`), in
    /// lexicographic order, by backtracking with degree pruning.
    pub fn automorphisms(&self) -> Result<Vec<Vec<usize>>, GraphError> {
        let n = self.node_count();
        if n > MAX_AUTOMORPHISM_NODES {
            return Err(GraphError::TooLarge {
                operation: "automorphisms",
                cap: MAX_AUTOMORPHISM_NODES,
                count: n,
            });
        }
        let degrees: Vec<usize> = (0..n).map(|i| self.degree(i)).collect();
        let mut out = Vec::new();
        let mut image = Vec::with_capacity(n);
        let mut used = vec![false; n];
        self.extend_automorphism(&degrees, &mut image, &mut used, &mut out);
        Ok(out)
    }

    fn extend_automorphism(
        &self,
        degrees: &[usize],
        image: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = image.len();
        if i == degrees.len() {
            out.push(image.clone());
            return;
        }
        for t in 0..degrees.len() {
            if used[t] || degrees[t] != degrees[i] {
                continue;
            }
            if (0..i).any(|j| self.adj.get(i, j) != self.adj.get(t, image[j])) {
                continue;
            }
            used[t] = true;
            image.push(t);
            self.extend_automorphism(degrees, image, used, out);
            image.pop();
            used[t] = false;
        }
    }

    /// Upper-triangle adjacency code under the node order `order`.
    fn code_under(masks: &[u64], order: &[usize]) -> u64 {
        let mut code = 0u64;
        let mut bit = 0;
        for j in 1..order.len() {
            for i in 0..j {
                if masks[order[i]] >> order[j] & 1 == 1 {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }

    /// Colour refinement: ordered cells of an isomorphism-invariant partition.
    fn refined_cells(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut colors = vec![0usize; n];
        let mut count = 1;
        loop {
            let sigs: Vec<(usize, Vec<usize>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<usize> = self.adj.row(v).ones().map(|u| colors[u]).collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let mut distinct = sigs.clone();
            distinct.sort();
            distinct.dedup();
            let next: Vec<usize> = sigs
                .iter()
                .map(|s| distinct.binary_search(s).expect("signature present"))
                .collect();
            let stable = distinct.len() == count;
            colors = next;
            count = distinct.len();
            if stable {
                break;
            }
        }
        let mut cells = vec![Vec::new(); count];
        for (v, &c) in colors.iter().enumerate() {
            cells[c].push(v);
        }
        cells
    }

    /// A complete isomorphism invariant: two graphs with the same node count
    /// are isomorphic iff their codes agree.
    pub fn canonical_code(&self) -> Result<u64, GraphError> {
        let n = self.node_count();
        if n > MAX_CANONICAL_NODES {
            return Err(GraphError::TooLarge {
                operation: "canonical_code",
                cap: MAX_CANONICAL_NODES,
                count: n,
            });
        }
        let masks = self.masks();
        let cells = self.refined_cells();
        let mut best = u64::MAX;
        let mut order = Vec::with_capacity(n);
        fn permute_cells(
            cells: &[Vec<usize>],
            cell: usize,
            masks: &[u64],
            order: &mut Vec<usize>,
            remaining: &mut Vec<usize>,
            best: &mut u64,
        ) {
            if remaining.is_empty() {
                if cell + 1 == cells.len() || cells.is_empty() {
                    *best = (*best).min(Graph::code_under(masks, order));
                    return;
                }
                let mut next = cells[cell + 1].clone();
                permute_cells(cells, cell + 1, masks, order, &mut next, best);
                return;
            }
            for k in 0..remaining.len() {
                let v = remaining.remove(k);
                order.push(v);
                permute_cells(cells, cell, masks, order, remaining, best);
                order.pop();
                remaining.insert(k, v);
            }
        }
        if n == 0 {
            return Ok(0);
        }
        let mut first = cells[0].clone();
        permute_cells(&cells, 0, &masks, &mut order, &mut first, &mut best);
        Ok(best)
    }

    /// Parses the edge-list format: `n <count>`, then `e <i> <j>` lines;
    /// `#` starts a comment line.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut graph: Option<Self> = None;
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| GraphError::Parse {
                line: line_no,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| err(format!("expected a node index, found {s:?}")))
            };
            match fields.as_slice() {
                ["n", count] => {
                    if graph.is_some() {
                        return Err(err("node count given twice".into()));
                    }
                    graph = Some(Self::empty(num(count)?));
                }
                ["e", i, j] => {
                    let g = graph
                        .as_mut()
                        .ok_or_else(|| err("edge before node count".into()))?;
                    g.insert_edge(num(i)?, num(j)?)?;
                }
                _ => return Err(err(format!("unrecognized line {line:?}"))),
            }
        }
        graph.ok_or(GraphError::Parse {
            line: 0,
            message: "missing node count line".into(),
        })
    }

    #[must_use]
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.node_count());
        for (i, j) in self.edges() {
            s.push_str(&format!("e {i} {j}\n"));
        }
        s
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self, GraphError> {
        let parsed: GraphJson =
            serde_json::from_value(value.clone()).map_err(|e| GraphError::Json(e.to_string()))?;
        let mut g = Self::empty(parsed.nodes);
        for [i, j] in parsed.edges {
            g.insert_edge(i, j)?;
        }
        if let Some(labels) = parsed.labels {
            if labels.len() != g.node_count() {
                return Err(GraphError::Json("one label per node required".into()));
            }
            g.labels = Some(labels);
        }
        Ok(g)
    }

    #[must_use]
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson {
            nodes: self.node_count(),
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
            labels: self.labels.clone(),
        })
        .expect("graph JSON is serializable")
    }

    /// Accepts either the edge-list format or the JSON object format.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        if text.trim_start().starts_with('{') {
            let value: serde_json::Value =
                serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
            Self::from_json_value(&value)
        } else {
            Self::parse_edge_list(text)
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.node_count(), self.edges())
    }
}

/// Every labelled graph on `n` nodes (`2^(n(n−1)/2)` of them), by edge mask.
///
/// # Panics
/// Panics if `n > 8`.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n <= 8, "labelled enumeration is limited to 8 nodes");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::with_edges(n, &edges).expect("generated edges are valid")
    })
}

/// One representative per isomorphism class of graphs on `n` nodes, obtained
/// by appending a node to every class on `n − 1` nodes in all possible ways
/// and deduplicating by [`Graph::canonical_code`]. Sorted by canonical code.
///
/// # Panics
/// Panics if `n > 8`.
#[must_use]
pub fn isomorphism_classes(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "class enumeration is limited to 8 nodes");
    let mut classes = vec![Graph::empty(0)];
    for m in 0..n {
        let mut seen: HashMap<u64, Graph> = HashMap::new();
        for g in &classes {
            for mask in 0..(1u64 << m) {
                let h = g.with_new_node(&BitVec::from_mask(m, mask));
                let code = h.canonical_code().expect("within the canonical cap");
                seen.entry(code).or_insert(h);
            }
        }
        let mut next: Vec<(u64, Graph)> = seen.into_iter().collect();
        next.sort_by_key(|(c, _)| *c);
        classes = next.into_iter().map(|(_, g)| g).collect();
    }
    classes
}
