//! Weighted simple graphs and the graph-level constructions built on them.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::value::ExtReal;

/// A finite simple graph whose edges carry an optional extended-real weight.
///
/// Vertices are string labels kept in lexicographic order; internally a
/// vertex is its index in that order. Edge weights are `None` for edges
/// produced by unweighted constructions (complement, suspensions).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    neighbors: Vec<Vec<usize>>,
    weights: BTreeMap<(usize, usize), Option<ExtReal>>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Collects vertices and edges by label before freezing them into a graph.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    vertices: BTreeSet<String>,
    edges: BTreeMap<(String, String), Option<ExtReal>>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, label: impl Into<String>) -> &mut Self {
        self.vertices.insert(label.into());
        self
    }

    /// Adds an edge, declaring both endpoints. Returns `false` (and leaves
    /// the builder unchanged) for loops and for edges already present.
    pub fn try_edge(&mut self, u: &str, v: &str, weight: Option<ExtReal>) -> bool {
        if u == v {
            return false;
        }
        let k = if u < v {
            (u.to_string(), v.to_string())
        } else {
            (v.to_string(), u.to_string())
        };
        if self.edges.contains_key(&k) {
            return false;
        }
        self.vertices.insert(u.to_string());
        self.vertices.insert(v.to_string());
        self.edges.insert(k, weight);
        true
    }

    /// Like [`try_edge`](Self::try_edge) but panics on loops and duplicates.
    pub fn edge(&mut self, u: &str, v: &str, weight: Option<ExtReal>) -> &mut Self {
        assert!(self.try_edge(u, v, weight), "loop or duplicate edge {u}-{v}");
        self
    }

    pub fn build(&self) -> WeightedGraph {
        let labels: Vec<String> = self.vertices.iter().cloned().collect();
        let index: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut neighbors = vec![Vec::new(); labels.len()];
        let mut weights = BTreeMap::new();
        for ((u, v), w) in &self.edges {
            let (a, b) = (index[u.as_str()], index[v.as_str()]);
            neighbors[a].push(b);
            neighbors[b].push(a);
            weights.insert(key(a, b), *w);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        WeightedGraph {
            labels,
            neighbors,
            weights,
        }
    }
}

impl WeightedGraph {
    /// Graph on vertices `0..n` labelled by zero-padded indices, so that the
    /// label order coincides with the index order.
    pub fn from_indexed_edges<I>(n: usize, edges: I) -> WeightedGraph
    where
        I: IntoIterator<Item = (usize, usize, Option<ExtReal>)>,
    {
        let width = n.saturating_sub(1).to_string().len();
        let label = |i: usize| format!("{i:0width$}");
        let mut b = GraphBuilder::new();
        for i in 0..n {
            b.vertex(label(i));
        }
        for (u, v, w) in edges {
            assert!(u < n && v < n, "edge endpoint out of range");
            b.edge(&label(u), &label(v), w);
        }
        b.build()
    }

    /// Weighted graph on `0..n` from `(u, v, weight)` triples.
    pub fn from_weighted_edges(n: usize, edges: &[(usize, usize, f64)]) -> WeightedGraph {
        Self::from_indexed_edges(n, edges.iter().map(|&(u, v, w)| (u, v, Some(ExtReal::from(w)))))
    }

    /// Unweighted graph on `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> WeightedGraph {
        Self::from_indexed_edges(n, edges.iter().map(|&(u, v)| (u, v, None)))
    }

    pub fn empty(n: usize) -> WeightedGraph {
        Self::from_edges(n, &[])
    }

    pub fn complete(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> WeightedGraph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> WeightedGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.weights.contains_key(&key(u, v))
    }

    /// `None` if `uv` is not an edge, `Some(None)` if it is an unweighted edge.
    pub fn edge_weight(&self, u: usize, v: usize) -> Option<Option<ExtReal>> {
        self.weights.get(&key(u, v)).copied()
    }

    /// Weight of an edge that must exist and be weighted.
    pub fn weight(&self, u: usize, v: usize) -> Result<ExtReal> {
        match self.edge_weight(u, v) {
            Some(Some(w)) => Ok(w),
            _ => Err(Error::MissingWeight(
                self.labels[u].clone(),
                self.labels[v].clone(),
            )),
        }
    }

    /// Edges as `(u, v, weight)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Option<ExtReal>)> + '_ {
        self.weights.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn is_fully_weighted(&self) -> bool {
        self.weights.values().all(Option::is_some)
    }

    /// Sorted distinct edge weights.
    pub fn weight_levels(&self) -> Vec<ExtReal> {
        let set: BTreeSet<ExtReal> = self.weights.values().flatten().copied().collect();
        set.into_iter().collect()
    }

    /// Minimum weight over the edges incident on `v`; `None` for isolated
    /// vertices.
    pub fn min_incident_weight(&self, v: usize) -> Result<Option<ExtReal>> {
        let mut best: Option<ExtReal> = None;
        for &u in &self.neighbors[v] {
            let w = self.weight(v, u)?;
            best = Some(best.map_or(w, |b| b.min(w)));
        }
        Ok(best)
    }

    /// Relabels into a builder, the starting point of every construction
    /// that adds vertices or edges.
    pub fn to_builder(&self) -> GraphBuilder {
        let mut b = GraphBuilder::new();
        for l in &self.labels {
            b.vertex(l.clone());
        }
        for (u, v, w) in self.edges() {
            b.edge(&self.labels[u], &self.labels[v], w);
        }
        b
    }

    /// Same labels, same edges, ignoring weights.
    pub fn same_shape(&self, other: &WeightedGraph) -> bool {
        self.labels == other.labels
            && self.weights.keys().eq(other.weights.keys())
    }

    /// `true` if every vertex and edge of `self` (matched by label) is in `other`.
    pub fn is_subgraph_of(&self, other: &WeightedGraph) -> bool {
        let map: Option<Vec<usize>> = self.labels.iter().map(|l| other.index_of(l)).collect();
        match map {
            None => false,
            Some(map) => self.edges().all(|(u, v, _)| other.is_adjacent(map[u], map[v])),
        }
    }
}

/// Parses the edge-list text format: `u v w` edge records, `u` isolated
/// vertex records, `#` comments and blank lines.
pub fn parse_graph(text: &str) -> Result<WeightedGraph, ParseError> {
    let mut b = GraphBuilder::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |kind| ParseError { line, kind };
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields.as_slice() {
            [u] => {
                b.vertex(*u);
            }
            [u, v, w] => {
                if u == v {
                    return Err(err(ParseErrorKind::Loop(u.to_string())));
                }
                let weight = w
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| err(ParseErrorKind::BadWeight(w.to_string())))?;
                if !b.try_edge(u, v, Some(ExtReal::Finite(weight))) {
                    return Err(err(ParseErrorKind::DuplicateEdge(u.to_string(), v.to_string())));
                }
            }
            _ => return Err(err(ParseErrorKind::Malformed)),
        }
    }
    let g = b.build();
    if g.vertex_count() == 0 {
        return Err(ParseError {
            line: 0,
            kind: ParseErrorKind::Empty,
        });
    }
    Ok(g)
}

/// Serializes in the edge-list format accepted by [`parse_graph`].
/// Unweighted edges are written with weight `0`.
pub fn write_graph(g: &WeightedGraph) -> String {
    let mut out = String::new();
    let mut touched = vec![false; g.vertex_count()];
    for (u, v, w) in g.edges() {
        touched[u] = true;
        touched[v] = true;
        let w = w.map_or(0.0, ExtReal::to_f64);
        out.push_str(&format!("{} {} {}\n", g.label(u), g.label(v), w));
    }
    for (v, t) in touched.iter().enumerate() {
        if !t {
            out.push_str(g.label(v));
            out.push('\n');
        }
    }
    out
}

/// Complement graph: same vertices, exactly the missing pairs as edges,
/// all unweighted.
pub fn complement(g: &WeightedGraph) -> WeightedGraph {
    let n = g.vertex_count();
    let mut weights = BTreeMap::new();
    let mut neighbors = vec![Vec::new(); n];
    for u in 0..n {
        for v in u + 1..n {
            if !g.is_adjacent(u, v) {
                weights.insert((u, v), None);
                neighbors[u].push(v);
                neighbors[v].push(u);
            }
        }
    }
    for list in &mut neighbors {
        list.sort_unstable();
    }
    WeightedGraph {
        labels: g.labels.clone(),
        neighbors,
        weights,
    }
}

/// All vertices of `g` and the edges with weight `<= t`. Unweighted edges
/// never pass the threshold.
pub fn threshold_subgraph(g: &WeightedGraph, t: ExtReal) -> WeightedGraph {
    let mut neighbors = vec![Vec::new(); g.vertex_count()];
    let mut weights = BTreeMap::new();
    for (u, v, w) in g.edges() {
        if matches!(w, Some(w) if w <= t) {
            neighbors[u].push(v);
            neighbors[v].push(u);
            weights.insert((u, v), w);
        }
    }
    WeightedGraph {
        labels: g.labels.clone(),
        neighbors,
        weights,
    }
}

/// Two labels not used by `g`: `x`, `y` if free, otherwise `x_k`, `y_k`
/// for the smallest `k` that makes both free.
pub fn fresh_pair(g: &WeightedGraph) -> (String, String) {
    let free = |l: &str| g.index_of(l).is_none();
    if free("x") && free("y") {
        return ("x".into(), "y".into());
    }
    (1..)
        .map(|k| (format!("x_{k}"), format!("y_{k}")))
        .find(|(x, y)| free(x) && free(y))
        .unwrap()
}

/// Clique suspension: two fresh non-adjacent vertices joined to every
/// vertex of `g`. New edges are unweighted.
pub fn csusp(g: &WeightedGraph) -> WeightedGraph {
    let (x, y) = fresh_pair(g);
    let mut b = g.to_builder();
    b.vertex(x.clone()).vertex(y.clone());
    for l in g.labels() {
        b.edge(&x, l, None).edge(l, &y, None);
    }
    b.build()
}

/// Disjoint union of `g` with a single unweighted edge on two fresh
/// vertices. Suspends both the independence and the enclaveless complex.
pub fn isusp(g: &WeightedGraph) -> WeightedGraph {
    let (x, y) = fresh_pair(g);
    let mut b = g.to_builder();
    b.edge(&x, &y, None);
    b.build()
}

/// Same construction as [`isusp`].
pub fn elsusp(g: &WeightedGraph) -> WeightedGraph {
    isusp(g)
}

/// Lazily enumerates every edge-preserving vertex bijection between two
/// small graphs. Each item maps vertex indices of the first graph to vertex
/// indices of the second.
///
/// Plain backtracking: vertices are matched in a connectivity-first order,
/// candidates must agree on a per-vertex color (degree by default) and on
/// adjacency with every vertex already matched.
pub struct Isomorphisms {
    n: usize,
    adj_g: Vec<bool>,
    adj_h: Vec<bool>,
    color_g: Vec<u64>,
    color_h: Vec<u64>,
    order: Vec<usize>,
    mapping: Vec<usize>,
    used: Vec<bool>,
    cursor: Vec<usize>,
    depth: usize,
    yielded: bool,
    done: bool,
}

const UNMAPPED: usize = usize::MAX;

fn adjacency_matrix(g: &WeightedGraph) -> Vec<bool> {
    let n = g.vertex_count();
    let mut m = vec![false; n * n];
    for (u, v, _) in g.edges() {
        m[u * n + v] = true;
        m[v * n + u] = true;
    }
    m
}

impl Isomorphisms {
    fn new(g: &WeightedGraph, h: &WeightedGraph, color_g: Vec<u64>, color_h: Vec<u64>) -> Self {
        let n = g.vertex_count();
        let mut sorted_g = color_g.clone();
        let mut sorted_h = color_h.clone();
        sorted_g.sort_unstable();
        sorted_h.sort_unstable();
        let feasible = n == h.vertex_count()
            && g.edge_count() == h.edge_count()
            && sorted_g == sorted_h;

        // Match order: repeatedly take the unplaced vertex with the most
        // placed neighbours, ties broken by degree.
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        let mut links = vec![0usize; n];
        for _ in 0..n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| (links[v], g.degree(v), std::cmp::Reverse(v)))
                .unwrap();
            placed[next] = true;
            order.push(next);
            for &u in g.neighbors(next) {
                links[u] += 1;
            }
        }

        Isomorphisms {
            n,
            adj_g: adjacency_matrix(g),
            adj_h: adjacency_matrix(h),
            color_g,
            color_h,
            order,
            mapping: vec![UNMAPPED; n],
            used: vec![false; n],
            cursor: vec![0; n + 1],
            depth: 0,
            yielded: false,
            done: !feasible,
        }
    }

    fn consistent(&self, gv: usize, hv: usize) -> bool {
        if self.used[hv] || self.color_g[gv] != self.color_h[hv] {
            return false;
        }
        let n = self.n;
        self.order[..self.depth].iter().all(|&gu| {
            let hu = self.mapping[gu];
            self.adj_g[gv * n + gu] == self.adj_h[hv * n + hu]
        })
    }

    fn unassign(&mut self, depth: usize) {
        let gv = self.order[depth];
        self.used[self.mapping[gv]] = false;
        self.mapping[gv] = UNMAPPED;
    }
}

impl Iterator for Isomorphisms {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            return Some(Vec::new());
        }
        if self.yielded {
            self.yielded = false;
            self.depth = self.n - 1;
            self.unassign(self.depth);
        }
        loop {
            let gv = self.order[self.depth];
            let found = (self.cursor[self.depth]..self.n).find(|&hv| self.consistent(gv, hv));
            match found {
                Some(hv) => {
                    self.cursor[self.depth] = hv + 1;
                    self.mapping[gv] = hv;
                    self.used[hv] = true;
                    self.depth += 1;
                    if self.depth == self.n {
                        self.yielded = true;
                        return Some(self.mapping.clone());
                    }
                    self.cursor[self.depth] = 0;
                }
                None => {
                    self.cursor[self.depth] = 0;
                    if self.depth == 0 {
                        self.done = true;
                        return None;
                    }
                    self.depth -= 1;
                    self.unassign(self.depth);
                }
            }
        }
    }
}

/// Every isomorphism from `g` onto `h`, as index maps. Empty iff the graphs
/// are not isomorphic. Intended for graphs with at most ~10 vertices.
pub fn isomorphisms(g: &WeightedGraph, h: &WeightedGraph) -> Isomorphisms {
    let degrees = |x: &WeightedGraph| (0..x.vertex_count()).map(|v| x.degree(v) as u64).collect();
    Isomorphisms::new(g, h, degrees(g), degrees(h))
}

/// Isomorphisms that additionally map each vertex to one of equal color.
/// Colors must be isomorphism invariants for the result to be complete.
pub fn colored_isomorphisms(
    g: &WeightedGraph,
    h: &WeightedGraph,
    color_g: Vec<u64>,
    color_h: Vec<u64>,
) -> Isomorphisms {
    assert_eq!(color_g.len(), g.vertex_count());
    assert_eq!(color_h.len(), h.vertex_count());
    Isomorphisms::new(g, h, color_g, color_h)
}
