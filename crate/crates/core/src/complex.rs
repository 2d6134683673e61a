//! Finite simplicial complexes and the graph-to-complex constructions.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, GraphBuilder, WeightedGraph};

/// A nonempty set of vertex indices, stored sorted.
///
/// Simplices order by dimension first and lexicographically within a
/// dimension, which is the canonical enumeration order of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts the vertices; rejects empty input and repeated vertices.
    pub fn new(mut vertices: Vec<usize>) -> Result<Simplex> {
        vertices.sort_unstable();
        if vertices.is_empty() {
            return Err(Error::InvalidSimplex("empty vertex set".into()));
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSimplex(format!("repeated vertex in {vertices:?}")));
        }
        Ok(Simplex(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Simplex {
        debug_assert!(!vertices.is_empty() && vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertex(v: usize) -> Simplex {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// Codimension-one faces, each obtained by dropping one vertex.
    pub fn boundary(&self) -> impl Iterator<Item = Simplex> + '_ {
        let k = self.0.len();
        (0..if k > 1 { k } else { 0 }).map(move |i| {
            let mut f = self.0.clone();
            f.remove(i);
            Simplex(f)
        })
    }

    /// Every nonempty face of dimension at most `max_dim`, itself included.
    pub fn faces(&self, max_dim: Option<usize>) -> impl Iterator<Item = Simplex> + '_ {
        let top = max_dim.map_or(self.0.len(), |d| (d + 1).min(self.0.len()));
        (1..=top).flat_map(move |size| {
            self.0
                .iter()
                .copied()
                .combinations(size)
                .map(Simplex)
        })
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite simplicial complex over a labelled ground set.
///
/// The ground set may contain vertices that span no simplex (the
/// enclaveless complex of a graph never uses isolated vertices, for
/// instance). Simplices are kept in canonical order together with a
/// lookup table and the list of facets.
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    facets: Vec<Simplex>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Downward closure of `generators`, truncated at `max_dim`.
    /// `labels` must be sorted and distinct.
    pub fn from_generators<I>(labels: Vec<String>, generators: I, max_dim: Option<usize>) -> Self
    where
        I: IntoIterator<Item = Simplex>,
    {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        let mut set: HashSet<Simplex> = HashSet::new();
        for g in generators {
            if set.contains(&g) {
                continue;
            }
            set.extend(g.faces(max_dim));
        }
        Self::from_closed_set(labels, set)
    }

    /// Builds from a set already closed under taking faces.
    pub(crate) fn from_closed_set(labels: Vec<String>, set: HashSet<Simplex>) -> Self {
        let mut simplices: Vec<Simplex> = set.into_iter().collect();
        simplices.sort_unstable();
        let index: HashMap<Simplex, usize> = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut is_facet = vec![true; simplices.len()];
        for s in &simplices {
            for f in s.boundary() {
                is_facet[index[&f]] = false;
            }
        }
        let facets = simplices
            .iter()
            .zip(&is_facet)
            .filter(|(_, &f)| f)
            .map(|(s, _)| s.clone())
            .collect();
        SimplicialComplex {
            labels,
            simplices,
            index,
            facets,
        }
    }

    /// Complex on arbitrary (unsorted) labels; generator indices refer to
    /// positions in `labels` and are remapped to the sorted order.
    pub fn from_labelled_generators(
        labels: Vec<String>,
        generators: Vec<Vec<usize>>,
        max_dim: Option<usize>,
    ) -> Result<Self> {
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        if order.windows(2).any(|w| labels[w[0]] == labels[w[1]]) {
            return Err(Error::InvalidSimplex("duplicate vertex label".into()));
        }
        let mut position = vec![0; labels.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let sorted: Vec<String> = order.iter().map(|&i| labels[i].clone()).collect();
        let gens = generators
            .into_iter()
            .map(|g| Simplex::new(g.into_iter().map(|v| position[v]).collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_generators(sorted, gens, max_dim))
    }

    pub fn empty(labels: Vec<String>) -> Self {
        Self::from_closed_set(labels, HashSet::new())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// Simplices in canonical (dimension, lexicographic) order.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    pub fn position(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Dimension of the largest simplex; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.last().map(Simplex::dim)
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            f[s.dim()] += 1;
        }
        f
    }

    pub fn simplices_of_dim(&self, d: usize) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().filter(move |s| s.dim() == d)
    }

    /// Vertices spanning at least one simplex.
    pub fn used_vertices(&self) -> Vec<usize> {
        self.simplices_of_dim(0).map(|s| s.0[0]).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// `true` if every nonempty subset of every simplex is present.
    pub fn is_closed(&self) -> bool {
        self.simplices
            .iter()
            .all(|s| s.boundary().all(|f| self.contains(&f)))
    }

    /// Label-wise inclusion: every simplex of `self`, read through its
    /// labels, is a simplex of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        let map: Option<Vec<usize>> = self
            .labels
            .iter()
            .map(|l| other.labels.binary_search(l).ok())
            .collect();
        let Some(map) = map else {
            return self.simplices.is_empty();
        };
        self.simplices.iter().all(|s| {
            let image = Simplex::new(s.0.iter().map(|&v| map[v]).collect());
            image.is_ok_and(|t| other.contains(&t))
        })
    }

    pub fn display_simplex(&self, s: &Simplex) -> String {
        format!("<{}>", s.0.iter().map(|&v| self.labels[v].as_str()).join(","))
    }

    pub fn simplex_labels(&self, s: &Simplex) -> Vec<String> {
        s.0.iter().map(|&v| self.labels[v].clone()).collect()
    }

    /// Resolves a list of labels to a simplex over this complex's ground set.
    pub fn simplex_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Simplex> {
        let vs = labels
            .iter()
            .map(|l| {
                self.labels
                    .binary_search_by(|x| x.as_str().cmp(l.as_ref()))
                    .map_err(|_| Error::UnknownVertex(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Simplex::new(vs)
    }

    pub fn to_document(&self) -> ComplexDocument {
        ComplexDocument {
            vertices: self.labels.clone(),
            facets: self.facets.iter().map(|f| self.simplex_labels(f)).collect(),
        }
    }

    pub fn from_document(doc: &ComplexDocument) -> Result<Self> {
        let mut labels = doc.vertices.clone();
        labels.sort();
        labels.dedup();
        if labels.len() != doc.vertices.len() {
            return Err(Error::InvalidSimplex("duplicate vertex label".into()));
        }
        let shell = Self::empty(labels.clone());
        let facets = doc
            .facets
            .iter()
            .map(|f| shell.simplex_from_labels(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_generators(labels, facets, None))
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets = self.facets.iter().map(|s| self.display_simplex(s)).join(" ");
        write!(f, "[{facets}]")
    }
}

/// JSON form of a complex: ground set plus facets. The full simplex set is
/// recovered by closure on load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
}

/// Maximal cliques by Bron–Kerbosch with Tomita pivoting, each sorted,
/// in lexicographic order. Isolated vertices are maximal 1-cliques.
pub fn maximal_cliques(g: &WeightedGraph) -> Vec<Vec<usize>> {
    fn expand(
        g: &WeightedGraph,
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| g.is_adjacent(u, v)).count())
            .unwrap();
        let candidates: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&v| !g.is_adjacent(pivot, v))
            .collect();
        let mut p = p;
        let mut x = x;
        for v in candidates {
            let np = p.iter().copied().filter(|&u| g.is_adjacent(u, v)).collect();
            let nx = x.iter().copied().filter(|&u| g.is_adjacent(u, v)).collect();
            r.push(v);
            expand(g, r, np, nx, out);
            r.pop();
            p.retain(|&u| u != v);
            x.push(v);
        }
    }

    let mut out = Vec::new();
    if g.vertex_count() == 0 {
        return out;
    }
    expand(
        g,
        &mut Vec::new(),
        (0..g.vertex_count()).collect(),
        Vec::new(),
        &mut out,
    );
    out.sort();
    out
}

/// Complex of all cliques of `g` up to dimension `max_dim`.
pub fn clique_complex(g: &WeightedGraph, max_dim: Option<usize>) -> SimplicialComplex {
    let facets = maximal_cliques(g).into_iter().map(Simplex::from_sorted);
    SimplicialComplex::from_generators(g.labels().to_vec(), facets, max_dim)
}

/// `{v} ∪ N(v)`, sorted.
pub fn closed_neighborhood(g: &WeightedGraph, v: usize) -> Vec<usize> {
    let mut n = g.neighbors(v).to_vec();
    n.push(v);
    n.sort_unstable();
    n
}

/// Complex of all nonempty subsets of closed neighbourhoods.
pub fn neighborhood_complex(g: &WeightedGraph, max_dim: Option<usize>) -> SimplicialComplex {
    let mut hoods: Vec<Vec<usize>> = (0..g.vertex_count())
        .map(|v| closed_neighborhood(g, v))
        .collect();
    hoods.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    hoods.dedup();
    // Drop neighbourhoods contained in a larger one; closure would absorb
    // them anyway, this only saves work.
    let mut maximal: Vec<Vec<usize>> = Vec::new();
    for h in hoods {
        let covered = maximal
            .iter()
            .any(|m| h.iter().all(|v| m.binary_search(v).is_ok()));
        if !covered {
            maximal.push(h);
        }
    }
    let gens = maximal.into_iter().map(Simplex::from_sorted);
    SimplicialComplex::from_generators(g.labels().to_vec(), gens, max_dim)
}

/// `true` if every member of `set` has a neighbour outside `set`,
/// i.e. no closed neighbourhood lies inside `set`.
pub fn is_enclaveless(g: &WeightedGraph, set: &[usize]) -> bool {
    let mut inside = vec![false; g.vertex_count()];
    for &v in set {
        inside[v] = true;
    }
    set.iter()
        .all(|&v| g.neighbors(v).iter().any(|&u| !inside[u]))
}

/// `true` if every vertex is in `set` or adjacent to a member of it.
pub fn is_dominating(g: &WeightedGraph, set: &[usize]) -> bool {
    let mut covered = vec![false; g.vertex_count()];
    for &v in set {
        covered[v] = true;
        for &u in g.neighbors(v) {
            covered[u] = true;
        }
    }
    covered.into_iter().all(|c| c)
}

/// Complex of nonempty enclaveless sets (complements of dominating sets).
///
/// Enclavelessness is hereditary, so every enclaveless set is reached by
/// growing enclaveless prefixes in increasing vertex order; the search
/// visits exactly the simplices of the result.
pub fn enclaveless_complex(g: &WeightedGraph, max_dim: Option<usize>) -> SimplicialComplex {
    let n = g.vertex_count();
    let max_size = max_dim.map_or(n, |d| d + 1);
    let mut found = HashSet::new();
    let mut inside = vec![false; n];
    // outside_count[v]: neighbours of v not in the current set
    let mut outside_count: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut current = Vec::new();

    fn grow(
        g: &WeightedGraph,
        start: usize,
        max_size: usize,
        current: &mut Vec<usize>,
        inside: &mut [bool],
        outside_count: &mut [usize],
        found: &mut HashSet<Simplex>,
    ) {
        if current.len() == max_size {
            return;
        }
        for w in start..g.vertex_count() {
            if outside_count[w] == 0 {
                continue;
            }
            // Adding w removes it from the outside of each neighbour.
            let breaks = g
                .neighbors(w)
                .iter()
                .any(|&u| inside[u] && outside_count[u] == 1);
            if breaks {
                continue;
            }
            inside[w] = true;
            for &u in g.neighbors(w) {
                outside_count[u] -= 1;
            }
            current.push(w);
            // w itself still needs an outside neighbour
            if outside_count[w] > 0 {
                found.insert(Simplex::from_sorted(current.clone()));
                grow(g, w + 1, max_size, current, inside, outside_count, found);
            }
            current.pop();
            for &u in g.neighbors(w) {
                outside_count[u] += 1;
            }
            inside[w] = false;
        }
    }

    grow(
        g,
        0,
        max_size,
        &mut current,
        &mut inside,
        &mut outside_count,
        &mut found,
    );
    SimplicialComplex::from_closed_set(g.labels().to_vec(), found)
}

/// Complex of nonempty independent sets, i.e. the clique complex of the
/// complement.
pub fn independent_complex(g: &WeightedGraph, max_dim: Option<usize>) -> SimplicialComplex {
    clique_complex(&graph::complement(g), max_dim)
}

/// Barycentric subdivision: one vertex per simplex (labelled `{a,b,..}`),
/// one simplex per chain of strictly nested simplices.
pub fn barycentric_subdivision(k: &SimplicialComplex) -> SimplicialComplex {
    let labels: Vec<String> = k
        .simplices()
        .iter()
        .map(|s| format!("{{{}}}", k.simplex_labels(s).join(",")))
        .collect();
    let mut chains = Vec::new();
    for facet in k.facets() {
        for perm in facet.vertices().iter().copied().permutations(facet.vertices().len()) {
            let chain: Vec<usize> = (1..=perm.len())
                .map(|i| {
                    let mut prefix = perm[..i].to_vec();
                    prefix.sort_unstable();
                    k.position(&Simplex::from_sorted(prefix)).unwrap()
                })
                .collect();
            chains.push(chain);
        }
    }
    SimplicialComplex::from_labelled_generators(labels, chains, None)
        .expect("subdivision labels are distinct")
}

/// The graph formed by the ground set and the 1-simplices, unweighted.
pub fn one_skeleton(k: &SimplicialComplex) -> WeightedGraph {
    let mut b = GraphBuilder::new();
    for l in k.labels() {
        b.vertex(l.clone());
    }
    for s in k.simplices_of_dim(1) {
        b.edge(k.label(s.0[0]), k.label(s.0[1]), None);
    }
    b.build()
}

/// Per-vertex count of incident simplices in each dimension, hashed into a
/// color; invariant under complex isomorphisms.
fn incidence_colors(k: &SimplicialComplex) -> Vec<u64> {
    use std::hash::{Hash, Hasher};
    let dims = k.dim().map_or(0, |d| d + 1);
    let mut profile = vec![vec![0u64; dims]; k.labels().len()];
    for s in k.simplices() {
        for &v in s.vertices() {
            profile[v][s.dim()] += 1;
        }
    }
    profile
        .into_iter()
        .map(|p| {
            let mut h = std::collections::hash_map::DefaultHasher::new();
            p.hash(&mut h);
            h.finish()
        })
        .collect()
}

/// A vertex bijection carrying the simplices of `a` exactly onto those of
/// `b`, if one exists. Searches isomorphisms of the 1-skeleta (colored by
/// incidence profiles) and checks each against the full simplex sets.
pub fn complex_isomorphism(a: &SimplicialComplex, b: &SimplicialComplex) -> Option<Vec<usize>> {
    if a.labels().len() != b.labels().len() || a.f_vector() != b.f_vector() {
        return None;
    }
    let (ga, gb) = (one_skeleton(a), one_skeleton(b));
    let mut isos = graph::colored_isomorphisms(&ga, &gb, incidence_colors(a), incidence_colors(b));
    isos.find(|map| {
        a.simplices().iter().all(|s| {
            let image = Simplex::new(s.vertices().iter().map(|&v| map[v]).collect());
            image.is_ok_and(|t| b.contains(&t))
        })
    })
}
