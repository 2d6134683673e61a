//! Filtering functions induced on graph complexes by edge weights.
//!
//! Every construction uses the same vertex rule: a vertex enters at the
//! smallest weight among its incident edges, and an isolated vertex enters
//! at `-inf`. Higher simplices follow the construction's own rule.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{
    clique_complex, enclaveless_complex, neighborhood_complex, Simplex, SimplicialComplex,
};
use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, WeightedGraph};
use crate::value::ExtReal;

/// A complex together with a value for each of its simplices, aligned
/// with the canonical simplex order.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    complex: SimplicialComplex,
    values: Vec<ExtReal>,
}

impl FilteredComplex {
    /// Pairs a complex with per-simplex values. Monotonicity is not
    /// enforced here; see [`check_monotone`](Self::check_monotone).
    pub fn new(complex: SimplicialComplex, values: Vec<ExtReal>) -> Result<Self> {
        if values.len() != complex.len() {
            return Err(Error::InvalidSimplex(format!(
                "{} values for {} simplices",
                values.len(),
                complex.len()
            )));
        }
        Ok(FilteredComplex { complex, values })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Values aligned with `complex().simplices()`.
    pub fn values(&self) -> &[ExtReal] {
        &self.values
    }

    pub fn value(&self, s: &Simplex) -> Option<ExtReal> {
        self.complex.position(s).map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, ExtReal)> {
        self.complex.simplices().iter().zip(self.values.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sorted distinct values.
    pub fn critical_values(&self) -> Vec<ExtReal> {
        let set: BTreeSet<ExtReal> = self.values.iter().copied().collect();
        set.into_iter().collect()
    }

    /// First face/coface pair whose values decrease, if any.
    pub fn check_monotone(&self) -> Result<()> {
        for (s, v) in self.iter() {
            for f in s.boundary() {
                let fv = self.value(&f).expect("complex is closed");
                if fv > v {
                    return Err(Error::NonMonotone {
                        face: self.complex.display_simplex(&f),
                        face_value: fv.to_string(),
                        coface: self.complex.display_simplex(s),
                        coface_value: v.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// The subcomplex of simplices with value `<= t`.
    pub fn sublevel(&self, t: ExtReal) -> SimplicialComplex {
        let set: HashSet<Simplex> = self
            .iter()
            .filter(|(_, v)| *v <= t)
            .map(|(s, _)| s.clone())
            .collect();
        SimplicialComplex::from_closed_set(self.complex.labels().to_vec(), set)
    }

    pub fn to_document(&self) -> FiltrationDocument {
        FiltrationDocument {
            vertices: self.complex.labels().to_vec(),
            simplices: self
                .iter()
                .map(|(s, value)| SimplexValue {
                    vertices: self.complex.simplex_labels(s),
                    value,
                })
                .collect(),
        }
    }

    /// Rebuilds from JSON. The ground set is `vertices` plus every label
    /// used by a simplex; the simplex list must be closed under faces.
    pub fn from_document(doc: &FiltrationDocument) -> Result<Self> {
        let mut labels: BTreeSet<String> = doc.vertices.iter().cloned().collect();
        for s in &doc.simplices {
            labels.extend(s.vertices.iter().cloned());
        }
        let labels: Vec<String> = labels.into_iter().collect();
        let shell = SimplicialComplex::empty(labels.clone());
        let mut entries = Vec::with_capacity(doc.simplices.len());
        let mut set = HashSet::new();
        for s in &doc.simplices {
            let simplex = shell.simplex_from_labels(&s.vertices)?;
            if !set.insert(simplex.clone()) {
                return Err(Error::InvalidSimplex(format!("duplicate simplex {:?}", s.vertices)));
            }
            entries.push((simplex, s.value));
        }
        if !set.iter().all(|s| s.boundary().all(|f| set.contains(&f))) {
            return Err(Error::InvalidSimplex("simplex list is not closed under faces".into()));
        }
        let complex = SimplicialComplex::from_closed_set(labels, set);
        let mut values = vec![ExtReal::ZERO; complex.len()];
        for (s, v) in entries {
            values[complex.position(&s).unwrap()] = v;
        }
        Ok(FilteredComplex { complex, values })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexValue {
    pub vertices: Vec<String>,
    pub value: ExtReal,
}

/// JSON form of a filtered complex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiltrationDocument {
    #[serde(default)]
    pub vertices: Vec<String>,
    pub simplices: Vec<SimplexValue>,
}

fn require_weights(g: &WeightedGraph) -> Result<()> {
    match g.edges().find(|(_, _, w)| w.is_none()) {
        Some((u, v, _)) => Err(Error::MissingWeight(
            g.label(u).to_string(),
            g.label(v).to_string(),
        )),
        None => Ok(()),
    }
}

/// Smallest incident edge weight; `-inf` for an isolated vertex.
pub fn vertex_value(g: &WeightedGraph, v: usize) -> Result<ExtReal> {
    Ok(g.min_incident_weight(v)?.unwrap_or(ExtReal::NegInf))
}

fn assign<F>(g: &WeightedGraph, complex: SimplicialComplex, rule: F) -> Result<FilteredComplex>
where
    F: Fn(&[usize]) -> Result<ExtReal> + Sync,
{
    require_weights(g)?;
    let values = complex
        .simplices()
        .par_iter()
        .map(|s| match s.vertices() {
            [v] => vertex_value(g, *v),
            vs => rule(vs),
        })
        .collect::<Result<Vec<_>>>()?;
    FilteredComplex::new(complex, values)
}

/// Largest edge weight inside a clique.
pub fn clique_value(g: &WeightedGraph, clique: &[usize]) -> Result<ExtReal> {
    let mut best = ExtReal::NegInf;
    for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            best = best.max(g.weight(u, v)?);
        }
    }
    Ok(best)
}

/// Smallest threshold at which some closed neighbourhood contains `set`:
/// the minimum, over witnesses `w` adjacent to all of `set` minus `w`, of
/// the largest weight from `w` into `set`.
pub fn neighborhood_value(g: &WeightedGraph, set: &[usize]) -> Result<ExtReal> {
    let anchor = set[0];
    let candidates = std::iter::once(anchor).chain(g.neighbors(anchor).iter().copied());
    let mut best = ExtReal::PosInf;
    for w in candidates {
        if !set.iter().all(|&u| u == w || g.is_adjacent(w, u)) {
            continue;
        }
        let mut reach = ExtReal::NegInf;
        for &u in set.iter().filter(|&&u| u != w) {
            reach = reach.max(g.weight(w, u)?);
        }
        best = best.min(reach);
    }
    Ok(best)
}

/// Smallest threshold at which `set` is enclaveless: the largest, over
/// members `v`, of the cheapest edge from `v` to a vertex outside `set`.
/// `+inf` if some member has no neighbour outside.
pub fn enclaveless_value(g: &WeightedGraph, set: &[usize]) -> Result<ExtReal> {
    let mut worst = ExtReal::NegInf;
    for &v in set {
        let mut cheapest = ExtReal::PosInf;
        for &u in g.neighbors(v) {
            if set.binary_search(&u).is_err() {
                cheapest = cheapest.min(g.weight(v, u)?);
            }
        }
        worst = worst.max(cheapest);
    }
    Ok(worst)
}

/// Clique complex filtered by the largest edge weight of each clique.
pub fn filter_clique(g: &WeightedGraph, max_dim: Option<usize>) -> Result<FilteredComplex> {
    assign(g, clique_complex(g, max_dim), |c| clique_value(g, c))
}

/// Neighbourhood complex filtered by the first threshold graph in which a
/// simplex fits inside a closed neighbourhood.
pub fn filter_neighborhood(g: &WeightedGraph, max_dim: Option<usize>) -> Result<FilteredComplex> {
    assign(g, neighborhood_complex(g, max_dim), |s| neighborhood_value(g, s))
}

/// Enclaveless complex filtered by the first threshold graph in which a
/// simplex is enclaveless.
pub fn filter_enclaveless(g: &WeightedGraph, max_dim: Option<usize>) -> Result<FilteredComplex> {
    assign(g, enclaveless_complex(g, max_dim), |s| enclaveless_value(g, s))
}

/// Completes `g` to the complete graph on its vertices; missing edges get
/// weight `+inf`.
pub fn extend_weights(g: &WeightedGraph) -> WeightedGraph {
    let mut b = g.to_builder();
    let n = g.vertex_count();
    for u in 0..n {
        for v in u + 1..n {
            if !g.is_adjacent(u, v) {
                b.edge(g.label(u), g.label(v), Some(ExtReal::PosInf));
            }
        }
    }
    b.build()
}

/// Same graph with every weight negated.
pub fn negate_weights(g: &WeightedGraph) -> WeightedGraph {
    let mut b = GraphBuilder::new();
    for l in g.labels() {
        b.vertex(l.clone());
    }
    for (u, v, w) in g.edges() {
        b.edge(g.label(u), g.label(v), w.map(|w| -w));
    }
    b.build()
}

/// Clique filtration of a weighted graph, paired with the clique
/// filtration of its completion under negated weights.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedPair {
    pub ascending: FilteredComplex,
    pub descending: FilteredComplex,
}

impl ExtendedPair {
    /// `true` if the ascending complex sits inside the descending one.
    pub fn is_nested(&self) -> bool {
        self.ascending
            .complex()
            .is_subcomplex_of(self.descending.complex())
    }
}

pub fn extended_pair(g: &WeightedGraph, max_dim: Option<usize>) -> Result<ExtendedPair> {
    let ascending = filter_clique(g, max_dim)?;
    let descending = filter_clique(&negate_weights(&extend_weights(g)), max_dim)?;
    Ok(ExtendedPair {
        ascending,
        descending,
    })
}
