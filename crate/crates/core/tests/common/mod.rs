//! Shared generators and brute-force oracles for the integration suites.
//! Nothing here calls the library's reduction, matching or closed-form
//! code paths; each oracle recomputes its quantity from definitions.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use graphtda::complex::{Simplex, SimplicialComplex};
use graphtda::graph::{threshold_subgraph, WeightedGraph};
use graphtda::persistence::PersistenceDiagram;
use graphtda::{ExtReal, FilteredComplex};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Random graph on `n` vertices with edge probability `p` and integer
/// weights in `1..=levels`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64, levels: u32) -> WeightedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v, rng.gen_range(1..=levels) as f64));
            }
        }
    }
    WeightedGraph::from_weighted_edges(n, &edges)
}

/// Random graph with real weights in `[0, 10)`.
pub fn random_real_graph(rng: &mut impl Rng, n: usize, p: f64) -> WeightedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v, rng.gen_range(0.0..10.0)));
            }
        }
    }
    WeightedGraph::from_weighted_edges(n, &edges)
}

/// Random subgraph: keeps each edge of `h` with probability `keep`.
pub fn random_subgraph(rng: &mut impl Rng, h: &WeightedGraph, keep: f64) -> WeightedGraph {
    let edges: Vec<_> = h
        .edges()
        .filter(|_| rng.gen_bool(keep))
        .map(|(u, v, w)| (u, v, w.unwrap().to_f64()))
        .collect();
    WeightedGraph::from_weighted_edges(h.vertex_count(), &edges)
}

/// Random complex on `n` vertices from `facets` random vertex sets of
/// size at most `max_size`.
pub fn random_complex(rng: &mut impl Rng, n: usize, facets: usize, max_size: usize) -> SimplicialComplex {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut gens = Vec::new();
    for _ in 0..facets {
        let size = rng.gen_range(1..=max_size.min(n));
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(rng);
        vs.truncate(size);
        gens.push(vs);
    }
    SimplicialComplex::from_labelled_generators(labels, gens, None).unwrap()
}

/// Random monotone values: each simplex gets the max of its faces' values
/// plus a random increment in `0..=2` (vertices: `0..=4`).
pub fn random_filtration(rng: &mut impl Rng, k: SimplicialComplex) -> FilteredComplex {
    let mut values: Vec<ExtReal> = Vec::with_capacity(k.len());
    for s in k.simplices() {
        let v = if s.dim() == 0 {
            rng.gen_range(0..=4) as f64
        } else {
            let top = s
                .boundary()
                .map(|f| values[k.position(&f).unwrap()].to_f64())
                .fold(f64::NEG_INFINITY, f64::max);
            top + rng.gen_range(0..=2) as f64
        };
        values.push(ExtReal::Finite(v));
    }
    FilteredComplex::new(k, values).unwrap()
}

/// Dense GF(2) matrix as a list of columns.
#[derive(Clone)]
pub struct Gf2Columns {
    pub rows: usize,
    pub cols: Vec<Vec<bool>>,
}

impl Gf2Columns {
    pub fn rank(&self) -> usize {
        let mut cols = self.cols.clone();
        let mut rank = 0;
        let mut pivot_row = 0;
        while pivot_row < self.rows {
            if let Some(p) = (rank..cols.len()).find(|&c| cols[c][pivot_row]) {
                cols.swap(rank, p);
                let pivot = cols[rank].clone();
                for c in cols.iter_mut().skip(rank + 1) {
                    if c[pivot_row] {
                        for (x, y) in c.iter_mut().zip(&pivot) {
                            *x ^= *y;
                        }
                    }
                }
                rank += 1;
            }
            pivot_row += 1;
        }
        rank
    }

    /// Basis of the kernel, as coefficient vectors over the columns.
    pub fn kernel(&self) -> Vec<Vec<bool>> {
        let n = self.cols.len();
        // reduce columns while tracking combinations
        let mut work: Vec<(Vec<bool>, Vec<bool>)> = self
            .cols
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut e = vec![false; n];
                e[i] = true;
                (c.clone(), e)
            })
            .collect();
        let mut kernel = Vec::new();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, index into reduced)
        let mut reduced: Vec<(Vec<bool>, Vec<bool>)> = Vec::new();
        for (mut col, mut comb) in work.drain(..) {
            loop {
                let Some(top) = col.iter().rposition(|&b| b) else {
                    kernel.push(comb);
                    break;
                };
                match pivots.iter().find(|(r, _)| *r == top) {
                    Some(&(_, idx)) => {
                        let (pc, pcomb) = &reduced[idx];
                        for (x, y) in col.iter_mut().zip(pc) {
                            *x ^= *y;
                        }
                        for (x, y) in comb.iter_mut().zip(pcomb) {
                            *x ^= *y;
                        }
                    }
                    None => {
                        pivots.push((top, reduced.len()));
                        reduced.push((col, comb));
                        break;
                    }
                }
            }
        }
        kernel
    }
}

/// Boundary matrix from `dim`-simplices of `higher` to `(dim-1)`-simplices
/// of `lower`, each given as explicit lists.
fn boundary(higher: &[Simplex], lower: &[Simplex]) -> Gf2Columns {
    let cols = higher
        .iter()
        .map(|s| {
            let faces: HashSet<Simplex> = s.boundary().collect();
            lower.iter().map(|f| faces.contains(f)).collect()
        })
        .collect();
    Gf2Columns {
        rows: lower.len(),
        cols,
    }
}

fn of_dim(fc: &FilteredComplex, d: usize, t: ExtReal) -> Vec<Simplex> {
    fc.iter()
        .filter(|(s, v)| s.dim() == d && *v <= t)
        .map(|(s, _)| s.clone())
        .collect()
}

/// Rank of `H_r(X_u) -> H_r(X_v)` from sublevel chain groups:
/// `dim Z_r(X_u) - dim(Z_r(X_u) ∩ B_r(X_v))`.
pub fn rank_oracle(fc: &FilteredComplex, r: usize, u: ExtReal, v: ExtReal) -> usize {
    assert!(u <= v);
    let cells_v = of_dim(fc, r, v);
    let cells_u = of_dim(fc, r, u);
    let cycles_u: Vec<Vec<bool>> = if r == 0 {
        (0..cells_u.len())
            .map(|i| (0..cells_u.len()).map(|j| i == j).collect())
            .collect()
    } else {
        boundary(&cells_u, &of_dim(fc, r - 1, u)).kernel()
    };
    // express cycles of X_u in the basis of r-cells of X_v
    let lift: Vec<Vec<bool>> = cycles_u
        .iter()
        .map(|z| {
            cells_v
                .iter()
                .map(|c| cells_u.iter().position(|x| x == c).is_some_and(|i| z[i]))
                .collect()
        })
        .collect();
    let bounds = boundary(&of_dim(fc, r + 1, v), &cells_v);
    let mut joint = bounds.clone();
    joint.cols.extend(lift);
    joint.rank() - bounds.rank()
}

/// Critical values, midpoints between them, and one unit beyond each end.
pub fn query_axis(fc: &FilteredComplex) -> Vec<ExtReal> {
    let finite: BTreeSet<ExtReal> = fc.values().iter().copied().filter(|v| v.is_finite()).collect();
    let xs: Vec<f64> = finite.iter().map(|v| v.to_f64()).collect();
    let mut axis = Vec::new();
    if let (Some(first), Some(last)) = (xs.first(), xs.last()) {
        axis.push(first - 1.0);
        for w in xs.windows(2) {
            axis.push((w[0] + w[1]) / 2.0);
        }
        axis.extend(xs.iter().copied());
        axis.push(last + 1.0);
    } else {
        axis.push(0.0);
    }
    axis.sort_by(f64::total_cmp);
    axis.into_iter().map(ExtReal::Finite).collect()
}

/// Literal reading of the neighbourhood rule: smallest weight level `t`
/// with `set ⊆ N_{G_t}[w]` for some `w`.
pub fn brute_neighborhood_value(g: &WeightedGraph, set: &[usize]) -> Option<ExtReal> {
    g.weight_levels().into_iter().find(|&t| {
        let gt = threshold_subgraph(g, t);
        (0..gt.vertex_count()).any(|w| set.iter().all(|&u| u == w || gt.is_adjacent(u, w)))
    })
}

fn literally_enclaveless(g: &WeightedGraph, set: &[usize]) -> bool {
    // no member has its whole closed neighbourhood inside the set
    !set.iter().any(|&v| {
        std::iter::once(v)
            .chain(g.neighbors(v).iter().copied())
            .all(|u| set.contains(&u))
    })
}

/// Literal reading of the enclaveless rule: smallest weight level `t` such
/// that some enclaveless set of `G_t` contains `set` (all supersets tried).
pub fn brute_enclaveless_value(g: &WeightedGraph, set: &[usize]) -> Option<ExtReal> {
    let n = g.vertex_count();
    let rest: Vec<usize> = (0..n).filter(|v| !set.contains(v)).collect();
    g.weight_levels().into_iter().find(|&t| {
        let gt = threshold_subgraph(g, t);
        (0u64..1 << rest.len()).any(|mask| {
            let mut sup = set.to_vec();
            sup.extend(rest.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v));
            literally_enclaveless(&gt, &sup)
        })
    })
}

/// Literal vertex rule.
pub fn brute_vertex_value(g: &WeightedGraph, v: usize) -> ExtReal {
    g.neighbors(v)
        .iter()
        .map(|&u| g.edge_weight(v, u).unwrap().unwrap())
        .min()
        .unwrap_or(ExtReal::NegInf)
}

/// All point-to-point matchings between two point lists, the rest going
/// to the diagonal; returns the least bottleneck cost. Costs follow the
/// two-term matching cost written out here independently.
pub fn exhaustive_bottleneck(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    fn cost(p: (f64, f64), q: (f64, f64)) -> f64 {
        let direct = (p.0 - q.0).abs().max((p.1 - q.1).abs());
        let diag = ((p.1 - p.0) / 2.0).max((q.1 - q.0) / 2.0);
        direct.min(diag)
    }
    fn go(i: usize, a: &[(f64, f64)], b: &[(f64, f64)], used: &mut Vec<bool>, acc: f64, best: &mut f64) {
        if acc >= *best {
            return;
        }
        if i == a.len() {
            let rest = b
                .iter()
                .zip(used.iter())
                .filter(|(_, u)| !**u)
                .map(|(q, _)| (q.1 - q.0) / 2.0)
                .fold(0.0, f64::max);
            *best = best.min(acc.max(rest));
            return;
        }
        // to the diagonal
        go(i + 1, a, b, used, acc.max((a[i].1 - a[i].0) / 2.0), best);
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                go(i + 1, a, b, used, acc.max(cost(a[i], b[j])), best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    go(0, a, b, &mut vec![false; b.len()], 0.0, &mut best);
    best
}

pub fn finite_points(d: &PersistenceDiagram) -> Vec<(f64, f64)> {
    d.expanded_points().map(|(b, e)| (b.to_f64(), e.to_f64())).collect()
}

/// Random diagram with up to `max_points` proper points and integer-ish
/// coordinates (so that ties occur).
pub fn random_diagram(rng: &mut impl Rng, max_points: usize) -> PersistenceDiagram {
    let n = rng.gen_range(0..=max_points);
    let pts: Vec<(ExtReal, ExtReal)> = (0..n)
        .map(|_| {
            let b = rng.gen_range(0..8) as f64 / 2.0;
            let d = b + rng.gen_range(1..8) as f64 / 2.0;
            (ExtReal::Finite(b), ExtReal::Finite(d))
        })
        .collect();
    PersistenceDiagram::from_pairs(0, pts, []).unwrap()
}

/// Diagram of degree `r` recovered from ranks alone, by inclusion–exclusion
/// of the rank oracle around each pair of critical values. Requires finite
/// values.
pub fn oracle_diagram(fc: &FilteredComplex, r: usize) -> PersistenceDiagram {
    let crit: Vec<f64> = fc
        .critical_values()
        .into_iter()
        .map(|v| v.finite().expect("finite filtration values"))
        .collect();
    let below = |i: usize| if i == 0 { crit[0] - 1.0 } else { (crit[i - 1] + crit[i]) / 2.0 };
    let beyond = crit.last().map_or(0.0, |x| x + 1.0);
    let beta = |u: f64, v: f64| rank_oracle(fc, r, ExtReal::Finite(u), ExtReal::Finite(v)) as i64;
    let mut points = Vec::new();
    let mut essential = Vec::new();
    for i in 0..crit.len() {
        for j in i + 1..crit.len() {
            let (u, v) = (crit[i], crit[j]);
            let (u0, v0) = (below(i), below(j));
            let mu = beta(u, v0) - beta(u0, v0) - beta(u, v) + beta(u0, v);
            assert!(mu >= 0);
            for _ in 0..mu {
                points.push((ExtReal::Finite(u), ExtReal::Finite(v)));
            }
        }
        let mu = beta(crit[i], beyond) - beta(below(i), beyond);
        for _ in 0..mu {
            essential.push(ExtReal::Finite(crit[i]));
        }
    }
    PersistenceDiagram::from_pairs(r, points, essential).unwrap()
}

/// Proptest strategy: graph on up to `max_n` vertices, integer weights in
/// `1..=levels`.
pub fn arb_graph(max_n: usize, levels: u32) -> impl proptest::strategy::Strategy<Value = WeightedGraph> {
    use proptest::prelude::*;
    (0..=max_n).prop_flat_map(move |n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(proptest::option::of(1..=levels), pairs).prop_map(move |ws| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if let Some(w) = ws[k] {
                        edges.push((u, v, w as f64));
                    }
                    k += 1;
                }
            }
            WeightedGraph::from_weighted_edges(n, &edges)
        })
    })
}
