//! Bottleneck distance between persistence diagrams and the isomorphism
//! bound on the natural pseudodistance between weighted graphs.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{isomorphisms, WeightedGraph};
use crate::persistence::PersistenceDiagram;
use crate::value::ExtReal;

/// A proper cornerpoint `(birth, death)`.
pub type Point = (ExtReal, ExtReal);

fn half_persistence(p: Point) -> f64 {
    p.1.abs_diff(p.0) / 2.0
}

/// Matching cost between two proper cornerpoints: the sup-norm distance,
/// unless sending both to the diagonal is cheaper.
pub fn dhat(p: Point, q: Point) -> f64 {
    let direct = p.0.abs_diff(q.0).max(p.1.abs_diff(q.1));
    let via_diagonal = half_persistence(p).max(half_persistence(q));
    direct.min(via_diagonal)
}

/// One matched pair of an optimal matching. Indices refer to the expanded
/// point lists (multiplicities repeated); `None` stands for the diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchedPair {
    pub left: Option<usize>,
    pub right: Option<usize>,
    pub cost: f64,
}

/// An optimal bijection between two diagrams completed by the diagonal.
/// Essential points are matched among themselves in birth order.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    pub proper: Vec<MatchedPair>,
    pub essential: Vec<(usize, usize, f64)>,
    pub cost: f64,
}

/// Maximum bipartite matching (Hopcroft–Karp). `adj[l]` lists the right
/// vertices adjacent to left vertex `l`. Returns the partner of each left
/// vertex.
fn max_matching(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    const FREE: usize = usize::MAX;
    let left = adj.len();
    let mut match_l = vec![FREE; left];
    let mut match_r = vec![FREE; right];
    let mut dist = vec![0usize; left];

    loop {
        // layer free left vertices
        let mut queue = VecDeque::new();
        for l in 0..left {
            if match_l[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let next = match_r[r];
                if next == FREE {
                    found = true;
                } else if dist[next] == usize::MAX {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }

        fn augment(
            l: usize,
            adj: &[Vec<usize>],
            match_l: &mut [usize],
            match_r: &mut [usize],
            dist: &mut [usize],
        ) -> bool {
            for &r in &adj[l] {
                let next = match_r[r];
                if next == FREE
                    || (dist[next] == dist[l] + 1 && augment(next, adj, match_l, match_r, dist))
                {
                    match_l[l] = r;
                    match_r[r] = l;
                    return true;
                }
            }
            dist[l] = usize::MAX;
            false
        }

        for l in 0..left {
            if match_l[l] == FREE {
                augment(l, adj, &mut match_l, &mut match_r, &mut dist);
            }
        }
    }
    match_l
        .into_iter()
        .map(|r| (r != FREE).then_some(r))
        .collect()
}

/// Perfect matching of the diagonal-completed point sets using only pairs
/// of cost `<= t`, if one exists. Left vertices are `a` then one diagonal
/// slot per point of `b`; right vertices are `b` then one diagonal slot
/// per point of `a`.
fn threshold_matching(a: &[Point], b: &[Point], t: f64) -> Option<Vec<MatchedPair>> {
    let (n, m) = (a.len(), b.len());
    let mut adj = vec![Vec::new(); n + m];
    for (i, &p) in a.iter().enumerate() {
        for (j, &q) in b.iter().enumerate() {
            if dhat(p, q) <= t {
                adj[i].push(j);
            }
        }
        if half_persistence(p) <= t {
            adj[i].push(m + i);
        }
    }
    for (j, &q) in b.iter().enumerate() {
        if half_persistence(q) <= t {
            adj[n + j].push(j);
        }
        adj[n + j].extend(m..m + n);
    }
    let partner = max_matching(&adj, n + m);
    if partner.iter().any(Option::is_none) {
        return None;
    }
    let mut pairs = Vec::new();
    for (i, r) in partner.iter().take(n).enumerate() {
        let r = r.unwrap();
        pairs.push(if r < m {
            MatchedPair {
                left: Some(i),
                right: Some(r),
                cost: dhat(a[i], b[r]),
            }
        } else {
            MatchedPair {
                left: Some(i),
                right: None,
                cost: half_persistence(a[i]),
            }
        });
    }
    for (j, r) in partner.iter().skip(n).enumerate() {
        if r.unwrap() < m {
            pairs.push(MatchedPair {
                left: None,
                right: Some(j),
                cost: half_persistence(b[j]),
            });
        }
    }
    Some(pairs)
}

/// Bottleneck distance between finite multisets of proper points, with an
/// optimal matching. Exact: the optimum is one of the pairwise or diagonal
/// costs, found by binary search over those candidates.
pub fn proper_bottleneck(a: &[Point], b: &[Point]) -> (f64, Vec<MatchedPair>) {
    let mut candidates: Vec<f64> = vec![0.0];
    for &p in a {
        candidates.push(half_persistence(p));
        for &q in b {
            candidates.push(dhat(p, q));
        }
    }
    candidates.extend(b.iter().map(|&q| half_persistence(q)));
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if threshold_matching(a, b, candidates[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    // the largest candidate always admits the all-to-diagonal matching
    let best = threshold_matching(a, b, candidates[lo]).expect("diagonal matching exists");
    let cost = best.iter().map(|p| p.cost).fold(0.0, f64::max);
    (cost, best)
}

/// Optimal matching between two diagrams of the same degree.
pub fn bottleneck_matching(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> Result<Matching> {
    if d1.dimension != d2.dimension {
        return Err(Error::DegreeMismatch(d1.dimension, d2.dimension));
    }
    let e1: Vec<ExtReal> = d1.expanded_essential().collect();
    let e2: Vec<ExtReal> = d2.expanded_essential().collect();
    let a: Vec<Point> = d1.expanded_points().collect();
    let b: Vec<Point> = d2.expanded_points().collect();
    let (proper_cost, proper) = proper_bottleneck(&a, &b);

    if e1.len() != e2.len() {
        return Ok(Matching {
            proper,
            essential: Vec::new(),
            cost: f64::INFINITY,
        });
    }
    // births arrive sorted; matching in order minimizes the largest gap
    let essential: Vec<(usize, usize, f64)> = e1
        .iter()
        .zip(&e2)
        .enumerate()
        .map(|(i, (x, y))| (i, i, x.abs_diff(*y)))
        .collect();
    let cost = essential.iter().map(|e| e.2).fold(proper_cost, f64::max);
    Ok(Matching {
        proper,
        essential,
        cost,
    })
}

/// Bottleneck distance between two diagrams of the same degree; `+inf`
/// when their numbers of essential points differ.
pub fn bottleneck(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> Result<f64> {
    Ok(bottleneck_matching(d1, d2)?.cost)
}

/// Smallest, over graph isomorphisms `ψ: g1 → g2`, of the largest weight
/// change `|f1(e) - f2(ψ(e))|`; `+inf` if the graphs are not isomorphic.
///
/// This bounds the natural pseudodistance of the weighted graphs from
/// above. Exhaustive over isomorphisms, so meant for about ten vertices.
pub fn pseudodistance_iso(g1: &WeightedGraph, g2: &WeightedGraph) -> Result<f64> {
    let edges: Vec<(usize, usize, ExtReal)> = g1
        .edges()
        .map(|(u, v, _)| Ok((u, v, g1.weight(u, v)?)))
        .collect::<Result<_>>()?;
    if !g2.is_fully_weighted() {
        let (u, v, _) = g2.edges().find(|e| e.2.is_none()).unwrap();
        return Err(Error::MissingWeight(g2.label(u).into(), g2.label(v).into()));
    }
    let mut best = f64::INFINITY;
    for psi in isomorphisms(g1, g2) {
        let mut worst: f64 = 0.0;
        for &(u, v, w) in &edges {
            worst = worst.max(w.abs_diff(g2.weight(psi[u], psi[v])?));
            if worst >= best {
                break;
            }
        }
        best = best.min(worst);
        if best == 0.0 {
            break;
        }
    }
    Ok(best)
}
