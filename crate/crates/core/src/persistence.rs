//! Persistence diagrams by boundary-matrix reduction over GF(2), and the
//! persistent Betti number functions read off them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::{ExtendedPair, FilteredComplex};
use crate::value::ExtReal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProperPoint {
    pub birth: ExtReal,
    pub death: ExtReal,
    pub multiplicity: usize,
}

impl ProperPoint {
    /// Half the lifetime: the cost of sending the point to the diagonal.
    pub fn half_persistence(&self) -> f64 {
        self.death.abs_diff(self.birth) / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialPoint {
    pub birth: ExtReal,
    pub multiplicity: usize,
}

/// Cornerpoints of one homology degree: proper points `(birth, death)` and
/// points at infinity (classes that never die), each with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PersistenceDiagram {
    pub dimension: usize,
    pub points: Vec<ProperPoint>,
    pub essential: Vec<EssentialPoint>,
}

impl PersistenceDiagram {
    pub fn empty(dimension: usize) -> Self {
        PersistenceDiagram {
            dimension,
            points: Vec::new(),
            essential: Vec::new(),
        }
    }

    /// Merges coincident points into multiplicities. Every proper point
    /// must satisfy `birth < death`.
    pub fn from_pairs<P, E>(dimension: usize, pairs: P, essential: E) -> Result<Self>
    where
        P: IntoIterator<Item = (ExtReal, ExtReal)>,
        E: IntoIterator<Item = ExtReal>,
    {
        let mut points: BTreeMap<(ExtReal, ExtReal), usize> = BTreeMap::new();
        for (b, d) in pairs {
            if b >= d {
                return Err(Error::InvalidDiagram(format!("point ({b}, {d}) has birth >= death")));
            }
            *points.entry((b, d)).or_default() += 1;
        }
        let mut lines: BTreeMap<ExtReal, usize> = BTreeMap::new();
        for b in essential {
            *lines.entry(b).or_default() += 1;
        }
        Ok(PersistenceDiagram {
            dimension,
            points: points
                .into_iter()
                .map(|((birth, death), multiplicity)| ProperPoint {
                    birth,
                    death,
                    multiplicity,
                })
                .collect(),
            essential: lines
                .into_iter()
                .map(|(birth, multiplicity)| EssentialPoint {
                    birth,
                    multiplicity,
                })
                .collect(),
        })
    }

    /// Re-merges and validates a diagram read from outside.
    pub fn normalized(&self) -> Result<Self> {
        if self.points.iter().any(|p| p.multiplicity == 0)
            || self.essential.iter().any(|p| p.multiplicity == 0)
        {
            return Err(Error::InvalidDiagram("zero multiplicity".into()));
        }
        Self::from_pairs(
            self.dimension,
            self.expanded_points(),
            self.expanded_essential(),
        )
    }

    /// Proper points repeated according to multiplicity.
    pub fn expanded_points(&self) -> impl Iterator<Item = (ExtReal, ExtReal)> + '_ {
        self.points
            .iter()
            .flat_map(|p| std::iter::repeat_n((p.birth, p.death), p.multiplicity))
    }

    /// Essential births repeated according to multiplicity.
    pub fn expanded_essential(&self) -> impl Iterator<Item = ExtReal> + '_ {
        self.essential
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.birth, p.multiplicity))
    }

    pub fn proper_count(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    pub fn essential_count(&self) -> usize {
        self.essential.iter().map(|p| p.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.essential.is_empty()
    }

    /// Number of classes born at or before `u` that are still alive after
    /// `v`: the persistent Betti number at `(u, v)` for `u < v`, and the
    /// Betti number of the sublevel set at `u` for `u = v`.
    pub fn rank_at(&self, u: ExtReal, v: ExtReal) -> usize {
        let proper: usize = self
            .points
            .iter()
            .filter(|p| p.birth <= u && p.death > v)
            .map(|p| p.multiplicity)
            .sum();
        let lines: usize = self
            .essential
            .iter()
            .filter(|p| p.birth <= u)
            .map(|p| p.multiplicity)
            .sum();
        proper + lines
    }

    /// Persistent Betti number β(u, v).
    pub fn pbn(&self, q: PbnQuery) -> usize {
        self.rank_at(ExtReal::Finite(q.u), ExtReal::Finite(q.v))
    }

    /// Betti number of the sublevel set at `u`.
    pub fn betti_at(&self, u: ExtReal) -> usize {
        self.rank_at(u, u)
    }

    /// All finite coordinates, sorted and deduplicated.
    pub fn finite_values(&self) -> Vec<f64> {
        let mut xs: Vec<f64> = self
            .points
            .iter()
            .flat_map(|p| [p.birth, p.death])
            .chain(self.essential.iter().map(|p| p.birth))
            .filter_map(ExtReal::finite)
            .collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        xs
    }
}

/// A point `(u, v)` of the open half-plane `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PbnQuery {
    pub u: f64,
    pub v: f64,
}

impl PbnQuery {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        if u < v {
            Ok(PbnQuery { u, v })
        } else {
            Err(Error::InvalidQuery(u, v))
        }
    }
}

/// `(value, dimension, vertices)` order of the simplices of `fc`:
/// `order[k]` is the complex index of the k-th simplex to enter.
pub fn filtration_order(fc: &FilteredComplex) -> Vec<usize> {
    let simplices = fc.complex().simplices();
    let values = fc.values();
    let mut order: Vec<usize> = (0..simplices.len()).collect();
    // Simplex order is already (dimension, lexicographic).
    order.sort_by(|&a, &b| values[a].cmp(&values[b]).then_with(|| simplices[a].cmp(&simplices[b])));
    order
}

/// Symmetric difference of two sorted index lists.
fn add_column(target: &mut Vec<usize>, source: &[usize]) {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() && j < source.len() {
        match target[i].cmp(&source[j]) {
            std::cmp::Ordering::Less => {
                out.push(target[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(source[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&target[i..]);
    out.extend_from_slice(&source[j..]);
    *target = out;
}

/// Persistence pairs of a filtration, as positions in filtration order.
#[derive(Debug, Clone)]
pub struct Pairing {
    /// Complex index of the simplex at each filtration position.
    pub order: Vec<usize>,
    /// `(birth position, death position)`.
    pub pairs: Vec<(usize, usize)>,
    /// Positions of simplices that create a class which never dies.
    pub essential: Vec<usize>,
}

/// Column reduction with clearing, up to classes of degree `max_dim`.
/// Simplices above dimension `max_dim + 1` are ignored.
pub fn pair_simplices(fc: &FilteredComplex, max_dim: usize) -> Pairing {
    let simplices = fc.complex().simplices();
    let order = filtration_order(fc);
    let mut position = vec![0; order.len()];
    for (p, &i) in order.iter().enumerate() {
        position[i] = p;
    }
    let dim_at = |p: usize| simplices[order[p]].dim();

    let n = order.len();
    let mut columns: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut cleared = vec![false; n];
    let mut negative = vec![false; n];
    let mut pairs = Vec::new();

    for d in (1..=max_dim + 1).rev() {
        // low row -> reduced column owning it
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for j in (0..n).filter(|&j| dim_at(j) == d) {
            if cleared[j] {
                continue;
            }
            let mut col: Vec<usize> = simplices[order[j]]
                .boundary()
                .map(|f| position[fc.complex().position(&f).unwrap()])
                .collect();
            col.sort_unstable();
            while let Some(&low) = col.last() {
                match owner[low] {
                    Some(k) => add_column(&mut col, &columns[k]),
                    None => break,
                }
            }
            if let Some(&low) = col.last() {
                owner[low] = Some(j);
                negative[j] = true;
                cleared[low] = true;
                pairs.push((low, j));
                columns[j] = col;
            }
        }
    }

    let essential = (0..n)
        .filter(|&p| dim_at(p) <= max_dim && !negative[p] && !cleared[p])
        .collect();
    pairs.sort_unstable();
    Pairing {
        order,
        pairs,
        essential,
    }
}

/// Persistence diagrams for degrees `0..=max_dim`. Zero-persistence pairs
/// are dropped. Fails on a non-monotone filtration.
pub fn reduce(fc: &FilteredComplex, max_dim: usize) -> Result<Vec<PersistenceDiagram>> {
    fc.check_monotone()?;
    let pairing = pair_simplices(fc, max_dim);
    let simplices = fc.complex().simplices();
    let values = fc.values();
    let at = |p: usize| pairing.order[p];

    let mut proper = vec![Vec::new(); max_dim + 1];
    let mut lines = vec![Vec::new(); max_dim + 1];
    for &(b, d) in &pairing.pairs {
        let (vb, vd) = (values[at(b)], values[at(d)]);
        if vb < vd {
            proper[simplices[at(b)].dim()].push((vb, vd));
        }
    }
    for &p in &pairing.essential {
        lines[simplices[at(p)].dim()].push(values[at(p)]);
    }
    proper
        .into_iter()
        .zip(lines)
        .enumerate()
        .map(|(r, (pts, ess))| PersistenceDiagram::from_pairs(r, pts, ess))
        .collect()
}

/// Diagram of degree `r`.
pub fn cornerpoints(fc: &FilteredComplex, r: usize) -> Result<PersistenceDiagram> {
    Ok(reduce(fc, r)?.pop().expect("reduce returns r + 1 diagrams"))
}

/// Persistent Betti number β^r(u, v) of a filtered complex.
pub fn pbn(fc: &FilteredComplex, r: usize, q: PbnQuery) -> Result<usize> {
    Ok(cornerpoints(fc, r)?.pbn(q))
}

/// Diagrams of both halves of an extended pair, ready for queries anywhere
/// in the plane.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedPersistence {
    pub ascending: Vec<PersistenceDiagram>,
    pub descending: Vec<PersistenceDiagram>,
}

impl ExtendedPersistence {
    pub fn compute(pair: &ExtendedPair, max_dim: usize) -> Result<Self> {
        Ok(ExtendedPersistence {
            ascending: reduce(&pair.ascending, max_dim)?,
            descending: reduce(&pair.descending, max_dim)?,
        })
    }

    pub fn max_dim(&self) -> usize {
        self.ascending.len() - 1
    }

    /// Extended persistent Betti number of degree `r` at `(u, v)`.
    ///
    /// Above the diagonal this is the ascending β^r(u, v); below it, the
    /// descending β^r(-u, -v); on it, the ascending sublevel Betti number
    /// at `u`.
    pub fn pbn(&self, r: usize, u: f64, v: f64) -> usize {
        let (u, v) = (ExtReal::from(u), ExtReal::from(v));
        if u <= v {
            self.ascending[r].rank_at(u, v)
        } else {
            self.descending[r].rank_at(-u, -v)
        }
    }

    /// Finite critical values of both halves, in the coordinates of the
    /// ascending filtration (descending values negated).
    pub fn critical_values(&self) -> Vec<f64> {
        let mut xs: Vec<f64> = self
            .ascending
            .iter()
            .flat_map(PersistenceDiagram::finite_values)
            .chain(
                self.descending
                    .iter()
                    .flat_map(PersistenceDiagram::finite_values)
                    .map(|x| -x),
            )
            .collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        xs
    }

    /// Samples β̄^r on `axis × axis`; `values[i][j]` is at `(axis[i], axis[j])`.
    pub fn grid(&self, r: usize, axis: &[f64]) -> PbnGrid {
        PbnGrid {
            dimension: r,
            u: axis.to_vec(),
            v: axis.to_vec(),
            values: axis
                .iter()
                .map(|&u| axis.iter().map(|&v| self.pbn(r, u, v)).collect())
                .collect(),
        }
    }
}

/// Extended persistent Betti number of `pair` in degree `r` at `(u, v)`.
pub fn extended_pbn(pair: &ExtendedPair, r: usize, u: f64, v: f64) -> Result<usize> {
    Ok(ExtendedPersistence::compute(pair, r)?.pbn(r, u, v))
}

/// A sampled extended persistent Betti number function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PbnGrid {
    pub dimension: usize,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub values: Vec<Vec<usize>>,
}

/// Critical values, the midpoints between consecutive ones, and one step
/// beyond each end.
pub fn sample_axis(critical: &[f64]) -> Vec<f64> {
    match critical {
        [] => vec![0.0],
        [x] => vec![x - 1.0, *x, x + 1.0],
        _ => {
            let step = critical
                .windows(2)
                .map(|w| w[1] - w[0])
                .fold(f64::INFINITY, f64::min);
            let mut axis = vec![critical[0] - step];
            for w in critical.windows(2) {
                axis.push(w[0]);
                axis.push((w[0] + w[1]) / 2.0);
            }
            axis.push(*critical.last().unwrap());
            axis.push(critical.last().unwrap() + step);
            axis
        }
    }
}

const CSV_HEADER: [&str; 4] = ["dimension", "birth", "death", "multiplicity"];

/// Writes diagrams as `dimension,birth,death,multiplicity` rows; essential
/// points have death `inf`.
pub fn write_diagrams_csv<W: std::io::Write>(diagrams: &[PersistenceDiagram], out: W) -> Result<()> {
    let csv_err = |e: csv::Error| Error::Csv(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for d in diagrams {
        let r = d.dimension.to_string();
        for p in &d.points {
            w.write_record([&r, &p.birth.to_string(), &p.death.to_string(), &p.multiplicity.to_string()])
                .map_err(csv_err)?;
        }
        for e in &d.essential {
            w.write_record([&r, &e.birth.to_string(), "inf", &e.multiplicity.to_string()])
                .map_err(csv_err)?;
        }
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))
}

/// Reads the format of [`write_diagrams_csv`]. Degrees from 0 to the
/// largest one mentioned are returned, empty where no row names them.
pub fn read_diagrams_csv<R: std::io::Read>(input: R) -> Result<Vec<PersistenceDiagram>> {
    let mut reader = csv::Reader::from_reader(input);
    let headers = reader.headers().map_err(|e| Error::Csv(e.to_string()))?;
    if headers.iter().map(str::trim).ne(CSV_HEADER) {
        return Err(Error::Csv(format!("expected header {}", CSV_HEADER.join(","))));
    }
    type Rows = (Vec<(ExtReal, ExtReal)>, Vec<ExtReal>);
    let mut rows: BTreeMap<usize, Rows> = BTreeMap::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Csv(e.to_string()))?;
        let line = i + 2;
        let field = |k: usize| record.get(k).map(str::trim).unwrap_or("");
        let bad = |k: usize| Error::Csv(format!("line {line}: invalid {} {:?}", CSV_HEADER[k], field(k)));
        let r: usize = field(0).parse().map_err(|_| bad(0))?;
        let birth: ExtReal = field(1).parse().map_err(|_| bad(1))?;
        let death: ExtReal = field(2).parse().map_err(|_| bad(2))?;
        let m: usize = field(3).parse().ok().filter(|&m| m > 0).ok_or_else(|| bad(3))?;
        let entry = rows.entry(r).or_default();
        for _ in 0..m {
            if death == ExtReal::PosInf {
                entry.1.push(birth);
            } else {
                entry.0.push((birth, death));
            }
        }
    }
    let top = rows.keys().next_back().map_or(0, |&r| r + 1);
    (0..top)
        .map(|r| match rows.remove(&r) {
            Some((points, essential)) => PersistenceDiagram::from_pairs(r, points, essential),
            None => Ok(PersistenceDiagram::empty(r)),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::clique_complex;
    use crate::filtration::{extended_pair, filter_clique};
    use crate::graph::{parse_graph, WeightedGraph};

    fn f(x: f64) -> ExtReal {
        ExtReal::Finite(x)
    }

    fn diagram(r: usize, pts: &[(f64, f64, usize)], ess: &[(f64, usize)]) -> PersistenceDiagram {
        PersistenceDiagram {
            dimension: r,
            points: pts
                .iter()
                .map(|&(b, d, m)| ProperPoint {
                    birth: f(b),
                    death: f(d),
                    multiplicity: m,
                })
                .collect(),
            essential: ess
                .iter()
                .map(|&(b, m)| EssentialPoint {
                    birth: f(b),
                    multiplicity: m,
                })
                .collect(),
        }
    }

    #[test]
    fn single_edge_between_two_vertices() {
        let k = clique_complex(&WeightedGraph::complete(2), None);
        let fc = FilteredComplex::new(k, vec![f(0.0), f(0.0), f(1.0)]).unwrap();
        let d = reduce(&fc, 0).unwrap();
        assert_eq!(d[0], diagram(0, &[(0.0, 1.0, 1)], &[(0.0, 1)]));
    }

    #[test]
    fn square_keeps_its_loop() {
        let g = WeightedGraph::from_weighted_edges(4, &[(0, 1, 1.0), (1, 2, 2.0), (2, 3, 3.0), (3, 0, 4.0)]);
        let d = reduce(&filter_clique(&g, None).unwrap(), 1).unwrap();
        assert_eq!(d[1], diagram(1, &[], &[(4.0, 1)]));
        assert_eq!(d[0].essential, diagram(0, &[], &[(1.0, 1)]).essential);
        // every later vertex enters together with the edge that attaches it,
        // so all dimension-0 pairs have zero persistence
        assert_eq!(d[0].proper_count(), 0);
    }

    #[test]
    fn triangle_fills_immediately() {
        let g = parse_graph("a b 1\nb c 2\na c 3").unwrap();
        let d = reduce(&filter_clique(&g, None).unwrap(), 1).unwrap();
        assert!(d[1].is_empty());
        assert_eq!(d[0], diagram(0, &[], &[(1.0, 1)]));
    }

    #[test]
    fn pbn_examples() {
        let d = diagram(0, &[(0.0, 1.0, 1)], &[(0.0, 1)]);
        assert_eq!(d.pbn(PbnQuery::new(0.0, 0.5).unwrap()), 2);
        assert_eq!(d.pbn(PbnQuery::new(0.0, 1.0).unwrap()), 1);
        let e = PersistenceDiagram::empty(0);
        assert_eq!(e.pbn(PbnQuery::new(-5.0, 5.0).unwrap()), 0);
        assert!(PbnQuery::new(1.0, 1.0).is_err());
        assert!(PbnQuery::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn symmetric_components_merge_into_multiplicity_two() {
        // two disjoint edges on vertices at 0, both edges at 1, bridge at 2
        let mut b = crate::graph::GraphBuilder::new();
        b.edge("a", "b", None).edge("c", "d", None).edge("b", "c", None);
        let k = clique_complex(&b.build(), None);
        // order: a b c d | ab bc cd
        let values = [0.0, 0.0, 0.0, 0.0, 1.0, 2.0, 1.0].map(f).to_vec();
        let fc = FilteredComplex::new(k, values).unwrap();
        let d = cornerpoints(&fc, 0).unwrap();
        assert_eq!(d, diagram(0, &[(0.0, 1.0, 2), (0.0, 2.0, 1)], &[(0.0, 1)]));
    }

    #[test]
    fn isolated_vertex_is_born_at_neg_inf() {
        let d = cornerpoints(&filter_clique(&parse_graph("v").unwrap(), None).unwrap(), 0).unwrap();
        assert_eq!(d.points, vec![]);
        assert_eq!(
            d.essential,
            vec![EssentialPoint {
                birth: ExtReal::NegInf,
                multiplicity: 1
            }]
        );
    }

    #[test]
    fn weighted_edge_has_one_component() {
        let d = cornerpoints(&filter_clique(&parse_graph("a b 3").unwrap(), None).unwrap(), 0).unwrap();
        assert_eq!(d, diagram(0, &[], &[(3.0, 1)]));
    }

    #[test]
    fn non_monotone_input_is_rejected() {
        let k = clique_complex(&WeightedGraph::complete(2), None);
        let fc = FilteredComplex::new(k, vec![f(0.0), f(2.0), f(1.0)]).unwrap();
        assert!(matches!(reduce(&fc, 0), Err(Error::NonMonotone { .. })));
    }

    #[test]
    fn diagram_rejects_degenerate_points() {
        assert!(PersistenceDiagram::from_pairs(0, [(f(1.0), f(1.0))], []).is_err());
        let mut d = diagram(0, &[(0.0, 1.0, 1)], &[]);
        d.points[0].multiplicity = 0;
        assert!(d.normalized().is_err());
    }

    #[test]
    fn extended_dispatch() {
        let g = parse_graph("a b 1\nb c 2").unwrap();
        let pair = extended_pair(&g, None).unwrap();
        let ext = ExtendedPersistence::compute(&pair, 1).unwrap();
        for (u, v) in [(0.5, 1.5), (1.0, 3.0), (-1.0, 0.0)] {
            assert_eq!(ext.pbn(0, u, v), ext.ascending[0].pbn(PbnQuery::new(u, v).unwrap()));
        }
        for (u, v) in [(1.5, 0.5), (3.0, 1.0), (2.5, -4.0)] {
            assert_eq!(ext.pbn(0, u, v), ext.descending[0].pbn(PbnQuery::new(-u, -v).unwrap()));
        }
        // diagonal: sublevel Betti number of the ascending filtration
        assert_eq!(ext.pbn(0, 1.5, 1.5), 1);
        assert_eq!(ext.pbn(0, 2.0, 2.0), 1);
        assert_eq!(ext.pbn(0, 0.0, 0.0), 0);
        assert_eq!(extended_pbn(&pair, 0, 1.5, 0.5).unwrap(), ext.pbn(0, 1.5, 0.5));
    }

    #[test]
    fn sample_axis_brackets_critical_values() {
        assert_eq!(sample_axis(&[]), vec![0.0]);
        assert_eq!(sample_axis(&[2.0]), vec![1.0, 2.0, 3.0]);
        assert_eq!(sample_axis(&[0.0, 1.0, 3.0]), vec![-1.0, 0.0, 0.5, 1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn csv_round_trip() {
        let d = vec![
            PersistenceDiagram::from_pairs(0, [(ExtReal::NegInf, ExtReal::Finite(2.5)); 2], [ExtReal::Finite(1.0)]).unwrap(),
            PersistenceDiagram::empty(1),
            PersistenceDiagram::from_pairs(2, [], [ExtReal::Finite(-0.125)]).unwrap(),
        ];
        let mut buf = Vec::new();
        write_diagrams_csv(&d, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "dimension,birth,death,multiplicity\n0,-inf,2.5,2\n0,1,inf,1\n2,-0.125,inf,1\n"
        );
        assert_eq!(read_diagrams_csv(&buf[..]).unwrap(), d);
        assert!(read_diagrams_csv(&b"dimension,birth,death,multiplicity\n0,1,x,1\n"[..]).is_err());
    }
}
