//! Arc partitions, coin shift tables, and arc successor maps.
//!
//! A coined walk on an m-regular digraph needs the arcs split into `m`
//! classes with exactly one out-arc per vertex in each class; class `k` then
//! acts as the successor map "move along your coin-`k` arc". The companion
//! table `gc` decides which coin the walker holds after moving. The shift is
//! unitary exactly when, at every target vertex, the incoming (source, coin)
//! pairs are handed the `m` coins one each; the validators below check that
//! and nothing else, reporting violations instead of failing.
//!
//! A Szegedy walk instead permutes arcs directly: an [`ArcSuccessor`] is a
//! permutation `next` of arc indices with head-to-tail chaining,
//! `head(a) == tail(next(a))`. Its orbit structure is exposed by
//! [`ArcSuccessor::cycles`].
//!
//! Coins are indexed `0..m` internally and printed one-based.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{ArcId, RegularDigraph, VertexId};

#[derive(Debug, Error)]
pub enum ShapeError {
    #[error("expected {expected} rows, got {got}")]
    RowCount { got: usize, expected: usize },
    #[error("row {row} has {got} entries, expected {expected}")]
    RowLength {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("entry for vertex {vertex} references vertex {target}, graph has {n}")]
    TargetOutOfRange {
        vertex: VertexId,
        target: VertexId,
        n: usize,
    },
    #[error("table has {got} entries, expected {expected}")]
    TableSize { got: usize, expected: usize },
    #[error("successor list has {got} entries, graph has {expected} arcs")]
    ArcCount { got: usize, expected: usize },
}

/// One semantic defect found by a validator. `coin` fields are zero-based;
/// the display form is one-based to match the on-disk formats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// The class-`coin` successor of `vertex` is not an out-neighbor.
    NotAnArc {
        vertex: VertexId,
        coin: usize,
        target: VertexId,
    },
    /// Two classes claim the same out-arc of `vertex`.
    SharedOutArc {
        vertex: VertexId,
        first_coin: usize,
        second_coin: usize,
        target: VertexId,
    },
    /// A gc output is not a coin index.
    CoinOutOfRange {
        vertex: VertexId,
        coin: usize,
        value: usize,
    },
    /// The coins arriving at `vertex` are not one of each: the shift built
    /// from this table would not be a permutation of basis states.
    ArrivalCoinsNotDistinct {
        vertex: VertexId,
        /// Sorted one-based multiset of arriving coin outputs.
        got: Vec<usize>,
    },
    /// The table's dimensions do not match the partition it is checked
    /// against.
    ShapeMismatch {
        got_vertices: usize,
        got_coins: usize,
        expected_vertices: usize,
        expected_coins: usize,
    },
    /// An arc successor image is out of range.
    ImageOutOfRange { arc: ArcId, image: usize },
    /// Two arcs map to the same image: not a permutation.
    NotInjective {
        first_arc: ArcId,
        second_arc: ArcId,
        image: ArcId,
    },
    /// `head(arc) != tail(next(arc))`: successive arcs do not chain.
    ChainingBroken {
        arc: ArcId,
        head: VertexId,
        image: ArcId,
        image_tail: VertexId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotAnArc {
                vertex,
                coin,
                target,
            } => write!(
                f,
                "vertex {vertex}: coin {} successor {target} is not an out-neighbor",
                coin + 1
            ),
            Violation::SharedOutArc {
                vertex,
                first_coin,
                second_coin,
                target,
            } => write!(
                f,
                "vertex {vertex}: coins {} and {} both claim the arc to {target}",
                first_coin + 1,
                second_coin + 1
            ),
            Violation::CoinOutOfRange {
                vertex,
                coin,
                value,
            } => write!(
                f,
                "vertex {vertex}: gc(coin {}) = {} is not a coin index",
                coin + 1,
                value + 1
            ),
            Violation::ArrivalCoinsNotDistinct { vertex, got } => {
                let coins: Vec<String> = got.iter().map(|c| c.to_string()).collect();
                write!(
                    f,
                    "vertex {vertex}: arriving coins {{{}}} are not one of each",
                    coins.join(",")
                )
            }
            Violation::ShapeMismatch {
                got_vertices,
                got_coins,
                expected_vertices,
                expected_coins,
            } => write!(
                f,
                "table is {got_vertices} x {got_coins}, graph needs {expected_vertices} x {expected_coins}"
            ),
            Violation::ImageOutOfRange { arc, image } => {
                write!(f, "arc {arc}: image {image} is out of range")
            }
            Violation::NotInjective {
                first_arc,
                second_arc,
                image,
            } => write!(
                f,
                "arcs {first_arc} and {second_arc} both map to {image}: not a permutation"
            ),
            Violation::ChainingBroken {
                arc,
                head,
                image,
                image_tail,
            } => write!(
                f,
                "arc {arc} ends at {head} but its successor {image} starts at {image_tail}"
            ),
        }
    }
}

/// Outcome of a validator: empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    /// Vertices named by any violation, deduplicated, in report order.
    pub fn named_vertices(&self) -> Vec<VertexId> {
        let mut out = Vec::new();
        for v in &self.violations {
            let vertex = match v {
                Violation::NotAnArc { vertex, .. }
                | Violation::SharedOutArc { vertex, .. }
                | Violation::CoinOutOfRange { vertex, .. }
                | Violation::ArrivalCoinsNotDistinct { vertex, .. } => Some(*vertex),
                _ => None,
            };
            if let Some(x) = vertex {
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        out
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A split of the arcs into `m` spanning classes with one out-arc per vertex
/// each: equivalently, `m` successor maps whose arc sets tile the graph.
#[derive(Debug, Clone)]
pub struct VertexPartition {
    graph: Arc<RegularDigraph>,
    /// successor of vertex `v` under coin `c`, at `v * m + c`.
    succ: Vec<VertexId>,
}

impl VertexPartition {
    /// Build from per-vertex rows: row `v` lists the successors of `v` under
    /// coins `1..=m`. Only shape is checked here; use
    /// [`validate`](Self::validate) for the semantic conditions.
    pub fn new(graph: Arc<RegularDigraph>, rows: Vec<Vec<VertexId>>) -> Result<Self, ShapeError> {
        let n = graph.n_vertices();
        let m = graph.degree();
        if rows.len() != n {
            return Err(ShapeError::RowCount {
                got: rows.len(),
                expected: n,
            });
        }
        let mut succ = Vec::with_capacity(n * m);
        for (v, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(ShapeError::RowLength {
                    row: v,
                    got: row.len(),
                    expected: m,
                });
            }
            for &t in row {
                if t >= n {
                    return Err(ShapeError::TargetOutOfRange {
                        vertex: v,
                        target: t,
                        n,
                    });
                }
                succ.push(t);
            }
        }
        Ok(Self { graph, succ })
    }

    pub fn graph(&self) -> &Arc<RegularDigraph> {
        &self.graph
    }

    pub fn degree(&self) -> usize {
        self.graph.degree()
    }

    /// Successor of `v` under coin `c` (zero-based).
    pub fn successor(&self, v: VertexId, c: usize) -> VertexId {
        self.succ[v * self.graph.degree() + c]
    }

    /// The arc `(v, successor(v, c))`, when it exists in the graph.
    pub fn arc_of(&self, v: VertexId, c: usize) -> Option<ArcId> {
        self.graph.arc_index(v, self.successor(v, c))
    }

    /// Check that every claimed successor is a real out-neighbor and that no
    /// two coins share an out-arc. For an m-regular graph those two
    /// conditions make the classes tile the arcs.
    pub fn validate(&self) -> ValidationReport {
        let m = self.graph.degree();
        let mut report = ValidationReport::default();
        for v in 0..self.graph.n_vertices() {
            let mut claimed: Vec<(usize, VertexId)> = Vec::with_capacity(m);
            for c in 0..m {
                let t = self.successor(v, c);
                if self.graph.arc_index(v, t).is_none() {
                    report.push(Violation::NotAnArc {
                        vertex: v,
                        coin: c,
                        target: t,
                    });
                    continue;
                }
                if let Some(&(first, _)) = claimed.iter().find(|&&(_, u)| u == t) {
                    report.push(Violation::SharedOutArc {
                        vertex: v,
                        first_coin: first,
                        second_coin: c,
                        target: t,
                    });
                } else {
                    claimed.push((c, t));
                }
            }
        }
        report
    }

    /// Per class: is the class a disjoint union of directed cycles, i.e.
    /// does every vertex also have in-degree one within it? Assumes a valid
    /// partition.
    pub fn dicycle_classes(&self) -> Vec<bool> {
        let n = self.graph.n_vertices();
        let m = self.graph.degree();
        let mut result = Vec::with_capacity(m);
        for c in 0..m {
            let mut indeg = vec![0usize; n];
            for v in 0..n {
                indeg[self.successor(v, c)] += 1;
            }
            result.push(indeg.iter().all(|&d| d == 1));
        }
        result
    }

    /// Class of each arc, when classes are disjoint; `None` entries mark
    /// arcs no class claims. For a valid partition the map is total.
    pub fn arc_classes(&self) -> Vec<Option<usize>> {
        let mut classes = vec![None; self.graph.n_arcs()];
        for v in 0..self.graph.n_vertices() {
            for c in 0..self.graph.degree() {
                if let Some(a) = self.arc_of(v, c) {
                    if classes[a].is_none() {
                        classes[a] = Some(c);
                    }
                }
            }
        }
        classes
    }
}

/// The coin rewrite table `gc`: after moving along its coin-`c` arc out of
/// `v`, the walker holds coin `gc(v, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoinShiftFunction {
    n: usize,
    m: usize,
    /// `gc(v, c)` at `v * m + c`, zero-based coins.
    table: Vec<usize>,
}

impl CoinShiftFunction {
    pub fn new(n: usize, m: usize, table: Vec<usize>) -> Result<Self, ShapeError> {
        if table.len() != n * m {
            return Err(ShapeError::TableSize {
                got: table.len(),
                expected: n * m,
            });
        }
        Ok(Self { n, m, table })
    }

    /// Build from per-vertex rows of zero-based coin outputs.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, ShapeError> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        for (v, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(ShapeError::RowLength {
                    row: v,
                    got: row.len(),
                    expected: m,
                });
            }
        }
        Self::new(n, m, rows.into_iter().flatten().collect())
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn get(&self, v: VertexId, c: usize) -> usize {
        self.table[v * self.m + c]
    }

    /// Check the unitarity condition of the shift built from `(p, self)`:
    /// at every vertex the arriving coin outputs must be `1..=m`, one each.
    /// A failure names the vertex where the arrivals collide.
    pub fn validate(&self, p: &VertexPartition) -> ValidationReport {
        let mut report = ValidationReport::default();
        let g = p.graph();
        if self.n != g.n_vertices() || self.m != g.degree() {
            report.push(Violation::ShapeMismatch {
                got_vertices: self.n,
                got_coins: self.m,
                expected_vertices: g.n_vertices(),
                expected_coins: g.degree(),
            });
            return report;
        }
        for v in 0..self.n {
            for c in 0..self.m {
                if self.get(v, c) >= self.m {
                    report.push(Violation::CoinOutOfRange {
                        vertex: v,
                        coin: c,
                        value: self.get(v, c),
                    });
                }
            }
        }
        if !report.is_valid() {
            return report;
        }
        // Arriving coins per target vertex.
        let mut arrivals: Vec<Vec<usize>> = vec![Vec::with_capacity(self.m); self.n];
        for v in 0..self.n {
            for c in 0..self.m {
                arrivals[p.successor(v, c)].push(self.get(v, c));
            }
        }
        for (v, coins) in arrivals.iter().enumerate() {
            let mut sorted = coins.clone();
            sorted.sort_unstable();
            if sorted != (0..self.m).collect::<Vec<_>>() {
                report.push(Violation::ArrivalCoinsNotDistinct {
                    vertex: v,
                    got: sorted.iter().map(|c| c + 1).collect(),
                });
            }
        }
        report
    }
}

/// A permutation of arc indices with head-to-tail chaining: the shift of a
/// Szegedy walk, or equivalently a tiling of the arcs by directed arc
/// cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSuccessor {
    graph: Arc<RegularDigraph>,
    next: Vec<ArcId>,
}

impl ArcSuccessor {
    pub fn new(graph: Arc<RegularDigraph>, next: Vec<ArcId>) -> Result<Self, ShapeError> {
        if next.len() != graph.n_arcs() {
            return Err(ShapeError::ArcCount {
                got: next.len(),
                expected: graph.n_arcs(),
            });
        }
        Ok(Self { graph, next })
    }

    pub fn graph(&self) -> &Arc<RegularDigraph> {
        &self.graph
    }

    pub fn next(&self, a: ArcId) -> ArcId {
        self.next[a]
    }

    pub fn next_slice(&self) -> &[ArcId] {
        &self.next
    }

    /// Check range, injectivity, and chaining.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n_arcs = self.graph.n_arcs();
        let mut seen: Vec<Option<ArcId>> = vec![None; n_arcs];
        for a in 0..n_arcs {
            let img = self.next[a];
            if img >= n_arcs {
                report.push(Violation::ImageOutOfRange { arc: a, image: img });
                continue;
            }
            match seen[img] {
                Some(first) => report.push(Violation::NotInjective {
                    first_arc: first,
                    second_arc: a,
                    image: img,
                }),
                None => seen[img] = Some(a),
            }
            if self.graph.head(a) != self.graph.tail(img) {
                report.push(Violation::ChainingBroken {
                    arc: a,
                    head: self.graph.head(a),
                    image: img,
                    image_tail: self.graph.tail(img),
                });
            }
        }
        report
    }

    /// Orbit decomposition: every arc in exactly one cycle, cycles ordered
    /// by their smallest arc, each starting at its smallest arc. Meaningful
    /// only when [`validate`](Self::validate) is clean.
    pub fn cycles(&self) -> Vec<Vec<ArcId>> {
        debug_assert!(self.validate().is_valid(), "cycles of a non-permutation");
        let n = self.next.len();
        let mut visited = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut a = start;
            while !visited[a] {
                visited[a] = true;
                cycle.push(a);
                a = self.next[a];
            }
            cycles.push(cycle);
        }
        cycles
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c4() -> Arc<RegularDigraph> {
        Arc::new(RegularDigraph::cycle(4).unwrap())
    }

    #[test]
    fn right_left_split_of_cycle_is_valid_and_dicycle() {
        let g = c4();
        let p = VertexPartition::new(
            Arc::clone(&g),
            vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]],
        )
        .unwrap();
        assert!(p.validate().is_valid());
        assert_eq!(p.dicycle_classes(), vec![true, true]);
        assert_eq!(p.successor(2, 0), 3);
        assert_eq!(p.arc_of(2, 1), g.arc_index(2, 1));
        // Every arc lands in exactly one class.
        let classes = p.arc_classes();
        assert!(classes.iter().all(Option::is_some));
    }

    #[test]
    fn valid_partition_need_not_be_dicycle() {
        let g = c4();
        // Class 0 sends both 0 and 2 to their right neighbor but 1 and 3
        // backwards, giving vertex 1 in-degree 2 within the class.
        let p = VertexPartition::new(
            Arc::clone(&g),
            vec![vec![1, 3], vec![2, 0], vec![1, 3], vec![0, 2]],
        )
        .unwrap();
        assert!(p.validate().is_valid());
        assert_eq!(p.dicycle_classes(), vec![false, false]);
    }

    #[test]
    fn validator_reports_non_arcs_and_shared_arcs() {
        let g = c4();
        // Vertex 0 claims 2 (not a neighbor) and vertex 1 uses the arc to 2
        // twice.
        let p = VertexPartition::new(
            Arc::clone(&g),
            vec![vec![2, 3], vec![2, 2], vec![3, 1], vec![0, 2]],
        )
        .unwrap();
        let report = p.validate();
        assert!(!report.is_valid());
        assert!(report.violations().contains(&Violation::NotAnArc {
            vertex: 0,
            coin: 0,
            target: 2
        }));
        assert!(report.violations().contains(&Violation::SharedOutArc {
            vertex: 1,
            first_coin: 0,
            second_coin: 1,
            target: 2
        }));
        assert_eq!(report.named_vertices(), vec![0, 1]);
    }

    #[test]
    fn partition_shape_errors() {
        let g = c4();
        assert!(matches!(
            VertexPartition::new(Arc::clone(&g), vec![vec![1, 3]; 3]),
            Err(ShapeError::RowCount { got: 3, expected: 4 })
        ));
        assert!(matches!(
            VertexPartition::new(
                Arc::clone(&g),
                vec![vec![1], vec![2, 0], vec![3, 1], vec![0, 2]]
            ),
            Err(ShapeError::RowLength { row: 0, .. })
        ));
        assert!(matches!(
            VertexPartition::new(
                Arc::clone(&g),
                vec![vec![1, 9], vec![2, 0], vec![3, 1], vec![0, 2]]
            ),
            Err(ShapeError::TargetOutOfRange {
                vertex: 0,
                target: 9,
                ..
            })
        ));
    }

    #[test]
    fn constant_gc_breaks_arrival_multiset_at_every_vertex() {
        let g = c4();
        let p = VertexPartition::new(
            Arc::clone(&g),
            vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]],
        )
        .unwrap();
        let gc = CoinShiftFunction::new(4, 2, vec![0; 8]).unwrap();
        let report = gc.validate(&p);
        assert_eq!(report.violations().len(), 4);
        for v in 0..4 {
            assert!(report.violations().contains(
                &Violation::ArrivalCoinsNotDistinct {
                    vertex: v,
                    got: vec![1, 1]
                }
            ));
        }
        // Identity gc is fine for a dicycle partition: each class delivers
        // its own coin exactly once per vertex.
        let gc = CoinShiftFunction::new(4, 2, vec![0, 1, 0, 1, 0, 1, 0, 1]).unwrap();
        assert!(gc.validate(&p).is_valid());
    }

    #[test]
    fn gc_out_of_range_is_reported_before_multisets() {
        let g = c4();
        let p = VertexPartition::new(
            Arc::clone(&g),
            vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]],
        )
        .unwrap();
        let gc = CoinShiftFunction::new(4, 2, vec![0, 5, 0, 1, 0, 1, 0, 1]).unwrap();
        let report = gc.validate(&p);
        assert_eq!(
            report.violations(),
            &[Violation::CoinOutOfRange {
                vertex: 0,
                coin: 1,
                value: 5
            }]
        );
    }

    #[test]
    fn arc_successor_on_dicycle_has_one_cycle() {
        let arcs: Vec<_> = (0..3).map(|x| (x, (x + 1) % 3)).collect();
        let g = Arc::new(RegularDigraph::from_arcs(3, 1, arcs).unwrap());
        // Arc x is (x, x+1); the only chaining successor is arc x+1.
        let f = ArcSuccessor::new(Arc::clone(&g), vec![1, 2, 0]).unwrap();
        assert!(f.validate().is_valid());
        assert_eq!(f.cycles(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn arc_successor_validator_reports_defects() {
        let arcs: Vec<_> = (0..3).map(|x| (x, (x + 1) % 3)).collect();
        let g = Arc::new(RegularDigraph::from_arcs(3, 1, arcs).unwrap());
        let f = ArcSuccessor::new(Arc::clone(&g), vec![1, 1, 7]).unwrap();
        let report = f.validate();
        assert!(report.violations().contains(&Violation::NotInjective {
            first_arc: 0,
            second_arc: 1,
            image: 1
        }));
        assert!(report
            .violations()
            .contains(&Violation::ImageOutOfRange { arc: 2, image: 7 }));
        // Arc 1 = (1,2) followed by arc 1 = (1,2): tail 1 != head 2.
        assert!(report.violations().contains(&Violation::ChainingBroken {
            arc: 1,
            head: 2,
            image: 1,
            image_tail: 1
        }));
    }

    proptest! {
        /// Random partitions and compatible gc tables validate cleanly; one
        /// random gc corruption is caught and names the vertex the corrupted
        /// entry feeds.
        #[test]
        fn random_partition_and_gc_validate(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(4..8);
            let m = rng.gen_range(2..4).min(n - 1);
            let g = Arc::new(crate::fixtures::regular_digraph(&mut rng, n, m));
            let p = crate::fixtures::partition(&mut rng, &g);
            prop_assert!(p.validate().is_valid());
            let gc = crate::fixtures::coin_shift(&mut rng, &p);
            prop_assert!(gc.validate(&p).is_valid());

            // Corrupt one entry to a different coin.
            let v = rng.gen_range(0..n);
            let c = rng.gen_range(0..m);
            let mut table: Vec<usize> =
                (0..n * m).map(|i| gc.get(i / m, i % m)).collect();
            table[v * m + c] = (table[v * m + c] + 1) % m;
            let bad = CoinShiftFunction::new(n, m, table).unwrap();
            let report = bad.validate(&p);
            prop_assert!(!report.is_valid());
            prop_assert!(report.named_vertices().contains(&p.successor(v, c)));
        }

        /// Cycles of a valid arc successor tile the arcs exactly.
        #[test]
        fn cycles_tile_arcs(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = Arc::new(crate::fixtures::regular_digraph(&mut rng, 5, 2));
            let p = crate::fixtures::partition(&mut rng, &g);
            let gc = crate::fixtures::coin_shift(&mut rng, &p);
            let coin = crate::coined::CoinOperator::shared(
                crate::fixtures::reflection_coin(&mut rng, 2),
            )
            .unwrap();
            let walk = crate::coined::CoinedWalk::new(p, gc, coin).unwrap();
            let f = crate::bridge::coined_to_szegedy(&walk).successor;
            prop_assert!(f.validate().is_valid());
            let mut seen: Vec<_> = f.cycles().into_iter().flatten().collect();
            seen.sort_unstable();
            prop_assert_eq!(seen, (0..g.n_arcs()).collect::<Vec<_>>());
        }
    }
}
