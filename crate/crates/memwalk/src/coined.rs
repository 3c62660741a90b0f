//! Coined walks: a per-vertex coin unitary followed by a coined shift.
//!
//! States live on (vertex, coin) pairs of the walked graph, at flat index
//! `vertex * m + coin`. One step is `apply_coin` then `apply_shift`. The
//! shift moves `|v, c>` to `|succ_c(v), gc(v, c)>`, which is a permutation of
//! basis states precisely when the gc table passes
//! [`CoinShiftFunction::validate`].
//!
//! [`build_qwm1`] and [`build_qwm2`] construct the two standard
//! one-step-memory walks on the cycle. Both move a walker whose coin decides
//! the next direction; they differ in how coins are wired to directions.
//! `qwm1` reads its coin as an absolute direction (coin 1 right, coin 2
//! left) and records the direction traveled into the new coin; `qwm2` reads
//! its coin as transmit (keep going) or reflect (turn around) and keeps the
//! coin. `qwm1` carries a position-dependent coin matrix, `qwm2` the plain
//! Hadamard everywhere.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::graph::{GraphError, LineGraph, RegularDigraph, VertexId};
use crate::partition::{CoinShiftFunction, ValidationReport, VertexPartition};
use crate::Evolution;

/// Tolerance for operator-level identities (unitarity of coins).
pub const UNITARITY_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum CoinError {
    #[error("coin block {index} is {rows}x{cols}, expected square of degree {degree}")]
    BlockShape {
        index: usize,
        rows: usize,
        cols: usize,
        degree: usize,
    },
    #[error("coin block {index} deviates from unitarity by {deviation:.3e}")]
    NotUnitary { index: usize, deviation: f64 },
    #[error("no coin blocks supplied")]
    Empty,
}

#[derive(Debug, Error)]
pub enum WalkError {
    #[error("partition invalid:\n{0}")]
    InvalidPartition(ValidationReport),
    #[error("coin shift table invalid:\n{0}")]
    InvalidCoinShift(ValidationReport),
    #[error("coin degree {got} does not match graph degree {expected}")]
    CoinDegree { got: usize, expected: usize },
    #[error("{got} per-vertex coin blocks for {expected} vertices")]
    CoinCount { got: usize, expected: usize },
}

#[derive(Debug, Error)]
pub enum StateError {
    #[error("state has dimension {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
}

#[derive(Debug, Error)]
pub enum InitialStateError {
    #[error("paired initial states need a depth-1 line graph over a cycle")]
    WrongSpace,
}

/// The coin: one m-by-m unitary per vertex, optionally shared.
#[derive(Debug, Clone)]
pub struct CoinOperator {
    degree: usize,
    blocks: Blocks,
}

#[derive(Debug, Clone)]
enum Blocks {
    Shared(DMatrix<Complex64>),
    PerVertex(Vec<DMatrix<Complex64>>),
}

fn unitarity_deviation_block(m: &DMatrix<Complex64>) -> f64 {
    let d = m.nrows();
    (m.adjoint() * m - DMatrix::<Complex64>::identity(d, d))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

impl CoinOperator {
    /// One block applied at every vertex.
    pub fn shared(block: DMatrix<Complex64>) -> Result<Self, CoinError> {
        Self::check_block(0, &block, block.nrows())?;
        Ok(Self {
            degree: block.nrows(),
            blocks: Blocks::Shared(block),
        })
    }

    /// One block per vertex, indexed by vertex id.
    pub fn per_vertex(blocks: Vec<DMatrix<Complex64>>) -> Result<Self, CoinError> {
        let degree = blocks.first().ok_or(CoinError::Empty)?.nrows();
        for (i, b) in blocks.iter().enumerate() {
            Self::check_block(i, b, degree)?;
        }
        Ok(Self {
            degree,
            blocks: Blocks::PerVertex(blocks),
        })
    }

    fn check_block(index: usize, b: &DMatrix<Complex64>, degree: usize) -> Result<(), CoinError> {
        if b.nrows() != degree || b.ncols() != degree {
            return Err(CoinError::BlockShape {
                index,
                rows: b.nrows(),
                cols: b.ncols(),
                degree,
            });
        }
        let deviation = unitarity_deviation_block(b);
        if deviation > UNITARITY_TOL {
            return Err(CoinError::NotUnitary { index, deviation });
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of per-vertex blocks, `None` for a shared coin.
    pub fn vertex_count(&self) -> Option<usize> {
        match &self.blocks {
            Blocks::Shared(_) => None,
            Blocks::PerVertex(v) => Some(v.len()),
        }
    }

    /// The block applied at `v`.
    pub fn block(&self, v: VertexId) -> &DMatrix<Complex64> {
        match &self.blocks {
            Blocks::Shared(b) => b,
            Blocks::PerVertex(v_blocks) => &v_blocks[v],
        }
    }
}

/// The 2x2 Hadamard coin.
pub fn hadamard2() -> DMatrix<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(-s, 0.0),
        ],
    )
}

/// The Hadamard coin with both rows and columns interchanged: the block the
/// `qwm1` walk applies at vertices whose last move went left.
pub fn hadamard2_swapped() -> DMatrix<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(-s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(s, 0.0),
        ],
    )
}

/// Reflection about the uniform coin state, for any degree.
pub fn grover(m: usize) -> DMatrix<Complex64> {
    let w = 2.0 / m as f64;
    DMatrix::from_fn(m, m, |j, k| {
        Complex64::new(if j == k { w - 1.0 } else { w }, 0.0)
    })
}

/// Amplitudes over (vertex, coin) pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinedState {
    amps: Vec<Complex64>,
}

impl CoinedState {
    pub fn zero(dim: usize) -> Self {
        Self {
            amps: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Self {
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn set(&mut self, index: usize, value: Complex64) {
        self.amps[index] = value;
    }

    pub fn norm(&self) -> f64 {
        self.amps
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// A coined walk: walked graph, partition, gc table, and coin.
#[derive(Debug, Clone)]
pub struct CoinedWalk {
    graph: Arc<RegularDigraph>,
    partition: VertexPartition,
    shift: CoinShiftFunction,
    coin: CoinOperator,
    /// Shift permutation: basis index `i` moves to `dest[i]`.
    dest: Vec<usize>,
}

impl CoinedWalk {
    /// Validates the partition, the gc table against it, and the coin shape.
    pub fn new(
        partition: VertexPartition,
        shift: CoinShiftFunction,
        coin: CoinOperator,
    ) -> Result<Self, WalkError> {
        let graph = Arc::clone(partition.graph());
        let report = partition.validate();
        if !report.is_valid() {
            return Err(WalkError::InvalidPartition(report));
        }
        let report = shift.validate(&partition);
        if !report.is_valid() {
            return Err(WalkError::InvalidCoinShift(report));
        }
        if coin.degree() != graph.degree() {
            return Err(WalkError::CoinDegree {
                got: coin.degree(),
                expected: graph.degree(),
            });
        }
        if let Some(count) = coin.vertex_count() {
            if count != graph.n_vertices() {
                return Err(WalkError::CoinCount {
                    got: count,
                    expected: graph.n_vertices(),
                });
            }
        }
        let m = graph.degree();
        let dest: Vec<usize> = (0..graph.n_vertices() * m)
            .map(|i| {
                let (v, c) = (i / m, i % m);
                partition.successor(v, c) * m + shift.get(v, c)
            })
            .collect();
        // A clean gc report guarantees this is a permutation.
        debug_assert!({
            let mut seen = vec![false; dest.len()];
            dest.iter().all(|&d| !std::mem::replace(&mut seen[d], true))
        });
        Ok(Self {
            graph,
            partition,
            shift,
            coin,
            dest,
        })
    }

    pub fn graph(&self) -> &Arc<RegularDigraph> {
        &self.graph
    }

    pub fn partition(&self) -> &VertexPartition {
        &self.partition
    }

    pub fn shift(&self) -> &CoinShiftFunction {
        &self.shift
    }

    pub fn coin(&self) -> &CoinOperator {
        &self.coin
    }

    pub fn degree(&self) -> usize {
        self.graph.degree()
    }

    pub fn dim(&self) -> usize {
        self.graph.n_vertices() * self.graph.degree()
    }

    /// Flat index of `|v, c>`.
    pub fn state_index(&self, v: VertexId, c: usize) -> usize {
        v * self.graph.degree() + c
    }

    /// The basis state `|v, c>`.
    pub fn basis_state(&self, v: VertexId, c: usize) -> CoinedState {
        let mut s = CoinedState::zero(self.dim());
        s.set(self.state_index(v, c), Complex64::new(1.0, 0.0));
        s
    }

    fn check_dim(&self, s: &CoinedState) -> Result<(), StateError> {
        if s.dim() != self.dim() {
            return Err(StateError::DimensionMismatch {
                got: s.dim(),
                expected: self.dim(),
            });
        }
        Ok(())
    }

    /// Apply each vertex's coin block to its coin subspace.
    pub fn apply_coin(&self, s: &CoinedState) -> Result<CoinedState, StateError> {
        self.check_dim(s)?;
        let m = self.graph.degree();
        let mut out = vec![Complex64::new(0.0, 0.0); s.dim()];
        for v in 0..self.graph.n_vertices() {
            let block = self.coin.block(v);
            let base = v * m;
            for i in 0..m {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..m {
                    acc += block[(i, j)] * s.amps[base + j];
                }
                out[base + i] = acc;
            }
        }
        Ok(CoinedState::from_amplitudes(out))
    }

    /// Move every `|v, c>` to `|succ_c(v), gc(v, c)>`.
    pub fn apply_shift(&self, s: &CoinedState) -> Result<CoinedState, StateError> {
        self.check_dim(s)?;
        let mut out = vec![Complex64::new(0.0, 0.0); s.dim()];
        for (i, &d) in self.dest.iter().enumerate() {
            out[d] = s.amps[i];
        }
        Ok(CoinedState::from_amplitudes(out))
    }

    /// One step: coin, then shift.
    pub fn step(&self, s: &CoinedState) -> Result<CoinedState, StateError> {
        self.apply_shift(&self.apply_coin(s)?)
    }
}

impl Evolution for CoinedWalk {
    fn dim(&self) -> usize {
        self.dim()
    }

    fn evolve(&self, amps: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(amps.len(), self.dim(), "evolve expects a full state");
        let s = CoinedState::from_amplitudes(amps.to_vec());
        self.step(&s).expect("dimension checked").amps
    }
}

/// Probability of each current base-graph position: coin amplitudes are
/// summed in quadrature per walked-graph vertex, then vertices sharing an
/// endpoint pool their mass.
pub fn position_distribution(s: &CoinedState, line: &LineGraph) -> Result<Vec<f64>, StateError> {
    let n = line.graph().n_vertices();
    let m = line.graph().degree();
    if s.dim() != n * m {
        return Err(StateError::DimensionMismatch {
            got: s.dim(),
            expected: n * m,
        });
    }
    let mut p = vec![0.0; line.base().n_vertices()];
    for v in 0..n {
        let mass: f64 = (0..m).map(|c| s.amps[v * m + c].norm_sqr()).sum();
        p[line.position(v)] += mass;
    }
    Ok(p)
}

/// Check that `line` is the depth-1 unfolding of a cycle, as produced by the
/// qwm builders.
fn depth_one_cycle(line: &LineGraph) -> Result<usize, InitialStateError> {
    let n = line.base().n_vertices();
    if line.depth() != 1 || line.base().degree() != 2 {
        return Err(InitialStateError::WrongSpace);
    }
    for x in 0..n {
        if line.base().arc_index(x, (x + 1) % n).is_none()
            || line.base().arc_index(x, (x + n - 1) % n).is_none()
        {
            return Err(InitialStateError::WrongSpace);
        }
    }
    Ok(n)
}

/// The paired two-vertex initial state in the `qwm1` basis: amplitudes
/// `[a, b, a', b']` on `|x-1,x>|1>`, `|x-1,x>|2>`, `|x+1,x>|1>`,
/// `|x+1,x>|2>` for `x = origin`.
pub fn qwm1_initial(
    line: &LineGraph,
    origin: VertexId,
    amps: [Complex64; 4],
) -> Result<CoinedState, InitialStateError> {
    let n = depth_one_cycle(line)?;
    let x = origin % n;
    let v_right = line.base().arc_index((x + n - 1) % n, x).unwrap();
    let v_left = line.base().arc_index((x + 1) % n, x).unwrap();
    let mut s = CoinedState::zero(line.graph().n_vertices() * 2);
    s.set(v_right * 2, amps[0]);
    s.set(v_right * 2 + 1, amps[1]);
    s.set(v_left * 2, amps[2]);
    s.set(v_left * 2 + 1, amps[3]);
    Ok(s)
}

/// The same physical state in the `qwm2` basis. The two walks wire coins to
/// arcs differently at vertices whose last move went left, so the third and
/// fourth amplitudes trade places; with this pairing the two walks track
/// each other step for step.
pub fn qwm2_initial(
    line: &LineGraph,
    origin: VertexId,
    amps: [Complex64; 4],
) -> Result<CoinedState, InitialStateError> {
    qwm1_initial(line, origin, [amps[0], amps[1], amps[3], amps[2]])
}

/// The absolute-direction one-step-memory walk on the `n`-cycle (`n >= 4`):
/// coin 1 moves right, coin 2 moves left, and the new coin records the
/// direction of the move that led into the source vertex. The coin matrix is
/// the Hadamard at right-moving vertices and its swapped form at left-moving
/// ones.
pub fn build_qwm1(n: usize) -> Result<(CoinedWalk, LineGraph), GraphError> {
    let (line, right_moving) = qwm_line(n)?;
    let lg = line.graph();
    let nv = lg.n_vertices();
    let cycle = line.base();
    let n = cycle.n_vertices();

    let mut rows = Vec::with_capacity(nv);
    let mut gc = Vec::with_capacity(nv * 2);
    let mut coins = Vec::with_capacity(nv);
    for (v, &rightward) in right_moving.iter().enumerate() {
        let b = line.position(v);
        let right = cycle.arc_index(b, (b + 1) % n).unwrap();
        let left = cycle.arc_index(b, (b + n - 1) % n).unwrap();
        rows.push(vec![right, left]);
        let record = if rightward { 0 } else { 1 };
        gc.push(record);
        gc.push(record);
        coins.push(if rightward {
            hadamard2()
        } else {
            hadamard2_swapped()
        });
    }
    let partition = VertexPartition::new(Arc::clone(lg), rows).expect("builder rows are in range");
    let shift = CoinShiftFunction::new(nv, 2, gc).expect("builder table is dense");
    let coin = CoinOperator::per_vertex(coins).expect("builder coins are unitary");
    let walk = CoinedWalk::new(partition, shift, coin).expect("qwm1 construction is valid");
    Ok((walk, line))
}

/// The transmit/reflect one-step-memory walk on the `n`-cycle (`n >= 4`):
/// coin 1 continues in the direction of the last move, coin 2 turns around,
/// the coin survives the move unchanged, and every vertex applies the
/// Hadamard. Both successor maps are unions of directed cycles.
pub fn build_qwm2(n: usize) -> Result<(CoinedWalk, LineGraph), GraphError> {
    let (line, _) = qwm_line(n)?;
    let lg = line.graph();
    let nv = lg.n_vertices();
    let cycle = line.base();
    let n = cycle.n_vertices();

    let mut rows = Vec::with_capacity(nv);
    let mut gc = Vec::with_capacity(nv * 2);
    for v in 0..nv {
        let steps = line.path(v).steps();
        let (a, b) = (steps[0], steps[1]);
        let transmit = cycle.arc_index(b, (2 * b + n - a) % n).unwrap();
        let reflect = cycle.arc_index(b, a).unwrap();
        rows.push(vec![transmit, reflect]);
        gc.push(0);
        gc.push(1);
    }
    let partition = VertexPartition::new(Arc::clone(lg), rows).expect("builder rows are in range");
    let shift = CoinShiftFunction::new(nv, 2, gc).expect("builder table is dense");
    let coin = CoinOperator::shared(hadamard2()).expect("hadamard is unitary");
    let walk = CoinedWalk::new(partition, shift, coin).expect("qwm2 construction is valid");
    Ok((walk, line))
}

/// Depth-1 unfolding of the cycle plus a per-vertex flag for "last move went
/// right".
fn qwm_line(n: usize) -> Result<(LineGraph, Vec<bool>), GraphError> {
    if n < 4 {
        return Err(GraphError::TooFewVertices { got: n, min: 4 });
    }
    let line = LineGraph::with_depth(RegularDigraph::cycle(n)?, 1)?;
    let right_moving: Vec<bool> = (0..line.graph().n_vertices())
        .map(|v| {
            let steps = line.path(v).steps();
            steps[1] == (steps[0] + 1) % n
        })
        .collect();
    Ok((line, right_moving))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    /// Vertex of L C_n decoding to the walk (a, b).
    fn lv(line: &LineGraph, a: usize, b: usize) -> usize {
        line.base().arc_index(a, b).unwrap()
    }

    #[test]
    fn coin_operator_rejects_non_unitary_blocks() {
        let bad = DMatrix::from_row_slice(
            2,
            2,
            &[c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)],
        );
        assert!(matches!(
            CoinOperator::shared(bad),
            Err(CoinError::NotUnitary { index: 0, .. })
        ));
    }

    #[test]
    fn hadamard_coin_splits_a_basis_state() {
        let (walk, line) = build_qwm2(8).unwrap();
        let v = lv(&line, 2, 3);
        let s = walk.apply_coin(&walk.basis_state(v, 0)).unwrap();
        assert!(close(s.amplitude(walk.state_index(v, 0)), c64(S, 0.0)));
        assert!(close(s.amplitude(walk.state_index(v, 1)), c64(S, 0.0)));
        // Coin acts within the vertex: everything else stays zero.
        let elsewhere: f64 = (0..s.dim())
            .filter(|&i| i / 2 != v)
            .map(|i| s.amplitude(i).norm_sqr())
            .sum();
        assert!(elsewhere < 1e-30);
    }

    #[test]
    fn identity_coin_leaves_states_alone() {
        let (qwm2, _) = build_qwm2(8).unwrap();
        let coin = CoinOperator::shared(DMatrix::identity(2, 2)).unwrap();
        let walk = CoinedWalk::new(
            qwm2.partition().clone(),
            qwm2.shift().clone(),
            coin,
        )
        .unwrap();
        let mut s = CoinedState::zero(walk.dim());
        s.set(5, c64(0.6, 0.0));
        s.set(11, c64(0.0, 0.8));
        let out = walk.apply_coin(&s).unwrap();
        assert_eq!(out.amplitudes(), s.amplitudes());
    }

    #[test]
    fn qwm1_left_block_flips_the_sign_of_coin_one() {
        let (walk, line) = build_qwm1(8).unwrap();
        let v = lv(&line, 4, 3); // last move went left
        let s = walk.apply_coin(&walk.basis_state(v, 0)).unwrap();
        assert!(close(s.amplitude(walk.state_index(v, 0)), c64(-S, 0.0)));
        assert!(close(s.amplitude(walk.state_index(v, 1)), c64(S, 0.0)));
    }

    #[test]
    fn qwm2_shift_transmits_and_reflects() {
        let (walk, line) = build_qwm2(8).unwrap();
        let v = lv(&line, 2, 3);
        // Transmit: keep going right, coin kept.
        let s = walk.apply_shift(&walk.basis_state(v, 0)).unwrap();
        assert!(close(
            s.amplitude(walk.state_index(lv(&line, 3, 4), 0)),
            c64(1.0, 0.0)
        ));
        // Reflect: turn around, coin kept.
        let s = walk.apply_shift(&walk.basis_state(v, 1)).unwrap();
        assert!(close(
            s.amplitude(walk.state_index(lv(&line, 3, 2), 1)),
            c64(1.0, 0.0)
        ));
    }

    #[test]
    fn qwm1_shift_records_source_direction() {
        let (walk, line) = build_qwm1(8).unwrap();
        // From (3,4), coin 2 moves left to (4,3); the new coin remembers
        // that (3,4) was a rightward move.
        let s = walk
            .apply_shift(&walk.basis_state(lv(&line, 3, 4), 1))
            .unwrap();
        assert!(close(
            s.amplitude(walk.state_index(lv(&line, 4, 3), 0)),
            c64(1.0, 0.0)
        ));
        // From (4,3), coin 1 moves right to (3,4); the new coin remembers a
        // leftward move.
        let s = walk
            .apply_shift(&walk.basis_state(lv(&line, 4, 3), 0))
            .unwrap();
        assert!(close(
            s.amplitude(walk.state_index(lv(&line, 3, 4), 1)),
            c64(1.0, 0.0)
        ));
    }

    #[test]
    fn one_step_by_hand() {
        let (walk, line) = build_qwm2(8).unwrap();
        let v = lv(&line, 2, 3);
        let mut s = CoinedState::zero(walk.dim());
        s.set(walk.state_index(v, 0), c64(S, 0.0));
        s.set(walk.state_index(v, 1), c64(0.0, S));
        let out = walk.step(&s).unwrap();
        // Hadamard sends (1, i)/sqrt2 to ((1+i)/2, (1-i)/2); the shift then
        // routes coin 1 to (3,4) and coin 2 to (3,2).
        assert!(close(
            out.amplitude(walk.state_index(lv(&line, 3, 4), 0)),
            c64(0.5, 0.5)
        ));
        assert!(close(
            out.amplitude(walk.state_index(lv(&line, 3, 2), 1)),
            c64(0.5, -0.5)
        ));
        assert!((out.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_steps_is_the_identity() {
        let (walk, line) = build_qwm2(8).unwrap();
        let s = qwm2_initial(&line, 3, [c64(0.5, 0.0), c64(0.0, 0.5), c64(0.5, 0.0), c64(0.0, 0.5)])
            .unwrap();
        // Stepping zero times means not calling step; the state is intact
        // and normalized.
        assert!((s.norm() - 1.0).abs() < 1e-12);
        let _ = walk;
    }

    #[test]
    fn norm_is_preserved_over_a_hundred_steps() {
        let (walk, line) = build_qwm2(64).unwrap();
        let mut s = qwm2_initial(&line, 0, [c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)])
            .unwrap();
        for _ in 0..100 {
            s = walk.step(&s).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn builder_tables_match_their_definitions() {
        let n = 8;
        let (w1, line) = build_qwm1(n).unwrap();
        let (w2, _) = build_qwm2(n).unwrap();
        for x in 0..n {
            let vr = lv(&line, x, (x + 1) % n); // rightward move into x+1
            let vl = lv(&line, (x + 1) % n, x); // leftward move into x
            // qwm1: gc depends only on the source vertex's direction.
            assert_eq!(w1.shift().get(vr, 0), 0);
            assert_eq!(w1.shift().get(vr, 1), 0);
            assert_eq!(w1.shift().get(vl, 0), 1);
            assert_eq!(w1.shift().get(vl, 1), 1);
            // qwm1: coin 1 goes right, coin 2 goes left, from anywhere.
            let pos = (x + 1) % n;
            assert_eq!(w1.partition().successor(vr, 0), lv(&line, pos, (pos + 1) % n));
            assert_eq!(w1.partition().successor(vr, 1), lv(&line, pos, x));
            // qwm2: transmit continues, reflect returns. On a rightward
            // arc that matches qwm1; on a leftward arc the coins swap
            // roles relative to absolute direction.
            assert_eq!(w2.partition().successor(vr, 0), lv(&line, pos, (pos + 1) % n));
            assert_eq!(w2.partition().successor(vr, 1), lv(&line, pos, x));
            assert_eq!(w2.partition().successor(vl, 0), lv(&line, x, (x + n - 1) % n));
            assert_eq!(w2.partition().successor(vl, 1), lv(&line, x, (x + 1) % n));
            assert_eq!(w2.shift().get(vr, 0), 0);
            assert_eq!(w2.shift().get(vr, 1), 1);
            // qwm1 coin blocks are position dependent, qwm2's are not.
            assert_eq!(w1.coin().block(vr), &hadamard2());
            assert_eq!(w1.coin().block(vl), &hadamard2_swapped());
            assert_eq!(w2.coin().block(vr), &hadamard2());
            assert_eq!(w2.coin().block(vl), &hadamard2());
        }
        assert!(matches!(
            build_qwm1(3),
            Err(GraphError::TooFewVertices { got: 3, min: 4 })
        ));
    }

    #[test]
    fn qwm2_partition_is_dicycle_qwm1_is_not() {
        let (w1, _) = build_qwm1(8).unwrap();
        let (w2, _) = build_qwm2(8).unwrap();
        assert!(w1.partition().validate().is_valid());
        assert!(w2.partition().validate().is_valid());
        assert!(w1.shift().validate(w1.partition()).is_valid());
        assert!(w2.shift().validate(w2.partition()).is_valid());
        assert_eq!(w2.partition().dicycle_classes(), vec![true, true]);
        // Both qwm1 classes funnel two sources into each target.
        assert_eq!(w1.partition().dicycle_classes(), vec![false, false]);
    }

    #[test]
    fn position_distribution_pools_coins_and_memory() {
        let (walk, line) = build_qwm2(8).unwrap();
        // Basis state: all mass at its current position.
        let p = position_distribution(&walk.basis_state(lv(&line, 2, 3), 1), &line).unwrap();
        assert_eq!(p[3], 1.0);
        assert_eq!(p.iter().sum::<f64>(), 1.0);
        // Uniform superposition over both memories and coins at position 3.
        let mut s = CoinedState::zero(walk.dim());
        for v in [lv(&line, 2, 3), lv(&line, 4, 3)] {
            for c in 0..2 {
                s.set(walk.state_index(v, c), c64(0.5, 0.0));
            }
        }
        let p = position_distribution(&s, &line).unwrap();
        assert!((p[3] - 1.0).abs() < 1e-12);
        // Wrong dimension is an error, not a panic.
        let tiny = CoinedState::zero(4);
        assert!(matches!(
            position_distribution(&tiny, &line),
            Err(StateError::DimensionMismatch { got: 4, .. })
        ));
    }

    #[test]
    fn invalid_gc_is_rejected_at_construction() {
        let (w2, _) = build_qwm2(8).unwrap();
        let nv = w2.graph().n_vertices();
        let gc = CoinShiftFunction::new(nv, 2, vec![0; nv * 2]).unwrap();
        match CoinedWalk::new(w2.partition().clone(), gc, w2.coin().clone()) {
            Err(WalkError::InvalidCoinShift(report)) => assert!(!report.is_valid()),
            other => panic!("expected invalid coin shift, got {other:?}"),
        }
    }

    proptest! {
        /// The shift is a basis permutation exactly when the gc table
        /// validates; a corrupted table yields a non-bijective map.
        #[test]
        fn shift_bijective_iff_gc_valid(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(4..8);
            let m = rng.gen_range(2..4).min(n - 1);
            let g = Arc::new(crate::fixtures::regular_digraph(&mut rng, n, m));
            let p = crate::fixtures::partition(&mut rng, &g);
            let gc = crate::fixtures::coin_shift(&mut rng, &p);

            let dest = |table: &CoinShiftFunction| -> Vec<usize> {
                (0..n * m)
                    .map(|i| p.successor(i / m, i % m) * m + table.get(i / m, i % m))
                    .collect()
            };
            let is_bijection = |d: &[usize]| {
                let mut seen = vec![false; d.len()];
                d.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
            };

            prop_assert!(gc.validate(&p).is_valid());
            prop_assert!(is_bijection(&dest(&gc)));

            let v = rng.gen_range(0..n);
            let c = rng.gen_range(0..m);
            let mut table: Vec<usize> = (0..n * m).map(|i| gc.get(i / m, i % m)).collect();
            table[v * m + c] = (table[v * m + c] + 1) % m;
            let bad = CoinShiftFunction::new(n, m, table).unwrap();
            prop_assert!(!bad.validate(&p).is_valid());
            prop_assert!(!is_bijection(&dest(&bad)));
        }

        /// Random states keep their norm through a step.
        #[test]
        fn step_preserves_norm(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = Arc::new(crate::fixtures::regular_digraph(&mut rng, 6, 2));
            let walk = crate::fixtures::coined_walk(&mut rng, &g, false);
            let amps = crate::fixtures::unit_vector(&mut rng, walk.dim());
            let s = CoinedState::from_amplitudes(amps);
            let out = walk.step(&s).unwrap();
            prop_assert!((out.norm() - 1.0).abs() < 1e-12);
        }
    }
}
