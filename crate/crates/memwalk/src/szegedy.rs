//! Walks that live on the arcs of a graph rather than on vertex-coin pairs.
//!
//! A step is a reflection followed by a permutation. The reflection acts
//! independently on each bundle of arcs leaving a common vertex: with unit
//! amplitude vector alpha over the bundle it maps psi to
//! `2 alpha <alpha|psi> - psi`. The permutation then forwards every arc to
//! its successor under an [`ArcSuccessor`], which is required to chain
//! head-to-tail so that amplitude keeps flowing along walks of the graph.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::graph::{ArcId, LineGraph, RegularDigraph, VertexId};
use crate::partition::ArcSuccessor;
use crate::Evolution;

/// Tolerance for the per-vertex normalization check.
pub const NORMALIZATION_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum SzegedyError {
    #[error("expected {expected} arc amplitudes, got {got}")]
    AmplitudeCount { got: usize, expected: usize },
    #[error("expected one row per vertex ({expected}), got {got}")]
    RowCount { got: usize, expected: usize },
    #[error("row for vertex {vertex} has {got} entries, expected {expected}")]
    RowLength {
        vertex: VertexId,
        got: usize,
        expected: usize,
    },
    #[error("amplitudes at vertex {vertex} have squared norm {norm_sqr}, expected 1")]
    NotNormalized { vertex: VertexId, norm_sqr: f64 },
    #[error("probabilities at vertex {vertex} sum to {sum}, expected 1")]
    NotADistribution { vertex: VertexId, sum: f64 },
    #[error("negative probability {value} at vertex {vertex}")]
    NegativeProbability { vertex: VertexId, value: f64 },
    #[error("arc successor fails validation: {0}")]
    InvalidSuccessor(crate::partition::ValidationReport),
    #[error("amplitudes and successor are built on different graphs")]
    GraphMismatch,
    #[error("state has dimension {got}, walk expects {expected}")]
    DimensionMismatch { got: usize, expected: usize },
}

/// One unit amplitude vector per vertex, spread over that vertex's out-arcs.
///
/// Amplitudes are stored per arc id; the bundle belonging to a vertex is the
/// set of its out-arcs in slot order.
#[derive(Debug, Clone)]
pub struct TransitionAmplitudes {
    graph: Arc<RegularDigraph>,
    alpha: Vec<Complex64>,
}

impl TransitionAmplitudes {
    /// Amplitudes indexed by arc id. Each vertex bundle must be normalized.
    pub fn from_arc_amplitudes(
        graph: Arc<RegularDigraph>,
        alpha: Vec<Complex64>,
    ) -> Result<Self, SzegedyError> {
        let this = Self::from_arc_amplitudes_unchecked(graph, alpha)?;
        this.check_normalized()?;
        Ok(this)
    }

    /// Verify that every vertex bundle is a unit vector.
    pub fn check_normalized(&self) -> Result<(), SzegedyError> {
        for v in 0..self.graph.n_vertices() {
            let norm_sqr: f64 = self
                .graph
                .out_arcs(v)
                .iter()
                .map(|&a| self.alpha[a].norm_sqr())
                .sum();
            if (norm_sqr - 1.0).abs() > NORMALIZATION_TOL {
                return Err(SzegedyError::NotNormalized { vertex: v, norm_sqr });
            }
        }
        Ok(())
    }

    /// Like [`Self::from_arc_amplitudes`] but skips the normalization check.
    ///
    /// Walks built from unnormalized bundles are not unitary; this exists so
    /// the defect can be constructed and measured rather than merely named.
    pub fn from_arc_amplitudes_unchecked(
        graph: Arc<RegularDigraph>,
        alpha: Vec<Complex64>,
    ) -> Result<Self, SzegedyError> {
        if alpha.len() != graph.arcs().len() {
            return Err(SzegedyError::AmplitudeCount {
                got: alpha.len(),
                expected: graph.arcs().len(),
            });
        }
        Ok(Self { graph, alpha })
    }

    /// One row per vertex, entries in out-arc slot order.
    pub fn from_vertex_rows(
        graph: Arc<RegularDigraph>,
        rows: Vec<Vec<Complex64>>,
    ) -> Result<Self, SzegedyError> {
        if rows.len() != graph.n_vertices() {
            return Err(SzegedyError::RowCount {
                got: rows.len(),
                expected: graph.n_vertices(),
            });
        }
        let m = graph.degree();
        let mut alpha = vec![Complex64::new(0.0, 0.0); graph.arcs().len()];
        for (v, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(SzegedyError::RowLength {
                    vertex: v,
                    got: row.len(),
                    expected: m,
                });
            }
            for (slot, &a) in graph.out_arcs(v).iter().zip(row.iter()) {
                alpha[*slot] = a;
            }
        }
        Self::from_arc_amplitudes(graph, alpha)
    }

    /// Rows of transition probabilities; amplitudes are their square roots.
    pub fn from_probabilities(
        graph: Arc<RegularDigraph>,
        rows: Vec<Vec<f64>>,
    ) -> Result<Self, SzegedyError> {
        for (v, row) in rows.iter().enumerate() {
            if let Some(&value) = row.iter().find(|p| **p < 0.0) {
                return Err(SzegedyError::NegativeProbability { vertex: v, value });
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-8 {
                return Err(SzegedyError::NotADistribution { vertex: v, sum });
            }
        }
        let rows = rows
            .into_iter()
            .map(|row| row.into_iter().map(|p| Complex64::new(p.sqrt(), 0.0)).collect())
            .collect();
        Self::from_vertex_rows(graph, rows)
    }

    /// Equal weight on every out-arc.
    pub fn uniform(graph: Arc<RegularDigraph>) -> Self {
        let w = 1.0 / (graph.degree() as f64).sqrt();
        let alpha = vec![Complex64::new(w, 0.0); graph.arcs().len()];
        Self { graph, alpha }
    }

    pub fn graph(&self) -> &Arc<RegularDigraph> {
        &self.graph
    }

    pub fn alpha(&self, arc: ArcId) -> Complex64 {
        self.alpha[arc]
    }

    pub fn alphas(&self) -> &[Complex64] {
        &self.alpha
    }

    /// The bundle at `v` in out-arc slot order.
    pub fn vertex_block(&self, v: VertexId) -> Vec<Complex64> {
        self.graph.out_arcs(v).iter().map(|&a| self.alpha[a]).collect()
    }
}

/// Amplitudes over the arcs of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct SzegedyState {
    amps: Vec<Complex64>,
}

impl SzegedyState {
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

    pub fn amplitude(&self, arc: ArcId) -> Complex64 {
        self.amps[arc]
    }

    pub fn set(&mut self, arc: ArcId, value: Complex64) {
        self.amps[arc] = value;
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Reflection-then-shift walk on the arcs of a regular digraph.
#[derive(Debug, Clone)]
pub struct SzegedyWalk {
    amplitudes: TransitionAmplitudes,
    successor: ArcSuccessor,
}

impl SzegedyWalk {
    pub fn new(
        amplitudes: TransitionAmplitudes,
        successor: ArcSuccessor,
    ) -> Result<Self, SzegedyError> {
        if !Arc::ptr_eq(amplitudes.graph(), successor.graph())
            && amplitudes.graph().arcs() != successor.graph().arcs()
        {
            return Err(SzegedyError::GraphMismatch);
        }
        let report = successor.validate();
        if !report.is_valid() {
            return Err(SzegedyError::InvalidSuccessor(report));
        }
        Ok(Self {
            amplitudes,
            successor,
        })
    }

    pub fn amplitudes(&self) -> &TransitionAmplitudes {
        &self.amplitudes
    }

    pub fn successor(&self) -> &ArcSuccessor {
        &self.successor
    }

    pub fn graph(&self) -> &Arc<RegularDigraph> {
        self.amplitudes.graph()
    }

    pub fn dim(&self) -> usize {
        self.graph().arcs().len()
    }

    /// Basis state concentrated on one arc.
    pub fn basis_state(&self, arc: ArcId) -> SzegedyState {
        let mut s = SzegedyState::zero(self.dim());
        s.set(arc, Complex64::new(1.0, 0.0));
        s
    }

    fn check_dim(&self, s: &SzegedyState) -> Result<(), SzegedyError> {
        if s.dim() != self.dim() {
            return Err(SzegedyError::DimensionMismatch {
                got: s.dim(),
                expected: self.dim(),
            });
        }
        Ok(())
    }

    /// Blockwise `2 alpha <alpha|psi> - psi` over each vertex bundle.
    pub fn apply_reflection(&self, s: &SzegedyState) -> Result<SzegedyState, SzegedyError> {
        self.check_dim(s)?;
        let mut out = s.amps.clone();
        for v in 0..self.graph().n_vertices() {
            let arcs = self.graph().out_arcs(v);
            let dot: Complex64 = arcs
                .iter()
                .map(|&a| self.amplitudes.alpha(a).conj() * s.amps[a])
                .sum();
            for &a in arcs {
                out[a] = 2.0 * dot * self.amplitudes.alpha(a) - s.amps[a];
            }
        }
        Ok(SzegedyState { amps: out })
    }

    /// Forward every amplitude along the arc successor.
    pub fn apply_arc_shift(&self, s: &SzegedyState) -> Result<SzegedyState, SzegedyError> {
        self.check_dim(s)?;
        let mut out = vec![Complex64::new(0.0, 0.0); s.dim()];
        for (a, &amp) in s.amps.iter().enumerate() {
            out[self.successor.next(a)] = amp;
        }
        Ok(SzegedyState { amps: out })
    }

    pub fn step(&self, s: &SzegedyState) -> Result<SzegedyState, SzegedyError> {
        self.apply_arc_shift(&self.apply_reflection(s)?)
    }

    /// Largest entrywise deviation of the squared reflection from identity.
    ///
    /// Zero (up to roundoff) exactly when every bundle is normalized; a
    /// bundle with squared norm q contributes `|4q(q - 1)|` through its
    /// unit-direction eigenvalue `2q - 1`.
    pub fn r_squared_check(&self) -> f64 {
        let m = self.graph().degree();
        let mut worst: f64 = 0.0;
        for v in 0..self.graph().n_vertices() {
            let block = self.amplitudes.vertex_block(v);
            let a = DMatrix::from_column_slice(m, 1, &block);
            let r = &a * a.adjoint() * Complex64::new(2.0, 0.0) - DMatrix::identity(m, m);
            let dev = (&r * &r - DMatrix::<Complex64>::identity(m, m))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            worst = worst.max(dev);
        }
        worst
    }
}

impl Evolution for SzegedyWalk {
    fn dim(&self) -> usize {
        self.dim()
    }

    fn evolve(&self, amps: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(amps.len(), self.dim(), "state dimension mismatch");
        let s = SzegedyState::from_amplitudes(amps.to_vec());
        self.step(&s).expect("dimension already checked").amps
    }
}

/// Probability of each underlying position, pooling arcs by tail vertex.
pub fn position_distribution(
    s: &SzegedyState,
    line: &LineGraph,
) -> Result<Vec<f64>, SzegedyError> {
    let graph = line.graph();
    if s.dim() != graph.arcs().len() {
        return Err(SzegedyError::DimensionMismatch {
            got: s.dim(),
            expected: graph.arcs().len(),
        });
    }
    let n_positions = line.base().n_vertices();
    let mut p = vec![0.0; n_positions];
    for (a, amp) in s.amps.iter().enumerate() {
        p[line.position(graph.tail(a))] += amp.norm_sqr();
    }
    Ok(p)
}
