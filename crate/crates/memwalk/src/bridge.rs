//! Conversions between the vertex-coin picture and the arc picture.
//!
//! A partition of the arcs into vertex-indexed classes pins down a basis
//! correspondence: the coined basis state `(v, c)` matches the arc of class
//! `c` leaving `v`. Pushing a coined walk through that correspondence turns
//! its shift into an arc successor and its coin blocks into per-vertex
//! operators on arc bundles. When every block is a reflection about a single
//! amplitude vector the result is a genuine reflection-then-shift walk;
//! otherwise the blocks are carried verbatim and the walk still runs, it
//! just is not expressible through transition amplitudes alone.
//!
//! The reverse direction reads a coined walk off an arc walk: the partition
//! chosen for the reading determines both the coin blocks and the coin
//! relabeling, so one arc walk yields differently-shaped coined walks under
//! different partitions.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::coined::{CoinError, CoinOperator, CoinedState, CoinedWalk, WalkError};
use crate::graph::{ArcId, RegularDigraph, VertexId};
use crate::partition::{ArcSuccessor, CoinShiftFunction, ValidationReport, VertexPartition};
use crate::szegedy::{SzegedyError, SzegedyState, SzegedyWalk, TransitionAmplitudes};
use crate::Evolution;

/// Tolerance for deciding whether a coin block is a reflection.
pub const REFLECTION_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum BridgeError {
    #[error("coin blocks at vertices {vertices:?} are not reflections about an amplitude vector")]
    CoinNotReflectionForm { vertices: Vec<VertexId> },
    #[error("the partition and the walk are built on different graphs")]
    GraphMismatch,
    #[error("partition fails validation: {0}")]
    InvalidPartition(ValidationReport),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error(transparent)]
    Coin(#[from] CoinError),
    #[error(transparent)]
    Szegedy(#[from] SzegedyError),
}

/// Basis dictionary induced by a valid partition: coined state `(v, c)` on
/// one side, the class-`c` arc leaving `v` on the other.
#[derive(Debug, Clone)]
pub struct Correspondence {
    partition: VertexPartition,
    /// `arc_for[v * m + c]` is the arc matched with coined basis `(v, c)`.
    arc_for: Vec<ArcId>,
    /// Inverse of `arc_for`, indexed by arc.
    coin_for: Vec<(VertexId, usize)>,
}

impl Correspondence {
    pub fn from_partition(partition: VertexPartition) -> Result<Self, BridgeError> {
        let report = partition.validate();
        if !report.is_valid() {
            return Err(BridgeError::InvalidPartition(report));
        }
        let g = partition.graph();
        let m = g.degree();
        let mut arc_for = vec![0; g.n_vertices() * m];
        let mut coin_for = vec![(0, 0); g.n_arcs()];
        for v in 0..g.n_vertices() {
            for c in 0..m {
                // A valid partition maps every (v, c) onto a real arc.
                let a = partition.arc_of(v, c).expect("validated partition");
                arc_for[v * m + c] = a;
                coin_for[a] = (v, c);
            }
        }
        Ok(Self {
            partition,
            arc_for,
            coin_for,
        })
    }

    pub fn partition(&self) -> &VertexPartition {
        &self.partition
    }

    pub fn graph(&self) -> &std::sync::Arc<RegularDigraph> {
        self.partition.graph()
    }

    /// Arc matched with the coined basis state `(v, c)`.
    pub fn arc_of(&self, v: VertexId, c: usize) -> ArcId {
        self.arc_for[v * self.partition.degree() + c]
    }

    /// Coined basis state matched with `arc`.
    pub fn coin_of(&self, arc: ArcId) -> (VertexId, usize) {
        self.coin_for[arc]
    }

    /// Out-arc slot of the arc matched with `(v, c)`.
    pub fn slot_of(&self, v: VertexId, c: usize) -> usize {
        self.graph().out_slot(self.arc_of(v, c))
    }

    /// Rewrite a coined state in the arc basis. Panics on wrong dimension.
    pub fn coined_to_arc_state(&self, s: &CoinedState) -> SzegedyState {
        assert_eq!(s.dim(), self.arc_for.len(), "state dimension mismatch");
        let mut out = SzegedyState::zero(self.coin_for.len());
        for (i, &a) in self.arc_for.iter().enumerate() {
            out.set(a, s.amplitudes()[i]);
        }
        out
    }

    /// Rewrite an arc state in the coined basis. Panics on wrong dimension.
    pub fn arc_to_coined_state(&self, s: &SzegedyState) -> CoinedState {
        assert_eq!(s.dim(), self.coin_for.len(), "state dimension mismatch");
        let m = self.partition.degree();
        let mut out = CoinedState::zero(self.arc_for.len());
        for (a, &(v, c)) in self.coin_for.iter().enumerate() {
            out.set(v * m + c, s.amplitude(a));
        }
        out
    }
}

/// Per-vertex operators carried into arc space, in out-arc slot order.
#[derive(Debug, Clone)]
pub enum TransportedCoin {
    /// Every block was a reflection `2 a a* - I`; the recovered amplitude
    /// vectors are collected per arc.
    Reflection(TransitionAmplitudes),
    /// At least one block is not a reflection. The blocks still act on arc
    /// bundles; `non_reflection` lists the offending vertices.
    Verbatim {
        blocks: Vec<DMatrix<Complex64>>,
        non_reflection: Vec<VertexId>,
    },
}

/// A coined walk rewritten on arcs: a successor permutation plus per-vertex
/// bundle operators, with the dictionary that produced them.
#[derive(Debug, Clone)]
pub struct ArcForm {
    pub correspondence: Correspondence,
    pub successor: ArcSuccessor,
    pub coin: TransportedCoin,
}

impl ArcForm {
    /// The reflection-then-shift walk, if every coin block was a reflection.
    pub fn szegedy_walk(&self) -> Result<SzegedyWalk, BridgeError> {
        match &self.coin {
            TransportedCoin::Reflection(amps) => {
                Ok(SzegedyWalk::new(amps.clone(), self.successor.clone())?)
            }
            TransportedCoin::Verbatim { non_reflection, .. } => {
                Err(BridgeError::CoinNotReflectionForm {
                    vertices: non_reflection.clone(),
                })
            }
        }
    }

    fn apply_bundle_operators(&self, amps: &[Complex64]) -> Vec<Complex64> {
        let g = self.correspondence.graph();
        let mut out = amps.to_vec();
        match &self.coin {
            TransportedCoin::Reflection(t) => {
                for v in 0..g.n_vertices() {
                    let arcs = g.out_arcs(v);
                    let dot: Complex64 = arcs
                        .iter()
                        .map(|&a| t.alpha(a).conj() * amps[a])
                        .sum();
                    for &a in arcs {
                        out[a] = 2.0 * dot * t.alpha(a) - amps[a];
                    }
                }
            }
            TransportedCoin::Verbatim { blocks, .. } => {
                for (v, block) in blocks.iter().enumerate() {
                    let arcs = g.out_arcs(v);
                    for (r, &ar) in arcs.iter().enumerate() {
                        out[ar] = arcs
                            .iter()
                            .enumerate()
                            .map(|(k, &ak)| block[(r, k)] * amps[ak])
                            .sum();
                    }
                }
            }
        }
        out
    }
}

impl Evolution for ArcForm {
    fn dim(&self) -> usize {
        self.correspondence.graph().n_arcs()
    }

    fn evolve(&self, amps: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(amps.len(), self.dim(), "state dimension mismatch");
        let reflected = self.apply_bundle_operators(amps);
        let mut out = vec![Complex64::new(0.0, 0.0); reflected.len()];
        for (a, amp) in reflected.into_iter().enumerate() {
            out[self.successor.next(a)] = amp;
        }
        out
    }
}

/// Recover `a` from a block equal to `2 a a* - I`, up to a global phase.
///
/// Returns the unit vector when the block is such a reflection within
/// [`REFLECTION_TOL`], and `None` otherwise (identity blocks, rotations,
/// higher-rank reflections all fail).
pub fn reflection_vector(block: &DMatrix<Complex64>) -> Option<Vec<Complex64>> {
    let m = block.nrows();
    if block.ncols() != m || m == 0 {
        return None;
    }
    // If the block is 2aa* - I then (block + I) / 2 is aa*, whose largest
    // diagonal entry locates a column proportional to a.
    let h = (block + DMatrix::<Complex64>::identity(m, m)) * Complex64::new(0.5, 0.0);
    let (k, peak) = (0..m)
        .map(|j| (j, h[(j, j)].re))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty block");
    if peak <= REFLECTION_TOL {
        return None;
    }
    let col = h.column(k);
    let scale = 1.0 / col.norm();
    let a: Vec<Complex64> = col.iter().map(|z| z * scale).collect();
    let rebuilt = {
        let av = DMatrix::from_column_slice(m, 1, &a);
        &av * av.adjoint() * Complex64::new(2.0, 0.0) - DMatrix::<Complex64>::identity(m, m)
    };
    let dev = (rebuilt - block)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    (dev <= REFLECTION_TOL).then_some(a)
}

/// Reflection coin `2 a a* - I` expressed in coin order, where coin `j`
/// occupies out-arc slot `orientation[j]` and `alpha` is in slot order.
///
/// Panics unless `orientation` is a permutation of `0..alpha.len()`.
pub fn coin_from_reflection(alpha: &[Complex64], orientation: &[usize]) -> DMatrix<Complex64> {
    let m = alpha.len();
    assert_eq!(orientation.len(), m, "orientation length mismatch");
    let mut seen = vec![false; m];
    for &o in orientation {
        assert!(o < m && !std::mem::replace(&mut seen[o], true), "orientation must be a permutation");
    }
    DMatrix::from_fn(m, m, |j, k| {
        let delta = if j == k { 1.0 } else { 0.0 };
        2.0 * alpha[orientation[j]] * alpha[orientation[k]].conj() - Complex64::new(delta, 0.0)
    })
}

/// Rewrite a coined walk on arcs using its own partition as the dictionary.
pub fn coined_to_szegedy(walk: &CoinedWalk) -> ArcForm {
    let correspondence = Correspondence::from_partition(walk.partition().clone())
        .expect("walk construction validated the partition");
    let g = walk.graph();
    let m = g.degree();

    // The arc matched with (v, c) continues at w = head with the arc
    // matched with (w, gc(v, c)); chaining is automatic.
    let next: Vec<ArcId> = (0..g.n_arcs())
        .map(|a| {
            let (v, c) = correspondence.coin_of(a);
            correspondence.arc_of(g.head(a), walk.shift().get(v, c))
        })
        .collect();
    let successor =
        ArcSuccessor::new(std::sync::Arc::clone(g), next).expect("one image per arc");
    debug_assert!(successor.validate().is_valid());

    // Reorder each coin block from coin order to out-arc slot order.
    let blocks: Vec<DMatrix<Complex64>> = (0..g.n_vertices())
        .map(|v| {
            let coin = walk.coin().block(v);
            let slot: Vec<usize> = (0..m).map(|c| correspondence.slot_of(v, c)).collect();
            let mut block = DMatrix::zeros(m, m);
            for j in 0..m {
                for k in 0..m {
                    block[(slot[j], slot[k])] = coin[(j, k)];
                }
            }
            block
        })
        .collect();

    let mut alphas = vec![Complex64::new(0.0, 0.0); g.n_arcs()];
    let mut non_reflection = Vec::new();
    for (v, block) in blocks.iter().enumerate() {
        match reflection_vector(block) {
            Some(a) => {
                for (slot, &arc) in g.out_arcs(v).iter().enumerate() {
                    alphas[arc] = a[slot];
                }
            }
            None => non_reflection.push(v),
        }
    }
    let coin = if non_reflection.is_empty() {
        let amps = TransitionAmplitudes::from_arc_amplitudes(std::sync::Arc::clone(g), alphas)
            .expect("recovered vectors are unit length");
        TransportedCoin::Reflection(amps)
    } else {
        TransportedCoin::Verbatim {
            blocks,
            non_reflection,
        }
    };

    ArcForm {
        correspondence,
        successor,
        coin,
    }
}

/// Read a coined walk off an arc walk through the given partition.
///
/// The same arc walk read through different partitions yields coined walks
/// with different coin blocks and coin relabelings; all of them step
/// identically under the respective correspondences.
pub fn szegedy_to_coined(
    walk: &SzegedyWalk,
    partition: &VertexPartition,
) -> Result<CoinedWalk, BridgeError> {
    let g = walk.graph();
    if partition.graph().arcs() != g.arcs() {
        return Err(BridgeError::GraphMismatch);
    }
    let correspondence = Correspondence::from_partition(partition.clone())?;
    let m = g.degree();

    // gc(v, c) is the class of the successor arc at the head vertex.
    let mut table = vec![0; g.n_vertices() * m];
    for v in 0..g.n_vertices() {
        for c in 0..m {
            let image = walk.successor().next(correspondence.arc_of(v, c));
            let (_, class) = correspondence.coin_of(image);
            table[v * m + c] = class;
        }
    }
    let shift =
        CoinShiftFunction::new(g.n_vertices(), m, table).expect("table shaped by construction");

    // The bundle reflection, written back in coin order.
    let blocks: Vec<DMatrix<Complex64>> = (0..g.n_vertices())
        .map(|v| {
            let bundle = walk.amplitudes().vertex_block(v);
            let slot: Vec<usize> = (0..m).map(|c| correspondence.slot_of(v, c)).collect();
            DMatrix::from_fn(m, m, |j, k| {
                let delta = if j == k { 1.0 } else { 0.0 };
                2.0 * bundle[slot[j]] * bundle[slot[k]].conj() - Complex64::new(delta, 0.0)
            })
        })
        .collect();
    let coin = CoinOperator::per_vertex(blocks)?;
    Ok(CoinedWalk::new(partition.clone(), shift, coin)?)
}
