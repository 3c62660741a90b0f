//! Seeded generators for test fixtures and property checks.
//!
//! Everything here is deterministic given the caller's RNG, so failing seeds
//! reproduce. The generators favor small rejection loops over clever
//! constructions; they target desk-scale instances, not bulk sampling.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::coined::{CoinOperator, CoinedWalk};
use crate::graph::{RegularDigraph, VertexId};
use crate::partition::{CoinShiftFunction, VertexPartition};
use crate::szegedy::TransitionAmplitudes;

/// Random simple m-regular digraph on `n` vertices, built as the union of
/// `m` fixed-point-free permutations with pairwise disjoint arc sets. Each
/// permutation contributes out-degree and in-degree one everywhere.
///
/// Panics if `n < m + 1` (no simple m-regular digraph exists) or if
/// rejection sampling runs out of attempts.
pub fn regular_digraph(rng: &mut impl Rng, n: usize, m: usize) -> RegularDigraph {
    assert!(m >= 1 && n > m, "need n > m for a simple graph");
    'outer: for _ in 0..10_000 {
        let mut rows: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for _ in 0..m {
            let perm = match random_derangement_avoiding(rng, n, &rows) {
                Some(p) => p,
                None => continue 'outer,
            };
            for (v, &w) in perm.iter().enumerate() {
                rows[v].push(w);
            }
        }
        return RegularDigraph::from_out_neighbors(n, m, &rows)
            .expect("union of disjoint derangements is regular and simple");
    }
    panic!("regular digraph sampling failed for n={n}, m={m}");
}

/// One fixed-point-free permutation whose arcs avoid everything in `taken`.
fn random_derangement_avoiding(
    rng: &mut impl Rng,
    n: usize,
    taken: &[Vec<VertexId>],
) -> Option<Vec<VertexId>> {
    'retry: for _ in 0..200 {
        let mut targets: Vec<VertexId> = (0..n).collect();
        targets.shuffle(rng);
        for (v, &w) in targets.iter().enumerate() {
            if v == w || taken[v].contains(&w) {
                continue 'retry;
            }
        }
        return Some(targets);
    }
    None
}

/// Random vertex partition of the arcs of `g`: at each vertex, a uniformly
/// random assignment of its out-arcs to the coins. Any such assignment is a
/// valid partition.
pub fn partition(rng: &mut impl Rng, g: &Arc<RegularDigraph>) -> VertexPartition {
    let m = g.degree();
    let rows: Vec<Vec<VertexId>> = (0..g.n_vertices())
        .map(|v| {
            let mut heads: Vec<VertexId> = g.out_arcs(v).iter().map(|&a| g.head(a)).collect();
            heads.shuffle(rng);
            heads
        })
        .collect();
    assert_eq!(rows[0].len(), m);
    VertexPartition::new(Arc::clone(g), rows).expect("shuffled out-neighbors form a partition")
}

/// Random coin shift table compatible with `p`: for every target vertex the
/// incoming (source, coin) pairs receive the coins in a random order, so the
/// shift is a permutation of basis states by construction.
pub fn coin_shift(rng: &mut impl Rng, p: &VertexPartition) -> CoinShiftFunction {
    let g = p.graph();
    let n = g.n_vertices();
    let m = g.degree();
    let mut table = vec![0usize; n * m];
    // Incoming (source vertex, coin) pairs per target.
    let mut incoming: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); n];
    for v in 0..n {
        for c in 0..m {
            incoming[p.successor(v, c)].push((v, c));
        }
    }
    for arrivals in &incoming {
        let mut coins: Vec<usize> = (0..m).collect();
        coins.shuffle(rng);
        for (&(v, c), &new_coin) in arrivals.iter().zip(&coins) {
            table[v * m + c] = new_coin;
        }
    }
    CoinShiftFunction::new(n, m, table).expect("table is dense and in range")
}

/// Random unit vector in `C^dim`.
pub fn unit_vector(rng: &mut impl Rng, dim: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.iter().map(|z| z / norm).collect();
        }
    }
}

/// Random rank-one reflection coin `2aa* - I` for a random unit `a`.
pub fn reflection_coin(rng: &mut impl Rng, m: usize) -> DMatrix<Complex64> {
    let a = unit_vector(rng, m);
    DMatrix::from_fn(m, m, |j, k| {
        let delta = if j == k {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        2.0 * a[j] * a[k].conj() - delta
    })
}

/// Random unitary coin via QR of a complex Gaussian-ish matrix.
pub fn unitary_coin(rng: &mut impl Rng, m: usize) -> DMatrix<Complex64> {
    loop {
        let raw = DMatrix::from_fn(m, m, |_, _| {
            Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        let qr = raw.qr();
        let q = qr.q();
        // QR of a singular matrix can leave junk columns; retry.
        let dev = (q.adjoint() * &q - DMatrix::identity(m, m))
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max);
        if dev < 1e-12 {
            return q;
        }
    }
}

/// Random coined walk on `g`: random partition, random compatible gc table,
/// and per-vertex coins (rank-one reflections when `reflection_only`,
/// arbitrary unitaries otherwise).
pub fn coined_walk(rng: &mut impl Rng, g: &Arc<RegularDigraph>, reflection_only: bool) -> CoinedWalk {
    let p = partition(rng, g);
    let gc = coin_shift(rng, &p);
    let m = g.degree();
    let blocks: Vec<DMatrix<Complex64>> = (0..g.n_vertices())
        .map(|_| {
            if reflection_only {
                reflection_coin(rng, m)
            } else {
                unitary_coin(rng, m)
            }
        })
        .collect();
    let coin = CoinOperator::per_vertex(blocks).expect("generated blocks are unitary");
    CoinedWalk::new(p, gc, coin).expect("generated walk is valid")
}

/// Random per-vertex-normalized transition amplitudes on `g`.
pub fn arc_amplitudes(rng: &mut impl Rng, g: &Arc<RegularDigraph>) -> TransitionAmplitudes {
    let mut alpha = vec![Complex64::new(0.0, 0.0); g.n_arcs()];
    for v in 0..g.n_vertices() {
        let row = unit_vector(rng, g.degree());
        for (slot, &a) in g.out_arcs(v).iter().enumerate() {
            alpha[a] = row[slot];
        }
    }
    TransitionAmplitudes::from_arc_amplitudes(Arc::clone(g), alpha)
        .expect("rows are normalized by construction")
}

/// Random normalized amplitude quadruple, e.g. for paired initial states.
pub fn amplitude_quadruple(rng: &mut impl Rng) -> [Complex64; 4] {
    let v = unit_vector(rng, 4);
    [v[0], v[1], v[2], v[3]]
}
