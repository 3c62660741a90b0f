//! Dense operator oracles, distribution comparisons, and the paired-walk
//! experiment.
//!
//! Everything here is written against the [`Evolution`] trait, so coined
//! walks, Szegedy walks, and transported arc forms all feed the same
//! machinery. Dense matrices are an oracle, not a representation: they exist
//! to check the sparse step functions against textbook linear algebra, and
//! they are gated by an explicit basis cap so nobody materializes a
//! megadimensional unitary by accident.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::coined::{self, position_distribution};
use crate::graph::RegularDigraph;
use crate::Evolution;

/// Entrywise tolerance for operator identities (unitarity, equality).
pub const OPERATOR_TOL: f64 = 1e-12;
/// Tolerance for iterated states and probability distributions.
pub const STATE_TOL: f64 = 1e-10;
/// Default refusal threshold for dense operator construction.
pub const DEFAULT_BASIS_CAP: usize = 4096;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("operator dimension {dim} exceeds the dense basis cap {cap}")]
    BasisCapExceeded { dim: usize, cap: usize },
    #[error("expected length {expected}, got {got}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("probabilities sum to {sum}, expected 1")]
    NotADistribution { sum: f64 },
    #[error("initial amplitudes have squared norm {norm_sqr}, expected 1")]
    NotNormalized { norm_sqr: f64 },
    #[error("a {n}-cycle cannot keep {steps} steps collision-free; need n > 2 * steps + 2")]
    CycleTooSmall { n: usize, steps: usize },
    #[error("displacement statistics need a cycle graph")]
    NotACycle,
    #[error("origin {origin} is out of range for {n} positions")]
    OriginOutOfRange { origin: usize, n: usize },
}

/// Materialize the one-step operator by evolving every basis vector.
///
/// Column `i` is the image of basis state `i`. Refuses dimensions above
/// `cap`; pass [`DEFAULT_BASIS_CAP`] unless you know better.
pub fn dense_operator<E: Evolution + ?Sized>(
    walk: &E,
    cap: usize,
) -> Result<DMatrix<Complex64>, AnalysisError> {
    let dim = walk.dim();
    if dim > cap {
        return Err(AnalysisError::BasisCapExceeded { dim, cap });
    }
    let mut op = DMatrix::zeros(dim, dim);
    let mut basis = vec![Complex64::new(0.0, 0.0); dim];
    for i in 0..dim {
        basis[i] = Complex64::new(1.0, 0.0);
        let col = walk.evolve(&basis);
        basis[i] = Complex64::new(0.0, 0.0);
        for (r, z) in col.into_iter().enumerate() {
            op[(r, i)] = z;
        }
    }
    Ok(op)
}

/// Largest entry of `U* U - I`.
pub fn unitarity_deviation(op: &DMatrix<Complex64>) -> f64 {
    let n = op.nrows();
    (op.adjoint() * op - DMatrix::<Complex64>::identity(n, n))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Largest entrywise difference between two operators.
pub fn operator_distance(
    a: &DMatrix<Complex64>,
    b: &DMatrix<Complex64>,
) -> Result<f64, AnalysisError> {
    if a.shape() != b.shape() {
        return Err(AnalysisError::LengthMismatch {
            got: b.nrows() * b.ncols(),
            expected: a.nrows() * a.ncols(),
        });
    }
    Ok((a - b).iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Entrywise distance after aligning a global phase.
///
/// The phase is read off the largest entry of `a`; two operators that differ
/// only by `exp(i theta)` come out at roundoff level.
pub fn operator_distance_up_to_phase(
    a: &DMatrix<Complex64>,
    b: &DMatrix<Complex64>,
) -> Result<f64, AnalysisError> {
    if a.shape() != b.shape() {
        return Err(AnalysisError::LengthMismatch {
            got: b.nrows() * b.ncols(),
            expected: a.nrows() * a.ncols(),
        });
    }
    let pivot = a
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
        .map(|(i, _)| i);
    let phase = match pivot {
        Some(i) if a[i].norm() > OPERATOR_TOL && b[i].norm() > 0.0 => {
            let ratio = b[i] / a[i];
            ratio / ratio.norm()
        }
        _ => Complex64::new(1.0, 0.0),
    };
    Ok((a * phase - b).iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Pointwise and total-variation distance between two distributions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistributionDistance {
    pub max_abs: f64,
    pub total_variation: f64,
}

pub fn compare_distributions(p: &[f64], q: &[f64]) -> Result<DistributionDistance, AnalysisError> {
    if p.len() != q.len() {
        return Err(AnalysisError::LengthMismatch {
            got: q.len(),
            expected: p.len(),
        });
    }
    let mut max_abs: f64 = 0.0;
    let mut l1 = 0.0;
    for (a, b) in p.iter().zip(q) {
        let d = (a - b).abs();
        max_abs = max_abs.max(d);
        l1 += d;
    }
    Ok(DistributionDistance {
        max_abs,
        total_variation: 0.5 * l1,
    })
}

/// Mean and standard deviation of the signed displacement from `origin`.
///
/// Only meaningful on a cycle, where displacement wraps into the interval
/// `(-n/2, n/2]`; any other graph is rejected.
pub fn moments(
    base: &RegularDigraph,
    p: &[f64],
    origin: usize,
) -> Result<(f64, f64), AnalysisError> {
    let n = base.n_vertices();
    let is_cycle = base.degree() == 2
        && (0..n).all(|x| {
            base.arc_index(x, (x + 1) % n).is_some() && base.arc_index(x, (x + n - 1) % n).is_some()
        });
    if !is_cycle {
        return Err(AnalysisError::NotACycle);
    }
    if p.len() != n {
        return Err(AnalysisError::LengthMismatch {
            got: p.len(),
            expected: n,
        });
    }
    if origin >= n {
        return Err(AnalysisError::OriginOutOfRange { origin, n });
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > 1e-8 {
        return Err(AnalysisError::NotADistribution { sum });
    }
    let mut mean = 0.0;
    let mut second = 0.0;
    for (x, &w) in p.iter().enumerate() {
        let mut d = ((x + n - origin) % n) as f64;
        if d > n as f64 / 2.0 {
            d -= n as f64;
        }
        mean += w * d;
        second += w * d * d;
    }
    let var = (second - mean * mean).max(0.0);
    Ok((mean, var.sqrt()))
}

/// Per-step distance between the two paired cycle walks.
#[derive(Debug, Clone, Serialize)]
pub struct StepComparison {
    pub step: usize,
    pub max_abs: f64,
    pub total_variation: f64,
}

/// Outcome of running both one-step-memory cycle walks side by side.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub n: usize,
    pub steps: usize,
    pub origin: usize,
    pub tolerance: f64,
    pub max_abs: f64,
    pub max_total_variation: f64,
    pub equivalent: bool,
    pub per_step: Vec<StepComparison>,
}

/// Run `qwm1` and `qwm2` from paired initial states and compare their
/// position distributions after every step.
///
/// The pairing swaps the two backward-memory amplitudes; under it the walks
/// are the same operator on arcs and the distributions agree to roundoff at
/// every step. The cycle must satisfy `n > 2 * steps + 2` so the spreading
/// cones never meet around the back.
pub fn qwm_equivalence_experiment(
    n: usize,
    steps: usize,
    amplitudes: [Complex64; 4],
) -> Result<EquivalenceReport, AnalysisError> {
    let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    if (norm_sqr - 1.0).abs() > STATE_TOL {
        return Err(AnalysisError::NotNormalized { norm_sqr });
    }
    if n <= 2 * steps + 2 {
        return Err(AnalysisError::CycleTooSmall { n, steps });
    }
    let origin = n / 2;
    let (w1, line1) = coined::build_qwm1(n).expect("n > 2 steps + 2 >= 4");
    let (w2, line2) = coined::build_qwm2(n).expect("n > 2 steps + 2 >= 4");
    let mut s1 = coined::qwm1_initial(&line1, origin, amplitudes).expect("depth-one cycle");
    let mut s2 = coined::qwm2_initial(&line2, origin, amplitudes).expect("depth-one cycle");

    let mut per_step = Vec::with_capacity(steps + 1);
    let mut max_abs: f64 = 0.0;
    let mut max_tv: f64 = 0.0;
    for step in 0..=steps {
        if step > 0 {
            s1 = w1.step(&s1).expect("dimensions fixed");
            s2 = w2.step(&s2).expect("dimensions fixed");
        }
        let p1 = position_distribution(&s1, &line1).expect("dimensions fixed");
        let p2 = position_distribution(&s2, &line2).expect("dimensions fixed");
        let d = compare_distributions(&p1, &p2)?;
        max_abs = max_abs.max(d.max_abs);
        max_tv = max_tv.max(d.total_variation);
        per_step.push(StepComparison {
            step,
            max_abs: d.max_abs,
            total_variation: d.total_variation,
        });
    }
    Ok(EquivalenceReport {
        n,
        steps,
        origin,
        tolerance: STATE_TOL,
        max_abs,
        max_total_variation: max_tv,
        equivalent: max_abs <= STATE_TOL,
        per_step,
    })
}
