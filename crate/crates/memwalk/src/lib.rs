//! Discrete-time quantum walks with memory on regular digraphs.
//!
//! A walker that remembers its last `d` positions is the same thing as a
//! memoryless walker on the `d`-fold iterated line digraph of the original
//! graph: each vertex of that larger graph is a length-`d` walk, the current
//! position is the walk's endpoint, and the memory is everything before it.
//! This crate builds those graphs and runs the two standard unitary
//! evolutions on them:
//!
//! * **coined walks** ([`coined`]): a per-vertex coin unitary followed by a
//!   shift that moves the walker along one of `m` successor maps and rewrites
//!   the coin through a table `gc`,
//! * **Szegedy walks** ([`szegedy`]): a reflection through per-vertex
//!   transition amplitudes followed by a permutation of arcs.
//!
//! The [`bridge`] module converts either form into the other. A coined walk
//! whose coins are rank-one reflections `2aa* - I` is a Szegedy walk in
//! disguise, and a Szegedy walk can be read back as a coined walk relative to
//! any vertex partition of the arcs; both directions preserve the evolution
//! operator exactly. The [`analysis`] module supplies dense operator oracles,
//! distribution comparisons, and the experiment showing that the two
//! textbook one-step-memory walks on the cycle (`qwm1`, `qwm2`) produce
//! identical position distributions once their initial states are paired up.
//!
//! # Where to start
//!
//! The `examples/` directory is the guided tour; each file is runnable on its
//! own and exercises one capability:
//!
//! ```text
//! cargo run --example line_digraphs        # graphs, arcs, path decoding
//! cargo run --example partitions           # successor maps, gc tables, validators
//! cargo run --example coined_line_walk     # Hadamard memory walk on a cycle
//! cargo run --example szegedy_from_coined  # reflection + arc shift form
//! cargo run --example canonical_form       # one walk, two partitions
//! cargo run --example equivalence_experiment
//! cargo run --example file_roundtrip       # on-disk formats and validation
//! ```
//!
//! A thin command-line binary (`memwalk`) drives the same library from config
//! files; see the README for the config schema, file formats, and exit codes.
//!
//! # Quick start
//!
//! ```
//! use memwalk::{analysis, c64, coined};
//!
//! // The one-step-memory Hadamard walk on a 64-cycle.
//! let (walk, line) = coined::build_qwm2(64).unwrap();
//! let mut state = coined::qwm2_initial(&line, 0, [c64(0.5, 0.0); 4]).unwrap();
//! for _ in 0..25 {
//!     state = walk.step(&state).unwrap();
//! }
//! let p = coined::position_distribution(&state, &line).unwrap();
//! let (mean, std) = analysis::moments(line.base(), &p, 0).unwrap();
//! assert!(std > 5.0); // ballistic, not diffusive
//! # let _ = mean;
//! ```

pub mod analysis;
pub mod bridge;
pub mod cli;
pub mod coined;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod partition;
pub mod szegedy;

use num_complex::Complex64;

pub use graph::{LineGraph, PathVertex, RegularDigraph};

/// Complex amplitude from real and imaginary parts.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// One step of a unitary evolution on a fixed finite basis.
///
/// Implemented by both walk forms (and by transported walks in
/// [`bridge`]), so oracles in [`analysis`] can treat them uniformly.
pub trait Evolution {
    /// Dimension of the underlying state space.
    fn dim(&self) -> usize;

    /// Apply one step to a raw amplitude vector.
    ///
    /// Panics if `amps.len() != self.dim()`; the typed `step` methods on the
    /// walk types check dimensions and return errors instead.
    fn evolve(&self, amps: &[Complex64]) -> Vec<Complex64>;
}
