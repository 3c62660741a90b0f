//! Acceptance sweep: one test per advertised guarantee of the crate.
//!
//! Each test prints a single `acceptance N (...): PASS` or `FAIL` line,
//! visible under `cargo test --test acceptance -- --nocapture`. The numbers
//! are stable identifiers for the guarantees listed in the README.

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::sync::Arc;

use memwalk::analysis::{
    dense_operator, operator_distance, operator_distance_up_to_phase, qwm_equivalence_experiment,
    unitarity_deviation, DEFAULT_BASIS_CAP,
};
use memwalk::bridge::{coin_from_reflection, coined_to_szegedy, szegedy_to_coined};
use memwalk::c64;
use memwalk::coined::{build_qwm1, build_qwm2, hadamard2, hadamard2_swapped, CoinedWalk};
use memwalk::fixtures;
use memwalk::partition::CoinShiftFunction;
use memwalk::szegedy::SzegedyWalk;
use memwalk::{Evolution, LineGraph, RegularDigraph};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn criterion<F: FnOnce() + UnwindSafe>(number: usize, label: &str, body: F) {
    let outcome = catch_unwind(body);
    let verdict = if outcome.is_ok() { "PASS" } else { "FAIL" };
    println!("acceptance {number} ({label}): {verdict}");
    if let Err(cause) = outcome {
        resume_unwind(cause);
    }
}

fn max_entry_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn step_operators_are_unitary() {
    criterion(1, "step operators are unitary", || {
        let (w1, _) = build_qwm1(8).unwrap();
        let (w2, _) = build_qwm2(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let two_deep = LineGraph::with_depth(RegularDigraph::cycle(4).unwrap(), 2).unwrap();
        let deep_walk = fixtures::coined_walk(&mut rng, two_deep.graph(), false);

        let named: [(&str, &CoinedWalk); 3] = [
            ("direction walk on the 8-cycle", &w1),
            ("transmit/reflect walk on the 8-cycle", &w2),
            ("two-step-memory walk on the 4-cycle", &deep_walk),
        ];
        for (label, walk) in named {
            let op = dense_operator(walk, DEFAULT_BASIS_CAP).unwrap();
            let dev = unitarity_deviation(&op);
            assert!(dev <= 1e-12, "{label}: deviation {dev:.3e}");
        }

        for trial in 0..20 {
            let n = rng.gen_range(4..=8);
            let g = Arc::new(fixtures::regular_digraph(&mut rng, n, 3));
            let walk = fixtures::coined_walk(&mut rng, &g, false);
            let op = dense_operator(&walk, DEFAULT_BASIS_CAP).unwrap();
            let dev = unitarity_deviation(&op);
            assert!(dev <= 1e-12, "random walk {trial}: deviation {dev:.3e}");
        }
    });
}

#[test]
fn corrupted_shift_tables_name_the_violated_vertex() {
    criterion(2, "shift validation names the violated vertex", || {
        let (w1, _) = build_qwm1(8).unwrap();
        let (w2, _) = build_qwm2(8).unwrap();
        assert!(w1.shift().validate(w1.partition()).is_valid());
        assert!(w2.shift().validate(w2.partition()).is_valid());

        let mut rng = ChaCha8Rng::seed_from_u64(202);
        for trial in 0..50 {
            let walk = match trial % 3 {
                0 => build_qwm1(8).unwrap().0,
                1 => build_qwm2(8).unwrap().0,
                _ => {
                    let n = rng.gen_range(4..=8);
                    let g = Arc::new(fixtures::regular_digraph(&mut rng, n, 3));
                    fixtures::coined_walk(&mut rng, &g, false)
                }
            };
            let p = walk.partition();
            let (n, m) = (walk.graph().n_vertices(), walk.degree());
            let mut table: Vec<usize> =
                (0..n * m).map(|i| walk.shift().get(i / m, i % m)).collect();
            let v = rng.gen_range(0..n);
            let c = rng.gen_range(0..m);
            table[v * m + c] = (table[v * m + c] + rng.gen_range(1..m)) % m;

            let corrupt = CoinShiftFunction::new(n, m, table).unwrap();
            let report = corrupt.validate(p);
            assert!(!report.is_valid(), "trial {trial}: corruption passed");
            let target = p.successor(v, c);
            assert!(
                report.named_vertices().contains(&target),
                "trial {trial}: vertex {target} not named in {:?}",
                report.named_vertices()
            );
        }
    });
}

#[test]
fn both_presentations_induce_one_valid_arc_permutation() {
    criterion(3, "both presentations induce one valid arc permutation", || {
        let (w1, _) = build_qwm1(8).unwrap();
        let (w2, _) = build_qwm2(8).unwrap();
        let f1 = coined_to_szegedy(&w1).successor;
        let f2 = coined_to_szegedy(&w2).successor;
        assert!(f1.validate().is_valid());
        assert!(f2.validate().is_valid());
        assert_eq!(f1.next_slice(), f2.next_slice());
    });
}

#[test]
fn arc_form_round_trip_reproduces_the_operator() {
    criterion(4, "arc form round trip reproduces the operator", || {
        let mut walks = vec![build_qwm2(8).unwrap().0];
        let mut rng = ChaCha8Rng::seed_from_u64(404);
        for _ in 0..20 {
            let m = rng.gen_range(2..=3);
            let n = rng.gen_range(m + 1..=8);
            let g = Arc::new(fixtures::regular_digraph(&mut rng, n, m));
            walks.push(fixtures::coined_walk(&mut rng, &g, true));
        }
        for (i, walk) in walks.iter().enumerate() {
            let original = dense_operator(walk, DEFAULT_BASIS_CAP).unwrap();
            let szegedy = coined_to_szegedy(walk).szegedy_walk().unwrap();
            let back = szegedy_to_coined(&szegedy, walk.partition()).unwrap();
            let rebuilt = dense_operator(&back, DEFAULT_BASIS_CAP).unwrap();
            let distance = operator_distance_up_to_phase(&original, &rebuilt).unwrap();
            assert!(distance <= 1e-12, "walk {i}: distance {distance:.3e}");
        }
    });
}

#[test]
fn one_arc_walk_reads_back_as_either_presentation() {
    criterion(5, "one arc walk reads back as either presentation", || {
        let n = 8;
        let (w1, line) = build_qwm1(n).unwrap();
        let (w2, _) = build_qwm2(n).unwrap();
        let a1 = coined_to_szegedy(&w1);
        let a2 = coined_to_szegedy(&w2);

        // The two presentations collapse to the same arc walk.
        assert_eq!(a1.successor.next_slice(), a2.successor.next_slice());
        let s1 = a1.szegedy_walk().unwrap();
        let s2 = a2.szegedy_walk().unwrap();
        for (a, b) in s1.amplitudes().alphas().iter().zip(s2.amplitudes().alphas()) {
            assert!((a - b).norm() <= 1e-12);
        }

        // Read through the transmit/reflect partition it is that walk
        // exactly: its shift table and one shared coin block.
        let r2 = szegedy_to_coined(&s1, w2.partition()).unwrap();
        let h = hadamard2();
        for v in 0..line.graph().n_vertices() {
            for c in 0..2 {
                assert_eq!(r2.shift().get(v, c), w2.shift().get(v, c), "vertex {v}");
            }
            let diff = max_entry_diff(r2.coin().block(v), &h);
            assert!(diff <= 1e-12, "vertex {v}: coin differs by {diff:.3e}");
        }

        // Read through the direction partition the same operator splits
        // into position-dependent blocks: the plain block at vertices that
        // just moved right, the row-swapped block at vertices that moved
        // left, with the shift recording the direction taken.
        let r1 = szegedy_to_coined(&s1, w1.partition()).unwrap();
        let swapped = hadamard2_swapped();
        for v in 0..line.graph().n_vertices() {
            let steps = line.path(v).steps();
            let moved_right = steps[1] == (steps[0] + 1) % n;
            let expected = if moved_right { &h } else { &swapped };
            let diff = max_entry_diff(r1.coin().block(v), expected);
            assert!(diff <= 1e-12, "vertex {v}: coin differs by {diff:.3e}");
            for c in 0..2 {
                assert_eq!(r1.shift().get(v, c), usize::from(!moved_right), "vertex {v}");
                assert_eq!(r1.shift().get(v, c), w1.shift().get(v, c), "vertex {v}");
            }
        }
    });
}

#[test]
fn matched_starts_give_identical_distributions() {
    criterion(6, "matched starts give identical distributions", || {
        let mut rng = ChaCha8Rng::seed_from_u64(606);
        for trial in 0..100 {
            let quad = fixtures::amplitude_quadruple(&mut rng);
            let report = qwm_equivalence_experiment(64, 25, quad).unwrap();
            assert!(
                report.max_abs <= 1e-10,
                "trial {trial}: max diff {:.3e}",
                report.max_abs
            );
        }
    });
}

#[test]
fn iterated_stepping_matches_dense_powers() {
    criterion(7, "iterated stepping matches dense powers", || {
        let t = 50;
        let walks = [
            ("direction walk, 8-cycle", build_qwm1(8).unwrap().0),
            ("transmit/reflect walk, 8-cycle", build_qwm2(8).unwrap().0),
            ("direction walk, 64-cycle", build_qwm1(64).unwrap().0),
            ("transmit/reflect walk, 64-cycle", build_qwm2(64).unwrap().0),
            ("direction walk, 128-cycle", build_qwm1(128).unwrap().0),
            ("transmit/reflect walk, 128-cycle", build_qwm2(128).unwrap().0),
        ];
        for (label, walk) in &walks {
            let dim = walk.dim();
            assert!(dim <= DEFAULT_BASIS_CAP, "{label} exceeds the basis cap");
            let u = dense_operator(walk, DEFAULT_BASIS_CAP).unwrap();
            let powered = u.pow(t as u32);

            let mut iterated = DMatrix::zeros(dim, dim);
            for j in 0..dim {
                let mut amps = vec![c64(0.0, 0.0); dim];
                amps[j] = c64(1.0, 0.0);
                for _ in 0..t {
                    amps = walk.evolve(&amps);
                }
                for (i, z) in amps.iter().enumerate() {
                    iterated[(i, j)] = *z;
                }
            }
            let distance = operator_distance(&powered, &iterated).unwrap();
            assert!(distance <= 1e-10, "{label}: distance {distance:.3e}");
        }
    });
}

#[test]
fn bundle_reflections_square_to_identity() {
    criterion(8, "bundle reflections square to the identity", || {
        let mut rng = ChaCha8Rng::seed_from_u64(808);
        for trial in 0..50 {
            let m = rng.gen_range(2..=4);
            let n = rng.gen_range(m + 1..=9);
            let g = Arc::new(fixtures::regular_digraph(&mut rng, n, m));
            let amps = fixtures::arc_amplitudes(&mut rng, &g);
            let successor = coined_to_szegedy(&fixtures::coined_walk(&mut rng, &g, true)).successor;
            let walk = SzegedyWalk::new(amps, successor).unwrap();
            let residue = walk.r_squared_check();
            assert!(residue <= 1e-12, "trial {trial}: residue {residue:.3e}");
        }

        // Equal-weight bundle: the induced coin is exactly the swap.
        let q = std::f64::consts::FRAC_1_SQRT_2;
        let coin = coin_from_reflection(&[c64(q, 0.0), c64(q, 0.0)], &[0, 1]);
        for r in 0..2 {
            for c in 0..2 {
                let expected = if r == c { 0.0 } else { 1.0 };
                assert!(
                    (coin[(r, c)] - c64(expected, 0.0)).norm() <= 1e-15,
                    "entry ({r},{c}) = {}",
                    coin[(r, c)]
                );
            }
        }
    });
}

#[test]
fn repeated_cli_runs_emit_identical_bytes() {
    criterion(9, "repeated runs emit identical bytes", || {
        let dir = tempfile::tempdir().unwrap();
        let config = dir.path().join("walk.toml");
        let csv = dir.path().join("walk.csv");
        std::fs::write(
            &config,
            format!(
                "[walk]\nmodel = \"coined\"\nbuilder = \"qwm2\"\nn = 64\nsteps = 50\n\n\
                 [output]\npath = {:?}\n",
                csv
            ),
        )
        .unwrap();

        let run = || {
            let status = std::process::Command::new(env!("CARGO_BIN_EXE_memwalk"))
                .arg("run")
                .arg(&config)
                .status()
                .unwrap();
            assert!(status.success(), "run exited with {status}");
            std::fs::read(&csv).unwrap()
        };
        let first = run();
        let second = run();
        assert!(!first.is_empty());
        assert_eq!(first, second, "outputs differ between runs");
    });
}
