//! Turn a coined walk into its arc-space form and inspect the pieces.
//!
//! When every coin block is a reflection 2aa* - I, the walk can be rewritten
//! as a reflect-then-shift operator on the arcs of the graph: one amplitude
//! bundle per vertex, one successor arc per arc. This example builds the
//! transmit/reflect cycle walk, extracts that form, and checks it step for
//! step against the original.

use memwalk::bridge::{coined_to_szegedy, TransportedCoin};
use memwalk::c64;
use memwalk::coined::{build_qwm2, qwm2_initial};

fn main() {
    let n = 8;
    let (walk, line) = build_qwm2(n).unwrap();
    let arc_form = coined_to_szegedy(&walk);
    let g = walk.graph();

    println!("coined walk on L C_{n}: {} basis states", walk.dim());
    println!("arc walk on the same graph: {} arcs", g.n_arcs());

    // Every coin block of this walk is a rank-one reflection, so the
    // transported coin is a bundle of unit vectors, one per vertex.
    let amps = match &arc_form.coin {
        TransportedCoin::Reflection(amps) => amps,
        TransportedCoin::Verbatim { .. } => unreachable!("all blocks reflect"),
    };
    println!("\namplitude bundles (vertex: slot amplitudes):");
    for v in [0, 1] {
        let block = amps.vertex_block(v);
        let parts: Vec<String> = block.iter().map(|a| format!("{:.4}", a.re)).collect();
        println!("  {}: ({})", line.path(v), parts.join(", "));
    }

    let szegedy = arc_form.szegedy_walk().unwrap();
    println!("\nreflection check, max |(R^2 - I)| entry: {:.2e}", szegedy.r_squared_check());

    // The arc successor of this walk splits into the two travel directions
    // plus one 2-cycle per position for the reflections.
    let cycles = arc_form.successor.cycles();
    let mut sizes: Vec<usize> = cycles.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    println!("successor cycles: {} of sizes {sizes:?}", cycles.len());

    // Same evolution, two bases: map the coined start onto arcs, run both
    // five steps, map back, compare.
    let quad = [c64(0.5, 0.0), c64(0.0, 0.5), c64(0.5, 0.0), c64(0.0, -0.5)];
    let coined_state = qwm2_initial(&line, 0, quad).unwrap();
    let mut arc_state = arc_form.correspondence.coined_to_arc_state(&coined_state);

    let mut state = coined_state;
    for _ in 0..5 {
        state = walk.step(&state).unwrap();
        arc_state = szegedy.step(&arc_state).unwrap();
    }
    let back = arc_form.correspondence.arc_to_coined_state(&arc_state);
    let max_diff = state
        .amplitudes()
        .iter()
        .zip(back.amplitudes())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0_f64, f64::max);
    println!("\nafter 5 steps in each basis, max state difference: {max_diff:.2e}");
}
