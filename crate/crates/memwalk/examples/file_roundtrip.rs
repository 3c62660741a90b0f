//! Write every on-disk artifact, read it back, and show the error texture.
//!
//! Walk components persist as small whitespace-separated text files: graph
//! arc lists, partition rows, coin shift tables (1-based on disk), arc
//! successor images, and arc amplitudes. Parsers report the 1-based line of
//! the first problem. Distributions export as plain CSV with no metadata
//! rows, so repeated runs are byte-identical.

use std::fs;
use std::sync::Arc;

use memwalk::bridge::coined_to_szegedy;
use memwalk::coined::build_qwm2;
use memwalk::io;

fn main() {
    let dir = tempfile::tempdir().unwrap();
    let at = |name: &str| dir.path().join(name);

    let (walk, line) = build_qwm2(6).unwrap();
    let arc_form = coined_to_szegedy(&walk);
    let szegedy = arc_form.szegedy_walk().unwrap();
    let graph = walk.graph();

    // Serialize all five artifact kinds.
    fs::write(at("graph.txt"), io::graph_to_string(graph)).unwrap();
    fs::write(at("partition.txt"), io::partition_to_string(walk.partition())).unwrap();
    fs::write(at("shift.txt"), io::coin_shift_to_string(walk.shift())).unwrap();
    fs::write(at("arcs.txt"), io::arc_successor_to_string(&arc_form.successor)).unwrap();
    fs::write(at("amps.txt"), io::amplitudes_to_string(szegedy.amplitudes())).unwrap();

    println!("graph.txt starts with:");
    let text = fs::read_to_string(at("graph.txt")).unwrap();
    for l in text.lines().take(4) {
        println!("  {l}");
    }

    // Read everything back against the recovered graph.
    let g = Arc::new(io::read_graph(&at("graph.txt")).unwrap());
    let p = io::read_partition(&at("partition.txt"), Arc::clone(&g)).unwrap();
    let gc = io::read_coin_shift(&at("shift.txt")).unwrap();
    let f = io::read_arc_successor(&at("arcs.txt"), Arc::clone(&g)).unwrap();
    let amps = io::read_amplitudes(&at("amps.txt"), Arc::clone(&g)).unwrap();

    println!("\nround trip: graph {} vertices, partition {}, shift {}, successor {}",
        g.n_vertices(),
        p.validate(),
        gc.validate(&p),
        f.validate(),
    );
    let max_alpha_diff = amps
        .alphas()
        .iter()
        .zip(szegedy.amplitudes().alphas())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0_f64, f64::max);
    println!("amplitudes max reread difference: {max_alpha_diff:.2e}");

    // Parsers check form and point at the first bad line.
    let shift = fs::read_to_string(at("shift.txt")).unwrap();
    fs::write(at("garbled.txt"), shift.replacen("1 2", "1 x", 1)).unwrap();
    match io::read_coin_shift(&at("garbled.txt")) {
        Err(e) => println!("\ngarbled shift file rejected: {e}"),
        Ok(_) => println!("\nunexpectedly parsed"),
    }

    // Values that merely mean the wrong thing pass parsing and fall to the
    // validator, which names the offender instead of a line.
    fs::write(at("out_of_range.txt"), shift.replacen("1 2", "1 9", 1)).unwrap();
    let suspect = io::read_coin_shift(&at("out_of_range.txt")).unwrap();
    println!("out-of-range shift file parses, validator says: {}", suspect.validate(&p));

    // Distribution export: header of position labels, one row per step.
    let labels: Vec<String> = (0..3).map(|v| line.base().label(v).to_string()).collect();
    let rows = vec![vec![1.0, 0.0, 0.0], vec![0.25, 0.5, 0.25]];
    print!("\ndistribution csv:\n{}", io::distribution_csv(&labels, &rows));
}
