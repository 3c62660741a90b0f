//! Graphs, their line digraphs, and what the iterated vertices mean.
//!
//! A walker with `d` steps of memory lives on the `d`-fold line digraph:
//! each vertex of that graph is a length-`d` walk of the original graph.
//! This example builds the directed 6-cycle, iterates twice, and decodes a
//! few vertices back into the walks they stand for.

use memwalk::graph::{iterated_line_digraph_capped, line_digraph, LineGraph};
use memwalk::RegularDigraph;

fn main() {
    let cycle = RegularDigraph::cycle(6).unwrap();
    println!(
        "C_6: {} vertices, degree {}, {} arcs",
        cycle.n_vertices(),
        cycle.degree(),
        cycle.n_arcs()
    );

    // One application: vertices of L C_6 are the arcs of C_6.
    let once = line_digraph(&cycle);
    println!(
        "L C_6: {} vertices, {} arcs (vertex k <-> arc k of the base)",
        once.n_vertices(),
        once.n_arcs()
    );
    for a in [0, 1, 7] {
        let (t, h) = cycle.arc(a);
        println!("  vertex {a} of L C_6 is the arc ({t}, {h}), labeled {:?}", once.label(a));
    }

    // Two applications, bundled with the decoding back to walks.
    let line = LineGraph::with_depth(cycle, 2).unwrap();
    println!(
        "\nL^2 C_6: {} vertices, {} arcs; every vertex is a 2-step walk",
        line.graph().n_vertices(),
        line.graph().n_arcs()
    );
    for v in [0, 5, 11] {
        let path = line.path(v);
        println!(
            "  vertex {v} = walk {path}: memory {:?}, position {}",
            path.memory(),
            path.position()
        );
    }

    // Out-neighbors extend the walk by one step; the old tail falls off.
    let v = 0;
    println!("\nsuccessors of walk {}:", line.path(v));
    for &a in line.graph().out_arcs(v) {
        let w = line.graph().head(a);
        println!("  -> {}", line.path(w));
    }

    // Growth is geometric in the degree, so a cap guards against typos in
    // the depth. C_6 has 12 arcs, each level doubles:
    match iterated_line_digraph_capped(&RegularDigraph::cycle(6).unwrap(), 12, 10_000) {
        Err(e) => println!("\ndepth 12 refused: {e}"),
        Ok(_) => unreachable!("12 levels of doubling blow past the cap"),
    }
}
