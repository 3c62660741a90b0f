//! The three combinatorial controls of a walk, and their validators.
//!
//! A coined walk is steered by a vertex partition (which arc does coin `c`
//! take at vertex `v`), a coin shift table `gc` (what the coin becomes after
//! the move), and, on the arc side, a successor permutation `f`. All three
//! have validators that name every violation instead of failing fast.

use memwalk::bridge::coined_to_szegedy;
use memwalk::coined::build_qwm2;
use memwalk::partition::CoinShiftFunction;

fn main() {
    // The transmit/reflect walk on the 8-cycle with one step of memory.
    let (walk, line) = build_qwm2(8).unwrap();
    let p = walk.partition();

    println!("partition of L C_8 into {} classes:", p.degree());
    for v in [0, 1] {
        let path = line.path(v);
        for c in 0..p.degree() {
            let succ = p.successor(v, c);
            println!("  class {} at walk {path}: continue as {}", c + 1, line.path(succ));
        }
    }

    let report = p.validate();
    println!("partition report: {report}");
    let dicycle = p.dicycle_classes();
    println!("classes are dicycles: {dicycle:?}");

    // The gc table for this walk keeps every coin as it is; the validator
    // checks the arrival rule: at every vertex the incoming moves must
    // deliver one coin of each kind.
    println!("\ncoin shift report: {}", walk.shift().validate(p));

    // Corrupt one entry and the arrival rule breaks at one named vertex.
    let nv = walk.graph().n_vertices();
    let mut table: Vec<usize> = (0..nv * 2).map(|i| walk.shift().get(i / 2, i % 2)).collect();
    table[5] = 1 - table[5]; // vertex 2, coin 2
    let bad = CoinShiftFunction::new(nv, 2, table).unwrap();
    let report = bad.validate(p);
    println!("\nafter corrupting one entry:");
    println!("{report}");
    println!("vertices implicated: {:?}", report.named_vertices());

    // On the arc side the same walk is a permutation of the 32 arcs of
    // L C_8. Its cycles separate the two transmit lanes (one long cycle
    // per direction) from the reflections (a 2-cycle at each position).
    let f = coined_to_szegedy(&walk).successor;
    println!("\narc successor report: {}", f.validate());
    let cycles = f.cycles();
    let mut sizes: Vec<usize> = cycles.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    println!("{} cycles, sizes {sizes:?}", cycles.len());
}
