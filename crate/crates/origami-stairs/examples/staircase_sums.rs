//! Exact ergodic sums over a Z-valued staircase cover.
//!
//! A staircase spec is a surface plus valued cuts; a geodesic picks up
//! the value of each cut it crosses, signed by the crossing
//! orientation.  The running sum is the displacement in the cover.

use origami_stairs::fixtures;
use origami_stairs::q;
use origami_stairs::trace::{ergodic_sum, TracePoint};

fn main() {
    let spec = fixtures::hhw_staircase();
    println!(
        "staircase over {} squares, {} cuts, group rank {}",
        spec.origami.square_count(),
        spec.cuts.len(),
        spec.group.rank()
    );

    let start = TracePoint::new(1, q(1, 7), q(2, 7));
    for (dir, t) in [((1, 1), 50), ((2, 3), 50), ((5, 3), 200)] {
        let tr = ergodic_sum(&spec, start.clone(), dir, q(t, 1)).unwrap();
        println!(
            "dir {:?}, T = {t}: {} crossings, total {:?}, status {:?}",
            dir,
            tr.crossings.len(),
            tr.total.lift(),
            tr.status
        );
        // running sum over the first few crossings
        let mut running = spec.group.zero();
        for c in tr.crossings.iter().take(8) {
            let v = &spec.cuts[c.cut].value;
            let signed = if c.sign > 0 { v.clone() } else { v.neg() };
            running = running.add(&signed);
            println!("    lambda = {}  cut {}  sign {:+}  S = {:?}", c.lambda, c.cut, c.sign, running.lift());
        }
    }
}
