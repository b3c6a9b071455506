//! Seeded diffusion experiment: drift of the displacement in the cover
//! over many random rational directions.
//!
//! For a zero-integral staircase the displacement should crawl
//! (sublinear drift, repeated returns to zero); break the balance and
//! it runs off linearly.

use origami_stairs::cut::{Cut, StaircaseSpec};
use origami_stairs::diffusion::diffusion_experiment;
use origami_stairs::fixtures;
use origami_stairs::group::Group;
use origami_stairs::q;

fn main() {
    let spec = fixtures::hhw_staircase();
    let rep = diffusion_experiment(&spec, 12, q(20_000, 1), 1).unwrap();
    println!("balanced staircase, T = {}, seed {}", rep.t, rep.seed);
    println!(
        "  drift/T: min {:.2e}  median {:.2e}  p90 {:.2e}  max {:.2e}",
        rep.drift.min, rep.drift.median, rep.drift.p90, rep.drift.max
    );
    println!("  median returns to zero: {}", rep.returns_median);
    for d in rep.directions.iter().take(5) {
        println!(
            "  dir ({:3},{:3})  final ||S|| = {:4}  max excursion {:4}  returns {}",
            d.p, d.q, d.final_norm, d.max_excursion, d.returns
        );
    }

    // same surface, unbalanced cut: drift is linear
    let g = Group::z(1).unwrap();
    let unbalanced = StaircaseSpec::new(
        fixtures::torus_row(2),
        g,
        vec![Cut::left_edge(1, g.generator(0))],
    )
    .unwrap();
    let rep = diffusion_experiment(&unbalanced, 12, q(20_000, 1), 1).unwrap();
    println!("\nunbalanced cut, same directions:");
    println!(
        "  drift/T: min {:.2e}  median {:.2e}  max {:.2e}",
        rep.drift.min, rep.drift.median, rep.drift.max
    );
}
