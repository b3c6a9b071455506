//! Self-avoiding and essential-point diagnostics.
//!
//! A point is self-avoiding for theta when, along every convergent
//! direction, its leaf keeps a definite transverse margin from the
//! corner leaves (scale-free margin eps*h above 1/512).  An essential
//! point additionally sees bounded crossing sums along at least half
//! the inspected convergents.

use origami_stairs::approx::IrrationalDirection;
use origami_stairs::diagnostics::{
    essential_point_diagnostic, self_avoiding_check, SELF_AVOIDING_THRESHOLD,
};
use origami_stairs::fixtures;
use origami_stairs::trace::TracePoint;
use origami_stairs::{q, Q};

fn main() {
    let o = fixtures::torus();
    let golden = IrrationalDirection::from_partial_quotients(&[1; 25]).unwrap();

    let pts = vec![
        TracePoint::new(1, q(1, 7), q(2, 7)),
        TracePoint::new(1, q(355, 1009), q(1, 9)),
        // x = 1/2, y = 1/3: the leaf invariant is periodic, margins shrink
        TracePoint::new(1, q(1, 2), q(1, 3)),
    ];
    let reports = self_avoiding_check(&o, &pts, &golden, 10).unwrap();
    println!(
        "threshold eps*h > {}/{}",
        SELF_AVOIDING_THRESHOLD.0, SELF_AVOIDING_THRESHOLD.1
    );
    for (pt, rep) in pts.iter().zip(&reports) {
        println!(
            "point ({}, {}): passes = {}  empirical eps*h = {}{}",
            pt.x,
            pt.y,
            rep.passes,
            rep.empirical_eps,
            rep.failed_at.map(|n| format!("  (failed at convergent {n})")).unwrap_or_default()
        );
        for r in rep.rows.iter().take(4) {
            println!("    n={} dir ({}, {})  gap {}  eps*h {}", r.n, r.p, r.q, r.gap, r.eps_h);
        }
    }

    // essential-point diagnostic over a cut system; the point needs to
    // be self-avoiding first (1/7, 2/7 above is not: its leaf in
    // direction (1,2) runs straight into a corner)
    let spec = fixtures::two_row_staircase(1);
    let pt = TracePoint::new(1, q(355, 1009), q(1, 9));
    let rep = essential_point_diagnostic(&spec, &pt, &golden, 8, 4).unwrap();
    println!("\nessential (bound {}): {}", rep.bound, rep.essential);
    for r in &rep.rows {
        println!(
            "  n={} dir ({}, {})  sup ||S|| = {}  within = {}  1-cyl = {}",
            r.n, r.p, r.q, r.sup_norm, r.within_p, r.single_cylinder
        );
    }

    let _: Q = rep.self_avoiding.empirical_eps; // exact, not a float
}
