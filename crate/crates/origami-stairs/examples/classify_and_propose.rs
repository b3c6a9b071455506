//! Automatic ergodicity classification, and cut-system synthesis.

use origami_stairs::classify::{classify_staircase, propose_staircase, Proposal};
use origami_stairs::fixtures;
use origami_stairs::format::{print_surface, SurfaceDocument};

fn main() {
    for (name, spec) in [
        ("five squares, singular endpoints", fixtures::five_square_h2_singular_cuts()),
        ("five squares, free endpoint", fixtures::five_square_h2_free_cuts()),
        ("Z staircase over two squares", fixtures::hhw_staircase()),
        ("two-row staircase, n = 1", fixtures::two_row_staircase(1)),
    ] {
        let rep = classify_staircase(&spec).unwrap();
        println!("{name}: {:?}", rep.verdict);
        println!("  {}", rep.justification);
        if let Some(s) = rep.single_cylinder_direction {
            println!("  single-cylinder direction {s}");
        }
        if let Some(sup) = &rep.supplementary {
            println!(
                "  direction {} splits into {} zero-sum cylinders, equal profiles: {}",
                sup.slope, sup.cylinder_count, sup.profiles_equal_as_multisets
            );
        }
        println!();
    }

    // ask for a Z^2-valued staircase over a row of four squares
    let o = fixtures::torus_row(4);
    match propose_staircase(&o, 2).unwrap() {
        Proposal::Feasible { spec, classification } => {
            println!("proposed staircase ({:?}):", classification.verdict);
            let doc = SurfaceDocument {
                name: Some("proposed".into()),
                origami: spec.origami.clone(),
                spec: Some(spec),
                declared_stratum: None,
            };
            print!("{}", print_surface(&doc));
        }
        Proposal::Infeasible { reason, not_ergodic_warning } => {
            println!("infeasible: {:?} (warning: {not_ergodic_warning})", reason);
        }
    }

    // the torus has no regular vertex to spare
    match propose_staircase(&fixtures::torus(), 1).unwrap() {
        Proposal::Feasible { .. } => unreachable!(),
        Proposal::Infeasible { reason, .. } => println!("\ntorus: infeasible, {:?}", reason),
    }
}
