//! Build a few square-tiled surfaces and print their strata.
//!
//! The commutator of the two gluing permutations controls everything:
//! its cycles are the vertices of the surface, and a cycle of length m
//! is a cone point of angle 2*pi*m.

use origami_stairs::fixtures;
use origami_stairs::perm::Permutation;
use origami_stairs::surface::{Origami, StratumReport};

fn show(name: &str, o: &Origami) {
    println!("{name}  (k = {})", o.square_count());
    println!("  sigma_h = {}", o.sigma_h().to_cycle_string(false));
    println!("  sigma_v = {}", o.sigma_v().to_cycle_string(false));
    println!("  [v,h]   = {}", o.commutator().to_cycle_string(false));
    match o.stratum_report() {
        StratumReport::Connected(s) => {
            println!("  stratum {}  genus {}", s.h_notation(), s.genus);
            println!(
                "  regular vertices: {}",
                if s.regular_vertices.is_empty() {
                    "none".to_string()
                } else {
                    format!("{:?}", s.regular_vertices)
                }
            );
        }
        StratumReport::Disconnected(parts) => {
            println!("  disconnected into {} components:", parts.len());
            for (squares, s) in parts {
                println!("    {:?} -> {} genus {}", squares, s.h_notation(), s.genus);
            }
        }
    }
    println!();
}

fn main() {
    show("unit torus", &fixtures::torus());
    show("row of 4 squares", &fixtures::torus_row(4));
    show("Wollmilchsau", &fixtures::wollmilchsau());
    show("two-row surface, n = 2", &fixtures::two_row_odd(2));

    // an L-shaped surface: 3 squares, one cone point of angle 6*pi
    let h = Permutation::parse(3, "(1 2)").unwrap();
    let v = Permutation::parse(3, "(1 3)").unwrap();
    show("L-shaped 3 squares", &Origami::build(h, v).unwrap());

    // two disjoint tori
    let h = Permutation::parse(2, "()").unwrap();
    let v = Permutation::parse(2, "()").unwrap();
    show("two disjoint tori", &Origami::build(h, v).unwrap());
}
