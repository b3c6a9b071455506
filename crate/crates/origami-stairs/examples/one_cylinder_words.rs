//! Single-cylinder directions and the Sturmian/Lyndon words behind them.
//!
//! For a slope q/p the retiled horizontal permutation sigma_hat is the
//! product of sigma_v and sigma_v*sigma_h along a balanced binary word;
//! the direction is single-cylinder exactly when that product is one
//! full cycle.

use origami_stairs::cylinders::{find_single_cylinder_direction, no_single_cylinder_certificate};
use origami_stairs::fixtures;
use origami_stairs::retile::sigma_hat;
use origami_stairs::slope::enumerate_slopes;
use origami_stairs::sturmian::sturmian_lyndon;

fn main() {
    // the words themselves, along the left edge of the Stern-Brocot tree
    for (p, q) in [(1, 1), (1, 2), (2, 3), (3, 5), (5, 8)] {
        let w = sturmian_lyndon(p, q).unwrap();
        println!("p={p} q={q}  word {}  (ones={} len={})", w.as_string(), w.ones(), w.len());
        assert!(w.is_strictly_minimal_rotation());
    }
    println!();

    let o = fixtures::two_row_odd(1);
    println!("two-row surface, k = {}", o.square_count());
    for s in enumerate_slopes(4) {
        let hat = sigma_hat(&o, if s.is_steep() { s } else { s.transpose() });
        let hat = match hat {
            Ok(h) => h,
            Err(_) => continue,
        };
        let cycles = hat.cycle_type().cycle_count();
        println!(
            "  slope {s}: sigma_hat has {cycles} cycle(s){}",
            if cycles == 1 { "  <- single cylinder" } else { "" }
        );
    }
    println!();

    match find_single_cylinder_direction(&o, 10).unwrap() {
        Some(s) => println!("first single-cylinder slope up to q=10: {s}"),
        None => println!("no single-cylinder slope up to q=10"),
    }

    // the Wollmilchsau has none at all: both permutations are even on
    // an even number of squares, so no product word is an 8-cycle
    let w = fixtures::wollmilchsau();
    println!(
        "Wollmilchsau certificate: {:?}",
        no_single_cylinder_certificate(&w, 20).unwrap()
    );
}
