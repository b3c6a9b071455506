//! Periodic approximation of an irrational direction by convergents.
//!
//! For each convergent p_n/q_n of theta' = 1/theta mod 1 the report
//! measures the relative approximation error against the cylinder
//! decomposition in the rational direction (q_n : p_n), and flags
//! directions whose partial quotients make the error ratio spike.

use origami_stairs::approx::{approximation_report, IrrationalDirection};
use origami_stairs::fixtures;

fn show(name: &str, theta: &IrrationalDirection, depth: usize) {
    let o = fixtures::torus_row(2);
    let rep = approximation_report(&o, theta, depth).unwrap();
    println!("{name}  theta = {:.9}  theta' = {:.9}  k = {}", rep.theta, rep.theta_prime, rep.square_count);
    println!("   n     p/q      a+1     e_n      k*q*||q theta'||  bracket  1-cyl");
    for r in &rep.rows {
        let cyl = if r.single_cylinder {
            "yes".to_string()
        } else {
            format!("no (max cycle {})", r.max_cycle)
        };
        println!(
            "  {:2}  {:4}/{:<4}  {:3}  {:9.5}  {:9.5}          {}  {}",
            r.n, r.p, r.q, r.a_next, r.e_n, r.kq_norm,
            if r.in_bracket { "  in " } else if r.in_wide_bracket { " wide" } else { "  out" },
            cyl,
        );
    }
    println!(
        "  good candidate: {} {:?}   fairly good: {} {:?}\n",
        rep.good_candidate, rep.good_witness, rep.fairly_good_candidate, rep.fairly_good_witness
    );
}

fn main() {
    // golden ratio: all partial quotients 1, never a good candidate
    let golden = IrrationalDirection::from_partial_quotients(&[1; 22]).unwrap();
    show("golden", &golden, 12);

    // growing quotients: records keep appearing
    let spiky = IrrationalDirection::from_partial_quotients(&[1, 2, 1, 3, 1, 1, 4, 1, 5, 1, 1, 2, 6, 1]).unwrap();
    show("spiky", &spiky, 9);

    // from a decimal string: trusted depth is derived from the error
    let e = IrrationalDirection::from_decimal_str("0.7182818284590452").unwrap();
    println!("decimal input trusted to depth {}", e.trusted_depth());
    show("e - 2", &e, 8);
}
