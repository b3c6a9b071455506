//! Cross-checks of the permutation-based cylinder machinery against a
//! brute-force geodesic-tracing oracle that shares no code with it.

mod common;

use common::{oracle_cylinder_areas, random_connected_origami};
use origami_stairs::cylinders::{cylinder_decomposition, is_single_cylinder};
use origami_stairs::fixtures;
use origami_stairs::retile::{sigma_hat_retiling, sigma_hat_word};
use origami_stairs::slope::enumerate_slopes;
use origami_stairs::Slope;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn check_origami(o: &origami_stairs::Origami, q_max: u64) {
    let k = o.square_count();
    for s in enumerate_slopes(q_max) {
        let steep = if s.is_steep() { s } else { s.transpose() };
        let surf = if s.is_steep() { o.clone() } else { o.transpose() };
        let a = sigma_hat_retiling(&surf, steep).unwrap();
        let b = sigma_hat_word(&surf, steep).unwrap();
        assert_eq!(
            a.cycle_type(),
            b.cycle_type(),
            "route mismatch on slope {s}: h={} v={}",
            o.sigma_h().to_cycle_string(false),
            o.sigma_v().to_cycle_string(false)
        );
        let oracle = oracle_cylinder_areas(o, s);
        let d = cylinder_decomposition(o, s).unwrap();
        let mut areas: Vec<usize> = d.cylinders.iter().map(|c| c.area).collect();
        areas.sort();
        assert_eq!(areas, oracle, "area mismatch on slope {s}");
        assert_eq!(areas.iter().sum::<usize>(), k);
        assert_eq!(d.total_area, k);
        assert_eq!(
            is_single_cylinder(o, s).unwrap(),
            oracle.len() == 1,
            "verdict mismatch on slope {s}"
        );
    }
}

#[test]
fn fixtures_match_the_geodesic_oracle() {
    for o in [
        fixtures::torus(),
        fixtures::torus_row(3),
        fixtures::wollmilchsau(),
        fixtures::two_row_odd(1),
        fixtures::two_row_odd(2),
    ] {
        check_origami(&o, 5);
    }
}

#[test]
fn random_surfaces_match_the_geodesic_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0eac1e);
    for _ in 0..40 {
        let o = random_connected_origami(&mut rng, 8);
        check_origami(&o, 4);
    }
}

#[test]
fn oracle_agrees_on_large_denominators() {
    let o = fixtures::two_row_odd(1);
    for (rise, run) in [(13, 8), (17, 5), (29, 12), (8, 13)] {
        let s = Slope::new(rise, run).unwrap();
        let oracle = oracle_cylinder_areas(&o, s);
        let d = cylinder_decomposition(&o, s).unwrap();
        let mut areas: Vec<usize> = d.cylinders.iter().map(|c| c.area).collect();
        areas.sort();
        assert_eq!(areas, oracle, "slope {s}");
    }
}
