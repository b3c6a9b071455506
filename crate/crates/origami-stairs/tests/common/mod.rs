//! Shared helpers for the integration suites: seeded random surfaces
//! and an independent brute-force cylinder oracle that traces actual
//! geodesics instead of composing permutations.
#![allow(dead_code)] // each test binary uses its own subset

use origami_stairs::perm::Permutation;
use origami_stairs::surface::Origami;
use origami_stairs::{q, Q, Slope};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_perm(rng: &mut ChaCha8Rng, k: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=k).collect();
    images.shuffle(rng);
    Permutation::from_images(&images).unwrap()
}

pub fn random_origami(rng: &mut ChaCha8Rng, k_max: usize) -> Origami {
    let k = rng.gen_range(1..=k_max);
    Origami::build(random_perm(rng, k), random_perm(rng, k)).unwrap()
}

pub fn random_connected_origami(rng: &mut ChaCha8Rng, k_max: usize) -> Origami {
    loop {
        let o = random_origami(rng, k_max);
        if o.is_connected() {
            return o;
        }
    }
}

/// Cylinder areas in direction `s`, sorted, by tracing geodesics.
///
/// For rise q >= 1 the trace starts at the k*q midpoints
/// `(square, (2j+1)/(2q), 0)`: every midpoint leaf has transverse class
/// 1/2 so it never meets a corner, each cylinder meets the midpoint
/// leaf in exactly one closed geodesic, and that geodesic runs through
/// `area * q` midpoints.  Horizontal directions fall back to the cycles
/// of sigma_h.
pub fn oracle_cylinder_areas(o: &Origami, s: Slope) -> Vec<usize> {
    let k = o.square_count();
    if s.is_horizontal() {
        let mut areas: Vec<usize> = o.sigma_h().cycles().iter().map(|c| c.len()).collect();
        areas.sort();
        return areas;
    }
    let rise = s.rise() as i128;
    let run = s.run() as i128;
    // one step of the return map on the section y = 0
    let step = |square: usize, j: usize| -> (usize, usize) {
        let mut sq = square;
        let mut x = q(2 * j as i128 + 1, 2 * rise);
        let mut y: Q = q(0, 1);
        loop {
            let lam_top = (q(1, 1) - y) / q(rise, 1);
            let lam_right = if run == 0 {
                None
            } else {
                Some((q(1, 1) - x) / q(run, 1))
            };
            match lam_right {
                Some(lr) if lr < lam_top => {
                    y += lr * q(rise, 1);
                    x = q(0, 1);
                    sq = o.sigma_h().apply(sq);
                }
                Some(lr) if lr == lam_top => unreachable!("midpoint leaf hit a corner"),
                _ => {
                    x += lam_top * q(run, 1);
                    assert!(x < q(1, 1), "midpoint leaf hit a corner");
                    sq = o.sigma_v().apply(sq);
                    let two_qx = x * q(2 * rise, 1);
                    assert!(two_qx.is_integer());
                    let jj = (two_qx.to_integer() - 1) / 2;
                    return (sq, jj as usize);
                }
            }
        }
    };
    let qq = s.rise() as usize;
    let mut seen = vec![false; k * qq];
    let mut areas = Vec::new();
    for start in 0..k * qq {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let (mut sq, mut j) = (start / qq + 1, start % qq);
        loop {
            let idx = (sq - 1) * qq + j;
            if seen[idx] {
                break;
            }
            seen[idx] = true;
            len += 1;
            let next = step(sq, j);
            sq = next.0;
            j = next.1;
        }
        assert_eq!(len % qq, 0, "orbit length must be a multiple of the rise");
        areas.push(len / qq);
    }
    areas.sort();
    areas
}
