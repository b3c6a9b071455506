//! Small reference surfaces and staircase specs used across tests,
//! examples, and the docs.

use crate::cut::{Cut, StaircaseSpec};
use crate::group::Group;
use crate::perm::Permutation;
use crate::surface::Origami;
use crate::{q, Q};

/// The unit square torus: both permutations trivial.
pub fn torus() -> Origami {
    Origami::build(Permutation::identity(1), Permutation::identity(1)).unwrap()
}

/// A single horizontal row of `k` squares glued into a torus:
/// `sigma_h` one `k`-cycle, `sigma_v` trivial.
pub fn torus_row(k: usize) -> Origami {
    let row: Vec<usize> = (1..=k).collect();
    Origami::build(
        Permutation::from_cycles(k, &[row]).unwrap(),
        Permutation::identity(k),
    )
    .unwrap()
}

/// The eierlegende Wollmilchsau: eight squares in H(1,1,1,1), both
/// generators even, so no direction is single-cylinder.
pub fn wollmilchsau() -> Origami {
    Origami::build(
        Permutation::from_cycles(8, &[vec![1, 2, 3, 4], vec![5, 6, 7, 8]]).unwrap(),
        Permutation::from_cycles(8, &[vec![1, 8, 3, 6], vec![2, 7, 4, 5]]).unwrap(),
    )
    .unwrap()
}

/// Two rows of `2n+1` squares each, the vertical gluing matching the
/// rows along all but the first column of each: `4n+2` squares in
/// H(1,1) with both generators even.
pub fn two_row_odd(n: usize) -> Origami {
    assert!(n >= 1);
    let w = 2 * n + 1;
    let k = 2 * w;
    let top: Vec<usize> = (1..=w).collect();
    let bottom: Vec<usize> = (w + 1..=k).collect();
    let v_cycles: Vec<Vec<usize>> = (2..=w).map(|j| vec![j, w + j]).collect();
    Origami::build(
        Permutation::from_cycles(k, &[top, bottom]).unwrap(),
        Permutation::from_cycles(k, &v_cycles).unwrap(),
    )
    .unwrap()
}

fn five_square_base(sigma_v: &[Vec<usize>]) -> Origami {
    Origami::build(
        Permutation::from_cycles(5, &[vec![1, 2], vec![3, 4, 5]]).unwrap(),
        Permutation::from_cycles(5, sigma_v.to_vec().as_slice()).unwrap(),
    )
    .unwrap()
}

/// Five squares in H(2) with a Z-valued cut pair whose endpoints all
/// sit at the cone point: the negative ergodicity criterion applies.
pub fn five_square_h2_singular_cuts() -> StaircaseSpec {
    let o = five_square_base(&[vec![1, 3], vec![2, 4]]);
    let g = Group::z(1).unwrap();
    let plus = g.generator(0);
    let cuts = vec![
        Cut::left_edge(3, plus.clone()),
        Cut::left_edge(1, plus.neg()),
    ];
    StaircaseSpec::new(o, g, cuts).unwrap()
}

/// Five squares in H(2), same horizontal gluing but a vertical gluing
/// for which the `+1` cut has both endpoints at regular vertices.
pub fn five_square_h2_free_cuts() -> StaircaseSpec {
    let o = five_square_base(&[vec![1, 5], vec![2, 3]]);
    let g = Group::z(1).unwrap();
    let plus = g.generator(0);
    let cuts = vec![
        Cut::left_edge(2, plus.clone()),
        Cut::left_edge(1, plus.neg()),
    ];
    StaircaseSpec::new(o, g, cuts).unwrap()
}

/// The two-row surface with a Z-valued cut system whose per-row sums
/// vanish; each horizontal cylinder sees total value zero.
pub fn two_row_staircase(n: usize) -> StaircaseSpec {
    let o = two_row_odd(n);
    let g = Group::z(1).unwrap();
    let plus = g.generator(0);
    let cuts = vec![
        Cut::left_edge(2 * n + 2, plus.neg()),
        Cut::left_edge(3, plus.clone()),
        Cut::left_edge(4 * n + 1, plus.clone()),
        Cut::left_edge(1, plus.neg()),
    ];
    StaircaseSpec::new(o, g, cuts).unwrap()
}

/// The simple staircase: a two-square torus row with opposite unit
/// values on the two vertical seams.
pub fn hhw_staircase() -> StaircaseSpec {
    let o = torus_row(2);
    let g = Group::z(1).unwrap();
    let plus = g.generator(0);
    let cuts = vec![Cut::left_edge(1, plus.clone()), Cut::left_edge(2, plus.neg())];
    StaircaseSpec::new(o, g, cuts).unwrap()
}

/// Torus with two horizontal cuts of length `r` on the bottom edge,
/// `[0, r)` valued `+1` and `[beta, beta + r)` valued `-1`.
/// Requires `0 < r <= beta` and `beta + r <= 1`.
pub fn conze(beta: Q, r: Q) -> StaircaseSpec {
    assert!(r > q(0, 1) && r <= beta && beta + r <= q(1, 1));
    let o = torus();
    let g = Group::z(1).unwrap();
    let plus = g.generator(0);
    let cuts = vec![
        Cut::new(1, (q(0, 1), q(0, 1)), (1, 0), r, plus.clone()),
        Cut::new(1, (beta, q(0, 1)), (1, 0), r, plus.neg()),
    ];
    StaircaseSpec::new(o, g, cuts).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strata() {
        assert_eq!(torus().stratum().unwrap().h_notation(), "H(0)");
        assert_eq!(wollmilchsau().stratum().unwrap().h_notation(), "H(1,1,1,1)");
        for n in 1..=3 {
            assert_eq!(two_row_odd(n).stratum().unwrap().h_notation(), "H(1,1)");
        }
        for spec in [five_square_h2_singular_cuts(), five_square_h2_free_cuts()] {
            assert_eq!(spec.origami.stratum().unwrap().h_notation(), "H(2)");
        }
    }

    #[test]
    fn connected() {
        assert!(two_row_odd(2).is_connected());
        assert!(five_square_h2_free_cuts().origami.is_connected());
        assert!(hhw_staircase().origami.is_connected());
    }

    #[test]
    fn staircase_cut_sums_vanish() {
        for n in 1..=3 {
            let spec = two_row_staircase(n);
            let total = spec
                .cuts
                .iter()
                .fold(spec.group.zero(), |acc, c| acc.add(&c.value));
            assert!(total.is_zero());
        }
    }

    #[test]
    fn natural_shapes() {
        assert!(hhw_staircase().natural);
        assert!(two_row_staircase(1).natural);
        assert!(!conze(q(1, 2), q(1, 4)).natural);
    }
}
