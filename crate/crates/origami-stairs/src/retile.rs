//! Retiling a surface along a steep rational direction, and the
//! induced permutation `sigma_hat` whose cycles are the cylinders.
//!
//! For slope `q/p >= 1` the surface is retiled by `k*q` parallelograms:
//! tile `(i, j)` (index `(i-1)*q + j`, `i in 1..=k`, `j in 1..=q`) is
//! the interval `[(j-1)/q, j/q)` on the base of square `i` flowed one
//! unit of vertical distance.  `sigma_hat` tracks the improper cover by
//! `k` parallelograms obtained by flowing `[0, 1/q)` a vertical
//! distance of `q`.

use crate::perm::Permutation;
use crate::slope::{DirectionError, Slope};
use crate::sturmian::sturmian_lyndon;
use crate::surface::Origami;

fn require_steep_connected(o: &Origami, s: Slope) -> Result<(), DirectionError> {
    if !s.is_steep() {
        return Err(DirectionError::NotSteep(s));
    }
    if !o.is_connected() {
        return Err(DirectionError::Disconnected);
    }
    Ok(())
}

/// The proper retiling `(sigma_h', sigma_v')` on `k*q` tiles.
///
/// Index convention `tile(i, j) = (i-1)*q + j`.  Crossing the top of a
/// tile either stays under the top edge of square `i` (base offset
/// still left of `(q-p)/q`) or first passes the right edge, which is
/// where `sigma_v . sigma_h` enters.
pub fn retile(o: &Origami, s: Slope) -> Result<(Permutation, Permutation), DirectionError> {
    require_steep_connected(o, s)?;
    let k = o.square_count();
    let q = s.rise() as usize;
    let p = s.run() as usize;
    let tile = |i: usize, j: usize| (i - 1) * q + j; // 1-based
    let mut h_images = vec![0usize; k * q];
    let mut v_images = vec![0usize; k * q];
    for i in 1..=k {
        for j in 1..=q {
            let t = tile(i, j);
            h_images[t - 1] = if j < q {
                tile(i, j + 1)
            } else {
                tile(o.sigma_h().apply(i), 1)
            };
            v_images[t - 1] = if j + p <= q {
                tile(o.sigma_v().apply(i), j + p)
            } else {
                tile(o.sigma_v().apply(o.sigma_h().apply(i)), j + p - q)
            };
        }
    }
    let sigma_h_prime = Permutation::from_images(&h_images).expect("retiling is a bijection");
    let sigma_v_prime = Permutation::from_images(&v_images).expect("retiling is a bijection");
    Ok((sigma_h_prime, sigma_v_prime))
}

/// `sigma_hat` via the retiling route: `(sigma_v')^q` restricted to the
/// tiles `(i, 1)`.
pub fn sigma_hat_retiling(o: &Origami, s: Slope) -> Result<Permutation, DirectionError> {
    let (_, sigma_v_prime) = retile(o, s)?;
    let k = o.square_count();
    let q = s.rise() as usize;
    let pow = sigma_v_prime.pow(q);
    let mut images = Vec::with_capacity(k);
    for i in 1..=k {
        let t = pow.apply((i - 1) * q + 1);
        debug_assert_eq!((t - 1) % q, 0, "q-th power must fix the subtiling");
        images.push((t - 1) / q + 1);
    }
    Ok(Permutation::from_images(&images).expect("power of a bijection"))
}

/// `sigma_hat` via word composition: apply `sigma_v` for each `0` and
/// `sigma_v . sigma_h` for each `1` along the Sturmian Lyndon word of
/// `p/q`, first letter acting first.
pub fn sigma_hat_word(o: &Origami, s: Slope) -> Result<Permutation, DirectionError> {
    require_steep_connected(o, s)?;
    let word = sturmian_lyndon(s.run(), s.rise())?;
    let zero = o.sigma_v().clone();
    let one = o
        .sigma_v()
        .compose(o.sigma_h())
        .expect("equal degrees");
    let mut acc = Permutation::identity(o.square_count());
    for &letter in word.letters() {
        let factor = if letter == 1 { &one } else { &zero };
        acc = factor.compose(&acc).expect("equal degrees");
    }
    Ok(acc)
}

/// `sigma_hat` for a steep slope, cross-checked: the retiling route is
/// the returned permutation, and the word route must agree with it up
/// to conjugacy (identical cycle type).
pub fn sigma_hat(o: &Origami, s: Slope) -> Result<Permutation, DirectionError> {
    let by_retiling = sigma_hat_retiling(o, s)?;
    let by_word = sigma_hat_word(o, s)?;
    if by_retiling.cycle_type() != by_word.cycle_type() {
        return Err(DirectionError::RouteMismatch(format!(
            "slope {}: retiling {} vs word {}",
            s,
            by_retiling.cycle_type(),
            by_word.cycle_type()
        )));
    }
    Ok(by_retiling)
}
