//! Square-tiled translation surfaces as permutation pairs.
//!
//! A surface tiled by `k` unit squares is encoded by two permutations:
//! `sigma_h` glues the right side of square `i` to the left side of
//! `sigma_h(i)`, and `sigma_v` glues the top of `i` to the bottom of
//! `sigma_v(i)`.  From that pair the crate computes connectivity, the
//! stratum (genus and cone angles), cylinder decompositions in rational
//! directions, and single-cylinder directions via the Farey/Lyndon word
//! construction.  On top of the compact surface it simulates Z^d (and
//! Z/m) skew-product covers given by valued cuts: exact ergodic sums
//! along geodesics, per-cylinder sum profiles, the Koksma-type bound
//! check, self-avoiding and essential-point diagnostics, and staircase
//! classification.
//!
//! Start with [`perm::Permutation`] and [`surface::Origami`]; the
//! `examples/` directory has one runnable example per major capability.

pub mod approx;
pub mod classify;
pub mod cli;
pub mod cut;
pub mod cylinders;
pub mod diagnostics;
pub mod diffusion;
pub mod fixtures;
pub mod format;
pub mod group;
pub mod perm;
pub mod profile;
pub mod retile;
pub mod slope;
pub mod sturmian;
pub mod surface;
pub mod trace;

pub use perm::{CycleType, Permutation};
pub use slope::Slope;
pub use surface::Origami;

/// Exact scalar used throughout the geometric kernel.  Coordinates stay
/// in `[0,1)` and denominators are bounded by the input data, so a
/// fixed-width rational is safe and fast.
pub type Q = num_rational::Ratio<i128>;

/// Convenience constructor for exact rationals.
pub fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}
