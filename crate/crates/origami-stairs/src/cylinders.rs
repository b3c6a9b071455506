//! Cylinder decompositions in rational directions, single-cylinder
//! detection, obstruction certificates, and the bounded search for a
//! single-cylinder direction.

use std::fmt;

use serde::Serialize;

use crate::perm::Parity;
use crate::retile::{retile, sigma_hat};
use crate::slope::{enumerate_slopes, DirectionError, Slope};
use crate::surface::Origami;
use crate::{q, Q};

/// A length carrying a square-root factor: `coeff * sqrt(radicand)`.
/// Areas and ratios stay exact; decimals only appear at display time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SqrtLen {
    pub coeff: Q,
    pub radicand: u64,
}

impl SqrtLen {
    pub fn new(coeff: Q, radicand: u64) -> SqrtLen {
        SqrtLen { coeff, radicand }
    }

    pub fn to_f64(&self) -> f64 {
        let c = *self.coeff.numer() as f64 / *self.coeff.denom() as f64;
        c * (self.radicand as f64).sqrt()
    }
}

impl fmt::Display for SqrtLen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == 1 {
            return write!(f, "{}", self.coeff);
        }
        if self.coeff == q(1, 1) {
            return write!(f, "sqrt({})", self.radicand);
        }
        write!(f, "{}*sqrt({})", self.coeff, self.radicand)
    }
}

/// One cylinder: a cycle of `sigma_hat`.  The cycle lists which
/// improper parallelograms (anchored at square base intervals) the
/// cylinder passes through; the area is the cycle length in unit
/// squares.
#[derive(Debug, Clone, Serialize)]
pub struct Cylinder {
    /// The `sigma_hat` cycle (square labels anchoring the
    /// parallelograms).
    pub cycle: Vec<usize>,
    pub height: SqrtLen,
    pub width: SqrtLen,
    /// Exact area in unit squares: the cycle length.
    pub area: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CylinderDecomposition {
    pub slope: Slope,
    pub cylinders: Vec<Cylinder>,
    /// Sum of cylinder areas; always the square count.
    pub total_area: usize,
    /// `tile_to_cylinder[t]` is the cylinder index of retiling tile
    /// `t+1` (steep picture; for shallow slopes the tiles refer to the
    /// transposed surface).
    tile_to_cylinder: Vec<usize>,
    /// Rise and run of the steep representative (the `q` and `p` of
    /// the retiling).
    steep_rise: u64,
    steep_run: u64,
    transposed: bool,
    /// 1-based inverse images of sigma_h on the steep surface.
    sigma_h_inv: Vec<usize>,
}

impl CylinderDecomposition {
    pub fn is_single_cylinder(&self) -> bool {
        self.cylinders.len() == 1
    }

    /// Locate the cylinder containing the point `(square, x, y)` with
    /// `x, y` in `[0,1)`.  Points on tile boundaries are assigned on
    /// the closed-left convention.
    pub fn cylinder_of_point(&self, square: usize, x: Q, y: Q) -> usize {
        let (mut x, y) = if self.transposed { (y, x) } else { (x, y) };
        let qq = self.steep_rise as i128;
        let p = self.steep_run as i128;
        // flow backwards along the steep direction to the section y=0;
        // each unit drop shifts x left by p/q, wrapping through sigma_h
        let mut s = square;
        x -= y * q(p, qq);
        while x < q(0, 1) {
            x += q(1, 1);
            s = self.sigma_h_inv[s - 1];
        }
        let j = (x * q(qq, 1)).floor().to_integer() as usize; // 0-based subinterval
        let tile = (s - 1) * self.steep_rise as usize + j;
        self.tile_to_cylinder[tile]
    }
    fn build_steep(
        o: &Origami,
        s: Slope,
        original: Slope,
        transposed: bool,
    ) -> Result<Self, DirectionError> {
        let hat = sigma_hat(o, s)?;
        let radicand = s.length_squared();
        let qq = s.rise() as usize;
        let k = o.square_count();
        let cycles = hat.cycles();
        let mut cyl_of_anchor = vec![0usize; k];
        let cylinders: Vec<Cylinder> = cycles
            .iter()
            .enumerate()
            .map(|(ci, cycle)| {
                for &sq in cycle {
                    cyl_of_anchor[sq - 1] = ci;
                }
                Cylinder {
                    cycle: cycle.clone(),
                    height: SqrtLen::new(q(cycle.len() as i128, 1), radicand),
                    width: SqrtLen::new(q(1, radicand as i128), radicand),
                    area: cycle.len(),
                }
            })
            .collect();
        // every retiling tile belongs to the parallelogram of exactly
        // one sigma_hat anchor: follow sigma_v' from each anchor tile
        let mut tile_to_cylinder = vec![usize::MAX; k * qq];
        let (_, sigma_v_prime) = retile(o, s)?;
        for anchor in 1..=k {
            let mut t = (anchor - 1) * qq + 1;
            for _ in 0..qq {
                tile_to_cylinder[t - 1] = cyl_of_anchor[anchor - 1];
                t = sigma_v_prime.apply(t);
            }
        }
        debug_assert!(tile_to_cylinder.iter().all(|&c| c != usize::MAX));
        let sigma_h_inv: Vec<usize> = {
            let inv = o.sigma_h().inverse();
            (1..=k).map(|i| inv.apply(i)).collect()
        };
        Ok(CylinderDecomposition {
            slope: original,
            total_area: cylinders.iter().map(|c| c.area).sum(),
            cylinders,
            tile_to_cylinder,
            steep_rise: s.rise(),
            steep_run: s.run(),
            transposed,
            sigma_h_inv,
        })
    }
}

/// Decompose the surface into cylinders in the given rational
/// direction.  Shallow slopes go through the transposed surface; the
/// reported cylinders carry the original slope.
pub fn cylinder_decomposition(
    o: &Origami,
    s: Slope,
) -> Result<CylinderDecomposition, DirectionError> {
    if s.is_steep() {
        CylinderDecomposition::build_steep(o, s, s, false)
    } else {
        CylinderDecomposition::build_steep(&o.transpose(), s.transpose(), s, true)
    }
}

pub fn is_single_cylinder(o: &Origami, s: Slope) -> Result<bool, DirectionError> {
    let (surf, steep) = if s.is_steep() {
        (o.clone(), s)
    } else {
        (o.transpose(), s.transpose())
    };
    Ok(sigma_hat(&surf, steep)?.cycle_type().is_single_full_cycle())
}

/// Why a surface has no single-cylinder direction (or `None` if it
/// might have one).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// Both generators are even and `k` is even: the generated group
    /// lies in the alternating group, which contains no `k`-cycle, so
    /// no direction is single-cylinder.
    ParityObstruction,
    /// No slope with rise and run up to the bound works; not a proof.
    ExhaustedSearch(u64),
    /// No obstruction found (single-cylinder directions may exist).
    None,
}

pub fn no_single_cylinder_certificate(
    o: &Origami,
    q_max: u64,
) -> Result<Certificate, DirectionError> {
    if !o.is_connected() {
        return Err(DirectionError::Disconnected);
    }
    let k = o.square_count();
    if k % 2 == 0
        && o.sigma_h().cycle_type().parity() == Parity::Even
        && o.sigma_v().cycle_type().parity() == Parity::Even
    {
        return Ok(Certificate::ParityObstruction);
    }
    match find_single_cylinder_direction(o, q_max)? {
        Some(_) => Ok(Certificate::None),
        None => Ok(Certificate::ExhaustedSearch(q_max)),
    }
}

/// First single-cylinder slope in the fixed enumeration order, or
/// `None` when the bounded search is exhausted.
pub fn find_single_cylinder_direction(
    o: &Origami,
    q_max: u64,
) -> Result<Option<Slope>, DirectionError> {
    if !o.is_connected() {
        return Err(DirectionError::Disconnected);
    }
    for s in enumerate_slopes(q_max) {
        if is_single_cylinder(o, s)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn torus_diagonal() {
        let t = fixtures::torus();
        let d = cylinder_decomposition(&t, Slope::new(1, 1).unwrap()).unwrap();
        assert!(d.is_single_cylinder());
        assert_eq!(d.cylinders[0].area, 1);
        assert_eq!(d.cylinders[0].height.to_string(), "sqrt(2)");
        assert_eq!(d.cylinders[0].width.to_string(), "1/2*sqrt(2)");
        assert_eq!(d.total_area, 1);
    }

    #[test]
    fn wollmilchsau_diagonal_two_cylinders() {
        let w = fixtures::wollmilchsau();
        let d = cylinder_decomposition(&w, Slope::new(1, 1).unwrap()).unwrap();
        assert_eq!(d.cylinders.len(), 2);
        assert!(d.cylinders.iter().all(|c| c.area == 4));
        assert_eq!(d.total_area, 8);
    }

    #[test]
    fn two_row_horizontal_two_cylinders() {
        // horizontal direction goes through the transpose
        for n in 1..=3usize {
            let o = fixtures::two_row_odd(n);
            let d = cylinder_decomposition(&o, Slope::new(0, 1).unwrap()).unwrap();
            assert_eq!(d.cylinders.len(), 2);
            assert!(d.cylinders.iter().all(|c| c.area == 2 * n + 1));
            assert_eq!(d.total_area, 4 * n + 2);
        }
    }

    #[test]
    fn certificates() {
        let w = fixtures::wollmilchsau();
        assert_eq!(
            no_single_cylinder_certificate(&w, 10).unwrap(),
            Certificate::ParityObstruction
        );
        let o = fixtures::two_row_odd(1);
        assert_eq!(
            no_single_cylinder_certificate(&o, 10).unwrap(),
            Certificate::ParityObstruction
        );
        let t = fixtures::torus();
        assert_eq!(
            no_single_cylinder_certificate(&t, 10).unwrap(),
            Certificate::None
        );
    }

    #[test]
    fn search_finds_torus_diagonal_first() {
        let t = fixtures::torus();
        let s = find_single_cylinder_direction(&t, 10).unwrap().unwrap();
        assert_eq!(s.to_string(), "1/1");
    }

    #[test]
    fn five_square_has_single_cylinder_direction() {
        let o = fixtures::five_square_h2_free_cuts().origami;
        assert!(find_single_cylinder_direction(&o, 10).unwrap().is_some());
    }

    #[test]
    fn wollmilchsau_exhaustive_no_single_cylinder() {
        let w = fixtures::wollmilchsau();
        assert!(find_single_cylinder_direction(&w, 20).unwrap().is_none());
    }
}
