//! Finite-depth diagnostics for points under periodic approximation:
//! does the orbit of a point stay clear of singularities and cut
//! endpoints in the convergent directions (self-avoiding), and do the
//! ergodic sums over its orbit neighborhoods stay bounded (essential)?
//!
//! The key invariant: along a leaf of direction `(p, q)` the quantity
//! `c = q*x - p*y mod 1` is constant, and the leaves through square
//! corners are exactly those with `c` integral.  So the transverse gap
//! from a point's leaf to the nearest corner leaf is
//! `min(frac(c), 1 - frac(c))` in `c`-units, i.e. that value divided
//! by `sqrt(p^2 + q^2)` in flat distance.

use serde::Serialize;
use thiserror::Error;

use crate::approx::{ApproxError, IrrationalDirection};
use crate::cut::StaircaseSpec;
use crate::cylinders::cylinder_decomposition;
use crate::profile::{cylinder_sums, zero_integral_check, ProfileError};
use crate::slope::{DirectionError, Slope};
use crate::surface::{Corner, Origami};
use crate::trace::TracePoint;
use crate::{q, Q};

/// Empirical pass threshold for `inf eps_i * h_i` over the inspected
/// depth.  Pinned; reports carry it so consumers see what was used.
pub const SELF_AVOIDING_THRESHOLD: (i128, i128) = (1, 512);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiagError {
    #[error("point sits on a singular vertex")]
    StartSingular,
    #[error("point {0} outside square range or unit square")]
    BadPoint(usize),
    #[error("point fails the self-avoiding check at convergent {0}")]
    NotSelfAvoiding(usize),
    #[error(transparent)]
    Approx(#[from] ApproxError),
    #[error(transparent)]
    Direction(#[from] DirectionError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

fn frac(x: Q) -> Q {
    x - x.floor()
}

/// Transverse coordinate class of the leaf through `(x, y)` in
/// direction with rise `rise`, run `run` (already in the square's own
/// chart; the class is invariant under the square gluings).
fn leaf_class(x: Q, y: Q, rise: u64, run: u64) -> Q {
    frac(q(rise as i128, 1) * x - q(run as i128, 1) * y)
}

fn gap_to_integer(c: Q) -> Q {
    let f = frac(c);
    f.min(q(1, 1) - f)
}

fn check_point(o: &Origami, pt: &TracePoint) -> Result<(), DiagError> {
    let zero = q(0, 1);
    let one = q(1, 1);
    if pt.square < 1
        || pt.square > o.square_count()
        || pt.x < zero
        || pt.x > one
        || pt.y < zero
        || pt.y > one
    {
        return Err(DiagError::BadPoint(pt.square));
    }
    let corner = match (pt.x == zero || pt.x == one, pt.y == zero || pt.y == one) {
        (true, true) => Some(match (pt.x == one, pt.y == one) {
            (false, false) => Corner::LowerLeft,
            (true, false) => Corner::LowerRight,
            (false, true) => Corner::UpperLeft,
            (true, true) => Corner::UpperRight,
        }),
        _ => None,
    };
    if let Some(c) = corner {
        if !o.vertex_at(pt.square, c).is_regular() {
            return Err(DiagError::StartSingular);
        }
    }
    Ok(())
}

/// One convergent direction's view of a point.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergentGap {
    pub n: usize,
    /// Run and rise of the approximating direction.
    pub p: u64,
    pub q: u64,
    /// Transverse gap from the point's leaf to the nearest corner (or
    /// cut-endpoint) leaf, in `c`-units.
    pub gap: Q,
    /// Cycle length of the cylinder containing the point.
    pub cylinder_length: usize,
    /// `eps_i * h_i = gap * cylinder_length`, the scale-free margin.
    pub eps_h: Q,
    /// The leaf runs straight into a corner or cut endpoint.
    pub on_boundary: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelfAvoidingReport {
    pub point: TracePoint,
    pub rows: Vec<ConvergentGap>,
    /// `inf eps_i * h_i` over the inspected depth.
    pub empirical_eps: Q,
    pub threshold: Q,
    pub passes: bool,
    /// First convergent at which the margin drops below threshold.
    pub failed_at: Option<usize>,
}

/// Convergent directions (run, rise) of `1/theta mod 1` up to `depth`.
fn convergent_directions(
    theta: &IrrationalDirection,
    depth: usize,
) -> Result<Vec<(u64, u64)>, ApproxError> {
    // reuse the report machinery on the unit torus to keep a single
    // source of truth for the convergent arithmetic
    let torus = crate::fixtures::torus();
    let rep = crate::approx::approximation_report(&torus, theta, depth)?;
    Ok(rep.rows.iter().map(|r| (r.p, r.q)).collect())
}

/// Self-avoidance of each point in the convergent directions of
/// `theta`, to the given depth.  `extra_leaves` carries the leaf
/// classes of cut endpoints when a cut system is in play.
fn self_avoiding_one(
    o: &Origami,
    pt: &TracePoint,
    dirs: &[(u64, u64)],
    extra: &[(usize, Q, Q)],
) -> Result<SelfAvoidingReport, DiagError> {
    check_point(o, pt)?;
    let threshold = q(SELF_AVOIDING_THRESHOLD.0, SELF_AVOIDING_THRESHOLD.1);
    let mut rows = Vec::with_capacity(dirs.len());
    let mut empirical: Option<Q> = None;
    let mut failed_at = None;
    for (i, &(p, rise)) in dirs.iter().enumerate() {
        let c = leaf_class(pt.x, pt.y, rise, p);
        let mut gap = gap_to_integer(c);
        for &(_, ex, ey) in extra {
            let d = leaf_class(ex, ey, rise, p);
            if (ex, ey) == (pt.x, pt.y) {
                continue;
            }
            gap = gap.min(gap_to_integer(c - d));
        }
        let slope = Slope::new(rise, p)?;
        let dec = cylinder_decomposition(o, slope)?;
        let on_boundary = gap == q(0, 1);
        let cyl_len = if on_boundary {
            // boundary points have no well-defined cylinder; use the
            // largest cycle so eps_h stays zero but the row is honest
            dec.cylinders.iter().map(|cy| cy.area).max().unwrap_or(0)
        } else {
            let ci = dec.cylinder_of_point(pt.square, pt.x, pt.y);
            dec.cylinders[ci].area
        };
        let eps_h = gap * q(cyl_len as i128, 1);
        empirical = Some(match empirical {
            Some(e) => e.min(eps_h),
            None => eps_h,
        });
        if eps_h < threshold && failed_at.is_none() {
            failed_at = Some(i + 1);
        }
        rows.push(ConvergentGap {
            n: i + 1,
            p,
            q: rise,
            gap,
            cylinder_length: cyl_len,
            eps_h,
            on_boundary,
        });
    }
    let empirical_eps = empirical.unwrap_or(q(0, 1));
    Ok(SelfAvoidingReport {
        point: pt.clone(),
        rows,
        empirical_eps,
        threshold,
        passes: failed_at.is_none(),
        failed_at,
    })
}

/// Per-point self-avoidance reports over the first `depth` convergent
/// directions of `theta`.
pub fn self_avoiding_check(
    o: &Origami,
    points: &[TracePoint],
    theta: &IrrationalDirection,
    depth: usize,
) -> Result<Vec<SelfAvoidingReport>, DiagError> {
    let dirs = convergent_directions(theta, depth)?;
    points
        .iter()
        .map(|pt| self_avoiding_one(o, pt, &dirs, &[]))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct EssentialRow {
    pub n: usize,
    pub p: u64,
    pub q: u64,
    /// Sup of the crossing-sum norm over the cylinder containing the
    /// point (exact, from the full profile).
    pub sup_norm: u64,
    pub within_p: bool,
    pub single_cylinder: bool,
    pub integral_zero: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EssentialPointReport {
    pub point: TracePoint,
    pub bound: u64,
    pub rows: Vec<EssentialRow>,
    /// The sup stays within the bound along at least half the depth.
    pub essential: bool,
    pub self_avoiding: SelfAvoidingReport,
}

/// Bounded-sums diagnostic: does `sup ||S_h||` over the point's
/// cylinder stay within `bound` along at least half of the inspected
/// convergents?  Requires the point to pass the self-avoiding check
/// (with cut endpoints included among the obstacles).
pub fn essential_point_diagnostic(
    spec: &StaircaseSpec,
    point: &TracePoint,
    theta: &IrrationalDirection,
    depth: usize,
    bound: u64,
) -> Result<EssentialPointReport, DiagError> {
    let dirs = convergent_directions(theta, depth)?;
    let endpoints: Vec<(usize, Q, Q)> = spec
        .cuts
        .iter()
        .flat_map(|c| {
            let e = c.end();
            [(c.square, c.start.0, c.start.1), (c.square, e.0, e.1)]
        })
        .collect();
    let sa = self_avoiding_one(&spec.origami, point, &dirs, &endpoints)?;
    if let Some(n) = sa.failed_at {
        return Err(DiagError::NotSelfAvoiding(n));
    }

    let mut rows = Vec::with_capacity(dirs.len());
    let mut within = 0usize;
    for (i, &(p, rise)) in dirs.iter().enumerate() {
        let slope = Slope::new(rise, p)?;
        let sums = cylinder_sums(spec, slope)?;
        let dec = cylinder_decomposition(&spec.origami, slope)?;
        let ci = dec.cylinder_of_point(point.square, point.x, point.y);
        let sup = sums.profiles[ci].max_norm();
        let ok = sup <= bound;
        within += ok as usize;
        rows.push(EssentialRow {
            n: i + 1,
            p,
            q: rise,
            sup_norm: sup,
            within_p: ok,
            single_cylinder: sums.profiles.len() == 1,
            integral_zero: zero_integral_check(spec, slope).pass,
        });
    }
    let essential = depth == 0 || 2 * within >= depth;
    Ok(EssentialPointReport {
        point: point.clone(),
        bound,
        rows,
        essential,
        self_avoiding: sa,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut::Cut;
    use crate::fixtures;
    use crate::group::Group;

    fn golden() -> IrrationalDirection {
        IrrationalDirection::from_partial_quotients(&[1; 40]).unwrap()
    }

    #[test]
    fn generic_torus_point_passes() {
        let o = fixtures::torus();
        let pt = TracePoint::new(1, q(1, 7), q(2, 11));
        let reps = self_avoiding_check(&o, &[pt], &golden(), 6).unwrap();
        assert!(reps[0].passes, "margins {:?}", reps[0].rows);
        assert_eq!(reps[0].rows.len(), 6);
    }

    #[test]
    fn boundary_point_fails_at_that_convergent() {
        // golden convergents start 1/1; a point with x = y lies on the
        // leaf through the origin for (p, q) = (1, 1)
        let o = fixtures::torus();
        let pt = TracePoint::new(1, q(1, 3), q(1, 3));
        let reps = self_avoiding_check(&o, &[pt], &golden(), 5).unwrap();
        assert!(!reps[0].passes);
        assert_eq!(reps[0].failed_at, Some(1));
        assert!(reps[0].rows[0].on_boundary);
    }

    #[test]
    fn singular_start_rejected() {
        let o = fixtures::wollmilchsau();
        let pt = TracePoint::new(1, q(0, 1), q(0, 1));
        assert!(matches!(
            self_avoiding_check(&o, &[pt], &golden(), 3),
            Err(DiagError::StartSingular)
        ));
    }

    #[test]
    fn no_cuts_sup_zero_essential() {
        let spec = crate::cut::StaircaseSpec::trivial(fixtures::torus(), Group::z(1).unwrap());
        let pt = TracePoint::new(1, q(1, 7), q(2, 11));
        let rep = essential_point_diagnostic(&spec, &pt, &golden(), 5, 0).unwrap();
        assert!(rep.essential);
        assert!(rep.rows.iter().all(|r| r.sup_norm == 0));
    }

    #[test]
    fn zero_integral_staircase_essential_at_koksma_bound() {
        let spec = fixtures::hhw_staircase();
        let bound = 4 * spec.total_value_norm();
        let pt = TracePoint::new(1, q(1, 7), q(2, 11));
        let rep = essential_point_diagnostic(&spec, &pt, &golden(), 5, bound).unwrap();
        assert!(rep.essential, "rows {:?}", rep.rows);
    }

    #[test]
    fn nonzero_integral_sums_grow() {
        // single +1 cut on the 2-square row: drift is linear in the
        // cylinder length, so sup grows along the convergents
        let o = fixtures::torus_row(2);
        let g = Group::z(1).unwrap();
        let spec =
            crate::cut::StaircaseSpec::new(o, g, vec![Cut::left_edge(1, g.generator(0))]).unwrap();
        let pt = TracePoint::new(1, q(1, 7), q(2, 11));
        let rep = essential_point_diagnostic(&spec, &pt, &golden(), 8, 2).unwrap();
        assert!(!rep.essential);
        let sups: Vec<u64> = rep.rows.iter().map(|r| r.sup_norm).collect();
        assert!(sups.last().unwrap() > sups.first().unwrap());
    }
}
