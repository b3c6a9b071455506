//! Per-cylinder crossing-sum profiles.
//!
//! For a rational direction the first-return map to the union of
//! bottom edges is a rotation by `p/q` with square bookkeeping.  Over
//! one period of a cylinder the crossing sum is a piecewise-constant
//! function of the transverse coordinate; its breakpoints are the
//! pullbacks of cut endpoints along the flow, all exact rationals.
//! The profile is computed exactly: collect every candidate
//! breakpoint, then evaluate the sum on each open piece at its
//! midpoint.

use serde::Serialize;
use thiserror::Error;

use crate::cut::{CutKind, StaircaseSpec};
use crate::cylinders::cylinder_decomposition;
use crate::group::{Group, GroupValue};
use crate::retile::sigma_hat;
use crate::slope::{DirectionError, Slope};
use crate::trace::cross;
use crate::{q, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error(transparent)]
    Direction(#[from] DirectionError),
    #[error("cut {0} is parallel to the flow direction")]
    CutParallel(usize),
    #[error("direction {0} is not single-cylinder for this surface")]
    NotSingleCylinder(Slope),
    #[error("cut system does not integrate to zero in direction {slope}: residual {residual}")]
    NonzeroIntegral { slope: Slope, residual: String },
}

/// Result of the exact integral test `sum_j f_j q_j = 0`.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroIntegralReport {
    pub slope: Slope,
    /// One exact rational per group coordinate (integer lifts for
    /// cyclic groups): `sum_j lift(value_j) * cross(vector_j, dir)`.
    pub residual: Vec<Q>,
    pub pass: bool,
}

/// `sum_j f_j q_j` where `q_j` is the signed transverse projection of
/// cut `j` onto the direction; zero is necessary for recurrence.
pub fn zero_integral_check(spec: &StaircaseSpec, s: Slope) -> ZeroIntegralReport {
    let (dx, dy) = s.direction();
    let d = (q(dx as i128, 1), q(dy as i128, 1));
    let rank = spec.group.rank();
    let mut residual = vec![q(0, 1); rank];
    for c in &spec.cuts {
        let v = c.vector();
        let proj = v.0 * d.1 - v.1 * d.0; // cross(vector, dir)
        for (r, l) in residual.iter_mut().zip(c.value.lift()) {
            *r += q(l as i128, 1) * proj;
        }
    }
    let pass = match spec.group {
        Group::ZPow(_) => residual.iter().all(|r| *r == q(0, 1)),
        Group::Mod(m) => residual.iter().all(|r| {
            *r == q(0, 1) || (r.is_integer() && r.to_integer() % m as i128 == 0)
        }),
    };
    ZeroIntegralReport {
        slope: s,
        residual,
        pass,
    }
}

/// One constant piece of a cylinder profile over the base coordinate
/// `x in [lo, hi)` (a subinterval of `[0, 1/q)` on the anchor square).
#[derive(Debug, Clone, Serialize)]
pub struct ProfilePiece {
    pub lo: Q,
    pub hi: Q,
    /// Crossing sum over one full period starting anywhere in the piece.
    pub sum: GroupValue,
    /// Crossings of each cut over the period.
    pub crossings: Vec<u64>,
    /// True when the evaluation orbit grazed a cut endpoint or corner
    /// (only possible on degenerate data; never on open pieces).
    pub flagged: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CylinderProfile {
    pub cylinder: usize,
    pub anchor_square: usize,
    /// Cycle length of the cylinder.
    pub length: usize,
    pub pieces: Vec<ProfilePiece>,
    /// Exact transverse mass of each cut inside this cylinder, in
    /// transverse units where the cylinder width is 1:
    /// `m_j = q * sum over pieces of crossings_j * |piece|`.
    pub crossing_mass: Vec<Q>,
    /// Exact integral of the profile against the transverse measure
    /// (cylinder width normalized to 1), one rational per coordinate.
    pub integral: Vec<Q>,
}

impl CylinderProfile {
    pub fn integral_is_zero(&self) -> bool {
        self.integral.iter().all(|v| *v == q(0, 1))
    }

    /// Largest value norm over the profile.
    pub fn max_norm(&self) -> u64 {
        self.pieces.iter().map(|p| p.sum.norm()).max().unwrap_or(0)
    }

    /// `|crossings_j - m_j| <= 2` on every piece, for every cut.
    pub fn crossing_counts_within_two(&self) -> bool {
        self.pieces.iter().all(|p| {
            p.crossings
                .iter()
                .zip(&self.crossing_mass)
                .all(|(&n, &m)| {
                    let diff = q(n as i128, 1) - m;
                    diff <= q(2, 1) && diff >= q(-2, 1)
                })
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CylinderSums {
    pub slope: Slope,
    pub profiles: Vec<CylinderProfile>,
    /// True when every per-cylinder integral vanishes.
    pub all_integrals_zero: bool,
}

struct StepOut {
    next_square: usize,
    next_x: Q,
    crossings: Vec<(usize, i8)>,
    flagged: bool,
}

/// Return-map stepper for a steep slope `q/p` on a (possibly
/// transposed) spec.
struct Stepper<'a> {
    spec: &'a StaircaseSpec,
    p: i128,
    qq: i128,
    dir: (i64, i64),
}

impl<'a> Stepper<'a> {
    fn new(spec: &'a StaircaseSpec, s: Slope) -> Stepper<'a> {
        debug_assert!(s.is_steep());
        Stepper {
            spec,
            p: s.run() as i128,
            qq: s.rise() as i128,
            dir: (s.run() as i64, s.rise() as i64),
        }
    }

    /// Crossings of interior cuts of `square` along the flow segment
    /// from `p0`, affine parameter in `(0, lmax]`.
    fn seg_crossings(
        &self,
        square: usize,
        p0: (Q, Q),
        lmax: Q,
        out: &mut Vec<(usize, i8)>,
        flagged: &mut bool,
    ) {
        for &ci in self.spec.cuts_in_square(square) {
            if self.spec.info[ci].kind != CutKind::Interior {
                continue;
            }
            let c = &self.spec.cuts[ci];
            let denom = cross(self.dir, c.dir);
            if denom == 0 {
                continue;
            }
            let rel = (c.start.0 - p0.0, c.start.1 - p0.1);
            let e = (q(c.dir.0 as i128, 1), q(c.dir.1 as i128, 1));
            let d = (q(self.dir.0 as i128, 1), q(self.dir.1 as i128, 1));
            let l_c = (rel.0 * e.1 - rel.1 * e.0) / q(denom as i128, 1);
            let t_c = (rel.0 * d.1 - rel.1 * d.0) / q(denom as i128, 1);
            if l_c > q(0, 1) && l_c <= lmax && t_c >= q(0, 1) && t_c <= c.len {
                if t_c == q(0, 1) || t_c == c.len {
                    *flagged = true;
                } else {
                    let sign = if cross(c.dir, self.dir) > 0 { 1 } else { -1 };
                    out.push((ci, sign));
                }
            }
        }
    }

    fn edge_interval_crossing(
        &self,
        cut_index: usize,
        coord: Q,
        lo: Q,
        hi: Q,
        out: &mut Vec<(usize, i8)>,
        flagged: &mut bool,
    ) {
        if coord == lo || coord == hi {
            *flagged = true;
        } else if coord > lo && coord < hi {
            let sign = if cross(self.spec.cuts[cut_index].dir, self.dir) > 0 {
                1
            } else {
                -1
            };
            out.push((cut_index, sign));
        }
    }

    /// One return to the bottom-edge section: flow one vertical unit.
    fn step(&self, s: usize, x: Q) -> StepOut {
        let o = &self.spec.origami;
        let mut crossings = Vec::new();
        let mut flagged = false;
        let pq = q(self.p, self.qq);
        let x2 = x + pq;
        let lseg = q(1, self.qq); // one vertical unit of affine parameter
        let one = q(1, 1);

        let (landing_square, landing_x) = if x2 < one {
            self.seg_crossings(s, (x, q(0, 1)), lseg, &mut crossings, &mut flagged);
            (o.sigma_v().apply(s), x2)
        } else {
            if x2 == one {
                flagged = true;
            }
            let sh = o.sigma_h().apply(s);
            let la = if self.p > 0 {
                (one - x) / q(self.p, 1)
            } else {
                lseg
            };
            self.seg_crossings(s, (x, q(0, 1)), la, &mut crossings, &mut flagged);
            // seam x=0 of sigma_h(s), crossed at height y* = q*(1-x)/p...
            // as a coordinate: y_star = la * qq
            let y_star = la * q(self.qq, 1);
            for &ci in self.spec.cuts_in_square(sh) {
                if self.spec.info[ci].kind != CutKind::LeftEdge {
                    continue;
                }
                let c = &self.spec.cuts[ci];
                self.edge_interval_crossing(
                    ci,
                    y_star,
                    c.start.1,
                    c.end().1,
                    &mut crossings,
                    &mut flagged,
                );
            }
            self.seg_crossings(sh, (q(0, 1), y_star), lseg - la, &mut crossings, &mut flagged);
            (o.sigma_v().apply(sh), x2 - one)
        };

        // landing on the bottom edge of the landing square
        for &ci in self.spec.cuts_in_square(landing_square) {
            if self.spec.info[ci].kind != CutKind::BottomEdge {
                continue;
            }
            let c = &self.spec.cuts[ci];
            self.edge_interval_crossing(
                ci,
                landing_x,
                c.start.0,
                c.end().0,
                &mut crossings,
                &mut flagged,
            );
        }
        StepOut {
            next_square: landing_square,
            next_x: landing_x,
            crossings,
            flagged,
        }
    }
}

fn check_not_parallel(spec: &StaircaseSpec, s: Slope) -> Result<(), ProfileError> {
    let d = s.direction();
    for (i, c) in spec.cuts.iter().enumerate() {
        if cross(c.dir, d) == 0 {
            return Err(ProfileError::CutParallel(i));
        }
    }
    Ok(())
}

/// Exact per-cylinder crossing-sum profiles in the given rational
/// direction.  Shallow slopes are handled on the transposed spec
/// (values negated there, so sums agree with the direct tracer).
pub fn cylinder_sums(spec: &StaircaseSpec, s: Slope) -> Result<CylinderSums, ProfileError> {
    check_not_parallel(spec, s)?;
    let (work, steep) = if s.is_steep() {
        (spec.clone(), s)
    } else {
        (spec.transpose(), s.transpose())
    };
    let hat = sigma_hat(&work.origami, steep)?;
    let qq = steep.rise() as i128;
    let stepper = Stepper::new(&work, steep);

    let mut profiles = Vec::new();
    for (ci, cycle) in hat.cycles().into_iter().enumerate() {
        let ell = cycle.len();
        let n_steps = ell * qq as usize;
        let anchor = cycle[0];
        let cell = q(1, qq);

        // candidate breakpoints from the midpoint path: the
        // combinatorial path is constant across the whole cell, and
        // along it every cut endpoint pulls back to x = x_mid +
        // (x_dev - x_i) where x_dev = u_dev - v * p/q.
        let x_mid = q(1, 2 * qq);
        let pq = q(stepper.p, qq);
        let mut candidates: Vec<Q> = vec![q(0, 1), cell];
        {
            let mut s_cur = anchor;
            let mut x_cur = x_mid;
            for _ in 0..n_steps {
                let fold = x_cur + pq >= q(1, 1);
                let mut visited: Vec<(usize, Q)> = vec![(s_cur, q(0, 1))];
                if fold {
                    visited.push((work.origami.sigma_h().apply(s_cur), q(1, 1)));
                }
                // landing square's bottom-edge cuts live at v = 1
                let landing = if fold {
                    work.origami
                        .sigma_v()
                        .apply(work.origami.sigma_h().apply(s_cur))
                } else {
                    work.origami.sigma_v().apply(s_cur)
                };
                let landing_off = if fold { q(1, 1) } else { q(0, 1) };
                let mut push = |sq: usize, off: Q, v_extra: Option<Q>| {
                    for &cut_i in work.cuts_in_square(sq) {
                        let c = &work.cuts[cut_i];
                        for pt in [c.start, c.end()] {
                            let (u, v) = match v_extra {
                                // bottom-edge cuts of the landing square
                                // sit one level up in developed coords
                                Some(lift) => (pt.0 + off, pt.1 + lift),
                                None => (pt.0 + off, pt.1),
                            };
                            let x_dev = u - v * pq;
                            let cand = x_mid + (x_dev - x_cur);
                            if cand > q(0, 1) && cand < cell {
                                candidates.push(cand);
                            }
                        }
                    }
                };
                for &(sq, off) in &visited {
                    push(sq, off, None);
                }
                push(landing, landing_off, Some(q(1, 1)));
                let out = stepper.step(s_cur, x_cur);
                s_cur = out.next_square;
                x_cur = out.next_x;
            }
        }
        candidates.sort();
        candidates.dedup();

        // evaluate each open piece at its midpoint
        let n_cuts = work.cuts.len();
        let mut pieces = Vec::new();
        for w in candidates.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let mid = (lo + hi) / q(2, 1);
            let mut sum = work.group.zero();
            let mut counts = vec![0u64; n_cuts];
            let mut flagged = false;
            let mut s_cur = anchor;
            let mut x_cur = mid;
            for _ in 0..n_steps {
                let out = stepper.step(s_cur, x_cur);
                for (cut_i, sign) in &out.crossings {
                    counts[*cut_i] += 1;
                    let v = &work.cuts[*cut_i].value;
                    let signed = if *sign > 0 { v.clone() } else { v.neg() };
                    sum = sum.add(&signed);
                }
                flagged |= out.flagged;
                s_cur = out.next_square;
                x_cur = out.next_x;
            }
            debug_assert_eq!((s_cur, x_cur), (anchor, mid), "period must close");
            pieces.push(ProfilePiece {
                lo,
                hi,
                sum,
                crossings: counts,
                flagged,
            });
        }

        let mut crossing_mass = vec![q(0, 1); n_cuts];
        let mut integral = vec![q(0, 1); work.group.rank()];
        for p in &pieces {
            let w = p.hi - p.lo;
            for (m, &n) in crossing_mass.iter_mut().zip(&p.crossings) {
                *m += q(n as i128, 1) * w * q(qq, 1);
            }
            for (acc, l) in integral.iter_mut().zip(p.sum.lift()) {
                *acc += q(l as i128, 1) * w * q(qq, 1);
            }
        }
        profiles.push(CylinderProfile {
            cylinder: ci,
            anchor_square: anchor,
            length: ell,
            pieces,
            crossing_mass,
            integral,
        });
    }
    let all_integrals_zero = profiles.iter().all(|p| p.integral_is_zero());
    Ok(CylinderSums {
        slope: s,
        profiles,
        all_integrals_zero,
    })
}

/// Verification report for the crossing-sum bound
/// `max_x ||S_h(x)|| <= 4 * sum_j ||f_j||` over a single cylinder.
#[derive(Debug, Clone, Serialize)]
pub struct KoksmaReport {
    pub slope: Slope,
    pub bound: u64,
    pub max_observed: u64,
    pub pass: bool,
    /// `|P_j - q_j h| <= 2` for every cut on every piece.
    pub crossing_counts_ok: bool,
    pub pieces: usize,
}

/// Verify the crossing-sum bound exactly over the full profile.
/// Requires a single-cylinder direction and a zero-integral cut
/// system; refuses (with the failing precondition) otherwise.
pub fn koksma_verify(spec: &StaircaseSpec, s: Slope) -> Result<KoksmaReport, ProfileError> {
    check_not_parallel(spec, s)?;
    let zi = zero_integral_check(spec, s);
    if !zi.pass {
        return Err(ProfileError::NonzeroIntegral {
            slope: s,
            residual: format!(
                "[{}]",
                zi.residual
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        });
    }
    let sums = cylinder_sums(spec, s)?;
    if sums.profiles.len() != 1 {
        return Err(ProfileError::NotSingleCylinder(s));
    }
    let profile = &sums.profiles[0];
    let bound = 4 * spec.total_value_norm();
    let max_observed = profile.max_norm();
    Ok(KoksmaReport {
        slope: s,
        bound,
        max_observed,
        pass: max_observed <= bound,
        crossing_counts_ok: profile.crossing_counts_within_two(),
        pieces: profile.pieces.len(),
    })
}

/// Convenience: the decomposition used by the profile machinery (the
/// profile cylinder indices match its cylinder order).
pub fn decomposition_for(
    spec: &StaircaseSpec,
    s: Slope,
) -> Result<crate::cylinders::CylinderDecomposition, DirectionError> {
    cylinder_decomposition(&spec.origami, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::trace::{trace, StopRule, TracePoint};

    #[test]
    fn trivial_spec_zero_everywhere() {
        let spec = StaircaseSpec::trivial(fixtures::torus(), Group::z(1).unwrap());
        let s = Slope::new(1, 1).unwrap();
        assert!(zero_integral_check(&spec, s).pass);
        let sums = cylinder_sums(&spec, s).unwrap();
        assert_eq!(sums.profiles.len(), 1);
        assert!(sums.all_integrals_zero);
        let rep = koksma_verify(&spec, s).unwrap();
        assert_eq!(rep.bound, 0);
        assert_eq!(rep.max_observed, 0);
        assert!(rep.pass);
    }

    #[test]
    fn hhw_koksma_bound_eight() {
        let spec = fixtures::hhw_staircase();
        let s = Slope::new(1, 1).unwrap();
        assert!(zero_integral_check(&spec, s).pass);
        let rep = koksma_verify(&spec, s).unwrap();
        assert_eq!(rep.bound, 8);
        assert!(rep.pass, "max {} over bound {}", rep.max_observed, rep.bound);
        assert!(rep.crossing_counts_ok);
    }

    #[test]
    fn single_cut_fails_zero_integral() {
        let o = fixtures::torus_row(2);
        let g = Group::z(1).unwrap();
        let spec = StaircaseSpec::new(
            o,
            g,
            vec![crate::cut::Cut::left_edge(1, g.generator(0))],
        )
        .unwrap();
        let s = Slope::new(1, 1).unwrap();
        assert!(!zero_integral_check(&spec, s).pass);
        assert!(matches!(
            koksma_verify(&spec, s),
            Err(ProfileError::NonzeroIntegral { .. })
        ));
    }

    #[test]
    fn two_row_staircase_per_cylinder_zero() {
        for n in 1..=3usize {
            let spec = fixtures::two_row_staircase(n);
            let s = Slope::new(0, 1).unwrap(); // horizontal
            let sums = cylinder_sums(&spec, s).unwrap();
            assert_eq!(sums.profiles.len(), 2);
            assert!(sums.all_integrals_zero, "n = {}", n);
            assert!(sums
                .profiles
                .iter()
                .all(|p| p.crossing_counts_within_two()));
        }
    }

    #[test]
    fn profile_matches_direct_trace() {
        let spec = fixtures::hhw_staircase();
        let s = Slope::new(2, 1).unwrap();
        let sums = cylinder_sums(&spec, s).unwrap();
        assert_eq!(sums.profiles.len(), 1, "2/1 is single-cylinder here");
        let profile = &sums.profiles[0];
        let n_steps = profile.length * 2; // ell * q vertical units
        for piece in &profile.pieces {
            let mid = (piece.lo + piece.hi) / q(2, 1);
            let tr = trace(
                &spec,
                TracePoint::new(profile.anchor_square, mid, q(0, 1)),
                (1, 2),
                StopRule::Lambda(q(n_steps as i128, 2)),
            )
            .unwrap();
            assert_eq!(tr.total, piece.sum);
            assert_eq!(
                tr.crossings.len() as u64,
                piece.crossings.iter().sum::<u64>()
            );
        }
    }
}
