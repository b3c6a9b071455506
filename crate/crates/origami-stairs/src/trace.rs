//! Exact geodesic tracing and ergodic sums.
//!
//! Orbits are straight lines through the square tiling; positions are
//! exact rationals, and every edge transition, corner hit, and cut
//! crossing is decided exactly.  Times are measured along the affine
//! parameter `lambda` (position = start + lambda * dir); the Euclidean
//! time is `lambda * sqrt(dx^2 + dy^2)`, and time cutoffs compare
//! `lambda^2 * (dx^2 + dy^2)` against `T^2` so no square roots appear.

use serde::Serialize;
use thiserror::Error;

use crate::cut::{CutKind, StaircaseSpec};
use crate::group::GroupValue;
use crate::surface::Corner;
use crate::{q, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceError {
    #[error("direction (0,0) is not a direction")]
    ZeroDirection,
    #[error("direction {0:?} is parallel to cut {1}")]
    ParallelToCut((i64, i64), usize),
    #[error("start point lies on a singularity")]
    StartSingular,
    #[error("start point {0:?} outside the unit square")]
    StartOutOfRange(String),
    #[error("square {0} out of range")]
    BadSquare(usize),
}

/// A point on the surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TracePoint {
    pub square: usize,
    pub x: Q,
    pub y: Q,
}

impl TracePoint {
    pub fn new(square: usize, x: Q, y: Q) -> TracePoint {
        TracePoint { square, x, y }
    }
}

/// Why a trace ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TraceStatus {
    /// Ran to the requested time.
    Completed,
    /// Hit a cone point; truncated there.
    HitSingularity,
    /// Passed exactly through a cut endpoint (or a corner where a cut
    /// ends); truncated, never perturbed.
    HitCutEndpoint,
    /// The orbit runs along a cut; crossing counts are undefined.
    AlongCut,
}

#[derive(Debug, Clone, Serialize)]
pub struct Crossing {
    pub cut: usize,
    /// +1 or -1: the sign of cross(cut_dir, flow_dir).
    pub sign: i8,
    /// Affine parameter of the crossing.
    pub lambda: Q,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErgodicSumTrace {
    pub start: TracePoint,
    pub dir: (i64, i64),
    pub status: TraceStatus,
    /// Affine parameter actually covered.
    pub lambda_end: Q,
    pub crossings: Vec<Crossing>,
    /// Sum of signed crossing values over the whole trace.
    pub total: GroupValue,
    pub end: TracePoint,
}

impl ErgodicSumTrace {
    /// Euclidean length actually covered.
    pub fn euclidean_length(&self) -> f64 {
        let s = (self.dir.0 * self.dir.0 + self.dir.1 * self.dir.1) as f64;
        ratio_f64(self.lambda_end) * s.sqrt()
    }
}

pub fn ratio_f64(v: Q) -> f64 {
    *v.numer() as f64 / *v.denom() as f64
}

/// How far to trace.
#[derive(Debug, Clone, Copy)]
pub enum StopRule {
    /// Stop once the Euclidean length reaches `T` (exact comparison).
    EuclideanTime(Q),
    /// Stop after this many affine parameter units.
    Lambda(Q),
}

pub(crate) fn cross(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

fn cross_q(a: (Q, Q), b: (Q, Q)) -> Q {
    a.0 * b.1 - a.1 * b.0
}

/// Sum the geodesic crossing values from `start` in direction `dir`
/// over Euclidean time `t` (both exact).  Crossings at parameter 0 are
/// not counted; a crossing exactly at the cutoff is.
pub fn ergodic_sum(
    spec: &StaircaseSpec,
    start: TracePoint,
    dir: (i64, i64),
    t: Q,
) -> Result<ErgodicSumTrace, TraceError> {
    trace(spec, start, dir, StopRule::EuclideanTime(t))
}

pub fn trace(
    spec: &StaircaseSpec,
    start: TracePoint,
    dir: (i64, i64),
    stop: StopRule,
) -> Result<ErgodicSumTrace, TraceError> {
    let (dx, dy) = dir;
    if (dx, dy) == (0, 0) {
        return Err(TraceError::ZeroDirection);
    }
    for (i, c) in spec.cuts.iter().enumerate() {
        if cross(c.dir, dir) == 0 {
            return Err(TraceError::ParallelToCut(dir, i));
        }
    }
    let k = spec.origami.square_count();
    if start.square < 1 || start.square > k {
        return Err(TraceError::BadSquare(start.square));
    }
    let zero = q(0, 1);
    let one = q(1, 1);
    if start.x < zero || start.x > one || start.y < zero || start.y > one {
        return Err(TraceError::StartOutOfRange(format!(
            "({}, {})",
            start.x, start.y
        )));
    }
    if let Some(corner) = corner_at(start.x, start.y) {
        if !spec.origami.vertex_at(start.square, corner).is_regular() {
            return Err(TraceError::StartSingular);
        }
    }
    let speed2 = q((dx * dx + dy * dy) as i128, 1);
    let lambda_max = match stop {
        StopRule::Lambda(l) => Some(l),
        StopRule::EuclideanTime(_) => None,
    };
    let t2 = match stop {
        StopRule::EuclideanTime(t) => Some(t * t),
        StopRule::Lambda(_) => None,
    };
    let within = |lambda: Q| -> bool {
        if let Some(l) = lambda_max {
            if lambda > l {
                return false;
            }
        }
        if let Some(t2) = t2 {
            if lambda * lambda * speed2 > t2 {
                return false;
            }
        }
        true
    };

    let sh = spec.origami.sigma_h().clone();
    let sv = spec.origami.sigma_v().clone();
    let shi = sh.inverse();
    let svi = sv.inverse();

    let mut pos = start;
    let mut lambda = zero;
    let mut crossings: Vec<Crossing> = Vec::new();
    let mut total = spec.group.zero();
    let mut status = TraceStatus::Completed;

    // flow running along an edge carrying a cut has undefined crossings
    let along_edge_cut = |p: &TracePoint| -> bool {
        (dx == 0 && p.x == zero
            && spec
                .cuts_in_square(p.square)
                .iter()
                .any(|&i| spec.info[i].kind == CutKind::LeftEdge))
            || (dy == 0 && p.y == zero
                && spec
                    .cuts_in_square(p.square)
                    .iter()
                    .any(|&i| spec.info[i].kind == CutKind::BottomEdge))
    };
    if along_edge_cut(&pos) {
        return Ok(ErgodicSumTrace {
            start,
            dir,
            status: TraceStatus::AlongCut,
            lambda_end: zero,
            crossings,
            total,
            end: pos,
        });
    }

    'outer: loop {
        // time to leave the current square through each wall
        let lx = if dx > 0 {
            Some((one - pos.x) / q(dx as i128, 1))
        } else if dx < 0 {
            Some(pos.x / q(-dx as i128, 1))
        } else {
            None
        };
        let ly = if dy > 0 {
            Some((one - pos.y) / q(dy as i128, 1))
        } else if dy < 0 {
            Some(pos.y / q(-dy as i128, 1))
        } else {
            None
        };
        let l_exit = match (lx, ly) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!(),
        };

        // interior cut crossings inside this square, ordered by time
        let mut here: Vec<(Q, usize, i8, bool)> = Vec::new();
        for &ci in spec.cuts_in_square(pos.square) {
            if spec.info[ci].kind != CutKind::Interior {
                continue;
            }
            let c = &spec.cuts[ci];
            let denom = cross(dir, c.dir);
            if denom == 0 {
                continue; // unreachable: parallel cuts were rejected
            }
            let rel = (c.start.0 - pos.x, c.start.1 - pos.y);
            let e_q = (q(c.dir.0 as i128, 1), q(c.dir.1 as i128, 1));
            let d_q = (q(dx as i128, 1), q(dy as i128, 1));
            let l_c = cross_q(rel, e_q) / q(denom as i128, 1);
            let t_c = cross_q(rel, d_q) / q(denom as i128, 1);
            if l_c > zero && l_c <= l_exit && t_c >= zero && t_c <= c.len {
                let endpoint = t_c == zero || t_c == c.len;
                let sign = if cross(c.dir, dir) > 0 { 1 } else { -1 };
                here.push((l_c, ci, sign, endpoint));
            }
        }
        here.sort_by(|a, b| a.0.cmp(&b.0));
        for (l_c, ci, sign, endpoint) in here {
            let l_abs = lambda + l_c;
            if !within(l_abs) {
                break 'outer;
            }
            if endpoint {
                status = TraceStatus::HitCutEndpoint;
                lambda = l_abs;
                pos = TracePoint::new(
                    pos.square,
                    pos.x + l_c * q(dx as i128, 1),
                    pos.y + l_c * q(dy as i128, 1),
                );
                break 'outer;
            }
            crossings.push(Crossing {
                cut: ci,
                sign,
                lambda: l_abs,
            });
            let v = &spec.cuts[ci].value;
            let signed = if sign > 0 { v.clone() } else { v.neg() };
            total = total.add(&signed);
        }

        // the square transition
        let l_abs = lambda + l_exit;
        if !within(l_abs) {
            break 'outer;
        }
        let exit = TracePoint::new(
            pos.square,
            pos.x + l_exit * q(dx as i128, 1),
            pos.y + l_exit * q(dy as i128, 1),
        );
        let hit_x = lx == Some(l_exit);
        let hit_y = ly == Some(l_exit);

        if hit_x && hit_y {
            // corner passage
            let corner = corner_at(exit.x, exit.y).expect("corner hit");
            let orbit = spec.origami.vertex_at(exit.square, corner);
            lambda = l_abs;
            pos = exit;
            if !orbit.is_regular() {
                status = TraceStatus::HitSingularity;
                break 'outer;
            }
            // a cut ending at this vertex makes the crossing ambiguous
            if spec
                .info
                .iter()
                .any(|i| i.endpoint_vertices.contains(&Some(orbit.representative)))
            {
                status = TraceStatus::HitCutEndpoint;
                break 'outer;
            }
            let (s1, x1) = if dx > 0 {
                (sh.apply(exit.square), zero)
            } else {
                (shi.apply(exit.square), one)
            };
            let (s2, y2) = if dy > 0 {
                (sv.apply(s1), zero)
            } else {
                (svi.apply(s1), one)
            };
            pos = TracePoint::new(s2, x1, y2);
            continue;
        }

        if hit_x {
            // the x=0 seam between shi(c) and c holds the LeftEdge cuts of c
            let (locus_square, next) = if dx > 0 {
                let c = sh.apply(exit.square);
                (c, TracePoint::new(c, zero, exit.y))
            } else {
                let c = exit.square;
                (c, TracePoint::new(shi.apply(c), one, exit.y))
            };
            let mut stop_here = false;
            for &ci in spec.cuts_in_square(locus_square) {
                if spec.info[ci].kind != CutKind::LeftEdge {
                    continue;
                }
                let c = &spec.cuts[ci];
                let (a, b) = (c.start.1, c.end().1);
                if exit.y == a || exit.y == b {
                    stop_here = true;
                } else if exit.y > a && exit.y < b {
                    let sign = if cross(c.dir, dir) > 0 { 1 } else { -1 };
                    crossings.push(Crossing {
                        cut: ci,
                        sign,
                        lambda: l_abs,
                    });
                    let signed = if sign > 0 { c.value.clone() } else { c.value.neg() };
                    total = total.add(&signed);
                }
            }
            lambda = l_abs;
            if stop_here {
                pos = exit;
                status = TraceStatus::HitCutEndpoint;
                break 'outer;
            }
            pos = next;
            continue;
        }

        // hit_y: the y=0 seam between svi(c) and c holds the BottomEdge cuts
        let (locus_square, next) = if dy > 0 {
            let c = sv.apply(exit.square);
            (c, TracePoint::new(c, exit.x, zero))
        } else {
            let c = exit.square;
            (c, TracePoint::new(svi.apply(c), exit.x, one))
        };
        let mut stop_here = false;
        for &ci in spec.cuts_in_square(locus_square) {
            if spec.info[ci].kind != CutKind::BottomEdge {
                continue;
            }
            let c = &spec.cuts[ci];
            let (a, b) = (c.start.0, c.end().0);
            if exit.x == a || exit.x == b {
                stop_here = true;
            } else if exit.x > a && exit.x < b {
                let sign = if cross(c.dir, dir) > 0 { 1 } else { -1 };
                crossings.push(Crossing {
                    cut: ci,
                    sign,
                    lambda: l_abs,
                });
                let signed = if sign > 0 { c.value.clone() } else { c.value.neg() };
                total = total.add(&signed);
            }
        }
        lambda = l_abs;
        if stop_here {
            pos = exit;
            status = TraceStatus::HitCutEndpoint;
            break 'outer;
        }
        pos = next;
    }

    // advance the endpoint to the cutoff when we completed the time
    if status == TraceStatus::Completed {
        let l_end = match stop {
            StopRule::Lambda(l) => l,
            StopRule::EuclideanTime(_) => lambda, // position at last event
        };
        if let StopRule::Lambda(l) = stop {
            let rest = l - lambda;
            if rest > zero {
                pos = TracePoint::new(
                    pos.square,
                    pos.x + rest * q(dx as i128, 1),
                    pos.y + rest * q(dy as i128, 1),
                );
            }
        }
        lambda = l_end.max(lambda);
    }

    Ok(ErgodicSumTrace {
        start,
        dir,
        status,
        lambda_end: lambda,
        crossings,
        total,
        end: pos,
    })
}

fn corner_at(x: Q, y: Q) -> Option<Corner> {
    let zero = q(0, 1);
    let one = q(1, 1);
    let cx = if x == zero {
        Some(false)
    } else if x == one {
        Some(true)
    } else {
        None
    };
    let cy = if y == zero {
        Some(false)
    } else if y == one {
        Some(true)
    } else {
        None
    };
    match (cx, cy) {
        (Some(false), Some(false)) => Some(Corner::LowerLeft),
        (Some(false), Some(true)) => Some(Corner::UpperLeft),
        (Some(true), Some(false)) => Some(Corner::LowerRight),
        (Some(true), Some(true)) => Some(Corner::UpperRight),
        _ => None,
    }
}
