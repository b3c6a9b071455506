//! Reduced rational directions and their deterministic enumeration.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::surface::SurfaceError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DirectionError {
    #[error("slope {0}/{1} is not reduced")]
    NotReduced(u64, u64),
    #[error("slope 0/0 is not a direction")]
    ZeroDirection,
    #[error("operation requires a steep slope, got {0}")]
    NotSteep(Slope),
    #[error("operation requires a connected surface")]
    Disconnected,
    #[error("retiling and word routes disagree beyond conjugacy: {0}")]
    RouteMismatch(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// A reduced rational direction `rise/run` (the slope `q/p` of a line
/// climbing `rise` units per `run` horizontal units).
///
/// Steep slopes (`rise >= run`) are handled natively by the retiling
/// machinery; shallow slopes go through the transposed surface.  The
/// degenerate `0/1` (horizontal) and `1/0` (vertical) are admitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Slope {
    rise: u64,
    run: u64,
}

impl Slope {
    pub fn new(rise: u64, run: u64) -> Result<Slope, DirectionError> {
        if rise == 0 && run == 0 {
            return Err(DirectionError::ZeroDirection);
        }
        if rise.gcd(&run) != 1 {
            return Err(DirectionError::NotReduced(rise, run));
        }
        Ok(Slope { rise, run })
    }

    pub fn rise(&self) -> u64 {
        self.rise
    }

    pub fn run(&self) -> u64 {
        self.run
    }

    pub fn is_steep(&self) -> bool {
        self.rise >= self.run
    }

    pub fn is_horizontal(&self) -> bool {
        self.rise == 0
    }

    pub fn is_vertical(&self) -> bool {
        self.run == 0
    }

    /// The slope seen by the transposed (diagonal-reflected) surface.
    pub fn transpose(&self) -> Slope {
        Slope {
            rise: self.run,
            run: self.rise,
        }
    }

    /// Primitive direction vector `(dx, dy)`.
    pub fn direction(&self) -> (i64, i64) {
        (self.run as i64, self.rise as i64)
    }

    /// `rise^2 + run^2`; Euclidean lengths carry a factor `sqrt` of this.
    pub fn length_squared(&self) -> u64 {
        self.rise * self.rise + self.run * self.run
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.rise, self.run)
    }
}

/// All reduced slopes with `rise <= bound` and `run <= bound`, in the
/// fixed project-wide enumeration order: `1/1`, then `1/0` and `0/1`,
/// then breadth-first through the Stern-Brocot tree (left child before
/// right child within each level).
pub fn enumerate_slopes(bound: u64) -> Vec<Slope> {
    let mut out = Vec::new();
    if bound == 0 {
        return out;
    }
    out.push(Slope { rise: 1, run: 1 });
    out.push(Slope { rise: 1, run: 0 });
    out.push(Slope { rise: 0, run: 1 });
    // queue of (lo, hi) Farey-neighbor pairs; the node is their mediant
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(((0u64, 1u64), (1u64, 1u64)));
    queue.push_back(((1u64, 1u64), (1u64, 0u64)));
    while let Some((lo, hi)) = queue.pop_front() {
        // pairs as (rise, run)
        let med = (lo.0 + hi.0, lo.1 + hi.1);
        if med.0 > bound || med.1 > bound {
            continue;
        }
        out.push(Slope {
            rise: med.0,
            run: med.1,
        });
        queue.push_back((lo, med));
        queue.push_back((med, hi));
    }
    out
}
