//! Valued cut systems defining skew-product covers.
//!
//! A cut is a straight segment inside one square carrying a group
//! value; crossing it adds (or subtracts, by orientation) that value
//! to the fiber coordinate.  A staircase spec bundles a surface, a
//! group, and a cut system.

use serde::Serialize;
use thiserror::Error;

use crate::group::{Group, GroupValue};
use crate::surface::{Corner, Origami, SurfaceError};
use crate::{q, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("cut {index}: {reason}")]
    BadCut { index: usize, reason: String },
    #[error("cut {index} passes through a singularity in its interior")]
    ThroughSingularity { index: usize },
    #[error("cut {index} carries a value from {found}, spec group is {expected}")]
    GroupMismatch {
        index: usize,
        found: String,
        expected: String,
    },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// How a cut endpoint sits on the surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EndpointClass {
    /// An integer point with cone angle > 2 pi.
    Singular,
    /// An integer point that is a regular point of the surface.
    RegularInteger,
    /// Not an integer point.
    Interior,
}

#[derive(Debug, Clone, Serialize)]
pub struct Cut {
    pub square: usize,
    /// Start offset within the square, both coordinates in `[0,1]`.
    pub start: (Q, Q),
    /// Primitive integer direction of the segment.
    pub dir: (i64, i64),
    /// Parameter length: the segment is `start + t*dir`, `t in [0,len]`.
    pub len: Q,
    pub value: GroupValue,
}

impl Cut {
    pub fn new(
        square: usize,
        start: (Q, Q),
        dir: (i64, i64),
        len: Q,
        value: GroupValue,
    ) -> Cut {
        Cut {
            square,
            start,
            dir,
            len,
            value,
        }
    }

    /// Unit cut along the left edge of a square, oriented upward.
    pub fn left_edge(square: usize, value: GroupValue) -> Cut {
        Cut::new(square, (q(0, 1), q(0, 1)), (0, 1), q(1, 1), value)
    }

    /// Unit cut along the bottom edge of a square, oriented rightward.
    pub fn bottom_edge(square: usize, value: GroupValue) -> Cut {
        Cut::new(square, (q(0, 1), q(0, 1)), (1, 0), q(1, 1), value)
    }

    pub fn end(&self) -> (Q, Q) {
        (
            self.start.0 + self.len * q(self.dir.0 as i128, 1),
            self.start.1 + self.len * q(self.dir.1 as i128, 1),
        )
    }

    /// The displacement vector of the whole segment.
    pub fn vector(&self) -> (Q, Q) {
        (
            self.len * q(self.dir.0 as i128, 1),
            self.len * q(self.dir.1 as i128, 1),
        )
    }

    /// Unit-length, axis-parallel, integer endpoints.
    pub fn is_natural_shape(&self) -> bool {
        let axis = matches!(self.dir, (0, 1) | (0, -1) | (1, 0) | (-1, 0));
        let unit = self.len == q(1, 1);
        let int = |v: Q| v == q(0, 1) || v == q(1, 1);
        axis && unit
            && int(self.start.0)
            && int(self.start.1)
            && int(self.end().0)
            && int(self.end().1)
    }
}

/// Position class of a canonical cut, used by the tracing kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CutKind {
    /// Lies on `x = 0` with a vertical direction.
    LeftEdge,
    /// Lies on `y = 0` with a horizontal direction.
    BottomEdge,
    /// Anything else.
    Interior,
}

#[derive(Debug, Clone, Serialize)]
pub struct CutInfo {
    pub kind: CutKind,
    pub endpoints: [EndpointClass; 2],
    /// Vertex-orbit representative for each integer endpoint (`None`
    /// for interior endpoints).
    pub endpoint_vertices: [Option<usize>; 2],
}

/// A surface plus a valued cut system: the combinatorial description
/// of the skew-product cover.
#[derive(Debug, Clone)]
pub struct StaircaseSpec {
    pub origami: Origami,
    pub group: Group,
    /// Canonicalized cuts: edge cuts are stored on the `x = 0` /
    /// `y = 0` side of the identification.
    pub cuts: Vec<Cut>,
    pub info: Vec<CutInfo>,
    pub natural: bool,
    /// Cut indices per square (1-based squares).
    by_square: Vec<Vec<usize>>,
}

impl StaircaseSpec {
    pub fn new(origami: Origami, group: Group, cuts: Vec<Cut>) -> Result<Self, SpecError> {
        let k = origami.square_count();
        let mut canonical = Vec::with_capacity(cuts.len());
        for (index, mut cut) in cuts.into_iter().enumerate() {
            if cut.square < 1 || cut.square > k {
                return Err(SpecError::BadCut {
                    index,
                    reason: format!("square {} out of range 1..={}", cut.square, k),
                });
            }
            if cut.value.group() != group {
                return Err(SpecError::GroupMismatch {
                    index,
                    found: cut.value.group().to_string(),
                    expected: group.to_string(),
                });
            }
            if cut.dir == (0, 0) {
                return Err(SpecError::BadCut {
                    index,
                    reason: "zero direction".into(),
                });
            }
            let g = num_integer::gcd(cut.dir.0.unsigned_abs(), cut.dir.1.unsigned_abs());
            if g != 1 {
                return Err(SpecError::BadCut {
                    index,
                    reason: format!("direction {:?} is not primitive", cut.dir),
                });
            }
            if cut.len <= q(0, 1) {
                return Err(SpecError::BadCut {
                    index,
                    reason: "length must be positive".into(),
                });
            }
            let inside = |p: (Q, Q)| {
                p.0 >= q(0, 1) && p.0 <= q(1, 1) && p.1 >= q(0, 1) && p.1 <= q(1, 1)
            };
            if !inside(cut.start) || !inside(cut.end()) {
                return Err(SpecError::BadCut {
                    index,
                    reason: "segment leaves the unit square".into(),
                });
            }
            // canonicalize: normalize orientation so dir points up/right,
            // then move right-edge cuts to x=0 of sigma_h(square) and
            // top-edge cuts to y=0 of sigma_v(square)
            if cut.dir.1 < 0 || (cut.dir.1 == 0 && cut.dir.0 < 0) {
                let end = cut.end();
                cut = Cut {
                    square: cut.square,
                    start: end,
                    dir: (-cut.dir.0, -cut.dir.1),
                    len: cut.len,
                    value: cut.value.neg(),
                };
            }
            if cut.dir.0 == 0 && cut.start.0 == q(1, 1) {
                cut.square = origami.sigma_h().apply(cut.square);
                cut.start.0 = q(0, 1);
            }
            if cut.dir.1 == 0 && cut.start.1 == q(1, 1) {
                cut.square = origami.sigma_v().apply(cut.square);
                cut.start.1 = q(0, 1);
            }
            // interior lattice points: only corners can occur, and a
            // singular one invalidates the cut
            for cx in 0..=1i128 {
                for cy in 0..=1i128 {
                    let (u, v) = (q(cx, 1), q(cy, 1));
                    let t = if cut.dir.0 != 0 {
                        (u - cut.start.0) / q(cut.dir.0 as i128, 1)
                    } else if cut.dir.1 != 0 {
                        (v - cut.start.1) / q(cut.dir.1 as i128, 1)
                    } else {
                        continue;
                    };
                    let on_line = cut.start.0 + t * q(cut.dir.0 as i128, 1) == u
                        && cut.start.1 + t * q(cut.dir.1 as i128, 1) == v;
                    if on_line && t > q(0, 1) && t < cut.len {
                        let corner = corner_of(u, v).expect("integer corner");
                        if !origami.vertex_at(cut.square, corner).is_regular() {
                            return Err(SpecError::ThroughSingularity { index });
                        }
                    }
                }
            }
            canonical.push(cut);
        }

        let info: Vec<CutInfo> = canonical
            .iter()
            .map(|cut| {
                let kind = if cut.dir.0 == 0 && cut.start.0 == q(0, 1) {
                    CutKind::LeftEdge
                } else if cut.dir.1 == 0 && cut.start.1 == q(0, 1) {
                    CutKind::BottomEdge
                } else {
                    CutKind::Interior
                };
                let classify = |p: (Q, Q)| match corner_of(p.0, p.1) {
                    Some(c) => {
                        let orbit = origami.vertex_at(cut.square, c);
                        let class = if orbit.is_regular() {
                            EndpointClass::RegularInteger
                        } else {
                            EndpointClass::Singular
                        };
                        (class, Some(orbit.representative))
                    }
                    None => (EndpointClass::Interior, None),
                };
                let (c0, v0) = classify(cut.start);
                let (c1, v1) = classify(cut.end());
                CutInfo {
                    kind,
                    endpoints: [c0, c1],
                    endpoint_vertices: [v0, v1],
                }
            })
            .collect();

        let natural = canonical.iter().all(|c| c.is_natural_shape()) && {
            // natural cuts are full edges; distinct canonical edges meet
            // at most at endpoints, so only duplicates can overlap
            let mut edges: Vec<(usize, (Q, Q), (i64, i64))> = canonical
                .iter()
                .map(|c| (c.square, c.start, c.dir))
                .collect();
            let before = edges.len();
            edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
            edges.dedup();
            edges.len() == before
        };

        let mut by_square = vec![Vec::new(); k];
        for (i, c) in canonical.iter().enumerate() {
            by_square[c.square - 1].push(i);
        }
        Ok(StaircaseSpec {
            origami,
            group,
            cuts: canonical,
            info,
            natural,
            by_square,
        })
    }

    /// Spec with no cuts (the trivial cover).
    pub fn trivial(origami: Origami, group: Group) -> StaircaseSpec {
        StaircaseSpec::new(origami, group, Vec::new()).expect("no cuts to validate")
    }

    pub fn cuts_in_square(&self, square: usize) -> &[usize] {
        &self.by_square[square - 1]
    }

    /// Sum of value norms over all cuts (the raw material of the
    /// crossing-sum bound).
    pub fn total_value_norm(&self) -> u64 {
        self.cuts.iter().map(|c| c.value.norm()).sum()
    }

    /// The surface with horizontal and vertical roles swapped.  Cut
    /// coordinates reflect across the diagonal; values are negated so
    /// signed crossing sums agree with the untransposed picture.
    pub fn transpose(&self) -> StaircaseSpec {
        let cuts = self
            .cuts
            .iter()
            .map(|c| Cut {
                square: c.square,
                start: (c.start.1, c.start.0),
                dir: (c.dir.1, c.dir.0),
                len: c.len,
                value: c.value.neg(),
            })
            .collect();
        StaircaseSpec::new(self.origami.transpose(), self.group, cuts)
            .expect("transposed cuts stay valid")
    }

    /// Relabel squares in both the surface and the cuts.
    pub fn relabel(&self, g: &crate::perm::Permutation) -> Result<StaircaseSpec, SpecError> {
        let origami = self.origami.relabel(g)?;
        let cuts = self
            .cuts
            .iter()
            .map(|c| Cut {
                square: g.apply(c.square),
                ..c.clone()
            })
            .collect();
        StaircaseSpec::new(origami, self.group, cuts)
    }
}

fn corner_of(x: Q, y: Q) -> Option<Corner> {
    let zero = q(0, 1);
    let one = q(1, 1);
    match ((x == zero, x == one), (y == zero, y == one)) {
        ((true, _), (true, _)) => Some(Corner::LowerLeft),
        ((true, _), (_, true)) => Some(Corner::UpperLeft),
        ((_, true), (true, _)) => Some(Corner::LowerRight),
        ((_, true), (_, true)) => Some(Corner::UpperRight),
        _ => None,
    }
}
