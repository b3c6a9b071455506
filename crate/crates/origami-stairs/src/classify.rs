//! Ergodicity classification of staircase specs by the two checkable
//! criteria, and construction of natural staircases on surfaces whose
//! commutator has enough fixed points.

use serde::Serialize;
use thiserror::Error;

use crate::cut::{Cut, EndpointClass, SpecError, StaircaseSpec};
use crate::cylinders::{find_single_cylinder_direction, no_single_cylinder_certificate, Certificate};
use crate::group::Group;
use crate::profile::cylinder_sums;
use crate::slope::{DirectionError, Slope};
use crate::surface::{Corner, Origami};
use crate::Q;

pub const DEFAULT_QMAX: u64 = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Direction(#[from] DirectionError),
    #[error(transparent)]
    Spec(#[from] SpecError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// The cover's geodesic flow is ergodic in almost every direction.
    ErgodicAE,
    /// Not ergodic in almost every direction.
    NotErgodicAE,
    /// Neither automatic criterion applies.
    Unknown,
}

/// Equal-profile check for a direction with at least two cylinders:
/// every per-cylinder profile integrates to zero, and the profiles
/// agree as multisets of (length, value) pieces.
#[derive(Debug, Clone, Serialize)]
pub struct MultiCylinderReport {
    pub slope: Slope,
    pub cylinder_count: usize,
    pub all_integrals_zero: bool,
    pub profiles_equal_as_multisets: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub verdict: Verdict,
    /// Which test fired (or why none did).
    pub justification: String,
    /// Single-cylinder direction used by the positive criterion.
    pub single_cylinder_direction: Option<Slope>,
    /// Attached when the verdict is Unknown and some inspected
    /// direction decomposes into several zero-sum cylinders.
    pub supplementary: Option<MultiCylinderReport>,
}

fn piece_multiset(spec: &StaircaseSpec, s: Slope) -> Option<(usize, bool, bool)> {
    let sums = cylinder_sums(spec, s).ok()?;
    let count = sums.profiles.len();
    let zero = sums.all_integrals_zero;
    let mut sets: Vec<Vec<(Q, Vec<i64>)>> = sums
        .profiles
        .iter()
        .map(|p| {
            let mut v: Vec<(Q, Vec<i64>)> = p
                .pieces
                .iter()
                .map(|pc| (pc.hi - pc.lo, pc.sum.lift()))
                .collect();
            v.sort();
            v
        })
        .collect();
    let equal = sets.windows(2).all(|w| w[0] == w[1]);
    sets.clear();
    Some((count, zero, equal))
}

/// The positive criterion's witness: a cut carrying the generator with
/// a regular-integer endpoint not shared with any other cut.
fn free_endpoint_witness(spec: &StaircaseSpec, gen: &crate::group::GroupValue) -> Option<usize> {
    for (i, cut) in spec.cuts.iter().enumerate() {
        if cut.value != *gen {
            continue;
        }
        for e in 0..2 {
            if spec.info[i].endpoints[e] != EndpointClass::RegularInteger {
                continue;
            }
            let v = spec.info[i].endpoint_vertices[e];
            let shared = spec
                .info
                .iter()
                .enumerate()
                .any(|(j, inf)| j != i && inf.endpoint_vertices.contains(&v));
            if !shared {
                return Some(i);
            }
        }
    }
    None
}

fn is_h2(o: &Origami) -> bool {
    matches!(o.stratum(), Ok(s) if s.cone_angles == vec![3])
}

pub fn classify_staircase(spec: &StaircaseSpec) -> Result<ClassifyReport, ClassifyError> {
    classify_staircase_with(spec, DEFAULT_QMAX)
}

pub fn classify_staircase_with(
    spec: &StaircaseSpec,
    q_max: u64,
) -> Result<ClassifyReport, ClassifyError> {
    if !spec.origami.is_connected() {
        return Err(DirectionError::Disconnected.into());
    }

    // negative criterion: H(2) cover ramified only over the cone point
    if is_h2(&spec.origami)
        && !spec.cuts.is_empty()
        && spec
            .info
            .iter()
            .all(|i| i.endpoints.iter().all(|&e| e == EndpointClass::Singular))
    {
        return Ok(ClassifyReport {
            verdict: Verdict::NotErgodicAE,
            justification: "surface in H(2) and every cut endpoint is singular: \
                            the cover is unramified away from the cone point"
                .to_string(),
            single_cylinder_direction: None,
            supplementary: None,
        });
    }

    // positive criterion: natural spec, free regular endpoint per
    // generator, and a single-cylinder direction
    let positive = spec.natural
        && matches!(spec.group, Group::ZPow(_))
        && (0..spec.group.rank()).all(|i| {
            free_endpoint_witness(spec, &spec.group.generator(i)).is_some()
        });
    if positive {
        if let Some(s) = find_single_cylinder_direction(&spec.origami, q_max)? {
            return Ok(ClassifyReport {
                verdict: Verdict::ErgodicAE,
                justification: format!(
                    "natural staircase: each generator has a cut with a regular \
                     endpoint shared by no other cut, and direction {} is \
                     single-cylinder",
                    s
                ),
                single_cylinder_direction: Some(s),
                supplementary: None,
            });
        }
    }

    // neither criterion fired; attach the multi-cylinder zero-sum
    // evidence from the horizontal direction when it exists
    let supplementary = Slope::new(0, 1)
        .ok()
        .and_then(|s| piece_multiset(spec, s).map(|t| (s, t)))
        .filter(|(_, (count, _, _))| *count >= 2)
        .map(|(s, (count, zero, equal))| MultiCylinderReport {
            slope: s,
            cylinder_count: count,
            all_integrals_zero: zero,
            profiles_equal_as_multisets: equal,
        });
    let why = if !spec.natural {
        "cut system is not natural; the automatic criteria do not apply"
    } else if positive {
        "free regular endpoints exist but no single-cylinder direction was found \
         within the search bound"
    } else {
        "no generator has a cut with an unshared regular endpoint, and the \
         negative criterion's hypotheses do not hold"
    };
    Ok(ClassifyReport {
        verdict: Verdict::Unknown,
        justification: why.to_string(),
        single_cylinder_direction: None,
        supplementary,
    })
}

/// Why no natural staircase could be proposed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum InfeasibleReason {
    /// Fewer commutator fixed points than requested generators.
    NotEnoughFixedPoints { have: usize, need: usize },
    /// No pair of distinct parallel unit edges with a free regular
    /// endpoint remains for this generator.
    NoFreePair { generator: usize },
    /// The spec was built but no single-cylinder direction exists (or
    /// was found) to complete the positive criterion.
    NoSingleCylinderDirection { certificate: Certificate },
}

#[derive(Debug, Clone, Serialize)]
pub enum Proposal {
    Feasible {
        #[serde(skip)]
        spec: StaircaseSpec,
        classification: ClassifyReport,
    },
    Infeasible {
        reason: InfeasibleReason,
        /// Set when the surface is in H(2) with no regular vertex: any
        /// natural staircase over it is NotErgodicAE.
        not_ergodic_warning: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EdgeId {
    Left(usize),
    Bottom(usize),
}

impl EdgeId {
    fn vertices(self, o: &Origami) -> [usize; 2] {
        match self {
            EdgeId::Left(s) => [
                o.vertex_at(s, Corner::LowerLeft).representative,
                o.vertex_at(s, Corner::UpperLeft).representative,
            ],
            EdgeId::Bottom(s) => [
                o.vertex_at(s, Corner::LowerLeft).representative,
                o.vertex_at(s, Corner::LowerRight).representative,
            ],
        }
    }

    fn is_vertical(self) -> bool {
        matches!(self, EdgeId::Left(_))
    }

    fn cut(self, value: crate::group::GroupValue) -> Cut {
        match self {
            EdgeId::Left(s) => Cut::left_edge(s, value),
            EdgeId::Bottom(s) => Cut::bottom_edge(s, value),
        }
    }
}

pub fn propose_staircase(o: &Origami, d: usize) -> Result<Proposal, ClassifyError> {
    propose_staircase_with(o, d, DEFAULT_QMAX)
}

/// Greedy construction: for each generator, a `+e_i` unit edge cut
/// with a regular endpoint reserved for it alone, balanced by a
/// parallel `-e_i` edge cut, so every direction integrates to zero.
pub fn propose_staircase_with(
    o: &Origami,
    d: usize,
    q_max: u64,
) -> Result<Proposal, ClassifyError> {
    if !o.is_connected() {
        return Err(DirectionError::Disconnected.into());
    }
    assert!(d >= 1);
    let stratum = o.stratum().expect("connected");
    let regular = stratum.regular_vertices.len();
    let warn = is_h2(o) && regular == 0;
    if regular < d {
        return Ok(Proposal::Infeasible {
            reason: InfeasibleReason::NotEnoughFixedPoints {
                have: regular,
                need: d,
            },
            not_ergodic_warning: warn,
        });
    }

    let k = o.square_count();
    let candidates: Vec<EdgeId> = (1..=k)
        .map(EdgeId::Left)
        .chain((1..=k).map(EdgeId::Bottom))
        .collect();
    let is_regular =
        |v: usize| o.vertex_orbits().iter().any(|orb| orb.representative == v && orb.is_regular());

    let group = Group::z(d).expect("rank checked");
    let mut used: Vec<EdgeId> = Vec::new();
    let mut reserved: Vec<usize> = Vec::new();
    let mut cuts: Vec<Cut> = Vec::new();
    for i in 0..d {
        let mut placed = false;
        'outer: for &plus in &candidates {
            if used.contains(&plus) {
                continue;
            }
            let pv = plus.vertices(o);
            if pv.iter().any(|v| reserved.contains(v)) {
                continue;
            }
            // a regular endpoint not shared with any already-placed edge
            let free = pv.iter().copied().find(|&v| {
                is_regular(v) && !used.iter().any(|e| e.vertices(o).contains(&v))
            });
            let Some(free_v) = free else { continue };
            for &minus in &candidates {
                if minus == plus || used.contains(&minus) {
                    continue;
                }
                if minus.is_vertical() != plus.is_vertical() {
                    continue;
                }
                let mv = minus.vertices(o);
                if mv.contains(&free_v) || mv.iter().any(|v| reserved.contains(v)) {
                    continue;
                }
                used.push(plus);
                used.push(minus);
                reserved.push(free_v);
                cuts.push(plus.cut(group.generator(i)));
                cuts.push(minus.cut(group.generator(i).neg()));
                placed = true;
                break 'outer;
            }
        }
        if !placed {
            return Ok(Proposal::Infeasible {
                reason: InfeasibleReason::NoFreePair { generator: i },
                not_ergodic_warning: warn,
            });
        }
    }

    let spec = StaircaseSpec::new(o.clone(), group, cuts)?;
    let classification = classify_staircase_with(&spec, q_max)?;
    if classification.verdict != Verdict::ErgodicAE {
        let certificate = no_single_cylinder_certificate(o, q_max)?;
        return Ok(Proposal::Infeasible {
            reason: InfeasibleReason::NoSingleCylinderDirection { certificate },
            not_ergodic_warning: warn,
        });
    }
    Ok(Proposal::Feasible {
        spec,
        classification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn five_square_left_presentation_not_ergodic() {
        let rep = classify_staircase(&fixtures::five_square_h2_singular_cuts()).unwrap();
        assert_eq!(rep.verdict, Verdict::NotErgodicAE);
    }

    #[test]
    fn five_square_right_presentation_ergodic() {
        let rep = classify_staircase(&fixtures::five_square_h2_free_cuts()).unwrap();
        assert_eq!(rep.verdict, Verdict::ErgodicAE, "{}", rep.justification);
        assert!(rep.single_cylinder_direction.is_some());
    }

    #[test]
    fn hhw_staircase_ergodic() {
        let rep = classify_staircase(&fixtures::hhw_staircase()).unwrap();
        assert_eq!(rep.verdict, Verdict::ErgodicAE);
    }

    #[test]
    fn two_row_staircase_unknown_with_supplementary() {
        let rep = classify_staircase(&fixtures::two_row_staircase(1)).unwrap();
        assert_eq!(rep.verdict, Verdict::Unknown, "{}", rep.justification);
        let sup = rep.supplementary.expect("horizontal evidence");
        assert_eq!(sup.cylinder_count, 2);
        assert!(sup.all_integrals_zero);
        assert!(sup.profiles_equal_as_multisets);
    }

    #[test]
    fn relabeling_preserves_verdict() {
        let spec = fixtures::five_square_h2_free_cuts();
        let g = crate::perm::Permutation::parse(5, "(1 4 2 5 3)").unwrap();
        let relabeled = spec.relabel(&g).unwrap();
        let a = classify_staircase(&spec).unwrap().verdict;
        let b = classify_staircase(&relabeled).unwrap().verdict;
        assert_eq!(a, b);
    }

    #[test]
    fn propose_torus_infeasible() {
        let p = propose_staircase(&fixtures::torus(), 1).unwrap();
        assert!(matches!(p, Proposal::Infeasible { .. }));
    }

    #[test]
    fn propose_two_square_row_gives_hhw_shape() {
        let p = propose_staircase(&fixtures::torus_row(2), 1).unwrap();
        let Proposal::Feasible {
            spec,
            classification,
        } = p
        else {
            panic!("expected feasible");
        };
        assert_eq!(classification.verdict, Verdict::ErgodicAE);
        assert_eq!(spec.cuts.len(), 2);
        assert!(spec.natural);
        // two opposite-valued vertical seams, as in the simple staircase
        assert!(spec.cuts.iter().all(|c| c.dir == (0, 1)));
        let total = spec
            .cuts
            .iter()
            .fold(spec.group.zero(), |acc, c| acc.add(&c.value));
        assert!(total.is_zero());
    }

    #[test]
    fn propose_wollmilchsau_no_fixed_points() {
        let p = propose_staircase(&fixtures::wollmilchsau(), 1).unwrap();
        assert!(matches!(
            p,
            Proposal::Infeasible {
                reason: InfeasibleReason::NotEnoughFixedPoints { have: 0, need: 1 },
                ..
            }
        ));
    }

    #[test]
    fn propose_h2_zero_fixed_points_warns() {
        // L-shaped 3-square origami in H(2): commutator is a 3-cycle
        let o = crate::surface::Origami::build(
            crate::perm::Permutation::parse(3, "(1 2)").unwrap(),
            crate::perm::Permutation::parse(3, "(1 3)").unwrap(),
        )
        .unwrap();
        assert!(is_h2(&o));
        let p = propose_staircase(&o, 1).unwrap();
        assert!(matches!(
            p,
            Proposal::Infeasible {
                not_ergodic_warning: true,
                ..
            }
        ));
    }
}
