//! The square-tiled surface: construction from a permutation pair,
//! connectivity, vertex orbits, stratum and genus.

use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::perm::{orbit_of, PermError, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("surface is disconnected ({components} components)")]
    Disconnected { components: usize },
}

/// One corner of a unit square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Corner {
    LowerLeft,
    LowerRight,
    UpperLeft,
    UpperRight,
}

/// A vertex of the surface: one cycle of the commutator, anchored at
/// upper-right corners.  The cone angle is `2 pi` times the cycle
/// length; length-1 cycles are regular integer points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexOrbit {
    /// Smallest square label whose upper-right corner lies on this vertex.
    pub representative: usize,
    /// The commutator cycle through the representative (square labels).
    pub cycle: Vec<usize>,
    /// Cone angle is `2 pi * cone_angle_multiple`.
    pub cone_angle_multiple: usize,
}

impl VertexOrbit {
    pub fn is_regular(&self) -> bool {
        self.cone_angle_multiple == 1
    }
}

/// Stratum data of a connected surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stratum {
    /// Cone-angle multiples `m >= 2` (angle `2 pi m`), sorted descending.
    pub cone_angles: Vec<usize>,
    pub genus: usize,
    /// Representatives of the regular (non-singular) vertex orbits.
    pub regular_vertices: Vec<usize>,
}

impl Stratum {
    /// Standard `H(m1,...)` notation with entries `angle multiple - 1`.
    pub fn h_notation(&self) -> String {
        if self.cone_angles.is_empty() {
            return "H(0)".to_string();
        }
        let orders: Vec<String> = self
            .cone_angles
            .iter()
            .map(|m| (m - 1).to_string())
            .collect();
        format!("H({})", orders.join(","))
    }
}

/// Per-component stratum report for surfaces that may be disconnected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum StratumReport {
    Connected(Stratum),
    /// Squares and stratum of each connected component.
    Disconnected(Vec<(Vec<usize>, Stratum)>),
}

struct Derived {
    components: Vec<Vec<usize>>,
    commutator: Permutation,
    vertex_orbits: Vec<VertexOrbit>,
}

/// A square-tiled translation surface on `k` unit squares.
///
/// Immutable after construction; derived data (connectivity, vertex
/// orbits, stratum) is computed once on first use.
pub struct Origami {
    sigma_h: Permutation,
    sigma_v: Permutation,
    derived: OnceLock<Derived>,
}

impl Origami {
    pub fn build(sigma_h: Permutation, sigma_v: Permutation) -> Result<Self, SurfaceError> {
        if sigma_h.degree() != sigma_v.degree() {
            return Err(PermError::DegreeMismatch(sigma_h.degree(), sigma_v.degree()).into());
        }
        Ok(Origami {
            sigma_h,
            sigma_v,
            derived: OnceLock::new(),
        })
    }

    pub fn square_count(&self) -> usize {
        self.sigma_h.degree()
    }

    pub fn sigma_h(&self) -> &Permutation {
        &self.sigma_h
    }

    pub fn sigma_v(&self) -> &Permutation {
        &self.sigma_v
    }

    fn derived(&self) -> &Derived {
        self.derived.get_or_init(|| {
            let k = self.square_count();
            let gens = [self.sigma_h.clone(), self.sigma_v.clone()];
            let mut components = Vec::new();
            let mut assigned = vec![false; k];
            for start in 1..=k {
                if assigned[start - 1] {
                    continue;
                }
                let orbit = orbit_of(&gens, start).expect("validated generators");
                for &s in &orbit {
                    assigned[s - 1] = true;
                }
                components.push(orbit);
            }
            let commutator =
                Permutation::commutator(&self.sigma_v, &self.sigma_h).expect("equal degrees");
            let vertex_orbits = commutator
                .cycles()
                .into_iter()
                .map(|cycle| VertexOrbit {
                    representative: cycle[0],
                    cone_angle_multiple: cycle.len(),
                    cycle,
                })
                .collect();
            Derived {
                components,
                commutator,
                vertex_orbits,
            }
        })
    }

    pub fn is_connected(&self) -> bool {
        self.derived().components.len() == 1
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.derived().components
    }

    /// `[sigma_v, sigma_h]`, whose cycles enumerate the vertices.
    pub fn commutator(&self) -> &Permutation {
        &self.derived().commutator
    }

    /// One vertex per commutator cycle; the total count is `V`.
    pub fn vertex_orbits(&self) -> &[VertexOrbit] {
        &self.derived().vertex_orbits
    }

    /// The vertex orbit through the given corner of a square.  Corners
    /// other than upper-right are recovered by offsetting through the
    /// gluing permutations.
    pub fn vertex_at(&self, square: usize, corner: Corner) -> &VertexOrbit {
        let anchor = match corner {
            Corner::UpperRight => square,
            Corner::UpperLeft => self.sigma_h.inverse().apply(square),
            Corner::LowerRight => self.sigma_v.inverse().apply(square),
            Corner::LowerLeft => self
                .sigma_h
                .inverse()
                .apply(self.sigma_v.inverse().apply(square)),
        };
        self.derived()
            .vertex_orbits
            .iter()
            .find(|o| o.cycle.contains(&anchor))
            .expect("every square has a vertex orbit")
    }

    fn stratum_of(k: usize, orbits: &[&VertexOrbit]) -> Stratum {
        let v = orbits.len();
        let mut cone_angles: Vec<usize> = orbits
            .iter()
            .map(|o| o.cone_angle_multiple)
            .filter(|&m| m > 1)
            .collect();
        cone_angles.sort_unstable_by(|a, b| b.cmp(a));
        let regular_vertices = orbits
            .iter()
            .filter(|o| o.is_regular())
            .map(|o| o.representative)
            .collect();
        Stratum {
            cone_angles,
            genus: (k - v) / 2 + 1,
            regular_vertices,
        }
    }

    /// Stratum of a connected surface; errors with a component count on
    /// disconnected input (use [`Origami::stratum_report`] for those).
    pub fn stratum(&self) -> Result<Stratum, SurfaceError> {
        let d = self.derived();
        if d.components.len() != 1 {
            return Err(SurfaceError::Disconnected {
                components: d.components.len(),
            });
        }
        let orbits: Vec<&VertexOrbit> = d.vertex_orbits.iter().collect();
        Ok(Self::stratum_of(self.square_count(), &orbits))
    }

    /// Stratum per connected component.  Commutator cycles never cross
    /// components, so each vertex orbit belongs to exactly one.
    pub fn stratum_report(&self) -> StratumReport {
        let d = self.derived();
        if d.components.len() == 1 {
            return StratumReport::Connected(self.stratum().expect("connected"));
        }
        let per = d
            .components
            .iter()
            .map(|squares| {
                let orbits: Vec<&VertexOrbit> = d
                    .vertex_orbits
                    .iter()
                    .filter(|o| squares.contains(&o.representative))
                    .collect();
                (squares.clone(), Self::stratum_of(squares.len(), &orbits))
            })
            .collect();
        StratumReport::Disconnected(per)
    }

    /// The surface reflected across the diagonal: horizontal and
    /// vertical gluings swap.  Used to handle shallow directions.
    pub fn transpose(&self) -> Origami {
        Origami::build(self.sigma_v.clone(), self.sigma_h.clone()).expect("same degrees")
    }

    /// Relabel squares by `g` (conjugating both generators); a
    /// different presentation of the same surface.
    pub fn relabel(&self, g: &Permutation) -> Result<Origami, SurfaceError> {
        Ok(Origami::build(
            self.sigma_h.conjugate_by(g)?,
            self.sigma_v.conjugate_by(g)?,
        )?)
    }
}

impl Clone for Origami {
    fn clone(&self) -> Self {
        Origami {
            sigma_h: self.sigma_h.clone(),
            sigma_v: self.sigma_v.clone(),
            derived: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for Origami {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Origami")
            .field("k", &self.square_count())
            .field("sigma_h", &self.sigma_h.to_cycle_string(false))
            .field("sigma_v", &self.sigma_v.to_cycle_string(false))
            .finish()
    }
}
