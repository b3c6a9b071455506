//! Values attached to cuts: vectors in `Z^d` (`d <= 8`) or residues in
//! `Z/m`.  Norms are L1 for vectors and distance to zero around the
//! cycle for residues.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub const MAX_RANK: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("rank {0} out of range 1..={MAX_RANK}")]
    BadRank(usize),
    #[error("modulus must be at least 2")]
    BadModulus,
    #[error("value {0} does not fit group {1}")]
    Incompatible(String, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Group {
    /// Free abelian group of the given rank.
    ZPow(usize),
    /// Cyclic group of the given modulus.
    Mod(u64),
}

impl Group {
    pub fn z(rank: usize) -> Result<Group, GroupError> {
        if rank == 0 || rank > MAX_RANK {
            return Err(GroupError::BadRank(rank));
        }
        Ok(Group::ZPow(rank))
    }

    pub fn z_mod(modulus: u64) -> Result<Group, GroupError> {
        if modulus < 2 {
            return Err(GroupError::BadModulus);
        }
        Ok(Group::Mod(modulus))
    }

    pub fn rank(&self) -> usize {
        match self {
            Group::ZPow(d) => *d,
            Group::Mod(_) => 1,
        }
    }

    pub fn zero(&self) -> GroupValue {
        GroupValue {
            group: *self,
            coords: vec![0; self.rank()],
        }
    }

    /// The `i`-th standard generator (0-based).
    pub fn generator(&self, i: usize) -> GroupValue {
        let mut v = self.zero();
        v.coords[i] = 1;
        v.normalize();
        v
    }

    /// Build a value from integer coordinates; residues are reduced.
    pub fn value(&self, coords: &[i64]) -> Result<GroupValue, GroupError> {
        if coords.len() != self.rank() {
            return Err(GroupError::Incompatible(
                format!("{:?}", coords),
                format!("{}", self),
            ));
        }
        let mut v = GroupValue {
            group: *self,
            coords: coords.to_vec(),
        };
        v.normalize();
        Ok(v)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::ZPow(d) => write!(f, "Z^{}", d),
            Group::Mod(m) => write!(f, "Z/{}", m),
        }
    }
}

/// An element of a [`Group`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupValue {
    group: Group,
    coords: Vec<i64>,
}

impl GroupValue {
    fn normalize(&mut self) {
        if let Group::Mod(m) = self.group {
            let m = m as i64;
            self.coords[0] = self.coords[0].rem_euclid(m);
        }
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// The integer lift used for drift and zero-integral arithmetic:
    /// coordinates as-is for `Z^d`, the representative in
    /// `(-m/2, m/2]` for `Z/m`.
    pub fn lift(&self) -> Vec<i64> {
        match self.group {
            Group::ZPow(_) => self.coords.clone(),
            Group::Mod(m) => {
                let m = m as i64;
                let r = self.coords[0];
                vec![if r * 2 > m { r - m } else { r }]
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &GroupValue) -> GroupValue {
        assert_eq!(self.group, other.group, "group mismatch");
        let mut out = GroupValue {
            group: self.group,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        };
        out.normalize();
        out
    }

    pub fn neg(&self) -> GroupValue {
        let mut out = GroupValue {
            group: self.group,
            coords: self.coords.iter().map(|c| -c).collect(),
        };
        out.normalize();
        out
    }

    pub fn scale(&self, n: i64) -> GroupValue {
        let mut out = GroupValue {
            group: self.group,
            coords: self.coords.iter().map(|c| c * n).collect(),
        };
        out.normalize();
        out
    }

    /// Translation-invariant norm: L1 for `Z^d`, cycle distance to zero
    /// for `Z/m`.
    pub fn norm(&self) -> u64 {
        match self.group {
            Group::ZPow(_) => self.coords.iter().map(|c| c.unsigned_abs()).sum(),
            Group::Mod(m) => {
                let r = self.coords[0] as u64;
                r.min(m - r)
            }
        }
    }
}

impl fmt::Display for GroupValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_arithmetic() {
        let g = Group::z(2).unwrap();
        let a = g.value(&[3, -1]).unwrap();
        let b = g.value(&[-3, 1]).unwrap();
        assert!(a.add(&b).is_zero());
        assert_eq!(a.norm(), 4);
        assert_eq!(a.neg().coords(), &[-3, 1]);
    }

    #[test]
    fn mod_arithmetic() {
        let g = Group::z_mod(7).unwrap();
        let a = g.value(&[5]).unwrap();
        assert_eq!(a.norm(), 2);
        assert_eq!(a.add(&g.value(&[4]).unwrap()).coords(), &[2]);
        assert_eq!(a.lift(), vec![-2]);
        assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn triangle_inequality_spot() {
        let g = Group::z_mod(10).unwrap();
        for x in 0..10 {
            for y in 0..10 {
                let a = g.value(&[x]).unwrap();
                let b = g.value(&[y]).unwrap();
                assert!(a.add(&b).norm() <= a.norm() + b.norm());
            }
        }
    }
}
