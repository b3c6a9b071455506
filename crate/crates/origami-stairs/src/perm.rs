//! Exact permutation arithmetic on `{1..k}`.
//!
//! All public interfaces speak 1-based element labels (matching the
//! square labels on the surfaces); storage is 0-based.  The composition
//! convention is fixed project-wide as *right acts first*:
//! `a.compose(b)` maps `i` to `a(b(i))`.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree must be at least 1")]
    EmptyDomain,
    #[error("images do not form a bijection on 1..={degree}: {reason}")]
    NotBijective { degree: usize, reason: String },
    #[error("empty generator list")]
    NoGenerators,
    #[error("cycle notation: {0}")]
    BadCycles(String),
}

/// A bijection on `{1..k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    /// images[i] = sigma(i), both 0-based.
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Permutation {
            images: (0..k as u32).collect(),
        }
    }

    /// Build from 1-based images, validating bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let k = images.len();
        if k == 0 {
            return Err(PermError::EmptyDomain);
        }
        let mut seen = vec![false; k];
        let mut out = Vec::with_capacity(k);
        for (i, &im) in images.iter().enumerate() {
            if im < 1 || im > k {
                return Err(PermError::NotBijective {
                    degree: k,
                    reason: format!("image {} of {} out of range", im, i + 1),
                });
            }
            if seen[im - 1] {
                return Err(PermError::NotBijective {
                    degree: k,
                    reason: format!("image {} repeated", im),
                });
            }
            seen[im - 1] = true;
            out.push((im - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    /// Build from disjoint cycles over 1-based labels; labels omitted
    /// from every cycle are fixed points.
    pub fn from_cycles(k: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        if k == 0 {
            return Err(PermError::EmptyDomain);
        }
        let mut images: Vec<usize> = (1..=k).collect();
        let mut touched = vec![false; k];
        for cyc in cycles {
            for w in 0..cyc.len() {
                let a = cyc[w];
                let b = cyc[(w + 1) % cyc.len()];
                if a < 1 || a > k {
                    return Err(PermError::BadCycles(format!(
                        "label {} out of range 1..={}",
                        a, k
                    )));
                }
                if touched[a - 1] {
                    return Err(PermError::BadCycles(format!(
                        "label {} appears in more than one cycle",
                        a
                    )));
                }
                touched[a - 1] = true;
                images[a - 1] = b;
            }
        }
        Self::from_images(&images)
    }

    /// Parse disjoint-cycle notation such as `(1 2 3)(4 5)` or
    /// `(1,2,3)`.  `()` denotes the identity; fixed points may be
    /// written as singleton cycles.
    pub fn parse(k: usize, text: &str) -> Result<Self, PermError> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut cur: Option<Vec<usize>> = None;
        let mut num = String::new();
        let flush_num = |num: &mut String, cur: &mut Option<Vec<usize>>| -> Result<(), PermError> {
            if num.is_empty() {
                return Ok(());
            }
            let v: usize = num
                .parse()
                .map_err(|_| PermError::BadCycles(format!("bad label `{}`", num)))?;
            num.clear();
            match cur {
                Some(c) => c.push(v),
                None => {
                    return Err(PermError::BadCycles(format!(
                        "label {} outside parentheses",
                        v
                    )))
                }
            }
            Ok(())
        };
        for ch in text.chars() {
            match ch {
                '(' => {
                    if cur.is_some() {
                        return Err(PermError::BadCycles("nested `(`".into()));
                    }
                    cur = Some(Vec::new());
                }
                ')' => {
                    flush_num(&mut num, &mut cur)?;
                    match cur.take() {
                        Some(c) => {
                            if !c.is_empty() {
                                cycles.push(c);
                            }
                        }
                        None => return Err(PermError::BadCycles("unmatched `)`".into())),
                    }
                }
                '0'..='9' => num.push(ch),
                ' ' | '\t' | ',' => flush_num(&mut num, &mut cur)?,
                other => {
                    return Err(PermError::BadCycles(format!("unexpected `{}`", other)));
                }
            }
        }
        if cur.is_some() {
            return Err(PermError::BadCycles("unterminated `(`".into()));
        }
        if !num.is_empty() {
            return Err(PermError::BadCycles("trailing label outside cycle".into()));
        }
        Self::from_cycles(k, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Apply to a 1-based label.
    pub fn apply(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.degree());
        self.images[i - 1] as usize + 1
    }

    /// Apply to a 0-based index.
    pub(crate) fn apply0(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// `self(other(i))`: the right factor acts first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        let images = other
            .images
            .iter()
            .map(|&m| self.images[m as usize])
            .collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &m) in self.images.iter().enumerate() {
            images[m as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `self^n` for `n >= 0`, by squaring.
    pub fn pow(&self, n: usize) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = base.compose(&acc).expect("equal degrees");
            }
            base = base.compose(&base).expect("equal degrees");
            n >>= 1;
        }
        acc
    }

    /// The commutator `[v, h] = v^-1 . h^-1 . v . h` (right acts first).
    pub fn commutator(v: &Permutation, h: &Permutation) -> Result<Permutation, PermError> {
        if v.degree() != h.degree() {
            return Err(PermError::DegreeMismatch(v.degree(), h.degree()));
        }
        let vh = v.compose(h)?;
        let hv = h.compose(v)?;
        hv.inverse().compose(&vh)
    }

    /// `g . self . g^-1`.
    pub fn conjugate_by(&self, g: &Permutation) -> Result<Permutation, PermError> {
        g.compose(self)?.compose(&g.inverse())
    }

    /// Disjoint cycles covering `{1..k}`, fixed points included.  Each
    /// cycle starts from its smallest label; cycles are ordered by that
    /// label.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let k = self.degree();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut cur = start;
            loop {
                seen[cur] = true;
                cyc.push(cur + 1);
                cur = self.images[cur] as usize;
                if cur == start {
                    break;
                }
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut lengths: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType {
            degree: self.degree(),
            lengths,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &m)| i as u32 == m)
    }

    /// Even permutations are products of an even number of transpositions.
    pub fn is_even(&self) -> bool {
        self.cycle_type().parity() == Parity::Even
    }

    /// Cycle-notation rendering.  With `explicit_fixed` set, fixed
    /// points are printed as singletons; the identity prints as `()`.
    pub fn to_cycle_string(&self, explicit_fixed: bool) -> String {
        let mut s = String::new();
        for cyc in self.cycles() {
            if cyc.len() == 1 && !explicit_fixed {
                continue;
            }
            s.push('(');
            for (i, v) in cyc.iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                s.push_str(&v.to_string());
            }
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("()");
        }
        s
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string(false))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Multiset of cycle lengths, sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleType {
    degree: usize,
    lengths: Vec<usize>,
}

impl CycleType {
    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cycle_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn fixed_point_count(&self) -> usize {
        self.lengths.iter().filter(|&&l| l == 1).count()
    }

    pub fn parity(&self) -> Parity {
        if (self.degree - self.cycle_count()) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// True when the type is one cycle through every element.
    pub fn is_single_full_cycle(&self) -> bool {
        self.lengths.len() == 1 && self.lengths[0] == self.degree
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, l) in self.lengths.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", l)?;
        }
        write!(f, "]")
    }
}

/// Whether the group generated acts with a single orbit on `{1..k}`,
/// by breadth-first orbit closure from element 1.
pub fn orbit_transitive(gens: &[Permutation]) -> Result<bool, PermError> {
    Ok(orbit_of(gens, 1)?.len() == gens[0].degree())
}

/// The orbit of a 1-based element under the generated group.
pub fn orbit_of(gens: &[Permutation], start: usize) -> Result<Vec<usize>, PermError> {
    if gens.is_empty() {
        return Err(PermError::NoGenerators);
    }
    let k = gens[0].degree();
    for g in gens {
        if g.degree() != k {
            return Err(PermError::DegreeMismatch(k, g.degree()));
        }
    }
    let mut seen = vec![false; k];
    let mut queue = VecDeque::new();
    seen[start - 1] = true;
    queue.push_back(start - 1);
    let mut orbit = vec![start];
    while let Some(cur) = queue.pop_front() {
        for g in gens {
            // generators and inverses; inverses are redundant for
            // finite orbits but keep the closure obviously correct
            for next in [g.apply0(cur), g.inverse().apply0(cur)] {
                if !seen[next] {
                    seen[next] = true;
                    orbit.push(next + 1);
                    queue.push_back(next);
                }
            }
        }
    }
    orbit.sort_unstable();
    Ok(orbit)
}
