//! Sturmian Lyndon words from the Farey mediant recursion.
//!
//! Starting from `w(0/1) = "0"` and `w(1/1) = "1"`, the word at the
//! mediant of two Farey neighbors is the concatenation of the two
//! neighbor words, left factor first.  This generates, for every
//! reduced `p/q` with `0 <= p <= q`, the unique Sturmian word of length
//! `q` with `p` ones that is strictly smaller than all of its nontrivial
//! rotations.

use num_integer::Integer;

use crate::slope::DirectionError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmianWord {
    /// Ones count.
    p: u64,
    /// Length.
    q: u64,
    letters: Vec<u8>,
}

impl SturmianWord {
    pub fn ones(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letters as 0/1 bytes, in order.
    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn as_string(&self) -> String {
        self.letters.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
    }

    /// Strict lexicographic minimality among all nontrivial rotations.
    pub fn is_strictly_minimal_rotation(&self) -> bool {
        let w = &self.letters;
        let n = w.len();
        (1..n).all(|r| {
            let rotated = (0..n).map(|i| w[(i + r) % n]);
            w.iter().copied().cmp(rotated) == std::cmp::Ordering::Less
        })
    }
}

/// The Sturmian Lyndon word for reduced `p/q`, `0 <= p <= q`, `q >= 1`,
/// built by Stern-Brocot descent between `0/1` and `1/1`.
pub fn sturmian_lyndon(p: u64, q: u64) -> Result<SturmianWord, DirectionError> {
    if q == 0 || p > q || p.gcd(&q) != 1 {
        return Err(DirectionError::NotReduced(p, q));
    }
    if (p, q) == (0, 1) {
        return Ok(SturmianWord { p, q, letters: vec![0] });
    }
    if (p, q) == (1, 1) {
        return Ok(SturmianWord { p, q, letters: vec![1] });
    }
    // invariant: lo < p/q < hi, lo and hi Farey neighbors
    let mut lo = ((0u64, 1u64), vec![0u8]);
    let mut hi = ((1u64, 1u64), vec![1u8]);
    loop {
        let med = ((lo.0).0 + (hi.0).0, (lo.0).1 + (hi.0).1);
        let mut word = lo.1.clone();
        word.extend_from_slice(&hi.1);
        if med == (p, q) {
            return Ok(SturmianWord { p, q, letters: word });
        }
        // compare p/q with med.0/med.1 exactly
        if (p as u128) * (med.1 as u128) < (med.0 as u128) * (q as u128) {
            hi = (med, word);
        } else {
            lo = (med, word);
        }
    }
}
