//! Periodic approximation of an irrational direction by convergent
//! slopes, with the relative-error bookkeeping.
//!
//! A direction of irrational slope `theta` induces a rotation by
//! `theta' = 1/theta mod 1`; the convergents `p_n/q_n` of `theta'`
//! give periodic directions `q_n/p_n` whose cylinder decompositions
//! approximate the flow.  The relative error of the n-th approximation
//! is measured geometrically as `max_j l_j * S_n * tan(angle)` over
//! the decomposition and compared against the bracket
//! `[k/(a_{n+1}+1), k/a_{n+1}]` derived from the partial quotients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cylinders::cylinder_decomposition;
use crate::slope::{DirectionError, Slope};
use crate::surface::Origami;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ApproxError {
    #[error("direction has rational slope {0}; periodic approximation is trivial")]
    RationalDirection(String),
    #[error("requested depth {requested} exceeds the trusted depth {trusted} of this representation")]
    InsufficientPrecision { requested: usize, trusted: usize },
    #[error("slope must be positive, got {0}")]
    NonPositive(String),
    #[error("convergent denominator overflows the slope range")]
    ConvergentOverflow,
    #[error(transparent)]
    Direction(#[from] DirectionError),
}

/// An irrational direction, held as an exact rational proxy together
/// with the number of continued-fraction terms the proxy represents
/// faithfully.
#[derive(Debug, Clone)]
pub struct IrrationalDirection {
    /// Slope of the direction (rise over run), exact proxy.
    value: BigRational,
    /// Continued-fraction terms of `1/value mod 1` that are trusted.
    trusted_depth: usize,
}

impl IrrationalDirection {
    /// Build `[a0; a1, a2, ...]` exactly from partial quotients of the
    /// slope itself.  All terms after `a0` must be positive.  The last
    /// term is withheld from the trusted depth (the tail it stands in
    /// for would change it).
    pub fn from_partial_quotients(quotients: &[u64]) -> Result<IrrationalDirection, ApproxError> {
        if quotients.len() < 2 || quotients[1..].iter().any(|&a| a == 0) {
            return Err(ApproxError::NonPositive(format!("{:?}", quotients)));
        }
        let mut value = BigRational::from_integer(BigInt::from(*quotients.last().unwrap()));
        for &a in quotients[..quotients.len() - 1].iter().rev() {
            value = BigRational::from_integer(BigInt::from(a)) + value.recip();
        }
        if value <= BigRational::zero() {
            return Err(ApproxError::NonPositive(value.to_string()));
        }
        Ok(IrrationalDirection {
            value,
            trusted_depth: quotients.len().saturating_sub(2),
        })
    }

    /// Decimal string such as "1.6180339887"; trusted while the
    /// convergent denominators stay well inside the print precision.
    pub fn from_decimal_str(s: &str) -> Result<IrrationalDirection, ApproxError> {
        let (int_part, frac_part) = match s.split_once('.') {
            Some((a, b)) => (a, b),
            None => (s, ""),
        };
        let digits = frac_part.len() as u32;
        let denom = BigInt::from(10u32).pow(digits);
        let joined: String = format!("{}{}", int_part, frac_part);
        let numer: BigInt = joined
            .parse()
            .map_err(|_| ApproxError::NonPositive(s.to_string()))?;
        let value = BigRational::new(numer, denom.clone());
        if value <= BigRational::zero() {
            return Err(ApproxError::NonPositive(s.to_string()));
        }
        Ok(IrrationalDirection {
            trusted_depth: trusted_depth_for(&value, &BigRational::new(BigInt::one(), denom)),
            value,
        })
    }

    pub fn from_f64(x: f64) -> Result<IrrationalDirection, ApproxError> {
        if !(x.is_finite() && x > 0.0) {
            return Err(ApproxError::NonPositive(x.to_string()));
        }
        let value = BigRational::from_float(x).expect("finite");
        let eps = BigRational::new(BigInt::one(), BigInt::from(1u64 << 52));
        Ok(IrrationalDirection {
            trusted_depth: trusted_depth_for(&value, &(eps * &value)),
            value,
        })
    }

    pub fn slope_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }

    pub fn trusted_depth(&self) -> usize {
        self.trusted_depth
    }
}

/// How many terms of the continued fraction of `1/value mod 1` are
/// stable under a perturbation of size `err`: term `n` is trusted
/// while `q_n * q_{n+1} * err < 1/2`.
fn trusted_depth_for(value: &BigRational, err: &BigRational) -> usize {
    let theta_prime = one_over_mod_one(value);
    let (quotients, exact) = continued_fraction(&theta_prime, 64);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut q_prev = BigInt::zero();
    let mut q_cur = BigInt::one();
    let mut depth = 0usize;
    for a in &quotients {
        let q_next = BigInt::from(*a) * &q_cur + &q_prev;
        let window = BigRational::from_integer(&q_cur * &q_next) * err;
        if window >= half {
            break;
        }
        depth += 1;
        q_prev = q_cur;
        q_cur = q_next;
    }
    if exact {
        depth = depth.min(quotients.len().saturating_sub(1));
    }
    depth
}

fn one_over_mod_one(theta: &BigRational) -> BigRational {
    let inv = theta.recip();
    &inv - inv.floor()
}

/// Partial quotients of `x in [0,1)`: `x = 1/(a1 + 1/(a2 + ...))`.
/// Returns the quotients and whether the expansion terminated (i.e.
/// `x` is rational with that exact expansion).
fn continued_fraction(x: &BigRational, depth: usize) -> (Vec<u64>, bool) {
    let mut out = Vec::new();
    let mut cur = x.clone();
    for _ in 0..depth {
        if cur.is_zero() {
            return (out, true);
        }
        let inv = cur.recip();
        let a = inv.floor();
        out.push(a.to_integer().to_u64().unwrap_or(u64::MAX));
        cur = &inv - a;
    }
    (out, false)
}

/// One convergent of the approximation report.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergentRow {
    pub n: usize,
    pub p: u64,
    pub q: u64,
    /// The following partial quotient `a_{n+1}`.
    pub a_next: u64,
    /// Measured relative error (exact value rendered as f64).
    pub e_n: f64,
    /// `k * q_n * ||q_n theta'||`, the arithmetic error bound.
    pub kq_norm: f64,
    /// Bracket `[k/(a_{n+1}+1), k/a_{n+1}]`.
    pub lower: f64,
    pub upper: f64,
    /// Exact bracket membership with 1e-9 relative slack.
    pub in_bracket: bool,
    /// Membership in the wider bracket `[k/(a_{n+1}+2), k/a_{n+1}]`.
    pub in_wide_bracket: bool,
    /// Largest cylinder cycle length in the decomposition.
    pub max_cycle: usize,
    pub single_cylinder: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ApproximationReport {
    pub square_count: usize,
    pub theta: f64,
    pub theta_prime: f64,
    pub rows: Vec<ConvergentRow>,
    /// At least three strict records among the partial quotients after
    /// the first: a finite-depth witness of a diverging subsequence.
    pub good_candidate: bool,
    pub good_witness: Vec<usize>,
    /// Some quotient value at least `2k+1` recurring at least three
    /// times: a finite-depth witness of a large-but-bounded subsequence.
    pub fairly_good_candidate: bool,
    pub fairly_good_witness: Vec<usize>,
}

/// Periodic-approximation report for the first `depth` convergents of
/// `theta' = 1/theta mod 1`.
pub fn approximation_report(
    o: &Origami,
    theta: &IrrationalDirection,
    depth: usize,
) -> Result<ApproximationReport, ApproxError> {
    if !o.is_connected() {
        return Err(DirectionError::Disconnected.into());
    }
    let k = o.square_count();
    let theta_prime = one_over_mod_one(&theta.value);
    let (quotients, exact) = continued_fraction(&theta_prime, depth + 2);
    if exact && quotients.len() <= theta.trusted_depth {
        return Err(ApproxError::RationalDirection(theta.value.to_string()));
    }
    if depth > theta.trusted_depth {
        return Err(ApproxError::InsufficientPrecision {
            requested: depth,
            trusted: theta.trusted_depth,
        });
    }
    if depth + 1 > quotients.len() {
        return Err(ApproxError::InsufficientPrecision {
            requested: depth,
            trusted: quotients.len().saturating_sub(1),
        });
    }

    let tol = BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64));
    let one = BigRational::one();
    let k_big = BigRational::from_integer(BigInt::from(k));

    let mut rows = Vec::new();
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p_cur, mut q_cur) = (BigInt::zero(), BigInt::one());
    for n in 1..=depth {
        let a = BigInt::from(quotients[n - 1]);
        let p_next = &a * &p_cur + &p_prev;
        let q_next = &a * &q_cur + &q_prev;
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);

        let a_next = quotients[n];
        let p_u = p_cur.to_u64().ok_or(ApproxError::ConvergentOverflow)?;
        let q_u = q_cur.to_u64().ok_or(ApproxError::ConvergentOverflow)?;
        // approximating direction: run p_n, rise q_n (slope q_n/p_n)
        let s = Slope::new(q_u, p_u).map_err(ApproxError::Direction)?;
        let dec = cylinder_decomposition(o, s)?;
        let max_cycle = dec.cylinders.iter().map(|c| c.area).max().unwrap_or(0);

        // tan of the angle between (p_n, q_n) and (1, theta):
        // |p_n*theta - q_n| / (p_n + q_n*theta)
        let p_r = BigRational::from_integer(p_cur.clone());
        let q_r = BigRational::from_integer(q_cur.clone());
        let tan = (&p_r * &theta.value - &q_r).abs() / (&p_r + &q_r * &theta.value);
        let s_n = &p_r * &p_r + &q_r * &q_r;
        let e_n = BigRational::from_integer(BigInt::from(max_cycle)) * &s_n * &tan;

        let norm = (&q_r * &theta_prime - &p_r).abs();
        let kq_norm = &k_big * &q_r * &norm;

        let lower = &k_big / BigRational::from_integer(BigInt::from(a_next + 1));
        let wide_lower = &k_big / BigRational::from_integer(BigInt::from(a_next + 2));
        let upper = &k_big / BigRational::from_integer(BigInt::from(a_next));
        let in_bracket = e_n >= &lower * (&one - &tol) && e_n <= &upper * (&one + &tol);
        let in_wide_bracket =
            e_n >= &wide_lower * (&one - &tol) && e_n <= &upper * (&one + &tol);

        rows.push(ConvergentRow {
            n,
            p: p_u,
            q: q_u,
            a_next,
            e_n: e_n.to_f64().unwrap_or(f64::NAN),
            kq_norm: kq_norm.to_f64().unwrap_or(f64::NAN),
            lower: lower.to_f64().unwrap_or(f64::NAN),
            upper: upper.to_f64().unwrap_or(f64::NAN),
            in_bracket,
            in_wide_bracket,
            max_cycle,
            single_cylinder: dec.is_single_cylinder(),
        });
    }

    // classification over the quotients a_2..a_{depth+1}
    let tail: Vec<u64> = (1..=depth).map(|n| quotients[n]).collect();
    let mut good_witness = Vec::new();
    if let Some(&first) = tail.first() {
        let mut record = first;
        for (i, &a) in tail.iter().enumerate().skip(1) {
            if a > record {
                record = a;
                good_witness.push(i + 1); // convergent index n
            }
        }
    }
    let good_candidate = good_witness.len() >= 3;

    let threshold = 2 * k as u64 + 1;
    let mut fairly_good_witness = Vec::new();
    let mut counts: std::collections::HashMap<u64, Vec<usize>> = std::collections::HashMap::new();
    for (i, &a) in tail.iter().enumerate() {
        if a >= threshold {
            counts.entry(a).or_default().push(i + 1);
        }
    }
    for (_, idx) in counts {
        if idx.len() >= 3 && idx.len() > fairly_good_witness.len() {
            fairly_good_witness = idx;
        }
    }
    fairly_good_witness.sort_unstable();
    let fairly_good_candidate = !fairly_good_witness.is_empty();

    Ok(ApproximationReport {
        square_count: k,
        theta: theta.slope_f64(),
        theta_prime: theta_prime.to_f64().unwrap_or(f64::NAN),
        rows,
        good_candidate,
        good_witness,
        fairly_good_candidate,
        fairly_good_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn golden() -> IrrationalDirection {
        IrrationalDirection::from_partial_quotients(&[1; 40]).unwrap()
    }

    #[test]
    fn golden_ratio_never_flagged() {
        let o = fixtures::torus_row(2);
        let rep = approximation_report(&o, &golden(), 12).unwrap();
        assert!(!rep.good_candidate);
        assert!(!rep.fairly_good_candidate);
        assert_eq!(rep.rows.len(), 12);
        // upper bound k/a_{n+1} always holds
        assert!(rep.rows.iter().all(|r| {
            r.e_n <= r.upper * (1.0 + 1e-9)
        }));
    }

    #[test]
    fn doubling_quotients_flag_good() {
        let quots = [1u64, 1, 2, 1, 3, 1, 4, 1, 5, 1, 1, 1];
        let theta = IrrationalDirection::from_partial_quotients(&quots).unwrap();
        let o = fixtures::torus();
        let rep = approximation_report(&o, &theta, 10).unwrap();
        assert!(rep.good_candidate);
    }

    #[test]
    fn repeating_large_quotients_flag_fairly_good() {
        // k = 1 so the threshold is 3
        let quots = [1u64, 1, 5, 1, 5, 1, 5, 1, 5, 1, 1, 1];
        let theta = IrrationalDirection::from_partial_quotients(&quots).unwrap();
        let o = fixtures::torus();
        let rep = approximation_report(&o, &theta, 10).unwrap();
        assert!(rep.fairly_good_candidate);
        assert!(rep.fairly_good_witness.len() >= 3);
    }

    #[test]
    fn depth_zero_empty() {
        let o = fixtures::torus();
        let rep = approximation_report(&o, &golden(), 0).unwrap();
        assert!(rep.rows.is_empty());
        assert!(!rep.good_candidate && !rep.fairly_good_candidate);
    }

    #[test]
    fn rational_direction_rejected() {
        let o = fixtures::torus();
        let theta = IrrationalDirection::from_decimal_str("1.5").unwrap();
        assert!(matches!(
            approximation_report(&o, &theta, 5),
            Err(ApproxError::RationalDirection(_) | ApproxError::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn excessive_depth_rejected() {
        let o = fixtures::torus();
        let theta = IrrationalDirection::from_decimal_str("1.6180339887").unwrap();
        assert!(matches!(
            approximation_report(&o, &theta, 30),
            Err(ApproxError::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn torus_single_cylinder_convergents_track_the_bound() {
        // on the unit torus every convergent direction is
        // single-cylinder and E_n stays close to q_n * ||q_n theta'||
        let o = fixtures::torus();
        let rep = approximation_report(&o, &golden(), 10).unwrap();
        for r in &rep.rows {
            assert!(r.single_cylinder);
            let ratio = r.e_n / r.kq_norm;
            assert!((0.5..=1.5).contains(&ratio), "ratio {}", ratio);
        }
    }
}
