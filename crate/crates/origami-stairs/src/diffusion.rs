//! Seeded diffusion experiments: trace the skew-product displacement
//! along many random rational directions and summarize how fast (or
//! whether) it drifts.
//!
//! The fixed start point `(1/D, 201/D)` with `D = 1000003` prime keeps
//! every sampled orbit clear of corners and cut endpoints: a hit would
//! require `q*a - p*b = 0 mod D` for small integers, impossible for
//! `|p|, |q| <= 200`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cut::StaircaseSpec;
use crate::trace::{ergodic_sum, ratio_f64, TraceError, TracePoint, TraceStatus};
use crate::{q, Q};

const START_DENOM: i128 = 1_000_003;
pub const MAX_COMPONENT: u64 = 200;

/// One sample of the displacement path, for plotting.
#[derive(Debug, Clone, Serialize)]
pub struct SeriesPoint {
    /// Euclidean time of the crossing.
    pub t: f64,
    /// Integer lift of the displacement after it.
    pub s: Vec<i64>,
    /// Returns of the displacement to zero so far (counted for t > 10).
    pub returns: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DirectionStats {
    /// Direction vector (run, rise), coprime, components up to 200.
    pub p: u64,
    pub q: u64,
    /// `||S_T|| / T`.
    pub drift_ratio: f64,
    /// Returns of the displacement to zero after Euclidean time 10.
    pub returns: u64,
    /// Largest displacement norm seen along the orbit.
    pub max_excursion: u64,
    pub final_norm: u64,
    pub status: TraceStatus,
    /// Euclidean time actually covered (equals T unless truncated).
    pub t_end: f64,
    /// Downsampled displacement path.
    pub series: Vec<SeriesPoint>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Quantiles {
    pub min: f64,
    pub median: f64,
    pub p90: f64,
    pub max: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiffusionReport {
    pub seed: u64,
    pub t: f64,
    pub directions: Vec<DirectionStats>,
    pub drift: Quantiles,
    pub returns_median: f64,
}

fn quantiles(sorted: &[f64]) -> Quantiles {
    let pick = |f: f64| sorted[((sorted.len() - 1) as f64 * f).round() as usize];
    Quantiles {
        min: sorted[0],
        median: pick(0.5),
        p90: pick(0.9),
        max: sorted[sorted.len() - 1],
    }
}

/// Sample a reduced direction with both components in `1..=200`.
fn sample_direction(rng: &mut ChaCha8Rng) -> (u64, u64) {
    loop {
        let p = rng.gen_range(1..=MAX_COMPONENT);
        let qq = rng.gen_range(1..=MAX_COMPONENT);
        if num_integer::gcd(p, qq) == 1 {
            return (p, qq);
        }
    }
}

pub fn start_point() -> TracePoint {
    TracePoint::new(1, q(1, START_DENOM), q(201, START_DENOM))
}

pub fn diffusion_experiment(
    spec: &StaircaseSpec,
    directions: usize,
    t: Q,
    seed: u64,
) -> Result<DiffusionReport, TraceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dirs: Vec<(u64, u64)> = (0..directions).map(|_| sample_direction(&mut rng)).collect();
    let t_f = ratio_f64(t);
    let mut stats = Vec::with_capacity(dirs.len());
    for (p, rise) in dirs {
        let tr = ergodic_sum(spec, start_point(), (p as i64, rise as i64), t)?;
        let s_len = ((p * p + rise * rise) as f64).sqrt();
        let return_floor = q(100, 1) / q((p * p + rise * rise) as i128, 1); // lambda^2 > this
        let mut running = spec.group.zero();
        let mut returns = 0u64;
        let mut max_exc = 0u64;
        let mut series = Vec::new();
        let stride = (tr.crossings.len() / 1000).max(1);
        for (i, c) in tr.crossings.iter().enumerate() {
            let v = &spec.cuts[c.cut].value;
            let signed = if c.sign > 0 { v.clone() } else { v.neg() };
            running = running.add(&signed);
            let n = running.norm();
            max_exc = max_exc.max(n);
            if running.is_zero() && c.lambda * c.lambda > return_floor {
                returns += 1;
            }
            if i % stride == 0 || i + 1 == tr.crossings.len() {
                series.push(SeriesPoint {
                    t: ratio_f64(c.lambda) * s_len,
                    s: running.lift(),
                    returns,
                });
            }
        }
        debug_assert_eq!(running, tr.total);
        stats.push(DirectionStats {
            p,
            q: rise,
            drift_ratio: tr.total.norm() as f64 / t_f,
            returns,
            max_excursion: max_exc,
            final_norm: tr.total.norm(),
            status: tr.status,
            t_end: tr.euclidean_length(),
            series,
        });
    }
    let mut drifts: Vec<f64> = stats.iter().map(|s| s.drift_ratio).collect();
    drifts.sort_by(f64::total_cmp);
    let mut rets: Vec<f64> = stats.iter().map(|s| s.returns as f64).collect();
    rets.sort_by(f64::total_cmp);
    Ok(DiffusionReport {
        seed,
        t: t_f,
        drift: quantiles(&drifts),
        returns_median: quantiles(&rets).median,
        directions: stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut::Cut;
    use crate::fixtures;
    use crate::group::Group;

    #[test]
    fn no_cuts_all_zero() {
        let spec = StaircaseSpec::trivial(fixtures::torus(), Group::z(1).unwrap());
        let rep = diffusion_experiment(&spec, 5, q(1000, 1), 7).unwrap();
        assert!(rep
            .directions
            .iter()
            .all(|d| d.drift_ratio == 0.0 && d.returns == 0 && d.max_excursion == 0));
    }

    #[test]
    fn deterministic_given_seed() {
        let spec = fixtures::hhw_staircase();
        let a = diffusion_experiment(&spec, 3, q(500, 1), 42).unwrap();
        let b = diffusion_experiment(&spec, 3, q(500, 1), 42).unwrap();
        let pa: Vec<_> = a.directions.iter().map(|d| (d.p, d.q, d.final_norm)).collect();
        let pb: Vec<_> = b.directions.iter().map(|d| (d.p, d.q, d.final_norm)).collect();
        assert_eq!(pa, pb);
        let c = diffusion_experiment(&spec, 3, q(500, 1), 43).unwrap();
        let pc: Vec<_> = c.directions.iter().map(|d| (d.p, d.q)).collect();
        assert_ne!(
            pa.iter().map(|x| (x.0, x.1)).collect::<Vec<_>>(),
            pc,
            "different seed should sample different directions"
        );
    }

    #[test]
    fn staircase_drifts_slowly_and_returns() {
        let spec = fixtures::hhw_staircase();
        let rep = diffusion_experiment(&spec, 6, q(5000, 1), 11).unwrap();
        let slow = rep
            .directions
            .iter()
            .filter(|d| d.drift_ratio < 0.05)
            .count();
        assert!(slow >= 5, "drifts {:?}", rep.drift);
        assert!(rep.directions.iter().any(|d| d.returns > 0));
    }

    #[test]
    fn nonzero_integral_drifts_linearly() {
        let o = fixtures::torus_row(2);
        let g = Group::z(1).unwrap();
        let spec =
            StaircaseSpec::new(o, g, vec![Cut::left_edge(1, g.generator(0))]).unwrap();
        let rep = diffusion_experiment(&spec, 6, q(2000, 1), 11).unwrap();
        let fast = rep
            .directions
            .iter()
            .filter(|d| d.drift_ratio > 0.1)
            .count();
        assert!(fast >= 5, "drifts {:?}", rep.drift);
    }

    #[test]
    fn no_truncations_at_the_guarded_start() {
        let spec = fixtures::two_row_staircase(1);
        let rep = diffusion_experiment(&spec, 8, q(1000, 1), 3).unwrap();
        assert!(rep
            .directions
            .iter()
            .all(|d| d.status == TraceStatus::Completed));
    }
}
