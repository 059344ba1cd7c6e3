//! Construction parameters: the pattern `(s, t)`, the target fraction `delta`, and the
//! degree bins with their anchor sample sizes.
//!
//! Bin `j` collects the vertices outside the chosen maximum independent set `I` whose
//! number of neighbours in `I` lies in `[theta_lo, theta_hi)`. Values are kept both
//! linearly and as natural logs, because the asymptotic schedule is only representable
//! in log space.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Bin {
    pub theta_lo: f64,
    pub theta_hi: f64,
    /// Anchor sample size used when this bin is selected.
    pub k: usize,
    pub ln_theta_lo: f64,
    pub ln_theta_hi: f64,
    pub ln_k: f64,
}

impl Bin {
    pub fn new(theta_lo: f64, theta_hi: f64, k: usize) -> Self {
        Self { theta_lo, theta_hi, k, ln_theta_lo: theta_lo.ln(), ln_theta_hi: theta_hi.ln(), ln_k: (k as f64).ln() }
    }

    /// Bin given by natural-log values; linear fields saturate when out of range.
    pub fn from_logs(ln_theta_lo: f64, ln_theta_hi: f64, ln_k: f64) -> Self {
        let k = if ln_k < (usize::MAX as f64).ln() { ln_k.exp().floor() as usize } else { usize::MAX };
        Self { theta_lo: ln_theta_lo.exp(), theta_hi: ln_theta_hi.exp(), k, ln_theta_lo, ln_theta_hi, ln_k }
    }

    #[inline]
    pub fn contains(&self, degree: usize) -> bool {
        let d = degree as f64;
        self.theta_lo <= d && d < self.theta_hi
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParamSchedule {
    pub s: usize,
    pub t: usize,
    pub delta: f64,
    pub bins: Vec<Bin>,
    /// Built from the asymptotic formulas rather than explicit thresholds.
    pub paper_mode: bool,
    /// Whether the construction may run with these parameters at all.
    pub feasible: bool,
}

impl ParamSchedule {
    /// Explicit schedule: the given `[lo, hi)` degree intervals, all sharing sample size `k`.
    pub fn explicit(s: usize, t: usize, delta: f64, ranges: &[(f64, f64)], k: usize) -> Result<Self> {
        let bins = ranges.iter().map(|&(lo, hi)| Bin::new(lo, hi, k)).collect();
        Self::with_bins(s, t, delta, bins)
    }

    pub fn with_bins(s: usize, t: usize, delta: f64, bins: Vec<Bin>) -> Result<Self> {
        let sched = Self { s, t, delta, bins, paper_mode: false, feasible: true };
        sched.validate()?;
        Ok(sched)
    }

    /// `ceil(2 / delta)` equal-width bins tiling `[0, n + 1)`, so every possible degree
    /// falls in exactly one bin and the selected bin holds fewer than `delta * n / 2`
    /// vertices.
    pub fn even_bins(s: usize, t: usize, delta: f64, n: usize, k: usize) -> Result<Self> {
        check_delta(delta)?;
        let count = bin_count(delta);
        let width = (n + 1) as f64 / count as f64;
        let bins = (0..count)
            .map(|i| {
                let hi = if i + 1 == count { (n + 1) as f64 } else { (i + 1) as f64 * width };
                Bin::new(i as f64 * width, hi, k)
            })
            .collect();
        Self::with_bins(s, t, delta, bins)
    }

    pub fn validate(&self) -> Result<()> {
        if self.s < 1 || self.s > self.t {
            return Err(Error::InvalidArgument(format!("pattern needs 1 <= s <= t, got s = {}, t = {}", self.s, self.t)));
        }
        check_delta(self.delta)?;
        if self.bins.is_empty() {
            return Err(Error::InvalidArgument("schedule has no bins".into()));
        }
        for (j, bin) in self.bins.iter().enumerate() {
            if bin.ln_theta_lo.is_nan() || bin.ln_theta_hi.is_nan() || bin.ln_theta_lo >= bin.ln_theta_hi {
                return Err(Error::InvalidArgument(format!("bin {} is empty or malformed: [{}, {})", j + 1, bin.theta_lo, bin.theta_hi)));
            }
            if bin.k < self.s {
                return Err(Error::InvalidArgument(format!("bin {} samples k = {} < s = {}", j + 1, bin.k, self.s)));
            }
        }
        for (a, first) in self.bins.iter().enumerate() {
            for (b, second) in self.bins.iter().enumerate().skip(a + 1) {
                if first.ln_theta_lo < second.ln_theta_hi && second.ln_theta_lo < first.ln_theta_hi {
                    return Err(Error::InvalidArgument(format!("bins {} and {} overlap", a + 1, b + 1)));
                }
            }
        }
        Ok(())
    }

    /// Size of the exchange set: `(t - 1) * C(k, s) + 1`, or `None` on overflow.
    pub fn exchange_size(&self, k: usize) -> Option<usize> {
        exchange_size(self.s, self.t, k)
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("delta = {delta} must lie in (0, 1)")))
    }
}

fn bin_count(delta: f64) -> usize {
    (2.0 / delta).ceil() as usize
}

/// `(t - 1) * C(k, s) + 1` with overflow checking.
pub fn exchange_size(s: usize, t: usize, k: usize) -> Option<usize> {
    let tuples = binomial_exact(k as u128, s as u128)?;
    let size = (t as u128 - 1).checked_mul(tuples)?.checked_add(1)?;
    usize::try_from(size).ok()
}

pub(crate) fn binomial_exact(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// The asymptotic schedule: for `j = 1..=ceil(2/delta)`, with `L = ln n` and `b = 10 s`,
/// bin `j` is `[n L^(-b^(2j+1)), n L^(-b^(2j-1)))` and samples `k_j = L^(b^(2j))` anchors.
pub fn paper_schedule(n: usize, s: usize, t: usize, delta: f64) -> Result<ParamSchedule> {
    scaled_schedule(n, s, t, delta, 10.0 * s as f64)
}

/// The asymptotic schedule with the exponent base `10 s` replaced by `base`. Small
/// bases give schedules whose values are representable without log space.
pub fn scaled_schedule(n: usize, s: usize, t: usize, delta: f64, base: f64) -> Result<ParamSchedule> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("the asymptotic schedule needs n >= 3, got {n}")));
    }
    check_delta(delta)?;
    if base.is_nan() || base <= 1.0 {
        return Err(Error::InvalidArgument(format!("exponent base {base} must exceed 1")));
    }
    if s < 1 || s > t {
        return Err(Error::InvalidArgument(format!("pattern needs 1 <= s <= t, got s = {s}, t = {t}")));
    }
    let ln_n = (n as f64).ln();
    let bins = log_bins(ln_n, delta, base);
    // Every sample must fit inside I (so k_j <= n) and every threshold must be a
    // realisable degree in [1, n].
    let feasible = bins.iter().all(|b| b.ln_k <= ln_n && b.ln_theta_lo >= 0.0 && b.ln_theta_hi <= ln_n && b.k >= s);
    Ok(ParamSchedule { s, t, delta, bins, paper_mode: true, feasible })
}

fn log_bins(ln_n: f64, delta: f64, base: f64) -> Vec<Bin> {
    let ln_ln_n = ln_n.ln();
    (1..=bin_count(delta) as i32)
        .map(|j| {
            let ln_lo = ln_n - base.powi(2 * j + 1) * ln_ln_n;
            let ln_hi = ln_n - base.powi(2 * j - 1) * ln_ln_n;
            let ln_k = base.powi(2 * j) * ln_ln_n;
            Bin::from_logs(ln_lo, ln_hi, ln_k)
        })
        .collect()
}

/// Largest residual edge count `e` for which the size accounting certifies `|T| < delta n`:
/// `delta c n^2 / (2 (t - 1) C(k, s) + 2) - c n`. Negative means no `e` works.
pub fn budget(n: f64, c: f64, delta: f64, k: u64, s: u32, t: u32) -> f64 {
    let tuples = binomial_f64(k as f64, s as u64);
    delta * c * n * n / (2.0 * (t as f64 - 1.0) * tuples + 2.0) - c * n
}

/// `C(n, k)` as a float product; accepts non-integer `n`.
pub(crate) fn binomial_f64(n: f64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i as f64) / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn asymptotic_k_in_log_space() {
        // ln n = 2, s = 1, j = 1: ln k_1 = 10^2 ln ln n = 100 ln 2, i.e. k_1 = 2^100.
        let bins = log_bins(2.0, 0.5, 10.0);
        assert!((bins[0].ln_k - 100.0 * 2f64.ln()).abs() < 1e-12);
        assert_eq!(bins[0].k, 2f64.powi(100) as usize);
    }

    #[test]
    fn asymptotic_schedule_matches_direct_exponents() {
        let sched = paper_schedule(1000, 1, 2, 0.5).unwrap();
        assert_eq!(sched.bins.len(), 4);
        let ln_n = 1000f64.ln();
        let l = ln_n.ln();
        for (idx, bin) in sched.bins.iter().enumerate() {
            let j = idx as i32 + 1;
            assert!((bin.ln_k - 10f64.powi(2 * j) * l).abs() <= 1e-9 * bin.ln_k.abs());
            assert!((bin.ln_theta_hi - (ln_n - 10f64.powi(2 * j - 1) * l)).abs() <= 1e-9 * bin.ln_theta_hi.abs());
        }
    }

    #[test]
    fn asymptotic_schedule_is_infeasible_at_desk_scale() {
        let sched = paper_schedule(1_000_000, 1, 1, 0.5).unwrap();
        assert!(!sched.feasible);
        assert!(sched.paper_mode);
        // k_1 = (ln 10^6)^100 ~ 13.8^100.
        assert!((sched.bins[0].ln_k - 100.0 * (1e6f64).ln().ln()).abs() < 1e-9);
        assert!(sched.bins[0].ln_k > (1e6f64).ln());
    }

    #[test]
    fn asymptotic_bins_are_disjoint() {
        for (n, s, delta) in [(100, 1, 0.5), (10_000, 2, 0.3), (50, 3, 0.9)] {
            let sched = paper_schedule(n, s, s, delta).unwrap();
            for w in sched.bins.windows(2) {
                // Bin j+1 sits entirely below bin j.
                assert!(w[1].ln_theta_hi <= w[0].ln_theta_lo);
                assert!(w[0].ln_theta_lo < w[0].ln_theta_hi);
            }
        }
    }

    #[test]
    fn budget_examples() {
        let b = budget(100.0, 0.3, 0.1, 4, 2, 2);
        assert!((b - (300.0 / 14.0 - 30.0)).abs() < 1e-12);
        assert!((b + 8.571428571428571).abs() < 1e-9);
        assert!((budget(100.0, 0.3, 0.1, 4, 1, 1) - 120.0).abs() < 1e-12);
        assert!(budget(100.0, 0.3, 0.2, 4, 2, 2) > b);
    }

    #[test]
    fn exchange_size_values() {
        assert_eq!(exchange_size(2, 2, 2), Some(2));
        assert_eq!(exchange_size(2, 3, 4), Some(13));
        assert_eq!(exchange_size(1, 1, 9), Some(1));
        assert_eq!(exchange_size(3, 3, usize::MAX), None);
    }

    #[test]
    fn validation_rejects_bad_schedules() {
        assert!(ParamSchedule::explicit(2, 1, 0.5, &[(1.0, 2.0)], 2).is_err());
        assert!(ParamSchedule::explicit(1, 1, 1.0, &[(1.0, 2.0)], 2).is_err());
        assert!(ParamSchedule::explicit(1, 1, 0.5, &[(2.0, 2.0)], 2).is_err());
        assert!(ParamSchedule::explicit(1, 1, 0.5, &[(1.0, 3.0), (2.0, 4.0)], 2).is_err());
        assert!(ParamSchedule::explicit(2, 2, 0.5, &[(1.0, 3.0)], 1).is_err());
        assert!(ParamSchedule::explicit(1, 1, 0.5, &[(1.0, 3.0), (3.0, 4.0)], 1).is_ok());
        assert!(ParamSchedule::explicit(1, 1, 0.5, &[], 1).is_err());
    }

    #[test]
    fn even_bins_tile_all_degrees() {
        let sched = ParamSchedule::even_bins(2, 2, 0.3, 17, 2).unwrap();
        assert_eq!(sched.bins.len(), 7);
        for d in 0..=17 {
            assert_eq!(sched.bins.iter().filter(|b| b.contains(d)).count(), 1, "degree {d}");
        }
    }
}
