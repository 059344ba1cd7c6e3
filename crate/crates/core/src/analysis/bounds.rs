use super::probability::logsumexp;
use crate::hitting::Bin;

/// Natural logs of the two upper estimates on the expected residual edge count.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EBound {
    /// `ln(theta_lo (1 - c) n)`: vertices below the bin contribute fewer than `theta_lo` edges each.
    pub ln_a_s: f64,
    /// `ln(c (1 - c) n^2 sum_{x < s} k^x (1 - theta_hi / (c n))^(k - x))`, or NaN when
    /// `theta_hi > c n` makes the base negative.
    pub ln_a_l: f64,
}

impl EBound {
    pub fn ln_total(&self) -> f64 {
        logsumexp(&[self.ln_a_s, self.ln_a_l])
    }

    /// Linear value of the sum; overflows to infinity for asymptotic schedules.
    pub fn total(&self) -> f64 {
        self.ln_total().exp()
    }
}

/// Evaluates both estimates in log space for bin `bin`, with `c = alpha / n`.
///
/// `k` enters through `bin.ln_k`, so astronomically large sample sizes are representable.
pub fn analytic_e_bound(n: f64, c: f64, bin: &Bin, s: usize) -> EBound {
    let ln_n = n.ln();
    let ln_one_minus_c = (-c).ln_1p();
    let ln_a_s = bin.ln_theta_lo + ln_one_minus_c + ln_n;

    // ln(theta_hi / (c n))
    let ln_r = bin.ln_theta_hi - c.ln() - ln_n;
    let ln_a_l = if ln_r > 0.0 {
        f64::NAN
    } else {
        let ln_base = if ln_r == 0.0 { f64::NEG_INFINITY } else { (-ln_r.exp()).ln_1p() };
        let k = bin.ln_k.exp();
        let terms: Vec<f64> = (0..s)
            .map(|x| {
                let x = x as f64;
                let power = k - x;
                // 0^0 = 1 and (1 - r)^0 = 1 must not turn into NaN.
                let tail = if power == 0.0 { 0.0 } else { power * ln_base };
                x * bin.ln_k + tail
            })
            .collect();
        c.ln() + ln_one_minus_c + 2.0 * ln_n + logsumexp(&terms)
    };
    EBound { ln_a_s, ln_a_l }
}
