use rayon::prelude::*;

use super::bounds::analytic_e_bound;
use super::probability::prob_low_intersection;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::hitting::{bin_and_select, budget, build_common_neighborhood, sample_anchors_with, ParamSchedule};
use crate::rng::stream;

#[derive(Clone, Debug, PartialEq)]
pub struct EStatistics {
    pub mean: f64,
    pub std_error: f64,
    /// Per-trial values of `e`, in trial order.
    pub samples: Vec<usize>,
}

/// Draws the anchors `trials` times (trial `i` uses stream `i` of `seed`) and records
/// `e = |E(I, V \ (I ∪ K ∪ S_j))|` for each draw.
pub fn monte_carlo_e(g: &Graph, independent: &VertexSet, sched: &ParamSchedule, trials: u64, seed: u64) -> Result<EStatistics> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    sched.validate()?;
    let (j, bin_members) = bin_and_select(g, independent, sched);
    let k = sched.bins[j - 1].k;
    let outside = independent.union(&bin_members).complement();
    let samples = (0..trials)
        .into_par_iter()
        .map(|i| {
            let anchors = sample_anchors_with(independent, k, &mut stream(seed, i))?;
            let common = build_common_neighborhood(g, &anchors, sched.s, sched.t)?;
            Ok(g.edges_between(independent, &outside.difference(&common)))
        })
        .collect::<Result<Vec<usize>>>()?;
    let count = samples.len() as f64;
    let mean = samples.iter().sum::<usize>() as f64 / count;
    let variance = if samples.len() > 1 {
        samples.iter().map(|&e| (e as f64 - mean).powi(2)).sum::<f64>() / (count - 1.0)
    } else {
        0.0
    };
    Ok(EStatistics { mean, std_error: (variance / count).sqrt(), samples })
}

/// Exact `E[e]`: a vertex outside `I ∪ S_j` survives into the residual set exactly when the
/// anchors meet its neighbourhood in `I` in fewer than `s` vertices.
pub fn exact_expected_e(g: &Graph, independent: &VertexSet, sched: &ParamSchedule) -> Result<f64> {
    sched.validate()?;
    let (j, bin_members) = bin_and_select(g, independent, sched);
    let k = sched.bins[j - 1].k;
    let size = independent.len() as u64;
    let mut total = 0.0;
    for v in independent.union(&bin_members).complement().iter() {
        let d = g.degree_into(v, independent) as u64;
        let (p, _) = prob_low_intersection(size, d, k as u64, sched.s as u64)?;
        total += d as f64 * p;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq)]
pub enum AuditOutcome {
    Checked {
        exact_mean: f64,
        empirical: EStatistics,
        /// `a_s + a_l`.
        bound: f64,
        budget: f64,
        /// Exact mean within the bound and empirical mean within the bound plus three standard errors.
        holds: bool,
    },
    Skipped {
        reason: String,
    },
}

/// Compares the observed residual edge count with the analytic estimate for the selected
/// bin. Only meaningful where the displayed chain applies: every vertex outside `I ∪ S_j`
/// has at least `theta_hi` neighbours in `I`, `theta_hi <= c n`, and the budget is positive.
pub fn expectation_audit(g: &Graph, independent: &VertexSet, sched: &ParamSchedule, trials: u64, seed: u64) -> Result<AuditOutcome> {
    sched.validate()?;
    let n = g.n();
    let alpha = independent.len();
    let c = alpha as f64 / n as f64;
    let (j, bin_members) = bin_and_select(g, independent, sched);
    let bin = &sched.bins[j - 1];
    let skip = |reason: String| Ok(AuditOutcome::Skipped { reason });

    let below = independent
        .union(&bin_members)
        .complement()
        .iter()
        .find(|&v| (g.degree_into(v, independent) as f64) < bin.theta_hi);
    if let Some(v) = below {
        return skip(format!("vertex {v} has fewer than theta_hi = {} neighbours in I", bin.theta_hi));
    }
    let budget = budget(n as f64, c, sched.delta, bin.k as u64, sched.s as u32, sched.t as u32);
    if budget.is_nan() || budget <= 0.0 {
        return skip(format!("budget {budget} is not positive"));
    }
    let estimate = analytic_e_bound(n as f64, c, bin, sched.s);
    if estimate.ln_a_l.is_nan() {
        return skip(format!("theta_hi = {} exceeds c n = {alpha}", bin.theta_hi));
    }
    let bound = estimate.total();
    let exact_mean = exact_expected_e(g, independent, sched)?;
    let empirical = monte_carlo_e(g, independent, sched, trials, seed)?;
    let holds = exact_mean <= bound && empirical.mean <= bound + 3.0 * empirical.std_error;
    Ok(AuditOutcome::Checked { exact_mean, empirical, bound, budget, holds })
}
