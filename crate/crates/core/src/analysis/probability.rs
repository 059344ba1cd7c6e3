use crate::error::{Error, Result};

/// `ln C(n, k)`, or `-inf` when `k > n`.
pub fn ln_choose(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

/// Probability that `X = x` when `k` of `population` items are drawn without replacement
/// and `marked` of them are marked.
pub fn hypergeometric_pmf(population: u64, marked: u64, k: u64, x: u64) -> f64 {
    if x > k || x > marked || k - x > population - marked {
        return 0.0;
    }
    (ln_choose(marked, x) + ln_choose(population - marked, k - x) - ln_choose(population, k)).exp()
}

/// Probability that a uniform `k`-subset of an `i_size`-set meets a fixed `d`-subset in at
/// most `s - 1` elements.
///
/// Returns `(exact, binomial_form)`: the hypergeometric tail, and the binomial-form expression
/// `sum_{x < s} C(k, x) (1 - d/i_size)^(k - x) (d/i_size)^x` that treats draws as independent.
pub fn prob_low_intersection(i_size: u64, d: u64, k: u64, s: u64) -> Result<(f64, f64)> {
    if d > i_size || k > i_size {
        return Err(Error::InvalidArgument(format!("need d, k <= |I| (d = {d}, k = {k}, |I| = {i_size})")));
    }
    if s == 0 {
        return Ok((0.0, 0.0));
    }
    let exact = (0..s).map(|x| hypergeometric_pmf(i_size, d, k, x)).sum::<f64>().min(1.0);
    let q = d as f64 / i_size as f64;
    let binomial = (0..s.min(k + 1))
        .map(|x| crate::hitting::binomial_f64(k as f64, x) * (1.0 - q).powi((k - x) as i32) * q.powi(x as i32))
        .sum();
    Ok((exact, binomial))
}

/// `ln(sum exp(terms))`, stable for very large or very small terms.
pub fn logsumexp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max.is_infinite() {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}
