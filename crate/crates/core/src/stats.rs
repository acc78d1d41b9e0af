// SPDX-License-Identifier: Apache-2.0
//! Order-fixed summaries. Inputs are always reduced sequentially in node order
//! with Neumaier compensation, so results do not depend on the thread count
//! used to produce the per-node values.

/// Compensated sum in iteration order.
pub fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Mean and population standard deviation; `None` for an empty slice.
pub fn mean_std(values: &[f64]) -> Option<(f64, f64)> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = neumaier_sum(values.iter().copied()) / n;
    let var = neumaier_sum(values.iter().map(|x| (x - mean) * (x - mean))) / n;
    Some((mean, var.sqrt()))
}

/// Pearson correlation; `None` when shorter than 3 or either series is constant.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 3 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = neumaier_sum(xs.iter().copied()) / n;
    let my = neumaier_sum(ys.iter().copied()) / n;
    let sxy = neumaier_sum(xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)));
    let sxx = neumaier_sum(xs.iter().map(|x| (x - mx) * (x - mx)));
    let syy = neumaier_sum(ys.iter().map(|y| (y - my) * (y - my)));
    if sxx <= 0.0 || syy <= 0.0 {
        return None;
    }
    // sqrt(fl(a * a)) == a, so a series correlated with itself gives exactly 1
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}
