/// Sample mean and standard error of the mean (sample sd / sqrt(k)).
/// A single observation has standard error 0.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let k = xs.len();
    if k == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / k as f64;
    if k == 1 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (k - 1) as f64;
    (mean, (var / k as f64).sqrt())
}

/// Asymptotic maximum independent set density `2 ln d / d` of random
/// d-regular graphs, used as the large-n benchmark.
pub fn is_benchmark_density(d: f64) -> f64 {
    2.0 * d.ln() / d
}
