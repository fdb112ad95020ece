//! Small sample summaries shared by estimation, gof and the sweep harness.

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
pub fn sd(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

/// Column means of a row-major sample.
pub fn column_means(rows: &[Vec<f64>]) -> Vec<f64> {
    let p = rows.first().map_or(0, Vec::len);
    let n = rows.len() as f64;
    (0..p).map(|k| rows.iter().map(|r| r[k]).sum::<f64>() / n).collect()
}

/// Sample covariance matrix (n - 1 denominator) of a row-major sample.
pub fn covariance(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let p = rows.first().map_or(0, Vec::len);
    let means = column_means(rows);
    let denom = (rows.len().max(2) - 1) as f64;
    let mut cov = vec![vec![0.0; p]; p];
    for r in rows {
        for i in 0..p {
            let di = r[i] - means[i];
            for j in i..p {
                cov[i][j] += di * (r[j] - means[j]);
            }
        }
    }
    for i in 0..p {
        for j in i..p {
            cov[i][j] /= denom;
            cov[j][i] = cov[i][j];
        }
    }
    cov
}

/// Quantile with linear interpolation between order statistics
/// (the usual "type 7" definition). `sorted` must be ascending.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    match sorted.len() {
        0 => f64::NAN,
        1 => sorted[0],
        n => {
            let h = (n - 1) as f64 * q.clamp(0.0, 1.0);
            let lo = h.floor() as usize;
            let hi = (lo + 1).min(n - 1);
            sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
        }
    }
}

/// `(mean - observed) / sd`, with the zero-variance conventions used by the
/// reports: 0 when the sample sits exactly on the observation, otherwise
/// an infinity carrying the sign of the difference.
pub fn t_ratio(mean: f64, sd: f64, observed: f64) -> f64 {
    let diff = mean - observed;
    if sd > 0.0 {
        diff / sd
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY.copysign(diff)
    }
}
