//! Streaming statistics for Monte Carlo runs.

use serde::{Deserialize, Serialize};

/// Single-pass mean/variance accumulator (Welford updates, Chan merging).
#[derive(Clone, Copy, Debug, Default)]
pub struct Accumulator {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    /// Associative merge; order-independent up to floating round-off.
    pub fn merge(self, other: Accumulator) -> Accumulator {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let n1 = self.count as f64;
        let n2 = other.count as f64;
        let n = n1 + n2;
        let d = other.mean - self.mean;
        Accumulator {
            count: self.count + other.count,
            mean: self.mean + d * n2 / n,
            m2: self.m2 + other.m2 + d * d * n1 * n2 / n,
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn into_estimate(self, seed: u64) -> Estimate {
        let variance = self.variance();
        Estimate {
            mean: self.mean,
            variance,
            count: self.count,
            standard_error: if self.count > 0 {
                (variance / self.count as f64).sqrt()
            } else {
                f64::NAN
            },
            seed,
        }
    }
}

/// A Monte Carlo statistic together with the seed that produced it.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub variance: f64,
    pub count: u64,
    pub standard_error: f64,
    pub seed: u64,
}

/// Wilson 95% confidence interval for a binomial proportion.
pub fn wilson_interval(hits: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959963984540054_f64;
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = (z / denom) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_matches_sequential() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
        let mut a = Accumulator::default();
        for &x in &xs {
            a.push(x);
        }
        let mut parts = Vec::new();
        for chunk in xs.chunks(137) {
            let mut c = Accumulator::default();
            for &x in chunk {
                c.push(x);
            }
            parts.push(c);
        }
        let merged = parts.into_iter().fold(Accumulator::default(), Accumulator::merge);
        assert!((a.mean() - merged.mean()).abs() < 1e-12);
        assert!((a.variance() - merged.variance()).abs() < 1e-9);
    }

    #[test]
    fn wilson_sane() {
        let (lo, hi) = wilson_interval(50, 100);
        assert!(lo < 0.5 && 0.5 < hi);
        let (lo, _) = wilson_interval(0, 100);
        assert!(lo.abs() < 1e-12);
    }
}
