use statrs::distribution::{Beta, ContinuousCDF};

use crate::code::CodeConfig;

/// Frame and bit error tallies of one operating point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SimStats {
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    /// Information bits checked, `frames * K`.
    pub bits: u64,
    pub total_iterations: u64,
}

/// Errors below which the exact interval replaces the normal approximation.
const EXACT_CI_BELOW: u64 = 30;
const Z_95: f64 = 1.959_963_984_540_054;

impl SimStats {
    /// Adds one decoded frame.
    pub fn record(&mut self, bit_errors: u64, info_bits: u64, iterations: usize) {
        self.frames += 1;
        self.frame_errors += u64::from(bit_errors > 0);
        self.bit_errors += bit_errors;
        self.bits += info_bits;
        self.total_iterations += iterations as u64;
    }

    pub fn merge(&mut self, other: &SimStats) {
        self.frames += other.frames;
        self.frame_errors += other.frame_errors;
        self.bit_errors += other.bit_errors;
        self.bits += other.bits;
        self.total_iterations += other.total_iterations;
    }

    pub fn fer(&self) -> f64 {
        ratio(self.frame_errors, self.frames)
    }

    pub fn ber(&self) -> f64 {
        ratio(self.bit_errors, self.bits)
    }

    pub fn avg_iterations(&self) -> f64 {
        ratio(self.total_iterations, self.frames)
    }

    /// Two-sided 95% interval for the frame error rate: normal approximation,
    /// or Clopper–Pearson when fewer than 30 errors were seen.
    pub fn fer_ci95(&self) -> (f64, f64) {
        let (x, n) = (self.frame_errors, self.frames);
        if n == 0 {
            return (0.0, 1.0);
        }
        if x < EXACT_CI_BELOW {
            return clopper_pearson(x, n, 0.05);
        }
        let p = x as f64 / n as f64;
        let half = Z_95 * (p * (1.0 - p) / n as f64).sqrt();
        ((p - half).max(0.0), (p + half).min(1.0))
    }

    /// Average decoded throughput when each iteration costs
    /// `cycles_per_iteration` clock cycles at `freq_hz`.
    pub fn avg_throughput_model(
        &self,
        config: &CodeConfig,
        cycles_per_iteration: usize,
        freq_hz: f64,
    ) -> f64 {
        let bits = (crate::code::Z_MAX * config.n_p_used) as f64;
        bits * freq_hz / (self.avg_iterations() * cycles_per_iteration as f64)
    }
}

fn ratio(a: u64, b: u64) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

/// Exact binomial interval for `x` successes in `n` trials.
pub fn clopper_pearson(x: u64, n: u64, alpha: f64) -> (f64, f64) {
    let lo = if x == 0 {
        0.0
    } else {
        Beta::new(x as f64, (n - x + 1) as f64)
            .expect("positive shape")
            .inverse_cdf(alpha / 2.0)
    };
    let hi = if x == n {
        1.0
    } else {
        Beta::new((x + 1) as f64, (n - x) as f64)
            .expect("positive shape")
            .inverse_cdf(1.0 - alpha / 2.0)
    };
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rates() {
        let mut s = SimStats::default();
        s.record(0, 100, 2);
        s.record(3, 100, 4);
        assert_eq!(s.fer(), 0.5);
        assert_eq!(s.ber(), 0.015);
        assert_eq!(s.avg_iterations(), 3.0);
    }

    #[test]
    fn exact_interval_reference_values() {
        // 0 of 100: upper bound 1 - 0.025^(1/100)
        let (lo, hi) = clopper_pearson(0, 100, 0.05);
        assert_eq!(lo, 0.0);
        assert_abs_diff_eq!(hi, 1.0 - 0.025f64.powf(0.01), epsilon = 1e-9);
        // 5 of 10, symmetric around one half
        let (lo, hi) = clopper_pearson(5, 10, 0.05);
        assert_abs_diff_eq!(lo + hi, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(lo, 0.187_086_028, epsilon = 1e-6);
    }

    #[test]
    fn interval_covers_estimate() {
        for (x, n) in [(0, 10), (3, 50), (29, 1000), (30, 1000), (500, 1000)] {
            let s = SimStats {
                frames: n,
                frame_errors: x,
                ..SimStats::default()
            };
            let (lo, hi) = s.fer_ci95();
            assert!(lo <= s.fer() && s.fer() <= hi, "{x}/{n}");
        }
    }
}
