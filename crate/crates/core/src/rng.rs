//! Deterministic, splittable random-number streams.
//!
//! Every simulated trial draws from its own substream derived from a
//! `(master_seed, stream_index)` pair, so batch output is bit-identical
//! regardless of how trials are scheduled across threads.
//!
//! The generator is SplitMix64 (Vigna): the state advances by a fixed odd
//! increment and each output is a bijective finalizer of the state, which
//! makes it a keyed counter generator. Stream keys are derived by mixing
//! the master seed with a bijective hash of the stream index, so for a
//! fixed master seed no two indices share a key.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer; bijective on u64.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One independent draw stream, single-owner per trial.
#[derive(Debug, Clone)]
pub struct RngStream {
    pub master_seed: u64,
    pub stream_index: u64,
    state: u64,
    spare_normal: Option<f64>,
}

/// Derive the stream for `(master_seed, index)`. Pure in its arguments:
/// the result does not depend on any other stream having been created.
pub fn substream(master_seed: u64, stream_index: u64) -> RngStream {
    // mix64 is bijective, so for a fixed master seed distinct indices
    // always yield distinct starting states.
    let key = mix64(mix64(master_seed).wrapping_add(mix64(stream_index ^ GOLDEN_GAMMA)));
    RngStream {
        master_seed,
        stream_index,
        state: key,
        spare_normal: None,
    }
}

impl RngStream {
    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        const DEN: f64 = (1u64 << 53) as f64;
        ((self.next_u64() >> 11) as f64) / DEN
    }

    /// Uniform in (0, 1]; safe as a log argument.
    #[inline]
    pub fn next_f64_open_low(&mut self) -> f64 {
        1.0 - self.next_f64()
    }

    /// Standard normal via the polar (Marsaglia) method; one draw is cached.
    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.next_f64() - 1.0;
            let v = 2.0 * self.next_f64() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let f = (-2.0 * s.ln() / s).sqrt();
                self.spare_normal = Some(v * f);
                return u * f;
            }
        }
    }

    /// Normal with the given mean and standard deviation.
    #[inline]
    pub fn normal(&mut self, mean: f64, sd: f64) -> f64 {
        mean + sd * self.next_normal()
    }

    /// Exponential with the given mean (mean 0 collapses to 0).
    #[inline]
    pub fn exponential_mean(&mut self, mean: f64) -> f64 {
        if mean == 0.0 {
            return 0.0;
        }
        -mean * self.next_f64_open_low().ln()
    }

    /// Exponential with the given rate (per ms).
    #[inline]
    pub fn exponential_rate(&mut self, rate: f64) -> f64 {
        self.exponential_mean(1.0 / rate)
    }

    #[inline]
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_streams_replay() {
        let mut a = substream(42, 0);
        let mut b = substream(42, 0);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn stream_independent_of_creation_order() {
        let direct: Vec<u64> = {
            let mut s = substream(42, 7);
            (0..32).map(|_| s.next_u64()).collect()
        };
        // Interleave the creation and use of other streams first.
        let mut others: Vec<RngStream> = (0..7).map(|i| substream(42, i)).collect();
        for s in &mut others {
            s.next_u64();
        }
        let mut late = substream(42, 7);
        let replay: Vec<u64> = (0..32).map(|_| late.next_u64()).collect();
        assert_eq!(direct, replay);
    }

    #[test]
    fn distinct_indices_distinct_output() {
        let mut a = substream(42, 0);
        let mut b = substream(42, 1);
        let same = (0..64).filter(|_| a.next_u64() == b.next_u64()).count();
        assert_eq!(same, 0);
    }

    /// Spearman rank correlation between two streams stays near zero.
    #[test]
    fn substreams_pass_rank_correlation_check() {
        fn ranks(xs: &[f64]) -> Vec<f64> {
            let mut idx: Vec<usize> = (0..xs.len()).collect();
            idx.sort_by(|&i, &j| xs[i].partial_cmp(&xs[j]).unwrap());
            let mut r = vec![0.0; xs.len()];
            for (rank, &i) in idx.iter().enumerate() {
                r[i] = rank as f64;
            }
            r
        }
        let n = 10_000;
        let mut a = substream(42, 0);
        let mut b = substream(42, 1);
        let xs: Vec<f64> = (0..n).map(|_| a.next_f64()).collect();
        let ys: Vec<f64> = (0..n).map(|_| b.next_f64()).collect();
        let (rx, ry) = (ranks(&xs), ranks(&ys));
        let mean = (n as f64 - 1.0) / 2.0;
        let mut num = 0.0;
        let mut dx = 0.0;
        let mut dy = 0.0;
        for i in 0..n {
            num += (rx[i] - mean) * (ry[i] - mean);
            dx += (rx[i] - mean).powi(2);
            dy += (ry[i] - mean).powi(2);
        }
        let r = num / (dx.sqrt() * dy.sqrt());
        assert!(r.abs() < 0.05, "rank correlation {r} too large");
    }

    #[test]
    fn uniform_mean_and_range() {
        let mut s = substream(7, 3);
        let n = 100_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let u = s.next_f64();
            assert!((0.0..1.0).contains(&u));
            sum += u;
        }
        assert!((sum / n as f64 - 0.5).abs() < 0.005);
    }

    #[test]
    fn normal_moments() {
        let mut s = substream(11, 0);
        let n = 200_000;
        let (mut m1, mut m2) = (0.0, 0.0);
        for _ in 0..n {
            let z = s.next_normal();
            m1 += z;
            m2 += z * z;
        }
        m1 /= n as f64;
        m2 /= n as f64;
        assert!(m1.abs() < 0.01, "mean {m1}");
        assert!((m2 - 1.0).abs() < 0.02, "second moment {m2}");
    }

    #[test]
    fn exponential_mean_matches() {
        let mut s = substream(13, 0);
        let n = 200_000;
        let mean: f64 = (0..n).map(|_| s.exponential_rate(0.02)).sum::<f64>() / n as f64;
        assert!((mean - 50.0).abs() < 0.5, "mean {mean}");
    }
}
