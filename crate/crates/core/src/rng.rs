//! Counter-based random numbers with explicit stream splitting.
//!
//! [`CounterRng`] produces the `i`-th output as `mix(key + (i + 1)·γ)`, where
//! `mix` is the SplitMix64 finalizer and `γ` the golden-ratio increment. The
//! output therefore depends only on `(key, i)`, never on what other streams
//! did, which makes seeded experiments independent of execution order.
//! Child streams are keyed with [`derive_seed`].

use crate::math;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 output function.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Hashes a master seed and a path of tags into a child seed.
///
/// `derive_seed(m, &[a, b])` differs from `derive_seed(m, &[b, a])` and from
/// `derive_seed(m, &[a])`.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(mix64(master ^ 0x6a09_e667_f3bc_c909), |h, &tag| {
        mix64(h.wrapping_add(GOLDEN_GAMMA) ^ mix64(tag.wrapping_add(0x3c6e_f372_fe94_f82b)))
    })
}

/// Hashes a string tag (e.g. an algorithm id) for use in [`derive_seed`] paths.
pub fn tag(name: &str) -> u64 {
    // FNV-1a, then mixed.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    mix64(h)
}

#[derive(Debug, Clone)]
pub struct CounterRng {
    key: u64,
    counter: u64,
    spare_normal: Option<f64>,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        Self { key: seed, counter: 0, spare_normal: None }
    }

    /// Child stream keyed by `derive_seed(seed, path)`.
    pub fn derived(seed: u64, path: &[u64]) -> Self {
        Self::new(derive_seed(seed, path))
    }

    /// Number of 64-bit words consumed so far.
    pub fn position(&self) -> u64 {
        self.counter
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.key.wrapping_add(self.counter.wrapping_mul(GOLDEN_GAMMA)))
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `(0, 1]`.
    #[inline]
    fn next_f64_open0(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, n)` (Lemire's multiply-and-reject).
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        let threshold = n.wrapping_neg() % n;
        loop {
            let m = u128::from(self.next_u64()) * u128::from(n);
            if (m as u64) >= threshold {
                return (m >> 64) as u64;
            }
        }
    }

    /// Standard normal draw via the Box–Muller transform; the second value of
    /// each pair is cached.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = self.next_f64_open0();
        let u2 = self.next_f64();
        let radius = math::sqrt(-2.0 * math::ln(u1));
        let angle = 2.0 * core::f64::consts::PI * u2;
        self.spare_normal = Some(radius * libm::sin(angle));
        radius * math::cos(angle)
    }

    /// `±1` with equal probability.
    pub fn sign(&mut self) -> f64 {
        if self.next_u64() >> 63 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// First `k` entries of a uniformly random permutation of `0..n`, in draw order.
    pub fn sample_without_replacement(&mut self, n: usize, k: usize) -> alloc::vec::Vec<usize> {
        assert!(k <= n, "cannot draw {k} of {n}");
        let mut pool: alloc::vec::Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        pool.truncate(k);
        pool
    }
}
