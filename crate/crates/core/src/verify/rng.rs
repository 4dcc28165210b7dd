use num_complex::Complex64;

/// SplitMix64 (Steele, Lea and Flood), the generator behind every seeded grid.
///
/// state ← state + 0x9E3779B97F4A7C15, then the output mix
/// z ← (z ⊕ z≫30)·0xBF58476D1CE4E5B9, z ← (z ⊕ z≫27)·0x94D049BB133111EB, z ⊕ z≫31.
/// Floats take the top 53 bits: (x ≫ 11)·2⁻⁵³ ∈ [0, 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in 0..=max.
    pub fn below_incl(&mut self, max: u32) -> u32 {
        (self.next_u64() % (max as u64 + 1)) as u32
    }

    /// Area-uniform point in the annulus r_lo ≤ |z| ≤ r_hi: the radius is
    /// drawn first as √(r_lo² + (r_hi² − r_lo²)U), then the angle as 2πU'.
    pub fn annulus_point(&mut self, r_lo: f64, r_hi: f64) -> Complex64 {
        let r = (r_lo * r_lo + (r_hi * r_hi - r_lo * r_lo) * self.next_f64()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * self.next_f64();
        Complex64::from_polar(r, theta)
    }

    /// Area-uniform point in |z| ≤ r_max.
    pub fn disk_point(&mut self, r_max: f64) -> Complex64 {
        self.annulus_point(0.0, r_max)
    }
}
