//! Deterministic angle samples on `(0, π/2)`.
//!
//! A plan draws `n_uniform` angles uniformly from `(0, π/2)` followed by
//! `n_endpoint` angles `exp(-endpoint_scale * t)` with `t` uniform on
//! `(0, 1)`, which crowds the second population against the singular
//! point at `theta = 0`. The generator is SplitMix64, so a seed pins the
//! point set bit for bit on every platform.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePlan {
    pub seed: u64,
    pub n_uniform: usize,
    pub n_endpoint: usize,
    pub endpoint_scale: f64,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            seed: 0,
            n_uniform: 500,
            n_endpoint: 500,
            endpoint_scale: 36.0,
        }
    }
}

/// SplitMix64 (Steele, Lea & Flood).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce5_e9b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform double strictly inside `(0, 1)`.
    pub fn next_open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }
}

fn clamp_below_right_angle(theta: f64) -> f64 {
    if theta >= FRAC_PI_2 {
        FRAC_PI_2.next_down()
    } else {
        theta
    }
}

impl SamplePlan {
    pub fn with_seed(seed: u64) -> Self {
        SamplePlan {
            seed,
            ..SamplePlan::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.endpoint_scale.is_finite() && self.endpoint_scale > 0.0) {
            return Err(Error::Domain("endpoint scale must be positive and finite"));
        }
        if self.n_uniform + self.n_endpoint == 0 {
            return Err(Error::Domain("sample plan is empty"));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n_uniform + self.n_endpoint
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Both populations, uniform ones first.
    pub fn points(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let mut rng = SplitMix64::new(self.seed);
        let mut out = Vec::with_capacity(self.len());
        for _ in 0..self.n_uniform {
            out.push(clamp_below_right_angle(FRAC_PI_2 * rng.next_open01()));
        }
        for _ in 0..self.n_endpoint {
            let t = rng.next_open01();
            out.push(clamp_below_right_angle(libm::exp(-self.endpoint_scale * t)));
        }
        Ok(out)
    }

    /// Only the uniform population (the draws `points()` starts with).
    pub fn uniform_points(&self) -> Result<Vec<f64>> {
        let mut pts = self.points()?;
        pts.truncate(self.n_uniform);
        Ok(pts)
    }
}
