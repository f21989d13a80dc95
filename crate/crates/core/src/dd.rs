//! Double-double arithmetic and phase reduction.
//!
//! Large phases such as `(nu + 1) * theta` are formed exactly as an unevaluated
//! sum of two doubles and reduced modulo 2π against a double-double π, so
//! the only rounding left in `exp(i * phase)` is that of a single sine/cosine
//! of an argument in `[-π, π]`.

use num_complex::Complex64;

/// An unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

/// 2π as a double-double.
pub const TWO_PI: DoubleDouble = DoubleDouble {
    hi: core::f64::consts::TAU,
    lo: 2.4492935982947064e-16,
};

/// π/2 as a double-double.
pub const HALF_PI: DoubleDouble = DoubleDouble {
    hi: core::f64::consts::FRAC_PI_2,
    lo: 6.123233995736766e-17,
};

#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, libm::fma(a, b, -p))
}

// Named methods rather than operator traits keep the (few) call sites
// explicit about which arithmetic is extended.
#[allow(clippy::should_implement_trait)]
impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    /// Exact sum of two doubles.
    pub fn sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        DoubleDouble { hi, lo }
    }

    /// Exact product of two doubles.
    pub fn product(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        DoubleDouble { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, other: Self) -> Self {
        let (s, e) = two_sum(self.hi, other.hi);
        let (t, f) = two_sum(self.lo, other.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }

    pub fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn sub(self, other: Self) -> Self {
        self.add(other.neg())
    }

    pub fn mul(self, other: Self) -> Self {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + (self.hi * other.lo + self.lo * other.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }

    pub fn mul_f64(self, x: f64) -> Self {
        let (p, e) = two_prod(self.hi, x);
        let e = e + self.lo * x;
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }

    pub fn div(self, other: Self) -> Self {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo }.add(DoubleDouble::from_f64(q3))
    }

    /// Reduces the angle modulo 2π into `[-π, π]`.
    pub fn reduce_angle(self) -> Self {
        let k = libm::round(self.hi / TWO_PI.hi);
        if k == 0.0 {
            return self;
        }
        // k is an exact integer; k * 2π is formed to double-double accuracy.
        let (p, e) = two_prod(k, TWO_PI.hi);
        let multiple = DoubleDouble::sum(p, e + k * TWO_PI.lo);
        self.sub(multiple)
    }

    /// `cos` and `sin` of the angle, after reduction.
    pub fn cos_sin(self) -> (f64, f64) {
        let r = self.reduce_angle();
        let (s, c) = libm::sincos(r.hi);
        // First-order correction for the low word; |lo| is below one ulp of
        // hi so the second-order term is negligible.
        (c - s * r.lo, s + c * r.lo)
    }

    /// `exp(i * self)`.
    pub fn cis(self) -> Complex64 {
        let (c, s) = self.cos_sin();
        Complex64::new(c, s)
    }
}

/// `exp(i * (a + b) * theta)` with the phase formed exactly.
///
/// `a + b` is kept unrounded so that a degree shift like `nu + 1` does not
/// perturb the phase for non-integer `nu`.
pub fn cis_shifted_product(a: f64, b: f64, theta: f64) -> Complex64 {
    DoubleDouble::sum(a, b)
        .mul(DoubleDouble::from_f64(theta))
        .cis()
}
