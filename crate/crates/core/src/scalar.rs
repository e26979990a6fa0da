use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// Real or complex scalar used by the series and quadrature engines.
pub trait Scalar:
    Copy
    + Debug
    + Send
    + Sync
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
    + AddAssign
{
    fn from_real(x: f64) -> Self;
    fn modulus(self) -> f64;
    /// Principal-branch power.
    fn pow_real(self, e: f64) -> Self;
    fn to_complex(self) -> Complex64;
    fn is_finite_value(self) -> bool;
}

impl Scalar for f64 {
    fn from_real(x: f64) -> Self {
        x
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn pow_real(self, e: f64) -> Self {
        self.powf(e)
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

impl Scalar for Complex64 {
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn pow_real(self, e: f64) -> Self {
        if self.im == 0.0 && self.re >= 0.0 {
            Complex64::new(self.re.powf(e), 0.0)
        } else {
            self.powf(e)
        }
    }
    fn to_complex(self) -> Complex64 {
        self
    }
    fn is_finite_value(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}
