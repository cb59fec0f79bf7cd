use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::Scalar;

/// `re + du·ε` with `ε² = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Dual {
    pub re: Complex64,
    pub du: Complex64,
}

impl Dual {
    pub fn new(re: Complex64, du: Complex64) -> Self {
        Dual { re, du }
    }

    pub fn constant(re: Complex64) -> Self {
        Dual {
            re,
            du: Complex64::new(0.0, 0.0),
        }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, rhs: Dual) -> Dual {
        Dual::new(self.re + rhs.re, self.du + rhs.du)
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, rhs: Dual) -> Dual {
        Dual::new(self.re - rhs.re, self.du - rhs.du)
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, rhs: Dual) -> Dual {
        Dual::new(self.re * rhs.re, self.re * rhs.du + self.du * rhs.re)
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, rhs: Dual) -> Dual {
        let inv = rhs.re.inv();
        Dual::new(
            self.re * inv,
            (self.du * rhs.re - self.re * rhs.du) * inv * inv,
        )
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.re, -self.du)
    }
}

impl Zero for Dual {
    fn zero() -> Self {
        Dual::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.du.is_zero()
    }
}

impl One for Dual {
    fn one() -> Self {
        Dual::constant(Complex64::new(1.0, 0.0))
    }
}

impl Scalar for Dual {
    fn from_complex(c: Complex64) -> Self {
        Dual::constant(c)
    }

    fn primal_norm(&self) -> f64 {
        self.re.norm()
    }
}
