//! Truncated power series in one and two variables.
//!
//! A [`Series`] of order `N` stores the coefficients `c_0..=c_N` of
//! `Σ c_j t^j`; every identity it takes part in holds modulo `t^{N+1}`.
//! Binary operations truncate to the smaller order of their operands and
//! never promote.
//!
//! [`Series`] is generic over the coefficient ring so the same composition
//! and reversion code runs on plain complex numbers ([`Series1`]) and on
//! first-order dual numbers ([`DualSeries`]) when derivatives in a parameter
//! are needed.

mod bivariate;
mod dual;

pub use bivariate::{CurveDivision, Series2};
pub use dual::Dual;

use std::fmt::Debug;
use std::ops::{Add, Div, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Constant terms of an inner series with modulus at most this are treated
/// as exact zeros by [`Series::compose`].
pub const ORIGIN_TOLERANCE: f64 = 1e-10;

/// Coefficient ring of a truncated series.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_complex(c: Complex64) -> Self;

    /// Modulus of the part that decides invertibility.
    fn primal_norm(&self) -> f64;
}

impl Scalar for Complex64 {
    fn from_complex(c: Complex64) -> Self {
        c
    }

    fn primal_norm(&self) -> f64 {
        self.norm()
    }
}

/// Truncated univariate power series.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C: Scalar = Complex64> {
    coeffs: Vec<C>,
}

/// Complex series, the workhorse type.
pub type Series1 = Series<Complex64>;

/// Series whose coefficients carry a first-order parameter derivative.
pub type DualSeries = Series<Dual>;

impl<C: Scalar> Series<C> {
    /// Builds a series of order `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The identity series `t`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(C::one(), 1, order)
    }

    /// `c t^power`, or zero when `power > order`.
    pub fn monomial(c: C, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `t^j`, `None` past the truncation order.
    pub fn get(&self, j: usize) -> Option<C> {
        self.coeffs.get(j).copied()
    }

    pub fn set(&mut self, j: usize, c: C) {
        self.coeffs[j] = c;
    }

    /// Lowers the order; a no-op when `order >= self.order()`.
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Series {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    /// Extends the order with zero coefficients. Only meaningful when the
    /// series is known to be a polynomial of degree at most its order.
    pub fn zero_extend(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        if order > self.order() {
            coeffs.resize(order + 1, C::zero());
        }
        Series { coeffs }
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(C) -> D) -> Series<D> {
        Series {
            coeffs: self.coeffs.iter().map(|&c| f(c)).collect(),
        }
    }

    pub fn scale(&self, k: C) -> Self {
        self.map(|c| c * k)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C, C) -> C) -> Self {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n)
                .map(|j| f(self.coeffs[j], other.coeffs[j]))
                .collect(),
        }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul_series(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![C::zero(); n + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a == C::zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::constant(C::one(), self.order());
        for _ in 0..k {
            acc = acc.mul_series(self);
        }
        acc
    }

    /// Formal derivative; the order drops by one (an order-0 series
    /// differentiates to the order-0 zero series).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Series {
            coeffs: (1..=self.order())
                .map(|j| self.coeffs[j] * C::from_complex(Complex64::new(j as f64, 0.0)))
                .collect(),
        }
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0.primal_norm() == 0.0 {
            return Err(Error::NotInvertible(
                "constant term vanishes, no multiplicative inverse".into(),
            ));
        }
        let inv0 = C::one() / c0;
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        out[0] = inv0;
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j] * out[k - j];
            }
            out[k] = -acc * inv0;
        }
        Ok(Series { coeffs: out })
    }

    fn check_inner(g: &Self) -> Result<()> {
        let c = g.coeffs[0].primal_norm();
        if c > ORIGIN_TOLERANCE {
            return Err(Error::CompositionUndefined { constant: c });
        }
        Ok(())
    }

    /// `self ∘ g` modulo `t^{N+1}`, `N` the smaller order. Requires `g(0) = 0`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        Self::check_inner(g)?;
        let n = self.order().min(g.order());
        let mut inner = g.truncate(n);
        inner.coeffs[0] = C::zero();
        // Horner: c_n, then acc*g + c_j
        let mut acc = Self::constant(self.coeffs[n], n);
        for j in (0..n).rev() {
            acc = acc.mul_series(&inner);
            acc.coeffs[0] = acc.coeffs[0] + self.coeffs[j];
        }
        Ok(acc)
    }

    fn check_invertible(&self) -> Result<C> {
        if self.order() == 0 {
            return Err(Error::NotInvertible("order-0 series".into()));
        }
        let c0 = self.coeffs[0].primal_norm();
        if c0 > ORIGIN_TOLERANCE {
            return Err(Error::NotInvertible(format!("f(0) = {c0:e} is not zero")));
        }
        let c1 = self.coeffs[1];
        if c1.primal_norm() <= ORIGIN_TOLERANCE {
            return Err(Error::NotInvertible("f'(0) vanishes".into()));
        }
        Ok(c1)
    }

    /// Compositional inverse by Newton iteration, doubling the number of
    /// correct coefficients per step.
    pub fn comp_inverse(&self) -> Result<Self> {
        let c1 = self.check_invertible()?;
        let n = self.order();
        let mut f = self.clone();
        f.coeffs[0] = C::zero();
        let fprime = f.derivative();
        let id = Self::identity(n);
        let mut g = Self::monomial(C::one() / c1, 1, n);
        let mut correct = 2;
        while correct <= n {
            let residual = &f.compose(&g)? - &id;
            let slope = fprime.compose(&g.truncate(n - 1))?.zero_extend(n);
            g = &g - &residual.mul_series(&slope.reciprocal()?);
            correct *= 2;
        }
        Ok(g)
    }

    /// Compositional inverse solved one coefficient at a time. Slower than
    /// [`Series::comp_inverse`]; kept as an independent cross-check.
    pub fn comp_inverse_direct(&self) -> Result<Self> {
        let c1 = self.check_invertible()?;
        let n = self.order();
        let mut f = self.clone();
        f.coeffs[0] = C::zero();
        let mut g = Self::monomial(C::one() / c1, 1, n);
        for k in 2..=n {
            let e = f.compose(&g)?.coeffs[k];
            // f(g + a t^k) gains c1 a at t^k
            g.coeffs[k] = -e / c1;
        }
        Ok(g)
    }
}

impl Series1 {
    /// Builds a series from real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Series::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// `Σ |c_j| / j!`.
    pub fn norm_d(&self) -> f64 {
        let mut fact = 1.0;
        let mut sum = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                fact *= j as f64;
            }
            sum += c.norm() / fact;
        }
        sum
    }

    /// `Σ |c_j|`.
    pub fn norm_l1(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficientwise distance over the common orders.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self - other).max_abs()
    }

    /// `f_λ(t) = λ^{-1} f(λ t)`, i.e. `c_j ↦ λ^{j-1} c_j`.
    pub fn rescale(&self, lambda: Complex64) -> Result<Self> {
        if lambda == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroScale);
        }
        let mut power = lambda.inv();
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                let out = c * power;
                power *= lambda;
                out
            })
            .collect();
        Ok(Series { coeffs })
    }

    /// Value of the truncated polynomial at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Taylor shift `t ↦ t + a`, treating the series as a polynomial.
    pub fn shift_polynomial(&self, a: Complex64) -> Self {
        let n = self.order();
        let mut c = self.coeffs.clone();
        for i in 0..n {
            for j in (i..n).rev() {
                let next = c[j + 1];
                c[j] += a * next;
            }
        }
        Series { coeffs: c }
    }
}

impl<C: Scalar> Index<usize> for Series<C> {
    type Output = C;
    fn index(&self, j: usize) -> &C {
        &self.coeffs[j]
    }
}

impl<C: Scalar> Add for &Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: Self) -> Series<C> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<C: Scalar> Sub for &Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: Self) -> Series<C> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<C: Scalar> Mul for &Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: Self) -> Series<C> {
        self.mul_series(rhs)
    }
}

impl<C: Scalar> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        self.map(|c| -c)
    }
}

impl<C: Scalar> Add for Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: Self) -> Series<C> {
        &self + &rhs
    }
}

impl<C: Scalar> Sub for Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: Self) -> Series<C> {
        &self - &rhs
    }
}

impl<C: Scalar> Mul for Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: Self) -> Series<C> {
        &self * &rhs
    }
}

impl<C: Scalar> Neg for Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        -&self
    }
}
