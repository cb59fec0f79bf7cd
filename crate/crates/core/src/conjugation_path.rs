//! The conjugation path `α(u) = h_u⁻¹∘f∘h_u` with `h_u(t) = t + u t^m`,
//! its derivative at `u = 0`, and the rescaling `f_λ(t) = λ⁻¹ f(λt)`.
//!
//! Only the `t^m` coefficient of `α(u)` can move at first order, and it is
//! affine in `u`: the `u²` terms of `h_u⁻¹` start at `t^{2m-1}`. Expanding,
//! `[α(u)]_m = c_m - (1 + (-1)^m) u`, so the slope is `-2` for even `m` and
//! `0` for odd `m`, where `h_u` commutes with `-t` to that order.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::involution::Involution;
use crate::series::{Dual, Scalar, Series, Series1};

fn path_generic<C: Scalar>(f: &Series<C>, m: usize, u: C) -> Result<Series<C>> {
    let n = f.order();
    let mut h = Series::identity(n);
    if m <= n {
        h.set(m, u);
    }
    let h_inv = h.comp_inverse()?;
    h_inv.compose(&f.compose(&h)?)
}

fn check_order(f: &Involution, m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "perturbation order must be at least 2, got {m}"
        )));
    }
    if f.verified_order() < m {
        return Err(Error::InvalidArgument(format!(
            "involution verified only to order {}, need {m}",
            f.verified_order()
        )));
    }
    Ok(())
}

/// `h_u⁻¹∘f∘h_u` truncated to the order of `f`.
pub fn gt_path(f: &Involution, m: usize, u: Complex64) -> Result<Series1> {
    check_order(f, m)?;
    path_generic(f.series(), m, u)
}

/// `α'(0)`, by carrying `u` as a dual number.
pub fn gt_path_derivative(f: &Involution, m: usize) -> Result<Series1> {
    check_order(f, m)?;
    let lifted = f.series().map(Dual::constant);
    let unit = Dual::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    Ok(path_generic(&lifted, m, unit)?.map(|d| d.du))
}

/// Summary of the path at order `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct PathReport {
    pub m: usize,
    pub coefficients: Vec<Complex64>,
    /// `[α(u)]_m = intercept + slope·u`.
    pub intercept: Complex64,
    pub slope: Complex64,
    /// Largest `j` such that the `j`-jet of `α'(0)` vanishes within the
    /// tolerance, or the full order if it vanishes entirely.
    pub jet_zero_through: usize,
    pub alpha_prime: Series1,
}

impl PathReport {
    pub fn coefficient_m(&self, u: Complex64) -> Complex64 {
        self.intercept + self.slope * u
    }
}

pub fn path_report(f: &Involution, m: usize, tol: f64) -> Result<PathReport> {
    let alpha_prime = gt_path_derivative(f, m)?;
    let n = alpha_prime.order();
    let jet_zero_through = (0..=n)
        .find(|&j| alpha_prime[j].norm() > tol)
        .map_or(n, |j| j.saturating_sub(1));
    let slope = if m <= n {
        alpha_prime[m]
    } else {
        Complex64::new(0.0, 0.0)
    };
    Ok(PathReport {
        m,
        coefficients: f.series().coeffs().to_vec(),
        intercept: f.series().get(m).unwrap_or_default(),
        slope,
        jet_zero_through,
        alpha_prime,
    })
}

/// `d₁(f_λ, f)` for each `λ`.
pub fn rescale_toward_radius(f: &Series1, lambdas: &[f64]) -> Result<Vec<(f64, f64)>> {
    lambdas
        .iter()
        .map(|&lambda| {
            if !(lambda > 0.0 && lambda < 1.0) {
                return Err(Error::InvalidArgument(format!(
                    "rescaling factor must lie in (0, 1), got {lambda}"
                )));
            }
            let scaled = f.rescale(Complex64::new(lambda, 0.0))?;
            Ok((lambda, (&scaled - f).norm_l1()))
        })
        .collect()
}
