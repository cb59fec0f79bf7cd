//! Germs of foliations `p dx + q dy = 0` at the origin of `ℂ²` and their
//! behaviour after one blow-up.
//!
//! Coefficient tables of a [`OneForm`] are read as exact polynomials: entries
//! outside the table are zero. This is what makes the blow-up substitution
//! `y = t x` exact.

mod integral;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::involution::{involution_from_level, Involution};
use crate::poly::Poly;
use crate::series::{Series1, Series2};

pub use integral::{first_integral, wedge_residual};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Coordinates a 1-form is written in: `(x, y)` before the blow-up,
/// `(x, t)` with `y = t x` after.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Frame {
    #[serde(rename = "xy")]
    Xy,
    #[serde(rename = "xt")]
    Xt,
}

impl Frame {
    pub fn as_str(self) -> &'static str {
        match self {
            Frame::Xy => "xy",
            Frame::Xt => "xt",
        }
    }
}

/// `p dx + q dy` (frame `xy`) or `p dx + q dt` (frame `xt`).
#[derive(Clone, Debug, PartialEq)]
pub struct OneForm {
    frame: Frame,
    p: Series2,
    q: Series2,
}

impl OneForm {
    /// Pads both tables to common orders. Fails when both vanish.
    pub fn new(frame: Frame, p: Series2, q: Series2) -> Result<Self> {
        if p.is_zero(0.0) && q.is_zero(0.0) {
            return Err(Error::InvalidArgument(
                "both coefficients of the 1-form vanish".into(),
            ));
        }
        let ox = p.order_x().max(q.order_x());
        let ot = p.order_t().max(q.order_t());
        Ok(OneForm {
            frame,
            p: p.zero_extend(ox, ot),
            q: q.zero_extend(ox, ot),
        })
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    /// Coefficient of `dx`.
    pub fn p(&self) -> &Series2 {
        &self.p
    }

    /// Coefficient of `dy` or `dt`.
    pub fn q(&self) -> &Series2 {
        &self.q
    }

    fn expect(&self, frame: Frame) -> Result<()> {
        if self.frame != frame {
            return Err(Error::FrameMismatch {
                expected: frame.as_str(),
                found: self.frame.as_str(),
            });
        }
        Ok(())
    }

    /// Multiplies both coefficients by `u`, which is read as a polynomial.
    pub fn multiply(&self, u: &Series2) -> OneForm {
        OneForm {
            frame: self.frame,
            p: self.p.mul_polynomial(u),
            q: self.q.mul_polynomial(u),
        }
    }
}

/// Point of tangency between the foliation and the divisor `x = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TangencyDatum {
    pub t0: Complex64,
    pub order: usize,
}

/// Substitutes `y = t x`, `dy = t dx + x dt` and divides by the largest
/// common power `x^k`.
pub fn blow_up(form: &OneForm) -> Result<(OneForm, usize)> {
    form.expect(Frame::Xy)?;
    let p = form.p.blow_up_substitute_full();
    let q = form.q.blow_up_substitute_full();
    let (ox, ot) = (p.order_x() + 1, p.order_t() + 1);
    let mut a = p.zero_extend(ox, ot);
    let mut b = Series2::zeros(ox, ot);
    for i in 0..=q.order_x() {
        for j in 0..=q.order_t() {
            let c = q.get(i, j);
            a.set(i, j + 1, a.get(i, j + 1) + c);
            b.set(i + 1, j, c);
        }
    }
    let tol = crate::series::ORIGIN_TOLERANCE * a.max_abs().max(b.max_abs()).max(1.0);
    let k = match (a.x_valuation(tol), b.x_valuation(tol)) {
        (Some(i), Some(j)) => i.min(j),
        (Some(i), None) | (None, Some(i)) => i,
        (None, None) => {
            return Err(Error::InvalidArgument(
                "blown-up form vanishes identically".into(),
            ))
        }
    };
    let a = a.divide_by_x_power(k, tol)?;
    let b = b.divide_by_x_power(k, tol)?;
    Ok((OneForm::new(Frame::Xt, a, b)?, k))
}

/// First jet condition of the T₁ test that failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum T1Failure {
    /// The 2-jet of the `dy` coefficient is not `-xy`.
    QuadraticA,
    /// The 2-jet of the `dx` coefficient is not `y²`.
    QuadraticB,
    /// `x b₃ - y a₃` has a term other than `x⁴`.
    Cubic,
    /// `x b₃ - y a₃ = 0`.
    BetaZero,
}

impl fmt::Display for T1Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            T1Failure::QuadraticA => "a2 != xy",
            T1Failure::QuadraticB => "b2 != y^2",
            T1Failure::Cubic => "x b3 - y a3 is not a multiple of x^4",
            T1Failure::BetaZero => "beta = 0",
        })
    }
}

/// Homogeneous part of degree `d` of a table, as `c[i]` = coefficient of
/// `x^{d-i} y^i`.
fn homogeneous(s: &Series2, d: usize) -> Vec<Complex64> {
    (0..=d)
        .map(|i| {
            if d - i <= s.order_x() && i <= s.order_t() {
                s.get(d - i, i)
            } else {
                ZERO
            }
        })
        .collect()
}

/// Writing `ω = Σ b_j dx - Σ a_j dy` with `a_j, b_j` homogeneous of degree
/// `j`, tests `a_j = b_j = 0` for `j < 2`, `a₂ = xy`, `b₂ = y²` and
/// `x b₃ - y a₃ = β x⁴` with `β ≠ 0`.
pub fn is_t1(form: &OneForm, tol: f64) -> Result<std::result::Result<Complex64, T1Failure>> {
    form.expect(Frame::Xy)?;
    let a = form.q.scale(Complex64::new(-1.0, 0.0));
    let b = &form.p;
    let near = |v: &[Complex64], w: &[f64]| v.iter().zip(w).all(|(x, y)| (x - y).norm() <= tol);
    if !(near(&homogeneous(&a, 0), &[0.0])
        && near(&homogeneous(&a, 1), &[0.0, 0.0])
        && near(&homogeneous(&a, 2), &[0.0, 1.0, 0.0]))
    {
        return Ok(Err(T1Failure::QuadraticA));
    }
    if !(near(&homogeneous(b, 0), &[0.0])
        && near(&homogeneous(b, 1), &[0.0, 0.0])
        && near(&homogeneous(b, 2), &[0.0, 0.0, 1.0]))
    {
        return Ok(Err(T1Failure::QuadraticB));
    }
    let a3 = homogeneous(&a, 3);
    let b3 = homogeneous(b, 3);
    // x^{4-l} y^l coefficient of x b3 - y a3 is b3[l] - a3[l-1]
    for l in 1..=4 {
        let from_b = if l <= 3 { b3[l] } else { ZERO };
        if (from_b - a3[l - 1]).norm() > tol {
            return Ok(Err(T1Failure::Cubic));
        }
    }
    let beta = b3[0];
    if beta.norm() <= tol {
        return Ok(Err(T1Failure::BetaZero));
    }
    Ok(Ok(beta))
}

/// `(y² + βx³ + b_h) dx - (xy + a_h) dy` for higher-order data `(a_h, b_h)`
/// with vanishing 2-jets.
///
/// The cubic parts of the higher data are completed so that `x b₃ - y a₃`
/// stays `β x⁴`: a term `c x^i y^j` of `a_h` (`i ≥ 1`) adds
/// `c x^{i-1} y^{j+1}` to `b₃`, and a term `c x^i y^j` of `b_h` (`j ≥ 1`)
/// adds `c x^{i+1} y^{j-1}` to `a₃`. The monomials `y³` in `a_h` and `x³` in
/// `b_h` cannot be completed and are rejected.
pub fn model_from_beta(beta: Complex64, higher: Option<(&Series2, &Series2)>) -> Result<OneForm> {
    if beta.norm() == 0.0 {
        return Err(Error::InvalidArgument("beta must be nonzero".into()));
    }
    let (ah, bh) = match higher {
        Some((a, b)) => (a.clone(), b.clone()),
        None => (Series2::zeros(3, 3), Series2::zeros(3, 3)),
    };
    let ox = ah.order_x().max(bh.order_x()).max(3);
    let ot = ah.order_t().max(bh.order_t()).max(3);
    let mut a = ah.zero_extend(ox, ot);
    let mut b = bh.zero_extend(ox, ot);
    for d in 0..=2 {
        if homogeneous(&a, d)
            .iter()
            .chain(&homogeneous(&b, d))
            .any(|c| *c != ZERO)
        {
            return Err(Error::InvalidArgument(format!(
                "higher-order data has a nonzero term of degree {d}"
            )));
        }
    }
    let a3 = homogeneous(&ah.zero_extend(ox, ot), 3);
    let b3 = homogeneous(&bh.zero_extend(ox, ot), 3);
    if a3[3] != ZERO || b3[0] != ZERO {
        return Err(Error::InvalidArgument(
            "cubic term y^3 in a or x^3 in b cannot be completed".into(),
        ));
    }
    for l in 0..3 {
        // a3[l] x^{3-l} y^l  ->  b3 gains x^{2-l} y^{l+1}
        b.set(2 - l, l + 1, b.get(2 - l, l + 1) + a3[l]);
        // b3[l+1] x^{2-l} y^{l+1}  ->  a3 gains x^{3-l} y^l
        a.set(3 - l, l, a.get(3 - l, l) + b3[l + 1]);
    }
    b.set(0, 2, b.get(0, 2) + 1.0);
    b.set(3, 0, b.get(3, 0) + beta);
    a.set(1, 1, a.get(1, 1) + 1.0);
    OneForm::new(Frame::Xy, b, a.scale(Complex64::new(-1.0, 0.0)))
}

/// Points where the foliation is tangent to the divisor `x = 0`: roots of
/// the `dt` coefficient on `x = 0`, with multiplicity.
///
/// The divisor is invariant when the `dt` coefficient vanishes identically
/// there; a root where the `dx` coefficient also vanishes is a singular
/// point.
pub fn tangencies(form: &OneForm, tol: f64) -> Result<Vec<TangencyDatum>> {
    form.expect(Frame::Xt)?;
    let a0 = Poly::new(form.p.restrict_x0().into_coeffs());
    let b0 = Poly::new(form.q.restrict_x0().into_coeffs());
    let scale = a0.max_abs().max(b0.max_abs()).max(1.0);
    if b0.max_abs() <= tol * scale {
        return Err(Error::DivisorInvariant);
    }
    let mut out = Vec::new();
    for root in b0.roots(tol)? {
        let z = root.value;
        if a0.eval(z).norm() <= tol * a0.eval_scale(z).max(1.0) {
            return Err(Error::SingularOnDivisor { re: z.re, im: z.im });
        }
        out.push(TangencyDatum {
            t0: z,
            order: root.multiplicity,
        });
    }
    Ok(out)
}

/// Moves `t = t0` to `t = 0` by shifting each row polynomial in `t`.
pub fn recentre(form: &OneForm, t0: Complex64) -> Result<OneForm> {
    form.expect(Frame::Xt)?;
    let shift = |s: &Series2| {
        let rows: Vec<Vec<Complex64>> = s
            .rows()
            .into_iter()
            .map(|r| Series1::new(r).shift_polynomial(t0).into_coeffs())
            .collect();
        Series2::from_rows(rows)
    };
    OneForm::new(Frame::Xt, shift(&form.p)?, shift(&form.q)?)
}

/// The involution `i_𝓕` of a germ in T₁: the involution of
/// [`level_function_of`] computed one order higher.
pub fn involution_of(form: &OneForm, order: usize, tol: f64) -> Result<Involution> {
    let (g, _) = level_function_of(form, order + 1, tol)?;
    involution_from_level(&g, tol)
}

/// Blows up a germ in T₁, locates the unique simple tangency `t0` with the
/// divisor and returns `g(s) = F(0, t0 + s) - F(0, t0)` for the first
/// integral `F` normalized there, together with `t0`.
///
/// The form is first divided by the `xy` coefficient of `-q`, so that a
/// germ multiplied by a unit `u` with `u(0,0) ≠ 0` is accepted as well.
pub fn level_function_of(form: &OneForm, order: usize, tol: f64) -> Result<(Series1, Complex64)> {
    form.expect(Frame::Xy)?;
    let c = -form.q.get(1, 1);
    let form = if c.norm() > tol && (c - 1.0).norm() > 0.0 {
        let k = c.inv();
        OneForm::new(Frame::Xy, form.p.scale(k), form.q.scale(k))?
    } else {
        form.clone()
    };
    let form = &form;
    if let Err(failure) = is_t1(form, tol)? {
        return Err(Error::NotT1(failure.to_string()));
    }
    let (blown, _) = blow_up(form)?;
    let points = tangencies(&blown, 1e-8)?;
    let point = match points.as_slice() {
        [p] if p.order == 1 => *p,
        [p] => {
            return Err(Error::NotT1(format!(
                "tangency with the divisor has order {}",
                p.order
            )))
        }
        _ => {
            return Err(Error::NotT1(format!(
                "{} tangency points on the divisor",
                points.len()
            )))
        }
    };
    let centred = if point.t0.norm() > tol {
        recentre(&blown, point.t0)?
    } else {
        blown
    };
    let f = first_integral(&centred, order)?;
    let mut g = f.restrict_x0();
    g.set(0, ZERO);
    Ok((g, point.t0))
}
