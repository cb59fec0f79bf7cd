use num_complex::Complex64;

use super::{Frame, OneForm};
use crate::error::{Error, Result};
use crate::series::{Series1, Series2};

/// First integral `F` of `A dx + B dt` near a point where `A(0,0) ≠ 0`,
/// normalized by `F(x, 0) = x`, returned to orders `(order, order)`.
///
/// Leaves satisfy `dx/dt = -B/A`, so `F` solves the transport equation
/// `F_t = W F_x` with `W = B/A`. Writing `F = Σ F_k(x) t^k`,
/// `(k+1) F_{k+1} = Σ_{i+j=k} W_i F_j'`. Every step costs one
/// x-derivative, so the recursion runs at x-order `2·order + 1`.
pub fn first_integral(form: &OneForm, order: usize) -> Result<Series2> {
    form.expect(Frame::Xt)?;
    let a00 = form.p().get(0, 0);
    let scale = form.p().max_abs().max(form.q().max_abs()).max(1.0);
    if a00.norm() <= crate::series::ORIGIN_TOLERANCE * scale {
        return Err(Error::InvalidArgument(
            "dx-coefficient vanishes at the origin; recentre at a regular tangency first".into(),
        ));
    }
    let ox = 2 * order + 1;
    let a = form
        .p()
        .zero_extend(ox.max(form.p().order_x()), order.max(form.p().order_t()));
    let b = form
        .q()
        .zero_extend(ox.max(form.q().order_x()), order.max(form.q().order_t()));
    let a = a.truncate(ox, order);
    let b = b.truncate(ox, order);
    let w = b.mul_series(&a.reciprocal()?);
    let w_cols = w.t_columns();

    let mut cols: Vec<Series1> = Vec::with_capacity(order + 1);
    cols.push(Series1::identity(ox));
    let mut derivs: Vec<Series1> = vec![cols[0].derivative().zero_extend(ox)];
    for k in 0..order {
        let mut acc = Series1::zero(ox);
        for j in 0..=k {
            acc = &acc + &(&w_cols[k - j] * &derivs[j]);
        }
        let next = acc.scale(Complex64::new(1.0 / (k + 1) as f64, 0.0));
        derivs.push(next.derivative().zero_extend(ox));
        cols.push(next);
    }
    let cols: Vec<Series1> = cols.into_iter().map(|c| c.truncate(order)).collect();
    Ok(Series2::from_t_columns(&cols))
}

/// Coefficient `F_x B - F_t A` of `dF ∧ ω`, truncated to the orders where
/// it is fully determined by `F`.
pub fn wedge_residual(f: &Series2, form: &OneForm) -> Result<Series2> {
    form.expect(Frame::Xt)?;
    let (ox, ot) = (f.order_x().saturating_sub(1), f.order_t().saturating_sub(1));
    let grow = |s: &Series2| {
        s.zero_extend(s.order_x().max(ox), s.order_t().max(ot))
            .truncate(ox, ot)
    };
    let fx = grow(&f.partial_x());
    let ft = grow(&f.partial_t());
    let a = grow(form.p());
    let b = grow(form.q());
    Ok(&fx.mul_series(&b) - &ft.mul_series(&a))
}
