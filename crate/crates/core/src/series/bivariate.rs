use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::Series1;
use crate::error::{Error, Result};

/// Truncated series in `(x, t)` with independent truncation orders per
/// variable. Entry `(i, j)` is the coefficient of `x^i t^j`.
///
/// The second variable is called `t` throughout; before a blow-up it plays
/// the role of `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series2 {
    order_x: usize,
    order_t: usize,
    data: Vec<Complex64>,
}

/// Outcome of dividing by a power of `t - f(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveDivision {
    /// Quotient after the successful divisions.
    pub quotient: Series2,
    /// How many times `t - f(x)` divided exactly.
    pub divisions: usize,
    /// True when all requested divisions succeeded.
    pub exact: bool,
    /// Largest remainder coefficient of the last attempted division.
    pub remainder: f64,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl Series2 {
    pub fn zeros(order_x: usize, order_t: usize) -> Self {
        Series2 {
            order_x,
            order_t,
            data: vec![ZERO; (order_x + 1) * (order_t + 1)],
        }
    }

    /// Builds from rows indexed by x-power; every row must have equal length.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let width = rows.first().map(Vec::len).unwrap_or(0);
        if rows.is_empty() || width == 0 || rows.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidArgument(
                "bivariate coefficient table must be non-empty and rectangular".into(),
            ));
        }
        let mut s = Series2::zeros(rows.len() - 1, width - 1);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, c) in row.into_iter().enumerate() {
                s.set(i, j, c);
            }
        }
        Ok(s)
    }

    /// Builds a table from sparse real monomials `(x_power, t_power, coeff)`,
    /// sized to the given orders.
    pub fn from_terms(order_x: usize, order_t: usize, terms: &[(usize, usize, f64)]) -> Self {
        let mut s = Series2::zeros(order_x, order_t);
        for &(i, j, c) in terms {
            s.set(i, j, s.get(i, j) + Complex64::new(c, 0.0));
        }
        s
    }

    pub fn from_fn(order_x: usize, order_t: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut s = Series2::zeros(order_x, order_t);
        for i in 0..=order_x {
            for j in 0..=order_t {
                s.set(i, j, f(i, j));
            }
        }
        s
    }

    /// A series in `t` alone, viewed as bivariate.
    pub fn from_t_series(f: &Series1, order_x: usize) -> Self {
        let mut s = Series2::zeros(order_x, f.order());
        for (j, &c) in f.coeffs().iter().enumerate() {
            s.set(0, j, c);
        }
        s
    }

    /// A series in `x` alone, viewed as bivariate.
    pub fn from_x_series(f: &Series1, order_t: usize) -> Self {
        let mut s = Series2::zeros(f.order(), order_t);
        for (i, &c) in f.coeffs().iter().enumerate() {
            s.set(i, 0, c);
        }
        s
    }

    /// Assembles `Σ_j columns[j](x) t^j`.
    pub fn from_t_columns(columns: &[Series1]) -> Self {
        let order_x = columns.iter().map(Series1::order).min().unwrap_or(0);
        let mut s = Series2::zeros(order_x, columns.len().max(1) - 1);
        for (j, col) in columns.iter().enumerate() {
            for i in 0..=order_x {
                s.set(i, j, col[i]);
            }
        }
        s
    }

    pub fn order_x(&self) -> usize {
        self.order_x
    }

    pub fn order_t(&self) -> usize {
        self.order_t
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * (self.order_t + 1) + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, c: Complex64) {
        let w = self.order_t + 1;
        self.data[i * w + j] = c;
    }

    fn add_at(&mut self, i: usize, j: usize, c: Complex64) {
        let w = self.order_t + 1;
        self.data[i * w + j] += c;
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data
            .chunks(self.order_t + 1)
            .map(<[Complex64]>::to_vec)
            .collect()
    }

    /// Coefficient of `t^j` as a series in `x`.
    pub fn t_column(&self, j: usize) -> Series1 {
        Series1::new((0..=self.order_x).map(|i| self.get(i, j)).collect())
    }

    pub fn t_columns(&self) -> Vec<Series1> {
        (0..=self.order_t).map(|j| self.t_column(j)).collect()
    }

    /// `s(0, t)`.
    pub fn restrict_x0(&self) -> Series1 {
        Series1::new((0..=self.order_t).map(|j| self.get(0, j)).collect())
    }

    /// `s(x, 0)`.
    pub fn restrict_t0(&self) -> Series1 {
        self.t_column(0)
    }

    pub fn truncate(&self, order_x: usize, order_t: usize) -> Self {
        let (ox, ot) = (order_x.min(self.order_x), order_t.min(self.order_t));
        Series2::from_fn(ox, ot, |i, j| self.get(i, j))
    }

    /// Resizes the table, filling new entries with zero. Growing is only
    /// meaningful for polynomial data.
    pub fn zero_extend(&self, order_x: usize, order_t: usize) -> Self {
        Series2::from_fn(order_x, order_t, |i, j| {
            if i <= self.order_x && j <= self.order_t {
                self.get(i, j)
            } else {
                ZERO
            }
        })
    }

    /// Swaps the roles of the two variables.
    pub fn transpose(&self) -> Self {
        Series2::from_fn(self.order_t, self.order_x, |i, j| self.get(j, i))
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Series2 {
            order_x: self.order_x,
            order_t: self.order_t,
            data: self.data.iter().map(|&c| c * k).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Series2) -> f64 {
        (self - other).max_abs()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    fn zip_with(&self, other: &Series2, f: impl Fn(Complex64, Complex64) -> Complex64) -> Series2 {
        let ox = self.order_x.min(other.order_x);
        let ot = self.order_t.min(other.order_t);
        Series2::from_fn(ox, ot, |i, j| f(self.get(i, j), other.get(i, j)))
    }

    /// Product truncated to the smaller order in each variable.
    pub fn mul_series(&self, other: &Series2) -> Series2 {
        let ox = self.order_x.min(other.order_x);
        let ot = self.order_t.min(other.order_t);
        let mut out = Series2::zeros(ox, ot);
        for a in 0..=ox {
            for b in 0..=ot {
                let u = self.get(a, b);
                if u == ZERO {
                    continue;
                }
                for c in 0..=(ox - a) {
                    for d in 0..=(ot - b) {
                        let v = other.get(c, d);
                        if v != ZERO {
                            out.add_at(a + c, b + d, u * v);
                        }
                    }
                }
            }
        }
        out
    }

    /// Multiplication of polynomials in `t`: the t-order of the result is the
    /// sum of the t-orders, the x-order the minimum.
    pub fn mul_polynomial_t(&self, other: &Series2) -> Series2 {
        let ox = self.order_x.min(other.order_x);
        let ot = self.order_t + other.order_t;
        let a = self.zero_extend(ox, ot);
        let b = other.zero_extend(ox, ot);
        a.mul_series(&b)
    }

    /// Exact product of the tables read as polynomials; both orders add.
    pub fn mul_polynomial(&self, other: &Series2) -> Series2 {
        let ox = self.order_x + other.order_x;
        let ot = self.order_t + other.order_t;
        self.zero_extend(ox, ot)
            .mul_series(&other.zero_extend(ox, ot))
    }

    pub fn partial_x(&self) -> Series2 {
        if self.order_x == 0 {
            return Series2::zeros(0, self.order_t);
        }
        Series2::from_fn(self.order_x - 1, self.order_t, |i, j| {
            self.get(i + 1, j) * (i + 1) as f64
        })
    }

    pub fn partial_t(&self) -> Series2 {
        if self.order_t == 0 {
            return Series2::zeros(self.order_x, 0);
        }
        Series2::from_fn(self.order_x, self.order_t - 1, |i, j| {
            self.get(i, j + 1) * (j + 1) as f64
        })
    }

    /// Multiplicative inverse of a unit (`s(0,0) ≠ 0`).
    pub fn reciprocal(&self) -> Result<Series2> {
        let u0 = self.get(0, 0);
        if u0 == ZERO {
            return Err(Error::NotInvertible(
                "bivariate series vanishes at the origin".into(),
            ));
        }
        let inv0 = u0.inv();
        let mut out = Series2::zeros(self.order_x, self.order_t);
        for i in 0..=self.order_x {
            for j in 0..=self.order_t {
                if i == 0 && j == 0 {
                    out.set(0, 0, inv0);
                    continue;
                }
                let mut acc = ZERO;
                for a in 0..=i {
                    for b in 0..=j {
                        if a == 0 && b == 0 {
                            continue;
                        }
                        acc += self.get(a, b) * out.get(i - a, j - b);
                    }
                }
                out.set(i, j, -acc * inv0);
            }
        }
        Ok(out)
    }

    /// Lowest x-power carrying a coefficient above `tol`, `None` if all vanish.
    pub fn x_valuation(&self, tol: f64) -> Option<usize> {
        (0..=self.order_x).find(|&i| (0..=self.order_t).any(|j| self.get(i, j).norm() > tol))
    }

    /// Substitutes `y = t·x`: the monomial `x^j y^k` becomes `x^{j+k} t^k`.
    /// The result is sized to `order_x` in x; a nonzero monomial that would
    /// land beyond it is an error rather than a silent truncation.
    pub fn blow_up_substitute(&self, order_x: usize) -> Result<Series2> {
        let mut out = Series2::zeros(order_x, self.order_t);
        for j in 0..=self.order_x {
            for k in 0..=self.order_t {
                let c = self.get(j, k);
                if c == ZERO {
                    continue;
                }
                if j + k > order_x {
                    return Err(Error::TruncationOverflow {
                        degree: j + k,
                        capacity: order_x,
                    });
                }
                out.set(j + k, k, c);
            }
        }
        Ok(out)
    }

    /// [`Series2::blow_up_substitute`] with a table large enough for every
    /// monomial.
    pub fn blow_up_substitute_full(&self) -> Series2 {
        self.blow_up_substitute(self.order_x + self.order_t)
            .expect("table sized to hold every monomial")
    }

    /// Shifts x-exponents down by `k`; every coefficient below `x^k` must be
    /// within `tol` of zero.
    pub fn divide_by_x_power(&self, k: usize, tol: f64) -> Result<Series2> {
        for i in 0..k.min(self.order_x + 1) {
            for j in 0..=self.order_t {
                let m = self.get(i, j).norm();
                if m > tol {
                    return Err(Error::NotDivisible {
                        k,
                        x_power: i,
                        t_power: j,
                        magnitude: m,
                    });
                }
            }
        }
        if k > self.order_x {
            return Err(Error::InvalidArgument(format!(
                "cannot divide an x-order {} series by x^{k}",
                self.order_x
            )));
        }
        Ok(Series2::from_fn(self.order_x - k, self.order_t, |i, j| {
            self.get(i + k, j)
        }))
    }

    /// Divides by `(t - f(x))^m`, treating the table as a polynomial in `t`
    /// with coefficients in `x`. Each step is a synthetic division, i.e.
    /// the substitution `t = s + f(x)` followed by division by `s`.
    ///
    /// `tol` is relative to the largest coefficient of `self`.
    pub fn divide_by_curve(&self, f: &Series1, m: usize, tol: f64) -> CurveDivision {
        let ox = self.order_x.min(f.order());
        let f = f.truncate(ox);
        let scale = tol * self.max_abs().max(1.0);
        let mut current: Vec<Series1> = self
            .t_columns()
            .into_iter()
            .map(|c| c.truncate(ox))
            .collect();
        let mut divisions = 0;
        let mut remainder = 0.0;
        while divisions < m {
            if current.len() < 2 {
                remainder = current.iter().map(Series1::max_abs).fold(0.0, f64::max);
                break;
            }
            let deg = current.len() - 1;
            let mut quotient = vec![Series1::zero(ox); deg];
            quotient[deg - 1] = current[deg].clone();
            for i in (1..deg).rev() {
                quotient[i - 1] = &current[i] + &(&f * &quotient[i]);
            }
            let rem = &current[0] + &(&f * &quotient[0]);
            remainder = rem.max_abs();
            if remainder > scale {
                break;
            }
            current = quotient;
            divisions += 1;
        }
        CurveDivision {
            quotient: Series2::from_t_columns(&current),
            divisions,
            exact: divisions == m,
            remainder,
        }
    }

    /// Multiplies by `(t - f(x))^m` as a polynomial in `t`; the t-order grows
    /// by `m`.
    pub fn multiply_by_curve(&self, f: &Series1, m: usize) -> Series2 {
        let ox = self.order_x.min(f.order());
        let mut factor = Series2::zeros(ox, 1);
        for i in 0..=ox {
            factor.set(i, 0, -f[i]);
        }
        factor.set(0, 1, Complex64::new(1.0, 0.0));
        let mut out = self.truncate(ox, self.order_t);
        for _ in 0..m {
            out = out.mul_polynomial_t(&factor);
        }
        out
    }

    /// `Σ_j s_j(x) f(x)^j` for the columns `s_j`, treating the table as a
    /// polynomial in `t`. `f(0)` may be nonzero.
    pub fn substitute_t(&self, f: &Series1) -> Series1 {
        let ox = self.order_x.min(f.order());
        let f = f.truncate(ox);
        let mut acc = self.t_column(self.order_t).truncate(ox);
        for j in (0..self.order_t).rev() {
            acc = &(&acc * &f) + &self.t_column(j).truncate(ox);
        }
        acc
    }

    /// Evaluates the table as a polynomial at `(x, t)`.
    pub fn eval(&self, x: Complex64, t: Complex64) -> Complex64 {
        let mut acc = ZERO;
        let mut xp = Complex64::new(1.0, 0.0);
        for i in 0..=self.order_x {
            let mut tp = Complex64::new(1.0, 0.0);
            let mut row = ZERO;
            for j in 0..=self.order_t {
                row += self.get(i, j) * tp;
                tp *= t;
            }
            acc += row * xp;
            xp *= x;
        }
        acc
    }
}

impl Add for &Series2 {
    type Output = Series2;
    fn add(self, rhs: &Series2) -> Series2 {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Series2 {
    type Output = Series2;
    fn sub(self, rhs: &Series2) -> Series2 {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &Series2 {
    type Output = Series2;
    fn mul(self, rhs: &Series2) -> Series2 {
        self.mul_series(rhs)
    }
}

impl Neg for &Series2 {
    type Output = Series2;
    fn neg(self) -> Series2 {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}
