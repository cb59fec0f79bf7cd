//! Rational maps `R(t) = num(t)/den(t)` of the Riemann sphere and families
//! `R(x, t)` whose coefficients are truncated series in `x`.

mod classify;
mod covering;
mod critical;
mod monodromy;
mod permutation;
mod quintic;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::series::{Series1, Series2};

pub use classify::{
    classify_critical_curves, verify_dr_factor, Branch, Classification, CriticalCurve, CurveKind,
    DivisorCheck, UnsupportedBranch,
};
pub use covering::{
    covering_isomorphic, hurwitz_equivalent, simultaneous_conjugator, BraidMove, CoveringVerdict,
};
pub use critical::{critical_data, CriticalDatum};
pub use monodromy::{
    bouquet, monodromy, monodromy_group, Bouquet, MonodromyGroup, MonodromyOptions,
};
pub use permutation::{group_order, is_transitive, Permutation};
pub use quintic::{
    quintic_from_critical_points, quintic_search, quintic_verify, QuinticCertificate,
    QuinticVerdict, RootProfile, DEFAULT_QUINTIC_BUDGET,
};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A point of the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Point {
    Finite(Complex64),
    Infinity,
}

impl Point {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            Point::Finite(z) => Some(z),
            Point::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Point::Infinity)
    }

    /// Chordal distance, at most 1.
    pub fn chordal(self, other: Point) -> f64 {
        match (self, other) {
            (Point::Infinity, Point::Infinity) => 0.0,
            (Point::Finite(z), Point::Infinity) | (Point::Infinity, Point::Finite(z)) => {
                1.0 / (1.0 + z.norm_sqr()).sqrt()
            }
            (Point::Finite(a), Point::Finite(b)) => {
                (a - b).norm() / ((1.0 + a.norm_sqr()) * (1.0 + b.norm_sqr())).sqrt()
            }
        }
    }
}

/// Relative residual below which a denominator root is treated as a common
/// root of numerator and denominator.
const COMMON_ROOT: f64 = 1e-8;

/// `num/den` with common roots removed.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap {
    num: Poly,
    den: Poly,
}

impl RationalMap {
    /// Cancels numerically common roots. Fails for a zero denominator or a
    /// constant map.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        let mut num = num.trimmed();
        let mut den = den.trimmed();
        if den.is_zero() {
            return Err(Error::InvalidArgument("denominator vanishes".into()));
        }
        if !num.is_zero() && den.degree().unwrap_or(0) > 0 {
            for root in den.roots(1e-8)? {
                for _ in 0..root.multiplicity {
                    let z = root.value;
                    if num.degree().unwrap_or(0) == 0 {
                        break;
                    }
                    if num.eval(z).norm() > COMMON_ROOT * num.eval_scale(z) {
                        break;
                    }
                    num = num.deflate(z).0.trimmed();
                    den = den.deflate(z).0.trimmed();
                }
            }
        }
        let map = RationalMap { num, den };
        if map.degree() == 0 {
            return Err(Error::InvalidArgument("constant rational map".into()));
        }
        Ok(map)
    }

    pub fn polynomial(p: Poly) -> Result<Self> {
        RationalMap::new(p, Poly::constant(Complex64::new(1.0, 0.0)))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn num_degree(&self) -> usize {
        self.num.degree().unwrap_or(0)
    }

    pub fn den_degree(&self) -> usize {
        self.den.degree().unwrap_or(0)
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num_degree().max(self.den_degree())
    }

    pub fn eval(&self, t: Complex64) -> Point {
        let d = self.den.eval(t);
        let n = self.num.eval(t);
        if d.norm() <= 1e-300 || (d.norm() <= 1e-14 * self.den.eval_scale(t) && n.norm() > 0.0) {
            Point::Infinity
        } else {
            Point::Finite(n / d)
        }
    }

    /// Value at `t = ∞`.
    pub fn value_at_infinity(&self) -> Point {
        let (a, b) = (self.num_degree(), self.den_degree());
        if a > b {
            Point::Infinity
        } else if a < b {
            Point::Finite(ZERO)
        } else {
            Point::Finite(self.num.coeff(a) / self.den.coeff(b))
        }
    }

    pub fn eval_point(&self, p: Point) -> Point {
        match p {
            Point::Finite(t) => self.eval(t),
            Point::Infinity => self.value_at_infinity(),
        }
    }

    /// `num'·den - num·den'`, whose roots are the finite critical points.
    pub fn wronskian(&self) -> Poly {
        &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative())
    }

    /// `R∘m` for a Moebius transformation `m(t) = (αt + β)/(γt + δ)`.
    pub fn compose_moebius(&self, m: [Complex64; 4]) -> Result<RationalMap> {
        let [al, be, ga, de] = m;
        if (al * de - be * ga).norm() == 0.0 {
            return Err(Error::InvalidArgument(
                "singular Moebius transformation".into(),
            ));
        }
        let d = self.degree();
        let top = Poly::new(vec![be, al]);
        let bottom = Poly::new(vec![de, ga]);
        let homogenize = |p: &Poly| {
            let mut acc = Poly::constant(ZERO);
            for j in 0..=d {
                let mut term = Poly::constant(p.coeff(j));
                for _ in 0..j {
                    term = &term * &top;
                }
                for _ in j..d {
                    term = &term * &bottom;
                }
                acc = &acc + &term;
            }
            acc
        };
        RationalMap::new(homogenize(&self.num), homogenize(&self.den))
    }

    /// `Q∘R` for a polynomial `Q`.
    pub fn post_compose(&self, q: &Poly) -> Result<RationalMap> {
        let k = q.degree().unwrap_or(0);
        let mut num = Poly::constant(ZERO);
        for j in 0..=k {
            let mut term = Poly::constant(q.coeff(j));
            for _ in 0..j {
                term = &term * &self.num;
            }
            for _ in j..k {
                term = &term * &self.den;
            }
            num = &num + &term;
        }
        let mut den = Poly::constant(Complex64::new(1.0, 0.0));
        for _ in 0..k {
            den = &den * &self.den;
        }
        RationalMap::new(num, den)
    }

    /// Preimages of a finite value, counted with multiplicity; preimages at
    /// `t = ∞` appear as [`Point::Infinity`].
    pub fn preimages(&self, w: Complex64) -> Result<Vec<Point>> {
        let p = &self.num - &self.den.scale(w);
        let d = self.degree();
        let mut out: Vec<Point> = if p.is_zero() {
            return Err(Error::InvalidArgument("map is constant".into()));
        } else if p.degree().unwrap_or(0) == 0 {
            Vec::new()
        } else {
            p.roots_flat(1e-8)?.into_iter().map(Point::Finite).collect()
        };
        while out.len() < d {
            out.push(Point::Infinity);
        }
        Ok(out)
    }
}

/// `R(x, t) = num(x, t)/den(x, t)` with both tables read as polynomials in
/// `t` whose coefficients are series in `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFamily {
    num: Series2,
    den: Series2,
}

impl RationalFamily {
    /// Pads both tables to common orders; the specialization at `x = 0` must
    /// be a nonconstant rational map.
    pub fn new(num: Series2, den: Series2) -> Result<Self> {
        let ox = num.order_x().max(den.order_x());
        let ot = num.order_t().max(den.order_t());
        let family = RationalFamily {
            num: num.zero_extend(ox, ot),
            den: den.zero_extend(ox, ot),
        };
        family.at_zero()?;
        Ok(family)
    }

    pub fn polynomial(num: Series2) -> Result<Self> {
        let den = Series2::from_terms(num.order_x(), 0, &[(0, 0, 1.0)]);
        RationalFamily::new(num, den)
    }

    pub fn num(&self) -> &Series2 {
        &self.num
    }

    pub fn den(&self) -> &Series2 {
        &self.den
    }

    pub fn order_x(&self) -> usize {
        self.num.order_x()
    }

    /// `R(x0, ·)`, summing the x-series as polynomials.
    pub fn specialize(&self, x0: Complex64) -> Result<RationalMap> {
        let collapse =
            |s: &Series2| Poly::new((0..=s.order_t()).map(|j| s.t_column(j).eval(x0)).collect());
        RationalMap::new(collapse(&self.num), collapse(&self.den))
    }

    pub fn at_zero(&self) -> Result<RationalMap> {
        self.specialize(ZERO)
    }

    /// `Q∘R`.
    pub fn post_compose(&self, q: &Poly) -> Result<RationalFamily> {
        let k = q.degree().unwrap_or(0);
        let one = Series2::from_terms(self.order_x(), 0, &[(0, 0, 1.0)]);
        let power =
            |s: &Series2, n: usize| (0..n).fold(one.clone(), |acc, _| acc.mul_polynomial_t(s));
        let mut num = Series2::zeros(self.order_x(), k * self.num.order_t());
        for j in 0..=k {
            let term = power(&self.num, j)
                .mul_polynomial_t(&power(&self.den, k - j))
                .scale(q.coeff(j));
            num = &num.zero_extend(num.order_x(), num.order_t().max(term.order_t()))
                + &term.zero_extend(term.order_x(), num.order_t().max(term.order_t()));
        }
        RationalFamily::new(num, power(&self.den, k))
    }

    /// `R(0, t0 + s)` as a series in `s` to the given order.
    pub fn level_function(&self, t0: Complex64, order: usize) -> Result<Series1> {
        let shift = |s: &Series2| {
            Series1::new(s.restrict_x0().into_coeffs())
                .shift_polynomial(t0)
                .zero_extend(order.max(s.order_t()))
                .truncate(order)
        };
        let n = shift(&self.num);
        let d = shift(&self.den);
        Ok(&n * &d.reciprocal()?)
    }

    /// Coefficients `num_x den - num den_x` and `num_t den - num den_t` of
    /// `den²·dR`, as polynomials in `t`. The first is known to x-order one
    /// less than the family.
    pub fn dr_numerators(&self) -> (Series2, Series2) {
        let a = self.num.partial_x().mul_polynomial_t(&self.den);
        let b = self.num.mul_polynomial_t(&self.den.partial_x());
        (difference(&a, &b), self.wronskian())
    }

    /// `num_t den - num den_t`.
    pub fn wronskian(&self) -> Series2 {
        let a = self.num.partial_t().mul_polynomial_t(&self.den);
        let b = self.num.mul_polynomial_t(&self.den.partial_t());
        difference(&a, &b)
    }
}

/// `a - b` for tables that may differ in t-order.
fn difference(a: &Series2, b: &Series2) -> Series2 {
    let ox = a.order_x().min(b.order_x());
    let ot = a.order_t().max(b.order_t());
    &a.truncate(ox, a.order_t()).zero_extend(ox, ot)
        - &b.truncate(ox, b.order_t()).zero_extend(ox, ot)
}
