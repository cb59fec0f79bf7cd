//! Dense univariate complex polynomials and their roots.
//!
//! Roots come from the eigenvalues of the companion matrix, refined by
//! Newton's method. Approximations that land close together are tested as a
//! multiple root: the cluster centre is polished as a simple root of the
//! `(m-1)`-th derivative and accepted when the lower Taylor coefficients
//! vanish there to within the root tolerance.

use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative size below which a leading or trailing coefficient is dropped.
const NEGLIGIBLE: f64 = 1e-14;
/// Radius (relative) within which eigenvalue approximations are grouped
/// before the multiplicity test.
const CLUSTER_RADIUS: f64 = 1e-4;

/// `Σ coeffs[j] z^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

/// A root together with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
}

impl Poly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            return Poly { coeffs: vec![ZERO] };
        }
        Poly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        Poly::new(vec![c])
    }

    /// `z - a`.
    pub fn linear_factor(a: Complex64) -> Self {
        Poly::new(vec![-a, ONE])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs.get(j).copied().unwrap_or(ZERO)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Degree after discarding leading coefficients below `rel` times the
    /// largest one; `None` for the zero polynomial.
    pub fn degree_with(&self, rel: f64) -> Option<usize> {
        let scale = self.max_abs();
        if scale == 0.0 {
            return None;
        }
        self.coeffs.iter().rposition(|c| c.norm() > rel * scale)
    }

    pub fn degree(&self) -> Option<usize> {
        self.degree_with(NEGLIGIBLE)
    }

    /// Drops negligible leading coefficients.
    pub fn trimmed(&self) -> Poly {
        match self.degree() {
            Some(d) => Poly::new(self.coeffs[..=d].to_vec()),
            None => Poly::constant(ZERO),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// `Σ |c_j| |z|^j`, the natural scale for residuals at `z`.
    pub fn eval_scale(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::constant(ZERO);
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| c * j as f64)
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Poly {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    /// Coefficients of `p(a + z)`.
    pub fn taylor_at(&self, a: Complex64) -> Poly {
        let n = self.coeffs.len() - 1;
        let mut c = self.coeffs.clone();
        for i in 0..n {
            for j in (i..n).rev() {
                let next = c[j + 1];
                c[j] += a * next;
            }
        }
        Poly::new(c)
    }

    pub fn scale(&self, k: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    /// `z^d p(1/z)`; with `d` at least the degree this is the reversed
    /// coefficient list, zero-padded.
    pub fn reversed(&self, d: usize) -> Poly {
        let mut c = self.coeffs.clone();
        c.resize(d + 1, ZERO);
        c.truncate(d + 1);
        c.reverse();
        Poly::new(c)
    }

    /// Quotient and remainder of division by `z - a`.
    pub fn deflate(&self, a: Complex64) -> (Poly, Complex64) {
        let n = self.coeffs.len() - 1;
        if n == 0 {
            return (Poly::constant(ZERO), self.coeffs[0]);
        }
        let mut q = vec![ZERO; n];
        q[n - 1] = self.coeffs[n];
        for i in (1..n).rev() {
            q[i - 1] = self.coeffs[i] + a * q[i];
        }
        let r = self.coeffs[0] + a * q[0];
        (Poly::new(q), r)
    }

    /// Newton's method from `z`; returns the last iterate.
    pub fn newton(&self, mut z: Complex64, iterations: usize) -> Complex64 {
        let d = self.derivative();
        let mut best = (self.eval(z).norm(), z);
        for _ in 0..iterations {
            let dz = d.eval(z);
            if dz.norm() == 0.0 {
                break;
            }
            let step = self.eval(z) / dz;
            z -= step;
            let r = self.eval(z).norm();
            if r < best.0 {
                best = (r, z);
            }
            if step.norm() <= 1e-16 * z.norm().max(1.0) {
                break;
            }
        }
        best.1
    }

    fn companion_eigenvalues(&self) -> Result<Vec<Complex64>> {
        let n = self.coeffs.len() - 1;
        if n == 0 {
            return Ok(vec![]);
        }
        if n == 1 {
            return Ok(vec![-self.coeffs[0] / self.coeffs[1]]);
        }
        let lead = self.coeffs[n];
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = ONE;
        }
        for i in 0..n {
            m[(i, n - 1)] = -self.coeffs[i] / lead;
        }
        let schur = Schur::try_new(m, 1e-15, 10_000).ok_or_else(|| Error::RootFinding {
            message: "companion Schur iteration did not converge".into(),
            residual: f64::NAN,
        })?;
        let (_, t) = schur.unpack();
        Ok((0..n).map(|i| t[(i, i)]).collect())
    }

    /// Companion eigenvalues; when the QR iteration stalls (e.g. on roots
    /// of equal modulus arranged symmetrically) the polynomial is
    /// recentred at a small off-axis point and the shift added back.
    fn eigenvalues_with_shifts(&self) -> Result<Vec<Complex64>> {
        let mut last = None;
        let radius = self.root_radius();
        for k in 0..4 {
            let shift = if k == 0 {
                ZERO
            } else {
                Complex64::from_polar(0.1 * k as f64 * radius.max(1e-3), 0.7 + 1.9 * k as f64)
            };
            let local = if k == 0 {
                self.clone()
            } else {
                self.taylor_at(shift)
            };
            match local.companion_eigenvalues() {
                Ok(v) => return Ok(v.into_iter().map(|z| z + shift).collect()),
                Err(e) => last = Some(e),
            }
        }
        Err(last.expect("at least one attempt"))
    }

    /// Cauchy bound on the root moduli.
    fn root_radius(&self) -> f64 {
        let n = self.coeffs.len() - 1;
        let lead = self.coeffs[n].norm();
        1.0 + self.coeffs[..n]
            .iter()
            .map(|c| c.norm() / lead)
            .fold(0.0, f64::max)
    }

    /// All roots with multiplicities. `tol` is the relative threshold on the
    /// Taylor coefficients that decides whether nearby approximations form
    /// one multiple root.
    pub fn roots(&self, tol: f64) -> Result<Vec<Root>> {
        let p = self.trimmed();
        let Some(deg) = p.degree() else {
            return Err(Error::InvalidArgument(
                "roots of the zero polynomial".into(),
            ));
        };
        // exact zero roots
        let scale = p.max_abs();
        let zeros = p
            .coeffs
            .iter()
            .position(|c| c.norm() > NEGLIGIBLE * scale)
            .unwrap_or(0);
        let reduced = Poly::new(p.coeffs[zeros..=deg].to_vec());
        let approx: Vec<Complex64> = reduced
            .eigenvalues_with_shifts()?
            .into_iter()
            .map(|z| reduced.newton(z, 50))
            .collect();

        let mut roots = Vec::new();
        if zeros > 0 {
            roots.push(Root {
                value: ZERO,
                multiplicity: zeros,
            });
        }
        let mut used = vec![false; approx.len()];
        for i in 0..approx.len() {
            if used[i] {
                continue;
            }
            let radius = CLUSTER_RADIUS * approx[i].norm().max(1.0);
            let members: Vec<usize> = (i..approx.len())
                .filter(|&j| !used[j] && (approx[j] - approx[i]).norm() < radius)
                .collect();
            let m = members.len();
            if m == 1 {
                used[i] = true;
                roots.push(Root {
                    value: approx[i],
                    multiplicity: 1,
                });
                continue;
            }
            let centre = members.iter().map(|&j| approx[j]).sum::<Complex64>() / m as f64;
            let centre = reduced.nth_derivative(m - 1).newton(centre, 50);
            if reduced.is_multiple_root(centre, m, tol) {
                for &j in &members {
                    used[j] = true;
                }
                roots.push(Root {
                    value: centre,
                    multiplicity: m,
                });
            } else {
                used[i] = true;
                roots.push(Root {
                    value: approx[i],
                    multiplicity: 1,
                });
            }
        }
        roots.sort_by(|a, b| {
            (a.value.re, a.value.im)
                .partial_cmp(&(b.value.re, b.value.im))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        Ok(roots)
    }

    /// Whether `z` is a root of multiplicity at least `m`, judged by the
    /// Taylor coefficients `p^{(j)}(z)/j!`, `j < m`, relative to the scale
    /// of `p` at `z`.
    pub fn is_multiple_root(&self, z: Complex64, m: usize, tol: f64) -> bool {
        let local = self.taylor_at(z);
        let scale = self.eval_scale(z).max(self.max_abs());
        (0..m).all(|j| local.coeff(j).norm() <= tol * scale)
    }

    /// Roots listed with repetition.
    pub fn roots_flat(&self, tol: f64) -> Result<Vec<Complex64>> {
        Ok(self
            .roots(tol)?
            .into_iter()
            .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
            .collect())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}
