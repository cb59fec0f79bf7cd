//! Local involutions `i(0) = 0, i'(0) = -1`, their finite-order
//! approximations, and the action of the Moebius maps fixing the origin.
//!
//! A series `f` belongs to `Inv_k` when `f(0)=0`, `f'(0)=-1` and
//! `f∘f = t mod t^{k+1}`. Coefficient comparisons are relative to the size
//! of the terms that feed each coefficient of `f∘f`: the `j`-th defect is
//! accepted when it is at most `tol · max(1, (|f|∘|f|)_j)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::series::{Dual, Scalar, Series, Series1};
use crate::tolerance::Tolerances;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// First coefficient at which an involution test failed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientFailure {
    pub order: usize,
    pub magnitude: f64,
}

/// Result of [`check_involution`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvolutionCheck {
    /// Largest `k' ≤ k` with `f∘f = t mod t^{k'+1}`; 0 when the
    /// normalization `f(0)=0, f'(0)=-1` fails.
    pub verified_order: usize,
    pub requested_order: usize,
    /// `f(0)=0` and `f'(0)=-1` hold.
    pub normalized: bool,
    pub first_failure: Option<CoefficientFailure>,
}

impl InvolutionCheck {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn abs_series(f: &Series1) -> Series1 {
    f.map(|c| Complex64::new(c.norm(), 0.0))
}

/// Tests membership of `f` in `Inv_k`.
pub fn check_involution(f: &Series1, k: usize, tol: f64) -> Result<InvolutionCheck> {
    if k > f.order() {
        return Err(Error::InvalidArgument(format!(
            "requested order {k} exceeds the truncation order {}",
            f.order()
        )));
    }
    let fail = |order: usize, magnitude: f64| InvolutionCheck {
        verified_order: 0,
        requested_order: k,
        normalized: false,
        first_failure: Some(CoefficientFailure { order, magnitude }),
    };
    if f[0].norm() > tol {
        return Ok(fail(0, f[0].norm()));
    }
    if f.order() == 0 {
        return Ok(fail(1, 1.0));
    }
    if (f[1] + ONE).norm() > tol {
        return Ok(fail(1, (f[1] + ONE).norm()));
    }
    let mut fk = f.truncate(k);
    fk.set(0, ZERO);
    let defect = &fk.compose(&fk)? - &Series1::identity(k);
    let fa = abs_series(&fk);
    let scale = fa.compose(&fa)?;
    for j in 2..=k {
        let m = defect[j].norm();
        if m > tol * scale[j].re.max(1.0) {
            return Ok(InvolutionCheck {
                verified_order: j - 1,
                requested_order: k,
                normalized: true,
                first_failure: Some(CoefficientFailure {
                    order: j,
                    magnitude: m,
                }),
            });
        }
    }
    Ok(InvolutionCheck {
        verified_order: k,
        requested_order: k,
        normalized: true,
        first_failure: None,
    })
}

/// A normalized series together with the order to which it was verified
/// to be involutive. The verified order is always recomputed.
#[derive(Clone, Debug, PartialEq)]
pub struct Involution {
    series: Series1,
    verified_order: usize,
}

impl Involution {
    /// Verifies `series` with tolerance `tol`; fails unless `f(0)=0` and
    /// `f'(0)=-1`.
    pub fn new(series: Series1, tol: f64) -> Result<Self> {
        let check = check_involution(&series, series.order(), tol)?;
        if !check.normalized {
            let at = check.first_failure.map(|f| f.order).unwrap_or(0);
            return Err(Error::NotInvolution(if at == 0 {
                "i(0) != 0".into()
            } else {
                "i'(0) != -1".into()
            }));
        }
        Ok(Involution {
            series,
            verified_order: check.verified_order,
        })
    }

    pub fn series(&self) -> &Series1 {
        &self.series
    }

    pub fn into_series(self) -> Series1 {
        self.series
    }

    pub fn verified_order(&self) -> usize {
        self.verified_order
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    /// True when involutive to the full truncation order.
    pub fn is_complete(&self) -> bool {
        self.verified_order == self.series.order()
    }

    /// `-t` to the given order.
    pub fn linear(order: usize) -> Self {
        Involution {
            series: -&Series1::identity(order),
            verified_order: order,
        }
    }
}

/// `φ∘(-id)∘φ⁻¹`, the involution conjugate to `t ↦ -t` by `φ`.
pub fn involution_from_conjugator(phi: &Series1, tol: f64) -> Result<Involution> {
    let inverse = phi.comp_inverse()?;
    let mut phi0 = phi.clone();
    phi0.set(0, ZERO);
    let series = phi0.compose(&-&inverse)?;
    Involution::new(series, tol)
}

/// The involution exchanging the two points of each level set of `g` near a
/// simple critical point at the origin: the unique `i ≠ id` with
/// `g∘i = g mod t^{N+1}` and `i'(0) = -1`.
///
/// The constant term of `g` is ignored. Since the `t^n` coefficient of `i`
/// is fixed by the `t^{n+1}` coefficient of `g`, the result has order
/// `N - 1`.
pub fn involution_from_level(g: &Series1, tol: f64) -> Result<Involution> {
    let n = g.order();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "level function needs order at least 2".into(),
        ));
    }
    let scale = g.max_abs().max(1.0);
    if g[1].norm() > tol * scale {
        return Err(Error::InvalidArgument(format!(
            "origin is not a critical point: g'(0) = {:e}",
            g[1].norm()
        )));
    }
    let g2 = g[2];
    if g2.norm() <= tol * scale {
        return Err(Error::DegenerateCritical(g2.norm()));
    }
    let mut g = g.clone();
    g.set(0, ZERO);
    g.set(1, ZERO);
    let mut inv = (-&Series1::identity(n - 1)).zero_extend(n);
    for k in 2..n {
        let defect = &g.compose(&inv)? - &g;
        // g'(i) = -2 g2 t + ..., so the t^k term of i moves the t^{k+1}
        // coefficient of g∘i by -2 g2 a_k.
        inv.set(k, defect[k + 1] / (g2 * 2.0));
    }
    Involution::new(inv.truncate(n - 1), tol)
}

/// `g∘i - g` for a level function and its involution, evaluated to the
/// order of `g` by zero-extending `i`.
pub fn level_defect(g: &Series1, inv: &Involution) -> Result<Series1> {
    let mut g0 = g.clone();
    g0.set(0, ZERO);
    let i = inv.series().zero_extend(g.order());
    Ok(&g0.compose(&i)? - &g0)
}

/// `g(t) = a t / (1 + b t)`, a Moebius map fixing 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Moebius {
    a: Complex64,
    b: Complex64,
}

impl Moebius {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        if a == ZERO {
            return Err(Error::InvalidArgument(
                "Moebius map a t/(1 + b t) needs a != 0".into(),
            ));
        }
        Ok(Moebius { a, b })
    }

    pub fn identity() -> Self {
        Moebius { a: ONE, b: ZERO }
    }

    /// `t ↦ a t`.
    pub fn scaling(a: Complex64) -> Result<Self> {
        Moebius::new(a, ZERO)
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.a * t / (ONE + self.b * t)
    }

    pub fn inverse(&self) -> Moebius {
        Moebius {
            a: self.a.inv(),
            b: -self.b / self.a,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Moebius) -> Moebius {
        Moebius {
            a: self.a * other.a,
            b: other.b + self.b * other.a,
        }
    }

    pub fn series(&self, order: usize) -> Series1 {
        moebius_series(self.a, self.b, order)
    }
}

fn moebius_series<C: Scalar>(a: C, b: C, order: usize) -> Series<C> {
    let mut s = Series::zero(order);
    let mut coeff = a;
    for j in 1..=order {
        s.set(j, coeff);
        coeff = -(coeff * b);
    }
    s
}

/// `g⁻¹∘i∘g` for `g = a t/(1+bt)`, generic so parameter derivatives can be
/// taken with dual numbers.
fn conjugate_generic<C: Scalar>(i: &Series<C>, a: C, b: C) -> Result<Series<C>> {
    let n = i.order();
    let g = moebius_series(a, b, n);
    let ginv = moebius_series(C::one() / a, -(b / a), n);
    ginv.compose(&i.compose(&g)?)
}

/// `I(g, i) = g⁻¹∘i∘g`, truncated to the order of `i`.
pub fn moebius_conjugate(g: &Moebius, inv: &Involution, tol: f64) -> Result<Involution> {
    let series = conjugate_generic(inv.series(), g.a, g.b)?;
    Involution::new(series, tol)
}

/// How an orbit witness was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessMethod {
    /// Root of the first non-trivial coefficient equation, then refined.
    CoefficientMatching,
    /// Seeded damped least-squares search; a heuristic.
    HeuristicSearch,
}

/// Outcome of [`g_orbit_equivalent`].
#[derive(Clone, Debug, PartialEq)]
pub enum OrbitOutcome {
    Equivalent {
        witness: Moebius,
        /// Largest scaled coefficient mismatch after re-conjugation.
        residual: f64,
        method: WitnessMethod,
    },
    /// No Moebius map matches the jets. `order` is the coefficient at which
    /// the matching system first became inconsistent.
    NotEquivalent {
        order: usize,
        residual: f64,
        method: WitnessMethod,
    },
}

impl OrbitOutcome {
    pub fn witness(&self) -> Option<Moebius> {
        match self {
            OrbitOutcome::Equivalent { witness, .. } => Some(*witness),
            OrbitOutcome::NotEquivalent { .. } => None,
        }
    }
}

struct Matching<'a> {
    source: &'a Series1,
    target: &'a Series1,
    k: usize,
    weights: Vec<f64>,
}

impl<'a> Matching<'a> {
    fn new(source: &'a Series1, target: &'a Series1, k: usize) -> Self {
        let weights = (0..=k).map(|j| 1.0 / target[j].norm().max(1.0)).collect();
        Matching {
            source,
            target,
            k,
            weights,
        }
    }

    /// Scaled residuals for orders 2..=k.
    fn residuals(&self, a: Complex64, b: Complex64) -> Result<Vec<Complex64>> {
        let conj = conjugate_generic(self.source, a, b)?;
        Ok((2..=self.k)
            .map(|j| (conj[j] - self.target[j]) * self.weights[j])
            .collect())
    }

    fn max_residual(&self, a: Complex64, b: Complex64) -> f64 {
        self.residuals(a, b)
            .map(|r| r.iter().map(|c| c.norm()).fold(0.0, f64::max))
            .unwrap_or(f64::INFINITY)
    }

    /// Residuals and their derivatives in `a` and `b`.
    fn jacobian(
        &self,
        a: Complex64,
        b: Complex64,
    ) -> Result<(Vec<Complex64>, Vec<[Complex64; 2]>)> {
        let lift = self.source.map(Dual::constant);
        let da = conjugate_generic(&lift, Dual::new(a, ONE), Dual::constant(b))?;
        let db = conjugate_generic(&lift, Dual::constant(a), Dual::new(b, ONE))?;
        let mut r = Vec::with_capacity(self.k);
        let mut jac = Vec::with_capacity(self.k);
        for j in 2..=self.k {
            let w = self.weights[j];
            r.push((da[j].re - self.target[j]) * w);
            jac.push([da[j].du * w, db[j].du * w]);
        }
        Ok((r, jac))
    }

    /// Damped Gauss-Newton on `(a, b)`.
    fn refine(
        &self,
        mut a: Complex64,
        mut b: Complex64,
        iterations: usize,
    ) -> (Complex64, Complex64, f64) {
        let mut best = self.max_residual(a, b);
        let mut damping = 1e-12;
        for _ in 0..iterations {
            let Ok((r, jac)) = self.jacobian(a, b) else {
                break;
            };
            // normal equations (J^H J + μ I) δ = -J^H r
            let mut m = [[ZERO; 2]; 2];
            let mut rhs = [ZERO; 2];
            for (row, res) in jac.iter().zip(&r) {
                for p in 0..2 {
                    rhs[p] -= row[p].conj() * res;
                    for q in 0..2 {
                        m[p][q] += row[p].conj() * row[q];
                    }
                }
            }
            let mut improved = false;
            for _ in 0..8 {
                let d00 = m[0][0] + damping;
                let d11 = m[1][1] + damping;
                let det = d00 * d11 - m[0][1] * m[1][0];
                if det.norm() == 0.0 {
                    damping *= 10.0;
                    continue;
                }
                let da = (rhs[0] * d11 - m[0][1] * rhs[1]) / det;
                let db = (d00 * rhs[1] - m[1][0] * rhs[0]) / det;
                let (na, nb) = (a + da, b + db);
                if na.norm() > 1e-12 {
                    let res = self.max_residual(na, nb);
                    if res < best {
                        a = na;
                        b = nb;
                        best = res;
                        damping = (damping / 10.0).max(1e-15);
                        improved = true;
                        break;
                    }
                }
                damping *= 10.0;
            }
            if !improved || best < 1e-15 {
                break;
            }
        }
        (a, b, best)
    }
}

/// Samples `a ↦ residual_j(a, b(a))` on the unit circle and recovers the
/// polynomial of degree `< n` by a discrete Fourier transform.
fn residual_polynomial(
    matching: &Matching<'_>,
    j: usize,
    b_of_a: impl Fn(Complex64) -> Complex64,
) -> Result<(Poly, f64)> {
    let n = j;
    let mut values = Vec::with_capacity(n);
    let mut magnitude: f64 = 1.0;
    for s in 0..n {
        let a = Complex64::from_polar(1.0, std::f64::consts::TAU * s as f64 / n as f64);
        let conj = conjugate_generic(matching.source, a, b_of_a(a))?;
        magnitude = magnitude.max(conj[j].norm()).max(matching.target[j].norm());
        values.push(conj[j] - matching.target[j]);
    }
    let coeffs = (0..n)
        .map(|m| {
            values
                .iter()
                .enumerate()
                .map(|(s, v)| {
                    v * Complex64::from_polar(
                        1.0,
                        -std::f64::consts::TAU * (s * m) as f64 / n as f64,
                    )
                })
                .sum::<Complex64>()
                / n as f64
        })
        .collect();
    Ok((Poly::new(coeffs), magnitude))
}

/// Looks for `g ∈ G` with `g⁻¹∘i1∘g = i2 mod t^{k+1}`.
///
/// The `t²` equation `q₂ = a p₂ + 2b` fixes `b` given `a`; the first later
/// coefficient equation that does not vanish identically is a polynomial in
/// `a` whose roots are the candidates, each refined against all orders up
/// to `k`. When no candidate reaches the matching tolerance a seeded
/// least-squares search is run and any result is labelled heuristic.
pub fn g_orbit_equivalent(
    i1: &Involution,
    i2: &Involution,
    k: usize,
    tol: &Tolerances,
    seed: u64,
) -> Result<OrbitOutcome> {
    if i1.verified_order() < k || i2.verified_order() < k {
        return Err(Error::InvalidArgument(format!(
            "both involutions must be verified to order {k} (got {} and {})",
            i1.verified_order(),
            i2.verified_order()
        )));
    }
    let source = i1.series().truncate(k);
    let target = i2.series().truncate(k);
    if k < 2 {
        return Ok(OrbitOutcome::Equivalent {
            witness: Moebius::identity(),
            residual: 0.0,
            method: WitnessMethod::CoefficientMatching,
        });
    }
    let matching = Matching::new(&source, &target, k);
    let (p2, q2) = (source[2], target[2]);
    let b_of_a = |a: Complex64| (q2 - a * p2) / 2.0;

    let mut candidates = Vec::new();
    let mut first_equation = None;
    for j in 3..=k {
        let (poly, magnitude) = residual_polynomial(&matching, j, b_of_a)?;
        if poly.max_abs() <= tol.matching * magnitude {
            continue;
        }
        first_equation = Some(j);
        if let Some(deg) = poly.degree_with(1e-12) {
            if deg > 0 {
                for root in poly.roots(tol.root)? {
                    if root.value.norm() > 1e-8 {
                        candidates.push(root.value);
                    }
                }
            }
        }
        break;
    }
    if first_equation.is_none() {
        candidates.push(ONE);
    }

    let mut best: Option<(Complex64, Complex64, f64)> = None;
    for a in candidates {
        let (a, b, res) = matching.refine(a, b_of_a(a), 40);
        if best.is_none_or(|(_, _, r)| res < r) {
            best = Some((a, b, res));
        }
    }
    if let Some((a, b, res)) = best {
        if res <= tol.matching {
            return Ok(OrbitOutcome::Equivalent {
                witness: Moebius::new(a, b)?,
                residual: res,
                method: WitnessMethod::CoefficientMatching,
            });
        }
    }
    let order = first_equation.unwrap_or(k);
    if best.is_none() {
        // the first non-trivial equation has no admissible root
        return Ok(OrbitOutcome::NotEquivalent {
            order,
            residual: matching.max_residual(ONE, b_of_a(ONE)),
            method: WitnessMethod::CoefficientMatching,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_res = best.map(|(_, _, r)| r).unwrap_or(f64::INFINITY);
    for _ in 0..64 {
        let r = (rng.gen_range(-1.5f64..1.5)).exp();
        let a = Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU));
        let b = b_of_a(a) + Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let (a, b, res) = matching.refine(a, b, 60);
        if res <= tol.matching {
            return Ok(OrbitOutcome::Equivalent {
                witness: Moebius::new(a, b)?,
                residual: res,
                method: WitnessMethod::HeuristicSearch,
            });
        }
        best_res = best_res.min(res);
    }
    Ok(OrbitOutcome::NotEquivalent {
        order,
        residual: best_res,
        method: WitnessMethod::HeuristicSearch,
    })
}
