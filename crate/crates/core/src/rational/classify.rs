//! Branches of the critical locus `W = num_t·den - num·den_t = 0` of a
//! family near `x = 0`, and the factor they contribute to `dR`.
//!
//! Branches through a root `t0` of `W(0, ·)` are found with the Newton
//! polygon of `W(x, t0 + s)`, restricted to integer exponents: edges of
//! integer slope give branches `t = t0 + c x^q + …`, edges of slope `1/p`
//! give branches `x = c s^p + …` tangent to the divisor `x = 0`. Other
//! slopes need fractional exponents and are reported as unsupported.
//! A root of multiplicity `μ` is first tried as a single `μ`-fold branch,
//! obtained by Hensel lifting on `∂^{μ-1}W` and confirmed by division.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Point, RationalFamily};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::series::{Series1, Series2};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A branch of the critical locus.
#[derive(Clone, Debug, PartialEq)]
pub enum Branch {
    /// `t = f(x)`.
    Graph { f: Series1 },
    /// `x = g(t - t0)` with `g(s) = c s^{l+1} + …`, tangent to `x = 0` with
    /// order `l`.
    Tangent { t0: Complex64, g: Series1, l: usize },
}

impl Branch {
    pub fn t0(&self) -> Complex64 {
        match self {
            Branch::Graph { f } => f[0],
            Branch::Tangent { t0, .. } => *t0,
        }
    }

    /// Tangency order with the divisor, `None` for graphs over `x`.
    pub fn tangency(&self) -> Option<usize> {
        match self {
            Branch::Graph { .. } => None,
            Branch::Tangent { l, .. } => Some(*l),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    /// `R` is constant along the branch.
    Level,
    NonInvariant,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalCurve {
    pub branch: Branch,
    /// Multiplicity `m` of the branch in the critical locus.
    pub order: usize,
    pub kind: CurveKind,
    /// Value of `R` at the point of the branch over `x = 0`; the constant
    /// value for level curves.
    pub value: Point,
    /// `R` along the branch, as a series in `x` (graphs) or `s` (tangent
    /// branches); `None` along poles.
    pub along: Option<Series1>,
}

/// A branch whose Newton-polygon edge needs fractional exponents.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnsupportedBranch {
    pub t0: Complex64,
    /// The edge slope `rise/run` of `s ~ x^{rise/run}`.
    pub rise: usize,
    pub run: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub curves: Vec<CriticalCurve>,
    pub unsupported: Vec<UnsupportedBranch>,
}

/// `Σ_j cols[j](a) b^j`, each column truncated at a common order in `a`.
#[derive(Clone, Debug)]
struct Local {
    cols: Vec<Series1>,
}

impl Local {
    fn order(&self) -> usize {
        self.cols[0].order()
    }

    fn scale(&self) -> f64 {
        self.cols.iter().map(Series1::max_abs).fold(0.0, f64::max)
    }

    fn valuation(col: &Series1, thr: f64) -> Option<usize> {
        (0..=col.order()).find(|&i| col[i].norm() > thr)
    }

    /// `T(a, φ(a))`.
    fn eval_at(&self, phi: &Series1) -> Series1 {
        let mut acc = self.cols[self.cols.len() - 1].clone();
        for j in (0..self.cols.len() - 1).rev() {
            acc = &(&acc * phi) + &self.cols[j];
        }
        acc
    }

    /// `∂^k/∂b^k`.
    fn derivative(&self, k: usize) -> Local {
        let cols = (k..self.cols.len())
            .map(|j| {
                let factor: f64 = ((j - k + 1)..=j).map(|x| x as f64).product();
                self.cols[j].scale(Complex64::new(factor, 0.0))
            })
            .collect();
        Local { cols }
    }

    /// `b = a^q (c + u)`, then division by `a^e`.
    fn substitute(&self, q: usize, c: Complex64, e: usize, thr: f64) -> Result<Local> {
        let n = self.order();
        let deg = self.cols.len() - 1;
        let mut out = vec![Series1::zero(n); deg + 1];
        for (j, col) in self.cols.iter().enumerate() {
            let shift = q * j;
            if shift > n {
                continue;
            }
            let mut binom = 1.0;
            let mut cpow: Vec<Complex64> = vec![Complex64::new(1.0, 0.0)];
            for _ in 0..j {
                let last = *cpow.last().unwrap();
                cpow.push(last * c);
            }
            for l in 0..=j {
                // C(j, l) c^{j-l}
                let w = cpow[j - l] * binom;
                for i in 0..=(n - shift) {
                    let v = col[i];
                    if v != ZERO {
                        let idx = i + shift;
                        let cur = out[l][idx];
                        out[l].set(idx, cur + v * w);
                    }
                }
                binom = binom * (j - l) as f64 / (l + 1) as f64;
            }
        }
        if e > n {
            return Err(Error::BranchSolving(
                "precision exhausted during substitution".into(),
            ));
        }
        for col in &out {
            for i in 0..e {
                if col[i].norm() > thr {
                    return Err(Error::BranchSolving(format!(
                        "substitution left a term of size {:e} below the edge",
                        col[i].norm()
                    )));
                }
            }
        }
        let cols = out
            .into_iter()
            .map(|col| Series1::new(col.coeffs()[e..].to_vec()))
            .collect();
        Ok(Local { cols })
    }

    /// The root `φ(0) = 0` of `T(a, φ) = 0` when `T_b(0,0) ≠ 0`.
    fn hensel(&self) -> Result<Series1> {
        let n = self.order();
        let slope = if self.cols.len() > 1 {
            self.cols[1][0]
        } else {
            ZERO
        };
        if slope.norm() == 0.0 {
            return Err(Error::BranchSolving(
                "Hensel lifting from a multiple root".into(),
            ));
        }
        let mut phi = Series1::zero(n);
        for k in 1..=n {
            let r = self.eval_at(&phi)[k];
            phi.set(k, -r / slope);
        }
        Ok(phi)
    }

    fn to_series2(&self) -> Series2 {
        Series2::from_t_columns(&self.cols)
    }
}

/// A branch `b = φ(a)` of a local table with its multiplicity.
type LocalBranch = (Series1, usize);

struct Context {
    tol: f64,
    unsupported: Vec<(usize, usize)>,
    /// Edges `(p, ·)` of slope `1/p`, kept for the transposed pass.
    tangent_edges: Vec<usize>,
}

/// Lower convex hull of the points `(j, v_j)` from `j = 0` to `j = μ`.
fn lower_hull(points: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut hull: Vec<(usize, usize)> = Vec::new();
    for &p in points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // keep b only if it lies strictly below segment a-p
            let cross = (b.0 as i64 - a.0 as i64) * (p.1 as i64 - a.1 as i64)
                - (b.1 as i64 - a.1 as i64) * (p.0 as i64 - a.0 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

fn analyze(
    t: &Local,
    depth: usize,
    ctx: &mut Context,
    top_graph: bool,
) -> Result<Vec<LocalBranch>> {
    let mut out = Vec::new();
    let thr = ctx.tol * t.scale().max(1e-300);
    let Some(j_min) = t.cols.iter().position(|c| c.max_abs() > thr) else {
        return Err(Error::BranchSolving(
            "local equation vanishes identically".into(),
        ));
    };
    let n = t.order();
    if j_min > 0 {
        out.push((Series1::zero(n), j_min));
    }
    let t = Local {
        cols: t.cols[j_min..].to_vec(),
    };
    let vals: Vec<Option<usize>> = t.cols.iter().map(|c| Local::valuation(c, thr)).collect();
    let Some(mu) = vals.iter().position(|v| *v == Some(0)) else {
        return Err(Error::BranchSolving(
            "precision exhausted before the branch separated".into(),
        ));
    };
    if mu == 0 {
        return Ok(out);
    }
    if mu == 1 {
        out.push((t.hensel()?, 1));
        return Ok(out);
    }
    if let Ok(phi) = t.derivative(mu - 1).hensel() {
        let div = t.to_series2().divide_by_curve(&phi, mu, ctx.tol);
        if div.exact {
            out.push((phi, mu));
            return Ok(out);
        }
    }
    if n == 0 {
        out.push((Series1::zero(0), mu));
        return Ok(out);
    }
    let points: Vec<(usize, usize)> = (0..=mu).filter_map(|j| vals[j].map(|v| (j, v))).collect();
    let hull = lower_hull(&points);
    for edge in hull.windows(2) {
        let ((j1, i1), (j2, i2)) = (edge[0], edge[1]);
        let (run, rise) = (j2 - j1, i1 - i2);
        if rise % run == 0 {
            let q = rise / run;
            let e = i1 + q * j1;
            let coeffs: Vec<Complex64> = (j1..=j2)
                .map(|j| {
                    let i = e as i64 - (q * j) as i64;
                    if i >= 0 && (i as usize) <= n {
                        t.cols[j][i as usize]
                    } else {
                        ZERO
                    }
                })
                .collect();
            let edge_poly = Poly::new(coeffs);
            for root in edge_poly.roots(1e-6)? {
                if root.value.norm() <= 1e-12 {
                    continue;
                }
                if e > n {
                    out.push((Series1::monomial(root.value, q, q), root.multiplicity));
                    continue;
                }
                let sub = t.substitute(q, root.value, e, thr.max(ctx.tol * 1e-3))?;
                for (psi, nu) in analyze(&sub, depth + 1, ctx, false)? {
                    let mut phi = vec![ZERO; q];
                    phi.extend_from_slice(psi.coeffs());
                    phi[q] += root.value;
                    out.push((Series1::new(phi), nu));
                }
            }
        } else if top_graph && run % rise == 0 {
            ctx.tangent_edges.push(run / rise);
        } else {
            ctx.unsupported.push((rise, run));
        }
    }
    let _ = depth;
    Ok(out)
}

/// Branches `x = g(s)` tangent to the divisor, from the transposed table.
/// `cols_x[i]` is the coefficient of `x^i` as a polynomial in `s`; `n_x` the
/// x-truncation order.
fn tangent_branches(
    cols_x: &[Series1],
    n_x: usize,
    ctx: &mut Context,
) -> Result<Vec<(Series1, usize, usize)>> {
    let mut out = Vec::new();
    let mut ps = ctx.tangent_edges.clone();
    ps.sort_unstable();
    ps.dedup();
    if ps.is_empty() {
        return Ok(out);
    }
    let deg_s = cols_x.iter().map(Series1::order).max().unwrap_or(0);
    let scale = cols_x.iter().map(Series1::max_abs).fold(0.0, f64::max);
    let thr = ctx.tol * scale.max(1e-300);
    for p in ps {
        // exact s-order after x = s^p(·): contributions of x^{n_x+1} start at s^{p(n_x+1)}
        let na = (p * (n_x + 1) - 1).max(deg_s);
        let t = Local {
            cols: cols_x.iter().map(|c| c.zero_extend(na)).collect(),
        };
        let vals: Vec<Option<usize>> = t.cols.iter().map(|c| Local::valuation(c, thr)).collect();
        let Some(mu) = vals.iter().position(|v| *v == Some(0)) else {
            continue;
        };
        let points: Vec<(usize, usize)> =
            (0..=mu).filter_map(|j| vals[j].map(|v| (j, v))).collect();
        for edge in lower_hull(&points).windows(2) {
            let ((j1, i1), (j2, i2)) = (edge[0], edge[1]);
            let (run, rise) = (j2 - j1, i1 - i2);
            if rise != p * run {
                continue;
            }
            let e = i1 + p * j1;
            let coeffs: Vec<Complex64> = (j1..=j2)
                .map(|j| {
                    let i = e as i64 - (p * j) as i64;
                    if i >= 0 && (i as usize) <= na {
                        t.cols[j][i as usize]
                    } else {
                        ZERO
                    }
                })
                .collect();
            for root in Poly::new(coeffs).roots(1e-6)? {
                if root.value.norm() <= 1e-12 {
                    continue;
                }
                let sub = t.substitute(p, root.value, e, thr.max(ctx.tol * 1e-3))?;
                for (psi, nu) in analyze(&sub, 1, ctx, false)? {
                    let mut g = vec![ZERO; p];
                    g.extend_from_slice(psi.coeffs());
                    g[p] += root.value;
                    out.push((Series1::new(g), nu, p - 1));
                }
            }
        }
    }
    Ok(out)
}

/// `Σ_i rows_i(s) g(s)^i` where `rows_i` is row `i` of `table` shifted to `t0`.
fn along_tangent(table: &Series2, t0: Complex64, g: &Series1) -> Series1 {
    let n = g.order();
    let mut acc = Series1::zero(n);
    let mut gp = Series1::constant(Complex64::new(1.0, 0.0), n);
    for row in table.rows() {
        let r = Series1::new(row).shift_polynomial(t0);
        let r = r.zero_extend(n.max(r.order())).truncate(n);
        acc = &acc + &(&r * &gp);
        gp = &gp * g;
    }
    acc
}

fn kind_of(num: &Series1, den: &Series1, tol: f64) -> (CurveKind, Point, Option<Series1>) {
    let dscale = den.max_abs().max(num.max_abs()).max(1e-300);
    if den[0].norm() <= tol * dscale {
        if den.max_abs() <= tol * dscale {
            return (CurveKind::Level, Point::Infinity, None);
        }
        return (CurveKind::NonInvariant, Point::Infinity, None);
    }
    let r = num * &den.reciprocal().expect("unit denominator");
    let scale = r.max_abs().max(1.0);
    let constant = (1..=r.order()).all(|k| r[k].norm() <= tol * scale);
    let kind = if constant {
        CurveKind::Level
    } else {
        CurveKind::NonInvariant
    };
    (kind, Point::Finite(r[0]), Some(r))
}

/// Branches of the critical locus of `R(x, ·)` through the finite critical
/// points of `R(0, ·)`, with their multiplicity and type.
pub fn classify_critical_curves(family: &RationalFamily, tol: f64) -> Result<Classification> {
    let w = family.wronskian();
    let w0 = Poly::new(w.restrict_x0().into_coeffs());
    if w0.is_zero() {
        return Err(Error::InvalidArgument(
            "R(0, ·) is constant; the specialization is degenerate".into(),
        ));
    }
    let n_x = w.order_x();
    let mut curves = Vec::new();
    let mut unsupported = Vec::new();
    if w0.degree().unwrap_or(0) == 0 {
        return Ok(Classification {
            curves,
            unsupported,
        });
    }
    for root in w0.roots(1e-8)? {
        let t0 = root.value;
        let rows: Vec<Vec<Complex64>> = w
            .rows()
            .into_iter()
            .map(|r| Series1::new(r).shift_polynomial(t0).into_coeffs())
            .collect();
        let shifted = Series2::from_rows(rows)?;
        let local = Local {
            cols: shifted.t_columns(),
        };
        let mut ctx = Context {
            tol,
            unsupported: Vec::new(),
            tangent_edges: Vec::new(),
        };
        let graphs = analyze(&local, 0, &mut ctx, true)?;
        for (phi, m) in graphs {
            let mut f = phi.clone();
            f.set(0, f[0] + t0);
            let num = family.num().substitute_t(&f);
            let den = family.den().substitute_t(&f);
            let (kind, value, along) = kind_of(&num, &den, tol);
            curves.push(CriticalCurve {
                branch: Branch::Graph { f },
                order: m,
                kind,
                value,
                along,
            });
        }
        if !ctx.tangent_edges.is_empty() {
            // remove the factor s^{j_min} before transposing
            let j_min = local
                .cols
                .iter()
                .position(|c| c.max_abs() > tol * local.scale())
                .unwrap_or(0);
            let reduced = Series2::from_t_columns(&local.cols[j_min..]);
            let cols_x: Vec<Series1> = reduced.rows().into_iter().map(Series1::new).collect();
            for (g, m, l) in tangent_branches(&cols_x, n_x, &mut ctx)? {
                let num = along_tangent(family.num(), t0, &g);
                let den = along_tangent(family.den(), t0, &g);
                let (kind, value, along) = kind_of(&num, &den, tol);
                curves.push(CriticalCurve {
                    branch: Branch::Tangent { t0, g, l },
                    order: m,
                    kind,
                    value,
                    along,
                });
            }
        }
        unsupported.extend(
            ctx.unsupported
                .into_iter()
                .map(|(rise, run)| UnsupportedBranch { t0, rise, run }),
        );
    }
    Ok(Classification {
        curves,
        unsupported,
    })
}

/// How often a branch factor divides the two coefficients of `den²·dR`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisorCheck {
    pub expected: usize,
    pub dx_divisions: usize,
    pub dt_divisions: usize,
    /// `min` of the two counts, capped at `expected + 1`.
    pub common: usize,
    /// `common == expected`.
    pub ok: bool,
}

/// Number of `k < cap` with `∂_x^k H(g(s), t0 + s) ≡ 0` in a row, i.e. the
/// power of `x - g(t)` dividing `H`.
fn tangent_divisions(h: &Series2, t0: Complex64, g: &Series1, cap: usize, tol: f64) -> usize {
    let scale = h.max_abs().max(1.0);
    let mut d = h.clone();
    for k in 0..cap {
        let v = along_tangent(&d, t0, g);
        if v.max_abs() > tol * scale {
            return k;
        }
        if d.order_x() == 0 {
            return k + 1;
        }
        d = d.partial_x();
    }
    cap
}

/// Checks that the branch factor divides both coefficients of `dR` exactly
/// `m` times.
pub fn verify_dr_factor(
    family: &RationalFamily,
    branch: &Branch,
    m: usize,
    tol: f64,
) -> DivisorCheck {
    let (p, q) = family.dr_numerators();
    let cap = m + 1;
    let (dx, dt) = match branch {
        Branch::Graph { f } => (
            p.divide_by_curve(f, cap, tol).divisions,
            q.divide_by_curve(f, cap, tol).divisions,
        ),
        Branch::Tangent { t0, g, .. } => (
            tangent_divisions(&p, *t0, g, cap, tol),
            tangent_divisions(&q, *t0, g, cap, tol),
        ),
    };
    let common = dx.min(dt);
    DivisorCheck {
        expected: m,
        dx_divisions: dx,
        dt_divisions: dt,
        common,
        ok: common == m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-8;

    fn family(terms: &[(usize, usize, f64)], ox: usize, ot: usize) -> RationalFamily {
        RationalFamily::polynomial(Series2::from_terms(ox, ot, terms)).unwrap()
    }

    #[test]
    fn moving_critical_point_is_not_invariant() {
        // x + (t - x)² = x + t² - 2xt + x²
        let f = family(&[(1, 0, 1.0), (0, 2, 1.0), (1, 1, -2.0), (2, 0, 1.0)], 6, 2);
        let c = classify_critical_curves(&f, TOL).unwrap();
        assert_eq!(c.curves.len(), 1);
        let curve = &c.curves[0];
        assert_eq!(curve.kind, CurveKind::NonInvariant);
        assert_eq!(curve.order, 1);
        match &curve.branch {
            Branch::Graph { f } => assert!(f.max_abs_diff(&Series1::identity(6)) < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cubic_normal_form_is_level() {
        // 3 + (t - x)³ (1 + x)
        let base = Series2::from_terms(6, 0, &[(0, 0, 1.0), (1, 0, 1.0)]);
        let cube = base.multiply_by_curve(&Series1::identity(6), 3);
        let num = &cube + &Series2::from_terms(6, 3, &[(0, 0, 3.0)]);
        let f = RationalFamily::polynomial(num).unwrap();
        let c = classify_critical_curves(&f, TOL).unwrap();
        assert_eq!(c.curves.len(), 1);
        let curve = &c.curves[0];
        assert_eq!(curve.kind, CurveKind::Level);
        assert_eq!(curve.order, 2);
        assert!((curve.value.finite().unwrap() - 3.0).norm() < 1e-12);

        let check = verify_dr_factor(&f, &curve.branch, 2, TOL);
        assert!(check.ok, "{check:?}");
        assert_eq!(check.common, 2);
        assert!(!verify_dr_factor(&f, &curve.branch, 3, TOL).ok);
    }

    #[test]
    fn tangent_level_branch() {
        // (t² - x)² + 5 = t⁴ - 2xt² + x² + 5
        let f = family(&[(0, 4, 1.0), (1, 2, -2.0), (2, 0, 1.0), (0, 0, 5.0)], 6, 4);
        let c = classify_critical_curves(&f, TOL).unwrap();
        assert!(c.unsupported.is_empty());
        let tangent: Vec<_> = c
            .curves
            .iter()
            .filter(|k| k.branch.tangency().is_some())
            .collect();
        assert_eq!(tangent.len(), 1);
        let curve = tangent[0];
        assert_eq!(curve.branch.tangency(), Some(1));
        assert_eq!(curve.kind, CurveKind::Level);
        assert!((curve.value.finite().unwrap() - 5.0).norm() < 1e-12);
        match &curve.branch {
            Branch::Tangent { g, .. } => {
                let expected = Series1::monomial(Complex64::new(1.0, 0.0), 2, g.order());
                assert!(g.max_abs_diff(&expected) < 1e-12);
            }
            other => panic!("{other:?}"),
        }
        // t = 0 is a second, non-invariant branch
        let graph: Vec<_> = c
            .curves
            .iter()
            .filter(|k| k.branch.tangency().is_none())
            .collect();
        assert_eq!(graph.len(), 1);
        assert_eq!(graph[0].kind, CurveKind::NonInvariant);
        assert!(verify_dr_factor(&f, &curve.branch, 1, TOL).ok);
    }

    #[test]
    fn fractional_exponents_are_reported() {
        // R_t = t² - x³ needs t = ±x^{3/2}: R = t³/3 - x³ t
        let f = family(&[(0, 3, 1.0 / 3.0), (3, 1, -1.0)], 6, 3);
        let c = classify_critical_curves(&f, TOL).unwrap();
        assert_eq!(c.unsupported.len(), 1);
        assert_eq!((c.unsupported[0].rise, c.unsupported[0].run), (3, 2));
    }

    #[test]
    fn two_transversal_branches_through_one_point() {
        // R_t = (t - x)(t + 2x): R = t³/3 + x t²/2 - 2x² t
        let f = family(&[(0, 3, 1.0 / 3.0), (1, 2, 0.5), (2, 1, -2.0)], 6, 3);
        let c = classify_critical_curves(&f, TOL).unwrap();
        assert_eq!(c.curves.len(), 2);
        let mut slopes: Vec<f64> = c
            .curves
            .iter()
            .map(|k| match &k.branch {
                Branch::Graph { f } => f[1].re,
                _ => panic!(),
            })
            .collect();
        slopes.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((slopes[0] + 2.0).abs() < 1e-10 && (slopes[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn non_invariant_normal_form_has_no_common_factor() {
        // x + (t - x)³ (1 + x): dx coefficient does not vanish on t = x
        let base = Series2::from_terms(6, 0, &[(0, 0, 1.0), (1, 0, 1.0)]);
        let cube = base.multiply_by_curve(&Series1::identity(6), 3);
        let num = &cube + &Series2::from_terms(6, 3, &[(1, 0, 1.0)]);
        let f = RationalFamily::polynomial(num).unwrap();
        let branch = Branch::Graph {
            f: Series1::identity(6),
        };
        let check = verify_dr_factor(&f, &branch, 2, TOL);
        assert_eq!(check.dx_divisions, 0);
        assert_eq!(check.dt_divisions, 2);
        assert_eq!(check.common, 0);
    }

    #[test]
    fn hull_shapes() {
        assert_eq!(lower_hull(&[(0, 2), (1, 1), (2, 0)]), vec![(0, 2), (2, 0)]);
        assert_eq!(
            lower_hull(&[(0, 3), (1, 1), (3, 0)]),
            vec![(0, 3), (1, 1), (3, 0)]
        );
    }
}
