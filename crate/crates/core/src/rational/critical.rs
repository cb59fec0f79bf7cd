use serde::{Deserialize, Serialize};

use super::{Point, RationalMap};
use crate::error::{Error, Result};

/// A critical point of `R` with its order (local degree minus one) and
/// critical value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalDatum {
    pub point: Point,
    pub order: usize,
    pub value: Point,
}

/// All critical points of `R` on the sphere, finite ones sorted by
/// `(re, im)` and `t = ∞` last. Orders sum to `2d - 2`; a clustering that
/// violates this is reported as a root-finding failure.
pub fn critical_data(r: &RationalMap, root_tol: f64) -> Result<Vec<CriticalDatum>> {
    let d = r.degree();
    let w = r.wronskian().trimmed();
    let mut out = Vec::new();
    if w.degree().unwrap_or(0) > 0 {
        for root in w.roots(root_tol)? {
            let z = root.value;
            let den = r.den().eval(z).norm();
            let value = if den <= 1e-8 * r.den().eval_scale(z).max(1e-300) {
                Point::Infinity
            } else {
                r.eval(z)
            };
            out.push(CriticalDatum {
                point: Point::Finite(z),
                order: root.multiplicity,
                value,
            });
        }
    }
    let local_degree = order_at_infinity(r) + 1;
    if local_degree > 1 {
        out.push(CriticalDatum {
            point: Point::Infinity,
            order: local_degree - 1,
            value: r.value_at_infinity(),
        });
    }
    let total: usize = out.iter().map(|c| c.order).sum();
    if total != 2 * d - 2 {
        let residual = out
            .iter()
            .filter_map(|c| c.point.finite())
            .map(|z| w.eval(z).norm() / w.eval_scale(z).max(1e-300))
            .fold(0.0, f64::max);
        return Err(Error::RootFinding {
            message: format!(
                "critical orders sum to {total}, expected {} for degree {d}",
                2 * d - 2
            ),
            residual,
        });
    }
    Ok(out)
}

/// Local degree of `R` at `t = ∞`, minus one.
fn order_at_infinity(r: &RationalMap) -> usize {
    let (a, b) = (r.num_degree(), r.den_degree());
    if a != b {
        return a.abs_diff(b) - 1;
    }
    let d = a;
    let num = r.num().reversed(d);
    let den = r.den().reversed(d);
    let lead = r.num().coeff(d) / r.den().coeff(d);
    let h = &num - &den.scale(lead);
    let scale = num.max_abs().max(den.max_abs() * lead.norm());
    let v = (0..=d)
        .find(|&j| h.coeff(j).norm() > 1e-12 * scale)
        .unwrap_or(d);
    v.saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use num_complex::Complex64;

    fn poly_map(c: &[f64]) -> RationalMap {
        RationalMap::polynomial(Poly::from_real(c)).unwrap()
    }

    fn finite(p: Point) -> Complex64 {
        p.finite().unwrap()
    }

    #[test]
    fn square() {
        let data = critical_data(&poly_map(&[0.0, 0.0, 1.0]), 1e-8).unwrap();
        assert_eq!(data.len(), 2);
        assert_eq!(data[0].order, 1);
        assert!(finite(data[0].point).norm() < 1e-14);
        assert!(finite(data[0].value).norm() < 1e-14);
        assert_eq!(data[1].point, Point::Infinity);
        assert_eq!(data[1].order, 1);
        assert_eq!(data[1].value, Point::Infinity);
    }

    #[test]
    fn cubic() {
        let data = critical_data(&poly_map(&[0.0, -3.0, 0.0, 1.0]), 1e-8).unwrap();
        assert_eq!(data.len(), 3);
        assert!((finite(data[0].point) + 1.0).norm() < 1e-12);
        assert!((finite(data[0].value) - 2.0).norm() < 1e-12);
        assert!((finite(data[1].point) - 1.0).norm() < 1e-12);
        assert!((finite(data[1].value) + 2.0).norm() < 1e-12);
        assert_eq!(data[2].point, Point::Infinity);
        assert_eq!(data[2].order, 2);
    }

    #[test]
    fn double_pole_and_finite_value_at_infinity() {
        // (t² + 1)/t²: critical at t = 0 (double pole) and t = ∞ (value 1)
        let r = RationalMap::new(
            Poly::from_real(&[1.0, 0.0, 1.0]),
            Poly::from_real(&[0.0, 0.0, 1.0]),
        )
        .unwrap();
        let data = critical_data(&r, 1e-8).unwrap();
        assert_eq!(data.len(), 2);
        assert_eq!(data[0].value, Point::Infinity);
        assert_eq!(data[1].point, Point::Infinity);
        assert_eq!(data[1].order, 1);
        assert!((finite(data[1].value) - 1.0).norm() < 1e-14);
    }

    #[test]
    fn riemann_hurwitz_on_examples() {
        let maps = [
            poly_map(&[0.0, 0.0, 0.0, 0.0, 1.0]),
            poly_map(&[1.0, 2.0, -1.0, 0.5, 0.25]),
            RationalMap::new(
                Poly::from_real(&[1.0, -2.0, 0.0, 1.0]),
                Poly::from_real(&[0.5, 1.0, 1.0]),
            )
            .unwrap(),
        ];
        for r in &maps {
            let total: usize = critical_data(r, 1e-8)
                .unwrap()
                .iter()
                .map(|c| c.order)
                .sum();
            assert_eq!(total, 2 * r.degree() - 2);
        }
    }
}
