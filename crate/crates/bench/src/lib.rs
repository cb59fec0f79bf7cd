//! Fixtures shared by the benches in `benches/`.

use folium_core::foliation::{Frame, OneForm};
use folium_core::involution::{involution_from_conjugator, Involution};
use folium_core::poly::Poly;
use folium_core::rational::{RationalFamily, RationalMap};
use folium_core::{Series1, Series2};
use num_complex::Complex64;

/// A series with coefficients `(0.7 + 0.2i)^j / (j + 1)`.
pub fn sample_series(order: usize) -> Series1 {
    let z = Complex64::new(0.7, 0.2);
    Series1::new(
        (0..=order)
            .map(|j| z.powu(j as u32) / (j as f64 + 1.0))
            .collect(),
    )
}

/// `sample_series` with its constant term removed and unit slope.
pub fn sample_conjugator(order: usize) -> Series1 {
    let mut s = sample_series(order);
    s.set(0, Complex64::new(0.0, 0.0));
    s.set(1, Complex64::new(1.0, 0.0));
    s
}

pub fn sample_involution(order: usize) -> Involution {
    involution_from_conjugator(&sample_conjugator(order), 1e-10).expect("unit slope")
}

/// `(y² + x³/2) dx - x y dy`.
pub fn model_form() -> OneForm {
    let p = Series2::from_terms(4, 4, &[(0, 2, 1.0), (3, 0, 0.5)]);
    let q = Series2::from_terms(4, 4, &[(1, 1, -1.0)]);
    OneForm::new(Frame::Xy, p, q).expect("valid form")
}

/// `t³ - 3t`.
pub fn chebyshev_cubic() -> RationalMap {
    RationalMap::polynomial(Poly::from_real(&[0.0, -3.0, 0.0, 1.0])).expect("nonconstant")
}

/// `(t² - x)² + 5`, whose critical locus has a branch tangent to `x = 0`.
pub fn tangent_family() -> RationalFamily {
    let num = Series2::from_terms(2, 4, &[(0, 4, 1.0), (1, 2, -2.0), (2, 0, 1.0), (0, 0, 5.0)]);
    RationalFamily::polynomial(num).expect("nonconstant")
}
