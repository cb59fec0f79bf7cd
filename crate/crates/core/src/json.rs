//! Serializable mirrors of the core types, used for file input and
//! reports. Complex numbers are `[re, im]` pairs throughout.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::foliation::{Frame, OneForm};
use crate::involution::{Involution, Moebius};
use crate::poly::Poly;
use crate::rational::{RationalFamily, RationalMap};
use crate::series::{Series1, Series2};

/// `{"var": "t", "order": N, "coeffs": [[re, im], ...]}`; involutions carry
/// `verified_order` as well.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    #[serde(default = "default_var")]
    pub var: String,
    pub order: usize,
    pub coeffs: Vec<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified_order: Option<usize>,
}

fn default_var() -> String {
    "t".into()
}

impl SeriesJson {
    pub fn from_series(f: &Series1) -> Self {
        SeriesJson {
            var: default_var(),
            order: f.order(),
            coeffs: f.coeffs().to_vec(),
            verified_order: None,
        }
    }

    pub fn from_involution(inv: &Involution) -> Self {
        SeriesJson {
            verified_order: Some(inv.verified_order()),
            ..SeriesJson::from_series(inv.series())
        }
    }

    pub fn to_series(&self) -> Result<Series1> {
        if self.coeffs.len() != self.order + 1 {
            return Err(Error::InvalidArgument(format!(
                "series of order {} needs {} coefficients, found {}",
                self.order,
                self.order + 1,
                self.coeffs.len()
            )));
        }
        Ok(Series1::new(self.coeffs.clone()))
    }

    /// Rebuilds an involution, re-verifying it; a stored `verified_order`
    /// is not trusted.
    pub fn to_involution(&self, tol: f64) -> Result<Involution> {
        Involution::new(self.to_series()?, tol)
    }
}

/// `{"vars": ["x", "t"], "order_x": J, "order_t": K, "coeffs": rows}` with
/// row index the power of the first variable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Series2Json {
    #[serde(default = "default_vars")]
    pub vars: [String; 2],
    pub order_x: usize,
    pub order_t: usize,
    pub coeffs: Vec<Vec<Complex64>>,
}

fn default_vars() -> [String; 2] {
    ["x".into(), "t".into()]
}

impl Series2Json {
    pub fn from_series(s: &Series2) -> Self {
        Series2Json {
            vars: default_vars(),
            order_x: s.order_x(),
            order_t: s.order_t(),
            coeffs: s.rows(),
        }
    }

    fn with_vars(s: &Series2, second: &str) -> Self {
        Series2Json {
            vars: ["x".into(), second.into()],
            ..Series2Json::from_series(s)
        }
    }

    pub fn to_series(&self) -> Result<Series2> {
        if self.coeffs.len() != self.order_x + 1
            || self.coeffs.iter().any(|r| r.len() != self.order_t + 1)
        {
            return Err(Error::InvalidArgument(format!(
                "bivariate table must be {}x{}",
                self.order_x + 1,
                self.order_t + 1
            )));
        }
        Series2::from_rows(self.coeffs.clone())
    }
}

/// `{"frame": "xy", "p": Series2, "q": Series2}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OneFormJson {
    pub frame: String,
    pub p: Series2Json,
    pub q: Series2Json,
}

impl OneFormJson {
    pub fn from_form(form: &OneForm) -> Self {
        let second = match form.frame() {
            Frame::Xy => "y",
            Frame::Xt => "t",
        };
        OneFormJson {
            frame: form.frame().as_str().into(),
            p: Series2Json::with_vars(form.p(), second),
            q: Series2Json::with_vars(form.q(), second),
        }
    }

    pub fn to_form(&self) -> Result<OneForm> {
        let frame = match self.frame.as_str() {
            "xy" => Frame::Xy,
            "xt" => Frame::Xt,
            other => return Err(Error::InvalidArgument(format!("unknown frame {other:?}"))),
        };
        OneForm::new(frame, self.p.to_series()?, self.q.to_series()?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoebiusJson {
    pub a: Complex64,
    pub b: Complex64,
}

impl MoebiusJson {
    pub fn from_moebius(g: &Moebius) -> Self {
        MoebiusJson { a: g.a(), b: g.b() }
    }

    pub fn to_moebius(&self) -> Result<Moebius> {
        Moebius::new(self.a, self.b)
    }
}

/// `{"num": [[re, im], ...], "den": [[re, im], ...]}`, lowest power first.
/// A missing `den` means 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalMapJson {
    pub num: Vec<Complex64>,
    #[serde(default = "unit")]
    pub den: Vec<Complex64>,
}

fn unit() -> Vec<Complex64> {
    vec![Complex64::new(1.0, 0.0)]
}

impl RationalMapJson {
    pub fn from_map(r: &RationalMap) -> Self {
        RationalMapJson {
            num: r.num().coeffs().to_vec(),
            den: r.den().coeffs().to_vec(),
        }
    }

    pub fn to_map(&self) -> Result<RationalMap> {
        RationalMap::new(Poly::new(self.num.clone()), Poly::new(self.den.clone()))
    }
}

/// `{"num": Series2, "den": Series2}`; a missing `den` means 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalFamilyJson {
    pub num: Series2Json,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<Series2Json>,
}

impl RationalFamilyJson {
    pub fn from_family(f: &RationalFamily) -> Self {
        RationalFamilyJson {
            num: Series2Json::from_series(f.num()),
            den: Some(Series2Json::from_series(f.den())),
        }
    }

    pub fn to_family(&self) -> Result<RationalFamily> {
        let num = self.num.to_series()?;
        match &self.den {
            Some(den) => RationalFamily::new(num, den.to_series()?),
            None => RationalFamily::polynomial(num),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_round_trip() {
        let f = Series1::from_real(&[0.0, -1.0, 2.0, -4.0]);
        let text = serde_json::to_string(&SeriesJson::from_series(&f)).unwrap();
        assert_eq!(
            text,
            r#"{"var":"t","order":3,"coeffs":[[0.0,0.0],[-1.0,0.0],[2.0,0.0],[-4.0,0.0]]}"#
        );
        let back: SeriesJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_series().unwrap(), f);
    }

    #[test]
    fn length_must_match_order() {
        let bad: SeriesJson =
            serde_json::from_str(r#"{"order":2,"coeffs":[[0,0],[1,0]]}"#).unwrap();
        assert!(bad.to_series().is_err());
    }

    #[test]
    fn involution_carries_verified_order() {
        let inv = Involution::linear(5);
        let text = serde_json::to_value(SeriesJson::from_involution(&inv)).unwrap();
        assert_eq!(text["verified_order"], 5);
    }

    #[test]
    fn form_round_trip() {
        let p = Series2::from_terms(3, 3, &[(0, 2, 1.0), (3, 0, 0.5)]);
        let q = Series2::from_terms(3, 3, &[(1, 1, -1.0)]);
        let form = OneForm::new(Frame::Xy, p, q).unwrap();
        let json = OneFormJson::from_form(&form);
        assert_eq!(json.p.vars, ["x".to_string(), "y".to_string()]);
        let text = serde_json::to_string(&json).unwrap();
        let back: OneFormJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_form().unwrap(), form);
    }

    #[test]
    fn map_defaults_to_polynomial() {
        let r: RationalMapJson = serde_json::from_str(r#"{"num":[[0,0],[0,0],[1,0]]}"#).unwrap();
        assert_eq!(r.to_map().unwrap().degree(), 2);
    }
}
