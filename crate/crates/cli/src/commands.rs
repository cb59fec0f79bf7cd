use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use folium_core::conjugation_path::{gt_path, path_report};
use folium_core::foliation::{blow_up, involution_of, is_t1};
use folium_core::involution::{check_involution, g_orbit_equivalent, OrbitOutcome};
use folium_core::json::{
    MoebiusJson, OneFormJson, RationalFamilyJson, RationalMapJson, SeriesJson,
};
use folium_core::rational::{
    classify_critical_curves, critical_data, monodromy_group, quintic_search, quintic_verify,
    verify_dr_factor, Branch, MonodromyOptions, Permutation, Point,
};
use folium_core::{Complex64, Error};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::config::RunConfig;

/// A domain precondition that failed in the front end itself.
pub fn domain(message: impl Into<String>) -> anyhow::Error {
    anyhow!(Error::InvalidArgument(message.into()))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| domain(format!("{}: {e}", path.display())))
}

/// Parses `re`, `re,im` or `inf`.
pub fn parse_point(s: &str) -> std::result::Result<Point, String> {
    let s = s.trim();
    if matches!(s, "inf" | "infinity" | "∞") {
        return Ok(Point::Infinity);
    }
    parse_complex(s).map(Point::Finite)
}

pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("{s:?} is not of the form re or re,im")),
    }
}

fn to_value<T: serde::Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

pub fn blowup(form: &Path) -> Result<Value> {
    let form = read_json::<OneFormJson>(form)?.to_form()?;
    let (blown, k) = blow_up(&form)?;
    Ok(json!({ "k": k, "form": OneFormJson::from_form(&blown) }))
}

pub fn t1(cfg: &RunConfig, form: &Path) -> Result<Value> {
    let form = read_json::<OneFormJson>(form)?.to_form()?;
    Ok(match is_t1(&form, cfg.coef_tol)? {
        Ok(beta) => json!({ "t1": true, "beta": beta }),
        Err(failure) => json!({
            "t1": false,
            "failure": failure,
            "reason": failure.to_string(),
        }),
    })
}

pub fn involution(cfg: &RunConfig, form: &Path) -> Result<Value> {
    let form = read_json::<OneFormJson>(form)?.to_form()?;
    let inv = involution_of(&form, cfg.order, cfg.coef_tol)?;
    Ok(to_value(SeriesJson::from_involution(&inv)))
}

pub fn check_inv(cfg: &RunConfig, series: &Path, k: Option<usize>) -> Result<Value> {
    let f = read_json::<SeriesJson>(series)?.to_series()?;
    let k = k.unwrap_or(f.order());
    Ok(to_value(check_involution(&f, k, cfg.coef_tol)?))
}

pub fn orbit(cfg: &RunConfig, first: &Path, second: &Path, k: Option<usize>) -> Result<Value> {
    let i1 = read_json::<SeriesJson>(first)?.to_involution(cfg.coef_tol)?;
    let i2 = read_json::<SeriesJson>(second)?.to_involution(cfg.coef_tol)?;
    let k = k.unwrap_or(i1.verified_order().min(i2.verified_order()));
    Ok(
        match g_orbit_equivalent(&i1, &i2, k, &cfg.tolerances(), cfg.seed)? {
            OrbitOutcome::Equivalent {
                witness,
                residual,
                method,
            } => json!({
                "equivalent": true,
                "k": k,
                "witness": MoebiusJson::from_moebius(&witness),
                "residual": residual,
                "method": method,
            }),
            OrbitOutcome::NotEquivalent {
                order,
                residual,
                method,
            } => json!({
                "equivalent": false,
                "k": k,
                "obstruction_order": order,
                "residual": residual,
                "method": method,
            }),
        },
    )
}

pub fn gtpath(cfg: &RunConfig, inv: &Path, m: usize, u: Option<Complex64>) -> Result<Value> {
    let f = read_json::<SeriesJson>(inv)?.to_involution(cfg.coef_tol)?;
    let report = path_report(&f, m, cfg.coef_tol)?;
    let mut out = json!({
        "m": report.m,
        "intercept": report.intercept,
        "slope": report.slope,
        "jet_zero_through": report.jet_zero_through,
        "alpha_prime": SeriesJson::from_series(&report.alpha_prime),
    });
    if let Some(u) = u {
        let path = gt_path(&f, m, u)?;
        out["u"] = to_value(u);
        out["coefficient_m"] = to_value(report.coefficient_m(u));
        out["path"] = to_value(SeriesJson::from_series(&path));
    }
    Ok(out)
}

pub fn norms(series: &Path, other: Option<&Path>) -> Result<Value> {
    let f = read_json::<SeriesJson>(series)?.to_series()?;
    let mut out = json!({ "norm_d": f.norm_d(), "norm_l1": f.norm_l1() });
    if let Some(other) = other {
        let g = read_json::<SeriesJson>(other)?.to_series()?;
        let diff = &f - &g;
        out["distance_d"] = to_value(diff.norm_d());
        out["distance_l1"] = to_value(diff.norm_l1());
    }
    Ok(out)
}

pub fn critical(cfg: &RunConfig, map: &Path) -> Result<Value> {
    let r = read_json::<RationalMapJson>(map)?.to_map()?;
    let data = critical_data(&r, cfg.root_tol)?;
    let sum: usize = data.iter().map(|c| c.order).sum();
    Ok(json!({
        "degree": r.degree(),
        "critical": data,
        "order_sum": sum,
    }))
}

fn permutation_value(p: &Permutation) -> Value {
    json!({
        "cycles": p.to_string(),
        "images": p.images().iter().map(|i| i + 1).collect::<Vec<_>>(),
        "cycle_type": p.cycle_type(),
    })
}

pub fn monodromy(cfg: &RunConfig, map: &Path, around: Option<Point>) -> Result<Value> {
    let r = read_json::<RationalMapJson>(map)?.to_map()?;
    let opts = MonodromyOptions {
        root_tol: cfg.root_tol,
        ..MonodromyOptions::default()
    };
    let group = monodromy_group(&r, &opts)?;
    let mut out = json!({
        "degree": group.degree,
        "base": group.base,
        "values": group.values,
        "generators": group.generators.iter().map(permutation_value).collect::<Vec<_>>(),
        "product_is_identity": group.product_is_identity,
        "transitive": group.transitive,
        "group_order": group.order,
    });
    if let Some(v) = around {
        let (k, dist) = group
            .values
            .iter()
            .enumerate()
            .map(|(k, w)| (k, w.chordal(v)))
            .fold(
                (usize::MAX, f64::INFINITY),
                |a, b| if b.1 < a.1 { b } else { a },
            );
        if k == usize::MAX || dist > 1e-6 {
            return Err(domain(format!("{v:?} is not a critical value of the map")));
        }
        out["around"] = to_value(group.values[k]);
        out["permutation"] = permutation_value(&group.generators[k]);
    }
    Ok(out)
}

pub fn classify(cfg: &RunConfig, family: &Path) -> Result<Value> {
    let fam = read_json::<RationalFamilyJson>(family)?.to_family()?;
    let c = classify_critical_curves(&fam, cfg.coef_tol)?;
    let curves: Vec<Value> = c
        .curves
        .iter()
        .map(|curve| {
            let branch = match &curve.branch {
                Branch::Graph { f } => json!({ "kind": "graph", "f": SeriesJson::from_series(f) }),
                Branch::Tangent { t0, g, l } => json!({
                    "kind": "tangent",
                    "t0": t0,
                    "g": SeriesJson { var: "s".into(), ..SeriesJson::from_series(g) },
                    "l": l,
                }),
            };
            let check = verify_dr_factor(&fam, &curve.branch, curve.order, cfg.coef_tol);
            json!({
                "branch": branch,
                "order": curve.order,
                "type": curve.kind,
                "value": curve.value,
                "tangency": curve.branch.tangency(),
                "dr_factor": check,
            })
        })
        .collect();
    Ok(json!({ "curves": curves, "unsupported": c.unsupported }))
}

pub fn quintic(cfg: &RunConfig, coeffs: Option<&str>) -> Result<Value> {
    if let Some(list) = coeffs {
        let parsed: std::result::Result<Vec<f64>, _> =
            list.split(',').map(|s| s.trim().parse::<f64>()).collect();
        let parsed = parsed.map_err(|e| domain(format!("coefficients: {e}")))?;
        let z: Vec<Complex64> = parsed.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        return Ok(to_value(quintic_verify(&z)));
    }
    let (cert, attempts) = quintic_search(cfg.seed, cfg.budget)?;
    let mut out = to_value(folium_core::rational::QuinticVerdict::Certified(cert));
    out["attempts"] = to_value(attempts);
    Ok(out)
}

/// Exit status for a failed command: 3 for numerical failures of the core,
/// 2 for everything else.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(e) if e.is_numerical() => 3,
        _ => 2,
    }
}

pub fn error_kind(err: &anyhow::Error) -> &'static str {
    if exit_code(err) == 3 {
        "numerical"
    } else {
        "domain"
    }
}
