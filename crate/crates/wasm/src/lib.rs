//! Browser bindings. Each export takes plain strings/numbers and returns a
//! JSON string; the pure functions underneath are what the tests exercise.

use quatlie_core::error::{Error, Result};
use quatlie_core::linalg::{mj_embed, QuatMatrix};
use quatlie_core::quaternification::{quaternify, run_check, BUILD_CHECKS};
use quatlie_core::rho::{verify_h_independence, verify_ideal_kernel};
use quatlie_core::roots::{cartan_matrix, CartanMatrix, TypeLabel};
use quatlie_core::scalars::{format_rational, parse_rational, quaternion_to_strings, GaussianRational, Quaternion};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest ambient size the page will build; keeps a single-threaded build
/// to a few seconds.
pub const DEMO_MAX_N: usize = 6;

pub const DEMO_MAX_DEGREE: usize = 6;

fn parse_quaternion(s: &str) -> Result<Quaternion> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!("expected 4 comma-separated rationals, got {:?}", s)));
    }
    let mut c = parts.iter().map(|p| parse_rational(p));
    let mut next = || c.next().expect("four parts");
    Ok(Quaternion::from_coords([next()?, next()?, next()?, next()?]))
}

fn gaussian(z: &GaussianRational) -> String {
    let re = format_rational(&z.re);
    let im = format_rational(&z.im);
    let (neg, abs) = match im.strip_prefix('-') {
        Some(a) => (true, a),
        None => (false, im.as_str()),
    };
    let imag = if abs == "1" { "i".to_string() } else { format!("{abs}i") };
    match (re.as_str(), abs) {
        (_, "0") => re,
        ("0", _) if neg => format!("-{imag}"),
        ("0", _) => imag,
        _ => format!("{re} {} {imag}", if neg { "-" } else { "+" }),
    }
}

/// Product `x y` with its conjugations and the 2x2 complex MJ image.
pub fn product_report(x: &str, y: &str) -> Result<Value> {
    let (x, y) = (parse_quaternion(x)?, parse_quaternion(y)?);
    let p = &x * &y;
    let mj = mj_embed(&QuatMatrix::from_rows(vec![vec![p.clone()]])?).to_complex();
    let mj_rows: Vec<Vec<String>> = (0..2).map(|r| (0..2).map(|c| gaussian(mj.get(r, c))).collect()).collect();
    Ok(json!({
        "product": quaternion_to_strings(&p),
        "reverse": quaternion_to_strings(&(&y * &x)),
        "sigma": quaternion_to_strings(&p.sigma()),
        "tau": quaternion_to_strings(&p.tau()),
        "mj": mj_rows,
    }))
}

/// Builds the quaternification and reports its weight spaces and checks.
pub fn algebra_report(type_label: &str, rank: usize) -> Result<Value> {
    let t: TypeLabel = type_label.parse()?;
    t.check_rank(rank)?;
    if t.ambient_n(rank) > DEMO_MAX_N {
        return Err(Error::InvalidType(format!(
            "{t}{rank} lives in gl({},H); the demo builds up to gl({DEMO_MAX_N},H)",
            t.ambient_n(rank)
        )));
    }
    let g = quaternify(t, rank)?;
    let checks: Vec<Value> = BUILD_CHECKS
        .iter()
        .map(|name| {
            let c = run_check(&g, name)?;
            Ok(json!({
                "name": c.name,
                "passed": c.passed,
                "instances": c.instances,
                "failures": c.failure_count,
                "first_failure": c.failures.first(),
            }))
        })
        .collect::<Result<_>>()?;
    let spaces: Vec<Value> = g
        .weight_spaces
        .iter()
        .map(|w| json!({"root": w.root.coeffs, "weight": w.weight.values, "dim": w.indices.len()}))
        .collect();
    Ok(json!({
        "type": t.to_string(),
        "rank": rank,
        "n": g.n,
        "dim": g.dim(),
        "cartan": g.cartan.rows(),
        "dim_k": g.k_part.len(),
        "dim_h_r": g.hr_basis.len(),
        "dim_h_r_perp": g.hr_perp_basis.len(),
        "residual": g.residual.len(),
        "weight_spaces": spaces,
        "checks": checks,
    }))
}

fn parse_cartan(s: &str) -> Result<CartanMatrix> {
    let rows = s
        .split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| {
            r.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{x:?}: {e}"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    CartanMatrix::from_rows(rows)
}

/// Ideal-kernel families and h/Jh independence for a Cartan matrix given
/// either as a type label ("B2") or as rows ("2,-1;-1,2").
pub fn rho_report(cartan: &str, degree: usize) -> Result<Value> {
    if !(2..=DEMO_MAX_DEGREE).contains(&degree) {
        return Err(Error::OutOfRange(format!("degree {degree} (2..={DEMO_MAX_DEGREE})")));
    }
    let s = cartan.trim();
    let cm = match s.get(..1).map(str::parse::<TypeLabel>) {
        Some(Ok(t)) => cartan_matrix(t, s[1..].trim().parse().map_err(|_| Error::Parse(format!("rank in {s:?}")))?)?,
        _ => parse_cartan(s)?,
    };
    let families: Vec<Value> = verify_ideal_kernel(&cm, degree)?
        .into_iter()
        .map(|r| {
            json!({
                "family": r.family,
                "formula": r.formula,
                "instances": r.instances_checked,
                "failures": r.failures.len(),
                "first_failure": r.failures.first(),
            })
        })
        .collect();
    let ind = verify_h_independence(&cm, degree)?;
    Ok(json!({
        "cartan": cm.rows(),
        "determinant": cm.determinant(),
        "families": families,
        "rank_h": ind.rank_h,
        "rank_Jh": ind.rank_jh,
        "expected_rank": ind.expected,
        "words": ind.words,
    }))
}

fn to_js(r: Result<Value>) -> std::result::Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn quaternion_product(x: &str, y: &str) -> std::result::Result<String, JsError> {
    to_js(product_report(x, y))
}

#[wasm_bindgen]
pub fn quaternify_summary(type_label: &str, rank: usize) -> std::result::Result<String, JsError> {
    to_js(algebra_report(type_label, rank))
}

#[wasm_bindgen]
pub fn rho_check(cartan: &str, degree: usize) -> std::result::Result<String, JsError> {
    to_js(rho_report(cartan, degree))
}
