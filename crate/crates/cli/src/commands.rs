use num_traits::Pow;
use serde_json::json;

use chow_core::algebra::{p_class, Rational};
use chow_core::git::{
    basepoint_free, torus_stable_with, BasepointStatus, MapTuple, MapTupleJson, ProbeConfig,
    DEFAULT_PROBE_SEED,
};
use chow_core::nonlinear::generator_names;
use chow_core::projbundle::{pushforward as push, XiPolynomial};
use chow_core::{Error, GrassmannRing, NonlinearRing, Result};

use crate::expr::{nonlinear_element, schubert_element};
use crate::output::Report;

/// Largest `r` (and `n`) accepted by the ring commands.
pub const MAX_R: u32 = 10;
pub const MAX_D: u32 = 12;

pub fn usage(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}

pub fn check_ring(k: u32, r: u32, d: u32) -> Result<NonlinearRing> {
    if k < 1 || k > r {
        return Err(usage(format!("need 1 <= k <= r, got k={k}, r={r}")));
    }
    if r > MAX_R {
        return Err(usage(format!("r={r} exceeds the supported bound {MAX_R}")));
    }
    if !(1..=MAX_D).contains(&d) {
        return Err(usage(format!("need 1 <= d <= {MAX_D}, got d={d}")));
    }
    NonlinearRing::new(k, r, d)
}

/// `--seed`, then `$CHOW_SEED`, then the built-in default.
pub fn resolve_seed(explicit: Option<u64>) -> Result<u64> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var("CHOW_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("CHOW_SEED={v:?} is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_PROBE_SEED),
    }
}

fn ring_name(ring: &NonlinearRing) -> String {
    format!("Ch({},{},{})", ring.k(), ring.r(), ring.d())
}

fn relation_rows(ring: &NonlinearRing) -> (Vec<String>, serde_json::Value) {
    let names = generator_names(ring.num_generators());
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let rels = ring.scaled_relations();
    let text: Vec<String> = rels.iter().map(|f| f.display_with(&refs)).collect();
    let json = rels
        .iter()
        .zip(&text)
        .map(|(f, t)| json!({ "text": t, "terms": f.to_records() }))
        .collect();
    (text, json)
}

pub fn ring(k: u32, r: u32, d: u32) -> Result<Report> {
    let ring = check_ring(k, r, d)?;
    let names = generator_names(ring.num_generators());
    let gens: Vec<_> = names
        .iter()
        .zip(ring.generator_degrees())
        .map(|(n, deg)| json!({ "name": n, "degree": deg }))
        .collect();
    let (rel_text, rel_json) = relation_rows(&ring);
    let dims = ring.grassmannian().poincare_dims();
    let json = json!({
        "k": k, "r": r, "d": d,
        "generators": gens,
        "relations": rel_json,
        "poincare_dims": dims,
        "dimension": ring.grassmannian().dimension(),
    });
    let gen_text = if names.is_empty() {
        "(none: point ring)".to_owned()
    } else {
        names
            .iter()
            .zip(ring.generator_degrees())
            .map(|(n, deg)| format!("{n} (degree {deg})"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let dims_text = dims
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    Ok(Report::new(json)
        .row("ring", ring_name(&ring))
        .row("generators", gen_text)
        .rows("relations", rel_text)
        .row("poincare dims", dims_text)
        .row("dimension", ring.grassmannian().dimension().to_string()))
}

pub fn relations(k: u32, r: u32, d: u32) -> Result<Report> {
    let ring = check_ring(k, r, d)?;
    let (text, json) = relation_rows(&ring);
    Ok(
        Report::new(json!({ "k": k, "r": r, "d": d, "relations": json }))
            .row("ring", ring_name(&ring))
            .rows("relations", text),
    )
}

pub fn multiply(k: u32, r: u32, d: u32, a: &str, b: &str) -> Result<Report> {
    let ring = check_ring(k, r, d)?;
    if d == 1 {
        let x = schubert_element(&ring, a)?;
        let y = schubert_element(&ring, b)?;
        let p = ring.grassmannian().multiply(&x, &y)?;
        return Ok(
            Report::new(serde_json::to_value(p.to_json()).expect("json"))
                .row("ring", ring_name(&ring))
                .row("product", p.to_string()),
        );
    }
    let x = nonlinear_element(&ring, a)?;
    let y = nonlinear_element(&ring, b)?;
    let p = ring.nl_multiply(&x, &y)?;
    Ok(
        Report::new(serde_json::to_value(p.to_json()).expect("json"))
            .row("ring", ring_name(&ring))
            .row("product", p.to_string()),
    )
}

pub fn lambda(k: u32, r: u32, d: u32, element: &str) -> Result<Report> {
    let ring = check_ring(k, r, d)?;
    let x = nonlinear_element(&ring, element)?;
    let y = ring.lambda_map(&x)?;
    Ok(
        Report::new(serde_json::to_value(y.to_json()).expect("json"))
            .row("ring", ring_name(&ring))
            .row("element", x.to_string())
            .row("image", y.to_string()),
    )
}

pub fn lambda_inv(k: u32, r: u32, d: u32, element: &str) -> Result<Report> {
    let ring = check_ring(k, r, d)?;
    let y = schubert_element(&ring, element)?;
    let x = ring.lambda_inverse(&y)?;
    Ok(
        Report::new(serde_json::to_value(x.to_json()).expect("json"))
            .row("ring", ring_name(&ring))
            .row("class", y.to_string())
            .row("preimage", x.to_string()),
    )
}

pub fn pushforward(k: u32, n: u32, power: u32, d: u32) -> Result<Report> {
    if k > n || n > MAX_R {
        return Err(usage(format!("need k <= n <= {MAX_R}, got k={k}, n={n}")));
    }
    if !(1..=MAX_D).contains(&d) {
        return Err(usage(format!("need 1 <= d <= {MAX_D}, got d={d}")));
    }
    if power > 3 * MAX_R {
        return Err(usage(format!("power {power} is too large")));
    }
    let g = GrassmannRing::new(k, n)?;
    let scale = Rational::from_integer(num_bigint_pow(d, power));
    let lhs = push(&XiPolynomial::xi_power(&g, power as usize).scale(&scale));
    let expected = if power >= k {
        g.to_schubert(&p_class((power - k) as usize, k))?
            .scale(&scale)
    } else {
        g.zero()
    };
    let agrees = lhs == expected;
    let mut report = Report::new(json!({
        "k": k, "n": n, "power": power, "d": d,
        "pushforward": lhs.to_json(),
        "p_class": expected.to_json(),
        "agrees": agrees,
    }))
    .row("ring", format!("G(P^{k}, P^{n})"))
    .row("pushforward", lhs.to_string())
    .row("d^l p_(l-k)", expected.to_string())
    .row("agrees", agrees.to_string());
    report.passed = agrees;
    Ok(report)
}

fn num_bigint_pow(d: u32, power: u32) -> num_bigint::BigInt {
    num_bigint::BigInt::from(d).pow(power)
}

fn read_tuple(arg: &str) -> Result<MapTuple> {
    let text = match arg.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?
        }
        None => arg.to_owned(),
    };
    let json: MapTupleJson =
        serde_json::from_str(text.trim()).map_err(|e| Error::Parse(e.to_string()))?;
    MapTuple::from_json(&json)
}

pub fn basepoint_text(status: &BasepointStatus) -> String {
    serde_json::to_value(status)
        .ok()
        .and_then(|v| {
            let s = v["status"].as_str()?.to_owned();
            Some(
                match (v.get("point"), v.get("factor"), v.get("points_checked")) {
                    (Some(p), _, _) => format!("{s} at {p}"),
                    (_, Some(f), _) => format!("{s}: common factor {f}"),
                    (_, _, Some(c)) => format!("{s} after {c} points"),
                    _ => s,
                },
            )
        })
        .unwrap_or_default()
}

pub fn stability(
    tuple: &str,
    q: u32,
    samples: usize,
    basis_changes: usize,
    seed: Option<u64>,
) -> Result<Report> {
    let m = read_tuple(tuple)?;
    let seed = resolve_seed(seed)?;
    let status = basepoint_free(&m);
    let config = ProbeConfig {
        weight_samples: samples,
        basis_changes,
        seed,
    };
    let report = torus_stable_with(&m, q, &config)?;
    let mut out = Report::new(json!({
        "basepoint": status,
        "report": report,
    }))
    .row("basepoint", basepoint_text(&status))
    .row("verdict", report.verdict.clone())
    .row("probes", report.probes.to_string())
    .row("seed", seed.to_string());
    if let Some(f) = &report.counterexample {
        out = out.row(
            "counterexample",
            format!("w={:?} basis={:?}: {}", f.weight, f.basis, f.reason),
        );
    }
    out.passed = report.passed();
    Ok(out)
}
