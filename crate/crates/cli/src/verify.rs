//! Invariant suites behind `chow verify`. Every bound is inclusive and
//! every suite sweeps all parameters up to its bounds.

use clap::Args;
use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use chow_core::algebra::{
    chern_series, monomials_of_degree, p_class, series_inverse, PClasses, Rational,
};
use chow_core::git::{
    proof_witness, random_basepoint_free, torus_stable_with, MapTuple, ProbeConfig, WeightVector,
    WitnessFailure,
};
use chow_core::nonlinear::verify_sigma_basis;
use chow_core::projbundle::{bilt_expected, bilt_pushforward, pushforward, XiPolynomial};
use chow_core::{GradedPolynomial, GrassmannRing, NonlinearRing, Result, TruncatedSeries};

use crate::commands::{resolve_seed, usage};
use crate::output::Report;
use crate::Suite;

/// Bounds shared by the suites; each suite reads the ones it needs and
/// falls back to its own defaults.
#[derive(Args, Debug, Clone, Default)]
pub struct Bounds {
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long)]
    pub alpha: Option<u32>,
    /// Random elements per ring (lambda) or weight vectors per torus (git).
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub basis_changes: Option<usize>,
    #[arg(long)]
    pub tuples: Option<usize>,
    /// Defaults to $CHOW_SEED, then to a fixed seed.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Serialize)]
struct Case {
    name: String,
    passed: bool,
    detail: String,
}

fn case(name: String, passed: bool, detail: impl Into<String>) -> Case {
    Case {
        name,
        passed,
        detail: detail.into(),
    }
}

fn bounded(name: &str, value: Option<u32>, default: u32, max: u32) -> Result<u32> {
    let v = value.unwrap_or(default);
    if v > max {
        return Err(usage(format!(
            "--{name} {v} exceeds the supported bound {max}"
        )));
    }
    Ok(v)
}

pub fn run(suite: Suite, b: &Bounds) -> Result<Report> {
    let mut seed = None;
    let cases = match suite {
        Suite::Series => series(b)?,
        Suite::Relations => relations(b)?,
        Suite::Duality => duality(b)?,
        Suite::Lambda => {
            let s = resolve_seed(b.seed)?;
            seed = Some(s);
            lambda(b, s)?
        }
        Suite::Basis => basis(b)?,
        Suite::Pushforward => push(b)?,
        Suite::Git => {
            let s = resolve_seed(b.seed)?;
            seed = Some(s);
            git(b, s)?
        }
    };
    let passed = cases.iter().all(|c| c.passed);
    let name = format!("{suite:?}").to_lowercase();
    let mut report = Report::new(json!({
        "suite": name,
        "seed": seed,
        "passed": passed,
        "cases": cases,
    }));
    for c in &cases {
        let status = if c.passed { "PASS" } else { "FAIL" };
        report = report.row(status, format!("{}: {}", c.name, c.detail));
    }
    if let Some(s) = seed {
        report = report.row("seed", s.to_string());
    }
    report = report.row(
        "result",
        format!(
            "{name}: {} of {} cases passed",
            cases.iter().filter(|c| c.passed).count(),
            cases.len()
        ),
    );
    report.passed = passed;
    Ok(report)
}

fn series(b: &Bounds) -> Result<Vec<Case>> {
    let kmax = bounded("k", b.k, 3, 4)?;
    let order = b.order.unwrap_or(12);
    if order > 30 {
        return Err(usage("--order exceeds the supported bound 30"));
    }
    let mut out = Vec::new();
    for k in 0..=kmax {
        let c = chern_series(k, order);
        let inv = series_inverse(&c, order)?;
        let prod = c.mul_truncated(&inv)?;
        let identity = prod == TruncatedSeries::one(c.degrees(), order);
        let memo = PClasses::new(k);
        let memo_ok = (0..=order).all(|j| memo.get(j) == *inv.coeff(j));
        out.push(case(
            format!("k={k} order={order}"),
            identity && memo_ok,
            format!("c(S)*p = 1: {identity}, memoized p_j agree: {memo_ok}"),
        ));
    }
    Ok(out)
}

fn relations(b: &Bounds) -> Result<Vec<Case>> {
    let rmax = bounded("r", b.r, 5, 7)?;
    let dmax = bounded("d", b.d, 3, 5)?;
    let mut out = Vec::new();
    for r in 2..=rmax {
        for k in 1..r {
            let g = GrassmannRing::new(k, r)?;
            let mut bad = Vec::new();
            for j in 1..=r + 2 {
                let zero = g.to_schubert(&p_class(j as usize, k))?.is_zero();
                if zero != (j > r - k) {
                    bad.push(j);
                }
            }
            let mut scaled_ok = true;
            for d in 1..=dmax {
                let ring = NonlinearRing::new(k, r, d)?;
                for rel in ring.scaled_relations() {
                    scaled_ok &= ring.lambda_poly(rel)?.is_zero();
                }
            }
            out.push(case(
                format!("k={k} r={r}"),
                bad.is_empty() && scaled_ok,
                if bad.is_empty() {
                    format!("p_j = 0 exactly for {} < j <= {}; scaled relations vanish for d <= {dmax}: {scaled_ok}", r - k, r + 2)
                } else {
                    format!("wrong vanishing for j in {bad:?}")
                },
            ));
        }
    }
    Ok(out)
}

fn duality(b: &Bounds) -> Result<Vec<Case>> {
    let kmax = bounded("k", b.k, 2, 3)?;
    let rmax = bounded("r", b.r, 5, 7)?;
    let one = Rational::from_integer(1.into());
    let mut out = Vec::new();
    for k in 0..=kmax {
        for r in k.max(1)..=rmax {
            let g = GrassmannRing::new(k, r)?;
            let top = g.top_degree();
            let mut ok = true;
            for a in 0..=top {
                let rows = g.enumerate_partitions(a);
                let cols = g.enumerate_partitions(top - a);
                let mut ones = 0;
                let mut col_hits = vec![0usize; cols.len()];
                for lam in &rows {
                    let x = g.class(lam)?;
                    let mut row_hits = 0;
                    for (j, mu) in cols.iter().enumerate() {
                        let v = g.duality_pair(&x, &g.class(mu)?)?;
                        if v == one {
                            row_hits += 1;
                            col_hits[j] += 1;
                            ones += 1;
                            ok &= lam.complement(g.rows(), g.cols()).as_ref() == Some(mu);
                        } else if !v.is_zero() {
                            ok = false;
                        }
                    }
                    ok &= row_hits == 1;
                }
                ok &= col_hits.iter().all(|&h| h == 1) && ones == rows.len();
            }
            out.push(case(
                format!("k={k} r={r}"),
                ok,
                format!(
                    "pairing is the complement permutation in all {} degrees",
                    top + 1
                ),
            ));
        }
    }
    Ok(out)
}

fn random_poly(ring: &NonlinearRing, rng: &mut ChaCha8Rng) -> GradedPolynomial {
    let degrees = ring.generator_degrees().to_vec();
    let mut terms = Vec::new();
    for deg in 0..=ring.top_degree() + 1 {
        for e in monomials_of_degree(&degrees, deg) {
            if rng.gen_bool(0.5) {
                let c = Rational::new(
                    rng.gen_range(-5i64..=5).into(),
                    rng.gen_range(1i64..=4).into(),
                );
                terms.push((e, c));
            }
        }
    }
    GradedPolynomial::from_terms(&degrees, terms).expect("dense exponents")
}

fn lambda(b: &Bounds, seed: u64) -> Result<Vec<Case>> {
    let kmax = bounded("k", b.k, 2, 3)?;
    let rmax = bounded("r", b.r, 4, 6)?;
    let dmax = bounded("d", b.d, 3, 5)?;
    let samples = b.samples.unwrap_or(100);
    if samples > 10_000 {
        return Err(usage("--samples exceeds the supported bound 10000"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for k in 0..=kmax {
        for r in k.max(1)..=rmax {
            for d in 1..=dmax {
                let ring = NonlinearRing::new(k, r, d)?;
                let g = ring.grassmannian().clone();
                let mut failures: Vec<String> = Vec::new();
                if ring.lambda_map(&ring.one())? != g.one() {
                    failures.push("lambda(1) != 1".into());
                }
                // scaling law on generators and their pairwise products
                let dd = |e: u32| Rational::from_integer(BigInt::from(d).pow(e));
                let m = ring.num_generators() as u32;
                for a in 1..=m {
                    let sa = ring.generator(a)?;
                    if ring.lambda_map(&sa)? != g.special(a as i64).scale(&dd(k + a)) {
                        failures.push(format!("lambda(s{a})"));
                    }
                    for c in a..=m {
                        let prod = ring.nl_multiply(&sa, &ring.generator(c)?)?;
                        let expected = g
                            .multiply(&g.special(a as i64), &g.special(c as i64))?
                            .scale(&dd(2 * k + a + c));
                        if ring.lambda_map(&prod)? != expected {
                            failures.push(format!("lambda(s{a}*s{c})"));
                        }
                    }
                }
                // multiplicativity on normal-basis monomials
                let top = ring.top_degree();
                let basis: Vec<Vec<GradedPolynomial>> = (0..=top)
                    .map(|deg| {
                        Ok(ring
                            .normal_basis(deg)?
                            .into_iter()
                            .map(|e| {
                                GradedPolynomial::monomial(
                                    ring.generator_degrees(),
                                    e,
                                    Rational::from_integer(1.into()),
                                )
                                .expect("dense exponents")
                            })
                            .collect())
                    })
                    .collect::<Result<_>>()?;
                let mut pairs = 0;
                for da in 0..=top {
                    for db in da..=top - da {
                        for x in &basis[da as usize] {
                            let ex = ring.element(x)?;
                            let lx = ring.lambda_map(&ex)?;
                            for y in &basis[db as usize] {
                                let ey = ring.element(y)?;
                                pairs += 1;
                                let lhs = ring.lambda_map(&ring.nl_multiply(&ex, &ey)?)?;
                                if lhs != g.multiply(&lx, &ring.lambda_map(&ey)?)? {
                                    failures.push(format!("product in degrees {da}+{db}"));
                                }
                            }
                        }
                    }
                }
                let dims = g.poincare_dims();
                for deg in 0..=top + 1 {
                    let want = dims.get(deg as usize).copied().unwrap_or(0);
                    if ring.presentation_dim(deg) != want {
                        failures.push(format!("presentation dimension in degree {deg}"));
                    }
                }
                for _ in 0..samples {
                    let f = random_poly(&ring, &mut rng);
                    let x = ring.element(&f)?;
                    let y = ring.lambda_map(&x)?;
                    if y != ring.lambda_poly(&f)? || ring.lambda_inverse(&y)? != x {
                        failures.push("round trip".into());
                        break;
                    }
                }
                out.push(case(
                    format!("k={k} r={r} d={d}"),
                    failures.is_empty(),
                    if failures.is_empty() {
                        format!("{pairs} basis pairs, {samples} round trips")
                    } else {
                        failures.join(", ")
                    },
                ));
            }
        }
    }
    Ok(out)
}

fn basis(b: &Bounds) -> Result<Vec<Case>> {
    let rmax = bounded("r", b.r, 5, 8)?;
    let dmax = bounded("d", b.d, 3, 6)?;
    let mut out = Vec::new();
    for r in 1..=rmax {
        for d in 1..=dmax {
            let rep = verify_sigma_basis(r, d)?;
            out.push(case(
                format!("r={r} d={d}"),
                rep.passed,
                format!(
                    "{} basis elements, rank {}, dimension {}",
                    rep.count, rep.rank, rep.dimension
                ),
            ));
        }
    }
    Ok(out)
}

fn push(b: &Bounds) -> Result<Vec<Case>> {
    let kmax = bounded("k", b.k, 2, 3)?;
    let nmax = bounded("n", b.n, 6, 8)?;
    let rmax = bounded("r", b.r, 4, 5)?;
    let dmax = bounded("d", b.d, 3, 5)?;
    let amax = bounded("alpha", b.alpha, 3, 4)?;
    let mut out = Vec::new();
    for k in 0..=kmax {
        for n in k..=nmax {
            let g = GrassmannRing::new(k, n)?;
            let bad: Vec<u32> = (k..=n + 3)
                .filter(|&l| {
                    let lhs = pushforward(&XiPolynomial::xi_power(&g, l as usize));
                    lhs != g
                        .to_schubert(&p_class((l - k) as usize, k))
                        .expect("homogeneous")
                })
                .collect();
            out.push(case(
                format!("pushforward k={k} n={n}"),
                bad.is_empty(),
                if bad.is_empty() {
                    format!("xi^l -> p_(l-k) for {k} <= l <= {}", n + 3)
                } else {
                    format!("mismatch at l in {bad:?}")
                },
            ));
        }
    }
    for k in 0..=kmax {
        for r in k.max(1)..=rmax {
            let mut bad = Vec::new();
            for alpha in 0..=amax {
                let ambient = GrassmannRing::new(k, r + alpha + 2)?;
                for d in 1..=dmax {
                    if bilt_pushforward(&ambient, r, d, alpha)?
                        != bilt_expected(&ambient, r, d, alpha)?
                    {
                        bad.push((d, alpha));
                    }
                }
            }
            out.push(case(
                format!("line bundle k={k} r={r}"),
                bad.is_empty(),
                if bad.is_empty() {
                    format!("(d xi)^(r+1+alpha) -> d^(r+1+alpha) p_(r-k+1+alpha) for d <= {dmax}, alpha <= {amax}")
                } else {
                    format!("mismatch at (d, alpha) in {bad:?}")
                },
            ));
        }
    }
    Ok(out)
}

fn single_monomial(k: u32, d: u32, j: usize, count: usize) -> Result<MapTuple> {
    let n = k as usize + 1;
    let mut e = vec![0u32; n];
    e[j] = d;
    let form: Vec<(&[u32], i64)> = vec![(&e, 1)];
    let forms: Vec<&[(&[u32], i64)]> = vec![&form; count];
    MapTuple::from_terms(k, d, &forms)
}

fn git(b: &Bounds, seed: u64) -> Result<Vec<Case>> {
    let k = bounded("k", b.k, 1, 2)?;
    let dmax = bounded("d", b.d, 3, 4)?;
    let q = b.q.unwrap_or(k + 2);
    if q > 8 {
        return Err(usage("--q exceeds the supported bound 8"));
    }
    let samples = b.samples.unwrap_or(20);
    let basis_changes = b.basis_changes.unwrap_or(10);
    let tuples = b.tuples.unwrap_or(25);
    if samples > 1000 || basis_changes > 100 || tuples > 1000 {
        return Err(usage("probe counts exceed the supported bounds"));
    }
    let n = k as usize + 1;
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if q > k + 1 {
        for d in 1..=dmax {
            let mut probes = 0;
            let mut failure = None;
            for t in 0..tuples {
                let m = random_basepoint_free(k, d, &mut rng)?;
                let config = ProbeConfig {
                    weight_samples: samples,
                    basis_changes,
                    seed: seed.wrapping_add(t as u64),
                };
                let rep = torus_stable_with(&m, q, &config)?;
                probes += rep.probes;
                if let Some(f) = rep.counterexample {
                    failure = Some(format!(
                        "tuple {t}: w={:?} basis={:?}: {}",
                        f.weight, f.basis, f.reason
                    ));
                    break;
                }
            }
            out.push(case(
                format!("k={k} d={d} q={q}"),
                failure.is_none(),
                failure.unwrap_or_else(|| format!("{tuples} tuples, {probes} probes")),
            ));
        }
    }
    // at q = k + 1 the second-case weight can vanish
    let m = single_monomial(k, 1, 0, 2)?;
    let w = WeightVector::new(vec![-1; n])?;
    let boundary = proof_witness(&m, &w, k + 1);
    out.push(case(
        format!("boundary q={}", k + 1),
        matches!(&boundary, Ok(wit) if wit.value == 0),
        match &boundary {
            Ok(wit) => format!("w = (-1, ..., -1) gives {} = {}", wit.functional, wit.value),
            Err(e) => e.to_string(),
        },
    ));
    // a tuple vanishing at e_j has no witness for w = -e_j
    let mut all = true;
    for j in 0..n {
        let other = (j + 1) % n;
        let m = single_monomial(k, 2, other, 2)?;
        let mut w = vec![0; n];
        w[j] = -1;
        let got = proof_witness(&m, &WeightVector::new(w)?, k + 2);
        all &= got == Err(WitnessFailure::MissingCoordinateMonomial { j });
    }
    out.push(case(
        "coordinate basepoints".into(),
        all,
        format!("witness fails at every e_j, 0 <= j <= {k}"),
    ));
    Ok(out)
}
