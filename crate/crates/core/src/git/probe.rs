//! Probing stability over a finite family of one-parameter subgroups.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    basepoint_free, embed_state, hm_verdict, proof_witness, HmVerdict, MapTuple, WeightVector,
};
use crate::algebra::linalg::determinant;
use crate::algebra::{monomials_of_degree, GradedPolynomial, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_PROBE_SEED: u64 = 20_240_917;

/// Range of the sampled weights and basis-change entries.
const WEIGHT_RANGE: i64 = 10;
const BASIS_RANGE: i64 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeConfig {
    /// Random weight vectors per torus, on top of the fixed fan.
    pub weight_samples: usize,
    /// Random changes of basis, each probed like the standard torus.
    pub basis_changes: usize,
    pub seed: u64,
}

impl ProbeConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        ProbeConfig {
            weight_samples: samples,
            basis_changes: samples,
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeFailure {
    pub weight: Vec<i64>,
    /// `None` for the standard torus.
    pub basis: Option<Vec<Vec<i64>>>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusReport {
    /// `"torus-probed stable"` or `"not stable on a probed torus"`.
    pub verdict: String,
    pub probes: usize,
    pub seed: u64,
    pub q: u32,
    pub counterexample: Option<ProbeFailure>,
}

impl TorusReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Random integer matrix with entries in `[-3, 3]` and nonzero determinant.
pub fn random_invertible(n: usize, rng: &mut impl Rng) -> Vec<Vec<i64>> {
    loop {
        let g: Vec<Vec<i64>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| rng.gen_range(-BASIS_RANGE..=BASIS_RANGE))
                    .collect()
            })
            .collect();
        let as_rat: Vec<Vec<Rational>> = g
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| Rational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        if determinant(&as_rat) != Rational::from_integer(0.into()) {
            return g;
        }
    }
}

/// A tuple of `k + 2` forms of degree `d` with small integer coefficients
/// and no basepoint. For `k = 1` this is decided exactly; otherwise the first
/// `k + 1` forms are the pure powers `v_j*^d`, which have no common zero.
pub fn random_basepoint_free(k: u32, d: u32, rng: &mut impl Rng) -> Result<MapTuple> {
    let n = k as usize + 1;
    let degrees = vec![1u32; n];
    let monos = monomials_of_degree(&degrees, d);
    let random_form = |rng: &mut dyn rand::RngCore| {
        GradedPolynomial::from_terms(
            &degrees,
            monos.iter().map(|e| {
                (
                    e.clone(),
                    Rational::from_integer(rng.gen_range(-3i64..=3).into()),
                )
            }),
        )
        .expect("dense exponent vectors")
    };
    loop {
        let forms: Vec<GradedPolynomial> = if k == 1 {
            (0..=n).map(|_| random_form(rng)).collect()
        } else {
            let mut forms: Vec<GradedPolynomial> = (0..n)
                .map(|j| {
                    let mut e = vec![0u32; n];
                    e[j] = d;
                    GradedPolynomial::monomial(&degrees, e, Rational::from_integer(1.into()))
                        .expect("dense exponent vector")
                })
                .collect();
            forms.push(random_form(rng));
            forms
        };
        if forms.iter().all(GradedPolynomial::is_zero) {
            continue;
        }
        let m = MapTuple::new(k, n as u32, d, forms)?;
        if k != 1 || basepoint_free(&m).is_free() {
            return Ok(m);
        }
    }
}

/// `±e_j` and every `±1` sign pattern.
fn fan(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for j in 0..n {
        for s in [1, -1] {
            let mut w = vec![0; n];
            w[j] = s;
            out.push(w);
        }
    }
    for mask in 0..(1u32 << n) {
        out.push(
            (0..n)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect(),
        );
    }
    out
}

fn sampled_weights(n: usize, count: usize, rng: &mut impl Rng) -> Vec<Vec<i64>> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let w: Vec<i64> = (0..n)
            .map(|_| rng.gen_range(-WEIGHT_RANGE..=WEIGHT_RANGE))
            .collect();
        if w.iter().any(|&x| x != 0) {
            out.push(w);
        }
    }
    out
}

/// [`torus_stable_with`] using `samples` for both the weight and basis-change
/// counts and the default seed.
pub fn torus_stable(m: &MapTuple, q: u32, samples: usize) -> Result<TorusReport> {
    torus_stable_with(m, q, &ProbeConfig::new(samples, DEFAULT_PROBE_SEED))
}

/// Checks, for the fan, the sampled weights, and each sampled change of
/// basis, that the witness coordinate exists with positive weight and that
/// some coordinate has positive weight. Stops at the first failure.
pub fn torus_stable_with(m: &MapTuple, q: u32, config: &ProbeConfig) -> Result<TorusReport> {
    let n = m.num_variables();
    if q <= m.k() + 1 {
        return Err(Error::Precondition(format!(
            "q = {q} must exceed k + 1 = {}",
            m.k() + 1
        )));
    }
    if basepoint_free(m).has_basepoint() {
        return Err(Error::Precondition("tuple has a basepoint".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut weights = fan(n);
    weights.extend(sampled_weights(n, config.weight_samples, &mut rng));
    let mut tori: Vec<Option<Vec<Vec<i64>>>> = vec![None];
    for _ in 0..config.basis_changes {
        tori.push(Some(random_invertible(n, &mut rng)));
    }

    let mut probes = 0;
    let mut counterexample = None;
    'tori: for basis in tori {
        let moved = match &basis {
            None => m.clone(),
            Some(g) => m.change_basis(g)?,
        };
        let state = embed_state(&moved, q)?;
        for w in &weights {
            probes += 1;
            let wv = WeightVector::new(w.clone())?;
            let reason = match proof_witness(&moved, &wv, q) {
                Err(e) => Some(format!("no witness: {e}")),
                Ok(wit) if wit.value <= 0 => Some(format!("witness weight {} <= 0", wit.value)),
                Ok(wit) if !state.contains(&wit.functional) => {
                    Some(format!("witness {} is not a coordinate", wit.functional))
                }
                Ok(_) => match hm_verdict(&state, &wv)? {
                    HmVerdict::NonePositive { max } => {
                        Some(format!("largest coordinate weight is {max}"))
                    }
                    HmVerdict::PositiveWeightExists { .. } => None,
                },
            };
            if let Some(reason) = reason {
                counterexample = Some(ProbeFailure {
                    weight: w.clone(),
                    basis: basis.clone(),
                    reason,
                });
                break 'tori;
            }
        }
    }
    Ok(TorusReport {
        verdict: if counterexample.is_none() {
            "torus-probed stable".into()
        } else {
            "not stable on a probed torus".into()
        },
        probes,
        seed: config.seed,
        q,
        counterexample,
    })
}
