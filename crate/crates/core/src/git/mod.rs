//! Torus weights for the stability of basepoint-free tuples of forms.
//!
//! A tuple `[f_0, ..., f_r]` of degree-`d` forms on `P^k` is embedded in
//! `P(Det ⊗ (1 ⊕ Sym^q(Z) ⊕ Z))`, `Z` the space of such tuples, by
//! `f -> [1 ⊗ (1 ⊕ f^{⊗q} ⊕ f)]`. For a diagonal one-parameter subgroup with
//! integer weights `w_0, ..., w_k` on a basis `v_0, ..., v_k`, each nonzero
//! diagonal coordinate of that point has a weight that is a linear form in
//! `w`:
//!
//! - `1 ⊗ 1` has weight `sum w_i`;
//! - a monomial `v*^a` occurring in some `f_l` gives `sum w_i - <a, w>`;
//! - a product of `q` occurring monomials gives `sum w_i - sum_t <a_t, w>`.
//!
//! Conventions: `v_j` has weight `w_j`, `v_j*` weight `-w_j`, `Det` weight
//! `sum w_i`. Stability evidence for a weight vector is a nonzero coordinate
//! of positive weight. Only diagonal tori (optionally after an integer change
//! of basis) are probed, so a passing run is reported as "torus-probed",
//! never as a proof of stability.

mod basepoint;
mod probe;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

use crate::algebra::{GradedPolynomial, PolyRecord, Rational};
use crate::error::{Error, Result};

pub use basepoint::{basepoint_free, basepoint_free_with, Basepoint, BasepointStatus};
pub use probe::{
    random_basepoint_free, random_invertible, torus_stable, torus_stable_with, ProbeConfig,
    ProbeFailure, TorusReport, DEFAULT_PROBE_SEED,
};

/// Cap on the number of distinct weight functionals enumerated for one state.
pub const DEFAULT_FUNCTIONAL_BUDGET: usize = 100_000;

/// `r + 1` homogeneous forms of degree `d` in `k + 1` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapTuple {
    k: u32,
    r: u32,
    d: u32,
    forms: Vec<GradedPolynomial>,
}

/// Wire form `{"k","r","d","forms":[[{"exponents","coeff"}, ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapTupleJson {
    pub k: u32,
    pub r: u32,
    pub d: u32,
    pub forms: Vec<Vec<PolyRecord>>,
}

impl MapTuple {
    pub fn new(k: u32, r: u32, d: u32, forms: Vec<GradedPolynomial>) -> Result<Self> {
        if d < 1 {
            return Err(Error::Argument("form degree d must be at least 1".into()));
        }
        if forms.len() != r as usize + 1 {
            return Err(Error::Argument(format!(
                "expected {} forms, got {}",
                r + 1,
                forms.len()
            )));
        }
        let degrees = vec![1u32; k as usize + 1];
        for (l, f) in forms.iter().enumerate() {
            if f.degrees() != degrees.as_slice() {
                return Err(Error::ProfileMismatch(format!(
                    "form {l} is not a polynomial in {} variables",
                    k + 1
                )));
            }
            if !f.is_zero() && f.homogeneous_degree() != Some(d) {
                return Err(Error::Argument(format!(
                    "form {l} is not homogeneous of degree {d}"
                )));
            }
        }
        if forms.iter().all(GradedPolynomial::is_zero) {
            return Err(Error::Argument("all forms are zero".into()));
        }
        Ok(MapTuple { k, r, d, forms })
    }

    /// Convenience constructor from `(exponents, coefficient)` lists.
    pub fn from_terms(k: u32, d: u32, forms: &[&[(&[u32], i64)]]) -> Result<Self> {
        let degrees = vec![1u32; k as usize + 1];
        let polys = forms
            .iter()
            .map(|terms| {
                GradedPolynomial::from_terms(
                    &degrees,
                    terms
                        .iter()
                        .map(|(e, c)| (e.to_vec(), Rational::from_integer((*c).into()))),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let r = polys
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Argument("a map needs at least one form".into()))?
            as u32;
        MapTuple::new(k, r, d, polys)
    }

    pub fn from_json(json: &MapTupleJson) -> Result<Self> {
        let degrees = vec![1u32; json.k as usize + 1];
        let forms = json
            .forms
            .iter()
            .map(|f| GradedPolynomial::from_records(&degrees, f))
            .collect::<Result<Vec<_>>>()?;
        MapTuple::new(json.k, json.r, json.d, forms)
    }

    pub fn to_json(&self) -> MapTupleJson {
        MapTupleJson {
            k: self.k,
            r: self.r,
            d: self.d,
            forms: self
                .forms
                .iter()
                .map(GradedPolynomial::to_records)
                .collect(),
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn num_variables(&self) -> usize {
        self.k as usize + 1
    }

    pub fn forms(&self) -> &[GradedPolynomial] {
        &self.forms
    }

    /// Exponent vectors occurring with nonzero coefficient in some form.
    pub fn support(&self) -> BTreeSet<Vec<u32>> {
        self.forms
            .iter()
            .flat_map(|f| f.terms().map(|(e, _)| e.clone()))
            .collect()
    }

    /// Values of the forms at the coordinate point `e_j`, i.e. their
    /// coefficients of `(v_j*)^d`.
    pub fn values_at_coordinate_point(&self, j: usize) -> Vec<Rational> {
        let mut e = vec![0u32; self.num_variables()];
        e[j] = self.d;
        self.forms.iter().map(|f| f.coeff(&e)).collect()
    }

    pub fn scale(&self, c: &Rational) -> Result<MapTuple> {
        MapTuple::new(
            self.k,
            self.r,
            self.d,
            self.forms.iter().map(|f| f.scale(c)).collect(),
        )
    }

    /// Substitute `v_i* -> sum_j g[i][j] v_j*` in every form.
    pub fn change_basis(&self, g: &[Vec<i64>]) -> Result<MapTuple> {
        let n = self.num_variables();
        if g.len() != n || g.iter().any(|row| row.len() != n) {
            return Err(Error::Argument(format!("basis change must be {n}x{n}")));
        }
        let degrees = vec![1u32; n];
        let linear: Vec<GradedPolynomial> = g
            .iter()
            .map(|row| {
                GradedPolynomial::from_terms(
                    &degrees,
                    row.iter().enumerate().map(|(j, &c)| {
                        let mut e = vec![0u32; n];
                        e[j] = 1;
                        (e, Rational::from_integer(c.into()))
                    }),
                )
                .expect("dense exponent vectors")
            })
            .collect();
        let forms = self
            .forms
            .iter()
            .map(|f| {
                let mut out = GradedPolynomial::zero(&degrees);
                for (e, c) in f.terms() {
                    let mut term = GradedPolynomial::constant(&degrees, c.clone());
                    for (i, &p) in e.iter().enumerate() {
                        term = &term * &linear[i].pow(p);
                    }
                    out = &out + &term;
                }
                out
            })
            .collect();
        MapTuple::new(self.k, self.r, self.d, forms)
    }
}

/// Integer weights `w_0, ..., w_k`, not all zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(w: Vec<i64>) -> Result<Self> {
        if w.iter().all(|&x| x == 0) {
            return Err(Error::Argument(
                "weight vector must have a nonzero entry".into(),
            ));
        }
        Ok(WeightVector(w))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// Linear form `w -> <a, w>` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Functional(Vec<i64>);

impl Functional {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Functional(coeffs)
    }

    /// The `Det ⊗ 1` weight `sum w_i`.
    pub fn determinant(n: usize) -> Self {
        Functional(vec![1; n])
    }

    /// `sum w_i - <a, w>` for a (sum of) monomial exponent vector(s) `a`.
    pub fn det_minus(exps: &[u32]) -> Self {
        Functional(exps.iter().map(|&a| 1 - a as i64).collect())
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn eval(&self, w: &WeightVector) -> i64 {
        self.0.iter().zip(w.as_slice()).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let sign = if a < 0 { "-" } else { "+" };
            match (first, a.abs()) {
                (true, 1) => write!(f, "{}w{i}", if a < 0 { "-" } else { "" })?,
                (true, m) => write!(f, "{}{m}*w{i}", if a < 0 { "-" } else { "" })?,
                (false, 1) => write!(f, " {sign} w{i}")?,
                (false, m) => write!(f, " {sign} {m}*w{i}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Weight functionals of the nonzero diagonal coordinates of an embedded
/// tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddedState {
    pub q: u32,
    pub functionals: BTreeSet<Functional>,
}

impl EmbeddedState {
    pub fn contains(&self, f: &Functional) -> bool {
        self.functionals.contains(f)
    }

    pub fn len(&self) -> usize {
        self.functionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functionals.is_empty()
    }
}

pub fn embed_state(m: &MapTuple, q: u32) -> Result<EmbeddedState> {
    embed_state_with_budget(m, q, DEFAULT_FUNCTIONAL_BUDGET)
}

/// Distinct weight functionals of `[1 ⊗ (1 ⊕ m^{⊗q} ⊕ m)]`; fails once more
/// than `budget` would be produced.
pub fn embed_state_with_budget(m: &MapTuple, q: u32, budget: usize) -> Result<EmbeddedState> {
    if q < 1 {
        return Err(Error::Argument("q must be at least 1".into()));
    }
    let n = m.num_variables();
    let support = m.support();
    let mut functionals = BTreeSet::new();
    functionals.insert(Functional::determinant(n));
    for a in &support {
        functionals.insert(Functional::det_minus(a));
    }
    // q-fold sums of occurring exponent vectors
    let mut sums: BTreeSet<Vec<u32>> = support.clone();
    for _ in 1..q {
        let mut next = BTreeSet::new();
        for s in &sums {
            for a in &support {
                next.insert(s.iter().zip(a).map(|(x, y)| x + y).collect::<Vec<u32>>());
                if next.len() > budget {
                    return Err(Error::Budget { budget });
                }
            }
        }
        sums = next;
    }
    for s in &sums {
        functionals.insert(Functional::det_minus(s));
    }
    if functionals.len() > budget {
        return Err(Error::Budget { budget });
    }
    Ok(EmbeddedState { q, functionals })
}

/// Result of evaluating all weight functionals at one weight vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum HmVerdict {
    /// The largest-weight functional, which is positive.
    PositiveWeightExists {
        functional: Functional,
        value: i64,
    },
    NonePositive {
        max: i64,
    },
}

impl HmVerdict {
    pub fn is_positive(&self) -> bool {
        matches!(self, HmVerdict::PositiveWeightExists { .. })
    }
}

pub fn hm_verdict(state: &EmbeddedState, w: &WeightVector) -> Result<HmVerdict> {
    if let Some(f) = state.functionals.iter().next() {
        if f.coeffs().len() != w.len() {
            return Err(Error::Argument(format!(
                "weight vector has {} entries, functionals have {}",
                w.len(),
                f.coeffs().len()
            )));
        }
    }
    let best = state
        .functionals
        .iter()
        .map(|f| (f.eval(w), f))
        .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(a.1)));
    Ok(match best {
        Some((value, f)) if value > 0 => HmVerdict::PositiveWeightExists {
            functional: f.clone(),
            value,
        },
        Some((max, _)) => HmVerdict::NonePositive { max },
        None => HmVerdict::NonePositive { max: 0 },
    })
}

/// Which branch of the two-case argument produced a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCase {
    /// `sum w_i > 0`: the `Det ⊗ 1` coordinate.
    Determinant,
    /// `sum w_i <= 0`: the coordinate `(v_j*^d)^{⊗q}` for the most negative
    /// weight `w_j`.
    SymmetricPower { j: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub case: WitnessCase,
    pub functional: Functional,
    pub value: i64,
    /// Set when `q <= k + 1`, where the value need not be positive.
    pub q_too_small: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, ThisError)]
pub enum WitnessFailure {
    /// No form has a nonzero `(v_j*)^d` coefficient: `e_j` is a basepoint.
    #[error("no form has a nonzero coefficient of v{j}*^d")]
    MissingCoordinateMonomial { j: usize },
    #[error("weight vector has {got} entries, expected {expected}")]
    Dimension { expected: usize, got: usize },
}

/// The positive-weight coordinate named by the two-case argument: the
/// determinant coordinate if `sum w_i > 0`, otherwise the `q`-th power of
/// `(v_j*)^d` for `w_j` the most negative weight (lowest index on ties),
/// which has weight `-q d w_j + sum w_i`.
pub fn proof_witness(
    m: &MapTuple,
    w: &WeightVector,
    q: u32,
) -> std::result::Result<Witness, WitnessFailure> {
    let n = m.num_variables();
    if w.len() != n {
        return Err(WitnessFailure::Dimension {
            expected: n,
            got: w.len(),
        });
    }
    let total = w.sum();
    let q_too_small = q <= m.k() + 1;
    if total > 0 {
        return Ok(Witness {
            case: WitnessCase::Determinant,
            functional: Functional::determinant(n),
            value: total,
            q_too_small,
        });
    }
    let (j, &wj) = w
        .as_slice()
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)))
        .expect("nonempty weight vector");
    debug_assert!(wj < 0, "nonzero w with sum <= 0 has a negative entry");
    if m.values_at_coordinate_point(j).iter().all(Zero::is_zero) {
        return Err(WitnessFailure::MissingCoordinateMonomial { j });
    }
    let mut power = vec![0u32; n];
    power[j] = q * m.d();
    let qd = (q * m.d()) as i64;
    Ok(Witness {
        case: WitnessCase::SymmetricPower { j },
        functional: Functional::det_minus(&power),
        value: -qd * wj + total,
        q_too_small,
    })
}
