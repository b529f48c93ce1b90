use std::sync::Mutex;

use super::poly::GradedPolynomial;
use super::rational::format_rational;
use crate::error::{Error, Result};

/// Power series in `t` truncated after `t^order`, whose coefficient of
/// `t^j` is a homogeneous polynomial of graded degree `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<GradedPolynomial>,
}

impl TruncatedSeries {
    /// Coefficients past `order` are dropped, missing ones are zero.
    pub fn new(degrees: &[u32], mut coeffs: Vec<GradedPolynomial>, order: usize) -> Result<Self> {
        coeffs.truncate(order + 1);
        while coeffs.len() < order + 1 {
            coeffs.push(GradedPolynomial::zero(degrees));
        }
        for (j, c) in coeffs.iter().enumerate() {
            if c.degrees() != degrees {
                return Err(Error::ProfileMismatch(format!(
                    "coefficient of t^{j} has degrees {:?}, expected {degrees:?}",
                    c.degrees()
                )));
            }
            if !c.is_zero() && c.homogeneous_degree() != Some(j as u32) {
                return Err(Error::Argument(format!(
                    "coefficient of t^{j} is not homogeneous of degree {j}"
                )));
            }
        }
        Ok(TruncatedSeries { order, coeffs })
    }

    pub fn one(degrees: &[u32], order: usize) -> Self {
        Self::new(degrees, vec![GradedPolynomial::one(degrees)], order).expect("unit series")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, j: usize) -> &GradedPolynomial {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[GradedPolynomial] {
        &self.coeffs
    }

    pub fn degrees(&self) -> &[u32] {
        self.coeffs[0].degrees()
    }

    /// Product truncated to the smaller of the two orders.
    pub fn mul_truncated(&self, other: &Self) -> Result<Self> {
        let order = self.order.min(other.order);
        let degrees = self.degrees().to_vec();
        let mut out = vec![GradedPolynomial::zero(&degrees); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] = out[i + j].checked_add(&a.checked_mul(b)?)?;
            }
        }
        Self::new(&degrees, out, order)
    }

    /// Formal inverse modulo `t^(order + 1)`.
    pub fn inverse(&self, order: usize) -> Result<Self> {
        series_inverse(self, order)
    }
}

/// Formal inverse of `c` to order `order`, by the recursion
/// `p_0 = 1`, `p_j = -sum_{m=1..j} c_m p_{j-m}`.
pub fn series_inverse(c: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    let degrees = c.degrees().to_vec();
    let c0 = c.coeff(0);
    if *c0 != GradedPolynomial::one(&degrees) {
        let shown = if c0.is_zero() {
            "0".to_string()
        } else {
            c0.terms()
                .map(|(_, q)| format_rational(q))
                .collect::<Vec<_>>()
                .join(",")
        };
        return Err(Error::NonInvertible(shown));
    }
    let mut p: Vec<GradedPolynomial> = vec![GradedPolynomial::one(&degrees)];
    for j in 1..=order {
        let mut acc = GradedPolynomial::zero(&degrees);
        for m in 1..=j.min(c.order()) {
            let cm = c.coeff(m);
            if cm.is_zero() {
                continue;
            }
            acc = &acc - &(cm * &p[j - m]);
        }
        p.push(acc);
    }
    TruncatedSeries::new(&degrees, p, order)
}

/// Generator degrees `1, 2, ..., k+1` of `c_1, ..., c_{k+1}`.
pub fn chern_degrees(k: u32) -> Vec<u32> {
    (1..=k + 1).collect()
}

/// `c(S) = 1 + c_1 t + ... + c_{k+1} t^{k+1}`, truncated at `order`.
pub fn chern_series(k: u32, order: usize) -> TruncatedSeries {
    let degrees = chern_degrees(k);
    let mut coeffs = vec![GradedPolynomial::one(&degrees)];
    for i in 0..degrees.len() {
        coeffs.push(GradedPolynomial::generator(&degrees, i));
    }
    TruncatedSeries::new(&degrees, coeffs, order).expect("c(S) is graded")
}

/// Memoised classes `p_j(c_1, ..., c_{k+1})`, the coefficients of `1/c(S)`.
///
/// Each table is independent; nothing is shared between handles.
#[derive(Debug)]
pub struct PClasses {
    k: u32,
    degrees: Vec<u32>,
    memo: Mutex<Vec<GradedPolynomial>>,
}

impl PClasses {
    pub fn new(k: u32) -> Self {
        let degrees = chern_degrees(k);
        let one = GradedPolynomial::one(&degrees);
        PClasses {
            k,
            degrees,
            memo: Mutex::new(vec![one]),
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn get(&self, j: usize) -> GradedPolynomial {
        let mut memo = self.memo.lock().expect("p-class memo poisoned");
        while memo.len() <= j {
            let next = memo.len();
            let mut acc = GradedPolynomial::zero(&self.degrees);
            for m in 1..=next.min(self.degrees.len()) {
                let cm = GradedPolynomial::generator(&self.degrees, m - 1);
                acc = &acc - &(&cm * &memo[next - m]);
            }
            memo.push(acc);
        }
        memo[j].clone()
    }
}

/// `p_j(c_1, ..., c_{k+1})` computed from scratch.
pub fn p_class(j: usize, k: u32) -> GradedPolynomial {
    PClasses::new(k).get(j)
}
