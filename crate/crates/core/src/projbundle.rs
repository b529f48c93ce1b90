//! Push-forward along the projective bundle `pi: P(S) -> G(P^k, P^n)`.
//!
//! `Ch(P(S))` is free over `Ch(G)` on `1, xi, ..., xi^k`, where
//! `xi = c_1(O_{P(S)}(1))` satisfies `xi^{k+1} + c_1 xi^k + ... + c_{k+1} = 0`.
//! `pi_*` kills `xi^m` for `m < k` and sends `xi^k` to 1, so it can be read
//! off the reduced representative directly.

use num_bigint::BigInt;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use crate::algebra::{p_class, Rational};
use crate::error::{Error, Result};
use crate::schubert::{GrassmannRing, SchubertElement, SchubertJson};

/// `sum_m coeffs[m] * xi^m` with coefficients in `Ch(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiPolynomial {
    ring: GrassmannRing,
    coeffs: Vec<SchubertElement>,
}

/// Wire form: one Schubert element per power of `xi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct XiJson(pub Vec<SchubertJson>);

impl XiPolynomial {
    pub fn new(ring: &GrassmannRing, coeffs: Vec<SchubertElement>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.ring() != ring) {
            return Err(Error::ProfileMismatch(format!(
                "coefficient from {:?} in a polynomial over {:?}",
                bad.ring(),
                ring
            )));
        }
        let mut p = XiPolynomial {
            ring: ring.clone(),
            coeffs,
        };
        p.trim();
        Ok(p)
    }

    /// `xi^m`.
    pub fn xi_power(ring: &GrassmannRing, m: usize) -> Self {
        let mut coeffs = vec![ring.zero(); m + 1];
        coeffs[m] = ring.one();
        XiPolynomial {
            ring: ring.clone(),
            coeffs,
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(SchubertElement::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &GrassmannRing {
        &self.ring
    }

    /// Coefficient of `xi^m` (zero past the end).
    pub fn coeff(&self, m: usize) -> SchubertElement {
        self.coeffs
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn coeffs(&self) -> &[SchubertElement] {
        &self.coeffs
    }

    /// Highest power of `xi` with a nonzero coefficient.
    pub fn xi_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Homogeneous of total degree `D` when `coeff(m)` has degree `D - m`
    /// for every nonzero coefficient.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut found = None;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !c.is_homogeneous() {
                return None;
            }
            let d = c.degree().expect("nonzero") + m as u32;
            match found {
                None => found = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        found
    }

    pub fn scale(&self, c: &Rational) -> Self {
        XiPolynomial::new(&self.ring, self.coeffs.iter().map(|x| x.scale(c)).collect())
            .expect("same ring")
    }

    /// Multiply by `xi`.
    pub fn mul_xi(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.ring.zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        XiPolynomial {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::ProfileMismatch(
                "xi-polynomials over different rings".into(),
            ));
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|m| &self.coeff(m) + &other.coeff(m)).collect();
        XiPolynomial::new(&self.ring, coeffs)
    }

    pub fn to_json(&self) -> XiJson {
        XiJson(self.coeffs.iter().map(SchubertElement::to_json).collect())
    }
}

/// Representative of `p` with `xi`-degree at most `k`, using
/// `xi^{k+1} = -(c_1(S) xi^k + ... + c_{k+1}(S))`.
pub fn reduce_xi(p: &XiPolynomial) -> XiPolynomial {
    let ring = p.ring();
    let rank = ring.k() as usize + 1;
    let chern: Vec<SchubertElement> = (1..=rank as u32)
        .map(|i| ring.chern_s(i).expect("i <= k+1"))
        .collect();
    let mut coeffs = p.coeffs.clone();
    for m in (rank..coeffs.len()).rev() {
        let a = std::mem::replace(&mut coeffs[m], ring.zero());
        if a.is_zero() {
            continue;
        }
        for (i, c) in chern.iter().enumerate() {
            let target = m - (i + 1);
            coeffs[target] = &coeffs[target] - &(c * &a);
        }
    }
    XiPolynomial::new(ring, coeffs).expect("same ring")
}

/// `pi_*`: the coefficient of `xi^k` in the reduced representative.
pub fn pushforward(p: &XiPolynomial) -> SchubertElement {
    reduce_xi(p).coeff(p.ring().k() as usize)
}

/// `pi_*(c_1(L)^{r+1+alpha})` for `L = O_{P(S)}(d)`, computed in the ambient
/// ring `G(P^k, P^n)` by reducing `(d xi)^{r+1+alpha}`.
pub fn bilt_pushforward(
    ambient: &GrassmannRing,
    r: u32,
    d: u32,
    alpha: u32,
) -> Result<SchubertElement> {
    if d < 1 {
        return Err(Error::Argument(
            "line bundle degree d must be at least 1".into(),
        ));
    }
    let l = (r + 1 + alpha) as usize;
    let scale = Rational::from_integer(BigInt::from(d).pow(l));
    Ok(pushforward(
        &XiPolynomial::xi_power(ambient, l).scale(&scale),
    ))
}

/// The other side of [`bilt_pushforward`]: `d^{r+1+alpha}` times the image of
/// `p_{r-k+1+alpha}`, through the power-series route.
pub fn bilt_expected(
    ambient: &GrassmannRing,
    r: u32,
    d: u32,
    alpha: u32,
) -> Result<SchubertElement> {
    let k = ambient.k();
    if r < k {
        return Err(Error::Argument(format!("need r >= k, got r={r}, k={k}")));
    }
    let l = r + 1 + alpha;
    let scale = Rational::from_integer(BigInt::from(d).pow(l));
    let p = p_class((r - k + 1 + alpha) as usize, k);
    Ok(ambient.to_schubert(&p)?.scale(&scale))
}
