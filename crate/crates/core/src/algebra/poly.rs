use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Multivariate polynomial with exact rational coefficients over generators
/// of prescribed positive degree.
///
/// Exponent vectors are dense and have one entry per generator. Zero
/// coefficients are never stored, so two polynomials are equal exactly when
/// their term maps are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedPolynomial {
    degrees: Vec<u32>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

/// One `{exponents, coeff}` record of the serialised form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

impl GradedPolynomial {
    pub fn zero(degrees: &[u32]) -> Self {
        assert!(
            degrees.iter().all(|&d| d > 0),
            "generator degrees must be positive"
        );
        GradedPolynomial {
            degrees: degrees.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(degrees: &[u32], c: Rational) -> Self {
        let mut p = Self::zero(degrees);
        p.add_term(vec![0; degrees.len()], c);
        p
    }

    pub fn one(degrees: &[u32]) -> Self {
        Self::constant(degrees, Rational::one())
    }

    /// The generator with (0-based) index `i`.
    pub fn generator(degrees: &[u32], i: usize) -> Self {
        assert!(i < degrees.len(), "generator index {i} out of range");
        let mut exps = vec![0; degrees.len()];
        exps[i] = 1;
        Self::monomial(degrees, exps, Rational::one()).expect("valid exponent length")
    }

    pub fn monomial(degrees: &[u32], exponents: Vec<u32>, coeff: Rational) -> Result<Self> {
        let mut p = Self::zero(degrees);
        p.check_len(&exponents)?;
        p.add_term(exponents, coeff);
        Ok(p)
    }

    pub fn from_terms<I>(degrees: &[u32], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(degrees);
        for (e, c) in terms {
            p.check_len(&e)?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn from_records(degrees: &[u32], records: &[PolyRecord]) -> Result<Self> {
        let terms = records
            .iter()
            .map(|r| Ok((r.exponents.clone(), parse_rational(&r.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(degrees, terms)
    }

    pub fn to_records(&self) -> Vec<PolyRecord> {
        self.terms
            .iter()
            .map(|(e, c)| PolyRecord {
                exponents: e.clone(),
                coeff: format_rational(c),
            })
            .collect()
    }

    fn check_len(&self, exps: &[u32]) -> Result<()> {
        if exps.len() != self.degrees.len() {
            return Err(Error::ProfileMismatch(format!(
                "exponent vector of length {} for {} generators",
                exps.len(),
                self.degrees.len()
            )));
        }
        Ok(())
    }

    fn check_profile(&self, other: &Self) -> Result<()> {
        if self.degrees != other.degrees {
            return Err(Error::ProfileMismatch(format!(
                "generator degrees {:?} vs {:?}",
                self.degrees, other.degrees
            )));
        }
        Ok(())
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn num_generators(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Weighted degree `sum e_i * deg(g_i)` of an exponent vector.
    pub fn term_degree(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.degrees).map(|(e, d)| e * d).sum()
    }

    /// Largest graded degree of a term, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| self.term_degree(e)).max()
    }

    /// The zero polynomial counts as homogeneous (of every degree).
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| self.term_degree(e));
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    /// The common degree of all terms; `None` if zero or inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        if self.is_zero() || !self.is_homogeneous() {
            None
        } else {
            self.degree()
        }
    }

    /// The part of graded degree `d`.
    pub fn component(&self, d: u32) -> Self {
        let mut p = Self::zero(&self.degrees);
        for (e, c) in &self.terms {
            if self.term_degree(e) == d {
                p.terms.insert(e.clone(), c.clone());
            }
        }
        p
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_profile(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_profile(other)?;
        let mut out = Self::zero(&self.degrees);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.degrees);
        }
        GradedPolynomial {
            degrees: self.degrees.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.degrees);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Divide by the gcd of the coefficients' numerators after clearing
    /// denominators, and make the first nonzero coefficient (in the given
    /// term order) positive. Returns zero unchanged.
    pub fn primitive_by<F>(&self, first: F) -> Self
    where
        F: Fn(&Vec<u32>, &Vec<u32>) -> std::cmp::Ordering,
    {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = num_bigint::BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&n);
        }
        let lead = self
            .terms
            .iter()
            .min_by(|a, b| first(a.0, b.0))
            .map(|(_, c)| c.clone())
            .expect("nonzero polynomial");
        let mut factor = Rational::new(den_lcm, num_gcd);
        if lead.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Render with the given generator names, highest degree first.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            self.term_degree(b.0)
                .cmp(&self.term_degree(a.0))
                .then_with(|| b.0.cmp(a.0))
        });
        let mut out = String::new();
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    _ => factors.push(format!("{}^{}", names[i], p)),
                }
            }
            if factors.is_empty() {
                let _ = write!(out, "{}", format_rational(&abs));
            } else {
                if !abs.is_one() {
                    let _ = write!(out, "{}*", format_rational(&abs));
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

/// All exponent vectors of weighted degree `d`, in descending
/// lexicographic order (the first generator's exponent varies slowest and
/// starts at its maximum).
pub fn monomials_of_degree(degrees: &[u32], d: u32) -> Vec<Vec<u32>> {
    fn rec(degrees: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == degrees.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max = left / degrees[i];
        for e in (0..=max).rev() {
            cur.push(e);
            rec(degrees, i + 1, left - e * degrees[i], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(degrees, 0, d, &mut Vec::new(), &mut out);
    out
}

impl Neg for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        GradedPolynomial {
            degrees: self.degrees.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        -&self
    }
}

// The operator forms panic on a profile mismatch; use the `checked_*`
// methods when operands come from outside.
impl Add for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn add(self, rhs: Self) -> GradedPolynomial {
        self.checked_add(rhs).expect("generator profiles differ")
    }
}

impl Sub for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn sub(self, rhs: Self) -> GradedPolynomial {
        self.checked_sub(rhs).expect("generator profiles differ")
    }
}

impl Mul for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn mul(self, rhs: Self) -> GradedPolynomial {
        self.checked_mul(rhs).expect("generator profiles differ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};
    use proptest::prelude::*;

    const C3: [u32; 3] = [1, 2, 3];

    fn c(i: usize) -> GradedPolynomial {
        GradedPolynomial::generator(&C3, i - 1)
    }

    #[test]
    fn additive_inverse_is_zero() {
        let sum = &c(1) + &(-&c(1));
        assert!(sum.is_zero());
        assert_eq!(sum.len(), 0);
    }

    #[test]
    fn monomial_product() {
        let sq = &c(1) * &c(1);
        assert_eq!(sq.len(), 1);
        assert_eq!(sq.coeff(&[2, 0, 0]), int(1));
        assert_eq!(sq.homogeneous_degree(), Some(2));
    }

    #[test]
    fn schoolbook_expansion() {
        // (c1^2 - c2) * c1 = c1^3 - c1 c2
        let lhs = &(&c(1).pow(2) - &c(2)) * &c(1);
        let rhs =
            GradedPolynomial::from_terms(&C3, [(vec![3, 0, 0], int(1)), (vec![1, 1, 0], int(-1))])
                .unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.homogeneous_degree(), Some(3));
    }

    #[test]
    fn profile_mismatch_is_an_error() {
        let a = GradedPolynomial::generator(&[1, 2], 0);
        let b = GradedPolynomial::generator(&[1, 1], 0);
        assert!(matches!(a.checked_add(&b), Err(Error::ProfileMismatch(_))));
        assert!(matches!(a.checked_mul(&b), Err(Error::ProfileMismatch(_))));
        assert!(GradedPolynomial::monomial(&[1, 2], vec![1], int(1)).is_err());
    }

    #[test]
    fn homogeneity() {
        let p = &c(1) + &c(2);
        assert!(!p.is_homogeneous());
        assert_eq!(p.homogeneous_degree(), None);
        assert_eq!(p.component(2), c(2));
        assert!(GradedPolynomial::zero(&C3).is_homogeneous());
    }

    #[test]
    fn primitive_content() {
        let p = GradedPolynomial::from_terms(
            &[1, 2],
            [(vec![3, 0], rat(-1, 4)), (vec![1, 1], rat(3, 2))],
        )
        .unwrap();
        let prim = p.primitive_by(|a, b| b.cmp(a));
        assert_eq!(prim.coeff(&[3, 0]), int(1));
        assert_eq!(prim.coeff(&[1, 1]), int(-6));
    }

    #[test]
    fn display() {
        let p = &(&c(1).pow(3) - &c(2).scale(&rat(3, 2))) - &GradedPolynomial::one(&C3);
        assert_eq!(p.display_with(&["c1", "c2", "c3"]), "c1^3 - 3/2*c2 - 1");
    }

    #[test]
    fn records_round_trip() {
        let p = &c(1).pow(2) - &c(2).scale(&rat(1, 3));
        let back = GradedPolynomial::from_records(&C3, &p.to_records()).unwrap();
        assert_eq!(p, back);
        assert_eq!(
            serde_json::to_string(&p.to_records()).unwrap(),
            r#"[{"exponents":[0,1,0],"coeff":"-1/3"},{"exponents":[2,0,0],"coeff":"1"}]"#
        );
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(
            monomials_of_degree(&[1, 2], 4),
            vec![vec![4, 0], vec![2, 1], vec![0, 2]]
        );
        assert_eq!(monomials_of_degree(&[], 0), vec![Vec::<u32>::new()]);
        assert!(monomials_of_degree(&[], 1).is_empty());
    }

    fn homogeneous_poly(deg: u32) -> impl Strategy<Value = GradedPolynomial> {
        let monos = monomials_of_degree(&C3, deg);
        proptest::collection::vec(-3i64..=3, monos.len()).prop_map(move |cs| {
            GradedPolynomial::from_terms(&C3, monos.iter().cloned().zip(cs.into_iter().map(int)))
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn mul_commutative_associative(
            a in (0u32..4).prop_flat_map(homogeneous_poly),
            b in (0u32..4).prop_flat_map(homogeneous_poly),
            c in (0u32..3).prop_flat_map(homogeneous_poly),
        ) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            let ab = &a * &b;
            prop_assert!(ab.is_homogeneous());
        }
    }
}
