//! The Chow ring `Ch(k, r, d)` of the space of degree-`d` maps `P^k -> P^r`.
//!
//! The ring is generated by classes `s_1, ..., s_{r-k}` (`deg s_j = j`), the
//! loci of maps meeting a fixed linear space of codimension `k + j`. Pulling
//! back along a degree-`d` self-map of `P^r` gives a graded ring isomorphism
//!
//! ```text
//! lambda: Ch(k, r, d) -> Ch(k, r, 1),   s_j -> d^(k+j) sigma_j,
//! ```
//!
//! so a monomial `s_{j1} ... s_{jm}` goes to `d^{sum (k + j_i)}` times the
//! Schubert product `sigma_{j1} ... sigma_{jm}`.
//!
//! Elements are kept in a normal form defined by this transport: in each
//! degree a basis of `s`-monomials is chosen greedily in canonical order, and
//! every element is written in it. Independently, the relations of
//! `Ch(k, r, 1)` are computed on the Schubert side and rescaled into a
//! presentation of `Ch(k, r, d)`, which the test-suite cross-checks against
//! the transported normal forms.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{rank, solve_combination, RowEchelon};
use crate::algebra::{
    format_rational, ideal_span, monomials_of_degree, parse_rational, GradedPolynomial, Rational,
};
use crate::error::{Error, Result};
use crate::schubert::{partitions_in_box, GrassmannRing, Partition, SchubertElement};

/// Handle on `Ch(k, r, d)`. Clones share the per-degree caches.
#[derive(Clone)]
pub struct NonlinearRing {
    inner: Arc<Inner>,
}

struct Inner {
    k: u32,
    r: u32,
    d: u32,
    grass: GrassmannRing,
    degrees: Vec<u32>,
    bases: Mutex<HashMap<u32, Arc<DegreeBasis>>>,
    relations: OnceLock<Vec<GradedPolynomial>>,
}

/// Normal-form basis of one graded piece and its images under `lambda`.
struct DegreeBasis {
    monomials: Vec<Vec<u32>>,
    images: Vec<Vec<Rational>>,
}

impl PartialEq for NonlinearRing {
    fn eq(&self, other: &Self) -> bool {
        (self.k(), self.r(), self.d()) == (other.k(), other.r(), other.d())
    }
}

impl Eq for NonlinearRing {}

impl fmt::Debug for NonlinearRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ch({}, {}, {})", self.k(), self.r(), self.d())
    }
}

impl NonlinearRing {
    pub fn new(k: u32, r: u32, d: u32) -> Result<Self> {
        if d < 1 {
            return Err(Error::Argument("map degree d must be at least 1".into()));
        }
        let grass = GrassmannRing::new(k, r)?;
        let degrees = grass.sigma_degrees();
        Ok(NonlinearRing {
            inner: Arc::new(Inner {
                k,
                r,
                d,
                grass,
                degrees,
                bases: Mutex::new(HashMap::new()),
                relations: OnceLock::new(),
            }),
        })
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    pub fn r(&self) -> u32 {
        self.inner.r
    }

    pub fn d(&self) -> u32 {
        self.inner.d
    }

    /// The target `Ch(k, r, 1)` of `lambda`.
    pub fn grassmannian(&self) -> &GrassmannRing {
        &self.inner.grass
    }

    /// Degrees of `s_1, ..., s_{r-k}`.
    pub fn generator_degrees(&self) -> &[u32] {
        &self.inner.degrees
    }

    pub fn num_generators(&self) -> usize {
        self.inner.degrees.len()
    }

    pub fn top_degree(&self) -> u32 {
        self.inner.grass.top_degree()
    }

    /// `s`-monomials of the given degree as exponent vectors, in canonical
    /// order: read as partitions (`s_2 s_1^2` is `(2,1,1)`), by decreasing
    /// lexicographic order, so products of fewer, larger generators come
    /// first.
    pub fn s_monomials(&self, degree: u32) -> Vec<Vec<u32>> {
        let m = self.num_generators() as u32;
        if m == 0 {
            return if degree == 0 {
                vec![Vec::new()]
            } else {
                Vec::new()
            };
        }
        partitions_in_box(degree, degree as usize, m)
            .iter()
            .map(|p| p.multiplicities(m))
            .collect()
    }

    /// `sum_j e_j (k + j)`: the power of `d` picked up by `s^e` under lambda.
    pub fn scaling_exponent(&self, exps: &[u32]) -> u32 {
        exps.iter()
            .enumerate()
            .map(|(i, e)| e * (self.k() + i as u32 + 1))
            .sum()
    }

    fn d_power(&self, e: u32) -> Rational {
        Rational::from_integer(BigInt::from(self.d()).pow(e))
    }

    /// `lambda(s^e) = d^{sum e_j (k+j)} * prod sigma_j^{e_j}`.
    pub fn lambda_monomial(&self, exps: &[u32]) -> Result<SchubertElement> {
        let mono = GradedPolynomial::monomial(
            self.generator_degrees(),
            exps.to_vec(),
            self.d_power(self.scaling_exponent(exps)),
        )?;
        self.inner.grass.eval_sigma(&mono)
    }

    /// Linear extension of [`NonlinearRing::lambda_monomial`] to an arbitrary
    /// polynomial in the `s_j`.
    pub fn lambda_poly(&self, f: &GradedPolynomial) -> Result<SchubertElement> {
        if f.degrees() != self.generator_degrees() {
            return Err(Error::ProfileMismatch(format!(
                "expected generator degrees {:?}, got {:?}",
                self.generator_degrees(),
                f.degrees()
            )));
        }
        let scaled = GradedPolynomial::from_terms(
            f.degrees(),
            f.terms()
                .map(|(e, c)| (e.clone(), c * self.d_power(self.scaling_exponent(e)))),
        )?;
        self.inner.grass.eval_sigma(&scaled)
    }

    pub fn lambda_map(&self, x: &NonlinearElement) -> Result<SchubertElement> {
        self.check(x)?;
        self.lambda_poly(&x.poly)
    }

    fn basis(&self, degree: u32) -> Result<Arc<DegreeBasis>> {
        if let Some(b) = self.inner.bases.lock().expect("basis cache").get(&degree) {
            return Ok(b.clone());
        }
        let grass = &self.inner.grass;
        let dim = grass.enumerate_partitions(degree).len();
        let mut span = RowEchelon::empty(dim);
        let mut monomials = Vec::new();
        let mut images = Vec::new();
        for e in self.s_monomials(degree) {
            if span.rank() == dim {
                break;
            }
            let image = grass.coordinates(&self.lambda_monomial(&e)?, degree);
            if span.insert(image.clone()) {
                monomials.push(e);
                images.push(image);
            }
        }
        if span.rank() != dim {
            return Err(Error::Consistency(format!(
                "s-monomials of degree {degree} span {} of {dim} dimensions",
                span.rank()
            )));
        }
        let b = Arc::new(DegreeBasis { monomials, images });
        self.inner
            .bases
            .lock()
            .expect("basis cache")
            .insert(degree, b.clone());
        Ok(b)
    }

    /// The normal-form monomial basis of degree `degree`.
    pub fn normal_basis(&self, degree: u32) -> Result<Vec<Vec<u32>>> {
        Ok(self.basis(degree)?.monomials.clone())
    }

    /// The unique element whose image under lambda is `y`.
    pub fn lambda_inverse(&self, y: &SchubertElement) -> Result<NonlinearElement> {
        if y.ring() != self.grassmannian() {
            return Err(Error::ProfileMismatch(format!(
                "element of {:?} pulled back to {:?}",
                y.ring(),
                self
            )));
        }
        let mut terms = Vec::new();
        for degree in 0..=self.top_degree() {
            let coords = self.inner.grass.coordinates(y, degree);
            if coords.iter().all(Zero::is_zero) {
                continue;
            }
            let basis = self.basis(degree)?;
            let solution = solve_combination(&basis.images, &coords).ok_or_else(|| {
                Error::Consistency(format!("degree {degree} image basis does not span"))
            })?;
            terms.extend(basis.monomials.iter().cloned().zip(solution));
        }
        Ok(NonlinearElement {
            ring: self.clone(),
            poly: GradedPolynomial::from_terms(self.generator_degrees(), terms)?,
        })
    }

    /// Normal form of an arbitrary polynomial in the `s_j`.
    pub fn element(&self, f: &GradedPolynomial) -> Result<NonlinearElement> {
        self.lambda_inverse(&self.lambda_poly(f)?)
    }

    pub fn zero(&self) -> NonlinearElement {
        NonlinearElement {
            ring: self.clone(),
            poly: GradedPolynomial::zero(self.generator_degrees()),
        }
    }

    pub fn one(&self) -> NonlinearElement {
        NonlinearElement {
            ring: self.clone(),
            poly: GradedPolynomial::one(self.generator_degrees()),
        }
    }

    /// `s_j` for `1 <= j <= r-k`; `s_0` is the unit.
    pub fn generator(&self, j: u32) -> Result<NonlinearElement> {
        if j == 0 {
            return Ok(self.one());
        }
        if j as usize > self.num_generators() {
            return Err(Error::Argument(format!(
                "generator s_{j} outside 1..={}",
                self.num_generators()
            )));
        }
        self.element(&GradedPolynomial::generator(
            self.generator_degrees(),
            j as usize - 1,
        ))
    }

    fn check(&self, x: &NonlinearElement) -> Result<()> {
        if x.ring != *self {
            return Err(Error::ProfileMismatch(format!(
                "element of {:?} used in {:?}",
                x.ring, self
            )));
        }
        Ok(())
    }

    /// Product transported through lambda.
    pub fn nl_multiply(
        &self,
        a: &NonlinearElement,
        b: &NonlinearElement,
    ) -> Result<NonlinearElement> {
        self.check(a)?;
        self.check(b)?;
        let grass = &self.inner.grass;
        let product = grass.multiply(&self.lambda_map(a)?, &self.lambda_map(b)?)?;
        self.lambda_inverse(&product)
    }

    /// Generators of the ideal of relations among the `s_j`: each relation
    /// `R(sigma)` of `Ch(k, r, 1)` rewritten with `sigma_j = s_j / d^(k+j)`,
    /// with denominators cleared and content removed.
    pub fn scaled_relations(&self) -> &[GradedPolynomial] {
        self.inner.relations.get_or_init(|| {
            self.inner
                .grass
                .sigma_relations()
                .iter()
                .map(|rel| {
                    let scaled = GradedPolynomial::from_terms(
                        rel.degrees(),
                        rel.terms()
                            .map(|(e, c)| (e.clone(), c / self.d_power(self.scaling_exponent(e)))),
                    )
                    .expect("same profile");
                    scaled.primitive_by(|a, b| b.cmp(a))
                })
                .collect()
        })
    }

    /// Dimension of degree `degree` of `Q[s] / (scaled relations)`.
    pub fn presentation_dim(&self, degree: u32) -> usize {
        let monos = monomials_of_degree(self.generator_degrees(), degree);
        let span = ideal_span(
            self.scaled_relations(),
            self.generator_degrees(),
            &monos,
            degree,
        );
        monos.len() - span.rank()
    }

    /// Whether `f` lies in the ideal of the scaled relations, tested degree by
    /// degree with exact linear algebra.
    pub fn in_relation_ideal(&self, f: &GradedPolynomial) -> Result<bool> {
        if f.degrees() != self.generator_degrees() {
            return Err(Error::ProfileMismatch("not a polynomial in the s_j".into()));
        }
        let Some(top) = f.degree() else {
            return Ok(true);
        };
        for degree in 0..=top {
            let part = f.component(degree);
            if part.is_zero() {
                continue;
            }
            let monos = monomials_of_degree(self.generator_degrees(), degree);
            let span = ideal_span(
                self.scaled_relations(),
                self.generator_degrees(),
                &monos,
                degree,
            );
            let v: Vec<Rational> = monos.iter().map(|m| part.coeff(m)).collect();
            if !span.contains(&v) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn from_json(value: &NonlinearJson) -> Result<NonlinearElement> {
        let ring = NonlinearRing::new(value.k, value.r, value.d)?;
        let m = ring.num_generators();
        let mut terms = Vec::new();
        for t in &value.terms {
            let mut exps = vec![0u32; m];
            for &j in &t.smonomial {
                if j == 0 {
                    continue;
                }
                if j as usize > m {
                    return Err(Error::Argument(format!("generator s_{j} outside 1..={m}")));
                }
                exps[j as usize - 1] += 1;
            }
            terms.push((exps, parse_rational(&t.coeff)?));
        }
        ring.element(&GradedPolynomial::from_terms(
            ring.generator_degrees(),
            terms,
        )?)
    }
}

/// Element of `Ch(k, r, d)` in transported normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct NonlinearElement {
    ring: NonlinearRing,
    poly: GradedPolynomial,
}

/// Wire form `{"k","r","d","terms":[{"smonomial":[j1,j2,..],"coeff"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonlinearJson {
    pub k: u32,
    pub r: u32,
    pub d: u32,
    pub terms: Vec<NonlinearTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonlinearTermJson {
    pub smonomial: Vec<u32>,
    pub coeff: String,
}

impl NonlinearElement {
    pub fn ring(&self) -> &NonlinearRing {
        &self.ring
    }

    /// The normal-form polynomial in `s_1, ..., s_{r-k}`.
    pub fn poly(&self) -> &GradedPolynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Terms as (sorted generator indices, coefficient), ordered by degree and
    /// then by the canonical monomial order.
    pub fn terms(&self) -> Vec<(Vec<u32>, Rational)> {
        let mut out: Vec<(Partition, Rational)> = self
            .poly
            .terms()
            .map(|(e, c)| (Partition::from_multiplicities(e), c.clone()))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out.into_iter()
            .map(|(p, c)| {
                let mut idx = p.parts().to_vec();
                idx.reverse();
                (idx, c)
            })
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> NonlinearElement {
        NonlinearElement {
            ring: self.ring.clone(),
            poly: self.poly.scale(c),
        }
    }

    pub fn checked_add(&self, other: &NonlinearElement) -> Result<NonlinearElement> {
        self.ring.check(other)?;
        Ok(NonlinearElement {
            ring: self.ring.clone(),
            poly: self.poly.checked_add(&other.poly)?,
        })
    }

    pub fn checked_mul(&self, other: &NonlinearElement) -> Result<NonlinearElement> {
        self.ring.nl_multiply(self, other)
    }

    pub fn to_json(&self) -> NonlinearJson {
        NonlinearJson {
            k: self.ring.k(),
            r: self.ring.r(),
            d: self.ring.d(),
            terms: self
                .terms()
                .into_iter()
                .map(|(idx, c)| NonlinearTermJson {
                    smonomial: idx,
                    coeff: format_rational(&c),
                })
                .collect(),
        }
    }
}

pub fn generator_names(count: usize) -> Vec<String> {
    (1..=count).map(|j| format!("s{j}")).collect()
}

impl fmt::Display for NonlinearElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = generator_names(self.ring.num_generators());
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", self.poly.display_with(&refs))
    }
}

impl fmt::Debug for NonlinearElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.ring, self)
    }
}

/// Scaled presentation of `Ch(k, r, d)`.
pub fn scaled_relations(k: u32, r: u32, d: u32) -> Result<Vec<GradedPolynomial>> {
    Ok(NonlinearRing::new(k, r, d)?.scaled_relations().to_vec())
}

/// Outcome of checking that the products `s_a s_b`, `0 <= a <= b <= r-1`,
/// form a basis of `Ch(1, r, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaBasisReport {
    pub r: u32,
    pub d: u32,
    pub pairs: Vec<(u32, u32)>,
    pub count: usize,
    pub rank: usize,
    pub dimension: u64,
    pub independent: bool,
    pub passed: bool,
}

pub fn verify_sigma_basis(r: u32, d: u32) -> Result<SigmaBasisReport> {
    if r < 1 {
        return Err(Error::Argument("need r >= 1".into()));
    }
    let ring = NonlinearRing::new(1, r, d)?;
    let grass = ring.grassmannian().clone();
    let full_basis = grass.basis();
    let degrees = ring.generator_degrees().to_vec();
    let s = |a: u32| -> GradedPolynomial {
        if a == 0 {
            GradedPolynomial::one(&degrees)
        } else {
            GradedPolynomial::generator(&degrees, a as usize - 1)
        }
    };
    let mut pairs = Vec::new();
    let mut rows = Vec::new();
    for a in 0..r {
        for b in a..r {
            let image = ring.lambda_poly(&(&s(a) * &s(b)))?;
            rows.push(
                full_basis
                    .iter()
                    .map(|lam| image.coeff(lam))
                    .collect::<Vec<_>>(),
            );
            pairs.push((a, b));
        }
    }
    let count = pairs.len();
    let rank = rank(&rows, full_basis.len());
    let dimension = grass.dimension();
    let independent = rank == count;
    Ok(SigmaBasisReport {
        r,
        d,
        pairs,
        count,
        rank,
        dimension,
        independent,
        passed: independent && count as u64 == dimension && count as u32 == r * (r + 1) / 2,
    })
}
