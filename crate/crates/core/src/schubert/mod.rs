//! The Chow ring `Ch(k, r, 1)` of the Grassmannian `G(P^k, P^r)`.
//!
//! Elements are rational combinations of Schubert classes `sigma_lambda`,
//! `lambda` a partition in the `(k+1) x (r-k)` box. Products are computed by
//! expanding one factor into special classes with Giambelli's determinant and
//! then applying Pieri's rule, so every element has a canonical normal form
//! without any Gröbner machinery.

mod partition;
mod relations;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{chern_degrees, format_rational, parse_rational, GradedPolynomial, Rational};
use crate::error::{Error, Result};

pub use partition::{count_bounded_partitions, partitions_in_box, Partition};

pub(crate) type Terms = BTreeMap<Partition, Rational>;

/// Handle on `Ch(k, r, 1)`. Cloning is cheap and clones share caches; two
/// handles with the same `(k, r)` are interchangeable.
#[derive(Clone)]
pub struct GrassmannRing {
    inner: Arc<Inner>,
}

struct Inner {
    k: u32,
    r: u32,
    giambelli: Mutex<HashMap<Partition, GradedPolynomial>>,
    chern: Mutex<Vec<Terms>>,
}

impl PartialEq for GrassmannRing {
    fn eq(&self, other: &Self) -> bool {
        self.k() == other.k() && self.r() == other.r()
    }
}

impl Eq for GrassmannRing {}

impl fmt::Debug for GrassmannRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(P^{}, P^{})", self.k(), self.r())
    }
}

impl GrassmannRing {
    pub fn new(k: u32, r: u32) -> Result<Self> {
        if k > r {
            return Err(Error::Argument(format!("need k <= r, got k={k}, r={r}")));
        }
        let mut one = Terms::new();
        one.insert(Partition::empty(), Rational::one());
        Ok(GrassmannRing {
            inner: Arc::new(Inner {
                k,
                r,
                giambelli: Mutex::new(HashMap::new()),
                chern: Mutex::new(vec![one]),
            }),
        })
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    pub fn r(&self) -> u32 {
        self.inner.r
    }

    /// Rank of the tautological subbundle `S`.
    pub fn rows(&self) -> usize {
        self.k() as usize + 1
    }

    /// Rank of the quotient bundle `Q`; also the largest special class index.
    pub fn cols(&self) -> u32 {
        self.r() - self.k()
    }

    pub fn top_degree(&self) -> u32 {
        (self.k() + 1) * self.cols()
    }

    /// The box partition `(r-k)^(k+1)`, i.e. the class of a point.
    pub fn point_class(&self) -> Partition {
        Partition::new(vec![self.cols(); self.rows()]).expect("box is a partition")
    }

    /// Degrees `1..=r-k` of the special classes `sigma_1, ..., sigma_{r-k}`.
    pub fn sigma_degrees(&self) -> Vec<u32> {
        (1..=self.cols()).collect()
    }

    /// Total dimension `binomial(r+1, k+1)`.
    pub fn dimension(&self) -> u64 {
        let (n, m) = (self.r() as u64 + 1, self.k() as u64 + 1);
        (0..m).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
    }

    pub fn contains(&self, lam: &Partition) -> bool {
        lam.fits_box(self.rows(), self.cols())
    }

    /// Partitions of `degree` fitting the box, in canonical order. Out of
    /// range degrees give an empty list.
    pub fn enumerate_partitions(&self, degree: u32) -> Vec<Partition> {
        if degree > self.top_degree() {
            return Vec::new();
        }
        partitions_in_box(degree, self.rows(), self.cols())
    }

    /// The whole Schubert basis, degree by degree.
    pub fn basis(&self) -> Vec<Partition> {
        (0..=self.top_degree())
            .flat_map(|j| self.enumerate_partitions(j))
            .collect()
    }

    pub fn poincare_dims(&self) -> Vec<usize> {
        (0..=self.top_degree())
            .map(|j| self.enumerate_partitions(j).len())
            .collect()
    }

    pub fn zero(&self) -> SchubertElement {
        self.element(Terms::new())
    }

    pub fn one(&self) -> SchubertElement {
        self.element(self.inner.chern.lock().expect("chern cache")[0].clone())
    }

    pub fn class(&self, lam: &Partition) -> Result<SchubertElement> {
        if !self.contains(lam) {
            return Err(Error::Argument(format!(
                "partition {lam} does not fit the {}x{} box",
                self.rows(),
                self.cols()
            )));
        }
        let mut t = Terms::new();
        t.insert(lam.clone(), Rational::one());
        Ok(self.element(t))
    }

    /// `sigma_j`; the unit for `j = 0` and zero outside `0..=r-k`.
    pub fn special(&self, j: i64) -> SchubertElement {
        if j == 0 {
            return self.one();
        }
        if j < 0 || j > self.cols() as i64 {
            return self.zero();
        }
        self.class(&Partition::new(vec![j as u32]).expect("single part"))
            .expect("special class fits")
    }

    fn element(&self, terms: Terms) -> SchubertElement {
        SchubertElement {
            ring: self.clone(),
            terms,
        }
    }

    pub fn from_terms<I>(&self, terms: I) -> Result<SchubertElement>
    where
        I: IntoIterator<Item = (Partition, Rational)>,
    {
        let mut t = Terms::new();
        for (lam, c) in terms {
            if !self.contains(&lam) {
                return Err(Error::Argument(format!("partition {lam} leaves the box")));
            }
            add_term(&mut t, lam, c);
        }
        Ok(self.element(t))
    }

    fn check(&self, x: &SchubertElement) -> Result<()> {
        if x.ring != *self {
            return Err(Error::ProfileMismatch(format!(
                "element of {:?} used in {:?}",
                x.ring, self
            )));
        }
        Ok(())
    }

    /// Partitions `mu` with `mu / lam` a horizontal strip of size `j` that fit
    /// the box.
    fn horizontal_strips(&self, j: u32, lam: &Partition) -> Vec<Partition> {
        fn rec(
            lam: &Partition,
            i: usize,
            rows: usize,
            cap: u32,
            left: u32,
            cur: &mut Vec<u32>,
            out: &mut Vec<Partition>,
        ) {
            if i == rows {
                if left == 0 {
                    out.push(Partition::new(cur.clone()).expect("strip result"));
                }
                return;
            }
            let lo = lam.part(i);
            let hi = cap.min(lo + left);
            for m in (lo..=hi).rev() {
                cur.push(m);
                // row i+1 may not exceed the old row i
                rec(lam, i + 1, rows, lo, left - (m - lo), cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(
            lam,
            0,
            self.rows(),
            self.cols(),
            j,
            &mut Vec::new(),
            &mut out,
        );
        out.sort();
        out
    }

    /// Pieri's rule: `sigma_j * sigma_lam`.
    pub fn pieri(&self, j: u32, lam: &Partition) -> Result<SchubertElement> {
        if j < 1 || j > self.cols() {
            return Err(Error::Argument(format!(
                "special class index {j} outside 1..={}",
                self.cols()
            )));
        }
        if !self.contains(lam) {
            return Err(Error::Argument(format!("partition {lam} leaves the box")));
        }
        let terms = self
            .horizontal_strips(j, lam)
            .into_iter()
            .map(|mu| (mu, Rational::one()))
            .collect();
        Ok(self.element(terms))
    }

    fn apply_special(&self, j: u32, x: &Terms) -> Terms {
        if j == 0 {
            return x.clone();
        }
        let mut out = Terms::new();
        if j > self.cols() {
            return out;
        }
        for (lam, c) in x {
            for mu in self.horizontal_strips(j, lam) {
                add_term(&mut out, mu, c.clone());
            }
        }
        out
    }

    /// Multiply `x` by the polynomial `f` in the special classes.
    fn apply_sigma_poly(&self, f: &GradedPolynomial, x: &Terms) -> Terms {
        let mut out = Terms::new();
        for (exps, c) in f.terms() {
            let mut acc = x.clone();
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    acc = self.apply_special(i as u32 + 1, &acc);
                }
            }
            for (lam, v) in acc {
                add_term(&mut out, lam, v * c);
            }
        }
        out
    }

    /// Evaluate a polynomial in `sigma_1, ..., sigma_{r-k}` in the ring.
    pub fn eval_sigma(&self, f: &GradedPolynomial) -> Result<SchubertElement> {
        if f.degrees() != self.sigma_degrees() {
            return Err(Error::ProfileMismatch(format!(
                "expected generator degrees {:?}, got {:?}",
                self.sigma_degrees(),
                f.degrees()
            )));
        }
        let one = self.one().terms;
        Ok(self.element(self.apply_sigma_poly(f, &one)))
    }

    /// Giambelli: `sigma_lam = det(sigma_{lam_i + j - i})` as a polynomial in
    /// the special classes, with `sigma_0 = 1` and every other out-of-range
    /// index zero.
    pub fn giambelli(&self, lam: &Partition) -> GradedPolynomial {
        if let Some(p) = self
            .inner
            .giambelli
            .lock()
            .expect("giambelli cache")
            .get(lam)
        {
            return p.clone();
        }
        let degrees = self.sigma_degrees();
        let h = |m: i64| -> GradedPolynomial {
            if m == 0 {
                GradedPolynomial::one(&degrees)
            } else if m < 0 || m > self.cols() as i64 {
                GradedPolynomial::zero(&degrees)
            } else {
                GradedPolynomial::generator(&degrees, m as usize - 1)
            }
        };
        let n = lam.len();
        let entries: Vec<Vec<GradedPolynomial>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| h(lam.part(i) as i64 + j as i64 - i as i64))
                    .collect()
            })
            .collect();
        let det = cofactor_det(&entries, 0, &(0..n).collect::<Vec<_>>(), &degrees);
        self.inner
            .giambelli
            .lock()
            .expect("giambelli cache")
            .insert(lam.clone(), det.clone());
        det
    }

    /// Intersection product.
    pub fn multiply(&self, a: &SchubertElement, b: &SchubertElement) -> Result<SchubertElement> {
        self.check(a)?;
        self.check(b)?;
        let mut out = Terms::new();
        for (lam, c) in &a.terms {
            let expansion = self.giambelli(lam);
            for (mu, v) in self.apply_sigma_poly(&expansion, &b.terms) {
                add_term(&mut out, mu, v * c);
            }
        }
        Ok(self.element(out))
    }

    /// `c_i(S)`, from `c(S) c(Q) = 1` and `c_j(Q) = sigma_j`.
    pub fn chern_s(&self, i: u32) -> Result<SchubertElement> {
        if i > self.k() + 1 {
            return Err(Error::Argument(format!(
                "c_{i}(S) requested, but S has rank {}",
                self.k() + 1
            )));
        }
        Ok(self.element(self.chern_terms(i as usize)))
    }

    fn chern_terms(&self, i: usize) -> Terms {
        let mut cache = self.inner.chern.lock().expect("chern cache");
        while cache.len() <= i {
            let next = cache.len();
            let mut acc = Terms::new();
            for m in 1..=next.min(self.cols() as usize) {
                for (lam, c) in self.apply_special(m as u32, &cache[next - m]) {
                    add_term(&mut acc, lam, -c);
                }
            }
            cache.push(acc);
        }
        cache[i].clone()
    }

    /// Normal form of a homogeneous polynomial in `c_1(S), ..., c_{k+1}(S)`.
    pub fn to_schubert(&self, f: &GradedPolynomial) -> Result<SchubertElement> {
        if f.degrees() != chern_degrees(self.k()) {
            return Err(Error::ProfileMismatch(format!(
                "expected generators c_1..c_{}, got degrees {:?}",
                self.k() + 1,
                f.degrees()
            )));
        }
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let mut out = self.zero();
        for (exps, c) in f.terms() {
            let mut acc = self.one();
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let ci = self.chern_s(i as u32 + 1)?;
                for _ in 0..e {
                    acc = self.multiply(&ci, &acc)?;
                }
            }
            out = &out + &acc.scale(c);
        }
        Ok(out)
    }

    /// Coefficient of the point class in `a * b`, for complementary degrees.
    pub fn duality_pair(&self, a: &SchubertElement, b: &SchubertElement) -> Result<Rational> {
        self.check(a)?;
        self.check(b)?;
        for x in [a, b] {
            if !x.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
        }
        if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
            if da + db != self.top_degree() {
                return Err(Error::Argument(format!(
                    "degrees {da} + {db} do not add up to {}",
                    self.top_degree()
                )));
            }
        }
        Ok(self.multiply(a, b)?.coeff(&self.point_class()))
    }

    /// Coefficients of the degree-`degree` part of `x` on
    /// [`GrassmannRing::enumerate_partitions`].
    pub fn coordinates(&self, x: &SchubertElement, degree: u32) -> Vec<Rational> {
        self.enumerate_partitions(degree)
            .iter()
            .map(|lam| x.coeff(lam))
            .collect()
    }

    pub fn from_coordinates(&self, degree: u32, coords: &[Rational]) -> SchubertElement {
        let basis = self.enumerate_partitions(degree);
        assert_eq!(basis.len(), coords.len(), "coordinate vector length");
        let mut t = Terms::new();
        for (lam, c) in basis.into_iter().zip(coords) {
            add_term(&mut t, lam, c.clone());
        }
        self.element(t)
    }

    /// Generators of the ideal of relations among `sigma_1, ..., sigma_{r-k}`,
    /// computed degree by degree up to `top_degree + 1`.
    pub fn sigma_relations(&self) -> Vec<GradedPolynomial> {
        relations::sigma_relations(self)
    }

    pub fn from_json(value: &SchubertJson) -> Result<SchubertElement> {
        if value.d != 1 {
            return Err(Error::Argument(format!(
                "Schubert elements live in d = 1, got d = {}",
                value.d
            )));
        }
        let ring = GrassmannRing::new(value.k, value.r)?;
        let terms = value
            .terms
            .iter()
            .map(|t| {
                Ok((
                    Partition::new(t.partition.clone())?,
                    parse_rational(&t.coeff)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        ring.from_terms(terms)
    }
}

fn add_term(t: &mut Terms, lam: Partition, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match t.entry(lam) {
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

/// Laplace expansion along `row` over the remaining columns `cols`.
fn cofactor_det(
    m: &[Vec<GradedPolynomial>],
    row: usize,
    cols: &[usize],
    degrees: &[u32],
) -> GradedPolynomial {
    if cols.is_empty() {
        return GradedPolynomial::one(degrees);
    }
    let mut acc = GradedPolynomial::zero(degrees);
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = cofactor_det(m, row + 1, &rest, degrees);
        let term = entry * &minor;
        acc = if pos % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Number of monomials in `c_1, ..., c_{k+1}` of each degree `0..=bound`.
pub fn equivariant_point_dims(k: u32, bound: usize) -> Vec<u64> {
    count_bounded_partitions(k + 1, bound)
}

/// Element of `Ch(k, r, 1)` in the Schubert basis.
#[derive(Clone, PartialEq, Eq)]
pub struct SchubertElement {
    ring: GrassmannRing,
    terms: Terms,
}

/// Wire form `{"k","r","d":1,"terms":[{"partition","coeff"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchubertJson {
    pub k: u32,
    pub r: u32,
    pub d: u32,
    pub terms: Vec<SchubertTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchubertTermJson {
    pub partition: Vec<u32>,
    pub coeff: String,
}

impl SchubertElement {
    pub fn ring(&self) -> &GrassmannRing {
        &self.ring
    }

    /// Terms in canonical partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lam: &Partition) -> Rational {
        self.terms.get(lam).cloned().unwrap_or_else(Rational::zero)
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

    pub fn is_homogeneous(&self) -> bool {
        let mut sizes = self.terms.keys().map(Partition::size);
        match sizes.next() {
            None => true,
            Some(s) => sizes.all(|t| t == s),
        }
    }

    /// Degree of a nonzero homogeneous element (largest degree otherwise).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Partition::size).max()
    }

    pub fn component(&self, degree: u32) -> SchubertElement {
        self.ring.element(
            self.terms
                .iter()
                .filter(|(lam, _)| lam.size() == degree)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> SchubertElement {
        let mut t = Terms::new();
        for (lam, v) in &self.terms {
            add_term(&mut t, lam.clone(), v * c);
        }
        self.ring.element(t)
    }

    pub fn checked_add(&self, other: &SchubertElement) -> Result<SchubertElement> {
        self.ring.check(other)?;
        let mut t = self.terms.clone();
        for (lam, c) in &other.terms {
            add_term(&mut t, lam.clone(), c.clone());
        }
        Ok(self.ring.element(t))
    }

    pub fn checked_mul(&self, other: &SchubertElement) -> Result<SchubertElement> {
        self.ring.multiply(self, other)
    }

    pub fn to_json(&self) -> SchubertJson {
        SchubertJson {
            k: self.ring.k(),
            r: self.ring.r(),
            d: 1,
            terms: self
                .terms
                .iter()
                .map(|(lam, c)| SchubertTermJson {
                    partition: lam.parts().to_vec(),
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }
}

impl fmt::Debug for SchubertElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.ring, self)
    }
}

impl fmt::Display for SchubertElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (lam, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{}*", format_rational(&abs))?;
            }
            write!(f, "σ{lam}")?;
        }
        Ok(())
    }
}

impl std::ops::Add for &SchubertElement {
    type Output = SchubertElement;
    fn add(self, rhs: Self) -> SchubertElement {
        self.checked_add(rhs).expect("elements of different rings")
    }
}

impl std::ops::Sub for &SchubertElement {
    type Output = SchubertElement;
    fn sub(self, rhs: Self) -> SchubertElement {
        self.checked_add(&-rhs)
            .expect("elements of different rings")
    }
}

impl std::ops::Neg for &SchubertElement {
    type Output = SchubertElement;
    fn neg(self) -> SchubertElement {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Mul for &SchubertElement {
    type Output = SchubertElement;
    fn mul(self, rhs: Self) -> SchubertElement {
        self.checked_mul(rhs).expect("elements of different rings")
    }
}

#[cfg(test)]
mod tests;
