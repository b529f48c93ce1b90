use num_traits::One;

use crate::algebra::linalg::{nullspace, RowEchelon};
use crate::algebra::{ideal_span, monomials_of_degree, GradedPolynomial, Rational};

use super::GrassmannRing;

/// Minimal generators of the kernel of `Q[sigma_1..sigma_{r-k}] -> Ch(k,r,1)`.
///
/// Degree by degree, the kernel is computed by exact linear algebra, the
/// part already generated by lower-degree relations is divided out, and the
/// remainder is put in reduced echelon form with columns ordered by
/// descending exponent vectors. Each generator is scaled to primitive
/// integer content with a positive leading coefficient.
pub(super) fn sigma_relations(ring: &GrassmannRing) -> Vec<GradedPolynomial> {
    let degrees = ring.sigma_degrees();
    let mut gens: Vec<GradedPolynomial> = Vec::new();
    for d in 1..=ring.top_degree() + 1 {
        let monos = monomials_of_degree(&degrees, d);
        if monos.is_empty() {
            continue;
        }
        let images: Vec<Vec<Rational>> = monos
            .iter()
            .map(|e| {
                let m = GradedPolynomial::monomial(&degrees, e.clone(), Rational::one())
                    .expect("exponent length");
                let x = ring.eval_sigma(&m).expect("sigma profile");
                ring.coordinates(&x, d)
            })
            .collect();
        let nparts = ring.enumerate_partitions(d).len();
        let rows: Vec<Vec<Rational>> = (0..nparts)
            .map(|i| images.iter().map(|col| col[i].clone()).collect())
            .collect();
        let kernel = nullspace(&rows, monos.len());
        let generated = ideal_span(&gens, &degrees, &monos, d);
        let fresh = RowEchelon::new(
            kernel.iter().map(|v| generated.reduce(v)).collect(),
            monos.len(),
        );
        for row in fresh.rows() {
            let p = GradedPolynomial::from_terms(
                &degrees,
                monos.iter().cloned().zip(row.iter().cloned()),
            )
            .expect("exponent length");
            gens.push(p.primitive_by(|a, b| b.cmp(a)));
        }
    }
    gens
}
