use num_traits::One;

use super::linalg::RowEchelon;
use super::{monomials_of_degree, GradedPolynomial, Rational};

/// Degree-`d` part of the ideal generated by homogeneous `gens`, as the span
/// of all `m * g` in coordinates over the monomial list `monos`.
pub fn ideal_span(
    gens: &[GradedPolynomial],
    degrees: &[u32],
    monos: &[Vec<u32>],
    d: u32,
) -> RowEchelon {
    let mut span = RowEchelon::empty(monos.len());
    for g in gens {
        let Some(e) = g.homogeneous_degree() else {
            continue;
        };
        if e > d {
            continue;
        }
        for m in monomials_of_degree(degrees, d - e) {
            let mono =
                GradedPolynomial::monomial(degrees, m, Rational::one()).expect("exponent length");
            let prod = &mono * g;
            span.insert(monos.iter().map(|x| prod.coeff(x)).collect());
        }
    }
    span
}
