//! Exact arithmetic substrate: rationals, weighted-graded polynomials,
//! truncated power series and rational linear algebra.

mod ideal;
pub mod linalg;
mod poly;
mod rational;
mod series;

pub use ideal::ideal_span;
pub use poly::{monomials_of_degree, GradedPolynomial, PolyRecord};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use series::{chern_degrees, chern_series, p_class, series_inverse, PClasses, TruncatedSeries};
