//! Common zeros of the forms of a tuple.
//!
//! Binary forms (`k = 1`) are handled exactly through a polynomial gcd over
//! the rationals. In more variables only the coordinate points are checked
//! exactly, followed by a finite search, so "undetermined" is a possible
//! answer.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::MapTuple;
use crate::algebra::{format_rational, Rational};

/// Default number of pseudorandom points tried when `k >= 2`.
pub const DEFAULT_POINT_SAMPLES: usize = 64;
pub const DEFAULT_POINT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Basepoint {
    /// Homogeneous coordinates of a common zero.
    Point(Vec<Rational>),
    /// For `k = 1`: a common factor with no rational root, as ascending
    /// coefficients of a monic polynomial in `x = S/T`.
    CommonFactor(Vec<Rational>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasepointStatus {
    Free,
    BasepointFound(Basepoint),
    /// No basepoint found after checking this many points.
    Undetermined {
        points_checked: usize,
    },
}

impl BasepointStatus {
    pub fn is_free(&self) -> bool {
        matches!(self, BasepointStatus::Free)
    }

    pub fn has_basepoint(&self) -> bool {
        matches!(self, BasepointStatus::BasepointFound(_))
    }
}

#[derive(Serialize)]
struct StatusJson {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    point: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    factor: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    points_checked: Option<usize>,
}

impl Serialize for BasepointStatus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
        let json = match self {
            BasepointStatus::Free => StatusJson {
                status: "free",
                point: None,
                factor: None,
                points_checked: None,
            },
            BasepointStatus::BasepointFound(Basepoint::Point(p)) => StatusJson {
                status: "basepoint_found",
                point: Some(strs(p)),
                factor: None,
                points_checked: None,
            },
            BasepointStatus::BasepointFound(Basepoint::CommonFactor(f)) => StatusJson {
                status: "basepoint_found",
                point: None,
                factor: Some(strs(f)),
                points_checked: None,
            },
            BasepointStatus::Undetermined { points_checked } => StatusJson {
                status: "undetermined",
                point: None,
                factor: None,
                points_checked: Some(*points_checked),
            },
        };
        json.serialize(s)
    }
}

pub fn basepoint_free(m: &MapTuple) -> BasepointStatus {
    basepoint_free_with(m, DEFAULT_POINT_SAMPLES, DEFAULT_POINT_SEED)
}

/// As [`basepoint_free`], with the number of random points and the seed used
/// when `k >= 2`.
pub fn basepoint_free_with(m: &MapTuple, samples: usize, seed: u64) -> BasepointStatus {
    match m.k() {
        // P^0 is a point and some form is a nonzero constant multiple of v_0*^d
        0 => BasepointStatus::Free,
        1 => binary_forms(m),
        _ => search(m, samples, seed),
    }
}

fn binary_forms(m: &MapTuple) -> BasepointStatus {
    let d = m.d();
    let coordinate_zero = |j: usize| m.values_at_coordinate_point(j).iter().all(Zero::is_zero);
    // every form divisible by S: [0:1] is a common zero, and symmetrically for T
    if coordinate_zero(1) {
        return BasepointStatus::BasepointFound(Basepoint::Point(vec![
            Rational::zero(),
            Rational::one(),
        ]));
    }
    if coordinate_zero(0) {
        return BasepointStatus::BasepointFound(Basepoint::Point(vec![
            Rational::one(),
            Rational::zero(),
        ]));
    }
    // remaining common zeros have T != 0; dehomogenize at T = 1
    let mut g: Vec<Rational> = Vec::new();
    for f in m.forms() {
        let u: Vec<Rational> = (0..=d).map(|a| f.coeff(&[a, d - a])).collect();
        g = poly_gcd(g, trim(u));
    }
    match g.len() {
        0 | 1 => BasepointStatus::Free,
        2 => BasepointStatus::BasepointFound(Basepoint::Point(vec![
            -g[0].clone() / &g[1],
            Rational::one(),
        ])),
        _ => match rational_root(&g) {
            Some(x) => BasepointStatus::BasepointFound(Basepoint::Point(vec![x, Rational::one()])),
            None => BasepointStatus::BasepointFound(Basepoint::CommonFactor(g)),
        },
    }
}

fn trim(mut u: Vec<Rational>) -> Vec<Rational> {
    while u.last().is_some_and(Zero::is_zero) {
        u.pop();
    }
    u
}

/// Remainder of `a` modulo nonzero `b`, both ascending coefficient lists.
fn poly_rem(mut a: Vec<Rational>, b: &[Rational]) -> Vec<Rational> {
    let lead = b.last().expect("nonzero divisor");
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let factor = a.last().expect("nonempty") / lead;
        for (i, c) in b.iter().enumerate() {
            a[shift + i] -= &factor * c;
        }
        a.pop();
        a = trim(a);
    }
    a
}

/// Monic gcd by the Euclidean algorithm; the empty list stands for zero.
fn poly_gcd(mut a: Vec<Rational>, mut b: Vec<Rational>) -> Vec<Rational> {
    while !b.is_empty() {
        let r = poly_rem(a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        for c in &mut a {
            *c /= &lead;
        }
    }
    a
}

fn eval_univariate(u: &[Rational], x: &Rational) -> Rational {
    u.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// A rational root by the rational root test on the integer-cleared
/// polynomial; only called on low-degree gcds.
fn rational_root(u: &[Rational]) -> Option<Rational> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    if u[0].is_zero() {
        return Some(Rational::zero());
    }
    let lcm = u.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = u.iter().map(|c| (c * &lcm).to_integer()).collect();
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let n = if n < &BigInt::zero() { -n } else { n.clone() };
        let mut out = Vec::new();
        let mut i = BigInt::one();
        while &i * &i <= n {
            if (&n % &i).is_zero() {
                out.push(i.clone());
                out.push(&n / &i);
            }
            i += 1;
        }
        out
    };
    for p in divisors(&ints[0]) {
        for q in divisors(ints.last().expect("nonempty")) {
            for sign in [1, -1] {
                let x = Rational::new(&p * sign, q.clone());
                if eval_univariate(u, &x).is_zero() {
                    return Some(x);
                }
            }
        }
    }
    None
}

fn vanishes_at(m: &MapTuple, point: &[Rational]) -> bool {
    m.forms().iter().all(|f| {
        f.terms()
            .fold(Rational::zero(), |acc, (e, c)| {
                let mono = e.iter().zip(point).fold(c.clone(), |t, (&p, x)| {
                    t * num_traits::pow(x.clone(), p as usize)
                });
                acc + mono
            })
            .is_zero()
    })
}

fn search(m: &MapTuple, samples: usize, seed: u64) -> BasepointStatus {
    let n = m.num_variables();
    for j in 0..n {
        if m.values_at_coordinate_point(j).iter().all(Zero::is_zero) {
            let mut p = vec![Rational::zero(); n];
            p[j] = Rational::one();
            return BasepointStatus::BasepointFound(Basepoint::Point(p));
        }
    }
    let mut checked = n;
    // points with entries in {-1, 0, 1}, first nonzero entry 1
    let grid = 3usize.pow(n as u32);
    for code in 0..grid {
        let p: Vec<i64> = (0..n)
            .map(|i| (code / 3usize.pow(i as u32) % 3) as i64 - 1)
            .collect();
        if p.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let p: Vec<Rational> = p
            .into_iter()
            .map(|x| Rational::from_integer(x.into()))
            .collect();
        checked += 1;
        if vanishes_at(m, &p) {
            return BasepointStatus::BasepointFound(Basepoint::Point(p));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let p: Vec<Rational> = (0..n)
            .map(|_| {
                Rational::new(
                    rng.gen_range(-20i64..=20).into(),
                    rng.gen_range(1i64..=5).into(),
                )
            })
            .collect();
        if p.iter().all(Zero::is_zero) {
            continue;
        }
        checked += 1;
        if vanishes_at(m, &p) {
            return BasepointStatus::BasepointFound(Basepoint::Point(p));
        }
    }
    BasepointStatus::Undetermined {
        points_checked: checked,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    #[test]
    fn gcd_of_univariate_polynomials() {
        // (x - 1)(x + 2) and (x - 1)(x - 3)
        let a = vec![int(-2), int(1), int(1)];
        let b = vec![int(3), int(-4), int(1)];
        assert_eq!(poly_gcd(a, b), vec![int(-1), int(1)]);
        assert_eq!(
            poly_gcd(vec![int(2), int(4)], vec![]),
            vec![rat(1, 2), int(1)]
        );
        assert_eq!(poly_gcd(vec![int(1), int(1)], vec![int(2)]), vec![int(1)]);
    }

    #[test]
    fn rational_roots() {
        // 6x^2 - 5x + 1 = (2x - 1)(3x - 1)
        let u = vec![int(1), int(-5), int(6)];
        let x = rational_root(&u).unwrap();
        assert!(eval_univariate(&u, &x).is_zero());
        assert_eq!(rational_root(&[int(1), int(0), int(1)]), None);
    }
}
