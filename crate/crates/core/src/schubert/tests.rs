use super::*;
use crate::algebra::linalg::rank;
use crate::algebra::{int, monomials_of_degree, p_class, rat};
use proptest::prelude::*;

fn ring(k: u32, r: u32) -> GrassmannRing {
    GrassmannRing::new(k, r).unwrap()
}

fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn cls(g: &GrassmannRing, parts: &[u32]) -> SchubertElement {
    g.class(&part(parts)).unwrap()
}

fn sigma_poly(degrees: &[u32], terms: &[(&[u32], i64)]) -> GradedPolynomial {
    GradedPolynomial::from_terms(degrees, terms.iter().map(|(e, c)| (e.to_vec(), int(*c)))).unwrap()
}

/// Brute-force count of weakly decreasing vectors in `[0, cols]^rows` by sum.
fn box_counts_oracle(rows: usize, cols: u32) -> Vec<usize> {
    let top = rows * cols as usize;
    let mut counts = vec![0usize; top + 1];
    let total = (cols as usize + 1).pow(rows as u32);
    for code in 0..total {
        let mut v = Vec::with_capacity(rows);
        let mut c = code;
        for _ in 0..rows {
            v.push(c % (cols as usize + 1));
            c /= cols as usize + 1;
        }
        if v.windows(2).all(|w| w[0] >= w[1]) {
            counts[v.iter().sum::<usize>()] += 1;
        }
    }
    counts
}

#[test]
fn enumerate_examples() {
    let g = ring(1, 3);
    assert_eq!(g.enumerate_partitions(2), vec![part(&[2]), part(&[1, 1])]);
    assert_eq!(g.enumerate_partitions(0), vec![Partition::empty()]);
    assert!(g.enumerate_partitions(5).is_empty());
}

#[test]
fn pieri_examples() {
    let g = ring(1, 3);
    assert_eq!(g.pieri(1, &Partition::empty()).unwrap(), cls(&g, &[1]));
    assert_eq!(
        g.pieri(1, &part(&[1])).unwrap(),
        &cls(&g, &[2]) + &cls(&g, &[1, 1])
    );
    assert_eq!(g.pieri(1, &part(&[2, 1])).unwrap(), cls(&g, &[2, 2]));
    assert!(g.pieri(0, &part(&[1])).is_err());
    assert!(g.pieri(3, &part(&[1])).is_err());
    assert!(g.pieri(1, &part(&[3])).is_err());
}

#[test]
fn pieri_agrees_with_giambelli_for_one_one() {
    // sigma_1 * sigma_1 - sigma_2 must be sigma_(1,1)
    let g = ring(1, 3);
    let s1 = g.special(1);
    assert_eq!(&(&s1 * &s1) - &g.special(2), cls(&g, &[1, 1]));
}

#[test]
fn giambelli_examples() {
    let g = ring(1, 3);
    let deg = g.sigma_degrees();
    assert_eq!(g.giambelli(&part(&[2])), sigma_poly(&deg, &[(&[0, 1], 1)]));
    assert_eq!(
        g.giambelli(&part(&[1, 1])),
        sigma_poly(&deg, &[(&[2, 0], 1), (&[0, 1], -1)])
    );
    // sigma_3 vanishes past the box
    assert_eq!(
        g.giambelli(&part(&[2, 1])),
        sigma_poly(&deg, &[(&[1, 1], 1)])
    );
    let big = ring(1, 4);
    assert_eq!(
        big.giambelli(&part(&[2, 1])),
        sigma_poly(&big.sigma_degrees(), &[(&[1, 1, 0], 1), (&[0, 0, 1], -1)])
    );
    assert_eq!(
        g.giambelli(&Partition::empty()),
        GradedPolynomial::one(&deg)
    );
}

#[test]
fn giambelli_evaluates_to_the_class() {
    for (k, r) in [(1, 3), (2, 5), (1, 5), (3, 5)] {
        let g = ring(k, r);
        for lam in g.basis() {
            assert_eq!(
                g.eval_sigma(&g.giambelli(&lam)).unwrap(),
                g.class(&lam).unwrap()
            );
        }
    }
}

#[test]
fn multiply_examples() {
    let g = ring(1, 3);
    assert_eq!(&cls(&g, &[2]) * &cls(&g, &[2]), cls(&g, &[2, 2]));
    assert!((&cls(&g, &[2]) * &cls(&g, &[1, 1])).is_zero());
    let x = &cls(&g, &[2]).scale(&rat(3, 2)) - &cls(&g, &[1]);
    assert_eq!(&g.one() * &x, x);
    assert_eq!(&x * &g.one(), x);
}

#[test]
fn ring_mismatch() {
    let a = ring(1, 3).special(1);
    let b = ring(1, 4).special(1);
    assert!(matches!(a.checked_mul(&b), Err(Error::ProfileMismatch(_))));
    assert!(matches!(a.checked_add(&b), Err(Error::ProfileMismatch(_))));
}

#[test]
fn chern_examples() {
    let g = ring(1, 3);
    assert_eq!(g.chern_s(0).unwrap(), g.one());
    assert_eq!(g.chern_s(1).unwrap(), -&cls(&g, &[1]));
    assert_eq!(g.chern_s(2).unwrap(), cls(&g, &[1, 1]));
    assert!(g.chern_s(3).is_err());
}

#[test]
fn chern_is_signed_column_class() {
    // c_i(S) = (-1)^i sigma_(1^i)
    for r in 1..=6 {
        for k in 0..=r {
            let g = ring(k, r);
            for i in 0..=k + 1 {
                let col = vec![1; i as usize];
                let expected = if g.contains(&part(&col)) {
                    cls(&g, &col).scale(&int(if i % 2 == 0 { 1 } else { -1 }))
                } else {
                    g.zero()
                };
                assert_eq!(g.chern_s(i).unwrap(), expected, "k={k} r={r} i={i}");
            }
        }
    }
}

#[test]
fn to_schubert_examples() {
    let g = ring(1, 3);
    let c1 = GradedPolynomial::generator(&[1, 2], 0);
    assert_eq!(g.to_schubert(&c1).unwrap(), -&cls(&g, &[1]));
    assert!(g.to_schubert(&p_class(3, 1)).unwrap().is_zero());
    assert_eq!(g.to_schubert(&p_class(2, 1)).unwrap(), cls(&g, &[2]));
    let inhomogeneous = &c1 + &GradedPolynomial::generator(&[1, 2], 1);
    assert_eq!(g.to_schubert(&inhomogeneous), Err(Error::NotHomogeneous));
    assert!(matches!(
        g.to_schubert(&GradedPolynomial::generator(&[1], 0)),
        Err(Error::ProfileMismatch(_))
    ));
}

#[test]
fn p_classes_are_quotient_classes() {
    // p_j = c_j(Q) = sigma_j for j <= r-k
    for r in 1..=5 {
        for k in 0..r {
            let g = ring(k, r);
            for j in 0..=r - k {
                assert_eq!(
                    g.to_schubert(&p_class(j as usize, k)).unwrap(),
                    g.special(j as i64)
                );
            }
        }
    }
}

#[test]
fn poincare_examples() {
    assert_eq!(ring(1, 3).poincare_dims(), vec![1, 1, 2, 1, 1]);
    assert_eq!(ring(0, 4).poincare_dims(), vec![1; 5]);
    assert_eq!(ring(1, 2).poincare_dims(), vec![1, 1, 1]);
    assert_eq!(ring(2, 2).poincare_dims(), vec![1]);
}

#[test]
fn poincare_matches_brute_force() {
    for r in 0..=6 {
        for k in 0..=r {
            let g = ring(k, r);
            let dims = g.poincare_dims();
            assert_eq!(dims, box_counts_oracle(g.rows(), g.cols()));
            assert_eq!(dims.iter().sum::<usize>() as u64, g.dimension());
        }
    }
}

#[test]
fn equivariant_examples() {
    assert_eq!(equivariant_point_dims(0, 5), vec![1; 6]);
    assert_eq!(equivariant_point_dims(1, 4), vec![1, 1, 2, 2, 3]);
    let n = 6;
    let dims = ring(1, n).poincare_dims();
    let eq = equivariant_point_dims(1, (n - 1) as usize);
    for j in 0..=(n - 1) as usize {
        assert_eq!(eq[j] as usize, dims[j]);
    }
}

#[test]
fn equivariant_counts_monomials() {
    for k in 0..4 {
        let eq = equivariant_point_dims(k, 10);
        let degrees: Vec<u32> = (1..=k + 1).collect();
        for (j, &n) in eq.iter().enumerate() {
            assert_eq!(monomials_of_degree(&degrees, j as u32).len() as u64, n);
        }
    }
}

#[test]
fn duality_examples() {
    let g = ring(1, 3);
    assert_eq!(
        g.duality_pair(&cls(&g, &[2]), &cls(&g, &[1, 1])).unwrap(),
        int(0)
    );
    assert_eq!(
        g.duality_pair(&cls(&g, &[2]), &cls(&g, &[2])).unwrap(),
        int(1)
    );
    assert_eq!(g.duality_pair(&g.one(), &cls(&g, &[2, 2])).unwrap(), int(1));
    assert!(g.duality_pair(&cls(&g, &[2]), &cls(&g, &[1])).is_err());
    for lam in g.basis() {
        let comp = lam.complement(g.rows(), g.cols()).unwrap();
        let pairing = g
            .duality_pair(&g.class(&lam).unwrap(), &g.class(&comp).unwrap())
            .unwrap();
        assert_eq!(pairing, int(1));
    }
}

#[test]
fn duality_is_a_permutation() {
    for r in 1..=5 {
        for k in 0..=2.min(r) {
            let g = ring(k, r);
            let top = g.top_degree();
            for d in 0..=top {
                let left = g.enumerate_partitions(d);
                let right = g.enumerate_partitions(top - d);
                assert_eq!(left.len(), right.len());
                for a in &left {
                    let row: Vec<Rational> = right
                        .iter()
                        .map(|b| {
                            g.duality_pair(&g.class(a).unwrap(), &g.class(b).unwrap())
                                .unwrap()
                        })
                        .collect();
                    assert_eq!(row.iter().filter(|x| x.is_one()).count(), 1);
                    assert_eq!(row.iter().filter(|x| x.is_zero()).count(), row.len() - 1);
                }
            }
        }
    }
}

#[test]
fn commutativity_through_two_expansions() {
    for r in 1..=5 {
        for k in 0..=2.min(r) {
            let g = ring(k, r);
            let basis = g.basis();
            for a in &basis {
                for b in &basis {
                    if a.size() + b.size() > g.top_degree() || a > b {
                        continue;
                    }
                    let (x, y) = (g.class(a).unwrap(), g.class(b).unwrap());
                    assert_eq!(&x * &y, &y * &x, "k={k} r={r} {a} {b}");
                }
            }
        }
    }
}

#[test]
fn dimension_soundness() {
    // the c-monomials of degree j span a space of the expected rank
    for (k, r) in [(1, 3), (1, 4), (2, 4), (2, 5)] {
        let g = ring(k, r);
        let degrees = chern_degrees(k);
        for (j, &dim) in g.poincare_dims().iter().enumerate() {
            let rows: Vec<Vec<Rational>> = monomials_of_degree(&degrees, j as u32)
                .into_iter()
                .map(|e| {
                    let m = GradedPolynomial::monomial(&degrees, e, int(1)).unwrap();
                    g.coordinates(&g.to_schubert(&m).unwrap(), j as u32)
                })
                .collect();
            assert_eq!(rank(&rows, dim), dim);
        }
    }
}

#[test]
fn sigma_relation_examples() {
    let g = ring(1, 3);
    let deg = g.sigma_degrees();
    assert_eq!(
        g.sigma_relations(),
        vec![
            sigma_poly(&deg, &[(&[3, 0], 1), (&[1, 1], -2)]),
            sigma_poly(&deg, &[(&[2, 1], 1), (&[0, 2], -1)]),
        ]
    );
    let g = ring(1, 2);
    assert_eq!(g.sigma_relations(), vec![sigma_poly(&[1], &[(&[3], 1)])]);
    assert!(ring(2, 2).sigma_relations().is_empty());
}

#[test]
fn sigma_relations_vanish() {
    for r in 1..=5 {
        for k in 0..r {
            let g = ring(k, r);
            for rel in g.sigma_relations() {
                assert!(g.eval_sigma(&rel).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn serialisation() {
    let g = ring(1, 3);
    let x = &cls(&g, &[1, 1]).scale(&rat(-1, 2)) + &cls(&g, &[2]);
    let json = serde_json::to_string(&x.to_json()).unwrap();
    assert_eq!(
        json,
        r#"{"k":1,"r":3,"d":1,"terms":[{"partition":[2],"coeff":"1"},{"partition":[1,1],"coeff":"-1/2"}]}"#
    );
    let back = GrassmannRing::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(back, x);
    assert_eq!(x.to_string(), "σ(2) - 1/2*σ(1,1)");
}

fn element_in(g: GrassmannRing) -> impl Strategy<Value = SchubertElement> {
    let basis = g.basis();
    proptest::collection::vec(-2i64..=2, basis.len()).prop_map(move |cs| {
        g.from_terms(basis.iter().cloned().zip(cs.into_iter().map(int)))
            .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn unit_and_associativity(
        a in element_in(ring(2, 4)),
        b in element_in(ring(2, 4)),
        c in element_in(ring(2, 4)),
    ) {
        let g = a.ring().clone();
        prop_assert_eq!(&g.one() * &a, a.clone());
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }
}
