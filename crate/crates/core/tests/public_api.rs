use chow_core::algebra::{p_class, parse_rational};
use chow_core::git::{
    basepoint_free, embed_state, hm_verdict, MapTuple, MapTupleJson, WeightVector,
};
use chow_core::nonlinear::NonlinearJson;
use chow_core::projbundle::{pushforward, XiPolynomial};
use chow_core::schubert::SchubertJson;
use chow_core::{Error, GrassmannRing, NonlinearRing, Partition};

#[test]
fn nonlinear_product_through_json() {
    let ring = NonlinearRing::new(1, 3, 2).unwrap();
    let text = r#"{"k":1,"r":3,"d":2,"terms":[{"smonomial":[1],"coeff":"1"}]}"#;
    let s1 =
        NonlinearRing::from_json(&serde_json::from_str::<NonlinearJson>(text).unwrap()).unwrap();
    let cube = ring
        .nl_multiply(&s1, &ring.nl_multiply(&s1, &s1).unwrap())
        .unwrap();
    assert_eq!(cube.to_string(), "4*s1*s2");
    // 4 d^{1+1} d^{1+2} sigma_1 sigma_2 = 128 sigma_(2,1)
    let image = ring.lambda_map(&cube).unwrap();
    let json: SchubertJson =
        serde_json::from_value(serde_json::to_value(image.to_json()).unwrap()).unwrap();
    assert_eq!(json.terms.len(), 1);
    assert_eq!(json.terms[0].partition, vec![2, 1]);
    assert_eq!(
        parse_rational(&json.terms[0].coeff).unwrap(),
        parse_rational("128").unwrap()
    );
}

#[test]
fn grassmannian_and_bundle_agree() {
    let g = GrassmannRing::new(2, 5).unwrap();
    for l in 2..=8 {
        let push = pushforward(&XiPolynomial::xi_power(&g, l));
        assert_eq!(push, g.to_schubert(&p_class(l - 2, 2)).unwrap());
    }
    let point = g.class(&g.point_class()).unwrap();
    let sigma1 = g.class(&Partition::new(vec![1]).unwrap()).unwrap();
    let mut acc = g.one();
    for _ in 0..g.top_degree() {
        acc = g.multiply(&acc, &sigma1).unwrap();
    }
    // degree of G(P^2, P^5) in its Plücker embedding
    assert_eq!(acc, point.scale(&parse_rational("42").unwrap()));
}

#[test]
fn stability_from_json() {
    let text = r#"{"k":1,"r":1,"d":2,"forms":[[{"exponents":[2,0],"coeff":"1"}],[{"exponents":[0,2],"coeff":"1"}]]}"#;
    let m = MapTuple::from_json(&serde_json::from_str::<MapTupleJson>(text).unwrap()).unwrap();
    assert!(basepoint_free(&m).is_free());
    let state = embed_state(&m, 4).unwrap();
    for w in [[1, -1], [-1, 1], [-3, -2], [5, -7]] {
        assert!(hm_verdict(&state, &WeightVector::new(w.to_vec()).unwrap())
            .unwrap()
            .is_positive());
    }
}

#[test]
fn errors_surface_cleanly() {
    assert!(matches!(
        NonlinearRing::new(2, 1, 1),
        Err(Error::Argument(_))
    ));
    let a = GrassmannRing::new(1, 3).unwrap();
    let b = GrassmannRing::new(1, 4).unwrap();
    assert!(matches!(
        a.multiply(&a.one(), &b.one()),
        Err(Error::ProfileMismatch(_))
    ));
}
