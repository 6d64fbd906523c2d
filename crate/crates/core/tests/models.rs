use braidkit::models::{
    build_model, build_model_spec, load_custom_model, spec_from_json, spec_to_json, validate, Layout, StarType,
    BUILTIN_MODELS,
};
use braidkit::rmatrix::{hecke_check, theta_matrices};
use braidkit::{Error, Mat, QScalar, RMatrix};

fn q(c: i64, k: i32) -> QScalar {
    QScalar::monomial(c, k)
}

fn diag(d: &[QScalar]) -> Mat {
    Mat::from_fn(d.len(), d.len(), |i, j| if i == j { d[i].clone() } else { QScalar::zero() })
}

#[test]
fn builtin_catalog() {
    for name in BUILTIN_MODELS {
        let spec = build_model_spec(name).unwrap();
        assert_eq!(spec.name, name);
        validate(&spec).unwrap();
    }
    assert_eq!(build_model("q_heisenberg").unwrap_err(), Error::UnknownModel("q_heisenberg".into()));
}

#[test]
fn metric_data() {
    let p2 = build_model("quantum_plane:2").unwrap();
    assert_eq!(p2.lambda_sq().unwrap(), &q(1, -3));
    assert_eq!(p2.spec.lambda, None);
    assert_eq!(p2.eta().unwrap(), &Mat::from_rows(vec![vec![q(0, 0), q(1, 0)], vec![q(-1, -1), q(0, 0)]]));
    let p3 = build_model("quantum_plane:3").unwrap();
    assert_eq!(p3.eta().unwrap_err(), Error::NoMetric);
    assert!(p3.spec.metric_error.is_some());
    for name in ["q_euclidean_4", "q_minkowski_4"] {
        let m = build_model(name).unwrap();
        assert_eq!(m.lambda_sq().unwrap(), &q(1, -2));
        assert_eq!(m.spec.lambda, Some(q(1, -1)));
        let eta = m.eta().unwrap();
        let up = m.eta_upper().unwrap();
        assert_eq!(up.transpose().mul(eta), Mat::identity(4));
    }
}

#[test]
fn theta_data_of_matrix_models() {
    let v = diag(&[q(1, -4), q(1, -2), q(1, -6), q(1, -4)]);
    let u = diag(&[q(1, -4), q(1, -6), q(1, -2), q(1, -4)]);
    for name in ["q_euclidean_4", "q_minkowski_4"] {
        let m = build_model(name).unwrap();
        let (mv, mu, nu) = m.theta().unwrap();
        assert_eq!((mv, mu, nu), (&v, &u, &q(1, -4)), "{name}");
        let direct = theta_matrices(&m.spec.r, &QScalar::one()).unwrap();
        assert_eq!(direct.v, v);
    }
    let p2 = build_model("quantum_plane:2").unwrap();
    assert_eq!(p2.theta().unwrap().2, &q(1, -3));
}

#[test]
fn layouts_and_stars() {
    let e = build_model("q_euclidean_4").unwrap();
    assert_eq!((e.layout(), &e.spec.star_type), (Layout::MatrixEuclidean, &StarType::RealTypeI));
    let k = build_model("q_minkowski_4").unwrap();
    assert_eq!(k.layout(), Layout::MatrixMinkowski);
    assert_eq!((0..4).map(|i| k.spec.star_type.bar(i)).collect::<Vec<_>>(), vec![0, 2, 1, 3]);
    assert!(hecke_check(k.seed().unwrap()).holds);
    assert!(matches!(build_model("quantum_plane:2").unwrap().seed(), Err(Error::LayoutError(_))));
}

#[test]
fn spec_json_round_trip() {
    for name in BUILTIN_MODELS {
        let spec = build_model_spec(name).unwrap();
        let text = spec_to_json(&spec);
        assert_eq!(spec_from_json(&text).unwrap(), spec);
        assert_eq!(spec_to_json(&spec_from_json(&text).unwrap()), text);
    }
    assert!(matches!(spec_from_json("{"), Err(Error::Format(_))));
}

#[test]
fn custom_plane_matches_builtin() {
    let r = RMatrix::frt(2).scale(&QScalar::q());
    let m = load_custom_model("my_plane", &r.to_json(), None).unwrap();
    let b = build_model("quantum_plane:2").unwrap();
    assert_eq!(m.spec.r_prime, b.spec.r_prime);
    assert_eq!(m.eta().unwrap(), b.eta().unwrap());
    assert_eq!(m.theta().unwrap(), b.theta().unwrap());
}

#[test]
fn custom_model_validation() {
    let mut r = RMatrix::frt(2).scale(&QScalar::q());
    r.set(0, 1, 1, 0, QScalar::from_int(7));
    assert!(load_custom_model("broken", &r.to_json(), None).is_err());
    let mut spec = build_model_spec("quantum_plane:2").unwrap();
    spec.r_prime = spec.r.clone();
    assert!(matches!(validate(&spec), Err(Error::ModelValidation(_))));
    let bad = r#"{"n": 2, "entries": [{"i": 0, "j": 0, "k": 0, "l": 5, "value": "1"}]}"#;
    assert!(matches!(load_custom_model("x", bad, None), Err(Error::IndexOutOfRange(_))));
}
