use braidkit::models::{build_model, BUILTIN_MODELS};
use braidkit::report::{
    classical_limit, flatness, run_suite, run_verify_suite, structural_battery, Status, SuiteConfig, VerificationReport,
};
use braidkit::Error;

#[test]
fn structural_battery_per_model() {
    for name in BUILTIN_MODELS {
        let m = build_model(name).unwrap();
        let bad: Vec<_> = structural_battery(&m).into_iter().filter(|e| !e.passed()).map(|e| e.identity).collect();
        if name == "quantum_plane:3" {
            assert_eq!(bad, vec!["metric-lower", "metric-upper"]);
        } else {
            assert!(bad.is_empty(), "{name}: {bad:?}");
        }
    }
}

#[test]
fn classical_limit_and_flatness() {
    for name in BUILTIN_MODELS {
        let m = build_model(name).unwrap();
        for e in classical_limit(&m, 4).iter().chain(&flatness(&m, 5)) {
            assert!(e.passed(), "{name} {} {}: {}", e.identity, e.degree, e.residual);
        }
    }
}

#[test]
fn matrix_models_pass_the_suite() {
    for name in ["q_euclidean_4", "q_minkowski_4"] {
        let r = run_verify_suite(name, SuiteConfig::default()).unwrap();
        let bad: Vec<_> = r.failures().map(|e| format!("{} {}", e.identity, e.degree)).collect();
        assert!(r.all_pass(), "{name}: {bad:?}");
        assert!(r.entries.iter().any(|e| e.identity == "adjoint-derivative"));
        assert!(r.entries.iter().any(|e| e.identity == "conjugation-symmetry"));
    }
}

#[test]
fn plane_suite_exposes_the_missing_star() {
    let r = run_verify_suite("quantum_plane:2", SuiteConfig { max_degree: 2, lambda_nu: true }).unwrap();
    assert!(!r.all_pass());
    let bad: Vec<_> = r.failures().map(|e| e.identity.as_str()).collect();
    assert!(bad.contains(&"theta-star"));
    assert!(bad.contains(&"conjugation-symmetry"));
    assert!(!bad.contains(&"leibniz"));
}

#[test]
fn unknown_model_is_an_error() {
    assert_eq!(run_verify_suite("nope", SuiteConfig::default()).unwrap_err(), Error::UnknownModel("nope".into()));
}

#[test]
fn report_serialization_is_deterministic() {
    let m = build_model("quantum_plane:2").unwrap();
    let cfg = SuiteConfig { max_degree: 2, lambda_nu: false };
    let a = run_suite(&m, cfg);
    let b = run_suite(&build_model("quantum_plane:2").unwrap(), cfg);
    assert_eq!(a.to_json(), b.to_json());
    let back = VerificationReport::from_json(&a.to_json()).unwrap();
    assert!(back.timings.is_empty());
    assert_eq!(back.entries, a.entries);
    assert!(!back.config.lambda_nu);
    let json: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
    assert!(json.get("timings").is_none());
    assert_eq!(json["entries"][0]["status"], "pass");
    let text = a.to_text();
    assert_eq!(text.lines().count(), a.entries.len() + 1);
    for (line, e) in text.lines().skip(1).zip(&a.entries) {
        assert!(line.starts_with(if e.status == Status::Pass { "PASS" } else { "FAIL" }));
        assert!(line.contains(&e.anchor));
    }
}
