//! The twelve acceptance criteria. Each prints one PASS/FAIL line; the
//! target itself only fails on harness problems, not on a failed criterion.

use std::time::{Duration, Instant};

use braidkit::integration::{adjointness_residual, conj_symmetry_residual, moment_residual, z_moment, FormConfig};
use braidkit::models::{build_model, Layout, BUILTIN_MODELS};
use braidkit::operators::{
    cross_relation_residual, intertwiner_residual, leibniz_residual, twisting_residual, LeibnizVariant,
};
use braidkit::report::{classical_limit, flatness, structural_battery, SuiteEntry};
use braidkit::star_metric::star_coordinate;
use braidkit::{Mat, Model, QScalar};

const MATRIX_MODELS: [&str; 2] = ["q_euclidean_4", "q_minkowski_4"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn model(name: &str) -> Model {
    build_model(name).expect("built-in model")
}

fn from_entries(groups: Vec<(String, Vec<SuiteEntry>)>) -> Outcome {
    let mut bad = Vec::new();
    let mut total = 0;
    for (name, entries) in groups {
        total += entries.len();
        bad.extend(entries.iter().filter(|e| !e.passed()).map(|e| format!("{name} {} d{}: {}", e.identity, e.degree, e.residual)));
    }
    let pass = bad.is_empty() && total > 0;
    let detail = if pass {
        format!("{total} checks zero")
    } else {
        let shown: Vec<_> = bad.iter().take(4).cloned().collect();
        format!("{} of {total} nonzero; {}", bad.len(), shown.join("; "))
    };
    Outcome { pass, detail }
}

fn diag(d: &[i32]) -> Mat {
    Mat::from_fn(d.len(), d.len(), |i, j| if i == j { QScalar::q_pow(d[i]) } else { QScalar::zero() })
}

fn theta_data() -> Outcome {
    let (v, u) = (diag(&[-4, -6, -2, -4]), diag(&[-4, -2, -6, -4]));
    let mut bad = Vec::new();
    for name in MATRIX_MODELS {
        let m = model(name);
        match m.theta() {
            Ok((mv, mu, nu)) => {
                if (mv, mu, nu) != (&v, &u, &QScalar::q_pow(-4)) {
                    let d = |x: &Mat| (0..4).map(|i| x.get(i, i).to_string()).collect::<Vec<_>>().join(",");
                    bad.push(format!("{name}: v=diag({}) u=diag({}) λ_ν={nu}", d(mv), d(mu)));
                }
            }
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    Outcome { pass: bad.is_empty(), detail: if bad.is_empty() { "exact".into() } else { bad.join("; ") } }
}

fn generator_stars() -> Outcome {
    let expected = [
        ("q_euclidean_4", ["x[3]", "-q*x[2]", "-q^-1*x[1]", "x[0]"]),
        ("q_minkowski_4", ["x[0]", "q^2*x[2]", "q^-2*x[1]", "x[3]"]),
    ];
    let mut bad = Vec::new();
    for (name, images) in expected {
        let m = model(name);
        for (i, want) in images.iter().enumerate() {
            let x = m.alg.parse_element(m.name(), &format!("x[{i}]")).unwrap();
            let want = m.alg.parse_element(m.name(), want).unwrap();
            match star_coordinate(&m, &x) {
                Ok(got) if got == want => {}
                Ok(_) => bad.push(format!("{name} x[{i}]")),
                Err(e) => bad.push(format!("{name} x[{i}]: {e}")),
            }
        }
    }
    Outcome { pass: bad.is_empty(), detail: if bad.is_empty() { "8 images exact".into() } else { bad.join("; ") } }
}

fn every_model(f: impl Fn(&Model) -> Vec<SuiteEntry>) -> Outcome {
    from_entries(BUILTIN_MODELS.iter().map(|n| (n.to_string(), f(&model(n)))).collect())
}

fn leibniz() -> Outcome {
    let mut groups = Vec::new();
    for name in BUILTIN_MODELS {
        let m = model(name);
        let variants: &[LeibnizVariant] = match m.layout() {
            Layout::Vector => &[LeibnizVariant::Leib, LeibnizVariant::LowLeib],
            Layout::MatrixEuclidean => &[LeibnizVariant::EucDif],
            Layout::MatrixMinkowski => &[LeibnizVariant::MinkDif],
        };
        for &v in variants {
            let entries = leibniz_residual(&m, v, 3).expect("variant applies to layout");
            groups.push((name.to_string(), entries));
        }
    }
    from_entries(groups)
}

fn adjointness() -> Outcome {
    let cfg = FormConfig::default();
    from_entries(MATRIX_MODELS.iter().map(|n| (n.to_string(), adjointness_residual(&model(n), 4, cfg))).collect())
}

fn quadratic_moment(m: &Model, i: usize, j: usize) -> braidkit::Result<QScalar> {
    let n = m.n();
    let rinv = m.spec.r.inverse()?;
    let eta = m.eta()?;
    let mut s = QScalar::zero();
    for a in 0..n {
        for b in 0..n {
            s += eta.get(a, b) * rinv.get(a, j, b, i);
        }
    }
    Ok(s * &m.lambda_sq()?.inv()?)
}

fn moments_criterion(m: &Model) -> Vec<SuiteEntry> {
    let n = m.n();
    let mut low = Vec::new();
    let check = |t: &[usize], want: braidkit::Result<QScalar>| -> braidkit::Result<bool> { Ok(z_moment(m, t)? == want?) };
    let mut ok = check(&[], Ok(QScalar::one()));
    for i in 0..n {
        ok = ok.and_then(|b| Ok(b && check(&[i], Ok(QScalar::zero()))?));
        for j in 0..n {
            ok = ok.and_then(|b| Ok(b && check(&[i, j], quadratic_moment(m, i, j))?));
        }
    }
    low.push(match ok {
        Ok(b) => SuiteEntry::new("moments-low", "Z[1], Z[x_i], Z[x_i x_j]", 2, if b { "0".into() } else { "mismatch".into() }),
        Err(e) => SuiteEntry::failed("moments-low", "Z[1], Z[x_i], Z[x_i x_j]", 2, &e),
    });
    low.extend(
        moment_residual(m, 5).into_iter().filter(|e| e.identity != "moments-kill-relations" || e.degree <= 4),
    );
    low
}

fn run(num: usize, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let in_time = limit.map_or(true, |l| took <= l);
    let pass = out.pass && in_time;
    let timing = match limit {
        Some(l) => format!("{:.2}s, limit {}s", took.as_secs_f64(), l.as_secs()),
        None => format!("{:.2}s", took.as_secs_f64()),
    };
    println!("{} {num:>2} {title} [{timing}]: {}", if pass { "PASS" } else { "FAIL" }, out.detail);
    pass
}

#[test]
fn acceptance() {
    let secs = |s| Some(Duration::from_secs(s));
    let results = [
        run(1, "theta data v, u, λ_ν", secs(10), theta_data),
        run(2, "coordinate star on generators", secs(5), generator_stars),
        run(3, "structural battery", secs(60), || every_model(structural_battery)),
        run(4, "antipode intertwines derivatives, degree <= 4", secs(300), || {
            every_model(|m| intertwiner_residual(m, 4))
        }),
        run(5, "Leibniz rules, degree <= 3", secs(300), leibniz),
        run(6, "adjointness, |b|+|c| <= 4", secs(600), adjointness),
        run(7, "conjugation symmetry, |b|,|c| <= 3", secs(300), || {
            every_model(|m| conj_symmetry_residual(m, 3, FormConfig::default()))
        }),
        run(8, "moments", None, || every_model(moments_criterion)),
        run(9, "twisting, m+k <= 3", None, || every_model(|m| twisting_residual(m, 3))),
        run(10, "cross relations, degree <= 3", None, || every_model(|m| cross_relation_residual(m, 3))),
        run(11, "classical limit at q = 1, degree <= 4", None, || every_model(|m| classical_limit(m, 4))),
        run(12, "flatness, m <= 5", None, || every_model(|m| flatness(m, 5))),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("{passed}/{} criteria pass", results.len());
}
