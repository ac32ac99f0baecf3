//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use colour_lie::alt::*;
use colour_lie::catalog::*;
use colour_lie::commands::{cmd_moment, load_file};
use colour_lie::covariants::*;
use colour_lie::curvature::{curvature_from, is_special, CurvatureTensor};
use colour_lie::extension::{extend, extend_sl2, extension_maps, zero_phi};
use colour_lie::random::{random_form, GradingKind};
use colour_lie::rep::{fundamental_so, lemma_trace_check, mu_can, OrthRep};
use colour_lie::{FieldDescriptor, Scalar, Verdict};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: FieldDescriptor = FieldDescriptor::Rational;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }

    fn from_verdict(v: &Verdict, detail: impl Into<String>) -> Self {
        match v {
            Verdict::Pass => Outcome::new(true, detail),
            Verdict::Fail(ws) => Outcome::new(false, format!("{} (witness: {})", detail.into(), ws[0])),
        }
    }
}

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn special_fixtures() -> Vec<(String, OrthRep)> {
    let mut out = Vec::new();
    for (name, variants) in PRESETS {
        for v in *variants {
            out.push((format!("{name}/{v}"), preset(name, Some(v), Q).unwrap()));
        }
    }
    out
}

fn tensor() -> OrthRep {
    preset("so_tensor_sl2", Some("hyperbolic"), Q).unwrap()
}

/// Representations with an admissible φ, for the extension criteria.
fn extension_fixtures() -> Vec<(String, OrthRep, AltMap)> {
    let mut out = Vec::new();
    for v in ["odd-plane", "euclidean3", "super12", "hyperbolic"] {
        let r = preset("fundamental_so", Some(v), Q).unwrap();
        let phi = zero_phi(r.space());
        out.push((format!("fundamental_so/{v} φ=0"), r, phi));
    }
    let r = tensor();
    let phi = zero_phi(r.space());
    out.push(("so_tensor_sl2/hyperbolic φ=0".into(), r, phi));
    let r = abelian_odd_plane(Q).unwrap();
    let phi = zero_phi(r.space());
    out.push(("abelian odd plane φ=0".into(), r, phi));
    let (r, phi) = sl2_killing_fixture(Q).unwrap();
    out.push(("g={0}, sl(2) Killing, φ=bracket".into(), r.clone(), phi.clone()));
    out.push(("g={0}, sl(2) Killing, φ=2·bracket".into(), r, phi.scale(&Scalar::from_int(Q, 2))));
    let (r, phi) = three_form_fixture(Q).unwrap();
    out.push(("g={0}, 3-form φ".into(), r, phi));
    for c in [-2, -1, 1, 2, 3] {
        let (r, phi) = so3_cross_fixture(Q, c).unwrap();
        out.push((format!("so(3), φ={c}·cross"), r, phi));
    }
    out
}

fn criterion_1() -> Outcome {
    let text = std::fs::read_to_string(fixtures_dir().join("sl2.json")).unwrap();
    let out = cmd_moment(&load_file(&text).unwrap(), None).unwrap();
    let v: serde_json::Value = serde_json::from_str(&out.json.unwrap()).unwrap();
    let expected = serde_json::json!([
        { "tuple": ["p", "p"], "matrix": [["0", "-2"], ["0", "0"]] },
        { "tuple": ["p", "q"], "matrix": [["1", "0"], ["0", "-1"]] },
        { "tuple": ["q", "q"], "matrix": [["0", "0"], ["2", "0"]] },
    ]);
    let got: Vec<serde_json::Value> = v["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| serde_json::json!({ "tuple": e["tuple"], "matrix": e["matrix"] }))
        .collect();
    let ok = serde_json::Value::Array(got.clone()) == expected && out.report.all_pass();
    Outcome::new(ok, if ok { "three matrices match".to_string() } else { format!("got {got:?}") })
}

fn random_forms(count: usize, max_dim: usize) -> Vec<colour_lie::graded::FormEps> {
    let mut out = Vec::new();
    for (i, field) in [Q, FieldDescriptor::prime(7).unwrap()].into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + i as u64);
        for k in 0..count {
            let kind = GradingKind::ALL[k % 3];
            let dim = 1 + k % max_dim;
            out.push(random_form(kind, field, dim, &mut rng));
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let forms = random_forms(20, 4);
    for f in &forms {
        let (so, rep) = fundamental_so(f).unwrap();
        if mu_can(&so, f).unwrap() != rep.moment_map().unwrap() {
            return Outcome::new(false, format!("closed form differs on a dim {} space", f.dim()));
        }
    }
    Outcome::new(true, format!("{} random forms over ℚ and 𝔽₇", forms.len()))
}

fn criterion_3() -> Outcome {
    let forms = random_forms(20, 4);
    for f in &forms {
        let (so, _) = fundamental_so(f).unwrap();
        let v = lemma_trace_check(&so, f);
        if !v.is_pass() {
            return Outcome::from_verdict(&v, "trace lemma");
        }
    }
    Outcome::new(true, format!("{} so_ε algebras", forms.len()))
}

fn criterion_4() -> Outcome {
    let mut passing = 0;
    let fixtures = extension_fixtures();
    for (name, r, phi) in &fixtures {
        match extend(r, phi) {
            Ok((_, tv)) if tv.agree() => passing += tv.jacobi.is_pass() as usize,
            Ok(_) => return Outcome::new(false, format!("{name}: verdicts disagree")),
            Err(e) => return Outcome::new(false, format!("{name}: {e}")),
        }
    }
    let ok = passing > 0 && passing < fixtures.len();
    Outcome::new(ok, format!("{} fixtures agree, {passing} extend and {} do not", fixtures.len(), fixtures.len() - passing))
}

fn criterion_5() -> Outcome {
    let fixtures = extension_fixtures();
    for (name, r, phi) in &fixtures {
        let mu = r.moment_map().unwrap();
        let (g, _) = extend(r, phi).unwrap();
        let maps = extension_maps(&g, &mu, phi);
        let pairing = Bilinear::from_form(g.form().unwrap());
        let n = norm(&maps.sum, &pairing, Codomain::Scalars(Q)).unwrap();
        let beta = curvature_from(r, &mu, Some(phi)).unwrap().bianchi().scale(&Scalar::from_int(Q, 2));
        let d = r.dim();
        for k in 0..d.pow(4) {
            let t = [k / (d * d * d), k / (d * d) % d, k / d % d, k % d];
            if n.eval(&t)[0] != *beta.get(t[0], t[1], t[2], t[3]) {
                return Outcome::new(false, format!("{name} at {t:?}"));
            }
        }
    }
    Outcome::new(true, format!("{} fixtures, every basis 4-tuple", fixtures.len()))
}

fn criterion_6() -> Outcome {
    let forms = random_forms(10, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for f in &forms {
        let three = Scalar::from_int(f.field(), 3);
        let r = CurvatureTensor::random(&f.space, &mut rng);
        let b = r.bianchi();
        if b.bianchi() != b.scale(&three) {
            return Outcome::new(false, "β(β(R)) ≠ 3β(R)");
        }
        if !b.is_alternating() {
            return Outcome::new(false, "β(R) is not alternating");
        }
    }
    Outcome::new(true, format!("{} random elements of R(V)", forms.len()))
}

fn criterion_7() -> Outcome {
    let mut reps: Vec<(String, OrthRep)> = special_fixtures();
    for (name, r, _) in extension_fixtures() {
        reps.push((name, r));
    }
    let mut special = 0;
    for (name, r) in &reps {
        let mu = r.moment_map().unwrap();
        match is_special(r, &mu) {
            Ok(sv) if sv.condition_b.is_pass() == sv.curvature.is_pass() => special += sv.is_special() as usize,
            Ok(_) => return Outcome::new(false, format!("{name}: criteria disagree")),
            Err(e) => return Outcome::new(false, format!("{name}: {e}")),
        }
    }
    Outcome::new(true, format!("{} representations, {special} special", reps.len()))
}

fn criterion_8() -> Outcome {
    let gamma = super_cf(Q).group().elem(&[1]).unwrap();
    let cases = [
        ("fundamental_so", "odd-plane"),
        ("fundamental_so", "euclidean3"),
        ("so_tensor_sl2", "hyperbolic"),
        ("centralizer_j", "hyperbolic2"),
    ];
    for (name, v) in cases {
        let ext = extend_sl2(&preset(name, Some(v), Q).unwrap(), &gamma).unwrap();
        if !ext.verdict.is_pass() {
            return Outcome::from_verdict(&ext.verdict, format!("{name}/{v}"));
        }
    }
    let r = abelian_odd_plane(Q).unwrap();
    let ext = extend_sl2(&r, &gamma).unwrap();
    let offset = r.algebra.dim() + 3;
    let Verdict::Fail(ws) = &ext.verdict else {
        return Outcome::new(false, "abelian odd plane extends");
    };
    let at = &ws[0].at;
    let pattern = at.len() == 3 && at.iter().all(|&i| i >= offset) && at.iter().map(|&i| (i - offset) % 2).eq([0, 0, 1]);
    let names: Vec<&str> = at.iter().map(|&i| ext.algebra.space().name(i)).collect();
    Outcome::new(pattern, format!("4 special fixtures extend; non-special witness ({})", names.join(", ")))
}

fn criterion_9() -> Outcome {
    let fixtures = special_fixtures();
    let mut checks = 0;
    for (name, r) in &fixtures {
        let mu = r.moment_map().unwrap();
        for (what, v) in redundancy(r, &mu, true).unwrap() {
            if !v.is_pass() {
                return Outcome::from_verdict(&v, format!("{name}: {what}"));
            }
            checks += 1;
        }
    }
    Outcome::new(true, format!("{checks} formula checks on {} special fixtures", fixtures.len()))
}

/// The closed form for Q on V⊗W with all ε factors equal to 1, evaluated on the hyperbolic plane.
fn tensor_closed_form(v: [usize; 4]) -> i64 {
    let b = |x: usize, y: usize| (x != y) as i64;
    24 * b(v[0], v[1]) * b(v[2], v[3]) - 12 * b(v[0], v[2]) * b(v[1], v[3]) - 12 * b(v[1], v[2]) * b(v[0], v[3])
}

fn tensor_q_check(q: &AltMap) -> Outcome {
    // basis u1⊗p, u1⊗q, u2⊗p, u2⊗q
    let idx = |u: usize, w: usize| 2 * u + w;
    for k in 0..16 {
        let v = [k >> 3 & 1, k >> 2 & 1, k >> 1 & 1, k & 1];
        for ws in [[0, 0, 0, 0], [1, 1, 1, 1], [0, 0, 0, 1], [0, 1, 1, 1]] {
            let t: Vec<usize> = (0..4).map(|i| idx(v[i], ws[i])).collect();
            if !q.eval(&t)[0].is_zero() {
                return Outcome::new(false, format!("Q{t:?} should vanish"));
            }
        }
        let t: Vec<usize> = (0..4).map(|i| idx(v[i], [0, 0, 1, 1][i])).collect();
        let want = Scalar::from_int(Q, tensor_closed_form(v));
        if q.eval(&t)[0] != want {
            return Outcome::new(false, format!("Q{t:?} = {} but the closed form gives {want}", q.eval(&t)[0]));
        }
    }
    let key = q.eval(&[idx(0, 0), idx(1, 0), idx(0, 1), idx(1, 1)])[0].clone();
    Outcome::new(key == Scalar::from_int(Q, 12), format!("zero patterns and closed form hold, Q(u₁⊗p,u₂⊗p,u₁⊗q,u₂⊗q) = {key}"))
}

fn criterion_10() -> Outcome {
    tensor_q_check(&covariant_q(&tensor()).unwrap())
}

fn criterion_11(lines: &mut Vec<String>) -> Outcome {
    let r = tensor();
    let mut pass = true;
    let mut failed = Vec::new();
    for (id, needed) in Identity::ALL.into_iter().zip([56, 84, 220, 455]) {
        let count = canonical_count(r.space(), id.arity());
        let start = Instant::now();
        let v = mathews_verify(&r, id, Mode::Full { budget: DEFAULT_BUDGET }).unwrap();
        let t = start.elapsed();
        let in_time = t < Duration::from_secs(600);
        let ok = v.is_pass() && count == needed && in_time;
        let witness = v.witnesses().first().map(|w| format!(" (witness: {w})")).unwrap_or_default();
        lines.push(format!("    MATHEWS {id} full {} {count} tuples{witness} {}ms", if ok { "PASS" } else { "FAIL" }, t.as_millis()));
        if !ok {
            failed.push(id.to_string());
        }
        pass &= ok;
    }
    let detail = if pass { "a, b, c, d hold in full mode".to_string() } else { format!("failing: {}", failed.join(", ")) };
    Outcome::new(pass, detail)
}

fn criterion_12() -> Outcome {
    let r = tensor();
    let mu = r.moment_map().unwrap();
    let one = Scalar::one(Q);
    let mut caught = [0usize; 3];
    let mut total = 0;
    let pairs: Vec<Vec<usize>> = canonical_tuples(r.space(), 2);
    for t in &pairs {
        for k in 0..mu.codomain().dim() {
            total += 1;
            let mut v = mu.eval(t);
            v[k] += &one;
            let m = mu.with_value(t, v);
            let redundant = redundancy(&r, &m, true).unwrap();
            if redundant.iter().any(|(_, v)| !v.witnesses().is_empty()) {
                caught[0] += 1;
                continue;
            }
            let psi = psi_three_term(&r, &m);
            let q = q_definition(&r, &psi);
            if !tensor_q_check(&q).pass {
                caught[1] += 1;
                continue;
            }
            let cov = CovariantSet { mu: m, psi, q };
            let budget = Mode::Full { budget: DEFAULT_BUDGET };
            if [Identity::A, Identity::B].into_iter().any(|id| !mathews_check(&r, &cov, id, budget).unwrap().witnesses().is_empty()) {
                caught[2] += 1;
                continue;
            }
            return Outcome::new(false, format!("perturbing μ{t:?} coordinate {k} goes unnoticed"));
        }
    }
    Outcome::new(
        true,
        format!("{total} perturbations caught: {} by criterion 9, {} by 10, {} by 11", caught[0], caught[1], caught[2]),
    )
}

fn run(n: usize, limit: Option<Duration>, lines: &mut Vec<String>, f: impl FnOnce(&mut Vec<String>) -> Outcome) -> bool {
    let start = Instant::now();
    let mut sub = Vec::new();
    let mut o = f(&mut sub);
    let t = start.elapsed();
    if let Some(l) = limit {
        if t >= l {
            o.pass = false;
            o.detail += &format!(" (over the {}s limit)", l.as_secs());
        }
    }
    lines.push(format!("ACCEPTANCE {n:>2} {} {} {}ms", if o.pass { "PASS" } else { "FAIL" }, o.detail, t.as_millis()));
    lines.extend(sub);
    o.pass
}

fn main() -> ExitCode {
    let mut lines = Vec::new();
    let secs = |s| Some(Duration::from_secs(s));
    let results = [
        run(1, secs(1), &mut lines, |_| criterion_1()),
        run(2, secs(10), &mut lines, |_| criterion_2()),
        run(3, None, &mut lines, |_| criterion_3()),
        run(4, None, &mut lines, |_| criterion_4()),
        run(5, None, &mut lines, |_| criterion_5()),
        run(6, None, &mut lines, |_| criterion_6()),
        run(7, None, &mut lines, |_| criterion_7()),
        run(8, secs(60), &mut lines, |_| criterion_8()),
        run(9, None, &mut lines, |_| criterion_9()),
        run(10, None, &mut lines, |_| criterion_10()),
        run(11, None, &mut lines, criterion_11),
        run(12, None, &mut lines, |_| criterion_12()),
    ];
    for l in &lines {
        println!("{l}");
    }
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
