//! The operations behind the command line: each returns report lines and, where the command
//! emits data, a JSON payload.

use std::time::Instant;

use serde::Serialize;

use crate::alt::AltMap;
use crate::catalog::preset;
use crate::covariants::{covariants, mathews_check, psi_three_term, q_definition, redundancy, Identity, Mode};
use crate::curvature::is_special;
use crate::doc::{altmap_values, rep_document, Document, Loaded, ValueSpec};
use crate::error::{Error, Result};
use crate::extension::{extend, extend_sl2, heisenberg_grading, phi_validate, zero_phi};
use crate::rep::OrthRep;
use crate::scalar::FieldDescriptor;
use crate::verdict::{Record, Report, Status, Verdict};

#[derive(Debug, Default)]
pub struct Output {
    pub report: Report,
    pub json: Option<String>,
}

impl Output {
    /// 0 when every record passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.report.all_pass() {
            0
        } else {
            1
        }
    }
}

fn timed(report: &mut Report, name: String, f: impl FnOnce() -> Result<Verdict>) {
    let start = Instant::now();
    let r = match f() {
        Ok(v) => Record::from_verdict(name, &v, start.elapsed()),
        Err(e) => Record::error(name, e, start.elapsed()),
    };
    report.push(r);
}

pub fn load_file(text: &str) -> Result<Loaded> {
    Document::parse(text)?.load()
}

fn rep_named<'a>(doc: &'a Loaded, name: Option<&str>) -> Result<(&'a str, &'a OrthRep)> {
    match name {
        Some(n) => doc
            .reps
            .get_key_value(n)
            .map(|(k, r)| (k.as_str(), r))
            .ok_or_else(|| Error::Document(format!("unknown rep {n:?}"))),
        None if doc.reps.len() == 1 => {
            let (k, r) = doc.reps.first().expect("one rep");
            Ok((k.as_str(), r))
        }
        None => Err(Error::Document("name the representation to use".into())),
    }
}

/// One record per declared object.
pub fn cmd_check(doc: &Loaded) -> Output {
    let mut report = Report::default();
    timed(&mut report, "commutation-factor".into(), || Ok(doc.cf.validate()));
    for (name, f) in &doc.forms {
        timed(&mut report, format!("form {name}"), || Ok(f.validate()));
    }
    for (name, a) in &doc.algebras {
        timed(&mut report, format!("algebra {name}"), || Ok(a.validate()));
        if a.form().is_some() {
            timed(&mut report, format!("algebra {name} quadratic"), || a.quad_validate());
        }
    }
    for (name, r) in &doc.reps {
        timed(&mut report, format!("rep {name}"), || Ok(r.validate()));
    }
    for (name, (rep, phi)) in &doc.phis {
        timed(&mut report, format!("phi {name}"), || Ok(phi_validate(&doc.reps[rep], phi)));
    }
    Output { report, json: None }
}

#[derive(Serialize)]
struct MapPayload<'a> {
    rep: &'a str,
    arity: usize,
    values: Vec<ValueSpec>,
}

fn map_json(rep: &str, map: &AltMap, matrix: Option<&dyn Fn(&[crate::Scalar]) -> crate::matrix::Matrix>) -> String {
    let p = MapPayload { rep, arity: map.arity(), values: altmap_values(map, matrix) };
    serde_json::to_string_pretty(&p).expect("serializable") + "\n"
}

/// μ on every nonzero canonical pair, with the operator ρ(μ(v,w)) alongside.
pub fn cmd_moment(doc: &Loaded, rep: Option<&str>) -> Result<Output> {
    let (name, r) = rep_named(doc, rep)?;
    let mut report = Report::default();
    let start = Instant::now();
    let mu = r.moment_map()?;
    let v = r.check_moment(&mu);
    report.push(Record::from_verdict(format!("moment {name}"), &v, start.elapsed()));
    let op = |x: &[crate::Scalar]| r.action_of(x);
    Ok(Output { report, json: Some(map_json(name, &mu, Some(&op))) })
}

pub fn cmd_special(doc: &Loaded, rep: Option<&str>) -> Result<Output> {
    let (name, r) = rep_named(doc, rep)?;
    let mut report = Report::default();
    let start = Instant::now();
    let mu = r.moment_map()?;
    let sv = is_special(r, &mu)?;
    let t = start.elapsed();
    report.push(Record::from_verdict(format!("special {name} condition-b"), &sv.condition_b, t));
    report.push(Record::from_verdict(format!("special {name} curvature"), &sv.curvature, t));
    Ok(Output { report, json: None })
}

/// The three equivalent extension conditions as three records.
pub fn cmd_extend(doc: &Loaded, rep: Option<&str>, phi: Option<&str>) -> Result<Output> {
    let (name, r) = rep_named(doc, rep)?;
    let phi = match phi {
        Some(p) => {
            let (owner, map) = doc.phis.get(p).ok_or_else(|| Error::Document(format!("unknown phi {p:?}")))?;
            if owner != name {
                return Err(Error::Document(format!("phi {p:?} belongs to rep {owner:?}")));
            }
            map.clone()
        }
        None => zero_phi(r.space()),
    };
    let start = Instant::now();
    let (_, tv) = extend(r, &phi)?;
    let t = start.elapsed();
    let mut report = Report::default();
    report.push(Record::from_verdict(format!("extend {name} jacobi"), &tv.jacobi, t));
    report.push(Record::from_verdict(format!("extend {name} N(mu+phi)=0"), &tv.norm_zero, t));
    report.push(Record::from_verdict(format!("extend {name} N(mu)=-N(phi)"), &tv.norm_balance, t));
    Ok(Output { report, json: None })
}

pub fn parse_degree(text: &str) -> Result<Vec<i64>> {
    text.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<i64>().map_err(|_| Error::Invalid(format!("bad degree {text:?}"))))
        .collect()
}

pub fn cmd_extend_sl2(doc: &Loaded, rep: Option<&str>, gamma: &[i64]) -> Result<Output> {
    let (name, r) = rep_named(doc, rep)?;
    let g = doc.cf.group().elem(gamma)?;
    let start = Instant::now();
    let ext = extend_sl2(r, &g)?;
    let mut report = Report::default();
    report.push(Record::from_verdict(format!("extend-sl2 {name}"), &ext.verdict, start.elapsed()));
    if ext.verdict.is_pass() && ext.faithful {
        let start = Instant::now();
        let h = ext.algebra.space().unit(ext.h_index);
        let hr = heisenberg_grading(&ext.algebra, &h)?;
        report.push(Record::from_verdict(format!("extend-sl2 {name} heisenberg {:?}", hr.dims), &hr.verdict, start.elapsed()));
    }
    Ok(Output { report, json: None })
}

#[derive(Serialize)]
struct CovariantPayload<'a> {
    rep: &'a str,
    psi: Vec<ValueSpec>,
    q: Vec<ValueSpec>,
}

/// ψ and Q, with every applicable redundant formula reported as its own record.
pub fn cmd_covariants(doc: &Loaded, rep: Option<&str>) -> Result<Output> {
    let (name, r) = rep_named(doc, rep)?;
    let mut report = Report::default();
    let start = Instant::now();
    let mu = r.moment_map()?;
    let special = is_special(r, &mu)?.is_special();
    for (what, v) in redundancy(r, &mu, special)? {
        report.push(Record::from_verdict(format!("covariants {name} {what}"), &v, start.elapsed()));
    }
    let psi = psi_three_term(r, &mu);
    let q = q_definition(r, &psi);
    let payload = CovariantPayload { rep: name, psi: altmap_values(&psi, None), q: altmap_values(&q, None) };
    Ok(Output { report, json: Some(serde_json::to_string_pretty(&payload).expect("serializable") + "\n") })
}

/// "MATHEWS <id> <mode> PASS|FAIL [witness] <ms>" per identity.
pub fn cmd_mathews(doc: &Loaded, rep: Option<&str>, ids: &[Identity], mode: Mode) -> Result<Output> {
    let (_, r) = rep_named(doc, rep)?;
    let mu = r.moment_map()?;
    if !is_special(r, &mu)?.is_special() {
        return Err(Error::Invalid("the Mathews identities need a special representation".into()));
    }
    let c = covariants(r)?;
    let mut report = Report::default();
    for &id in ids {
        let start = Instant::now();
        let v = mathews_check(r, &c, id, mode)?;
        let (status, detail) = match &v {
            Verdict::Pass => (Status::Pass, String::new()),
            Verdict::Fail(ws) => (Status::Fail, format!(" (witness: {})", ws[0])),
        };
        let line = format!("MATHEWS {id} {mode} {status}{detail} {}ms", start.elapsed().as_millis());
        report.push_line(line, status);
    }
    Ok(Output { report, json: None })
}

/// The catalog entry as a structure document.
pub fn cmd_catalog(name: &str, variant: Option<&str>, field: FieldDescriptor) -> Result<Output> {
    let r = preset(name, variant, field)?;
    Ok(Output { report: Report::default(), json: Some(rep_document(&r).to_json()) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog_doc(name: &str, variant: &str) -> Loaded {
        let text = cmd_catalog(name, Some(variant), FieldDescriptor::Rational).unwrap().json.unwrap();
        load_file(&text).unwrap()
    }

    #[test]
    fn check_passes_on_catalog_output() {
        let out = cmd_check(&catalog_doc("so_tensor_sl2", "hyperbolic"));
        assert_eq!(out.exit_code(), 0, "{:?}", out.report.lines);
    }

    #[test]
    fn moment_emits_operator_matrices() {
        let out = cmd_moment(&catalog_doc("fundamental_so", "odd-plane"), None).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.json.unwrap()).unwrap();
        assert_eq!(v["values"].as_array().unwrap().len(), 3);
        assert_eq!(v["values"][0]["tuple"], serde_json::json!(["p", "p"]));
        assert_eq!(v["values"][0]["matrix"], serde_json::json!([["0", "-2"], ["0", "0"]]));
    }

    #[test]
    fn mathews_lines() {
        let out = cmd_mathews(&catalog_doc("so_tensor_sl2", "hyperbolic"), None, &[Identity::A], Mode::Full { budget: 500 })
            .unwrap();
        assert!(out.report.lines[0].starts_with("MATHEWS a full PASS"), "{:?}", out.report.lines);
    }

    #[test]
    fn degree_parsing() {
        assert_eq!(parse_degree("[1,0]").unwrap(), vec![1, 0]);
        assert_eq!(parse_degree("1").unwrap(), vec![1]);
        assert!(parse_degree("x").is_err());
    }
}
