//! The structure document: a JSON file naming a field, a commutation factor, graded spaces,
//! forms, algebras given by bracket tables, representations and optional φ maps.
//! Scalars are always strings, degrees integer arrays.

use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::algebra::ColourLieAlgebra;
use crate::alt::{canonical_tuples, AltMap, AltSource, Codomain};
use crate::error::{Error, Result};
use crate::graded::{BasisVector, FormEps, GradedSpace};
use crate::grading::{AbelianGroup, CommutationFactor};
use crate::matrix::Matrix;
use crate::rep::OrthRep;
use crate::scalar::{FieldDescriptor, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldSpec {
    Rational,
    Prime { p: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
    /// ε on pairs of generators.
    pub epsilon: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSpec {
    pub name: String,
    pub degree: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub basis: Vec<BasisSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub space: String,
    pub gram: Vec<Vec<String>>,
}

/// One coordinate of a vector: basis name and coefficient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub k: String,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub x: String,
    pub y: String,
    pub value: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub space: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    #[serde(default)]
    pub brackets: Vec<BracketSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepSpec {
    pub algebra: String,
    pub space: String,
    pub form: String,
    /// ρ(x) for every basis element x of the algebra.
    pub action: IndexMap<String, Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueSpec {
    pub tuple: Vec<String>,
    pub value: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiSpec {
    pub rep: String,
    pub values: Vec<ValueSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub field: FieldSpec,
    pub group: GroupSpec,
    #[serde(default)]
    pub spaces: IndexMap<String, SpaceSpec>,
    #[serde(default)]
    pub forms: IndexMap<String, FormSpec>,
    #[serde(default)]
    pub algebras: IndexMap<String, AlgebraSpec>,
    #[serde(default)]
    pub reps: IndexMap<String, RepSpec>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub phis: IndexMap<String, PhiSpec>,
}

/// A document with every reference resolved and every scalar parsed.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub field: FieldDescriptor,
    pub cf: Arc<CommutationFactor>,
    pub spaces: IndexMap<String, GradedSpace>,
    pub forms: IndexMap<String, FormEps>,
    pub algebras: IndexMap<String, ColourLieAlgebra>,
    pub reps: IndexMap<String, OrthRep>,
    pub phis: IndexMap<String, (String, AltMap)>,
}

fn doc_err(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

fn lookup<'a, T>(map: &'a IndexMap<String, T>, kind: &str, name: &str) -> Result<&'a T> {
    map.get(name).ok_or_else(|| doc_err(format!("unknown {kind} {name:?}")))
}

fn parse_matrix(field: FieldDescriptor, rows: &[Vec<String>], n: usize, m: usize, what: &str) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != m) {
        return Err(doc_err(format!("{what} must be {n}x{m}")));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|c| Scalar::parse(c, field)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, parsed)
}

fn parse_vector(space: &GradedSpace, terms: &[Term], what: &str) -> Result<Vec<Scalar>> {
    let mut v = space.zero_vec();
    for t in terms {
        let i = space.index_of(&t.k).ok_or_else(|| doc_err(format!("{what}: unknown basis element {:?}", t.k)))?;
        v[i] += &Scalar::parse(&t.c, space.field())?;
    }
    Ok(v)
}

fn index(space: &GradedSpace, name: &str, what: &str) -> Result<usize> {
    space.index_of(name).ok_or_else(|| doc_err(format!("{what}: unknown basis element {name:?}")))
}

impl Document {
    pub fn parse(text: &str) -> Result<Document> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize") + "\n"
    }

    /// Resolves names and parses scalars. Mathematical validation is left to the checks.
    pub fn load(&self) -> Result<Loaded> {
        let field = match self.field {
            FieldSpec::Rational => FieldDescriptor::Rational,
            FieldSpec::Prime { p } => FieldDescriptor::prime(p)?,
        };
        let group = AbelianGroup::new(self.group.free_rank, self.group.torsion.clone())?;
        let r = group.rank();
        let eps = parse_matrix(field, &self.group.epsilon, r, r, "epsilon")?;
        let gens = (0..r).map(|i| eps.row(i).to_vec()).collect();
        let cf = Arc::new(CommutationFactor::checked(group, field, gens)?);

        let mut spaces = IndexMap::new();
        for (name, s) in &self.spaces {
            let basis = s
                .basis
                .iter()
                .map(|b| Ok(BasisVector { name: b.name.clone(), degree: cf.group().elem(&b.degree)? }))
                .collect::<Result<Vec<_>>>()?;
            spaces.insert(name.clone(), GradedSpace::new(cf.clone(), basis)?);
        }
        let mut forms = IndexMap::new();
        for (name, f) in &self.forms {
            let space = lookup(&spaces, "space", &f.space)?.clone();
            let n = space.dim();
            let gram = parse_matrix(field, &f.gram, n, n, &format!("gram of {name}"))?;
            forms.insert(name.clone(), FormEps::new(space, gram)?);
        }
        let mut algebras = IndexMap::new();
        for (name, a) in &self.algebras {
            let space = lookup(&spaces, "space", &a.space)?.clone();
            let form = match &a.form {
                Some(f) => {
                    let f = lookup(&forms, "form", f)?.clone();
                    if f.space != space {
                        return Err(doc_err(format!("form of algebra {name} lives on another space")));
                    }
                    Some(f)
                }
                None => None,
            };
            let mut entries = Vec::new();
            for b in &a.brackets {
                let what = format!("bracket of {name}");
                let (i, j) = (index(&space, &b.x, &what)?, index(&space, &b.y, &what)?);
                entries.push((i, j, parse_vector(&space, &b.value, &what)?));
            }
            algebras.insert(name.clone(), ColourLieAlgebra::new(space, entries, form)?);
        }
        let mut reps = IndexMap::new();
        for (name, r) in &self.reps {
            let algebra = lookup(&algebras, "algebra", &r.algebra)?.clone();
            let space = lookup(&spaces, "space", &r.space)?;
            let form = lookup(&forms, "form", &r.form)?.clone();
            if &form.space != space {
                return Err(doc_err(format!("form of rep {name} lives on another space")));
            }
            if algebra.form().is_none() {
                return Err(doc_err(format!("algebra {:?} of rep {name} has no form", r.algebra)));
            }
            let n = space.dim();
            let gs = algebra.space();
            if r.action.len() != gs.dim() {
                return Err(doc_err(format!("rep {name} must give one matrix per basis element of {:?}", r.algebra)));
            }
            let mut action = Vec::new();
            for i in 0..gs.dim() {
                let rows = r
                    .action
                    .get(gs.name(i))
                    .ok_or_else(|| doc_err(format!("rep {name}: no matrix for {:?}", gs.name(i))))?;
                action.push(parse_matrix(field, rows, n, n, &format!("action of {} in {name}", gs.name(i)))?);
            }
            reps.insert(name.clone(), OrthRep::new(algebra, form, action)?);
        }
        let mut phis = IndexMap::new();
        for (name, p) in &self.phis {
            let rep: &OrthRep = lookup(&reps, "rep", &p.rep)?;
            let space = rep.space();
            let mut entries = Vec::new();
            for v in &p.values {
                let what = format!("phi {name}");
                let t = v.tuple.iter().map(|x| index(space, x, &what)).collect::<Result<Vec<_>>>()?;
                if t.len() != 2 {
                    return Err(doc_err(format!("{what}: tuples have two entries")));
                }
                entries.push((t, parse_vector(space, &v.value, &what)?));
            }
            let phi = AltMap::from_entries(space.clone(), Codomain::Space(space.clone()), 2, entries)?;
            phis.insert(name.clone(), (p.rep.clone(), phi));
        }
        Ok(Loaded { field, cf, spaces, forms, algebras, reps, phis })
    }
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
}

fn terms(space: &GradedSpace, v: &[Scalar]) -> Vec<Term> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| Term { k: space.name(i).to_string(), c: c.to_string() })
        .collect()
}

/// Values of an alternating map on its nonzero canonical tuples.
pub fn altmap_values(map: &dyn AltSource, matrix: Option<&dyn Fn(&[Scalar]) -> Matrix>) -> Vec<ValueSpec> {
    let dom = map.domain();
    let scalars;
    let out = match map.codomain() {
        Codomain::Space(s) => s,
        Codomain::Scalars(f) => {
            let cf = Arc::new(CommutationFactor::trivial(*f));
            let b = BasisVector { name: "1".into(), degree: cf.group().zero() };
            scalars = GradedSpace::new(cf, vec![b]).expect("the line");
            &scalars
        }
    };
    canonical_tuples(dom, map.arity())
        .into_iter()
        .filter_map(|t| {
            let v = map.eval_sorted(&t);
            if v.iter().all(Scalar::is_zero) {
                return None;
            }
            Some(ValueSpec {
                tuple: t.iter().map(|&i| dom.name(i).to_string()).collect(),
                value: terms(out, &v),
                matrix: matrix.map(|f| matrix_strings(&f(&v))),
            })
        })
        .collect()
}

/// Builds a document from constructed objects, naming each object once.
pub struct DocBuilder {
    doc: Document,
    spaces: Vec<(String, GradedSpace)>,
    forms: Vec<(String, FormEps)>,
}

impl DocBuilder {
    pub fn new(cf: &CommutationFactor) -> Self {
        let field = match cf.field() {
            FieldDescriptor::Rational => FieldSpec::Rational,
            FieldDescriptor::Prime { p } => FieldSpec::Prime { p },
        };
        let g = cf.group();
        let group = GroupSpec {
            free_rank: g.free_rank,
            torsion: g.torsion.clone(),
            epsilon: cf.generator_values().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        };
        let doc = Document {
            field,
            group,
            spaces: IndexMap::new(),
            forms: IndexMap::new(),
            algebras: IndexMap::new(),
            reps: IndexMap::new(),
            phis: IndexMap::new(),
        };
        DocBuilder { doc, spaces: Vec::new(), forms: Vec::new() }
    }

    pub fn space(&mut self, name: &str, s: &GradedSpace) -> String {
        if let Some((n, _)) = self.spaces.iter().find(|(_, x)| x == s) {
            return n.clone();
        }
        let basis = s
            .basis()
            .iter()
            .map(|b| BasisSpec { name: b.name.clone(), degree: b.degree.coords().to_vec() })
            .collect();
        self.doc.spaces.insert(name.to_string(), SpaceSpec { basis });
        self.spaces.push((name.to_string(), s.clone()));
        name.to_string()
    }

    pub fn form(&mut self, name: &str, space_name: &str, f: &FormEps) -> String {
        if let Some((n, _)) = self.forms.iter().find(|(_, x)| x == f) {
            return n.clone();
        }
        let space = self.space(space_name, &f.space);
        self.doc.forms.insert(name.to_string(), FormSpec { space, gram: matrix_strings(&f.gram) });
        self.forms.push((name.to_string(), f.clone()));
        name.to_string()
    }

    pub fn algebra(&mut self, name: &str, a: &ColourLieAlgebra) -> String {
        let space = self.space(name, a.space());
        let form = a.form().map(|f| self.form(&format!("B_{name}"), &space, f));
        let s = a.space();
        let brackets = a
            .entries()
            .into_iter()
            .map(|(i, j, v)| BracketSpec { x: s.name(i).to_string(), y: s.name(j).to_string(), value: terms(s, &v) })
            .collect();
        self.doc.algebras.insert(name.to_string(), AlgebraSpec { space, form, brackets });
        name.to_string()
    }

    pub fn rep(&mut self, name: &str, algebra: &str, space: &str, r: &OrthRep) -> String {
        let algebra = self.algebra(algebra, &r.algebra);
        let space = self.space(space, r.space());
        let form = self.form(&format!("B_{space}"), &space, &r.form);
        let gs = r.algebra.space();
        let action = r.action.iter().enumerate().map(|(i, m)| (gs.name(i).to_string(), matrix_strings(m))).collect();
        self.doc.reps.insert(name.to_string(), RepSpec { algebra, space, form, action });
        name.to_string()
    }

    pub fn phi(&mut self, name: &str, rep: &str, phi: &AltMap) {
        self.doc.phis.insert(name.to_string(), PhiSpec { rep: rep.to_string(), values: altmap_values(phi, None) });
    }

    pub fn finish(self) -> Document {
        self.doc
    }
}

/// The document holding a single representation, with the algebra named "g" and the module "V".
pub fn rep_document(r: &OrthRep) -> Document {
    let mut b = DocBuilder::new(r.space().cf());
    b.rep("rho", "g", "V", r);
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::preset;

    #[test]
    fn round_trip_is_idempotent() {
        for (name, variant) in [("fundamental_so", "odd-plane"), ("so_tensor_sl2", "hyperbolic"), ("centralizer_j", "hyperbolic2")] {
            let r = preset(name, Some(variant), FieldDescriptor::Rational).unwrap();
            let doc = rep_document(&r);
            let text = doc.to_json();
            let again = Document::parse(&text).unwrap();
            assert_eq!(again, doc);
            let loaded = again.load().unwrap();
            let r2 = &loaded.reps["rho"];
            assert_eq!(r2.action, r.action);
            assert_eq!(r2.form, r.form);
            assert_eq!(rep_document(r2).to_json(), text);
        }
    }

    #[test]
    fn malformed_scalar_is_rejected() {
        let r = preset("fundamental_so", None, FieldDescriptor::Rational).unwrap();
        let text = rep_document(&r).to_json().replacen("\"1\"", "\"1/0x\"", 1);
        let e = Document::parse(&text).unwrap().load().unwrap_err();
        assert!(matches!(e, Error::MalformedScalar(_)), "{e}");
    }

    #[test]
    fn dangling_reference_is_rejected() {
        let r = preset("fundamental_so", None, FieldDescriptor::Rational).unwrap();
        let mut doc = rep_document(&r);
        doc.reps["rho"].algebra = "missing".into();
        assert!(matches!(doc.load(), Err(Error::Document(_))));
    }
}
