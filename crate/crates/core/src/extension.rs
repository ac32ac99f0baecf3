//! Extensions g̃ = g ⊕ V of a representation by its moment map and a map φ, and the
//! g ⊕ sl₂ ⊕ V⊗k² construction.

use crate::algebra::{sl2_make, ColourLieAlgebra, WITNESS_CAP};
use crate::alt::{norm, AltMap, AltSource, Bilinear, Codomain};
use crate::error::{Error, Result};
use crate::graded::{FormEps, GradedSpace};
use crate::grading::GroupElem;
use crate::matrix::Matrix;
use crate::rep::{rep_tensor, OrthRep};
use crate::scalar::{fmt_vec, Scalar};
use crate::verdict::{Verdict, Witness};

/// Degree 0, ρ(x)φ(v,w) = φ(ρ(x)v,w) + ε(x,v)φ(v,ρ(x)w) and (φ(u,v),w) = −ε(u,v)(v,φ(u,w)).
pub fn phi_validate(rep: &OrthRep, phi: &AltMap) -> Verdict {
    let v = rep.space();
    let n = rep.dim();
    if phi.arity() != 2 || phi.domain() != v || phi.codomain() != &Codomain::Space(v.clone()) {
        return Verdict::fail(Witness::new("shape of φ", &[], format!("arity {}", phi.arity()), "bilinear V×V → V"));
    }
    let mut ws = phi.check_degree(&v.cf().group().zero()).witnesses().to_vec();
    let gs = rep.algebra.space();
    for x in 0..rep.algebra.dim() {
        let rx = &rep.action[x];
        for a in 0..n {
            let e = v.eps_deg(gs.degree(x), v.degree(a));
            for b in 0..n {
                let lhs = rx.apply(&phi.eval(&[a, b]));
                let mut rhs = phi.eval_vectors(&[rx.column(a), v.unit(b)]);
                for (r, y) in rhs.iter_mut().zip(phi.eval_vectors(&[v.unit(a), rx.column(b)])) {
                    r.add_mul(&e, &y);
                }
                if lhs != rhs && ws.len() < WITNESS_CAP {
                    ws.push(Witness::new(
                        format!("g-invariance of φ for {} on ({}, {})", gs.name(x), v.name(a), v.name(b)),
                        &[x, a, b],
                        fmt_vec(&lhs),
                        fmt_vec(&rhs),
                    ));
                }
            }
        }
    }
    for u in 0..n {
        for w1 in 0..n {
            let puv = phi.eval(&[u, w1]);
            for w in 0..n {
                let lhs = rep.form.pair(&puv, &v.unit(w));
                let rhs = -&(v.eps(u, w1) * &rep.form.pair(&v.unit(w1), &phi.eval(&[u, w])));
                if lhs != rhs && ws.len() < WITNESS_CAP {
                    ws.push(Witness::new(
                        format!("form-invariance of φ on ({}, {}, {})", v.name(u), v.name(w1), v.name(w)),
                        &[u, w1, w],
                        &lhs,
                        &rhs,
                    ));
                }
            }
        }
    }
    Verdict::from_witnesses(ws)
}

/// The zero map V×V → V.
pub fn zero_phi(space: &GradedSpace) -> AltMap {
    AltMap::zero(space.clone(), Codomain::Space(space.clone()), 2)
}

/// Assembles g̃ = g⊕V with {x,v} = ρ(x)v, {v,x} = −ε(v,x){x,v}, {v,w} = μ(v,w) + φ(v,w)
/// and form B_g ⟂ ( , ).
pub fn assemble(rep: &OrthRep, mu: &AltMap, phi: &AltMap) -> Result<ColourLieAlgebra> {
    let g = &rep.algebra;
    let (d, n) = (g.dim(), rep.dim());
    let total = g.space().dsum(rep.space())?;
    let form = {
        let f = rep.algebra_form().orthogonal_sum(&rep.form)?;
        FormEps { space: total.clone(), gram: f.gram }
    };
    let mut entries = Vec::new();
    for (i, j, v) in g.entries() {
        let mut w = total.zero_vec();
        w[..d].clone_from_slice(&v);
        entries.push((i, j, w));
    }
    for x in 0..d {
        for a in 0..n {
            let col = rep.action[x].column(a);
            let mut w = total.zero_vec();
            w[d..].clone_from_slice(&col);
            let minus = total.neg_eps(d + a, x);
            let back: Vec<Scalar> = w.iter().map(|c| c * minus).collect();
            entries.push((x, d + a, w));
            entries.push((d + a, x, back));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let mut w = total.zero_vec();
            w[..d].clone_from_slice(&mu.eval(&[a, b]));
            w[d..].clone_from_slice(&phi.eval(&[a, b]));
            entries.push((d + a, d + b, w));
        }
    }
    ColourLieAlgebra::new(total, entries, Some(form))
}

/// Jacobi of g̃, N(μ+φ) = 0 and N(μ) = −N(φ), computed independently.
#[derive(Clone, Debug)]
pub struct TripleVerdict {
    pub jacobi: Verdict,
    pub norm_zero: Verdict,
    pub norm_balance: Verdict,
}

impl TripleVerdict {
    pub fn agree(&self) -> bool {
        let j = self.jacobi.is_pass();
        j == self.norm_zero.is_pass() && j == self.norm_balance.is_pass()
    }
}

/// The maps μ, φ and μ+φ written into g̃ = g⊕V.
pub struct ExtensionMaps {
    pub mu: AltMap,
    pub phi: AltMap,
    pub sum: AltMap,
}

pub fn extension_maps(algebra: &ColourLieAlgebra, mu: &AltMap, phi: &AltMap) -> ExtensionMaps {
    let cod = Codomain::Space(algebra.space().clone());
    let d = mu.codomain().dim();
    let mu_t = mu.embed(cod.clone(), 0);
    let phi_t = phi.embed(cod, d);
    let sum = mu_t.add(&phi_t);
    ExtensionMaps { mu: mu_t, phi: phi_t, sum }
}

fn zero_check(m: &AltMap, what: &str) -> Verdict {
    match m.entries().next() {
        None => Verdict::Pass,
        Some((t, v)) => Verdict::fail(Witness::new(what, t, fmt_vec(v), "0")),
    }
}

/// Builds g̃ and evaluates the three equivalent conditions; disagreement is an error.
pub fn extend(rep: &OrthRep, phi: &AltMap) -> Result<(ColourLieAlgebra, TripleVerdict)> {
    let pv = phi_validate(rep, phi);
    if let Verdict::Fail(ws) = pv {
        return Err(Error::Invalid(format!("φ is not admissible: {}", ws[0])));
    }
    let mu = rep.moment_map()?;
    let algebra = assemble(rep, &mu, phi)?;
    let jacobi = algebra.validate();
    let maps = extension_maps(&algebra, &mu, phi);
    let pairing = Bilinear::from_form(algebra.form().expect("assembled with a form"));
    let line = Codomain::Scalars(algebra.field());
    let n_sum = norm(&maps.sum, &pairing, line.clone())?;
    let n_mu = norm(&maps.mu, &pairing, line.clone())?;
    let n_phi = norm(&maps.phi, &pairing, line)?;
    let norm_zero = zero_check(&n_sum, "N(μ+φ)");
    let norm_balance = zero_check(&n_mu.add(&n_phi), "N(μ) + N(φ)");
    let tv = TripleVerdict { jacobi, norm_zero, norm_balance };
    if !tv.agree() {
        return Err(Error::Disagreement(format!(
            "Jacobi {}, N(μ+φ)=0 {}, N(μ)=−N(φ) {}",
            tv.jacobi.is_pass(),
            tv.norm_zero.is_pass(),
            tv.norm_balance.is_pass()
        )));
    }
    Ok((algebra, tv))
}

/// Colour ℤ₂-Lie type: the extension with φ = 0.
pub fn z2_lie_check(rep: &OrthRep) -> Result<(ColourLieAlgebra, TripleVerdict)> {
    extend(rep, &zero_phi(rep.space()))
}

/// Result of the g ⊕ sl₂ ⊕ V⊗k² construction.
pub struct Sl2Extension {
    pub algebra: ColourLieAlgebra,
    pub verdict: Verdict,
    pub faithful: bool,
    /// Index of H in the assembled algebra.
    pub h_index: usize,
}

/// Assembles g ⊕ so_ε(W) ⊕ V⊗W for the two-dimensional W of degree ±γ and checks it.
/// Jacobi witnesses of the form (v⊗p, v′⊗p, v″⊗q) are listed first.
pub fn extend_sl2(rep: &OrthRep, gamma: &GroupElem) -> Result<Sl2Extension> {
    let cf = rep.space().cf().clone();
    let (sl2, omega) = sl2_make(&cf, gamma)?;
    let w_rep = OrthRep::fundamental(&sl2, &omega)?;
    let t = rep_tensor(rep, &w_rep)?;
    let mu = t.moment_map()?;
    let algebra = assemble(&t, &mu, &zero_phi(t.space()))?;
    let d = rep.algebra.dim();
    let offset = d + 3;
    let mut ws = algebra.grading_witnesses();
    ws.extend(algebra.antisymmetry_witnesses());
    let mut jac = algebra.jacobi_witnesses(usize::MAX);
    let pattern = |w: &Witness| {
        w.at.len() == 3
            && w.at.iter().all(|&i| i >= offset)
            && (w.at[0] - offset) % 2 == 0
            && (w.at[1] - offset) % 2 == 0
            && (w.at[2] - offset) % 2 == 1
    };
    jac.sort_by_key(|w| !pattern(w));
    jac.truncate(WITNESS_CAP);
    ws.extend(jac);
    if let Verdict::Fail(q) = algebra.quad_validate()? {
        ws.extend(q);
    }
    Ok(Sl2Extension { algebra, verdict: Verdict::from_witnesses(ws), faithful: rep.faithful(), h_index: d + 1 })
}

/// Eigenspace dimensions of ad(H) for eigenvalues −2..=2.
#[derive(Clone, Debug)]
pub struct HeisenbergReport {
    pub verdict: Verdict,
    pub dims: [usize; 5],
}

pub fn heisenberg_grading(algebra: &ColourLieAlgebra, h: &[Scalar]) -> Result<HeisenbergReport> {
    let s = algebra.space();
    match s.vector_degree(h) {
        Some(d) if d != s.cf().group().zero() => {
            return Err(Error::Degree(format!("H has degree {d}, expected 0")));
        }
        None if h.iter().any(|x| !x.is_zero()) => return Err(Error::Degree("H is not homogeneous".into())),
        _ => {}
    }
    let n = algebra.dim();
    let field = algebra.field();
    let ad = algebra.ad(h);
    let mut dims = [0usize; 5];
    for (k, lambda) in (-2i64..=2).enumerate() {
        let shifted = ad.sub(&Matrix::identity(field, n).scale(&Scalar::from_int(field, lambda)));
        dims[k] = n - shifted.rank();
    }
    let total: usize = dims.iter().sum();
    let mut ws = Vec::new();
    if total != n {
        ws.push(Witness::new("eigenspaces −2..2 span g̃", &[], total, n));
    }
    if dims[0] != 1 || dims[4] != 1 {
        ws.push(Witness::new("dim g̃₋₂, dim g̃₂", &[], format!("{}, {}", dims[0], dims[4]), "1, 1"));
    }
    Ok(HeisenbergReport { verdict: Verdict::from_witnesses(ws), dims })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::sl2_module;
    use crate::grading::CommutationFactor;
    use crate::rep::fundamental_so;
    use crate::scalar::FieldDescriptor;

    const Q: FieldDescriptor = FieldDescriptor::Rational;

    #[test]
    fn fundamental_sl2_extends() {
        let cf = Arc::new(CommutationFactor::super_sign(Q));
        let gamma = cf.group().elem(&[1]).unwrap();
        let omega = sl2_module(&cf, &gamma).unwrap();
        let (_, rep) = fundamental_so(&omega).unwrap();
        let (g, tv) = z2_lie_check(&rep).unwrap();
        assert_eq!(g.dim(), 5);
        assert!(tv.jacobi.is_pass() && tv.agree());
        let ext = extend_sl2(&rep, &gamma).unwrap();
        assert_eq!(ext.algebra.dim(), 3 + 3 + 4);
        assert!(ext.verdict.is_pass(), "{:?}", ext.verdict);
        let h = ext.algebra.space().unit(ext.h_index);
        let report = heisenberg_grading(&ext.algebra, &h).unwrap();
        assert!(report.verdict.is_pass());
        assert_eq!(report.dims.iter().sum::<usize>(), 10);
    }

    #[test]
    fn zero_h_is_not_heisenberg() {
        let cf = Arc::new(CommutationFactor::super_sign(Q));
        let gamma = cf.group().elem(&[1]).unwrap();
        let omega = sl2_module(&cf, &gamma).unwrap();
        let (_, rep) = fundamental_so(&omega).unwrap();
        let ext = extend_sl2(&rep, &gamma).unwrap();
        let zero = ext.algebra.space().zero_vec();
        let report = heisenberg_grading(&ext.algebra, &zero).unwrap();
        assert!(!report.verdict.is_pass());
        assert_eq!(report.dims, [0, 0, 10, 0, 0]);
    }
}
