//! ε-orthogonal representations, moment maps and tensor products.

use rayon::prelude::*;

use crate::algebra::{so_eps, ColourLieAlgebra, LinearLieAlgebra, WITNESS_CAP};
use crate::alt::{canonical_tuples, AltMap, AltSource, Bilinear, Codomain};
use crate::error::{Error, Result};
use crate::graded::{eps_trace, matrix_degree, FormEps, GradedSpace};
use crate::matrix::Matrix;
use crate::scalar::{axpy, fmt_vec, Scalar};
use crate::verdict::{Verdict, Witness};

/// ρ : g → so_ε(V, ( , )) given by one matrix per basis element of g.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthRep {
    pub algebra: ColourLieAlgebra,
    pub form: FormEps,
    pub action: Vec<Matrix>,
}

impl OrthRep {
    pub fn new(algebra: ColourLieAlgebra, form: FormEps, action: Vec<Matrix>) -> Result<Self> {
        algebra.require_form()?;
        algebra.space().same_grading(&form.space)?;
        if action.len() != algebra.dim() {
            return Err(Error::Shape(format!("{} action matrices for an algebra of dimension {}", action.len(), algebra.dim())));
        }
        let n = form.dim();
        if action.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Shape(format!("action matrices must be {n}x{n}")));
        }
        Ok(OrthRep { algebra, form, action })
    }

    /// The inclusion of a linear algebra into the endomorphisms of its module.
    pub fn fundamental(lin: &LinearLieAlgebra, form: &FormEps) -> Result<Self> {
        if lin.module != form.space {
            return Err(Error::Invalid("form is not on the module of the algebra".into()));
        }
        Self::new(lin.algebra.clone(), form.clone(), lin.matrices.clone())
    }

    pub fn space(&self) -> &GradedSpace {
        &self.form.space
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn algebra_form(&self) -> &FormEps {
        self.algebra.form().expect("checked on construction")
    }

    /// ρ(x) for a coordinate vector x of g.
    pub fn action_of(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut acc = Matrix::zeros(self.space().field(), n, n);
        for (xi, m) in x.iter().zip(&self.action) {
            if !xi.is_zero() {
                acc = acc.add(&m.scale(xi));
            }
        }
        acc
    }

    pub fn pairing(&self) -> Bilinear {
        Bilinear::action(self.space().field(), &self.action, self.dim())
    }

    /// Degree, morphism and skewness on all basis combinations; dimension at least two.
    pub fn validate(&self) -> Verdict {
        let g = &self.algebra;
        let v = self.space();
        let d = g.dim();
        let n = self.dim();
        let mut ws = Vec::new();
        if n < 2 {
            ws.push(Witness::new("dimension of V", &[], n, "at least 2"));
        }
        for (x, m) in self.action.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            if matrix_degree(v, v, m).as_ref() != Some(g.space().degree(x)) {
                ws.push(Witness::new(format!("degree of ρ({})", g.space().name(x)), &[x], m, g.space().degree(x)));
            }
        }
        let morph: Vec<Witness> = (0..d)
            .into_par_iter()
            .flat_map_iter(|x| {
                (0..d).filter_map(move |y| {
                    let e = g.space().eps(x, y);
                    let lhs = self.action_of(g.bracket_basis(x, y));
                    let rhs = self.action[x].mul(&self.action[y]).sub(&self.action[y].mul(&self.action[x]).scale(e));
                    (lhs != rhs).then(|| {
                        Witness::new(
                            format!("morphism on ({}, {})", g.space().name(x), g.space().name(y)),
                            &[x, y],
                            &lhs,
                            &rhs,
                        )
                    })
                })
            })
            .collect();
        ws.extend(morph.into_iter().take(WITNESS_CAP));
        let field = v.field();
        let gx = g.space();
        let skew: Vec<Witness> = (0..d)
            .into_par_iter()
            .flat_map_iter(|x| {
                let m = &self.action[x];
                let mut local = Vec::new();
                for a in 0..n {
                    let e = v.eps_deg(gx.degree(x), v.degree(a));
                    for b in 0..n {
                        let mut lhs = Scalar::zero(field);
                        for r in 0..n {
                            lhs.add_mul(m.get(r, a), self.form.get(r, b));
                            let t = &e * self.form.get(a, r);
                            lhs.add_mul(&t, m.get(r, b));
                        }
                        if !lhs.is_zero() && local.len() < WITNESS_CAP {
                            local.push(Witness::new(
                                format!("skewness of ρ({}) on ({}, {})", gx.name(x), v.name(a), v.name(b)),
                                &[x, a, b],
                                &lhs,
                                "0",
                            ));
                        }
                    }
                }
                local
            })
            .collect();
        ws.extend(skew.into_iter().take(WITNESS_CAP));
        Verdict::from_witnesses(ws)
    }

    /// True when the action matrices are linearly independent.
    pub fn faithful(&self) -> bool {
        if self.action.is_empty() {
            return true;
        }
        let rows: Vec<Vec<Scalar>> = self.action.iter().map(|m| m.as_slice().to_vec()).collect();
        Matrix::from_rows(self.space().field(), rows).map(|m| m.rank() == self.action.len()).unwrap_or(false)
    }

    /// μ(eₐ,e_b) = Σᵢ (ρ(eᵢ)eₐ, e_b)·eⁱ with eⁱ the dual basis of B_g.
    pub fn moment_map(&self) -> Result<AltMap> {
        let dual = self.algebra_form().dual_basis()?;
        let v = self.space().clone();
        let gs = self.algebra.space().clone();
        let d = gs.dim();
        Ok(AltMap::from_fn(v, Codomain::Space(gs.clone()), 2, |t| {
            let (a, b) = (t[0], t[1]);
            let mut acc = gs.zero_vec();
            for i in 0..d {
                let c = self.form.pair(&self.action[i].column(a), &self.space().unit(b));
                if !c.is_zero() {
                    axpy(&mut acc, &c, &dual.column(i));
                }
            }
            acc
        }))
    }

    /// B_g(x, μ(v,w)) = (ρ(x)v, w) on every basis triple.
    pub fn check_moment(&self, mu: &AltMap) -> Verdict {
        let bg = self.algebra_form();
        let n = self.dim();
        let mut ws = Vec::new();
        for x in 0..self.algebra.dim() {
            for a in 0..n {
                for b in 0..n {
                    let lhs = bg.pair(&self.algebra.space().unit(x), &mu.eval(&[a, b]));
                    let rhs = self.form.pair(&self.action[x].column(a), &self.space().unit(b));
                    if lhs != rhs && ws.len() < WITNESS_CAP {
                        ws.push(Witness::new("moment identity", &[x, a, b], &lhs, &rhs));
                    }
                }
            }
        }
        Verdict::from_witnesses(ws)
    }

    /// {x, μ(v,w)} = μ(x(v),w) + ε(x,v)μ(v,x(w)) on every basis triple.
    pub fn check_equivariance(&self, mu: &AltMap) -> Verdict {
        let n = self.dim();
        let gs = self.algebra.space();
        let v = self.space();
        let mut ws = Vec::new();
        for x in 0..self.algebra.dim() {
            for a in 0..n {
                for b in 0..n {
                    let lhs = self.algebra.bracket(&gs.unit(x), &mu.eval(&[a, b]));
                    let mut rhs = mu.eval_vectors(&[self.action[x].column(a), v.unit(b)]);
                    let e = v.eps_deg(gs.degree(x), v.degree(a));
                    axpy(&mut rhs, &e, &mu.eval_vectors(&[v.unit(a), self.action[x].column(b)]));
                    if lhs != rhs && ws.len() < WITNESS_CAP {
                        ws.push(Witness::new("equivariance", &[x, a, b], fmt_vec(&lhs), fmt_vec(&rhs)));
                    }
                }
            }
        }
        Verdict::from_witnesses(ws)
    }

    /// Operator μ(eₐ,e_b) acting on V.
    pub fn moment_operator(&self, mu: &AltMap, a: usize, b: usize) -> Matrix {
        self.action_of(&mu.eval(&[a, b]))
    }
}

/// μ_can(eᵤ,e_v) as an endomorphism: w ↦ ε(v,w)(u,w)v − (v,w)u.
pub fn mu_can_endo(form: &FormEps, u: usize, v: usize) -> Matrix {
    let n = form.dim();
    let s = &form.space;
    let mut m = Matrix::zeros(s.field(), n, n);
    for w in 0..n {
        let a = s.eps(v, w) * form.get(u, w);
        let b = form.get(v, w);
        m.entry_mut(v, w).add_mul(&a, &Scalar::one(s.field()));
        *m.entry_mut(u, w) -= b;
    }
    m
}

/// The closed-form canonical moment map written in the coordinates of so_ε(V,B).
pub fn mu_can(so: &LinearLieAlgebra, form: &FormEps) -> Result<AltMap> {
    let mut entries = Vec::new();
    for t in canonical_tuples(&form.space, 2) {
        let m = mu_can_endo(form, t[0], t[1]);
        let c = so.coords(&m).ok_or_else(|| Error::Invalid(format!("μ_can{t:?} is outside the so_ε basis span")))?;
        entries.push((t, c));
    }
    AltMap::from_entries(form.space.clone(), Codomain::Space(so.algebra.space().clone()), 2, entries)
}

/// The fundamental representation of so_ε(V,B) with form −½Tr_ε.
pub fn fundamental_so(form: &FormEps) -> Result<(LinearLieAlgebra, OrthRep)> {
    let so = so_eps(form)?;
    let rep = OrthRep::fundamental(&so, form)?;
    Ok((so, rep))
}

/// Tr_ε(f ∘ f(u,v)) = −2(f(u),v) for every basis element f and basis pair (u,v).
pub fn lemma_trace_check(so: &LinearLieAlgebra, form: &FormEps) -> Verdict {
    let n = form.dim();
    let two = Scalar::from_int(form.field(), -2);
    let mut ws = Vec::new();
    for (k, f) in so.matrices.iter().enumerate() {
        for u in 0..n {
            for v in 0..n {
                let lhs = eps_trace(&form.space, &f.mul(&mu_can_endo(form, u, v)));
                let rhs = &two * &form.pair(&f.column(u), &form.space.unit(v));
                if lhs != rhs && ws.len() < WITNESS_CAP {
                    ws.push(Witness::new(format!("trace lemma for {}", so.algebra.space().name(k)), &[k, u, v], &lhs, &rhs));
                }
            }
        }
    }
    Verdict::from_witnesses(ws)
}

/// Span of {μ_can(eᵢ,eⱼ)} equals so_ε(V,B).
pub fn mu_can_spans(so: &LinearLieAlgebra, mu: &AltMap) -> bool {
    let rows: Vec<Vec<Scalar>> = mu.entries().map(|(_, v)| v.clone()).collect();
    if rows.is_empty() {
        return so.dim() == 0;
    }
    Matrix::from_rows(mu.domain().field(), rows).map(|m| m.rank() == so.dim()).unwrap_or(false)
}

/// Representation of g⊕h on V⊗W: (x+y)(v⊗w) = x(v)⊗w + ε(y,v) v⊗y(w), with the twisted
/// tensor form and B_g ⟂ B_h.
pub fn rep_tensor(r: &OrthRep, s: &OrthRep) -> Result<OrthRep> {
    let algebra = r.algebra.dsum(&s.algebra)?;
    let form = r.form.tensor(&s.form)?;
    let (n, m) = (r.dim(), s.dim());
    let field = form.field();
    let v = r.space();
    let mut action = Vec::with_capacity(algebra.dim());
    for a in &r.action {
        let mut big = Matrix::zeros(field, n * m, n * m);
        for i in 0..n {
            for j in 0..n {
                let c = a.get(i, j);
                if c.is_zero() {
                    continue;
                }
                for w in 0..m {
                    big.set(i * m + w, j * m + w, c.clone());
                }
            }
        }
        action.push(big);
    }
    for (y, b) in s.action.iter().enumerate() {
        let dy = s.algebra.space().degree(y);
        let mut big = Matrix::zeros(field, n * m, n * m);
        for vi in 0..n {
            let e = v.eps_deg(dy, v.degree(vi));
            for w1 in 0..m {
                for w2 in 0..m {
                    let c = b.get(w1, w2);
                    if !c.is_zero() {
                        big.set(vi * m + w1, vi * m + w2, &e * c);
                    }
                }
            }
        }
        action.push(big);
    }
    OrthRep::new(algebra, form, action)
}

/// μ_{V⊗W}(v⊗w, v′⊗w′) = ε(w,v′)(μ_V(v,v′)(w,w′)_W + (v,v′)_V μ_W(w,w′)), in g⊕h coordinates.
pub fn tensor_moment_formula(r: &OrthRep, s: &OrthRep, tensor: &OrthRep) -> Result<AltMap> {
    let mu_v = r.moment_map()?;
    let mu_w = s.moment_map()?;
    let (dg, m) = (r.algebra.dim(), s.dim());
    let v = r.space();
    let w = s.space();
    let gs = tensor.algebra.space().clone();
    Ok(AltMap::from_fn(tensor.space().clone(), Codomain::Space(gs.clone()), 2, |t| {
        let (v1, w1) = (t[0] / m, t[0] % m);
        let (v2, w2) = (t[1] / m, t[1] % m);
        let e = v.eps_deg(w.degree(w1), v.degree(v2));
        let mut acc = gs.zero_vec();
        let ww = s.form.get(w1, w2);
        if !ww.is_zero() {
            let mv = mu_v.eval(&[v1, v2]);
            for (k, c) in mv.iter().enumerate() {
                acc[k].add_mul(c, ww);
            }
        }
        let vv = r.form.get(v1, v2);
        if !vv.is_zero() {
            let mw = mu_w.eval(&[w1, w2]);
            for (k, c) in mw.iter().enumerate() {
                acc[dg + k].add_mul(c, vv);
            }
        }
        acc.iter().map(|x| x * &e).collect()
    }))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{sl2_make, sl2_module};
    use crate::grading::CommutationFactor;
    use crate::scalar::FieldDescriptor;

    const Q: FieldDescriptor = FieldDescriptor::Rational;

    fn sl2_rep() -> OrthRep {
        let cf = Arc::new(CommutationFactor::super_sign(Q));
        let gamma = cf.group().elem(&[1]).unwrap();
        let (lin, omega) = sl2_make(&cf, &gamma).unwrap();
        OrthRep::fundamental(&lin, &omega).unwrap()
    }

    #[test]
    fn sl2_moment_matrices() {
        let r = sl2_rep();
        assert!(r.validate().is_pass());
        let mu = r.moment_map().unwrap();
        let m = |a, b| r.moment_operator(&mu, a, b);
        assert_eq!(m(0, 0), Matrix::from_ints(Q, &[&[0, -2], &[0, 0]]));
        assert_eq!(m(1, 1), Matrix::from_ints(Q, &[&[0, 0], &[2, 0]]));
        assert_eq!(m(0, 1), Matrix::from_ints(Q, &[&[1, 0], &[0, -1]]));
        assert!(r.check_moment(&mu).is_pass());
        assert!(r.check_equivariance(&mu).is_pass());
    }

    #[test]
    fn mu_can_matches_dual_basis() {
        let cf = Arc::new(CommutationFactor::super_sign(Q));
        let gamma = cf.group().elem(&[1]).unwrap();
        let omega = sl2_module(&cf, &gamma).unwrap();
        let (so, rep) = fundamental_so(&omega).unwrap();
        assert_eq!(mu_can(&so, &omega).unwrap(), rep.moment_map().unwrap());
        assert!(lemma_trace_check(&so, &omega).is_pass());
    }

    #[test]
    fn flipped_sign_fails_skewness() {
        let r = sl2_rep();
        let mut bad = r.clone();
        bad.action[1] = bad.action[1].scale(&Scalar::from_int(Q, -1));
        bad.action[1].set(0, 0, Scalar::one(Q));
        assert!(!bad.validate().is_pass());
    }

    #[test]
    fn tensor_with_sl2_moment_formula() {
        let r = sl2_rep();
        let t = rep_tensor(&r, &r).unwrap();
        assert!(t.validate().is_pass());
        assert_eq!(tensor_moment_formula(&r, &r, &t).unwrap(), t.moment_map().unwrap());
    }
}
