//! Colour Lie algebras as structure-constant tables, and the linear algebras gl_ε, so_ε
//! and the sl(2) triple on a two-dimensional odd space.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graded::{eps_trace, matrix_degree, BasisVector, FormEps, GradedSpace};
use crate::grading::{CommutationFactor, GroupElem};
use crate::matrix::Matrix;
use crate::scalar::{axpy, fmt_vec, is_zero_vec, FieldDescriptor, Scalar};
use crate::verdict::{Verdict, Witness};

/// Cap on witnesses collected by the validators.
pub const WITNESS_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct ColourLieAlgebra {
    space: GradedSpace,
    /// {eᵢ, eⱼ} at index i·n + j.
    consts: Vec<Vec<Scalar>>,
    form: Option<FormEps>,
}

impl ColourLieAlgebra {
    /// Builds from basis brackets; pairs not listed are zero.
    pub fn new(
        space: GradedSpace,
        entries: impl IntoIterator<Item = (usize, usize, Vec<Scalar>)>,
        form: Option<FormEps>,
    ) -> Result<Self> {
        let n = space.dim();
        let mut consts = vec![space.zero_vec(); n * n];
        for (i, j, v) in entries {
            if i >= n || j >= n || v.len() != n {
                return Err(Error::Shape(format!("bracket entry ({i},{j}) does not fit dimension {n}")));
            }
            if let Some(x) = v.iter().find(|x| x.field() != space.field()) {
                return Err(Error::FieldMismatch(x.field(), space.field()));
            }
            consts[i * n + j] = v;
        }
        if let Some(f) = &form {
            if f.space != space {
                return Err(Error::Invalid("form lives on a different space".into()));
            }
        }
        Ok(ColourLieAlgebra { space, consts, form })
    }

    pub fn from_fn(space: GradedSpace, form: Option<FormEps>, f: impl Fn(usize, usize) -> Vec<Scalar>) -> Result<Self> {
        let n = space.dim();
        let entries: Vec<_> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (i, j, f(i, j))).collect();
        Self::new(space, entries, form)
    }

    pub fn abelian(space: GradedSpace, form: Option<FormEps>) -> Result<Self> {
        Self::new(space, [], form)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn field(&self) -> FieldDescriptor {
        self.space.field()
    }

    pub fn form(&self) -> Option<&FormEps> {
        self.form.as_ref()
    }

    pub fn require_form(&self) -> Result<&FormEps> {
        self.form.as_ref().ok_or_else(|| Error::Invalid("algebra has no invariant form".into()))
    }

    pub fn with_form(&self, form: FormEps) -> Result<Self> {
        Self::new(self.space.clone(), self.entries(), Some(form))
    }

    /// Nonzero bracket entries (i, j, {eᵢ,eⱼ}).
    pub fn entries(&self) -> Vec<(usize, usize, Vec<Scalar>)> {
        let n = self.dim();
        (0..n * n)
            .filter(|&k| !is_zero_vec(&self.consts[k]))
            .map(|k| (k / n, k % n, self.consts[k].clone()))
            .collect()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.consts[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut acc = self.space.zero_vec();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut acc, &(xi * yj), &self.consts[i * n + j]);
            }
        }
        acc
    }

    /// Matrix of ad(x) on the basis.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field(), n, n);
        for j in 0..n {
            let col = self.bracket(x, &self.space.unit(j));
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Adds `delta` to the coefficient of e_k in {eᵢ,eⱼ} and adjusts {eⱼ,eᵢ} so that
    /// ε-antisymmetry is preserved.
    pub fn perturbed(&self, i: usize, j: usize, k: usize, delta: &Scalar) -> Self {
        let n = self.dim();
        let mut out = self.clone();
        out.consts[i * n + j][k] += delta;
        if i != j {
            let c = -(&(self.space.eps(i, j) * delta));
            out.consts[j * n + i][k] += &c;
        }
        out
    }

    fn name_triple(&self, t: &[usize]) -> String {
        t.iter().map(|&i| self.space.name(i)).collect::<Vec<_>>().join(", ")
    }

    pub fn grading_witnesses(&self) -> Vec<Witness> {
        let n = self.dim();
        let g = self.space.cf().group();
        let mut ws = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let want = g.add(self.space.degree(i), self.space.degree(j));
                let v = &self.consts[i * n + j];
                if v.iter().enumerate().any(|(k, c)| !c.is_zero() && *self.space.degree(k) != want) {
                    ws.push(Witness::new(
                        format!("grading of {{{}}}", self.name_triple(&[i, j])),
                        &[i, j],
                        fmt_vec(v),
                        format!("degree {want}"),
                    ));
                    if ws.len() >= WITNESS_CAP {
                        return ws;
                    }
                }
            }
        }
        ws
    }

    pub fn antisymmetry_witnesses(&self) -> Vec<Witness> {
        let n = self.dim();
        let mut ws = Vec::new();
        for i in 0..n {
            for j in i..n {
                let lhs = &self.consts[i * n + j];
                let e = self.space.neg_eps(i, j);
                let rhs: Vec<Scalar> = self.consts[j * n + i].iter().map(|x| x * e).collect();
                if *lhs != rhs {
                    ws.push(Witness::new(
                        format!("ε-antisymmetry of {{{}}}", self.name_triple(&[i, j])),
                        &[i, j],
                        fmt_vec(lhs),
                        fmt_vec(&rhs),
                    ));
                    if ws.len() >= WITNESS_CAP {
                        return ws;
                    }
                }
            }
        }
        ws
    }

    /// ε(z,x){x,{y,z}} + ε(x,y){y,{z,x}} + ε(y,z){z,{x,y}} on a basis triple.
    pub fn jacobi_residual(&self, x: usize, y: usize, z: usize) -> Vec<Scalar> {
        let n = self.dim();
        let mut acc = self.space.zero_vec();
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            let inner = &self.consts[b * n + c];
            if is_zero_vec(inner) {
                continue;
            }
            let outer = self.bracket(&self.space.unit(a), inner);
            axpy(&mut acc, self.space.eps(c, a), &outer);
        }
        acc
    }

    /// All violating triples, up to `cap`, in lexicographic order.
    pub fn jacobi_witnesses(&self, cap: usize) -> Vec<Witness> {
        let n = self.dim();
        let mut ws: Vec<Witness> = (0..n)
            .into_par_iter()
            .flat_map_iter(|x| {
                let mut local = Vec::new();
                for y in 0..n {
                    for z in 0..n {
                        if local.len() >= cap {
                            return local;
                        }
                        let r = self.jacobi_residual(x, y, z);
                        if !is_zero_vec(&r) {
                            local.push(Witness::new(
                                format!("ε-Jacobi on ({})", self.name_triple(&[x, y, z])),
                                &[x, y, z],
                                fmt_vec(&r),
                                "0",
                            ));
                        }
                    }
                }
                local
            })
            .collect();
        ws.truncate(cap);
        ws
    }

    /// Grading, ε-antisymmetry and ε-Jacobi on all basis pairs and triples.
    pub fn validate(&self) -> Verdict {
        let mut ws = self.grading_witnesses();
        ws.extend(self.antisymmetry_witnesses());
        if ws.len() < WITNESS_CAP {
            ws.extend(self.jacobi_witnesses(WITNESS_CAP - ws.len()));
        }
        Verdict::from_witnesses(ws)
    }

    /// Validity of the form and B({x,y},z) = −ε(x,y)B(y,{x,z}) on all basis triples.
    pub fn quad_validate(&self) -> Result<Verdict> {
        let form = self.require_form()?;
        let mut ws = form.validate().witnesses().to_vec();
        let n = self.dim();
        let inv: Vec<Witness> = (0..n)
            .into_par_iter()
            .flat_map_iter(|x| {
                let mut local = Vec::new();
                for y in 0..n {
                    for z in 0..n {
                        let lhs = form.pair(&self.consts[x * n + y], &self.space.unit(z));
                        let rhs = -&(self.space.eps(x, y) * &form.pair(&self.space.unit(y), &self.consts[x * n + z]));
                        if lhs != rhs && local.len() < WITNESS_CAP {
                            local.push(Witness::new(
                                format!("ad-invariance on ({})", self.name_triple(&[x, y, z])),
                                &[x, y, z],
                                &lhs,
                                &rhs,
                            ));
                        }
                    }
                }
                local
            })
            .collect();
        ws.extend(inv.into_iter().take(WITNESS_CAP));
        Ok(Verdict::from_witnesses(ws))
    }

    /// Block sum g⊕h; the form is B_g ⟂ B_h when both are present.
    pub fn dsum(&self, other: &ColourLieAlgebra) -> Result<Self> {
        let space = self.space.dsum(&other.space)?;
        let (n, m) = (self.dim(), other.dim());
        let form = match (&self.form, &other.form) {
            (Some(a), Some(b)) => {
                let f = a.orthogonal_sum(b)?;
                Some(FormEps { space: space.clone(), gram: f.gram })
            }
            _ => None,
        };
        let mut entries = Vec::new();
        for (i, j, v) in self.entries() {
            let mut w = space.zero_vec();
            w[..n].clone_from_slice(&v);
            entries.push((i, j, w));
        }
        for (i, j, v) in other.entries() {
            let mut w = space.zero_vec();
            w[n..n + m].clone_from_slice(&v);
            entries.push((n + i, n + j, w));
        }
        Self::new(space, entries, form)
    }
}

/// A colour Lie algebra realised by matrices acting on a graded module.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearLieAlgebra {
    pub algebra: ColourLieAlgebra,
    pub module: GradedSpace,
    pub matrices: Vec<Matrix>,
    pivots: Vec<usize>,
    pivot_inverse: Matrix,
}

impl LinearLieAlgebra {
    /// Closes a list of homogeneous matrices under the commutator {a,b} = ab − ε(a,b)ba,
    /// which must already be spanned by them, and equips the result with c·Tr_ε(fg).
    pub fn from_matrices(module: GradedSpace, named: Vec<(String, Matrix)>, trace_scale: &Scalar) -> Result<Self> {
        let n2 = module.dim() * module.dim();
        let mut basis = Vec::with_capacity(named.len());
        for (name, m) in &named {
            let degree = matrix_degree(&module, &module, m)
                .ok_or_else(|| Error::Degree(format!("basis matrix {name} is zero or inhomogeneous")))?;
            basis.push(BasisVector { name: name.clone(), degree });
        }
        let space = GradedSpace::new(module.cf().clone(), basis)?;
        let matrices: Vec<Matrix> = named.into_iter().map(|(_, m)| m).collect();
        let rows: Vec<Vec<Scalar>> = matrices.iter().map(|m| m.as_slice().to_vec()).collect();
        let (pivots, pivot_inverse) = if rows.is_empty() {
            (Vec::new(), Matrix::zeros(module.field(), 0, 0))
        } else {
            let stacked = Matrix::from_rows(module.field(), rows)?;
            let (_, pivots) = stacked.rref();
            if pivots.len() < matrices.len() {
                return Err(Error::Invalid("basis matrices are linearly dependent".into()));
            }
            let d = matrices.len();
            let mut sub = Matrix::zeros(module.field(), d, d);
            for (r, m) in matrices.iter().enumerate() {
                for (c, &p) in pivots.iter().enumerate() {
                    sub.set(r, c, m.as_slice()[p].clone());
                }
            }
            (pivots, sub.inverse()?)
        };
        debug_assert!(pivots.iter().all(|&p| p < n2));
        let mut lin = LinearLieAlgebra {
            algebra: ColourLieAlgebra::abelian(space.clone(), None)?,
            module,
            matrices,
            pivots,
            pivot_inverse,
        };
        let d = lin.matrices.len();
        let mut entries = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let c = lin.commutator(&lin.matrices[i], &lin.matrices[j], space.eps(i, j));
                let coords = lin
                    .coords(&c)
                    .ok_or_else(|| Error::Invalid(format!("bracket of {} and {} leaves the span", space.name(i), space.name(j))))?;
                entries.push((i, j, coords));
            }
        }
        let mut gram = Matrix::zeros(space.field(), d, d);
        for i in 0..d {
            for j in 0..d {
                let t = eps_trace(&lin.module, &lin.matrices[i].mul(&lin.matrices[j]));
                gram.set(i, j, &t * trace_scale);
            }
        }
        let form = FormEps::new(space.clone(), gram)?;
        lin.algebra = ColourLieAlgebra::new(space, entries, Some(form))?;
        Ok(lin)
    }

    fn commutator(&self, a: &Matrix, b: &Matrix, eps: &Scalar) -> Matrix {
        a.mul(b).sub(&b.mul(a).scale(eps))
    }

    pub fn dim(&self) -> usize {
        self.matrices.len()
    }

    /// Coordinates of a matrix in the basis, or `None` outside the span.
    pub fn coords(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        let d = self.dim();
        let field = self.module.field();
        let row: Vec<Scalar> = self.pivots.iter().map(|&p| m.as_slice()[p].clone()).collect();
        let mut x = vec![Scalar::zero(field); d];
        for (c, rc) in row.iter().enumerate() {
            if rc.is_zero() {
                continue;
            }
            for (r, xr) in x.iter_mut().enumerate() {
                xr.add_mul(rc, self.pivot_inverse.get(c, r));
            }
        }
        (self.matrix_of(&x) == *m).then_some(x)
    }

    pub fn matrix_of(&self, x: &[Scalar]) -> Matrix {
        let n = self.module.dim();
        let mut acc = Matrix::zeros(self.module.field(), n, n);
        for (xi, m) in x.iter().zip(&self.matrices) {
            if !xi.is_zero() {
                acc = acc.add(&m.scale(xi));
            }
        }
        acc
    }

    pub fn with_trace_form(&self, scale: &Scalar) -> Result<Self> {
        let d = self.dim();
        let mut gram = Matrix::zeros(self.module.field(), d, d);
        for i in 0..d {
            for j in 0..d {
                let t = eps_trace(&self.module, &self.matrices[i].mul(&self.matrices[j]));
                gram.set(i, j, &t * scale);
            }
        }
        let mut out = self.clone();
        out.algebra = self.algebra.with_form(FormEps::new(self.algebra.space().clone(), gram)?)?;
        Ok(out)
    }
}

fn elementary(field: FieldDescriptor, n: usize, r: usize, s: usize) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    m.set(r, s, Scalar::one(field));
    m
}

/// gl_ε(V) on the elementary matrices E[r,s], with B(f,g) = Tr_ε(fg).
pub fn gl_eps(v: &GradedSpace) -> Result<LinearLieAlgebra> {
    let n = v.dim();
    let f = v.field();
    let named = (0..n)
        .flat_map(|r| (0..n).map(move |s| (r, s)))
        .map(|(r, s)| (format!("E[{},{}]", v.name(r), v.name(s)), elementary(f, n, r, s)))
        .collect();
    LinearLieAlgebra::from_matrices(v.clone(), named, &Scalar::one(f))
}

/// Basis of so_ε(V,B): per degree, the echelon kernel basis of
/// (f(eₐ),e_b) + ε(δ,eₐ)(eₐ,f(e_b)) = 0, merged and ordered by leading entry.
/// Each element is named after its leading entry. The form is −½Tr_ε(fg).
pub fn so_eps(form: &FormEps) -> Result<LinearLieAlgebra> {
    let v = &form.space;
    let n = v.dim();
    let field = v.field();
    if !form.validate().is_pass() {
        return Err(Error::Invalid("so_ε needs a valid non-degenerate ε-symmetric form".into()));
    }
    let g = v.cf().group();
    let mut degrees: Vec<GroupElem> = Vec::new();
    for r in 0..n {
        for s in 0..n {
            let d = g.sub(v.degree(r), v.degree(s));
            if !degrees.contains(&d) {
                degrees.push(d);
            }
        }
    }
    let mut vectors: Vec<Vec<Scalar>> = Vec::new();
    for d in &degrees {
        let unknowns: Vec<(usize, usize)> = (0..n)
            .flat_map(|r| (0..n).map(move |s| (r, s)))
            .filter(|&(r, s)| g.sub(v.degree(r), v.degree(s)) == *d)
            .collect();
        let mut rows = Vec::new();
        for a in 0..n {
            let e = v.eps_deg(d, v.degree(a));
            for b in 0..n {
                let row: Vec<Scalar> = unknowns
                    .iter()
                    .map(|&(r, s)| {
                        let mut c = Scalar::zero(field);
                        if s == a {
                            c += form.get(r, b);
                        }
                        if s == b {
                            c += &(&e * form.get(a, r));
                        }
                        c
                    })
                    .collect();
                rows.push(row);
            }
        }
        let m = Matrix::from_rows(field, rows)?;
        for k in m.kernel() {
            let mut full = vec![Scalar::zero(field); n * n];
            for (c, &(r, s)) in k.into_iter().zip(&unknowns) {
                full[r * n + s] = c;
            }
            vectors.push(full);
        }
    }
    let lead = |x: &Vec<Scalar>| x.iter().position(|c| !c.is_zero()).unwrap_or(usize::MAX);
    vectors.sort_by_key(lead);
    let named = vectors
        .into_iter()
        .map(|x| {
            let l = lead(&x);
            let name = format!("X[{},{}]", v.name(l / n), v.name(l % n));
            let rows = x.chunks(n).map(<[Scalar]>::to_vec).collect();
            Ok((name, Matrix::from_rows(field, rows)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let half = Scalar::from_ratio(field, -1, 2)?;
    LinearLieAlgebra::from_matrices(v.clone(), named, &half)
}

/// The space W = ⟨p, q⟩ with |p| = γ, |q| = −γ and Ω(p,q) = 1.
pub fn sl2_module(cf: &Arc<CommutationFactor>, gamma: &GroupElem) -> Result<FormEps> {
    let g = cf.group();
    if !g.contains(gamma) {
        return Err(Error::Degree(format!("{gamma} is not an element of the grading group")));
    }
    if cf.parity(gamma) != -1 {
        return Err(Error::Invalid(format!("no odd degree available: ε({gamma},{gamma}) = 1")));
    }
    let w = GradedSpace::new(
        cf.clone(),
        vec![
            BasisVector { name: "p".into(), degree: gamma.clone() },
            BasisVector { name: "q".into(), degree: g.neg(gamma) },
        ],
    )?;
    let field = cf.field();
    let mut gram = Matrix::zeros(field, 2, 2);
    gram.set(0, 1, Scalar::one(field));
    gram.set(1, 0, w.eps(1, 0).clone());
    FormEps::checked(w, gram)
}

/// so_ε(W,Ω) on the explicit basis E = E_pq, H = diag(1,−1), F = E_qp, with −½Tr_ε.
pub fn sl2_make(cf: &Arc<CommutationFactor>, gamma: &GroupElem) -> Result<(LinearLieAlgebra, FormEps)> {
    let omega = sl2_module(cf, gamma)?;
    let f = cf.field();
    let e = Matrix::from_ints(f, &[&[0, 1], &[0, 0]]);
    let h = Matrix::from_ints(f, &[&[1, 0], &[0, -1]]);
    let ff = Matrix::from_ints(f, &[&[0, 0], &[1, 0]]);
    let named = vec![("E".to_string(), e), ("H".to_string(), h), ("F".to_string(), ff)];
    let lin = LinearLieAlgebra::from_matrices(omega.space.clone(), named, &Scalar::from_ratio(f, -1, 2)?)?;
    Ok((lin, omega))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::AbelianGroup;

    const Q: FieldDescriptor = FieldDescriptor::Rational;

    fn sv(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_int(Q, x)).collect()
    }

    fn super_cf() -> Arc<CommutationFactor> {
        Arc::new(CommutationFactor::super_sign(Q))
    }

    #[test]
    fn abelian_passes() {
        let v = GradedSpace::from_degrees(super_cf(), &[("a", &[0]), ("b", &[1])]).unwrap();
        assert!(ColourLieAlgebra::abelian(v, None).unwrap().validate().is_pass());
    }

    #[test]
    fn gl_dimension_and_validity() {
        let v = GradedSpace::from_degrees(super_cf(), &[("a", &[0]), ("b", &[1]), ("c", &[1])]).unwrap();
        let gl = gl_eps(&v).unwrap();
        assert_eq!(gl.dim(), 9);
        assert!(gl.algebra.validate().is_pass());
        assert!(gl.algebra.quad_validate().unwrap().is_pass());
    }

    #[test]
    fn sl2_brackets() {
        let cf = super_cf();
        let gamma = cf.group().elem(&[1]).unwrap();
        let (sl2, omega) = sl2_make(&cf, &gamma).unwrap();
        assert!(omega.validate().is_pass());
        let a = &sl2.algebra;
        // basis order E, H, F
        assert_eq!(a.bracket_basis(1, 0), sv(&[2, 0, 0]).as_slice());
        assert_eq!(a.bracket_basis(1, 2), sv(&[0, 0, -2]).as_slice());
        assert_eq!(a.bracket_basis(0, 2), sv(&[0, 1, 0]).as_slice());
        assert!(a.validate().is_pass());
        assert!(a.quad_validate().unwrap().is_pass());
        // the form is ½Tr(XY)
        let form = a.form().unwrap();
        assert_eq!(*form.get(1, 1), Scalar::one(Q));
        assert_eq!(*form.get(0, 2), Scalar::from_ratio(Q, 1, 2).unwrap());
    }

    #[test]
    fn sl2_needs_odd_degree() {
        let cf = super_cf();
        let zero = cf.group().zero();
        assert!(sl2_make(&cf, &zero).is_err());
    }

    #[test]
    fn so_of_odd_symplectic_plane_is_sl2_sized() {
        let cf = super_cf();
        let gamma = cf.group().elem(&[1]).unwrap();
        let omega = sl2_module(&cf, &gamma).unwrap();
        let so = so_eps(&omega).unwrap();
        assert_eq!(so.dim(), 3);
        let names: Vec<&str> = (0..3).map(|i| so.algebra.space().name(i)).collect();
        assert_eq!(names, ["X[p,p]", "X[p,q]", "X[q,p]"]);
        assert!(so.algebra.validate().is_pass());
        assert!(so.algebra.quad_validate().unwrap().is_pass());
    }

    #[test]
    fn so_even_dimension_count() {
        let cf = Arc::new(CommutationFactor::trivial(Q));
        for n in 2..=4usize {
            let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
            let items: Vec<(&str, &[i64])> = names.iter().map(|s| (s.as_str(), &[][..])).collect();
            let v = GradedSpace::from_degrees(cf.clone(), &items).unwrap();
            let form = FormEps::checked(v, Matrix::identity(Q, n)).unwrap();
            let so = so_eps(&form).unwrap();
            assert_eq!(so.dim(), n * (n - 1) / 2);
            assert!(so.algebra.validate().is_pass());
        }
    }

    #[test]
    fn perturbation_breaks_jacobi() {
        let cf = super_cf();
        let gamma = cf.group().elem(&[1]).unwrap();
        let (sl2, _) = sl2_make(&cf, &gamma).unwrap();
        let bad = sl2.algebra.perturbed(1, 0, 0, &Scalar::one(Q));
        let v = bad.validate();
        assert!(!v.is_pass());
        assert!(v.witnesses()[0].what.contains("Jacobi"));
    }

    #[test]
    fn dsum_blocks() {
        let cf = super_cf();
        let gamma = cf.group().elem(&[1]).unwrap();
        let (sl2, _) = sl2_make(&cf, &gamma).unwrap();
        let s = sl2.algebra.dsum(&sl2.algebra).unwrap();
        assert_eq!(s.dim(), 6);
        assert!(is_zero_vec(s.bracket_basis(0, 5)));
        assert!(s.validate().is_pass());
        assert!(s.quad_validate().unwrap().is_pass());
        assert_eq!(s.space().name(3), "E'");
    }

    #[test]
    fn z2_by_z_grading_so() {
        let g = AbelianGroup::new(1, vec![2]).unwrap();
        let e = vec![sv(&[-1, 1]), sv(&[1, -1])];
        let cf = Arc::new(CommutationFactor::checked(g, Q, e).unwrap());
        let v = GradedSpace::from_degrees(cf, &[("a", &[1, 0]), ("b", &[-1, 0]), ("c", &[0, 1]), ("d", &[0, 1])]).unwrap();
        // a,b odd (ε = −1) and paired; c,d odd and paired
        let gram = Matrix::from_ints(Q, &[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
        let form = FormEps::checked(v, gram).unwrap();
        let so = so_eps(&form).unwrap();
        assert!(so.algebra.validate().is_pass());
        assert!(so.algebra.quad_validate().unwrap().is_pass());
    }
}
