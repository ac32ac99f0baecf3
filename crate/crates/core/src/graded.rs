//! Γ-graded spaces, homogeneous maps and ε-symmetric forms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grading::{CommutationFactor, GroupElem};
use crate::matrix::Matrix;
use crate::scalar::{FieldDescriptor, Scalar};
use crate::verdict::{Verdict, Witness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVector {
    pub name: String,
    pub degree: GroupElem,
}

/// A graded space with an ordered named basis. The ε values between basis vectors are
/// tabulated once because every sign computation downstream reads them.
#[derive(Clone, Debug)]
pub struct GradedSpace {
    cf: Arc<CommutationFactor>,
    basis: Vec<BasisVector>,
    eps: Vec<Scalar>,
    neg_eps: Vec<Scalar>,
    parity: Vec<i8>,
}

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.cf, &other.cf) || self.cf == other.cf) && self.basis == other.basis
    }
}

impl GradedSpace {
    pub fn new(cf: Arc<CommutationFactor>, basis: Vec<BasisVector>) -> Result<Self> {
        for (i, b) in basis.iter().enumerate() {
            if !cf.group().contains(&b.degree) {
                return Err(Error::Degree(format!("basis vector {} has degree {} outside the group", b.name, b.degree)));
            }
            if basis[..i].iter().any(|c| c.name == b.name) {
                return Err(Error::Invalid(format!("duplicate basis name {}", b.name)));
            }
        }
        let n = basis.len();
        let mut eps = Vec::with_capacity(n * n);
        for a in &basis {
            for b in &basis {
                eps.push(cf.eval(&a.degree, &b.degree));
            }
        }
        let neg_eps = eps.iter().map(|e| -e).collect();
        let parity = (0..n).map(|i| if eps[i * n + i].is_one() { 1 } else { -1 }).collect();
        Ok(GradedSpace { cf, basis, eps, neg_eps, parity })
    }

    /// Convenience constructor from (name, degree coordinates) pairs.
    pub fn from_degrees(cf: Arc<CommutationFactor>, items: &[(&str, &[i64])]) -> Result<Self> {
        let basis = items
            .iter()
            .map(|(n, d)| Ok(BasisVector { name: n.to_string(), degree: cf.group().elem(d)? }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(cf, basis)
    }

    pub fn cf(&self) -> &Arc<CommutationFactor> {
        &self.cf
    }

    pub fn field(&self) -> FieldDescriptor {
        self.cf.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn degree(&self, i: usize) -> &GroupElem {
        &self.basis[i].degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// ε(eᵢ, eⱼ).
    pub fn eps(&self, i: usize, j: usize) -> &Scalar {
        &self.eps[i * self.dim() + j]
    }

    /// −ε(eᵢ, eⱼ), the adjacent-swap factor.
    pub fn neg_eps(&self, i: usize, j: usize) -> &Scalar {
        &self.neg_eps[i * self.dim() + j]
    }

    pub fn parity(&self, i: usize) -> i8 {
        self.parity[i]
    }

    pub fn is_even(&self, i: usize) -> bool {
        self.parity[i] == 1
    }

    pub fn eps_deg(&self, a: &GroupElem, b: &GroupElem) -> Scalar {
        self.cf.eval(a, b)
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![Scalar::zero(self.field()); self.dim()]
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        v[i] = Scalar::one(self.field());
        v
    }

    pub fn same_grading(&self, other: &GradedSpace) -> Result<()> {
        if Arc::ptr_eq(&self.cf, &other.cf) || self.cf == other.cf {
            Ok(())
        } else {
            Err(Error::Invalid("spaces carry different commutation factors".into()))
        }
    }

    /// Basis of V⊗W: pairs in lexicographic order with summed degrees.
    pub fn tensor(&self, other: &GradedSpace) -> Result<GradedSpace> {
        self.same_grading(other)?;
        let g = self.cf.group();
        let mut basis = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.basis {
            for b in &other.basis {
                basis.push(BasisVector { name: format!("{}⊗{}", a.name, b.name), degree: g.add(&a.degree, &b.degree) });
            }
        }
        GradedSpace::new(self.cf.clone(), basis)
    }

    /// V⊕W; clashing names in W get primes appended.
    pub fn dsum(&self, other: &GradedSpace) -> Result<GradedSpace> {
        self.same_grading(other)?;
        let mut basis = self.basis.clone();
        for b in &other.basis {
            let mut name = b.name.clone();
            while basis.iter().any(|c| c.name == name) {
                name.push('\'');
            }
            basis.push(BasisVector { name, degree: b.degree.clone() });
        }
        GradedSpace::new(self.cf.clone(), basis)
    }

    /// Degree of a homogeneous vector, `None` for zero or inhomogeneous vectors.
    pub fn vector_degree(&self, v: &[Scalar]) -> Option<GroupElem> {
        let mut deg: Option<&GroupElem> = None;
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(self.degree(i)),
                Some(d) if d == self.degree(i) => {}
                Some(_) => return None,
            }
        }
        deg.cloned()
    }
}

/// Linear map with column j the image of source basis vector j.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedLinearMap {
    pub source: GradedSpace,
    pub target: GradedSpace,
    pub matrix: Matrix,
    pub degree: Option<GroupElem>,
}

impl GradedLinearMap {
    pub fn new(source: GradedSpace, target: GradedSpace, matrix: Matrix, degree: Option<GroupElem>) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Shape(format!(
                "matrix is {}x{}, map needs {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let m = GradedLinearMap { source, target, matrix, degree };
        if let Some(d) = &m.degree {
            if let Some((i, j)) = m.degree_violation(d) {
                return Err(Error::Degree(format!("entry ({i},{j}) breaks declared degree {d}")));
            }
        }
        Ok(m)
    }

    pub fn identity(space: &GradedSpace) -> Self {
        let zero = space.cf().group().zero();
        GradedLinearMap {
            source: space.clone(),
            target: space.clone(),
            matrix: Matrix::identity(space.field(), space.dim()),
            degree: Some(zero),
        }
    }

    fn degree_violation(&self, d: &GroupElem) -> Option<(usize, usize)> {
        let g = self.source.cf().group();
        for i in 0..self.matrix.rows() {
            for j in 0..self.matrix.cols() {
                if !self.matrix.get(i, j).is_zero() && *self.target.degree(i) != g.add(self.source.degree(j), d) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// The unique degree of a nonzero homogeneous map.
    pub fn homogeneous_degree(&self) -> Option<GroupElem> {
        matrix_degree(&self.source, &self.target, &self.matrix)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    /// self ∘ other.
    pub fn compose(&self, other: &GradedLinearMap) -> Result<GradedLinearMap> {
        if other.target != self.source {
            return Err(Error::Shape("composition of maps with mismatched spaces".into()));
        }
        let degree = match (&self.degree, &other.degree) {
            (Some(a), Some(b)) => Some(self.source.cf().group().add(a, b)),
            _ => None,
        };
        Ok(GradedLinearMap {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&other.matrix),
            degree,
        })
    }

    pub fn eps_trace(&self) -> Result<Scalar> {
        if self.source != self.target {
            return Err(Error::Shape("ε-trace of a non-endomorphism".into()));
        }
        Ok(eps_trace(&self.source, &self.matrix))
    }
}

/// Tr_ε(f) = Σ parity(eᵢ)·f[i][i].
pub fn eps_trace(space: &GradedSpace, m: &Matrix) -> Scalar {
    let mut acc = Scalar::zero(space.field());
    for i in 0..space.dim() {
        if space.is_even(i) {
            acc += m.get(i, i);
        } else {
            acc -= m.get(i, i);
        }
    }
    acc
}

pub fn matrix_degree(source: &GradedSpace, target: &GradedSpace, m: &Matrix) -> Option<GroupElem> {
    let g = source.cf().group();
    let mut deg = None;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if m.get(i, j).is_zero() {
                continue;
            }
            let d = g.sub(target.degree(i), source.degree(j));
            match &deg {
                None => deg = Some(d),
                Some(e) if *e == d => {}
                Some(_) => return None,
            }
        }
    }
    deg
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormEps {
    pub space: GradedSpace,
    pub gram: Matrix,
}

impl FormEps {
    pub fn new(space: GradedSpace, gram: Matrix) -> Result<Self> {
        if gram.rows() != space.dim() || gram.cols() != space.dim() {
            return Err(Error::Shape(format!("gram must be {0}x{0}", space.dim())));
        }
        if gram.field() != space.field() {
            return Err(Error::FieldMismatch(gram.field(), space.field()));
        }
        Ok(FormEps { space, gram })
    }

    /// New and validated.
    pub fn checked(space: GradedSpace, gram: Matrix) -> Result<Self> {
        let f = Self::new(space, gram)?;
        match f.validate() {
            Verdict::Pass => Ok(f),
            Verdict::Fail(ws) => Err(Error::Invalid(format!("form: {}", ws[0]))),
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn field(&self) -> FieldDescriptor {
        self.space.field()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        self.gram.get(i, j)
    }

    pub fn pair(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let gy = self.gram.apply(y);
        let mut acc = Scalar::zero(self.field());
        for (a, b) in x.iter().zip(&gy) {
            acc.add_mul(a, b);
        }
        acc
    }

    pub fn validate(&self) -> Verdict {
        let v = &self.space;
        let g = v.cf().group();
        let mut ws = Vec::new();
        for i in 0..v.dim() {
            for j in 0..v.dim() {
                let b = self.get(i, j);
                if !b.is_zero() && !g.add(v.degree(i), v.degree(j)).coords().iter().all(|&c| c == 0) {
                    ws.push(Witness::new("form degree 0", &[i, j], b, 0));
                }
                let rhs = v.eps(i, j) * self.get(j, i);
                if *b != rhs {
                    ws.push(Witness::new("ε-symmetry", &[i, j], b, rhs));
                }
            }
        }
        if ws.is_empty() && self.gram.inverse().is_err() {
            ws.push(Witness::new("non-degeneracy", &[], "rank", self.gram.rank()));
        }
        Verdict::from_witnesses(ws)
    }

    fn restrict(&self, idx: &[usize]) -> Result<FormEps> {
        let basis = idx.iter().map(|&i| self.space.basis()[i].clone()).collect();
        let space = GradedSpace::new(self.space.cf().clone(), basis)?;
        let rows = idx.iter().map(|&i| idx.iter().map(|&j| self.get(i, j).clone()).collect()).collect();
        FormEps::new(space, Matrix::from_rows(self.field(), rows)?)
    }

    /// Restrictions to the even and odd parts. The cross block must vanish.
    pub fn split(&self) -> Result<(FormEps, FormEps)> {
        let even: Vec<usize> = (0..self.dim()).filter(|&i| self.space.is_even(i)).collect();
        let odd: Vec<usize> = (0..self.dim()).filter(|&i| !self.space.is_even(i)).collect();
        for &i in &even {
            for &j in &odd {
                if !self.get(i, j).is_zero() || !self.get(j, i).is_zero() {
                    return Err(Error::Invalid(format!("even and odd parts not orthogonal at ({i},{j})")));
                }
            }
        }
        Ok((self.restrict(&even)?, self.restrict(&odd)?))
    }

    /// Columns eʲ with B(eᵢ, eʲ) = δᵢⱼ: the inverse of the Gram matrix.
    pub fn dual_basis(&self) -> Result<Matrix> {
        self.gram.inverse().map_err(|_| Error::Singular("form is degenerate".into()))
    }

    /// (v⊗w, v′⊗w′) = ε(w,v′)(v,v′)(w,w′).
    pub fn tensor(&self, other: &FormEps) -> Result<FormEps> {
        let space = self.space.tensor(&other.space)?;
        let (n, m) = (self.dim(), other.dim());
        let mut gram = Matrix::zeros(self.field(), n * m, n * m);
        for v in 0..n {
            for w in 0..m {
                for v2 in 0..n {
                    let b = self.get(v, v2);
                    if b.is_zero() {
                        continue;
                    }
                    for w2 in 0..m {
                        let c = other.get(w, w2);
                        if c.is_zero() {
                            continue;
                        }
                        let e = self.space.eps_deg(other.space.degree(w), self.space.degree(v2));
                        gram.set(v * m + w, v2 * m + w2, &(&e * b) * c);
                    }
                }
            }
        }
        FormEps::new(space, gram)
    }

    /// B ⟂ C on V⊕W.
    pub fn orthogonal_sum(&self, other: &FormEps) -> Result<FormEps> {
        let space = self.space.dsum(&other.space)?;
        let (n, m) = (self.dim(), other.dim());
        let mut gram = Matrix::zeros(self.field(), n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                gram.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..m {
            for j in 0..m {
                gram.set(n + i, n + j, other.get(i, j).clone());
            }
        }
        FormEps::new(space, gram)
    }

    pub fn scaled(&self, s: &Scalar) -> FormEps {
        FormEps { space: self.space.clone(), gram: self.gram.scale(s) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDescriptor = FieldDescriptor::Rational;

    fn odd_plane() -> FormEps {
        let cf = Arc::new(CommutationFactor::super_sign(Q));
        let v = GradedSpace::from_degrees(cf, &[("p", &[1]), ("q", &[1])]).unwrap();
        FormEps::new(v, Matrix::from_ints(Q, &[&[0, 1], &[-1, 0]])).unwrap()
    }

    #[test]
    fn symplectic_form_validates() {
        assert!(odd_plane().validate().is_pass());
    }

    #[test]
    fn symmetric_gram_on_odd_space_fails() {
        let f = FormEps::new(odd_plane().space, Matrix::from_ints(Q, &[&[0, 1], &[1, 0]])).unwrap();
        let v = f.validate();
        assert!(!v.is_pass());
        assert_eq!(v.witnesses()[0].what, "ε-symmetry");
    }

    #[test]
    fn singular_gram_fails() {
        let cf = Arc::new(CommutationFactor::super_sign(Q));
        let v = GradedSpace::from_degrees(cf, &[("a", &[0]), ("b", &[0])]).unwrap();
        let f = FormEps::new(v, Matrix::from_ints(Q, &[&[1, 0], &[0, 0]])).unwrap();
        assert_eq!(f.validate().witnesses()[0].what, "non-degeneracy");
    }

    #[test]
    fn dual_basis_of_symplectic_plane() {
        // B(p, q) = 1 and B(q, -p) = 1, so e¹ = q and e² = −p.
        let d = odd_plane().dual_basis().unwrap();
        assert_eq!(d, Matrix::from_ints(Q, &[&[0, -1], &[1, 0]]));
    }

    #[test]
    fn identity_trace_is_superdimension() {
        let cf = Arc::new(CommutationFactor::super_sign(Q));
        let v = GradedSpace::from_degrees(cf, &[("a", &[0]), ("b", &[1]), ("c", &[1])]).unwrap();
        let id = GradedLinearMap::identity(&v);
        assert_eq!(id.eps_trace().unwrap(), Scalar::from_int(Q, -1));
    }

    #[test]
    fn hyperbolic_tensor_symplectic_entry() {
        let cf = Arc::new(CommutationFactor::super_sign(Q));
        let v = GradedSpace::from_degrees(cf, &[("u1", &[0]), ("u2", &[0])]).unwrap();
        let h = FormEps::new(v, Matrix::from_ints(Q, &[&[0, 1], &[1, 0]])).unwrap();
        let t = h.tensor(&odd_plane()).unwrap();
        assert!(t.validate().is_pass());
        let i = t.space.index_of("u1⊗p").unwrap();
        let j = t.space.index_of("u2⊗q").unwrap();
        assert_eq!(*t.get(i, j), Scalar::one(Q));
    }

    #[test]
    fn split_of_mixed_space() {
        let cf = Arc::new(CommutationFactor::super_sign(Q));
        let v = GradedSpace::from_degrees(cf, &[("e", &[0]), ("p", &[1]), ("q", &[1])]).unwrap();
        let f = FormEps::checked(v, Matrix::from_ints(Q, &[&[2, 0, 0], &[0, 0, 1], &[0, -1, 0]])).unwrap();
        let (even, odd) = f.split().unwrap();
        assert_eq!(even.gram, Matrix::from_ints(Q, &[&[2]]));
        assert_eq!(odd.gram, Matrix::from_ints(Q, &[&[0, 1], &[-1, 0]]));
    }
}
