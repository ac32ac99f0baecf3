//! Built-in example families: fundamental representations of so_ε, so_ε(V)⊕sl₂ acting on
//! V⊗k², and centralizers of a complex-structure-like map J.

use std::sync::Arc;

use crate::algebra::{sl2_make, so_eps, ColourLieAlgebra, LinearLieAlgebra};
use crate::alt::{canonical_tuples, AltMap, Codomain};
use crate::error::{Error, Result};
use crate::graded::{matrix_degree, FormEps, GradedSpace};
use crate::grading::{AbelianGroup, CommutationFactor, GroupElem};
use crate::matrix::{canonical_basis, Matrix};
use crate::rep::{fundamental_so, mu_can_endo, rep_tensor, OrthRep};
use crate::scalar::{FieldDescriptor, Scalar};

pub fn catalog_fundamental_so(form: &FormEps) -> Result<OrthRep> {
    Ok(fundamental_so(form)?.1)
}

/// so_ε(V) with ¼Tr_ε and so_ε(W) = sl₂ with −½Tr_ε, acting on V⊗W.
pub fn catalog_so_tensor_sl2(form_v: &FormEps, gamma: &GroupElem) -> Result<OrthRep> {
    let cf = form_v.space.cf().clone();
    let so_v = so_eps(form_v)?.with_trace_form(&Scalar::from_ratio(form_v.field(), 1, 4)?)?;
    let rv = OrthRep::fundamental(&so_v, form_v)?;
    let (sl2, omega) = sl2_make(&cf, gamma)?;
    let rw = OrthRep::fundamental(&sl2, &omega)?;
    rep_tensor(&rv, &rw)
}

/// The centralizer of J in so_ε(V,B), its moment map and the solved invariant form.
#[derive(Clone, Debug)]
pub struct CentralizerRep {
    pub m: LinearLieAlgebra,
    pub rep: OrthRep,
    pub j: Matrix,
    pub lambda: Scalar,
    /// μ(v,w) = μ_can(v,w) − (1/λ)μ_can(Jv,Jw) + (1/λ)(Jv,w)J in the coordinates of m.
    pub mu: AltMap,
    /// True when μ only reaches {m,m} and the representation is restricted to it.
    pub derived: bool,
}

/// μ(eₐ,e_b) as an endomorphism of V for the centralizer family.
pub fn centralizer_mu_endo(form: &FormEps, j: &Matrix, lambda_inv: &Scalar, a: usize, b: usize) -> Matrix {
    let mut m = mu_can_endo(form, a, b);
    let (ja, jb) = (j.column(a), j.column(b));
    for (x, cx) in ja.iter().enumerate() {
        if cx.is_zero() {
            continue;
        }
        for (y, cy) in jb.iter().enumerate() {
            if cy.is_zero() {
                continue;
            }
            let c = &(&(cx * cy) * lambda_inv) * &Scalar::from_int(form.field(), -1);
            m = m.add(&mu_can_endo(form, x, y).scale(&c));
        }
    }
    let jv_w = form.pair(&ja, &form.space.unit(b));
    m.add(&j.scale(&(&jv_w * lambda_inv)))
}

pub fn catalog_centralizer_j(form: &FormEps, j: &Matrix, lambda: &Scalar) -> Result<CentralizerRep> {
    let v = &form.space;
    let field = form.field();
    let n = v.dim();
    if lambda.is_zero() {
        return Err(Error::Invalid("λ must be nonzero".into()));
    }
    let zero = v.cf().group().zero();
    if !j.is_zero() && matrix_degree(v, v, j) != Some(zero) {
        return Err(Error::Degree("J must have degree 0".into()));
    }
    if j.mul(j) != Matrix::identity(field, n).scale(lambda) {
        return Err(Error::Invalid("J² ≠ λ·Id".into()));
    }
    let (n0, n1) = (0..n).fold((0i64, 0i64), |(e, o), i| if v.is_even(i) { (e + 1, o) } else { (e, o + 1) });
    let sdim = Scalar::from_int(field, n0 - n1);
    if sdim.is_zero() {
        return Err(Error::Invalid("dim V₀ ≡ dim V₁ in the characteristic".into()));
    }
    let so = so_eps(form)?;
    if so.coords(j).is_none() {
        return Err(Error::Invalid("J is not in so_ε(V)".into()));
    }
    // centralizer: kernel of x ↦ [Σxᵢmᵢ, J] in so coordinates
    let d = so.dim();
    let mut rows = vec![Vec::with_capacity(d); n * n];
    for mi in &so.matrices {
        let c = mi.mul(j).sub(&j.mul(mi));
        for (k, row) in rows.iter_mut().enumerate() {
            row.push(c.as_slice()[k].clone());
        }
    }
    let kernel = if d == 0 { Vec::new() } else { Matrix::from_rows(field, rows)?.kernel() };
    let flats: Vec<Vec<Scalar>> = kernel.iter().map(|x| so.matrix_of(x).as_slice().to_vec()).collect();
    let basis = canonical_basis(field, flats);
    let named = basis
        .into_iter()
        .map(|x| {
            let l = x.iter().position(|c| !c.is_zero()).expect("nonzero basis vector");
            let rows = x.chunks(n).map(<[Scalar]>::to_vec).collect();
            Ok((format!("Y[{},{}]", v.name(l / n), v.name(l % n)), Matrix::from_rows(field, rows)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let m0 = LinearLieAlgebra::from_matrices(v.clone(), named, &Scalar::one(field))?;
    let lambda_inv = lambda.inv()?;
    let endos: Vec<(Vec<usize>, Matrix)> =
        canonical_tuples(v, 2).into_iter().map(|t| {
            let e = centralizer_mu_endo(form, j, &lambda_inv, t[0], t[1]);
            (t, e)
        }).collect();
    let (m0, mu, bm, derived) = match centralizer_form(&m0, form, &endos) {
        Ok((mu, bm)) => (m0, mu, bm, false),
        Err(_) => {
            // μ lands in {m,m}; look for the form there instead
            let flats = endos.iter().map(|(_, e)| e.as_slice().to_vec()).collect();
            let named = canonical_basis(field, flats)
                .into_iter()
                .map(|x| {
                    let l = x.iter().position(|c| !c.is_zero()).expect("nonzero basis vector");
                    let rows = x.chunks(n).map(<[Scalar]>::to_vec).collect();
                    Ok((format!("Y[{},{}]", v.name(l / n), v.name(l % n)), Matrix::from_rows(field, rows)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let d0 = LinearLieAlgebra::from_matrices(v.clone(), named, &Scalar::one(field))?;
            let (mu, bm) = centralizer_form(&d0, form, &endos)?;
            (d0, mu, bm, true)
        }
    };
    let mut m = m0.clone();
    m.algebra = m0.algebra.with_form(bm)?;
    let rep = OrthRep::fundamental(&m, form)?;
    Ok(CentralizerRep { m, rep, j: j.clone(), lambda: lambda.clone(), mu, derived })
}

fn centralizer_form(m: &LinearLieAlgebra, form: &FormEps, endos: &[(Vec<usize>, Matrix)]) -> Result<(AltMap, FormEps)> {
    let gs = m.algebra.space().clone();
    let mut entries = Vec::new();
    for (t, e) in endos {
        let c = m.coords(e).ok_or_else(|| Error::Invalid(format!("μ{t:?} leaves the centralizer")))?;
        entries.push((t.clone(), c));
    }
    let mu = AltMap::from_entries(form.space.clone(), Codomain::Space(gs), 2, entries)?;
    let bm = solve_invariant_form(m, form, &mu)?;
    Ok((mu, bm))
}

/// Solves B(x, μ(v,w)) = (x(v),w) for the Gram matrix of B on the basis of `m`.
fn solve_invariant_form(m: &LinearLieAlgebra, form: &FormEps, mu: &AltMap) -> Result<FormEps> {
    use crate::alt::AltSource;
    let d = m.dim();
    let n = form.dim();
    let field = form.field();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for x in 0..d {
        for a in 0..n {
            for b in 0..n {
                let mv = mu.eval(&[a, b]);
                let mut row = vec![Scalar::zero(field); d * d];
                for (k, c) in mv.into_iter().enumerate() {
                    row[x * d + k] = c;
                }
                rows.push(row);
                rhs.push(form.pair(&m.matrices[x].column(a), &form.space.unit(b)));
            }
        }
    }
    if d == 0 {
        return FormEps::new(m.algebra.space().clone(), Matrix::zeros(field, 0, 0));
    }
    let sys = Matrix::from_rows(field, rows)?;
    let sol = sys.solve(&rhs).ok_or_else(|| Error::Invalid("no invariant form reproduces μ".into()))?;
    let gram = Matrix::from_rows(field, sol.chunks(d).map(<[Scalar]>::to_vec).collect())?;
    let bm = FormEps::new(m.algebra.space().clone(), gram)?;
    if let crate::verdict::Verdict::Fail(ws) = bm.validate() {
        return Err(Error::Invalid(format!("solved form on m is not admissible: {}", ws[0])));
    }
    Ok(bm)
}

/// ψ for the centralizer family:
/// (3/λ)((Jv₁,v₂)Jv₃ + ε(v₁+v₂,v₃)(Jv₃,v₁)Jv₂ + (Jv₂,v₃)Jv₁).
pub fn centralizer_psi_closed(c: &CentralizerRep, t: &[usize]) -> Vec<Scalar> {
    let form = &c.rep.form;
    let s = &form.space;
    let (a, b, d) = (t[0], t[1], t[2]);
    let k = &Scalar::from_int(form.field(), 3) * &c.lambda.inv().expect("λ ≠ 0");
    let ja = c.j.column(a);
    let jb = c.j.column(b);
    let jd = c.j.column(d);
    let c1 = form.pair(&ja, &s.unit(b));
    let c2 = &(s.eps(a, d) * s.eps(b, d)) * &form.pair(&jd, &s.unit(a));
    let c3 = form.pair(&jb, &s.unit(d));
    (0..s.dim())
        .map(|i| {
            let mut x = &c1 * &jd[i];
            x.add_mul(&c2, &jb[i]);
            x.add_mul(&c3, &ja[i]);
            &x * &k
        })
        .collect()
}

/// Commutation factors used by the presets.
pub fn super_cf(field: FieldDescriptor) -> Arc<CommutationFactor> {
    Arc::new(CommutationFactor::super_sign(field))
}

pub fn trivial_cf(field: FieldDescriptor) -> Arc<CommutationFactor> {
    Arc::new(CommutationFactor::trivial(field))
}

/// Γ = ℤ×ℤ₂ with ε((m,s),(m′,s′)) = (−1)^{mm′+ss′}.
pub fn z_by_z2_cf(field: FieldDescriptor) -> Arc<CommutationFactor> {
    let g = AbelianGroup::new(1, vec![2]).expect("valid group");
    let m1 = Scalar::from_int(field, -1);
    let one = Scalar::one(field);
    let e = vec![vec![m1.clone(), one.clone()], vec![one, m1]];
    Arc::new(CommutationFactor::checked(g, field, e).expect("valid commutation factor"))
}

fn space(cf: &Arc<CommutationFactor>, items: &[(&str, &[i64])]) -> GradedSpace {
    GradedSpace::from_degrees(cf.clone(), items).expect("preset space")
}

/// Odd plane ⟨p,q⟩ with ω(p,q) = 1.
pub fn odd_plane(field: FieldDescriptor) -> FormEps {
    let cf = super_cf(field);
    let gamma = cf.group().elem(&[1]).expect("ℤ₂ element");
    crate::algebra::sl2_module(&cf, &gamma).expect("odd plane")
}

/// Even k³ with the identity form.
pub fn euclidean3(field: FieldDescriptor) -> FormEps {
    let cf = super_cf(field);
    let v = space(&cf, &[("e1", &[0]), ("e2", &[0]), ("e3", &[0])]);
    FormEps::checked(v, Matrix::identity(field, 3)).expect("identity form")
}

/// Even hyperbolic plane (u₁,u₂) = 1.
pub fn hyperbolic_plane(field: FieldDescriptor) -> FormEps {
    let cf = super_cf(field);
    let v = space(&cf, &[("u1", &[0]), ("u2", &[0])]);
    FormEps::checked(v, Matrix::from_ints(field, &[&[0, 1], &[1, 0]])).expect("hyperbolic form")
}

/// k^{1|2}: an even line with (e,e) = 1 and an odd symplectic plane.
pub fn super_1_2(field: FieldDescriptor) -> FormEps {
    let cf = super_cf(field);
    let v = space(&cf, &[("e", &[0]), ("p", &[1]), ("q", &[1])]);
    FormEps::checked(v, Matrix::from_ints(field, &[&[1, 0, 0], &[0, 0, 1], &[0, -1, 0]])).expect("super form")
}

/// Even k⁴ = L ⊕ L* with (uᵢ,wᵢ) = 1, and J = +1 on L, −1 on L*.
pub fn hyperbolic4_with_j(field: FieldDescriptor) -> (FormEps, Matrix) {
    let cf = super_cf(field);
    let v = space(&cf, &[("u1", &[0]), ("u2", &[0]), ("w1", &[0]), ("w2", &[0])]);
    let gram = Matrix::from_ints(field, &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
    let j = Matrix::from_ints(field, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, -1, 0], &[0, 0, 0, -1]]);
    (FormEps::checked(v, gram).expect("hyperbolic form"), j)
}

/// The hyperbolic plane with J = diag(1,−1).
pub fn hyperbolic_plane_with_j(field: FieldDescriptor) -> (FormEps, Matrix) {
    (hyperbolic_plane(field), Matrix::from_ints(field, &[&[1, 0], &[0, -1]]))
}

/// The representation of g = {0} on a space with a form.
pub fn zero_algebra_rep(form: &FormEps) -> Result<OrthRep> {
    let g = GradedSpace::new(form.space.cf().clone(), Vec::new())?;
    let bg = FormEps::new(g.clone(), Matrix::zeros(form.field(), 0, 0))?;
    OrthRep::new(ColourLieAlgebra::abelian(g, Some(bg))?, form.clone(), Vec::new())
}

/// φ(eₐ,e_b) = Σ_c T(a,b,c)e_c for a totally antisymmetric T on an even space with the identity form.
fn phi_from_three_form(form: &FormEps, terms: &[[usize; 3]]) -> Result<AltMap> {
    let v = &form.space;
    let field = form.field();
    let mut table = vec![v.zero_vec(); v.dim() * v.dim()];
    for t in terms {
        for (p, sign) in [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([1, 0, 2], -1), ([0, 2, 1], -1), ([2, 1, 0], -1)] {
            let (a, b, c) = (t[p[0]], t[p[1]], t[p[2]]);
            table[a * v.dim() + b][c] += &Scalar::from_int(field, sign);
        }
    }
    let entries = canonical_tuples(v, 2).into_iter().map(|t| {
        let val = table[t[0] * v.dim() + t[1]].clone();
        (t, val)
    });
    AltMap::from_entries(v.clone(), Codomain::Space(v.clone()), 2, entries.collect::<Vec<_>>())
}

/// g = {0} on even k⁵ with the identity form and φ from T = e¹²³ + e¹⁴⁵; Jacobi fails on (e2,e3,e4).
pub fn three_form_fixture(field: FieldDescriptor) -> Result<(OrthRep, AltMap)> {
    let cf = super_cf(field);
    let names = ["e1", "e2", "e3", "e4", "e5"];
    let items: Vec<(&str, &[i64])> = names.iter().map(|n| (*n, &[0i64][..])).collect();
    let form = FormEps::checked(space(&cf, &items), Matrix::identity(field, 5))?;
    let phi = phi_from_three_form(&form, &[[0, 1, 2], [0, 3, 4]])?;
    Ok((zero_algebra_rep(&form)?, phi))
}

/// so(3) on k³ with φ = c·(cross product).
pub fn so3_cross_fixture(field: FieldDescriptor, c: i64) -> Result<(OrthRep, AltMap)> {
    let form = euclidean3(field);
    let rep = catalog_fundamental_so(&form)?;
    let phi = phi_from_three_form(&form, &[[0, 1, 2]])?.scale(&Scalar::from_int(field, c));
    Ok((rep, phi))
}

/// g = {0} on sl(2) = ⟨E,H,F⟩ with its Killing form, φ = the bracket.
pub fn sl2_killing_fixture(field: FieldDescriptor) -> Result<(OrthRep, AltMap)> {
    let cf = super_cf(field);
    let v = space(&cf, &[("E", &[0]), ("H", &[0]), ("F", &[0])]);
    let form = FormEps::checked(v.clone(), Matrix::from_ints(field, &[&[0, 0, 4], &[0, 8, 0], &[4, 0, 0]]))?;
    let int = |xs: [i64; 3]| xs.iter().map(|&x| Scalar::from_int(field, x)).collect::<Vec<_>>();
    // canonical pairs (E,H), (E,F), (H,F)
    let phi = AltMap::from_entries(
        v.clone(),
        Codomain::Space(v),
        2,
        vec![(vec![0, 1], int([-2, 0, 0])), (vec![0, 2], int([0, 1, 0])), (vec![1, 2], int([0, 0, -2]))],
    )?;
    Ok((zero_algebra_rep(&form)?, phi))
}

/// A one-dimensional abelian h acting on the odd plane by diag(1,−1), B(h,h) = 1. Not special.
pub fn abelian_odd_plane(field: FieldDescriptor) -> Result<OrthRep> {
    let form = odd_plane(field);
    let cf = form.space.cf().clone();
    let h = space(&cf, &[("h", &[0])]);
    let bh = FormEps::checked(h.clone(), Matrix::identity(field, 1))?;
    let algebra = ColourLieAlgebra::abelian(h, Some(bh))?;
    OrthRep::new(algebra, form, vec![Matrix::from_ints(field, &[&[1, 0], &[0, -1]])])
}

/// Named presets for the command line.
pub const PRESETS: &[(&str, &[&str])] = &[
    ("fundamental_so", &["odd-plane", "euclidean3", "super12", "hyperbolic"]),
    ("so_tensor_sl2", &["hyperbolic", "euclidean3"]),
    ("centralizer_j", &["hyperbolic2", "hyperbolic4"]),
];

pub fn preset(name: &str, variant: Option<&str>, field: FieldDescriptor) -> Result<OrthRep> {
    let unknown = || Error::Invalid(format!("unknown catalog entry {name} {}", variant.unwrap_or("")));
    let gamma = || super_cf(field).group().elem(&[1]).expect("ℤ₂ element");
    match (name, variant) {
        ("fundamental_so", None | Some("odd-plane")) => catalog_fundamental_so(&odd_plane(field)),
        ("fundamental_so", Some("euclidean3")) => catalog_fundamental_so(&euclidean3(field)),
        ("fundamental_so", Some("super12")) => catalog_fundamental_so(&super_1_2(field)),
        ("fundamental_so", Some("hyperbolic")) => catalog_fundamental_so(&hyperbolic_plane(field)),
        ("so_tensor_sl2", None | Some("hyperbolic")) => {
            let f = hyperbolic_plane(field);
            catalog_so_tensor_sl2(&rebase(&f, &super_cf(field))?, &gamma())
        }
        ("so_tensor_sl2", Some("euclidean3")) => catalog_so_tensor_sl2(&euclidean3(field), &gamma()),
        ("centralizer_j", None | Some("hyperbolic2")) => {
            let (f, j) = hyperbolic_plane_with_j(field);
            Ok(catalog_centralizer_j(&f, &j, &Scalar::one(field))?.rep)
        }
        ("centralizer_j", Some("hyperbolic4")) => {
            let (f, j) = hyperbolic4_with_j(field);
            Ok(catalog_centralizer_j(&f, &j, &Scalar::one(field))?.rep)
        }
        _ => Err(unknown()),
    }
}

fn rebase(form: &FormEps, cf: &Arc<CommutationFactor>) -> Result<FormEps> {
    let space = GradedSpace::new(cf.clone(), form.space.basis().to_vec())?;
    FormEps::new(space, form.gram.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alt::AltSource;
    use crate::curvature::is_special;

    const Q: FieldDescriptor = FieldDescriptor::Rational;

    #[test]
    fn presets_validate_and_are_special() {
        for (name, variants) in PRESETS {
            for v in *variants {
                let r = preset(name, Some(v), Q).unwrap();
                assert!(r.validate().is_pass(), "{name} {v}: {:?}", r.validate());
                let mu = r.moment_map().unwrap();
                assert!(is_special(&r, &mu).unwrap().is_special(), "{name} {v}");
            }
        }
    }

    #[test]
    fn centralizer_of_plane_is_one_dimensional() {
        let (f, j) = hyperbolic_plane_with_j(Q);
        let c = catalog_centralizer_j(&f, &j, &Scalar::one(Q)).unwrap();
        assert_eq!(c.m.dim(), 1);
        assert_eq!(c.rep.moment_map().unwrap(), c.mu);
        let (f4, j4) = hyperbolic4_with_j(Q);
        let c4 = catalog_centralizer_j(&f4, &j4, &Scalar::one(Q)).unwrap();
        // dim W₀ − 2 = dim W₁ here, so μ reaches only {m,m} = sl(W)
        assert!(c4.derived);
        assert_eq!(c4.m.dim(), 3);
        assert!(c4.m.algebra.quad_validate().unwrap().is_pass());
        assert_eq!(c4.rep.moment_map().unwrap().eval(&[0, 2]), c4.mu.eval(&[0, 2]));
    }

    #[test]
    fn three_form_breaks_jacobi_on_e2_e3_e4() {
        let (r, phi) = three_form_fixture(Q).unwrap();
        assert!(crate::extension::phi_validate(&r, &phi).is_pass());
        let (g, tv) = crate::extension::extend(&r, &phi).unwrap();
        assert!(!tv.jacobi.is_pass() && tv.agree());
        assert!(g.jacobi_witnesses(usize::MAX).iter().any(|w| w.at == [1, 2, 3]));
    }

    #[test]
    fn sl2_killing_bracket_extends() {
        let (r, phi) = sl2_killing_fixture(Q).unwrap();
        let (_, tv) = crate::extension::extend(&r, &phi).unwrap();
        assert!(tv.jacobi.is_pass() && tv.agree());
    }

    #[test]
    fn abelian_odd_plane_is_not_special() {
        let r = abelian_odd_plane(Q).unwrap();
        assert!(r.validate().is_pass());
        let mu = r.moment_map().unwrap();
        assert!(!is_special(&r, &mu).unwrap().is_special());
    }
}
