//! The covariants μ, ψ, Q of an ε-orthogonal representation and the Mathews identities.

use std::fmt;

use itertools::Itertools;

use crate::alt::{
    canonical_count, canonical_tuples, compare_on, sample_tuples, AltMap, AltSource, Bilinear, Codomain, Composer, Scaled,
    Wedge,
};
use crate::curvature::{curvature_from, is_special};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::perm::{p_sign_basis, Permutation};
use crate::rep::{mu_can_endo, OrthRep};
use crate::scalar::{axpy, Scalar};
use crate::verdict::{Verdict, Witness};

pub const DEFAULT_BUDGET: usize = 500;
pub const DEFAULT_SAMPLE: usize = 25;

#[derive(Clone, Debug)]
pub struct CovariantSet {
    pub mu: AltMap,
    pub psi: AltMap,
    pub q: AltMap,
}

fn operators(rep: &OrthRep, mu: &AltMap) -> Vec<Matrix> {
    let n = rep.dim();
    (0..n * n).map(|k| rep.moment_operator(mu, k / n, k % n)).collect()
}

fn v_codomain(rep: &OrthRep) -> Codomain {
    Codomain::Space(rep.space().clone())
}

fn k_codomain(rep: &OrthRep) -> Codomain {
    Codomain::Scalars(rep.space().field())
}

/// ψ(v₁,v₂,v₃) = μ(v₁,v₂)(v₃) + ε(v₁+v₂,v₃)μ(v₃,v₁)(v₂) + ε(v₁,v₂+v₃)μ(v₂,v₃)(v₁).
pub fn psi_three_term(rep: &OrthRep, mu: &AltMap) -> AltMap {
    let n = rep.dim();
    let s = rep.space();
    let ops = operators(rep, mu);
    AltMap::from_fn(s.clone(), v_codomain(rep), 3, |t| {
        let (a, b, c) = (t[0], t[1], t[2]);
        let mut acc = ops[a * n + b].column(c);
        axpy(&mut acc, &(s.eps(a, c) * s.eps(b, c)), &ops[c * n + a].column(b));
        axpy(&mut acc, &(s.eps(a, b) * s.eps(a, c)), &ops[b * n + c].column(a));
        acc
    })
}

/// ψ = ½Σ_{σ∈S₃} p(σ;v)μ(v_σ1,v_σ2)(v_σ3).
pub fn psi_half_sum(rep: &OrthRep, mu: &AltMap) -> Result<AltMap> {
    let n = rep.dim();
    let s = rep.space();
    let half = Scalar::from_ratio(s.field(), 1, 2)?;
    let ops = operators(rep, mu);
    let perms = all_perms(3);
    Ok(AltMap::from_fn(s.clone(), v_codomain(rep), 3, |t| {
        let mut acc = s.zero_vec();
        for p in &perms {
            let u = p.permute(t);
            let c = &p_sign_basis(p, t, s) * &half;
            axpy(&mut acc, &c, &ops[u[0] * n + u[1]].column(u[2]));
        }
        acc
    }))
}

/// 3(μ(v₁,v₂)(v₃) − μ_can(v₁,v₂)(v₃)), the special-case form of ψ.
pub fn psi_special(rep: &OrthRep, mu: &AltMap) -> AltMap {
    let n = rep.dim();
    let s = rep.space();
    let three = Scalar::from_int(s.field(), 3);
    let ops = operators(rep, mu);
    AltMap::from_fn(s.clone(), v_codomain(rep), 3, |t| {
        let x = ops[t[0] * n + t[1]].column(t[2]);
        let y = mu_can_endo(&rep.form, t[0], t[1]).column(t[2]);
        x.iter().zip(&y).map(|(a, b)| &(a - b) * &three).collect()
    })
}

/// Q from ψ by the four-term alternating sum.
pub fn q_definition(rep: &OrthRep, psi: &AltMap) -> AltMap {
    let s = rep.space();
    let form = &rep.form;
    AltMap::from_fn(s.clone(), k_codomain(rep), 4, |t| {
        let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
        let pair = |x: usize, args: [usize; 3]| form.pair(&s.unit(x), &psi.eval(&args));
        let e2 = &(&(s.eps(a, d) * s.eps(b, d)) * s.eps(c, d)) * &pair(d, [a, b, c]);
        let e3 = &(&(&(s.eps(a, c) * s.eps(a, d)) * s.eps(b, c)) * s.eps(b, d)) * &pair(c, [d, a, b]);
        let e4 = &(&(s.eps(a, b) * s.eps(a, c)) * s.eps(a, d)) * &pair(b, [c, d, a]);
        let x = &(&pair(a, [b, c, d]) - &e2) + &(&e3 - &e4);
        vec![x]
    })
}

/// Q = ½Σ_{σ∈S₄} p(σ;v)(v_σ1, μ(v_σ2,v_σ3)(v_σ4)).
pub fn q_half_sum(rep: &OrthRep, mu: &AltMap) -> Result<AltMap> {
    let n = rep.dim();
    let s = rep.space();
    let half = Scalar::from_ratio(s.field(), 1, 2)?;
    let ops = operators(rep, mu);
    let perms = all_perms(4);
    Ok(AltMap::from_fn(s.clone(), k_codomain(rep), 4, |t| {
        let mut acc = Scalar::zero(s.field());
        for p in &perms {
            let u = p.permute(t);
            let x = rep.form.pair(&s.unit(u[0]), &ops[u[1] * n + u[2]].column(u[3]));
            if !x.is_zero() {
                acc.add_mul(&(&p_sign_basis(p, t, s) * &half), &x);
            }
        }
        vec![acc]
    }))
}

/// 4(v₁, ψ(v₂,v₃,v₄)).
pub fn q_from_psi(rep: &OrthRep, psi: &AltMap) -> AltMap {
    let s = rep.space();
    let four = Scalar::from_int(s.field(), 4);
    AltMap::from_fn(s.clone(), k_codomain(rep), 4, |t| {
        vec![&four * &rep.form.pair(&s.unit(t[0]), &psi.eval(&t[1..]))]
    })
}

/// −2N_{B_g}(μ).
pub fn q_from_norm(rep: &OrthRep, mu: &AltMap) -> Result<AltMap> {
    let bg = Bilinear::from_form(rep.algebra_form());
    let w = Wedge::new(mu, mu, &bg, k_codomain(rep))?;
    let m2 = Scalar::from_int(rep.space().field(), -2);
    Ok(crate::alt::materialize(&Scaled { inner: &w, factor: m2 }))
}

/// −4β(R_μ).
pub fn q_from_bianchi(rep: &OrthRep, mu: &AltMap) -> Result<AltMap> {
    let r = curvature_from(rep, mu, None)?.bianchi();
    Ok(r.to_altmap().scale(&Scalar::from_int(rep.space().field(), -4)))
}

fn all_perms(n: usize) -> Vec<Permutation> {
    (0..n)
        .permutations(n)
        .map(|p| Permutation::from_images(p).expect("a permutation"))
        .collect()
}

/// Every available formula for ψ and Q, compared with the definitions on all canonical tuples.
/// The special-case formulas are included only when `special` holds.
pub fn redundancy(rep: &OrthRep, mu: &AltMap, special: bool) -> Result<Vec<(&'static str, Verdict)>> {
    let s = rep.space();
    let t3 = canonical_tuples(s, 3);
    let t4 = canonical_tuples(s, 4);
    let psi = psi_three_term(rep, mu);
    let q = q_definition(rep, &psi);
    let mut out = vec![("ψ half sum", compare_on(&psi, &psi_half_sum(rep, mu)?, &t3))];
    out.push(("Q half sum", compare_on(&q, &q_half_sum(rep, mu)?, &t4)));
    if special {
        out.push(("ψ = 3(μ − μ_can)", compare_on(&psi, &psi_special(rep, mu), &t3)));
        out.push(("Q = 4(v₁, ψ)", compare_on(&q, &q_from_psi(rep, &psi), &t4)));
        out.push(("Q = −2N(μ)", compare_on(&q, &q_from_norm(rep, mu)?, &t4)));
        let beta = match q_from_bianchi(rep, mu) {
            Ok(b) => compare_on(&q, &b, &t4),
            Err(Error::Invalid(m)) => Verdict::fail(Witness::new("R_μ", &[], m, "a curvature tensor")),
            Err(e) => return Err(e),
        };
        out.push(("Q = −4β(R_μ)", beta));
    }
    Ok(out)
}

fn expect_all(checks: &[(&str, Verdict)]) -> Result<()> {
    for (name, v) in checks {
        if let Verdict::Fail(ws) = v {
            return Err(Error::Disagreement(format!("{name}: {}", ws[0])));
        }
    }
    Ok(())
}

/// ψ, checked against its redundant formulas.
pub fn covariant_psi(rep: &OrthRep) -> Result<AltMap> {
    Ok(covariants(rep)?.psi)
}

/// Q, checked against its redundant formulas.
pub fn covariant_q(rep: &OrthRep) -> Result<AltMap> {
    Ok(covariants(rep)?.q)
}

pub fn covariants(rep: &OrthRep) -> Result<CovariantSet> {
    let mu = rep.moment_map()?;
    let special = is_special(rep, &mu)?.is_special();
    expect_all(&redundancy(rep, &mu, special)?)?;
    let psi = psi_three_term(rep, &mu);
    let q = q_definition(rep, &psi);
    Ok(CovariantSet { mu, psi, q })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    A,
    B,
    C,
    D,
}

impl Identity {
    pub const ALL: [Identity; 4] = [Identity::A, Identity::B, Identity::C, Identity::D];

    pub fn arity(self) -> usize {
        match self {
            Identity::A => 5,
            Identity::B => 6,
            Identity::C => 9,
            Identity::D => 12,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(Identity::A),
            "b" => Ok(Identity::B),
            "c" => Ok(Identity::C),
            "d" => Ok(Identity::D),
            _ => Err(Error::Invalid(format!("unknown identity {s:?}"))),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Identity::A => "a",
            Identity::B => "b",
            Identity::C => "c",
            Identity::D => "d",
        };
        f.write_str(c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Full { budget: usize },
    Sampled { n: usize, seed: u64 },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Full { .. } => f.write_str("full"),
            Mode::Sampled { n, .. } => write!(f, "sampled:{n}"),
        }
    }
}

/// Checks one Mathews identity for a special representation.
pub fn mathews_verify(rep: &OrthRep, identity: Identity, mode: Mode) -> Result<Verdict> {
    let mu = rep.moment_map()?;
    if !is_special(rep, &mu)?.is_special() {
        return Err(Error::Invalid("the Mathews identities need a special representation".into()));
    }
    let psi = psi_three_term(rep, &mu);
    let q = q_definition(rep, &psi);
    mathews_check(rep, &CovariantSet { mu, psi, q }, identity, mode)
}

/// Compares both sides of an identity for the given covariants, without any precondition.
pub fn mathews_check(rep: &OrthRep, cov: &CovariantSet, identity: Identity, mode: Mode) -> Result<Verdict> {
    let s = rep.space();
    let field = s.field();
    let arity = identity.arity();
    let tuples = match mode {
        Mode::Full { budget } => {
            let needed = canonical_count(s, arity);
            if needed > budget {
                return Err(Error::Budget { needed, budget });
            }
            canonical_tuples(s, arity)
        }
        Mode::Sampled { n, seed } => sample_tuples(s, arity, n, seed),
    };
    let (mu, psi, q) = (&cov.mu, &cov.psi, &cov.q);
    let id = AltMap::identity(s);
    let n = rep.dim();
    let g = mu.codomain().clone();
    let rho = rep.pairing();
    let times_v = Bilinear::scalar_left(field, n);
    let times_g = Bilinear::scalar_left(field, g.dim());
    let prod = Bilinear::scalar_product(field);
    let k = k_codomain(rep);
    let v = v_codomain(rep);
    let verdict = match identity {
        Identity::A => {
            let lhs = Wedge::new(mu, psi, &rho, v.clone())?;
            let qi = Wedge::new(q, &id, &times_v, v)?;
            let rhs = Scaled { inner: &qi, factor: Scalar::from_ratio(field, -3, 2)? };
            compare_on(&lhs, &rhs, &tuples)
        }
        Identity::B => {
            let lhs = Composer::new(mu, psi)?;
            let qm = Wedge::new(q, mu, &times_g, g)?;
            let rhs = Scaled { inner: &qm, factor: Scalar::from_int(field, 3) };
            compare_on(&lhs, &rhs, &tuples)
        }
        Identity::C => {
            let lhs = Composer::new(psi, psi)?;
            let qq = Wedge::new(q, q, &prod, k)?;
            let qqi = Wedge::new(&qq, &id, &times_v, v)?;
            let rhs = Scaled { inner: &qqi, factor: Scalar::from_ratio(field, -27, 2)? };
            compare_on(&lhs, &rhs, &tuples)
        }
        Identity::D => {
            let lhs = Composer::new(q, psi)?;
            let qq = Wedge::new(q, q, &prod, k.clone())?;
            let qqq = Wedge::new(&qq, q, &prod, k)?;
            let rhs = Scaled { inner: &qqq, factor: Scalar::from_int(field, -54) };
            compare_on(&lhs, &rhs, &tuples)
        }
    };
    Ok(verdict)
}

/// Pointwise full-symmetrization oracles, used to cross-check the shuffle-based products.
pub mod oracle {
    use super::*;

    fn factorial(n: usize) -> i64 {
        (1..=n as i64).product()
    }

    /// (1/(i!j!)) Σ_{σ∈S_{i+j}} p(σ;v) φ(f(v_σ1..v_σi), g(v_σ(i+1)..)).
    pub fn wedge(f: &dyn AltSource, g: &dyn AltSource, phi: &Bilinear, t: &[usize]) -> Vec<Scalar> {
        let (i, j) = (f.arity(), g.arity());
        let s = f.domain();
        let mut acc = vec![Scalar::zero(s.field()); phi.out_dim()];
        for p in all_perms(i + j) {
            let u = p.permute(t);
            let x = phi.apply(&f.eval(&u[..i]), &g.eval(&u[i..]));
            axpy(&mut acc, &p_sign_basis(&p, t, s), &x);
        }
        let c = Scalar::from_ratio(s.field(), 1, factorial(i) * factorial(j)).expect("invertible factorial");
        acc.iter().map(|x| x * &c).collect()
    }

    /// (1/(j!)^i) Σ_{σ∈S_{ij}} p(σ;v) f(g(block₁), …, g(block_i)).
    pub fn compose(f: &dyn AltSource, g: &dyn AltSource, t: &[usize]) -> Vec<Scalar> {
        let (i, j) = (f.arity(), g.arity());
        let s = g.domain();
        let mut acc = f.codomain().zero();
        for p in all_perms(i * j) {
            let u = p.permute(t);
            let args: Vec<Vec<Scalar>> = u.chunks(j).map(|b| g.eval(b)).collect();
            axpy(&mut acc, &p_sign_basis(&p, t, s), &f.eval_vectors(&args));
        }
        let c = Scalar::from_ratio(s.field(), 1, factorial(j).pow(i as u32)).expect("invertible factorial");
        acc.iter().map(|x| x * &c).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_centralizer_j, centralizer_psi_closed, hyperbolic_plane_with_j, preset};
    use crate::scalar::FieldDescriptor;

    const Q: FieldDescriptor = FieldDescriptor::Rational;

    fn tensor() -> OrthRep {
        preset("so_tensor_sl2", Some("hyperbolic"), Q).unwrap()
    }

    #[test]
    fn fundamental_covariants_vanish() {
        for v in ["odd-plane", "euclidean3", "super12"] {
            let c = covariants(&preset("fundamental_so", Some(v), Q).unwrap()).unwrap();
            assert!(c.psi.is_zero() && c.q.is_zero(), "{v}");
        }
    }

    #[test]
    fn hyperbolic_tensor_value() {
        let c = covariants(&tensor()).unwrap();
        // basis: u1⊗p, u1⊗q, u2⊗p, u2⊗q
        assert_eq!(c.q.eval(&[0, 2, 1, 3]), vec![Scalar::from_int(Q, 12)]);
        assert!(c.q.eval(&[0, 0, 2, 2])[0].is_zero());
        assert!(c.q.eval(&[0, 0, 2, 3])[0].is_zero());
    }

    #[test]
    fn centralizer_psi_matches_closed_form() {
        let (f, j) = hyperbolic_plane_with_j(Q);
        let c = catalog_centralizer_j(&f, &j, &Scalar::one(Q)).unwrap();
        let psi = covariant_psi(&c.rep).unwrap();
        for t in canonical_tuples(c.rep.space(), 3) {
            assert_eq!(psi.eval(&t), centralizer_psi_closed(&c, &t), "{t:?}");
        }
    }

    #[test]
    fn psi_and_q_alternate() {
        let c = covariants(&tensor()).unwrap();
        let s = c.psi.domain().clone();
        assert!(crate::alt::check_alternating(&s, 3, &|t: &[usize]| c.psi.eval(t), None).is_pass());
        assert!(crate::alt::check_alternating(&s, 4, &|t: &[usize]| c.q.eval(t), None).is_pass());
    }

    #[test]
    fn mathews_low_arity_full() {
        let r = tensor();
        for id in [Identity::A, Identity::B] {
            assert!(mathews_verify(&r, id, Mode::Full { budget: DEFAULT_BUDGET }).unwrap().is_pass(), "{id}");
        }
        assert!(mathews_verify(&r, Identity::C, Mode::Sampled { n: 4, seed: 7 }).unwrap().is_pass());
    }

    #[test]
    fn budget_is_enforced() {
        let e = mathews_verify(&tensor(), Identity::D, Mode::Full { budget: 100 }).unwrap_err();
        assert!(matches!(e, Error::Budget { needed: 455, budget: 100 }));
    }

    #[test]
    fn products_match_full_symmetrization() {
        let r = tensor();
        let c = covariants(&r).unwrap();
        let s = r.space();
        let rho = r.pairing();
        let w = Wedge::new(&c.mu, &c.psi, &rho, Codomain::Space(s.clone())).unwrap();
        for t in sample_tuples(s, 5, 6, 3) {
            assert_eq!(w.eval_sorted(&t), oracle::wedge(&c.mu, &c.psi, &rho, &t), "{t:?}");
        }
        let comp = Composer::new(&c.mu, &c.psi).unwrap();
        for t in sample_tuples(s, 6, 3, 4) {
            assert_eq!(comp.eval_sorted(&t), oracle::compose(&c.mu, &c.psi, &t), "{t:?}");
        }
    }

    #[test]
    fn doubled_moment_map_breaks_special_formulas() {
        let r = preset("fundamental_so", Some("odd-plane"), Q).unwrap();
        let mu = r.moment_map().unwrap().scale(&Scalar::from_int(Q, 2));
        assert!(!redundancy(&r, &mu, true).unwrap().iter().all(|(_, v)| v.is_pass()));
    }
}
