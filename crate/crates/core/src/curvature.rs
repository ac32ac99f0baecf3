//! Curvature-like 4-tensors, the Bianchi map and the specialness test.

use rand::Rng;
use rayon::prelude::*;

use crate::algebra::WITNESS_CAP;
use crate::alt::{AltMap, AltSource, Codomain};
use crate::error::{Error, Result};
use crate::graded::{FormEps, GradedSpace};
use crate::rep::{mu_can_endo, OrthRep};
use crate::scalar::{fmt_vec, Scalar};
use crate::verdict::{Verdict, Witness};

/// A scalar 4-tensor on a basis, stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor {
    space: GradedSpace,
    values: Vec<Scalar>,
}

impl CurvatureTensor {
    pub fn from_fn(space: GradedSpace, f: impl Fn(usize, usize, usize, usize) -> Scalar + Sync) -> Self {
        let n = space.dim();
        let values = (0..n * n * n * n)
            .into_par_iter()
            .map(|k| f(k / (n * n * n), k / (n * n) % n, k / n % n, k % n))
            .collect();
        CurvatureTensor { space, values }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> &Scalar {
        let n = self.space.dim();
        &self.values[((a * n + b) * n + c) * n + d]
    }

    pub fn sub(&self, other: &CurvatureTensor) -> CurvatureTensor {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        CurvatureTensor { space: self.space.clone(), values }
    }

    pub fn scale(&self, s: &Scalar) -> CurvatureTensor {
        CurvatureTensor { space: self.space.clone(), values: self.values.iter().map(|x| x * s).collect() }
    }

    fn eps2(&self, a: usize, b: usize, c: usize, d: usize) -> Scalar {
        // ε(A+B, C+D)
        let s = &self.space;
        &(&(s.eps(a, c) * s.eps(a, d)) * s.eps(b, c)) * s.eps(b, d)
    }

    /// R(A,B,C,D) = −ε(A,B)R(B,A,C,D) and R(A,B,C,D) = ε(A+B,C+D)R(C,D,A,B).
    pub fn validate(&self) -> Verdict {
        let n = self.space.dim();
        let mut ws = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if ws.len() >= WITNESS_CAP {
                            return Verdict::from_witnesses(ws);
                        }
                        let r = self.get(a, b, c, d);
                        let s1 = self.space.neg_eps(a, b) * self.get(b, a, c, d);
                        if *r != s1 {
                            ws.push(Witness::new("first-pair antisymmetry", &[a, b, c, d], r, &s1));
                        }
                        let s2 = &self.eps2(a, b, c, d) * self.get(c, d, a, b);
                        if *r != s2 {
                            ws.push(Witness::new("pair exchange symmetry", &[a, b, c, d], r, &s2));
                        }
                    }
                }
            }
        }
        Verdict::from_witnesses(ws)
    }

    /// β(R)(A,B,C,D) = R(A,B,C,D) + ε(A,B+C)R(B,C,A,D) + ε(A+B,C)R(C,A,B,D).
    pub fn bianchi(&self) -> CurvatureTensor {
        let s = &self.space;
        CurvatureTensor::from_fn(s.clone(), |a, b, c, d| {
            let e1 = s.eps(a, b) * s.eps(a, c);
            let e2 = s.eps(a, c) * s.eps(b, c);
            let mut acc = self.get(a, b, c, d).clone();
            acc.add_mul(&e1, self.get(b, c, a, d));
            acc.add_mul(&e2, self.get(c, a, b, d));
            acc
        })
    }

    /// The 4-tensor viewed as a scalar alternating map (meaningful when it is alternating).
    pub fn to_altmap(&self) -> AltMap {
        AltMap::from_fn(self.space.clone(), Codomain::Scalars(self.space.field()), 4, |t| {
            vec![self.get(t[0], t[1], t[2], t[3]).clone()]
        })
    }

    /// Agreement with an alternating map on every basis 4-tuple.
    pub fn is_alternating(&self) -> bool {
        let alt = self.to_altmap();
        let n = self.space.dim();
        (0..n * n * n * n).into_par_iter().all(|k| {
            let t = [k / (n * n * n), k / (n * n) % n, k / n % n, k % n];
            alt.eval(&t)[0] == *self.get(t[0], t[1], t[2], t[3])
        })
    }

    /// Projection onto the two symmetries by averaging over the order-8 group they generate.
    pub fn symmetrize(&self) -> CurvatureTensor {
        let s = &self.space;
        let half = Scalar::from_ratio(s.field(), 1, 2).expect("characteristic is not 2");
        let p1 = CurvatureTensor::from_fn(s.clone(), |a, b, c, d| {
            let mut x = self.get(a, b, c, d).clone();
            x.add_mul(s.neg_eps(a, b), self.get(b, a, c, d));
            &x * &half
        });
        let p2 = CurvatureTensor::from_fn(s.clone(), |a, b, c, d| {
            let mut x = p1.get(a, b, c, d).clone();
            x.add_mul(s.neg_eps(c, d), p1.get(a, b, d, c));
            &x * &half
        });
        CurvatureTensor::from_fn(s.clone(), |a, b, c, d| {
            let mut x = p2.get(a, b, c, d).clone();
            x.add_mul(&p2.eps2(a, b, c, d), p2.get(c, d, a, b));
            &x * &half
        })
    }

    /// A random element of R(V) with small integer seeds.
    pub fn random(space: &GradedSpace, rng: &mut impl Rng) -> CurvatureTensor {
        let n = space.dim();
        let f = space.field();
        let raw: Vec<Scalar> = (0..n * n * n * n).map(|_| Scalar::from_int(f, rng.gen_range(-3..=3))).collect();
        CurvatureTensor { space: space.clone(), values: raw }.symmetrize()
    }
}

/// R(A,B,C,D) = (ρ(μ(A,B))C + φ(φ(A,B),C), D).
pub fn curvature_from(rep: &OrthRep, mu: &AltMap, phi: Option<&AltMap>) -> Result<CurvatureTensor> {
    let n = rep.dim();
    let space = rep.space();
    if let Some(p) = phi {
        if p.arity() != 2 || p.codomain().dim() != n || p.domain() != space {
            return Err(Error::Shape("φ must be an alternating bilinear map V×V → V".into()));
        }
    }
    let ops: Vec<_> = (0..n * n).map(|k| rep.moment_operator(mu, k / n, k % n)).collect();
    let phis: Vec<Vec<Scalar>> = match phi {
        Some(p) => (0..n * n).map(|k| p.eval(&[k / n, k % n])).collect(),
        None => Vec::new(),
    };
    let r = CurvatureTensor::from_fn(space.clone(), |a, b, c, d| {
        let mut x = ops[a * n + b].column(c);
        if let Some(p) = phi {
            let y = p.eval_vectors(&[phis[a * n + b].clone(), space.unit(c)]);
            for (xi, yi) in x.iter_mut().zip(&y) {
                *xi += yi;
            }
        }
        rep.form.pair(&x, &space.unit(d))
    });
    let v = r.validate();
    if let Verdict::Fail(ws) = v {
        return Err(Error::Invalid(format!("curvature tensor breaks its symmetries: {}", ws[0])));
    }
    Ok(r)
}

/// R_{μ_can}(A,B,C,D) = (μ_can(A,B)(C), D).
pub fn curvature_can(form: &FormEps) -> CurvatureTensor {
    let n = form.dim();
    let ops: Vec<_> = (0..n * n).map(|k| mu_can_endo(form, k / n, k % n)).collect();
    CurvatureTensor::from_fn(form.space.clone(), |a, b, c, d| form.pair(&ops[a * n + b].column(c), &form.space.unit(d)))
}

/// The two specialness criteria, evaluated independently.
#[derive(Clone, Debug)]
pub struct SpecialVerdict {
    /// μ(A,B)(C) + ε(B,C)μ(A,C)(B) = (A,B)C + ε(B,C)(A,C)B − 2(B,C)A.
    pub condition_b: Verdict,
    /// R_μ − ⅓β(R_μ) = R_{μ_can}.
    pub curvature: Verdict,
}

impl SpecialVerdict {
    pub fn is_special(&self) -> bool {
        self.condition_b.is_pass()
    }
}

pub fn condition_b(rep: &OrthRep, mu: &AltMap) -> Verdict {
    let n = rep.dim();
    let s = rep.space();
    let form = &rep.form;
    let two = Scalar::from_int(s.field(), 2);
    let ops: Vec<_> = (0..n * n).map(|k| rep.moment_operator(mu, k / n, k % n)).collect();
    let mut ws = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let e = s.eps(b, c);
                let mut lhs = ops[a * n + b].column(c);
                for (l, y) in lhs.iter_mut().zip(ops[a * n + c].column(b)) {
                    l.add_mul(e, &y);
                }
                let mut rhs = s.zero_vec();
                rhs[c] += form.get(a, b);
                rhs[b] += &(e * form.get(a, c));
                rhs[a] -= &(&two * form.get(b, c));
                if lhs != rhs && ws.len() < WITNESS_CAP {
                    ws.push(Witness::new(
                        format!("condition (b) on ({}, {}, {})", s.name(a), s.name(b), s.name(c)),
                        &[a, b, c],
                        fmt_vec(&lhs),
                        fmt_vec(&rhs),
                    ));
                }
            }
        }
    }
    Verdict::from_witnesses(ws)
}

pub fn curvature_criterion(rep: &OrthRep, mu: &AltMap) -> Result<Verdict> {
    let r = curvature_from(rep, mu, None)?;
    let third = Scalar::from_ratio(rep.space().field(), 1, 3)?;
    let lhs = r.sub(&r.bianchi().scale(&third));
    let rhs = curvature_can(&rep.form);
    let n = rep.dim();
    let mut ws = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if lhs.get(a, b, c, d) != rhs.get(a, b, c, d) && ws.len() < WITNESS_CAP {
                        ws.push(Witness::new("R_μ − ⅓β(R_μ) = R_μcan", &[a, b, c, d], lhs.get(a, b, c, d), rhs.get(a, b, c, d)));
                    }
                }
            }
        }
    }
    Ok(Verdict::from_witnesses(ws))
}

/// Runs both criteria; disagreement is an error.
pub fn is_special(rep: &OrthRep, mu: &AltMap) -> Result<SpecialVerdict> {
    let condition_b = condition_b(rep, mu);
    let curvature = curvature_criterion(rep, mu)?;
    if condition_b.is_pass() != curvature.is_pass() {
        return Err(Error::Disagreement(format!(
            "specialness criteria disagree: condition (b) {}, curvature {}",
            condition_b.is_pass(),
            curvature.is_pass()
        )));
    }
    Ok(SpecialVerdict { condition_b, curvature })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::algebra::sl2_module;
    use crate::grading::CommutationFactor;
    use crate::rep::fundamental_so;
    use crate::scalar::FieldDescriptor;

    const Q: FieldDescriptor = FieldDescriptor::Rational;

    #[test]
    fn fundamental_sl2_is_special_and_bianchi_free() {
        let cf = Arc::new(CommutationFactor::super_sign(Q));
        let omega = sl2_module(&cf, &cf.group().elem(&[1]).unwrap()).unwrap();
        let (_, rep) = fundamental_so(&omega).unwrap();
        let mu = rep.moment_map().unwrap();
        let sv = is_special(&rep, &mu).unwrap();
        assert!(sv.is_special());
        let r = curvature_from(&rep, &mu, None).unwrap();
        assert!(r.bianchi().to_altmap().is_zero());
    }

    #[test]
    fn projection_on_random_elements() {
        let cf = Arc::new(CommutationFactor::super_sign(Q));
        let v = GradedSpace::from_degrees(cf, &[("a", &[0]), ("b", &[1]), ("c", &[1])]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let three = Scalar::from_int(Q, 3);
        for _ in 0..3 {
            let r = CurvatureTensor::random(&v, &mut rng);
            assert!(r.validate().is_pass());
            let b = r.bianchi();
            assert!(b.is_alternating());
            assert_eq!(b.bianchi(), b.scale(&three));
        }
    }
}
