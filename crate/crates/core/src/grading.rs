//! Finitely generated abelian groups ℤ^r × ∏ℤ_{mᵢ} and commutation factors on them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{FieldDescriptor, Scalar};
use crate::verdict::{Verdict, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElem(Vec<i64>);

impl GroupElem {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl AbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if let Some(m) = torsion.iter().find(|&&m| m < 2) {
            return Err(Error::Invalid(format!("torsion order {m} must be at least 2")));
        }
        Ok(AbelianGroup { free_rank, torsion })
    }

    pub fn z2() -> Self {
        AbelianGroup { free_rank: 0, torsion: vec![2] }
    }

    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn elem(&self, coords: &[i64]) -> Result<GroupElem> {
        if coords.len() != self.rank() {
            return Err(Error::Shape(format!(
                "group element has {} coordinates, group needs {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(self.canon(coords.to_vec()))
    }

    fn canon(&self, mut c: Vec<i64>) -> GroupElem {
        for (k, m) in self.torsion.iter().enumerate() {
            let i = self.free_rank + k;
            c[i] = c[i].rem_euclid(*m as i64);
        }
        GroupElem(c)
    }

    pub fn zero(&self) -> GroupElem {
        GroupElem(vec![0; self.rank()])
    }

    pub fn add(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        self.canon(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &GroupElem) -> GroupElem {
        self.canon(a.0.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        self.add(a, &self.neg(b))
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a GroupElem>) -> GroupElem {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    pub fn contains(&self, a: &GroupElem) -> bool {
        a.0.len() == self.rank() && self.canon(a.0.clone()) == *a
    }
}

/// ε given by its values on generator pairs and extended bimultiplicatively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationFactor {
    group: AbelianGroup,
    field: FieldDescriptor,
    gens: Vec<Vec<Scalar>>,
}

impl CommutationFactor {
    /// Checks shapes and fields only; call [`validate`](Self::validate) for the ε axioms.
    pub fn new(group: AbelianGroup, field: FieldDescriptor, gens: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = group.rank();
        if gens.len() != n || gens.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!("epsilon matrix must be {n}x{n}")));
        }
        if let Some(s) = gens.iter().flatten().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(s.field(), field));
        }
        Ok(CommutationFactor { group, field, gens })
    }

    /// New and validated; a failing verdict becomes an error.
    pub fn checked(group: AbelianGroup, field: FieldDescriptor, gens: Vec<Vec<Scalar>>) -> Result<Self> {
        let cf = Self::new(group, field, gens)?;
        match cf.validate() {
            Verdict::Pass => Ok(cf),
            Verdict::Fail(ws) => Err(Error::Invalid(format!("commutation factor: {}", ws[0]))),
        }
    }

    /// The super sign (−1)^{ab} on ℤ₂.
    pub fn super_sign(field: FieldDescriptor) -> Self {
        Self::new(AbelianGroup::z2(), field, vec![vec![Scalar::from_int(field, -1)]]).expect("1x1")
    }

    /// ε ≡ 1 on the trivial group: ordinary Lie theory.
    pub fn trivial(field: FieldDescriptor) -> Self {
        Self::new(AbelianGroup { free_rank: 0, torsion: vec![] }, field, vec![]).expect("0x0")
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn generator_values(&self) -> &[Vec<Scalar>] {
        &self.gens
    }

    pub fn validate(&self) -> Verdict {
        let n = self.group.rank();
        let one = Scalar::one(self.field);
        let mut ws = Vec::new();
        for i in 0..n {
            let d = &self.gens[i][i];
            if !d.is_one() && !d.is_minus_one() {
                ws.push(Witness::new("E[i][i] must be ±1", &[i, i], d, "±1"));
            }
            for j in 0..n {
                let prod = &self.gens[i][j] * &self.gens[j][i];
                if prod != one {
                    ws.push(Witness::new("E[i][j]E[j][i] = 1", &[i, j], prod, &one));
                }
                if i >= self.group.free_rank {
                    let m = self.group.torsion[i - self.group.free_rank] as i64;
                    for (a, b) in [(i, j), (j, i)] {
                        let p = self.gens[a][b].pow(m).unwrap_or_else(|_| Scalar::zero(self.field));
                        if p != one {
                            ws.push(Witness::new("torsion order: E^m = 1", &[a, b], p, &one));
                        }
                    }
                }
            }
        }
        ws.dedup();
        Verdict::from_witnesses(ws)
    }

    pub fn eval(&self, a: &GroupElem, b: &GroupElem) -> Scalar {
        let mut acc = Scalar::one(self.field);
        for (i, ai) in a.0.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                let e = ai * bj;
                if e != 0 {
                    let v = self.gens[i][j].pow(e).expect("generator values are units");
                    acc = &acc * &v;
                }
            }
        }
        acc
    }

    /// +1 on Γ₀ and −1 on Γ₁.
    pub fn parity(&self, a: &GroupElem) -> i8 {
        if self.eval(a, a).is_one() {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDescriptor = FieldDescriptor::Rational;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(Q, n)
    }

    #[test]
    fn examples_from_validation() {
        assert!(CommutationFactor::super_sign(Q).validate().is_pass());
        let bad = CommutationFactor::new(AbelianGroup::z2(), Q, vec![vec![s(2)]]).unwrap();
        assert!(!bad.validate().is_pass());
        let g = AbelianGroup::new(1, vec![2]).unwrap();
        let cf = CommutationFactor::new(g, Q, vec![vec![s(-1), s(1)], vec![s(1), s(-1)]]).unwrap();
        assert!(cf.validate().is_pass());
    }

    #[test]
    fn eval_examples() {
        let cf = CommutationFactor::super_sign(Q);
        let g = cf.group().clone();
        let one = g.elem(&[1]).unwrap();
        assert_eq!(cf.eval(&one, &one), s(-1));
        assert_eq!(cf.eval(&one, &g.zero()), s(1));
        let z = AbelianGroup::new(1, vec![]).unwrap();
        let cfz = CommutationFactor::new(z.clone(), Q, vec![vec![s(-1)]]).unwrap();
        assert_eq!(cfz.eval(&z.elem(&[2]).unwrap(), &z.elem(&[3]).unwrap()), s(1));
        assert_eq!(cf.parity(&g.zero()), 1);
        assert_eq!(cf.parity(&one), -1);
    }

    #[test]
    fn torsion_coordinates_reduce() {
        let g = AbelianGroup::new(1, vec![3]).unwrap();
        assert_eq!(g.elem(&[-2, 5]).unwrap().coords(), &[-2, 2]);
        assert_eq!(g.add(&g.elem(&[1, 2]).unwrap(), &g.elem(&[0, 2]).unwrap()).coords(), &[1, 1]);
    }

    #[test]
    fn shape_mismatch_is_error() {
        assert!(CommutationFactor::new(AbelianGroup::z2(), Q, vec![]).is_err());
    }
}
