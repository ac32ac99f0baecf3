//! Random graded spaces and ε-symmetric forms for property tests.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::catalog::{super_cf, trivial_cf, z_by_z2_cf};
use crate::graded::{FormEps, GradedSpace};
use crate::grading::CommutationFactor;
use crate::matrix::Matrix;
use crate::scalar::{FieldDescriptor, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradingKind {
    Trivial,
    Super,
    ZByZ2,
}

impl GradingKind {
    pub const ALL: [GradingKind; 3] = [GradingKind::Trivial, GradingKind::Super, GradingKind::ZByZ2];

    pub fn commutation_factor(self, field: FieldDescriptor) -> Arc<CommutationFactor> {
        match self {
            GradingKind::Trivial => trivial_cf(field),
            GradingKind::Super => super_cf(field),
            GradingKind::ZByZ2 => z_by_z2_cf(field),
        }
    }

    /// Building blocks: (degree, partner degree). Equal entries mean a self-dual degree.
    fn blocks(self) -> Vec<(Vec<i64>, Vec<i64>)> {
        match self {
            GradingKind::Trivial => vec![(vec![], vec![])],
            GradingKind::Super => vec![(vec![0], vec![0]), (vec![1], vec![1])],
            GradingKind::ZByZ2 => vec![
                (vec![0, 0], vec![0, 0]),
                (vec![0, 1], vec![0, 1]),
                (vec![1, 0], vec![-1, 0]),
                (vec![1, 1], vec![-1, 1]),
            ],
        }
    }
}

fn nonzero(field: FieldDescriptor, rng: &mut impl Rng) -> Scalar {
    loop {
        let x = Scalar::from_int(field, rng.gen_range(-3..=3));
        if !x.is_zero() {
            return x;
        }
    }
}

/// A random non-degenerate ε-symmetric form of degree 0 on a space of dimension `dim`.
pub fn random_form(kind: GradingKind, field: FieldDescriptor, dim: usize, rng: &mut impl Rng) -> FormEps {
    let cf = kind.commutation_factor(field);
    let group = cf.group().clone();
    let blocks = kind.blocks();
    let mut degrees: Vec<Vec<i64>> = Vec::new();
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    while degrees.len() < dim {
        let room = dim - degrees.len();
        let (a, b) = blocks.choose(rng).expect("blocks").clone();
        let ga = group.elem(&a).expect("degree");
        let parity = cf.parity(&ga);
        let i = degrees.len();
        if a == b && parity == 1 {
            degrees.push(a);
            entries.push((i, i, nonzero(field, rng)));
        } else if room >= 2 {
            let c = nonzero(field, rng);
            let gb = group.elem(&b).expect("degree");
            // (x,y) = c forces (y,x) = ε(y,x)c
            let back = &cf.eval(&gb, &ga) * &c;
            degrees.push(a);
            degrees.push(b);
            entries.push((i, i + 1, c));
            entries.push((i + 1, i, back));
        } else {
            let zero = group.zero();
            degrees.push(zero.coords().to_vec());
            entries.push((i, i, nonzero(field, rng)));
        }
    }
    let names: Vec<String> = (0..dim).map(|i| format!("e{}", i + 1)).collect();
    let items: Vec<(&str, &[i64])> = names.iter().map(String::as_str).zip(degrees.iter().map(Vec::as_slice)).collect();
    let space = GradedSpace::from_degrees(cf, &items).expect("random space");
    let mut gram = Matrix::zeros(field, dim, dim);
    for (i, j, c) in entries {
        gram.set(i, j, c);
    }
    // congruence by a random invertible map preserving degrees
    let p = loop {
        let mut p = Matrix::zeros(field, dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                if space.degree(i) == space.degree(j) {
                    p.set(i, j, Scalar::from_int(field, rng.gen_range(-2..=2)));
                }
            }
        }
        if p.rank() == dim {
            break p;
        }
    };
    let gram = p.transpose().mul(&gram).mul(&p);
    FormEps::checked(space, gram).expect("random form is valid")
}

/// A random form over a random grading, dimension in `2..=max_dim`.
pub fn random_graded_form(field: FieldDescriptor, max_dim: usize, rng: &mut impl Rng) -> FormEps {
    let kind = *GradingKind::ALL.choose(rng).expect("kinds");
    let dim = rng.gen_range(2..=max_dim.max(2));
    random_form(kind, field, dim, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Verdict;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_forms_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for field in [FieldDescriptor::Rational, FieldDescriptor::prime(7).unwrap()] {
            for kind in GradingKind::ALL {
                for dim in 1..=4 {
                    let f = random_form(kind, field, dim, &mut rng);
                    assert_eq!(f.dim(), dim);
                    assert!(matches!(f.validate(), Verdict::Pass), "{kind:?} {dim}");
                }
            }
        }
    }
}
