//! The ε-signed action of Sₙ: multipliers p(σ; v), shuffles and signed sorting.

use crate::error::{Error, Result};
use crate::graded::GradedSpace;
use crate::grading::{CommutationFactor, GroupElem};
use crate::scalar::Scalar;

/// σ stored 0-based by images: `images[k] = σ(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Cycle notation with 1-based points, e.g. `&[&[1, 2, 4, 3]]` for (1243).
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for c in cycles {
            for k in 0..c.len() {
                let (a, b) = (c[k], c[(k + 1) % c.len()]);
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(Error::Invalid(format!("cycle point out of range 1..{n}")));
                }
                images[a - 1] = b - 1;
            }
        }
        Self::from_images(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, k: usize) -> usize {
        self.0[k]
    }

    /// (σσ′)(k) = σ(σ′(k)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&k| self.0[k]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (k, &s) in self.0.iter().enumerate() {
            inv[s] = k;
        }
        Permutation(inv)
    }

    pub fn sign(&self) -> i8 {
        let mut s = 1;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    s = -s;
                }
            }
        }
        s
    }

    /// (v_{σ(1)}, …, v_{σ(n)}).
    pub fn permute<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.0.iter().map(|&k| items[k].clone()).collect()
    }
}

/// p(σ; v) = sgn(σ)·∏_{i<j, σ⁻¹(i)>σ⁻¹(j)} ε(vᵢ, vⱼ).
pub fn p_sign(sigma: &Permutation, degs: &[GroupElem], cf: &CommutationFactor) -> Result<Scalar> {
    if sigma.len() != degs.len() {
        return Err(Error::Shape(format!("permutation of {} points, {} degrees", sigma.len(), degs.len())));
    }
    Ok(p_sign_with(sigma, |i, j| cf.eval(&degs[i], &degs[j]), Scalar::one(cf.field())))
}

/// p(σ; v) for the basis tuple `t` of `space`.
pub fn p_sign_basis(sigma: &Permutation, t: &[usize], space: &GradedSpace) -> Scalar {
    p_sign_with(sigma, |i, j| space.eps(t[i], t[j]).clone(), Scalar::one(space.field()))
}

fn p_sign_with(sigma: &Permutation, eps: impl Fn(usize, usize) -> Scalar, one: Scalar) -> Scalar {
    let inv = sigma.inverse();
    let n = sigma.len();
    let mut acc = one;
    for i in 0..n {
        for j in i + 1..n {
            if inv.0[i] > inv.0[j] {
                acc = -&(&acc * &eps(i, j));
            }
        }
    }
    acc
}

/// Lazily enumerates S(I₁,…,I_m) for consecutive blocks of the given sizes. Each block
/// receives an increasing set of positions chosen from those the earlier blocks left over.
pub struct Shuffles {
    sizes: Vec<usize>,
    n: usize,
    combos: Vec<Vec<usize>>,
    done: bool,
}

pub fn shuffle_iter(sizes: &[usize]) -> Result<Shuffles> {
    if sizes.is_empty() {
        return Err(Error::Invalid("shuffle of an empty block list".into()));
    }
    let n = sizes.iter().sum();
    let mut s = Shuffles { sizes: sizes.to_vec(), n, combos: Vec::new(), done: false };
    s.reset_from(0);
    Ok(s)
}

impl Shuffles {
    fn pool_size(&self, block: usize) -> usize {
        self.n - self.sizes[..block].iter().sum::<usize>()
    }

    fn reset_from(&mut self, block: usize) {
        self.combos.truncate(block);
        for b in block..self.sizes.len() {
            self.combos.push((0..self.sizes[b]).collect());
        }
    }

    fn advance(&mut self) -> bool {
        for b in (0..self.sizes.len().saturating_sub(1)).rev() {
            let pool = self.pool_size(b);
            let k = self.sizes[b];
            let c = &mut self.combos[b];
            if let Some(i) = (0..k).rev().find(|&i| c[i] < pool - k + i) {
                c[i] += 1;
                for l in i + 1..k {
                    c[l] = c[l - 1] + 1;
                }
                self.reset_from(b + 1);
                return true;
            }
        }
        false
    }

    fn current(&self) -> Permutation {
        let mut pool: Vec<usize> = (0..self.n).collect();
        let mut images = Vec::with_capacity(self.n);
        for c in &self.combos {
            let chosen: Vec<usize> = c.iter().map(|&i| pool[i]).collect();
            let mut keep = Vec::with_capacity(pool.len() - chosen.len());
            let mut ci = 0;
            for (idx, &p) in pool.iter().enumerate() {
                if ci < c.len() && c[ci] == idx {
                    ci += 1;
                } else {
                    keep.push(p);
                }
            }
            images.extend(chosen);
            pool = keep;
        }
        Permutation(images)
    }
}

impl Iterator for Shuffles {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let p = self.current();
        if !self.advance() {
            self.done = true;
        }
        Some(p)
    }
}

/// Calls `visit(σ, p(σ; t))` for every shuffle of blocks `sizes`, on basis tuple `t`.
/// The sign is built block by block: choosing block B out of the remaining positions R
/// contributes ∏(−ε(t_x, t_y)) over x ∈ R∖B, y ∈ B, x < y.
pub fn for_each_shuffle_signed(
    sizes: &[usize],
    t: &[usize],
    space: &GradedSpace,
    mut visit: impl FnMut(&[usize], &Scalar),
) {
    let n: usize = sizes.iter().sum();
    assert_eq!(n, t.len(), "shuffle blocks must cover the tuple");
    let mut images = Vec::with_capacity(n);
    let remaining: Vec<usize> = (0..n).collect();
    rec(sizes, t, space, &remaining, Scalar::one(space.field()), &mut images, &mut visit);

    fn rec(
        sizes: &[usize],
        t: &[usize],
        space: &GradedSpace,
        remaining: &[usize],
        sign: Scalar,
        images: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize], &Scalar),
    ) {
        let Some((&k, rest)) = sizes.split_first() else {
            visit(images, &sign);
            return;
        };
        for chosen in itertools::Itertools::combinations(0..remaining.len(), k) {
            let mut s = sign.clone();
            let mut left = Vec::with_capacity(remaining.len() - k);
            let mut ci = 0;
            for (idx, &pos) in remaining.iter().enumerate() {
                if ci < k && chosen[ci] == idx {
                    ci += 1;
                } else {
                    left.push(pos);
                }
            }
            for &x in &left {
                for &ci in &chosen {
                    let y = remaining[ci];
                    if x < y {
                        s = &s * space.neg_eps(t[x], t[y]);
                    }
                }
            }
            let before = images.len();
            images.extend(chosen.iter().map(|&c| remaining[c]));
            rec(rest, t, space, &left, s, images, visit);
            images.truncate(before);
        }
    }
}

/// Stable insertion sort of a basis tuple; returns the sorted tuple and the factor c with
/// f(requested) = c·f(sorted) for every ε-alternating f.
pub fn sort_with_sign(t: &[usize], space: &GradedSpace) -> (Vec<usize>, Scalar) {
    let mut v = t.to_vec();
    let mut sign = Scalar::one(space.field());
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            sign = &sign * space.neg_eps(v[j - 1], v[j]);
            v.swap(j - 1, j);
            j -= 1;
        }
    }
    (v, sign)
}

/// Degree-tuple form of [`sort_with_sign`] for indices with explicit degrees.
pub fn sort_with_sign_degs(t: &[usize], degs: &[GroupElem], cf: &CommutationFactor) -> Result<(Vec<usize>, Scalar)> {
    if t.len() != degs.len() {
        return Err(Error::Shape("index and degree tuples differ in length".into()));
    }
    let mut v: Vec<(usize, &GroupElem)> = t.iter().copied().zip(degs).collect();
    let mut sign = Scalar::one(cf.field());
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1].0 > v[j].0 {
            sign = -&(&sign * &cf.eval(v[j - 1].1, v[j].1));
            v.swap(j - 1, j);
            j -= 1;
        }
    }
    Ok((v.into_iter().map(|(i, _)| i).collect(), sign))
}

/// True when a non-decreasing tuple repeats an even index, forcing every ε-alternating value to 0.
pub fn repeats_even(sorted: &[usize], space: &GradedSpace) -> bool {
    sorted.windows(2).any(|w| w[0] == w[1] && space.is_even(w[0]))
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// |S(I₁,…,I_m)| = n!/∏|Iᵢ|!.
pub fn shuffle_count(sizes: &[usize]) -> u128 {
    let mut n = 0;
    let mut acc = 1u128;
    for &s in sizes {
        n += s;
        acc *= binomial(n, s);
    }
    acc
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::scalar::FieldDescriptor;

    const Q: FieldDescriptor = FieldDescriptor::Rational;

    fn odd_space(n: usize) -> GradedSpace {
        let cf = Arc::new(CommutationFactor::super_sign(Q));
        let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let items: Vec<(&str, &[i64])> = names.iter().map(|s| (s.as_str(), &[1i64][..])).collect();
        GradedSpace::from_degrees(cf, &items).unwrap()
    }

    #[test]
    fn two_two_shuffles_match_cycle_list() {
        let got: Vec<Permutation> = shuffle_iter(&[2, 2]).unwrap().collect();
        let want: Vec<Permutation> = [
            vec![],
            vec![vec![1, 2, 3]],
            vec![vec![1, 2, 4, 3]],
            vec![vec![2, 3]],
            vec![vec![1, 3], vec![2, 4]],
            vec![vec![2, 4, 3]],
        ]
        .iter()
        .map(|cs| {
            let refs: Vec<&[usize]> = cs.iter().map(Vec::as_slice).collect();
            Permutation::from_cycles(4, &refs).unwrap()
        })
        .collect();
        assert_eq!(got.len(), 6);
        for w in &want {
            assert!(got.contains(w), "missing {w:?}");
        }
    }

    #[test]
    fn single_block_is_identity_only() {
        let got: Vec<Permutation> = shuffle_iter(&[4]).unwrap().collect();
        assert_eq!(got, vec![Permutation::identity(4)]);
    }

    #[test]
    fn empty_block_list_is_error() {
        assert!(shuffle_iter(&[]).is_err());
    }

    #[test]
    fn twelve_point_count() {
        assert_eq!(shuffle_count(&[3, 3, 3, 3]), 369_600);
    }

    #[test]
    fn adjacent_swap_on_odd_pair() {
        let cf = CommutationFactor::super_sign(Q);
        let one = cf.group().elem(&[1]).unwrap();
        let tau = Permutation::from_images(vec![1, 0]).unwrap();
        assert_eq!(p_sign(&tau, &[one.clone(), one], &cf).unwrap(), Scalar::one(Q));
    }

    #[test]
    fn sorting_examples() {
        let v = odd_space(3);
        assert_eq!(sort_with_sign(&[0, 1, 2], &v), (vec![0, 1, 2], Scalar::one(Q)));
        assert_eq!(sort_with_sign(&[1, 0], &v), (vec![0, 1], Scalar::one(Q)));
        assert_eq!(sort_with_sign(&[2, 1, 0], &v), (vec![0, 1, 2], Scalar::one(Q)));
    }

    #[test]
    fn signed_visitor_matches_p_sign() {
        let cf = Arc::new(CommutationFactor::super_sign(Q));
        let v = GradedSpace::from_degrees(cf, &[("a", &[0]), ("b", &[1]), ("c", &[1]), ("d", &[0])]).unwrap();
        let t = [0, 1, 2, 3, 1];
        let mut count = 0;
        for_each_shuffle_signed(&[2, 1, 2], &t, &v, |img, s| {
            let sigma = Permutation::from_images(img.to_vec()).unwrap();
            assert_eq!(*s, p_sign_basis(&sigma, &t, &v));
            count += 1;
        });
        assert_eq!(count as u128, shuffle_count(&[2, 1, 2]));
    }
}
