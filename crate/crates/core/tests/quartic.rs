//! The degree-12 composition Q∘ψ against Q∧Q∧Q on the hyperbolic tensor fixture.
//!
//! On a purely odd space every p-sign is 1, so the full symmetrizations over S₁₂ collapse to sums
//! over distinct words of the tuple, each repeated (∏ multiplicity!) times.

use colour_lie::alt::*;
use colour_lie::catalog::preset;
use colour_lie::covariants::{covariants, CovariantSet};
use colour_lie::rep::OrthRep;
use colour_lie::{FieldDescriptor, Scalar};

const Q: FieldDescriptor = FieldDescriptor::Rational;

fn fixture() -> (OrthRep, CovariantSet) {
    let r = preset("so_tensor_sl2", Some("hyperbolic"), Q).unwrap();
    assert!((0..r.dim()).all(|i| !r.space().is_even(i)));
    let c = covariants(&r).unwrap();
    (r, c)
}

fn words(counts: &mut Vec<(usize, usize)>, prefix: &mut Vec<usize>, len: usize, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == len {
        out.push(prefix.clone());
        return;
    }
    for k in 0..counts.len() {
        if counts[k].1 == 0 {
            continue;
        }
        counts[k].1 -= 1;
        prefix.push(counts[k].0);
        words(counts, prefix, len, out);
        prefix.pop();
        counts[k].1 += 1;
    }
}

fn distinct_words(t: &[usize]) -> (Vec<Vec<usize>>, i64) {
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &x in t {
        match counts.iter_mut().find(|c| c.0 == x) {
            Some(c) => c.1 += 1,
            None => counts.push((x, 1)),
        }
    }
    let repeats: i64 = counts.iter().map(|c| (1..=c.1 as i64).product::<i64>()).product();
    let mut out = Vec::new();
    words(&mut counts, &mut Vec::new(), t.len(), &mut out);
    (out, repeats)
}

fn int(x: i64) -> Scalar {
    Scalar::from_int(Q, x)
}

/// (Q∘ψ)(t) = (1/3!⁴) Σ_{S₁₂} Q(ψ(…),ψ(…),ψ(…),ψ(…)).
fn oracle_q_psi(c: &CovariantSet, t: &[usize]) -> Scalar {
    let (ws, repeats) = distinct_words(t);
    let mut acc = Scalar::zero(Q);
    for w in ws {
        let args: Vec<Vec<Scalar>> = w.chunks(3).map(|b| c.psi.eval(b)).collect();
        acc += &c.q.eval_vectors(&args)[0];
    }
    &(&acc * &int(repeats)) * &Scalar::from_ratio(Q, 1, 6i64.pow(4)).unwrap()
}

/// (Q∧Q∧Q)(t) = (1/4!³) Σ_{S₁₂} Q(…)Q(…)Q(…).
fn oracle_qqq(c: &CovariantSet, t: &[usize]) -> Scalar {
    let (ws, repeats) = distinct_words(t);
    let mut acc = Scalar::zero(Q);
    for w in ws {
        let mut x = Scalar::one(Q);
        for b in w.chunks(4) {
            x = &x * &c.q.eval(b)[0];
        }
        acc += &x;
    }
    &(&acc * &int(repeats)) * &Scalar::from_ratio(Q, 1, 24i64.pow(3)).unwrap()
}

#[test]
fn oracle_values_on_balanced_tuple() {
    let (_, c) = fixture();
    let t = [0, 0, 0, 0, 0, 0, 3, 3, 3, 3, 3, 3];
    assert_eq!(oracle_q_psi(&c, &t), int(-6_046_617_600));
    assert_eq!(oracle_qqq(&c, &t), int(-111_974_400));
}

#[test]
fn shuffle_products_match_word_oracle() {
    let (r, c) = fixture();
    let f = Q;
    let prod = Bilinear::scalar_product(f);
    let k = Codomain::Scalars(f);
    let lhs = Composer::new(&c.q, &c.psi).unwrap();
    let qq = Wedge::new(&c.q, &c.q, &prod, k.clone()).unwrap();
    let qqq = Wedge::new(&qq, &c.q, &prod, k).unwrap();
    for t in [[0, 0, 0, 0, 0, 0, 3, 3, 3, 3, 3, 3], [0, 0, 0, 0, 1, 1, 2, 2, 3, 3, 3, 3], [0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3]] {
        assert_eq!(lhs.eval_sorted(&t), vec![oracle_q_psi(&c, &t)], "{t:?}");
        assert_eq!(qqq.eval_sorted(&t), vec![oracle_qqq(&c, &t)], "{t:?}");
    }
    assert_eq!(canonical_count(r.space(), 12), 455);
}

/// Q∘ψ is +54·Q∧Q∧Q on every canonical tuple, and the two sides are not both zero.
#[test]
fn quartic_composition_is_plus_54_cubed_wedge() {
    let (r, c) = fixture();
    let prod = Bilinear::scalar_product(Q);
    let k = Codomain::Scalars(Q);
    let lhs = Composer::new(&c.q, &c.psi).unwrap();
    let qq = Wedge::new(&c.q, &c.q, &prod, k.clone()).unwrap();
    let qqq = Wedge::new(&qq, &c.q, &prod, k).unwrap();
    let plus = Scaled { inner: &qqq, factor: int(54) };
    let tuples = canonical_tuples(r.space(), 12);
    assert!(compare_on(&lhs, &plus, &tuples).is_pass());
    let nonzero = tuples.iter().filter(|t| !qqq.eval_sorted(t)[0].is_zero()).count();
    assert_eq!(nonzero, 7);
}
