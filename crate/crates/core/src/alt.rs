//! ε-alternating multilinear maps stored on canonical tuples, with exterior products,
//! norms and exterior composition.

use std::collections::{BTreeMap, HashMap};

use dashmap::DashMap;
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graded::{FormEps, GradedSpace};
use crate::grading::GroupElem;
use crate::matrix::Matrix;
use crate::perm::{for_each_shuffle_signed, repeats_even, sort_with_sign};
use crate::scalar::{axpy, fmt_vec, is_zero_vec, FieldDescriptor, Scalar};
use crate::verdict::{Verdict, Witness};

/// Target of an alternating map: a graded space or the scalar line.
#[derive(Clone, Debug, PartialEq)]
pub enum Codomain {
    Scalars(FieldDescriptor),
    Space(GradedSpace),
}

impl Codomain {
    pub fn dim(&self) -> usize {
        match self {
            Codomain::Scalars(_) => 1,
            Codomain::Space(s) => s.dim(),
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        match self {
            Codomain::Scalars(f) => *f,
            Codomain::Space(s) => s.field(),
        }
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![Scalar::zero(self.field()); self.dim()]
    }
}

/// Non-decreasing tuples of the given arity in which no even index repeats.
pub fn canonical_tuples(space: &GradedSpace, arity: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(arity);
    fn rec(space: &GradedSpace, arity: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == arity {
            out.push(cur.clone());
            return;
        }
        for i in start..space.dim() {
            if cur.last() == Some(&i) && space.is_even(i) {
                continue;
            }
            cur.push(i);
            rec(space, arity, i, cur, out);
            cur.pop();
        }
    }
    rec(space, arity, 0, &mut cur, &mut out);
    out
}

pub fn canonical_count(space: &GradedSpace, arity: usize) -> usize {
    // number of multisets with even multiplicities ≤ 1, by a small DP over basis vectors
    let mut ways = vec![0usize; arity + 1];
    ways[0] = 1;
    for i in 0..space.dim() {
        let mut next = vec![0usize; arity + 1];
        for (k, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let max = if space.is_even(i) { 1 } else { arity - k };
            for m in 0..=max.min(arity - k) {
                next[k + m] += w;
            }
        }
        ways = next;
    }
    ways[arity]
}

/// Anything that can be evaluated as an ε-alternating map on basis tuples.
pub trait AltSource: Sync {
    fn domain(&self) -> &GradedSpace;
    fn codomain(&self) -> &Codomain;
    fn arity(&self) -> usize;

    /// Value on a non-decreasing tuple.
    fn eval_sorted(&self, t: &[usize]) -> Vec<Scalar>;

    /// Value on an arbitrary tuple: signed sort, then canonical lookup.
    fn eval(&self, t: &[usize]) -> Vec<Scalar> {
        assert_eq!(t.len(), self.arity(), "arity mismatch");
        let (sorted, sign) = sort_with_sign(t, self.domain());
        if repeats_even(&sorted, self.domain()) {
            return self.codomain().zero();
        }
        let v = self.eval_sorted(&sorted);
        if sign.is_one() {
            v
        } else {
            v.iter().map(|x| x * &sign).collect()
        }
    }

    /// Multilinear extension to coordinate vectors.
    fn eval_vectors(&self, args: &[Vec<Scalar>]) -> Vec<Scalar> {
        assert_eq!(args.len(), self.arity(), "arity mismatch");
        let mut acc = self.codomain().zero();
        let mut idx = Vec::with_capacity(args.len());
        let one = Scalar::one(self.domain().field());
        expand(self, args, &mut idx, one, &mut acc);
        acc
    }
}

fn expand<S: AltSource + ?Sized>(src: &S, args: &[Vec<Scalar>], idx: &mut Vec<usize>, coef: Scalar, acc: &mut [Scalar]) {
    let k = idx.len();
    if k == args.len() {
        let v = src.eval(idx);
        axpy(acc, &coef, &v);
        return;
    }
    for (a, x) in args[k].iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        idx.push(a);
        expand(src, args, idx, &coef * x, acc);
        idx.pop();
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AltMap {
    domain: GradedSpace,
    codomain: Codomain,
    arity: usize,
    values: BTreeMap<Vec<usize>, Vec<Scalar>>,
}

impl AltSource for AltMap {
    fn domain(&self) -> &GradedSpace {
        &self.domain
    }
    fn codomain(&self) -> &Codomain {
        &self.codomain
    }
    fn arity(&self) -> usize {
        self.arity
    }
    fn eval_sorted(&self, t: &[usize]) -> Vec<Scalar> {
        self.values.get(t).cloned().unwrap_or_else(|| self.codomain.zero())
    }
}

impl AltMap {
    pub fn zero(domain: GradedSpace, codomain: Codomain, arity: usize) -> Self {
        AltMap { domain, codomain, arity, values: BTreeMap::new() }
    }

    /// Stores the evaluator's values on every canonical tuple.
    pub fn from_fn(
        domain: GradedSpace,
        codomain: Codomain,
        arity: usize,
        f: impl Fn(&[usize]) -> Vec<Scalar> + Sync,
    ) -> Self {
        let tuples = canonical_tuples(&domain, arity);
        let values = tuples
            .into_par_iter()
            .filter_map(|t| {
                let v = f(&t);
                assert_eq!(v.len(), codomain.dim(), "evaluator output length");
                (!is_zero_vec(&v)).then_some((t, v))
            })
            .collect();
        AltMap { domain, codomain, arity, values }
    }

    /// As [`from_fn`](Self::from_fn), then checks the evaluator against the adjacent-swap
    /// rule on non-canonical tuples: all of them when `sample` is `None`, else a seeded sample.
    pub fn from_fn_checked(
        domain: GradedSpace,
        codomain: Codomain,
        arity: usize,
        f: impl Fn(&[usize]) -> Vec<Scalar> + Sync,
        sample: Option<(usize, u64)>,
    ) -> Result<Self> {
        let verdict = check_alternating(&domain, arity, &f, sample);
        if let Verdict::Fail(ws) = verdict {
            return Err(Error::Invalid(format!("evaluator is not ε-alternating: {}", ws[0])));
        }
        Ok(Self::from_fn(domain, codomain, arity, f))
    }

    /// Builds from canonical (tuple, value) pairs, rejecting non-canonical tuples.
    pub fn from_entries(
        domain: GradedSpace,
        codomain: Codomain,
        arity: usize,
        entries: impl IntoIterator<Item = (Vec<usize>, Vec<Scalar>)>,
    ) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (t, v) in entries {
            if t.len() != arity || v.len() != codomain.dim() {
                return Err(Error::Shape(format!("entry {t:?} has the wrong length")));
            }
            if t.iter().any(|&i| i >= domain.dim()) {
                return Err(Error::Shape(format!("entry {t:?} indexes outside the domain")));
            }
            if t.windows(2).any(|w| w[0] > w[1]) || repeats_even(&t, &domain) {
                return Err(Error::Invalid(format!("tuple {t:?} is not canonical")));
            }
            if !is_zero_vec(&v) && values.insert(t.clone(), v).is_some() {
                return Err(Error::Invalid(format!("tuple {t:?} listed twice")));
            }
        }
        Ok(AltMap { domain, codomain, arity, values })
    }

    /// The identity of V as an element of Alt¹(V, V).
    pub fn identity(space: &GradedSpace) -> Self {
        Self::from_fn(space.clone(), Codomain::Space(space.clone()), 1, |t| space.unit(t[0]))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn domain(&self) -> &GradedSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &Codomain {
        &self.codomain
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<Scalar>)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, t: &[usize]) -> Result<Vec<Scalar>> {
        if t.len() != self.arity {
            return Err(Error::Shape(format!("arity {} map evaluated on {} arguments", self.arity, t.len())));
        }
        if let Some(&i) = t.iter().find(|&&i| i >= self.domain.dim()) {
            return Err(Error::Shape(format!("index {i} outside the domain")));
        }
        Ok(self.eval(t))
    }

    fn zip_with(&self, other: &AltMap, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> AltMap {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        assert_eq!(self.codomain.dim(), other.codomain.dim(), "codomain mismatch");
        let zero = self.codomain.zero();
        let mut values = BTreeMap::new();
        for t in self.values.keys().chain(other.values.keys()) {
            if values.contains_key(t) {
                continue;
            }
            let a = self.values.get(t).unwrap_or(&zero);
            let b = other.values.get(t).unwrap_or(&zero);
            let v: Vec<Scalar> = a.iter().zip(b).map(|(x, y)| op(x, y)).collect();
            if !is_zero_vec(&v) {
                values.insert(t.clone(), v);
            }
        }
        AltMap { domain: self.domain.clone(), codomain: self.codomain.clone(), arity: self.arity, values }
    }

    pub fn add(&self, other: &AltMap) -> AltMap {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &AltMap) -> AltMap {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> AltMap {
        let values = if s.is_zero() {
            BTreeMap::new()
        } else {
            self.values.iter().map(|(t, v)| (t.clone(), v.iter().map(|x| x * s).collect())).collect()
        };
        AltMap { domain: self.domain.clone(), codomain: self.codomain.clone(), arity: self.arity, values }
    }

    /// Replaces the value on one canonical tuple.
    pub fn with_value(&self, t: &[usize], v: Vec<Scalar>) -> AltMap {
        let mut m = self.clone();
        if is_zero_vec(&v) {
            m.values.remove(t);
        } else {
            m.values.insert(t.to_vec(), v);
        }
        m
    }

    /// Re-targets the values into a larger codomain via a coordinate embedding.
    pub fn embed(&self, codomain: Codomain, offset: usize) -> AltMap {
        let n = codomain.dim();
        let values = self
            .values
            .iter()
            .map(|(t, v)| {
                let mut w = codomain.zero();
                w[offset..offset + v.len()].clone_from_slice(v);
                debug_assert!(offset + v.len() <= n);
                (t.clone(), w)
            })
            .collect();
        AltMap { domain: self.domain.clone(), codomain, arity: self.arity, values }
    }

    /// Checks that each stored value has degree Σdeg(tuple) + d.
    pub fn check_degree(&self, d: &GroupElem) -> Verdict {
        let g = self.domain.cf().group();
        let mut ws = Vec::new();
        for (t, v) in &self.values {
            let base = g.add(&g.sum(t.iter().map(|&i| self.domain.degree(i))), d);
            let ok = match &self.codomain {
                Codomain::Scalars(_) => base == g.zero(),
                Codomain::Space(s) => v.iter().enumerate().all(|(k, c)| c.is_zero() || *s.degree(k) == base),
            };
            if !ok {
                ws.push(Witness::new("value degree", t, fmt_vec(v), format!("degree {base}")));
                break;
            }
        }
        Verdict::from_witnesses(ws)
    }
}

/// Compares an evaluator against the adjacent-swap rule.
pub fn check_alternating(
    space: &GradedSpace,
    arity: usize,
    f: &(impl Fn(&[usize]) -> Vec<Scalar> + Sync),
    sample: Option<(usize, u64)>,
) -> Verdict {
    let tuples: Vec<Vec<usize>> = match sample {
        None => (0..arity).map(|_| 0..space.dim()).multi_cartesian_product().collect(),
        Some((n, seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let canon = canonical_tuples(space, arity);
            (0..n)
                .filter_map(|_| {
                    let mut t = canon.choose(&mut rng)?.clone();
                    if rng.gen_bool(0.3) && arity >= 2 {
                        let i = rng.gen_range(0..arity - 1);
                        if space.is_even(t[i]) {
                            t[i + 1] = t[i];
                        }
                    }
                    t.shuffle(&mut rng);
                    Some(t)
                })
                .collect()
        }
    };
    let failure = tuples.par_iter().find_map_first(|t| {
        if arity == 0 {
            return None;
        }
        let (sorted, sign) = sort_with_sign(t, space);
        let got = f(t);
        let want: Vec<Scalar> = if repeats_even(&sorted, space) {
            got.iter().map(|x| Scalar::zero(x.field())).collect()
        } else {
            f(&sorted).iter().map(|x| x * &sign).collect()
        };
        (got != want).then(|| Witness::new("ε-alternation", t, fmt_vec(&got), fmt_vec(&want)))
    });
    match failure {
        Some(w) => Verdict::fail(w),
        None => Verdict::Pass,
    }
}

/// Bilinear pairing U × U′ → W given on basis pairs.
#[derive(Clone, Debug)]
pub struct Bilinear {
    left: usize,
    right: usize,
    out: usize,
    field: FieldDescriptor,
    table: Vec<Vec<(usize, Scalar)>>,
}

impl Bilinear {
    pub fn new(field: FieldDescriptor, left: usize, right: usize, out: usize, f: impl Fn(usize, usize) -> Vec<Scalar>) -> Self {
        let mut table = Vec::with_capacity(left * right);
        for a in 0..left {
            for b in 0..right {
                let v = f(a, b);
                assert_eq!(v.len(), out, "pairing output length");
                table.push(v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
            }
        }
        Bilinear { left, right, out, field, table }
    }

    /// The form itself, valued in the scalar line.
    pub fn from_form(form: &FormEps) -> Self {
        let n = form.dim();
        Self::new(form.field(), n, n, 1, |a, b| vec![form.get(a, b).clone()])
    }

    /// Multiplication k × k → k.
    pub fn scalar_product(field: FieldDescriptor) -> Self {
        Self::new(field, 1, 1, 1, |_, _| vec![Scalar::one(field)])
    }

    /// Scalar multiplication k × U → U.
    pub fn scalar_left(field: FieldDescriptor, n: usize) -> Self {
        Self::new(field, 1, n, n, |_, b| {
            let mut v = vec![Scalar::zero(field); n];
            v[b] = Scalar::one(field);
            v
        })
    }

    /// (x, v) ↦ ρ(x)(v) given the action matrices of a basis of g.
    pub fn action(field: FieldDescriptor, matrices: &[Matrix], dim_v: usize) -> Self {
        Self::new(field, matrices.len(), dim_v, dim_v, |a, b| matrices[a].column(b))
    }

    pub fn out_dim(&self) -> usize {
        self.out
    }

    pub fn left_dim(&self) -> usize {
        self.left
    }

    pub fn right_dim(&self) -> usize {
        self.right
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut acc = vec![Scalar::zero(self.field); self.out];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let c = xa * yb;
                for (k, t) in &self.table[a * self.right + b] {
                    acc[*k].add_mul(&c, t);
                }
            }
        }
        acc
    }
}

/// f ∧_φ g evaluated on one tuple by the shuffle definition.
pub fn wedge_eval(f: &dyn AltSource, g: &dyn AltSource, phi: &Bilinear, t: &[usize]) -> Vec<Scalar> {
    let (i, j) = (f.arity(), g.arity());
    assert_eq!(t.len(), i + j, "wedge arity mismatch");
    let mut acc = vec![Scalar::zero(f.domain().field()); phi.out_dim()];
    let mut sub_f = Vec::with_capacity(i);
    let mut sub_g = Vec::with_capacity(j);
    for_each_shuffle_signed(&[i, j], t, f.domain(), |img, sign| {
        sub_f.clear();
        sub_f.extend(img[..i].iter().map(|&p| t[p]));
        let fv = f.eval(&sub_f);
        if is_zero_vec(&fv) {
            return;
        }
        sub_g.clear();
        sub_g.extend(img[i..].iter().map(|&p| t[p]));
        let gv = g.eval(&sub_g);
        if is_zero_vec(&gv) {
            return;
        }
        axpy(&mut acc, sign, &phi.apply(&fv, &gv));
    });
    acc
}

fn same_domain(a: &GradedSpace, b: &GradedSpace) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::Invalid("alternating maps on different domains".into()))
    }
}

/// Lazily evaluated f ∧_φ g with memoized canonical values.
pub struct Wedge<'a> {
    f: &'a dyn AltSource,
    g: &'a dyn AltSource,
    phi: &'a Bilinear,
    codomain: Codomain,
    memo: DashMap<Vec<usize>, Vec<Scalar>>,
}

impl<'a> Wedge<'a> {
    pub fn new(f: &'a dyn AltSource, g: &'a dyn AltSource, phi: &'a Bilinear, codomain: Codomain) -> Result<Self> {
        same_domain(f.domain(), g.domain())?;
        if f.codomain().dim() != phi.left_dim() || g.codomain().dim() != phi.right_dim() || codomain.dim() != phi.out_dim() {
            return Err(Error::Shape("pairing does not match the wedge factors".into()));
        }
        Ok(Wedge { f, g, phi, codomain, memo: DashMap::new() })
    }
}

impl AltSource for Wedge<'_> {
    fn domain(&self) -> &GradedSpace {
        self.f.domain()
    }
    fn codomain(&self) -> &Codomain {
        &self.codomain
    }
    fn arity(&self) -> usize {
        self.f.arity() + self.g.arity()
    }
    fn eval_sorted(&self, t: &[usize]) -> Vec<Scalar> {
        if let Some(v) = self.memo.get(t) {
            return v.clone();
        }
        let v = wedge_eval(self.f, self.g, self.phi, t);
        self.memo.insert(t.to_vec(), v.clone());
        v
    }
}

/// f ∧_φ g materialized on every canonical tuple.
pub fn wedge(f: &dyn AltSource, g: &dyn AltSource, phi: &Bilinear, codomain: Codomain) -> Result<AltMap> {
    Ok(materialize(&Wedge::new(f, g, phi, codomain)?))
}

/// N_φ(f) = f ∧_φ f.
pub fn norm(f: &dyn AltSource, phi: &Bilinear, codomain: Codomain) -> Result<AltMap> {
    wedge(f, f, phi, codomain)
}

pub fn materialize(src: &dyn AltSource) -> AltMap {
    AltMap::from_fn(src.domain().clone(), src.codomain().clone(), src.arity(), |t| src.eval_sorted(t))
}

/// Exterior composition f∘g, evaluated per tuple by a dynamic programme over the set of
/// positions not yet assigned to a block. Choosing the next block B out of the remaining
/// positions R fixes both the sign contribution ∏(−ε(t_x,t_y)) for x ∈ R∖B, y ∈ B, x < y and
/// the argument g(t_B) of the next slot of f, so partial contractions of f depend only on R.
pub struct Composer<'a> {
    g: &'a dyn AltSource,
    i: usize,
    j: usize,
    du: usize,
    out: usize,
    f_tensor: Vec<Scalar>,
    codomain: Codomain,
}

impl<'a> Composer<'a> {
    pub fn new(f: &'a dyn AltSource, g: &'a dyn AltSource) -> Result<Self> {
        match g.codomain() {
            Codomain::Space(u) if u == f.domain() => {}
            _ => return Err(Error::Invalid("codomain of the inner map must be the domain of the outer map".into())),
        }
        let (i, j) = (f.arity(), g.arity());
        if i * j > 64 {
            return Err(Error::Invalid("composition arity above 64".into()));
        }
        let du = f.domain().dim();
        let out = f.codomain().dim();
        let mut f_tensor = Vec::with_capacity(du.pow(i as u32) * out);
        for idx in (0..i).map(|_| 0..du).multi_cartesian_product() {
            f_tensor.extend(f.eval(&idx));
        }
        if i == 0 {
            f_tensor = f.eval(&[]);
        }
        Ok(Composer { g, i, j, du, out, f_tensor, codomain: f.codomain().clone() })
    }

    pub fn eval_tuple(&self, t: &[usize]) -> Vec<Scalar> {
        let (i, j, du) = (self.i, self.j, self.du);
        let n = t.len();
        assert_eq!(n, i * j, "composition arity mismatch");
        let field = self.codomain.field();
        let space = self.g.domain();
        let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut states: HashMap<u64, Vec<Scalar>> = HashMap::new();
        states.insert(full, self.f_tensor.clone());
        let mut g_cache: HashMap<u64, Vec<Scalar>> = HashMap::new();
        let mut remaining_slots = i;
        while remaining_slots > 0 {
            let stride = du.pow(remaining_slots as u32 - 1) * self.out;
            let mut next: HashMap<u64, Vec<Scalar>> = HashMap::new();
            for (mask, tensor) in &states {
                let positions: Vec<usize> = (0..n).filter(|&p| mask >> p & 1 == 1).collect();
                for chosen in positions.iter().copied().combinations(j) {
                    let bmask = chosen.iter().fold(0u64, |m, &p| m | 1 << p);
                    let y = g_cache.entry(bmask).or_insert_with(|| {
                        let sub: Vec<usize> = chosen.iter().map(|&p| t[p]).collect();
                        self.g.eval(&sub)
                    });
                    if is_zero_vec(y) {
                        continue;
                    }
                    let mut sign = Scalar::one(field);
                    for &x in &positions {
                        if bmask >> x & 1 == 1 {
                            continue;
                        }
                        for &p in &chosen {
                            if x < p {
                                sign = &sign * space.neg_eps(t[x], t[p]);
                            }
                        }
                    }
                    let entry = next.entry(mask & !bmask).or_insert_with(|| vec![Scalar::zero(field); stride]);
                    for (a, ya) in y.iter().enumerate().take(du) {
                        if ya.is_zero() {
                            continue;
                        }
                        let coef = &sign * ya;
                        let block = &tensor[a * stride..(a + 1) * stride];
                        for (e, x) in entry.iter_mut().zip(block) {
                            e.add_mul(&coef, x);
                        }
                    }
                }
            }
            states = next;
            remaining_slots -= 1;
        }
        states.remove(&0).unwrap_or_else(|| self.codomain.zero())
    }
}

impl AltSource for Composer<'_> {
    fn domain(&self) -> &GradedSpace {
        self.g.domain()
    }
    fn codomain(&self) -> &Codomain {
        &self.codomain
    }
    fn arity(&self) -> usize {
        self.i * self.j
    }
    fn eval_sorted(&self, t: &[usize]) -> Vec<Scalar> {
        self.eval_tuple(t)
    }
}

pub fn compose(f: &dyn AltSource, g: &dyn AltSource) -> Result<AltMap> {
    Ok(materialize(&Composer::new(f, g)?))
}

/// f∘g on one tuple straight from the shuffle sum, evaluating f multilinearly on the
/// block values. Slow; kept as a reference path for the dynamic programme.
pub fn compose_by_shuffles(f: &dyn AltSource, g: &dyn AltSource, t: &[usize]) -> Vec<Scalar> {
    let (i, j) = (f.arity(), g.arity());
    let sizes = vec![j; i];
    let mut acc = f.codomain().zero();
    for_each_shuffle_signed(&sizes, t, g.domain(), |img, sign| {
        let args: Vec<Vec<Scalar>> = (0..i)
            .map(|b| {
                let sub: Vec<usize> = img[b * j..(b + 1) * j].iter().map(|&p| t[p]).collect();
                g.eval(&sub)
            })
            .collect();
        if args.iter().any(|a| is_zero_vec(a)) {
            return;
        }
        axpy(&mut acc, sign, &f.eval_vectors(&args));
    });
    acc
}

/// Compares two maps on the given canonical tuples; the witness carries the first mismatch.
pub fn compare_on(lhs: &dyn AltSource, rhs: &dyn AltSource, tuples: &[Vec<usize>]) -> Verdict {
    let failure = tuples.par_iter().find_map_first(|t| {
        let (a, b) = (lhs.eval_sorted(t), rhs.eval_sorted(t));
        (a != b).then(|| Witness::new("value", t, fmt_vec(&a), fmt_vec(&b)))
    });
    match failure {
        Some(w) => Verdict::fail(w),
        None => Verdict::Pass,
    }
}

/// A seeded random sample of canonical tuples (with replacement).
pub fn sample_tuples(space: &GradedSpace, arity: usize, n: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = canonical_tuples(space, arity);
    if all.is_empty() {
        return all;
    }
    (0..n).map(|_| all[rng.gen_range(0..all.len())].clone()).collect()
}

/// An AltMap scaled by a constant, without materializing.
pub struct Scaled<'a> {
    pub inner: &'a dyn AltSource,
    pub factor: Scalar,
}

impl AltSource for Scaled<'_> {
    fn domain(&self) -> &GradedSpace {
        self.inner.domain()
    }
    fn codomain(&self) -> &Codomain {
        self.inner.codomain()
    }
    fn arity(&self) -> usize {
        self.inner.arity()
    }
    fn eval_sorted(&self, t: &[usize]) -> Vec<Scalar> {
        self.inner.eval_sorted(t).iter().map(|x| x * &self.factor).collect()
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::grading::CommutationFactor;

    const Q: FieldDescriptor = FieldDescriptor::Rational;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(Q, n)
    }

    fn space(degs: &[i64]) -> GradedSpace {
        let cf = Arc::new(CommutationFactor::super_sign(Q));
        let names: Vec<String> = (0..degs.len()).map(|i| format!("e{i}")).collect();
        let ds: Vec<[i64; 1]> = degs.iter().map(|&d| [d]).collect();
        let items: Vec<(&str, &[i64])> = names.iter().zip(&ds).map(|(n, d)| (n.as_str(), &d[..])).collect();
        GradedSpace::from_degrees(cf, &items).unwrap()
    }

    #[test]
    fn canonical_counts() {
        let v = space(&[1, 1, 1, 1]);
        assert_eq!(canonical_tuples(&v, 12).len(), 455);
        assert_eq!(canonical_count(&v, 12), 455);
        assert_eq!(canonical_count(&v, 5), 56);
        let w = space(&[0, 0, 1]);
        assert_eq!(canonical_tuples(&w, 3).len(), canonical_count(&w, 3));
    }

    #[test]
    fn one_forms_wedge_is_determinant() {
        let v = space(&[0, 0]);
        let line = Codomain::Scalars(Q);
        let alpha = AltMap::from_entries(v.clone(), line.clone(), 1, [(vec![0], vec![s(2)]), (vec![1], vec![s(3)])]).unwrap();
        let beta = AltMap::from_entries(v.clone(), line.clone(), 1, [(vec![0], vec![s(5)]), (vec![1], vec![s(7)])]).unwrap();
        let w = wedge(&alpha, &beta, &Bilinear::scalar_product(Q), line).unwrap();
        assert_eq!(w.eval(&[0, 1]), vec![s(2 * 7 - 3 * 5)]);
        assert_eq!(w.eval(&[1, 0]), vec![s(-(2 * 7 - 3 * 5))]);
    }

    #[test]
    fn repeated_even_index_is_zero() {
        let v = space(&[0, 1]);
        let line = Codomain::Scalars(Q);
        let f = AltMap::from_entries(v, line, 2, [(vec![0, 1], vec![s(1)]), (vec![1, 1], vec![s(4)])]).unwrap();
        assert_eq!(f.eval(&[0, 0]), vec![s(0)]);
        assert_eq!(f.eval(&[1, 1]), vec![s(4)]);
        assert_eq!(f.eval(&[1, 0]), vec![s(-1)]);
    }

    #[test]
    fn non_alternating_evaluator_rejected() {
        let v = space(&[0, 0]);
        let r = AltMap::from_fn_checked(v, Codomain::Scalars(Q), 2, |t| vec![s(t[0] as i64 + 1)], None);
        assert!(r.is_err());
    }

    #[test]
    fn identity_outside_is_neutral() {
        let v = space(&[0, 1, 1]);
        let g = AltMap::from_fn(v.clone(), Codomain::Space(v.clone()), 2, |t| vec![s(t[0] as i64), s(1 + t[1] as i64), s(2)]);
        let id = AltMap::identity(&v);
        assert_eq!(compose(&id, &g).unwrap(), g);
    }

    #[test]
    fn identity_inside_symmetrizes() {
        // singleton blocks: every permutation is a shuffle, so f∘Id = i!·f
        let v = space(&[0, 1, 1]);
        let f = AltMap::from_fn(v.clone(), Codomain::Scalars(Q), 2, |t| vec![s((t[0] * 3 + t[1] + 1) as i64)]);
        let id = AltMap::identity(&v);
        assert_eq!(compose(&f, &id).unwrap(), f.scale(&s(2)));
    }

    #[test]
    fn compose_paths_agree() {
        let v = space(&[0, 1, 1]);
        let g = AltMap::from_fn(v.clone(), Codomain::Space(v.clone()), 2, |t| {
            vec![s(t[0] as i64), s(1 + t[1] as i64), s(2)]
        });
        let f = AltMap::from_fn(v.clone(), Codomain::Scalars(Q), 2, |t| vec![s((2 * t[0] + t[1]) as i64 - 1)]);
        let comp = Composer::new(&f, &g).unwrap();
        for t in canonical_tuples(&v, 4) {
            assert_eq!(comp.eval_tuple(&t), compose_by_shuffles(&f, &g, &t), "tuple {t:?}");
        }
    }
}
