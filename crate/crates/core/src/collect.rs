//! Commutator collection driven by the Magnus image.
//!
//! A word `w` is rewritten as an ordered product of generators and
//! left-normed basic commutators, one weight at a time. With `P` the product
//! collected so far, the residual `r = P^{-1} w` is congruent to 1 modulo
//! weight `t`; its weight-`t` part splits by letter support, and on a
//! support `S` with minimum `m` the left-normed brackets
//! `[[y_m, y_{s_2}], ..., y_{s_t}]` form a basis whose only monomial starting
//! with `y_m` is `y_m y_{s_2} ... y_{s_t}`. Exponents are therefore read off
//! those anchored coefficients, and the reconstructed Lie element is compared
//! with the residual to certify that it really lies in the span.
//!
//! Every basic commutator `b` has image exactly `1 + L_b` with `L_b^2 = 0`,
//! so `b^e` has image `1 + e L_b` and inverse `1 - e L_b`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{AlgebraContext, AlgebraElement, MaskedElement, Monomial};
use crate::error::GroupError;
use crate::group::{alpha, image_order, lie_monomial, magnus};
use crate::word::GroupWord;

/// `[[x_{i_1}, x_{i_2}], ..., x_{i_t}]` with distinct letters, `t >= 2`, and
/// `i_1` the least letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasicCommutator {
    arrangement: Vec<usize>,
}

impl BasicCommutator {
    pub fn new(arrangement: Vec<usize>) -> Option<Self> {
        if arrangement.len() < 2 {
            return None;
        }
        let first = arrangement[0];
        let mut seen = std::collections::BTreeSet::new();
        let ok = arrangement.iter().all(|&i| i >= 1 && seen.insert(i))
            && arrangement.iter().all(|&i| i >= first);
        ok.then_some(Self { arrangement })
    }

    pub fn arrangement(&self) -> &[usize] {
        &self.arrangement
    }

    pub fn weight(&self) -> usize {
        self.arrangement.len()
    }

    pub fn support(&self) -> Vec<usize> {
        let mut s = self.arrangement.clone();
        s.sort_unstable();
        s
    }

    pub fn word(&self) -> GroupWord {
        GroupWord::left_normed(&self.arrangement)
    }

    /// Exact Magnus image `1 + [[y_{i_1}, y_{i_2}], ..., y_{i_t}]`.
    pub fn image(&self, ctx: AlgebraContext) -> Result<AlgebraElement, GroupError> {
        Ok(&AlgebraElement::one(ctx) + &lie_monomial(&self.arrangement, ctx)?)
    }

    /// Every basic commutator on exactly the letters of `support`, in
    /// arrangement order.
    pub fn on_support(support: &[usize]) -> Vec<BasicCommutator> {
        let mut s = support.to_vec();
        s.sort_unstable();
        let (first, rest) = match s.split_first() {
            Some((f, r)) if !r.is_empty() => (*f, r.to_vec()),
            _ => return Vec::new(),
        };
        let mut out = Vec::new();
        permutations(&rest, &mut Vec::new(), &mut vec![false; rest.len()], &mut |p| {
            let mut a = vec![first];
            a.extend_from_slice(p);
            out.push(BasicCommutator { arrangement: a });
        });
        out
    }
}

fn permutations(items: &[usize], cur: &mut Vec<usize>, used: &mut [bool], f: &mut impl FnMut(&[usize])) {
    if cur.len() == items.len() {
        f(cur);
        return;
    }
    for k in 0..items.len() {
        if !used[k] {
            used[k] = true;
            cur.push(items[k]);
            permutations(items, cur, used, f);
            cur.pop();
            used[k] = false;
        }
    }
}

impl fmt::Display for BasicCommutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())
    }
}

/// A factor of a collected product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Generator(usize),
    Commutator(BasicCommutator),
}

impl Factor {
    pub fn weight(&self) -> usize {
        match self {
            Factor::Generator(_) => 1,
            Factor::Commutator(b) => b.weight(),
        }
    }

    pub fn support(&self) -> Vec<usize> {
        match self {
            Factor::Generator(i) => vec![*i],
            Factor::Commutator(b) => b.support(),
        }
    }

    pub fn arrangement(&self) -> Vec<usize> {
        match self {
            Factor::Generator(i) => vec![*i],
            Factor::Commutator(b) => b.arrangement().to_vec(),
        }
    }

    pub fn word(&self) -> GroupWord {
        match self {
            Factor::Generator(i) => GroupWord::Generator(*i),
            Factor::Commutator(b) => b.word(),
        }
    }

    /// The Lie element `L` with image `1 + L`.
    fn lie_part(&self, ctx: AlgebraContext) -> Result<AlgebraElement, GroupError> {
        lie_monomial(&self.arrangement(), ctx)
    }
}

impl Ord for Factor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.support().cmp(&other.support()))
            .then_with(|| self.arrangement().cmp(&other.arrangement()))
    }
}

impl PartialOrd for Factor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An ordered product `f_1^{e_1} f_2^{e_2} ...` of factors with nonzero
/// exponents.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(Factor, i64)>,
}

impl Factorization {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn factors(&self) -> &[(Factor, i64)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    /// Appends a factor; zero exponents are dropped.
    pub fn push(&mut self, factor: Factor, exponent: i64) {
        if exponent != 0 {
            self.factors.push((factor, exponent));
        }
    }

    /// The product as a group word.
    pub fn to_word(&self) -> GroupWord {
        if self.factors.is_empty() {
            return GroupWord::Identity;
        }
        GroupWord::product(self.factors.iter().map(|(f, e)| match e {
            1 => f.word(),
            e => f.word().pow(*e),
        }))
    }

    /// True when factors appear in canonical order.
    pub fn is_canonical(&self) -> bool {
        self.factors.windows(2).all(|w| w[0].0 < w[1].0)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (k, (factor, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("·")?;
            }
            write!(f, "{}", factor.word())?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Collects `w` into canonical basic-commutator form.
pub fn collect(w: &GroupWord, ctx: AlgebraContext) -> Result<Factorization, GroupError> {
    collect_with_progress(w, ctx, |_, _| {})
}

/// As [`collect`], calling `progress(weight, factors_so_far)` after each
/// weight is processed.
pub fn collect_with_progress(
    w: &GroupWord,
    ctx: AlgebraContext,
    progress: impl FnMut(usize, usize),
) -> Result<Factorization, GroupError> {
    let image = magnus(w, ctx)?.image().clone();
    collect_image(&image, progress)
}

/// Collection starting from a Magnus image with constant term 1.
pub fn collect_image(
    image: &AlgebraElement,
    mut progress: impl FnMut(usize, usize),
) -> Result<Factorization, GroupError> {
    let ctx = image.context();
    let n = ctx.n_letters();
    let mut residual = MaskedElement::new(image);
    let mut out = Factorization::new();
    let mut order_cache: BTreeMap<usize, u64> = BTreeMap::new();

    for weight in 1..=n {
        if residual.is_one() {
            break;
        }
        let layer = residual.homogeneous_part(weight);
        let mut by_support: BTreeMap<Vec<usize>, Vec<(Monomial, u32)>> = BTreeMap::new();
        for (m, c) in layer.terms() {
            by_support.entry(m.support()).or_default().push((m.clone(), c));
        }

        for (support, terms) in by_support {
            let anchor = support[0];
            let component =
                AlgebraElement::from_terms(ctx, terms.iter().map(|(m, c)| (m.letters().collect::<Vec<_>>(), *c as i64)))?;
            let mut rebuilt = AlgebraElement::zero(ctx);
            let mut found = Vec::new();
            // terms are already in lex order, so anchored ones come out in
            // arrangement order
            for (m, c) in &terms {
                if m.letters().next() != Some(anchor) {
                    continue;
                }
                let factor = if weight == 1 {
                    Factor::Generator(anchor)
                } else {
                    Factor::Commutator(BasicCommutator {
                        arrangement: m.letters().collect(),
                    })
                };
                let lie = factor.lie_part(ctx)?;
                rebuilt = AlgebraElement::combine(1, &rebuilt, *c as i64, &lie)?;
                found.push((factor, lie, *c as i64));
            }
            if rebuilt != component {
                return Err(GroupError::ResidueNotInLieSpan {
                    weight,
                    support,
                    residual: component,
                });
            }
            for (factor, lie, e) in found {
                let order = match order_cache.get(&weight) {
                    Some(&o) => o,
                    None => {
                        let o = image_order(&(&AlgebraElement::one(ctx) + &lie))?;
                        order_cache.insert(weight, o);
                        o
                    }
                };
                let e = e.rem_euclid(order as i64);
                if e == 0 {
                    continue;
                }
                residual.mul_left(&AlgebraElement::combine(1, &AlgebraElement::one(ctx), -e, &lie)?);
                out.push(factor, e);
            }
        }
        if residual.min_weight().is_some_and(|m| m <= weight) {
            return Err(GroupError::NonTermination(residual.to_element()));
        }
        progress(weight, out.len());
    }

    if !residual.is_one() {
        return Err(GroupError::NonTermination(residual.to_element()));
    }
    Ok(out)
}


/// Collected form of `alpha_n^k`.
pub fn power_formula(n: usize, k: u64, ctx: AlgebraContext) -> Result<Factorization, GroupError> {
    collect(&alpha(n).pow(k as i64), ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::equal;

    fn ctx(n: usize) -> AlgebraContext {
        AlgebraContext::mod4(n).unwrap()
    }

    #[test]
    fn basic_commutator_shape() {
        assert!(BasicCommutator::new(vec![2, 1]).is_none());
        assert!(BasicCommutator::new(vec![1]).is_none());
        assert!(BasicCommutator::new(vec![1, 2, 1]).is_none());
        let b = BasicCommutator::new(vec![1, 3, 2]).unwrap();
        assert_eq!(b.weight(), 3);
        assert_eq!(b.support(), vec![1, 2, 3]);
        assert_eq!(b.to_string(), "[[x1,x3],x2]");
        let all: Vec<String> = BasicCommutator::on_support(&[3, 1, 2])
            .iter()
            .map(|b| b.to_string())
            .collect();
        assert_eq!(all, ["[[x1,x2],x3]", "[[x1,x3],x2]"]);
        assert_eq!(BasicCommutator::on_support(&[1, 2, 3, 4]).len(), 6);
    }

    #[test]
    fn commutator_image_examples() {
        let c = ctx(3);
        let b = BasicCommutator::new(vec![1, 2]).unwrap();
        assert_eq!(b.image(c).unwrap().to_string(), "1 + y1.y2 + 3*y2.y1");
        let b = BasicCommutator::new(vec![1, 3, 2]).unwrap();
        assert_eq!(&b.image(c).unwrap(), magnus(&b.word(), c).unwrap().image());
    }

    #[test]
    fn eq24() {
        let f = power_formula(3, 4, ctx(3)).unwrap();
        assert_eq!(f.to_string(), "[x1,x2]^2·[x1,x3]^2·[x2,x3]^2·[[x1,x3],x2]^2");
        assert!(f.is_canonical());
    }

    #[test]
    fn small_cases() {
        assert_eq!(power_formula(2, 4, ctx(2)).unwrap().to_string(), "[x1,x2]^2");
        assert!(power_formula(1, 4, ctx(1)).unwrap().is_empty());
        let w = GroupWord::parse("x1 x1^-1", 2).unwrap();
        assert!(collect(&w, ctx(2)).unwrap().is_empty());
        let w = GroupWord::parse("x2 x1", 2).unwrap();
        let f = collect(&w, ctx(2)).unwrap();
        assert_eq!(f.to_string(), "x1·x2·[x1,x2]^3");
        assert!(equal(&f.to_word(), &w, ctx(2)).unwrap());
    }

    #[test]
    fn exponents_are_reduced() {
        let w = GroupWord::parse("x1^-1", 2).unwrap();
        assert_eq!(collect(&w, ctx(2)).unwrap().to_string(), "x1^3");
        let c = AlgebraContext::new(2, 9).unwrap();
        let w = GroupWord::parse("x2^-1 x1^-2", 2).unwrap();
        let f = collect(&w, c).unwrap();
        assert!(f.factors().iter().all(|(_, e)| (1..9).contains(e)));
        assert!(equal(&f.to_word(), &w, c).unwrap());
    }

    #[test]
    fn progress_reports_each_weight() {
        let mut seen = Vec::new();
        collect_with_progress(&alpha(3).pow(4), ctx(3), |w, k| seen.push((w, k))).unwrap();
        assert_eq!(seen, vec![(1, 0), (2, 3), (3, 4)]);
    }

    #[test]
    fn rendered_factorization_parses_back() {
        let f = power_formula(4, 4, ctx(4)).unwrap();
        let w = GroupWord::parse(&f.to_string(), 4).unwrap();
        assert!(equal(&w, &alpha(4).pow(4), ctx(4)).unwrap());
    }

    #[test]
    fn non_group_like_residue_is_rejected() {
        let c = ctx(2);
        // 1 + y1.y2 is not the image of any group element
        let bogus = AlgebraElement::from_terms(c, [(vec![], 1), (vec![1, 2], 1)]).unwrap();
        match collect_image(&bogus, |_, _| {}) {
            Err(GroupError::ResidueNotInLieSpan { weight, support, .. }) => {
                assert_eq!((weight, support), (2, vec![1, 2]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
