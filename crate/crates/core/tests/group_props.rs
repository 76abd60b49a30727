use cohen::collect::collect_image;
use cohen::group::lie_monomial;
use cohen::{
    alpha, collect, equal, face_group, in_hn, magnus, AlgebraContext, AlgebraElement, BasicCommutator, GroupWord,
};
use proptest::prelude::*;

fn leaf(n: usize) -> impl Strategy<Value = GroupWord> {
    prop_oneof![
        8 => (1..=n).prop_map(GroupWord::Generator),
        1 => Just(GroupWord::Identity),
    ]
}

/// Words over `n` letters with a bounded number of generator occurrences.
fn word(n: usize) -> impl Strategy<Value = GroupWord> {
    leaf(n)
        .prop_recursive(3, 12, 4, move |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 1..4).prop_map(GroupWord::Product),
                inner.clone().prop_map(GroupWord::inverse),
                (inner.clone(), -3i64..=5).prop_map(|(w, k)| w.pow(k)),
                (inner.clone(), inner).prop_map(|(a, b)| GroupWord::commutator(a, b)),
            ]
        })
        .prop_filter("at most 12 letters", |w| w.letter_count() <= 12)
}

fn word_in_context() -> impl Strategy<Value = (GroupWord, AlgebraContext)> {
    (1usize..=5).prop_flat_map(|n| (word(n), Just(AlgebraContext::mod4(n).unwrap())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn collection_round_trips((w, ctx) in word_in_context()) {
        let f = collect(&w, ctx).unwrap();
        prop_assert!(f.is_canonical());
        prop_assert!(f.factors().iter().all(|(_, e)| (1..4).contains(e)));
        prop_assert!(equal(&f.to_word(), &w, ctx).unwrap());
        let identity = equal(&w, &GroupWord::Identity, ctx).unwrap();
        prop_assert_eq!(identity, f.is_empty());
    }

    #[test]
    fn face_maps_commute_with_magnus((w, ctx) in word_in_context(), i in 1usize..=5) {
        prop_assume!(ctx.n_letters() >= 2);
        let i = (i - 1) % ctx.n_letters() + 1;
        let lower = AlgebraContext::mod4(ctx.n_letters() - 1).unwrap();
        let via_group = magnus(&face_group(i, &w, ctx).unwrap(), lower).unwrap();
        let via_algebra = magnus(&w, ctx).unwrap().image().face(i).unwrap();
        prop_assert_eq!(via_group.image(), &via_algebra);
    }

    #[test]
    fn inverse_and_order((w, ctx) in word_in_context()) {
        let g = magnus(&w, ctx).unwrap();
        prop_assert!(g.mul(&g.inverse()).unwrap().is_identity());
        let order = cohen::element_order(&w, ctx).unwrap();
        prop_assert!(magnus(&w.clone().pow(order as i64), ctx).unwrap().is_identity());
        prop_assert!(order.is_power_of_two() && order <= 16);
    }

    #[test]
    fn rendered_factorization_reparses((w, ctx) in word_in_context()) {
        let f = collect(&w, ctx).unwrap();
        let back = GroupWord::parse(&f.to_string(), ctx.n_letters()).unwrap();
        prop_assert!(equal(&back, &w, ctx).unwrap());
    }
}

#[test]
fn generator_fourth_powers_are_trivial() {
    for n in 1..=5 {
        let ctx = AlgebraContext::mod4(n).unwrap();
        for i in 1..=n {
            assert!(magnus(&GroupWord::Generator(i).pow(4), ctx).unwrap().is_identity());
        }
    }
}

/// Every left-normed sequence of length 2..=4 over `1..=n`, repeats allowed.
fn sequences(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (1..=n).map(|i| vec![i]).collect();
    for _ in 2..=4 {
        frontier = frontier
            .iter()
            .flat_map(|s| (1..=n).map(move |i| [s.as_slice(), &[i]].concat()))
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

#[test]
fn repeated_letter_commutators_are_trivial() {
    for n in 1..=5 {
        let ctx = AlgebraContext::mod4(n).unwrap();
        for s in sequences(n) {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() < s.len() {
                let w = GroupWord::left_normed(&s);
                assert!(magnus(&w, ctx).unwrap().is_identity(), "{w}");
            }
        }
    }
}

#[test]
fn commutator_image_matches_magnus() {
    let mut checked = 0;
    for n in 2..=5 {
        let ctx = AlgebraContext::mod4(n).unwrap();
        for s in sequences(n) {
            if let Some(b) = BasicCommutator::new(s) {
                assert_eq!(&b.image(ctx).unwrap(), magnus(&b.word(), ctx).unwrap().image(), "{b}");
                checked += 1;
            }
        }
    }
    // n = 2..=5 contribute 1 + 5 + 20 + 60
    assert_eq!(checked, 86);
}

#[test]
fn hn_is_closed_under_products_and_inverses() {
    for n in 2..=5 {
        let ctx = AlgebraContext::mod4(n).unwrap();
        let full: Vec<usize> = (1..=n).collect();
        let mut members = vec![alpha(n), alpha(n).pow(2), alpha(n).pow(-1)];
        members.extend(
            BasicCommutator::on_support(&full)
                .into_iter()
                .take(3)
                .map(|b| b.word()),
        );
        for a in &members {
            assert!(in_hn(a, ctx).unwrap(), "{a}");
            assert!(in_hn(&a.clone().inverse(), ctx).unwrap());
            for b in &members {
                let p = GroupWord::product([a.clone(), b.clone()]);
                assert!(in_hn(&p, ctx).unwrap(), "{p}");
            }
        }
        // d_1 sends x1 x2 to x1 while d_n fixes it
        if n >= 3 {
            assert!(!in_hn(&GroupWord::parse("x1 x2", n).unwrap(), ctx).unwrap());
        }
    }
}

/// All exponent vectors over `Z/4` for the left-normed basis on `support`
/// that reproduce `target`, found by exhaustive search.
fn brute_force_exponents(support: &[usize], target: &AlgebraElement, ctx: AlgebraContext) -> Vec<Vec<i64>> {
    let basis: Vec<AlgebraElement> = BasicCommutator::on_support(support)
        .iter()
        .map(|b| lie_monomial(b.arrangement(), ctx).unwrap())
        .collect();
    let k = basis.len();
    let mut hits = Vec::new();
    for code in 0..4usize.pow(k as u32) {
        let e: Vec<i64> = (0..k).map(|j| ((code >> (2 * j)) & 3) as i64).collect();
        let sum = basis
            .iter()
            .zip(&e)
            .fold(AlgebraElement::zero(ctx), |acc, (b, &c)| AlgebraElement::combine(1, &acc, c, b).unwrap());
        if &sum == target {
            hits.push(e);
        }
    }
    hits
}

#[test]
fn anchored_read_off_matches_exhaustive_solve() {
    let ctx = AlgebraContext::mod4(4).unwrap();
    for support in [vec![1, 2, 3], vec![2, 3, 4], vec![1, 2, 3, 4]] {
        let basis = BasicCommutator::on_support(&support);
        for seed in 0..12i64 {
            let e: Vec<i64> = (0..basis.len() as i64).map(|j| (seed * 7 + j * j * 3 + j) % 4).collect();
            let lie = basis.iter().zip(&e).fold(AlgebraElement::zero(ctx), |acc, (b, &c)| {
                AlgebraElement::combine(1, &acc, c, &lie_monomial(b.arrangement(), ctx).unwrap()).unwrap()
            });
            let hits = brute_force_exponents(&support, &lie, ctx);
            assert_eq!(hits, vec![e.clone()], "support {support:?}");

            let image = &AlgebraElement::one(ctx) + &lie;
            let f = collect_image(&image, |_, _| {}).unwrap();
            let collected: Vec<i64> = basis
                .iter()
                .map(|b| {
                    f.factors()
                        .iter()
                        .find(|(fac, _)| fac.arrangement() == b.arrangement())
                        .map_or(0, |(_, x)| *x)
                })
                .collect();
            assert_eq!(collected, e);
        }
    }
}
