//! Acceptance criteria, one line of output per criterion.
//!
//! Run with `cargo test -p cohen-cli --test acceptance -- --nocapture` to
//! see the report.

use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use cohen::catalog::{self, classify_lemma_3_4, sigma_bar};
use cohen::steenrod::{binom_mod2, gamma_mult, sq_on_power, DividedClass, ProjectiveClass};
use cohen::{
    alpha, collect, equal, in_hn, magnus, AlgebraContext, AlgebraElement, BasicCommutator, GroupError, GroupWord,
};
use cohen_cli::{run, EXIT_OK};

type Check = fn() -> Result<(), String>;

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("cohen").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap().trim_end().to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn el(ctx: AlgebraContext, terms: &[(&[usize], i64)]) -> AlgebraElement {
    AlgebraElement::from_terms(ctx, terms.iter().map(|(w, c)| (w.to_vec(), *c))).unwrap()
}

fn eq24_reproduction() -> Result<(), String> {
    let (code, out) = cli(&["alpha-power", "--n", "3", "--k", "4"]);
    ensure(
        code == EXIT_OK && out == "[x1,x2]^2·[x1,x3]^2·[x2,x3]^2·[[x1,x3],x2]^2",
        || format!("alpha-power printed {out:?} (exit {code})"),
    )?;
    let (code, out) = cli(&["verify", "--check", "eq24"]);
    ensure(code == EXIT_OK && out == "true", || format!("verify eq24: {out} (exit {code})"))?;

    let ctx = AlgebraContext::mod4(3).unwrap();
    let s1 = el(ctx, &[(&[1], 1), (&[2], 1), (&[3], 1)]);
    let s2 = el(ctx, &[(&[1, 2], 1), (&[1, 3], 1), (&[2, 3], 1)]);
    let inner = &(&(&s1 * &s1) + &(&s1 * &s2)) + &(&s2 * &s1);
    let expected = &AlgebraElement::one(ctx) + &inner.scale(2);
    let image = magnus(&alpha(3).pow(4), ctx).map_err(|e| e.to_string())?;
    let got: Vec<_> = image.image().terms().map(|(m, c)| (m.clone(), c)).collect();
    let want: Vec<_> = expected.terms().map(|(m, c)| (m.clone(), c)).collect();
    ensure(got == want, || format!("image {} != {}", image.image(), expected))
}

fn nilpotence_and_torsion() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(0x4a11);
    let mut cases = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=6);
        let ctx = AlgebraContext::mod4(n).unwrap();
        let random = |rng: &mut StdRng, augmented: bool| {
            let k = rng.gen_range(1..=6);
            let terms: Vec<(Vec<usize>, i64)> = (0..k)
                .map(|_| {
                    let len = rng.gen_range(usize::from(augmented)..=n);
                    let mut letters: Vec<usize> = (1..=n).collect();
                    for i in (1..letters.len()).rev() {
                        letters.swap(i, rng.gen_range(0..=i));
                    }
                    letters.truncate(len);
                    (letters, rng.gen_range(1..4))
                })
                .collect();
            AlgebraElement::from_terms(ctx, terms).unwrap()
        };
        let product = (0..=n).fold(AlgebraElement::one(ctx), |acc, _| &acc * &random(&mut rng, true));
        ensure(product.is_zero(), || format!("product of {} augmented factors in A_{n} is {product}", n + 1))?;
        let a = random(&mut rng, false);
        ensure(a.scale(4).is_zero(), || format!("4·({a}) != 0"))?;
        cases += 1;
    }
    ensure(cases >= 1000, || format!("only {cases} cases"))
}

fn relations_well_defined() -> Result<(), String> {
    for n in 1..=5 {
        let ctx = AlgebraContext::mod4(n).unwrap();
        for i in 1..=n {
            let w = GroupWord::Generator(i).pow(4);
            ensure(magnus(&w, ctx).unwrap().is_identity(), || format!("{w} != 1 in K_{n}"))?;
        }
        let mut frontier: Vec<Vec<usize>> = (1..=n).map(|i| vec![i]).collect();
        for _ in 2..=4 {
            frontier = frontier
                .iter()
                .flat_map(|s| (1..=n).map(move |i| [s.as_slice(), &[i]].concat()))
                .collect();
            for s in &frontier {
                let mut d = s.clone();
                d.sort_unstable();
                d.dedup();
                if d.len() == s.len() {
                    continue;
                }
                let w = GroupWord::left_normed(s);
                ensure(magnus(&w, ctx).unwrap().is_identity(), || format!("{w} != 1 in K_{n}"))?;
            }
        }
    }
    Ok(())
}

/// Random word with at most `budget` generator occurrences.
fn random_word(rng: &mut StdRng, n: usize, budget: usize) -> GroupWord {
    if budget < 4 || rng.gen_bool(0.7) {
        let len = rng.gen_range(1..=budget.max(1));
        return GroupWord::product((0..len).map(|_| {
            let g = GroupWord::Generator(rng.gen_range(1..=n));
            if rng.gen_bool(0.3) {
                g.inverse()
            } else {
                g
            }
        }));
    }
    let half = budget / 2;
    let a = rng.gen_range(1..half);
    let b = rng.gen_range(1..=half - a);
    GroupWord::commutator(random_word(rng, n, a), random_word(rng, n, b))
}

/// `e(x1 x2)^4` in `A_2` by expanding the 4-fold product term by term.
fn alpha2_fourth_by_expansion() -> AlgebraElement {
    let ctx = AlgebraContext::mod4(2).unwrap();
    let factor: [&[usize]; 4] = [&[], &[1], &[2], &[1, 2]];
    let mut terms = Vec::new();
    for code in 0..4usize.pow(4) {
        let word: Vec<usize> = (0..4).flat_map(|k| factor[(code >> (2 * k)) & 3].iter().copied()).collect();
        terms.push((word, 1));
    }
    AlgebraElement::from_terms(ctx, terms).unwrap()
}

fn collection_round_trip() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(0xc011ec7);
    for (n, count) in [(4, 200), (5, 100)] {
        let ctx = AlgebraContext::mod4(n).unwrap();
        for _ in 0..count {
            let w = random_word(&mut rng, n, 12);
            ensure(w.letter_count() <= 12, || format!("{w} too long"))?;
            let f = match collect(&w, ctx) {
                Ok(f) => f,
                Err(e @ GroupError::ResidueNotInLieSpan { .. }) => return Err(format!("{w}: {e}")),
                Err(e) => return Err(format!("{w}: {e}")),
            };
            ensure(equal(&f.to_word(), &w, ctx).unwrap(), || format!("{w} collected to {f}, images differ"))?;
        }
    }
    let ctx = AlgebraContext::mod4(2).unwrap();
    let oracle = alpha2_fourth_by_expansion();
    let expected = el(ctx, &[(&[], 1), (&[1, 2], 2), (&[2, 1], 2)]);
    ensure(oracle == expected, || format!("expansion oracle gave {oracle}"))?;
    let f = collect(&alpha(2).pow(4), ctx).map_err(|e| e.to_string())?;
    ensure(f.to_string() == "[x1,x2]^2", || format!("alpha_2^4 collected to {f}"))?;
    let image = magnus(&f.to_word(), ctx).unwrap();
    ensure(image.image() == &oracle, || format!("[x1,x2]^2 has image {}", image.image()))
}

fn shuffle_identity() -> Result<(), String> {
    let (code, out) = cli(&["verify", "--check", "shuffle"]);
    ensure(code == EXIT_OK && out == "true", || format!("verify shuffle: {out} (exit {code})"))
}

fn hn_membership() -> Result<(), String> {
    for n in 2..=6 {
        let ctx = AlgebraContext::mod4(n).unwrap();
        ensure(in_hn(&alpha(n), ctx).unwrap(), || format!("alpha_{n} not in H_{n}"))?;
    }
    let ctx = AlgebraContext::mod4(2).unwrap();
    ensure(!in_hn(&GroupWord::Generator(1), ctx).unwrap(), || "x1 in H_2".into())
}

fn steenrod_binomials() -> Result<(), String> {
    for k in 1..=64u64 {
        let u = ProjectiveClass::new(4 * k - 1).unwrap();
        ensure(sq_on_power(2, u) == ProjectiveClass::new(4 * k + 1), || format!("Sq^2(u^{})", 4 * k - 1))?;
    }
    let mut row = vec![1u8];
    for m in 0..=512u64 {
        for i in 0..=512u64 {
            let pascal = row.get(i as usize).copied().unwrap_or(0);
            ensure(binom_mod2(m, i) == pascal, || format!("C({m},{i})"))?;
        }
        let mut next = vec![1u8; row.len() + 1];
        for i in 1..row.len() {
            next[i] = (row[i - 1] + row[i]) % 2;
        }
        row = next;
    }
    for j in 0..=128u64 {
        for a in 0..=j {
            for i in 0..=8u64 {
                let conv = (0..=i).map(|t| binom_mod2(a, t) * binom_mod2(j - a, i - t)).sum::<u8>() % 2;
                ensure(conv == binom_mod2(j, i), || format!("Vandermonde j={j} a={a} i={i}"))?;
            }
        }
    }
    for n in 0..=64u64 {
        ensure(gamma_mult(2 * n, 1) == Some(DividedClass(2 * n + 1)), || format!("g_{} g_1", 2 * n))?;
    }
    Ok(())
}

fn module_catalog() -> Result<(), String> {
    for n in 4..=12 {
        for name in catalog::NAMES {
            let m = catalog::build(name, n).map_err(|e| e.to_string())?;
            ensure(m.check(), || format!("{name}({n}): {:?}", m.violations()))?;
        }
    }
    for n in 3..=12 {
        sigma_bar(n).map_err(|e| format!("sigma_bar({n}): {e}"))?;
    }
    for n in 4..=12 {
        let name = classify_lemma_3_4(n).map_err(|e| format!("n={n}: {e}"))?;
        ensure(name == "eta", || format!("n={n} matched {name}"))?;
        let target = catalog::cp2_smash_rp2(n).unwrap();
        ensure(catalog::cbar(n).unwrap().is_isomorphic(&target).unwrap(), || format!("cbar({n})"))?;
    }
    Ok(())
}

fn scaling_smoke() -> Result<(), String> {
    let (code, out) = cli(&["alpha-power", "--n", "5", "--k", "4"]);
    ensure(code == EXIT_OK, || format!("exit {code}"))?;
    let ctx = AlgebraContext::mod4(5).unwrap();
    let w = GroupWord::parse(&out, 5).map_err(|e| e.to_string())?;
    ensure(equal(&w, &alpha(5).pow(4), ctx).unwrap(), || "round trip failed".into())?;
    // every basic commutator of weight <= 5 on 5 letters is a candidate factor
    let factors = out.split('·').count();
    let candidates: usize = (2..=5)
        .map(|t| {
            let supports = binomial(5, t);
            supports * BasicCommutator::on_support(&(1..=t).collect::<Vec<_>>()).len()
        })
        .sum();
    ensure(factors <= candidates, || format!("{factors} factors > {candidates} candidates"))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn acceptance() {
    let criteria: [(&str, Check, Duration); 9] = [
        ("1 alpha_3^4 collection and image", eq24_reproduction, Duration::from_secs(1)),
        ("2 nilpotence and 4-torsion (1000 cases)", nilpotence_and_torsion, Duration::from_secs(10)),
        ("3 relations well defined (n<=5, weight<=4)", relations_well_defined, Duration::MAX),
        ("4 collection round trip (K_4 x200, K_5 x100)", collection_round_trip, Duration::from_secs(60)),
        ("5 shuffle identity", shuffle_identity, Duration::MAX),
        ("6 H_n membership", hn_membership, Duration::MAX),
        ("7 Steenrod binomial suite", steenrod_binomials, Duration::from_secs(5)),
        ("8 module catalog", module_catalog, Duration::from_secs(5)),
        ("9 alpha_5^4 smoke test", scaling_smoke, Duration::from_secs(300)),
    ];
    let mut failures = Vec::new();
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(()) if elapsed <= limit => Ok(()),
            Ok(()) => Err(format!("took {elapsed:?}, limit {limit:?}")),
            Err(e) => Err(e),
        };
        match &verdict {
            Ok(()) => println!("PASS  {name}  ({elapsed:.2?})"),
            Err(e) => {
                println!("FAIL  {name}  ({elapsed:.2?}): {e}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed: {failures:?}");
}
