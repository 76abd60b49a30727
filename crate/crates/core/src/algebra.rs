//! Sparse arithmetic in the noncommutative exterior algebra `A_n^{Z/q}`.
//!
//! `A_n^{Z/q}` is the tensor algebra on `y_1, ..., y_n` over `Z/q` modulo
//! every monomial in which some letter occurs twice. A basis is therefore
//! given by the words in distinct letters, and an element is a finite map
//! from such words to nonzero residues.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! length first and then lexicographic, so iteration (and therefore every
//! rendering and serialization) is canonical.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// Largest number of letters an algebra may carry; monomials track their
/// letter set in a `u64` mask.
pub const MAX_LETTERS: usize = 64;

/// Number of generators and coefficient modulus of an algebra `A_n^{Z/q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraContext {
    n_letters: usize,
    modulus: u32,
}

impl AlgebraContext {
    pub fn new(n_letters: usize, modulus: u32) -> Result<Self, AlgebraError> {
        if n_letters == 0 || n_letters > MAX_LETTERS {
            return Err(AlgebraError::InvalidLetterCount(n_letters));
        }
        if modulus < 2 {
            return Err(AlgebraError::InvalidModulus(modulus));
        }
        Ok(Self { n_letters, modulus })
    }

    /// The `Z/4` algebra on `n` letters.
    pub fn mod4(n_letters: usize) -> Result<Self, AlgebraError> {
        Self::new(n_letters, 4)
    }

    /// Context after deleting one letter. May have zero letters, which only
    /// arises as the target of a face map on `A_1`.
    pub(crate) fn drop_letter(self) -> Self {
        Self {
            n_letters: self.n_letters - 1,
            modulus: self.modulus,
        }
    }

    pub fn n_letters(&self) -> usize {
        self.n_letters
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Least nonnegative residue of `c`.
    pub fn reduce(&self, c: i64) -> u32 {
        c.rem_euclid(self.modulus as i64) as u32
    }

    /// Inverse of `c` modulo `q`, if `c` is a unit.
    pub fn unit_inverse(&self, c: u32) -> Option<u32> {
        let q = self.modulus as i64;
        let (mut r0, mut r1) = (q, (c as i64).rem_euclid(q));
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let t = r0 / r1;
            (r0, r1) = (r1, r0 - t * r1);
            (s0, s1) = (s1, s0 - t * s1);
        }
        (r0 == 1).then(|| s0.rem_euclid(q) as u32)
    }

    fn check_letter(&self, i: usize) -> Result<(), AlgebraError> {
        if i == 0 || i > self.n_letters {
            Err(AlgebraError::LetterOutOfRange {
                index: i,
                n: self.n_letters,
            })
        } else {
            Ok(())
        }
    }
}

/// A word `y_{i_1} ... y_{i_k}` in pairwise distinct letters (1-based).
///
/// The empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    letters: Vec<u8>,
    mask: u64,
}

impl Monomial {
    pub fn unit() -> Self {
        Self::default()
    }

    /// Builds a monomial, returning `None` when a letter repeats (the word
    /// is zero in the algebra) or an index is outside `1..=MAX_LETTERS`.
    pub fn new(letters: &[usize]) -> Option<Self> {
        let mut mask = 0u64;
        let mut out = Vec::with_capacity(letters.len());
        for &i in letters {
            if i == 0 || i > MAX_LETTERS {
                return None;
            }
            let bit = 1u64 << (i - 1);
            if mask & bit != 0 {
                return None;
            }
            mask |= bit;
            out.push(i as u8);
        }
        Some(Self { letters: out, mask })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_unit(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_unit()
    }

    pub fn letters(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.letters.iter().map(|&i| i as usize)
    }

    /// Bit `i - 1` is set iff `y_i` occurs.
    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, i: usize) -> bool {
        (1..=MAX_LETTERS).contains(&i) && self.mask & (1u64 << (i - 1)) != 0
    }

    /// Concatenation, or `None` if the two words share a letter.
    pub fn concat(&self, other: &Monomial) -> Option<Monomial> {
        if self.mask & other.mask != 0 {
            return None;
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Some(Monomial {
            letters,
            mask: self.mask | other.mask,
        })
    }

    /// Sorted letter set.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.letters().collect();
        s.sort_unstable();
        s
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (k, i) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(".")?;
            }
            write!(f, "y{i}")?;
        }
        Ok(())
    }
}

/// An element of `A_n^{Z/q}`: nonzero residues indexed by monomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ElementRecord", try_from = "ElementRecord")]
pub struct AlgebraElement {
    ctx: AlgebraContext,
    terms: BTreeMap<Monomial, u32>,
}

impl AlgebraElement {
    pub fn zero(ctx: AlgebraContext) -> Self {
        Self {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: AlgebraContext, c: i64) -> Self {
        Self::monomial(ctx, Monomial::unit(), c)
    }

    pub fn one(ctx: AlgebraContext) -> Self {
        Self::constant(ctx, 1)
    }

    /// The generator `y_i`.
    pub fn generator(ctx: AlgebraContext, i: usize) -> Result<Self, AlgebraError> {
        ctx.check_letter(i)?;
        Ok(Self::monomial(ctx, Monomial::new(&[i]).unwrap(), 1))
    }

    pub(crate) fn monomial(ctx: AlgebraContext, m: Monomial, c: i64) -> Self {
        let mut e = Self::zero(ctx);
        e.add_term(m, ctx.reduce(c));
        e
    }

    /// Builds an element from `(letters, coefficient)` pairs, summing
    /// duplicates. Words with a repeated letter contribute zero.
    pub fn from_terms<I, W>(ctx: AlgebraContext, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (W, i64)>,
        W: AsRef<[usize]>,
    {
        let mut e = Self::zero(ctx);
        for (word, c) in terms {
            let word = word.as_ref();
            for &i in word {
                ctx.check_letter(i)?;
            }
            if let Some(m) = Monomial::new(word) {
                e.add_term(m, ctx.reduce(c));
            }
        }
        Ok(e)
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let q = self.ctx.modulus;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c % q);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % q;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn context(&self) -> AlgebraContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term() == 1
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        self.coefficient(&Monomial::unit())
    }

    fn ensure_same(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch {
                left: self.ctx,
                right: other.ctx,
            })
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = self.ctx.reduce(c) as u64;
        let q = self.ctx.modulus as u64;
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, &a)| {
                let p = (a as u64 * c % q) as u32;
                (p != 0).then(|| (m.clone(), p))
            })
            .collect();
        Self {
            ctx: self.ctx,
            terms,
        }
    }

    /// `c1 * a + c2 * b`.
    pub fn combine(c1: i64, a: &Self, c2: i64, b: &Self) -> Result<Self, AlgebraError> {
        a.ensure_same(b)?;
        let mut out = a.scale(c1);
        let c2 = a.ctx.reduce(c2) as u64;
        let q = a.ctx.modulus as u64;
        for (m, &c) in &b.terms {
            out.add_term(m.clone(), (c as u64 * c2 % q) as u32);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.ensure_same(other)?;
        let q = self.ctx.modulus as u64;
        let mut out = Self::zero(self.ctx);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                if let Some(m) = ma.concat(mb) {
                    out.add_term(m, (ca as u64 * cb as u64 % q) as u32);
                }
            }
        }
        Ok(out)
    }

    /// The commutator `ab - ba`.
    pub fn bracket(&self, other: &Self) -> Result<Self, AlgebraError> {
        let ab = self.checked_mul(other)?;
        let ba = other.checked_mul(self)?;
        Self::combine(1, &ab, -1, &ba)
    }

    /// `self^k` by repeated right multiplication; `self^0` is the unit.
    pub fn power(&self, k: u64) -> Self {
        let mut acc = Self::one(self.ctx);
        for _ in 0..k {
            acc = &acc * self;
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// Two-sided inverse, defined when the constant term is a unit mod `q`.
    ///
    /// Writing `a = c + N` with `N` in the augmentation ideal, `N^{n+1} = 0`
    /// and so `a^{-1} = c^{-1} * sum_{k=0}^{n} (-c^{-1} N)^k`.
    pub fn invert(&self) -> Result<Self, AlgebraError> {
        let c = self.constant_term();
        let u = self
            .ctx
            .unit_inverse(c)
            .ok_or(AlgebraError::NonUnitConstant(c))?;
        let mut nil = self.clone();
        nil.terms.remove(&Monomial::unit());
        let step = nil.scale(-(u as i64));
        let mut sum = Self::one(self.ctx);
        let mut pow = Self::one(self.ctx);
        for _ in 0..self.ctx.n_letters {
            pow = &pow * &step;
            if pow.is_zero() {
                break;
            }
            sum = &sum + &pow;
        }
        Ok(sum.scale(u as i64))
    }

    /// Least length of a non-constant monomial with nonzero coefficient, or
    /// `None` (infinity) when the element is a constant.
    pub fn min_weight(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::len).find(|&l| l > 0)
    }

    /// The part of `self` spanned by monomials of length `weight`.
    pub fn homogeneous_part(&self, weight: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.len() == weight)
            .map(|(m, &c)| (m.clone(), c))
            .collect();
        Self {
            ctx: self.ctx,
            terms,
        }
    }

    /// Algebra map `A_n -> A_{n-1}` sending `y_i` to 0 and relabelling
    /// `y_j` to `y_{j-1}` for `j > i`.
    pub fn face(&self, i: usize) -> Result<Self, AlgebraError> {
        self.ctx.check_letter(i)?;
        let ctx = self.ctx.drop_letter();
        let mut terms = BTreeMap::new();
        for (m, &c) in &self.terms {
            if m.contains(i) {
                continue;
            }
            let relabelled: Vec<usize> = m.letters().map(|j| if j > i { j - 1 } else { j }).collect();
            terms.insert(Monomial::new(&relabelled).unwrap(), c);
        }
        Ok(Self { ctx, terms })
    }
}

impl<'a> Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;

    /// Panics on context mismatch; use [`AlgebraElement::combine`] to get an error instead.
    fn add(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        AlgebraElement::combine(1, self, 1, rhs).expect("context mismatch")
    }
}

impl<'a> Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        AlgebraElement::combine(1, self, -1, rhs).expect("context mismatch")
    }
}

impl<'a> Mul<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;

    /// Panics on context mismatch; use [`AlgebraElement::checked_mul`] to get an error instead.
    fn mul(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        self.checked_mul(rhs).expect("context mismatch")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        self.scale(-1)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, &c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match (m.is_unit(), c) {
                (true, c) => write!(f, "{c}")?,
                (false, 1) => write!(f, "{m}")?,
                (false, c) => write!(f, "{c}*{m}")?,
            }
        }
        Ok(())
    }
}

/// Wire form of an [`AlgebraElement`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ElementRecord {
    pub modulus: u32,
    pub n: usize,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermRecord {
    pub mono: Vec<usize>,
    pub coeff: u32,
}

impl From<AlgebraElement> for ElementRecord {
    fn from(e: AlgebraElement) -> Self {
        ElementRecord {
            modulus: e.ctx.modulus,
            n: e.ctx.n_letters,
            terms: e
                .terms
                .iter()
                .map(|(m, &coeff)| TermRecord {
                    mono: m.letters().collect(),
                    coeff,
                })
                .collect(),
        }
    }
}

impl TryFrom<ElementRecord> for AlgebraElement {
    type Error = AlgebraError;

    fn try_from(r: ElementRecord) -> Result<Self, Self::Error> {
        let ctx = AlgebraContext::new(r.n, r.modulus)?;
        for t in &r.terms {
            if Monomial::new(&t.mono).is_none() {
                return Err(AlgebraError::RepeatedLetter(t.mono.clone()));
            }
        }
        Self::from_terms(ctx, r.terms.into_iter().map(|t| (t.mono, t.coeff as i64)))
    }
}

/// An element stored with its terms bucketed by letter mask, for repeated
/// in-place multiplication by sparse factors.
pub(crate) struct MaskedElement {
    ctx: AlgebraContext,
    buckets: HashMap<u64, BTreeMap<Monomial, u32>>,
}

impl MaskedElement {
    pub(crate) fn new(a: &AlgebraElement) -> Self {
        let mut buckets: HashMap<u64, BTreeMap<Monomial, u32>> = HashMap::new();
        for (m, &c) in &a.terms {
            buckets.entry(m.mask).or_default().insert(m.clone(), c);
        }
        Self { ctx: a.ctx, buckets }
    }

    /// `self <- f * self`.
    pub(crate) fn mul_left(&mut self, f: &AlgebraElement) {
        self.mul(f, true)
    }

    /// `self <- self * f`.
    pub(crate) fn mul_right(&mut self, f: &AlgebraElement) {
        self.mul(f, false)
    }

    fn mul(&mut self, f: &AlgebraElement, left: bool) {
        assert_eq!(self.ctx, f.ctx, "context mismatch");
        let q = self.ctx.modulus as u64;
        let mut delta = Vec::new();
        for (mf, &cf) in f.terms.iter().filter(|(m, _)| !m.is_unit()) {
            for (&mask, bucket) in &self.buckets {
                if mask & mf.mask != 0 {
                    continue;
                }
                for (m, &c) in bucket {
                    let prod = if left { mf.concat(m) } else { m.concat(mf) };
                    let c = (cf as u64 * c as u64 % q) as u32;
                    if c != 0 {
                        delta.push((prod.expect("disjoint masks"), c));
                    }
                }
            }
        }
        let c0 = f.constant_term();
        if c0 != 1 {
            for bucket in self.buckets.values_mut() {
                bucket.retain(|_, c| {
                    *c = (*c as u64 * c0 as u64 % q) as u32;
                    *c != 0
                });
            }
        }
        for (m, c) in delta {
            let bucket = self.buckets.entry(m.mask).or_default();
            match bucket.entry(m) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let s = ((*o.get() as u64 + c as u64) % q) as u32;
                    if s == 0 {
                        o.remove();
                    } else {
                        *o.get_mut() = s;
                    }
                }
            }
        }
        self.buckets.retain(|_, b| !b.is_empty());
    }

    pub(crate) fn homogeneous_part(&self, weight: usize) -> AlgebraElement {
        let terms = self
            .buckets
            .iter()
            .filter(|(mask, _)| mask.count_ones() as usize == weight)
            .flat_map(|(_, b)| b.iter().map(|(m, &c)| (m.clone(), c)))
            .collect();
        AlgebraElement { ctx: self.ctx, terms }
    }

    pub(crate) fn min_weight(&self) -> Option<usize> {
        self.buckets.keys().map(|m| m.count_ones() as usize).filter(|&w| w > 0).min()
    }

    pub(crate) fn is_one(&self) -> bool {
        self.buckets.len() == 1 && self.buckets.get(&0).is_some_and(|b| b.values().eq([&1]))
    }

    pub(crate) fn to_element(&self) -> AlgebraElement {
        let terms = self.buckets.values().flat_map(|b| b.iter().map(|(m, &c)| (m.clone(), c))).collect();
        AlgebraElement { ctx: self.ctx, terms }
    }
}
