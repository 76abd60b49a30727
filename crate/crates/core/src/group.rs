//! The Cohen group `K_n^{Z/q}` through its Magnus embedding.
//!
//! `x_i` maps to `1 + y_i` in `A_n^{Z/q}`. The map is faithful, so two words
//! are equal in the group exactly when their images agree, and everything
//! here reduces to algebra arithmetic.

use crate::algebra::{AlgebraContext, AlgebraElement, MaskedElement};
use crate::error::GroupError;
use crate::word::GroupWord;

/// A group element together with the word it came from.
#[derive(Clone, Debug)]
pub struct GroupElement {
    image: AlgebraElement,
    witness: GroupWord,
}

impl GroupElement {
    pub fn context(&self) -> AlgebraContext {
        self.image.context()
    }

    /// The Magnus image; its constant term is 1.
    pub fn image(&self) -> &AlgebraElement {
        &self.image
    }

    pub fn witness(&self) -> &GroupWord {
        &self.witness
    }

    pub fn is_identity(&self) -> bool {
        self.image.is_one()
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        Ok(GroupElement {
            image: self.image.checked_mul(&other.image)?,
            witness: GroupWord::product([self.witness.clone(), other.witness.clone()]),
        })
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            image: self.image.invert().expect("Magnus images have unit constant term"),
            witness: self.witness.clone().inverse(),
        }
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image
    }
}

impl Eq for GroupElement {}

fn check_word(w: &GroupWord, ctx: AlgebraContext) -> Result<(), GroupError> {
    fn walk(w: &GroupWord, n: usize) -> Result<(), GroupError> {
        match w {
            GroupWord::Identity => Ok(()),
            GroupWord::Generator(i) if *i == 0 || *i > n => {
                Err(GroupError::GeneratorOutOfRange { index: *i, n })
            }
            GroupWord::Generator(_) => Ok(()),
            GroupWord::Product(fs) => fs.iter().try_for_each(|f| walk(f, n)),
            GroupWord::Inverse(a) | GroupWord::Power(a, _) => walk(a, n),
            GroupWord::Commutator(a, b) => {
                walk(a, n)?;
                walk(b, n)
            }
        }
    }
    walk(w, ctx.n_letters())
}

fn image_of(w: &GroupWord, ctx: AlgebraContext) -> AlgebraElement {
    let one = AlgebraElement::one(ctx);
    match w {
        GroupWord::Identity => one,
        GroupWord::Generator(i) => &one + &AlgebraElement::generator(ctx, *i).unwrap(),
        GroupWord::Product(fs) => {
            let mut acc = MaskedElement::new(&one);
            for f in fs {
                acc.mul_right(&image_of(f, ctx));
            }
            acc.to_element()
        }
        GroupWord::Inverse(a) => image_of(a, ctx).invert().unwrap(),
        GroupWord::Power(a, k) => {
            let base = image_of(a, ctx);
            let base = if *k < 0 { base.invert().unwrap() } else { base };
            base.power(k.unsigned_abs())
        }
        GroupWord::Commutator(a, b) => {
            let ea = image_of(a, ctx);
            let eb = image_of(b, ctx);
            let ai = ea.invert().unwrap();
            let bi = eb.invert().unwrap();
            &(&(&ai * &bi) * &ea) * &eb
        }
    }
}

/// Homomorphic image of `w` in `A_n^{Z/q}`.
pub fn magnus(w: &GroupWord, ctx: AlgebraContext) -> Result<GroupElement, GroupError> {
    check_word(w, ctx)?;
    Ok(GroupElement {
        image: image_of(w, ctx),
        witness: w.clone(),
    })
}

/// Equality in `K_n^{Z/q}`.
pub fn equal(w1: &GroupWord, w2: &GroupWord, ctx: AlgebraContext) -> Result<bool, GroupError> {
    Ok(magnus(w1, ctx)? == magnus(w2, ctx)?)
}

/// `alpha_n = x_1 x_2 ... x_n`.
pub fn alpha(n: usize) -> GroupWord {
    GroupWord::product((1..=n).map(GroupWord::Generator))
}

/// The face homomorphism `d_i`: deletes `x_i` and shifts later letters down.
pub fn face_group(i: usize, w: &GroupWord, ctx: AlgebraContext) -> Result<GroupWord, GroupError> {
    let n = ctx.n_letters();
    if i == 0 || i > n {
        return Err(GroupError::GeneratorOutOfRange { index: i, n });
    }
    check_word(w, ctx)?;
    Ok(face_word(i, w))
}

fn face_word(i: usize, w: &GroupWord) -> GroupWord {
    match w {
        GroupWord::Identity => GroupWord::Identity,
        GroupWord::Generator(j) if *j == i => GroupWord::Identity,
        GroupWord::Generator(j) if *j > i => GroupWord::Generator(j - 1),
        GroupWord::Generator(j) => GroupWord::Generator(*j),
        GroupWord::Product(fs) => GroupWord::Product(fs.iter().map(|f| face_word(i, f)).collect()),
        GroupWord::Inverse(a) => face_word(i, a).inverse(),
        GroupWord::Power(a, k) => face_word(i, a).pow(*k),
        GroupWord::Commutator(a, b) => GroupWord::commutator(face_word(i, a), face_word(i, b)),
    }
}

/// Membership in `H_n`, the equalizer of all face maps `d_1, ..., d_n`.
pub fn in_hn(w: &GroupWord, ctx: AlgebraContext) -> Result<bool, GroupError> {
    check_word(w, ctx)?;
    let faces = ctx.drop_letter();
    let mut first = None;
    for i in 1..=ctx.n_letters() {
        let img = image_of(&face_word(i, w), faces);
        match &first {
            None => first = Some(img),
            Some(f) if *f != img => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(true)
}

/// Least `m >= 1` with `image^m = 1`.
pub fn image_order(image: &AlgebraElement) -> Result<u64, GroupError> {
    let ctx = image.context();
    let guard = (ctx.modulus() as u64).saturating_pow(ctx.n_letters() as u32).max(1);
    let mut acc = image.clone();
    for m in 1..=guard {
        if acc.is_one() {
            return Ok(m);
        }
        acc = &acc * image;
    }
    Err(GroupError::OrderGuardExceeded(guard))
}

pub fn element_order(w: &GroupWord, ctx: AlgebraContext) -> Result<u64, GroupError> {
    image_order(magnus(w, ctx)?.image())
}

/// The left-normed Lie monomial `[[y_{i_1}, y_{i_2}], ..., y_{i_t}]`.
pub fn lie_monomial(indices: &[usize], ctx: AlgebraContext) -> Result<AlgebraElement, GroupError> {
    let mut it = indices.iter();
    let mut acc = match it.next() {
        Some(&i) => AlgebraElement::generator(ctx, i)?,
        None => return Ok(AlgebraElement::zero(ctx)),
    };
    for &i in it {
        acc = acc.bracket(&AlgebraElement::generator(ctx, i)?)?;
    }
    Ok(acc)
}

/// Right-hand side of the `alpha_3^4` expansion.
pub const EQ24_RHS: &str = "[x1,x2]^2 [x1,x3]^2 [x2,x3]^2 [[x1,x3],x2]^2";

/// The four-term shuffle product that collapses to the identity in `K_3`.
pub const SHUFFLE_WORD: &str = "[[x1,x2],x3] [[x2,x1],x3] [[x3,x1],x2] [[x1,x3],x2]";

/// Checks one of the named identities in `K_3^{Z/4}`: `"eq24"` or `"shuffle"`.
pub fn verify_identity(name: &str) -> Result<bool, GroupError> {
    match name {
        "eq24" => verify_eq24(EQ24_RHS),
        "shuffle" => {
            let ctx = AlgebraContext::mod4(3)?;
            let w = GroupWord::parse(SHUFFLE_WORD, 3).expect("built-in word parses");
            equal(&w, &GroupWord::Identity, ctx)
        }
        other => Err(GroupError::UnknownIdentity(other.to_string())),
    }
}

/// `alpha_3^4 == rhs` in `K_3^{Z/4}`.
pub fn verify_eq24(rhs: &str) -> Result<bool, GroupError> {
    let ctx = AlgebraContext::mod4(3)?;
    let rhs = GroupWord::parse(rhs, 3).map_err(|e| GroupError::UnknownIdentity(e.to_string()))?;
    equal(&alpha(3).pow(4), &rhs, ctx)
}
