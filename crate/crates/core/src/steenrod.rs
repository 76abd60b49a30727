//! Steenrod squares on projective-space classes and products in the
//! divided-power algebra, all through binomial coefficients mod 2.

use std::fmt;

/// `C(m, i) mod 2` by Lucas: odd iff every binary digit of `i` is at most
/// the matching digit of `m`.
pub fn binom_mod2(m: u64, i: u64) -> u8 {
    (i & !m == 0) as u8
}

/// The class `u^j`, optionally in the stunted space `RP^inf_k` (which
/// contains `u^j` only for `j >= k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjectiveClass {
    exponent: u64,
    bottom: Option<u64>,
}

impl ProjectiveClass {
    pub fn new(exponent: u64) -> Option<Self> {
        (exponent >= 1).then_some(Self {
            exponent,
            bottom: None,
        })
    }

    pub fn stunted(exponent: u64, bottom: u64) -> Option<Self> {
        (exponent >= 1 && exponent >= bottom).then_some(Self {
            exponent,
            bottom: Some(bottom),
        })
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn bottom(&self) -> Option<u64> {
        self.bottom
    }

    /// Degree after `s`-fold suspension. Operations ignore suspension, so
    /// this is pure bookkeeping.
    pub fn suspended_degree(&self, s: u64) -> u64 {
        self.exponent + s
    }
}

impl fmt::Display for ProjectiveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u^{}", self.exponent)
    }
}

/// `Sq^i(u^j) = C(j, i) u^{i+j}`; `None` is the zero class.
pub fn sq_on_power(i: u64, class: ProjectiveClass) -> Option<ProjectiveClass> {
    (binom_mod2(class.exponent, i) == 1).then_some(ProjectiveClass {
        exponent: class.exponent + i,
        bottom: class.bottom,
    })
}

/// Whether `Sq^2` is nonzero on the bottom class `u^{4n-1}` of the stunted
/// projective space `RP^inf_{4n-1}`.
pub fn verify_sq2_iso(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let bottom = 4 * n - 1;
    let class = ProjectiveClass::stunted(bottom, bottom).unwrap();
    sq_on_power(2, class) == ProjectiveClass::stunted(bottom + 2, bottom)
}

/// `gamma_i(u)` in the divided-power algebra on a degree-1 class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DividedClass(pub u64);

impl fmt::Display for DividedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g_{}", self.0)
    }
}

/// `gamma_i * gamma_j = C(i+j, i) gamma_{i+j}`.
pub fn gamma_mult(i: u64, j: u64) -> Option<DividedClass> {
    (binom_mod2(i + j, i) == 1).then_some(DividedClass(i + j))
}
