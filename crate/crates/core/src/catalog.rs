//! Named Steenrod modules: Moore spaces, `CP^2`, the quadratic
//! configuration-space piece `D_2`, the four-cell complexes and their
//! candidate cofibres, and the evaluation map into `P^n(2) ^ P^n(2)`.
//!
//! All operations are homology-side and degree-lowering.

use crate::error::ModuleError;
use crate::module::{ModuleMap, SteenrodModule};

/// Names accepted by [`build`].
pub const NAMES: &[&str] = &[
    "point",
    "moore",
    "cp2",
    "d2",
    "c",
    "cbar",
    "eta",
    "h1",
    "h2",
    "smash-target",
];

fn require(name: &str, n: i64, min: i64) -> Result<(), ModuleError> {
    if n < min {
        Err(ModuleError::InvalidParameter {
            name: name.to_string(),
            message: format!("parameter must be at least {min}, got {n}"),
        })
    } else {
        Ok(())
    }
}

fn parts(gens: &[(String, i64)], sq1: &[(usize, usize)], sq2: &[(usize, usize)], bock: &[(usize, usize, u8)]) -> SteenrodModule {
    let refs: Vec<(&str, i64)> = gens.iter().map(|(s, d)| (s.as_str(), *d)).collect();
    SteenrodModule::from_parts(&refs, sq1, sq2, bock).expect("catalog indices in range")
}

/// The unit for smash products: one generator in degree 0.
pub fn point() -> SteenrodModule {
    SteenrodModule::from_parts(&[("pt", 0)], &[], &[], &[]).unwrap()
}

/// `P^m(2)`: `u` in degree `m - 1`, `v` in degree `m`, `Sq^1_* v = u`.
pub fn moore(m: i64) -> Result<SteenrodModule, ModuleError> {
    require("moore", m, 2)?;
    Ok(SteenrodModule::from_parts(&[("u", m - 1), ("v", m)], &[(1, 0)], &[], &[(1, 0, 2)]).unwrap())
}

/// `CP^2`: cells in degrees 2 and 4 joined by `Sq^2_*`.
pub fn cp2() -> SteenrodModule {
    SteenrodModule::from_parts(&[("w2", 2), ("w4", 4)], &[], &[(1, 0)], &[]).unwrap()
}

/// Reduced homology of `D_2(R^2; P^{n-1}(2))`.
///
/// The arrow table is `Sq^1_*: t(v^2) -> t([u,v])`, `t(u)t(v) -> t(u)^2`
/// and `Sq^2_*: t(v^2) -> t(u^2)`, `t([u,v]) -> t(u)^2`. These are the only
/// degree-consistent choices that make the evaluation map equivariant.
pub fn d2(n: i64) -> Result<SteenrodModule, ModuleError> {
    require("d2", n, 3)?;
    let gens = [
        ("t(v^2)", 2 * n - 1),
        ("t(v)^2", 2 * n - 2),
        ("t([u,v])", 2 * n - 2),
        ("t(u)t(v)", 2 * n - 3),
        ("t(u^2)", 2 * n - 3),
        ("t(u)^2", 2 * n - 4),
    ];
    const SQ1: &[(usize, usize)] = &[(0, 2), (3, 5)];
    const SQ2: &[(usize, usize)] = &[(0, 4), (2, 5)];
    Ok(SteenrodModule::from_parts(&gens, SQ1, SQ2, &[]).unwrap())
}

/// The four-cell complex `C^{2n-1}`: `a` in `2n-3`, `b` and `c` in `2n-2`,
/// `d` in `2n-1`, with an order-4 Bockstein `b -> a`, `Sq^2_* d = a` and
/// `Sq^1_* d = c`.
pub fn c(n: i64) -> Result<SteenrodModule, ModuleError> {
    require("c", n, 2)?;
    Ok(SteenrodModule::from_parts(
        &[("a", 2 * n - 3), ("b", 2 * n - 2), ("c", 2 * n - 2), ("d", 2 * n - 1)],
        &[(3, 2)],
        &[(3, 0)],
        &[(1, 0, 4)],
    )
    .unwrap())
}

/// Four generators in degrees `2n-4 ..= 2n-1` (index 0 is the bottom) with
/// `Sq^1_*` pairing `2n-1 -> 2n-2` and `2n-3 -> 2n-4`, plus the given
/// `Sq^2_*` entries.
fn four_cell(prefix: &str, n: i64, sq2: &[(usize, usize)]) -> SteenrodModule {
    let gens: Vec<(String, i64)> = (0..4).map(|k| (format!("{prefix}{}", 2 * n - 4 + k), 2 * n - 4 + k)).collect();
    parts(&gens, &[(3, 2), (1, 0)], sq2, &[])
}

/// `\bar C^{2n-1}`: both `Sq^2_*` entries present.
pub fn cbar(n: i64) -> Result<SteenrodModule, ModuleError> {
    require("cbar", n, 3)?;
    Ok(four_cell("x", n, &[(3, 1), (2, 0)]))
}

/// Cofibre of `eta ^ id: P^{2n-2}(2) -> P^{2n-3}(2)`.
pub fn eta(n: i64) -> Result<SteenrodModule, ModuleError> {
    require("eta", n, 3)?;
    Ok(four_cell("e", n, &[(3, 1), (2, 0)]))
}

/// Cofibre of the pinch followed by a lift of `eta`: `Sq^2_*` vanishes on
/// the degree `2n-2` generator.
pub fn h1(n: i64) -> Result<SteenrodModule, ModuleError> {
    require("h1", n, 3)?;
    Ok(four_cell("y", n, &[(3, 1)]))
}

/// Cofibre of an extension of `eta` followed by the inclusion: `Sq^2_*`
/// vanishes on the top generator.
pub fn h2(n: i64) -> Result<SteenrodModule, ModuleError> {
    require("h2", n, 3)?;
    Ok(four_cell("z", n, &[(2, 0)]))
}

/// `H_*(P^n(2) ^ P^n(2))` in the basis `u^2, [u,v], uv, v^2`, where
/// `[u,v] = uv + vu`.
pub fn smash_target(n: i64) -> Result<SteenrodModule, ModuleError> {
    require("smash-target", n, 2)?;
    Ok(SteenrodModule::from_parts(
        &[("u^2", 2 * n - 2), ("[u,v]", 2 * n - 1), ("uv", 2 * n - 1), ("v^2", 2 * n)],
        &[(3, 1), (2, 0)],
        &[(3, 0)],
        &[],
    )
    .unwrap())
}

/// Looks up a catalog module. `n` is ignored by `point` and `cp2`, and is
/// the dimension `m` for `moore`.
pub fn build(name: &str, n: i64) -> Result<SteenrodModule, ModuleError> {
    match name {
        "point" => Ok(point()),
        "moore" => moore(n),
        "cp2" => Ok(cp2()),
        "d2" => d2(n),
        "c" => c(n),
        "cbar" => cbar(n),
        "eta" => eta(n),
        "h1" => h1(n),
        "h2" => h2(n),
        "smash-target" => smash_target(n),
        other => Err(ModuleError::UnknownModule(other.to_string())),
    }
}

/// `Sigma^{2n-7} CP^2 ^ RP^2`, built by the Cartan formula.
pub fn cp2_smash_rp2(n: i64) -> Result<SteenrodModule, ModuleError> {
    require("cp2-smash-rp2", n, 4)?;
    cp2().smash(&moore(2)?).suspend(2 * n - 7)
}

/// The unique candidate among `eta`, `h1`, `h2` isomorphic to
/// `Sigma^{2n-7} CP^2 ^ RP^2`.
pub fn classify_lemma_3_4(n: i64) -> Result<&'static str, ModuleError> {
    require("classify", n, 4)?;
    let target = cp2_smash_rp2(n)?;
    let mut hits = Vec::new();
    for (name, m) in [("eta", eta(n)?), ("h1", h1(n)?), ("h2", h2(n)?)] {
        if m.is_isomorphic(&target)? {
            hits.push(name);
        }
    }
    match hits.as_slice() {
        [one] => Ok(*one),
        _ => Err(ModuleError::AmbiguousClassification(hits)),
    }
}

/// The reduced evaluation map on homology, from `Sigma D_2` to
/// `P^n(2) ^ P^n(2)`: `t(v^2) -> v^2`, `t([u,v]) -> [u,v]`,
/// `t(u^2) -> u^2`, other generators to zero.
///
/// The source is `d2(n)` suspended once so the map preserves degree.
pub fn sigma_bar(n: i64) -> Result<ModuleMap, ModuleError> {
    require("sigma-bar", n, 3)?;
    let source = d2(n)?.suspend(1)?;
    let target = smash_target(n)?;
    let pairs = [("t(v^2)", "v^2"), ("t([u,v])", "[u,v]"), ("t(u^2)", "u^2")];
    let entries = pairs
        .iter()
        .map(|(s, d)| (source.index_of(s).unwrap(), target.index_of(d).unwrap()))
        .collect::<Vec<_>>();
    let map = ModuleMap::new(source, target, entries)?;
    map.check_equivariance()?;
    Ok(map)
}
