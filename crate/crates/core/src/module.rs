//! Finite graded `Z/2` modules carrying the homology operations `Sq^1_*`
//! and `Sq^2_*`, which lower degree by one and two.
//!
//! Operations are stored as sparse entry sets: `(src, dst)` in `sq1` means
//! `dst` occurs in `Sq^1_*(src)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::ModuleError;

/// Sparse `Z/2` vector as a set of basis indices.
type Vector = BTreeSet<usize>;

fn add_into(acc: &mut Vector, v: &Vector) {
    for &i in v {
        if !acc.remove(&i) {
            acc.insert(i);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operation {
    Sq1,
    Sq2,
}

impl Operation {
    pub fn name(self) -> &'static str {
        match self {
            Operation::Sq1 => "sq1",
            Operation::Sq2 => "sq2",
        }
    }

    pub fn drop(self) -> i64 {
        match self {
            Operation::Sq1 => 1,
            Operation::Sq2 => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ModuleRecord", try_from = "ModuleRecord")]
pub struct SteenrodModule {
    generators: Vec<Generator>,
    sq1: BTreeSet<(usize, usize)>,
    sq2: BTreeSet<(usize, usize)>,
    bockstein: BTreeMap<(usize, usize), u8>,
}

impl SteenrodModule {
    /// Builds a module from generators and sparse entry lists. Only index
    /// ranges are checked here; see [`SteenrodModule::check`] for the
    /// algebraic invariants.
    pub fn new(
        generators: Vec<Generator>,
        sq1: impl IntoIterator<Item = (usize, usize)>,
        sq2: impl IntoIterator<Item = (usize, usize)>,
        bockstein: impl IntoIterator<Item = (usize, usize, u8)>,
    ) -> Result<Self, ModuleError> {
        let len = generators.len();
        let in_range = |i: usize| if i < len { Ok(i) } else { Err(ModuleError::IndexOutOfRange(i)) };
        let mut m = Self {
            generators,
            sq1: BTreeSet::new(),
            sq2: BTreeSet::new(),
            bockstein: BTreeMap::new(),
        };
        // repeated entries cancel mod 2
        for (s, d) in sq1 {
            let e = (in_range(s)?, in_range(d)?);
            if !m.sq1.remove(&e) {
                m.sq1.insert(e);
            }
        }
        for (s, d) in sq2 {
            let e = (in_range(s)?, in_range(d)?);
            if !m.sq2.remove(&e) {
                m.sq2.insert(e);
            }
        }
        for (s, d, o) in bockstein {
            m.bockstein.insert((in_range(s)?, in_range(d)?), o);
        }
        Ok(m)
    }

    /// Convenience constructor from `(name, degree)` pairs.
    pub fn from_parts(
        generators: &[(&str, i64)],
        sq1: &[(usize, usize)],
        sq2: &[(usize, usize)],
        bockstein: &[(usize, usize, u8)],
    ) -> Result<Self, ModuleError> {
        Self::new(
            generators
                .iter()
                .map(|&(name, degree)| Generator {
                    name: name.to_string(),
                    degree,
                })
                .collect(),
            sq1.iter().copied(),
            sq2.iter().copied(),
            bockstein.iter().copied(),
        )
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.generators[i].degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn entries(&self, op: Operation) -> &BTreeSet<(usize, usize)> {
        match op {
            Operation::Sq1 => &self.sq1,
            Operation::Sq2 => &self.sq2,
        }
    }

    pub fn bockstein(&self) -> &BTreeMap<(usize, usize), u8> {
        &self.bockstein
    }

    /// Image of basis element `i` under `op`.
    pub fn apply_basis(&self, op: Operation, i: usize) -> Vector {
        self.entries(op)
            .range((i, 0)..=(i, usize::MAX))
            .map(|&(_, d)| d)
            .collect()
    }

    pub fn apply(&self, op: Operation, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for &i in v {
            add_into(&mut out, &self.apply_basis(op, i));
        }
        out
    }

    fn apply_bockstein(&self, order: u8, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&(s, d), &o) in &self.bockstein {
            if o == order && v.contains(&s) && !out.remove(&d) {
                out.insert(d);
            }
        }
        out
    }

    fn render(&self, v: &Vector) -> String {
        if v.is_empty() {
            return "0".into();
        }
        v.iter()
            .map(|&i| self.generators[i].name.as_str())
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Lists every violated invariant; empty means the module is valid.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for op in [Operation::Sq1, Operation::Sq2] {
            for &(s, d) in self.entries(op) {
                if self.degree(s) - self.degree(d) != op.drop() {
                    out.push(format!(
                        "{} entry {} -> {} lowers degree by {} instead of {}",
                        op.name(),
                        self.generators[s].name,
                        self.generators[d].name,
                        self.degree(s) - self.degree(d),
                        op.drop()
                    ));
                }
            }
        }
        for i in 0..self.len() {
            let g = &self.generators[i].name;
            let one = Vector::from([i]);
            let s1 = self.apply(Operation::Sq1, &one);
            let s11 = self.apply(Operation::Sq1, &s1);
            if !s11.is_empty() {
                out.push(format!("sq1 sq1 ({g}) = {} != 0", self.render(&s11)));
            }
            let s22 = self.apply(Operation::Sq2, &self.apply(Operation::Sq2, &one));
            let s121 = self.apply(
                Operation::Sq1,
                &self.apply(Operation::Sq2, &s1),
            );
            if s22 != s121 {
                out.push(format!(
                    "sq2 sq2 ({g}) = {} but sq1 sq2 sq1 ({g}) = {}",
                    self.render(&s22),
                    self.render(&s121)
                ));
            }
        }
        for (&(s, d), &o) in &self.bockstein {
            let (sn, dn) = (&self.generators[s].name, &self.generators[d].name);
            if ![2, 4, 8].contains(&o) {
                out.push(format!("bockstein {sn} -> {dn} has order {o}, not 2, 4 or 8"));
            }
            if self.degree(s) - self.degree(d) != 1 {
                out.push(format!("bockstein {sn} -> {dn} does not lower degree by 1"));
            }
            let in_sq1 = self.sq1.contains(&(s, d));
            if o == 2 && !in_sq1 {
                out.push(format!("order-2 bockstein {sn} -> {dn} is not a sq1 entry"));
            }
            if o != 2 && in_sq1 {
                out.push(format!("sq1 entry {sn} -> {dn} carries bockstein order {o}"));
            }
        }
        out
    }

    pub fn check(&self) -> bool {
        self.violations().is_empty()
    }

    /// Shifts all degrees by `s`; operations are unchanged.
    pub fn suspend(&self, s: i64) -> Result<Self, ModuleError> {
        let mut m = self.clone();
        for g in &mut m.generators {
            g.degree += s;
            if g.degree < 0 {
                return Err(ModuleError::DegreeUnderflow {
                    generator: g.name.clone(),
                    shift: s,
                });
            }
        }
        Ok(m)
    }

    /// Tensor product with the Cartan formula:
    /// `sq1(x y) = sq1 x . y + x . sq1 y` and
    /// `sq2(x y) = sq2 x . y + sq1 x . sq1 y + x . sq2 y`.
    ///
    /// Generators are ordered left-factor-major and named `a*b`. Bockstein
    /// labels are not carried over.
    pub fn smash(&self, other: &Self) -> Self {
        let n = other.len();
        let idx = |i: usize, j: usize| i * n + j;
        let generators = self
            .generators
            .iter()
            .flat_map(|a| {
                other.generators.iter().map(move |b| Generator {
                    name: format!("{}*{}", a.name, b.name),
                    degree: a.degree + b.degree,
                })
            })
            .collect();

        let mut sq1 = Vec::new();
        let mut sq2 = Vec::new();
        for i in 0..self.len() {
            for j in 0..n {
                let src = idx(i, j);
                for &(_, d) in self.sq1.range((i, 0)..=(i, usize::MAX)) {
                    sq1.push((src, idx(d, j)));
                }
                for &(_, d) in other.sq1.range((j, 0)..=(j, usize::MAX)) {
                    sq1.push((src, idx(i, d)));
                }
                for &(_, d) in self.sq2.range((i, 0)..=(i, usize::MAX)) {
                    sq2.push((src, idx(d, j)));
                }
                for &(_, d) in other.sq2.range((j, 0)..=(j, usize::MAX)) {
                    sq2.push((src, idx(i, d)));
                }
                for &(_, di) in self.sq1.range((i, 0)..=(i, usize::MAX)) {
                    for &(_, dj) in other.sq1.range((j, 0)..=(j, usize::MAX)) {
                        sq2.push((src, idx(di, dj)));
                    }
                }
            }
        }
        Self::new(generators, sq1, sq2, std::iter::empty()).expect("indices in range")
    }

    /// Whether some degree-preserving linear isomorphism intertwines `sq1`
    /// and `sq2` (and the Bockstein labels, when both modules carry them).
    pub fn is_isomorphic(&self, other: &Self) -> Result<bool, ModuleError> {
        const MAX_GENERATORS: usize = 12;
        const MAX_BLOCK: usize = 5;
        if self.len() > MAX_GENERATORS || other.len() > MAX_GENERATORS {
            return Err(ModuleError::SizeGuard(self.len().max(other.len())));
        }
        if self.len() != other.len() {
            return Ok(false);
        }
        let blocks = |m: &Self| {
            let mut b: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
            for (i, g) in m.generators.iter().enumerate() {
                b.entry(g.degree).or_default().push(i);
            }
            b
        };
        let (mine, theirs) = (blocks(self), blocks(other));
        if mine.iter().map(|(d, v)| (*d, v.len())).ne(theirs.iter().map(|(d, v)| (*d, v.len()))) {
            return Ok(false);
        }
        if let Some(v) = mine.values().find(|v| v.len() > MAX_BLOCK) {
            return Err(ModuleError::SizeGuard(v.len()));
        }

        let orders: Vec<u8> = if self.bockstein.is_empty() || other.bockstein.is_empty() {
            Vec::new()
        } else {
            let set: BTreeSet<u8> = self.bockstein.values().chain(other.bockstein.values()).copied().collect();
            set.into_iter().collect()
        };

        let degrees: Vec<i64> = mine.keys().copied().collect();
        let mut images: Vec<Option<Vector>> = vec![None; self.len()];
        let search = IsoSearch {
            src: self,
            dst: other,
            mine: &mine,
            theirs: &theirs,
            degrees: &degrees,
            orders: &orders,
        };
        Ok(search.assign_degree(0, &mut images))
    }
}

struct IsoSearch<'a> {
    src: &'a SteenrodModule,
    dst: &'a SteenrodModule,
    mine: &'a BTreeMap<i64, Vec<usize>>,
    theirs: &'a BTreeMap<i64, Vec<usize>>,
    degrees: &'a [i64],
    orders: &'a [u8],
}

impl IsoSearch<'_> {
    fn assign_degree(&self, k: usize, images: &mut Vec<Option<Vector>>) -> bool {
        let Some(&d) = self.degrees.get(k) else {
            return true;
        };
        let src_idx = &self.mine[&d];
        let dst_idx = &self.theirs[&d];
        let dim = src_idx.len();
        let mut rows: Vec<u32> = Vec::with_capacity(dim);
        self.assign_rows(k, src_idx, dst_idx, dim, &mut rows, images)
    }

    /// Chooses images row by row, keeping them linearly independent.
    fn assign_rows(
        &self,
        k: usize,
        src_idx: &[usize],
        dst_idx: &[usize],
        dim: usize,
        rows: &mut Vec<u32>,
        images: &mut Vec<Option<Vector>>,
    ) -> bool {
        if rows.len() == dim {
            for (r, &s) in rows.iter().zip(src_idx) {
                images[s] = Some(
                    (0..dim)
                        .filter(|b| r >> b & 1 == 1)
                        .map(|b| dst_idx[b])
                        .collect(),
                );
            }
            if src_idx.iter().all(|&s| self.commutes_at(s, images)) && self.assign_degree(k + 1, images) {
                return true;
            }
            for &s in src_idx {
                images[s] = None;
            }
            return false;
        }
        for candidate in 1u32..(1 << dim) {
            if in_span(rows, candidate) {
                continue;
            }
            rows.push(candidate);
            if self.assign_rows(k, src_idx, dst_idx, dim, rows, images) {
                return true;
            }
            rows.pop();
        }
        false
    }

    fn map(&self, v: &Vector, images: &[Option<Vector>]) -> Vector {
        let mut out = Vector::new();
        for &i in v {
            add_into(&mut out, images[i].as_ref().expect("lower degrees assigned first"));
        }
        out
    }

    fn commutes_at(&self, s: usize, images: &[Option<Vector>]) -> bool {
        let fs = images[s].as_ref().unwrap();
        let one = Vector::from([s]);
        for op in [Operation::Sq1, Operation::Sq2] {
            let left = self.map(&self.src.apply(op, &one), images);
            let right = self.dst.apply(op, fs);
            if left != right {
                return false;
            }
        }
        self.orders.iter().all(|&o| {
            self.map(&self.src.apply_bockstein(o, &one), images) == self.dst.apply_bockstein(o, fs)
        })
    }
}

fn in_span(rows: &[u32], v: u32) -> bool {
    let n = rows.len();
    (0u32..(1 << n)).any(|mask| {
        rows.iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .fold(0, |acc, (_, r)| acc ^ r)
            == v
    })
}

/// A degree-preserving `Z/2`-linear map between modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleMap {
    pub source: SteenrodModule,
    pub target: SteenrodModule,
    /// `(src, dst)`: `dst` occurs in the image of `src`.
    pub entries: BTreeSet<(usize, usize)>,
}

impl ModuleMap {
    pub fn new(
        source: SteenrodModule,
        target: SteenrodModule,
        entries: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, ModuleError> {
        let entries: BTreeSet<(usize, usize)> = entries.into_iter().collect();
        for &(s, d) in &entries {
            if s >= source.len() {
                return Err(ModuleError::IndexOutOfRange(s));
            }
            if d >= target.len() {
                return Err(ModuleError::IndexOutOfRange(d));
            }
            if source.degree(s) != target.degree(d) {
                return Err(ModuleError::InvalidParameter {
                    name: "map".into(),
                    message: format!(
                        "{} and {} have different degrees",
                        source.generators[s].name, target.generators[d].name
                    ),
                });
            }
        }
        Ok(Self { source, target, entries })
    }

    pub fn apply(&self, v: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = Vector::new();
        for &i in v {
            let img: Vector = self
                .entries
                .range((i, 0)..=(i, usize::MAX))
                .map(|&(_, d)| d)
                .collect();
            add_into(&mut out, &img);
        }
        out
    }

    /// Image of a source generator by name, rendered as a sum of target
    /// generator names.
    pub fn image_of(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.source.index_of(name)?;
        Some(
            self.apply(&Vector::from([i]))
                .into_iter()
                .map(|d| self.target.generators[d].name.as_str())
                .collect(),
        )
    }

    /// Checks `f sq = sq f` for both operations on every source generator.
    pub fn check_equivariance(&self) -> Result<(), ModuleError> {
        for s in 0..self.source.len() {
            let one = Vector::from([s]);
            for op in [Operation::Sq1, Operation::Sq2] {
                let left = self.apply(&self.source.apply(op, &one));
                let right = self.target.apply(op, &self.apply(&one));
                if left != right {
                    return Err(ModuleError::EquivarianceFailure {
                        generator: self.source.generators[s].name.clone(),
                        operation: op.name(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// File form of a [`SteenrodModule`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleRecord {
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub sq1: Vec<[usize; 2]>,
    #[serde(default)]
    pub sq2: Vec<[usize; 2]>,
    #[serde(default)]
    pub bockstein: Vec<[usize; 3]>,
}

impl From<SteenrodModule> for ModuleRecord {
    fn from(m: SteenrodModule) -> Self {
        ModuleRecord {
            sq1: m.sq1.iter().map(|&(s, d)| [s, d]).collect(),
            sq2: m.sq2.iter().map(|&(s, d)| [s, d]).collect(),
            bockstein: m.bockstein.iter().map(|(&(s, d), &o)| [s, d, o as usize]).collect(),
            generators: m.generators,
        }
    }
}

impl TryFrom<ModuleRecord> for SteenrodModule {
    type Error = ModuleError;

    fn try_from(r: ModuleRecord) -> Result<Self, Self::Error> {
        let mut bock = Vec::with_capacity(r.bockstein.len());
        for [s, d, o] in r.bockstein {
            let o = u8::try_from(o).map_err(|_| ModuleError::InvalidParameter {
                name: "bockstein".into(),
                message: format!("order {o} out of range"),
            })?;
            bock.push((s, d, o));
        }
        SteenrodModule::new(
            r.generators,
            r.sq1.into_iter().map(|[s, d]| (s, d)),
            r.sq2.into_iter().map(|[s, d]| (s, d)),
            bock,
        )
    }
}
