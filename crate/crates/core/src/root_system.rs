//! Finite Coxeter systems realized through their root systems.
//!
//! A [`CoxeterSystem`] is built from a [`CoxeterMatrix`]: the bilinear form
//! `B(s,t) = -cos(pi / m(s,t))` is checked for positive definiteness and the
//! positive roots are enumerated by closure under the simple reflections.
//! Positive roots are indexed in lexicographic order of their rounded
//! coordinates; that index doubles as the id of the corresponding reflection.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg;

/// Sign tolerance for root coordinates.
pub const SIGN_EPS: f64 = 1e-9;
/// Grid used to identify roots by rounded coordinates.
pub const ROUND_SCALE: f64 = 1e6;
/// Closure bound before a system is declared infinite.
pub const MAX_ROOTS: usize = 10_000;
/// Largest supported rank (simple-generator sets are stored as `u64` masks).
pub const MAX_RANK: usize = 64;

/// Named finite Coxeter types. Indices of simple generators follow the
/// conventions used by the classical permutation models: type A is a path
/// `0-1-...-(n-1)`, type B has `m(0,1) = 4` followed by a path, and type D
/// has both `0` and `1` attached to `2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    I2(u32),
}

impl GroupType {
    pub fn rank(self) -> usize {
        match self {
            GroupType::A(n) | GroupType::B(n) | GroupType::D(n) | GroupType::E(n) | GroupType::H(n) => n,
            GroupType::F4 => 4,
            GroupType::I2(_) => 2,
        }
    }

    /// Parse names such as `A3`, `B4`, `D4`, `E6`, `F4`, `G2`, `H3`, `I2(5)`.
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim();
        let bad = || Error::InvalidSpec(format!("unknown group name {name:?}"));
        let upper = name.to_ascii_uppercase();
        if let Some(rest) = upper.strip_prefix("I2") {
            let m = rest.trim_start_matches(['(', '-', '_']).trim_end_matches(')').parse::<u32>().map_err(|_| bad())?;
            return Self::from_parts("I", 2, Some(m));
        }
        if upper == "G2" {
            return Ok(GroupType::I2(6));
        }
        let (letter, digits) = upper.split_at(1);
        let rank = digits.parse::<usize>().map_err(|_| bad())?;
        Self::from_parts(letter, rank, None)
    }

    pub fn from_parts(letter: &str, rank: usize, m: Option<u32>) -> Result<Self> {
        let bad = |why: &str| Error::InvalidSpec(format!("{letter}{rank}: {why}"));
        let t = match letter.to_ascii_uppercase().as_str() {
            "A" if rank >= 1 => GroupType::A(rank),
            "B" | "C" if rank >= 2 => GroupType::B(rank),
            "D" if rank >= 2 => GroupType::D(rank),
            "E" if (6..=8).contains(&rank) => GroupType::E(rank),
            "F" if rank == 4 => GroupType::F4,
            "G" if rank == 2 => GroupType::I2(6),
            "H" if rank == 3 || rank == 4 => GroupType::H(rank),
            "I" if rank == 2 => {
                let m = m.ok_or_else(|| bad("I2 requires m"))?;
                if m < 2 {
                    return Err(bad("m must be at least 2"));
                }
                GroupType::I2(m)
            }
            _ => return Err(bad("no such finite type")),
        };
        Ok(t)
    }

    pub fn matrix(self) -> CoxeterMatrix {
        let n = self.rank();
        let mut m = CoxeterMatrix::commuting(n);
        let path = |m: &mut CoxeterMatrix, from: usize| {
            for i in from..n.saturating_sub(1) {
                m.set(i, i + 1, Some(3));
            }
        };
        match self {
            GroupType::A(_) => path(&mut m, 0),
            GroupType::B(_) => {
                m.set(0, 1, Some(4));
                path(&mut m, 1);
            }
            GroupType::D(_) => {
                if n >= 3 {
                    m.set(0, 2, Some(3));
                    path(&mut m, 1);
                }
            }
            GroupType::E(_) => {
                // 0-2-3-4-...-(n-1) with 1 attached to 3.
                m.set(0, 2, Some(3));
                m.set(1, 3, Some(3));
                path(&mut m, 2);
            }
            GroupType::F4 => {
                m.set(0, 1, Some(3));
                m.set(1, 2, Some(4));
                m.set(2, 3, Some(3));
            }
            GroupType::H(_) => {
                m.set(0, 1, Some(5));
                path(&mut m, 1);
            }
            GroupType::I2(k) => m.set(0, 1, Some(k)),
        }
        m
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupType::A(n) => write!(f, "A{n}"),
            GroupType::B(n) => write!(f, "B{n}"),
            GroupType::D(n) => write!(f, "D{n}"),
            GroupType::E(n) => write!(f, "E{n}"),
            GroupType::F4 => write!(f, "F4"),
            GroupType::H(n) => write!(f, "H{n}"),
            GroupType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// Symmetric matrix of orders `m(s,t)`; `None` stands for infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<Option<u32>>,
}

impl CoxeterMatrix {
    /// The matrix of `rank` pairwise commuting generators.
    pub fn commuting(rank: usize) -> Self {
        let mut entries = vec![Some(2); rank * rank];
        for i in 0..rank {
            entries[i * rank + i] = Some(1);
        }
        CoxeterMatrix { rank, entries }
    }

    pub fn from_rows(rows: &[Vec<Option<u32>>]) -> Result<Self> {
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::MalformedMatrix("empty matrix".into()));
        }
        if rank > MAX_RANK {
            return Err(Error::MalformedMatrix(format!("rank {rank} exceeds {MAX_RANK}")));
        }
        let mut entries = Vec::with_capacity(rank * rank);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::MalformedMatrix(format!("row {i} has length {}", row.len())));
            }
            entries.extend_from_slice(row);
        }
        let m = CoxeterMatrix { rank, entries };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let n = self.rank;
        for i in 0..n {
            if self.get(i, i) != Some(1) {
                return Err(Error::MalformedMatrix(format!("diagonal entry ({i},{i}) must be 1")));
            }
            for j in 0..n {
                if self.get(i, j) != self.get(j, i) {
                    return Err(Error::MalformedMatrix(format!("not symmetric at ({i},{j})")));
                }
                if i != j && matches!(self.get(i, j), Some(m) if m < 2) {
                    return Err(Error::MalformedMatrix(format!("off-diagonal entry ({i},{j}) below 2")));
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        self.entries[i * self.rank + j]
    }

    fn set(&mut self, i: usize, j: usize, m: Option<u32>) {
        self.entries[i * self.rank + j] = m;
        self.entries[j * self.rank + i] = m;
    }

    /// Rows with `None` for infinity.
    pub fn rows(&self) -> Vec<Vec<Option<u32>>> {
        self.entries.chunks(self.rank).map(|r| r.to_vec()).collect()
    }

    /// Whether `s` and `t` are joined in the Coxeter diagram (`m(s,t) >= 3`).
    pub fn is_edge(&self, s: usize, t: usize) -> bool {
        s != t && self.get(s, t) != Some(2)
    }

    /// `B(s,t) = -cos(pi / m(s,t))`, with `B = -1` for infinite order.
    pub fn bilinear_form(&self) -> Vec<Vec<f64>> {
        let n = self.rank;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match self.get(i, j) {
                        Some(m) => -(std::f64::consts::PI / m as f64).cos(),
                        None => -1.0,
                    })
                    .collect()
            })
            .collect()
    }
}

/// A positive or negative root, stored as an index into the positive roots
/// plus a sign bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRoot(u32);

impl SignedRoot {
    #[inline]
    pub fn positive(index: usize) -> Self {
        SignedRoot((index as u32) << 1)
    }
    #[inline]
    pub fn negative(index: usize) -> Self {
        SignedRoot(((index as u32) << 1) | 1)
    }
    #[inline]
    pub fn index(self) -> usize {
        (self.0 >> 1) as usize
    }
    #[inline]
    pub fn is_negative(self) -> bool {
        self.0 & 1 == 1
    }
    #[inline]
    pub fn negate(self) -> Self {
        SignedRoot(self.0 ^ 1)
    }
    #[inline]
    pub(crate) fn flip_if(self, neg: bool) -> Self {
        SignedRoot(self.0 ^ neg as u32)
    }
}

/// A vector in the reflection representation, in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Root {
    pub coords: Vec<f64>,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&x| x >= -SIGN_EPS) && self.coords.iter().any(|&x| x > SIGN_EPS)
    }

    pub fn is_negative(&self) -> bool {
        self.coords.iter().all(|&x| x <= SIGN_EPS) && self.coords.iter().any(|&x| x < -SIGN_EPS)
    }
}

/// A rank-two parabolic subgroup, given by its reflections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTwoParabolic {
    /// Reflection ids, sorted.
    pub reflections: Vec<usize>,
    /// Canonical generators, ordered by reflection id.
    pub canonical: (usize, usize),
    /// The sequence `t1, t1 t2 t1, ..., t2 t1 t2, t2` for
    /// `(t1, t2) = canonical`.
    pub chain: Vec<usize>,
}

impl RankTwoParabolic {
    pub fn is_irreducible(&self) -> bool {
        self.reflections.len() > 2
    }

    pub fn contains(&self, t: usize) -> bool {
        self.reflections.binary_search(&t).is_ok()
    }

    /// The chain oriented so that it starts at `first` (a canonical generator).
    pub fn chain_from(&self, first: usize) -> Vec<usize> {
        if first == self.canonical.0 {
            self.chain.clone()
        } else {
            self.chain.iter().rev().copied().collect()
        }
    }
}

/// A parabolic subgroup described by its reflections and canonical generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parabolic {
    pub reflections: Vec<usize>,
    pub canonical: Vec<usize>,
}

struct RankTwoData {
    parabolics: Vec<RankTwoParabolic>,
    /// `pair_index[t1 * N + t2]` is the parabolic containing both.
    pair_index: Vec<u32>,
}

static NEXT_SYSTEM_ID: AtomicU64 = AtomicU64::new(1);

/// A finite Coxeter system with its positive roots and reflection tables.
/// Immutable after construction.
pub struct CoxeterSystem {
    id: u64,
    matrix: CoxeterMatrix,
    kind: Option<GroupType>,
    form: Vec<Vec<f64>>,
    roots: Vec<Root>,
    lookup: HashMap<Vec<i64>, usize>,
    simple: Vec<usize>,
    reflections: Vec<Element>,
    rank_two: OnceLock<RankTwoData>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("kind", &self.kind)
            .field("rank", &self.rank())
            .field("positive_roots", &self.roots.len())
            .finish()
    }
}

fn round_key(v: &[f64]) -> Vec<i64> {
    v.iter().map(|x| (x * ROUND_SCALE).round() as i64).collect()
}

impl CoxeterSystem {
    pub fn of_type(t: GroupType) -> Result<Self> {
        let mut sys = Self::build(&t.matrix())?;
        sys.kind = Some(t);
        Ok(sys)
    }

    /// Builds the system for `matrix`: validates finiteness and enumerates
    /// the positive roots.
    pub fn build(matrix: &CoxeterMatrix) -> Result<Self> {
        matrix.validate()?;
        let n = matrix.rank();
        if n == 0 || n > MAX_RANK {
            return Err(Error::MalformedMatrix(format!("rank {n} outside 1..={MAX_RANK}")));
        }
        let form = matrix.bilinear_form();
        if !linalg::is_positive_definite(&form) {
            return Err(Error::NotFinite("bilinear form is not positive definite".into()));
        }
        let reflect = |v: &[f64], s: usize| -> Vec<f64> {
            let b: f64 = (0..n).map(|j| v[j] * form[j][s]).sum();
            let mut out = v.to_vec();
            out[s] -= 2.0 * b;
            out
        };

        let mut found: HashMap<Vec<i64>, Vec<f64>> = HashMap::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            let mut e = vec![0.0; n];
            e[s] = 1.0;
            found.insert(round_key(&e), e.clone());
            queue.push_back(e);
        }
        while let Some(r) = queue.pop_front() {
            for s in 0..n {
                let img = reflect(&r, s);
                let root = Root { coords: img };
                if root.is_negative() {
                    continue;
                }
                if !root.is_positive() {
                    return Err(Error::NotFinite("root with mixed signs encountered".into()));
                }
                let key = round_key(&root.coords);
                if !found.contains_key(&key) {
                    if found.len() >= MAX_ROOTS {
                        return Err(Error::NotFinite(format!("more than {MAX_ROOTS} positive roots")));
                    }
                    found.insert(key, root.coords.clone());
                    queue.push_back(root.coords);
                }
            }
        }

        let mut keyed: Vec<(Vec<i64>, Vec<f64>)> = found.into_iter().collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let lookup: HashMap<Vec<i64>, usize> = keyed.iter().enumerate().map(|(i, (k, _))| (k.clone(), i)).collect();
        let roots: Vec<Root> = keyed.into_iter().map(|(_, c)| Root { coords: c }).collect();
        let simple: Vec<usize> = (0..n)
            .map(|s| {
                let mut e = vec![0.0; n];
                e[s] = 1.0;
                lookup[&round_key(&e)]
            })
            .collect();

        let id = NEXT_SYSTEM_ID.fetch_add(1, Ordering::Relaxed);
        let mut sys = CoxeterSystem {
            id,
            matrix: matrix.clone(),
            kind: None,
            form,
            roots,
            lookup,
            simple,
            reflections: Vec::new(),
            rank_two: OnceLock::new(),
        };
        let mut tables = Vec::with_capacity(sys.roots.len());
        for t in 0..sys.roots.len() {
            let beta = sys.roots[t].coords.clone();
            let mut action = Vec::with_capacity(sys.roots.len());
            for r in 0..sys.roots.len() {
                let img = sys.reflect_along(&sys.roots[r].coords, &beta);
                let sr = sys
                    .lookup_coords(&img)
                    .ok_or_else(|| Error::NotFinite("reflection image is not a root (numerical failure)".into()))?;
                action.push(sr);
            }
            tables.push(Element::from_action(id, action));
        }
        sys.reflections = tables;
        Ok(sys)
    }

    pub(crate) fn id(&self) -> u64 {
        self.id
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    /// The named type this system was built from, if any.
    pub fn kind(&self) -> Option<GroupType> {
        self.kind
    }

    pub fn bilinear_form(&self) -> &[Vec<f64>] {
        &self.form
    }

    pub fn num_reflections(&self) -> usize {
        self.roots.len()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, t: usize) -> &Root {
        &self.roots[t]
    }

    /// Coordinates of a signed root.
    pub fn signed_coords(&self, r: SignedRoot) -> Vec<f64> {
        let c = &self.roots[r.index()].coords;
        if r.is_negative() {
            c.iter().map(|x| -x).collect()
        } else {
            c.clone()
        }
    }

    /// Reflection id of the simple generator `s`.
    pub fn simple_reflection(&self, s: usize) -> usize {
        self.simple[s]
    }

    /// The simple generator whose reflection id is `t`, if any.
    pub fn as_simple(&self, t: usize) -> Option<usize> {
        self.simple.iter().position(|&x| x == t)
    }

    pub fn check_generator(&self, s: usize) -> Result<()> {
        if s < self.rank() {
            Ok(())
        } else {
            Err(Error::InvalidGenerator { index: s, rank: self.rank() })
        }
    }

    pub fn check_reflection(&self, t: usize) -> Result<()> {
        if t < self.roots.len() {
            Ok(())
        } else {
            Err(Error::InvalidReflection(t))
        }
    }

    #[allow(clippy::needless_range_loop)]
    pub fn bilinear(&self, u: &[f64], v: &[f64]) -> f64 {
        let n = self.rank();
        let mut acc = 0.0;
        for i in 0..n {
            if u[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                acc += u[i] * self.form[i][j] * v[j];
            }
        }
        acc
    }

    fn reflect_along(&self, v: &[f64], beta: &[f64]) -> Vec<f64> {
        let b = self.bilinear(v, beta);
        v.iter().zip(beta).map(|(x, y)| x - 2.0 * b * y).collect()
    }

    /// Identify a vector with a signed root, if it is one.
    pub fn lookup_coords(&self, v: &[f64]) -> Option<SignedRoot> {
        if let Some(&i) = self.lookup.get(&round_key(v)) {
            return Some(SignedRoot::positive(i));
        }
        let neg: Vec<f64> = v.iter().map(|x| -x).collect();
        self.lookup.get(&round_key(&neg)).map(|&i| SignedRoot::negative(i))
    }

    /// `r - 2 B(r, alpha_s) alpha_s`.
    pub fn reflect_root(&self, r: &Root, s: usize) -> Result<Root> {
        self.check_generator(s)?;
        let b: f64 = (0..self.rank()).map(|j| r.coords[j] * self.form[j][s]).sum();
        let mut coords = r.coords.clone();
        coords[s] -= 2.0 * b;
        let out = Root { coords };
        if self.lookup_coords(&out.coords).is_none() {
            return Err(Error::NotFinite("argument is not a root of the system".into()));
        }
        Ok(out)
    }

    /// Signed-index form of [`reflect_root`](Self::reflect_root).
    #[inline]
    pub fn reflect_signed(&self, r: SignedRoot, s: usize) -> SignedRoot {
        self.reflections[self.simple[s]].apply(r)
    }

    /// The group element of reflection `t`.
    pub fn reflection(&self, t: usize) -> &Element {
        &self.reflections[t]
    }

    /// The simple generator `s` as a group element.
    pub fn generator(&self, s: usize) -> &Element {
        &self.reflections[self.simple[s]]
    }

    /// The reflection id obtained by conjugating reflection `t` by `s`.
    #[inline]
    pub fn conjugate_reflection(&self, s: usize, t: usize) -> usize {
        self.reflect_signed(SignedRoot::positive(t), s).index()
    }

    /// Mask of the simple generators whose root coordinate is nonzero in `t`.
    pub fn root_support(&self, t: usize) -> u64 {
        self.roots[t].coords.iter().enumerate().filter(|(_, &x)| x.abs() > SIGN_EPS).fold(0, |m, (i, _)| m | (1 << i))
    }

    /// Whether reflection `t` lies in the standard parabolic `W_J`.
    pub fn reflection_in_parabolic(&self, t: usize, j_mask: u64) -> bool {
        self.root_support(t) & !j_mask == 0
    }

    /// Mask of all simple generators.
    pub fn full_mask(&self) -> u64 {
        if self.rank() == 64 {
            u64::MAX
        } else {
            (1u64 << self.rank()) - 1
        }
    }

    /// Reflections whose roots lie in the span of the roots of `gens`.
    pub fn span_reflections(&self, gens: &[usize]) -> Vec<usize> {
        let basis: Vec<Vec<f64>> = gens.iter().map(|&t| self.roots[t].coords.clone()).collect();
        let r = linalg::rank(&basis);
        (0..self.roots.len())
            .filter(|&t| {
                if gens.contains(&t) {
                    return true;
                }
                let mut m = basis.clone();
                m.push(self.roots[t].coords.clone());
                linalg::rank(&m) == r
            })
            .collect()
    }

    /// Canonical generators of the reflection subgroup whose reflections are
    /// `reflections`: those `t` whose reflection sends every other positive
    /// root of the subgroup to a positive root.
    pub fn simple_system_of(&self, reflections: &[usize]) -> Vec<usize> {
        reflections
            .iter()
            .copied()
            .filter(|&t| {
                let refl = &self.reflections[t];
                reflections.iter().all(|&r| r == t || !refl.apply(SignedRoot::positive(r)).is_negative())
            })
            .collect()
    }

    /// The parabolic subgroup generated by the given reflections.
    pub fn parabolic_closure(&self, gens: &[usize]) -> Parabolic {
        let reflections = self.span_reflections(gens);
        let canonical = self.simple_system_of(&reflections);
        Parabolic { reflections, canonical }
    }

    fn rank_two_data(&self) -> &RankTwoData {
        self.rank_two.get_or_init(|| {
            let nr = self.roots.len();
            let mut pair_index = vec![u32::MAX; nr * nr];
            let mut parabolics = Vec::new();
            for a in 0..nr {
                for b in (a + 1)..nr {
                    if pair_index[a * nr + b] != u32::MAX {
                        continue;
                    }
                    let reflections = self.span_reflections(&[a, b]);
                    let canon = self.simple_system_of(&reflections);
                    debug_assert_eq!(canon.len(), 2);
                    let canonical = (canon[0], canon[1]);
                    let chain = self.dihedral_chain(canonical, reflections.len());
                    let idx = parabolics.len() as u32;
                    for &x in &reflections {
                        for &y in &reflections {
                            pair_index[x * nr + y] = idx;
                        }
                    }
                    parabolics.push(RankTwoParabolic { reflections, canonical, chain });
                }
            }
            RankTwoData { parabolics, pair_index }
        })
    }

    /// `t1, t1 t2 t1, t1 t2 t1 t2 t1, ...` as reflection ids, `m` entries.
    fn dihedral_chain(&self, (t1, t2): (usize, usize), m: usize) -> Vec<usize> {
        // The k-th root is (t1 t2 t1 ... k letters) applied to beta_{t1} or
        // beta_{t2} according to the parity of k.
        let mut chain = Vec::with_capacity(m);
        for k in 0..m {
            let mut r = SignedRoot::positive(if k % 2 == 0 { t1 } else { t2 });
            for i in (0..k).rev() {
                let g = if i % 2 == 0 { t1 } else { t2 };
                r = self.reflections[g].apply(r);
            }
            chain.push(r.index());
        }
        chain
    }

    /// All rank-two parabolic subgroups, reducible ones included.
    pub fn rank_two_parabolics(&self) -> &[RankTwoParabolic] {
        &self.rank_two_data().parabolics
    }

    /// The rank-two parabolic subgroup containing `t1 != t2`.
    pub fn rank_two_parabolic(&self, t1: usize, t2: usize) -> Result<&RankTwoParabolic> {
        self.check_reflection(t1)?;
        self.check_reflection(t2)?;
        if t1 == t2 {
            return Err(Error::SameReflection);
        }
        let d = self.rank_two_data();
        let idx = d.pair_index[t1 * self.roots.len() + t2] as usize;
        Ok(&d.parabolics[idx])
    }

    /// Index into [`rank_two_parabolics`](Self::rank_two_parabolics).
    pub fn rank_two_index(&self, t1: usize, t2: usize) -> usize {
        self.rank_two_data().pair_index[t1 * self.roots.len() + t2] as usize
    }

    /// Canonical generators of a rank-two parabolic computed as the extreme
    /// rays of the cone of its positive roots. Independent of the simplicity
    /// test used elsewhere.
    pub fn extreme_rays(&self, reflections: &[usize]) -> Vec<usize> {
        // Work in the plane: for a candidate pair (a, b) every other root must
        // be a nonnegative combination of beta_a and beta_b.
        let coords = |t: usize| &self.roots[t].coords;
        let n = self.rank();
        for (i, &a) in reflections.iter().enumerate() {
            for &b in &reflections[i + 1..] {
                let g = [
                    [self.bilinear(coords(a), coords(a)), self.bilinear(coords(a), coords(b))],
                    [self.bilinear(coords(b), coords(a)), self.bilinear(coords(b), coords(b))],
                ];
                let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
                if det.abs() < 1e-12 {
                    continue;
                }
                let ok = reflections.iter().all(|&r| {
                    let p = self.bilinear(coords(r), coords(a));
                    let q = self.bilinear(coords(r), coords(b));
                    let x = (g[1][1] * p - g[0][1] * q) / det;
                    let y = (g[0][0] * q - g[1][0] * p) / det;
                    let resid: f64 = (0..n).map(|k| (coords(r)[k] - x * coords(a)[k] - y * coords(b)[k]).abs()).sum();
                    resid < 1e-6 && x >= -SIGN_EPS && y >= -SIGN_EPS
                });
                if ok {
                    return vec![a, b];
                }
            }
        }
        Vec::new()
    }

    /// The reflection-representation matrix of `w`, row-major, in the
    /// simple-root basis (column `s` holds the coordinates of `w(alpha_s)`).
    pub fn matrix_of(&self, w: &Element) -> Vec<Vec<f64>> {
        let n = self.rank();
        let mut m = vec![vec![0.0; n]; n];
        for s in 0..n {
            let img = self.signed_coords(w.apply(SignedRoot::positive(self.simple[s])));
            for (row, x) in m.iter_mut().zip(img) {
                row[s] = x;
            }
        }
        m
    }

    /// Connected components of the Coxeter diagram, as sorted index lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < comp.len() {
                let s = comp[i];
                for (t, seen_t) in seen.iter_mut().enumerate() {
                    if !*seen_t && self.matrix.is_edge(s, t) {
                        *seen_t = true;
                        comp.push(t);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn root_counts() {
        for (t, n) in [
            (GroupType::A(2), 3),
            (GroupType::B(2), 4),
            (GroupType::A(3), 6),
            (GroupType::B(3), 9),
            (GroupType::D(4), 12),
            (GroupType::H(3), 15),
            (GroupType::F4, 24),
            (GroupType::I2(7), 7),
            (GroupType::E(6), 36),
        ] {
            assert_eq!(CoxeterSystem::of_type(t).unwrap().num_reflections(), n, "{t}");
        }
    }

    #[test]
    fn infinite_and_malformed_rejected() {
        let m = CoxeterMatrix::from_rows(&[vec![Some(1), None], vec![None, Some(1)]]).unwrap();
        assert!(matches!(CoxeterSystem::build(&m), Err(Error::NotFinite(_))));
        // Affine A2: triangle of 3s.
        let t = CoxeterMatrix::from_rows(&[
            vec![Some(1), Some(3), Some(3)],
            vec![Some(3), Some(1), Some(3)],
            vec![Some(3), Some(3), Some(1)],
        ])
        .unwrap();
        assert!(matches!(CoxeterSystem::build(&t), Err(Error::NotFinite(_))));
        assert!(matches!(
            CoxeterMatrix::from_rows(&[vec![Some(1), Some(3)], vec![Some(4), Some(1)]]),
            Err(Error::MalformedMatrix(_))
        ));
        assert!(matches!(
            CoxeterMatrix::from_rows(&[vec![Some(2), Some(3)], vec![Some(3), Some(1)]]),
            Err(Error::MalformedMatrix(_))
        ));
    }

    #[test]
    fn reflect_root_examples() {
        let a2 = CoxeterSystem::of_type(GroupType::A(2)).unwrap();
        let a1 = Root { coords: vec![0.0, 1.0] };
        let img = a2.reflect_root(&a1, 0).unwrap();
        assert!(close(&img.coords, &[1.0, 1.0]));
        let b2 = CoxeterSystem::of_type(GroupType::B(2)).unwrap();
        let img = b2.reflect_root(&a1, 0).unwrap();
        assert!(close(&img.coords, &[2f64.sqrt(), 1.0]));
        let a0 = Root { coords: vec![1.0, 0.0] };
        let img = b2.reflect_root(&a0, 0).unwrap();
        assert!(close(&img.coords, &[-1.0, 0.0]));
    }

    #[test]
    fn closure_under_simple_reflections() {
        for t in [GroupType::B(3), GroupType::H(3), GroupType::D(4)] {
            let sys = CoxeterSystem::of_type(t).unwrap();
            for r in 0..sys.num_reflections() {
                for s in 0..sys.rank() {
                    let img = sys.reflect_root(sys.root(r), s).unwrap();
                    assert!(sys.lookup_coords(&img.coords).is_some());
                    let back = sys.reflect_root(&img, s).unwrap();
                    assert!(close(&back.coords, &sys.root(r).coords));
                }
            }
        }
    }

    #[test]
    fn rank_two_examples() {
        let b2 = CoxeterSystem::of_type(GroupType::B(2)).unwrap();
        let (s0, s1) = (b2.simple_reflection(0), b2.simple_reflection(1));
        let p = b2.rank_two_parabolic(s0, s1).unwrap();
        assert_eq!(p.reflections.len(), 4);
        let mut c = [p.canonical.0, p.canonical.1];
        c.sort();
        let mut expect = [s0, s1];
        expect.sort();
        assert_eq!(c, expect);

        // A3 with transpositions: (1 2) = s0, (2 3) = s1, (3 4) = s2.
        let a3 = CoxeterSystem::of_type(GroupType::A(3)).unwrap();
        let t12 = a3.simple_reflection(0);
        let t23 = a3.simple_reflection(1);
        let t34 = a3.simple_reflection(2);
        let p = a3.rank_two_parabolic(t12, t34).unwrap();
        assert_eq!(p.reflections.len(), 2);
        assert!(!p.is_irreducible());
        let t13 = a3.conjugate_reflection(0, t23);
        let p = a3.rank_two_parabolic(t13, t23).unwrap();
        assert_eq!(p.reflections.len(), 3);
        let mut c = vec![p.canonical.0, p.canonical.1];
        c.sort();
        let mut e = vec![t12, t23];
        e.sort();
        assert_eq!(c, e);
    }

    #[test]
    fn extreme_rays_agree_with_simplicity_test() {
        for t in [GroupType::B(3), GroupType::H(3), GroupType::A(4)] {
            let sys = CoxeterSystem::of_type(t).unwrap();
            for p in sys.rank_two_parabolics() {
                let mut rays = sys.extreme_rays(&p.reflections);
                rays.sort();
                assert_eq!(rays, vec![p.canonical.0, p.canonical.1]);
                assert_eq!(p.chain.first(), Some(&p.canonical.0));
                assert_eq!(p.chain.last(), Some(&p.canonical.1));
                let mut chain = p.chain.clone();
                chain.sort();
                assert_eq!(chain, p.reflections);
            }
        }
    }

    #[test]
    fn named_parsing() {
        assert_eq!(GroupType::parse("B4").unwrap(), GroupType::B(4));
        assert_eq!(GroupType::parse("I2(5)").unwrap(), GroupType::I2(5));
        assert_eq!(GroupType::parse("G2").unwrap(), GroupType::I2(6));
        assert!(GroupType::parse("E9").is_err());
    }
}
