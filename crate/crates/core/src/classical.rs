//! Permutation models of types A, B and D, barrings, and the pattern
//! conditions characterizing sortable elements in those types.
//!
//! Index conventions: a type-A system of rank `n` acts on `[n+1]` and its
//! internal generator `a` is the transposition `(a+1, a+2)`. In types B and D
//! internal indices agree with the usual ones: `s0 = (-1 1)` in B,
//! `s0 = (-2 1)(-1 2)` in D, and `s_i = (i, i+1)(-i-1, -i)` otherwise.
//! Products compose right to left, so right multiplication by a generator
//! acts on positions.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::root_system::{CoxeterSystem, GroupType};
use crate::sorting::CoxeterElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    A,
    B,
    D,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn model_of(sys: &CoxeterSystem) -> Result<(ModelKind, usize)> {
    match sys.kind() {
        Some(GroupType::A(n)) => Ok((ModelKind::A, n)),
        Some(GroupType::B(n)) => Ok((ModelKind::B, n)),
        Some(GroupType::D(n)) if n >= 3 => Ok((ModelKind::D, n)),
        other => Err(Error::KindMismatch {
            expected: "A, B or D (rank >= 3)".into(),
            found: other.map_or_else(|| "unnamed".to_string(), |t| t.to_string()),
        }),
    }
}

fn check_kind(sys: &CoxeterSystem, kind: ModelKind, rank: usize) -> Result<()> {
    let (k, n) = model_of(sys)?;
    if k != kind || n != rank {
        return Err(Error::KindMismatch { expected: format!("{k}{n}"), found: format!("{kind}{rank}") });
    }
    Ok(())
}

/// A permutation in one-line notation. For type A, `entries` is
/// `pi(1) ... pi(n+1)`; for types B and D it is `pi(1) ... pi(n)` and the
/// negative half is implied by `pi(-i) = -pi(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OneLine {
    pub kind: ModelKind,
    pub entries: Vec<i32>,
}

impl OneLine {
    pub fn new(kind: ModelKind, entries: Vec<i32>) -> Result<Self> {
        let p = OneLine { kind, entries };
        p.validate()?;
        Ok(p)
    }

    pub fn identity(kind: ModelKind, rank: usize) -> Self {
        let len = if kind == ModelKind::A { rank + 1 } else { rank };
        OneLine { kind, entries: (1..=len as i32).collect() }
    }

    fn validate(&self) -> Result<()> {
        let len = self.entries.len();
        let mut seen = vec![false; len + 1];
        for &x in &self.entries {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > len || seen[a] || (self.kind == ModelKind::A && x < 0) {
                return Err(Error::InvalidOneLine(format!("{:?} is not a permutation", self.entries)));
            }
            seen[a] = true;
        }
        if self.kind == ModelKind::D && self.entries.iter().filter(|&&x| x < 0).count() % 2 == 1 {
            return Err(Error::InvalidOneLine(format!("{:?} has an odd number of negative entries", self.entries)));
        }
        Ok(())
    }

    /// Rank of the corresponding Coxeter group.
    pub fn rank(&self) -> usize {
        match self.kind {
            ModelKind::A => self.entries.len() - 1,
            _ => self.entries.len(),
        }
    }

    /// `pi(i)` for `i` in the domain (`[n+1]` or `+-[n]`).
    pub fn at(&self, i: i32) -> i32 {
        if i > 0 {
            self.entries[i as usize - 1]
        } else {
            -self.entries[(-i) as usize - 1]
        }
    }

    /// The one-line notation for type A, the long one-line notation
    /// `pi(-n) ... pi(-1) pi(1) ... pi(n)` otherwise.
    pub fn long(&self) -> Vec<i32> {
        match self.kind {
            ModelKind::A => self.entries.clone(),
            _ => self.entries.iter().rev().map(|x| -x).chain(self.entries.iter().copied()).collect(),
        }
    }

    /// `pi * s`: acts on positions.
    pub fn mul_simple(&mut self, s: usize) {
        match (self.kind, s) {
            (ModelKind::A, a) => self.entries.swap(a, a + 1),
            (ModelKind::B, 0) => self.entries[0] = -self.entries[0],
            (ModelKind::D, 0) => {
                let (x, y) = (self.entries[0], self.entries[1]);
                self.entries[0] = -y;
                self.entries[1] = -x;
            }
            (_, i) => self.entries.swap(i - 1, i),
        }
    }

    /// Whether `s` is a right descent, read off the one-line notation.
    pub fn is_descent(&self, s: usize) -> bool {
        let e = &self.entries;
        match (self.kind, s) {
            (ModelKind::A, a) => e[a] > e[a + 1],
            (ModelKind::B, 0) => e[0] < 0,
            (ModelKind::D, 0) => -e[0] > e[1],
            (_, i) => e[i - 1] > e[i],
        }
    }

    /// The permutation as a product of disjoint cycles on its domain, each
    /// starting at its smallest element, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<i32>> {
        let domain: Vec<i32> = match self.kind {
            ModelKind::A => (1..=self.entries.len() as i32).collect(),
            _ => {
                let n = self.entries.len() as i32;
                (-n..=n).filter(|&x| x != 0).collect()
            }
        };
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &domain {
            if seen.contains(&start) || self.at(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut x = self.at(start);
            while x != start {
                seen.insert(x);
                cycle.push(x);
                x = self.at(x);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for OneLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.long().iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn to_one_line(sys: &CoxeterSystem, w: &Element) -> Result<OneLine> {
    let (kind, n) = model_of(sys)?;
    let mut p = OneLine::identity(kind, n);
    for s in sys.reduced_word(w).0 {
        p.mul_simple(s);
    }
    Ok(p)
}

pub fn from_one_line(sys: &CoxeterSystem, p: &OneLine) -> Result<Element> {
    check_kind(sys, p.kind, p.rank())?;
    p.validate()?;
    let mut q = p.clone();
    let mut letters = Vec::new();
    'outer: loop {
        for s in 0..sys.rank() {
            if q.is_descent(s) {
                q.mul_simple(s);
                letters.push(s);
                continue 'outer;
            }
        }
        break;
    }
    letters.reverse();
    sys.element_from_word(&letters)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BarringKind {
    A,
    B,
    DSymmetric,
    DAsymmetric,
}

/// A barring of the integers attached to a Coxeter element. For type D the
/// sets include `+-n` in both `upper` and `lower`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Barring {
    pub kind: BarringKind,
    pub rank: usize,
    pub upper: BTreeSet<i32>,
    pub lower: BTreeSet<i32>,
    pub central: BTreeSet<i32>,
}

impl Barring {
    pub fn is_upper(&self, x: i32) -> bool {
        self.upper.contains(&x)
    }

    pub fn is_lower(&self, x: i32) -> bool {
        self.lower.contains(&x)
    }

    pub fn is_central(&self, x: i32) -> bool {
        self.central.contains(&x)
    }

    fn model(&self) -> ModelKind {
        match self.kind {
            BarringKind::A => ModelKind::A,
            BarringKind::B => ModelKind::B,
            _ => ModelKind::D,
        }
    }

    /// The Coxeter element as a permutation, assembled from the barring:
    /// `(1 d.. n+1 u..)` in type A and `(-n d.. n u..)` in types B and D,
    /// with the central pair as an extra 2-cycle in type D. Lower-barred
    /// elements `d` increase, upper-barred elements `u` decrease.
    pub fn coxeter_cycles(&self) -> Vec<Vec<i32>> {
        let n = self.rank as i32;
        let (first, last) = match self.kind {
            BarringKind::A => (1, n + 1),
            _ => (-n, n),
        };
        let inner = |x: &&i32| **x != first && **x != last;
        let mut long = vec![first];
        long.extend(self.lower.iter().filter(inner));
        long.push(last);
        long.extend(self.upper.iter().filter(inner).rev());
        let mut out = vec![long];
        if !self.central.is_empty() {
            out.push(self.central.iter().copied().collect());
        }
        out
    }
}

/// The barring corresponding to the diagram orientation of `c`.
pub fn barring(sys: &CoxeterSystem, c: &CoxeterElement) -> Result<Barring> {
    let (kind, n) = model_of(sys)?;
    if c.support() != sys.full_mask() {
        return Err(Error::NotCoxeterWord(c.word().to_vec()));
    }
    let edges = c.orientation(sys);
    let arrow = |a: usize, b: usize| edges.contains(&(a, b));
    let mut upper = BTreeSet::new();
    let mut lower = BTreeSet::new();
    let mut central = BTreeSet::new();
    let bar = |i: i32, up: bool, upper: &mut BTreeSet<i32>, lower: &mut BTreeSet<i32>| {
        if up {
            upper.insert(i);
        } else {
            lower.insert(i);
        }
    };
    let bk = match kind {
        ModelKind::A => {
            // i in [2,n] is upper iff s_i -> s_(i-1); internally s_i is i-1.
            for i in 2..=n {
                bar(i as i32, arrow(i - 1, i - 2), &mut upper, &mut lower);
            }
            BarringKind::A
        }
        ModelKind::B => {
            for i in 1..n {
                let up = arrow(i, i - 1);
                bar(i as i32, up, &mut upper, &mut lower);
                bar(-(i as i32), !up, &mut upper, &mut lower);
            }
            BarringKind::B
        }
        ModelKind::D => {
            for i in 3..n {
                let up = arrow(i, i - 1);
                bar(i as i32, up, &mut upper, &mut lower);
                bar(-(i as i32), !up, &mut upper, &mut lower);
            }
            let symmetric = arrow(0, 2) == arrow(1, 2);
            let (special, centre) = if symmetric { (2, 1) } else { (1, 2) };
            // Symmetric: 2 is upper iff s2 -> s0 (and s2 -> s1).
            // Asymmetric: 1 is upper iff s2 -> s0 (and s1 -> s2).
            let up = arrow(2, 0);
            bar(special, up, &mut upper, &mut lower);
            bar(-special, !up, &mut upper, &mut lower);
            central.insert(centre);
            central.insert(-centre);
            for x in [n as i32, -(n as i32)] {
                upper.insert(x);
                lower.insert(x);
            }
            if symmetric {
                BarringKind::DSymmetric
            } else {
                BarringKind::DAsymmetric
            }
        }
    };
    Ok(Barring { kind: bk, rank: n, upper, lower, central })
}

/// A forbidden pattern: three entries in the order they occur.
pub type Witness = [i32; 3];

fn find_triple(seq: &[i32], mut bad: impl FnMut(i32, i32, i32) -> bool) -> Option<Witness> {
    let len = seq.len();
    for p in 0..len {
        for q in p + 1..len {
            for r in q + 1..len {
                if bad(seq[p], seq[q], seq[r]) {
                    return Some([seq[p], seq[q], seq[r]]);
                }
            }
        }
    }
    None
}

fn check_pair(p: &OneLine, b: &Barring) -> Result<()> {
    if p.kind != b.model() || p.rank() != b.rank {
        return Err(Error::KindMismatch {
            expected: format!("{}{}", b.model(), b.rank),
            found: format!("{}{}", p.kind, p.rank()),
        });
    }
    Ok(())
}

fn distinct_abs(x: i32, y: i32, z: i32) -> bool {
    let (a, b, c) = (x.abs(), y.abs(), z.abs());
    a != b && b != c && a != c
}

/// (A1): upper `j`, `k`, `i` with `i < j < k`.
fn a1(b: &Barring) -> impl Fn(i32, i32, i32) -> bool + '_ {
    move |j, k, i| b.is_upper(j) && i < j && j < k
}

/// (A2): `k`, `i`, lower `j` with `i < j < k`.
fn a2(b: &Barring) -> impl Fn(i32, i32, i32) -> bool + '_ {
    move |k, i, j| b.is_lower(j) && i < j && j < k
}

type Clause<'a> = Box<dyn Fn(i32, i32, i32) -> bool + 'a>;

/// (D1) to (D4) as separate clauses.
fn d_clauses(b: &Barring) -> [Clause<'_>; 4] {
    [
        Box::new(move |j, k, i| b.is_upper(j) && i < j && j < k && distinct_abs(i, j, k)),
        Box::new(move |j, k, i| {
            b.is_central(j) && b.is_lower(k) && b.is_lower(i) && i < j && j < k && distinct_abs(i, j, k)
        }),
        Box::new(move |j, k, i| {
            b.is_central(j) && b.is_upper(k) && b.is_lower(i) && -k < i && i < j && j < k && distinct_abs(i, j, k)
        }),
        Box::new(move |j, k, i| {
            b.is_central(j) && b.is_lower(k) && b.is_upper(i) && i < j && j < k && k < -i && distinct_abs(i, j, k)
        }),
    ]
}

/// A forbidden subsequence for condition (A), if any.
pub fn condition_a_witness(p: &OneLine, b: &Barring) -> Result<Option<Witness>> {
    check_pair(p, b)?;
    let seq = p.long();
    Ok(find_triple(&seq, a1(b)).or_else(|| find_triple(&seq, a2(b))))
}

pub fn condition_a(p: &OneLine, b: &Barring) -> Result<bool> {
    Ok(condition_a_witness(p, b)?.is_none())
}

/// A forbidden subsequence for condition (B), if any.
pub fn condition_b_witness(p: &OneLine, b: &Barring) -> Result<Option<Witness>> {
    check_pair(p, b)?;
    Ok(find_triple(&p.long(), a1(b)))
}

pub fn condition_b(p: &OneLine, b: &Barring) -> Result<bool> {
    Ok(condition_b_witness(p, b)?.is_none())
}

/// The equivalent lower-barred form of condition (B): no `k i j` with `j`
/// lower-barred and `i < j < k`.
pub fn condition_b_lower_form(p: &OneLine, b: &Barring) -> Result<bool> {
    check_pair(p, b)?;
    Ok(find_triple(&p.long(), a2(b)).is_none())
}

/// A forbidden subsequence for condition (D), if any.
pub fn condition_d_witness(p: &OneLine, b: &Barring) -> Result<Option<Witness>> {
    check_pair(p, b)?;
    let seq = p.long();
    Ok(d_clauses(b).iter().find_map(|clause| find_triple(&seq, clause)))
}

pub fn condition_d(p: &OneLine, b: &Barring) -> Result<bool> {
    Ok(condition_d_witness(p, b)?.is_none())
}

/// Condition (D) evaluated through the symmetry of the long one-line
/// notation: each clause is tested on `(-z, -y, -x)` for every subsequence
/// `x y z`.
pub fn condition_d_mirrored(p: &OneLine, b: &Barring) -> Result<bool> {
    check_pair(p, b)?;
    let seq = p.long();
    Ok(d_clauses(b).iter().all(|clause| find_triple(&seq, |x, y, z| clause(-z, -y, -x)).is_none()))
}

/// The pattern condition matching the barring's type.
pub fn satisfies_condition(p: &OneLine, b: &Barring) -> Result<bool> {
    match b.model() {
        ModelKind::A => condition_a(p, b),
        ModelKind::B => condition_b(p, b),
        ModelKind::D => condition_d(p, b),
    }
}

/// No positions `i < j < k` with `p_k < p_i < p_j`.
pub fn is_231_avoiding(p: &OneLine) -> bool {
    find_triple(&p.entries, |x, y, z| z < x && x < y).is_none()
}
