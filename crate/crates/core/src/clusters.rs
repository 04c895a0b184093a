//! Almost reflections `T_{>=-1}`, the involutions `sigma_s`, c-compatibility,
//! c-clusters and the map from sortable elements to clusters.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::RwLock;

use petgraph::graph::UnGraph;
use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::root_system::CoxeterSystem;
use crate::sorting::{is_sortable, sorting_word, CoxeterElement};

/// An element of `T u (-S)`. Formal negatives sort first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlmostReflection {
    /// `-s` for a simple generator `s`.
    Negative(usize),
    /// A reflection, by id.
    Reflection(usize),
}

impl AlmostReflection {
    pub fn is_negative(self) -> bool {
        matches!(self, AlmostReflection::Negative(_))
    }

    /// `-s` as `s1`-style text, reflections as palindromic words.
    pub fn display(self, sys: &CoxeterSystem) -> String {
        match self {
            AlmostReflection::Negative(s) => format!("-s{s}"),
            AlmostReflection::Reflection(t) => sys.palindromic_word(t).0.iter().map(|s| format!("s{s}")).collect(),
        }
    }
}

/// `(T_J)_{>=-1}` for the generators in `j_mask`: negatives first, then
/// reflections by id.
pub fn almost_reflections(sys: &CoxeterSystem, j_mask: u64) -> Vec<AlmostReflection> {
    let mut out: Vec<AlmostReflection> =
        (0..sys.rank()).filter(|&s| j_mask & (1 << s) != 0).map(AlmostReflection::Negative).collect();
    out.extend(
        (0..sys.num_reflections())
            .filter(|&t| sys.reflection_in_parabolic(t, j_mask))
            .map(AlmostReflection::Reflection),
    );
    out
}

/// The involution `sigma_s`: swaps `s` and `-s`, fixes the other negatives
/// and conjugates the other reflections by `s`.
pub fn sigma(sys: &CoxeterSystem, s: usize, t: AlmostReflection) -> AlmostReflection {
    let simple = sys.simple_reflection(s);
    match t {
        AlmostReflection::Negative(x) if x == s => AlmostReflection::Reflection(simple),
        AlmostReflection::Negative(_) => t,
        AlmostReflection::Reflection(r) if r == simple => AlmostReflection::Negative(s),
        AlmostReflection::Reflection(r) => AlmostReflection::Reflection(sys.conjugate_reflection(s, r)),
    }
}

/// Length of a shortest sequence `s_0, ..., s_k` of successively initial
/// letters with `t_k = -s_k`, where `t_(i+1) = sigma_(s_i)(t_i)` and
/// `c_(i+1) = s_i c_i s_i`.
pub fn mu(sys: &CoxeterSystem, t: AlmostReflection, c: &CoxeterElement) -> Result<usize> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert((t, c.orientation(sys)));
    queue.push_back((t, c.clone(), 0usize));
    while let Some((t, c, k)) = queue.pop_front() {
        let initial = c.initial_letters(sys);
        if let AlmostReflection::Negative(s) = t {
            if initial.contains(&s) {
                return Ok(k);
            }
        }
        for s in initial {
            let next_t = sigma(sys, s, t);
            let next_c = c.conjugate(sys, s)?;
            if seen.insert((next_t, next_c.orientation(sys))) {
                queue.push_back((next_t, next_c, k + 1));
            }
        }
    }
    Err(Error::SearchExhausted)
}

/// `t` lies in `(T_<s>)_{>=-1}`, where `<s>` is the complement of `s`.
fn avoids(sys: &CoxeterSystem, t: AlmostReflection, s: usize) -> bool {
    match t {
        AlmostReflection::Negative(x) => x != s,
        AlmostReflection::Reflection(r) => sys.root_support(r) & (1 << s) == 0,
    }
}

fn negative_rule(sys: &CoxeterSystem, a: AlmostReflection, b: AlmostReflection) -> Option<bool> {
    match (a, b) {
        (AlmostReflection::Negative(s), other) | (other, AlmostReflection::Negative(s)) => Some(avoids(sys, other, s)),
        _ => None,
    }
}

/// c-compatibility of two distinct almost reflections, computed by moving
/// `c` to a bipartite Coxeter element and then alternating its two blocks
/// of letters until a formal negative appears.
pub fn compatible(sys: &CoxeterSystem, t1: AlmostReflection, t2: AlmostReflection, c: &CoxeterElement) -> Result<bool> {
    if t1 == t2 {
        return Err(Error::SameReflection);
    }
    if let Some(r) = negative_rule(sys, t1, t2) {
        return Ok(r);
    }
    let n = c.support().count_ones() as usize;
    let cap = 4 * c.order() * n;
    let (mut a, mut b) = (t1, t2);
    let mut cur = c.clone();
    let mut steps = 0;
    let mut apply = |s: usize, a: &mut AlmostReflection, b: &mut AlmostReflection| -> Result<Option<bool>> {
        steps += 1;
        if steps > cap {
            return Err(Error::IterationCap(cap));
        }
        *a = sigma(sys, s, *a);
        *b = sigma(sys, s, *b);
        Ok(negative_rule(sys, *a, *b))
    };
    for s in cur.bipartite_path(sys) {
        if let Some(r) = apply(s, &mut a, &mut b)? {
            return Ok(r);
        }
        cur = cur.conjugate(sys, s)?;
    }
    let (minus, plus) = cur.bipartition(sys);
    loop {
        for block in [minus, plus] {
            for s in (0..sys.rank()).filter(|&s| block & (1 << s) != 0) {
                if let Some(r) = apply(s, &mut a, &mut b)? {
                    return Ok(r);
                }
            }
        }
    }
}

/// Nodes and index-pair edges.
pub type CompatibilityGraph = (Vec<AlmostReflection>, Vec<(usize, usize)>);

type MemoKey = (Vec<usize>, u64, AlmostReflection, AlmostReflection);

/// Memoized compatibility queries for one system.
pub struct Compatibility<'a> {
    sys: &'a CoxeterSystem,
    memo: RwLock<HashMap<MemoKey, bool>>,
}

impl<'a> Compatibility<'a> {
    pub fn new(sys: &'a CoxeterSystem) -> Self {
        Compatibility { sys, memo: RwLock::new(HashMap::new()) }
    }

    pub fn compatible(&self, t1: AlmostReflection, t2: AlmostReflection, c: &CoxeterElement) -> Result<bool> {
        let (x, y) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let key = (c.canonical_word(self.sys), c.support(), x, y);
        if let Some(&r) = self.memo.read().expect("memo lock").get(&key) {
            return Ok(r);
        }
        let r = compatible(self.sys, x, y, c)?;
        self.memo.write().expect("memo lock").insert(key, r);
        Ok(r)
    }

    /// Adjacency of the compatibility graph on `(T_J)_{>=-1}`.
    pub fn graph(&self, c: &CoxeterElement) -> Result<CompatibilityGraph> {
        let nodes = almost_reflections(self.sys, c.support());
        let mut edges = Vec::new();
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if self.compatible(nodes[i], nodes[j], c)? {
                    edges.push((i, j));
                }
            }
        }
        Ok((nodes, edges))
    }
}

/// A c-cluster, members sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cluster {
    pub members: Vec<AlmostReflection>,
}

impl Cluster {
    pub fn new(mut members: Vec<AlmostReflection>) -> Self {
        members.sort_unstable();
        Cluster { members }
    }

    pub fn is_positive(&self) -> bool {
        self.members.iter().all(|m| !m.is_negative())
    }

    pub fn contains(&self, t: AlmostReflection) -> bool {
        self.members.binary_search(&t).is_ok()
    }

    pub fn display(&self, sys: &CoxeterSystem) -> String {
        let parts: Vec<String> = self.members.iter().map(|m| m.display(sys)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// All c-clusters: the maximal cliques of the compatibility graph, sorted.
/// Every cluster must have one member per generator of `c`.
pub fn enumerate_clusters(sys: &CoxeterSystem, c: &CoxeterElement) -> Result<Vec<Cluster>> {
    enumerate_clusters_with(&Compatibility::new(sys), c)
}

pub fn enumerate_clusters_with(compat: &Compatibility<'_>, c: &CoxeterElement) -> Result<Vec<Cluster>> {
    let (nodes, edges) = compat.graph(c)?;
    let mut g = UnGraph::<(), ()>::with_capacity(nodes.len(), edges.len());
    let ids: Vec<_> = nodes.iter().map(|_| g.add_node(())).collect();
    for &(i, j) in &edges {
        g.add_edge(ids[i], ids[j], ());
    }
    let n = c.support().count_ones() as usize;
    let mut out = Vec::new();
    for clique in petgraph::algo::maximal_cliques(&g) {
        let cluster = Cluster::new(clique.iter().map(|v| nodes[v.index()]).collect());
        if cluster.members.len() != n {
            return Err(Error::BijectionViolation(format!("cluster of size {} in rank {n}", cluster.members.len())));
        }
        out.push(cluster);
    }
    out.sort();
    Ok(out)
}

/// For each generator of `c`, the prefix reflection at its last occurrence in
/// the c-sorting word of `w`, or `-s` if it does not occur.
pub fn cl_map(sys: &CoxeterSystem, w: &Element, c: &CoxeterElement) -> Result<Cluster> {
    if !is_sortable(sys, w, c) {
        return Err(Error::NotSortable);
    }
    let sw = sorting_word(sys, w, c)?;
    let refl = sw.prefix_reflections(sys);
    let members = c
        .word()
        .iter()
        .map(|&s| match sw.letters.iter().rposition(|&a| a == s) {
            Some(i) => AlmostReflection::Reflection(refl[i]),
            None => AlmostReflection::Negative(s),
        })
        .collect();
    Ok(Cluster::new(members))
}
