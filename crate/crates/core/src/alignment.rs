//! The reflection order attached to a Coxeter element, the induced
//! orientation of rank-two parabolic subgroups, and c-aligned elements.

use std::collections::HashMap;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::root_system::{CoxeterSystem, RankTwoParabolic};
use crate::sorting::{sorting_word, CoxeterElement};

/// The reflections of `W_J` listed as the prefix conjugates
/// `a1 ... a(i-1) a_i a(i-1) ... a1` of the c-sorting word of `w0(J)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionOrder {
    pub sequence: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl ReflectionOrder {
    /// Position of reflection `t`, if it belongs to `W_J`.
    pub fn position(&self, t: usize) -> Option<usize> {
        self.position.get(t).copied().flatten()
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }
}

pub fn reflection_order(sys: &CoxeterSystem, c: &CoxeterElement) -> ReflectionOrder {
    let w0 = sys.longest_element_of(c.support());
    let sw = sorting_word(sys, &w0, c).expect("w0(J) lies in W_J");
    let sequence = sw.prefix_reflections(sys);
    let mut position = vec![None; sys.num_reflections()];
    for (i, &t) in sequence.iter().enumerate() {
        debug_assert!(position[t].is_none(), "reflection repeated in reflection order");
        position[t] = Some(i);
    }
    ReflectionOrder { sequence, position }
}

/// A directed edge `source -> target` between the canonical generators of an
/// irreducible rank-two parabolic subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientationEdge {
    pub source: usize,
    pub target: usize,
}

fn orient_with(order: &ReflectionOrder, p: &RankTwoParabolic) -> Result<OrientationEdge> {
    let (a, b) = p.canonical;
    if !p.is_irreducible() {
        return Err(Error::Reducible(a, b));
    }
    match (order.position(a), order.position(b)) {
        (Some(x), Some(y)) if x < y => Ok(OrientationEdge { source: a, target: b }),
        (Some(_), Some(_)) => Ok(OrientationEdge { source: b, target: a }),
        _ => Err(Error::NotInParabolic),
    }
}

/// The c-orientation of `p`. Errors with `Reducible` if the canonical
/// generators commute and `NotInParabolic` if `p` is not inside `W_J` for
/// `c` a Coxeter element of `W_J`.
pub fn orient(sys: &CoxeterSystem, c: &CoxeterElement, p: &RankTwoParabolic) -> Result<OrientationEdge> {
    orient_with(&reflection_order(sys, c), p)
}

/// Orientation of the rank-two parabolic containing reflections `t1` and `t2`.
pub fn orient_pair(sys: &CoxeterSystem, c: &CoxeterElement, t1: usize, t2: usize) -> Result<OrientationEdge> {
    let p = sys.rank_two_parabolic(t1, t2)?;
    orient(sys, c, p)
}

/// The directed cycle on all reflections of an irreducible rank-two
/// parabolic determined by its canonical edge. With `chain = g0, ..., g(m-1)`
/// running from the source to the target, the edges are `g0 -> g(m-1)` and
/// `g(k+1) -> g(k)`.
pub fn cycle_edges(p: &RankTwoParabolic, edge: OrientationEdge) -> Vec<(usize, usize)> {
    let chain = p.chain_from(edge.source);
    let m = chain.len();
    let mut out = vec![(chain[0], chain[m - 1])];
    for k in 0..m - 1 {
        out.push((chain[k + 1], chain[k]));
    }
    out
}

/// One oriented irreducible rank-two parabolic, stored in the form the
/// alignment test consumes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedParabolic {
    /// Index into [`CoxeterSystem::rank_two_parabolics`].
    pub index: usize,
    pub edge: OrientationEdge,
    /// `t2 t1 t2`: the neighbour of the target in the chain.
    pub beyond_target: usize,
    /// All reflections other than the target.
    pub others: Vec<usize>,
}

/// The c-orientation of every irreducible rank-two parabolic of `W_J`.
#[derive(Debug, Clone)]
pub struct Orientation {
    support: u64,
    pub parabolics: Vec<OrientedParabolic>,
    by_index: HashMap<usize, usize>,
}

impl Orientation {
    pub fn new(sys: &CoxeterSystem, c: &CoxeterElement) -> Self {
        let order = reflection_order(sys, c);
        let mut parabolics = Vec::new();
        for (index, p) in sys.rank_two_parabolics().iter().enumerate() {
            if !p.is_irreducible() {
                continue;
            }
            let Ok(edge) = orient_with(&order, p) else { continue };
            let chain = p.chain_from(edge.source);
            let beyond_target = chain[chain.len() - 2];
            let others = p.reflections.iter().copied().filter(|&t| t != edge.target).collect();
            parabolics.push(OrientedParabolic { index, edge, beyond_target, others });
        }
        let by_index = parabolics.iter().enumerate().map(|(i, p)| (p.index, i)).collect();
        Orientation { support: c.support(), parabolics, by_index }
    }

    /// The oriented parabolic with the given index, if irreducible and
    /// inside `W_J`.
    pub fn get(&self, index: usize) -> Option<&OrientedParabolic> {
        self.by_index.get(&index).map(|&i| &self.parabolics[i])
    }

    /// Whether `source -> target` is an edge of the full orientation on `T`.
    pub fn has_edge(&self, sys: &CoxeterSystem, source: usize, target: usize) -> bool {
        if source == target {
            return false;
        }
        let idx = sys.rank_two_index(source, target);
        self.by_index
            .get(&idx)
            .map(|&i| &self.parabolics[i])
            .map(|p| cycle_edges(&sys.rank_two_parabolics()[idx], p.edge).contains(&(source, target)))
            .unwrap_or(false)
    }

    /// First parabolic whose alignment condition fails for `w`.
    pub fn violation(&self, w: &Element) -> Option<&OrientedParabolic> {
        let inv = w.inversion_flags();
        self.parabolics.iter().find(|p| inv[p.beyond_target] && !inv[p.edge.source])
    }

    /// `t2 t1 t2 in I(w)` implies `t1 in I(w)` for every edge `t1 -> t2`.
    pub fn is_aligned(&self, sys: &CoxeterSystem, w: &Element) -> bool {
        sys.in_standard_parabolic(w, self.support) && self.violation(w).is_none()
    }

    /// The same condition in the form: if `I(w)` meets `W' - {t2}` then
    /// `t1 in I(w)`. Evaluated independently of [`is_aligned`](Self::is_aligned).
    pub fn is_aligned_segment_form(&self, sys: &CoxeterSystem, w: &Element) -> bool {
        if !sys.in_standard_parabolic(w, self.support) {
            return false;
        }
        let inv = w.inversion_flags();
        self.parabolics.iter().all(|p| inv[p.edge.source] || p.others.iter().all(|&t| !inv[t]))
    }
}

/// Whether `w` is c-aligned. Elements outside `W_J` are not.
pub fn is_aligned(sys: &CoxeterSystem, w: &Element, c: &CoxeterElement) -> bool {
    Orientation::new(sys, c).is_aligned(sys, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::GroupType;
    use crate::sorting::coxeter_elements;

    fn refl_of(sys: &CoxeterSystem, word: &[usize]) -> usize {
        // Reflection of a palindromic word: the root a1..a(k-1)(alpha_ak).
        let k = word.len() / 2;
        let prefix = sys.element_from_word(&word[..k]).unwrap();
        prefix.apply(crate::root_system::SignedRoot::positive(sys.simple_reflection(word[k]))).index()
    }

    #[test]
    fn b2_reflection_order() {
        let sys = CoxeterSystem::of_type(GroupType::B(2)).unwrap();
        let c = CoxeterElement::full(&sys, &[0, 1]).unwrap();
        let order = reflection_order(&sys, &c);
        let expect: Vec<usize> = [&[0][..], &[0, 1, 0], &[1, 0, 1], &[1]].iter().map(|w| refl_of(&sys, w)).collect();
        assert_eq!(order.sequence, expect);
    }

    #[test]
    fn small_orders() {
        let a1 = CoxeterSystem::of_type(GroupType::A(1)).unwrap();
        let order = reflection_order(&a1, &CoxeterElement::standard(&a1));
        assert_eq!(order.sequence, vec![a1.simple_reflection(0)]);
        let a2 = CoxeterSystem::of_type(GroupType::A(2)).unwrap();
        let order = reflection_order(&a2, &CoxeterElement::standard(&a2));
        let expect: Vec<usize> = [&[0][..], &[0, 1, 0], &[1]].iter().map(|w| refl_of(&a2, w)).collect();
        assert_eq!(order.sequence, expect);
    }

    #[test]
    fn orientation_of_whole_rank_two() {
        let sys = CoxeterSystem::of_type(GroupType::B(2)).unwrap();
        let c = CoxeterElement::full(&sys, &[0, 1]).unwrap();
        let s0 = sys.simple_reflection(0);
        let s1 = sys.simple_reflection(1);
        assert_eq!(orient_pair(&sys, &c, s0, s1).unwrap(), OrientationEdge { source: s0, target: s1 });
        let a2 = CoxeterSystem::of_type(GroupType::A(2)).unwrap();
        let c = CoxeterElement::full(&a2, &[1, 0]).unwrap();
        let (s0, s1) = (a2.simple_reflection(0), a2.simple_reflection(1));
        assert_eq!(orient_pair(&a2, &c, s0, s1).unwrap(), OrientationEdge { source: s1, target: s0 });
    }

    #[test]
    fn a3_adjacent_transpositions() {
        let sys = CoxeterSystem::of_type(GroupType::A(3)).unwrap();
        let c = CoxeterElement::full(&sys, &[0, 1, 2]).unwrap();
        let (s0, s1, s2) = (sys.simple_reflection(0), sys.simple_reflection(1), sys.simple_reflection(2));
        assert_eq!(orient_pair(&sys, &c, s0, s1).unwrap(), OrientationEdge { source: s0, target: s1 });
        assert_eq!(orient_pair(&sys, &c, s0, s2), Err(Error::Reducible(s0.min(s2), s0.max(s2))));
    }

    #[test]
    fn b2_alignment() {
        let sys = CoxeterSystem::of_type(GroupType::B(2)).unwrap();
        let c = CoxeterElement::full(&sys, &[0, 1]).unwrap();
        let o = Orientation::new(&sys, &c);
        for w in sys.elements() {
            let word = sys.reduced_word(&w).0;
            let bad = word == [1, 0] || word == [1, 0, 1];
            assert_eq!(o.is_aligned(&sys, &w), !bad, "{word:?}");
            assert_eq!(o.is_aligned_segment_form(&sys, &w), !bad);
        }
    }

    #[test]
    fn identity_and_longest_aligned() {
        for t in [GroupType::A(3), GroupType::B(3), GroupType::H(3)] {
            let sys = CoxeterSystem::of_type(t).unwrap();
            for c in coxeter_elements(&sys) {
                assert!(is_aligned(&sys, &Element::identity(&sys), &c));
                assert!(is_aligned(&sys, &sys.longest_element(), &c));
            }
        }
    }

    #[test]
    fn cycle_contains_canonical_edge() {
        let sys = CoxeterSystem::of_type(GroupType::I2(5)).unwrap();
        let c = CoxeterElement::standard(&sys);
        let o = Orientation::new(&sys, &c);
        assert_eq!(o.parabolics.len(), 1);
        let p = &o.parabolics[0];
        let edges = cycle_edges(&sys.rank_two_parabolics()[p.index], p.edge);
        assert_eq!(edges.len(), 5);
        assert!(edges.contains(&(p.edge.source, p.edge.target)));
        assert!(o.has_edge(&sys, p.edge.source, p.edge.target));
        assert!(!o.has_edge(&sys, p.edge.target, p.edge.source));
    }
}
