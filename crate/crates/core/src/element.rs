//! Group elements as signed permutations of the positive roots.

use std::collections::{HashSet, VecDeque};
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::root_system::{CoxeterSystem, SignedRoot, SIGN_EPS};

/// An element `w` of a finite Coxeter group, stored as the images
/// `w(alpha_r)` of all positive roots. Equality and hashing use the action
/// table only.
#[derive(Debug, Clone)]
pub struct Element {
    system: u64,
    action: Box<[SignedRoot]>,
    length: u32,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.action.hash(state);
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.length.cmp(&other.length).then_with(|| self.action.cmp(&other.action))
    }
}

/// A word in the simple generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ReducedWord(pub Vec<usize>);

impl ReducedWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }
}

/// `s0s1s0`; the empty word prints as `e`.
impl std::fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for s in &self.0 {
            write!(f, "s{s}")?;
        }
        Ok(())
    }
}

impl Element {
    pub(crate) fn from_action(system: u64, action: Vec<SignedRoot>) -> Self {
        let length = action.iter().filter(|r| r.is_negative()).count() as u32;
        Element { system, action: action.into_boxed_slice(), length }
    }

    pub fn identity(sys: &CoxeterSystem) -> Self {
        let action = (0..sys.num_reflections()).map(SignedRoot::positive).collect();
        Element::from_action(sys.id(), action)
    }

    /// `w(r)` for a signed root `r`.
    #[inline]
    pub fn apply(&self, r: SignedRoot) -> SignedRoot {
        self.action[r.index()].flip_if(r.is_negative())
    }

    pub fn length(&self) -> usize {
        self.length as usize
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// `self * other`, acting as `other` first.
    pub fn compose(&self, other: &Element) -> Element {
        assert_eq!(self.system, other.system, "elements from different systems");
        let action = other.action.iter().map(|&r| self.apply(r)).collect();
        Element::from_action(self.system, action)
    }

    pub fn inverse(&self) -> Element {
        let mut action = vec![SignedRoot::positive(0); self.action.len()];
        for (r, &img) in self.action.iter().enumerate() {
            action[img.index()] = if img.is_negative() { SignedRoot::negative(r) } else { SignedRoot::positive(r) };
        }
        Element::from_action(self.system, action)
    }

    /// `w s`.
    pub fn mul_simple_right(&self, sys: &CoxeterSystem, s: usize) -> Element {
        self.compose(sys.generator(s))
    }

    /// `s w`.
    pub fn mul_simple_left(&self, sys: &CoxeterSystem, s: usize) -> Element {
        sys.generator(s).compose(self)
    }

    /// `l(ws) < l(w)`, i.e. `w(alpha_s) < 0`.
    pub fn is_right_descent(&self, sys: &CoxeterSystem, s: usize) -> bool {
        self.apply(SignedRoot::positive(sys.simple_reflection(s))).is_negative()
    }

    /// `l(s w) < l(w)`.
    pub fn is_left_descent(&self, sys: &CoxeterSystem, s: usize) -> bool {
        self.is_inversion(sys.simple_reflection(s))
    }

    /// `l(t w) < l(w)`, i.e. `w^{-1}(alpha_t) < 0`.
    pub fn is_inversion(&self, t: usize) -> bool {
        // w^{-1}(alpha_t) < 0 iff some positive root is sent to -alpha_t.
        self.action.iter().any(|&img| img.is_negative() && img.index() == t)
    }

    /// `flags[t]` is true iff `t` is an inversion.
    pub fn inversion_flags(&self) -> Vec<bool> {
        let mut flags = vec![false; self.action.len()];
        for img in self.action.iter().filter(|r| r.is_negative()) {
            flags[img.index()] = true;
        }
        flags
    }

    pub(crate) fn system_id(&self) -> u64 {
        self.system
    }
}

impl CoxeterSystem {
    /// `a * b`, checking both come from this system.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        if a.system_id() != self.id() || b.system_id() != self.id() {
            return Err(Error::SystemMismatch);
        }
        Ok(a.compose(b))
    }

    pub fn element_from_word(&self, word: &[usize]) -> Result<Element> {
        let mut w = Element::identity(self);
        for &s in word {
            self.check_generator(s)?;
            w = w.mul_simple_right(self, s);
        }
        Ok(w)
    }

    /// Inversion set `I(w)`, sorted reflection ids.
    pub fn inversion_set(&self, w: &Element) -> Vec<usize> {
        let mut inv: Vec<usize> = w.action.iter().filter(|r| r.is_negative()).map(|r| r.index()).collect();
        inv.sort_unstable();
        inv
    }

    /// Right descents `{s : l(ws) < l(w)}`, ascending.
    pub fn descents(&self, w: &Element) -> Vec<usize> {
        (0..self.rank()).filter(|&s| w.is_right_descent(self, s)).collect()
    }

    /// Mask form of [`descents`](Self::descents).
    pub fn descent_mask(&self, w: &Element) -> u64 {
        (0..self.rank()).filter(|&s| w.is_right_descent(self, s)).fold(0, |m, s| m | (1 << s))
    }

    /// Cover reflections `w s w^{-1}` for descents `s`, sorted.
    pub fn cover_reflections(&self, w: &Element) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .descents(w)
            .into_iter()
            .map(|s| w.apply(SignedRoot::positive(self.simple_reflection(s))).index())
            .collect();
        out.sort_unstable();
        out
    }

    /// Canonical reduced word: strip the smallest-index right descent until
    /// reaching the identity.
    pub fn reduced_word(&self, w: &Element) -> ReducedWord {
        let mut letters = Vec::with_capacity(w.length());
        let mut v = w.clone();
        while !v.is_identity() {
            let s = (0..self.rank()).find(|&s| v.is_right_descent(self, s)).expect("descent");
            letters.push(s);
            v = v.mul_simple_right(self, s);
        }
        letters.reverse();
        ReducedWord(letters)
    }

    /// A palindromic reduced word `a1 ... ak s ak ... a1` for reflection `t`,
    /// obtained by repeatedly lowering the root with the smallest simple
    /// reflection that makes it shorter.
    pub fn palindromic_word(&self, t: usize) -> ReducedWord {
        let mut prefix = Vec::new();
        let mut cur = t;
        while self.as_simple(cur).is_none() {
            let beta = &self.root(cur).coords;
            let s = (0..self.rank())
                .find(|&s| (0..self.rank()).map(|j| beta[j] * self.bilinear_form()[j][s]).sum::<f64>() > SIGN_EPS)
                .expect("a non-simple positive root has a lowering generator");
            prefix.push(s);
            cur = self.conjugate_reflection(s, cur);
        }
        let mut word = prefix.clone();
        word.push(self.as_simple(cur).unwrap());
        word.extend(prefix.iter().rev());
        ReducedWord(word)
    }

    /// Longest element of the standard parabolic subgroup `W_J`.
    pub fn longest_element_of(&self, j_mask: u64) -> Element {
        let mut w = Element::identity(self);
        loop {
            let step = (0..self.rank()).find(|&s| j_mask & (1 << s) != 0 && !w.is_right_descent(self, s));
            match step {
                Some(s) => w = w.mul_simple_right(self, s),
                None => return w,
            }
        }
    }

    pub fn longest_element(&self) -> Element {
        self.longest_element_of(self.full_mask())
    }

    /// `w` lies in `W_J` iff all its inversions do.
    pub fn in_standard_parabolic(&self, w: &Element, j_mask: u64) -> bool {
        w.action.iter().filter(|r| r.is_negative()).all(|r| self.reflection_in_parabolic(r.index(), j_mask))
    }

    /// Mask of generators appearing in a reduced word for `w`.
    pub fn support(&self, w: &Element) -> u64 {
        w.action.iter().filter(|r| r.is_negative()).fold(0, |m, r| m | self.root_support(r.index()))
    }

    /// All elements of `W_J`, in breadth-first order from the identity.
    pub fn elements_of(&self, j_mask: u64) -> Vec<Element> {
        let id = Element::identity(self);
        let mut seen: HashSet<Element> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([id.clone()]);
        seen.insert(id);
        while let Some(w) = queue.pop_front() {
            for s in 0..self.rank() {
                if j_mask & (1 << s) == 0 || w.is_right_descent(self, s) {
                    continue;
                }
                let ws = w.mul_simple_right(self, s);
                if seen.insert(ws.clone()) {
                    queue.push_back(ws);
                }
            }
            out.push(w);
        }
        out
    }

    pub fn elements(&self) -> Vec<Element> {
        self.elements_of(self.full_mask())
    }

    /// Group order, by enumeration.
    pub fn order(&self) -> usize {
        self.elements().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::GroupType;

    fn b2() -> CoxeterSystem {
        CoxeterSystem::of_type(GroupType::B(2)).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let sys = b2();
        let w = sys.element_from_word(&[0, 1]).unwrap();
        let id = Element::identity(&sys);
        assert_eq!(sys.multiply(&w, &id).unwrap(), w);
        let s0 = sys.element_from_word(&[0]).unwrap();
        let p = sys.multiply(&w, &s0).unwrap();
        assert_eq!(p.length(), 3);
        assert_eq!(p, sys.element_from_word(&[0, 1, 0]).unwrap());
        let w0 = sys.element_from_word(&[0, 1, 0, 1]).unwrap();
        assert!(sys.multiply(&w0, &w0).unwrap().is_identity());
        let other = b2();
        let foreign = Element::identity(&other);
        assert_eq!(sys.multiply(&w, &foreign), Err(Error::SystemMismatch));
    }

    #[test]
    fn inversion_examples() {
        let sys = b2();
        let (s0, s1) = (sys.simple_reflection(0), sys.simple_reflection(1));
        assert!(sys.inversion_set(&Element::identity(&sys)).is_empty());
        let w = sys.element_from_word(&[0]).unwrap();
        assert_eq!(sys.inversion_set(&w), vec![s0]);
        let w = sys.element_from_word(&[0, 1, 0]).unwrap();
        let s010 = sys.conjugate_reflection(0, s1);
        let s101 = sys.conjugate_reflection(1, s0);
        let mut expect = vec![s0, s010, s101];
        expect.sort();
        assert_eq!(sys.inversion_set(&w), expect);
    }

    #[test]
    fn descent_and_cover_examples() {
        let sys = b2();
        let id = Element::identity(&sys);
        assert!(sys.descents(&id).is_empty());
        assert!(sys.cover_reflections(&id).is_empty());
        let w0 = sys.longest_element();
        assert_eq!(sys.descents(&w0), vec![0, 1]);
        let mut simple = vec![sys.simple_reflection(0), sys.simple_reflection(1)];
        simple.sort();
        assert_eq!(sys.cover_reflections(&w0), simple);
        let w = sys.element_from_word(&[0, 1, 0]).unwrap();
        assert_eq!(sys.descents(&w), vec![0]);
        assert_eq!(sys.cover_reflections(&w), vec![sys.conjugate_reflection(1, sys.simple_reflection(0))]);
    }

    #[test]
    fn reduced_words_and_longest() {
        let sys = b2();
        assert!(sys.reduced_word(&Element::identity(&sys)).is_empty());
        assert_eq!(sys.reduced_word(&sys.element_from_word(&[1]).unwrap()).0, vec![1]);
        let w0 = sys.longest_element();
        let word = sys.reduced_word(&w0);
        assert_eq!(word.len(), 4);
        assert_eq!(sys.element_from_word(&word.0).unwrap(), w0);
        assert_eq!(sys.inversion_set(&w0).len(), sys.num_reflections());

        let a1 = CoxeterSystem::of_type(GroupType::A(1)).unwrap();
        assert_eq!(a1.longest_element(), a1.element_from_word(&[0]).unwrap());
        let a2 = CoxeterSystem::of_type(GroupType::A(2)).unwrap();
        let w0 = a2.longest_element();
        assert_eq!(w0.length(), 3);
        assert_eq!(w0, a2.element_from_word(&[0, 1, 0]).unwrap());
        assert_eq!(w0, a2.element_from_word(&[1, 0, 1]).unwrap());
    }

    #[test]
    fn parabolic_membership() {
        let sys = b2();
        assert!(sys.in_standard_parabolic(&Element::identity(&sys), 0));
        assert!(!sys.in_standard_parabolic(&sys.element_from_word(&[1]).unwrap(), 0b01));
        assert!(sys.in_standard_parabolic(&sys.element_from_word(&[0, 1, 0]).unwrap(), 0b11));
    }

    #[test]
    fn group_orders_and_root_count() {
        for (t, order) in [
            (GroupType::A(3), 24),
            (GroupType::B(3), 48),
            (GroupType::H(3), 120),
            (GroupType::D(4), 192),
            (GroupType::I2(5), 10),
        ] {
            let sys = CoxeterSystem::of_type(t).unwrap();
            assert_eq!(sys.order(), order);
            assert_eq!(sys.longest_element().length(), sys.num_reflections());
        }
    }

    #[test]
    fn exchange_coherence() {
        let sys = CoxeterSystem::of_type(GroupType::B(3)).unwrap();
        for w in sys.elements() {
            for s in 0..3 {
                let sw = w.mul_simple_left(&sys, s);
                assert_eq!(sw.length().abs_diff(w.length()), 1);
            }
            let inv = sys.inversion_set(&w);
            assert_eq!(inv.len(), w.length());
            for t in 0..sys.num_reflections() {
                let tw = sys.reflection(t).compose(&w);
                assert_eq!(inv.contains(&t), tw.length() < w.length());
            }
            let word = sys.reduced_word(&w);
            assert_eq!(sys.element_from_word(&word.0).unwrap(), w);
            let support = word.0.iter().fold(0u64, |m, &s| m | (1 << s));
            assert_eq!(sys.support(&w), support);
        }
    }
}
