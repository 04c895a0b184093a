//! Coxeter elements, c-sorting words and c-sortable elements.
//!
//! A [`CoxeterElement`] may live in a standard parabolic subgroup `W_J`: its
//! word is then a permutation of `J` rather than of all of `S`. This is how
//! restrictions `c -> sc` are represented.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::element::{Element, ReducedWord};
use crate::error::{Error, Result};
use crate::root_system::{CoxeterSystem, SignedRoot};

/// A Coxeter element of `W_J` for `J` = the set of letters of its word.
#[derive(Clone)]
pub struct CoxeterElement {
    word: Vec<usize>,
    support: u64,
    element: Element,
}

impl fmt::Debug for CoxeterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterElement({:?})", self.word)
    }
}

/// Equality is equality of the underlying group elements, which is the same
/// as equality of diagram orientations (and supports).
impl PartialEq for CoxeterElement {
    fn eq(&self, other: &Self) -> bool {
        self.element == other.element
    }
}

impl Eq for CoxeterElement {}

impl std::hash::Hash for CoxeterElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.element.hash(state);
    }
}

impl CoxeterElement {
    /// A Coxeter element of `W_J`, where `J` is the set of letters of `word`.
    pub fn new(sys: &CoxeterSystem, word: &[usize]) -> Result<Self> {
        let mut support = 0u64;
        for &s in word {
            sys.check_generator(s)?;
            if support & (1 << s) != 0 {
                return Err(Error::NotCoxeterWord(word.to_vec()));
            }
            support |= 1 << s;
        }
        Ok(CoxeterElement { word: word.to_vec(), support, element: sys.element_from_word(word)? })
    }

    /// A Coxeter element of the whole group; the word must use every
    /// generator once.
    pub fn full(sys: &CoxeterSystem, word: &[usize]) -> Result<Self> {
        let c = Self::new(sys, word)?;
        if c.support != sys.full_mask() {
            return Err(Error::NotCoxeterWord(word.to_vec()));
        }
        Ok(c)
    }

    /// `s0 s1 ... s(n-1)`.
    pub fn standard(sys: &CoxeterSystem) -> Self {
        let word: Vec<usize> = (0..sys.rank()).collect();
        Self::new(sys, &word).expect("standard word")
    }

    /// The Coxeter element whose orientation has `edges` as `(from, to)`;
    /// the word is the smallest-first topological order.
    pub fn from_orientation(sys: &CoxeterSystem, support: u64, edges: &[(usize, usize)]) -> Result<Self> {
        let n = sys.rank();
        let mut indeg = vec![0usize; n];
        for &(_, t) in edges {
            indeg[t] += 1;
        }
        let mut placed = 0u64;
        let mut word = Vec::new();
        let count = support.count_ones() as usize;
        while word.len() < count {
            let next = (0..n).find(|&s| support & (1 << s) != 0 && placed & (1 << s) == 0 && indeg[s] == 0);
            let s = next.ok_or_else(|| Error::NotCoxeterWord(word.clone()))?;
            placed |= 1 << s;
            word.push(s);
            for &(f, t) in edges {
                if f == s {
                    indeg[t] -= 1;
                }
            }
        }
        Self::new(sys, &word)
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    /// Mask of the generators in the word.
    pub fn support(&self) -> u64 {
        self.support
    }

    pub fn contains(&self, s: usize) -> bool {
        s < 64 && self.support & (1 << s) != 0
    }

    fn position(&self, s: usize) -> Option<usize> {
        self.word.iter().position(|&x| x == s)
    }

    /// Directed diagram edges `s -> t` (s precedes t, `m(s,t) >= 3`), sorted.
    pub fn orientation(&self, sys: &CoxeterSystem) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &s) in self.word.iter().enumerate() {
            for &t in &self.word[i + 1..] {
                if sys.matrix().is_edge(s, t) {
                    out.push((s, t));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Word in smallest-first topological order of the orientation.
    pub fn canonical_word(&self, sys: &CoxeterSystem) -> Vec<usize> {
        Self::from_orientation(sys, self.support, &self.orientation(sys)).expect("acyclic").word
    }

    /// Generators that are sources of the orientation.
    pub fn initial_letters(&self, sys: &CoxeterSystem) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .word
            .iter()
            .enumerate()
            .filter(|(i, &s)| self.word[..*i].iter().all(|&t| !sys.matrix().is_edge(s, t)))
            .map(|(_, &s)| s)
            .collect();
        out.sort_unstable();
        out
    }

    /// Generators that are sinks of the orientation.
    pub fn final_letters(&self, sys: &CoxeterSystem) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .word
            .iter()
            .enumerate()
            .filter(|(i, &s)| self.word[i + 1..].iter().all(|&t| !sys.matrix().is_edge(s, t)))
            .map(|(_, &s)| s)
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_initial(&self, sys: &CoxeterSystem, s: usize) -> bool {
        match self.position(s) {
            Some(i) => self.word[..i].iter().all(|&t| !sys.matrix().is_edge(s, t)),
            None => false,
        }
    }

    pub fn is_final(&self, sys: &CoxeterSystem, s: usize) -> bool {
        match self.position(s) {
            Some(i) => self.word[i + 1..].iter().all(|&t| !sys.matrix().is_edge(s, t)),
            None => false,
        }
    }

    /// `s c s` for an initial letter `s`: the word with `s` moved to the end.
    pub fn conjugate(&self, sys: &CoxeterSystem, s: usize) -> Result<Self> {
        if !self.is_initial(sys, s) {
            return Err(Error::NotInitial(s));
        }
        let mut word: Vec<usize> = self.word.iter().copied().filter(|&t| t != s).collect();
        word.push(s);
        Self::new(sys, &word)
    }

    /// `s c s` for a final letter `s`: the word with `s` moved to the front.
    pub fn conjugate_final(&self, sys: &CoxeterSystem, s: usize) -> Result<Self> {
        if !self.is_final(sys, s) {
            return Err(Error::NotInitial(s));
        }
        let mut word = vec![s];
        word.extend(self.word.iter().copied().filter(|&t| t != s));
        Self::new(sys, &word)
    }

    /// Restriction to `W_J`: delete letters outside `j_mask`.
    pub fn restrict(&self, sys: &CoxeterSystem, j_mask: u64) -> Self {
        let word: Vec<usize> = self.word.iter().copied().filter(|&s| j_mask & (1 << s) != 0).collect();
        Self::new(sys, &word).expect("subword of a Coxeter word")
    }

    /// `c^{-1}`, the reversed word.
    pub fn inverse(&self, sys: &CoxeterSystem) -> Self {
        let word: Vec<usize> = self.word.iter().rev().copied().collect();
        Self::new(sys, &word).expect("reversed Coxeter word")
    }

    /// Multiplicative order of `c`.
    pub fn order(&self) -> usize {
        let mut p = self.element.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(&self.element);
            k += 1;
        }
        k
    }

    /// A 2-coloring of the diagram restricted to the support: breadth-first
    /// from the lowest index of each component, color 0 first. Returns the
    /// masks `(S_-, S_+)`.
    pub fn bipartition(&self, sys: &CoxeterSystem) -> (u64, u64) {
        let n = sys.rank();
        let mut color = vec![None; n];
        for start in 0..n {
            if !self.contains(start) || color[start].is_some() {
                continue;
            }
            color[start] = Some(0u8);
            let mut queue = VecDeque::from([start]);
            while let Some(s) = queue.pop_front() {
                for t in 0..n {
                    if self.contains(t) && sys.matrix().is_edge(s, t) && color[t].is_none() {
                        color[t] = Some(1 - color[s].unwrap());
                        queue.push_back(t);
                    }
                }
            }
        }
        let mut minus = 0;
        let mut plus = 0;
        for (s, c) in color.iter().enumerate() {
            match c {
                Some(0) => minus |= 1 << s,
                Some(_) => plus |= 1 << s,
                None => {}
            }
        }
        (minus, plus)
    }

    /// Whether this is the bipartite element `c_- c_+` for the fixed coloring.
    pub fn is_bipartite(&self, sys: &CoxeterSystem) -> bool {
        let (minus, _) = self.bipartition(sys);
        self.orientation(sys).iter().all(|&(s, _)| minus & (1 << s) != 0)
    }

    /// Shortest sequence of initial-letter conjugations carrying `c` to the
    /// bipartite Coxeter element `c_- c_+` (breadth-first over orientations,
    /// letters tried in ascending order).
    pub fn bipartite_path(&self, sys: &CoxeterSystem) -> Vec<usize> {
        let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.orientation(sys));
        queue.push_back((self.clone(), Vec::new()));
        while let Some((c, path)) = queue.pop_front() {
            if c.is_bipartite(sys) {
                return path;
            }
            for s in c.initial_letters(sys) {
                let next = c.conjugate(sys, s).expect("initial");
                if seen.insert(next.orientation(sys)) {
                    let mut p = path.clone();
                    p.push(s);
                    queue.push_back((next, p));
                }
            }
        }
        unreachable!("every orientation of a forest reaches the bipartite one")
    }
}

/// All Coxeter elements of `W_J`, one per acyclic orientation of the
/// diagram restricted to `J`, ordered by canonical word.
pub fn coxeter_elements_of(sys: &CoxeterSystem, j_mask: u64) -> Vec<CoxeterElement> {
    let n = sys.rank();
    let mut edges = Vec::new();
    for s in 0..n {
        for t in (s + 1)..n {
            if j_mask & (1 << s) != 0 && j_mask & (1 << t) != 0 && sys.matrix().is_edge(s, t) {
                edges.push((s, t));
            }
        }
    }
    let mut out = Vec::new();
    for bits in 0..(1u64 << edges.len()) {
        let oriented: Vec<(usize, usize)> =
            edges.iter().enumerate().map(|(i, &(s, t))| if bits & (1 << i) == 0 { (s, t) } else { (t, s) }).collect();
        // The diagram of a finite Coxeter group is a forest, so every
        // orientation is acyclic.
        if let Ok(c) = CoxeterElement::from_orientation(sys, j_mask, &oriented) {
            out.push(c);
        }
    }
    out.sort_by(|a, b| a.word.cmp(&b.word));
    out
}

pub fn coxeter_elements(sys: &CoxeterSystem) -> Vec<CoxeterElement> {
    coxeter_elements_of(sys, sys.full_mask())
}

/// The c-sorting word of an element: its letters, their positions in
/// `c^infinity`, and the blocks between consecutive dividers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortingWord {
    pub letters: Vec<usize>,
    pub positions: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
}

impl SortingWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Blocks as generator masks.
    pub fn block_masks(&self) -> Vec<u64> {
        self.blocks.iter().map(|b| b.iter().fold(0, |m, &s| m | (1 << s))).collect()
    }

    /// Blocks weakly decrease under inclusion.
    pub fn is_decreasing(&self) -> bool {
        self.block_masks().windows(2).all(|w| w[1] & !w[0] == 0)
    }

    pub fn reduced_word(&self) -> ReducedWord {
        ReducedWord(self.letters.clone())
    }

    /// `a1 a2 | a3 ...` with generators written `s<i>`.
    pub fn display(&self) -> String {
        self.blocks.iter().map(|b| b.iter().map(|s| format!("s{s}")).collect::<String>()).collect::<Vec<_>>().join("|")
    }

    /// Reflection `a1 ... a(i-1) a_i a(i-1) ... a1` for each position `i`.
    pub fn prefix_reflections(&self, sys: &CoxeterSystem) -> Vec<usize> {
        let mut prefix = Element::identity(sys);
        let mut out = Vec::with_capacity(self.letters.len());
        for &a in &self.letters {
            out.push(prefix.apply(SignedRoot::positive(sys.simple_reflection(a))).index());
            prefix = prefix.mul_simple_right(sys, a);
        }
        out
    }
}

/// The c-sorting word of `w`, computed greedily over the given reduced word
/// of `c`: scan `c^infinity` and take each letter that is a left descent of
/// what remains.
pub fn sorting_word_for(sys: &CoxeterSystem, w: &Element, cword: &[usize]) -> Result<SortingWord> {
    let n = cword.len();
    let mut rest = w.inverse(); // rest = (remaining quotient)^{-1}
    let mut letters = Vec::with_capacity(w.length());
    let mut positions = Vec::with_capacity(w.length());
    let mut blocks = Vec::new();
    let mut pass = 0;
    while !rest.is_identity() {
        let mut block = Vec::new();
        for (i, &s) in cword.iter().enumerate() {
            // s is a left descent of the quotient iff a right descent of its inverse.
            if rest.is_right_descent(sys, s) {
                rest = rest.mul_simple_right(sys, s);
                letters.push(s);
                positions.push(pass * n + i);
                block.push(s);
            }
        }
        if block.is_empty() {
            return Err(Error::NotInParabolic);
        }
        blocks.push(block);
        pass += 1;
    }
    Ok(SortingWord { letters, positions, blocks })
}

pub fn sorting_word(sys: &CoxeterSystem, w: &Element, c: &CoxeterElement) -> Result<SortingWord> {
    sorting_word_for(sys, w, &c.word)
}

/// Whether `w` is c-sortable. Elements outside `W_J` (for `c` a Coxeter
/// element of `W_J`) are not.
pub fn is_sortable(sys: &CoxeterSystem, w: &Element, c: &CoxeterElement) -> bool {
    match sorting_word(sys, w, c) {
        Ok(sw) => sw.is_decreasing(),
        Err(_) => false,
    }
}

/// A c-sortable element with its sorting word.
#[derive(Debug, Clone)]
pub struct Sortable {
    pub element: Element,
    pub word: SortingWord,
}

/// Depth-first traversal of the tree of c-sortable elements rooted at the
/// identity; children are visited by ascending appended letter.
pub struct SortableIter<'a> {
    sys: &'a CoxeterSystem,
    c: CoxeterElement,
    stack: Vec<Sortable>,
}

impl Iterator for SortableIter<'_> {
    type Item = Sortable;

    fn next(&mut self) -> Option<Sortable> {
        let node = self.stack.pop()?;
        let mut children = Vec::new();
        for &s in self.c.word.iter().collect::<std::collections::BTreeSet<_>>() {
            if node.element.is_right_descent(self.sys, s) {
                continue;
            }
            let child = node.element.mul_simple_right(self.sys, s);
            let word = sorting_word(self.sys, &child, &self.c).expect("child stays in W_J");
            if word.letters.len() == node.word.letters.len() + 1
                && word.letters[..node.word.letters.len()] == node.word.letters[..]
                && word.is_decreasing()
            {
                children.push(Sortable { element: child, word });
            }
        }
        // Push in reverse so the smallest letter is explored first.
        self.stack.extend(children.into_iter().rev());
        Some(node)
    }
}

pub fn enumerate_sortables<'a>(sys: &'a CoxeterSystem, c: &CoxeterElement) -> SortableIter<'a> {
    let root = Sortable {
        element: Element::identity(sys),
        word: SortingWord { letters: vec![], positions: vec![], blocks: vec![] },
    };
    SortableIter { sys, c: c.clone(), stack: vec![root] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::GroupType;

    fn b2() -> CoxeterSystem {
        CoxeterSystem::of_type(GroupType::B(2)).unwrap()
    }

    #[test]
    fn letters_and_conjugation() {
        let sys = b2();
        let c = CoxeterElement::full(&sys, &[0, 1]).unwrap();
        assert_eq!(c.initial_letters(&sys), vec![0]);
        assert_eq!(c.final_letters(&sys), vec![1]);
        let scs = c.conjugate(&sys, 0).unwrap();
        assert_eq!(scs, CoxeterElement::full(&sys, &[1, 0]).unwrap());
        assert_eq!(c.conjugate(&sys, 1), Err(Error::NotInitial(1)));
        let r = c.restrict(&sys, 0b10);
        assert_eq!(r.word(), &[1]);
        assert_eq!(r.element(), &sys.element_from_word(&[1]).unwrap());
    }

    #[test]
    fn commuting_letters_do_not_matter() {
        let sys = CoxeterSystem::of_type(GroupType::A(3)).unwrap();
        let a = CoxeterElement::full(&sys, &[0, 2, 1]).unwrap();
        let b = CoxeterElement::full(&sys, &[2, 0, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.orientation(&sys), b.orientation(&sys));
        assert_eq!(a.canonical_word(&sys), vec![0, 2, 1]);
        assert_eq!(a.initial_letters(&sys), vec![0, 2]);
        assert!(CoxeterElement::full(&sys, &[0, 1]).is_err());
        assert!(CoxeterElement::new(&sys, &[0, 0]).is_err());
    }

    #[test]
    fn counts_of_coxeter_elements() {
        let sys = CoxeterSystem::of_type(GroupType::D(4)).unwrap();
        assert_eq!(coxeter_elements(&sys).len(), 8);
        let sys = CoxeterSystem::of_type(GroupType::A(5)).unwrap();
        assert_eq!(coxeter_elements(&sys).len(), 16);
    }

    #[test]
    fn b2_sorting_words() {
        let sys = b2();
        let c = CoxeterElement::full(&sys, &[0, 1]).unwrap();
        let id = Element::identity(&sys);
        let sw = sorting_word(&sys, &id, &c).unwrap();
        assert!(sw.is_empty() && sw.blocks.is_empty());
        let w0 = sys.longest_element();
        assert_eq!(sorting_word(&sys, &w0, &c).unwrap().display(), "s0s1|s0s1");
        let w = sys.element_from_word(&[1, 0]).unwrap();
        let sw = sorting_word(&sys, &w, &c).unwrap();
        assert_eq!(sw.display(), "s1|s0");
        assert_eq!(sw.blocks, vec![vec![1], vec![0]]);
    }

    #[test]
    fn b2_sortables() {
        let sys = b2();
        let c = CoxeterElement::full(&sys, &[0, 1]).unwrap();
        for word in [&[][..], &[0], &[0, 1], &[0, 1, 0], &[0, 1, 0, 1], &[1]] {
            assert!(is_sortable(&sys, &sys.element_from_word(word).unwrap(), &c), "{word:?}");
        }
        for word in [&[1, 0][..], &[1, 0, 1]] {
            assert!(!is_sortable(&sys, &sys.element_from_word(word).unwrap(), &c), "{word:?}");
        }
        let listed: Vec<String> = enumerate_sortables(&sys, &c).map(|s| s.word.display()).collect();
        assert_eq!(listed, vec!["", "s0", "s0s1", "s0s1|s0", "s0s1|s0s1", "s1"]);
    }

    #[test]
    fn longest_element_always_sortable() {
        for t in [GroupType::A(3), GroupType::B(3), GroupType::H(3)] {
            let sys = CoxeterSystem::of_type(t).unwrap();
            let w0 = sys.longest_element();
            for c in coxeter_elements(&sys) {
                assert!(is_sortable(&sys, &w0, &c));
            }
        }
    }

    #[test]
    fn a3_has_fourteen_sortables_for_every_c() {
        let sys = CoxeterSystem::of_type(GroupType::A(3)).unwrap();
        for c in coxeter_elements(&sys) {
            let list: Vec<Sortable> = enumerate_sortables(&sys, &c).collect();
            assert_eq!(list.len(), 14);
            assert!(list[0].element.is_identity());
            let brute = sys.elements().iter().filter(|w| is_sortable(&sys, w, &c)).count();
            assert_eq!(brute, 14);
        }
    }

    #[test]
    fn parabolic_sorting_rejects_outside_elements() {
        let sys = b2();
        let c = CoxeterElement::new(&sys, &[0]).unwrap();
        let w = sys.element_from_word(&[1]).unwrap();
        assert_eq!(sorting_word(&sys, &w, &c), Err(Error::NotInParabolic));
        assert!(!is_sortable(&sys, &w, &c));
    }

    #[test]
    fn bipartite_paths() {
        let sys = b2();
        assert!(CoxeterElement::full(&sys, &[0, 1]).unwrap().bipartite_path(&sys).is_empty());
        let a3 = CoxeterSystem::of_type(GroupType::A(3)).unwrap();
        let c = CoxeterElement::full(&a3, &[0, 1, 2]).unwrap();
        let path = c.bipartite_path(&a3);
        assert!(!path.is_empty());
        let mut cur = c.clone();
        for s in path {
            assert!(cur.is_initial(&a3, s));
            cur = cur.conjugate(&a3, s).unwrap();
        }
        assert!(cur.is_bipartite(&a3));
        let bip = CoxeterElement::full(&a3, &[0, 2, 1]).unwrap();
        assert!(bip.is_bipartite(&a3));
        assert!(bip.bipartite_path(&a3).is_empty());
    }
}
