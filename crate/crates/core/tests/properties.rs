use std::sync::OnceLock;

use proptest::prelude::*;

use coxeter_sortable::alignment::Orientation;
use coxeter_sortable::classical::{barring, condition_d, condition_d_mirrored, from_one_line, to_one_line};
use coxeter_sortable::sorting::{coxeter_elements, is_sortable, sorting_word_for};
use coxeter_sortable::{CoxeterElement, CoxeterSystem, Element, GroupType};

fn systems() -> &'static [CoxeterSystem] {
    static CELL: OnceLock<Vec<CoxeterSystem>> = OnceLock::new();
    CELL.get_or_init(|| {
        [
            GroupType::A(3),
            GroupType::B(3),
            GroupType::D(4),
            GroupType::H(3),
            GroupType::A(4),
            GroupType::I2(5),
            GroupType::F4,
        ]
        .into_iter()
        .map(|t| CoxeterSystem::of_type(t).unwrap())
        .collect()
    })
}

/// A system, an element given by a random (not necessarily reduced) word,
/// and a Coxeter element.
fn case() -> impl Strategy<Value = (usize, Vec<usize>, usize)> {
    (0..systems().len(), prop::collection::vec(0usize..8, 0..40), 0usize..64)
}

fn build(sys: &CoxeterSystem, letters: &[usize], k: usize) -> (Element, CoxeterElement) {
    let word: Vec<usize> = letters.iter().map(|s| s % sys.rank()).collect();
    let cs = coxeter_elements(sys);
    (sys.element_from_word(&word).unwrap(), cs[k % cs.len()].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn exchange_and_inversions((g, letters, k) in case()) {
        let sys = &systems()[g];
        let (w, _) = build(sys, &letters, k);
        for s in 0..sys.rank() {
            let ws = w.mul_simple_right(sys, s);
            prop_assert_eq!(ws.length().abs_diff(w.length()), 1);
        }
        for t in 0..sys.num_reflections() {
            let tw = sys.reflection(t).compose(&w);
            prop_assert_eq!(w.is_inversion(t), tw.length() < w.length());
        }
        prop_assert_eq!(sys.inversion_set(&w).len(), w.length());
    }

    #[test]
    fn reduced_words_round_trip((g, letters, k) in case()) {
        let sys = &systems()[g];
        let (w, _) = build(sys, &letters, k);
        let rw = sys.reduced_word(&w);
        prop_assert_eq!(rw.len(), w.length());
        prop_assert_eq!(sys.element_from_word(rw.letters()).unwrap(), w.clone());
        let used = rw.letters().iter().fold(0u64, |m, &s| m | 1 << s);
        prop_assert_eq!(used, sys.support(&w));
        prop_assert!(w.compose(&w.inverse()).is_identity());
    }

    #[test]
    fn prefix_of_sorting_word_is_sortable((g, letters, k) in case()) {
        let sys = &systems()[g];
        let (w, c) = build(sys, &letters, k);
        if !is_sortable(sys, &w, &c) || w.is_identity() {
            return Ok(());
        }
        let sw = sorting_word_for(sys, &w, c.word()).unwrap();
        let prefix = &sw.letters[..sw.len() - 1];
        let u = sys.element_from_word(prefix).unwrap();
        prop_assert!(is_sortable(sys, &u, &c));
        prop_assert_eq!(&sorting_word_for(sys, &u, c.word()).unwrap().letters[..], prefix);
    }

    /// Swapping two adjacent commuting letters of c changes neither
    /// sortability, the blocks, nor the orientation.
    #[test]
    fn commutation_class_of_c((g, letters, k) in case(), i in 0usize..8) {
        let sys = &systems()[g];
        let (w, c) = build(sys, &letters, k);
        let mut word = c.word().to_vec();
        let i = i % (word.len() - 1);
        if sys.matrix().get(word[i], word[i + 1]) != Some(2) {
            return Ok(());
        }
        word.swap(i, i + 1);
        let c2 = CoxeterElement::full(sys, &word).unwrap();
        prop_assert_eq!(&c, &c2);
        prop_assert_eq!(is_sortable(sys, &w, &c), is_sortable(sys, &w, &c2));
        let mut a = sorting_word_for(sys, &w, c.word()).unwrap().block_masks();
        let mut b = sorting_word_for(sys, &w, &word).unwrap().block_masks();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
        let (o1, o2) = (Orientation::new(sys, &c), Orientation::new(sys, &c2));
        prop_assert_eq!(o1.parabolics, o2.parabolics);
    }

    #[test]
    fn one_line_round_trip_and_descents((g, letters, k) in case()) {
        let sys = &systems()[g];
        let (w, c) = build(sys, &letters, k);
        let Ok(p) = to_one_line(sys, &w) else { return Ok(()) };
        prop_assert_eq!(from_one_line(sys, &p).unwrap(), w.clone());
        for s in 0..sys.rank() {
            prop_assert_eq!(p.is_descent(s), w.is_right_descent(sys, s), "s{}", s);
        }
        if matches!(sys.kind(), Some(GroupType::D(_))) {
            let b = barring(sys, &c).unwrap();
            prop_assert_eq!(condition_d(&p, &b).unwrap(), condition_d_mirrored(&p, &b).unwrap());
        }
    }

    #[test]
    fn roots_closed_under_simple_reflections(g in 0..systems().len()) {
        let sys = &systems()[g];
        for r in sys.positive_roots() {
            for s in 0..sys.rank() {
                let img = sys.reflect_root(r, s).unwrap();
                let found = sys.lookup_coords(&img.coords);
                prop_assert!(found.is_some());
            }
        }
        prop_assert_eq!(sys.positive_roots().len(), sys.longest_element().length());
    }
}
