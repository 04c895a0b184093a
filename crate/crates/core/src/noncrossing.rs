//! Absolute length, absolute order and the noncrossing partitions `[1,c]_T`,
//! together with the bijection from c-sortable elements.

use std::collections::{HashMap, HashSet};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg;
use crate::root_system::CoxeterSystem;
use crate::sorting::{enumerate_sortables, is_sortable, sorting_word, CoxeterElement};

/// Tolerance for deciding that a vector is fixed.
const FIXED_TOL: f64 = 1e-8;

fn minus_identity(sys: &CoxeterSystem, w: &Element) -> Vec<Vec<f64>> {
    let mut m = sys.matrix_of(w);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= 1.0;
    }
    m
}

/// A basis of the fixed space `U_w` (coordinates in the simple-root basis).
pub fn fixed_space(sys: &CoxeterSystem, w: &Element) -> Vec<Vec<f64>> {
    linalg::null_space(&minus_identity(sys, w))
}

/// Length of a shortest factorization into reflections; the codimension of
/// the fixed space.
pub fn absolute_length(sys: &CoxeterSystem, w: &Element) -> usize {
    linalg::rank(&minus_identity(sys, w))
}

/// `x <=_T y`.
pub fn le_t(sys: &CoxeterSystem, x: &Element, y: &Element) -> bool {
    let q = x.inverse().compose(y);
    absolute_length(sys, x) + absolute_length(sys, &q) == absolute_length(sys, y)
}

/// Whether `U_x` contains `U_y`.
pub fn fixed_space_contains(sys: &CoxeterSystem, x: &Element, y: &Element) -> bool {
    let m = minus_identity(sys, x);
    fixed_space(sys, y)
        .iter()
        .all(|v| m.iter().all(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<f64>().abs() < FIXED_TOL))
}

/// Canonical generators of the parabolic subgroup attached to `x`: the
/// simple system of `{t : U_t contains U_x}`.
pub fn canonical_generators(sys: &CoxeterSystem, x: &Element) -> Vec<usize> {
    let basis = fixed_space(sys, x);
    let refl: Vec<usize> = (0..sys.num_reflections())
        .filter(|&t| {
            let beta = &sys.root(t).coords;
            basis.iter().all(|v| sys.bilinear(v, beta).abs() < FIXED_TOL)
        })
        .collect();
    sys.simple_system_of(&refl)
}

/// An element of `[1,c]_T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCPartition {
    pub element: Element,
    pub rank: usize,
    pub canonical_generators: Vec<usize>,
}

/// The interval `[1,c]_T`, grown breadth-first by right multiplication with
/// reflections; ordered by rank, then by element.
pub fn nc_interval(sys: &CoxeterSystem, c: &CoxeterElement) -> Vec<NCPartition> {
    let top = c.element();
    let top_len = absolute_length(sys, top);
    let mut layer = vec![Element::identity(sys)];
    let mut all = vec![(Element::identity(sys), 0usize)];
    for rank in 1..=top_len {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for x in &layer {
            for t in 0..sys.num_reflections() {
                let y = x.compose(sys.reflection(t));
                if !seen.contains(&y) && absolute_length(sys, &y) == rank && le_t(sys, &y, top) {
                    seen.insert(y.clone());
                    next.push(y);
                }
            }
        }
        all.extend(next.iter().map(|y| (y.clone(), rank)));
        layer = next;
    }
    let mut out: Vec<NCPartition> = all
        .into_iter()
        .map(|(element, rank)| {
            let canonical_generators = canonical_generators(sys, &element);
            NCPartition { element, rank, canonical_generators }
        })
        .collect();
    out.sort_by(|a, b| (a.rank, &a.element).cmp(&(b.rank, &b.element)));
    out
}

/// Cover reflections of a c-sortable `w`, ordered by their position among
/// the prefix reflections of its c-sorting word.
pub fn nc_factors(sys: &CoxeterSystem, w: &Element, c: &CoxeterElement) -> Result<Vec<usize>> {
    if !is_sortable(sys, w, c) {
        return Err(Error::NotSortable);
    }
    let order = sorting_word(sys, w, c)?.prefix_reflections(sys);
    let covers: HashSet<usize> = sys.cover_reflections(w).into_iter().collect();
    Ok(order.into_iter().filter(|t| covers.contains(t)).collect())
}

/// The product of the ordered cover reflections of a c-sortable `w`.
pub fn nc_map(sys: &CoxeterSystem, w: &Element, c: &CoxeterElement) -> Result<Element> {
    let factors = nc_factors(sys, w, c)?;
    Ok(factors.iter().fold(Element::identity(sys), |acc, &t| acc.compose(sys.reflection(t))))
}

/// The map from c-sortable elements to `[1,c]_T`, tabulated in both
/// directions. Construction fails if the map is not a bijection.
#[derive(Debug, Clone)]
pub struct NcTable {
    pub sortables: Vec<Element>,
    pub images: Vec<Element>,
    pub factors: Vec<Vec<usize>>,
    inverse: HashMap<Element, usize>,
}

impl NcTable {
    pub fn new(sys: &CoxeterSystem, c: &CoxeterElement) -> Result<Self> {
        let mut sortables = Vec::new();
        let mut images = Vec::new();
        let mut factors = Vec::new();
        let mut inverse = HashMap::new();
        for node in enumerate_sortables(sys, c) {
            let f = nc_factors(sys, &node.element, c)?;
            let x = f.iter().fold(Element::identity(sys), |acc, &t| acc.compose(sys.reflection(t)));
            if inverse.insert(x.clone(), sortables.len()).is_some() {
                return Err(Error::BijectionViolation(format!(
                    "two sortable elements map to {:?}",
                    sys.reduced_word(&x).0
                )));
            }
            sortables.push(node.element);
            images.push(x);
            factors.push(f);
        }
        let interval = nc_interval(sys, c);
        if interval.len() != sortables.len() || interval.iter().any(|p| !inverse.contains_key(&p.element)) {
            return Err(Error::BijectionViolation(format!(
                "{} sortable elements but {} noncrossing partitions",
                sortables.len(),
                interval.len()
            )));
        }
        Ok(NcTable { sortables, images, factors, inverse })
    }

    pub fn len(&self) -> usize {
        self.sortables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sortables.is_empty()
    }

    /// Index of the sortable element mapping to `x`.
    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.inverse.get(x).copied()
    }

    pub fn inverse(&self, sys: &CoxeterSystem, x: &Element, c: &CoxeterElement) -> Result<&Element> {
        if !le_t(sys, x, c.element()) {
            return Err(Error::NotNoncrossing);
        }
        self.index_of(x)
            .map(|i| &self.sortables[i])
            .ok_or_else(|| Error::BijectionViolation("noncrossing partition has no preimage".into()))
    }

    /// The reduced T-word for `x` read off its preimage.
    pub fn canonical_t_word(&self, sys: &CoxeterSystem, x: &Element, c: &CoxeterElement) -> Result<Vec<usize>> {
        self.inverse(sys, x, c)?;
        Ok(self.factors[self.inverse[x]].clone())
    }
}

/// The c-sortable element mapping to `x`.
pub fn nc_inverse(sys: &CoxeterSystem, x: &Element, c: &CoxeterElement) -> Result<Element> {
    if !le_t(sys, x, c.element()) {
        return Err(Error::NotNoncrossing);
    }
    NcTable::new(sys, c)?.inverse(sys, x, c).cloned()
}

pub fn canonical_t_word(sys: &CoxeterSystem, x: &Element, c: &CoxeterElement) -> Result<Vec<usize>> {
    if !le_t(sys, x, c.element()) {
        return Err(Error::NotNoncrossing);
    }
    NcTable::new(sys, c)?.canonical_t_word(sys, x, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{GroupType, SignedRoot};

    fn b2() -> (CoxeterSystem, CoxeterElement) {
        let sys = CoxeterSystem::of_type(GroupType::B(2)).unwrap();
        let c = CoxeterElement::full(&sys, &[0, 1]).unwrap();
        (sys, c)
    }

    fn el(sys: &CoxeterSystem, w: &[usize]) -> Element {
        sys.element_from_word(w).unwrap()
    }

    fn refl(sys: &CoxeterSystem, w: &[usize]) -> usize {
        let k = w.len() / 2;
        el(sys, &w[..k]).apply(SignedRoot::positive(sys.simple_reflection(w[k]))).index()
    }

    #[test]
    fn absolute_lengths() {
        let (sys, c) = b2();
        assert_eq!(absolute_length(&sys, &Element::identity(&sys)), 0);
        for t in 0..sys.num_reflections() {
            assert_eq!(absolute_length(&sys, sys.reflection(t)), 1);
        }
        assert_eq!(absolute_length(&sys, c.element()), 2);
        assert!(le_t(&sys, &el(&sys, &[0, 1, 0]), c.element()));
        assert!(!le_t(&sys, c.element(), &el(&sys, &[0])));
    }

    #[test]
    fn b2_interval() {
        let (sys, c) = b2();
        let nc = nc_interval(&sys, &c);
        assert_eq!(nc.len(), 6);
        let ranks: Vec<usize> = (0..=2).map(|r| nc.iter().filter(|p| p.rank == r).count()).collect();
        assert_eq!(ranks, vec![1, 4, 1]);
        let a2 = CoxeterSystem::of_type(GroupType::A(2)).unwrap();
        assert_eq!(nc_interval(&a2, &CoxeterElement::standard(&a2)).len(), 5);
    }

    #[test]
    fn b2_nc_map() {
        let (sys, c) = b2();
        let cases: [(&[usize], &[usize]); 6] = [
            (&[], &[]),
            (&[0], &[0]),
            (&[0, 1], &[0, 1, 0]),
            (&[0, 1, 0], &[1, 0, 1]),
            (&[0, 1, 0, 1], &[0, 1]),
            (&[1], &[1]),
        ];
        for (w, x) in cases {
            assert_eq!(nc_map(&sys, &el(&sys, w), &c).unwrap(), el(&sys, x), "{w:?}");
        }
        assert_eq!(nc_map(&sys, &el(&sys, &[1, 0]), &c), Err(Error::NotSortable));
        let factors = nc_factors(&sys, &sys.longest_element(), &c).unwrap();
        assert_eq!(factors, vec![sys.simple_reflection(0), sys.simple_reflection(1)]);
    }

    #[test]
    fn b2_inverse_and_words() {
        let (sys, c) = b2();
        let x = el(&sys, &[1, 0, 1]);
        assert_eq!(nc_inverse(&sys, &x, &c).unwrap(), el(&sys, &[0, 1, 0]));
        assert!(nc_inverse(&sys, &Element::identity(&sys), &c).unwrap().is_identity());
        assert_eq!(nc_inverse(&sys, c.element(), &c).unwrap(), sys.longest_element());
        assert_eq!(nc_inverse(&sys, &el(&sys, &[1, 0]), &c), Err(Error::NotNoncrossing));
        let table = NcTable::new(&sys, &c).unwrap();
        assert_eq!(
            table.canonical_t_word(&sys, c.element(), &c).unwrap(),
            vec![sys.simple_reflection(0), sys.simple_reflection(1)]
        );
        assert!(table.canonical_t_word(&sys, &Element::identity(&sys), &c).unwrap().is_empty());
        let t = refl(&sys, &[0, 1, 0]);
        assert_eq!(table.canonical_t_word(&sys, sys.reflection(t), &c).unwrap(), vec![t]);
    }

    #[test]
    fn canonical_generators_of_b2_interval() {
        let (sys, c) = b2();
        for p in nc_interval(&sys, &c) {
            assert_eq!(p.canonical_generators.len(), p.rank);
            let table = NcTable::new(&sys, &c).unwrap();
            let mut w = table.canonical_t_word(&sys, &p.element, &c).unwrap();
            w.sort_unstable();
            assert_eq!(w, p.canonical_generators);
        }
    }
}
