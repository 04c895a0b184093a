//! Coxeter numbers, exponents and the Catalan/Narayana counts, compared
//! against the sizes of the combinatorial families.

use serde::{Deserialize, Serialize};

use crate::clusters::enumerate_clusters;
use crate::error::{Error, Result};
use crate::linalg::mat_mul;
use crate::noncrossing::nc_interval;
use crate::root_system::{CoxeterMatrix, CoxeterSystem};
use crate::sorting::{enumerate_sortables, CoxeterElement};

/// Coxeter number and exponents of one irreducible component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degrees {
    /// Simple generators of the component.
    pub generators: Vec<usize>,
    pub h: usize,
    pub exponents: Vec<usize>,
}

/// Exponents of each irreducible component, read off the eigenvalues of a
/// Coxeter element: the multiplicity of `exp(2 pi i k / h)` is
/// `(1/h) sum_j tr(M^j) cos(2 pi j k / h)`.
pub fn degrees(sys: &CoxeterSystem) -> Result<Vec<Degrees>> {
    let mut out = Vec::new();
    for comp in sys.components() {
        let word = comp.clone();
        let c = CoxeterElement::new(sys, &word)?;
        let h = c.order();
        let full = sys.matrix_of(c.element());
        let m: Vec<Vec<f64>> = comp.iter().map(|&i| comp.iter().map(|&j| full[i][j]).collect()).collect();
        let k = comp.len();
        let mut traces = Vec::with_capacity(h);
        let mut power: Vec<Vec<f64>> =
            (0..k).map(|i| (0..k).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        for _ in 0..h {
            traces.push((0..k).map(|i| power[i][i]).sum::<f64>());
            power = mat_mul(&power, &m);
        }
        let mut exponents = Vec::new();
        for e in 0..h {
            let mult: f64 = traces
                .iter()
                .enumerate()
                .map(|(j, tr)| tr * (2.0 * std::f64::consts::PI * (j * e) as f64 / h as f64).cos())
                .sum::<f64>()
                / h as f64;
            let rounded = mult.round();
            if (mult - rounded).abs() > 1e-6 || rounded < 0.0 {
                return Err(Error::NumericalDrift(format!("eigenvalue multiplicity {mult} for exponent {e}")));
            }
            exponents.extend(std::iter::repeat_n(e, rounded as usize));
        }
        if exponents.len() != k || exponents.contains(&0) {
            return Err(Error::NumericalDrift(format!("exponents {exponents:?} for a rank-{k} component")));
        }
        out.push(Degrees { generators: comp, h, exponents });
    }
    Ok(out)
}

fn product_formula(degrees: &[Degrees], shift: i64) -> Result<u128> {
    let mut total: u128 = 1;
    for d in degrees {
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for &e in &d.exponents {
            num *= (e as i64 + d.h as i64 + shift) as u128;
            den *= e as u128 + 1;
        }
        if !num.is_multiple_of(den) {
            return Err(Error::NonInteger(format!("{num}/{den}")));
        }
        total *= num / den;
    }
    Ok(total)
}

/// `prod (e_i + h + 1) / (e_i + 1)`, multiplied over components.
pub fn catalan_formula(degrees: &[Degrees]) -> Result<u128> {
    product_formula(degrees, 1)
}

/// `prod (e_i + h - 1) / (e_i + 1)`, multiplied over components.
pub fn positive_catalan_formula(degrees: &[Degrees]) -> Result<u128> {
    product_formula(degrees, -1)
}

/// The standard parabolic subsystem on the generators in `j_mask`.
pub fn parabolic_system(sys: &CoxeterSystem, j_mask: u64) -> Result<CoxeterSystem> {
    let idx: Vec<usize> = (0..sys.rank()).filter(|&s| j_mask & (1 << s) != 0).collect();
    let rows: Vec<Vec<Option<u32>>> =
        idx.iter().map(|&i| idx.iter().map(|&j| sys.matrix().get(i, j)).collect()).collect();
    CoxeterSystem::build(&CoxeterMatrix::from_rows(&rows)?)
}

/// Positive Catalan number by inclusion-exclusion over standard parabolic
/// subgroups: `sum_J (-1)^{|S - J|} Cat(W_J)`.
pub fn positive_catalan_inclusion_exclusion(sys: &CoxeterSystem) -> Result<i128> {
    let n = sys.rank();
    let mut total: i128 = 0;
    for mask in 0..(1u64 << n) {
        let cat = if mask == 0 { 1 } else { catalan_formula(&degrees(&parabolic_system(sys, mask)?)?)? };
        let sign = if (n - mask.count_ones() as usize).is_multiple_of(2) { 1 } else { -1 };
        total += sign * cat as i128;
    }
    Ok(total)
}

/// Counts of the Catalan families for one Coxeter element, each computed
/// independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub catalan: u128,
    pub sortable_count: usize,
    pub nc_count: usize,
    pub cluster_count: usize,
    pub positive_catalan: u128,
    pub positive_full_support: usize,
    pub positive_clusters: usize,
    pub positive_inclusion_exclusion: i128,
    /// Sortable elements by number of descents.
    pub narayana_descents: Vec<usize>,
    /// Noncrossing partitions by rank.
    pub narayana_ranks: Vec<usize>,
    pub all_match: bool,
}

pub fn count_report(sys: &CoxeterSystem, c: &CoxeterElement) -> Result<CountReport> {
    let n = sys.rank();
    let deg = degrees(sys)?;
    let catalan = catalan_formula(&deg)?;
    let positive_catalan = positive_catalan_formula(&deg)?;

    let mut sortable_count = 0;
    let mut positive_full_support = 0;
    let mut narayana_descents = vec![0; n + 1];
    for node in enumerate_sortables(sys, c) {
        sortable_count += 1;
        narayana_descents[sys.descents(&node.element).len()] += 1;
        if sys.support(&node.element) == sys.full_mask() {
            positive_full_support += 1;
        }
    }
    let nc = nc_interval(sys, c);
    let mut narayana_ranks = vec![0; n + 1];
    for p in &nc {
        narayana_ranks[p.rank] += 1;
    }
    let clusters = enumerate_clusters(sys, c)?;
    let positive_clusters = clusters.iter().filter(|cl| cl.is_positive()).count();
    let positive_inclusion_exclusion = positive_catalan_inclusion_exclusion(sys)?;

    let all_match = catalan == sortable_count as u128
        && sortable_count == nc.len()
        && sortable_count == clusters.len()
        && narayana_descents == narayana_ranks
        && positive_catalan == positive_full_support as u128
        && positive_full_support == positive_clusters
        && positive_inclusion_exclusion == positive_full_support as i128;
    Ok(CountReport {
        catalan,
        sortable_count,
        nc_count: nc.len(),
        cluster_count: clusters.len(),
        positive_catalan,
        positive_full_support,
        positive_clusters,
        positive_inclusion_exclusion,
        narayana_descents,
        narayana_ranks,
        all_match,
    })
}

/// Number of c-sortable elements only.
pub fn sortable_count(sys: &CoxeterSystem, c: &CoxeterElement) -> usize {
    enumerate_sortables(sys, c).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::GroupType;

    fn deg(t: GroupType) -> Vec<Degrees> {
        degrees(&CoxeterSystem::of_type(t).unwrap()).unwrap()
    }

    #[test]
    fn exponents_of_small_groups() {
        let d = deg(GroupType::A(2));
        assert_eq!((d[0].h, d[0].exponents.clone()), (3, vec![1, 2]));
        let d = deg(GroupType::B(2));
        assert_eq!((d[0].h, d[0].exponents.clone()), (4, vec![1, 3]));
        for m in 3..9 {
            let d = deg(GroupType::I2(m));
            assert_eq!((d[0].h, d[0].exponents.clone()), (m as usize, vec![1, m as usize - 1]));
        }
        let d = deg(GroupType::H(3));
        assert_eq!((d[0].h, d[0].exponents.clone()), (10, vec![1, 5, 9]));
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan_formula(&deg(GroupType::A(2))).unwrap(), 5);
        assert_eq!(catalan_formula(&deg(GroupType::B(2))).unwrap(), 6);
        assert_eq!(catalan_formula(&deg(GroupType::H(3))).unwrap(), 32);
        assert_eq!(catalan_formula(&deg(GroupType::H(4))).unwrap(), 280);
        assert_eq!(catalan_formula(&deg(GroupType::E(6))).unwrap(), 833);
        assert_eq!(positive_catalan_formula(&deg(GroupType::B(2))).unwrap(), 3);
        let bad = [Degrees { generators: vec![0], h: 2, exponents: vec![2] }];
        assert!(matches!(catalan_formula(&bad), Err(Error::NonInteger(_))));
    }

    #[test]
    fn reducible_systems_multiply() {
        let sys = CoxeterSystem::build(&CoxeterMatrix::commuting(2)).unwrap();
        let d = degrees(&sys).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(catalan_formula(&d).unwrap(), 4);
    }

    #[test]
    fn b2_report() {
        let sys = CoxeterSystem::of_type(GroupType::B(2)).unwrap();
        let r = count_report(&sys, &CoxeterElement::full(&sys, &[0, 1]).unwrap()).unwrap();
        assert_eq!(r.catalan, 6);
        assert_eq!(r.narayana_ranks, vec![1, 4, 1]);
        assert_eq!(r.positive_full_support, 3);
        assert!(r.all_match);
    }

    #[test]
    fn a3_reports() {
        let sys = CoxeterSystem::of_type(GroupType::A(3)).unwrap();
        for c in crate::sorting::coxeter_elements(&sys) {
            let r = count_report(&sys, &c).unwrap();
            assert_eq!(r.catalan, 14);
            assert_eq!(r.narayana_descents, vec![1, 6, 6, 1]);
            assert!(r.all_match, "{r:?}");
        }
    }
}
