//! The cross-check battery: every structural equivalence and lemma is
//! re-tested on concrete data and failures are reported with a witness
//! rather than raised.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alignment::Orientation;
use crate::classical::{barring, is_231_avoiding, satisfies_condition, to_one_line};
use crate::clusters::{
    almost_reflections, cl_map, enumerate_clusters_with, sigma, AlmostReflection, Cluster, Compatibility,
};
use crate::element::Element;
use crate::enumeration::{count_report, degrees, CountReport};
use crate::error::{Error, Result};
use crate::noncrossing::{
    absolute_length, canonical_generators, fixed_space_contains, le_t, nc_interval, nc_map, NcTable,
};
use crate::root_system::{CoxeterSystem, GroupType};
use crate::sorting::{enumerate_sortables, is_sortable, CoxeterElement};

pub const SCHEMA_VERSION: u32 = 1;

/// Groups up to this order are checked element by element in `Auto` mode.
pub const EXHAUSTIVE_LIMIT: u128 = 50_000;

/// Above this order samples come from random walks instead of a uniform
/// draw from the enumerated group.
const ENUMERATE_LIMIT: u128 = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub mode: VerifyMode,
    pub seed: u64,
    /// Number of sampled group elements in sampled mode.
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { mode: VerifyMode::Auto, seed: 0, samples: 10_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    /// Number of instances tested.
    pub checked: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub group: String,
    pub coxeter_word: Vec<usize>,
    pub mode: VerifyMode,
    pub seed: u64,
    pub elements_checked: usize,
    pub counts: Option<CountReport>,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Tally {
    name: &'static str,
    checked: usize,
    failures: usize,
    witness: Option<String>,
    skipped: bool,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, checked: 0, failures: 0, witness: None, skipped: false }
    }

    fn skipped(name: &'static str) -> Self {
        Tally { skipped: true, ..Tally::new(name) }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    fn error(&mut self, e: &Error, context: impl FnOnce() -> String) {
        self.record(false, || format!("{}: {e}", context()));
    }

    fn finish(self) -> CheckResult {
        let status = if self.skipped {
            Status::Skipped
        } else if self.failures > 0 {
            Status::Fail
        } else {
            Status::Pass
        };
        CheckResult {
            name: self.name.into(),
            status,
            checked: self.checked,
            failures: self.failures,
            witness: self.witness,
        }
    }
}

/// Order of `W` from the degrees, without enumerating it.
pub fn group_order(sys: &CoxeterSystem) -> Result<u128> {
    Ok(degrees(sys)?.iter().flat_map(|d| d.exponents.iter().map(|e| *e as u128 + 1)).product())
}

/// The elements the per-element checks run over, and whether they are all
/// of `W`.
pub fn test_elements(sys: &CoxeterSystem, opts: &VerifyOptions) -> Result<(Vec<Element>, bool)> {
    let order = group_order(sys)?;
    let exhaustive = match opts.mode {
        VerifyMode::Exhaustive => true,
        VerifyMode::Sampled => false,
        VerifyMode::Auto => order <= EXHAUSTIVE_LIMIT,
    };
    if exhaustive {
        return Ok((sys.elements(), true));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let samples = if order <= ENUMERATE_LIMIT {
        let all = sys.elements();
        (0..opts.samples).map(|_| all[rng.random_range(0..all.len())].clone()).collect()
    } else {
        let steps = 2 * sys.num_reflections() + 1;
        (0..opts.samples)
            .map(|_| {
                let mut w = Element::identity(sys);
                for _ in 0..rng.random_range(0..=steps) {
                    w = w.mul_simple_right(sys, rng.random_range(0..sys.rank()));
                }
                w
            })
            .collect()
    };
    Ok((samples, false))
}

fn subsets(sys: &CoxeterSystem, seed: u64) -> Vec<u64> {
    let full = sys.full_mask();
    if sys.rank() <= 6 {
        return (0..=full).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut out: BTreeSet<u64> = (0..64).map(|_| rng.random_range(0..=full)).collect();
    out.insert(0);
    out.insert(full);
    out.into_iter().collect()
}

fn word(sys: &CoxeterSystem, w: &Element) -> String {
    sys.reduced_word(w).to_string()
}

fn refl(sys: &CoxeterSystem, t: usize) -> String {
    AlmostReflection::Reflection(t).display(sys)
}

fn group_name(sys: &CoxeterSystem) -> String {
    sys.kind().map(|k| k.to_string()).unwrap_or_else(|| format!("{:?}", sys.matrix().rows()))
}

struct Data<'a> {
    sys: &'a CoxeterSystem,
    c: &'a CoxeterElement,
    elements: Vec<Element>,
    /// `is_sortable` for each entry of `elements`.
    sortable_flags: Vec<bool>,
    sortables: Vec<Element>,
    orientation: Orientation,
    compat: Compatibility<'a>,
    initial: Vec<usize>,
    finals: Vec<usize>,
    subsets: Vec<u64>,
}

/// Runs the whole battery for `c`, which must have full support.
pub fn verify_all(sys: &CoxeterSystem, c: &CoxeterElement, opts: &VerifyOptions) -> Result<Report> {
    if c.support() != sys.full_mask() {
        return Err(Error::NotCoxeterWord(c.word().to_vec()));
    }
    let (elements, exhaustive) = test_elements(sys, opts)?;
    let sortable_flags = elements.iter().map(|w| is_sortable(sys, w, c)).collect();
    let d = Data {
        sys,
        c,
        sortable_flags,
        elements,
        sortables: enumerate_sortables(sys, c).map(|n| n.element).collect(),
        orientation: Orientation::new(sys, c),
        compat: Compatibility::new(sys),
        initial: c.initial_letters(sys),
        finals: c.final_letters(sys),
        subsets: subsets(sys, opts.seed),
    };

    let checks = vec![
        check_align(&d),
        check_align_segments(&d),
        check_classical(&d),
        check_231(&d),
        check_nc_bijection(&d),
        check_cl_bijection(&d),
        check_sc(&d),
        check_scs(&d),
        check_nc_s(&d),
        check_nc_lemma(&d),
        check_nc_lemma_2(&d),
        check_cl_s(&d),
        check_cl_lemma(&d),
        check_dyer(&d),
        check_int(&d),
        check_cover_para(&d),
        check_canon(&d),
        check_abs_para(&d),
        check_family_i(&d),
        check_family_ii(&d),
        check_restrict_or(&d),
        check_restrict(&d),
        check_c_inv(&d),
        check_compat_cross(&d),
        check_subspaces(&d),
        check_absolute_order_quotient(&d),
        check_canonical_word(&d),
    ];
    let counts = count_report(sys, c).ok();
    let mut tally = Tally::new("counts");
    tally.record(counts.as_ref().is_some_and(|r| r.all_match), || format!("{counts:?}"));

    let mut checks: Vec<CheckResult> = checks.into_iter().map(Tally::finish).collect();
    checks.push(tally.finish());
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        group: group_name(sys),
        coxeter_word: c.word().to_vec(),
        mode: if exhaustive { VerifyMode::Exhaustive } else { VerifyMode::Sampled },
        seed: opts.seed,
        elements_checked: d.elements.len(),
        counts,
        checks,
    })
}

fn check_align(d: &Data) -> Tally {
    let mut t = Tally::new("align_sortable");
    for (w, &sortable) in d.elements.iter().zip(&d.sortable_flags) {
        let aligned = d.orientation.is_aligned(d.sys, w);
        t.record(aligned == sortable, || format!("w={} sortable={sortable} aligned={aligned}", word(d.sys, w)));
    }
    t
}

fn check_align_segments(d: &Data) -> Tally {
    let mut t = Tally::new("align_segment_form");
    for w in &d.elements {
        let a = d.orientation.is_aligned(d.sys, w);
        let b = d.orientation.is_aligned_segment_form(d.sys, w);
        t.record(a == b, || format!("w={}", word(d.sys, w)));
    }
    t
}

fn check_classical(d: &Data) -> Tally {
    let classical = matches!(d.sys.kind(), Some(GroupType::A(_) | GroupType::B(_)) | Some(GroupType::D(4..)));
    if !classical {
        return Tally::skipped("classical_condition");
    }
    let mut t = Tally::new("classical_condition");
    let bar = match barring(d.sys, d.c) {
        Ok(b) => b,
        Err(e) => {
            t.error(&e, || "barring".into());
            return t;
        }
    };
    for (w, &sortable) in d.elements.iter().zip(&d.sortable_flags) {
        match to_one_line(d.sys, w).and_then(|p| satisfies_condition(&p, &bar).map(|ok| (p, ok))) {
            Ok((p, ok)) => t.record(ok == sortable, || format!("w={} ({p}) sortable={sortable}", word(d.sys, w))),
            Err(e) => t.error(&e, || word(d.sys, w)),
        }
    }
    t
}

/// In type A with `c = s_{n-1} ... s_0`, sortable means 231-avoiding.
fn check_231(d: &Data) -> Tally {
    let Some(GroupType::A(n)) = d.sys.kind() else { return Tally::skipped("avoid_231") };
    if d.c.word().iter().copied().ne((0..n).rev()) {
        return Tally::skipped("avoid_231");
    }
    let mut t = Tally::new("avoid_231");
    for (w, &sortable) in d.elements.iter().zip(&d.sortable_flags) {
        match to_one_line(d.sys, w) {
            Ok(p) => t.record(is_231_avoiding(&p) == sortable, || format!("w={} ({p})", word(d.sys, w))),
            Err(e) => t.error(&e, || word(d.sys, w)),
        }
    }
    t
}

fn check_nc_bijection(d: &Data) -> Tally {
    let mut t = Tally::new("nc_bijection");
    match NcTable::new(d.sys, d.c) {
        Ok(table) => {
            for (w, x) in table.sortables.iter().zip(&table.images) {
                let (k, r) = (d.sys.descents(w).len(), absolute_length(d.sys, x));
                t.record(k == r, || format!("w={} has {k} descents, nc rank {r}", word(d.sys, w)));
            }
        }
        Err(e) => t.error(&e, || "nc table".into()),
    }
    t
}

fn check_cl_bijection(d: &Data) -> Tally {
    let mut t = Tally::new("cl_bijection");
    let clusters = match enumerate_clusters_with(&d.compat, d.c) {
        Ok(cl) => cl,
        Err(e) => {
            t.error(&e, || "clusters".into());
            return t;
        }
    };
    let mut images = HashSet::new();
    for w in &d.sortables {
        match cl_map(d.sys, w, d.c) {
            Ok(cl) => {
                let full = d.sys.support(w) == d.sys.full_mask();
                t.record(full == cl.is_positive(), || {
                    format!("w={} full={full} cluster={}", word(d.sys, w), cl.display(d.sys))
                });
                t.record(images.insert(cl.clone()), || format!("repeated image {}", cl.display(d.sys)));
            }
            Err(e) => t.error(&e, || word(d.sys, w)),
        }
    }
    let enumerated: HashSet<Cluster> = clusters.into_iter().collect();
    t.record(images == enumerated, || format!("{} images, {} clusters", images.len(), enumerated.len()));
    t
}

fn check_sc(d: &Data) -> Tally {
    let mut t = Tally::new("lemma_sc");
    for &s in &d.initial {
        let sc = d.c.restrict(d.sys, d.sys.full_mask() & !(1 << s));
        for (w, &sortable) in d.elements.iter().zip(&d.sortable_flags) {
            if w.is_left_descent(d.sys, s) {
                continue;
            }
            let rest = is_sortable(d.sys, w, &sc);
            t.record(rest == sortable, || format!("s=s{s} w={}", word(d.sys, w)));
        }
    }
    t
}

fn check_scs(d: &Data) -> Tally {
    let mut t = Tally::new("lemma_scs");
    for &s in &d.initial {
        let scs = d.c.conjugate(d.sys, s).expect("initial letter");
        for (w, &sortable) in d.elements.iter().zip(&d.sortable_flags) {
            if !w.is_left_descent(d.sys, s) {
                continue;
            }
            let sw = w.mul_simple_left(d.sys, s);
            t.record(is_sortable(d.sys, &sw, &scs) == sortable, || format!("s=s{s} w={}", word(d.sys, w)));
        }
    }
    t
}

fn check_nc_s(d: &Data) -> Tally {
    let mut t = Tally::new("lemma_nc_s");
    for &s in &d.initial {
        let scs = d.c.conjugate(d.sys, s).expect("initial letter");
        let gs = d.sys.generator(s);
        for w in d.sortables.iter().filter(|w| w.is_left_descent(d.sys, s)) {
            let sw = w.mul_simple_left(d.sys, s);
            match (nc_map(d.sys, w, d.c), nc_map(d.sys, &sw, &scs)) {
                (Ok(x), Ok(y)) => {
                    let cover = d.sys.cover_reflections(w).contains(&d.sys.simple_reflection(s));
                    let expected = if cover { x.compose(gs) } else { gs.compose(&x).compose(gs) };
                    t.record(y == expected, || format!("s=s{s} w={} cover={cover}", word(d.sys, w)));
                }
                (Err(e), _) | (_, Err(e)) => t.error(&e, || word(d.sys, w)),
            }
        }
    }
    t
}

fn check_nc_lemma(d: &Data) -> Tally {
    let mut t = Tally::new("lemma_nc");
    let letters: BTreeSet<usize> = d.initial.iter().chain(&d.finals).copied().collect();
    for &s in &letters {
        let ts = d.sys.simple_reflection(s);
        let rest = d.sys.full_mask() & !(1 << s);
        for w in &d.sortables {
            let covers = d.sys.cover_reflections(w);
            if !covers.contains(&ts) {
                continue;
            }
            let ok = covers.iter().all(|&u| u == ts || d.sys.reflection_in_parabolic(u, rest));
            t.record(ok, || format!("s=s{s} w={}", word(d.sys, w)));
        }
    }
    t
}

fn check_nc_lemma_2(d: &Data) -> Tally {
    let mut t = Tally::new("lemma_nc_2");
    for &s in &d.finals {
        let ts = d.sys.simple_reflection(s);
        for w in &d.sortables {
            let a = w.is_left_descent(d.sys, s);
            let b = d.sys.cover_reflections(w).contains(&ts);
            t.record(a == b, || format!("s=s{s} w={}", word(d.sys, w)));
        }
    }
    t
}

fn check_cl_s(d: &Data) -> Tally {
    let mut t = Tally::new("lemma_cl_s");
    for &s in &d.initial {
        let sc = d.c.restrict(d.sys, d.sys.full_mask() & !(1 << s));
        let scs = d.c.conjugate(d.sys, s).expect("initial letter");
        for w in &d.sortables {
            let expected = if w.is_left_descent(d.sys, s) {
                let sw = w.mul_simple_left(d.sys, s);
                cl_map(d.sys, &sw, &scs)
                    .map(|cl| Cluster::new(cl.members.into_iter().map(|m| sigma(d.sys, s, m)).collect()))
            } else {
                cl_map(d.sys, w, &sc).map(|cl| {
                    let mut m = cl.members;
                    m.push(AlmostReflection::Negative(s));
                    Cluster::new(m)
                })
            };
            match (cl_map(d.sys, w, d.c), expected) {
                (Ok(a), Ok(b)) => t.record(a == b, || format!("s=s{s} w={}", word(d.sys, w))),
                (Err(e), _) | (_, Err(e)) => t.error(&e, || word(d.sys, w)),
            }
        }
    }
    t
}

fn check_cl_lemma(d: &Data) -> Tally {
    let mut t = Tally::new("lemma_cl");
    for &s in &d.finals {
        let ts = AlmostReflection::Reflection(d.sys.simple_reflection(s));
        for w in &d.sortables {
            match cl_map(d.sys, w, d.c) {
                Ok(cl) => {
                    t.record(w.is_left_descent(d.sys, s) == cl.contains(ts), || format!("s=s{s} w={}", word(d.sys, w)))
                }
                Err(e) => t.error(&e, || word(d.sys, w)),
            }
        }
    }
    t
}

/// Inversions in each rank-two parabolic form an initial or final segment
/// of its chain.
fn check_dyer(d: &Data) -> Tally {
    let mut t = Tally::new("lemma_dyer");
    let parabolics: Vec<_> = d.sys.rank_two_parabolics().iter().filter(|p| p.is_irreducible()).collect();
    for w in &d.elements {
        let inv = w.inversion_flags();
        for p in &parabolics {
            let flags: Vec<bool> = p.chain.iter().map(|&u| inv[u]).collect();
            let k = flags.iter().filter(|&&f| f).count();
            let ok = flags[..k].iter().all(|&f| f) || flags[flags.len() - k..].iter().all(|&f| f);
            t.record(ok, || format!("w={} chain={:?}", word(d.sys, w), p.chain));
        }
    }
    t
}

fn check_int(d: &Data) -> Tally {
    let mut t = Tally::new("lemma_int");
    for &j in &d.subsets {
        for p in d.sys.rank_two_parabolics() {
            let inside: Vec<usize> =
                p.reflections.iter().copied().filter(|&u| d.sys.reflection_in_parabolic(u, j)).collect();
            let ok = match inside.len() {
                0 => true,
                1 => inside[0] == p.canonical.0 || inside[0] == p.canonical.1,
                n => n == p.reflections.len(),
            };
            t.record(ok, || format!("J={j:#b} parabolic={:?} meets in {inside:?}", p.reflections));
        }
    }
    t
}

fn check_cover_para(d: &Data) -> Tally {
    let mut t = Tally::new("lemma_cover_para");
    for w in &d.elements {
        let covers = d.sys.cover_reflections(w);
        for &j in &d.subsets {
            let a = d.sys.in_standard_parabolic(w, j);
            let b = covers.iter().all(|&u| d.sys.reflection_in_parabolic(u, j));
            t.record(a == b, || format!("w={} J={j:#b}", word(d.sys, w)));
        }
    }
    t
}

fn check_canon(d: &Data) -> Tally {
    let mut t = Tally::new("lemma_canon");
    for w in &d.elements {
        let covers = d.sys.cover_reflections(w);
        let mut canonical = d.sys.parabolic_closure(&covers).canonical;
        canonical.sort_unstable();
        t.record(canonical == covers, || format!("w={} covers={covers:?} canonical={canonical:?}", word(d.sys, w)));
    }
    t
}

/// For `x` in `[1, c]_T` and `s` initial: `x` in `W_<s>`, every letter of a
/// reduced T-word for `x` in `W_<s>`, `x <=_T sc`, and `x <=_T sx <=_T c`
/// all agree.
fn check_abs_para(d: &Data) -> Tally {
    let mut t = Tally::new("lemma_abs_para");
    let table = match NcTable::new(d.sys, d.c) {
        Ok(tb) => tb,
        Err(e) => {
            t.error(&e, || "nc table".into());
            return t;
        }
    };
    for &s in &d.initial {
        let rest = d.sys.full_mask() & !(1 << s);
        let gs = d.sys.generator(s);
        let sc = gs.compose(d.c.element());
        for (i, x) in table.images.iter().enumerate() {
            let i_ = d.sys.in_standard_parabolic(x, rest);
            let ii = table.factors[i].iter().all(|&u| d.sys.reflection_in_parabolic(u, rest));
            let iii = le_t(d.sys, x, &sc);
            let sx = gs.compose(x);
            let iv = le_t(d.sys, x, &sx) && le_t(d.sys, &sx, d.c.element());
            t.record(i_ == ii && ii == iii && iii == iv, || {
                format!("s=s{s} x={} ({i_}, {ii}, {iii}, {iv})", word(d.sys, x))
            });
        }
    }
    t
}

fn check_family_i(d: &Data) -> Tally {
    let mut t = Tally::new("family_initial_source");
    for &s in &d.initial {
        let ts = d.sys.simple_reflection(s);
        for p in &d.orientation.parabolics {
            let canon = d.sys.rank_two_parabolics()[p.index].canonical;
            if canon.0 == ts || canon.1 == ts {
                t.record(p.edge.source == ts, || format!("s=s{s} target={}", refl(d.sys, p.edge.target)));
            }
        }
    }
    t
}

fn check_family_ii(d: &Data) -> Tally {
    let mut t = Tally::new("family_conjugation");
    for &s in &d.initial {
        let scs = d.c.conjugate(d.sys, s).expect("initial letter");
        let o = Orientation::new(d.sys, &scs);
        for p in &d.orientation.parabolics {
            let a = d.sys.conjugate_reflection(s, p.edge.source);
            let b = d.sys.conjugate_reflection(s, p.edge.target);
            t.record(o.has_edge(d.sys, a, b), || {
                format!("s=s{s} edge {} -> {}", refl(d.sys, p.edge.source), refl(d.sys, p.edge.target))
            });
        }
    }
    t
}

fn check_restrict_or(d: &Data) -> Tally {
    let mut t = Tally::new("restrict_orientation");
    for &j in d.subsets.iter().filter(|j| j.count_ones() >= 2) {
        let cj = d.c.restrict(d.sys, j);
        let o = Orientation::new(d.sys, &cj);
        for p in &o.parabolics {
            let same = d.orientation.get(p.index).is_some_and(|q| q.edge == p.edge);
            t.record(same, || format!("J={j:#b} parabolic {:?}", d.sys.rank_two_parabolics()[p.index].reflections));
        }
        let inside = d
            .orientation
            .parabolics
            .iter()
            .filter(|p| {
                d.sys.reflection_in_parabolic(p.edge.source, j) && d.sys.reflection_in_parabolic(p.edge.target, j)
            })
            .count();
        t.record(inside == o.parabolics.len(), || format!("J={j:#b}: {inside} vs {}", o.parabolics.len()));
    }
    t
}

fn compat_pairs(
    d: &Data,
    t: &mut Tally,
    nodes: &[AlmostReflection],
    c1: &CoxeterElement,
    c2: &CoxeterElement,
    label: impl Fn() -> String,
) {
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            match (d.compat.compatible(nodes[i], nodes[j], c1), d.compat.compatible(nodes[i], nodes[j], c2)) {
                (Ok(a), Ok(b)) => t.record(a == b, || {
                    format!("{} {} and {}", label(), nodes[i].display(d.sys), nodes[j].display(d.sys))
                }),
                (Err(e), _) | (_, Err(e)) => t.error(&e, &label),
            }
        }
    }
}

fn check_restrict(d: &Data) -> Tally {
    let mut t = Tally::new("restrict_compatibility");
    for &j in d.subsets.iter().filter(|&&j| j != 0 && j != d.sys.full_mask()) {
        let cj = d.c.restrict(d.sys, j);
        compat_pairs(d, &mut t, &almost_reflections(d.sys, j), d.c, &cj, || format!("J={j:#b}"));
    }
    t
}

fn check_c_inv(d: &Data) -> Tally {
    let mut t = Tally::new("inverse_compatibility");
    let inv = d.c.inverse(d.sys);
    compat_pairs(d, &mut t, &almost_reflections(d.sys, d.sys.full_mask()), d.c, &inv, String::new);
    t
}

/// The compatibility graph equals co-membership in the images of `cl_c`.
fn check_compat_cross(d: &Data) -> Tally {
    let mut t = Tally::new("compatibility_cross");
    let mut together = HashSet::new();
    for w in &d.sortables {
        match cl_map(d.sys, w, d.c) {
            Ok(cl) => {
                for (i, &a) in cl.members.iter().enumerate() {
                    for &b in &cl.members[i + 1..] {
                        together.insert((a, b));
                    }
                }
            }
            Err(e) => t.error(&e, || word(d.sys, w)),
        }
    }
    let nodes = almost_reflections(d.sys, d.sys.full_mask());
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            let (a, b) = if nodes[i] < nodes[j] { (nodes[i], nodes[j]) } else { (nodes[j], nodes[i]) };
            match d.compat.compatible(a, b, d.c) {
                Ok(x) => t.record(x == together.contains(&(a, b)), || {
                    format!("{} and {}: compatible={x}", a.display(d.sys), b.display(d.sys))
                }),
                Err(e) => t.error(&e, String::new),
            }
        }
    }
    t
}

fn check_subspaces(d: &Data) -> Tally {
    let mut t = Tally::new("fixed_space_order");
    let nc: Vec<Element> = nc_interval(d.sys, d.c).into_iter().map(|p| p.element).collect();
    for x in &nc {
        for y in &nc {
            let a = le_t(d.sys, x, y);
            let b = fixed_space_contains(d.sys, x, y);
            t.record(a == b, || format!("x={} y={}", word(d.sys, x), word(d.sys, y)));
        }
    }
    t
}

/// `x <=_T y` iff `x^{-1} y <=_T y`, on pairs from `[1, c]_T`.
fn check_absolute_order_quotient(d: &Data) -> Tally {
    let mut t = Tally::new("absolute_order_quotient");
    let nc: Vec<Element> = nc_interval(d.sys, d.c).into_iter().map(|p| p.element).collect();
    for x in &nc {
        for y in &nc {
            let a = le_t(d.sys, x, y);
            let b = le_t(d.sys, &x.inverse().compose(y), y);
            t.record(a == b, || format!("x={} y={}", word(d.sys, x), word(d.sys, y)));
        }
    }
    t
}

fn check_canonical_word(d: &Data) -> Tally {
    let mut t = Tally::new("canonical_t_word");
    match NcTable::new(d.sys, d.c) {
        Ok(table) => {
            for (x, f) in table.images.iter().zip(&table.factors) {
                let mut letters = f.clone();
                letters.sort_unstable();
                t.record(letters == canonical_generators(d.sys, x), || format!("x={}", word(d.sys, x)));
            }
        }
        Err(e) => t.error(&e, || "nc table".into()),
    }
    t
}
