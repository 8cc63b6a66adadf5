//! Divisibility up to permutation and left-right divisibility, prime-like
//! atoms, valuation sets, the ω-invariants and the permutable tame degree.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::distance::permutable_distance_sorted;
use crate::error::{Error, Result};
use crate::factorization::{is_submultiset, permutable_factorizations, rigid_factorizations, PermutableFactorization};
use crate::presentation::{PresentedSemigroup, Word};
use crate::semigroup::{Certified, Semigroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DivisibilityKind {
    LeftRight,
    Permutation,
}

/// `b |_p a`: some permutable factorization of `b` is a sub-multiset of some
/// permutable factorization of `a`.
pub fn divides_p<S: Semigroup>(h: &S, b: &S::Elem, a: &S::Elem) -> Certified<bool> {
    if h.is_unit(b) {
        return Certified::exact(true);
    }
    let zb = permutable_factorizations(h, b);
    let za = permutable_factorizations(h, a);
    let found = zb.value.iter().any(|x| za.value.iter().any(|y| x.divides(y)));
    // a positive answer is certain; a negative one only if both sets are complete
    Certified::new(found, found || (zb.exact && za.exact))
}

/// `b |_{l-r} a`, i.e. `a ∈ HbH`: some rigid factorization of `a` has a
/// contiguous block whose product equals `b`.
pub fn divides_lr<S: Semigroup>(h: &S, b: &S::Elem, a: &S::Elem) -> Certified<bool> {
    if h.is_unit(b) {
        return Certified::exact(true);
    }
    let za = rigid_factorizations(h, a);
    let mut exact = za.exact;
    for z in &za.value {
        for i in 0..z.len() {
            for j in i + 1..=z.len() {
                let p = h.product(&z.atoms[i..j]);
                exact &= p.exact;
                if h.equal(&p.value, b) == Some(true) {
                    return Certified::exact(true);
                }
            }
        }
    }
    Certified::new(false, exact)
}

pub fn divides<S: Semigroup>(h: &S, kind: DivisibilityKind, b: &S::Elem, a: &S::Elem) -> Certified<bool> {
    match kind {
        DivisibilityKind::LeftRight => divides_lr(h, b, a),
        DivisibilityKind::Permutation => divides_p(h, b, a),
    }
}

/// Result of scanning the explored scope for a failure of almost
/// prime-likeness of `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeLikeReport {
    pub atom: String,
    /// `(a, factorization containing q, factorization without q)`.
    pub counterexample: Option<(String, Vec<String>, Vec<String>)>,
    pub elements: usize,
    /// Every factorization set in the scan was complete.
    pub scope_exact: bool,
}

impl PrimeLikeReport {
    pub fn holds_within_scope(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn render_keys<S: Semigroup>(h: &S, z: &PermutableFactorization<S::Key>) -> Vec<String> {
    z.classes.iter().map(|k| h.render_key(k)).collect()
}

/// `q` is almost prime-like iff for every `a`, an atom associated to `q`
/// occurs in one factorization of `a` exactly when it occurs in all of them.
pub fn is_almost_prime_like<S: Semigroup>(h: &S, q: &S::Elem) -> PrimeLikeReport {
    let key = h.associate_key(q);
    let mut report = PrimeLikeReport {
        atom: h.render(q),
        counterexample: None,
        elements: 0,
        scope_exact: true,
    };
    for e in h.elements() {
        report.elements += 1;
        let zs = permutable_factorizations(h, &e.value);
        report.scope_exact &= e.exact && zs.exact;
        let with = zs.value.iter().find(|z| z.classes.binary_search(&key).is_ok());
        let without = zs.value.iter().find(|z| z.classes.binary_search(&key).is_err());
        if let (Some(w), Some(wo)) = (with, without) {
            report.counterexample = Some((h.render(&e.value), render_keys(h, w), render_keys(h, wo)));
            return report;
        }
    }
    report
}

/// V_q(a): the number of atoms associated to `q` in each factorization of
/// `a`. Fails if `q` occurs in some but not all factorizations of `a`.
pub fn valuation_set<S: Semigroup>(h: &S, q: &S::Elem, a: &S::Elem) -> Result<Certified<BTreeSet<usize>>> {
    let key = h.associate_key(q);
    let zs = permutable_factorizations(h, a);
    let counts: BTreeSet<usize> = zs
        .value
        .iter()
        .map(|z| z.classes.iter().filter(|k| **k == key).count())
        .collect();
    if counts.contains(&0) && counts.len() > 1 {
        return Err(Error::NotAlmostPrimeLike(h.render(q)));
    }
    Ok(Certified::new(counts, zs.exact))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeLikeVerdict {
    pub almost: PrimeLikeReport,
    /// Element with a non-singleton valuation set, if any.
    pub non_singleton: Option<(String, Vec<usize>)>,
}

impl PrimeLikeVerdict {
    pub fn prime_like_within_scope(&self) -> bool {
        self.almost.holds_within_scope() && self.non_singleton.is_none()
    }
}

/// Prime-like within scope: almost prime-like and every valuation set is a
/// singleton.
pub fn is_prime_like<S: Semigroup>(h: &S, q: &S::Elem) -> PrimeLikeVerdict {
    let almost = is_almost_prime_like(h, q);
    let mut non_singleton = None;
    if almost.holds_within_scope() {
        for e in h.elements() {
            if let Ok(v) = valuation_set(h, q, &e.value) {
                if v.value.len() > 1 {
                    non_singleton = Some((h.render(&e.value), v.value.into_iter().collect()));
                    break;
                }
            }
        }
    }
    PrimeLikeVerdict { almost, non_singleton }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OmegaMode {
    /// ω_p: products of atoms.
    Atoms,
    /// ω′_p: arbitrary decompositions into non-units.
    NonUnits,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub value: u32,
    /// Every decomposition of `a` (up to order) forcing the value, each with
    /// a shortest permuted subproduct divisible by `b`.
    pub worst: Vec<OmegaWitness>,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaWitness {
    pub decomposition: Vec<String>,
    pub subproduct: Vec<String>,
}

impl OmegaReport {
    fn zero(exact: bool) -> Self {
        OmegaReport {
            value: 0,
            worst: Vec::new(),
            exact,
        }
    }
}

/// Caches `b |_p (product of a sequence)` across calls.
pub struct DivisorCache<S: Semigroup> {
    b: S::Elem,
    memo: HashMap<Vec<S::Elem>, bool>,
    exact: bool,
}

impl<S: Semigroup> DivisorCache<S> {
    pub fn new(b: S::Elem) -> Self {
        DivisorCache {
            b,
            memo: HashMap::new(),
            exact: true,
        }
    }

    fn divides_product(&mut self, h: &S, seq: &[S::Elem]) -> bool {
        if let Some(&v) = self.memo.get(seq) {
            return v;
        }
        let p = h.product(seq);
        let d = divides_p(h, &self.b, &p.value);
        self.exact &= p.exact && d.exact;
        self.memo.insert(seq.to_vec(), d.value);
        d.value
    }
}

/// Smallest `k` such that some arrangement of some `k` of the `parts`
/// has a product divisible by `b`; with the arrangement.
fn min_subproduct<S: Semigroup>(h: &S, parts: &[S::Elem], cache: &mut DivisorCache<S>) -> Option<(u32, Vec<S::Elem>)> {
    let mut counts: BTreeMap<S::Elem, usize> = BTreeMap::new();
    for p in parts {
        *counts.entry(p.clone()).or_default() += 1;
    }
    let values: Vec<S::Elem> = counts.keys().cloned().collect();
    let mut avail: Vec<usize> = counts.values().copied().collect();
    for k in 1..=parts.len() {
        let mut seq = Vec::with_capacity(k);
        if arrange(h, &values, &mut avail, k, &mut seq, cache) {
            return Some((k as u32, seq));
        }
    }
    None
}

fn arrange<S: Semigroup>(
    h: &S,
    values: &[S::Elem],
    avail: &mut [usize],
    k: usize,
    seq: &mut Vec<S::Elem>,
    cache: &mut DivisorCache<S>,
) -> bool {
    if seq.len() == k {
        return cache.divides_product(h, seq);
    }
    for i in 0..values.len() {
        if avail[i] == 0 {
            continue;
        }
        avail[i] -= 1;
        seq.push(values[i].clone());
        if arrange(h, values, avail, k, seq, cache) {
            avail[i] += 1;
            return true;
        }
        seq.pop();
        avail[i] += 1;
    }
    false
}

fn omega_over<S: Semigroup>(
    h: &S,
    decompositions: impl IntoIterator<Item = Vec<S::Elem>>,
    cache: &mut DivisorCache<S>,
    atom_key: Option<&S::Key>,
) -> OmegaReport {
    let mut report = OmegaReport::zero(true);
    let render = |v: &[S::Elem]| v.iter().map(|u| h.render(u)).collect::<Vec<_>>();
    let mut seen = BTreeSet::new();
    for parts in decompositions {
        let mut sorted = parts.clone();
        sorted.sort();
        // only the multiset of parts matters
        if !seen.insert(sorted) {
            continue;
        }
        // an atom divides exactly the atoms associated to it
        let single = atom_key.and_then(|key| {
            parts
                .iter()
                .find(|u| h.associate_key(u) == *key)
                .map(|u| (1, vec![u.clone()]))
        });
        match single.or_else(|| min_subproduct(h, &parts, cache)) {
            Some((k, seq)) => {
                if k > report.value {
                    report.value = k;
                    report.worst.clear();
                }
                if k == report.value {
                    report.worst.push(OmegaWitness {
                        decomposition: render(&parts),
                        subproduct: render(&seq),
                    });
                }
            }
            None => report.exact = false,
        }
    }
    report.exact &= cache.exact;
    report
}

/// ω_p(a, b) (atoms) for any handle: the maximum over rigid factorizations
/// of `a` of the least number of its atoms that, in some order, multiply to
/// an element divisible by `b` up to permutation. Zero if `b ∤_p a`.
pub fn omega_atoms<S: Semigroup>(h: &S, a: &S::Elem, b: &S::Elem, cache: &mut DivisorCache<S>) -> OmegaReport {
    let div = divides_p(h, b, a);
    if h.is_unit(b) || !div.value {
        return OmegaReport::zero(div.exact);
    }
    let zs = rigid_factorizations(h, a);
    let key = h.is_atom(b).value.then(|| h.associate_key(b));
    let mut r = omega_over(h, zs.value.into_iter().map(|z| z.atoms), cache, key.as_ref());
    r.exact &= zs.exact && div.exact;
    r
}

/// Decompositions of `a` into non-units: every member of the class of `a`
/// cut into consecutive nonempty pieces (at most `max_factors` of them).
pub fn nonunit_decompositions(h: &PresentedSemigroup, a: &Word, max_factors: usize) -> Certified<Vec<Vec<Word>>> {
    let ball = h.ball(a);
    let mut exact = ball.closed;
    let mut out = BTreeSet::new();
    for m in &ball.members {
        let n = m.len();
        if n == 0 {
            continue;
        }
        // bit i set: cut after position i
        for mask in 0u64..(1u64 << (n - 1)) {
            if mask.count_ones() as usize + 1 > max_factors {
                continue;
            }
            let mut parts = Vec::new();
            let mut start = 0;
            for i in 0..n {
                if i == n - 1 || mask & (1 << i) != 0 {
                    let c = h.canonical(&Word(m.0[start..=i].to_vec()));
                    exact &= c.exact;
                    parts.push(c.value);
                    start = i + 1;
                }
            }
            out.insert(parts);
        }
    }
    Certified::new(out.into_iter().collect(), exact)
}

/// ω′_p(a, b) on a presented semigroup.
pub fn omega_nonunits(h: &PresentedSemigroup, a: &Word, b: &Word, max_factors: usize) -> OmegaReport {
    let div = divides_p(h, b, a);
    if b.is_empty() || !div.value {
        return OmegaReport::zero(div.exact);
    }
    let ds = nonunit_decompositions(h, a, max_factors);
    let mut cache = DivisorCache::new(b.clone());
    let mut r = omega_over(h, ds.value, &mut cache, None);
    r.exact &= ds.exact && div.exact;
    r
}

pub fn omega(h: &PresentedSemigroup, a: &Word, b: &Word, mode: OmegaMode, max_factors: usize) -> OmegaReport {
    match mode {
        OmegaMode::Atoms => omega_atoms(h, a, b, &mut DivisorCache::new(b.clone())),
        OmegaMode::NonUnits => omega_nonunits(h, a, b, max_factors),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TameReport {
    pub value: u32,
    /// `(z, z′)`: z is the factorization farthest from every qualifying z′,
    /// and z′ the closest qualifying one.
    pub witness: Option<(Vec<String>, Vec<String>)>,
    pub exact: bool,
}

fn tame_of<S: Semigroup>(h: &S, zs: &[PermutableFactorization<S::Key>], x: &[S::Key]) -> TameReport {
    let qualifying: Vec<&PermutableFactorization<S::Key>> =
        zs.iter().filter(|z| is_submultiset(x, &z.classes)).collect();
    let mut report = TameReport {
        value: 0,
        witness: None,
        exact: true,
    };
    if qualifying.is_empty() {
        return report;
    }
    for z in zs {
        let (d, best) = qualifying
            .iter()
            .map(|zp| (permutable_distance_sorted(&z.classes, &zp.classes), *zp))
            .min_by_key(|(d, _)| *d)
            .unwrap();
        if report.witness.is_none() || d > report.value {
            report.value = d;
            report.witness = Some((render_keys(h, z), render_keys(h, best)));
        }
    }
    report
}

/// t_p(a, x) for a permutable pattern `x` (a multiset of atom classes).
pub fn tame_degree<S: Semigroup>(h: &S, a: &S::Elem, x: &[S::Key]) -> TameReport {
    let mut x = x.to_vec();
    x.sort();
    let zs = permutable_factorizations(h, a);
    let mut r = tame_of(h, &zs.value, &x);
    r.exact = zs.exact;
    r
}

/// Semigroup-level values for one atom: ω_p(H, q) and t_p(H, q) over the
/// explored scope (lower bounds for the suprema).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomSweep {
    pub atom: String,
    pub omega: u32,
    pub omega_attained_at: Option<(String, OmegaReport)>,
    pub tame: u32,
    pub tame_attained_at: Option<(String, TameReport)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub atoms: Vec<AtomSweep>,
    pub elements: usize,
    pub scope_exact: bool,
}

/// One pass over the explored scope computing ω_p(H, q) and t_p(H, q) for
/// each atom `q` in `atoms`.
pub fn atom_sweep<S: Semigroup>(h: &S, atoms: &[S::Elem]) -> SweepReport {
    let keys: Vec<S::Key> = atoms.iter().map(|q| h.associate_key(q)).collect();
    let mut caches: Vec<DivisorCache<S>> = atoms.iter().map(|q| DivisorCache::new(q.clone())).collect();
    let mut out: Vec<AtomSweep> = atoms
        .iter()
        .map(|q| AtomSweep {
            atom: h.render(q),
            omega: 0,
            omega_attained_at: None,
            tame: 0,
            tame_attained_at: None,
        })
        .collect();
    let mut elements = 0;
    let mut scope_exact = true;
    for e in h.elements() {
        let a = e.value;
        if h.is_unit(&a) {
            continue;
        }
        elements += 1;
        if h.has_unique_factorization(&a) && out.iter().all(|o| o.omega >= 1) {
            // ω(a, q) ≤ 1 and t(a, q) = 0 for every q
            continue;
        }
        let zp = permutable_factorizations(h, &a);
        scope_exact &= e.exact && zp.exact;
        if zp.value.len() <= 1 {
            // unique permutable factorization: ω ≤ 1 (the atom itself when
            // present, and only if every rigid factorization carries it),
            // t = 0
            for (i, key) in keys.iter().enumerate() {
                if out[i].omega == 0 && zp.value.first().is_some_and(|z| z.classes.binary_search(key).is_ok()) {
                    let r = omega_atoms(h, &a, &atoms[i], &mut caches[i]);
                    scope_exact &= r.exact;
                    if r.value > out[i].omega {
                        out[i].omega = r.value;
                        out[i].omega_attained_at = Some((h.render(&a), r));
                    }
                }
            }
            continue;
        }
        for (i, key) in keys.iter().enumerate() {
            if !zp.value.iter().any(|z| z.classes.binary_search(key).is_ok()) {
                continue;
            }
            let t = tame_of(h, &zp.value, std::slice::from_ref(key));
            if out[i].tame_attained_at.is_none() || t.value > out[i].tame {
                out[i].tame = t.value;
                out[i].tame_attained_at = Some((h.render(&a), TameReport { exact: zp.exact, ..t }));
            }
            // if every factorization carries q, a single atom suffices
            let everywhere = zp.value.iter().all(|z| z.classes.binary_search(key).is_ok());
            if everywhere && out[i].omega >= 1 {
                continue;
            }
            let r = omega_atoms(h, &a, &atoms[i], &mut caches[i]);
            scope_exact &= r.exact;
            if r.value > out[i].omega {
                out[i].omega = r.value;
                out[i].omega_attained_at = Some((h.render(&a), r));
            }
        }
    }
    SweepReport {
        atoms: out,
        elements,
        scope_exact,
    }
}

/// ω_p(H, b) over the explored elements of any handle: a lower bound for
/// the supremum, with the element attaining it.
pub fn omega_semigroup<S: Semigroup>(h: &S, b: &S::Elem) -> (u32, Option<(String, OmegaReport)>, bool) {
    let mut cache = DivisorCache::new(b.clone());
    let mut best = 0;
    let mut at = None;
    let mut exact = true;
    for e in h.elements() {
        let r = omega_atoms(h, &e.value, b, &mut cache);
        exact &= e.exact && r.exact;
        if r.value > best {
            best = r.value;
            at = Some((h.render(&e.value), r));
        }
    }
    (best, at, exact)
}

/// ω′_p(H, b) over the explored elements of a presentation.
pub fn omega_nonunits_semigroup(
    h: &PresentedSemigroup,
    b: &Word,
    max_factors: usize,
) -> (u32, Option<(String, OmegaReport)>, bool) {
    let mut best = 0;
    let mut at = None;
    let mut exact = true;
    for e in h.enumerate_elements() {
        let r = omega_nonunits(h, &e.value, b, max_factors);
        exact &= e.exact && r.exact;
        if r.value > best {
            best = r.value;
            at = Some((h.render(&e.value), r));
        }
    }
    (best, at, exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{ExplorationBudget, Presentation};

    fn handle(gens: &[&str], rels: &[(&str, &str)], len: usize) -> PresentedSemigroup {
        PresentedSemigroup::with_budget(
            Presentation::new(gens, rels).unwrap(),
            ExplorationBudget::new(len, 100_000).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn a_divides_cd_up_to_permutation() {
        let h = handle(&["a", "b", "c", "d", "e"], &[("a b", "c d"), ("c e d e", "b a")], 12);
        let w = |s: &str| h.word(s).unwrap();
        assert!(divides_p(&h, &w("a"), &w("c d")).value);
        assert!(divides_lr(&h, &w("a"), &w("c d")).value);
        assert!(!divides_p(&h, &w("e"), &w("c d")).value);
        assert!(divides_p(&h, &w("e"), &w("e")).value);
    }

    #[test]
    fn weirdprimes_valuations() {
        let h = handle(&["a", "b", "c"], &[("a b a", "b a a a b c")], 10);
        let w = |s: &str| h.word(s).unwrap();
        let aba = w("a b a");
        assert_eq!(valuation_set(&h, &w("a"), &aba).unwrap().value, BTreeSet::from([2, 3]));
        assert_eq!(valuation_set(&h, &w("b"), &aba).unwrap().value, BTreeSet::from([1, 2]));
        assert!(matches!(
            valuation_set(&h, &w("c"), &aba),
            Err(Error::NotAlmostPrimeLike(_))
        ));
        assert_eq!(valuation_set(&h, &w("a"), &w("a")).unwrap().value, BTreeSet::from([1]));
    }

    #[test]
    fn ab_cd_counterexample_for_a() {
        let h = handle(&["a", "b", "c", "d"], &[("a b", "c d")], 4);
        let r = is_almost_prime_like(&h, &h.word("a").unwrap());
        let (elem, with, without) = r.counterexample.unwrap();
        assert_eq!(elem, "a b");
        assert_eq!(with, vec!["a", "b"]);
        assert_eq!(without, vec!["c", "d"]);
    }

    #[test]
    fn free_monoid_generators_are_prime_like() {
        let h = handle(&["a", "b"], &[], 5);
        let v = is_prime_like(&h, &h.word("a").unwrap());
        assert!(v.prime_like_within_scope());
        assert!(v.almost.scope_exact);
        let sweep = atom_sweep(&h, &[h.word("a").unwrap()]);
        assert_eq!(sweep.atoms[0].omega, 1);
        assert_eq!(sweep.atoms[0].tame, 0);
    }

    #[test]
    fn omega_differs_witness() {
        let h = handle(&["a", "b", "c", "d", "e"], &[("a b", "c d"), ("c e d e", "b a")], 12);
        let w = |s: &str| h.word(s).unwrap();
        let r = omega(&h, &w("c d"), &w("a"), OmegaMode::Atoms, 8);
        assert_eq!(r.value, 2);
        let r = omega(&h, &w("b a"), &w("a"), OmegaMode::NonUnits, 8);
        assert_eq!(r.value, 3);
        assert!(r.worst.iter().any(|w| w.decomposition == ["c e", "d", "e"]));
    }

    fn key(h: &PresentedSemigroup, g: &str) -> u8 {
        h.atom_letter(h.presentation().generator_index(g).unwrap()).unwrap()
    }

    #[test]
    fn tame_is_zero_for_unique_factorization() {
        let h = handle(&["a", "b"], &[], 5);
        let w = h.word("a b a").unwrap();
        assert_eq!(tame_degree(&h, &w, &[key(&h, "a")]).value, 0);
        assert_eq!(tame_degree(&h, &w, &[key(&h, "b"), key(&h, "b")]).value, 0);
    }

    #[test]
    fn tame_of_b_in_bac_example() {
        // n = 3: ba^2 = a^2 c, t_p(b) = 1
        let h = handle(&["a", "b", "c"], &[("b a a", "a a c")], 6);
        let w = h.word("a a c").unwrap();
        let r = tame_degree(&h, &w, &[key(&h, "b")]);
        assert_eq!(r.value, 1);
    }

    #[test]
    fn omega_atoms_le_omega_nonunits() {
        let h = handle(&["a", "b", "c"], &[("b a", "a c")], 6);
        for e in h.enumerate_elements().take(120) {
            for q in ["a", "b", "c"] {
                let q = h.word(q).unwrap();
                let o = omega(&h, &e.value, &q, OmegaMode::Atoms, 6).value;
                let o2 = omega(&h, &e.value, &q, OmegaMode::NonUnits, 6).value;
                assert!(o <= o2, "{:?}", e.value);
            }
        }
    }
}
