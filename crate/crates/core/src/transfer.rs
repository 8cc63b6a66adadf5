//! Abelianization of presentations, the relation ≡_p, and checks of whether
//! the canonical map to the reduced abelianization (or the word length) is a
//! weak transfer homomorphism.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::factorization::{length_profile, permutable_factorizations, rigid_factorizations, LengthSet};
use crate::matrix::{verify_transfer_properties, TransferCheck};
use crate::presentation::{ExplorationBudget, Presentation, PresentedSemigroup, Word};
use crate::semigroup::{Certified, Semigroup};

/// Exponent vector.
pub type ExpVec = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommBall {
    /// Sorted by degree, then by the sorted-letter word.
    pub members: Vec<ExpVec>,
    pub closed: bool,
}

impl CommBall {
    pub fn canonical(&self) -> &ExpVec {
        &self.members[0]
    }
}

fn degree(v: &[u32]) -> u32 {
    v.iter().sum()
}

fn sorted_letters(v: &[u32]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
        .collect()
}

fn vec_order(a: &ExpVec, b: &ExpVec) -> std::cmp::Ordering {
    degree(a)
        .cmp(&degree(b))
        .then_with(|| sorted_letters(a).cmp(&sorted_letters(b)))
}

/// Free commutative monoid on the generators modulo the relations, with
/// equality decided by bounded closure as for presented semigroups.
pub struct CommutativePresentation {
    pub generators: Vec<String>,
    pub relations: Vec<(ExpVec, ExpVec)>,
    pub budget: ExplorationBudget,
    enumeration_degree: usize,
    cache: Mutex<HashMap<ExpVec, Arc<CommBall>>>,
    /// Canonical class of each generator when it is an atom.
    atom_of: Vec<Option<ExpVec>>,
}

impl CommutativePresentation {
    pub fn new(generators: Vec<String>, relations: Vec<(ExpVec, ExpVec)>, budget: ExplorationBudget) -> Self {
        let mut h = CommutativePresentation {
            enumeration_degree: budget.max_word_length.min(6),
            generators,
            relations,
            budget,
            cache: Mutex::new(HashMap::new()),
            atom_of: Vec::new(),
        };
        h.atom_of = (0..h.generators.len())
            .map(|g| {
                let b = h.ball(&h.unit_vector(g));
                (b.closed && b.members.iter().all(|m| degree(m) == 1)).then(|| b.canonical().clone())
            })
            .collect();
        h
    }

    pub fn with_enumeration_degree(mut self, d: usize) -> Self {
        self.enumeration_degree = d;
        self
    }

    fn unit_vector(&self, g: usize) -> ExpVec {
        let mut v = vec![0; self.generators.len()];
        v[g] = 1;
        v
    }

    pub fn from_word(&self, w: &Word) -> ExpVec {
        let mut v = vec![0; self.generators.len()];
        for &g in w.letters() {
            v[g as usize] += 1;
        }
        v
    }

    pub fn ball(&self, v: &ExpVec) -> Arc<CommBall> {
        if let Some(b) = self.cache.lock().unwrap().get(v) {
            return Arc::clone(b);
        }
        let mut seen: HashSet<ExpVec> = HashSet::from([v.clone()]);
        let mut queue = VecDeque::from([v.clone()]);
        let mut closed = true;
        while let Some(m) = queue.pop_front() {
            for (l, r) in &self.relations {
                for (from, to) in [(l, r), (r, l)] {
                    if m.iter().zip(from).any(|(x, y)| x < y) {
                        continue;
                    }
                    let next: ExpVec = m.iter().zip(from).zip(to).map(|((x, y), z)| x - y + z).collect();
                    if degree(&next) as usize > self.budget.max_word_length {
                        closed = false;
                        continue;
                    }
                    if seen.contains(&next) {
                        continue;
                    }
                    if seen.len() >= self.budget.max_ball_size {
                        closed = false;
                        continue;
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let mut members: Vec<ExpVec> = seen.into_iter().collect();
        members.sort_by(vec_order);
        let ball = Arc::new(CommBall { members, closed });
        let mut cache = self.cache.lock().unwrap();
        if ball.closed {
            for m in &ball.members {
                cache.insert(m.clone(), Arc::clone(&ball));
            }
        } else {
            cache.insert(v.clone(), Arc::clone(&ball));
        }
        ball
    }

    pub fn canonical(&self, v: &ExpVec) -> Certified<ExpVec> {
        let b = self.ball(v);
        Certified::new(b.canonical().clone(), b.closed)
    }

    pub fn render_vector(&self, v: &[u32]) -> String {
        if degree(v) == 0 {
            return "1".into();
        }
        sorted_letters(v)
            .iter()
            .map(|&i| self.generators[i].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Text form with one `rel:` line per relation, sides as sorted words.
    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}\n", self.generators.join(" "));
        for (l, r) in &self.relations {
            s.push_str(&format!("rel: {} = {}\n", self.render_vector(l), self.render_vector(r)));
        }
        s
    }

    /// Bounded cancellativity check: `x + e_g ≡ y + e_g` with `x ≢ y`, over
    /// classes of degree below the budget. Returns the first failure.
    pub fn cancellativity_counterexample(&self, max_degree: usize) -> Certified<Option<(ExpVec, ExpVec, usize)>> {
        let mut exact = true;
        for v in self
            .elements()
            .map(|e| e.value)
            .filter(|v| (degree(v) as usize) < max_degree)
        {
            for g in 0..self.generators.len() {
                let mut w = v.clone();
                w[g] += 1;
                let b = self.ball(&w);
                exact &= b.closed;
                for m in b.members.iter().filter(|m| m[g] > 0) {
                    let mut x = m.clone();
                    x[g] -= 1;
                    let cx = self.canonical(&x);
                    exact &= cx.exact;
                    if cx.exact && cx.value != v {
                        return Certified::new(Some((v.clone(), cx.value, g)), exact);
                    }
                }
            }
        }
        Certified::new(None, exact)
    }
}

impl Semigroup for CommutativePresentation {
    type Elem = ExpVec;
    type Key = ExpVec;

    fn identity(&self) -> ExpVec {
        vec![0; self.generators.len()]
    }

    fn mul(&self, a: &ExpVec, b: &ExpVec) -> Certified<ExpVec> {
        let s: ExpVec = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.canonical(&s)
    }

    fn is_unit(&self, a: &ExpVec) -> bool {
        degree(a) == 0
    }

    fn is_atom(&self, a: &ExpVec) -> Certified<bool> {
        let b = self.ball(a);
        Certified::new(b.members.iter().all(|m| degree(m) == 1), b.closed)
    }

    fn associate_key(&self, atom: &ExpVec) -> ExpVec {
        self.canonical(atom).value
    }

    fn left_divisors(&self, a: &ExpVec) -> Certified<Vec<(ExpVec, ExpVec)>> {
        let b = self.ball(a);
        let mut exact = b.closed;
        let mut out = BTreeSet::new();
        for m in &b.members {
            for (g, atom) in self.atom_of.iter().enumerate() {
                let Some(atom) = atom else { continue };
                if m[g] == 0 {
                    continue;
                }
                let mut q = m.clone();
                q[g] -= 1;
                let cq = self.canonical(&q);
                exact &= cq.exact;
                out.insert((atom.clone(), cq.value));
            }
        }
        Certified::new(out.into_iter().collect(), exact)
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Certified<ExpVec>> + '_> {
        let k = self.generators.len();
        let mut out = Vec::new();
        let mut v = vec![0u32; k];
        fn rec(h: &CommutativePresentation, i: usize, left: u32, v: &mut ExpVec, out: &mut Vec<Certified<ExpVec>>) {
            if i == v.len() {
                if degree(v) > 0 {
                    let c = h.canonical(v);
                    if c.value == *v {
                        out.push(c);
                    }
                }
                return;
            }
            for e in 0..=left {
                v[i] = e;
                rec(h, i + 1, left - e, v, out);
            }
            v[i] = 0;
        }
        rec(self, 0, self.enumeration_degree as u32, &mut v, &mut out);
        out.sort_by(|a, b| vec_order(&a.value, &b.value));
        Box::new(out.into_iter())
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn render(&self, a: &ExpVec) -> String {
        self.render_vector(a)
    }

    fn render_key(&self, key: &ExpVec) -> String {
        self.render_vector(key)
    }

    fn permutable_factorizations_hint(&self, a: &ExpVec) -> Option<Certified<Vec<Vec<ExpVec>>>> {
        let b = self.ball(a);
        let mut out = BTreeSet::new();
        for m in &b.members {
            let letters = sorted_letters(m);
            if letters.iter().all(|&g| self.atom_of[g].is_some()) {
                let mut keys: Vec<ExpVec> = letters.iter().map(|&g| self.atom_of[g].clone().unwrap()).collect();
                keys.sort();
                out.insert(keys);
            }
        }
        Some(Certified::new(out.into_iter().collect(), b.closed))
    }
}

/// Generators are kept; each relation becomes a pair of exponent vectors.
/// Relations whose sides have equal vectors are dropped.
pub fn abelianize(p: &Presentation) -> CommutativePresentation {
    let k = p.generators.len();
    let vec_of = |w: &Word| {
        let mut v = vec![0u32; k];
        for &g in w.letters() {
            v[g as usize] += 1;
        }
        v
    };
    let mut relations = Vec::new();
    for r in &p.relations {
        let (l, rr) = (vec_of(&r.lhs), vec_of(&r.rhs));
        if l != rr && !relations.contains(&(l.clone(), rr.clone())) {
            relations.push((l, rr));
        }
    }
    CommutativePresentation::new(p.generators.clone(), relations, p.budget)
}

/// Witness for `a ≡_p b`: rigid factorizations with `za[i] ≃ zb[sigma[i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivPWitness {
    pub a: String,
    pub b: String,
    pub za: Vec<String>,
    pub zb: Vec<String>,
    pub sigma: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivP {
    pub related: bool,
    pub witness: Option<EquivPWitness>,
    /// `related = false` is only certain when this is set.
    pub exact: bool,
}

/// Decides `a ≡_p b` by searching for rigid factorizations at d_p = 0.
pub fn equiv_p<S: Semigroup>(h: &S, a: &S::Elem, b: &S::Elem) -> EquivP {
    let za = rigid_factorizations(h, a);
    let zb = rigid_factorizations(h, b);
    let exact = za.exact && zb.exact;
    if h.is_unit(a) && h.is_unit(b) {
        return EquivP {
            related: true,
            witness: Some(EquivPWitness {
                a: h.render(a),
                b: h.render(b),
                za: Vec::new(),
                zb: Vec::new(),
                sigma: Vec::new(),
            }),
            exact,
        };
    }
    for fa in &za.value {
        let ka: Vec<S::Key> = fa.atoms.iter().map(|u| h.associate_key(u)).collect();
        let mut sa = ka.clone();
        sa.sort();
        for fb in &zb.value {
            let kb: Vec<S::Key> = fb.atoms.iter().map(|u| h.associate_key(u)).collect();
            let mut sb = kb.clone();
            sb.sort();
            if sa != sb {
                continue;
            }
            let mut used = vec![false; kb.len()];
            let sigma = ka
                .iter()
                .map(|k| {
                    let j = (0..kb.len()).find(|&j| !used[j] && kb[j] == *k).unwrap();
                    used[j] = true;
                    j
                })
                .collect();
            return EquivP {
                related: true,
                witness: Some(EquivPWitness {
                    a: h.render(a),
                    b: h.render(b),
                    za: fa.atoms.iter().map(|u| h.render(u)).collect(),
                    zb: fb.atoms.iter().map(|u| h.render(u)).collect(),
                    sigma,
                }),
                exact: true,
            };
        }
    }
    EquivP {
        related: false,
        witness: None,
        exact,
    }
}

/// `a ≡_p b` and the permutable factorization `factorization` of `a` has no
/// matching factorization of `b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ExwtCounterexample {
    pub a: String,
    pub b: String,
    /// Atoms of a rigid factorization of `a` in that class.
    pub factorization: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExwtReport {
    /// No counterexample among the explored elements.
    pub passed: bool,
    pub counterexamples: Vec<ExwtCounterexample>,
    /// ≡_p was transitive on the explored elements.
    pub transitive: bool,
    pub transitivity_failure: Option<(String, String, String)>,
    /// No `x·g ≡ y·g` with `x ≢ y` in the abelianization within the budget.
    pub cancellative_within_budget: bool,
    pub assumptions: Vec<String>,
    pub elements_checked: usize,
    pub exact: bool,
}

/// Checks that ≡_p-related explored elements have the same permutable
/// factorizations, which is the explicit form of π: S → S^ab_red being a
/// weak transfer homomorphism.
pub fn check_exwt(h: &PresentedSemigroup) -> ExwtReport {
    let mut exact = true;
    let mut elems = Vec::new();
    let mut classes: Vec<BTreeSet<Vec<u8>>> = Vec::new();
    for e in h.enumerate_elements() {
        exact &= e.exact;
        let z = permutable_factorizations(h, &e.value);
        exact &= z.exact;
        classes.push(z.value.into_iter().map(|f| f.classes).collect());
        elems.push(e.value);
    }
    let mut by_class: BTreeMap<&Vec<u8>, Vec<usize>> = BTreeMap::new();
    for (i, cs) in classes.iter().enumerate() {
        for c in cs {
            by_class.entry(c).or_default().push(i);
        }
    }
    let mut related: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); elems.len()];
    for members in by_class.values() {
        for &i in members {
            related[i].extend(members.iter().copied());
        }
    }
    let render = |i: usize| h.presentation().render_word(&elems[i]);
    // keyed by enumeration (shortlex) position
    let mut counterexamples = BTreeMap::new();
    for i in 0..elems.len() {
        for &j in &related[i] {
            if let Some(missing) = classes[i].iter().find(|c| !classes[j].contains(*c)) {
                let z = rigid_factorizations(h, &elems[i]);
                let atoms = z
                    .value
                    .iter()
                    .find(|f| {
                        let mut k: Vec<u8> = f.atoms.iter().map(|u| h.associate_key(u)).collect();
                        k.sort();
                        &k == missing
                    })
                    .map(|f| f.atoms.iter().map(|u| h.presentation().render_word(u)).collect())
                    .unwrap_or_default();
                counterexamples.insert(
                    (i, j),
                    ExwtCounterexample {
                        a: render(i),
                        b: render(j),
                        factorization: atoms,
                    },
                );
            }
        }
    }
    let mut transitivity_failure = None;
    'outer: for b in 0..elems.len() {
        for &a in &related[b] {
            for &c in &related[b] {
                if !related[a].contains(&c) {
                    transitivity_failure = Some((render(a), render(b), render(c)));
                    break 'outer;
                }
            }
        }
    }
    let ab = abelianize(h.presentation()).with_enumeration_degree(h.enumeration_length().saturating_sub(1));
    let canc = ab.cancellativity_counterexample(h.enumeration_length());
    let counterexamples: Vec<_> = counterexamples.into_values().collect();
    ExwtReport {
        passed: counterexamples.is_empty(),
        counterexamples,
        transitive: transitivity_failure.is_none(),
        transitivity_failure,
        cancellative_within_budget: canc.value.is_none(),
        assumptions: vec![
            "S is cancellative".into(),
            "the reduced abelianization is cancellative (checked only within the budget)".into(),
        ],
        elements_checked: elems.len(),
        exact: exact && canc.exact,
    }
}

/// Two explored elements with the same image in the abelianization but
/// different sets of lengths. Any weak transfer homomorphism to a
/// commutative semigroup identifies them and preserves sets of lengths, so
/// none exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthObstruction {
    pub a: String,
    pub b: String,
    pub lengths_a: Vec<usize>,
    pub lengths_b: Vec<usize>,
}

pub fn length_obstructions(h: &PresentedSemigroup) -> Certified<Vec<LengthObstruction>> {
    let ab = abelianize(h.presentation());
    let mut exact = true;
    let mut groups: BTreeMap<ExpVec, Vec<(Word, LengthSet)>> = BTreeMap::new();
    for e in h.enumerate_elements() {
        exact &= e.exact;
        let image = ab.canonical(&ab.from_word(&e.value));
        exact &= image.exact;
        let l = length_profile(h, &e.value);
        exact &= l.exact;
        groups.entry(image.value).or_default().push((e.value, l.value));
    }
    let mut out = Vec::new();
    for members in groups.values() {
        for (i, (a, la)) in members.iter().enumerate() {
            for (b, lb) in &members[i + 1..] {
                if la.lengths != lb.lengths {
                    out.push(LengthObstruction {
                        a: h.presentation().render_word(a),
                        b: h.presentation().render_word(b),
                        lengths_a: la.lengths.iter().copied().collect(),
                        lengths_b: lb.lengths.iter().copied().collect(),
                    });
                }
            }
        }
    }
    Certified::new(out, exact)
}

/// (ℕ₀, +). The only atom is 1.
#[derive(Clone, Debug)]
pub struct AdditiveNaturals {
    pub bound: u64,
}

impl Semigroup for AdditiveNaturals {
    type Elem = u64;
    type Key = u64;

    fn identity(&self) -> u64 {
        0
    }

    fn mul(&self, a: &u64, b: &u64) -> Certified<u64> {
        Certified::exact(a + b)
    }

    fn is_unit(&self, a: &u64) -> bool {
        *a == 0
    }

    fn is_atom(&self, a: &u64) -> Certified<bool> {
        Certified::exact(*a == 1)
    }

    fn associate_key(&self, atom: &u64) -> u64 {
        *atom
    }

    fn left_divisors(&self, a: &u64) -> Certified<Vec<(u64, u64)>> {
        Certified::exact(if *a > 0 { vec![(1, a - 1)] } else { Vec::new() })
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Certified<u64>> + '_> {
        Box::new((1..=self.bound).map(Certified::exact))
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }

    fn has_unique_factorization(&self, _a: &u64) -> bool {
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthMapReport {
    pub check: TransferCheck,
    /// (T1) and (T2) both held on the explored elements.
    pub transfer: bool,
}

/// The word length ℓ: S → (ℕ₀, +), when every relation preserves length,
/// checked for the transfer properties on the explored elements.
pub fn length_map(h: &PresentedSemigroup) -> Option<LengthMapReport> {
    let p = h.presentation();
    if !p.is_length_preserving() || p.generators.is_empty() {
        return None;
    }
    let samples: Vec<Word> = h.enumerate_elements().map(|e| e.value).collect();
    let bound = h.enumeration_length() as u64;
    let targets: Vec<u64> = (1..=bound).collect();
    let t = AdditiveNaturals { bound };
    let section = |n: &u64| Some(Word(vec![0; *n as usize]));
    let check = verify_transfer_properties(h, &t, &|w: &Word| w.len() as u64, &samples, &targets, &section, true);
    Some(LengthMapReport {
        transfer: check.weak_transfer() && check.t2 == Some(true),
        check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn handle(gens: &[&str], rels: &[(&str, &str)], len: usize) -> PresentedSemigroup {
        let p = Presentation::new(gens, rels).unwrap();
        PresentedSemigroup::with_budget(p, ExplorationBudget::new(12, 100_000).unwrap())
            .unwrap()
            .with_enumeration_length(len)
    }

    #[test]
    fn abelianization_of_ab_cd() {
        let h = handle(&["a", "b", "c", "d"], &[("a b", "c d")], 4);
        let ab = abelianize(h.presentation());
        assert_eq!(ab.relations, vec![(vec![1, 1, 0, 0], vec![0, 0, 1, 1])]);
        assert_eq!(ab.to_text(), "gens: a b c d\nrel: a b = c d\n");
        let x = ab.from_word(&h.word("a b").unwrap());
        let y = ab.from_word(&h.word("d c").unwrap());
        assert_eq!(ab.canonical(&x), ab.canonical(&y));
    }

    #[test]
    fn abelianization_drops_commutation() {
        let h = handle(&["a", "b"], &[("a b", "b a")], 4);
        let ab = abelianize(h.presentation());
        assert!(ab.relations.is_empty());
        let free = abelianize(handle(&["a", "b"], &[], 4).presentation());
        assert_eq!(
            ab.elements().map(|e| e.value).collect::<Vec<_>>(),
            free.elements().map(|e| e.value).collect::<Vec<_>>()
        );
    }

    #[test]
    fn equiv_p_examples() {
        let h = handle(&["a", "b", "c", "d"], &[("a b", "c d")], 4);
        let r = equiv_p(&h, &h.word("a b").unwrap(), &h.word("d c").unwrap());
        assert!(r.related);
        let w = r.witness.unwrap();
        assert_eq!(w.za, vec!["c", "d"]);
        assert_eq!(w.zb, vec!["d", "c"]);
        assert_eq!(w.sigma, vec![1, 0]);
        assert!(equiv_p(&h, &h.word("a").unwrap(), &h.word("a").unwrap()).related);
        let free = handle(&["a", "b", "c"], &[], 4);
        let r = equiv_p(&free, &free.word("a b").unwrap(), &free.word("c").unwrap());
        assert!(!r.related && r.exact);
    }

    #[test]
    fn exwt_fails_for_ab_cd() {
        let h = handle(&["a", "b", "c", "d"], &[("a b", "c d")], 4);
        let r = check_exwt(&h);
        assert!(!r.passed);
        assert!(r.counterexamples.contains(&ExwtCounterexample {
            a: "a b".into(),
            b: "d c".into(),
            factorization: vec!["a".into(), "b".into()],
        }));
        assert!(r.cancellative_within_budget);
    }

    #[test]
    fn exwt_passes_for_commutative_presentations() {
        for (gens, rels) in [
            (&["a", "b"][..], &[("a b", "b a")][..]),
            (
                &["a", "b", "c"],
                &[("a b", "b a"), ("a c", "c a"), ("b c", "c b"), ("a a", "b c")],
            ),
        ] {
            let r = check_exwt(&handle(gens, rels, 5));
            assert!(r.passed, "{:?}", r.counterexamples);
            assert!(r.transitive);
        }
    }

    #[test]
    fn length_obstruction_for_abc_de() {
        let h = handle(&["a", "b", "c", "d", "e"], &[("a b c", "d e")], 3);
        let r = length_obstructions(&h);
        assert!(r.exact);
        // abc = de is stored as its shortlex representative
        assert!(
            r.value.iter().any(|o| (o.a.as_str(), o.b.as_str()) == ("d e", "b a c")
                && o.lengths_a == vec![2, 3]
                && o.lengths_b == vec![3]),
            "{:?}",
            r.value
        );
    }

    #[test]
    fn length_map_cases() {
        let h = handle(&["a", "b", "c", "d"], &[("a b", "c d")], 4);
        let r = length_map(&h).unwrap();
        assert!(r.transfer, "{:?}", r.check.counterexamples);
        assert!(!r.check.isoatomic);
        assert!(length_map(&handle(&["a", "b"], &[("a b a", "b")], 4)).is_none());
        assert!(length_map(&handle(&["a", "b"], &[], 4)).unwrap().transfer);
    }

    #[test]
    fn abelianization_handle_factorizations() {
        let h = handle(&["a", "b", "c", "d"], &[("a b", "c d")], 4);
        let ab = abelianize(h.presentation());
        let x = ab.canonical(&vec![1, 1, 0, 0]).value;
        let z = permutable_factorizations(&ab, &x);
        assert_eq!(z.value.len(), 2);
        assert!(ab.cancellativity_counterexample(4).value.is_none());
    }
}
