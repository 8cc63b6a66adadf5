use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::adyan::{check_adyan, AdyanReport};
use super::ball::{ball_with_rules, CongruenceBall, Rules};
use super::{ExplorationBudget, Presentation, Word};
use crate::error::Result;
use crate::semigroup::{Certified, Semigroup};

/// Answer of the bounded word problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordEquality {
    Equal,
    /// Certified: the ball of the first word is closed and misses the second.
    NotEqual,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomVerdict {
    Yes,
    /// A member of the class splits as `left · right` with both nonempty.
    No {
        left: Word,
        right: Word,
    },
    /// No split found, but the ball was truncated.
    Unknown,
    /// The empty word.
    Unit,
}

struct AtomTable {
    /// For each generator, the canonical letter of its class if it is an atom.
    canonical: Vec<Option<u8>>,
    exact: bool,
}

const CACHE_CAPACITY: usize = 400_000;

/// The semigroup `⟨X | R⟩` explored within a budget.
///
/// Congruence balls are cached behind a mutex, so a handle can be shared
/// between threads; balls are inserted only once fully built.
pub struct PresentedSemigroup {
    presentation: Presentation,
    budget: ExplorationBudget,
    enumeration_length: usize,
    adyan: AdyanReport,
    rules: Rules,
    cache: Mutex<HashMap<Word, Arc<CongruenceBall>>>,
    atoms: OnceLock<AtomTable>,
}

impl PresentedSemigroup {
    /// Uses the budget stored in the presentation.
    pub fn new(presentation: Presentation) -> Self {
        let budget = presentation.budget;
        Self::build(presentation, budget)
    }

    pub fn with_budget(presentation: Presentation, budget: ExplorationBudget) -> Result<Self> {
        presentation.check_budget(&budget)?;
        Ok(Self::build(presentation, budget))
    }

    fn build(presentation: Presentation, budget: ExplorationBudget) -> Self {
        let adyan = check_adyan(&presentation);
        PresentedSemigroup {
            rules: Rules::new(&presentation),
            enumeration_length: budget.max_word_length,
            presentation,
            budget,
            adyan,
            cache: Mutex::new(HashMap::new()),
            atoms: OnceLock::new(),
        }
    }

    /// Elements are enumerated from seeds up to this length (defaults to the
    /// ball length limit).
    pub fn with_enumeration_length(mut self, len: usize) -> Self {
        self.enumeration_length = len;
        self
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn budget(&self) -> &ExplorationBudget {
        &self.budget
    }

    pub fn enumeration_length(&self) -> usize {
        self.enumeration_length
    }

    pub fn adyan(&self) -> &AdyanReport {
        &self.adyan
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        self.presentation.parse_word(text)
    }

    pub fn ball(&self, w: &Word) -> Arc<CongruenceBall> {
        let rules = &self.rules;
        if !rules.applies(w.letters()) {
            return Arc::new(ball_with_rules(rules, w, &self.budget));
        }
        if let Some(b) = self.cache.lock().unwrap().get(w) {
            return Arc::clone(b);
        }
        let ball = Arc::new(ball_with_rules(rules, w, &self.budget));
        let mut cache = self.cache.lock().unwrap();
        if cache.len() + ball.len() > CACHE_CAPACITY {
            cache.clear();
        }
        if ball.closed {
            // a closed ball is the whole class, so every member shares it
            for m in &ball.members {
                cache.insert(m.clone(), Arc::clone(&ball));
            }
        } else {
            cache.insert(w.clone(), Arc::clone(&ball));
        }
        ball
    }

    /// Whether the class of `w` is just `{w}` (no relation side occurs).
    pub fn is_singleton_class(&self, w: &Word) -> bool {
        !self.rules.applies(w.letters())
    }

    pub fn canonical(&self, w: &Word) -> Certified<Word> {
        if self.is_singleton_class(w) {
            return Certified::exact(w.clone());
        }
        let ball = self.ball(w);
        Certified::new(ball.canonical().clone(), ball.closed)
    }

    pub fn equal_words(&self, w1: &Word, w2: &Word) -> WordEquality {
        if w1 == w2 {
            return WordEquality::Equal;
        }
        let ball = self.ball(w1);
        if ball.contains(w2) {
            WordEquality::Equal
        } else if ball.closed {
            WordEquality::NotEqual
        } else {
            WordEquality::Unknown
        }
    }

    pub fn atom_verdict(&self, w: &Word) -> AtomVerdict {
        if w.is_empty() {
            return AtomVerdict::Unit;
        }
        let ball = self.ball(w);
        if let Some(m) = ball.members.iter().find(|m| m.len() >= 2) {
            return AtomVerdict::No {
                left: Word(m.0[..1].to_vec()),
                right: Word(m.0[1..].to_vec()),
            };
        }
        if ball.closed {
            AtomVerdict::Yes
        } else {
            AtomVerdict::Unknown
        }
    }

    fn atom_table(&self) -> &AtomTable {
        self.atoms.get_or_init(|| {
            let mut exact = true;
            let canonical = (0..self.presentation.generators.len() as u8)
                .map(|g| {
                    let ball = self.ball(&Word::letter(g));
                    exact &= ball.closed;
                    if ball.members.iter().all(|m| m.len() == 1) {
                        Some(ball.canonical().0[0])
                    } else {
                        None
                    }
                })
                .collect();
            AtomTable { canonical, exact }
        })
    }

    /// Canonical atom letter of a generator, if the generator is an atom.
    pub fn atom_letter(&self, g: u8) -> Option<u8> {
        self.atom_table().canonical[g as usize]
    }

    /// Rigid factorizations read off the ball: every member spelled with atom
    /// letters only is a factorization (letters replaced by their canonical
    /// atom representatives).
    pub fn factorizations_from_ball(&self, a: &Word) -> Certified<Vec<Vec<u8>>> {
        let table = self.atom_table();
        if self.is_singleton_class(a) {
            let f: Option<Vec<u8>> = a.letters().iter().map(|&g| table.canonical[g as usize]).collect();
            return Certified::new(f.into_iter().collect(), table.exact);
        }
        let ball = self.ball(a);
        let mut out = BTreeSet::new();
        'member: for m in &ball.members {
            let mut f = Vec::with_capacity(m.len());
            for &g in m.letters() {
                match table.canonical[g as usize] {
                    Some(x) => f.push(x),
                    None => continue 'member,
                }
            }
            out.insert(f);
        }
        Certified::new(out.into_iter().collect(), ball.closed && table.exact)
    }

    /// Canonical elements whose class has a member of length at most
    /// `enumeration_length`, in shortlex order.
    pub fn enumerate_elements(&self) -> ElementIter<'_> {
        ElementIter {
            handle: self,
            current: Vec::new(),
            started: false,
            k: self.presentation.generators.len() as u8,
        }
    }

    pub fn enumerate_atoms(&self) -> Certified<Vec<Word>> {
        let table = self.atom_table();
        let set: BTreeSet<Word> = table.canonical.iter().flatten().map(|&x| Word::letter(x)).collect();
        Certified::new(set.into_iter().collect(), table.exact)
    }
}

/// Iterator over canonical elements; see [`PresentedSemigroup::enumerate_elements`].
pub struct ElementIter<'a> {
    handle: &'a PresentedSemigroup,
    current: Vec<u8>,
    started: bool,
    k: u8,
}

impl ElementIter<'_> {
    /// Advances `current` to the next word in shortlex order.
    fn advance(&mut self) -> bool {
        if self.k == 0 {
            return false;
        }
        if !self.started {
            self.started = true;
            self.current = vec![0];
            return self.current.len() <= self.handle.enumeration_length;
        }
        let mut i = self.current.len();
        while i > 0 {
            i -= 1;
            if self.current[i] + 1 < self.k {
                self.current[i] += 1;
                for x in &mut self.current[i + 1..] {
                    *x = 0;
                }
                return true;
            }
        }
        let next_len = self.current.len() + 1;
        if next_len > self.handle.enumeration_length {
            return false;
        }
        self.current = vec![0; next_len];
        true
    }
}

impl Iterator for ElementIter<'_> {
    type Item = Certified<Word>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if !self.advance() {
                return None;
            }
            let w = &self.current;
            let rules = &self.handle.rules;
            if !rules.applies(w) {
                return Some(Certified::exact(Word(w.clone())));
            }
            // a single rewrite to a smaller word already rules out w
            let mut smaller = false;
            rules.for_each_rewrite(w, |v| {
                if (v.len(), &v) < (w.len(), w) {
                    smaller = true;
                }
            });
            if smaller {
                continue;
            }
            let word = Word(w.clone());
            let ball = self.handle.ball(&word);
            if ball.canonical() == &word {
                return Some(Certified::new(word, ball.closed));
            }
        }
    }
}

impl Semigroup for PresentedSemigroup {
    type Elem = Word;
    /// Canonical generator index of the atom.
    type Key = u8;

    fn identity(&self) -> Word {
        Word::empty()
    }

    fn mul(&self, a: &Word, b: &Word) -> Certified<Word> {
        self.canonical(&a.concat(b))
    }

    fn is_unit(&self, a: &Word) -> bool {
        a.is_empty()
    }

    fn is_atom(&self, a: &Word) -> Certified<bool> {
        match self.atom_verdict(a) {
            AtomVerdict::Yes => Certified::exact(true),
            AtomVerdict::No { .. } | AtomVerdict::Unit => Certified::exact(false),
            AtomVerdict::Unknown => Certified::partial(true),
        }
    }

    fn associate_key(&self, atom: &Word) -> u8 {
        atom.0.first().map_or(u8::MAX, |&g| self.atom_letter(g).unwrap_or(g))
    }

    fn left_divisors(&self, a: &Word) -> Certified<Vec<(Word, Word)>> {
        let table = self.atom_table();
        let ball = self.ball(a);
        let mut exact = ball.closed && table.exact;
        let mut out = BTreeSet::new();
        for m in &ball.members {
            let Some(&first) = m.0.first() else { continue };
            if let Some(x) = table.canonical[first as usize] {
                let q = self.canonical(&Word(m.0[1..].to_vec()));
                exact &= q.exact;
                out.insert((Word::letter(x), q.value));
            }
        }
        Certified::new(out.into_iter().collect(), exact)
    }

    fn equal(&self, a: &Word, b: &Word) -> Option<bool> {
        match self.equal_words(a, b) {
            WordEquality::Equal => Some(true),
            WordEquality::NotEqual => Some(false),
            WordEquality::Unknown => None,
        }
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Certified<Word>> + '_> {
        Box::new(self.enumerate_elements())
    }

    fn atoms(&self) -> Certified<Vec<Word>> {
        self.enumerate_atoms()
    }

    fn is_commutative(&self) -> bool {
        self.presentation.is_commutative_presentation()
    }

    fn render(&self, a: &Word) -> String {
        self.presentation.render_word(a)
    }

    fn render_key(&self, key: &u8) -> String {
        self.presentation
            .generators
            .get(*key as usize)
            .cloned()
            .unwrap_or_else(|| "?".to_string())
    }

    fn rigid_factorizations_hint(&self, a: &Word) -> Option<Certified<Vec<Vec<Word>>>> {
        Some(self.factorizations_from_ball(a).map(|fs| {
            fs.into_iter()
                .map(|f| f.into_iter().map(Word::letter).collect())
                .collect()
        }))
    }

    fn permutable_factorizations_hint(&self, a: &Word) -> Option<Certified<Vec<Vec<u8>>>> {
        Some(self.factorizations_from_ball(a).map(|fs| {
            let set: BTreeSet<Vec<u8>> = fs
                .into_iter()
                .map(|mut f| {
                    f.sort_unstable();
                    f
                })
                .collect();
            set.into_iter().collect()
        }))
    }

    fn has_unique_factorization(&self, a: &Word) -> bool {
        let table = self.atom_table();
        table.exact && self.is_singleton_class(a) && a.letters().iter().all(|&g| table.canonical[g as usize].is_some())
    }

    fn warnings(&self) -> Vec<String> {
        if self.adyan.is_adyan {
            Vec::new()
        } else {
            vec!["presentation is not Adyan: cancellativity is assumed, not certified".to_string()]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> PresentedSemigroup {
        PresentedSemigroup::new(Presentation::new(&["a", "b", "c"], &[("a b c", "c b")]).unwrap())
    }

    #[test]
    fn equal_and_not_equal() {
        let s = t();
        let w = |x: &str| s.word(x).unwrap();
        assert_eq!(s.equal_words(&w("a b c"), &w("c b")), WordEquality::Equal);
        assert_eq!(s.equal_words(&w("a b"), &w("a b")), WordEquality::Equal);
        let p = PresentedSemigroup::new(Presentation::new(&["a", "b", "c", "d"], &[("a b", "c d")]).unwrap());
        let ab = p.word("a b").unwrap();
        let dc = p.word("d c").unwrap();
        assert_eq!(p.equal_words(&ab, &dc), WordEquality::NotEqual);
    }

    #[test]
    fn unknown_when_truncated() {
        let p = Presentation::new(&["a", "b"], &[("a b a", "b")]).unwrap();
        let s = PresentedSemigroup::with_budget(p, ExplorationBudget::new(5, 1000).unwrap()).unwrap();
        let b = s.word("b").unwrap();
        assert_eq!(s.equal_words(&b, &s.word("a a").unwrap()), WordEquality::Unknown);
        assert_eq!(s.equal_words(&b, &s.word("a a b a a").unwrap()), WordEquality::Equal);
    }

    #[test]
    fn atoms_of_t() {
        let s = t();
        for g in ["a", "b", "c"] {
            assert_eq!(s.atom_verdict(&s.word(g).unwrap()), AtomVerdict::Yes);
        }
        let atoms = s.enumerate_atoms();
        assert!(atoms.exact);
        assert_eq!(atoms.value.len(), 3);
    }

    #[test]
    fn b_is_not_an_atom_in_aba_b() {
        let p = Presentation::new(&["a", "b"], &[("a b a", "b")]).unwrap();
        let s = PresentedSemigroup::new(p);
        match s.atom_verdict(&s.word("b").unwrap()) {
            AtomVerdict::No { left, right } => {
                let whole = left.concat(&right);
                assert_eq!(s.equal_words(&whole, &s.word("b").unwrap()), WordEquality::Equal);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(s.enumerate_atoms().value, vec![s.word("a").unwrap()]);
    }

    #[test]
    fn left_divisors_examples() {
        let s = t();
        let w = |x: &str| s.word(x).unwrap();
        let ld = s.left_divisors(&w("a b c"));
        assert!(ld.exact);
        assert_eq!(ld.value, vec![(w("a"), w("b c")), (w("c"), w("b"))]);

        let p = Presentation::new(&["a", "b"], &[("a b", "b a a")]).unwrap();
        let s = PresentedSemigroup::new(p);
        let w = |x: &str| s.word(x).unwrap();
        assert_eq!(
            s.left_divisors(&w("a b")).value,
            vec![(w("a"), w("b")), (w("b"), w("a a"))]
        );
    }

    #[test]
    fn enumeration_of_free_monoid() {
        let p = Presentation::new(&["a"], &[]).unwrap();
        let s = PresentedSemigroup::with_budget(p, ExplorationBudget::new(3, 10).unwrap()).unwrap();
        let els: Vec<Word> = s.enumerate_elements().map(|e| e.value).collect();
        assert_eq!(els, vec![Word(vec![0]), Word(vec![0, 0]), Word(vec![0, 0, 0])]);
    }

    #[test]
    fn enumeration_lists_each_class_once() {
        let s = PresentedSemigroup::with_budget(
            Presentation::new(&["a", "b", "c"], &[("a b c", "c b")]).unwrap(),
            ExplorationBudget::new(3, 100).unwrap(),
        )
        .unwrap();
        let els: Vec<Word> = s.enumerate_elements().map(|e| e.value).collect();
        // 3 + 9 + 27 words, abc and cb collapse
        assert_eq!(els.len(), 38);
        assert!(els.contains(&s.word("c b").unwrap()));
        assert!(!els.contains(&s.word("a b c").unwrap()));
    }

    #[test]
    fn factorizations_from_ball_of_abc() {
        let s = t();
        let f = s.factorizations_from_ball(&s.word("a b c").unwrap());
        assert!(f.exact);
        assert_eq!(f.value, vec![vec![0, 1, 2], vec![2, 1]]);
    }
}
