use std::collections::HashSet;

use super::{ExplorationBudget, Presentation, Word};

/// Words reachable from a seed by relation rewrites, within a budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceBall {
    pub seed: Word,
    /// Sorted in shortlex order; the first member is the canonical form.
    pub members: Vec<Word>,
    /// Every rewrite of every member stays inside `members`.
    pub closed: bool,
    /// Some rewrite produced a word longer than `max_word_length`.
    pub hit_length_limit: bool,
    /// The search stopped at `max_ball_size` members.
    pub hit_size_limit: bool,
}

impl CongruenceBall {
    pub fn canonical(&self) -> &Word {
        &self.members[0]
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.binary_search(w).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Rewrite rules in both directions.
#[derive(Clone, Debug)]
pub(crate) struct Rules {
    pairs: Vec<(Vec<u8>, Vec<u8>)>,
}

impl Rules {
    pub(crate) fn new(p: &Presentation) -> Self {
        let mut pairs = Vec::with_capacity(2 * p.relations.len());
        for r in &p.relations {
            pairs.push((r.lhs.0.clone(), r.rhs.0.clone()));
            if r.lhs != r.rhs {
                pairs.push((r.rhs.0.clone(), r.lhs.0.clone()));
            }
        }
        Rules { pairs }
    }

    /// Whether some relation side occurs in `w`.
    pub(crate) fn applies(&self, w: &[u8]) -> bool {
        self.pairs
            .iter()
            .any(|(s, _)| s.len() <= w.len() && w.windows(s.len()).any(|win| win == s.as_slice()))
    }

    /// Calls `f` on every single-step rewrite of `w`.
    pub(crate) fn for_each_rewrite(&self, w: &[u8], mut f: impl FnMut(Vec<u8>)) {
        for (s, t) in &self.pairs {
            if s.len() > w.len() {
                continue;
            }
            for i in 0..=w.len() - s.len() {
                if w[i..i + s.len()] == s[..] {
                    let mut v = Vec::with_capacity(w.len() - s.len() + t.len());
                    v.extend_from_slice(&w[..i]);
                    v.extend_from_slice(t);
                    v.extend_from_slice(&w[i + s.len()..]);
                    f(v);
                }
            }
        }
    }
}

/// Breadth-first closure of `w` under single relation rewrites in both
/// directions at every position.
pub fn congruence_ball(p: &Presentation, w: &Word, budget: &ExplorationBudget) -> CongruenceBall {
    ball_with_rules(&Rules::new(p), w, budget)
}

pub(crate) fn ball_with_rules(rules: &Rules, w: &Word, budget: &ExplorationBudget) -> CongruenceBall {
    if !rules.applies(w.letters()) {
        return CongruenceBall {
            seed: w.clone(),
            members: vec![w.clone()],
            closed: true,
            hit_length_limit: false,
            hit_size_limit: false,
        };
    }
    // most classes are tiny: scan a vector until it grows, then hash
    let mut order: Vec<Vec<u8>> = vec![w.0.clone()];
    let mut index: Option<HashSet<Vec<u8>>> = None;
    let mut hit_length_limit = false;
    let mut hit_size_limit = false;
    let mut head = 0;
    while head < order.len() {
        let cur = order[head].clone();
        head += 1;
        rules.for_each_rewrite(&cur, |next| {
            if next.len() > budget.max_word_length {
                hit_length_limit = true;
                return;
            }
            let known = match &index {
                Some(set) => set.contains(&next),
                None => order.contains(&next),
            };
            if known {
                return;
            }
            if order.len() >= budget.max_ball_size {
                hit_size_limit = true;
                return;
            }
            if let Some(set) = &mut index {
                set.insert(next.clone());
            } else if order.len() >= 32 {
                index = Some(order.iter().cloned().chain(std::iter::once(next.clone())).collect());
            }
            order.push(next);
        });
    }
    let mut members: Vec<Word> = order.into_iter().map(Word).collect();
    members.sort();
    CongruenceBall {
        seed: w.clone(),
        members,
        closed: !hit_length_limit && !hit_size_limit,
        hit_length_limit,
        hit_size_limit,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: &Presentation, s: &str) -> Word {
        p.parse_word(s).unwrap()
    }

    #[test]
    fn t_ball_of_abc() {
        let p = Presentation::new(&["a", "b", "c"], &[("a b c", "c b")]).unwrap();
        let ball = congruence_ball(&p, &w(&p, "a b c"), &p.budget);
        assert!(ball.closed);
        assert_eq!(ball.members, vec![w(&p, "c b"), w(&p, "a b c")]);
        assert_eq!(ball.canonical(), &w(&p, "c b"));
    }

    #[test]
    fn free_monoid_singleton() {
        let p = Presentation::new(&["a", "b"], &[]).unwrap();
        let ball = congruence_ball(&p, &w(&p, "a b"), &p.budget);
        assert!(ball.closed);
        assert_eq!(ball.members, vec![w(&p, "a b")]);
    }

    #[test]
    fn ab_equals_baa() {
        let p = Presentation::new(&["a", "b"], &[("a b", "b a a")]).unwrap();
        let budget = ExplorationBudget::new(3, 100).unwrap();
        let ball = congruence_ball(&p, &w(&p, "a b"), &budget);
        assert!(ball.closed);
        assert_eq!(ball.members, vec![w(&p, "a b"), w(&p, "b a a")]);
    }

    #[test]
    fn truncation_is_flagged() {
        // b = aba = aabaa = ... never closes
        let p = Presentation::new(&["a", "b"], &[("a b a", "b")]).unwrap();
        let budget = ExplorationBudget::new(7, 100).unwrap();
        let ball = congruence_ball(&p, &w(&p, "b"), &budget);
        assert!(!ball.closed);
        assert!(ball.hit_length_limit);
        assert!(ball.contains(&w(&p, "a a a b a a a")));
        let tiny = ExplorationBudget::new(7, 2).unwrap();
        let ball = congruence_ball(&p, &w(&p, "b"), &tiny);
        assert!(ball.hit_size_limit);
        assert_eq!(ball.len(), 2);
    }
}
