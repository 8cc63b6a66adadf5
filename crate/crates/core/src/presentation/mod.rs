//! Finitely presented semigroups `⟨X | R⟩` (as monoids, the empty word being
//! the identity).

mod adyan;
mod ball;
mod engine;
mod parse;

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use adyan::{check_adyan, AdyanReport};
pub use ball::{congruence_ball, CongruenceBall};
pub use engine::{AtomVerdict, PresentedSemigroup, WordEquality};
pub use parse::parse_presentation;

/// A word over the generators, stored as generator indices.
///
/// Ordering is shortlex: shorter words first, then lexicographic by
/// generator declaration order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn letter(g: u8) -> Word {
        Word(vec![g])
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

/// A defining relation `lhs = rhs`; both sides are nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

/// Limits for the bounded congruence search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExplorationBudget {
    pub max_word_length: usize,
    pub max_ball_size: usize,
}

impl Default for ExplorationBudget {
    fn default() -> Self {
        ExplorationBudget {
            max_word_length: 12,
            max_ball_size: 100_000,
        }
    }
}

impl ExplorationBudget {
    pub fn new(max_word_length: usize, max_ball_size: usize) -> Result<Self> {
        if max_word_length == 0 || max_ball_size == 0 {
            return Err(Error::InvalidBudget(
                "max_word_length and max_ball_size must be positive".into(),
            ));
        }
        Ok(ExplorationBudget {
            max_word_length,
            max_ball_size,
        })
    }
}

/// Generators, relations and the exploration budget read from the file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
    pub budget: ExplorationBudget,
}

impl Presentation {
    /// Builds a presentation from generator names and relations written as
    /// whitespace separated words, e.g. `("a b c", "c b")`.
    pub fn new(generators: &[&str], relations: &[(&str, &str)]) -> Result<Self> {
        let mut text = format!("gens: {}\n", generators.join(" "));
        for (l, r) in relations {
            text.push_str(&format!("rel: {l} = {r}\n"));
        }
        parse_presentation(&text)
    }

    pub fn with_budget(mut self, budget: ExplorationBudget) -> Result<Self> {
        self.check_budget(&budget)?;
        self.budget = budget;
        Ok(self)
    }

    pub(crate) fn check_budget(&self, budget: &ExplorationBudget) -> Result<()> {
        if budget.max_word_length == 0 || budget.max_ball_size == 0 {
            return Err(Error::InvalidBudget("limits must be positive".into()));
        }
        if let Some(longest) = self.relations.iter().map(|r| r.lhs.len().max(r.rhs.len())).max() {
            if longest > budget.max_word_length {
                return Err(Error::InvalidBudget(format!(
                    "max_word_length {} is shorter than a relation side of length {longest}",
                    budget.max_word_length
                )));
            }
        }
        Ok(())
    }

    pub fn generator_index(&self, name: &str) -> Option<u8> {
        self.generators.iter().position(|g| g == name).map(|i| i as u8)
    }

    /// Parses a whitespace separated word. Tokens may carry an exponent
    /// (`a^3`); the token `1` denotes the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut out = Vec::new();
        for (col, token) in parse::tokens(text) {
            if token == "1" {
                continue;
            }
            let (name, exp) = parse::split_power(token).ok_or_else(|| Error::Syntax {
                line: 1,
                column: col,
                message: format!("malformed token `{token}`"),
            })?;
            let g = self.generator_index(name).ok_or_else(|| Error::UndeclaredGenerator {
                name: name.to_string(),
                line: 1,
                column: col,
            })?;
            out.extend(std::iter::repeat_n(g, exp));
        }
        Ok(Word(out))
    }

    /// Renders a word as space separated generator names (`1` when empty).
    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.0.iter()
            .map(|&g| self.generators[g as usize].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Whether every relation has sides of equal length.
    pub fn is_length_preserving(&self) -> bool {
        self.relations.iter().all(|r| r.lhs.len() == r.rhs.len())
    }

    pub fn is_commutative_presentation(&self) -> bool {
        let k = self.generators.len() as u8;
        (0..k).all(|x| {
            (x + 1..k).all(|y| {
                self.relations
                    .iter()
                    .any(|r| (r.lhs.0 == [x, y] && r.rhs.0 == [y, x]) || (r.lhs.0 == [y, x] && r.rhs.0 == [x, y]))
            })
        })
    }

    /// Text in the presentation file format.
    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}\n", self.generators.join(" "));
        for r in &self.relations {
            s.push_str(&format!(
                "rel: {} = {}\n",
                self.render_word(&r.lhs),
                self.render_word(&r.rhs)
            ));
        }
        s.push_str(&format!(
            "budget: max_word_length={} max_ball_size={}\n",
            self.budget.max_word_length, self.budget.max_ball_size
        ));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortlex_order() {
        let a = Word(vec![1]);
        let b = Word(vec![0, 0]);
        let c = Word(vec![0, 1]);
        assert!(a < b);
        assert!(b < c);
        assert!(Word::empty() < a);
    }

    #[test]
    fn parse_word_with_powers() {
        let p = Presentation::new(&["a", "b"], &[]).unwrap();
        assert_eq!(p.parse_word("a^2 b a").unwrap(), Word(vec![0, 0, 1, 0]));
        assert_eq!(p.parse_word("1").unwrap(), Word::empty());
        assert!(matches!(p.parse_word("a c"), Err(Error::UndeclaredGenerator { .. })));
    }

    #[test]
    fn budget_must_cover_relations() {
        let p = Presentation::new(&["a", "b"], &[("a b a", "b")]).unwrap();
        assert!(p.clone().with_budget(ExplorationBudget::new(2, 10).unwrap()).is_err());
        assert!(p.with_budget(ExplorationBudget::new(3, 10).unwrap()).is_ok());
    }

    #[test]
    fn commutative_presentation_detected() {
        let p = Presentation::new(&["a", "b"], &[("a b", "b a")]).unwrap();
        assert!(p.is_commutative_presentation());
        let q = Presentation::new(&["a", "b"], &[("a b", "b a a")]).unwrap();
        assert!(!q.is_commutative_presentation());
    }
}
