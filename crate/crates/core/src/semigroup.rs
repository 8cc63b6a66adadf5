//! The capability contract shared by every element source.
//!
//! Presentations, block monoids and matrix semigroups all implement
//! [`Semigroup`]; the factorization, distance and catenary code is written
//! once against it.

use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

/// A value together with a flag telling whether every search behind it ran to
/// completion. `exact == false` means the value is only what was found within
/// the exploration budget.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Certified<T> {
    pub value: T,
    pub exact: bool,
}

impl<T> Certified<T> {
    pub fn exact(value: T) -> Self {
        Certified { value, exact: true }
    }

    pub fn partial(value: T) -> Self {
        Certified { value, exact: false }
    }

    pub fn new(value: T, exact: bool) -> Self {
        Certified { value, exact }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Certified<U> {
        Certified {
            value: f(self.value),
            exact: self.exact,
        }
    }

    /// Downgrades the certificate if `other` is not exact.
    pub fn and(mut self, other: bool) -> Self {
        self.exact &= other;
        self
    }

    pub fn certification(&self) -> Certification {
        if self.exact {
            Certification::Exact
        } else {
            Certification::LowerBound
        }
    }
}

/// Certification level attached to reported invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    Exact,
    LowerBound,
    Unknown,
}

impl Certification {
    pub fn as_str(self) -> &'static str {
        match self {
            Certification::Exact => "exact",
            Certification::LowerBound => "lower-bound",
            Certification::Unknown => "unknown",
        }
    }
}

/// Operations a cancellative semigroup (with identity) has to provide so that
/// factorizations and the invariants built on them can be computed.
///
/// Elements are expected to be in a normal form, so that `==` on
/// [`Semigroup::Elem`] is equality in the semigroup (for the presentation
/// engine this holds whenever the underlying balls are closed).
pub trait Semigroup {
    type Elem: Clone + Eq + Ord + Hash + Debug;
    /// Identifies the associate class of an atom.
    type Key: Clone + Eq + Ord + Hash + Debug;

    fn identity(&self) -> Self::Elem;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Certified<Self::Elem>;

    fn is_unit(&self, a: &Self::Elem) -> bool;

    fn is_atom(&self, a: &Self::Elem) -> Certified<bool>;

    /// Associate class of an atom. Two atoms are associated iff their keys agree.
    fn associate_key(&self, atom: &Self::Elem) -> Self::Key;

    fn associated(&self, u: &Self::Elem, v: &Self::Elem) -> bool {
        self.associate_key(u) == self.associate_key(v)
    }

    /// All atoms `u` (one per class modulo right units) with `a ∈ uH`, each
    /// paired with its left quotient.
    fn left_divisors(&self, a: &Self::Elem) -> Certified<Vec<(Self::Elem, Self::Elem)>>;

    /// `None` when equality could not be decided within the budget.
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> Option<bool> {
        Some(a == b)
    }

    /// Non-identity elements of the explored scope, in a deterministic order.
    fn elements(&self) -> Box<dyn Iterator<Item = Certified<Self::Elem>> + '_>;

    /// Atoms of the explored scope.
    fn atoms(&self) -> Certified<Vec<Self::Elem>> {
        let mut exact = true;
        let mut out = Vec::new();
        for e in self.elements() {
            exact &= e.exact;
            if self.is_unit(&e.value) {
                continue;
            }
            let v = self.is_atom(&e.value);
            exact &= v.exact;
            if v.value {
                out.push(e.value);
            }
        }
        Certified::new(out, exact)
    }

    fn is_commutative(&self) -> bool {
        false
    }

    fn render(&self, a: &Self::Elem) -> String;

    fn render_key(&self, key: &Self::Key) -> String {
        format!("{key:?}")
    }

    /// A handle may supply rigid factorizations directly when it has a faster
    /// route than recursion on left divisors.
    fn rigid_factorizations_hint(&self, _a: &Self::Elem) -> Option<Certified<Vec<Vec<Self::Elem>>>> {
        None
    }

    /// Same for permutable factorizations (sorted key multisets).
    fn permutable_factorizations_hint(&self, _a: &Self::Elem) -> Option<Certified<Vec<Vec<Self::Key>>>> {
        None
    }

    /// Cheap sufficient test for `|Z*(a)| = 1` with the factorization fully
    /// known; handles without one return `false`.
    fn has_unique_factorization(&self, _a: &Self::Elem) -> bool {
        false
    }

    /// Caveats that every report computed over this handle should carry.
    fn warnings(&self) -> Vec<String> {
        Vec::new()
    }

    /// Product of a sequence, left to right.
    fn product(&self, items: &[Self::Elem]) -> Certified<Self::Elem> {
        let mut acc = Certified::exact(self.identity());
        for x in items {
            let next = self.mul(&acc.value, x);
            acc = Certified::new(next.value, acc.exact && next.exact);
        }
        acc
    }
}
