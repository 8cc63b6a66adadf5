//! Rigid and permutable factorizations, sets of lengths.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::rc::Rc;

use num_rational::Ratio;

use crate::semigroup::{Certified, Semigroup};

/// An ordered product of atoms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RigidFactorization<E> {
    pub atoms: Vec<E>,
    pub product: E,
}

impl<E> RigidFactorization<E> {
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

/// A factorization up to order and associates: a sorted multiset of atom
/// classes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermutableFactorization<K> {
    pub classes: Vec<K>,
}

impl<K: Ord> PermutableFactorization<K> {
    pub fn new(mut classes: Vec<K>) -> Self {
        classes.sort();
        PermutableFactorization { classes }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Sub-multiset test.
    pub fn divides(&self, other: &Self) -> bool {
        is_submultiset(&self.classes, &other.classes)
    }
}

/// Whether sorted `a` is a sub-multiset of sorted `b`.
pub fn is_submultiset<K: Ord>(a: &[K], b: &[K]) -> bool {
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j == b.len() || b[j] != *x {
            return false;
        }
        j += 1;
    }
    true
}

/// Size of the largest common sub-multiset of two sorted sequences.
pub fn common_submultiset_len<K: Ord>(a: &[K], b: &[K]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// L(a) together with its set of distances and elasticity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthSet {
    pub lengths: BTreeSet<usize>,
    pub delta: BTreeSet<usize>,
    pub elasticity: Ratio<u64>,
}

impl LengthSet {
    pub fn from_lengths(lengths: impl IntoIterator<Item = usize>) -> Self {
        let lengths: BTreeSet<usize> = lengths.into_iter().collect();
        let v: Vec<usize> = lengths.iter().copied().collect();
        let delta = v.windows(2).map(|w| w[1] - w[0]).collect();
        let elasticity = match (v.first(), v.last()) {
            (Some(&min), Some(&max)) if min > 0 => Ratio::new(max as u64, min as u64),
            _ => Ratio::from_integer(0),
        };
        LengthSet {
            lengths,
            delta,
            elasticity,
        }
    }

    pub fn max(&self) -> Option<usize> {
        self.lengths.last().copied()
    }

    pub fn min(&self) -> Option<usize> {
        self.lengths.first().copied()
    }

    /// Rational rendered as `p/q`.
    pub fn elasticity_string(&self) -> String {
        format!("{}/{}", self.elasticity.numer(), self.elasticity.denom())
    }
}

const MAX_DEPTH: usize = 256;

type Memo<E> = HashMap<E, Rc<Certified<Vec<Vec<E>>>>>;

/// Rigid factorizations found by recursion on left divisors, ignoring any
/// shortcut the handle offers. Units factor as the empty sequence.
pub fn rigid_factorizations_by_divisors<S: Semigroup>(h: &S, a: &S::Elem) -> Certified<Vec<Vec<S::Elem>>> {
    let mut memo = Memo::new();
    let mut stack = HashSet::new();
    let r = recurse(h, a, &mut memo, &mut stack);
    Certified::new(r.value.clone(), r.exact)
}

fn recurse<S: Semigroup>(
    h: &S,
    a: &S::Elem,
    memo: &mut Memo<S::Elem>,
    stack: &mut HashSet<S::Elem>,
) -> Rc<Certified<Vec<Vec<S::Elem>>>> {
    if h.is_unit(a) {
        return Rc::new(Certified::exact(vec![Vec::new()]));
    }
    if let Some(r) = memo.get(a) {
        return Rc::clone(r);
    }
    if stack.contains(a) || stack.len() >= MAX_DEPTH {
        // a divisor chain returned to an element already being factored,
        // which cannot happen in an atomic cancellative semigroup with
        // complete information
        return Rc::new(Certified::partial(Vec::new()));
    }
    stack.insert(a.clone());
    let ld = h.left_divisors(a);
    let mut exact = ld.exact;
    let mut out = BTreeSet::new();
    for (u, q) in &ld.value {
        let sub = recurse(h, q, memo, stack);
        exact &= sub.exact;
        for f in &sub.value {
            let mut v = Vec::with_capacity(f.len() + 1);
            v.push(u.clone());
            v.extend(f.iter().cloned());
            out.insert(v);
        }
    }
    stack.remove(a);
    let r = Rc::new(Certified::new(out.into_iter().collect(), exact));
    memo.insert(a.clone(), Rc::clone(&r));
    r
}

/// Z*(a), sorted. Uses the handle's direct route when it has one.
pub fn rigid_factorizations<S: Semigroup>(h: &S, a: &S::Elem) -> Certified<Vec<RigidFactorization<S::Elem>>> {
    let raw = h
        .rigid_factorizations_hint(a)
        .unwrap_or_else(|| rigid_factorizations_by_divisors(h, a));
    raw.map(|fs| {
        fs.into_iter()
            .map(|atoms| RigidFactorization {
                atoms,
                product: a.clone(),
            })
            .collect()
    })
}

/// Z_p(a), sorted.
pub fn permutable_factorizations<S: Semigroup>(h: &S, a: &S::Elem) -> Certified<Vec<PermutableFactorization<S::Key>>> {
    if let Some(hint) = h.permutable_factorizations_hint(a) {
        return hint.map(|fs| {
            let set: BTreeSet<_> = fs.into_iter().map(PermutableFactorization::new).collect();
            set.into_iter().collect()
        });
    }
    let rigid = rigid_factorizations(h, a);
    rigid.map(|fs| {
        let set: BTreeSet<_> = fs
            .iter()
            .map(|f| PermutableFactorization::new(f.atoms.iter().map(|u| h.associate_key(u)).collect()))
            .collect();
        set.into_iter().collect()
    })
}

/// Maps a rigid factorization to its permutable class.
pub fn to_permutable<S: Semigroup>(h: &S, z: &RigidFactorization<S::Elem>) -> PermutableFactorization<S::Key> {
    PermutableFactorization::new(z.atoms.iter().map(|u| h.associate_key(u)).collect())
}

pub fn length_profile<S: Semigroup>(h: &S, a: &S::Elem) -> Certified<LengthSet> {
    permutable_factorizations(h, a).map(|fs| LengthSet::from_lengths(fs.iter().map(|f| f.len())))
}
