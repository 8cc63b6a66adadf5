//! Finite abelian groups, monoids of zero-sum sequences B(G_P), Davenport
//! constants and the block-monoid catenary bound.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Mutex;

use serde::Serialize;

use crate::catenary::{semigroup_catenary, Degree, SemigroupCatenaryReport, Variant};
use crate::distance::DistanceKind;
use crate::error::{Error, Result};
use crate::semigroup::{Certified, Semigroup};

/// Default cap on |G| for exhaustive work.
pub const DEFAULT_GROUP_CAP: u64 = 64;

/// `C_{n_1} ⊕ … ⊕ C_{n_r}`. The empty list is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    orders: Vec<u32>,
    order: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FiniteAbelianGroup {
    pub fn new(orders: &[u32]) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidGroup("cyclic orders must be at least 1".into()));
        }
        let order = orders.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n as u64));
        let order = order.ok_or_else(|| Error::InvalidGroup("group order overflows".into()))?;
        Ok(FiniteAbelianGroup {
            orders: orders.iter().copied().filter(|&n| n > 1).collect(),
            order,
        })
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(&[n])
    }

    /// Parses `"3"` or `"2,2"`; `"1"` or `""` is the trivial group.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Self::new(&[]);
        }
        let orders: std::result::Result<Vec<u32>, _> = t.split(',').map(|x| x.trim().parse::<u32>()).collect();
        Self::new(&orders.map_err(|_| Error::InvalidGroup(format!("cannot parse `{text}`")))?)
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.orders
            .iter()
            .fold(1u64, |acc, &n| acc / gcd(acc, n as u64) * n as u64)
    }

    /// Invariant factors `n_1 | n_2 | … | n_r` with `n_1 > 1`.
    pub fn invariant_factors(&self) -> Vec<u64> {
        // prime power parts, grouped by prime
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &n in &self.orders {
            let mut m = n as u64;
            let mut p = 2;
            while m > 1 {
                if p * p > m {
                    p = m;
                }
                if m.is_multiple_of(p) {
                    let mut q = 1;
                    while m.is_multiple_of(p) {
                        m /= p;
                        q *= p;
                    }
                    by_prime.entry(p).or_default().push(q);
                }
                p += 1;
            }
        }
        let r = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; r];
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (i, q) in powers.iter().enumerate() {
                factors[r - 1 - i] *= q;
            }
        }
        factors
    }

    /// Coordinates of the element with the given index (mixed radix).
    pub fn element(&self, index: usize) -> GroupElement {
        let mut rest = index as u64;
        let mut coords = vec![0u32; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            let n = self.orders[i] as u64;
            coords[i] = (rest % n) as u32;
            rest /= n;
        }
        GroupElement { coords }
    }

    pub fn index_of(&self, g: &GroupElement) -> usize {
        let mut idx = 0u64;
        for (i, &c) in g.coords.iter().enumerate() {
            idx = idx * self.orders[i] as u64 + (c % self.orders[i]) as u64;
        }
        idx as usize
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.element(a), self.element(b));
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .zip(&self.orders)
            .map(|((p, q), n)| (p + q) % n)
            .collect();
        self.index_of(&GroupElement { coords })
    }

    pub fn neg(&self, a: usize) -> usize {
        let x = self.element(a);
        let coords = x.coords.iter().zip(&self.orders).map(|(p, n)| (n - p) % n).collect();
        self.index_of(&GroupElement { coords })
    }

    pub fn order_of(&self, a: usize) -> u64 {
        let x = self.element(a);
        x.coords
            .iter()
            .zip(&self.orders)
            .map(|(&c, &n)| n as u64 / gcd(c as u64, n as u64))
            .fold(1u64, |acc, m| acc / gcd(acc, m) * m)
    }

    pub fn render_element(&self, a: usize) -> String {
        let x = self.element(a);
        match x.coords.len() {
            0 => "0".to_string(),
            1 => x.coords[0].to_string(),
            _ => format!(
                "({})",
                x.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            ),
        }
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return f.write_str("C1");
        }
        let parts: Vec<String> = self.orders.iter().map(|n| format!("C{n}")).collect();
        f.write_str(&parts.join("+"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub coords: Vec<u32>,
}

/// A multiset of group elements, stored as sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ZeroSumSequence {
    pub terms: Vec<u16>,
}

impl ZeroSumSequence {
    pub fn new(mut terms: Vec<u16>) -> Self {
        terms.sort_unstable();
        ZeroSumSequence { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sum(&self, g: &FiniteAbelianGroup) -> usize {
        self.terms.iter().fold(0, |acc, &t| g.add(acc, t as usize))
    }

    pub fn contains(&self, other: &ZeroSumSequence) -> bool {
        crate::factorization::is_submultiset(&other.terms, &self.terms)
    }

    /// `self − other`, assuming `other` is a sub-multiset.
    pub fn minus(&self, other: &ZeroSumSequence) -> ZeroSumSequence {
        let mut out = Vec::with_capacity(self.len() - other.len());
        let mut j = 0;
        for &t in &self.terms {
            if j < other.terms.len() && other.terms[j] == t {
                j += 1;
            } else {
                out.push(t);
            }
        }
        ZeroSumSequence { terms: out }
    }

    pub fn merge(&self, other: &ZeroSumSequence) -> ZeroSumSequence {
        let mut v = self.terms.clone();
        v.extend_from_slice(&other.terms);
        ZeroSumSequence::new(v)
    }
}

fn check_cap(g: &FiniteAbelianGroup, cap: u64) -> Result<()> {
    if g.order() > cap {
        return Err(Error::GroupTooLarge { order: g.order(), cap });
    }
    Ok(())
}

/// Precomputed addition table for |G| ≤ cap.
struct Table {
    n: usize,
    add: Vec<u16>,
    neg: Vec<u16>,
}

impl Table {
    fn new(g: &FiniteAbelianGroup) -> Self {
        let n = g.order() as usize;
        let mut add = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = g.add(a, b) as u16;
            }
        }
        let neg = (0..n).map(|a| g.neg(a) as u16).collect();
        Table { n, add, neg }
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }
}

/// Minimal zero-sum sequences over `subset` (all of G when `None`).
///
/// Every atom of length ≥ 2 is `S · (−σ(S))` for a zero-sum free `S`; those
/// are found by depth-first search over multisets, tracking the set of
/// nonempty subsums and pruning as soon as 0 becomes a subsum.
pub fn atoms_of_block_monoid(
    g: &FiniteAbelianGroup,
    subset: Option<&[usize]>,
    cap: u64,
) -> Result<Vec<ZeroSumSequence>> {
    check_cap(g, cap)?;
    let t = Table::new(g);
    let allowed: Vec<usize> = match subset {
        Some(s) => {
            let mut v: Vec<usize> = s.iter().copied().filter(|&x| x < t.n).collect();
            v.sort_unstable();
            v.dedup();
            v
        }
        None => (0..t.n).collect(),
    };
    let in_subset: Vec<bool> = (0..t.n).map(|x| allowed.binary_search(&x).is_ok()).collect();
    let mut atoms = BTreeSet::new();
    if in_subset[0] {
        atoms.insert(ZeroSumSequence::new(vec![0]));
    }
    let nonzero: Vec<usize> = allowed.iter().copied().filter(|&x| x != 0).collect();
    let mut seq = Vec::new();
    zsf_dfs(&t, &nonzero, 0, &mut seq, &vec![false; t.n], 0, &in_subset, &mut atoms);
    Ok(atoms.into_iter().collect())
}

#[allow(clippy::too_many_arguments)]
fn zsf_dfs(
    t: &Table,
    pool: &[usize],
    from: usize,
    seq: &mut Vec<usize>,
    subsums: &[bool],
    sum: usize,
    in_subset: &[bool],
    atoms: &mut BTreeSet<ZeroSumSequence>,
) {
    if !seq.is_empty() {
        let closing = t.neg[sum] as usize;
        if in_subset[closing] {
            let mut terms: Vec<u16> = seq.iter().map(|&x| x as u16).collect();
            terms.push(closing as u16);
            atoms.insert(ZeroSumSequence::new(terms));
        }
    }
    for (i, &x) in pool.iter().enumerate().skip(from) {
        // new subsums: old ones, old ones + x, and x itself
        let mut next = subsums.to_vec();
        next[x] = true;
        for (s, &present) in subsums.iter().enumerate() {
            if present {
                next[t.add(s, x)] = true;
            }
        }
        if next[0] {
            continue;
        }
        seq.push(x);
        zsf_dfs(t, pool, i, seq, &next, t.add(sum, x), in_subset, atoms);
        seq.pop();
    }
}

/// D(G_P): the maximal length of an atom.
pub fn davenport(g: &FiniteAbelianGroup, subset: Option<&[usize]>, cap: u64) -> Result<usize> {
    Ok(atoms_of_block_monoid(g, subset, cap)?
        .iter()
        .map(ZeroSumSequence::len)
        .max()
        .unwrap_or(0))
}

type PartitionMemo = HashMap<ZeroSumSequence, Vec<Vec<ZeroSumSequence>>>;

/// B(G_P) as a semigroup handle; elements in scope are the zero-sum
/// sequences of length at most `max_len`.
pub struct BlockMonoid {
    group: FiniteAbelianGroup,
    table: Table,
    subset: Vec<usize>,
    atoms: Vec<ZeroSumSequence>,
    atom_set: HashSet<ZeroSumSequence>,
    max_len: usize,
    memo: Mutex<PartitionMemo>,
}

impl BlockMonoid {
    pub fn new(group: FiniteAbelianGroup, subset: Option<&[usize]>, max_len: usize, cap: u64) -> Result<Self> {
        let atoms = atoms_of_block_monoid(&group, subset, cap)?;
        let table = Table::new(&group);
        let subset = match subset {
            Some(s) => {
                let mut v: Vec<usize> = s.iter().copied().filter(|&x| x < table.n).collect();
                v.sort_unstable();
                v.dedup();
                v
            }
            None => (0..table.n).collect(),
        };
        Ok(BlockMonoid {
            atom_set: atoms.iter().cloned().collect(),
            atoms,
            group,
            table,
            subset,
            max_len,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn atom_list(&self) -> &[ZeroSumSequence] {
        &self.atoms
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Builds a sequence from group elements given by coordinates.
    pub fn sequence(&self, elements: &[&[u32]]) -> ZeroSumSequence {
        ZeroSumSequence::new(
            elements
                .iter()
                .map(|c| self.group.index_of(&GroupElement { coords: c.to_vec() }) as u16)
                .collect(),
        )
    }

    /// Multiset partitions of `a` into atoms, each sorted.
    pub fn partitions(&self, a: &ZeroSumSequence) -> Vec<Vec<ZeroSumSequence>> {
        if a.is_empty() {
            return vec![Vec::new()];
        }
        if let Some(r) = self.memo.lock().unwrap().get(a) {
            return r.clone();
        }
        let first = a.terms[0];
        let mut out = BTreeSet::new();
        for atom in &self.atoms {
            // each partition is reached through the atom holding the smallest term
            if atom.terms.binary_search(&first).is_err() || !a.contains(atom) {
                continue;
            }
            for mut rest in self.partitions(&a.minus(atom)) {
                rest.push(atom.clone());
                rest.sort();
                out.insert(rest);
            }
        }
        let r: Vec<Vec<ZeroSumSequence>> = out.into_iter().collect();
        self.memo.lock().unwrap().insert(a.clone(), r.clone());
        r
    }

    fn is_zero_sum(&self, a: &ZeroSumSequence) -> bool {
        a.terms.iter().fold(0, |acc, &t| self.table.add(acc, t as usize)) == 0
    }
}

/// Distinct orderings of a multiset.
fn orderings<T: Clone + Ord>(items: &[T]) -> Vec<Vec<T>> {
    let mut v = items.to_vec();
    v.sort();
    let mut out = vec![v.clone()];
    // next lexicographic permutation
    while let Some(i) = (0..v.len().saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) {
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(v.clone());
    }
    out
}

impl Semigroup for BlockMonoid {
    type Elem = ZeroSumSequence;
    type Key = ZeroSumSequence;

    fn identity(&self) -> ZeroSumSequence {
        ZeroSumSequence::default()
    }

    fn mul(&self, a: &ZeroSumSequence, b: &ZeroSumSequence) -> Certified<ZeroSumSequence> {
        Certified::exact(a.merge(b))
    }

    fn is_unit(&self, a: &ZeroSumSequence) -> bool {
        a.is_empty()
    }

    fn is_atom(&self, a: &ZeroSumSequence) -> Certified<bool> {
        Certified::exact(self.atom_set.contains(a))
    }

    fn associate_key(&self, atom: &ZeroSumSequence) -> ZeroSumSequence {
        atom.clone()
    }

    fn left_divisors(&self, a: &ZeroSumSequence) -> Certified<Vec<(ZeroSumSequence, ZeroSumSequence)>> {
        Certified::exact(
            self.atoms
                .iter()
                .filter(|u| a.contains(u))
                .map(|u| (u.clone(), a.minus(u)))
                .collect(),
        )
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Certified<ZeroSumSequence>> + '_> {
        let mut out = Vec::new();
        let mut seq = Vec::new();
        fn rec(m: &BlockMonoid, from: usize, seq: &mut Vec<u16>, out: &mut Vec<ZeroSumSequence>) {
            if !seq.is_empty() {
                let s = ZeroSumSequence { terms: seq.clone() };
                if m.is_zero_sum(&s) {
                    out.push(s);
                }
            }
            if seq.len() == m.max_len {
                return;
            }
            for i in from..m.subset.len() {
                seq.push(m.subset[i] as u16);
                rec(m, i, seq, out);
                seq.pop();
            }
        }
        rec(self, 0, &mut seq, &mut out);
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Box::new(out.into_iter().map(Certified::exact))
    }

    fn atoms(&self) -> Certified<Vec<ZeroSumSequence>> {
        Certified::exact(self.atoms.clone())
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn render(&self, a: &ZeroSumSequence) -> String {
        if a.is_empty() {
            return "1".to_string();
        }
        a.terms
            .iter()
            .map(|&t| self.group.render_element(t as usize))
            .collect::<Vec<_>>()
            .join("·")
    }

    fn render_key(&self, key: &ZeroSumSequence) -> String {
        self.render(key)
    }

    fn rigid_factorizations_hint(&self, a: &ZeroSumSequence) -> Option<Certified<Vec<Vec<ZeroSumSequence>>>> {
        let mut out = BTreeSet::new();
        for p in self.partitions(a) {
            out.extend(orderings(&p));
        }
        Some(Certified::exact(out.into_iter().collect()))
    }

    fn permutable_factorizations_hint(&self, a: &ZeroSumSequence) -> Option<Certified<Vec<Vec<ZeroSumSequence>>>> {
        Some(Certified::exact(self.partitions(a)))
    }

    fn has_unique_factorization(&self, a: &ZeroSumSequence) -> bool {
        self.atom_set.contains(a)
    }
}

/// Catenary degree of B(G) over all zero-sum sequences of bounded length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCatenaryReport {
    pub group: String,
    pub davenport: usize,
    pub max_sequence_length: usize,
    /// Computed value; a lower bound for c(B(G)).
    pub catenary: SemigroupCatenaryReport,
    /// Value predicted by the small-group classification, if the group is on
    /// the list.
    pub classified: Option<String>,
}

pub fn block_catenary(
    g: &FiniteAbelianGroup,
    subset: Option<&[usize]>,
    max_len: Option<usize>,
    cap: u64,
) -> Result<BlockCatenaryReport> {
    let d = davenport(g, subset, cap)?;
    let max_len = max_len.unwrap_or(2 * d);
    let m = BlockMonoid::new(g.clone(), subset, max_len, cap)?;
    let catenary = semigroup_catenary(&m, DistanceKind::Permutable, Variant::Plain);
    Ok(BlockCatenaryReport {
        group: g.to_string(),
        davenport: d,
        max_sequence_length: max_len,
        catenary,
        classified: classify(g).map(|c| c.value_text()),
    })
}

/// Cases of the classification of catenary degrees of maximal orders by
/// their class group `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderClass {
    /// C trivial: R• is d_sim-factorial.
    Trivial,
    /// |C| = 2: c_d(R•) ≤ 2.
    AtMostTwo,
    Three,
    Four,
}

impl OrderClass {
    pub fn value_text(self) -> String {
        match self {
            OrderClass::Trivial => "d_sim-factorial (trivial class group)".into(),
            OrderClass::AtMostTwo => "|C| ≤ 2: c_d ≤ 2".into(),
            OrderClass::Three => "c_d = 3".into(),
            OrderClass::Four => "c_d = 4".into(),
        }
    }
}

pub fn classify(g: &FiniteAbelianGroup) -> Option<OrderClass> {
    let f = g.invariant_factors();
    match f.as_slice() {
        [] => Some(OrderClass::Trivial),
        [2] => Some(OrderClass::AtMostTwo),
        [3] | [2, 2] | [3, 3] => Some(OrderClass::Three),
        [4] | [2, 4] | [2, 2, 2] | [3, 3, 3] => Some(OrderClass::Four),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderBoundReport {
    pub group: String,
    /// `max(2, computed c(B(C)))`.
    pub bound: u32,
    pub computed_block_catenary: Option<u32>,
    pub classification: Option<OrderClass>,
    pub note: String,
    /// The computed value agrees with the classification (when both exist).
    pub consistent: Option<bool>,
}

/// Upper bound `c_d(R•) ≤ max{2, c(B(C))}` for a maximal order with class
/// group `C`.
pub fn maximal_order_bound(c: &FiniteAbelianGroup, cap: u64) -> Result<OrderBoundReport> {
    let class = classify(c);
    if c.order() == 1 {
        return Ok(OrderBoundReport {
            group: c.to_string(),
            bound: 2,
            computed_block_catenary: None,
            classification: class,
            note: "class group trivial: R• is d_sim-factorial and d_subsim-factorial".into(),
            consistent: None,
        });
    }
    let r = block_catenary(c, None, None, cap)?;
    let computed = match r.catenary.value {
        Degree::Finite(v) => v,
        Degree::Infinite => u32::MAX,
    };
    let bound = computed.max(2);
    let consistent = class.map(|cl| match cl {
        OrderClass::Trivial => true,
        OrderClass::AtMostTwo => bound <= 2,
        OrderClass::Three => bound == 3,
        OrderClass::Four => bound == 4,
    });
    let note = match class {
        Some(cl) => cl.value_text(),
        None => "group outside the classified small cases; bound from bounded computation only".into(),
    };
    Ok(OrderBoundReport {
        group: c.to_string(),
        bound,
        computed_block_catenary: Some(computed),
        classification: class,
        note,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catenary::catenary;
    use crate::factorization::{length_profile, permutable_factorizations};

    fn g(orders: &[u32]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(orders).unwrap()
    }

    #[test]
    fn c2_atoms() {
        let atoms = atoms_of_block_monoid(&g(&[2]), None, 64).unwrap();
        assert_eq!(
            atoms,
            vec![ZeroSumSequence::new(vec![0]), ZeroSumSequence::new(vec![1, 1])]
        );
    }

    #[test]
    fn c3_atom_lengths() {
        let atoms = atoms_of_block_monoid(&g(&[3]), None, 64).unwrap();
        let lengths: BTreeSet<usize> = atoms.iter().map(|a| a.len()).collect();
        assert_eq!(lengths, BTreeSet::from([1, 2, 3]));
        assert!(atoms.contains(&ZeroSumSequence::new(vec![1, 1, 1])));
        assert_eq!(atoms.len(), 4);
    }

    #[test]
    fn trivial_group() {
        let t = g(&[]);
        assert_eq!(
            atoms_of_block_monoid(&t, None, 64).unwrap(),
            vec![ZeroSumSequence::new(vec![0])]
        );
        assert_eq!(davenport(&t, None, 64).unwrap(), 1);
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            atoms_of_block_monoid(&g(&[65]), None, 64),
            Err(Error::GroupTooLarge { order: 65, cap: 64 })
        ));
    }

    #[test]
    fn atoms_are_minimal_zero_sum() {
        for orders in [&[4][..], &[2, 2], &[2, 4], &[3, 3], &[6]] {
            let grp = g(orders);
            let t = Table::new(&grp);
            for a in atoms_of_block_monoid(&grp, None, 64).unwrap() {
                assert_eq!(a.sum(&grp), 0);
                // no proper nonempty zero-sum sub-multiset
                let n = a.len();
                for mask in 1u32..(1 << n) - 1 {
                    let s = (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .fold(0, |acc, i| t.add(acc, a.terms[i] as usize));
                    assert_ne!(s, 0, "{a:?}");
                }
                assert!(a.len() as u64 <= grp.order());
            }
        }
    }

    #[test]
    fn long_sequences_have_zero_sum_subsequences() {
        // pigeonhole on partial sums: |S| ≥ |G| forces a zero-sum block
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for orders in [&[5][..], &[2, 2], &[2, 3], &[3, 3]] {
            let grp = g(orders);
            let n = grp.order() as usize;
            for _ in 0..200 {
                let seq: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
                let mut sums = vec![0usize];
                for &x in &seq {
                    sums.push(grp.add(*sums.last().unwrap(), x));
                }
                let distinct: BTreeSet<usize> = sums.iter().copied().collect();
                assert!(distinct.len() < sums.len());
            }
        }
    }

    #[test]
    fn small_davenport_constants() {
        for n in 1..=8 {
            assert_eq!(davenport(&g(&[n]), None, 64).unwrap(), n as usize);
        }
        assert_eq!(davenport(&g(&[2, 2]), None, 64).unwrap(), 3);
    }

    #[test]
    fn davenport_at_least_exponent() {
        for orders in [&[2, 4][..], &[3, 3], &[2, 6]] {
            let grp = g(orders);
            assert!(davenport(&grp, None, 64).unwrap() as u64 >= grp.exponent());
        }
    }

    #[test]
    fn c3_length_six_element() {
        let m = BlockMonoid::new(g(&[3]), None, 6, 64).unwrap();
        let s = ZeroSumSequence::new(vec![1, 1, 1, 2, 2, 2]);
        let l = length_profile(&m, &s).value;
        assert_eq!(l.lengths, BTreeSet::from([2, 3]));
        assert_eq!(catenary(&m, &s, DistanceKind::Permutable).value, Degree::Finite(3));
    }

    #[test]
    fn klein_group_element() {
        let m = BlockMonoid::new(g(&[2, 2]), None, 6, 64).unwrap();
        let u = m.sequence(&[&[1, 0], &[1, 0], &[0, 1], &[0, 1], &[1, 1], &[1, 1]]);
        let zp = permutable_factorizations(&m, &u);
        assert_eq!(zp.value.len(), 2);
        assert_eq!(catenary(&m, &u, DistanceKind::Permutable).value, Degree::Finite(3));
    }

    #[test]
    fn subset_restricts_support() {
        // G_P = {0, 1} in C3: only (0) and 1^3
        let atoms = atoms_of_block_monoid(&g(&[3]), Some(&[0, 1]), 64).unwrap();
        assert_eq!(
            atoms,
            vec![ZeroSumSequence::new(vec![0]), ZeroSumSequence::new(vec![1, 1, 1])]
        );
    }

    #[test]
    fn invariant_factors_normalize() {
        assert_eq!(g(&[2, 3]).invariant_factors(), vec![6]);
        assert_eq!(g(&[4, 2]).invariant_factors(), vec![2, 4]);
        assert_eq!(g(&[2, 2, 1]).invariant_factors(), vec![2, 2]);
        assert_eq!(classify(&g(&[2, 3])), None);
        assert_eq!(classify(&g(&[4])), Some(OrderClass::Four));
    }

    #[test]
    fn order_bounds() {
        let r = maximal_order_bound(&g(&[]), 64).unwrap();
        assert_eq!(r.bound, 2);
        assert_eq!(r.classification, Some(OrderClass::Trivial));
        let r = maximal_order_bound(&g(&[2]), 64).unwrap();
        assert_eq!(r.bound, 2);
        assert_eq!(r.classification, Some(OrderClass::AtMostTwo));
        assert_eq!(r.consistent, Some(true));
        let r = maximal_order_bound(&g(&[4]), 64).unwrap();
        assert_eq!(r.bound, 4);
        assert_eq!(r.consistent, Some(true));
    }

    #[test]
    fn orderings_of_multiset() {
        assert_eq!(orderings(&[1, 1, 2]).len(), 3);
        assert_eq!(orderings::<u8>(&[]).len(), 1);
    }
}
