//! Length, permutable and rigid distances between factorizations.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::{common_submultiset_len, rigid_factorizations, RigidFactorization};
use crate::semigroup::Semigroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceKind {
    Length,
    Permutable,
    Rigid,
}

impl DistanceKind {
    pub const ALL: [DistanceKind; 3] = [DistanceKind::Length, DistanceKind::Permutable, DistanceKind::Rigid];

    pub fn short_name(self) -> &'static str {
        match self {
            DistanceKind::Length => "len",
            DistanceKind::Permutable => "perm",
            DistanceKind::Rigid => "rigid",
        }
    }
}

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for DistanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "len" | "length" => Ok(DistanceKind::Length),
            "perm" | "p" | "permutable" => Ok(DistanceKind::Permutable),
            "rigid" | "star" | "*" => Ok(DistanceKind::Rigid),
            _ => Err(Error::InvalidElement(format!("unknown distance kind `{s}`"))),
        }
    }
}

/// A common block `z[start..start+len] == z'[start_prime..start_prime+len]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchedBlock {
    pub start: usize,
    pub start_prime: usize,
    pub len: usize,
}

/// A replaced stretch: `len` atoms of z against `len_prime` atoms of z'.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gap {
    pub start: usize,
    pub len: usize,
    pub start_prime: usize,
    pub len_prime: usize,
    pub cost: u32,
}

/// Witness for the rigid distance: z and z' cut into alternating gaps and
/// common blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Alignment {
    pub blocks: Vec<MatchedBlock>,
    pub gaps: Vec<Gap>,
    pub cost: u32,
}

pub fn length_distance(k: usize, l: usize) -> u32 {
    k.abs_diff(l) as u32
}

/// `max(k - n, l - n)` with `n` the size of the largest common sub-multiset.
pub fn permutable_distance<K: Ord + Clone>(a: &[K], b: &[K]) -> u32 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort();
    b.sort();
    permutable_distance_sorted(&a, &b)
}

pub fn permutable_distance_sorted<K: Ord>(a: &[K], b: &[K]) -> u32 {
    let n = common_submultiset_len(a, b);
    (a.len() - n).max(b.len() - n) as u32
}

#[derive(Clone, Copy)]
enum Step {
    Start,
    Match,
    Gap(usize, usize),
}

/// Minimum block alignment.
///
/// `best[i][j]` is the cheapest way to cut `z[..i]` and `z'[..j]` into
/// alternating gaps and common blocks such that the cut ends after a common
/// atom (or at the origin). A gap from `(i, j)` to `(i', j')` costs
/// `max(i' - i, j' - j)`; adjacent gaps never beat a single merged one, so
/// allowing them does not change the minimum.
pub fn rigid_distance<T: PartialEq>(z: &[T], zp: &[T]) -> Alignment {
    let (n, m) = (z.len(), zp.len());
    let w = m + 1;
    let mut best = vec![u32::MAX; (n + 1) * w];
    let mut how = vec![Step::Start; (n + 1) * w];
    best[0] = 0;
    for i in 0..=n {
        for j in 0..=m {
            let cur = best[i * w + j];
            if cur == u32::MAX {
                continue;
            }
            if i < n && j < m && z[i] == zp[j] {
                let t = (i + 1) * w + j + 1;
                if cur <= best[t] {
                    best[t] = cur;
                    how[t] = Step::Match;
                }
            }
            for i2 in i..=n {
                for j2 in j..=m {
                    if i2 == i && j2 == j {
                        continue;
                    }
                    let c = cur + (i2 - i).max(j2 - j) as u32;
                    let t = i2 * w + j2;
                    if c < best[t] {
                        best[t] = c;
                        how[t] = Step::Gap(i, j);
                    }
                }
            }
        }
    }
    // walk back
    let mut blocks: Vec<MatchedBlock> = Vec::new();
    let mut gaps = Vec::new();
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        match how[i * w + j] {
            Step::Match => {
                match blocks.last_mut() {
                    Some(b) if b.start == i && b.start_prime == j => {
                        b.start -= 1;
                        b.start_prime -= 1;
                        b.len += 1;
                    }
                    _ => blocks.push(MatchedBlock {
                        start: i - 1,
                        start_prime: j - 1,
                        len: 1,
                    }),
                }
                i -= 1;
                j -= 1;
            }
            Step::Gap(pi, pj) => {
                gaps.push(Gap {
                    start: pi,
                    len: i - pi,
                    start_prime: pj,
                    len_prime: j - pj,
                    cost: (i - pi).max(j - pj) as u32,
                });
                i = pi;
                j = pj;
            }
            Step::Start => unreachable!("origin reached early"),
        }
    }
    blocks.reverse();
    gaps.reverse();
    Alignment {
        blocks,
        gaps,
        cost: best[n * w + m],
    }
}

/// Exhaustive search over all decompositions into common blocks and gaps.
/// Exponential; only meant to cross-check [`rigid_distance`].
pub fn rigid_distance_oracle<T: PartialEq>(z: &[T], zp: &[T]) -> Result<u32> {
    if z.len() + zp.len() > 10 {
        return Err(Error::InstanceTooLarge(format!(
            "combined length {} exceeds 10",
            z.len() + zp.len()
        )));
    }
    fn go<T: PartialEq>(z: &[T], zp: &[T]) -> u32 {
        if z.is_empty() && zp.is_empty() {
            return 0;
        }
        let mut best = u32::MAX;
        // a common block of any length
        let mut k = 0;
        while k < z.len() && k < zp.len() && z[k] == zp[k] {
            k += 1;
            best = best.min(go(&z[k..], &zp[k..]));
        }
        // a gap, replacing p atoms of z by q atoms of z'
        for p in 0..=z.len() {
            for q in 0..=zp.len() {
                if p == 0 && q == 0 {
                    continue;
                }
                let c = p.max(q) as u32;
                if c >= best {
                    continue;
                }
                best = best.min(c + go(&z[p..], &zp[q..]));
            }
        }
        best
    }
    Ok(go(z, zp))
}

/// Distance between two rigid factorizations.
pub fn distance<S: Semigroup>(
    h: &S,
    kind: DistanceKind,
    z: &RigidFactorization<S::Elem>,
    zp: &RigidFactorization<S::Elem>,
) -> u32 {
    sequence_distance(h, kind, &z.atoms, &zp.atoms)
}

pub fn sequence_distance<S: Semigroup>(h: &S, kind: DistanceKind, z: &[S::Elem], zp: &[S::Elem]) -> u32 {
    match kind {
        DistanceKind::Length => length_distance(z.len(), zp.len()),
        DistanceKind::Permutable => {
            let a: Vec<S::Key> = z.iter().map(|u| h.associate_key(u)).collect();
            let b: Vec<S::Key> = zp.iter().map(|u| h.associate_key(u)).collect();
            permutable_distance(&a, &b)
        }
        DistanceKind::Rigid => rigid_distance(z, zp).cost,
    }
}

/// Outcome of [`verify_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub kind: DistanceKind,
    pub elements: usize,
    pub pairs: usize,
    pub triples: usize,
    /// First violation found, if any.
    pub violation: Option<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks (D1)–(D5) on all factorization pairs and triples of the sample
/// elements; translation invariance is tested by prefixing and suffixing
/// each extension sequence. Elements with more than `max_factorizations`
/// rigid factorizations are checked on the first ones only.
pub fn verify_axioms<S: Semigroup>(
    h: &S,
    kind: DistanceKind,
    samples: &[S::Elem],
    extensions: &[Vec<S::Elem>],
    max_factorizations: usize,
) -> AxiomReport {
    let mut report = AxiomReport {
        kind,
        elements: 0,
        pairs: 0,
        triples: 0,
        violation: None,
    };
    for a in samples {
        report.elements += 1;
        let mut zs = rigid_factorizations(h, a).value;
        zs.truncate(max_factorizations);
        let d = |x: &[S::Elem], y: &[S::Elem]| sequence_distance(h, kind, x, y);
        let show = |x: &[S::Elem]| x.iter().map(|u| h.render(u)).collect::<Vec<_>>().join("·");
        for z in &zs {
            if d(&z.atoms, &z.atoms) != 0 {
                report.violation = Some(format!("(D1) fails at {}", show(&z.atoms)));
                return report;
            }
        }
        for (i, z) in zs.iter().enumerate() {
            for zp in &zs[i + 1..] {
                report.pairs += 1;
                let v = d(&z.atoms, &zp.atoms);
                if v != d(&zp.atoms, &z.atoms) {
                    report.violation = Some(format!("(D2) fails at {} / {}", show(&z.atoms), show(&zp.atoms)));
                    return report;
                }
                let (k, l) = (z.len(), zp.len());
                if (v as usize) < k.abs_diff(l) || v as usize > k.max(l).max(1) {
                    report.violation = Some(format!("(D5) fails at {} / {}", show(&z.atoms), show(&zp.atoms)));
                    return report;
                }
                for x in extensions {
                    let pre_z: Vec<S::Elem> = x.iter().chain(&z.atoms).cloned().collect();
                    let pre_zp: Vec<S::Elem> = x.iter().chain(&zp.atoms).cloned().collect();
                    let suf_z: Vec<S::Elem> = z.atoms.iter().chain(x).cloned().collect();
                    let suf_zp: Vec<S::Elem> = zp.atoms.iter().chain(x).cloned().collect();
                    if d(&pre_z, &pre_zp) != v || d(&suf_z, &suf_zp) != v {
                        report.violation = Some(format!(
                            "(D4) fails at {} / {} with {}",
                            show(&z.atoms),
                            show(&zp.atoms),
                            show(x)
                        ));
                        return report;
                    }
                }
            }
        }
        for z1 in &zs {
            for z2 in &zs {
                for z3 in &zs {
                    report.triples += 1;
                    if d(&z1.atoms, &z3.atoms) > d(&z1.atoms, &z2.atoms) + d(&z2.atoms, &z3.atoms) {
                        report.violation = Some(format!(
                            "(D3) fails at {} / {} / {}",
                            show(&z1.atoms),
                            show(&z2.atoms),
                            show(&z3.atoms)
                        ));
                        return report;
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn aba_versus_b() {
        let z = ['a', 'b', 'a'];
        let zp = ['b'];
        let al = rigid_distance(&z, &zp);
        assert_eq!(al.cost, 2);
        assert_eq!(rigid_distance_oracle(&z, &zp).unwrap(), 2);
        // the witness keeps b as the common block
        assert_eq!(
            al.blocks,
            vec![MatchedBlock {
                start: 1,
                start_prime: 0,
                len: 1
            }]
        );
    }

    #[test]
    fn a2b2_versus_b2a2() {
        let z = ['a', 'a', 'b', 'b'];
        let zp = ['b', 'b', 'a', 'a'];
        assert_eq!(rigid_distance(&z, &zp).cost, 4);
        assert_eq!(rigid_distance_oracle(&z, &zp).unwrap(), 4);
    }

    #[test]
    fn permutable_examples() {
        assert_eq!(permutable_distance(&['a', 'b', 'c'], &['c', 'b']), 1);
        assert_eq!(permutable_distance(&['a', 'a', 'b'], &['b', 'a', 'a']), 0);
        assert_eq!(permutable_distance::<char>(&[], &[]), 0);
    }

    #[test]
    fn oracle_refuses_large_instances() {
        let z = [0u8; 6];
        assert!(matches!(rigid_distance_oracle(&z, &z), Err(Error::InstanceTooLarge(_))));
    }

    #[test]
    fn identical_sequences() {
        let z = [1, 2, 3, 1];
        let al = rigid_distance(&z, &z);
        assert_eq!(al.cost, 0);
        assert_eq!(
            al.blocks,
            vec![MatchedBlock {
                start: 0,
                start_prime: 0,
                len: 4
            }]
        );
        assert!(al.gaps.is_empty());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("perm".parse::<DistanceKind>().unwrap(), DistanceKind::Permutable);
        assert!("edit".parse::<DistanceKind>().is_err());
    }

    fn seq() -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(0u8..3, 0..6)
    }

    proptest! {
        #[test]
        fn dp_matches_oracle(z in seq(), zp in seq()) {
            prop_assume!(z.len() + zp.len() <= 10);
            prop_assert_eq!(rigid_distance(&z, &zp).cost, rigid_distance_oracle(&z, &zp).unwrap());
        }

        #[test]
        fn alignment_witness_is_consistent(z in seq(), zp in seq()) {
            let al = rigid_distance(&z, &zp);
            let total: u32 = al.gaps.iter().map(|g| g.cost).sum();
            prop_assert_eq!(total, al.cost);
            for b in &al.blocks {
                prop_assert_eq!(&z[b.start..b.start + b.len], &zp[b.start_prime..b.start_prime + b.len]);
            }
            let covered: usize = al.blocks.iter().map(|b| b.len).sum::<usize>()
                + al.gaps.iter().map(|g| g.len).sum::<usize>();
            prop_assert_eq!(covered, z.len());
        }

        #[test]
        fn chain_len_perm_rigid(z in seq(), zp in seq()) {
            let dl = length_distance(z.len(), zp.len());
            let dp = permutable_distance(&z, &zp);
            let ds = rigid_distance(&z, &zp).cost;
            prop_assert!(dl <= dp && dp <= ds);
            prop_assert!(ds as usize <= z.len().max(zp.len()).max(1));
            prop_assert_eq!(ds == 0, z == zp);
        }

        #[test]
        fn translation_invariance(z in seq(), zp in seq(), x in seq()) {
            let d = rigid_distance(&z, &zp).cost;
            let pre = |s: &[u8]| x.iter().chain(s).copied().collect::<Vec<_>>();
            let suf = |s: &[u8]| s.iter().chain(&x).copied().collect::<Vec<_>>();
            prop_assert_eq!(rigid_distance(&pre(&z), &pre(&zp)).cost, d);
            prop_assert_eq!(rigid_distance(&suf(&z), &suf(&zp)).cost, d);
            let p = permutable_distance(&z, &zp);
            prop_assert_eq!(permutable_distance(&pre(&z), &pre(&zp)), p);
        }

        #[test]
        fn triangle_inequality(a in seq(), b in seq(), c in seq()) {
            let d = |x: &[u8], y: &[u8]| rigid_distance(x, y).cost;
            prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
            let p = |x: &[u8], y: &[u8]| permutable_distance(x, y);
            prop_assert!(p(&a, &c) <= p(&a, &b) + p(&b, &c));
        }
    }
}
