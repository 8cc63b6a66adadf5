//! Catenary degrees: plain, equal, adjacent, monotone and in permutable
//! fibers of a map.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::distance::{length_distance, permutable_distance_sorted, rigid_distance, DistanceKind};
use crate::factorization::{permutable_factorizations, rigid_factorizations, LengthSet};
use crate::semigroup::{Certified, Semigroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Plain,
    Equal,
    Adjacent,
    Monotone,
    InFibers,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::Equal => "equal",
            Variant::Adjacent => "adjacent",
            Variant::Monotone => "monotone",
            Variant::InFibers => "in-fibers",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "plain" => Ok(Variant::Plain),
            "equal" | "eq" => Ok(Variant::Equal),
            "adjacent" | "adj" => Ok(Variant::Adjacent),
            "monotone" | "mon" => Ok(Variant::Monotone),
            "in-fibers" | "fibers" => Ok(Variant::InFibers),
            _ => Err(crate::Error::InvalidElement(format!("unknown catenary variant `{s}`"))),
        }
    }
}

/// A catenary degree: a natural number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    Finite(u32),
    Infinite,
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(v) => Some(v),
            Degree::Infinite => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(v) => write!(f, "{v}"),
            Degree::Infinite => f.write_str("infinity"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Degree::Finite(v) => s.serialize_u32(*v),
            Degree::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// Factorizations `z_0, …, z_k` of one element with consecutive distances at
/// most `bound`. Atoms are rendered through the handle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainWitness {
    pub steps: Vec<Vec<String>>,
    pub distances: Vec<u32>,
    pub bound: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatenaryReport {
    pub value: Degree,
    pub kind: DistanceKind,
    pub variant: Variant,
    /// Chain between the worst pair, realizing the value.
    pub witness: Option<ChainWitness>,
    /// A pair that cannot be joined by a chain with smaller steps.
    pub blocking_pair: Option<(Vec<String>, Vec<String>)>,
    pub factorizations: usize,
    pub exact: bool,
}

/// Nodes over which chains run, with their distance matrix.
struct Graph {
    rendered: Vec<Vec<String>>,
    lengths: Vec<usize>,
    dist: Vec<u32>,
    n: usize,
    exact: bool,
}

impl Graph {
    fn d(&self, i: usize, j: usize) -> u32 {
        self.dist[i * self.n + j]
    }

    fn build<T>(
        items: Vec<T>,
        exact: bool,
        len: impl Fn(&T) -> usize,
        render: impl Fn(&T) -> Vec<String>,
        d: impl Fn(&T, &T) -> u32,
    ) -> Graph {
        let n = items.len();
        let mut dist = vec![0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = d(&items[i], &items[j]);
                dist[i * n + j] = v;
                dist[j * n + i] = v;
            }
        }
        Graph {
            rendered: items.iter().map(&render).collect(),
            lengths: items.iter().map(&len).collect(),
            dist,
            n,
            exact,
        }
    }

    fn chain(&self, path: &[usize]) -> ChainWitness {
        let distances: Vec<u32> = path.windows(2).map(|w| self.d(w[0], w[1])).collect();
        ChainWitness {
            steps: path.iter().map(|&i| self.rendered[i].clone()).collect(),
            bound: distances.iter().copied().max().unwrap_or(0),
            distances,
        }
    }
}

fn graph<S: Semigroup>(h: &S, a: &S::Elem, kind: DistanceKind) -> Graph {
    match kind {
        DistanceKind::Rigid => {
            let zs = rigid_factorizations(h, a);
            Graph::build(
                zs.value,
                zs.exact,
                |z| z.len(),
                |z| z.atoms.iter().map(|u| h.render(u)).collect(),
                |x, y| rigid_distance(&x.atoms, &y.atoms).cost,
            )
        }
        // both distances factor through permutable classes
        DistanceKind::Permutable | DistanceKind::Length => {
            let zs = permutable_factorizations(h, a);
            Graph::build(
                zs.value,
                zs.exact,
                |z| z.len(),
                |z| z.classes.iter().map(|k| h.render_key(k)).collect(),
                |x, y| match kind {
                    DistanceKind::Length => length_distance(x.len(), y.len()),
                    _ => permutable_distance_sorted(&x.classes, &y.classes),
                },
            )
        }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

struct Bottleneck {
    value: u32,
    worst: Option<(usize, usize)>,
    path: Vec<usize>,
}

/// Minimum-bottleneck connectivity of the nodes `members` via a Kruskal
/// spanning tree; the worst pair is the first pair (in index order) whose
/// tree path has the maximal edge.
fn bottleneck(g: &Graph, members: &[usize]) -> Bottleneck {
    let m = members.len();
    if m <= 1 {
        return Bottleneck {
            value: 0,
            worst: None,
            path: members.to_vec(),
        };
    }
    let mut edges: Vec<(u32, usize, usize)> = Vec::with_capacity(m * (m - 1) / 2);
    for a in 0..m {
        for b in a + 1..m {
            edges.push((g.d(members[a], members[b]), a, b));
        }
    }
    edges.sort_unstable();
    let mut parent: Vec<usize> = (0..m).collect();
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); m];
    let mut used = 0;
    let mut value = 0;
    for (w, a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            adj[a].push((b, w));
            adj[b].push((a, w));
            value = value.max(w);
            used += 1;
            if used == m - 1 {
                break;
            }
        }
    }
    // first pair whose tree path carries the maximal edge
    for src in 0..m {
        let mut prev = vec![usize::MAX; m];
        let mut maxw = vec![0u32; m];
        let mut stack = vec![src];
        prev[src] = src;
        while let Some(x) = stack.pop() {
            for &(y, w) in &adj[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    maxw[y] = maxw[x].max(w);
                    stack.push(y);
                }
            }
        }
        if let Some(dst) = (src + 1..m).find(|&t| maxw[t] == value) {
            let mut path = vec![dst];
            let mut cur = dst;
            while cur != src {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Bottleneck {
                value,
                worst: Some((members[src], members[dst])),
                path: path.into_iter().map(|i| members[i]).collect(),
            };
        }
    }
    unreachable!("the maximal tree edge lies on some tree path")
}

fn report(
    g: &Graph,
    kind: DistanceKind,
    variant: Variant,
    value: u32,
    path: Option<Vec<usize>>,
    blocking: Option<(usize, usize)>,
) -> CatenaryReport {
    CatenaryReport {
        value: Degree::Finite(value),
        kind,
        variant,
        witness: path.map(|p| g.chain(&p)),
        blocking_pair: blocking.map(|(i, j)| (g.rendered[i].clone(), g.rendered[j].clone())),
        factorizations: g.n,
        exact: g.exact,
    }
}

fn plain(g: &Graph, kind: DistanceKind) -> CatenaryReport {
    let all: Vec<usize> = (0..g.n).collect();
    let b = bottleneck(g, &all);
    report(g, kind, Variant::Plain, b.value, Some(b.path), b.worst)
}

fn by_length(g: &Graph) -> BTreeMap<usize, Vec<usize>> {
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..g.n {
        classes.entry(g.lengths[i]).or_default().push(i);
    }
    classes
}

fn equal(g: &Graph, kind: DistanceKind) -> CatenaryReport {
    let mut best: Option<Bottleneck> = None;
    for members in by_length(g).values() {
        let b = bottleneck(g, members);
        if best.as_ref().is_none_or(|x| b.value > x.value) {
            best = Some(b);
        }
    }
    match best {
        Some(b) => report(g, kind, Variant::Equal, b.value, Some(b.path), b.worst),
        None => report(g, kind, Variant::Equal, 0, None, None),
    }
}

fn adjacent(g: &Graph, kind: DistanceKind) -> CatenaryReport {
    let classes = by_length(g);
    let keys: Vec<usize> = classes.keys().copied().collect();
    let mut best: Option<(u32, usize, usize)> = None;
    for w in keys.windows(2) {
        let mut dkl: Option<(u32, usize, usize)> = None;
        for &i in &classes[&w[0]] {
            for &j in &classes[&w[1]] {
                let v = g.d(i, j);
                if dkl.is_none_or(|x| v < x.0) {
                    dkl = Some((v, i, j));
                }
            }
        }
        let dkl = dkl.expect("length classes are nonempty");
        if best.is_none_or(|x| dkl.0 > x.0) {
            best = Some(dkl);
        }
    }
    match best {
        Some((v, i, j)) => report(g, kind, Variant::Adjacent, v, Some(vec![i, j]), Some((i, j))),
        None => report(g, kind, Variant::Adjacent, 0, None, None),
    }
}

fn monotone(g: &Graph, kind: DistanceKind) -> CatenaryReport {
    let e = equal(g, kind);
    let a = adjacent(g, kind);
    let mut r = if a.value > e.value { a } else { e };
    r.variant = Variant::Monotone;
    r
}

/// Plain catenary degree c_d(a).
pub fn catenary<S: Semigroup>(h: &S, a: &S::Elem, kind: DistanceKind) -> CatenaryReport {
    plain(&graph(h, a, kind), kind)
}

/// Largest bottleneck within a single length class.
pub fn equal_catenary<S: Semigroup>(h: &S, a: &S::Elem, kind: DistanceKind) -> CatenaryReport {
    equal(&graph(h, a, kind), kind)
}

/// Largest `d_{k,l}(a)` over adjacent lengths `k < l` in L(a).
pub fn adjacent_catenary<S: Semigroup>(h: &S, a: &S::Elem, kind: DistanceKind) -> CatenaryReport {
    adjacent(&graph(h, a, kind), kind)
}

/// `max(c_eq, c_adj)`.
pub fn monotone_catenary<S: Semigroup>(h: &S, a: &S::Elem, kind: DistanceKind) -> CatenaryReport {
    monotone(&graph(h, a, kind), kind)
}

pub fn catenary_variant<S: Semigroup>(h: &S, a: &S::Elem, kind: DistanceKind, variant: Variant) -> CatenaryReport {
    let g = graph(h, a, kind);
    match variant {
        Variant::Plain => plain(&g, kind),
        Variant::Equal => equal(&g, kind),
        Variant::Adjacent => adjacent(&g, kind),
        Variant::Monotone => monotone(&g, kind),
        Variant::InFibers => catenary_in_fibers(h, a, kind, |u| h.associate_key(u)),
    }
}

/// Monotone catenary degree by direct search: bottleneck paths in the
/// directed graph whose edges never decrease length (a Floyd–Warshall
/// minimax closure). Cross-checks the `max(c_eq, c_adj)` formula.
pub fn monotone_catenary_direct<S: Semigroup>(h: &S, a: &S::Elem, kind: DistanceKind) -> u32 {
    let g = graph(h, a, kind);
    let n = g.n;
    let mut b = vec![u32::MAX; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                b[i * n + j] = 0;
            } else if g.lengths[i] <= g.lengths[j] {
                b[i * n + j] = g.d(i, j);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = b[i * n + k].max(b[k * n + j]);
                if via < b[i * n + j] {
                    b[i * n + j] = via;
                }
            }
        }
    }
    let mut worst = 0;
    for i in 0..n {
        for j in 0..n {
            if g.lengths[i] <= g.lengths[j] {
                worst = worst.max(b[i * n + j]);
            }
        }
    }
    worst
}

/// c_d(a, φ): bottleneck connectivity inside each permutable fiber, where
/// two rigid factorizations share a fiber iff their images under `phi`
/// (atom by atom, compared as multisets of target classes) agree.
pub fn catenary_in_fibers<S: Semigroup, K: Ord + Clone>(
    h: &S,
    a: &S::Elem,
    kind: DistanceKind,
    phi: impl Fn(&S::Elem) -> K,
) -> CatenaryReport {
    let zs = rigid_factorizations(h, a);
    let fibers_of: Vec<Vec<K>> = zs
        .value
        .iter()
        .map(|z| {
            let mut v: Vec<K> = z.atoms.iter().map(&phi).collect();
            v.sort();
            v
        })
        .collect();
    let g = Graph::build(
        zs.value,
        zs.exact,
        |z| z.len(),
        |z| z.atoms.iter().map(|u| h.render(u)).collect(),
        |x, y| crate::distance::sequence_distance(h, kind, &x.atoms, &y.atoms),
    );
    let mut fibers: BTreeMap<&Vec<K>, Vec<usize>> = BTreeMap::new();
    for (i, f) in fibers_of.iter().enumerate() {
        fibers.entry(f).or_default().push(i);
    }
    let mut best: Option<Bottleneck> = None;
    for members in fibers.values() {
        let b = bottleneck(&g, members);
        if best.as_ref().is_none_or(|x| b.value > x.value) {
            best = Some(b);
        }
    }
    match best {
        Some(b) => report(&g, kind, Variant::InFibers, b.value, Some(b.path), b.worst),
        None => report(&g, kind, Variant::InFibers, 0, None, None),
    }
}

/// Supremum of a per-element catenary variant over the explored scope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemigroupCatenaryReport {
    /// Lower bound for the supremum over the whole semigroup.
    pub value: Degree,
    pub kind: DistanceKind,
    pub variant: Variant,
    /// Element attaining the value, with its report.
    pub attained_at: Option<(String, CatenaryReport)>,
    pub elements: usize,
    /// Every per-element search was complete.
    pub scope_exact: bool,
}

pub fn semigroup_catenary<S: Semigroup>(h: &S, kind: DistanceKind, variant: Variant) -> SemigroupCatenaryReport {
    let mut out = SemigroupCatenaryReport {
        value: Degree::Finite(0),
        kind,
        variant,
        attained_at: None,
        elements: 0,
        scope_exact: true,
    };
    for e in h.elements() {
        if h.is_unit(&e.value) {
            continue;
        }
        out.elements += 1;
        let r = catenary_variant(h, &e.value, kind, variant);
        out.scope_exact &= e.exact && r.exact;
        if out.attained_at.is_none() || r.value > out.value {
            out.value = r.value;
            out.attained_at = Some((h.render(&e.value), r));
        }
    }
    out
}

/// Lemma-style sanity relations between the catenary degree and the set of
/// lengths of one element: `sup Δ(L) ≤ c ≤ c_mon ≤ sup L`, `c = 0` iff a
/// single class (not for d_len), and `c ≤ 1` forces L to be an interval.
pub fn check_length_relations<S: Semigroup>(h: &S, a: &S::Elem, kind: DistanceKind) -> Certified<Option<String>> {
    let g = graph(h, a, kind);
    let c = plain(&g, kind).value.finite().unwrap_or(u32::MAX);
    let cm = monotone(&g, kind).value.finite().unwrap_or(u32::MAX);
    let l = LengthSet::from_lengths(g.lengths.iter().copied());
    let sup_delta = l.delta.iter().copied().max().unwrap_or(0) as u32;
    let sup_l = l.max().unwrap_or(0) as u32;
    let problem = if sup_delta > c {
        Some(format!("sup Δ = {sup_delta} exceeds c = {c}"))
    } else if c > cm {
        Some(format!("c = {c} exceeds c_mon = {cm}"))
    } else if g.n > 1 && cm > sup_l {
        Some(format!("c_mon = {cm} exceeds sup L = {sup_l}"))
    } else if kind != DistanceKind::Length && (c == 0) != (g.n <= 1) {
        // d_len vanishes between distinct factorizations of equal length
        Some(format!("c = {c} with {} classes", g.n))
    } else if c <= 1 && l.delta.iter().any(|&d| d > 1) {
        Some("c ≤ 1 but L is not an interval".to_string())
    } else {
        None
    };
    Certified::new(problem, g.exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{ExplorationBudget, Presentation, PresentedSemigroup};

    fn handle(gens: &[&str], rels: &[(&str, &str)], len: usize) -> PresentedSemigroup {
        PresentedSemigroup::with_budget(
            Presentation::new(gens, rels).unwrap(),
            ExplorationBudget::new(len, 100_000).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn t_abc() {
        let h = handle(&["a", "b", "c"], &[("a b c", "c b")], 12);
        let abc = h.word("a b c").unwrap();
        let p = DistanceKind::Permutable;
        assert_eq!(catenary(&h, &abc, p).value, Degree::Finite(1));
        assert_eq!(equal_catenary(&h, &abc, p).value, Degree::Finite(0));
        assert_eq!(adjacent_catenary(&h, &abc, p).value, Degree::Finite(1));
        assert_eq!(monotone_catenary(&h, &abc, p).value, Degree::Finite(1));
        let r = catenary(&h, &abc, p);
        assert!(r.exact);
        assert_eq!(r.witness.unwrap().steps.len(), 2);
    }

    #[test]
    fn a2b2_commutes_permutably_only() {
        let h = handle(&["a", "b"], &[("a a b b", "b b a a")], 8);
        let w = h.word("a a b b").unwrap();
        assert_eq!(catenary(&h, &w, DistanceKind::Permutable).value, Degree::Finite(0));
        let r = catenary(&h, &w, DistanceKind::Rigid);
        assert_eq!(r.value, Degree::Finite(4));
        assert_eq!(r.witness.unwrap().bound, 4);
    }

    #[test]
    fn ab_baa_example() {
        // n = 4, m = 2: c_p(a^2 b) = n - 2
        let h = handle(&["a", "b"], &[("a b", "b a a a")], 12);
        let w = h.word("a a b").unwrap();
        assert_eq!(catenary(&h, &w, DistanceKind::Permutable).value, Degree::Finite(2));
    }

    #[test]
    fn atom_is_zero_everywhere() {
        let h = handle(&["a", "b", "c"], &[("a b c", "c b")], 12);
        let a = h.word("a").unwrap();
        for kind in DistanceKind::ALL {
            for v in [
                Variant::Plain,
                Variant::Equal,
                Variant::Adjacent,
                Variant::Monotone,
                Variant::InFibers,
            ] {
                assert_eq!(catenary_variant(&h, &a, kind, v).value, Degree::Finite(0));
            }
        }
    }

    #[test]
    fn direct_monotone_matches_formula() {
        let h = handle(&["a", "b"], &[("a b", "b a a")], 10);
        for e in h.enumerate_elements().take(300) {
            for kind in DistanceKind::ALL {
                let f = monotone_catenary(&h, &e.value, kind).value.finite().unwrap();
                assert_eq!(f, monotone_catenary_direct(&h, &e.value, kind), "{:?}", e.value);
            }
        }
    }

    #[test]
    fn free_monoid_semigroup_catenary_is_zero() {
        let h = handle(&["a", "b"], &[], 4);
        let r = semigroup_catenary(&h, DistanceKind::Rigid, Variant::Plain);
        assert_eq!(r.value, Degree::Finite(0));
        assert_eq!(r.elements, 2 + 4 + 8 + 16);
        assert!(r.scope_exact);
    }

    #[test]
    fn length_relations_hold_on_t() {
        let h = handle(&["a", "b", "c"], &[("a b c", "c b")], 9);
        for e in h.enumerate_elements().take(500) {
            for kind in DistanceKind::ALL {
                assert_eq!(check_length_relations(&h, &e.value, kind).value, None);
            }
        }
    }
}
