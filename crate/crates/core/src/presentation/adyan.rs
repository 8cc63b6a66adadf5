use super::Presentation;

/// Left and right graphs of a presentation. If both are forests the
/// semigroup embeds into a group and is in particular cancellative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdyanReport {
    /// One edge per relation: first letters of the two sides.
    pub left_graph: Vec<(u8, u8)>,
    /// One edge per relation: last letters of the two sides.
    pub right_graph: Vec<(u8, u8)>,
    pub left_is_forest: bool,
    pub right_is_forest: bool,
    pub is_adyan: bool,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// A multigraph is a forest iff no edge closes a cycle; loops and parallel
/// edges count as cycles.
fn is_forest(vertices: usize, edges: &[(u8, u8)]) -> bool {
    let mut parent: Vec<usize> = (0..vertices).collect();
    for &(u, v) in edges {
        let (ru, rv) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
        if ru == rv {
            return false;
        }
        parent[ru] = rv;
    }
    true
}

pub fn check_adyan(p: &Presentation) -> AdyanReport {
    let left_graph: Vec<(u8, u8)> = p.relations.iter().map(|r| (r.lhs.0[0], r.rhs.0[0])).collect();
    let right_graph: Vec<(u8, u8)> = p
        .relations
        .iter()
        .map(|r| (*r.lhs.0.last().unwrap(), *r.rhs.0.last().unwrap()))
        .collect();
    let n = p.generators.len();
    let left_is_forest = is_forest(n, &left_graph);
    let right_is_forest = is_forest(n, &right_graph);
    AdyanReport {
        left_graph,
        right_graph,
        left_is_forest,
        right_is_forest,
        is_adyan: left_is_forest && right_is_forest,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aba_equals_b() {
        let p = Presentation::new(&["a", "b"], &[("a b a", "b")]).unwrap();
        let r = check_adyan(&p);
        assert_eq!(r.left_graph, vec![(0, 1)]);
        assert_eq!(r.right_graph, vec![(0, 1)]);
        assert!(r.is_adyan);
    }

    #[test]
    fn omega_differs_example() {
        let p = Presentation::new(&["a", "b", "c", "d", "e"], &[("a b", "c d"), ("c e d e", "b a")]).unwrap();
        assert!(check_adyan(&p).is_adyan);
    }

    #[test]
    fn free_monoid() {
        let p = Presentation::new(&["a", "b"], &[]).unwrap();
        assert!(check_adyan(&p).is_adyan);
    }

    #[test]
    fn parallel_edges_and_loops_are_cycles() {
        let p = Presentation::new(&["a", "b"], &[("a b", "b a"), ("a a b", "b a a")]).unwrap();
        assert!(!check_adyan(&p).is_adyan);
        let q = Presentation::new(&["a", "b"], &[("a b", "a a")]).unwrap();
        assert!(!check_adyan(&q).left_is_forest);
    }
}
