use factorum_core::distance::{length_distance, permutable_distance, rigid_distance, rigid_distance_oracle};
use factorum_core::factorization::{length_profile, rigid_factorizations, rigid_factorizations_by_divisors};
use factorum_core::matrix::{delta_map, snf, tri_is_atom, IntMatrix, TriAtom};
use factorum_core::zero_sum::{atoms_of_block_monoid, davenport, FiniteAbelianGroup, DEFAULT_GROUP_CAP};
use factorum_core::{ExplorationBudget, Presentation, PresentedSemigroup, Semigroup, Word};
use proptest::prelude::*;

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn braid() -> PresentedSemigroup {
    let p = Presentation::new(&["a", "b"], &[("a b a", "b a b")]).unwrap();
    PresentedSemigroup::with_budget(p, ExplorationBudget::new(12, 100_000).unwrap())
        .unwrap()
        .with_enumeration_length(5)
}

fn tri(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-6i64..=6, n * n).prop_map(move |mut e| {
        for i in 0..n {
            for j in 0..i {
                e[i * n + j] = 0;
            }
            if e[i * n + i] == 0 {
                e[i * n + i] = 1;
            }
        }
        IntMatrix::new(n, e).unwrap()
    })
}

fn full(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-5i64..=5, n * n)
        .prop_map(move |e| IntMatrix::new(n, e).unwrap())
        .prop_filter("singular", |m| m.det() != 0)
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..2, 1..=max).prop_map(Word)
}

proptest! {
    #[test]
    fn delta_is_multiplicative(a in tri(3), b in tri(3)) {
        let ab = a.mul(&b);
        let expected: Vec<u64> = delta_map(&a).iter().zip(delta_map(&b)).map(|(x, y)| x * y).collect();
        prop_assert_eq!(delta_map(&ab), expected);
    }

    // a triangular matrix is an atom exactly when |det| is prime
    #[test]
    fn tri_atom_iff_prime_det(a in tri(3)) {
        let atom = matches!(tri_is_atom(&a).unwrap(), TriAtom::Yes(_));
        prop_assert_eq!(atom, is_prime(a.abs_det()));
    }

    #[test]
    fn snf_is_a_certificate(a in full(3)) {
        let r = snf(&a).unwrap();
        prop_assert_eq!(r.u.mul(&r.c).mul(&r.v), a.clone());
        prop_assert_eq!(r.u.abs_det(), 1);
        prop_assert_eq!(r.v.abs_det(), 1);
        let d = r.invariant_factors();
        prop_assert!(d.iter().all(|&x| x > 0));
        for w in d.windows(2) {
            prop_assert_eq!(w[0] % w[1], 0);
        }
        prop_assert_eq!(d.iter().map(|&x| x as u64).product::<u64>(), a.abs_det());
    }

    #[test]
    fn distances_are_nested(z in prop::collection::vec(0u8..3, 0..6), zp in prop::collection::vec(0u8..3, 0..6)) {
        let dl = length_distance(z.len(), zp.len());
        let dp = permutable_distance(&z, &zp);
        let dr = rigid_distance(&z, &zp).cost;
        prop_assert!(dl <= dp, "d_len {} > d_p {}", dl, dp);
        prop_assert!(dp <= dr, "d_p {} > d* {}", dp, dr);
        if z.len() + zp.len() <= 10 {
            prop_assert_eq!(dr, rigid_distance_oracle(&z, &zp).unwrap());
        }
    }

    #[test]
    fn permutable_triangle_inequality(
        x in prop::collection::vec(0u8..3, 0..6),
        y in prop::collection::vec(0u8..3, 0..6),
        z in prop::collection::vec(0u8..3, 0..6),
    ) {
        prop_assert!(permutable_distance(&x, &z) <= permutable_distance(&x, &y) + permutable_distance(&y, &z));
    }

    #[test]
    fn braid_product_is_associative(x in word(3), y in word(3), z in word(3)) {
        let h = braid();
        let left = h.mul(&h.mul(&x, &y).value, &z);
        let right = h.mul(&x, &h.mul(&y, &z).value);
        prop_assert!(left.exact && right.exact);
        prop_assert_eq!(left.value, right.value);
    }

    // two routes to Z*(a): members of the congruence ball, and recursion over left divisors
    #[test]
    fn ball_and_divisor_factorizations_agree(w in word(6)) {
        let h = braid();
        let a = h.canonical(&w).value;
        let from_ball: Vec<Vec<Word>> = h
            .factorizations_from_ball(&a)
            .value
            .into_iter()
            .map(|f| f.into_iter().map(Word::letter).collect())
            .collect();
        let by_divisors = rigid_factorizations_by_divisors(&h, &a);
        prop_assert!(by_divisors.exact);
        let mut expected = by_divisors.value;
        expected.sort();
        let mut got = from_ball;
        got.sort();
        prop_assert_eq!(got, expected);
    }

    // aba = bab is length preserving, so L(a) = {|a|}
    #[test]
    fn braid_lengths_are_word_lengths(w in word(7)) {
        let h = braid();
        let l = length_profile(&h, &h.canonical(&w).value);
        prop_assert_eq!(l.value.min(), Some(w.len()));
        prop_assert_eq!(l.value.max(), Some(w.len()));
    }
}

// Olson: D(C_m ⊕ C_n) = m + n − 1 for m | n
#[test]
fn davenport_rank_two() {
    for orders in [&[2, 2][..], &[2, 4], &[3, 3], &[2, 6], &[4, 4]] {
        let g = FiniteAbelianGroup::new(orders).unwrap();
        let expected = orders.iter().map(|&n| n as usize - 1).sum::<usize>() + 1;
        assert_eq!(davenport(&g, None, DEFAULT_GROUP_CAP).unwrap(), expected, "{orders:?}");
    }
    for n in 1..=9 {
        let g = FiniteAbelianGroup::cyclic(n).unwrap();
        assert_eq!(davenport(&g, None, DEFAULT_GROUP_CAP).unwrap(), n as usize);
    }
}

#[test]
fn atoms_are_minimal_zero_sum() {
    let g = FiniteAbelianGroup::new(&[2, 4]).unwrap();
    let atoms = atoms_of_block_monoid(&g, None, DEFAULT_GROUP_CAP).unwrap();
    assert!(!atoms.is_empty());
    for a in &atoms {
        let terms: Vec<usize> = a.terms.iter().map(|&t| t as usize).collect();
        let sum = terms.iter().fold(0, |s, &t| g.add(s, t));
        assert_eq!(sum, 0, "{a:?} is not zero-sum");
        for mask in 1..(1u32 << terms.len()) - 1 {
            let s = (0..terms.len())
                .filter(|i| mask >> i & 1 == 1)
                .fold(0, |s, i| g.add(s, terms[i]));
            assert_ne!(s, 0, "{a:?} has a proper zero-sum subsequence");
        }
    }
}

#[test]
fn rigid_factorizations_multiply_back() {
    let p = Presentation::new(&["a", "b", "c"], &[("a b c", "c b")]).unwrap();
    let h = PresentedSemigroup::with_budget(p, ExplorationBudget::new(12, 100_000).unwrap()).unwrap();
    let a = h.word("a b c").unwrap();
    let zs = rigid_factorizations(&h, &a);
    assert!(zs.exact);
    assert_eq!(zs.value.len(), 2);
    for z in &zs.value {
        let prod = z.atoms.iter().fold(h.identity(), |acc, u| h.mul(&acc, u).value);
        assert_eq!(h.canonical(&prod).value, h.canonical(&a).value);
    }
}
