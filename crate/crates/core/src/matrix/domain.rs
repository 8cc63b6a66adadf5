/// The diagonal-domain contract for T_n(D): a factorial domain with a
/// prime factorization oracle and chosen associate representatives.
pub trait FactorialDomain {
    type Elem: Clone + Eq + Ord + std::hash::Hash + std::fmt::Debug;

    fn is_unit(&self, a: &Self::Elem) -> bool;

    /// Representative of the associate class of a nonzero element.
    fn normalize(&self, a: &Self::Elem) -> Self::Elem;

    /// Prime factors with multiplicity, normalized, ascending.
    fn factorize(&self, a: &Self::Elem) -> Vec<Self::Elem>;

    fn is_atom(&self, a: &Self::Elem) -> bool {
        self.factorize(a).len() == 1
    }

    /// Ω(a).
    fn length(&self, a: &Self::Elem) -> usize {
        self.factorize(a).len()
    }
}

/// ℤ with positive representatives.
#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl FactorialDomain for Integers {
    type Elem = i64;

    fn is_unit(&self, a: &i64) -> bool {
        a.abs() == 1
    }

    fn normalize(&self, a: &i64) -> i64 {
        a.abs()
    }

    fn factorize(&self, a: &i64) -> Vec<i64> {
        let mut m = a.unsigned_abs();
        let mut out = Vec::new();
        let mut p = 2u64;
        while p * p <= m {
            while m.is_multiple_of(p) {
                out.push(p as i64);
                m /= p;
            }
            p += 1;
        }
        if m > 1 {
            out.push(m as i64);
        }
        out
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p))
}

pub(crate) fn prime_factors(n: u64) -> Vec<u64> {
    Integers.factorize(&(n as i64)).into_iter().map(|p| p as u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_factorization() {
        assert_eq!(Integers.factorize(&-60), vec![2, 2, 3, 5]);
        assert_eq!(Integers.factorize(&1), Vec::<i64>::new());
        assert!(Integers.is_atom(&-7));
        assert!(!Integers.is_atom(&1));
        assert_eq!(Integers.length(&64), 6);
        assert!(is_prime(61) && !is_prime(1) && !is_prime(91));
    }
}
