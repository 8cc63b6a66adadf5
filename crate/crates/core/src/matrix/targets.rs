use super::domain::{is_prime, prime_factors};
use super::tri::AtomProfile;
use crate::semigroup::{Certified, Semigroup};

/// (ℕ, ·), the reduced monoid of ℤ•. Scope: `2..=bound`.
#[derive(Clone, Debug)]
pub struct NaturalNumbers {
    pub bound: u64,
}

impl Semigroup for NaturalNumbers {
    type Elem = u64;
    type Key = u64;

    fn identity(&self) -> u64 {
        1
    }

    fn mul(&self, a: &u64, b: &u64) -> Certified<u64> {
        Certified::exact(a * b)
    }

    fn is_unit(&self, a: &u64) -> bool {
        *a == 1
    }

    fn is_atom(&self, a: &u64) -> Certified<bool> {
        Certified::exact(is_prime(*a))
    }

    fn associate_key(&self, atom: &u64) -> u64 {
        *atom
    }

    fn left_divisors(&self, a: &u64) -> Certified<Vec<(u64, u64)>> {
        let mut ps = prime_factors(*a);
        ps.dedup();
        Certified::exact(ps.into_iter().map(|p| (p, a / p)).collect())
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Certified<u64>> + '_> {
        Box::new((2..=self.bound).map(Certified::exact))
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }

    fn permutable_factorizations_hint(&self, a: &u64) -> Option<Certified<Vec<Vec<u64>>>> {
        Some(Certified::exact(vec![prime_factors(*a)]))
    }

    fn has_unique_factorization(&self, a: &u64) -> bool {
        is_prime(*a)
    }
}

/// (ℕⁿ, ·) componentwise, the reduced monoid of (ℤ•)ⁿ. Atoms carry one
/// prime entry; their key is the position and the prime. Scope: vectors
/// with entries in `1..=bound`, not all 1.
#[derive(Clone, Debug)]
pub struct PositiveVectors {
    pub n: usize,
    pub bound: u64,
}

impl Semigroup for PositiveVectors {
    type Elem = Vec<u64>;
    type Key = AtomProfile;

    fn identity(&self) -> Vec<u64> {
        vec![1; self.n]
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Certified<Vec<u64>> {
        Certified::exact(a.iter().zip(b).map(|(x, y)| x * y).collect())
    }

    fn is_unit(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x == 1)
    }

    fn is_atom(&self, a: &Vec<u64>) -> Certified<bool> {
        let non_units: Vec<&u64> = a.iter().filter(|&&x| x != 1).collect();
        Certified::exact(matches!(non_units.as_slice(), [p] if is_prime(**p)))
    }

    fn associate_key(&self, atom: &Vec<u64>) -> AtomProfile {
        let m = atom.iter().position(|&x| x != 1).expect("associate_key on a unit");
        AtomProfile {
            position: m + 1,
            prime: atom[m],
        }
    }

    fn left_divisors(&self, a: &Vec<u64>) -> Certified<Vec<(Vec<u64>, Vec<u64>)>> {
        let mut out = Vec::new();
        for (i, &x) in a.iter().enumerate() {
            let mut ps = prime_factors(x);
            ps.dedup();
            for p in ps {
                let mut u = vec![1; self.n];
                u[i] = p;
                let mut q = a.clone();
                q[i] /= p;
                out.push((u, q));
            }
        }
        Certified::exact(out)
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Certified<Vec<u64>>> + '_> {
        let n = self.n;
        let b = self.bound;
        let total = b.pow(n as u32);
        Box::new((0..total).filter_map(move |mut idx| {
            let mut v = vec![0u64; n];
            for x in v.iter_mut().rev() {
                *x = idx % b + 1;
                idx /= b;
            }
            (!v.iter().all(|&x| x == 1)).then(|| Certified::exact(v))
        }))
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn render(&self, a: &Vec<u64>) -> String {
        format!("({})", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }

    fn render_key(&self, key: &AtomProfile) -> String {
        key.to_string()
    }

    fn permutable_factorizations_hint(&self, a: &Vec<u64>) -> Option<Certified<Vec<Vec<AtomProfile>>>> {
        let mut keys: Vec<AtomProfile> = a
            .iter()
            .enumerate()
            .flat_map(|(i, &x)| {
                prime_factors(x).into_iter().map(move |p| AtomProfile {
                    position: i + 1,
                    prime: p,
                })
            })
            .collect();
        keys.sort();
        Some(Certified::exact(vec![keys]))
    }

    fn has_unique_factorization(&self, a: &Vec<u64>) -> bool {
        self.is_atom(a).value
    }
}
