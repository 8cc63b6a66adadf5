use serde::Serialize;

use super::domain::{is_prime, prime_factors};
use super::IntMatrix;
use crate::error::{Error, Result};
use crate::semigroup::{Certified, Semigroup};

/// `A = U·C·V` with `U`, `V` unimodular and `C` diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub c: IntMatrix,
    pub v: IntMatrix,
    /// `true` when `c_{i+1,i+1} | c_{i,i}`, `false` for the ascending chain.
    pub descending: bool,
}

impl SnfResult {
    pub fn invariant_factors(&self) -> Vec<i64> {
        self.c.diagonal_entries()
    }
}

/// Working copy in i128 with the inverses of the accumulated row and column
/// operations, so that `A = linv · M · rinv` holds throughout.
struct Work {
    n: usize,
    m: Vec<i128>,
    linv: Vec<i128>,
    rinv: Vec<i128>,
}

impl Work {
    fn at(&self, i: usize, j: usize) -> i128 {
        self.m[i * self.n + j]
    }

    /// row_i += c · row_j
    fn add_row(&mut self, i: usize, j: usize, c: i128) {
        let n = self.n;
        for k in 0..n {
            self.m[i * n + k] += c * self.m[j * n + k];
        }
        // linv ← linv · E⁻¹, E⁻¹ subtracts: col_j −= c · col_i
        for k in 0..n {
            self.linv[k * n + j] -= c * self.linv[k * n + i];
        }
    }

    /// col_j += c · col_i
    fn add_col(&mut self, j: usize, i: usize, c: i128) {
        let n = self.n;
        for k in 0..n {
            self.m[k * n + j] += c * self.m[k * n + i];
        }
        // rinv ← F⁻¹ · rinv: row_i −= c · row_j
        for k in 0..n {
            self.rinv[i * n + k] -= c * self.rinv[j * n + k];
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        let n = self.n;
        for k in 0..n {
            self.m.swap(i * n + k, j * n + k);
            self.linv.swap(k * n + i, k * n + j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        let n = self.n;
        for k in 0..n {
            self.m.swap(k * n + i, k * n + j);
            self.rinv.swap(i * n + k, j * n + k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        let n = self.n;
        for k in 0..n {
            self.m[i * n + k] = -self.m[i * n + k];
            self.linv[k * n + i] = -self.linv[k * n + i];
        }
    }
}

fn to_matrix(n: usize, v: &[i128]) -> Result<IntMatrix> {
    let entries = v
        .iter()
        .map(|&x| i64::try_from(x).map_err(|_| Error::InvalidMatrix("entry overflow in normal form".into())))
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::new(n, entries)
}

/// Smith normal form with the ascending chain `c_{i,i} | c_{i+1,i+1}` and
/// nonnegative diagonal.
pub fn snf_ascending(a: &IntMatrix) -> Result<SnfResult> {
    let n = a.n();
    let mut id = vec![0i128; n * n];
    for i in 0..n {
        id[i * n + i] = 1;
    }
    let mut w = Work {
        n,
        m: a.rows().iter().flatten().map(|&x| x as i128).collect(),
        linv: id.clone(),
        rinv: id,
    };
    for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let Some((pi, pj)) = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| w.at(i, j) != 0)
                .min_by_key(|&(i, j)| (w.at(i, j).abs(), i, j))
            else {
                return Err(Error::Singular);
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.at(t, t);
            let mut clean = true;
            for i in t + 1..n {
                let q = w.at(i, t).div_euclid(p);
                w.add_row(i, t, -q);
                clean &= w.at(i, t) == 0;
            }
            for j in t + 1..n {
                let q = w.at(t, j).div_euclid(p);
                w.add_col(j, t, -q);
                clean &= w.at(t, j) == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole trailing block
            if let Some(i) = (t + 1..n).find(|&i| (t + 1..n).any(|j| w.at(i, j) % p != 0)) {
                w.add_row(t, i, 1);
                continue;
            }
            break;
        }
        if w.at(t, t) < 0 {
            w.negate_row(t);
        }
    }
    Ok(SnfResult {
        u: to_matrix(n, &w.linv)?,
        c: to_matrix(n, &w.m)?,
        v: to_matrix(n, &w.rinv)?,
        descending: false,
    })
}

/// Reverses the diagonal: `A = (U·P)(P·C·P)(P·V)` with `P` the reversal
/// permutation.
pub fn to_descending(r: &SnfResult) -> SnfResult {
    let n = r.c.n();
    let mut p = IntMatrix::new(n, vec![0; n * n]).unwrap();
    for i in 0..n {
        p.set(i, n - 1 - i, 1);
    }
    SnfResult {
        u: r.u.mul(&p),
        c: p.mul(&r.c).mul(&p),
        v: p.mul(&r.v),
        descending: !r.descending,
    }
}

/// Smith normal form with `c_{i+1,i+1} | c_{i,i}`.
pub fn snf(a: &IntMatrix) -> Result<SnfResult> {
    Ok(to_descending(&snf_ascending(a)?))
}

/// `|det A|`, the transfer homomorphism M_n(ℤ)• → ℕ.
pub fn det_transfer(a: &IntMatrix) -> u64 {
    a.abs_det()
}

/// Column Hermite normal form atoms `U` with `U⁻¹A` integral: `p` at
/// `(m, m)`, row `m` entries left of the diagonal in `[0, p)`, ones on the
/// rest of the diagonal. A divisor with unit quotient is returned as `(A, I)`.
pub fn full_left_divisors(a: &IntMatrix, det_cap: u64) -> Result<Vec<(IntMatrix, IntMatrix)>> {
    let n = a.n();
    let det = a.abs_det();
    if det == 0 {
        return Err(Error::Singular);
    }
    if det > det_cap {
        return Err(Error::DetTooLarge { det, cap: det_cap });
    }
    let mut primes = prime_factors(det);
    primes.dedup();
    let mut out = Vec::new();
    for m in 0..n {
        for &p in &primes {
            let p = p as i64;
            let mut xs = vec![0i64; m];
            loop {
                let row: Vec<i64> = (0..n)
                    .map(|c| a.get(m, c) - (0..m).map(|j| xs[j] * a.get(j, c)).sum::<i64>())
                    .collect();
                if row.iter().all(|x| x % p == 0) {
                    let mut u = IntMatrix::identity(n);
                    u.set(m, m, p);
                    for (j, &x) in xs.iter().enumerate() {
                        u.set(m, j, x);
                    }
                    let mut q = a.clone();
                    for (c, x) in row.iter().enumerate() {
                        q.set(m, c, x / p);
                    }
                    if q.abs_det() == 1 {
                        out.push((a.clone(), IntMatrix::identity(n)));
                    } else {
                        out.push((u, q));
                    }
                }
                // next tuple in [0, p)^m
                let Some(k) = (0..m).rev().find(|&k| xs[k] + 1 < p) else {
                    break;
                };
                xs[k] += 1;
                for x in xs.iter_mut().skip(k + 1) {
                    *x = 0;
                }
            }
        }
    }
    Ok(out)
}

/// M_n(ℤ)•. Atoms are classified through the Smith normal form; associate
/// classes of atoms are given by `|det|`.
#[derive(Clone, Debug)]
pub struct FullMatrixSemigroup {
    pub n: usize,
    pub entry_bound: i64,
    pub det_cap: u64,
}

impl FullMatrixSemigroup {
    pub fn new(n: usize, entry_bound: i64, det_cap: u64) -> Self {
        FullMatrixSemigroup {
            n,
            entry_bound,
            det_cap,
        }
    }
}

impl Semigroup for FullMatrixSemigroup {
    type Elem = IntMatrix;
    type Key = u64;

    fn identity(&self) -> IntMatrix {
        IntMatrix::identity(self.n)
    }

    fn mul(&self, a: &IntMatrix, b: &IntMatrix) -> Certified<IntMatrix> {
        Certified::exact(a.mul(b))
    }

    fn is_unit(&self, a: &IntMatrix) -> bool {
        a.abs_det() == 1
    }

    /// c_11 an atom of ℤ and the remaining invariant factors units.
    fn is_atom(&self, a: &IntMatrix) -> Certified<bool> {
        let Ok(s) = snf(a) else {
            return Certified::exact(false);
        };
        let c = s.invariant_factors();
        Certified::exact(is_prime(c[0].unsigned_abs()) && c[1..].iter().all(|x| x.abs() == 1))
    }

    fn associate_key(&self, atom: &IntMatrix) -> u64 {
        atom.abs_det()
    }

    fn left_divisors(&self, a: &IntMatrix) -> Certified<Vec<(IntMatrix, IntMatrix)>> {
        match full_left_divisors(a, self.det_cap) {
            Ok(v) => Certified::exact(v),
            Err(_) => Certified::partial(Vec::new()),
        }
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Certified<IntMatrix>> + '_> {
        let n = self.n;
        let b = self.entry_bound;
        let base = (2 * b + 1) as u64;
        let total = base.checked_pow((n * n) as u32).unwrap_or(u64::MAX);
        Box::new((0..total).filter_map(move |mut idx| {
            let mut entries = vec![0i64; n * n];
            for e in entries.iter_mut().rev() {
                *e = (idx % base) as i64 - b;
                idx /= base;
            }
            let m = IntMatrix::new(n, entries).unwrap();
            let d = m.abs_det();
            (d > 1 && d <= self.det_cap).then(|| Certified::exact(m))
        }))
    }

    fn render(&self, a: &IntMatrix) -> String {
        format!("[{a}]")
    }

    fn render_key(&self, key: &u64) -> String {
        format!("|det| = {key}")
    }

    fn has_unique_factorization(&self, a: &IntMatrix) -> bool {
        is_prime(a.abs_det())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::length_profile;

    fn m(s: &str) -> IntMatrix {
        IntMatrix::parse(s).unwrap()
    }

    fn check(a: &IntMatrix, r: &SnfResult) {
        assert_eq!(r.u.mul(&r.c).mul(&r.v), *a);
        assert_eq!(r.u.abs_det(), 1);
        assert_eq!(r.v.abs_det(), 1);
        let d = r.c.diagonal_entries();
        for i in 0..d.len() - 1 {
            if r.descending {
                assert_eq!(d[i] % d[i + 1], 0);
            } else {
                assert_eq!(d[i + 1] % d[i], 0);
            }
        }
        assert_eq!(r.c.abs_det(), a.abs_det());
    }

    #[test]
    fn snf_examples() {
        let a = m("2 0; 0 3");
        let r = snf(&a).unwrap();
        assert_eq!(r.c, IntMatrix::diagonal(&[6, 1]));
        check(&a, &r);
        let r = snf(&IntMatrix::identity(3)).unwrap();
        assert_eq!(r.c, IntMatrix::identity(3));
        for s in [
            "4 6; 10 14",
            "0 2; 1 0",
            "2 4 4; -6 6 12; 10 -4 -16",
            "1 1 1; 0 2 1; 3 0 5",
        ] {
            let a = m(s);
            check(&a, &snf(&a).unwrap());
            check(&a, &snf_ascending(&a).unwrap());
        }
        assert_eq!(snf(&m("1 2; 2 4")), Err(Error::Singular));
    }

    #[test]
    fn atoms_by_determinant() {
        let h = FullMatrixSemigroup::new(2, 3, 100);
        assert!(h.is_atom(&m("0 2; 1 0")).value);
        assert!(!h.is_atom(&m("2 0; 0 2")).value);
        assert!(!h.is_atom(&m("1 0; 0 1")).value);
    }

    #[test]
    fn divisors_count_sublattices() {
        // index-p sublattices of ℤ²: p + 1 of them
        let d = full_left_divisors(&m("4 0; 0 9"), 1000).unwrap();
        let by_p = |p: i64| d.iter().filter(|(u, _)| u.abs_det() as i64 == p).count();
        assert_eq!((by_p(2), by_p(3)), (1, 1));
        for (u, q) in &d {
            assert_eq!(u.mul(q), m("4 0; 0 9"));
        }
        let d = full_left_divisors(&m("6 0; 0 6"), 1000).unwrap();
        assert_eq!(d.len(), 3 + 4);
    }

    #[test]
    fn lengths_follow_determinant() {
        let h = FullMatrixSemigroup::new(2, 3, 1000);
        for (s, omega) in [("2 0; 0 2", 2), ("4 1; 2 5", 3), ("3 1; 1 3", 3)] {
            let l = length_profile(&h, &m(s));
            assert!(l.exact);
            assert_eq!(l.value.lengths.iter().copied().collect::<Vec<_>>(), vec![omega]);
        }
    }
}
