use std::collections::BTreeSet;

use serde::Serialize;

use super::domain::{prime_factors, FactorialDomain, Integers};
use super::IntMatrix;
use crate::error::{Error, Result};
use crate::semigroup::{Certified, Semigroup};

/// Associate class of an atom of T_n(ℤ)•: the position `m` (1-based) of the
/// non-unit diagonal entry and its absolute value `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AtomProfile {
    pub position: usize,
    pub prime: u64,
}

impl std::fmt::Display for AtomProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(m={}, p={})", self.position, self.prime)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum TriAtom {
    Yes(AtomProfile),
    No,
}

fn check_tri(a: &IntMatrix) -> Result<()> {
    if !a.is_upper_triangular() {
        return Err(Error::InvalidMatrix("matrix is not upper triangular".into()));
    }
    if a.diagonal_entries().contains(&0) {
        return Err(Error::Singular);
    }
    Ok(())
}

/// Atom iff exactly one diagonal entry is an atom of ℤ and the others are
/// units.
pub fn tri_is_atom(a: &IntMatrix) -> Result<TriAtom> {
    check_tri(a)?;
    let d = a.diagonal_entries();
    let non_units: Vec<usize> = (0..d.len()).filter(|&i| !Integers.is_unit(&d[i])).collect();
    Ok(match non_units.as_slice() {
        [m] if Integers.is_atom(&d[*m]) => TriAtom::Yes(AtomProfile {
            position: m + 1,
            prime: Integers.normalize(&d[*m]) as u64,
        }),
        _ => TriAtom::No,
    })
}

/// `left · A · right = normal` with unit matrices `left`, `right`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssociateCertificate {
    pub normal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub profile: AtomProfile,
}

fn elementary(n: usize, cells: &[(usize, usize, i64)]) -> IntMatrix {
    let mut c = IntMatrix::identity(n);
    for &(i, j, v) in cells {
        c.set(i, j, v);
    }
    c
}

/// Reduces an atom to the diagonal matrix with `p` at position `m` by the
/// row and column eliminations `C_i`.
pub fn tri_associate_normal_form(a: &IntMatrix) -> Result<AssociateCertificate> {
    let TriAtom::Yes(profile) = tri_is_atom(a)? else {
        return Err(Error::NotAtom);
    };
    let n = a.n();
    let m = profile.position - 1;
    // scale the diagonal: units to 1, the atom to its positive representative
    let u = IntMatrix::diagonal(&a.diagonal_entries().iter().map(|x| x.signum()).collect::<Vec<_>>());
    let mut cur = u.mul(a);
    let mut left = u;
    let mut right = IntMatrix::identity(n);
    for i in 0..m {
        let cells: Vec<(usize, usize, i64)> = (i + 1..n).map(|j| (i, j, -cur.get(i, j))).collect();
        let c = elementary(n, &cells);
        cur = cur.mul(&c);
        right = right.mul(&c);
    }
    for j in m + 1..n {
        let cells: Vec<(usize, usize, i64)> = (0..j).map(|i| (i, j, -cur.get(i, j))).collect();
        let c = elementary(n, &cells);
        cur = c.mul(&cur);
        left = c.mul(&left);
    }
    Ok(AssociateCertificate {
        normal: cur,
        left,
        right,
        profile,
    })
}

/// The pair `(m, p)` describing ann_R(R/RA) = {B : b_ij ∈ pℤ for i, j ≤ m}.
pub fn annihilator_profile(a: &IntMatrix) -> Result<AtomProfile> {
    let cert = tri_associate_normal_form(a)?;
    let n = cert.normal.n();
    let m = (0..n).find(|&i| cert.normal.get(i, i) != 1).ok_or(Error::NotAtom)?;
    Ok(AtomProfile {
        position: m + 1,
        prime: cert.normal.get(m, m) as u64,
    })
}

pub fn atoms_associated(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    Ok(annihilator_profile(a)? == annihilator_profile(b)?)
}

/// δ(A) = (|a_11|, …, |a_nn|).
pub fn delta_map(a: &IntMatrix) -> Vec<u64> {
    a.diagonal_entries().iter().map(|x| x.unsigned_abs()).collect()
}

/// Representative of `U · T_n(ℤ)^×`: positive diagonal, and each entry
/// right of the diagonal reduced modulo the diagonal entry of its row.
pub(crate) fn tri_right_normal_form(u: &IntMatrix) -> IntMatrix {
    let n = u.n();
    let mut r = u.clone();
    for j in 0..n {
        if r.get(j, j) < 0 {
            for i in 0..=j {
                r.set(i, j, -r.get(i, j));
            }
        }
    }
    for j in 0..n {
        for i in (0..j).rev() {
            let q = r.get(i, j).div_euclid(r.get(i, i));
            if q != 0 {
                for k in 0..=i {
                    r.set(k, j, r.get(k, j) - q * r.get(k, i));
                }
            }
        }
    }
    r
}

/// Atoms `U` (one per class modulo right units) with `U⁻¹A` integral, with
/// their quotients. A left divisor whose quotient is a unit is returned as
/// `(A, I)`.
///
/// The candidates have `p` at `(m, m)`, ones elsewhere on the diagonal and
/// row `m` entries right of the diagonal in `[0, p)`; the quotient differs
/// from `A` only in row `m`, which becomes `(A_m − Σ x_j A_j) / p`.
pub fn tri_left_divisors(a: &IntMatrix, det_cap: u64) -> Result<Vec<(IntMatrix, IntMatrix)>> {
    check_tri(a)?;
    let det = a.abs_det();
    if det > det_cap {
        return Err(Error::DetTooLarge { det, cap: det_cap });
    }
    let n = a.n();
    let mut out = Vec::new();
    for m in 0..n {
        let mut primes = prime_factors(a.get(m, m).unsigned_abs());
        primes.dedup();
        for p in primes {
            let mut xs = Vec::new();
            solve_row(a, m, p as i64, m + 1, &mut xs, &mut |xs| {
                let mut u = IntMatrix::identity(n);
                u.set(m, m, p as i64);
                let mut q = a.clone();
                for c in 0..n {
                    let v = a.get(m, c) - (m + 1..n).map(|j| xs[j - m - 1] * a.get(j, c)).sum::<i64>();
                    q.set(m, c, v / p as i64);
                }
                for (k, &x) in xs.iter().enumerate() {
                    u.set(m, m + 1 + k, x);
                }
                if q.abs_det() == 1 {
                    out.push((a.clone(), IntMatrix::identity(n)));
                } else {
                    out.push((u, q));
                }
            });
        }
    }
    Ok(out)
}

/// Chooses `x_c` column by column so that row `m` of `A − Σ x_j A_j`
/// vanishes modulo `p`.
fn solve_row(a: &IntMatrix, m: usize, p: i64, c: usize, xs: &mut Vec<i64>, emit: &mut dyn FnMut(&[i64])) {
    let n = a.n();
    if c == n {
        emit(xs);
        return;
    }
    let r = (a.get(m, c) - (m + 1..c).map(|j| xs[j - m - 1] * a.get(j, c)).sum::<i64>()).rem_euclid(p);
    let d = a.get(c, c).rem_euclid(p);
    if d != 0 {
        // x_c · d ≡ r (mod p)
        let x = (r * mod_inverse(d, p)).rem_euclid(p);
        xs.push(x);
        solve_row(a, m, p, c + 1, xs, emit);
        xs.pop();
    } else if r == 0 {
        for x in 0..p {
            xs.push(x);
            solve_row(a, m, p, c + 1, xs, emit);
            xs.pop();
        }
    }
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    let (mut r0, mut r1) = (a.rem_euclid(p), p);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(p)
}

/// Left divisor classes found by scanning every upper triangular atom with
/// entries bounded by `bound`, as right normal forms. Oracle for
/// [`tri_left_divisors`] on tiny instances.
pub fn tri_left_divisors_brute_force(a: &IntMatrix, bound: i64) -> Result<BTreeSet<IntMatrix>> {
    check_tri(a)?;
    let n = a.n();
    let det = a.abs_det() as i64;
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut out = BTreeSet::new();
    let mut u = IntMatrix::identity(n);
    scan(&cells, 0, bound, &mut u, &mut |u| {
        let ud = u.det();
        if ud == 0 || ud.unsigned_abs() as i64 > det {
            return;
        }
        if !matches!(tri_is_atom(u), Ok(TriAtom::Yes(_))) {
            return;
        }
        // U⁻¹A = adj(U)·A / det U
        let prod = adjugate(u).mul(a);
        if prod.entries.iter().all(|&x| (x as i128) % ud == 0) {
            out.insert(tri_right_normal_form(u));
        }
    });
    Ok(out)
}

fn scan(cells: &[(usize, usize)], k: usize, bound: i64, u: &mut IntMatrix, f: &mut dyn FnMut(&IntMatrix)) {
    if k == cells.len() {
        f(u);
        return;
    }
    let (i, j) = cells[k];
    for v in -bound..=bound {
        u.set(i, j, v);
        scan(cells, k + 1, bound, u, f);
    }
}

pub(crate) fn adjugate(u: &IntMatrix) -> IntMatrix {
    let n = u.n();
    if n == 1 {
        return IntMatrix::identity(1);
    }
    let mut adj = IntMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<i64> = (0..n)
                .filter(|&r| r != j)
                .flat_map(|r| (0..n).filter(|&c| c != i).map(move |c| (r, c)))
                .map(|(r, c)| u.get(r, c))
                .collect();
            let d = IntMatrix::new(n - 1, minor).unwrap().det() as i64;
            adj.set(i, j, if (i + j) % 2 == 0 { d } else { -d });
        }
    }
    adj
}

/// T_n(ℤ)•. The explored scope is the set of non-unit upper triangular
/// matrices with entries in `[-entry_bound, entry_bound]` and
/// `|det| ≤ det_cap`.
#[derive(Clone, Debug)]
pub struct TriangularSemigroup {
    pub n: usize,
    pub entry_bound: i64,
    pub det_cap: u64,
}

impl TriangularSemigroup {
    pub fn new(n: usize, entry_bound: i64, det_cap: u64) -> Self {
        TriangularSemigroup {
            n,
            entry_bound,
            det_cap,
        }
    }
}

impl Semigroup for TriangularSemigroup {
    type Elem = IntMatrix;
    type Key = AtomProfile;

    fn identity(&self) -> IntMatrix {
        IntMatrix::identity(self.n)
    }

    fn mul(&self, a: &IntMatrix, b: &IntMatrix) -> Certified<IntMatrix> {
        Certified::exact(a.mul(b))
    }

    fn is_unit(&self, a: &IntMatrix) -> bool {
        a.abs_det() == 1
    }

    fn is_atom(&self, a: &IntMatrix) -> Certified<bool> {
        Certified::exact(matches!(tri_is_atom(a), Ok(TriAtom::Yes(_))))
    }

    fn associate_key(&self, atom: &IntMatrix) -> AtomProfile {
        match tri_is_atom(atom) {
            Ok(TriAtom::Yes(p)) => p,
            _ => panic!("associate_key called on a non-atom {atom}"),
        }
    }

    fn left_divisors(&self, a: &IntMatrix) -> Certified<Vec<(IntMatrix, IntMatrix)>> {
        match tri_left_divisors(a, self.det_cap) {
            Ok(v) => Certified::exact(v),
            Err(_) => Certified::partial(Vec::new()),
        }
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Certified<IntMatrix>> + '_> {
        let n = self.n;
        let b = self.entry_bound;
        let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let base = (2 * b + 1) as u64;
        let total = base.checked_pow(cells.len() as u32).unwrap_or(u64::MAX);
        Box::new((0..total).filter_map(move |mut idx| {
            let mut m = IntMatrix::identity(n);
            for &(i, j) in cells.iter().rev() {
                m.set(i, j, (idx % base) as i64 - b);
                idx /= base;
            }
            let d = m.abs_det();
            (d > 1 && d <= self.det_cap).then(|| Certified::exact(m))
        }))
    }

    fn render(&self, a: &IntMatrix) -> String {
        format!("[{a}]")
    }

    fn render_key(&self, key: &AtomProfile) -> String {
        key.to_string()
    }

    fn has_unique_factorization(&self, a: &IntMatrix) -> bool {
        matches!(tri_is_atom(a), Ok(TriAtom::Yes(_)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{permutable_factorizations, rigid_factorizations};

    fn m(s: &str) -> IntMatrix {
        IntMatrix::parse(s).unwrap()
    }

    #[test]
    fn atom_criterion() {
        assert_eq!(
            tri_is_atom(&m("2 0; 0 1")).unwrap(),
            TriAtom::Yes(AtomProfile { position: 1, prime: 2 })
        );
        assert_eq!(tri_is_atom(&m("2 0; 0 3")).unwrap(), TriAtom::No);
        assert_eq!(tri_is_atom(&m("1 0; 0 1")).unwrap(), TriAtom::No);
        assert_eq!(
            tri_is_atom(&m("-1 4; 0 -5")).unwrap(),
            TriAtom::Yes(AtomProfile { position: 2, prime: 5 })
        );
        assert!(tri_is_atom(&m("1 0; 1 1")).is_err());
    }

    #[test]
    fn normal_form_certificates() {
        for (a, normal) in [
            ("2 5; 0 1", "2 0; 0 1"),
            ("2 0; 0 1", "2 0; 0 1"),
            ("1 7; 0 3", "1 0; 0 3"),
        ] {
            let c = tri_associate_normal_form(&m(a)).unwrap();
            assert_eq!(c.normal, m(normal));
            assert_eq!(c.left.mul(&m(a)).mul(&c.right), c.normal);
            assert_eq!(c.left.abs_det(), 1);
            assert_eq!(c.right.abs_det(), 1);
        }
        let c = tri_associate_normal_form(&m("-1 4 9; 0 -7 2; 0 0 1")).unwrap();
        assert_eq!(c.normal, IntMatrix::diagonal(&[1, 7, 1]));
        assert_eq!(c.left.mul(&m("-1 4 9; 0 -7 2; 0 0 1")).mul(&c.right), c.normal);
        assert_eq!(tri_associate_normal_form(&m("2 0; 0 3")), Err(Error::NotAtom));
    }

    #[test]
    fn associated_atoms() {
        assert!(atoms_associated(&m("2 5; 0 1"), &m("2 0; 0 1")).unwrap());
        assert!(!atoms_associated(&m("2 0; 0 1"), &m("1 0; 0 2")).unwrap());
        assert!(atoms_associated(&m("1 3; 0 2"), &m("1 3; 0 2")).unwrap());
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta_map(&m("2 0; 0 3")), vec![2, 3]);
        assert_eq!(delta_map(&m("2 5; 0 -3")), vec![2, 3]);
        assert_eq!(delta_map(&m("1 9; 0 -1")), vec![1, 1]);
        let (a, b) = (m("2 5; 0 3"), m("-3 1; 0 4"));
        let d: Vec<u64> = delta_map(&a).iter().zip(delta_map(&b)).map(|(x, y)| x * y).collect();
        assert_eq!(delta_map(&a.mul(&b)), d);
    }

    #[test]
    fn divisors_of_diag_1_4() {
        // [[1,x],[0,2]] are all right associates of diag(1,2)
        let ld = tri_left_divisors(&m("1 0; 0 4"), 1000).unwrap();
        assert_eq!(ld, vec![(m("1 0; 0 2"), m("1 0; 0 2"))]);
        for x in [0, 1] {
            let u = m(&format!("1 {x}; 0 2"));
            assert_eq!(tri_right_normal_form(&u), m("1 0; 0 2"));
            assert_eq!(u.mul(&m(&format!("1 {}; 0 2", -2 * x))), m("1 0; 0 4"));
        }
    }

    #[test]
    fn atom_has_itself_as_only_divisor() {
        let a = m("2 5; 0 1");
        assert_eq!(
            tri_left_divisors(&a, 100).unwrap(),
            vec![(a.clone(), IntMatrix::identity(2))]
        );
    }

    #[test]
    fn divisors_recompose_and_match_brute_force() {
        for s in [
            "2 1; 0 2",
            "4 3; 0 2",
            "2 0; 0 6",
            "3 1; 0 3",
            "6 5; 0 2",
            "1 1 1; 0 2 1; 0 0 2",
            "2 1 0; 0 1 1; 0 0 2",
        ] {
            let a = m(s);
            let fast = tri_left_divisors(&a, 1000).unwrap();
            let mut fast_nf = BTreeSet::new();
            for (u, q) in &fast {
                assert_eq!(u.mul(q), a, "{s}");
                assert!(q.is_upper_triangular());
                fast_nf.insert(tri_right_normal_form(u));
            }
            assert_eq!(fast_nf.len(), fast.len(), "{s}: duplicate classes");
            assert_eq!(fast_nf, tri_left_divisors_brute_force(&a, 6).unwrap(), "{s}");
        }
    }

    #[test]
    fn det_cap_enforced() {
        assert_eq!(
            tri_left_divisors(&m("64 0; 0 2"), 64),
            Err(Error::DetTooLarge { det: 128, cap: 64 })
        );
    }

    #[test]
    fn factorizations_of_diag_2_3_are_permutably_equal() {
        let h = TriangularSemigroup::new(2, 4, 1000);
        let a = m("2 0; 0 3");
        let z = rigid_factorizations(&h, &a);
        assert!(z.exact);
        assert!(z.value.len() >= 2);
        for f in &z.value {
            assert_eq!(h.product(&f.atoms).value, a);
        }
        assert_eq!(permutable_factorizations(&h, &a).value.len(), 1);
    }

    #[test]
    fn non_transfer_order() {
        // [[2,1],[0,2]] factors only as (position 2)(position 1)
        let h = TriangularSemigroup::new(2, 4, 1000);
        let z = rigid_factorizations(&h, &m("2 1; 0 2")).value;
        let orders: BTreeSet<Vec<usize>> = z
            .iter()
            .map(|f| f.atoms.iter().map(|u| h.associate_key(u).position).collect())
            .collect();
        assert_eq!(orders, BTreeSet::from([vec![2, 1]]));
    }
}
