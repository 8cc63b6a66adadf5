//! Integer matrix semigroups: upper triangular matrices T_n(ℤ)• with the
//! diagonal map δ, and full matrices M_n(ℤ)• with Smith normal form and the
//! determinant map.

mod domain;
mod full;
mod targets;
mod tri;
mod verify;

use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

pub use domain::{FactorialDomain, Integers};
pub use full::{det_transfer, full_left_divisors, snf, snf_ascending, to_descending, FullMatrixSemigroup, SnfResult};
pub use targets::{NaturalNumbers, PositiveVectors};
pub use tri::{
    annihilator_profile, atoms_associated, delta_map, tri_associate_normal_form, tri_is_atom, tri_left_divisors,
    tri_left_divisors_brute_force, AssociateCertificate, AtomProfile, TriAtom, TriangularSemigroup,
};
pub use verify::{verify_transfer_properties, TransferCheck};

/// Default cap on |det| for divisor enumeration.
pub const DEFAULT_DET_CAP: u64 = 1 << 20;

/// Square integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn new(n: usize, entries: Vec<i64>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for a {n}×{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(IntMatrix { n, entries })
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("matrix must be square".into()));
        }
        Self::new(n, rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    /// Parses `"2 5; 0 3"`: rows separated by `;`, entries by whitespace.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<Vec<i64>> = text
            .split(';')
            .map(|row| {
                row.split_whitespace()
                    .map(|x| {
                        x.parse::<i64>()
                            .map_err(|_| Error::InvalidMatrix(format!("bad entry `{x}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        Self::from_rows(&refs)
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1; n])
    }

    pub fn diagonal(d: &[i64]) -> Self {
        let n = d.len();
        let mut entries = vec![0; n * n];
        for (i, &x) in d.iter().enumerate() {
            entries[i * n + i] = x;
        }
        IntMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diagonal_entries(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == 0))
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.n != other.n {
            return Err(Error::InvalidMatrix("dimension mismatch".into()));
        }
        let n = self.n;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let s: i128 = (0..n).map(|k| self.get(i, k) as i128 * other.get(k, j) as i128).sum();
                entries[i * n + j] = i64::try_from(s).map_err(|_| Error::InvalidMatrix("entry overflow".into()))?;
            }
        }
        Ok(IntMatrix { n, entries })
    }

    /// Panics on overflow; the semigroup handles only see small entries.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        self.checked_mul(other).expect("matrix product overflows i64")
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> i128 {
        let n = self.n;
        let mut m: Vec<i128> = self.entries.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k * n + k] == 0 {
                let Some(r) = (k + 1..n).find(|&r| m[r * n + k] != 0) else {
                    return 0;
                };
                for c in 0..n {
                    m.swap(k * n + c, r * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
                }
            }
            prev = m[k * n + k];
        }
        sign * m[n * n - 1]
    }

    pub fn abs_det(&self) -> u64 {
        self.det().unsigned_abs() as u64
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        f.write_str(&rows.join("; "))
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.n))?;
        for i in 0..self.n {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let m = IntMatrix::parse("2 5; 0 3").unwrap();
        assert_eq!(m.get(0, 1), 5);
        assert_eq!(m.to_string(), "2 5; 0 3");
        assert!(IntMatrix::parse("1 2; 3").is_err());
        assert!(IntMatrix::parse("1 x; 0 1").is_err());
    }

    #[test]
    fn determinants() {
        assert_eq!(IntMatrix::parse("2 5; 0 3").unwrap().det(), 6);
        assert_eq!(IntMatrix::parse("0 2; 1 0").unwrap().det(), -2);
        assert_eq!(IntMatrix::parse("0 1 0; 0 0 1; 1 0 0").unwrap().det(), 1);
        assert_eq!(IntMatrix::parse("1 2 3; 4 5 6; 7 8 9").unwrap().det(), 0);
        assert_eq!(IntMatrix::parse("1 2 3; 0 1 4; 5 6 0").unwrap().det(), 1);
    }

    #[test]
    fn det_is_multiplicative() {
        let a = IntMatrix::parse("1 2; 3 4").unwrap();
        let b = IntMatrix::parse("0 5; -1 2").unwrap();
        assert_eq!(a.mul(&b).det(), a.det() * b.det());
    }
}
