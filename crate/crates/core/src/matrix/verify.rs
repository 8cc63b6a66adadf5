use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::factorization::{permutable_factorizations, rigid_factorizations};
use crate::semigroup::Semigroup;

/// Outcome of checking a homomorphism `φ: H → T` on a finite sample.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TransferCheck {
    pub elements_checked: usize,
    pub targets_checked: usize,
    /// φ⁻¹(T^×) = H^× on the sample, and every target sample is hit up to units.
    pub t1: bool,
    pub atoms_to_atoms: bool,
    /// Every factorization of φ(a) lifts up to a permutation.
    pub wt2: bool,
    /// Every factorization of φ(a) lifts in the given order; `None` when not checked.
    pub t2: Option<bool>,
    /// φ(u) ≃ φ(v) implies u ≃ v for the atoms met.
    pub isoatomic: bool,
    pub exact: bool,
    /// First failure for each property.
    pub counterexamples: Vec<String>,
}

impl TransferCheck {
    pub fn weak_transfer(&self) -> bool {
        self.t1 && self.atoms_to_atoms && self.wt2
    }
}

/// Checks (T1), (WT2), isoatomicity and optionally (T2) for `phi` on every
/// element of `samples`. `targets` with `section` test the surjectivity half
/// of (T1): `phi(section(t))` must equal `t`.
pub fn verify_transfer_properties<H: Semigroup, T: Semigroup>(
    h: &H,
    t: &T,
    phi: &dyn Fn(&H::Elem) -> T::Elem,
    samples: &[H::Elem],
    targets: &[T::Elem],
    section: &dyn Fn(&T::Elem) -> Option<H::Elem>,
    check_t2: bool,
) -> TransferCheck {
    let mut r = TransferCheck {
        t1: true,
        atoms_to_atoms: true,
        wt2: true,
        t2: check_t2.then_some(true),
        isoatomic: true,
        exact: true,
        ..Default::default()
    };
    let mut key_map: BTreeMap<T::Key, (H::Key, H::Elem)> = BTreeMap::new();
    for a in samples {
        r.elements_checked += 1;
        let image = phi(a);
        if h.is_unit(a) != t.is_unit(&image) {
            if r.t1 {
                r.counterexamples
                    .push(format!("T1: {} is a unit on exactly one side", h.render(a)));
            }
            r.t1 = false;
        }
        if h.is_unit(a) {
            continue;
        }
        let z = rigid_factorizations(h, a);
        r.exact &= z.exact;
        let mut lifted_perm: BTreeSet<Vec<T::Key>> = BTreeSet::new();
        let mut lifted_rigid: BTreeSet<Vec<T::Key>> = BTreeSet::new();
        let mut all_atoms = true;
        for f in &z.value {
            let mut seq = Vec::with_capacity(f.atoms.len());
            for u in &f.atoms {
                let v = phi(u);
                if !t.is_atom(&v).value {
                    if r.atoms_to_atoms {
                        r.counterexamples
                            .push(format!("atoms: {} maps to the non-atom {}", h.render(u), t.render(&v)));
                    }
                    r.atoms_to_atoms = false;
                    all_atoms = false;
                    break;
                }
                let tk = t.associate_key(&v);
                let hk = h.associate_key(u);
                match key_map.get(&tk) {
                    Some((k, other)) if *k != hk => {
                        if r.isoatomic {
                            r.counterexamples.push(format!(
                                "isoatomic: {} and {} have associated images but are not associated",
                                h.render(u),
                                h.render(other)
                            ));
                        }
                        r.isoatomic = false;
                    }
                    Some(_) => {}
                    None => {
                        key_map.insert(tk.clone(), (hk, u.clone()));
                    }
                }
                seq.push(tk);
            }
            if !all_atoms {
                break;
            }
            lifted_rigid.insert(seq.clone());
            seq.sort();
            lifted_perm.insert(seq);
        }
        if !all_atoms {
            continue;
        }
        let zt = permutable_factorizations(t, &image);
        r.exact &= zt.exact;
        if let Some(missing) = zt.value.iter().find(|f| !lifted_perm.contains(&f.classes)) {
            if r.wt2 {
                r.counterexamples.push(format!(
                    "WT2: factorization {:?} of {} does not lift to {}",
                    missing.classes.iter().map(|k| t.render_key(k)).collect::<Vec<_>>(),
                    t.render(&image),
                    h.render(a)
                ));
            }
            r.wt2 = false;
        }
        if check_t2 && r.t2 == Some(true) {
            let zt = rigid_factorizations(t, &image);
            r.exact &= zt.exact;
            let missing = zt.value.iter().find(|f| {
                let keys: Vec<T::Key> = f.atoms.iter().map(|v| t.associate_key(v)).collect();
                !lifted_rigid.contains(&keys)
            });
            if let Some(f) = missing {
                r.counterexamples.push(format!(
                    "T2: ordered factorization [{}] of {} does not lift to {}",
                    f.atoms.iter().map(|v| t.render(v)).collect::<Vec<_>>().join(", "),
                    t.render(&image),
                    h.render(a)
                ));
                r.t2 = Some(false);
            }
        }
    }
    for b in targets {
        r.targets_checked += 1;
        let hit = section(b).map(|s| t.equal(&phi(&s), b) == Some(true)).unwrap_or(false);
        if !hit {
            if r.t1 {
                r.counterexamples
                    .push(format!("T1: {} is not in the image up to units", t.render(b)));
            }
            r.t1 = false;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{
        delta_map, FullMatrixSemigroup, IntMatrix, NaturalNumbers, PositiveVectors, TriangularSemigroup,
    };

    #[test]
    fn delta_is_weak_transfer_not_transfer() {
        let h = TriangularSemigroup::new(2, 3, 30);
        let t = PositiveVectors { n: 2, bound: 6 };
        let samples: Vec<IntMatrix> = h.elements().map(|e| e.value).collect();
        let targets: Vec<Vec<u64>> = t.elements().map(|e| e.value).collect();
        let section = |v: &Vec<u64>| Some(IntMatrix::diagonal(&v.iter().map(|&x| x as i64).collect::<Vec<_>>()));
        let r = verify_transfer_properties(&h, &t, &delta_map, &samples, &targets, &section, true);
        assert!(r.exact);
        assert!(r.weak_transfer(), "{:?}", r.counterexamples);
        assert!(r.isoatomic);
        assert_eq!(r.t2, Some(false));
    }

    #[test]
    fn det_is_transfer() {
        let h = FullMatrixSemigroup::new(2, 2, 30);
        let t = NaturalNumbers { bound: 30 };
        let samples: Vec<IntMatrix> = h.elements().map(|e| e.value).collect();
        let targets: Vec<u64> = t.elements().map(|e| e.value).collect();
        let section = |d: &u64| Some(IntMatrix::diagonal(&[*d as i64, 1]));
        let r = verify_transfer_properties(&h, &t, &|a: &IntMatrix| a.abs_det(), &samples, &targets, &section, true);
        assert!(r.exact);
        assert!(
            r.weak_transfer() && r.isoatomic && r.t2 == Some(true),
            "{:?}",
            r.counterexamples
        );
    }

    #[test]
    fn identity_on_commutative_handle() {
        let t = NaturalNumbers { bound: 40 };
        let samples: Vec<u64> = t.elements().map(|e| e.value).collect();
        let r = verify_transfer_properties(&t, &t, &|x: &u64| *x, &samples, &samples, &|x: &u64| Some(*x), true);
        assert!(r.weak_transfer() && r.isoatomic && r.t2 == Some(true));
    }
}
