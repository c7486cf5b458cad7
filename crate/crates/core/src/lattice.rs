//! Exact symmetric bilinear-form algebra over labeled divisor bases.
//!
//! A lattice is an ordered basis of labels together with a symmetric Gram
//! matrix of rationals; divisor classes are sparse rational vectors over
//! those labels. The two presets carry the intersection data of the full
//! resolutions of an A3 and an A4 point: the pullback of the ample class
//! (label `H`) plus the exceptional chain pieces `C0..C3`.
//!
//! By default the preliminary blow-up chain is trivial, so the ample class
//! on the intermediate surface is identified with `H` and `H.H = c`
//! exactly. A nontrivial chain is supported by constructing an extended
//! basis and Gram matrix through [`IntersectionLattice::from_gram`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Label of the pulled-back ample class of the singular surface.
pub const HBAR: &str = "H";

/// Label of the i-th exceptional curve of the resolved point.
pub fn exceptional(i: usize) -> String {
    format!("C{i}")
}

/// Sparse exact-rational divisor class. Zero coefficients are never stored,
/// so equality of the coefficient maps is equality of classes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass {
    coeffs: BTreeMap<String, Rational>,
}

impl DivisorClass {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Single basis class with coefficient 1.
    pub fn basis(label: &str) -> Self {
        Self::from_terms([(label.to_string(), Rational::one())])
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (String, Rational)>,
    {
        let mut coeffs: BTreeMap<String, Rational> = BTreeMap::new();
        for (label, value) in terms {
            let entry = coeffs.entry(label).or_insert_with(Rational::zero);
            *entry += &value;
        }
        coeffs.retain(|_, v| !v.is_zero());
        DivisorClass { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `label`, zero when absent.
    pub fn coeff(&self, label: &str) -> Rational {
        self.coeffs.get(label).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.coeffs.iter().map(|(l, v)| (l.as_str(), v))
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(String::as_str)
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .map(|(l, v)| (l.clone(), v * factor)),
        )
    }

    /// `self + factor * other` without intermediate clones of the maps.
    pub fn plus_scaled(&self, other: &Self, factor: &Rational) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .map(|(l, v)| (l.clone(), v.clone()))
                .chain(other.coeffs.iter().map(|(l, v)| (l.clone(), v * factor))),
        )
    }
}

impl std::ops::Add<&DivisorClass> for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.plus_scaled(rhs, &Rational::one())
    }
}

impl std::ops::Sub<&DivisorClass> for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.plus_scaled(rhs, &-Rational::one())
    }
}

impl std::ops::Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scaled(&-Rational::one())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        // H first, then the rest in label order
        let mut ordered: Vec<(&str, &Rational)> = self.terms().collect();
        ordered.sort_by_key(|(l, _)| (*l != HBAR, l.to_string()));
        for (idx, (label, value)) in ordered.into_iter().enumerate() {
            let (sign, mag) = if value.is_negative() {
                ("-", value.abs())
            } else {
                ("+", value.clone())
            };
            if idx == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag == Rational::one() {
                write!(f, "{label}")?;
            } else {
                write!(f, "{mag}*{label}")?;
            }
        }
        Ok(())
    }
}

/// Labeled basis with a symmetric exact-rational Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    basis: Vec<String>,
    index: BTreeMap<String, usize>,
    gram: Vec<Vec<Rational>>,
}

impl IntersectionLattice {
    /// Builds a lattice from an ordered basis and a symmetric Gram matrix.
    pub fn from_gram(basis: Vec<String>, gram: Vec<Vec<Rational>>) -> Result<Self> {
        let n = basis.len();
        if gram.len() != n || gram.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidParameter(format!(
                "gram matrix must be {n}x{n} to match the basis"
            )));
        }
        let mut index = BTreeMap::new();
        for (i, label) in basis.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "duplicate basis label `{label}`"
                )));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidParameter(format!(
                        "gram matrix is not symmetric at ({}, {})",
                        basis[i], basis[j]
                    )));
                }
            }
        }
        Ok(IntersectionLattice { basis, index, gram })
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn gram_entry(&self, a: &str, b: &str) -> Result<&Rational> {
        let i = self.position(a)?;
        let j = self.position(b)?;
        Ok(&self.gram[i][j])
    }

    fn position(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Bilinear extension of the Gram matrix to sparse classes.
    pub fn pair(&self, d1: &DivisorClass, d2: &DivisorClass) -> Result<Rational> {
        let mut total = Rational::zero();
        for (la, va) in d1.terms() {
            let i = self.position(la)?;
            for (lb, vb) in d2.terms() {
                let j = self.position(lb)?;
                total += &(&(va * vb) * &self.gram[i][j]);
            }
        }
        Ok(total)
    }

    pub fn self_intersection(&self, d: &DivisorClass) -> Result<Rational> {
        self.pair(d, d)
    }

    /// Intersection data of the full resolution of an A3 point: `C0` is the
    /// exceptional curve of the second blow-up, `C1`, `C2` the two halves of
    /// the first exceptional divisor. `c = H.H` must be a positive integer.
    pub fn preset_a3(c: u64) -> Result<Self> {
        require_positive(c)?;
        let labels = [HBAR.to_string(), exceptional(0), exceptional(1), exceptional(2)];
        let r = |p: i64, q: i64| Rational::new(p, q).expect("nonzero denominator");
        let cc = Rational::integer(c);
        let z = Rational::zero();
        let gram = vec![
            vec![cc, z.clone(), z.clone(), z.clone()],
            vec![z.clone(), r(-2, 1), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), r(-3, 2), r(1, 2)],
            vec![z.clone(), z.clone(), r(1, 2), r(-3, 2)],
        ];
        Self::from_gram(labels.to_vec(), gram)
    }

    /// Intersection data of the full resolution of an A4 point: `C0`, `C1`
    /// come from the second blow-up (an A2 point), `C2`, `C3` from the first.
    pub fn preset_a4(c: u64) -> Result<Self> {
        require_positive(c)?;
        let labels = [
            HBAR.to_string(),
            exceptional(0),
            exceptional(1),
            exceptional(2),
            exceptional(3),
        ];
        let r = |p: i64, q: i64| Rational::new(p, q).expect("nonzero denominator");
        let cc = Rational::integer(c);
        let z = Rational::zero();
        let gram = vec![
            vec![cc, z.clone(), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), r(-2, 1), r(1, 1), z.clone(), z.clone()],
            vec![z.clone(), r(1, 1), r(-2, 1), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), r(-4, 3), r(1, 3)],
            vec![z.clone(), z.clone(), z.clone(), r(1, 3), r(-4, 3)],
        ];
        Self::from_gram(labels.to_vec(), gram)
    }
}

fn require_positive(c: u64) -> Result<()> {
    if c < 1 {
        return Err(Error::InvalidParameter(
            "H.H = c must be a positive integer".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    fn class(terms: &[(&str, Rational)]) -> DivisorClass {
        DivisorClass::from_terms(terms.iter().map(|(l, v)| (l.to_string(), v.clone())))
    }

    /// Dense double loop over all basis pairs; deliberately ignores the
    /// sparse representation so it can cross-check `pair`.
    fn naive_pair(l: &IntersectionLattice, d1: &DivisorClass, d2: &DivisorClass) -> Rational {
        let mut total = Rational::zero();
        for (i, a) in l.basis().iter().enumerate() {
            for (j, b) in l.basis().iter().enumerate() {
                let term = &(&d1.coeff(a) * &d2.coeff(b)) * &l.gram[i][j];
                total += &term;
            }
        }
        total
    }

    #[test]
    fn preset_a3_gram_values() {
        let l = IntersectionLattice::preset_a3(1).unwrap();
        assert_eq!(l.gram_entry("C1", "C2").unwrap(), &r(1, 2));
        assert_eq!(l.gram_entry("C0", "C1").unwrap(), &r(0, 1));
        assert_eq!(l.gram_entry("C0", "C0").unwrap(), &r(-2, 1));
        assert_eq!(l.gram_entry("C1", "C1").unwrap(), &r(-3, 2));
        let l5 = IntersectionLattice::preset_a3(5).unwrap();
        assert_eq!(l5.gram_entry("H", "H").unwrap(), &r(5, 1));
    }

    #[test]
    fn preset_a4_gram_values() {
        let l = IntersectionLattice::preset_a4(1).unwrap();
        assert_eq!(l.gram_entry("C2", "C3").unwrap(), &r(1, 3));
        assert_eq!(l.gram_entry("C0", "C2").unwrap(), &r(0, 1));
        assert_eq!(l.gram_entry("C0", "C1").unwrap(), &r(1, 1));
        assert_eq!(l.gram_entry("C2", "C2").unwrap(), &r(-4, 3));
        let l7 = IntersectionLattice::preset_a4(7).unwrap();
        assert_eq!(l7.gram_entry("H", "H").unwrap(), &r(7, 1));
    }

    #[test]
    fn preset_rejects_c_zero() {
        assert!(IntersectionLattice::preset_a3(0).is_err());
        assert!(IntersectionLattice::preset_a4(0).is_err());
    }

    #[test]
    fn pair_basis_curves() {
        let l = IntersectionLattice::preset_a3(1).unwrap();
        let c1 = DivisorClass::basis("C1");
        let c2 = DivisorClass::basis("C2");
        assert_eq!(l.pair(&c1, &c2).unwrap(), r(1, 2));
        assert_eq!(l.pair(&DivisorClass::zero(), &c2).unwrap(), Rational::zero());
    }

    #[test]
    fn self_intersection_of_c0_in_both_presets() {
        for l in [
            IntersectionLattice::preset_a3(1).unwrap(),
            IntersectionLattice::preset_a4(3).unwrap(),
        ] {
            let c0 = DivisorClass::basis("C0");
            assert_eq!(l.self_intersection(&c0).unwrap(), r(-2, 1));
        }
    }

    #[test]
    fn d0_square_matches_hand_expansion() {
        // (H - 14 C0 - 2 C1)^2 = 1 + 196*(-2) + 4*(-3/2) = -397
        let l = IntersectionLattice::preset_a3(1).unwrap();
        let d0 = class(&[("H", r(1, 1)), ("C0", r(-14, 1)), ("C1", r(-2, 1))]);
        let got = l.self_intersection(&d0).unwrap();
        assert_eq!(got, r(-397, 1));
        assert_eq!(got, naive_pair(&l, &d0, &d0));
    }

    #[test]
    fn unknown_label_is_rejected() {
        let l = IntersectionLattice::preset_a3(1).unwrap();
        let d = DivisorClass::basis("C3");
        assert!(matches!(l.pair(&d, &d), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn asymmetric_gram_is_rejected() {
        let bad = IntersectionLattice::from_gram(
            vec!["A".into(), "B".into()],
            vec![vec![r(1, 1), r(2, 1)], vec![r(3, 1), r(1, 1)]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn zero_coefficients_are_never_stored() {
        let d = class(&[("H", r(1, 1)), ("C0", r(0, 1))]);
        assert_eq!(d.labels().count(), 1);
        let cancel = &d - &DivisorClass::basis("H");
        assert!(cancel.is_zero());
    }

    fn sparse_class_strategy() -> impl Strategy<Value = DivisorClass> {
        let labels = ["H", "C0", "C1", "C2"];
        proptest::collection::vec((0usize..4, -50i64..50, 1i64..12), 0..4).prop_map(move |terms| {
            DivisorClass::from_terms(
                terms
                    .into_iter()
                    .map(|(i, p, q)| (labels[i].to_string(), Rational::new(p, q).unwrap())),
            )
        })
    }

    proptest! {
        #[test]
        fn pairing_is_symmetric(a in sparse_class_strategy(), b in sparse_class_strategy(), c in 1u64..20) {
            let l = IntersectionLattice::preset_a3(c).unwrap();
            prop_assert_eq!(l.pair(&a, &b).unwrap(), l.pair(&b, &a).unwrap());
        }

        #[test]
        fn pairing_is_bilinear(
            a in sparse_class_strategy(),
            b in sparse_class_strategy(),
            cc in sparse_class_strategy(),
            ap in -20i64..20, aq in 1i64..8,
            bp in -20i64..20, bq in 1i64..8,
        ) {
            let l = IntersectionLattice::preset_a3(1).unwrap();
            let alpha = Rational::new(ap, aq).unwrap();
            let beta = Rational::new(bp, bq).unwrap();
            let combo = a.scaled(&alpha).plus_scaled(&b, &beta);
            let lhs = l.pair(&combo, &cc).unwrap();
            let rhs = &(&alpha * &l.pair(&a, &cc).unwrap()) + &(&beta * &l.pair(&b, &cc).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pair_agrees_with_dense_double_loop(a in sparse_class_strategy(), b in sparse_class_strategy()) {
            let l = IntersectionLattice::preset_a3(3).unwrap();
            prop_assert_eq!(l.pair(&a, &b).unwrap(), naive_pair(&l, &a, &b));
        }
    }
}
