//! Finitely generated class lattices with a declared intersection pairing.
//!
//! A [`Lattice`] is a free ℤ-module on labelled basis elements, a symmetric
//! Gram matrix giving the pairing between basis elements, an optional list
//! of relations (classes declared ≡ 0, e.g. two representatives of the same
//! fibre class), an optional canonical class, and an optional conjugation
//! acting as a signed permutation of the basis.
//!
//! Divisor classes are [`ClassVector`]s: integer coordinate vectors tied to
//! their lattice. All pairings go through the Gram matrix; equivalence of
//! classes is membership of their difference in the ℤ-span of the
//! relations.

use crate::exact::{dot, in_integer_span, Int, IntMatrix};
use num_traits::Zero;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("class belongs to lattice '{left}', expected '{right}'")]
    LatticeMismatch { left: String, right: String },
    #[error("coordinate vector has length {got}, lattice rank is {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("unknown basis or class label '{label}'")]
    UnknownLabel { label: String },
    #[error("lattice '{lattice}' declares no conjugation")]
    NoConjugation { lattice: String },
    #[error("lattice '{lattice}' declares no canonical class")]
    NoCanonical { lattice: String },
    #[error("invalid signed permutation: {detail}")]
    InvalidPermutation { detail: String },
}

/// A signed permutation of the basis: basis element `i` is sent to
/// `±basis[target(i)]`. This is the shape every conjugation in this crate
/// takes (curves map to their conjugate curves, possibly with a sign).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPermutation {
    /// `targets[i] = (j, negate)` meaning eᵢ ↦ eⱼ (negated if `negate`).
    targets: Vec<(usize, bool)>,
}

impl SignedPermutation {
    pub fn new(targets: Vec<(usize, bool)>) -> Result<Self, LatticeError> {
        let n = targets.len();
        let mut seen = vec![false; n];
        for &(j, _) in &targets {
            if j >= n {
                return Err(LatticeError::InvalidPermutation {
                    detail: format!("target index {j} out of range for rank {n}"),
                });
            }
            if seen[j] {
                return Err(LatticeError::InvalidPermutation {
                    detail: format!("target index {j} hit twice"),
                });
            }
            seen[j] = true;
        }
        Ok(SignedPermutation { targets })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            targets: (0..n).map(|i| (i, false)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn target(&self, i: usize) -> (usize, bool) {
        self.targets[i]
    }

    /// Image of a coordinate vector.
    pub fn apply(&self, coords: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); coords.len()];
        for (i, &(j, neg)) in self.targets.iter().enumerate() {
            out[j] = if neg { -coords[i].clone() } else { coords[i].clone() };
        }
        out
    }

    /// σ∘σ = id, including signs.
    pub fn is_involution(&self) -> bool {
        self.targets.iter().enumerate().all(|(i, &(j, neg))| {
            let (jj, neg2) = self.targets[j];
            jj == i && neg == neg2
        })
    }

    /// Extend with further (already validated) targets — used when blowing
    /// up conjugate point pairs.
    pub fn extended(&self, extra: Vec<(usize, bool)>) -> Result<Self, LatticeError> {
        let mut targets = self.targets.clone();
        targets.extend(extra);
        SignedPermutation::new(targets)
    }
}

/// One problem found by [`Lattice::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    GramShape { rows: usize, cols: usize, rank: usize },
    GramAsymmetric { i: String, j: String },
    DuplicateLabel { label: String },
    EmptyLabel { index: usize },
    RelationLength { relation: usize, len: usize, expected: usize },
    /// gram·r ≠ 0: the relation pairs nonzero against this basis element.
    RelationNotOrthogonal { relation: usize, basis: String, value: Int },
    CanonicalLength { len: usize, expected: usize },
    ConjugationSize { len: usize, expected: usize },
    ConjugationNotInvolution,
    ConjugationBreaksGram { i: String, j: String },
    CanonicalNotConjugationFixed,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::GramShape { rows, cols, rank } => {
                write!(f, "gram matrix is {rows}x{cols} but the basis has {rank} elements")
            }
            ValidationIssue::GramAsymmetric { i, j } => {
                write!(f, "gram matrix asymmetric at ({i},{j})")
            }
            ValidationIssue::DuplicateLabel { label } => {
                write!(f, "duplicate basis label '{label}'")
            }
            ValidationIssue::EmptyLabel { index } => write!(f, "basis label {index} is empty"),
            ValidationIssue::RelationLength { relation, len, expected } => {
                write!(f, "relation {relation} has length {len}, expected {expected}")
            }
            ValidationIssue::RelationNotOrthogonal { relation, basis, value } => write!(
                f,
                "relation {relation} pairs nonzero ({value}) against basis element '{basis}'"
            ),
            ValidationIssue::CanonicalLength { len, expected } => {
                write!(f, "canonical class has length {len}, expected {expected}")
            }
            ValidationIssue::ConjugationSize { len, expected } => {
                write!(f, "conjugation acts on {len} elements, expected {expected}")
            }
            ValidationIssue::ConjugationNotInvolution => {
                write!(f, "conjugation is not an involution")
            }
            ValidationIssue::ConjugationBreaksGram { i, j } => write!(
                f,
                "conjugation does not preserve the pairing of ('{i}','{j}')"
            ),
            ValidationIssue::CanonicalNotConjugationFixed => {
                write!(f, "canonical class is not conjugation-fixed modulo relations")
            }
        }
    }
}

/// Result of validating a lattice: empty issue list means valid.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            write!(f, "valid")
        } else {
            for (k, issue) in self.issues.iter().enumerate() {
                if k > 0 {
                    writeln!(f)?;
                }
                write!(f, "{issue}")?;
            }
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    pub name: String,
    pub basis_labels: Vec<String>,
    pub gram: IntMatrix,
    /// Classes declared ≡ 0; equivalence of classes is difference ∈ ℤ-span.
    pub relations: Vec<Vec<Int>>,
    pub canonical: Option<Vec<Int>>,
    pub conjugation: Option<SignedPermutation>,
}

impl Lattice {
    pub fn rank(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.basis_labels.iter().position(|l| l == label)
    }

    /// Check every structural invariant; returns all problems found rather
    /// than stopping at the first.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        let n = self.rank();
        for (i, l) in self.basis_labels.iter().enumerate() {
            if l.is_empty() {
                issues.push(ValidationIssue::EmptyLabel { index: i });
            }
            if self.basis_labels[..i].contains(l) {
                issues.push(ValidationIssue::DuplicateLabel { label: l.clone() });
            }
        }
        if self.gram.rows() != n || self.gram.cols() != n {
            issues.push(ValidationIssue::GramShape {
                rows: self.gram.rows(),
                cols: self.gram.cols(),
                rank: n,
            });
            // Remaining checks all need a well-shaped gram matrix.
            return ValidationReport { issues };
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if self.gram.at(i, j) != self.gram.at(j, i) {
                    issues.push(ValidationIssue::GramAsymmetric {
                        i: self.basis_labels[i].clone(),
                        j: self.basis_labels[j].clone(),
                    });
                }
            }
        }
        for (k, r) in self.relations.iter().enumerate() {
            if r.len() != n {
                issues.push(ValidationIssue::RelationLength {
                    relation: k,
                    len: r.len(),
                    expected: n,
                });
                continue;
            }
            // A declared relation must be orthogonal to the whole lattice:
            // gram·r = 0, reported per offending basis element.
            let image = self.gram.mul_vec(r).expect("shape checked above");
            for (i, v) in image.iter().enumerate() {
                if !v.is_zero() {
                    issues.push(ValidationIssue::RelationNotOrthogonal {
                        relation: k,
                        basis: self.basis_labels[i].clone(),
                        value: v.clone(),
                    });
                }
            }
        }
        if let Some(kc) = &self.canonical {
            if kc.len() != n {
                issues.push(ValidationIssue::CanonicalLength {
                    len: kc.len(),
                    expected: n,
                });
            }
        }
        if let Some(conj) = &self.conjugation {
            if conj.len() != n {
                issues.push(ValidationIssue::ConjugationSize {
                    len: conj.len(),
                    expected: n,
                });
            } else {
                if !conj.is_involution() {
                    issues.push(ValidationIssue::ConjugationNotInvolution);
                }
                'outer: for i in 0..n {
                    for j in 0..n {
                        let (ti, ni) = conj.target(i);
                        let (tj, nj) = conj.target(j);
                        let mut lhs = self.gram.at(ti, tj).clone();
                        if ni != nj {
                            lhs = -lhs;
                        }
                        if &lhs != self.gram.at(i, j) {
                            issues.push(ValidationIssue::ConjugationBreaksGram {
                                i: self.basis_labels[i].clone(),
                                j: self.basis_labels[j].clone(),
                            });
                            break 'outer;
                        }
                    }
                }
                if let Some(kc) = &self.canonical {
                    if kc.len() == n {
                        let conj_k = conj.apply(kc);
                        let diff: Vec<Int> =
                            kc.iter().zip(&conj_k).map(|(a, b)| a - b).collect();
                        let well_shaped =
                            self.relations.iter().all(|r| r.len() == n);
                        let fixed = well_shaped
                            && in_integer_span(&self.relations, &diff).unwrap_or(false);
                        if !fixed {
                            issues.push(ValidationIssue::CanonicalNotConjugationFixed);
                        }
                    }
                }
            }
        }
        ValidationReport { issues }
    }

    pub fn class(self: &Arc<Self>, coords: Vec<Int>) -> Result<ClassVector, LatticeError> {
        if coords.len() != self.rank() {
            return Err(LatticeError::WrongLength {
                got: coords.len(),
                expected: self.rank(),
            });
        }
        Ok(ClassVector {
            lattice: Arc::clone(self),
            coords,
        })
    }

    pub fn zero_class(self: &Arc<Self>) -> ClassVector {
        ClassVector {
            lattice: Arc::clone(self),
            coords: vec![Int::zero(); self.rank()],
        }
    }

    /// Class from (basis label, coefficient) terms; repeated labels add up.
    pub fn class_from_terms(
        self: &Arc<Self>,
        terms: &[(&str, Int)],
    ) -> Result<ClassVector, LatticeError> {
        let mut coords = vec![Int::zero(); self.rank()];
        for (label, c) in terms {
            let i = self
                .label_index(label)
                .ok_or_else(|| LatticeError::UnknownLabel {
                    label: (*label).to_string(),
                })?;
            coords[i] += c;
        }
        self.class(coords)
    }

    pub fn basis_class(self: &Arc<Self>, label: &str) -> Result<ClassVector, LatticeError> {
        self.class_from_terms(&[(label, Int::from(1))])
    }

    pub fn canonical_class(self: &Arc<Self>) -> Result<ClassVector, LatticeError> {
        let kc = self
            .canonical
            .clone()
            .ok_or_else(|| LatticeError::NoCanonical {
                lattice: self.name.clone(),
            })?;
        self.class(kc)
    }
}

fn same_lattice(a: &Arc<Lattice>, b: &Arc<Lattice>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A divisor class: integer coordinates over its lattice's basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassVector {
    lattice: Arc<Lattice>,
    coords: Vec<Int>,
}

impl ClassVector {
    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &ClassVector) -> Result<(), LatticeError> {
        if same_lattice(&self.lattice, &other.lattice) {
            Ok(())
        } else {
            Err(LatticeError::LatticeMismatch {
                left: other.lattice.name.clone(),
                right: self.lattice.name.clone(),
            })
        }
    }

    pub fn try_add(&self, other: &ClassVector) -> Result<ClassVector, LatticeError> {
        self.check_same(other)?;
        Ok(ClassVector {
            lattice: Arc::clone(&self.lattice),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &ClassVector) -> Result<ClassVector, LatticeError> {
        self.check_same(other)?;
        Ok(ClassVector {
            lattice: Arc::clone(&self.lattice),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> ClassVector {
        ClassVector {
            lattice: Arc::clone(&self.lattice),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &Int) -> ClassVector {
        ClassVector {
            lattice: Arc::clone(&self.lattice),
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    /// Intersection pairing d₁ᵀ·G·d₂.
    pub fn pair(&self, other: &ClassVector) -> Result<Int, LatticeError> {
        self.check_same(other)?;
        let gv = self
            .lattice
            .gram
            .mul_vec(&other.coords)
            .map_err(|_| LatticeError::WrongLength {
                got: other.coords.len(),
                expected: self.lattice.gram.cols(),
            })?;
        Ok(dot(&self.coords, &gv))
    }

    pub fn self_intersection(&self) -> Result<Int, LatticeError> {
        self.pair(self)
    }

    /// Equality modulo the declared relations.
    pub fn equivalent(&self, other: &ClassVector) -> Result<bool, LatticeError> {
        self.check_same(other)?;
        let diff: Vec<Int> = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        in_integer_span(&self.lattice.relations, &diff).map_err(|_| LatticeError::WrongLength {
            got: diff.len(),
            expected: self.lattice.rank(),
        })
    }

    /// Image under the declared conjugation.
    pub fn conjugate(&self) -> Result<ClassVector, LatticeError> {
        let conj = self
            .lattice
            .conjugation
            .as_ref()
            .ok_or_else(|| LatticeError::NoConjugation {
                lattice: self.lattice.name.clone(),
            })?;
        Ok(ClassVector {
            lattice: Arc::clone(&self.lattice),
            coords: conj.apply(&self.coords),
        })
    }
}

impl fmt::Display for ClassVector {
    /// `2·C0 + C1 - C5` style, `0` for the zero class.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.lattice.basis_labels, &self.coords)
    }
}

/// Shared pretty-printer for integer linear combinations of labelled
/// generators.
pub(crate) fn write_terms(
    f: &mut fmt::Formatter<'_>,
    labels: &[String],
    coords: &[Int],
) -> fmt::Result {
    use num_traits::Signed;
    let mut first = true;
    for (i, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let label = &labels[i];
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        if mag == Int::from(1) {
            write!(f, "{label}")?;
        } else {
            write!(f, "{mag}·{label}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use proptest::prelude::*;

    /// Small two-component lattice with one relation and a conjugation
    /// swapping the halves: basis {a, b, ab, bb} in two degenerate blocks
    /// [[-1,1],[1,-1]] whose radicals are spanned by a+b and ab+bb, so the
    /// relation a+b ≡ ab+bb is orthogonal to the whole lattice.
    fn toy() -> Arc<Lattice> {
        Arc::new(Lattice {
            name: "toy".into(),
            basis_labels: vec!["a".into(), "b".into(), "ab".into(), "bb".into()],
            gram: IntMatrix::from_i64(&[
                &[-1, 1, 0, 0],
                &[1, -1, 0, 0],
                &[0, 0, -1, 1],
                &[0, 0, 1, -1],
            ]),
            relations: vec![vec![int(1), int(1), int(-1), int(-1)]],
            canonical: Some(vec![int(-1), int(-1), int(-1), int(-1)]),
            conjugation: Some(
                SignedPermutation::new(vec![(2, false), (3, false), (0, false), (1, false)])
                    .unwrap(),
            ),
        })
    }

    #[test]
    fn toy_relation_is_orthogonal() {
        // (1,1,-1,-1) pairs to zero with everything: needed for validate.
        let lat = toy();
        assert!(lat.validate().is_valid(), "{}", lat.validate());
    }

    #[test]
    fn pairing_and_equivalence() {
        let lat = toy();
        let a = lat.basis_class("a").unwrap();
        let b = lat.basis_class("b").unwrap();
        assert_eq!(a.pair(&b).unwrap(), int(1));
        assert_eq!(a.pair(&a).unwrap(), int(-1));
        let ab = lat.basis_class("ab").unwrap();
        let bb = lat.basis_class("bb").unwrap();
        let lhs = a.try_add(&b).unwrap();
        let rhs = ab.try_add(&bb).unwrap();
        assert!(lhs.equivalent(&rhs).unwrap());
        assert!(!lhs.equivalent(&ab).unwrap());
        // Equivalent classes pair equally against everything (relations are
        // orthogonal to the lattice).
        for probe in ["a", "b", "ab", "bb"] {
            let p = lat.basis_class(probe).unwrap();
            assert_eq!(lhs.pair(&p).unwrap(), rhs.pair(&p).unwrap());
        }
    }

    #[test]
    fn pair_with_zero_class() {
        let lat = toy();
        let a = lat.basis_class("a").unwrap();
        assert_eq!(a.pair(&lat.zero_class()).unwrap(), int(0));
    }

    #[test]
    fn conjugation_swaps_and_fixes_canonical() {
        let lat = toy();
        let a = lat.basis_class("a").unwrap();
        let ab = lat.basis_class("ab").unwrap();
        assert_eq!(a.conjugate().unwrap(), ab);
        let k = lat.canonical_class().unwrap();
        assert!(k.conjugate().unwrap().equivalent(&k).unwrap());
    }

    #[test]
    fn lattice_mismatch_is_reported() {
        let l1 = toy();
        let l2 = Arc::new(Lattice {
            name: "other".into(),
            basis_labels: vec!["x".into()],
            gram: IntMatrix::from_i64(&[&[-1]]),
            relations: vec![],
            canonical: None,
            conjugation: None,
        });
        let a = l1.basis_class("a").unwrap();
        let x = l2.basis_class("x").unwrap();
        assert!(matches!(
            a.pair(&x),
            Err(LatticeError::LatticeMismatch { .. })
        ));
        // Structurally equal lattices interoperate even as separate Arcs.
        let l1_clone = Arc::new((*l1).clone());
        let a2 = l1_clone.basis_class("a").unwrap();
        assert_eq!(a.pair(&a2).unwrap(), int(-1));
    }

    #[test]
    fn validate_flags_bad_relation() {
        let mut lat = (*toy()).clone();
        lat.relations.push(vec![int(1), int(0), int(0), int(0)]);
        let report = lat.validate();
        assert!(!report.is_valid());
        // gram·r has a nonzero pairing against 'b' (a·b = 1).
        assert!(report.issues.iter().any(|i| matches!(
            i,
            ValidationIssue::RelationNotOrthogonal { relation: 1, basis, .. } if basis == "b"
        )));
    }

    #[test]
    fn validate_flags_asymmetric_gram() {
        let lat = Lattice {
            name: "bad".into(),
            basis_labels: vec!["x".into(), "y".into()],
            gram: IntMatrix::from_i64(&[&[0, 1], &[2, 0]]),
            relations: vec![],
            canonical: None,
            conjugation: None,
        };
        assert!(lat
            .validate()
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::GramAsymmetric { .. })));
    }

    #[test]
    fn validate_flags_non_involution() {
        let mut lat = (*toy()).clone();
        // 4-cycle: not an involution.
        lat.conjugation = Some(
            SignedPermutation::new(vec![(1, false), (2, false), (3, false), (0, false)]).unwrap(),
        );
        assert!(lat
            .validate()
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::ConjugationNotInvolution)));
    }

    #[test]
    fn validate_flags_sign_breaking_gram() {
        // Negating one element of a hyperbolic pair flips its pairing.
        let lat = Lattice {
            name: "signed".into(),
            basis_labels: vec!["x".into(), "y".into()],
            gram: IntMatrix::from_i64(&[&[0, 1], &[1, 0]]),
            relations: vec![],
            canonical: None,
            conjugation: Some(SignedPermutation::new(vec![(0, true), (1, false)]).unwrap()),
        };
        assert!(lat
            .validate()
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::ConjugationBreaksGram { .. })));
    }

    #[test]
    fn signed_negation_preserving_zero_gram() {
        // On a zero Gram matrix any signed involution is fine.
        let lat = Lattice {
            name: "h2".into(),
            basis_labels: vec!["F".into(), "alpha1".into()],
            gram: IntMatrix::zero(2, 2),
            relations: vec![],
            canonical: None,
            conjugation: Some(SignedPermutation::new(vec![(0, false), (1, true)]).unwrap()),
        };
        assert!(lat.validate().is_valid());
        let lat = Arc::new(lat);
        let a = lat.basis_class("alpha1").unwrap();
        assert_eq!(a.conjugate().unwrap(), a.neg());
    }

    #[test]
    fn display_formats_terms() {
        let lat = toy();
        let c = lat
            .class_from_terms(&[("a", int(2)), ("b", int(1)), ("bb", int(-1))])
            .unwrap();
        assert_eq!(format!("{c}"), "2·a + b - bb");
        assert_eq!(format!("{}", lat.zero_class()), "0");
    }

    #[test]
    fn unknown_label_errors() {
        let lat = toy();
        assert!(matches!(
            lat.class_from_terms(&[("nope", int(1))]),
            Err(LatticeError::UnknownLabel { .. })
        ));
    }

    proptest! {
        #[test]
        fn pair_is_symmetric_and_bilinear(
            c1 in proptest::collection::vec(-5i64..=5, 4),
            c2 in proptest::collection::vec(-5i64..=5, 4),
            c3 in proptest::collection::vec(-5i64..=5, 4),
            s in -3i64..=3
        ) {
            let lat = toy();
            let d1 = lat.class(c1.iter().map(|&v| int(v)).collect()).unwrap();
            let d2 = lat.class(c2.iter().map(|&v| int(v)).collect()).unwrap();
            let d3 = lat.class(c3.iter().map(|&v| int(v)).collect()).unwrap();
            prop_assert_eq!(d1.pair(&d2).unwrap(), d2.pair(&d1).unwrap());
            let lhs = d1.try_add(&d2.scale(&int(s))).unwrap().pair(&d3).unwrap();
            let rhs = d1.pair(&d3).unwrap() + int(s) * d2.pair(&d3).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn conjugation_preserves_pairing(
            c1 in proptest::collection::vec(-5i64..=5, 4),
            c2 in proptest::collection::vec(-5i64..=5, 4)
        ) {
            let lat = toy();
            let d1 = lat.class(c1.iter().map(|&v| int(v)).collect()).unwrap();
            let d2 = lat.class(c2.iter().map(|&v| int(v)).collect()).unwrap();
            prop_assert_eq!(
                d1.conjugate().unwrap().pair(&d2.conjugate().unwrap()).unwrap(),
                d1.pair(&d2).unwrap()
            );
        }

        #[test]
        fn equivalence_respects_relation_shifts(
            c in proptest::collection::vec(-5i64..=5, 4),
            k in -4i64..=4
        ) {
            let lat = toy();
            let d = lat.class(c.iter().map(|&v| int(v)).collect()).unwrap();
            let r = lat.class(lat.relations[0].clone()).unwrap();
            let shifted = d.try_add(&r.scale(&int(k))).unwrap();
            prop_assert!(d.equivalent(&shifted).unwrap());
            // Pairings agree for equivalent classes.
            let probe = lat.basis_class("a").unwrap();
            prop_assert_eq!(d.pair(&probe).unwrap(), shifted.pair(&probe).unwrap());
        }
    }
}
