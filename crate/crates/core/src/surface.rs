//! Rational surfaces as lattices with extra structure.
//!
//! A [`SurfaceModel`] wraps a class lattice with the data that makes
//! surface-level computations meaningful: χ(O), how many points have been
//! blown up, whether the surface is declared to be a blow-up of the smooth
//! quadric, and a dictionary of named curve classes (kept up to date as
//! strict transforms under further blow-ups).
//!
//! On top of that sit the classical tools: blow-up at points with assigned
//! multiplicities, adjunction genus, surface Riemann–Roch, χ of the tangent
//! sheaf for quadric blow-ups, and Zariski decomposition by the classical
//! support-enlargement loop with exact negative-definiteness certificates.

use crate::exact::{int, rat, Int, IntMatrix, LinearSolution, Rat};
use crate::lattice::{ClassVector, Lattice, LatticeError, SignedPermutation};
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("unknown curve '{name}' on surface '{surface}'")]
    UnknownCurve { surface: String, name: String },
    #[error("name '{name}' already in use on surface '{surface}'")]
    DuplicateName { surface: String, name: String },
    #[error("{what} of {class} is not an integer: {value} is odd")]
    NonIntegral {
        what: &'static str,
        class: String,
        value: Int,
    },
    #[error("operation '{op}' needs a declared quadric base; surface '{surface}' is abstract")]
    UnsupportedBase { surface: String, op: &'static str },
    #[error("invalid parameter: {detail}")]
    InvalidParameter { detail: String },
    #[error("negativity certificate failed: {stage}")]
    CertificateFailure { stage: String },
    #[error("invalid multiplicity {value} for curve '{curve}' (must be ≥ 0)")]
    NegativeMultiplicity { curve: String, value: Int },
    #[error("surface '{surface}' failed validation: {detail}")]
    InvalidSurface { surface: String, detail: String },
}

/// What the surface is declared to be built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    /// A (possibly iterated) blow-up of the smooth quadric; `blowup_count`
    /// is meaningful and K² = 8 − blowup_count holds.
    Quadric,
    /// Anything else; point-count-based operations are unsupported.
    Abstract,
}

/// A point to blow up: which named curves pass through it and with which
/// multiplicity, plus optional conjugation bookkeeping.
#[derive(Debug, Clone, Default)]
pub struct PointSpec {
    /// Basis label for the new exceptional class; autogenerated when absent.
    pub label: Option<String>,
    /// Named curve → multiplicity of that curve at the point (≥ 0).
    pub multiplicities: BTreeMap<String, Int>,
    /// Label of the conjugate point *within the same batch*. When the base
    /// surface carries a conjugation, it extends to the blow-up only if the
    /// batch is closed under this pairing; otherwise the conjugation is
    /// dropped.
    pub conjugate_of: Option<String>,
}

impl PointSpec {
    pub fn simple(label: &str, on: &[(&str, i64)]) -> Self {
        PointSpec {
            label: Some(label.to_string()),
            multiplicities: on.iter().map(|(c, m)| (c.to_string(), int(*m))).collect(),
            conjugate_of: None,
        }
    }

    pub fn conjugate_to(mut self, partner: &str) -> Self {
        self.conjugate_of = Some(partner.to_string());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    pub name: String,
    pub lattice: Arc<Lattice>,
    /// χ(O_S); 1 for every rational surface in scope.
    pub chi_o: Int,
    pub blowup_count: usize,
    pub base_kind: BaseKind,
    /// Named curve classes (strict transforms under blow-up). Basis labels
    /// resolve too, via [`SurfaceModel::resolve`].
    named: BTreeMap<String, Vec<Int>>,
}

impl SurfaceModel {
    /// Smooth quadric: Pic = ℤf₁ ⊕ ℤf₂ with f₁·f₂ = 1, K = −2f₁ − 2f₂.
    /// The real structure acts trivially on classes.
    pub fn quadric() -> SurfaceModel {
        let lattice = Arc::new(Lattice {
            name: "Pic(quadric)".into(),
            basis_labels: vec!["f1".into(), "f2".into()],
            gram: IntMatrix::from_i64(&[&[0, 1], &[1, 0]]),
            relations: vec![],
            canonical: Some(vec![int(-2), int(-2)]),
            conjugation: Some(SignedPermutation::identity(2)),
        });
        let s = SurfaceModel {
            name: "quadric".into(),
            lattice,
            chi_o: int(1),
            blowup_count: 0,
            base_kind: BaseKind::Quadric,
            named: BTreeMap::new(),
        };
        s.with_named_class("K", vec![int(-2), int(-2)])
            .expect("fresh name")
    }

    /// Hirzebruch surface of invariant e: basis {A, fib} with A² = −e,
    /// A·fib = 1, fib² = 0, K = −2A − (e+2)·fib. Declared abstract: it is
    /// not presented as a blow-up of the quadric.
    pub fn hirzebruch(e: u64) -> SurfaceModel {
        let e = int(e as i64);
        let lattice = Arc::new(Lattice {
            name: format!("Pic(F_{e})"),
            basis_labels: vec!["A".into(), "fib".into()],
            gram: IntMatrix::from_rows(vec![
                vec![-e.clone(), int(1)],
                vec![int(1), int(0)],
            ])
            .expect("rectangular"),
            relations: vec![],
            canonical: Some(vec![int(-2), -(e.clone() + int(2))]),
            conjugation: None,
        });
        let k = lattice.canonical.clone().unwrap();
        let s = SurfaceModel {
            name: format!("hirzebruch:{e}"),
            lattice,
            chi_o: int(1),
            blowup_count: 0,
            base_kind: BaseKind::Abstract,
            named: BTreeMap::new(),
        };
        s.with_named_class("K", k).expect("fresh name")
    }

    /// Add a named curve class. Errors if the name collides with a basis
    /// label or an existing named class.
    pub fn with_named_class(mut self, name: &str, coords: Vec<Int>) -> Result<Self, SurfaceError> {
        if self.lattice.label_index(name).is_some() || self.named.contains_key(name) {
            return Err(SurfaceError::DuplicateName {
                surface: self.name.clone(),
                name: name.to_string(),
            });
        }
        if coords.len() != self.lattice.rank() {
            return Err(LatticeError::WrongLength {
                got: coords.len(),
                expected: self.lattice.rank(),
            }
            .into());
        }
        self.named.insert(name.to_string(), coords);
        Ok(self)
    }

    /// Replace an existing named class (used internally for strict-transform
    /// updates and derived sums).
    fn set_named(&mut self, name: &str, coords: Vec<Int>) {
        self.named.insert(name.to_string(), coords);
    }

    pub fn named_classes(&self) -> impl Iterator<Item = (&String, &Vec<Int>)> {
        self.named.iter()
    }

    /// Resolve a name to a class: named classes first, then basis labels.
    pub fn resolve(&self, name: &str) -> Result<ClassVector, SurfaceError> {
        if let Some(coords) = self.named.get(name) {
            return Ok(self.lattice.class(coords.clone())?);
        }
        if self.lattice.label_index(name).is_some() {
            return Ok(self.lattice.basis_class(name)?);
        }
        Err(SurfaceError::UnknownCurve {
            surface: self.name.clone(),
            name: name.to_string(),
        })
    }

    /// Integer linear combination of resolvable names.
    pub fn combination(&self, terms: &[(&str, Int)]) -> Result<ClassVector, SurfaceError> {
        let mut acc = self.lattice.zero_class();
        for (name, c) in terms {
            let cls = self.resolve(name)?.scale(c);
            acc = acc.try_add(&cls)?;
        }
        Ok(acc)
    }

    pub fn canonical(&self) -> Result<ClassVector, SurfaceError> {
        Ok(self.lattice.canonical_class()?)
    }

    pub fn anticanonical(&self) -> Result<ClassVector, SurfaceError> {
        Ok(self.canonical()?.neg())
    }

    /// Blow up a batch of points. Each new exceptional becomes a fresh
    /// basis element with self-intersection −1, orthogonal to everything
    /// old; K gains +E; every named curve C through a point with
    /// multiplicity m becomes its strict transform C − m·E; relations are
    /// unchanged (padded with zeros); χ(O) is unchanged.
    pub fn blowup_points(&self, specs: &[PointSpec]) -> Result<SurfaceModel, SurfaceError> {
        let old_rank = self.lattice.rank();
        let m = specs.len();
        // Assign labels and validate the specs against the current surface.
        let mut labels = Vec::with_capacity(m);
        let mut auto = self.blowup_count;
        for spec in specs {
            let label = match &spec.label {
                Some(l) => l.clone(),
                None => loop {
                    auto += 1;
                    let candidate = format!("E{auto}");
                    if self.lattice.label_index(&candidate).is_none()
                        && !self.named.contains_key(&candidate)
                        && !labels.contains(&candidate)
                    {
                        break candidate;
                    }
                },
            };
            if self.lattice.label_index(&label).is_some()
                || self.named.contains_key(&label)
                || labels.contains(&label)
            {
                return Err(SurfaceError::DuplicateName {
                    surface: self.name.clone(),
                    name: label,
                });
            }
            for (curve, mult) in &spec.multiplicities {
                if !self.named.contains_key(curve) {
                    return Err(SurfaceError::UnknownCurve {
                        surface: self.name.clone(),
                        name: curve.clone(),
                    });
                }
                if mult.is_negative() {
                    return Err(SurfaceError::NegativeMultiplicity {
                        curve: curve.clone(),
                        value: mult.clone(),
                    });
                }
            }
            labels.push(label);
        }

        let rank = old_rank + m;
        let mut gram = IntMatrix::zero(rank, rank);
        for i in 0..old_rank {
            for j in 0..old_rank {
                gram.set(i, j, self.lattice.gram.at(i, j).clone());
            }
        }
        for k in 0..m {
            gram.set(old_rank + k, old_rank + k, int(-1));
        }

        let pad = |v: &[Int]| {
            let mut w = v.to_vec();
            w.resize(rank, Int::zero());
            w
        };
        let relations: Vec<Vec<Int>> = self.lattice.relations.iter().map(|r| pad(r)).collect();
        let canonical = self.lattice.canonical.as_ref().map(|k| {
            let mut w = pad(k);
            for slot in w.iter_mut().skip(old_rank) {
                *slot += 1;
            }
            w
        });

        // Conjugation extends only if the batch pairs off completely.
        let conjugation = match &self.lattice.conjugation {
            None => None,
            Some(base) => {
                let mut extra = Vec::with_capacity(m);
                let mut total = true;
                for spec in specs {
                    match &spec.conjugate_of {
                        None => {
                            total = false;
                            break;
                        }
                        Some(partner) => match labels.iter().position(|l| l == partner) {
                            None => {
                                return Err(SurfaceError::UnknownCurve {
                                    surface: self.name.clone(),
                                    name: partner.clone(),
                                })
                            }
                            Some(j) => extra.push((old_rank + j, false)),
                        },
                    }
                }
                if total {
                    let ext = base.extended(extra)?;
                    if !ext.is_involution() {
                        return Err(SurfaceError::InvalidParameter {
                            detail: "conjugate point pairing is not mutual".into(),
                        });
                    }
                    Some(ext)
                } else {
                    None
                }
            }
        };

        let mut basis_labels = self.lattice.basis_labels.clone();
        basis_labels.extend(labels.iter().cloned());

        let lattice = Arc::new(Lattice {
            name: self.lattice.name.clone(),
            basis_labels,
            gram,
            relations,
            canonical,
            conjugation,
        });

        let mut named: BTreeMap<String, Vec<Int>> =
            self.named.iter().map(|(k, v)| (k.clone(), pad(v))).collect();
        // Strict transforms: subtract multiplicity·E from each named curve.
        for (k, spec) in specs.iter().enumerate() {
            for (curve, mult) in &spec.multiplicities {
                if let Some(coords) = named.get_mut(curve) {
                    coords[old_rank + k] -= mult;
                }
            }
        }
        // The new exceptionals are tracked as named curves too, so later
        // blow-ups on them produce honest strict transforms.
        for (k, label) in labels.iter().enumerate() {
            let mut e = vec![Int::zero(); rank];
            e[old_rank + k] = int(1);
            named.insert(label.clone(), e);
        }
        // K tracks the lattice's canonical class.
        if let Some(kc) = &lattice.canonical {
            named.insert("K".into(), kc.clone());
        }

        Ok(SurfaceModel {
            name: self.name.clone(),
            lattice,
            chi_o: self.chi_o.clone(),
            blowup_count: self.blowup_count + m,
            base_kind: self.base_kind,
            named,
        })
    }

    /// Arithmetic genus from adjunction: g = 1 + (d² + d·K)/2.
    pub fn adjunction_genus(&self, d: &ClassVector) -> Result<Int, SurfaceError> {
        let k = self.canonical()?;
        let v = d.self_intersection()? + d.pair(&k)?;
        if (&v % int(2)).is_zero() {
            Ok(int(1) + v / int(2))
        } else {
            Err(SurfaceError::NonIntegral {
                what: "adjunction genus",
                class: d.to_string(),
                value: v,
            })
        }
    }

    /// Surface Riemann–Roch: χ(L) = χ(O) + (L² − L·K)/2.
    pub fn rr_chi(&self, l: &ClassVector) -> Result<Int, SurfaceError> {
        let k = self.canonical()?;
        let v = l.self_intersection()? - l.pair(&k)?;
        if (&v % int(2)).is_zero() {
            Ok(&self.chi_o + v / int(2))
        } else {
            Err(SurfaceError::NonIntegral {
                what: "Riemann–Roch χ",
                class: l.to_string(),
                value: v,
            })
        }
    }

    /// χ of the tangent sheaf for a declared quadric blow-up:
    /// 6 − 2·(number of blown-up points).
    pub fn theta_chi(&self) -> Result<Int, SurfaceError> {
        match self.base_kind {
            BaseKind::Quadric => Ok(int(6) - int(2) * int(self.blowup_count as i64)),
            BaseKind::Abstract => Err(SurfaceError::UnsupportedBase {
                surface: self.name.clone(),
                op: "theta_chi",
            }),
        }
    }

    /// Zariski decomposition d = P + N by the classical loop: start from
    /// the components pairing negatively with d, solve for N orthogonal to
    /// its own support, then enlarge the support by any component the
    /// remainder still meets negatively, and repeat. Every support set
    /// encountered must have negative-definite Gram — that certificate is
    /// checked exactly and its failure is an error, never a silent fallback.
    pub fn zariski_decompose(
        &self,
        d: &ClassVector,
        components: &[&str],
    ) -> Result<ZariskiDecomposition, SurfaceError> {
        let comps: Vec<ClassVector> = components
            .iter()
            .map(|name| self.resolve(name))
            .collect::<Result<_, _>>()?;
        let m = comps.len();
        let mut pairs = IntMatrix::zero(m, m);
        for i in 0..m {
            for j in 0..m {
                pairs.set(i, j, comps[i].pair(&comps[j])?);
            }
        }
        let d_dot: Vec<Int> = comps
            .iter()
            .map(|c| d.pair(c))
            .collect::<Result<_, _>>()?;

        let mut support: BTreeSet<usize> =
            (0..m).filter(|&i| d_dot[i].is_negative()).collect();
        let coeffs: Vec<Rat> = loop {
            if support.is_empty() {
                break vec![Rat::zero(); m];
            }
            let idx: Vec<usize> = support.iter().copied().collect();
            let sub = pairs.principal_submatrix(&idx);
            let stage = || {
                format!(
                    "support {{{}}}",
                    idx.iter()
                        .map(|&i| components[i])
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            };
            let nd = sub
                .is_negative_definite()
                .map_err(|e| SurfaceError::CertificateFailure {
                    stage: format!("{}: {e}", stage()),
                })?;
            if !nd {
                return Err(SurfaceError::CertificateFailure {
                    stage: format!("{} is not negative definite", stage()),
                });
            }
            let b: Vec<Rat> = idx.iter().map(|&i| rat(&d_dot[i])).collect();
            let sol = sub
                .solve(&b)
                .map_err(|e| SurfaceError::CertificateFailure {
                    stage: format!("{}: {e}", stage()),
                })?;
            let a = match sol {
                LinearSolution::Unique(a) => a,
                _ => {
                    // Unreachable once negative definiteness holds, but kept
                    // as a certificate rather than an assumption.
                    return Err(SurfaceError::CertificateFailure {
                        stage: format!("{} gave a singular system", stage()),
                    });
                }
            };
            let mut full = vec![Rat::zero(); m];
            for (k, &i) in idx.iter().enumerate() {
                full[i] = a[k].clone();
            }
            // (d − N)·C_j for every declared component.
            let mut grew = false;
            for (j, dj) in d_dot.iter().enumerate() {
                if support.contains(&j) {
                    continue;
                }
                let mut v = rat(dj);
                for &i in &idx {
                    v -= &full[i] * rat(pairs.at(i, j));
                }
                if v < Rat::zero() {
                    support.insert(j);
                    grew = true;
                }
            }
            if !grew {
                break full;
            }
        };

        let rank = self.lattice.rank();
        let mut negative = vec![Rat::zero(); rank];
        for (i, c) in comps.iter().enumerate() {
            if !coeffs[i].is_zero() {
                for (j, v) in c.coords().iter().enumerate() {
                    negative[j] += &coeffs[i] * rat(v);
                }
            }
        }
        let positive: Vec<Rat> = d
            .coords()
            .iter()
            .zip(&negative)
            .map(|(a, b)| rat(a) - b)
            .collect();
        Ok(ZariskiDecomposition {
            positive,
            negative,
            coefficients: components
                .iter()
                .map(|s| s.to_string())
                .zip(coeffs)
                .collect(),
        })
    }

    /// Structural invariants beyond the lattice's own validation.
    pub fn validate(&self) -> Result<(), SurfaceError> {
        let report = self.lattice.validate();
        if !report.is_valid() {
            return Err(SurfaceError::InvalidSurface {
                surface: self.name.clone(),
                detail: report.to_string(),
            });
        }
        if self.lattice.canonical.is_none() {
            return Err(SurfaceError::InvalidSurface {
                surface: self.name.clone(),
                detail: "no canonical class".into(),
            });
        }
        if self.chi_o != int(1) {
            return Err(SurfaceError::InvalidSurface {
                surface: self.name.clone(),
                detail: format!("χ(O) = {} but rational surfaces need 1", self.chi_o),
            });
        }
        for (name, coords) in &self.named {
            if coords.len() != self.lattice.rank() {
                return Err(SurfaceError::InvalidSurface {
                    surface: self.name.clone(),
                    detail: format!("named class '{name}' has wrong length"),
                });
            }
        }
        if self.base_kind == BaseKind::Quadric {
            let k = self.canonical()?;
            let k2 = k.self_intersection()?;
            let expect = int(8) - int(self.blowup_count as i64);
            if k2 != expect {
                return Err(SurfaceError::InvalidSurface {
                    surface: self.name.clone(),
                    detail: format!(
                        "K² = {k2} but a {}-point quadric blow-up needs {expect}",
                        self.blowup_count
                    ),
                });
            }
        }
        Ok(())
    }
}

/// Result of a Zariski decomposition, in rational ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiDecomposition {
    /// P = d − N.
    pub positive: Vec<Rat>,
    /// N = Σ aᵢ·Cᵢ.
    pub negative: Vec<Rat>,
    /// Coefficient of each declared component in N (input order).
    pub coefficients: Vec<(String, Rat)>,
}

impl ZariskiDecomposition {
    pub fn positive_is_zero(&self) -> bool {
        self.positive.iter().all(Zero::is_zero)
    }

    pub fn negative_is_zero(&self) -> bool {
        self.negative.iter().all(Zero::is_zero)
    }
}

/// The elliptic-fibration family S(n), n ≥ 5: two conjugate halves of
/// reducible fibres. Basis C0..Cn and Cb0..Cbn with
/// C0² = 2−n, Cᵢ² = −2 (1 ≤ i ≤ 4), Cᵢ² = −1 (5 ≤ i ≤ n), C0·Cᵢ = 1,
/// all C/Cb cross-pairings zero; the two fibre representatives
/// f = 2C0 + C1..4 + 2·C5..n and its conjugate are identified by the single
/// relation f − f̄ ≡ 0; K = −f + C5..n + Cb5..n.
pub fn build_s_elliptic(n: usize) -> Result<SurfaceModel, SurfaceError> {
    if n < 5 {
        return Err(SurfaceError::InvalidParameter {
            detail: format!("S(n) needs n ≥ 5, got {n}"),
        });
    }
    let half = n + 1;
    let rank = 2 * half;
    let mut labels = Vec::with_capacity(rank);
    for i in 0..=n {
        labels.push(format!("C{i}"));
    }
    for i in 0..=n {
        labels.push(format!("Cb{i}"));
    }
    let mut gram = IntMatrix::zero(rank, rank);
    for block in 0..2 {
        let o = block * half;
        gram.set(o, o, int(2) - int(n as i64));
        for i in 1..=n {
            gram.set(o + i, o + i, if i <= 4 { int(-2) } else { int(-1) });
            gram.set(o, o + i, int(1));
            gram.set(o + i, o, int(1));
        }
    }
    // Fibre class on the unbarred half: 2C0 + C1..4 + 2C5..n.
    let mut fibre = vec![Int::zero(); rank];
    fibre[0] = int(2);
    for (i, v) in fibre.iter_mut().enumerate().take(n + 1).skip(1) {
        *v = if i <= 4 { int(1) } else { int(2) };
    }
    let mut fibre_bar = vec![Int::zero(); rank];
    fibre_bar[half..].clone_from_slice(&fibre[..half]);
    let relation: Vec<Int> = fibre
        .iter()
        .zip(&fibre_bar)
        .map(|(a, b)| a - b)
        .collect();
    // K = −f + (C5..n + Cb5..n).
    let mut canonical: Vec<Int> = fibre.iter().map(|v| -v).collect();
    for i in 5..=n {
        canonical[i] += 1;
        canonical[half + i] += 1;
    }
    let conjugation = SignedPermutation::new(
        (0..rank)
            .map(|i| (if i < half { half + i } else { i - half }, false))
            .collect(),
    )
    .expect("mirror is a bijection");
    let lattice = Arc::new(Lattice {
        name: format!("Pic(S({n}))"),
        basis_labels: labels,
        gram,
        relations: vec![relation],
        canonical: Some(canonical.clone()),
        conjugation: Some(conjugation),
    });
    let s = SurfaceModel {
        name: format!("S_elliptic:{n}"),
        lattice,
        chi_o: int(1),
        // Declared: S(n) is (a deformation of) a 2n-point blow-up of the
        // quadric even though the lattice here is presented abstractly.
        blowup_count: 2 * n,
        base_kind: BaseKind::Quadric,
        named: BTreeMap::new(),
    };
    let s = s
        .with_named_class("f", fibre)?
        .with_named_class("fbar", fibre_bar)?
        .with_named_class("K", canonical)?;
    s.validate()?;
    Ok(s)
}

/// The K3-double-cover family surface: quadric blown up in ten points.
/// Four named fibre curves D1, D2 (first ruling) and D3, D4 (second
/// ruling) plus their conjugates; blow up the eight crossings of the
/// D-curves with the conjugate D-curves, then the crossing p = D1∩D3 and
/// its conjugate. The strict transforms of D1, D4, D2, D3 form a chain
/// with self-intersections −3, −2, −2, −3; C = D1+D4+D2+D3 and its
/// conjugate satisfy C + C̄ = 2·K⁻¹ with C∩C̄ = ∅.
pub fn build_s_k3() -> Result<SurfaceModel, SurfaceError> {
    let mut s = SurfaceModel::quadric();
    s.name = "S_K3".into();
    let f1 = || vec![int(1), int(0)];
    let f2 = || vec![int(0), int(1)];
    let s = s
        .with_named_class("D1", f1())?
        .with_named_class("D2", f1())?
        .with_named_class("D3", f2())?
        .with_named_class("D4", f2())?
        .with_named_class("Db1", f1())?
        .with_named_class("Db2", f1())?
        .with_named_class("Db3", f2())?
        .with_named_class("Db4", f2())?;
    let specs = vec![
        PointSpec::simple("E1", &[("D1", 1), ("Db3", 1)]).conjugate_to("E5"),
        PointSpec::simple("E2", &[("D1", 1), ("Db4", 1)]).conjugate_to("E6"),
        PointSpec::simple("E3", &[("D2", 1), ("Db3", 1)]).conjugate_to("E7"),
        PointSpec::simple("E4", &[("D2", 1), ("Db4", 1)]).conjugate_to("E8"),
        PointSpec::simple("E5", &[("Db1", 1), ("D3", 1)]).conjugate_to("E1"),
        PointSpec::simple("E6", &[("Db1", 1), ("D4", 1)]).conjugate_to("E2"),
        PointSpec::simple("E7", &[("Db2", 1), ("D3", 1)]).conjugate_to("E3"),
        PointSpec::simple("E8", &[("Db2", 1), ("D4", 1)]).conjugate_to("E4"),
        // The double point p of D = D1+D2+D3+D4 sits on D1 and D3.
        PointSpec::simple("C5", &[("D1", 1), ("D3", 1)]).conjugate_to("Cb5"),
        PointSpec::simple("Cb5", &[("Db1", 1), ("Db3", 1)]).conjugate_to("C5"),
    ];
    let mut s = s.blowup_points(&specs)?;
    let chain = s.combination(&[
        ("D1", int(1)),
        ("D4", int(1)),
        ("D2", int(1)),
        ("D3", int(1)),
    ])?;
    let chain_bar = chain.conjugate()?;
    s.set_named("C", chain.coords().to_vec());
    s.set_named("Cb", chain_bar.coords().to_vec());
    s.validate()?;
    Ok(s)
}
