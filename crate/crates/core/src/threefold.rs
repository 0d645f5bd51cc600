//! Intersection rings of twistor-type threefolds and their blow-ups along
//! curves.
//!
//! The base ring [`TwistorRing`] has generators F, α₁..α_n with the trilinear
//! rules F³ = 8−2n, F²·αᵢ = 0, F·αᵢ² = −2, F·αᵢ·αⱼ = 0 (i≠j),
//! αᵢ·αⱼ·α_k = 0, and Chern data c₁ = 2F, F·c₂ = 12, αᵢ·c₂ = 0.
//! Blowing up along a curve C with normal bundle of degree d appends an
//! exceptional generator E with E³ = −d, (μ*L)²·E = 0, μ*L·E² = −L·C and
//! updates c₁ ↦ μ*c₁ − E and the c₂-pairing functional. Distinct centres are
//! declared disjoint, so distinct exceptionals multiply to zero.
//!
//! Restriction maps go two ways: to the exceptional ruled surface of a
//! rational centre (a Hirzebruch surface F_e, e = b−a of the declared
//! normal-bundle splitting) and to a fundamental divisor surface via
//! F ↦ K⁻¹, αᵢ ↦ Cᵢ − C̄ᵢ.

use crate::exact::{int, rat, Int, Rat};
use crate::lattice::{ClassVector, LatticeError};
use crate::surface::{SurfaceError, SurfaceModel};
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThreefoldError {
    #[error("ring needs n ≥ 1 alpha generators, got {n}")]
    TooSmall { n: i64 },
    #[error("splitting ({a}, {b}) is not ordered: need a ≤ b")]
    SplittingUnordered { a: Int, b: Int },
    #[error(
        "splitting ({a}, {b}) does not sum to the normal bundle degree {expected} of '{curve}'"
    )]
    SplittingDegreeMismatch {
        a: Int,
        b: Int,
        curve: String,
        expected: Int,
    },
    #[error("no blowup record for curve '{name}'")]
    MissingBlowup { name: String },
    #[error("exceptional surface over '{curve}' is not a Hirzebruch surface: genus {genus} ≠ 0")]
    NotRational { curve: String, genus: Int },
    #[error("no declared restriction image for generator '{generator}' on surface '{surface}'")]
    UndeclaredGeneratorImage { generator: String, surface: String },
    #[error("bidegree notation needs the product surface (e = 0), not F_{e}")]
    NotProductSurface { e: Int },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A class a·F + Σ bᵢ·αᵢ in the base ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseClass {
    pub f: Int,
    pub alphas: Vec<Int>,
}

impl BaseClass {
    pub fn zero(n: usize) -> Self {
        BaseClass {
            f: Int::zero(),
            alphas: vec![Int::zero(); n],
        }
    }

    pub fn try_add(&self, other: &BaseClass) -> BaseClass {
        assert_eq!(self.alphas.len(), other.alphas.len(), "ring size mismatch");
        BaseClass {
            f: &self.f + &other.f,
            alphas: self
                .alphas
                .iter()
                .zip(&other.alphas)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> BaseClass {
        BaseClass {
            f: -&self.f,
            alphas: self.alphas.iter().map(|a| -a).collect(),
        }
    }

    pub fn try_sub(&self, other: &BaseClass) -> BaseClass {
        self.try_add(&other.neg())
    }

    pub fn scale(&self, s: &Int) -> BaseClass {
        BaseClass {
            f: &self.f * s,
            alphas: self.alphas.iter().map(|a| a * s).collect(),
        }
    }

    /// The conjugate class: σ fixes F and negates every αᵢ.
    pub fn conjugate(&self) -> BaseClass {
        BaseClass {
            f: self.f.clone(),
            alphas: self.alphas.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for BaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut labels = vec!["F".to_string()];
        labels.extend((1..=self.alphas.len()).map(|i| format!("alpha{i}")));
        let mut coords = vec![self.f.clone()];
        coords.extend(self.alphas.iter().cloned());
        crate::lattice::write_terms(f, &labels, &coords)
    }
}

/// The intersection ring H²-level data of the twistor-type threefold with
/// n alpha generators. `f_cubed` is 8−2n for the honest ring; other values
/// are allowed for perturbation probes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistorRing {
    pub n: usize,
    pub f_cubed: Int,
}

impl TwistorRing {
    pub fn new(n: usize) -> Result<TwistorRing, ThreefoldError> {
        if n < 1 {
            return Err(ThreefoldError::TooSmall { n: n as i64 });
        }
        Ok(TwistorRing {
            n,
            f_cubed: int(8) - int(2) * int(n as i64),
        })
    }

    /// Same generators but a declared F³ value: used to probe that the
    /// homology identities really pin down F³ = 8−2n.
    pub fn with_f_cubed(n: usize, f_cubed: Int) -> Result<TwistorRing, ThreefoldError> {
        let mut r = TwistorRing::new(n)?;
        r.f_cubed = f_cubed;
        Ok(r)
    }

    pub fn class(&self, f: Int, alphas: Vec<Int>) -> BaseClass {
        assert_eq!(alphas.len(), self.n, "ring size mismatch");
        BaseClass { f, alphas }
    }

    pub fn class_f(&self) -> BaseClass {
        self.class(int(1), vec![Int::zero(); self.n])
    }

    /// αᵢ for 1 ≤ i ≤ n.
    pub fn class_alpha(&self, i: usize) -> BaseClass {
        assert!((1..=self.n).contains(&i), "alpha index out of range");
        let mut alphas = vec![Int::zero(); self.n];
        alphas[i - 1] = int(1);
        BaseClass {
            f: Int::zero(),
            alphas,
        }
    }

    pub fn c1(&self) -> BaseClass {
        self.class_f().scale(&int(2))
    }

    /// The full trilinear form, expanded from the generator rules.
    pub fn triple(&self, x: &BaseClass, y: &BaseClass, z: &BaseClass) -> Int {
        assert!(
            x.alphas.len() == self.n && y.alphas.len() == self.n && z.alphas.len() == self.n,
            "ring size mismatch"
        );
        let mut t = &self.f_cubed * &x.f * &y.f * &z.f;
        for i in 0..self.n {
            t -= int(2)
                * (&x.f * &y.alphas[i] * &z.alphas[i]
                    + &x.alphas[i] * &y.f * &z.alphas[i]
                    + &x.alphas[i] * &y.alphas[i] * &z.f);
        }
        t
    }

    /// The pairing against the second Chern class: F·c₂ = 12, αᵢ·c₂ = 0.
    pub fn c2_pair(&self, l: &BaseClass) -> Int {
        assert_eq!(l.alphas.len(), self.n, "ring size mismatch");
        int(12) * &l.f
    }

    /// Threefold Riemann–Roch:
    /// χ(L) = L³/6 + L²·c₁/4 + L·(c₁²+c₂)/12 + c₁·c₂/24.
    pub fn rr3_chi(&self, l: &BaseClass) -> Rat {
        let c1 = self.c1();
        let l3 = self.triple(l, l, l);
        let l2c1 = self.triple(l, l, &c1);
        let lc1c1 = self.triple(l, &c1, &c1);
        let lc2 = self.c2_pair(l);
        let c1c2 = self.c2_pair(&c1);
        rat(&l3) / rat(&int(6))
            + rat(&l2c1) / rat(&int(4))
            + (rat(&lc1c1) + rat(&lc2)) / rat(&int(12))
            + rat(&c1c2) / rat(&int(24))
    }

    /// Blow up along a curve, producing the extended ring with one
    /// exceptional generator.
    pub fn blowup_along_curve(
        &self,
        curve: CurveData,
        splitting: Splitting,
    ) -> Result<ExtendedRing, ThreefoldError> {
        ExtendedRing {
            base: self.clone(),
            blowups: vec![],
        }
        .blowup_along_curve(curve, splitting)
    }

    /// Restriction to a fundamental-divisor surface: F ↦ K⁻¹ and
    /// αᵢ ↦ Cᵢ − C̄ᵢ, extended linearly. Only generators with nonzero
    /// coefficient need declared images (classes named `Ci`/`Cbi` on the
    /// surface).
    pub fn restrict_to_surface(
        &self,
        l: &BaseClass,
        s: &SurfaceModel,
    ) -> Result<ClassVector, ThreefoldError> {
        assert_eq!(l.alphas.len(), self.n, "ring size mismatch");
        let mut acc = s.anticanonical()?.scale(&l.f);
        for (idx, coeff) in l.alphas.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let i = idx + 1;
            let image = (|| -> Result<ClassVector, SurfaceError> {
                let ci = s.resolve(&format!("C{i}"))?;
                let cbi = s.resolve(&format!("Cb{i}"))?;
                Ok(ci.try_sub(&cbi)?)
            })()
            .map_err(|_| ThreefoldError::UndeclaredGeneratorImage {
                generator: format!("alpha{i}"),
                surface: s.name.clone(),
            })?;
            acc = acc.try_add(&image.scale(coeff))?;
        }
        Ok(acc)
    }

    /// X = F − (α₅+…+α_n) is half of a sum of two effective divisors with
    /// X·X̄·y = 0 for every y. Checks the identity against every generator
    /// and against F + Σαᵢ; fails exactly when F³ ≠ 8−2n.
    pub fn homology_zero_check(&self) -> bool {
        if self.n < 5 {
            return false;
        }
        let mut alphas = vec![Int::zero(); self.n];
        for item in alphas.iter_mut().skip(4) {
            *item = int(-1);
        }
        let x = BaseClass {
            f: int(1),
            alphas,
        };
        let xbar = x.conjugate();
        for i in 1..=self.n {
            if !self.triple(&x, &xbar, &self.class_alpha(i)).is_zero() {
                return false;
            }
        }
        let mut probe = self.class_f();
        for i in 1..=self.n {
            probe = probe.try_add(&self.class_alpha(i));
        }
        self.triple(&x, &xbar, &probe).is_zero()
    }
}

/// Degree of the normal bundle of a curve in the threefold:
/// deg N = 2g − 2 + K⁻¹·C = 2g − 2 + 2(F·C).
pub fn normal_bundle_degree(curve: &CurveData) -> Int {
    int(2) * &curve.genus - int(2) + int(2) * &curve.degrees.f
}

/// χ(μ*L − E) after blowing up along a genus-g curve C:
/// χ(L) − L·C − 1 + g.
pub fn chi_after_blowup(chi_l: &Rat, l_dot_c: &Int, g: &Int) -> Rat {
    chi_l - rat(l_dot_c) - rat(&int(1)) + rat(g)
}

/// A curve in the threefold: its genus and the degree of every ring
/// generator on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveData {
    pub name: String,
    pub genus: Int,
    /// F·C in the `f` slot, αᵢ·C in the alpha slots.
    pub degrees: BaseClass,
}

impl CurveData {
    pub fn new(name: &str, genus: i64, f_degree: i64, alpha_degrees: &[i64]) -> CurveData {
        CurveData {
            name: name.into(),
            genus: int(genus),
            degrees: BaseClass {
                f: int(f_degree),
                alphas: alpha_degrees.iter().map(|&a| int(a)).collect(),
            },
        }
    }

    /// L·C for a class in the base ring.
    pub fn degree_against(&self, l: &BaseClass) -> Int {
        assert_eq!(
            l.alphas.len(),
            self.degrees.alphas.len(),
            "ring size mismatch"
        );
        let mut d = &l.f * &self.degrees.f;
        for (a, b) in l.alphas.iter().zip(&self.degrees.alphas) {
            d += a * b;
        }
        d
    }
}

/// Declared splitting type N = O(a) ⊕ O(b) with a ≤ b; the exceptional
/// surface over a rational centre is then the Hirzebruch surface F_{b−a}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    a: Int,
    b: Int,
}

impl Splitting {
    pub fn new(a: Int, b: Int) -> Result<Splitting, ThreefoldError> {
        if a > b {
            return Err(ThreefoldError::SplittingUnordered { a, b });
        }
        Ok(Splitting { a, b })
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Splitting, ThreefoldError> {
        Splitting::new(int(a), int(b))
    }

    pub fn a(&self) -> &Int {
        &self.a
    }

    pub fn b(&self) -> &Int {
        &self.b
    }

    pub fn degree(&self) -> Int {
        &self.a + &self.b
    }

    /// Hirzebruch invariant e = b − a ≥ 0.
    pub fn e(&self) -> Int {
        &self.b - &self.a
    }
}

/// One blow-up along a curve: the centre, its declared normal-bundle
/// splitting, and the label of the exceptional divisor class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupRecord {
    pub label: String,
    pub curve: CurveData,
    pub splitting: Splitting,
}

impl BlowupRecord {
    pub fn normal_degree(&self) -> Int {
        normal_bundle_degree(&self.curve)
    }
}

/// A class μ*M + Σ kⱼ·Eⱼ in an extended ring: the pulled-back base part
/// plus one exceptional coefficient per blow-up record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtClass {
    pub base: BaseClass,
    pub exc: Vec<Int>,
}

impl ExtClass {
    pub fn try_add(&self, other: &ExtClass) -> ExtClass {
        assert_eq!(self.exc.len(), other.exc.len(), "ring size mismatch");
        ExtClass {
            base: self.base.try_add(&other.base),
            exc: self
                .exc
                .iter()
                .zip(&other.exc)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> ExtClass {
        ExtClass {
            base: self.base.neg(),
            exc: self.exc.iter().map(|a| -a).collect(),
        }
    }

    pub fn try_sub(&self, other: &ExtClass) -> ExtClass {
        self.try_add(&other.neg())
    }

    pub fn scale(&self, s: &Int) -> ExtClass {
        ExtClass {
            base: self.base.scale(s),
            exc: self.exc.iter().map(|a| a * s).collect(),
        }
    }
}

/// The base ring extended by blow-ups along pairwise disjoint curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedRing {
    pub base: TwistorRing,
    pub blowups: Vec<BlowupRecord>,
}

impl ExtendedRing {
    /// Append a blow-up along a further (disjoint) curve. The splitting
    /// must sum to the curve's normal-bundle degree.
    pub fn blowup_along_curve(
        mut self,
        curve: CurveData,
        splitting: Splitting,
    ) -> Result<ExtendedRing, ThreefoldError> {
        let expected = normal_bundle_degree(&curve);
        if splitting.degree() != expected {
            return Err(ThreefoldError::SplittingDegreeMismatch {
                a: splitting.a.clone(),
                b: splitting.b.clone(),
                curve: curve.name.clone(),
                expected,
            });
        }
        let label = format!("E[{}]", curve.name);
        self.blowups.push(BlowupRecord {
            label,
            curve,
            splitting,
        });
        Ok(self)
    }

    pub fn record(&self, curve_name: &str) -> Result<(usize, &BlowupRecord), ThreefoldError> {
        self.blowups
            .iter()
            .enumerate()
            .find(|(_, b)| b.curve.name == curve_name)
            .ok_or_else(|| ThreefoldError::MissingBlowup {
                name: curve_name.to_string(),
            })
    }

    /// μ*M: pull back a base class.
    pub fn pullback(&self, m: &BaseClass) -> ExtClass {
        assert_eq!(m.alphas.len(), self.base.n, "ring size mismatch");
        ExtClass {
            base: m.clone(),
            exc: vec![Int::zero(); self.blowups.len()],
        }
    }

    /// The exceptional divisor class of the record for `curve_name`.
    pub fn exceptional(&self, curve_name: &str) -> Result<ExtClass, ThreefoldError> {
        let (idx, _) = self.record(curve_name)?;
        let mut exc = vec![Int::zero(); self.blowups.len()];
        exc[idx] = int(1);
        Ok(ExtClass {
            base: BaseClass::zero(self.base.n),
            exc,
        })
    }

    pub fn class(&self, base: BaseClass, exc: Vec<Int>) -> ExtClass {
        assert_eq!(base.alphas.len(), self.base.n, "ring size mismatch");
        assert_eq!(exc.len(), self.blowups.len(), "blowup count mismatch");
        ExtClass { base, exc }
    }

    /// c₁ = μ*c₁(base) − ΣEⱼ.
    pub fn c1(&self) -> ExtClass {
        ExtClass {
            base: self.base.c1(),
            exc: vec![int(-1); self.blowups.len()],
        }
    }

    /// Trilinear form in the extended ring. Per record with centre C,
    /// genus g, normal degree d: E³ = −d, E²·μ*L = −L·C, E·μ*L·μ*M = 0,
    /// and distinct exceptionals multiply to zero.
    pub fn triple(&self, x: &ExtClass, y: &ExtClass, z: &ExtClass) -> Int {
        assert!(
            x.exc.len() == self.blowups.len()
                && y.exc.len() == self.blowups.len()
                && z.exc.len() == self.blowups.len(),
            "blowup count mismatch"
        );
        let mut t = self.base.triple(&x.base, &y.base, &z.base);
        for (k, b) in self.blowups.iter().enumerate() {
            let d = b.normal_degree();
            let (xk, yk, zk) = (&x.exc[k], &y.exc[k], &z.exc[k]);
            t -= xk * yk * zk * &d;
            t -= b.curve.degree_against(&x.base) * yk * zk
                + xk * b.curve.degree_against(&y.base) * zk
                + xk * yk * b.curve.degree_against(&z.base);
        }
        t
    }

    /// The c₂-pairing after blow-up:
    /// (μ*M + Σ kⱼEⱼ)·c₂ = M·c₂(base) + Σⱼ (M·Cⱼ − kⱼ(2gⱼ − 2 − dⱼ)).
    pub fn c2_pair(&self, l: &ExtClass) -> Int {
        assert_eq!(l.exc.len(), self.blowups.len(), "blowup count mismatch");
        let mut t = self.base.c2_pair(&l.base);
        for (k, b) in self.blowups.iter().enumerate() {
            let d = b.normal_degree();
            let correction = int(2) * &b.curve.genus - int(2) - d;
            t += b.curve.degree_against(&l.base) - &l.exc[k] * correction;
        }
        t
    }

    /// Threefold Riemann–Roch in the extended ring, same shape as on the
    /// base: χ(L) = L³/6 + L²c₁/4 + L(c₁²+c₂)/12 + c₁c₂/24.
    pub fn rr3_chi(&self, l: &ExtClass) -> Rat {
        let c1 = self.c1();
        let l3 = self.triple(l, l, l);
        let l2c1 = self.triple(l, l, &c1);
        let lc1c1 = self.triple(l, &c1, &c1);
        let lc2 = self.c2_pair(l);
        let c1c2 = self.c2_pair(&c1);
        rat(&l3) / rat(&int(6))
            + rat(&l2c1) / rat(&int(4))
            + (rat(&lc1c1) + rat(&lc2)) / rat(&int(12))
            + rat(&c1c2) / rat(&int(24))
    }

    /// Restrict a class to the exceptional Hirzebruch surface over a
    /// rational centre: E|_E = −A + a·𝔣 and μ*M|_E = (M·C)·𝔣; the other
    /// exceptionals are disjoint from E and restrict to zero.
    pub fn exceptional_restriction(
        &self,
        curve_name: &str,
        l: &ExtClass,
    ) -> Result<HirzebruchClass, ThreefoldError> {
        assert_eq!(l.exc.len(), self.blowups.len(), "blowup count mismatch");
        let (idx, record) = self.record(curve_name)?;
        if !record.curve.genus.is_zero() {
            return Err(ThreefoldError::NotRational {
                curve: record.curve.name.clone(),
                genus: record.curve.genus.clone(),
            });
        }
        let k = &l.exc[idx];
        let m_dot_c = record.curve.degree_against(&l.base);
        Ok(HirzebruchClass {
            e: record.splitting.e(),
            a: -k,
            f: m_dot_c + k * record.splitting.a(),
        })
    }

    /// (E₀|_{X₁})² computed inside the divisor X₁ = μ*(F − α₅..α_n) − 2E₀,
    /// i.e. the triple product E₀·E₀·X₁. Needs the blow-up of C₀.
    pub fn exceptional_self_intersection_in_divisor(&self) -> Result<Int, ThreefoldError> {
        let e0 = self.exceptional("C0")?;
        let n = self.base.n;
        let mut alphas = vec![Int::zero(); n];
        for item in alphas.iter_mut().skip(4) {
            *item = int(-1);
        }
        let x1 = self
            .pullback(&BaseClass {
                f: int(1),
                alphas,
            })
            .try_sub(&e0.scale(&int(2)));
        Ok(self.triple(&e0, &e0, &x1))
    }
}

/// A class s·A + t·𝔣 on the Hirzebruch surface F_e
/// (A² = −e, A·𝔣 = 1, 𝔣² = 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HirzebruchClass {
    pub e: Int,
    pub a: Int,
    pub f: Int,
}

impl HirzebruchClass {
    /// On F₀ = P¹×P¹ the {A, 𝔣} basis is the (1,0)/(0,1) basis.
    pub fn bidegree(&self) -> Result<(Int, Int), ThreefoldError> {
        if self.e.is_zero() {
            Ok((self.a.clone(), self.f.clone()))
        } else {
            Err(ThreefoldError::NotProductSurface { e: self.e.clone() })
        }
    }

    /// K⁻¹ of F_e is 2A + (e+2)𝔣.
    pub fn is_anticanonical(&self) -> bool {
        self.a == int(2) && self.f == &self.e + int(2)
    }

    pub fn self_intersection(&self) -> Int {
        // (sA + t𝔣)² = −e·s² + 2st.
        -&self.e * &self.a * &self.a + int(2) * &self.a * &self.f
    }
}

impl fmt::Display for HirzebruchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::lattice::write_terms(
            f,
            &["A".to_string(), "fib".to_string()],
            &[self.a.clone(), self.f.clone()],
        )
    }
}

/// The curve C₀ on the standard ring: genus 0, F·C₀ = 4−n, αᵢ·C₀ = 1.
pub fn curve_c0(n: usize) -> CurveData {
    CurveData {
        name: "C0".into(),
        genus: Int::zero(),
        degrees: BaseClass {
            f: int(4) - int(n as i64),
            alphas: vec![int(1); n],
        },
    }
}

/// Its conjugate C̄₀: genus 0, F·C̄₀ = 4−n, αᵢ·C̄₀ = −1.
pub fn curve_c0_bar(n: usize) -> CurveData {
    CurveData {
        name: "Cb0".into(),
        genus: Int::zero(),
        degrees: BaseClass {
            f: int(4) - int(n as i64),
            alphas: vec![int(-1); n],
        },
    }
}
