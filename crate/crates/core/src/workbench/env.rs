//! Building scenario objects and executing checks.
//!
//! [`Env::build`] constructs every declared object and verifies that every
//! reference inside the check list resolves; both kinds of problem are
//! schema-level errors. Executing a check never fails the run: mathematical
//! errors (parity violations, missing certificates, contradictions) become
//! `error` entries in the report.

use super::report::{CheckResult, Status};
use super::scenario::{
    CheckDecl, CheckOp, ClassExpr, CurveDecl, ExpectedHirzebruch, ExpectedSolve, NormalSource,
    ObjectDecl, ParseError, RingRef, Scenario, ScopeRef,
};
use crate::exact::{in_integer_span, Int, IntMatrix, LinearSolution, Rat};
use crate::lattice::{ClassVector, Lattice, SignedPermutation};
use crate::ledger::{moduli_pipeline, propagate, CohFact, ExactSequence, LinExpr, ModuliCase};
use crate::surface::{build_s_elliptic, build_s_k3, PointSpec, SurfaceModel};
use crate::threefold::{
    chi_after_blowup, normal_bundle_degree, BaseClass, CurveData, ExtClass, ExtendedRing,
    HirzebruchClass, Splitting, TwistorRing,
};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;

type PResult<T> = Result<T, ParseError>;

/// All objects of a scenario, constructed and keyed by name.
pub struct Env {
    lattices: BTreeMap<String, Arc<Lattice>>,
    surfaces: BTreeMap<String, SurfaceModel>,
    rings: BTreeMap<String, TwistorRing>,
    blowups: BTreeMap<String, ExtendedRing>,
    sequences: BTreeMap<String, ExactSequence>,
    facts: BTreeMap<String, CohFact>,
}

impl Env {
    pub fn build(scenario: &Scenario) -> PResult<Env> {
        let mut env = Env {
            lattices: BTreeMap::new(),
            surfaces: BTreeMap::new(),
            rings: BTreeMap::new(),
            blowups: BTreeMap::new(),
            sequences: BTreeMap::new(),
            facts: BTreeMap::new(),
        };
        for (i, obj) in scenario.objects.iter().enumerate() {
            env.build_object(obj, &format!("$.objects[{i}]"))?;
        }
        for (i, check) in scenario.checks.iter().enumerate() {
            env.validate_check_refs(check, &format!("$.checks[{i}]"))?;
        }
        Ok(env)
    }

    fn build_object(&mut self, obj: &ObjectDecl, path: &str) -> PResult<()> {
        match obj {
            ObjectDecl::Lattice {
                name,
                basis,
                gram,
                relations,
                canonical,
                conjugation,
            } => {
                let rank = basis.len();
                let gram = match gram {
                    Some(rows) => IntMatrix::from_rows(rows.clone()).map_err(|e| {
                        ParseError::new(&format!("{path}.gram"), e.to_string())
                    })?,
                    None => IntMatrix::zero(rank, rank),
                };
                let conjugation = match conjugation {
                    None => None,
                    Some(pairs) => {
                        let cpath = format!("{path}.conjugation");
                        if pairs.len() != rank {
                            return Err(ParseError::new(
                                &cpath,
                                format!("expected {rank} entries, got {}", pairs.len()),
                            ));
                        }
                        let mut targets = Vec::with_capacity(rank);
                        for (i, (to, negate)) in pairs.iter().enumerate() {
                            let idx = basis.iter().position(|b| b == to).ok_or_else(|| {
                                ParseError::new(
                                    &format!("{cpath}[{i}].to"),
                                    format!("unknown basis label '{to}'"),
                                )
                            })?;
                            targets.push((idx, *negate));
                        }
                        Some(SignedPermutation::new(targets).map_err(|e| {
                            ParseError::new(&cpath, e.to_string())
                        })?)
                    }
                };
                self.lattices.insert(
                    name.clone(),
                    Arc::new(Lattice {
                        name: name.clone(),
                        basis_labels: basis.clone(),
                        gram,
                        relations: relations.clone(),
                        canonical: canonical.clone(),
                        conjugation,
                    }),
                );
            }
            ObjectDecl::Surface {
                name,
                builder,
                named_classes,
                blowups,
            } => {
                let bpath = format!("{path}.builder");
                let mut surface = build_surface(builder, &bpath)?;
                for (class_name, coords) in named_classes {
                    surface = surface
                        .with_named_class(class_name, coords.clone())
                        .map_err(|e| {
                            ParseError::new(
                                &format!("{path}.named_classes.{class_name}"),
                                e.to_string(),
                            )
                        })?;
                }
                if !blowups.is_empty() {
                    let specs: Vec<PointSpec> = blowups
                        .iter()
                        .map(|b| PointSpec {
                            label: b.label.clone(),
                            multiplicities: b
                                .on
                                .iter()
                                .map(|(c, m)| (c.clone(), m.clone()))
                                .collect(),
                            conjugate_of: b.conjugate_of.clone(),
                        })
                        .collect();
                    surface = surface.blowup_points(&specs).map_err(|e| {
                        ParseError::new(&format!("{path}.blowups"), e.to_string())
                    })?;
                }
                surface.name = name.clone();
                self.surfaces.insert(name.clone(), surface);
            }
            ObjectDecl::Ring { name, n, f_cubed } => {
                let ring = match f_cubed {
                    None => TwistorRing::new(*n),
                    Some(f3) => TwistorRing::with_f_cubed(*n, f3.clone()),
                }
                .map_err(|e| ParseError::new(path, e.to_string()))?;
                self.rings.insert(name.clone(), ring);
            }
            ObjectDecl::BlowupRing { name, ring, curves } => {
                let base = self.rings.get(ring).ok_or_else(|| {
                    ParseError::new(
                        &format!("{path}.ring"),
                        format!("unknown ring '{ring}'"),
                    )
                })?;
                let mut ext = ExtendedRing {
                    base: base.clone(),
                    blowups: vec![],
                };
                for (i, c) in curves.iter().enumerate() {
                    let cpath = format!("{path}.curves[{i}]");
                    ext = ext
                        .blowup_along_curve(curve_from_decl(c, base.n, &cpath)?, {
                            Splitting::new(c.splitting.0.clone(), c.splitting.1.clone())
                                .map_err(|e| {
                                    ParseError::new(
                                        &format!("{cpath}.splitting"),
                                        e.to_string(),
                                    )
                                })?
                        })
                        .map_err(|e| ParseError::new(&cpath, e.to_string()))?;
                }
                self.blowups.insert(name.clone(), ext);
            }
            ObjectDecl::Sequence { name, spaces, chi } => {
                self.sequences.insert(
                    name.clone(),
                    ExactSequence {
                        name: name.clone(),
                        spaces: spaces.clone(),
                        total: chi.clone().unwrap_or_else(LinExpr::zero),
                    },
                );
            }
            ObjectDecl::Fact { name, space, dim } => {
                self.facts
                    .insert(name.clone(), CohFact::declared(space, dim.clone()));
            }
        }
        Ok(())
    }

    // -- reference validation --------------------------------------------

    fn need_lattice(&self, name: &str, path: &str) -> PResult<&Arc<Lattice>> {
        self.lattices
            .get(name)
            .ok_or_else(|| ParseError::new(path, format!("unknown lattice '{name}'")))
    }

    fn need_surface(&self, name: &str, path: &str) -> PResult<&SurfaceModel> {
        self.surfaces
            .get(name)
            .ok_or_else(|| ParseError::new(path, format!("unknown surface '{name}'")))
    }

    fn need_ring(&self, name: &str, path: &str) -> PResult<&TwistorRing> {
        self.rings
            .get(name)
            .ok_or_else(|| ParseError::new(path, format!("unknown ring '{name}'")))
    }

    fn need_blowup(&self, name: &str, path: &str) -> PResult<&ExtendedRing> {
        self.blowups
            .get(name)
            .ok_or_else(|| ParseError::new(path, format!("unknown blowup '{name}'")))
    }

    fn need_scope(&self, scope: &ScopeRef, path: &str) -> PResult<Scope<'_>> {
        match scope {
            ScopeRef::Lattice(name) => Ok(Scope::Lattice(
                self.need_lattice(name, &format!("{path}.lattice"))?,
            )),
            ScopeRef::Surface(name) => Ok(Scope::Surface(
                self.need_surface(name, &format!("{path}.surface"))?,
            )),
        }
    }

    fn validate_check_refs(&self, decl: &CheckDecl, path: &str) -> PResult<()> {
        match &decl.op {
            CheckOp::Det { .. }
            | CheckOp::NegativeDefinite { .. }
            | CheckOp::SolveLinear { .. }
            | CheckOp::InIntegerSpan { .. }
            | CheckOp::ChiAfterBlowup { .. } => {}
            CheckOp::ValidateLattice { scope, .. }
            | CheckOp::Pair { scope, .. }
            | CheckOp::ClassesEquivalent { scope, .. }
            | CheckOp::Conjugate { scope, .. }
            | CheckOp::GramNegativeDefinite { scope, .. } => {
                self.need_scope(scope, path)?;
            }
            CheckOp::AdjunctionGenus { surface, .. }
            | CheckOp::RrChi { surface, .. }
            | CheckOp::ThetaChi { surface, .. }
            | CheckOp::Zariski { surface, .. } => {
                self.need_surface(surface, &format!("{path}.surface"))?;
            }
            CheckOp::Triple { ring, .. }
            | CheckOp::C2Pair { ring, .. }
            | CheckOp::Rr3Chi { ring, .. } => match ring {
                RingRef::Base(name) => {
                    self.need_ring(name, &format!("{path}.ring"))?;
                }
                RingRef::Extended(name) => {
                    self.need_blowup(name, &format!("{path}.blowup"))?;
                }
            },
            CheckOp::NormalBundleDegree { source, .. } => {
                if let NormalSource::Record { blowup, curve } = source {
                    let ext = self.need_blowup(blowup, &format!("{path}.blowup"))?;
                    ext.record(curve).map_err(|_| {
                        ParseError::new(
                            &format!("{path}.curve"),
                            format!("blowup '{blowup}' has no record for curve '{curve}'"),
                        )
                    })?;
                }
            }
            CheckOp::RestrictEquivalent { ring, surface, .. }
            | CheckOp::RestrictPair { ring, surface, .. } => {
                self.need_ring(ring, &format!("{path}.ring"))?;
                self.need_surface(surface, &format!("{path}.surface"))?;
            }
            CheckOp::ExceptionalRestriction { blowup, center, .. } => {
                let ext = self.need_blowup(blowup, &format!("{path}.blowup"))?;
                ext.record(center).map_err(|_| {
                    ParseError::new(
                        &format!("{path}.center"),
                        format!("blowup '{blowup}' has no record for curve '{center}'"),
                    )
                })?;
            }
            CheckOp::HomologyZero { ring, .. } => {
                self.need_ring(ring, &format!("{path}.ring"))?;
            }
            CheckOp::ExcSelfIntersection { blowup, .. } => {
                self.need_blowup(blowup, &format!("{path}.blowup"))?;
            }
            CheckOp::Propagate {
                sequences, facts, ..
            } => {
                for (i, s) in sequences.iter().enumerate() {
                    if !self.sequences.contains_key(s) {
                        return Err(ParseError::new(
                            &format!("{path}.sequences[{i}]"),
                            format!("unknown sequence '{s}'"),
                        ));
                    }
                }
                for (i, f) in facts.iter().enumerate() {
                    if !self.facts.contains_key(f) {
                        return Err(ParseError::new(
                            &format!("{path}.facts[{i}]"),
                            format!("unknown fact '{f}'"),
                        ));
                    }
                }
            }
            CheckOp::Moduli { case, .. } => {
                parse_moduli_case(case)
                    .map_err(|e| ParseError::new(&format!("{path}.case"), e))?;
            }
        }
        Ok(())
    }

    // -- execution --------------------------------------------------------

    pub fn run_check(&self, index: usize, decl: &CheckDecl) -> CheckResult {
        let op = decl.op.op_name().to_string();
        match self.eval(&decl.op) {
            Ok(outcome) => CheckResult {
                index,
                name: decl.name.clone(),
                op,
                status: if outcome.pass {
                    Status::Pass
                } else {
                    Status::Fail
                },
                computed: Some(outcome.computed),
                expected: Some(outcome.expected),
                detail: outcome.detail,
            },
            Err(detail) => CheckResult {
                index,
                name: decl.name.clone(),
                op,
                status: Status::Error,
                computed: None,
                expected: None,
                detail: Some(detail),
            },
        }
    }

    fn scope(&self, scope: &ScopeRef) -> Result<Scope<'_>, String> {
        match scope {
            ScopeRef::Lattice(name) => self
                .lattices
                .get(name)
                .map(Scope::Lattice)
                .ok_or_else(|| format!("unknown lattice '{name}'")),
            ScopeRef::Surface(name) => self
                .surfaces
                .get(name)
                .map(Scope::Surface)
                .ok_or_else(|| format!("unknown surface '{name}'")),
        }
    }

    fn surface(&self, name: &str) -> Result<&SurfaceModel, String> {
        self.surfaces
            .get(name)
            .ok_or_else(|| format!("unknown surface '{name}'"))
    }

    fn ring(&self, name: &str) -> Result<&TwistorRing, String> {
        self.rings
            .get(name)
            .ok_or_else(|| format!("unknown ring '{name}'"))
    }

    fn blowup(&self, name: &str) -> Result<&ExtendedRing, String> {
        self.blowups
            .get(name)
            .ok_or_else(|| format!("unknown blowup '{name}'"))
    }

    fn eval(&self, op: &CheckOp) -> Result<Outcome, String> {
        match op {
            CheckOp::Det { matrix, expect } => {
                let m = IntMatrix::from_rows(matrix.clone()).map_err(|e| e.to_string())?;
                let det = m.det().map_err(|e| e.to_string())?;
                Ok(Outcome::compare(&det, expect))
            }
            CheckOp::NegativeDefinite { matrix, expect } => {
                let m = IntMatrix::from_rows(matrix.clone()).map_err(|e| e.to_string())?;
                let nd = m.is_negative_definite().map_err(|e| e.to_string())?;
                Ok(Outcome::compare(&nd, expect))
            }
            CheckOp::SolveLinear {
                matrix,
                rhs,
                expect,
            } => {
                let m = IntMatrix::from_rows(matrix.clone()).map_err(|e| e.to_string())?;
                let sol = m.solve(rhs).map_err(|e| e.to_string())?;
                let computed = fmt_solution(&sol);
                let expected = fmt_expected_solution(expect);
                let pass = match (&sol, expect) {
                    (LinearSolution::Unique(got), ExpectedSolve::Unique(want)) => got == want,
                    (LinearSolution::NoSolution, ExpectedSolve::NoSolution) => true,
                    (LinearSolution::NonUnique, ExpectedSolve::NonUnique) => true,
                    _ => false,
                };
                Ok(Outcome {
                    pass,
                    computed,
                    expected,
                    detail: None,
                })
            }
            CheckOp::InIntegerSpan {
                vectors,
                target,
                expect,
            } => {
                let got = in_integer_span(vectors, target).map_err(|e| e.to_string())?;
                Ok(Outcome::compare(&got, expect))
            }
            CheckOp::ValidateLattice { scope, expect } => {
                let scope = self.scope(scope)?;
                let report = scope.lattice().validate();
                let computed = if report.is_valid() {
                    "valid".to_string()
                } else {
                    format!("invalid: {report}")
                };
                Ok(Outcome {
                    pass: report.is_valid() == *expect,
                    computed,
                    expected: if *expect { "valid" } else { "invalid" }.to_string(),
                    detail: None,
                })
            }
            CheckOp::Pair {
                scope,
                a,
                b,
                expect,
            } => {
                let scope = self.scope(scope)?;
                let a = scope.class(a)?;
                let b = scope.class(b)?;
                let got = a.pair(&b).map_err(|e| e.to_string())?;
                Ok(Outcome::compare(&got, expect))
            }
            CheckOp::ClassesEquivalent {
                scope,
                a,
                b,
                expect,
            } => {
                let scope = self.scope(scope)?;
                let a = scope.class(a)?;
                let b = scope.class(b)?;
                let got = a.equivalent(&b).map_err(|e| e.to_string())?;
                Ok(Outcome::compare(&got, expect))
            }
            CheckOp::Conjugate {
                scope,
                class,
                expect,
                up_to_relations,
            } => {
                let scope = self.scope(scope)?;
                let class = scope.class(class)?;
                let expect = scope.class(expect)?;
                let got = class.conjugate().map_err(|e| e.to_string())?;
                let pass = if *up_to_relations {
                    got.equivalent(&expect).map_err(|e| e.to_string())?
                } else {
                    got == expect
                };
                Ok(Outcome {
                    pass,
                    computed: got.to_string(),
                    expected: expect.to_string(),
                    detail: None,
                })
            }
            CheckOp::AdjunctionGenus {
                surface,
                class,
                expect,
            } => {
                let s = self.surface(surface)?;
                let d = surface_class(s, class)?;
                let got = s.adjunction_genus(&d).map_err(|e| e.to_string())?;
                Ok(Outcome::compare(&got, expect))
            }
            CheckOp::RrChi {
                surface,
                class,
                expect,
            } => {
                let s = self.surface(surface)?;
                let l = surface_class(s, class)?;
                let got = s.rr_chi(&l).map_err(|e| e.to_string())?;
                Ok(Outcome::compare(&got, expect))
            }
            CheckOp::ThetaChi { surface, expect } => {
                let s = self.surface(surface)?;
                let got = s.theta_chi().map_err(|e| e.to_string())?;
                Ok(Outcome::compare(&got, expect))
            }
            CheckOp::GramNegativeDefinite {
                scope,
                classes,
                expect,
            } => {
                let scope = self.scope(scope)?;
                let vs: Vec<ClassVector> = classes
                    .iter()
                    .map(|c| scope.class(c))
                    .collect::<Result<_, _>>()?;
                let m = vs.len();
                let mut gram = IntMatrix::zero(m, m);
                for i in 0..m {
                    for j in 0..m {
                        gram.set(i, j, vs[i].pair(&vs[j]).map_err(|e| e.to_string())?);
                    }
                }
                let got = gram.is_negative_definite().map_err(|e| e.to_string())?;
                Ok(Outcome::compare(&got, expect))
            }
            CheckOp::Zariski {
                surface,
                divisor,
                components,
                expect,
            } => {
                let s = self.surface(surface)?;
                let d = surface_class(s, divisor)?;
                let comps: Vec<&str> = components.iter().map(String::as_str).collect();
                let z = s.zariski_decompose(&d, &comps).map_err(|e| e.to_string())?;
                let mut pass = true;
                let mut computed = String::new();
                let mut expected = String::new();
                if let Some(want) = &expect.coefficients {
                    if want.len() != z.coefficients.len() {
                        return Err(format!(
                            "expectation lists {} coefficients but there are {} components",
                            want.len(),
                            z.coefficients.len()
                        ));
                    }
                    let got: Vec<&Rat> = z.coefficients.iter().map(|(_, c)| c).collect();
                    pass &= got.iter().zip(want).all(|(g, w)| **g == *w);
                    computed.push_str(&format!(
                        "N = ({})",
                        z.coefficients
                            .iter()
                            .map(|(name, c)| format!("{}·{name}", fmt_rat(c)))
                            .collect::<Vec<_>>()
                            .join(", ")
                    ));
                    expected.push_str(&format!(
                        "N = ({})",
                        want.iter()
                            .zip(components)
                            .map(|(c, name)| format!("{}·{name}", fmt_rat(c)))
                            .collect::<Vec<_>>()
                            .join(", ")
                    ));
                }
                if let Some(want) = expect.positive_is_zero {
                    let got = z.positive_is_zero();
                    pass &= got == want;
                    push_part(&mut computed, &format!("P zero: {got}"));
                    push_part(&mut expected, &format!("P zero: {want}"));
                }
                if let Some(want) = expect.negative_is_zero {
                    let got = z.negative_is_zero();
                    pass &= got == want;
                    push_part(&mut computed, &format!("N zero: {got}"));
                    push_part(&mut expected, &format!("N zero: {want}"));
                }
                Ok(Outcome {
                    pass,
                    computed,
                    expected,
                    detail: None,
                })
            }
            CheckOp::Triple {
                ring,
                x,
                y,
                z,
                expect,
            } => {
                let got = match ring {
                    RingRef::Base(name) => {
                        let r = self.ring(name)?;
                        r.triple(
                            &base_class(r, x)?,
                            &base_class(r, y)?,
                            &base_class(r, z)?,
                        )
                    }
                    RingRef::Extended(name) => {
                        let r = self.blowup(name)?;
                        r.triple(&ext_class(r, x)?, &ext_class(r, y)?, &ext_class(r, z)?)
                    }
                };
                Ok(Outcome::compare(&got, expect))
            }
            CheckOp::C2Pair {
                ring,
                class,
                expect,
            } => {
                let got = match ring {
                    RingRef::Base(name) => {
                        let r = self.ring(name)?;
                        r.c2_pair(&base_class(r, class)?)
                    }
                    RingRef::Extended(name) => {
                        let r = self.blowup(name)?;
                        r.c2_pair(&ext_class(r, class)?)
                    }
                };
                Ok(Outcome::compare(&got, expect))
            }
            CheckOp::Rr3Chi {
                ring,
                class,
                expect,
            } => {
                let got = match ring {
                    RingRef::Base(name) => {
                        let r = self.ring(name)?;
                        r.rr3_chi(&base_class(r, class)?)
                    }
                    RingRef::Extended(name) => {
                        let r = self.blowup(name)?;
                        r.rr3_chi(&ext_class(r, class)?)
                    }
                };
                Ok(Outcome {
                    pass: got == *expect,
                    computed: fmt_rat(&got),
                    expected: fmt_rat(expect),
                    detail: None,
                })
            }
            CheckOp::ChiAfterBlowup {
                chi,
                l_dot_c,
                genus,
                expect,
            } => {
                let got = chi_after_blowup(chi, l_dot_c, genus);
                Ok(Outcome {
                    pass: got == *expect,
                    computed: fmt_rat(&got),
                    expected: fmt_rat(expect),
                    detail: None,
                })
            }
            CheckOp::NormalBundleDegree { source, expect } => {
                let got = match source {
                    NormalSource::Inline { genus, f_degree } => {
                        let curve = CurveData {
                            name: "inline".to_string(),
                            genus: genus.clone(),
                            degrees: BaseClass {
                                f: f_degree.clone(),
                                alphas: vec![],
                            },
                        };
                        normal_bundle_degree(&curve)
                    }
                    NormalSource::Record { blowup, curve } => {
                        let ext = self.blowup(blowup)?;
                        let (_, record) = ext.record(curve).map_err(|e| e.to_string())?;
                        record.normal_degree()
                    }
                };
                Ok(Outcome::compare(&got, expect))
            }
            CheckOp::RestrictEquivalent {
                ring,
                class,
                surface,
                shift,
                expect,
            } => {
                let r = self.ring(ring)?;
                let s = self.surface(surface)?;
                let l = base_class(r, class)?;
                let mut restricted = r.restrict_to_surface(&l, s).map_err(|e| e.to_string())?;
                if let Some(shift) = shift {
                    let shift = surface_class(s, shift)?;
                    restricted = restricted.try_sub(&shift).map_err(|e| e.to_string())?;
                }
                let want = surface_class(s, expect)?;
                let pass = restricted.equivalent(&want).map_err(|e| e.to_string())?;
                Ok(Outcome {
                    pass,
                    computed: restricted.to_string(),
                    expected: format!("≡ {want}"),
                    detail: None,
                })
            }
            CheckOp::RestrictPair {
                ring,
                class,
                surface,
                against,
                expect,
            } => {
                let r = self.ring(ring)?;
                let s = self.surface(surface)?;
                let l = base_class(r, class)?;
                let restricted = r.restrict_to_surface(&l, s).map_err(|e| e.to_string())?;
                let against = surface_class(s, against)?;
                let got = restricted.pair(&against).map_err(|e| e.to_string())?;
                Ok(Outcome::compare(&got, expect))
            }
            CheckOp::ExceptionalRestriction {
                blowup,
                center,
                class,
                expect,
            } => {
                let ext = self.blowup(blowup)?;
                let l = ext_class(ext, class)?;
                let h = ext
                    .exceptional_restriction(center, &l)
                    .map_err(|e| e.to_string())?;
                let computed = fmt_hirzebruch(&h);
                let (pass, expected) = match expect {
                    ExpectedHirzebruch::Coords { e, a, f } => (
                        h.e == *e && h.a == *a && h.f == *f,
                        fmt_hirzebruch(&HirzebruchClass {
                            e: e.clone(),
                            a: a.clone(),
                            f: f.clone(),
                        }),
                    ),
                    ExpectedHirzebruch::Bidegree(x, y) => {
                        let got = h.bidegree().map_err(|e| e.to_string())?;
                        (
                            got.0 == *x && got.1 == *y,
                            format!("bidegree ({x}, {y})"),
                        )
                    }
                    ExpectedHirzebruch::Anticanonical => (
                        h.is_anticanonical(),
                        "the anticanonical class".to_string(),
                    ),
                };
                Ok(Outcome {
                    pass,
                    computed,
                    expected,
                    detail: None,
                })
            }
            CheckOp::HomologyZero { ring, expect } => {
                let got = self.ring(ring)?.homology_zero_check();
                Ok(Outcome::compare(&got, expect))
            }
            CheckOp::ExcSelfIntersection { blowup, expect } => {
                let got = self
                    .blowup(blowup)?
                    .exceptional_self_intersection_in_divisor()
                    .map_err(|e| e.to_string())?;
                Ok(Outcome::compare(&got, expect))
            }
            CheckOp::Propagate {
                sequences,
                facts,
                expect,
            } => {
                let seqs: Vec<ExactSequence> = sequences
                    .iter()
                    .map(|s| {
                        self.sequences
                            .get(s)
                            .cloned()
                            .ok_or_else(|| format!("unknown sequence '{s}'"))
                    })
                    .collect::<Result<_, _>>()?;
                let fs: Vec<CohFact> = facts
                    .iter()
                    .map(|f| {
                        self.facts
                            .get(f)
                            .cloned()
                            .ok_or_else(|| format!("unknown fact '{f}'"))
                    })
                    .collect::<Result<_, _>>()?;
                let report = propagate(&seqs, &fs).map_err(|e| e.to_string())?;
                let mut pass = true;
                let mut computed = Vec::new();
                let mut expected = Vec::new();
                for (space, want) in &expect.dims {
                    match report.dim(space) {
                        Some(got) => {
                            pass &= got == want;
                            computed.push(format!("{space} = {got}"));
                        }
                        None => {
                            pass = false;
                            computed.push(format!("{space} undetermined"));
                        }
                    }
                    expected.push(format!("{space} = {want}"));
                }
                Ok(Outcome {
                    pass,
                    computed: computed.join("; "),
                    expected: expected.join("; "),
                    detail: None,
                })
            }
            CheckOp::Moduli { case, expect } => {
                let case = parse_moduli_case(case)?;
                let report = moduli_pipeline(&case).map_err(|e| e.to_string())?;
                let mut pass = true;
                let mut computed = Vec::new();
                let mut expected = Vec::new();
                for (space, want) in &expect.dims {
                    match report.propagation.dim(space) {
                        Some(got) => {
                            pass &= got == want;
                            computed.push(format!("{space} = {got}"));
                        }
                        None => {
                            pass = false;
                            computed.push(format!("{space} undetermined"));
                        }
                    }
                    expected.push(format!("{space} = {want}"));
                }
                for (quantity, want) in &expect.entries {
                    match report.entry(quantity) {
                        Some(e) => {
                            pass &= &e.value == want;
                            computed.push(format!("{quantity} = {} ({})", e.value, e.kind));
                        }
                        None => {
                            pass = false;
                            computed.push(format!("{quantity} missing"));
                        }
                    }
                    expected.push(format!("{quantity} = {want}"));
                }
                Ok(Outcome {
                    pass,
                    computed: computed.join("; "),
                    expected: expected.join("; "),
                    detail: None,
                })
            }
        }
    }
}

struct Outcome {
    pass: bool,
    computed: String,
    expected: String,
    detail: Option<String>,
}

impl Outcome {
    fn compare<T: PartialEq + std::fmt::Display>(got: &T, want: &T) -> Outcome {
        Outcome {
            pass: got == want,
            computed: got.to_string(),
            expected: want.to_string(),
            detail: None,
        }
    }
}

enum Scope<'a> {
    Lattice(&'a Arc<Lattice>),
    Surface(&'a SurfaceModel),
}

impl Scope<'_> {
    fn lattice(&self) -> &Arc<Lattice> {
        match self {
            Scope::Lattice(l) => l,
            Scope::Surface(s) => &s.lattice,
        }
    }

    fn class(&self, expr: &ClassExpr) -> Result<ClassVector, String> {
        match (self, expr) {
            (_, ClassExpr::Coords(coords)) => self
                .lattice()
                .class(coords.clone())
                .map_err(|e| e.to_string()),
            (Scope::Lattice(l), ClassExpr::Terms(terms)) => {
                let borrowed: Vec<(&str, Int)> = terms
                    .iter()
                    .map(|(name, c)| (name.as_str(), c.clone()))
                    .collect();
                l.class_from_terms(&borrowed).map_err(|e| e.to_string())
            }
            (Scope::Surface(s), ClassExpr::Terms(_)) => surface_class(s, expr),
        }
    }
}

fn surface_class(s: &SurfaceModel, expr: &ClassExpr) -> Result<ClassVector, String> {
    match expr {
        ClassExpr::Coords(coords) => s
            .lattice
            .class(coords.clone())
            .map_err(|e| e.to_string()),
        ClassExpr::Terms(terms) => {
            let borrowed: Vec<(&str, Int)> = terms
                .iter()
                .map(|(name, c)| (name.as_str(), c.clone()))
                .collect();
            s.combination(&borrowed).map_err(|e| e.to_string())
        }
    }
}

/// Interpret a term key in a base ring: `F` or `alpha<i>` with 1 ≤ i ≤ n.
fn base_slot(key: &str, n: usize) -> Result<Option<usize>, String> {
    if key == "F" {
        return Ok(None);
    }
    if let Some(rest) = key.strip_prefix("alpha") {
        let i: usize = rest
            .parse()
            .map_err(|_| format!("bad generator '{key}' (use F or alpha1..alpha{n})"))?;
        if i == 0 || i > n {
            return Err(format!("alpha index {i} out of range 1..{n}"));
        }
        return Ok(Some(i - 1));
    }
    Err(format!("unknown generator '{key}' (use F or alpha1..alpha{n})"))
}

fn base_class(ring: &TwistorRing, expr: &ClassExpr) -> Result<BaseClass, String> {
    match expr {
        ClassExpr::Coords(coords) => {
            if coords.len() != ring.n + 1 {
                return Err(format!(
                    "base class coordinates need length {} (F, alpha1..alpha{}), got {}",
                    ring.n + 1,
                    ring.n,
                    coords.len()
                ));
            }
            Ok(BaseClass {
                f: coords[0].clone(),
                alphas: coords[1..].to_vec(),
            })
        }
        ClassExpr::Terms(terms) => {
            let mut out = BaseClass::zero(ring.n);
            for (key, c) in terms {
                match base_slot(key, ring.n)? {
                    None => out.f += c,
                    Some(i) => out.alphas[i] += c,
                }
            }
            Ok(out)
        }
    }
}

fn ext_class(ext: &ExtendedRing, expr: &ClassExpr) -> Result<ExtClass, String> {
    let n = ext.base.n;
    let k = ext.blowups.len();
    match expr {
        ClassExpr::Coords(coords) => {
            if coords.len() != n + 1 + k {
                return Err(format!(
                    "extended class coordinates need length {} (F, alphas, exceptionals), got {}",
                    n + 1 + k,
                    coords.len()
                ));
            }
            Ok(ExtClass {
                base: BaseClass {
                    f: coords[0].clone(),
                    alphas: coords[1..=n].to_vec(),
                },
                exc: coords[n + 1..].to_vec(),
            })
        }
        ClassExpr::Terms(terms) => {
            let mut base = BaseClass::zero(n);
            let mut exc = vec![Int::zero(); k];
            for (key, c) in terms {
                if let Some(idx) = ext.blowups.iter().position(|b| b.label == *key) {
                    exc[idx] += c;
                    continue;
                }
                match base_slot(key, n).map_err(|e| {
                    format!(
                        "{e}; exceptional labels here are {}",
                        ext.blowups
                            .iter()
                            .map(|b| b.label.as_str())
                            .collect::<Vec<_>>()
                            .join(", ")
                    )
                })? {
                    None => base.f += c,
                    Some(i) => base.alphas[i] += c,
                }
            }
            Ok(ExtClass { base, exc })
        }
    }
}

fn curve_from_decl(c: &CurveDecl, n: usize, path: &str) -> PResult<CurveData> {
    if c.alpha_degrees.len() != n {
        return Err(ParseError::new(
            &format!("{path}.alpha_degrees"),
            format!("need {n} alpha degrees, got {}", c.alpha_degrees.len()),
        ));
    }
    Ok(CurveData {
        name: c.name.clone(),
        genus: c.genus.clone(),
        degrees: BaseClass {
            f: c.f_degree.clone(),
            alphas: c.alpha_degrees.clone(),
        },
    })
}

fn build_surface(builder: &str, path: &str) -> PResult<SurfaceModel> {
    if builder == "quadric" {
        return Ok(SurfaceModel::quadric());
    }
    if builder == "S_K3" {
        return build_s_k3().map_err(|e| ParseError::new(path, e.to_string()));
    }
    if let Some(rest) = builder.strip_prefix("S_elliptic:") {
        let n: usize = rest.parse().map_err(|_| {
            ParseError::new(path, format!("bad parameter in builder '{builder}'"))
        })?;
        return build_s_elliptic(n).map_err(|e| ParseError::new(path, e.to_string()));
    }
    if let Some(rest) = builder.strip_prefix("hirzebruch:") {
        let e: u64 = rest.parse().map_err(|_| {
            ParseError::new(path, format!("bad parameter in builder '{builder}'"))
        })?;
        return Ok(SurfaceModel::hirzebruch(e));
    }
    Err(ParseError::new(
        path,
        format!(
            "unknown builder '{builder}' (expected quadric, hirzebruch:e, S_elliptic:n, or S_K3)"
        ),
    ))
}

fn parse_moduli_case(case: &str) -> Result<ModuliCase, String> {
    if case == "k3" {
        return Ok(ModuliCase::K3);
    }
    if let Some(rest) = case.strip_prefix("elliptic:") {
        let n: usize = rest
            .parse()
            .map_err(|_| format!("bad parameter in case '{case}'"))?;
        return Ok(ModuliCase::Elliptic { n });
    }
    Err(format!(
        "unknown moduli case '{case}' (expected elliptic:n or k3)"
    ))
}

fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

fn fmt_solution(sol: &LinearSolution) -> String {
    match sol {
        LinearSolution::Unique(v) => format!(
            "unique ({})",
            v.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
        ),
        LinearSolution::NoSolution => "no_solution".to_string(),
        LinearSolution::NonUnique => "non_unique".to_string(),
    }
}

fn fmt_expected_solution(e: &ExpectedSolve) -> String {
    match e {
        ExpectedSolve::Unique(v) => format!(
            "unique ({})",
            v.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
        ),
        ExpectedSolve::NoSolution => "no_solution".to_string(),
        ExpectedSolve::NonUnique => "non_unique".to_string(),
    }
}

fn fmt_hirzebruch(h: &HirzebruchClass) -> String {
    format!("{h} on F_{}", h.e)
}

fn push_part(buf: &mut String, part: &str) {
    if !buf.is_empty() {
        buf.push_str("; ");
    }
    buf.push_str(part);
}
