//! Cohomology dimension bookkeeping.
//!
//! A [`CohFact`] records the dimension of one cohomology space, either as a
//! number or as a linear expression `c + k·n` in a single parameter n.
//! An [`ExactSequence`] imposes the alternating-sum constraint
//! `Σ (−1)ⁱ·dim(spaceᵢ) = total` — with total 0 for an exact sequence of
//! vector spaces, or total χ for a sheaf Euler-characteristic identity.
//! [`propagate`] closes a fact set under all declared constraints, solving
//! each sequence that is down to a single unknown, and reports
//! contradictions by sequence name.
//!
//! The ledger is a bookkeeper, not a cohomology engine: vanishing facts
//! (h⁰, h², …) always arrive as declared inputs, and only the arithmetic
//! consequences are derived.

use crate::exact::{int, rat, Int, Rat};
use crate::surface::{build_s_elliptic, build_s_k3, SurfaceError};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    #[error("sequence '{sequence}' is inconsistent: {detail}")]
    Contradiction { sequence: String, detail: String },
    #[error("conflicting values for '{space}': {a} vs {b}")]
    ConflictingFact { space: String, a: String, b: String },
    #[error("dimension of '{space}' would be negative: {value}")]
    NegativeDimension { space: String, value: String },
    #[error("cannot parse {input:?} as a linear expression in n: {detail}")]
    Parse { input: String, detail: String },
    #[error("invalid moduli case: {detail}")]
    InvalidCase { detail: String },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// A linear expression `c + k·n` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinExpr {
    pub c: Rat,
    pub k: Rat,
}

impl LinExpr {
    pub fn zero() -> LinExpr {
        LinExpr {
            c: Rat::zero(),
            k: Rat::zero(),
        }
    }

    pub fn constant(c: Rat) -> LinExpr {
        LinExpr { c, k: Rat::zero() }
    }

    pub fn from_int(v: i64) -> LinExpr {
        LinExpr::constant(rat(&int(v)))
    }

    pub fn from_bigint(v: &Int) -> LinExpr {
        LinExpr::constant(rat(v))
    }

    /// c + k·n.
    pub fn linear(c: i64, k: i64) -> LinExpr {
        LinExpr {
            c: rat(&int(c)),
            k: rat(&int(k)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.k.is_zero()
    }

    /// True when the expression does not involve n.
    pub fn is_numeric(&self) -> bool {
        self.k.is_zero()
    }

    pub fn eval(&self, n: &Int) -> Rat {
        &self.c + &self.k * rat(n)
    }

    pub fn add(&self, other: &LinExpr) -> LinExpr {
        LinExpr {
            c: &self.c + &other.c,
            k: &self.k + &other.k,
        }
    }

    pub fn sub(&self, other: &LinExpr) -> LinExpr {
        LinExpr {
            c: &self.c - &other.c,
            k: &self.k - &other.k,
        }
    }

    pub fn neg(&self) -> LinExpr {
        LinExpr {
            c: -&self.c,
            k: -&self.k,
        }
    }
}

impl fmt::Display for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k.is_zero() {
            return write!(f, "{}", self.c);
        }
        if self.k.is_one() {
            write!(f, "n")?;
        } else if self.k == -Rat::one() {
            write!(f, "-n")?;
        } else {
            write!(f, "{}n", self.k)?;
        }
        if self.c.is_positive() {
            write!(f, " + {}", self.c)?;
        } else if self.c.is_negative() {
            write!(f, " - {}", -&self.c)?;
        }
        Ok(())
    }
}

impl FromStr for LinExpr {
    type Err = LedgerError;

    /// Accepts forms like `5`, `-3/2`, `n`, `7n - 14`, `2*n+1`, `15-7n`.
    fn from_str(s: &str) -> Result<LinExpr, LedgerError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |detail: &str| LedgerError::Parse {
            input: s.to_string(),
            detail: detail.to_string(),
        };
        if compact.is_empty() {
            return Err(err("empty expression"));
        }
        let mut out = LinExpr::zero();
        let mut chunk = String::new();
        let mut chunks: Vec<String> = Vec::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !chunk.is_empty() {
                chunks.push(std::mem::take(&mut chunk));
            }
            chunk.push(ch);
        }
        chunks.push(chunk);
        for piece in chunks {
            if piece == "+" || piece == "-" || piece.is_empty() {
                return Err(err("dangling sign"));
            }
            let (body, is_n) = match piece.strip_suffix('n') {
                Some(rest) => {
                    let rest = rest
                        .strip_suffix('*')
                        .or_else(|| rest.strip_suffix('·'))
                        .unwrap_or(rest);
                    (rest.to_string(), true)
                }
                None => (piece.clone(), false),
            };
            let coeff = if body.is_empty() || body == "+" {
                Rat::one()
            } else if body == "-" {
                -Rat::one()
            } else {
                Rat::from_str(&body).map_err(|e| err(&format!("bad coefficient {body:?}: {e}")))?
            };
            if is_n {
                out.k += coeff;
            } else {
                out.c += coeff;
            }
        }
        Ok(out)
    }
}

/// Where a fact came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactSource {
    Declared,
    Derived { sequence: String },
}

/// The dimension of one named cohomology space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohFact {
    pub space: String,
    pub dim: LinExpr,
    pub source: FactSource,
}

impl CohFact {
    pub fn declared(space: &str, dim: LinExpr) -> CohFact {
        CohFact {
            space: space.to_string(),
            dim,
            source: FactSource::Declared,
        }
    }
}

/// An alternating-sum constraint over named spaces:
/// `Σ (−1)ⁱ·dim(spaces[i]) = total`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSequence {
    pub name: String,
    pub spaces: Vec<String>,
    pub total: LinExpr,
}

impl ExactSequence {
    /// `0 → spaces[0] → spaces[1] → … → 0` exact: alternating sum is 0.
    pub fn vector_spaces(name: &str, spaces: &[&str]) -> ExactSequence {
        ExactSequence {
            name: name.to_string(),
            spaces: spaces.iter().map(|s| s.to_string()).collect(),
            total: LinExpr::zero(),
        }
    }

    /// Euler-characteristic identity: `h⁰ − h¹ + h² − … = χ`.
    pub fn euler(name: &str, spaces: &[&str], chi: LinExpr) -> ExactSequence {
        ExactSequence {
            name: name.to_string(),
            spaces: spaces.iter().map(|s| s.to_string()).collect(),
            total: chi,
        }
    }

    fn sign(i: usize) -> i64 {
        if i.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// Result of constraint propagation: the closed fact set plus which
/// sequences ended fully checked and which stayed underdetermined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropagateReport {
    pub facts: Vec<CohFact>,
    pub verified: Vec<String>,
    pub underdetermined: Vec<String>,
}

impl PropagateReport {
    pub fn dim(&self, space: &str) -> Option<&LinExpr> {
        self.facts.iter().find(|f| f.space == space).map(|f| &f.dim)
    }
}

fn insert_fact(
    known: &mut BTreeMap<String, CohFact>,
    fact: CohFact,
) -> Result<bool, LedgerError> {
    if fact.dim.is_numeric() && fact.dim.c.is_negative() {
        return Err(LedgerError::NegativeDimension {
            space: fact.space.clone(),
            value: fact.dim.to_string(),
        });
    }
    match known.get(&fact.space) {
        None => {
            known.insert(fact.space.clone(), fact);
            Ok(true)
        }
        Some(existing) if existing.dim == fact.dim => Ok(false),
        Some(existing) => Err(LedgerError::ConflictingFact {
            space: fact.space.clone(),
            a: existing.dim.to_string(),
            b: fact.dim.to_string(),
        }),
    }
}

/// Close the fact set under the declared constraints. Each sequence with a
/// single unknown term is solved; sequences with every term known are
/// checked exactly; anything still carrying two or more unknowns at the
/// fixed point is reported as underdetermined.
pub fn propagate(
    seqs: &[ExactSequence],
    facts: &[CohFact],
) -> Result<PropagateReport, LedgerError> {
    let mut known: BTreeMap<String, CohFact> = BTreeMap::new();
    for f in facts {
        insert_fact(&mut known, f.clone())?;
    }
    loop {
        let mut changed = false;
        for seq in seqs {
            let mut unknowns: Vec<(usize, &String)> = Vec::new();
            let mut acc = seq.total.neg();
            for (i, space) in seq.spaces.iter().enumerate() {
                match known.get(space) {
                    Some(f) => {
                        let signed = if ExactSequence::sign(i) == 1 {
                            f.dim.clone()
                        } else {
                            f.dim.neg()
                        };
                        acc = acc.add(&signed);
                    }
                    None => unknowns.push((i, space)),
                }
            }
            match unknowns.len() {
                0 => {
                    if !acc.is_zero() {
                        return Err(LedgerError::Contradiction {
                            sequence: seq.name.clone(),
                            detail: format!(
                                "alternating sum misses the total by {acc}"
                            ),
                        });
                    }
                }
                1 => {
                    let (i, space) = unknowns[0];
                    // sign·dim + acc = 0  ⇒  dim = −sign·acc.
                    let dim = if ExactSequence::sign(i) == 1 {
                        acc.neg()
                    } else {
                        acc.clone()
                    };
                    let fact = CohFact {
                        space: space.clone(),
                        dim,
                        source: FactSource::Derived {
                            sequence: seq.name.clone(),
                        },
                    };
                    if insert_fact(&mut known, fact).map_err(|e| match e {
                        LedgerError::ConflictingFact { space, a, b } => {
                            LedgerError::Contradiction {
                                sequence: seq.name.clone(),
                                detail: format!(
                                    "forces {space} = {b}, but {space} = {a}"
                                ),
                            }
                        }
                        other => other,
                    })? {
                        changed = true;
                    }
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let mut verified = Vec::new();
    let mut underdetermined = Vec::new();
    for seq in seqs {
        if seq.spaces.iter().all(|s| known.contains_key(s)) {
            verified.push(seq.name.clone());
        } else {
            underdetermined.push(seq.name.clone());
        }
    }
    Ok(PropagateReport {
        facts: known.into_values().collect(),
        verified,
        underdetermined,
    })
}

/// Which moduli computation to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuliCase {
    Elliptic { n: usize },
    K3,
}

impl ModuliCase {
    pub fn name(&self) -> String {
        match self {
            ModuliCase::Elliptic { n } => format!("elliptic({n})"),
            ModuliCase::K3 => "k3".to_string(),
        }
    }
}

/// Whether a dimension entry counts complex parameters, real parameters,
/// or a stated mix of the two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimKind {
    Complex,
    Real,
    Mixed,
}

impl fmt::Display for DimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimKind::Complex => write!(f, "complex"),
            DimKind::Real => write!(f, "real"),
            DimKind::Mixed => write!(f, "mixed"),
        }
    }
}

/// One headline number of a moduli pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliEntry {
    pub quantity: String,
    pub value: LinExpr,
    pub kind: DimKind,
}

/// Output of [`moduli_pipeline`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliReport {
    pub case_name: String,
    pub propagation: PropagateReport,
    pub entries: Vec<ModuliEntry>,
}

impl ModuliReport {
    pub fn entry(&self, quantity: &str) -> Option<&ModuliEntry> {
        self.entries.iter().find(|e| e.quantity == quantity)
    }
}

/// The five constraints every moduli pipeline runs: three Euler
/// characteristics and the two restriction sequences
/// `0 → H¹(Θ_{Z,S}) → H¹(Θ_Z) → H¹(K⁻¹_S) → 0` and
/// `0 → H¹(Θ_Z(−S)) → H¹(Θ_{Z,S}) → H¹(Θ_S) → 0`.
pub fn standard_moduli_sequences(
    chi_theta_z: LinExpr,
    chi_antik: LinExpr,
    chi_theta_s: LinExpr,
) -> Vec<ExactSequence> {
    vec![
        ExactSequence::euler(
            "euler(Theta_Z)",
            &[
                "h0(Theta_Z)",
                "h1(Theta_Z)",
                "h2(Theta_Z)",
                "h3(Theta_Z)",
            ],
            chi_theta_z,
        ),
        ExactSequence::euler(
            "euler(K^-1_S)",
            &["h0(K^-1_S)", "h1(K^-1_S)", "h2(K^-1_S)"],
            chi_antik,
        ),
        ExactSequence::euler(
            "euler(Theta_S)",
            &["h0(Theta_S)", "h1(Theta_S)", "h2(Theta_S)"],
            chi_theta_s,
        ),
        ExactSequence::vector_spaces(
            "normal-bundle sequence",
            &["h1(Theta_ZS)", "h1(Theta_Z)", "h1(K^-1_S)"],
        ),
        ExactSequence::vector_spaces(
            "twist sequence",
            &["h1(Theta_Z(-S))", "h1(Theta_ZS)", "h1(Theta_S)"],
        ),
    ]
}

/// Declared vanishing/fixed-dimension inputs shared by both cases; the
/// h⁰ values differ (1,1 for the elliptic family, 0,0 for the K3 family).
fn declared_facts(h0_theta_z: i64, h0_theta_s: i64) -> Vec<CohFact> {
    vec![
        CohFact::declared("h0(Theta_Z)", LinExpr::from_int(h0_theta_z)),
        CohFact::declared("h2(Theta_Z)", LinExpr::zero()),
        CohFact::declared("h3(Theta_Z)", LinExpr::zero()),
        CohFact::declared("h0(K^-1_S)", LinExpr::zero()),
        CohFact::declared("h2(K^-1_S)", LinExpr::zero()),
        CohFact::declared("h0(Theta_S)", LinExpr::from_int(h0_theta_s)),
        CohFact::declared("h2(Theta_S)", LinExpr::zero()),
    ]
}

/// Run a full moduli count: compute the two surface Euler characteristics
/// from the actual surface model, combine with the declared vanishing
/// facts, propagate, and assemble the headline dimensions.
pub fn moduli_pipeline(case: &ModuliCase) -> Result<ModuliReport, LedgerError> {
    let (surface, chi_theta_z, facts, surface_real) = match case {
        ModuliCase::Elliptic { n } => {
            if *n < 5 {
                return Err(LedgerError::InvalidCase {
                    detail: format!("elliptic case needs n ≥ 5, got {n}"),
                });
            }
            let s = build_s_elliptic(*n)?;
            let nn = int(*n as i64);
            let chi_tz = LinExpr::from_bigint(&(int(15) - int(7) * &nn));
            // Real dimension of the surface-configuration moduli:
            // 1 + 2(n−4) = 2n−7.
            let real = LinExpr::from_bigint(&(int(2) * &nn - int(7)));
            (s, chi_tz, declared_facts(1, 1), real)
        }
        ModuliCase::K3 => {
            let s = build_s_k3()?;
            // Ten blown-up points ⇒ the n = 5 ring: χ(Θ_Z) = 15 − 35.
            let chi_tz = LinExpr::from_int(-20);
            (s, chi_tz, declared_facts(0, 0), LinExpr::zero())
        }
    };
    let chi_antik = LinExpr::from_bigint(&surface.rr_chi(&surface.anticanonical()?)?);
    let chi_theta_s = LinExpr::from_bigint(&surface.theta_chi()?);
    let seqs = standard_moduli_sequences(chi_theta_z, chi_antik, chi_theta_s);
    let propagation = propagate(&seqs, &facts)?;
    let h1_twist = propagation
        .dim("h1(Theta_Z(-S))")
        .ok_or_else(|| LedgerError::InvalidCase {
            detail: "pipeline failed to determine h1(Theta_Z(-S))".to_string(),
        })?
        .clone();
    let total = h1_twist.add(&surface_real);
    let entries = vec![
        ModuliEntry {
            quantity: "h1(Theta_Z(-S))".to_string(),
            value: h1_twist,
            kind: DimKind::Complex,
        },
        ModuliEntry {
            quantity: "surface moduli".to_string(),
            value: surface_real,
            kind: DimKind::Real,
        },
        ModuliEntry {
            quantity: "total".to_string(),
            value: total,
            kind: DimKind::Mixed,
        },
    ];
    Ok(ModuliReport {
        case_name: case.name(),
        propagation,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn expr(s: &str) -> LinExpr {
        LinExpr::from_str(s).unwrap()
    }

    #[test]
    fn linexpr_parse_and_display() {
        assert_eq!(expr("7n - 14"), LinExpr::linear(-14, 7));
        assert_eq!(expr("15-7n"), LinExpr::linear(15, -7));
        assert_eq!(expr("n"), LinExpr::linear(0, 1));
        assert_eq!(expr("-n+3"), LinExpr::linear(3, -1));
        assert_eq!(expr("5"), LinExpr::from_int(5));
        assert_eq!(expr("2*n+1"), LinExpr::linear(1, 2));
        assert_eq!(expr("-3/2"), LinExpr::constant(-rat(&int(3)) / rat(&int(2))));
        for e in [
            LinExpr::linear(-14, 7),
            LinExpr::linear(15, -7),
            LinExpr::linear(0, 1),
            LinExpr::linear(0, -1),
            LinExpr::from_int(5),
            LinExpr::zero(),
        ] {
            assert_eq!(expr(&e.to_string()), e, "round trip of {e}");
        }
        assert!(LinExpr::from_str("").is_err());
        assert!(LinExpr::from_str("n^2").is_err());
        assert!(LinExpr::from_str("2m").is_err());
        assert!(LinExpr::from_str("+").is_err());
    }

    #[test]
    fn linexpr_eval() {
        let e = expr("7n-14");
        assert_eq!(e.eval(&int(5)), rat(&int(21)));
        assert_eq!(e.eval(&int(2)), rat(&int(0)));
    }

    #[test]
    fn solves_single_unknown_symbolically() {
        let seqs = vec![ExactSequence::vector_spaces(
            "normal-bundle sequence",
            &["h1(Theta_ZS)", "h1(Theta_Z)", "h1(K^-1_S)"],
        )];
        let facts = vec![
            CohFact::declared("h1(Theta_Z)", expr("7n-14")),
            CohFact::declared("h1(K^-1_S)", expr("2n-9")),
        ];
        let report = propagate(&seqs, &facts).unwrap();
        assert_eq!(report.dim("h1(Theta_ZS)"), Some(&expr("5n-5")));
        assert_eq!(report.verified, vec!["normal-bundle sequence"]);
        assert!(report.underdetermined.is_empty());
        match report
            .facts
            .iter()
            .find(|f| f.space == "h1(Theta_ZS)")
            .map(|f| &f.source)
        {
            Some(FactSource::Derived { sequence }) => {
                assert_eq!(sequence, "normal-bundle sequence")
            }
            other => panic!("expected derived fact, got {other:?}"),
        }
    }

    #[test]
    fn second_sequence_chains() {
        let seqs = vec![ExactSequence::vector_spaces(
            "twist sequence",
            &["h1(Theta_Z(-S))", "h1(Theta_ZS)", "h1(Theta_S)"],
        )];
        let facts = vec![
            CohFact::declared("h1(Theta_ZS)", expr("5n-5")),
            CohFact::declared("h1(Theta_S)", expr("4n-5")),
        ];
        let report = propagate(&seqs, &facts).unwrap();
        assert_eq!(report.dim("h1(Theta_Z(-S))"), Some(&expr("n")));
    }

    #[test]
    fn all_zero_facts_stay_zero() {
        let seqs = vec![ExactSequence::vector_spaces("z", &["A", "B", "C"])];
        let facts = vec![
            CohFact::declared("A", LinExpr::zero()),
            CohFact::declared("B", LinExpr::zero()),
        ];
        let report = propagate(&seqs, &facts).unwrap();
        assert_eq!(report.dim("C"), Some(&LinExpr::zero()));
    }

    #[test]
    fn contradiction_names_the_sequence() {
        let seqs = vec![ExactSequence::vector_spaces("broken", &["A", "B"])];
        let facts = vec![
            CohFact::declared("A", LinExpr::from_int(3)),
            CohFact::declared("B", LinExpr::from_int(4)),
        ];
        match propagate(&seqs, &facts) {
            Err(LedgerError::Contradiction { sequence, .. }) => {
                assert_eq!(sequence, "broken")
            }
            other => panic!("expected contradiction, got {other:?}"),
        }
    }

    #[test]
    fn derived_conflict_names_the_sequence() {
        // Two sequences force different values for C.
        let seqs = vec![
            ExactSequence::vector_spaces("first", &["A", "C"]),
            ExactSequence::vector_spaces("second", &["B", "C"]),
        ];
        let facts = vec![
            CohFact::declared("A", LinExpr::from_int(3)),
            CohFact::declared("B", LinExpr::from_int(4)),
        ];
        assert!(matches!(
            propagate(&seqs, &facts),
            Err(LedgerError::Contradiction { .. })
        ));
    }

    #[test]
    fn conflicting_declarations_rejected() {
        let facts = vec![
            CohFact::declared("A", LinExpr::from_int(3)),
            CohFact::declared("A", LinExpr::from_int(4)),
        ];
        assert!(matches!(
            propagate(&[], &facts),
            Err(LedgerError::ConflictingFact { .. })
        ));
    }

    #[test]
    fn negative_numeric_dimension_rejected() {
        let seqs = vec![ExactSequence::euler(
            "euler",
            &["A", "B"],
            LinExpr::from_int(5),
        )];
        // A − B = 5 with A = 2 forces B = −3.
        let facts = vec![CohFact::declared("A", LinExpr::from_int(2))];
        assert!(matches!(
            propagate(&seqs, &facts),
            Err(LedgerError::NegativeDimension { .. })
        ));
    }

    #[test]
    fn underdetermined_reported() {
        let seqs = vec![ExactSequence::vector_spaces("open", &["A", "B", "C"])];
        let facts = vec![CohFact::declared("A", LinExpr::from_int(1))];
        let report = propagate(&seqs, &facts).unwrap();
        assert_eq!(report.underdetermined, vec!["open"]);
        assert!(report.verified.is_empty());
    }

    #[test]
    fn symbolic_pipeline_matches_concrete_runs() {
        // Fully symbolic facts: the same five constraints with χ values as
        // linear expressions; the derived dimensions must specialize to
        // every concrete pipeline run.
        let seqs = standard_moduli_sequences(
            expr("15-7n"),
            expr("9-2n"),
            expr("6-4n"),
        );
        let report = propagate(&seqs, &declared_facts(1, 1)).unwrap();
        assert_eq!(report.dim("h1(Theta_Z)"), Some(&expr("7n-14")));
        assert_eq!(report.dim("h1(K^-1_S)"), Some(&expr("2n-9")));
        assert_eq!(report.dim("h1(Theta_S)"), Some(&expr("4n-5")));
        assert_eq!(report.dim("h1(Theta_ZS)"), Some(&expr("5n-5")));
        assert_eq!(report.dim("h1(Theta_Z(-S))"), Some(&expr("n")));
        for n in 5..=12usize {
            let concrete = moduli_pipeline(&ModuliCase::Elliptic { n }).unwrap();
            for space in [
                "h1(Theta_Z)",
                "h1(K^-1_S)",
                "h1(Theta_S)",
                "h1(Theta_ZS)",
                "h1(Theta_Z(-S))",
            ] {
                let symbolic = report.dim(space).unwrap().eval(&int(n as i64));
                let direct = concrete.propagation.dim(space).unwrap();
                assert!(direct.is_numeric());
                assert_eq!(direct.c, symbolic, "{space} at n={n}");
            }
        }
    }

    #[test]
    fn elliptic_pipeline_headline_numbers() {
        let r5 = moduli_pipeline(&ModuliCase::Elliptic { n: 5 }).unwrap();
        assert_eq!(
            r5.entry("h1(Theta_Z(-S))").unwrap().value,
            LinExpr::from_int(5)
        );
        assert_eq!(r5.entry("total").unwrap().value, LinExpr::from_int(8));
        assert_eq!(r5.entry("total").unwrap().kind, DimKind::Mixed);
        assert_eq!(
            r5.entry("surface moduli").unwrap().kind,
            DimKind::Real
        );
        let r7 = moduli_pipeline(&ModuliCase::Elliptic { n: 7 }).unwrap();
        assert_eq!(
            r7.entry("h1(Theta_Z(-S))").unwrap().value,
            LinExpr::from_int(7)
        );
        assert_eq!(r7.entry("total").unwrap().value, LinExpr::from_int(14));
        assert!(moduli_pipeline(&ModuliCase::Elliptic { n: 4 }).is_err());
    }

    #[test]
    fn k3_pipeline_headline_numbers() {
        let r = moduli_pipeline(&ModuliCase::K3).unwrap();
        let p = &r.propagation;
        assert_eq!(p.dim("h1(Theta_Z)"), Some(&LinExpr::from_int(20)));
        assert_eq!(p.dim("h1(K^-1_S)"), Some(&LinExpr::from_int(1)));
        assert_eq!(p.dim("h1(Theta_ZS)"), Some(&LinExpr::from_int(19)));
        assert_eq!(p.dim("h1(Theta_S)"), Some(&LinExpr::from_int(14)));
        assert_eq!(p.dim("h1(Theta_Z(-S))"), Some(&LinExpr::from_int(5)));
        assert_eq!(r.entry("total").unwrap().value, LinExpr::from_int(5));
    }

    proptest! {
        /// Propagation recovers dropped facts from consistent systems and
        /// is idempotent and monotone.
        #[test]
        fn recovers_consistent_ground_truth(
            dims in proptest::collection::vec(0i64..=9, 6),
            keep_mask in 0u8..=63,
            chain_len in 3usize..=5
        ) {
            let names = ["A", "B", "C", "D", "E", "G"];
            // Two overlapping sequences built to be consistent with `dims`.
            let mk_seq = |name: &str, idx: &[usize]| {
                let spaces: Vec<&str> = idx.iter().map(|&i| names[i]).collect();
                let total: i64 = idx
                    .iter()
                    .enumerate()
                    .map(|(pos, &i)| ExactSequence::sign(pos) * dims[i])
                    .sum();
                ExactSequence::euler(name, &spaces, LinExpr::from_int(total))
            };
            let s1: Vec<usize> = (0..chain_len).collect();
            let s2: Vec<usize> = (6 - chain_len..6).collect();
            let seqs = vec![mk_seq("s1", &s1), mk_seq("s2", &s2)];
            let facts: Vec<CohFact> = (0..6)
                .filter(|i| keep_mask & (1 << i) != 0)
                .map(|i| CohFact::declared(names[i], LinExpr::from_int(dims[i])))
                .collect();
            let report = propagate(&seqs, &facts).unwrap();
            // Soundness: everything derived matches the ground truth.
            for f in &report.facts {
                let i = names.iter().position(|n| n == &f.space).unwrap();
                prop_assert_eq!(&f.dim, &LinExpr::from_int(dims[i]));
            }
            // Idempotence: feeding the output back changes nothing.
            let again = propagate(&seqs, &report.facts).unwrap();
            prop_assert_eq!(
                again.facts.iter().map(|f| (&f.space, &f.dim)).collect::<Vec<_>>(),
                report.facts.iter().map(|f| (&f.space, &f.dim)).collect::<Vec<_>>()
            );
            // Monotonicity: declaring one more true fact keeps every
            // previously derived fact.
            let mut more = facts.clone();
            more.push(CohFact::declared(names[0], LinExpr::from_int(dims[0])));
            let bigger = propagate(&seqs, &more).unwrap();
            for f in &report.facts {
                prop_assert_eq!(bigger.dim(&f.space), Some(&f.dim));
            }
        }
    }
}
