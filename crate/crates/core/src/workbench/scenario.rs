//! Scenario files: JSON declarations of objects and checks.
//!
//! A scenario is a single JSON document with a schema sentinel, a list of
//! object declarations (lattices, surfaces, rings, blow-ups, sequences,
//! facts) and a list of checks. Parsing is strict: unknown keys, floats,
//! and integers above 53 bits written as bare numbers are rejected with the
//! JSON path of the offending value. Big integers travel as decimal
//! strings; rationals as `"p/q"` strings.

use crate::exact::{Int, Rat};
use crate::ledger::LinExpr;
use serde_json::{Map, Value};
use std::fmt;
use std::str::FromStr;

pub const SCENARIO_SCHEMA: &str = "divisor-workbench/1";

/// Largest integer magnitude accepted as a bare JSON number; anything
/// bigger must be a decimal string so no JSON tool can silently round it.
const SAFE_JSON_INT: i64 = (1 << 53) - 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub path: String,
    pub detail: String,
}

impl ParseError {
    pub fn new(path: &str, detail: impl Into<String>) -> ParseError {
        ParseError {
            path: path.to_string(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}", self.path, self.detail)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

// ---------------------------------------------------------------------
// JSON helpers with path tracking
// ---------------------------------------------------------------------

fn as_object<'a>(v: &'a Value, path: &str) -> PResult<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| ParseError::new(path, "expected a JSON object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> PResult<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| ParseError::new(path, "expected a JSON array"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> PResult<&'a str> {
    v.as_str()
        .ok_or_else(|| ParseError::new(path, "expected a string"))
}

fn as_bool(v: &Value, path: &str) -> PResult<bool> {
    v.as_bool()
        .ok_or_else(|| ParseError::new(path, "expected a boolean"))
}

fn get<'a>(map: &'a Map<String, Value>, key: &str, path: &str) -> PResult<&'a Value> {
    map.get(key)
        .ok_or_else(|| ParseError::new(path, format!("missing required key '{key}'")))
}

fn check_keys(map: &Map<String, Value>, allowed: &[&str], path: &str) -> PResult<()> {
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(ParseError::new(
                path,
                format!(
                    "unknown key '{key}' (allowed: {})",
                    allowed.join(", ")
                ),
            ));
        }
    }
    Ok(())
}

pub(crate) fn parse_int(v: &Value, path: &str) -> PResult<Int> {
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_i64() {
                if x.abs() <= SAFE_JSON_INT {
                    Ok(Int::from(x))
                } else {
                    Err(ParseError::new(
                        path,
                        format!("integer {x} exceeds 53-bit safety; write it as a decimal string"),
                    ))
                }
            } else {
                Err(ParseError::new(
                    path,
                    format!("expected an integer, got non-integral number {n}"),
                ))
            }
        }
        Value::String(s) => Int::from_str(s.trim()).map_err(|e| {
            ParseError::new(path, format!("cannot parse {s:?} as an integer: {e}"))
        }),
        other => Err(ParseError::new(
            path,
            format!("expected an integer (number or decimal string), got {other}"),
        )),
    }
}

pub(crate) fn parse_rat(v: &Value, path: &str) -> PResult<Rat> {
    match v {
        Value::Number(_) => parse_int(v, path).map(Rat::from_integer),
        Value::String(s) => Rat::from_str(s.trim()).map_err(|e| {
            ParseError::new(
                path,
                format!("cannot parse {s:?} as a rational (use \"p/q\" or an integer): {e}"),
            )
        }),
        other => Err(ParseError::new(
            path,
            format!("expected a rational, got {other}"),
        )),
    }
}

fn parse_linexpr(v: &Value, path: &str) -> PResult<LinExpr> {
    match v {
        Value::Number(_) => {
            let i = parse_int(v, path)?;
            Ok(LinExpr::from_bigint(&i))
        }
        Value::String(s) => LinExpr::from_str(s)
            .map_err(|e| ParseError::new(path, e.to_string())),
        other => Err(ParseError::new(
            path,
            format!("expected a linear expression in n (string or integer), got {other}"),
        )),
    }
}

fn parse_int_vec(v: &Value, path: &str) -> PResult<Vec<Int>> {
    let arr = as_array(v, path)?;
    arr.iter()
        .enumerate()
        .map(|(i, item)| parse_int(item, &format!("{path}[{i}]")))
        .collect()
}

fn parse_int_matrix(v: &Value, path: &str) -> PResult<Vec<Vec<Int>>> {
    let arr = as_array(v, path)?;
    arr.iter()
        .enumerate()
        .map(|(i, row)| parse_int_vec(row, &format!("{path}[{i}]")))
        .collect()
}

fn parse_rat_vec(v: &Value, path: &str) -> PResult<Vec<Rat>> {
    let arr = as_array(v, path)?;
    arr.iter()
        .enumerate()
        .map(|(i, item)| parse_rat(item, &format!("{path}[{i}]")))
        .collect()
}

fn parse_string_vec(v: &Value, path: &str) -> PResult<Vec<String>> {
    let arr = as_array(v, path)?;
    arr.iter()
        .enumerate()
        .map(|(i, item)| as_str(item, &format!("{path}[{i}]")).map(|s| s.to_string()))
        .collect()
}

// ---------------------------------------------------------------------
// Class expressions
// ---------------------------------------------------------------------

/// A divisor class written either as raw basis coordinates or as a map of
/// named terms (basis labels, named curves, or exceptional labels,
/// depending on context).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassExpr {
    Coords(Vec<Int>),
    Terms(Vec<(String, Int)>),
}

pub(crate) fn parse_class(v: &Value, path: &str) -> PResult<ClassExpr> {
    match v {
        Value::Array(_) => Ok(ClassExpr::Coords(parse_int_vec(v, path)?)),
        Value::Object(map) => {
            let mut terms = Vec::with_capacity(map.len());
            for (key, val) in map {
                terms.push((key.clone(), parse_int(val, &format!("{path}.{key}"))?));
            }
            Ok(ClassExpr::Terms(terms))
        }
        other => Err(ParseError::new(
            path,
            format!("expected a class (coordinate array or term map), got {other}"),
        )),
    }
}

// ---------------------------------------------------------------------
// Object declarations
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupPointDecl {
    pub label: Option<String>,
    pub on: Vec<(String, Int)>,
    pub conjugate_of: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveDecl {
    pub name: String,
    pub genus: Int,
    pub f_degree: Int,
    pub alpha_degrees: Vec<Int>,
    pub splitting: (Int, Int),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjectDecl {
    Lattice {
        name: String,
        basis: Vec<String>,
        gram: Option<Vec<Vec<Int>>>,
        relations: Vec<Vec<Int>>,
        canonical: Option<Vec<Int>>,
        conjugation: Option<Vec<(String, bool)>>,
    },
    Surface {
        name: String,
        builder: String,
        named_classes: Vec<(String, Vec<Int>)>,
        blowups: Vec<BlowupPointDecl>,
    },
    Ring {
        name: String,
        n: usize,
        f_cubed: Option<Int>,
    },
    BlowupRing {
        name: String,
        ring: String,
        curves: Vec<CurveDecl>,
    },
    Sequence {
        name: String,
        spaces: Vec<String>,
        chi: Option<LinExpr>,
    },
    Fact {
        name: String,
        space: String,
        dim: LinExpr,
    },
}

impl ObjectDecl {
    pub fn name(&self) -> &str {
        match self {
            ObjectDecl::Lattice { name, .. }
            | ObjectDecl::Surface { name, .. }
            | ObjectDecl::Ring { name, .. }
            | ObjectDecl::BlowupRing { name, .. }
            | ObjectDecl::Sequence { name, .. }
            | ObjectDecl::Fact { name, .. } => name,
        }
    }
}

fn parse_object(v: &Value, path: &str) -> PResult<ObjectDecl> {
    let map = as_object(v, path)?;
    let kind = as_str(get(map, "kind", path)?, &format!("{path}.kind"))?;
    let name = as_str(get(map, "name", path)?, &format!("{path}.name"))?.to_string();
    match kind {
        "lattice" => {
            check_keys(
                map,
                &[
                    "kind",
                    "name",
                    "basis",
                    "gram",
                    "relations",
                    "canonical",
                    "conjugation",
                ],
                path,
            )?;
            let basis = parse_string_vec(get(map, "basis", path)?, &format!("{path}.basis"))?;
            let gram = match map.get("gram") {
                None | Some(Value::Null) => None,
                Some(g) => Some(parse_int_matrix(g, &format!("{path}.gram"))?),
            };
            let relations = match map.get("relations") {
                None | Some(Value::Null) => vec![],
                Some(r) => parse_int_matrix(r, &format!("{path}.relations"))?,
            };
            let canonical = match map.get("canonical") {
                None | Some(Value::Null) => None,
                Some(k) => Some(parse_int_vec(k, &format!("{path}.canonical"))?),
            };
            let conjugation = match map.get("conjugation") {
                None | Some(Value::Null) => None,
                Some(c) => {
                    let cpath = format!("{path}.conjugation");
                    let arr = as_array(c, &cpath)?;
                    let mut targets = Vec::with_capacity(arr.len());
                    for (i, item) in arr.iter().enumerate() {
                        let ipath = format!("{cpath}[{i}]");
                        let imap = as_object(item, &ipath)?;
                        check_keys(imap, &["to", "negate"], &ipath)?;
                        let to = as_str(get(imap, "to", &ipath)?, &format!("{ipath}.to"))?;
                        let negate = match imap.get("negate") {
                            None => false,
                            Some(b) => as_bool(b, &format!("{ipath}.negate"))?,
                        };
                        targets.push((to.to_string(), negate));
                    }
                    Some(targets)
                }
            };
            Ok(ObjectDecl::Lattice {
                name,
                basis,
                gram,
                relations,
                canonical,
                conjugation,
            })
        }
        "surface" => {
            check_keys(
                map,
                &["kind", "name", "builder", "named_classes", "blowups"],
                path,
            )?;
            let builder =
                as_str(get(map, "builder", path)?, &format!("{path}.builder"))?.to_string();
            let named_classes = match map.get("named_classes") {
                None | Some(Value::Null) => vec![],
                Some(nc) => {
                    let npath = format!("{path}.named_classes");
                    let nmap = as_object(nc, &npath)?;
                    let mut out = Vec::with_capacity(nmap.len());
                    for (key, val) in nmap {
                        out.push((
                            key.clone(),
                            parse_int_vec(val, &format!("{npath}.{key}"))?,
                        ));
                    }
                    out
                }
            };
            let blowups = match map.get("blowups") {
                None | Some(Value::Null) => vec![],
                Some(b) => {
                    let bpath = format!("{path}.blowups");
                    let arr = as_array(b, &bpath)?;
                    let mut out = Vec::with_capacity(arr.len());
                    for (i, item) in arr.iter().enumerate() {
                        let ipath = format!("{bpath}[{i}]");
                        let imap = as_object(item, &ipath)?;
                        check_keys(imap, &["label", "on", "conjugate_of"], &ipath)?;
                        let label = match imap.get("label") {
                            None | Some(Value::Null) => None,
                            Some(l) => {
                                Some(as_str(l, &format!("{ipath}.label"))?.to_string())
                            }
                        };
                        let on = match imap.get("on") {
                            None | Some(Value::Null) => vec![],
                            Some(o) => {
                                let opath = format!("{ipath}.on");
                                let omap = as_object(o, &opath)?;
                                let mut mult = Vec::with_capacity(omap.len());
                                for (curve, m) in omap {
                                    mult.push((
                                        curve.clone(),
                                        parse_int(m, &format!("{opath}.{curve}"))?,
                                    ));
                                }
                                mult
                            }
                        };
                        let conjugate_of = match imap.get("conjugate_of") {
                            None | Some(Value::Null) => None,
                            Some(c) => Some(
                                as_str(c, &format!("{ipath}.conjugate_of"))?.to_string(),
                            ),
                        };
                        out.push(BlowupPointDecl {
                            label,
                            on,
                            conjugate_of,
                        });
                    }
                    out
                }
            };
            Ok(ObjectDecl::Surface {
                name,
                builder,
                named_classes,
                blowups,
            })
        }
        "ring" => {
            check_keys(map, &["kind", "name", "n", "f_cubed"], path)?;
            let n_val = parse_int(get(map, "n", path)?, &format!("{path}.n"))?;
            let n = usize::try_from(&n_val)
                .map_err(|_| ParseError::new(&format!("{path}.n"), "n must be a small non-negative integer"))?;
            let f_cubed = match map.get("f_cubed") {
                None | Some(Value::Null) => None,
                Some(f) => Some(parse_int(f, &format!("{path}.f_cubed"))?),
            };
            Ok(ObjectDecl::Ring { name, n, f_cubed })
        }
        "blowup" => {
            check_keys(map, &["kind", "name", "ring", "curves"], path)?;
            let ring = as_str(get(map, "ring", path)?, &format!("{path}.ring"))?.to_string();
            let cpath = format!("{path}.curves");
            let arr = as_array(get(map, "curves", path)?, &cpath)?;
            let mut curves = Vec::with_capacity(arr.len());
            for (i, item) in arr.iter().enumerate() {
                let ipath = format!("{cpath}[{i}]");
                let imap = as_object(item, &ipath)?;
                check_keys(
                    imap,
                    &["name", "genus", "f_degree", "alpha_degrees", "splitting"],
                    &ipath,
                )?;
                let cname =
                    as_str(get(imap, "name", &ipath)?, &format!("{ipath}.name"))?.to_string();
                let genus = parse_int(get(imap, "genus", &ipath)?, &format!("{ipath}.genus"))?;
                let f_degree = parse_int(
                    get(imap, "f_degree", &ipath)?,
                    &format!("{ipath}.f_degree"),
                )?;
                let alpha_degrees = parse_int_vec(
                    get(imap, "alpha_degrees", &ipath)?,
                    &format!("{ipath}.alpha_degrees"),
                )?;
                let spath = format!("{ipath}.splitting");
                let split = parse_int_vec(get(imap, "splitting", &ipath)?, &spath)?;
                if split.len() != 2 {
                    return Err(ParseError::new(&spath, "splitting must be a pair [a, b]"));
                }
                curves.push(CurveDecl {
                    name: cname,
                    genus,
                    f_degree,
                    alpha_degrees,
                    splitting: (split[0].clone(), split[1].clone()),
                });
            }
            Ok(ObjectDecl::BlowupRing { name, ring, curves })
        }
        "sequence" => {
            check_keys(map, &["kind", "name", "spaces", "chi"], path)?;
            let spaces = parse_string_vec(get(map, "spaces", path)?, &format!("{path}.spaces"))?;
            let chi = match map.get("chi") {
                None | Some(Value::Null) => None,
                Some(c) => Some(parse_linexpr(c, &format!("{path}.chi"))?),
            };
            Ok(ObjectDecl::Sequence { name, spaces, chi })
        }
        "fact" => {
            check_keys(map, &["kind", "name", "space", "dim"], path)?;
            let space = as_str(get(map, "space", path)?, &format!("{path}.space"))?.to_string();
            let dim = parse_linexpr(get(map, "dim", path)?, &format!("{path}.dim"))?;
            Ok(ObjectDecl::Fact { name, space, dim })
        }
        other => Err(ParseError::new(
            &format!("{path}.kind"),
            format!(
                "unknown object kind {other:?} (expected lattice, surface, ring, blowup, sequence, or fact)"
            ),
        )),
    }
}

// ---------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------

/// Reference to a lattice-like scope: a bare lattice or a surface (whose
/// lattice and named classes are both in play).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScopeRef {
    Lattice(String),
    Surface(String),
}

/// Reference to a base ring or a blow-up extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingRef {
    Base(String),
    Extended(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpectedSolve {
    Unique(Vec<Rat>),
    NoSolution,
    NonUnique,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpectedHirzebruch {
    Coords { e: Int, a: Int, f: Int },
    Bidegree(Int, Int),
    Anticanonical,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiExpect {
    pub coefficients: Option<Vec<Rat>>,
    pub positive_is_zero: Option<bool>,
    pub negative_is_zero: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropagateExpect {
    pub dims: Vec<(String, LinExpr)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliExpect {
    pub dims: Vec<(String, LinExpr)>,
    pub entries: Vec<(String, LinExpr)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalSource {
    Inline { genus: Int, f_degree: Int },
    Record { blowup: String, curve: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOp {
    Det {
        matrix: Vec<Vec<Int>>,
        expect: Int,
    },
    NegativeDefinite {
        matrix: Vec<Vec<Int>>,
        expect: bool,
    },
    SolveLinear {
        matrix: Vec<Vec<Int>>,
        rhs: Vec<Rat>,
        expect: ExpectedSolve,
    },
    InIntegerSpan {
        vectors: Vec<Vec<Int>>,
        target: Vec<Int>,
        expect: bool,
    },
    ValidateLattice {
        scope: ScopeRef,
        expect: bool,
    },
    Pair {
        scope: ScopeRef,
        a: ClassExpr,
        b: ClassExpr,
        expect: Int,
    },
    ClassesEquivalent {
        scope: ScopeRef,
        a: ClassExpr,
        b: ClassExpr,
        expect: bool,
    },
    Conjugate {
        scope: ScopeRef,
        class: ClassExpr,
        expect: ClassExpr,
        up_to_relations: bool,
    },
    AdjunctionGenus {
        surface: String,
        class: ClassExpr,
        expect: Int,
    },
    RrChi {
        surface: String,
        class: ClassExpr,
        expect: Int,
    },
    ThetaChi {
        surface: String,
        expect: Int,
    },
    GramNegativeDefinite {
        scope: ScopeRef,
        classes: Vec<ClassExpr>,
        expect: bool,
    },
    Zariski {
        surface: String,
        divisor: ClassExpr,
        components: Vec<String>,
        expect: ZariskiExpect,
    },
    Triple {
        ring: RingRef,
        x: ClassExpr,
        y: ClassExpr,
        z: ClassExpr,
        expect: Int,
    },
    C2Pair {
        ring: RingRef,
        class: ClassExpr,
        expect: Int,
    },
    Rr3Chi {
        ring: RingRef,
        class: ClassExpr,
        expect: Rat,
    },
    ChiAfterBlowup {
        chi: Rat,
        l_dot_c: Int,
        genus: Int,
        expect: Rat,
    },
    NormalBundleDegree {
        source: NormalSource,
        expect: Int,
    },
    RestrictEquivalent {
        ring: String,
        class: ClassExpr,
        surface: String,
        shift: Option<ClassExpr>,
        expect: ClassExpr,
    },
    RestrictPair {
        ring: String,
        class: ClassExpr,
        surface: String,
        against: ClassExpr,
        expect: Int,
    },
    ExceptionalRestriction {
        blowup: String,
        center: String,
        class: ClassExpr,
        expect: ExpectedHirzebruch,
    },
    HomologyZero {
        ring: String,
        expect: bool,
    },
    ExcSelfIntersection {
        blowup: String,
        expect: Int,
    },
    Propagate {
        sequences: Vec<String>,
        facts: Vec<String>,
        expect: PropagateExpect,
    },
    Moduli {
        case: String,
        expect: ModuliExpect,
    },
}

impl CheckOp {
    pub fn op_name(&self) -> &'static str {
        match self {
            CheckOp::Det { .. } => "det",
            CheckOp::NegativeDefinite { .. } => "is_negative_definite",
            CheckOp::SolveLinear { .. } => "solve_linear",
            CheckOp::InIntegerSpan { .. } => "in_integer_span",
            CheckOp::ValidateLattice { .. } => "validate_lattice",
            CheckOp::Pair { .. } => "pair",
            CheckOp::ClassesEquivalent { .. } => "classes_equivalent",
            CheckOp::Conjugate { .. } => "conjugate",
            CheckOp::AdjunctionGenus { .. } => "adjunction_genus",
            CheckOp::RrChi { .. } => "rr_chi",
            CheckOp::ThetaChi { .. } => "theta_chi",
            CheckOp::GramNegativeDefinite { .. } => "gram_negative_definite",
            CheckOp::Zariski { .. } => "zariski_decompose",
            CheckOp::Triple { .. } => "triple",
            CheckOp::C2Pair { .. } => "c2_pair",
            CheckOp::Rr3Chi { .. } => "rr3_chi",
            CheckOp::ChiAfterBlowup { .. } => "chi_after_blowup",
            CheckOp::NormalBundleDegree { .. } => "normal_bundle_degree",
            CheckOp::RestrictEquivalent { .. } => "restrict_equivalent",
            CheckOp::RestrictPair { .. } => "restrict_pair",
            CheckOp::ExceptionalRestriction { .. } => "exceptional_restriction",
            CheckOp::HomologyZero { .. } => "homology_zero",
            CheckOp::ExcSelfIntersection { .. } => "exc_self_intersection_in_divisor",
            CheckOp::Propagate { .. } => "propagate",
            CheckOp::Moduli { .. } => "moduli_pipeline",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckDecl {
    pub name: String,
    pub op: CheckOp,
}

fn parse_scope(map: &Map<String, Value>, path: &str) -> PResult<ScopeRef> {
    match (map.get("lattice"), map.get("surface")) {
        (Some(l), None) => Ok(ScopeRef::Lattice(
            as_str(l, &format!("{path}.lattice"))?.to_string(),
        )),
        (None, Some(s)) => Ok(ScopeRef::Surface(
            as_str(s, &format!("{path}.surface"))?.to_string(),
        )),
        (Some(_), Some(_)) => Err(ParseError::new(
            path,
            "give either 'lattice' or 'surface', not both",
        )),
        (None, None) => Err(ParseError::new(
            path,
            "missing 'lattice' or 'surface' reference",
        )),
    }
}

fn parse_ring_ref(map: &Map<String, Value>, path: &str) -> PResult<RingRef> {
    match (map.get("ring"), map.get("blowup")) {
        (Some(r), None) => Ok(RingRef::Base(
            as_str(r, &format!("{path}.ring"))?.to_string(),
        )),
        (None, Some(b)) => Ok(RingRef::Extended(
            as_str(b, &format!("{path}.blowup"))?.to_string(),
        )),
        (Some(_), Some(_)) => Err(ParseError::new(
            path,
            "give either 'ring' or 'blowup', not both",
        )),
        (None, None) => Err(ParseError::new(
            path,
            "missing 'ring' or 'blowup' reference",
        )),
    }
}

fn parse_expect_solve(v: &Value, path: &str) -> PResult<ExpectedSolve> {
    let map = as_object(v, path)?;
    check_keys(map, &["kind", "solution"], path)?;
    let kind = as_str(get(map, "kind", path)?, &format!("{path}.kind"))?;
    match kind {
        "unique" => {
            let sol = parse_rat_vec(get(map, "solution", path)?, &format!("{path}.solution"))?;
            Ok(ExpectedSolve::Unique(sol))
        }
        "no_solution" => Ok(ExpectedSolve::NoSolution),
        "non_unique" => Ok(ExpectedSolve::NonUnique),
        other => Err(ParseError::new(
            &format!("{path}.kind"),
            format!("unknown solve outcome {other:?}"),
        )),
    }
}

fn parse_expect_hirzebruch(v: &Value, path: &str) -> PResult<ExpectedHirzebruch> {
    let map = as_object(v, path)?;
    if map.contains_key("anticanonical") {
        check_keys(map, &["anticanonical"], path)?;
        let flag = as_bool(
            get(map, "anticanonical", path)?,
            &format!("{path}.anticanonical"),
        )?;
        if !flag {
            return Err(ParseError::new(
                path,
                "'anticanonical' must be true when present",
            ));
        }
        return Ok(ExpectedHirzebruch::Anticanonical);
    }
    if map.contains_key("bidegree") {
        check_keys(map, &["bidegree"], path)?;
        let bpath = format!("{path}.bidegree");
        let pair = parse_int_vec(get(map, "bidegree", path)?, &bpath)?;
        if pair.len() != 2 {
            return Err(ParseError::new(&bpath, "bidegree must be a pair"));
        }
        return Ok(ExpectedHirzebruch::Bidegree(pair[0].clone(), pair[1].clone()));
    }
    check_keys(map, &["e", "a", "f"], path)?;
    Ok(ExpectedHirzebruch::Coords {
        e: parse_int(get(map, "e", path)?, &format!("{path}.e"))?,
        a: parse_int(get(map, "a", path)?, &format!("{path}.a"))?,
        f: parse_int(get(map, "f", path)?, &format!("{path}.f"))?,
    })
}

fn parse_dim_map(v: &Value, path: &str) -> PResult<Vec<(String, LinExpr)>> {
    let map = as_object(v, path)?;
    let mut out = Vec::with_capacity(map.len());
    for (key, val) in map {
        out.push((key.clone(), parse_linexpr(val, &format!("{path}.{key}"))?));
    }
    Ok(out)
}

fn parse_check(v: &Value, path: &str) -> PResult<CheckDecl> {
    let map = as_object(v, path)?;
    let op_name = as_str(get(map, "op", path)?, &format!("{path}.op"))?;
    let name = match map.get("name") {
        Some(n) => as_str(n, &format!("{path}.name"))?.to_string(),
        None => op_name.to_string(),
    };
    let epath = format!("{path}.expect");
    let class_at = |key: &str| -> PResult<ClassExpr> {
        parse_class(get(map, key, path)?, &format!("{path}.{key}"))
    };
    let int_at = |key: &str| -> PResult<Int> {
        parse_int(get(map, key, path)?, &format!("{path}.{key}"))
    };
    let bool_at = |key: &str| -> PResult<bool> {
        as_bool(get(map, key, path)?, &format!("{path}.{key}"))
    };
    let str_at = |key: &str| -> PResult<String> {
        Ok(as_str(get(map, key, path)?, &format!("{path}.{key}"))?.to_string())
    };
    let op = match op_name {
        "det" => {
            check_keys(map, &["op", "name", "matrix", "expect"], path)?;
            CheckOp::Det {
                matrix: parse_int_matrix(get(map, "matrix", path)?, &format!("{path}.matrix"))?,
                expect: int_at("expect")?,
            }
        }
        "is_negative_definite" => {
            check_keys(map, &["op", "name", "matrix", "expect"], path)?;
            CheckOp::NegativeDefinite {
                matrix: parse_int_matrix(get(map, "matrix", path)?, &format!("{path}.matrix"))?,
                expect: bool_at("expect")?,
            }
        }
        "solve_linear" => {
            check_keys(map, &["op", "name", "matrix", "rhs", "expect"], path)?;
            CheckOp::SolveLinear {
                matrix: parse_int_matrix(get(map, "matrix", path)?, &format!("{path}.matrix"))?,
                rhs: parse_rat_vec(get(map, "rhs", path)?, &format!("{path}.rhs"))?,
                expect: parse_expect_solve(get(map, "expect", path)?, &epath)?,
            }
        }
        "in_integer_span" => {
            check_keys(map, &["op", "name", "vectors", "target", "expect"], path)?;
            CheckOp::InIntegerSpan {
                vectors: parse_int_matrix(get(map, "vectors", path)?, &format!("{path}.vectors"))?,
                target: parse_int_vec(get(map, "target", path)?, &format!("{path}.target"))?,
                expect: bool_at("expect")?,
            }
        }
        "validate_lattice" => {
            check_keys(map, &["op", "name", "lattice", "surface", "expect"], path)?;
            CheckOp::ValidateLattice {
                scope: parse_scope(map, path)?,
                expect: bool_at("expect")?,
            }
        }
        "pair" => {
            check_keys(
                map,
                &["op", "name", "lattice", "surface", "a", "b", "expect"],
                path,
            )?;
            CheckOp::Pair {
                scope: parse_scope(map, path)?,
                a: class_at("a")?,
                b: class_at("b")?,
                expect: int_at("expect")?,
            }
        }
        "classes_equivalent" => {
            check_keys(
                map,
                &["op", "name", "lattice", "surface", "a", "b", "expect"],
                path,
            )?;
            CheckOp::ClassesEquivalent {
                scope: parse_scope(map, path)?,
                a: class_at("a")?,
                b: class_at("b")?,
                expect: bool_at("expect")?,
            }
        }
        "conjugate" => {
            check_keys(
                map,
                &[
                    "op",
                    "name",
                    "lattice",
                    "surface",
                    "class",
                    "expect",
                    "up_to_relations",
                ],
                path,
            )?;
            CheckOp::Conjugate {
                scope: parse_scope(map, path)?,
                class: class_at("class")?,
                expect: parse_class(get(map, "expect", path)?, &epath)?,
                up_to_relations: match map.get("up_to_relations") {
                    None => false,
                    Some(b) => as_bool(b, &format!("{path}.up_to_relations"))?,
                },
            }
        }
        "adjunction_genus" => {
            check_keys(map, &["op", "name", "surface", "class", "expect"], path)?;
            CheckOp::AdjunctionGenus {
                surface: str_at("surface")?,
                class: class_at("class")?,
                expect: int_at("expect")?,
            }
        }
        "rr_chi" => {
            check_keys(map, &["op", "name", "surface", "class", "expect"], path)?;
            CheckOp::RrChi {
                surface: str_at("surface")?,
                class: class_at("class")?,
                expect: int_at("expect")?,
            }
        }
        "theta_chi" => {
            check_keys(map, &["op", "name", "surface", "expect"], path)?;
            CheckOp::ThetaChi {
                surface: str_at("surface")?,
                expect: int_at("expect")?,
            }
        }
        "gram_negative_definite" => {
            check_keys(
                map,
                &["op", "name", "lattice", "surface", "classes", "expect"],
                path,
            )?;
            let cpath = format!("{path}.classes");
            let arr = as_array(get(map, "classes", path)?, &cpath)?;
            let classes = arr
                .iter()
                .enumerate()
                .map(|(i, item)| parse_class(item, &format!("{cpath}[{i}]")))
                .collect::<PResult<Vec<_>>>()?;
            CheckOp::GramNegativeDefinite {
                scope: parse_scope(map, path)?,
                classes,
                expect: bool_at("expect")?,
            }
        }
        "zariski_decompose" => {
            check_keys(
                map,
                &["op", "name", "surface", "divisor", "components", "expect"],
                path,
            )?;
            let emap = as_object(get(map, "expect", path)?, &epath)?;
            check_keys(
                emap,
                &["coefficients", "positive_is_zero", "negative_is_zero"],
                &epath,
            )?;
            let coefficients = match emap.get("coefficients") {
                None | Some(Value::Null) => None,
                Some(c) => Some(parse_rat_vec(c, &format!("{epath}.coefficients"))?),
            };
            let positive_is_zero = match emap.get("positive_is_zero") {
                None => None,
                Some(b) => Some(as_bool(b, &format!("{epath}.positive_is_zero"))?),
            };
            let negative_is_zero = match emap.get("negative_is_zero") {
                None => None,
                Some(b) => Some(as_bool(b, &format!("{epath}.negative_is_zero"))?),
            };
            if coefficients.is_none() && positive_is_zero.is_none() && negative_is_zero.is_none() {
                return Err(ParseError::new(&epath, "empty expectation"));
            }
            CheckOp::Zariski {
                surface: str_at("surface")?,
                divisor: class_at("divisor")?,
                components: parse_string_vec(
                    get(map, "components", path)?,
                    &format!("{path}.components"),
                )?,
                expect: ZariskiExpect {
                    coefficients,
                    positive_is_zero,
                    negative_is_zero,
                },
            }
        }
        "triple" => {
            check_keys(
                map,
                &["op", "name", "ring", "blowup", "x", "y", "z", "expect"],
                path,
            )?;
            CheckOp::Triple {
                ring: parse_ring_ref(map, path)?,
                x: class_at("x")?,
                y: class_at("y")?,
                z: class_at("z")?,
                expect: int_at("expect")?,
            }
        }
        "c2_pair" => {
            check_keys(
                map,
                &["op", "name", "ring", "blowup", "class", "expect"],
                path,
            )?;
            CheckOp::C2Pair {
                ring: parse_ring_ref(map, path)?,
                class: class_at("class")?,
                expect: int_at("expect")?,
            }
        }
        "rr3_chi" => {
            check_keys(
                map,
                &["op", "name", "ring", "blowup", "class", "expect"],
                path,
            )?;
            CheckOp::Rr3Chi {
                ring: parse_ring_ref(map, path)?,
                class: class_at("class")?,
                expect: parse_rat(get(map, "expect", path)?, &epath)?,
            }
        }
        "chi_after_blowup" => {
            check_keys(
                map,
                &["op", "name", "chi", "l_dot_c", "genus", "expect"],
                path,
            )?;
            CheckOp::ChiAfterBlowup {
                chi: parse_rat(get(map, "chi", path)?, &format!("{path}.chi"))?,
                l_dot_c: int_at("l_dot_c")?,
                genus: int_at("genus")?,
                expect: parse_rat(get(map, "expect", path)?, &epath)?,
            }
        }
        "normal_bundle_degree" => {
            check_keys(
                map,
                &[
                    "op", "name", "blowup", "curve", "genus", "f_degree", "expect",
                ],
                path,
            )?;
            let source = if map.contains_key("blowup") {
                NormalSource::Record {
                    blowup: str_at("blowup")?,
                    curve: str_at("curve")?,
                }
            } else {
                NormalSource::Inline {
                    genus: int_at("genus")?,
                    f_degree: int_at("f_degree")?,
                }
            };
            CheckOp::NormalBundleDegree {
                source,
                expect: int_at("expect")?,
            }
        }
        "restrict_equivalent" => {
            check_keys(
                map,
                &["op", "name", "ring", "class", "surface", "shift", "expect"],
                path,
            )?;
            let shift = match map.get("shift") {
                None | Some(Value::Null) => None,
                Some(s) => Some(parse_class(s, &format!("{path}.shift"))?),
            };
            CheckOp::RestrictEquivalent {
                ring: str_at("ring")?,
                class: class_at("class")?,
                surface: str_at("surface")?,
                shift,
                expect: parse_class(get(map, "expect", path)?, &epath)?,
            }
        }
        "restrict_pair" => {
            check_keys(
                map,
                &["op", "name", "ring", "class", "surface", "against", "expect"],
                path,
            )?;
            CheckOp::RestrictPair {
                ring: str_at("ring")?,
                class: class_at("class")?,
                surface: str_at("surface")?,
                against: class_at("against")?,
                expect: int_at("expect")?,
            }
        }
        "exceptional_restriction" => {
            check_keys(
                map,
                &["op", "name", "blowup", "center", "class", "expect"],
                path,
            )?;
            CheckOp::ExceptionalRestriction {
                blowup: str_at("blowup")?,
                center: str_at("center")?,
                class: class_at("class")?,
                expect: parse_expect_hirzebruch(get(map, "expect", path)?, &epath)?,
            }
        }
        "homology_zero" => {
            check_keys(map, &["op", "name", "ring", "expect"], path)?;
            CheckOp::HomologyZero {
                ring: str_at("ring")?,
                expect: bool_at("expect")?,
            }
        }
        "exc_self_intersection_in_divisor" => {
            check_keys(map, &["op", "name", "blowup", "expect"], path)?;
            CheckOp::ExcSelfIntersection {
                blowup: str_at("blowup")?,
                expect: int_at("expect")?,
            }
        }
        "propagate" => {
            check_keys(
                map,
                &["op", "name", "sequences", "facts", "expect"],
                path,
            )?;
            let emap = as_object(get(map, "expect", path)?, &epath)?;
            check_keys(emap, &["dims"], &epath)?;
            CheckOp::Propagate {
                sequences: parse_string_vec(
                    get(map, "sequences", path)?,
                    &format!("{path}.sequences"),
                )?,
                facts: parse_string_vec(get(map, "facts", path)?, &format!("{path}.facts"))?,
                expect: PropagateExpect {
                    dims: parse_dim_map(get(emap, "dims", &epath)?, &format!("{epath}.dims"))?,
                },
            }
        }
        "moduli_pipeline" => {
            check_keys(map, &["op", "name", "case", "expect"], path)?;
            let emap = as_object(get(map, "expect", path)?, &epath)?;
            check_keys(emap, &["dims", "entries"], &epath)?;
            let dims = match emap.get("dims") {
                None => vec![],
                Some(d) => parse_dim_map(d, &format!("{epath}.dims"))?,
            };
            let entries = match emap.get("entries") {
                None => vec![],
                Some(e) => parse_dim_map(e, &format!("{epath}.entries"))?,
            };
            CheckOp::Moduli {
                case: str_at("case")?,
                expect: ModuliExpect { dims, entries },
            }
        }
        other => {
            return Err(ParseError::new(
                &format!("{path}.op"),
                format!("unknown operation {other:?}"),
            ))
        }
    };
    Ok(CheckDecl { name, op })
}

// ---------------------------------------------------------------------
// Scenario
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub objects: Vec<ObjectDecl>,
    pub checks: Vec<CheckDecl>,
}

impl Scenario {
    pub fn parse(text: &str) -> PResult<Scenario> {
        let value: Value = serde_json::from_str(text).map_err(|e| {
            ParseError::new("$", format!("invalid JSON: {e}"))
        })?;
        Scenario::from_value(&value)
    }

    pub fn from_value(value: &Value) -> PResult<Scenario> {
        let map = as_object(value, "$")?;
        check_keys(map, &["schema", "objects", "checks"], "$")?;
        let schema = as_str(get(map, "schema", "$")?, "$.schema")?;
        if schema != SCENARIO_SCHEMA {
            return Err(ParseError::new(
                "$.schema",
                format!("unsupported schema {schema:?} (expected {SCENARIO_SCHEMA:?})"),
            ));
        }
        let objects = match map.get("objects") {
            None => vec![],
            Some(o) => {
                let arr = as_array(o, "$.objects")?;
                arr.iter()
                    .enumerate()
                    .map(|(i, item)| parse_object(item, &format!("$.objects[{i}]")))
                    .collect::<PResult<Vec<_>>>()?
            }
        };
        // Object names must be unique within their namespace kind; a flat
        // uniqueness rule is simpler and catches more mistakes.
        for (i, obj) in objects.iter().enumerate() {
            for other in objects.iter().skip(i + 1) {
                if obj.name() == other.name() {
                    return Err(ParseError::new(
                        "$.objects",
                        format!("duplicate object name '{}'", obj.name()),
                    ));
                }
            }
        }
        let checks = match map.get("checks") {
            None => vec![],
            Some(c) => {
                let arr = as_array(c, "$.checks")?;
                arr.iter()
                    .enumerate()
                    .map(|(i, item)| parse_check(item, &format!("$.checks[{i}]")))
                    .collect::<PResult<Vec<_>>>()?
            }
        };
        Ok(Scenario { objects, checks })
    }
}
