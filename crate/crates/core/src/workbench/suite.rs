//! The built-in verification suite: a generated scenario exercising every
//! numbered identity the crate implements, for a whole range of blow-up
//! counts n, plus the K3 double-cover configuration and a handful of
//! kernel fixtures.
//!
//! The same generator backs the `paper-suite` CLI subcommand and the
//! shipped `scenarios/paper_suite.json` fixture, so the file in the repo
//! is reproducible byte for byte.

use super::report::Report;
use super::scenario::{ParseError, Scenario};
use super::{run_suite, SCENARIO_SCHEMA};
use serde_json::{json, Map, Value};

/// Build the suite scenario as a JSON value for `n` in `n_min..=n_max`.
pub fn paper_suite_scenario(n_min: usize, n_max: usize) -> Result<Value, ParseError> {
    if n_min < 5 {
        return Err(ParseError::new(
            "n-range",
            format!("each n must be at least 5, got n_min = {n_min}"),
        ));
    }
    if n_max < n_min {
        return Err(ParseError::new(
            "n-range",
            format!("empty range: n_min = {n_min} > n_max = {n_max}"),
        ));
    }
    let mut objects: Vec<Value> = Vec::new();
    let mut checks: Vec<Value> = Vec::new();
    shared_objects(&mut objects);
    shared_checks(&mut checks);
    for n in n_min..=n_max {
        objects_for_n(n, &mut objects);
        checks_for_n(n, &mut checks);
    }
    k3_objects(&mut objects);
    k3_checks(&mut checks);
    Ok(json!({
        "schema": SCENARIO_SCHEMA,
        "objects": objects,
        "checks": checks,
    }))
}

/// Generate and run the suite.
pub fn paper_suite(n_min: usize, n_max: usize) -> Result<Report, ParseError> {
    let value = paper_suite_scenario(n_min, n_max)?;
    let scenario = Scenario::from_value(&value)?;
    run_suite(&scenario)
}

/// Serialize the suite scenario exactly as the shipped fixture stores it.
pub fn paper_suite_text(n_min: usize, n_max: usize) -> Result<String, ParseError> {
    let value = paper_suite_scenario(n_min, n_max)?;
    let mut text =
        serde_json::to_string_pretty(&value).expect("scenario serialization is infallible");
    text.push('\n');
    Ok(text)
}

// ---------------------------------------------------------------------
// JSON building helpers
// ---------------------------------------------------------------------

fn terms(pairs: &[(&str, i64)]) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert((*k).to_string(), json!(v));
    }
    Value::Object(m)
}

/// Term map with coefficient `coeff` on alpha_from..=alpha_to plus fixed
/// extra terms.
fn alpha_terms(from: usize, to: usize, coeff: i64, extra: &[(&str, i64)]) -> Value {
    let mut m = Map::new();
    for (k, v) in extra {
        m.insert((*k).to_string(), json!(v));
    }
    for i in from..=to {
        m.insert(format!("alpha{i}"), json!(coeff));
    }
    Value::Object(m)
}

fn string_list(items: &[String]) -> Value {
    Value::Array(items.iter().map(|s| json!(s)).collect())
}

// ---------------------------------------------------------------------
// Shared objects and checks (independent of the n-range)
// ---------------------------------------------------------------------

fn shared_objects(objects: &mut Vec<Value>) {
    objects.push(json!({
        "kind": "surface",
        "name": "Q",
        "builder": "quadric",
    }));
    objects.push(json!({
        "kind": "surface",
        "name": "F2",
        "builder": "hirzebruch:2",
    }));
    // The five standard constraints, in symbolic form: three Euler
    // characteristics and the two restriction sequences.
    objects.push(json!({
        "kind": "sequence",
        "name": "euler_theta_z",
        "spaces": ["h0(Theta_Z)", "h1(Theta_Z)", "h2(Theta_Z)", "h3(Theta_Z)"],
        "chi": "15-7n",
    }));
    objects.push(json!({
        "kind": "sequence",
        "name": "euler_antik",
        "spaces": ["h0(K^-1_S)", "h1(K^-1_S)", "h2(K^-1_S)"],
        "chi": "9-2n",
    }));
    objects.push(json!({
        "kind": "sequence",
        "name": "euler_theta_s",
        "spaces": ["h0(Theta_S)", "h1(Theta_S)", "h2(Theta_S)"],
        "chi": "6-4n",
    }));
    objects.push(json!({
        "kind": "sequence",
        "name": "normal_bundle_seq",
        "spaces": ["h1(Theta_ZS)", "h1(Theta_Z)", "h1(K^-1_S)"],
    }));
    objects.push(json!({
        "kind": "sequence",
        "name": "twist_seq",
        "spaces": ["h1(Theta_Z(-S))", "h1(Theta_ZS)", "h1(Theta_S)"],
    }));
    for (name, space, dim) in [
        ("fact_h0_tz", "h0(Theta_Z)", 1),
        ("fact_h2_tz", "h2(Theta_Z)", 0),
        ("fact_h3_tz", "h3(Theta_Z)", 0),
        ("fact_h0_antik", "h0(K^-1_S)", 0),
        ("fact_h2_antik", "h2(K^-1_S)", 0),
        ("fact_h0_ts", "h0(Theta_S)", 1),
        ("fact_h2_ts", "h2(Theta_S)", 0),
    ] {
        objects.push(json!({
            "kind": "fact",
            "name": name,
            "space": space,
            "dim": dim,
        }));
    }
}

fn shared_checks(checks: &mut Vec<Value>) {
    // Kernel fixtures: determinant, definiteness, solving, span membership.
    let gram5 = json!([
        [-3, 1, 1, 1, 1],
        [1, -2, 0, 0, 0],
        [1, 0, -2, 0, 0],
        [1, 0, 0, -2, 0],
        [1, 0, 0, 0, -2]
    ]);
    checks.push(json!({
        "op": "det",
        "name": "kernel: det of the five-curve pairing matrix",
        "matrix": gram5,
        "expect": -16,
    }));
    checks.push(json!({
        "op": "det",
        "name": "kernel: det of a rank-2 chain matrix",
        "matrix": [[-2, 1], [1, -2]],
        "expect": 3,
    }));
    checks.push(json!({
        "op": "is_negative_definite",
        "name": "kernel: five-curve matrix is negative definite",
        "matrix": gram5,
        "expect": true,
    }));
    checks.push(json!({
        "op": "is_negative_definite",
        "name": "kernel: hyperbolic plane is indefinite",
        "matrix": [[0, 1], [1, 0]],
        "expect": false,
    }));
    checks.push(json!({
        "op": "solve_linear",
        "name": "kernel: unique solve",
        "matrix": [[1, 1], [0, 1]],
        "rhs": [3, 1],
        "expect": { "kind": "unique", "solution": [2, 1] },
    }));
    checks.push(json!({
        "op": "solve_linear",
        "name": "kernel: inconsistent system",
        "matrix": [[1, 1], [1, 1]],
        "rhs": [0, 1],
        "expect": { "kind": "no_solution" },
    }));
    checks.push(json!({
        "op": "solve_linear",
        "name": "kernel: underdetermined system",
        "matrix": [[1, 1], [1, 1]],
        "rhs": [1, 1],
        "expect": { "kind": "non_unique" },
    }));
    checks.push(json!({
        "op": "in_integer_span",
        "name": "kernel: even vector in 2Z^2",
        "vectors": [[2, 0], [0, 2]],
        "target": [2, 2],
        "expect": true,
    }));
    checks.push(json!({
        "op": "in_integer_span",
        "name": "kernel: odd vector not in 2Z^2",
        "vectors": [[2, 0], [0, 2]],
        "target": [1, 0],
        "expect": false,
    }));
    // Quadric basics.
    checks.push(json!({
        "op": "validate_lattice",
        "name": "quadric: lattice is well formed",
        "surface": "Q",
        "expect": true,
    }));
    checks.push(json!({
        "op": "adjunction_genus",
        "name": "quadric: a (1,1) curve is rational",
        "surface": "Q",
        "class": terms(&[("f1", 1), ("f2", 1)]),
        "expect": 0,
    }));
    checks.push(json!({
        "op": "adjunction_genus",
        "name": "quadric: a (2,2) curve is elliptic",
        "surface": "Q",
        "class": terms(&[("f1", 2), ("f2", 2)]),
        "expect": 1,
    }));
    checks.push(json!({
        "op": "rr_chi",
        "name": "quadric: chi(O) = 1",
        "surface": "Q",
        "class": terms(&[]),
        "expect": 1,
    }));
    checks.push(json!({
        "op": "theta_chi",
        "name": "quadric: chi(Theta) = 6",
        "surface": "Q",
        "expect": 6,
    }));
    // Hirzebruch F_2 sanity.
    checks.push(json!({
        "op": "pair",
        "name": "F_2: A.A = -2",
        "surface": "F2",
        "a": terms(&[("A", 1)]),
        "b": terms(&[("A", 1)]),
        "expect": -2,
    }));
    checks.push(json!({
        "op": "pair",
        "name": "F_2: A.fib = 1",
        "surface": "F2",
        "a": terms(&[("A", 1)]),
        "b": terms(&[("fib", 1)]),
        "expect": 1,
    }));
    // Curve normal-bundle degrees that do not depend on n.
    checks.push(json!({
        "op": "normal_bundle_degree",
        "name": "a degree-2 rational curve has normal degree 2",
        "genus": 0,
        "f_degree": 2,
        "expect": 2,
    }));
    checks.push(json!({
        "op": "normal_bundle_degree",
        "name": "an elliptic curve of degree 0 has normal degree 0",
        "genus": 1,
        "f_degree": 0,
        "expect": 0,
    }));
    // Symbolic cohomology bookkeeping: the five constraints pin every h^1
    // as a linear function of n.
    checks.push(json!({
        "op": "propagate",
        "name": "symbolic: five constraints determine all h^1",
        "sequences": [
            "euler_theta_z",
            "euler_antik",
            "euler_theta_s",
            "normal_bundle_seq",
            "twist_seq"
        ],
        "facts": [
            "fact_h0_tz",
            "fact_h2_tz",
            "fact_h3_tz",
            "fact_h0_antik",
            "fact_h2_antik",
            "fact_h0_ts",
            "fact_h2_ts"
        ],
        "expect": {
            "dims": {
                "h1(Theta_Z)": "7n-14",
                "h1(K^-1_S)": "2n-9",
                "h1(Theta_S)": "4n-5",
                "h1(Theta_ZS)": "5n-5",
                "h1(Theta_Z(-S))": "n"
            }
        },
    }));
}

// ---------------------------------------------------------------------
// Objects and checks per n
// ---------------------------------------------------------------------

fn objects_for_n(n: usize, objects: &mut Vec<Value>) {
    let ni = n as i64;
    objects.push(json!({
        "kind": "surface",
        "name": format!("S{n}"),
        "builder": format!("S_elliptic:{n}"),
    }));
    objects.push(json!({
        "kind": "ring",
        "name": format!("Z{n}"),
        "n": n,
    }));
    // Same ring with F^3 deliberately off by one: the homologous-to-zero
    // identity must detect the perturbation.
    objects.push(json!({
        "kind": "ring",
        "name": format!("Z{n}bad"),
        "n": n,
        "f_cubed": 9 - 2 * ni,
    }));
    let c0 = |split: [i64; 2]| {
        json!({
            "name": "C0",
            "genus": 0,
            "f_degree": 4 - ni,
            "alpha_degrees": vec![1i64; n],
            "splitting": split,
        })
    };
    let cb0 = |split: [i64; 2]| {
        json!({
            "name": "Cb0",
            "genus": 0,
            "f_degree": 4 - ni,
            "alpha_degrees": vec![-1i64; n],
            "splitting": split,
        })
    };
    // Balanced splitting (restricts to CP1 x CP1) and the skew one
    // (restricts to F_2): both sum to the normal degree 6-2n.
    objects.push(json!({
        "kind": "blowup",
        "name": format!("X{n}"),
        "ring": format!("Z{n}"),
        "curves": [c0([3 - ni, 3 - ni]), cb0([3 - ni, 3 - ni])],
    }));
    objects.push(json!({
        "kind": "blowup",
        "name": format!("X{n}s"),
        "ring": format!("Z{n}"),
        "curves": [c0([2 - ni, 4 - ni]), cb0([2 - ni, 4 - ni])],
    }));
    // Integral second cohomology of the twistor space: the ring classes
    // plus one extra generator h with 2h = F + sum(alpha_i).
    let mut basis = vec!["h".to_string(), "F".to_string()];
    let mut relation = vec![json!(2), json!(-1)];
    for i in 1..=n {
        basis.push(format!("alpha{i}"));
        relation.push(json!(-1));
    }
    objects.push(json!({
        "kind": "lattice",
        "name": format!("H{n}"),
        "basis": string_list(&basis),
        "relations": [Value::Array(relation)],
    }));
}

fn checks_for_n(n: usize, checks: &mut Vec<Value>) {
    let ni = n as i64;
    let s = format!("S{n}");
    let z = format!("Z{n}");
    let zbad = format!("Z{n}bad");
    let x = format!("X{n}");
    let xs = format!("X{n}s");
    let h = format!("H{n}");

    // -- surface S(n) ---------------------------------------------------
    checks.push(json!({
        "op": "validate_lattice",
        "name": format!("S({n}): lattice is well formed"),
        "surface": s,
        "expect": true,
    }));
    checks.push(json!({
        "op": "pair",
        "name": format!("S({n}): K.K = 8-2n"),
        "surface": s,
        "a": terms(&[("K", 1)]),
        "b": terms(&[("K", 1)]),
        "expect": 8 - 2 * ni,
    }));
    checks.push(json!({
        "op": "pair",
        "name": format!("S({n}): -K.C0 = 4-n"),
        "surface": s,
        "a": terms(&[("K", -1)]),
        "b": terms(&[("C0", 1)]),
        "expect": 4 - ni,
    }));
    checks.push(json!({
        "op": "rr_chi",
        "name": format!("S({n}): chi(-K) = 9-2n"),
        "surface": s,
        "class": terms(&[("K", -1)]),
        "expect": 9 - 2 * ni,
    }));
    checks.push(json!({
        "op": "theta_chi",
        "name": format!("S({n}): chi(Theta) = 6-4n"),
        "surface": s,
        "expect": 6 - 4 * ni,
    }));
    checks.push(json!({
        "op": "adjunction_genus",
        "name": format!("S({n}): C0 is rational"),
        "surface": s,
        "class": terms(&[("C0", 1)]),
        "expect": 0,
    }));
    checks.push(json!({
        "op": "adjunction_genus",
        "name": format!("S({n}): the fibre class is elliptic"),
        "surface": s,
        "class": terms(&[("f", 1)]),
        "expect": 1,
    }));
    checks.push(json!({
        "op": "classes_equivalent",
        "name": format!("S({n}): the two fibre halves agree up to relations"),
        "surface": s,
        "a": terms(&[("f", 1)]),
        "b": terms(&[("fbar", 1)]),
        "expect": true,
    }));
    checks.push(json!({
        "op": "conjugate",
        "name": format!("S({n}): K is real up to relations"),
        "surface": s,
        "class": terms(&[("K", 1)]),
        "expect": terms(&[("K", 1)]),
        "up_to_relations": true,
    }));
    checks.push(json!({
        "op": "gram_negative_definite",
        "name": format!("S({n}): the five fixed curves span a negative-definite sublattice"),
        "surface": s,
        "classes": [
            terms(&[("C0", 1)]),
            terms(&[("C1", 1)]),
            terms(&[("C2", 1)]),
            terms(&[("C3", 1)]),
            terms(&[("C4", 1)])
        ],
        "expect": true,
    }));
    checks.push(json!({
        "op": "zariski_decompose",
        "name": format!("S({n}): 2C0+C1..C4 is all fixed part"),
        "surface": s,
        "divisor": terms(&[("C0", 2), ("C1", 1), ("C2", 1), ("C3", 1), ("C4", 1)]),
        "components": ["C0", "C1", "C2", "C3", "C4"],
        "expect": {
            "coefficients": [2, 1, 1, 1, 1],
            "positive_is_zero": true,
        },
    }));
    checks.push(json!({
        "op": "zariski_decompose",
        "name": format!("S({n}): the fibre class is nef"),
        "surface": s,
        "divisor": terms(&[("f", 1)]),
        "components": ["C0", "C1", "C2", "C3", "C4"],
        "expect": {
            "coefficients": [0, 0, 0, 0, 0],
            "negative_is_zero": true,
        },
    }));
    checks.push(json!({
        "op": "zariski_decompose",
        "name": format!("S({n}): f + C0 splits into nef and fixed parts"),
        "surface": s,
        "divisor": terms(&[("f", 1), ("C0", 1)]),
        "components": ["C0", "C1", "C2", "C3", "C4"],
        "expect": {
            "coefficients": [1, 0, 0, 0, 0],
        },
    }));
    // The pluri-anticanonical classes keep meeting the fixed curves
    // negatively, so the fixed part persists for every m.
    for m in [2i64, 3] {
        checks.push(json!({
            "op": "pair",
            "name": format!("S({n}): ( (2m-1)(-K) - sum C - sum Cb ).C0 at m={m}"),
            "surface": s,
            "a": terms(&[
                ("K", -(2 * m - 1)),
                ("C0", -1), ("C1", -1), ("C2", -1), ("C3", -1), ("C4", -1),
                ("Cb0", -1), ("Cb1", -1), ("Cb2", -1), ("Cb3", -1), ("Cb4", -1)
            ]),
            "b": terms(&[("C0", 1)]),
            "expect": 2 * ((1 - m) * ni + (4 * m - 5)),
        }));
    }

    // -- base ring Z(n) -------------------------------------------------
    checks.push(json!({
        "op": "triple",
        "name": format!("Z({n}): F.F.F = 8-2n"),
        "ring": z,
        "x": terms(&[("F", 1)]),
        "y": terms(&[("F", 1)]),
        "z": terms(&[("F", 1)]),
        "expect": 8 - 2 * ni,
    }));
    checks.push(json!({
        "op": "triple",
        "name": format!("Z({n}): F.alpha1.alpha1 = -2"),
        "ring": z,
        "x": terms(&[("F", 1)]),
        "y": terms(&[("alpha1", 1)]),
        "z": terms(&[("alpha1", 1)]),
        "expect": -2,
    }));
    checks.push(json!({
        "op": "triple",
        "name": format!("Z({n}): alpha1.alpha2.alpha3 = 0"),
        "ring": z,
        "x": terms(&[("alpha1", 1)]),
        "y": terms(&[("alpha2", 1)]),
        "z": terms(&[("alpha3", 1)]),
        "expect": 0,
    }));
    checks.push(json!({
        "op": "c2_pair",
        "name": format!("Z({n}): F.c2 = 12"),
        "ring": z,
        "class": terms(&[("F", 1)]),
        "expect": 12,
    }));
    checks.push(json!({
        "op": "c2_pair",
        "name": format!("Z({n}): c1.c2 = 24"),
        "ring": z,
        "class": terms(&[("F", 2)]),
        "expect": 24,
    }));
    checks.push(json!({
        "op": "rr3_chi",
        "name": format!("Z({n}): chi(O) = 1"),
        "ring": z,
        "class": terms(&[]),
        "expect": 1,
    }));
    checks.push(json!({
        "op": "rr3_chi",
        "name": format!("Z({n}): chi(F) = 10-2n"),
        "ring": z,
        "class": terms(&[("F", 1)]),
        "expect": 10 - 2 * ni,
    }));
    checks.push(json!({
        "op": "rr3_chi",
        "name": format!("Z({n}): chi(-alpha5-..-alpha{n}) = 5-n"),
        "ring": z,
        "class": alpha_terms(5, n, -1, &[]),
        "expect": 5 - ni,
    }));
    checks.push(json!({
        "op": "homology_zero",
        "name": format!("Z({n}): X.Xbar is homologous to zero"),
        "ring": z,
        "expect": true,
    }));
    checks.push(json!({
        "op": "homology_zero",
        "name": format!("Z({n}): a perturbed F^3 breaks the identity"),
        "ring": zbad,
        "expect": false,
    }));

    // -- the blow-up along C0 and Cb0 -----------------------------------
    checks.push(json!({
        "op": "normal_bundle_degree",
        "name": format!("X({n}): C0 has normal degree 6-2n"),
        "blowup": x,
        "curve": "C0",
        "expect": 6 - 2 * ni,
    }));
    checks.push(json!({
        "op": "triple",
        "name": format!("X({n}): E0^3 = 2n-6"),
        "blowup": x,
        "x": terms(&[("E[C0]", 1)]),
        "y": terms(&[("E[C0]", 1)]),
        "z": terms(&[("E[C0]", 1)]),
        "expect": 2 * ni - 6,
    }));
    checks.push(json!({
        "op": "triple",
        "name": format!("X({n}): E0^2.F = n-4"),
        "blowup": x,
        "x": terms(&[("E[C0]", 1)]),
        "y": terms(&[("E[C0]", 1)]),
        "z": terms(&[("F", 1)]),
        "expect": ni - 4,
    }));
    checks.push(json!({
        "op": "triple",
        "name": format!("X({n}): E0^2.alpha5 = -1"),
        "blowup": x,
        "x": terms(&[("E[C0]", 1)]),
        "y": terms(&[("E[C0]", 1)]),
        "z": terms(&[("alpha5", 1)]),
        "expect": -1,
    }));
    checks.push(json!({
        "op": "c2_pair",
        "name": format!("X({n}): c1.c2 = 24 after two blow-ups"),
        "blowup": x,
        "class": terms(&[("F", 2), ("E[C0]", -1), ("E[Cb0]", -1)]),
        "expect": 24,
    }));
    checks.push(json!({
        "op": "rr3_chi",
        "name": format!("X({n}): chi(mu*(-alpha5-..) - E0) = 0"),
        "blowup": x,
        "class": alpha_terms(5, n, -1, &[("E[C0]", -1)]),
        "expect": 0,
    }));
    checks.push(json!({
        "op": "chi_after_blowup",
        "name": format!("X({n}): the blow-up formula reproduces chi = 0"),
        "chi": 5 - ni,
        "l_dot_c": 4 - ni,
        "genus": 0,
        "expect": 0,
    }));
    checks.push(json!({
        "op": "exc_self_intersection_in_divisor",
        "name": format!("X({n}): (E0|X1)^2 = 4-2n"),
        "blowup": x,
        "expect": 4 - 2 * ni,
    }));

    // Exceptional restrictions, balanced splitting (E0 = CP1 x CP1).
    checks.push(json!({
        "op": "exceptional_restriction",
        "name": format!("X({n}): mu*(2F)-E0 restricts to bidegree (1, 5-n)"),
        "blowup": x,
        "center": "C0",
        "class": terms(&[("F", 2), ("E[C0]", -1)]),
        "expect": { "bidegree": [1, 5 - ni] },
    }));
    checks.push(json!({
        "op": "exceptional_restriction",
        "name": format!("X({n}): mu*F-E0-Ebar0 restricts to bidegree (1, 1)"),
        "blowup": x,
        "center": "C0",
        "class": terms(&[("F", 1), ("E[C0]", -1), ("E[Cb0]", -1)]),
        "expect": { "bidegree": [1, 1] },
    }));
    checks.push(json!({
        "op": "exceptional_restriction",
        "name": format!("X({n}): L1 restricts to the anticanonical class of E0"),
        "blowup": x,
        "center": "C0",
        "class": terms(&[("F", 2), ("E[C0]", -2), ("E[Cb0]", -2)]),
        "expect": { "anticanonical": true },
    }));
    // Exceptional restrictions, skew splitting (E0 = F_2).
    checks.push(json!({
        "op": "exceptional_restriction",
        "name": format!("X({n}) skew: mu*(2F)-E0 restricts to A+(6-n)fib"),
        "blowup": xs,
        "center": "C0",
        "class": terms(&[("F", 2), ("E[C0]", -1)]),
        "expect": { "e": 2, "a": 1, "f": 6 - ni },
    }));
    checks.push(json!({
        "op": "exceptional_restriction",
        "name": format!("X({n}) skew: mu*F-E0 restricts to A+2fib"),
        "blowup": xs,
        "center": "C0",
        "class": terms(&[("F", 1), ("E[C0]", -1)]),
        "expect": { "e": 2, "a": 1, "f": 2 },
    }));
    checks.push(json!({
        "op": "exceptional_restriction",
        "name": format!("X({n}) skew: L1 restricts to the anticanonical class of E0"),
        "blowup": xs,
        "center": "C0",
        "class": terms(&[("F", 2), ("E[C0]", -2), ("E[Cb0]", -2)]),
        "expect": { "anticanonical": true },
    }));

    // -- restriction to the fundamental-divisor surface -----------------
    checks.push(json!({
        "op": "restrict_equivalent",
        "name": format!("S({n}): (F - alpha5..alpha{n})|_S - 2C0 = C1+C2+C3+C4"),
        "ring": z,
        "class": alpha_terms(5, n, -1, &[("F", 1)]),
        "surface": s,
        "shift": terms(&[("C0", 2)]),
        "expect": terms(&[("C1", 1), ("C2", 1), ("C3", 1), ("C4", 1)]),
    }));
    checks.push(json!({
        "op": "restrict_pair",
        "name": format!("S({n}): (F - alpha5..alpha{n})|_S has degree 0 on Cb0"),
        "ring": z,
        "class": alpha_terms(5, n, -1, &[("F", 1)]),
        "surface": s,
        "against": terms(&[("Cb0", 1)]),
        "expect": 0,
    }));
    checks.push(json!({
        "op": "restrict_pair",
        "name": format!("S({n}): alpha5|_S meets C0 once"),
        "ring": z,
        "class": terms(&[("alpha5", 1)]),
        "surface": s,
        "against": terms(&[("C0", 1)]),
        "expect": 1,
    }));
    checks.push(json!({
        "op": "restrict_pair",
        "name": format!("S({n}): F|_S pairs with -K to K.K = 8-2n"),
        "ring": z,
        "class": terms(&[("F", 1)]),
        "surface": s,
        "against": terms(&[("K", -1)]),
        "expect": 8 - 2 * ni,
    }));

    // -- integral second cohomology -------------------------------------
    checks.push(json!({
        "op": "validate_lattice",
        "name": format!("H^2(Z{n}): lattice with the half-generator is well formed"),
        "lattice": h,
        "expect": true,
    }));
    checks.push(json!({
        "op": "classes_equivalent",
        "name": format!("H^2(Z{n}): F + sum(alpha) is divisible by 2"),
        "lattice": h,
        "a": terms(&[("h", 2)]),
        "b": alpha_terms(1, n, 1, &[("F", 1)]),
        "expect": true,
    }));
    checks.push(json!({
        "op": "classes_equivalent",
        "name": format!("H^2(Z{n}): h itself is not in the ring span"),
        "lattice": h,
        "a": terms(&[("h", 1)]),
        "b": terms(&[("F", 1)]),
        "expect": false,
    }));

    // -- moduli bookkeeping --------------------------------------------
    checks.push(json!({
        "op": "moduli_pipeline",
        "name": format!("moduli at n={n}: every h^1 and the headline total"),
        "case": format!("elliptic:{n}"),
        "expect": {
            "dims": {
                "h1(Theta_Z)": 7 * ni - 14,
                "h1(K^-1_S)": 2 * ni - 9,
                "h1(Theta_S)": 4 * ni - 5,
                "h1(Theta_ZS)": 5 * ni - 5,
                "h1(Theta_Z(-S))": ni
            },
            "entries": {
                "h1(Theta_Z(-S))": ni,
                "surface moduli": 2 * ni - 7,
                "total": 3 * ni - 7
            }
        },
    }));
}

// ---------------------------------------------------------------------
// The K3 double-cover configuration (runs once)
// ---------------------------------------------------------------------

fn k3_objects(objects: &mut Vec<Value>) {
    objects.push(json!({
        "kind": "surface",
        "name": "SK3",
        "builder": "S_K3",
    }));
}

fn k3_checks(checks: &mut Vec<Value>) {
    checks.push(json!({
        "op": "validate_lattice",
        "name": "K3 case: lattice is well formed",
        "surface": "SK3",
        "expect": true,
    }));
    checks.push(json!({
        "op": "pair",
        "name": "K3 case: K.K = -2",
        "surface": "SK3",
        "a": terms(&[("K", 1)]),
        "b": terms(&[("K", 1)]),
        "expect": -2,
    }));
    checks.push(json!({
        "op": "theta_chi",
        "name": "K3 case: chi(Theta) = -14",
        "surface": "SK3",
        "expect": -14,
    }));
    checks.push(json!({
        "op": "rr_chi",
        "name": "K3 case: chi(-K) = -1",
        "surface": "SK3",
        "class": terms(&[("K", -1)]),
        "expect": -1,
    }));
    checks.push(json!({
        "op": "gram_negative_definite",
        "name": "K3 case: the branch chain is negative definite",
        "surface": "SK3",
        "classes": [
            terms(&[("D1", 1)]),
            terms(&[("D4", 1)]),
            terms(&[("D2", 1)]),
            terms(&[("D3", 1)])
        ],
        "expect": true,
    }));
    checks.push(json!({
        "op": "pair",
        "name": "K3 case: C.Cbar = 0",
        "surface": "SK3",
        "a": terms(&[("C", 1)]),
        "b": terms(&[("Cb", 1)]),
        "expect": 0,
    }));
    checks.push(json!({
        "op": "classes_equivalent",
        "name": "K3 case: C + Cbar = -2K",
        "surface": "SK3",
        "a": terms(&[("C", 1), ("Cb", 1)]),
        "b": terms(&[("K", -2)]),
        "expect": true,
    }));
    checks.push(json!({
        "op": "classes_equivalent",
        "name": "K3 case: C = -K - C5 + Cb5",
        "surface": "SK3",
        "a": terms(&[("C", 1)]),
        "b": terms(&[("K", -1), ("C5", -1), ("Cb5", 1)]),
        "expect": true,
    }));
    checks.push(json!({
        "op": "moduli_pipeline",
        "name": "K3 case: moduli bookkeeping",
        "case": "k3",
        "expect": {
            "dims": {
                "h1(Theta_Z)": 20,
                "h1(K^-1_S)": 1,
                "h1(Theta_S)": 14,
                "h1(Theta_ZS)": 19,
                "h1(Theta_Z(-S))": 5
            },
            "entries": {
                "h1(Theta_Z(-S))": 5,
                "surface moduli": 0,
                "total": 5
            }
        },
    }));
}
