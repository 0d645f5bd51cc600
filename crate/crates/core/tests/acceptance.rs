//! Acceptance gate: thirteen numbered criteria covering the whole crate.
//!
//! Every criterion prints exactly one `[PASS]`/`[FAIL]` line (visible with
//! `cargo test --test acceptance -- --nocapture`). All comparisons are
//! exact — integers and rationals with zero tolerance — and the whole
//! suite is expected to finish in well under five seconds.

use divisor_workbench::exact::{int, rat, Int, IntMatrix, Rat};
use divisor_workbench::ledger::{moduli_pipeline, LinExpr, ModuliCase};
use divisor_workbench::surface::{build_s_elliptic, build_s_k3, PointSpec, SurfaceModel};
use divisor_workbench::threefold::{
    chi_after_blowup, curve_c0, curve_c0_bar, normal_bundle_degree, BaseClass, CurveData,
    ExtendedRing, Splitting, TwistorRing,
};
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn criterion(n: u32, desc: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("[PASS] criterion {n}: {desc}"),
        Err(e) => {
            println!("[FAIL] criterion {n}: {desc}");
            panic!("criterion {n} ({desc}): {e}");
        }
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(
    what: impl std::fmt::Display,
    got: T,
    want: T,
) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn ensure(cond: bool, what: impl std::fmt::Display) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn s(n: usize) -> Result<SurfaceModel, String> {
    build_s_elliptic(n).map_err(|e| e.to_string())
}

/// The two standard blow-ups (along C0 and its conjugate) with a balanced
/// or skew normal-bundle splitting.
fn double_blowup(n: usize, balanced: bool) -> Result<ExtendedRing, String> {
    let ni = n as i64;
    let split = || {
        if balanced {
            Splitting::from_i64(3 - ni, 3 - ni)
        } else {
            Splitting::from_i64(2 - ni, 4 - ni)
        }
    };
    TwistorRing::new(n)
        .and_then(|z| z.blowup_along_curve(curve_c0(n), split()?))
        .and_then(|x| x.blowup_along_curve(curve_c0_bar(n), split()?))
        .map_err(|e| e.to_string())
}

#[test]
fn criterion_01_canonical_self_intersection() {
    criterion(1, "K.K = 8-2n on the elliptic-family surface", || {
        for n in 5..=12usize {
            let s = s(n)?;
            let k = s.canonical().map_err(|e| e.to_string())?;
            let k2 = k.self_intersection().map_err(|e| e.to_string())?;
            expect(format!("n={n}"), k2, int(8 - 2 * n as i64))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_02_fixed_curves_negative_definite() {
    criterion(
        2,
        "the five fixed curves have a Sylvester-certified negative-definite pairing matrix",
        || {
            for n in 5..=12usize {
                let s = s(n)?;
                let comps = ["C0", "C1", "C2", "C3", "C4"];
                let classes: Vec<_> = comps
                    .iter()
                    .map(|c| s.resolve(c).map_err(|e| e.to_string()))
                    .collect::<Result<_, _>>()?;
                let mut gram = IntMatrix::zero(5, 5);
                for i in 0..5 {
                    for j in 0..5 {
                        gram.set(i, j, classes[i].pair(&classes[j]).map_err(|e| e.to_string())?);
                    }
                }
                ensure(
                    gram.is_negative_definite().map_err(|e| e.to_string())?,
                    format!("n={n}: pairing matrix not negative definite"),
                )?;
                // The certificate itself: leading principal minors
                // alternate in sign, starting negative.
                for k in 1..=5 {
                    let minor = gram
                        .leading_principal_submatrix(k)
                        .det()
                        .map_err(|e| e.to_string())?;
                    let sign_ok = if k % 2 == 1 {
                        minor < Int::zero()
                    } else {
                        minor > Int::zero()
                    };
                    ensure(sign_ok, format!("n={n}: minor {k} has wrong sign: {minor}"))?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_03_base_curve_system_all_fixed() {
    criterion(
        3,
        "2C0+C1+..+C4 decomposes with N equal to the whole divisor and P = 0",
        || {
            for n in 5..=12usize {
                let s = s(n)?;
                let d = s
                    .combination(&[
                        ("C0", int(2)),
                        ("C1", int(1)),
                        ("C2", int(1)),
                        ("C3", int(1)),
                        ("C4", int(1)),
                    ])
                    .map_err(|e| e.to_string())?;
                let z = s
                    .zariski_decompose(&d, &["C0", "C1", "C2", "C3", "C4"])
                    .map_err(|e| e.to_string())?;
                ensure(z.positive_is_zero(), format!("n={n}: P is not zero"))?;
                let want = [2, 1, 1, 1, 1];
                for ((name, coeff), w) in z.coefficients.iter().zip(want) {
                    expect(format!("n={n}: coefficient of {name}"), coeff.clone(), rat(&int(w)))?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_04_fixed_component_pairing() {
    criterion(
        4,
        "the pluri-anticanonical fixed-component pairing equals 2((1-m)n+4m-5) and is negative",
        || {
            for n in 5..=12usize {
                let ni = n as i64;
                let s = s(n)?;
                for m in [2i64, 3] {
                    let a = s
                        .combination(&[
                            ("K", int(-(2 * m - 1))),
                            ("C0", int(-1)),
                            ("C1", int(-1)),
                            ("C2", int(-1)),
                            ("C3", int(-1)),
                            ("C4", int(-1)),
                            ("Cb0", int(-1)),
                            ("Cb1", int(-1)),
                            ("Cb2", int(-1)),
                            ("Cb3", int(-1)),
                            ("Cb4", int(-1)),
                        ])
                        .map_err(|e| e.to_string())?;
                    let c0 = s.resolve("C0").map_err(|e| e.to_string())?;
                    let got = a.pair(&c0).map_err(|e| e.to_string())?;
                    let want = int(2 * ((1 - m) * ni + (4 * m - 5)));
                    expect(format!("n={n}, m={m}"), got.clone(), want)?;
                    ensure(got < Int::zero(), format!("n={n}, m={m}: pairing not negative"))?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_05_chi_of_negative_alpha_sum() {
    criterion(
        5,
        "chi(-alpha5-..-alphan) = 5-n and the blow-up formula then gives chi = 0",
        || {
            for n in 5..=12usize {
                let ni = n as i64;
                let z = TwistorRing::new(n).map_err(|e| e.to_string())?;
                let mut alphas = vec![Int::zero(); n];
                for a in alphas.iter_mut().skip(4) {
                    *a = int(-1);
                }
                let l = BaseClass {
                    f: Int::zero(),
                    alphas,
                };
                let chi = z.rr3_chi(&l);
                expect(format!("n={n}: chi"), chi.clone(), rat(&int(5 - ni)))?;
                // Formula form: chi(mu*L - E) = chi(L) - L.C - 1 + g.
                let l_dot_c0 = curve_c0(n).degree_against(&l);
                expect(format!("n={n}: L.C0"), l_dot_c0.clone(), int(4 - ni))?;
                let after = chi_after_blowup(&chi, &l_dot_c0, &Int::zero());
                expect(format!("n={n}: formula"), after, Rat::zero())?;
                // Ring form: the same class computed in the blown-up ring.
                let x = double_blowup(n, true)?;
                let e0 = x.exceptional("C0").map_err(|e| e.to_string())?;
                let class = x.pullback(&l).try_sub(&e0);
                expect(format!("n={n}: ring"), x.rr3_chi(&class), Rat::zero())?;
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_06_riemann_roch_after_blowup_random() {
    criterion(
        6,
        "500 random blow-ups reproduce chi(mu*L - E) = chi(L) - L.C - 1 + g exactly",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_CAFE);
            for case in 0..500u32 {
                let n = rng.random_range(1..=12usize);
                let z = TwistorRing::new(n).map_err(|e| e.to_string())?;
                let g = rng.random_range(0..=2i64);
                let f_deg = rng.random_range(-6..=6i64);
                let alpha_deg: Vec<i64> =
                    (0..n).map(|_| rng.random_range(-3..=3i64)).collect();
                let curve = CurveData::new("R", g, f_deg, &alpha_deg);
                let d = normal_bundle_degree(&curve);
                // Any splitting a + b = d with a <= b.
                let shift = rng.random_range(0..=3i64);
                let a = d.clone() / int(2) - int(shift) - if d.clone() % int(2) == int(0) { int(0) } else { int(1) };
                let b = d.clone() - a.clone();
                let split = Splitting::new(a, b).map_err(|e| e.to_string())?;
                let x = z
                    .blowup_along_curve(curve.clone(), split)
                    .map_err(|e| e.to_string())?;
                let l = BaseClass {
                    f: int(rng.random_range(-4..=4i64)),
                    alphas: (0..n).map(|_| int(rng.random_range(-3..=3i64))).collect(),
                };
                let lhs = x.rr3_chi(
                    &x.pullback(&l)
                        .try_sub(&x.exceptional("R").map_err(|e| e.to_string())?),
                );
                let rhs = chi_after_blowup(&z.rr3_chi(&l), &curve.degree_against(&l), &int(g));
                expect(format!("case {case} (n={n}, g={g})"), lhs, rhs)?;
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_07_c1_c2_is_birational_invariant() {
    criterion(7, "c1.c2 = 24 before and after every blow-up along a curve", || {
        for n in 5..=12usize {
            let z = TwistorRing::new(n).map_err(|e| e.to_string())?;
            expect(format!("n={n}: base"), z.c2_pair(&z.c1()), int(24))?;
            let ni = n as i64;
            let x1 = z
                .blowup_along_curve(curve_c0(n), Splitting::from_i64(3 - ni, 3 - ni).unwrap())
                .map_err(|e| e.to_string())?;
            expect(format!("n={n}: one blow-up"), x1.c2_pair(&x1.c1()), int(24))?;
            let x2 = x1
                .blowup_along_curve(curve_c0_bar(n), Splitting::from_i64(3 - ni, 3 - ni).unwrap())
                .map_err(|e| e.to_string())?;
            expect(format!("n={n}: two blow-ups"), x2.c2_pair(&x2.c1()), int(24))?;
        }
        // Random centers as well: genus, degrees, and splittings drawn
        // from a fixed seed.
        let mut rng = ChaCha8Rng::seed_from_u64(0xC1C2);
        for case in 0..100u32 {
            let n = rng.random_range(1..=10usize);
            let z = TwistorRing::new(n).map_err(|e| e.to_string())?;
            let g = rng.random_range(0..=2i64);
            let f_deg = rng.random_range(-5..=5i64);
            let alpha_deg: Vec<i64> = (0..n).map(|_| rng.random_range(-2..=2i64)).collect();
            let curve = CurveData::new("R", g, f_deg, &alpha_deg);
            let d = normal_bundle_degree(&curve);
            let a = d.clone() / int(2) - if d.clone() % int(2) == int(0) { int(0) } else { int(1) };
            let b = d - a.clone();
            let x = z
                .blowup_along_curve(curve, Splitting::new(a, b).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            expect(format!("random case {case}"), x.c2_pair(&x.c1()), int(24))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_08_exceptional_restrictions() {
    criterion(
        8,
        "exceptional restrictions hit the expected ruled-surface classes in both splitting branches",
        || {
            for n in 5..=12usize {
                let ni = n as i64;
                // Balanced branch: the exceptional surface is CP1 x CP1.
                let x = double_blowup(n, true)?;
                let e0 = x.exceptional("C0").map_err(|e| e.to_string())?;
                let eb0 = x.exceptional("Cb0").map_err(|e| e.to_string())?;
                let two_f = x.pullback(&BaseClass {
                    f: int(2),
                    alphas: vec![Int::zero(); n],
                });
                let one_f = x.pullback(&BaseClass {
                    f: int(1),
                    alphas: vec![Int::zero(); n],
                });

                let r = x
                    .exceptional_restriction("C0", &two_f.try_sub(&e0))
                    .map_err(|e| e.to_string())?;
                expect(
                    format!("n={n} balanced: mu*(2F)-E0"),
                    r.bidegree().map_err(|e| e.to_string())?,
                    (int(1), int(5 - ni)),
                )?;

                let r = x
                    .exceptional_restriction("C0", &one_f.try_sub(&e0).try_sub(&eb0))
                    .map_err(|e| e.to_string())?;
                expect(
                    format!("n={n} balanced: mu*F-E0-Eb0"),
                    r.bidegree().map_err(|e| e.to_string())?,
                    (int(1), int(1)),
                )?;

                let l1 = two_f
                    .try_sub(&e0.scale(&int(2)))
                    .try_sub(&eb0.scale(&int(2)));
                for center in ["C0", "Cb0"] {
                    let r = x
                        .exceptional_restriction(center, &l1)
                        .map_err(|e| e.to_string())?;
                    ensure(
                        r.is_anticanonical(),
                        format!("n={n} balanced: L1 on {center} is {r}, not anticanonical"),
                    )?;
                }

                // Skew branch: the exceptional surface is the e = 2
                // Hirzebruch surface.
                let x = double_blowup(n, false)?;
                let e0 = x.exceptional("C0").map_err(|e| e.to_string())?;
                let eb0 = x.exceptional("Cb0").map_err(|e| e.to_string())?;
                let two_f = x.pullback(&BaseClass {
                    f: int(2),
                    alphas: vec![Int::zero(); n],
                });
                let one_f = x.pullback(&BaseClass {
                    f: int(1),
                    alphas: vec![Int::zero(); n],
                });

                let r = x
                    .exceptional_restriction("C0", &two_f.try_sub(&e0))
                    .map_err(|e| e.to_string())?;
                expect(
                    format!("n={n} skew: mu*(2F)-E0 (e, a, f)"),
                    (r.e.clone(), r.a.clone(), r.f.clone()),
                    (int(2), int(1), int(6 - ni)),
                )?;

                let r = x
                    .exceptional_restriction("C0", &one_f.try_sub(&e0))
                    .map_err(|e| e.to_string())?;
                expect(
                    format!("n={n} skew: mu*F-E0 (e, a, f)"),
                    (r.e.clone(), r.a.clone(), r.f.clone()),
                    (int(2), int(1), int(2)),
                )?;

                let l1 = two_f
                    .try_sub(&e0.scale(&int(2)))
                    .try_sub(&eb0.scale(&int(2)));
                for center in ["C0", "Cb0"] {
                    let r = x
                        .exceptional_restriction(center, &l1)
                        .map_err(|e| e.to_string())?;
                    ensure(
                        r.is_anticanonical(),
                        format!("n={n} skew: L1 on {center} is {r}, not anticanonical"),
                    )?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_09_exceptional_self_intersection_in_divisor() {
    criterion(9, "(E0 restricted to X1) squares to 2(2-n)", || {
        for n in 5..=12usize {
            let x = double_blowup(n, true)?;
            let got = x
                .exceptional_self_intersection_in_divisor()
                .map_err(|e| e.to_string())?;
            expect(format!("n={n}"), got, int(2 * (2 - n as i64)))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_10_homologous_to_zero() {
    criterion(10, "X.Xbar pairs to zero against every generator", || {
        for n in 5..=12usize {
            let z = TwistorRing::new(n).map_err(|e| e.to_string())?;
            ensure(z.homology_zero_check(), format!("n={n}: identity fails"))?;
            // Sharpness: perturbing F^3 must break it.
            let bad = TwistorRing::with_f_cubed(n, int(9 - 2 * n as i64))
                .map_err(|e| e.to_string())?;
            ensure(
                !bad.homology_zero_check(),
                format!("n={n}: perturbed ring not detected"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_11_k3_configuration() {
    criterion(
        11,
        "the K3 double-cover surface: K.K = -2, branch chain (-3,-2,-2,-3) negative definite, class identities",
        || {
            let s = build_s_k3().map_err(|e| e.to_string())?;
            let k = s.canonical().map_err(|e| e.to_string())?;
            expect("K.K", k.self_intersection().map_err(|e| e.to_string())?, int(-2))?;
            let chain = ["D1", "D4", "D2", "D3"];
            let classes: Vec<_> = chain
                .iter()
                .map(|c| s.resolve(c).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            let selfs: Vec<Int> = classes
                .iter()
                .map(|c| c.self_intersection().map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            expect(
                "chain self-intersections",
                selfs,
                vec![int(-3), int(-2), int(-2), int(-3)],
            )?;
            let mut gram = IntMatrix::zero(4, 4);
            for i in 0..4 {
                for j in 0..4 {
                    gram.set(i, j, classes[i].pair(&classes[j]).map_err(|e| e.to_string())?);
                }
            }
            ensure(
                gram.is_negative_definite().map_err(|e| e.to_string())?,
                "chain pairing matrix not negative definite",
            )?;
            let c = s.resolve("C").map_err(|e| e.to_string())?;
            let cb = s.resolve("Cb").map_err(|e| e.to_string())?;
            let two_antik = s.anticanonical().map_err(|e| e.to_string())?.scale(&int(2));
            ensure(
                c.try_add(&cb)
                    .and_then(|sum| sum.equivalent(&two_antik))
                    .map_err(|e| e.to_string())?,
                "C + Cbar is not equivalent to 2K^-1",
            )?;
            let c5 = s.resolve("C5").map_err(|e| e.to_string())?;
            let cb5 = s.resolve("Cb5").map_err(|e| e.to_string())?;
            let rhs = s
                .anticanonical()
                .map_err(|e| e.to_string())?
                .try_sub(&c5)
                .and_then(|v| v.try_add(&cb5))
                .map_err(|e| e.to_string())?;
            ensure(
                c.equivalent(&rhs).map_err(|e| e.to_string())?,
                "C is not equivalent to K^-1 - C5 + Cb5",
            )?;
            Ok(())
        },
    );
}

#[test]
fn criterion_12_moduli_dimension_counts() {
    criterion(
        12,
        "moduli bookkeeping: h1(twist) = n and total 3n-7 for the elliptic family; 19, 14, 5 for K3",
        || {
            for n in 5..=12usize {
                let ni = n as i64;
                let report = moduli_pipeline(&ModuliCase::Elliptic { n })
                    .map_err(|e| e.to_string())?;
                expect(
                    format!("n={n}: h1(Theta_Z(-S))"),
                    report.propagation.dim("h1(Theta_Z(-S))").cloned(),
                    Some(LinExpr::from_int(ni)),
                )?;
                expect(
                    format!("n={n}: total"),
                    report.entry("total").map(|e| e.value.clone()),
                    Some(LinExpr::from_int(3 * ni - 7)),
                )?;
            }
            let report = moduli_pipeline(&ModuliCase::K3).map_err(|e| e.to_string())?;
            for (space, want) in [
                ("h1(Theta_ZS)", 19),
                ("h1(Theta_S)", 14),
                ("h1(Theta_Z(-S))", 5),
            ] {
                expect(
                    format!("k3: {space}"),
                    report.propagation.dim(space).cloned(),
                    Some(LinExpr::from_int(want)),
                )?;
            }
            Ok(())
        },
    );
}

// ---------------------------------------------------------------------
// Criterion 13: seeded property families
// ---------------------------------------------------------------------

/// Exhaustive reference for Zariski decompositions over few components:
/// try every support subset and keep the one effective solution.
fn zariski_subset_oracle(
    s: &SurfaceModel,
    d: &divisor_workbench::ClassVector,
    components: &[&str],
) -> Result<Vec<Rat>, String> {
    let comps: Vec<_> = components
        .iter()
        .map(|c| s.resolve(c).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let m = comps.len();
    ensure(m <= 6, "oracle is exponential; keep configurations small")?;
    let mut pairs = IntMatrix::zero(m, m);
    for i in 0..m {
        for j in 0..m {
            pairs.set(i, j, comps[i].pair(&comps[j]).map_err(|e| e.to_string())?);
        }
    }
    let d_dot: Vec<Int> = comps
        .iter()
        .map(|c| d.pair(c).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let mut found: Vec<Vec<Rat>> = Vec::new();
    for mask in 0u32..(1 << m) {
        let idx: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let sub = pairs.principal_submatrix(&idx);
        if !sub.is_negative_definite().map_err(|e| e.to_string())? {
            continue;
        }
        let b: Vec<Rat> = idx.iter().map(|&i| rat(&d_dot[i])).collect();
        let Some(a) = sub.solve(&b).map_err(|e| e.to_string())?.unique() else {
            continue;
        };
        if a.iter().any(|v| v < &Rat::zero()) {
            continue;
        }
        let mut full = vec![Rat::zero(); m];
        for (k, &i) in idx.iter().enumerate() {
            full[i] = a[k].clone();
        }
        let effective = d_dot.iter().enumerate().all(|(j, dj)| {
            let mut v = rat(dj);
            for (i, fi) in full.iter().enumerate() {
                v -= fi * rat(pairs.at(i, j));
            }
            v >= Rat::zero()
        });
        if effective && !found.contains(&full) {
            found.push(full);
        }
    }
    if found.len() != 1 {
        return Err(format!(
            "oracle expected a unique effective decomposition, found {}",
            found.len()
        ));
    }
    Ok(found.pop().unwrap())
}

/// Naive cofactor expansion along the first row.
fn det_cofactor(m: &IntMatrix) -> Int {
    let n = m.rows();
    if n == 0 {
        return int(1);
    }
    if n == 1 {
        return m.at(0, 0).clone();
    }
    let mut acc = Int::zero();
    for j in 0..n {
        if m.at(0, j).is_zero() {
            continue;
        }
        let rows: Vec<Vec<Int>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&k| k != j)
                    .map(|k| m.at(i, k).clone())
                    .collect()
            })
            .collect();
        let minor = det_cofactor(&IntMatrix::from_rows(rows).unwrap());
        let signed = if j % 2 == 0 { minor } else { -minor };
        acc += m.at(0, j) * signed;
    }
    acc
}

#[test]
fn criterion_13_property_families() {
    criterion(
        13,
        "seeded property families: relation orthogonality, conjugation invariance, blow-up chi invariance, Zariski oracle, determinant oracle",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x0DDBA11);

            // (a) Every declared relation lies in the radical of its Gram
            // matrix, for every surface family member.
            let mut lattices = Vec::new();
            for n in 5..=12usize {
                lattices.push(s(n)?.lattice.clone());
            }
            lattices.push(build_s_k3().map_err(|e| e.to_string())?.lattice.clone());
            for lat in &lattices {
                for (ri, r) in lat.relations.iter().enumerate() {
                    let image = lat.gram.mul_vec(r).map_err(|e| e.to_string())?;
                    ensure(
                        image.iter().all(Zero::is_zero),
                        format!("{}: relation {ri} is not orthogonal to the lattice", lat.name),
                    )?;
                }
            }

            // (b) Conjugation preserves the pairing: random classes on
            // random family members.
            for _ in 0..60 {
                let n = rng.random_range(5..=12usize);
                let surface = s(n)?;
                let rank = surface.lattice.rank();
                let coords = |rng: &mut ChaCha8Rng| -> Vec<Int> {
                    (0..rank).map(|_| int(rng.random_range(-3..=3i64))).collect()
                };
                let x = surface.lattice.class(coords(&mut rng)).map_err(|e| e.to_string())?;
                let y = surface.lattice.class(coords(&mut rng)).map_err(|e| e.to_string())?;
                let lhs = x
                    .conjugate()
                    .and_then(|xc| y.conjugate().and_then(|yc| xc.pair(&yc)))
                    .map_err(|e| e.to_string())?;
                let rhs = x.pair(&y).map_err(|e| e.to_string())?;
                expect(format!("conjugation invariance on S({n})"), lhs, rhs)?;
            }

            // (c) Pulling a class back through point blow-ups (no
            // multiplicities) preserves its Euler characteristic.
            for case in 0..40 {
                let a = rng.random_range(-3..=3i64);
                let b = rng.random_range(-3..=3i64);
                let base = SurfaceModel::quadric()
                    .with_named_class("D", vec![int(a), int(b)])
                    .map_err(|e| e.to_string())?;
                let before = base
                    .rr_chi(&base.resolve("D").map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                let k = rng.random_range(1..=3usize);
                let specs: Vec<PointSpec> = (0..k)
                    .map(|i| PointSpec::simple(&format!("E{}", i + 1), &[]))
                    .collect();
                let blown = base.blowup_points(&specs).map_err(|e| e.to_string())?;
                let after = blown
                    .rr_chi(&blown.resolve("D").map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                expect(format!("chi invariance case {case} ({a},{b})"), after, before)?;
            }

            // (d) The production Zariski decomposition agrees with subset
            // enumeration on random effective divisors over the five
            // fixed curves.
            for case in 0..40 {
                let n = rng.random_range(5..=9usize);
                let surface = s(n)?;
                let coeffs: Vec<i64> = (0..5).map(|_| rng.random_range(0..=3i64)).collect();
                let nef = rng.random_range(0..=2i64);
                let mut terms: Vec<(&str, Int)> = vec![("f", int(nef))];
                let names = ["C0", "C1", "C2", "C3", "C4"];
                for (name, c) in names.iter().zip(&coeffs) {
                    terms.push((name, int(*c)));
                }
                let d = surface.combination(&terms).map_err(|e| e.to_string())?;
                let z = surface
                    .zariski_decompose(&d, &names)
                    .map_err(|e| e.to_string())?;
                let got: Vec<Rat> = z.coefficients.iter().map(|(_, c)| c.clone()).collect();
                let oracle = zariski_subset_oracle(&surface, &d, &names)?;
                expect(
                    format!("zariski oracle case {case} (n={n}, d={coeffs:?}+{nef}f)"),
                    got,
                    oracle,
                )?;
            }

            // (e) Bareiss elimination matches cofactor expansion on random
            // small integer matrices.
            for case in 0..60 {
                let k = rng.random_range(1..=6usize);
                let rows: Vec<Vec<Int>> = (0..k)
                    .map(|_| (0..k).map(|_| int(rng.random_range(-5..=5i64))).collect())
                    .collect();
                let m = IntMatrix::from_rows(rows).map_err(|e| e.to_string())?;
                expect(
                    format!("determinant oracle case {case} ({k}x{k})"),
                    m.det().map_err(|e| e.to_string())?,
                    det_cofactor(&m),
                )?;
            }
            Ok(())
        },
    );
}
