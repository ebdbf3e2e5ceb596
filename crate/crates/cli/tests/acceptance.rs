//! Acceptance suite: runs every criterion exactly and prints one
//! `criterion k: PASS|FAIL` line per criterion. Exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qweyl_core::rootvec::{
    braid_relation_check, default_reduced_word, lemma34_check, lemma34_check_with, prop32_check, prop32_check_with,
    root_closed_form_check, theorem33_check, theorem33_check_with,
};
use qweyl_core::uqrealize::{
    classical_degeneration_check, closed_form_check, lemma21_check, verify_serre, verify_serre_with,
};
use qweyl_core::verify::{op_eq_up_to_degree, Rhs};
use qweyl_core::weylops::{verify_weyl_relations, verify_weyl_relations_with, weyl_relations, RewriteRules};
use qweyl_core::{
    build_realization, monomials_up_to, mul_monomial, normalize, q_binom, theta_exp, Element, GenSymbol, LaurentPoly,
    MultiIndex, Operator, Realization, RootOps, VerificationReport,
};

type Outcome = Result<String, String>;
/// A named suite run lazily, so later suites are skipped once one fails.
type Suite<'a> = (&'a str, Box<dyn Fn() -> VerificationReport + 'a>);
/// Accessor for one generator family of a realization.
type Family = fn(&mut Realization) -> &mut Vec<Operator>;

/// Requires a passing report; returns its relation count.
fn passing(report: VerificationReport) -> Result<usize, String> {
    if report.passed() {
        Ok(report.relations.len())
    } else {
        Err(report.to_string())
    }
}

fn criterion_1() -> Outcome {
    let mut total = 0;
    for n in 1..=3 {
        total += passing(verify_weyl_relations(n, 6).map_err(|e| e.to_string())?)?;
    }
    Ok(format!("{total} relations, n=1..3, D=6"))
}

fn criterion_2() -> Outcome {
    let mut total = 0;
    for (n, d) in [(1, 6), (2, 6), (3, 5)] {
        total += passing(verify_serre(n, d).map_err(|e| e.to_string())?)?;
    }
    Ok(format!("{total} relations over sl_2 (D=6), sl_3 (D=6), sl_4 (D=5)"))
}

fn criterion_3() -> Outcome {
    let mut total = 0;
    for n in 1..=3 {
        let r = build_realization(n).map_err(|e| e.to_string())?;
        total += passing(closed_form_check(&r, 8).map_err(|e| e.to_string())?)?;
        let roots = RootOps::build(n).map_err(|e| e.to_string())?;
        total += passing(root_closed_form_check(&roots, 8).map_err(|e| e.to_string())?)?;
    }
    Ok(format!("{total} operators agree with their closed forms, n=1..3, |β| ≤ 8"))
}

fn criterion_4() -> Outcome {
    let mut total = 0;
    for n in 1..=3 {
        total += passing(lemma21_check(n, 5, 3).map_err(|e| e.to_string())?)?;
    }
    Ok(format!("{total} (i, m) cases, n ≤ 3, |β| ≤ 5, |m| ≤ 3"))
}

fn criterion_5() -> Outcome {
    let mut total = 0;
    let mut j_independence = 0;
    for n in 2..=3 {
        let report = prop32_check(n, 5).map_err(|e| e.to_string())?;
        j_independence += report.relations.iter().filter(|r| r.id.starts_with("P32-J")).count();
        total += passing(report)?;
    }
    if j_independence == 0 {
        return Err("no j-independence relations were checked".into());
    }
    Ok(format!("{total} relations ({j_independence} j-independence), n=2,3, D=5"))
}

fn criterion_6() -> Outcome {
    let mut braid = 0;
    let mut brackets = 0;
    for (n, d) in [(2, 5), (3, 4)] {
        braid += passing(braid_relation_check(n, d).map_err(|e| e.to_string())?)?;
        brackets += passing(lemma34_check(n, d).map_err(|e| e.to_string())?)?;
    }
    Ok(format!("{braid} braid relations, {brackets} bracket identities, n=2 (D=5), n=3 (D=4)"))
}

fn criterion_7() -> Outcome {
    let mut parts = vec![];
    for (n, d) in [(2, 5), (3, 4)] {
        let report = theorem33_check(n, d).map_err(|e| e.to_string())?;
        let positive = report.relations.iter().filter(|r| r.id.starts_with("T33+")).count();
        let negative = report.relations.iter().filter(|r| r.id.starts_with("T33-")).count();
        let expected = n * (n + 1) / 2;
        if positive != expected || negative != expected {
            return Err(format!("n={n}: expected {expected}+{expected} roots, got {positive}+{negative}"));
        }
        passing(report)?;
        parts.push(format!("sl_{}: {positive}+{negative} roots (D={d})", n + 1));
    }
    Ok(parts.join(", "))
}

fn criterion_8() -> Outcome {
    let mut total = 0;
    for n in 1..=3 {
        total += passing(classical_degeneration_check(n, 6).map_err(|e| e.to_string())?)?;
    }
    Ok(format!("{total} generators match the classical action, n=1..3, |β| ≤ 6"))
}

fn random_laurent(rng: &mut ChaCha8Rng) -> LaurentPoly {
    loop {
        let terms = (0..rng.random_range(1..=3)).map(|_| (rng.random_range(-3..=3i64), rng.random_range(-4..=4i64)));
        let p = LaurentPoly::from_terms(terms);
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_symbol(rng: &mut ChaCha8Rng, n: usize) -> GenSymbol {
    let i = rng.random_range(1..=n);
    match rng.random_range(0..4) {
        0 => GenSymbol::X(i),
        1 => GenSymbol::D(i),
        2 => GenSymbol::Sigma(i, if rng.random_bool(0.5) { 1 } else { -1 }),
        _ => GenSymbol::Theta(MultiIndex::new((0..n).map(|_| rng.random_range(-1..=1)).collect())),
    }
}

fn random_operator(rng: &mut ChaCha8Rng) -> Operator {
    let n = rng.random_range(1..=3);
    let mut op = Operator::zero(n);
    for _ in 0..rng.random_range(1..=3) {
        let word = (0..rng.random_range(0..=5)).map(|_| random_symbol(rng, n)).collect();
        op = &op + &Operator::term(n, word, random_laurent(rng)).expect("valid indices");
    }
    op
}

fn criterion_9() -> Outcome {
    const SAMPLES: usize = 200;
    const DEGREE: u32 = 5;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    for k in 0..SAMPLES {
        let op = random_operator(&mut rng);
        let nf = normalize(&op);
        if !op_eq_up_to_degree(&op, &nf, DEGREE).map_err(|e| e.to_string())?.holds() {
            return Err(format!("sample {k}: {op} and its normal form {nf} act differently"));
        }
        if normalize(&nf) != nf {
            return Err(format!("sample {k}: normal form {nf} is not a fixed point"));
        }
        let status = Command::new(env!("CARGO_BIN_EXE_qweyl"))
            .args(["normalize", "--check", "--n", &op.rank().to_string(), "--degree", &DEGREE.to_string()])
            .arg(format!("--op={op}"))
            .output()
            .map_err(|e| format!("cannot run qweyl: {e}"))?;
        if !status.status.success() {
            return Err(format!(
                "sample {k}: `qweyl normalize --check --op {op:?}` exited with {}: {}",
                status.status,
                String::from_utf8_lossy(&status.stderr)
            ));
        }
    }
    Ok(format!("{SAMPLES} random operators, D={DEGREE}, CLI check exit 0 on each"))
}

fn criterion_10() -> Outcome {
    let mut checked = 0usize;
    for a in 0..=12u32 {
        for b in 0..=a {
            let c = q_binom(a, b).map_err(|e| e.to_string())?;
            if c.terms().any(|(_, k)| k.sign() != num_bigint::Sign::Plus) {
                return Err(format!("[{a} over {b}] = {c} has a non-positive coefficient"));
            }
            checked += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    for _ in 0..500 {
        let (a, d) = (random_laurent(&mut rng), random_laurent(&mut rng));
        let back = (&a * &d).exact_div(&d).map_err(|e| e.to_string())?;
        if back != a {
            return Err(format!("({a})·({d}) / ({d}) gave {back}"));
        }
        checked += 1;
    }

    for n in 1..=3usize {
        let weights: Vec<MultiIndex> = (0..3i64.pow(n as u32))
            .map(|mut k| {
                MultiIndex::new(
                    (0..n)
                        .map(|_| {
                            let v = k % 3 - 1;
                            k /= 3;
                            v
                        })
                        .collect(),
                )
            })
            .collect();
        let t = |x: &MultiIndex, y: &MultiIndex| theta_exp(x, y).expect("same rank");
        for a in &weights {
            for b in &weights {
                if t(a, b) != -t(b, a) {
                    return Err(format!("θ({a},{b}) θ({b},{a}) ≠ 1"));
                }
                for c in &weights {
                    if t(&(a + b), c) != t(a, c) + t(b, c) || t(a, &(b + c)) != t(a, b) + t(a, c) {
                        return Err(format!("θ is not bimultiplicative at {a}, {b}, {c}"));
                    }
                    checked += 1;
                }
            }
        }

        let monos = monomials_up_to(n, 3);
        for a in &monos {
            for b in &monos {
                let ab = mul_monomial(a, b).map_err(|e| e.to_string())?;
                for c in &monos {
                    let left = ab.mul(&Element::monomial(c.clone())).map_err(|e| e.to_string())?;
                    let bc = mul_monomial(b, c).map_err(|e| e.to_string())?;
                    let right = Element::monomial(a.clone()).mul(&bc).map_err(|e| e.to_string())?;
                    if left != right {
                        return Err(format!("associativity fails at {a}, {b}, {c}"));
                    }
                    checked += 1;
                }
            }
        }

        checked += leibniz(n)?;
    }
    Ok(format!("{checked} exact instances"))
}

/// Both twisted Leibniz laws on all monomial pairs of degree ≤ 3 and all
/// weights `x^(α)` of degree ≤ 2, for both choices of sign.
fn leibniz(n: usize) -> Result<usize, String> {
    let act = |w: Vec<GenSymbol>, e: &Element| -> Element {
        Operator::word(n, w).and_then(|op| op.apply(e)).expect("valid word")
    };
    let mut checked = 0;
    let monos = monomials_up_to(n, 3);
    for alpha in monomials_up_to(n, 2) {
        let xa = Element::monomial(alpha.clone());
        for i in 1..=n {
            let eps = MultiIndex::unit(n, i).expect("i ≤ n");
            let xd = |e: &Element| xa.mul(&act(vec![GenSymbol::D(i)], e)).expect("same rank");
            for s in [1, -1] {
                for b in &monos {
                    for c in &monos {
                        let (y, z) = (Element::monomial(b.clone()), Element::monomial(c.clone()));
                        let lhs = xd(&y.mul(&z).expect("same rank"));
                        let first = xd(&y).mul(&act(vec![GenSymbol::Sigma(i, -s)], &z)).expect("same rank");
                        let twist = act(vec![GenSymbol::Theta(&alpha - &eps), GenSymbol::Sigma(i, s)], &y);
                        let second = twist.mul(&xd(&z)).expect("same rank");
                        if lhs != &first + &second {
                            return Err(format!("x^{alpha} ∂_{i} Leibniz (sign {s}) fails on x^{b}, x^{c}"));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(checked)
}

/// Every single-edit corruption of an operator: one symbol removed, one
/// term dropped, one coefficient negated or shifted by `q`.
fn mutations(op: &Operator) -> Vec<(String, Operator)> {
    let n = op.rank();
    let terms: Vec<(Vec<GenSymbol>, LaurentPoly)> = op.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    let rebuild = |edited: &[(Vec<GenSymbol>, LaurentPoly)]| {
        edited.iter().fold(Operator::zero(n), |acc, (w, c)| &acc + &Operator::term(n, w.clone(), c.clone()).unwrap())
    };
    let mut out = vec![];
    for t in 0..terms.len() {
        for p in 0..terms[t].0.len() {
            let mut edited = terms.clone();
            let gone = edited[t].0.remove(p);
            out.push((format!("drop {gone} from term {t}"), rebuild(&edited)));
        }
        if terms.len() > 1 {
            let mut edited = terms.clone();
            edited.remove(t);
            out.push((format!("drop term {t}"), rebuild(&edited)));
        }
        let mut edited = terms.clone();
        edited[t].1 = -&edited[t].1;
        out.push((format!("negate term {t}"), rebuild(&edited)));
        let mut edited = terms.clone();
        edited[t].1 = &edited[t].1 * &LaurentPoly::q();
        out.push((format!("scale term {t} by q"), rebuild(&edited)));
    }
    out
}

/// The first failing suite among those given, with its counterexample.
fn first_failure(suites: Vec<Suite<'_>>) -> Option<String> {
    suites.into_iter().find_map(|(name, run)| {
        let report = run();
        let bad = report.failures().next()?;
        let cex = bad.counterexample.as_ref()?;
        Some(format!("{name}: {} at x^{}", bad.id, cex.beta))
    })
}

fn realization_caught(r: &Realization, degree: u32) -> Option<String> {
    let roots = RootOps::build(r.n).expect("n ≥ 1");
    let word = default_reduced_word(r.n);
    first_failure(vec![
        ("serre", Box::new(|| verify_serre_with(r, degree).unwrap())),
        ("closed forms", Box::new(|| closed_form_check(r, degree).unwrap())),
        ("theorem33", Box::new(|| theorem33_check_with(r, &roots, &word, degree).unwrap())),
    ])
}

fn roots_caught(r: &Realization, roots: &RootOps, degree: u32) -> Option<String> {
    let word = default_reduced_word(r.n);
    first_failure(vec![
        ("root closed forms", Box::new(|| root_closed_form_check(roots, degree).unwrap())),
        ("prop32", Box::new(|| prop32_check_with(roots, degree).unwrap())),
        ("lemma34", Box::new(|| lemma34_check_with(r, roots, degree).unwrap())),
        ("theorem33", Box::new(|| theorem33_check_with(r, roots, &word, degree).unwrap())),
    ])
}

fn criterion_11() -> Outcome {
    let mut caught = 0;
    let mut escaped = vec![];
    let mut record = |what: String, hit: Option<String>| match hit {
        Some(_) => caught += 1,
        None => escaped.push(what),
    };

    // Rewrite rules, one corrupted field at a time.
    let n = 2;
    let rels = weyl_relations(n);
    let base = RewriteRules::default();
    let corrupted: Vec<(&str, RewriteRules)> = vec![
        ("dx_diag_offset", RewriteRules { dx_diag_offset: 1, ..base.clone() }),
        ("dx_diag_sigma", RewriteRules { dx_diag_sigma: false, ..base.clone() }),
        ("dx_skew_offset", RewriteRules { dx_skew_offset: 1, ..base.clone() }),
        ("xx_offset", RewriteRules { xx_offset: 1, ..base.clone() }),
        ("dd_offset", RewriteRules { dd_offset: 1, ..base.clone() }),
        ("sigma_x_offset", RewriteRules { sigma_x_offset: 1, ..base.clone() }),
        ("sigma_d_offset", RewriteRules { sigma_d_offset: 1, ..base.clone() }),
        ("theta_x_offset", RewriteRules { theta_x_offset: 1, ..base.clone() }),
        ("theta_d_offset", RewriteRules { theta_d_offset: 1, ..base.clone() }),
    ];
    for (name, rules) in corrupted {
        let hit = first_failure(vec![("weyl", Box::new(|| verify_weyl_relations_with(n, 4, &rels, &rules).unwrap()))]);
        record(format!("rewrite rule {name}"), hit);
    }

    // The σ term of ∂_1 x_1 removed from the presentation itself.
    let mut no_sigma = weyl_relations(1);
    let r = no_sigma.iter_mut().find(|r| r.id == "W:dx-plus:i=1").ok_or("missing W:dx-plus:i=1")?;
    r.identities[0].rhs = Rhs::Operator(Operator::zero(1));
    let hit = first_failure(vec![("weyl", Box::new(|| verify_weyl_relations_with(1, 6, &no_sigma, &base).unwrap()))]);
    record("σ term of ∂_1 x_1".into(), hit);

    // The Θ(ε_k) factors of e_n, named explicitly for n = 2, 3.
    for n in 2..=3 {
        let mut r = build_realization(n).map_err(|e| e.to_string())?;
        let stripped = r.e[n - 1].terms().fold(Operator::zero(n), |acc, (w, c)| {
            let w: Vec<GenSymbol> = w.iter().filter(|g| !matches!(g, GenSymbol::Theta(_))).cloned().collect();
            &acc + &Operator::term(n, w, c.clone()).unwrap()
        });
        r.e[n - 1] = stripped;
        record(format!("Θ factors of e_{n}"), realization_caught(&r, 4));
    }

    // Every single edit of every generator word.
    let r = build_realization(n).map_err(|e| e.to_string())?;
    let fields: [(&str, Family); 4] =
        [("e", |r| &mut r.e), ("f", |r| &mut r.f), ("K", |r| &mut r.k), ("K^-1", |r| &mut r.k_inv)];
    for (name, field) in fields {
        for i in 0..n {
            let original = field(&mut r.clone())[i].clone();
            for (edit, mutated) in mutations(&original) {
                let mut m = r.clone();
                field(&mut m)[i] = mutated;
                record(format!("{name}_{}: {edit}", i + 1), realization_caught(&m, 4));
            }
        }
    }

    // Every single edit of every root operator.
    let roots = RootOps::build(n).map_err(|e| e.to_string())?;
    for (&(i, j), op) in &roots.ops {
        for (edit, mutated) in mutations(op) {
            let mut m = roots.clone();
            m.ops.insert((i, j), mutated);
            record(format!("e_({i},{j}): {edit}"), roots_caught(&r, &m, 4));
        }
    }

    if escaped.is_empty() {
        Ok(format!("{caught} mutations, each rejected with a counterexample"))
    } else {
        Err(format!(
            "{} of {} mutations went undetected: {}",
            escaped.len(),
            caught + escaped.len(),
            escaped.join("; ")
        ))
    }
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut failed = 0;
    for (k, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {k}: PASS ({detail}; {secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {k}: FAIL ({secs:.2}s)\n{why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
