use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qring::LaurentPoly;
use crate::uqrealize::{build_realization, sweep_result, Realization};
use crate::verify::{check_relations, Counterexample, Identity, Relation, RelationResult, VerificationReport};
use crate::weylops::{q_bracket, GenSymbol, Operator};

use super::formal::{
    braid_root_vector, default_reduced_word, evaluate, lusztig_t, positive_root_pair, root_of_prefix, BraidWord,
    FormalUq, RootSign,
};
use super::{closed_form_root_action, RootOps};

fn need_rank(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidArgs(format!("n must be ≥ {min}")));
    }
    Ok(())
}

fn q() -> LaurentPoly {
    LaurentPoly::q()
}

fn qi() -> LaurentPoly {
    LaurentPoly::q_pow(-1)
}

fn bracket(a: &Operator, b: &Operator, c: &LaurentPoly) -> Operator {
    q_bracket(a, b, c).expect("same rank")
}

fn eval(expr: &FormalUq, r: &Realization) -> Operator {
    evaluate(expr, r).expect("same rank")
}

/// Compares every `e_{ij}` word with its closed-form action.
pub fn root_closed_form_check(roots: &RootOps, degree: u32) -> Result<VerificationReport> {
    let n = roots.n;
    let pairs: Vec<_> = roots.ops.keys().copied().collect();
    let relations = pairs
        .par_iter()
        .map(|&(i, j)| {
            let op = &roots.ops[&(i, j)];
            sweep_result(&format!("RCF:i={i},j={j}"), n, degree, |beta| {
                let lhs = op.apply_monomial(beta);
                let rhs = closed_form_root_action(i, j, beta).expect("valid pair");
                (lhs != rhs).then(|| Counterexample {
                    identity: format!("e_{{{i},{j}}} word = closed form"),
                    beta: beta.clone(),
                    lhs,
                    rhs,
                    note: None,
                })
            })
        })
        .collect::<Vec<RelationResult>>();
    Ok(VerificationReport::new("root-closed-form", n, degree, relations))
}

/// The q-bracket constructions of `e_{s,n+1}` and `e_{n+1,s}`, their
/// independence of the intermediate index, and the commutator of the pair.
pub fn prop32_check(n: usize, degree: u32) -> Result<VerificationReport> {
    prop32_check_with(&RootOps::build(n)?, degree)
}

pub fn prop32_check_with(roots: &RootOps, degree: u32) -> Result<VerificationReport> {
    let n = roots.n;
    need_rank(n, 2)?;
    let top = n + 1;
    let e = |i: usize, j: usize| roots.get(i, j).expect("valid pair");
    let den = &q() - &qi();
    let mut rels = Vec::new();
    for s in 1..n {
        rels.push(Relation::single(
            format!("P32-1:s={s}"),
            Identity::new(
                "e_{s,n+1} = [e_{s,s+1}, e_{s+1,n+1}]_q",
                bracket(e(s, s + 1), e(s + 1, top), &q()),
                e(s, top).clone(),
            ),
        ));
        for j in s + 1..=n {
            rels.push(Relation::single(
                format!("P32-2:s={s},j={j}"),
                Identity::new(
                    "e_{s,n+1} = [e_{s,j}, e_{j,n+1}]_q",
                    bracket(e(s, j), e(j, top), &q()),
                    e(s, top).clone(),
                ),
            ));
            rels.push(Relation::single(
                format!("P32-3:s={s},j={j}"),
                Identity::new(
                    "e_{n+1,s} = [e_{n+1,j}, e_{j,s}]_{q^-1}",
                    bracket(e(top, j), e(j, s), &qi()),
                    e(top, s).clone(),
                ),
            ));
            for k in j + 1..=n {
                rels.push(Relation::new(
                    format!("P32-J:s={s},j={j},k={k}"),
                    vec![
                        Identity::new(
                            "[e_{s,j}, e_{j,n+1}]_q = [e_{s,k}, e_{k,n+1}]_q",
                            bracket(e(s, j), e(j, top), &q()),
                            bracket(e(s, k), e(k, top), &q()),
                        ),
                        Identity::new(
                            "[e_{n+1,j}, e_{j,s}]_{q^-1} = [e_{n+1,k}, e_{k,s}]_{q^-1}",
                            bracket(e(top, j), e(j, s), &qi()),
                            bracket(e(top, k), e(k, s), &qi()),
                        ),
                    ],
                ));
            }
        }
        let sig = |e: i64| {
            let mut w: Vec<GenSymbol> = (1..=n).map(|i| GenSymbol::Sigma(i, e)).collect();
            w.push(GenSymbol::Sigma(s, e));
            Operator::word(n, w).expect("indices in range")
        };
        rels.push(Relation::single(
            format!("P32-4:s={s}"),
            Identity::divided(
                "[e_{s,n+1}, e_{n+1,s}] = (K_{ε_s-ε_{n+1}} - K_{ε_s-ε_{n+1}}^-1)/(q - q^-1)",
                bracket(e(s, top), e(top, s), &LaurentPoly::one()),
                &sig(1) - &sig(-1),
                den.clone(),
            ),
        ));
    }
    Ok(check_relations("prop32", n, degree, &rels))
}

/// Braid relations of the Lusztig symmetries and `T_iT_j(E_i) = E_j`, at
/// the level of evaluated actions.
pub fn braid_relation_check(n: usize, degree: u32) -> Result<VerificationReport> {
    braid_relation_check_with(&build_realization(n)?, degree)
}

pub fn braid_relation_check_with(r: &Realization, degree: u32) -> Result<VerificationReport> {
    let n = r.n;
    need_rank(n, 2)?;
    let t = |i: usize, x: &FormalUq| lusztig_t(i, x).expect("index in range");
    let mut generators: Vec<(String, FormalUq)> = Vec::new();
    for k in 1..=n {
        let mut v = vec![0; n];
        v[k - 1] = 1;
        generators.push((format!("E{k}"), FormalUq::e(n, k)?));
        generators.push((format!("F{k}"), FormalUq::f(n, k)?));
        generators.push((format!("K{k}"), FormalUq::k(n, v)?));
    }
    let mut rels = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            if i.abs_diff(j) == 1 {
                if i < j {
                    for (name, g) in &generators {
                        let lhs = t(i, &t(j, &t(i, g)));
                        let rhs = t(j, &t(i, &t(j, g)));
                        rels.push(Relation::single(
                            format!("L31-braid:i={i},j={j},g={name}"),
                            Identity::new("T_iT_jT_i(g) = T_jT_iT_j(g)", eval(&lhs, r), eval(&rhs, r)),
                        ));
                    }
                }
                rels.push(Relation::new(
                    format!("L31-TT:i={i},j={j}"),
                    vec![
                        Identity::new(
                            "T_iT_j(E_i) = E_j",
                            eval(&t(i, &t(j, &FormalUq::e(n, i)?)), r),
                            r.e[j - 1].clone(),
                        ),
                        Identity::new(
                            "T_iT_j(F_i) = F_j",
                            eval(&t(i, &t(j, &FormalUq::f(n, i)?)), r),
                            r.f[j - 1].clone(),
                        ),
                    ],
                ));
            } else {
                rels.push(Relation::new(
                    format!("L31-far:i={i},j={j}"),
                    vec![
                        Identity::new("T_i(E_j) = E_j", eval(&t(i, &FormalUq::e(n, j)?), r), r.e[j - 1].clone()),
                        Identity::new("T_i(F_j) = F_j", eval(&t(i, &FormalUq::f(n, j)?), r), r.f[j - 1].clone()),
                    ],
                ));
            }
        }
    }
    Ok(check_relations("braid", n, degree, &rels))
}

/// The bracket identities that step root vectors along one index.
pub fn lemma34_check(n: usize, degree: u32) -> Result<VerificationReport> {
    lemma34_check_with(&build_realization(n)?, &RootOps::build(n)?, degree)
}

pub fn lemma34_check_with(r: &Realization, roots: &RootOps, degree: u32) -> Result<VerificationReport> {
    let n = r.n;
    need_rank(n, 2)?;
    let e = |i: usize, j: usize| roots.get(i, j).expect("valid pair");
    let mut rels = Vec::new();
    for s in 1..=n {
        let ts_e = eval(&lusztig_t(s, &FormalUq::e(n, s)?)?, r);
        let ts_f = eval(&lusztig_t(s, &FormalUq::f(n, s)?)?, r);
        let minus_f_kinv = r.f[s - 1].compose(&r.k_inv[s - 1])?.scale(&LaurentPoly::constant(-1));
        rels.push(Relation::single(
            format!("L34-T:s={s}"),
            Identity::new("T_s(e_s) = -f_sK_s^-1", ts_e.clone(), minus_f_kinv),
        ));
        for j in s + 2..=n + 1 {
            rels.push(Relation::single(
                format!("L34-1:s={s},j={j}"),
                Identity::new("[e_{s,j}, T_s(e_s)]_q = e_{s+1,j}", bracket(e(s, j), &ts_e, &q()), e(s + 1, j).clone()),
            ));
            rels.push(Relation::single(
                format!("L34-2:s={s},j={j}"),
                Identity::new(
                    "[T_s(f_s), e_{j,s}]_{q^-1} = e_{j,s+1}",
                    bracket(&ts_f, e(j, s), &qi()),
                    e(j, s + 1).clone(),
                ),
            ));
        }
    }
    Ok(check_relations("lemma34", n, degree, &rels))
}

/// Every braid-built root vector along the default reduced word evaluates to
/// the matching `e_{ij}`.
pub fn theorem33_check(n: usize, degree: u32) -> Result<VerificationReport> {
    theorem33_check_with(&build_realization(n)?, &RootOps::build(n)?, &default_reduced_word(n), degree)
}

/// As [`theorem33_check`] for an explicit model and reduced word.
pub fn theorem33_check_with(
    r: &Realization,
    roots: &RootOps,
    word: &BraidWord,
    degree: u32,
) -> Result<VerificationReport> {
    let n = r.n;
    need_rank(n, 1)?;
    let mut rels = Vec::new();
    let mut bad = Vec::new();
    for p in 1..=word.len() {
        let v = root_of_prefix(n, p, word)?;
        let Some((a, b)) = positive_root_pair(&v) else {
            bad.push(RelationResult {
                id: format!("T33:p={p}"),
                status: crate::verify::Status::Fail,
                counterexample: None,
            });
            continue;
        };
        let pos = braid_root_vector(n, p, word, RootSign::Positive)?;
        let neg = braid_root_vector(n, p, word, RootSign::Negative)?;
        rels.push(Relation::single(
            format!("T33+:i={a},j={b}"),
            Identity::new(format!("e_α = e_{{{a},{b}}}"), eval(&pos, r), roots.get(a, b)?.clone()),
        ));
        rels.push(Relation::single(
            format!("T33-:i={b},j={a}"),
            Identity::new(format!("f_α = e_{{{b},{a}}}"), eval(&neg, r), roots.get(b, a)?.clone()),
        ));
    }
    let mut report = check_relations("theorem33", n, degree, &rels);
    for res in &mut report.relations {
        if let Some(c) = &mut res.counterexample {
            if c.note.is_none() {
                c.note = ratio_note(&c.lhs, &c.rhs);
            }
        }
    }
    if !bad.is_empty() {
        report.relations.extend(bad);
        report = VerificationReport::new("theorem33", n, degree, report.relations);
    }
    Ok(report)
}

/// `rhs/lhs` when both sides are multiples of the same single monomial and
/// the quotient is a Laurent polynomial.
fn ratio_note(lhs: &crate::aqn::Element, rhs: &crate::aqn::Element) -> Option<String> {
    let (mut l, mut r) = (lhs.terms(), rhs.terms());
    let ((bl, cl), (br, cr)) = (l.next()?, r.next()?);
    if l.next().is_some() || r.next().is_some() || bl != br {
        return None;
    }
    cr.exact_div(cl).ok().map(|k| format!("rhs/lhs = {k}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uqrealize::build_realization;

    #[test]
    fn words_match_closed_forms() {
        for n in 1..=3 {
            let report = root_closed_form_check(&RootOps::build(n).unwrap(), 5).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn prop32_rank_two() {
        let report = prop32_check(2, 5).unwrap();
        assert!(report.passed(), "{report}");
        assert!(prop32_check(1, 5).is_err());
    }

    #[test]
    fn braid_rank_two() {
        let report = braid_relation_check(2, 4).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn lemma34_rank_two() {
        let report = lemma34_check(2, 5).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.relations.iter().any(|r| r.id == "L34-1:s=1,j=3"));
    }

    #[test]
    fn theorem33_small() {
        let r1 = theorem33_check(1, 5).unwrap();
        assert!(r1.passed(), "{r1}");
        assert_eq!(r1.relations.len(), 2);
        let r2 = theorem33_check(2, 4).unwrap();
        assert!(r2.passed(), "{r2}");
        assert_eq!(r2.relations.len(), 6);
    }

    #[test]
    fn sign_flip_in_lowering_is_caught() {
        let n = 2;
        let mut roots = RootOps::build(n).unwrap();
        let flipped = -roots.get(3, 1).unwrap();
        roots.ops.insert((3, 1), flipped);
        let report = prop32_check_with(&roots, 4).unwrap();
        assert!(!report.passed());
        let r = build_realization(n).unwrap();
        let report = theorem33_check_with(&r, &roots, &default_reduced_word(n), 4).unwrap();
        let bad: Vec<_> = report.failures().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].id, "T33-:i=3,j=1");
        assert_eq!(bad[0].counterexample.as_ref().unwrap().note.as_deref(), Some("rhs/lhs = -1"));
    }
}
