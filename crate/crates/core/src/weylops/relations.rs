//! The defining relations of `W_q(2n)`, checked as action identities.
//!
//! Each relation also carries a normal-form clause: rewriting the
//! relation's left side with the rewrite system must not change its action.
//! That ties the rewrite rules to the same verification sweep.

use crate::error::Result;
use crate::qindex::{theta, MultiIndex};
use crate::qring::LaurentPoly;
use crate::verify::{check_relations, Identity, Relation, Rhs, VerificationReport};

use super::normal::{normalize_with, RewriteRules};
use super::{GenSymbol, Operator};

struct Gens {
    n: usize,
}

impl Gens {
    fn w(&self, word: Vec<GenSymbol>) -> Operator {
        Operator::word(self.n, word).expect("indices in range")
    }
    fn x(&self, i: usize) -> Operator {
        self.w(vec![GenSymbol::X(i)])
    }
    fn d(&self, i: usize) -> Operator {
        self.w(vec![GenSymbol::D(i)])
    }
    fn s(&self, i: usize, e: i64) -> Operator {
        self.w(vec![GenSymbol::Sigma(i, e)])
    }
    fn t(&self, mu: MultiIndex) -> Operator {
        self.w(vec![GenSymbol::Theta(mu)])
    }
    fn eps(&self, i: usize) -> MultiIndex {
        MultiIndex::unit(self.n, i).expect("index in range")
    }
    fn id(&self) -> Operator {
        Operator::identity(self.n)
    }
    fn c(&self, a: &Operator, b: &Operator) -> Operator {
        a.compose(b).expect("same rank")
    }
    fn c3(&self, a: &Operator, b: &Operator, c: &Operator) -> Operator {
        self.c(&self.c(a, b), c)
    }
}

/// The defining relations of `W_q(2n)` for rank `n`, in a fixed order.
pub fn weyl_relations(n: usize) -> Vec<Relation> {
    let g = Gens { n };
    let q = LaurentPoly::q();
    let qi = LaurentPoly::q_pow(-1);
    let den = &q - &qi;
    let mut rels = Vec::new();
    let eq = |label: &str, lhs: Operator, rhs: Operator| Identity::new(label, lhs, rhs);

    for i in 1..=n {
        let e = g.eps(i);
        rels.push(Relation::new(
            format!("W:theta-inverse:i={i}"),
            vec![
                eq("Θ(ε_i)Θ(-ε_i) = 1", g.c(&g.t(e.clone()), &g.t(-&e)), g.id()),
                eq("Θ(-ε_i)Θ(ε_i) = 1", g.c(&g.t(-&e), &g.t(e.clone())), g.id()),
            ],
        ));
        rels.push(Relation::new(
            format!("W:sigma-inverse:i={i}"),
            vec![
                eq("σ_iσ_i^-1 = 1", g.c(&g.s(i, 1), &g.s(i, -1)), g.id()),
                eq("σ_i^-1σ_i = 1", g.c(&g.s(i, -1), &g.s(i, 1)), g.id()),
            ],
        ));
        if i < n {
            let mu = &g.eps(i + 1) - &e;
            rels.push(Relation::single(
                format!("W:theta-sigma-pair:i={i}"),
                eq("Θ(-ε_i+ε_{i+1}) = σ_iσ_{i+1}", g.t(mu), g.c(&g.s(i, 1), &g.s(i + 1, 1))),
            ));
        }
    }

    for i in 1..=n {
        for j in 1..=n {
            let (ei, ej) = (g.eps(i), g.eps(j));
            let th_ij = theta(&ei, &ej).expect("same rank");
            let th_ji = theta(&ej, &ei).expect("same rank");
            rels.push(Relation::new(
                format!("W:theta-product:i={i},j={j}"),
                vec![
                    eq("Θ(ε_i)Θ(ε_j) = Θ(ε_i+ε_j)", g.c(&g.t(ei.clone()), &g.t(ej.clone())), g.t(&ei + &ej)),
                    eq(
                        "Θ(ε_i)Θ(ε_j) = Θ(ε_j)Θ(ε_i)",
                        g.c(&g.t(ei.clone()), &g.t(ej.clone())),
                        g.c(&g.t(ej.clone()), &g.t(ei.clone())),
                    ),
                ],
            ));
            rels.push(Relation::single(
                format!("W:sigma-commute:i={i},j={j}"),
                eq("σ_iσ_j = σ_jσ_i", g.c(&g.s(i, 1), &g.s(j, 1)), g.c(&g.s(j, 1), &g.s(i, 1))),
            ));
            rels.push(Relation::single(
                format!("W:sigma-theta:i={i},j={j}"),
                eq("σ_iΘ(ε_j) = Θ(ε_j)σ_i", g.c(&g.s(i, 1), &g.t(ej.clone())), g.c(&g.t(ej.clone()), &g.s(i, 1))),
            ));
            rels.push(Relation::single(
                format!("W:theta-x:i={i},j={j}"),
                eq(
                    "Θ(ε_i)x_jΘ(-ε_i) = θ(ε_i,ε_j)x_j",
                    g.c3(&g.t(ei.clone()), &g.x(j), &g.t(-&ei)),
                    g.x(j).scale(&th_ij),
                ),
            ));
            rels.push(Relation::single(
                format!("W:theta-d:i={i},j={j}"),
                eq(
                    "Θ(ε_i)∂_jΘ(-ε_i) = θ(ε_j,ε_i)∂_j",
                    g.c3(&g.t(ei.clone()), &g.d(j), &g.t(-&ei)),
                    g.d(j).scale(&th_ji),
                ),
            ));
            let delta = if i == j { 1 } else { 0 };
            rels.push(Relation::single(
                format!("W:sigma-x:i={i},j={j}"),
                eq(
                    "σ_ix_jσ_i^-1 = q^δ x_j",
                    g.c3(&g.s(i, 1), &g.x(j), &g.s(i, -1)),
                    g.x(j).scale(&LaurentPoly::q_pow(delta)),
                ),
            ));
            rels.push(Relation::single(
                format!("W:sigma-d:i={i},j={j}"),
                eq(
                    "σ_i∂_jσ_i^-1 = q^-δ ∂_j",
                    g.c3(&g.s(i, 1), &g.d(j), &g.s(i, -1)),
                    g.d(j).scale(&LaurentPoly::q_pow(-delta)),
                ),
            ));
            if i != j {
                rels.push(Relation::single(
                    format!("W:x-commute:i={i},j={j}"),
                    eq("x_ix_j = θ(ε_i,ε_j)x_jx_i", g.c(&g.x(i), &g.x(j)), g.c(&g.x(j), &g.x(i)).scale(&th_ij)),
                ));
                rels.push(Relation::single(
                    format!("W:d-commute:i={i},j={j}"),
                    eq("∂_i∂_j = θ(ε_i,ε_j)∂_j∂_i", g.c(&g.d(i), &g.d(j)), g.c(&g.d(j), &g.d(i)).scale(&th_ij)),
                ));
                rels.push(Relation::single(
                    format!("W:d-x:i={i},j={j}"),
                    eq("∂_ix_j = θ(ε_j,ε_i)x_j∂_i", g.c(&g.d(i), &g.x(j)), g.c(&g.x(j), &g.d(i)).scale(&th_ji)),
                ));
            }
        }
    }

    for i in 1..=n {
        let dx = g.c(&g.d(i), &g.x(i));
        let xd = g.c(&g.x(i), &g.d(i));
        rels.push(Relation::single(
            format!("W:dx-plus:i={i}"),
            eq("∂_ix_i - q x_i∂_i = σ_i^-1", &dx - &xd.scale(&q), g.s(i, -1)),
        ));
        rels.push(Relation::single(
            format!("W:dx-minus:i={i}"),
            eq("∂_ix_i - q^-1 x_i∂_i = σ_i", &dx - &xd.scale(&qi), g.s(i, 1)),
        ));
        rels.push(Relation::single(
            format!("W:dx-closed:i={i}"),
            Identity::divided(
                "∂_ix_i = (qσ_i - (qσ_i)^-1)/(q - q^-1)",
                dx.clone(),
                &g.s(i, 1).scale(&q) - &g.s(i, -1).scale(&qi),
                den.clone(),
            ),
        ));
        rels.push(Relation::single(
            format!("W:xd-closed:i={i}"),
            Identity::divided("x_i∂_i = (σ_i - σ_i^-1)/(q - q^-1)", xd, &g.s(i, 1) - &g.s(i, -1), den.clone()),
        ));
    }
    rels
}

/// Adds to each relation a clause requiring the rewrite system to preserve
/// the action of its left side.
fn with_normal_form_clauses(rels: Vec<Relation>, rules: &RewriteRules) -> Vec<Relation> {
    rels.into_iter()
        .map(|mut r| {
            let extra: Vec<Identity> = r
                .identities
                .iter()
                .flat_map(|ident| {
                    let mut sides = vec![ident.lhs.clone()];
                    match &ident.rhs {
                        Rhs::Operator(op) => sides.push(op.clone()),
                        Rhs::Divided { numer, .. } => sides.push(numer.clone()),
                    }
                    sides
                })
                .map(|side| {
                    Identity::new(format!("normalize preserves action: {side}"), normalize_with(&side, rules), side)
                })
                .collect();
            r.identities.extend(extra);
            r
        })
        .collect()
}

/// Checks every defining relation of `W_q(2n)` on all monomials of degree
/// at most `degree`, with the standard rewrite rules.
pub fn verify_weyl_relations(n: usize, degree: u32) -> Result<VerificationReport> {
    verify_weyl_relations_with(n, degree, &weyl_relations(n), &RewriteRules::default())
}

/// As [`verify_weyl_relations`] for an explicit relation list and rule set.
pub fn verify_weyl_relations_with(
    n: usize,
    degree: u32,
    relations: &[Relation],
    rules: &RewriteRules,
) -> Result<VerificationReport> {
    if n == 0 {
        return Err(crate::error::Error::InvalidArgs("n must be ≥ 1".into()));
    }
    let rels = with_normal_form_clauses(relations.to_vec(), rules);
    Ok(check_relations("weyl", n, degree, &rels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks_pass() {
        for n in 1..=2 {
            let report = verify_weyl_relations(n, 4).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn dropping_sigma_term_fails() {
        let n = 1;
        let mut rels = weyl_relations(n);
        let r = rels.iter_mut().find(|r| r.id == "W:dx-plus:i=1").unwrap();
        r.identities[0].rhs = Rhs::Operator(Operator::zero(n));
        let report = verify_weyl_relations_with(n, 6, &rels, &RewriteRules::default()).unwrap();
        assert_eq!(report.failed, 1);
        let bad = report.failures().next().unwrap();
        assert_eq!(bad.id, "W:dx-plus:i=1");
        assert_eq!(bad.counterexample.as_ref().unwrap().beta, MultiIndex::from([0]));
    }

    #[test]
    fn rejects_rank_zero() {
        assert!(verify_weyl_relations(0, 3).is_err());
    }
}
