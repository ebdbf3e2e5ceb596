use std::fmt::Write as _;

use serde_json::{json, Value};

use qweyl_core::rootvec::{
    braid_relation_check, braid_root_vector, default_reduced_word, evaluate, lemma34_check, positive_root_pair,
    prop32_check, root_of_prefix, theorem33_check_with, BraidWord, RootSign,
};
use qweyl_core::uqrealize::{classical_degeneration_check, lemma21_check, verify_gl, verify_serre};
use qweyl_core::verify::{op_eq_up_to_degree, OpComparison};
use qweyl_core::weylops::verify_weyl_relations;
use qweyl_core::{
    build_realization, monomials_up_to, normalize, parse_element, parse_operator, root_op, Element, RootOps,
    VerificationReport,
};

use crate::{Cli, Command, Failure, Format, Suite};

/// Largest shift `|m|` swept by the lemma21 suite.
const LEMMA21_SHIFT: i64 = 3;

pub fn run(cli: &Cli) -> Result<(), Failure> {
    if cli.n == 0 {
        return Err(Failure::Usage("n must be ≥ 1".into()));
    }
    configure_threads(cli.threads)?;
    match &cli.command {
        Command::Verify { suite } => verify(cli, *suite),
        Command::Act { op, on } => act(cli, op, on),
        Command::Normalize { op, check } => normalize_cmd(cli, op, *check),
        Command::Rootvec { i, j } => rootvec(cli, *i, *j),
    }
}

fn configure_threads(flag: Option<usize>) -> Result<(), Failure> {
    let env = std::env::var("QWEYL_THREADS").ok();
    let threads = match (flag, env) {
        (Some(t), _) => Some(t),
        (None, Some(v)) => Some(
            v.parse::<usize>()
                .map_err(|_| Failure::Usage(format!("QWEYL_THREADS must be a positive integer, got {v:?}")))?,
        ),
        (None, None) => None,
    };
    if let Some(t) = threads {
        if t == 0 {
            return Err(Failure::Usage("--threads must be ≥ 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Usage(format!("cannot configure thread pool: {e}")))?;
    }
    Ok(())
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    print!("{text}");
    if let Some(path) = &cli.out {
        std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn to_json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn braid_word(cli: &Cli) -> Result<BraidWord, Failure> {
    match &cli.word {
        None => Ok(default_reduced_word(cli.n)),
        Some(text) => {
            let w: BraidWord = text.parse()?;
            Ok(BraidWord::longest(w.indices().to_vec(), cli.n)?)
        }
    }
}

fn run_suite(cli: &Cli, suite: Suite) -> Result<VerificationReport, Failure> {
    let (n, d) = (cli.n, cli.degree);
    Ok(match suite {
        Suite::Weyl => verify_weyl_relations(n, d)?,
        Suite::Serre => verify_serre(n, d)?,
        Suite::Gl => verify_gl(n, d)?,
        Suite::Prop32 => prop32_check(n, d)?,
        Suite::Braid => braid_relation_check(n, d)?,
        Suite::Lemma34 => lemma34_check(n, d)?,
        Suite::Theorem33 => theorem33_check_with(&build_realization(n)?, &RootOps::build(n)?, &braid_word(cli)?, d)?,
        Suite::Lemma21 => lemma21_check(n, d, LEMMA21_SHIFT)?,
        Suite::Classical => classical_degeneration_check(n, d)?,
        Suite::All => unreachable!("expanded by the caller"),
    })
}

/// Suites that need at least two variables.
fn needs_two(suite: Suite) -> bool {
    matches!(suite, Suite::Gl | Suite::Prop32 | Suite::Braid | Suite::Lemma34)
}

fn verify(cli: &Cli, suite: Suite) -> Result<(), Failure> {
    let suites: Vec<Suite> = if suite == Suite::All {
        vec![
            Suite::Weyl,
            Suite::Serre,
            Suite::Gl,
            Suite::Lemma21,
            Suite::Classical,
            Suite::Prop32,
            Suite::Braid,
            Suite::Lemma34,
            Suite::Theorem33,
        ]
        .into_iter()
        .filter(|s| cli.n >= 2 || !needs_two(*s))
        .collect()
    } else {
        vec![suite]
    };
    let reports = suites.iter().map(|s| run_suite(cli, *s)).collect::<Result<Vec<_>, _>>()?;
    let text = match cli.format {
        Format::Text => reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n"),
        Format::Json if suite == Suite::All => to_json(&reports),
        Format::Json => to_json(&reports[0]),
    };
    emit(cli, &text)?;
    if reports.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn act(cli: &Cli, op_src: &str, on_src: &str) -> Result<(), Failure> {
    let op = parse_operator(op_src, cli.n)?;
    let on = parse_element(on_src, cli.n)?;
    let result = op.apply(&on)?;
    let text = match cli.format {
        Format::Text => format!("{result}\n"),
        Format::Json => to_json(&json!({
            "n": cli.n,
            "op": op,
            "on": on,
            "result": result,
            "text": result.to_string(),
        })),
    };
    emit(cli, &text)
}

fn normalize_cmd(cli: &Cli, op_src: &str, check: bool) -> Result<(), Failure> {
    let op = parse_operator(op_src, cli.n)?;
    let nf = normalize(&op);
    let cmp = check.then(|| op_eq_up_to_degree(&op, &nf, cli.degree)).transpose()?;
    let status = cmp.as_ref().map(|c| if c.holds() { "pass" } else { "fail" });
    let text = match cli.format {
        Format::Text => {
            let mut s = format!("{nf}\n");
            if let Some(c) = &cmp {
                match c {
                    OpComparison::Equal => writeln!(s, "check: pass (|β| ≤ {})", cli.degree).unwrap(),
                    OpComparison::Differs { beta, lhs, rhs } => {
                        writeln!(s, "check: FAIL at x^{beta}: input gives {lhs}, normal form gives {rhs}").unwrap()
                    }
                }
            }
            s
        }
        Format::Json => {
            let mut v = json!({ "n": cli.n, "normal_form": nf, "text": nf.to_string() });
            if let Some(st) = status {
                v["check"] = Value::from(st);
                v["degree"] = Value::from(cli.degree);
            }
            to_json(&v)
        }
    };
    emit(cli, &text)?;
    match cmp {
        Some(c) if !c.holds() => Err(Failure::Verification),
        _ => Ok(()),
    }
}

fn rootvec(cli: &Cli, i: usize, j: usize) -> Result<(), Failure> {
    let n = cli.n;
    let op = root_op(i, j, n)?;
    let nf = normalize(&op);
    let word = braid_word(cli)?;
    let (sign, pair) = if i < j { (RootSign::Positive, (i, j)) } else { (RootSign::Negative, (j, i)) };
    let p = (1..=word.len())
        .find(|&p| root_of_prefix(n, p, &word).ok().and_then(|v| positive_root_pair(&v)) == Some(pair))
        .ok_or_else(|| Failure::Usage(format!("the word {word} does not produce the root ({},{})", pair.0, pair.1)))?;
    let formal = braid_root_vector(n, p, &word, sign)?;
    let realization = build_realization(n)?;
    let evaluated = evaluate(&formal, &realization)?;
    let cmp = op_eq_up_to_degree(&op, &evaluated, cli.degree)?;
    let table_degree = cli.degree.min(3);
    let rows: Vec<(String, Element, Element)> = monomials_up_to(n, table_degree)
        .into_iter()
        .map(|b| {
            let lhs = op.apply_monomial(&b);
            let rhs = evaluated.apply_monomial(&b);
            (format!("x^{b}"), lhs, rhs)
        })
        .collect();
    let status = if cmp.holds() { "pass" } else { "fail" };
    let family = if sign == RootSign::Positive { "E" } else { "F" };
    let text = match cli.format {
        Format::Text => {
            let mut s = String::new();
            let label = |name: &str| format!("{name:<20}");
            writeln!(s, "{}{op}", label(&format!("e_{{{i},{j}}} word:"))).unwrap();
            writeln!(s, "{}{nf}", label("normal form:")).unwrap();
            writeln!(s, "{}{word} (prefix {p}, {family}{})", label("braid word:"), word.indices()[p - 1]).unwrap();
            writeln!(s, "{}{formal}", label("braid root vector:")).unwrap();
            writeln!(s, "action on |β| ≤ {table_degree}:").unwrap();
            for (b, l, r) in &rows {
                writeln!(s, "  {b}: e_{{{i},{j}}} -> {l} | braid -> {r}").unwrap();
            }
            writeln!(s, "agreement up to |β| ≤ {}: {status}", cli.degree).unwrap();
            s
        }
        Format::Json => to_json(&json!({
            "n": n,
            "i": i,
            "j": j,
            "word_form": op,
            "word_text": op.to_string(),
            "normal_form": nf,
            "normal_text": nf.to_string(),
            "braid_word": word,
            "prefix": p,
            "braid_root_vector": formal,
            "braid_text": formal.to_string(),
            "table": rows.iter().map(|(b, l, r)| json!({"monomial": b, "root_op": l, "braid": r})).collect::<Vec<_>>(),
            "degree": cli.degree,
            "agreement": status,
        })),
    };
    emit(cli, &text)?;
    if cmp.holds() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
