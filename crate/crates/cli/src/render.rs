//! Dispatch and report rendering for every subcommand.

use crate::{
    fixture_params, load_algebra, load_hom, parse_pairs, parse_tuple, CheckCommand, Command,
    Outcome,
};
use centrax::formula::chain_term_sexpr;
use centrax::io::CongruenceFile;
use centrax::{
    analyze_homomorphism, all_congruences, central_elements, check_dp, check_fhp,
    check_lexdfc, check_rexdfc, check_zero_one, decompose, factor_pairs, fixtures, io,
    maltsev_witness, pushout_quotient, stability_pushout_check, synthesize_right_formula,
    Caps, Congruence, Error, FiniteAlgebra, MaltsevChain,
};
use serde_json::{json, Value};
use std::fmt::Write as _;

type Result<T> = std::result::Result<T, Error>;

pub fn run(command: &Command, caps: &Caps, seed: Option<u64>) -> Result<Outcome> {
    match command {
        Command::Congruences { algebra } => congruences(&load_algebra(algebra)?, caps),
        Command::Factors { algebra } => factors(&load_algebra(algebra)?, caps),
        Command::Centrals { algebra } => centrals(&load_algebra(algebra)?, caps),
        Command::Decompose { algebra, pair } => decompose_cmd(&load_algebra(algebra)?, *pair, caps),
        Command::Check { check } => check_cmd(check, caps),
        Command::AnalyzeHom { hom } => analyze_hom(&load_hom(hom)?, caps),
        Command::SynthesizeR { algebra } => synthesize(&load_algebra(algebra)?, caps),
        Command::Pushout { hom, collapse } => pushout(&load_hom(hom)?, collapse),
        Command::Witness {
            algebra,
            pair,
            left,
            right,
        } => witness(&load_algebra(algebra)?, pair, left, right, caps),
        Command::Fixture {
            name,
            n,
            k,
            size,
            ops,
            out,
        } => fixture(name, fixture_params(*n, *k, *size, *ops, seed), out.as_deref()),
    }
}

fn congruence_json(base: &FiniteAlgebra, theta: &Congruence) -> Value {
    serde_json::to_value(CongruenceFile::from_congruence(base, theta)).unwrap_or(Value::Null)
}

fn blocks_text(base: &FiniteAlgebra, theta: &Congruence) -> String {
    theta
        .blocks()
        .iter()
        .map(|block| {
            let names: Vec<String> = block.iter().map(|&x| base.element_name(x)).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn congruences(algebra: &FiniteAlgebra, caps: &Caps) -> Result<Outcome> {
    let cons = all_congruences(algebra, caps)?;
    let mut text = format!("Con({}): {} congruences\n", algebra.name, cons.len());
    for theta in &cons {
        let _ = writeln!(text, "  {:?}  {}", theta.rep(), blocks_text(algebra, theta));
    }
    Ok(Outcome {
        verdict: true,
        text,
        json: json!({
            "algebra": algebra.name,
            "count": cons.len(),
            "congruences": cons.iter().map(|t| congruence_json(algebra, t)).collect::<Vec<_>>(),
        }),
    })
}

fn factors(algebra: &FiniteAlgebra, caps: &Caps) -> Result<Outcome> {
    let pairs = factor_pairs(algebra, caps)?;
    let mut text = format!("FC({}): {} ordered pairs\n", algebra.name, pairs.len());
    for pair in &pairs {
        let _ = writeln!(
            text,
            "  theta {:?} | delta {:?}",
            pair.theta.rep(),
            pair.delta.rep()
        );
    }
    Ok(Outcome {
        verdict: true,
        text,
        json: json!({
            "algebra": algebra.name,
            "count": pairs.len(),
            "pairs": pairs.iter().map(|p| json!({
                "theta": congruence_json(algebra, &p.theta),
                "delta": congruence_json(algebra, &p.delta),
            })).collect::<Vec<_>>(),
        }),
    })
}

fn centrals(algebra: &FiniteAlgebra, caps: &Caps) -> Result<Outcome> {
    let za = central_elements(algebra, caps)?;
    let mut text = format!(
        "Z({}): {} central elements (Boolean algebra of size {})\n",
        algebra.name,
        za.len(),
        za.len()
    );
    for (i, e) in za.elements.iter().enumerate() {
        let comp = &za.elements[za.complement_of(i)];
        let _ = writeln!(
            text,
            "  {}  complement {}",
            algebra.tuple_name(&e.tuple),
            algebra.tuple_name(&comp.tuple)
        );
    }
    Ok(Outcome {
        verdict: true,
        text,
        json: json!({
            "algebra": algebra.name,
            "count": za.len(),
            "elements": za.elements.iter().enumerate().map(|(i, e)| json!({
                "tuple": e.tuple,
                "display": algebra.tuple_name(&e.tuple),
                "complement": za.elements[za.complement_of(i)].tuple,
                "theta0": congruence_json(algebra, &e.theta0),
                "theta1": congruence_json(algebra, &e.theta1),
            })).collect::<Vec<_>>(),
            "bottom": za.elements[za.bottom].tuple,
            "top": za.elements[za.top].tuple,
        }),
    })
}

fn decompose_cmd(algebra: &FiniteAlgebra, pair_index: usize, caps: &Caps) -> Result<Outcome> {
    let pairs = factor_pairs(algebra, caps)?;
    let pair = pairs.get(pair_index).ok_or(Error::OutOfRange {
        value: pair_index,
        size: pairs.len(),
    })?;
    let dec = decompose(algebra, pair)?;
    let text = format!(
        "{} ≅ {} × {}  (sizes {} × {}, iso verified)\n",
        algebra.name,
        dec.left.algebra.name,
        dec.right.algebra.name,
        dec.left.algebra.size,
        dec.right.algebra.size
    );
    Ok(Outcome {
        verdict: true,
        text,
        json: json!({
            "algebra": algebra.name,
            "pair": pair_index,
            "left_size": dec.left.algebra.size,
            "right_size": dec.right.algebra.size,
            "iso": dec.iso.map,
        }),
    })
}

fn verdict_outcome(name: &str, subject: String, verdict: bool, extra: Value) -> Outcome {
    let text = format!("{name}({subject}): {verdict}\n");
    let mut json = json!({ "check": name, "subject": subject, "verdict": verdict });
    if let (Value::Object(map), Value::Object(extra)) = (&mut json, extra) {
        map.extend(extra);
    }
    Outcome {
        verdict,
        text,
        json,
    }
}

fn check_cmd(check: &CheckCommand, caps: &Caps) -> Result<Outcome> {
    match check {
        CheckCommand::Dp(arg) => {
            let algebra = load_algebra(&arg.algebra)?;
            let report = check_dp(&algebra, caps)?;
            let extra = match &report.witness {
                Some((e, f, count)) => json!({
                    "witness": { "e": e, "f": f, "factor_pairs": count }
                }),
                None => json!({}),
            };
            Ok(verdict_outcome("dp", algebra.name.clone(), report.holds, extra))
        }
        CheckCommand::Rexdfc(arg) => {
            let algebra = load_algebra(&arg.algebra)?;
            let holds = check_rexdfc(&algebra, caps)?;
            Ok(verdict_outcome("rexdfc", algebra.name.clone(), holds, json!({})))
        }
        CheckCommand::Lexdfc(arg) => {
            let algebra = load_algebra(&arg.algebra)?;
            let holds = check_lexdfc(&algebra, caps)?;
            Ok(verdict_outcome("lexdfc", algebra.name.clone(), holds, json!({})))
        }
        CheckCommand::ZeroOne(arg) => {
            let algebra = load_algebra(&arg.algebra)?;
            let holds = check_zero_one(&algebra);
            Ok(verdict_outcome("zero-one", algebra.name.clone(), holds, json!({})))
        }
        CheckCommand::Fhp { a, b } => {
            let a = load_algebra(a)?;
            let b = load_algebra(b)?;
            let report = check_fhp(&a, &b, caps)?;
            let subject = format!("{}x{}", a.name, b.name);
            let mut text = format!(
                "fhp({subject}): {}\n  (i) all congruences factorize: {}\n  (ii) projection-kernel inequalities: {}\n  (iii) principal congruences are products: {}\n",
                report.holds(),
                report.all_factorize,
                report.pi_inequalities,
                report.principal_products
            );
            if let Some(witness) = &report.witness {
                let _ = writeln!(text, "  witness: {:?}", witness.rep());
            }
            let prod = centrax::product(&[&a, &b])?;
            Ok(Outcome {
                verdict: report.holds(),
                text,
                json: json!({
                    "check": "fhp",
                    "subject": subject,
                    "verdict": report.holds(),
                    "all_factorize": report.all_factorize,
                    "pi_inequalities": report.pi_inequalities,
                    "principal_products": report.principal_products,
                    "congruence_count": report.congruence_count,
                    "witness": report.witness.as_ref().map(|w| congruence_json(&prod.algebra, w)),
                }),
            })
        }
        CheckCommand::Stability { hom } => {
            let f = load_hom(hom)?;
            let report = stability_pushout_check(&f, caps)?;
            let subject = format!("{}->{}", f.dom.name, f.cod.name);
            let mut text = format!("stability({subject}): {}\n", report.stable);
            for pair in &report.pairs {
                let _ = writeln!(
                    text,
                    "  pair ({},{}): {} x {} {}",
                    f.dom.tuple_name(&pair.e),
                    f.dom.tuple_name(&pair.g),
                    pair.left_size,
                    pair.right_size,
                    if pair.bijective { "ok" } else { "FAILS" }
                );
            }
            Ok(Outcome {
                verdict: report.stable,
                text,
                json: json!({
                    "check": "stability",
                    "subject": subject,
                    "verdict": report.stable,
                    "pairs": report.pairs.iter().map(|p| json!({
                        "e": p.e, "g": p.g,
                        "left_size": p.left_size, "right_size": p.right_size,
                        "bijective": p.bijective,
                    })).collect::<Vec<_>>(),
                    "witness": report.witness.as_ref().map(|(e, g)| json!({"e": e, "g": g})),
                }),
            })
        }
    }
}

fn analyze_hom(f: &centrax::Homomorphism, caps: &Caps) -> Result<Outcome> {
    let report = analyze_homomorphism(f, caps)?;
    let verdict =
        report.preserves_centrals && report.preserves_complementary && report.boolean_hom;
    let mut text = format!(
        "analyze-hom({}->{}):\n  preserves_centrals: {}\n",
        f.dom.name, f.cod.name, report.preserves_centrals
    );
    if let Some(e) = &report.central_witness {
        let _ = writeln!(text, "    witness: {}", f.dom.tuple_name(e));
    }
    let _ = write!(
        text,
        "  preserves_complementary: {}",
        report.preserves_complementary
    );
    if let Some((e, g)) = &report.complementary_witness {
        let _ = write!(
            text,
            ", witness: ({},{})",
            f.dom.tuple_name(e),
            f.dom.tuple_name(g)
        );
    }
    text.push('\n');
    let _ = writeln!(text, "  boolean_hom: {}", report.boolean_hom);
    if let Some(why) = &report.boolean_witness {
        let _ = writeln!(text, "    {}", why);
    }
    Ok(Outcome {
        verdict,
        text,
        json: json!({
            "check": "analyze-hom",
            "dom": f.dom.name,
            "cod": f.cod.name,
            "verdict": verdict,
            "preserves_centrals": report.preserves_centrals,
            "preserves_complementary": report.preserves_complementary,
            "boolean_hom": report.boolean_hom,
            "central_witness": report.central_witness,
            "complementary_witness": report.complementary_witness
                .as_ref()
                .map(|(e, g)| json!({"e": e, "g": g})),
            "boolean_witness": report.boolean_witness,
        }),
    })
}

fn chain_json(algebra: &FiniteAlgebra, chain: &MaltsevChain) -> Value {
    json!({
        "terms": chain.terms.iter()
            .map(|t| chain_term_sexpr(t, &algebra.signature, chain.gen_arity()))
            .collect::<Vec<_>>(),
        "params": chain.params,
        "endpoints": [chain.endpoints.0, chain.endpoints.1],
        "left": chain.left,
        "right": chain.right,
    })
}

fn synthesize(algebra: &FiniteAlgebra, caps: &Caps) -> Result<Outcome> {
    let syn = synthesize_right_formula(algebra, caps)?;
    let sexpr = syn.formula.to_sexpr(&algebra.signature);
    let text = format!(
        "synthesize-r({}):\n  F(x,y) size {}, F(y) size {}, product size {}\n  chain length {}, witnesses {}\n  {}\n",
        algebra.name,
        syn.free_two.algebra.size,
        syn.free_one.algebra.size,
        syn.product_size,
        syn.chain.len(),
        syn.formula.witnesses,
        sexpr
    );
    Ok(Outcome {
        verdict: true,
        text,
        json: json!({
            "algebra": algebra.name,
            "free_two_size": syn.free_two.algebra.size,
            "free_one_size": syn.free_one.algebra.size,
            "product_size": syn.product_size,
            "chain_length": syn.chain.len(),
            "witnesses": syn.formula.witnesses,
            "formula": sexpr,
        }),
    })
}

fn pushout(f: &centrax::Homomorphism, collapse: &str) -> Result<Outcome> {
    let pairs = parse_pairs(&f.dom, collapse)?;
    let square = pushout_quotient(f, &pairs)?;
    let commutes = square.commutes();
    let text = format!(
        "pushout({}->{}): top {} blocks, bottom {} blocks, square commutes: {}\n",
        f.dom.name,
        f.cod.name,
        square.top.algebra.size,
        square.bottom.algebra.size,
        commutes
    );
    Ok(Outcome {
        verdict: commutes,
        text,
        json: json!({
            "dom": f.dom.name,
            "cod": f.cod.name,
            "collapsed": pairs.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "top": congruence_json(&f.dom, &square.top.canonical.kernel()),
            "bottom": congruence_json(&f.cod, &square.bottom.canonical.kernel()),
            "commutes": commutes,
        }),
    })
}

fn witness(
    algebra: &FiniteAlgebra,
    pair: &str,
    left: &str,
    right: &str,
    caps: &Caps,
) -> Result<Outcome> {
    let (a, b) = {
        let parsed = parse_tuple(algebra, pair)?;
        match parsed.as_slice() {
            [a, b] => (*a, *b),
            _ => return Err(Error::Parse("--pair expects exactly `a,b`".into())),
        }
    };
    let left = parse_tuple(algebra, left)?;
    let right = parse_tuple(algebra, right)?;
    match maltsev_witness(algebra, a, b, &left, &right, caps) {
        Ok(chain) => {
            chain.validate(algebra)?;
            let mut text = format!(
                "witness({}): ({},{}) ∈ θ, chain length {}\n",
                algebra.name,
                algebra.element_name(a),
                algebra.element_name(b),
                chain.len()
            );
            for term in &chain.terms {
                let _ = writeln!(
                    text,
                    "  {}",
                    chain_term_sexpr(term, &algebra.signature, chain.gen_arity())
                );
            }
            let _ = writeln!(text, "  lambda: {:?}", chain.params);
            Ok(Outcome {
                verdict: true,
                text,
                json: json!({
                    "algebra": algebra.name,
                    "found": true,
                    "chain": chain_json(algebra, &chain),
                }),
            })
        }
        Err(Error::NotInCongruence { pair }) => Ok(Outcome {
            verdict: false,
            text: format!(
                "witness({}): ({},{}) is NOT in the generated congruence\n",
                algebra.name,
                algebra.element_name(pair.0),
                algebra.element_name(pair.1)
            ),
            json: json!({ "algebra": algebra.name, "found": false }),
        }),
        Err(e) => Err(e),
    }
}

fn fixture(
    name: &str,
    params: fixtures::FixtureParams,
    out: Option<&std::path::Path>,
) -> Result<Outcome> {
    let built = fixtures::build(name, &params)?;
    let default_path = std::path::PathBuf::from(format!("{name}.json"));
    let path = out.unwrap_or(&default_path);
    let (kind, label) = match &built {
        fixtures::Fixture::Algebra(a) => {
            io::write_algebra(path, a)?;
            ("algebra", a.name.clone())
        }
        fixtures::Fixture::Homomorphism(h) => {
            let file = io::HomFile {
                dom: fixture_source(&h.dom.name),
                cod: fixture_source(&h.cod.name),
                map: h.map.clone(),
            };
            std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
            ("homomorphism", format!("{}->{}", h.dom.name, h.cod.name))
        }
    };
    Ok(Outcome {
        verdict: true,
        text: format!("wrote {kind} {label} to {}\n", path.display()),
        json: json!({ "kind": kind, "name": label, "path": path.display().to_string() }),
    })
}

/// Builder spec behind a shipped algebra name, so written homomorphism
/// files resolve without companion algebra files.
fn fixture_source(name: &str) -> String {
    match name {
        "2^2-meet" => "power-meet:2".into(),
        "2^3-meet" => "power-meet:3".into(),
        "2^2-join" => "power-join:2".into(),
        "C" => "C".into(),
        "D" => "D".into(),
        "2-meet" => "chain-meet:2".into(),
        "2" => "chain:2".into(),
        other => other.to_string(),
    }
}
