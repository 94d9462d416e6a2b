//! Command-line interface: exact evaluation, enumeration, decomposition, and
//! verification with JSON output.
//!
//! Exit status: 0 on success, 1 when a verification suite fails, 2 on usage
//! errors (including invalid words and exceeded bounds).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use brauer::diagram::{double_factorial_rank, enumerate_diagrams, evaluate_word, parse_word_a, token_monomial_a, Monomial, TokenA};
use brauer::roots::{act_monomial, act_token, top_set};
use brauer::structure::{build_cell_datum, check_filtration, decompose, k_group, parabolic_rank, tl_subalgebra};
use brauer::typec::{
    b_set, count_closed, count_recursion, eval_c, normal_form_basis, orbit_size_formula,
    parse_word_c, phi_word, relation_suite_c, stabilizer_and_cosets, weyl_order, RelationCheck,
    WeylGroup,
};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgebraType {
    A,
    C,
}

#[derive(Parser)]
#[command(name = "brauer", version, about = "Exact Brauer diagram algebra engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON result to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel sweeps (0 = default).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a word to a monomial (type A words act on n strands, type C
    /// words on 2n).
    Eval {
        #[arg(long = "type", value_enum, default_value = "c")]
        algebra: AlgebraType,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
    },
    /// Multiply two or more words and print the product monomial.
    Mul {
        #[arg(long = "type", value_enum, default_value = "c")]
        algebra: AlgebraType,
        #[arg(long)]
        n: usize,
        #[arg(long, required = true, num_args = 1..)]
        word: Vec<String>,
    },
    /// Print the image of a type C word under the strand-doubling
    /// substitution, as a type A token array.
    Phi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
    },
    /// Print the rank of the diagram algebra.
    Count {
        #[arg(long = "type", value_enum, default_value = "c")]
        algebra: AlgebraType,
        #[arg(long)]
        n: usize,
    },
    /// Enumerate the normal-form basis (type C, n ≤ 4).
    Basis {
        #[arg(long)]
        n: usize,
    },
    /// Orbit and stabilizer data of the reference set B_{i,p}.
    Orbit {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        p: usize,
    },
    /// Factor a type A word through a height-zero reference set.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
    },
    /// Run verification suites; exit 1 if any check fails.
    Verify {
        #[arg(long, conflicts_with = "all")]
        suite: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        n: usize,
    },
    /// Export the cell datum layers and index triples (n ≤ 3).
    Cell {
        #[arg(long)]
        n: usize,
    },
    /// Closure size of the parabolic subalgebra on the given nodes.
    Parabolic {
        #[arg(long)]
        n: usize,
        /// Comma-separated node indices, e.g. 0,1.
        #[arg(long)]
        nodes: String,
    },
}

fn checks_json(suite: &str, checks: &[RelationCheck]) -> Value {
    json!({
        "suite": suite,
        "passed": checks.iter().all(|c| c.passed),
        "checks": checks.iter().map(|c| json!({"name": c.name, "passed": c.passed})).collect::<Vec<_>>(),
    })
}

fn ok(name: &str, passed: bool) -> RelationCheck {
    RelationCheck { name: name.to_string(), passed }
}

fn run_suite(suite: &str, n: usize) -> Result<Value, String> {
    let err = |e: brauer::Error| e.to_string();
    match suite {
        "relations" => Ok(checks_json(suite, &relation_suite_c(n).map_err(err)?)),
        "counting" => {
            let mut checks = vec![ok(
                "recursion matches closed formula",
                (0..=n).all(|m| count_closed(m) == count_recursion(2 * m)),
            )];
            let m = n.min(3);
            let sym = enumerate_diagrams(2 * m)
                .map_err(err)?
                .filter(|d| d.is_symmetric())
                .count() as u64;
            checks.push(ok(
                &format!("symmetric diagram count at rank {m}"),
                sym == count_closed(m),
            ));
            Ok(checks_json(suite, &checks))
        }
        "normalform" => {
            let w = WeylGroup::build(n).map_err(err)?;
            let basis = normal_form_basis(&w).map_err(err)?;
            Ok(checks_json(
                suite,
                &[ok("basis count equals rank", basis.len() as u64 == count_closed(n))],
            ))
        }
        "orbits" => {
            let w = WeylGroup::build(n).map_err(err)?;
            let mut checks = Vec::new();
            for i in 0..=n {
                for p in (i % 2..=i).step_by(2) {
                    let data = stabilizer_and_cosets(&w, i, p).map_err(err)?;
                    checks.push(ok(
                        &format!("orbit size at (i,p)=({i},{p})"),
                        data.d_reps.len() as u64 == orbit_size_formula(n, i, p),
                    ));
                    checks.push(ok(
                        &format!("|A|·|L|·|D| = |W| at (i,p)=({i},{p})"),
                        (data.a_elements.len() * data.l_elements.len() * data.d_reps.len()) as u64
                            == weyl_order(n),
                    ));
                }
            }
            Ok(checks_json(suite, &checks))
        }
        "filtration" => {
            let w = WeylGroup::build(n).map_err(err)?;
            let basis = normal_form_basis(&w).map_err(err)?;
            let report = check_filtration(&basis).map_err(err)?;
            Ok(checks_json(suite, &report.checks))
        }
        "parabolic" => {
            let mut checks = Vec::new();
            for j in 0..n {
                // A single node generates a rank-3 algebra of type A_1 or C_1.
                let single = parabolic_rank(n, &[j]).map_err(err)?;
                checks.push(ok(&format!("single-node closure at node {j}"), single == 3));
            }
            if n <= 3 {
                let tl = tl_subalgebra(n).map_err(err)?;
                checks.push(ok(
                    "hook closure equals symmetric planar closure",
                    tl.closure_size == tl.symmetric_planar_size,
                ));
            }
            Ok(checks_json(suite, &checks))
        }
        "uvw" => {
            let strands = (2 * n).min(6);
            let mut all_ok = true;
            for d in enumerate_diagrams(strands).map_err(err)? {
                let a = Monomial::from_diagram(d.clone());
                let dec = decompose(&a, None).map_err(err)?;
                let rec = dec.recompose().map_err(err)?;
                all_ok &= rec == Monomial::new(dec.k, d)
                    && a.height() == dec.u.height() + dec.v.height() + dec.w.height();
            }
            Ok(checks_json(
                suite,
                &[ok(&format!("decompose/recompose on {strands} strands"), all_ok)],
            ))
        }
        "actions" => {
            let strands = (2 * n).min(6);
            let mut all_ok = true;
            let sets: std::collections::HashSet<_> = enumerate_diagrams(strands)
                .map_err(err)?
                .map(|d| top_set(&Monomial::from_diagram(d)))
                .collect();
            for b in &sets {
                for i in 1..strands {
                    for tok in [TokenA::R(i), TokenA::E(i)] {
                        let fast = act_token(&tok, b);
                        let slow = act_monomial(&token_monomial_a(&tok, strands).map_err(err)?, b)
                            .map_err(err)?;
                        all_ok &= fast == slow;
                    }
                }
            }
            Ok(checks_json(
                suite,
                &[ok(&format!("set action cross-check on {strands} strands"), all_ok)],
            ))
        }
        other => Err(format!("unknown suite `{other}`")),
    }
}

const ALL_SUITES: [&str; 8] = [
    "relations",
    "counting",
    "normalform",
    "orbits",
    "filtration",
    "parabolic",
    "uvw",
    "actions",
];

fn run(cli: &Cli) -> Result<(Value, bool), String> {
    let err = |e: brauer::Error| e.to_string();
    match &cli.command {
        Command::Eval { algebra, n, word } => {
            let m = match algebra {
                AlgebraType::A => evaluate_word(&parse_word_a(word).map_err(err)?, *n).map_err(err)?,
                AlgebraType::C => eval_c(&parse_word_c(word).map_err(err)?, *n).map_err(err)?,
            };
            Ok((serde_json::to_value(&m).unwrap(), true))
        }
        Command::Mul { algebra, n, word } => {
            let mut acc: Option<Monomial> = None;
            for w in word {
                let m = match algebra {
                    AlgebraType::A => evaluate_word(&parse_word_a(w).map_err(err)?, *n).map_err(err)?,
                    AlgebraType::C => eval_c(&parse_word_c(w).map_err(err)?, *n).map_err(err)?,
                };
                acc = Some(match acc {
                    None => m,
                    Some(prev) => prev.multiply(&m).map_err(err)?,
                });
            }
            let result = acc.ok_or("at least one --word is required")?;
            Ok((serde_json::to_value(&result).unwrap(), true))
        }
        Command::Phi { n, word } => {
            let image = phi_word(&parse_word_c(word).map_err(err)?, *n).map_err(err)?;
            Ok((serde_json::to_value(&image).unwrap(), true))
        }
        Command::Count { algebra, n } => {
            let a = match algebra {
                AlgebraType::A => double_factorial_rank(*n),
                AlgebraType::C => count_closed(*n),
            };
            Ok((json!({ "a": a }), true))
        }
        Command::Basis { n } => {
            let w = WeylGroup::build(*n).map_err(err)?;
            let basis = normal_form_basis(&w).map_err(err)?;
            let entries: Vec<Value> = basis
                .entries()
                .iter()
                .map(|(nf, m)| {
                    json!({
                        "form": serde_json::to_value(nf).unwrap(),
                        "monomial": serde_json::to_value(m).unwrap(),
                    })
                })
                .collect();
            Ok((json!({ "n": n, "count": entries.len(), "entries": entries }), true))
        }
        Command::Orbit { n, i, p } => {
            let w = WeylGroup::build(*n).map_err(err)?;
            let data = stabilizer_and_cosets(&w, *i, *p).map_err(err)?;
            let kg = k_group(2 * n, &b_set(*n, *i).map_err(err)?).map_err(err)?;
            Ok((
                json!({
                    "n": n, "i": i, "p": p,
                    "orbit_size": data.d_reps.len(),
                    "orbit_size_formula": orbit_size_formula(*n, *i, *p),
                    "stabilizer_a_order": data.a_elements.len(),
                    "stabilizer_l_order": data.l_elements.len(),
                    "k_group_order": kg.elements.len(),
                    "orbit": data.orbit.iter().map(|s| serde_json::to_value(s).unwrap()).collect::<Vec<_>>(),
                    "representatives": data.d_reps.iter().map(|u| serde_json::to_value(&u.word).unwrap()).collect::<Vec<_>>(),
                }),
                true,
            ))
        }
        Command::Decompose { n, word } => {
            let a = evaluate_word(&parse_word_a(word).map_err(err)?, *n).map_err(err)?;
            let dec = decompose(&a, None).map_err(err)?;
            Ok((
                json!({
                    "k": dec.k,
                    "u": serde_json::to_value(&dec.u).unwrap(),
                    "v": serde_json::to_value(&dec.v).unwrap(),
                    "w": serde_json::to_value(&dec.w).unwrap(),
                    "b": serde_json::to_value(&dec.b).unwrap(),
                }),
                true,
            ))
        }
        Command::Verify { suite, all, n } => {
            let suites: Vec<&str> = if *all {
                ALL_SUITES.to_vec()
            } else {
                vec![suite.as_deref().ok_or("pass --suite <name> or --all")?]
            };
            use rayon::prelude::*;
            let reports: Vec<Result<Value, String>> =
                suites.par_iter().map(|s| run_suite(s, *n)).collect();
            let reports = reports.into_iter().collect::<Result<Vec<_>, _>>()?;
            let passed = reports
                .iter()
                .all(|r| r["passed"].as_bool().unwrap_or(false));
            Ok((json!({ "n": n, "passed": passed, "suites": reports }), passed))
        }
        Command::Cell { n } => {
            let w = WeylGroup::build(*n).map_err(err)?;
            let datum = build_cell_datum(&w).map_err(err)?;
            let layers: Vec<Value> = datum
                .layers
                .iter()
                .map(|layer| {
                    let triples: Vec<Value> = layer
                        .triples
                        .iter()
                        .map(|t| {
                            json!({
                                "u_word": serde_json::to_value(&t.u.word).unwrap(),
                                "p": t.p,
                                "s_word": serde_json::to_value(&t.s.word).unwrap(),
                            })
                        })
                        .collect();
                    let mut images = std::collections::BTreeSet::new();
                    for x in &layer.triples {
                        for y in &layer.triples {
                            if let Ok(m) = datum.c(layer.i, x, y) {
                                images.insert(m.diagram);
                            }
                        }
                    }
                    json!({
                        "i": layer.i,
                        "triples": triples,
                        "images": images.iter().map(|d| serde_json::to_value(d).unwrap()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok((json!({ "n": n, "layers": layers }), true))
        }
        Command::Parabolic { n, nodes } => {
            let parsed: Vec<usize> = nodes
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<usize>().map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            let rank = parabolic_rank(*n, &parsed).map_err(err)?;
            Ok((json!({ "n": n, "nodes": parsed, "rank": rank }), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((value, passed)) => {
            let text = serde_json::to_string_pretty(&value).unwrap();
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, text + "\n") {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
                None => println!("{text}"),
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
