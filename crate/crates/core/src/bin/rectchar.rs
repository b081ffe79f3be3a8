use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use rectchar::character::{mn_character, normalized_character};
use rectchar::frobenius::{f_k_polynomial, flip};
use rectchar::interp::{conjecture1_check_with, InterpCaps, FIDELITY_SAMPLES};
use rectchar::leading::{
    catalan, elizalde_compare, elizalde_formula, g_k_leading, narayana, narayana_check, s_k_from_coefficient_sums,
    s_k_from_series, BinomialConvention,
};
use rectchar::partition::multiset_union;
use rectchar::permutation::DEFAULT_ENUMERATION_CAP;
use rectchar::rect::{catalan_pair_count, eval_bivariate, factorization_poly, narayana_refinement, theorem1_check};
use rectchar::schur::{lemma_check, lemma_sweep, sq_hook_check};
use rectchar::series::rectangle_var_names;
use rectchar::verify::{run_all, run_check, Level, VerifyReport};
use rectchar::{Error, IntPoly, Partition};

#[derive(Parser)]
#[command(name = "rectchar", version, about = "Exact characters of rectangular and multi-rectangular shapes")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

/// A shape given either as a partition or as a `p×q` rectangle.
#[derive(Args)]
struct ShapeArgs {
    /// Partition such as 4,3,1.
    #[arg(long, conflicts_with_all = ["p", "q"])]
    shape: Option<Partition>,
    /// Number of rows of a rectangle.
    #[arg(long, requires = "q")]
    p: Option<usize>,
    /// Row length of a rectangle.
    #[arg(long, requires = "p")]
    q: Option<usize>,
}

impl ShapeArgs {
    fn resolve(&self) -> Result<Partition, Error> {
        match (&self.shape, self.p, self.q) {
            (Some(s), _, _) => Ok(s.clone()),
            (None, Some(p), Some(q)) => Ok(Partition::rectangle(p, q)),
            _ => Err(Error::InvalidShape("give --shape or both --p and --q".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Irreducible character value χ^λ(μ); μ is padded with fixed points.
    Chi {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Cycle type.
        #[arg(long = "type")]
        cycle_type: Partition,
    },
    /// Normalized character (n)_k χ^λ(μ, 1^{n-k}) / f^λ.
    Normalized {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        mu: Partition,
    },
    /// Factorization polynomial of μ, or its check against a p×q rectangle.
    Theorem1 {
        #[arg(long)]
        mu: Partition,
        #[arg(long, requires = "q")]
        p: Option<usize>,
        #[arg(long, requires = "p")]
        q: Option<usize>,
        /// Print the polynomial in p and q.
        #[arg(long)]
        poly: bool,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Hook lemma for λ inside p×q, or for every λ when --lambda is absent.
    Lemma {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        lambda: Option<Partition>,
    },
    /// Hook lengths of SQ(λ) and the two hook identities.
    Hooks {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        lambda: Partition,
    },
    /// Single-cycle polynomial F_k for m rectangles.
    Fk {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        /// Apply (-1)^k and q_i -> -q_i.
        #[arg(long)]
        flip: bool,
    },
    /// Leading terms G_k (total degree k+1) of F_k.
    Gk {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        flip: bool,
    },
    /// Coefficient sums S_1..S_kmax of the flipped leading terms.
    Sk {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        kmax: usize,
    },
    /// Narayana numbers N(k, i), checked against the one-rectangle leading terms.
    Narayana {
        #[arg(long)]
        kmax: usize,
    },
    /// Closed formula for the flipped leading terms, compared with G_k.
    Elizalde {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
    },
    /// Pairs (u, v) with uv = (1 2 ... k) and κ(u) + κ(v) = k + 1.
    CatalanPairs {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Interpolate F_μ for m rectangles and test nonnegativity of its flip.
    Conjecture {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        mu: Partition,
        #[arg(long, default_value_t = InterpCaps::default().max_m)]
        max_m: usize,
        #[arg(long, default_value_t = InterpCaps::default().max_k)]
        max_k: usize,
        /// Off-grid shapes used to test the interpolant.
        #[arg(long, default_value_t = FIDELITY_SAMPLES)]
        samples: usize,
    },
    /// Run the exhaustive checks.
    Verify {
        #[arg(long, conflicts_with = "full")]
        quick: bool,
        /// Extend every parameter grid one step.
        #[arg(long)]
        full: bool,
        /// Run only these criteria (1-12).
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

/// Text and JSON forms of one result, plus whether its check passed.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, ok: true }
    }

    fn check(text: impl Into<String>, json: Value, ok: bool) -> Self {
        Output { text: text.into(), json, ok }
    }
}

fn poly_json(poly: &IntPoly, names: &[String]) -> Value {
    serde_json::to_value(poly.to_document(names)).expect("serializable")
}

fn padded(mu: &Partition, n: usize) -> Result<Partition, Error> {
    if mu.size() > n {
        return Err(Error::SizeMismatch(format!("|μ| = {} exceeds n = {n}", mu.size())));
    }
    Ok(mu.with_ones(n - mu.size()))
}

fn run(command: Command) -> Result<Output, Error> {
    match command {
        Command::Chi { shape, cycle_type } => {
            let shape = shape.resolve()?;
            let mu = padded(&cycle_type, shape.size())?;
            let value = mn_character(&shape, &mu)?;
            Ok(Output::ok(
                value.to_string(),
                json!({"shape": shape.to_string(), "type": mu.to_string(), "value": value.to_string()}),
            ))
        }
        Command::Normalized { shape, mu } => {
            let shape = shape.resolve()?;
            let value = normalized_character(&shape, &mu)?;
            Ok(Output::ok(
                value.to_string(),
                json!({"shape": shape.to_string(), "mu": mu.to_string(), "value": value.to_string()}),
            ))
        }
        Command::Theorem1 { mu, p, q, poly, cap } => {
            let f = factorization_poly(&mu, cap)?;
            let names = rectangle_var_names(1);
            match (p, q) {
                (Some(p), Some(q)) => {
                    let ok = theorem1_check(p, q, &mu, cap)?;
                    let character = normalized_character(&Partition::rectangle(p, q), &mu)?;
                    let value = eval_bivariate(&f, p as i64, q as i64);
                    let mut text = format!("character {character}, polynomial {value}: {}", if ok { "equal" } else { "DIFFERENT" });
                    if poly {
                        text = format!("{}\n{text}", f.render(&names));
                    }
                    Ok(Output::check(
                        text,
                        json!({"mu": mu.to_string(), "p": p, "q": q, "character": character.to_string(),
                            "polynomial_value": value.to_string(), "equal": ok, "polynomial": poly_json(&f, &names)}),
                        ok,
                    ))
                }
                _ => Ok(Output::ok(f.render(&names), json!({"mu": mu.to_string(), "polynomial": poly_json(&f, &names)}))),
            }
        }
        Command::Lemma { p, q, lambda } => match lambda {
            Some(lambda) => {
                let ok = lemma_check(&lambda, p, q)?;
                Ok(Output::check(
                    if ok { "holds" } else { "FAILS" },
                    json!({"p": p, "q": q, "lambda": lambda.to_string(), "holds": ok}),
                    ok,
                ))
            }
            None => match lemma_sweep(p, q) {
                Ok(n) => Ok(Output::ok(format!("holds for all {n} shapes"), json!({"p": p, "q": q, "shapes": n, "holds": true}))),
                Err(bad) => Ok(Output::check(
                    format!("FAILS at {bad}"),
                    json!({"p": p, "q": q, "holds": false, "counterexample": bad.to_string()}),
                    false,
                )),
            },
        },
        Command::Hooks { p, q, lambda } => {
            let sq = lambda.sq_shape(p, q)?;
            let hooks = sq.hooks();
            let expected = multiset_union(&Partition::rectangle(p, q).hook_lengths(), &lambda.hook_lengths());
            let check = sq_hook_check(&lambda, p, q)?;
            let ok = check.multiset && check.product;
            let list = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            Ok(Output::check(
                format!(
                    "SQ({lambda}) has {} cells\nhooks: {}\nmultiset identity: {}\nproduct identity: {}",
                    sq.len(),
                    list(&hooks),
                    check.multiset,
                    check.product
                ),
                json!({"p": p, "q": q, "lambda": lambda.to_string(), "cells": sq.len(), "hooks": hooks,
                    "expected_hooks": expected, "multiset": check.multiset, "product": check.product}),
                ok,
            ))
        }
        Command::Fk { m, k, flip: flipped } => {
            let mut f = f_k_polynomial(m, k)?;
            if flipped {
                f = flip(&f, m, k);
            }
            let names = rectangle_var_names(m);
            Ok(Output::ok(f.render(&names), json!({"m": m, "k": k, "flipped": flipped, "polynomial": poly_json(&f, &names)})))
        }
        Command::Gk { m, k, flip: flipped } => {
            let mut g = g_k_leading(m, k)?;
            if flipped {
                g = flip(&g, m, k);
            }
            let names = rectangle_var_names(m);
            Ok(Output::ok(g.render(&names), json!({"m": m, "k": k, "flipped": flipped, "polynomial": poly_json(&g, &names)})))
        }
        Command::Sk { m, kmax } => {
            let sums = s_k_from_coefficient_sums(m, kmax)?;
            let series = s_k_from_series(m, kmax)?;
            let ok = sums == series;
            let strs = |xs: &[BigInt]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
            let mut text = strs(&sums).join(", ");
            if !ok {
                text.push_str(&format!("\nseries route disagrees: {}", strs(&series).join(", ")));
            }
            Ok(Output::check(
                text,
                json!({"m": m, "kmax": kmax, "values": strs(&sums), "series_values": strs(&series), "agree": ok}),
                ok,
            ))
        }
        Command::Narayana { kmax } => {
            let ok = narayana_check(kmax)?;
            let rows: Vec<Vec<String>> =
                (1..=kmax).map(|k| (1..=k).map(|i| narayana(k, i).to_string()).collect()).collect();
            let mut text: Vec<String> = rows.iter().enumerate().map(|(k, r)| format!("k={}: {}", k + 1, r.join(" "))).collect();
            text.push(format!("matches leading terms: {ok}"));
            Ok(Output::check(text.join("\n"), json!({"kmax": kmax, "rows": rows, "matches_leading_terms": ok}), ok))
        }
        Command::Elizalde { m, k } => {
            let f = elizalde_formula(m, k)?;
            let cmp = elizalde_compare(m, k, BinomialConvention::Extended)?;
            let names = rectangle_var_names(m);
            let mut text = f.render(&names);
            text.push_str(&format!("\nmatches leading terms: {}", cmp.matches));
            for (e, got, want) in &cmp.mismatches {
                text.push_str(&format!("\n  {e:?}: formula {got}, leading terms {want}"));
            }
            Ok(Output::check(
                text,
                json!({"m": m, "k": k, "polynomial": poly_json(&f, &names), "comparison": cmp}),
                cmp.matches,
            ))
        }
        Command::CatalanPairs { k, cap } => {
            let count = catalan_pair_count(k, cap)?;
            let refinement = narayana_refinement(k, cap)?;
            let ok = count == catalan(k);
            let by_cycles: Vec<String> = refinement.iter().map(|(i, n)| format!("{i}:{n}")).collect();
            Ok(Output::check(
                format!("{count} (Catalan {}), by κ(u): {}", catalan(k), by_cycles.join(" ")),
                json!({"k": k, "count": count.to_string(), "catalan": catalan(k).to_string(),
                    "by_cycle_count": refinement}),
                ok,
            ))
        }
        Command::Conjecture { m, mu, max_m, max_k, samples } => {
            let caps = InterpCaps { max_m, max_k };
            let report = conjecture1_check_with(m, &mu, &caps, samples)?;
            let ok = report.passed();
            let text = format!(
                "flipped F_{mu}: {}\ninteger coefficients: {}\nnonnegative: {}\ncoefficient sum: {} (expected {})\noff-grid mismatches: {}/{}",
                report.flipped_text,
                report.integer_coefficients,
                report.nonnegative,
                report.coefficient_sum,
                report.expected_sum,
                report.fidelity_failures.len(),
                report.fidelity_samples
            );
            Ok(Output::check(text, serde_json::to_value(&report).expect("serializable"), ok))
        }
        Command::Verify { quick: _, full, only } => {
            let level = if full { Level::Full } else { Level::Quick };
            let report = if only.is_empty() {
                run_all(level)
            } else {
                let checks: Vec<_> = only.iter().map(|&c| run_check(c, level)).collect();
                VerifyReport { level, passed: checks.iter().all(|c| c.passed), checks }
            };
            let lines: Vec<String> = report
                .checks
                .iter()
                .map(|c| {
                    let mut line = format!(
                        "{:>2} {} {} ({:.2}s): {}",
                        c.criterion,
                        if c.passed { "PASS" } else { "FAIL" },
                        c.name,
                        c.elapsed_secs,
                        c.detail
                    );
                    if let Some(cx) = &c.counterexample {
                        line.push_str(&format!("\n   counterexample: {cx}"));
                    }
                    line
                })
                .collect();
            let ok = report.passed;
            Ok(Output::check(lines.join("\n"), serde_json::to_value(&report).expect("serializable"), ok))
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("RECTCHAR_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                println!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({"error": e.to_string()}));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
    }
}
