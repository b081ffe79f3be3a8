//! Exhaustive checks behind `rectchar verify` and the acceptance suite.
//!
//! Each check runs over a fixed parameter grid, reports its elapsed time,
//! and on failure carries the first failing parameter set.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::character::normalized_character;
use crate::error::Result;
use crate::frobenius::{expected_special_value, f_k_polynomial, f_k_special_value, flip, frobenius_normalized, integrality_witness};
use crate::interp::{conjecture1_check_with, f_mu_interpolate_with, InterpCaps, FIDELITY_SAMPLES};
use crate::leading::{
    catalan, elizalde_compare, g_k_leading, g_k_via_lagrange, gk_generating_check, narayana, narayana_check,
    s_k_from_coefficient_sums, s_k_from_series, BinomialConvention,
};
use crate::partition::Partition;
use crate::permutation::DEFAULT_ENUMERATION_CAP;
use crate::rect::{catalan_pair_count, eval_bivariate, factorization_poly, narayana_refinement, sss_identity_check};
use crate::schur::{lemma_sweep, sq_hook_check};
use crate::series::IntPoly;

/// `(-1)^k F_k(a, p; -b, -q)` for two rectangles, `a = p_1`, `p = p_2`,
/// `b = q_1`, `q = q_2`, in the order produced by [`render_two_rectangle`].
pub const TWO_RECTANGLE_GOLDEN: [&str; 4] = [
    "ab+pq",
    "a^2b+ab^2+2apq+p^2q+pq^2",
    "a^3b+3a^2b^2+3a^2pq+ab^3+3abpq+3ap^2q+3apq^2+p^3q+3p^2q^2+pq^3+ab+pq",
    "a^4b+6a^3b^2+4a^3pq+6a^2b^3+12a^2bpq+6a^2p^2q+6a^2pq^2+ab^4+4ab^2pq+4abp^2q+4abpq^2+4ap^3q\
     +14ap^2q^2+4apq^3+p^4q+6p^3q^2+6p^2q^3+pq^4+5a^2b+5ab^2+10apq+5p^2q+5pq^2",
];

/// Compact rendering with letters `a, p, b, q` and ties broken in the
/// variable order `a, b, p, q`.
pub fn render_two_rectangle(poly: &IntPoly) -> String {
    let names: Vec<String> = ["a", "p", "b", "q"].iter().map(|s| s.to_string()).collect();
    poly.render_with(&names, &[0, 2, 1, 3], true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

impl Level {
    fn pick<T>(self, quick: T, full: T) -> T {
        match self {
            Level::Quick => quick,
            Level::Full => full,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub criterion: usize,
    pub name: String,
    pub params: Value,
    pub passed: bool,
    pub elapsed_secs: f64,
    pub detail: String,
    /// First failing parameter set, reproducible with the same command.
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub level: Level,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

/// What a check body hands back: a one-line summary and, on failure, the
/// failing parameters.
struct Finding {
    detail: String,
    counterexample: Option<Value>,
}

impl Finding {
    fn pass(detail: impl Into<String>) -> Self {
        Finding { detail: detail.into(), counterexample: None }
    }

    fn fail(detail: impl Into<String>, counterexample: Value) -> Self {
        Finding { detail: detail.into(), counterexample: Some(counterexample) }
    }
}

pub const CRITERIA: usize = 12;

pub fn check_name(criterion: usize) -> &'static str {
    match criterion {
        1 => "rectangle character equals factorization polynomial",
        2 => "rectangle hook lemma",
        3 => "SQ hook multiset and product",
        4 => "two-rectangle golden polynomials",
        5 => "special value and integrality of F_k",
        6 => "Frobenius residue against Murnaghan-Nakayama",
        7 => "leading terms: Lagrange inversion and generating function",
        8 => "Catalan, Narayana and Schroeder specializations",
        9 => "factorization pairs of the long cycle",
        10 => "closed formula for leading terms",
        11 => "nonnegativity sweep for two rectangles",
        12 => "Schur-function triple identity",
        _ => "unknown",
    }
}

/// Runs one check; errors inside a check count as failures.
pub fn run_check(criterion: usize, level: Level) -> CheckOutcome {
    let (params, body): (Value, Box<dyn FnOnce() -> Result<Finding>>) = match criterion {
        1 => {
            let (side, kmax) = level.pick((4, 8), (5, 9));
            (json!({"p_max": side, "q_max": side, "k_max": kmax}), Box::new(move || theorem1(side, kmax)))
        }
        2 => {
            let side = level.pick(5, 6);
            (json!({"p_max": side, "q_max": side}), Box::new(move || lemma(side)))
        }
        3 => {
            let side = level.pick(5, 6);
            (json!({"p_max": side, "q_max": side}), Box::new(move || sq_hooks(side)))
        }
        4 => (json!({"m": 2, "k_max": 4}), Box::new(golden)),
        5 => {
            let (mmax, kmax) = level.pick((4, 8), (4, 9));
            (json!({"m_max": mmax, "k_max": kmax}), Box::new(move || special_values(mmax, kmax)))
        }
        6 => {
            let nmax = level.pick(14, 16);
            (json!({"n_max": nmax}), Box::new(move || frobenius(nmax)))
        }
        7 => {
            let kmax = level.pick(4, 5);
            (json!({"m_max": 3, "k_max": kmax}), Box::new(move || leading(3, kmax)))
        }
        8 => {
            let (k1, k2) = level.pick((10, 8), (12, 10));
            (json!({"catalan_k_max": k1, "narayana_k_max": k1, "schroeder_k_max": k2}), Box::new(move || specializations(k1, k2)))
        }
        9 => {
            let (kc, kn) = level.pick((8, 7), (9, 8));
            (json!({"catalan_k_max": kc, "narayana_k_max": kn}), Box::new(move || pairs(kc, kn)))
        }
        10 => {
            let kmax = level.pick(5, 6);
            (json!({"m_max": 3, "k_max": kmax}), Box::new(move || closed_formula(3, kmax)))
        }
        11 => {
            let kmax = level.pick(4, 5);
            (json!({"m": 2, "k_max": kmax, "fidelity_samples": FIDELITY_SAMPLES}), Box::new(move || conjecture(kmax)))
        }
        12 => {
            let (kmax, side) = level.pick((6, 4), (7, 5));
            (json!({"k_max": kmax, "p_max": side, "q_max": side}), Box::new(move || sss(kmax, side)))
        }
        _ => (json!({}), Box::new(move || Ok(Finding::fail("no such criterion", json!({"criterion": criterion}))))),
    };
    let start = Instant::now();
    let finding = body().unwrap_or_else(|e| Finding::fail(format!("error: {e}"), json!({"error": e.to_string()})));
    CheckOutcome {
        criterion,
        name: check_name(criterion).to_string(),
        params,
        passed: finding.counterexample.is_none(),
        elapsed_secs: start.elapsed().as_secs_f64(),
        detail: finding.detail,
        counterexample: finding.counterexample,
    }
}

pub fn run_all(level: Level) -> VerifyReport {
    let checks: Vec<CheckOutcome> = (1..=CRITERIA).map(|c| run_check(c, level)).collect();
    VerifyReport { level, passed: checks.iter().all(|c| c.passed), checks }
}

fn theorem1(side: usize, kmax: usize) -> Result<Finding> {
    let mus: Vec<Partition> = (1..=kmax).flat_map(Partition::all).collect();
    let polys: Vec<IntPoly> =
        mus.par_iter().map(|mu| factorization_poly(mu, DEFAULT_ENUMERATION_CAP)).collect::<Result<_>>()?;
    let mut cases = 0;
    for rows in 1..=side {
        for cols in 1..=side {
            let shape = Partition::rectangle(rows, cols);
            for (mu, poly) in mus.iter().zip(&polys).filter(|(mu, _)| mu.size() <= rows * cols) {
                let lhs = normalized_character(&shape, mu)?;
                let rhs = eval_bivariate(poly, rows as i64, cols as i64);
                if lhs != BigRational::from_integer(rhs.clone()) {
                    return Ok(Finding::fail(
                        format!("mismatch at p={rows}, q={cols}, mu={mu}"),
                        json!({"p": rows, "q": cols, "mu": mu.to_string(), "character": lhs.to_string(), "polynomial": rhs.to_string()}),
                    ));
                }
                cases += 1;
            }
        }
    }
    Ok(Finding::pass(format!("{cases} (p, q, mu) cases")))
}

fn lemma(side: usize) -> Result<Finding> {
    let mut total = 0;
    for rows in 1..=side {
        for cols in 1..=side {
            match lemma_sweep(rows, cols) {
                Ok(n) => total += n,
                Err(shape) => {
                    return Ok(Finding::fail(
                        format!("lemma fails for {shape} in {rows}x{cols}"),
                        json!({"p": rows, "q": cols, "lambda": shape.to_string()}),
                    ))
                }
            }
        }
    }
    Ok(Finding::pass(format!("{total} shapes")))
}

fn sq_hooks(side: usize) -> Result<Finding> {
    let mut total = 0;
    for rows in 1..=side {
        for cols in 1..=side {
            for shape in Partition::all_in_box(rows, cols) {
                let c = sq_hook_check(&shape, rows, cols)?;
                if !(c.multiset && c.product) {
                    return Ok(Finding::fail(
                        format!("SQ({shape}) in {rows}x{cols}: multiset {}, product {}", c.multiset, c.product),
                        json!({"p": rows, "q": cols, "lambda": shape.to_string()}),
                    ));
                }
                total += 1;
            }
        }
    }
    Ok(Finding::pass(format!("{total} shapes")))
}

fn golden() -> Result<Finding> {
    for (idx, expected) in TWO_RECTANGLE_GOLDEN.iter().enumerate() {
        let k = idx + 1;
        let got = render_two_rectangle(&flip(&f_k_polynomial(2, k)?, 2, k));
        if got != *expected {
            return Ok(Finding::fail(format!("F_{k} differs"), json!({"k": k, "expected": expected, "got": got})));
        }
    }
    Ok(Finding::pass("F_1..F_4 verbatim"))
}

fn special_values(mmax: usize, kmax: usize) -> Result<Finding> {
    let grid: Vec<(usize, usize)> = (1..=mmax).flat_map(|m| (1..=kmax).map(move |k| (m, k))).collect();
    let failures: Vec<Value> = grid
        .par_iter()
        .map(|&(m, k)| -> Result<Option<Value>> {
            let value = f_k_special_value(m, k)?;
            let expected = expected_special_value(m, k);
            let integral = integrality_witness(m, k);
            Ok((value != expected || !integral).then(|| {
                json!({"m": m, "k": k, "value": value.to_string(), "expected": expected.to_string(), "divisible": integral})
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(match failures.into_iter().next() {
        None => Finding::pass(format!("{} (m, k) pairs", grid.len())),
        Some(c) => Finding::fail("special value or divisibility fails", c),
    })
}

fn frobenius(nmax: usize) -> Result<Finding> {
    let shapes: Vec<Partition> = (1..=nmax).flat_map(Partition::all).collect();
    let failures: Vec<Value> = shapes
        .par_iter()
        .map(|shape| -> Result<Option<Value>> {
            for k in 1..=shape.size() {
                let mu = Partition::new(vec![k])?;
                let residue = frobenius_normalized(shape, k)?;
                let direct = normalized_character(shape, &mu)?;
                if residue != direct {
                    return Ok(Some(json!({"lambda": shape.to_string(), "k": k,
                        "residue": residue.to_string(), "character": direct.to_string()})));
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(match failures.into_iter().next() {
        None => Finding::pass(format!("{} shapes, every k", shapes.len())),
        Some(c) => Finding::fail("residue and character disagree", c),
    })
}

fn leading(mmax: usize, kmax: usize) -> Result<Finding> {
    for m in 1..=mmax {
        for k in 1..=kmax {
            if g_k_leading(m, k)? != g_k_via_lagrange(m, k)? {
                return Ok(Finding::fail(format!("Lagrange route differs at m={m}, k={k}"), json!({"m": m, "k": k})));
            }
        }
        if !gk_generating_check(m, kmax)? {
            return Ok(Finding::fail(
                format!("generating function differs for m={m}"),
                json!({"m": m, "k_max": kmax}),
            ));
        }
    }
    Ok(Finding::pass("both routes agree"))
}

fn specializations(k1: usize, k2: usize) -> Result<Finding> {
    // C_{j+1} = Σ C_i C_{j-i}
    let mut rec = vec![BigInt::from(1)];
    for j in 1..=k1 {
        let next = (0..j).map(|i| &rec[i] * &rec[j - 1 - i]).sum();
        rec.push(next);
    }
    let s1 = s_k_from_coefficient_sums(1, k1)?;
    if s1 != rec[1..] {
        return Ok(Finding::fail("m=1 sums are not Catalan", json!({"m": 1, "got": to_strings(&s1)})));
    }
    if !narayana_check(k1)? {
        return Ok(Finding::fail("Narayana form fails", json!({"k_max": k1})));
    }
    let sums = s_k_from_coefficient_sums(2, k2)?;
    let series = s_k_from_series(2, k2)?;
    if sums != series {
        return Ok(Finding::fail(
            "m=2 routes differ",
            json!({"m": 2, "coefficient_sums": to_strings(&sums), "series": to_strings(&series)}),
        ));
    }
    Ok(Finding::pass(format!("m=2: {}", to_strings(&sums).join(", "))))
}

fn to_strings(xs: &[BigInt]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn pairs(kc: usize, kn: usize) -> Result<Finding> {
    for k in 1..=kc {
        let count = catalan_pair_count(k, DEFAULT_ENUMERATION_CAP)?;
        if count != catalan(k) {
            return Ok(Finding::fail(
                format!("pair count at k={k}"),
                json!({"k": k, "count": count.to_string(), "catalan": catalan(k).to_string()}),
            ));
        }
    }
    for k in 1..=kn {
        let refinement = narayana_refinement(k, DEFAULT_ENUMERATION_CAP)?;
        for i in 1..=k {
            let got = refinement.get(&i).copied().unwrap_or(0);
            if BigInt::from(got) != narayana(k, i) {
                return Ok(Finding::fail(format!("refinement at k={k}, i={i}"), json!({"k": k, "i": i, "count": got})));
            }
        }
    }
    Ok(Finding::pass("pair counts match"))
}

fn closed_formula(mmax: usize, kmax: usize) -> Result<Finding> {
    for m in 1..=mmax {
        for k in 1..=kmax {
            let cmp = elizalde_compare(m, k, BinomialConvention::Extended)?;
            if !cmp.matches {
                return Ok(Finding::fail(
                    format!("closed formula differs at m={m}, k={k} ({} monomials)", cmp.mismatches.len()),
                    serde_json::to_value(&cmp).unwrap_or(Value::Null),
                ));
            }
        }
    }
    Ok(Finding::pass("matches with C(-1, 0) = 1"))
}

fn conjecture(kmax: usize) -> Result<Finding> {
    let caps = InterpCaps { max_m: 2, max_k: kmax };
    let mut checked = 0;
    for k in 1..=kmax {
        for mu in Partition::all(k) {
            let report = conjecture1_check_with(2, &mu, &caps, FIDELITY_SAMPLES)?;
            if !report.passed() {
                return Ok(Finding::fail(
                    format!("mu={mu} fails"),
                    serde_json::to_value(&report).unwrap_or(Value::Null),
                ));
            }
            checked += 1;
        }
        if k <= TWO_RECTANGLE_GOLDEN.len() {
            let single = f_mu_interpolate_with(2, &Partition::new(vec![k])?, &caps)?;
            let got = render_two_rectangle(&flip(&single, 2, k));
            if got != TWO_RECTANGLE_GOLDEN[k - 1] {
                return Ok(Finding::fail(format!("interpolated F_{k} differs"), json!({"k": k, "got": got})));
            }
        }
    }
    Ok(Finding::pass(format!("{checked} cycle types")))
}

fn sss(kmax: usize, side: i64) -> Result<Finding> {
    let mus: Vec<Partition> = (1..=kmax).flat_map(Partition::all).collect();
    let failures: Vec<Value> = mus
        .par_iter()
        .map(|mu| -> Result<Option<Value>> {
            for p in 1..=side {
                for q in 1..=side {
                    if !sss_identity_check(p, q, mu, DEFAULT_ENUMERATION_CAP)? {
                        return Ok(Some(json!({"mu": mu.to_string(), "p": p, "q": q})));
                    }
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(match failures.into_iter().next() {
        None => Finding::pass(format!("{} cycle types", mus.len())),
        Some(c) => Finding::fail("identity fails", c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_parses_and_renders_back() {
        for (k, text) in TWO_RECTANGLE_GOLDEN.iter().enumerate() {
            let poly = IntPoly::parse(text, &['a', 'p', 'b', 'q']).unwrap();
            assert_eq!(render_two_rectangle(&poly), *text, "F_{}", k + 1);
        }
    }

    #[test]
    fn unknown_criterion_fails() {
        let out = run_check(99, Level::Quick);
        assert!(!out.passed);
        assert!(out.counterexample.is_some());
    }

    #[test]
    fn cheap_checks_pass() {
        for c in [2, 4, 7] {
            let out = run_check(c, Level::Quick);
            assert!(out.passed, "{out:?}");
        }
    }
}
