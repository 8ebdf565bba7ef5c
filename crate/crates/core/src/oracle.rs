//! Independent verification by enumeration and exact rational solving.
//!
//! Nothing here goes through the Bareiss path used by [`crate::decomp`]:
//! [`exact_solve`] is plain Gauss-Jordan over `BigRational`, and
//! [`brute_force_tope_coords`] enumerates all of `{-1,0,1}^t`.

use std::collections::HashSet;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closedform::{canonical_intervals, closed_form_xbar, componentwise_xbar, singleton_xbar};
use crate::cycles::{
    check_even, distinguished_cycle, matrix_m, matrix_n, matrix_p, matrix_w, p_row, CycleDoc,
    SymmetricCycle,
};
use crate::decomp::{
    matrix_x, parse_terms, reconstruct, subtope_coords, subtope_decomposition, times_p,
    tope_coords, tope_decomposition, vertex_decomposition, xbar_of_tope, CoeffVector, Decomposition,
    TernaryCoords,
};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::sign::{Subtope, Tope};

/// Default largest `t` for `3^t` enumeration.
pub const DEFAULT_ENUM_CAP: usize = 10;

/// Default largest `t` for scopes that walk all `2^t` topes and subtopes.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 10;

/// Finds `x ∈ {-1,0,1}^t` with odd support and `x M(D) = T` by trying all
/// `3^t` candidates. Exactly one must survive.
pub fn brute_force_tope_coords(
    tope: &Tope,
    d: &SymmetricCycle,
    enum_cap: usize,
) -> Result<TernaryCoords> {
    let t = d.t();
    if t > enum_cap {
        return Err(Error::domain(format!(
            "t = {t} exceeds the enumeration cap {enum_cap}"
        )));
    }
    if tope.len() != t {
        return Err(Error::domain(format!("tope {tope} does not have length {t}")));
    }
    let m = matrix_m(d);
    let target = tope.to_ints();
    let mut found: Vec<Vec<i64>> = Vec::new();
    for_each_ternary(t, |x| {
        let support = x.iter().filter(|v| **v != 0).count();
        if support % 2 == 1 && m.left_mul(x).is_ok_and(|y| y == target) {
            found.push(x.to_vec());
        }
    });
    match found.len() {
        1 => TernaryCoords::new(found.pop().unwrap()),
        n => Err(Error::OracleContradiction(format!(
            "{n} odd-support ternary vectors reproduce {tope}"
        ))),
    }
}

/// Visits every vector of `{-1,0,1}^t` in odometer order.
pub fn for_each_ternary(t: usize, mut visit: impl FnMut(&[i64])) {
    let mut x = vec![-1i64; t];
    loop {
        visit(&x);
        let mut k = 0;
        loop {
            if k == t {
                return;
            }
            if x[k] < 1 {
                x[k] += 1;
                break;
            }
            x[k] = -1;
            k += 1;
        }
    }
}

/// Counts odd-support ternary vectors by enumeration.
pub fn count_odd_support(t: usize) -> u64 {
    let mut n = 0;
    for_each_ternary(t, |x| {
        if x.iter().filter(|v| **v != 0).count() % 2 == 1 {
            n += 1;
        }
    });
    n
}

/// Solves `y * basis = target` over the rationals by Gauss-Jordan elimination.
pub fn exact_solve(target: &[i64], basis: &IntMatrix) -> Result<Vec<BigRational>> {
    let n = basis.rows();
    if !basis.is_square() || target.len() != n {
        return Err(Error::domain("exact_solve needs a square basis and matching target"));
    }
    // Columns of the basis become equations: sum_i y_i B[i][j] = target[j].
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            let mut row: Vec<BigRational> = (0..n).map(|i| rat(basis.get(i, j))).collect();
            row.push(rat(target[j]));
            row
        })
        .collect();
    gauss_jordan(&mut a, n)?;
    Ok(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Exact inverse of a square integer matrix.
pub fn exact_inverse(basis: &IntMatrix) -> Result<Vec<Vec<BigRational>>> {
    let n = basis.rows();
    if !basis.is_square() {
        return Err(Error::domain("inverse of a non-square matrix"));
    }
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        rat(basis.get(i, j))
                    } else if j - n == i {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    gauss_jordan(&mut a, n)?;
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn gauss_jordan(a: &mut [Vec<BigRational>], n: usize) -> Result<()> {
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Singular(format!("no pivot in column {}", col + 1)))?;
        a.swap(p, col);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * p;
            }
        }
    }
    Ok(())
}

fn rational_matmul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(BigRational::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

fn to_rational(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    m.iter_rows()
        .map(|r| r.iter().map(|&v| rat(v)).collect())
        .collect()
}

/// `M(D) W(D)^{-1}` over the rationals.
pub fn m_times_w_inverse(d: &SymmetricCycle) -> Result<Vec<Vec<BigRational>>> {
    let w_inv = exact_inverse(&matrix_w(d))?;
    Ok(rational_matmul(&to_rational(&matrix_m(d)), &w_inv))
}

/// Which parts of the battery to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scope {
    pub rank: bool,
    pub topes: bool,
    pub subtopes: bool,
    pub oracle: bool,
    pub closed_form: bool,
    pub remark: bool,
}

impl Scope {
    pub const NAMES: [&'static str; 6] = ["rank", "topes", "subtopes", "oracle", "closedform", "remark"];

    pub fn all() -> Self {
        Scope {
            rank: true,
            topes: true,
            subtopes: true,
            oracle: true,
            closed_form: true,
            remark: true,
        }
    }

    pub fn none() -> Self {
        Scope {
            rank: false,
            topes: false,
            subtopes: false,
            oracle: false,
            closed_form: false,
            remark: false,
        }
    }

    /// Comma-separated scope names, or `all`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut scope = Scope::none();
        for name in s.split(',').map(str::trim).filter(|n| !n.is_empty()) {
            match name {
                "all" => scope = Scope::all(),
                "rank" => scope.rank = true,
                "topes" => scope.topes = true,
                "subtopes" => scope.subtopes = true,
                "oracle" => scope.oracle = true,
                "closedform" | "closed-form" => scope.closed_form = true,
                "remark" => scope.remark = true,
                other => {
                    return Err(Error::parse(format!(
                        "unknown scope {other:?}; expected all or one of {}",
                        Scope::NAMES.join(", ")
                    )))
                }
            }
        }
        Ok(scope)
    }
}

impl Default for Scope {
    fn default() -> Self {
        Scope::all()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub enum_cap: usize,
    pub exhaustive_cap: usize,
    /// Seed that produced the cycle, when it was sampled.
    pub seed: Option<u64>,
    /// Free-form description of where the cycle came from.
    pub source: String,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            enum_cap: DEFAULT_ENUM_CAP,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            seed: None,
            source: "supplied".to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub checked: usize,
    pub notice: Option<String>,
}

/// A failing input with both answers and the full cycle, replayable as a
/// regression test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub target: String,
    pub expected: String,
    pub actual: String,
    pub cycle: CycleDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDescriptor {
    pub source: String,
    pub distinguished: bool,
    pub seed: Option<u64>,
    pub cycle: CycleDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub t: usize,
    pub cycle: CycleDescriptor,
    pub checks: Vec<CheckResult>,
    pub topes_checked: usize,
    pub subtopes_checked: usize,
    pub failures: Vec<Counterexample>,
    pub elapsed_ms: f64,
    pub pass: bool,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "verify t={} cycle={}{}",
            self.t,
            self.cycle.source,
            self.cycle
                .seed
                .map(|s| format!(" seed={s}"))
                .unwrap_or_default()
        )?;
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            write!(f, "  [{status}] {:<11} checked={}", c.name, c.checked)?;
            if let Some(n) = &c.notice {
                write!(f, "  ({n})")?;
            }
            writeln!(f)?;
        }
        writeln!(
            f,
            "  topes checked: {}, subtopes checked: {}",
            self.topes_checked, self.subtopes_checked
        )?;
        for ce in &self.failures {
            writeln!(
                f,
                "  counterexample [{}] target={} expected={} actual={}",
                ce.check, ce.target, ce.expected, ce.actual
            )?;
        }
        write!(
            f,
            "{} in {:.1} ms",
            if self.pass { "PASS" } else { "FAIL" },
            self.elapsed_ms
        )
    }
}

/// Accumulates failures for one named check.
struct Checker<'a> {
    name: &'static str,
    cycle: &'a CycleDoc,
    failures: Vec<Counterexample>,
}

impl<'a> Checker<'a> {
    fn new(name: &'static str, cycle: &'a CycleDoc) -> Self {
        Checker {
            name,
            cycle,
            failures: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, target: &dyn fmt::Display, expected: impl fmt::Display, actual: impl fmt::Display) {
        if !ok {
            self.fail(target, expected, actual);
        }
    }

    fn fail(&mut self, target: &dyn fmt::Display, expected: impl fmt::Display, actual: impl fmt::Display) {
        self.failures.push(Counterexample {
            check: self.name.to_string(),
            target: target.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            cycle: self.cycle.clone(),
        });
    }
}

struct Outcome {
    checked: usize,
    notice: Option<String>,
    failures: Vec<Counterexample>,
}

impl Outcome {
    fn skipped(notice: String) -> Result<Outcome> {
        Err(Error::Domain(notice))
    }
}

fn vec_str(v: &[i64]) -> String {
    CoeffVector::new(v.to_vec()).to_string()
}

fn rat_vec_str(v: &[BigRational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// Runs the invariant battery on one cycle. Failures are collected into the
/// report; scopes that cannot run (odd `t`, caps exceeded) are marked skipped.
pub fn verify_suite(d: &SymmetricCycle, scope: &Scope, config: &VerifyConfig) -> VerificationReport {
    let start = Instant::now();
    let t = d.t();
    let doc = d.to_doc();
    let mut checks = Vec::new();
    let mut failures = Vec::new();
    let mut topes_checked = 0;
    let mut subtopes_checked = 0;

    let mut record = |name: &str, outcome: Result<Outcome>, failures: &mut Vec<Counterexample>| -> usize {
        match outcome {
            Ok(o) => {
                let status = if o.failures.is_empty() {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                };
                failures.extend(o.failures);
                checks.push(CheckResult {
                    name: name.to_string(),
                    status,
                    checked: o.checked,
                    notice: o.notice,
                });
                o.checked
            }
            Err(e) => {
                let notice = match e {
                    Error::Domain(msg) => msg,
                    other => other.to_string(),
                };
                checks.push(CheckResult {
                    name: name.to_string(),
                    status: CheckStatus::Skipped,
                    checked: 0,
                    notice: Some(notice),
                });
                0
            }
        }
    };

    let too_big = |what: &str| format!("t = {t} exceeds the exhaustive cap {} for {what}", config.exhaustive_cap);

    if scope.rank {
        record("rank", check_rank(d, &doc), &mut failures);
    }
    if scope.topes {
        let outcome = if t > config.exhaustive_cap {
            Outcome::skipped(too_big("topes"))
        } else {
            check_even(t).and_then(|_| check_topes(d, &doc))
        };
        topes_checked = record("topes", outcome, &mut failures);
    }
    if scope.subtopes {
        let outcome = if t > config.exhaustive_cap {
            Outcome::skipped(too_big("subtopes"))
        } else {
            check_even(t).and_then(|_| check_subtopes(d, &doc))
        };
        subtopes_checked = record("subtopes", outcome, &mut failures);
    }
    if scope.oracle {
        let outcome = if t > config.enum_cap {
            Outcome::skipped(format!("t = {t} exceeds the enumeration cap {}", config.enum_cap))
        } else {
            check_oracle(d, &doc, config.enum_cap)
        };
        record("oracle", outcome, &mut failures);
    }
    if scope.closed_form {
        let outcome = if t > config.exhaustive_cap {
            Outcome::skipped(too_big("closed forms"))
        } else {
            check_even(t).and_then(|_| check_closed_form(t))
        };
        record("closedform", outcome, &mut failures);
    }
    if scope.remark {
        let outcome = check_even(t).and_then(|_| check_remark(d, &doc));
        record("remark", outcome, &mut failures);
    }

    let pass = failures.is_empty();
    VerificationReport {
        t,
        cycle: CycleDescriptor {
            source: config.source.clone(),
            distinguished: d.is_distinguished(),
            seed: config.seed,
            cycle: doc,
        },
        checks,
        topes_checked,
        subtopes_checked,
        failures,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        pass,
    }
}

fn check_rank(d: &SymmetricCycle, doc: &CycleDoc) -> Result<Outcome> {
    let t = d.t();
    let mut c = Checker::new("rank", doc);
    let n = matrix_n(t)?;
    let m = matrix_m(d);
    let w = matrix_w(d);
    let expected = if t.is_multiple_of(2) { t } else { t - 1 };
    let rank_n = n.rank();
    let rank_w = w.rank();
    c.expect(rank_n == expected, &"rank N(t)", expected, rank_n);
    c.expect(rank_w == expected, &"rank W(D)", expected, rank_w);
    let nm = n.mul(&m)?;
    c.expect(w.scale(2) == nm, &"2W = N M", "equal", "differs");
    let det_m = m.det()?;
    c.expect(!det_m.is_zero(), &"det M(D)", "nonzero", &det_m);
    if t.is_multiple_of(2) {
        let pw = matrix_p(t)?.mul(&w)?;
        c.expect(pw == m, &"M = P W", "equal", "differs");
    }
    Ok(Outcome {
        checked: if t.is_multiple_of(2) { 5 } else { 4 },
        notice: Some(format!("rank N({t}) = {rank_n}")),
        failures: c.failures,
    })
}

fn check_one_tope(tope: &Tope, d: &SymmetricCycle, doc: &CycleDoc) -> (Vec<Counterexample>, Option<Vec<i64>>) {
    let t = d.t();
    let mut c = Checker::new("topes", doc);
    let x = match tope_coords(tope, d) {
        Ok(x) => x,
        Err(e) => {
            c.fail(tope, "ternary odd-support x", e);
            return (c.failures, None);
        }
    };
    let xm = matrix_m(d).left_mul(x.as_slice()).unwrap_or_default();
    c.expect(xm == tope.to_ints(), tope, tope, vec_str(&xm));

    match vertex_decomposition(tope, d) {
        Ok(vd) => {
            c.expect(vd.indices.len() % 2 == 1, tope, "odd cardinality", vd.render());
            let mut sum = vec![0i64; t];
            for &k in &vd.indices {
                for (s, v) in sum.iter_mut().zip(d.vertex(k).entries()) {
                    *s += *v as i64;
                }
            }
            c.expect(sum == tope.to_ints(), tope, tope, vec_str(&sum));
            let antipodal = vd.indices.iter().any(|k| vd.indices.contains(&((k + t) % (2 * t))));
            c.expect(!antipodal, tope, "no antipodal vertex pair", vd.render());
        }
        Err(e) => c.fail(tope, "vertex decomposition", e),
    }

    let xbar = match xbar_of_tope(tope, d) {
        Ok(v) => v,
        Err(e) => {
            c.fail(tope, "x̄", e);
            return (c.failures, None);
        }
    };
    let odd_bounded = xbar
        .as_slice()
        .iter()
        .all(|v| v.rem_euclid(2) == 1 && (1..=t as i64 - 1).contains(&v.abs()));
    c.expect(odd_bounded, tope, format!("odd entries in [1,{}]", t - 1), &xbar);

    let dec = Decomposition::from_coeffs(tope.vector().clone(), &xbar);
    c.expect(dec.terms.len() == t, tope, format!("{t} terms"), dec.render());
    let seq = d.subtopes();
    match reconstruct(&dec, &seq) {
        Ok(sum) => c.expect(sum == tope.to_ints(), tope, tope, vec_str(&sum)),
        Err(e) => c.fail(tope, "reconstruction", e),
    }
    let reparsed = parse_terms(&dec.render()).ok();
    c.expect(reparsed.as_ref() == Some(&dec.terms), tope, dec.render(), "render does not re-parse");

    match tope_decomposition(&tope.negate(), d) {
        Ok(neg) => {
            let mut shifted: Vec<_> = dec
                .terms
                .iter()
                .map(|term| crate::decomp::Term {
                    index: (term.index + t) % (2 * t),
                    coeff: term.coeff,
                })
                .collect();
            shifted.sort();
            c.expect(neg.terms == shifted, &tope.negate(), render_shifted(&shifted), neg.render());
        }
        Err(e) => c.fail(&tope.negate(), "decomposition", e),
    }
    (c.failures, Some(xbar.into_vec()))
}

fn render_shifted(terms: &[crate::decomp::Term]) -> String {
    crate::decomp::render_terms(terms)
}

fn check_topes(d: &SymmetricCycle, doc: &CycleDoc) -> Result<Outcome> {
    let t = d.t();
    let topes: Vec<Tope> = Tope::all(t).collect();
    let results: Vec<_> = topes.par_iter().map(|tope| check_one_tope(tope, d, doc)).collect();
    let mut failures = Vec::new();
    let mut seen = HashSet::new();
    for (f, xbar) in results {
        failures.extend(f);
        if let Some(x) = xbar {
            seen.insert(x);
        }
    }
    let mut c = Checker::new("topes", doc);
    c.expect(seen.len() == topes.len(), &"T ↦ x̄", "injective", format!("{} distinct images", seen.len()));
    failures.extend(c.failures);
    Ok(Outcome {
        checked: topes.len(),
        notice: None,
        failures,
    })
}

fn check_one_subtope(s: &Subtope, d: &SymmetricCycle, w: &IntMatrix, doc: &CycleDoc) -> (Vec<Counterexample>, i64) {
    let t = d.t();
    let mut c = Checker::new("subtopes", doc);
    let coords = match subtope_coords(s, d) {
        Ok(v) => v,
        Err(e) => {
            c.fail(s, "x̄(S)", e);
            return (c.failures, 0);
        }
    };
    let a = times_p(coords.x_plus.as_slice());
    let b = times_p(coords.x_minus.as_slice());
    if let (Ok(a), Ok(b)) = (a, b) {
        let even = a.as_slice().iter().zip(b.as_slice()).all(|(p, q)| (p + q) % 2 == 0);
        c.expect(even, s, "x̄(T') + x̄(T'') even", format!("{a} + {b}"));
    }
    let xbar = coords.xbar;
    let bounded = xbar
        .as_slice()
        .iter()
        .filter(|v| **v != 0)
        .all(|v| (1..=t as i64 - 1).contains(&v.abs()));
    c.expect(bounded, s, format!("nonzero |x̄_i| in [1,{}]", t - 1), &xbar);

    match subtope_decomposition(s, d) {
        Ok(dec) => {
            c.expect(dec.terms.len() <= t, s, format!("at most {t} terms"), dec.render());
            match reconstruct(&dec, &d.subtopes()) {
                Ok(sum) => c.expect(sum == s.to_ints(), s, s, vec_str(&sum)),
                Err(e) => c.fail(s, "reconstruction", e),
            }
        }
        Err(e) => c.fail(s, "decomposition", e),
    }

    match exact_solve(&s.to_ints(), w) {
        Ok(y) => {
            let agree = y.len() == t
                && y.iter().zip(xbar.as_slice()).all(|(q, v)| *q == rat(*v));
            c.expect(agree, s, rat_vec_str(&y), &xbar);
        }
        Err(e) => c.fail(s, "exact solve S W^-1", e),
    }
    let max = xbar.as_slice().iter().map(|v| v.abs()).max().unwrap_or(0);
    (c.failures, max)
}

fn check_subtopes(d: &SymmetricCycle, doc: &CycleDoc) -> Result<Outcome> {
    let t = d.t();
    let w = matrix_w(d);
    let subtopes: Vec<Subtope> = Subtope::all(t).collect();
    let results: Vec<_> = subtopes
        .par_iter()
        .map(|s| check_one_subtope(s, d, &w, doc))
        .collect();
    let mut failures = Vec::new();
    let mut max_coeff = 0;
    for (f, m) in results {
        failures.extend(f);
        max_coeff = max_coeff.max(m);
    }
    Ok(Outcome {
        checked: subtopes.len(),
        notice: Some(format!("largest subtope coefficient {max_coeff} (bound {})", t - 1)),
        failures,
    })
}

fn check_oracle(d: &SymmetricCycle, doc: &CycleDoc, enum_cap: usize) -> Result<Outcome> {
    let t = d.t();
    let mut c = Checker::new("oracle", doc);
    let counted = count_odd_support(t);
    let three_t = 3u64.pow(t as u32);
    // sum over odd k of C(t,k) 2^k = (3^t - (-1)^t) / 2
    let formula = if t.is_multiple_of(2) { (three_t - 1) / 2 } else { three_t.div_ceil(2) };
    c.expect(counted == formula, &"odd-support count", formula, counted);

    let w = t.is_multiple_of(2).then(|| matrix_w(d));
    let topes: Vec<Tope> = Tope::all(t).collect();
    let results: Vec<Vec<Counterexample>> = topes
        .par_iter()
        .map(|tope| {
            let mut c = Checker::new("oracle", doc);
            let brute = brute_force_tope_coords(tope, d, enum_cap);
            let solved = tope_coords(tope, d);
            match (&brute, &solved) {
                (Ok(b), Ok(s)) => c.expect(b == s, tope, b, s),
                (Err(e), _) | (_, Err(e)) => c.fail(tope, "both paths succeed", e),
            }
            if let (Some(w), Ok(xbar)) = (&w, xbar_of_tope(tope, d)) {
                match exact_solve(&tope.to_ints(), w) {
                    Ok(y) => {
                        let agree = y.iter().zip(xbar.as_slice()).all(|(q, v)| *q == rat(*v));
                        c.expect(agree, tope, rat_vec_str(&y), &xbar);
                    }
                    Err(e) => c.fail(tope, "exact solve T W^-1", e),
                }
            }
            c.failures
        })
        .collect();
    c.failures.extend(results.into_iter().flatten());
    Ok(Outcome {
        checked: topes.len(),
        notice: Some(format!("{counted} odd-support candidates per tope")),
        failures: c.failures,
    })
}

fn check_closed_form(t: usize) -> Result<Outcome> {
    let r = distinguished_cycle(t)?;
    let doc = r.to_doc();
    let masks: Vec<u64> = (1u64..(1u64 << t)).collect();
    let results: Vec<Vec<Counterexample>> = masks
        .par_iter()
        .map(|&mask| {
            let mut c = Checker::new("closedform", &doc);
            let a: Vec<usize> = (1..=t).filter(|e| mask >> (e - 1) & 1 == 1).collect();
            let tope = Tope::from_negative_part(&a, t).expect("elements in range");
            let set = canonical_intervals(&a, t).expect("nonempty");
            match (closed_form_xbar(&set), xbar_of_tope(&tope, &r)) {
                (Ok(cf), Ok(solved)) => {
                    c.expect(cf == solved, &tope, &solved, &cf);
                    for e in 1..=t {
                        let comp = componentwise_xbar(&set, e).unwrap_or(i64::MIN);
                        c.expect(comp == cf.as_slice()[e - 1], &tope, cf.as_slice()[e - 1], comp);
                    }
                }
                (Err(e), _) | (_, Err(e)) => c.fail(&tope, "closed form and solve", e),
            }
            c.failures
        })
        .collect();
    let mut failures: Vec<Counterexample> = results.into_iter().flatten().collect();
    let specializations = check_specializations(&r)?;
    let checked = masks.len() + specializations.0;
    failures.extend(specializations.1);
    Ok(Outcome {
        checked,
        notice: Some(format!("{} negative parts, specializations included", masks.len())),
        failures,
    })
}

/// The named special cases: prefix, full set, interior, suffix, singleton.
fn check_specializations(r: &SymmetricCycle) -> Result<(usize, Vec<Counterexample>)> {
    let t = r.t();
    let doc = r.to_doc();
    let mut c = Checker::new("closedform", &doc);
    let row = |i: usize| p_row(t, i).expect("row in range");
    let combo = |parts: &[(usize, i64)]| -> Vec<i64> {
        let mut out = vec![0i64; t];
        for &(i, s) in parts {
            for (o, v) in out.iter_mut().zip(row(i)) {
                *o += s * v;
            }
        }
        out
    };
    let mut checked = 0;
    let mut check = |a: Vec<usize>, expected: Vec<i64>, label: &str, c: &mut Checker| -> Result<()> {
        let tope = Tope::from_negative_part(&a, t)?;
        let solved = xbar_of_tope(&tope, r)?;
        let cf = closed_form_xbar(&canonical_intervals(&a, t)?)?;
        c.expect(solved.as_slice() == &expected[..], &format!("{label} {tope}"), vec_str(&expected), &solved);
        c.expect(cf.as_slice() == &expected[..], &format!("{label} {tope}"), vec_str(&expected), &cf);
        checked += 1;
        Ok(())
    };
    for j in 1..t {
        check((1..=j).collect(), combo(&[(j + 1, 1)]), "prefix", &mut c)?;
    }
    check((1..=t).collect(), combo(&[(1, -1)]), "full", &mut c)?;
    for i in 2..t {
        for j in i + 1..t {
            check((i..=j).collect(), combo(&[(1, 1), (i, -1), (j + 1, 1)]), "interior", &mut c)?;
        }
    }
    for i in 2..=t {
        check((i..=t).collect(), combo(&[(i, -1)]), "suffix", &mut c)?;
    }
    for s in 1..=t {
        let expected = if s == 1 {
            combo(&[(2, 1)])
        } else if s < t {
            combo(&[(1, 1), (s, -1), (s + 1, 1)])
        } else {
            combo(&[(t, -1)])
        };
        let y = singleton_xbar(s, t)?;
        c.expect(y.as_slice() == &expected[..], &format!("singleton {s}"), vec_str(&expected), &y);
        check(vec![s], expected, "singleton", &mut c)?;
    }
    Ok((checked, c.failures))
}

fn check_remark(d: &SymmetricCycle, doc: &CycleDoc) -> Result<Outcome> {
    let t = d.t();
    let mut c = Checker::new("remark", doc);
    let p = matrix_p(t)?;
    let mw = m_times_w_inverse(d)?;
    let p_rat = to_rational(&p);
    c.expect(mw == p_rat, &"M W^-1", "P(t)", "differs");
    let x = matrix_x(d)?;
    let m = matrix_m(d);
    let xm = x.mul(&m)?;
    c.expect(xm == p, &"X M", "P(t)", format!("\n{xm}"));
    c.expect(to_rational(&xm) == mw, &"M W^-1 = X M", "equal", "differs");
    for (i, row) in x.iter_rows().enumerate() {
        let ok = TernaryCoords::new(row.to_vec()).is_ok();
        c.expect(ok, &format!("row {} of X", i + 1), "ternary, odd support", vec_str(row));
    }
    Ok(Outcome {
        checked: 3 + t,
        notice: None,
        failures: c.failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::parse_cycle_text;

    fn fig1() -> SymmetricCycle {
        parse_cycle_text("-+++-+\n--++-+\n--++++\n---+++\n+--+++\n+---++\n").unwrap()
    }

    #[test]
    fn brute_force_positive_tope() {
        let x = brute_force_tope_coords(&Tope::positive(6), &fig1(), DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(x.as_slice(), &[1, -1, 1, -1, 1, 0]);
        assert!(matches!(
            brute_force_tope_coords(&Tope::positive(6), &fig1(), 5),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn exact_solve_fig1() {
        let w = matrix_w(&fig1());
        let y = exact_solve(&[1; 6], &w).unwrap();
        assert_eq!(
            crate::linalg::integral(&y).unwrap(),
            vec![-3, 1, 1, -3, 5, -5]
        );
        let s0 = fig1().subtopes().get(0).unwrap().to_ints();
        let y = exact_solve(&s0, &w).unwrap();
        assert_eq!(crate::linalg::integral(&y).unwrap(), vec![1, 0, 0, 0, 0, 0]);
        assert!(matches!(
            exact_solve(&[1, 1, 1, 1, 1], &matrix_n(5).unwrap()),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn inverse_roundtrip() {
        let w = matrix_w(&fig1());
        let inv = exact_inverse(&w).unwrap();
        let prod = rational_matmul(&to_rational(&w), &inv);
        for (i, row) in prod.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v, if i == j { BigRational::one() } else { BigRational::zero() });
            }
        }
    }

    #[test]
    fn odd_support_count_small() {
        // {-1,0,1}^2: (±1,0), (0,±1)
        assert_eq!(count_odd_support(2), 4);
        assert_eq!(count_odd_support(3), 14);
    }

    #[test]
    fn scope_parsing() {
        assert_eq!(Scope::parse("all").unwrap(), Scope::all());
        let s = Scope::parse("rank,topes").unwrap();
        assert!(s.rank && s.topes && !s.subtopes);
        assert!(Scope::parse("bogus").is_err());
    }

    #[test]
    fn suite_on_fig1_and_odd_t() {
        let report = verify_suite(&fig1(), &Scope::all(), &VerifyConfig::default());
        assert!(report.pass, "{report}");
        assert_eq!(report.topes_checked, 64);
        assert_eq!(report.subtopes_checked, 192);

        let r5 = distinguished_cycle(5).unwrap();
        let report = verify_suite(&r5, &Scope::all(), &VerifyConfig::default());
        assert!(report.pass, "{report}");
        let rank = report.check("rank").unwrap();
        assert_eq!(rank.status, CheckStatus::Pass);
        assert_eq!(rank.notice.as_deref(), Some("rank N(5) = 4"));
        for name in ["topes", "subtopes", "closedform", "remark"] {
            let c = report.check(name).unwrap();
            assert_eq!(c.status, CheckStatus::Skipped, "{name}");
            assert!(c.notice.as_ref().unwrap().contains("singular"), "{name}");
        }
    }

    #[test]
    fn report_json_roundtrip() {
        let r = distinguished_cycle(4).unwrap();
        let report = verify_suite(&r, &Scope::all(), &VerifyConfig::default());
        let json = serde_json::to_string(&report).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.pass, report.pass);
        assert_eq!(back.checks, report.checks);
        assert!(back.cycle.distinguished);
    }
}
