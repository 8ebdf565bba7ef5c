//! Computation-free `x̄(₋A T(+), S(R))` for the distinguished cycle `R`.
//!
//! A nonempty negative part `A ⊆ [1,t]` is split into maximal runs
//! `[i_1,j_1], ..., [i_ρ,j_ρ]` and the coefficient vector is a signed sum of
//! rows of `P(t)`. Which rows enter depends on `{1,t} ∩ A`:
//!
//! | case | `{1,t} ∩ A` | rows                                           |
//! |------|-------------|------------------------------------------------|
//! | i    | `{1}`       | `Σ_{k≤ρ} P^{j_k+1} − Σ_{2≤l≤ρ} P^{i_l}`        |
//! | ii   | `{1,t}`     | `Σ_{k≤ρ−1} P^{j_k+1} − Σ_{l≤ρ} P^{i_l}`        |
//! | iii  | `∅`         | `P^1 + Σ_{k≤ρ} P^{j_k+1} − Σ_{l≤ρ} P^{i_l}`    |
//! | iv   | `{t}`       | `Σ_{k≤ρ−1} P^{j_k+1} − Σ_{l≤ρ} P^{i_l}`        |
//!
//! Rows of `P(t)` are generated entry by entry, so the cost is `O(ρ t)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cycles::{check_even, p_entry};
use crate::decomp::CoeffVector;
use crate::error::{Error, Result};

/// A nonempty union of separated intervals of `[1,t]` (`j_k + 2 <= i_{k+1}`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntervalSet {
    t: usize,
    intervals: Vec<(usize, usize)>,
}

impl IntervalSet {
    /// Checks bounds, ordering and the separation condition.
    pub fn new(intervals: Vec<(usize, usize)>, t: usize) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::domain("the negative part A must be nonempty"));
        }
        for &(i, j) in &intervals {
            if i == 0 || i > j || j > t {
                return Err(Error::domain(format!("[{i},{j}] is not an interval of [1,{t}]")));
            }
        }
        for w in intervals.windows(2) {
            if w[0].1 + 2 > w[1].0 {
                return Err(Error::domain(format!(
                    "intervals [{},{}] and [{},{}] are not separated",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(IntervalSet { t, intervals })
    }

    /// Parses `"2-3,5"`; `t` may be written literally as an endpoint (`"1-t"`).
    /// Overlapping or touching pieces are merged into maximal runs.
    pub fn parse(s: &str, t: usize) -> Result<Self> {
        let endpoint = |p: &str| -> Result<usize> {
            let p = p.trim();
            if p == "t" {
                return Ok(t);
            }
            p.parse()
                .map_err(|_| Error::parse(format!("bad interval endpoint {p:?}")))
        };
        let mut elements = Vec::new();
        for piece in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) = match piece.split_once('-') {
                Some((a, b)) => (endpoint(a)?, endpoint(b)?),
                None => {
                    let e = endpoint(piece)?;
                    (e, e)
                }
            };
            if a == 0 || a > b || b > t {
                return Err(Error::domain(format!("{piece:?} is not an interval of [1,{t}]")));
            }
            elements.extend(a..=b);
        }
        canonical_intervals(&elements, t)
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn intervals(&self) -> &[(usize, usize)] {
        &self.intervals
    }

    /// `ρ(A)`, the number of runs.
    pub fn rho(&self) -> usize {
        self.intervals.len()
    }

    pub fn elements(&self) -> Vec<usize> {
        self.intervals.iter().flat_map(|&(i, j)| i..=j).collect()
    }

    pub fn boundary_case(&self) -> BoundaryCase {
        let has_first = self.intervals[0].0 == 1;
        let has_last = self.intervals[self.rho() - 1].1 == self.t;
        match (has_first, has_last) {
            (true, false) => BoundaryCase::First,
            (true, true) => BoundaryCase::Both,
            (false, false) => BoundaryCase::Neither,
            (false, true) => BoundaryCase::Last,
        }
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .intervals
            .iter()
            .map(|&(i, j)| format!("[{i},{j}]"))
            .collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

/// How `A` meets the boundary elements `{1, t}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryCase {
    /// `{1,t} ∩ A = {1}`
    First,
    /// `{1,t} ∩ A = {1,t}`
    Both,
    /// `{1,t} ∩ A = ∅`
    Neither,
    /// `{1,t} ∩ A = {t}`
    Last,
}

impl BoundaryCase {
    pub fn label(self) -> &'static str {
        match self {
            BoundaryCase::First => "i",
            BoundaryCase::Both => "ii",
            BoundaryCase::Neither => "iii",
            BoundaryCase::Last => "iv",
        }
    }
}

/// Maximal runs of a nonempty subset of `[1,t]`.
pub fn canonical_intervals(a: &[usize], t: usize) -> Result<IntervalSet> {
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let Some(&first) = sorted.first() else {
        return Err(Error::domain("the negative part A must be nonempty"));
    };
    if first == 0 || *sorted.last().unwrap() > t {
        return Err(Error::domain(format!("A is not a subset of [1,{t}]")));
    }
    let mut intervals: Vec<(usize, usize)> = Vec::new();
    for e in sorted {
        match intervals.last_mut() {
            Some(last) if last.1 + 1 == e => last.1 = e,
            _ => intervals.push((e, e)),
        }
    }
    IntervalSet::new(intervals, t)
}

/// Signed row indices (1-based) whose sum is `x̄`, as `(row, ±1)`.
pub fn signed_rows(a: &IntervalSet) -> Vec<(usize, i64)> {
    let rho = a.rho();
    let iv = a.intervals();
    let mut rows = Vec::with_capacity(2 * rho + 1);
    let (plus_runs, minus_from) = match a.boundary_case() {
        BoundaryCase::First => (rho, 1),
        BoundaryCase::Both | BoundaryCase::Last => (rho - 1, 0),
        BoundaryCase::Neither => {
            rows.push((1, 1));
            (rho, 0)
        }
    };
    rows.extend(iv[..plus_runs].iter().map(|&(_, j)| (j + 1, 1)));
    rows.extend(iv[minus_from..].iter().map(|&(i, _)| (i, -1)));
    rows
}

/// `x̄(₋A T(+), S(R))` as a signed sum of lazily generated `P(t)` rows.
pub fn closed_form_xbar(a: &IntervalSet) -> Result<CoeffVector> {
    let t = a.t();
    check_even(t)?;
    let mut out = vec![0i64; t];
    for (row, sign) in signed_rows(a) {
        for (j, o) in out.iter_mut().enumerate() {
            *o += sign * p_entry(row, j + 1);
        }
    }
    Ok(CoeffVector::new(out))
}

fn parity_sign(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Contribution of a `+P^{j+1}` term to component `e`.
fn run_end_term(e: usize, j: usize) -> i64 {
    if j < e {
        parity_sign(e + j + 1)
    } else {
        parity_sign(e + j)
    }
}

/// Contribution of a `P^{i}` term to component `e` (before its minus sign).
fn run_start_term(e: usize, i: usize) -> i64 {
    if i <= e {
        parity_sign(e + i)
    } else {
        parity_sign(e + i + 1)
    }
}

/// The single component `x̄_e` (1-based `e`) via the per-case component sums.
pub fn componentwise_xbar(a: &IntervalSet, e: usize) -> Result<i64> {
    let t = a.t();
    check_even(t)?;
    if e == 0 || e > t {
        return Err(Error::domain(format!("component {e} outside [1,{t}]")));
    }
    let iv = a.intervals();
    let rho = a.rho();
    let ends = |upto: usize| -> i64 { iv[..upto].iter().map(|&(_, j)| run_end_term(e, j)).sum() };
    let starts =
        |from: usize| -> i64 { iv[from..].iter().map(|&(i, _)| run_start_term(e, i)).sum() };
    Ok(match a.boundary_case() {
        BoundaryCase::First => ends(rho) - starts(1),
        BoundaryCase::Both | BoundaryCase::Last => ends(rho - 1) - starts(0),
        BoundaryCase::Neither => parity_sign(e + 1) + ends(rho) - starts(0),
    })
}

/// `ȳ(s) = x̄(₋s T(+), S(R))` for a single negated element `s`.
pub fn singleton_xbar(s: usize, t: usize) -> Result<CoeffVector> {
    check_even(t)?;
    if s == 0 || s > t {
        return Err(Error::domain(format!("element {s} outside [1,{t}]")));
    }
    let rows: Vec<(usize, i64)> = if s == 1 {
        vec![(2, 1)]
    } else if s < t {
        vec![(1, 1), (s, -1), (s + 1, 1)]
    } else {
        vec![(t, -1)]
    };
    let mut out = vec![0i64; t];
    for (row, sign) in rows {
        for (j, o) in out.iter_mut().enumerate() {
            *o += sign * p_entry(row, j + 1);
        }
    }
    Ok(CoeffVector::new(out))
}

/// Renders the signed row sum, e.g. `"P^1 + P^4 + P^6 - P^2 - P^5"`.
pub fn render_rows(rows: &[(usize, i64)]) -> String {
    let mut s = String::new();
    for (k, &(row, sign)) in rows.iter().enumerate() {
        match (k, sign > 0) {
            (0, true) => s.push_str(&format!("P^{row}")),
            (0, false) => s.push_str(&format!("-P^{row}")),
            (_, true) => s.push_str(&format!(" + P^{row}")),
            (_, false) => s.push_str(&format!(" - P^{row}")),
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::p_row;

    fn set(a: &[usize], t: usize) -> IntervalSet {
        canonical_intervals(a, t).unwrap()
    }

    #[test]
    fn maximal_runs() {
        assert_eq!(set(&[2, 3, 5], 6).intervals(), &[(2, 3), (5, 5)]);
        assert_eq!(set(&[1, 2, 3, 4, 5, 6], 6).intervals(), &[(1, 6)]);
        assert_eq!(set(&[5, 1, 3], 6).intervals(), &[(1, 1), (3, 3), (5, 5)]);
        assert!(matches!(canonical_intervals(&[], 6), Err(Error::Domain(_))));
        assert!(matches!(canonical_intervals(&[7], 6), Err(Error::Domain(_))));
        assert!(IntervalSet::new(vec![(1, 2), (3, 4)], 6).is_err());
        assert!(IntervalSet::new(vec![(1, 2), (4, 4)], 6).is_ok());
    }

    #[test]
    fn interval_syntax() {
        assert_eq!(IntervalSet::parse("2-3,5", 6).unwrap().intervals(), &[(2, 3), (5, 5)]);
        assert_eq!(IntervalSet::parse("1-t", 8).unwrap().intervals(), &[(1, 8)]);
        assert_eq!(IntervalSet::parse("1-2,3", 6).unwrap().intervals(), &[(1, 3)]);
        assert!(IntervalSet::parse("", 6).is_err());
        assert!(IntervalSet::parse("3-2", 6).is_err());
        assert!(IntervalSet::parse("0-2", 6).is_err());
        assert!(matches!(IntervalSet::parse("a-2", 6), Err(Error::Parse(_))));
    }

    #[test]
    fn case_dispatch() {
        assert_eq!(set(&[1, 2], 6).boundary_case(), BoundaryCase::First);
        assert_eq!(set(&[1, 6], 6).boundary_case(), BoundaryCase::Both);
        assert_eq!(set(&[2, 3, 5], 6).boundary_case(), BoundaryCase::Neither);
        assert_eq!(set(&[4, 5, 6], 6).boundary_case(), BoundaryCase::Last);
    }

    #[test]
    fn worked_values() {
        // P(6) rows as printed.
        assert_eq!(
            closed_form_xbar(&set(&[1, 2], 6)).unwrap().as_slice(),
            &[-1, 1, 1, -1, 1, -1]
        );
        let a = set(&[2, 3, 5], 6);
        assert_eq!(render_rows(&signed_rows(&a)), "P^1 + P^4 + P^6 - P^2 - P^5");
        assert_eq!(closed_form_xbar(&a).unwrap().as_slice(), &[3, -5, 5, -3, 1, 1]);
        let full: Vec<i64> = p_row(6, 1).unwrap().iter().map(|v| -v).collect();
        assert_eq!(closed_form_xbar(&set(&[1, 2, 3, 4, 5, 6], 6)).unwrap().as_slice(), &full[..]);
        assert_eq!(singleton_xbar(1, 6).unwrap().as_slice(), &[1, 1, -1, 1, -1, 1]);
        assert_eq!(singleton_xbar(6, 6).unwrap().as_slice(), &[-1, 1, -1, 1, -1, -1]);
        assert_eq!(singleton_xbar(3, 6).unwrap().as_slice(), &[3, -3, 1, 1, -1, 1]);
        assert_eq!(componentwise_xbar(&set(&[1, 2], 6), 1).unwrap(), -1);
        // exact solve of x̄ W(R) = (+,-,-,+,+,+) gives (1,-3,3,-1,1,-1)
        assert_eq!(componentwise_xbar(&set(&[2, 3], 6), 1).unwrap(), 1);
    }

    #[test]
    fn odd_t_and_range_errors() {
        let a = set(&[1], 5);
        assert!(matches!(closed_form_xbar(&a), Err(Error::Singular(_))));
        assert!(matches!(componentwise_xbar(&a, 1), Err(Error::Singular(_))));
        assert!(matches!(singleton_xbar(1, 5), Err(Error::Singular(_))));
        assert!(matches!(singleton_xbar(7, 6), Err(Error::Domain(_))));
        assert!(matches!(componentwise_xbar(&set(&[1], 6), 7), Err(Error::Domain(_))));
    }

    #[test]
    fn componentwise_matches_row_sums_exhaustively() {
        for t in [2, 4, 6, 8] {
            for mask in 1u32..(1 << t) {
                let a: Vec<usize> = (1..=t).filter(|e| mask >> (e - 1) & 1 == 1).collect();
                let a = set(&a, t);
                let v = closed_form_xbar(&a).unwrap();
                for e in 1..=t {
                    assert_eq!(componentwise_xbar(&a, e).unwrap(), v.as_slice()[e - 1]);
                }
            }
        }
    }
}
