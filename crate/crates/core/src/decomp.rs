//! Decompositions of topes and subtopes over the edge subtopes of a
//! symmetric cycle.
//!
//! For a tope `T` and cycle `D` the ternary coordinates `x` solve
//! `T = x M(D)`; with `t` even, `x̄ = x P(t)` gives `T = x̄ W(D)` and the
//! decomposition reads off `x̄` with negative entries folded onto antipodal
//! subtope indices (`-S^k = S^{k+t}`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cycles::{check_even, matrix_m, p_row, CycleDoc, SubtopeSequence, SymmetricCycle};
use crate::error::{Error, Result};
use crate::linalg::{integral, solve_left, IntMatrix};
use crate::sign::{SignVector, Subtope, Tope};

/// The unique `x ∈ {-1,0,1}^t` with odd support and `T = x M(D)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TernaryCoords(Vec<i64>);

impl TernaryCoords {
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn support_len(&self) -> usize {
        self.0.iter().filter(|v| **v != 0).count()
    }

    /// Wraps `x` after checking it is ternary with odd support.
    pub fn new(x: Vec<i64>) -> Result<Self> {
        if let Some(v) = x.iter().find(|v| !matches!(v, -1..=1)) {
            return Err(Error::NotATope(format!("coordinate {v} is not ternary")));
        }
        let c = TernaryCoords(x);
        if c.support_len().is_multiple_of(2) {
            return Err(Error::NotATope(format!(
                "support of {c} has even size {}",
                c.support_len()
            )));
        }
        Ok(c)
    }
}

/// Subtope-basis coordinates `x̄ ∈ Z^t` with `target = x̄ W(D)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoeffVector(Vec<i64>);

impl CoeffVector {
    pub fn new(v: Vec<i64>) -> Self {
        CoeffVector(v)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn fmt_tuple(v: &[i64], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

impl fmt::Display for TernaryCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(&self.0, f)
    }
}

impl fmt::Display for CoeffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(&self.0, f)
    }
}

/// One term `coeff * S^index` of a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Term {
    pub index: usize,
    pub coeff: i64,
}

/// A positive integer combination of cycle subtopes, sorted by index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub target: SignVector,
    pub terms: Vec<Term>,
}

impl Decomposition {
    /// Folds a coefficient vector onto subtope indices: `x̄_i > 0` selects
    /// `S^{i-1}`, `x̄_i < 0` selects `S^{i-1+t}`, zeros are dropped.
    pub fn from_coeffs(target: SignVector, xbar: &CoeffVector) -> Self {
        let t = xbar.len();
        let mut terms: Vec<Term> = xbar
            .as_slice()
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, &c)| Term {
                index: if c > 0 { i } else { i + t },
                coeff: c.abs(),
            })
            .collect();
        terms.sort();
        Decomposition { target, terms }
    }

    /// Inverse of [`Decomposition::from_coeffs`].
    pub fn coeffs(&self, t: usize) -> Result<CoeffVector> {
        let mut x = vec![0i64; t];
        for term in &self.terms {
            if term.index >= 2 * t {
                return Err(Error::domain(format!(
                    "subtope index {} outside [0,{})",
                    term.index,
                    2 * t
                )));
            }
            let (i, sign) = if term.index < t {
                (term.index, 1)
            } else {
                (term.index - t, -1)
            };
            x[i] += sign * term.coeff;
        }
        Ok(CoeffVector(x))
    }

    pub fn render(&self) -> String {
        render_terms(&self.terms)
    }

    pub fn to_doc(&self, cycle: &SymmetricCycle) -> DecompositionDoc {
        DecompositionDoc {
            target: self.target.to_string(),
            terms: self.terms.clone(),
            cycle: cycle.to_doc(),
        }
    }
}

/// `"S^1 + S^2 + 5S^4"`; the empty sum renders as `"0"`.
pub fn render_terms(terms: &[Term]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    terms
        .iter()
        .map(|t| {
            if t.coeff == 1 {
                format!("S^{}", t.index)
            } else {
                format!("{}S^{}", t.coeff, t.index)
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Parses the output of [`render_terms`].
pub fn parse_terms(s: &str) -> Result<Vec<Term>> {
    let s = s.trim();
    if s == "0" {
        return Ok(Vec::new());
    }
    s.split('+')
        .map(|part| {
            let part = part.trim();
            let (coeff, index) = part
                .split_once("S^")
                .ok_or_else(|| Error::parse(format!("term {part:?} lacks S^")))?;
            let coeff = if coeff.is_empty() {
                1
            } else {
                coeff
                    .parse()
                    .map_err(|_| Error::parse(format!("bad coefficient in {part:?}")))?
            };
            let index = index
                .parse()
                .map_err(|_| Error::parse(format!("bad index in {part:?}")))?;
            Ok(Term { index, coeff })
        })
        .collect()
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.target, self.render())
    }
}

/// Serialized decomposition with its cycle attached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub target: String,
    pub terms: Vec<Term>,
    pub cycle: CycleDoc,
}

impl DecompositionDoc {
    pub fn into_parts(self) -> Result<(Decomposition, SymmetricCycle)> {
        let target = SignVector::from_str(&self.target)?;
        let cycle = self.cycle.into_cycle()?;
        Ok((
            Decomposition {
                target,
                terms: self.terms,
            },
            cycle,
        ))
    }
}

/// Cycle-vertex indices `k` with `Σ D^k = T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDecomposition {
    pub indices: Vec<usize>,
}

impl VertexDecomposition {
    pub fn render(&self) -> String {
        self.indices
            .iter()
            .map(|k| format!("D^{k}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn check_len(v: &SignVector, d: &SymmetricCycle) -> Result<()> {
    if v.len() != d.t() {
        return Err(Error::domain(format!(
            "vector {v} has length {}, cycle has t = {}",
            v.len(),
            d.t()
        )));
    }
    Ok(())
}

/// Solves `T = x M(D)` exactly and checks the ternary, odd-support shape.
pub fn tope_coords(tope: &Tope, d: &SymmetricCycle) -> Result<TernaryCoords> {
    check_len(tope, d)?;
    let y = solve_left(&tope.to_ints(), &matrix_m(d))?;
    let x = integral(&y)
        .ok_or_else(|| Error::NotATope(format!("x({tope}) is not integral")))?;
    TernaryCoords::new(x)
}

pub fn vertex_decomposition(tope: &Tope, d: &SymmetricCycle) -> Result<VertexDecomposition> {
    let x = tope_coords(tope, d)?;
    let t = d.t();
    let mut indices: Vec<usize> = x
        .as_slice()
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0)
        .map(|(i, &v)| if v > 0 { i } else { i + t })
        .collect();
    indices.sort_unstable();
    Ok(VertexDecomposition { indices })
}

/// `x P(t)`, summing rows of `P(t)` without materializing the matrix.
pub fn times_p(x: &[i64]) -> Result<CoeffVector> {
    let t = x.len();
    check_even(t)?;
    let mut out = vec![0i64; t];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (o, p) in out.iter_mut().zip(p_row(t, i + 1)?) {
            *o += xi * p;
        }
    }
    Ok(CoeffVector(out))
}

/// `x̄(T) = x(T) P(t)`.
pub fn xbar_of_tope(tope: &Tope, d: &SymmetricCycle) -> Result<CoeffVector> {
    check_even(d.t())?;
    let x = tope_coords(tope, d)?;
    times_p(x.as_slice())
}

pub fn tope_decomposition(tope: &Tope, d: &SymmetricCycle) -> Result<Decomposition> {
    let xbar = xbar_of_tope(tope, d)?;
    Ok(Decomposition::from_coeffs(tope.vector().clone(), &xbar))
}

/// Splits a subtope into its two topes `(T', T'')`, zero set to `+1` / `-1`.
pub fn subtope_to_tope_pair(s: &SignVector) -> Result<(Tope, Tope)> {
    let s = Subtope::new(s.clone())?;
    Ok(s.tope_pair())
}

/// Intermediate values of the subtope construction, kept for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubtopeCoords {
    pub plus: Tope,
    pub minus: Tope,
    pub x_plus: TernaryCoords,
    pub x_minus: TernaryCoords,
    pub xbar: CoeffVector,
}

pub fn subtope_coords(s: &Subtope, d: &SymmetricCycle) -> Result<SubtopeCoords> {
    check_even(d.t())?;
    check_len(s, d)?;
    let (plus, minus) = s.tope_pair();
    let x_plus = tope_coords(&plus, d)?;
    let x_minus = tope_coords(&minus, d)?;
    let a = times_p(x_plus.as_slice())?;
    let b = times_p(x_minus.as_slice())?;
    let xbar = a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(p, q)| {
            let sum = p + q;
            debug_assert!(sum % 2 == 0, "sum of two odd vectors is even");
            sum / 2
        })
        .collect();
    Ok(SubtopeCoords {
        plus,
        minus,
        x_plus,
        x_minus,
        xbar: CoeffVector(xbar),
    })
}

/// `x̄(S) = (x̄(T') + x̄(T''))/2`.
pub fn xbar_of_subtope(s: &Subtope, d: &SymmetricCycle) -> Result<CoeffVector> {
    Ok(subtope_coords(s, d)?.xbar)
}

pub fn subtope_decomposition(s: &Subtope, d: &SymmetricCycle) -> Result<Decomposition> {
    let xbar = xbar_of_subtope(s, d)?;
    Ok(Decomposition::from_coeffs(s.vector().clone(), &xbar))
}

/// `X(P(t), D)`: row `i` holds the ternary coordinates of `P(t)^i`.
pub fn matrix_x(d: &SymmetricCycle) -> Result<IntMatrix> {
    let t = d.t();
    check_even(t)?;
    let rows = (1..=t)
        .map(|i| {
            let p = Tope::new(SignVector::from_ints(&p_row(t, i)?)?)?;
            Ok(tope_coords(&p, d)?.0)
        })
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_rows(rows)
}

/// `Σ coeff * S^index`.
pub fn reconstruct(dec: &Decomposition, seq: &SubtopeSequence) -> Result<Vec<i64>> {
    let t = seq.t();
    let mut out = vec![0i64; t];
    for term in &dec.terms {
        let s = seq.get(term.index).ok_or_else(|| {
            Error::domain(format!(
                "subtope index {} outside [0,{})",
                term.index,
                seq.len()
            ))
        })?;
        for (o, v) in out.iter_mut().zip(s.entries()) {
            *o += term.coeff * *v as i64;
        }
    }
    Ok(out)
}
