//! Symmetric `2t`-cycles in the hypercube graph `H(t,2)`, their edge
//! subtopes, and the matrices `M(D)`, `W(D)`, `N(t)`, `P(t)`.
//!
//! Cycle vertex and subtope indices are 0-based (`D^0 .. D^{2t-1}`); matrix
//! rows and columns of `P(t)` are addressed 1-based by [`p_entry`] and
//! [`p_row`], 0-based by [`IntMatrix::get`].

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::sign::{meet_midpoint, SignVector, Subtope, Tope};

/// An ordered symmetric cycle `(D^0, ..., D^{2t-1})` with `D^{k+t} = -D^k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymmetricCycle {
    t: usize,
    vertices: Vec<Tope>,
}

impl SymmetricCycle {
    /// Validates `t` or `2t` topes; with `t` topes the antipodal half is
    /// generated.
    pub fn new(vertices: Vec<Tope>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::NotACycle("no vertices".into()));
        };
        let t = first.len();
        if t < 2 {
            return Err(Error::domain(format!("t = {t}, expected t >= 2")));
        }
        if let Some(v) = vertices.iter().find(|v| v.len() != t) {
            return Err(Error::domain(format!(
                "vertex {v} has length {}, expected {t}",
                v.len()
            )));
        }
        let mut vertices = vertices;
        if vertices.len() == t {
            let tail: Vec<Tope> = vertices.iter().map(Tope::negate).collect();
            vertices.extend(tail);
        } else if vertices.len() != 2 * t {
            return Err(Error::NotACycle(format!(
                "{} vertices given, expected t = {t} or 2t = {}",
                vertices.len(),
                2 * t
            )));
        }

        let mut seen = HashSet::with_capacity(2 * t);
        for (k, v) in vertices.iter().enumerate() {
            if !seen.insert(v) {
                return Err(Error::NotACycle(format!("vertex D^{k} = {v} is repeated")));
            }
        }
        for k in 0..2 * t {
            let next = (k + 1) % (2 * t);
            let d = vertices[k].hamming_distance(&vertices[next])?;
            if d != 1 {
                return Err(Error::NotACycle(format!(
                    "D^{k} = {} and D^{next} = {} are at distance {d}",
                    vertices[k], vertices[next]
                )));
            }
        }
        for k in 0..t {
            if vertices[k + t] != vertices[k].negate() {
                return Err(Error::NotSymmetric(format!(
                    "D^{} = {} is not -D^{k} = {}",
                    k + t,
                    vertices[k + t],
                    vertices[k].negate()
                )));
            }
        }
        Ok(SymmetricCycle { t, vertices })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn vertices(&self) -> &[Tope] {
        &self.vertices
    }

    /// `D^k`, with `k` taken modulo `2t`.
    pub fn vertex(&self, k: usize) -> &Tope {
        &self.vertices[k % (2 * self.t)]
    }

    pub fn is_distinguished(&self) -> bool {
        distinguished_cycle(self.t).is_ok_and(|r| r == *self)
    }

    pub fn subtopes(&self) -> SubtopeSequence {
        subtope_sequence(self)
    }

    pub fn to_doc(&self) -> CycleDoc {
        CycleDoc {
            t: self.t,
            vertices: self.vertices.iter().map(|v| v.to_string()).collect(),
        }
    }

    /// Plain-text cycle file: one sign-vector string per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            s.push_str(&v.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for SymmetricCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymmetricCycle")
            .field("t", &self.t)
            .field("vertices", &self.vertices)
            .finish()
    }
}

/// JSON form of a cycle: `{"t": 6, "vertices": ["-+++-+", ...]}` with either
/// `t` or `2t` vertex strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDoc {
    pub t: usize,
    pub vertices: Vec<String>,
}

impl CycleDoc {
    pub fn into_cycle(self) -> Result<SymmetricCycle> {
        let topes = self
            .vertices
            .iter()
            .map(|s| s.parse::<Tope>())
            .collect::<Result<Vec<_>>>()?;
        let cycle = SymmetricCycle::new(topes)?;
        if cycle.t() != self.t {
            return Err(Error::domain(format!(
                "declared t = {} but vertices have length {}",
                self.t,
                cycle.t()
            )));
        }
        Ok(cycle)
    }
}

impl Serialize for SymmetricCycle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymmetricCycle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        CycleDoc::deserialize(d)?
            .into_cycle()
            .map_err(serde::de::Error::custom)
    }
}

/// Parses the plain-text cycle format: one sign vector per line, `#` starts a
/// comment, blank lines are ignored.
pub fn parse_cycle_text(text: &str) -> Result<SymmetricCycle> {
    let topes = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::parse::<Tope>)
        .collect::<Result<Vec<_>>>()?;
    SymmetricCycle::new(topes)
}

/// Parses either cycle format; JSON is recognized by a leading `{`.
pub fn parse_cycle(text: &str) -> Result<SymmetricCycle> {
    if text.trim_start().starts_with('{') {
        let doc: CycleDoc =
            serde_json::from_str(text).map_err(|e| Error::parse(format!("cycle JSON: {e}")))?;
        doc.into_cycle()
    } else {
        parse_cycle_text(text)
    }
}

pub fn load_cycle(path: &Path) -> Result<SymmetricCycle> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))?;
    parse_cycle(&text)
}

/// The distinguished cycle `R`: `R^0 = T(+)`, `R^s` negates the prefix
/// `[1, s]`, and `R^{k+t} = -R^k`.
pub fn distinguished_cycle(t: usize) -> Result<SymmetricCycle> {
    if t < 2 {
        return Err(Error::domain(format!("t = {t}, expected t >= 2")));
    }
    let half = (0..t)
        .map(|s| Tope::from_negative_part(&(1..=s).collect::<Vec<_>>(), t))
        .collect::<Result<Vec<_>>>()?;
    SymmetricCycle::new(half)
}

/// A random symmetric cycle: a Hamming walk from a random start that flips
/// every coordinate once in shuffled order, closed up antipodally.
pub fn random_cycle<R: Rng + ?Sized>(t: usize, rng: &mut R) -> Result<SymmetricCycle> {
    if t < 2 {
        return Err(Error::domain(format!("t = {t}, expected t >= 2")));
    }
    let mut current: Vec<i8> = (0..t)
        .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
        .collect();
    let mut order: Vec<usize> = (0..t).collect();
    order.shuffle(rng);
    let mut half = Vec::with_capacity(t);
    for &e in &order {
        half.push(Tope::new(SignVector::new(current.clone())?)?);
        current[e] = -current[e];
    }
    SymmetricCycle::new(half)
}

/// [`random_cycle`] driven by a ChaCha8 stream from `seed`.
pub fn seeded_cycle(t: usize, seed: u64) -> Result<SymmetricCycle> {
    random_cycle(t, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// The edge subtopes `S^k = D^k ∧ D^{k+1}` of a symmetric cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubtopeSequence {
    subtopes: Vec<Subtope>,
}

impl SubtopeSequence {
    pub fn t(&self) -> usize {
        self.subtopes.len() / 2
    }

    pub fn len(&self) -> usize {
        self.subtopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subtopes.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<&Subtope> {
        self.subtopes.get(k)
    }

    pub fn as_slice(&self) -> &[Subtope] {
        &self.subtopes
    }

    /// Index of `s` in the sequence, if it labels an edge of the cycle.
    pub fn position(&self, s: &Subtope) -> Option<usize> {
        self.subtopes.iter().position(|x| x == s)
    }
}

pub fn subtope_sequence(d: &SymmetricCycle) -> SubtopeSequence {
    let n = 2 * d.t();
    let subtopes = (0..n)
        .map(|k| {
            meet_midpoint(d.vertex(k), d.vertex(k + 1))
                .expect("validated cycles have adjacent consecutive vertices")
        })
        .collect();
    SubtopeSequence { subtopes }
}

/// `M(D)`: rows `D^0 .. D^{t-1}`.
pub fn matrix_m(d: &SymmetricCycle) -> IntMatrix {
    IntMatrix::from_rows((0..d.t()).map(|k| d.vertex(k).to_ints()).collect())
        .expect("square by construction")
}

/// `W(D)`: rows `S^0 .. S^{t-1}`.
pub fn matrix_w(d: &SymmetricCycle) -> IntMatrix {
    let seq = subtope_sequence(d);
    IntMatrix::from_rows(seq.subtopes[..d.t()].iter().map(|s| s.to_ints()).collect())
        .expect("square by construction")
}

/// `N(t)`: ones at `(i,i)` and `(i,i+1)` for `i < t`; last row `(-1, 0, ..., 0, 1)`.
pub fn matrix_n(t: usize) -> Result<IntMatrix> {
    if t < 2 {
        return Err(Error::domain(format!("t = {t}, expected t >= 2")));
    }
    let mut n = IntMatrix::zeros(t, t);
    for i in 0..t - 1 {
        n.set(i, i, 1);
        n.set(i, i + 1, 1);
    }
    n.set(t - 1, 0, -1);
    n.set(t - 1, t - 1, 1);
    Ok(n)
}

/// Entry `(i, j)` of `P(t) = 2 N(t)^{-1}`, 1-based:
/// `(-1)^{i+j}` on and above the diagonal, `(-1)^{i+j+1}` below it.
#[inline]
pub fn p_entry(i: usize, j: usize) -> i64 {
    let parity = (i + j + usize::from(i > j)) % 2;
    1 - 2 * parity as i64
}

/// Row `P(t)^i` (1-based `i`), generated from the entry formula.
pub fn p_row(t: usize, i: usize) -> Result<Vec<i64>> {
    check_even(t)?;
    if i == 0 || i > t {
        return Err(Error::domain(format!("row {i} outside [1,{t}]")));
    }
    Ok((1..=t).map(|j| p_entry(i, j)).collect())
}

pub fn matrix_p(t: usize) -> Result<IntMatrix> {
    check_even(t)?;
    IntMatrix::from_rows((1..=t).map(|i| (1..=t).map(|j| p_entry(i, j)).collect()).collect())
}

pub(crate) fn check_even(t: usize) -> Result<()> {
    if t < 2 {
        return Err(Error::domain(format!("t = {t}, expected t >= 2")));
    }
    if t % 2 == 1 {
        return Err(Error::odd_t(t));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Zero;

    const FIG1_HALF: [&str; 6] = ["-+++-+", "--++-+", "--++++", "---+++", "+--+++", "+---++"];

    fn fig1() -> SymmetricCycle {
        SymmetricCycle::new(FIG1_HALF.iter().map(|s| s.parse().unwrap()).collect()).unwrap()
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn fig1_full_and_half_inputs_agree() {
        let half = fig1();
        let full: Vec<Tope> = half.vertices().to_vec();
        assert_eq!(full.len(), 12);
        assert_eq!(SymmetricCycle::new(full).unwrap(), half);
        assert_eq!(half.vertex(6).to_string(), "+---+-");
    }

    #[test]
    fn rejects_broken_cycles() {
        let mut v: Vec<Tope> = FIG1_HALF.iter().map(|s| s.parse().unwrap()).collect();
        v[2] = v[1].clone();
        assert!(matches!(SymmetricCycle::new(v), Err(Error::NotACycle(_))));

        let mut full = fig1().vertices().to_vec();
        full[11] = full[10].clone();
        assert!(matches!(SymmetricCycle::new(full), Err(Error::NotACycle(_))));

        // Hamming-adjacent 2t-cycle that is not antipodal: walk 0000 -> 1000 ->
        // 1100 -> 0100 -> 0110 -> 0111 -> 0011 -> 0001 -> back.
        let walk = ["++++", "-+++", "--++", "+-++", "+--+", "+---", "++--", "+++-"];
        let v = walk.iter().map(|s| s.parse().unwrap()).collect();
        assert!(matches!(SymmetricCycle::new(v), Err(Error::NotSymmetric(_))));

        let v = vec!["++++".parse().unwrap(), "-+++".parse().unwrap(), "--++".parse().unwrap()];
        assert!(matches!(SymmetricCycle::new(v), Err(Error::NotACycle(_))));
    }

    #[test]
    fn distinguished_rows() {
        let r = distinguished_cycle(4).unwrap();
        let got: Vec<String> = r.vertices().iter().map(|v| v.to_string()).collect();
        assert_eq!(
            got,
            ["++++", "-+++", "--++", "---+", "----", "+---", "++--", "+++-"]
        );
        assert_eq!(distinguished_cycle(6).unwrap().vertex(3).to_string(), "---+++");
        for t in 2..=12 {
            let r = distinguished_cycle(t).unwrap();
            assert_eq!(SymmetricCycle::new(r.vertices().to_vec()).unwrap(), r);
            assert!(r.is_distinguished());
        }
        assert!(matches!(distinguished_cycle(1), Err(Error::Domain(_))));
        assert!(!fig1().is_distinguished());
    }

    #[test]
    fn fig1_subtopes_and_matrices() {
        let d = fig1();
        let seq = d.subtopes();
        assert_eq!(seq.get(0).unwrap().to_string(), "-0++-+");
        for k in 0..6 {
            assert_eq!(seq.get(k + 6).unwrap(), &seq.get(k).unwrap().negate());
        }
        assert_eq!(
            matrix_m(&d),
            mat(&[
                &[-1, 1, 1, 1, -1, 1],
                &[-1, -1, 1, 1, -1, 1],
                &[-1, -1, 1, 1, 1, 1],
                &[-1, -1, -1, 1, 1, 1],
                &[1, -1, -1, 1, 1, 1],
                &[1, -1, -1, -1, 1, 1],
            ])
        );
        let w = matrix_w(&d);
        assert_eq!(
            w,
            mat(&[
                &[-1, 0, 1, 1, -1, 1],
                &[-1, -1, 1, 1, 0, 1],
                &[-1, -1, 0, 1, 1, 1],
                &[0, -1, -1, 1, 1, 1],
                &[1, -1, -1, 0, 1, 1],
                &[1, -1, -1, -1, 1, 0],
            ])
        );
        assert_eq!(w.scale(2), matrix_n(6).unwrap().mul(&matrix_m(&d)).unwrap());
        assert_ne!(w.det().unwrap(), BigInt::zero());
    }

    #[test]
    fn n_and_p() {
        assert_eq!(
            matrix_n(4).unwrap(),
            mat(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[-1, 0, 0, 1]])
        );
        assert_eq!(matrix_n(5).unwrap().rank(), 4);
        assert_eq!(matrix_n(6).unwrap().rank(), 6);
        assert!(matches!(matrix_n(1), Err(Error::Domain(_))));

        assert_eq!(
            matrix_p(4).unwrap(),
            mat(&[&[1, -1, 1, -1], &[1, 1, -1, 1], &[-1, 1, 1, -1], &[1, -1, 1, 1]])
        );
        assert_eq!(
            matrix_p(6).unwrap(),
            mat(&[
                &[1, -1, 1, -1, 1, -1],
                &[1, 1, -1, 1, -1, 1],
                &[-1, 1, 1, -1, 1, -1],
                &[1, -1, 1, 1, -1, 1],
                &[-1, 1, -1, 1, 1, -1],
                &[1, -1, 1, -1, 1, 1],
            ])
        );
        for t in [2, 4, 6, 8] {
            let np = matrix_n(t).unwrap().mul(&matrix_p(t).unwrap()).unwrap();
            assert_eq!(np, IntMatrix::identity(t).scale(2));
        }
        assert!(matches!(matrix_p(5), Err(Error::Singular(_))));
        assert!(matches!(p_row(7, 1), Err(Error::Singular(_))));
        assert!(matches!(p_row(6, 7), Err(Error::Domain(_))));
    }

    #[test]
    fn m_is_nonsingular_for_distinguished() {
        for t in [4, 6, 8] {
            let det = matrix_m(&distinguished_cycle(t).unwrap()).det().unwrap();
            assert_ne!(det, BigInt::zero());
        }
    }

    #[test]
    fn random_cycles_satisfy_matrix_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for t in [2, 3, 4, 5, 6, 8, 10] {
            for _ in 0..5 {
                let d = random_cycle(t, &mut rng).unwrap();
                let m = matrix_m(&d);
                let w = matrix_w(&d);
                assert_eq!(w.scale(2), matrix_n(t).unwrap().mul(&m).unwrap());
                let expected_rank = if t % 2 == 0 { t } else { t - 1 };
                assert_eq!(w.rank(), expected_rank);
                if t % 2 == 0 {
                    assert_eq!(m, matrix_p(t).unwrap().mul(&w).unwrap());
                }
                for (k, s) in d.subtopes().as_slice().iter().enumerate() {
                    assert_eq!(s.zero_count(), 1);
                    let a = d.vertex(k);
                    let b = d.vertex(k + 1);
                    let e = s.zero_position();
                    assert_ne!(a.at(e), b.at(e));
                }
            }
        }
    }

    #[test]
    fn text_and_json_formats() {
        let text = "# sample cycle, first half\n-+++-+\n--++-+\n\n--++++  # D^2\n---+++\n+--+++\n+---++\n";
        let d = parse_cycle(text).unwrap();
        assert_eq!(d, fig1());
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(parse_cycle(&json).unwrap(), d);
        let bad = r#"{"t": 5, "vertices": ["-+++-+"]}"#;
        assert!(parse_cycle(bad).is_err());
        assert!(matches!(parse_cycle("++x+\n"), Err(Error::Parse(_))));
        assert_eq!(parse_cycle_text(&d.to_text()).unwrap(), d);
    }
}
