//! Sign vectors over `{+1, -1, 0}`, topes and subtopes of the discrete
//! hypercube `{1,-1}^t`.
//!
//! Ground-set elements are 1-based (`1..=t`) wherever a function takes or
//! returns an element; slice positions are 0-based as usual in Rust.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A length-`t` vector with entries in `{+1, -1, 0}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::domain("sign vector must have t >= 1 entries"));
        }
        if let Some(bad) = entries.iter().find(|v| !matches!(v, -1..=1)) {
            return Err(Error::domain(format!("entry {bad} is not a sign")));
        }
        Ok(SignVector(entries))
    }

    /// Builds a sign vector from integers, rejecting anything outside `{-1,0,1}`.
    pub fn from_ints(entries: &[i64]) -> Result<Self> {
        let signs = entries
            .iter()
            .map(|&v| match v {
                -1..=1 => Ok(v as i8),
                other => Err(Error::domain(format!("entry {other} is not a sign"))),
            })
            .collect::<Result<Vec<_>>>()?;
        SignVector::new(signs)
    }

    pub fn zeros(t: usize) -> Self {
        SignVector(vec![0; t])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    /// Entry at the 1-based ground-set element `e`.
    pub fn at(&self, e: usize) -> i8 {
        self.0[e - 1]
    }

    pub fn to_ints(&self) -> Vec<i64> {
        self.0.iter().map(|&v| v as i64).collect()
    }

    pub fn negate(&self) -> SignVector {
        SignVector(self.0.iter().map(|v| -v).collect())
    }

    pub fn hamming_distance(&self, other: &SignVector) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::domain(format!(
                "length mismatch: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count())
    }

    /// `{e : v(e) != 0}` as sorted 1-based elements.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// The negative part `{e : v(e) = -1}`, 1-based.
    pub fn negative_part(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, v)| **v < 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn zero_count(&self) -> usize {
        self.0.iter().filter(|v| **v == 0).count()
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                '0' => Ok(0),
                other => Err(Error::parse(format!(
                    "invalid sign character {other:?} in {s:?}"
                ))),
            })
            .collect::<Result<Vec<i8>>>()?;
        if entries.is_empty() {
            return Err(Error::parse("empty sign vector"));
        }
        Ok(SignVector(entries))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.0 {
            let c = match v {
                1 => '+',
                -1 => '-',
                _ => '0',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A sign vector without zero entries: a vertex of `H(t,2)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Tope(SignVector);

impl Tope {
    pub fn new(v: SignVector) -> Result<Self> {
        if v.zero_count() != 0 {
            return Err(Error::domain(format!("{v} has zero entries, not a tope")));
        }
        Ok(Tope(v))
    }

    /// The all-plus tope `T(+)`.
    pub fn positive(t: usize) -> Self {
        Tope(SignVector(vec![1; t]))
    }

    /// The tope whose negative part is `negative` (1-based elements of `[1,t]`).
    pub fn from_negative_part(negative: &[usize], t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::domain("t must be positive"));
        }
        let mut entries = vec![1i8; t];
        for &e in negative {
            if e == 0 || e > t {
                return Err(Error::domain(format!("element {e} outside [1,{t}]")));
            }
            entries[e - 1] = -1;
        }
        Ok(Tope(SignVector(entries)))
    }

    /// All `2^t` topes, ordered by the binary counter over negative parts.
    pub fn all(t: usize) -> impl Iterator<Item = Tope> {
        (0u64..(1u64 << t)).map(move |mask| {
            Tope(SignVector(
                (0..t)
                    .map(|e| if mask >> e & 1 == 1 { -1 } else { 1 })
                    .collect(),
            ))
        })
    }

    pub fn negate(&self) -> Tope {
        Tope(self.0.negate())
    }

    pub fn vector(&self) -> &SignVector {
        &self.0
    }

    pub fn into_vector(self) -> SignVector {
        self.0
    }
}

impl Deref for Tope {
    type Target = SignVector;

    fn deref(&self) -> &SignVector {
        &self.0
    }
}

impl TryFrom<SignVector> for Tope {
    type Error = Error;

    fn try_from(v: SignVector) -> Result<Self> {
        Tope::new(v)
    }
}

impl FromStr for Tope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Tope::new(s.parse()?)
    }
}

impl fmt::Display for Tope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Tope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tope({})", self.0)
    }
}

impl<'de> Deserialize<'de> for Tope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = SignVector::deserialize(deserializer)?;
        Tope::new(v).map_err(serde::de::Error::custom)
    }
}

/// A sign vector with exactly one zero entry: the label of an edge of `H(t,2)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Subtope(SignVector);

impl Subtope {
    pub fn new(v: SignVector) -> Result<Self> {
        let zeros = v.zero_count();
        if zeros != 1 {
            return Err(Error::domain(format!(
                "{v} has {zeros} zero entries, a subtope has exactly one"
            )));
        }
        Ok(Subtope(v))
    }

    /// 1-based position of the zero entry.
    pub fn zero_position(&self) -> usize {
        self.0 .0.iter().position(|v| *v == 0).unwrap() + 1
    }

    /// All `t * 2^(t-1)` subtopes (edges of `H(t,2)`).
    pub fn all(t: usize) -> impl Iterator<Item = Subtope> {
        (1..=t).flat_map(move |zero| {
            (0u64..(1u64 << (t - 1))).map(move |mask| {
                let mut bit = 0;
                let entries = (1..=t)
                    .map(|e| {
                        if e == zero {
                            0
                        } else {
                            let v = if mask >> bit & 1 == 1 { -1 } else { 1 };
                            bit += 1;
                            v
                        }
                    })
                    .collect();
                Subtope(SignVector(entries))
            })
        })
    }

    pub fn negate(&self) -> Subtope {
        Subtope(self.0.negate())
    }

    pub fn vector(&self) -> &SignVector {
        &self.0
    }

    /// The two topes `(T', T'')` with `S = (T' + T'')/2`: the zero coordinate
    /// set to `+1` and to `-1` respectively.
    pub fn tope_pair(&self) -> (Tope, Tope) {
        let e = self.zero_position() - 1;
        let mut plus = self.0 .0.clone();
        let mut minus = self.0 .0.clone();
        plus[e] = 1;
        minus[e] = -1;
        (Tope(SignVector(plus)), Tope(SignVector(minus)))
    }
}

impl Deref for Subtope {
    type Target = SignVector;

    fn deref(&self) -> &SignVector {
        &self.0
    }
}

impl TryFrom<SignVector> for Subtope {
    type Error = Error;

    fn try_from(v: SignVector) -> Result<Self> {
        Subtope::new(v)
    }
}

impl FromStr for Subtope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Subtope::new(s.parse()?)
    }
}

impl fmt::Display for Subtope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Subtope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subtope({})", self.0)
    }
}

impl<'de> Deserialize<'de> for Subtope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = SignVector::deserialize(deserializer)?;
        Subtope::new(v).map_err(serde::de::Error::custom)
    }
}

/// The common subtope `(T1 + T2)/2` of two adjacent topes.
pub fn meet_midpoint(t1: &Tope, t2: &Tope) -> Result<Subtope> {
    let d = t1.hamming_distance(t2)?;
    if d != 1 {
        return Err(Error::NotAdjacent(d));
    }
    let entries = t1
        .entries()
        .iter()
        .zip(t2.entries())
        .map(|(a, b)| (a + b) / 2)
        .collect();
    Ok(Subtope(SignVector(entries)))
}

/// A `{0, 1/2, 1}` labeling of a vertex or edge of the 0/1 hypercube,
/// stored as doubled integers in `{0, 1, 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfLabeling {
    doubled: Vec<u8>,
}

impl HalfLabeling {
    /// Every stored entry is this multiple of the represented value.
    pub const SCALE: u8 = 2;

    /// Entrywise `(1 - v(e))/2`.
    pub fn of(v: &SignVector) -> Self {
        HalfLabeling {
            doubled: v.entries().iter().map(|&s| (1 - s) as u8).collect(),
        }
    }

    pub fn doubled(&self) -> &[u8] {
        &self.doubled
    }

    /// Exact average of two labelings, or `None` if some entry is not
    /// representable at scale 2.
    pub fn average(&self, other: &HalfLabeling) -> Option<HalfLabeling> {
        if self.doubled.len() != other.doubled.len() {
            return None;
        }
        self.doubled
            .iter()
            .zip(&other.doubled)
            .map(|(a, b)| {
                let s = a + b;
                (s % 2 == 0).then_some(s / 2)
            })
            .collect::<Option<Vec<_>>>()
            .map(|doubled| HalfLabeling { doubled })
    }
}

impl fmt::Display for HalfLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.doubled.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match d {
                0 => write!(f, "0")?,
                1 => write!(f, "½")?,
                _ => write!(f, "1")?,
            }
        }
        write!(f, ")")
    }
}
