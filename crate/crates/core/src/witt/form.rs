//! Diagonal forms over `E = k((x1))...((xn))` with monomial entries.
//!
//! The square class of a monomial `x1^a1 ... xn^an` is the vector
//! `(a1, ..., an) mod 2`; the zero vector is the class of `1`. The Witt
//! class of `<a1, ..., am>` is `theta = X^a1 + ... + X^am` in `F2[V]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{bitstring, check_dim, F2Vector, GroupAlgebraElement};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiagonalForm {
    dim: u8,
    entries: Vec<u32>,
}

impl DiagonalForm {
    pub fn new<I: IntoIterator<Item = F2Vector>>(n: usize, entries: I) -> Result<Self> {
        let dim = check_dim(n)?;
        let mut bits = Vec::new();
        for v in entries {
            if v.dim() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: v.dim(),
                });
            }
            bits.push(v.bits());
        }
        Ok(Self { dim, entries: bits })
    }

    pub fn from_bits(n: usize, entries: Vec<u32>) -> Result<Self> {
        let dim = check_dim(n)?;
        if let Some(&bad) = entries.iter().find(|&&b| b >> n != 0) {
            return Err(Error::BitsOutOfRange { dim: n, bits: bad });
        }
        Ok(Self { dim, entries })
    }

    /// Number of variables `n`.
    pub fn ambient_dim(&self) -> usize {
        self.dim as usize
    }

    /// Dimension of the form (number of diagonal entries).
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl ExactSizeIterator<Item = F2Vector> + '_ {
        self.entries.iter().map(move |&b| F2Vector::from_raw(self.dim, b))
    }

    pub fn entry_bits(&self) -> &[u32] {
        &self.entries
    }

    pub fn discriminant(&self) -> F2Vector {
        F2Vector::from_raw(self.dim, self.entries.iter().fold(0, |a, &b| a ^ b))
    }

    /// The Witt class in `F2[V]`; repeated entries cancel in pairs.
    pub fn theta(&self) -> GroupAlgebraElement {
        GroupAlgebraElement::from_raw_multiset(self.dim, self.entries.clone())
    }

    /// The anisotropic part: one entry per support vector of `theta`, sorted.
    pub fn anisotropic_part(&self) -> DiagonalForm {
        Self {
            dim: self.dim,
            entries: self.theta().support_bits().to_vec(),
        }
    }

    /// Anisotropic over `E` iff the entries are pairwise distinct classes.
    pub fn is_anisotropic(&self) -> bool {
        self.repeated_entry().is_none()
    }

    pub(crate) fn repeated_entry(&self) -> Option<F2Vector> {
        let mut sorted = self.entries.clone();
        sorted.sort_unstable();
        sorted
            .windows(2)
            .find(|w| w[0] == w[1])
            .map(|w| F2Vector::from_raw(self.dim, w[0]))
    }

    /// `<v> * f`: adds `v` to every entry.
    pub fn scaled(&self, v: &F2Vector) -> Result<Self> {
        if v.dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                left: self.ambient_dim(),
                right: v.dim(),
            });
        }
        Ok(Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&b| b ^ v.bits()).collect(),
        })
    }

    /// Orthogonal sum: concatenation of the entries.
    pub fn orthogonal_sum(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.ambient_dim(),
                right: other.ambient_dim(),
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    /// Parses a comma- or whitespace-separated list of entries, see [`parse_entry`].
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let entries = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .map(|t| t.trim_matches(|c| c == '<' || c == '>'))
            .filter(|t| !t.is_empty())
            .map(|t| parse_entry(n, t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, entries)
    }
}

/// Parses one square class over `x1..xn`.
///
/// Accepted: `1` (the trivial class), monomial words such as `x1*x3` or
/// `x2^3*x5` (exponents taken mod 2), `x0` for `x1*...*xn`, or a bitstring
/// of length `n` with `e1` first. A token containing `x`, or equal to `1`,
/// is read as a monomial.
pub fn parse_entry(n: usize, token: &str) -> Result<F2Vector> {
    check_dim(n)?;
    let token = token.trim();
    if token == "1" {
        return F2Vector::zero(n);
    }
    if !token.contains('x') {
        let v = F2Vector::parse_bitstring(token)?;
        if v.dim() != n {
            return Err(Error::Parse(format!(
                "bitstring {token:?} has length {}, expected {n}",
                v.dim()
            )));
        }
        return Ok(v);
    }
    let mut acc = F2Vector::zero(n)?;
    for factor in token.split('*').map(str::trim) {
        if factor == "1" {
            continue;
        }
        let (var, exp) = match factor.split_once('^') {
            Some((var, exp)) => {
                let e: u32 = exp
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                (var, e)
            }
            None => (factor, 1),
        };
        let index: usize = var
            .strip_prefix('x')
            .and_then(|i| i.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad variable {factor:?}")))?;
        if exp % 2 == 0 {
            continue;
        }
        let v = match index {
            0 => F2Vector::all_ones(n)?,
            i if i <= n => F2Vector::basis(n, i)?,
            _ => return Err(Error::Parse(format!("variable {var} exceeds x{n}"))),
        };
        acc = acc + v;
    }
    Ok(acc)
}

/// `1` or a word like `x1*x3`.
pub fn monomial_word(v: &F2Vector) -> String {
    if v.is_zero() {
        return "1".to_string();
    }
    v.indices().map(|i| format!("x{i}")).collect::<Vec<_>>().join("*")
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.entries().map(|v| monomial_word(&v)).collect();
        write!(f, "<{}>", words.join(", "))
    }
}

impl fmt::Debug for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiagonalForm(n={}, {self})", self.dim)
    }
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    n: usize,
    entries: Vec<String>,
}

impl Serialize for DiagonalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormRepr {
            n: self.ambient_dim(),
            entries: self.entries.iter().map(|&b| bitstring(self.dim, b)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagonalForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FormRepr::deserialize(d)?;
        let entries = repr
            .entries
            .iter()
            .map(|s| F2Vector::parse_bitstring(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        DiagonalForm::new(repr.n, entries).map_err(serde::de::Error::custom)
    }
}

/// The forms `q`, `q0`, `q'`, `q'0` in the variables `x1..xn`, `x0 = x1...xn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericForms {
    /// `<x1, ..., xn>`
    pub q: DiagonalForm,
    /// `<x0, x1, ..., xn>`
    pub q0: DiagonalForm,
    /// `<1, x1, ..., xn>`
    pub qp: DiagonalForm,
    /// `<1, x0, x1, ..., xn>`
    pub qp0: DiagonalForm,
}

pub fn generic_forms(n: usize) -> Result<GenericForms> {
    if n < 2 {
        return Err(Error::TooSmall {
            name: "n",
            value: n,
            min: 2,
        });
    }
    let basis: Vec<F2Vector> = (1..=n).map(|i| F2Vector::basis(n, i)).collect::<Result<_>>()?;
    let one = F2Vector::zero(n)?;
    let x0 = F2Vector::all_ones(n)?;
    let with = |prefix: &[F2Vector]| {
        DiagonalForm::new(n, prefix.iter().chain(basis.iter()).copied())
    };
    Ok(GenericForms {
        q: with(&[])?,
        q0: with(&[x0])?,
        qp: with(&[one])?,
        qp0: with(&[one, x0])?,
    })
}
