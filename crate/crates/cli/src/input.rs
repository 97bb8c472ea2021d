//! Parsing of element and form inputs from the command line.

use std::fmt;
use std::fs;
use std::ops::RangeInclusive;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use pforge_core::witt::form::parse_entry;
use pforge_core::{generic_forms, xi_e, DiagonalForm, GroupAlgebraElement};

/// An inclusive range of dimensions: `5`, `2..5` or `2-5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NRange {
    pub lo: usize,
    pub hi: usize,
}

impl NRange {
    pub fn new(lo: usize, hi: usize) -> Self {
        Self { lo, hi }
    }

    pub fn single(n: usize) -> Self {
        Self { lo: n, hi: n }
    }

    pub fn iter(&self) -> RangeInclusive<usize> {
        self.lo..=self.hi
    }

    /// The single value, or an error naming `what` if this is a proper range.
    pub fn exactly_one(&self, what: &str) -> Result<usize> {
        if self.lo != self.hi {
            bail!("{what} needs a single --n, got {self}");
        }
        Ok(self.lo)
    }
}

impl FromStr for NRange {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| -> Result<usize> {
            t.trim().parse().with_context(|| format!("bad dimension {t:?}"))
        };
        let (lo, hi) = match s.split_once("..=").or_else(|| s.split_once("..")).or_else(|| s.split_once('-')) {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if lo > hi {
            bail!("empty range {s:?}");
        }
        Ok(Self { lo, hi })
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

/// Named elements and forms in `x1..xn`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Generic {
    /// `n + 1 + X^e0 + X^e1 + ... + X^en`, `e0 = e1 + ... + en`
    Xi,
    /// `<x1, ..., xn>`
    Q,
    /// `<x0, x1, ..., xn>`
    Q0,
    /// `<1, x1, ..., xn>`
    Qp,
    /// `<1, x0, x1, ..., xn>`
    Qp0,
}

/// What `pf` was asked about. Forms are reduced to their Witt class.
#[derive(Clone, Debug)]
pub enum Input {
    Element(GroupAlgebraElement),
    Form(DiagonalForm),
}

impl Input {
    pub fn class(&self) -> GroupAlgebraElement {
        match self {
            Input::Element(x) => x.clone(),
            Input::Form(f) => f.theta(),
        }
    }

    /// Multiplies by `X^v` (scales a form by `<v>`).
    pub fn scaled(&self, word: &str) -> Result<Input> {
        Ok(match self {
            Input::Element(x) => {
                let v = parse_entry(x.dim(), word)?;
                Input::Element(x.scale(&v)?)
            }
            Input::Form(f) => {
                let v = parse_entry(f.ambient_dim(), word)?;
                Input::Form(f.scaled(&v)?)
            }
        })
    }

    pub fn describe(&self) -> String {
        match self {
            Input::Element(x) => x.to_string(),
            Input::Form(f) => f.to_string(),
        }
    }
}

/// Parses `--element`: a canonical key (`3:000,011`), a JSON object with
/// `n` and `support` (or `entries` for a form), or `@path` to read either
/// from a file.
pub fn parse_element(text: &str) -> Result<Input> {
    let text = match text.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
        None => text.to_string(),
    };
    let text = text.trim();
    if text.starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(text).context("parsing JSON input")?;
        return Ok(if value.get("entries").is_some() {
            Input::Form(serde_json::from_value(value).context("parsing form")?)
        } else {
            Input::Element(serde_json::from_value(value).context("parsing element")?)
        });
    }
    Ok(Input::Element(
        GroupAlgebraElement::parse_canonical_key(text).context("parsing canonical key")?,
    ))
}

pub fn parse_form(n: usize, text: &str) -> Result<Input> {
    Ok(Input::Form(DiagonalForm::parse(n, text)?))
}

pub fn generic(n: usize, which: Generic) -> Result<Input> {
    if which == Generic::Xi {
        return Ok(Input::Element(xi_e(n)?));
    }
    let g = generic_forms(n)?;
    Ok(Input::Form(match which {
        Generic::Q => g.q,
        Generic::Q0 => g.q0,
        Generic::Qp => g.qp,
        Generic::Qp0 => g.qp0,
        Generic::Xi => unreachable!(),
    }))
}
