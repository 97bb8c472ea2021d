//! Pfister decompositions and Pfister numbers in `F2[V]`.
//!
//! `Pf_1` has a closed form in terms of the support. `Pf_2` is computed by
//! an exact search over 2-dimensional subspaces (see [`pf2_exact`]); the
//! result is either certified exact or reported as a bounded interval.

mod mim;
mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{F2Vector, GroupAlgebraElement, LinearMap, PfisterElement};
use crate::error::{Error, Result};
use crate::linalg::XorBasis;

pub(crate) use search::Plane;

/// A list of `m`-fold Pfister elements. Its value is the sum of their expansions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    dim: u8,
    fold: usize,
    terms: Vec<PfisterElement>,
}

impl Decomposition {
    pub fn new(dim: usize, fold: usize, terms: Vec<PfisterElement>) -> Result<Self> {
        let d = crate::algebra::check_dim(dim)?;
        if fold == 0 {
            return Err(Error::EmptyPfister);
        }
        for t in &terms {
            if t.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: t.dim(),
                });
            }
            if t.fold() != fold {
                return Err(Error::Parse(format!(
                    "term of fold {} in a {fold}-fold decomposition",
                    t.fold()
                )));
            }
        }
        Ok(Self {
            dim: d,
            fold,
            terms,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn fold(&self) -> usize {
        self.fold
    }

    pub fn terms(&self) -> &[PfisterElement] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of the term expansions.
    pub fn sum(&self) -> GroupAlgebraElement {
        let mut acc = GroupAlgebraElement::zero(self.dim()).expect("valid dimension");
        for t in &self.terms {
            acc = acc.add(&t.expand()).expect("terms share the dimension");
        }
        acc
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            f.write_str("<<")?;
            for (j, g) in t.generators().iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{g}")?;
            }
            f.write_str(">>")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct DecompositionRepr {
    n: usize,
    fold: usize,
    terms: Vec<Vec<F2Vector>>,
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DecompositionRepr {
            n: self.dim(),
            fold: self.fold,
            terms: self.terms.iter().map(|t| t.generators().to_vec()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Decomposition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = DecompositionRepr::deserialize(d)?;
        let terms = repr
            .terms
            .into_iter()
            .map(PfisterElement::new)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Decomposition::new(repr.n, repr.fold, terms).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Iterative deepening, branching on the least uncovered support vector.
    #[default]
    LeastUncoveredIddfs,
    /// Bidirectional breadth-first search over sums of 2-fold elements.
    MeetInMiddle,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::LeastUncoveredIddfs => "least-uncovered-iddfs",
            Strategy::MeetInMiddle => "meet-in-middle",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "iddfs" | "least-uncovered-iddfs" => Ok(Strategy::LeastUncoveredIddfs),
            "mim" | "meet-in-middle" => Ok(Strategy::MeetInMiddle),
            _ => Err(Error::Parse(format!("unknown strategy {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub node_budget: u64,
    pub strategy: Strategy,
    /// Only use 2-fold elements inside the span of the support.
    pub restrict_to_support_span: bool,
}

impl SearchConfig {
    pub const DEFAULT_BUDGET: u64 = 200_000_000;

    pub fn with_budget(node_budget: u64) -> Self {
        Self {
            node_budget,
            ..Self::default()
        }
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn restrict(mut self, on: bool) -> Self {
        self.restrict_to_support_span = on;
        self
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            node_budget: Self::DEFAULT_BUDGET,
            strategy: Strategy::default(),
            restrict_to_support_span: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStatus {
    Exact,
    Bounded,
}

/// Result of [`pf2_exact`].
///
/// An exact outcome has `lower == upper == value` and a witness with
/// `value` terms. A bounded outcome carries the certified interval and the
/// greedy decomposition realising `upper`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub value: Option<u32>,
    pub lower: u32,
    pub upper: u32,
    pub nodes_visited: u64,
    pub witness: Option<Decomposition>,
}

impl SearchOutcome {
    fn exact(value: u32, witness: Decomposition, nodes_visited: u64) -> Self {
        Self {
            status: SearchStatus::Exact,
            value: Some(value),
            lower: value,
            upper: value,
            nodes_visited,
            witness: Some(witness),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.status == SearchStatus::Exact
    }

    /// The exact value, or the bounds as an error.
    pub fn exact_value(&self) -> Result<u32> {
        self.value.ok_or(Error::BudgetExhausted {
            lower: self.lower,
            upper: self.upper,
        })
    }
}

fn require_fundamental(x: &GroupAlgebraElement) -> Result<()> {
    if x.in_fundamental_ideal() {
        Ok(())
    } else {
        Err(Error::NotInFundamentalIdeal)
    }
}

fn require_i2(x: &GroupAlgebraElement) -> Result<()> {
    if x.epsilon0() {
        Err(Error::NotInI2("support size is odd"))
    } else if !x.epsilon1().is_zero() {
        Err(Error::NotInI2("epsilon1 is nonzero"))
    } else {
        Ok(())
    }
}

/// `xi_e = n + 1 + sum_{i=0}^{n} X^{e_i}` with `e_0 = e_1 + ... + e_n`.
pub fn xi_e(n: usize) -> Result<GroupAlgebraElement> {
    if n < 2 {
        return Err(Error::TooSmall {
            name: "n",
            value: n,
            min: 2,
        });
    }
    let mut vectors = vec![F2Vector::all_ones(n)?];
    for i in 1..=n {
        vectors.push(F2Vector::basis(n, i)?);
    }
    if n.is_multiple_of(2) {
        vectors.push(F2Vector::zero(n)?);
    }
    GroupAlgebraElement::from_vectors(n, vectors)
}

/// `Pf_1(x)`: `|D(x)|`, minus one when `0` is in the support.
pub fn pf1_exact(x: &GroupAlgebraElement) -> Result<u32> {
    require_fundamental(x)?;
    Ok((x.support_len() - usize::from(x.contains_zero())) as u32)
}

/// `x = sum_{v in D(x), v != 0} (1 + X^v)`.
pub fn decompose_pf1(x: &GroupAlgebraElement) -> Result<Decomposition> {
    require_fundamental(x)?;
    let terms = x
        .support()
        .filter(|v| !v.is_zero())
        .map(|v| PfisterElement::new(vec![v]))
        .collect::<Result<Vec<_>>>()?;
    Decomposition::new(x.dim(), 1, terms)
}

/// Decomposes `x` into 2-fold elements by repeatedly peeling off
/// `(1 + X^u)(1 + X^v)` for the two smallest nonzero support vectors.
///
/// Uses at most `|D(x)| - 2` terms, and `|D(x)| - 3` when `0 in D(x)`.
pub fn decompose_pf2_greedy(x: &GroupAlgebraElement) -> Result<Decomposition> {
    require_i2(x)?;
    let dim = x.dim();
    let mut residual = x.clone();
    let mut terms = Vec::new();
    while !residual.is_zero() {
        let (u, v) = {
            let mut nonzero = residual.support().filter(|v| !v.is_zero());
            match (nonzero.next(), nonzero.next()) {
                (Some(u), Some(v)) => (u, v),
                // ε0 = ε1 = 0 forces |D| >= 4 for a nonzero residual.
                _ => unreachable!("nonzero element of I^2 with under two nonzero vectors"),
            }
        };
        let term = PfisterElement::two_fold(u, v)?;
        residual = residual.add(&term.expand())?;
        terms.push(term);
    }
    Decomposition::new(dim, 2, terms)
}

/// Upper bound `|D(x)| - 2`, or `|D(x)| - 3` when `0 in D(x)`, for nonzero `x` in `I^2`.
pub fn pf2_upper(x: &GroupAlgebraElement) -> Result<u32> {
    require_i2(x)?;
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let d = x.support_len() as u32;
    Ok(if x.contains_zero() { d - 3 } else { d - 2 })
}

/// True iff the terms of `d` sum to `x`.
pub fn verify_decomposition(x: &GroupAlgebraElement, d: &Decomposition) -> bool {
    d.dim() == x.dim() && d.sum() == *x
}

/// Lower bound that needs no search: each 2-fold element has four support
/// vectors, three of them nonzero, and a single term must contain `0`.
fn trivial_lower(x: &GroupAlgebraElement) -> u32 {
    if x.is_zero() {
        return 0;
    }
    let len = x.support_len() as u32;
    let nonzero = len - u32::from(x.contains_zero());
    let mut lower = len.div_ceil(4).max(nonzero.div_ceil(3)).max(1);
    if lower == 1 && !x.contains_zero() {
        lower = 2;
    }
    lower
}

pub(crate) enum RunOutcome {
    /// A decomposition in reduced coordinates, of minimal length below `upper`.
    Found(Vec<Plane>),
    /// No decomposition with fewer than `upper` terms exists.
    NoneBelowUpper,
    /// Budget exhausted; the value is at least the payload.
    Exhausted(u32),
}

pub(crate) struct RunResult {
    pub outcome: RunOutcome,
    pub nodes: u64,
}

/// Exact `Pf_2(x)` by search.
///
/// Candidate terms are 2-dimensional subspaces `{0, u, v, u + v}`; with
/// `restrict_to_support_span` they are limited to the span of `D(x)`, which
/// is lossless because projecting onto the span fixes `x` and cannot
/// increase a Pfister number. The search is certified: it either proves the
/// minimum or returns [`SearchStatus::Bounded`] once `node_budget` nodes
/// have been expanded.
pub fn pf2_exact(x: &GroupAlgebraElement, cfg: &SearchConfig) -> Result<SearchOutcome> {
    require_i2(x)?;
    if cfg.node_budget == 0 {
        return Err(Error::ZeroBudget);
    }
    let dim = x.dim();
    if x.is_zero() {
        return Ok(SearchOutcome::exact(0, Decomposition::new(dim, 2, vec![])?, 0));
    }
    let greedy = decompose_pf2_greedy(x)?;
    let upper = greedy.len() as u32;
    let lower = trivial_lower(x);
    if lower >= upper {
        return Ok(SearchOutcome::exact(upper, greedy, 0));
    }

    let basis = if cfg.restrict_to_support_span {
        XorBasis::from_vectors(x.support_bits().iter().copied())
    } else {
        XorBasis::from_vectors((0..dim).map(|k| 1u32 << k))
    };
    let mut reduced: Vec<u32> = x
        .support_bits()
        .iter()
        .map(|&b| basis.coords(b).expect("support lies in its span"))
        .collect();
    reduced.sort_unstable();
    let rank = basis.rank() as u32;

    let run = match cfg.strategy {
        Strategy::LeastUncoveredIddfs => {
            search::run(rank, &reduced, lower, upper, cfg.node_budget)
        }
        Strategy::MeetInMiddle => mim::run(rank, &reduced, lower, upper, cfg.node_budget),
    };

    match run.outcome {
        RunOutcome::Found(planes) => {
            let terms = planes
                .iter()
                .map(|&(a, b)| {
                    PfisterElement::two_fold(
                        F2Vector::from_raw(x.dim_u8(), basis.from_coords(a)),
                        F2Vector::from_raw(x.dim_u8(), basis.from_coords(b)),
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            let witness = Decomposition::new(dim, 2, terms)?;
            debug_assert!(verify_decomposition(x, &witness));
            Ok(SearchOutcome::exact(planes.len() as u32, witness, run.nodes))
        }
        RunOutcome::NoneBelowUpper => Ok(SearchOutcome::exact(upper, greedy, run.nodes)),
        RunOutcome::Exhausted(proven) => Ok(SearchOutcome {
            status: SearchStatus::Bounded,
            value: None,
            lower: proven.max(lower),
            upper,
            nodes_visited: run.nodes.min(cfg.node_budget),
            witness: Some(greedy),
        }),
    }
}

/// Exact `Pf_2(phi_*(x))`, which bounds `Pf_2(x)` from below.
pub fn projection_lower_bound(
    x: &GroupAlgebraElement,
    phi: &LinearMap,
    cfg: &SearchConfig,
) -> Result<u32> {
    require_i2(x)?;
    let image = x.pushforward(phi)?;
    pf2_exact(&image, cfg)?.exact_value()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> F2Vector {
        F2Vector::basis(n, i).unwrap()
    }

    fn el(n: usize, vs: &[F2Vector]) -> GroupAlgebraElement {
        GroupAlgebraElement::from_vectors(n, vs.iter().copied()).unwrap()
    }

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn xi_e_supports() {
        let z = F2Vector::zero(2).unwrap();
        assert_eq!(xi_e(2).unwrap(), el(2, &[z, e(2, 1) + e(2, 2), e(2, 1), e(2, 2)]));
        let e0 = F2Vector::all_ones(3).unwrap();
        assert_eq!(xi_e(3).unwrap(), el(3, &[e0, e(3, 1), e(3, 2), e(3, 3)]));
        for n in 2..=10 {
            let x = xi_e(n).unwrap();
            assert!(!x.epsilon0());
            assert!(x.epsilon1().is_zero());
            assert_eq!(x.support_len(), if n % 2 == 0 { n + 2 } else { n + 1 });
        }
        assert!(matches!(xi_e(1), Err(Error::TooSmall { .. })));
    }

    #[test]
    fn pf1_examples() {
        let z = F2Vector::zero(2).unwrap();
        assert_eq!(pf1_exact(&GroupAlgebraElement::zero(2).unwrap()).unwrap(), 0);
        assert_eq!(pf1_exact(&el(2, &[e(2, 1), e(2, 2)])).unwrap(), 2);
        assert_eq!(pf1_exact(&el(2, &[z, e(2, 1), e(2, 2), e(2, 1) + e(2, 2)])).unwrap(), 3);
        assert!(matches!(pf1_exact(&el(2, &[e(2, 1)])), Err(Error::NotInFundamentalIdeal)));
    }

    #[test]
    fn decompose_pf1_examples() {
        let z = F2Vector::zero(2).unwrap();
        let x = el(2, &[e(2, 1), e(2, 2)]);
        let d = decompose_pf1(&x).unwrap();
        assert_eq!(d.fold(), 1);
        let gens: Vec<_> = d.terms().iter().map(|t| t.generators().to_vec()).collect();
        assert_eq!(gens, vec![vec![e(2, 2)], vec![e(2, 1)]]);
        assert!(verify_decomposition(&x, &d));

        let y = el(2, &[z, e(2, 1)]);
        let d = decompose_pf1(&y).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.terms()[0].generators(), &[e(2, 1)]);

        assert!(decompose_pf1(&GroupAlgebraElement::zero(2).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn greedy_examples() {
        let d = decompose_pf2_greedy(&xi_e(2).unwrap()).unwrap();
        assert_eq!(d.len(), 1);
        assert!(decompose_pf2_greedy(&GroupAlgebraElement::zero(3).unwrap())
            .unwrap()
            .is_empty());
        let z = F2Vector::zero(4).unwrap();
        let (a, b) = (e(4, 1) + e(4, 3), e(4, 2));
        let x = el(4, &[z, a, b, a + b]);
        assert_eq!(decompose_pf2_greedy(&x).unwrap().len(), 1);
        assert!(matches!(
            decompose_pf2_greedy(&el(4, &[z, a])),
            Err(Error::NotInI2(_))
        ));
    }

    #[test]
    fn upper_bound_examples() {
        for n in 2..=9 {
            assert_eq!(pf2_upper(&xi_e(n).unwrap()).unwrap(), (n - 1) as u32);
        }
        let z = F2Vector::zero(3).unwrap();
        let x = el(3, &[z, e(3, 1), e(3, 2), e(3, 1) + e(3, 2)]);
        assert_eq!(pf2_upper(&x).unwrap(), 1);
        assert!(matches!(
            pf2_upper(&GroupAlgebraElement::zero(3).unwrap()),
            Err(Error::ZeroElement)
        ));
    }

    #[test]
    fn verify_examples() {
        let plane = PfisterElement::two_fold(e(2, 1), e(2, 2)).unwrap();
        let d = Decomposition::new(2, 2, vec![plane]).unwrap();
        assert!(verify_decomposition(&xi_e(2).unwrap(), &d));

        let empty = Decomposition::new(3, 2, vec![]).unwrap();
        assert!(verify_decomposition(&GroupAlgebraElement::zero(3).unwrap(), &empty));
        assert!(!verify_decomposition(&xi_e(3).unwrap(), &empty));

        let plane3 = PfisterElement::two_fold(e(3, 1), e(3, 2)).unwrap();
        let d3 = Decomposition::new(3, 2, vec![plane3]).unwrap();
        assert!(!verify_decomposition(&xi_e(3).unwrap(), &d3));
        assert!(!verify_decomposition(&xi_e(2).unwrap(), &d3));
    }

    #[test]
    fn pf2_exact_examples() {
        let out = pf2_exact(&xi_e(3).unwrap(), &cfg()).unwrap();
        assert_eq!(out.value, Some(2));
        let out = pf2_exact(&xi_e(4).unwrap(), &cfg()).unwrap();
        assert_eq!(out.value, Some(3));
        assert!(out.nodes_visited > 0);
        let plane = PfisterElement::two_fold(e(4, 1) + e(4, 2), e(4, 4)).unwrap().expand();
        assert_eq!(pf2_exact(&plane, &cfg()).unwrap().value, Some(1));
        let zero = GroupAlgebraElement::zero(4).unwrap();
        let out = pf2_exact(&zero, &cfg()).unwrap();
        assert_eq!(out.value, Some(0));
        assert!(out.witness.unwrap().is_empty());
    }

    #[test]
    fn pf2_exact_rejects_outside_i2() {
        let x = el(3, &[F2Vector::zero(3).unwrap(), e(3, 1)]);
        assert!(matches!(pf2_exact(&x, &cfg()), Err(Error::NotInI2(_))));
        assert!(matches!(
            pf2_exact(&xi_e(3).unwrap(), &SearchConfig::with_budget(0)),
            Err(Error::ZeroBudget)
        ));
    }

    #[test]
    fn both_strategies_agree_on_xi_e() {
        for n in 2..=5 {
            let x = xi_e(n).unwrap();
            for strategy in [Strategy::LeastUncoveredIddfs, Strategy::MeetInMiddle] {
                let out = pf2_exact(&x, &cfg().strategy(strategy)).unwrap();
                assert_eq!(out.value, Some(n as u32 - 1), "n={n} {strategy}");
                assert!(verify_decomposition(&x, out.witness.as_ref().unwrap()));
            }
        }
    }

    #[test]
    fn tiny_budget_is_bounded() {
        for strategy in [Strategy::LeastUncoveredIddfs, Strategy::MeetInMiddle] {
            let x = xi_e(6).unwrap();
            let out = pf2_exact(&x, &SearchConfig::with_budget(1).strategy(strategy)).unwrap();
            assert_eq!(out.status, SearchStatus::Bounded);
            assert_eq!(out.value, None);
            assert!(out.lower <= out.upper);
            assert_eq!(out.upper, 5);
            assert!(verify_decomposition(&x, out.witness.as_ref().unwrap()));
            assert!(matches!(out.exact_value(), Err(Error::BudgetExhausted { .. })));
        }
    }

    #[test]
    fn projection_examples() {
        let x3 = xi_e(3).unwrap();
        assert_eq!(
            projection_lower_bound(&x3, &LinearMap::identity(3).unwrap(), &cfg()).unwrap(),
            2
        );
        for n in 3..=6 {
            let x = xi_e(n).unwrap();
            let phi = LinearMap::drop_last(n).unwrap();
            assert_eq!(x.pushforward(&phi).unwrap(), xi_e(n - 1).unwrap());
            assert_eq!(projection_lower_bound(&x, &phi, &cfg()).unwrap(), (n - 2) as u32);
        }
        let zero_map = LinearMap::zero(4, 2).unwrap();
        assert_eq!(projection_lower_bound(&xi_e(4).unwrap(), &zero_map, &cfg()).unwrap(), 0);
    }

    #[test]
    fn decomposition_serde_layout() {
        let plane = PfisterElement::two_fold(e(2, 1), e(2, 2)).unwrap();
        let d = Decomposition::new(2, 2, vec![plane]).unwrap();
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"n":2,"fold":2,"terms":[["10","01"]]}"#);
        let back: Decomposition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<Decomposition>(r#"{"n":2,"fold":2,"terms":[["10"]]}"#)
            .is_err());
    }

    #[test]
    fn strategy_names_parse() {
        for s in [Strategy::LeastUncoveredIddfs, Strategy::MeetInMiddle] {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        assert_eq!("mim".parse::<Strategy>().unwrap(), Strategy::MeetInMiddle);
        assert!("dfs".parse::<Strategy>().is_err());
    }
}
