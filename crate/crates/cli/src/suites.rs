//! Verification suites run by `pforge verify`.
//!
//! Inputs are drawn from a ChaCha stream keyed by the seed and the suite,
//! then evaluated in parallel and reported in input order, so equal seeds
//! and flags give identical output.

use std::collections::VecDeque;

use anyhow::{bail, Result};
use itertools::Itertools;
use pforge_core::linalg::XorBasis;
use pforge_core::{
    decompose_pf1, decompose_pf2_greedy, enumerate_dim6, generic_forms, pf1_exact, pf2_le3_witness,
    verify_decomposition, w4, xi_e, DiagonalForm, Error, F2Vector, GroupAlgebraElement, LinearMap,
    SearchConfig, Strategy,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::input::NRange;
use crate::solver::Solver;

pub const SUITES: &[&str] = &[
    "prop-pf1",
    "prop-pf2",
    "cor-i2",
    "greedy-bound",
    "thm3",
    "remark-scaling",
    "scaling-chain",
    "dim6-w4",
    "dim6-le3",
    "pushforward",
    "subform-scaling",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Human,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub node_budget: u64,
    pub strategy: Strategy,
    /// Overrides the suite's default number of random cases.
    pub trials: Option<usize>,
    /// Overrides the suite's default dimensions.
    pub n: Option<NRange>,
    pub output: Output,
}

impl RunConfig {
    pub fn search(&self) -> SearchConfig {
        SearchConfig::with_budget(self.node_budget).strategy(self.strategy)
    }

    fn rng(&self, suite: &str) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let stream = SUITES.iter().position(|s| *s == suite).unwrap_or(SUITES.len());
        rng.set_stream(stream as u64);
        rng
    }

    fn dims(&self, default: NRange, allowed: NRange, suite: &str) -> Result<NRange> {
        let n = self.n.unwrap_or(default);
        if n.lo < allowed.lo || n.hi > allowed.hi {
            bail!("{suite} supports n in {allowed}, got {n}");
        }
        Ok(n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub suite: &'static str,
    pub case: String,
    pub status: CaseStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

impl Summary {
    pub fn of(results: &[CaseResult]) -> Self {
        let mut s = Summary::default();
        for r in results {
            match r.status {
                CaseStatus::Pass => s.passed += 1,
                CaseStatus::Fail => s.failed += 1,
                CaseStatus::Inconclusive => s.inconclusive += 1,
            }
        }
        s
    }

    /// 0 when everything passed, 1 on any failure, else 2.
    pub fn exit_code(&self) -> i32 {
        if self.failed > 0 {
            1
        } else if self.inconclusive > 0 {
            2
        } else {
            0
        }
    }
}

type Check = pforge_core::Result<(bool, String)>;

fn evaluate<T: Sync>(
    suite: &'static str,
    inputs: Vec<(String, T)>,
    check: impl Fn(&T) -> Check + Sync,
) -> Vec<CaseResult> {
    inputs
        .par_iter()
        .map(|(case, input)| {
            let (status, detail) = match check(input) {
                Ok((true, detail)) => (CaseStatus::Pass, detail),
                Ok((false, detail)) => (CaseStatus::Fail, detail),
                Err(Error::BudgetExhausted { lower, upper }) => (
                    CaseStatus::Inconclusive,
                    format!("node budget exhausted with {lower} <= Pf2 <= {upper}"),
                ),
                Err(e) => (CaseStatus::Fail, format!("error: {e}")),
            };
            CaseResult {
                suite,
                case: case.clone(),
                status,
                detail,
            }
        })
        .collect()
}

fn exact(solver: &Solver, x: &GroupAlgebraElement) -> pforge_core::Result<u32> {
    let r = solver.pf2(x)?;
    r.value.ok_or(Error::BudgetExhausted {
        lower: r.lower,
        upper: r.upper,
    })
}

fn expect(value: u32, want: u32) -> Check {
    Ok((value == want, format!("Pf2 = {value}, expected {want}")))
}

fn from_mask(n: usize, mask: u64) -> GroupAlgebraElement {
    let bits = (0..1u32 << n).filter(|&v| mask >> v & 1 == 1);
    GroupAlgebraElement::from_bits(n, bits).expect("mask fits in 2^n bits")
}

/// A random element of `I[V]`, uniform over even-size supports.
fn random_i(rng: &mut ChaCha8Rng, n: usize) -> GroupAlgebraElement {
    let size = 1u32 << n;
    let mut bits: Vec<u32> = (0..size).filter(|_| rng.gen_bool(0.5)).collect();
    if bits.len() % 2 == 1 {
        let v = rng.gen_range(0..size);
        match bits.binary_search(&v) {
            Ok(i) => {
                bits.remove(i);
            }
            Err(i) => bits.insert(i, v),
        }
    }
    GroupAlgebraElement::from_bits(n, bits).expect("bits fit")
}

/// A random element of `I^2[V]` whose support has random density.
fn random_i2(rng: &mut ChaCha8Rng, n: usize) -> GroupAlgebraElement {
    let size = 1u32 << n;
    let p = rng.gen_range(0.05..0.6);
    let mut bits: Vec<u32> = (0..size).filter(|_| rng.gen_bool(p)).collect();
    let s = bits.iter().fold(0, |a, &b| a ^ b);
    match bits.binary_search(&s) {
        Ok(i) => {
            bits.remove(i);
        }
        Err(i) => bits.insert(i, s),
    }
    if bits.len() % 2 == 1 {
        match bits.first() {
            Some(0) => {
                bits.remove(0);
            }
            _ => bits.insert(0, 0),
        }
    }
    GroupAlgebraElement::from_bits(n, bits).expect("bits fit")
}

/// Breadth-first distances from 0 in the Cayley graph of `F2^(2^n)`
/// generated by the 1-fold elements `{0, v}`.
fn pf1_table(n: usize) -> Vec<u8> {
    let states = 1usize << (1 << n);
    let gens: Vec<usize> = (1..1usize << n).map(|v| 1 | 1 << v).collect();
    let mut dist = vec![u8::MAX; states];
    dist[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        for g in &gens {
            let t = s ^ g;
            if dist[t] == u8::MAX {
                dist[t] = dist[s] + 1;
                queue.push_back(t);
            }
        }
    }
    dist
}

fn prop_pf1(cfg: &RunConfig) -> Result<Vec<CaseResult>> {
    let dims = cfg.dims(NRange::new(2, 4), NRange::new(1, 4), "prop-pf1")?;
    let trials = cfg.trials.unwrap_or(200);
    let mut rng = cfg.rng("prop-pf1");
    let mut inputs = Vec::new();
    for n in dims.iter() {
        let table = pf1_table(n);
        for _ in 0..trials {
            let x = random_i(&mut rng, n);
            let mask = x.support_bits().iter().fold(0usize, |m, &v| m | 1 << v);
            inputs.push((x.canonical_key(), (x, table[mask] as u32)));
        }
    }
    Ok(evaluate("prop-pf1", inputs, |(x, brute)| {
        let value = pf1_exact(x)?;
        let d = decompose_pf1(x)?;
        let ok = value == *brute && d.len() as u32 == value && verify_decomposition(x, &d);
        Ok((ok, format!("Pf1 = {value}, brute force {brute}")))
    }))
}

fn prop_pf2(cfg: &RunConfig, solver: &Solver) -> Result<Vec<CaseResult>> {
    let dims = cfg.dims(NRange::new(2, 5), NRange::new(2, 8), "prop-pf2")?;
    let inputs = dims.iter().map(|n| (format!("xi_e n={n}"), n)).collect();
    Ok(evaluate("prop-pf2", inputs, |&n| expect(exact(solver, &xi_e(n)?)?, n as u32 - 1)))
}

fn cor_i2(cfg: &RunConfig) -> Result<Vec<CaseResult>> {
    let dims = cfg.dims(NRange::single(3), NRange::new(1, 4), "cor-i2")?;
    let mut inputs = Vec::new();
    for n in dims.iter() {
        let size = 1u32 << n;
        // Span of the supports of all 2-fold elements, as masks over V.
        let planes = (1..size)
            .tuple_combinations()
            .map(|(u, v)| 1u32 | 1 << u | 1 << v | 1 << (u ^ v));
        let span = XorBasis::from_vectors(planes);
        for mask in 0..1u64 << size {
            inputs.push((
                from_mask(n, mask).canonical_key(),
                (from_mask(n, mask), span.contains(mask as u32)),
            ));
        }
    }
    Ok(evaluate("cor-i2", inputs, |(x, decomposable)| {
        let in_i2 = x.in_i2();
        let mut ok = in_i2 == *decomposable;
        if in_i2 {
            ok &= verify_decomposition(x, &decompose_pf2_greedy(x)?);
        }
        Ok((ok, format!("in I^2: {in_i2}, sum of 2-fold elements: {decomposable}")))
    }))
}

fn greedy_bound(cfg: &RunConfig) -> Result<Vec<CaseResult>> {
    let dims = cfg.dims(NRange::new(2, 8), NRange::new(1, 12), "greedy-bound")?;
    let trials = cfg.trials.unwrap_or(500);
    let mut rng = cfg.rng("greedy-bound");
    let inputs = (0..trials)
        .map(|_| {
            let n = rng.gen_range(dims.iter());
            let x = random_i2(&mut rng, n);
            (x.canonical_key(), x)
        })
        .collect();
    Ok(evaluate("greedy-bound", inputs, |x| {
        let d = decompose_pf2_greedy(x)?;
        let size = x.support_len();
        let bound = match (size, x.contains_zero()) {
            (0, _) => 0,
            (s, true) => s - 3,
            (s, false) => s - 2,
        };
        let ok = verify_decomposition(x, &d) && d.len() <= bound;
        Ok((ok, format!("{} terms, |D| = {size}, bound {bound}", d.len())))
    }))
}

fn thm3(cfg: &RunConfig, solver: &Solver) -> Result<Vec<CaseResult>> {
    let dims = cfg.dims(NRange::new(2, 6), NRange::new(2, 8), "thm3")?;
    let mut inputs = Vec::new();
    for n in dims.iter() {
        let g = generic_forms(n)?;
        let (one, two) = if n % 2 == 0 { (g.q, g.qp0) } else { (g.qp, g.q0) };
        let (a, b) = if n % 2 == 0 { ("q", "q'0") } else { ("q'", "q0") };
        inputs.push((format!("Pf1({a}) n={n}"), (1, one, n as u32)));
        inputs.push((format!("Pf2({b}) n={n}"), (2, two, n as u32 - 1)));
    }
    Ok(evaluate("thm3", inputs, |(m, f, want)| {
        let x = f.theta();
        if *m == 1 {
            let value = pf1_exact(&x)?;
            return Ok((value == *want, format!("Pf1 = {value}, expected {want}")));
        }
        expect(exact(solver, &x)?, *want)
    }))
}

fn remark_scaling(cfg: &RunConfig, solver: &Solver) -> Result<Vec<CaseResult>> {
    let dims = cfg.dims(NRange::new(3, 5), NRange::new(3, 7), "remark-scaling")?;
    let inputs = dims
        .iter()
        .filter(|n| n % 2 == 1)
        .map(|n| (format!("Pf2(<x1>q0) n={n}"), n))
        .collect();
    Ok(evaluate("remark-scaling", inputs, |&n| {
        let x = generic_forms(n)?.q0.theta().scale(&F2Vector::basis(n, 1)?)?;
        expect(exact(solver, &x)?, n as u32 - 2)
    }))
}

fn scaling_chain(cfg: &RunConfig, solver: &Solver) -> Result<Vec<CaseResult>> {
    if cfg.n.is_some_and(|n| n != NRange::single(5)) {
        bail!("scaling-chain is defined at n = 5 only");
    }
    let q = generic_forms(5)?.q0;
    let inputs = vec![
        ("Pf2(q)".to_string(), ("1", 4)),
        ("Pf2(<x1>q)".to_string(), ("x1", 3)),
        ("Pf2(<x1*x2*x3>q)".to_string(), ("x1*x2*x3", 2)),
    ];
    Ok(evaluate("scaling-chain", inputs, |&(d, want)| {
        let v = pforge_core::witt::form::parse_entry(5, d)?;
        expect(exact(solver, &q.scaled(&v)?.theta())?, want)
    }))
}

fn dim6_w4(cfg: &RunConfig, solver: &Solver) -> Result<Vec<CaseResult>> {
    let dims = cfg.dims(NRange::single(4), NRange::new(3, 5), "dim6-w4")?;
    let mut inputs = Vec::new();
    for n in dims.iter() {
        inputs.extend(enumerate_dim6(n, true)?.map(|f| (f.to_string(), f)));
    }
    Ok(evaluate("dim6-w4", inputs, |f| {
        let value = exact(solver, &f.theta())?;
        let w4_zero = w4(f).is_zero();
        let ok = (value == 2) == w4_zero && (value == 3) == !w4_zero;
        Ok((ok, format!("Pf2 = {value}, w4 {}", if w4_zero { "= 0" } else { "!= 0" })))
    }))
}

fn dim6_le3(cfg: &RunConfig, solver: &Solver) -> Result<Vec<CaseResult>> {
    let dims = cfg.dims(NRange::single(5), NRange::new(3, 6), "dim6-le3")?;
    let trials = cfg.trials.unwrap_or(200);
    let mut rng = cfg.rng("dim6-le3");
    let mut inputs = Vec::new();
    for n in dims.iter() {
        let forms: Vec<DiagonalForm> = enumerate_dim6(n, false)?.collect();
        for _ in 0..trials {
            let f = forms[rng.gen_range(0..forms.len())].clone();
            inputs.push((f.to_string(), f));
        }
    }
    let search = solver.cfg;
    Ok(evaluate("dim6-le3", inputs, |f| {
        let value = exact(solver, &f.theta())?;
        let witness = pf2_le3_witness(f, &search)?;
        let verified = match &witness {
            Some(w) => w.verify(f, &search)?,
            None => true,
        };
        let ok = witness.is_some() == (value <= 3) && verified;
        let detail = match witness {
            Some(w) => format!(
                "Pf2 = {value}, witness mu={} mu'={} nu={} verified: {verified}",
                w.mu.to_bitstring(),
                w.mu_prime.to_bitstring(),
                w.nu.to_bitstring()
            ),
            None => format!("Pf2 = {value}, no witness"),
        };
        Ok((ok, detail))
    }))
}

fn pushforward(cfg: &RunConfig, solver: &Solver) -> Result<Vec<CaseResult>> {
    let dims = cfg.dims(NRange::new(2, 4), NRange::new(1, 6), "pushforward")?;
    let trials = cfg.trials.unwrap_or(200);
    let mut rng = cfg.rng("pushforward");
    let mut inputs = Vec::new();
    for _ in 0..trials {
        let n = rng.gen_range(dims.iter());
        let m = rng.gen_range(1..=dims.hi);
        let cols = (0..n).map(|_| rng.gen_range(0..1u32 << m)).collect();
        let phi = LinearMap::from_bits(n, m, cols)?;
        let x = random_i2(&mut rng, n);
        let y = random_i(&mut rng, n);
        let case = format!(
            "{} -> {}, x={}",
            n,
            phi.columns().map(|c| c.to_bitstring()).join(","),
            x.canonical_key()
        );
        inputs.push((case, (phi, x, y)));
    }
    Ok(evaluate("pushforward", inputs, |(phi, x, y)| {
        let (a, b) = (exact(solver, &x.pushforward(phi)?)?, exact(solver, x)?);
        let (c, d) = (pf1_exact(&y.pushforward(phi)?)?, pf1_exact(y)?);
        Ok((
            a <= b && c <= d,
            format!("Pf2: {a} <= {b}, Pf1: {c} <= {d}"),
        ))
    }))
}

fn subform_scaling(cfg: &RunConfig, solver: &Solver) -> Result<Vec<CaseResult>> {
    let dims = cfg.dims(NRange::single(4), NRange::new(3, 5), "subform-scaling")?;
    let mut inputs = Vec::new();
    for n in dims.iter() {
        inputs.extend(enumerate_dim6(n, false)?.map(|f| (f.to_string(), f)));
    }
    Ok(evaluate("subform-scaling", inputs, |f| {
        let mut bad = Vec::new();
        for triple in f.entries().combinations(3) {
            let d = triple[0] + triple[1] + triple[2];
            let value = exact(solver, &f.theta().scale(&d)?)?;
            if value != 2 {
                bad.push(format!("d={} gives {value}", d.to_bitstring()));
            }
        }
        Ok(match bad.is_empty() {
            true => (true, "Pf2(<d>q) = 2 for all 20 subsets".to_string()),
            false => (false, bad.join("; ")),
        })
    }))
}

/// Runs one suite, or all of them for `"all"`.
pub fn run(name: &str, cfg: &RunConfig, solver: &Solver) -> Result<Vec<CaseResult>> {
    Ok(match name {
        "prop-pf1" => prop_pf1(cfg)?,
        "prop-pf2" => prop_pf2(cfg, solver)?,
        "cor-i2" => cor_i2(cfg)?,
        "greedy-bound" => greedy_bound(cfg)?,
        "thm3" => thm3(cfg, solver)?,
        "remark-scaling" => remark_scaling(cfg, solver)?,
        "scaling-chain" => scaling_chain(cfg, solver)?,
        "dim6-w4" => dim6_w4(cfg, solver)?,
        "dim6-le3" => dim6_le3(cfg, solver)?,
        "pushforward" => pushforward(cfg, solver)?,
        "subform-scaling" => subform_scaling(cfg, solver)?,
        "all" => {
            let mut all = Vec::new();
            for s in SUITES {
                all.extend(run(s, cfg, solver)?);
            }
            all
        }
        other => bail!("unknown suite {other:?}; known: {}, all", SUITES.join(", ")),
    })
}
