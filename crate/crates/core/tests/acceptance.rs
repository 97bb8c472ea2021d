//! Acceptance criteria, one test per criterion. Each prints a single
//! `[PASS]`/`[FAIL]` line with its elapsed time and limit.
//!
//! Oracles here work on coefficient bit masks of `F2[V]` (bit `v` set iff
//! `X^v` has coefficient 1) and do not go through the library's search code.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use itertools::Itertools;
use pforge_core::{
    enumerate_dim6, generic_forms, pf1_exact, pf2_exact, pf2_le3_witness, verify_decomposition,
    w4, xi_e, DiagonalForm, F2Vector, GroupAlgebraElement, LinearMap, SearchConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x005E_ED0F_2F0F;

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn report(id: u32, name: &str, ok: bool, started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    let within = elapsed <= limit;
    let tag = if ok && within { "PASS" } else { "FAIL" };
    println!(
        "[{tag}] criterion {id:>2}: {name} ({:.2?} / limit {:.0?})",
        elapsed, limit
    );
    assert!(ok, "criterion {id} failed: {name}");
    assert!(within, "criterion {id} exceeded {limit:?}: {elapsed:?}");
}

fn pf2(x: &GroupAlgebraElement) -> u32 {
    let out = pf2_exact(x, &cfg()).unwrap();
    assert!(verify_decomposition(x, out.witness.as_ref().unwrap()));
    out.exact_value().unwrap()
}

fn from_mask(n: usize, mask: u64) -> GroupAlgebraElement {
    GroupAlgebraElement::from_bits(n, (0..1u32 << n).filter(|&v| mask >> v & 1 == 1)).unwrap()
}

fn to_mask(x: &GroupAlgebraElement) -> u64 {
    x.support_bits().iter().fold(0, |m, &v| m | 1 << v)
}

fn e(n: usize, i: usize) -> F2Vector {
    F2Vector::basis(n, i).unwrap()
}

/// Random element of `I^2` for `n <= 8`: random support, then fix parity and sum.
fn random_i2(rng: &mut ChaCha8Rng, n: usize) -> GroupAlgebraElement {
    let size = 1u32 << n;
    let mut set: HashSet<u32> = HashSet::new();
    let toggle = |set: &mut HashSet<u32>, v: u32| {
        if !set.remove(&v) {
            set.insert(v);
        }
    };
    let count = rng.gen_range(0..=size.min(24));
    for _ in 0..count {
        toggle(&mut set, rng.gen_range(0..size));
    }
    if set.len() % 2 == 1 {
        toggle(&mut set, rng.gen_range(0..size));
    }
    let s = set.iter().fold(0, |a, &b| a ^ b);
    if s != 0 {
        let a = rng.gen_range(0..size);
        toggle(&mut set, a);
        toggle(&mut set, a ^ s);
    }
    GroupAlgebraElement::from_bits(n, set).unwrap()
}

#[test]
fn criterion_01_xi_e_reaches_n_minus_1() {
    let started = Instant::now();
    let mut ok = true;
    for n in 2..=5 {
        ok &= pf2(&xi_e(n).unwrap()) == n as u32 - 1;
    }
    let small = started.elapsed();
    ok &= pf2(&xi_e(6).unwrap()) == 5;
    ok &= small < Duration::from_secs(10);
    report(1, "Pf2(xi_e) = n-1 for n = 2..6", ok, started, Duration::from_secs(60));
}

/// Fewest distinct nonzero `v` with `sum (1 + X^v) = x`, by enumeration.
fn brute_force_pf1(n: usize, target: u64) -> u32 {
    let nonzero: Vec<u32> = (1..1u32 << n).collect();
    for k in 0..=nonzero.len() {
        for combo in nonzero.iter().combinations(k) {
            let sum = combo.iter().fold(0u64, |m, &&v| m ^ 1 ^ (1 << v));
            if sum == target {
                return k as u32;
            }
        }
    }
    unreachable!("every element of I[V] is a sum of 1-fold elements")
}

#[test]
fn criterion_02_pf1_formula_matches_brute_force() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut ok = true;
    for n in 2..=4usize {
        for _ in 0..200 {
            let mut mask: u64 = rng.gen::<u64>() & ((1u64 << (1 << n)) - 1);
            if mask.count_ones() % 2 == 1 {
                mask ^= 1 << rng.gen_range(0..1u32 << n);
            }
            let x = from_mask(n, mask);
            ok &= pf1_exact(&x).unwrap() == brute_force_pf1(n, mask);
        }
    }
    report(2, "Pf1 formula = brute force (600 elements)", ok, started, Duration::from_secs(10));
}

#[test]
fn criterion_03_greedy_bound() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let mut ok = true;
    for _ in 0..500 {
        let n = rng.gen_range(2..=8);
        let x = random_i2(&mut rng, n);
        let d = pforge_core::decompose_pf2_greedy(&x).unwrap();
        let size = x.support_len();
        let bound = if x.is_zero() {
            0
        } else if x.contains_zero() {
            size - 3
        } else {
            size - 2
        };
        ok &= verify_decomposition(&x, &d) && d.len() <= bound;
    }
    report(3, "greedy decomposition within |D|-2 / |D|-3", ok, started, Duration::from_secs(10));
}

#[test]
fn criterion_04_i2_characterisation_exhaustive() {
    let started = Instant::now();
    let n = 3usize;
    let size = 1u32 << n;
    // Span of all 2-fold expansions (1 + X^u)(1 + X^v), as masks, by closure.
    let planes: Vec<u64> = (0..size)
        .cartesian_product(0..size)
        .map(|(u, v)| {
            let mut m = 0u64;
            for w in [0, u, v, u ^ v] {
                m ^= 1 << w;
            }
            m
        })
        .collect();
    let mut reachable: HashSet<u64> = HashSet::from([0]);
    let mut frontier = vec![0u64];
    while let Some(m) = frontier.pop() {
        for &p in &planes {
            if reachable.insert(m ^ p) {
                frontier.push(m ^ p);
            }
        }
    }
    let mut ok = true;
    for mask in 0u64..1 << size {
        let parity = mask.count_ones() % 2;
        let sum = (0..size).filter(|&v| mask >> v & 1 == 1).fold(0, |a, v| a ^ v);
        let criterion = parity == 0 && sum == 0;
        ok &= reachable.contains(&mask) == criterion;
        let x = from_mask(n, mask);
        ok &= x.in_i2() == criterion;
        match pf2_exact(&x, &cfg().restrict(false)) {
            Ok(out) => ok &= criterion && verify_decomposition(&x, out.witness.as_ref().unwrap()),
            Err(_) => ok &= !criterion,
        }
    }
    report(4, "I^2 = {eps0 = eps1 = 0}, all 256 elements at n=3", ok, started, Duration::from_secs(30));
}

#[test]
fn criterion_05_generic_forms() {
    let started = Instant::now();
    let mut ok = pf2(&generic_forms(5).unwrap().q0.theta()) == 4;
    ok &= pf2(&generic_forms(4).unwrap().qp0.theta()) == 3;
    for n in [3usize, 5] {
        let scaled = generic_forms(n).unwrap().q0.theta().scale(&e(n, 1)).unwrap();
        ok &= pf2(&scaled) == n as u32 - 2;
    }
    report(5, "Pf2(q0)=4 (n=5), Pf2(q'0)=3 (n=4), Pf2(<x1>q0)=n-2", ok, started, Duration::from_secs(60));
}

#[test]
fn criterion_06_scaling_chain() {
    let started = Instant::now();
    let q = DiagonalForm::parse(5, "x1 x2 x3 x4 x5 x1*x2*x3*x4*x5").unwrap();
    let values: Vec<u32> = [F2Vector::zero(5).unwrap(), e(5, 1), e(5, 1) + e(5, 2) + e(5, 3)]
        .iter()
        .map(|v| pf2(&q.scaled(v).unwrap().theta()))
        .collect();
    report(6, "Pf2(q), Pf2(<x1>q), Pf2(<x1x2x3>q) = 4, 3, 2", values == [4, 3, 2], started, Duration::from_secs(120));
}

/// Coefficient of `e_S` in `w4`: sum over 4-subsets of entries of the
/// determinant of the 4x4 matrix of their coordinates in `S`.
fn w4_oracle(n: usize, entries: &[u32]) -> bool {
    let det4 = |rows: [u32; 4]| -> u32 {
        // Permutation expansion; signs vanish mod 2.
        (0..4usize)
            .permutations(4)
            .map(|p| (0..4).all(|r| rows[r] >> p[r] & 1 == 1) as u32)
            .sum::<u32>()
            % 2
    };
    (0..n).combinations(4).any(|cols| {
        entries
            .iter()
            .combinations(4)
            .map(|quad| {
                let rows = [0, 1, 2, 3].map(|r| {
                    cols.iter()
                        .enumerate()
                        .fold(0u32, |acc, (k, &c)| acc | ((quad[r] >> c & 1) << k))
                });
                det4(rows)
            })
            .sum::<u32>()
            % 2
            == 1
    })
}

#[test]
fn criterion_07_w4_discriminates_pf2() {
    let started = Instant::now();
    let mut ok = true;
    let mut count = 0;
    for f in enumerate_dim6(4, true).unwrap() {
        count += 1;
        let value = pf2(&f.theta());
        let w4_nonzero = !w4(&f).is_zero();
        ok &= w4_nonzero == w4_oracle(4, f.entry_bits());
        ok &= (value == 2) == !w4_nonzero;
        ok &= (value == 3) == w4_nonzero;
    }
    ok &= count > 0;
    report(7, &format!("Pf2 = 2 <=> w4 = 0 on {count} forms at n=4"), ok, started, Duration::from_secs(300));
}

fn rank(vectors: &[u32]) -> usize {
    let mut rows: Vec<u32> = Vec::new();
    for &v in vectors {
        let r = rows.iter().fold(v, |acc, &row| acc.min(acc ^ row));
        if r != 0 {
            rows.push(r);
        }
    }
    rows.len()
}

#[test]
fn criterion_08_le3_witness() {
    let started = Instant::now();
    let forms: Vec<DiagonalForm> = enumerate_dim6(5, false).unwrap().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let mut ok = true;
    let mut by_value = [0usize; 5];
    for _ in 0..200 {
        let f = &forms[rng.gen_range(0..forms.len())];
        let value = pf2(&f.theta());
        by_value[value.min(4) as usize] += 1;
        let witness = pf2_le3_witness(f, &cfg()).unwrap();
        ok &= witness.is_some() == (value <= 3);
        if let Some(w) = witness {
            // (i) entries of f = entries of q1 plus mu', mu' + nu
            let mut lhs = f.entry_bits().to_vec();
            let mut rhs = w.q1.entry_bits().to_vec();
            rhs.push(w.mu_prime.bits());
            rhs.push(w.mu_prime.bits() ^ w.nu.bits());
            lhs.sort_unstable();
            rhs.sort_unstable();
            ok &= lhs == rhs && w.q1.len() == 4;
            // (ii) Pf2(q1 + <mu><<nu>>) <= 2
            let mut entries = w.q1.entry_bits().to_vec();
            entries.push(w.mu.bits());
            entries.push(w.mu.bits() ^ w.nu.bits());
            let class = DiagonalForm::from_bits(5, entries).unwrap().theta();
            ok &= pf2(&class) <= 2;
            // (iii) <<mu, mu', nu>> = 0, i.e. the three are dependent
            ok &= rank(&[w.mu.bits(), w.mu_prime.bits(), w.nu.bits()]) < 3;
        }
    }
    // Both sides of the equivalence must be exercised.
    ok &= by_value[4] > 0 && by_value[2] + by_value[3] > 0;
    let name = format!(
        "Pf2 <= 3 witness on 200 forms at n=5 (Pf2=2: {}, 3: {}, 4: {})",
        by_value[2], by_value[3], by_value[4]
    );
    report(8, &name, ok, started, Duration::from_secs(600));
}

#[test]
fn criterion_09_pushforward_monotone() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut ok = true;
    for _ in 0..200 {
        let n = rng.gen_range(2..=4usize);
        let m = rng.gen_range(1..=4usize);
        let x = random_i2(&mut rng, n);
        let cols = (0..n).map(|_| rng.gen_range(0..1u32 << m)).collect();
        let phi = LinearMap::from_bits(n, m, cols).unwrap();
        // independent pushforward on masks
        let image_mask = x
            .support_bits()
            .iter()
            .map(|&v| {
                (0..n)
                    .filter(|k| v >> (n - 1 - k) & 1 == 1)
                    .fold(0u32, |acc, k| acc ^ phi.columns().nth(k).unwrap().bits())
            })
            .fold(0u64, |mask, w| mask ^ 1 << w);
        let image = x.pushforward(&phi).unwrap();
        ok &= to_mask(&image) == image_mask;
        ok &= pf2(&image) <= pf2(&x);
    }
    report(9, "Pf2(phi_* x) <= Pf2(x) on 200 pairs", ok, started, Duration::from_secs(60));
}

#[test]
fn criterion_10_three_subform_scaling() {
    let started = Instant::now();
    let mut ok = true;
    let mut cases = 0;
    for f in enumerate_dim6(4, false).unwrap() {
        for triple in f.entries().combinations(3) {
            let d = triple[0] + triple[1] + triple[2];
            ok &= pf2(&f.theta().scale(&d).unwrap()) == 2;
            cases += 1;
        }
    }
    report(10, &format!("Pf2(<d>q) = 2 over {cases} (form, 3-subset) pairs at n=4"), ok, started, Duration::from_secs(300));
}
