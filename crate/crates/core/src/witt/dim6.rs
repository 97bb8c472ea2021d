//! Anisotropic 6-dimensional forms with trivial discriminant.

use itertools::Itertools;
use serde::Serialize;

use crate::algebra::{F2Vector, GroupAlgebraElement, PfisterElement};
use crate::decomposition::{pf2_exact, SearchConfig, SearchOutcome};
use crate::error::{Error, Result};
use crate::linalg::XorBasis;
use crate::witt::exterior::w4;
use crate::witt::form::{monomial_word, DiagonalForm};

fn require_anisotropic(f: &DiagonalForm) -> Result<()> {
    match f.repeated_entry() {
        Some(v) => Err(Error::Isotropic(monomial_word(&v))),
        None => Ok(()),
    }
}

fn require_dim6(f: &DiagonalForm) -> Result<()> {
    if f.len() != 6 {
        return Err(Error::FormDimension {
            expected: 6,
            found: f.len(),
        });
    }
    require_anisotropic(f)?;
    if !f.discriminant().is_zero() {
        return Err(Error::NotInI2("discriminant is nontrivial"));
    }
    Ok(())
}

/// Whether an anisotropic monomial form represents `1`: the trivial
/// square class must be one of its entries.
pub fn represents_one(f: &DiagonalForm) -> Result<bool> {
    require_anisotropic(f)?;
    Ok(f.entry_bits().contains(&0))
}

/// Data `(q1, mu, mu', nu)` with `q = q1 ⊥ <mu'><<nu>>`,
/// `Pf2(q1 ⊥ <mu><<nu>>) <= 2` and `<<mu, mu', nu>> = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Le3Witness {
    pub q1: DiagonalForm,
    pub mu: F2Vector,
    pub mu_prime: F2Vector,
    pub nu: F2Vector,
}

impl Le3Witness {
    /// Witt class of `q1 ⊥ <mu><<nu>>`.
    pub fn reduced_class(&self) -> GroupAlgebraElement {
        let extra = DiagonalForm::new(self.q1.ambient_dim(), [self.mu, self.mu + self.nu])
            .expect("witness vectors share the ambient dimension");
        self.q1.orthogonal_sum(&extra).expect("same ambient dimension").theta()
    }

    /// Rechecks the three conditions against `f`.
    pub fn verify(&self, f: &DiagonalForm, cfg: &SearchConfig) -> Result<bool> {
        let mut lhs = f.entry_bits().to_vec();
        let mut rhs = self.q1.entry_bits().to_vec();
        rhs.extend([self.mu_prime.bits(), (self.mu_prime + self.nu).bits()]);
        lhs.sort_unstable();
        rhs.sort_unstable();
        let split = lhs == rhs && !self.nu.is_zero();
        let reduced = pf2_exact(&self.reduced_class(), cfg)?.exact_value()? <= 2;
        let hyperbolic = PfisterElement::new(vec![self.mu, self.mu_prime, self.nu])?
            .expand()
            .is_zero();
        Ok(split && reduced && hyperbolic)
    }
}

/// Searches for a witness that `Pf2(f) <= 3`.
///
/// `mu'` and `mu' + nu` run over ordered pairs of distinct entries, and
/// `q1` is the remaining four. If `mu'` and `nu` are independent, `mu` must
/// lie in their span; otherwise `mu` ranges over the span of the entries,
/// which loses nothing since projecting onto that span fixes `q1` and `nu`.
pub fn pf2_le3_witness(f: &DiagonalForm, cfg: &SearchConfig) -> Result<Option<Le3Witness>> {
    require_dim6(f)?;
    let n = f.ambient_dim();
    let entries = f.entry_bits();
    let span: Vec<u32> = XorBasis::from_vectors(entries.iter().copied()).span().collect();
    let vec = |b: u32| F2Vector::from_raw(n as u8, b);

    for (i, j) in (0..6).cartesian_product(0..6).filter(|(i, j)| i != j) {
        let mu_prime = entries[i];
        let nu = entries[i] ^ entries[j];
        let rest: Vec<u32> = (0..6)
            .filter(|&k| k != i && k != j)
            .map(|k| entries[k])
            .collect();
        let q1 = DiagonalForm::from_bits(n, rest)?;
        let q1_class = q1.theta();
        let candidates: Vec<u32> = if mu_prime == 0 || mu_prime == nu {
            span.clone()
        } else {
            vec![0, mu_prime, nu, mu_prime ^ nu]
        };
        for mu in candidates {
            let tail = GroupAlgebraElement::from_raw_multiset(n as u8, vec![mu, mu ^ nu]);
            let class = q1_class.add(&tail)?;
            if pf2_exact(&class, cfg)?.exact_value()? <= 2 {
                return Ok(Some(Le3Witness {
                    q1,
                    mu: vec(mu),
                    mu_prime: vec(mu_prime),
                    nu: vec(nu),
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dim6Report {
    pub pf2: SearchOutcome,
    pub represents_one: bool,
    pub w4_vanishes: bool,
    pub le3_witness: Option<Le3Witness>,
}

/// `Pf2`, `w4` and the `Pf2 <= 3` witness of an anisotropic 6-dimensional
/// form with trivial discriminant.
///
/// A bounded `pf2` outcome is kept in the report; budget exhaustion inside
/// the witness search is an error.
pub fn classify_dim6(f: &DiagonalForm, cfg: &SearchConfig) -> Result<Dim6Report> {
    require_dim6(f)?;
    let pf2 = pf2_exact(&f.theta(), cfg)?;
    Ok(Dim6Report {
        pf2,
        represents_one: represents_one(f)?,
        w4_vanishes: w4(f).is_zero(),
        le3_witness: pf2_le3_witness(f, cfg)?,
    })
}

/// All anisotropic 6-dimensional forms over `x1..xn` with trivial
/// discriminant, as sorted entry sets in lexicographic order, optionally
/// only those containing the entry `1`.
pub fn enumerate_dim6(
    n: usize,
    require_one: bool,
) -> Result<impl Iterator<Item = DiagonalForm>> {
    if !(3..=6).contains(&n) {
        return Err(Error::UnsupportedRange(n, "3..=6"));
    }
    Ok((0u32..1 << n)
        .combinations(6)
        .filter(move |c| c.iter().fold(0, |a, &b| a ^ b) == 0 && (!require_one || c[0] == 0))
        .map(move |c| DiagonalForm::from_bits(n, c).expect("entries fit in n bits")))
}
