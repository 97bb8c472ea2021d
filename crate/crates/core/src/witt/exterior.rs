//! The exterior algebra `Λ(F2^n)` over `F2`, which models the mod-2
//! cohomology of `E` when `-1` is a square: `(a) ∪ (a) = 0` and the cup
//! product is (anti)commutative.

use std::fmt;

use crate::algebra::{reduce_mod2, F2Vector};
use crate::witt::form::DiagonalForm;

/// A sum of squarefree wedge monomials. A monomial is a bit mask over the
/// generators, laid out like [`F2Vector`] bits (generator `e_i` is bit `n - i`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExteriorElement {
    n: u8,
    monomials: Vec<u32>,
}

impl ExteriorElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n: n as u8,
            monomials: Vec::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self {
            n: n as u8,
            monomials: vec![0],
        }
    }

    /// The degree-1 class of a square class `v`: the sum of the generators
    /// at the nonzero coordinates of `v`.
    pub fn degree_one(v: &F2Vector) -> Self {
        let bits = v.bits();
        Self {
            n: v.dim() as u8,
            monomials: (0..v.dim() as u32)
                .map(|k| 1u32 << k)
                .filter(|m| bits & m != 0)
                .collect(),
        }
    }

    /// A single wedge monomial `e_{i1} ∧ ... ∧ e_{ik}` (1-based indices).
    pub fn monomial(n: usize, indices: &[usize]) -> Self {
        let mask = indices.iter().fold(0u32, |m, &i| m ^ (1 << (n - i)));
        Self {
            n: n as u8,
            monomials: vec![mask],
        }
    }

    pub fn generators(&self) -> usize {
        self.n as usize
    }

    pub fn monomials(&self) -> &[u32] {
        &self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "exterior algebras on different generators");
        let mut all = self.monomials.clone();
        all.extend_from_slice(&other.monomials);
        Self {
            n: self.n,
            monomials: reduce_mod2(all),
        }
    }

    /// Wedge product: `S ∧ T = S ∪ T` for disjoint `S`, `T`, and `0` otherwise.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "exterior algebras on different generators");
        let mut all = Vec::new();
        for &s in &self.monomials {
            all.extend(other.monomials.iter().filter(|&&t| s & t == 0).map(|&t| s | t));
        }
        Self {
            n: self.n,
            monomials: reduce_mod2(all),
        }
    }

    /// Homogeneous component of degree `k`.
    pub fn graded(&self, k: u32) -> Self {
        Self {
            n: self.n,
            monomials: self
                .monomials
                .iter()
                .copied()
                .filter(|m| m.count_ones() == k)
                .collect(),
        }
    }

    fn word(&self, mask: u32) -> String {
        if mask == 0 {
            return "1".to_string();
        }
        let n = self.n as u32;
        (1..=n)
            .filter(|i| mask >> (n - i) & 1 == 1)
            .map(|i| format!("e{i}"))
            .collect::<Vec<_>>()
            .join("^")
    }

    /// Monomials as words like `e1^e2`, lowest degree first.
    pub fn words(&self) -> Vec<String> {
        let mut ms = self.monomials.clone();
        ms.sort_by_key(|m| (m.count_ones(), std::cmp::Reverse(*m)));
        ms.into_iter().map(|m| self.word(m)).collect()
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        f.write_str(&self.words().join(" + "))
    }
}

/// Total Stiefel–Whitney class `prod (1 + (a_i))` over the diagonal entries.
pub fn sw_total(f: &DiagonalForm) -> ExteriorElement {
    f.entries().fold(ExteriorElement::one(f.ambient_dim()), |acc, v| {
        acc.mul(&ExteriorElement::one(f.ambient_dim()).add(&ExteriorElement::degree_one(&v)))
    })
}

/// The degree-4 part of [`sw_total`].
pub fn w4(f: &DiagonalForm) -> ExteriorElement {
    sw_total(f).graded(4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_rules() {
        let n = 4;
        let e1 = ExteriorElement::monomial(n, &[1]);
        let e2 = ExteriorElement::monomial(n, &[2]);
        assert!(e1.mul(&e1).is_zero());
        assert_eq!(e1.mul(&e2), ExteriorElement::monomial(n, &[1, 2]));
        assert_eq!(e1.mul(&e2), e2.mul(&e1));
        let one = ExteriorElement::one(n);
        assert_eq!(one.mul(&e1), e1);
        assert!(e1.add(&e1).is_zero());
    }

    #[test]
    fn degree_one_expands_linearly() {
        let v = F2Vector::parse_bitstring("1010").unwrap();
        let d = ExteriorElement::degree_one(&v);
        let expected = ExteriorElement::monomial(4, &[1]).add(&ExteriorElement::monomial(4, &[3]));
        assert_eq!(d, expected);
        assert!(d.mul(&d).is_zero());
    }

    #[test]
    fn w4_of_two_pfister_sum() {
        let f = DiagonalForm::parse(4, "x1 x2 x1*x2 x3 x4 x3*x4").unwrap();
        assert_eq!(w4(&f), ExteriorElement::monomial(4, &[1, 2, 3, 4]));
        let total = sw_total(&f);
        assert_eq!(total.to_string(), "1 + e1^e2 + e3^e4 + e1^e2^e3^e4");
    }

    #[test]
    fn w4_of_one_abcd_form() {
        let f = DiagonalForm::parse(4, "1 x1 x2 x3 x4 x1*x2*x3*x4").unwrap();
        assert_eq!(w4(&f), ExteriorElement::monomial(4, &[1, 2, 3, 4]));
    }

    #[test]
    fn empty_form() {
        let f = DiagonalForm::new(3, []).unwrap();
        assert_eq!(sw_total(&f), ExteriorElement::one(3));
        assert!(w4(&f).is_zero());
    }
}
