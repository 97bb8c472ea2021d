//! The group algebra `F2[V]` over `V = (Z/2Z)^n`.
//!
//! Vectors are stored as `u32` bit patterns. The basis vector `e_i`
//! (`1 <= i <= n`) is the bit `1 << (n - i)`, so that the bitstring form
//! (most significant character first) reads `e_1 ... e_n` from left to right
//! and numeric order coincides with lexicographic order of bitstrings.

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 24;

pub(crate) fn check_dim(n: usize) -> Result<u8> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(n as u8)
    } else {
        Err(Error::DimensionOutOfRange(n))
    }
}

fn check_same(left: u8, right: u8) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            left: left as usize,
            right: right as usize,
        })
    }
}

pub(crate) fn bitstring(dim: u8, bits: u32) -> String {
    (0..dim)
        .rev()
        .map(|k| if bits >> k & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub(crate) fn parse_bits(s: &str) -> Result<(u8, u32)> {
    let dim = check_dim(s.len())?;
    let mut bits = 0u32;
    for c in s.chars() {
        bits <<= 1;
        match c {
            '0' => {}
            '1' => bits |= 1,
            _ => return Err(Error::Parse(format!("invalid bitstring {s:?}"))),
        }
    }
    Ok((dim, bits))
}

/// An element of `V = (Z/2Z)^n`: a square class, or a monomial exponent vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    dim: u8,
    bits: u32,
}

impl F2Vector {
    pub fn new(dim: usize, bits: u32) -> Result<Self> {
        let dim = check_dim(dim)?;
        if dim < 32 && bits >> dim != 0 {
            return Err(Error::BitsOutOfRange {
                dim: dim as usize,
                bits,
            });
        }
        Ok(Self { dim, bits })
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Self::new(dim, 0)
    }

    /// The basis vector `e_i`, `1 <= i <= dim`.
    pub fn basis(dim: usize, i: usize) -> Result<Self> {
        let d = check_dim(dim)?;
        if !(1..=dim).contains(&i) {
            return Err(Error::BasisIndex { dim, index: i });
        }
        Ok(Self {
            dim: d,
            bits: 1 << (dim - i),
        })
    }

    /// `e_0 = e_1 + ... + e_n`.
    pub fn all_ones(dim: usize) -> Result<Self> {
        let d = check_dim(dim)?;
        Ok(Self {
            dim: d,
            bits: ((1u64 << dim) - 1) as u32,
        })
    }

    pub(crate) fn from_raw(dim: u8, bits: u32) -> Self {
        Self { dim, bits }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Coordinate `i` (1-based) of the vector.
    pub fn coordinate(&self, i: usize) -> bool {
        (1..=self.dim()).contains(&i) && self.bits >> (self.dim() - i) & 1 == 1
    }

    /// Indices `i` with a nonzero coordinate, ascending.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.dim()).filter(|&i| self.coordinate(i))
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        check_same(self.dim, other.dim)?;
        Ok(Self {
            dim: self.dim,
            bits: self.bits ^ other.bits,
        })
    }

    pub fn to_bitstring(&self) -> String {
        bitstring(self.dim, self.bits)
    }

    /// Parses a bitstring; its length is the ambient dimension.
    pub fn parse_bitstring(s: &str) -> Result<Self> {
        let (dim, bits) = parse_bits(s)?;
        Ok(Self { dim, bits })
    }
}

/// Group law of `V`. Panics if the dimensions differ; use
/// [`F2Vector::checked_add`] for a fallible version.
impl Add for F2Vector {
    type Output = F2Vector;

    fn add(self, other: Self) -> Self {
        self.checked_add(other)
            .expect("adding vectors of different dimensions")
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector({})", self.to_bitstring())
    }
}

impl Serialize for F2Vector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_bitstring())
    }
}

impl<'de> Deserialize<'de> for F2Vector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        F2Vector::parse_bitstring(&s).map_err(serde::de::Error::custom)
    }
}

/// Sorts `items` and drops every value occurring an even number of times.
pub(crate) fn reduce_mod2(mut items: Vec<u32>) -> Vec<u32> {
    items.sort_unstable();
    let mut out = Vec::with_capacity(items.len());
    let mut i = 0;
    while i < items.len() {
        let mut j = i + 1;
        while j < items.len() && items[j] == items[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(items[i]);
        }
        i = j;
    }
    out
}

/// Symmetric difference of two sorted, duplicate-free lists.
pub(crate) fn symmetric_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// An element `sum a_v X^v` of `F2[V]`, stored as its support `D(x)` in
/// increasing numeric order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAlgebraElement {
    dim: u8,
    support: Vec<u32>,
}

impl GroupAlgebraElement {
    pub fn zero(dim: usize) -> Result<Self> {
        Ok(Self {
            dim: check_dim(dim)?,
            support: Vec::new(),
        })
    }

    pub fn one(dim: usize) -> Result<Self> {
        Ok(Self {
            dim: check_dim(dim)?,
            support: vec![0],
        })
    }

    /// The monomial `X^v`.
    pub fn monomial(v: F2Vector) -> Self {
        Self {
            dim: v.dim,
            support: vec![v.bits],
        }
    }

    /// The 1-fold Pfister element `1 + X^v`.
    pub fn one_fold(v: F2Vector) -> Self {
        Self::from_raw_multiset(v.dim, vec![0, v.bits])
    }

    /// `sum X^v` over the given vectors, with coefficients reduced mod 2.
    pub fn from_vectors<I: IntoIterator<Item = F2Vector>>(dim: usize, vectors: I) -> Result<Self> {
        let d = check_dim(dim)?;
        let mut items = Vec::new();
        for v in vectors {
            check_same(d, v.dim)?;
            items.push(v.bits);
        }
        Ok(Self::from_raw_multiset(d, items))
    }

    /// Like [`from_vectors`](Self::from_vectors) but from raw bit patterns.
    pub fn from_bits<I: IntoIterator<Item = u32>>(dim: usize, bits: I) -> Result<Self> {
        let d = check_dim(dim)?;
        let items: Vec<u32> = bits.into_iter().collect();
        if let Some(&bad) = items.iter().find(|&&b| dim < 32 && b >> dim != 0) {
            return Err(Error::BitsOutOfRange { dim, bits: bad });
        }
        Ok(Self::from_raw_multiset(d, items))
    }

    pub(crate) fn from_raw_multiset(dim: u8, items: Vec<u32>) -> Self {
        Self {
            dim,
            support: reduce_mod2(items),
        }
    }

    /// Caller guarantees `support` is sorted and duplicate-free.
    pub(crate) fn from_sorted(dim: u8, support: Vec<u32>) -> Self {
        debug_assert!(support.windows(2).all(|w| w[0] < w[1]));
        Self { dim, support }
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub(crate) fn dim_u8(&self) -> u8 {
        self.dim
    }

    pub fn support(&self) -> impl ExactSizeIterator<Item = F2Vector> + '_ {
        self.support.iter().map(move |&b| F2Vector::from_raw(self.dim, b))
    }

    pub fn support_bits(&self) -> &[u32] {
        &self.support
    }

    /// `|D(x)|`.
    pub fn support_len(&self) -> usize {
        self.support.len()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        v.dim == self.dim && self.support.binary_search(&v.bits).is_ok()
    }

    pub fn contains_zero(&self) -> bool {
        self.support.first() == Some(&0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(self.dim, other.dim)?;
        Ok(Self::from_sorted(
            self.dim,
            symmetric_difference(&self.support, &other.support),
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same(self.dim, other.dim)?;
        let mut items = Vec::with_capacity(self.support.len() * other.support.len());
        for &a in &self.support {
            items.extend(other.support.iter().map(|&b| a ^ b));
        }
        Ok(Self::from_raw_multiset(self.dim, items))
    }

    /// Multiplication by `X^v`: translates the support by `v`.
    pub fn scale(&self, v: &F2Vector) -> Result<Self> {
        check_same(self.dim, v.dim)?;
        let mut support: Vec<u32> = self.support.iter().map(|&b| b ^ v.bits).collect();
        support.sort_unstable();
        Ok(Self::from_sorted(self.dim, support))
    }

    /// Augmentation: parity of `|D(x)|`.
    pub fn epsilon0(&self) -> bool {
        self.support.len() % 2 == 1
    }

    /// Sum of the support vectors.
    pub fn epsilon1(&self) -> F2Vector {
        F2Vector::from_raw(self.dim, self.support.iter().fold(0, |acc, &b| acc ^ b))
    }

    /// Membership in `I[V] = ker epsilon0`.
    pub fn in_fundamental_ideal(&self) -> bool {
        !self.epsilon0()
    }

    /// Membership in `I^2[V] = { x in I[V] : epsilon1(x) = 0 }`.
    pub fn in_i2(&self) -> bool {
        !self.epsilon0() && self.epsilon1().is_zero()
    }

    /// `phi_*(x)`: pushes the support forward along `phi`, reducing mod 2.
    pub fn pushforward(&self, phi: &LinearMap) -> Result<Self> {
        check_same(phi.domain, self.dim)?;
        let items = self.support.iter().map(|&b| phi.apply_bits(b)).collect();
        Ok(Self::from_raw_multiset(phi.codomain, items))
    }

    /// `n:b1,b2,...` with the support bitstrings in canonical order.
    pub fn canonical_key(&self) -> String {
        let body: Vec<String> = self.support.iter().map(|&b| bitstring(self.dim, b)).collect();
        format!("{}:{}", self.dim, body.join(","))
    }

    pub fn parse_canonical_key(key: &str) -> Result<Self> {
        let (n, body) = key
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing ':' in key {key:?}")))?;
        let n: usize = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad dimension in key {key:?}")))?;
        let vectors = body
            .split(',')
            .filter(|s| !s.is_empty())
            .map(F2Vector::parse_bitstring)
            .collect::<Result<Vec<_>>>()?;
        Self::from_vectors(n, vectors)
    }
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupAlgebraElement({})", self.canonical_key())
    }
}

/// Writes `X^v` terms, with `1` for the identity and `0` for the empty sum.
impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return f.write_str("0");
        }
        for (k, &b) in self.support.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if b == 0 {
                f.write_str("1")?;
            } else {
                write!(f, "X^{}", bitstring(self.dim, b))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    n: usize,
    support: Vec<String>,
}

impl Serialize for GroupAlgebraElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            n: self.dim(),
            support: self.support.iter().map(|&b| bitstring(self.dim, b)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupAlgebraElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(d)?;
        let vectors = repr
            .support
            .iter()
            .map(|s| F2Vector::parse_bitstring(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        GroupAlgebraElement::from_vectors(repr.n, vectors).map_err(serde::de::Error::custom)
    }
}

/// An `m`-fold Pfister element `(1 + X^v1)...(1 + X^vm)`, kept as its generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PfisterElement {
    generators: Vec<F2Vector>,
}

impl PfisterElement {
    pub fn new(generators: Vec<F2Vector>) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptyPfister)?;
        for g in &generators[1..] {
            check_same(first.dim, g.dim)?;
        }
        Ok(Self { generators })
    }

    pub fn two_fold(u: F2Vector, v: F2Vector) -> Result<Self> {
        Self::new(vec![u, v])
    }

    pub fn fold(&self) -> usize {
        self.generators.len()
    }

    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    pub fn generators(&self) -> &[F2Vector] {
        &self.generators
    }

    /// Expands the product. The support is the set of subset sums of the
    /// generators, and the result vanishes iff they are linearly dependent.
    pub fn expand(&self) -> GroupAlgebraElement {
        let dim = self.generators[0].dim;
        let mut items = vec![0u32];
        for g in &self.generators {
            let shifted: Vec<u32> = items.iter().map(|&b| b ^ g.bits).collect();
            items.extend(shifted);
            items = reduce_mod2(items);
        }
        GroupAlgebraElement::from_sorted(dim, items)
    }
}

/// An F2-linear map `V -> W`, given by the images of `e_1, ..., e_n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearMap {
    domain: u8,
    codomain: u8,
    columns: Vec<u32>,
}

impl LinearMap {
    pub fn new(domain: usize, codomain: usize, columns: Vec<F2Vector>) -> Result<Self> {
        let cod = check_dim(codomain)?;
        for c in &columns {
            check_same(cod, c.dim)?;
        }
        Self::from_bits(domain, codomain, columns.iter().map(|c| c.bits).collect())
    }

    /// `columns[i - 1]` is the bit pattern of the image of `e_i`.
    pub fn from_bits(domain: usize, codomain: usize, columns: Vec<u32>) -> Result<Self> {
        let dom = check_dim(domain)?;
        let cod = check_dim(codomain)?;
        if columns.len() != domain {
            return Err(Error::DimensionMismatch {
                left: domain,
                right: columns.len(),
            });
        }
        if let Some(&bad) = columns.iter().find(|&&b| b >> codomain != 0) {
            return Err(Error::BitsOutOfRange {
                dim: codomain,
                bits: bad,
            });
        }
        Ok(Self {
            domain: dom,
            codomain: cod,
            columns,
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let cols = (1..=n).map(|i| 1u32 << (n - i)).collect();
        Self::from_bits(n, n, cols)
    }

    pub fn zero(domain: usize, codomain: usize) -> Result<Self> {
        Self::from_bits(domain, codomain, vec![0; domain])
    }

    /// `V = F2^n -> W = F2^(n-1)` with `e_i -> e_i` for `i < n` and `e_n -> 0`.
    pub fn drop_last(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooSmall {
                name: "n",
                value: n,
                min: 2,
            });
        }
        let cols = (1..=n)
            .map(|i| if i < n { 1u32 << (n - 1 - i) } else { 0 })
            .collect();
        Self::from_bits(n, n - 1, cols)
    }

    pub fn domain_dim(&self) -> usize {
        self.domain as usize
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain as usize
    }

    pub fn columns(&self) -> impl Iterator<Item = F2Vector> + '_ {
        self.columns.iter().map(move |&b| F2Vector::from_raw(self.codomain, b))
    }

    pub(crate) fn apply_bits(&self, v: u32) -> u32 {
        let n = self.domain as usize;
        self.columns
            .iter()
            .enumerate()
            .filter(|(i, _)| v >> (n - 1 - i) & 1 == 1)
            .fold(0, |acc, (_, &c)| acc ^ c)
    }

    pub fn apply(&self, v: &F2Vector) -> Result<F2Vector> {
        check_same(self.domain, v.dim)?;
        Ok(F2Vector::from_raw(self.codomain, self.apply_bits(v.bits)))
    }
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

    #[test]
    fn bitstring_layout() {
        assert_eq!(e(4, 1).to_bitstring(), "1000");
        assert_eq!(e(4, 4).to_bitstring(), "0001");
        assert_eq!(F2Vector::all_ones(3).unwrap().to_bitstring(), "111");
        assert_eq!(F2Vector::parse_bitstring("0110").unwrap(), e(4, 2) + e(4, 3));
        assert!(F2Vector::parse_bitstring("01a0").is_err());
        assert!(F2Vector::parse_bitstring("").is_err());
        assert_eq!(e(4, 2).indices().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn dimension_limits() {
        assert!(F2Vector::zero(0).is_err());
        assert!(F2Vector::zero(25).is_err());
        assert!(F2Vector::zero(24).is_ok());
        assert!(F2Vector::new(3, 0b1000).is_err());
        assert!(F2Vector::basis(3, 4).is_err());
        assert!(GroupAlgebraElement::zero(25).is_err());
    }

    #[test]
    fn add_examples() {
        let (u, v) = (e(3, 1), e(3, 2));
        let zero = F2Vector::zero(3).unwrap();
        assert!(el(3, &[u]).add(&el(3, &[u])).unwrap().is_zero());
        assert_eq!(el(3, &[zero, u]).add(&el(3, &[zero, v])).unwrap(), el(3, &[u, v]));
        assert_eq!(
            el(3, &[zero, u, v, u + v]).add(&el(3, &[zero, u])).unwrap(),
            el(3, &[v, u + v])
        );
    }

    #[test]
    fn mixing_dimensions_is_an_error() {
        let a = GroupAlgebraElement::one(3).unwrap();
        let b = GroupAlgebraElement::one(4).unwrap();
        assert!(matches!(a.add(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.mul(&b).is_err());
        assert!(a.scale(&e(4, 1)).is_err());
        assert!(a.pushforward(&LinearMap::identity(4).unwrap()).is_err());
        assert!(e(3, 1).checked_add(e(4, 1)).is_err());
    }

    #[test]
    fn mul_examples() {
        let (u, v) = (e(3, 1), e(3, 3));
        let zero = F2Vector::zero(3).unwrap();
        let xu = GroupAlgebraElement::monomial(u);
        let xv = GroupAlgebraElement::monomial(v);
        assert_eq!(xu.mul(&xv).unwrap(), GroupAlgebraElement::monomial(u + v));
        let pu = GroupAlgebraElement::one_fold(u);
        assert!(pu.mul(&pu).unwrap().is_zero());
        let pv = GroupAlgebraElement::one_fold(v);
        assert_eq!(pu.mul(&pv).unwrap(), el(3, &[zero, u, v, u + v]));
    }

    #[test]
    fn epsilon_examples() {
        let z = GroupAlgebraElement::zero(3).unwrap();
        assert!(!z.epsilon0());
        assert!(z.epsilon1().is_zero());
        let (u, v) = (e(3, 1), e(3, 2));
        let zero = F2Vector::zero(3).unwrap();
        assert!(el(3, &[u]).epsilon0());
        assert_eq!(el(3, &[u]).epsilon1(), u);
        assert_eq!(el(3, &[zero, u, v]).epsilon1(), u + v);
    }

    #[test]
    fn ideal_membership() {
        let (u, v, w) = (e(3, 1), e(3, 2), e(3, 3));
        let zero = F2Vector::zero(3).unwrap();
        let x = el(3, &[zero, u]);
        assert!(x.in_fundamental_ideal());
        assert!(!x.in_i2());
        assert!(!el(3, &[u, v, w]).in_fundamental_ideal());
        assert!(el(3, &[zero, u, v, u + v]).in_i2());
    }

    #[test]
    fn pfister_expansion() {
        let (u, v) = (e(3, 1), e(3, 2));
        let zero = F2Vector::zero(3).unwrap();
        assert!(PfisterElement::two_fold(u, u).unwrap().expand().is_zero());
        assert!(PfisterElement::new(vec![u, zero, v]).unwrap().expand().is_zero());
        assert_eq!(
            PfisterElement::two_fold(u, v).unwrap().expand(),
            el(3, &[zero, u, v, u + v])
        );
        assert_eq!(PfisterElement::new(vec![u]).unwrap().expand(), el(3, &[zero, u]));
        assert!(matches!(PfisterElement::new(vec![]), Err(Error::EmptyPfister)));
        assert!(PfisterElement::two_fold(u, e(4, 1)).is_err());
    }

    #[test]
    fn scale_examples() {
        let (u1, u2) = (e(3, 1), e(3, 2));
        let zero = F2Vector::zero(3).unwrap();
        let x = el(3, &[zero, u1, u2 + u1]);
        assert_eq!(x.scale(&zero).unwrap(), x);
        let one_fold = el(3, &[zero, u1]);
        assert_eq!(one_fold.scale(&u1).unwrap(), one_fold);
        let plane = PfisterElement::two_fold(u1, u2).unwrap().expand();
        for v in [zero, u1, u2, u1 + u2] {
            assert_eq!(plane.scale(&v).unwrap(), plane);
        }
        assert_ne!(plane.scale(&e(3, 3)).unwrap(), plane);
    }

    #[test]
    fn pushforward_kills_plane_through_last_basis_vector() {
        let n = 4;
        let v = e(n, 1) + e(n, 3);
        let plane = PfisterElement::two_fold(e(n, n), v).unwrap().expand();
        let phi = LinearMap::drop_last(n).unwrap();
        let image = plane.pushforward(&phi).unwrap();
        assert!(image.is_zero());
        assert_eq!(image.dim(), n - 1);
        let x = el(n, &[e(n, 1), e(n, 2)]);
        assert_eq!(x.pushforward(&LinearMap::identity(n).unwrap()).unwrap(), x);
    }

    #[test]
    fn drop_last_on_basis() {
        let phi = LinearMap::drop_last(4).unwrap();
        for i in 1..4 {
            assert_eq!(phi.apply(&e(4, i)).unwrap(), e(3, i));
        }
        assert!(phi.apply(&e(4, 4)).unwrap().is_zero());
        assert!(LinearMap::drop_last(1).is_err());
    }

    #[test]
    fn serde_layout() {
        let x = el(3, &[F2Vector::zero(3).unwrap(), e(3, 1)]);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"n":3,"support":["000","100"]}"#);
        let back: GroupAlgebraElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        let bad = r#"{"n":3,"support":["0000"]}"#;
        assert!(serde_json::from_str::<GroupAlgebraElement>(bad).is_err());
        assert_eq!(serde_json::to_string(&e(4, 2)).unwrap(), "\"0100\"");
    }

    #[test]
    fn canonical_key_round_trip() {
        let x = el(4, &[e(4, 4), e(4, 1), e(4, 2) + e(4, 3)]);
        assert_eq!(x.canonical_key(), "4:0001,0110,1000");
        assert_eq!(GroupAlgebraElement::parse_canonical_key("4:0001,0110,1000").unwrap(), x);
        let z = GroupAlgebraElement::zero(2).unwrap();
        assert_eq!(z.canonical_key(), "2:");
        assert_eq!(GroupAlgebraElement::parse_canonical_key("2:").unwrap(), z);
    }

    #[test]
    fn display() {
        let x = el(2, &[F2Vector::zero(2).unwrap(), e(2, 1)]);
        assert_eq!(x.to_string(), "1 + X^10");
        assert_eq!(GroupAlgebraElement::zero(2).unwrap().to_string(), "0");
    }
}
