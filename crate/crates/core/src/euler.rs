//! The Euler ring `U(SO(2))`.
//!
//! An element is a finitely supported integer sequence `(a_0, a_1, a_2, ...)`.
//! Coordinate `0` belongs to the isotropy group `SO(2)` itself, coordinate
//! `i >= 1` to the cyclic subgroup `Z_i`. Addition is coordinatewise and the
//! product is
//!
//! ```text
//! (a * b)_0 = a_0 b_0
//! (a * b)_i = a_i b_0 + a_0 b_i      (i >= 1)
//! ```
//!
//! Elements are stored sparsely with every zero coefficient pruned, so two
//! elements are equal exactly when their maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Element of `U(SO(2))` in canonical sparse form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EulerElement {
    coeffs: BTreeMap<u64, BigInt>,
}

/// Position of an element relative to the cones `U_+` and `U_-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeClass {
    Theta,
    PlusCone,
    MinusCone,
    Mixed,
}

impl ConeClass {
    /// Membership in `U_-`, which contains `Θ`.
    pub fn in_minus_cone(self) -> bool {
        matches!(self, ConeClass::Theta | ConeClass::MinusCone)
    }

    /// Membership in `U_+`, which contains `Θ`.
    pub fn in_plus_cone(self) -> bool {
        matches!(self, ConeClass::Theta | ConeClass::PlusCone)
    }
}

impl fmt::Display for ConeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConeClass::Theta => "theta",
            ConeClass::PlusCone => "plus_cone",
            ConeClass::MinusCone => "minus_cone",
            ConeClass::Mixed => "mixed",
        };
        f.write_str(s)
    }
}

impl EulerElement {
    /// The additive neutral element `Θ = (0, 0, ...)`.
    pub fn theta() -> Self {
        Self::default()
    }

    /// The unit `𝕀 = (1, 0, ...)`.
    pub fn unit() -> Self {
        Self::monomial(0, 1)
    }

    /// Element with a single coefficient `value` at `index`.
    pub fn monomial(index: u64, value: impl Into<BigInt>) -> Self {
        let mut e = Self::theta();
        e.set(index, value.into());
        e
    }

    /// Builds an element from `(index, coefficient)` pairs; repeated indices are summed.
    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (u64, C)>,
        C: Into<BigInt>,
    {
        let mut e = Self::theta();
        for (i, c) in pairs {
            e.add_at(i, &c.into());
        }
        e
    }

    /// Builds an element from its leading dense coordinates `(a_0, a_1, ...)`.
    pub fn from_dense<C: Into<BigInt> + Clone>(coords: &[C]) -> Self {
        Self::from_pairs(
            coords
                .iter()
                .enumerate()
                .map(|(i, c)| (i as u64, c.clone().into())),
        )
    }

    pub fn is_theta(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at `index` (zero outside the support).
    pub fn coeff(&self, index: u64) -> BigInt {
        self.coeffs
            .get(&index)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Iterates the support in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    /// Largest index with a non-zero coefficient.
    pub fn top_index(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    fn set(&mut self, index: u64, value: BigInt) {
        if value.is_zero() {
            self.coeffs.remove(&index);
        } else {
            self.coeffs.insert(index, value);
        }
    }

    fn add_at(&mut self, index: u64, value: &BigInt) {
        if value.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(index).or_insert_with(BigInt::zero);
        *entry += value;
        if entry.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    /// Ring product, `c_0 = a_0 b_0`, `c_i = a_i b_0 + a_0 b_i`.
    pub fn mul(&self, other: &Self) -> Self {
        let a0 = self.coeff(0);
        let b0 = other.coeff(0);
        let mut out = Self::monomial(0, &a0 * &b0);
        for (i, ai) in self.iter().filter(|(i, _)| *i > 0) {
            out.add_at(i, &(ai * &b0));
        }
        for (i, bi) in other.iter().filter(|(i, _)| *i > 0) {
            out.add_at(i, &(&a0 * bi));
        }
        out
    }

    /// `p`-fold product by repeated squaring; `a^0 = 𝕀`.
    pub fn pow(&self, mut p: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::unit();
        while p > 0 {
            if p & 1 == 1 {
                acc = acc.mul(&base);
            }
            p >>= 1;
            if p > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Closed form of the `p`-th power: `(a^p)_0 = a_0^p`, `(a^p)_i = p a_0^(p-1) a_i`.
    pub fn pow_closed_form(&self, p: u64) -> Self {
        if p == 0 {
            return Self::unit();
        }
        let a0 = self.coeff(0);
        let exp = u32::try_from(p).expect("power exponent exceeds u32");
        let mut out = Self::monomial(0, num_traits::pow::pow(a0.clone(), exp as usize));
        let lead = BigInt::from(p) * num_traits::pow::pow(a0, (exp - 1) as usize);
        for (i, ai) in self.iter().filter(|(i, _)| *i > 0) {
            out.set(i, &lead * ai);
        }
        out
    }

    /// Multiplicative inverse; exists exactly when `a_0 = ±1`, and then
    /// equals `(a_0, -a_1, -a_2, ...)`.
    pub fn inverse(&self) -> Option<Self> {
        let a0 = self.coeff(0);
        if a0.abs() != BigInt::one() {
            return None;
        }
        let mut out = Self::monomial(0, a0);
        for (i, ai) in self.iter().filter(|(i, _)| *i > 0) {
            out.set(i, -ai);
        }
        Some(out)
    }

    /// Integer power allowing negative exponents for invertible elements.
    pub fn pow_signed(&self, p: i64) -> Option<Self> {
        if p >= 0 {
            Some(self.pow(p as u64))
        } else {
            self.inverse().map(|inv| inv.pow(p.unsigned_abs()))
        }
    }

    /// Sign pattern of the coefficients.
    pub fn classify(&self) -> ConeClass {
        if self.is_theta() {
            return ConeClass::Theta;
        }
        let any_pos = self.coeffs.values().any(|c| c.is_positive());
        let any_neg = self.coeffs.values().any(|c| c.is_negative());
        match (any_pos, any_neg) {
            (true, false) => ConeClass::PlusCone,
            (false, true) => ConeClass::MinusCone,
            _ => ConeClass::Mixed,
        }
    }

    /// Sum of a sequence of elements (`Θ` for an empty sequence).
    pub fn sum<'a, I: IntoIterator<Item = &'a EulerElement>>(items: I) -> Self {
        let mut acc = Self::theta();
        for e in items {
            acc += e;
        }
        acc
    }
}

impl AddAssign<&EulerElement> for EulerElement {
    fn add_assign(&mut self, rhs: &EulerElement) {
        for (i, c) in rhs.iter() {
            self.add_at(i, c);
        }
    }
}

impl Add for &EulerElement {
    type Output = EulerElement;
    fn add(self, rhs: &EulerElement) -> EulerElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for EulerElement {
    type Output = EulerElement;
    fn add(mut self, rhs: EulerElement) -> EulerElement {
        self += &rhs;
        self
    }
}

impl Neg for &EulerElement {
    type Output = EulerElement;
    fn neg(self) -> EulerElement {
        EulerElement {
            coeffs: self.coeffs.iter().map(|(i, c)| (*i, -c)).collect(),
        }
    }
}

impl Neg for EulerElement {
    type Output = EulerElement;
    fn neg(self) -> EulerElement {
        -&self
    }
}

impl Sub for &EulerElement {
    type Output = EulerElement;
    fn sub(self, rhs: &EulerElement) -> EulerElement {
        self + &(-rhs)
    }
}

impl Sub for EulerElement {
    type Output = EulerElement;
    fn sub(self, rhs: EulerElement) -> EulerElement {
        &self - &rhs
    }
}

impl Mul for &EulerElement {
    type Output = EulerElement;
    fn mul(self, rhs: &EulerElement) -> EulerElement {
        EulerElement::mul(self, rhs)
    }
}

/// Dense rendering up to the top coordinate, e.g. `(-2, 0, 1, …)`.
impl fmt::Display for EulerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.top_index().unwrap_or(0);
        f.write_str("(")?;
        for i in 0..=top {
            write!(f, "{}, ", self.coeff(i))?;
        }
        f.write_str("…)")
    }
}

#[derive(Serialize, Deserialize)]
struct EulerWire {
    coeffs: Vec<(u64, String)>,
}

impl Serialize for EulerElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        EulerWire {
            coeffs: self.iter().map(|(i, c)| (i, c.to_string())).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EulerElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let wire = EulerWire::deserialize(deserializer)?;
        let mut out = EulerElement::theta();
        let mut last = None;
        for (i, s) in wire.coeffs {
            if last.is_some_and(|l| l >= i) {
                return Err(D::Error::custom(
                    "coefficient indices must be strictly increasing",
                ));
            }
            last = Some(i);
            let c: BigInt = s
                .parse()
                .map_err(|_| D::Error::custom(format!("invalid integer coefficient {s:?}")))?;
            out.set(i, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(coords: &[i64]) -> EulerElement {
        EulerElement::from_dense(coords)
    }

    #[test]
    fn add_cancels_to_canonical_form() {
        let s = &e(&[1, -2, 3]) + &e(&[0, 2, 0]);
        assert_eq!(s, e(&[1, 0, 3]));
        assert_eq!(s.support_len(), 2);
        assert_eq!(&e(&[1, -2, 3]) + &EulerElement::theta(), e(&[1, -2, 3]));
    }

    #[test]
    fn add_at_index_zero_for_odd_signature() {
        // -2 + ((-1)^p - 1) with p odd
        let p = 3u32;
        let v = (-1i64).pow(p) - 1;
        assert_eq!(&e(&[-2]) + &e(&[v]), e(&[-4]));
    }

    #[test]
    fn mul_follows_twisted_rule() {
        assert_eq!(e(&[2, 1]).mul(&e(&[3, 0, 2])), e(&[6, 3, 4]));
        assert_eq!(
            EulerElement::theta().mul(&e(&[5, 1, -1])),
            EulerElement::theta()
        );
        let d = EulerElement::from_pairs([(0u64, 1i64), (7, -1)]);
        assert_eq!(d.mul(&d), EulerElement::from_pairs([(0u64, 1i64), (7, -2)]));
    }

    #[test]
    fn pow_examples() {
        let a = e(&[3, 1, -4]);
        assert_eq!(a.pow(0), EulerElement::unit());
        assert_eq!(e(&[-1]).pow(2), EulerElement::unit());
        assert_eq!(e(&[1, -1]).pow(3), e(&[1, -3]));
    }

    #[test]
    fn inverse_requires_unit_constant_term() {
        let a = e(&[-1, 2, 0, -5]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), EulerElement::unit());
        assert!(e(&[2, 1]).inverse().is_none());
        assert!(EulerElement::theta().inverse().is_none());
        assert_eq!(
            a.pow_signed(-3).unwrap().mul(&a.pow(3)),
            EulerElement::unit()
        );
    }

    #[test]
    fn classify_examples() {
        assert_eq!(e(&[0, -1, -2]).classify(), ConeClass::MinusCone);
        assert_eq!(EulerElement::theta().classify(), ConeClass::Theta);
        assert_eq!(e(&[1, -2]).classify(), ConeClass::Mixed);
        assert_eq!(e(&[0, 0, 4]).classify(), ConeClass::PlusCone);
    }

    #[test]
    fn json_shape_is_sorted_pairs_of_decimal_strings() {
        let a = EulerElement::from_pairs([(5u64, -3i64), (0, 1)]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"coeffs":[[0,"1"],[5,"-3"]]}"#);
        let back: EulerElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn parse_drops_zero_and_rejects_unsorted() {
        let a: EulerElement = serde_json::from_str(r#"{"coeffs":[[0,"0"],[2,"7"]]}"#).unwrap();
        assert_eq!(a, EulerElement::monomial(2, 7));
        assert!(serde_json::from_str::<EulerElement>(r#"{"coeffs":[[2,"1"],[1,"1"]]}"#).is_err());
        assert!(serde_json::from_str::<EulerElement>(r#"{"coeffs":[[1,"x"]]}"#).is_err());
    }

    #[test]
    fn display_is_dense_to_top() {
        assert_eq!(e(&[-2]).to_string(), "(-2, …)");
        assert_eq!(e(&[0, 1]).to_string(), "(0, 1, …)");
        assert_eq!(EulerElement::theta().to_string(), "(0, …)");
    }
}
