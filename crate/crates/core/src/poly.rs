//! Exact integer polynomials in `z`, sized for run polynomials.
//!
//! Coefficients are `i128`; every operation uses checked arithmetic and
//! reports [`Error::Overflow`] instead of wrapping. Zero coefficients are
//! never stored, so derived equality is mathematical equality.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest `degree - lowest_exponent` that division and multiplication will
/// expand into a dense buffer.
pub const MAX_DENSE_SPAN: u32 = 1 << 16;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RunPolynomial {
    coeffs: BTreeMap<u32, i128>,
}

impl RunPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `coefficient * z^exponent`.
    pub fn monomial(exponent: u32, coefficient: i128) -> Self {
        let mut p = Self::zero();
        if coefficient != 0 {
            p.coeffs.insert(exponent, coefficient);
        }
        p
    }

    /// Builds `sum counts[e] * z^e`.
    pub fn from_counts(counts: &[u64]) -> Self {
        let coeffs = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| (e as u32, i128::from(c)))
            .collect();
        RunPolynomial { coeffs }
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (u32, i128)>>(terms: I) -> Result<Self> {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, exponent: u32) -> i128 {
        self.coeffs.get(&exponent).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn lowest_exponent(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i128)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    /// Adds `count * z^exponent` in place.
    pub fn add_term(&mut self, exponent: u32, count: i128) -> Result<()> {
        if count == 0 {
            return Ok(());
        }
        let slot = self.coeffs.entry(exponent).or_insert(0);
        *slot = slot.checked_add(count).ok_or(Error::Overflow)?;
        if *slot == 0 {
            self.coeffs.remove(&exponent);
        }
        Ok(())
    }

    /// Coefficient-wise sum. Associative and commutative, so partial
    /// accumulators can be combined in any tree shape.
    pub fn merge(&self, other: &RunPolynomial) -> Result<RunPolynomial> {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c)?;
        }
        Ok(out)
    }

    /// `self * (1+z)^m`.
    pub fn mul_binomial_power(&self, m: u32) -> Result<RunPolynomial> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let low = self.lowest_exponent().unwrap_or(0);
        self.degree()
            .unwrap_or(0)
            .checked_add(m)
            .ok_or(Error::Overflow)?;
        let mut dense = self.dense_from(low)?;
        if dense.len() + m as usize > MAX_DENSE_SPAN as usize {
            return Err(Error::SpanTooLarge(dense.len() as u64 + u64::from(m)));
        }
        dense.resize(dense.len() + m as usize, 0);
        for _ in 0..m {
            // (a_0 + a_1 z + ...)(1 + z): b_k = a_k + a_{k-1}
            for k in (1..dense.len()).rev() {
                dense[k] = dense[k].checked_add(dense[k - 1]).ok_or(Error::Overflow)?;
            }
        }
        Ok(Self::from_dense(low, &dense))
    }

    /// Exact division by `(1+z)^m`, one synthetic division by `1+z` per
    /// stage. Fails on the first stage that leaves a nonzero remainder.
    pub fn div_binomial_power(&self, m: u32) -> Result<RunPolynomial> {
        let mut current = self.clone();
        for stage in 1..=m {
            current = current.div_one_plus_z().map_err(|e| match e {
                Error::Divisibility { remainder, .. } => Error::Divisibility { stage, remainder },
                other => other,
            })?;
        }
        Ok(current)
    }

    fn div_one_plus_z(&self) -> Result<RunPolynomial> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let low = self.lowest_exponent().unwrap_or(0);
        let a = self.dense_from(low)?;
        // Synthetic division by (z - (-1)), highest coefficient first.
        let d = a.len() - 1;
        let mut quotient = vec![0i128; d];
        let mut carry = 0i128;
        for k in (1..=d).rev() {
            carry = a[k].checked_sub(carry).ok_or(Error::Overflow)?;
            quotient[k - 1] = carry;
        }
        let shifted = a[0].checked_sub(carry).ok_or(Error::Overflow)?;
        if shifted != 0 {
            // report the remainder of the unshifted polynomial: its value at -1
            let remainder = if low.is_multiple_of(2) {
                shifted
            } else {
                shifted.checked_neg().ok_or(Error::Overflow)?
            };
            return Err(Error::Divisibility {
                stage: 1,
                remainder,
            });
        }
        Ok(Self::from_dense(low, &quotient))
    }

    /// Horner evaluation at an integer point. Gaps between exponents are
    /// bridged with `checked_pow`, so sparse high-degree input stays cheap.
    pub fn eval_at(&self, x: i128) -> Result<i128> {
        let mut acc = 0i128;
        let mut terms = self.coeffs.iter().rev().peekable();
        while let Some((&e, &c)) = terms.next() {
            acc = acc.checked_add(c).ok_or(Error::Overflow)?;
            let next = terms.peek().map_or(0, |(&e2, _)| e2);
            let step = x.checked_pow(e - next).ok_or(Error::Overflow)?;
            acc = acc.checked_mul(step).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    /// Largest `t` with `(1+z)^t` dividing `self`.
    pub fn multiplicity_at_minus_one(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut t = 0;
        let mut current = self.clone();
        loop {
            match current.div_one_plus_z() {
                Ok(q) => {
                    current = q;
                    t += 1;
                }
                Err(Error::Divisibility { .. }) => return Ok(t),
                Err(e) => return Err(e),
            }
        }
    }

    /// Sum of coefficients, i.e. the value at `z = 1`.
    pub fn coefficient_sum(&self) -> Result<i128> {
        self.coeffs
            .values()
            .try_fold(0i128, |acc, &c| acc.checked_add(c))
            .ok_or(Error::Overflow)
    }

    /// JSON object mapping exponent strings to decimal coefficient strings.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("string map always serializes")
    }

    pub fn from_json(text: &str) -> Result<RunPolynomial> {
        serde_json::from_str(text).map_err(|e| Error::Decode(e.to_string()))
    }

    fn dense_from(&self, low: u32) -> Result<Vec<i128>> {
        let deg = self.degree().unwrap_or(low);
        if deg - low >= MAX_DENSE_SPAN {
            return Err(Error::SpanTooLarge(u64::from(deg - low) + 1));
        }
        let mut dense = vec![0i128; (deg - low) as usize + 1];
        for (e, c) in self.terms() {
            dense[(e - low) as usize] = c;
        }
        Ok(dense)
    }

    fn from_dense(low: u32, dense: &[i128]) -> RunPolynomial {
        let coeffs = dense
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (low + k as u32, c))
            .collect();
        RunPolynomial { coeffs }
    }
}

/// `2z + 12z^2 + 10z^3`; the zero polynomial prints as `0`.
impl fmt::Display for RunPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let magnitude = c.unsigned_abs();
            match (k, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match e {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if magnitude != 1 {
                        write!(f, "{magnitude}")?;
                    }
                    f.write_str("z")?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for RunPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in self.terms() {
            map.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for RunPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_map(PolyVisitor)
    }
}

struct PolyVisitor;

impl<'de> Visitor<'de> for PolyVisitor {
    type Value = RunPolynomial;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an object mapping exponent strings to decimal coefficient strings")
    }

    fn visit_map<A: MapAccess<'de>>(
        self,
        mut access: A,
    ) -> std::result::Result<Self::Value, A::Error> {
        let mut coeffs = BTreeMap::new();
        while let Some((key, value)) = access.next_entry::<String, String>()? {
            let e = parse_decimal::<u32>(&key)
                .ok_or_else(|| de::Error::custom(format!("bad exponent {key:?}")))?;
            let c = parse_decimal::<i128>(&value)
                .ok_or_else(|| de::Error::custom(format!("bad coefficient {value:?}")))?;
            if coeffs.insert(e, c).is_some() {
                return Err(de::Error::custom(format!("repeated exponent {e}")));
            }
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(RunPolynomial { coeffs })
    }
}

/// Plain decimal: optional leading `-`, then ASCII digits.
fn parse_decimal<T: std::str::FromStr>(s: &str) -> Option<T> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(u32, i128)]) -> RunPolynomial {
        RunPolynomial::from_terms(terms.iter().copied()).unwrap()
    }

    #[test]
    fn add_term_examples() {
        let mut p = RunPolynomial::zero();
        p.add_term(3, 2).unwrap();
        assert_eq!(p, poly(&[(3, 2)]));
        p.add_term(3, -2).unwrap();
        assert!(p.is_zero());
        let mut q = poly(&[(1, 1)]);
        q.add_term(2, 4).unwrap();
        assert_eq!(q, poly(&[(1, 1), (2, 4)]));
    }

    #[test]
    fn merge_examples() {
        let a = poly(&[(1, 2)]);
        let b = poly(&[(2, 4)]);
        assert_eq!(a.merge(&b).unwrap(), poly(&[(1, 2), (2, 4)]));
        assert_eq!(a.merge(&RunPolynomial::zero()).unwrap(), a);
        let c = poly(&[(1, 1), (2, 1)]);
        let d = poly(&[(1, 1), (2, -1)]);
        assert_eq!(c.merge(&d).unwrap(), poly(&[(1, 2)]));
    }

    #[test]
    fn mul_binomial_examples() {
        assert_eq!(
            RunPolynomial::monomial(3, 1).mul_binomial_power(2).unwrap(),
            poly(&[(3, 1), (4, 2), (5, 1)])
        );
        let p = poly(&[(1, 2), (2, 10)]);
        assert_eq!(p.mul_binomial_power(0).unwrap(), p);
        assert_eq!(
            p.mul_binomial_power(1).unwrap(),
            poly(&[(1, 2), (2, 12), (3, 10)])
        );
        assert!(RunPolynomial::zero()
            .mul_binomial_power(5)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn div_binomial_examples() {
        assert_eq!(
            poly(&[(1, 2), (2, 12), (3, 10)])
                .div_binomial_power(1)
                .unwrap(),
            poly(&[(1, 2), (2, 10)])
        );
        assert_eq!(
            poly(&[(3, 1), (4, 2), (5, 1)])
                .div_binomial_power(2)
                .unwrap(),
            RunPolynomial::monomial(3, 1)
        );
        assert_eq!(
            poly(&[(1, 2), (2, 4)]).div_binomial_power(1),
            Err(Error::Divisibility {
                stage: 1,
                remainder: 2
            })
        );
        // z^3 (1+z)^2 survives two stages and fails on the third
        assert_eq!(
            poly(&[(3, 1), (4, 2), (5, 1)]).div_binomial_power(3),
            Err(Error::Divisibility {
                stage: 3,
                remainder: -1
            })
        );
    }

    #[test]
    fn eval_examples() {
        let r4 = poly(&[(1, 2), (2, 12), (3, 10)]);
        assert_eq!(r4.eval_at(-1).unwrap(), 0);
        assert_eq!(r4.eval_at(1).unwrap(), 24);
        assert_eq!(r4.eval_at(2).unwrap(), 4 + 48 + 80);
        assert_eq!(RunPolynomial::zero().eval_at(7).unwrap(), 0);
        assert_eq!(RunPolynomial::monomial(0, 5).eval_at(-3).unwrap(), 5);
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(
            poly(&[(3, 1), (4, 2), (5, 1)])
                .multiplicity_at_minus_one()
                .unwrap(),
            2
        );
        assert_eq!(
            poly(&[(1, 2), (2, 4)]).multiplicity_at_minus_one().unwrap(),
            0
        );
        let cube = RunPolynomial::one().mul_binomial_power(3).unwrap();
        assert_eq!(cube, poly(&[(0, 1), (1, 3), (2, 3), (3, 1)]));
        assert_eq!(cube.multiplicity_at_minus_one().unwrap(), 3);
        assert_eq!(
            RunPolynomial::zero().multiplicity_at_minus_one(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn overflow_is_reported() {
        let mut p = RunPolynomial::monomial(0, i128::MAX);
        assert_eq!(p.add_term(0, 1), Err(Error::Overflow));
        assert_eq!(p.mul_binomial_power(1).unwrap().coefficient(1), i128::MAX);
        assert_eq!(
            RunPolynomial::monomial(0, i128::MAX)
                .merge(&RunPolynomial::monomial(1, i128::MAX))
                .unwrap()
                .mul_binomial_power(1),
            Err(Error::Overflow)
        );
        assert_eq!(
            RunPolynomial::monomial(3, i128::MAX).eval_at(2),
            Err(Error::Overflow)
        );
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[(1, 2), (2, 4)]).to_string(), "2z + 4z^2");
        assert_eq!(
            poly(&[(0, 1), (1, -1), (3, -7)]).to_string(),
            "1 - z - 7z^3"
        );
        assert_eq!(poly(&[(1, -2)]).to_string(), "-2z");
        assert_eq!(RunPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn json_encoding() {
        let p = poly(&[(1, 2), (2, 12), (3, 10), (10, -5)]);
        let text = p.to_json();
        assert_eq!(text, r#"{"1":"2","2":"12","3":"10","10":"-5"}"#);
        assert_eq!(RunPolynomial::from_json(&text).unwrap(), p);
        assert_eq!(RunPolynomial::zero().to_json(), "{}");
        let big = RunPolynomial::monomial(19, 2_432_902_008_176_640_000 * 1000);
        assert_eq!(RunPolynomial::from_json(&big.to_json()).unwrap(), big);
    }

    #[test]
    fn json_rejects_malformed() {
        for bad in [
            r#"{"1":2}"#,
            r#"{"-1":"2"}"#,
            r#"{"1":"+2"}"#,
            r#"{"1":"2.0"}"#,
            r#"{"x":"2"}"#,
            r#"{"1":"2","1":"3"}"#,
            r#"{"4294967296":"1"}"#,
            r#"[]"#,
        ] {
            assert!(RunPolynomial::from_json(bad).is_err(), "{bad}");
        }
        assert_eq!(
            RunPolynomial::from_json(r#"{"1":"0","2":"3"}"#).unwrap(),
            poly(&[(2, 3)])
        );
    }
}
