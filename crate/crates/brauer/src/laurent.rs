//! Exact arithmetic in the coefficient ring ℤ[δ^{±1}].
//!
//! A [`LaurentPoly`] is a finite ℤ-linear combination of integer powers of the
//! loop parameter δ, stored as a sparse map from exponent to nonzero
//! coefficient. Zero is the empty map, so structural equality of the canonical
//! form is ring equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A Laurent polynomial in δ with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::delta_power(0)
    }

    /// The monomial δ^exp.
    pub fn delta_power(exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(exp, BigInt::one());
        Self { terms }
    }

    pub fn from_int(c: i64) -> Self {
        Self::term(0, c)
    }

    /// The single term c·δ^exp (canonicalized: zero coefficient gives zero).
    pub fn term(exp: i64, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(exp, BigInt::from(c));
        }
        Self { terms }
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut out = Self::zero();
        for (exp, c) in pairs {
            out.add_term(exp, c);
        }
        out
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Multiply by δ^exp (shift all exponents).
    pub fn shift(&self, exp: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + exp, c.clone())).collect(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*d")?,
                _ => write!(f, "{c}*d^{e}")?,
            }
        }
        Ok(())
    }
}

// JSON form: {"terms": [[exp, coeff], ...]} sorted by exponent ascending.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let pairs: Vec<(i64, i64)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let c: i64 = c
                    .try_into()
                    .map_err(|_| serde::ser::Error::custom("coefficient exceeds i64 range"))?;
                Ok((*e, c))
            })
            .collect::<Result<_, S::Error>>()?;
        let mut s = serializer.serialize_struct("LaurentPoly", 1)?;
        s.serialize_field("terms", &pairs)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            terms: Vec<(i64, i64)>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut out = LaurentPoly::zero();
        for (e, c) in raw.terms {
            if c == 0 {
                return Err(D::Error::custom("zero coefficient in canonical form"));
            }
            out.add_term(e, BigInt::from(c));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(e: i64) -> LaurentPoly {
        LaurentPoly::delta_power(e)
    }

    #[test]
    fn additive_inverse() {
        assert!((&d(1) + &-&d(1)).is_zero());
    }

    #[test]
    fn disjoint_supports() {
        let sum = &(&d(2) + &d(0)) + &d(1);
        assert_eq!(
            sum,
            LaurentPoly::from_terms([(0, 1.into()), (1, 1.into()), (2, 1.into())])
        );
    }

    #[test]
    fn like_terms() {
        let a = LaurentPoly::term(-1, 3);
        let b = LaurentPoly::term(-1, -1);
        assert_eq!(&a + &b, LaurentPoly::term(-1, 2));
    }

    #[test]
    fn unit_pair() {
        assert_eq!(&d(1) * &d(-1), LaurentPoly::one());
    }

    #[test]
    fn annihilator() {
        assert!((&d(2) * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let a = &d(1) + &LaurentPoly::one();
        let b = &d(1) - &LaurentPoly::one();
        assert_eq!(&a * &b, &d(2) - &LaurentPoly::one());
    }

    #[test]
    fn json_round_trip() {
        let p = &(&d(2) + &LaurentPoly::term(-1, 3)) - &LaurentPoly::one();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"terms":[[-1,3],[0,-1],[2,1]]}"#);
        let q: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(((-6i64..6), (-9i64..9)), 0..5)
            .prop_map(|v| LaurentPoly::from_terms(v.into_iter().map(|(e, c)| (e, c.into()))))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        }

        #[test]
        fn delta_powers_multiply(a in -20i64..20, b in -20i64..20) {
            prop_assert_eq!(&d(a) * &d(b), d(a + b));
        }
    }
}
