//! Exact arithmetic in `Z[A, A^-1, c]`.
//!
//! Every bracket in this crate takes values in this ring. Coefficients are
//! arbitrary-precision so leaf sums over large resolution trees never wrap.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exponent pair of a monomial `A^a_exp * c^c_exp`.
///
/// The derived ordering is lexicographic on `(c_exp, a_exp)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub c_exp: u32,
    pub a_exp: i64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("exponent of c must be non-negative, got {0}")]
    NegativeCExponent(i64),
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// An element of `Z[A^{±1}, c]` in canonical form (no zero coefficients).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TiedLaurent {
    terms: BTreeMap<Monomial, BigInt>,
}

impl TiedLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::a_pow(0)
    }

    /// Single term `coeff * A^a_exp * c^c_exp`; rejects negative powers of `c`.
    pub fn monomial(coeff: impl Into<BigInt>, a_exp: i64, c_exp: i64) -> Result<Self, LaurentError> {
        let c_exp = u32::try_from(c_exp).map_err(|_| LaurentError::NegativeCExponent(c_exp))?;
        Ok(Self::term(coeff.into(), Monomial { c_exp, a_exp }))
    }

    fn term(coeff: BigInt, mono: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Self { terms }
    }

    /// `A^k`.
    pub fn a_pow(k: i64) -> Self {
        Self::term(BigInt::one(), Monomial { c_exp: 0, a_exp: k })
    }

    /// `(-A)^k = (-1)^k A^k`.
    pub fn neg_a_pow(k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::term(BigInt::from(sign), Monomial { c_exp: 0, a_exp: k })
    }

    /// `c^k`.
    pub fn c_pow(k: u32) -> Self {
        Self::term(BigInt::one(), Monomial { c_exp: k, a_exp: 0 })
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::term(n.into(), Monomial { c_exp: 0, a_exp: 0 })
    }

    /// The variable `A`.
    pub fn a() -> Self {
        Self::a_pow(1)
    }

    /// The variable `c`.
    pub fn c() -> Self {
        Self::c_pow(1)
    }

    /// `A + A^-1`, the factor in the dichromatic skein relation.
    pub fn delta() -> Self {
        Self::a_pow(1) + Self::a_pow(-1)
    }

    /// `-A^2 - A^-2`, the value of an extra circle in the Kauffman bracket.
    pub fn loop_value() -> Self {
        -(Self::a_pow(2) + Self::a_pow(-2))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial { c_exp: 0, a_exp: 0 })
                .is_some_and(|c| c.is_one())
    }

    /// True when some term has a positive power of `c`.
    pub fn contains_c(&self) -> bool {
        self.terms.keys().any(|m| m.c_exp > 0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a_exp: i64, c_exp: u32) -> BigInt {
        self.terms
            .get(&Monomial { c_exp, a_exp })
            .cloned()
            .unwrap_or_default()
    }

    /// Terms in ascending `(c_exp, a_exp)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &BigInt)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiply by `A^k` without a full product.
    pub fn shift_a(&self, k: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial { c_exp: m.c_exp, a_exp: m.a_exp + k }, c.clone()))
            .collect();
        Self { terms }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, c * k)).collect();
        Self { terms }
    }

    fn add_term(&mut self, mono: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

impl AddAssign<&TiedLaurent> for TiedLaurent {
    fn add_assign(&mut self, rhs: &TiedLaurent) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl AddAssign for TiedLaurent {
    fn add_assign(&mut self, rhs: TiedLaurent) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl Add<&TiedLaurent> for &TiedLaurent {
    type Output = TiedLaurent;
    fn add(self, rhs: &TiedLaurent) -> TiedLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for TiedLaurent {
    type Output = TiedLaurent;
    fn add(mut self, rhs: TiedLaurent) -> TiedLaurent {
        self += rhs;
        self
    }
}

impl Neg for &TiedLaurent {
    type Output = TiedLaurent;
    fn neg(self) -> TiedLaurent {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        TiedLaurent { terms }
    }
}

impl Neg for TiedLaurent {
    type Output = TiedLaurent;
    fn neg(mut self) -> TiedLaurent {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Sub<&TiedLaurent> for &TiedLaurent {
    type Output = TiedLaurent;
    fn sub(self, rhs: &TiedLaurent) -> TiedLaurent {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Sub for TiedLaurent {
    type Output = TiedLaurent;
    fn sub(self, rhs: TiedLaurent) -> TiedLaurent {
        &self - &rhs
    }
}

impl Mul<&TiedLaurent> for &TiedLaurent {
    type Output = TiedLaurent;
    fn mul(self, rhs: &TiedLaurent) -> TiedLaurent {
        let mut out = TiedLaurent::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let mono = Monomial {
                    c_exp: m1.c_exp + m2.c_exp,
                    a_exp: m1.a_exp + m2.a_exp,
                };
                out.add_term(mono, c1 * c2);
            }
        }
        out
    }
}

impl Mul for TiedLaurent {
    type Output = TiedLaurent;
    fn mul(self, rhs: TiedLaurent) -> TiedLaurent {
        &self * &rhs
    }
}

// Mixed owned/borrowed operands.
macro_rules! mixed {
    ($tr:ident, $f:ident) => {
        impl $tr<&TiedLaurent> for TiedLaurent {
            type Output = TiedLaurent;
            fn $f(self, rhs: &TiedLaurent) -> TiedLaurent {
                (&self).$f(rhs)
            }
        }

        impl $tr<TiedLaurent> for &TiedLaurent {
            type Output = TiedLaurent;
            fn $f(self, rhs: TiedLaurent) -> TiedLaurent {
                self.$f(&rhs)
            }
        }
    };
}

mixed!(Add, add);
mixed!(Sub, sub);
mixed!(Mul, mul);

impl Sum for TiedLaurent {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| acc + p)
    }
}

impl<'a> Sum<&'a TiedLaurent> for TiedLaurent {
    fn sum<I: Iterator<Item = &'a TiedLaurent>>(iter: I) -> Self {
        let mut acc = Self::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

impl Product for TiedLaurent {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, p| acc * p)
    }
}

impl From<i64> for TiedLaurent {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

/// Renders terms by ascending power of `c`, then descending power of `A`:
/// `-A^4 - A^-4`, `c`, `2 + A^2*c`, `2*A^-3*c^2`.
impl fmt::Display for TiedLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(m1, _), (m2, _)| m1.c_exp.cmp(&m2.c_exp).then(m2.a_exp.cmp(&m1.a_exp)));
        for (i, (mono, coeff)) in ordered.into_iter().enumerate() {
            let negative = coeff.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = coeff.abs();
            let mut factors: Vec<String> = Vec::new();
            if !magnitude.is_one() {
                factors.push(magnitude.to_string());
            }
            match mono.a_exp {
                0 => {}
                1 => factors.push("A".to_string()),
                k => factors.push(format!("A^{k}")),
            }
            match mono.c_exp {
                0 => {}
                1 => factors.push("c".to_string()),
                k => factors.push(format!("c^{k}")),
            }
            if factors.is_empty() {
                factors.push("1".to_string());
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for TiedLaurent {
    type Err = LaurentError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| LaurentError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(fail("empty input"));
        }

        // Split at '+'/'-' signs that start a term (not ones following '^').
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') {
                if prev.is_some() {
                    if current.is_empty() {
                        return Err(fail("dangling sign"));
                    }
                    pieces.push((negative, std::mem::take(&mut current)));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
            prev = Some(ch);
        }
        if current.is_empty() {
            return Err(fail("dangling sign"));
        }
        pieces.push((negative, current));

        let mut out = TiedLaurent::zero();
        for (negative, body) in pieces {
            let mut coeff = BigInt::one();
            let mut mono = Monomial { c_exp: 0, a_exp: 0 };
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(fail("empty factor"));
                }
                if let Some(rest) = factor.strip_prefix('A') {
                    let exp = match rest.strip_prefix('^') {
                        Some(e) => e.parse::<i64>().map_err(|_| fail("bad exponent of A"))?,
                        None if rest.is_empty() => 1,
                        None => return Err(fail("unexpected text after A")),
                    };
                    mono.a_exp += exp;
                } else if let Some(rest) = factor.strip_prefix('c') {
                    let exp = match rest.strip_prefix('^') {
                        Some(e) => e.parse::<u32>().map_err(|_| fail("bad exponent of c"))?,
                        None if rest.is_empty() => 1,
                        None => return Err(fail("unexpected text after c")),
                    };
                    mono.c_exp += exp;
                } else {
                    let n: BigInt = factor.parse().map_err(|_| fail("bad coefficient"))?;
                    coeff *= n;
                }
            }
            out.add_term(mono, if negative { -coeff } else { coeff });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> TiedLaurent {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert!((TiedLaurent::a() + -TiedLaurent::a()).is_zero());
        let d = TiedLaurent::delta();
        assert_eq!(&d + &d, p("2*A + 2*A^-1"));
        assert_eq!(p("A^2 + c") + p("A^-2"), p("A^2 + A^-2 + c"));
    }

    #[test]
    fn mul_examples() {
        let d = TiedLaurent::delta();
        assert_eq!(&d * &d, p("A^2 + 2 + A^-2"));
        assert_eq!(TiedLaurent::loop_value() * TiedLaurent::c(), p("-A^2*c - A^-2*c"));
        let diff = TiedLaurent::a() - TiedLaurent::a_pow(-1);
        assert_eq!(diff * d, p("A^2 - A^-2"));
    }

    #[test]
    fn monomial_examples() {
        assert!(TiedLaurent::monomial(1, 0, 0).unwrap().is_one());
        assert_eq!(TiedLaurent::monomial(-1, 2, 0).unwrap(), p("-A^2"));
        assert_eq!(TiedLaurent::monomial(1, 0, 1).unwrap(), TiedLaurent::c());
        assert!(TiedLaurent::monomial(0, 5, 3).unwrap().is_zero());
        assert_eq!(
            TiedLaurent::monomial(1, 0, -1),
            Err(LaurentError::NegativeCExponent(-1))
        );
    }

    #[test]
    fn pow_examples() {
        let dk = TiedLaurent::loop_value();
        assert!(dk.pow(0).is_one());
        assert_eq!(dk.pow(2), p("A^4 + 2 + A^-4"));
        assert_eq!(TiedLaurent::c().pow(3), TiedLaurent::c_pow(3));
    }

    #[test]
    fn rendering() {
        assert_eq!(TiedLaurent::zero().to_string(), "0");
        assert_eq!(TiedLaurent::one().to_string(), "1");
        assert_eq!((-TiedLaurent::one()).to_string(), "-1");
        assert_eq!(p("-A^4 - A^-4").to_string(), "-A^4 - A^-4");
        assert_eq!(TiedLaurent::c().to_string(), "c");
        assert_eq!(p("A^2*c + 2").to_string(), "2 + A^2*c");
        assert_eq!(TiedLaurent::delta().to_string(), "A + A^-1");
        assert_eq!(p("-3*A^-2*c^2 + A").to_string(), "A - 3*A^-2*c^2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<TiedLaurent>().is_err());
        assert!("A +".parse::<TiedLaurent>().is_err());
        assert!("c^-1".parse::<TiedLaurent>().is_err());
        assert!("x".parse::<TiedLaurent>().is_err());
        assert!("A**2".parse::<TiedLaurent>().is_err());
    }

    #[test]
    fn big_coefficients_do_not_wrap() {
        let two = TiedLaurent::integer(2);
        let big = two.pow(200);
        assert_eq!(big.coeff(0, 0), BigInt::one() << 200);
    }

    fn arb_poly() -> impl Strategy<Value = TiedLaurent> {
        prop::collection::vec((-5i64..=5, -6i64..=6, 0i64..=3), 0..6).prop_map(|ts| {
            ts.into_iter()
                .map(|(k, a, c)| TiedLaurent::monomial(k, a, c).unwrap())
                .sum()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert!((&p + &(-&p)).is_zero());
        }

        #[test]
        fn text_round_trip(p in arb_poly()) {
            let back: TiedLaurent = p.to_string().parse().unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn no_zero_coefficients_stored(p in arb_poly(), q in arb_poly()) {
            let prod = &p * &q;
            prop_assert!(prod.terms().all(|(_, c)| !c.is_zero()));
        }
    }
}
