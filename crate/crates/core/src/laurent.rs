//! Laurent polynomials in `t^(1/2)` with arbitrary-precision integer coefficients.
//!
//! Exponents are stored doubled, so the key `k` stands for `t^(k/2)`. Two
//! polynomials are equal up to a power of `t^(1/2)` exactly when their
//! [`HalfPoly::canonicalize`]d forms coincide.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct HalfPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl HalfPoly {
    pub fn zero() -> Self {
        HalfPoly::default()
    }

    pub fn one() -> Self {
        HalfPoly::monomial(0, 1)
    }

    /// `coeff * t^(twice_exp/2)`.
    pub fn monomial(twice_exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = HalfPoly::zero();
        p.add_term(twice_exp, coeff.into());
        p
    }

    /// `t^exp` for an integral exponent.
    pub fn t_pow(exp: i64) -> Self {
        HalfPoly::monomial(2 * exp, 1)
    }

    /// Builds `sum c_i t^i` from integer-exponent coefficients starting at `t^start`.
    pub fn from_coeffs(start: i64, coeffs: &[i64]) -> Self {
        let mut p = HalfPoly::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(2 * (start + i as i64), BigInt::from(c));
        }
        p
    }

    /// The quantum integer `[i] = t^((i-1)/2) + t^((i-3)/2) + ... + t^((1-i)/2)`.
    pub fn quantum_integer(i: u32) -> Result<Self> {
        if i == 0 {
            return Err(Error::Precondition("quantum integer [0] is undefined (color 0)".into()));
        }
        let i = i as i64;
        let mut p = HalfPoly::zero();
        for j in 0..i {
            p.add_term(i - 1 - 2 * j, BigInt::one());
        }
        Ok(p)
    }

    /// Sum of `t^j` for `lo <= j <= hi`.
    pub fn box_poly(lo: i64, hi: i64) -> Self {
        let mut p = HalfPoly::zero();
        for j in lo..=hi {
            p.add_term(2 * j, BigInt::one());
        }
        p
    }

    pub fn add_term(&mut self, twice_exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(twice_exp).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&twice_exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, twice_exp: i64) -> BigInt {
        self.terms.get(&twice_exp).cloned().unwrap_or_default()
    }

    /// Iterates `(twice_exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_twice_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_twice_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `t^(k/2)`.
    pub fn shift(&self, twice_k: i64) -> Self {
        HalfPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + twice_k, c.clone())).collect(),
        }
    }

    /// The representative of the class of `self` up to powers of `t^(1/2)`
    /// whose lowest exponent is zero.
    pub fn canonicalize(&self) -> Result<Self> {
        match self.min_twice_exp() {
            None => Err(Error::ZeroPolynomial),
            Some(lo) => Ok(self.shift(-lo)),
        }
    }

    /// Like [`canonicalize`](Self::canonicalize) but maps zero to zero.
    pub fn canonical_or_zero(&self) -> Self {
        self.canonicalize().unwrap_or_default()
    }

    /// Equality up to a power of `t^(1/2)`; two zeros are equal.
    pub fn doteq(&self, other: &HalfPoly) -> bool {
        self.canonical_or_zero() == other.canonical_or_zero()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Evaluates at `t = -1`-style substitutions are not meaningful for half
    /// exponents, so this only handles `t -> -t` on integral polynomials.
    pub fn negate_variable(&self) -> Result<Self> {
        let mut out = HalfPoly::zero();
        for (&e, c) in &self.terms {
            if e.is_odd() {
                return Err(Error::Precondition("t -> -t needs integral exponents".into()));
            }
            let c = if (e / 2).is_odd() { -c.clone() } else { c.clone() };
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Dense coefficients of the canonical form.
    pub fn coeff_seq(&self) -> Result<CoeffSeq> {
        let canon = self.canonicalize()?;
        if canon.terms.keys().any(|e| e.is_odd()) {
            return Err(Error::Precondition(
                "exponents of mixed parity have no integral coefficient sequence".into(),
            ));
        }
        let hi = canon.max_twice_exp().unwrap_or(0) / 2;
        let coeffs = (0..=hi).map(|j| canon.coeff(2 * j)).collect();
        Ok(CoeffSeq(coeffs))
    }

    /// Exact quotient in the Laurent ring, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &HalfPoly) -> Option<HalfPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(HalfPoly::zero());
        }
        let (d_lo, d_hi) = (divisor.min_twice_exp()?, divisor.max_twice_exp()?);
        let d_lead = &divisor.terms[&d_hi];
        let floor = self.min_twice_exp()? - d_lo;
        let mut rem = self.clone();
        let mut quot = HalfPoly::zero();
        while let Some(r_hi) = rem.max_twice_exp() {
            let shift = r_hi - d_hi;
            if shift < floor {
                return None;
            }
            let (q, r) = rem.terms[&r_hi].div_rem(d_lead);
            if !r.is_zero() {
                return None;
            }
            rem = &rem - &(divisor * &HalfPoly::monomial(shift, q.clone()));
            quot.add_term(shift, q);
        }
        Some(quot)
    }
}

impl Add for &HalfPoly {
    type Output = HalfPoly;
    fn add(self, rhs: &HalfPoly) -> HalfPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Add for HalfPoly {
    type Output = HalfPoly;
    fn add(self, rhs: HalfPoly) -> HalfPoly {
        &self + &rhs
    }
}

impl Sub for &HalfPoly {
    type Output = HalfPoly;
    fn sub(self, rhs: &HalfPoly) -> HalfPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Sub for HalfPoly {
    type Output = HalfPoly;
    fn sub(self, rhs: HalfPoly) -> HalfPoly {
        &self - &rhs
    }
}

impl Neg for &HalfPoly {
    type Output = HalfPoly;
    fn neg(self) -> HalfPoly {
        HalfPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect() }
    }
}

impl Mul for &HalfPoly {
    type Output = HalfPoly;
    fn mul(self, rhs: &HalfPoly) -> HalfPoly {
        let mut out = HalfPoly::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Mul for HalfPoly {
    type Output = HalfPoly;
    fn mul(self, rhs: HalfPoly) -> HalfPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for HalfPoly {
    fn sum<I: Iterator<Item = HalfPoly>>(iter: I) -> HalfPoly {
        iter.fold(HalfPoly::zero(), |acc, p| &acc + &p)
    }
}

impl std::iter::Product for HalfPoly {
    fn product<I: Iterator<Item = HalfPoly>>(iter: I) -> HalfPoly {
        iter.fold(HalfPoly::one(), |acc, p| &acc * &p)
    }
}

fn fmt_power(f: &mut fmt::Formatter<'_>, twice_exp: i64) -> fmt::Result {
    if twice_exp.is_even() {
        match twice_exp / 2 {
            1 => write!(f, "t"),
            e => write!(f, "t^{e}"),
        }
    } else {
        write!(f, "t^({twice_exp}/2)")
    }
}

impl fmt::Display for HalfPoly {
    /// `1 + 2*t + t^2`, `t^(-1/2) + t^(1/2)`, `1 - t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                fmt_power(f, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HalfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HalfPoly({self})")
    }
}

fn parse_twice_exp(s: &str) -> Result<i64> {
    let bad = || Error::Parse(format!("bad exponent `{s}`"));
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| s.strip_prefix('{').and_then(|r| r.strip_suffix('}')))
        .unwrap_or(s)
        .trim();
    match inner.split_once('/') {
        Some((num, den)) => {
            if den.trim() != "2" {
                return Err(bad());
            }
            num.trim().parse::<i64>().map_err(|_| bad())
        }
        None => inner.parse::<i64>().map(|e| 2 * e).map_err(|_| bad()),
    }
}

fn parse_term(s: &str) -> Result<(i64, BigInt)> {
    let bad = || Error::Parse(format!("bad term `{s}`"));
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    let (coeff_part, var_part) = match s.find('t') {
        None => (s, None),
        Some(pos) => {
            let c = s[..pos].trim().trim_end_matches('*').trim();
            (c, Some(&s[pos + 1..]))
        }
    };
    let coeff = if coeff_part.is_empty() {
        BigInt::one()
    } else {
        coeff_part.parse::<BigInt>().map_err(|_| bad())?
    };
    let twice_exp = match var_part {
        None => 0,
        Some(rest) => {
            let rest = rest.trim();
            if rest.is_empty() {
                2
            } else {
                let e = rest.strip_prefix('^').ok_or_else(bad)?;
                parse_twice_exp(e.trim())?
            }
        }
    };
    Ok((twice_exp, coeff))
}

impl FromStr for HalfPoly {
    type Err = Error;

    /// Accepts the rendering produced by `Display`, plus `t^{k/2}` exponents.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(HalfPoly::zero());
        }
        let mut out = HalfPoly::zero();
        let mut depth = 0i32;
        let mut start = 0usize;
        let mut sign = 1i32;
        let bytes = s.as_bytes();
        let mut pending: Vec<(i32, &str)> = Vec::new();
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' | b'{' => depth += 1,
                b')' | b'}' => depth -= 1,
                b'+' | b'-' if depth == 0 => {
                    // a sign directly after `^` belongs to the exponent
                    let prev = s[..i].trim_end();
                    if prev.ends_with('^') {
                        continue;
                    }
                    let chunk = s[start..i].trim();
                    if !chunk.is_empty() {
                        pending.push((sign, chunk));
                    } else if i != 0 && !prev.is_empty() {
                        return Err(Error::Parse(format!("dangling operator in `{s}`")));
                    }
                    sign = if b == b'-' { -1 } else { 1 };
                    start = i + 1;
                }
                _ => {}
            }
        }
        pending.push((sign, s[start..].trim()));
        for (sign, chunk) in pending {
            let (e, c) = parse_term(chunk)?;
            out.add_term(e, if sign < 0 { -c } else { c });
        }
        Ok(out)
    }
}

impl Serialize for HalfPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HalfPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Dense coefficient list from lowest to highest degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffSeq(pub Vec<BigInt>);

impl CoeffSeq {
    pub fn from_i64(v: &[i64]) -> Self {
        CoeffSeq(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Rises weakly to a peak and then falls weakly.
    pub fn is_unimodal(&self) -> bool {
        let a = &self.0;
        let mut i = 1;
        while i < a.len() && a[i - 1] <= a[i] {
            i += 1;
        }
        while i < a.len() && a[i - 1] >= a[i] {
            i += 1;
        }
        i >= a.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let a = &self.0;
        a.iter().eq(a.iter().rev())
    }

    /// Symmetric, unimodal, and every plateau in the first half runs to the middle.
    pub fn is_trapezoidal(&self) -> bool {
        if !self.is_symmetric() || !self.is_unimodal() {
            return false;
        }
        let a = &self.0;
        let n = a.len();
        let half = n / 2;
        let mid = n - half; // 1-based index of the (upper) middle entry
        for i in 1..=half {
            if i < n && a[i - 1] == a[i] && !a[i - 1..mid].iter().all(|x| *x == a[i - 1]) {
                return false;
            }
        }
        true
    }

    /// Every entry between the first and last nonzero one is positive.
    pub fn strict_positive(&self) -> bool {
        let a = &self.0;
        let first = a.iter().position(|c| !c.is_zero());
        let last = a.iter().rposition(|c| !c.is_zero());
        match (first, last) {
            (Some(lo), Some(hi)) => a[lo..=hi].iter().all(|c| c.is_positive()),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> HalfPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        let q = p("1 + 2*t - t^3");
        assert_eq!(&q + &HalfPoly::zero(), q);
        assert_eq!(p("1 + t") + p("t + t^2"), p("1 + 2*t + t^2"));
    }

    #[test]
    fn mul_examples() {
        let q = p("3 - t^(1/2)");
        assert_eq!(&q * &HalfPoly::one(), q);
        assert_eq!(p("1 + t + t^2") * p("1 + t"), p("1 + 2*t + 2*t^2 + t^3"));
        let q3 = HalfPoly::quantum_integer(3).unwrap();
        let q2 = HalfPoly::quantum_integer(2).unwrap();
        assert_eq!(q3 * q2, p("t^(-3/2) + 2*t^(-1/2) + 2*t^(1/2) + t^(3/2)"));
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(p("t^(-1/2) + t^(1/2)").canonicalize().unwrap(), p("1 + t"));
        assert_eq!(p("1 + t").canonicalize().unwrap(), p("1 + t"));
        assert_eq!(p("t^2 + 2*t^3 + t^4").canonicalize().unwrap(), p("1 + 2*t + t^2"));
        assert!(matches!(HalfPoly::zero().canonicalize(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn quantum_integer_examples() {
        assert_eq!(HalfPoly::quantum_integer(1).unwrap(), HalfPoly::one());
        assert_eq!(HalfPoly::quantum_integer(2).unwrap(), p("t^(-1/2) + t^(1/2)"));
        assert_eq!(
            HalfPoly::quantum_integer(4).unwrap(),
            p("t^(-3/2) + t^(-1/2) + t^(1/2) + t^(3/2)")
        );
        assert!(HalfPoly::quantum_integer(0).is_err());
        for i in 1..10u32 {
            let q = HalfPoly::quantum_integer(i).unwrap();
            assert_eq!(q.len(), i as usize);
            assert_eq!(q.eval_at_one(), BigInt::from(i));
        }
    }

    #[test]
    fn unimodal_examples() {
        assert!(CoeffSeq::from_i64(&[1, 2, 3, 2, 1]).is_unimodal());
        assert!(!CoeffSeq::from_i64(&[1, 2, 1, 2, 1]).is_unimodal());
        let ex = p("t^2 + 2*t^3 + 3*t^4 + 3*t^5 + 2*t^6 + t^7").coeff_seq().unwrap();
        assert_eq!(ex, CoeffSeq::from_i64(&[1, 2, 3, 3, 2, 1]));
        assert!(ex.is_unimodal());
    }

    #[test]
    fn trapezoidal_examples() {
        assert!(CoeffSeq::from_i64(&[1, 3, 3, 1]).is_trapezoidal());
        assert!(!CoeffSeq::from_i64(&[1, 2, 2, 3, 2, 2, 1]).is_trapezoidal());
        assert!(CoeffSeq::from_i64(&[1, 2, 1]).is_trapezoidal());
        assert!(CoeffSeq::from_i64(&[2, 2, 2]).is_trapezoidal());
        assert!(CoeffSeq::from_i64(&[7]).is_trapezoidal());
        assert!(!CoeffSeq::from_i64(&[1, 2, 3]).is_trapezoidal());
    }

    #[test]
    fn strict_positive_examples() {
        assert!(!CoeffSeq::from_i64(&[1, 0, 1]).strict_positive());
        assert!(CoeffSeq::from_i64(&[1, 2, 1]).strict_positive());
        assert!(!CoeffSeq::from_i64(&[1, -1, 1]).strict_positive());
    }

    #[test]
    fn coeff_seq_rejects_mixed_parity() {
        assert!(p("1 + t^(1/2)").coeff_seq().is_err());
        assert_eq!(p("t^(1/2) + t^(3/2)").coeff_seq().unwrap(), CoeffSeq::from_i64(&[1, 1]));
    }

    #[test]
    fn render_and_parse() {
        let cases = [
            "1 + 2*t + 3*t^2 + 3*t^3 + 2*t^4 + t^5",
            "t^(-1/2) + t^(1/2)",
            "-2*t^-3 + 1 - t",
            "0",
            "12*t^(7/2)",
        ];
        for c in cases {
            assert_eq!(p(c).to_string(), c);
        }
        assert_eq!(p("t^{3/2} + t^{-1/2}"), p("t^(3/2) + t^(-1/2)"));
        assert!("1 + + t".parse::<HalfPoly>().is_err());
        assert!("t^(1/3)".parse::<HalfPoly>().is_err());
    }

    #[test]
    fn exact_division() {
        let a = p("1 + t + t^2");
        let b = p("t^(-1/2) - 3 + t^4");
        assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        assert_eq!(p("1 + t^2").div_exact(&p("1 + t")), None);
        assert_eq!(p("2 + 2*t").div_exact(&p("2")), Some(p("1 + t")));
        assert_eq!(p("1 + t").div_exact(&p("2")), None);
    }

    #[test]
    fn negate_variable() {
        assert_eq!(p("1 - t + t^2").negate_variable().unwrap(), p("1 + t + t^2"));
    }
}
