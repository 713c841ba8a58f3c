//! Dense univariate polynomials in the parameter τ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};

/// Polynomial in τ with rational coefficients, stored in ascending order with
/// no trailing zeros. The zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct TauPoly {
    coeffs: Vec<Rational>,
}

impl TauPoly {
    pub fn zero() -> Self {
        TauPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial τ.
    pub fn tau() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `a + b τ`.
    pub fn linear(a: i64, b: i64) -> Self {
        Self::from_coeffs(vec![int(a), int(b)])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        TauPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TauPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// Integer coefficients and a positive common denominator `d` with
    /// `self = (Σ cᵢ τ^i) / d`.
    fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        let d = self.coeffs.iter().fold(BigInt::one(), |acc, c| {
            if c.denom().is_one() {
                acc
            } else {
                acc.lcm(c.denom())
            }
        });
        let ints = self
            .coeffs
            .iter()
            .map(|c| {
                if d.is_one() {
                    c.numer().clone()
                } else {
                    c.numer() * (&d / c.denom())
                }
            })
            .collect();
        (ints, d)
    }

    /// `(τ + 1)^k`.
    pub fn tau_plus_one_pow(k: u32) -> Self {
        let mut coeffs = Vec::with_capacity(k as usize + 1);
        let mut c = BigInt::one();
        for i in 0..=k {
            coeffs.push(Rational::from_integer(c.clone()));
            c = c * BigInt::from(k - i) / BigInt::from(i + 1);
        }
        TauPoly { coeffs }
    }

    /// `Some(k)` when the polynomial is exactly `(τ + 1)^k`.
    pub fn tau_plus_one_power(&self) -> Option<u32> {
        let k = self.degree()? as u32;
        let mut c = BigInt::one();
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_integer() || a.numer() != &c {
                return None;
            }
            c = c * BigInt::from(k - i as u32) / BigInt::from(i as u32 + 1);
        }
        Some(k)
    }

    /// Divides out `(τ + 1)` at most `max` times, returning the quotient and
    /// how many factors were removed.
    pub fn strip_tau_plus_one(&self, max: u32) -> (Self, u32) {
        if self.is_zero() || max == 0 {
            return (self.clone(), 0);
        }
        // (τ + 1) is monic, so quotients of integer polynomials stay integral.
        let (mut p, d) = self.integer_form();
        let mut removed = 0;
        while removed < max && p.len() > 1 {
            let n = p.len();
            let mut q = vec![BigInt::zero(); n - 1];
            let mut carry = BigInt::zero();
            for i in (1..n).rev() {
                carry = &p[i] - &carry;
                q[i - 1] = carry.clone();
            }
            if p[0] != carry {
                break;
            }
            p = q;
            removed += 1;
        }
        if removed == 0 {
            return (self.clone(), 0);
        }
        let out = p.into_iter().map(|c| Rational::new(c, d.clone())).collect();
        (TauPoly::from_coeffs(out), removed)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &TauPoly) -> (TauPoly, TauPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &TauPoly) -> TauPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            if b.is_constant() {
                return Self::one();
            }
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Renders with the indeterminate named `var`, highest degree first.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse polynomial at position {position}: {message}")]
pub struct ParsePolyError {
    pub position: usize,
    pub message: String,
}

impl FromStr for TauPoly {
    type Err = ParsePolyError;

    /// Parses the form produced by `Display`: a sum of terms `c`, `c*t`,
    /// `c*t^k`, `t^k` with `c` an integer or `p/q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |position: usize, message: &str| ParsePolyError {
            position,
            message: message.to_string(),
        };
        let bytes: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let read_uint = |pos: &mut usize| -> Option<String> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (*pos > start).then(|| bytes[start..*pos].iter().collect())
        };
        let mut coeffs: Vec<Rational> = Vec::new();
        let mut first = true;
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                if first {
                    return Err(err(pos, "empty polynomial"));
                }
                break;
            }
            let mut negative = false;
            if bytes[pos] == '+' || bytes[pos] == '-' {
                negative = bytes[pos] == '-';
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                return Err(err(pos, "expected '+' or '-'"));
            }
            first = false;
            let mut coeff = Rational::one();
            let mut has_coeff = false;
            if let Some(n) = read_uint(&mut pos) {
                has_coeff = true;
                let numer: BigInt = n.parse().map_err(|_| err(pos, "bad integer"))?;
                let mut value = Rational::from_integer(numer);
                if pos < bytes.len() && bytes[pos] == '/' {
                    pos += 1;
                    let d = read_uint(&mut pos).ok_or_else(|| err(pos, "expected denominator"))?;
                    let denom: BigInt = d.parse().map_err(|_| err(pos, "bad integer"))?;
                    if denom.is_zero() {
                        return Err(err(pos, "zero denominator"));
                    }
                    value /= Rational::from_integer(denom);
                }
                coeff = value;
            }
            let mut degree = 0usize;
            let has_star = pos < bytes.len() && bytes[pos] == '*';
            if has_star {
                if !has_coeff {
                    return Err(err(pos, "unexpected '*'"));
                }
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == 't' {
                pos += 1;
                degree = 1;
                if pos < bytes.len() && bytes[pos] == '^' {
                    pos += 1;
                    let e = read_uint(&mut pos).ok_or_else(|| err(pos, "expected exponent"))?;
                    degree = e.parse().map_err(|_| err(pos, "bad exponent"))?;
                }
            } else if has_star || !has_coeff {
                return Err(err(pos, "expected 't'"));
            }
            if negative {
                coeff = -coeff;
            }
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, Rational::zero());
            }
            coeffs[degree] += coeff;
        }
        Ok(TauPoly::from_coeffs(coeffs))
    }
}

impl Add<&TauPoly> for &TauPoly {
    type Output = TauPoly;
    fn add(self, rhs: &TauPoly) -> TauPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TauPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&TauPoly> for &TauPoly {
    type Output = TauPoly;
    fn sub(self, rhs: &TauPoly) -> TauPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TauPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&TauPoly> for &TauPoly {
    type Output = TauPoly;
    fn mul(self, rhs: &TauPoly) -> TauPoly {
        if self.is_zero() || rhs.is_zero() {
            return TauPoly::zero();
        }
        // Convolve integer numerators over a common denominator so only the
        // output coefficients get reduced.
        let (a, da) = self.integer_form();
        let (b, db) = rhs.integer_form();
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let den = da * db;
        TauPoly::from_coeffs(
            out.into_iter()
                .map(|n| Rational::new(n, den.clone()))
                .collect(),
        )
    }
}

impl Neg for &TauPoly {
    type Output = TauPoly;
    fn neg(self) -> TauPoly {
        TauPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty { (&self).$m(rhs) }
        }
    )*
    impl Neg for $ty {
        type Output = $ty;
        fn neg(self) -> $ty { -(&self) }
    }
    };
}
pub(crate) use forward_owned;

forward_owned!(TauPoly, Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn division_and_gcd() {
        // (t^2 - 1) = (t - 1)(t + 1)
        let a = TauPoly::from_ints(&[-1, 0, 1]);
        let b = TauPoly::from_ints(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, TauPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        let c = TauPoly::from_ints(&[2, 2]);
        assert_eq!(a.gcd(&c), TauPoly::from_ints(&[1, 1]));
        assert_eq!(b.gcd(&TauPoly::from_ints(&[1, 1])), TauPoly::one());
    }

    #[test]
    fn display_parse() {
        let p = TauPoly::from_coeffs(vec![rat(-1, 2), int(0), int(3), int(-1)]);
        assert_eq!(p.to_string(), "-t^3 + 3*t^2 - 1/2");
        assert_eq!(p.to_string().parse::<TauPoly>().unwrap(), p);
        assert_eq!("0".parse::<TauPoly>().unwrap(), TauPoly::zero());
        assert_eq!(
            "t + t".parse::<TauPoly>().unwrap(),
            TauPoly::from_ints(&[0, 2])
        );
        assert!("t +".parse::<TauPoly>().is_err());
        assert!("3*".parse::<TauPoly>().is_err());
        assert!("1/0".parse::<TauPoly>().is_err());
    }

    #[test]
    fn powers_of_tau_plus_one() {
        let p = TauPoly::tau_plus_one_pow(4);
        assert_eq!(p, TauPoly::linear(1, 1).pow(4));
        assert_eq!(p.tau_plus_one_power(), Some(4));
        assert_eq!(TauPoly::one().tau_plus_one_power(), Some(0));
        assert_eq!(TauPoly::linear(1, 2).tau_plus_one_power(), None);
        let q = &TauPoly::from_ints(&[3, 0, 1]) * &TauPoly::tau_plus_one_pow(2);
        assert_eq!(q.strip_tau_plus_one(5), (TauPoly::from_ints(&[3, 0, 1]), 2));
        assert_eq!(q.strip_tau_plus_one(1).1, 1);
    }

    #[test]
    fn derivative_and_eval() {
        let p = TauPoly::from_ints(&[1, 2, 3]);
        assert_eq!(p.derivative(), TauPoly::from_ints(&[2, 6]));
        assert_eq!(p.eval(&int(2)), int(17));
    }
}
