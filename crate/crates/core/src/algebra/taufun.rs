//! Rational functions of τ in canonical form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{int, Rational};
use super::taupoly::{forward_owned, TauPoly};
use crate::error::{Error, Result};

/// `num / den` with `den` monic and coprime to `num`. Zero is `0 / 1`, so
/// structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TauFun {
    num: TauPoly,
    den: TauPoly,
}

impl Default for TauFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl TauFun {
    pub fn zero() -> Self {
        TauFun {
            num: TauPoly::zero(),
            den: TauPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(TauPoly::one())
    }

    pub fn tau() -> Self {
        Self::from_poly(TauPoly::tau())
    }

    pub fn from_poly(num: TauPoly) -> Self {
        TauFun {
            num,
            den: TauPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(TauPoly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(int(c))
    }

    /// Builds `num / den` and brings it to normal form.
    pub fn new(num: TauPoly, den: TauPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: TauPoly, den: TauPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(k) = den.tau_plus_one_power() {
            let (num, c) = num.strip_tau_plus_one(k);
            return TauFun {
                num,
                den: TauPoly::tau_plus_one_pow(k - c),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        TauFun { num, den }
    }

    pub fn num(&self) -> &TauPoly {
        &self.num
    }

    pub fn den(&self) -> &TauPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational constant, if τ does not occur.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TauFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        TauFun {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// d/dτ by the quotient rule.
    pub fn derivative(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::normalized(top, &self.den * &self.den)
    }

    /// Evaluates at a rational τ; `None` at a pole.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = self.den.eval(t);
        (!d.is_zero()).then(|| self.num.eval(t) / d)
    }
}

impl From<TauPoly> for TauFun {
    fn from(p: TauPoly) -> Self {
        TauFun::from_poly(p)
    }
}

impl fmt::Display for TauFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let num = if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({})", self.num)
            } else {
                self.num.to_string()
            };
            write!(f, "{num}/({})", self.den)
        }
    }
}

impl Add<&TauFun> for &TauFun {
    type Output = TauFun;
    fn add(self, rhs: &TauFun) -> TauFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return TauFun::from_poly(num);
            }
            return TauFun::normalized(num, self.den.clone());
        }
        if let (Some(a), Some(b)) = (self.den.tau_plus_one_power(), rhs.den.tau_plus_one_power()) {
            let lift = |n: &TauPoly, k: u32| &TauPoly::tau_plus_one_pow(k) * n;
            let k = a.max(b);
            let num = &lift(&self.num, k - a) + &lift(&rhs.num, k - b);
            return TauFun::normalized(num, TauPoly::tau_plus_one_pow(k));
        }
        let g = self.den.gcd(&rhs.den);
        let ld = self.den.div_rem(&g).0;
        let rd = rhs.den.div_rem(&g).0;
        let num = &(&self.num * &rd) + &(&rhs.num * &ld);
        TauFun::normalized(num, &ld * &rhs.den)
    }
}

impl Sub<&TauFun> for &TauFun {
    type Output = TauFun;
    fn sub(self, rhs: &TauFun) -> TauFun {
        self + &(-rhs)
    }
}

impl Mul<&TauFun> for &TauFun {
    type Output = TauFun;
    fn mul(self, rhs: &TauFun) -> TauFun {
        if self.is_zero() || rhs.is_zero() {
            return TauFun::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return TauFun::from_poly(&self.num * &rhs.num);
        }
        if let (Some(a), Some(b)) = (self.den.tau_plus_one_power(), rhs.den.tau_plus_one_power()) {
            let (num, c) = (&self.num * &rhs.num).strip_tau_plus_one(a + b);
            return TauFun {
                num,
                den: TauPoly::tau_plus_one_pow(a + b - c),
            };
        }
        // Cross-cancel so the product is already reduced.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (an, bd) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.div_rem(&g1).0, rhs.den.div_rem(&g1).0)
        };
        let (bn, ad) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.div_rem(&g2).0, self.den.div_rem(&g2).0)
        };
        let num = &an * &bn;
        let den = &ad * &bd;
        let lc = den.leading().expect("nonzero").clone();
        if lc.is_one() {
            TauFun { num, den }
        } else {
            let inv = lc.recip();
            TauFun {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }
}

impl Div<&TauFun> for &TauFun {
    type Output = TauFun;
    /// Panics on division by zero; use [`TauFun::inv`] for a fallible form.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &TauFun) -> TauFun {
        self * &rhs.inv().expect("division by zero TauFun")
    }
}

impl Neg for &TauFun {
    type Output = TauFun;
    fn neg(self) -> TauFun {
        TauFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_owned!(TauFun, Add add, Sub sub, Mul mul, Div div);

impl Zero for TauFun {
    fn zero() -> Self {
        TauFun::zero()
    }
    fn is_zero(&self) -> bool {
        TauFun::is_zero(self)
    }
}

impl One for TauFun {
    fn one() -> Self {
        TauFun::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn tf(num: &[i64], den: &[i64]) -> TauFun {
        TauFun::new(TauPoly::from_ints(num), TauPoly::from_ints(den)).unwrap()
    }

    #[test]
    fn canonical_form() {
        // (t^2 - 1)/(t - 1) = t + 1
        assert_eq!(tf(&[-1, 0, 1], &[-1, 1]), tf(&[1, 1], &[1]));
        // 2/(2t + 2) = 1/(t + 1)
        assert_eq!(tf(&[2], &[2, 2]), tf(&[1], &[1, 1]));
        assert_eq!(tf(&[0], &[3, 7]), TauFun::zero());
        assert!(TauFun::new(TauPoly::one(), TauPoly::zero()).is_err());
    }

    #[test]
    fn quotient_rule() {
        let f = tf(&[1], &[1, 1]);
        assert_eq!(f.derivative(), tf(&[-1], &[1, 2, 1]));
        assert_eq!(tf(&[0, 0, 1], &[1]).derivative(), tf(&[0, 2], &[1]));
        assert!(TauFun::constant(rat(3, 7)).derivative().is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = tf(&[1], &[1, 1]);
        let b = tf(&[0, 1], &[1, 1]);
        assert_eq!(&a + &b, TauFun::one());
        assert_eq!(&a * &tf(&[1, 1], &[1]), TauFun::one());
        assert_eq!((&b / &a), TauFun::tau());
        assert_eq!(a.to_string(), "1/(t + 1)");
        assert_eq!(tf(&[1, 1], &[0, 1]).to_string(), "(t + 1)/(t)");
    }
}
