//! Truncated formal power series in one variable over `TauFun`.
//!
//! A series of order `N` carries exactly the coefficients of `x^0..=x^N`.
//! Binary operations return the smaller input order and never extrapolate.

use std::fmt;

use super::rational::{int, Rational};
use super::taufun::TauFun;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XSeries {
    coeffs: Vec<TauFun>,
}

impl XSeries {
    /// `coeffs[n]` is the coefficient of `x^n`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<TauFun>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        XSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> TauFun) -> Self {
        XSeries::new((0..=order).map(f).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| TauFun::zero())
    }

    pub fn constant(c: TauFun, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(TauFun::one(), order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = TauFun::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[TauFun] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&TauFun> {
        self.coeffs.get(n).ok_or(Error::OrderTooLow {
            requested: n,
            order: self.order(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(TauFun::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderTooLow {
                requested: order,
                order: self.order(),
            });
        }
        Ok(XSeries::new(self.coeffs[..=order].to_vec()))
    }

    pub fn add(&self, other: &XSeries) -> XSeries {
        let n = self.order().min(other.order());
        Self::from_fn(n, |i| &self.coeffs[i] + &other.coeffs[i])
    }

    pub fn sub(&self, other: &XSeries) -> XSeries {
        let n = self.order().min(other.order());
        Self::from_fn(n, |i| &self.coeffs[i] - &other.coeffs[i])
    }

    pub fn neg(&self) -> XSeries {
        Self::from_fn(self.order(), |i| -&self.coeffs[i])
    }

    pub fn scale(&self, c: &TauFun) -> XSeries {
        Self::from_fn(self.order(), |i| &self.coeffs[i] * c)
    }

    pub fn scale_rational(&self, c: &Rational) -> XSeries {
        Self::from_fn(self.order(), |i| self.coeffs[i].scale(c))
    }

    /// Truncated Cauchy product at `min(self.order, other.order)`.
    pub fn mul(&self, other: &XSeries) -> XSeries {
        let n = self.order().min(other.order());
        let mut out = vec![TauFun::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        XSeries::new(out)
    }

    pub fn pow(&self, e: u32) -> XSeries {
        (0..e).fold(Self::one(self.order()), |acc, _| acc.mul(self))
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn recip(&self) -> Result<XSeries> {
        let a0_inv = self.coeffs[0].inv()?;
        let n = self.order();
        let mut out: Vec<TauFun> = Vec::with_capacity(n + 1);
        out.push(a0_inv.clone());
        for k in 1..=n {
            let mut acc = TauFun::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = &acc + &(&self.coeffs[j] * &out[k - j]);
                }
            }
            out.push(-&(&acc * &a0_inv));
        }
        Ok(XSeries::new(out))
    }

    /// Division by `x`; the constant term must vanish. The order drops by one.
    pub fn div_x(&self) -> Result<XSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        if self.order() == 0 {
            return Err(Error::OrderTooLow {
                requested: 1,
                order: 0,
            });
        }
        Ok(XSeries::new(self.coeffs[1..].to_vec()))
    }

    /// `outer ∘ inner`, truncated at the smaller order.
    pub fn compose(&self, inner: &XSeries) -> Result<XSeries> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n)?;
        let mut acc = XSeries::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = &acc.coeffs[0] + &self.coeffs[k];
        }
        Ok(acc)
    }

    /// `ln(1 - a)`, from `x L' = -x a' / (1 - a)`.
    pub fn log1m(&self) -> Result<XSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let b = self.xddx().mul(&XSeries::one(n).sub(self).recip()?);
        Ok(Self::from_fn(n, |k| {
            if k == 0 {
                TauFun::zero()
            } else {
                -&b.coeffs[k].scale(&Rational::new(1.into(), (k as i64).into()))
            }
        }))
    }

    /// `exp(a)`, from `x E' = x a' E`.
    pub fn exp(&self) -> Result<XSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let da = self.xddx();
        let mut out = vec![TauFun::one()];
        for k in 1..=n {
            let mut acc = TauFun::zero();
            for j in 1..=k {
                if !da.coeffs[j].is_zero() {
                    acc = &acc + &(&da.coeffs[j] * &out[k - j]);
                }
            }
            out.push(acc.scale(&Rational::new(1.into(), (k as i64).into())));
        }
        Ok(XSeries::new(out))
    }

    /// `(1 - a)^τ = exp(τ · ln(1 - a))`.
    pub fn pow_tau(&self) -> Result<XSeries> {
        self.log1m()?.scale(&TauFun::tau()).exp()
    }

    /// The Euler operator `x d/dx`.
    pub fn xddx(&self) -> XSeries {
        Self::from_fn(self.order(), |n| self.coeffs[n].scale(&int(n as i64)))
    }

    /// Coefficient-wise d/dτ.
    pub fn dtau(&self) -> XSeries {
        Self::from_fn(self.order(), |n| self.coeffs[n].derivative())
    }

    /// First index where `self` and `other` differ, within the common order.
    pub fn first_difference(&self, other: &XSeries) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&i| self.coeffs[i] != other.coeffs[i])
    }
}

impl fmt::Display for XSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{n}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::algebra::taupoly::TauPoly;

    fn ints(v: &[i64]) -> XSeries {
        XSeries::new(v.iter().map(|&c| TauFun::from_int(c)).collect())
    }

    #[test]
    fn difference_of_squares() {
        let a = ints(&[1, 1, 0]);
        let b = ints(&[1, -1, 0]);
        assert_eq!(a.mul(&b), ints(&[1, 0, -1]));
        assert_eq!(a.mul(&XSeries::one(2)), a);
    }

    #[test]
    fn geometric_series_times_one_minus_x() {
        let geo = ints(&[1; 6]);
        // Oracle: direct convolution of (1,1,1,1,1,1) with (1,-1).
        let mut expect = vec![0i64; 6];
        for i in 0..6 {
            for (j, c) in [1i64, -1].iter().enumerate() {
                if i + j < 6 {
                    expect[i + j] += c;
                }
            }
        }
        assert_eq!(geo.mul(&ints(&[1, -1, 0, 0, 0, 0])), ints(&expect));
        assert_eq!(expect, vec![1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn orders_take_the_minimum() {
        let a = ints(&[1, 2, 3, 4]);
        let b = ints(&[1, 1]);
        assert_eq!(a.mul(&b).order(), 1);
        assert_eq!(a.add(&b).order(), 1);
        assert!(matches!(
            b.coeff(2),
            Err(Error::OrderTooLow {
                requested: 2,
                order: 1
            })
        ));
    }

    #[test]
    fn compose_examples() {
        let outer = ints(&[0, 0, 1, 0]);
        let inner = ints(&[0, 1, 1, 0]);
        assert_eq!(outer.compose(&inner).unwrap(), ints(&[0, 0, 1, 2]));
        assert_eq!(outer.compose(&XSeries::x(3)).unwrap(), outer);
        assert_eq!(
            outer.compose(&ints(&[1, 1, 0, 0])),
            Err(Error::NonzeroConstantTerm)
        );
    }

    #[test]
    fn exp_of_log_one_plus_x() {
        let neg_x = XSeries::x(10).neg();
        // ln(1 + x) = log1m(-x)
        let l = neg_x.log1m().unwrap();
        let mut expect = XSeries::zero(10);
        expect.coeffs[0] = TauFun::one();
        expect.coeffs[1] = TauFun::one();
        assert_eq!(l.exp().unwrap(), expect);
    }

    #[test]
    fn mercator_and_binomial() {
        let l = XSeries::x(3).log1m().unwrap();
        assert_eq!(
            l.coeffs(),
            &[
                TauFun::zero(),
                TauFun::from_int(-1),
                TauFun::constant(rat(-1, 2)),
                TauFun::constant(rat(-1, 3))
            ]
        );
        let p = XSeries::x(4).pow_tau().unwrap();
        assert_eq!(p.coeff(1).unwrap(), &-TauFun::tau());
        // Hand expansion of exp(τ ln(1-x)) at x^2: τ^2/2 - τ/2.
        let expect =
            TauFun::from_poly(TauPoly::from_coeffs(vec![rat(0, 1), rat(-1, 2), rat(1, 2)]));
        assert_eq!(p.coeff(2).unwrap(), &expect);
    }

    #[test]
    fn euler_and_tau_derivative() {
        assert_eq!(XSeries::x(3).xddx(), XSeries::x(3));
        assert!(ints(&[5, 0, 0]).xddx().is_zero());
        assert_eq!(ints(&[0, 1, 3]).xddx(), ints(&[0, 1, 6]));

        let mut s = XSeries::zero(2);
        s.coeffs[1] = TauFun::from_poly(TauPoly::from_ints(&[0, 0, 1]));
        assert_eq!(
            s.dtau().coeff(1).unwrap(),
            &TauFun::from_poly(TauPoly::from_ints(&[0, 2]))
        );
        assert!(ints(&[1, 2, 3]).dtau().is_zero());
    }

    #[test]
    fn reciprocal() {
        let one_minus_x = ints(&[1, -1, 0, 0]);
        assert_eq!(one_minus_x.recip().unwrap(), ints(&[1, 1, 1, 1]));
        assert!(ints(&[0, 1]).recip().is_err());
    }
}
