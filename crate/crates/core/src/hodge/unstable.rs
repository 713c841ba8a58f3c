//! The unstable pieces `Ξ𝒞_1^0` and `Ξ𝒞_2^0`, checked through their closed
//! forms.

use std::fmt;

use crate::algebra::rational::{factorial, int, Rational};
use crate::algebra::{TauFun, TauPoly, XSeries};
use crate::error::Result;
use crate::inversion::{omega_series, one_plus_tau, y_series, IdentityCheck};

/// `ln(1 - ω)`, the image of `x d/dx Ξ𝒞_1^0`.
pub fn unstable_c10_image(order: usize) -> Result<XSeries> {
    omega_series(order).log1m()
}

/// Checks `ln(1-ω) = -Σ_d ∏_{a=1}^{d-1}(dτ+a)/d! x^d` and
/// `x d/dx ln(1-ω) = -(y-1)/(τ+1)` through `order`.
pub fn unstable_c10_check(order: usize) -> Result<(IdentityCheck, IdentityCheck)> {
    let image = unstable_c10_image(order)?;
    let explicit = XSeries::from_fn(order, |d| {
        if d == 0 {
            return TauFun::zero();
        }
        let p = (1..d as i64).fold(TauPoly::one(), |acc, a| {
            &acc * &TauPoly::linear(a, d as i64)
        });
        TauFun::from_poly(p.scale(&-Rational::from_integer(factorial(d as u32)).recip()))
    });
    let first = IdentityCheck::from_residual(&image.sub(&explicit));
    let y_minus_one = y_series(order).sub(&XSeries::one(order));
    let expect = y_minus_one.scale(&-&one_plus_tau().inv()?);
    let second = IdentityCheck::from_residual(&image.xddx().sub(&expect));
    Ok((first, second))
}

/// Bivariate series truncated at total degree `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries {
    order: usize,
    /// `coeffs[i][j]` is the coefficient of `x1^i x2^j`, `i + j ≤ order`.
    coeffs: Vec<Vec<TauFun>>,
}

impl BiSeries {
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> TauFun) -> Self {
        let coeffs = (0..=order)
            .map(|i| (0..=order - i).map(|j| f(i, j)).collect())
            .collect();
        BiSeries { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_, _| TauFun::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::from_fn(order, |i, j| {
            if i + j == 0 {
                TauFun::one()
            } else {
                TauFun::zero()
            }
        })
    }

    /// A univariate series in `x1` (`second = false`) or `x2`.
    pub fn from_univariate(s: &XSeries, second: bool) -> Result<Self> {
        let order = s.order();
        let c = s.coeffs();
        Ok(Self::from_fn(order, |i, j| match (second, i, j) {
            (false, i, 0) => c[i].clone(),
            (true, 0, j) => c[j].clone(),
            _ => TauFun::zero(),
        }))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize, j: usize) -> &TauFun {
        &self.coeffs[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(TauFun::is_zero)
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        (0..=self.order).find(|&d| (0..=d).any(|i| !self.coeffs[i][d - i].is_zero()))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.order.min(other.order), |i, j| {
            &self.coeffs[i][j] + &other.coeffs[i][j]
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(self.order.min(other.order), |i, j| {
            &self.coeffs[i][j] - &other.coeffs[i][j]
        })
    }

    pub fn scale(&self, c: &TauFun) -> Self {
        Self::from_fn(self.order, |i, j| &self.coeffs[i][j] * c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order.min(other.order);
        let mut out = Self::zero(n);
        for i in 0..=n {
            for j in 0..=n - i {
                let a = &self.coeffs[i][j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..=n - i - j {
                    for l in 0..=n - i - j - k {
                        let b = &other.coeffs[k][l];
                        if !b.is_zero() {
                            out.coeffs[i + k][j + l] = &out.coeffs[i + k][j + l] + &(a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// `x1 ∂/∂x1 + x2 ∂/∂x2`: scales the total-degree-d part by d.
    pub fn euler(&self) -> Self {
        Self::from_fn(self.order, |i, j| {
            self.coeffs[i][j].scale(&int((i + j) as i64))
        })
    }

    /// `ln(self)` for a series with constant term 1.
    pub fn ln(&self) -> Self {
        assert!(self.coeffs[0][0].is_one(), "ln needs constant term 1");
        let mut a = self.clone();
        a.coeffs[0][0] = TauFun::zero();
        let mut acc = Self::zero(self.order);
        let mut power = Self::one(self.order);
        for k in 1..=self.order {
            power = power.mul(&a);
            let w = Rational::new(
                if k % 2 == 1 { 1.into() } else { (-1).into() },
                (k as i64).into(),
            );
            acc = acc.add(&power.scale(&TauFun::constant(w)));
        }
        acc
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for d in 0..=self.order {
            for i in (0..=d).rev() {
                let c = &self.coeffs[i][d - i];
                if c.is_zero() {
                    continue;
                }
                if wrote {
                    f.write_str(" + ")?;
                }
                write!(f, "({c})*x1^{i}*x2^{}", d - i)?;
                wrote = true;
            }
        }
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O({})", self.order + 1)
    }
}

/// `(ω(x1) - ω(x2))/(x1 - x2) = Σ_n [x^n]ω · h_{n-1}(x1, x2)`.
fn difference_quotient(omega: &XSeries, order: usize) -> BiSeries {
    BiSeries::from_fn(order, |i, j| omega.coeffs()[i + j + 1].clone())
}

pub fn unstable_c20_check(order: usize) -> Result<bool> {
    unstable_c20_check_with(order, true)
}

/// Applies `x1∂1 + x2∂2` to `-ln((ω1-ω2)/(x1-x2)) - τ(ln(1-ω1) + ln(1-ω2))`
/// and compares with `-τ(τ+1) ω1ω2/([1-(τ+1)ω1][1-(τ+1)ω2])`, and with the
/// double series `-τ(τ+1) Σ x1^μ1 x2^μ2/(μ1+μ2) ∏ ∏_{a=1}^{μ_i-1}(μ_iτ+a)/(μ_i-1)!`
/// under the same operator. `with_tau = false` drops the τ in front of the
/// logarithms.
pub fn unstable_c20_check_with(order: usize, with_tau: bool) -> Result<bool> {
    let omega = omega_series(order + 1);
    let q = difference_quotient(&omega, order);
    let log1m = omega.truncate(order)?.log1m()?;
    let logs =
        BiSeries::from_univariate(&log1m, false)?.add(&BiSeries::from_univariate(&log1m, true)?);
    let tau = if with_tau {
        TauFun::tau()
    } else {
        TauFun::one()
    };
    let closed = q.ln().add(&logs.scale(&tau)).scale(&-TauFun::one());
    let lhs = closed.euler();

    // ω/(1-(τ+1)ω) = (y-1)/(τ+1)
    let u = y_series(order)
        .sub(&XSeries::one(order))
        .scale(&one_plus_tau().inv()?);
    let tau_one_plus_tau = &TauFun::tau() * &one_plus_tau();
    let rhs = BiSeries::from_univariate(&u, false)?
        .mul(&BiSeries::from_univariate(&u, true)?)
        .scale(&-&tau_one_plus_tau);

    let single = |mu: usize| -> TauFun {
        let p = (1..mu as i64).fold(TauPoly::one(), |acc, a| {
            &acc * &TauPoly::linear(a, mu as i64)
        });
        TauFun::from_poly(p.scale(&Rational::from_integer(factorial(mu as u32 - 1)).recip()))
    };
    let double = BiSeries::from_fn(order, |i, j| {
        if i == 0 || j == 0 {
            return TauFun::zero();
        }
        let w = Rational::new(1.into(), ((i + j) as i64).into());
        (&(&single(i) * &single(j)) * &tau_one_plus_tau).scale(&-w)
    });

    Ok(lhs == rhs && double.euler() == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn c10_coefficients() {
        let s = unstable_c10_image(6).unwrap();
        assert_eq!(s.coeff(1).unwrap(), &TauFun::from_int(-1));
        assert_eq!(
            s.coeff(2).unwrap(),
            &TauFun::from_poly(TauPoly::from_coeffs(vec![rat(-1, 2), rat(-1, 1)]))
        );
        let (a, b) = unstable_c10_check(12).unwrap();
        assert!(a.holds() && b.holds());
    }

    #[test]
    fn c20_identity_and_control() {
        assert!(unstable_c20_check(8).unwrap());
        assert!(!unstable_c20_check_with(8, false).unwrap());
    }

    #[test]
    fn c20_lowest_coefficient() {
        let order = 4;
        let u = y_series(order)
            .sub(&XSeries::one(order))
            .scale(&one_plus_tau().inv().unwrap());
        let rhs = BiSeries::from_univariate(&u, false)
            .unwrap()
            .mul(&BiSeries::from_univariate(&u, true).unwrap())
            .scale(&-&(&TauFun::tau() * &one_plus_tau()));
        assert_eq!(rhs.coeff(1, 1), &-&(&TauFun::tau() * &one_plus_tau()));
        assert_eq!(rhs.valuation(), Some(2));
    }

    #[test]
    fn bivariate_log_inverts_product() {
        let a = BiSeries::from_fn(5, |i, j| {
            if i + j == 0 {
                TauFun::one()
            } else {
                TauFun::from_int((i * 2 + j) as i64)
            }
        });
        let b = BiSeries::from_fn(5, |i, j| {
            if i + j == 0 {
                TauFun::one()
            } else {
                TauFun::tau().scale(&rat(i as i64 + 1, j as i64 + 1))
            }
        });
        assert_eq!(a.mul(&b).ln(), a.ln().add(&b.ln()));
    }
}
