//! Formal Lagrange inversion of `F(x) = x(1-x)^τ` and the change of variables
//! `x → ω → y` with `y = 1/(1 - (1+τ)ω)`.

use crate::algebra::rational::{factorial, int, Rational};
use crate::algebra::{Coefficient, TauFun, TauPoly, XSeries, YPoly, YPolynomial};
use crate::error::{Error, Result};

/// Working truncation order used when none is configured.
pub const DEFAULT_ORDER: usize = 20;

/// Outcome of a series identity check through a given order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub order: usize,
    /// Lowest power of `x` at which the identity fails.
    pub first_failure: Option<usize>,
}

impl IdentityCheck {
    pub fn from_residual(residual: &XSeries) -> Self {
        IdentityCheck {
            order: residual.order(),
            first_failure: residual.valuation(),
        }
    }

    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// The series ω(x) and y(x), built once and shared read-only.
#[derive(Clone, Debug)]
pub struct InversionContext {
    order: usize,
    omega: XSeries,
    y_of_x: XSeries,
}

impl InversionContext {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::OrderTooLow {
                requested: 1,
                order,
            });
        }
        Ok(InversionContext {
            order,
            omega: omega_series(order),
            y_of_x: y_series(order),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn omega(&self) -> &XSeries {
        &self.omega
    }

    pub fn y_of_x(&self) -> &XSeries {
        &self.y_of_x
    }
}

/// `1 + τ`.
pub fn one_plus_tau() -> TauFun {
    TauFun::from_poly(TauPoly::linear(1, 1))
}

/// `∏_{a=lo}^{hi} (nτ + a)`, empty product 1.
fn rising_in_tau(n: i64, lo: i64, hi: i64) -> TauPoly {
    (lo..=hi).fold(TauPoly::one(), |acc, a| &acc * &TauPoly::linear(a, n))
}

fn over_factorial(p: TauPoly, k: u32) -> TauFun {
    TauFun::from_poly(p.scale(&Rational::from_integer(factorial(k)).recip()))
}

/// `F(x) = x(1-x)^τ` through `x^order`.
pub fn f_series(order: usize) -> Result<XSeries> {
    XSeries::x(order)
        .mul(&XSeries::x(order).pow_tau()?)
        .truncate(order)
}

/// `[x^n] F^{-1}(x)^k = (k/n) [x^{n-k}] (x/F(x))^n`.
pub fn lagrange_coefficient(f: &XSeries, n: usize, k: usize) -> Result<TauFun> {
    if !f.coeff(0)?.is_zero() {
        return Err(Error::BadSeries("F has a nonzero constant term"));
    }
    if f.order() < 1 || f.coeff(1)?.is_zero() {
        return Err(Error::BadSeries("F has a vanishing linear term"));
    }
    if n > f.order() {
        return Err(Error::OrderTooLow {
            requested: n,
            order: f.order(),
        });
    }
    if k < 1 || k > n {
        return Err(Error::BadSeries("requires 1 <= k <= n"));
    }
    let x_over_f = f.div_x()?.recip()?;
    let c = x_over_f.pow(n as u32).coeff(n - k)?.clone();
    Ok(c.scale(&Rational::new((k as i64).into(), (n as i64).into())))
}

/// Compositional inverse via the Lagrange coefficients with `k = 1`.
pub fn lagrange_invert(f: &XSeries) -> Result<XSeries> {
    let mut coeffs = vec![TauFun::zero()];
    for n in 1..=f.order() {
        coeffs.push(lagrange_coefficient(f, n, 1)?);
    }
    Ok(XSeries::new(coeffs))
}

/// ω(x) from its closed form: `[x^n] ω = ∏_{a=0}^{n-2}(nτ+a) / n!`.
pub fn omega_series(order: usize) -> XSeries {
    XSeries::from_fn(order, |n| {
        if n == 0 {
            TauFun::zero()
        } else {
            over_factorial(rising_in_tau(n as i64, 0, n as i64 - 2), n as u32)
        }
    })
}

/// y(x) from its closed form `1 + ((1+τ)/τ) Σ ∏_{a=0}^{n-1}(nτ+a)/n! x^n`.
/// The `a = 0` factor `nτ` cancels the `1/τ`.
pub fn y_series(order: usize) -> XSeries {
    XSeries::from_fn(order, |n| {
        if n == 0 {
            TauFun::one()
        } else {
            let p = &rising_in_tau(n as i64, 1, n as i64 - 1).scale(&int(n as i64))
                * &TauPoly::linear(1, 1);
            over_factorial(p, n as u32)
        }
    })
}

/// φ_i(x) = (x d/dx)^i ((y(x) - 1)/(τ+1)).
pub fn phi_series(i: u32, order: usize) -> XSeries {
    let y = y_series(order);
    let mut s = y
        .sub(&XSeries::one(order))
        .scale(&one_plus_tau().inv().expect("1+τ is nonzero"));
    for _ in 0..i {
        s = s.xddx();
    }
    s
}

/// The image of `x d/dx` under the change of variables, acting on variable
/// `var`: `y(y-1)(yτ+1)/(τ+1) ∂/∂y`.
pub fn x_ddx_in_y<C: Coefficient>(p: &YPoly<C>, var: usize) -> Result<YPoly<C>> {
    let d = p.ddy(var)?;
    let inv = one_plus_tau().inv()?;
    // y(y-1)(yτ+1) = τ y^3 + (1-τ) y^2 - y
    let c3 = &TauFun::tau() * &inv;
    let c2 = &TauFun::from_poly(TauPoly::linear(1, -1)) * &inv;
    let c1 = -&inv;
    let mut out = YPoly::zero(p.num_vars());
    for (e, c) in d.terms() {
        for (shift, k) in [(3, &c3), (2, &c2), (1, &c1)] {
            let mut e2 = e.clone();
            e2[var] += shift;
            out.add_term(e2, c.scaled(k));
        }
    }
    Ok(out)
}

/// `(y - 1)/(τ + 1)` in one variable.
fn phi_poly_seed() -> YPolynomial {
    let inv = one_plus_tau().inv().expect("1+τ is nonzero");
    YPoly::var(1, 0).minus(&YPoly::one(1)).scale(&inv)
}

/// The polynomial image of φ_i: `D^i ((y-1)/(τ+1))`, of degree `2i + 1`.
pub fn phi_poly(i: u32) -> YPolynomial {
    phi_polys(i).pop().expect("nonempty")
}

/// `phi_poly(0..=max)`, sharing the repeated applications of `D`.
pub fn phi_polys(max: u32) -> Vec<YPolynomial> {
    let mut out = vec![phi_poly_seed()];
    for _ in 0..max {
        let next = x_ddx_in_y(out.last().expect("nonempty"), 0).expect("one variable");
        out.push(next);
    }
    out
}

/// Substitutes the series `y` into a one-variable polynomial.
pub fn substitute_series(p: &YPolynomial, y: &XSeries) -> Result<XSeries> {
    if p.num_vars() != 1 {
        return Err(Error::Unsupported(format!(
            "series substitution needs one variable, got {}",
            p.num_vars()
        )));
    }
    let order = y.order();
    let max = p.degree_in(0).unwrap_or(0);
    let mut acc = XSeries::zero(order);
    let mut power = XSeries::one(order);
    for k in 0..=max {
        if let Some(c) = p.coeff(&[k]) {
            acc = acc.add(&power.scale(c));
        }
        if k < max {
            power = power.mul(y);
        }
    }
    Ok(acc)
}

/// `p(y(x)) - f` through `f.order()`; zero certifies that `p` is the image of
/// `f` under the change of variables.
pub fn check_change_of_variable(
    p: &YPolynomial,
    f: &XSeries,
    ctx: &InversionContext,
) -> Result<XSeries> {
    let y = ctx.y_of_x.truncate(f.order())?;
    Ok(substitute_series(p, &y)?.sub(f))
}

/// ω (1-ω)^τ = x through `order`.
pub fn check_lagrange_roundtrip(order: usize) -> Result<IdentityCheck> {
    let omega = omega_series(order);
    let lhs = omega.mul(&omega.pow_tau()?);
    Ok(IdentityCheck::from_residual(&lhs.sub(&XSeries::x(order))))
}

/// `x ω' (1 - (1+τ)ω) = ω (1 - ω)` for the supplied candidate ω.
pub fn check_derivative_identity_for(omega: &XSeries) -> IdentityCheck {
    let order = omega.order();
    let one = XSeries::one(order);
    let lhs = omega.xddx().mul(&one.sub(&omega.scale(&one_plus_tau())));
    let rhs = omega.mul(&one.sub(omega));
    IdentityCheck::from_residual(&lhs.sub(&rhs))
}

pub fn check_derivative_identity(order: usize) -> IdentityCheck {
    check_derivative_identity_for(&omega_series(order))
}

/// `∂ω/∂τ · (1 - (τ+1)ω) + ln(1-ω) · ω(1-ω) = 0`, the displayed transport
/// identity multiplied through by `ω(1-ω)`.
pub fn check_omega_tau_transport(order: usize) -> Result<IdentityCheck> {
    let omega = omega_series(order);
    let one = XSeries::one(order);
    let lhs = omega.dtau().mul(&one.sub(&omega.scale(&one_plus_tau())));
    let log_term = omega.log1m()?.mul(&omega.mul(&one.sub(&omega)));
    Ok(IdentityCheck::from_residual(&lhs.add(&log_term)))
}

/// `y (1 - (1+τ)ω) = 1` through `order`.
pub fn check_y_consistency(order: usize) -> IdentityCheck {
    let omega = omega_series(order);
    let one = XSeries::one(order);
    let lhs = y_series(order).mul(&one.sub(&omega.scale(&one_plus_tau())));
    IdentityCheck::from_residual(&lhs.sub(&one))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn poly(c: &[i64]) -> TauFun {
        TauFun::from_poly(TauPoly::from_ints(c))
    }

    #[test]
    fn omega_coefficients() {
        let w = omega_series(4);
        assert_eq!(w.coeff(1).unwrap(), &TauFun::one());
        assert_eq!(w.coeff(2).unwrap(), &TauFun::tau());
        // (3τ)(3τ+1)/3! = (3τ^2 + τ)/2
        let expect = TauFun::from_poly(TauPoly::from_coeffs(vec![rat(0, 1), rat(1, 2), rat(3, 2)]));
        assert_eq!(w.coeff(3).unwrap(), &expect);
    }

    #[test]
    fn lagrange_examples() {
        let f = f_series(6).unwrap();
        assert_eq!(lagrange_coefficient(&f, 2, 1).unwrap(), TauFun::tau());
        // (4τ)(4τ+1)(4τ+2)/4!
        let p = &(&TauPoly::linear(0, 4) * &TauPoly::linear(1, 4)) * &TauPoly::linear(2, 4);
        let expect = TauFun::from_poly(p.scale(&rat(1, 24)));
        assert_eq!(lagrange_coefficient(&f, 4, 1).unwrap(), expect);
        let id = XSeries::x(5);
        for n in 1..=5 {
            assert_eq!(lagrange_coefficient(&id, n, n).unwrap(), TauFun::one());
        }
        assert!(matches!(
            lagrange_coefficient(&f, 7, 1),
            Err(Error::OrderTooLow { .. })
        ));
        assert!(matches!(
            lagrange_coefficient(&XSeries::one(3), 2, 1),
            Err(Error::BadSeries(_))
        ));
    }

    #[test]
    fn y_coefficients() {
        let y = y_series(3);
        assert_eq!(y.coeff(0).unwrap(), &TauFun::one());
        assert_eq!(y.coeff(1).unwrap(), &poly(&[1, 1]));
        assert_eq!(y.coeff(2).unwrap(), &poly(&[1, 3, 2]));
    }

    #[test]
    fn phi_series_examples() {
        assert_eq!(phi_series(0, 5).coeff(1).unwrap(), &TauFun::one());
        assert_eq!(phi_series(1, 5).coeff(1).unwrap(), &TauFun::one());
        assert_eq!(phi_series(2, 5).coeff(2).unwrap(), &poly(&[4, 8]));
    }

    #[test]
    fn phi_poly_first_terms() {
        let inv = one_plus_tau().inv().unwrap();
        let y = YPoly::var(1, 0);
        let y_minus_1 = y.minus(&YPoly::one(1));
        assert_eq!(phi_poly(0), y_minus_1.scale(&inv));
        let y_tau_plus_1 = y.scale(&TauFun::tau()).plus(&YPoly::one(1));
        let expect = y
            .times(&y_minus_1)
            .times(&y_tau_plus_1)
            .scale(&(&inv * &inv));
        assert_eq!(phi_poly(1), expect);
    }

    #[test]
    fn mismatched_change_of_variable_is_detected() {
        let ctx = InversionContext::new(6).unwrap();
        let p = YPoly::var(1, 0).minus(&YPoly::one(1));
        let r = check_change_of_variable(&p, &XSeries::zero(6), &ctx).unwrap();
        assert_eq!(r.valuation(), Some(1));
    }

    #[test]
    fn transport_low_coefficients() {
        let d = omega_series(4).dtau();
        assert!(d.coeff(1).unwrap().is_zero());
        assert_eq!(d.coeff(2).unwrap(), &TauFun::one());
    }

    #[test]
    fn wrong_omega_fails_derivative_identity() {
        let check = check_derivative_identity_for(&XSeries::x(3));
        assert!(!check.holds());
        assert_eq!(check.first_failure, Some(2));
    }
}
