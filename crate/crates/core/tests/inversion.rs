use cutjoin_core::algebra::rational::factorial;
use cutjoin_core::inversion::{
    check_change_of_variable, check_derivative_identity, check_derivative_identity_for,
    check_lagrange_roundtrip, check_omega_tau_transport, check_y_consistency, f_series,
    lagrange_coefficient, omega_series, phi_poly, phi_series,
};
use cutjoin_core::{InversionContext, Rational, TauFun, TauPoly, XSeries};

/// `∏_{a=0}^{n-2} (nτ + a) / n!`
fn omega_coefficient(n: usize) -> TauFun {
    let num = (0..n.saturating_sub(1)).fold(TauPoly::one(), |acc, a| {
        &acc * &TauPoly::linear(a as i64, n as i64)
    });
    TauFun::from_poly(num.scale(&Rational::new(1.into(), factorial(n as u32))))
}

#[test]
fn omega_coefficients_by_two_routes() {
    let omega = omega_series(10);
    let f = f_series(10).unwrap();
    for n in 1..=10 {
        let expected = omega_coefficient(n);
        assert_eq!(omega.coeff(n).unwrap(), &expected, "closed form, n={n}");
        assert_eq!(
            lagrange_coefficient(&f, n, 1).unwrap(),
            expected,
            "Lagrange, n={n}"
        );
    }
}

#[test]
fn powers_of_omega_from_lagrange() {
    let f = f_series(8).unwrap();
    let omega = omega_series(8);
    for k in 1..=4 {
        let power = omega.pow(k as u32);
        for n in k..=8 {
            assert_eq!(
                &lagrange_coefficient(&f, n, k).unwrap(),
                power.coeff(n).unwrap()
            );
        }
    }
}

#[test]
fn identities_through_their_orders() {
    assert!(check_lagrange_roundtrip(20).unwrap().holds());
    assert!(check_derivative_identity(15).holds());
    assert!(check_omega_tau_transport(12).unwrap().holds());
    assert!(check_y_consistency(15).holds());
}

#[test]
fn perturbed_omega_is_caught_at_the_right_order() {
    let mut cs = omega_series(8).coeffs().to_vec();
    cs[5] = &cs[5] + &TauFun::from_int(1);
    let check = check_derivative_identity_for(&XSeries::new(cs));
    assert_eq!(check.first_failure, Some(5));
}

#[test]
fn phi_polynomials() {
    let ctx = InversionContext::new(20).unwrap();
    for i in 0..=5 {
        let p = phi_poly(i);
        assert_eq!(p.total_degree(), Some(2 * i + 1), "phi_{i}");
        let residual = check_change_of_variable(&p, &phi_series(i, 20), &ctx).unwrap();
        assert!(residual.is_zero(), "phi_{i}");
    }
    let inv = TauFun::new(TauPoly::one(), TauPoly::linear(1, 1)).unwrap();
    assert_eq!(phi_poly(0).coeff(&[1]), Some(&inv));
    assert_eq!(phi_poly(0).coeff(&[0]), Some(&-&inv));
}

#[test]
fn bad_lagrange_inputs() {
    let f = f_series(5).unwrap();
    assert!(lagrange_coefficient(&f, 6, 1).is_err());
    assert!(lagrange_coefficient(&f, 3, 0).is_err());
    assert!(lagrange_coefficient(&XSeries::one(5), 3, 1).is_err());
}
