use rayon::prelude::*;

use super::gamma::gamma_expansion;
use super::provider::{CorrelatorProvider, HodgeEntry};
use super::{is_stable, CorrelatorKey};
use crate::algebra::{AtomPoly, Coefficient, TauFun, TauPoly, YPoly, YPolynomial};
use crate::error::{Error, Result};
use crate::inversion::phi_polys;

/// Coefficient rings that can absorb a correlator entry.
pub trait CorrelatorCoefficient: Coefficient {
    fn from_entry(entry: HodgeEntry) -> Result<Self>;
}

impl CorrelatorCoefficient for TauFun {
    fn from_entry(entry: HodgeEntry) -> Result<Self> {
        match entry {
            HodgeEntry::Value(v) => Ok(TauFun::constant(v.value)),
            HodgeEntry::Atom(k) => Err(Error::SymbolicAtom(k)),
        }
    }
}

/// Coefficients linear in unknown correlators.
pub type SymbolicCoefficient = AtomPoly<CorrelatorKey>;

impl CorrelatorCoefficient for SymbolicCoefficient {
    fn from_entry(entry: HodgeEntry) -> Result<Self> {
        match entry {
            HodgeEntry::Value(v) => Ok(Self::from_tau(TauFun::constant(v.value))),
            HodgeEntry::Atom(k) => Ok(AtomPoly::atom(k)),
        }
    }
}

/// `𝐂Ξ𝒞_m^g` as a polynomial in `y_1..y_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct CmgPolynomial<C: Coefficient = TauFun> {
    pub genus: u32,
    pub points: usize,
    pub poly: YPoly<C>,
    /// Built from the λ-free part of Γ_g only; exact in top degree.
    pub partial: bool,
}

impl<C: Coefficient> CmgPolynomial<C> {
    /// `6g - 6 + 3m`.
    pub fn expected_degree(&self) -> u32 {
        6 * self.genus + 3 * self.points as u32 - 6
    }
}

/// All ordered `m`-tuples of non-negative integers summing to `d`.
pub(crate) fn compositions(d: u32, m: usize) -> Vec<Vec<u32>> {
    if m == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in compositions(d - first, m - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `∏_i φ_{b_i}(y_i)`.
pub(crate) fn phi_product(b: &[u32], phis: &[YPolynomial]) -> YPolynomial {
    let m = b.len();
    b.iter().enumerate().fold(YPoly::one(m), |acc, (i, &bi)| {
        acc.times(&phis[bi as usize].remap(&[i], m))
    })
}

pub fn cmg_polynomial(g: u32, m: usize, provider: &CorrelatorProvider) -> Result<CmgPolynomial> {
    cmg_polynomial_with(g, m, provider)
}

/// `-(τ(1+τ))^{m-1} Σ_{Γ_g terms} Γ(τ) Σ_b ⟨τ_b Λ⟩_g ∏_i φ_{b_i}(y_i)`, the
/// inner sum running over ordered exponent tuples.
pub fn cmg_polynomial_with<C: CorrelatorCoefficient>(
    g: u32,
    m: usize,
    provider: &CorrelatorProvider,
) -> Result<CmgPolynomial<C>> {
    if m == 0 || !is_stable(g, m) {
        return Err(Error::Unstable {
            genus: g,
            points: m,
        });
    }
    let gamma = gamma_expansion(g);
    let top = 3 * g + m as u32 - 3;
    let phis = phi_polys(top);
    let tau_one_plus_tau = TauFun::from_poly(&TauPoly::tau() * &TauPoly::linear(1, 1));
    let prefactor = -&tau_one_plus_tau.pow(m as u32 - 1);

    let mut poly = YPoly::<C>::zero(m);
    for (lambda, gamma_coeff) in &gamma.terms {
        let lambda_degree: u32 = lambda.iter().sum();
        if lambda_degree > top {
            continue;
        }
        let tuples = compositions(top - lambda_degree, m);
        let partials: Vec<YPoly<C>> = tuples
            .par_iter()
            .map(|b| -> Result<YPoly<C>> {
                let key = CorrelatorKey::new(g, b, lambda);
                let c = C::from_entry(provider.hodge_correlator(&key)?)?;
                if c.is_zero() {
                    return Ok(YPoly::zero(m));
                }
                Ok(phi_product(b, &phis)
                    .map_coeffs(|t| C::from_tau(t.clone()))
                    .scale_coeff(&c))
            })
            .collect::<Result<_>>()?;
        let mut group = YPoly::<C>::zero(m);
        for p in &partials {
            group.add_assign(p);
        }
        poly.add_assign(&group.scale(&(&prefactor * &TauFun::from_poly(gamma_coeff.clone()))));
    }
    Ok(CmgPolynomial {
        genus: g,
        points: m,
        poly,
        partial: gamma.partial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{factorial, rat, Rational};
    use crate::hodge::{gamma_expansion, lambda_one_correlator, psi_correlator};
    use crate::inversion::phi_poly;

    fn y_minus_one(m: usize, i: usize) -> YPolynomial {
        YPoly::var(m, i).minus(&YPoly::one(m))
    }

    #[test]
    fn genus_zero_three_points() {
        let c = cmg_polynomial(0, 3, &CorrelatorProvider::numeric()).unwrap();
        let coeff = TauFun::new(TauPoly::from_ints(&[0, 0, -1]), TauPoly::linear(1, 1)).unwrap();
        let expect = y_minus_one(3, 0)
            .times(&y_minus_one(3, 1))
            .times(&y_minus_one(3, 2))
            .scale(&coeff);
        assert_eq!(c.poly, expect);
        assert_eq!(c.poly.total_degree(), Some(c.expected_degree()));
    }

    #[test]
    fn genus_one_one_point() {
        let c = cmg_polynomial(1, 1, &CorrelatorProvider::numeric()).unwrap();
        let g1 = gamma_expansion(1);
        let free = TauFun::from_poly(g1.coefficient(&[]).unwrap().clone());
        let lin = TauFun::from_poly(g1.coefficient(&[1]).unwrap().clone());
        let a = TauFun::constant(psi_correlator(1, &[1]).unwrap());
        let b = TauFun::constant(lambda_one_correlator(&[0], &rat(1, 24)).unwrap());
        let expect = phi_poly(1)
            .scale(&(&a * &free))
            .plus(&phi_poly(0).scale(&(&b * &lin)))
            .negate();
        assert_eq!(c.poly, expect);
    }

    /// The literal form: `(1/m!) Σ_{b sorted-free} ⟨τ_b⟩ Σ_σ ∏ φ_{b_σ(i)}(y_i)`.
    fn permutations(m: usize) -> Vec<Vec<usize>> {
        if m == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(m - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, m - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn ordered_tuple_sum_equals_sigma_form() {
        for (g, m) in [(0usize, 4usize), (1, 2), (1, 3)] {
            let g = g as u32;
            let top = 3 * g + m as u32 - 3;
            let phis = phi_polys(top);
            let provider = CorrelatorProvider::numeric();
            let gamma = gamma_expansion(g);
            let mut lit = YPoly::zero(m);
            let perms = permutations(m);
            for (lambda, gc) in &gamma.terms {
                let d: u32 = lambda.iter().sum();
                for b in compositions(top - d, m) {
                    let v = provider.value(&CorrelatorKey::new(g, &b, lambda)).unwrap();
                    for s in &perms {
                        let bs: Vec<u32> = (0..m).map(|i| b[s[i]]).collect();
                        lit.add_assign(
                            &phi_product(&bs, &phis)
                                .scale(&TauFun::from_poly(gc.clone()).scale(&v)),
                        );
                    }
                }
            }
            let tp = TauFun::from_poly(&TauPoly::tau() * &TauPoly::linear(1, 1));
            let norm = Rational::from_integer(factorial(m as u32)).recip();
            let lit = lit.scale(&(-&tp.pow(m as u32 - 1)).scale(&norm));
            assert_eq!(
                lit,
                cmg_polynomial(g, m, &provider).unwrap().poly,
                "({g},{m})"
            );
        }
    }

    #[test]
    fn suite_symmetry_degree_denominators() {
        let provider = CorrelatorProvider::numeric();
        for (g, m) in [(0, 3), (0, 4), (0, 5), (1, 1), (1, 2), (1, 3)] {
            let c = cmg_polynomial(g, m, &provider).unwrap();
            assert!(c.poly.is_symmetric(), "({g},{m})");
            assert_eq!(c.poly.total_degree(), Some(c.expected_degree()));
            for coeff in c.poly.terms().values() {
                let den = coeff.den();
                let k = den.degree().unwrap();
                assert_eq!(den, &TauPoly::linear(1, 1).pow(k as u32), "({g},{m})");
            }
        }
    }

    #[test]
    fn unstable_rejected() {
        let p = CorrelatorProvider::numeric();
        assert!(matches!(
            cmg_polynomial(0, 2, &p),
            Err(Error::Unstable { .. })
        ));
        assert!(matches!(
            cmg_polynomial(0, 1, &p),
            Err(Error::Unstable { .. })
        ));
    }

    #[test]
    fn symbolic_unknowns_appear_linearly() {
        let k = CorrelatorKey::new(1, &[0], &[1]);
        let p = CorrelatorProvider::symbolic([k.clone()]);
        let c = cmg_polynomial_with::<SymbolicCoefficient>(1, 1, &p).unwrap();
        assert!(c
            .poly
            .terms()
            .values()
            .all(|v| v.atom_degree() == 1 || v.terms().keys().all(Vec::is_empty)));
        assert!(c.poly.terms().values().any(|v| v.atom_degree() == 1));
        assert!(matches!(
            cmg_polynomial(1, 1, &p),
            Err(Error::SymbolicAtom(_))
        ));
    }
}
