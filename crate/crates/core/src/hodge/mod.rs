//! Hodge integrals: ψ-intersection numbers, the λ₁ integrals at genus one,
//! the Γ_g expansion and the generating polynomials `𝐂Ξ𝒞_m^g`.

pub(crate) mod cmg;
mod gamma;
mod provider;
mod psi;
mod unstable;

use std::fmt;

use crate::algebra::Rational;

pub use cmg::{
    cmg_polynomial, cmg_polynomial_with, CmgPolynomial, CorrelatorCoefficient, SymbolicCoefficient,
};
pub use gamma::{gamma_expansion, GammaExpansion};
pub use provider::{CorrelatorProvider, HodgeEntry, ProviderMode, DEFAULT_C1};
pub use psi::{
    genus0_closed, lambda_one_correlator, psi_correlator, psi_memo_entries, psi_memo_preload,
};
pub use unstable::{
    unstable_c10_check, unstable_c10_image, unstable_c20_check, unstable_c20_check_with, BiSeries,
};

/// `2g - 2 + n ≥ 1`.
pub fn is_stable(genus: u32, points: usize) -> bool {
    2 * genus as i64 - 2 + points as i64 >= 1
}

/// `⟨τ_{b_1}⋯τ_{b_n} λ_{j_1}⋯⟩_g`, stored with sorted exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CorrelatorKey {
    genus: u32,
    psi: Vec<u32>,
    lambda: Vec<u32>,
}

impl CorrelatorKey {
    pub fn new(genus: u32, psi: &[u32], lambda: &[u32]) -> Self {
        let mut psi = psi.to_vec();
        let mut lambda = lambda.to_vec();
        psi.sort_unstable();
        lambda.sort_unstable();
        CorrelatorKey { genus, psi, lambda }
    }

    pub fn psi(genus: u32, exponents: &[u32]) -> Self {
        Self::new(genus, exponents, &[])
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn psi_exponents(&self) -> &[u32] {
        &self.psi
    }

    pub fn lambda_monomial(&self) -> &[u32] {
        &self.lambda
    }

    pub fn points(&self) -> usize {
        self.psi.len()
    }

    pub fn lambda_degree(&self) -> u32 {
        self.lambda.iter().sum()
    }

    pub fn is_stable(&self) -> bool {
        !self.psi.is_empty() && is_stable(self.genus, self.psi.len())
    }

    /// `Σ b_i + deg λ = 3g - 3 + n`.
    pub fn satisfies_dimension(&self) -> bool {
        let lhs = self.psi.iter().map(|&b| b as i64).sum::<i64>() + self.lambda_degree() as i64;
        lhs == 3 * self.genus as i64 - 3 + self.psi.len() as i64
    }
}

impl fmt::Display for CorrelatorKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        let mut first = true;
        for b in &self.psi {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "tau_{b}")?;
        }
        for j in &self.lambda {
            write!(f, " lambda_{j}")?;
        }
        write!(f, ">_{}", self.genus)
    }
}

/// Exact value of a Hodge integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeValue {
    pub value: Rational,
}

impl From<Rational> for HodgeValue {
    fn from(value: Rational) -> Self {
        HodgeValue { value }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_is_canonical() {
        let a = CorrelatorKey::new(1, &[2, 0, 1], &[1]);
        let b = CorrelatorKey::new(1, &[0, 1, 2], &[1]);
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "<tau_0 tau_1 tau_2 lambda_1>_1");
    }

    #[test]
    fn dimension_and_stability() {
        assert!(CorrelatorKey::psi(1, &[1]).satisfies_dimension());
        assert!(!CorrelatorKey::psi(1, &[0]).satisfies_dimension());
        assert!(CorrelatorKey::new(1, &[0], &[1]).satisfies_dimension());
        assert!(!CorrelatorKey::psi(0, &[0, 0]).is_stable());
        assert!(CorrelatorKey::psi(1, &[1]).is_stable());
    }
}
