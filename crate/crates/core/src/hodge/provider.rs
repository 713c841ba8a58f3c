use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::psi::{lambda_one_correlator, psi_correlator};
use super::{CorrelatorKey, HodgeValue};
use crate::algebra::rational::rat;
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// `⟨τ_0 λ_1⟩_1`, the base constant of the genus-one λ₁ integrals.
pub const DEFAULT_C1: (i64, i64) = (1, 24);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProviderMode {
    Numeric,
    Symbolic,
}

/// A correlator value, or the correlator itself left as an unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HodgeEntry {
    Value(HodgeValue),
    Atom(CorrelatorKey),
}

/// Dispatches correlator keys to the ψ and λ₁ engines, with optional
/// overrides and symbolic unknowns.
#[derive(Clone, Debug)]
pub struct CorrelatorProvider {
    mode: ProviderMode,
    known: BTreeMap<CorrelatorKey, Rational>,
    unknowns: BTreeSet<CorrelatorKey>,
    c1: Rational,
}

impl Default for CorrelatorProvider {
    fn default() -> Self {
        Self::numeric()
    }
}

impl CorrelatorProvider {
    pub fn numeric() -> Self {
        CorrelatorProvider {
            mode: ProviderMode::Numeric,
            known: BTreeMap::new(),
            unknowns: BTreeSet::new(),
            c1: rat(DEFAULT_C1.0, DEFAULT_C1.1),
        }
    }

    pub fn symbolic(unknowns: impl IntoIterator<Item = CorrelatorKey>) -> Self {
        CorrelatorProvider {
            mode: ProviderMode::Symbolic,
            unknowns: unknowns.into_iter().collect(),
            ..Self::numeric()
        }
    }

    pub fn with_c1(mut self, c1: Rational) -> Self {
        self.c1 = c1;
        self
    }

    /// Pins `key` to `value`, bypassing the engines.
    pub fn with_override(mut self, key: CorrelatorKey, value: Rational) -> Self {
        self.known.insert(key, value);
        self
    }

    pub fn mode(&self) -> ProviderMode {
        self.mode
    }

    pub fn c1(&self) -> &Rational {
        &self.c1
    }

    pub fn unknowns(&self) -> &BTreeSet<CorrelatorKey> {
        &self.unknowns
    }

    pub fn is_unknown(&self, key: &CorrelatorKey) -> bool {
        self.mode == ProviderMode::Symbolic && self.unknowns.contains(key)
    }

    pub fn hodge_correlator(&self, key: &CorrelatorKey) -> Result<HodgeEntry> {
        if !key.is_stable() {
            return Err(Error::Unstable {
                genus: key.genus(),
                points: key.points(),
            });
        }
        if !key.satisfies_dimension() {
            return Ok(HodgeEntry::Value(Rational::zero().into()));
        }
        if self.is_unknown(key) {
            return Ok(HodgeEntry::Atom(key.clone()));
        }
        Ok(HodgeEntry::Value(self.value(key)?.into()))
    }

    /// Numeric value; unknowns are evaluated as if the provider were numeric.
    pub fn value(&self, key: &CorrelatorKey) -> Result<Rational> {
        if !key.satisfies_dimension() {
            return Ok(Rational::zero());
        }
        if let Some(v) = self.known.get(key) {
            return Ok(v.clone());
        }
        match (key.genus(), key.lambda_monomial()) {
            (g, []) => psi_correlator(g, key.psi_exponents()),
            (1, [1]) => lambda_one_correlator(key.psi_exponents(), &self.c1),
            _ => Err(Error::UnsupportedLambdaMonomial(key.clone())),
        }
    }
}
