//! Linear relations among Hodge integrals read off from a residual whose
//! coefficients are linear in unknown correlators.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};

use super::identity::{residual_theorem3_with, IdentityOptions};
use crate::algebra::{LinearSystem, Rational, Solution, TauFun, TauPoly, YPoly};
use crate::error::{Error, Result};
use crate::hodge::{CorrelatorKey, CorrelatorProvider, SymbolicCoefficient};

/// `Σ coefficients[i] · ⟨atoms[i]⟩ + constant = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRelation {
    pub atoms: Vec<CorrelatorKey>,
    pub coefficients: Vec<Rational>,
    pub constant: Rational,
}

impl fmt::Display for LinearRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (a, c) in self.atoms.iter().zip(&self.coefficients) {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(if c < &Rational::zero() { " - " } else { " + " })?;
                write!(f, "{}*{a}", c.abs())?;
            } else {
                write!(f, "{c}*{a}")?;
            }
            wrote = true;
        }
        if !self.constant.is_zero() {
            let sign = if self.constant < Rational::zero() {
                " - "
            } else {
                " + "
            };
            write!(f, "{sign}{}", self.constant.abs())?;
        }
        f.write_str(" = 0")
    }
}

fn lcm(a: &TauPoly, b: &TauPoly) -> TauPoly {
    let g = a.gcd(b);
    (a * b).div_rem(&g).0.monic()
}

/// One relation per (y-monomial, τ-power) after clearing denominators. Rows
/// are normalized to a leading coefficient 1 and deduplicated.
pub fn relations_from_residual(
    residual: &YPoly<SymbolicCoefficient>,
    unknowns: &[CorrelatorKey],
) -> Result<Vec<LinearRelation>> {
    let atoms: Vec<CorrelatorKey> = unknowns
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (_, coeff) in residual.graded_terms() {
        if coeff.atom_degree() > 1 {
            return Err(Error::NonlinearAtomProduct);
        }
        let parts = coeff.terms();
        let den = parts
            .values()
            .fold(TauPoly::one(), |acc, c| lcm(&acc, c.den()));
        let clear = |c: &TauFun| -> TauPoly {
            let p = c * &TauFun::from_poly(den.clone());
            debug_assert!(p.is_polynomial());
            p.num().clone()
        };
        let constant = parts
            .get(&Vec::new())
            .map(clear)
            .unwrap_or_else(TauPoly::zero);
        let columns: Vec<TauPoly> = atoms
            .iter()
            .map(|a| {
                parts
                    .get(&vec![a.clone()])
                    .map(clear)
                    .unwrap_or_else(TauPoly::zero)
            })
            .collect();
        if let Some(stray) = parts
            .keys()
            .filter(|k| k.len() == 1)
            .find(|k| !atoms.contains(&k[0]))
        {
            return Err(Error::SymbolicAtom(stray[0].clone()));
        }
        let top = columns
            .iter()
            .chain(std::iter::once(&constant))
            .filter_map(TauPoly::degree)
            .max()
            .unwrap_or(0);
        for p in 0..=top {
            let mut coefficients: Vec<Rational> = columns.iter().map(|c| c.coeff(p)).collect();
            let mut constant = constant.coeff(p);
            let Some(lead) = coefficients.iter().find(|c| !c.is_zero()).cloned() else {
                if constant.is_zero() {
                    continue;
                }
                return Err(Error::Inconsistent { row: out.len() });
            };
            for c in &mut coefficients {
                *c /= &lead;
            }
            constant /= &lead;
            if seen.insert((coefficients.clone(), constant.clone())) {
                out.push(LinearRelation {
                    atoms: atoms.clone(),
                    coefficients,
                    constant,
                });
            }
        }
    }
    Ok(out)
}

/// Relations from the cut-join identity at `(g, m)` with `unknowns` left
/// symbolic; every other correlator is numeric.
pub fn extract_relations(
    g: u32,
    m: usize,
    unknowns: &[CorrelatorKey],
) -> Result<Vec<LinearRelation>> {
    for k in unknowns {
        if !k.satisfies_dimension() {
            return Err(Error::DimensionMismatch {
                exponents: k.psi_exponents().to_vec(),
            });
        }
    }
    let provider = CorrelatorProvider::symbolic(unknowns.iter().cloned());
    let report = residual_theorem3_with::<SymbolicCoefficient>(
        g,
        m,
        &provider,
        &IdentityOptions::closed_form(),
    )?;
    relations_from_residual(&report.residual, unknowns)
}

pub fn solve_relations(
    relations: &[LinearRelation],
    unknowns: &[CorrelatorKey],
) -> Result<Solution<CorrelatorKey>> {
    let atoms: Vec<CorrelatorKey> = unknowns
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut system = LinearSystem::new(atoms.clone());
    for r in relations {
        let row = atoms
            .iter()
            .map(|a| {
                r.atoms
                    .iter()
                    .position(|b| b == a)
                    .map(|i| r.coefficients[i].clone())
                    .unwrap_or_else(Rational::zero)
            })
            .collect();
        system.push_row(row, -r.constant.clone());
    }
    system.solve()
}
