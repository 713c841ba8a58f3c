use crate::algebra::TauPoly;

/// `Γ_g(τ) = Λ_g^∨(1) Λ_g^∨(τ) Λ_g^∨(-τ-1)` graded by λ-monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaExpansion {
    pub genus: u32,
    /// `(λ-monomial, coefficient)`; monomials list λ indices, `[1]` = λ₁.
    pub terms: Vec<(Vec<u32>, TauPoly)>,
    /// Only the λ-free term is present (g ≥ 2).
    pub partial: bool,
}

impl GammaExpansion {
    pub fn coefficient(&self, lambda: &[u32]) -> Option<&TauPoly> {
        self.terms.iter().find(|(m, _)| m == lambda).map(|(_, c)| c)
    }
}

/// `(-1)^g [τ(τ+1)]^g`.
fn lambda_free_part(g: u32) -> TauPoly {
    let base = &TauPoly::tau() * &TauPoly::linear(1, 1);
    let p = base.pow(g);
    if g % 2 == 1 {
        -&p
    } else {
        p
    }
}

pub fn gamma_expansion(g: u32) -> GammaExpansion {
    match g {
        0 => GammaExpansion {
            genus: 0,
            terms: vec![(Vec::new(), TauPoly::one())],
            partial: false,
        },
        1 => {
            // Λ_1^∨(u) = u - λ_1; multiply out (1 - λ)(τ - λ)(-τ - 1 - λ) with
            // λ_1² = 0, tracking (λ-free, λ-linear) pairs.
            let factors = [TauPoly::one(), TauPoly::tau(), TauPoly::linear(-1, -1)];
            let mut acc = (TauPoly::one(), TauPoly::zero());
            for u in &factors {
                let free = &acc.0 * u;
                let linear = &(&acc.1 * u) - &acc.0;
                acc = (free, linear);
            }
            GammaExpansion {
                genus: 1,
                terms: vec![(Vec::new(), acc.0), (vec![1], acc.1)],
                partial: false,
            }
        }
        _ => GammaExpansion {
            genus: g,
            terms: vec![(Vec::new(), lambda_free_part(g))],
            partial: true,
        },
    }
}
