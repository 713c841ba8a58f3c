//! Scalars of the form `i^k · r` with `r` real.

use std::fmt;

use super::taufun::TauFun;
use crate::error::{Error, Result};

/// `(√−1)^phase · magnitude`. Powers of the imaginary unit are tracked as an
/// exponent mod 4 instead of carrying complex arithmetic.
#[derive(Clone, Debug)]
pub struct PhaseScalar {
    magnitude: TauFun,
    phase: u8,
}

impl PhaseScalar {
    pub fn new(magnitude: TauFun, phase: i64) -> Self {
        PhaseScalar {
            magnitude,
            phase: phase.rem_euclid(4) as u8,
        }
    }

    pub fn real(magnitude: TauFun) -> Self {
        Self::new(magnitude, 0)
    }

    pub fn zero() -> Self {
        Self::real(TauFun::zero())
    }

    pub fn magnitude(&self) -> &TauFun {
        &self.magnitude
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn is_zero(&self) -> bool {
        self.magnitude.is_zero()
    }

    /// Representative with phase in `{0, 1}`.
    fn canonical(&self) -> (TauFun, u8) {
        if self.is_zero() {
            (TauFun::zero(), 0)
        } else if self.phase >= 2 {
            (-&self.magnitude, self.phase - 2)
        } else {
            (self.magnitude.clone(), self.phase)
        }
    }

    pub fn mul(&self, other: &PhaseScalar) -> PhaseScalar {
        PhaseScalar::new(
            &self.magnitude * &other.magnitude,
            (self.phase + other.phase) as i64,
        )
    }

    pub fn neg(&self) -> PhaseScalar {
        PhaseScalar {
            magnitude: -&self.magnitude,
            phase: self.phase,
        }
    }

    /// Defined for equal phases or phases differing by 2; zero adds to
    /// anything.
    pub fn try_add(&self, other: &PhaseScalar) -> Result<PhaseScalar> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        match (other.phase + 4 - self.phase) % 4 {
            0 => Ok(PhaseScalar::new(
                &self.magnitude + &other.magnitude,
                self.phase as i64,
            )),
            2 => Ok(PhaseScalar::new(
                &self.magnitude - &other.magnitude,
                self.phase as i64,
            )),
            _ => Err(Error::PhaseMismatch(self.phase, other.phase)),
        }
    }
}

impl PartialEq for PhaseScalar {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl fmt::Display for PhaseScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phase {
            0 => write!(f, "{}", self.magnitude),
            p => write!(f, "i^{p}*({})", self.magnitude),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phases_add_mod_four() {
        for a in 0..4 {
            for b in 0..4 {
                let p = PhaseScalar::new(TauFun::from_int(2), a)
                    .mul(&PhaseScalar::new(TauFun::from_int(3), b));
                assert_eq!(p.phase() as i64, (a + b) % 4);
                assert_eq!(p.magnitude(), &TauFun::from_int(6));
            }
        }
    }

    #[test]
    fn addition_rules() {
        let one = PhaseScalar::new(TauFun::one(), 0);
        let minus_one = PhaseScalar::new(TauFun::one(), 2);
        assert!(one.try_add(&minus_one).unwrap().is_zero());
        assert_eq!(minus_one, PhaseScalar::new(TauFun::from_int(-1), 0));
        let i = PhaseScalar::new(TauFun::one(), 1);
        assert_eq!(one.try_add(&i), Err(Error::PhaseMismatch(0, 1)));
        assert_eq!(PhaseScalar::zero().try_add(&i).unwrap(), i);
    }
}
