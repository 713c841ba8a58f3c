//! Exact Gaussian elimination over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Rows `Σ coeffs[i] · unknowns[i] = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem<A> {
    unknowns: Vec<A>,
    rows: Vec<(Vec<Rational>, Rational)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution<A: Ord> {
    /// Unknowns pinned to a single value by the system.
    pub values: BTreeMap<A, Rational>,
    /// Unknowns left free (or coupled to a free one).
    pub underdetermined: Vec<A>,
    pub rank: usize,
}

impl<A: Ord> Solution<A> {
    pub fn is_unique(&self) -> bool {
        self.underdetermined.is_empty()
    }
}

impl<A: Clone + Ord> LinearSystem<A> {
    pub fn new(unknowns: Vec<A>) -> Self {
        LinearSystem {
            unknowns,
            rows: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> &[A] {
        &self.unknowns
    }

    pub fn rows(&self) -> &[(Vec<Rational>, Rational)] {
        &self.rows
    }

    pub fn push_row(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        assert_eq!(coeffs.len(), self.unknowns.len(), "row length");
        self.rows.push((coeffs, rhs));
    }

    /// Reduces to row echelon form. An all-zero row with nonzero right side
    /// fails with the index of the original row that produced it.
    pub fn solve(&self) -> Result<Solution<A>> {
        let n = self.unknowns.len();
        let mut rows: Vec<(usize, Vec<Rational>, Rational)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, (c, r))| (i, c.clone(), r.clone()))
            .collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r].1[col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = rows[rank].1[col].recip();
            for v in rows[rank].1.iter_mut() {
                *v *= &inv;
            }
            rows[rank].2 *= &inv;
            let (pivot_coeffs, pivot_rhs) = (rows[rank].1.clone(), rows[rank].2.clone());
            for (r, row) in rows.iter_mut().enumerate() {
                if r == rank || row.1[col].is_zero() {
                    continue;
                }
                let f = row.1[col].clone();
                for (v, pv) in row.1.iter_mut().zip(&pivot_coeffs) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
                row.2 -= &f * &pivot_rhs;
            }
            pivots.push(col);
            rank += 1;
        }
        if let Some(bad) = rows[rank..].iter().find(|r| !r.2.is_zero()) {
            return Err(Error::Inconsistent { row: bad.0 });
        }
        let mut values = BTreeMap::new();
        let mut determined = vec![false; n];
        for (r, &col) in pivots.iter().enumerate() {
            let free = rows[r]
                .1
                .iter()
                .enumerate()
                .any(|(j, v)| j != col && !v.is_zero());
            if !free {
                debug_assert!(rows[r].1[col].is_one());
                values.insert(self.unknowns[col].clone(), rows[r].2.clone());
                determined[col] = true;
            }
        }
        let underdetermined = (0..n)
            .filter(|&j| !determined[j])
            .map(|j| self.unknowns[j].clone())
            .collect();
        Ok(Solution {
            values,
            underdetermined,
            rank,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn single_equation() {
        let mut s = LinearSystem::new(vec!["x"]);
        s.push_row(vec![int(1)], int(2));
        let sol = s.solve().unwrap();
        assert_eq!(sol.values["x"], int(2));
        assert!(sol.is_unique());
    }

    #[test]
    fn two_by_two() {
        let mut s = LinearSystem::new(vec!["x", "y"]);
        s.push_row(vec![int(1), int(1)], int(1));
        s.push_row(vec![int(1), int(-1)], int(1));
        let sol = s.solve().unwrap();
        assert_eq!(sol.values["x"], int(1));
        assert_eq!(sol.values["y"], int(0));
        assert_eq!(sol.rank, 2);
    }

    #[test]
    fn contradiction_reports_witness() {
        let mut s = LinearSystem::new(vec!["x"]);
        s.push_row(vec![int(1)], int(1));
        s.push_row(vec![int(1)], int(2));
        assert_eq!(s.solve(), Err(Error::Inconsistent { row: 1 }));
    }

    #[test]
    fn free_variables_are_reported() {
        let mut s = LinearSystem::new(vec!["x", "y", "z"]);
        s.push_row(vec![int(1), int(1), int(0)], int(3));
        s.push_row(vec![int(0), int(0), int(2)], int(4));
        let sol = s.solve().unwrap();
        assert_eq!(sol.values.get("z"), Some(&int(2)));
        assert_eq!(sol.underdetermined, vec!["x", "y"]);
    }
}
