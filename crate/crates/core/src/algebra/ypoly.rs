//! Sparse multivariate polynomials in `y_1..y_m`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::coefficient::Coefficient;
use super::rational::int;
use super::taufun::TauFun;
use crate::error::{Error, Result};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// Polynomial in `num_vars` variables keyed by exponent vector. Zero
/// coefficients are never stored, so equality is structural. Iteration is in
/// lexicographic exponent order with `y_1` most significant.
#[derive(Clone, PartialEq, Debug)]
pub struct YPoly<C: Coefficient = TauFun> {
    num_vars: usize,
    terms: BTreeMap<Monomial, C>,
}

/// `YPoly` over plain `TauFun` coefficients.
pub type YPolynomial = YPoly<TauFun>;

impl<C: Coefficient> YPoly<C> {
    pub fn zero(num_vars: usize) -> Self {
        YPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: C) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(vec![0; num_vars], c);
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, C::from_tau(TauFun::one()))
    }

    /// The variable `y_{index+1}` (indices are zero-based).
    pub fn var(num_vars: usize, index: usize) -> Self {
        assert!(index < num_vars);
        let mut e = vec![0; num_vars];
        e[index] = 1;
        let mut p = Self::zero(num_vars);
        p.add_term(e, C::from_tau(TauFun::one()));
        p
    }

    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, C> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Option<&C> {
        self.terms.get(e)
    }

    /// Adds `c · y^e`, merging with an existing term.
    pub fn add_term(&mut self, e: Monomial, c: C) {
        assert_eq!(e.len(), self.num_vars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().plus(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.num_vars, other.num_vars, "variable count mismatch");
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }

    pub fn negate(&self) -> Self {
        YPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.negate()))
                .collect(),
        }
    }

    pub fn times(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars, "variable count mismatch");
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.times(cb));
            }
        }
        out
    }

    /// Product with a polynomial whose coefficients lie in the base field.
    pub fn times_base(&self, other: &YPoly<TauFun>) -> Self {
        assert_eq!(self.num_vars, other.num_vars, "variable count mismatch");
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.scaled(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &TauFun) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        YPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.scaled(c)))
                .collect(),
        }
    }

    pub fn scale_coeff(&self, c: &C) -> Self {
        Self::from_terms(
            self.num_vars,
            self.terms.iter().map(|(e, v)| (e.clone(), v.times(c))),
        )
    }

    /// Coefficient-wise d/dτ.
    pub fn d_tau(&self) -> Self {
        Self::from_terms(
            self.num_vars,
            self.terms.iter().map(|(e, c)| (e.clone(), c.d_tau())),
        )
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        YPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_var(&self, index: usize) -> Result<()> {
        if index >= self.num_vars {
            return Err(Error::VariableOutOfRange {
                index,
                num_vars: self.num_vars,
            });
        }
        Ok(())
    }

    /// Exact partial derivative in `y_{var+1}`.
    pub fn ddy(&self, var: usize) -> Result<Self> {
        self.check_var(var)?;
        let mut out = Self::zero(self.num_vars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c.scaled(&TauFun::constant(int(e[var] as i64))));
        }
        Ok(out)
    }

    /// Identifies variable `var` with variable `replacement`; `var` no longer
    /// occurs afterwards but the variable count is unchanged.
    pub fn subst(&self, var: usize, replacement: usize) -> Result<Self> {
        self.check_var(var)?;
        self.check_var(replacement)?;
        if var == replacement {
            return Ok(self.clone());
        }
        let mut out = Self::zero(self.num_vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[replacement] += e2[var];
            e2[var] = 0;
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Sends variable `i` to variable `map[i]` of a ring with `num_vars`
    /// variables. Non-injective maps identify variables.
    pub fn remap(&self, map: &[usize], num_vars: usize) -> Self {
        assert_eq!(map.len(), self.num_vars, "map length");
        assert!(map.iter().all(|&j| j < num_vars), "map target out of range");
        let mut out = Self::zero(num_vars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; num_vars];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Drops trailing variables, which must not occur.
    pub fn truncate_vars(&self, num_vars: usize) -> Result<Self> {
        let mut out = Self::zero(num_vars);
        for (e, c) in &self.terms {
            if e[num_vars..].iter().any(|&k| k != 0) {
                return Err(Error::VariableOutOfRange {
                    index: num_vars,
                    num_vars,
                });
            }
            out.add_term(e[..num_vars].to_vec(), c.clone());
        }
        Ok(out)
    }

    /// Swaps variables `a` and `b`.
    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        let mut map: Vec<usize> = (0..self.num_vars).collect();
        map.swap(a, b);
        self.remap(&map, self.num_vars)
    }

    /// Invariance under every permutation of the variables, checked on the
    /// generating transpositions.
    pub fn is_symmetric(&self) -> bool {
        (1..self.num_vars).all(|i| self.swap_vars(i - 1, i) == *self)
    }

    /// Exact quotient `self / divisor`. Fails with `NotDivisible` if the
    /// remainder is nonzero.
    pub fn div_exact(&self, divisor: &YPoly<TauFun>) -> Result<Self> {
        assert_eq!(self.num_vars, divisor.num_vars, "variable count mismatch");
        let (lead_e, lead_c) = divisor
            .terms
            .iter()
            .next_back()
            .ok_or(Error::DivisionByZero)?;
        let lead_inv = lead_c.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.num_vars);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return Err(Error::NotDivisible);
            }
            let qe: Monomial = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let qc = c.scaled(&lead_inv);
            for (de, dc) in &divisor.terms {
                let te = qe.iter().zip(de).map(|(a, b)| a + b).collect();
                rem.add_term(te, qc.scaled(dc).negate());
            }
            quot.add_term(qe, qc);
        }
        Ok(quot)
    }

    /// Terms in graded lexicographic order: higher total degree first, ties
    /// broken by descending exponent vector.
    pub fn graded_terms(&self) -> Vec<(&Monomial, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }
}

impl YPoly<TauFun> {
    /// Applies `f` to every coefficient, e.g. to lift into a richer ring.
    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&TauFun) -> D) -> YPoly<D> {
        YPoly::from_terms(
            self.num_vars,
            self.terms.iter().map(|(e, c)| (e.clone(), f(c))),
        )
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for YPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.graded_terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*y{}", v + 1)?,
                    _ => write!(f, "*y{}^{}", v + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(n: usize, i: usize) -> YPolynomial {
        YPoly::var(n, i)
    }

    #[test]
    fn derivative_and_substitution() {
        let p = y(3, 0).times(&y(3, 0)).times(&y(3, 1));
        let expect = y(3, 0).times(&y(3, 1)).scale(&TauFun::from_int(2));
        assert_eq!(p.ddy(0).unwrap(), expect);

        let q = y(3, 0).times(&y(3, 2));
        assert_eq!(q.subst(2, 0).unwrap(), y(3, 0).times(&y(3, 0)));
        assert!(q.ddy(3).is_err());
    }

    #[test]
    fn cube_difference_divides() {
        let cube = |i| {
            let v = y(2, i);
            v.times(&v).times(&v)
        };
        let n = cube(0).minus(&cube(1));
        let d = y(2, 0).minus(&y(2, 1));
        let q = n.div_exact(&d).unwrap();
        let expect = y(2, 0)
            .times(&y(2, 0))
            .plus(&y(2, 0).times(&y(2, 1)))
            .plus(&y(2, 1).times(&y(2, 1)));
        assert_eq!(q, expect);
        let bad = cube(0).plus(&YPoly::one(2));
        assert_eq!(bad.div_exact(&d), Err(Error::NotDivisible));
    }

    #[test]
    fn symmetry_detection() {
        let s = y(3, 0).plus(&y(3, 1)).plus(&y(3, 2));
        assert!(s.is_symmetric());
        assert!(!y(3, 0).is_symmetric());
    }

    #[test]
    fn graded_order_is_by_degree_then_lex() {
        let p = YPoly::one(2).plus(&y(2, 1)).plus(&y(2, 0).times(&y(2, 1)));
        let keys: Vec<_> = p
            .graded_terms()
            .into_iter()
            .map(|(e, _)| e.clone())
            .collect();
        assert_eq!(keys, vec![vec![1, 1], vec![0, 1], vec![0, 0]]);
    }
}
