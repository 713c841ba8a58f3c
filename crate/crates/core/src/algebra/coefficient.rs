use std::collections::BTreeMap;
use std::fmt;

use super::taufun::TauFun;

/// Coefficient ring for [`YPoly`](super::YPoly): a commutative algebra over
/// the τ-rational functions with a τ-derivation.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn from_tau(c: TauFun) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scaled(&self, c: &TauFun) -> Self;
    fn d_tau(&self) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }
}

impl Coefficient for TauFun {
    fn zero() -> Self {
        TauFun::zero()
    }
    fn is_zero(&self) -> bool {
        TauFun::is_zero(self)
    }
    fn from_tau(c: TauFun) -> Self {
        c
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &TauFun) -> Self {
        self * c
    }
    fn d_tau(&self) -> Self {
        self.derivative()
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
}

/// Polynomial in symbolic atoms with `TauFun` coefficients. Keys are sorted
/// atom multisets; the empty key is the atom-free part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AtomPoly<A: Ord> {
    terms: BTreeMap<Vec<A>, TauFun>,
}

impl<A: Ord + Clone> AtomPoly<A> {
    pub fn atom(a: A) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![a], TauFun::one());
        AtomPoly { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<A>, TauFun> {
        &self.terms
    }

    /// Largest atom-degree present, 0 for atom-free values.
    pub fn atom_degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// The atom-free part.
    pub fn constant_part(&self) -> TauFun {
        self.terms
            .get(&Vec::new())
            .cloned()
            .unwrap_or_else(TauFun::zero)
    }

    fn insert_add(terms: &mut BTreeMap<Vec<A>, TauFun>, key: Vec<A>, c: TauFun) {
        if c.is_zero() {
            return;
        }
        match terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }
}

impl<A> Coefficient for AtomPoly<A>
where
    A: Ord + Clone + fmt::Debug + Send + Sync,
{
    fn zero() -> Self {
        AtomPoly {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_tau(c: TauFun) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        AtomPoly { terms }
    }
    fn plus(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            Self::insert_add(&mut terms, k.clone(), c.clone());
        }
        AtomPoly { terms }
    }
    fn times(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut key = ka.clone();
                key.extend(kb.iter().cloned());
                key.sort();
                Self::insert_add(&mut terms, key, ca * cb);
            }
        }
        AtomPoly { terms }
    }
    fn negate(&self) -> Self {
        AtomPoly {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
    fn scaled(&self, c: &TauFun) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        AtomPoly {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }
    fn d_tau(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            Self::insert_add(&mut terms, k.clone(), c.derivative());
        }
        AtomPoly { terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atom_products_track_degree() {
        let a: AtomPoly<u8> = AtomPoly::atom(1);
        let b = AtomPoly::atom(2).plus(&AtomPoly::from_tau(TauFun::tau()));
        let p = a.times(&b);
        assert_eq!(p.atom_degree(), 2);
        assert_eq!(p.terms().len(), 2);
        assert!(p.minus(&p).is_zero());
        assert_eq!(b.d_tau(), AtomPoly::from_tau(TauFun::one()));
    }
}
