//! The symmetrization operator on power-sum monomials and its product and
//! derivative rules, checked with the imaginary-unit phases kept explicit.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::rational::int;
use crate::algebra::{Monomial, PhaseScalar, TauFun};
use crate::error::Result;

/// A partition, listed as its positive parts.
pub type Partition = Vec<u32>;

/// Polynomial in `x_1..x_n` with phase-tracked coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasePoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, PhaseScalar>,
}

impl PhasePoly {
    pub fn zero(num_vars: usize) -> Self {
        PhasePoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, PhaseScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Monomial, c: PhaseScalar) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let sum = match self.terms.get(&e) {
            Some(old) => old.try_add(&c)?,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
        Ok(())
    }

    pub fn plus(&self, other: &PhasePoly) -> Result<PhasePoly> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn times(&self, other: &PhasePoly) -> Result<PhasePoly> {
        let mut out = PhasePoly::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.mul(cb))?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &PhaseScalar) -> PhasePoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (e.clone(), v.mul(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        PhasePoly {
            num_vars: self.num_vars,
            terms,
        }
    }

    /// `x_l ∂/∂x_l`.
    pub fn euler(&self, l: usize) -> PhasePoly {
        let k = |e: &Monomial| PhaseScalar::real(TauFun::constant(int(e[l] as i64)));
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[l] > 0)
            .map(|(e, c)| (e.clone(), c.mul(&k(e))))
            .collect();
        PhasePoly {
            num_vars: self.num_vars,
            terms,
        }
    }

    /// Sets `x_var = x_target`, keeping the variable count.
    pub fn identify(&self, var: usize, target: usize) -> Result<PhasePoly> {
        let mut out = PhasePoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[target] += e2[var];
            e2[var] = 0;
            out.add_term(e2, c.clone())?;
        }
        Ok(out)
    }
}

impl fmt::Display for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    write!(f, "*x{}^{k}", v + 1)?;
                }
            }
        }
        Ok(())
    }
}

fn unit() -> PhaseScalar {
    PhaseScalar::real(TauFun::one())
}

fn phase(k: i64) -> PhaseScalar {
    PhaseScalar::new(TauFun::one(), k)
}

fn for_each_permutation(items: &mut Vec<u32>, k: usize, f: &mut impl FnMut(&[u32])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        for_each_permutation(items, k + 1, f);
        items.swap(k, i);
    }
}

/// `Ξ^{vars} p_α`: the symmetrization placed on the listed variables of an
/// `num_vars`-variable ring. Zero unless `l(α) = vars.len()`; the empty
/// partition on no variables gives 1.
pub fn symmetrize_on(alpha: &[u32], vars: &[usize], num_vars: usize) -> PhasePoly {
    let mut out = PhasePoly::zero(num_vars);
    if alpha.len() != vars.len() {
        return out;
    }
    let n = alpha.len() as i64;
    let size: i64 = alpha.iter().map(|&a| a as i64).sum();
    let c = phase(-n - size);
    let mut parts = alpha.to_vec();
    for_each_permutation(&mut parts, 0, &mut |perm| {
        let mut e = vec![0; num_vars];
        for (v, &a) in vars.iter().zip(perm) {
            e[*v] += a;
        }
        out.add_term(e, c.clone()).expect("uniform phase");
    });
    out
}

/// `Ξ_m p_α` on `x_1..x_m`.
pub fn symmetrize_power_sum(alpha: &[u32], m: usize) -> PhasePoly {
    let vars: Vec<usize> = (0..m).collect();
    symmetrize_on(alpha, &vars, m)
}

/// Deliberate perturbations used to confirm the checks can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LemmaControl {
    #[default]
    Exact,
    /// Omit one ordered partition from the product rule.
    DropPartition,
    /// Negate the phase weight on the right side.
    FlipWeight,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

pub fn check_lemma_product(alpha: &[u32], beta: &[u32]) -> Result<bool> {
    check_lemma_product_with(alpha, beta, LemmaControl::Exact)
}

/// `Ξ^{1..m+k}(p_α p_β) = Σ_{(A,B)} (Ξ^A p_α)(Ξ^B p_β)`.
pub fn check_lemma_product_with(
    alpha: &[u32],
    beta: &[u32],
    control: LemmaControl,
) -> Result<bool> {
    let (k, m) = (alpha.len(), beta.len());
    let n = k + m;
    let mut union = alpha.to_vec();
    union.extend_from_slice(beta);
    let lhs = symmetrize_power_sum(&union, n);
    let mut rhs = PhasePoly::zero(n);
    for (idx, a) in subsets(n, k).into_iter().enumerate() {
        if control == LemmaControl::DropPartition && idx == 0 {
            continue;
        }
        let b: Vec<usize> = (0..n).filter(|i| !a.contains(i)).collect();
        let term = symmetrize_on(alpha, &a, n).times(&symmetrize_on(beta, &b, n))?;
        rhs = rhs.plus(&term)?;
    }
    let weight = if control == LemmaControl::FlipWeight {
        phase(2)
    } else {
        unit()
    };
    Ok(lhs == rhs.scale(&weight))
}

/// Distinct parts of `α` with multiplicities.
fn multiplicities(alpha: &[u32]) -> BTreeMap<u32, u32> {
    let mut out = BTreeMap::new();
    for &a in alpha {
        *out.entry(a).or_insert(0) += 1;
    }
    out
}

fn remove_part(alpha: &[u32], part: u32) -> Partition {
    let mut out = alpha.to_vec();
    let idx = out.iter().position(|&a| a == part).expect("part present");
    out.remove(idx);
    out
}

fn scalar(n: u32) -> PhaseScalar {
    PhaseScalar::real(TauFun::constant(int(n as i64)))
}

pub fn check_lemma_derivative(alpha: &[u32], l: usize) -> Result<bool> {
    check_lemma_derivative_with(alpha, l, LemmaControl::Exact)
}

/// `x_l∂_l Ξ^{1..m} p_α = Σ_i (√−1)^{-(i+1)} x_l^i Ξ^{{1..m}∖{l}} i ∂p_α/∂p_i`,
/// with `l` zero-based.
pub fn check_lemma_derivative_with(alpha: &[u32], l: usize, control: LemmaControl) -> Result<bool> {
    let m = alpha.len();
    assert!(l < m, "l must index one of the m variables");
    let lhs = symmetrize_power_sum(alpha, m).euler(l);
    let others: Vec<usize> = (0..m).filter(|&v| v != l).collect();
    let flip = if control == LemmaControl::FlipWeight {
        2
    } else {
        0
    };
    let mut rhs = PhasePoly::zero(m);
    for (&i, &mult) in &multiplicities(alpha) {
        let rest = remove_part(alpha, i);
        let mut e = vec![0; m];
        e[l] = i;
        let mut x_l = PhasePoly::zero(m);
        x_l.add_term(e, phase(-(i as i64 + 1) + flip))?;
        let term = x_l
            .times(&symmetrize_on(&rest, &others, m))?
            .scale(&scalar(i * mult));
        rhs = rhs.plus(&term)?;
    }
    Ok(lhs == rhs)
}

pub fn check_lemma_second_derivative(alpha: &[u32], l: usize) -> Result<bool> {
    check_lemma_second_derivative_with(alpha, l, LemmaControl::Exact)
}

/// For `l(α) = m + 1` and zero-based `l < m`:
/// `x_l∂_l x_{m+1}∂_{m+1} Ξ^{1..m+1} p_α |_{x_{m+1}=x_l}
///   = Σ_{i,j} (√−1)^{-(i+j+2)} x_l^{i+j} Ξ^{{1..m+1}∖{l,m+1}} ij ∂²p_α/∂p_i∂p_j`.
pub fn check_lemma_second_derivative_with(
    alpha: &[u32],
    l: usize,
    control: LemmaControl,
) -> Result<bool> {
    let n = alpha.len();
    assert!(n >= 2 && l + 1 < n, "need l < m with l(α) = m + 1");
    let last = n - 1;
    let lhs = symmetrize_power_sum(alpha, n)
        .euler(last)
        .euler(l)
        .identify(last, l)?;
    let others: Vec<usize> = (0..last).filter(|&v| v != l).collect();
    let flip = if control == LemmaControl::FlipWeight {
        2
    } else {
        0
    };
    let mult = multiplicities(alpha);
    let mut rhs = PhasePoly::zero(n);
    for (&i, &mi) in &mult {
        for (&j, &mj) in &mult {
            let count = if i == j { mi * (mi - 1) } else { mi * mj };
            if count == 0 {
                continue;
            }
            let rest = remove_part(&remove_part(alpha, i), j);
            let mut e = vec![0; n];
            e[l] = i + j;
            let mut x_l = PhasePoly::zero(n);
            x_l.add_term(e, phase(-(i as i64 + j as i64 + 2) + flip))?;
            let term = x_l
                .times(&symmetrize_on(&rest, &others, n))?
                .scale(&scalar(i * j * count));
            rhs = rhs.plus(&term)?;
        }
    }
    Ok(lhs == rhs)
}

/// Partitions of every size `1..=max_size` with at most `max_len` parts, parts
/// in non-increasing order.
pub fn partitions_up_to(max_size: u32, max_len: usize) -> Vec<Partition> {
    fn go(rest: u32, max_part: u32, max_len: usize, cur: &mut Partition, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=rest.min(max_part)).rev() {
            cur.push(p);
            go(rest - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 1..=max_size {
        go(size, size, max_len, &mut Vec::new(), &mut out);
    }
    out
}
