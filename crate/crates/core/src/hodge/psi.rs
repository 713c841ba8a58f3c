use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use super::is_stable;
use crate::algebra::rational::{double_factorial, factorial, Rational};
use crate::error::{Error, Result};

type Memo = RwLock<HashMap<(u32, Vec<u32>), Rational>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Snapshot of every memoized `⟨τ_b⟩_g`, sorted by key.
pub fn psi_memo_entries() -> Vec<(u32, Vec<u32>, Rational)> {
    let table = memo().read().expect("memo lock poisoned");
    let mut out: Vec<_> = table
        .iter()
        .map(|((g, b), v)| (*g, b.clone(), v.clone()))
        .collect();
    out.sort();
    out
}

/// Seeds the memo table, e.g. from a cache file. Exponents are sorted first.
pub fn psi_memo_preload(entries: impl IntoIterator<Item = (u32, Vec<u32>, Rational)>) {
    let mut table = memo().write().expect("memo lock poisoned");
    for (g, mut b, v) in entries {
        b.sort_unstable();
        table.insert((g, b), v);
    }
}

fn dfact(n: i64) -> Rational {
    Rational::from_integer(double_factorial(n))
}

/// The Witten–Kontsevich number `⟨τ_{b_1}⋯τ_{b_n}⟩_g`. Zero off the
/// dimension constraint.
pub fn psi_correlator(g: u32, b: &[u32]) -> Result<Rational> {
    if b.is_empty() || !is_stable(g, b.len()) {
        return Err(Error::Unstable {
            genus: g,
            points: b.len(),
        });
    }
    let mut b = b.to_vec();
    b.sort_unstable();
    Ok(lookup(g, b))
}

/// Stable-or-zero lookup used inside the recursion.
fn lookup_or_zero(g: i64, b: Vec<u32>) -> Rational {
    if g < 0 || b.is_empty() || !is_stable(g as u32, b.len()) {
        return Rational::zero();
    }
    let mut b = b;
    b.sort_unstable();
    lookup(g as u32, b)
}

fn lookup(g: u32, b: Vec<u32>) -> Rational {
    let dim: i64 = b.iter().map(|&x| x as i64).sum();
    if dim != 3 * g as i64 - 3 + b.len() as i64 {
        return Rational::zero();
    }
    if let Some(v) = memo()
        .read()
        .expect("memo lock poisoned")
        .get(&(g, b.clone()))
    {
        return v.clone();
    }
    let v = compute(g, &b);
    memo()
        .write()
        .expect("memo lock poisoned")
        .insert((g, b), v.clone());
    v
}

fn without(b: &[u32], idx: usize) -> Vec<u32> {
    let mut out = b.to_vec();
    out.remove(idx);
    out
}

fn compute(g: u32, b: &[u32]) -> Rational {
    if g == 0 && b == [0, 0, 0] {
        return Rational::one();
    }
    if g == 1 && b == [1] {
        // DVV for ⟨τ_0 τ_2⟩_1 gives 15⟨τ_0τ_2⟩_1 = 3⟨τ_1⟩_1 + ½⟨τ_0³⟩_0, and
        // the string equation turns the left side into 15⟨τ_1⟩_1.
        let base = lookup(0, vec![0, 0, 0]);
        return base / Rational::from_integer(2.into()) / Rational::from_integer(12.into());
    }
    let n = b.len();
    // b is sorted, so a τ_0 or τ_1 insertion sits at the front.
    if b[0] == 0 {
        let rest = without(b, 0);
        let mut acc = Rational::zero();
        for j in 0..rest.len() {
            if rest[j] > 0 {
                let mut c = rest.clone();
                c[j] -= 1;
                acc += lookup_or_zero(g as i64, c);
            }
        }
        return acc;
    }
    if b[0] == 1 {
        let factor = Rational::from_integer((2 * g as i64 - 2 + n as i64 - 1).into());
        return factor * lookup_or_zero(g as i64, without(b, 0));
    }
    dvv(g, b[0], &b[1..])
}

/// Solves the DVV relation for `⟨τ_k τ_S⟩_g`.
fn dvv(g: u32, k: u32, s: &[u32]) -> Rational {
    let k = k as i64;
    let mut acc = Rational::zero();
    for j in 0..s.len() {
        let bj = s[j] as i64;
        let coeff = dfact(2 * k + 2 * bj - 1) / dfact(2 * bj - 1);
        let mut c = s.to_vec();
        c[j] = (k + bj - 1) as u32;
        acc += coeff * lookup_or_zero(g as i64, c);
    }
    let mut quad = Rational::zero();
    for r in 0..=k - 2 {
        let s_idx = k - 2 - r;
        let weight = dfact(2 * r + 1) * dfact(2 * s_idx + 1);
        let mut join = vec![r as u32, s_idx as u32];
        join.extend_from_slice(s);
        let mut term = lookup_or_zero(g as i64 - 1, join);
        for g1 in 0..=g {
            for mask in 0u32..(1 << s.len()) {
                let (mut left, mut right) = (vec![r as u32], vec![s_idx as u32]);
                for (i, &e) in s.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        left.push(e);
                    } else {
                        right.push(e);
                    }
                }
                let a = lookup_or_zero(g1 as i64, left);
                if a.is_zero() {
                    continue;
                }
                term += a * lookup_or_zero((g - g1) as i64, right);
            }
        }
        quad += weight * term;
    }
    let half = Rational::new(1.into(), 2.into());
    (acc + half * quad) / dfact(2 * k + 1)
}

/// `(n-3)!/∏ b_i!` for genus zero.
pub fn genus0_closed(b: &[u32]) -> Result<Rational> {
    let n = b.len();
    let total: u64 = b.iter().map(|&x| x as u64).sum();
    if n < 3 || total != (n - 3) as u64 {
        return Err(Error::DimensionMismatch {
            exponents: b.to_vec(),
        });
    }
    let den = b
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, &x| acc * factorial(x));
    Ok(Rational::new(factorial((n - 3) as u32), den))
}

/// `⟨τ_{b_1}⋯τ_{b_n} λ_1⟩_1 = c_1 (n-1)!/∏ b_i!`.
pub fn lambda_one_correlator(b: &[u32], c1: &Rational) -> Result<Rational> {
    let n = b.len();
    let total: u64 = b.iter().map(|&x| x as u64).sum();
    if n == 0 || total != (n - 1) as u64 {
        return Err(Error::DimensionMismatch {
            exponents: b.to_vec(),
        });
    }
    let den = b
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, &x| acc * factorial(x));
    Ok(c1 * Rational::new(factorial((n - 1) as u32), den))
}
