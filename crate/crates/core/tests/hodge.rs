use std::collections::HashMap;

use cutjoin_core::algebra::rational::{double_factorial, factorial, int, multinomial, rat};
use cutjoin_core::hodge::{
    gamma_expansion, genus0_closed, lambda_one_correlator, psi_correlator, psi_memo_entries,
    DEFAULT_C1,
};
use cutjoin_core::{CorrelatorKey, CorrelatorProvider, Error, Rational};
use num_traits::Zero;

/// Plain DVV recursion pivoting on the largest exponent, seeded with
/// `<tau_0^3>_0 = 1` and `<tau_1>_1 = 1/24`. Shares nothing with the
/// library engine beyond rational arithmetic.
struct Oracle {
    memo: HashMap<(u32, Vec<u32>), Rational>,
}

fn dfact(n: i64) -> Rational {
    Rational::from_integer(double_factorial(n))
}

impl Oracle {
    fn new() -> Self {
        Oracle {
            memo: HashMap::new(),
        }
    }

    fn get(&mut self, g: i64, b: &[u32]) -> Rational {
        let n = b.len() as i64;
        if g < 0 || 2 * g - 2 + n <= 0 {
            return Rational::zero();
        }
        let g = g as u32;
        let total: i64 = b.iter().map(|&x| x as i64).sum();
        if total != 3 * g as i64 - 3 + n {
            return Rational::zero();
        }
        let mut key = b.to_vec();
        key.sort_unstable();
        if let Some(v) = self.memo.get(&(g, key.clone())) {
            return v.clone();
        }
        let v = self.compute(g, &key);
        self.memo.insert((g, key), v.clone());
        v
    }

    fn compute(&mut self, g: u32, b: &[u32]) -> Rational {
        if (g, b) == (0, &[0, 0, 0][..]) {
            return int(1);
        }
        if (g, b) == (1, &[1][..]) {
            return rat(1, 24);
        }
        let top = *b.last().unwrap();
        if top == 0 {
            return Rational::zero();
        }
        let k = top as i64 - 1;
        let s: Vec<u32> = b[..b.len() - 1].to_vec();
        let mut acc = Rational::zero();
        for j in 0..s.len() {
            let bj = s[j] as i64;
            let mut rest = s.clone();
            rest[j] = (k + bj) as u32;
            acc += dfact(2 * k + 2 * bj + 1) / dfact(2 * bj - 1) * self.get(g as i64, &rest);
        }
        for r in 0..k {
            let t = k - 1 - r;
            let w = dfact(2 * r + 1) * dfact(2 * t + 1) / int(2);
            let mut with = s.clone();
            with.push(r as u32);
            with.push(t as u32);
            acc += &w * self.get(g as i64 - 1, &with);
            for mask in 0u32..(1 << s.len()) {
                let (mut left, mut right) = (vec![r as u32], vec![t as u32]);
                for (i, &x) in s.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        left.push(x);
                    } else {
                        right.push(x);
                    }
                }
                for g1 in 0..=g as i64 {
                    acc += &w * self.get(g1, &left) * self.get(g as i64 - g1, &right);
                }
            }
        }
        acc / dfact(2 * k + 3)
    }
}

fn admissible(g: u32, n: usize) -> Vec<Vec<u32>> {
    fn go(total: u32, n: usize, min: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for b in min..=total {
            prefix.push(b);
            go(total - b, n - 1, b, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if 2 * g as i64 - 2 + n as i64 > 0 {
        go(3 * g + n as u32 - 3, n, 0, &mut Vec::new(), &mut out);
    }
    out
}

#[test]
fn engine_matches_independent_recursion() {
    let mut oracle = Oracle::new();
    for (g, max_n) in [(0, 7), (1, 6), (2, 5), (3, 3), (4, 1)] {
        for n in 1..=max_n {
            for b in admissible(g, n) {
                assert_eq!(
                    psi_correlator(g, &b).unwrap(),
                    oracle.get(g as i64, &b),
                    "g={g} b={b:?}"
                );
            }
        }
    }
}

#[test]
fn genus_zero_closed_form_up_to_eight_points() {
    for n in 3..=8 {
        for b in admissible(0, n) {
            assert_eq!(
                psi_correlator(0, &b).unwrap(),
                genus0_closed(&b).unwrap(),
                "{b:?}"
            );
        }
    }
}

#[test]
fn string_and_dilaton_on_memoized_keys() {
    for g in 0..=2 {
        for n in 1..=6 {
            for b in admissible(g, n) {
                psi_correlator(g, &b).unwrap();
            }
        }
    }
    let entries: Vec<_> = psi_memo_entries()
        .into_iter()
        .filter(|(g, b, _)| *g <= 2 && b.len() <= 6)
        .collect();
    assert!(entries.len() > 100);
    let mut checked = (0, 0);
    for (g, b, v) in &entries {
        let rest = &b[1..];
        if b[0] == 0 && (*g, b.as_slice()) != (0, &[0, 0, 0][..]) {
            let mut sum = Rational::zero();
            for j in 0..rest.len() {
                if rest[j] > 0 {
                    let mut c = rest.to_vec();
                    c[j] -= 1;
                    sum += psi_correlator(*g, &c).unwrap();
                }
            }
            assert_eq!(v, &sum, "string at g={g} b={b:?}");
            checked.0 += 1;
        }
        if let Some(pos) = b.iter().position(|&x| x == 1) {
            if (*g, b.as_slice()) == (1, &[1][..]) {
                continue;
            }
            let mut c = b.clone();
            c.remove(pos);
            let factor = int(2 * *g as i64 - 2 + c.len() as i64);
            assert_eq!(
                v,
                &(factor * psi_correlator(*g, &c).unwrap()),
                "dilaton at g={g} b={b:?}"
            );
            checked.1 += 1;
        }
    }
    assert!(checked.0 > 20 && checked.1 > 20);
}

#[test]
fn known_values() {
    assert_eq!(psi_correlator(1, &[1]).unwrap(), rat(1, 24));
    assert_eq!(psi_correlator(2, &[4]).unwrap(), rat(1, 1152));
    assert_eq!(psi_correlator(2, &[2, 3]).unwrap(), rat(29, 5760));
    assert_eq!(psi_correlator(3, &[7]).unwrap(), rat(1, 82944));
    // one-point series <tau_{3g-2}>_g = 1/(24^g g!)
    for g in 1..=5u32 {
        let expected = Rational::new(1.into(), num_bigint::BigInt::from(24).pow(g) * factorial(g));
        assert_eq!(psi_correlator(g, &[3 * g - 2]).unwrap(), expected);
    }
}

#[test]
fn off_dimension_and_unstable() {
    assert!(psi_correlator(1, &[0, 0]).unwrap().is_zero());
    assert!(matches!(
        psi_correlator(0, &[0, 0]),
        Err(Error::Unstable { .. })
    ));
}

#[test]
fn lambda_one_is_a_scaled_multinomial() {
    let c1 = rat(DEFAULT_C1.0, DEFAULT_C1.1);
    for n in 1..=6 {
        for b in admissible(1, n).into_iter().map(|mut b| {
            // Σb = n - 1 for a λ₁ insertion at genus one
            if let Some(p) = b.iter().position(|&x| x > 0) {
                b[p] -= 1;
            }
            b
        }) {
            if b.iter().sum::<u32>() as usize != n - 1 {
                continue;
            }
            let expected = &c1 * Rational::from_integer(multinomial(&b));
            assert_eq!(lambda_one_correlator(&b, &c1).unwrap(), expected, "{b:?}");
        }
    }
    assert!(matches!(
        lambda_one_correlator(&[0, 0, 1], &c1),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn provider_dispatch() {
    let p = CorrelatorProvider::numeric();
    assert_eq!(
        p.value(&CorrelatorKey::new(1, &[0, 1], &[1])).unwrap(),
        rat(1, 24)
    );
    assert!(p.value(&CorrelatorKey::new(2, &[2], &[2])).is_err());
    let g1 = gamma_expansion(1);
    assert!(!g1.partial);
    assert!(gamma_expansion(2).partial);
}
