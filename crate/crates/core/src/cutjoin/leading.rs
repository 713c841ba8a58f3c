//! Top-degree parts of the cut-join identity. Only ψ-intersection numbers
//! survive there, and matching coefficients gives the DVV recursion.

use super::identity::{
    closed_form_cut_03, closed_form_join_11, expected_degree, lhs_from, rhs_with_cache,
    stable_split_pairs, CmgCache, Mode, Status, VerificationReport,
};
use super::relations::{relations_from_residual, solve_relations};
use crate::algebra::rational::{double_factorial, rat};
use crate::algebra::{Coefficient, Rational, Solution, TauFun, TauPoly, YPoly};
use crate::error::Result;
use crate::hodge::cmg::compositions;
use crate::hodge::{
    is_stable, CmgPolynomial, CorrelatorCoefficient, CorrelatorKey, CorrelatorProvider,
    SymbolicCoefficient,
};

/// The degree `6g - 6 + 3m` part.
pub fn leading_part<C: Coefficient>(p: &CmgPolynomial<C>) -> YPoly<C> {
    p.poly.homogeneous_part(p.expected_degree())
}

/// The four leading-degree expressions, computed directly from correlators.
#[derive(Clone, Debug, PartialEq)]
pub struct LeadingDisplays<C: Coefficient = TauFun> {
    pub lhs: YPoly<C>,
    pub join: YPoly<C>,
    pub split: YPoly<C>,
    pub cut: YPoly<C>,
    pub notes: Vec<String>,
}

fn dfact(n: i64) -> Rational {
    Rational::from_integer(double_factorial(n))
}

/// `(-1)^{g-1}/(1+τ) · (τ²/(1+τ))^{2g-2+m}`.
fn leading_constant(g: u32, m: usize) -> TauFun {
    let one_plus_tau = TauFun::from_poly(TauPoly::linear(1, 1));
    let ratio = &TauFun::from_poly(TauPoly::from_ints(&[0, 0, 1])) / &one_plus_tau;
    let k = &ratio.pow(2 * g + m as u32 - 2) / &one_plus_tau;
    if g.is_multiple_of(2) {
        -&k
    } else {
        k
    }
}

fn correlator<C: CorrelatorCoefficient>(
    provider: &CorrelatorProvider,
    g: u32,
    b: &[u32],
) -> Result<C> {
    C::from_entry(provider.hodge_correlator(&CorrelatorKey::psi(g, b))?)
}

fn scaled<C: Coefficient>(c: &C, r: Rational) -> C {
    c.scaled(&TauFun::constant(r))
}

/// `Σ_b ⟨τ_b⟩_g (2b_0+1)!! y_0^{2b_0+3} ∏_{i≥1} (2b_i-1)!! y_i^{2b_i+1}` in
/// `n` variables: the top part of `D_0 F_n^g` without its constant.
fn marked_factor<C: CorrelatorCoefficient>(
    provider: &CorrelatorProvider,
    g: u32,
    n: usize,
) -> Result<YPoly<C>> {
    let mut out = YPoly::zero(n);
    for b in compositions(3 * g + n as u32 - 3, n) {
        let v: C = correlator(provider, g, &b)?;
        if v.is_zero() {
            continue;
        }
        let mut coeff = dfact(2 * b[0] as i64 + 1);
        let mut e = vec![2 * b[0] + 3];
        for &bi in &b[1..] {
            coeff *= dfact(2 * bi as i64 - 1);
            e.push(2 * bi + 1);
        }
        out.add_term(e, scaled(&v, coeff));
    }
    Ok(out)
}

pub fn leading_displays<C: CorrelatorCoefficient>(
    g: u32,
    m: usize,
    provider: &CorrelatorProvider,
) -> Result<LeadingDisplays<C>> {
    let k = leading_constant(g, m);
    let half_k = k.scale(&rat(1, 2));
    let top = expected_degree(g, m);
    let mut notes = Vec::new();

    let mut lhs = YPoly::zero(m);
    for b in compositions(3 * g + m as u32 - 3, m) {
        let v: C = correlator(provider, g, &b)?;
        if v.is_zero() {
            continue;
        }
        for l in 0..m {
            let mut coeff = Rational::from_integer(1.into());
            let mut e = Vec::with_capacity(m);
            for (i, &bi) in b.iter().enumerate() {
                if i == l {
                    coeff *= dfact(2 * bi as i64 + 1);
                    e.push(2 * bi + 2);
                } else {
                    coeff *= dfact(2 * bi as i64 - 1);
                    e.push(2 * bi + 1);
                }
            }
            lhs.add_term(e, scaled(&v, coeff));
        }
    }
    let lhs = lhs.scale(&k);

    let join = if g == 0 {
        YPoly::zero(m)
    } else if !is_stable(g - 1, m + 1) {
        notes.push("join leading part taken from the closed form of C_2^0".into());
        closed_form_join_11()?
            .homogeneous_part(top)
            .map_coeffs(|c| C::from_tau(c.clone()))
    } else {
        let mut acc = YPoly::zero(m);
        for b in compositions(3 * (g - 1) + m as u32 - 2, m + 1) {
            let v: C = correlator(provider, g - 1, &b)?;
            if v.is_zero() {
                continue;
            }
            let last = b[m];
            for l in 0..m {
                let mut coeff = dfact(2 * b[l] as i64 + 1) * dfact(2 * last as i64 + 1);
                let mut e = Vec::with_capacity(m);
                for (i, &bi) in b[..m].iter().enumerate() {
                    if i == l {
                        e.push(2 * bi + 2 * last + 6);
                    } else {
                        coeff *= dfact(2 * bi as i64 - 1);
                        e.push(2 * bi + 1);
                    }
                }
                acc.add_term(e, scaled(&v, coeff));
            }
        }
        acc.scale(&half_k)
    };

    let mut split = YPoly::zero(m);
    for (a, kk) in stable_split_pairs(g, m) {
        let fa = marked_factor::<C>(provider, a, kk)?;
        let fb = marked_factor::<C>(provider, g - a, m - kk + 1)?;
        for l in 0..m {
            let others: Vec<usize> = (0..m).filter(|&i| i != l).collect();
            for mask in 0u32..(1 << others.len()) {
                if mask.count_ones() as usize != kk - 1 {
                    continue;
                }
                let (mut map_a, mut map_b) = (vec![l], vec![l]);
                for (i, &v) in others.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        map_a.push(v);
                    } else {
                        map_b.push(v);
                    }
                }
                split.add_assign(&fa.remap(&map_a, m).times(&fb.remap(&map_b, m)));
            }
        }
    }
    let split = split.scale(&half_k);

    let cut = if m < 2 {
        YPoly::zero(m)
    } else if !is_stable(g, m - 1) {
        notes.push("cut leading part taken from the closed form of C_2^0".into());
        closed_form_cut_03()?
            .homogeneous_part(top)
            .map_coeffs(|c| C::from_tau(c.clone()))
    } else {
        let mut acc = YPoly::zero(m);
        for b in compositions(3 * g + m as u32 - 4, m - 1) {
            let v: C = correlator(provider, g, &b)?;
            if v.is_zero() {
                continue;
            }
            for l in 0..m {
                for j in l + 1..m {
                    let rest: Vec<usize> = (0..m).filter(|&i| i != l && i != j).collect();
                    let mut coeff = dfact(2 * b[0] as i64 + 1);
                    let mut base = vec![0; m];
                    for (&var, &bi) in rest.iter().zip(&b[1..]) {
                        coeff *= dfact(2 * bi as i64 - 1);
                        base[var] = 2 * bi + 1;
                    }
                    // y_l y_j (y_l^{2b+4} - y_j^{2b+4})/(y_l - y_j)
                    let n = 2 * b[0] + 3;
                    for t in 0..=n {
                        let mut e = base.clone();
                        e[l] = t + 1;
                        e[j] = n - t + 1;
                        acc.add_term(e, scaled(&v, coeff.clone()));
                    }
                }
            }
        }
        acc.scale(&k)
    };

    Ok(LeadingDisplays {
        lhs,
        join,
        split,
        cut,
        notes,
    })
}

pub fn dvv_leading_check(g: u32, m: usize) -> Result<VerificationReport> {
    dvv_leading_check_with(g, m, &CorrelatorProvider::numeric())
}

/// Compares each leading expression with the top-degree part of the
/// assembled term, then checks the leading identity itself.
pub fn dvv_leading_check_with(
    g: u32,
    m: usize,
    provider: &CorrelatorProvider,
) -> Result<VerificationReport> {
    let d = leading_displays::<TauFun>(g, m, provider)?;
    let cache = CmgCache::<TauFun>::new(provider, true);
    let assembled = rhs_with_cache(g, m, &cache, Mode::ClosedForm)?;
    let top = expected_degree(g, m);
    let lhs_top = lhs_from(&cache.get(g, m)?, true)?.homogeneous_part(top);

    let mut notes = d.notes.clone();
    if g >= 2 {
        notes.push(format!("genus {g}: only the lambda-free part of Gamma_{g} enters, which is exact in top degree"));
    }
    let mut mismatch = None;
    for (name, shown, built) in [
        ("lhs", &d.lhs, &lhs_top),
        ("join", &d.join, &assembled.join.homogeneous_part(top)),
        ("split", &d.split, &assembled.split.homogeneous_part(top)),
        ("cut", &d.cut, &assembled.cut.homogeneous_part(top)),
    ] {
        let diff = shown.minus(built);
        if let Some((e, _)) = diff.graded_terms().first() {
            notes.push(format!(
                "{name}: leading expression differs from the assembled term"
            ));
            mismatch.get_or_insert_with(|| (*e).clone());
        }
    }
    let rhs = d.join.plus(&d.split).plus(&d.cut);
    let mut report = VerificationReport::new(g, m, d.lhs, rhs, notes);
    if let (Status::Zero, Some(e)) = (&report.status, mismatch) {
        report.status = Status::Nonzero(e);
    }
    Ok(report)
}

/// Solves the leading identity for `unknowns`, all other ψ-correlators
/// numeric.
pub fn dvv_extract(
    g: u32,
    m: usize,
    unknowns: &[CorrelatorKey],
) -> Result<Solution<CorrelatorKey>> {
    let provider = CorrelatorProvider::symbolic(unknowns.iter().cloned());
    let d = leading_displays::<SymbolicCoefficient>(g, m, &provider)?;
    let residual = d.lhs.minus(&d.join.plus(&d.split).plus(&d.cut));
    let relations = relations_from_residual(&residual, unknowns)?;
    solve_relations(&relations, unknowns)
}
