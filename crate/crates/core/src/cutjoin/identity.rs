//! Both sides of the polynomial cut-join identity in the `y` variables.

use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::algebra::rational::rat;
use crate::algebra::{Coefficient, Monomial, TauFun, YPoly, YPolynomial};
use crate::error::{Error, Result};
use crate::hodge::{cmg_polynomial_with, is_stable, CorrelatorCoefficient, CorrelatorProvider};
use crate::inversion::{one_plus_tau, x_ddx_in_y};

/// How unstable pieces referenced by an instance are handled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Every referenced generating polynomial must be stable.
    #[default]
    Stable,
    /// `(0,3)` and `(1,1)` use the closed forms of the unstable `𝒞_2^0`;
    /// other instances assemble as in `Stable`.
    ClosedForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityOptions {
    pub mode: Mode,
    /// Include the transport vector field on the left side. Turning it off is
    /// a negative control.
    pub transport: bool,
    /// Accept generating polynomials built from a partial Γ_g (g ≥ 2). Only
    /// their top-degree parts are exact.
    pub allow_partial: bool,
}

impl Default for IdentityOptions {
    fn default() -> Self {
        IdentityOptions {
            mode: Mode::Stable,
            transport: true,
            allow_partial: false,
        }
    }
}

impl IdentityOptions {
    pub fn closed_form() -> Self {
        IdentityOptions {
            mode: Mode::ClosedForm,
            ..Self::default()
        }
    }
}

/// The right side split into its join, split and cut groups.
#[derive(Clone, Debug, PartialEq)]
pub struct RhsTerms<C: Coefficient = TauFun> {
    pub join: YPoly<C>,
    pub split: YPoly<C>,
    pub cut: YPoly<C>,
}

impl<C: Coefficient> RhsTerms<C> {
    pub fn total(&self) -> YPoly<C> {
        self.join.plus(&self.split).plus(&self.cut)
    }
}

/// Memo of `𝐂Ξ𝒞_m^g` for one assembly.
pub(crate) struct CmgCache<'a, C: Coefficient> {
    provider: &'a CorrelatorProvider,
    allow_partial: bool,
    table: Mutex<HashMap<(u32, usize), YPoly<C>>>,
}

impl<'a, C: CorrelatorCoefficient> CmgCache<'a, C> {
    pub(crate) fn new(provider: &'a CorrelatorProvider, allow_partial: bool) -> Self {
        CmgCache {
            provider,
            allow_partial,
            table: Mutex::new(HashMap::new()),
        }
    }

    pub(crate) fn get(&self, g: u32, m: usize) -> Result<YPoly<C>> {
        if let Some(p) = self.table.lock().expect("cache lock").get(&(g, m)) {
            return Ok(p.clone());
        }
        let c = cmg_polynomial_with::<C>(g, m, self.provider)?;
        if c.partial && !self.allow_partial {
            return Err(Error::Unsupported(format!(
                "genus {g} needs the lambda terms of Gamma_{g}, which are not implemented"
            )));
        }
        self.table
            .lock()
            .expect("cache lock")
            .insert((g, m), c.poly.clone());
        Ok(c.poly)
    }
}

fn y(m: usize, i: usize) -> YPolynomial {
    YPoly::var(m, i)
}

fn constant(m: usize, c: i64) -> YPolynomial {
    YPoly::constant(m, TauFun::from_int(c))
}

fn inv_one_plus_tau() -> TauFun {
    one_plus_tau().inv().expect("1+τ is nonzero")
}

/// `τ y_i + 1`.
fn tau_y_plus_one(m: usize, i: usize) -> YPolynomial {
    y(m, i).scale(&TauFun::tau()).plus(&constant(m, 1))
}

/// `∂_τ F + Σ_l y_l(y_l-1)/(τ+1) ∂_l F`.
pub fn lhs_from<C: Coefficient>(f: &YPoly<C>, transport: bool) -> Result<YPoly<C>> {
    let m = f.num_vars();
    let mut out = f.d_tau();
    if transport {
        let parts: Vec<YPoly<C>> = (0..m)
            .into_par_iter()
            .map(|l| -> Result<YPoly<C>> {
                let field = y(m, l)
                    .times(&y(m, l).minus(&constant(m, 1)))
                    .scale(&inv_one_plus_tau());
                Ok(f.ddy(l)?.times_base(&field))
            })
            .collect::<Result<_>>()?;
        for p in &parts {
            out.add_assign(p);
        }
    }
    Ok(out)
}

pub fn lhs_theorem3<C: CorrelatorCoefficient>(
    g: u32,
    m: usize,
    provider: &CorrelatorProvider,
    options: &IdentityOptions,
) -> Result<YPoly<C>> {
    let cache = CmgCache::<C>::new(provider, options.allow_partial);
    lhs_from(&cache.get(g, m)?, options.transport)
}

fn require_stable(g: u32, m: usize) -> Result<()> {
    if is_stable(g, m) {
        Ok(())
    } else {
        Err(Error::Unstable {
            genus: g,
            points: m,
        })
    }
}

/// Stable pairs `(a, k)` with `(g - a, m - k + 1)` stable as well.
pub fn stable_split_pairs(g: u32, m: usize) -> Vec<(u32, usize)> {
    let mut out = Vec::new();
    for a in 0..=g {
        for k in 1..=m {
            if is_stable(a, k) && is_stable(g - a, m - k + 1) {
                out.push((a, k));
            }
        }
    }
    out
}

fn sum_all<C: Coefficient>(m: usize, parts: &[YPoly<C>]) -> YPoly<C> {
    let mut out = YPoly::zero(m);
    for p in parts {
        out.add_assign(p);
    }
    out
}

/// `-½ Σ_l [D_l D_{m+1} F_{m+1}^{g-1}]_{y_{m+1} = y_l}`.
pub(crate) fn join_term<C: CorrelatorCoefficient>(
    g: u32,
    m: usize,
    cache: &CmgCache<C>,
) -> Result<YPoly<C>> {
    if g == 0 {
        return Ok(YPoly::zero(m));
    }
    require_stable(g - 1, m + 1)?;
    let f = cache.get(g - 1, m + 1)?;
    let first = x_ddx_in_y(&x_ddx_in_y(&f, m)?, 0)?
        .subst(m, 0)?
        .truncate_vars(m)?;
    let parts: Vec<YPoly<C>> = (0..m)
        .into_par_iter()
        .map(|l| first.swap_vars(0, l))
        .collect();
    Ok(sum_all(m, &parts).scale(&TauFun::constant(rat(-1, 2))))
}

fn subsets_of(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << items.len()))
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

/// `-½ Σ_{(a,k)} Σ_l Σ_{(A,B)} D_l F_k^a(y_l, y_A) · D_l F_{m-k+1}^{g-a}(y_l, y_B)`
/// over the stable pairs.
pub(crate) fn split_term<C: CorrelatorCoefficient>(
    g: u32,
    m: usize,
    cache: &CmgCache<C>,
) -> Result<YPoly<C>> {
    let mut out = YPoly::zero(m);
    for (a, k) in stable_split_pairs(g, m) {
        let da = x_ddx_in_y(&cache.get(a, k)?, 0)?;
        let db = x_ddx_in_y(&cache.get(g - a, m - k + 1)?, 0)?;
        let parts: Vec<YPoly<C>> = (0..m)
            .into_par_iter()
            .map(|l| {
                let others: Vec<usize> = (0..m).filter(|&i| i != l).collect();
                let mut acc = YPoly::zero(m);
                for set_a in subsets_of(&others, k - 1) {
                    let set_b: Vec<usize> = others
                        .iter()
                        .copied()
                        .filter(|i| !set_a.contains(i))
                        .collect();
                    let map_a: Vec<usize> = std::iter::once(l).chain(set_a).collect();
                    let map_b: Vec<usize> = std::iter::once(l).chain(set_b).collect();
                    acc.add_assign(&da.remap(&map_a, m).times(&db.remap(&map_b, m)));
                }
                acc
            })
            .collect();
        out.add_assign(&sum_all(m, &parts));
    }
    Ok(out.scale(&TauFun::constant(rat(-1, 2))))
}

/// `Σ_{l≠j} y_l(y_j-1)(τy_l+1)/((τ+1)(y_l-y_j)) · D_l F_{m-1}^g(y_l, rest)`,
/// with each `{l, j}` pair combined over `y_l - y_j` and divided exactly.
pub(crate) fn cut_term<C: CorrelatorCoefficient>(
    g: u32,
    m: usize,
    cache: &CmgCache<C>,
) -> Result<YPoly<C>> {
    if m < 2 {
        return Ok(YPoly::zero(m));
    }
    require_stable(g, m - 1)?;
    let d = x_ddx_in_y(&cache.get(g, m - 1)?, 0)?;
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|l| (l + 1..m).map(move |j| (l, j)))
        .collect();
    let parts: Vec<YPoly<C>> = pairs
        .into_par_iter()
        .map(|(l, j)| -> Result<YPoly<C>> {
            let map: Vec<usize> = std::iter::once(l)
                .chain((0..m).filter(|&i| i != l && i != j))
                .collect();
            let kernel = y(m, l)
                .times(&y(m, j).minus(&constant(m, 1)))
                .times(&tau_y_plus_one(m, l));
            let t = d.remap(&map, m).times_base(&kernel);
            let numerator = t.minus(&t.swap_vars(l, j));
            numerator.div_exact(&y(m, l).minus(&y(m, j)))
        })
        .collect::<Result<_>>()?;
    Ok(sum_all(m, &parts).scale(&inv_one_plus_tau()))
}

/// `(0,3)`: `1 - Σ_l B(l,j)B(l,k)` with
/// `B(l,j) = y_l(y_j-1)(τy_l+1)/((τ+1)(y_l-y_j))`, over the Vandermonde
/// denominator.
pub fn closed_form_cut_03() -> Result<YPolynomial> {
    let m = 3;
    let diff = |a: usize, b: usize| y(m, a).minus(&y(m, b));
    let vandermonde = diff(0, 1).times(&diff(0, 2)).times(&diff(1, 2));
    // 1/((y_l-y_j)(y_l-y_k)) = cofactor / V
    let cofactors = [diff(1, 2), diff(0, 2).negate(), diff(0, 1)];
    let mut numerator = YPoly::zero(m);
    for (l, cof) in cofactors.iter().enumerate() {
        let (j, k) = match l {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let t = tau_y_plus_one(m, l);
        let term = y(m, l)
            .times(&y(m, l))
            .times(&y(m, j).minus(&constant(m, 1)))
            .times(&y(m, k).minus(&constant(m, 1)))
            .times(&t)
            .times(&t)
            .times(cof);
        numerator.add_assign(&term);
    }
    let bb = numerator
        .div_exact(&vandermonde)?
        .scale(&inv_one_plus_tau().pow(2));
    Ok(constant(m, 1).minus(&bb))
}

/// `(1,1)`: the join over `𝒞_2^0`, `(p p'' - p'^2/2 + 1/2)/12` with
/// `p = y(y-1)(yτ+1)/(τ+1)`.
pub fn closed_form_join_11() -> Result<YPolynomial> {
    let p = y(1, 0)
        .times(&y(1, 0).minus(&constant(1, 1)))
        .times(&tau_y_plus_one(1, 0))
        .scale(&inv_one_plus_tau());
    let p1 = p.ddy(0)?;
    let p2 = p1.ddy(0)?;
    let body = p
        .times(&p2)
        .minus(&p1.times(&p1).scale(&TauFun::constant(rat(1, 2))))
        .plus(&YPoly::constant(1, TauFun::constant(rat(1, 2))));
    Ok(body.scale(&TauFun::constant(rat(1, 12))))
}

fn lift<C: Coefficient>(p: &YPolynomial) -> YPoly<C> {
    p.map_coeffs(|c| C::from_tau(c.clone()))
}

pub(crate) fn rhs_with_cache<C: CorrelatorCoefficient>(
    g: u32,
    m: usize,
    cache: &CmgCache<C>,
    mode: Mode,
) -> Result<RhsTerms<C>> {
    require_stable(g, m)?;
    if mode == Mode::ClosedForm {
        if (g, m) == (0, 3) {
            return Ok(RhsTerms {
                join: YPoly::zero(3),
                split: YPoly::zero(3),
                cut: lift(&closed_form_cut_03()?),
            });
        }
        if (g, m) == (1, 1) {
            return Ok(RhsTerms {
                join: lift(&closed_form_join_11()?),
                split: YPoly::zero(1),
                cut: YPoly::zero(1),
            });
        }
    }
    if m < 2 {
        if mode == Mode::Stable {
            return Err(Error::Unsupported(format!(
                "({g},{m}) needs two or more points outside closed-form mode"
            )));
        }
        // One point: no cut term, and every join/split factor is stable once g >= 2.
        return Ok(RhsTerms {
            join: join_term(g, m, cache)?,
            split: split_term(g, m, cache)?,
            cut: YPoly::zero(m),
        });
    }
    Ok(RhsTerms {
        join: join_term(g, m, cache)?,
        split: split_term(g, m, cache)?,
        cut: cut_term(g, m, cache)?,
    })
}

pub fn rhs_theorem3<C: CorrelatorCoefficient>(
    g: u32,
    m: usize,
    provider: &CorrelatorProvider,
    options: &IdentityOptions,
) -> Result<RhsTerms<C>> {
    let cache = CmgCache::<C>::new(provider, options.allow_partial);
    rhs_with_cache(g, m, &cache, options.mode)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Zero,
    /// Highest graded-lex monomial of the residual.
    Nonzero(Monomial),
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport<C: Coefficient = TauFun> {
    pub g: u32,
    pub m: usize,
    pub lhs: YPoly<C>,
    pub rhs: YPoly<C>,
    pub residual: YPoly<C>,
    pub status: Status,
    pub notes: Vec<String>,
}

impl<C: Coefficient> VerificationReport<C> {
    pub fn new(g: u32, m: usize, lhs: YPoly<C>, rhs: YPoly<C>, notes: Vec<String>) -> Self {
        let residual = lhs.minus(&rhs);
        let status = match residual.graded_terms().first() {
            None => Status::Zero,
            Some((e, _)) => Status::Nonzero((*e).clone()),
        };
        VerificationReport {
            g,
            m,
            lhs,
            rhs,
            residual,
            status,
            notes,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.status == Status::Zero
    }
}

fn report_notes(g: u32, m: usize, options: &IdentityOptions) -> Vec<String> {
    let mut notes = Vec::new();
    if g >= 1 {
        notes.push(format!(
            "lambda-degree range taken from the Gamma_{g} expansion, not the bound 3g-3 = {}",
            3 * g as i64 - 3
        ));
    }
    if options.mode == Mode::ClosedForm && (g, m) == (0, 3) {
        notes.push("cut term built from the closed form of the unstable C_2^0".into());
    }
    if m == 1 {
        notes.push("m = 1 assembled in closed-form mode (experimental)".into());
    }
    if !options.transport {
        notes.push("transport term omitted (negative control)".into());
    }
    notes
}

pub fn residual_theorem3(
    g: u32,
    m: usize,
    provider: &CorrelatorProvider,
) -> Result<VerificationReport> {
    residual_theorem3_with(g, m, provider, &IdentityOptions::default())
}

pub fn residual_theorem3_with<C: CorrelatorCoefficient>(
    g: u32,
    m: usize,
    provider: &CorrelatorProvider,
    options: &IdentityOptions,
) -> Result<VerificationReport<C>> {
    let cache = CmgCache::<C>::new(provider, options.allow_partial);
    let rhs = rhs_with_cache(g, m, &cache, options.mode)?.total();
    let lhs = lhs_from(&cache.get(g, m)?, options.transport)?;
    Ok(VerificationReport::new(
        g,
        m,
        lhs,
        rhs,
        report_notes(g, m, options),
    ))
}

/// `6g - 5 + 3m`, the degree of both sides.
pub fn expected_degree(g: u32, m: usize) -> u32 {
    6 * g + 3 * m as u32 - 5
}
