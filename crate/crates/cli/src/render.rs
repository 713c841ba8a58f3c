//! Text and LaTeX presentation of exact values.

use cutjoin_core::algebra::{Monomial, Rational, TauFun, TauPoly, XSeries, YPolynomial};
use num_traits::{One, Signed, Zero};

pub fn rational_latex(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        let sign = if r.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
    }
}

pub fn taupoly_latex(p: &TauPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let mono = match i {
            0 => String::new(),
            1 => "\\tau".into(),
            _ => format!("\\tau^{{{i}}}"),
        };
        if i == 0 {
            out.push_str(&rational_latex(&a));
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{} {mono}", rational_latex(&a)));
        }
    }
    out
}

pub fn taufun_latex(f: &TauFun) -> String {
    if f.is_polynomial() {
        taupoly_latex(f.num())
    } else {
        format!(
            "\\frac{{{}}}{{{}}}",
            taupoly_latex(f.num()),
            taupoly_latex(f.den())
        )
    }
}

fn monomial_text(e: &Monomial) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("y{}", i + 1)
            } else {
                format!("y{}^{k}", i + 1)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn monomial_latex(e: &Monomial) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("y_{{{}}}", i + 1)
            } else {
                format!("y_{{{}}}^{{{k}}}", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// One term per line, monomials left-aligned in a column.
pub fn poly_text(p: &YPolynomial) -> String {
    if p.is_zero() {
        return "0\n".into();
    }
    let rows: Vec<(String, String)> = p
        .graded_terms()
        .into_iter()
        .map(|(e, c)| (monomial_text(e), c.to_string()))
        .collect();
    let width = rows.iter().map(|(m, _)| m.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(m, c)| format!("{m:<width$}  {c}\n"))
        .collect()
}

pub fn poly_latex(p: &YPolynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (e, c) in p.graded_terms() {
        // Pull a single leading minus out of the coefficient.
        let neg = c.num().leading().is_some_and(|l| l.is_negative());
        let body = taufun_latex(&if neg { -c } else { c.clone() });
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = monomial_latex(e);
        let needs_parens =
            !c.is_polynomial() || c.num().coeffs().iter().filter(|a| !a.is_zero()).count() == 1;
        let coeff = if needs_parens || mono.is_empty() {
            body
        } else {
            format!("\\left({body}\\right)")
        };
        match (coeff.as_str(), mono.is_empty()) {
            ("1", false) => out.push_str(&mono),
            (_, true) => out.push_str(&coeff),
            _ => out.push_str(&format!("{coeff} {mono}")),
        }
    }
    out
}

pub fn series_text(s: &XSeries) -> String {
    s.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| format!("x^{n}  {c}\n"))
        .collect()
}

pub fn series_latex(s: &XSeries) -> String {
    let terms: Vec<String> = s
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| {
            let x = match n {
                0 => String::new(),
                1 => " x".into(),
                _ => format!(" x^{{{n}}}"),
            };
            let body = taufun_latex(c);
            match (body.as_str(), n) {
                ("1", 1..) => x.trim_start().to_string(),
                _ if c.is_polynomial()
                    && c.num().coeffs().iter().filter(|a| !a.is_zero()).count() == 1 =>
                {
                    format!("{body}{x}")
                }
                _ => format!("\\left({body}\\right){x}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        format!("{} + O(x^{{{}}})", terms.join(" + "), s.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cutjoin_core::algebra::rational::rat;

    #[test]
    fn latex_coefficients() {
        let f = TauFun::new(TauPoly::from_ints(&[0, 0, -1]), TauPoly::from_ints(&[1, 1])).unwrap();
        assert_eq!(taufun_latex(&f), "\\frac{-\\tau^{2}}{\\tau + 1}");
        assert_eq!(rational_latex(&rat(-3, 4)), "-\\frac{3}{4}");
        assert_eq!(taupoly_latex(&TauPoly::from_ints(&[1, 2])), "2 \\tau + 1");
    }
}
