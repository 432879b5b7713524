//! Human-readable renderings of polynomials and square-class formulas in the
//! notation of determinant tables (`N(N-1)(N+1)/3`, `3^C(N,3)`).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::rat_string;
use super::{poly_factor_rational, Base, BigRat, IntPoly, SquareClassFormula};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Text,
    Latex,
}

/// Linear-factor ordering used when printing a factored polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorOrder {
    /// `N`, `N-1`, `N-2`, ..., then `N+1`, `N+2`, ... (dimension tables).
    Dimension,
    /// Ascending constant term: `(N-2)N(N+1)(N+4)`.
    Ascending,
}

fn linear_text(f: &IntPoly) -> String {
    // f is primitive qN - p, q > 0
    let q = f.coeff(1);
    let c = f.coeff(0);
    let lead = if q.is_one() {
        "N".to_string()
    } else {
        format!("{}N", rat_string(&q))
    };
    if c.is_zero() {
        lead
    } else if c.is_negative() {
        format!("{lead}-{}", rat_string(&-c))
    } else {
        format!("{lead}+{}", rat_string(&c))
    }
}

fn order_key(f: &IntPoly, order: FactorOrder) -> (u8, BigRat) {
    let root = f.linear_root().unwrap_or_else(BigRat::zero);
    match order {
        FactorOrder::Ascending => (0, -root),
        FactorOrder::Dimension => {
            if root.is_zero() {
                (0, root)
            } else if root.is_positive() {
                (1, root)
            } else {
                (2, -root)
            }
        }
    }
}

fn wrap(s: &str, style: Style) -> String {
    if s == "N" {
        s.to_string()
    } else {
        match style {
            Style::Text | Style::Latex => format!("({s})"),
        }
    }
}

fn sup(e: &str, style: Style) -> String {
    match style {
        Style::Text => format!("^{e}"),
        Style::Latex => format!("^{{{e}}}"),
    }
}

/// Factored rendering: `N*(N-1)*(N+1)/3` (text) or `N(N-1)(N+1)/3` (LaTeX).
pub fn factored(p: &IntPoly, order: FactorOrder, style: Style) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    if p.is_constant() {
        return rat_string(&p.constant_term());
    }
    let fac = poly_factor_rational(p);
    let mut linear = fac.linear_factors.clone();
    linear.sort_by_key(|a| order_key(&a.0, order));
    let mut parts: Vec<String> = Vec::new();
    for (f, m) in &linear {
        let base = wrap(&linear_text(f), style);
        parts.push(if *m == 1 {
            base
        } else {
            format!("{base}{}", sup(&m.to_string(), style))
        });
    }
    if !fac.residual.is_constant() {
        parts.push(format!(
            "({})",
            fac.residual.expanded_string().replace(' ', "")
        ));
    }
    let mul = match style {
        Style::Text => "*",
        Style::Latex => "",
    };
    let mut body = parts.join(mul);
    let c = &fac.content;
    let num = c.numer().abs();
    if !num.is_one() {
        body = format!("{num}{mul}{body}");
    }
    if c.is_negative() {
        body = format!("-{body}");
    }
    if !c.denom().is_one() {
        body = format!("{body}/{}", c.denom());
    }
    body
}

/// Exponent written in the binomial basis, `C(N,3)+C(N,4)`, with `C(N,1)`
/// printed as `N`. Falls back to the expanded form when not integer valued.
pub fn binomial_exponent(e: &IntPoly, style: Style) -> String {
    let Some(coeffs) = e.to_binomial_basis() else {
        return e.expanded_string();
    };
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mono = match (k, style) {
            (0, _) => String::new(),
            (1, _) => "N".to_string(),
            (_, Style::Text) => format!("C(N,{k})"),
            (_, Style::Latex) => format!("\\binom{{N}}{{{k}}}"),
        };
        let mag = c.abs();
        let piece = if mono.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            mono
        } else {
            format!("{mag}{}{mono}", if style == Style::Text { "*" } else { "" })
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { "-" } else { "+" });
        }
        out.push_str(&piece);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn needs_parens(s: &str) -> bool {
    s.chars()
        .skip(1)
        .any(|c| matches!(c, '+' | '-' | ' ' | '*' | '/' | '^'))
}

fn power(base: &str, exp: &str, style: Style) -> String {
    if exp == "1" {
        return base.to_string();
    }
    match style {
        Style::Text if needs_parens(exp) => format!("{base}^({exp})"),
        Style::Text => format!("{base}^{exp}"),
        Style::Latex => format!("{base}^{{{exp}}}"),
    }
}

/// Renders a formula. Integer bases sharing an exponent are multiplied
/// together (`6^(C(N,3)+C(N,4))`); polynomial bases are printed individually,
/// and `det(B)` comes last.
pub fn formula(f: &SquareClassFormula, style: Style) -> String {
    let mut grouped: BTreeMap<String, (BigInt, IntPoly)> = BTreeMap::new();
    let mut poly_parts = Vec::new();
    for (base, e) in f.factors() {
        match base {
            Base::Int(p) => {
                let key = e.to_string();
                let entry = grouped
                    .entry(key)
                    .or_insert_with(|| (BigInt::one(), e.clone()));
                entry.0 *= p;
            }
            Base::Poly(q) => {
                let b = if q.degree() == Some(1) {
                    wrap(&linear_text(q), style)
                } else {
                    format!("({})", q.expanded_string().replace(' ', ""))
                };
                poly_parts.push(power(&b, &binomial_exponent(e, style), style));
            }
        }
    }
    let mut ints: Vec<(BigInt, IntPoly)> = grouped.into_values().collect();
    ints.sort_by(|a, b| a.0.cmp(&b.0));
    let mut parts: Vec<String> = ints
        .iter()
        .map(|(b, e)| power(&b.to_string(), &binomial_exponent(e, style), style))
        .collect();
    parts.extend(poly_parts);
    if !f.det_b_exponent().is_zero() {
        let base = match style {
            Style::Text => "det(B)",
            Style::Latex => "\\det(B)",
        };
        let e = f.det_b_exponent();
        let exp =
            if e.degree().unwrap_or(0) <= 1 || poly_factor_rational(e).linear_factors.is_empty() {
                e.expanded_string().replace(' ', "")
            } else {
                factored(e, FactorOrder::Dimension, style)
            };
        parts.push(power(base, &exp, style));
    }
    if parts.is_empty() {
        return "1".into();
    }
    match style {
        Style::Text => parts.join(" * "),
        Style::Latex => parts.join(" "),
    }
}

/// Square class of a polynomial, printed as `content * factors`, e.g.
/// `5(N-2)N(N+1)(N+4)`. Expects a reduced formula with constant exponents.
pub fn polynomial_class(f: &SquareClassFormula) -> String {
    let mut content = BigInt::one();
    let mut parts = Vec::new();
    for (base, e) in f.factors() {
        let odd = e
            .eval_integer(0)
            .map(|v| num_integer::Integer::is_odd(&v))
            .unwrap_or(true);
        if !odd {
            continue;
        }
        match base {
            Base::Int(p) => content *= p,
            Base::Poly(q) => parts.push(if q.degree() == Some(1) {
                wrap(&linear_text(q), Style::Text)
            } else {
                format!("({})", q.expanded_string().replace(' ', ""))
            }),
        }
    }
    let body = parts.join("");
    match (content.is_one(), body.is_empty()) {
        (true, true) => "1".into(),
        (true, false) => body,
        (false, true) => content.to_string(),
        (false, false) => format!("{content}{body}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_poly;

    #[test]
    fn dimension_strings() {
        let p = parse_poly("N(N-1)(N+1)/3").unwrap();
        assert_eq!(
            factored(&p, FactorOrder::Dimension, Style::Text),
            "N*(N-1)*(N+1)/3"
        );
        assert_eq!(
            factored(&p, FactorOrder::Dimension, Style::Latex),
            "N(N-1)(N+1)/3"
        );
        let q = parse_poly("N^2(N-1)(N+1)/12").unwrap();
        assert_eq!(
            factored(&q, FactorOrder::Dimension, Style::Latex),
            "N^{2}(N-1)(N+1)/12"
        );
    }

    #[test]
    fn exponent_strings() {
        let e = &IntPoly::binomial(3) + &IntPoly::binomial(4);
        assert_eq!(binomial_exponent(&e, Style::Text), "C(N,3)+C(N,4)");
        assert_eq!(binomial_exponent(&IntPoly::var(), Style::Text), "N");
    }

    #[test]
    fn formula_strings() {
        let f = SquareClassFormula::from_integer_power(
            &BigRat::from_integer(6.into()),
            &(&IntPoly::binomial(3) + &IntPoly::binomial(4)),
        )
        .unwrap();
        assert_eq!(formula(&f, Style::Text), "6^(C(N,3)+C(N,4))");
        let g = SquareClassFormula::from_integer_power(
            &BigRat::from_integer(3.into()),
            &IntPoly::binomial(3),
        )
        .unwrap();
        assert_eq!(formula(&g, Style::Text), "3^C(N,3)");
        assert_eq!(formula(&g, Style::Latex), "3^{\\binom{N}{3}}");
    }

    #[test]
    fn polynomial_class_string() {
        let p = parse_poly("2^20 5 (N-2)N(N+1)(N+4)").unwrap();
        let f = SquareClassFormula::from_polynomial(&p).unwrap().reduced();
        assert_eq!(polynomial_class(&f), "5(N-2)N(N+1)(N+4)");
    }
}
