use num_bigint::BigInt;
use num_traits::Zero;

use super::{BigRat, ExactError, IntPoly};

/// Recovers a polynomial of degree at most `degree_bound` from sampled values.
///
/// The first `degree_bound + 1` points determine the polynomial (Newton form);
/// every remaining point must lie on it, otherwise the sampled function is not
/// a polynomial of that degree and `DegreeBoundViolated` is returned.
pub fn interpolate(
    points: &[(BigInt, BigRat)],
    degree_bound: usize,
) -> Result<IntPoly, ExactError> {
    if points.len() < degree_bound + 2 {
        return Err(ExactError::TooFewPoints {
            needed: degree_bound + 2,
            got: points.len(),
        });
    }
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(y, _)| y == x) {
            return Err(ExactError::RepeatedAbscissa(x.clone()));
        }
    }

    let fit = &points[..=degree_bound];
    let xs: Vec<BigRat> = fit
        .iter()
        .map(|(x, _)| BigRat::from_integer(x.clone()))
        .collect();
    let mut table: Vec<BigRat> = fit.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..xs.len() {
        for i in (level..xs.len()).rev() {
            table[i] = (&table[i] - &table[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }

    let mut poly = IntPoly::zero();
    for i in (0..xs.len()).rev() {
        let shift = IntPoly::from_coeffs(vec![-xs[i].clone(), BigRat::from_integer(1.into())]);
        poly = &(&poly * &shift) + &IntPoly::constant(table[i].clone());
    }

    for (x, y) in &points[degree_bound + 1..] {
        let got = poly.eval(&BigRat::from_integer(x.clone()));
        if &got != y {
            return Err(ExactError::DegreeBoundViolated {
                degree_bound,
                at: x.clone(),
            });
        }
    }
    debug_assert!(fit
        .iter()
        .all(|(x, y)| (poly.eval(&BigRat::from_integer(x.clone())) - y).is_zero()));
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<(BigInt, BigRat)> {
        v.iter()
            .map(|&(x, y)| (BigInt::from(x), BigRat::from_integer(y.into())))
            .collect()
    }

    #[test]
    fn linear_fit() {
        let p = interpolate(&pts(&[(3, 16), (4, 24), (5, 32)]), 1).unwrap();
        assert_eq!(p, IntPoly::from_ints(&[-8, 8]));
    }

    #[test]
    fn constant_fit() {
        let p = interpolate(&pts(&[(2, 1), (3, 1), (4, 1)]), 0).unwrap();
        assert_eq!(p, IntPoly::one());
    }

    #[test]
    fn degree_bound_violated() {
        let err = interpolate(&pts(&[(1, 1), (2, 4), (3, 9), (4, 17)]), 2).unwrap_err();
        assert!(err.to_string().starts_with("degree bound violated"));
    }

    #[test]
    fn needs_verification_point() {
        assert!(matches!(
            interpolate(&pts(&[(1, 1), (2, 2)]), 1),
            Err(ExactError::TooFewPoints { .. })
        ));
    }
}
