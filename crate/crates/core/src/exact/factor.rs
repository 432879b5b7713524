use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use super::{BigRat, ExactError, IntPoly};

/// Prime factorization of `|n|`, ascending by prime. `n` must be nonzero.
pub fn factorize(n: &BigInt) -> BTreeMap<BigInt, u32> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mag: BigUint = n.magnitude().clone();
    if mag.is_one() {
        return BTreeMap::new();
    }
    num_prime::nt_funcs::factorize(mag)
        .into_iter()
        .map(|(p, e)| (BigInt::from_biguint(Sign::Plus, p), e as u32))
        .collect()
}

/// Square class of a nonzero rational.
///
/// Returns the squarefree integer `s` with `x = s * r^2` for a rational `r`,
/// together with the factorization of `numerator * denominator`. The sign of
/// `x` is carried by `s`.
pub fn squarefree_part(x: &BigRat) -> Result<(BigInt, BTreeMap<BigInt, u32>), ExactError> {
    if x.is_zero() {
        return Err(ExactError::ZeroSquareClass);
    }
    let mut fac = factorize(x.numer());
    for (p, e) in factorize(x.denom()) {
        *fac.entry(p).or_insert(0) += e;
    }
    let mut s = if x.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    for (p, e) in &fac {
        if e % 2 == 1 {
            s *= p;
        }
    }
    Ok((s, fac))
}

/// All positive divisors of `|n|`, ascending.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            for _ in 0..=e {
                next.push(pk.clone());
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Result of splitting a polynomial into rational linear factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFactorization {
    pub content: BigRat,
    /// Primitive linear factors `qN - p` with `q > 0`, ordered by root.
    pub linear_factors: Vec<(IntPoly, u32)>,
    /// Primitive remainder without rational roots; `1` when `p` splits.
    pub residual: IntPoly,
}

impl RationalFactorization {
    pub fn splits(&self) -> bool {
        self.residual.is_constant()
    }

    pub fn reassemble(&self) -> IntPoly {
        let mut p = self.residual.scale(&self.content);
        for (f, m) in &self.linear_factors {
            p = &p * &f.pow(*m);
        }
        p
    }
}

/// Factors `p` as content times rational linear factors times a residual
/// with no rational roots (rational root theorem on the primitive part).
pub fn poly_factor_rational(p: &IntPoly) -> RationalFactorization {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let (content, mut prim) = p.content_and_primitive();
    let mut roots: BTreeMap<BigRat, u32> = BTreeMap::new();

    while prim.constant_term().is_zero() && !prim.is_constant() {
        *roots.entry(BigRat::zero()).or_insert(0) += 1;
        prim = prim.exact_div(&IntPoly::var()).expect("N divides");
    }

    if prim.degree().unwrap_or(0) >= 1 {
        let ints = prim.integer_coeffs().expect("primitive part is integral");
        let lead = ints.last().unwrap().clone();
        let trail = ints[0].clone();
        // Cauchy bound on root magnitude.
        let bound = {
            let max_ratio = ints[..ints.len() - 1]
                .iter()
                .map(|c| BigRat::new(c.abs(), lead.abs()))
                .max()
                .unwrap_or_else(BigRat::zero);
            max_ratio + BigRat::one()
        };
        let qs = divisors(&lead);
        let ps = divisors(&trail);
        let mut candidates: Vec<BigRat> = Vec::new();
        for q in &qs {
            for pnum in &ps {
                let r = BigRat::new(pnum.clone(), q.clone());
                if r > bound {
                    continue;
                }
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
        candidates.sort();
        candidates.dedup();
        for r in candidates {
            loop {
                if prim.degree().unwrap_or(0) == 0 || !prim.eval(&r).is_zero() {
                    break;
                }
                let f = linear_from_root(&r);
                prim = prim.exact_div(&f).expect("root gives a factor");
                *roots.entry(r.clone()).or_insert(0) += 1;
            }
        }
    }

    // Keep content * Π factors * residual equal to p with every factor primitive.
    let (adj, residual) = prim.content_and_primitive();
    let mut content = content * adj;
    let mut linear_factors = Vec::new();
    for (r, m) in roots {
        let f = linear_from_root(&r);
        let (c, f) = f.content_and_primitive();
        for _ in 0..m {
            content *= &c;
        }
        linear_factors.push((f, m));
    }
    RationalFactorization {
        content,
        linear_factors,
        residual,
    }
}

/// Primitive `qN - p` vanishing at `p/q`.
fn linear_from_root(r: &BigRat) -> IntPoly {
    IntPoly::from_coeffs(vec![
        BigRat::from_integer(-r.numer().clone()),
        BigRat::from_integer(r.denom().clone()),
    ])
}
