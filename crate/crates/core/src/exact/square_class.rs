use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{factorize, poly_factor_rational, squarefree_part, BigRat, ExactError, IntPoly};

/// Base of one factor of a [`SquareClassFormula`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    /// A prime, or `-1` for the sign.
    Int(BigInt),
    /// A primitive polynomial in `N`; linear unless the formula is flagged unreduced.
    Poly(IntPoly),
}

impl Base {
    fn rank(&self) -> u8 {
        match self {
            Base::Int(_) => 0,
            Base::Poly(_) => 1,
        }
    }

    pub fn value_at(&self, n: i64) -> BigRat {
        match self {
            Base::Int(v) => BigRat::from_integer(v.clone()),
            Base::Poly(p) => p.eval_int(n),
        }
    }
}

impl Ord for Base {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Base::Int(a), Base::Int(b)) => a.cmp(b),
            (Base::Poly(a), Base::Poly(b)) => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| a.coeffs().cmp(b.coeffs())),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Base {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A product `Π base^exponent(N) · det(B)^detB_exponent(N)`.
///
/// Factors are kept sorted by base with no repeats and no zero exponents, so
/// structural equality of two reduced formulas is equality of square classes.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SquareClassFormula {
    factors: Vec<(Base, IntPoly)>,
    det_b_exponent: IntPoly,
    unreduced: bool,
}

impl SquareClassFormula {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn det_b_power(exponent: IntPoly) -> Self {
        SquareClassFormula {
            det_b_exponent: exponent,
            ..Self::default()
        }
    }

    /// `x^exponent`, with `x` split into primes (and `-1` when negative).
    pub fn from_integer_power(x: &BigRat, exponent: &IntPoly) -> Result<Self, ExactError> {
        if x.is_zero() {
            return Err(ExactError::ZeroSquareClass);
        }
        let mut map: BTreeMap<Base, IntPoly> = BTreeMap::new();
        if x.is_negative() {
            map.insert(Base::Int(-BigInt::one()), exponent.clone());
        }
        for (p, e) in factorize(x.numer()) {
            let add = exponent.scale(&BigRat::from_integer(e.into()));
            accumulate(&mut map, Base::Int(p), &add);
        }
        for (p, e) in factorize(x.denom()) {
            let add = exponent.scale(&BigRat::from_integer(-BigInt::from(e)));
            accumulate(&mut map, Base::Int(p), &add);
        }
        Ok(Self::from_map(map, IntPoly::zero(), false))
    }

    pub fn from_base(base: Base, exponent: IntPoly) -> Self {
        let mut map = BTreeMap::new();
        accumulate(&mut map, base, &exponent);
        Self::from_map(map, IntPoly::zero(), false)
    }

    /// Square-class formula of a nonzero polynomial value: content primes
    /// plus rational linear factors. A residual without rational roots is
    /// kept as a single polynomial base and flags the formula unreduced.
    pub fn from_polynomial(p: &IntPoly) -> Result<Self, ExactError> {
        if p.is_zero() {
            return Err(ExactError::ZeroSquareClass);
        }
        let fac = poly_factor_rational(p);
        let mut out = Self::from_integer_power(&fac.content, &IntPoly::one())?;
        for (f, m) in fac.linear_factors {
            out = out.mul(&Self::from_base(Base::Poly(f), IntPoly::from_int(m as i64)));
        }
        if !fac.residual.is_constant() {
            let mut r = Self::from_base(Base::Poly(fac.residual), IntPoly::one());
            r.unreduced = true;
            out = out.mul(&r);
        }
        Ok(out)
    }

    fn from_map(map: BTreeMap<Base, IntPoly>, det_b_exponent: IntPoly, unreduced: bool) -> Self {
        SquareClassFormula {
            factors: map.into_iter().filter(|(_, e)| !e.is_zero()).collect(),
            det_b_exponent,
            unreduced,
        }
    }

    pub fn factors(&self) -> &[(Base, IntPoly)] {
        &self.factors
    }

    pub fn det_b_exponent(&self) -> &IntPoly {
        &self.det_b_exponent
    }

    /// True when some polynomial base did not split into rational linear factors.
    pub fn is_unreduced(&self) -> bool {
        self.unreduced
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty() && self.det_b_exponent.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut map: BTreeMap<Base, IntPoly> = self.factors.iter().cloned().collect();
        for (b, e) in &other.factors {
            accumulate(&mut map, b.clone(), e);
        }
        Self::from_map(
            map,
            &self.det_b_exponent + &other.det_b_exponent,
            self.unreduced || other.unreduced,
        )
    }

    /// Raises every exponent (including that of `det(B)`) by the factor `e`.
    pub fn pow(&self, e: &IntPoly) -> Self {
        let map = self
            .factors
            .iter()
            .map(|(b, x)| (b.clone(), x * e))
            .collect();
        Self::from_map(map, &self.det_b_exponent * e, self.unreduced)
    }

    pub fn inverse(&self) -> Self {
        self.pow(&IntPoly::from_int(-1))
    }

    /// Reduces every exponent except that of `det(B)` modulo 2 in the
    /// binomial basis `C(N,k)`; this is the canonical square-class form.
    pub fn reduced(&self) -> Self {
        let map = self
            .factors
            .iter()
            .map(|(b, e)| (b.clone(), reduce_exponent(e)))
            .collect();
        Self::from_map(map, self.det_b_exponent.clone(), self.unreduced)
    }

    /// For integer bases, the set of `k` with odd coefficient of `C(N,k)` in
    /// the exponent. Meaningful on reduced formulas.
    pub fn prime_binomial_sets(&self) -> BTreeMap<BigInt, BTreeSet<usize>> {
        self.factors
            .iter()
            .filter_map(|(b, e)| match b {
                Base::Int(p) => {
                    let ks = e
                        .to_binomial_basis()
                        .unwrap_or_default()
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| c.is_odd())
                        .map(|(k, _)| k)
                        .collect::<BTreeSet<_>>();
                    Some((p.clone(), ks))
                }
                Base::Poly(_) => None,
            })
            .filter(|(_, ks)| !ks.is_empty())
            .collect()
    }

    /// Drops the `det(B)` part.
    pub fn without_det_b(&self) -> Self {
        SquareClassFormula {
            det_b_exponent: IntPoly::zero(),
            ..self.clone()
        }
    }

    /// Squarefree representative of the value at a concrete `N`, with
    /// `det(B)` specialised to `det_b`.
    pub fn evaluate(&self, n: i64, det_b: &BigRat) -> Result<BigInt, ExactError> {
        let mut acc = BigRat::one();
        let mut take = |value: BigRat, exponent: &IntPoly| -> Result<(), ExactError> {
            let e = exponent
                .eval_integer(n)
                .ok_or(ExactError::NonIntegerExponent)?;
            if e.is_zero() {
                return Ok(());
            }
            if value.is_zero() {
                return Err(ExactError::ZeroSquareClass);
            }
            if e.is_odd() {
                acc *= value;
            }
            Ok(())
        };
        for (b, e) in &self.factors {
            take(b.value_at(n), e)?;
        }
        take(det_b.clone(), &self.det_b_exponent)?;
        Ok(squarefree_part(&acc)?.0)
    }
}

fn accumulate(map: &mut BTreeMap<Base, IntPoly>, base: Base, e: &IntPoly) {
    let entry = map.entry(base).or_insert_with(IntPoly::zero);
    *entry = &*entry + e;
}

fn reduce_exponent(e: &IntPoly) -> IntPoly {
    match e.to_binomial_basis() {
        Some(coeffs) => {
            let parity: Vec<BigInt> = coeffs
                .iter()
                .map(|c| {
                    if c.is_odd() {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect();
            IntPoly::from_binomial_basis(&parity)
        }
        None => e.clone(),
    }
}
