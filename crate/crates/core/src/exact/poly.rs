use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::BigRat;

/// Univariate polynomial in the formal variable `N` with rational coefficients.
///
/// Coefficients are stored in ascending degree and trimmed, so the zero
/// polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IntPoly {
    coeffs: Vec<BigRat>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRat::from_integer(BigInt::from(c)))
    }

    /// The polynomial `N`.
    pub fn var() -> Self {
        Self::from_coeffs(vec![BigRat::zero(), BigRat::one()])
    }

    /// `N + a`.
    pub fn linear(a: i64) -> Self {
        Self::from_coeffs(vec![BigRat::from_integer(a.into()), BigRat::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRat::from_integer(c.into()))
                .collect(),
        )
    }

    /// Binomial polynomial `C(N + shift, k) = (N+shift)(N+shift-1)...(N+shift-k+1) / k!`.
    pub fn binomial_shifted(shift: i64, k: usize) -> Self {
        let mut p = Self::one();
        let mut fact = BigInt::one();
        for i in 0..k {
            p = &p * &Self::linear(shift - i as i64);
            fact *= BigInt::from(i + 1);
        }
        p.scale(&BigRat::new(BigInt::one(), fact))
    }

    /// `C(N, k)`.
    pub fn binomial(k: usize) -> Self {
        Self::binomial_shifted(0, k)
    }

    /// Builds `Σ c_k C(N,k)`.
    pub fn from_binomial_basis(coeffs: &[BigInt]) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p = &p + &Self::binomial(k).scale(&BigRat::from_integer(c.clone()));
            }
        }
        p
    }

    /// Coordinates in the basis `C(N,0), C(N,1), ...`, obtained from forward
    /// differences at 0. Returns `None` if the polynomial is not integer valued.
    pub fn to_binomial_basis(&self) -> Option<Vec<BigInt>> {
        let Some(deg) = self.degree() else {
            return Some(Vec::new());
        };
        let mut values: Vec<BigRat> = (0..=deg as i64).map(|x| self.eval_int(x)).collect();
        let mut out = Vec::with_capacity(deg + 1);
        for _ in 0..=deg {
            let head = values[0].clone();
            if !head.is_integer() {
                return None;
            }
            out.push(head.to_integer());
            values = values.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        Some(out)
    }

    pub fn is_integer_valued(&self) -> bool {
        self.to_binomial_basis().is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn leading(&self) -> BigRat {
        self.coeffs.last().cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn constant_term(&self) -> BigRat {
        self.coeff(0)
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> BigRat {
        self.eval(&BigRat::from_integer(x.into()))
    }

    /// Value at an integer argument, required to be an integer.
    pub fn eval_integer(&self, x: i64) -> Option<BigInt> {
        let v = self.eval_int(x);
        v.is_integer().then(|| v.to_integer())
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Polynomial long division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRat::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] / &lead;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = &rem[i + j] - &q * d;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem))
    }

    /// Exact quotient; `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Splits into `(content, primitive)` where the primitive part has
    /// coprime integer coefficients and a positive leading coefficient.
    pub fn content_and_primitive(&self) -> (BigRat, IntPoly) {
        if self.is_zero() {
            return (BigRat::zero(), IntPoly::zero());
        }
        let den_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRat::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let content = BigRat::new(g.clone(), den_lcm);
        let prim = IntPoly::from_coeffs(
            ints.into_iter()
                .map(|c| BigRat::from_integer(c / &g))
                .collect(),
        );
        (content, prim)
    }

    /// Integer coefficients, if every coefficient is integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// For a linear polynomial `qN - p`, the root `p/q`.
    pub fn linear_root(&self) -> Option<BigRat> {
        (self.degree() == Some(1)).then(|| -(self.coeff(0) / self.coeff(1)))
    }

    /// Expanded rendering, e.g. `12*N^2 - 32`.
    pub fn expanded_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => "N".to_string(),
                _ => format!("N^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&rat_string(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", rat_string(&mag), mono));
            }
        }
        out
    }

    pub fn to_i64_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer().to_i64()).flatten())
            .collect()
    }
}

pub(crate) fn rat_string(r: &BigRat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn parse_rat(s: &str) -> Option<BigRat> {
    match s.split_once('/') {
        Some((a, b)) => {
            let d: BigInt = b.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRat::new(a.trim().parse().ok()?, d))
        }
        None => Some(BigRat::from_integer(s.trim().parse().ok()?)),
    }
}

impl From<IntPoly> for Vec<String> {
    fn from(p: IntPoly) -> Self {
        p.coeffs.iter().map(rat_string).collect()
    }
}

impl TryFrom<Vec<String>> for IntPoly {
    type Error = String;

    fn try_from(v: Vec<String>) -> Result<Self, Self::Error> {
        v.iter()
            .map(|s| parse_rat(s).ok_or_else(|| format!("bad rational coefficient {s:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map(IntPoly::from_coeffs)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self.expanded_string())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.expanded_string())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        let c3 = IntPoly::binomial(3);
        assert_eq!(c3.eval_integer(5), Some(BigInt::from(10)));
        assert_eq!(c3.eval_integer(2), Some(BigInt::from(0)));
        let shifted = IntPoly::binomial_shifted(6, 7);
        assert_eq!(shifted.eval_integer(1), Some(BigInt::from(1)));
        assert_eq!(shifted.eval_integer(3), Some(BigInt::from(36)));
    }

    #[test]
    fn binomial_basis_roundtrip() {
        let p = IntPoly::from_ints(&[-2, 0, 1]);
        let b = p.to_binomial_basis().unwrap();
        assert_eq!(b, vec![BigInt::from(-2), BigInt::from(1), BigInt::from(2)]);
        assert_eq!(IntPoly::from_binomial_basis(&b), p);
        let half = IntPoly::var().scale(&BigRat::new(1.into(), 2.into()));
        assert!(half.to_binomial_basis().is_none());
    }

    #[test]
    fn division() {
        let p = IntPoly::from_ints(&[-1, 0, 1]);
        let q = p.exact_div(&IntPoly::linear(1)).unwrap();
        assert_eq!(q, IntPoly::linear(-1));
        assert!(p.exact_div(&IntPoly::linear(2)).is_none());
    }

    #[test]
    fn content_split() {
        let p = IntPoly::from_ints(&[-12, 0, 12]);
        let (c, prim) = p.content_and_primitive();
        assert_eq!(c, BigRat::from_integer(12.into()));
        assert_eq!(prim, IntPoly::from_ints(&[-1, 0, 1]));
        let neg = IntPoly::from_ints(&[4, -2]);
        let (c, prim) = neg.content_and_primitive();
        assert_eq!(c, BigRat::from_integer((-2).into()));
        assert_eq!(prim, IntPoly::from_ints(&[-2, 1]));
    }

    #[test]
    fn rendering() {
        assert_eq!(IntPoly::from_ints(&[-32, 0, 12]).to_string(), "12*N^2 - 32");
        assert_eq!(IntPoly::from_ints(&[0, -1]).to_string(), "-N");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
