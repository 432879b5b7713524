//! Gram blocks `X_C` of the symmetrized form, one per content pattern, and the
//! resulting determinant `det Sym_λ(B) = c(λ,N) · det(B)^{d(λ,N)·n/N}`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::combinat::{
    compositions_of, dimension_poly, kostka, ssyt_with_pattern, ContentPattern, Partition,
    TableauFrame,
};
use crate::exact::{binomial, det_bareiss, factorial, BigRat, IntPoly, SquareClassFormula};
use crate::par::Exec;
use crate::symmetrizer::{inner_product_i128, word_of_tableau, YoungSymmetrizer};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GramError {
    #[error("no tableaux of shape {shape} with pattern {pattern}")]
    NoTableaux {
        shape: Partition,
        pattern: ContentPattern,
    },
}

/// The reduced Gram matrix of `{e_λ v(t)}` over the tableaux `t` of one content
/// pattern, rows in [`ssyt_with_pattern`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramBlock {
    pub shape: Partition,
    pub pattern: ContentPattern,
    pub matrix: Vec<Vec<BigInt>>,
    pub det: BigInt,
}

impl GramBlock {
    pub fn size(&self) -> usize {
        self.matrix.len()
    }
}

pub fn gram_block(shape: &Partition, pattern: &ContentPattern) -> Result<GramBlock, GramError> {
    gram_block_with(
        &YoungSymmetrizer::for_shape(shape),
        pattern,
        Exec::Sequential,
    )
}

/// [`gram_block`] with a prebuilt symmetrizer; `exec` parallelizes the image
/// computation and the rows of the matrix.
pub fn gram_block_with(
    sym: &YoungSymmetrizer,
    pattern: &ContentPattern,
    exec: Exec,
) -> Result<GramBlock, GramError> {
    let frame: &TableauFrame = sym.frame();
    let shape = frame.shape().clone();
    let tableaux = ssyt_with_pattern(&shape, pattern);
    if tableaux.is_empty() {
        return Err(GramError::NoTableaux {
            shape,
            pattern: pattern.clone(),
        });
    }
    let images = exec.map(&tableaux, |t| {
        let w = word_of_tableau(frame, t).expect("tableau has the frame's shape");
        sym.apply(&w)
    });
    let rows: Vec<usize> = (0..images.len()).collect();
    let upper = exec.map(&rows, |&i| {
        (i..images.len())
            .map(|j| inner_product_i128(&images[i], &images[j]))
            .collect::<Vec<_>>()
    });
    let k = images.len();
    let mut matrix = vec![vec![BigInt::zero(); k]; k];
    for (i, row) in upper.iter().enumerate() {
        for (off, v) in row.iter().enumerate() {
            let j = i + off;
            matrix[i][j] = BigInt::from(*v);
            matrix[j][i] = BigInt::from(*v);
        }
    }
    let det = det_bareiss(&matrix);
    Ok(GramBlock {
        shape,
        pattern: pattern.clone(),
        matrix,
        det,
    })
}

#[derive(Clone, Debug)]
pub struct SymDetResult {
    pub shape: Partition,
    /// Blocks in [`compositions_of`] order; patterns with no tableaux are skipped.
    pub blocks: Vec<GramBlock>,
    /// `Π det(X_C)^{C(N,k)}` with exponents summed per prime but not reduced.
    pub c_unreduced: SquareClassFormula,
    /// Canonical square class of `c(λ,N)`.
    pub c_formula: SquareClassFormula,
    pub dimension: IntPoly,
    pub det_b_exponent: IntPoly,
}

impl SymDetResult {
    /// `c(λ,N) · det(B)^{d·n/N}`, reduced.
    pub fn det_formula(&self) -> SquareClassFormula {
        self.c_formula.mul(&SquareClassFormula::det_b_power(
            self.det_b_exponent.clone(),
        ))
    }

    pub fn block(&self, pattern: &ContentPattern) -> Option<&GramBlock> {
        self.blocks.iter().find(|b| &b.pattern == pattern)
    }
}

/// `d·n/N` as a polynomial.
pub fn det_b_exponent(shape: &Partition, dimension: &IntPoly) -> IntPoly {
    if shape.n() == 0 {
        return IntPoly::zero();
    }
    dimension
        .scale(&BigRat::from_integer(shape.n().into()))
        .exact_div(&IntPoly::var())
        .expect("d(λ,N) vanishes at N = 0")
}

pub fn symmetrization_determinant(shape: &Partition) -> SymDetResult {
    symmetrization_determinant_with(shape, Exec::default())
}

pub fn symmetrization_determinant_with(shape: &Partition, exec: Exec) -> SymDetResult {
    let sym = YoungSymmetrizer::for_shape(shape);
    let patterns: Vec<ContentPattern> = compositions_of(shape.n())
        .into_iter()
        .filter(|p| kostka(shape, p) > 0)
        .collect();
    // Blocks are independent; within a block the work is small enough that
    // the outer map is the one worth spreading.
    let blocks = exec.map(&patterns, |p| {
        gram_block_with(&sym, p, Exec::Sequential).expect("pattern has tableaux")
    });
    let mut c_unreduced = SquareClassFormula::one();
    for b in &blocks {
        assert!(b.det.is_positive(), "X_C is positive definite");
        let f = SquareClassFormula::from_integer_power(
            &BigRat::from_integer(b.det.clone()),
            &IntPoly::binomial(b.pattern.k()),
        )
        .expect("nonzero block determinant");
        c_unreduced = c_unreduced.mul(&f);
    }
    let dimension = dimension_poly(shape);
    let det_b_exponent = det_b_exponent(shape, &dimension);
    SymDetResult {
        shape: shape.clone(),
        c_formula: c_unreduced.reduced(),
        c_unreduced,
        blocks,
        dimension,
        det_b_exponent,
    }
}

fn int_power(base: BigInt, exponent: IntPoly) -> SquareClassFormula {
    SquareClassFormula::from_integer_power(&BigRat::from_integer(base), &exponent)
        .expect("positive base")
}

fn c_nk(k: i64) -> IntPoly {
    if k < 0 {
        IntPoly::zero()
    } else {
        IntPoly::binomial(k as usize)
    }
}

fn scaled(k: i64, p: IntPoly) -> IntPoly {
    p.scale(&BigRat::from_integer(k.into()))
}

fn as_i64(b: BigInt) -> i64 {
    i64::try_from(b).expect("small binomial")
}

/// Independent closed forms for `(n)`, `(1^n)`, `(2,1^{n-2})` and
/// `(3,1^{n-3})`, unreduced. `None` for any other shape.
pub fn closed_form_c(shape: &Partition) -> Option<SquareClassFormula> {
    let n = shape.n();
    if n == 0 {
        return None;
    }
    let parts = shape.parts();
    let ni = n as i64;
    let is_hook = parts[1..].iter().all(|&p| p == 1);
    if parts.len() == 1 {
        // Π_k Π_{compositions x of n into k parts} (n!/Π x_i!)^{C(N,k)}
        let mut out = SquareClassFormula::one();
        for comp in compositions_of(n) {
            let denom = comp
                .parts()
                .iter()
                .fold(BigInt::from(1), |acc, &x| acc * factorial(x));
            out = out.mul(&int_power(factorial(n) / denom, c_nk(comp.k() as i64)));
        }
        return Some(out);
    }
    if parts[0] == 1 {
        return Some(int_power(factorial(n), c_nk(ni)));
    }
    if !is_hook {
        return None;
    }
    match parts[0] {
        2 => {
            let e = scaled(ni - 1, &c_nk(ni) + &c_nk(ni - 1));
            Some(int_power(BigInt::from(n), c_nk(ni)).mul(&int_power(factorial(n - 1), e)))
        }
        3 => {
            let b = |a: i64, k: i64| as_i64(binomial(a, k));
            let x = &scaled(b(ni - 1, 2), &c_nk(ni - 2) + &c_nk(ni))
                + &scaled((ni - 1) * (ni - 2), c_nk(ni - 1));
            let y = &(&scaled(b(ni - 2, 2), c_nk(ni - 2))
                + &scaled((ni - 1) * (ni - 3), c_nk(ni - 1)))
                + &scaled(b(ni - 1, 2), c_nk(ni));
            let z = &scaled(ni - 1, c_nk(ni - 1)) + &scaled(ni - 2, c_nk(ni));
            Some(
                int_power(factorial(n - 2), x)
                    .mul(&int_power(BigInt::from(2), y))
                    .mul(&int_power(BigInt::from(n), z)),
            )
        }
        _ => None,
    }
}

/// Determinant of the block with all letters distinct for the hook
/// `(ℓ, 1^{n-ℓ})`: `((ℓ-1)!(n-ℓ+1)!)^{C(n-1,ℓ-1)} · n^{C(n-2,ℓ-2)}`.
pub fn hook_block_det(n: usize, ell: usize) -> BigInt {
    assert!(1 <= ell && ell <= n, "need 1 <= ell <= n");
    let (ni, li) = (n as i64, ell as i64);
    let base = factorial(ell - 1) * factorial(n - ell + 1);
    let e1 = u32::try_from(binomial(ni - 1, li - 1)).expect("small exponent");
    let e2 = u32::try_from(binomial(ni - 2, li - 2)).expect("small exponent");
    num_traits::pow::Pow::pow(&base, e1) * num_traits::pow::Pow::pow(&BigInt::from(n), e2)
}
