//! Partitions, compositions, tableau frames and semistandard tableaux.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{factorial, BigRat, IntPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeError {
    #[error("malformed partition {0:?}")]
    Malformed(String),
    #[error("partition parts must be positive and non-increasing: {0:?}")]
    NotPartition(String),
}

/// A partition of `n`: non-increasing positive parts. The empty partition
/// of 0 is allowed (it labels the trivial constituent).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, ShapeError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(ShapeError::NotPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Transposed partition.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width)
            .map(|c| self.parts.iter().filter(|&&r| r > c).count())
            .collect();
        Partition { parts }
    }

    /// `(1^n)`.
    pub fn column(n: usize) -> Partition {
        Partition { parts: vec![1; n] }
    }

    /// `(n)`.
    pub fn row(n: usize) -> Partition {
        Partition {
            parts: if n == 0 { vec![] } else { vec![n] },
        }
    }

    /// `(a, 1^(n-a))`.
    pub fn hook(n: usize, arm: usize) -> Partition {
        let mut parts = vec![arm];
        parts.extend(std::iter::repeat_n(1, n - arm));
        Partition { parts }
    }

    /// Compact notation with repeated parts as powers: `(2^2,1^2)`.
    pub fn exponent_notation(&self) -> String {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let mut j = i;
            while j < self.parts.len() && self.parts[j] == p {
                j += 1;
            }
            if j - i == 1 {
                out.push(p.to_string());
            } else {
                out.push(format!("{p}^{}", j - i));
            }
            i = j;
        }
        format!("({})", out.join(","))
    }

    /// Comma form without parentheses: `3,1,1`.
    pub fn comma(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.comma())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = ShapeError;

    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Parses `3,1,1`, `3,1^2`, `(3,1^2)`; the empty string or `()` is the
/// empty partition.
impl FromStr for Partition {
    type Err = ShapeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim();
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body)
            .trim();
        if body.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in body.split(',') {
            let tok = tok.trim();
            let (part, reps) = match tok.split_once('^') {
                Some((p, r)) => (p.trim(), r.trim()),
                None => (tok, "1"),
            };
            let part: usize = part.parse().map_err(|_| ShapeError::Malformed(s.into()))?;
            let reps: usize = reps.parse().map_err(|_| ShapeError::Malformed(s.into()))?;
            if reps == 0 {
                return Err(ShapeError::Malformed(s.into()));
            }
            parts.extend(std::iter::repeat_n(part, reps));
        }
        Partition::new(parts).map_err(|_| ShapeError::NotPartition(s.into()))
    }
}

/// An ordered composition of `n`; as a content pattern it lists the
/// multiplicities of the distinct letters in increasing letter order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    parts: Vec<usize>,
}

pub type ContentPattern = Composition;

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self, ShapeError> {
        if parts.contains(&0) {
            return Err(ShapeError::Malformed(format!("{parts:?}")));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of distinct letters.
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Pattern as a word over `a, b, c, ...`: `(2,1,1)` is `a^2bc`.
    pub fn letters(&self) -> String {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let c = (b'a' + i as u8) as char;
                if m == 1 {
                    c.to_string()
                } else {
                    format!("{c}^{m}")
                }
            })
            .collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Composition {
    type Err = ShapeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| ShapeError::Malformed(s.into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Composition::new(parts)
    }
}

/// All partitions of `n` in lexicographically decreasing order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All compositions of `n`, grouped by length `k = 1..n`, each group in
/// lexicographically decreasing order.
pub fn compositions_of(n: usize) -> Vec<Composition> {
    fn rec(rem: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if slots == 0 {
            if rem == 0 {
                out.push(Composition { parts: cur.clone() });
            }
            return;
        }
        if rem < slots {
            return;
        }
        for p in (1..=rem - (slots - 1)).rev() {
            cur.push(p);
            rec(rem - p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for k in 1..=n {
        rec(n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// A Young tableau labelling the boxes of a shape by positions `0..n`
/// row by row, with its row sets and column sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauFrame {
    shape: Partition,
    rows: Vec<Vec<usize>>,
    columns: Vec<Vec<usize>>,
}

impl TableauFrame {
    pub fn row_major(shape: &Partition) -> Self {
        let mut rows = Vec::with_capacity(shape.len());
        let mut next = 0;
        for &len in shape.parts() {
            rows.push((next..next + len).collect::<Vec<_>>());
            next += len;
        }
        let width = shape.parts().first().copied().unwrap_or(0);
        let columns = (0..width)
            .map(|c| rows.iter().filter(|r| r.len() > c).map(|r| r[c]).collect())
            .collect();
        TableauFrame {
            shape: shape.clone(),
            rows,
            columns,
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// Position labels of the boxes in each row (horizontal partition).
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Position labels of the boxes in each column (vertical partition).
    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    /// Label of box `(row, col)`, zero based.
    pub fn label(&self, row: usize, col: usize) -> usize {
        self.rows[row][col]
    }
}

/// A filling of a shape with non-decreasing rows and strictly increasing
/// columns. Letters start at 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemiStandardTableau {
    rows: Vec<Vec<u8>>,
}

impl SemiStandardTableau {
    pub fn from_rows(rows: Vec<Vec<u8>>) -> Option<Self> {
        let t = SemiStandardTableau { rows };
        t.is_semistandard().then_some(t)
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition {
            parts: self.rows.iter().map(|r| r.len()).collect(),
        }
    }

    /// Entries read row by row.
    pub fn reading(&self) -> Vec<u8> {
        self.rows.iter().flatten().copied().collect()
    }

    fn is_semistandard(&self) -> bool {
        let shape_ok = self.rows.iter().all(|r| !r.is_empty())
            && self.rows.windows(2).all(|w| w[0].len() >= w[1].len());
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(lo, hi)| hi < lo));
        shape_ok && rows_ok && cols_ok
    }
}

impl fmt::Debug for SemiStandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

/// Fills `shape` letter by letter; letter `i+1` occupies a horizontal strip
/// of size `mults[i]`. Calls `visit` on every completed filling.
fn fill_strips(shape: &[usize], mults: &[usize], visit: &mut dyn FnMut(&[Vec<u8>])) {
    fn place(
        shape: &[usize],
        mults: &[usize],
        letter: usize,
        filled: &mut Vec<usize>,
        rows: &mut Vec<Vec<u8>>,
        visit: &mut dyn FnMut(&[Vec<u8>]),
    ) {
        if letter == mults.len() {
            if filled.iter().zip(shape).all(|(a, b)| a == b) {
                visit(rows);
            }
            return;
        }
        // Choose how many boxes of this letter go into each row, bottom row first
        // is irrelevant; recurse row by row.
        #[allow(clippy::too_many_arguments)]
        fn strip(
            shape: &[usize],
            mults: &[usize],
            letter: usize,
            row: usize,
            left: usize,
            before: &[usize],
            filled: &mut Vec<usize>,
            rows: &mut Vec<Vec<u8>>,
            visit: &mut dyn FnMut(&[Vec<u8>]),
        ) {
            if row == shape.len() {
                if left == 0 {
                    place(shape, mults, letter + 1, filled, rows, visit);
                }
                return;
            }
            let cap = if row == 0 {
                shape[0]
            } else {
                shape[row].min(before[row - 1])
            };
            let cur = filled[row];
            let max_add = cap.saturating_sub(cur).min(left);
            for add in 0..=max_add {
                filled[row] += add;
                rows[row].extend(std::iter::repeat_n((letter + 1) as u8, add));
                strip(
                    shape,
                    mults,
                    letter,
                    row + 1,
                    left - add,
                    before,
                    filled,
                    rows,
                    visit,
                );
                let l = rows[row].len();
                rows[row].truncate(l - add);
                filled[row] -= add;
            }
        }
        let before = filled.clone();
        strip(
            shape,
            mults,
            letter,
            0,
            mults[letter],
            &before,
            filled,
            rows,
            visit,
        );
    }
    let mut filled = vec![0; shape.len()];
    let mut rows = vec![Vec::new(); shape.len()];
    place(shape, mults, 0, &mut filled, &mut rows, visit);
}

/// Semistandard tableaux of `shape` using letter `i` exactly `pattern[i-1]`
/// times, sorted by their row-major reading.
pub fn ssyt_with_pattern(shape: &Partition, pattern: &ContentPattern) -> Vec<SemiStandardTableau> {
    if pattern.n() != shape.n() {
        return Vec::new();
    }
    let mut out = Vec::new();
    fill_strips(shape.parts(), pattern.parts(), &mut |rows| {
        out.push(SemiStandardTableau {
            rows: rows.to_vec(),
        })
    });
    out.sort_by_key(|t| t.reading());
    out
}

/// Kostka number `K(shape, pattern)`.
pub fn kostka(shape: &Partition, pattern: &ContentPattern) -> usize {
    if pattern.n() != shape.n() {
        return 0;
    }
    let mut count = 0;
    fill_strips(shape.parts(), pattern.parts(), &mut |_| count += 1);
    count
}

/// All `N`-semistandard tableaux of `shape` (entries in `1..=dim`).
pub fn ssyt_bounded(shape: &Partition, dim: usize) -> Vec<SemiStandardTableau> {
    // Generate via weak compositions: letters may be absent.
    fn rec(
        shape: &[usize],
        dim: usize,
        letter: usize,
        filled: &mut Vec<usize>,
        rows: &mut Vec<Vec<u8>>,
        out: &mut Vec<SemiStandardTableau>,
    ) {
        if filled.iter().zip(shape).all(|(a, b)| a == b) {
            out.push(SemiStandardTableau { rows: rows.clone() });
            return;
        }
        if letter > dim {
            return;
        }
        let before = filled.clone();
        #[allow(clippy::too_many_arguments)]
        fn strip(
            shape: &[usize],
            dim: usize,
            letter: usize,
            row: usize,
            before: &[usize],
            filled: &mut Vec<usize>,
            rows: &mut Vec<Vec<u8>>,
            out: &mut Vec<SemiStandardTableau>,
        ) {
            if row == shape.len() {
                rec(shape, dim, letter + 1, filled, rows, out);
                return;
            }
            let cap = if row == 0 {
                shape[0]
            } else {
                shape[row].min(before[row - 1])
            };
            let cur = filled[row];
            for add in 0..=cap.saturating_sub(cur) {
                filled[row] += add;
                rows[row].extend(std::iter::repeat_n(letter as u8, add));
                strip(shape, dim, letter, row + 1, before, filled, rows, out);
                let l = rows[row].len();
                rows[row].truncate(l - add);
                filled[row] -= add;
            }
        }
        strip(shape, dim, letter, 0, &before, filled, rows, out);
    }
    let mut out = Vec::new();
    let mut filled = vec![0; shape.len()];
    let mut rows = vec![Vec::new(); shape.len()];
    rec(shape.parts(), dim, 1, &mut filled, &mut rows, &mut out);
    // A tableau is reached once per trailing run of unused letters; dedupe.
    out.sort();
    out.dedup();
    out
}

/// `d(λ, N) = Σ_k (Σ_{patterns of length k} K(λ, pattern)) · C(N, k)`.
pub fn dimension_poly(shape: &Partition) -> IntPoly {
    let n = shape.n();
    if n == 0 {
        return IntPoly::one();
    }
    let mut per_k = vec![0usize; n + 1];
    for comp in compositions_of(n) {
        per_k[comp.k()] += kostka(shape, &comp);
    }
    per_k
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .fold(IntPoly::zero(), |acc, (k, &c)| {
            &acc + &IntPoly::binomial(k).scale(&BigRat::from_integer(BigInt::from(c)))
        })
}

/// Number of standard Young tableaux, by the hook length formula.
pub fn standard_tableau_count(shape: &Partition) -> BigInt {
    let conj = shape.conjugate();
    let mut hooks = BigInt::from(1);
    for (r, &len) in shape.parts().iter().enumerate() {
        for c in 0..len {
            let arm = len - c - 1;
            let leg = conj.parts()[c] - r - 1;
            hooks *= BigInt::from(arm + leg + 1);
        }
    }
    factorial(shape.n()) / hooks
}

/// Littlewood-Richardson coefficient `c^λ_{μν}`: skew tableaux of shape λ/μ
/// and content ν whose right-to-left, top-to-bottom reading is a lattice word.
pub fn littlewood_richardson(lambda: &Partition, mu: &Partition, nu: &Partition) -> usize {
    if lambda.n() != mu.n() + nu.n() || mu.len() > lambda.len() {
        return 0;
    }
    let inner = |r: usize| mu.parts().get(r).copied().unwrap_or(0);
    if (0..lambda.len()).any(|r| inner(r) > lambda.parts()[r]) {
        return 0;
    }
    let cells: Vec<(usize, usize)> = (0..lambda.len())
        .flat_map(|r| (inner(r)..lambda.parts()[r]).rev().map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<u8>> = lambda.parts().iter().map(|&l| vec![0; l]).collect();
    let mut count = vec![0usize; nu.len() + 1];
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        inner: &dyn Fn(usize) -> usize,
        nu: &[usize],
        grid: &mut Vec<Vec<u8>>,
        count: &mut Vec<usize>,
    ) -> usize {
        let Some(&(r, c)) = cells.get(idx) else {
            return 1;
        };
        let right = grid[r].get(c + 1).copied().filter(|&x| x > 0);
        let above = (r > 0 && c >= inner(r - 1)).then(|| grid[r - 1][c]);
        let mut total = 0;
        for v in 1..=nu.len() as u8 {
            let vi = v as usize;
            if right.is_some_and(|x| v > x) || above.is_some_and(|x| v <= x) {
                continue;
            }
            if count[vi] + 1 > nu[vi - 1] || (vi > 1 && count[vi] + 1 > count[vi - 1]) {
                continue;
            }
            count[vi] += 1;
            grid[r][c] = v;
            total += rec(idx + 1, cells, inner, nu, grid, count);
            grid[r][c] = 0;
            count[vi] -= 1;
        }
        total
    }
    rec(0, &cells, &inner, nu.parts(), &mut grid, &mut count)
}

/// Multiplicity of the orthogonal constituent `γ` in `λ` by Littlewood's
/// restriction rule: `Σ_{δ even} c^λ_{δγ}`. Exact for large `N`.
pub fn littlewood_multiplicity(lambda: &Partition, gamma: &Partition) -> usize {
    if gamma.n() > lambda.n() || (lambda.n() - gamma.n()) % 2 == 1 {
        return 0;
    }
    partitions_of(lambda.n() - gamma.n())
        .iter()
        .filter(|d| d.parts().iter().all(|p| p % 2 == 0))
        .map(|d| littlewood_richardson(lambda, d, gamma))
        .sum()
}
