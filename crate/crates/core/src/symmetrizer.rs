//! Young symmetrizers acting on words (pure tensors of basis vectors) and the
//! content-reduced inner product of their images.
//!
//! A permutation `g` acts on positions: `(g·w)[i] = w[g⁻¹(i)]`. The element
//! `e = Σ_{σ∈G} Σ_{ρ∈H} sign(σ) σρ` is applied as "rows first, then signed
//! columns". Both groups are direct products of symmetric groups on the row
//! (resp. column) label sets, so each factor is handled independently.

use std::cmp::Ordering;

use num_bigint::BigInt;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use thiserror::Error;

use crate::combinat::{Partition, SemiStandardTableau, TableauFrame};

/// Letters at tensor positions `0..n`. Letters are positive.
pub type Word = SmallVec<[u8; 16]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetrizerError {
    #[error("tableau shape {tableau} does not match frame shape {frame}")]
    ShapeMismatch {
        tableau: Partition,
        frame: Partition,
    },
}

/// Position `i` of the word carries the entry of the box labelled `i`.
pub fn word_of_tableau(
    frame: &TableauFrame,
    t: &SemiStandardTableau,
) -> Result<Word, SymmetrizerError> {
    if &t.shape() != frame.shape() {
        return Err(SymmetrizerError::ShapeMismatch {
            tableau: t.shape(),
            frame: frame.shape().clone(),
        });
    }
    let mut w: Word = SmallVec::from_elem(0, frame.shape().n());
    for (labels, entries) in frame.rows().iter().zip(t.rows()) {
        for (&pos, &x) in labels.iter().zip(entries) {
            w[pos] = x;
        }
    }
    Ok(w)
}

/// A formal integer combination of words, sorted lexicographically, with no
/// zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SignedWordSum {
    terms: Vec<(Word, i64)>,
}

impl SignedWordSum {
    pub fn from_map(map: FxHashMap<Word, i64>) -> Self {
        let mut terms: Vec<(Word, i64)> = map.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        SignedWordSum { terms }
    }

    pub fn single(w: Word) -> Self {
        SignedWordSum {
            terms: vec![(w, 1)],
        }
    }

    pub fn terms(&self) -> &[(Word, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[u8]) -> i64 {
        self.terms
            .binary_search_by(|(u, _)| u.as_slice().cmp(w))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return SignedWordSum::default();
        }
        SignedWordSum {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }
}

/// Precomputed column permutations of a frame, used to apply `e_λ`.
#[derive(Clone, Debug)]
pub struct YoungSymmetrizer {
    frame: TableauFrame,
    /// Per column: all orderings of its positions, with sign.
    column_perms: Vec<Vec<(SmallVec<[u8; 16]>, i64)>>,
}

fn signed_permutations(k: usize) -> Vec<(SmallVec<[u8; 16]>, i64)> {
    let mut out = Vec::new();
    let mut p: SmallVec<[u8; 16]> = (0..k as u8).collect();
    // Lexicographic enumeration; the sign is tracked by counting inversions.
    loop {
        let inv = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        out.push((p.clone(), if inv % 2 == 0 { 1 } else { -1 }));
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| p[j] > p[i]).expect("successor");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

fn next_permutation(v: &mut [u8]) -> bool {
    let n = v.len();
    let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).expect("successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Distinct rearrangements of a multiset of letters, in lexicographic order.
fn multiset_arrangements(letters: &[u8]) -> Vec<SmallVec<[u8; 16]>> {
    let mut cur: SmallVec<[u8; 16]> = letters.iter().copied().collect();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

/// `Π m!` over letter multiplicities `m`: the stabilizer order of the row.
fn stabilizer_order(letters: &[u8]) -> i64 {
    let mut sorted: SmallVec<[u8; 16]> = letters.iter().copied().collect();
    sorted.sort_unstable();
    let mut total = 1i64;
    let mut run = 0i64;
    for i in 0..sorted.len() {
        run = if i > 0 && sorted[i] == sorted[i - 1] {
            run + 1
        } else {
            1
        };
        total *= run;
    }
    total
}

impl YoungSymmetrizer {
    pub fn new(frame: &TableauFrame) -> Self {
        let column_perms = frame
            .columns()
            .iter()
            .map(|c| signed_permutations(c.len()))
            .collect();
        YoungSymmetrizer {
            frame: frame.clone(),
            column_perms,
        }
    }

    pub fn for_shape(shape: &Partition) -> Self {
        Self::new(&TableauFrame::row_major(shape))
    }

    pub fn frame(&self) -> &TableauFrame {
        &self.frame
    }

    /// Row symmetrization: every distinct word in the `H`-orbit of `w`, with
    /// the number of row permutations producing it.
    fn row_orbit(&self, w: &[u8]) -> Vec<(Word, i64)> {
        let mut out: Vec<(Word, i64)> = vec![(w.iter().copied().collect(), 1)];
        for labels in self.frame.rows() {
            let letters: SmallVec<[u8; 16]> = labels.iter().map(|&p| w[p]).collect();
            let weight = stabilizer_order(&letters);
            let arrangements = multiset_arrangements(&letters);
            if arrangements.len() == 1 {
                for t in &mut out {
                    t.1 *= weight;
                }
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * arrangements.len());
            for (u, c) in &out {
                for arr in &arrangements {
                    let mut v = u.clone();
                    for (&p, &x) in labels.iter().zip(arr) {
                        v[p] = x;
                    }
                    next.push((v, c * weight));
                }
            }
            out = next;
        }
        out
    }

    fn add_column_orbit(&self, u: &[u8], coeff: i64, acc: &mut FxHashMap<Word, i64>) {
        let columns = self.frame.columns();
        // A repeated letter in a column is fixed by a transposition of sign -1.
        for col in columns {
            for (a, &p) in col.iter().enumerate() {
                if col[..a].iter().any(|&q| u[q] == u[p]) {
                    return;
                }
            }
        }
        let mut buf: Word = u.iter().copied().collect();
        self.columns_rec(0, u, &mut buf, coeff, acc);
    }

    fn columns_rec(
        &self,
        c: usize,
        u: &[u8],
        buf: &mut Word,
        coeff: i64,
        acc: &mut FxHashMap<Word, i64>,
    ) {
        let columns = self.frame.columns();
        if c == columns.len() {
            *acc.entry(buf.clone()).or_insert(0) += coeff;
            return;
        }
        let col = &columns[c];
        if col.len() == 1 {
            return self.columns_rec(c + 1, u, buf, coeff, acc);
        }
        for (perm, sign) in &self.column_perms[c] {
            // g maps col[i] to col[perm[i]]: result[g(j)] = u[j].
            for (i, &p) in col.iter().enumerate() {
                buf[col[perm[i] as usize]] = u[p];
            }
            self.columns_rec(c + 1, u, buf, coeff * sign, acc);
        }
        for &p in col {
            buf[p] = u[p];
        }
    }

    /// `e_λ · w`.
    pub fn apply(&self, w: &[u8]) -> SignedWordSum {
        let mut acc = FxHashMap::default();
        for (u, c) in self.row_orbit(w) {
            self.add_column_orbit(&u, c, &mut acc);
        }
        SignedWordSum::from_map(acc)
    }

    /// `e_λ` applied linearly to a combination of words.
    pub fn apply_sum(&self, s: &SignedWordSum) -> SignedWordSum {
        let mut acc: FxHashMap<Word, i64> = FxHashMap::default();
        for (w, c) in s.terms() {
            for (u, d) in self.apply(w).terms {
                *acc.entry(u).or_insert(0) += c * d;
            }
        }
        SignedWordSum::from_map(acc)
    }
}

/// `e_λ · w` for the row-major frame of `frame`'s shape.
pub fn apply_symmetrizer(frame: &TableauFrame, w: &[u8]) -> SignedWordSum {
    YoungSymmetrizer::new(frame).apply(w)
}

/// `Σ_w u(w)·v(w)`: the tensor form with every basis vector of norm one.
pub fn inner_product_i128(u: &SignedWordSum, v: &SignedWordSum) -> i128 {
    let (a, b) = (u.terms(), v.terms());
    let (mut i, mut j) = (0, 0);
    let mut acc = 0i128;
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                acc += a[i].1 as i128 * b[j].1 as i128;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

pub fn inner_product_reduced(u: &SignedWordSum, v: &SignedWordSum) -> BigInt {
    BigInt::from(inner_product_i128(u, v))
}
