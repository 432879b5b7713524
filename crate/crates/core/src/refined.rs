//! Refined symmetrizations for the orthogonal group.
//!
//! Everything concrete happens in the orthonormal model: `V` has basis
//! `v_1..v_N` with `B(v_i, v_j) = δ_ij`, so a tensor is an integer combination
//! of words and the tensor form is the coefficient dot product. The constants
//! `c(λ,γ)` are polynomials in `N`, recovered by sampling and interpolation.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinat::{
    dimension_poly, littlewood_multiplicity, partitions_of, Partition, TableauFrame,
};
use crate::exact::{
    det_bareiss, det_poly, interpolate, BigRat, ExactError, IntPoly, SquareClassFormula,
};
use crate::gram::symmetrization_determinant_with;
use crate::par::Exec;
use crate::symmetrizer::{inner_product_i128, SignedWordSum, Word, YoungSymmetrizer};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RefinedError {
    #[error("positions ({i},{j}) out of range for degree {degree}")]
    PositionOutOfRange { i: usize, j: usize, degree: usize },
    #[error("ambient too small: N = {dim} < n = {n}")]
    AmbientTooSmall { n: usize, dim: usize },
    #[error("invalid embedding chain: {0}")]
    BadChain(String),
    #[error("{gamma} is not a partition of {n} minus a positive even number")]
    BadConstituent { n: usize, gamma: Partition },
    #[error("coefficient overflow")]
    Overflow,
    #[error("unsupported: n = {0} > 7")]
    TooLarge(usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A tensor in `⊗^degree V`, `dim = N`, as a sparse integer combination of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteTensor {
    degree: usize,
    dim: usize,
    terms: SignedWordSum,
}

impl ConcreteTensor {
    pub fn new(degree: usize, dim: usize, terms: SignedWordSum) -> Self {
        debug_assert!(terms
            .terms()
            .iter()
            .all(|(w, _)| w.len() == degree && w.iter().all(|&x| x >= 1 && x as usize <= dim)));
        ConcreteTensor { degree, dim, terms }
    }

    pub fn from_word(dim: usize, word: &[u8]) -> Self {
        Self::new(
            word.len(),
            dim,
            SignedWordSum::single(word.iter().copied().collect()),
        )
    }

    /// The scalar `1` in `⊗^0 V`.
    pub fn unit(dim: usize) -> Self {
        Self::new(0, dim, SignedWordSum::single(Word::new()))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &SignedWordSum {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.degree, self.dim, self.terms.scale(k))
    }

    /// `⊗B(self, other)` in the orthonormal model.
    pub fn form(&self, other: &Self) -> i128 {
        inner_product_i128(&self.terms, &other.terms)
    }
}

fn add_checked(acc: &mut FxHashMap<Word, i64>, w: Word, c: i64) -> Result<(), RefinedError> {
    let slot = acc.entry(w).or_insert(0);
    *slot = slot.checked_add(c).ok_or(RefinedError::Overflow)?;
    Ok(())
}

/// `φ_ij`: inserts `Σ_k v_k ⊗ v_k` at positions `i < j` (1-based, in the result).
pub fn phi_insert(t: &ConcreteTensor, i: usize, j: usize) -> Result<ConcreteTensor, RefinedError> {
    let degree = t.degree + 2;
    if !(1 <= i && i < j && j <= degree) {
        return Err(RefinedError::PositionOutOfRange { i, j, degree });
    }
    let mut acc = FxHashMap::default();
    for (w, c) in t.terms.terms() {
        for k in 1..=t.dim as u8 {
            let mut out: Word = w.clone();
            out.insert(i - 1, k);
            out.insert(j - 1, k);
            add_checked(&mut acc, out, *c)?;
        }
    }
    Ok(ConcreteTensor::new(
        degree,
        t.dim,
        SignedWordSum::from_map(acc),
    ))
}

/// `π_ij`: evaluates `B` at positions `i < j` (1-based) and drops them.
pub fn pi_contract(t: &ConcreteTensor, i: usize, j: usize) -> Result<ConcreteTensor, RefinedError> {
    if !(1 <= i && i < j && j <= t.degree) {
        return Err(RefinedError::PositionOutOfRange {
            i,
            j,
            degree: t.degree,
        });
    }
    let mut acc = FxHashMap::default();
    for (w, c) in t.terms.terms() {
        if w[i - 1] != w[j - 1] {
            continue;
        }
        let mut out = w.clone();
        out.remove(j - 1);
        out.remove(i - 1);
        add_checked(&mut acc, out, *c)?;
    }
    Ok(ConcreteTensor::new(
        t.degree - 2,
        t.dim,
        SignedWordSum::from_map(acc),
    ))
}

/// A composite insertion `⊗^m V → ⊗^{m+2j} V`.
///
/// `pairs` are positions (1-based) in the *final* tensor where the `j` copies
/// of `Σ_k v_k ⊗ v_k` go; the input fills the remaining positions in order,
/// after reordering its factors by `strands` (free slot `s` receives input
/// factor `strands[s]`). `[(1,2),(5,6)]` on a degree-2 input is `φ_12∘φ_34`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EmbeddingChain {
    pub pairs: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strands: Option<Vec<usize>>,
}

impl EmbeddingChain {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        EmbeddingChain {
            pairs,
            strands: None,
        }
    }

    pub fn with_strands(pairs: Vec<(usize, usize)>, strands: Vec<usize>) -> Self {
        let identity = strands.iter().enumerate().all(|(a, &b)| a == b);
        EmbeddingChain {
            pairs,
            strands: (!identity).then_some(strands),
        }
    }

    fn validate(&self, degree: usize) -> Result<(), RefinedError> {
        let mut seen = FxHashSet::default();
        for &(i, j) in &self.pairs {
            if !(1 <= i && i < j && j <= degree) {
                return Err(RefinedError::PositionOutOfRange { i, j, degree });
            }
            if !seen.insert(i) || !seen.insert(j) {
                return Err(RefinedError::BadChain(format!(
                    "pairs overlap: {:?}",
                    self.pairs
                )));
            }
        }
        if let Some(s) = &self.strands {
            let m = degree - 2 * self.pairs.len();
            let mut sorted = s.clone();
            sorted.sort_unstable();
            if sorted != (0..m).collect::<Vec<_>>() {
                return Err(RefinedError::BadChain(format!(
                    "strands {s:?} not a permutation of 0..{m}"
                )));
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for EmbeddingChain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(i, j)| format!("φ{i}{j}")).collect();
        write!(f, "{}", parts.join("∘"))?;
        if let Some(s) = &self.strands {
            write!(f, " σ{s:?}")?;
        }
        Ok(())
    }
}

pub fn apply_chain(
    t: &ConcreteTensor,
    chain: &EmbeddingChain,
) -> Result<ConcreteTensor, RefinedError> {
    let j = chain.pairs.len();
    let degree = t.degree + 2 * j;
    chain.validate(degree)?;
    let paired: FxHashSet<usize> = chain
        .pairs
        .iter()
        .flat_map(|&(a, b)| [a - 1, b - 1])
        .collect();
    let free: Vec<usize> = (0..degree).filter(|p| !paired.contains(p)).collect();
    let dim = t.dim as u8;
    let mut acc = FxHashMap::default();
    let mut ks = vec![1u8; j];
    for (w, c) in t.terms.terms() {
        let mut out: Word = smallvec::smallvec![0; degree];
        for (s, &pos) in free.iter().enumerate() {
            let src = chain.strands.as_ref().map_or(s, |st| st[s]);
            out[pos] = w[src];
        }
        ks.iter_mut().for_each(|k| *k = 1);
        loop {
            for (&(a, b), &k) in chain.pairs.iter().zip(&ks) {
                out[a - 1] = k;
                out[b - 1] = k;
            }
            add_checked(&mut acc, out.clone(), *c)?;
            // odometer over [1..N]^j
            let Some(idx) = ks.iter().rposition(|&k| k < dim) else {
                break;
            };
            ks[idx] += 1;
            ks[idx + 1..].iter_mut().for_each(|k| *k = 1);
        }
    }
    Ok(ConcreteTensor::new(
        degree,
        t.dim,
        SignedWordSum::from_map(acc),
    ))
}

/// `e_λ` applied linearly to a tensor.
pub fn symmetrize(
    sym: &YoungSymmetrizer,
    t: &ConcreteTensor,
) -> Result<ConcreteTensor, RefinedError> {
    let mut acc = FxHashMap::default();
    for (w, c) in t.terms.terms() {
        for (u, d) in sym.apply(w).terms() {
            add_checked(
                &mut acc,
                u.clone(),
                c.checked_mul(*d).ok_or(RefinedError::Overflow)?,
            )?;
        }
    }
    Ok(ConcreteTensor::new(
        t.degree,
        t.dim,
        SignedWordSum::from_map(acc),
    ))
}

/// `v = e_γ(v_1 ⊗ … ⊗ v_m)`: all letters distinct, so every contraction kills it.
pub fn reference_vector(gamma: &Partition, dim: usize) -> ConcreteTensor {
    let word: Vec<u8> = (1..=gamma.n() as u8).collect();
    let sym = YoungSymmetrizer::for_shape(gamma);
    ConcreteTensor::new(gamma.n(), dim, sym.apply(&word))
}

fn check_pair(shape: &Partition, gamma: &Partition) -> Result<usize, RefinedError> {
    let (n, m) = (shape.n(), gamma.n());
    if m >= n || (n - m) % 2 == 1 {
        return Err(RefinedError::BadConstituent {
            n,
            gamma: gamma.clone(),
        });
    }
    Ok((n - m) / 2)
}

/// `G_ab = ⊗B(e_λ f_a v, e_λ f_b v) / ⊗B(v, v)` at ambient dimension `dim`.
pub fn constituent_gram(
    shape: &Partition,
    gamma: &Partition,
    chains: &[EmbeddingChain],
    dim: usize,
) -> Result<Vec<Vec<BigRat>>, RefinedError> {
    check_pair(shape, gamma)?;
    let sym = YoungSymmetrizer::for_shape(shape);
    gram_at(&sym, gamma, chains, dim, Exec::Sequential)
}

fn gram_at(
    sym: &YoungSymmetrizer,
    gamma: &Partition,
    chains: &[EmbeddingChain],
    dim: usize,
    exec: Exec,
) -> Result<Vec<Vec<BigRat>>, RefinedError> {
    let n = sym.frame().shape().n();
    if dim < n {
        return Err(RefinedError::AmbientTooSmall { n, dim });
    }
    let v = reference_vector(gamma, dim);
    let norm = BigInt::from(v.form(&v));
    let images = exec
        .map(chains, |c| symmetrize(sym, &apply_chain(&v, c)?))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(images
        .iter()
        .map(|a| {
            images
                .iter()
                .map(|b| BigRat::new(BigInt::from(a.form(b)), norm.clone()))
                .collect()
        })
        .collect())
}

/// All ways to place `j` disjoint pairs among positions `1..=n`, lexicographic.
fn placements(n: usize, j: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        n: usize,
        j: usize,
        start: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for a in start..=n {
            if used[a] {
                continue;
            }
            for b in a + 1..=n {
                if used[b] {
                    continue;
                }
                used[a] = true;
                used[b] = true;
                cur.push((a, b));
                rec(n, j, a + 1, used, cur, out);
                cur.pop();
                used[a] = false;
                used[b] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, j, 1, &mut vec![false; n + 1], &mut Vec::new(), &mut out);
    out
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..m).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let k = (i + 1..m).rev().find(|&k| p[k] > p[i]).expect("successor");
        p.swap(i, k);
        p[i + 1..].reverse();
        out.push(p.clone());
    }
}

/// Key identifying chains whose images agree because `e_λ ρ = e_λ` for every
/// row permutation `ρ`: strand indices per row and the row pairs of insertions.
fn row_class_key(
    frame: &TableauFrame,
    chain: &EmbeddingChain,
) -> (Vec<Vec<usize>>, Vec<(usize, usize)>) {
    let n = frame.shape().n();
    let mut row_of = vec![0; n];
    for (r, labels) in frame.rows().iter().enumerate() {
        for &p in labels {
            row_of[p] = r;
        }
    }
    let paired: FxHashSet<usize> = chain
        .pairs
        .iter()
        .flat_map(|&(a, b)| [a - 1, b - 1])
        .collect();
    let mut strands = vec![Vec::new(); frame.rows().len()];
    for (s, pos) in (0..n).filter(|p| !paired.contains(p)).enumerate() {
        let src = chain.strands.as_ref().map_or(s, |st| st[s]);
        strands[row_of[pos]].push(src);
    }
    strands.iter_mut().for_each(|r| r.sort_unstable());
    let mut pairs: Vec<(usize, usize)> = chain
        .pairs
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (row_of[a - 1], row_of[b - 1]);
            (x.min(y), x.max(y))
        })
        .collect();
    pairs.sort_unstable();
    (strands, pairs)
}

/// Candidate chains in priority order: `(1,2)` followed by pairs among
/// `(3,4), (5,6), …`; then every placement with the input kept in order;
/// then (if `with_strands`) every placement with reordered input factors.
/// Duplicates up to row permutations are dropped.
pub fn candidate_chains(shape: &Partition, j: usize, with_strands: bool) -> Vec<EmbeddingChain> {
    let n = shape.n();
    let frame = TableauFrame::row_major(shape);
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push = |c: EmbeddingChain, out: &mut Vec<EmbeddingChain>| {
        if seen.insert(row_class_key(&frame, &c)) {
            out.push(c);
        }
    };
    let aligned: Vec<(usize, usize)> = (1..n / 2).map(|i| (2 * i + 1, 2 * i + 2)).collect();
    if j >= 1 {
        for rest in placements_from(&aligned, j - 1) {
            let mut pairs = vec![(1, 2)];
            pairs.extend(rest);
            push(EmbeddingChain::new(pairs), &mut out);
        }
    }
    let all = placements(n, j);
    for p in &all {
        push(EmbeddingChain::new(p.clone()), &mut out);
    }
    if with_strands {
        let perms = permutations(n - 2 * j);
        for p in &all {
            for s in perms.iter().skip(1) {
                push(EmbeddingChain::with_strands(p.clone(), s.clone()), &mut out);
            }
        }
    }
    out
}

fn placements_from(options: &[(usize, usize)], k: usize) -> Vec<Vec<(usize, usize)>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (idx, &o) in options.iter().enumerate() {
        for mut rest in placements_from(&options[idx + 1..], k - 1) {
            rest.insert(0, o);
            out.push(rest);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedConstituent {
    pub gamma: Partition,
    pub multiplicity: usize,
    /// The chains whose images span the `γ`-isotypic part.
    pub chains: Vec<EmbeddingChain>,
    /// `c(λ,γ)` as an `m × m` matrix of polynomials in `N`.
    pub c_matrix: Vec<Vec<IntPoly>>,
    /// `⊗B(v, v)` of the reference vector; `c_matrix` is divided by it.
    pub reference_norm: BigInt,
    pub c_det: IntPoly,
    pub c_reduced: SquareClassFormula,
}

const BATCH: usize = 8;

/// Greedily picks candidates whose images at `dim` are linearly independent,
/// stopping at `cap`. Returns indices into `pool`.
fn select_independent(
    sym: &YoungSymmetrizer,
    v: &ConcreteTensor,
    pool: &[EmbeddingChain],
    cap: Option<usize>,
    exec: Exec,
) -> Result<Vec<usize>, RefinedError> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut images: Vec<ConcreteTensor> = Vec::new();
    let mut gram: Vec<Vec<BigInt>> = Vec::new();
    let idx: Vec<usize> = (0..pool.len()).collect();
    for batch in idx.chunks(BATCH) {
        let imgs = exec.map(batch, |&i| symmetrize(sym, &apply_chain(v, &pool[i])?));
        for (&i, img) in batch.iter().zip(imgs) {
            let img = img?;
            if img.is_zero() {
                continue;
            }
            let mut row: Vec<BigInt> = images.iter().map(|x| BigInt::from(x.form(&img))).collect();
            row.push(BigInt::from(img.form(&img)));
            let mut trial = gram.clone();
            for (r, x) in trial.iter_mut().zip(&row) {
                r.push(x.clone());
            }
            trial.push(row);
            if !det_bareiss(&trial).is_zero() {
                gram = trial;
                images.push(img);
                chosen.push(i);
                if cap == Some(chosen.len()) {
                    return Ok(chosen);
                }
            }
        }
    }
    Ok(chosen)
}

pub fn constituent_poly(
    shape: &Partition,
    gamma: &Partition,
) -> Result<Option<RefinedConstituent>, RefinedError> {
    constituent_poly_with(shape, gamma, Exec::default())
}

/// Detects `Sym'_γ` inside `Sym_λ` and recovers `c(λ,γ)`.
///
/// The expected multiplicity from Littlewood's restriction rule only bounds
/// the search; independence and absence are decided on actual images.
pub fn constituent_poly_with(
    shape: &Partition,
    gamma: &Partition,
    exec: Exec,
) -> Result<Option<RefinedConstituent>, RefinedError> {
    let j = check_pair(shape, gamma)?;
    let n = shape.n();
    let sym = YoungSymmetrizer::for_shape(shape);
    let expected = littlewood_multiplicity(shape, gamma);
    let pool = candidate_chains(shape, j, expected > 0);
    let cap = (expected > 0).then_some(expected);
    let top = n + 2 * j + 1;
    let mut chosen = select_independent(&sym, &reference_vector(gamma, top), &pool, cap, exec)?;
    if chosen.is_empty() {
        chosen = select_independent(&sym, &reference_vector(gamma, top - 1), &pool, cap, exec)?;
        if chosen.is_empty() {
            return Ok(None);
        }
    }
    let chains: Vec<EmbeddingChain> = chosen.iter().map(|&i| pool[i].clone()).collect();
    let dims: Vec<usize> = (n..=top).collect();
    let samples = exec
        .map(&dims, |&d| {
            gram_at(&sym, gamma, &chains, d, Exec::Sequential)
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let m = chains.len();
    let mut c_matrix = vec![vec![IntPoly::zero(); m]; m];
    for a in 0..m {
        for b in 0..m {
            let pts: Vec<(BigInt, BigRat)> = dims
                .iter()
                .zip(&samples)
                .map(|(&d, g)| (BigInt::from(d), g[a][b].clone()))
                .collect();
            c_matrix[a][b] = interpolate(&pts, 2 * j)?;
        }
    }
    let c_det = det_poly(&c_matrix);
    let c_reduced = SquareClassFormula::from_polynomial(&c_det)?.reduced();
    let v = reference_vector(gamma, n);
    Ok(Some(RefinedConstituent {
        gamma: gamma.clone(),
        multiplicity: m,
        chains,
        c_matrix,
        reference_norm: BigInt::from(v.form(&v)),
        c_det,
        c_reduced,
    }))
}

#[derive(Clone, Debug)]
pub struct RefinedResult {
    pub shape: Partition,
    pub constituents: Vec<RefinedConstituent>,
    pub dimension: IntPoly,
    pub refined_dimension: IntPoly,
    /// `det Sym_λ(B)`, reduced.
    pub sym_det: SquareClassFormula,
    /// `det Sym'_λ(B)`, reduced.
    pub refined_det: SquareClassFormula,
}

/// Memoizing driver for [`refined_decomposition`]; constituents recurse into
/// smaller shapes, which are computed once.
#[derive(Default)]
pub struct RefinedEngine {
    exec: Exec,
    memo: FxHashMap<Partition, RefinedResult>,
}

impl RefinedEngine {
    pub fn new(exec: Exec) -> Self {
        RefinedEngine {
            exec,
            memo: FxHashMap::default(),
        }
    }

    pub fn decompose(&mut self, shape: &Partition) -> Result<RefinedResult, RefinedError> {
        if let Some(r) = self.memo.get(shape) {
            return Ok(r.clone());
        }
        let n = shape.n();
        if n > 7 {
            return Err(RefinedError::TooLarge(n));
        }
        let gammas: Vec<Partition> = (1..=n / 2).flat_map(|j| partitions_of(n - 2 * j)).collect();
        let exec = self.exec;
        let found = exec
            .map(&gammas, |g| {
                constituent_poly_with(shape, g, Exec::Sequential)
            })
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;
        let constituents: Vec<RefinedConstituent> = found.into_iter().flatten().collect();
        let sym = symmetrization_determinant_with(shape, exec);
        let dimension = dimension_poly(shape);
        let mut refined_dimension = dimension.clone();
        let mut removed = SquareClassFormula::one();
        for c in &constituents {
            let sub = self.decompose(&c.gamma)?;
            let m = IntPoly::from_int(c.multiplicity as i64);
            refined_dimension = &refined_dimension - &(&sub.refined_dimension * &m);
            let det_c = SquareClassFormula::from_polynomial(&c.c_det)?;
            removed = removed
                .mul(&det_c.pow(&sub.refined_dimension))
                .mul(&sub.refined_det.pow(&m));
        }
        let sym_det = sym.det_formula();
        let refined_det = sym_det.mul(&removed.inverse()).reduced();
        let result = RefinedResult {
            shape: shape.clone(),
            constituents,
            dimension,
            refined_dimension,
            sym_det,
            refined_det,
        };
        self.memo.insert(shape.clone(), result.clone());
        Ok(result)
    }
}

pub fn refined_decomposition(shape: &Partition) -> Result<RefinedResult, RefinedError> {
    RefinedEngine::new(Exec::default()).decompose(shape)
}
