//! Published reference tables and the checks that compare the engines
//! against them. The built-in copy lives in `data/golden.json`.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinat::{Composition, Partition, ShapeError};
use crate::exact::{factorize, parse_poly, ExactError, IntPoly, SquareClassFormula};
use crate::gram::{gram_block, symmetrization_determinant_with};
use crate::par::Exec;
use crate::refined::{constituent_poly_with, RefinedError};

const BUILTIN: &str = include_str!("../data/golden.json");

#[derive(Debug, Error)]
pub enum GoldenError {
    #[error("reading golden file: {0}")]
    Io(#[from] std::io::Error),
    #[error("golden file is not valid: {0}")]
    Json(#[from] serde_json::Error),
    #[error("golden entry {entry}: {reason}")]
    Entry { entry: String, reason: String },
}

fn entry_err(entry: &str, reason: impl ToString) -> GoldenError {
    GoldenError::Entry {
        entry: entry.to_string(),
        reason: reason.to_string(),
    }
}

/// `base^{Σ_k C(N,k)}` for `k` in `ks`; `base` need not be prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub base: u64,
    pub ks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymRow {
    pub shape: String,
    pub dimension: String,
    pub c: Vec<PrimePower>,
}

impl SymRow {
    pub fn partition(&self) -> Result<Partition, GoldenError> {
        self.shape
            .parse()
            .map_err(|e: ShapeError| entry_err(&self.shape, e))
    }

    pub fn dimension_poly(&self) -> Result<IntPoly, GoldenError> {
        parse_poly(&self.dimension).map_err(|e| entry_err(&self.shape, e))
    }

    /// For each prime, the set of `k` carrying an odd exponent of `C(N,k)`.
    pub fn prime_sets(&self) -> BTreeMap<BigInt, BTreeSet<usize>> {
        let mut out: BTreeMap<BigInt, BTreeSet<usize>> = BTreeMap::new();
        for pp in &self.c {
            for (p, e) in factorize(&BigInt::from(pp.base)) {
                if e % 2 == 0 {
                    continue;
                }
                let set = out.entry(p).or_default();
                for &k in &pp.ks {
                    if !set.remove(&k) {
                        set.insert(k);
                    }
                }
            }
        }
        out.retain(|_, s| !s.is_empty());
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRow {
    pub shape: String,
    pub pattern: String,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinedRow {
    pub shape: String,
    pub gamma: String,
    /// A polynomial, or `A` for the multiplicity-two matrix.
    pub c: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityMatrix {
    pub shape: String,
    pub gamma: String,
    pub entries: Vec<Vec<String>>,
    pub det: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenTables {
    pub symmetrization: Vec<SymRow>,
    pub stretch: Vec<SymRow>,
    pub worked_blocks: Vec<BlockRow>,
    pub refined: Vec<RefinedRow>,
    pub multiplicity_matrix: MultiplicityMatrix,
}

impl GoldenTables {
    pub fn builtin() -> Self {
        serde_json::from_str(BUILTIN).expect("built-in golden tables parse")
    }

    pub fn load(path: &Path) -> Result<Self, GoldenError> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn sym_row(&self, shape: &Partition) -> Option<&SymRow> {
        self.symmetrization
            .iter()
            .chain(&self.stretch)
            .find(|r| r.partition().ok().as_ref() == Some(shape))
    }

    pub fn matrix_a(&self) -> Result<Vec<Vec<IntPoly>>, GoldenError> {
        self.multiplicity_matrix
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| parse_poly(e).map_err(|err| entry_err("A", err)))
                    .collect()
            })
            .collect()
    }
}

/// One named comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: String, passed: bool, detail: String) -> Self {
        Check {
            name,
            passed,
            detail,
        }
    }

    fn failed(name: String, detail: impl ToString) -> Self {
        Check::new(name, false, detail.to_string())
    }
}

fn show_sets(s: &BTreeMap<BigInt, BTreeSet<usize>>) -> String {
    let parts: Vec<String> = s
        .iter()
        .map(|(p, ks)| {
            let ks: Vec<String> = ks.iter().map(|k| format!("C(N,{k})")).collect();
            format!("{p}^({})", ks.join("+"))
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// Compares one symmetrization row: reduced `c` and the dimension polynomial.
pub fn check_sym_row(row: &SymRow, exec: Exec) -> Check {
    let name = format!("sym {}", row.shape);
    let (shape, dim) = match (row.partition(), row.dimension_poly()) {
        (Ok(s), Ok(d)) => (s, d),
        (Err(e), _) | (_, Err(e)) => return Check::failed(name, e),
    };
    let r = symmetrization_determinant_with(&shape, exec);
    let got = r.c_formula.prime_binomial_sets();
    let want = row.prime_sets();
    let mut problems = Vec::new();
    if got != want {
        problems.push(format!(
            "c: computed {} expected {}",
            show_sets(&got),
            show_sets(&want)
        ));
    }
    if r.dimension != dim {
        problems.push(format!("d: computed {} expected {}", r.dimension, dim));
    }
    let passed = problems.is_empty();
    let detail = if passed {
        show_sets(&got)
    } else {
        problems.join("; ")
    };
    Check::new(name, passed, detail)
}

pub fn check_block_row(row: &BlockRow) -> Check {
    let name = format!("block {} {}", row.shape, row.pattern);
    let parsed: Result<(Partition, Composition), ShapeError> = row
        .shape
        .parse()
        .and_then(|s| Ok((s, row.pattern.parse()?)));
    let (shape, pattern) = match parsed {
        Ok(x) => x,
        Err(e) => return Check::failed(name, e),
    };
    match gram_block(&shape, &pattern) {
        Ok(b) => {
            let want: Vec<Vec<BigInt>> = row
                .matrix
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            if b.matrix == want {
                Check::new(name, true, format!("{:?}", b.matrix))
            } else if same_up_to_permutation(&b.matrix, &want) {
                Check::new(name, true, format!("{:?} (rows permuted)", b.matrix))
            } else {
                Check::failed(name, format!("computed {:?} expected {:?}", b.matrix, want))
            }
        }
        Err(e) => Check::failed(name, e),
    }
}

/// Equality after reordering rows and columns by one common permutation.
pub fn same_up_to_permutation<T: PartialEq>(a: &[Vec<T>], b: &[Vec<T>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if (0..n).all(|i| (0..n).all(|j| a[perm[i]][perm[j]] == b[i][j])) {
            return true;
        }
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| perm[i] < perm[i + 1])
        else {
            return false;
        };
        let j = (i + 1..n)
            .rev()
            .find(|&j| perm[j] > perm[i])
            .expect("successor");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

fn reduced_class(p: &IntPoly) -> Result<SquareClassFormula, ExactError> {
    Ok(SquareClassFormula::from_polynomial(p)?.reduced())
}

pub fn check_refined_row(golden: &GoldenTables, row: &RefinedRow) -> Check {
    let gamma_label = if row.gamma.is_empty() {
        "()"
    } else {
        &row.gamma
    };
    let name = format!("refined {} / {}", row.shape, gamma_label);
    let parsed: Result<(Partition, Partition), ShapeError> =
        row.shape.parse().and_then(|s| Ok((s, row.gamma.parse()?)));
    let (shape, gamma) = match parsed {
        Ok(x) => x,
        Err(e) => return Check::failed(name, e),
    };
    let found = match constituent_poly_with(&shape, &gamma, Exec::Sequential) {
        Ok(Some(c)) => c,
        Ok(None) => return Check::failed(name, "constituent not detected"),
        Err(e) => return Check::failed(name, e),
    };
    let mut problems = Vec::new();
    if found.multiplicity != row.multiplicity {
        problems.push(format!(
            "multiplicity {} expected {}",
            found.multiplicity, row.multiplicity
        ));
    }
    let want_det = if row.c == "A" {
        match golden.matrix_a() {
            Ok(a) => {
                if !same_up_to_permutation(&found.c_matrix, &a) {
                    problems.push("matrix differs from A".into());
                }
                parse_poly(&golden.multiplicity_matrix.det).map_err(RefinedError::from)
            }
            Err(e) => return Check::failed(name, e),
        }
    } else {
        parse_poly(&row.c).map_err(RefinedError::from)
    };
    let want = match want_det.and_then(|p| reduced_class(&p).map_err(RefinedError::from)) {
        Ok(w) => w,
        Err(e) => return Check::failed(name, e),
    };
    if found.c_reduced != want {
        problems.push(format!(
            "c: computed {} expected {}",
            crate::exact::polynomial_class(&found.c_reduced),
            crate::exact::polynomial_class(&want)
        ));
    }
    let passed = problems.is_empty();
    let detail = if passed {
        crate::exact::polynomial_class(&found.c_reduced)
    } else {
        problems.join("; ")
    };
    Check::new(name, passed, detail)
}

pub fn verify_sym(golden: &GoldenTables, exec: Exec) -> Vec<Check> {
    let mut out: Vec<Check> = golden.worked_blocks.iter().map(check_block_row).collect();
    out.extend(exec.map(&golden.symmetrization, |r| {
        check_sym_row(r, Exec::Sequential)
    }));
    out
}

pub fn verify_refined(golden: &GoldenTables, exec: Exec) -> Vec<Check> {
    exec.map(&golden.refined, |r| check_refined_row(golden, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_parses() {
        let g = GoldenTables::builtin();
        assert_eq!(g.symmetrization.len(), 43);
        for r in g.symmetrization.iter().chain(&g.stretch) {
            r.partition().unwrap();
            r.dimension_poly().unwrap();
        }
        assert_eq!(g.matrix_a().unwrap().len(), 2);
    }

    #[test]
    fn composite_bases_split() {
        let row = SymRow {
            shape: "2^2,1^2".into(),
            dimension: "1".into(),
            c: vec![
                PrimePower {
                    base: 3,
                    ks: vec![5],
                },
                PrimePower {
                    base: 30,
                    ks: vec![6],
                },
            ],
        };
        let s = row.prime_sets();
        assert_eq!(s[&BigInt::from(2)], BTreeSet::from([6]));
        assert_eq!(s[&BigInt::from(3)], BTreeSet::from([5, 6]));
        assert_eq!(s[&BigInt::from(5)], BTreeSet::from([6]));
        let sq = SymRow {
            shape: "1".into(),
            dimension: "1".into(),
            c: vec![PrimePower {
                base: 4,
                ks: vec![2],
            }],
        };
        assert!(sq.prime_sets().is_empty());
    }

    #[test]
    fn small_rows_pass() {
        let g = GoldenTables::builtin();
        for r in g.symmetrization.iter().take(10) {
            let c = check_sym_row(r, Exec::Sequential);
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        for b in &g.worked_blocks {
            let c = check_block_row(b);
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn corrupted_row_fails() {
        let mut row = GoldenTables::builtin().symmetrization[3].clone();
        row.c[0].base = 5;
        let c = check_sym_row(&row, Exec::Sequential);
        assert!(!c.passed);
        assert!(c.detail.contains("expected"));
    }

    #[test]
    fn permutation_match() {
        let a = vec![
            vec![IntPoly::from_int(1), IntPoly::from_int(2)],
            vec![IntPoly::from_int(2), IntPoly::from_int(3)],
        ];
        let b = vec![
            vec![IntPoly::from_int(3), IntPoly::from_int(2)],
            vec![IntPoly::from_int(2), IntPoly::from_int(1)],
        ];
        assert!(same_up_to_permutation(&a, &b));
        assert!(!same_up_to_permutation(&a, &[vec![IntPoly::one()]]));
        assert!(!same_up_to_permutation(&a, &[a[1].clone(), a[0].clone()]));
    }
}
