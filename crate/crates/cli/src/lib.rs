//! Report types and renderers behind the `symdet` binary.
//!
//! Every command builds a serde report first and renders it afterwards, so
//! the JSON form carries exactly what the text and LaTeX forms show.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::anyhow;
use clap::ValueEnum;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use symdet_core::combinat::{partitions_of, ssyt_with_pattern, Partition};
use symdet_core::exact::{
    factored, formula, polynomial_class, Base, FactorOrder, IntPoly, SquareClassFormula, Style,
};
use symdet_core::golden::{verify_refined, verify_sym, Check, GoldenTables};
use symdet_core::gram::{symmetrization_determinant_with, GramBlock};
use symdet_core::par::Exec;
use symdet_core::refined::{RefinedConstituent, RefinedEngine, RefinedError};

/// Largest degree accepted by `table`.
pub const MAX_TABLE_DEGREE: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    Json,
    Latex,
    #[default]
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Sym,
    Refined,
    All,
}

/// Errors split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable inputs (exit 2).
    Usage(anyhow::Error),
    /// The computation itself failed (exit 1).
    Failed(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(e) | CliError::Failed(e) => write!(f, "{e:#}"),
        }
    }
}

fn usage(msg: String) -> CliError {
    CliError::Usage(anyhow!(msg))
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(anyhow!("{e}"))
}

pub fn parse_shape(src: &str) -> Result<Partition, CliError> {
    let shape: Partition = src
        .parse()
        .map_err(|e| usage(format!("bad partition {src:?}: {e}")))?;
    if shape.is_empty() {
        return Err(usage(format!("bad partition {src:?}: empty shape")));
    }
    Ok(shape)
}

// DTOs

/// A polynomial in `N`: rational coefficients (constant term first) plus
/// factored renderings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDto {
    pub coeffs: Vec<String>,
    pub text: String,
    pub latex: String,
}

impl PolyDto {
    pub fn new(p: &IntPoly, order: FactorOrder) -> Self {
        PolyDto {
            coeffs: p.clone().into(),
            text: factored(p, order, Style::Text),
            latex: factored(p, order, Style::Latex),
        }
    }
}

/// One factor `base^exponent`. When the exponent is a sum of distinct
/// `C(N,k)` it is listed by those `k`; otherwise by its coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDto {
    pub base: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent_binomial_k: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent_poly: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareClassDto {
    pub text: String,
    pub latex: String,
    pub factors: Vec<FactorDto>,
    pub det_b_exponent: Vec<String>,
}

impl SquareClassDto {
    pub fn new(f: &SquareClassFormula) -> Self {
        let factors = f
            .factors()
            .iter()
            .map(|(b, e)| {
                let base = match b {
                    Base::Int(p) => p.to_string(),
                    Base::Poly(q) => factored(q, FactorOrder::Ascending, Style::Text),
                };
                let ks = e.to_binomial_basis().and_then(|cs| {
                    cs.iter().all(|c| c.is_zero() || c.is_one()).then(|| {
                        cs.iter()
                            .enumerate()
                            .filter(|(_, c)| c.is_odd())
                            .map(|(k, _)| k)
                            .collect::<Vec<_>>()
                    })
                });
                let poly = ks.is_none().then(|| e.clone().into());
                FactorDto {
                    base,
                    exponent_binomial_k: ks,
                    exponent_poly: poly,
                }
            })
            .collect();
        SquareClassDto {
            text: formula(f, Style::Text),
            latex: formula(f, Style::Latex),
            factors,
            det_b_exponent: f.det_b_exponent().clone().into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDto {
    pub pattern: String,
    /// Row labels: tableau rows joined by `/`, letters `a, b, c, ...`.
    pub tableaux: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
    pub det: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymReport {
    pub shape: String,
    pub n: usize,
    pub dimension: String,
    pub dimension_poly: PolyDto,
    pub blocks: Vec<BlockDto>,
    pub c_unreduced: String,
    pub c: String,
    pub c_class: SquareClassDto,
    pub det_b_exponent: PolyDto,
    pub det: SquareClassDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub shape: String,
    pub n: usize,
    pub dimension: PolyDto,
    pub c: SquareClassDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub n_max: usize,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstituentDto {
    pub gamma: String,
    pub multiplicity: usize,
    pub chains: Vec<String>,
    pub reference_norm: String,
    pub c_matrix: Vec<Vec<PolyDto>>,
    pub c_det: PolyDto,
    /// Square class of `det c(λ,γ)` as `content * linear factors`.
    pub c_reduced: String,
    pub refined_dimension: PolyDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinedReport {
    pub shape: String,
    pub n: usize,
    pub dimension: PolyDto,
    pub refined_dimension: PolyDto,
    pub constituents: Vec<ConstituentDto>,
    pub sym_det: SquareClassDto,
    pub refined_det: SquareClassDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub scope: Scope,
    pub golden: String,
    pub checked: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

// Commands

fn tableau_label(rows: &[Vec<u8>]) -> String {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&x| (b'a' + x - 1) as char)
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("/")
}

fn block_dto(b: &GramBlock) -> Result<BlockDto, CliError> {
    let matrix = b
        .matrix
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    x.to_i64()
                        .ok_or_else(|| failed(format!("entry {x} exceeds i64")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BlockDto {
        pattern: b.pattern.to_string(),
        tableaux: ssyt_with_pattern(&b.shape, &b.pattern)
            .iter()
            .map(|t| tableau_label(t.rows()))
            .collect(),
        matrix,
        det: b.det.to_string(),
    })
}

pub fn cmd_sym(shape: &Partition, exec: Exec) -> Result<SymReport, CliError> {
    let r = symmetrization_determinant_with(shape, exec);
    Ok(SymReport {
        shape: shape.to_string(),
        n: shape.n(),
        dimension: factored(&r.dimension, FactorOrder::Dimension, Style::Text),
        dimension_poly: PolyDto::new(&r.dimension, FactorOrder::Dimension),
        blocks: r.blocks.iter().map(block_dto).collect::<Result<_, _>>()?,
        c_unreduced: formula(&r.c_unreduced, Style::Text),
        c: formula(&r.c_formula, Style::Text),
        c_class: SquareClassDto::new(&r.c_formula),
        det_b_exponent: PolyDto::new(&r.det_b_exponent, FactorOrder::Dimension),
        det: SquareClassDto::new(&r.det_formula()),
    })
}

pub fn cmd_table(n_max: usize, exec: Exec) -> Result<TableReport, CliError> {
    if n_max > MAX_TABLE_DEGREE {
        return Err(usage(format!(
            "n = {n_max} is beyond supported degree (max {MAX_TABLE_DEGREE})"
        )));
    }
    if n_max < 2 {
        return Err(usage(format!(
            "n = {n_max} is below the smallest table degree 2"
        )));
    }
    let shapes: Vec<Partition> = (2..=n_max).flat_map(partitions_of).collect();
    // Shapes run one after another; each spreads its blocks over the pool.
    let rows = shapes
        .iter()
        .map(|s| {
            let r = symmetrization_determinant_with(s, exec);
            TableRow {
                shape: s.exponent_notation(),
                n: s.n(),
                dimension: PolyDto::new(&r.dimension, FactorOrder::Dimension),
                c: SquareClassDto::new(&r.c_formula),
            }
        })
        .collect();
    Ok(TableReport { n_max, rows })
}

fn constituent_dto(c: &RefinedConstituent, refined_dimension: &IntPoly) -> ConstituentDto {
    ConstituentDto {
        gamma: c.gamma.to_string(),
        multiplicity: c.multiplicity,
        chains: c.chains.iter().map(|ch| ch.to_string()).collect(),
        reference_norm: c.reference_norm.to_string(),
        c_matrix: c
            .c_matrix
            .iter()
            .map(|r| {
                r.iter()
                    .map(|p| PolyDto::new(p, FactorOrder::Ascending))
                    .collect()
            })
            .collect(),
        c_det: PolyDto::new(&c.c_det, FactorOrder::Ascending),
        c_reduced: polynomial_class(&c.c_reduced),
        refined_dimension: PolyDto::new(refined_dimension, FactorOrder::Dimension),
    }
}

pub fn cmd_refined(shape: &Partition, exec: Exec) -> Result<RefinedReport, CliError> {
    let mut engine = RefinedEngine::new(exec);
    let r = engine.decompose(shape).map_err(|e| match e {
        RefinedError::TooLarge(_) => usage(e.to_string()),
        other => failed(other),
    })?;
    let constituents = r
        .constituents
        .iter()
        .map(|c| {
            let sub = engine.decompose(&c.gamma).map_err(failed)?;
            Ok(constituent_dto(c, &sub.refined_dimension))
        })
        .collect::<Result<_, CliError>>()?;
    Ok(RefinedReport {
        shape: shape.to_string(),
        n: shape.n(),
        dimension: PolyDto::new(&r.dimension, FactorOrder::Dimension),
        refined_dimension: PolyDto::new(&r.refined_dimension, FactorOrder::Dimension),
        constituents,
        sym_det: SquareClassDto::new(&r.sym_det),
        refined_det: SquareClassDto::new(&r.refined_det),
    })
}

pub fn cmd_verify(
    scope: Scope,
    golden: Option<&Path>,
    exec: Exec,
) -> Result<VerifyReport, CliError> {
    let (tables, source) = match golden {
        Some(p) => (
            GoldenTables::load(p).map_err(|e| usage(format!("{}: {e}", p.display())))?,
            p.display().to_string(),
        ),
        None => (GoldenTables::builtin(), "builtin".to_string()),
    };
    let mut checks = Vec::new();
    if matches!(scope, Scope::Sym | Scope::All) {
        checks.extend(verify_sym(&tables, exec));
    }
    if matches!(scope, Scope::Refined | Scope::All) {
        checks.extend(verify_refined(&tables, exec));
    }
    Ok(VerifyReport {
        scope,
        golden: source,
        checked: checks.len(),
        failed: checks.iter().filter(|c| !c.passed).count(),
        checks,
    })
}

// Rendering

pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

pub fn render_sym(r: &SymReport, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => return to_json(r),
        Format::Text => {
            let _ = writeln!(out, "lambda = {}  (n = {})", r.shape, r.n);
            let _ = writeln!(out, "d = {}", r.dimension);
            for b in &r.blocks {
                let _ = writeln!(
                    out,
                    "block {} [{}]  det = {}",
                    b.pattern,
                    b.tableaux.join(", "),
                    b.det
                );
                for row in &b.matrix {
                    let cells: Vec<String> = row.iter().map(|x| format!("{x:>6}")).collect();
                    let _ = writeln!(out, "  {}", cells.join(""));
                }
            }
            let _ = writeln!(out, "c (unreduced) = {}", r.c_unreduced);
            let _ = writeln!(out, "c = {}", r.c);
            let _ = writeln!(out, "det(B) exponent = {}", r.det_b_exponent.text);
            let _ = writeln!(out, "det = {}", r.det.text);
        }
        Format::Latex => {
            out.push_str("\\begin{tabular}{lll}\n");
            out.push_str("$\\lambda$ & $d(\\lambda)$ & $c(\\lambda)$ \\\\\n\\hline\n");
            let _ = writeln!(
                out,
                "${}$ & ${}$ & ${}$ \\\\",
                r.shape, r.dimension_poly.latex, r.c_class.latex
            );
            out.push_str("\\end{tabular}\n");
            for b in &r.blocks {
                let rows: Vec<String> = b
                    .matrix
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(" & ")
                    })
                    .collect();
                let _ = writeln!(
                    out,
                    "% block {}\n\\[ X_{{{}}} = \\begin{{pmatrix}} {} \\end{{pmatrix}}, \\quad \\det = {} \\]",
                    b.pattern,
                    b.pattern,
                    rows.join(" \\\\ "),
                    b.det
                );
            }
        }
    }
    out
}

pub fn render_table(t: &TableReport, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => return to_json(t),
        Format::Text => {
            let w = t.rows.iter().map(|r| r.shape.len()).max().unwrap_or(0);
            let dw = t
                .rows
                .iter()
                .map(|r| r.dimension.text.len())
                .max()
                .unwrap_or(0);
            for r in &t.rows {
                let _ = writeln!(
                    out,
                    "{:<w$}  {:<dw$}  {}",
                    r.shape, r.dimension.text, r.c.text
                );
            }
        }
        Format::Latex => {
            out.push_str("\\begin{tabular}{lll}\n");
            out.push_str("$\\lambda$ & $d(\\lambda)$ & $c(\\lambda)$ \\\\\n\\hline\n");
            let mut last = None;
            for r in &t.rows {
                if last.is_some_and(|n| n != r.n) {
                    out.push_str("\\hline\n");
                }
                last = Some(r.n);
                let _ = writeln!(
                    out,
                    "${}$ & ${}$ & ${}$ \\\\",
                    r.shape, r.dimension.latex, r.c.latex
                );
            }
            out.push_str("\\end{tabular}\n");
        }
    }
    out
}

pub fn render_refined(r: &RefinedReport, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => return to_json(r),
        Format::Text => {
            let _ = writeln!(out, "lambda = {}  (n = {})", r.shape, r.n);
            let _ = writeln!(out, "d = {}", r.dimension.text);
            if r.constituents.is_empty() {
                out.push_str("no constituents\n");
            }
            for c in &r.constituents {
                let _ = writeln!(
                    out,
                    "gamma = {}  m = {}  d' = {}",
                    c.gamma, c.multiplicity, c.refined_dimension.text
                );
                let _ = writeln!(out, "  chains: {}", c.chains.join(", "));
                if c.multiplicity > 1 {
                    for row in &c.c_matrix {
                        let cells: Vec<&str> = row.iter().map(|p| p.text.as_str()).collect();
                        let _ = writeln!(out, "  [{}]", cells.join(", "));
                    }
                    let _ = writeln!(out, "  det = {}", c.c_det.text);
                }
                let _ = writeln!(out, "  c = {}", c.c_reduced);
            }
            let _ = writeln!(out, "d' = {}", r.refined_dimension.text);
            let _ = writeln!(out, "det Sym = {}", r.sym_det.text);
            let _ = writeln!(out, "det Sym' = {}", r.refined_det.text);
        }
        Format::Latex => {
            out.push_str("\\begin{tabular}{llll}\n");
            out.push_str("$\\lambda$ & $\\gamma$ & $m$ & $c(\\lambda,\\gamma)$ \\\\\n\\hline\n");
            for c in &r.constituents {
                let _ = writeln!(
                    out,
                    "${}$ & ${}$ & ${}$ & ${}$ \\\\",
                    r.shape, c.gamma, c.multiplicity, c.c_reduced
                );
            }
            out.push_str("\\end{tabular}\n");
            let _ = writeln!(out, "\\[ d' = {} \\]", r.refined_dimension.latex);
            let _ = writeln!(
                out,
                "\\[ \\det \\mathrm{{Sym}}'_{{{}}}(B) = {} \\]",
                r.shape, r.refined_det.latex
            );
        }
    }
    out
}

pub fn render_verify(v: &VerifyReport, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => return to_json(v),
        Format::Text => {
            for c in &v.checks {
                let tag = if c.passed { "ok  " } else { "FAIL" };
                let _ = writeln!(out, "{tag} {}: {}", c.name, c.detail);
            }
            let _ = writeln!(
                out,
                "{} checked, {} failed (golden: {})",
                v.checked, v.failed, v.golden
            );
        }
        Format::Latex => {
            out.push_str("\\begin{tabular}{ll}\n");
            for c in &v.checks {
                let tag = if c.passed { "ok" } else { "FAIL" };
                let _ = writeln!(out, "\\verb|{}| & {} \\\\", c.name, tag);
            }
            out.push_str("\\end{tabular}\n");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_parse_or_fail_as_usage() {
        assert_eq!(parse_shape("3,1^2").unwrap().parts(), &[3, 1, 1]);
        assert_eq!(parse_shape("0").unwrap_err().exit_code(), 2);
        assert_eq!(parse_shape("1,2").unwrap_err().exit_code(), 2);
        assert_eq!(parse_shape("x").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn sym_report_fields() {
        let r = cmd_sym(&parse_shape("1,1").unwrap(), Exec::Sequential).unwrap();
        assert_eq!(r.dimension, "N*(N-1)/2");
        assert_eq!(r.c, "2^C(N,2)");
        let r = cmd_sym(&parse_shape("2,1").unwrap(), Exec::Sequential).unwrap();
        assert!(render_sym(&r, Format::Text).contains("c = 3^C(N,3)"));
        let abc = r.blocks.iter().find(|b| b.pattern == "(1,1,1)").unwrap();
        assert_eq!(abc.matrix, vec![vec![4, -2], vec![-2, 4]]);
        assert_eq!(abc.tableaux, vec!["ab/c", "ac/b"]);
    }

    #[test]
    fn table_bounds() {
        assert_eq!(cmd_table(3, Exec::Sequential).unwrap().rows.len(), 5);
        assert_eq!(cmd_table(10, Exec::Sequential).unwrap_err().exit_code(), 2);
        let latex = render_table(&cmd_table(2, Exec::Sequential).unwrap(), Format::Latex);
        assert_eq!(latex.matches("\\\\\n").count(), 3);
    }

    #[test]
    fn refined_reports() {
        let r = cmd_refined(&parse_shape("2,1").unwrap(), Exec::Sequential).unwrap();
        assert_eq!(r.constituents.len(), 1);
        assert_eq!(r.constituents[0].c_reduced, "2(N-1)");
        assert!(
            cmd_refined(&parse_shape("1,1,1").unwrap(), Exec::Sequential)
                .unwrap()
                .constituents
                .is_empty()
        );
        let big = cmd_refined(&parse_shape("8").unwrap(), Exec::Sequential);
        assert_eq!(big.unwrap_err().exit_code(), 2);
    }

    #[test]
    fn json_round_trip_is_idempotent() {
        let r = cmd_sym(&parse_shape("3,1").unwrap(), Exec::Sequential).unwrap();
        let a = to_json(&r);
        let back: SymReport = serde_json::from_str(&a).unwrap();
        assert_eq!(back, r);
        assert_eq!(to_json(&back), a);
    }
}
