//! Building squares of algebras and checking the realization tables
//! against constructed algebras.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::{atlas, expected_for, Expected, Expr, LabelTemplate, Var, VerifiedBy};
use crate::descriptor::parse_factor;
use crate::liealg::{analyze, check_jacobi};
use crate::metric::{build_metric, LabelClass};
use crate::rational::Rational;
use crate::vinberg::{build_with_labels, predict_u2, Recipe, Space};

pub const GRAND: [&str; 7] = ["R", "C", "Cs", "H", "Hs", "O", "Os"];
pub const COMPACT: [&str; 4] = ["R", "C", "H", "O"];
pub const SPLIT: [&str; 4] = ["R", "Cs", "Hs", "Os"];

pub fn is_octonionic(k: &str) -> bool {
    k == "O" || k == "Os"
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Match,
    Mismatch,
    CountingOnly,
    NonLie,
    NoExpectation,
    Skipped,
    Error,
}

impl Status {
    pub fn tag(self) -> &'static str {
        match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::CountingOnly => "counting_only",
            Status::NonLie => "non_lie",
            Status::NoExpectation => "no_expectation",
            Status::Skipped => "skipped",
            Status::Error => "error",
        }
    }

    /// Whether the status counts against a verification run.
    pub fn is_failure(self) -> bool {
        matches!(self, Status::Mismatch | Status::Error | Status::NoExpectation)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareCell {
    pub k1: String,
    pub k2: String,
    pub n: usize,
    pub labels: String,
    pub l: usize,
    pub dim: Option<usize>,
    pub character: Option<i64>,
    pub expected: Option<Expected>,
    pub source: Option<String>,
    pub status: Status,
    pub note: Option<String>,
}

/// Counted dimension for a single octonionic factor at n = 2.
fn octonionic_counting(k1: &str, k2: &str, class: &LabelClass) -> Option<usize> {
    let single = if k2 == "R" { Some(k1) } else if k1 == "R" { Some(k2) } else { None };
    Some(predict_u2(single?, class).ok()?.dim)
}

/// One square cell, built from the first representative of `class`.
pub fn square_cell(k1: &str, k2: &str, n: usize, class: &LabelClass) -> SquareCell {
    let mut cell = SquareCell {
        k1: k1.into(),
        k2: k2.into(),
        n,
        labels: class.to_string(),
        l: 0,
        dim: None,
        character: None,
        expected: None,
        source: None,
        status: Status::Error,
        note: None,
    };
    let labels = match class.first(n) {
        Ok(v) => v,
        Err(e) => {
            cell.note = Some(e.to_string());
            return cell;
        }
    };
    let metric = match build_metric(n, &labels) {
        Ok(m) => m,
        Err(e) => {
            cell.note = Some(e.to_string());
            return cell;
        }
    };
    cell.l = metric.l;
    let entry = expected_for(k1, k2, n, metric.l);
    if let Some(e) = &entry {
        cell.expected = Some(e.expected.clone());
        cell.source = Some(e.source.clone());
    }
    let octo = is_octonionic(k1) || is_octonionic(k2);
    if octo && n == 2 {
        cell.status = Status::CountingOnly;
        match (octonionic_counting(k1, k2, class), &entry) {
            (Some(d), Some(e)) => {
                cell.dim = Some(d);
                cell.character = Some(e.expected.character);
                if d as i64 != e.expected.dim {
                    cell.status = Status::Mismatch;
                    cell.note = Some("counted dimension differs from atlas".into());
                }
            }
            (None, Some(e)) => {
                cell.dim = Some(e.expected.dim as usize);
                cell.character = Some(e.expected.character);
                cell.note = Some("atlas values, no construction".into());
            }
            (_, None) => cell.status = Status::NoExpectation,
        }
        return cell;
    }
    let mut recipe = Recipe::new(k1, k2, n, LabelClass::Explicit(labels.clone()));
    let exploratory = octo && n > 3;
    if exploratory {
        recipe = recipe.forced();
    }
    let built = match build_with_labels(&recipe, &labels) {
        Ok(b) => b,
        Err(e) => {
            cell.note = Some(e.to_string());
            return cell;
        }
    };
    let jacobi = check_jacobi(&built.lie);
    let report = analyze(&built.lie);
    cell.dim = Some(report.dim);
    cell.character = Some(report.character);
    cell.status = if jacobi.is_err() || built.lie.meta.non_lie {
        cell.note = jacobi.err().map(|v| format!("Jacobi fails at {:?}", v.triple));
        Status::NonLie
    } else {
        match &entry {
            None if report.n_zero == report.dim => {
                cell.note = Some("Killing form vanishes; abelian cells carry no atlas entry".into());
                Status::Skipped
            }
            None => Status::NoExpectation,
            Some(e) if e.expected.dim == report.dim as i64 && e.expected.character == report.character => {
                Status::Match
            }
            Some(_) => Status::Mismatch,
        }
    };
    cell
}

/// Every (row, column) factor pair against every class, row-major. Cells
/// are built in parallel; the order of the result is fixed.
pub fn generate_square(n: usize, rows: &[&str], cols: &[&str], classes: &[LabelClass]) -> Vec<SquareCell> {
    let mut jobs = Vec::new();
    for k1 in rows {
        for k2 in cols {
            for c in classes {
                jobs.push((*k1, *k2, c));
            }
        }
    }
    jobs.par_iter().map(|(k1, k2, c)| square_cell(k1, k2, n, c)).collect()
}

pub fn format_square_text(cells: &[SquareCell], rows: &[&str], cols: &[&str]) -> String {
    let grid: Vec<Vec<String>> = rows
        .iter()
        .map(|k1| {
            cols.iter()
                .map(|k2| {
                    let parts: Vec<String> = cells
                        .iter()
                        .filter(|c| c.k1 == *k1 && c.k2 == *k2)
                        .map(cell_text)
                        .collect();
                    parts.join(" / ")
                })
                .collect()
        })
        .collect();
    let width: Vec<usize> = (0..cols.len())
        .map(|j| grid.iter().map(|r| r[j].chars().count()).chain([cols[j].len()]).max().unwrap())
        .collect();
    let mut lines = Vec::new();
    let mut line = format!("{:4}", "");
    for (j, k) in cols.iter().enumerate() {
        let _ = write!(line, " | {:w$}", k, w = width[j]);
    }
    lines.push(line);
    for (k1, r) in rows.iter().zip(&grid) {
        let mut line = format!("{k1:4}");
        for (j, x) in r.iter().enumerate() {
            let _ = write!(line, " | {:w$}", x, w = width[j]);
        }
        lines.push(line);
    }
    lines.iter().map(|l| format!("{}\n", l.trim_end())).collect()
}

fn cell_text(c: &SquareCell) -> String {
    let name = c.expected.as_ref().map(|e| e.name.as_str()).unwrap_or("?");
    let mark = match c.status {
        Status::Match => "",
        Status::CountingOnly => "#",
        Status::NonLie => "!nonlie",
        Status::Mismatch => "!",
        _ => "?",
    };
    match (c.dim, c.character) {
        (Some(d), Some(x)) => format!("{name}[{d},{x}]{mark}"),
        _ => format!("{name}{mark}"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrategyResult {
    pub space: String,
    pub dim: Option<usize>,
    pub character: Option<i64>,
    pub jacobi: bool,
    pub closure_failures: usize,
    pub semisimple: bool,
    pub verified: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecipeCheck {
    pub recipe: String,
    pub l: usize,
    pub verified_by: VerifiedBy,
    pub strategies: Vec<StrategyResult>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub source: String,
    pub row: String,
    pub n: Option<i64>,
    pub l: Option<i64>,
    pub expected: Expected,
    pub checks: Vec<RecipeCheck>,
    pub status: Status,
}

fn run_strategy(k1: &str, k2: &str, size: usize, labels: &[Rational], space: Space, expected: &Expected) -> StrategyResult {
    let mut recipe = Recipe::new(k1, k2, size, LabelClass::Explicit(labels.to_vec())).with_space(space);
    if space == Space::SpecialUnitary {
        recipe = recipe.forced();
    }
    let mut res = StrategyResult {
        space: space.tag().into(),
        dim: None,
        character: None,
        jacobi: false,
        closure_failures: 0,
        semisimple: false,
        verified: false,
        error: None,
    };
    match build_with_labels(&recipe, labels) {
        Err(e) => res.error = Some(e.to_string()),
        Ok(b) => {
            let rep = analyze(&b.lie);
            res.dim = Some(rep.dim);
            res.character = Some(rep.character);
            res.jacobi = check_jacobi(&b.lie).is_ok();
            res.closure_failures = b.failures.len();
            res.semisimple = rep.semisimple;
            res.verified = res.jacobi
                && res.closure_failures == 0
                && rep.semisimple
                && rep.dim as i64 == expected.dim
                && rep.character == expected.character;
        }
    }
    res
}

fn standard(k: &str) -> bool {
    parse_factor(k).map(|f| f.is_standard()).unwrap_or(false)
}

/// Label lists to try: one per inertia class for `{{±}}`, else the first.
fn representatives(class: &LabelClass, size: usize) -> Vec<(usize, Vec<Rational>)> {
    let classes = match class {
        LabelClass::Any => (0..=size / 2).map(|l| LabelClass::Inertia { n: size, l }).collect(),
        c => vec![c.clone()],
    };
    classes
        .iter()
        .filter_map(|c| {
            let v = c.first(size).ok()?;
            let l = build_metric(size, &v).ok()?.l;
            Some((l, v))
        })
        .collect()
}

fn check_recipe(k1: &str, k2: &str, size: usize, class: &LabelClass, vb: VerifiedBy, expected: &Expected) -> Vec<RecipeCheck> {
    let mut out = Vec::new();
    for (l, labels) in representatives(class, size) {
        let recipe = Recipe::new(k1, k2, size, LabelClass::Explicit(labels.clone())).to_string();
        let mut check = RecipeCheck {
            recipe,
            l,
            verified_by: vb,
            strategies: vec![],
            status: Status::CountingOnly,
        };
        if vb == VerifiedBy::CountingOnly {
            let single = if k2 == "R" { Some(k1) } else { None };
            if let Some(p) = single.and_then(|k| predict_u2(k, &LabelClass::Explicit(labels.clone())).ok()) {
                if p.dim as i64 != expected.dim {
                    check.status = Status::Mismatch;
                }
            }
            out.push(check);
            continue;
        }
        let spaces: &[Space] = if standard(k1) && standard(k2) {
            &[Space::SpecialUnitary]
        } else {
            &[Space::SpecialUnitary, Space::FullAntihermitian, Space::DerivedAntihermitian]
        };
        check.strategies = spaces
            .iter()
            .map(|&s| run_strategy(k1, k2, size, &labels, s, expected))
            .collect();
        check.status = if check.strategies.iter().any(|s| s.verified) {
            Status::Match
        } else {
            Status::Mismatch
        };
        out.push(check);
    }
    out
}

/// Checks every row of the named table ("I" to "V", or the full source
/// name) for parameter n up to `max_n`, skipping instances whose
/// expected dimension exceeds `cap`.
pub fn verify_reverse_tables(table: &str, max_n: usize, cap: usize) -> Vec<RowCheck> {
    let source = if table.starts_with("Table") || table.starts_with("Grand") {
        table.to_string()
    } else {
        format!("Table {table}")
    };
    let mut out = Vec::new();
    for row in atlas().rows.iter().filter(|r| r.source == source) {
        let pats: Vec<(Expr, LabelTemplate, &super::RecipePattern)> = row
            .recipes
            .iter()
            .filter_map(|p| Some((Expr::parse(&p.n).ok()?, LabelTemplate::parse(&p.labels).ok()?, p)))
            .collect();
        let uses = |v: Var| row.family.uses(v) || pats.iter().any(|(e, t, _)| e.uses(v) || t.uses(v));
        let ns: Vec<Option<i64>> = if uses(Var::N) {
            (1..=max_n as i64).map(Some).collect()
        } else {
            vec![None]
        };
        let use_l = uses(Var::L);
        for n in ns {
            let nv = n.unwrap_or(0);
            let ls: Vec<Option<i64>> = if use_l {
                (0..=2 * nv).map(Some).collect()
            } else {
                vec![None]
            };
            for l in ls {
                let lv = l.unwrap_or(0);
                let Some(expected) = row.family.eval(nv, lv) else { continue };
                let mut checks = Vec::new();
                let mut skipped = false;
                for (ne, lt, p) in &pats {
                    let size = ne.eval(nv, lv);
                    if size < 1 || (size < 2 && ne.var.is_some()) {
                        continue;
                    }
                    let Some(class) = lt.instantiate(size as usize, nv, lv) else { continue };
                    if expected.dim > cap as i64 {
                        skipped = true;
                        continue;
                    }
                    checks.extend(check_recipe(&p.k1, &p.k2, size as usize, &class, p.verified_by, &expected));
                }
                if checks.is_empty() && !skipped {
                    continue;
                }
                let status = if checks.is_empty() {
                    Status::Skipped
                } else if checks.iter().any(|c| c.status == Status::Mismatch) {
                    Status::Mismatch
                } else if checks.iter().all(|c| c.status == Status::CountingOnly) {
                    Status::CountingOnly
                } else {
                    Status::Match
                };
                out.push(RowCheck {
                    source: row.source.clone(),
                    row: row.row.clone(),
                    n,
                    l,
                    expected,
                    checks,
                    status,
                });
            }
        }
    }
    out
}

pub fn format_rows_text(rows: &[RowCheck]) -> String {
    let mut s = String::new();
    for r in rows {
        let mut params = Vec::new();
        if let Some(n) = r.n {
            params.push(format!("n={n}"));
        }
        if let Some(l) = r.l {
            params.push(format!("l={l}"));
        }
        let params = if params.is_empty() { String::new() } else { format!(" [{}]", params.join(" ")) };
        let _ = writeln!(
            s,
            "{} {}{} expect {} ({}, {}): {}",
            r.source,
            r.row,
            params,
            r.expected.name,
            r.expected.dim,
            r.expected.character,
            r.status.tag()
        );
        for c in &r.checks {
            let strat: Vec<String> = c
                .strategies
                .iter()
                .map(|x| match (x.dim, x.character) {
                    (Some(d), Some(ch)) => format!(
                        "{}:({d},{ch}){}",
                        x.space,
                        if x.verified {
                            ""
                        } else if !x.jacobi {
                            " jacobi-fail"
                        } else if x.closure_failures > 0 {
                            " closure-fail"
                        } else {
                            " differs"
                        }
                    ),
                    _ => format!("{}:error", x.space),
                })
                .collect();
            let _ = writeln!(s, "    {} l={} {} {}", c.recipe, c.l, c.status.tag(), strat.join(" "));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cells() {
        let c = square_cell("R", "C", 3, &LabelClass::AllPlus);
        assert_eq!((c.dim, c.character, c.status), (Some(8), Some(-8), Status::Match));
        let c = square_cell("O", "R", 2, &LabelClass::AllMinus);
        assert_eq!((c.dim, c.status), (Some(36), Status::CountingOnly));
        assert_eq!(c.expected.unwrap().name, "so(8,1)");
        let c = square_cell("H", "R", 1, &LabelClass::AllPlus);
        assert_eq!((c.dim, c.character, c.status), (Some(3), Some(-3), Status::Match));
    }
}
