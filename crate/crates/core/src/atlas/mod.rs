//! Expected identifications, transcribed into `data/atlas.json`, and the
//! lookup, identification and table-verification logic built on them.
//!
//! Rows of the realization tables are templates in two integer
//! parameters n and l. A template expression is an integer constant or a
//! coefficient times `n` or `l` (`3`, `n`, `2n`, `4l`, ...).

mod catalog;
pub mod tables;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::liealg::KillingReport;
use crate::metric::LabelClass;
use crate::vinberg::Recipe;

pub use catalog::{catalog, family_value, CatalogEntry};

pub const ATLAS_JSON: &str = include_str!("../../data/atlas.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasData {
    pub version: u32,
    pub exceptional: Vec<Expected>,
    pub derivations: Vec<DerivationEntry>,
    pub square: Vec<SquareEntry>,
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Expected {
    pub name: String,
    pub dim: i64,
    pub character: i64,
}

/// der(K) for one factor, the n = 1 building block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationEntry {
    pub k: String,
    pub name: String,
    pub dim: i64,
    pub character: i64,
}

/// A cell of the n = 3 square, stored once per unordered factor pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareEntry {
    pub source: String,
    pub k1: String,
    pub k2: String,
    pub n: usize,
    pub expected: Vec<ByInertia>,
}

/// `l: None` applies to every inertia index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ByInertia {
    pub l: Option<usize>,
    pub name: String,
    pub dim: i64,
    pub character: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub source: String,
    pub row: String,
    pub family: Family,
    pub recipes: Vec<RecipePattern>,
}

/// A classical series evaluated at (N, q), or a fixed exceptional name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub series: String,
    pub name: Option<String>,
    #[serde(rename = "N")]
    pub size: Option<String>,
    pub q: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipePattern {
    pub k1: String,
    pub k2: String,
    pub n: String,
    pub labels: String,
    pub verified_by: VerifiedBy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerifiedBy {
    None,
    Constructed,
    CountingOnly,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AtlasError {
    #[error("no atlas entry has dimension {dim} and character {character}")]
    UnknownAlgebra { dim: usize, character: i64 },
    #[error("malformed atlas template {0:?}")]
    Template(String),
}

pub fn atlas() -> &'static AtlasData {
    static DATA: OnceLock<AtlasData> = OnceLock::new();
    DATA.get_or_init(|| serde_json::from_str(ATLAS_JSON).expect("bundled atlas parses"))
}

/// Serializes atlas data in the bundled file's exact layout.
pub fn to_text(data: &AtlasData) -> String {
    let mut s = serde_json::to_string_pretty(data).expect("atlas serializes");
    s.push('\n');
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    N,
    L,
}

/// `c`, `c·n` or `c·l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expr {
    pub coef: i64,
    pub var: Option<Var>,
}

impl Expr {
    pub fn parse(s: &str) -> Result<Expr, AtlasError> {
        let s = s.trim();
        let bad = || AtlasError::Template(s.to_string());
        let (num, var) = match s.chars().last() {
            Some('n') => (&s[..s.len() - 1], Some(Var::N)),
            Some('l') => (&s[..s.len() - 1], Some(Var::L)),
            _ => (s, None),
        };
        let coef = if num.is_empty() {
            1
        } else {
            num.parse().map_err(|_| bad())?
        };
        Ok(Expr { coef, var })
    }

    pub fn eval(&self, n: i64, l: i64) -> i64 {
        match self.var {
            None => self.coef,
            Some(Var::N) => self.coef * n,
            Some(Var::L) => self.coef * l,
        }
    }

    pub fn uses(&self, v: Var) -> bool {
        self.var == Some(v)
    }
}

/// Label template: a fixed class or `{{a;b}}` with expressions a, b.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelTemplate {
    AllPlus,
    AllMinus,
    Any,
    Inertia(Expr, Expr),
}

impl LabelTemplate {
    pub fn parse(s: &str) -> Result<Self, AtlasError> {
        match s.trim() {
            "{+}" => Ok(LabelTemplate::AllPlus),
            "{-}" => Ok(LabelTemplate::AllMinus),
            "{{±}}" => Ok(LabelTemplate::Any),
            t => {
                let inner = t
                    .strip_prefix("{{")
                    .and_then(|x| x.strip_suffix("}}"))
                    .ok_or_else(|| AtlasError::Template(t.to_string()))?;
                let (a, b) = inner.split_once(';').ok_or_else(|| AtlasError::Template(t.to_string()))?;
                Ok(LabelTemplate::Inertia(Expr::parse(a)?, Expr::parse(b)?))
            }
        }
    }

    pub fn uses(&self, v: Var) -> bool {
        match self {
            LabelTemplate::Inertia(a, b) => a.uses(v) || b.uses(v),
            _ => false,
        }
    }

    /// The concrete class at (n, l) for matrix size `size`.
    pub fn instantiate(&self, size: usize, n: i64, l: i64) -> Option<LabelClass> {
        match self {
            LabelTemplate::AllPlus => Some(LabelClass::AllPlus),
            LabelTemplate::AllMinus => Some(LabelClass::AllMinus),
            LabelTemplate::Any => Some(LabelClass::Any),
            LabelTemplate::Inertia(a, b) => {
                let (a, b) = (a.eval(n, l), b.eval(n, l));
                (a == size as i64 && b >= 0 && 2 * b <= a).then_some(LabelClass::Inertia {
                    n: a as usize,
                    l: b as usize,
                })
            }
        }
    }

    /// Whether inertia `l_actual` at matrix size `size` is covered, and
    /// the template parameter l it corresponds to.
    fn solve(&self, size: usize, n: i64, l_actual: usize) -> Option<Option<i64>> {
        let l_actual = l_actual as i64;
        match self {
            LabelTemplate::AllPlus => (l_actual == 0).then_some(None),
            LabelTemplate::AllMinus => (l_actual == size as i64 / 2).then_some(None),
            LabelTemplate::Any => Some(None),
            LabelTemplate::Inertia(a, b) => {
                if a.eval(n, 0) != size as i64 {
                    return None;
                }
                match b.var {
                    Some(Var::L) => (l_actual % b.coef == 0).then_some(Some(l_actual / b.coef)),
                    _ => (b.eval(n, 0) == l_actual).then_some(None),
                }
            }
        }
    }
}

impl Family {
    pub fn uses(&self, v: Var) -> bool {
        [&self.size, &self.q]
            .into_iter()
            .flatten()
            .any(|e| Expr::parse(e).map(|x| x.uses(v)).unwrap_or(false))
    }

    pub fn eval(&self, n: i64, l: i64) -> Option<Expected> {
        if self.series == "exceptional" {
            let name = self.name.as_deref()?;
            return atlas().exceptional.iter().find(|e| e.name == name).cloned();
        }
        let size = Expr::parse(self.size.as_deref()?).ok()?.eval(n, l);
        let q = Expr::parse(self.q.as_deref().unwrap_or("0")).ok()?.eval(n, l);
        family_value(&self.series, size, q)
    }
}

/// One concrete atlas expectation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtlasEntry {
    pub k1: String,
    pub k2: String,
    pub n: usize,
    pub l: usize,
    pub expected: Expected,
    pub source: String,
    pub verified_by: VerifiedBy,
}

fn same_pair(a1: &str, a2: &str, b1: &str, b2: &str) -> bool {
    (a1 == b1 && a2 == b2) || (a1 == b2 && a2 == b1)
}

/// der(K₁)⊕der(K₂) as named in the atlas.
pub fn derivation_expectation(k1: &str, k2: &str) -> Option<Expected> {
    let find = |k: &str| atlas().derivations.iter().find(|d| d.k == k);
    let (a, b) = (find(k1)?, find(k2)?);
    let names: Vec<&str> = [a, b].iter().filter(|d| d.dim > 0).map(|d| d.name.as_str()).collect();
    Some(Expected {
        name: if names.is_empty() { "0".into() } else { names.join("+") },
        dim: a.dim + b.dim,
        character: a.character + b.character,
    })
}

/// The atlas expectation for factors (k1, k2), matrix size n and
/// normalized inertia l. Factor order does not matter.
pub fn expected_for(k1: &str, k2: &str, n: usize, l: usize) -> Option<AtlasEntry> {
    let entry = |expected: Expected, source: &str, verified_by| AtlasEntry {
        k1: k1.to_string(),
        k2: k2.to_string(),
        n,
        l,
        expected,
        source: source.to_string(),
        verified_by,
    };
    if n == 1 {
        return derivation_expectation(k1, k2).map(|e| entry(e, "derivations", VerifiedBy::Constructed));
    }
    for s in &atlas().square {
        if s.n == n && same_pair(&s.k1, &s.k2, k1, k2) {
            let hit = s.expected.iter().find(|e| e.l.is_none() || e.l == Some(l))?;
            let e = Expected {
                name: hit.name.clone(),
                dim: hit.dim,
                character: hit.character,
            };
            return Some(entry(e, &s.source, VerifiedBy::Constructed));
        }
    }
    for row in &atlas().rows {
        for p in &row.recipes {
            if !same_pair(&p.k1, &p.k2, k1, k2) {
                continue;
            }
            let (Ok(ne), Ok(lt)) = (Expr::parse(&p.n), LabelTemplate::parse(&p.labels)) else {
                continue;
            };
            let n_param = match ne.var {
                Some(Var::N) if n as i64 % ne.coef == 0 => n as i64 / ne.coef,
                None if ne.coef == n as i64 => 0,
                _ => continue,
            };
            let Some(l_param) = lt.solve(n, n_param, l) else { continue };
            let l_param = l_param.unwrap_or(0);
            if let Some(e) = row.family.eval(n_param, l_param) {
                return Some(entry(e, &row.source, p.verified_by));
            }
        }
    }
    None
}

/// Atlas name for the n = 2 unitary octonionic family.
pub fn u2_label(k: &str, l: usize) -> Option<String> {
    expected_for(k, "R", 2, l).map(|e| e.expected.name)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub name: String,
    pub dim: usize,
    pub character: i64,
    /// True when the recipe's atlas entry names this algebra.
    pub designated: bool,
}

/// Catalog algebras with the report's (dim, character). The entry the
/// atlas designates for `provenance` comes first, then exceptional forms,
/// then classical ones, then doubles.
pub fn identify(report: &KillingReport, provenance: Option<&Recipe>) -> Result<Vec<Candidate>, AtlasError> {
    let designated = provenance.and_then(|r| {
        let labels = r.labels.first(r.n).ok()?;
        let m = crate::metric::build_metric(r.n, &labels).ok()?;
        expected_for(&r.k1, &r.k2, r.n, m.l).map(|e| e.expected.name)
    });
    let mut out: Vec<Candidate> = catalog()
        .iter()
        .filter(|c| c.dim == report.dim as i64 && c.character == report.character)
        .map(|c| Candidate {
            name: c.name.clone(),
            dim: report.dim,
            character: report.character,
            designated: designated.as_deref() == Some(c.name.as_str()),
        })
        .collect();
    if out.is_empty() {
        return Err(AtlasError::UnknownAlgebra {
            dim: report.dim,
            character: report.character,
        });
    }
    let exceptional = |name: &str| atlas().exceptional.iter().any(|e| e.name == name);
    out.sort_by_key(|c| (!c.designated, !exceptional(&c.name), c.name.contains('+')));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_file_round_trips() {
        assert_eq!(to_text(atlas()), ATLAS_JSON);
    }

    #[test]
    fn templates() {
        assert_eq!(Expr::parse("2n").unwrap().eval(3, 1), 6);
        assert_eq!(Expr::parse("3").unwrap().eval(9, 9), 3);
        assert!(Expr::parse("xn").is_err());
        let t = LabelTemplate::parse("{{2n;2l}}").unwrap();
        assert_eq!(t.instantiate(6, 3, 1), Some(LabelClass::Inertia { n: 6, l: 2 }));
        assert_eq!(t.instantiate(6, 3, 2), None);
    }

    #[test]
    fn lookups() {
        let e = expected_for("O", "R", 3, 1).unwrap();
        assert_eq!(e.expected.name, "f4(-20)");
        assert_eq!(expected_for("Os", "O", 3, 0).unwrap().expected.character, -24);
        assert_eq!(expected_for("R", "R", 4, 1).unwrap().expected.name, "so(3,1)");
        assert_eq!(expected_for("Cs", "R", 5, 2).unwrap().expected.name, "sl(5,R)");
        assert_eq!(expected_for("O", "R", 1, 0).unwrap().expected.name, "g2(-14)");
        assert_eq!(u2_label("O", 1).as_deref(), Some("so(8,1)"));
        assert_eq!(u2_label("Os", 0).as_deref(), Some("so(5,4)"));
    }
}
