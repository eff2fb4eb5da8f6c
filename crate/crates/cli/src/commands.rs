use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use magic_core::atlas::tables::{
    format_rows_text, format_square_text, generate_square, verify_reverse_tables, RowCheck, SquareCell, Status,
    COMPACT, GRAND, SPLIT,
};
use magic_core::atlas::{identify as atlas_identify, Candidate};
use magic_core::cd::{
    check_alternative, check_artin, check_composition, check_moufang, format_table, gram_signature, is_associative,
    is_commutative, leibniz_derivations, Element, MonomialAlgebra,
};
use magic_core::descriptor::{parse_descriptor, Descriptor};
use magic_core::liealg::{
    analyze as killing, check_jacobi, from_json, invariance_check, rank_estimate, to_json, KillingReport, LieAlgebra,
};
use magic_core::metric::LabelClass;
use magic_core::tensor::tensor_derivation_basis;
use magic_core::vinberg::{build_lie_algebra, Recipe, Space, VinbergError};

use crate::output::{csv, json, opt};
use crate::{Failure, Format, Outcome, Settings};

const CHECKS: [&str; 6] = ["alternative", "artin", "moufang", "composition", "associative", "commutative"];

#[derive(Args)]
pub struct AlgebraArgs {
    /// `O`, `Cs*Hs`, `cd:++;star=rev3`, ...
    descriptor: String,
    /// Comma list from alternative, artin, moufang, composition,
    /// associative, commutative, or `all`.
    #[arg(long, value_delimiter = ',')]
    check: Vec<String>,
    #[arg(long)]
    no_table: bool,
}

#[derive(Serialize)]
struct CheckResult {
    check: String,
    ok: bool,
    counterexample: Option<String>,
}

#[derive(Serialize)]
struct AlgebraReport {
    descriptor: String,
    dim: usize,
    star: Vec<i8>,
    derivations: usize,
    gram_plus: usize,
    gram_minus: usize,
    checks: Vec<CheckResult>,
    table: Vec<String>,
}

fn element_text(x: &Element) -> String {
    let terms: Vec<String> = x
        .0
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("{c}*e{i}"))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn run_check<A: MonomialAlgebra>(alg: &A, name: &str) -> CheckResult {
    let cx = match name {
        "alternative" => check_alternative(alg).err().map(|t| format!("associator not alternating at e{}, e{}, e{}", t[0], t[1], t[2])),
        "artin" => check_artin(alg).err().map(|(i, j)| format!("subalgebra generated by e{i}, e{j} is not associative")),
        "moufang" => check_moufang(alg).err().map(|t| format!("Moufang identity fails at e{}, e{}, e{}", t[0], t[1], t[2])),
        "composition" => check_composition(alg)
            .err()
            .map(|(x, y)| format!("N(xy) != N(x)N(y) for x = {}, y = {}", element_text(&x), element_text(&y))),
        "associative" => (!is_associative(alg)).then(|| "some basis associator is nonzero".to_string()),
        _ => (!is_commutative(alg)).then(|| "some basis commutator is nonzero".to_string()),
    };
    CheckResult {
        check: name.into(),
        ok: cx.is_none(),
        counterexample: cx,
    }
}

fn derivation_count(d: &Descriptor) -> usize {
    if d.is_single() {
        leibniz_derivations(&d.k1.alg).len()
    } else {
        tensor_derivation_basis(&d.tensor(), false).len()
    }
}

pub fn algebra(a: &AlgebraArgs, s: &Settings) -> Result<Outcome, Failure> {
    let d = parse_descriptor(&a.descriptor).map_err(Failure::input)?;
    let mut names: Vec<&str> = Vec::new();
    for c in &a.check {
        match c.trim() {
            "all" => names.extend(CHECKS),
            x if CHECKS.contains(&x) => names.push(CHECKS.iter().find(|&&k| k == x).unwrap()),
            x => return Err(Failure::input(format!("unknown check {x:?}"))),
        }
    }
    names.dedup();
    let t = d.tensor();
    let gram = gram_signature(&t);
    let report = AlgebraReport {
        descriptor: d.to_string(),
        dim: t.dim(),
        star: (0..t.dim()).map(|i| t.star_sign(i)).collect(),
        derivations: derivation_count(&d),
        gram_plus: gram.plus,
        gram_minus: gram.minus,
        checks: names.iter().map(|n| run_check(&t, n)).collect(),
        table: format_table(&t).lines().map(String::from).collect(),
    };
    let ok = report.checks.iter().all(|c| c.ok);
    let text = match s.format {
        Format::Structured => json(&report),
        Format::Csv => csv(
            &["check", "ok", "counterexample"],
            &report
                .checks
                .iter()
                .map(|c| vec![c.check.clone(), c.ok.to_string(), opt(&c.counterexample)])
                .collect::<Vec<_>>(),
        ),
        Format::Text => {
            let mut o = format!("algebra {} (dim {})\n", report.descriptor, report.dim);
            if !a.no_table {
                for line in &report.table {
                    o.push_str("  ");
                    o.push_str(line);
                    o.push('\n');
                }
            }
            let star: Vec<&str> = report.star.iter().map(|&x| if x > 0 { "+" } else { "-" }).collect();
            o.push_str(&format!("star {}\n", star.join("")));
            o.push_str(&format!("inner product signature (+{}, -{})\n", gram.plus, gram.minus));
            o.push_str(&format!("derivations {}\n", report.derivations));
            for c in &report.checks {
                match &c.counterexample {
                    None => o.push_str(&format!("{}: ok\n", c.check)),
                    Some(x) => o.push_str(&format!("{}: FAILED, {x}\n", c.check)),
                }
            }
            o
        }
    };
    Ok(Outcome { text, ok })
}

#[derive(Args)]
pub struct BuildArgs {
    /// Full recipe text, `su(n=3, k1=O, k2=Os, labels={+})`; overrides the
    /// individual flags.
    #[arg(long)]
    recipe: Option<String>,
    #[arg(long)]
    k1: Option<String>,
    #[arg(long, default_value = "R")]
    k2: String,
    #[arg(long)]
    n: Option<usize>,
    /// `{+}`, `{-}`, `{{n;l}}`, `{{±}}` (first representative) or `+,-,...`.
    #[arg(long, default_value = "{+}", allow_hyphen_values = true)]
    labels: String,
    #[arg(long, value_parser = ["su", "u", "du"])]
    space: Option<String>,
    /// Build even when the bracket leaves the space or Jacobi may fail.
    #[arg(long)]
    force: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn recipe_from(a: &BuildArgs) -> Result<Recipe, Failure> {
    if let Some(r) = &a.recipe {
        return r.parse().map_err(Failure::input);
    }
    let k1 = a.k1.as_deref().ok_or_else(|| Failure::input("--k1 or --recipe is required"))?;
    let n = a.n.ok_or_else(|| Failure::input("--n is required"))?;
    if n == 0 {
        return Err(Failure::input("n must be at least 1"));
    }
    let labels: LabelClass = a.labels.parse().map_err(Failure::input)?;
    let mut r = Recipe::new(k1, &a.k2, n, labels);
    if let Some(sp) = &a.space {
        r = r.with_space(Space::from_tag(sp).expect("clap restricts the values"));
    }
    if a.force {
        r = r.forced();
    }
    Ok(r)
}

pub fn build(a: &BuildArgs, s: &Settings) -> Result<Outcome, Failure> {
    let recipe = recipe_from(a)?;
    parse_descriptor(&recipe.descriptor()).map_err(Failure::input)?;
    recipe.labels.first(recipe.n).map_err(Failure::input)?;
    let built = build_lie_algebra(&recipe).map_err(|e| match e {
        VinbergError::Descriptor(_) | VinbergError::Metric(_) | VinbergError::Recipe(_) => Failure::input(e),
        e => Failure::check(e),
    })?;
    let lie = &built.lie;
    if let Some(path) = &a.out {
        std::fs::write(path, to_json(lie)).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    #[derive(Serialize)]
    struct BuildReport<'a> {
        recipe: String,
        space: &'a str,
        dim: usize,
        basis_head: Vec<&'a str>,
        closure_failures: usize,
        non_lie: bool,
        out: Option<String>,
    }
    let report = BuildReport {
        recipe: lie.meta.recipe.clone(),
        space: built.space.tag(),
        dim: lie.dim,
        basis_head: lie.basis.iter().take(6).map(String::as_str).collect(),
        closure_failures: built.failures.len(),
        non_lie: lie.meta.non_lie,
        out: a.out.as_ref().map(|p| p.display().to_string()),
    };
    let text = match s.format {
        Format::Structured => json(&report),
        Format::Csv => csv(
            &["recipe", "space", "dim", "closure_failures", "non_lie"],
            &[vec![
                report.recipe.clone(),
                report.space.into(),
                report.dim.to_string(),
                report.closure_failures.to_string(),
                report.non_lie.to_string(),
            ]],
        ),
        Format::Text => {
            let mut o = format!("{}\nspace {}\ndim {}\n", report.recipe, report.space, report.dim);
            let more = if lie.dim > report.basis_head.len() { " ..." } else { "" };
            o.push_str(&format!("basis {}{more}\n", report.basis_head.join(" ")));
            if let Some(f) = built.failures.first() {
                o.push_str(&format!(
                    "closure failures {} (first: [{}, {}] {})\n",
                    built.failures.len(),
                    lie.basis[f.a],
                    lie.basis[f.b],
                    f.reason
                ));
            }
            if lie.meta.non_lie {
                o.push_str("marked non_lie\n");
            }
            if let Some(p) = &report.out {
                o.push_str(&format!("wrote {p}\n"));
            }
            o
        }
    };
    Ok(Outcome { text, ok: true })
}

fn read_algebra(path: &PathBuf) -> Result<LieAlgebra, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    from_json(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn candidates_for(lie: &LieAlgebra, report: &KillingReport) -> Vec<Candidate> {
    let provenance: Option<Recipe> = lie.meta.recipe.parse().ok();
    atlas_identify(report, provenance.as_ref()).unwrap_or_default()
}

#[derive(Args)]
pub struct AnalyzeArgs {
    path: PathBuf,
    /// Estimate the rank from seeded random elements.
    #[arg(long)]
    rank: bool,
    #[arg(long)]
    trials: Option<usize>,
    /// Check ad-invariance of the Killing form (exhaustive up to dim 60).
    #[arg(long)]
    invariance: bool,
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Serialize)]
struct AnalyzeReport {
    recipe: String,
    non_lie: bool,
    dim: usize,
    jacobi_violation: Option<[usize; 3]>,
    killing: KillingReport,
    compact: bool,
    rank: Option<usize>,
    invariance_violation: Option<Option<[usize; 3]>>,
    candidates: Vec<Candidate>,
}

pub fn analyze(a: &AnalyzeArgs, s: &Settings) -> Result<Outcome, Failure> {
    let lie = read_algebra(&a.path)?;
    let jacobi = check_jacobi(&lie).err().map(|v| [v.triple.0, v.triple.1, v.triple.2]);
    let k = killing(&lie);
    let rank = if a.rank && k.semisimple {
        let trials = a.trials.or(s.config.trials).unwrap_or(5);
        rank_estimate(&lie, trials, s.seed).ok()
    } else {
        None
    };
    let invariance = a.invariance.then(|| {
        let samples = a.samples.or(s.config.samples).unwrap_or(10_000);
        invariance_check(&lie, samples, s.seed).err().map(|(i, j, l)| [i, j, l])
    });
    let report = AnalyzeReport {
        recipe: lie.meta.recipe.clone(),
        non_lie: lie.meta.non_lie,
        dim: lie.dim,
        jacobi_violation: jacobi,
        killing: k,
        compact: k.is_compact(),
        rank,
        invariance_violation: invariance,
        candidates: if jacobi.is_none() { candidates_for(&lie, &k) } else { vec![] },
    };
    let ok = jacobi.is_none() && !matches!(invariance, Some(Some(_)));
    let text = match s.format {
        Format::Structured => json(&report),
        Format::Csv => csv(
            &["recipe", "dim", "jacobi", "n_plus", "n_minus", "n_zero", "character", "rank", "candidates"],
            &[vec![
                report.recipe.clone(),
                report.dim.to_string(),
                if jacobi.is_none() { "ok".into() } else { "violation".into() },
                k.n_plus.to_string(),
                k.n_minus.to_string(),
                k.n_zero.to_string(),
                k.character.to_string(),
                opt(&rank),
                report.candidates.iter().map(|c| c.name.as_str()).collect::<Vec<_>>().join(" "),
            ]],
        ),
        Format::Text => {
            let mut o = format!("recipe {}\ndim {}\n", report.recipe, report.dim);
            match jacobi {
                None => o.push_str("jacobi ok\n"),
                Some(t) => o.push_str(&format!(
                    "jacobi VIOLATION at ({}, {}, {}) = ({}, {}, {})\n",
                    t[0], t[1], t[2], lie.basis[t[0]], lie.basis[t[1]], lie.basis[t[2]]
                )),
            }
            o.push_str(&format!(
                "killing inertia (+{}, -{}, 0:{}) character {}{}\n",
                k.n_plus,
                k.n_minus,
                k.n_zero,
                k.character,
                if k.semisimple { "" } else { " (degenerate)" }
            ));
            if report.compact {
                o.push_str("compact\n");
            }
            if let Some(r) = rank {
                o.push_str(&format!("rank {r}\n"));
            }
            match invariance {
                Some(None) => o.push_str("killing invariance ok\n"),
                Some(Some(t)) => o.push_str(&format!("killing invariance VIOLATION at {t:?}\n")),
                None => {}
            }
            o.push_str(&candidate_text(&report.candidates));
            o
        }
    };
    Ok(Outcome { text, ok })
}

fn candidate_text(c: &[Candidate]) -> String {
    if c.is_empty() {
        return "candidates none\n".into();
    }
    let names: Vec<String> = c
        .iter()
        .map(|x| if x.designated { format!("{}*", x.name) } else { x.name.clone() })
        .collect();
    format!("candidates {}\n", names.join(" "))
}

#[derive(Args)]
pub struct IdentifyArgs {
    /// LieAlgebra file; alternatively give --dim and --character.
    path: Option<PathBuf>,
    #[arg(long, requires = "character", conflicts_with = "path")]
    dim: Option<usize>,
    #[arg(long, allow_hyphen_values = true, requires = "dim")]
    character: Option<i64>,
}

pub fn identify(a: &IdentifyArgs, s: &Settings) -> Result<Outcome, Failure> {
    let (report, provenance) = match (&a.path, a.dim, a.character) {
        (Some(p), _, _) => {
            let lie = read_algebra(p)?;
            if let Err(v) = check_jacobi(&lie) {
                return Err(Failure::check(format!("not a Lie algebra: Jacobi fails at {:?}", v.triple)));
            }
            (killing(&lie), lie.meta.recipe.parse::<Recipe>().ok())
        }
        (None, Some(dim), Some(character)) => {
            let n_plus = ((dim as i64 + character) / 2).max(0) as usize;
            if (dim as i64 + character) % 2 != 0 || n_plus > dim {
                return Err(Failure::input("dim and character must have the same parity and |character| <= dim"));
            }
            let report = KillingReport {
                dim,
                n_plus,
                n_minus: dim - n_plus,
                n_zero: 0,
                character,
                semisimple: true,
            };
            (report, None)
        }
        _ => return Err(Failure::input("give a file or both --dim and --character")),
    };
    let cands = atlas_identify(&report, provenance.as_ref()).map_err(Failure::check)?;
    let text = match s.format {
        Format::Structured => json(&cands),
        Format::Csv => csv(
            &["name", "dim", "character", "designated"],
            &cands
                .iter()
                .map(|c| vec![c.name.clone(), c.dim.to_string(), c.character.to_string(), c.designated.to_string()])
                .collect::<Vec<_>>(),
        ),
        Format::Text => format!("dim {} character {}\n{}", report.dim, report.character, candidate_text(&cands)),
    };
    Ok(Outcome { text, ok: true })
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FactorSet {
    /// R, C, H, O against themselves.
    Compact,
    /// R, Cs, Hs, Os against themselves.
    Split,
    /// Split rows against compact columns.
    Mixed,
    /// All seven classes.
    Grand,
}

#[derive(Args)]
pub struct SquareArgs {
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Same as --set grand.
    #[arg(long)]
    grand: bool,
    #[arg(long, value_enum, default_value = "compact")]
    set: FactorSet,
    /// Label classes, repeatable; default {+} and each {{n;l}} with l >= 1.
    #[arg(long, allow_hyphen_values = true)]
    labels: Vec<String>,
}

fn square_rows(cells: &[SquareCell]) -> Vec<Vec<String>> {
    cells
        .iter()
        .map(|c| {
            let e = c.expected.as_ref();
            vec![
                c.k1.clone(),
                c.k2.clone(),
                c.n.to_string(),
                c.labels.clone(),
                c.l.to_string(),
                opt(&c.dim),
                opt(&c.character),
                e.map(|e| e.name.clone()).unwrap_or_default(),
                opt(&e.map(|e| e.dim)),
                opt(&e.map(|e| e.character)),
                opt(&c.source),
                c.status.tag().into(),
            ]
        })
        .collect()
}

pub fn square(a: &SquareArgs, s: &Settings) -> Result<Outcome, Failure> {
    if a.n == 0 {
        return Err(Failure::input("n must be at least 1"));
    }
    let set = if a.grand { FactorSet::Grand } else { a.set };
    let (rows, cols): (&[&str], &[&str]) = match set {
        FactorSet::Compact => (&COMPACT, &COMPACT),
        FactorSet::Split => (&SPLIT, &SPLIT),
        FactorSet::Mixed => (&SPLIT, &COMPACT),
        FactorSet::Grand => (&GRAND, &GRAND),
    };
    let classes: Vec<LabelClass> = if a.labels.is_empty() {
        std::iter::once(LabelClass::AllPlus)
            .chain((1..=a.n / 2).map(|l| LabelClass::Inertia { n: a.n, l }))
            .collect()
    } else {
        a.labels.iter().map(|x| x.parse().map_err(Failure::input)).collect::<Result<_, _>>()?
    };
    for c in &classes {
        c.first(a.n).map_err(Failure::input)?;
    }
    if s.verbose > 0 {
        eprintln!("building {} cells", rows.len() * cols.len() * classes.len());
    }
    let cells = generate_square(a.n, rows, cols, &classes);
    let ok = cells.iter().all(|c| !c.status.is_failure());
    let text = match s.format {
        Format::Structured => json(&cells),
        Format::Csv => csv(
            &[
                "k1", "k2", "n", "labels", "l", "dim", "character", "expected", "expected_dim", "expected_character",
                "source", "status",
            ],
            &square_rows(&cells),
        ),
        Format::Text => {
            let names: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
            let mut o = format!("n = {}, label classes {}\n", a.n, names.join(" / "));
            o.push_str(&format_square_text(&cells, rows, cols));
            let bad: Vec<&SquareCell> = cells.iter().filter(|c| c.status != Status::Match).collect();
            for c in bad {
                o.push_str(&format!(
                    "{} {} {}: {}{}\n",
                    c.k1,
                    c.k2,
                    c.labels,
                    c.status.tag(),
                    c.note.as_deref().map(|x| format!(" ({x})")).unwrap_or_default()
                ));
            }
            o
        }
    };
    Ok(Outcome { text, ok })
}

#[derive(Args)]
pub struct TablesArgs {
    /// I, II, III, IV, V or all.
    #[arg(long, default_value = "all")]
    id: String,
    #[arg(long)]
    max_n: Option<usize>,
    /// Skip instances whose expected dimension exceeds this.
    #[arg(long)]
    cap: Option<usize>,
}

pub fn tables(a: &TablesArgs, s: &Settings) -> Result<Outcome, Failure> {
    const IDS: [&str; 5] = ["I", "II", "III", "IV", "V"];
    let ids: Vec<&str> = match a.id.as_str() {
        "all" => IDS.to_vec(),
        x if IDS.contains(&x) => vec![x],
        x => return Err(Failure::input(format!("unknown table id {x:?}"))),
    };
    let max_n = a.max_n.or(s.config.max_n).unwrap_or(4);
    let cap = a.cap.or(s.config.cap).unwrap_or(256);
    let mut all: Vec<RowCheck> = Vec::new();
    let mut summary = String::new();
    for id in ids {
        if s.verbose > 0 {
            eprintln!("checking Table {id}");
        }
        let rows = verify_reverse_tables(id, max_n, cap);
        let count = |st: Status| rows.iter().filter(|r| r.status == st).count();
        summary.push_str(&format!(
            "Table {id}: {} instances, {} match, {} mismatch, {} counting_only, {} skipped\n",
            rows.len(),
            count(Status::Match),
            count(Status::Mismatch),
            count(Status::CountingOnly),
            count(Status::Skipped)
        ));
        all.extend(rows);
    }
    let ok = all.iter().all(|r| !r.status.is_failure());
    let text = match s.format {
        Format::Structured => json(&all),
        Format::Csv => {
            let mut out = Vec::new();
            for r in &all {
                for c in &r.checks {
                    let base = vec![
                        r.source.clone(),
                        r.row.clone(),
                        opt(&r.n),
                        opt(&r.l),
                        r.expected.name.clone(),
                        r.expected.dim.to_string(),
                        r.expected.character.to_string(),
                        c.recipe.clone(),
                        c.l.to_string(),
                    ];
                    if c.strategies.is_empty() {
                        let mut v = base.clone();
                        v.extend(["".into(), "".into(), "".into(), "".into(), c.status.tag().into()]);
                        out.push(v);
                    }
                    for st in &c.strategies {
                        let mut v = base.clone();
                        v.extend([
                            st.space.clone(),
                            opt(&st.dim),
                            opt(&st.character),
                            st.verified.to_string(),
                            c.status.tag().into(),
                        ]);
                        out.push(v);
                    }
                }
            }
            csv(
                &[
                    "source", "row", "n", "l", "expected", "expected_dim", "expected_character", "recipe",
                    "recipe_l", "space", "dim", "character", "verified", "status",
                ],
                &out,
            )
        }
        Format::Text => format!("{summary}{}", format_rows_text(&all)),
    };
    Ok(Outcome { text, ok })
}
