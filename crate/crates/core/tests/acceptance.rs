//! Acceptance run. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use magic_core::atlas::tables::{generate_square, verify_reverse_tables, Status, GRAND};
use magic_core::atlas::{self, to_text, VerifiedBy};
use magic_core::cd::{
    check_alternative, check_artin, check_composition, check_moufang, derivation_basis, gram_signature,
    leibniz_derivations, SignSequence, Unit,
};
use magic_core::descriptor::parse_factor;
use magic_core::liealg::{analyze, check_jacobi, invariance_check, to_json, LieAlgebra};
use magic_core::metric::LabelClass;
use magic_core::vinberg::{build_lie_algebra, build_with_labels, predict_u2, Recipe, Space};

type Check = Result<String, String>;

fn recipe(k1: &str, k2: &str, n: usize, labels: &str) -> Recipe {
    Recipe::new(k1, k2, n, labels.parse().expect("label class"))
}

fn build(r: &Recipe) -> Result<LieAlgebra, String> {
    build_lie_algebra(r).map(|b| b.lie).map_err(|e| format!("{r}: {e}"))
}

/// Builds, checks Jacobi exactly and returns (dim, character).
fn lie_values(r: &Recipe) -> Result<(usize, i64), String> {
    let lie = build(r)?;
    check_jacobi(&lie).map_err(|v| format!("{r}: Jacobi fails at {:?}", v.triple))?;
    let k = analyze(&lie);
    Ok((k.dim, k.character))
}

fn expect(r: &Recipe, want: (usize, i64)) -> Result<(), String> {
    let got = lie_values(r)?;
    if got == want {
        Ok(())
    } else {
        Err(format!("{r}: got {got:?}, want {want:?}"))
    }
}

// Values as printed in the exceptional-algebra table.
const EXCEPTIONAL: [(&str, &str, &str, usize, i64); 17] = [
    ("O", "R", "{+}", 52, -52),
    ("O", "R", "{{3;1}}", 52, -20),
    ("Os", "R", "{+}", 52, 4),
    ("C", "O", "{+}", 78, -78),
    ("Cs", "O", "{+}", 78, -26),
    ("C", "O", "{{3;1}}", 78, -14),
    ("C", "Os", "{+}", 78, 2),
    ("Cs", "Os", "{+}", 78, 6),
    ("H", "O", "{+}", 133, -133),
    ("Hs", "O", "{+}", 133, -25),
    ("H", "O", "{{3;1}}", 133, -5),
    ("H", "Os", "{+}", 133, -5),
    ("Hs", "Os", "{+}", 133, 7),
    ("O", "O", "{+}", 248, -248),
    ("O", "Os", "{+}", 248, -24),
    ("O", "O", "{{3;1}}", 248, 8),
    ("Os", "Os", "{+}", 248, 8),
];

fn exceptional_row() -> Check {
    let mut slowest = 0f64;
    for (k1, k2, l, d, c) in EXCEPTIONAL {
        let t = Instant::now();
        expect(&recipe(k1, k2, 3, l), (d, c))?;
        slowest = slowest.max(t.elapsed().as_secs_f64());
    }
    Ok(format!("17 recipes exact, Jacobi zero, slowest {slowest:.2}s"))
}

fn g2() -> Check {
    expect(&recipe("O", "R", 1, "{+}"), (14, -14))?;
    expect(&recipe("Os", "R", 1, "{+}"), (14, 2))?;
    Ok("der O = (14,-14), der Os = (14,2)".into())
}

fn grand_square() -> Check {
    let spot = [
        ("R", "R", "{+}", (3, -3)),
        ("C", "R", "{+}", (8, -8)),
        ("C", "R", "{{3;1}}", (8, 0)),
        ("H", "R", "{+}", (21, -21)),
        ("H", "R", "{{3;1}}", (21, -5)),
        ("Hs", "R", "{+}", (21, 3)),
        ("C", "C", "{+}", (16, -16)),
        ("C", "H", "{+}", (35, -35)),
    ];
    for (k1, k2, l, want) in spot {
        expect(&recipe(k1, k2, 3, l), want)?;
    }
    for labels in LabelClass::Any.representatives(3).unwrap() {
        expect(&Recipe::new("Cs", "R", 3, LabelClass::Explicit(labels)), (8, 2))?;
    }
    let classes: Vec<LabelClass> = ["{+}", "{-}", "{{3;1}}"].iter().map(|s| s.parse().unwrap()).collect();
    let cells = generate_square(3, &GRAND, &GRAND, &classes);
    if let Some(c) = cells.iter().find(|c| c.status != Status::Match) {
        return Err(format!("cell {} {} {} is {}", c.k1, c.k2, c.labels, c.status.tag()));
    }
    for c in &cells {
        let twin = cells
            .iter()
            .find(|d| d.k1 == c.k2 && d.k2 == c.k1 && d.labels == c.labels)
            .unwrap();
        if (twin.dim, twin.character) != (c.dim, c.character) {
            return Err(format!("swap asymmetry at {} {}", c.k1, c.k2));
        }
    }
    Ok(format!("{} cells match atlas names, symmetric under swap", cells.len()))
}

fn closure() -> Check {
    let plain = ["R", "C", "Cs", "H", "Hs"];
    let mut built = 0;
    for (i, k1) in plain.iter().enumerate() {
        for k2 in &plain[i..] {
            for n in 2..=5 {
                for l in 0..=n / 2 {
                    lie_values(&Recipe::new(k1, k2, n, LabelClass::Inertia { n, l }))?;
                    built += 1;
                }
            }
        }
    }
    let mut triples = Vec::new();
    for n in [2, 4] {
        let lie = build(&recipe("O", "R", n, "{+}").forced())?;
        match check_jacobi(&lie) {
            Ok(()) => return Err(format!("forced O at n = {n} satisfies Jacobi")),
            Err(v) => triples.push(format!("n={n} {:?}", v.triple)),
        }
    }
    Ok(format!("{built} builds close with Jacobi; O violations {}", triples.join(", ")))
}

fn quaternionic_equivalence() -> Check {
    for n in 2..=4usize {
        let su = lie_values(&recipe("H", "R", n, "{+}").with_space(Space::SpecialUnitary))?;
        let u = lie_values(&recipe("H", "R", n, "{+}").with_space(Space::FullAntihermitian))?;
        if su != u || su.0 != 2 * n * n + n {
            return Err(format!("n = {n}: su {su:?}, full {u:?}"));
        }
    }
    Ok("su and full antihermitian agree for n = 2, 3, 4".into())
}

fn split_complex_independence() -> Check {
    let mut count = 0;
    for n in [3usize, 4] {
        let want = (n * n - 1, n as i64 - 1);
        for labels in LabelClass::Any.representatives(n).unwrap() {
            expect(&Recipe::new("Cs", "R", n, LabelClass::Explicit(labels)), want)?;
            count += 1;
        }
    }
    Ok(format!("{count} label lists give (n^2-1, n-1)"))
}

fn identity_suite() -> Check {
    use Unit::{Elliptic as E, Hyperbolic as H};
    let mut algebras = 0;
    for len in 0..=3 {
        for bits in 0..1u32 << len {
            let signs = SignSequence((0..len).map(|p| if bits >> p & 1 == 1 { H } else { E }).collect());
            let a = magic_core::cd::build_cd(&signs).map_err(|e| e.to_string())?;
            check_alternative(&a).map_err(|t| format!("cd:{signs} not alternative at {t:?}"))?;
            check_artin(&a).map_err(|t| format!("cd:{signs} Artin fails at {t:?}"))?;
            check_moufang(&a).map_err(|t| format!("cd:{signs} Moufang fails at {t:?}"))?;
            check_composition(&a).map_err(|_| format!("cd:{signs} not composition"))?;
            algebras += 1;
        }
    }
    let sed = parse_factor("cd:++++").unwrap();
    if check_composition(&sed.alg).is_ok() {
        return Err("sedenions pass the composition check".into());
    }
    let expected = [(0, (1, 0)), (0, (2, 0)), (0, (1, 1)), (3, (4, 0)), (3, (2, 2)), (14, (8, 0)), (14, (4, 4))];
    for (name, (der, gram)) in ["R", "C", "Cs", "H", "Hs", "O", "Os"].iter().zip(expected) {
        let f = parse_factor(name).unwrap();
        let solved = leibniz_derivations(&f.alg).len();
        let inner = derivation_basis(&f.alg, false).len();
        let g = gram_signature(&f.alg);
        if solved != der || inner != der || (g.plus, g.minus) != gram {
            return Err(format!("{name}: der {solved}/{inner}, gram ({}, {})", g.plus, g.minus));
        }
    }
    Ok(format!("{algebras} algebras pass all identities; sedenion counterexample found"))
}

fn octonionic_counting() -> Check {
    for (k, l, name) in [("O", "{+}", "so(9)"), ("O", "{-}", "so(8,1)"), ("Os", "{+}", "so(5,4)"), ("Os", "{-}", "so(5,4)")] {
        let p = predict_u2(k, &l.parse().unwrap()).map_err(|e| e.to_string())?;
        if p.dim != 36 || p.label.as_deref() != Some(name) {
            return Err(format!("{k} {l}: {} {:?}", p.dim, p.label));
        }
    }
    Ok("36 = so(9), so(8,1), so(5,4)".into())
}

fn reverse_tables() -> Check {
    let mut notes = Vec::new();
    for id in ["II", "III"] {
        let rows = verify_reverse_tables(id, 4, 256);
        if let Some(r) = rows.iter().find(|r| r.status != Status::Match) {
            return Err(format!("Table {id} {} n={:?} l={:?} is {}", r.row, r.n, r.l, r.status.tag()));
        }
        notes.push(format!("{id}: {} match", rows.len()));
    }
    let rows = verify_reverse_tables("I", 4, 256);
    let mut reported = 0;
    for r in &rows {
        for c in &r.checks {
            if c.strategies.is_empty() {
                return Err(format!("Table I {} has an unconstructed check", r.row));
            }
            for s in &c.strategies {
                let honest = !s.verified
                    || (s.jacobi
                        && s.closure_failures == 0
                        && s.semisimple
                        && s.dim == Some(r.expected.dim as usize)
                        && s.character == Some(r.expected.character));
                if !honest {
                    return Err(format!("{} {} passes without meeting the criteria", c.recipe, s.space));
                }
            }
            let any = c.strategies.iter().any(|s| s.verified);
            if any != (c.status == Status::Match) {
                return Err(format!("{} status disagrees with its strategies", c.recipe));
            }
            if c.strategies.len() > 1 {
                reported += 1;
            }
        }
    }
    let std_fail = rows
        .iter()
        .flat_map(|r| &r.checks)
        .filter(|c| c.strategies.len() == 1 && c.status != Status::Match)
        .count();
    if std_fail > 0 {
        return Err(format!("{std_fail} standard-star Table I checks fail"));
    }
    notes.push(format!("I: {} instances, {reported} per-strategy reports", rows.len()));
    let v = verify_reverse_tables("V", 4, 256);
    let tensor_counting = v
        .iter()
        .flat_map(|r| &r.checks)
        .filter(|c| c.verified_by == VerifiedBy::CountingOnly && c.status == Status::CountingOnly)
        .count();
    if v.iter().any(|r| r.status.is_failure()) {
        return Err("Table V has a failing row".into());
    }
    notes.push(format!("V: {tensor_counting} counting_only"));
    Ok(notes.join("; "))
}

fn invariance() -> Check {
    let (mut exhaustive, mut sampled) = (0, 0);
    let mut recipes: Vec<Recipe> = EXCEPTIONAL.iter().map(|(a, b, l, _, _)| recipe(a, b, 3, l)).collect();
    for k1 in GRAND {
        for k2 in GRAND {
            for l in ["{+}", "{{3;1}}"] {
                recipes.push(recipe(k1, k2, 3, l));
            }
        }
    }
    for r in &recipes {
        let lie = build(r)?;
        invariance_check(&lie, 10_000, 7).map_err(|t| format!("{r}: invariance fails at {t:?}"))?;
        if lie.dim <= 60 {
            exhaustive += 1;
        } else {
            sampled += 1;
        }
    }
    Ok(format!("{exhaustive} builds exhaustive, {sampled} with 10^4 samples"))
}

fn artifacts() -> Vec<String> {
    let classes: Vec<LabelClass> = ["{+}", "{{3;1}}"].iter().map(|s| s.parse().unwrap()).collect();
    let mut out = vec![
        serde_json::to_string_pretty(&generate_square(3, &GRAND, &GRAND, &classes)).unwrap(),
        to_text(atlas::atlas()),
    ];
    for id in ["I", "II", "III", "IV", "V"] {
        out.push(serde_json::to_string_pretty(&verify_reverse_tables(id, 4, 256)).unwrap());
    }
    for (k1, k2, l, _, _) in [EXCEPTIONAL[14], EXCEPTIONAL[8]] {
        let r = recipe(k1, k2, 3, l);
        let labels = r.labels.first(3).unwrap();
        out.push(to_json(&build_with_labels(&r, &labels).unwrap().lie));
    }
    out
}

fn determinism() -> Check {
    let a = artifacts();
    let b = artifacts();
    if a != b {
        return Err("artifacts differ between runs".into());
    }
    if to_text(atlas::atlas()) != atlas::ATLAS_JSON {
        return Err("atlas file does not round-trip".into());
    }
    let bytes: usize = a.iter().map(|s| s.len()).sum();
    Ok(format!("{} artifacts, {bytes} bytes, identical", a.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("exceptional row", exceptional_row),
        ("g2 at n = 1", g2),
        ("grand square at n = 3", grand_square),
        ("closure", closure),
        ("quaternionic equivalence", quaternionic_equivalence),
        ("split complex inertia independence", split_complex_independence),
        ("algebra identity suite", identity_suite),
        ("n = 2 octonionic counting", octonionic_counting),
        ("reverse tables", reverse_tables),
        ("Killing ad-invariance", invariance),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = run();
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(d) => println!("criterion {:2} PASS {name}: {d} [{secs:.1}s]", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:2} FAIL {name}: {e} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
