//! Lie algebras given by exact structure constants, and their analysis.
//!
//! Hot loops run on an integer-scaled copy of the constants: every c^k_ij
//! is multiplied by the common denominator L and stored as `i64`, and
//! quadratic expressions are accumulated in `i128`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::linalg::{inertia_big, rank_mod_prime, Inertia, Matrix, Span};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Meta {
    pub recipe: String,
    pub non_lie: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieAlgebra {
    pub dim: usize,
    pub basis: Vec<String>,
    /// (i, j, k, c^k_ij) with i < j, sorted, no zero coefficients.
    pub sc: Vec<(usize, usize, usize, Rational)>,
    pub meta: Meta,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LieError {
    #[error("algebra is not semisimple (Killing form has {0} null directions)")]
    NotSemisimple(usize),
    #[error("invalid Lie algebra document: {0}")]
    Format(String),
    #[error("integer overflow while scaling structure constants")]
    Overflow,
}

impl LieAlgebra {
    /// Builds the table from a bracket of basis elements. `bracket(i, j)`
    /// is called for i < j only.
    pub fn from_brackets<F>(basis: Vec<String>, meta: Meta, bracket: F) -> Self
    where
        F: Fn(usize, usize) -> Vec<(usize, Rational)> + Sync,
    {
        let dim = basis.len();
        let rows: Vec<Vec<(usize, usize, usize, Rational)>> = (0..dim)
            .into_par_iter()
            .map(|i| {
                let mut out = Vec::new();
                for j in i + 1..dim {
                    let mut v = bracket(i, j);
                    v.retain(|(_, c)| !c.is_zero());
                    v.sort_by_key(|(k, _)| *k);
                    out.extend(v.into_iter().map(|(k, c)| (i, j, k, c)));
                }
                out
            })
            .collect();
        LieAlgebra {
            dim,
            basis,
            sc: rows.into_iter().flatten().collect(),
            meta,
        }
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            basis: (0..dim).map(|i| format!("x{i}")).collect(),
            sc: vec![],
            meta: Meta {
                recipe: String::new(),
                non_lie: false,
            },
        }
    }

    pub fn scaled(&self) -> Result<Scaled, LieError> {
        Scaled::new(self)
    }

    /// [x, y] for coordinate vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::ZERO; self.dim];
        for &(i, j, k, c) in &self.sc {
            let a = x[i] * y[j] - x[j] * y[i];
            if !a.is_zero() {
                out[k] += a * c;
            }
        }
        out
    }
}

/// Integer-scaled, antisymmetrically completed structure constants.
#[derive(Clone, Debug)]
pub struct Scaled {
    pub dim: usize,
    /// Common denominator: true constant = entry / l.
    pub l: i64,
    table: Vec<Vec<(u32, i64)>>,
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

impl Scaled {
    fn new(alg: &LieAlgebra) -> Result<Self, LieError> {
        let mut l = 1i64;
        for (_, _, _, c) in &alg.sc {
            let d = c.denom();
            l = (l / gcd(l, d)).checked_mul(d).ok_or(LieError::Overflow)?;
        }
        let n = alg.dim;
        let mut table = vec![Vec::new(); n * n];
        for &(i, j, k, c) in &alg.sc {
            let v = c
                .numer()
                .checked_mul(l / c.denom())
                .ok_or(LieError::Overflow)?;
            table[i * n + j].push((k as u32, v));
            table[j * n + i].push((k as u32, -v));
        }
        Ok(Scaled { dim: n, l, table })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &[(u32, i64)] {
        &self.table[i * self.dim + j]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    /// Nonzero coefficients of [[e_i,e_j],e_k] + cyclic.
    pub residual: Vec<(usize, Rational)>,
}

/// Exhaustive scan over i < j < k, stopping at the first violation in
/// lexicographic order.
pub fn check_jacobi(alg: &LieAlgebra) -> Result<(), JacobiViolation> {
    let s = alg.scaled().expect("structure constants fit in 64 bits");
    let n = s.dim;
    let l2 = (s.l as i128) * (s.l as i128);
    let found = (0..n).into_par_iter().find_map_first(|i| {
        let mut acc = vec![0i128; n];
        let mut touched: Vec<usize> = Vec::new();
        for j in i + 1..n {
            for k in j + 1..n {
                for &(a, b, c) in &[(i, j, k), (j, k, i), (k, i, j)] {
                    for &(m, c1) in s.get(a, b) {
                        for &(p, c2) in s.get(m as usize, c) {
                            let p = p as usize;
                            if acc[p] == 0 {
                                touched.push(p);
                            }
                            acc[p] += c1 as i128 * c2 as i128;
                        }
                    }
                }
                let mut residual = Vec::new();
                for &p in &touched {
                    if acc[p] != 0 {
                        residual.push(p);
                    }
                }
                if !residual.is_empty() {
                    residual.sort_unstable();
                    residual.dedup();
                    let res = residual
                        .iter()
                        .map(|&p| (p, big_to_rational(acc[p], l2)))
                        .collect();
                    return Some(JacobiViolation {
                        triple: (i, j, k),
                        residual: res,
                    });
                }
                for &p in &touched {
                    acc[p] = 0;
                }
                touched.clear();
            }
        }
        None
    });
    match found {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

fn big_to_rational(num: i128, den: i128) -> Rational {
    let g = num_integer::gcd(num, den);
    let (n, d) = (num / g, den / g);
    Rational::new(
        i64::try_from(n).expect("residual numerator fits"),
        i64::try_from(d).expect("residual denominator fits"),
    )
}

/// Killing form scaled by L²: returns (L², B·L²) as integers.
fn killing_scaled(s: &Scaled) -> (i128, Vec<Vec<i128>>) {
    let n = s.dim;
    // inv[d*n + c] lists (b, c^c_{bd}).
    let mut inv: Vec<Vec<(u32, i64)>> = vec![Vec::new(); n * n];
    for b in 0..n {
        for d in 0..n {
            for &(c, w) in s.get(b, d) {
                inv[d * n + c as usize].push((b as u32, w));
            }
        }
    }
    let rows: Vec<Vec<i128>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut row = vec![0i128; n];
            for c in 0..n {
                for &(d, v) in s.get(a, c) {
                    for &(b, w) in &inv[d as usize * n + c] {
                        row[b as usize] += v as i128 * w as i128;
                    }
                }
            }
            row
        })
        .collect();
    ((s.l as i128) * (s.l as i128), rows)
}

/// B_ab = Σ c^d_{ac} c^c_{bd} = tr(ad_a ad_b).
pub fn killing_form(alg: &LieAlgebra) -> Matrix {
    let s = alg.scaled().expect("structure constants fit in 64 bits");
    let (l2, rows) = killing_scaled(&s);
    let n = alg.dim;
    let mut m = Matrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            if rows[a][b] != 0 {
                m.set(a, b, big_to_rational(rows[a][b], l2));
            }
        }
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct KillingReport {
    pub dim: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
    pub character: i64,
    pub semisimple: bool,
}

impl KillingReport {
    pub fn from_inertia(dim: usize, i: Inertia) -> Self {
        KillingReport {
            dim,
            n_plus: i.plus,
            n_minus: i.minus,
            n_zero: i.zero,
            character: i.plus as i64 - i.minus as i64,
            semisimple: i.zero == 0,
        }
    }

    pub fn is_compact(&self) -> bool {
        self.n_plus == 0 && self.n_zero == 0
    }
}

pub fn analyze(alg: &LieAlgebra) -> KillingReport {
    let s = alg.scaled().expect("structure constants fit in 64 bits");
    let (_, rows) = killing_scaled(&s);
    // Positive rescaling leaves the inertia unchanged.
    let big: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    KillingReport::from_inertia(alg.dim, inertia_big(big))
}

/// Probabilistic rank: the minimum of dim ker ad_x over seeded random
/// integer elements x. Never below the true rank; five trials by default.
pub fn rank_estimate(alg: &LieAlgebra, trials: usize, seed: u64) -> Result<usize, LieError> {
    let rep = analyze(alg);
    if !rep.semisimple {
        return Err(LieError::NotSemisimple(rep.n_zero));
    }
    Ok(rank_trials(alg, trials, seed).into_iter().min().unwrap_or(alg.dim))
}

/// dim ker ad_x for each trial, in order.
pub fn rank_trials(alg: &LieAlgebra, trials: usize, seed: u64) -> Vec<usize> {
    let s = alg.scaled().expect("structure constants fit in 64 bits");
    let n = s.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials.max(1))
        .map(|_| {
            let x: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
            // (ad_x)_{k j} = Σ_i x_i c^k_{ij}
            let mut acc = vec![vec![0i128; n]; n];
            for (i, &xi) in x.iter().enumerate() {
                if xi == 0 {
                    continue;
                }
                for j in 0..n {
                    for &(k, c) in s.get(i, j) {
                        acc[k as usize][j] += xi as i128 * c as i128;
                    }
                }
            }
            n - rank_mod_prime(&acc)
        })
        .collect()
}

/// B([x,y],z) + B(y,[x,z]) = 0 on basis triples: all of them when
/// dim ≤ 60, otherwise at least `samples` seeded random ones.
pub fn invariance_check(alg: &LieAlgebra, samples: usize, seed: u64) -> Result<(), (usize, usize, usize)> {
    let s = alg.scaled().expect("structure constants fit in 64 bits");
    let (_, b) = killing_scaled(&s);
    let n = s.dim;
    let test = |x: usize, y: usize, z: usize| -> bool {
        let mut t = 0i128;
        for &(m, c) in s.get(x, y) {
            t += c as i128 * b[m as usize][z];
        }
        for &(m, c) in s.get(x, z) {
            t += c as i128 * b[y][m as usize];
        }
        t == 0
    };
    if n <= 60 {
        let bad = (0..n).into_par_iter().find_map_first(|x| {
            for y in 0..n {
                for z in 0..n {
                    if !test(x, y, z) {
                        return Some((x, y, z));
                    }
                }
            }
            None
        });
        return bad.map_or(Ok(()), Err);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        if !test(x, y, z) {
            return Err((x, y, z));
        }
    }
    Ok(())
}

/// [L, L] with a fresh echelon basis; basis labels name the pivot column.
pub fn derived_subalgebra(alg: &LieAlgebra) -> LieAlgebra {
    let n = alg.dim;
    let mut gens: Vec<Vec<Rational>> = Vec::new();
    let mut cur: Option<(usize, usize)> = None;
    for &(i, j, k, c) in &alg.sc {
        if cur != Some((i, j)) {
            gens.push(vec![Rational::ZERO; n]);
            cur = Some((i, j));
        }
        gens.last_mut().unwrap()[k] = c;
    }
    let span = Span::new(n, gens);
    let basis: Vec<String> = span.pivots.iter().map(|&p| format!("[{}]", alg.basis[p])).collect();
    let rows = span.rows.clone();
    LieAlgebra::from_brackets(
        basis,
        Meta {
            recipe: alg.meta.recipe.clone(),
            non_lie: alg.meta.non_lie,
        },
        |a, b| {
            let v = alg.bracket(&rows[a], &rows[b]);
            let c = span.coords(&v).expect("derived algebra is closed");
            c.into_iter().enumerate().collect()
        },
    )
}

/// Dimension of the center {x : [x, e_i] = 0 for all i}.
pub fn center_dim(alg: &LieAlgebra) -> usize {
    let n = alg.dim;
    // rows indexed by (i, k): Σ_x x_a c^k_{a i}
    let mut m = Matrix::zeros(n * n, n);
    for &(i, j, k, c) in &alg.sc {
        m.add_at(j * n + k, i, c);
        m.add_at(i * n + k, j, -c);
    }
    crate::linalg::nullspace(&m).len()
}

// ---- canonical document form ----

pub fn to_json(alg: &LieAlgebra) -> String {
    let q = |s: &str| serde_json::to_string(s).expect("string serializes");
    let mut out = String::new();
    out.push_str("{\n  \"kind\": \"lie_algebra\",\n");
    out.push_str(&format!("  \"dim\": {},\n", alg.dim));
    let labels: Vec<String> = alg.basis.iter().map(|b| q(b)).collect();
    out.push_str(&format!("  \"basis\": [{}],\n", labels.join(", ")));
    if alg.sc.is_empty() {
        out.push_str("  \"sc\": [],\n");
    } else {
        out.push_str("  \"sc\": [\n");
        for (n, (i, j, k, c)) in alg.sc.iter().enumerate() {
            let sep = if n + 1 == alg.sc.len() { "" } else { "," };
            out.push_str(&format!("    [{i}, {j}, {k}, \"{c}\"]{sep}\n"));
        }
        out.push_str("  ],\n");
    }
    out.push_str(&format!(
        "  \"meta\": {{\"recipe\": {}, \"non_lie\": {}}}\n}}\n",
        q(&alg.meta.recipe),
        alg.meta.non_lie
    ));
    out
}

pub fn from_json(text: &str) -> Result<LieAlgebra, LieError> {
    let bad = |m: &str| LieError::Format(m.to_string());
    let v: Value = serde_json::from_str(text).map_err(|e| LieError::Format(e.to_string()))?;
    if v.get("kind").and_then(Value::as_str) != Some("lie_algebra") {
        return Err(bad("kind must be \"lie_algebra\""));
    }
    let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("dim missing"))? as usize;
    let basis: Vec<String> = v
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("basis missing"))?
        .iter()
        .map(|x| x.as_str().map(str::to_string).ok_or_else(|| bad("basis labels must be strings")))
        .collect::<Result<_, _>>()?;
    if basis.len() != dim {
        return Err(bad("basis length differs from dim"));
    }
    let mut sc = Vec::new();
    for e in v.get("sc").and_then(Value::as_array).ok_or_else(|| bad("sc missing"))? {
        let e = e.as_array().filter(|a| a.len() == 4).ok_or_else(|| bad("sc entries are [i, j, k, \"p/q\"]"))?;
        let idx = |t: &Value| t.as_u64().map(|x| x as usize).filter(|&x| x < dim);
        let (i, j, k) = match (idx(&e[0]), idx(&e[1]), idx(&e[2])) {
            (Some(i), Some(j), Some(k)) => (i, j, k),
            _ => return Err(bad("sc index out of range")),
        };
        if i >= j {
            return Err(bad("sc entries need i < j"));
        }
        let s = e[3].as_str().ok_or_else(|| bad("coefficient must be a string"))?;
        let c: Rational = s.parse().map_err(|_| bad("bad rational"))?;
        if c.to_string() != s || c.is_zero() {
            return Err(bad("coefficients must be nonzero and in lowest terms"));
        }
        sc.push((i, j, k, c));
    }
    let sorted = sc.windows(2).all(|w| (w[0].0, w[0].1, w[0].2) < (w[1].0, w[1].1, w[1].2));
    if !sorted {
        return Err(bad("sc entries must be sorted and unique"));
    }
    let meta = v.get("meta").ok_or_else(|| bad("meta missing"))?;
    Ok(LieAlgebra {
        dim,
        basis,
        sc,
        meta: Meta {
            recipe: meta.get("recipe").and_then(Value::as_str).unwrap_or("").to_string(),
            non_lie: meta.get("non_lie").and_then(Value::as_bool).unwrap_or(false),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    /// so(3): [e0,e1]=e2, [e1,e2]=e0, [e2,e0]=e1.
    fn so3() -> LieAlgebra {
        LieAlgebra {
            dim: 3,
            basis: vec!["a".into(), "b".into(), "c".into()],
            sc: vec![(0, 1, 2, q(1, 1)), (0, 2, 1, q(-1, 1)), (1, 2, 0, q(1, 1))],
            meta: Meta { recipe: "test".into(), non_lie: false },
        }
    }

    #[test]
    fn so3_is_compact_rank_one() {
        let l = so3();
        assert_eq!(check_jacobi(&l), Ok(()));
        let r = analyze(&l);
        assert_eq!((r.character, r.n_zero), (-3, 0));
        assert!(r.is_compact());
        assert_eq!(rank_estimate(&l, 5, 1), Ok(1));
        assert_eq!(invariance_check(&l, 100, 1), Ok(()));
        assert_eq!(killing_form(&l).get(0, 0), q(-2, 1));
    }

    #[test]
    fn abelian_and_broken() {
        let a = LieAlgebra::abelian(4);
        assert!(killing_form(&a).is_zero());
        assert_eq!(analyze(&a).n_zero, 4);
        assert_eq!(rank_estimate(&a, 3, 0), Err(LieError::NotSemisimple(4)));
        // [e0,e1]=e1, [e0,e2]=e2, [e1,e2]=e0 violates Jacobi by 2e0.
        let mut broken = so3();
        broken.sc = vec![(0, 1, 1, q(1, 1)), (0, 2, 2, q(1, 1)), (1, 2, 0, q(1, 1))];
        let v = check_jacobi(&broken).unwrap_err();
        assert_eq!(v.triple, (0, 1, 2));
        assert_eq!(v.residual, vec![(0, q(2, 1))]);
    }

    #[test]
    fn json_round_trip() {
        let mut l = so3();
        l.sc[0].3 = q(-3, 2);
        let text = to_json(&l);
        let back = from_json(&text).unwrap();
        assert_eq!(back, l);
        assert_eq!(to_json(&back), text);
        assert!(from_json(&text.replace("\"-3/2\"", "\"-6/4\"")).is_err());
    }

    #[test]
    fn derived_of_gl2_is_sl2() {
        // gl(2) basis E11, E12, E21, E22.
        let gl2 = LieAlgebra {
            dim: 4,
            basis: vec!["E11".into(), "E12".into(), "E21".into(), "E22".into()],
            sc: vec![
                (0, 1, 1, q(1, 1)),
                (0, 2, 2, q(-1, 1)),
                (1, 2, 0, q(1, 1)),
                (1, 2, 3, q(-1, 1)),
                (1, 3, 1, q(1, 1)),
                (2, 3, 2, q(-1, 1)),
            ],
            meta: Meta { recipe: String::new(), non_lie: false },
        };
        assert_eq!(check_jacobi(&gl2), Ok(()));
        assert_eq!(center_dim(&gl2), 1);
        let sl2 = derived_subalgebra(&gl2);
        assert_eq!(sl2.dim, 3);
        assert_eq!(analyze(&sl2).character, 1);
    }
}
