//! so(p,q) as explicit matrices against the real Vinberg construction.
//!
//! Basis X_ij = η(E_ij - E_ji), i < j. The trace form is diagonal with
//! tr(X_ij X_ij) = -2 η_i η_j, and the Killing form is (N - 2) times it,
//! so the expected inertia is known without touching the library.

use magic_core::liealg::{analyze, check_jacobi, rank_estimate, LieAlgebra, Meta};
use magic_core::metric::LabelClass;
use magic_core::rational::Rational;
use magic_core::vinberg::{build_lie_algebra, Recipe};

type Mat = Vec<Vec<i64>>;

fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn matrix_so(p: usize, q: usize) -> LieAlgebra {
    let n = p + q;
    let eta: Vec<i64> = (0..n).map(|i| if i < p { 1 } else { -1 }).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mats: Vec<Mat> = pairs
        .iter()
        .map(|&(i, j)| {
            let mut m = vec![vec![0; n]; n];
            m[i][j] = eta[i];
            m[j][i] = -eta[j];
            m
        })
        .collect();
    let basis = pairs.iter().map(|(i, j)| format!("X{i}{j}")).collect();
    let meta = Meta {
        recipe: format!("matrix so({p},{q})"),
        non_lie: false,
    };
    LieAlgebra::from_brackets(basis, meta, |a, b| {
        let (x, y) = (&mats[a], &mats[b]);
        let (xy, yx) = (mul(x, y), mul(y, x));
        // The coefficient of X_kl in η A is A_kl for antisymmetric A.
        pairs
            .iter()
            .enumerate()
            .map(|(c, &(k, l))| (c, Rational::from_int(eta[k] * (xy[k][l] - yx[k][l]))))
            .collect()
    })
}

fn expected(p: usize, q: usize) -> (usize, usize) {
    let c2 = |m: usize| m * m.saturating_sub(1) / 2;
    (p * q, c2(p) + c2(q))
}

#[test]
fn matrix_model_matches_trace_form() {
    for n in 3..=6 {
        for q in 0..=n / 2 {
            let p = n - q;
            let lie = matrix_so(p, q);
            assert!(check_jacobi(&lie).is_ok(), "so({p},{q})");
            let r = analyze(&lie);
            assert_eq!((r.n_plus, r.n_minus, r.n_zero), (expected(p, q).0, expected(p, q).1, 0), "so({p},{q})");
            assert_eq!(rank_estimate(&lie, 3, 1).unwrap(), n / 2, "so({p},{q})");
        }
    }
}

#[test]
fn real_vinberg_builds_agree_with_matrices() {
    for n in 3..=6 {
        for q in 0..=n / 2 {
            let class: LabelClass = if q == 0 { "{+}".to_string() } else { format!("{{{{{n};{q}}}}}") }
                .parse()
                .unwrap();
            let built = build_lie_algebra(&Recipe::new("R", "R", n, class)).unwrap();
            assert!(built.failures.is_empty());
            assert!(check_jacobi(&built.lie).is_ok());
            let ours = analyze(&built.lie);
            let oracle = analyze(&matrix_so(n - q, q));
            assert_eq!(ours, oracle, "n = {n}, q = {q}");
        }
    }
}
