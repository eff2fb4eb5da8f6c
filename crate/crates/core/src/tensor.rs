//! Tensor products K₁⊗K₂ as monomial ∗-algebras.
//!
//! The pair (i, j) is flattened to i·dim₂ + j. Products and stars act
//! componentwise, so every check in [`crate::cd`] applies unchanged.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cd::{basis_inner, derivation_basis, CompositionAlgebra, MonomialAlgebra};
use crate::linalg::Matrix;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorAlgebra {
    pub left: CompositionAlgebra,
    pub right: CompositionAlgebra,
    pub dim: usize,
}

impl MonomialAlgebra for TensorAlgebra {
    fn dim(&self) -> usize {
        self.dim
    }
    #[inline]
    fn basis_product(&self, i: usize, j: usize) -> (usize, i8) {
        let d2 = self.right.dim;
        let (a, s) = self.left.basis_product(i / d2, j / d2);
        let (b, t) = self.right.basis_product(i % d2, j % d2);
        (a * d2 + b, s * t)
    }
    #[inline]
    fn star_sign(&self, i: usize) -> i8 {
        let d2 = self.right.dim;
        self.left.star_sign(i / d2) * self.right.star_sign(i % d2)
    }
}

impl TensorAlgebra {
    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / self.right.dim, i % self.right.dim)
    }

    pub fn join(&self, p: usize, q: usize) -> usize {
        p * self.right.dim + q
    }
}

pub fn tensor_product(a1: &CompositionAlgebra, a2: &CompositionAlgebra) -> TensorAlgebra {
    TensorAlgebra {
        left: a1.clone(),
        right: a2.clone(),
        dim: a1.dim * a2.dim,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorDerivation {
    pub side: Side,
    pub map: Matrix,
}

impl TensorDerivation {
    /// The map on the tensor algebra: M⊗1 or 1⊗M.
    pub fn lift(&self, t: &TensorAlgebra) -> Matrix {
        match self.side {
            Side::Left => lift_left(t, &self.map),
            Side::Right => lift_right(t, &self.map),
        }
    }
}

pub fn lift_left(t: &TensorAlgebra, m: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(t.dim, t.dim);
    for p in 0..t.left.dim {
        for p2 in 0..t.left.dim {
            let v = m.get(p2, p);
            if v.is_zero() {
                continue;
            }
            for q in 0..t.right.dim {
                out.set(t.join(p2, q), t.join(p, q), v);
            }
        }
    }
    out
}

pub fn lift_right(t: &TensorAlgebra, m: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(t.dim, t.dim);
    for q in 0..t.right.dim {
        for q2 in 0..t.right.dim {
            let v = m.get(q2, q);
            if v.is_zero() {
                continue;
            }
            for p in 0..t.left.dim {
                out.set(t.join(p, q2), t.join(p, q), v);
            }
        }
    }
    out
}

/// der(K₁) ⊕ der(K₂), left factor first.
pub fn tensor_derivation_basis(t: &TensorAlgebra, star_compatible: bool) -> Vec<TensorDerivation> {
    let l = derivation_basis(&t.left, star_compatible)
        .into_iter()
        .map(|map| TensorDerivation { side: Side::Left, map });
    let r = derivation_basis(&t.right, star_compatible)
        .into_iter()
        .map(|map| TensorDerivation { side: Side::Right, map });
    l.chain(r).collect()
}

/// D_{x₁⊗x₂, y₁⊗y₂} = ⟨x₁,y₁⟩D_{x₂,y₂} + ⟨x₂,y₂⟩D_{x₁,y₁} for basis
/// elements x = e_i, y = e_j of the tensor algebra.
pub fn tensor_derivation_map(t: &TensorAlgebra, i: usize, j: usize) -> Matrix {
    use crate::cd::{derivation_map, Element};
    let (p, q) = t.split(i);
    let (r, s) = t.split(j);
    let mut out = Matrix::zeros(t.dim, t.dim);
    let g1 = basis_inner(&t.left, p, r);
    if g1 != 0 {
        let n2 = t.right.dim;
        let d2 = derivation_map(&t.right, &Element::basis(n2, q), &Element::basis(n2, s));
        out = out.add(&lift_right(t, &d2).scale(Rational::from_int(g1 as i64)));
    }
    let g2 = basis_inner(&t.right, q, s);
    if g2 != 0 {
        let n1 = t.left.dim;
        let d1 = derivation_map(&t.left, &Element::basis(n1, p), &Element::basis(n1, r));
        out = out.add(&lift_left(t, &d1).scale(Rational::from_int(g2 as i64)));
    }
    out
}

/// Sparse Leibniz check, cheaper than [`crate::cd::is_derivation`] on the
/// tensor sizes used here.
pub fn satisfies_leibniz<A: MonomialAlgebra>(alg: &A, d: &Matrix, pairs: &[(usize, usize)]) -> bool {
    let n = alg.dim();
    let cols: Vec<Vec<(usize, Rational)>> = (0..n)
        .map(|j| {
            (0..n)
                .filter_map(|i| {
                    let v = d.get(i, j);
                    (!v.is_zero()).then_some((i, v))
                })
                .collect()
        })
        .collect();
    let mut buf = vec![Rational::ZERO; n];
    for &(i, j) in pairs {
        let (k, s) = alg.basis_product(i, j);
        for &(a, v) in &cols[k] {
            buf[a] += if s > 0 { v } else { -v };
        }
        for &(a, v) in &cols[i] {
            let (c, sg) = alg.basis_product(a, j);
            buf[c] -= if sg > 0 { v } else { -v };
        }
        for &(a, v) in &cols[j] {
            let (c, sg) = alg.basis_product(i, a);
            buf[c] -= if sg > 0 { v } else { -v };
        }
        if buf.iter().any(|x| !x.is_zero()) {
            return false;
        }
    }
    true
}

/// All basis pairs when dim ≤ `EXHAUSTIVE_DIM`, otherwise a seeded sample.
pub const EXHAUSTIVE_DIM: usize = 64;

pub fn leibniz_pairs(dim: usize, seed: u64) -> Vec<(usize, usize)> {
    if dim <= EXHAUSTIVE_DIM {
        (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..4096).map(|_| (rng.gen_range(0..dim), rng.gen_range(0..dim))).collect()
    }
}

/// Checks that the displayed combination is a derivation for every pair of
/// tensor basis elements. Pairs whose map vanishes are skipped.
pub fn check_tensor_derivation_formula(t: &TensorAlgebra) -> Result<(), (usize, usize)> {
    let pairs = leibniz_pairs(t.dim, 7);
    for i in 0..t.dim {
        for j in 0..t.dim {
            let (p, q) = t.split(i);
            let (r, s) = t.split(j);
            if basis_inner(&t.left, p, r) == 0 && basis_inner(&t.right, q, s) == 0 {
                continue;
            }
            let d = tensor_derivation_map(t, i, j);
            if !satisfies_leibniz(t, &d, &pairs) {
                return Err((i, j));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cd::{build_cd, check_alternative, is_associative, is_commutative, SignSequence, Unit};

    fn alg(s: &str) -> CompositionAlgebra {
        let units = s
            .chars()
            .map(|c| if c == '+' { Unit::Elliptic } else { Unit::Hyperbolic })
            .collect();
        build_cd(&SignSequence(units)).unwrap()
    }

    #[test]
    fn unit_factor_reproduces_table() {
        let r = alg("");
        let h = alg("++");
        let t = tensor_product(&r, &h);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(t.basis_product(t.join(0, i), t.join(0, j)), h.basis_product(i, j));
            }
        }
    }

    #[test]
    fn small_tensor_properties() {
        let cc = tensor_product(&alg("+"), &alg("+"));
        assert_eq!(cc.dim, 4);
        assert!(is_commutative(&cc) && is_associative(&cc));
        let oh = tensor_product(&alg("+++"), &alg("++"));
        assert!(check_alternative(&oh).is_err());
        assert_eq!(tensor_derivation_basis(&oh, false).len(), 17);
        assert_eq!(tensor_derivation_basis(&tensor_product(&alg("+"), &alg("-")), false).len(), 0);
    }

    #[test]
    fn formula_on_quaternion_square() {
        let hh = tensor_product(&alg("++"), &alg("++"));
        assert_eq!(check_tensor_derivation_formula(&hh), Ok(()));
    }
}
