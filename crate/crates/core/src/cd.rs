//! Parametrized Cayley-Dickson algebras and the identity checks shared by
//! every monomial ∗-algebra.
//!
//! Doubling stage m adjoins the unit e_{2^{m-1}}; the pair (a, b) of the
//! doubled algebra sits at indices (i, i + d) where d is the old dimension.
//! The product is (a,b)(c,d) = (ac − η d∗b, da + bc∗) with η = +1 for an
//! elliptic unit (squares to −1) and η = −1 for a hyperbolic one.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{nullspace, signature, Inertia, Matrix, Span};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Unit {
    Elliptic,
    Hyperbolic,
}

impl Unit {
    fn eta(self) -> i8 {
        match self {
            Unit::Elliptic => 1,
            Unit::Hyperbolic => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SignSequence(pub Vec<Unit>);

impl fmt::Display for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for u in &self.0 {
            f.write_str(match u {
                Unit::Elliptic => "+",
                Unit::Hyperbolic => "-",
            })?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StarVariant {
    Standard,
    Identity,
    Reversion(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CdError {
    #[error("at most 4 doubling stages are supported, got {0}")]
    TooManyStages(usize),
    #[error("star is not an antiautomorphism: fails on basis pair ({0}, {1})")]
    NotAntiautomorphism(usize, usize),
    #[error("unsupported star variant: {0}")]
    UnsupportedVariant(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Anything whose basis products are ± a basis element and whose star is
/// diagonal in the basis.
pub trait MonomialAlgebra: Sync {
    fn dim(&self) -> usize;
    /// e_i · e_j = sign · e_idx.
    fn basis_product(&self, i: usize, j: usize) -> (usize, i8);
    fn star_sign(&self, i: usize) -> i8;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionAlgebra {
    pub signs: SignSequence,
    pub dim: usize,
    table: Vec<(usize, i8)>,
    star: Vec<i8>,
    pub variant: StarVariant,
}

impl MonomialAlgebra for CompositionAlgebra {
    fn dim(&self) -> usize {
        self.dim
    }
    #[inline]
    fn basis_product(&self, i: usize, j: usize) -> (usize, i8) {
        self.table[i * self.dim + j]
    }
    #[inline]
    fn star_sign(&self, i: usize) -> i8 {
        self.star[i]
    }
}

pub fn build_cd(signs: &SignSequence) -> Result<CompositionAlgebra, CdError> {
    if signs.0.len() > 4 {
        return Err(CdError::TooManyStages(signs.0.len()));
    }
    let mut dim = 1;
    let mut table = vec![(0usize, 1i8)];
    let mut star = vec![1i8];
    for unit in &signs.0 {
        let eta = unit.eta();
        let d = dim;
        let nd = 2 * d;
        let mut t = vec![(0usize, 0i8); nd * nd];
        let old = |i: usize, j: usize| table[i * d + j];
        for i in 0..nd {
            for j in 0..nd {
                t[i * nd + j] = match (i < d, j < d) {
                    (true, true) => old(i, j),
                    // (a,0)(0,d) = (0, da)
                    (true, false) => {
                        let (k, s) = old(j - d, i);
                        (k + d, s)
                    }
                    // (0,b)(c,0) = (0, bc∗)
                    (false, true) => {
                        let (k, s) = old(i - d, j);
                        (k + d, s * star[j])
                    }
                    // (0,b)(0,d) = (−η d∗b, 0)
                    (false, false) => {
                        let (k, s) = old(j - d, i - d);
                        (k, -eta * star[j - d] * s)
                    }
                };
            }
        }
        let mut ns = star.clone();
        ns.extend(std::iter::repeat(-1).take(d));
        star = ns;
        table = t;
        dim = nd;
    }
    Ok(CompositionAlgebra {
        signs: signs.clone(),
        dim,
        table,
        star,
        variant: StarVariant::Standard,
    })
}

/// Replaces the star of `alg` by a nonstandard antiinvolution.
///
/// Identity fixes every basis element; Reversion(u) negates e_u alone.
/// Octonionic variants other than the standard one are rejected.
pub fn apply_star_variant(
    alg: &CompositionAlgebra,
    variant: StarVariant,
) -> Result<CompositionAlgebra, CdError> {
    let star: Vec<i8> = match variant {
        StarVariant::Standard => return build_cd(&alg.signs),
        _ if alg.dim > 4 => {
            return Err(CdError::UnsupportedVariant(format!(
                "{variant:?} on a {}-dimensional algebra",
                alg.dim
            )))
        }
        StarVariant::Identity => vec![1; alg.dim],
        StarVariant::Reversion(u) => {
            if alg.dim != 4 || u == 0 || u >= 4 {
                return Err(CdError::UnsupportedVariant(format!(
                    "reversion of unit {u} needs a quaternion algebra and 1 <= u <= 3"
                )));
            }
            (0..4).map(|i| if i == u { -1 } else { 1 }).collect()
        }
    };
    let out = CompositionAlgebra {
        star,
        variant,
        ..alg.clone()
    };
    check_star(&out)?;
    Ok(out)
}

/// Verifies (e_i e_j)∗ = e_j∗ e_i∗ on all basis pairs. The star is a sign
/// vector, so it is automatically an involution.
pub fn check_star<A: MonomialAlgebra>(alg: &A) -> Result<(), CdError> {
    let n = alg.dim();
    if alg.star_sign(0) != 1 {
        return Err(CdError::NotAntiautomorphism(0, 0));
    }
    for i in 0..n {
        for j in 0..n {
            let (k, s) = alg.basis_product(i, j);
            let (k2, s2) = alg.basis_product(j, i);
            let lhs = s * alg.star_sign(k);
            let rhs = s2 * alg.star_sign(i) * alg.star_sign(j);
            if k != k2 || lhs != rhs {
                return Err(CdError::NotAntiautomorphism(i, j));
            }
        }
    }
    Ok(())
}

/// Element of a monomial algebra as a dense coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element(pub Vec<Rational>);

impl Element {
    pub fn zero(dim: usize) -> Self {
        Element(vec![Rational::ZERO; dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.0[i] = Rational::ONE;
        e
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Element(v.iter().map(|&x| Rational::from_int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Element) -> Element {
        Element(self.0.iter().zip(&o.0).map(|(a, b)| *a + *b).collect())
    }

    pub fn sub(&self, o: &Element) -> Element {
        Element(self.0.iter().zip(&o.0).map(|(a, b)| *a - *b).collect())
    }

    pub fn scale(&self, s: Rational) -> Element {
        Element(self.0.iter().map(|a| *a * s).collect())
    }
}

fn conform<A: MonomialAlgebra>(alg: &A, x: &Element) -> Result<(), CdError> {
    if x.dim() != alg.dim() {
        return Err(CdError::DimensionMismatch {
            expected: alg.dim(),
            got: x.dim(),
        });
    }
    Ok(())
}

pub fn multiply<A: MonomialAlgebra>(alg: &A, x: &Element, y: &Element) -> Result<Element, CdError> {
    conform(alg, x)?;
    conform(alg, y)?;
    Ok(mul(alg, x, y))
}

/// Unchecked product; callers guarantee conforming lengths.
pub(crate) fn mul<A: MonomialAlgebra>(alg: &A, x: &Element, y: &Element) -> Element {
    let n = alg.dim();
    let mut out = Element::zero(n);
    for (i, a) in x.0.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.0.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let (k, s) = alg.basis_product(i, j);
            let v = *a * *b;
            if s > 0 {
                out.0[k] += v;
            } else {
                out.0[k] -= v;
            }
        }
    }
    out
}

pub fn conjugate<A: MonomialAlgebra>(alg: &A, x: &Element) -> Element {
    Element(
        x.0.iter()
            .enumerate()
            .map(|(i, a)| if alg.star_sign(i) > 0 { *a } else { -*a })
            .collect(),
    )
}

pub fn re_part(x: &Element) -> Rational {
    x.0[0]
}

pub fn im_star_basis<A: MonomialAlgebra>(alg: &A) -> Vec<usize> {
    (0..alg.dim()).filter(|&i| alg.star_sign(i) < 0).collect()
}

/// ⟨x, y⟩ = Re(x y∗).
pub fn inner_product<A: MonomialAlgebra>(alg: &A, x: &Element, y: &Element) -> Rational {
    let mut acc = Rational::ZERO;
    for (i, a) in x.0.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.0.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let g = basis_inner(alg, i, j);
            if g != 0 {
                acc += *a * *b * Rational::from_int(g as i64);
            }
        }
    }
    acc
}

/// ⟨e_i, e_j⟩ as a small integer.
pub fn basis_inner<A: MonomialAlgebra>(alg: &A, i: usize, j: usize) -> i8 {
    let (k, s) = alg.basis_product(i, j);
    if k == 0 {
        s * alg.star_sign(j)
    } else {
        0
    }
}

pub fn gram_matrix<A: MonomialAlgebra>(alg: &A) -> Matrix {
    let n = alg.dim();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g.set(i, j, Rational::from_int(basis_inner(alg, i, j) as i64));
        }
    }
    g
}

pub fn gram_signature<A: MonomialAlgebra>(alg: &A) -> Inertia {
    signature(&gram_matrix(alg)).expect("Gram matrix is symmetric")
}

pub fn commutator<A: MonomialAlgebra>(alg: &A, x: &Element, y: &Element) -> Element {
    mul(alg, x, y).sub(&mul(alg, y, x))
}

pub fn associator<A: MonomialAlgebra>(alg: &A, x: &Element, y: &Element, z: &Element) -> Element {
    mul(alg, &mul(alg, x, y), z).sub(&mul(alg, x, &mul(alg, y, z)))
}

/// Associator of three basis elements as (index, sign), zero when sign is 0.
pub fn basis_associator<A: MonomialAlgebra>(alg: &A, i: usize, j: usize, k: usize) -> (usize, i8) {
    let (a, s1) = alg.basis_product(i, j);
    let (l, s2) = alg.basis_product(a, k);
    let (b, t1) = alg.basis_product(j, k);
    let (r, t2) = alg.basis_product(i, b);
    debug_assert_eq!(l, r, "monomial associator must land on one basis element");
    let lhs = s1 * s2;
    let rhs = t1 * t2;
    if lhs == rhs {
        (l, 0)
    } else {
        (l, lhs)
    }
}

/// Left multiplication, right multiplication and their derived maps.
fn left_mul<A: MonomialAlgebra>(alg: &A, x: &Element) -> Matrix {
    let n = alg.dim();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        let col = mul(alg, x, &Element::basis(n, j));
        for i in 0..n {
            m.set(i, j, col.0[i]);
        }
    }
    m
}

fn right_mul<A: MonomialAlgebra>(alg: &A, x: &Element) -> Matrix {
    let n = alg.dim();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        let col = mul(alg, &Element::basis(n, j), x);
        for i in 0..n {
            m.set(i, j, col.0[i]);
        }
    }
    m
}

/// C_w(z) = wz − zw.
pub fn commutator_map<A: MonomialAlgebra>(alg: &A, w: &Element) -> Matrix {
    left_mul(alg, w).sub(&right_mul(alg, w))
}

/// A_{x,y}(z) = [x, y, z].
pub fn associator_map<A: MonomialAlgebra>(alg: &A, x: &Element, y: &Element) -> Matrix {
    let n = alg.dim();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        let col = associator(alg, x, y, &Element::basis(n, j));
        for i in 0..n {
            m.set(i, j, col.0[i]);
        }
    }
    m
}

/// D_{x,y} = C_{[x,y]} − 3 A_{x,y}.
pub fn derivation_map<A: MonomialAlgebra>(alg: &A, x: &Element, y: &Element) -> Matrix {
    let c = commutator_map(alg, &commutator(alg, x, y));
    c.sub(&associator_map(alg, x, y).scale(Rational::from_int(3)))
}

/// Leibniz rule D(e_i e_j) = D(e_i) e_j + e_i D(e_j) on all basis pairs.
pub fn is_derivation<A: MonomialAlgebra>(alg: &A, d: &Matrix) -> bool {
    let n = alg.dim();
    let cols: Vec<Element> = (0..n)
        .map(|j| Element((0..n).map(|i| d.get(i, j)).collect()))
        .collect();
    for i in 0..n {
        for j in 0..n {
            let (k, s) = alg.basis_product(i, j);
            let lhs = cols[k].scale(Rational::from_int(s as i64));
            let rhs = mul(alg, &cols[i], &Element::basis(n, j))
                .add(&mul(alg, &Element::basis(n, i), &cols[j]));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

fn flatten(m: &Matrix) -> Vec<Rational> {
    m.data.clone()
}

fn unflatten(n: usize, v: Vec<Rational>) -> Matrix {
    Matrix {
        rows: n,
        cols: n,
        data: v,
    }
}

/// Row-reduced basis of span{D_{e_i,e_j}}, optionally cut down to maps
/// commuting with the star.
pub fn derivation_basis(alg: &CompositionAlgebra, star_compatible: bool) -> Vec<Matrix> {
    let n = alg.dim;
    let mut gens = Vec::new();
    for i in 1..n {
        for j in i + 1..n {
            let d = derivation_map(alg, &Element::basis(n, i), &Element::basis(n, j));
            gens.push(flatten(&d));
        }
    }
    let span = Span::new(n * n, gens);
    let rows = if star_compatible {
        star_compatible_rows(alg, &span)
    } else {
        span.rows
    };
    rows.into_iter().map(|r| unflatten(n, r)).collect()
}

/// Every derivation, found by solving D(e_i e_j) = D(e_i) e_j + e_i D(e_j)
/// for the n² entries of D. Valid for non-alternative algebras too, where
/// the inner maps D_{x,y} need not be derivations.
pub fn leibniz_derivations<A: MonomialAlgebra>(alg: &A) -> Vec<Matrix> {
    let n = alg.dim();
    // Unknown a·n + b is the e_a coefficient of D(e_b).
    let mut eqs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut block = vec![vec![Rational::ZERO; n * n]; n];
            let (k, s) = alg.basis_product(i, j);
            for (c, row) in block.iter_mut().enumerate() {
                row[c * n + k] += Rational::from_int(s as i64);
            }
            for a in 0..n {
                let (c, s) = alg.basis_product(a, j);
                block[c][a * n + i] -= Rational::from_int(s as i64);
                let (c, s) = alg.basis_product(i, a);
                block[c][a * n + j] -= Rational::from_int(s as i64);
            }
            eqs.extend(block.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
        }
    }
    let m = Matrix {
        rows: eqs.len(),
        cols: n * n,
        data: eqs.concat(),
    };
    nullspace(&m).into_iter().map(|v| unflatten(n, v)).collect()
}

/// Intersects a span of flattened n×n maps with the maps commuting with a
/// diagonal star, i.e. those with D_ab = 0 whenever s_a ≠ s_b.
pub(crate) fn star_compatible_rows<A: MonomialAlgebra>(alg: &A, span: &Span) -> Vec<Vec<Rational>> {
    let n = alg.dim();
    let bad: Vec<usize> = (0..n * n)
        .filter(|&p| alg.star_sign(p / n) != alg.star_sign(p % n))
        .collect();
    if bad.is_empty() || span.dim() == 0 {
        return span.rows.clone();
    }
    let mut cond = Matrix::zeros(bad.len(), span.dim());
    for (r, &p) in bad.iter().enumerate() {
        for (c, row) in span.rows.iter().enumerate() {
            cond.set(r, c, row[p]);
        }
    }
    let combos = nullspace(&cond);
    let vecs = combos.into_iter().map(|c| {
        let mut v = vec![Rational::ZERO; n * n];
        for (k, coef) in c.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(&span.rows[k]) {
                *x += *coef * *y;
            }
        }
        v
    });
    Span::new(n * n, vecs).rows
}

/// Witness list for a failed alternativity scan: the basis triple.
pub type Triple = [usize; 3];

/// Alternating associator: [x,y,z] changes sign under every swap. Checking
/// the two adjacent transpositions on basis triples suffices.
pub fn check_alternative<A: MonomialAlgebra>(alg: &A) -> Result<(), Triple> {
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (a, sa) = basis_associator(alg, i, j, k);
                let (b, sb) = basis_associator(alg, j, i, k);
                let (c, sc) = basis_associator(alg, i, k, j);
                let sym1 = sa != 0 || sb != 0;
                let sym2 = sa != 0 || sc != 0;
                let ok1 = !sym1 || (a == b && sa == -sb);
                let ok2 = !sym2 || (a == c && sa == -sc);
                if !ok1 || !ok2 {
                    return Err([i, j, k]);
                }
            }
        }
    }
    Ok(())
}

/// Artin identities [x,x,y] = [y,x,x] = [x,y,x] = 0 on basis pairs.
pub fn check_artin<A: MonomialAlgebra>(alg: &A) -> Result<(), (usize, usize)> {
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            let zero = |t: (usize, i8)| t.1 == 0;
            if !zero(basis_associator(alg, i, i, j))
                || !zero(basis_associator(alg, j, i, i))
                || !zero(basis_associator(alg, i, j, i))
            {
                return Err((i, j));
            }
        }
    }
    Ok(())
}

/// The three Moufang identities on basis triples:
/// z(x(zy)) = ((zx)z)y, x(z(yz)) = ((xz)y)z, (zx)(yz) = (z(xy))z.
pub fn check_moufang<A: MonomialAlgebra>(alg: &A) -> Result<(), Triple> {
    let n = alg.dim();
    let p = |a: (usize, i8), b: (usize, i8)| {
        let (k, s) = alg.basis_product(a.0, b.0);
        (k, s * a.1 * b.1)
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (ex, ey, ez) = ((x, 1i8), (y, 1i8), (z, 1i8));
                let m1 = p(ez, p(ex, p(ez, ey))) == p(p(p(ez, ex), ez), ey);
                let m2 = p(ex, p(ez, p(ey, ez))) == p(p(p(ex, ez), ey), ez);
                let m3 = p(p(ez, ex), p(ey, ez)) == p(p(ez, p(ex, ey)), ez);
                if !(m1 && m2 && m3) {
                    return Err([x, y, z]);
                }
            }
        }
    }
    Ok(())
}

/// The bounded composition test family: every ±e_i and every ±e_i ± e_j
/// with i < j.
pub fn composition_family(dim: usize) -> Vec<Element> {
    let mut out = Vec::new();
    for i in 0..dim {
        for s in [1, -1] {
            let mut e = Element::zero(dim);
            e.0[i] = Rational::from_int(s);
            out.push(e);
        }
    }
    for i in 0..dim {
        for j in i + 1..dim {
            for (s, t) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut e = Element::zero(dim);
                e.0[i] = Rational::from_int(s);
                e.0[j] = Rational::from_int(t);
                out.push(e);
            }
        }
    }
    out
}

pub fn norm<A: MonomialAlgebra>(alg: &A, x: &Element) -> Rational {
    inner_product(alg, x, x)
}

/// ⟨xy,xy⟩ = ⟨x,x⟩⟨y,y⟩ across the composition family.
pub fn check_composition<A: MonomialAlgebra>(alg: &A) -> Result<(), (Element, Element)> {
    let fam = composition_family(alg.dim());
    let norms: Vec<Rational> = fam.iter().map(|x| norm(alg, x)).collect();
    for (a, x) in fam.iter().enumerate() {
        for (b, y) in fam.iter().enumerate() {
            let xy = mul(alg, x, y);
            if norm(alg, &xy) != norms[a] * norms[b] {
                return Err((x.clone(), y.clone()));
            }
        }
    }
    Ok(())
}

pub fn is_associative<A: MonomialAlgebra>(alg: &A) -> bool {
    let n = alg.dim();
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| basis_associator(alg, i, j, k).1 == 0)))
}

pub fn is_commutative<A: MonomialAlgebra>(alg: &A) -> bool {
    let n = alg.dim();
    (0..n).all(|i| (0..n).all(|j| alg.basis_product(i, j) == alg.basis_product(j, i)))
}

/// Renders e_i e_j as a signed index grid, one row per line.
pub fn format_table<A: MonomialAlgebra>(alg: &A) -> String {
    let n = alg.dim();
    let mut s = String::new();
    for i in 0..n {
        let row: Vec<String> = (0..n)
            .map(|j| {
                let (k, sg) = alg.basis_product(i, j);
                format!("{}e{k}", if sg > 0 { '+' } else { '-' })
            })
            .collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}
