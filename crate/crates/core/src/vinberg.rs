//! Special unitary Lie algebras over K₁⊗K₂.
//!
//! The algebra is der(K₁)⊕der(K₂) plus the traceless matrices X with
//! X∗ᵀ I = −I X for the diagonal metric I. Matrices bracket by
//!
//!   [A,B] = AB − BA − (1/n) Tr(AB − BA) 𝟙 − (1/n) Σ_ij D_{a_ij, (b_ji)∗}
//!
//! and derivations act entrywise. When the stars are not standard the
//! default is the full antihermitian space with the plain commutator,
//! which only makes sense for associative entries.
//!
//! Basis order: left derivations, right derivations, off-diagonal slots
//! (i<j, then tensor basis index), diagonal slots (position, then index).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::cd::{basis_inner, derivation_basis, derivation_map, im_star_basis, Element, MonomialAlgebra};
use crate::descriptor::{parse_descriptor, DescriptorError, Factor};
use crate::linalg::{Matrix, Span};
use crate::liealg::{derived_subalgebra, LieAlgebra, Meta};
use crate::metric::{build_metric, CKMetric, LabelClass, MetricError};
use crate::rational::Rational;
use crate::tensor::{tensor_product, Side, TensorAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    /// Traceless pseudo-antihermitian matrices plus derivations.
    SpecialUnitary,
    /// All pseudo-antihermitian matrices, plain commutator.
    FullAntihermitian,
    /// Commutator subalgebra of the full antihermitian algebra, which
    /// drops a central u(1) when one is present.
    DerivedAntihermitian,
}

impl Space {
    pub fn tag(self) -> &'static str {
        match self {
            Space::SpecialUnitary => "su",
            Space::FullAntihermitian => "u",
            Space::DerivedAntihermitian => "du",
        }
    }

    pub fn from_tag(s: &str) -> Option<Space> {
        match s {
            "su" => Some(Space::SpecialUnitary),
            "u" => Some(Space::FullAntihermitian),
            "du" => Some(Space::DerivedAntihermitian),
            _ => None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VinbergError {
    #[error("octonionic special unitary algebras close only for n = 3 (got n = {0}); pass force to build anyway")]
    OctonionicRequiresN3(usize),
    #[error("the antihermitian strategy needs associative entries; {0} is not associative")]
    NonAssociative(String),
    #[error("bracket of basis elements {a} and {b} leaves the space: {reason}")]
    ClosureFailure { a: usize, b: usize, reason: String },
    #[error("unsupported factor for n = 2 counting: {0}")]
    UnsupportedFactor(String),
    #[error("{0}")]
    Descriptor(#[from] DescriptorError),
    #[error("{0}")]
    Metric(#[from] MetricError),
    #[error("invalid recipe: {0}")]
    Recipe(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Recipe {
    pub k1: String,
    pub k2: String,
    pub n: usize,
    pub labels: LabelClass,
    /// `None` picks special unitary for standard stars, full antihermitian otherwise.
    pub space: Option<Space>,
    pub force: bool,
}

impl Recipe {
    pub fn new(k1: &str, k2: &str, n: usize, labels: LabelClass) -> Self {
        Recipe {
            k1: k1.to_string(),
            k2: k2.to_string(),
            n,
            labels,
            space: None,
            force: false,
        }
    }

    pub fn with_space(mut self, space: Space) -> Self {
        self.space = Some(space);
        self
    }

    pub fn forced(mut self) -> Self {
        self.force = true;
        self
    }

    pub fn descriptor(&self) -> String {
        if self.k2 == "R" {
            self.k1.clone()
        } else {
            format!("{}*{}", self.k1, self.k2)
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "su(n={}, k1={}, k2={}, labels={}", self.n, self.k1, self.k2, self.labels)?;
        if let Some(s) = self.space {
            write!(f, ", space={}", s.tag())?;
        }
        if self.force {
            f.write_str(", force")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Recipe {
    type Err = VinbergError;

    /// `su(n=3, k1=O, k2=Cs, labels=+,-)`, optionally with `space=su|u|du`
    /// and a bare `force`. Missing k2 means R; missing labels mean `{+}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |m: &str| VinbergError::Recipe(format!("{m} in {s:?}"));
        let body = s
            .trim()
            .strip_prefix("su(")
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| err("expected su(...)"))?;
        let mut fields: Vec<(String, String)> = Vec::new();
        for tok in body.split(',') {
            let tok = tok.trim();
            match tok.split_once('=') {
                Some((k, v)) => fields.push((k.trim().to_string(), v.trim().to_string())),
                None if tok == "force" => fields.push(("force".into(), "true".into())),
                None => {
                    let last = fields.last_mut().ok_or_else(|| err("stray token"))?;
                    last.1.push(',');
                    last.1.push_str(tok);
                }
            }
        }
        let mut r = Recipe::new("R", "R", 0, LabelClass::AllPlus);
        for (k, v) in fields {
            match k.as_str() {
                "n" => r.n = v.parse().map_err(|_| err("bad n"))?,
                "k1" => r.k1 = v,
                "k2" => r.k2 = v,
                "labels" => r.labels = v.parse()?,
                "space" => r.space = Some(Space::from_tag(&v).ok_or_else(|| err("bad space"))?),
                "force" => r.force = v == "true",
                _ => return Err(err("unknown key")),
            }
        }
        if r.n == 0 {
            return Err(err("n must be at least 1"));
        }
        Ok(r)
    }
}

/// One matrix basis element: entries (row, col, tensor index, sign).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixElem {
    pub label: String,
    pub entries: Vec<(usize, usize, usize, i8)>,
}

/// Basis of the real solution space of X∗ᵀI = −IX, traceless for the
/// special unitary space.
pub fn sa_basis(t: &TensorAlgebra, metric: &CKMetric, n: usize, space: Space) -> Vec<MatrixElem> {
    let mut out = Vec::new();
    let m = &metric.diag;
    for i in 0..n {
        for j in i + 1..n {
            for b in 0..t.dim {
                let partner = -m[i] * m[j] * t.star_sign(b);
                out.push(MatrixElem {
                    label: format!("X{i}_{j}.{b}"),
                    entries: vec![(i, j, b, 1), (j, i, b, partner)],
                });
            }
        }
    }
    let im = im_star_basis(t);
    match space {
        Space::SpecialUnitary => {
            for i in 0..n.saturating_sub(1) {
                for &q in &im {
                    out.push(MatrixElem {
                        label: format!("U{i}.{q}"),
                        entries: vec![(i, i, q, 1), (i + 1, i + 1, q, -1)],
                    });
                }
            }
        }
        _ => {
            for i in 0..n {
                for &q in &im {
                    out.push(MatrixElem {
                        label: format!("H{i}.{q}"),
                        entries: vec![(i, i, q, 1)],
                    });
                }
            }
        }
    }
    out
}

/// Derivations of one factor with a lookup table of D_{e_p,e_r}.
struct FactorDer {
    dim: usize,
    span: Span,
    maps: Vec<Matrix>,
    /// D_{e_p,e_r} flattened, indexed p·dim + r.
    table: Vec<Vec<Rational>>,
}

impl FactorDer {
    fn new(f: &crate::cd::CompositionAlgebra, star_compatible: bool) -> Self {
        let d = f.dim;
        let table: Vec<Vec<Rational>> = (0..d * d)
            .map(|pr| derivation_map(f, &Element::basis(d, pr / d), &Element::basis(d, pr % d)).data)
            .collect();
        let maps = derivation_basis(f, star_compatible);
        let span = Span::new(d * d, maps.iter().map(|m| m.data.clone()));
        FactorDer { dim: d, span, maps, table }
    }
}

#[derive(Clone, Debug)]
enum Elem {
    Der(Side, usize),
    Mat(usize),
}

/// A bracket result before decomposition.
struct Val {
    left: Vec<Rational>,
    right: Vec<Rational>,
    mat: BTreeMap<(usize, usize, usize), Rational>,
}

/// Shared, read-only construction context.
pub struct Context {
    pub t: TensorAlgebra,
    pub n: usize,
    pub metric: CKMetric,
    pub space: Space,
    ders: [FactorDer; 2],
    mats: Vec<MatrixElem>,
    elems: Vec<Elem>,
    labels: Vec<String>,
    offdiag: HashMap<(usize, usize, usize), usize>,
    diag: HashMap<(usize, usize), usize>,
    im: Vec<bool>,
}

impl Context {
    pub fn new(k1: &Factor, k2: &Factor, metric: CKMetric, space: Space) -> Self {
        let t = tensor_product(&k1.alg, &k2.alg);
        let n = metric.n();
        let filter = !(k1.is_standard() && k2.is_standard());
        let with_der = space == Space::SpecialUnitary;
        let ders = [FactorDer::new(&k1.alg, filter), FactorDer::new(&k2.alg, filter)];
        let mats = if n >= 2 { sa_basis(&t, &metric, n, space) } else { vec![] };
        let mut elems = Vec::new();
        let mut labels = Vec::new();
        if with_der {
            for (s, side) in [Side::Left, Side::Right].into_iter().enumerate() {
                for k in 0..ders[s].maps.len() {
                    elems.push(Elem::Der(side, k));
                    labels.push(format!("D{}.{k}", s + 1));
                }
            }
        }
        let mut offdiag = HashMap::new();
        let mut diag = HashMap::new();
        for (k, m) in mats.iter().enumerate() {
            let idx = elems.len();
            let (i, j, b, _) = m.entries[0];
            if i == j {
                diag.insert((i, b), idx);
            } else {
                offdiag.insert((i, j, b), idx);
            }
            elems.push(Elem::Mat(k));
            labels.push(m.label.clone());
        }
        let im = (0..t.dim).map(|b| t.star_sign(b) < 0).collect();
        Context {
            t,
            n,
            metric,
            space,
            ders,
            mats,
            elems,
            labels,
            offdiag,
            diag,
            im,
        }
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn zero_val(&self) -> Val {
        Val {
            left: vec![Rational::ZERO; self.ders[0].dim * self.ders[0].dim],
            right: vec![Rational::ZERO; self.ders[1].dim * self.ders[1].dim],
            mat: BTreeMap::new(),
        }
    }

    fn side_idx(side: Side) -> usize {
        match side {
            Side::Left => 0,
            Side::Right => 1,
        }
    }

    /// D(A) entrywise for a derivation of one factor.
    fn act(&self, side: Side, k: usize, a: &MatrixElem, sign: Rational, out: &mut Val) {
        let fd = &self.ders[Self::side_idx(side)];
        let m = &fd.maps[k];
        for &(i, j, b, s) in &a.entries {
            let (p, q) = self.t.split(b);
            let coef = sign * Rational::from_int(s as i64);
            match side {
                Side::Left => {
                    for p2 in 0..fd.dim {
                        let v = m.get(p2, p);
                        if !v.is_zero() {
                            *out.mat.entry((i, j, self.t.join(p2, q))).or_default() += coef * v;
                        }
                    }
                }
                Side::Right => {
                    for q2 in 0..fd.dim {
                        let v = m.get(q2, q);
                        if !v.is_zero() {
                            *out.mat.entry((i, j, self.t.join(p, q2))).or_default() += coef * v;
                        }
                    }
                }
            }
        }
    }

    fn bracket_val(&self, x: usize, y: usize) -> Val {
        let mut out = self.zero_val();
        match (&self.elems[x], &self.elems[y]) {
            (Elem::Der(s1, k1), Elem::Der(s2, k2)) => {
                if s1 == s2 {
                    let fd = &self.ders[Self::side_idx(*s1)];
                    let c = fd.maps[*k1].commutator(&fd.maps[*k2]).data;
                    match s1 {
                        Side::Left => out.left = c,
                        Side::Right => out.right = c,
                    }
                }
            }
            (Elem::Der(s, k), Elem::Mat(m)) => self.act(*s, *k, &self.mats[*m], Rational::ONE, &mut out),
            (Elem::Mat(m), Elem::Der(s, k)) => self.act(*s, *k, &self.mats[*m], -Rational::ONE, &mut out),
            (Elem::Mat(a), Elem::Mat(b)) => self.mat_bracket(&self.mats[*a], &self.mats[*b], &mut out),
        }
        out
    }

    fn mat_bracket(&self, a: &MatrixElem, b: &MatrixElem, out: &mut Val) {
        let t = &self.t;
        for (x, y, sgn) in [(a, b, 1i8), (b, a, -1i8)] {
            for &(i, k, p, sp) in &x.entries {
                for &(k2, j, q, sq) in &y.entries {
                    if k != k2 {
                        continue;
                    }
                    let (c, s) = t.basis_product(p, q);
                    *out.mat.entry((i, j, c)).or_default() += Rational::from_int((sgn * sp * sq * s) as i64);
                }
            }
        }
        if self.space != Space::SpecialUnitary {
            return;
        }
        let inv_n = Rational::new(1, self.n as i64);
        let mut trace: BTreeMap<usize, Rational> = BTreeMap::new();
        for (&(i, j, c), v) in &out.mat {
            if i == j {
                *trace.entry(c).or_default() += *v;
            }
        }
        for (c, v) in trace {
            if v.is_zero() {
                continue;
            }
            for i in 0..self.n {
                *out.mat.entry((i, i, c)).or_default() -= v * inv_n;
            }
        }
        // Summed as −Σ D_{a_ij, (b_ji)∗} = Σ m_i m_j D_{a_ij, b_ij}. For a
        // single factor this equals Σ D_{a_ij, b_ji} because D_{x,ȳ} = −D_{x,y};
        // on tensor products only the conjugated form satisfies Jacobi.
        let m = &self.metric.diag;
        for &(i, j, p, sp) in &a.entries {
            for &(i2, j2, q, sq) in &b.entries {
                if i2 != i || j2 != j {
                    continue;
                }
                let sq = sq * m[i] * m[j];
                let coef = Rational::from_int((sp * sq) as i64) * inv_n;
                let (p1, p2) = t.split(p);
                let (q1, q2) = t.split(q);
                let g1 = basis_inner(&t.left, p1, q1);
                if g1 != 0 {
                    let d2 = &self.ders[1];
                    let row = &d2.table[p2 * d2.dim + q2];
                    let f = coef * Rational::from_int(g1 as i64);
                    for (o, v) in out.right.iter_mut().zip(row) {
                        if !v.is_zero() {
                            *o += f * *v;
                        }
                    }
                }
                let g2 = basis_inner(&t.right, p2, q2);
                if g2 != 0 {
                    let d1 = &self.ders[0];
                    let row = &d1.table[p1 * d1.dim + q1];
                    let f = coef * Rational::from_int(g2 as i64);
                    for (o, v) in out.left.iter_mut().zip(row) {
                        if !v.is_zero() {
                            *o += f * *v;
                        }
                    }
                }
            }
        }
    }

    /// Coordinates of a bracket value. On failure the best-effort
    /// coordinates are returned together with the reason.
    fn decompose(&self, v: &Val) -> (Vec<(usize, Rational)>, Option<String>) {
        let mut out = Vec::new();
        let mut fail: Option<String> = None;
        let mut note = |m: String| {
            if fail.is_none() {
                fail = Some(m);
            }
        };
        let with_der = self.space == Space::SpecialUnitary;
        let mut offset = 0;
        for (s, part) in [&v.left, &v.right].into_iter().enumerate() {
            let fd = &self.ders[s];
            let nd = if with_der { fd.maps.len() } else { 0 };
            if part.iter().any(|x| !x.is_zero()) {
                match fd.span.coords(part) {
                    Some(c) if with_der => {
                        out.extend(c.into_iter().enumerate().map(|(k, x)| (offset + k, x)));
                    }
                    Some(_) => note("derivation term in a space without derivations".into()),
                    None => {
                        note(format!("derivation of factor {} outside the basis span", s + 1));
                        if with_der {
                            let c: Vec<Rational> = fd.span.pivots.iter().map(|&p| part[p]).collect();
                            out.extend(c.into_iter().enumerate().map(|(k, x)| (offset + k, x)));
                        }
                    }
                }
            }
            offset += nd;
        }
        let m = &self.metric.diag;
        let mut diag_vals: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
        for (&(i, j, b), &x) in &v.mat {
            if x.is_zero() {
                continue;
            }
            if i < j {
                out.push((self.offdiag[&(i, j, b)], x));
                let partner = v.mat.get(&(j, i, b)).copied().unwrap_or_default();
                let want = x * Rational::from_int((-m[i] * m[j] * self.t.star_sign(b)) as i64);
                if partner != want {
                    note(format!("entry ({j},{i},{b}) breaks the antihermitian condition"));
                }
            } else if i > j {
                if !v.mat.get(&(j, i, b)).is_some_and(|y| !y.is_zero()) {
                    note(format!("entry ({i},{j},{b}) has no partner"));
                }
            } else if !self.im[b] {
                note(format!("diagonal entry ({i},{i},{b}) is not star-imaginary"));
            } else {
                diag_vals.entry(b).or_insert_with(|| vec![Rational::ZERO; self.n])[i] = x;
            }
        }
        for (q, vals) in diag_vals {
            match self.space {
                Space::SpecialUnitary => {
                    let mut c = Rational::ZERO;
                    for (i, x) in vals.iter().enumerate().take(self.n - 1) {
                        c += *x;
                        if !c.is_zero() {
                            out.push((self.diag[&(i, q)], c));
                        }
                    }
                    if !(c + vals[self.n - 1]).is_zero() {
                        note(format!("diagonal of index {q} is not traceless"));
                    }
                }
                _ => {
                    for (i, x) in vals.iter().enumerate() {
                        if !x.is_zero() {
                            out.push((self.diag[&(i, q)], *x));
                        }
                    }
                }
            }
        }
        out.sort_by_key(|(k, _)| *k);
        (out, fail)
    }

    /// Bracket of basis elements together with any closure failure.
    pub fn bracket(&self, x: usize, y: usize) -> (Vec<(usize, Rational)>, Option<String>) {
        self.decompose(&self.bracket_val(x, y))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureFailure {
    pub a: usize,
    pub b: usize,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct Built {
    pub lie: LieAlgebra,
    pub space: Space,
    pub labels: Vec<Rational>,
    pub failures: Vec<ClosureFailure>,
}

fn is_octonionic(f: &Factor) -> bool {
    f.alg.dim == 8
}

/// Builds with the first representative of the recipe's label class.
pub fn build_lie_algebra(recipe: &Recipe) -> Result<Built, VinbergError> {
    let labels = recipe.labels.first(recipe.n)?;
    build_with_labels(recipe, &labels)
}

pub fn default_space(k1: &Factor, k2: &Factor) -> Space {
    if k1.is_standard() && k2.is_standard() {
        Space::SpecialUnitary
    } else {
        Space::FullAntihermitian
    }
}

pub fn build_with_labels(recipe: &Recipe, labels: &[Rational]) -> Result<Built, VinbergError> {
    let d = parse_descriptor(&recipe.descriptor())?;
    let (k1, k2) = (d.k1, d.k2);
    let n = recipe.n;
    let metric = build_metric(n, labels)?;
    let space = recipe.space.unwrap_or_else(|| default_space(&k1, &k2));
    let octo = is_octonionic(&k1) || is_octonionic(&k2);
    let meta = Meta {
        recipe: recipe.to_string(),
        non_lie: false,
    };
    if n == 1 {
        return Ok(Built {
            lie: derivation_algebra(&k1, &k2, meta),
            space,
            labels: labels.to_vec(),
            failures: vec![],
        });
    }
    match space {
        Space::SpecialUnitary => {
            if octo && n != 3 && !recipe.force {
                return Err(VinbergError::OctonionicRequiresN3(n));
            }
        }
        _ => {
            if octo {
                return Err(VinbergError::NonAssociative(recipe.descriptor()));
            }
        }
    }
    let base_space = if space == Space::DerivedAntihermitian {
        Space::FullAntihermitian
    } else {
        space
    };
    let ctx = Context::new(&k1, &k2, metric, base_space);
    let dim = ctx.dim();
    let rows: Vec<Vec<(usize, usize, usize, Rational, Option<String>)>> = (0..dim)
        .into_par_iter()
        .map(|i| {
            let mut v = Vec::new();
            for j in i + 1..dim {
                let (c, f) = ctx.bracket(i, j);
                let mut first = true;
                for (k, x) in c {
                    let note = if first { f.clone() } else { None };
                    first = false;
                    v.push((i, j, k, x, note));
                }
                if first && f.is_some() {
                    v.push((i, j, usize::MAX, Rational::ZERO, f));
                }
            }
            v
        })
        .collect();
    let mut sc = Vec::new();
    let mut failures = Vec::new();
    for (i, j, k, x, note) in rows.into_iter().flatten() {
        if let Some(reason) = note {
            failures.push(ClosureFailure { a: i, b: j, reason });
        }
        if k != usize::MAX && !x.is_zero() {
            sc.push((i, j, k, x));
        }
    }
    if let Some(f) = failures.first() {
        if !recipe.force {
            return Err(VinbergError::ClosureFailure {
                a: f.a,
                b: f.b,
                reason: f.reason.clone(),
            });
        }
    }
    let mut lie = LieAlgebra {
        dim,
        basis: ctx.labels().to_vec(),
        sc,
        meta: Meta {
            recipe: recipe.to_string(),
            non_lie: recipe.force && (octo || !failures.is_empty()),
        },
    };
    if space == Space::DerivedAntihermitian {
        lie = derived_subalgebra(&lie);
    }
    Ok(Built {
        lie,
        space,
        labels: labels.to_vec(),
        failures,
    })
}

/// der(K₁)⊕der(K₂) on its echelon basis, the n = 1 member of the family.
pub fn derivation_algebra(k1: &Factor, k2: &Factor, meta: Meta) -> LieAlgebra {
    let parts = [FactorDer::new(&k1.alg, false), FactorDer::new(&k2.alg, false)];
    let mut basis = Vec::new();
    let mut owner = Vec::new();
    for (s, fd) in parts.iter().enumerate() {
        for k in 0..fd.maps.len() {
            basis.push(format!("D{}.{k}", s + 1));
            owner.push((s, k));
        }
    }
    let offset = parts[0].maps.len();
    LieAlgebra::from_brackets(basis, meta, |a, b| {
        let ((s1, k1), (s2, k2)) = (owner[a], owner[b]);
        if s1 != s2 {
            return vec![];
        }
        let fd = &parts[s1];
        let c = fd.maps[k1].commutator(&fd.maps[k2]).data;
        let co = fd.span.coords(&c).expect("derivations close under commutator");
        let base = if s1 == 0 { 0 } else { offset };
        co.into_iter().enumerate().map(|(k, x)| (base + k, x)).collect()
    })
}

/// Dimension count for the n = 2 unitary octonionic family: the traceless
/// antihermitian 2×2 matrices, one extra imaginary diagonal and der.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct U2Prediction {
    pub sa: usize,
    pub im: usize,
    pub der: usize,
    pub dim: usize,
    pub l: usize,
    pub label: Option<String>,
}

pub fn predict_u2(k: &str, labels: &LabelClass) -> Result<U2Prediction, VinbergError> {
    let d = parse_descriptor(k)?;
    if !d.is_single() || !is_octonionic(&d.k1) || !d.k1.is_standard() {
        return Err(VinbergError::UnsupportedFactor(k.to_string()));
    }
    let metric = build_metric(2, &labels.first(2)?)?;
    let t = d.tensor();
    let sa = sa_basis(&t, &metric, 2, Space::SpecialUnitary).len();
    let im = im_star_basis(&t).len();
    let der = derivation_basis(&d.k1.alg, false).len();
    let label = crate::atlas::u2_label(&d.k1.name, metric.l);
    Ok(U2Prediction {
        sa,
        im,
        der,
        dim: sa + im + der,
        l: metric.l,
        label,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::check_jacobi;

    fn r(k1: &str, k2: &str, n: usize, l: &str) -> Recipe {
        Recipe::new(k1, k2, n, l.parse().unwrap())
    }

    #[test]
    fn recipe_text_round_trip() {
        let x: Recipe = "su(n=3, k1=O, k2=Cs, labels=+,-)".parse().unwrap();
        assert_eq!(x.labels.first(3).unwrap(), vec![Rational::ONE, -Rational::ONE]);
        assert_eq!(x.to_string().parse::<Recipe>().unwrap(), x);
        let y = r("H", "R", 2, "{+}").with_space(Space::FullAntihermitian).forced();
        assert_eq!(y.to_string().parse::<Recipe>().unwrap(), y);
    }

    #[test]
    fn dimensions() {
        let o = parse_descriptor("O").unwrap();
        let m = build_metric(3, &[Rational::ONE, Rational::ONE]).unwrap();
        assert_eq!(sa_basis(&o.tensor(), &m, 3, Space::SpecialUnitary).len(), 38);
        let ht = parse_descriptor("Htilde").unwrap();
        let m2 = build_metric(2, &[Rational::ONE]).unwrap();
        assert_eq!(sa_basis(&ht.tensor(), &m2, 2, Space::FullAntihermitian).len(), 6);
    }

    #[test]
    fn small_builds_close() {
        for (k1, n) in [("R", 3), ("C", 3), ("H", 2), ("H", 3), ("Hs", 2)] {
            let b = build_lie_algebra(&r(k1, "R", n, "{+}")).unwrap();
            assert_eq!(check_jacobi(&b.lie), Ok(()), "{k1} n={n}");
        }
    }

    #[test]
    fn octonionic_guard() {
        assert_eq!(
            build_lie_algebra(&r("O", "R", 2, "{+}")).unwrap_err(),
            VinbergError::OctonionicRequiresN3(2)
        );
        let p = predict_u2("O", &LabelClass::AllPlus).unwrap();
        assert_eq!((p.sa, p.im, p.der, p.dim), (15, 7, 14, 36));
        assert!(matches!(predict_u2("O*H", &LabelClass::AllPlus), Err(VinbergError::UnsupportedFactor(_))));
    }
}
