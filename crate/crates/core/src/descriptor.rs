//! Text names for algebras.
//!
//! | name      | raw form          | star                                  |
//! |-----------|-------------------|---------------------------------------|
//! | `R`       | `cd:`             | standard                              |
//! | `C`       | `cd:+`            | standard                              |
//! | `Cs`      | `cd:-`            | standard                              |
//! | `Cbar`    | `cd:+;star=id`    | identity                              |
//! | `Csbar`   | `cd:-;star=id`    | identity                              |
//! | `H`       | `cd:++`           | standard                              |
//! | `Hs`      | `cd:+-`           | standard                              |
//! | `Htilde`  | `cd:++;star=rev3` | negates e3 only                       |
//! | `Hstilde` | `cd:+-;star=rev1` | negates the elliptic unit e1 only     |
//! | `Hshat`   | `cd:+-;star=rev2` | negates the hyperbolic unit e2 only   |
//! | `O`       | `cd:+++`          | standard                              |
//! | `Os`      | `cd:++-`          | standard                              |
//!
//! In a raw form the signs list the doubling stages in order, first stage
//! first: `+` adjoins an elliptic unit, `-` a hyperbolic one. The optional
//! star suffix is `std`, `id` or `revN`. A tensor product is written
//! `K1*K2`.

use std::fmt;

use thiserror::Error;

use crate::cd::{apply_star_variant, build_cd, CdError, CompositionAlgebra, SignSequence, StarVariant, Unit};
use crate::tensor::{tensor_product, TensorAlgebra};

pub const NAMED: [(&str, &str); 12] = [
    ("R", "cd:"),
    ("C", "cd:+"),
    ("Cs", "cd:-"),
    ("Cbar", "cd:+;star=id"),
    ("Csbar", "cd:-;star=id"),
    ("H", "cd:++"),
    ("Hs", "cd:+-"),
    ("Htilde", "cd:++;star=rev3"),
    ("Hstilde", "cd:+-;star=rev1"),
    ("Hshat", "cd:+-;star=rev2"),
    ("O", "cd:+++"),
    ("Os", "cd:++-"),
];

/// The seven standard-star classes plus ℝ, in square order.
pub const STANDARD: [&str; 7] = ["R", "C", "Cs", "H", "Hs", "O", "Os"];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DescriptorError {
    #[error("unknown algebra name {0:?}")]
    Unknown(String),
    #[error("malformed raw descriptor {0:?}")]
    Malformed(String),
    #[error("{0}")]
    Algebra(#[from] CdError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// Canonical text: the short name when one matches, otherwise raw form.
    pub name: String,
    pub alg: CompositionAlgebra,
}

impl Factor {
    pub fn is_standard(&self) -> bool {
        self.alg.variant == StarVariant::Standard
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn raw_text(signs: &SignSequence, variant: StarVariant) -> String {
    let star = match variant {
        StarVariant::Standard => String::new(),
        StarVariant::Identity => ";star=id".into(),
        StarVariant::Reversion(u) => format!(";star=rev{u}"),
    };
    format!("cd:{signs}{star}")
}

fn parse_raw(s: &str) -> Result<(SignSequence, StarVariant), DescriptorError> {
    let bad = || DescriptorError::Malformed(s.to_string());
    let body = s.strip_prefix("cd:").ok_or_else(bad)?;
    let (signs, star) = match body.split_once(';') {
        Some((a, b)) => (a, Some(b.strip_prefix("star=").ok_or_else(bad)?)),
        None => (body, None),
    };
    let units = signs
        .chars()
        .map(|c| match c {
            '+' => Ok(Unit::Elliptic),
            '-' => Ok(Unit::Hyperbolic),
            _ => Err(bad()),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let variant = match star {
        None | Some("std") => StarVariant::Standard,
        Some("id") => StarVariant::Identity,
        Some(r) => {
            let u = r.strip_prefix("rev").and_then(|x| x.parse().ok()).ok_or_else(bad)?;
            StarVariant::Reversion(u)
        }
    };
    Ok((SignSequence(units), variant))
}

pub fn parse_factor(s: &str) -> Result<Factor, DescriptorError> {
    let s = s.trim();
    let raw = if s.starts_with("cd:") {
        s.to_string()
    } else {
        NAMED
            .iter()
            .find(|(n, _)| *n == s)
            .map(|(_, r)| r.to_string())
            .ok_or_else(|| DescriptorError::Unknown(s.to_string()))?
    };
    let (signs, variant) = parse_raw(&raw)?;
    let base = build_cd(&signs)?;
    let alg = match variant {
        StarVariant::Standard => base,
        v => apply_star_variant(&base, v)?,
    };
    let canon = raw_text(&signs, variant);
    let name = NAMED
        .iter()
        .find(|(_, r)| *r == canon)
        .map(|(n, _)| n.to_string())
        .unwrap_or(canon);
    Ok(Factor { name, alg })
}

/// `K` or `K1*K2`; a single factor is paired with `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descriptor {
    pub k1: Factor,
    pub k2: Factor,
}

impl Descriptor {
    pub fn tensor(&self) -> TensorAlgebra {
        tensor_product(&self.k1.alg, &self.k2.alg)
    }

    pub fn is_single(&self) -> bool {
        self.k2.alg.dim == 1
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_single() {
            write!(f, "{}", self.k1)
        } else {
            write!(f, "{}*{}", self.k1, self.k2)
        }
    }
}

pub fn parse_descriptor(s: &str) -> Result<Descriptor, DescriptorError> {
    match s.split_once('*') {
        Some((a, b)) => Ok(Descriptor {
            k1: parse_factor(a)?,
            k2: parse_factor(b)?,
        }),
        None => Ok(Descriptor {
            k1: parse_factor(s)?,
            k2: parse_factor("R")?,
        }),
    }
}
