//! Cayley-Klein labels, the diagonal metric they generate and the label
//! shorthand classes `{+}`, `{-}`, `{{n;l}}` and `{{±}}`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricError {
    #[error("labels must be nonzero (label {0} is zero)")]
    ZeroLabel(usize),
    #[error("n = {n} needs {} labels, got {got}", n.saturating_sub(1))]
    WrongLength { n: usize, got: usize },
    #[error("n must be at least 1")]
    ZeroSize,
    #[error("label class {class} does not fit n = {n}")]
    ClassMismatch { class: String, n: usize },
    #[error("cannot parse label list {0:?}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CKMetric {
    pub labels: Vec<Rational>,
    /// m_0 = 1, m_j = sign(κ_1 ⋯ κ_j).
    pub diag: Vec<i8>,
    pub l_raw: usize,
    pub l: usize,
}

impl CKMetric {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Sign of κ_{ij} = κ_{i+1} ⋯ κ_j, which equals m_i m_j.
    pub fn two_index_sign(&self, i: usize, j: usize) -> i8 {
        self.labels[i..j].iter().map(|k| k.signum() as i8).product()
    }

    pub fn negative_two_index(&self) -> usize {
        let n = self.n();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.two_index_sign(i, j) < 0)
            .count()
    }
}

pub fn build_metric(n: usize, labels: &[Rational]) -> Result<CKMetric, MetricError> {
    if n == 0 {
        return Err(MetricError::ZeroSize);
    }
    if labels.len() != n - 1 {
        return Err(MetricError::WrongLength { n, got: labels.len() });
    }
    if let Some(p) = labels.iter().position(|k| k.is_zero()) {
        return Err(MetricError::ZeroLabel(p + 1));
    }
    let mut diag = vec![1i8];
    for k in labels {
        let last = *diag.last().unwrap();
        diag.push(last * k.signum() as i8);
    }
    let l_raw = diag.iter().filter(|&&m| m < 0).count();
    Ok(CKMetric {
        labels: labels.to_vec(),
        diag,
        l_raw,
        l: l_raw.min(n - l_raw),
    })
}

/// Normalized inertia index of a sign list, without building the metric.
pub fn inertia_of(signs: &[i8]) -> usize {
    let n = signs.len() + 1;
    let mut m = 1i8;
    let mut neg = 0;
    for &s in signs {
        m *= s;
        if m < 0 {
            neg += 1;
        }
    }
    neg.min(n - neg)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LabelClass {
    AllPlus,
    AllMinus,
    /// Every sign list of the given size with normalized inertia l.
    Inertia { n: usize, l: usize },
    /// Every sign list.
    Any,
    Explicit(Vec<Rational>),
}

/// All ±1 sign lists of length `len`, '+' before '-' lexicographically.
pub fn sign_lists(len: usize) -> Vec<Vec<i8>> {
    (0..1usize << len)
        .map(|bits| {
            (0..len)
                .map(|p| if bits >> (len - 1 - p) & 1 == 1 { -1 } else { 1 })
                .collect()
        })
        .collect()
}

fn to_labels(signs: &[i8]) -> Vec<Rational> {
    signs.iter().map(|&s| Rational::from_int(s as i64)).collect()
}

impl LabelClass {
    /// Every label list in the class for matrix size n, in deterministic order.
    pub fn representatives(&self, n: usize) -> Result<Vec<Vec<Rational>>, MetricError> {
        let len = n.saturating_sub(1);
        let mismatch = || MetricError::ClassMismatch {
            class: self.to_string(),
            n,
        };
        match self {
            LabelClass::AllPlus => Ok(vec![to_labels(&vec![1; len])]),
            LabelClass::AllMinus => Ok(vec![to_labels(&vec![-1; len])]),
            LabelClass::Any => Ok(sign_lists(len).iter().map(|s| to_labels(s)).collect()),
            LabelClass::Inertia { n: cn, l } => {
                if *cn != n {
                    return Err(mismatch());
                }
                let reps: Vec<_> = sign_lists(len)
                    .into_iter()
                    .filter(|s| inertia_of(s) == *l)
                    .map(|s| to_labels(&s))
                    .collect();
                if reps.is_empty() {
                    Err(mismatch())
                } else {
                    Ok(reps)
                }
            }
            LabelClass::Explicit(v) => {
                if v.len() != len {
                    return Err(MetricError::WrongLength { n, got: v.len() });
                }
                Ok(vec![v.clone()])
            }
        }
    }

    pub fn first(&self, n: usize) -> Result<Vec<Rational>, MetricError> {
        Ok(self.representatives(n)?.remove(0))
    }
}

impl fmt::Display for LabelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelClass::AllPlus => f.write_str("{+}"),
            LabelClass::AllMinus => f.write_str("{-}"),
            LabelClass::Inertia { n, l } => write!(f, "{{{{{n};{l}}}}}"),
            LabelClass::Any => f.write_str("{{±}}"),
            LabelClass::Explicit(v) => {
                let parts: Vec<String> = v
                    .iter()
                    .map(|k| match (k.numer(), k.denom()) {
                        (1, 1) => "+".to_string(),
                        (-1, 1) => "-".to_string(),
                        _ => k.to_string(),
                    })
                    .collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl FromStr for LabelClass {
    type Err = MetricError;

    /// Accepts `{+}`, `{-}`, `{{n;l}}`, `{{±}}` (also `{{+-}}`), or an
    /// explicit comma list whose items are `+`, `-` or rationals. The
    /// empty string is the empty list.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || MetricError::Parse(s.to_string());
        match s {
            "{+}" => return Ok(LabelClass::AllPlus),
            "{-}" | "{−}" => return Ok(LabelClass::AllMinus),
            "{{±}}" | "{{+-}}" | "{{pm}}" => return Ok(LabelClass::Any),
            "" => return Ok(LabelClass::Explicit(vec![])),
            _ => {}
        }
        if let Some(inner) = s.strip_prefix("{{").and_then(|x| x.strip_suffix("}}")) {
            let (a, b) = inner.split_once(';').ok_or_else(err)?;
            let n = a.trim().parse().map_err(|_| err())?;
            let l = b.trim().parse().map_err(|_| err())?;
            return Ok(LabelClass::Inertia { n, l });
        }
        let items = s
            .split(',')
            .map(|t| match t.trim() {
                "+" => Ok(Rational::ONE),
                "-" | "−" => Ok(-Rational::ONE),
                x => x.parse::<Rational>().map_err(|_| err()),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LabelClass::Explicit(items))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn metric_examples() {
        let m = build_metric(3, &ints(&[1, 1])).unwrap();
        assert_eq!((m.diag.clone(), m.l), (vec![1, 1, 1], 0));
        let m = build_metric(3, &ints(&[-1, 1])).unwrap();
        assert_eq!((m.diag.clone(), m.l_raw, m.l), (vec![1, -1, -1], 2, 1));
        assert_eq!(build_metric(3, &ints(&[0, 1])), Err(MetricError::ZeroLabel(1)));
    }

    #[test]
    fn two_index_count_is_l_times_complement() {
        for n in 1..7 {
            for s in sign_lists(n - 1) {
                let m = build_metric(n, &to_labels(&s)).unwrap();
                assert_eq!(m.negative_two_index(), m.l_raw * (n - m.l_raw));
            }
        }
        let reps = LabelClass::Inertia { n: 4, l: 2 }.representatives(4).unwrap();
        for r in reps {
            assert_eq!(build_metric(4, &r).unwrap().negative_two_index(), 4);
        }
    }

    #[test]
    fn shorthand_parsing() {
        assert_eq!("{{3;1}}".parse::<LabelClass>().unwrap().first(3).unwrap(), ints(&[1, -1]));
        assert_eq!("{-}".parse::<LabelClass>().unwrap().first(3).unwrap(), ints(&[-1, -1]));
        assert_eq!("{{±}}".parse::<LabelClass>().unwrap().representatives(3).unwrap().len(), 4);
        assert_eq!("+,-".parse::<LabelClass>().unwrap().to_string(), "+,-");
        assert_eq!("{{4;1}}".parse::<LabelClass>().unwrap().to_string(), "{{4;1}}");
        assert!("{{3;1}}".parse::<LabelClass>().unwrap().first(4).is_err());
        assert!("{{3;2}}".parse::<LabelClass>().unwrap().first(3).is_err());
    }
}
