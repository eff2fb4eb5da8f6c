//! Closed formulas for the classical real forms, and the catalog searched
//! by `identify`.

use std::sync::OnceLock;

use super::{atlas, Expected};

pub const CATALOG_MAX_DIM: i64 = 300;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub dim: i64,
    pub character: i64,
}

fn ortho(size: i64, q: i64) -> (String, i64, i64) {
    let p = size - q;
    let name = if q == 0 { format!("so({size})") } else { format!("so({p},{q})") };
    (name, size * (size - 1) / 2, p * q - (p * (p - 1) + q * (q - 1)) / 2)
}

fn unitary(size: i64, q: i64) -> (String, i64, i64) {
    let p = size - q;
    let name = if q == 0 { format!("su({size})") } else { format!("su({p},{q})") };
    (name, size * size - 1, 2 * p * q - (p * p + q * q - 1))
}

fn quaternionic(size: i64, q: i64) -> (String, i64, i64) {
    let p = size - q;
    let name = if q == 0 { format!("sq({size})") } else { format!("sq({p},{q})") };
    (name, size * (2 * size + 1), 4 * p * q - p * (2 * p + 1) - q * (2 * q + 1))
}

/// Name, dimension and Killing character of a classical series member.
/// Series tags: so, su, sq (index q), slR, slC, sustar, sostar, spR, spC,
/// soC, and the doubles 2su, 2slR. Even-size series need even N. The
/// abelian members so(2), so(1,1) and so(2,C) are left out, since the
/// Killing form cannot tell them apart.
pub fn family_value(series: &str, size: i64, q: i64) -> Option<Expected> {
    if size < 1 || q < 0 || 2 * q > size {
        return None;
    }
    if matches!(series, "so" | "soC") && size < 3 {
        return None;
    }
    let even = size % 2 == 0;
    let m = size / 2;
    let (name, dim, character) = match series {
        "so" => ortho(size, q),
        "su" => unitary(size, q),
        "sq" => quaternionic(size, q),
        "slR" => (format!("sl({size},R)"), size * size - 1, size - 1),
        "slC" => (format!("sl({size},C)"), 2 * (size * size - 1), 0),
        "sustar" if even => (format!("su*({size})"), size * size - 1, -size - 1),
        "sostar" if even => (format!("so*({size})"), m * (2 * m - 1), -m),
        "spR" if even => (format!("sp({size},R)"), m * (2 * m + 1), m),
        "spC" if even => (format!("sp({size},C)"), 2 * m * (2 * m + 1), 0),
        "soC" => (format!("so({size},C)"), size * (size - 1), 0),
        "2su" => {
            let (n, d, c) = unitary(size, q);
            (format!("{n}+{n}"), 2 * d, 2 * c)
        }
        "2slR" => (format!("sl({size},R)+sl({size},R)"), 2 * (size * size - 1), 2 * (size - 1)),
        _ => return None,
    };
    Some(Expected { name, dim, character })
}

/// Every classical form up to `CATALOG_MAX_DIM`, the exceptional forms,
/// and X+X doubles of those that fit. Small coincidences are kept as
/// separate entries, so so(3), su(2) and sq(1) all appear.
pub fn catalog() -> &'static [CatalogEntry] {
    static CAT: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CAT.get_or_init(|| {
        let mut simple = Vec::new();
        let mut push = |e: Option<Expected>, min_dim: i64| {
            if let Some(e) = e {
                if e.dim >= min_dim && e.dim <= CATALOG_MAX_DIM {
                    simple.push(CatalogEntry {
                        name: e.name,
                        dim: e.dim,
                        character: e.character,
                    });
                }
            }
        };
        for series in ["so", "su", "sq"] {
            for size in 1..=40 {
                for q in 0..=size / 2 {
                    push(family_value(series, size, q), 3);
                }
            }
        }
        for series in ["slR", "slC", "sustar", "sostar", "spR", "spC", "soC"] {
            // su*(2) is sq(1) again.
            let from = if series == "sustar" { 4 } else { 1 };
            for size in from..=40 {
                push(family_value(series, size, 0), 3);
            }
        }
        for e in &atlas().exceptional {
            simple.push(CatalogEntry {
                name: e.name.clone(),
                dim: e.dim,
                character: e.character,
            });
        }
        let doubles: Vec<CatalogEntry> = simple
            .iter()
            .filter(|e| 2 * e.dim <= CATALOG_MAX_DIM)
            .map(|e| CatalogEntry {
                name: format!("{0}+{0}", e.name),
                dim: 2 * e.dim,
                character: 2 * e.character,
            })
            .collect();
        simple.extend(doubles);
        simple
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Oracle: dim k − dim p from an explicit maximal compact subalgebra.
    fn character_from_compact(dim: i64, compact: i64) -> i64 {
        (dim - compact) - compact
    }

    #[test]
    fn characters_match_maximal_compact() {
        for size in 2..12i64 {
            for q in 0..=size / 2 {
                let p = size - q;
                if size >= 3 {
                    let so = family_value("so", size, q).unwrap();
                    let k = p * (p - 1) / 2 + q * (q - 1) / 2;
                    assert_eq!(so.character, character_from_compact(so.dim, k));
                }
                let su = family_value("su", size, q).unwrap();
                assert_eq!(su.character, character_from_compact(su.dim, p * p + q * q - 1));
                let sq = family_value("sq", size, q).unwrap();
                let k = p * (2 * p + 1) + q * (2 * q + 1);
                assert_eq!(sq.character, character_from_compact(sq.dim, k));
            }
            let sl = family_value("slR", size, 0).unwrap();
            assert_eq!(sl.character, character_from_compact(sl.dim, size * (size - 1) / 2));
        }
        for m in 1..8i64 {
            let n = 2 * m;
            let e = family_value("sustar", n, 0).unwrap();
            assert_eq!(e.character, character_from_compact(e.dim, m * (2 * m + 1)));
            let e = family_value("sostar", n, 0).unwrap();
            assert_eq!(e.character, character_from_compact(e.dim, m * m));
            let e = family_value("spR", n, 0).unwrap();
            assert_eq!(e.character, character_from_compact(e.dim, m * m));
        }
        assert_eq!(family_value("sostar", 5, 0), None);
        assert_eq!(family_value("so", 2, 1), None);
    }

    #[test]
    fn small_coincidences_share_invariants() {
        let hits: Vec<&str> = catalog()
            .iter()
            .filter(|e| e.dim == 3 && e.character == -3)
            .map(|e| e.name.as_str())
            .collect();
        assert_eq!(hits, ["so(3)", "su(2)", "sq(1)"]);
    }
}
