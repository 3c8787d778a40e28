//! Line-oriented input file format for the command line tool.
//!
//! A file has up to four sections:
//!
//! ```text
//! [quiver]
//! vertices = 2
//! arrow a: 1 -> 2
//!
//! [relations]
//! nilpotent = 3
//! a.b            # the path "first a, then b" is zero
//! 1 * a.b - 1 * c
//!
//! [bimodule]
//! dual           # or: regular | triangular <file> | custom
//!
//! [enum]
//! field = 2
//! max-dim = 4
//! seed = 0
//! parallel = false
//! ```
//!
//! Vertices and custom-bimodule basis indices are 1-based in files. `#`
//! starts a comment. A `custom` bimodule is followed by `dim = d` and one
//! `left k = rows` / `right k = rows` line per algebra basis element, where
//! rows are `;`-separated and entries `,`-separated integers. A
//! `triangular <file>` bimodule names a second presentation S; the base
//! algebra becomes R x S and the gluing bimodule is the common algebra
//! acting regularly on both sides, which requires the two presentations to
//! be identical.

use crate::algebra::{
    build_algebra, dual_bimodule, product_algebra, regular_bimodule, triangular_bimodule,
    Algebra, AlgebraPresentation, Bimodule, BimoduleKind, ProductAlgebra, Quiver, Relation,
};
use crate::exactmat::{FieldTag, Mat, Scalar};
use crate::trivext::TrivialExtension;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum InputError {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Build(String),
}

#[derive(Clone, Debug)]
pub enum RawBimodule {
    Regular,
    Dual,
    Triangular(PathBuf),
    Custom {
        dim: usize,
        /// 1-based basis index with its left action matrix rows.
        left: Vec<(usize, Vec<Vec<i64>>)>,
        right: Vec<(usize, Vec<Vec<i64>>)>,
    },
}

/// A parsed file, not yet committed to a field.
#[derive(Clone, Debug)]
pub struct RawInput {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize, String)>,
    /// (source line, terms); each term is (coefficient, path of labels).
    pub relations: Vec<(usize, Vec<(i64, Vec<String>)>)>,
    pub nilpotent: usize,
    pub bimodule: RawBimodule,
    pub field: Option<FieldTag>,
    pub max_dim: Option<usize>,
    pub seed: Option<u64>,
    pub parallel: Option<bool>,
}

fn perr(path: &str, line: usize, message: impl Into<String>) -> InputError {
    InputError::Parse {
        path: path.to_string(),
        line,
        message: message.into(),
    }
}

fn parse_usize(path: &str, line: usize, s: &str, what: &str) -> Result<usize, InputError> {
    s.trim()
        .parse()
        .map_err(|_| perr(path, line, format!("expected a number for {}, got `{}`", what, s.trim())))
}

fn parse_rows(path: &str, line: usize, s: &str) -> Result<Vec<Vec<i64>>, InputError> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|e| {
                    e.trim().parse().map_err(|_| {
                        perr(path, line, format!("bad matrix entry `{}`", e.trim()))
                    })
                })
                .collect()
        })
        .collect()
}

/// Splits a relation line into (coefficient, path) terms. Terms are joined
/// by top-level `+`/`-`; each term is `coeff * path` or a bare path with
/// coefficient 1; paths are dot-separated arrow labels.
fn parse_relation(
    path: &str,
    line: usize,
    s: &str,
) -> Result<Vec<(i64, Vec<String>)>, InputError> {
    let mut terms = Vec::new();
    let mut rest = s.trim();
    let mut sign = 1i64;
    if let Some(r) = rest.strip_prefix('-') {
        sign = -1;
        rest = r.trim_start();
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r.trim_start();
    }
    loop {
        let split = rest
            .char_indices()
            .find(|&(_, c)| c == '+' || c == '-')
            .map(|(i, c)| (i, c));
        let (term, next_sign, tail) = match split {
            Some((i, c)) => (
                &rest[..i],
                if c == '+' { 1 } else { -1 },
                rest[i + 1..].trim_start(),
            ),
            None => (rest, 0, ""),
        };
        let term = term.trim();
        if term.is_empty() {
            return Err(perr(path, line, "empty term in relation"));
        }
        let (coeff, path_str) = match term.split_once('*') {
            Some((c, p)) => (
                c.trim().parse::<i64>().map_err(|_| {
                    perr(path, line, format!("bad coefficient `{}`", c.trim()))
                })?,
                p.trim(),
            ),
            None => (1, term),
        };
        let labels: Vec<String> = path_str
            .split('.')
            .map(|l| l.trim().to_string())
            .collect();
        if labels.iter().any(String::is_empty) {
            return Err(perr(path, line, format!("bad path `{}`", path_str)));
        }
        terms.push((sign * coeff, labels));
        if next_sign == 0 {
            break;
        }
        sign = next_sign;
        rest = tail;
    }
    Ok(terms)
}

pub fn parse_input(text: &str, path: &str) -> Result<RawInput, InputError> {
    #[derive(PartialEq, Clone, Copy)]
    enum Section {
        None,
        Quiver,
        Relations,
        Bimodule,
        Enum,
    }
    let mut section = Section::None;
    let mut vertices: Option<usize> = None;
    let mut arrows: Vec<(usize, usize, String)> = Vec::new();
    let mut relations = Vec::new();
    let mut nilpotent: Option<usize> = None;
    let mut bimodule: Option<RawBimodule> = None;
    let mut field = None;
    let mut max_dim = None;
    let mut seed = None;
    let mut parallel = None;

    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            section = match name.trim() {
                "quiver" => Section::Quiver,
                "relations" => Section::Relations,
                "bimodule" => Section::Bimodule,
                "enum" => Section::Enum,
                other => return Err(perr(path, line, format!("unknown section `[{}]`", other))),
            };
            continue;
        }
        match section {
            Section::None => {
                return Err(perr(path, line, "content before the first section header"))
            }
            Section::Quiver => {
                if let Some(v) = content.strip_prefix("vertices") {
                    let v = v
                        .trim()
                        .strip_prefix('=')
                        .ok_or_else(|| perr(path, line, "expected `vertices = n`"))?;
                    vertices = Some(parse_usize(path, line, v, "vertices")?);
                } else if let Some(a) = content.strip_prefix("arrow ") {
                    let (label, ends) = a
                        .split_once(':')
                        .ok_or_else(|| perr(path, line, "expected `arrow label: i -> j`"))?;
                    let (src, tgt) = ends
                        .split_once("->")
                        .ok_or_else(|| perr(path, line, "expected `arrow label: i -> j`"))?;
                    let s = parse_usize(path, line, src, "arrow source")?;
                    let t = parse_usize(path, line, tgt, "arrow target")?;
                    let n = vertices
                        .ok_or_else(|| perr(path, line, "`vertices = n` must come first"))?;
                    if s == 0 || t == 0 || s > n || t > n {
                        return Err(perr(
                            path,
                            line,
                            format!("arrow endpoints must lie in 1..={}", n),
                        ));
                    }
                    let label = label.trim().to_string();
                    if arrows.iter().any(|(_, _, l)| *l == label) {
                        return Err(perr(path, line, format!("duplicate arrow label `{}`", label)));
                    }
                    arrows.push((s - 1, t - 1, label));
                } else {
                    return Err(perr(path, line, "expected `vertices = n` or `arrow ...`"));
                }
            }
            Section::Relations => {
                if let Some(v) = content.strip_prefix("nilpotent") {
                    let v = v
                        .trim()
                        .strip_prefix('=')
                        .ok_or_else(|| perr(path, line, "expected `nilpotent = L`"))?;
                    nilpotent = Some(parse_usize(path, line, v, "nilpotent")?);
                } else {
                    relations.push((line, parse_relation(path, line, content)?));
                }
            }
            Section::Bimodule => match (&mut bimodule, content) {
                (None, "regular") => bimodule = Some(RawBimodule::Regular),
                (None, "dual") => bimodule = Some(RawBimodule::Dual),
                (None, c) if c.starts_with("triangular") => {
                    let file = c["triangular".len()..].trim();
                    if file.is_empty() {
                        return Err(perr(path, line, "expected `triangular <file>`"));
                    }
                    bimodule = Some(RawBimodule::Triangular(PathBuf::from(file)));
                }
                (None, "custom") => {
                    bimodule = Some(RawBimodule::Custom {
                        dim: 0,
                        left: Vec::new(),
                        right: Vec::new(),
                    })
                }
                (Some(RawBimodule::Custom { dim, left, right }), c) => {
                    if let Some(v) = c.strip_prefix("dim") {
                        let v = v
                            .trim()
                            .strip_prefix('=')
                            .ok_or_else(|| perr(path, line, "expected `dim = d`"))?;
                        *dim = parse_usize(path, line, v, "dim")?;
                    } else if let Some(rest) = c.strip_prefix("left ").or(c.strip_prefix("right "))
                    {
                        let is_left = c.starts_with("left ");
                        let (k, rows) = rest
                            .split_once('=')
                            .ok_or_else(|| perr(path, line, "expected `left k = rows`"))?;
                        let k = parse_usize(path, line, k, "basis index")?;
                        if k == 0 {
                            return Err(perr(path, line, "basis indices are 1-based"));
                        }
                        let rows = parse_rows(path, line, rows)?;
                        if is_left {
                            left.push((k, rows));
                        } else {
                            right.push((k, rows));
                        }
                    } else {
                        return Err(perr(path, line, "expected `dim`, `left` or `right` line"));
                    }
                }
                (None, other) => {
                    return Err(perr(
                        path,
                        line,
                        format!("unknown bimodule kind `{}`", other),
                    ))
                }
                (Some(_), _) => {
                    return Err(perr(path, line, "bimodule kind already declared"))
                }
            },
            Section::Enum => {
                let (key, val) = content
                    .split_once('=')
                    .ok_or_else(|| perr(path, line, "expected `key = value`"))?;
                let val = val.trim();
                match key.trim() {
                    "field" => {
                        field = Some(if val == "Q" {
                            FieldTag::Rationals
                        } else {
                            FieldTag::Prime(
                                parse_usize(path, line, val, "field")? as u32
                            )
                        })
                    }
                    "max-dim" => max_dim = Some(parse_usize(path, line, val, "max-dim")?),
                    "seed" => {
                        seed = Some(val.parse().map_err(|_| {
                            perr(path, line, format!("bad seed `{}`", val))
                        })?)
                    }
                    "parallel" => {
                        parallel = Some(match val {
                            "true" => true,
                            "false" => false,
                            _ => return Err(perr(path, line, "parallel must be true or false")),
                        })
                    }
                    other => {
                        return Err(perr(path, line, format!("unknown enum key `{}`", other)))
                    }
                }
            }
        }
    }

    let vertices =
        vertices.ok_or_else(|| perr(path, 0, "missing `[quiver]` section with `vertices = n`"))?;
    Ok(RawInput {
        vertices,
        arrows,
        relations,
        nilpotent: nilpotent.unwrap_or(2).max(2),
        bimodule: bimodule.unwrap_or(RawBimodule::Regular),
        field,
        max_dim,
        seed,
        parallel,
    })
}

pub fn read_input(path: &Path) -> Result<RawInput, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_input(&text, &path.display().to_string())
}

/// Commits a parsed file to a field, mapping arrow labels to indices.
pub fn build_presentation(
    raw: &RawInput,
    field: FieldTag,
    path: &str,
) -> Result<AlgebraPresentation, InputError> {
    let quiver = Quiver {
        vertex_count: raw.vertices,
        arrows: raw
            .arrows
            .iter()
            .map(|(s, t, l)| crate::algebra::Arrow {
                source: *s,
                target: *t,
                label: l.clone(),
            })
            .collect(),
    };
    let mut relations = Vec::new();
    for (line, terms) in &raw.relations {
        let mut out = Vec::new();
        for (coeff, labels) in terms {
            let mut arrow_path = Vec::new();
            for l in labels {
                let idx = raw
                    .arrows
                    .iter()
                    .position(|(_, _, al)| al == l)
                    .ok_or_else(|| perr(path, *line, format!("unknown arrow label `{}`", l)))?;
                arrow_path.push(idx);
            }
            out.push((Scalar::from_i64(field, *coeff), arrow_path));
        }
        relations.push(Relation { terms: out });
    }
    Ok(AlgebraPresentation {
        quiver,
        relations,
        nilpotency_bound: raw.nilpotent,
        field,
    })
}

/// A fully constructed problem instance.
pub struct ResolvedInput {
    pub algebra: Arc<Algebra>,
    pub ext: Arc<TrivialExtension>,
    pub product: Option<Arc<ProductAlgebra>>,
    pub raw: RawInput,
}

fn custom_mats(
    algebra: &Algebra,
    dim: usize,
    entries: &[(usize, Vec<Vec<i64>>)],
    which: &str,
    path: &str,
) -> Result<Vec<Mat>, InputError> {
    let mut mats = vec![None; algebra.dim];
    for (k, rows) in entries {
        if *k > algebra.dim {
            return Err(InputError::Build(format!(
                "{}: {} action index {} exceeds the algebra dimension {}",
                path, which, k, algebra.dim
            )));
        }
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(InputError::Build(format!(
                "{}: {} action matrix {} must be {}x{}",
                path, which, k, dim, dim
            )));
        }
        let mut m = Mat::zeros(algebra.field, dim, dim);
        for (r, row) in rows.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                m.set(r, c, Scalar::from_i64(algebra.field, e));
            }
        }
        mats[*k - 1] = Some(m);
    }
    mats.into_iter()
        .enumerate()
        .map(|(i, m)| {
            m.ok_or_else(|| {
                InputError::Build(format!(
                    "{}: missing {} action matrix for basis element {}",
                    path,
                    which,
                    i + 1
                ))
            })
        })
        .collect()
}

fn same_presentation(a: &RawInput, b: &RawInput) -> bool {
    a.vertices == b.vertices
        && a.arrows == b.arrows
        && a.nilpotent == b.nilpotent
        && a.relations.len() == b.relations.len()
        && a.relations
            .iter()
            .zip(&b.relations)
            .all(|((_, x), (_, y))| x == y)
}

/// Builds the algebra, bimodule and trivial extension described by a file.
/// `field` overrides the file's own `[enum] field` entry when given.
pub fn resolve_input(
    path: &Path,
    field_override: Option<FieldTag>,
) -> Result<ResolvedInput, InputError> {
    let raw = read_input(path)?;
    let field = field_override
        .or(raw.field)
        .unwrap_or(FieldTag::Prime(2));
    let display = path.display().to_string();
    match &raw.bimodule {
        RawBimodule::Triangular(s_file) => {
            let s_path = path.parent().unwrap_or(Path::new(".")).join(s_file);
            let s_raw = read_input(&s_path)?;
            if !same_presentation(&raw, &s_raw) {
                return Err(InputError::Build(format!(
                    "{}: triangular gluing requires {} to present the same algebra",
                    display,
                    s_path.display()
                )));
            }
            let r_pres = build_presentation(&raw, field, &display)?;
            let s_pres = build_presentation(&s_raw, field, &s_path.display().to_string())?;
            let prod = Arc::new(
                product_algebra(&r_pres, &s_pres)
                    .map_err(|e| InputError::Build(format!("{}: {}", display, e)))?,
            );
            let r = &prod.r;
            let left: Vec<Mat> = (0..r.dim).map(|b| r.left_mult_mat(b).clone()).collect();
            let right: Vec<Mat> = (0..r.dim).map(|b| r.right_mult_mat(b).clone()).collect();
            let m = triangular_bimodule(&prod, left, right)
                .map_err(|e| InputError::Build(format!("{}: {}", display, e)))?;
            Ok(ResolvedInput {
                algebra: prod.algebra.clone(),
                ext: TrivialExtension::new(prod.algebra.clone(), m),
                product: Some(prod),
                raw,
            })
        }
        _ => {
            let pres = build_presentation(&raw, field, &display)?;
            let algebra = build_algebra(&pres)
                .map_err(|e| InputError::Build(format!("{}: {}", display, e)))?;
            let m: Bimodule = match &raw.bimodule {
                RawBimodule::Regular => regular_bimodule(&algebra),
                RawBimodule::Dual => dual_bimodule(&algebra),
                RawBimodule::Custom { dim, left, right } => {
                    let l = custom_mats(&algebra, *dim, left, "left", &display)?;
                    let r = custom_mats(&algebra, *dim, right, "right", &display)?;
                    Bimodule::new(&algebra, l, r, BimoduleKind::Custom)
                        .map_err(|e| InputError::Build(format!("{}: {}", display, e)))?
                }
                RawBimodule::Triangular(_) => unreachable!(),
            };
            Ok(ResolvedInput {
                ext: TrivialExtension::new(algebra.clone(), m),
                algebra,
                product: None,
                raw,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2_DUAL: &str = "\
# two-vertex path algebra with its dual bimodule
[quiver]
vertices = 2
arrow a: 1 -> 2

[relations]
nilpotent = 2

[bimodule]
dual

[enum]
field = 2
max-dim = 4
seed = 0
";

    #[test]
    fn parses_the_running_example() {
        let raw = parse_input(A2_DUAL, "test").unwrap();
        assert_eq!(raw.vertices, 2);
        assert_eq!(raw.arrows, vec![(0, 1, "a".to_string())]);
        assert_eq!(raw.field, Some(FieldTag::Prime(2)));
        assert_eq!(raw.max_dim, Some(4));
        assert!(matches!(raw.bimodule, RawBimodule::Dual));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "[quiver]\nvertices = 2\narrow a: 1 -> 5\n";
        match parse_input(bad, "test") {
            Err(InputError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected a parse error, got {:?}", other.err()),
        }
    }

    #[test]
    fn relation_terms_parse_with_signs() {
        let raw = parse_input(
            "[quiver]\nvertices = 1\narrow a: 1 -> 1\narrow b: 1 -> 1\n[relations]\nnilpotent = 3\n2 * a.b - b.a\n",
            "test",
        )
        .unwrap();
        assert_eq!(
            raw.relations[0].1,
            vec![
                (2, vec!["a".to_string(), "b".to_string()]),
                (-1, vec!["b".to_string(), "a".to_string()]),
            ]
        );
    }

    #[test]
    fn unknown_label_is_reported_with_its_line() {
        let raw = parse_input(
            "[quiver]\nvertices = 2\narrow a: 1 -> 2\n[relations]\nb.a\n",
            "test",
        )
        .unwrap();
        match build_presentation(&raw, FieldTag::Prime(2), "test") {
            Err(InputError::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("expected a parse error, got {:?}", other.err()),
        }
    }

    #[test]
    fn content_before_sections_is_rejected() {
        assert!(parse_input("vertices = 2\n", "test").is_err());
    }
}
