//! Plain-text file formats: `.qnd` tables and `.mesh` descriptions.
//!
//! Both formats allow `#` comments (to end of line) and blank lines
//! anywhere.
//!
//! ```text
//! qnd 1
//! 3
//! 0 2 1
//! 2 1 0
//! 1 0 2
//! ```
//!
//! ```text
//! mesh 1
//! components 2
//! group 0 Z2
//! group 1 Z1
//! const 1 0 1
//! phi 0 0 0 0
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::mesh::{AbelianGroup, AffineMesh, GroupHom, MeshError};
use crate::table::{verify_quandle, AxiomFailure, Quandle, TableError, ValidationReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unsupported {kind} format version {version:?}")]
    Version { kind: &'static str, version: String },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
    #[error("malformed table: {0}")]
    Table(#[from] TableError),
    #[error("not a quandle: {0}")]
    Axiom(AxiomFailure),
    #[error("{0}")]
    Mesh(#[from] MeshError),
    #[error("group {0} has no invariant-factor label")]
    Unlabelled(usize),
}

/// Which format a text is in, judged by its first token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Qnd,
    Mesh,
}

/// Non-blank lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn detect_kind(text: &str) -> Option<FileKind> {
    let (_, first) = content_lines(text).next()?;
    match first.split_whitespace().next()? {
        "qnd" => Some(FileKind::Qnd),
        "mesh" => Some(FileKind::Mesh),
        _ => None,
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        msg: msg.into(),
    }
}

fn number(line: usize, token: &str) -> Result<usize, FormatError> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("expected a non-negative integer, found {token:?}")))
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    kind: &'static str,
) -> Result<(), FormatError> {
    let (line, text) = lines
        .next()
        .ok_or_else(|| FormatError::Truncated(format!("missing `{kind} 1` header")))?;
    let fields: Vec<&str> = text.split_whitespace().collect();
    match fields[..] {
        [tag, "1"] if tag == kind => Ok(()),
        [tag, version] if tag == kind => Err(FormatError::Version {
            kind,
            version: version.to_string(),
        }),
        _ => Err(parse_err(line, format!("expected `{kind} 1` header"))),
    }
}

/// Parses a `.qnd` file into raw rows without checking the axioms; entries
/// are range-checked against the declared order.
pub fn parse_qnd_rows(text: &str) -> Result<Vec<Vec<usize>>, FormatError> {
    let mut lines = content_lines(text);
    header(&mut lines, "qnd")?;
    let (line, order_line) = lines
        .next()
        .ok_or_else(|| FormatError::Truncated("missing order line".into()))?;
    let n = match order_line.split_whitespace().collect::<Vec<_>>()[..] {
        [v] | ["order", v] => number(line, v)?,
        _ => return Err(parse_err(line, "expected the order")),
    };
    if n == 0 {
        return Err(parse_err(line, "order must be positive"));
    }
    let mut rows = Vec::with_capacity(n);
    for (line, text) in lines {
        if rows.len() == n {
            return Err(parse_err(line, format!("unexpected content after {n} rows")));
        }
        let row = text
            .split_whitespace()
            .map(|t| {
                let v = number(line, t)?;
                if v >= n {
                    return Err(parse_err(line, format!("entry {v} outside 0..{n}")));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(parse_err(
                line,
                format!("row has {} entries, expected {n}", row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(FormatError::Truncated(format!(
            "expected {n} rows, found {}",
            rows.len()
        )));
    }
    Ok(rows)
}

/// Parses a `.qnd` file and checks the quandle axioms.
pub fn parse_qnd(text: &str) -> Result<Quandle, FormatError> {
    let rows = parse_qnd_rows(text)?;
    match verify_quandle(&rows)? {
        ValidationReport::Ok => Ok(Quandle::from_rows(&rows).expect("verified")),
        ValidationReport::Failed(f) => Err(FormatError::Axiom(f)),
    }
}

pub fn write_qnd(q: &Quandle) -> String {
    let mut out = format!("qnd 1\n{}\n", q.order());
    for x in 0..q.order() {
        let row: Vec<String> = q.row(x).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a `.mesh` file. Only structure is checked here; the mesh axioms
/// are left to [`AffineMesh::validate`].
pub fn parse_mesh(text: &str) -> Result<AffineMesh, FormatError> {
    let mut lines = content_lines(text);
    header(&mut lines, "mesh")?;
    let (line, comp_line) = lines
        .next()
        .ok_or_else(|| FormatError::Truncated("missing `components` line".into()))?;
    let r = match comp_line.split_whitespace().collect::<Vec<_>>()[..] {
        ["components", v] => number(line, v)?,
        _ => return Err(parse_err(line, "expected `components r`")),
    };
    if r == 0 {
        return Err(parse_err(line, "a mesh needs at least one component"));
    }
    let mut groups: Vec<Option<AbelianGroup>> = vec![None; r];
    let mut consts = vec![vec![None; r]; r];
    let mut phis: Vec<Vec<Option<(usize, Vec<usize>)>>> = vec![vec![None; r]; r];
    let index = |line: usize, t: &str| -> Result<usize, FormatError> {
        let i = number(line, t)?;
        if i >= r {
            return Err(parse_err(line, format!("component index {i} outside 0..{r}")));
        }
        Ok(i)
    };
    for (line, text) in lines {
        let fields: Vec<&str> = text.split_whitespace().collect();
        match fields[..] {
            ["group", i, label] => {
                let i = index(line, i)?;
                if groups[i].is_some() {
                    return Err(parse_err(line, format!("group {i} declared twice")));
                }
                let g = label
                    .parse()
                    .map_err(|e| parse_err(line, format!("{e}")))?;
                groups[i] = Some(g);
            }
            ["const", i, j, e] => {
                let (i, j) = (index(line, i)?, index(line, j)?);
                if consts[i][j].is_some() {
                    return Err(parse_err(line, format!("const {i} {j} given twice")));
                }
                consts[i][j] = Some((line, number(line, e)?));
            }
            ["phi", i, j, ref images @ ..] => {
                let (i, j) = (index(line, i)?, index(line, j)?);
                if phis[i][j].is_some() {
                    return Err(parse_err(line, format!("phi {i} {j} given twice")));
                }
                let images = images
                    .iter()
                    .map(|t| number(line, t))
                    .collect::<Result<Vec<_>, _>>()?;
                phis[i][j] = Some((line, images));
            }
            _ => return Err(parse_err(line, format!("unrecognised line {text:?}"))),
        }
    }
    let groups: Vec<AbelianGroup> = groups
        .into_iter()
        .enumerate()
        .map(|(i, g)| g.ok_or_else(|| FormatError::Truncated(format!("group {i} is not declared"))))
        .collect::<Result<_, _>>()?;
    let mut const_table = vec![vec![0; r]; r];
    for (i, row) in consts.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if let Some((line, e)) = *c {
                if e >= groups[j].order() {
                    return Err(parse_err(
                        line,
                        format!("constant {e} outside A_{j} of order {}", groups[j].order()),
                    ));
                }
                const_table[i][j] = e;
            }
        }
    }
    let mut phi_table = Vec::with_capacity(r);
    for (i, row) in phis.into_iter().enumerate() {
        let mut out = Vec::with_capacity(r);
        for (j, p) in row.into_iter().enumerate() {
            let image = match p {
                None => vec![0; groups[i].order()],
                Some((line, image)) => {
                    if let Err(e) = GroupHom::new(&groups[i], &groups[j], image.clone()) {
                        return Err(parse_err(line, format!("phi {i} {j}: {e}")));
                    }
                    image
                }
            };
            out.push(image);
        }
        phi_table.push(out);
    }
    Ok(AffineMesh::new(groups, phi_table, const_table)?)
}

/// Writes a mesh; zero constants and zero maps are omitted.
pub fn write_mesh(m: &AffineMesh) -> Result<String, FormatError> {
    let r = m.component_count();
    let mut out = format!("mesh 1\ncomponents {r}\n");
    for (i, g) in m.groups().iter().enumerate() {
        let label = g.label().ok_or(FormatError::Unlabelled(i))?;
        writeln!(out, "group {i} {label}").unwrap();
    }
    for i in 0..r {
        for j in 0..r {
            let c = m.constant(i, j);
            if c != 0 {
                writeln!(out, "const {i} {j} {c}").unwrap();
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            let phi = m.phi(i, j);
            if !phi.is_zero() {
                let images: Vec<String> = phi.image().iter().map(|v| v.to_string()).collect();
                writeln!(out, "phi {i} {j} {}", images.join(" ")).unwrap();
            }
        }
    }
    Ok(out)
}
