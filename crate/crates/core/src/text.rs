//! Plain-text forms of algebras, elements, triples, refinements and witnesses.
//!
//! ```text
//! atoms 2
//! sigma 2 1
//! name four
//! ```
//!
//! Elements are `0`, `1` or `{i,j,...}` (1-based; `{}` is accepted for 0).
//! Blank lines and lines starting with `#` are ignored when parsing.

use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{Element, FiniteAlgebra};
use crate::model::Stage;
use crate::refinement::AtomRefinement;
use crate::solver::{Triple, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct TextError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> TextError {
    TextError {
        line,
        message: message.into(),
    }
}

/// An algebra read from a file, with its optional name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraFile {
    pub algebra: FiniteAlgebra,
    pub name: Option<String>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_algebra(text: &str) -> Result<AlgebraFile, TextError> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    parse_algebra_lines(&lines, 0).map(|(a, _)| a)
}

/// Parses an algebra block starting at `lines[at]`; returns the index after it.
fn parse_algebra_lines(
    lines: &[(usize, &str)],
    at: usize,
) -> Result<(AlgebraFile, usize), TextError> {
    let last = lines.last().map_or(1, |l| l.0);
    let (ln, atoms_line) = *lines
        .get(at)
        .ok_or_else(|| err(last, "expected `atoms <n>`"))?;
    let n: usize = atoms_line
        .strip_prefix("atoms")
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| err(ln, "expected `atoms <n>`"))?;
    let (ln, sigma_line) = *lines
        .get(at + 1)
        .ok_or_else(|| err(ln, "expected `sigma <images>`"))?;
    let rest = sigma_line
        .strip_prefix("sigma")
        .ok_or_else(|| err(ln, "expected `sigma <images>`"))?;
    let sigma: Vec<usize> = rest
        .split_whitespace()
        .map(|w| {
            w.parse()
                .map_err(|_| err(ln, format!("bad atom index `{w}`")))
        })
        .collect::<Result<_, _>>()?;
    let algebra = FiniteAlgebra::new(n, &sigma).map_err(|e| err(ln, e.to_string()))?;
    let mut next = at + 2;
    let mut name = None;
    if let Some(&(_, l)) = lines.get(next) {
        if let Some(rest) = l.strip_prefix("name") {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                name = Some(rest.trim().to_string());
                next += 1;
            }
        }
    }
    Ok((AlgebraFile { algebra, name }, next))
}

pub fn format_algebra(alg: &FiniteAlgebra, name: Option<&str>) -> String {
    let mut s = format!("atoms {}\nsigma", alg.n());
    for img in alg.sigma_one_based() {
        let _ = write!(s, " {img}");
    }
    s.push('\n');
    if let Some(name) = name {
        let _ = writeln!(s, "name {name}");
    }
    s
}

/// Parses an element of an algebra with `n` atoms.
pub fn parse_element(n: usize, text: &str) -> Result<Element, TextError> {
    let t = text.trim();
    match t {
        "0" => return Ok(Element::empty(n)),
        "1" => return Ok(Element::full(n)),
        _ => {}
    }
    let inner = t
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| err(1, format!("expected `0`, `1` or `{{...}}`, found `{t}`")))?;
    let atoms: Vec<usize> = inner
        .split(',')
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(|w| {
            w.parse()
                .map_err(|_| err(1, format!("bad atom index `{w}`")))
        })
        .collect::<Result<_, _>>()?;
    Element::from_one_based(n, &atoms).map_err(|e| err(1, e.to_string()))
}

/// Parses `I1={..} I2={..} I3={..}`.
pub fn parse_triple(alg: &FiniteAlgebra, text: &str) -> Result<Triple, TextError> {
    let mut sets = [None, None, None];
    let mut rest = text.trim();
    while !rest.is_empty() {
        let (key, after) = rest
            .split_once('=')
            .ok_or_else(|| err(1, "expected `I1={..} I2={..} I3={..}`"))?;
        let slot = match key.trim() {
            "I1" => 0,
            "I2" => 1,
            "I3" => 2,
            other => return Err(err(1, format!("unknown set `{other}`"))),
        };
        let after = after.trim_start();
        let end = after
            .find('}')
            .ok_or_else(|| err(1, format!("missing `}}` after `{key}=`")))?;
        sets[slot] = Some(parse_element(alg.n(), &after[..=end])?);
        rest = after[end + 1..].trim_start();
    }
    let [Some(i1), Some(i2), Some(i3)] = sets else {
        return Err(err(1, "all of I1, I2, I3 are required"));
    };
    Triple::new(alg.clone(), i1, i2, i3).map_err(|e| err(1, e.to_string()))
}

fn write_cells(s: &mut String, r: &AtomRefinement) {
    for (i, cell) in r.cells().iter().enumerate() {
        let _ = writeln!(s, "cell {}: {}", i + 1, cell.set_string());
    }
}

/// `source:` and `target:` algebra blocks followed by one `cell` line per source atom.
pub fn format_refinement(r: &AtomRefinement) -> String {
    let mut s = String::from("source:\n");
    s += &format_algebra(r.source(), None);
    s += "target:\n";
    s += &format_algebra(r.target(), None);
    write_cells(&mut s, r);
    s
}

fn expect_header(lines: &[(usize, &str)], at: usize, header: &str) -> Result<usize, TextError> {
    match lines.get(at) {
        Some(&(_, l)) if l == header => Ok(at + 1),
        Some(&(ln, l)) => Err(err(ln, format!("expected `{header}`, found `{l}`"))),
        None => Err(err(
            lines.last().map_or(1, |l| l.0),
            format!("expected `{header}`"),
        )),
    }
}

fn parse_cells(
    lines: &[(usize, &str)],
    mut at: usize,
    source: &FiniteAlgebra,
    target: &FiniteAlgebra,
) -> Result<(AtomRefinement, usize), TextError> {
    let mut cells = Vec::with_capacity(source.n());
    for i in 1..=source.n() {
        let (ln, l) = *lines.get(at).ok_or_else(|| {
            err(
                lines.last().map_or(1, |l| l.0),
                format!("missing `cell {i}:`"),
            )
        })?;
        let body = l
            .strip_prefix(&format!("cell {i}:"))
            .ok_or_else(|| err(ln, format!("expected `cell {i}: {{...}}`")))?;
        cells.push(parse_element(target.n(), body).map_err(|e| err(ln, e.message))?);
        at += 1;
    }
    let r = AtomRefinement::new(source.clone(), target.clone(), cells).map_err(|e| {
        err(
            lines.get(at.saturating_sub(1)).map_or(1, |l| l.0),
            e.to_string(),
        )
    })?;
    Ok((r, at))
}

pub fn parse_refinement(text: &str) -> Result<AtomRefinement, TextError> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let at = expect_header(&lines, 0, "source:")?;
    let (src, at) = parse_algebra_lines(&lines, at)?;
    let at = expect_header(&lines, at, "target:")?;
    let (tgt, at) = parse_algebra_lines(&lines, at)?;
    let (r, at) = parse_cells(&lines, at, &src.algebra, &tgt.algebra)?;
    if let Some(&(ln, l)) = lines.get(at) {
        return Err(err(ln, format!("unexpected `{l}`")));
    }
    Ok(r)
}

/// `base:`, `extension:`, `refinement:` cell lines and the `element:` line.
pub fn format_witness(w: &Witness) -> String {
    let mut s = String::from("base:\n");
    s += &format_algebra(w.base(), None);
    s += "extension:\n";
    s += &format_algebra(w.extension(), None);
    s += "refinement:\n";
    write_cells(&mut s, &w.embedding);
    let _ = writeln!(s, "element: {}", w.element);
    s
}

pub fn parse_witness(text: &str) -> Result<Witness, TextError> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let at = expect_header(&lines, 0, "base:")?;
    let (base, at) = parse_algebra_lines(&lines, at)?;
    let at = expect_header(&lines, at, "extension:")?;
    let (ext, at) = parse_algebra_lines(&lines, at)?;
    let at = expect_header(&lines, at, "refinement:")?;
    let (embedding, at) = parse_cells(&lines, at, &base.algebra, &ext.algebra)?;
    let (ln, l) = *lines
        .get(at)
        .ok_or_else(|| err(lines.last().map_or(1, |l| l.0), "missing `element:`"))?;
    let body = l
        .strip_prefix("element:")
        .ok_or_else(|| err(ln, "expected `element: ...`"))?;
    let element = parse_element(ext.algebra.n(), body).map_err(|e| err(ln, e.message))?;
    Ok(Witness { embedding, element })
}

/// One `I1=.. I2=.. I3=.. -> element` line per realized triple, then the stage
/// algebra and its refinement.
pub fn format_stage(stage: &Stage, realizers: &[(Triple, Element)]) -> String {
    let mut s = String::from("realizers:\n");
    for (t, u) in realizers {
        let _ = writeln!(s, "{t} -> {u}");
    }
    s += "stage:\n";
    s += &format_algebra(stage.algebra(), None);
    s += "refinement:\n";
    write_cells(&mut s, &stage.embedding);
    s
}
