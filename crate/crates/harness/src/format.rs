//! The line-based `.alg` and `.emb` formats.
//!
//! ```text
//! field GF 3          # or: field Q
//! dim 4
//! sc 1 1 1 1          # b_1 b_1 = 1 b_1, indices 1-based
//! sc 1 2 2 -1/2
//! unit 1
//! ```
//!
//! An `.emb` file lists the images of matrix units, then optional planted
//! bases:
//!
//! ```text
//! blocks 1
//! block 1 2
//! eu 1 1 1 0 0 0
//! ...
//! radical 1
//! vec 0 0 0 1
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use assoclie::algcore::StructureAlgebra;
use assoclie::exact::{Field, Scalar, Subspace, Vector};
use assoclie::sdecomp::{MatrixUnits, SemisimpleEmbedding};

use crate::error::{HarnessError, Result};

/// `Q` or `GF <p>`, as written after `field`.
pub fn field_name(field: Field) -> String {
    match field {
        Field::Rationals => "Q".to_string(),
        Field::Prime(p) => format!("GF {p}"),
    }
}

/// Accepts `Q`, `GF <p>`, `GF<p>` and `GF(<p>)`.
pub fn parse_field(s: &str) -> std::result::Result<Field, String> {
    let t = s.trim();
    if t == "Q" {
        return Ok(Field::Rationals);
    }
    let rest = t.strip_prefix("GF").ok_or_else(|| format!("unknown field '{t}'"))?;
    let digits = rest.trim().trim_start_matches('(').trim_end_matches(')').trim();
    let p: u64 = digits.parse().map_err(|_| format!("bad characteristic '{digits}'"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

/// Non-empty lines with comments removed, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

struct LineError {
    file: &'static str,
    line: usize,
}

impl LineError {
    fn err(&self, message: impl Into<String>) -> HarnessError {
        HarnessError::Parse { file: self.file, line: self.line, message: message.into() }
    }

    fn index(&self, word: &str, bound: usize, what: &str) -> Result<usize> {
        let i: usize = word.parse().map_err(|_| self.err(format!("{what} '{word}' is not a positive integer")))?;
        if i == 0 || i > bound {
            return Err(self.err(format!("{what} {i} outside 1..={bound}")));
        }
        Ok(i - 1)
    }

    fn count(&self, word: &str, what: &str) -> Result<usize> {
        word.parse().map_err(|_| self.err(format!("{what} '{word}' is not a nonnegative integer")))
    }

    fn scalar(&self, field: Field, word: &str) -> Result<Scalar> {
        field.parse_scalar(word).map_err(|e| self.err(format!("bad value '{word}': {e}")))
    }

    fn arity(&self, words: &[&str], n: usize) -> Result<()> {
        if words.len() != n {
            return Err(self.err(format!("'{}' expects {} fields, found {}", words[0], n - 1, words.len() - 1)));
        }
        Ok(())
    }
}

pub fn parse_alg(text: &str) -> Result<StructureAlgebra> {
    const FILE: &str = "alg";
    let mut lines = content_lines(text);
    let eof = |message: &str| HarnessError::Parse { file: FILE, line: text.lines().count().max(1), message: message.into() };
    let (ln, words) = lines.next().ok_or_else(|| eof("missing 'field' line"))?;
    let at = LineError { file: FILE, line: ln };
    if words[0] != "field" || words.len() < 2 {
        return Err(at.err("expected 'field Q' or 'field GF <p>'"));
    }
    let field = parse_field(&words[1..].join(" ")).map_err(|m| at.err(m))?;
    let (ln, words) = lines.next().ok_or_else(|| eof("missing 'dim' line"))?;
    let at = LineError { file: FILE, line: ln };
    if words[0] != "dim" {
        return Err(at.err("expected 'dim <n>'"));
    }
    at.arity(&words, 2)?;
    let dim = at.count(words[1], "dimension")?;
    let mut seen: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    let mut triples = Vec::new();
    let mut unit = None;
    for (ln, words) in lines {
        let at = LineError { file: FILE, line: ln };
        match words[0] {
            "sc" => {
                at.arity(&words, 5)?;
                let i = at.index(words[1], dim, "index")?;
                let j = at.index(words[2], dim, "index")?;
                let k = at.index(words[3], dim, "index")?;
                let c = at.scalar(field, words[4])?;
                if let Some(prev) = seen.insert((i, j, k), ln) {
                    return Err(at.err(format!("structure constant ({}, {}, {}) already given on line {prev}", i + 1, j + 1, k + 1)));
                }
                if !c.is_zero() {
                    triples.push((i, j, k, c));
                }
            }
            "unit" => {
                at.arity(&words, 2)?;
                if unit.is_some() {
                    return Err(at.err("second 'unit' line"));
                }
                unit = Some((at.index(words[1], dim, "unit index")?, ln));
            }
            other => return Err(at.err(format!("unknown keyword '{other}'"))),
        }
    }
    let a = StructureAlgebra::from_triples(field, dim, triples)?;
    match unit {
        Some((u, ln)) => a.with_unit(u).map_err(|e| HarnessError::Parse { file: FILE, line: ln, message: e.to_string() }),
        None => Ok(a),
    }
}

pub fn write_alg(a: &StructureAlgebra) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field {}", field_name(a.field()));
    let _ = writeln!(out, "dim {}", a.dim());
    let mut triples: Vec<(usize, usize, usize, &Scalar)> = a.nonzero_constants().collect();
    triples.sort_by_key(|&(i, j, k, _)| (i, j, k));
    for (i, j, k, c) in triples {
        let _ = writeln!(out, "sc {} {} {} {}", i + 1, j + 1, k + 1, c);
    }
    if let Some(u) = a.unit_index() {
        let _ = writeln!(out, "unit {}", u + 1);
    }
    out
}

/// Contents of an `.emb` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbFile {
    pub blocks: Vec<MatrixUnits>,
    pub radical: Option<Vec<Vector>>,
    pub levi: Option<Vec<Vector>>,
}

impl EmbFile {
    pub fn embedding(&self, a: &StructureAlgebra) -> Result<SemisimpleEmbedding> {
        Ok(SemisimpleEmbedding::new(a, self.blocks.clone())?)
    }

    pub fn radical_space(&self, a: &StructureAlgebra) -> Result<Option<Subspace>> {
        span_of(a, self.radical.as_ref())
    }

    pub fn levi_space(&self, a: &StructureAlgebra) -> Result<Option<Subspace>> {
        span_of(a, self.levi.as_ref())
    }
}

fn span_of(a: &StructureAlgebra, vs: Option<&Vec<Vector>>) -> Result<Option<Subspace>> {
    match vs {
        Some(vs) => Ok(Some(Subspace::span(a.field(), a.dim(), vs.clone())?)),
        None => Ok(None),
    }
}

/// Parses an `.emb` file against the algebra it refers to.
pub fn parse_emb(text: &str, a: &StructureAlgebra) -> Result<EmbFile> {
    const FILE: &str = "emb";
    let field = a.field();
    let dim = a.dim();
    let lines: Vec<(usize, Vec<&str>)> = content_lines(text).collect();
    let last = text.lines().count().max(1);
    let mut pos = 0;
    let vector = |at: &LineError, words: &[&str]| -> Result<Vector> {
        if words.len() != dim {
            return Err(at.err(format!("coordinate vector has {} entries, expected {dim}", words.len())));
        }
        words.iter().map(|w| at.scalar(field, w)).collect()
    };
    let Some((ln, words)) = lines.first() else {
        return Err(HarnessError::Parse { file: FILE, line: last, message: "missing 'blocks' line".into() });
    };
    let at = LineError { file: FILE, line: *ln };
    if words[0] != "blocks" {
        return Err(at.err("expected 'blocks <s>'"));
    }
    at.arity(words, 2)?;
    let s = at.count(words[1], "block count")?;
    pos += 1;
    let mut blocks = Vec::with_capacity(s);
    for b in 0..s {
        let Some((ln, words)) = lines.get(pos) else {
            return Err(HarnessError::Parse { file: FILE, line: last, message: format!("missing 'block {}' line", b + 1) });
        };
        let at = LineError { file: FILE, line: *ln };
        if words[0] != "block" {
            return Err(at.err(format!("expected 'block {} <n>'", b + 1)));
        }
        at.arity(words, 3)?;
        if at.count(words[1], "block number")? != b + 1 {
            return Err(at.err(format!("expected block number {}", b + 1)));
        }
        let n = at.count(words[2], "block size")?;
        if n == 0 {
            return Err(at.err("block size must be positive"));
        }
        pos += 1;
        let mut units: Vec<Option<Vector>> = vec![None; n * n];
        for _ in 0..n * n {
            let Some((ln, words)) = lines.get(pos) else {
                return Err(HarnessError::Parse { file: FILE, line: last, message: format!("block {} ends early", b + 1) });
            };
            let at = LineError { file: FILE, line: *ln };
            if words[0] != "eu" || words.len() < 3 {
                return Err(at.err("expected 'eu <s> <t> <coordinates>'"));
            }
            let si = at.index(words[1], n, "row")?;
            let ti = at.index(words[2], n, "column")?;
            if units[si * n + ti].is_some() {
                return Err(at.err(format!("e_{}{} given twice", si + 1, ti + 1)));
            }
            units[si * n + ti] = Some(vector(&at, &words[3..])?);
            pos += 1;
        }
        let units: Vec<Vector> = units.into_iter().map(|u| u.expect("all n² units read")).collect();
        blocks.push(MatrixUnits::new(n, units)?);
    }
    let mut radical = None;
    let mut levi = None;
    while let Some((ln, words)) = lines.get(pos) {
        let at = LineError { file: FILE, line: *ln };
        let slot = match words[0] {
            "radical" => &mut radical,
            "levi" => &mut levi,
            other => return Err(at.err(format!("unknown section '{other}'"))),
        };
        if slot.is_some() {
            return Err(at.err(format!("second '{}' section", words[0])));
        }
        at.arity(words, 2)?;
        let count = at.count(words[1], "vector count")?;
        pos += 1;
        let mut vs = Vec::with_capacity(count);
        for _ in 0..count {
            let Some((ln, words)) = lines.get(pos) else {
                return Err(HarnessError::Parse { file: FILE, line: last, message: "section ends early".into() });
            };
            let at = LineError { file: FILE, line: *ln };
            if words[0] != "vec" {
                return Err(at.err("expected 'vec <coordinates>'"));
            }
            vs.push(vector(&at, &words[1..])?);
            pos += 1;
        }
        *slot = Some(vs);
    }
    Ok(EmbFile { blocks, radical, levi })
}

fn push_vector(out: &mut String, v: &[Scalar]) {
    for c in v {
        let _ = write!(out, " {c}");
    }
    out.push('\n');
}

pub fn write_emb(emb: &EmbFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "blocks {}", emb.blocks.len());
    for (b, units) in emb.blocks.iter().enumerate() {
        let n = units.size();
        let _ = writeln!(out, "block {} {}", b + 1, n);
        for s in 0..n {
            for t in 0..n {
                let _ = write!(out, "eu {} {}", s + 1, t + 1);
                push_vector(&mut out, units.unit(s, t));
            }
        }
    }
    for (name, section) in [("radical", &emb.radical), ("levi", &emb.levi)] {
        if let Some(vs) = section {
            let _ = writeln!(out, "{name} {}", vs.len());
            for v in vs {
                out.push_str("vec");
                push_vector(&mut out, v);
            }
        }
    }
    out
}
