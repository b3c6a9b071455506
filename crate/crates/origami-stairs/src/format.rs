//! The `.surf` plain-text surface format.
//!
//! ```text
//! # lines starting with # are comments
//! name = five square staircase
//! k = 5
//! h = (1 2)(3 4 5)
//! v = (1 5)(2 3)
//! group = Z^1            # or Z/4
//! stratum = H(2)         # optional self-check
//! cut square=2 start=0,0 dir=0,1 len=1 value=[1]
//! cut square=1 start=0,0 dir=0,1 len=1 value=[-1]
//! ```
//!
//! Keys take `key = value`; `h`/`v` use cycle notation; rationals are
//! written `a/b` (or `a`); group values are bracketed integer vectors.
//! `cut` statements live on one line with space-free fields.
//!
//! Crossing sign convention, used by every report downstream:
//!
//! ```text
//!        cut direction d
//!             ^
//!     +1      |      -1
//!   flow ----->|<----- flow
//!             |
//! ```
//!
//! a crossing counts `+value` when the flow direction `w` has
//! `cross(d, w) = d.x*w.y - d.y*w.x > 0` (the flow passes the cut
//! left-to-right as seen along `d`), and `-value` the other way.

use std::fmt::Write as _;

use thiserror::Error;

use crate::cut::{Cut, StaircaseSpec};
use crate::group::Group;
use crate::perm::Permutation;
use crate::surface::Origami;
use crate::{q, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("semantic error at line {line}, column {col}: {message}")]
    Semantic {
        line: usize,
        col: usize,
        message: String,
    },
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> SurfError {
    SurfError::Syntax {
        line,
        col,
        message: message.into(),
    }
}

fn semantic(line: usize, col: usize, message: impl Into<String>) -> SurfError {
    SurfError::Semantic {
        line,
        col,
        message: message.into(),
    }
}

/// A parsed `.surf` document.
#[derive(Debug, Clone)]
pub struct SurfaceDocument {
    pub name: Option<String>,
    pub origami: Origami,
    /// Present when the document declares a group or cuts.
    pub spec: Option<StaircaseSpec>,
    pub declared_stratum: Option<String>,
}

impl SurfaceDocument {
    /// The staircase spec, materializing a trivial one (group `Z^1`,
    /// no cuts) for plain surface documents.
    pub fn spec_or_trivial(&self) -> StaircaseSpec {
        match &self.spec {
            Some(s) => s.clone(),
            None => StaircaseSpec::trivial(self.origami.clone(), Group::z(1).unwrap()),
        }
    }
}

#[derive(Debug)]
struct Token {
    text: String,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Vec<Vec<Token>> {
    text.lines()
        .enumerate()
        .map(|(ln, raw)| {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            };
            let mut toks = Vec::new();
            let mut col = 0usize;
            for piece in line.split_inclusive(char::is_whitespace) {
                let trimmed = piece.trim_end_matches(char::is_whitespace);
                if !trimmed.is_empty() {
                    toks.push(Token {
                        text: trimmed.to_string(),
                        line: ln + 1,
                        col: col + 1,
                    });
                }
                col += piece.chars().count();
            }
            toks
        })
        .collect()
}

fn parse_q(s: &str, line: usize, col: usize) -> Result<Q, SurfError> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: i128 = n
        .parse()
        .map_err(|_| syntax(line, col, format!("bad rational `{}`", s)))?;
    let d: i128 = d
        .parse()
        .map_err(|_| syntax(line, col, format!("bad rational `{}`", s)))?;
    if d == 0 {
        return Err(syntax(line, col, format!("zero denominator in `{}`", s)));
    }
    Ok(q(n, d))
}

fn parse_group(s: &str, line: usize, col: usize) -> Result<Group, SurfError> {
    let make = |r: Result<Group, crate::group::GroupError>| {
        r.map_err(|e| semantic(line, col, e.to_string()))
    };
    if s == "Z" {
        return make(Group::z(1));
    }
    if let Some(d) = s.strip_prefix("Z^") {
        let d: usize = d
            .parse()
            .map_err(|_| syntax(line, col, format!("bad group `{}`", s)))?;
        return make(Group::z(d));
    }
    if let Some(m) = s.strip_prefix("Z/") {
        let m: u64 = m
            .parse()
            .map_err(|_| syntax(line, col, format!("bad group `{}`", s)))?;
        return make(Group::z_mod(m));
    }
    Err(syntax(
        line,
        col,
        format!("bad group `{}` (expected Z^d or Z/m)", s),
    ))
}

struct RawCut {
    square: usize,
    start: (Q, Q),
    dir: (i64, i64),
    len: Q,
    value: Vec<i64>,
    line: usize,
    col: usize,
}

fn parse_cut_line(toks: &[Token]) -> Result<RawCut, SurfError> {
    let (line, col) = (toks[0].line, toks[0].col);
    let mut square = None;
    let mut start = None;
    let mut dir = None;
    let mut len = None;
    let mut value = None;
    for t in &toks[1..] {
        let (key, val) = t
            .text
            .split_once('=')
            .ok_or_else(|| syntax(t.line, t.col, format!("expected field=value, got `{}`", t.text)))?;
        match key {
            "square" => {
                square = Some(val.parse::<usize>().map_err(|_| {
                    syntax(t.line, t.col, format!("bad square `{}`", val))
                })?);
            }
            "start" => {
                let (a, b) = val.split_once(',').ok_or_else(|| {
                    syntax(t.line, t.col, format!("bad start `{}`", val))
                })?;
                start = Some((parse_q(a, t.line, t.col)?, parse_q(b, t.line, t.col)?));
            }
            "dir" => {
                let (a, b) = val.split_once(',').ok_or_else(|| {
                    syntax(t.line, t.col, format!("bad dir `{}`", val))
                })?;
                let pa = a.parse::<i64>();
                let pb = b.parse::<i64>();
                match (pa, pb) {
                    (Ok(a), Ok(b)) => dir = Some((a, b)),
                    _ => return Err(syntax(t.line, t.col, format!("bad dir `{}`", val))),
                }
            }
            "len" => len = Some(parse_q(val, t.line, t.col)?),
            "value" => {
                let inner = val
                    .strip_prefix('[')
                    .and_then(|v| v.strip_suffix(']'))
                    .ok_or_else(|| {
                        syntax(t.line, t.col, format!("bad value `{}`", val))
                    })?;
                let coords: Result<Vec<i64>, _> = inner
                    .split(',')
                    .filter(|s| !s.is_empty())
                    .map(str::parse)
                    .collect();
                value = Some(coords.map_err(|_| {
                    syntax(t.line, t.col, format!("bad value `{}`", val))
                })?);
            }
            other => {
                return Err(syntax(
                    t.line,
                    t.col,
                    format!("unknown cut field `{}`", other),
                ))
            }
        }
    }
    let missing = |what: &str| syntax(line, col, format!("cut missing `{}`", what));
    Ok(RawCut {
        square: square.ok_or_else(|| missing("square"))?,
        start: start.ok_or_else(|| missing("start"))?,
        dir: dir.ok_or_else(|| missing("dir"))?,
        len: len.ok_or_else(|| missing("len"))?,
        value: value.ok_or_else(|| missing("value"))?,
        line,
        col,
    })
}

pub fn parse_surface(text: &str) -> Result<SurfaceDocument, SurfError> {
    let mut fields: Vec<(String, String, usize, usize)> = Vec::new();
    let mut raw_cuts: Vec<RawCut> = Vec::new();
    for line_toks in tokenize(text) {
        let mut toks = &line_toks[..];
        if toks.is_empty() {
            continue;
        }
        if toks[0].text == "cut" {
            raw_cuts.push(parse_cut_line(toks)?);
            continue;
        }
        while !toks.is_empty() {
            let t = &toks[0];
            // accept both `key=value` and the spaced `key = value`
            let (key, mut value, mut used) = match t.text.split_once('=') {
                Some((k, v)) => (k, v.to_string(), 1),
                None if toks.len() >= 2 && toks[1].text.starts_with('=') => {
                    (t.text.as_str(), toks[1].text[1..].to_string(), 2)
                }
                None => {
                    return Err(syntax(
                        t.line,
                        t.col,
                        format!("expected key=value, got `{}`", t.text),
                    ))
                }
            };
            if key.is_empty() {
                return Err(syntax(t.line, t.col, "empty key"));
            }
            while used < toks.len() {
                let cur = &toks[used];
                let starts_pair = cur.text.contains('=')
                    || (used + 1 < toks.len() && toks[used + 1].text.starts_with('='));
                if starts_pair {
                    break;
                }
                if !value.is_empty() {
                    value.push(' ');
                }
                value.push_str(&cur.text);
                used += 1;
            }
            fields.push((key.to_string(), value, t.line, t.col));
            toks = &toks[used..];
        }
    }

    let find = |k: &str| fields.iter().find(|f| f.0 == k);
    for (key, _, line, col) in &fields {
        if !matches!(key.as_str(), "name" | "k" | "h" | "v" | "group" | "stratum") {
            return Err(syntax(*line, *col, format!("unknown key `{}`", key)));
        }
    }
    let (_, k_str, k_line, k_col) =
        find("k").ok_or_else(|| syntax(1, 1, "missing `k`"))?;
    let k: usize = k_str
        .parse()
        .map_err(|_| syntax(*k_line, *k_col, format!("bad square count `{}`", k_str)))?;
    if k == 0 {
        return Err(semantic(*k_line, *k_col, "square count must be positive"));
    }

    let parse_perm = |key: &str| -> Result<Permutation, SurfError> {
        let (_, text, line, col) =
            find(key).ok_or_else(|| syntax(1, 1, format!("missing `{}`", key)))?;
        Permutation::parse(k, text).map_err(|e| semantic(*line, *col, e.to_string()))
    };
    let h = parse_perm("h")?;
    let v = parse_perm("v")?;
    let (h_line, h_col) = {
        let f = find("h").unwrap();
        (f.2, f.3)
    };
    let origami =
        Origami::build(h, v).map_err(|e| semantic(h_line, h_col, e.to_string()))?;

    let group = match find("group") {
        Some((_, s, line, col)) => Some(parse_group(s, *line, *col)?),
        None => None,
    };
    if group.is_none() && !raw_cuts.is_empty() {
        let c = &raw_cuts[0];
        return Err(semantic(c.line, c.col, "cuts require a `group` declaration"));
    }

    let spec = match group {
        None => None,
        Some(g) => {
            let mut cuts = Vec::with_capacity(raw_cuts.len());
            for rc in &raw_cuts {
                let mut value = g.zero();
                if rc.value.len() != value.coords().len() {
                    return Err(semantic(
                        rc.line,
                        rc.col,
                        format!(
                            "value has {} coordinates but the group has rank {}",
                            rc.value.len(),
                            value.coords().len()
                        ),
                    ));
                }
                for (i, &c) in rc.value.iter().enumerate() {
                    value = value.add(&g.generator(i).scale(c));
                }
                cuts.push(Cut::new(rc.square, rc.start, rc.dir, rc.len, value));
            }
            let (line, col) = raw_cuts
                .first()
                .map(|c| (c.line, c.col))
                .unwrap_or((1, 1));
            Some(
                StaircaseSpec::new(origami.clone(), g, cuts)
                    .map_err(|e| semantic(line, col, e.to_string()))?,
            )
        }
    };

    let declared_stratum = find("stratum").map(|f| f.1.clone());
    if let Some((_, want, line, col)) = find("stratum") {
        let got = origami
            .stratum()
            .map_err(|e| semantic(*line, *col, e.to_string()))?
            .h_notation();
        if got != *want {
            return Err(semantic(
                *line,
                *col,
                format!("declared stratum {} but surface is in {}", want, got),
            ));
        }
    }

    Ok(SurfaceDocument {
        name: find("name").map(|f| f.1.clone()),
        origami,
        spec,
        declared_stratum,
    })
}

pub fn print_surface(doc: &SurfaceDocument) -> String {
    let mut out = String::new();
    if let Some(name) = &doc.name {
        writeln!(out, "name = {}", name).unwrap();
    }
    writeln!(out, "k = {}", doc.origami.square_count()).unwrap();
    writeln!(out, "h = {}", doc.origami.sigma_h()).unwrap();
    writeln!(out, "v = {}", doc.origami.sigma_v()).unwrap();
    if let Some(stratum) = &doc.declared_stratum {
        writeln!(out, "stratum = {}", stratum).unwrap();
    }
    if let Some(spec) = &doc.spec {
        let group = match spec.group {
            Group::ZPow(d) => format!("Z^{}", d),
            Group::Mod(m) => format!("Z/{}", m),
        };
        writeln!(out, "group = {}", group).unwrap();
        for c in &spec.cuts {
            let coords: Vec<String> = c.value.coords().iter().map(i64::to_string).collect();
            writeln!(
                out,
                "cut square={} start={},{} dir={},{} len={} value=[{}]",
                c.square,
                c.start.0,
                c.start.1,
                c.dir.0,
                c.dir.1,
                c.len,
                coords.join(",")
            )
            .unwrap();
        }
    }
    out
}
