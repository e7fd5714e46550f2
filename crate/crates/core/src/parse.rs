//! Text formats for ideal and family files.
//!
//! ```text
//! vars: x, y, z
//! gens: x*y, y*z, z*x          # or [1,1,0], [0,1,1], ...
//! components: (x,y)^2, (y,z)^3  # instead of gens
//! ```
//!
//! A family file starts with `family: power|symbolic|intersection|ceiling`,
//! then an ideal block. For `intersection` every `gens:` line is one ideal
//! `J_i`; `ceiling` also takes `alpha: p/q` and `beta: p/q`.

use std::collections::HashMap;

use num_traits::Signed;

use crate::bodies::ClassifiedIdeal;
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::ideal::{ExponentVector, MonomialIdeal, PrimeComponent, PrimeDecomposition};
use crate::rational::{parse_rat, Rat};

/// Variable masks are 64-bit.
pub const MAX_VARS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealFile {
    pub vars: Vec<String>,
    pub ideal: ClassifiedIdeal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyFile {
    pub vars: Vec<String>,
    pub family: FamilySpec,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A `key: value` line with 1-based positions.
#[derive(Clone, Copy)]
struct Entry<'a> {
    line: usize,
    key: &'a str,
    key_col: usize,
    value: &'a str,
    value_col: usize,
}

fn entries(text: &str) -> Result<Vec<Entry<'_>>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let key_start = body.len() - body.trim_start().len();
        let colon = body
            .find(':')
            .ok_or_else(|| err(line, key_start + 1, "expected `key: value`"))?;
        let key = body[..colon].trim();
        let rest = &body[colon + 1..];
        let value_start = colon + 1 + (rest.len() - rest.trim_start().len());
        out.push(Entry {
            line,
            key,
            key_col: key_start + 1,
            value: rest.trim(),
            value_col: value_start + 1,
        });
    }
    Ok(out)
}

/// Splits on commas outside brackets, returning each trimmed piece with its column.
fn split_top(s: &str, col: usize, line: usize) -> Result<Vec<(usize, &str)>> {
    fn push<'a>(s: &'a str, col: usize, from: usize, to: usize, out: &mut Vec<(usize, &'a str)>) {
        let piece = &s[from..to];
        let lead = piece.len() - piece.trim_start().len();
        out.push((col + from + lead, piece.trim()));
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = s.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' | b'[' => depth += 1,
            b')' | b']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(err(line, col + i, "unbalanced bracket"));
                }
            }
            b',' if depth == 0 => {
                push(s, col, start, i, &mut out);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(err(line, col + s.len(), "unbalanced bracket"));
    }
    push(s, col, start, s.len(), &mut out);
    if let Some(&(c, _)) = out.iter().find(|(_, p)| p.is_empty()) {
        return Err(err(line, c, "empty item"));
    }
    Ok(out)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_vars(e: &Entry<'_>) -> Result<Vec<String>> {
    let mut vars: Vec<String> = Vec::new();
    for (col, name) in split_top(e.value, e.value_col, e.line)? {
        if !is_identifier(name) {
            return Err(err(e.line, col, format!("invalid variable name `{name}`")));
        }
        if vars.iter().any(|v| v == name) {
            return Err(err(e.line, col, format!("duplicate variable `{name}`")));
        }
        vars.push(name.to_string());
    }
    if vars.len() > MAX_VARS {
        return Err(err(
            e.line,
            e.value_col,
            format!("at most {MAX_VARS} variables are supported"),
        ));
    }
    Ok(vars)
}

fn parse_u32(s: &str, line: usize, col: usize) -> Result<u32> {
    s.trim()
        .parse::<u32>()
        .map_err(|_| err(line, col, format!("expected a nonnegative integer, found `{s}`")))
}

struct Vars<'a> {
    index: HashMap<&'a str, usize>,
}

impl<'a> Vars<'a> {
    fn new(names: &'a [String]) -> Self {
        Vars {
            index: names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect(),
        }
    }

    fn len(&self) -> usize {
        self.index.len()
    }

    fn lookup(&self, name: &str, line: usize, column: usize) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownVariable {
            name: name.to_string(),
            line,
            column,
        })
    }
}

fn parse_monomial(s: &str, vars: &Vars<'_>, line: usize, col: usize) -> Result<ExponentVector> {
    let n = vars.len();
    if let Some(inner) = s.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| err(line, col + s.len(), "expected `]`"))?;
        let items = split_top(inner, col + 1, line)?;
        if items.len() != n {
            return Err(err(line, col, format!("expected {n} entries, found {}", items.len())));
        }
        let v = items
            .iter()
            .map(|&(c, x)| parse_u32(x, line, c))
            .collect::<Result<Vec<_>>>()?;
        return Ok(ExponentVector::new(v));
    }
    if s == "1" {
        return Ok(ExponentVector::zeros(n));
    }
    let mut a = vec![0u32; n];
    let mut offset = 0;
    for factor in s.split('*') {
        let fcol = col + offset + (factor.len() - factor.trim_start().len());
        offset += factor.len() + 1;
        let factor = factor.trim();
        let (name, exp) = match factor.split_once('^') {
            Some((name, e)) => {
                let ecol = fcol + name.len() + 1;
                let e = parse_u32(e, line, ecol)?;
                if e == 0 {
                    return Err(err(line, ecol, "exponent must be positive"));
                }
                (name.trim(), e)
            }
            None => (factor, 1),
        };
        if !is_identifier(name) {
            return Err(err(line, fcol, format!("expected a variable, found `{name}`")));
        }
        let i = vars.lookup(name, line, fcol)?;
        a[i] = a[i].checked_add(exp).ok_or(Error::Overflow)?;
    }
    Ok(ExponentVector::new(a))
}

/// Parses a single monomial (`x*y^2` or `[1,2]`) over the given variables.
pub fn parse_exponent(vars: &[String], s: &str) -> Result<ExponentVector> {
    let lead = s.len() - s.trim_start().len();
    parse_monomial(s.trim(), &Vars::new(vars), 1, lead + 1)
}

fn parse_gens(e: &Entry<'_>, vars: &Vars<'_>) -> Result<MonomialIdeal> {
    let gens = split_top(e.value, e.value_col, e.line)?
        .into_iter()
        .map(|(c, m)| parse_monomial(m, vars, e.line, c))
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::new(vars.len(), gens)
}

fn parse_components(e: &Entry<'_>, vars: &Vars<'_>) -> Result<PrimeDecomposition> {
    let mut comps = Vec::new();
    for (col, item) in split_top(e.value, e.value_col, e.line)? {
        let open = item.strip_prefix('(').ok_or_else(|| err(e.line, col, "expected `(`"))?;
        let close = open.find(')').ok_or_else(|| err(e.line, col, "expected `)`"))?;
        let inner = &open[..close];
        let tail = open[close + 1..].trim();
        let mult = if tail.is_empty() {
            1i64
        } else {
            let mcol = col + 1 + close + 1 + (open[close + 1..].len() - open[close + 1..].trim_start().len());
            let m = tail
                .strip_prefix('^')
                .ok_or_else(|| err(e.line, mcol, "expected `^`"))?
                .trim();
            let v: i64 = m.parse().map_err(|_| {
                err(
                    e.line,
                    mcol + 1,
                    format!("expected an integer multiplicity, found `{m}`"),
                )
            })?;
            if v <= 0 {
                return Err(Error::NonPositiveMultiplicity {
                    line: e.line,
                    column: mcol + 1,
                });
            }
            v
        };
        if inner.trim().is_empty() {
            return Err(err(e.line, col, "empty prime"));
        }
        let mut idx = Vec::new();
        for (vcol, name) in split_top(inner, col + 1, e.line)? {
            idx.push(vars.lookup(name, e.line, vcol)?);
        }
        let mult = u32::try_from(mult).map_err(|_| Error::Overflow)?;
        comps.push(PrimeComponent::new(idx, mult)?);
    }
    PrimeDecomposition::new(vars.len(), comps)
}

enum Block {
    Gens(MonomialIdeal),
    Components(PrimeDecomposition),
}

fn expect_vars<'a>(es: &[Entry<'a>]) -> Result<Vec<String>> {
    let first = es.first().ok_or_else(|| err(1, 1, "missing `vars:` line"))?;
    if first.key != "vars" {
        return Err(err(first.line, first.key_col, "expected `vars:` first"));
    }
    parse_vars(first)
}

fn unknown_key(e: &Entry<'_>) -> Error {
    err(e.line, e.key_col, format!("unexpected key `{}`", e.key))
}

fn parse_block(es: &[Entry<'_>], vars: &Vars<'_>, eof_line: usize) -> Result<Block> {
    let mut block: Option<Block> = None;
    for e in es {
        if block.is_some() {
            return Err(err(
                e.line,
                e.key_col,
                "only one `gens:` or `components:` line is allowed",
            ));
        }
        block = Some(match e.key {
            "gens" => Block::Gens(parse_gens(e, vars)?),
            "components" => Block::Components(parse_components(e, vars)?),
            _ => return Err(unknown_key(e)),
        });
    }
    block.ok_or_else(|| err(eof_line, 1, "missing `gens:` or `components:` line"))
}

fn classify(block: Block) -> Result<ClassifiedIdeal> {
    match block {
        Block::Gens(i) => ClassifiedIdeal::classify(i),
        Block::Components(d) => ClassifiedIdeal::from_decomposition(d),
    }
}

/// Parses an ideal file.
pub fn parse_ideal(text: &str) -> Result<IdealFile> {
    let es = entries(text)?;
    let vars = expect_vars(&es)?;
    let lookup = Vars::new(&vars);
    let ideal = classify(parse_block(&es[1..], &lookup, text.lines().count() + 1)?)?;
    Ok(IdealFile { vars, ideal })
}

pub fn parse_ideal_file(path: &std::path::Path) -> Result<IdealFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_ideal(&text)
}

fn parse_rational(e: &Entry<'_>) -> Result<Rat> {
    parse_rat(e.value).ok_or_else(|| {
        err(
            e.line,
            e.value_col,
            format!("expected a rational `p/q`, found `{}`", e.value),
        )
    })
}

/// Parses a family file.
pub fn parse_family(text: &str) -> Result<FamilyFile> {
    let es = entries(text)?;
    let head = es.first().ok_or_else(|| err(1, 1, "missing `family:` line"))?;
    if head.key != "family" {
        return Err(err(head.line, head.key_col, "expected `family:` first"));
    }
    let kind = head.value;
    let vars = expect_vars(&es[1..])?;
    let lookup = Vars::new(&vars);
    let rest = &es[2..];
    let eof = text.lines().count() + 1;
    let family = match kind {
        "power" => match parse_block(rest, &lookup, eof)? {
            Block::Gens(i) => FamilySpec::Power(i),
            Block::Components(d) => FamilySpec::Power(crate::ideal::expand_decomposition(&d)?),
        },
        "symbolic" => FamilySpec::Symbolic(classify(parse_block(rest, &lookup, eof)?)?),
        "intersection" => {
            let mut js = Vec::new();
            for e in rest {
                if e.key != "gens" {
                    return Err(unknown_key(e));
                }
                js.push(parse_gens(e, &lookup)?);
            }
            if js.is_empty() {
                return Err(err(eof, 1, "missing `gens:` line"));
            }
            FamilySpec::Intersection(js)
        }
        "ceiling" => {
            let (mut alpha, mut beta) = (None, None);
            let mut ideal_lines = Vec::new();
            for e in rest {
                match e.key {
                    "alpha" => alpha = Some((parse_rational(e)?, e)),
                    "beta" => beta = Some(parse_rational(e)?),
                    _ => ideal_lines.push(*e),
                }
            }
            let (alpha, ae) = alpha.ok_or_else(|| err(eof, 1, "missing `alpha:` line"))?;
            if !alpha.is_positive() {
                return Err(err(ae.line, ae.value_col, "alpha must be positive"));
            }
            let base = match parse_block(&ideal_lines, &lookup, eof)? {
                Block::Gens(i) => i,
                Block::Components(d) => crate::ideal::expand_decomposition(&d)?,
            };
            FamilySpec::Ceiling {
                base,
                alpha,
                beta: beta.ok_or_else(|| err(eof, 1, "missing `beta:` line"))?,
            }
        }
        other => {
            return Err(err(
                head.line,
                head.value_col,
                format!("unknown family `{other}` (expected power, symbolic, intersection or ceiling)"),
            ))
        }
    };
    family.validate()?;
    Ok(FamilyFile { vars, family })
}

pub fn parse_family_file(path: &std::path::Path) -> Result<FamilyFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_family(&text)
}
