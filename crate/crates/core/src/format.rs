//! The line-oriented triple file format and textual forms of words and sets.
//!
//! ```text
//! # comments run to end of line
//! xsymbols g0 g1
//! edges g0>g0 g0>g1 g1>g0
//! map g0:a g1:b
//! ```
//!
//! Serialization emits exactly three lines with single spaces, edges sorted by
//! (source, target) in canonical order, map entries in `X` order, and a
//! trailing newline.

use std::collections::HashSet;

use crate::classdeg::TransitionBlockCert;
use crate::degree::MagicBlockCert;
use crate::error::{ParseError, TripleError};
use crate::set::SymbolSet;
use crate::triple::{is_valid_symbol_name, normalize, FactorTriple, ShiftOfFiniteType};

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                out.push(Token { text: &line[b..byte], column: c + 1 });
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if let Some((b, c)) = start {
        out.push(Token { text: &line[b..], column: c + 1 });
    }
    out
}

/// Parses and normalizes a triple.
pub fn parse_triple(text: &str) -> Result<FactorTriple, ParseError> {
    let (t, edge_line) = parse_raw(text)?;
    normalize(&t).map_err(|e| ParseError::triple(edge_line, 1, e))
}

/// Parses a triple as written, without trimming symbols.
pub fn parse_triple_unnormalized(text: &str) -> Result<FactorTriple, ParseError> {
    parse_raw(text).map(|(t, _)| t)
}

fn parse_raw(text: &str) -> Result<(FactorTriple, usize), ParseError> {
    let mut lines = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        last_line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        if !toks.is_empty() {
            lines.push((i + 1, toks));
        }
    }
    let keywords = ["xsymbols", "edges", "map"];
    for (k, kw) in keywords.iter().enumerate() {
        match lines.get(k) {
            None => {
                return Err(ParseError::syntax(last_line.max(1), 1, format!("missing `{kw}` line")))
            }
            Some((ln, toks)) if toks[0].text != *kw => {
                return Err(ParseError::syntax(
                    *ln,
                    toks[0].column,
                    format!("expected `{kw}`, found `{}`", toks[0].text),
                ))
            }
            _ => {}
        }
    }
    if let Some((ln, toks)) = lines.get(3) {
        return Err(ParseError::syntax(*ln, toks[0].column, "unexpected extra line"));
    }

    let (sym_line, sym_toks) = &lines[0];
    let mut names: Vec<String> = Vec::new();
    let mut seen = HashSet::new();
    for tok in &sym_toks[1..] {
        if !is_valid_symbol_name(tok.text) {
            return Err(ParseError::triple(
                *sym_line,
                tok.column,
                TripleError::InvalidSymbol(tok.text.into()),
            ));
        }
        if !seen.insert(tok.text) {
            return Err(ParseError::triple(
                *sym_line,
                tok.column,
                TripleError::DuplicateSymbol(tok.text.into()),
            ));
        }
        names.push(tok.text.to_string());
    }
    if names.is_empty() {
        return Err(ParseError::triple(*sym_line, sym_toks[0].column, TripleError::EmptyAlphabet));
    }
    let lookup = |line: usize, tok: &Token, name: &str| {
        names.iter().position(|n| n == name).ok_or_else(|| {
            ParseError::triple(line, tok.column, TripleError::UnknownSymbol(name.to_string()))
        })
    };

    let (edge_line, edge_toks) = &lines[1];
    let mut edges = Vec::new();
    for tok in &edge_toks[1..] {
        let parts: Vec<&str> = tok.text.split('>').collect();
        if parts.len() != 2 || parts[0].is_empty() || parts[1].is_empty() {
            return Err(ParseError::syntax(
                *edge_line,
                tok.column,
                format!("malformed edge `{}`, expected `u>v`", tok.text),
            ));
        }
        edges.push((lookup(*edge_line, tok, parts[0])?, lookup(*edge_line, tok, parts[1])?));
    }

    let (map_line, map_toks) = &lines[2];
    let mut labels: Vec<Option<String>> = vec![None; names.len()];
    for tok in &map_toks[1..] {
        let parts: Vec<&str> = tok.text.split(':').collect();
        if parts.len() != 2 || parts[0].is_empty() || parts[1].is_empty() {
            return Err(ParseError::syntax(
                *map_line,
                tok.column,
                format!("malformed map entry `{}`, expected `x:y`", tok.text),
            ));
        }
        let a = lookup(*map_line, tok, parts[0])?;
        if labels[a].is_some() {
            return Err(ParseError::triple(
                *map_line,
                tok.column,
                TripleError::DuplicateMapEntry(parts[0].into()),
            ));
        }
        if !is_valid_symbol_name(parts[1]) {
            return Err(ParseError::triple(
                *map_line,
                tok.column,
                TripleError::InvalidSymbol(parts[1].into()),
            ));
        }
        labels[a] = Some(parts[1].to_string());
    }
    let mut full = Vec::with_capacity(labels.len());
    for (a, l) in labels.into_iter().enumerate() {
        match l {
            Some(l) => full.push(l),
            None => {
                return Err(ParseError::triple(
                    *map_line,
                    map_toks[0].column,
                    TripleError::MissingMapEntry(names[a].clone()),
                ))
            }
        }
    }

    let x = ShiftOfFiniteType::new(names, &edges)
        .map_err(|e| ParseError::triple(*sym_line, 1, e))?;
    let t = FactorTriple::new(x, full).map_err(|e| ParseError::triple(*map_line, 1, e))?;
    Ok((t, *edge_line))
}

/// Canonical text of a triple.
pub fn serialize_triple(t: &FactorTriple) -> String {
    let x = t.x();
    let mut out = String::from("xsymbols");
    for n in x.names() {
        out.push(' ');
        out.push_str(n);
    }
    out.push_str("\nedges");
    for (u, v) in x.edges() {
        out.push(' ');
        out.push_str(x.name(u));
        out.push('>');
        out.push_str(x.name(v));
    }
    out.push_str("\nmap");
    for a in 0..t.nx() {
        out.push(' ');
        out.push_str(x.name(a));
        out.push(':');
        out.push_str(t.y_name(t.code(a)));
    }
    out.push('\n');
    out
}

fn all_single_char(names: &[String]) -> bool {
    names.iter().all(|n| n.chars().count() == 1)
}

/// Compact form of a `Y` word: letters concatenated when every `Y` name is a
/// single character, otherwise joined with `>`.
pub fn format_y_word(t: &FactorTriple, word: &[usize]) -> String {
    let sep = if all_single_char(t.y_names()) { "" } else { ">" };
    word.iter().map(|&b| t.y_name(b)).collect::<Vec<_>>().join(sep)
}

/// Space-separated form of an `X` word.
pub fn format_x_word(t: &FactorTriple, word: &[usize]) -> String {
    word.iter().map(|&a| t.x().name(a)).collect::<Vec<_>>().join(" ")
}

/// Inverse of [`format_y_word`]; spaces are also accepted as separators.
pub fn parse_y_word(t: &FactorTriple, text: &str) -> Option<Vec<usize>> {
    let pieces: Vec<String> = if text.contains('>') {
        text.split('>').map(str::to_string).collect()
    } else if text.contains(' ') {
        text.split_whitespace().map(str::to_string).collect()
    } else if all_single_char(t.y_names()) {
        text.chars().map(|c| c.to_string()).collect()
    } else {
        vec![text.to_string()]
    };
    if pieces.is_empty() {
        return None;
    }
    pieces.iter().map(|p| t.y_index_of(p)).collect()
}

/// `{a,b,...}` with members in canonical order.
pub fn format_x_set(t: &FactorTriple, set: &SymbolSet) -> String {
    let inner: Vec<&str> = set.iter().map(|a| t.x().name(a)).collect();
    format!("{{{}}}", inner.join(","))
}

/// Inverse of [`format_x_set`]. Names may themselves contain commas, so the
/// contents are split by matching declared names.
pub fn parse_x_set(t: &FactorTriple, text: &str) -> Option<SymbolSet> {
    let inner = text.strip_prefix('{')?.strip_suffix('}')?;
    let mut set = SymbolSet::empty(t.nx());
    if inner.is_empty() {
        return Some(set);
    }
    // ok[i]: inner[..i] splits into comma-separated declared names
    let bytes = inner.len();
    let mut back: Vec<Option<(usize, usize)>> = vec![None; bytes + 1];
    let mut ok = vec![false; bytes + 1];
    ok[0] = true;
    for start in 0..bytes {
        if !ok[start] || !inner.is_char_boundary(start) {
            continue;
        }
        let from = if start == 0 { 0 } else { start + 1 };
        if start > 0 && inner.as_bytes()[start] != b',' {
            continue;
        }
        for (a, name) in t.x().names().iter().enumerate() {
            if inner[from..].starts_with(name.as_str()) {
                let end = from + name.len();
                if !ok[end] {
                    ok[end] = true;
                    back[end] = Some((start, a));
                }
            }
        }
    }
    if !ok[bytes] {
        return None;
    }
    let mut pos = bytes;
    while pos > 0 {
        let (prev, a) = back[pos]?;
        set.insert(a);
        pos = prev;
    }
    Some(set)
}

/// A certificate read back from text, with its claimed value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Magic(MagicBlockCert, usize),
    Transition(TransitionBlockCert, usize),
}

pub fn format_magic_cert(t: &FactorTriple, cert: &MagicBlockCert, d: usize) -> String {
    format!(
        "magic word={} coord={} set={} degree={d}\n",
        format_y_word(t, &cert.word),
        cert.coordinate,
        format_x_set(t, &cert.witness)
    )
}

pub fn format_transition_cert(t: &FactorTriple, cert: &TransitionBlockCert, c: usize) -> String {
    format!(
        "transition word={} n={} M={} depth={c}\n",
        format_y_word(t, &cert.word),
        cert.n,
        format_x_set(t, &cert.routing)
    )
}

/// Reads one certificate line as written by [`format_magic_cert`] or
/// [`format_transition_cert`].
pub fn parse_certificate(t: &FactorTriple, line: &str) -> Result<Certificate, String> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let keys: [&str; 4] = match fields.first() {
        Some(&"magic") => ["word", "coord", "set", "degree"],
        Some(&"transition") => ["word", "n", "M", "depth"],
        _ => return Err("expected a `magic` or `transition` line".into()),
    };
    if fields.len() != 5 {
        return Err(format!("expected 4 fields after `{}`", fields[0]));
    }
    let mut values = [""; 4];
    for (slot, (key, field)) in values.iter_mut().zip(keys.iter().zip(&fields[1..])) {
        *slot = field
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| format!("expected `{key}=`, found `{field}`"))?;
    }
    let word = parse_y_word(t, values[0]).ok_or_else(|| format!("bad word `{}`", values[0]))?;
    let index: usize = values[1].parse().map_err(|_| format!("bad index `{}`", values[1]))?;
    let set = parse_x_set(t, values[2]).ok_or_else(|| format!("bad set `{}`", values[2]))?;
    let value: usize = values[3].parse().map_err(|_| format!("bad value `{}`", values[3]))?;
    Ok(if fields[0] == "magic" {
        Certificate::Magic(MagicBlockCert { word, coordinate: index, witness: set }, value)
    } else {
        Certificate::Transition(TransitionBlockCert { word, n: index, routing: set }, value)
    })
}
