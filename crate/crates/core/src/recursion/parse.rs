use crate::braid::{BraidWord, Permutation};
use crate::error::{Error, Result};

use super::{Generator, GroupWord, Kind, RecursionTable, Root};

/// Parses whitespace-separated letters with optional `^k` powers. A token
/// that is not a symbol but is a run of one-character symbols is split, with
/// the power applying to its last letter. `1` and `e` denote the identity.
pub(super) fn parse_word(symbols: &[String], text: &str) -> Result<GroupWord> {
    let mut w = GroupWord::identity();
    for (start, tok) in tokens(text) {
        let col = start + 1;
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => {
                let e: i64 = e
                    .trim_start_matches('+')
                    .parse()
                    .map_err(|_| Error::parse(col, format!("bad exponent in '{tok}'")))?;
                (b, e)
            }
            None => (tok, 1),
        };
        if base == "1" || base == "e" {
            continue;
        }
        let index = |s: &str| symbols.iter().position(|x| x == s).map(|i| i as i32 + 1);
        let mut letters: Vec<i32> = match index(base) {
            Some(i) => vec![i],
            None => base
                .chars()
                .map(|c| index(&c.to_string()))
                .collect::<Option<Vec<_>>>()
                .filter(|v| !v.is_empty())
                .ok_or_else(|| Error::parse(col, format!("unknown generator '{base}'")))?,
        };
        let last = letters.pop().expect("nonempty");
        for l in letters {
            w.push(l);
        }
        for _ in 0..exp.unsigned_abs() {
            w.push(if exp > 0 { last } else { -last });
        }
    }
    Ok(w)
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split_whitespace()
        .map(move |t| (t.as_ptr() as usize - text.as_ptr() as usize, t))
}

fn offset_in(line: &str, sub: &str) -> usize {
    sub.as_ptr() as usize - line.as_ptr() as usize
}

struct RawGen<'a> {
    line_no: usize,
    line: &'a str,
    symbol: &'a str,
    root: &'a str,
    sections: &'a str,
}

pub(super) fn parse_table(text: &str) -> Result<RecursionTable> {
    let mut name = None;
    let mut degree = None;
    let mut kind = None;
    let mut raw = Vec::new();
    for (i, full) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = full.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let err = |sub: &str, msg: String| Error::Parse {
            line: line_no,
            col: offset_in(full, sub) + 1,
            msg,
        };
        let (key, rest) = trimmed
            .split_once(char::is_whitespace)
            .unwrap_or((trimmed, ""));
        let rest = rest.trim();
        match key {
            "group" => name = Some(rest.to_string()),
            "degree" => {
                degree = Some(
                    rest.parse::<usize>()
                        .map_err(|_| err(rest, format!("bad degree '{rest}'")))?,
                )
            }
            "kind" => {
                kind = Some(match rest {
                    "braided" => Kind::Braided,
                    "symmetric" => Kind::Symmetric,
                    _ => return Err(err(rest, format!("unknown kind '{rest}'"))),
                })
            }
            "gen" => {
                let (symbol, body) = rest
                    .split_once('=')
                    .ok_or_else(|| err(rest, "expected '='".into()))?;
                let (root, sections) = body
                    .split_once('|')
                    .ok_or_else(|| err(body, "expected '|'".into()))?;
                raw.push(RawGen {
                    line_no,
                    line: full,
                    symbol: symbol.trim(),
                    root,
                    sections,
                });
            }
            _ => return Err(err(key, format!("unknown directive '{key}'"))),
        }
    }
    let degree = degree.ok_or_else(|| Error::InvalidTable("missing 'degree'".into()))?;
    let kind = kind.ok_or_else(|| Error::InvalidTable("missing 'kind'".into()))?;
    let name = name.unwrap_or_else(|| "table".to_string());
    let symbols: Vec<String> = raw.iter().map(|g| g.symbol.to_string()).collect();
    let mut generators = Vec::with_capacity(raw.len());
    for g in &raw {
        let root_col = offset_in(g.line, g.root);
        let root = match kind {
            Kind::Braided => Root::Braid(
                BraidWord::parse(degree, g.root).map_err(|e| e.at_line(g.line_no, root_col))?,
            ),
            Kind::Symmetric => Root::Perm(
                Permutation::parse(degree, g.root).map_err(|e| e.at_line(g.line_no, root_col))?,
            ),
        };
        let mut sections = Vec::with_capacity(degree);
        for part in g.sections.split(',') {
            let col = offset_in(g.line, part);
            sections.push(parse_word(&symbols, part).map_err(|e| e.at_line(g.line_no, col))?);
        }
        generators.push(Generator {
            symbol: g.symbol.to_string(),
            root,
            sections,
        });
    }
    RecursionTable::new(name, degree, kind, generators)
}
