//! Word expressions: whitespace-separated letters `sym[*][@k]`, or `1`.

use crate::error::{CliError, Result};

/// A letter as written, before its algebra is resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawLetter {
    pub symbol: String,
    pub starred: bool,
    pub algebra: Option<u32>,
    /// 1-based character column of the letter in its source line.
    pub column: usize,
}

/// Reserved for the separator of the tensor construction.
pub const RESERVED: &[&str] = &["t"];

pub fn is_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Checks a generator name for declarations.
pub fn check_symbol(s: &str) -> std::result::Result<(), String> {
    if !is_symbol(s) {
        return Err(format!("`{s}` is not a valid generator name"));
    }
    if RESERVED.contains(&s) {
        return Err(format!("`{s}` is reserved"));
    }
    Ok(())
}

/// Splits `text` into letters. `1` alone denotes the unit and yields no
/// letters. `offset` is added to reported columns.
pub fn parse_letters(text: &str, source_name: &str, line: usize, offset: usize) -> Result<Vec<RawLetter>> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices().chain(std::iter::once((text.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                tokens.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    let column = |byte: usize| offset + text[..byte].chars().count() + 1;
    if tokens.is_empty() {
        return Err(CliError::parse(source_name, line, column(0), "empty word; write `1` for the unit"));
    }
    if tokens.len() == 1 && tokens[0].1 == "1" {
        return Ok(Vec::new());
    }
    tokens
        .into_iter()
        .map(|(pos, tok)| {
            let col = column(pos);
            let fail = |msg: String| CliError::parse(source_name, line, col, msg);
            if tok == "1" {
                return Err(fail("the unit `1` must stand alone".into()));
            }
            let (body, algebra) = match tok.split_once('@') {
                Some((body, k)) => {
                    let k: u32 = k
                        .parse()
                        .ok()
                        .filter(|&k| k > 0)
                        .ok_or_else(|| fail(format!("bad algebra index in `{tok}`")))?;
                    (body, Some(k))
                }
                None => (tok, None),
            };
            let (symbol, starred) = match body.strip_suffix('*') {
                Some(s) => (s, true),
                None => (body, false),
            };
            check_symbol(symbol).map_err(fail)?;
            Ok(RawLetter { symbol: symbol.to_owned(), starred, algebra, column: col })
        })
        .collect()
}
