//! Run-length encoded pattern files.
//!
//! ```text
//! #C optional comment lines
//! x = 3, y = 3, rule = B3/S23
//! bo$2bo$3o!
//! ```
//!
//! `b` is a dead cell, `o` a live cell, `$` ends a row, and a decimal prefix
//! repeats the item. The body ends at `!`.

use crate::error::{Result, RleError};
use crate::pattern::{Cell, Pattern};

pub const RULE: &str = "B3/S23";
const LINE_WIDTH: usize = 70;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RleDocument {
    pub comments: Vec<String>,
    pub width: u64,
    pub height: u64,
    pub rule: String,
    /// Live cells relative to the top-left of the declared extent.
    pub pattern: Pattern,
    /// Set when a live cell lies at or beyond the declared width.
    pub width_overrun: bool,
}

fn parse_header(line: &str) -> Result<(u64, u64, String), RleError> {
    let bad = || RleError::BadHeader(line.trim().to_string());
    let (mut w, mut h, mut rule) = (None, None, None);
    for field in line.split(',') {
        let (key, value) = field.split_once('=').ok_or_else(bad)?;
        let value = value.trim();
        match key.trim() {
            "x" => w = Some(value.parse::<u64>().map_err(|_| bad())?),
            "y" => h = Some(value.parse::<u64>().map_err(|_| bad())?),
            "rule" => rule = Some(value.to_string()),
            _ => return Err(bad()),
        }
    }
    let rule = rule.unwrap_or_else(|| RULE.to_string());
    if !rule.eq_ignore_ascii_case(RULE) {
        return Err(RleError::UnsupportedRule(rule));
    }
    Ok((w.ok_or_else(bad)?, h.ok_or_else(bad)?, rule))
}

pub fn parse_rle(text: &str) -> Result<RleDocument> {
    let mut comments = Vec::new();
    let mut lines = text.lines().enumerate();
    let (width, height, rule) = loop {
        let Some((_, line)) = lines.next() else {
            return Err(RleError::MissingHeader.into());
        };
        let t = line.trim();
        if let Some(c) = t.strip_prefix('#') {
            comments.push(c.to_string());
        } else if !t.is_empty() {
            if !t.starts_with('x') {
                return Err(RleError::MissingHeader.into());
            }
            break parse_header(t)?;
        }
    };

    let mut cells = Vec::new();
    let (mut x, mut y) = (0i64, 0i64);
    let mut count: Option<u64> = None;
    let mut width_overrun = false;
    let mut terminated = false;
    'body: for (i, line) in lines {
        let line_no = i + 1;
        for ch in line.chars() {
            match ch {
                '0'..='9' => {
                    let d = ch as u64 - '0' as u64;
                    let n = count
                        .unwrap_or(0)
                        .checked_mul(10)
                        .and_then(|n| n.checked_add(d))
                        .filter(|&n| n <= i64::MAX as u64)
                        .ok_or(RleError::CountOverflow { line: line_no })?;
                    count = Some(n);
                }
                'b' | 'o' | '$' => {
                    let n = count.take().unwrap_or(1);
                    if n == 0 {
                        return Err(RleError::ZeroCount { line: line_no }.into());
                    }
                    let n = n as i64;
                    let overflow = RleError::CountOverflow { line: line_no };
                    match ch {
                        'b' => x = x.checked_add(n).ok_or(overflow)?,
                        'o' => {
                            let end = x.checked_add(n).ok_or(overflow)?;
                            if height > 0 && y as u64 >= height {
                                return Err(RleError::HeightExceeded { height }.into());
                            }
                            if width > 0 && end as u64 > width {
                                width_overrun = true;
                            }
                            cells.extend((x..end).map(|cx| Cell::new(cx, y)));
                            x = end;
                        }
                        _ => {
                            y = y.checked_add(n).ok_or(overflow)?;
                            x = 0;
                        }
                    }
                }
                '!' if count.is_none() => {
                    terminated = true;
                    break 'body;
                }
                c if c.is_whitespace() => {}
                c => {
                    return Err(RleError::UnexpectedChar {
                        ch: c,
                        line: line_no,
                    }
                    .into())
                }
            }
        }
    }
    if !terminated {
        return Err(RleError::MissingTerminator.into());
    }
    Ok(RleDocument {
        comments,
        width,
        height,
        rule,
        pattern: Pattern::from_cells(cells),
        width_overrun,
    })
}

/// Run-length tokens for a pattern already translated to the origin,
/// excluding the terminator.
fn tokens(p: &Pattern) -> Vec<String> {
    fn run(n: i64, tag: char) -> String {
        if n > 1 {
            format!("{n}{tag}")
        } else {
            tag.to_string()
        }
    }
    let mut out = Vec::new();
    let (mut row, mut col) = (0i64, 0i64);
    let mut cells = p.cells().iter().peekable();
    while let Some(&c) = cells.next() {
        if c.y > row {
            out.push(run(c.y - row, '$'));
            row = c.y;
            col = 0;
        }
        if c.x > col {
            out.push(run(c.x - col, 'b'));
        }
        let mut end = c.x + 1;
        while let Some(&&n) = cells.peek() {
            if n.y == c.y && n.x == end {
                end += 1;
                cells.next();
            } else {
                break;
            }
        }
        out.push(run(end - c.x, 'o'));
        col = end;
    }
    out
}

/// Single-line body of the origin-normalized pattern, without the `!`.
pub fn compact_body(p: &Pattern) -> String {
    match p.normalized() {
        Ok((n, _)) => tokens(&n).concat(),
        Err(_) => unreachable!("normalizing a finite pattern cannot overflow"),
    }
}

pub fn write_rle(p: &Pattern) -> String {
    let Some(bb) = p.bounding_box() else {
        return format!("x = 0, y = 0, rule = {RULE}\n!\n");
    };
    let (norm, _) = p
        .normalized()
        .expect("normalizing a finite pattern cannot overflow");
    let mut text = format!("x = {}, y = {}, rule = {RULE}\n", bb.width(), bb.height());
    let mut line = String::new();
    for tok in tokens(&norm).into_iter().chain(["!".to_string()]) {
        if line.len() + tok.len() > LINE_WIDTH {
            text.push_str(&line);
            text.push('\n');
            line.clear();
        }
        line.push_str(&tok);
    }
    text.push_str(&line);
    text.push('\n');
    text
}

/// Writes a pattern with `#C` comment lines ahead of the header.
pub fn write_rle_with_comments(p: &Pattern, comments: &[&str]) -> String {
    let mut text: String = comments.iter().map(|c| format!("#C {c}\n")).collect();
    text.push_str(&write_rle(p));
    text
}
