//! Text formats.
//!
//! A colouring file holds the decimal `n` on line 1 and, on line 2, exactly
//! `n(n−1)/2` characters from `{R, B}` listing the upper triangle row by row:
//! `(1,2), (1,3), …, (1,n), (2,3), …, (n−1,n)`. A trailing newline is optional.
//!
//! A cover file holds one path per line: a colour letter followed by the
//! path's vertex ids, all separated by spaces. Blank lines and lines
//! starting with `#` are ignored.

use thiserror::Error;

use crate::model::{Colour, Colouring, Path, PathCover, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: malformed header: {detail}")]
    MalformedHeader { line: usize, detail: String },
    #[error("line {line}: expected {expected} edge characters, found {found}")]
    BadLength { line: usize, expected: usize, found: usize },
    #[error("line {line}, column {column}: unexpected character {found:?}")]
    BadCharacter { line: usize, column: usize, found: char },
    #[error("line {line}: unexpected trailing data")]
    TrailingData { line: usize },
    #[error("line {line}: {detail}")]
    BadCoverLine { line: usize, detail: String },
}

/// `"n\n<edges>"`, without a trailing newline.
pub fn encode(g: &Colouring) -> String {
    let mut s = g.n().to_string();
    s.push('\n');
    s.extend(g.upper_triangle().map(Colour::letter));
    s
}

pub fn decode(text: &str) -> Result<Colouring, FormatError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let body = body.strip_suffix('\r').unwrap_or(body);
    let mut lines = body.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l));

    let header = lines.next().unwrap_or("");
    let n: usize = header.trim().parse().map_err(|_| FormatError::MalformedHeader {
        line: 1,
        detail: format!("expected a vertex count, found {header:?}"),
    })?;
    if n == 0 {
        return Err(FormatError::MalformedHeader { line: 1, detail: "vertex count must be at least 1".into() });
    }
    let edges = lines.next().unwrap_or("");
    if lines.next().is_some() {
        return Err(FormatError::TrailingData { line: 3 });
    }

    let expected = n * (n - 1) / 2;
    let mut colours = Vec::with_capacity(expected);
    for (i, ch) in edges.chars().enumerate() {
        match Colour::from_letter(ch) {
            Some(c) => colours.push(c),
            None => return Err(FormatError::BadCharacter { line: 2, column: i + 1, found: ch }),
        }
    }
    if colours.len() != expected {
        return Err(FormatError::BadLength { line: 2, expected, found: colours.len() });
    }
    Ok(Colouring::from_upper_triangle(n, &colours).expect("length checked"))
}

pub fn encode_path(p: &Path) -> String {
    let mut s = String::new();
    s.push(p.colour.letter());
    for v in &p.vertices {
        s.push(' ');
        s.push_str(&v.to_string());
    }
    s
}

/// One line per path, each terminated by a newline.
pub fn encode_cover(c: &PathCover) -> String {
    c.paths.iter().map(|p| encode_path(p) + "\n").collect()
}

/// Parses a cover for `K_n`. The cover's colour is that of its first path
/// (red when there are none); mixed colours are left for the validator.
pub fn decode_cover(text: &str, n: usize) -> Result<PathCover, FormatError> {
    let mut paths = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let tag = tokens.next().unwrap();
        let colour = match tag {
            "R" | "Red" | "red" => Colour::Red,
            "B" | "Blue" | "blue" => Colour::Blue,
            _ => {
                return Err(FormatError::BadCoverLine { line: i + 1, detail: format!("unknown colour {tag:?}") });
            }
        };
        let vertices = tokens
            .map(|t| t.parse::<Vertex>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| FormatError::BadCoverLine { line: i + 1, detail: e.to_string() })?;
        paths.push(Path::new(colour, vertices));
    }
    let colour = paths.first().map_or(Colour::Red, |p| p.colour);
    Ok(PathCover::new(colour, n, paths))
}
