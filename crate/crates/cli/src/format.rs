//! Design files.
//!
//! JSON: `{"v": 7, "blocks": [[0,1,2], ...]}` with 0-based points.
//!
//! Text: a header line `v b`, then exactly `b` lines, each holding the
//! space-separated points of one block. A blank line is an empty block.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use clap::ValueEnum;
use designlab::{Block, IncidenceSystem};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DesignFormat {
    Json,
    Text,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{location}: point {point} is out of range (v = {v})")]
    OutOfRange { location: String, point: i64, v: usize },
    #[error("{location}: point {point} repeated within the block")]
    DuplicatePoint { location: String, point: usize },
}

/// `.json` files and anything starting with `{` are JSON; the rest is
/// text.
pub fn infer_format(path: &Path, contents: &str) -> DesignFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => DesignFormat::Json,
        Some(ext) if ext.eq_ignore_ascii_case("txt") => DesignFormat::Text,
        _ if contents.trim_start().starts_with('{') => DesignFormat::Json,
        _ => DesignFormat::Text,
    }
}

pub fn read_file(path: &Path) -> Result<String, ParseError> {
    fs::read_to_string(path).map_err(|source| ParseError::Io { path: path.display().to_string(), source })
}

pub fn parse_design(path: &Path, format: Option<DesignFormat>) -> Result<IncidenceSystem, ParseError> {
    let contents = read_file(path)?;
    let format = format.unwrap_or_else(|| infer_format(path, &contents));
    parse_str(&contents, format)
}

pub fn parse_str(contents: &str, format: DesignFormat) -> Result<IncidenceSystem, ParseError> {
    match format {
        DesignFormat::Json => parse_json(contents),
        DesignFormat::Text => parse_text(contents),
    }
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct DesignJson {
    v: usize,
    blocks: Vec<Vec<i64>>,
}

fn build_block(points: &[i64], v: usize, location: impl Fn() -> String) -> Result<Block, ParseError> {
    let mut seen = vec![false; v];
    let mut out = Vec::with_capacity(points.len());
    for &p in points {
        if p < 0 || p as u64 >= v as u64 {
            return Err(ParseError::OutOfRange { location: location(), point: p, v });
        }
        let p = p as usize;
        if std::mem::replace(&mut seen[p], true) {
            return Err(ParseError::DuplicatePoint { location: location(), point: p });
        }
        out.push(p);
    }
    Ok(Block::new(out).expect("duplicates checked"))
}

fn parse_json(contents: &str) -> Result<IncidenceSystem, ParseError> {
    let raw: DesignJson = serde_json::from_str(contents).map_err(|e| ParseError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let blocks = raw
        .blocks
        .iter()
        .enumerate()
        .map(|(j, pts)| build_block(pts, raw.v, || format!("block {j}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IncidenceSystem::new(raw.v, blocks).expect("points validated"))
}

fn parse_text(contents: &str) -> Result<IncidenceSystem, ParseError> {
    let mut lines = contents.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or(ParseError::Syntax { line: 1, message: "missing `v b` header".into() })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [v, b] = fields.as_slice() else {
        return Err(ParseError::Syntax { line: 1, message: format!("expected `v b`, found {header:?}") });
    };
    let parse_count = |s: &str, what: &str| {
        s.parse::<usize>()
            .map_err(|_| ParseError::Syntax { line: 1, message: format!("{what} must be a non-negative integer, found {s:?}") })
    };
    let v = parse_count(v, "v")?;
    let b = parse_count(b, "b")?;

    let mut blocks = Vec::with_capacity(b);
    for j in 0..b {
        let Some((line, text)) = lines.next() else {
            return Err(ParseError::Syntax {
                line: j + 2,
                message: format!("expected {b} block lines, found {j}"),
            });
        };
        let mut points = Vec::new();
        for (pos, token) in text.split_whitespace().enumerate() {
            let p = token.parse::<i64>().map_err(|_| ParseError::Syntax {
                line,
                message: format!("position {}: {token:?} is not an integer", pos + 1),
            })?;
            points.push(p);
        }
        blocks.push(build_block(&points, v, || format!("line {line}"))?);
    }
    if let Some((line, text)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(ParseError::Syntax { line, message: format!("unexpected content after {b} blocks: {text:?}") });
    }
    Ok(IncidenceSystem::new(v, blocks).expect("points validated"))
}

pub fn write_design(s: &IncidenceSystem, format: DesignFormat) -> String {
    match format {
        DesignFormat::Json => {
            let raw = DesignJson {
                v: s.v(),
                blocks: s.blocks().iter().map(|b| b.points().iter().map(|&p| p as i64).collect()).collect(),
            };
            let mut out = serde_json::to_string(&raw).expect("plain data serializes");
            out.push('\n');
            out
        }
        DesignFormat::Text => {
            let mut out = format!("{} {}\n", s.v(), s.b());
            for block in s.blocks() {
                writeln!(out, "{}", block_line(block)).expect("writing to a String");
            }
            out
        }
    }
}

fn block_line(block: &Block) -> String {
    block.points().iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// One family on one line: blocks in text syntax separated by ` | `; the
/// empty family is `-`.
pub fn family_line(s: &IncidenceSystem) -> String {
    if s.b() == 0 {
        return "-".into();
    }
    s.blocks().iter().map(block_line).collect::<Vec<_>>().join(" | ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_example() {
        let s = parse_str(r#"{"v":2,"blocks":[[0],[0,1]]}"#, DesignFormat::Json).unwrap();
        assert_eq!(s, IncidenceSystem::from_lists(2, [vec![0], vec![0, 1]]).unwrap());
    }

    #[test]
    fn json_out_of_range() {
        let err = parse_str(r#"{"v":2,"blocks":[[0,2]]}"#, DesignFormat::Json).unwrap_err();
        assert!(matches!(err, ParseError::OutOfRange { point: 2, v: 2, .. }));
        assert_eq!(err.to_string(), "block 0: point 2 is out of range (v = 2)");
        let err = parse_str(r#"{"v":2,"blocks":[[-1]]}"#, DesignFormat::Json).unwrap_err();
        assert!(matches!(err, ParseError::OutOfRange { point: -1, .. }));
    }

    #[test]
    fn json_syntax_error_has_position() {
        let err = parse_str("{\"v\":2,\n\"blocks\":[[0,]]}", DesignFormat::Json).unwrap_err();
        assert!(matches!(err, ParseError::Json { line: 2, .. }));
    }

    #[test]
    fn text_example() {
        let s = parse_str("3 1\n0 1 2\n", DesignFormat::Text).unwrap();
        assert_eq!(s, IncidenceSystem::from_lists(3, [vec![0, 1, 2]]).unwrap());
    }

    #[test]
    fn text_blank_line_is_empty_block() {
        let s = parse_str("2 3\n0\n\n0 1\n", DesignFormat::Text).unwrap();
        assert_eq!(s.b(), 3);
        assert!(s.blocks()[1].is_empty());
    }

    #[test]
    fn text_errors_carry_lines() {
        let err = parse_str("3 2\n0 1\n0 0\n", DesignFormat::Text).unwrap_err();
        assert_eq!(err.to_string(), "line 3: point 0 repeated within the block");
        let err = parse_str("3 2\n0 1\n", DesignFormat::Text).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 3, .. }));
        let err = parse_str("3 1\n0 x\n", DesignFormat::Text).unwrap_err();
        assert_eq!(err.to_string(), "line 2: position 2: \"x\" is not an integer");
        let err = parse_str("3\n", DesignFormat::Text).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 1, .. }));
        let err = parse_str("3 1\n0\n1\n", DesignFormat::Text).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 3, .. }));
    }

    #[test]
    fn repeated_blocks_kept_in_order() {
        let s = parse_str("2 3\n1\n0 1\n1\n", DesignFormat::Text).unwrap();
        let lists: Vec<Vec<usize>> = s.blocks().iter().map(|b| b.points().to_vec()).collect();
        assert_eq!(lists, vec![vec![1], vec![0, 1], vec![1]]);
    }

    #[test]
    fn write_then_parse() {
        let s = IncidenceSystem::from_lists(4, [vec![2, 0], vec![], vec![1, 2, 3], vec![0, 2]]).unwrap();
        for format in [DesignFormat::Json, DesignFormat::Text] {
            assert_eq!(parse_str(&write_design(&s, format), format).unwrap(), s);
        }
    }

    #[test]
    fn family_lines() {
        let s = IncidenceSystem::from_lists(3, [vec![0], vec![1, 2]]).unwrap();
        assert_eq!(family_line(&s), "0 | 1 2");
        assert_eq!(family_line(&IncidenceSystem::new(3, vec![]).unwrap()), "-");
    }

    #[test]
    fn format_inference() {
        assert_eq!(infer_format(Path::new("x.json"), "3 1"), DesignFormat::Json);
        assert_eq!(infer_format(Path::new("x.txt"), "{"), DesignFormat::Text);
        assert_eq!(infer_format(Path::new("x"), "  {\"v\":1}"), DesignFormat::Json);
        assert_eq!(infer_format(Path::new("x.design"), "3 1"), DesignFormat::Text);
    }
}
