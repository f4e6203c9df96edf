//! The schedule DSL: a line-oriented format with a four-key header and a
//! block list.
//!
//! ```text
//! # comment
//! phase0 0.0
//! phase1 0.0
//! gamma 0.99
//! seed 42
//! blocks:
//!   data 100
//!   reset 10000 port=1 phase=rand
//!   hwreset scope=all
//! ```
//!
//! Header keys may appear in any order, each exactly once. `#` starts a
//! comment anywhere on a line; whitespace within a line is free-form.
//! Defaults: `data` rides port 0, `reset` rides port 1 with fixed phase
//! 0, `hwreset` addresses both machines. Malformed input always yields
//! an error, never a partial document.

use ebcm_core::{Block, PhasePolicy, Port, ResetScope, Schedule};

/// A parsed schedule file: run parameters plus the block list.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleDoc {
    pub phase0: f64,
    pub phase1: f64,
    pub gamma: f64,
    pub seed: u64,
    pub blocks: Schedule,
}

/// Parse failure. Syntax errors carry the exact line and column of the
/// offending token; semantic errors carry the line when one applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    Semantic {
        line: Option<usize>,
        message: String,
    },
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseError::Syntax {
                line,
                column,
                message,
            } => write!(f, "line {line}, column {column}: {message}"),
            ParseError::Semantic {
                line: Some(line),
                message,
            } => write!(f, "line {line}: {message}"),
            ParseError::Semantic {
                line: None,
                message,
            } => write!(f, "{message}"),
        }
    }
}

impl std::error::Error for ParseError {}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn semantic(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Semantic {
        line: Some(line),
        message: message.into(),
    }
}

/// Splits a line into whitespace-separated tokens with their 1-based
/// character columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut col = 0;
    for (byte_idx, ch) in line.char_indices() {
        col += 1;
        if ch.is_whitespace() {
            if let Some((c, b)) = start.take() {
                out.push((c, &line[b..byte_idx]));
            }
        } else if start.is_none() {
            start = Some((col, byte_idx));
        }
    }
    if let Some((c, b)) = start {
        out.push((c, &line[b..]));
    }
    out
}

fn parse_float(lineno: usize, col: usize, raw: &str, what: &str) -> Result<f64, ParseError> {
    let value: f64 = raw.parse().map_err(|_| {
        syntax(
            lineno,
            col,
            format!("expected a number for {what}, got `{raw}`"),
        )
    })?;
    if !value.is_finite() {
        return Err(semantic(lineno, format!("{what} must be finite")));
    }
    Ok(value)
}

fn parse_count(lineno: usize, col: usize, raw: &str, what: &str) -> Result<u64, ParseError> {
    let value: u64 = raw.parse().map_err(|_| {
        syntax(
            lineno,
            col,
            format!("expected an unsigned integer for {what}, got `{raw}`"),
        )
    })?;
    if value == 0 {
        return Err(semantic(lineno, format!("{what} must be >= 1")));
    }
    Ok(value)
}

fn parse_port(lineno: usize, col: usize, raw: &str) -> Result<Port, ParseError> {
    match raw {
        "0" => Ok(Port::Zero),
        "1" => Ok(Port::One),
        other => Err(syntax(
            lineno,
            col,
            format!("port must be 0 or 1, got `{other}`"),
        )),
    }
}

/// A `key=value` option token.
fn split_option(lineno: usize, col: usize, raw: &str) -> Result<(&str, &str), ParseError> {
    match raw.split_once('=') {
        Some((key, value)) if !key.is_empty() && !value.is_empty() => Ok((key, value)),
        _ => Err(syntax(
            lineno,
            col,
            format!("expected `key=value`, got `{raw}`"),
        )),
    }
}

fn parse_block(lineno: usize, toks: &[(usize, &str)]) -> Result<Block, ParseError> {
    let (kw_col, keyword) = toks[0];
    match keyword {
        "data" => {
            let &(col, raw) = toks
                .get(1)
                .ok_or_else(|| syntax(lineno, kw_col, "`data` requires a count"))?;
            let count = parse_count(lineno, col, raw, "data count")?;
            let mut port = Port::Zero;
            let mut seen_port = false;
            for &(col, raw) in &toks[2..] {
                let (key, value) = split_option(lineno, col, raw)?;
                match key {
                    "port" if !seen_port => {
                        port = parse_port(lineno, col, value)?;
                        seen_port = true;
                    }
                    "port" => return Err(syntax(lineno, col, "duplicate `port=` option")),
                    other => {
                        return Err(syntax(
                            lineno,
                            col,
                            format!("unknown option `{other}=` for `data`"),
                        ))
                    }
                }
            }
            Ok(Block::Data { count, port })
        }
        "reset" => {
            let &(col, raw) = toks
                .get(1)
                .ok_or_else(|| syntax(lineno, kw_col, "`reset` requires a count"))?;
            let count = parse_count(lineno, col, raw, "reset count")?;
            let mut port = Port::One;
            let mut phase = PhasePolicy::Fixed(0.0);
            let (mut seen_port, mut seen_phase) = (false, false);
            for &(col, raw) in &toks[2..] {
                let (key, value) = split_option(lineno, col, raw)?;
                match key {
                    "port" if !seen_port => {
                        port = parse_port(lineno, col, value)?;
                        seen_port = true;
                    }
                    "phase" if !seen_phase => {
                        phase = if value == "rand" {
                            PhasePolicy::UniformRandom
                        } else {
                            PhasePolicy::Fixed(parse_float(lineno, col, value, "reset phase")?)
                        };
                        seen_phase = true;
                    }
                    "port" | "phase" => {
                        return Err(syntax(lineno, col, format!("duplicate `{key}=` option")))
                    }
                    other => {
                        return Err(syntax(
                            lineno,
                            col,
                            format!("unknown option `{other}=` for `reset`"),
                        ))
                    }
                }
            }
            Ok(Block::Reset { count, port, phase })
        }
        "hwreset" => {
            let mut scope = ResetScope::All;
            let mut seen_scope = false;
            for &(col, raw) in &toks[1..] {
                let (key, value) = split_option(lineno, col, raw)?;
                match key {
                    "scope" if !seen_scope => {
                        scope = match value {
                            "all" => ResetScope::All,
                            "bs1" => ResetScope::Bs1,
                            "bs2" => ResetScope::Bs2,
                            other => {
                                return Err(syntax(
                                    lineno,
                                    col,
                                    format!("scope must be all, bs1, or bs2, got `{other}`"),
                                ))
                            }
                        };
                        seen_scope = true;
                    }
                    "scope" => return Err(syntax(lineno, col, "duplicate `scope=` option")),
                    other => {
                        return Err(syntax(
                            lineno,
                            col,
                            format!("unknown option `{other}=` for `hwreset`"),
                        ))
                    }
                }
            }
            Ok(Block::HwReset { scope })
        }
        other => Err(syntax(
            lineno,
            kw_col,
            format!("unknown block kind `{other}` (expected data, reset, or hwreset)"),
        )),
    }
}

/// Parses a schedule document. Errors carry 1-based line/column positions
/// into the original text (comments included).
pub fn parse_schedule(text: &str) -> Result<ScheduleDoc, ParseError> {
    let mut phase0: Option<f64> = None;
    let mut phase1: Option<f64> = None;
    let mut gamma: Option<f64> = None;
    let mut seed: Option<u64> = None;
    let mut blocks: Vec<Block> = Vec::new();
    let mut in_blocks = false;
    let mut blocks_line = 0;

    for (i, raw_line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }

        if in_blocks {
            blocks.push(parse_block(lineno, &toks)?);
            continue;
        }

        let (col, keyword) = toks[0];
        if keyword == "blocks:" {
            if let Some(&(c, extra)) = toks.get(1) {
                return Err(syntax(
                    lineno,
                    c,
                    format!("unexpected `{extra}` after `blocks:`"),
                ));
            }
            in_blocks = true;
            blocks_line = lineno;
            continue;
        }

        // Header line: exactly `key value`.
        if !matches!(keyword, "phase0" | "phase1" | "gamma" | "seed") {
            return Err(syntax(
                lineno,
                col,
                format!("unknown header key `{keyword}` (expected phase0, phase1, gamma, seed, or blocks:)"),
            ));
        }
        let &(vcol, value) = toks
            .get(1)
            .ok_or_else(|| syntax(lineno, col, format!("`{keyword}` requires a value")))?;
        if let Some(&(c, extra)) = toks.get(2) {
            return Err(syntax(
                lineno,
                c,
                format!("unexpected `{extra}` after `{keyword}` value"),
            ));
        }

        let duplicate = |set: bool| -> Result<(), ParseError> {
            if set {
                Err(semantic(
                    lineno,
                    format!("duplicate header key `{keyword}`"),
                ))
            } else {
                Ok(())
            }
        };
        match keyword {
            "phase0" => {
                duplicate(phase0.is_some())?;
                phase0 = Some(parse_float(lineno, vcol, value, "phase0")?);
            }
            "phase1" => {
                duplicate(phase1.is_some())?;
                phase1 = Some(parse_float(lineno, vcol, value, "phase1")?);
            }
            "gamma" => {
                duplicate(gamma.is_some())?;
                let g = parse_float(lineno, vcol, value, "gamma")?;
                if !(0.0..1.0).contains(&g) {
                    return Err(semantic(lineno, "gamma must be in [0, 1)"));
                }
                gamma = Some(g);
            }
            "seed" => {
                duplicate(seed.is_some())?;
                seed = Some(value.parse().map_err(|_| {
                    syntax(
                        lineno,
                        vcol,
                        format!("expected an unsigned 64-bit integer for seed, got `{value}`"),
                    )
                })?);
            }
            _ => unreachable!(),
        }
    }

    let missing = |name: &str| ParseError::Semantic {
        line: None,
        message: format!("missing header key `{name}`"),
    };
    let doc = ScheduleDoc {
        phase0: phase0.ok_or_else(|| missing("phase0"))?,
        phase1: phase1.ok_or_else(|| missing("phase1"))?,
        gamma: gamma.ok_or_else(|| missing("gamma"))?,
        seed: seed.ok_or_else(|| missing("seed"))?,
        blocks: Schedule::new(blocks),
    };
    if !in_blocks {
        return Err(ParseError::Semantic {
            line: None,
            message: "missing `blocks:` section".into(),
        });
    }
    if doc.blocks.is_empty() {
        return Err(semantic(blocks_line, "at least one block is required"));
    }
    Ok(doc)
}

/// Renders a document in canonical form: header in fixed order, one block
/// per line, defaulted options omitted. `parse_schedule` inverts it
/// exactly (floats print in shortest round-trip form).
pub fn serialize_schedule(doc: &ScheduleDoc) -> String {
    use std::fmt::Write;

    let mut out = String::new();
    writeln!(out, "phase0 {}", doc.phase0).unwrap();
    writeln!(out, "phase1 {}", doc.phase1).unwrap();
    writeln!(out, "gamma {}", doc.gamma).unwrap();
    writeln!(out, "seed {}", doc.seed).unwrap();
    writeln!(out, "blocks:").unwrap();
    for block in doc.blocks.iter() {
        match *block {
            Block::Data { count, port } => {
                write!(out, "  data {count}").unwrap();
                if port != Port::Zero {
                    write!(out, " port=1").unwrap();
                }
            }
            Block::Reset { count, port, phase } => {
                write!(out, "  reset {count}").unwrap();
                if port != Port::One {
                    write!(out, " port=0").unwrap();
                }
                match phase {
                    PhasePolicy::Fixed(psi) => {
                        if psi != 0.0 {
                            write!(out, " phase={psi}").unwrap();
                        }
                    }
                    PhasePolicy::UniformRandom => write!(out, " phase=rand").unwrap(),
                }
            }
            Block::HwReset { scope } => {
                write!(out, "  hwreset").unwrap();
                match scope {
                    ResetScope::All => {}
                    ResetScope::Bs1 => write!(out, " scope=bs1").unwrap(),
                    ResetScope::Bs2 => write!(out, " scope=bs2").unwrap(),
                }
            }
        }
        out.push('\n');
    }
    out
}
