//! Line-oriented diagram files.
//!
//! ```text
//! # 2-tied Hopf link
//! braid 2 1 1
//! colors 1 2
//! loop 2
//! ```
//!
//! A `pd a,b,c,d; a,b,c,d; ...` line may replace the `braid` line.

use std::fmt;

use thiserror::Error;

use super::{Color, DiagramError, TiedDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramSource {
    Braid { strands: usize, word: Vec<i32> },
    Pd(Vec<[i64; 4]>),
}

/// A parsed diagram file, kept in source form so it can be written back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramInput {
    pub source: DiagramSource,
    pub colors: Vec<Color>,
    pub loops: Vec<Color>,
}

impl DiagramInput {
    pub fn build(&self) -> Result<TiedDiagram, DiagramError> {
        match &self.source {
            DiagramSource::Braid { strands, word } => {
                TiedDiagram::from_braid(*strands, word, &self.colors, &self.loops)
            }
            DiagramSource::Pd(pd) => TiedDiagram::from_pd(pd, &self.colors, &self.loops),
        }
    }
}

impl fmt::Display for DiagramInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.source {
            DiagramSource::Braid { strands, word } => {
                write!(f, "braid {strands}")?;
                for g in word {
                    write!(f, " {g}")?;
                }
            }
            DiagramSource::Pd(pd) => {
                f.write_str("pd")?;
                for (i, q) in pd.iter().enumerate() {
                    let sep = if i == 0 { " " } else { "; " };
                    write!(f, "{sep}{},{},{},{}", q[0], q[1], q[2], q[3])?;
                }
            }
        }
        writeln!(f)?;
        f.write_str("colors")?;
        for c in &self.colors {
            write!(f, " {c}")?;
        }
        writeln!(f)?;
        for l in &self.loops {
            writeln!(f, "loop {l}")?;
        }
        Ok(())
    }
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| err(line, format!("invalid {what} {token:?}")))
}

/// Parse the text format. Construction errors are reported against the
/// line that introduced the diagram source.
pub fn parse_diagram(text: &str) -> Result<(DiagramInput, TiedDiagram), ParseError> {
    let mut source: Option<(usize, DiagramSource)> = None;
    let mut colors: Option<Vec<Color>> = None;
    let mut loops = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match keyword {
            "braid" | "pd" if source.is_some() => {
                return Err(err(line, "a diagram file holds exactly one braid or pd line"));
            }
            "braid" => {
                let mut tokens = rest.split_whitespace();
                let strands = tokens
                    .next()
                    .ok_or_else(|| err(line, "braid needs a strand count"))?;
                let strands: usize = parse_num(line, strands, "strand count")?;
                let word = tokens
                    .map(|t| parse_num(line, t, "generator"))
                    .collect::<Result<Vec<i32>, _>>()?;
                source = Some((line, DiagramSource::Braid { strands, word }));
            }
            "pd" => {
                let mut quads = Vec::new();
                for chunk in rest.split(';').map(str::trim).filter(|c| !c.is_empty()) {
                    let labels = chunk
                        .split(',')
                        .map(|t| parse_num(line, t.trim(), "arc label"))
                        .collect::<Result<Vec<i64>, _>>()?;
                    let quad: [i64; 4] = labels
                        .try_into()
                        .map_err(|_| err(line, format!("crossing {chunk:?} needs four labels")))?;
                    quads.push(quad);
                }
                source = Some((line, DiagramSource::Pd(quads)));
            }
            "colors" => {
                if colors.is_some() {
                    return Err(err(line, "duplicate colors line"));
                }
                colors = Some(
                    rest.split_whitespace()
                        .map(|t| parse_num(line, t, "color"))
                        .collect::<Result<_, _>>()?,
                );
            }
            "loop" => {
                let mut tokens = rest.split_whitespace();
                let c = tokens.next().ok_or_else(|| err(line, "loop needs a color"))?;
                if tokens.next().is_some() {
                    return Err(err(line, "loop takes a single color"));
                }
                loops.push(parse_num(line, c, "color")?);
            }
            other => return Err(err(line, format!("unknown keyword {other:?}"))),
        }
    }

    let last_line = text.lines().count().max(1);
    let (source_line, source) =
        source.ok_or_else(|| err(last_line, "missing braid or pd line"))?;
    let input = DiagramInput {
        source,
        colors: colors.unwrap_or_default(),
        loops,
    };
    let diagram = input.build().map_err(|e| err(source_line, e.to_string()))?;
    Ok((input, diagram))
}
