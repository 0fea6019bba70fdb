//! Plain-text formats for tournaments, colored tournaments, point sets,
//! permutations and order profiles.
//!
//! All formats are whitespace-separated ASCII; `#` starts a comment that runs
//! to the end of the line and blank lines are ignored.
//!
//! * tournament: a header line `n`, then one `u v` line per directed edge
//!   `u -> v` (vertices `0..n`).
//! * colored tournament: a header line `n k`, then `u v c` lines with colors
//!   `1..=k`.
//! * points: one point per line, `d` decimal literals (`-1.25`, `3e-2`,
//!   `7/3`).
//! * permutation: the values `1..=n` on one line.
//! * orders: one order per line, each a permutation of `0..n`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use transdom_core::colorsearch::Permutation;
use transdom_core::geometry::PointSet;
use transdom_core::{ColoredTournament, Tournament};

/// A malformed input, located by 1-based line number (0 for end of input).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

type Parsed<T> = Result<T, ParseError>;

/// Non-empty lines with comments stripped, paired with their line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = body.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn field<T: std::str::FromStr>(line: usize, raw: &str, what: &str) -> Parsed<T> {
    raw.parse()
        .map_err(|_| ParseError::new(line, format!("expected {what}, found `{raw}`")))
}

fn arity(line: usize, fields: &[&str], want: usize, shape: &str) -> Parsed<()> {
    if fields.len() == want {
        Ok(())
    } else {
        Err(ParseError::new(
            line,
            format!("expected `{shape}`, found {} fields", fields.len()),
        ))
    }
}

/// Structural errors (missing or repeated pairs) are reported against the
/// line that introduced them when that line is known.
fn structural(err: transdom_core::Error, lines: &[(usize, usize, usize)]) -> ParseError {
    use transdom_core::Error as E;
    let line = match err {
        E::DuplicatePair { u, v } => lines
            .iter()
            .filter(|&&(_, a, b)| (a, b) == (u, v) || (a, b) == (v, u))
            .nth(1)
            .map_or(0, |l| l.0),
        E::SelfLoop { v } | E::OutOfRange { u: v, .. } => {
            lines.iter().find(|l| l.1 == v).map_or(0, |l| l.0)
        }
        E::InvalidColor { u, v, .. } => lines
            .iter()
            .find(|&&(_, a, b)| (a, b) == (u, v))
            .map_or(0, |l| l.0),
        _ => 0,
    };
    ParseError::new(line, err.to_string())
}

pub fn parse_tournament(text: &str) -> Parsed<Tournament> {
    let mut rows = records(text);
    let (hl, header) = rows
        .next()
        .ok_or_else(|| ParseError::new(0, "missing header `n`"))?;
    arity(hl, &header, 1, "n")?;
    let n: usize = field(hl, header[0], "a vertex count")?;
    let mut edges = Vec::new();
    let mut lines = Vec::new();
    for (line, f) in rows {
        arity(line, &f, 2, "u v")?;
        let (u, v) = (
            field(line, f[0], "a vertex")?,
            field(line, f[1], "a vertex")?,
        );
        edges.push((u, v));
        lines.push((line, u, v));
    }
    Tournament::from_edges(n, &edges).map_err(|e| structural(e, &lines))
}

pub fn write_tournament(t: &Tournament) -> String {
    let mut out = format!("{}\n", t.n());
    for (u, v) in t.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_colored(text: &str) -> Parsed<ColoredTournament> {
    let mut rows = records(text);
    let (hl, header) = rows
        .next()
        .ok_or_else(|| ParseError::new(0, "missing header `n k`"))?;
    arity(hl, &header, 2, "n k")?;
    let n: usize = field(hl, header[0], "a vertex count")?;
    let k: usize = field(hl, header[1], "a color count")?;
    let mut edges = Vec::new();
    let mut lines = Vec::new();
    for (line, f) in rows {
        arity(line, &f, 3, "u v c")?;
        let u = field(line, f[0], "a vertex")?;
        let v = field(line, f[1], "a vertex")?;
        let c = field(line, f[2], "a color")?;
        edges.push((u, v, c));
        lines.push((line, u, v));
    }
    ColoredTournament::from_colored_edges(n, k, &edges).map_err(|e| structural(e, &lines))
}

pub fn write_colored(ct: &ColoredTournament) -> String {
    let mut out = format!("{} {}\n", ct.n(), ct.k());
    for (u, v, c) in ct.colored_edges() {
        let _ = writeln!(out, "{u} {v} {c}");
    }
    out
}

/// Exact value of a decimal literal with optional sign, fraction and
/// exponent, or of a `p/q` fraction.
pub fn parse_rational(raw: &str) -> Option<BigRational> {
    if let Some((p, q)) = raw.split_once('/') {
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        return (!q.is_zero()).then(|| BigRational::new(p, q));
    }
    let (mantissa, exponent) = match raw.find(['e', 'E']) {
        Some(i) => (&raw[..i], raw[i + 1..].parse::<i32>().ok()?),
        None => (raw, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty()
        || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let joined: BigInt = format!("0{int}{frac}").parse().ok()?;
    let scale = exponent - i32::try_from(frac.len()).ok()?;
    let ten = BigInt::from(10u8);
    let power = num_traits::pow(ten, scale.unsigned_abs() as usize);
    let mut value = if scale >= 0 {
        BigRational::from_integer(joined * power)
    } else {
        BigRational::new(joined, power)
    };
    if negative {
        value = -value;
    }
    Some(value)
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Raw coordinates with their dimension, before the general-position check.
pub fn parse_coordinates(text: &str) -> Parsed<(usize, Vec<Vec<BigRational>>)> {
    let mut d = None;
    let mut coords = Vec::new();
    for (line, f) in records(text) {
        let want = *d.get_or_insert(f.len());
        if f.len() != want {
            return Err(ParseError::new(
                line,
                format!("expected {want} coordinates, found {}", f.len()),
            ));
        }
        let point = f
            .iter()
            .map(|raw| {
                parse_rational(raw).ok_or_else(|| {
                    ParseError::new(line, format!("expected a decimal literal, found `{raw}`"))
                })
            })
            .collect::<Parsed<Vec<_>>>()?;
        coords.push(point);
    }
    let d = d.ok_or_else(|| ParseError::new(0, "no points"))?;
    Ok((d, coords))
}

/// Parses a point file. Ties on an axis are rejected unless `relabel` asks
/// for rank relabeling.
pub fn parse_points(text: &str, relabel: bool) -> Result<PointSet, crate::CliError> {
    let (d, coords) = parse_coordinates(text)?;
    let lines: Vec<usize> = records(text).map(|(l, _)| l).collect();
    let built = if relabel {
        PointSet::rank_relabel(d, coords)
    } else {
        PointSet::new(d, coords)
    };
    built.map_err(|err| match err {
        transdom_core::Error::GeneralPositionViolation {
            axis,
            first,
            second,
        } => crate::CliError::GeneralPosition {
            axis,
            first_line: lines[first],
            second_line: lines[second],
        },
        other => other.into(),
    })
}

pub fn write_points(s: &PointSet) -> String {
    let mut out = String::new();
    for p in s.points() {
        let row: Vec<String> = p.iter().map(format_rational).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// Reads the first non-comment line as a permutation of `1..=n`.
pub fn parse_permutation(text: &str) -> Parsed<Permutation> {
    let mut rows = records(text);
    let Some((line, f)) = rows.next() else {
        return Ok(Permutation::identity(0));
    };
    if let Some((extra, _)) = rows.next() {
        return Err(ParseError::new(
            extra,
            "a permutation occupies a single line",
        ));
    }
    let values = f
        .iter()
        .map(|raw| field(line, raw, "a value"))
        .collect::<Parsed<Vec<usize>>>()?;
    Permutation::new(values).map_err(|e| ParseError::new(line, e.to_string()))
}

pub fn write_permutation(p: &Permutation) -> String {
    let row: Vec<String> = p.values().iter().map(usize::to_string).collect();
    format!("{}\n", row.join(" "))
}

/// One order of `0..n` per line; domains are checked by the consumer.
pub fn parse_orders(text: &str) -> Parsed<Vec<Vec<usize>>> {
    records(text)
        .map(|(line, f)| {
            f.iter()
                .map(|raw| field(line, raw, "a vertex"))
                .collect::<Parsed<Vec<usize>>>()
        })
        .collect()
}

pub fn write_orders(orders: &[Vec<usize>]) -> String {
    let mut out = String::new();
    for o in orders {
        let row: Vec<String> = o.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// `p/q` rendering used in JSON payloads.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `sign * floor(|r|)` digits plus a short decimal tail, for text summaries.
pub fn rational_decimal(r: &BigRational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u8), places);
    let scaled = (r.abs() * BigRational::from_integer(scale.clone()))
        .round()
        .to_integer();
    let (int, frac) = (&scaled / &scale, &scaled % &scale);
    let sign = if r.is_negative() && !scaled.is_zero() {
        "-"
    } else {
        ""
    };
    format!("{sign}{int}.{frac:0>places$}")
}
