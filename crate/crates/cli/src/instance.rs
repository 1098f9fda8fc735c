//! Line-oriented instance and witness files.
//!
//! ```text
//! # comments run to end of line
//! mode homothet
//! seed 17            # optional
//! shape 4
//! -1 0 0 closed      # a_x a_y b strict|closed  :  a·x <= b  (or <)
//! 1 0 1 closed
//! 0 -1 0 closed
//! 0 1 1 strict
//! points 2
//! 0 0
//! 1/2 3/4
//! ```
//!
//! Numbers are rationals written `p/q` (or `p` when `q = 1`).

use std::fmt::Write as _;

use homoplane_core::{
    ConvexShape, Error as CoreError, GeometricGraph, HalfPlane, Mode, Point2, PointSet, Scalar,
};
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub points: PointSet,
    pub shape: ConvexShape,
    pub mode: Mode,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Parses `p/q` or `p`; the denominator must be a positive integer.
pub fn parse_rational(token: &str) -> Result<Scalar, String> {
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (token, None),
    };
    let numerator: BigInt = num
        .parse()
        .map_err(|_| format!("malformed rational `{token}`"))?;
    let denominator: BigInt = match den {
        None => BigInt::from(1),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(format!("malformed denominator in `{token}`"));
            }
            d.parse()
                .map_err(|_| format!("malformed denominator in `{token}`"))?
        }
    };
    if denominator.is_zero() {
        return Err(format!("zero denominator in `{token}`"));
    }
    Ok(Scalar::new(numerator, denominator))
}

pub fn format_rational(v: &Scalar) -> String {
    v.to_string()
}

struct Lines<'a> {
    inner: Box<dyn Iterator<Item = (usize, Vec<&'a str>)> + 'a>,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, Vec<&'a str>)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| {
                    (
                        i + 1,
                        l.split('#')
                            .next()
                            .unwrap_or("")
                            .split_whitespace()
                            .collect::<Vec<_>>(),
                    )
                })
                .filter(|(_, toks)| !toks.is_empty()),
        );
        Lines {
            inner: it,
            last_line: 0,
        }
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let item = self.inner.next();
        if let Some((line, _)) = &item {
            self.last_line = *line;
        }
        item
    }
}

fn rational_field(line: usize, token: &str, field: &str) -> Result<Scalar, ParseError> {
    parse_rational(token).map_err(|m| err(line, format!("{field}: {m}")))
}

fn count_field(line: usize, toks: &[&str], keyword: &str) -> Result<usize, ParseError> {
    if toks.len() != 2 {
        return Err(err(line, format!("expected `{keyword} <count>`")));
    }
    toks[1]
        .parse()
        .map_err(|_| err(line, format!("malformed {keyword} count `{}`", toks[1])))
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = Lines::new(text);
    let mut mode = None;
    let mut seed = None;
    let mut shape: Option<ConvexShape> = None;
    let mut points: Option<PointSet> = None;

    while let Some((line, toks)) = lines.next() {
        match toks[0] {
            "mode" => {
                if mode.is_some() {
                    return Err(err(line, "duplicate `mode` line"));
                }
                if toks.len() != 2 {
                    return Err(err(line, "expected `mode translate|homothet`"));
                }
                mode = Some(toks[1].parse::<Mode>().map_err(|m| err(line, m))?);
            }
            "seed" => {
                if seed.is_some() {
                    return Err(err(line, "duplicate `seed` line"));
                }
                if toks.len() != 2 {
                    return Err(err(line, "expected `seed <u64>`"));
                }
                seed = Some(
                    toks[1]
                        .parse::<u64>()
                        .map_err(|_| err(line, format!("malformed seed `{}`", toks[1])))?,
                );
            }
            "shape" => {
                if shape.is_some() {
                    return Err(err(line, "duplicate `shape` section"));
                }
                let k = count_field(line, &toks, "shape")?;
                let mut halfplanes = Vec::with_capacity(k);
                for h in 0..k {
                    let (l, t) = lines.next().ok_or_else(|| {
                        err(
                            lines.last_line,
                            format!("shape: expected {k} half-planes, found {h}"),
                        )
                    })?;
                    if t.len() != 4 {
                        return Err(err(l, "half-plane: expected `a_x a_y b strict|closed`"));
                    }
                    let ax = rational_field(l, t[0], "half-plane a_x")?;
                    let ay = rational_field(l, t[1], "half-plane a_y")?;
                    let b = rational_field(l, t[2], "half-plane b")?;
                    let strict = match t[3] {
                        "strict" => true,
                        "closed" => false,
                        other => {
                            return Err(err(
                                l,
                                format!("half-plane: expected strict or closed, found `{other}`"),
                            ))
                        }
                    };
                    let hp = HalfPlane::new(Point2::new(ax, ay), b, strict)
                        .map_err(|e| err(l, e.to_string()))?;
                    halfplanes.push(hp);
                }
                shape = Some(ConvexShape::new(halfplanes));
            }
            "points" => {
                if points.is_some() {
                    return Err(err(line, "duplicate `points` section"));
                }
                let n = count_field(line, &toks, "points")?;
                let mut pts = Vec::with_capacity(n);
                let mut first_line = Vec::with_capacity(n);
                for idx in 0..n {
                    let (l, t) = lines.next().ok_or_else(|| {
                        err(
                            lines.last_line,
                            format!("points: expected {n} points, found {idx}"),
                        )
                    })?;
                    if t.len() != 2 {
                        return Err(err(l, "point: expected `x y`"));
                    }
                    pts.push(Point2::new(
                        rational_field(l, t[0], "point x")?,
                        rational_field(l, t[1], "point y")?,
                    ));
                    first_line.push(l);
                }
                points = Some(PointSet::new(pts).map_err(|e| match e {
                    CoreError::DuplicatePoint { second, .. } => {
                        err(first_line[second], e.to_string())
                    }
                    other => err(line, other.to_string()),
                })?);
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }
    let end = lines.last_line;
    Ok(Instance {
        mode: mode.ok_or_else(|| err(end, "missing `mode` line"))?,
        seed,
        shape: shape.ok_or_else(|| err(end, "missing `shape` section"))?,
        points: points.ok_or_else(|| err(end, "missing `points` section"))?,
    })
}

pub fn emit_instance(instance: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "mode {}", instance.mode).unwrap();
    if let Some(seed) = instance.seed {
        writeln!(out, "seed {seed}").unwrap();
    }
    writeln!(out, "shape {}", instance.shape.len()).unwrap();
    for h in instance.shape.halfplanes() {
        writeln!(
            out,
            "{} {} {} {}",
            format_rational(&h.normal().x),
            format_rational(&h.normal().y),
            format_rational(h.bound()),
            if h.is_strict() { "strict" } else { "closed" }
        )
        .unwrap();
    }
    writeln!(out, "points {}", instance.points.len()).unwrap();
    for p in instance.points.points() {
        writeln!(out, "{} {}", format_rational(&p.x), format_rational(&p.y)).unwrap();
    }
    out
}

/// One line per edge: `i j t_x t_y lambda`.
pub fn emit_witnesses(g: &GeometricGraph) -> String {
    let mut out = String::new();
    for e in g.edges() {
        let t = e.witness.translation();
        writeln!(
            out,
            "{} {} {} {} {}",
            e.i,
            e.j,
            format_rational(&t.x),
            format_rational(&t.y),
            format_rational(e.witness.scale())
        )
        .unwrap();
    }
    out
}

/// Reads a witness file back as `(i, j, t_x, t_y, lambda)` rows.
pub fn parse_witnesses(
    text: &str,
) -> Result<Vec<(usize, usize, Scalar, Scalar, Scalar)>, ParseError> {
    let mut lines = Lines::new(text);
    let mut rows = Vec::new();
    while let Some((l, t)) = lines.next() {
        if t.len() != 5 {
            return Err(err(l, "witness: expected `i j t_x t_y lambda`"));
        }
        let idx = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(l, format!("malformed index `{s}`")))
        };
        rows.push((
            idx(t[0])?,
            idx(t[1])?,
            rational_field(l, t[2], "t_x")?,
            rational_field(l, t[3], "t_y")?,
            rational_field(l, t[4], "lambda")?,
        ));
    }
    Ok(rows)
}
