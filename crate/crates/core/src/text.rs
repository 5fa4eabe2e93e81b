//! The line-oriented QP text format.
//!
//! ```text
//! vertices: 2
//! arrow a1: 1 -> 2
//! arrow b1: 2 -> 1
//! term 1 a1 b1 a1 b1 a1 b1
//! cap: 12
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Coefficients are
//! integers or `p/q` fractions; vertices are numbered from 1.

use std::fmt::Write;
use std::sync::Arc;

use crate::coeff::{fmt_q, parse_q, Q};
use crate::error::{Error, Result};
use crate::path::Path;
use crate::potential::{Potential, QuiverWithPotential};
use crate::quiver::{Arrow, Quiver};

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

/// Parses a QP; the quiver is validated and every term must be a cycle.
pub fn parse_qp(src: &str) -> Result<QuiverWithPotential> {
    let mut vertices: Option<usize> = None;
    let mut cap: Option<usize> = None;
    let mut arrows = Vec::new();
    let mut terms: Vec<(usize, Q, Vec<String>)> = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vertices:") {
            match rest.trim().parse() {
                Ok(n) if vertices.is_none() => vertices = Some(n),
                Ok(_) => return perr(ln, "duplicate vertices line"),
                Err(_) => return perr(ln, "expected `vertices: <count>`"),
            }
        } else if let Some(rest) = line.strip_prefix("cap:") {
            match rest.trim().parse() {
                Ok(d) => cap = Some(d),
                Err(_) => return perr(ln, "expected `cap: <degree>`"),
            }
        } else if let Some(rest) = line.strip_prefix("arrow ") {
            let Some((name, ends)) = rest.split_once(':') else {
                return perr(ln, "expected `arrow <name>: <s> -> <t>`");
            };
            let Some((s, t)) = ends.split_once("->") else {
                return perr(ln, "expected `arrow <name>: <s> -> <t>`");
            };
            let (Ok(s), Ok(t)) = (s.trim().parse::<usize>(), t.trim().parse::<usize>()) else {
                return perr(ln, "arrow endpoints must be vertex numbers");
            };
            let name = name.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return perr(ln, "arrow names must be single tokens");
            }
            if s == 0 || t == 0 {
                return perr(ln, "vertices are numbered from 1");
            }
            arrows.push((ln, Arrow::new(name, s - 1, t - 1)));
        } else if let Some(rest) = line.strip_prefix("term ") {
            let mut it = rest.split_whitespace();
            let Some(c) = it.next().and_then(parse_q) else {
                return perr(ln, "expected `term <coeff> <arrow>...`");
            };
            let names: Vec<String> = it.map(str::to_owned).collect();
            if names.is_empty() {
                return perr(ln, "a term needs at least one arrow");
            }
            terms.push((ln, c, names));
        } else {
            return perr(ln, format!("unrecognised line `{line}`"));
        }
    }
    let Some(n) = vertices else {
        return perr(0, "missing `vertices:` line");
    };
    let Some(cap) = cap else {
        return perr(0, "missing `cap:` line");
    };
    let defects = crate::quiver::validate_quiver(n, &arrows.iter().map(|(_, a)| a.clone()).collect::<Vec<_>>());
    if let Some(d) = defects.iter().find(|d| !d.is_warning()) {
        let name = match d {
            crate::quiver::Defect::DanglingSource { arrow }
            | crate::quiver::Defect::DanglingTarget { arrow }
            | crate::quiver::Defect::DuplicateArrow { arrow } => arrow.clone(),
            crate::quiver::Defect::MultipleLoops { .. } => String::new(),
        };
        let ln = arrows.iter().filter(|(_, a)| a.name == name).map(|(l, _)| *l).last().unwrap_or(0);
        return perr(ln, d.to_string());
    }
    let quiver = Arc::new(Quiver::new(n, arrows.into_iter().map(|(_, a)| a).collect())?);
    let mut w = Potential::zero(quiver.clone(), cap);
    for (ln, c, names) in terms {
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let p = match Path::from_names(&quiver, &refs) {
            Ok(p) => p,
            Err(e) => return perr(ln, e.to_string()),
        };
        if let Err(e) = w.add_cycle(&p, c) {
            return perr(ln, e.to_string());
        }
    }
    QuiverWithPotential::new(quiver, w)
}

/// Emits the canonical text form: arrows in declaration order, terms in path order.
pub fn emit_qp(qp: &QuiverWithPotential) -> String {
    let q = &qp.quiver;
    let mut s = String::new();
    let _ = writeln!(s, "vertices: {}", q.num_vertices());
    for a in q.arrows() {
        let _ = writeln!(s, "arrow {}: {} -> {}", a.name, a.source + 1, a.target + 1);
    }
    for (p, c) in qp.potential.terms() {
        let _ = writeln!(s, "term {} {}", fmt_q(c), p.names(q).join(" "));
    }
    let _ = writeln!(s, "cap: {}", qp.cap());
    s
}
