//! Text formats: Rees algebra files, elimination-chain records, chart
//! lineage trees and stratification tables. All formats are line-oriented
//! and byte-stable for golden-file comparison.

use std::fmt::Write as _;
use std::sync::Arc;

use rees_core::elim::ElimChain;
use rees_core::field::FieldSpec;
use rees_core::parse::parse_poly;
use rees_core::rees::ReesAlg;
use rees_core::ring::Ring;
use rees_core::transform::{BasicObject, CenterSpec};
use rees_core::{Error, Rat};

pub type Result<T> = std::result::Result<T, Error>;

fn weight_text(w: &Rat) -> String {
    if *w.denom() == 1 {
        format!("{}", w.numer())
    } else {
        format!("{}/{}", w.numer(), w.denom())
    }
}

pub fn parse_weight(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: u64 = n
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad weight `{}`", s)))?;
    let d: u64 = d
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad weight `{}`", s)))?;
    if d == 0 {
        return Err(Error::Parse("weight denominator is zero".into()));
    }
    Ok(Rat::new(n, d))
}

/// Serializes a Rees algebra: a header (field, variables) plus one
/// `gen <weight> <polynomial>` line per generator.
pub fn rees_to_text(g: &ReesAlg) -> String {
    let mut out = String::new();
    let ring = g.ring();
    let _ = writeln!(out, "field {}", ring.field().characteristic());
    let _ = writeln!(out, "vars {}", ring.vars().join(" "));
    for (f, w) in g.gens() {
        let _ = writeln!(out, "gen {} {}", weight_text(w), f);
    }
    out
}

/// Reads the `rees_to_text` format back.
pub fn rees_from_text(text: &str) -> Result<ReesAlg> {
    let mut field: Option<FieldSpec> = None;
    let mut ring: Option<Arc<Ring>> = None;
    let mut gens = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (head, rest) = line
            .split_once(' ')
            .ok_or_else(|| Error::Parse(format!("bad line `{}`", line)))?;
        match head {
            "field" => {
                let c: u64 = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse("bad characteristic".into()))?;
                field = Some(FieldSpec::with_characteristic(c)?);
            }
            "vars" => {
                let f = field
                    .clone()
                    .ok_or_else(|| Error::Parse("vars before field".into()))?;
                let names = rest.split_whitespace().map(|s| s.to_string()).collect();
                ring = Some(Ring::new(f, names)?);
            }
            "gen" => {
                let r = ring
                    .as_ref()
                    .ok_or_else(|| Error::Parse("gen before vars".into()))?;
                let (w, poly) = rest
                    .trim()
                    .split_once(' ')
                    .ok_or_else(|| Error::Parse("gen needs weight and polynomial".into()))?;
                gens.push((parse_poly(r, poly)?, parse_weight(w)?));
            }
            other => return Err(Error::Parse(format!("unknown header `{}`", other))),
        }
    }
    let r = ring.ok_or_else(|| Error::Parse("missing vars header".into()))?;
    ReesAlg::new(&r, gens)
}

/// Serializes an elimination chain stage by stage: the eliminated variable,
/// its monic transversal, and the downstairs generator list.
pub fn chain_to_text(chain: &ElimChain) -> String {
    let mut out = String::new();
    for (i, stage) in chain.stages.iter().enumerate() {
        let _ = writeln!(out, "stage {} var {}", i + 1, stage.var_name);
        let _ = writeln!(
            out,
            "transversal {} {}",
            stage.transversal.degree, stage.transversal.monic_form
        );
        for (f, w) in stage.algebra.gens() {
            let _ = writeln!(out, "gen {} {}", weight_text(w), f);
        }
    }
    out
}

/// One node of a chart lineage: how an object was produced from its parent.
#[derive(Clone, Debug)]
pub struct LineageNode {
    pub name: String,
    pub parent: Option<String>,
    /// Center variables and chart variable of the producing blow-up, when
    /// the node is not a root.
    pub center: Option<Vec<String>>,
    pub chart: Option<String>,
}

/// Renders the lineage of one object from the root down, recording center
/// variables, chart variable, divisor registry and the algebra at each
/// node.
pub fn lineage_to_text(
    path: &[(LineageNode, BasicObject)],
) -> String {
    let mut out = String::new();
    for (depth, (node, object)) in path.iter().enumerate() {
        let pad = "  ".repeat(depth);
        match (&node.center, &node.chart) {
            (Some(c), Some(v)) => {
                let _ = writeln!(
                    out,
                    "{}{} center ({}) chart {}",
                    pad,
                    node.name,
                    c.join(","),
                    v
                );
            }
            _ => {
                let _ = writeln!(out, "{}{} root", pad, node.name);
            }
        }
        let ring = object.ring();
        let divisors: Vec<String> = object
            .divisors
            .iter()
            .map(|d| format!("{}@{}", ring.var_name(d.var), d.birth_stage))
            .collect();
        let _ = writeln!(out, "{}  divisors [{}]", pad, divisors.join(" "));
        for (f, w) in object.algebra.gens() {
            let _ = writeln!(out, "{}  gen {} {}", pad, weight_text(w), f);
        }
    }
    out
}

/// Renders an aligned text table; the first row is the header.
pub fn table_to_text(rows: &[Vec<String>]) -> String {
    if rows.is_empty() {
        return String::new();
    }
    let cols = rows.iter().map(|r| r.len()).max().unwrap();
    let mut widths = vec![0usize; cols];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            let _ = write!(line, "{:width$}", cell, width = widths[i]);
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
    out
}

pub fn center_text(ring: &Ring, c: &CenterSpec) -> String {
    let names: Vec<&str> = c.vars.iter().map(|&v| ring.var_name(v)).collect();
    format!("({})", names.join(","))
}
