//! The upper-semicontinuous functions evaluated at points: ord^(d−m),
//! w-ord, the t-function, twisted/augmented algebras and the stratifying
//! function γ.
//!
//! Semicontinuous max-locus searches are replaced throughout by evaluation
//! at probe points; the engine never claims to find a global max stratum.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::elim::{admissible_chain, eliminate, tau_at, transversal_candidates, ElimMode};
use crate::error::Error;
use crate::poly::Poly;
use crate::rees::ReesAlg;
use crate::ring::PointSpec;
use crate::transform::BasicObject;
use crate::{Rat, Result};

/// A nonnegative rational or the distinguished value ∞, which sits above
/// every rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum OrdInf {
    Finite(Rat),
    Infinity,
}

impl fmt::Display for OrdInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdInf::Finite(r) => {
                if *r.denom() == 1 {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            OrdInf::Infinity => write!(f, "inf"),
        }
    }
}

/// The value of γ at a point: a length-d tuple ordered lexicographically.
/// An ∞ entry implies all later entries are ∞.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GammaValue(pub Vec<OrdInf>);

impl fmt::Display for GammaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, ")")
    }
}

/// The second satellite function's value: (w-ord, count of old divisors
/// through the point), ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TValue {
    pub word: Rat,
    pub old_count: u32,
}

impl fmt::Display for TValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = OrdInf::Finite(self.word);
        write!(f, "({}, {})", w, self.old_count)
    }
}

/// ord^(d−m): the order of the m-fold elimination algebra at the image
/// point. Any admissible variable order gives the same value, so one is
/// selected automatically.
pub fn ord_dm(g: &ReesAlg, x: &PointSpec, m: u32) -> Result<Rat> {
    let gd = g.diff_closure()?;
    if m == 0 {
        return gd.ord_at(x);
    }
    let chain = admissible_chain(&gd, x, m)?;
    chain.final_algebra(&gd).ord_at(chain.final_point(x))
}

/// w-ord of a basic object at a singular point.
pub fn w_ord(b: &BasicObject, x: &PointSpec) -> Result<Rat> {
    b.w_ord(x)
}

/// The t-function at a point: w-ord paired with the number of divisors old
/// relative to the stage s₀ where the current max w-ord was first attained.
pub fn t_fn(b: &BasicObject, x: &PointSpec) -> Result<TValue> {
    let word = b.w_ord(x)?;
    let field = b.ring().field().clone();
    let old_count = b
        .old_divisors()
        .iter()
        .filter(|d| field.is_zero(x.coord(d.var)))
        .count() as u32;
    Ok(TValue { word, old_count })
}

/// The twisted, augmented algebra G̃: eliminate m variables, twist the
/// elimination algebra by ω = ord^(d−m), pull it back and join. At probe
/// resolution its singular locus is the ord^(d−m) max stratum, and its τ
/// exceeds m. With ω ≤ 1 the construction degenerates to the differential
/// closure itself.
///
/// Depth 0 is the plain twisting construction Diff(G(ω)) joined with G and
/// works at non-simple points (that is its whole purpose); projections
/// (m ≥ 1) need a simple anchor point.
pub fn tilde(g: &ReesAlg, x: &PointSpec, m: u32) -> Result<ReesAlg> {
    let gd = g.diff_closure()?;
    if m >= 1 && !gd.is_simple_at(x).unwrap_or(false) {
        return Err(Error::NotSimple);
    }
    let omega = ord_dm(&gd, x, m)?;
    if omega <= Rat::one() {
        return Ok(gd);
    }
    let chain = admissible_chain(&gd, x, m)?;
    let downstairs = chain.final_algebra(&gd);
    let twisted = downstairs.twist(omega)?;
    let pulled = twisted.pull_back(gd.ring())?;
    let joined = gd.odot(&pulled)?.normalize_weights().diff_closure()?;
    if !joined.is_singular_at(x)? {
        return Err(Error::TildeContract(
            "the anchor point fell out of the singular locus".into(),
        ));
    }
    match tau_at(&joined, x) {
        Ok(tau) if (tau.tau as u64) < (m as u64) + 1 => Err(Error::TildeContract(
            alloc::format!("tau {} did not exceed m = {}", tau.tau, m),
        )),
        // A non-additive presentation leaves τ undetermined; the singular
        // locus check above still holds.
        _ => Ok(joined),
    }
}

/// Which direction `gamma` scans the context for an admissible projection
/// variable. The value of γ does not depend on the choice; the reverse scan
/// exists so tests can exercise genuinely different projections.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarScan {
    Forward,
    Reverse,
}

/// The stratifying function γ.
///
/// At a point of the singular locus of a differential algebra on a
/// d-dimensional ambient:
/// * in dimension one the value is the order;
/// * at a non-simple point the first coordinate is the order and the tail
///   comes from the twisted algebra Diff(G(ord)) at the same point;
/// * at a simple point lying on a codimension-one component the value is
///   padded with ∞;
/// * at a simple point otherwise the first coordinate is 1 and the tail is
///   γ of an elimination algebra at the image point.
pub fn gamma(g: &ReesAlg, x: &PointSpec) -> Result<GammaValue> {
    gamma_scanned(g, x, VarScan::Forward)
}

/// γ with an explicit projection-variable scan order.
pub fn gamma_scanned(g: &ReesAlg, x: &PointSpec, scan: VarScan) -> Result<GammaValue> {
    let gd = g.diff_closure()?;
    if !gd.is_singular_at(x)? {
        return Err(Error::NotSingular);
    }
    let mut coords = Vec::new();
    gamma_rec(&gd, x, scan, &mut coords)?;
    Ok(GammaValue(coords))
}

fn gamma_rec(g: &ReesAlg, x: &PointSpec, scan: VarScan, out: &mut Vec<OrdInf>) -> Result<()> {
    let d = g.ring().nvars();
    let ord = g.ord_at(x)?;
    if d == 1 {
        out.push(OrdInf::Finite(ord));
        return Ok(());
    }
    if ord > Rat::one() {
        // Non-simple: prefix the order, then recurse on the simple twisted
        // algebra at the same point and drop its leading 1.
        let twisted = g
            .twist(ord)?
            .normalize_weights()
            .diff_closure()
            .map_err(|e| gamma_error(out, e))?;
        out.push(OrdInf::Finite(ord));
        let mut tail = Vec::new();
        gamma_rec(&twisted, x, scan, &mut tail)?;
        out.extend(tail.into_iter().skip(1));
        return Ok(());
    }
    out.push(OrdInf::Finite(ord));
    if g
        .codim1_component_through(x)
        .map_err(|e| gamma_error(out, e))?
        .is_some()
    {
        for _ in 1..d {
            out.push(OrdInf::Infinity);
        }
        return Ok(());
    }
    // Simple, no codimension-one component: eliminate one variable.
    let vars: Vec<usize> = match scan {
        VarScan::Forward => (0..d).collect(),
        VarScan::Reverse => (0..d).rev().collect(),
    };
    for var in vars {
        let cands =
            transversal_candidates(g, x, var).map_err(|e| gamma_error(out, e))?;
        if let Some(t) = cands.into_iter().next() {
            let down = eliminate(g, &t, ElimMode::Passthrough)
                .map_err(|e| gamma_error(out, e))?;
            let down = down.diff_closure().map_err(|e| gamma_error(out, e))?;
            let image = x.without_coord(var);
            return gamma_rec(&down, &image, scan, out);
        }
    }
    Err(gamma_error(
        out,
        Error::NoTransversal {
            stage: out.len(),
            var: "<any>".into(),
        },
    ))
}

fn gamma_error(partial: &[OrdInf], cause: Error) -> Error {
    let mut s = String::from("(");
    for (i, v) in partial.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        s.push_str(&alloc::format!("{}", v));
    }
    s.push_str(", …)");
    Error::GammaIncomplete {
        partial: s,
        reason: alloc::format!("{}", cause),
    }
}

/// Monomial-case detection report.
#[derive(Clone, Debug)]
pub struct MonomialReport {
    pub monomial: bool,
    /// Per generator: (divisor variable name, exponent) factor list.
    pub exponents: Vec<Vec<(String, u32)>>,
    /// Max w-ord over the singular probe points (0 in the monomial case).
    pub max_w_ord: Rat,
}

/// A basic object is in the monomial case when every generator is, up to a
/// unit, a monomial in the exceptional variables — operationally: each
/// residual after stripping the divisors is a nonvanishing constant, or the
/// max w-ord over the singular probe points is zero.
pub fn monomial_case(b: &BasicObject, probes: &[PointSpec]) -> Result<MonomialReport> {
    let ring = b.ring().clone();
    let mut exponents = Vec::new();
    let mut all_units = !b.algebra.gens().is_empty();
    for (f, _) in b.algebra.gens() {
        let mut residual = f.clone();
        let mut factors = Vec::new();
        for d in &b.divisors {
            let v = Poly::var(&ring, d.var);
            let (k, rest) = residual.divide_out(&v)?;
            factors.push((ring.var_name(d.var).into(), k));
            residual = rest;
        }
        if !residual.is_unit() {
            all_units = false;
        }
        exponents.push(factors);
    }
    let max = b.max_w_ord(probes)?;
    Ok(MonomialReport {
        monomial: all_units || (max == Rat::from_integer(0) && !b.algebra.gens().is_empty()),
        exponents,
        max_w_ord: max,
    })
}
