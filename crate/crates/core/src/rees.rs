//! Rees algebras presented by weighted generators (f, w): the graded
//! subalgebra of `O_V[W]` generated by the elements f·W^w.
//!
//! Everything downstream is invariant under integral closure, so algebras
//! are handled through generator lists with only syntactic redundancy
//! pruning; no integral-closure minimization is attempted.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::One;

use crate::error::Error;
use crate::gcd::{poly_gcd_many, squarefree_part};
use crate::poly::Poly;
use crate::ring::{PointSpec, Ring};
use crate::{Rat, Result};

/// A weighted generator list over an ambient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct ReesAlg {
    ring: Arc<Ring>,
    gens: Vec<(Poly, Rat)>,
}

/// Polynomials whose common zero set is the singular locus.
#[derive(Clone, Debug)]
pub struct SingPresentation {
    pub gens: Vec<Poly>,
}

impl ReesAlg {
    pub fn new(ring: &Arc<Ring>, gens: Vec<(Poly, Rat)>) -> Result<ReesAlg> {
        for (f, w) in &gens {
            if f.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            if *w == Rat::from_integer(0) {
                return Err(Error::NonPositiveWeight);
            }
            if !Arc::ptr_eq(f.ring(), ring) && f.ring() != ring {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(ReesAlg {
            ring: ring.clone(),
            gens,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[(Poly, Rat)] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn has_integer_weights(&self) -> bool {
        self.gens.iter().all(|(_, w)| w.denom().is_one())
    }

    fn require_integer_weights(&self) -> Result<()> {
        if self.has_integer_weights() {
            Ok(())
        } else {
            Err(Error::NonIntegerWeights)
        }
    }

    /// Does a generator with the same weight and proportional polynomial
    /// already exist? Syntactic redundancy only.
    fn is_redundant(&self, f: &Poly, w: Rat) -> bool {
        self.gens.iter().any(|(g, v)| {
            *v == w && {
                if g == f {
                    return true;
                }
                // Scalar multiples: compare monic forms.
                g.leading().map(|(m, _)| m) == f.leading().map(|(m, _)| m)
                    && g.monic() == f.monic()
            }
        })
    }

    /// min over generators of ν_x(f)/w. Nonzero generators have finite order
    /// at every point, so the result is a finite nonnegative rational.
    pub fn ord_at(&self, x: &PointSpec) -> Result<Rat> {
        if self.gens.is_empty() {
            return Err(Error::EmptyGeneratorList);
        }
        let mut best: Option<Rat> = None;
        for (f, w) in &self.gens {
            let nu = f.order_at(x).expect("generators are nonzero");
            let val = Rat::new(nu as u64, 1) / *w;
            best = Some(match best {
                None => val,
                Some(b) => b.min(val),
            });
        }
        Ok(best.expect("nonempty"))
    }

    /// x ∈ Sing: every generator's order meets its weight. Requires integer
    /// weights so that the generator-level test characterizes the locus.
    pub fn is_singular_at(&self, x: &PointSpec) -> Result<bool> {
        self.require_integer_weights()?;
        if self.gens.is_empty() {
            return Err(Error::EmptyGeneratorList);
        }
        Ok(self
            .gens
            .iter()
            .all(|(f, w)| f.order_at_least(x, *w.numer() as u32)))
    }

    /// x is simple: singular with ord exactly 1.
    pub fn is_simple_at(&self, x: &PointSpec) -> Result<bool> {
        if !self.is_singular_at(x)? {
            return Err(Error::NotSingular);
        }
        Ok(self.ord_at(x)? == Rat::one())
    }

    /// All Hasse derivatives Δ^α f with |α| ≤ w−1 of every generator (f, w);
    /// their common zero set is exactly the singular locus.
    pub fn sing_presentation(&self) -> Result<SingPresentation> {
        self.require_integer_weights()?;
        let n = self.ring.nvars();
        let mut out = Vec::new();
        for (f, w) in &self.gens {
            let w = *w.numer() as u32;
            for alpha in crate::monomial::indices_up_to(n, w.saturating_sub(1)) {
                let d = f.hasse_derivative(&alpha);
                if !d.is_zero() && !out.contains(&d) {
                    out.push(d);
                }
            }
        }
        Ok(SingPresentation { gens: out })
    }

    /// Adds the Hasse derivatives (Δ^α f, w−|α|) for 0 < |α| < w. Unit
    /// derivatives are pruned from the generator list (they would trivialize
    /// the algebra) and reported separately; exact duplicates and scalar
    /// multiples are skipped. Idempotent up to such redundancy.
    pub fn diff_closure_with_units(&self) -> Result<(ReesAlg, Vec<Poly>)> {
        self.require_integer_weights()?;
        let n = self.ring.nvars();
        let mut out = self.clone();
        let mut units = Vec::new();
        for (f, w) in &self.gens {
            let w_int = *w.numer() as u32;
            for alpha in crate::monomial::indices_up_to(n, w_int.saturating_sub(1)) {
                let k: u32 = alpha.iter().sum();
                if k == 0 {
                    continue;
                }
                let d = f.hasse_derivative(&alpha);
                if d.is_zero() {
                    continue;
                }
                if d.is_unit() {
                    units.push(d);
                    continue;
                }
                let dw = Rat::new((w_int - k) as u64, 1);
                if !out.is_redundant(&d, dw) {
                    out.gens.push((d, dw));
                }
            }
        }
        Ok((out, units))
    }

    /// The differential closure; see `diff_closure_with_units` for the
    /// diagnostics channel.
    pub fn diff_closure(&self) -> Result<ReesAlg> {
        Ok(self.diff_closure_with_units()?.0)
    }

    /// Like `diff_closure` but only derivatives in the fiber direction of
    /// the projection dropping `var`.
    pub fn rel_diff_closure(&self, var: usize) -> Result<ReesAlg> {
        self.require_integer_weights()?;
        if var >= self.ring.nvars() {
            return Err(Error::UnknownVariable("<index out of range>".into()));
        }
        let n = self.ring.nvars();
        let mut out = self.clone();
        for (f, w) in &self.gens {
            let w_int = *w.numer() as u32;
            for k in 1..w_int {
                let mut alpha = alloc::vec![0u32; n];
                alpha[var] = k;
                let d = f.hasse_derivative(&alpha);
                if d.is_zero() || d.is_unit() {
                    continue;
                }
                let dw = Rat::new((w_int - k) as u64, 1);
                if !out.is_redundant(&d, dw) {
                    out.gens.push((d, dw));
                }
            }
        }
        Ok(out)
    }

    /// True when `rel_diff_closure(var)` adds nothing.
    pub fn is_rel_diff_closed(&self, var: usize) -> Result<bool> {
        Ok(self.rel_diff_closure(var)?.gens.len() == self.gens.len())
    }

    /// True when `diff_closure` adds nothing.
    pub fn is_diff_closed(&self) -> Result<bool> {
        Ok(self.diff_closure()?.gens.len() == self.gens.len())
    }

    /// The twisted algebra: every weight is scaled by ω, so that
    /// ω·ord(twist) = ord pointwise.
    pub fn twist(&self, omega: Rat) -> Result<ReesAlg> {
        if omega == Rat::from_integer(0) {
            return Err(Error::NonPositiveWeight);
        }
        Ok(ReesAlg {
            ring: self.ring.clone(),
            gens: self
                .gens
                .iter()
                .map(|(f, w)| (f.clone(), *w * omega))
                .collect(),
        })
    }

    /// Replaces each generator (f, a/b) in lowest terms by (f^b, a); the
    /// order function is unchanged at every point and all weights become
    /// integers.
    pub fn normalize_weights(&self) -> ReesAlg {
        ReesAlg {
            ring: self.ring.clone(),
            gens: self
                .gens
                .iter()
                .map(|(f, w)| {
                    let b = *w.denom() as u32;
                    if b == 1 {
                        (f.clone(), *w)
                    } else {
                        (f.pow(b), Rat::new(*w.numer(), 1))
                    }
                })
                .collect(),
        }
    }

    /// The smallest subalgebra containing both operands: concatenated
    /// generator lists. Sing(G1 ⊙ G2) = Sing G1 ∩ Sing G2.
    pub fn odot(&self, other: &ReesAlg) -> Result<ReesAlg> {
        if self.ring != other.ring {
            return Err(Error::ContextMismatch);
        }
        let mut out = self.clone();
        for (f, w) in &other.gens {
            if !out.is_redundant(f, *w) {
                out.gens.push((f.clone(), *w));
            }
        }
        Ok(out)
    }

    /// Pulls the generator list into a larger ring (same field, variable
    /// superset), for joining an elimination algebra back upstairs.
    pub fn pull_back(&self, target: &Arc<Ring>) -> Result<ReesAlg> {
        let gens = self
            .gens
            .iter()
            .map(|(f, w)| Ok((f.map_to_ring(target)?, *w)))
            .collect::<Result<Vec<_>>>()?;
        ReesAlg::new(target, gens)
    }

    /// The codimension-one part of the singular locus through x, when there
    /// is one: the squarefree part of the gcd of the Sing presentation. In a
    /// UFD the codimension-one components of a zero set are cut out by the
    /// gcd of any generating set. At a simple point the returned
    /// hypersurface is smooth at x (checked).
    pub fn codim1_component_through(&self, x: &PointSpec) -> Result<Option<Poly>> {
        let pres = self.sing_presentation()?;
        if pres.gens.is_empty() {
            return Ok(None);
        }
        let g = match poly_gcd_many(&pres.gens) {
            Ok(g) => g,
            Err(Error::GcdOfZeros) => return Ok(None),
            Err(e) => return Err(e),
        };
        if g.is_constant() {
            return Ok(None);
        }
        let field = self.ring.field();
        if !field.is_zero(&g.eval(x)) {
            return Ok(None);
        }
        let red = squarefree_part(&g)?;
        if self.is_simple_at(x).unwrap_or(false) {
            debug_assert_eq!(
                red.order_at(x),
                Some(1),
                "codim-1 component through a simple point must be smooth there"
            );
        }
        Ok(Some(red))
    }
}
