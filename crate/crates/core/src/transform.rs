//! Monoidal transformations by coordinate charts.
//!
//! Centers are coordinate subspaces (the common zero locus of a subset of
//! variables); general smooth centers are reached by a user-supplied linear
//! change beforehand. A chart of the blow-up substitutes v ↦ v·u for every
//! center variable v other than the chart variable u, so charts stay
//! monomial and normal crossings are decidable by inspection.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::elim::{eliminate, transversal_candidates, ElimChain, ElimMode};
use crate::error::Error;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::rees::ReesAlg;
use crate::ring::{PointSpec, Ring};
use crate::{Rat, Result};

/// An exceptional (or initial) divisor cut out by a chart variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub var: usize,
    pub birth_stage: u32,
}

impl Divisor {
    /// Old means born no later than the reference stage s₀ of the current
    /// bookkeeping.
    pub fn is_old(&self, s0: u32) -> bool {
        self.birth_stage <= s0
    }
}

/// A coordinate center: the common zero locus of the named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterSpec {
    pub vars: Vec<usize>,
}

impl CenterSpec {
    pub fn new(mut vars: Vec<usize>) -> Result<CenterSpec> {
        vars.sort_unstable();
        vars.dedup();
        if vars.is_empty() {
            return Err(Error::ImpermissibleCenter);
        }
        Ok(CenterSpec { vars })
    }

    pub fn contains(&self, var: usize) -> bool {
        self.vars.contains(&var)
    }
}

/// Ambient chart record: ring, algebra, divisor registry and the history of
/// max-w-ord values per stage (stage 0 is creation).
#[derive(Clone, Debug)]
pub struct BasicObject {
    ring: Arc<Ring>,
    pub algebra: ReesAlg,
    pub divisors: Vec<Divisor>,
    pub word_history: Vec<Rat>,
}

/// Order of a polynomial along a coordinate center: the minimum over
/// monomials of the summed exponents of the center variables.
pub fn order_along_center(f: &Poly, center: &CenterSpec) -> u32 {
    f.terms()
        .map(|(m, _)| center.vars.iter().map(|&v| m.exponent(v)).sum())
        .min()
        .unwrap_or(0)
}

/// Per-generator permissibility data.
#[derive(Clone, Debug)]
pub struct PermissibilityReport {
    pub permissible: bool,
    /// (generator index, order along center, required weight) for failures.
    pub failures: Vec<(usize, u32, u64)>,
}

impl BasicObject {
    /// A fresh object with no divisors; records the stage-0 max w-ord over
    /// the probe points (which equals max ord, the registry being empty).
    pub fn new(algebra: ReesAlg, probes: &[PointSpec]) -> Result<BasicObject> {
        let ring = algebra.ring().clone();
        let mut b = BasicObject {
            ring,
            algebra,
            divisors: Vec::new(),
            word_history: Vec::new(),
        };
        let m = b.max_w_ord(probes)?;
        b.word_history.push(m);
        Ok(b)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn stage(&self) -> u32 {
        (self.word_history.len() - 1) as u32
    }

    /// w-ord at a singular point: strip every exceptional variable from each
    /// generator, then take the min of ν_x(residual)/weight.
    pub fn w_ord(&self, x: &PointSpec) -> Result<Rat> {
        let mut best: Option<Rat> = None;
        for (f, w) in self.algebra.gens() {
            let mut residual = f.clone();
            for d in &self.divisors {
                let v = Poly::var(&self.ring, d.var);
                let (_, rest) = residual.divide_out(&v)?;
                residual = rest;
            }
            let nu = residual.order_at(x).expect("residual of nonzero is nonzero");
            let val = Rat::new(nu as u64, 1) / *w;
            best = Some(match best {
                None => val,
                Some(b) => b.min(val),
            });
        }
        best.ok_or(Error::EmptyGeneratorList)
    }

    /// Max of w-ord over the singular probe points; 0 when none is singular.
    pub fn max_w_ord(&self, probes: &[PointSpec]) -> Result<Rat> {
        let mut best = Rat::zero();
        for p in probes {
            if self.algebra.is_singular_at(p)? {
                best = best.max(self.w_ord(p)?);
            }
        }
        Ok(best)
    }

    /// The smallest stage whose recorded max equals the current one; the
    /// w-ord history is nonincreasing along permissible sequences.
    pub fn s_zero(&self) -> u32 {
        let current = self.word_history.last().expect("stage 0 always recorded");
        self.word_history
            .iter()
            .position(|m| m == current)
            .expect("current value is present") as u32
    }

    /// Divisors counted as old by the current s₀ bookkeeping.
    pub fn old_divisors(&self) -> Vec<&Divisor> {
        let s0 = self.s_zero();
        self.divisors.iter().filter(|d| d.is_old(s0)).collect()
    }
}

/// The center is permissible when every generator has order ≥ weight along
/// it. Coordinate centers are smooth and meet coordinate divisors in normal
/// crossings by construction.
pub fn check_permissible(b: &BasicObject, center: &CenterSpec) -> Result<PermissibilityReport> {
    if !b.algebra.has_integer_weights() {
        return Err(Error::NonIntegerWeights);
    }
    let mut failures = Vec::new();
    for (i, (f, w)) in b.algebra.gens().iter().enumerate() {
        let along = order_along_center(f, center);
        if (along as u64) < *w.numer() {
            failures.push((i, along, *w.numer()));
        }
    }
    Ok(PermissibilityReport {
        permissible: failures.is_empty(),
        failures,
    })
}

/// π* of a polynomial for the chart `chart_var` of the blow-up along
/// `center`: every other center variable picks up one factor of the chart
/// variable per exponent.
pub fn chart_pullback(f: &Poly, center: &CenterSpec, chart_var: usize) -> Poly {
    let ring = f.ring().clone();
    let mut out = Poly::zero(&ring);
    for (m, c) in f.terms() {
        let mut expo = m.0.clone();
        let extra: u32 = center
            .vars
            .iter()
            .filter(|&&v| v != chart_var)
            .map(|&v| m.exponent(v))
            .sum();
        expo[chart_var] += extra;
        out = out.add(&Poly::monomial(&ring, Monomial(expo), c.clone()));
    }
    out
}

fn divide_chart_power(f: &Poly, chart_var: usize, n: u32, gen: usize) -> Result<Poly> {
    let ring = f.ring().clone();
    let mut out = Poly::zero(&ring);
    for (m, c) in f.terms() {
        if m.exponent(chart_var) < n {
            return Err(Error::NotDivisible { generator: gen });
        }
        let mut expo = m.0.clone();
        expo[chart_var] -= n;
        out = out.add(&Poly::monomial(&ring, Monomial(expo), c.clone()));
    }
    Ok(out)
}

/// One chart of a permissible monoidal transformation. Generators become
/// their weak transforms (π*f divided by exactly the weight-th power of the
/// chart variable), the chart variable joins the divisor registry with the
/// new birth stage, and the new stage's max w-ord over the probe points is
/// recorded. Probes are points of the new chart; the chart origin is always
/// included.
pub fn blowup_chart(
    b: &BasicObject,
    center: &CenterSpec,
    chart_var: usize,
    probes: &[PointSpec],
) -> Result<BasicObject> {
    if !center.contains(chart_var) {
        return Err(Error::ChartNotInCenter);
    }
    let report = check_permissible(b, center)?;
    if !report.permissible {
        return Err(Error::ImpermissibleCenter);
    }
    let ring = b.ring().clone();
    let mut gens = Vec::with_capacity(b.algebra.gens().len());
    for (i, (f, w)) in b.algebra.gens().iter().enumerate() {
        let total = chart_pullback(f, center, chart_var);
        let weak = divide_chart_power(&total, chart_var, *w.numer() as u32, i)?;
        gens.push((weak, *w));
    }
    let algebra = ReesAlg::new(&ring, gens)?;
    let birth = b.stage() + 1;
    let mut divisors: Vec<Divisor> = b
        .divisors
        .iter()
        // A divisor cut by the chart variable itself leaves the chart: its
        // strict transform does not meet it.
        .filter(|d| d.var != chart_var)
        .cloned()
        .collect();
    divisors.push(Divisor {
        var: chart_var,
        birth_stage: birth,
    });
    let mut out = BasicObject {
        ring: ring.clone(),
        algebra,
        divisors,
        word_history: b.word_history.clone(),
    };
    let mut pts: Vec<PointSpec> = alloc::vec![PointSpec::origin(&ring)];
    pts.extend(probes.iter().cloned());
    let m = out.max_w_ord(&pts)?;
    out.word_history.push(m);
    Ok(out)
}

/// Controlled transform of a pair (J, b): π*J divided by exactly the b-th
/// power of the exceptional variable.
pub fn pair_transform(
    j: &Poly,
    b: u32,
    center: &CenterSpec,
    chart_var: usize,
) -> Result<Poly> {
    if !center.contains(chart_var) {
        return Err(Error::ChartNotInCenter);
    }
    let total = chart_pullback(j, center, chart_var);
    divide_chart_power(&total, chart_var, b, 0)
}

/// Strict transform: π*f divided by the maximal power of the exceptional
/// variable.
pub fn strict_transform(f: &Poly, center: &CenterSpec, chart_var: usize) -> Result<Poly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let total = chart_pullback(f, center, chart_var);
    if total.is_constant() {
        return Ok(total);
    }
    let v = Poly::var(f.ring(), chart_var);
    Ok(total.divide_out(&v)?.1)
}

/// The upstairs/downstairs result of one commuting blow-up, with the order
/// comparison at the probe points.
#[derive(Clone, Debug)]
pub struct CommuteOutcome {
    pub upstairs: BasicObject,
    pub downstairs: BasicObject,
    /// (downstairs point, ord of eliminate-after-transform, ord of
    /// transform-after-eliminate) at each singular probe.
    pub comparisons: Vec<(PointSpec, Rat, Rat)>,
    pub all_equal: bool,
}

/// Blows up upstairs and downstairs with matching charts and checks that
/// elimination commutes with the transformation at the probe points.
///
/// Every eliminated variable must be a center variable (the normalization
/// that the transversal variable vanishes along the center),
/// the downstairs center is the center minus the eliminated variables, and
/// the chart variable must survive downstairs. Probes are downstairs chart
/// points; upstairs they are completed with zero coordinates for the
/// eliminated variables.
pub fn commute_elimination(
    b: &BasicObject,
    chain: &ElimChain,
    center: &CenterSpec,
    chart_var: usize,
    probes: &[PointSpec],
) -> Result<CommuteOutcome> {
    let ring = b.ring().clone();
    let eliminated = chain.eliminated_names();
    let mut elim_idx = Vec::with_capacity(eliminated.len());
    for name in &eliminated {
        let idx = ring.var_index(name)?;
        if !center.contains(idx) {
            return Err(Error::CenterChainMismatch(alloc::format!(
                "eliminated variable `{}` is not a center variable",
                name
            )));
        }
        elim_idx.push(idx);
    }
    if elim_idx.contains(&chart_var) {
        return Err(Error::CenterChainMismatch(
            "chart variable was eliminated; pick a chart that survives downstairs".into(),
        ));
    }

    // Downstairs data live on the chain's final context.
    let down_alg = chain.final_algebra(&b.algebra).clone();
    let down_ring = down_alg.ring().clone();
    let down_center = CenterSpec::new(
        center
            .vars
            .iter()
            .filter(|v| !elim_idx.contains(v))
            .map(|&v| down_ring.var_index(ring.var_name(v)))
            .collect::<Result<Vec<_>>>()?,
    )
    .map_err(|_| {
        Error::CenterChainMismatch("the downstairs center would be empty".into())
    })?;
    let down_chart = down_ring.var_index(ring.var_name(chart_var))?;
    let down_divisors = b
        .divisors
        .iter()
        .filter(|d| !elim_idx.contains(&d.var))
        .map(|d| {
            Ok(Divisor {
                var: down_ring.var_index(ring.var_name(d.var))?,
                birth_stage: d.birth_stage,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    // The downstairs companion starts its own history here: its stage-0
    // maximum is taken over the blow-down images of the chart probes (the
    // chart map is monomial, so images are exact points of the base).
    let blow_down = |p: &PointSpec| -> Result<PointSpec> {
        let mut coords: Vec<_> = p.coords().to_vec();
        let chart_val = p.coord(down_chart).clone();
        for &v in &down_center.vars {
            if v != down_chart {
                coords[v] = down_ring.field().mul(&coords[v], &chart_val);
            }
        }
        PointSpec::new(&down_ring, coords)
    };
    let mut base_probes = alloc::vec![PointSpec::origin(&down_ring)];
    for p in probes {
        base_probes.push(blow_down(p)?);
    }
    let mut downstairs_obj = BasicObject {
        ring: down_ring.clone(),
        algebra: down_alg,
        divisors: down_divisors,
        word_history: Vec::new(),
    };
    let stage0 = downstairs_obj.max_w_ord(&base_probes)?;
    downstairs_obj.word_history.push(stage0);

    // Upstairs probes: downstairs coordinates with zeros inserted for the
    // eliminated variables.
    let lift = |p: &PointSpec| -> Result<PointSpec> {
        let mut coords = Vec::with_capacity(ring.nvars());
        for i in 0..ring.nvars() {
            if elim_idx.contains(&i) {
                coords.push(ring.field().zero());
            } else {
                let j = down_ring.var_index(ring.var_name(i))?;
                coords.push(p.coord(j).clone());
            }
        }
        PointSpec::new(&ring, coords)
    };
    let up_probes = probes.iter().map(&lift).collect::<Result<Vec<_>>>()?;

    let upstairs = blowup_chart(b, center, chart_var, &up_probes)?;
    let downstairs = blowup_chart(&downstairs_obj, &down_center, down_chart, probes)?;

    // Eliminate the transformed algebra along the same variables and compare
    // orders with the transformed elimination at every singular probe.
    let mut comparisons = Vec::new();
    let mut all_equal = true;
    let mut pts: Vec<PointSpec> = alloc::vec![PointSpec::origin(&down_ring)];
    pts.extend(probes.iter().cloned());
    for p in &pts {
        if !downstairs.algebra.is_singular_at(p)? {
            continue;
        }
        let up_point = lift(p)?;
        if !upstairs.algebra.is_singular_at(&up_point)? {
            continue;
        }
        let mut cur = upstairs.algebra.clone();
        let mut cur_pt = up_point;
        for name in &eliminated {
            let var = cur.ring().var_index(name)?;
            let closed = cur.rel_diff_closure(var)?;
            let cands = transversal_candidates(&closed, &cur_pt, var)?;
            let Some(t) = cands.into_iter().next() else {
                return Err(Error::NoTransversal {
                    stage: 0,
                    var: name.clone(),
                });
            };
            cur = eliminate(&closed, &t, ElimMode::Passthrough)?;
            cur_pt = cur_pt.without_coord(var);
        }
        let a = cur.ord_at(&cur_pt)?;
        let b_ord = downstairs.algebra.ord_at(p)?;
        if a != b_ord {
            all_equal = false;
        }
        comparisons.push((p.clone(), a, b_ord));
    }
    Ok(CommuteOutcome {
        upstairs,
        downstairs,
        comparisons,
        all_equal,
    })
}

/// Builds a basic object downstairs of a chain without blowing up, mainly
/// for session scripts that track both levels. The companion starts its own
/// w-ord history at the given probe points: the upstairs maxima belong to a
/// different function and do not transfer.
pub fn chain_object(
    b: &BasicObject,
    chain: &ElimChain,
    probes: &[PointSpec],
) -> Result<BasicObject> {
    let ring = b.ring().clone();
    let eliminated = chain.eliminated_names();
    let mut elim_idx = Vec::new();
    for name in &eliminated {
        elim_idx.push(ring.var_index(name)?);
    }
    let down_alg = chain.final_algebra(&b.algebra).clone();
    let down_ring = down_alg.ring().clone();
    let divisors = b
        .divisors
        .iter()
        .filter(|d| !elim_idx.contains(&d.var))
        .map(|d| {
            Ok(Divisor {
                var: down_ring.var_index(ring.var_name(d.var))?,
                birth_stage: d.birth_stage,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = BasicObject {
        ring: down_ring.clone(),
        algebra: down_alg,
        divisors,
        word_history: Vec::new(),
    };
    let mut pts = alloc::vec![PointSpec::origin(&down_ring)];
    pts.extend(probes.iter().cloned());
    let stage0 = out.max_w_ord(&pts)?;
    out.word_history.push(stage0);
    Ok(out)
}

/// Exposes construction of an object with explicit parts (the session layer
/// rebuilds objects when deserializing lineages).
pub fn assemble_object(
    algebra: ReesAlg,
    divisors: Vec<Divisor>,
    word_history: Vec<Rat>,
) -> Result<BasicObject> {
    if word_history.is_empty() {
        return Err(Error::Unsupported("word history needs a stage-0 record"));
    }
    let mut seen = Vec::new();
    for d in &divisors {
        if d.var >= algebra.ring().nvars() || seen.contains(&d.var) {
            return Err(Error::BadVariableList);
        }
        seen.push(d.var);
    }
    Ok(BasicObject {
        ring: algebra.ring().clone(),
        algebra,
        divisors,
        word_history,
    })
}
