//! Admissible projections and elimination algebras.
//!
//! A projection dropping one variable is admissible at a simple point when
//! the algebra is relatively differentially closed in that variable and some
//! generator is transversal: monic of degree n in the variable with order
//! exactly n at the point, so its n-th divided derivative is a unit. The
//! elimination algebra on the base is generated by the characteristic
//! polynomial coefficients of multiplication maps on `S[Z]/(F)`.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::One;

use crate::error::Error;
use crate::groebner::ideal_member;
use crate::matrix::{char_poly_coefficients, poly_determinant, scalar_rank};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::rees::ReesAlg;
use crate::ring::PointSpec;
use crate::{Rat, Result};

/// A monic transversal generator for one projection variable.
#[derive(Clone, Debug)]
pub struct Transversal {
    pub var: usize,
    pub gen_index: usize,
    /// n: the degree in `var`, equal to the generator's weight and to the
    /// order of the generator at the anchor point.
    pub degree: u32,
    /// The generator normalized by its (constant) leading `var`-coefficient.
    pub monic_form: Poly,
}

/// How `eliminate` treats generators that are free of the projection
/// variable: passed through unchanged, or replaced by their own
/// characteristic-polynomial coefficients like everything else.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElimMode {
    Passthrough,
    CharpolyAll,
}

/// One projection step of a chain.
#[derive(Clone, Debug)]
pub struct ElimStage {
    /// Name of the eliminated variable (valid in the stage's source ring).
    pub var_name: String,
    pub transversal: Transversal,
    /// The elimination algebra on the smaller context.
    pub algebra: ReesAlg,
    /// Image of the anchor point (same coordinates, dropped variable).
    pub point: PointSpec,
}

/// An ordered record of one-variable eliminations.
#[derive(Clone, Debug)]
pub struct ElimChain {
    pub stages: Vec<ElimStage>,
}

impl ElimChain {
    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn final_algebra<'a>(&'a self, start: &'a ReesAlg) -> &'a ReesAlg {
        self.stages.last().map(|s| &s.algebra).unwrap_or(start)
    }

    pub fn final_point<'a>(&'a self, start: &'a PointSpec) -> &'a PointSpec {
        self.stages.last().map(|s| &s.point).unwrap_or(start)
    }

    pub fn eliminated_names(&self) -> Vec<String> {
        self.stages.iter().map(|s| s.var_name.clone()).collect()
    }
}

/// The τ-invariant with its certificate of independent linear forms.
#[derive(Clone, Debug)]
pub struct Tau {
    pub tau: u32,
    /// Independent linear forms with their levels e (the form is the p^e-th
    /// root of the qualifying initial form; e = 0 in characteristic zero).
    pub certificate: Vec<(Poly, u32)>,
}

impl Transversal {
    /// Builds a transversal from a generator without anchoring it at a
    /// point: the generator must be monic in `var` of degree equal to its
    /// weight with a constant leading coefficient. Universal-coefficient
    /// eliminations (no distinguished simple point) use this; pointed code
    /// paths go through `transversal_candidates`, which also checks the
    /// order condition.
    pub fn from_generator(g: &ReesAlg, gen_index: usize, var: usize) -> Result<Transversal> {
        let (f, w) = g
            .gens()
            .get(gen_index)
            .ok_or(Error::EmptyGeneratorList)?;
        if !w.denom().is_one() {
            return Err(Error::NonIntegerWeights);
        }
        let n = *w.numer() as u32;
        if n == 0 || f.degree_in(var) != n {
            return Err(Error::NoTransversal {
                stage: 0,
                var: g.ring().var_name(var).into(),
            });
        }
        let coeffs = f.coeffs_in_var(var);
        let lead = &coeffs[n as usize];
        if !lead.is_unit() {
            return Err(Error::NoTransversal {
                stage: 0,
                var: g.ring().var_name(var).into(),
            });
        }
        let lead_coeff = lead.leading().expect("unit").1.clone();
        let field = g.ring().field().clone();
        Ok(Transversal {
            var,
            gen_index,
            degree: n,
            monic_form: f.scale(&field.inv(&lead_coeff)?),
        })
    }
}

/// All generators usable as monic transversals in `var` at the simple point
/// x, unit-normalized, ordered by (degree, generator index). An empty list
/// signals that no elimination in `var` is admissible without a coordinate
/// change.
pub fn transversal_candidates(
    g: &ReesAlg,
    x: &PointSpec,
    var: usize,
) -> Result<Vec<Transversal>> {
    match g.is_simple_at(x) {
        Ok(true) => {}
        _ => return Err(Error::NotSimple),
    }
    let field = g.ring().field().clone();
    let mut out = Vec::new();
    for (idx, (f, w)) in g.gens().iter().enumerate() {
        if !w.denom().is_one() {
            return Err(Error::NonIntegerWeights);
        }
        let n = *w.numer() as u32;
        if n == 0 || f.degree_in(var) != n {
            continue;
        }
        if f.order_at(x) != Some(n) {
            continue;
        }
        let coeffs = f.coeffs_in_var(var);
        let lead = &coeffs[n as usize];
        if !lead.is_unit() {
            continue;
        }
        let lead_coeff = lead.leading().expect("unit").1.clone();
        let monic = f.scale(&field.inv(&lead_coeff)?);
        out.push(Transversal {
            var,
            gen_index: idx,
            degree: n,
            monic_form: monic,
        });
    }
    out.sort_by_key(|t| (t.degree, t.gen_index));
    Ok(out)
}

/// The matrix of multiplication by g on the free basis 1, Z, …, Z^{n-1} of
/// S[Z]/(F); entries are Z-free polynomials of the ambient ring.
fn multiplication_matrix(g: &Poly, t: &Transversal) -> Result<Vec<Vec<Poly>>> {
    let ring = g.ring().clone();
    let n = t.degree as usize;
    let var = t.var;
    let zed = Monomial::var(ring.nvars(), var);
    let (_, mut power) = g.div_rem_in_var(&t.monic_form, var)?;
    let mut cols: Vec<Vec<Poly>> = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 {
            let shifted = power.mul_monomial(&zed);
            power = shifted.div_rem_in_var(&t.monic_form, var)?.1;
        }
        let mut col = power.coeffs_in_var(var);
        col.resize(n, Poly::zero(&ring));
        col.truncate(n);
        cols.push(col);
    }
    // Transpose columns into rows.
    let mut rows = alloc::vec![alloc::vec![Poly::zero(&ring); n]; n];
    for (j, col) in cols.iter().enumerate() {
        for (i, entry) in col.iter().enumerate() {
            rows[i][j] = entry.clone();
        }
    }
    Ok(rows)
}

/// Eliminates `t.var`: every generator (g, m) contributes the coefficients
/// of the characteristic polynomial of multiplication by g on `S[Z]/(F)`, the
/// j-th with weight j·m; zero and unit coefficients are discarded. In
/// passthrough mode, Z-free generators are instead carried over unchanged.
/// The result lives on the context without the variable. Requires the
/// algebra to be a relative-differential-closure fixed point for the
/// variable.
pub fn eliminate(g: &ReesAlg, t: &Transversal, mode: ElimMode) -> Result<ReesAlg> {
    let ring = g.ring().clone();
    if t.degree as usize > 16 {
        return Err(Error::CharPolyTooLarge(t.degree as usize));
    }
    if !g.is_rel_diff_closed(t.var)? {
        return Err(Error::NotRelativelyClosed(ring.var_name(t.var).into()));
    }
    let down = ring.without_var(t.var)?;
    let mut gens: Vec<(Poly, Rat)> = Vec::new();
    let push = |f: Poly, w: Rat, gens: &mut Vec<(Poly, Rat)>| {
        if f.is_zero() || f.is_unit() {
            return;
        }
        let dup = gens.iter().any(|(h, v)| {
            *v == w && (h == &f || (h.leading().map(|(m, _)| m) == f.leading().map(|(m, _)| m) && h.monic() == f.monic()))
        });
        if !dup {
            gens.push((f, w));
        }
    };
    for (f, w) in g.gens() {
        if mode == ElimMode::Passthrough && f.degree_in(t.var) == 0 {
            push(f.map_to_ring(&down)?, *w, &mut gens);
            continue;
        }
        let m = multiplication_matrix(f, t)?;
        let coeffs = char_poly_coefficients(&ring, &m)?;
        for (j, c) in coeffs.iter().enumerate() {
            let weight = Rat::new((j as u64 + 1) * *w.numer(), *w.denom());
            if !c.is_zero() && !c.is_unit() {
                push(c.map_to_ring(&down)?, weight, &mut gens);
            }
        }
    }
    ReesAlg::new(&down, gens)
}

/// Builds a chain of one-variable eliminations along the named variables,
/// threading the image point. Each stage takes the relative differential
/// closure, picks the first transversal candidate (lowest degree first) and
/// eliminates; fails cleanly at the first stage with no candidate.
pub fn eliminate_chain(
    g: &ReesAlg,
    x: &PointSpec,
    vars: &[String],
) -> Result<ElimChain> {
    let mut cur = g.clone();
    let mut point = x.clone();
    let mut stages = Vec::new();
    for (stage, name) in vars.iter().enumerate() {
        let var = cur.ring().var_index(name)?;
        let closed = cur.rel_diff_closure(var)?;
        let candidates = transversal_candidates(&closed, &point, var)?;
        let Some(t) = candidates.into_iter().next() else {
            return Err(Error::NoTransversal {
                stage,
                var: name.clone(),
            });
        };
        let algebra = eliminate(&closed, &t, ElimMode::Passthrough)?;
        let image = point.without_coord(var);
        stages.push(ElimStage {
            var_name: name.clone(),
            transversal: t,
            algebra: algebra.clone(),
            point: image.clone(),
        });
        cur = algebra;
        point = image;
    }
    Ok(ElimChain { stages })
}

/// Selects an admissible variable order of length m automatically: at each
/// stage the first context variable offering a transversal candidate.
pub fn admissible_chain(g: &ReesAlg, x: &PointSpec, m: u32) -> Result<ElimChain> {
    let mut cur = g.clone();
    let mut point = x.clone();
    let mut stages = Vec::new();
    for stage in 0..m as usize {
        let nvars = cur.ring().nvars();
        let mut found = None;
        for var in 0..nvars {
            let closed = cur.rel_diff_closure(var)?;
            let candidates = transversal_candidates(&closed, &point, var)?;
            if let Some(t) = candidates.into_iter().next() {
                found = Some((closed, t));
                break;
            }
        }
        let Some((closed, t)) = found else {
            return Err(Error::NoTransversal {
                stage,
                var: "<any>".into(),
            });
        };
        let name: String = cur.ring().var_name(t.var).into();
        let algebra = eliminate(&closed, &t, ElimMode::Passthrough)?;
        let image = point.without_coord(t.var);
        stages.push(ElimStage {
            var_name: name,
            transversal: t,
            algebra: algebra.clone(),
            point: image.clone(),
        });
        cur = algebra;
        point = image;
    }
    Ok(ElimChain { stages })
}

fn is_power_of(p: u64, mut n: u64) -> Option<u32> {
    let mut e = 0;
    while n > 1 {
        if !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        e += 1;
    }
    Some(e)
}

/// Initial forms of generators achieving order exactly one determine the
/// tangent ideal. In characteristic zero τ is the rank of the span of the
/// degree-one initial forms. In characteristic p a qualifying initial form
/// of degree p^e must be additive — a linear combination of powers
/// x_i^{p^e} — and contributes its coefficient-wise p^e-th root; any
/// non-additive qualifying form makes τ undetermined by this procedure and
/// is reported, never silently bounded.
pub fn tau_at(g: &ReesAlg, x: &PointSpec) -> Result<Tau> {
    if !g.is_diff_closed()? {
        return Err(Error::NotDifferentiallyClosed);
    }
    match g.is_simple_at(x) {
        Ok(true) => {}
        _ => return Err(Error::NotSimple),
    }
    let ring = g.ring().clone();
    let field = ring.field().clone();
    let p = field.characteristic();
    let mut forms: Vec<(Poly, u32)> = Vec::new();
    for (f, w) in g.gens() {
        let n = *w.numer();
        if f.order_at(x) != Some(n as u32) {
            continue;
        }
        let init = f.initial_form(x)?;
        let deg = init.total_degree();
        if p == 0 {
            if deg == 1 {
                forms.push((init, 0));
            }
            continue;
        }
        let Some(e) = is_power_of(p, deg as u64) else {
            return Err(Error::NonAdditiveInitialForm(alloc::format!("{}", f)));
        };
        // Additive: every term is a single variable raised to p^e.
        let mut root = Poly::zero(&ring);
        for (m, c) in init.terms() {
            let nz: Vec<usize> = (0..ring.nvars()).filter(|&i| m.exponent(i) > 0).collect();
            let additive = nz.len() == 1 && m.exponent(nz[0]) == deg;
            if !additive {
                return Err(Error::NonAdditiveInitialForm(alloc::format!("{}", f)));
            }
            let r = field.root_p_pow(c, e)?;
            root = root.add(&Poly::monomial(
                &ring,
                Monomial::var(ring.nvars(), nz[0]),
                r,
            ));
        }
        forms.push((root, e));
    }
    // Greedy rank computation over the coefficient matrix of the linear
    // forms keeps an independent certificate.
    let mut rows: Vec<Vec<crate::field::Scalar>> = Vec::new();
    let mut cert: Vec<(Poly, u32)> = Vec::new();
    for (form, level) in forms {
        let row: Vec<_> = (0..ring.nvars())
            .map(|i| form.coeff(&Monomial::var(ring.nvars(), i)))
            .collect();
        let mut trial = rows.clone();
        trial.push(row.clone());
        if scalar_rank(&field, &trial) > rows.len() {
            rows = trial;
            cert.push((form, level));
        }
    }
    Ok(Tau {
        tau: cert.len() as u32,
        certificate: cert,
    })
}

/// Outcome of a nested-sequence determinant check.
#[derive(Clone, Debug)]
pub struct NestedDeterminant {
    pub det: Poly,
    /// p^{2e}: the weight the determinant carries downstairs.
    pub weight: u64,
    /// Order of the determinant at the image point.
    pub order_at_image: Option<u32>,
    /// Smallest e' with det^{p^{e'}} ∈ ⟨F, g⟩, when found within the bound.
    pub membership_exponent: Option<u32>,
    pub membership_ok: bool,
}

/// Determinant of multiplication by g on `S[Z]/(F)` for a transversal F of
/// degree p^e and a companion generator of the same order: the determinant
/// has order p^{2e} at the image point and some p^{e'}-th power of it lies
/// in ⟨F, g⟩. The power search runs up to `bound`.
pub fn nested_determinant(
    g_alg: &ReesAlg,
    t: &Transversal,
    g: &Poly,
    m: u32,
    x: &PointSpec,
    bound: u32,
) -> Result<NestedDeterminant> {
    let ring = g_alg.ring().clone();
    let p = ring.field().characteristic();
    if p == 0 {
        return Err(Error::Unsupported(
            "nested determinants live in positive characteristic",
        ));
    }
    if is_power_of(p, t.degree as u64).is_none() {
        return Err(Error::Unsupported("transversal degree must be a p-power"));
    }
    if m != t.degree {
        return Err(Error::Unsupported(
            "companion generator must share the transversal's order p^e",
        ));
    }
    let matrix = multiplication_matrix(g, t)?;
    let det = poly_determinant(&ring, &matrix)?;
    let weight = (t.degree as u64).pow(2);
    let image = x.without_coord(t.var);
    let down = ring.without_var(t.var)?;
    let order_at_image = det.map_to_ring(&down)?.order_at(&image);
    let gens = [t.monic_form.clone(), g.clone()];
    let mut power = det.clone();
    let mut eprime = 0u32;
    let membership_exponent = loop {
        if ideal_member(&power, &gens)? {
            break Some(eprime);
        }
        if eprime >= bound {
            return Err(Error::MembershipBoundExceeded(bound));
        }
        power = power.pow(p as u32);
        eprime += 1;
    };
    Ok(NestedDeterminant {
        det,
        weight,
        order_at_image,
        membership_ok: membership_exponent.is_some(),
        membership_exponent,
    })
}

/// Convenience: the elimination algebra of a differentially closed algebra
/// along an automatically selected admissible chain of length m, evaluated
/// as (final algebra, final point).
pub fn eliminate_m(
    g: &ReesAlg,
    x: &PointSpec,
    m: u32,
) -> Result<(ReesAlg, PointSpec)> {
    let chain = admissible_chain(g, x, m)?;
    Ok((
        chain.final_algebra(g).clone(),
        chain.final_point(x).clone(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse_poly;
    use crate::ring::Ring;

    fn kangaroo() -> (ReesAlg, PointSpec) {
        let r = Ring::new(
            FieldSpec::with_characteristic(2).unwrap(),
            alloc::vec!["X".into(), "Y".into(), "Z".into()],
        )
        .unwrap();
        let f = parse_poly(&r, "Z^2 + Y^7 + Y X^4").unwrap();
        let g = parse_poly(&r, "(Y^3 + X^2)^2").unwrap();
        let alg = ReesAlg::new(
            &r,
            alloc::vec![(f, Rat::new(2, 1)), (g, Rat::new(1, 1))],
        )
        .unwrap();
        let o = PointSpec::origin(&r);
        (alg, o)
    }

    #[test]
    fn kangaroo_transversal_in_z_only() {
        let (g, o) = kangaroo();
        let z = g.ring().var_index("Z").unwrap();
        let x = g.ring().var_index("X").unwrap();
        let cand = transversal_candidates(&g, &o, z).unwrap();
        assert_eq!(cand.len(), 1);
        assert_eq!(cand[0].degree, 2);
        assert!(transversal_candidates(&g, &o, x).unwrap().is_empty());
    }

    #[test]
    fn kangaroo_elimination_passthrough() {
        let (g, o) = kangaroo();
        let z = g.ring().var_index("Z").unwrap();
        let t = transversal_candidates(&g, &o, z).unwrap().remove(0);
        let r = eliminate(&g, &t, ElimMode::Passthrough).unwrap();
        assert_eq!(r.gens().len(), 1);
        let expected = parse_poly(r.ring(), "(Y^3+X^2)^2").unwrap();
        assert_eq!(r.gens()[0], (expected, Rat::one()));
        let down_origin = PointSpec::origin(r.ring());
        assert_eq!(r.ord_at(&down_origin).unwrap(), Rat::new(4, 1));
    }

    #[test]
    fn kangaroo_elimination_charpoly_all_matches_order() {
        let (g, o) = kangaroo();
        let z = g.ring().var_index("Z").unwrap();
        let t = transversal_candidates(&g, &o, z).unwrap().remove(0);
        let r = eliminate(&g, &t, ElimMode::CharpolyAll).unwrap();
        // (T - g)^2 = T^2 - 2gT + g^2 collapses to T^2 + g^2 in char 2.
        let expected = parse_poly(r.ring(), "(Y^3+X^2)^4").unwrap();
        assert_eq!(r.gens(), &[(expected, Rat::new(2, 1))]);
        let down_origin = PointSpec::origin(r.ring());
        assert_eq!(r.ord_at(&down_origin).unwrap(), Rat::new(4, 1));
    }

    #[test]
    fn discriminant_of_quadratic() {
        let r = Ring::new(
            FieldSpec::Rationals,
            alloc::vec!["a1".into(), "a2".into(), "Z".into()],
        )
        .unwrap();
        let f = parse_poly(&r, "Z^2 + a1 Z + a2").unwrap();
        let g = ReesAlg::new(&r, alloc::vec![(f, Rat::new(2, 1))]).unwrap();
        let closed = g
            .rel_diff_closure(r.var_index("Z").unwrap())
            .unwrap();
        // The relative closure adds 2Z + a1 in weight one.
        assert_eq!(closed.gens().len(), 2);
        // Universal coefficients: no anchored simple point, so build the
        // transversal from the quadratic generator directly.
        let t = Transversal::from_generator(&closed, 0, r.var_index("Z").unwrap()).unwrap();
        let elim = eliminate(&closed, &t, ElimMode::Passthrough).unwrap();
        let expected = parse_poly(elim.ring(), "-(a1^2 - 4 a2)").unwrap();
        assert_eq!(elim.gens(), &[(expected, Rat::new(2, 1))]);
    }

    #[test]
    fn degree_one_transversal_is_substitution() {
        let r = Ring::new(
            FieldSpec::Rationals,
            alloc::vec!["x".into(), "y".into(), "z".into()],
        )
        .unwrap();
        let f = parse_poly(&r, "z^2 + (x^2 - y^3)^2").unwrap();
        let g = ReesAlg::new(&r, alloc::vec![(f, Rat::new(2, 1))])
            .unwrap()
            .diff_closure()
            .unwrap();
        let o = PointSpec::origin(&r);
        let chain = eliminate_chain(&g, &o, &["z".into()]).unwrap();
        let downstairs = chain.final_algebra(&g);
        // Substituting z = 0 into each generator, up to units and scalars.
        let sub = parse_poly(downstairs.ring(), "(x^2-y^3)^2").unwrap();
        assert!(downstairs
            .gens()
            .iter()
            .any(|(p, w)| *w == Rat::new(2, 1) && p.monic() == sub.monic()));
        let down_o = PointSpec::origin(downstairs.ring());
        assert_eq!(downstairs.ord_at(&down_o).unwrap(), Rat::new(2, 1));
    }

    #[test]
    fn tau_kangaroo_is_one() {
        let (g, o) = kangaroo();
        let tau = tau_at(&g, &o).unwrap();
        assert_eq!(tau.tau, 1);
        assert_eq!(tau.certificate.len(), 1);
        // The certificate is the root Z at level 1 (degree 2 = 2^1).
        let (form, level) = &tau.certificate[0];
        assert_eq!(*level, 1);
        assert_eq!(form, &parse_poly(g.ring(), "Z").unwrap());
    }

    #[test]
    fn tau_two_independent_linear_forms() {
        let r = Ring::new(
            FieldSpec::Rationals,
            alloc::vec!["z".into(), "w".into(), "x".into()],
        )
        .unwrap();
        let g = ReesAlg::new(
            &r,
            alloc::vec![
                (parse_poly(&r, "z").unwrap(), Rat::one()),
                (parse_poly(&r, "w").unwrap(), Rat::one()),
            ],
        )
        .unwrap();
        let o = PointSpec::origin(&r);
        assert_eq!(tau_at(&g, &o).unwrap().tau, 2);
    }

    #[test]
    fn tau_linear_forms_in_positive_characteristic() {
        // Level-zero (degree-one) forms work over prime fields too.
        let r = Ring::new(
            FieldSpec::with_characteristic(2).unwrap(),
            alloc::vec!["z".into(), "w".into(), "x".into()],
        )
        .unwrap();
        let g = ReesAlg::new(
            &r,
            alloc::vec![
                (parse_poly(&r, "z + w").unwrap(), Rat::one()),
                (parse_poly(&r, "w").unwrap(), Rat::one()),
            ],
        )
        .unwrap();
        let o = PointSpec::origin(&r);
        let tau = tau_at(&g, &o).unwrap();
        assert_eq!(tau.tau, 2);
        assert!(tau.certificate.iter().all(|(_, e)| *e == 0));
    }

    #[test]
    fn nested_determinant_scalar_case() {
        // g free of Z with order p^e: the determinant is g^{p^e} of order
        // p^{2e} downstairs.
        let r = Ring::new(
            FieldSpec::with_characteristic(2).unwrap(),
            alloc::vec!["x".into(), "y".into(), "Z".into()],
        )
        .unwrap();
        let f = parse_poly(&r, "Z^2 + y^3").unwrap();
        let g = parse_poly(&r, "x^2 + x y").unwrap();
        let alg = ReesAlg::new(
            &r,
            alloc::vec![(f, Rat::new(2, 1)), (g.clone(), Rat::new(2, 1))],
        )
        .unwrap();
        let o = PointSpec::origin(&r);
        let z = r.var_index("Z").unwrap();
        let t = transversal_candidates(&alg, &o, z).unwrap().remove(0);
        let nd = nested_determinant(&alg, &t, &g, 2, &o, 4).unwrap();
        assert_eq!(nd.det, g.pow(2));
        assert_eq!(nd.weight, 4);
        assert_eq!(nd.order_at_image, Some(4));
        assert!(nd.membership_ok);
    }

    #[test]
    fn degree_one_transversal_substitutes_the_root() {
        // Eliminating along z - y^2 substitutes z by y^2, up to scalars.
        let r = Ring::new(
            FieldSpec::Rationals,
            alloc::vec!["x".into(), "y".into(), "z".into()],
        )
        .unwrap();
        let g = ReesAlg::new(
            &r,
            alloc::vec![
                (parse_poly(&r, "z - y^2").unwrap(), Rat::one()),
                (parse_poly(&r, "z + x^2").unwrap(), Rat::new(2, 1)),
            ],
        )
        .unwrap();
        let z = r.var_index("z").unwrap();
        assert!(g.is_rel_diff_closed(z).unwrap());
        let t = Transversal::from_generator(&g, 0, z).unwrap();
        let down = eliminate(&g, &t, ElimMode::Passthrough).unwrap();
        let substituted = parse_poly(down.ring(), "y^2 + x^2").unwrap();
        assert_eq!(down.gens().len(), 1);
        assert_eq!(down.gens()[0].1, Rat::new(2, 1));
        assert_eq!(down.gens()[0].0.monic(), substituted.monic());
    }

    #[test]
    fn non_additive_initial_form_is_reported() {
        // zw achieves order = weight with a cross-term initial form; τ is
        // undetermined by the additive-extraction procedure and says so.
        let r = Ring::new(
            FieldSpec::with_characteristic(2).unwrap(),
            alloc::vec!["x".into(), "z".into(), "w".into()],
        )
        .unwrap();
        let g = ReesAlg::new(
            &r,
            alloc::vec![(parse_poly(&r, "z w + x^3").unwrap(), Rat::new(2, 1))],
        )
        .unwrap()
        .diff_closure()
        .unwrap();
        let o = PointSpec::origin(&r);
        assert!(matches!(
            tau_at(&g, &o),
            Err(Error::NonAdditiveInitialForm(_))
        ));
    }

    #[test]
    fn char_poly_dimension_is_capped() {
        let r = Ring::new(
            FieldSpec::Rationals,
            alloc::vec!["x".into(), "z".into()],
        )
        .unwrap();
        let g = ReesAlg::new(
            &r,
            alloc::vec![(parse_poly(&r, "z^17 + x^17").unwrap(), Rat::new(17, 1))],
        )
        .unwrap();
        let o = PointSpec::origin(&r);
        let z = r.var_index("z").unwrap();
        let t = transversal_candidates(&g, &o, z).unwrap().remove(0);
        assert!(matches!(
            eliminate(&g, &t, ElimMode::Passthrough),
            Err(Error::CharPolyTooLarge(17))
        ));
    }

    #[test]
    fn empty_chain_returns_the_input() {
        let (g, o) = kangaroo();
        let chain = eliminate_chain(&g, &o, &[]).unwrap();
        assert!(chain.is_empty());
        assert_eq!(chain.final_algebra(&g), &g);
        assert_eq!(chain.final_point(&o), &o);
    }

    #[test]
    fn nested_determinant_with_z_involving_companion() {
        // g with a Z-part reduces mod F to a scalar of order p^e; the
        // determinant drops to order p^{2e} downstairs.
        let r = Ring::new(
            FieldSpec::with_characteristic(2).unwrap(),
            alloc::vec!["x".into(), "y".into(), "Z".into()],
        )
        .unwrap();
        let f = parse_poly(&r, "Z^2 + y^3").unwrap();
        let g = parse_poly(&r, "Z^2 + x^2").unwrap();
        let alg = ReesAlg::new(
            &r,
            alloc::vec![(f, Rat::new(2, 1)), (g.clone(), Rat::new(2, 1))],
        )
        .unwrap();
        let o = PointSpec::origin(&r);
        let z = r.var_index("Z").unwrap();
        let t = transversal_candidates(&alg, &o, z).unwrap().remove(0);
        let nd = nested_determinant(&alg, &t, &g, 2, &o, 4).unwrap();
        // g ≡ x^2 + y^3 mod F, so the determinant is its square.
        assert_eq!(nd.det, parse_poly(&r, "(x^2 + y^3)^2").unwrap());
        assert_eq!(nd.order_at_image, Some(4));
        assert!(nd.membership_ok);
    }

    #[test]
    fn nested_determinant_of_transversal_itself_is_zero() {
        let r = Ring::new(
            FieldSpec::with_characteristic(2).unwrap(),
            alloc::vec!["x".into(), "y".into(), "Z".into()],
        )
        .unwrap();
        let f = parse_poly(&r, "Z^2 + y^3").unwrap();
        let alg = ReesAlg::new(&r, alloc::vec![(f.clone(), Rat::new(2, 1))]).unwrap();
        let o = PointSpec::origin(&r);
        let z = r.var_index("Z").unwrap();
        let t = transversal_candidates(&alg, &o, z).unwrap().remove(0);
        let nd = nested_determinant(&alg, &t, &f, 2, &o, 2).unwrap();
        assert!(nd.det.is_zero());
        assert_eq!(nd.membership_exponent, Some(0));
    }
}
