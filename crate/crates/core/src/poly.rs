//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept in a `BTreeMap` under the graded lexicographic order, so
//! iteration is canonical, the maximal key is the leading term, and no zero
//! coefficient is ever stored.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::Error;
use crate::field::Scalar;
use crate::monomial::Monomial;
use crate::ring::{PointSpec, Ring};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Scalar>,
}

/// Binomial coefficient as an exact natural number, reduced into the field
/// by the caller. This keeps Hasse derivatives valid in every characteristic.
fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Poly {
        Poly::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Scalar) -> Poly {
        let mut terms = BTreeMap::new();
        if !ring.field().is_zero(&c) {
            terms.insert(Monomial::one(ring.nvars()), c);
        }
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<Ring>, idx: usize) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(ring.nvars(), idx), ring.field().one());
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Scalar) -> Poly {
        let mut terms = BTreeMap::new();
        if !ring.field().is_zero(&c) {
            terms.insert(m, c);
        }
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn same_ring(&self, other: &Poly) -> bool {
        self.ring == other.ring
    }

    pub fn total_degree(&self) -> u32 {
        // Graded order: the last key carries the maximal degree.
        self.terms
            .keys()
            .next_back()
            .map(|m| m.degree())
            .unwrap_or(0)
    }

    /// Minimal total degree of a term; the order at the origin comes from
    /// the first key under the graded order.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.field().zero())
    }

    fn insert_term(&mut self, m: Monomial, c: Scalar) {
        let field = self.ring.field().clone();
        if field.is_zero(&c) {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = field.add(e.get(), &c);
                if field.is_zero(&sum) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert!(self.same_ring(other), "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let field = self.ring.field();
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert!(self.same_ring(other), "ring mismatch");
        let field = self.ring.field().clone();
        let mut out = Poly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert_term(m1.mul(m2), field.mul(c1, c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let field = self.ring.field().clone();
        if field.is_zero(c) {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Checked ring arithmetic with context validation.
    pub fn arith(&self, other: &Poly, which: ArithOp) -> Result<Poly> {
        if !self.same_ring(other) {
            return Err(Error::ContextMismatch);
        }
        Ok(match which {
            ArithOp::Add => self.add(other),
            ArithOp::Sub => self.sub(other),
            ArithOp::Mul => self.mul(other),
        })
    }

    pub fn eval(&self, point: &PointSpec) -> Scalar {
        let field = self.ring.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = field.mul(&term, &field.pow(point.coord(i), e));
                }
            }
            acc = field.add(&acc, &term);
        }
        acc
    }

    /// The Hasse (divided-power) derivative Δ^α: the coefficient of T^α in
    /// f(X + T). Δ^0 is the identity; valid in every characteristic.
    pub fn hasse_derivative(&self, alpha: &[u32]) -> Poly {
        assert_eq!(alpha.len(), self.ring.nvars(), "multi-index length");
        let field = self.ring.field().clone();
        let mut out = Poly::zero(&self.ring);
        'term: for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut expo = Vec::with_capacity(alpha.len());
            for (i, &a) in alpha.iter().enumerate() {
                let e = m.exponent(i);
                if a > e {
                    continue 'term;
                }
                if a > 0 {
                    coeff = field.mul(&coeff, &field.from_biguint(&binomial(e, a)));
                }
                expo.push(e - a);
            }
            out.insert_term(Monomial(expo), coeff);
        }
        out
    }

    /// Translates the point to the origin: returns f(X + x).
    pub fn translate_to_origin(&self, point: &PointSpec) -> Poly {
        let field = self.ring.field().clone();
        if point.coords().iter().all(|c| field.is_zero(c)) {
            return self.clone();
        }
        // f(X + x) = Σ_α Δ^α f(x) · X^α, a finite sum by degree.
        let mut out = Poly::zero(&self.ring);
        let nvars = self.ring.nvars();
        let maxdeg: Vec<u32> = (0..nvars).map(|i| self.degree_in(i)).collect();
        let mut alpha = alloc::vec![0u32; nvars];
        loop {
            let d = self.hasse_derivative(&alpha);
            let v = d.eval(point);
            out.insert_term(Monomial(alpha.clone()), v);
            // odometer over 0..=maxdeg
            let mut i = 0;
            loop {
                if i == nvars {
                    return out;
                }
                if alpha[i] < maxdeg[i] {
                    alpha[i] += 1;
                    break;
                }
                alpha[i] = 0;
                i += 1;
            }
        }
    }

    /// Evaluates Δ^α f at a point without materializing the derivative.
    pub fn hasse_eval(&self, alpha: &[u32], point: &PointSpec) -> Scalar {
        let field = self.ring.field().clone();
        let mut acc = field.zero();
        'term: for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &a) in alpha.iter().enumerate() {
                let e = m.exponent(i);
                if a > e {
                    continue 'term;
                }
                if a > 0 {
                    term = field.mul(&term, &field.from_biguint(&binomial(e, a)));
                }
                let rest = e - a;
                if rest > 0 {
                    term = field.mul(&term, &field.pow(point.coord(i), rest));
                }
            }
            acc = field.add(&acc, &term);
        }
        acc
    }

    /// ν_x(f): the order of f at the point, i.e. the minimal total degree of
    /// a nonzero term after translating x to the origin; equivalently the
    /// least |α| with Δ^α f(x) ≠ 0. `None` means +∞ (only for f = 0).
    pub fn order_at(&self, point: &PointSpec) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let field = self.ring.field();
        if point.coords().iter().all(|c| field.is_zero(c)) {
            return self.min_degree();
        }
        let dmax = self.total_degree();
        let n = self.ring.nvars();
        for deg in 0..=dmax {
            for alpha in crate::monomial::indices_of_degree(n, deg) {
                if !field.is_zero(&self.hasse_eval(&alpha, point)) {
                    return Some(deg);
                }
            }
        }
        unreachable!("a nonzero polynomial has a nonzero derivative within its degree")
    }

    /// True when ν_x(f) ≥ bound: all Hasse derivatives of order < bound
    /// vanish at the point. Cheaper than computing the order exactly.
    pub fn order_at_least(&self, point: &PointSpec, bound: u32) -> bool {
        if self.is_zero() {
            return true;
        }
        let field = self.ring.field();
        if point.coords().iter().all(|c| field.is_zero(c)) {
            return self.min_degree().expect("nonzero") >= bound;
        }
        let n = self.ring.nvars();
        for deg in 0..bound {
            for alpha in crate::monomial::indices_of_degree(n, deg) {
                if !field.is_zero(&self.hasse_eval(&alpha, point)) {
                    return false;
                }
            }
        }
        true
    }

    /// The homogeneous part of degree ν_x(f) of f translated to the origin,
    /// expressed in the tangent variables (same names).
    pub fn initial_form(&self, point: &PointSpec) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let nu = self.order_at(point).expect("nonzero");
        let n = self.ring.nvars();
        let mut out = Poly::zero(&self.ring);
        for alpha in crate::monomial::indices_of_degree(n, nu) {
            let c = self.hasse_eval(&alpha, point);
            out.insert_term(Monomial(alpha), c);
        }
        Ok(out)
    }

    /// Exact division: `self / g` when the remainder is zero.
    pub fn div_exact(&self, g: &Poly) -> Result<Poly> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = self.ring.field().clone();
        let (glm, glc) = g.leading().expect("nonzero");
        let glm = glm.clone();
        let glc = glc.clone();
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.ring);
        while let Some((lm, lc)) = rem.leading() {
            let Some(q) = lm.checked_div(&glm) else {
                return Err(Error::InexactDivision);
            };
            let qc = field.div(lc, &glc)?;
            let qterm = Poly::monomial(&self.ring, q, qc);
            rem = rem.sub(&qterm.mul(g));
            quot = quot.add(&qterm);
        }
        Ok(quot)
    }

    /// Maximal k with g^k dividing f exactly, plus the cofactor f / g^k.
    pub fn divide_out(&self, g: &Poly) -> Result<(u32, Poly)> {
        if g.is_zero() || g.is_constant() {
            return Err(Error::ConstantDivisor);
        }
        let mut k = 0u32;
        let mut rest = self.clone();
        if self.is_zero() {
            return Ok((0, rest));
        }
        while let Ok(q) = rest.div_exact(g) {
            rest = q;
            k += 1;
        }
        Ok((k, rest))
    }

    /// Substitutes every variable by a polynomial from `images` (which live
    /// in a common target ring).
    pub fn substitute(&self, target: &Arc<Ring>, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars());
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Applies the affine change `x_i ↦ Σ_j M[i][j]·x_j + shift_i`. The matrix
    /// must be invertible so the change is a coordinate change.
    pub fn linear_change(&self, matrix: &[Vec<Scalar>], shift: &PointSpec) -> Result<Poly> {
        let n = self.ring.nvars();
        let field = self.ring.field().clone();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::SingularMatrix);
        }
        if !crate::matrix::scalar_matrix_invertible(&field, matrix) {
            return Err(Error::SingularMatrix);
        }
        let images: Vec<Poly> = (0..n)
            .map(|i| {
                let mut img = Poly::constant(&self.ring, shift.coord(i).clone());
                for (j, coefficient) in matrix[i].iter().enumerate() {
                    let t = Poly::var(&self.ring, j).scale(coefficient);
                    img = img.add(&t);
                }
                img
            })
            .collect();
        Ok(self.substitute(&self.ring, &images))
    }

    /// Reinterprets the polynomial in `target`, matching variables by name.
    /// Fails if a variable with a nonzero exponent has no image.
    pub fn map_to_ring(&self, target: &Arc<Ring>) -> Result<Poly> {
        let n = self.ring.nvars();
        let mut index_map: Vec<Option<usize>> = Vec::with_capacity(n);
        for v in self.ring.vars() {
            index_map.push(target.vars().iter().position(|w| w == v));
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut expo = alloc::vec![0u32; target.nvars()];
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match index_map[i] {
                    Some(j) => expo[j] = e,
                    None => return Err(Error::UnknownVariable(self.ring.var_name(i).into())),
                }
            }
            out.insert_term(Monomial(expo), c.clone());
        }
        Ok(out)
    }

    /// Coefficients of the polynomial viewed as univariate in `var`, indexed
    /// by the `var`-degree; entries live in the same ring but are `var`-free.
    pub fn coeffs_in_var(&self, var: usize) -> Vec<Poly> {
        let d = self.degree_in(var) as usize;
        let mut out = alloc::vec![Poly::zero(&self.ring); d + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            let mut stripped = m.clone();
            stripped.0[var] = 0;
            out[e].insert_term(stripped, c.clone());
        }
        out
    }

    /// Divides by a polynomial monic in `var` (unit leading coefficient in
    /// `var`), returning (quotient, remainder) with deg_var(rem) < deg_var(g).
    pub fn div_rem_in_var(&self, g: &Poly, var: usize) -> Result<(Poly, Poly)> {
        let dg = g.degree_in(var);
        if dg == 0 {
            return Err(Error::ConstantInVariable(self.ring.var_name(var).into()));
        }
        let gc = g.coeffs_in_var(var);
        let lead = &gc[dg as usize];
        if !lead.is_unit() {
            return Err(Error::Unsupported(
                "division in a variable needs a constant leading coefficient",
            ));
        }
        let field = self.ring.field().clone();
        let lead_inv = field.inv(&lead.leading().expect("unit").1.clone())?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.ring);
        loop {
            let dr = rem.degree_in(var);
            if rem.is_zero() || dr < dg {
                return Ok((quot, rem));
            }
            // Peel the top var-degree slice in one step.
            let rc = rem.coeffs_in_var(var);
            let top = rc[dr as usize].scale(&lead_inv);
            let shift = Monomial::var(self.ring.nvars(), var).pow(dr - dg);
            let qterm = top.mul_monomial(&shift);
            rem = rem.sub(&qterm.mul(g));
            quot = quot.add(&qterm);
        }
    }

    /// Content stripping for display and gcd normalization: divides by the
    /// leading coefficient, making the graded-lex leading term monic.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let c = c.clone();
                let inv = self
                    .ring
                    .field()
                    .inv(&c)
                    .expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }
}

/// Which ring operation `Poly::arith` performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

// Printing is inverse to parsing up to term order: descending graded lex,
// explicit `*` and `^`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = field.is_negative(c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = if neg { field.neg(c) } else { c.clone() };
            let coeff_str = field.format(&abs);
            let mut wrote_factor = false;
            if m.is_one() || coeff_str != "1" {
                write!(f, "{}", coeff_str)?;
                wrote_factor = true;
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_factor {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.ring.var_name(i))?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
                wrote_factor = true;
            }
        }
        Ok(())
    }
}
