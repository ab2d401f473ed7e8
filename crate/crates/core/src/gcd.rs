//! Multivariate gcd by primitive pseudo-remainder sequences, plus the
//! squarefree part used for codimension-one detection.

use alloc::vec::Vec;

use crate::error::Error;
use crate::field::FieldSpec;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::Result;

fn occurring_vars(f: &Poly, g: &Poly) -> Vec<usize> {
    let n = f.ring().nvars();
    (0..n)
        .filter(|&i| f.degree_in(i) > 0 || g.degree_in(i) > 0)
        .collect()
}

/// gcd of the univariate coefficients of `f` viewed in `var`.
fn content_in_var(f: &Poly, var: usize) -> Result<Poly> {
    let coeffs = f.coeffs_in_var(var);
    let mut acc = Poly::zero(f.ring());
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        acc = if acc.is_zero() { c } else { gcd_rec(&acc, &c)? };
        if acc.is_unit() {
            break;
        }
    }
    Ok(acc)
}

/// Pseudo-remainder of `f` by `g` in `var`; exact up to a content factor,
/// which the primitive sequence strips anyway.
fn pseudo_rem(f: &Poly, g: &Poly, var: usize) -> Poly {
    let e = g.degree_in(var);
    let lc = g.coeffs_in_var(var)[e as usize].clone();
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(var) >= e {
        let d = r.degree_in(var);
        let top = r.coeffs_in_var(var)[d as usize].clone();
        let shift = Monomial::var(f.ring().nvars(), var).pow(d - e);
        r = r.mul(&lc).sub(&top.mul_monomial(&shift).mul(g));
    }
    r
}

fn gcd_rec(f: &Poly, g: &Poly) -> Result<Poly> {
    if f.is_zero() {
        return Ok(g.clone());
    }
    if g.is_zero() {
        return Ok(f.clone());
    }
    if f.is_unit() || g.is_unit() {
        return Ok(Poly::one(f.ring()));
    }
    let vars = occurring_vars(f, g);
    let &var = vars.last().expect("nonconstant operands use a variable");
    let cf = content_in_var(f, var)?;
    let cg = content_in_var(g, var)?;
    let c = gcd_rec(&cf, &cg)?;
    let mut a = f.div_exact(&cf)?;
    let mut b = g.div_exact(&cg)?;
    if a.degree_in(var) < b.degree_in(var) {
        core::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_zero() {
            return Ok(c.mul(&a));
        }
        if b.degree_in(var) == 0 {
            // Primitive parts with coprime var-degrees: only the content
            // survives.
            return Ok(c);
        }
        let r = pseudo_rem(&a, &b, var);
        let r = if r.is_zero() {
            r
        } else {
            r.div_exact(&content_in_var(&r, var)?)?
        };
        a = b;
        b = r;
    }
}

/// A gcd in the polynomial ring, normalized to a monic leading coefficient
/// under the graded lexicographic order.
pub fn poly_gcd(f: &Poly, g: &Poly) -> Result<Poly> {
    if !f.same_ring(g) {
        return Err(Error::ContextMismatch);
    }
    if f.is_zero() && g.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    Ok(gcd_rec(f, g)?.monic())
}

/// gcd of a whole list; skips zeros.
pub fn poly_gcd_many(polys: &[Poly]) -> Result<Poly> {
    let mut acc: Option<Poly> = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => p.monic(),
            Some(a) => poly_gcd(&a, p)?,
        });
        if acc.as_ref().is_some_and(|a| a.is_unit()) {
            break;
        }
    }
    acc.ok_or(Error::GcdOfZeros)
}

/// Extracts the p-th root of a polynomial all of whose exponents are
/// divisible by p; coefficients come along by Frobenius (c^{1/p} = c on 𝔽_p).
fn pth_root(f: &Poly, p: u64) -> Result<Poly> {
    let mut out = Poly::zero(f.ring());
    let field = f.ring().field().clone();
    let mut acc = Vec::new();
    for (m, c) in f.terms() {
        let mut expo = Vec::with_capacity(m.0.len());
        for &e in &m.0 {
            if !(e as u64).is_multiple_of(p) {
                return Err(Error::Unsupported("not a p-th power"));
            }
            expo.push((e as u64 / p) as u32);
        }
        acc.push((Monomial(expo), field.root_p_pow(c, 1)?));
    }
    for (m, c) in acc {
        out = out.add(&Poly::monomial(f.ring(), m, c));
    }
    Ok(out)
}

/// The squarefree part: the product of the distinct irreducible factors,
/// monic under graded lex. Correct over ℚ and over the (perfect) prime
/// fields, where inseparable factors are p-th powers.
pub fn squarefree_part(f: &Poly) -> Result<Poly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(Poly::one(f.ring()));
    }
    let n = f.ring().nvars();
    let mut derivs = Vec::new();
    for i in 0..n {
        let mut alpha = alloc::vec![0u32; n];
        alpha[i] = 1;
        let d = f.hasse_derivative(&alpha);
        if !d.is_zero() {
            derivs.push(d);
        }
    }
    if derivs.is_empty() {
        let p = match f.ring().field() {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => {
                unreachable!("a nonconstant rational polynomial has a nonzero derivative")
            }
        };
        return squarefree_part(&pth_root(f, p)?);
    }
    derivs.push(f.clone());
    let d = poly_gcd_many(&derivs)?;
    if d.is_unit() {
        return Ok(f.monic());
    }
    let a = squarefree_part(&f.div_exact(&d)?)?;
    let b = squarefree_part(&d)?;
    let overlap = poly_gcd(&a, &b)?;
    Ok(a.mul(&b).div_exact(&overlap)?.monic())
}
