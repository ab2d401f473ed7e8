//! Ideal membership by Buchberger's algorithm under the fixed graded
//! lexicographic order, with full normal-form reduction.

use alloc::vec::Vec;

use crate::error::Error;
use crate::poly::Poly;
use crate::Result;

/// Fully reduces `f` modulo `basis`: no term of the result is divisible by
/// any basis leading monomial.
pub fn normal_form(f: &Poly, basis: &[Poly]) -> Poly {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let mut rem = Poly::zero(&ring);
    let mut work = f.clone();
    'outer: while let Some((lm, lc)) = work.leading() {
        let lm = lm.clone();
        let lc = lc.clone();
        for b in basis {
            let (blm, blc) = b.leading().expect("basis elements are nonzero");
            if let Some(q) = lm.checked_div(blm) {
                let factor = field.div(&lc, blc).expect("field division");
                work = work.sub(&Poly::monomial(&ring, q, factor).mul(b));
                continue 'outer;
            }
        }
        // Leading term is irreducible: move it to the remainder.
        let t = Poly::monomial(&ring, lm, lc);
        rem = rem.add(&t);
        work = work.sub(&t);
    }
    rem
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let l = fm.lcm(gm);
    let mf = l.checked_div(fm).expect("lcm divisible");
    let mg = l.checked_div(gm).expect("lcm divisible");
    let a = Poly::monomial(&ring, mf, field.inv(fc).expect("nonzero"));
    let b = Poly::monomial(&ring, mg, field.inv(gc).expect("nonzero"));
    a.mul(f).sub(&b.mul(g))
}

/// A Gröbner basis of the ideal generated by `gens` (graded lex).
pub fn groebner_basis(gens: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();
    if basis.is_empty() {
        return basis;
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (fi, fj) = (&basis[i], &basis[j]);
        let (mi, _) = fi.leading().expect("nonzero");
        let (mj, _) = fj.leading().expect("nonzero");
        // Buchberger's first criterion: coprime leading monomials reduce.
        if mi.lcm(mj) == mi.mul(mj) {
            continue;
        }
        let s = s_poly(fi, fj);
        let r = normal_form(&s, &basis);
        if !r.is_zero() {
            let r = r.monic();
            for k in 0..basis.len() {
                pairs.push((k, basis.len()));
            }
            basis.push(r);
        }
    }
    basis
}

/// Decides f ∈ ⟨gens⟩ by Gröbner reduction to normal form.
pub fn ideal_member(f: &Poly, gens: &[Poly]) -> Result<bool> {
    if gens.is_empty() {
        return Err(Error::EmptyGeneratorList);
    }
    if gens.iter().any(|g| !g.same_ring(f)) {
        return Err(Error::ContextMismatch);
    }
    let basis = groebner_basis(gens);
    if basis.is_empty() {
        // The zero ideal.
        return Ok(f.is_zero());
    }
    Ok(normal_form(f, &basis).is_zero())
}
