//! Sylvester resultants in a single variable, used as the independent
//! oracle for characteristic-polynomial elimination.

use alloc::vec::Vec;

use crate::error::Error;
use crate::matrix::poly_determinant;
use crate::poly::Poly;
use crate::Result;

/// Res_var(f, g) via the Sylvester determinant; the entries are the
/// `var`-coefficients, polynomials in the remaining variables.
pub fn resultant(f: &Poly, g: &Poly, var: usize) -> Result<Poly> {
    if !f.same_ring(g) {
        return Err(Error::ContextMismatch);
    }
    let ring = f.ring().clone();
    let n = f.degree_in(var) as usize;
    if n == 0 || f.is_zero() {
        return Err(Error::ConstantInVariable(ring.var_name(var).into()));
    }
    if g.is_zero() {
        return Ok(Poly::zero(&ring));
    }
    let m = g.degree_in(var) as usize;
    let fc = f.coeffs_in_var(var);
    let gc = g.coeffs_in_var(var);
    let size = n + m;
    let zero = Poly::zero(&ring);
    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(size);
    // m rows of f-coefficients in descending order, then n rows of g's.
    for shift in 0..m {
        let mut row = alloc::vec![zero.clone(); size];
        for (k, c) in fc.iter().enumerate() {
            row[shift + (n - k)] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..n {
        let mut row = alloc::vec![zero.clone(); size];
        for (k, c) in gc.iter().enumerate() {
            row[shift + (m - k)] = c.clone();
        }
        rows.push(row);
    }
    poly_determinant(&ring, &rows)
}
