//! Exact linear algebra: scalar rank/invertibility and fraction-free
//! determinants and characteristic polynomials over polynomial rings.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::Error;
use crate::field::{FieldSpec, Scalar};
use crate::poly::Poly;
use crate::ring::Ring;
use crate::Result;

/// Rank of a scalar matrix by Gaussian elimination over the field.
pub fn scalar_rank(field: &FieldSpec, rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !field.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv(&m[rank][col]).expect("pivot nonzero");
        for cell in m[rank].iter_mut().skip(col) {
            *cell = field.mul(cell, &inv);
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !field.is_zero(&row[col]) {
                let factor = row[col].clone();
                for (cell, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    let t = field.mul(&factor, p);
                    *cell = field.sub(cell, &t);
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

pub fn scalar_matrix_invertible(field: &FieldSpec, rows: &[Vec<Scalar>]) -> bool {
    let n = rows.len();
    n > 0 && rows.iter().all(|r| r.len() == n) && scalar_rank(field, rows) == n
}

/// Determinant of a square matrix of polynomials by Bareiss fraction-free
/// elimination. Every division performed is exact in the polynomial ring.
pub fn poly_determinant(ring: &Arc<Ring>, rows: &[Vec<Poly>]) -> Result<Poly> {
    let n = rows.len();
    if n == 0 {
        return Ok(Poly::one(ring));
    }
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Unsupported("determinant of a non-square matrix"));
    }
    let mut m: Vec<Vec<Poly>> = rows.to_vec();
    let mut sign_flip = false;
    let mut prev_pivot = Poly::one(ring);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(Poly::zero(ring));
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev_pivot)?;
            }
            m[i][k] = Poly::zero(ring);
        }
        prev_pivot = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign_flip { det.neg() } else { det })
}

/// Picks a variable name not already used by the ring.
fn fresh_var_name(ring: &Ring) -> String {
    let mut name = String::from("T#");
    while ring.vars().iter().any(|v| v == &name) {
        name.push('#');
    }
    name
}

/// Characteristic polynomial of a square polynomial matrix, returned as the
/// coefficient list `c_1..=c_n` of `T^n + c_1 T^{n-1} + … + c_n`. Computed
/// as det(T·I − M) in a temporarily extended ring so the expansion stays
/// fraction-free and exact in every characteristic.
pub fn char_poly_coefficients(ring: &Arc<Ring>, m: &[Vec<Poly>]) -> Result<Vec<Poly>> {
    let n = m.len();
    if n > 16 {
        return Err(Error::CharPolyTooLarge(n));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let ext = ring.with_extra_var(&fresh_var_name(ring))?;
    let tvar = ext.nvars() - 1;
    let t = Poly::var(&ext, tvar);
    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(n);
    for (i, source_row) in m.iter().enumerate() {
        let mut row = Vec::with_capacity(n);
        for (j, entry) in source_row.iter().enumerate() {
            let e = entry.map_to_ring(&ext)?;
            row.push(if i == j { t.sub(&e) } else { e.neg() });
        }
        rows.push(row);
    }
    let det = poly_determinant(&ext, &rows)?;
    let by_t = det.coeffs_in_var(tvar);
    // by_t[k] is the coefficient of T^k; c_j pairs with T^{n-j}.
    let mut out = Vec::with_capacity(n);
    for j in 1..=n {
        let k = n - j;
        let c = by_t
            .get(k)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&ext))
            .map_to_ring(ring)?;
        out.push(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn ring2() -> Arc<Ring> {
        Ring::new(
            FieldSpec::Rationals,
            alloc::vec!["x".into(), "y".into()],
        )
        .unwrap()
    }

    #[test]
    fn determinant_two_by_two() {
        let r = ring2();
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let det = poly_determinant(&r, &[
            alloc::vec![p("x"), p("y")],
            alloc::vec![p("y"), p("x")],
        ])
        .unwrap();
        assert_eq!(det, p("x^2 - y^2"));
    }

    #[test]
    fn char_poly_of_companion_matrix() {
        // Companion matrix of Z^2 + x*Z + y has char poly T^2 + x*T + y.
        let r = ring2();
        let p = |s: &str| parse_poly(&r, s).unwrap();
        let coeffs = char_poly_coefficients(&r, &[
            alloc::vec![p("0"), p("-y")],
            alloc::vec![p("1"), p("-x")],
        ])
        .unwrap();
        assert_eq!(coeffs, alloc::vec![p("x"), p("y")]);
    }

    #[test]
    fn singular_scalar_matrix_detected() {
        let f = FieldSpec::Rationals;
        let two = f.from_i64(2);
        let one = f.one();
        let rows = alloc::vec![
            alloc::vec![one.clone(), two.clone()],
            alloc::vec![two.clone(), f.from_i64(4)],
        ];
        assert!(!scalar_matrix_invertible(&f, &rows));
        assert_eq!(scalar_rank(&f, &rows), 1);
    }
}
