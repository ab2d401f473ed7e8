//! Exponent multi-indices under the graded lexicographic order.

use alloc::vec::Vec;
use core::cmp::Ordering;

/// An exponent vector; the length always equals the ambient dimension.
///
/// `Ord` is graded lexicographic: higher total degree first, ties broken
/// lexicographically with earlier variables weighing more. This single fixed
/// order drives gcd normalization, leading terms and Buchberger reduction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(alloc::vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Monomial {
        let mut e = alloc::vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, idx: usize) -> u32 {
        self.0[idx]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise division; `None` when not divisible.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * e).collect())
    }
}

/// All exponent vectors of length `n` with total degree exactly `d`.
pub fn indices_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = alloc::vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(cur);
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// All exponent vectors of length `n` with total degree at most `bound`.
pub fn indices_up_to(n: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for d in 0..=bound {
        out.extend(indices_of_degree(n, d));
    }
    out
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        // x > y in degree 1; any degree-2 monomial beats any degree-1 one.
        let x = Monomial::var(2, 0);
        let y = Monomial::var(2, 1);
        assert!(x > y);
        assert!(y.mul(&y) > x);
        assert!(x.mul(&y) > x.mul(&x).checked_div(&x).unwrap());
    }

    #[test]
    fn division() {
        let xy = Monomial(alloc::vec![1, 1]);
        let x = Monomial::var(2, 0);
        assert_eq!(xy.checked_div(&x), Some(Monomial(alloc::vec![0, 1])));
        assert_eq!(x.checked_div(&xy), None);
    }
}
