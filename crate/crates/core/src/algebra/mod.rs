//! Field arithmetic, dense linear algebra and homogeneous polynomials.

pub mod field;
pub mod matrix;
pub mod parse;
pub mod poly;

pub use field::{PrimeField, DEFAULT_PRIME};
pub use matrix::{CoordinateSolver, DenseMatrix, RowEchelon};
pub use parse::{parse_poly, PolyParseError};
pub use poly::{basis, basis_len, monomial_basis, mult_slice, var_shift, HomogPoly, Monomial};

/// Combinatorial binomial: C(a, b) = 0 when b < 0 or a < b.
pub fn binomial(a: i64, b: i64) -> i64 {
    if b < 0 || a < b {
        return 0;
    }
    let b = b.min(a - b);
    let mut r: i128 = 1;
    for i in 0..b {
        r = r * (a - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

/// Polynomial binomial x(x-1)...(x-k+1)/k!, valid for any integer x.
pub fn poly_binomial(x: i64, k: u32) -> i64 {
    let mut r: i128 = 1;
    for i in 0..k as i64 {
        r = r * (x - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(-2, 1), 0);
        assert_eq!(poly_binomial(-1, 3), -1);
        assert_eq!(poly_binomial(6, 3), 20);
        assert_eq!(poly_binomial(2, 3), 0);
    }
}
