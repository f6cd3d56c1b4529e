//! Closed-form cohomology of twisted differential forms on P^n.

use crate::algebra::binomial;

/// h^q(P^n, Ω^p(ℓ)) for q = 0..n.
pub fn bott_oracle(n: usize, p: usize, l: i64) -> Vec<i64> {
    assert!(p <= n, "Ω^p needs p ≤ n");
    let (n_, p_) = (n as i64, p as i64);
    let mut h = vec![0i64; n + 1];
    if l > p_ {
        h[0] = binomial(l + n_ - p_, l) * binomial(l - 1, p_);
    }
    if l == 0 {
        h[p] = 1;
    }
    if l < p_ - n_ {
        h[n] = binomial(-l + p_, -l) * binomial(-l - 1, n_ - p_);
    }
    h
}

/// h^q(P^n, O(ℓ)).
pub fn line_bundle_cohomology(n: usize, l: i64) -> Vec<i64> {
    bott_oracle(n, 0, l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchors() {
        assert_eq!(bott_oracle(3, 1, 0), vec![0, 1, 0, 0]);
        for d in 0..6 {
            assert_eq!(bott_oracle(3, 0, d)[0], binomial(d + 3, 3));
        }
        assert_eq!(bott_oracle(3, 2, 3)[0], 4);
        assert_eq!(bott_oracle(3, 3, 0), vec![0, 0, 0, 1]);
        assert_eq!(bott_oracle(3, 0, -4), vec![0, 0, 0, 1]);
    }

    #[test]
    fn serre_duality_of_the_formula() {
        // h^q(Ω^p(ℓ)) = h^{n−q}(Ω^{n−p}(−ℓ))
        for n in 1..5usize {
            for p in 0..=n {
                for l in -8..=8 {
                    let a = bott_oracle(n, p, l);
                    let b = bott_oracle(n, n - p, -l);
                    for q in 0..=n {
                        assert_eq!(a[q], b[n - q]);
                    }
                }
            }
        }
    }
}
