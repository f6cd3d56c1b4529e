//! Line bundles on P^m × P^n: Künneth cohomology, bigraded 0-regularity and
//! the splitting-type vanishings for sums of line bundles on P^n × P^n.

use serde::Serialize;

use crate::cohomology::line_bundle_cohomology;
use crate::error::{Error, Result};

/// h^i(P^m × P^n, O(a, b)) for i = 0..m+n.
pub fn kunneth_line_cohomology(m: usize, n: usize, a: i64, b: i64) -> Vec<i64> {
    let ha = line_bundle_cohomology(m, a);
    let hb = line_bundle_cohomology(n, b);
    let mut h = vec![0i64; m + n + 1];
    for (p, x) in ha.iter().enumerate() {
        for (q, y) in hb.iter().enumerate() {
            h[p + q] += x * y;
        }
    }
    h
}

fn sum_cohomology(m: usize, n: usize, twists: &[(i64, i64)], j1: i64, j2: i64) -> Vec<i64> {
    let mut h = vec![0i64; m + n + 1];
    for &(u, v) in twists {
        for (i, x) in kunneth_line_cohomology(m, n, u + j1, v + j2).into_iter().enumerate() {
            h[i] += x;
        }
    }
    h
}

/// H^i(F(j1, j2)) = 0 for i ≥ 1, j1 + j2 = −i, −m ≤ j1 ≤ 0, −n ≤ j2 ≤ 0.
pub fn is_zero_regular_linesum(m: usize, n: usize, twists: &[(i64, i64)]) -> bool {
    let (mi, ni) = (m as i64, n as i64);
    for i in 1..=(m + n) as i64 {
        for j1 in -mi..=0 {
            let j2 = -i - j1;
            if !(-ni..=0).contains(&j2) {
                continue;
            }
            if sum_cohomology(m, n, twists, j1, j2)[i as usize] != 0 {
                return false;
            }
        }
    }
    true
}

/// For E = ⊕ O(u, v) on P^n × P^n with |u − v| ≤ n, check on the window
/// |ℓ_i| ≤ bound, |ℓ1 − ℓ2| ≤ n:
/// H^i(E(ℓ1, ℓ2)) = 0 for 0 < i < 2n, i ≠ n, and H^n(E(ℓ, ℓ)) = 0.
pub fn check_splitting_conditions(n: usize, twists: &[(i64, i64)], bound: i64) -> Result<bool> {
    let ni = n as i64;
    if let Some(&(u, v)) = twists.iter().find(|(u, v)| (u - v).abs() > ni) {
        return Err(Error::BandViolation(format!("O({u},{v}) has |u - v| > {n}")));
    }
    for l1 in -bound..=bound {
        for l2 in -bound..=bound {
            if (l1 - l2).abs() > ni {
                continue;
            }
            let h = sum_cohomology(n, n, twists, l1, l2);
            if (1..2 * n).any(|i| i != n && h[i] != 0) {
                return Ok(false);
            }
            if l1 == l2 && h[n] != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// h[i][(a, b)] over a rectangular window of bidegrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigradedTable {
    pub m: usize,
    pub n: usize,
    pub a: (i64, i64),
    pub b: (i64, i64),
    /// rows in (a, b) lexicographic order, each of length m+n+1
    pub h: Vec<((i64, i64), Vec<i64>)>,
}

impl BigradedTable {
    pub fn for_linesum(m: usize, n: usize, twists: &[(i64, i64)], a: (i64, i64), b: (i64, i64)) -> Self {
        let mut h = Vec::new();
        for x in a.0..=a.1 {
            for y in b.0..=b.1 {
                h.push(((x, y), sum_cohomology(m, n, twists, x, y)));
            }
        }
        BigradedTable { m, n, a, b, h }
    }

    pub fn get(&self, i: usize, a: i64, b: i64) -> i64 {
        let cols = self.b.1 - self.b.0 + 1;
        let k = (a - self.a.0) * cols + (b - self.b.0);
        self.h[k as usize].1[i]
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("a\tb");
        for i in 0..=self.m + self.n {
            s.push_str(&format!("\th{i}"));
        }
        s.push('\n');
        for ((a, b), row) in &self.h {
            s.push_str(&format!("{a}\t{b}"));
            for v in row {
                s.push_str(&format!("\t{v}"));
            }
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kunneth_values() {
        assert_eq!(kunneth_line_cohomology(1, 1, 1, 0), vec![2, 0, 0]);
        assert_eq!(kunneth_line_cohomology(1, 1, -2, -2), vec![0, 0, 1]);
        for (m, n) in [(1, 1), (2, 1), (2, 2)] {
            assert!(kunneth_line_cohomology(m, n, -(m as i64) - 1, 0)[m] >= 1);
        }
    }

    #[test]
    fn zero_regularity() {
        assert!(is_zero_regular_linesum(1, 1, &[(0, 0)]));
        assert!(is_zero_regular_linesum(1, 1, &[(1, 0)]));
        assert!(!is_zero_regular_linesum(1, 1, &[(-2, 0)]));
        // h¹(O(−2, 0)) = 1 sits in the required set at (j1, j2) = (−1, 0)
        assert!(!is_zero_regular_linesum(1, 1, &[(-1, 0)]));
    }

    #[test]
    fn twisting_up_preserves_regularity() {
        for m in 1..=2 {
            for n in 1..=2 {
                for u in -3..=3 {
                    for v in -3..=3 {
                        if is_zero_regular_linesum(m, n, &[(u, v)]) {
                            assert!(is_zero_regular_linesum(m, n, &[(u + 1, v)]));
                            assert!(is_zero_regular_linesum(m, n, &[(u, v + 1)]));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn splitting_band() {
        assert!(check_splitting_conditions(2, &[(0, 0), (2, 0)], 6).unwrap());
        assert!(check_splitting_conditions(2, &[(0, 0)], 6).unwrap());
        assert!(matches!(check_splitting_conditions(2, &[(3, 0)], 6), Err(Error::BandViolation(_))));
    }

    #[test]
    fn bigraded_serre_duality() {
        for (m, n) in [(1, 1), (2, 1), (2, 3)] {
            for a in -6..=6 {
                for b in -6..=6 {
                    let h = kunneth_line_cohomology(m, n, a, b);
                    let d = kunneth_line_cohomology(m, n, -a - m as i64 - 1, -b - n as i64 - 1);
                    for i in 0..=m + n {
                        assert_eq!(h[i], d[m + n - i]);
                    }
                }
            }
        }
    }

    #[test]
    fn table_lookup() {
        let t = BigradedTable::for_linesum(1, 1, &[(0, 0)], (-2, 1), (-2, 1));
        assert_eq!(t.get(2, -2, -2), 1);
        assert_eq!(t.get(0, 1, 1), 4);
        assert!(t.to_tsv().starts_with("a\tb\th0\th1\th2\n"));
    }
}
