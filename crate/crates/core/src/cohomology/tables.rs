//! Local and sheaf cohomology tables, a-invariants and regularity.

use serde::Serialize;

use super::ext::{ext_modules, Top};
use crate::error::Result;
use crate::graded::PresentedModule;

/// dims[i][d − lo] = dim H^i_𝔪(M)_d, i = 0..n+1
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCohomologyTable {
    pub n: usize,
    pub lo: i32,
    pub hi: i32,
    pub dims: Vec<Vec<usize>>,
}

impl LocalCohomologyTable {
    pub fn get(&self, i: usize, d: i32) -> usize {
        self.dims[i][(d - self.lo) as usize]
    }
}

/// h[i][d − lo] = h^i(P^n, M~(d)), i = 0..n
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SheafCohomologyTable {
    pub n: usize,
    pub lo: i32,
    pub hi: i32,
    pub h: Vec<Vec<i64>>,
}

impl SheafCohomologyTable {
    pub fn get(&self, i: usize, d: i32) -> i64 {
        self.h[i][(d - self.lo) as usize]
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("i");
        for d in self.degrees() {
            s.push_str(&format!("\t{d}"));
        }
        s.push('\n');
        for (i, row) in self.h.iter().enumerate() {
            s.push_str(&i.to_string());
            for v in row {
                s.push_str(&format!("\t{v}"));
            }
            s.push('\n');
        }
        s
    }
}

pub fn local_cohomology_dims(m: &PresentedModule, lo: i32, hi: i32) -> Result<LocalCohomologyTable> {
    let sys = ext_modules(m)?;
    let n = m.ring().n;
    let dims = (0..=n + 1).map(|i| (lo..=hi).map(|d| sys.local_dim(i, d)).collect()).collect();
    Ok(LocalCohomologyTable { n, lo, hi, dims })
}

pub fn sheaf_cohomology_table(m: &PresentedModule, lo: i32, hi: i32) -> Result<SheafCohomologyTable> {
    let sys = ext_modules(m)?;
    let n = m.ring().n;
    let res = &sys.resolution;
    let mut h = vec![Vec::new(); n + 1];
    for d in lo..=hi {
        let hf = res.euler_dim(d);
        h[0].push(hf - sys.local_dim(0, d) as i64 + sys.local_dim(1, d) as i64);
        for (i, row) in h.iter_mut().enumerate().skip(1) {
            row.push(sys.local_dim(i + 1, d) as i64);
        }
    }
    Ok(SheafCohomologyTable { n, lo, hi, h })
}

/// max{d : h^i(d) ≠ 0}, None for −∞; certified by the Ext support.
pub fn a_invariant(m: &PresentedModule, i: usize) -> Result<Option<i32>> {
    assert!(i >= 1, "a-invariants are defined for i ≥ 1");
    let sys = ext_modules(m)?;
    let n = m.ring().n;
    if i > n {
        return Ok(None);
    }
    // h^i(d) = dim Ext^{n−i}_{−d}
    Ok(sys.ext(n - i).min_nonzero().map(|e| -e))
}

/// Render −∞ as `-inf`.
pub fn fmt_ainv(a: Option<i32>) -> String {
    a.map_or_else(|| "-inf".to_string(), |v| v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    /// max_{i ≥ 1} (a_i + i + 1); None when every a_i is −∞
    pub sheaf: Option<i32>,
    /// max_j (b_j − j) from the minimal resolution
    pub module: Option<i32>,
    pub a_invariants: Vec<Option<i32>>,
}

pub fn regularity(m: &PresentedModule) -> Result<RegularityReport> {
    let n = m.ring().n;
    let mut a = Vec::new();
    let mut best: Option<i32> = None;
    for i in 1..=n {
        let ai = a_invariant(m, i)?;
        if let Some(v) = ai {
            let r = v + i as i32 + 1;
            best = Some(best.map_or(r, |b: i32| b.max(r)));
        }
        a.push(ai);
    }
    let module = m.resolution()?.regularity();
    Ok(RegularityReport { sheaf: best, module, a_invariants: a })
}

/// True iff every intermediate local cohomology H^i_𝔪, 2 ≤ i ≤ n, vanishes
/// and all Ext^{1..n−1} are certified finite.
pub fn intermediate_vanish(m: &PresentedModule) -> Result<bool> {
    let sys = ext_modules(m)?;
    let n = m.ring().n;
    Ok((1..n).all(|j| matches!(sys.ext(j).top(), Top::Empty)))
}

/// Serre duality between the tables of M and its dual module:
/// h^i(M)(d) = h^{n−i}(M^∨)(−d−n−1).
pub fn serre_duality_check(m: &PresentedModule, dual: &PresentedModule, lo: i32, hi: i32) -> Result<bool> {
    let n = m.ring().n as i32;
    let t = sheaf_cohomology_table(m, lo, hi)?;
    let td = sheaf_cohomology_table(dual, -hi - n - 1, -lo - n - 1)?;
    for i in 0..=n as usize {
        for d in lo..=hi {
            if t.get(i, d) != td.get(n as usize - i, -d - n - 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
