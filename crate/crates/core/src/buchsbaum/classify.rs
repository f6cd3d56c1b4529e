//! The classification pipeline for quasi-Buchsbaum bundles on P³ with
//! one-dimensional H¹_* and H²_*.

use serde::Serialize;

use super::predicates::{check_saturated, is_acm, is_quasi_buchsbaum};
use super::skew::{pfaffian4, rank2_witnesses, skew_form, Rank2Witnesses};
use crate::bundles::{null_correlation_module, standard_symplectic};
use crate::cohomology::{ext_modules, sheaf_cohomology_table};
use crate::error::Result;
use crate::graded::PresentedModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    SplitACM,
    Buchsbaum,
    PseudoBuchsbaum,
    NonstandardBuchsbaum,
    NotQuasiBuchsbaum,
    OutOfScope,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationResult {
    pub verdict: Verdict,
    pub rank: Option<usize>,
    pub pfaffian: Option<i64>,
    pub matrix: Option<Vec<Vec<i64>>>,
    pub witnesses: Option<Rank2Witnesses>,
    /// ℓ with M(ℓ) normalized
    pub twist_used: i32,
    /// twists of the line bundles when split
    pub split_twists: Option<Vec<i32>>,
    /// fingerprint agreement with the null-correlation bundle (rank 4 only)
    pub null_correlation_fingerprint: Option<bool>,
    pub reason: Option<String>,
    pub seed: u64,
}

impl ClassificationResult {
    fn bare(verdict: Verdict, seed: u64) -> Self {
        ClassificationResult {
            verdict,
            rank: None,
            pfaffian: None,
            matrix: None,
            witnesses: None,
            twist_used: 0,
            split_twists: None,
            null_correlation_fingerprint: None,
            reason: None,
            seed,
        }
    }
}

/// Hilbert function, Betti table, sheaf table and the quasi-Buchsbaum flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub window: (i32, i32),
    pub hilbert: Vec<usize>,
    pub betti: Vec<(usize, i32, usize)>,
    pub table: Vec<Vec<i64>>,
    pub quasi_buchsbaum: Option<bool>,
}

pub fn fingerprint(m: &PresentedModule, lo: i32, hi: i32) -> Result<Fingerprint> {
    let res = m.resolution()?;
    let betti = res.betti().entries.iter().map(|(&(j, b), &c)| (j, b, c)).collect();
    let table = sheaf_cohomology_table(m, lo, hi)?.h;
    let qb = is_quasi_buchsbaum(m).ok();
    Ok(Fingerprint {
        window: (lo, hi),
        hilbert: (lo..=hi).map(|d| m.hilbert_function(d)).collect(),
        betti,
        table,
        quasi_buchsbaum: qb,
    })
}

pub fn classify(m: &PresentedModule, seed: u64) -> Result<ClassificationResult> {
    check_saturated(m)?;
    let ring = m.ring();
    if is_acm(m)? {
        let mut r = ClassificationResult::bare(Verdict::SplitACM, seed);
        let mut t: Vec<i32> = m.resolution()?.module(0).degrees.iter().map(|d| -d).collect();
        t.sort();
        r.split_twists = Some(t);
        return Ok(r);
    }
    if !is_quasi_buchsbaum(m)? {
        return Ok(ClassificationResult::bare(Verdict::NotQuasiBuchsbaum, seed));
    }
    let out_of_scope = |why: &str| {
        let mut r = ClassificationResult::bare(Verdict::OutOfScope, seed);
        r.reason = Some(why.to_string());
        Ok(r)
    };
    if ring.n != 3 {
        return out_of_scope("only bundles on P^3 are classified");
    }
    let sys = ext_modules(m)?;
    let (e1, e2) = (sys.ext(1), sys.ext(2));
    if e1.total_dim() != Some(1) || e2.total_dim() != Some(1) {
        return out_of_scope("intermediate cohomology is not of type (1,1)");
    }
    let d1 = e1.support()[0];
    let d2 = e2.support()[0];
    if d1 - d2 != 2 {
        return out_of_scope("H^1 and H^2 do not sit two degrees apart");
    }
    let l = 1 - d2;
    let normal = m.twist(l);
    let a = skew_form(&normal)?;
    let rank = a.rank();
    let pf = pfaffian4(&a);
    let mut r = ClassificationResult::bare(Verdict::Buchsbaum, seed);
    r.twist_used = l;
    r.rank = Some(rank);
    r.pfaffian = Some(ring.field.to_symmetric(pf));
    r.matrix = Some(a.to_i64());
    match rank {
        0 => {}
        2 => {
            r.verdict = Verdict::PseudoBuchsbaum;
            r.witnesses = Some(rank2_witnesses(&a)?);
        }
        _ => {
            r.verdict = Verdict::NonstandardBuchsbaum;
            let nc = null_correlation_module(ring, &standard_symplectic(ring.field, 4))?;
            r.null_correlation_fingerprint = Some(fingerprint(&nc, -8, 8)? == fingerprint(&normal, -8, 8)?);
        }
    }
    Ok(r)
}
