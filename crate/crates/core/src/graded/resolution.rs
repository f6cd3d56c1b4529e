//! Free resolutions: construction by iterated syzygies, pruning of unit
//! entries, Betti tables and Hilbert polynomials.

use std::collections::BTreeMap;
use std::fmt;

use super::free::{GradedFreeModule, GradedMap, Ring};
use super::module::PresentedModule;
use super::syzygy::syzygy_checked;
use crate::algebra::{binomial, poly_binomial};
use crate::error::{Error, Result};

/// F_0 ← F_1 ← … ← F_L with maps[j-1]: F_j → F_{j-1}.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub ring: Ring,
    pub modules: Vec<GradedFreeModule>,
    pub maps: Vec<GradedMap>,
    pub minimal: bool,
    /// degree window used when computing syzygies
    pub hi: i32,
}

impl FreeResolution {
    pub fn from_maps(ring: Ring, f0: GradedFreeModule, maps: Vec<GradedMap>, minimal: bool, hi: i32) -> Self {
        let mut modules = vec![f0];
        for m in &maps {
            modules.push(m.source.clone());
        }
        let mut r = FreeResolution { ring, modules, maps, minimal, hi };
        r.trim();
        r
    }

    fn trim(&mut self) {
        while self.modules.len() > 1 && self.modules.last().unwrap().is_zero() {
            self.modules.pop();
            self.maps.pop();
        }
    }

    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn module(&self, j: usize) -> GradedFreeModule {
        self.modules.get(j).cloned().unwrap_or_default()
    }

    /// d_j : F_j → F_{j-1}, zero outside the stored range.
    pub fn differential(&self, j: usize) -> GradedMap {
        if j >= 1 && j <= self.maps.len() {
            self.maps[j - 1].clone()
        } else {
            let tgt = if j == 0 { GradedFreeModule::default() } else { self.module(j - 1) };
            GradedMap::zero(self.ring, tgt, self.module(j))
        }
    }

    /// Σ_j (−1)^j dim (F_j)_d, the Hilbert function of the resolved module
    /// when the complex is exact.
    pub fn euler_dim(&self, d: i32) -> i64 {
        let n = self.ring.n as i64;
        let mut s = 0i64;
        for (j, f) in self.modules.iter().enumerate() {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            for &b in &f.degrees {
                s += sign * binomial(d as i64 - b as i64 + n, n);
            }
        }
        s
    }

    pub fn betti(&self) -> BettiTable {
        let mut t = BTreeMap::new();
        for (j, f) in self.modules.iter().enumerate() {
            for &b in &f.degrees {
                *t.entry((j, b)).or_insert(0) += 1;
            }
        }
        BettiTable { entries: t }
    }

    pub fn hilbert_polynomial(&self) -> HilbertPolynomial {
        let mut terms = BTreeMap::new();
        for (j, f) in self.modules.iter().enumerate() {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            for &b in &f.degrees {
                *terms.entry(b).or_insert(0) += sign;
            }
        }
        terms.retain(|_, v| *v != 0);
        HilbertPolynomial { n: self.ring.n, terms }
    }

    /// max_j (max generator degree of F_j − j)
    pub fn regularity(&self) -> Option<i32> {
        self.modules
            .iter()
            .enumerate()
            .filter_map(|(j, f)| f.max_degree().map(|b| b - j as i32))
            .max()
    }

    /// Check d_{j} ∘ d_{j+1} = 0 for all j.
    pub fn composites_vanish(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].compose(&w[1]).map(|c| c.is_zero()).unwrap_or(false))
    }

    /// Slice-level exactness at interior positions for degree d.
    pub fn exact_at(&self, d: i32) -> bool {
        for j in 1..self.maps.len() {
            let a = self.maps[j - 1].slice(d);
            let b = self.maps[j].slice(d);
            if a.cols() - a.rank() != b.rank() {
                return false;
            }
        }
        // the last map must be injective
        if let Some(m) = self.maps.last() {
            let s = m.slice(d);
            if s.rank() != s.cols() {
                return false;
            }
        }
        true
    }
}

/// Multiplicities of generator degrees per homological index.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    /// (j, generator degree b) ↦ multiplicity; twist is −b
    pub entries: BTreeMap<(usize, i32), usize>,
}

impl BettiTable {
    pub fn totals(&self) -> Vec<usize> {
        let len = self.entries.keys().map(|k| k.0 + 1).max().unwrap_or(0);
        let mut t = vec![0; len];
        for (&(j, _), &m) in &self.entries {
            t[j] += m;
        }
        t
    }

    /// Sorted generator degrees of F_j.
    pub fn degrees(&self, j: usize) -> Vec<i32> {
        let mut v = Vec::new();
        for (&(jj, b), &m) in &self.entries {
            if jj == j {
                v.extend(std::iter::repeat_n(b, m));
            }
        }
        v
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let totals = self.totals();
        for (j, _) in totals.iter().enumerate() {
            let parts: Vec<String> = self
                .entries
                .iter()
                .filter(|((jj, _), _)| *jj == j)
                .map(|((_, b), m)| format!("S({})^{}", -b, m))
                .collect();
            let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
            writeln!(f, "F{j}: {body}")?;
        }
        Ok(())
    }
}

/// Σ_b c_b · C(d − b + n, n) as a polynomial in d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial {
    pub n: usize,
    pub terms: BTreeMap<i32, i64>,
}

impl HilbertPolynomial {
    pub fn eval(&self, d: i64) -> i64 {
        let n = self.n as i64;
        self.terms.iter().map(|(&b, &c)| c * poly_binomial(d - b as i64 + n, self.n as u32)).sum()
    }

    pub fn is_zero(&self) -> bool {
        (0..=self.n as i64 + 1).all(|d| self.eval(d) == 0)
    }

    /// Leading coefficient times n!, i.e. the rank of the sheafification.
    pub fn sheaf_rank(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Degree of the polynomial, None for zero.
    pub fn degree(&self) -> Option<usize> {
        // finite differences of order k vanish iff degree < k
        let vals: Vec<i64> = (0..=self.n as i64 + 1).map(|d| self.eval(d)).collect();
        let mut diff = vals;
        let mut deg = None;
        for k in 0..=self.n {
            if diff.iter().any(|&v| v != 0) {
                deg = Some(k);
            }
            diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
        }
        deg
    }
}

#[derive(Clone, Debug)]
pub struct ResolutionOptions {
    /// degree bound override; default max presentation degree + n + 3
    pub hi: Option<i32>,
    pub retries: usize,
    pub minimize: bool,
}

impl Default for ResolutionOptions {
    fn default() -> Self {
        ResolutionOptions { hi: None, retries: 3, minimize: true }
    }
}

/// Remove unit entries of d_j by Gaussian elimination on the complex,
/// lowest row first then lowest column.
pub fn prune(maps: &mut Vec<GradedMap>) {
    for j in 0..maps.len() {
        loop {
            let m = &maps[j];
            let mut pivot = None;
            'search: for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let e = m.entry(r, c);
                    if !e.is_zero() && e.degree() == 0 {
                        pivot = Some((r, c));
                        break 'search;
                    }
                }
            }
            let Some((r, c)) = pivot else { break };
            let f = m.ring.field;
            let uinv = f.inv(m.entry(r, c).as_constant().unwrap());
            let rows: Vec<usize> = (0..m.rows()).filter(|&i| i != r).collect();
            let cols: Vec<usize> = (0..m.cols()).filter(|&k| k != c).collect();
            let mut entries = Vec::with_capacity(rows.len() * cols.len());
            for &i in &rows {
                let beta = m.entry(i, c);
                for &k in &cols {
                    let alpha = m.entry(i, k);
                    let gamma = m.entry(r, k);
                    if beta.is_zero() || gamma.is_zero() {
                        entries.push(alpha.clone());
                    } else {
                        entries.push(alpha.sub(&beta.mul(gamma).scale(uinv)));
                    }
                }
            }
            let target = GradedFreeModule::new(rows.iter().map(|&i| m.target.degrees[i]).collect());
            let source = GradedFreeModule::new(cols.iter().map(|&k| m.source.degrees[k]).collect());
            let new = GradedMap::new(m.ring, target, source, entries).expect("pruning keeps degrees");
            maps[j] = new;
            if j + 1 < maps.len() {
                let next = &maps[j + 1];
                let keep: Vec<usize> = (0..next.rows()).filter(|&i| i != c).collect();
                let all: Vec<usize> = (0..next.cols()).collect();
                maps[j + 1] = next.submatrix(&keep, &all);
            }
            if j > 0 {
                let prev = &maps[j - 1];
                let all: Vec<usize> = (0..prev.rows()).collect();
                let keep: Vec<usize> = (0..prev.cols()).filter(|&k| k != r).collect();
                maps[j - 1] = prev.submatrix(&all, &keep);
            }
        }
    }
}

/// Minimal presentation: prune units and drop zero relations.
pub fn minimal_presentation(pres: &GradedMap) -> GradedMap {
    let mut v = vec![pres.clone()];
    prune(&mut v);
    let m = v.pop().unwrap();
    let rows: Vec<usize> = (0..m.rows()).collect();
    let cols: Vec<usize> = (0..m.cols()).filter(|&c| (0..m.rows()).any(|r| !m.entry(r, c).is_zero())).collect();
    m.submatrix(&rows, &cols)
}

/// Minimal graded free resolution of a presented module, certified by the
/// Euler sum against the Hilbert function at hi+1 and hi+2; on mismatch the
/// window grows by 4, up to `retries` times.
pub fn minimal_free_resolution(m: &PresentedModule, opts: &ResolutionOptions) -> Result<FreeResolution> {
    let ring = m.ring();
    let n = ring.n;
    let pres = minimal_presentation(m.presentation());
    if pres.target.is_zero() {
        return Ok(FreeResolution::from_maps(ring, GradedFreeModule::default(), vec![], true, 0));
    }
    let maxdeg = pres.target.degrees.iter().chain(&pres.source.degrees).copied().max().unwrap();
    let mut hi = opts.hi.unwrap_or(maxdeg + n as i32 + 3);
    let mut last_err = String::new();
    for _ in 0..=opts.retries {
        match resolve_with_bound(&pres, hi, opts.minimize) {
            Ok(res) => {
                let mut ok = true;
                for d in [hi + 1, hi + 2] {
                    let want = m.hilbert_function(d) as i64;
                    let got = res.euler_dim(d);
                    if want != got {
                        ok = false;
                        last_err = format!("Euler sum {got} vs Hilbert function {want} at degree {d}");
                        break;
                    }
                }
                if ok {
                    return Ok(res);
                }
            }
            Err(Error::BoundTooSmall(msg)) => last_err = msg,
            Err(e) => return Err(e),
        }
        hi += 4;
    }
    Err(Error::BoundTooSmall(format!("{last_err} (last bound {}; pass a larger window)", hi - 4)))
}

fn resolve_with_bound(pres: &GradedMap, hi: i32, minimize: bool) -> Result<FreeResolution> {
    let ring = pres.ring;
    let n = ring.n;
    let mut maps = vec![pres.clone()];
    if !pres.source.is_zero() {
        loop {
            let s = syzygy_checked(maps.last().unwrap(), hi, 0)?;
            if s.source.is_zero() {
                break;
            }
            maps.push(s);
            if maps.len() > n + 3 {
                return Err(Error::BoundTooSmall("resolution does not terminate inside the window".into()));
            }
        }
    }
    if minimize {
        prune(&mut maps);
    }
    let res = FreeResolution::from_maps(ring, pres.target.clone(), maps, minimize, hi);
    if res.length() > n + 1 {
        return Err(Error::BoundTooSmall(format!(
            "resolution of length {} exceeds n+1 = {}",
            res.length(),
            n + 1
        )));
    }
    Ok(res)
}
