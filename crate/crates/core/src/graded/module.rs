//! Presented modules M = coker(φ: F_1 → F_0) and the standard constructions
//! on them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::free::{GradedFreeModule, GradedMap, Ring};
use super::resolution::{minimal_free_resolution, FreeResolution, ResolutionOptions};
use super::syzygy::syzygy_checked;
use crate::algebra::{DenseMatrix, HomogPoly, RowEchelon};
use crate::cohomology::ExtSystem;
use crate::error::{Error, Result};

#[derive(Default, Debug)]
struct Cache {
    hilbert: Mutex<HashMap<i32, usize>>,
    resolution: OnceLock<Arc<FreeResolution>>,
    ext: OnceLock<Arc<ExtSystem>>,
}

/// Cokernel of a graded map. Lazily caches Hilbert values, the minimal
/// resolution and the Ext data; clones share the caches.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    pres: GradedMap,
    cache: Arc<Cache>,
}

impl PresentedModule {
    pub fn new(pres: GradedMap) -> Self {
        PresentedModule { pres, cache: Arc::default() }
    }

    /// Free module ⊕ S(−a_i) given by generator degrees.
    pub fn free(ring: Ring, degrees: Vec<i32>) -> Self {
        Self::new(GradedMap::zero(ring, GradedFreeModule::new(degrees), GradedFreeModule::default()))
    }

    /// ⊕ S(ℓ_i) from twists.
    pub fn line_sum(ring: Ring, twists: &[i32]) -> Self {
        Self::free(ring, twists.iter().map(|l| -l).collect())
    }

    pub fn presentation(&self) -> &GradedMap {
        &self.pres
    }

    pub fn ring(&self) -> Ring {
        self.pres.ring
    }

    pub fn generators(&self) -> &GradedFreeModule {
        &self.pres.target
    }

    pub fn relations(&self) -> &GradedFreeModule {
        &self.pres.source
    }

    /// dim M_d
    pub fn hilbert_function(&self, d: i32) -> usize {
        if let Some(&v) = self.cache.hilbert.lock().unwrap().get(&d) {
            return v;
        }
        let ring = self.ring();
        let dim = self.pres.target.dim(&ring, d);
        let v = if dim == 0 { 0 } else { dim - self.pres.slice(d).rank() };
        self.cache.hilbert.lock().unwrap().insert(d, v);
        v
    }

    /// The minimal free resolution with default options (cached).
    pub fn resolution(&self) -> Result<Arc<FreeResolution>> {
        if let Some(r) = self.cache.resolution.get() {
            return Ok(r.clone());
        }
        let r = Arc::new(minimal_free_resolution(self, &ResolutionOptions::default())?);
        Ok(self.cache.resolution.get_or_init(|| r).clone())
    }

    /// Resolution with explicit options; fills the cache when minimal.
    pub fn resolution_with(&self, opts: &ResolutionOptions) -> Result<Arc<FreeResolution>> {
        let r = Arc::new(minimal_free_resolution(self, opts)?);
        if opts.minimize {
            let _ = self.cache.resolution.set(r.clone());
        }
        Ok(r)
    }

    pub(crate) fn ext_cache(&self) -> &OnceLock<Arc<ExtSystem>> {
        &self.cache.ext
    }

    /// M(ℓ)
    pub fn twist(&self, l: i32) -> Self {
        Self::new(self.pres.twist(l))
    }

    pub fn direct_sum(ms: &[PresentedModule]) -> Result<Self> {
        let Some(first) = ms.first() else {
            return Err(Error::Invalid("empty direct sum".into()));
        };
        let ring = first.ring();
        let mut acc = first.pres.clone();
        for m in &ms[1..] {
            if m.ring() != ring {
                return Err(Error::DimensionMismatch("direct sum over different rings".into()));
            }
            acc = acc.block_sum(&m.pres);
        }
        Ok(Self::new(acc))
    }

    /// M / (f_1, …, f_r)M for homogeneous forms.
    pub fn quotient_by(&self, fs: &[HomogPoly]) -> Result<Self> {
        let ring = self.ring();
        let g = &self.pres.target;
        let mut extra_deg = Vec::new();
        let mut cols: Vec<Vec<HomogPoly>> = Vec::new();
        for f in fs {
            for i in 0..g.rank() {
                let mut col = vec![ring.zero(0); g.rank()];
                col[i] = f.clone();
                cols.push(col);
                extra_deg.push(g.degrees[i] + f.degree() as i32);
            }
        }
        let r = g.rank();
        let c = cols.len();
        let mut entries = vec![ring.zero(0); r * c];
        for (j, col) in cols.into_iter().enumerate() {
            for (i, p) in col.into_iter().enumerate() {
                entries[i * c + j] = p;
            }
        }
        let extra = GradedMap::new(ring, g.clone(), GradedFreeModule::new(extra_deg), entries)?;
        Ok(Self::new(self.pres.hstack(&extra)?))
    }

    /// M / (y_1, …, y_j)M for linear forms, still over S.
    pub fn quotient_by_linear(&self, ys: &[HomogPoly]) -> Result<Self> {
        if ys.iter().any(|y| !y.is_zero() && y.degree() != 1) {
            return Err(Error::Invalid("quotient_by_linear needs linear forms".into()));
        }
        self.quotient_by(ys)
    }

    /// Substitute x_k ↦ images[k] (linear forms of `ring`) in every entry.
    pub fn substitute(&self, ring: Ring, images: &[HomogPoly]) -> Self {
        Self::new(self.pres.map_entries(ring, |e| e.substitute(images)))
    }

    /// The module after the coordinate change x ↦ P x.
    pub fn change_coordinates(&self, p: &DenseMatrix) -> Self {
        let ring = self.ring();
        let images: Vec<HomogPoly> = (0..ring.nvars())
            .map(|k| ring.linear(&(0..ring.nvars()).map(|r| p.get(k, r)).collect::<Vec<_>>()))
            .collect();
        self.substitute(ring, &images)
    }

    /// M/(T)M viewed over the polynomial ring S/(T), for independent
    /// linear forms T; returns the module and the induced variable map.
    pub fn reduce_by_linear(&self, ys: &[Vec<u32>]) -> Result<(Self, RingReduction)> {
        let red = RingReduction::new(self.ring(), ys)?;
        let m = self.substitute(red.ring, &red.images);
        Ok((m, red))
    }

    /// Quotient-space coordinates of M_d.
    pub fn slice(&self, d: i32) -> ModuleSlice {
        ModuleSlice::new(self, d)
    }

    /// Hom_S(M, S), as the kernel of the transposed presentation.
    pub fn hom_dual(&self) -> Result<Self> {
        let ring = self.ring();
        let res = self.resolution()?;
        let d1 = res.differential(1);
        let t = d1.transpose_hom();
        // Hom(M,S) = ker(F_0^∨ → F_1^∨)
        let src_max = t.source.max_degree().unwrap_or(0);
        let bound = src_max.max(t.target.max_degree().unwrap_or(0)) + ring.n as i32 + 3;
        let k = syzygy_checked(&t, bound, 2)?;
        if k.source.is_zero() {
            return Ok(Self::free(ring, vec![]));
        }
        let rel_bound = k.source.max_degree().unwrap() + ring.n as i32 + 3;
        let rel = syzygy_checked(&k, rel_bound, 2)?;
        let m = Self::new(rel);
        Ok(Self::new(super::resolution::minimal_presentation(m.presentation())))
    }
}

/// Variable substitution realizing S → S/(T) ≅ k[w_0..w_{n−j}].
#[derive(Clone, Debug)]
pub struct RingReduction {
    pub ring: Ring,
    /// image of x_k as a linear form in the new variables
    pub images: Vec<HomogPoly>,
}

impl RingReduction {
    pub fn new(ring: Ring, ys: &[Vec<u32>]) -> Result<Self> {
        let f = ring.field;
        let nv = ring.nvars();
        let j = ys.len();
        if j >= nv {
            return Err(Error::NotSop(format!("{j} forms in {nv} variables")));
        }
        let mut ech = RowEchelon::new(f, nv);
        let mut rows = Vec::new();
        for y in ys {
            if ech.insert(y).is_none() {
                return Err(Error::NotSop("linear forms are dependent".into()));
            }
            rows.push(y.clone());
        }
        for k in 0..nv {
            let mut e = vec![0; nv];
            e[k] = 1;
            if ech.insert(&e).is_some() {
                rows.push(e);
            }
        }
        let p = DenseMatrix::from_rows(f, nv, nv, rows.concat());
        // x = P^{-1} z; columns r ≥ j survive
        let mut pinv_cols = Vec::new();
        for r in 0..nv {
            let mut e = vec![0; nv];
            e[r] = 1;
            pinv_cols.push(p.solve(&e).expect("completed basis is invertible"));
        }
        let new_ring = Ring::new(f, ring.n - j);
        let images = (0..nv)
            .map(|k| {
                let coeffs: Vec<u32> = (j..nv).map(|r| pinv_cols[r][k]).collect();
                HomogPoly::linear(f, &coeffs)
            })
            .collect();
        Ok(RingReduction { ring: new_ring, images })
    }

    /// Image of a form of the old ring.
    pub fn map(&self, f: &HomogPoly) -> HomogPoly {
        f.substitute(&self.images)
    }

    pub fn map_linear(&self, y: &[u32]) -> Vec<u32> {
        let nv = self.ring.nvars();
        let f = self.ring.field;
        let mut out = vec![0u32; nv];
        for (k, &c) in y.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(self.images[k].linear_coeffs().iter()) {
                *o = f.add(*o, f.mul(c, v));
            }
        }
        out
    }
}

/// M_d = (F_0)_d / im φ_d with coordinates on the non-pivot positions.
#[derive(Clone, Debug)]
pub struct ModuleSlice {
    pub degree: i32,
    image: RowEchelon,
    free: Vec<usize>,
}

impl ModuleSlice {
    fn new(m: &PresentedModule, d: i32) -> Self {
        let ring = m.ring();
        let dim = m.pres.target.dim(&ring, d);
        let mut image = RowEchelon::new(ring.field, dim);
        if dim > 0 {
            let s = m.pres.slice(d);
            for c in s.columns() {
                if image.dim() == dim {
                    break;
                }
                image.insert(&c);
            }
        }
        let mut is_piv = vec![false; dim];
        for &p in image.pivots() {
            is_piv[p] = true;
        }
        let free = (0..dim).filter(|&k| !is_piv[k]).collect();
        ModuleSlice { degree: d, image, free }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Coordinates of the class of v ∈ (F_0)_d.
    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        let mut w = v.to_vec();
        self.image.reduce(&mut w);
        self.free.iter().map(|&k| w[k]).collect()
    }

    /// A representative in (F_0)_d of the given coordinates.
    pub fn lift(&self, coords: &[u32]) -> Vec<u32> {
        let mut v = vec![0; self.image.ambient()];
        for (&k, &c) in self.free.iter().zip(coords) {
            v[k] = c;
        }
        v
    }
}

/// Matrix of multiplication by f : M_d → M_{d + deg f}.
pub fn module_mult_matrix(m: &PresentedModule, f: &HomogPoly, src: &ModuleSlice, dst: &ModuleSlice) -> DenseMatrix {
    let ring = m.ring();
    let g = m.generators();
    let cols: Vec<Vec<u32>> = (0..src.dim())
        .map(|i| {
            let mut e = vec![0; src.dim()];
            e[i] = 1;
            let v = src.lift(&e);
            dst.project(&g.mul_vector(&ring, src.degree, f, &v))
        })
        .collect();
    DenseMatrix::from_columns(ring.field, dst.dim(), &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{binomial, PrimeField};

    fn ring(n: usize) -> Ring {
        Ring::new(PrimeField::default(), n)
    }

    #[test]
    fn hilbert_of_free_modules() {
        let r = ring(3);
        let s = PresentedModule::free(r, vec![0]);
        assert_eq!(s.hilbert_function(2), 10);
        assert_eq!(s.twist(-1).hilbert_function(0), 0);
        assert_eq!(s.twist(-1).hilbert_function(1), 1);
    }

    #[test]
    fn quotient_by_a_variable() {
        let r = ring(3);
        let s = PresentedModule::free(r, vec![0]);
        let q = s.quotient_by_linear(&[r.var(0)]).unwrap();
        for d in 0..5 {
            assert_eq!(q.hilbert_function(d) as i64, binomial(d as i64 + 2, 2));
        }
    }

    #[test]
    fn direct_sum_is_additive() {
        let r = ring(2);
        let a = PresentedModule::free(r, vec![0]).quotient_by_linear(&[r.var(1)]).unwrap();
        let b = PresentedModule::free(r, vec![1]);
        let s = PresentedModule::direct_sum(&[a.clone(), b.clone()]).unwrap();
        for d in 0..5 {
            assert_eq!(s.hilbert_function(d), a.hilbert_function(d) + b.hilbert_function(d));
        }
    }

    #[test]
    fn ring_reduction_matches_quotient() {
        let r = ring(3);
        let f = r.field;
        let m = PresentedModule::free(r, vec![0, 1]);
        let y = vec![1, 2, 0, f.from_i64(-1)];
        let q = m.quotient_by_linear(&[r.linear(&y)]).unwrap();
        let (red, _) = m.reduce_by_linear(&[y]).unwrap();
        assert_eq!(red.ring().n, 2);
        for d in 0..5 {
            assert_eq!(q.hilbert_function(d), red.hilbert_function(d));
        }
    }
}
