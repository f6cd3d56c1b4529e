//! Ext^j_S(M, S(−n−1)) as the cohomology of Hom(F_•, S(−n−1)), computed one
//! degree slice at a time.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{CoordinateSolver, DenseMatrix, HomogPoly, RowEchelon};
use crate::error::{Error, Result};
use crate::graded::{syzygy_checked, FreeResolution, GradedFreeModule, GradedMap, PresentedModule, Ring};

/// One degree slice of a cochain cohomology ker(out)/im(in).
#[derive(Debug)]
pub struct ExtSlice {
    pub degree: i32,
    /// representatives of a basis, reduced modulo the image
    pub reps: Vec<Vec<u32>>,
    solver: Option<CoordinateSolver>,
    image_dim: usize,
    outgoing: DenseMatrix,
}

impl ExtSlice {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn is_cocycle(&self, v: &[u32]) -> bool {
        self.outgoing.mul_vec(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of the class of a cocycle; None if v is not a cocycle.
    pub fn class_coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.is_cocycle(v) {
            return None;
        }
        match &self.solver {
            None => Some(vec![]),
            Some(s) => s.coords(v).map(|c| c[self.image_dim..].to_vec()),
        }
    }
}

/// Upper end of the support: everything above `Finite(t)` vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Top {
    Empty,
    Finite(i32),
    Infinite,
}

/// H at the middle of  A --incoming--> B --outgoing--> C  with free modules.
#[derive(Debug)]
pub struct ExtModule {
    pub index: usize,
    pub ring: Ring,
    pub incoming: GradedMap,
    pub outgoing: GradedMap,
    slices: Mutex<BTreeMap<i32, Arc<ExtSlice>>>,
    dims: Mutex<BTreeMap<i32, usize>>,
    top: OnceLock<Top>,
    finite_hint: Option<bool>,
}

impl ExtModule {
    pub fn new(index: usize, incoming: GradedMap, outgoing: GradedMap, finite_hint: Option<bool>) -> Self {
        assert_eq!(incoming.target, outgoing.source);
        ExtModule {
            index,
            ring: incoming.ring,
            incoming,
            outgoing,
            slices: Mutex::default(),
            dims: Mutex::default(),
            top: OnceLock::new(),
            finite_hint,
        }
    }

    /// The free module the cocycles live in.
    pub fn space(&self) -> &GradedFreeModule {
        &self.outgoing.source
    }

    /// Ext vanishes below this degree.
    pub fn lo(&self) -> Option<i32> {
        self.space().min_degree()
    }

    pub fn dim(&self, e: i32) -> usize {
        if let Some(&v) = self.dims.lock().unwrap().get(&e) {
            return v;
        }
        let ring = self.ring;
        let v = if self.space().dim(&ring, e) == 0 {
            0
        } else {
            let out = self.outgoing.slice(e);
            let ker = out.cols() - out.rank();
            if ker == 0 {
                0
            } else {
                ker - self.incoming.slice(e).rank()
            }
        };
        self.dims.lock().unwrap().insert(e, v);
        v
    }

    pub fn slice(&self, e: i32) -> Arc<ExtSlice> {
        if let Some(s) = self.slices.lock().unwrap().get(&e) {
            return s.clone();
        }
        let ring = self.ring;
        let len = self.space().dim(&ring, e);
        let outgoing = self.outgoing.slice(e);
        let mut ech = RowEchelon::new(ring.field, len);
        if len > 0 {
            for c in self.incoming.slice(e).columns() {
                ech.insert(&c);
            }
        }
        let image: Vec<Vec<u32>> = ech.basis().to_vec();
        let image_dim = image.len();
        let mut reps = Vec::new();
        if len > 0 {
            for z in outgoing.kernel_vectors() {
                if let Some(r) = ech.insert(&z) {
                    reps.push(r);
                }
            }
        }
        let solver = if len > 0 {
            let mut cols = image;
            cols.extend(reps.iter().cloned());
            Some(CoordinateSolver::new(ring.field, len, &cols))
        } else {
            None
        };
        let s = Arc::new(ExtSlice { degree: e, reps, solver, image_dim, outgoing });
        self.dims.lock().unwrap().insert(e, s.dim());
        self.slices.lock().unwrap().insert(e, s.clone());
        s
    }

    /// Certified top of the support. Ext is a quotient of ker(outgoing),
    /// which is generated in degrees ≤ G; a zero slice at some e ≥ G
    /// forces zeros above e.
    pub fn top(&self) -> Top {
        *self.top.get_or_init(|| self.compute_top())
    }

    fn compute_top(&self) -> Top {
        let Some(lo) = self.lo() else { return Top::Empty };
        if self.finite_hint == Some(false) {
            return Top::Infinite;
        }
        let n = self.ring.n as i32;
        let mut bound = self.space().max_degree().unwrap().max(lo) + n + 3;
        let mut kernel = None;
        for _ in 0..4 {
            match syzygy_checked(&self.outgoing, bound, 1) {
                Ok(k) => {
                    kernel = Some(k);
                    break;
                }
                Err(_) => bound += 4,
            }
        }
        let Some(kernel) = kernel else { return Top::Infinite };
        let Some(g) = kernel.source.max_degree() else { return Top::Empty };
        let cap = g + 2 * n + 6;
        let mut last_nonzero = None;
        for e in lo..=cap {
            let d = self.dim(e);
            if d != 0 {
                last_nonzero = Some(e);
            } else if e >= g {
                return match last_nonzero {
                    Some(t) => Top::Finite(t),
                    None => Top::Empty,
                };
            }
        }
        if self.finite_hint == Some(true) {
            // keep scanning; the caller asserts finite length
            let mut e = cap + 1;
            loop {
                if self.dim(e) == 0 {
                    return Top::Finite(e - 1);
                }
                e += 1;
            }
        }
        match self.presented().and_then(|p| p.resolution().map(|r| r.hilbert_polynomial())) {
            Ok(hp) if hp.is_zero() => {
                let mut e = cap + 1;
                loop {
                    if self.dim(e) == 0 {
                        return Top::Finite(last_nonzero.unwrap_or(lo));
                    }
                    last_nonzero = Some(e);
                    e += 1;
                }
            }
            _ => Top::Infinite,
        }
    }

    pub fn is_finite_length(&self) -> bool {
        !matches!(self.top(), Top::Infinite)
    }

    /// Degrees where the module can be nonzero, when finite.
    pub fn support(&self) -> Vec<i32> {
        match (self.lo(), self.top()) {
            (Some(lo), Top::Finite(t)) => (lo..=t).filter(|&e| self.dim(e) > 0).collect(),
            _ => vec![],
        }
    }

    /// Total dimension when finite length.
    pub fn total_dim(&self) -> Option<usize> {
        match self.top() {
            Top::Empty => Some(0),
            Top::Finite(_) => Some(self.support().iter().map(|&e| self.dim(e)).sum()),
            Top::Infinite => None,
        }
    }

    /// Smallest degree with a nonzero slice; None when the module is zero.
    pub fn min_nonzero(&self) -> Option<i32> {
        let lo = self.lo()?;
        match self.top() {
            Top::Empty => None,
            Top::Finite(t) => (lo..=t).find(|&e| self.dim(e) > 0),
            Top::Infinite => (lo..).find(|&e| self.dim(e) > 0),
        }
    }

    /// Matrix of multiplication by a homogeneous form: Ext_e → Ext_{e+deg}.
    pub fn mult_matrix(&self, f: &HomogPoly, e: i32) -> DenseMatrix {
        let ring = self.ring;
        let src = self.slice(e);
        let dst = self.slice(e + f.degree() as i32);
        let cols: Vec<Vec<u32>> = src
            .reps
            .iter()
            .map(|r| {
                let v = self.space().mul_vector(&ring, e, f, r);
                dst.class_coords(&v).expect("product of a cocycle is a cocycle")
            })
            .collect();
        DenseMatrix::from_columns(ring.field, dst.dim(), &cols)
    }

    /// True when f annihilates the module (checked on the certified support).
    pub fn annihilated_by(&self, f: &HomogPoly) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        match self.top() {
            Top::Empty => Ok(true),
            Top::Finite(_) => Ok(self.support().iter().all(|&e| self.mult_matrix(f, e).is_zero())),
            Top::Infinite => Err(Error::Invalid(format!("Ext^{} is not of finite length", self.index))),
        }
    }

    /// A presentation of the Ext module: kernel generators modulo
    /// their syzygies and the lifted image generators.
    pub fn presented(&self) -> Result<PresentedModule> {
        let ring = self.ring;
        let n = ring.n as i32;
        let Some(hi_src) = self.space().max_degree() else {
            return Ok(PresentedModule::free(ring, vec![]));
        };
        let bound = hi_src + n + 3;
        let k = syzygy_checked(&self.outgoing, bound, 1)?;
        if k.source.is_zero() {
            return Ok(PresentedModule::free(ring, vec![]));
        }
        let rel = syzygy_checked(&k, k.source.max_degree().unwrap() + n + 3, 1)?;
        let mut lifted = Vec::new();
        let mut degs = Vec::new();
        for j in 0..self.incoming.cols() {
            let d = self.incoming.source.degrees[j];
            let v = self.space().polys_to_vector(&ring, d, &self.incoming.column(j));
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            let x = k.slice(d).solve(&v).ok_or_else(|| Error::Invalid("image outside kernel".into()))?;
            lifted.push(x);
            degs.push(d);
        }
        let lift = GradedMap::from_slice_columns(ring, k.source.clone(), degs, &lifted);
        Ok(PresentedModule::new(rel.hstack(&lift)?))
    }
}

/// Ext^0..Ext^{n+1} of M against the canonical twist, with the
/// resolution they came from.
#[derive(Debug)]
pub struct ExtSystem {
    pub resolution: Arc<FreeResolution>,
    pub exts: Vec<ExtModule>,
}

impl ExtSystem {
    pub fn from_resolution(res: Arc<FreeResolution>) -> Self {
        let ring = res.ring;
        let n = ring.n;
        let rank_positive = res.hilbert_polynomial().sheaf_rank() != 0;
        let dual = |j: usize| -> GradedMap {
            // D_j^* : F_{j−1}^* → F_j^*
            if j == 0 {
                GradedMap::zero(ring, res.module(0).dual(&ring), GradedFreeModule::default())
            } else {
                res.differential(j).dual()
            }
        };
        let exts = (0..=n + 1)
            .map(|j| {
                let hint = if j == 0 { Some(!rank_positive) } else { None };
                ExtModule::new(j, dual(j), dual(j + 1), hint)
            })
            .collect();
        ExtSystem { resolution: res, exts }
    }

    pub fn ext(&self, j: usize) -> &ExtModule {
        &self.exts[j]
    }

    pub fn n(&self) -> usize {
        self.resolution.ring.n
    }

    /// dim H^i_𝔪(M)_d = dim Ext^{n+1−i}_{−d}
    pub fn local_dim(&self, i: usize, d: i32) -> usize {
        let n = self.n();
        if i > n + 1 {
            return 0;
        }
        self.exts[n + 1 - i].dim(-d)
    }
}

/// Ext data of M, cached on the module.
pub fn ext_modules(m: &PresentedModule) -> Result<Arc<ExtSystem>> {
    if let Some(e) = m.ext_cache().get() {
        return Ok(e.clone());
    }
    let res = m.resolution()?;
    let sys = Arc::new(ExtSystem::from_resolution(res));
    Ok(m.ext_cache().get_or_init(|| sys).clone())
}
