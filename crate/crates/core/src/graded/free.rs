//! Graded free modules over S = k[x_0..x_n] and graded maps between them.

use crate::algebra::{basis, basis_len, mult_slice, var_shift, DenseMatrix, HomogPoly, PrimeField};
use crate::error::{Error, Result};

/// The polynomial ring k[x_0..x_n].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub field: PrimeField,
    pub n: usize,
}

impl Ring {
    pub fn new(field: PrimeField, n: usize) -> Self {
        Ring { field, n }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    pub fn var(&self, k: usize) -> HomogPoly {
        HomogPoly::var(self.field, self.nvars(), k)
    }

    pub fn one(&self) -> HomogPoly {
        HomogPoly::constant(self.field, self.nvars(), 1)
    }

    pub fn zero(&self, degree: u32) -> HomogPoly {
        HomogPoly::zero(self.field, self.nvars(), degree)
    }

    pub fn constant(&self, c: u32) -> HomogPoly {
        HomogPoly::constant(self.field, self.nvars(), c)
    }

    pub fn linear(&self, coeffs: &[u32]) -> HomogPoly {
        assert_eq!(coeffs.len(), self.nvars());
        HomogPoly::linear(self.field, coeffs)
    }

    /// dim S_d
    pub fn dim(&self, d: i32) -> usize {
        basis_len(self.nvars(), d)
    }
}

/// ⊕ S(−a_i); generator i lives in degree a_i.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedFreeModule {
    pub degrees: Vec<i32>,
}

impl GradedFreeModule {
    pub fn new(degrees: Vec<i32>) -> Self {
        GradedFreeModule { degrees }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Dimension of the degree-d slice.
    pub fn dim(&self, ring: &Ring, d: i32) -> usize {
        self.degrees.iter().map(|&a| ring.dim(d - a)).sum()
    }

    /// Block offsets of each generator's monomials in the degree-d slice;
    /// the last entry is the total dimension.
    pub fn offsets(&self, ring: &Ring, d: i32) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.rank() + 1);
        let mut acc = 0;
        out.push(0);
        for &a in &self.degrees {
            acc += ring.dim(d - a);
            out.push(acc);
        }
        out
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().min()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().max()
    }

    pub fn sum(&self, other: &GradedFreeModule) -> GradedFreeModule {
        let mut d = self.degrees.clone();
        d.extend_from_slice(&other.degrees);
        GradedFreeModule::new(d)
    }

    /// F(ℓ): generator degrees shift by −ℓ.
    pub fn twist(&self, l: i32) -> GradedFreeModule {
        GradedFreeModule::new(self.degrees.iter().map(|a| a - l).collect())
    }

    /// Hom(F, S(−n−1)) generator degrees.
    pub fn dual(&self, ring: &Ring) -> GradedFreeModule {
        GradedFreeModule::new(self.degrees.iter().map(|a| ring.n as i32 + 1 - a).collect())
    }

    /// Slice vector of degree d  →  one polynomial per generator.
    pub fn vector_to_polys(&self, ring: &Ring, d: i32, v: &[u32]) -> Vec<HomogPoly> {
        let off = self.offsets(ring, d);
        assert_eq!(v.len(), *off.last().unwrap());
        self.degrees
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let e = d - a;
                if e < 0 {
                    ring.zero(0)
                } else {
                    HomogPoly::from_vector(ring.field, ring.nvars(), e as u32, &v[off[i]..off[i + 1]])
                }
            })
            .collect()
    }

    /// Inverse of `vector_to_polys`.
    pub fn polys_to_vector(&self, ring: &Ring, d: i32, polys: &[HomogPoly]) -> Vec<u32> {
        let off = self.offsets(ring, d);
        let mut v = vec![0; *off.last().unwrap()];
        for (i, (&a, p)) in self.degrees.iter().zip(polys).enumerate() {
            if p.is_zero() {
                continue;
            }
            assert_eq!(p.degree() as i32, d - a, "component degree mismatch");
            v[off[i]..off[i + 1]].copy_from_slice(&p.to_vector());
        }
        v
    }

    /// Multiply a degree-d slice vector by x_k.
    pub fn shift_vector(&self, ring: &Ring, d: i32, k: usize, v: &[u32]) -> Vec<u32> {
        let off = self.offsets(ring, d);
        let off1 = self.offsets(ring, d + 1);
        let mut out = vec![0; *off1.last().unwrap()];
        for (i, &a) in self.degrees.iter().enumerate() {
            let e = d - a;
            if e < 0 {
                continue;
            }
            let t = var_shift(ring.nvars(), e, k);
            for (s, &dst) in t.iter().enumerate() {
                out[off1[i] + dst] = v[off[i] + s];
            }
        }
        out
    }

    /// Multiply a degree-d slice vector by a homogeneous polynomial.
    pub fn mul_vector(&self, ring: &Ring, d: i32, f: &HomogPoly, v: &[u32]) -> Vec<u32> {
        let off = self.offsets(ring, d);
        let e = f.degree() as i32;
        let off1 = self.offsets(ring, d + e);
        let mut out = vec![0; *off1.last().unwrap()];
        for (i, &a) in self.degrees.iter().enumerate() {
            if d - a < 0 {
                continue;
            }
            let m = mult_slice(f, d - a);
            let w = m.mul_vec(&v[off[i]..off[i + 1]]);
            out[off1[i]..off1[i + 1]].copy_from_slice(&w);
        }
        out
    }
}

/// Graded map target ← source; entry (i, j) has degree
/// source_deg(j) − target_deg(i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub ring: Ring,
    pub source: GradedFreeModule,
    pub target: GradedFreeModule,
    entries: Vec<HomogPoly>,
}

impl GradedMap {
    /// Entries row-major, target rows × source columns. Zero entries may
    /// carry any nominal degree; they are normalized.
    pub fn new(
        ring: Ring,
        target: GradedFreeModule,
        source: GradedFreeModule,
        entries: Vec<HomogPoly>,
    ) -> Result<Self> {
        if entries.len() != target.rank() * source.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} map",
                entries.len(),
                target.rank(),
                source.rank()
            )));
        }
        let mut entries = entries;
        for i in 0..target.rank() {
            for j in 0..source.rank() {
                let e = &mut entries[i * source.rank() + j];
                if e.nvars() != ring.nvars() {
                    return Err(Error::DimensionMismatch("entry from a different ring".into()));
                }
                let want = source.degrees[j] - target.degrees[i];
                if e.is_zero() {
                    *e = ring.zero(want.max(0) as u32);
                } else if e.degree() as i32 != want {
                    return Err(Error::DegreeMismatch(format!(
                        "entry ({i},{j}) = {e} has degree {} but the grading needs {want}",
                        e.degree()
                    )));
                }
            }
        }
        Ok(GradedMap { ring, source, target, entries })
    }

    pub fn zero(ring: Ring, target: GradedFreeModule, source: GradedFreeModule) -> Self {
        let entries = (0..target.rank() * source.rank()).map(|_| ring.zero(0)).collect();
        GradedMap::new(ring, target, source, entries).unwrap()
    }

    pub fn identity(ring: Ring, f: GradedFreeModule) -> Self {
        let r = f.rank();
        let entries = (0..r * r)
            .map(|k| if k / r == k % r { ring.one() } else { ring.zero(0) })
            .collect();
        GradedMap::new(ring, f.clone(), f, entries).unwrap()
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &HomogPoly {
        &self.entries[i * self.source.rank() + j]
    }

    pub fn entries(&self) -> &[HomogPoly] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<HomogPoly> {
        (0..self.rows()).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Degree-d slice: (source)_d → (target)_d on monomial bases.
    pub fn slice(&self, d: i32) -> DenseMatrix {
        let ring = &self.ring;
        let so = self.source.offsets(ring, d);
        let to = self.target.offsets(ring, d);
        let mut m = DenseMatrix::zeros(ring.field, *to.last().unwrap(), *so.last().unwrap());
        for j in 0..self.cols() {
            let e = d - self.source.degrees[j];
            if e < 0 {
                continue;
            }
            for i in 0..self.rows() {
                let f = self.entry(i, j);
                if f.is_zero() || d - self.target.degrees[i] < 0 {
                    continue;
                }
                m.put_block(to[i], so[j], &mult_slice(f, e));
            }
        }
        m
    }

    /// Apply to a degree-d slice vector.
    pub fn apply(&self, d: i32, v: &[u32]) -> Vec<u32> {
        let ring = &self.ring;
        let so = self.source.offsets(ring, d);
        let to = self.target.offsets(ring, d);
        let f = ring.field;
        let mut out = vec![0u32; *to.last().unwrap()];
        for j in 0..self.cols() {
            let e = d - self.source.degrees[j];
            if e < 0 {
                continue;
            }
            let part = &v[so[j]..so[j + 1]];
            if part.iter().all(|&x| x == 0) {
                continue;
            }
            for i in 0..self.rows() {
                let g = self.entry(i, j);
                if g.is_zero() {
                    continue;
                }
                let w = mult_slice(g, e).mul_vec(part);
                for (o, x) in out[to[i]..to[i + 1]].iter_mut().zip(w) {
                    *o = f.add(*o, x);
                }
            }
        }
        out
    }

    /// self ∘ other
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.source != other.target {
            return Err(Error::DimensionMismatch("composition of incompatible maps".into()));
        }
        let ring = self.ring;
        let mut entries = Vec::with_capacity(self.rows() * other.cols());
        for i in 0..self.rows() {
            for j in 0..other.cols() {
                let deg = (other.source.degrees[j] - self.target.degrees[i]).max(0) as u32;
                let mut acc = ring.zero(deg);
                for k in 0..self.cols() {
                    let a = self.entry(i, k);
                    let b = other.entry(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                entries.push(acc);
            }
        }
        GradedMap::new(ring, self.target.clone(), other.source.clone(), entries)
    }

    /// Transpose as a map of duals Hom(−, S(−n−1)).
    pub fn dual(&self) -> GradedMap {
        let ring = self.ring;
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols() {
            for i in 0..self.rows() {
                entries.push(self.entry(i, j).clone());
            }
        }
        GradedMap::new(ring, self.source.dual(&ring), self.target.dual(&ring), entries).unwrap()
    }

    /// Plain transpose into Hom(−, S): degrees negate.
    pub fn transpose_hom(&self) -> GradedMap {
        let ring = self.ring;
        let neg = |f: &GradedFreeModule| GradedFreeModule::new(f.degrees.iter().map(|a| -a).collect());
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols() {
            for i in 0..self.rows() {
                entries.push(self.entry(i, j).clone());
            }
        }
        GradedMap::new(ring, neg(&self.source), neg(&self.target), entries).unwrap()
    }

    pub fn twist(&self, l: i32) -> GradedMap {
        GradedMap {
            ring: self.ring,
            source: self.source.twist(l),
            target: self.target.twist(l),
            entries: self.entries.clone(),
        }
    }

    /// [self | other] sharing the target.
    pub fn hstack(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.target != other.target {
            return Err(Error::DimensionMismatch("hstack with different targets".into()));
        }
        let mut entries = Vec::new();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                entries.push(self.entry(i, j).clone());
            }
            for j in 0..other.cols() {
                entries.push(other.entry(i, j).clone());
            }
        }
        GradedMap::new(self.ring, self.target.clone(), self.source.sum(&other.source), entries)
    }

    /// Block diagonal sum.
    pub fn block_sum(&self, other: &GradedMap) -> GradedMap {
        let ring = self.ring;
        let (r1, c1, r2, c2) = (self.rows(), self.cols(), other.rows(), other.cols());
        let mut entries = Vec::with_capacity((r1 + r2) * (c1 + c2));
        for i in 0..r1 + r2 {
            for j in 0..c1 + c2 {
                let e = if i < r1 && j < c1 {
                    self.entry(i, j).clone()
                } else if i >= r1 && j >= c1 {
                    other.entry(i - r1, j - c1).clone()
                } else {
                    ring.zero(0)
                };
                entries.push(e);
            }
        }
        GradedMap::new(ring, self.target.sum(&other.target), self.source.sum(&other.source), entries).unwrap()
    }

    /// Keep the listed rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> GradedMap {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.entry(i, j).clone());
            }
        }
        let target = GradedFreeModule::new(rows.iter().map(|&i| self.target.degrees[i]).collect());
        let source = GradedFreeModule::new(cols.iter().map(|&j| self.source.degrees[j]).collect());
        GradedMap::new(self.ring, target, source, entries).unwrap()
    }

    /// Apply a polynomial map to all entries (ring change). `ring` is the new ring.
    pub fn map_entries(&self, ring: Ring, f: impl Fn(&HomogPoly) -> HomogPoly) -> GradedMap {
        let entries = self.entries.iter().map(&f).collect();
        GradedMap::new(ring, self.target.clone(), self.source.clone(), entries).unwrap()
    }

    /// Build a map whose j-th column is the degree-`source_degrees[j]`
    /// slice vector `cols[j]` of `target`.
    pub fn from_slice_columns(
        ring: Ring,
        target: GradedFreeModule,
        source_degrees: Vec<i32>,
        cols: &[Vec<u32>],
    ) -> GradedMap {
        let r = target.rank();
        let c = cols.len();
        let mut entries = vec![ring.zero(0); r * c];
        for (j, (v, &d)) in cols.iter().zip(&source_degrees).enumerate() {
            let polys = target.vector_to_polys(&ring, d, v);
            for (i, p) in polys.into_iter().enumerate() {
                entries[i * c + j] = p;
            }
        }
        GradedMap::new(ring, target, GradedFreeModule::new(source_degrees), entries).unwrap()
    }
}

/// Indices of a degree-d slice belonging to generator i.
pub fn generator_block(f: &GradedFreeModule, ring: &Ring, d: i32, i: usize) -> std::ops::Range<usize> {
    let off = f.offsets(ring, d);
    off[i]..off[i + 1]
}

/// Basis monomials of generator i's block at degree d.
pub fn block_monomials(f: &GradedFreeModule, ring: &Ring, d: i32, i: usize) -> Vec<crate::algebra::Monomial> {
    basis(ring.nvars(), d - f.degrees[i]).monomials.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> Ring {
        Ring::new(PrimeField::default(), n)
    }

    #[test]
    fn identity_slices() {
        let r = ring(3);
        let id = GradedMap::identity(r, GradedFreeModule::new(vec![0]));
        for d in 0..4 {
            assert_eq!(id.slice(d), DenseMatrix::identity(r.field, r.dim(d)));
        }
    }

    #[test]
    fn variables_slice_rank() {
        let r = ring(3);
        let entries = (0..4).map(|k| r.var(k)).collect();
        let phi = GradedMap::new(r, GradedFreeModule::new(vec![0]), GradedFreeModule::new(vec![1; 4]), entries)
            .unwrap();
        assert_eq!(phi.slice(1).rank(), 4);
        assert!(GradedMap::zero(r, GradedFreeModule::new(vec![0]), GradedFreeModule::new(vec![1])).slice(2).is_zero());
    }

    #[test]
    fn degree_mismatch_rejected() {
        let r = ring(1);
        let e = vec![r.var(0)];
        assert!(GradedMap::new(r, GradedFreeModule::new(vec![0]), GradedFreeModule::new(vec![2]), e).is_err());
    }

    #[test]
    fn apply_matches_slice() {
        let r = ring(2);
        let entries = vec![r.var(0), r.var(1).mul(&r.var(2))];
        let phi = GradedMap::new(r, GradedFreeModule::new(vec![0]), GradedFreeModule::new(vec![1, 2]), entries)
            .unwrap();
        let d = 3;
        let dim = phi.source.dim(&r, d);
        let v: Vec<u32> = (0..dim as u32).collect();
        assert_eq!(phi.apply(d, &v), phi.slice(d).mul_vec(&v));
    }
}
