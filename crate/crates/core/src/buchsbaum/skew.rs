//! The snake maps φ_{y∧z}: H²_*(E) → H¹_*(E) of a quasi-Buchsbaum module
//! on P³ with one-dimensional H¹_*, H²_*, and the skew form they assemble to.

use serde::Serialize;

use crate::algebra::{DenseMatrix, HomogPoly, PrimeField, RowEchelon};
use crate::cohomology::{ext_modules, is_nonzerodivisor};
use crate::error::{Error, Result};
use crate::graded::PresentedModule;

/// y2 kills H²_𝔪(M/y1 M); symmetric in (y1, y2) for quasi-Buchsbaum M.
pub fn phi_zero_test(m: &PresentedModule, y1: &HomogPoly, y2: &HomogPoly) -> Result<bool> {
    let ring = m.ring();
    if y1.is_zero() || y1.degree() != 1 {
        return Err(Error::NotNzd(format!("{y1} is not a nonzero linear form")));
    }
    if !is_nonzerodivisor(m, y1)? {
        return Err(Error::NotNzd(format!("{y1} is a zero divisor on the module")));
    }
    if ring.n < 2 {
        return Err(Error::Invalid("phi_zero_test needs n ≥ 2".into()));
    }
    let (q, red) = m.reduce_by_linear(&[y1.linear_coeffs()])?;
    let z = red.ring.linear(&red.map_linear(&y2.linear_coeffs()));
    if z.is_zero() {
        return Ok(true);
    }
    // H² over S' = S/(y1), n' = n − 1  ⟷  Ext^{n'−1}
    let sys = ext_modules(&q)?;
    sys.ext(red.ring.n - 1).annihilated_by(&z)
}

/// Checks H¹_*(E) ≅ k in degree −1 and H²_*(E) ≅ k in degree −3, i.e.
/// dim Ext²_1 = dim Ext¹_3 = 1 and nothing else in Ext¹, Ext².
pub fn is_normalized(m: &PresentedModule) -> Result<bool> {
    if m.ring().n != 3 {
        return Ok(false);
    }
    let sys = ext_modules(m)?;
    let e1 = sys.ext(1);
    let e2 = sys.ext(2);
    Ok(e1.total_dim() == Some(1) && e2.total_dim() == Some(1) && e2.dim(1) == 1 && e1.dim(3) == 1)
}

/// φ_{y∧z} on the chosen generators: take α spanning Ext²_1, solve
/// D₂*β = yα and D₂*γ = zα, and read off the class of zβ − yγ in Ext¹_3.
pub fn phi_value_forms(m: &PresentedModule, y: &HomogPoly, z: &HomogPoly) -> Result<u32> {
    if !is_normalized(m)? {
        return Err(Error::NotNormalized("need dim H^1 = dim H^2 = 1 at degrees -1, -3".into()));
    }
    let ring = m.ring();
    let sys = ext_modules(m)?;
    let e1 = sys.ext(1);
    let e2 = sys.ext(2);
    let alpha = &e2.slice(1).reps[0];
    let d2 = e2.incoming.slice(2);
    let lift = |f: &HomogPoly| -> Result<Vec<u32>> {
        let rhs = e2.space().mul_vector(&ring, 1, f, alpha);
        d2.solve(&rhs).ok_or_else(|| Error::Invalid(format!("{f} does not kill Ext^2; module is not quasi-Buchsbaum")))
    };
    let beta = lift(y)?;
    let gamma = lift(z)?;
    let zb = e1.space().mul_vector(&ring, 2, z, &beta);
    let yg = e1.space().mul_vector(&ring, 2, y, &gamma);
    let f = ring.field;
    let v: Vec<u32> = zb.iter().zip(&yg).map(|(&a, &b)| f.sub(a, b)).collect();
    let c = e1.slice(3).class_coords(&v).ok_or_else(|| Error::Invalid("snake element is not a cocycle".into()))?;
    Ok(c[0])
}

pub fn phi_value(m: &PresentedModule, i: usize, j: usize) -> Result<u32> {
    let ring = m.ring();
    phi_value_forms(m, &ring.var(i), &ring.var(j))
}

/// A_Φ, defined up to a scalar and congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewForm {
    pub matrix: DenseMatrix,
}

impl SkewForm {
    pub fn new(matrix: DenseMatrix) -> Self {
        SkewForm { matrix }
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_skew(&self) -> bool {
        let a = &self.matrix;
        let f = a.field();
        (0..a.rows()).all(|i| (0..a.cols()).all(|j| a.get(i, j) == f.neg(a.get(j, i))))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Entries as symmetric residues.
    pub fn to_i64(&self) -> Vec<Vec<i64>> {
        let a = &self.matrix;
        (0..a.rows()).map(|i| (0..a.cols()).map(|j| a.field().to_symmetric(a.get(i, j))).collect()).collect()
    }
}

/// Every a_{ij} with i ≠ j is computed by its own snake, so antisymmetry
/// is a genuine check.
pub fn skew_form(m: &PresentedModule) -> Result<SkewForm> {
    let ring = m.ring();
    let nv = ring.nvars();
    let mut a = DenseMatrix::zeros(ring.field, nv, nv);
    for i in 0..nv {
        for j in 0..nv {
            if i != j {
                a.set(i, j, phi_value(m, i, j)?);
            }
        }
    }
    let s = SkewForm::new(a);
    if !s.is_skew() {
        return Err(Error::Invalid("snake maps are not antisymmetric".into()));
    }
    Ok(s)
}

/// pf A = a01·a23 − a02·a13 + a03·a12, so that pf² = det.
pub fn pfaffian4(a: &SkewForm) -> u32 {
    pfaffian4_signed(a, false)
}

/// With `corrupt` the sign of the middle term is flipped; used only to
/// demonstrate that the acceptance suite notices.
pub fn pfaffian4_signed(a: &SkewForm, corrupt: bool) -> u32 {
    assert_eq!(a.size(), 4, "pfaffian4 needs a 4x4 matrix");
    let m = &a.matrix;
    let f = m.field();
    let t1 = f.mul(m.get(0, 1), m.get(2, 3));
    let t2 = f.mul(m.get(0, 2), m.get(1, 3));
    let t3 = f.mul(m.get(0, 3), m.get(1, 2));
    let mid = if corrupt { f.add(t1, t2) } else { f.sub(t1, t2) };
    f.add(mid, t3)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank2Witnesses {
    /// basis of a 3-dimensional totally isotropic subspace of S_1
    pub isotropic3: Vec<Vec<i64>>,
    /// y with φ_{y∧z} = 0 for all z
    pub radical_vector: Vec<i64>,
    pub radical: Vec<Vec<i64>>,
}

fn bilinear(a: &DenseMatrix, u: &[u32], v: &[u32]) -> u32 {
    let f = a.field();
    let av = a.mul_vec(v);
    u.iter().zip(&av).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

pub fn rank2_witnesses(a: &SkewForm) -> Result<Rank2Witnesses> {
    let r = a.rank();
    if r != 2 {
        return Err(Error::WrongRank(format!("rank 2 expected, got {r}")));
    }
    let m = &a.matrix;
    let f: PrimeField = m.field();
    let radical = m.kernel_vectors();
    let mut ech = RowEchelon::new(f, m.cols());
    for v in &radical {
        ech.insert(v);
    }
    let extra = (0..m.cols())
        .map(|k| {
            let mut e = vec![0; m.cols()];
            e[k] = 1;
            e
        })
        .find(|e| !ech.contains(e))
        .expect("radical is a proper subspace");
    let mut iso = radical.clone();
    iso.push(extra);
    for u in &iso {
        for v in &iso {
            if bilinear(m, u, v) != 0 {
                return Err(Error::Invalid("isotropic witness failed".into()));
            }
        }
    }
    let sym = |v: &Vec<u32>| v.iter().map(|&x| f.to_symmetric(x)).collect::<Vec<i64>>();
    Ok(Rank2Witnesses {
        isotropic3: iso.iter().map(sym).collect(),
        radical_vector: sym(&radical[0]),
        radical: radical.iter().map(sym).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundles::{example_matrix, skew_from_upper, standard_symplectic};

    #[test]
    fn pfaffian_values() {
        let f = PrimeField::default();
        assert_eq!(pfaffian4(&SkewForm::new(standard_symplectic(f, 4))), 1);
        assert_eq!(pfaffian4(&SkewForm::new(example_matrix(f, 1))), 0);
        assert_eq!(pfaffian4(&SkewForm::new(DenseMatrix::zeros(f, 4, 4))), 0);
        let a = SkewForm::new(skew_from_upper(f, 4, &[((0, 1), 1), ((2, 3), 1), ((0, 2), 1), ((1, 3), 1)]));
        assert_eq!(f.mul(pfaffian4(&a), pfaffian4(&a)), a.matrix.det());
        assert_ne!(f.mul(pfaffian4_signed(&a, true), pfaffian4_signed(&a, true)), a.matrix.det());
    }

    #[test]
    fn witnesses() {
        let f = PrimeField::default();
        let w = rank2_witnesses(&SkewForm::new(example_matrix(f, 2))).unwrap();
        assert_eq!(w.radical_vector, vec![1, 0, 0, 0]);
        let w = rank2_witnesses(&SkewForm::new(skew_from_upper(f, 4, &[((0, 3), 1)]))).unwrap();
        assert_eq!(w.radical, vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0]]);
        assert!(matches!(rank2_witnesses(&SkewForm::new(standard_symplectic(f, 4))), Err(Error::WrongRank(_))));
    }
}
