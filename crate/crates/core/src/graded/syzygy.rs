//! Minimal generators of the kernel of a graded map, degree by degree.

use rayon::prelude::*;

use super::free::{GradedFreeModule, GradedMap};
use crate::algebra::RowEchelon;
use crate::error::{Error, Result};

/// Generators of ker φ found up to `bound`; degrees bound+1 ..= bound+extra
/// are scanned as well and any generator there is a BoundTooSmall error.
pub fn syzygy_checked(phi: &GradedMap, bound: i32, extra: i32) -> Result<GradedMap> {
    let ring = phi.ring;
    let source = &phi.source;
    let Some(lo) = source.min_degree() else {
        return Ok(GradedMap::zero(ring, source.clone(), GradedFreeModule::default()));
    };
    if bound < lo {
        return Ok(GradedMap::zero(ring, source.clone(), GradedFreeModule::default()));
    }
    let top = bound + extra.max(0);
    let kernels: Vec<Vec<Vec<u32>>> =
        (lo..=top).into_par_iter().map(|d| phi.slice(d).kernel_vectors()).collect();

    let mut gen_degrees = Vec::new();
    let mut gen_vectors = Vec::new();
    let mut prev: &Vec<Vec<u32>> = &Vec::new();
    for (idx, kernel) in kernels.iter().enumerate() {
        let d = lo + idx as i32;
        if !kernel.is_empty() {
            let mut ech = RowEchelon::new(ring.field, source.dim(&ring, d));
            'outer: for v in prev {
                for k in 0..ring.nvars() {
                    if ech.dim() == kernel.len() {
                        break 'outer;
                    }
                    ech.insert(&source.shift_vector(&ring, d - 1, k, v));
                }
            }
            for v in kernel {
                if ech.dim() == kernel.len() {
                    break;
                }
                if let Some(r) = ech.insert(v) {
                    if d > bound {
                        return Err(Error::BoundTooSmall(format!(
                            "new syzygy generators in degree {d} beyond bound {bound}"
                        )));
                    }
                    gen_degrees.push(d);
                    gen_vectors.push(r);
                }
            }
        }
        prev = kernel;
    }
    Ok(GradedMap::from_slice_columns(ring, source.clone(), gen_degrees, &gen_vectors))
}

/// Kernel generators of φ up to `degree_bound`, checking one degree beyond.
pub fn syzygy(phi: &GradedMap, degree_bound: i32) -> Result<GradedMap> {
    syzygy_checked(phi, degree_bound, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;
    use crate::graded::free::Ring;

    #[test]
    fn koszul_relations() {
        for n in 1..=3usize {
            let r = Ring::new(PrimeField::default(), n);
            let phi = GradedMap::new(
                r,
                GradedFreeModule::new(vec![0]),
                GradedFreeModule::new(vec![1; n + 1]),
                (0..=n).map(|k| r.var(k)).collect(),
            )
            .unwrap();
            let s = syzygy(&phi, 6).unwrap();
            assert_eq!(s.source.degrees, vec![2; n * (n + 1) / 2]);
            assert!(phi.compose(&s).unwrap().is_zero());
        }
    }

    #[test]
    fn injective_and_zero_maps() {
        let r = Ring::new(PrimeField::default(), 2);
        let id = GradedMap::identity(r, GradedFreeModule::new(vec![0, 1]));
        assert_eq!(syzygy(&id, 5).unwrap().cols(), 0);
        let z = GradedMap::zero(r, GradedFreeModule::new(vec![0]), GradedFreeModule::new(vec![2, 2, 2]));
        assert_eq!(syzygy(&z, 4).unwrap().source.degrees, vec![2, 2, 2]);
    }

    #[test]
    fn bound_too_small_detected() {
        let r = Ring::new(PrimeField::default(), 1);
        let phi = GradedMap::new(
            r,
            GradedFreeModule::new(vec![0]),
            GradedFreeModule::new(vec![1, 1]),
            vec![r.var(0), r.var(1)],
        )
        .unwrap();
        assert!(matches!(syzygy(&phi, 1), Err(Error::BoundTooSmall(_))));
    }
}
