//! Chain maps between free resolutions and their mapping cones.

use std::collections::HashMap;

use super::free::{GradedMap, Ring};
use super::resolution::{prune, FreeResolution};
use crate::algebra::DenseMatrix;
use crate::error::{Error, Result};

/// c_j : F_j → G_j commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: FreeResolution,
    pub target: FreeResolution,
    pub maps: Vec<GradedMap>,
}

impl ChainMap {
    pub fn level(&self, j: usize) -> GradedMap {
        self.maps
            .get(j)
            .cloned()
            .unwrap_or_else(|| GradedMap::zero(self.source.ring, self.target.module(j), self.source.module(j)))
    }

    /// Check every square d^G_j c_j = c_{j-1} d^F_j on the polynomial level.
    pub fn commutes(&self) -> bool {
        for j in 1..=self.source.length() {
            let left = self.target.differential(j).compose(&self.level(j));
            let right = self.level(j - 1).compose(&self.source.differential(j));
            match (left, right) {
                (Ok(l), Ok(r)) if l == r => {}
                (Ok(l), Ok(r)) => {
                    let diff = l.entries().iter().zip(r.entries()).all(|(a, b)| a.sub(b).is_zero());
                    if !diff {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }
}

/// Solve d · x = columns of `rhs`, column by column at the source degree.
fn solve_columns(d: &GradedMap, rhs: &GradedMap, level: usize) -> Result<GradedMap> {
    let ring = d.ring;
    let mut cache: HashMap<i32, DenseMatrix> = HashMap::new();
    let mut cols = Vec::new();
    for j in 0..rhs.cols() {
        let deg = rhs.source.degrees[j];
        let b = rhs.target.polys_to_vector(&ring, deg, &rhs.column(j));
        let m = cache.entry(deg).or_insert_with(|| d.slice(deg));
        let x = m.solve(&b).ok_or_else(|| {
            Error::NotAModuleMap(format!("no lift at level {level} for column {j} (degree {deg})"))
        })?;
        cols.push(x);
    }
    Ok(GradedMap::from_slice_columns(ring, d.source.clone(), rhs.source.degrees.clone(), &cols))
}

/// Lift a degree-0 map f0: F_0 → G_0 of generators to a chain map.
/// Fails with NotAModuleMap when relations of the source do not map into
/// the relations of the target.
pub fn lift_chain_map(f0: &GradedMap, f: &FreeResolution, g: &FreeResolution) -> Result<ChainMap> {
    if f0.source != f.module(0) || f0.target != g.module(0) {
        return Err(Error::DimensionMismatch("generator map does not match the resolutions".into()));
    }
    let mut maps = vec![f0.clone()];
    for j in 1..=f.length() {
        let rhs = maps[j - 1].compose(&f.differential(j))?;
        let dg = g.differential(j);
        let c = if g.module(j).is_zero() {
            if !rhs.is_zero() {
                return Err(Error::NotAModuleMap(format!("nonzero obstruction at level {j}")));
            }
            GradedMap::zero(f.ring, g.module(j), f.module(j))
        } else {
            solve_columns(&dg, &rhs, j)?
        };
        maps.push(c);
    }
    Ok(ChainMap { source: f.clone(), target: g.clone(), maps })
}

/// Cone_j = G_j ⊕ F_{j−1}, ∂ = [[d^G, c], [0, −d^F]]. With `minimize` the
/// unit entries are pruned.
pub fn mapping_cone(c: &ChainMap, minimize: bool) -> Result<FreeResolution> {
    let f = &c.source;
    let g = &c.target;
    let ring: Ring = g.ring;
    let len = g.length().max(f.length() + 1);
    let mut maps = Vec::new();
    for j in 1..=len {
        let dg = g.differential(j);
        let cj = c.level(j - 1);
        let top = dg.hstack(&cj)?;
        let d = if j >= 2 {
            let df = f.differential(j - 1);
            let neg = df.map_entries(ring, |e| e.neg());
            let zero = GradedMap::zero(ring, f.module(j - 2), g.module(j));
            let bottom = zero.hstack(&neg)?;
            stack_rows(&top, &bottom)
        } else {
            top
        };
        maps.push(d);
    }
    if minimize {
        prune(&mut maps);
    }
    let f0 = maps.first().map(|m| m.target.clone()).unwrap_or_else(|| g.module(0));
    Ok(FreeResolution::from_maps(ring, f0, maps, minimize, g.hi.max(f.hi)))
}

fn stack_rows(top: &GradedMap, bottom: &GradedMap) -> GradedMap {
    assert_eq!(top.source, bottom.source);
    let mut entries = top.entries().to_vec();
    entries.extend_from_slice(bottom.entries());
    GradedMap::new(top.ring, top.target.sum(&bottom.target), top.source.clone(), entries).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;
    use crate::graded::{koszul_complex, GradedFreeModule, PresentedModule};

    #[test]
    fn identity_lift_and_exact_cone() {
        let r = Ring::new(PrimeField::default(), 2);
        let k = koszul_complex(r);
        let id = GradedMap::identity(r, k.module(0));
        let c = lift_chain_map(&id, &k, &k).unwrap();
        assert!(c.commutes());
        let cone = mapping_cone(&c, true).unwrap();
        // cone over an isomorphism is split exact: pruning kills everything
        assert!(cone.modules.iter().all(|m| m.is_zero()));
    }

    #[test]
    fn multiplication_lift() {
        let r = Ring::new(PrimeField::default(), 2);
        let m = PresentedModule::new(crate::graded::koszul_differential(r, 3));
        let res = m.resolution().unwrap();
        let tw = FreeResolution::from_maps(
            r,
            res.module(0).twist(-1),
            res.maps.iter().map(|d| d.twist(-1)).collect(),
            true,
            res.hi,
        );
        let x0 = r.var(0);
        let rank = res.module(0).rank();
        let entries = (0..rank * rank).map(|k| if k / rank == k % rank { x0.clone() } else { r.zero(0) }).collect();
        let f0 = GradedMap::new(r, res.module(0), tw.module(0), entries).unwrap();
        let c = lift_chain_map(&f0, &tw, &res).unwrap();
        assert!(c.commutes());
    }

    #[test]
    fn non_module_map_rejected() {
        let r = Ring::new(PrimeField::default(), 1);
        // S/(x0) → S/(x1) sending 1 ↦ 1 is not well defined
        let a = PresentedModule::free(r, vec![0]).quotient_by_linear(&[r.var(0)]).unwrap();
        let b = PresentedModule::free(r, vec![0]).quotient_by_linear(&[r.var(1)]).unwrap();
        let ra = a.resolution().unwrap();
        let rb = b.resolution().unwrap();
        let f0 = GradedMap::identity(r, GradedFreeModule::new(vec![0]));
        assert!(matches!(lift_chain_map(&f0, &ra, &rb), Err(Error::NotAModuleMap(_))));
    }
}
