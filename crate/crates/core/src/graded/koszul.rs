//! The Koszul complex on x_0..x_n and its syzygy modules E_p.

use super::free::{GradedFreeModule, GradedMap, Ring};
use super::module::PresentedModule;
use super::resolution::FreeResolution;
use crate::algebra::binomial;

/// r-element subsets of {0..m-1} in lexicographic order.
pub fn subsets(m: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= m {
        rec(0, m, r, &mut Vec::new(), &mut out);
    }
    out
}

/// K_r = S(−r)^{C(n+1, r)}
pub fn koszul_module(ring: &Ring, r: usize) -> GradedFreeModule {
    GradedFreeModule::new(vec![r as i32; binomial(ring.nvars() as i64, r as i64) as usize])
}

/// ∂_r : K_r → K_{r−1}, ∂(e_T) = Σ_pos (−1)^pos x_{t_pos} e_{T∖t_pos}.
pub fn koszul_differential(ring: Ring, r: usize) -> GradedMap {
    let nv = ring.nvars();
    let src = subsets(nv, r);
    let tgt = if r == 0 { vec![] } else { subsets(nv, r - 1) };
    let f = ring.field;
    let mut entries = vec![ring.zero(0); tgt.len() * src.len()];
    for (j, t) in src.iter().enumerate() {
        for (pos, &x) in t.iter().enumerate() {
            let mut rest = t.clone();
            rest.remove(pos);
            let i = tgt.binary_search(&rest).expect("face of a subset");
            let v = ring.var(x);
            entries[i * src.len() + j] = if pos % 2 == 0 { v } else { v.scale(f.neg(1)) };
        }
    }
    let target = if r == 0 { GradedFreeModule::default() } else { koszul_module(&ring, r - 1) };
    GradedMap::new(ring, target, koszul_module(&ring, r), entries).unwrap()
}

/// The full Koszul complex, a minimal resolution of k = S/𝔪.
pub fn koszul_complex(ring: Ring) -> FreeResolution {
    let maps = (1..=ring.nvars()).map(|r| koszul_differential(ring, r)).collect();
    FreeResolution::from_maps(ring, koszul_module(&ring, 0), maps, true, ring.nvars() as i32)
}

/// E_p = im ∂_p ≅ coker ∂_{p+1}, for 1 ≤ p ≤ n+1.
pub fn koszul_syzygy_module(ring: Ring, p: usize) -> PresentedModule {
    assert!((1..=ring.nvars()).contains(&p), "E_p needs 1 ≤ p ≤ n+1");
    if p == ring.nvars() {
        return PresentedModule::free(ring, vec![p as i32]);
    }
    PresentedModule::new(koszul_differential(ring, p + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;

    #[test]
    fn ranks_and_composites() {
        for n in 1..=4 {
            let r = Ring::new(PrimeField::default(), n);
            let k = koszul_complex(r);
            for j in 0..=n + 1 {
                assert_eq!(k.module(j).rank() as i64, binomial(n as i64 + 1, j as i64));
            }
            assert!(k.composites_vanish());
        }
    }

    #[test]
    fn p1_shape() {
        let r = Ring::new(PrimeField::default(), 1);
        let k = koszul_complex(r);
        assert_eq!(k.module(1).degrees, vec![1, 1]);
        assert_eq!(k.module(2).degrees, vec![2]);
        assert_eq!(k.differential(2).entry(0, 0).to_string(), "-x1");
        assert_eq!(k.differential(2).entry(1, 0).to_string(), "x0");
    }

    #[test]
    fn e1_is_the_maximal_ideal() {
        let r = Ring::new(PrimeField::default(), 3);
        let e1 = koszul_syzygy_module(r, 1);
        assert_eq!(e1.hilbert_function(0), 0);
        assert_eq!(e1.hilbert_function(1), 4);
        assert_eq!(e1.hilbert_function(3), 20);
    }
}
