//! Modules Γ_*(E) of the bundles used throughout: line-bundle sums, twisted
//! differential forms, null-correlation bundles, the cokernel bundles of
//! rank-2m sections, and the small worked examples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_poly, DenseMatrix, HomogPoly, PrimeField};
use crate::error::{Error, Result};
use crate::graded::{
    koszul_differential, koszul_module, koszul_syzygy_module, lift_chain_map, mapping_cone, subsets,
    FreeResolution, GradedFreeModule, GradedMap, PresentedModule, Ring,
};

/// Γ_*(Ω^{p−1}(ℓ)) = E_p(ℓ) for 2 ≤ p ≤ n+1; p = 1 gives S(ℓ) since ~E_1 = O.
pub fn omega_module(ring: Ring, p: usize, l: i32) -> Result<PresentedModule> {
    if p == 0 || p > ring.nvars() {
        return Err(Error::Invalid(format!("omega_module needs 1 ≤ p ≤ {}", ring.nvars())));
    }
    if p == 1 {
        return Ok(PresentedModule::line_sum(ring, &[l]));
    }
    Ok(koszul_syzygy_module(ring, p).twist(l))
}

/// Γ_*(Ω^q(ℓ)) by form degree q.
pub fn omega_form_module(ring: Ring, q: usize, l: i32) -> Result<PresentedModule> {
    omega_module(ring, q + 1, l)
}

fn check_skew(a: &DenseMatrix, size: usize) -> Result<()> {
    if a.rows() != size || a.cols() != size {
        return Err(Error::DimensionMismatch(format!("skew matrix must be {size}x{size}")));
    }
    let f = a.field();
    for i in 0..size {
        for j in 0..size {
            if a.get(i, j) != f.neg(a.get(j, i)) {
                return Err(Error::Invalid("matrix is not skew-symmetric".into()));
            }
        }
    }
    Ok(())
}

/// Coordinates on the Koszul generators e_{ij} of E_2 of the Euler-side
/// section A·x; ∂(e_{ij}) = x_i e_j − x_j e_i gives c_{ij} = −a_{ij}.
pub fn koszul_coordinates(a: &DenseMatrix) -> Vec<u32> {
    let f = a.field();
    subsets(a.rows(), 2).iter().map(|t| f.neg(a.get(t[0], t[1]))).collect()
}

/// The map S(−1) → E_2(1) ⊕ S(1−deg f_1) ⊕ … given by A·x and the forms,
/// as a column appended to the presentation of the target.
fn section_column(ring: Ring, a: &DenseMatrix, fs: &[HomogPoly]) -> Result<(PresentedModule, GradedMap)> {
    let e2 = koszul_syzygy_module(ring, 2).twist(1);
    let mut parts = vec![e2];
    for f in fs {
        parts.push(PresentedModule::free(ring, vec![1 - f.degree() as i32]));
    }
    let target = PresentedModule::direct_sum(&parts)?;
    let mut col: Vec<HomogPoly> = koszul_coordinates(a).into_iter().map(|c| ring.constant(c)).collect();
    col.extend(fs.iter().cloned());
    let sec = GradedMap::new(ring, target.generators().clone(), GradedFreeModule::new(vec![1]), col)?;
    Ok((target, sec))
}

/// Γ_*(N^∨) = coker(S(−1) → E_2(1)), the section being A·x in Euler
/// coordinates. Requires n odd and A of full rank.
pub fn null_correlation_module(ring: Ring, a: &DenseMatrix) -> Result<PresentedModule> {
    let n = ring.n;
    if n.is_multiple_of(2) {
        return Err(Error::EvenN(n));
    }
    check_skew(a, n + 1)?;
    let r = a.rank();
    if r != n + 1 {
        return Err(Error::WrongRank(format!("null-correlation needs rank {}, got {r}", n + 1)));
    }
    let (target, sec) = section_column(ring, a, &[])?;
    Ok(PresentedModule::new(target.presentation().hstack(&sec)?))
}

/// Resolution of Γ_*(N^∨) as the mapping cone of S(−1) → E_2(1) lifted to
/// the truncated Koszul resolution; `minimize = false` keeps the
/// superfluous unit component.
pub fn null_correlation_cone(ring: Ring, a: &DenseMatrix, minimize: bool) -> Result<FreeResolution> {
    check_skew(a, ring.nvars())?;
    let g0 = koszul_module(&ring, 2).twist(1);
    let gmaps = (3..=ring.nvars()).map(|r| koszul_differential(ring, r).twist(1)).collect();
    let g = FreeResolution::from_maps(ring, g0.clone(), gmaps, true, ring.nvars() as i32 + 3);
    let f0 = GradedFreeModule::new(vec![1]);
    let f = FreeResolution::from_maps(ring, f0.clone(), vec![], true, 1);
    let col = koszul_coordinates(a).into_iter().map(|c| ring.constant(c)).collect();
    let phi = GradedMap::new(ring, g0, f0, col)?;
    let chain = lift_chain_map(&phi, &f, &g)?;
    mapping_cone(&chain, minimize)
}

/// Γ_*(E^∨) for 0 → O(−1) → Ω(1) ⊕ ⊕O(ℓ_i − 1) → E^∨ → 0, the map given by
/// A·x and forms f_i of degree ℓ_i. The ideal (A·x, f) must be minimally
/// generated and 𝔪-primary.
pub fn cokernel_bundle(ring: Ring, a: &DenseMatrix, fs: &[HomogPoly]) -> Result<PresentedModule> {
    check_skew(a, ring.nvars())?;
    if fs.iter().any(|f| f.is_zero() || f.degree() == 0) {
        return Err(Error::BadIdeal("extra forms must be nonzero of positive degree".into()));
    }
    let rank = a.rank();
    // the ideal generated by the entries of A·x and the forms
    let mut gens: Vec<HomogPoly> = (0..ring.nvars())
        .map(|i| ring.linear(&(0..ring.nvars()).map(|j| a.get(i, j)).collect::<Vec<_>>()))
        .collect();
    gens.extend(fs.iter().cloned());
    let quotient = PresentedModule::free(ring, vec![0]).quotient_by(&gens)?;
    let res = quotient.resolution()?;
    if !res.hilbert_polynomial().is_zero() {
        return Err(Error::BadIdeal("the forms have a common zero".into()));
    }
    let min_gens = res.module(1).rank();
    if min_gens != rank + fs.len() {
        return Err(Error::BadIdeal(format!(
            "ideal needs {min_gens} generators but {} were given",
            rank + fs.len()
        )));
    }
    let (target, sec) = section_column(ring, a, fs)?;
    Ok(PresentedModule::new(target.presentation().hstack(&sec)?))
}

/// coker(S → E_2(2) ⊕ E_2(2)) with sections (x1,−x0,0,0) and (0,0,x3,−x2).
pub fn example_rank5(field: PrimeField) -> Result<PresentedModule> {
    let ring = Ring::new(field, 3);
    let e = koszul_syzygy_module(ring, 2).twist(2);
    let target = PresentedModule::direct_sum(&[e.clone(), e])?;
    let mut a1 = DenseMatrix::zeros(field, 4, 4);
    a1.set(0, 1, 1);
    a1.set(1, 0, field.neg(1));
    let mut a2 = DenseMatrix::zeros(field, 4, 4);
    a2.set(2, 3, 1);
    a2.set(3, 2, field.neg(1));
    let mut col: Vec<HomogPoly> = koszul_coordinates(&a1).into_iter().map(|c| ring.constant(c)).collect();
    col.extend(koszul_coordinates(&a2).into_iter().map(|c| ring.constant(c)));
    let sec = GradedMap::new(ring, target.generators().clone(), GradedFreeModule::new(vec![0]), col)?;
    Ok(PresentedModule::new(target.presentation().hstack(&sec)?))
}

/// Skew matrix from the upper-triangle entries a_{ij}, i < j.
pub fn skew_from_upper(field: PrimeField, size: usize, upper: &[((usize, usize), i64)]) -> DenseMatrix {
    let mut a = DenseMatrix::zeros(field, size, size);
    for &((i, j), v) in upper {
        let v = field.from_i64(v);
        a.set(i, j, v);
        a.set(j, i, field.neg(v));
    }
    a
}

/// The standard form a_{01} = a_{23} = … = 1.
pub fn standard_symplectic(field: PrimeField, size: usize) -> DenseMatrix {
    let pairs: Vec<_> = (0..size / 2).map(|k| ((2 * k, 2 * k + 1), 1)).collect();
    skew_from_upper(field, size, &pairs)
}

/// Rank-2 skew matrices of the two pseudo-Buchsbaum examples.
pub fn example_matrix(field: PrimeField, which: u8) -> DenseMatrix {
    match which {
        1 => skew_from_upper(field, 4, &[((0, 3), 1), ((1, 3), 1), ((2, 3), 1)]),
        _ => skew_from_upper(field, 4, &[((1, 2), 1), ((1, 3), 1), ((2, 3), 1)]),
    }
}

/// Hodge star on 4×4 skew matrices: (*A)_{ij} = ±a_{kl} with {i,j,k,l} =
/// {0,1,2,3}, the sign that of the permutation (i,j,k,l).
pub fn hodge_dual4(a: &DenseMatrix) -> DenseMatrix {
    assert_eq!(a.rows(), 4);
    let f = a.field();
    let mut s = DenseMatrix::zeros(f, 4, 4);
    let pairs = [((0, 1), (2, 3), false), ((0, 2), (1, 3), true), ((0, 3), (1, 2), false)];
    for &((i, j), (k, l), neg) in &pairs {
        let (x, y) = if neg { (f.neg(a.get(k, l)), f.neg(a.get(i, j))) } else { (a.get(k, l), a.get(i, j)) };
        s.set(i, j, x);
        s.set(j, i, f.neg(x));
        s.set(k, l, y);
        s.set(l, k, f.neg(y));
    }
    s
}

/// Γ_*(F_1) or Γ_*(F_2): the cokernel of the rank-2 section together with
/// the forms x0, x1 is F^∨, so the module is its dual.
pub fn example_f(field: PrimeField, which: u8) -> Result<PresentedModule> {
    let ring = Ring::new(field, 3);
    cokernel_bundle(ring, &example_matrix(field, which), &[ring.var(0), ring.var(1)])?.hom_dual()
}

/// Ω¹(1) ⊕ Ω²(3) on P³.
pub fn example_buchsbaum(field: PrimeField) -> Result<PresentedModule> {
    let ring = Ring::new(field, 3);
    PresentedModule::direct_sum(&[omega_form_module(ring, 1, 1)?, omega_form_module(ring, 2, 3)?])
}

/// Γ_*(O_X) for the twisted cubic and the coordinate ring of the smooth
/// rational quartic, as modules over k[s^d, t^d] = k[x0, x1].
pub fn monomial_curve_modules(field: PrimeField) -> Result<(PresentedModule, PresentedModule)> {
    let ring = Ring::new(field, 1);
    let x0 = ring.var(0);
    let x1 = ring.var(1);
    let z0 = ring.zero(0);
    let neg1 = ring.constant(field.neg(1));
    // generators 1 | s³, s²t, st², t³ with s³ = x0·1 and t³ = x1·1
    let cubic = GradedMap::new(
        ring,
        GradedFreeModule::new(vec![0, 1, 1, 1, 1]),
        GradedFreeModule::new(vec![1, 1]),
        vec![
            x0.clone(), x1.clone(),
            neg1.clone(), z0.clone(),
            z0.clone(), z0.clone(),
            z0.clone(), z0.clone(),
            z0.clone(), neg1,
        ],
    )?;
    // generators 1 | s³t, st³ | s⁶t², s²t⁶ with t⁴·s⁶t² = s⁴·s²t⁶
    let quartic = GradedMap::new(
        ring,
        GradedFreeModule::new(vec![0, 1, 1, 2, 2]),
        GradedFreeModule::new(vec![3]),
        vec![ring.zero(3), ring.zero(2), ring.zero(2), x1, x0.neg()],
    )?;
    Ok((PresentedModule::new(cubic), PresentedModule::new(quartic)))
}

fn random_form(ring: Ring, deg: u32, rng: &mut ChaCha8Rng) -> HomogPoly {
    let f = ring.field;
    let len = ring.dim(deg as i32);
    let v: Vec<u32> = (0..len).map(|_| rng.gen_range(0..f.p())).collect();
    HomogPoly::from_vector(f, ring.nvars(), deg, &v)
}

/// ⊕ S(ℓ_i) with redundant generators and a random graded change of
/// generators, so the splitting is not visible in the presentation.
pub fn obfuscated_line_sum(ring: Ring, twists: &[i32], seed: u64) -> Result<PresentedModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = ring.field;
    let mut degrees: Vec<i32> = twists.iter().map(|l| -l).collect();
    let base = degrees.len();
    // redundant generators g' = f·g_i
    let extra = 1 + rng.gen_range(0..=base.min(3));
    let mut rel_cols: Vec<(i32, Vec<(usize, HomogPoly)>)> = Vec::new();
    for _ in 0..extra {
        let i = rng.gen_range(0..base);
        let shift = rng.gen_range(0..=1u32);
        let d = degrees[i] + shift as i32;
        let g = degrees.len();
        degrees.push(d);
        let f = loop {
            let f = random_form(ring, shift, &mut rng);
            if !f.is_zero() {
                break f;
            }
        };
        rel_cols.push((d, vec![(g, ring.one()), (i, f.neg())]));
    }
    let rank = degrees.len();
    let sources: Vec<i32> = rel_cols.iter().map(|c| c.0).collect();
    let mut entries = vec![HomogPoly::zero(field, ring.nvars(), 0); rank * rel_cols.len()];
    for (j, (d, col)) in rel_cols.iter().enumerate() {
        for (i, p) in col {
            entries[i * rel_cols.len() + j] = p.clone();
        }
        for i in 0..rank {
            if entries[i * rel_cols.len() + j].is_zero() {
                entries[i * rel_cols.len() + j] = ring.zero((d - degrees[i]).max(0) as u32);
            }
        }
    }
    let target = GradedFreeModule::new(degrees.clone());
    let pres = GradedMap::new(ring, target.clone(), GradedFreeModule::new(sources), entries)?;
    // random automorphism P of F_0: entry (i,k) of degree deg_k − deg_i
    // when positive, invertible constants on equal degrees
    let mut order: Vec<usize> = (0..rank).collect();
    order.sort_by_key(|&i| (degrees[i], i));
    let mut p_entries = vec![HomogPoly::zero(field, ring.nvars(), 0); rank * rank];
    for (a, &i) in order.iter().enumerate() {
        for (b, &k) in order.iter().enumerate() {
            let gap = degrees[k] - degrees[i];
            let e = if i == k {
                ring.constant(rng.gen_range(1..field.p()))
            } else if gap < 0 || (gap == 0 && b < a) {
                ring.zero(gap.max(0) as u32)
            } else {
                random_form(ring, gap as u32, &mut rng)
            };
            p_entries[i * rank + k] = e;
        }
    }
    let p = GradedMap::new(ring, target.clone(), target, p_entries)?;
    Ok(PresentedModule::new(p.compose(&pres)?))
}

/// Declarative description of a module, the input of `construct --spec`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum BundleSpec {
    LineSum { n: usize, twists: Vec<i32> },
    /// Ω^p(ℓ) by form degree
    OmegaP { n: usize, p: usize, l: i32 },
    NullCorrelation { matrix: Vec<Vec<i64>> },
    CokernelPsi { matrix: Vec<Vec<i64>>, forms: Vec<String> },
    NamedExample { id: String },
}

fn matrix_from(field: PrimeField, rows: &[Vec<i64>]) -> Result<DenseMatrix> {
    let r = rows.len();
    if rows.iter().any(|row| row.len() != r) {
        return Err(Error::DimensionMismatch("matrix must be square".into()));
    }
    Ok(DenseMatrix::from_i64(field, rows))
}

impl BundleSpec {
    pub fn build(&self, field: PrimeField) -> Result<PresentedModule> {
        match self {
            BundleSpec::LineSum { n, twists } => Ok(PresentedModule::line_sum(Ring::new(field, *n), twists)),
            BundleSpec::OmegaP { n, p, l } => omega_form_module(Ring::new(field, *n), *p, *l),
            BundleSpec::NullCorrelation { matrix } => {
                let a = matrix_from(field, matrix)?;
                if a.rows() < 2 {
                    return Err(Error::DimensionMismatch("matrix too small".into()));
                }
                null_correlation_module(Ring::new(field, a.rows() - 1), &a)
            }
            BundleSpec::CokernelPsi { matrix, forms } => {
                let a = matrix_from(field, matrix)?;
                if a.rows() < 2 {
                    return Err(Error::DimensionMismatch("matrix too small".into()));
                }
                let ring = Ring::new(field, a.rows() - 1);
                let fs = forms
                    .iter()
                    .map(|s| {
                        parse_poly(s, field, ring.nvars())
                            .map_err(|e| Error::Parse { line: 1, col: e.col, msg: e.msg })
                    })
                    .collect::<Result<Vec<_>>>()?;
                cokernel_bundle(ring, &a, &fs)
            }
            BundleSpec::NamedExample { id } => named_example(id, field),
        }
    }
}

/// `F1 | F2 | rank5 | nc3 | buchs | curve3 | curve4 | omega:p:l | line:a,b,…`
/// (omega and line sums live on P³).
pub fn named_example(id: &str, field: PrimeField) -> Result<PresentedModule> {
    let p3 = Ring::new(field, 3);
    match id {
        "F1" => example_f(field, 1),
        "F2" => example_f(field, 2),
        "rank5" => example_rank5(field),
        "nc3" => null_correlation_module(p3, &standard_symplectic(field, 4)),
        "buchs" => example_buchsbaum(field),
        "curve3" => Ok(monomial_curve_modules(field)?.0),
        "curve4" => Ok(monomial_curve_modules(field)?.1),
        _ => {
            let bad = || Error::Invalid(format!("unknown example '{id}'"));
            if let Some(rest) = id.strip_prefix("omega:") {
                let (p, l) = rest.split_once(':').ok_or_else(bad)?;
                let p: usize = p.parse().map_err(|_| bad())?;
                let l: i32 = l.parse().map_err(|_| bad())?;
                omega_form_module(p3, p, l)
            } else if let Some(rest) = id.strip_prefix("line:") {
                let twists = rest
                    .split(',')
                    .map(|s| s.trim().parse::<i32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(PresentedModule::line_sum(p3, &twists))
            } else {
                Err(bad())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn null_correlation_betti() {
        let m = named_example("nc3", f()).unwrap();
        let b = m.resolution().unwrap().betti();
        assert_eq!(b.totals(), vec![5, 4, 1]);
        assert_eq!(b.degrees(0), vec![1; 5]);
        assert_eq!(b.degrees(1), vec![2; 4]);
        assert_eq!(b.degrees(2), vec![3]);
        let t = crate::cohomology::sheaf_cohomology_table(&m, -6, 4).unwrap();
        for d in -6..=4 {
            assert_eq!(t.get(1, d), (d == -1) as i64, "h1 at {d}");
            assert_eq!(t.get(2, d), (d == -3) as i64, "h2 at {d}");
        }
    }

    #[test]
    fn cone_keeps_superfluous_summand() {
        let ring = Ring::new(f(), 3);
        let a = standard_symplectic(f(), 4);
        let raw = null_correlation_cone(ring, &a, false).unwrap();
        assert_eq!(raw.betti().totals(), vec![6, 5, 1]);
        let pruned = null_correlation_cone(ring, &a, true).unwrap();
        assert_eq!(pruned.betti().totals(), vec![5, 4, 1]);
    }

    #[test]
    fn wrong_inputs() {
        let ring2 = Ring::new(f(), 2);
        assert!(matches!(null_correlation_module(ring2, &DenseMatrix::zeros(f(), 3, 3)), Err(Error::EvenN(2))));
        let ring = Ring::new(f(), 3);
        let a = example_matrix(f(), 1);
        assert!(matches!(null_correlation_module(ring, &a), Err(Error::WrongRank(_))));
        // x0, x3 and x0+x1+x2 leave the point (0:1:-1:0)
        assert!(matches!(cokernel_bundle(ring, &a, &[ring.var(0), ring.var(0)]), Err(Error::BadIdeal(_))));
    }

    #[test]
    fn curves() {
        let (c3, c4) = monomial_curve_modules(f()).unwrap();
        let r3 = c3.resolution().unwrap();
        assert_eq!(r3.length(), 0);
        assert_eq!(r3.module(0).degrees, vec![0, 1, 1]);
        assert!(c4.resolution().unwrap().length() > 0);
    }

    #[test]
    fn obfuscated_recovers_twists() {
        let ring = Ring::new(f(), 3);
        let m = obfuscated_line_sum(ring, &[-1, 2, 2], 7).unwrap();
        let r = m.resolution().unwrap();
        assert_eq!(r.length(), 0);
        let mut d = r.module(0).degrees.clone();
        d.sort();
        assert_eq!(d, vec![-2, -2, 1]);
    }

    #[test]
    fn hodge_star_is_an_involution() {
        let a = skew_from_upper(f(), 4, &[((0, 1), 1), ((0, 2), 2), ((0, 3), 3), ((1, 2), 4), ((1, 3), 5), ((2, 3), 6)]);
        let s = hodge_dual4(&a);
        assert_eq!(s.get(0, 1), 6);
        assert_eq!(s.get(0, 2), f().neg(5));
        assert_eq!(s.get(1, 3), f().neg(2));
        assert_eq!(hodge_dual4(&s), a);
    }

    #[test]
    fn spec_round_trip() {
        let s = BundleSpec::CokernelPsi {
            matrix: vec![vec![0, 0, 0, 1], vec![0, 0, 0, 1], vec![0, 0, 0, 1], vec![-1, -1, -1, 0]],
            forms: vec!["x0".into(), "x1".into()],
        };
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<BundleSpec>(&json).unwrap(), s);
        let m = s.build(f()).unwrap();
        assert_eq!(m.resolution().unwrap().hilbert_polynomial().sheaf_rank(), 4);
    }
}
