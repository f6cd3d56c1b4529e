use proptest::prelude::*;

use syzygy_forge::algebra::{mult_slice, parse_poly, DenseMatrix, HomogPoly, PrimeField};
use syzygy_forge::buchsbaum::{is_acm, pfaffian4, phi_zero_test, SkewForm};
use syzygy_forge::bundles::{named_example, obfuscated_line_sum, omega_module, skew_from_upper};
use syzygy_forge::cohomology::{bott_oracle, regularity, sheaf_cohomology_table};
use syzygy_forge::graded::{PresentedModule, Ring};
use syzygy_forge::multiproj::{is_zero_regular_linesum, kunneth_line_cohomology};

fn small() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn big() -> PrimeField {
    PrimeField::default()
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = DenseMatrix> {
    // values in 0..3 keep ranks interesting
    proptest::collection::vec(0u32..3, rows * cols)
        .prop_map(move |v| DenseMatrix::from_rows(small(), rows, cols, v))
}

fn form(nvars: usize, deg: u32) -> impl Strategy<Value = HomogPoly> {
    let len = syzygy_forge::algebra::basis_len(nvars, deg as i32);
    proptest::collection::vec(0u32..101, len).prop_map(move |v| HomogPoly::from_vector(small(), nvars, deg, &v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c))) {
        let k = m.kernel_vectors();
        prop_assert_eq!(m.rank() + k.len(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_finds_preimages(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c)), seed in 0u32..100) {
        let x: Vec<u32> = (0..m.cols()).map(|i| (seed + 7 * i as u32) % 101).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn multiplication_slices_compose(f in form(3, 1), g in form(3, 2), d in 0i32..3) {
        let lhs = mult_slice(&g, d + 1).mul(&mult_slice(&f, d));
        prop_assert_eq!(lhs, mult_slice(&f.mul(&g), d));
    }

    #[test]
    fn polynomial_display_parses_back(f in form(4, 3)) {
        let s = f.to_string();
        let g = parse_poly(&s, small(), 4).unwrap();
        prop_assert!(f.sub(&g).is_zero());
    }

    #[test]
    fn pfaffian_squares_to_determinant(v in proptest::collection::vec(-20i64..20, 6)) {
        let f = big();
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let upper: Vec<_> = pairs.iter().copied().zip(v.iter().copied()).collect();
        let a = SkewForm::new(skew_from_upper(f, 4, &upper));
        let pf = pfaffian4(&a);
        prop_assert_eq!(f.mul(pf, pf), a.matrix.det());
        prop_assert_eq!(pf == 0, a.rank() < 4);
        prop_assert!(a.rank().is_multiple_of(2));
    }

    #[test]
    fn kunneth_serre_duality(m in 1usize..4, n in 1usize..4, a in -8i64..8, b in -8i64..8) {
        let h = kunneth_line_cohomology(m, n, a, b);
        let d = kunneth_line_cohomology(m, n, -a - m as i64 - 1, -b - n as i64 - 1);
        for i in 0..=m + n {
            prop_assert_eq!(h[i], d[m + n - i]);
        }
    }

    #[test]
    fn zero_regularity_survives_positive_twists(
        twists in proptest::collection::vec((-3i64..3, -3i64..3), 1..4),
        s in 0i64..3, t in 0i64..3,
    ) {
        if is_zero_regular_linesum(2, 1, &twists) {
            let up: Vec<_> = twists.iter().map(|&(u, v)| (u + s, v + t)).collect();
            prop_assert!(is_zero_regular_linesum(2, 1, &up));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn twisted_forms_match_bott(n in 2usize..4, p in 0usize..4, l in -6i32..6) {
        prop_assume!(p <= n);
        let ring = Ring::new(big(), n);
        let m = omega_module(ring, p + 1, l).unwrap();
        let t = sheaf_cohomology_table(&m, -3, 3).unwrap();
        for d in -3..=3 {
            let want = bott_oracle(n, p, (l + d) as i64);
            for i in 0..=n {
                prop_assert_eq!(t.get(i, d), want[i]);
            }
        }
    }

    #[test]
    fn euler_characteristic_is_hilbert_polynomial(twists in proptest::collection::vec(-3i32..3, 1..4), q in 0usize..3, l in -2i32..3) {
        let ring = Ring::new(big(), 3);
        let m = PresentedModule::direct_sum(&[
            PresentedModule::line_sum(ring, &twists),
            omega_module(ring, q + 1, l).unwrap(),
        ]).unwrap();
        let t = sheaf_cohomology_table(&m, -6, 6).unwrap();
        let hp = m.resolution().unwrap().hilbert_polynomial();
        for d in -6..=6 {
            let chi: i64 = (0..=3).map(|i| if i % 2 == 0 { t.get(i, d) } else { -t.get(i, d) }).sum();
            prop_assert_eq!(chi, hp.eval(d as i64));
        }
    }

    #[test]
    fn twisting_shifts_regularity(id in prop::sample::select(vec!["nc3", "F1", "omega:1:0", "line:-1,2"]), l in -3i32..4) {
        let m = named_example(id, big()).unwrap();
        let r0 = regularity(&m).unwrap();
        let r1 = regularity(&m.twist(l)).unwrap();
        prop_assert_eq!(r1.sheaf, r0.sheaf.map(|v| v - l));
        prop_assert_eq!(r1.module, r0.module.map(|v| v - l));
    }

    #[test]
    fn obfuscated_sums_split(twists in proptest::collection::vec(-3i32..4, 1..5), seed in any::<u64>()) {
        let ring = Ring::new(big(), 3);
        let m = obfuscated_line_sum(ring, &twists, seed).unwrap();
        prop_assert!(is_acm(&m).unwrap());
        let res = m.resolution().unwrap();
        prop_assert_eq!(res.length(), 0);
        let mut got: Vec<i32> = res.module(0).degrees.iter().map(|d| -d).collect();
        got.sort();
        let mut want = twists.clone();
        want.sort();
        prop_assert_eq!(got, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn snake_zero_test_is_symmetric(
        id in prop::sample::select(vec!["nc3", "F1", "F2", "rank5"]),
        a in proptest::collection::vec(0u32..32003, 4),
        b in proptest::collection::vec(0u32..32003, 4),
    ) {
        prop_assume!(a.iter().any(|&x| x != 0) && b.iter().any(|&x| x != 0));
        let m = named_example(id, big()).unwrap();
        let ring = m.ring();
        let (y, z) = (ring.linear(&a), ring.linear(&b));
        // generic forms are nonzerodivisors on these bundles
        match (phi_zero_test(&m, &y, &z), phi_zero_test(&m, &z, &y)) {
            (Ok(u), Ok(v)) => prop_assert_eq!(u, v),
            _ => prop_assume!(false),
        }
    }
}
