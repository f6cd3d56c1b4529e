//! The regression suite behind `verify-paper` and the acceptance test:
//! eleven criteria, each a list of named exact checks.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{DenseMatrix, HomogPoly, PrimeField};
use crate::buchsbaum::{
    classify, fingerprint, is_acm, is_buchsbaum, is_quasi_buchsbaum, pfaffian4_signed, phi_value, phi_zero_test,
    BuchsbaumMode, BuchsbaumVerdict, SkewForm, Verdict,
};
use crate::bundles::{
    example_matrix, named_example, null_correlation_module, obfuscated_line_sum, omega_module, skew_from_upper,
    standard_symplectic,
};
use crate::cohomology::{bott_oracle, regularity, sheaf_cohomology_table};
use crate::error::Result;
use crate::graded::{PresentedModule, Ring};
use crate::multiproj::{check_splitting_conditions, is_zero_regular_linesum, kunneth_line_cohomology};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub field: PrimeField,
    pub seed: u64,
    /// flip the middle sign of the Pfaffian (mutation check)
    pub corrupt_pfaffian_sign: bool,
    /// criterion number or tag; None runs everything
    pub only: Option<String>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { field: PrimeField::default(), seed: 2024, corrupt_pfaffian_sign: false, only: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub tag: &'static str,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub millis: u128,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn summary_line(&self) -> String {
        let failed: Vec<&str> = self.checks.iter().filter(|c| !c.ok).map(|c| c.name.as_str()).collect();
        let status = if failed.is_empty() { "PASS" } else { "FAIL" };
        let mut s = format!("[{status}] {:>2} {:<13} {} ({} ms)", self.id, self.tag, self.title, self.millis);
        if !failed.is_empty() {
            s.push_str(&format!(" failed: {}", failed.join(", ")));
        }
        s
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), ok, detail: detail.into() });
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: impl Into<String>, got: T, want: T) {
        let ok = got == want;
        self.push(name, ok, format!("got {got:?}, want {want:?}"));
    }

    /// An engine error counts as a failed check rather than aborting the run.
    fn result<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.push(name, false, format!("{}: {e}", e.code()));
                None
            }
        }
    }
}

type Runner = fn(&VerifyOptions, &mut Checks);

pub const CRITERIA: [(usize, &str, &str); 11] = [
    (1, "bott", "Bott cross-validation of twisted forms"),
    (2, "nc", "null-correlation cohomology and Betti table"),
    (3, "classify", "classification regression"),
    (4, "rank5", "rank-5 quasi-Buchsbaum bundle"),
    (5, "horrocks", "obfuscated line sums split"),
    (6, "duality", "Serre duality and Euler characteristic"),
    (7, "phi", "snake-map symmetry and route consistency"),
    (8, "equivariance", "coordinate changes keep verdicts"),
    (9, "curves", "monomial curve modules"),
    (10, "multiproj", "line bundles on products"),
    (11, "nc", "null-correlation independent of the matrix"),
];

fn runner(id: usize) -> Runner {
    match id {
        1 => bott,
        2 => null_correlation,
        3 => classification,
        4 => rank5,
        5 => horrocks,
        6 => duality,
        7 => phi_routes,
        8 => equivariance,
        9 => curves,
        10 => multiproj,
        _ => nc_well_defined,
    }
}

fn selected(only: &Option<String>, id: usize, tag: &str) -> bool {
    match only {
        None => true,
        Some(s) => s.split(',').any(|t| {
            let t = t.trim();
            t == tag || t.parse::<usize>().ok() == Some(id)
        }),
    }
}

pub fn run_criterion(id: usize, opts: &VerifyOptions) -> CriterionReport {
    let (_, tag, title) = CRITERIA[id - 1];
    let start = Instant::now();
    let mut checks = Checks::default();
    runner(id)(opts, &mut checks);
    CriterionReport { id, tag, title, checks: checks.0, millis: start.elapsed().as_millis() }
}

/// Runs the selected criteria in order, calling `progress` after each one.
pub fn run_with(opts: &VerifyOptions, mut progress: impl FnMut(&CriterionReport)) -> Vec<CriterionReport> {
    let mut out = Vec::new();
    for &(id, tag, _) in &CRITERIA {
        if selected(&opts.only, id, tag) {
            let r = run_criterion(id, opts);
            progress(&r);
            out.push(r);
        }
    }
    out
}

pub fn run(opts: &VerifyOptions) -> Vec<CriterionReport> {
    run_with(opts, |_| {})
}

fn p3(opts: &VerifyOptions) -> Ring {
    Ring::new(opts.field, 3)
}

fn bott(opts: &VerifyOptions, c: &mut Checks) {
    for n in [2usize, 3] {
        let ring = Ring::new(opts.field, n);
        for p in 0..=n {
            let name = format!("n={n} p={p}");
            let Some(m) = c.result(&name, omega_module(ring, p + 1, 0)) else { continue };
            let Some(t) = c.result(&name, sheaf_cohomology_table(&m, -8, 8)) else { continue };
            let bad: Vec<(i32, usize)> = (-8..=8)
                .flat_map(|l| (0..=n).map(move |i| (l, i)))
                .filter(|&(l, i)| t.get(i, l) != bott_oracle(n, p, l as i64)[i])
                .collect();
            c.push(name, bad.is_empty(), format!("mismatches at (l, i): {bad:?}"));
        }
    }
}

fn nc_table_checks(c: &mut Checks, m: &PresentedModule, label: &str) {
    let Some(t) = c.result(label, sheaf_cohomology_table(m, -8, 8)) else { return };
    let h1: Vec<(i32, i64)> = (-8..=8).filter(|&d| t.get(1, d) != 0).map(|d| (d, t.get(1, d))).collect();
    let h2: Vec<(i32, i64)> = (-8..=8).filter(|&d| t.get(2, d) != 0).map(|d| (d, t.get(2, d))).collect();
    c.eq(format!("{label} h1 support"), h1, vec![(-1, 1)]);
    c.eq(format!("{label} h2 support"), h2, vec![(-3, 1)]);
    let h0: Vec<i32> = (-8..=0).filter(|&d| t.get(0, d) != 0).collect();
    c.eq(format!("{label} h0 vanishes for l <= 0"), h0, vec![]);
}

fn null_correlation(opts: &VerifyOptions, c: &mut Checks) {
    let Some(m) = c.result("nc3", named_example("nc3", opts.field)) else { return };
    nc_table_checks(c, &m, "nc3");
    if let Some(r) = c.result("regularity", regularity(&m)) {
        c.eq("sheaf regularity", r.sheaf, Some(1));
        c.eq("module regularity", r.module, Some(1));
    }
    if let Some(res) = c.result("resolution", m.resolution()) {
        let b = res.betti();
        c.eq("betti totals", b.totals(), vec![5, 4, 1]);
        c.eq("betti degrees", (0..3).map(|j| b.degrees(j)).collect::<Vec<_>>(), vec![vec![1; 5], vec![2; 4], vec![3]]);
    }
}

fn random_skew(rng: &mut ChaCha8Rng, field: PrimeField) -> SkewForm {
    let upper: Vec<_> = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        .into_iter()
        .map(|ij| (ij, rng.gen_range(-50i64..=50)))
        .collect();
    SkewForm::new(skew_from_upper(field, 4, &upper))
}

fn classification(opts: &VerifyOptions, c: &mut Checks) {
    let f = opts.field;
    let corrupt = opts.corrupt_pfaffian_sign;
    let pf = |a: &SkewForm| pfaffian4_signed(a, corrupt);
    let pf_sq_is_det = |a: &SkewForm| f.mul(pf(a), pf(a)) == a.matrix.det();

    if let Some(m) = c.result("nc3", named_example("nc3", f)) {
        if let Some(r) = c.result("nc3 classify", classify(&m, opts.seed)) {
            c.eq("nc3 verdict", r.verdict, Verdict::NonstandardBuchsbaum);
            let a = SkewForm::new(DenseMatrix::from_i64(f, r.matrix.as_deref().unwrap_or(&[])));
            c.push("nc3 pf != 0", a.size() == 4 && pf(&a) != 0, format!("pf = {}", f.to_symmetric(pf(&a))));
            c.push("nc3 pf^2 = det", a.size() == 4 && pf_sq_is_det(&a), "");
            c.eq("nc3 fingerprint matches null-correlation", r.null_correlation_fingerprint, Some(true));
        }
    }
    for (id, which) in [("F1", 1u8), ("F2", 2)] {
        let Some(m) = c.result(id, named_example(id, f)) else { continue };
        let Some(r) = c.result(id, classify(&m, opts.seed)) else { continue };
        c.eq(format!("{id} verdict"), r.verdict, Verdict::PseudoBuchsbaum);
        let got = SkewForm::new(DenseMatrix::from_i64(f, r.matrix.as_deref().unwrap_or(&[])));
        let want = SkewForm::new(example_matrix(f, which));
        if got.size() != 4 {
            c.push(format!("{id} matrix"), false, "no matrix recovered");
            continue;
        }
        c.eq(format!("{id} rank"), got.rank(), 2);
        c.eq(format!("{id} rank matches printed"), got.rank(), want.rank());
        c.eq(format!("{id} radical dim matches printed"), 4 - got.rank(), 4 - want.rank());
        c.eq(format!("{id} pf"), pf(&got), 0);
        c.eq(format!("{id} pf matches printed"), pf(&got), pf(&want));
        c.push(format!("{id} pf^2 = det"), pf_sq_is_det(&got), "");
    }
    if let Some(m) = c.result("buchs", named_example("buchs", f)) {
        if let Some(r) = c.result("buchs classify", classify(&m, opts.seed)) {
            c.eq("buchs verdict", r.verdict, Verdict::Buchsbaum);
            c.eq("buchs rank", r.rank, Some(0));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let bad = (0..20).filter(|_| !pf_sq_is_det(&random_skew(&mut rng, f))).count();
    c.push("pf^2 = det on 20 random skew matrices", bad == 0, format!("{bad} failures"));
}

fn rank5(opts: &VerifyOptions, c: &mut Checks) {
    let Some(m) = c.result("rank5", named_example("rank5", opts.field)) else { return };
    if let Some(v) = c.result("quasi-Buchsbaum", is_quasi_buchsbaum(&m)) {
        c.eq("quasi-Buchsbaum", v, true);
    }
    if let Some(v) = c.result("Buchsbaum", is_buchsbaum(&m, BuchsbaumMode::Randomized, 20, opts.seed)) {
        c.eq("Buchsbaum (randomized, 20)", v, BuchsbaumVerdict::False);
    }
    let Some(t) = c.result("table", sheaf_cohomology_table(&m, -8, 8)) else { return };
    let h1: Vec<(i32, i64)> = (-8..=8).filter(|&d| t.get(1, d) != 0).map(|d| (d, t.get(1, d))).collect();
    let h2: Vec<(i32, i64)> = (-8..=8).filter(|&d| t.get(2, d) != 0).map(|d| (d, t.get(2, d))).collect();
    c.eq("h1 = 2 at d = -2", h1, vec![(-2, 2)]);
    c.eq("h2 = 1 at d = 0", h2, vec![(0, 1)]);
    if let Some(res) = c.result("resolution", m.resolution()) {
        c.eq("sheaf rank", res.hilbert_polynomial().sheaf_rank(), 5);
    }
}

fn horrocks(opts: &VerifyOptions, c: &mut Checks) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    for k in 0..20 {
        let n = if k % 2 == 0 { 3 } else { 2 };
        let ring = Ring::new(opts.field, n);
        let len = rng.gen_range(1..=4);
        let mut twists: Vec<i32> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
        let seed = rng.gen();
        let name = format!("sum {k} on P{n} {twists:?}");
        let Some(m) = c.result(&name, obfuscated_line_sum(ring, &twists, seed)) else { continue };
        let acm = c.result(&name, is_acm(&m)).unwrap_or(false);
        let Some(res) = c.result(&name, m.resolution()) else { continue };
        let mut got: Vec<i32> = res.module(0).degrees.iter().map(|d| -d).collect();
        got.sort();
        twists.sort();
        let ok = acm && res.length() == 0 && got == twists;
        c.push(name, ok, format!("acm {acm}, length {}, twists {got:?}", res.length()));
    }
}

const DUALITY_FIXTURES: [&str; 8] = ["line:0", "line:-2,1,3", "omega:1:0", "omega:2:1", "nc3", "F1", "F2", "rank5"];

fn duality(opts: &VerifyOptions, c: &mut Checks) {
    for id in DUALITY_FIXTURES {
        let Some(m) = c.result(id, named_example(id, opts.field)) else { continue };
        let Some(dual) = c.result(id, m.hom_dual()) else { continue };
        if let Some(ok) = c.result(id, crate::cohomology::serre_duality_check(&m, &dual, -8, 8)) {
            c.push(format!("{id} duality"), ok, "");
        }
        let Some(t) = c.result(id, sheaf_cohomology_table(&m, -8, 8)) else { continue };
        let Some(res) = c.result(id, m.resolution()) else { continue };
        let hp = res.hilbert_polynomial();
        let bad: Vec<i32> = (-8..=8)
            .filter(|&d| {
                let chi: i64 = (0..=t.n).map(|i| if i % 2 == 0 { t.get(i, d) } else { -t.get(i, d) }).sum();
                chi != hp.eval(d as i64)
            })
            .collect();
        c.push(format!("{id} euler"), bad.is_empty(), format!("mismatch at {bad:?}"));
    }
}

fn random_linear(ring: Ring, rng: &mut ChaCha8Rng) -> HomogPoly {
    let p = ring.field.p();
    loop {
        let v: Vec<u32> = (0..ring.nvars()).map(|_| rng.gen_range(0..p)).collect();
        if v.iter().any(|&x| x != 0) {
            return ring.linear(&v);
        }
    }
}

/// The (1,1)-type quasi-Buchsbaum fixtures, normalized.
fn normalized_fixtures(opts: &VerifyOptions, c: &mut Checks) -> Vec<(&'static str, PresentedModule)> {
    let mut out = Vec::new();
    for id in ["nc3", "F1", "F2", "buchs"] {
        let Some(m) = c.result(id, named_example(id, opts.field)) else { continue };
        let Some(r) = c.result(id, classify(&m, opts.seed)) else { continue };
        out.push((id, m.twist(r.twist_used)));
    }
    out
}

fn phi_routes(opts: &VerifyOptions, c: &mut Checks) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x4747);
    let mut fixtures = normalized_fixtures(opts, c);
    if let Some(m) = c.result("rank5", named_example("rank5", opts.field)) {
        fixtures.push(("rank5", m));
    }
    for (id, m) in &fixtures {
        let ring = m.ring();
        let mut asym = 0;
        let mut errors = 0;
        for _ in 0..50 {
            let (y, z) = (random_linear(ring, &mut rng), random_linear(ring, &mut rng));
            match (phi_zero_test(m, &y, &z), phi_zero_test(m, &z, &y)) {
                (Ok(a), Ok(b)) if a == b => {}
                (Ok(_), Ok(_)) => asym += 1,
                _ => errors += 1,
            }
        }
        c.push(format!("{id} symmetric on 50 pairs"), asym == 0 && errors == 0, format!("{asym} asymmetric, {errors} errors"));
        if *id == "rank5" {
            continue;
        }
        let mut mismatch = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                if i == j {
                    continue;
                }
                let v = phi_value(m, i, j);
                let z = phi_zero_test(m, &ring.var(i), &ring.var(j));
                match (v, z) {
                    (Ok(v), Ok(z)) if (v == 0) == z => {}
                    _ => mismatch.push((i, j)),
                }
            }
        }
        c.push(format!("{id} phi_value = 0 iff zero test"), mismatch.is_empty(), format!("mismatch at {mismatch:?}"));
    }
}

fn random_invertible(rng: &mut ChaCha8Rng, field: PrimeField, n: usize) -> DenseMatrix {
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..field.p())).collect();
        let m = DenseMatrix::from_rows(field, n, n, data);
        if m.rank() == n {
            return m;
        }
    }
}

fn equivariance(opts: &VerifyOptions, c: &mut Checks) {
    let f = opts.field;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xc0de);
    for id in ["nc3", "F1", "F2", "buchs", "rank5", "line:-1,2"] {
        let Some(m) = c.result(id, named_example(id, f)) else { continue };
        let Some(base) = c.result(id, classify(&m, opts.seed)) else { continue };
        let mut bad = Vec::new();
        for k in 0..10 {
            let p = random_invertible(&mut rng, f, 4);
            match classify(&m.change_coordinates(&p), opts.seed) {
                Ok(r) if r.verdict == base.verdict && r.rank == base.rank => {}
                Ok(r) => bad.push(format!("#{k}: {:?} rank {:?}", r.verdict, r.rank)),
                Err(e) => bad.push(format!("#{k}: {}", e.code())),
            }
        }
        c.push(format!("{id} under 10 coordinate changes"), bad.is_empty(), format!("base {:?}; {}", base.verdict, bad.join("; ")));
    }
}

fn curves(opts: &VerifyOptions, c: &mut Checks) {
    let Some((c3, c4)) = c.result("curves", crate::bundles::monomial_curve_modules(opts.field)) else { return };
    if let Some(r) = c.result("cubic", c3.resolution()) {
        c.eq("cubic resolution length", r.length(), 0);
    }
    if let Some(r) = c.result("quartic", c4.resolution()) {
        c.push("quartic not free", r.length() > 0, format!("length {}", r.length()));
    }
    if let Some(v) = c.result("quartic randomized", is_buchsbaum(&c4, BuchsbaumMode::Randomized, 20, opts.seed)) {
        c.eq("quartic randomized (20)", v, BuchsbaumVerdict::ProbablyTrue);
    }
    if let Some(v) = c.result("quartic koszul", is_buchsbaum(&c4, BuchsbaumMode::Koszul, 0, opts.seed)) {
        c.eq("quartic koszul", v, BuchsbaumVerdict::True);
    }
}

fn multiproj(opts: &VerifyOptions, c: &mut Checks) {
    c.eq("O 0-regular on P1xP1", is_zero_regular_linesum(1, 1, &[(0, 0)]), true);
    for (m, n) in [(1usize, 1usize), (2, 1), (2, 2)] {
        let h = kunneth_line_cohomology(m, n, -(m as i64) - 1, 0);
        c.push(format!("h^{m}(O(-{},0)) on P{m}xP{n}", m + 1), h[m] != 0, format!("{h:?}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5252);
    for k in 0..10 {
        let len = rng.gen_range(1..=4);
        let twists: Vec<(i64, i64)> = (0..len)
            .map(|_| {
                let u = rng.gen_range(-4..=4);
                (u, u + rng.gen_range(-2..=2))
            })
            .collect();
        match check_splitting_conditions(2, &twists, 8) {
            Ok(v) => c.push(format!("band sum {k} {twists:?}"), v, ""),
            Err(e) => c.push(format!("band sum {k}"), false, e.to_string()),
        }
    }
}

fn nc_well_defined(opts: &VerifyOptions, c: &mut Checks) {
    let f = opts.field;
    let ring = p3(opts);
    let a = standard_symplectic(f, 4);
    let b = skew_from_upper(f, 4, &[((0, 1), 1), ((0, 2), 2), ((0, 3), 3), ((1, 2), 4), ((1, 3), 5), ((2, 3), 6)]);
    let Some(ma) = c.result("standard", null_correlation_module(ring, &a)) else { return };
    let Some(mb) = c.result("second matrix", null_correlation_module(ring, &b)) else { return };
    let fa = c.result("fingerprint", fingerprint(&ma, -8, 8));
    let fb = c.result("fingerprint", fingerprint(&mb, -8, 8));
    if let (Some(fa), Some(fb)) = (fa, fb) {
        c.push("fingerprints agree", fa == fb, "");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_by_tag_and_number() {
        let only = Some("nc".to_string());
        let ids: Vec<usize> = CRITERIA.iter().filter(|(id, tag, _)| selected(&only, *id, tag)).map(|c| c.0).collect();
        assert_eq!(ids, vec![2, 11]);
        assert!(selected(&Some("3,10".into()), 10, "multiproj"));
        assert!(!selected(&Some("3".into()), 10, "multiproj"));
    }

    #[test]
    fn corrupted_pfaffian_is_caught() {
        let opts = VerifyOptions { corrupt_pfaffian_sign: true, ..VerifyOptions::default() };
        let mut c = Checks::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = opts.field;
        let bad = (0..20)
            .filter(|_| {
                let a = random_skew(&mut rng, f);
                let p = pfaffian4_signed(&a, true);
                f.mul(p, p) != a.matrix.det()
            })
            .count();
        c.push("mutation", bad > 0, "");
        assert!(c.0[0].ok);
    }
}
