//! Monomials, degree-d monomial bases and homogeneous polynomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use super::field::PrimeField;
use super::matrix::DenseMatrix;

/// Exponent vector. Ordered by total degree, then lexicographically, so
/// x0 > x1 > ... within a degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of one degree, largest first, with a reverse index.
#[derive(Debug)]
pub struct MonomialBasis {
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> usize {
        self.index[m]
    }
}

fn enumerate(nvars: usize, d: u32, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
    if prefix.len() + 1 == nvars {
        prefix.push(d as u16);
        out.push(Monomial(prefix.clone()));
        prefix.pop();
        return;
    }
    for e in (0..=d).rev() {
        prefix.push(e as u16);
        enumerate(nvars, d - e, prefix, out);
        prefix.pop();
    }
}

type BasisCache = RwLock<HashMap<(usize, u32), Arc<MonomialBasis>>>;
type ShiftCache = RwLock<HashMap<(usize, u32, usize), Arc<Vec<usize>>>>;

fn basis_cache() -> &'static BasisCache {
    static C: OnceLock<BasisCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn shift_cache() -> &'static ShiftCache {
    static C: OnceLock<ShiftCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Basis of the degree-d part of k[x_0..x_{nvars-1}]; empty for d < 0.
pub fn basis(nvars: usize, d: i32) -> Arc<MonomialBasis> {
    if d < 0 || nvars == 0 {
        let monomials = if nvars == 0 && d == 0 { vec![Monomial(vec![])] } else { vec![] };
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        return Arc::new(MonomialBasis { monomials, index });
    }
    let key = (nvars, d as u32);
    if let Some(b) = basis_cache().read().unwrap().get(&key) {
        return b.clone();
    }
    let mut monomials = Vec::new();
    enumerate(nvars, d as u32, &mut Vec::with_capacity(nvars), &mut monomials);
    let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let b = Arc::new(MonomialBasis { monomials, index });
    basis_cache().write().unwrap().insert(key, b.clone());
    b
}

/// `monomial_basis(n, d)`: monomials of degree d in n+1 variables.
pub fn monomial_basis(n: usize, d: u32) -> Vec<Monomial> {
    basis(n + 1, d as i32).monomials.clone()
}

/// For each monomial of degree d, the index of x_k times it in degree d+1.
pub fn var_shift(nvars: usize, d: i32, k: usize) -> Arc<Vec<usize>> {
    if d < 0 {
        return Arc::new(Vec::new());
    }
    let key = (nvars, d as u32, k);
    if let Some(t) = shift_cache().read().unwrap().get(&key) {
        return t.clone();
    }
    let src = basis(nvars, d);
    let dst = basis(nvars, d + 1);
    let t: Vec<usize> = src
        .monomials
        .iter()
        .map(|m| {
            let mut e = m.clone();
            e.0[k] += 1;
            dst.index_of(&e)
        })
        .collect();
    let t = Arc::new(t);
    shift_cache().write().unwrap().insert(key, t.clone());
    t
}

/// Number of monomials of degree d in nvars variables.
pub fn basis_len(nvars: usize, d: i32) -> usize {
    if d < 0 {
        return 0;
    }
    if nvars == 0 {
        return usize::from(d == 0);
    }
    crate::algebra::binomial(d as i64 + nvars as i64 - 1, nvars as i64 - 1) as usize
}

/// Homogeneous polynomial. Zero polynomials keep a nominal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogPoly {
    field: PrimeField,
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, u32>,
}

impl HomogPoly {
    pub fn zero(field: PrimeField, nvars: usize, degree: u32) -> Self {
        HomogPoly { field, nvars, degree, terms: BTreeMap::new() }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: u32) -> Self {
        let mut p = Self::zero(field, nvars, 0);
        if !c.is_multiple_of(field.p()) {
            p.terms.insert(Monomial::one(nvars), c % field.p());
        }
        p
    }

    pub fn var(field: PrimeField, nvars: usize, k: usize) -> Self {
        Self::monomial(field, Monomial::var(nvars, k), 1)
    }

    pub fn monomial(field: PrimeField, m: Monomial, c: u32) -> Self {
        let mut p = Self::zero(field, m.nvars(), m.degree());
        if c != 0 {
            p.terms.insert(m, c);
        }
        p
    }

    /// Linear form Σ c_k x_k.
    pub fn linear(field: PrimeField, coeffs: &[u32]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(field, n, 1);
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                p.terms.insert(Monomial::var(n, k), c);
            }
        }
        p
    }

    /// Build from (monomial, coefficient) pairs; panics on inhomogeneous input.
    pub fn from_terms(field: PrimeField, nvars: usize, degree: u32, terms: Vec<(Monomial, u32)>) -> Self {
        let mut p = Self::zero(field, nvars, degree);
        for (m, c) in terms {
            assert_eq!(m.degree(), degree, "inhomogeneous term");
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn degree(&self) -> u32 {
        self.degree
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &u32)> {
        self.terms.iter()
    }
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// The value if this is a constant (degree 0), zero included.
    pub fn as_constant(&self) -> Option<u32> {
        if self.degree == 0 || self.is_zero() {
            Some(self.terms.values().next().copied().unwrap_or(0))
        } else {
            None
        }
    }

    /// Coefficients of a linear form.
    pub fn linear_coeffs(&self) -> Vec<u32> {
        assert!(self.degree == 1 || self.is_zero(), "not a linear form");
        (0..self.nvars).map(|k| self.coeff(&Monomial::var(self.nvars, k))).collect()
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        use std::collections::btree_map::Entry;
        if c == 0 {
            return;
        }
        let f = self.field;
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                let v = f.add(*o.get(), c);
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn check_compat(&self, other: &HomogPoly) {
        assert_eq!(self.nvars, other.nvars, "polynomials from different rings");
    }

    pub fn add(&self, other: &HomogPoly) -> HomogPoly {
        self.check_compat(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "adding polynomials of different degrees");
        let mut r = self.clone();
        for (m, &c) in &other.terms {
            r.add_term(m.clone(), c);
        }
        r
    }

    pub fn neg(&self) -> HomogPoly {
        let f = self.field;
        HomogPoly {
            field: f,
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &HomogPoly) -> HomogPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> HomogPoly {
        let f = self.field;
        if c.is_multiple_of(f.p()) {
            return Self::zero(f, self.nvars, self.degree);
        }
        HomogPoly {
            field: f,
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, &v)| (m.clone(), f.mul(v, c))).collect(),
        }
    }

    pub fn mul(&self, other: &HomogPoly) -> HomogPoly {
        self.check_compat(other);
        let f = self.field;
        let mut r = Self::zero(f, self.nvars, self.degree + other.degree);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                r.add_term(a.mul(b), f.mul(ca, cb));
            }
        }
        r
    }

    /// Coefficient vector in the monomial basis of its degree.
    pub fn to_vector(&self) -> Vec<u32> {
        let b = basis(self.nvars, self.degree as i32);
        let mut v = vec![0; b.len()];
        for (m, &c) in &self.terms {
            v[b.index_of(m)] = c;
        }
        v
    }

    pub fn from_vector(field: PrimeField, nvars: usize, degree: u32, v: &[u32]) -> HomogPoly {
        let b = basis(nvars, degree as i32);
        assert_eq!(b.len(), v.len());
        let mut p = Self::zero(field, nvars, degree);
        for (m, &c) in b.monomials.iter().zip(v) {
            if c != 0 {
                p.terms.insert(m.clone(), c);
            }
        }
        p
    }

    /// Substitute x_k ↦ images[k], where every image is a linear form in
    /// a possibly different number of variables.
    pub fn substitute(&self, images: &[HomogPoly]) -> HomogPoly {
        assert_eq!(images.len(), self.nvars);
        let f = self.field;
        let nv = images.first().map_or(0, |p| p.nvars);
        let mut out = Self::zero(f, nv, self.degree);
        let mut powers: Vec<Vec<HomogPoly>> =
            images.iter().map(|l| vec![HomogPoly::constant(f, nv, 1), l.clone()]).collect();
        for (m, &c) in &self.terms {
            let mut t = HomogPoly::constant(f, nv, c);
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[k].len() <= e as usize {
                    let next = powers[k].last().unwrap().mul(&images[k]);
                    powers[k].push(next);
                }
                t = t.mul(&powers[k][e as usize]);
            }
            out = out.add(&t);
        }
        out.degree = self.degree;
        out
    }
}

/// Matrix of multiplication by f from degree d to degree d + deg f.
pub fn mult_slice(f: &HomogPoly, d: i32) -> DenseMatrix {
    let nv = f.nvars();
    let src = basis(nv, d);
    let dst = basis(nv, d + f.degree() as i32);
    let mut m = DenseMatrix::zeros(f.field(), dst.len(), src.len());
    if f.is_zero() {
        return m;
    }
    for (j, u) in src.monomials.iter().enumerate() {
        for (t, &c) in f.terms() {
            m.add_to(dst.index_of(&u.mul(t)), j, c);
        }
    }
    m
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let f = self.field;
        for (i, (m, &c)) in self.terms.iter().rev().enumerate() {
            let s = f.to_symmetric(c);
            let (neg, a) = if s < 0 { (true, -s) } else { (false, s) };
            if i == 0 {
                if neg {
                    write!(out, "-")?;
                }
            } else {
                write!(out, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for (k, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{k}")),
                    _ => factors.push(format!("x{k}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(out, "{a}")?;
            } else if a == 1 {
                write!(out, "{}", factors.join("*"))?;
            } else {
                write!(out, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn basis_counts_and_order() {
        assert_eq!(monomial_basis(3, 0).len(), 1);
        assert_eq!(monomial_basis(3, 2).len(), 10);
        let b = monomial_basis(1, 3);
        let e: Vec<Vec<u16>> = b.into_iter().map(|m| m.0).collect();
        assert_eq!(e, vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
    }

    #[test]
    fn mult_by_one_is_identity() {
        let one = HomogPoly::constant(f(), 4, 1);
        assert_eq!(mult_slice(&one, 2), DenseMatrix::identity(f(), 10));
    }

    #[test]
    fn mult_by_x0_on_p1() {
        let x0 = HomogPoly::var(f(), 2, 0);
        let m = mult_slice(&x0, 1);
        // x0 -> x0^2 (index 0), x1 -> x0 x1 (index 1)
        let want = DenseMatrix::from_i64(f(), &[vec![1, 0], vec![0, 1], vec![0, 0]]);
        assert_eq!(m, want);
    }

    #[test]
    fn linearity_of_mult_slice() {
        let x0 = HomogPoly::var(f(), 3, 0);
        let x1 = HomogPoly::var(f(), 3, 1);
        let s = x0.add(&x1);
        assert_eq!(mult_slice(&s, 2), mult_slice(&x0, 2).add(&mult_slice(&x1, 2)));
    }

    #[test]
    fn cancellation_removes_terms() {
        let x0 = HomogPoly::var(f(), 2, 0);
        assert!(x0.sub(&x0).is_zero());
    }

    #[test]
    fn substitution_of_linear_forms() {
        let fl = f();
        // x0*x1 with x0 -> y0 + y1, x1 -> y0 - y1 gives y0^2 - y1^2
        let p = HomogPoly::var(fl, 2, 0).mul(&HomogPoly::var(fl, 2, 1));
        let l0 = HomogPoly::linear(fl, &[1, 1]);
        let l1 = HomogPoly::linear(fl, &[1, fl.from_i64(-1)]);
        let q = p.substitute(&[l0, l1]);
        assert_eq!(q.to_string(), "x0^2 - x1^2");
    }
}
