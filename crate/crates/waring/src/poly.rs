//! Dense homogeneous polynomial arithmetic and the monomial-index
//! bookkeeping every other module depends on.
//!
//! The monomial order is fixed globally: graded reverse lexicographic with
//! `x0 > x1 > ... > xn`, listed in descending order, so index 0 is always
//! `x0^d`. For two multidegrees `a != b` of the same total degree, `a` comes
//! before `b` exactly when the last nonzero entry of `a - b` is negative.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::scalar::Scalar;

/// Exponent vector of a monomial in `n+1` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multidegree(pub Vec<u32>);

impl Multidegree {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }
}

/// `binomial(n, k)` as u128; callers keep arguments small enough that this
/// never overflows.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of monomials of total degree `d` in `nvars` variables.
pub fn monomial_count(nvars: usize, d: usize) -> usize {
    binomial(nvars - 1 + d, d) as usize
}

/// `d! / (a0! a1! ... an!)` for `sum(ai) = d`.
pub fn multinomial(d: usize, exps: &[u32]) -> u128 {
    let mut acc: u128 = 1;
    let mut rem = d;
    for &e in exps {
        acc *= binomial(rem, e as usize);
        rem -= e as usize;
    }
    acc
}

/// Descending grevlex comparator: `Less` means `a` is listed first.
pub fn grevlex_desc_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let da: usize = a.iter().map(|&e| e as usize).sum();
    let db: usize = b.iter().map(|&e| e as usize).sum();
    // Higher total degree sorts first so that mixed lists stay graded.
    match db.cmp(&da) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // Last differing entry: a - b negative means a is grevlex-larger.
            return if a[i] < b[i] { Ordering::Less } else { Ordering::Greater };
        }
    }
    Ordering::Equal
}

/// All multidegrees of a fixed total degree together with the inverse index
/// map. Built once per `(nvars, degree)` and shared.
pub struct MonomialBasis {
    pub nvars: usize,
    pub degree: usize,
    list: Vec<Multidegree>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    fn build(nvars: usize, degree: usize) -> MonomialBasis {
        let mut list = Vec::with_capacity(monomial_count(nvars, degree));
        let mut current = vec![0u32; nvars];
        enumerate_compositions(degree as u32, 0, &mut current, &mut list);
        list.sort_by(|a, b| grevlex_desc_cmp(&a.0, &b.0));
        let index = list
            .iter()
            .enumerate()
            .map(|(i, m)| (m.0.clone(), i))
            .collect();
        MonomialBasis {
            nvars,
            degree,
            list,
            index,
        }
    }

    pub fn get(nvars: usize, degree: usize) -> Arc<MonomialBasis> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<MonomialBasis>>>> =
            OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard
            .entry((nvars, degree))
            .or_insert_with(|| Arc::new(MonomialBasis::build(nvars, degree)))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn multidegree(&self, ix: usize) -> &Multidegree {
        &self.list[ix]
    }

    pub fn index_of(&self, m: &Multidegree) -> Option<usize> {
        self.index.get(&m.0).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Multidegree> {
        self.list.iter()
    }
}

fn enumerate_compositions(rem: u32, pos: usize, current: &mut Vec<u32>, out: &mut Vec<Multidegree>) {
    if pos + 1 == current.len() {
        current[pos] = rem;
        out.push(Multidegree(current.clone()));
        current[pos] = 0;
        return;
    }
    for e in (0..=rem).rev() {
        current[pos] = e;
        enumerate_compositions(rem - e, pos + 1, current, out);
    }
    current[pos] = 0;
}

/// Rank of `m` in the descending grevlex listing of its degree block.
///
/// Panics if the entries of `m` do not sum to `degree` or the variable count
/// disagrees; that is a caller contract violation.
pub fn monomial_index(m: &Multidegree, nvars: usize, degree: usize) -> usize {
    assert_eq!(m.0.len(), nvars, "multidegree has wrong variable count");
    assert_eq!(m.total_degree(), degree, "multidegree has wrong total degree");
    MonomialBasis::get(nvars, degree)
        .index_of(m)
        .expect("multidegree of matching degree is always in the basis")
}

/// Inverse of [`monomial_index`].
pub fn multidegree_of(index: usize, nvars: usize, degree: usize) -> Multidegree {
    MonomialBasis::get(nvars, degree).multidegree(index).clone()
}

/// Dense homogeneous polynomial of fixed degree in `nvars` variables, with
/// coefficients indexed by the global grevlex order.
#[derive(Clone, Debug, PartialEq)]
pub struct HomPoly<T: Scalar> {
    nvars: usize,
    degree: usize,
    coeffs: Vec<T>,
}

impl<T: Scalar> HomPoly<T> {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        HomPoly {
            nvars,
            degree,
            coeffs: vec![T::zero(); monomial_count(nvars, degree)],
        }
    }

    pub fn from_coeffs(nvars: usize, degree: usize, coeffs: Vec<T>) -> Self {
        assert_eq!(coeffs.len(), monomial_count(nvars, degree));
        HomPoly {
            nvars,
            degree,
            coeffs,
        }
    }

    /// The monomial `c * x^m`.
    pub fn monomial(nvars: usize, m: &Multidegree, c: T) -> Self {
        let degree = m.total_degree();
        let mut p = HomPoly::zero(nvars, degree);
        let ix = monomial_index(m, nvars, degree);
        p.coeffs[ix] = c;
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, ix: usize) -> &T {
        &self.coeffs[ix]
    }

    pub fn coeff_of(&self, m: &Multidegree) -> &T {
        &self.coeffs[monomial_index(m, self.nvars, self.degree)]
    }

    pub fn set_coeff(&mut self, ix: usize, c: T) {
        self.coeffs[ix] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nvars, self.degree), (other.nvars, other.degree));
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        HomPoly {
            nvars: self.nvars,
            degree: self.degree,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.nvars, self.degree), (other.nvars, other.degree));
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        HomPoly {
            nvars: self.nvars,
            degree: self.degree,
            coeffs,
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.clone() * c.clone()).collect();
        HomPoly {
            nvars: self.nvars,
            degree: self.degree,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| -a.clone()).collect();
        HomPoly {
            nvars: self.nvars,
            degree: self.degree,
            coeffs,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let nvars = self.nvars;
        let dc = self.degree + other.degree;
        let ba = MonomialBasis::get(nvars, self.degree);
        let bb = MonomialBasis::get(nvars, other.degree);
        let bc = MonomialBasis::get(nvars, dc);
        let mut out = vec![T::zero(); bc.len()];
        for (ia, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let ma = ba.multidegree(ia);
            for (ib, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let mb = bb.multidegree(ib);
                let sum: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                let ix = bc.index_of(&Multidegree(sum)).unwrap();
                out[ix] = out[ix].clone() + ca.clone() * cb.clone();
            }
        }
        HomPoly {
            nvars,
            degree: dc,
            coeffs: out,
        }
    }

    /// Partial derivative with respect to variable `i`; degree drops by one.
    pub fn partial_derivative(&self, i: usize) -> Self {
        assert!(self.degree >= 1, "cannot differentiate a constant block");
        assert!(i < self.nvars);
        let src = MonomialBasis::get(self.nvars, self.degree);
        let dst = MonomialBasis::get(self.nvars, self.degree - 1);
        let mut out = vec![T::zero(); dst.len()];
        for (ix, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = src.multidegree(ix);
            if m.0[i] == 0 {
                continue;
            }
            let mut lowered = m.0.clone();
            lowered[i] -= 1;
            let e = m.0[i] as i64;
            let j = dst.index_of(&Multidegree(lowered)).unwrap();
            out[j] = out[j].clone() + c.clone() * T::from_int(e);
        }
        HomPoly {
            nvars: self.nvars,
            degree: self.degree - 1,
            coeffs: out,
        }
    }

    pub fn evaluate(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.nvars);
        let basis = MonomialBasis::get(self.nvars, self.degree);
        // Powers of each coordinate up to the degree.
        let mut pows: Vec<Vec<T>> = Vec::with_capacity(self.nvars);
        for p in point {
            let mut row = Vec::with_capacity(self.degree + 1);
            row.push(T::one());
            for k in 1..=self.degree {
                let prev = row[k - 1].clone();
                row.push(prev * p.clone());
            }
            pows.push(row);
        }
        let mut acc = T::zero();
        for (ix, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = basis.multidegree(ix);
            let mut term = c.clone();
            for (j, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term * pows[j][e as usize].clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Substitute `x_i -> sum_j rows[i][j] * y_j`; the result lives in
    /// `rows[0].len()` variables and has the same degree.
    pub fn substitute_linear(&self, rows: &[Vec<T>]) -> Self {
        assert_eq!(rows.len(), self.nvars);
        let new_nvars = rows[0].len();
        let basis = MonomialBasis::get(self.nvars, self.degree);
        // Cache powers of each substituted linear form.
        let mut pows: Vec<Vec<HomPoly<T>>> = Vec::with_capacity(self.nvars);
        for row in rows {
            assert_eq!(row.len(), new_nvars);
            let lin = HomPoly::from_coeffs(new_nvars, 1, row.clone());
            pows.push(vec![HomPoly::constant_one(new_nvars), lin]);
        }
        let mut out = HomPoly::zero(new_nvars, self.degree);
        for (ix, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = basis.multidegree(ix);
            let mut term: Option<HomPoly<T>> = None;
            for (j, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while pows[j].len() <= e as usize {
                    let next = pows[j].last().unwrap().mul(&pows[j][1]);
                    pows[j].push(next);
                }
                let factor = &pows[j][e as usize];
                term = Some(match term {
                    None => factor.clone(),
                    Some(t) => t.mul(factor),
                });
            }
            let term = term.expect("degree >= 1 monomial has a factor");
            out = out.add(&term.scale(c));
        }
        out
    }

    fn constant_one(nvars: usize) -> Self {
        HomPoly {
            nvars,
            degree: 0,
            coeffs: vec![T::one()],
        }
    }

    pub fn map_scalars<U: Scalar>(&self, f: impl Fn(&T) -> U) -> HomPoly<U> {
        HomPoly {
            nvars: self.nvars,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Max-norm of the coefficient vector.
    pub fn max_coeff_magnitude(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.magnitude())
            .fold(0.0, f64::max)
    }
}

/// A nonzero linear form, the building block of every decomposition summand.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<T: Scalar>(HomPoly<T>);

impl<T: Scalar> LinearForm<T> {
    /// Degree-1 monomials are listed as `x0, x1, ..., xn`, so the coefficient
    /// vector of the underlying polynomial is the coordinate vector.
    pub fn from_coords(coords: Vec<T>) -> Self {
        let nvars = coords.len();
        LinearForm(HomPoly::from_coeffs(nvars, 1, coords))
    }

    pub fn coords(&self) -> &[T] {
        self.0.coeffs()
    }

    pub fn as_poly(&self) -> &HomPoly<T> {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn map_scalars<U: Scalar>(&self, f: impl Fn(&T) -> U) -> LinearForm<U> {
        LinearForm(self.0.map_scalars(f))
    }
}

/// Expand `(sum_j v_j x_j)^d` by the multinomial theorem.
pub fn pow_linear_form<T: Scalar>(v: &LinearForm<T>, d: usize) -> HomPoly<T> {
    assert!(d >= 1);
    let nvars = v.nvars();
    let basis = MonomialBasis::get(nvars, d);
    let coords = v.coords();
    let mut pows: Vec<Vec<T>> = Vec::with_capacity(nvars);
    for c in coords {
        let mut row = Vec::with_capacity(d + 1);
        row.push(T::one());
        for k in 1..=d {
            let prev = row[k - 1].clone();
            row.push(prev * c.clone());
        }
        pows.push(row);
    }
    let mut coeffs = Vec::with_capacity(basis.len());
    for m in basis.iter() {
        let mut c = T::from_int(multinomial(d, &m.0) as i64);
        for (j, &e) in m.0.iter().enumerate() {
            if e > 0 {
                c = c * pows[j][e as usize].clone();
            }
        }
        coeffs.push(c);
    }
    HomPoly::from_coeffs(nvars, d, coeffs)
}
