//! Sparse multivariate polynomials over exact rationals, Buchberger's
//! algorithm with explicit effort caps, and the quotient-ring machinery
//! (normal forms, standard monomial bases, multiplication matrices) used to
//! solve zero-dimensional systems.
//!
//! The monomial order is grevlex throughout, matching the dense layer.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

pub(crate) type Expo = Vec<u16>;

fn expo_degree(e: &Expo) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

/// Grevlex: higher total degree wins; ties broken by the last nonzero entry
/// of the difference being negative.
pub(crate) fn grevlex_cmp(a: &Expo, b: &Expo) -> Ordering {
    match expo_degree(a).cmp(&expo_degree(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return if a[i] < b[i] {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
    }
    Ordering::Equal
}

fn expo_divides(d: &Expo, e: &Expo) -> bool {
    d.iter().zip(e).all(|(a, b)| a <= b)
}

fn expo_sub(e: &Expo, d: &Expo) -> Expo {
    e.iter().zip(d).map(|(a, b)| a - b).collect()
}

fn expo_add(e: &Expo, d: &Expo) -> Expo {
    e.iter().zip(d).map(|(a, b)| a + b).collect()
}

fn expo_lcm(e: &Expo, d: &Expo) -> Expo {
    e.iter().zip(d).map(|(a, b)| *a.max(b)).collect()
}

/// Sparse polynomial with terms sorted descending in grevlex; no zero
/// coefficients are stored.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct MPoly {
    pub nvars: usize,
    pub terms: Vec<(Expo, BigRational)>,
}

impl MPoly {
    pub fn from_pairs(nvars: usize, pairs: Vec<(Expo, BigRational)>) -> Self {
        let mut terms = pairs;
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|a, b| grevlex_cmp(&b.0, &a.0));
        // Merge duplicates.
        let mut merged: Vec<(Expo, BigRational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match merged.last_mut() {
                Some((le, lc)) if *le == e => {
                    *lc = lc.clone() + c;
                }
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        MPoly {
            nvars,
            terms: merged,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> &(Expo, BigRational) {
        &self.terms[0]
    }

    pub fn total_degree(&self) -> usize {
        self.terms.iter().map(|(e, _)| expo_degree(e)).max().unwrap_or(0)
    }

    /// `self - c * x^shift * g`, merging sorted term lists.
    fn sub_scaled_shifted(&self, c: &BigRational, shift: &Expo, g: &MPoly) -> MPoly {
        let mut out: Vec<(Expo, BigRational)> = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() || j < g.terms.len() {
            if j == g.terms.len() {
                out.push(self.terms[i].clone());
                i += 1;
                continue;
            }
            let shifted = expo_add(&g.terms[j].0, shift);
            if i == self.terms.len() {
                out.push((shifted, -(c.clone() * g.terms[j].1.clone())));
                j += 1;
                continue;
            }
            match grevlex_cmp(&self.terms[i].0, &shifted) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((shifted, -(c.clone() * g.terms[j].1.clone())));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = self.terms[i].1.clone() - c.clone() * g.terms[j].1.clone();
                    if !v.is_zero() {
                        out.push((shifted, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MPoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, c: &BigRational, shift: &Expo) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (expo_add(e, shift), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Clear denominators, divide by the integer content, make the leading
    /// coefficient positive. Keeps Buchberger's rationals from compounding.
    pub fn normalize_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        for (_, c) in &self.terms {
            let scaled = c.numer() * (&den_lcm / c.denom());
            content = content.gcd(&scaled);
        }
        if content.is_zero() {
            content = BigInt::one();
        }
        let lead_sign = {
            let c = &self.terms[0].1;
            if c.is_negative() {
                -BigInt::one()
            } else {
                BigInt::one()
            }
        };
        let scale = BigRational::new(den_lcm * lead_sign, content);
        for (_, c) in &mut self.terms {
            *c = c.clone() * scale.clone();
        }
    }

    pub fn derivative(&self, var: usize) -> MPoly {
        let pairs = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] > 0)
            .map(|(e, c)| {
                let mut d = e.clone();
                d[var] -= 1;
                (d, c.clone() * BigRational::from_int(e[var] as i64))
            })
            .collect();
        MPoly::from_pairs(self.nvars, pairs)
    }

    pub fn evaluate<S: Scalar>(&self, point: &[S], convert: impl Fn(&BigRational) -> S) -> S {
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut term = convert(c);
            for (j, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term * point[j].clone();
                }
            }
            acc = acc + term;
        }
        acc
    }
}

/// Effort caps for the Buchberger loop. Exceeding them is reported as a
/// distinct budget failure, never as a mathematical result.
#[derive(Clone, Copy, Debug)]
pub struct SolveLimits {
    pub degree_cap: usize,
    pub pair_cap: usize,
}

impl SolveLimits {
    pub fn for_flattening(n: usize, m: usize) -> SolveLimits {
        SolveLimits {
            degree_cap: 2 * n * m + 4,
            pair_cap: 100_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct BudgetExceeded;

/// Fully reduce `p` against `basis`.
pub(crate) fn normal_form(mut p: MPoly, basis: &[MPoly]) -> MPoly {
    let mut result_terms: Vec<(Expo, BigRational)> = Vec::new();
    'outer: while !p.is_zero() {
        let (lt, lc) = {
            let (e, c) = p.leading();
            (e.clone(), c.clone())
        };
        for g in basis {
            let (ge, gc) = g.leading();
            if expo_divides(ge, &lt) {
                let shift = expo_sub(&lt, ge);
                let factor = lc.clone() / gc.clone();
                p = p.sub_scaled_shifted(&factor, &shift, g);
                continue 'outer;
            }
        }
        // Leading term irreducible: move it to the result and continue with
        // the tail.
        result_terms.push((lt, lc));
        p.terms.remove(0);
    }
    MPoly {
        nvars: basis.first().map_or(p.nvars, |g| g.nvars),
        terms: result_terms,
    }
}

/// Reduced Groebner basis of the ideal generated by `gens`, grevlex order.
pub(crate) fn groebner_basis(
    gens: Vec<MPoly>,
    limits: &SolveLimits,
) -> Result<Vec<MPoly>, BudgetExceeded> {
    let nvars = gens.first().map_or(0, |g| g.nvars);
    let mut inputs: Vec<MPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    inputs.sort_by_key(|g| (expo_degree(&g.leading().0), g.terms.len()));
    inputs.dedup();

    let mut basis: Vec<MPoly> = Vec::new();
    // Min-heap of S-pairs keyed by lcm degree.
    let mut pairs: BinaryHeap<std::cmp::Reverse<(usize, usize, usize)>> = BinaryHeap::new();
    let mut processed: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();

    let push_poly = |basis: &mut Vec<MPoly>,
                         pairs: &mut BinaryHeap<std::cmp::Reverse<(usize, usize, usize)>>,
                         mut p: MPoly| {
        p.normalize_primitive();
        let idx = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let lcm = expo_lcm(&g.leading().0, &p.leading().0);
            pairs.push(std::cmp::Reverse((expo_degree(&lcm), i, idx)));
        }
        basis.push(p);
    };

    for g in inputs {
        let r = normal_form(g, &basis);
        if !r.is_zero() {
            push_poly(&mut basis, &mut pairs, r);
        }
    }

    let mut handled = 0usize;
    while let Some(std::cmp::Reverse((lcm_deg, i, j))) = pairs.pop() {
        if lcm_deg > limits.degree_cap {
            return Err(BudgetExceeded);
        }
        handled += 1;
        if handled > limits.pair_cap {
            return Err(BudgetExceeded);
        }
        processed.insert((i, j));
        let (ei, ci) = basis[i].leading().clone();
        let (ej, cj) = basis[j].leading().clone();
        let lcm = expo_lcm(&ei, &ej);
        // Coprime leading terms reduce to zero automatically.
        if expo_degree(&lcm) == expo_degree(&ei) + expo_degree(&ej)
            && ei.iter().zip(&ej).all(|(a, b)| *a == 0 || *b == 0)
        {
            continue;
        }
        // Chain criterion: a third element dividing the lcm whose pairs with
        // i and j were already handled makes this pair redundant.
        let mut redundant = false;
        for (k, g) in basis.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            if expo_divides(&g.leading().0, &lcm) {
                let p1 = (i.min(k), i.max(k));
                let p2 = (j.min(k), j.max(k));
                if processed.contains(&p1) && processed.contains(&p2) {
                    redundant = true;
                    break;
                }
            }
        }
        if redundant {
            continue;
        }
        // S-polynomial.
        let si = expo_sub(&lcm, &ei);
        let sj = expo_sub(&lcm, &ej);
        let left = basis[i].mul_term(&(BigRational::one() / ci), &si);
        let right = basis[j].mul_term(&(BigRational::one() / cj), &sj);
        let s = left.sub_scaled_shifted(&BigRational::one(), &vec![0; nvars], &right);
        let r = normal_form(s, &basis);
        if !r.is_zero() {
            if expo_degree(&r.leading().0) > limits.degree_cap {
                return Err(BudgetExceeded);
            }
            push_poly(&mut basis, &mut pairs, r);
        }
    }

    // Minimalize: drop elements whose leading term is divisible by another's.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j
                && keep[j]
                && keep[i]
                && expo_divides(&basis[j].leading().0, &basis[i].leading().0)
                && (basis[j].leading().0 != basis[i].leading().0 || j < i)
            {
                keep[i] = false;
            }
        }
    }
    let minimal: Vec<MPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    // Inter-reduce tails.
    let mut reduced: Vec<MPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MPoly> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| (j != i).then(|| g.clone()))
            .collect();
        let mut r = normal_form(minimal[i].clone(), &others);
        r.normalize_primitive();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| grevlex_cmp(&a.leading().0, &b.leading().0));
    Ok(reduced)
}

/// True if some basis element has a pure power of every variable as leading
/// term, i.e. the affine quotient is finite-dimensional.
pub(crate) fn is_zero_dimensional(basis: &[MPoly], nvars: usize) -> bool {
    if basis.iter().any(|g| expo_degree(&g.leading().0) == 0) {
        return true; // unit ideal: empty variety
    }
    (0..nvars).all(|v| {
        basis.iter().any(|g| {
            let e = &g.leading().0;
            e[v] > 0 && e.iter().enumerate().all(|(j, &x)| j == v || x == 0)
        })
    })
}

/// Krull dimension of the quotient by the leading-term ideal: the size of
/// the largest variable subset meeting no leading-term support.
pub(crate) fn lt_ideal_dimension(basis: &[MPoly], nvars: usize) -> usize {
    if basis.iter().any(|g| expo_degree(&g.leading().0) == 0) {
        return 0; // unit ideal; callers treat the empty variety separately
    }
    let supports: Vec<Vec<usize>> = basis
        .iter()
        .map(|g| {
            g.leading()
                .0
                .iter()
                .enumerate()
                .filter_map(|(j, &x)| (x > 0).then_some(j))
                .collect()
        })
        .collect();
    let mut best = 0usize;
    for mask in 0..(1u32 << nvars) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let independent = supports
            .iter()
            .all(|s| !s.iter().all(|&v| mask & (1 << v) != 0));
        if independent {
            best = size;
        }
    }
    best
}

/// Monomials outside the leading-term ideal, or `None` if infinitely many.
pub(crate) fn quotient_basis(basis: &[MPoly], nvars: usize) -> Option<Vec<Expo>> {
    if !is_zero_dimensional(basis, nvars) {
        return None;
    }
    if basis.iter().any(|g| expo_degree(&g.leading().0) == 0) {
        return Some(Vec::new());
    }
    let lts: Vec<Expo> = basis.iter().map(|g| g.leading().0.clone()).collect();
    // Max exponent of each variable is bounded by its pure-power leading term.
    let caps: Vec<u16> = (0..nvars)
        .map(|v| {
            lts.iter()
                .filter(|e| e[v] > 0 && e.iter().enumerate().all(|(j, &x)| j == v || x == 0))
                .map(|e| e[v])
                .min()
                .unwrap()
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    loop {
        if !lts.iter().any(|lt| expo_divides(lt, &cur)) {
            out.push(cur.clone());
        }
        // Odometer over the box bounded by caps.
        let mut pos = 0;
        loop {
            if pos == nvars {
                out.sort_by(|a, b| grevlex_cmp(a, b));
                return Some(out);
            }
            cur[pos] += 1;
            if cur[pos] >= caps[pos] {
                cur[pos] = 0;
                pos += 1;
            } else {
                break;
            }
        }
    }
}

/// Coordinates of the normal form of `p` in the standard-monomial basis.
pub(crate) fn nf_coordinates(p: MPoly, basis: &[MPoly], qbasis: &[Expo]) -> Vec<BigRational> {
    let nf = normal_form(p, basis);
    let mut coords = vec![BigRational::zero(); qbasis.len()];
    for (e, c) in nf.terms {
        let ix = qbasis
            .iter()
            .position(|q| *q == e)
            .expect("normal form lies in the standard basis");
        coords[ix] = c;
    }
    coords
}

/// Matrix of multiplication by `g` on the quotient ring, columns indexed by
/// the standard monomial basis.
pub(crate) fn multiplication_matrix(
    g: &MPoly,
    basis: &[MPoly],
    qbasis: &[Expo],
) -> crate::matrix::DenseMatrix<BigRational> {
    let n = qbasis.len();
    let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for b in qbasis {
        let prod = g.mul_term(&BigRational::one(), b);
        cols.push(nf_coordinates(prod, basis, qbasis));
    }
    crate::matrix::DenseMatrix::from_fn(n, n, |r, c| cols[c][r].clone())
}

/// Values of the Hilbert function of `R/I` for the homogeneous ideal with
/// the given Groebner basis: number of standard monomials per degree.
pub(crate) fn hilbert_function_value(basis: &[MPoly], nvars: usize, t: usize) -> usize {
    let lts: Vec<Expo> = basis.iter().map(|g| g.leading().0.clone()).collect();
    let mut count = 0usize;
    let mut cur = vec![0u16; nvars];
    fn rec(pos: usize, rem: usize, cur: &mut Vec<u16>, lts: &[Expo], count: &mut usize) {
        if pos + 1 == cur.len() {
            cur[pos] = rem as u16;
            if !lts.iter().any(|lt| expo_divides(lt, cur)) {
                *count += 1;
            }
            cur[pos] = 0;
            return;
        }
        for e in 0..=rem {
            cur[pos] = e as u16;
            // Prune: if the prefix is already divisible by a pure-prefix lt
            // we could skip, but sizes here are small enough not to bother.
            rec(pos + 1, rem - e, cur, lts, count);
        }
        cur[pos] = 0;
    }
    rec(0, t, &mut cur, &lts, &mut count);
    count
}
