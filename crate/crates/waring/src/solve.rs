//! From a kernel basis to its base locus: build the eigenvector minor ideal,
//! solve the resulting zero-dimensional system, or report how it failed
//! (positive-dimensional, non-reduced, empty).
//!
//! Zero-dimensional solving runs Buchberger over exact rationals, then the
//! multiplication-matrix (Stickelberger) route in floating point: eigenvalues
//! of a generic coordinate function locate the points, left eigenvectors
//! recover coordinates, Newton refines, and points that reconstruct to exact
//! rationals are verified exactly and flagged as such.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::flatten::{subsets_colex, wedge_map_codes};
use crate::groebner::{
    groebner_basis, hilbert_function_value, is_zero_dimensional, lt_ideal_dimension,
    multiplication_matrix, nf_coordinates, quotient_basis, BudgetExceeded, Expo, MPoly,
};
use crate::matrix::DenseMatrix;
use crate::poly::{monomial_count, HomPoly, MonomialBasis};
use crate::scalar::Scalar;

pub use crate::groebner::SolveLimits;

/// Angular distance below which two projective points are identified.
pub const POINT_TOLERANCE: f64 = 1e-6;

/// Residual bound for accepting a floating-point root of the ideal.
pub const ROOT_RESIDUAL_TOLERANCE: f64 = 1e-8;

/// Eigenvalue clusters of the multiplication matrix tighter than this signal
/// a non-reduced locus (after retries with fresh separating forms).
pub const MULTIPLICITY_TOLERANCE: f64 = 1e-7;

/// An element of `Hom(S^m V, Λ^a V)` stored as one degree-`m` polynomial per
/// `a`-subset: entry `J` of `M(v^m)` is `w_J` evaluated at `v`.
#[derive(Clone, Debug)]
pub struct TensorMap<T: Scalar> {
    pub n: usize,
    pub m: usize,
    pub a: usize,
    pub w: Vec<HomPoly<T>>,
}

impl<T: Scalar> TensorMap<T> {
    pub fn new(n: usize, m: usize, a: usize, w: Vec<HomPoly<T>>) -> Self {
        assert_eq!(w.len(), crate::poly::binomial(n + 1, a) as usize);
        for p in &w {
            assert_eq!(p.nvars(), n + 1);
            assert_eq!(p.degree(), m);
        }
        TensorMap { n, m, a, w }
    }

    /// Group a kernel vector of a Koszul flattening into its coordinate
    /// polynomials; the block layout matches the flattening's columns.
    pub fn from_kernel_vector(n: usize, m: usize, a: usize, v: &[T]) -> Self {
        let block = monomial_count(n + 1, m);
        let blocks = crate::poly::binomial(n + 1, a) as usize;
        assert_eq!(v.len(), block * blocks);
        let w = (0..blocks)
            .map(|b| {
                HomPoly::from_coeffs(n + 1, m, v[b * block..(b + 1) * block].to_vec())
            })
            .collect();
        TensorMap { n, m, a, w }
    }

    /// Coordinates of `M(v^m)` in the colex `a`-subset basis.
    pub fn apply(&self, point: &[T]) -> Vec<T> {
        self.w.iter().map(|p| p.evaluate(point)).collect()
    }

    /// Coordinates of `M(v^m) ∧ v` in the colex `(a+1)`-subset basis; the
    /// point is an eigenvector exactly when all of these vanish.
    pub fn eigen_defect(&self, point: &[T]) -> Vec<T> {
        let values = self.apply(point);
        let j_subsets = subsets_colex(self.n + 1, self.a);
        let j_index: std::collections::HashMap<Vec<usize>, usize> = j_subsets
            .iter()
            .enumerate()
            .map(|(ix, s)| (s.clone(), ix))
            .collect();
        subsets_colex(self.n + 1, self.a + 1)
            .into_iter()
            .map(|t_set| {
                let mut acc = T::zero();
                for (pos, &i) in t_set.iter().enumerate() {
                    let j_set: Vec<usize> =
                        t_set.iter().copied().filter(|&x| x != i).collect();
                    // e_J ∧ e_i = (-1)^{#{j in J : j > i}} e_T; that count is
                    // the number of elements after position `pos`.
                    let above = t_set.len() - 1 - pos;
                    let term = values[j_index[&j_set]].clone() * point[i].clone();
                    acc = if above % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            })
            .collect()
    }

    /// Coordinates of `M(x^m) ∧ x` as polynomials of degree `m+1`, one per
    /// `(a+1)`-subset. Their common zero locus is exactly the eigenvector
    /// set of the map (same locus as the minor ideal, in lower degree).
    pub fn eigen_defect_polys(&self) -> Vec<HomPoly<T>> {
        let nvars = self.n + 1;
        let j_subsets = subsets_colex(nvars, self.a);
        let j_index: std::collections::HashMap<Vec<usize>, usize> = j_subsets
            .iter()
            .enumerate()
            .map(|(ix, s)| (s.clone(), ix))
            .collect();
        subsets_colex(nvars, self.a + 1)
            .into_iter()
            .map(|t_set| {
                let mut acc = HomPoly::zero(nvars, self.m + 1);
                for (pos, &i) in t_set.iter().enumerate() {
                    let j_set: Vec<usize> =
                        t_set.iter().copied().filter(|&x| x != i).collect();
                    let above = t_set.len() - 1 - pos;
                    let md = crate::poly::Multidegree(
                        (0..nvars).map(|j| u32::from(j == i)).collect(),
                    );
                    let sign = if above % 2 == 0 { 1 } else { -1 };
                    let xi = HomPoly::monomial(nvars, &md, T::from_int(sign));
                    acc = acc.add(&xi.mul(&self.w[j_index[&j_set]]));
                }
                acc
            })
            .filter(|g| !g.is_zero())
            .collect()
    }

    pub fn map_scalars<U: Scalar>(&self, f: impl Fn(&T) -> U) -> TensorMap<U> {
        TensorMap {
            n: self.n,
            m: self.m,
            a: self.a,
            w: self.w.iter().map(|p| p.map_scalars(&f)).collect(),
        }
    }
}

/// Homogeneous polynomial ideal given by generators.
#[derive(Clone, Debug)]
pub struct PolyIdeal<T: Scalar> {
    pub generators: Vec<HomPoly<T>>,
}

/// A point of projective space with a fixed normalization: exact points have
/// first nonzero coordinate 1; floating points have unit norm with the first
/// significant coordinate positive real.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectivePoint<T: Scalar> {
    pub coords: Vec<T>,
}

impl ProjectivePoint<BigRational> {
    pub fn normalized(coords: Vec<BigRational>) -> Self {
        let pivot = coords
            .iter()
            .find(|c| !c.is_zero())
            .expect("projective point must be nonzero")
            .clone();
        ProjectivePoint {
            coords: coords.into_iter().map(|c| c / pivot.clone()).collect(),
        }
    }
}

/// One solved point of a base locus: always carries unit-normalized complex
/// coordinates, plus exact rational coordinates when the point was
/// reconstructed and verified exactly.
#[derive(Clone, Debug)]
pub struct LocusPoint {
    pub complex: Vec<Complex64>,
    pub exact: Option<Vec<BigRational>>,
    pub multiplicity: usize,
}

impl LocusPoint {
    pub fn is_real(&self) -> bool {
        self.complex.iter().all(|z| z.im.abs() <= 1e-9)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocusStatus {
    FiniteReduced,
    PositiveDimensional,
    NonReduced,
    Empty,
}

/// Classified zero scheme of a homogeneous ideal.
#[derive(Clone, Debug)]
pub struct BaseLocus {
    pub status: LocusStatus,
    pub points: Vec<LocusPoint>,
    /// Projective dimension, reported when positive-dimensional.
    pub dimension: Option<usize>,
}

/// Budget exhaustion in the polynomial solver, kept distinct from
/// mathematical failure modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverBudget;

impl From<BudgetExceeded> for SolverBudget {
    fn from(_: BudgetExceeded) -> Self {
        SolverBudget
    }
}

/// Minor ideal whose zero set is the set of common eigenvectors of the given
/// tensor maps.
///
/// For each map `M` with coordinate polynomials `w`, the condition
/// `M(v^m) ∈ v ∧ Λ^{a-1}V` is the vanishing of the minors of size
/// `binomial(n, a-1) + 1` of the wedge map `v ∧ -` augmented with the column
/// `w(v)`; minors not involving the `w` column vanish identically and are
/// skipped.
pub fn eigen_ideal<T: Scalar>(maps: &[TensorMap<T>], n: usize, a: usize) -> PolyIdeal<T> {
    assert!(a >= 1, "wedge degree must be positive");
    assert!(!maps.is_empty(), "kernel must be non-empty");
    let nvars = n + 1;
    let m = maps[0].m;
    let codes = wedge_map_codes(n, a);
    let wedge_rows = codes.len();
    let wedge_cols = codes[0].len();
    let k = crate::poly::binomial(n, a - 1) as usize + 1;

    // All (k-1)-minors of the wedge matrix, shared across maps and row sets.
    let row_sets = subsets_colex(wedge_rows, k);
    let col_sets = subsets_colex(wedge_cols, k - 1);
    let mut generators = Vec::new();
    let mut wedge_minor_cache: std::collections::HashMap<(Vec<usize>, usize), HomPoly<T>> =
        std::collections::HashMap::new();

    // Determinant of the wedge submatrix on `rows` x `cols`, entries 0/±x.
    fn wedge_det<T: Scalar>(
        codes: &[Vec<i32>],
        rows: &[usize],
        cols: &[usize],
        nvars: usize,
    ) -> HomPoly<T> {
        if rows.is_empty() {
            let mut one = HomPoly::zero(nvars, 0);
            one.set_coeff(0, T::one());
            return one;
        }
        let mut acc = HomPoly::zero(nvars, rows.len());
        for (pos, &r) in rows.iter().enumerate() {
            let code = codes[r][cols[0]];
            if code == 0 {
                continue;
            }
            let sub_rows: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
            let minor = wedge_det::<T>(codes, &sub_rows, &cols[1..], nvars);
            let var = code.unsigned_abs() as usize - 1;
            let md = crate::poly::Multidegree(
                (0..nvars).map(|j| u32::from(j == var)).collect(),
            );
            let sign = if (pos % 2 == 0) == (code > 0) { 1 } else { -1 };
            let term = HomPoly::monomial(nvars, &md, T::from_int(sign)).mul(&minor);
            acc = acc.add(&term);
        }
        acc
    }

    for map in maps {
        assert_eq!((map.n, map.a), (n, a));
        for rows in &row_sets {
            for cols in &col_sets {
                // Laplace expansion along the w column.
                let mut g = HomPoly::zero(nvars, (k - 1) + m);
                let mut nonzero = false;
                for (pos, &r) in rows.iter().enumerate() {
                    if map.w[r].is_zero() {
                        continue;
                    }
                    let sub_rows: Vec<usize> =
                        rows.iter().copied().filter(|&x| x != r).collect();
                    let key = (sub_rows.clone(), col_sets.iter().position(|c| c == cols).unwrap());
                    let minor = wedge_minor_cache
                        .entry(key)
                        .or_insert_with(|| wedge_det::<T>(&codes, &sub_rows, cols, nvars))
                        .clone();
                    if minor.is_zero() {
                        continue;
                    }
                    // Sign of entry (pos, last column) in the k x k matrix.
                    let sign = if (pos + k - 1) % 2 == 0 { 1 } else { -1 };
                    let term = map.w[r].mul(&minor);
                    let term = if sign > 0 { term } else { term.neg() };
                    g = g.add(&term);
                    nonzero = true;
                }
                if nonzero && !g.is_zero() {
                    generators.push(g);
                }
            }
        }
    }
    PolyIdeal { generators }
}

fn hom_to_mpoly(p: &HomPoly<BigRational>) -> MPoly {
    let basis = MonomialBasis::get(p.nvars(), p.degree());
    let pairs = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(ix, c)| {
            let e: Expo = basis.multidegree(ix).0.iter().map(|&x| x as u16).collect();
            (e, c.clone())
        })
        .collect();
    MPoly::from_pairs(p.nvars(), pairs)
}

/// Drop the first variable of a homogeneous polynomial (set it to 1); on a
/// homogeneous polynomial distinct monomials stay distinct.
fn dehomogenize(p: &HomPoly<BigRational>) -> MPoly {
    let basis = MonomialBasis::get(p.nvars(), p.degree());
    let pairs = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(ix, c)| {
            let md = basis.multidegree(ix);
            let e: Expo = md.0[1..].iter().map(|&x| x as u16).collect();
            (e, c.clone())
        })
        .collect();
    MPoly::from_pairs(p.nvars() - 1, pairs)
}

/// Outcome of solving an affine zero-dimensional system.
#[derive(Clone, Debug)]
pub enum ZeroDimOutcome {
    Points(Vec<AffineSolution>),
    PositiveDimensional { dimension: usize },
    NonReduced,
    Empty,
}

/// A solution with complex coordinates and, when recognized, exact ones.
#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub coords: Vec<Complex64>,
    pub exact: Option<Vec<BigRational>>,
    pub multiplicity: usize,
}

/// Affine polynomial given as `(exponents, coefficient)` terms; input type
/// for [`solve_zero_dimensional`].
#[derive(Clone, Debug)]
pub struct AffinePoly {
    pub nvars: usize,
    pub terms: Vec<(Vec<u16>, BigRational)>,
}

/// Solve an affine polynomial system expected to be zero-dimensional:
/// Groebner basis over exact rationals, quotient-ring multiplication matrix
/// of a generic coordinate, complex eigen-decomposition, coordinate
/// recovery, Newton refinement, and exact reconstruction where possible.
pub fn solve_zero_dimensional(
    system: &[AffinePoly],
    seed: u64,
    limits: &SolveLimits,
) -> Result<ZeroDimOutcome, SolverBudget> {
    assert!(!system.is_empty());
    let nvars = system[0].nvars;
    let gens: Vec<MPoly> = system
        .iter()
        .map(|p| MPoly::from_pairs(p.nvars, p.terms.clone()))
        .collect();
    solve_affine(gens, nvars, seed, limits)
}

fn solve_affine(
    gens: Vec<MPoly>,
    nvars: usize,
    seed: u64,
    limits: &SolveLimits,
) -> Result<ZeroDimOutcome, SolverBudget> {
    let gens: Vec<MPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Ok(ZeroDimOutcome::PositiveDimensional { dimension: nvars });
    }
    let gb = groebner_basis(gens.clone(), limits)?;
    if gb.iter().any(|g| g.total_degree() == 0) {
        return Ok(ZeroDimOutcome::Empty);
    }
    if !is_zero_dimensional(&gb, nvars) {
        return Ok(ZeroDimOutcome::PositiveDimensional {
            dimension: lt_ideal_dimension(&gb, nvars),
        });
    }
    let qbasis = quotient_basis(&gb, nvars).expect("zero-dimensional quotient");
    if qbasis.is_empty() {
        return Ok(ZeroDimOutcome::Empty);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5714c0de);
    // Retry with a fresh separating linear form if eigenvalues cluster; a
    // cluster that persists across retries is a genuine multiplicity.
    for _attempt in 0..3 {
        let coeffs: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-9..=9)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let g = MPoly::from_pairs(
            nvars,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let mut e = vec![0u16; nvars];
                    e[i] = 1;
                    (e, BigRational::from_int(c))
                })
                .collect(),
        );
        let mult = multiplication_matrix(&g, &gb, &qbasis);
        let mf = nalgebra::DMatrix::from_fn(mult.rows(), mult.cols(), |r, c| {
            Scalar::to_f64(mult.get(r, c))
        });
        let eigenvalues = mf.complex_eigenvalues();
        let scale = eigenvalues.iter().map(|z| z.norm()).fold(1.0, f64::max);
        // Cluster eigenvalues.
        let mut assigned = vec![false; eigenvalues.len()];
        let mut clusters: Vec<(Complex64, usize)> = Vec::new();
        for i in 0..eigenvalues.len() {
            if assigned[i] {
                continue;
            }
            let mut members = 1usize;
            assigned[i] = true;
            for j in i + 1..eigenvalues.len() {
                if !assigned[j]
                    && (eigenvalues[i] - eigenvalues[j]).norm() <= MULTIPLICITY_TOLERANCE * scale
                {
                    assigned[j] = true;
                    members += 1;
                }
            }
            clusters.push((eigenvalues[i], members));
        }
        if clusters.iter().any(|&(_, m)| m > 1) {
            continue;
        }

        // Reduced: recover one point per eigenvalue from left eigenvectors.
        let mt = mf.transpose().map(|x| Complex64::new(x, 0.0));
        let nf_vars: Vec<Vec<BigRational>> = (0..nvars)
            .map(|i| {
                let mut e = vec![0u16; nvars];
                e[i] = 1;
                nf_coordinates(
                    MPoly::from_pairs(nvars, vec![(e, BigRational::one())]),
                    &gb,
                    &qbasis,
                )
            })
            .collect();
        let one_pos = qbasis
            .iter()
            .position(|e| e.iter().all(|&x| x == 0))
            .expect("1 is a standard monomial");
        let mut solutions = Vec::new();
        let mut defective = false;
        for &(lambda, _) in &clusters {
            let dim = mt.nrows();
            let shifted = &mt - nalgebra::DMatrix::from_diagonal_element(dim, dim, lambda);
            let svd = shifted.svd(true, true);
            let rank = svd
                .singular_values
                .iter()
                .filter(|&&s| s > 1e-9 * svd.singular_values.max().max(1.0))
                .count();
            if dim - rank != 1 {
                defective = true;
                break;
            }
            let v_t = svd.v_t.as_ref().expect("svd vectors");
            let u: Vec<Complex64> = v_t.row(dim - 1).iter().map(|z| z.conj()).collect();
            let pivot = u[one_pos];
            if pivot.norm() < 1e-12 {
                defective = true;
                break;
            }
            let coords: Vec<Complex64> = nf_vars
                .iter()
                .map(|nf| {
                    nf.iter()
                        .zip(&u)
                        .map(|(c, uv)| Complex64::new(Scalar::to_f64(c), 0.0) * uv / pivot)
                        .sum()
                })
                .collect();
            solutions.push(AffineSolution {
                coords,
                exact: None,
                multiplicity: 1,
            });
        }
        if defective {
            continue;
        }
        // Newton refinement against the Groebner basis (same zero set,
        // fewer and smaller generators than the input).
        for sol in &mut solutions {
            newton_refine(&mut sol.coords, &gb);
        }
        return Ok(ZeroDimOutcome::Points(solutions));
    }
    Ok(ZeroDimOutcome::NonReduced)
}

fn newton_refine(coords: &mut [Complex64], gens: &[MPoly]) {
    let nvars = coords.len();
    let jac_polys: Vec<Vec<MPoly>> = gens
        .iter()
        .map(|g| (0..nvars).map(|v| g.derivative(v)).collect())
        .collect();
    // Residuals are judged relative to each generator's coefficient scale;
    // the generators carry whatever integer sizes elimination produced.
    let scales: Vec<f64> = gens
        .iter()
        .map(|g| {
            g.terms
                .iter()
                .map(|(_, c)| Scalar::magnitude(c))
                .fold(1.0, f64::max)
        })
        .collect();
    for _ in 0..50 {
        let values: Vec<Complex64> = gens
            .iter()
            .map(|g| g.evaluate(coords, |c| Complex64::new(Scalar::to_f64(c), 0.0)))
            .collect();
        let err = values
            .iter()
            .zip(&scales)
            .map(|(z, s)| z.norm() / s)
            .fold(0.0, f64::max);
        if err < 1e-15 {
            break;
        }
        let jac = nalgebra::DMatrix::from_fn(gens.len(), nvars, |r, c| {
            jac_polys[r][c].evaluate(coords, |x| Complex64::new(Scalar::to_f64(x), 0.0))
                / Complex64::new(scales[r], 0.0)
        });
        let rhs = nalgebra::DVector::from_iterator(
            values.len(),
            values.iter().zip(&scales).map(|(z, s)| -z / s),
        );
        let svd = jac.svd(true, true);
        let eps = 1e-13 * svd.singular_values.max().max(1e-300);
        let Ok(delta) = svd.solve(&rhs, eps) else { break };
        let step: f64 = delta.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for (c, d) in coords.iter_mut().zip(delta.iter()) {
            *c += d;
        }
        if step < 1e-15 {
            break;
        }
    }
}

/// Continued-fraction rational reconstruction with exact verification left
/// to the caller.
fn reconstruct_rational(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let a_i = a as i64;
        let p2 = a_i.checked_mul(p1)?.checked_add(p0)?;
        let q2 = a_i.checked_mul(q1)?.checked_add(q0)?;
        if q2.abs() > max_den {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = v - a;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    let cand = BigRational::new(p1.into(), q1.into());
    let back = Scalar::to_f64(&cand);
    if (back - x).abs() <= 1e-9 * x.abs().max(1.0) {
        Some(cand)
    } else {
        None
    }
}

fn angular_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let inner: Complex64 = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
    (1.0 - inner.norm().min(1.0)).sqrt()
}

/// Classify the projective zero scheme of a homogeneous ideal.
///
/// The projective dimension and degree come from a Groebner basis of the
/// homogeneous ideal itself (leading-term combinatorics and the stabilized
/// Hilbert function); points are then computed in a random affine chart,
/// retried with a fresh chart until the chart sees the full projective
/// degree, so points at infinity cannot be silently lost.
pub fn base_locus(
    ideal: &PolyIdeal<BigRational>,
    seed: u64,
    limits: &SolveLimits,
) -> Result<BaseLocus, SolverBudget> {
    let nvars = ideal
        .generators
        .first()
        .expect("non-empty generator list")
        .nvars();
    let n = nvars - 1;
    let gens: Vec<&HomPoly<BigRational>> =
        ideal.generators.iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Ok(BaseLocus {
            status: LocusStatus::PositiveDimensional,
            points: Vec::new(),
            dimension: Some(n),
        });
    }

    // Primitive-normalized, deduplicated generators keep the Groebner
    // arithmetic small; duplicates arise freely among minors.
    let mut hom_gens: Vec<MPoly> = gens
        .iter()
        .map(|g| {
            let mut p = hom_to_mpoly(g);
            p.normalize_primitive();
            p
        })
        .collect();
    hom_gens.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
    hom_gens.dedup();
    let hom_gb = groebner_basis(hom_gens, limits)?;
    let cone_dim = lt_ideal_dimension(&hom_gb, nvars);
    if cone_dim == 0 {
        return Ok(BaseLocus {
            status: LocusStatus::Empty,
            points: Vec::new(),
            dimension: None,
        });
    }
    if cone_dim >= 2 {
        return Ok(BaseLocus {
            status: LocusStatus::PositiveDimensional,
            points: Vec::new(),
            dimension: Some(cone_dim - 1),
        });
    }

    // Projective dimension zero: stabilized Hilbert function value is the
    // length of the zero scheme.
    let max_lt_deg = hom_gb.iter().map(MPoly::total_degree).max().unwrap_or(1);
    let mut degree = None;
    let mut t = max_lt_deg + 1;
    while t + 2 <= max_lt_deg + 40 {
        let h0 = hilbert_function_value(&hom_gb, nvars, t);
        let h1 = hilbert_function_value(&hom_gb, nvars, t + 1);
        let h2 = hilbert_function_value(&hom_gb, nvars, t + 2);
        if h0 == h1 && h1 == h2 {
            degree = Some(h0);
            break;
        }
        t += 1;
    }
    let Some(proj_degree) = degree else {
        return Err(SolverBudget);
    };
    if proj_degree == 0 {
        return Ok(BaseLocus {
            status: LocusStatus::Empty,
            points: Vec::new(),
            dimension: None,
        });
    }

    // Residuals and exact verification run against the Groebner basis: it
    // generates the same ideal as the input and is far smaller.
    let check_polys: Vec<HomPoly<BigRational>> = hom_gb
        .iter()
        .map(|g| mpoly_to_hom(g, nvars))
        .collect();
    let check_refs: Vec<&HomPoly<BigRational>> = check_polys.iter().collect();
    let gen_scales: Vec<f64> = check_polys
        .iter()
        .map(|g| g.max_coeff_magnitude().max(1.0))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc4a27);
    for _chart in 0..5 {
        // Random invertible integer change of coordinates x = U y.
        let u_rows: Vec<Vec<BigRational>> = (0..nvars)
            .map(|_| {
                (0..nvars)
                    .map(|_| BigRational::from_int(rng.gen_range(-30..=30)))
                    .collect()
            })
            .collect();
        let u = DenseMatrix::from_rows(u_rows.clone());
        if crate::linalg::rank_of(&u) < nvars {
            continue;
        }
        // Substitute into the homogeneous Groebner basis (same zero set as
        // the original generators) and drop the first chart variable.
        let affine: Vec<MPoly> = hom_gb
            .iter()
            .map(|g| {
                let h = mpoly_to_hom(g, nvars);
                dehomogenize(&h.substitute_linear(&u_rows))
            })
            .collect();
        match solve_affine(affine.clone(), n, seed ^ 0xaff1e, limits)? {
            ZeroDimOutcome::Points(sols) => {
                if sols.len() != proj_degree {
                    continue; // chart missed points at infinity
                }
                let mut points = Vec::new();
                for sol in sols {
                    // Map back: v = U * (1, y), then normalize.
                    let mut v: Vec<Complex64> = (0..nvars)
                        .map(|r| {
                            let mut acc =
                                Complex64::new(Scalar::to_f64(u.get(r, 0)), 0.0);
                            for (c, y) in sol.coords.iter().enumerate() {
                                acc += Complex64::new(
                                    Scalar::to_f64(u.get(r, c + 1)),
                                    0.0,
                                ) * y;
                            }
                            acc
                        })
                        .collect();
                    normalize_complex_point(&mut v);
                    let ok = check_polys.iter().zip(&gen_scales).all(|(g, scale)| {
                        let gc = g.map_scalars(|c| Complex64::new(Scalar::to_f64(c), 0.0));
                        gc.evaluate(&v).norm() <= ROOT_RESIDUAL_TOLERANCE * scale
                    });
                    if !ok {
                        points.clear();
                        break;
                    }
                    let exact = recognize_rational_point(&v, &check_refs);
                    points.push(LocusPoint {
                        complex: v,
                        exact,
                        multiplicity: 1,
                    });
                }
                if points.len() != proj_degree {
                    continue;
                }
                // Deduplicate defensively; distinct eigenvalues should
                // already give distinct points.
                let mut dedup: Vec<LocusPoint> = Vec::new();
                for p in points {
                    if dedup
                        .iter()
                        .all(|q| angular_distance(&p.complex, &q.complex) > POINT_TOLERANCE)
                    {
                        dedup.push(p);
                    }
                }
                if dedup.len() != proj_degree {
                    continue;
                }
                return Ok(BaseLocus {
                    status: LocusStatus::FiniteReduced,
                    points: dedup,
                    dimension: None,
                });
            }
            ZeroDimOutcome::NonReduced => {
                return Ok(BaseLocus {
                    status: LocusStatus::NonReduced,
                    points: Vec::new(),
                    dimension: None,
                });
            }
            ZeroDimOutcome::Empty | ZeroDimOutcome::PositiveDimensional { .. } => {
                continue;
            }
        }
    }
    // Charts kept disagreeing with the projective degree; in practice this
    // indicates a non-reduced scheme whose eigenvalues never separate.
    Ok(BaseLocus {
        status: LocusStatus::NonReduced,
        points: Vec::new(),
        dimension: None,
    })
}

fn mpoly_to_hom(p: &MPoly, nvars: usize) -> HomPoly<BigRational> {
    let d = p.total_degree();
    let mut out = HomPoly::zero(nvars, d);
    let basis = MonomialBasis::get(nvars, d);
    for (e, c) in &p.terms {
        let md = crate::poly::Multidegree(e.iter().map(|&x| x as u32).collect());
        let ix = basis.index_of(&md).expect("homogeneous input");
        out.set_coeff(ix, c.clone());
    }
    out
}

/// Unit norm, first significant coordinate rotated to the positive real
/// axis.
pub fn normalize_complex_point(v: &mut [Complex64]) {
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in v.iter_mut() {
            *z /= norm;
        }
    }
    if let Some(pivot) = v.iter().find(|z| z.norm() > 1e-8).copied() {
        let phase = pivot / pivot.norm();
        for z in v.iter_mut() {
            *z /= phase;
        }
    }
}

/// Try to recognize a real point as rational: normalize to first significant
/// coordinate 1, reconstruct each coordinate by continued fractions, and
/// verify exactly against every generator.
fn recognize_rational_point(
    v: &[Complex64],
    gens: &[&HomPoly<BigRational>],
) -> Option<Vec<BigRational>> {
    if v.iter().any(|z| z.im.abs() > 1e-9) {
        return None;
    }
    let pivot_ix = v.iter().position(|z| z.norm() > 1e-8)?;
    let pivot = v[pivot_ix].re;
    let scaled: Vec<f64> = v.iter().map(|z| z.re / pivot).collect();
    let mut coords = Vec::with_capacity(v.len());
    for (i, x) in scaled.iter().enumerate() {
        if i < pivot_ix && x.abs() > 1e-9 {
            return None; // leading coordinates must be exactly zero
        }
        let r = if i < pivot_ix {
            BigRational::zero()
        } else {
            reconstruct_rational(*x, 1_000_000)?
        };
        coords.push(r);
    }
    for g in gens {
        if !g.evaluate(&coords).is_zero() {
            return None;
        }
    }
    Some(coords)
}

/// Fixed-point (shifted power) iteration for eigenvectors of an `a = 1`
/// tensor map over floats: `v <- normalize(M(v^m) + α v)` from many random
/// starts, keeping distinct converged limits. The result may be a strict
/// subset of the true eigenvector set.
pub fn power_iteration_eigenvectors(
    map: &TensorMap<f64>,
    starts: usize,
    seed: u64,
) -> Vec<ProjectivePoint<f64>> {
    assert_eq!(map.a, 1, "power iteration applies to vector-valued maps");
    let nvars = map.n + 1;
    // Shift larger than the map's sup-norm on the unit sphere forces the
    // iterated direction to stay acute against the current one.
    let alpha = 1.0
        + map
            .w
            .iter()
            .map(|p| p.coeffs().iter().map(|c| c.abs()).sum::<f64>())
            .fold(0.0, f64::max)
            * (nvars as f64).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x905e);
    let mut found: Vec<Vec<f64>> = Vec::new();
    for _ in 0..starts {
        let mut v: Vec<f64> = (0..nvars).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        for x in &mut v {
            *x /= norm;
        }
        let mut converged = false;
        for _ in 0..500 {
            let mut next = map.apply(&v);
            for (nx, x) in next.iter_mut().zip(&v) {
                *nx += alpha * x;
            }
            let nn = next.iter().map(|x| x * x).sum::<f64>().sqrt();
            if nn < 1e-12 {
                break;
            }
            for x in &mut next {
                *x /= nn;
            }
            let dot: f64 = next.iter().zip(&v).map(|(a, b)| a * b).sum();
            let sign = if dot < 0.0 { -1.0 } else { 1.0 };
            for x in &mut next {
                *x *= sign;
            }
            let delta: f64 = next
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            v = next;
            if delta < 1e-13 {
                converged = true;
                break;
            }
        }
        if !converged {
            continue;
        }
        // Verify the limit is an eigenvector and deduplicate by angle.
        let defect = map.eigen_defect(&v);
        let scale = map
            .w
            .iter()
            .map(|p| p.max_coeff_magnitude())
            .fold(1.0, f64::max);
        if defect.iter().map(|x| x.abs()).fold(0.0, f64::max) > 1e-8 * scale {
            continue;
        }
        let dup = found.iter().any(|u| {
            let dot: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
            (1.0 - dot.abs().min(1.0)).sqrt() < POINT_TOLERANCE
        });
        if !dup {
            found.push(v);
        }
    }
    found
        .into_iter()
        .map(|mut v| {
            // First significant coordinate positive.
            if let Some(p) = v.iter().find(|x| x.abs() > 1e-8) {
                if *p < 0.0 {
                    for x in &mut v {
                        *x = -*x;
                    }
                }
            }
            ProjectivePoint { coords: v }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flatten::koszul_flattening;
    use crate::linalg::kernel;
    use crate::poly::{pow_linear_form, LinearForm};
    use crate::Rational;

    fn rat(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn limits() -> SolveLimits {
        SolveLimits {
            degree_cap: 20,
            pair_cap: 100_000,
        }
    }

    fn random_tensor_map(n: usize, m: usize, a: usize, seed: u64) -> TensorMap<Rational> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let blocks = crate::poly::binomial(n + 1, a) as usize;
        let w = (0..blocks)
            .map(|_| {
                let coeffs = (0..monomial_count(n + 1, m))
                    .map(|_| rat(rng.gen_range(-9..=9)))
                    .collect();
                HomPoly::from_coeffs(n + 1, m, coeffs)
            })
            .collect();
        TensorMap::new(n, m, a, w)
    }

    #[test]
    fn univariate_system_with_two_roots() {
        // x^2 - 1 = 0.
        let sys = vec![AffinePoly {
            nvars: 1,
            terms: vec![(vec![2], rat(1)), (vec![0], rat(-1))],
        }];
        match solve_zero_dimensional(&sys, 1, &limits()).unwrap() {
            ZeroDimOutcome::Points(mut pts) => {
                assert_eq!(pts.len(), 2);
                pts.sort_by(|a, b| a.coords[0].re.partial_cmp(&b.coords[0].re).unwrap());
                assert!((pts[0].coords[0].re + 1.0).abs() < 1e-9);
                assert!((pts[1].coords[0].re - 1.0).abs() < 1e-9);
            }
            other => panic!("expected points, got {other:?}"),
        }
    }

    #[test]
    fn circle_line_intersection() {
        let sys = vec![
            AffinePoly {
                nvars: 2,
                terms: vec![
                    (vec![2, 0], rat(1)),
                    (vec![0, 2], rat(1)),
                    (vec![0, 0], rat(-2)),
                ],
            },
            AffinePoly {
                nvars: 2,
                terms: vec![(vec![1, 0], rat(1)), (vec![0, 1], rat(-1))],
            },
        ];
        match solve_zero_dimensional(&sys, 3, &limits()).unwrap() {
            ZeroDimOutcome::Points(pts) => {
                assert_eq!(pts.len(), 2);
                for p in &pts {
                    assert!((p.coords[0] - p.coords[1]).norm() < 1e-9);
                    assert!((p.coords[0].norm() - 1.0).abs() < 1e-9);
                }
            }
            other => panic!("expected points, got {other:?}"),
        }
    }

    #[test]
    fn eigen_ideal_of_ternary_map_has_three_generators() {
        let map = random_tensor_map(2, 2, 1, 5);
        let ideal = eigen_ideal(&[map], 2, 1);
        assert_eq!(ideal.generators.len(), 3);
        for g in &ideal.generators {
            assert_eq!(g.degree(), 3);
        }
    }

    #[test]
    fn eigen_defect_vanishes_exactly_on_constructed_eigenvector() {
        // Build a map with a known eigenvector by correcting a random map.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let n = 2;
            let m = 2;
            let v: Vec<Rational> = loop {
                let c: Vec<Rational> = (0..3).map(|_| rat(rng.gen_range(-5..=5))).collect();
                if c.iter().any(|x| !x.is_zero()) {
                    break c;
                }
            };
            let map = random_tensor_map(n, m, 1, rng.gen());
            // Correction: w'_j = w_j - q * (w_j(v) - v_j) where q(v) = 1.
            let probe = crate::poly::Multidegree(vec![m as u32, 0, 0]);
            let mut base = v[0].clone() * v[0].clone();
            if base.is_zero() {
                continue;
            }
            base = Rational::one() / base;
            let q = HomPoly::monomial(3, &probe, base);
            let w: Vec<HomPoly<Rational>> = map
                .w
                .iter()
                .enumerate()
                .map(|(j, wj)| {
                    let err = wj.evaluate(&v) - v[j].clone();
                    wj.sub(&q.scale(&err))
                })
                .collect();
            let fixed = TensorMap::new(n, m, 1, w);
            assert_eq!(fixed.apply(&v), v);
            assert!(fixed.eigen_defect(&v).iter().all(|x| x.is_zero()));
            // And the minor ideal vanishes at v.
            let ideal = eigen_ideal(&[fixed], n, 1);
            for g in &ideal.generators {
                assert!(g.evaluate(&v).is_zero());
            }
        }
    }

    #[test]
    fn kernel_of_power_flattening_is_eigen_equivalence() {
        // Membership in ker P_{v^d} is equivalent to the eigen defect of the
        // grouped map vanishing at v, checked both ways.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for trial in 0..10 {
            let coords: Vec<Rational> = loop {
                let c: Vec<Rational> = (0..3).map(|_| rat(rng.gen_range(-4..=4))).collect();
                if c.iter().any(|x| !x.is_zero()) {
                    break c;
                }
            };
            let v = LinearForm::from_coords(coords.clone());
            let f = pow_linear_form(&v, 5);
            let p = koszul_flattening(&f, 2, 1);
            let k = kernel(&p.matrix);
            assert_eq!(k.dim(), 16, "rank of a power flattening is 2");
            for vec in k.vectors.iter().step_by(3) {
                let map = TensorMap::from_kernel_vector(2, 2, 1, vec);
                assert!(
                    map.eigen_defect(&coords).iter().all(|x| x.is_zero()),
                    "kernel elements admit v as eigenvector"
                );
            }
            // A random map is generically not in the kernel and v is
            // generically not its eigenvector; when we correct it to have v
            // as an eigenvector it must land in the kernel.
            let map = random_tensor_map(2, 2, 1, 1000 + trial);
            let defect_zero = map.eigen_defect(&coords).iter().all(|x| x.is_zero());
            let mut flat = Vec::new();
            for wj in &map.w {
                flat.extend(wj.coeffs().to_vec());
            }
            let image = p.matrix.mul_vec(&flat);
            let in_kernel = image.iter().all(|x| x.is_zero());
            assert_eq!(defect_zero, in_kernel);
        }
    }

    #[test]
    fn base_locus_of_matrix_eigenproblem_has_three_points() {
        // a = 1, m = 1: ordinary 3x3 eigenvectors.
        let map = random_tensor_map(2, 1, 1, 77);
        let ideal = eigen_ideal(&[map], 2, 1);
        let locus = base_locus(&ideal, 7, &limits()).unwrap();
        assert_eq!(locus.status, LocusStatus::FiniteReduced);
        assert_eq!(locus.points.len(), 3);
    }

    #[test]
    fn base_locus_of_quadratic_ternary_map_has_seven_points() {
        let map = random_tensor_map(2, 2, 1, 99);
        let ideal = eigen_ideal(&[map], 2, 1);
        let locus = base_locus(&ideal, 9, &limits()).unwrap();
        assert_eq!(locus.status, LocusStatus::FiniteReduced);
        assert_eq!(locus.points.len(), 7);
    }

    #[test]
    fn power_iteration_on_symmetric_matrix_finds_classical_eigenvectors() {
        // Symmetric 3x3 with distinct eigenvalues: eigenvectors of the map
        // v -> Av.
        let a = [[4.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 2.0]];
        let w = (0..3)
            .map(|j| {
                HomPoly::from_coeffs(3, 1, vec![a[j][0], a[j][1], a[j][2]])
            })
            .collect();
        let map = TensorMap::new(2, 1, 1, w);
        let pts = power_iteration_eigenvectors(&map, 60, 3);
        // The shifted iteration is dominated by the top eigenvalue in the
        // linear case, so at least the dominant eigenvector must appear and
        // every limit must be a classical eigenvector.
        assert!(!pts.is_empty());
        for p in &pts {
            let image = map.apply(&p.coords);
            // image parallel to p.
            let cross: f64 = (0..3)
                .map(|i| {
                    let j = (i + 1) % 3;
                    (image[i] * p.coords[j] - image[j] * p.coords[i]).abs()
                })
                .fold(0.0, f64::max);
            assert!(cross < 1e-7);
        }
    }

    #[test]
    fn power_iteration_identity_converges_immediately() {
        let w = (0..3)
            .map(|j| {
                let mut c = vec![0.0; 3];
                c[j] = 1.0;
                HomPoly::from_coeffs(3, 1, c)
            })
            .collect();
        let map = TensorMap::new(2, 1, 1, w);
        let pts = power_iteration_eigenvectors(&map, 5, 1);
        assert!(!pts.is_empty());
    }

    #[test]
    fn power_iteration_limits_lie_in_the_solver_point_set() {
        let map = random_tensor_map(2, 2, 1, 1234);
        let ideal = eigen_ideal(&[map.clone()], 2, 1);
        let locus = base_locus(&ideal, 11, &limits()).unwrap();
        assert_eq!(locus.points.len(), 7);
        let fmap = map.map_scalars(|c| Scalar::to_f64(c));
        let pts = power_iteration_eigenvectors(&fmap, 100, 5);
        assert!(!pts.is_empty());
        for p in &pts {
            let pc: Vec<Complex64> = p.coords.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            let mut pc = pc;
            normalize_complex_point(&mut pc);
            let hit = locus
                .points
                .iter()
                .any(|q| angular_distance(&pc, &q.complex) < 1e-5);
            assert!(hit, "power-iteration limit must be a solver point");
        }
    }
}
