//! End-to-end decomposition pipelines: build a flattening, take its exact
//! kernel, cut out the base locus, solve for coefficients, verify, and
//! produce either a certified decomposition or a structured failure that
//! doubles as a rank lower bound.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::flatten::{catalecticant, koszul_flattening, FlatteningMatrix};
use crate::groebner::SolveLimits;
use crate::linalg::{kernel, solve_linear, LinearSolution};
use crate::poly::{monomial_count, pow_linear_form, HomPoly, LinearForm};
use crate::scalar::Scalar;
use crate::solve::{
    base_locus, eigen_ideal, BaseLocus, LocusPoint, LocusStatus, PolyIdeal, ProjectivePoint,
    TensorMap,
};

/// Relative residual accepted for a floating-point decomposition.
pub const VERIFY_TOLERANCE: f64 = 1e-8;

/// Cap on coefficient-system retries over point subsets.
pub const SUBSET_BUDGET: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Catalecticant,
    KoszulA1,
    KoszulGeneral,
    Auto,
}

impl Method {
    /// Resolve `Auto`: even degree and binary forms go to the catalecticant;
    /// odd degree in three or more variables goes to the general Koszul
    /// flattening (with a catalecticant fallback when its kernel is trivial).
    pub fn resolve(self, n: usize, d: usize) -> Method {
        match self {
            Method::Auto => {
                if d % 2 == 0 || n == 1 {
                    Method::Catalecticant
                } else {
                    Method::KoszulGeneral
                }
            }
            m => m,
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::Catalecticant => "catalecticant",
            Method::KoszulA1 => "koszul",
            Method::KoszulGeneral => "koszul-general",
            Method::Auto => "auto",
        };
        write!(f, "{s}")
    }
}

/// A verified decomposition `f = Σ c_i v_i^d`.
#[derive(Clone, Debug)]
pub struct Decomposition<T: Scalar> {
    pub terms: Vec<(T, LinearForm<T>)>,
    /// Max-norm of the coefficient vector of `f - Σ c_i v_i^d`; exactly 0.0
    /// only when the difference is identically zero.
    pub residual: f64,
    pub method: Method,
    pub rank_lower_bound: usize,
    /// Coefficient-solve attempts consumed (1 means the direct solve).
    pub attempts: usize,
}

/// Decomposition at the finest scalar level the pipeline could certify:
/// exact rationals when every base point was reconstructed exactly, complex
/// floats otherwise.
#[derive(Clone, Debug)]
pub enum WaringOutput {
    Exact(Decomposition<BigRational>),
    Numeric(Decomposition<Complex64>),
}

impl WaringOutput {
    pub fn num_terms(&self) -> usize {
        match self {
            WaringOutput::Exact(d) => d.terms.len(),
            WaringOutput::Numeric(d) => d.terms.len(),
        }
    }

    pub fn residual(&self) -> f64 {
        match self {
            WaringOutput::Exact(d) => d.residual,
            WaringOutput::Numeric(d) => d.residual,
        }
    }

    pub fn method(&self) -> Method {
        match self {
            WaringOutput::Exact(d) => d.method,
            WaringOutput::Numeric(d) => d.method,
        }
    }

    pub fn rank_lower_bound(&self) -> usize {
        match self {
            WaringOutput::Exact(d) => d.rank_lower_bound,
            WaringOutput::Numeric(d) => d.rank_lower_bound,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, WaringOutput::Exact(_))
    }
}

/// Stage at which a pipeline stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureStage {
    /// The flattening kernel is zero: the rank exceeds what this method can
    /// see, and the reported bound is the best certificate.
    TrivialKernel,
    /// The base locus has the given projective dimension (> 0).
    InfiniteBaseLocus { dimension: usize },
    NonReduced,
    /// The base locus was finite but no (subset of) points carried a
    /// consistent coefficient system.
    NoCoefficientSolution,
    /// The polynomial-solver effort caps were exhausted; not a mathematical
    /// conclusion.
    Budget,
}

#[derive(Clone, Copy, Debug)]
pub struct FailureReport {
    pub stage: FailureStage,
    pub rank_lower_bound: Option<usize>,
    pub method: Method,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("cannot decompose the zero polynomial")]
    ZeroPolynomial,
    #[error("degree must be at least 2")]
    DegreeTooSmall,
    #[error("scalar type has no exact rational image")]
    UnsupportedScalar,
}

#[derive(Debug, thiserror::Error)]
pub enum DecomposeError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("decomposition failed at stage {:?}", .0.stage)]
    Failed(FailureReport),
}

/// Decompose `f` into a minimal sum of d-th powers of linear forms.
///
/// The kernel and ideal computations always run over exact rationals
/// (floating-point input is rationalized exactly first); root extraction
/// falls back to floating point when the base locus is irrational, in which
/// case the result is `Numeric` and the residual is checked against
/// [`VERIFY_TOLERANCE`].
pub fn decompose<T: Scalar>(
    f: &HomPoly<T>,
    method: Method,
    seed: u64,
) -> Result<WaringOutput, DecomposeError> {
    if f.is_zero() {
        return Err(InputError::ZeroPolynomial.into());
    }
    if f.degree() < 2 {
        return Err(InputError::DegreeTooSmall.into());
    }
    let mut exact_coeffs = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        exact_coeffs.push(c.to_rational().ok_or(InputError::UnsupportedScalar)?);
    }
    let rf = HomPoly::from_coeffs(f.nvars(), f.degree(), exact_coeffs);
    let n = f.nvars() - 1;
    let d = f.degree();
    let resolved = method.resolve(n, d);
    match run_method(&rf, resolved, seed) {
        Ok(out) => Ok(out),
        Err(report)
            if method == Method::Auto
                && resolved == Method::KoszulGeneral
                && report.stage == FailureStage::TrivialKernel =>
        {
            run_method(&rf, Method::Catalecticant, seed).map_err(DecomposeError::Failed)
        }
        Err(report) => Err(DecomposeError::Failed(report)),
    }
}

/// Catalecticant pipeline with the most-square contraction order.
pub fn catalecticant_pipeline(
    f: &HomPoly<BigRational>,
    seed: u64,
) -> Result<WaringOutput, FailureReport> {
    run_method(f, Method::Catalecticant, seed)
}

/// Koszul pipeline with `a = ceil(n/2)`; for odd `n` the base locus
/// additionally intersects the eigenvectors of the left kernel (the
/// orthogonal complement of the image).
pub fn koszul_general_pipeline(
    f: &HomPoly<BigRational>,
    seed: u64,
) -> Result<WaringOutput, FailureReport> {
    run_method(f, Method::KoszulGeneral, seed)
}

fn run_method(
    f: &HomPoly<BigRational>,
    method: Method,
    seed: u64,
) -> Result<WaringOutput, FailureReport> {
    let n = f.nvars() - 1;
    let d = f.degree();
    let fail = |stage, rlb| FailureReport {
        stage,
        rank_lower_bound: rlb,
        method,
    };
    let flattening = match method {
        Method::Catalecticant => catalecticant(f, d.div_ceil(2)),
        Method::KoszulA1 => koszul_flattening(f, (d - 1).div_ceil(2).max(1), 1),
        Method::KoszulGeneral => {
            koszul_flattening(f, (d - 1).div_ceil(2).max(1), n.div_ceil(2))
        }
        Method::Auto => unreachable!("resolved before dispatch"),
    };
    let limits = SolveLimits::for_flattening(n, flattening.m.max(1));

    let kernel_basis = kernel(&flattening.matrix);
    let rank = flattening.matrix.cols() - kernel_basis.dim();
    let rlb = rank.div_ceil(flattening.bundle_rank);
    if kernel_basis.is_empty() {
        return Err(fail(FailureStage::TrivialKernel, Some(rlb)));
    }

    let ideal = build_ideal(f, &flattening, &kernel_basis.vectors, method);
    if ideal.generators.is_empty() {
        // Every kernel element has every point as an eigenvector.
        return Err(fail(
            FailureStage::InfiniteBaseLocus { dimension: n },
            Some(rlb),
        ));
    }

    let locus: BaseLocus = base_locus(&ideal, seed, &limits)
        .map_err(|_| fail(FailureStage::Budget, Some(rlb)))?;
    let points = match locus.status {
        LocusStatus::FiniteReduced => locus.points,
        LocusStatus::PositiveDimensional => {
            return Err(fail(
                FailureStage::InfiniteBaseLocus {
                    dimension: locus.dimension.unwrap_or(1),
                },
                Some(rlb),
            ));
        }
        LocusStatus::NonReduced => {
            return Err(fail(FailureStage::NonReduced, Some(rlb)));
        }
        LocusStatus::Empty => {
            return Err(fail(FailureStage::NoCoefficientSolution, Some(rlb)));
        }
    };

    // Exact-first: points reconstructed as rationals may already carry the
    // decomposition (extra irrational base points always take coefficient
    // zero when the recognized subset spans f).
    let exact_points: Vec<Vec<BigRational>> = points
        .iter()
        .filter_map(|p| p.exact.clone())
        .collect();
    if !exact_points.is_empty() {
        if let Ok((terms, attempts)) = solve_exact_coefficients(f, &exact_points, rlb, seed) {
            let residual = verify(f, &terms);
            debug_assert_eq!(residual, 0.0);
            return Ok(WaringOutput::Exact(Decomposition {
                terms,
                residual,
                method,
                rank_lower_bound: rlb,
                attempts,
            }));
        }
    }
    let fc = f.map_scalars(|c| Complex64::new(Scalar::to_f64(c), 0.0));
    let (terms, attempts, residual) = solve_numeric_coefficients(&fc, &points, rlb, seed)
        .map_err(|stage| fail(stage, Some(rlb)))?;
    Ok(WaringOutput::Numeric(Decomposition {
        terms,
        residual,
        method,
        rank_lower_bound: rlb,
        attempts,
    }))
}

/// Generators cutting out the candidate points. Catalecticant kernels are
/// already polynomials; Koszul kernels group into tensor maps whose common
/// eigenvectors are cut out by the minor ideal, and for odd `n` the left
/// kernel contributes its own eigenvector conditions.
fn build_ideal(
    f: &HomPoly<BigRational>,
    flattening: &FlatteningMatrix<BigRational>,
    kernel_vectors: &[Vec<BigRational>],
    method: Method,
) -> PolyIdeal<BigRational> {
    let n = flattening.n;
    let m = flattening.m;
    let d = flattening.d;
    if flattening.a == 0 {
        let generators = kernel_vectors
            .iter()
            .map(|v| HomPoly::from_coeffs(n + 1, m, v.clone()))
            .filter(|g| !g.is_zero())
            .collect();
        return PolyIdeal { generators };
    }
    let maps: Vec<TensorMap<BigRational>> = kernel_vectors
        .iter()
        .map(|v| TensorMap::from_kernel_vector(n, m, flattening.a, v))
        .collect();
    let mut ideal = eigen_ideal(&maps, n, flattening.a);
    // The low-degree wedge coordinates cut the same locus and keep the
    // downstream Groebner computation small.
    for map in &maps {
        ideal.generators.extend(map.eigen_defect_polys());
    }
    let left_wedge = n - flattening.a;
    let left_degree = d - m - 1;
    if method == Method::KoszulGeneral && n % 2 == 1 && left_wedge >= 1 && left_degree >= 1 {
        let left_kernel = kernel(&flattening.matrix.transpose());
        if !left_kernel.is_empty() {
            let left_maps: Vec<TensorMap<BigRational>> = left_kernel
                .vectors
                .iter()
                .map(|v| TensorMap::from_kernel_vector(n, left_degree, left_wedge, v))
                .collect();
            ideal
                .generators
                .extend(eigen_ideal(&left_maps, n, left_wedge).generators);
            for map in &left_maps {
                ideal.generators.extend(map.eigen_defect_polys());
            }
        }
    }
    let _ = f;
    ideal
}

type ExactTerms = Vec<(BigRational, LinearForm<BigRational>)>;

fn solve_exact_coefficients(
    f: &HomPoly<BigRational>,
    points: &[Vec<BigRational>],
    subset_size: usize,
    seed: u64,
) -> Result<(ExactTerms, usize), FailureStage> {
    let d = f.degree();
    let forms: Vec<LinearForm<BigRational>> = points
        .iter()
        .map(|p| LinearForm::from_coords(p.clone()))
        .collect();
    let columns: Vec<HomPoly<BigRational>> =
        forms.iter().map(|v| pow_linear_form(v, d)).collect();
    let full = power_system(f, &columns, &(0..forms.len()).collect::<Vec<_>>());
    match full {
        LinearSolution::Unique { solution, .. } => {
            Ok((collect_exact_terms(solution, &forms), 1))
        }
        LinearSolution::Inconsistent { .. } => Err(FailureStage::NoCoefficientSolution),
        LinearSolution::Family { .. } => {
            // Retry on subsets of the size justified by the rank bound.
            let mut attempts = 1usize;
            for subset in candidate_subsets(forms.len(), subset_size, seed) {
                attempts += 1;
                if attempts > SUBSET_BUDGET {
                    break;
                }
                if let LinearSolution::Unique { solution, .. } =
                    power_system(f, &columns, &subset)
                {
                    let sub_forms: Vec<LinearForm<BigRational>> =
                        subset.iter().map(|&i| forms[i].clone()).collect();
                    return Ok((collect_exact_terms(solution, &sub_forms), attempts));
                }
            }
            Err(FailureStage::NoCoefficientSolution)
        }
    }
}

fn power_system(
    f: &HomPoly<BigRational>,
    columns: &[HomPoly<BigRational>],
    take: &[usize],
) -> LinearSolution<BigRational> {
    let rows = monomial_count(f.nvars(), f.degree());
    let a = crate::matrix::DenseMatrix::from_fn(rows, take.len(), |r, c| {
        columns[take[c]].coeff(r).clone()
    });
    solve_linear(&a, f.coeffs())
}

fn collect_exact_terms(
    solution: Vec<BigRational>,
    forms: &[LinearForm<BigRational>],
) -> ExactTerms {
    solution
        .into_iter()
        .zip(forms.iter().cloned())
        .filter(|(c, _)| !c.is_zero())
        .collect()
}

type NumericTerms = Vec<(Complex64, LinearForm<Complex64>)>;

fn solve_numeric_coefficients(
    fc: &HomPoly<Complex64>,
    points: &[LocusPoint],
    subset_size: usize,
    seed: u64,
) -> Result<(NumericTerms, usize, f64), FailureStage> {
    let d = fc.degree();
    let scale = fc.max_coeff_magnitude().max(1.0);
    let forms: Vec<LinearForm<Complex64>> = points
        .iter()
        .map(|p| LinearForm::from_coords(p.complex.clone()))
        .collect();
    let columns: Vec<HomPoly<Complex64>> =
        forms.iter().map(|v| pow_linear_form(v, d)).collect();
    let rows = monomial_count(fc.nvars(), d);
    let solve_subset = |take: &[usize]| -> Option<NumericTerms> {
        let a = crate::matrix::DenseMatrix::from_fn(rows, take.len(), |r, c| {
            *columns[take[c]].coeff(r)
        });
        let solution = match solve_linear(&a, fc.coeffs()) {
            LinearSolution::Unique { solution, .. } => solution,
            LinearSolution::Family { particular, .. } => particular,
            LinearSolution::Inconsistent { .. } => return None,
        };
        let mut terms: NumericTerms = solution
            .into_iter()
            .zip(take.iter().map(|&i| forms[i].clone()))
            .collect();
        // Drop numerically dead coefficients if that keeps the residual.
        let max_c = terms.iter().map(|(c, _)| c.norm()).fold(0.0, f64::max);
        let trimmed: NumericTerms = terms
            .iter()
            .filter(|(c, _)| c.norm() > 1e-10 * max_c)
            .cloned()
            .collect();
        if verify(fc, &trimmed) <= VERIFY_TOLERANCE * scale {
            terms = trimmed;
        } else if verify(fc, &terms) > VERIFY_TOLERANCE * scale {
            return None;
        }
        Some(terms)
    };

    let all: Vec<usize> = (0..forms.len()).collect();
    let mut attempts = 1usize;
    if let Some(terms) = solve_subset(&all) {
        let residual = verify(fc, &terms);
        return Ok((terms, attempts, residual));
    }
    for subset in candidate_subsets(forms.len(), subset_size, seed) {
        attempts += 1;
        if attempts > SUBSET_BUDGET {
            break;
        }
        if let Some(terms) = solve_subset(&subset) {
            let residual = verify(fc, &terms);
            return Ok((terms, attempts, residual));
        }
    }
    Err(FailureStage::NoCoefficientSolution)
}

/// Subsets of `{0..s}` of the given size in a seeded random order, capped.
fn candidate_subsets(s: usize, size: usize, seed: u64) -> Vec<Vec<usize>> {
    if size == 0 || size > s {
        return Vec::new();
    }
    let total = crate::poly::binomial(s, size);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5b5e7);
    if total <= 5000 {
        let mut all = Vec::with_capacity(total as usize);
        let mut current: Vec<usize> = (0..size).collect();
        loop {
            all.push(current.clone());
            // Next combination in lexicographic order.
            let mut i = size;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if current[i] != i + s - size {
                    current[i] += 1;
                    for j in i + 1..size {
                        current[j] = current[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    all.shuffle(&mut rng);
                    all.truncate(SUBSET_BUDGET);
                    return all;
                }
            }
        }
    } else {
        let mut out: Vec<Vec<usize>> = Vec::new();
        while out.len() < SUBSET_BUDGET {
            let mut pick: Vec<usize> = (0..s).collect();
            pick.shuffle(&mut rng);
            let mut subset: Vec<usize> = pick[..size].to_vec();
            subset.sort_unstable();
            if !out.contains(&subset) {
                out.push(subset);
            }
        }
        out
    }
}

/// Max-norm of the coefficient vector of `f - Σ c_i v_i^d`; exact zero maps
/// to 0.0.
pub fn verify<T: Scalar>(f: &HomPoly<T>, terms: &[(T, LinearForm<T>)]) -> f64 {
    let d = f.degree();
    let mut acc = HomPoly::zero(f.nvars(), d);
    for (c, v) in terms {
        acc = acc.add(&pow_linear_form(v, d).scale(c));
    }
    let diff = f.sub(&acc);
    if diff.is_zero() {
        0.0
    } else {
        diff.max_coeff_magnitude()
    }
}

/// Deterministic random instance: `r` linear forms with integer coordinates
/// in `[-9, 9]`, pairwise non-proportional, unit coefficients; returns the
/// expanded polynomial together with the ground truth.
pub fn generate_random_rank_r(
    n: usize,
    d: usize,
    r: usize,
    seed: u64,
) -> (
    HomPoly<BigRational>,
    Vec<LinearForm<BigRational>>,
    Vec<BigRational>,
) {
    assert!(r >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nvars = n + 1;
    let mut forms: Vec<LinearForm<BigRational>> = Vec::with_capacity(r);
    while forms.len() < r {
        let coords: Vec<BigRational> = (0..nvars)
            .map(|_| BigRational::from_int(rng.gen_range(-9..=9)))
            .collect();
        if coords.iter().all(|c| c.is_zero()) {
            continue;
        }
        let proportional = forms.iter().any(|g| {
            let u = g.coords();
            let mut ok = true;
            for i in 0..nvars {
                for j in i + 1..nvars {
                    let det = u[i].clone() * coords[j].clone()
                        - u[j].clone() * coords[i].clone();
                    if !det.is_zero() {
                        ok = false;
                    }
                }
            }
            ok
        });
        if proportional {
            continue;
        }
        forms.push(LinearForm::from_coords(coords));
    }
    let mut f = HomPoly::zero(nvars, d);
    for v in &forms {
        f = f.add(&pow_linear_form(v, d));
    }
    let coeffs = vec![BigRational::one(); r];
    (f, forms, coeffs)
}

/// Normalize ground-truth forms the way pipeline output is normalized
/// (first nonzero coordinate 1), for set comparison in tests and the CLI.
pub fn normalize_form(form: &LinearForm<BigRational>) -> Vec<BigRational> {
    ProjectivePoint::normalized(form.coords().to_vec()).coords
}
