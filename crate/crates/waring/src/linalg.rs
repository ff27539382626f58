//! Kernels, ranks and linear solves for flattening matrices and coefficient
//! systems. Exact scalars go through fraction-free (Bareiss) elimination;
//! inexact scalars go through a singular value decomposition with every
//! comparison against zero made at `RANK_TOLERANCE` relative to the largest
//! singular value.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero as _};

use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

/// Relative singular-value cutoff for numerical rank decisions.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Basis of the right null space of a matrix. Vectors are linearly
/// independent and satisfy `M v = 0` (exactly in exact mode, to tolerance in
/// float mode).
#[derive(Clone, Debug)]
pub struct KernelBasis<T: Scalar> {
    pub vectors: Vec<Vec<T>>,
}

impl<T: Scalar> KernelBasis<T> {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Outcome of a linear solve `A x = b`.
#[derive(Clone, Debug)]
pub enum LinearSolution<T: Scalar> {
    /// Exactly one solution; float mode additionally reports the
    /// least-squares residual (zero in exact mode).
    Unique { solution: Vec<T>, residual: f64 },
    /// Consistent with an affine family of solutions of the given dimension.
    Family { particular: Vec<T>, nullity: usize },
    /// No solution; float mode reports the least-squares best fit.
    Inconsistent {
        best_fit: Option<Vec<T>>,
        residual: Option<f64>,
    },
}

/// Row echelon form computed by fraction-free elimination.
///
/// Rows are combined as `row_r <- (p * row_r - m * row_p) / prev_pivot`, so
/// over integral inputs every intermediate entry is a minor of the original
/// matrix and denominators never
/// compound.
struct Echelon<T: Scalar> {
    rows: Vec<Vec<T>>,
    pivot_cols: Vec<usize>,
}

fn bareiss_echelon<T: Scalar>(m: &DenseMatrix<T>) -> Echelon<T> {
    let nrows = m.rows();
    let ncols = m.cols();
    let mut work: Vec<Vec<T>> = (0..nrows).map(|r| m.row(r).to_vec()).collect();
    let mut pivot_cols = Vec::new();
    let mut prev = T::one();
    let mut row = 0usize;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        // Smallest-magnitude nonzero pivot keeps intermediate minors small.
        let mut pivot_row = None;
        let mut best = f64::INFINITY;
        for (r, w) in work.iter().enumerate().skip(row) {
            if !w[col].is_zero() {
                let mag = w[col].magnitude();
                if mag < best {
                    best = mag;
                    pivot_row = Some(r);
                }
            }
        }
        let Some(p) = pivot_row else { continue };
        work.swap(row, p);
        let pivot = work[row][col].clone();
        for r in row + 1..nrows {
            if work[r][col].is_zero() {
                // Still rescale per Bareiss so later exact divisions stay exact.
                for c in col + 1..ncols {
                    let v = work[r][c].clone() * pivot.clone() / prev.clone();
                    work[r][c] = v;
                }
            } else {
                let factor = work[r][col].clone();
                for c in col + 1..ncols {
                    let v = (work[r][c].clone() * pivot.clone()
                        - factor.clone() * work[row][c].clone())
                        / prev.clone();
                    work[r][c] = v;
                }
            }
            work[r][col] = T::zero();
        }
        prev = pivot;
        pivot_cols.push(col);
        row += 1;
    }
    work.truncate(pivot_cols.len());
    Echelon {
        rows: work,
        pivot_cols,
    }
}

fn kernel_from_echelon<T: Scalar>(ech: &Echelon<T>, ncols: usize) -> Vec<Vec<T>> {
    let pivot_set: std::collections::HashSet<usize> = ech.pivot_cols.iter().copied().collect();
    let free_cols: Vec<usize> = (0..ncols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![T::zero(); ncols];
        v[fc] = T::one();
        // Back-substitute through the echelon rows.
        for k in (0..ech.pivot_cols.len()).rev() {
            let pc = ech.pivot_cols[k];
            if pc > fc {
                continue;
            }
            let row = &ech.rows[k];
            let mut acc = T::zero();
            for c in pc + 1..ncols {
                if !row[c].is_zero() && !v[c].is_zero() {
                    acc = acc + row[c].clone() * v[c].clone();
                }
            }
            v[pc] = -acc / row[pc].clone();
        }
        normalize_primitive_vector(&mut v);
        basis.push(v);
    }
    basis
}

/// Scale an exact vector so its entries are coprime integers with the first
/// nonzero entry positive; leaves inexact scalars untouched.
fn normalize_primitive_vector<T: Scalar>(v: &mut [T]) {
    if !T::EXACT {
        return;
    }
    let rationals: Vec<BigRational> = v
        .iter()
        .map(|x| x.to_rational().expect("exact scalar"))
        .collect();
    let mut den_lcm = BigInt::one();
    for r in &rationals {
        den_lcm = den_lcm.lcm(r.denom());
    }
    let mut content = BigInt::zero();
    for r in &rationals {
        content = content.gcd(&(r.numer() * (&den_lcm / r.denom())));
    }
    if content.is_zero() {
        return;
    }
    let sign = rationals
        .iter()
        .find(|r| !r.is_zero())
        .map(|r| if r.is_negative() { -BigInt::one() } else { BigInt::one() })
        .unwrap_or_else(BigInt::one);
    let scale = BigRational::new(den_lcm * sign, content);
    for (slot, r) in v.iter_mut().zip(rationals) {
        *slot = T::from_rational(&(r * scale.clone()));
    }
}

fn to_f64_matrix<T: Scalar>(m: &DenseMatrix<T>) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |r, c| m.get(r, c).to_f64())
}

fn to_c64_matrix<T: Scalar>(m: &DenseMatrix<T>) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |r, c| m.get(r, c).to_c64())
}

/// Pad with zero rows so the SVD carries a full set of right singular
/// vectors even for wide matrices.
fn padded_svd(a: DMatrix<f64>) -> nalgebra::linalg::SVD<f64, nalgebra::Dyn, nalgebra::Dyn> {
    let (r, c) = a.shape();
    let a = if r < c {
        let mut padded = DMatrix::zeros(c, c);
        padded.view_mut((0, 0), (r, c)).copy_from(&a);
        padded
    } else {
        a
    };
    a.svd(true, true)
}

fn padded_svd_c64(
    a: DMatrix<Complex64>,
) -> nalgebra::linalg::SVD<Complex64, nalgebra::Dyn, nalgebra::Dyn> {
    let (r, c) = a.shape();
    let a = if r < c {
        let mut padded = DMatrix::zeros(c, c);
        padded.view_mut((0, 0), (r, c)).copy_from(&a);
        padded
    } else {
        a
    };
    a.svd(true, true)
}

fn numerical_rank(sv: &[f64]) -> usize {
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_TOLERANCE * max).count()
}

/// Basis of the right null space of `M`.
pub fn kernel<T: Scalar>(m: &DenseMatrix<T>) -> KernelBasis<T> {
    if T::EXACT {
        let ech = bareiss_echelon(m);
        KernelBasis {
            vectors: kernel_from_echelon(&ech, m.cols()),
        }
    } else if T::COMPLEX {
        let svd = padded_svd_c64(to_c64_matrix(m));
        let rank = numerical_rank(svd.singular_values.as_slice());
        let v_t = svd.v_t.expect("SVD with vectors");
        let mut vectors = Vec::new();
        for r in rank..v_t.nrows() {
            // Rows of V^H are conjugated right singular vectors.
            vectors.push(v_t.row(r).iter().map(|z| T::from_c64(z.conj())).collect());
        }
        KernelBasis { vectors }
    } else {
        let svd = padded_svd(to_f64_matrix(m));
        let rank = numerical_rank(svd.singular_values.as_slice());
        let v_t = svd.v_t.expect("SVD with vectors");
        let mut vectors = Vec::new();
        for r in rank..v_t.nrows() {
            vectors.push(v_t.row(r).iter().map(|&x| T::from_f64(x)).collect());
        }
        KernelBasis { vectors }
    }
}

/// Rank of `M`: exact in exact mode, numerical at [`RANK_TOLERANCE`] in
/// float mode.
pub fn rank_of<T: Scalar>(m: &DenseMatrix<T>) -> usize {
    if T::EXACT {
        bareiss_echelon(m).pivot_cols.len()
    } else if T::COMPLEX {
        let svd = padded_svd_c64(to_c64_matrix(m));
        numerical_rank(svd.singular_values.as_slice())
    } else {
        let svd = padded_svd(to_f64_matrix(m));
        numerical_rank(svd.singular_values.as_slice())
    }
}

/// Solve `A x = b`, classifying the solution set.
pub fn solve_linear<T: Scalar>(a: &DenseMatrix<T>, b: &[T]) -> LinearSolution<T> {
    assert_eq!(b.len(), a.rows());
    if T::EXACT {
        solve_exact(a, b)
    } else {
        solve_float(a, b)
    }
}

fn solve_exact<T: Scalar>(a: &DenseMatrix<T>, b: &[T]) -> LinearSolution<T> {
    let ncols = a.cols();
    // Eliminate the augmented matrix [A | b].
    let aug = DenseMatrix::from_fn(a.rows(), ncols + 1, |r, c| {
        if c < ncols {
            a.get(r, c).clone()
        } else {
            b[r].clone()
        }
    });
    let ech = bareiss_echelon(&aug);
    if ech.pivot_cols.last() == Some(&ncols) {
        return LinearSolution::Inconsistent {
            best_fit: None,
            residual: None,
        };
    }
    let rank = ech.pivot_cols.len();
    // Particular solution: free variables set to zero.
    let mut x = vec![T::zero(); ncols];
    for k in (0..rank).rev() {
        let pc = ech.pivot_cols[k];
        let row = &ech.rows[k];
        let mut acc = row[ncols].clone();
        for c in pc + 1..ncols {
            if !row[c].is_zero() && !x[c].is_zero() {
                acc = acc - row[c].clone() * x[c].clone();
            }
        }
        x[pc] = acc / row[pc].clone();
    }
    if rank == ncols {
        LinearSolution::Unique {
            solution: x,
            residual: 0.0,
        }
    } else {
        LinearSolution::Family {
            particular: x,
            nullity: ncols - rank,
        }
    }
}

fn solve_float<T: Scalar>(a: &DenseMatrix<T>, b: &[T]) -> LinearSolution<T> {
    // Complex-capable least squares; real scalars have zero imaginary parts
    // throughout and real results.
    let am = to_c64_matrix(a);
    let bv = nalgebra::DVector::from_iterator(b.len(), b.iter().map(|x| x.to_c64()));
    let svd = am.clone().svd(true, true);
    let rank = numerical_rank(svd.singular_values.as_slice());
    let x = svd
        .solve(&bv, RANK_TOLERANCE * svd.singular_values.max())
        .expect("SVD solve");
    let residual = (&am * &x - &bv).norm();
    let scale = bv
        .norm()
        .max(am.camax() * x.norm())
        .max(1.0);
    let solution: Vec<T> = x.iter().map(|&v| T::from_c64(v)).collect();
    if residual > 1e-8 * scale {
        LinearSolution::Inconsistent {
            best_fit: Some(solution),
            residual: Some(residual),
        }
    } else if rank == a.cols() {
        LinearSolution::Unique {
            solution,
            residual,
        }
    } else {
        LinearSolution::Family {
            particular: solution,
            nullity: a.cols() - rank,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn identity_has_empty_kernel() {
        let m: DenseMatrix<Rational> = DenseMatrix::identity(5);
        assert_eq!(kernel(&m).dim(), 0);
        assert_eq!(rank_of(&m), 5);
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let m: DenseMatrix<Rational> = DenseMatrix::zeros(3, 4);
        let k = kernel(&m);
        assert_eq!(k.dim(), 4);
        assert_eq!(rank_of(&m), 0);
    }

    #[test]
    fn kernel_vectors_annihilate_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let rows = rng.gen_range(2..=7);
            let cols = rng.gen_range(2..=7);
            let m = DenseMatrix::from_fn(rows, cols, |_, _| rat(rng.gen_range(-9..=9)));
            let k = kernel(&m);
            for v in &k.vectors {
                assert!(m.mul_vec(v).iter().all(Rational::is_zero));
            }
            assert_eq!(rank_of(&m) + k.dim(), cols);
        }
    }

    #[test]
    fn float_rank_matches_exact_rank_on_integer_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let rows = rng.gen_range(2..=10);
            let cols = rng.gen_range(2..=10);
            let inner = rng.gen_range(1..=rows.min(cols));
            // Build a matrix of known-ish deficient rank as a product.
            let a = DenseMatrix::from_fn(rows, inner, |_, _| rat(rng.gen_range(-9..=9)));
            let b = DenseMatrix::from_fn(inner, cols, |_, _| rat(rng.gen_range(-9..=9)));
            let m = DenseMatrix::from_fn(rows, cols, |r, c| {
                (0..inner).fold(Rational::zero(), |acc, k| {
                    acc + a.get(r, k).clone() * b.get(k, c).clone()
                })
            });
            let exact = rank_of(&m);
            let float = rank_of(&m.map(|x| crate::scalar::Scalar::to_f64(x)));
            assert_eq!(exact, float);
            let kf = kernel(&m.map(|x| crate::scalar::Scalar::to_f64(x)));
            assert_eq!(kf.dim() + float, cols);
            // Float kernel vectors annihilate to tolerance.
            let mf = m.map(|x| crate::scalar::Scalar::to_f64(x));
            let scale = mf.max_magnitude().max(1.0);
            for v in &kf.vectors {
                for y in mf.mul_vec(v) {
                    assert!(y.abs() <= 1e-8 * scale);
                }
            }
        }
    }

    #[test]
    fn solve_identity_is_unique() {
        let a: DenseMatrix<Rational> = DenseMatrix::identity(4);
        let b: Vec<Rational> = (0..4).map(|i| rat(i as i64 + 1)).collect();
        match solve_linear(&a, &b) {
            LinearSolution::Unique { solution, .. } => assert_eq!(solution, b),
            other => panic!("expected unique, got {other:?}"),
        }
    }

    #[test]
    fn solve_power_system_from_two_points() {
        // Columns are coefficient vectors of v^3 for v = x0 and v = x1 in two
        // variables: degree-3 basis x0^3, x0^2x1, x0x1^2, x1^3.
        let a = DenseMatrix::from_rows(vec![
            vec![rat(1), rat(0)],
            vec![rat(0), rat(0)],
            vec![rat(0), rat(0)],
            vec![rat(0), rat(1)],
        ]);
        let b = vec![rat(2), rat(0), rat(0), rat(-5)];
        match solve_linear(&a, &b) {
            LinearSolution::Unique { solution, .. } => {
                assert_eq!(solution, vec![rat(2), rat(-5)]);
            }
            other => panic!("expected unique, got {other:?}"),
        }
    }

    #[test]
    fn inconsistent_and_family_cases_are_reported() {
        let a = DenseMatrix::from_rows(vec![vec![rat(1), rat(1)], vec![rat(2), rat(2)]]);
        match solve_linear(&a, &[rat(1), rat(3)]) {
            LinearSolution::Inconsistent { .. } => {}
            other => panic!("expected inconsistent, got {other:?}"),
        }
        match solve_linear(&a, &[rat(1), rat(2)]) {
            LinearSolution::Family { nullity, particular } => {
                assert_eq!(nullity, 1);
                let r0 = particular[0].clone() + particular[1].clone();
                assert_eq!(r0, rat(1));
            }
            other => panic!("expected family, got {other:?}"),
        }
    }
}
