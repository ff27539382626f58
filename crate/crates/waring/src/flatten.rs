//! Catalecticant matrices, Koszul matrices, and the Koszul flattening of a
//! homogeneous polynomial.
//!
//! Orientation convention for a flattening `P : Hom(S^m V, Λ^a V) ->
//! Hom(Λ^{n-a} V, S^{d-m-1} V)`: rows index the target, columns index the
//! source, so kernel vectors live in the source and group into
//! `binomial(n+1, a)` polynomials of degree `m`. Exterior-power coordinates
//! are always indexed by sorted subsets listed colexicographically.

use crate::matrix::DenseMatrix;
use crate::poly::{monomial_count, HomPoly, Multidegree, MonomialBasis};
use crate::scalar::Scalar;

/// All `k`-element subsets of `{0, ..., universe-1}` in colexicographic
/// order (sorted by largest element, then recursively).
pub fn subsets_colex(universe: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for top in (k - 1)..universe {
        for mut s in subsets_colex(top, k - 1) {
            s.push(top);
            out.push(s);
        }
    }
    out
}

/// Sign of the permutation sorting `seq` (distinct entries) ascending.
pub(crate) fn permutation_sign(seq: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Which flattening family a matrix belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlatteningKind {
    Catalecticant,
    Koszul,
}

/// A catalecticant or Koszul flattening with its block metadata. The rank of
/// the matrix divided by `bundle_rank` is a lower bound for the symmetric
/// rank of the polynomial it was built from.
#[derive(Clone, Debug)]
pub struct FlatteningMatrix<T: Scalar> {
    pub kind: FlatteningKind,
    /// Projective dimension (the polynomial has n+1 variables).
    pub n: usize,
    pub d: usize,
    pub m: usize,
    /// Wedge degree; 0 encodes the catalecticant.
    pub a: usize,
    pub matrix: DenseMatrix<T>,
    pub bundle_rank: usize,
}

/// Entry of a Koszul matrix: `0` or `±x_j`, encoded as `0` / `±(j+1)`.
#[derive(Clone, Debug)]
pub struct KoszulMatrix {
    pub n: usize,
    /// Position in the complex: maps the rank-`binomial(n+1,i)` module to
    /// the rank-`binomial(n+1,i-1)` one.
    pub i: usize,
    rows: usize,
    cols: usize,
    entries: Vec<i32>,
}

impl KoszulMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `Some((sign, var))` for a `±x_var` entry, `None` for zero.
    pub fn entry(&self, r: usize, c: usize) -> Option<(i64, usize)> {
        let code = self.entries[r * self.cols + c];
        if code == 0 {
            None
        } else {
            Some((code.signum() as i64, code.unsigned_abs() as usize - 1))
        }
    }

    pub fn to_poly_matrix<T: Scalar>(&self) -> Vec<Vec<HomPoly<T>>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| match self.entry(r, c) {
                        None => HomPoly::zero(self.n + 1, 1),
                        Some((sign, var)) => {
                            let md =
                                Multidegree((0..self.n + 1).map(|j| u32::from(j == var)).collect());
                            HomPoly::monomial(self.n + 1, &md, T::from_int(sign))
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Basis labels for the exterior power Λ^j of an (n+1)-dimensional space.
/// Small powers use plain sorted subsets; powers above the middle are indexed
/// by complements (with the orientation sign), which matches the classical
/// skew presentation of the matrices near the end of the complex.
struct WedgeBasis {
    /// (label, actual subset, sign) triples: the basis vector is
    /// `sign * e_{actual}`.
    vectors: Vec<(Vec<usize>, Vec<usize>, i64)>,
}

fn wedge_basis(n: usize, j: usize) -> WedgeBasis {
    let universe = n + 1;
    if 2 * j <= universe {
        let vectors = subsets_colex(universe, j)
            .into_iter()
            .map(|s| (s.clone(), s, 1))
            .collect();
        WedgeBasis { vectors }
    } else {
        let vectors = subsets_colex(universe, universe - j)
            .into_iter()
            .map(|d| {
                let comp: Vec<usize> = (0..universe).filter(|x| !d.contains(x)).collect();
                let mut concat = comp.clone();
                concat.extend(&d);
                let sign = permutation_sign(&concat);
                (d, comp, sign)
            })
            .collect();
        WedgeBasis { vectors }
    }
}

/// The `i`-th Koszul matrix for n+1 variables: the contraction
/// `Λ^i -> Λ^{i-1}` against the vector of variables, of shape
/// `binomial(n+1, i-1) x binomial(n+1, i)`. Consecutive matrices compose to
/// zero.
pub fn koszul_matrix(n: usize, i: usize) -> KoszulMatrix {
    assert!(i >= 1 && i <= n + 1, "complex index out of range");
    let col_basis = wedge_basis(n, i);
    let row_basis = wedge_basis(n, i - 1);
    let rows = row_basis.vectors.len();
    let cols = col_basis.vectors.len();
    // Look up rows by their actual subset.
    let mut row_of: std::collections::HashMap<Vec<usize>, (usize, i64)> =
        std::collections::HashMap::new();
    for (ix, (_, actual, sign)) in row_basis.vectors.iter().enumerate() {
        row_of.insert(actual.clone(), (ix, *sign));
    }
    let mut entries = vec![0i32; rows * cols];
    for (c, (_, subset, col_sign)) in col_basis.vectors.iter().enumerate() {
        for (pos, &t) in subset.iter().enumerate() {
            let mut reduced = subset.clone();
            reduced.remove(pos);
            let (r, row_sign) = row_of[&reduced];
            let sign = col_sign * row_sign * if pos % 2 == 0 { 1 } else { -1 };
            entries[r * cols + c] = (sign * (t as i64 + 1)) as i32;
        }
    }
    KoszulMatrix {
        n,
        i,
        rows,
        cols,
        entries,
    }
}

/// Raw catalecticant of contraction order `m`, allowing the target to be the
/// constants (`m == degree`). The entry at row `ν`, column `μ` is the mixed
/// derivative `∂^ν ∂^μ f = (ν+μ)! c_{ν+μ}`, which is symmetric in `ν ↔ μ`;
/// relative to the monomial-basis expansion of `∂^μ f` this rescales row `ν`
/// by `ν!`, leaving ranks and kernels unchanged.
fn catalecticant_matrix<T: Scalar>(f: &HomPoly<T>, m: usize) -> DenseMatrix<T> {
    let nvars = f.nvars();
    let d = f.degree();
    assert!(m <= d);
    let src = MonomialBasis::get(nvars, m);
    let dst = MonomialBasis::get(nvars, d - m);
    DenseMatrix::from_fn(dst.len(), src.len(), |r, c| {
        let nu = dst.multidegree(r);
        let mu = src.multidegree(c);
        let total = Multidegree(nu.0.iter().zip(&mu.0).map(|(a, b)| a + b).collect());
        let mut factor: i64 = 1;
        for e in total.exponents() {
            for k in 2..=*e as i64 {
                factor *= k;
            }
        }
        f.coeff_of(&total).clone() * T::from_int(factor)
    })
}

/// Catalecticant flattening `C_f^m : S^m V* -> S^{d-m} V`. The column
/// indexed by a degree-`m` monomial holds the coefficient vector of the
/// corresponding iterated partial derivative of `f`.
pub fn catalecticant<T: Scalar>(f: &HomPoly<T>, m: usize) -> FlatteningMatrix<T> {
    let d = f.degree();
    assert!(m >= 1 && m <= d - 1, "contraction order out of range");
    FlatteningMatrix {
        kind: FlatteningKind::Catalecticant,
        n: f.nvars() - 1,
        d,
        m,
        a: 0,
        matrix: catalecticant_matrix(f, m),
        bundle_rank: 1,
    }
}

/// Koszul flattening `P_f : Hom(S^m V, Λ^a V) -> Hom(Λ^{n-a} V,
/// S^{d-m-1} V)`.
///
/// Block at row-subset `R` (size n-a) and column-subset `J` (size a) is
/// `±C^m_{f_t}` where `t` is the one variable outside `J ∪ R`, and the sign
/// is the parity of the shuffle `(J, t, R)`; blocks with `J ∩ R != ∅` are
/// zero. For `a = 0` this degenerates to the catalecticant of the same
/// contraction order.
pub fn koszul_flattening<T: Scalar>(f: &HomPoly<T>, m: usize, a: usize) -> FlatteningMatrix<T> {
    let nvars = f.nvars();
    let n = nvars - 1;
    let d = f.degree();
    assert!(a <= n, "wedge degree out of range");
    assert!(m >= 1 && m <= d - 1, "contraction order out of range");
    if a == 0 {
        return catalecticant(f, m);
    }
    let partials: Vec<HomPoly<T>> = (0..nvars).map(|i| f.partial_derivative(i)).collect();
    let cats: Vec<DenseMatrix<T>> = partials
        .iter()
        .map(|g| catalecticant_matrix(g, m))
        .collect();
    let block_h = monomial_count(nvars, d - m - 1);
    let block_w = monomial_count(nvars, m);
    let row_subsets = subsets_colex(nvars, n - a);
    let col_subsets = subsets_colex(nvars, a);
    let col_index: std::collections::HashMap<Vec<usize>, usize> = col_subsets
        .iter()
        .enumerate()
        .map(|(ix, s)| (s.clone(), ix))
        .collect();
    let mut matrix = DenseMatrix::zeros(block_h * row_subsets.len(), block_w * col_subsets.len());
    for (bi, r_set) in row_subsets.iter().enumerate() {
        let complement: Vec<usize> = (0..nvars).filter(|x| !r_set.contains(x)).collect();
        for &t in &complement {
            let j_set: Vec<usize> = complement.iter().copied().filter(|&x| x != t).collect();
            let bj = col_index[&j_set];
            let mut shuffle = j_set.clone();
            shuffle.push(t);
            shuffle.extend(r_set);
            let sign = permutation_sign(&shuffle);
            let block = &cats[t];
            for r in 0..block_h {
                for c in 0..block_w {
                    let v = block.get(r, c);
                    if v.is_zero() {
                        continue;
                    }
                    let v = if sign > 0 { v.clone() } else { -v.clone() };
                    matrix.set(bi * block_h + r, bj * block_w + c, v);
                }
            }
        }
    }
    FlatteningMatrix {
        kind: FlatteningKind::Koszul,
        n,
        d,
        m,
        a,
        matrix,
        bundle_rank: crate::poly::binomial(n, a) as usize,
    }
}

/// Matrix of the wedge map `v ∧ - : Λ^{a-1} V -> Λ^a V` with rows indexed by
/// `a`-subsets and columns by `(a-1)`-subsets, both colex. Entries are `0` or
/// `±x_j`, encoded as in [`KoszulMatrix`]. At any nonzero point its rank is
/// exactly `binomial(n, a-1)` and its column span is `v ∧ Λ^{a-1} V`.
pub(crate) fn wedge_map_codes(n: usize, a: usize) -> Vec<Vec<i32>> {
    assert!(a >= 1 && a <= n + 1);
    let nvars = n + 1;
    let rows = subsets_colex(nvars, a);
    let cols = subsets_colex(nvars, a - 1);
    rows.iter()
        .map(|j_set| {
            cols.iter()
                .map(|s_set| {
                    // Nonzero iff S ⊂ J with one element j missing:
                    // e_j ∧ e_S = (-1)^{#{s in S : s < j}} e_J.
                    let missing: Vec<usize> = j_set
                        .iter()
                        .copied()
                        .filter(|x| !s_set.contains(x))
                        .collect();
                    if missing.len() != 1 || !s_set.iter().all(|x| j_set.contains(x)) {
                        return 0i32;
                    }
                    let j = missing[0];
                    let below = s_set.iter().filter(|&&s| s < j).count();
                    let sign: i32 = if below % 2 == 0 { 1 } else { -1 };
                    sign * (j as i32 + 1)
                })
                .collect()
        })
        .collect()
}
