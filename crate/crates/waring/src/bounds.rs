//! Closed-form formulas: generic rank, uniqueness classification,
//! eigenvector counts, and per-method applicability bounds.

use crate::decompose::Method;
use crate::poly::binomial;

/// How many summands a general form of the given shape needs.
///
/// The ceiling count `binomial(n+d,d)/(n+1)` with the three exceptional
/// families: quadrics need `n+1`, quartics in 3..5 variables need
/// `binomial(n+2,2)`, and cubics in five variables need 8.
pub fn generic_rank(n: usize, d: usize) -> usize {
    assert!(n >= 1 && d >= 2);
    if d == 2 {
        return n + 1;
    }
    if d == 4 && (2..=4).contains(&n) {
        return binomial(n + 2, 2) as usize;
    }
    if (n, d) == (4, 3) {
        return 8;
    }
    let total = binomial(n + d, d);
    ((total + n as u128) / (n as u128 + 1)) as usize
}

/// Secant defectivity: ranges of `r` below the generic rank where the
/// decomposition is never finite.
fn is_defective(n: usize, d: usize, r: usize) -> bool {
    (d == 2 && (2..=n).contains(&r))
        || (d == 4 && (2..=4).contains(&n) && r == binomial(n + 2, 2) as usize - 1)
        || ((n, d) == (4, 3) && r == 7)
}

/// Whether `(n, d)` belongs to one of the exceptional families of
/// [`generic_rank`]; at the generic rank these always have positive-
/// dimensional families of decompositions.
fn is_exceptional_shape(n: usize, d: usize) -> bool {
    d == 2 || (d == 4 && (2..=4).contains(&n)) || (n, d) == (4, 3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniquenessClass {
    Unique,
    DefectiveInfinitelyMany,
    WeaklyDefectiveTwo,
    FinitelyManyGeneric,
    InfinitelyManyGeneric,
    RankExceedsGeneric,
}

/// Classify how many decompositions a general rank-`r` form in `S^d C^{n+1}`
/// has.
///
/// Below the generic rank the classification is: unique, except the
/// defective ranges (infinitely many) and the two weakly defective cases
/// (sextics in 3 variables at rank 9 and quartics in 4 variables at rank 8,
/// exactly two decompositions each). At the generic rank, uniqueness holds
/// exactly for odd-degree binary forms, ternary quintics and quaternary
/// cubics; the exceptional shapes have infinitely many; otherwise the count
/// is finite or infinite according to whether `n+1` divides
/// `binomial(n+d,d)`.
pub fn uniqueness_class(n: usize, d: usize, r: usize) -> UniquenessClass {
    assert!(r >= 1);
    let g = generic_rank(n, d);
    if r > g {
        return UniquenessClass::RankExceedsGeneric;
    }
    if r < g {
        if is_defective(n, d, r) {
            return UniquenessClass::DefectiveInfinitelyMany;
        }
        if (n, d, r) == (2, 6, 9) || (n, d, r) == (3, 4, 8) {
            return UniquenessClass::WeaklyDefectiveTwo;
        }
        return UniquenessClass::Unique;
    }
    // r == generic rank.
    if (n == 1 && d % 2 == 1) || (n, d) == (2, 5) || (n, d) == (3, 3) {
        return UniquenessClass::Unique;
    }
    if is_exceptional_shape(n, d) {
        return UniquenessClass::InfinitelyManyGeneric;
    }
    if binomial(n + d, d) % (n as u128 + 1) == 0 {
        UniquenessClass::FinitelyManyGeneric
    } else {
        UniquenessClass::InfinitelyManyGeneric
    }
}

/// Number of eigenvectors of a general element of `Hom(S^m V, Λ^a V)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenvectorCount {
    Finite(u128),
    Infinite,
}

/// Count of `[v]` with `M(v^m) ∧ v = 0` for general `M`, by case on the
/// wedge degree: `(m^{n+1}-1)/(m-1)` for `a = 1`,
/// `((m+1)^{n+1}+(-1)^n)/(m+2)` for `a = n-1`, zero in the middle range,
/// and degenerate small/large cases as listed.
pub fn eigenvector_count(n: usize, m: usize, a: usize) -> EigenvectorCount {
    assert!(m >= 1 && a <= n + 1);
    use EigenvectorCount::*;
    if n == 1 {
        // On the line: a = 1 is the classical count m+1; a = 0 or 2 sees the
        // zeros of a single binary form of degree m.
        return match a {
            1 => Finite(m as u128 + 1),
            _ => Finite(m as u128),
        };
    }
    if a == 0 || a >= n {
        // Λ^a Q is trivial or a line bundle: the locus is empty-codimension,
        // hence infinite.
        return Infinite;
    }
    if a == 1 {
        if m == 1 {
            return Finite(n as u128 + 1);
        }
        let count = ((m as u128).pow(n as u32 + 1) - 1) / (m as u128 - 1);
        return Finite(count);
    }
    if a == n - 1 {
        let mp = m as u128 + 1;
        let num = if n % 2 == 0 {
            mp.pow(n as u32 + 1) + 1
        } else {
            mp.pow(n as u32 + 1) - 1
        };
        return Finite(num / (m as u128 + 2));
    }
    Finite(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Applicability {
    Guaranteed,
    BorderlineRetry,
    NotGuaranteed,
}

/// Evaluate the sufficient-condition bound of the given method for general
/// rank-`r` forms in `S^d C^{n+1}`. `BorderlineRetry` marks the even-degree
/// catalecticant edge (`r = binomial(n+m,n) - n`) and the second Koszul
/// bound on ternary forms, where success requires retrying the coefficient
/// step or tolerating extra base points.
pub fn applicability(n: usize, d: usize, r: usize, method: Method) -> Applicability {
    assert!(r >= 1);
    use Applicability::*;
    match method {
        Method::Auto => panic!("resolve the method before querying applicability"),
        Method::Catalecticant => {
            let m = d.div_ceil(2);
            if d % 2 == 0 {
                let full = binomial(n + m, n) as usize;
                if r + n + 1 <= full {
                    Guaranteed
                } else if r + n == full {
                    BorderlineRetry
                } else {
                    NotGuaranteed
                }
            } else if r <= binomial(n + m - 1, n) as usize {
                Guaranteed
            } else {
                NotGuaranteed
            }
        }
        Method::KoszulA1 => koszul_ternary_bound(n, d, r),
        Method::KoszulGeneral => {
            if n == 2 {
                return koszul_ternary_bound(n, d, r);
            }
            if d % 2 == 0 || d < 3 {
                return NotGuaranteed;
            }
            let m = (d - 1) / 2;
            let base = binomial(m + n, n) as usize;
            let bound = if n == 3 {
                base.max(knbound_three(m))
            } else {
                base
            };
            if r <= bound {
                Guaranteed
            } else {
                NotGuaranteed
            }
        }
    }
}

fn koszul_ternary_bound(n: usize, d: usize, r: usize) -> Applicability {
    use Applicability::*;
    if n != 2 || d % 2 == 0 || d < 3 {
        return NotGuaranteed;
    }
    let m = (d - 1) / 2;
    if 2 * r <= m * m + 3 * m + 4 {
        Guaranteed
    } else if 2 * r <= m * m + 4 * m + 2 {
        BorderlineRetry
    } else {
        NotGuaranteed
    }
}

/// Sharper odd-degree bound for quaternary forms:
/// `floor(((m+4)(m+3)(m+1) - m^2 - m - 16) / 6)`.
fn knbound_three(m: usize) -> usize {
    let a = (m + 4) * (m + 3) * (m + 1);
    (a - m * m - m - 16) / 6
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("no closed-form kernel dimension for these parameters")]
    Unsupported,
}

/// Expected kernel dimension of the Koszul flattening of a general rank-`r`
/// form: `dim Hom(S^m V, Λ^a V) - binomial(n,a) * r`, valid for the two
/// shapes with closed-form section counts, `(n,a) = (2,1)` and `(3,2)`,
/// with `d = 2m+1` and `r` inside the surjectivity range.
pub fn expected_kernel_dim(
    n: usize,
    d: usize,
    m: usize,
    a: usize,
    r: usize,
) -> Result<usize, BoundsError> {
    if d != 2 * m + 1 || r == 0 {
        return Err(BoundsError::Unsupported);
    }
    let in_range = match (n, a) {
        // h0 of the twisted quotient bundle through r general points stays
        // the expected (m+3)(m+1) - 2r while 2r <= (m+3)(m+1).
        (2, 1) => 2 * r <= (m + 3) * (m + 1),
        // Quaternary analogue: 3r <= (m+4)(m+3)(m+1)/2 - m - 2.
        (3, 2) => 3 * r <= (m + 4) * (m + 3) * (m + 1) / 2 - m - 2,
        _ => return Err(BoundsError::Unsupported),
    };
    if !in_range {
        return Err(BoundsError::Unsupported);
    }
    let total = binomial(n + m, n) as usize * binomial(n + 1, a) as usize;
    Ok(total - binomial(n, a) as usize * r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_rank_examples() {
        assert_eq!(generic_rank(2, 5), 7);
        assert_eq!(generic_rank(4, 3), 8);
        assert_eq!(generic_rank(3, 2), 4);
        assert_eq!(generic_rank(2, 4), 6);
        assert_eq!(generic_rank(1, 5), 3);
        assert_eq!(generic_rank(2, 6), 10);
        assert_eq!(generic_rank(3, 3), 5);
    }

    #[test]
    fn uniqueness_examples() {
        assert_eq!(uniqueness_class(2, 6, 9), UniquenessClass::WeaklyDefectiveTwo);
        assert_eq!(uniqueness_class(3, 4, 8), UniquenessClass::WeaklyDefectiveTwo);
        assert_eq!(uniqueness_class(3, 3, 5), UniquenessClass::Unique);
        assert_eq!(
            uniqueness_class(2, 4, 5),
            UniquenessClass::DefectiveInfinitelyMany
        );
        assert_eq!(uniqueness_class(2, 5, 7), UniquenessClass::Unique);
        assert_eq!(uniqueness_class(1, 7, 4), UniquenessClass::Unique);
        assert_eq!(uniqueness_class(2, 5, 8), UniquenessClass::RankExceedsGeneric);
        assert_eq!(
            uniqueness_class(4, 3, 7),
            UniquenessClass::DefectiveInfinitelyMany
        );
        assert_eq!(
            uniqueness_class(3, 2, 4),
            UniquenessClass::InfinitelyManyGeneric
        );
    }

    #[test]
    fn eigenvector_count_examples() {
        use EigenvectorCount::*;
        assert_eq!(eigenvector_count(2, 2, 1), Finite(7));
        assert_eq!(eigenvector_count(3, 1, 2), Finite(5));
        assert_eq!(eigenvector_count(4, 3, 2), Finite(0));
        assert_eq!(eigenvector_count(2, 1, 1), Finite(3));
        assert_eq!(eigenvector_count(2, 3, 1), Finite(13));
        assert_eq!(eigenvector_count(3, 2, 2), Finite(20));
        assert_eq!(eigenvector_count(3, 1, 0), Infinite);
        assert_eq!(eigenvector_count(1, 4, 1), Finite(5));
        assert_eq!(eigenvector_count(1, 4, 0), Finite(4));
    }

    #[test]
    fn eigenvector_count_closed_forms_are_integral() {
        for n in 1..=6usize {
            for m in 1..=6usize {
                if m > 1 {
                    let num = (m as u128).pow(n as u32 + 1) - 1;
                    assert_eq!(num % (m as u128 - 1), 0, "a=1 form at n={n} m={m}");
                }
                let mp = m as u128 + 1;
                let num = if n % 2 == 0 {
                    mp.pow(n as u32 + 1) + 1
                } else {
                    mp.pow(n as u32 + 1) - 1
                };
                assert_eq!(num % (m as u128 + 2), 0, "a=n-1 form at n={n} m={m}");
            }
        }
    }

    #[test]
    fn applicability_examples() {
        use Applicability::*;
        assert_eq!(applicability(2, 6, 7, Method::Catalecticant), Guaranteed);
        assert_eq!(applicability(2, 6, 8, Method::Catalecticant), BorderlineRetry);
        assert_eq!(applicability(2, 6, 9, Method::Catalecticant), NotGuaranteed);
        assert_eq!(applicability(2, 5, 7, Method::KoszulA1), Guaranteed);
        assert_eq!(applicability(2, 5, 8, Method::KoszulA1), NotGuaranteed);
        assert_eq!(applicability(3, 5, 11, Method::KoszulGeneral), Guaranteed);
        assert_eq!(applicability(3, 5, 12, Method::KoszulGeneral), NotGuaranteed);
        assert_eq!(applicability(4, 3, 5, Method::KoszulGeneral), Guaranteed);
        assert_eq!(applicability(4, 3, 6, Method::KoszulGeneral), NotGuaranteed);
        // Odd-degree catalecticant bound binom(n+m-1, n) = 6 at (2,5).
        assert_eq!(applicability(2, 5, 6, Method::Catalecticant), Guaranteed);
        assert_eq!(applicability(2, 5, 7, Method::Catalecticant), NotGuaranteed);
    }

    #[test]
    fn applicability_is_monotone_in_rank() {
        let rank_of = |app: Applicability| match app {
            Applicability::Guaranteed => 2,
            Applicability::BorderlineRetry => 1,
            Applicability::NotGuaranteed => 0,
        };
        for method in [Method::Catalecticant, Method::KoszulA1, Method::KoszulGeneral] {
            for n in 1..=6 {
                for d in 2..=8 {
                    let mut prev = 3;
                    for r in 1..=40 {
                        let level = rank_of(applicability(n, d, r, method));
                        assert!(level <= prev, "{method:?} n={n} d={d} r={r}");
                        prev = level;
                    }
                }
            }
        }
    }

    #[test]
    fn guaranteed_thresholds_stay_below_generic_rank() {
        for method in [Method::Catalecticant, Method::KoszulA1, Method::KoszulGeneral] {
            for n in 1..=6 {
                for d in 2..=8 {
                    let g = generic_rank(n, d);
                    for r in 1..=40 {
                        if applicability(n, d, r, method) == Applicability::Guaranteed {
                            assert!(r <= g, "{method:?} claims beyond generic rank at n={n} d={d} r={r}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn expected_kernel_dims() {
        assert_eq!(expected_kernel_dim(2, 5, 2, 1, 7), Ok(4));
        assert_eq!(expected_kernel_dim(3, 3, 1, 2, 5), Ok(9));
        assert_eq!(expected_kernel_dim(2, 5, 2, 1, 1), Ok(16));
        assert!(expected_kernel_dim(4, 3, 1, 2, 5).is_err());
        assert!(expected_kernel_dim(2, 5, 2, 1, 0).is_err());
        assert!(expected_kernel_dim(2, 6, 2, 1, 3).is_err());
    }
}
