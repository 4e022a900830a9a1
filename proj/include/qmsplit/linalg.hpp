#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qmsplit/bigfloat.hpp"
#include "qmsplit/matrix.hpp"
#include "qmsplit/quadext.hpp"

namespace qmsplit {

using RationalMatrix = Matrix<Rational>;
using QuadMatrix = Matrix<QuadExt>;
using ComplexMatrix = Matrix<ApComplex>;
using ComplexVector = std::vector<ApComplex>;

// ---------------------------------------------------------------------------
// Exact kernel over a field (Rational or QuadExt).

namespace detail {

/// Row echelon form by Gaussian elimination with exact pivots.  Returns the
/// rank and accumulates the determinant sign/product of pivots in `det`.
template <class T>
std::size_t eliminate(Matrix<T>& m, T* det) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && is_zero(m(pivot, c))) ++pivot;
        if (pivot == m.rows()) {
            if (det) *det = T(0);
            continue;
        }
        if (pivot != rank) {
            m.swap_rows(pivot, rank);
            if (det) *det = -*det;
        }
        if (det) *det *= m(rank, c);
        for (std::size_t r = rank + 1; r < m.rows(); ++r) {
            if (is_zero(m(r, c))) continue;
            T factor = m(r, c) / m(rank, c);
            for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= factor * m(rank, k);
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

template <class T>
std::size_t exact_rank(Matrix<T> m) {
    return detail::eliminate<T>(m, nullptr);
}

template <class T>
T exact_determinant(Matrix<T> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    T det(1);
    if (detail::eliminate<T>(m, &det) < m.rows()) return T(0);
    return det;
}

/// Inverse by Gauss-Jordan.  Throws std::domain_error if singular.
template <class T>
Matrix<T> exact_inverse(const Matrix<T>& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    Matrix<T> a = m;
    Matrix<T> inv = Matrix<T>::identity(n, T(0), T(1));
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && is_zero(a(pivot, c))) ++pivot;
        if (pivot == n) throw std::domain_error("singular matrix");
        a.swap_rows(pivot, c);
        inv.swap_rows(pivot, c);
        T p = a(c, c);
        for (std::size_t k = 0; k < n; ++k) {
            a(c, k) /= p;
            inv(c, k) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || is_zero(a(r, c))) continue;
            T f = a(r, c);
            for (std::size_t k = 0; k < n; ++k) {
                a(r, k) -= f * a(c, k);
                inv(r, k) -= f * inv(c, k);
            }
        }
    }
    return inv;
}

// ---------------------------------------------------------------------------
// Numeric kernel at arbitrary precision.

/// Singular value decomposition data from one-sided Jacobi: A V = U diag(s).
struct JacobiSvd {
    std::vector<ApReal> singular_values;  // unsorted, one per column
    ComplexMatrix v;                      // columns are right singular vectors
};

/// One-sided (Hestenes) Jacobi SVD.  Throws NonConvergence when the sweep
/// limit is hit before all column pairs are orthogonal at working precision.
JacobiSvd jacobi_svd(const ComplexMatrix& a);

/// Orthonormal basis of the right nullspace.  A singular value s counts as
/// zero iff s < tol * s_max, or always when s_max < tol.
std::vector<ComplexVector> numeric_nullspace(const ComplexMatrix& m, const Rational& tol);

/// cols - dim(nullspace) with the same threshold rule.
std::size_t numeric_rank(const ComplexMatrix& m, const Rational& tol);

/// Determinant by LU with partial pivoting.
ApComplex numeric_determinant(ComplexMatrix m);

/// Solves A x = b for square nonsingular A.  Throws std::domain_error when a
/// pivot is exactly zero.
ComplexVector numeric_solve(ComplexMatrix a, ComplexVector b);

ComplexMatrix to_complex(const QuadMatrix& m, mpfr_prec_t prec);
ComplexMatrix to_complex(const RationalMatrix& m, mpfr_prec_t prec);

/// Euclidean norm of a vector.
ApReal vector_norm(const ComplexVector& v);

/// Both roots of c2 T^2 + c1 T + c0.  Root with the larger imaginary part
/// comes first; real roots are ordered by decreasing real part.  Ordering is
/// decided from exact signs, not from the rounded values.
std::pair<ApComplex, ApComplex> solve_quadratic(const QuadExt& c2, const QuadExt& c1, const QuadExt& c0,
                                                mpfr_prec_t prec = kDefaultPrecision);

}  // namespace qmsplit
