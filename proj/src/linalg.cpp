#include "qmsplit/linalg.hpp"

#include <algorithm>

#include "qmsplit/errors.hpp"

namespace qmsplit {

namespace {

constexpr int kMaxSweeps = 80;

mpfr_prec_t matrix_precision(const ComplexMatrix& m) {
    mpfr_prec_t p = MPFR_PREC_MIN;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) p = std::max(p, m(r, c).precision());
    return m.rows() && m.cols() ? p : kDefaultPrecision;
}

ApReal column_norm2(const ComplexMatrix& a, std::size_t c) {
    ApReal s(a.rows() ? a(0, c).precision() : kDefaultPrecision);
    for (std::size_t r = 0; r < a.rows(); ++r) s += norm(a(r, c));
    return s;
}

// a_p^H a_q
ApComplex column_inner(const ComplexMatrix& a, std::size_t p, std::size_t q) {
    ApComplex s(a(0, p).precision());
    for (std::size_t r = 0; r < a.rows(); ++r) s += conj(a(r, p)) * a(r, q);
    return s;
}

// [col_p, col_q] <- [col_p, col_q] * diag(1, w) * [[c, s], [-s, c]]
void rotate_columns(ComplexMatrix& a, std::size_t p, std::size_t q, const ApReal& c, const ApReal& s,
                    const ApComplex& w) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
        ApComplex xp = a(r, p);
        ApComplex xq = w * a(r, q);
        a(r, p) = c * xp - s * xq;
        a(r, q) = s * xp + c * xq;
    }
}

}  // namespace

JacobiSvd jacobi_svd(const ComplexMatrix& input) {
    const std::size_t n = input.cols();
    const mpfr_prec_t prec = matrix_precision(input);
    ComplexMatrix a = input.map([&](const ApComplex& z) { return z.with_precision(prec); });
    ComplexMatrix v = ComplexMatrix::identity(n, ApComplex(prec), ApComplex(1.0, 0.0, prec));
    const ApReal eps = pow2(-(prec - 8), prec);
    const ApReal one(1L, prec);
    ApReal frobenius2(prec);
    for (std::size_t c = 0; c < n; ++c) frobenius2 += column_norm2(a, c);
    // columns below this are rounding noise of a null direction
    const ApReal negligible = eps * eps * frobenius2;

    bool converged = n < 2 || input.rows() == 0;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                ApReal alpha = column_norm2(a, p);
                ApReal beta = column_norm2(a, q);
                if (alpha <= negligible || beta <= negligible) continue;
                ApComplex gamma = column_inner(a, p, q);
                ApReal g = abs(gamma);
                if (g.is_zero() || g <= eps * sqrt(alpha * beta)) continue;
                converged = false;
                ApComplex w = conj(gamma) * (one / g);  // conj of the phase of gamma
                ApReal zeta = (beta - alpha) / (g + g);
                ApReal t = one / (abs(zeta) + sqrt(one + zeta * zeta));
                if (zeta.sign() < 0) t = -t;
                ApReal c = one / sqrt(one + t * t);
                ApReal s = c * t;
                rotate_columns(a, p, q, c, s, w);
                rotate_columns(v, p, q, c, s, w);
            }
        }
    }
    if (!converged) throw NonConvergence("Jacobi SVD did not converge within the sweep limit");

    JacobiSvd out;
    out.v = std::move(v);
    for (std::size_t c = 0; c < n; ++c) out.singular_values.push_back(sqrt(column_norm2(a, c)));
    return out;
}

namespace {

std::vector<bool> zero_singular_values(const std::vector<ApReal>& sv, const Rational& tol, mpfr_prec_t prec) {
    if (tol <= 0) throw std::invalid_argument("nullspace tolerance must be positive");
    ApReal smax(prec);
    for (const auto& s : sv) smax = max(smax, s);
    ApReal t(tol, prec);
    std::vector<bool> zero;
    for (const auto& s : sv) zero.push_back(smax < t || s < t * smax);
    return zero;
}

}  // namespace

std::vector<ComplexVector> numeric_nullspace(const ComplexMatrix& m, const Rational& tol) {
    const mpfr_prec_t prec = matrix_precision(m);
    std::vector<ComplexVector> basis;
    if (m.rows() == 0) {
        // every vector is in the kernel of an empty map
        auto id = ComplexMatrix::identity(m.cols(), ApComplex(prec), ApComplex(1.0, 0.0, prec));
        for (std::size_t c = 0; c < m.cols(); ++c) basis.push_back(id.col(c));
        return basis;
    }
    JacobiSvd svd = jacobi_svd(m);
    auto zero = zero_singular_values(svd.singular_values, tol, prec);
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (zero[c]) basis.push_back(svd.v.col(c));
    return basis;
}

std::size_t numeric_rank(const ComplexMatrix& m, const Rational& tol) {
    return m.cols() - numeric_nullspace(m, tol).size();
}

ApComplex numeric_determinant(ComplexMatrix m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const mpfr_prec_t prec = matrix_precision(m);
    ApComplex det(1.0, 0.0, prec);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (norm(m(r, c)) > norm(m(pivot, c))) pivot = r;
        if (m(pivot, c).is_zero()) return ApComplex(prec);
        if (pivot != c) {
            m.swap_rows(pivot, c);
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            ApComplex f = m(r, c) / m(c, c);
            for (std::size_t k = c; k < n; ++k) m(r, k) -= f * m(c, k);
        }
    }
    return det;
}

ComplexVector numeric_solve(ComplexMatrix a, ComplexVector b) {
    const std::size_t n = a.rows();
    if (n != a.cols() || b.size() != n) throw std::invalid_argument("numeric_solve: dimension mismatch");
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (norm(a(r, c)) > norm(a(pivot, c))) pivot = r;
        if (a(pivot, c).is_zero()) throw std::domain_error("numeric_solve: singular matrix");
        a.swap_rows(pivot, c);
        std::swap(b[pivot], b[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            ApComplex f = a(r, c) / a(c, c);
            for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
            b[r] -= f * b[c];
        }
    }
    ComplexVector x(n, ApComplex(b.empty() ? kDefaultPrecision : b[0].precision()));
    for (std::size_t i = n; i-- > 0;) {
        ApComplex acc = b[i];
        for (std::size_t k = i + 1; k < n; ++k) acc -= a(i, k) * x[k];
        x[i] = acc / a(i, i);
    }
    return x;
}

ComplexMatrix to_complex(const QuadMatrix& m, mpfr_prec_t prec) {
    return m.map([prec](const QuadExt& q) { return ApComplex(q.to_real(prec)); });
}

ComplexMatrix to_complex(const RationalMatrix& m, mpfr_prec_t prec) {
    return m.map([prec](const Rational& q) { return ApComplex(ApReal(q, prec)); });
}

ApReal vector_norm(const ComplexVector& v) {
    ApReal s(v.empty() ? kDefaultPrecision : v[0].precision());
    for (const auto& z : v) s += norm(z);
    return sqrt(s);
}

std::pair<ApComplex, ApComplex> solve_quadratic(const QuadExt& c2, const QuadExt& c1, const QuadExt& c0,
                                                mpfr_prec_t prec) {
    if (c2.is_zero()) throw std::invalid_argument("solve_quadratic: leading coefficient is zero");
    QuadExt disc = c1 * c1 - QuadExt(4) * c2 * c0;
    QuadExt den = QuadExt(2) * c2;
    ApReal d = disc.to_real(prec);
    ApComplex root_of_disc = disc.sign() >= 0 ? ApComplex(sqrt(abs(d))) : ApComplex(ApReal(prec), sqrt(abs(d)));
    ApComplex minus_c1(-c1.to_real(prec));
    ApComplex denom(den.to_real(prec));
    ApComplex plus = (minus_c1 + root_of_disc) / denom;
    ApComplex minus = (minus_c1 - root_of_disc) / denom;
    // Im(plus) = sqrt|D| / den and Re(plus) - Re(minus) = 2 sqrt(D) / den: both
    // orderings are decided by the sign of den.
    if (den.sign() > 0) return {plus, minus};
    return {minus, plus};
}

}  // namespace qmsplit
