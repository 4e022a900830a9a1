#pragma once

#include <array>
#include <vector>

#include "qmsplit/family.hpp"

namespace qmsplit {

/// Non-scalar, nrd > 0 and trd^2 < 4 nrd: mu has exactly one fixed point in H.
bool is_elliptic(const QuaternionAlgebra& algebra, const QuatElement& mu);

/// Root with Im > 0 of C t^2 + (D - A) t - B for embed(mu) = [[A, B], [C, D]].
/// The exact quadratic is attached to the result.  Throws NotElliptic.
UpperHalfPoint fixed_point(const QuaternionAlgebra& algebra, const QuatElement& mu,
                           mpfr_prec_t prec = kDefaultPrecision);

/// tau' = C tau + D, checked against both coordinates of embed(mu) (tau, 1)^t.
/// Throws EigenMismatch when a coordinate disagrees by more than tol or when
/// Im tau' <= 0 (which happens exactly when C < 0; use -mu instead).
ApComplex eigenvalue_tau_prime(const QuaternionAlgebra& algebra, const QuatElement& mu, const UpperHalfPoint& tau,
                               const Rational& tol);

struct NormalizedIsogeny {
    QuatElement mu;
    Integer n;
};

/// mu' = n lambda^{-1} mu with the least n > 0 putting mu' in the order.
NormalizedIsogeny normalize_isogeny(const OrderLattice& order, const QuatElement& lambda, const QuatElement& mu);

/// Closed rectangle re_lo <= Re <= re_hi, im_lo <= Im <= im_hi.
struct Window {
    Rational re_lo, re_hi, im_lo, im_hi;

    bool empty() const { return re_lo > re_hi || im_lo > im_hi; }
    bool contains(const ApComplex& z) const;
};

struct CMPoint {
    QuatElement mu;
    std::array<Integer, 4> coords;  // of mu in the order basis
    UpperHalfPoint tau;
    ApComplex tau_prime;
    Rational char_trace;  // tau' is a root of T^2 - char_trace T + char_norm
    Rational char_norm;
};

/// CM points from elliptic mu with order coordinates in [-height, height]^4
/// and fixed point inside `window`.  Each mu is taken with C > 0 (so that
/// Im tau' > 0), points are identified by their exact monic quadratic, and
/// the representative of smallest coordinate norm is kept (ties go to the
/// lexicographically first coordinates).  Output is sorted by coordinates.
std::vector<CMPoint> enumerate_cm_points(const OrderLattice& order, long height, const Window& window,
                                         const Rational& tol, unsigned threads = 1,
                                         mpfr_prec_t prec = kDefaultPrecision);

}  // namespace qmsplit
