#pragma once

#include <array>
#include <ostream>
#include <set>
#include <string>

#include "qmsplit/linalg.hpp"

namespace qmsplit {

/// Parameters of B = (a, b / Q) with generators x^2 = a, y^2 = b, xy = -yx.
///
/// Normal form: a > 0, b < 0, a not a rational square.  With a > 0 the
/// algebra is split at infinity, so every valid parameter set is indefinite;
/// whether it is a division algebra is decided by ramified_primes().
struct AlgebraParams {
    Rational a;
    Rational b;

    /// Validates the normal form.  Throws std::invalid_argument.
    AlgebraParams(Rational a_, Rational b_);

    friend bool operator==(const AlgebraParams&, const AlgebraParams&) = default;
};

/// k + l x + m y + n xy.
struct QuatElement {
    Rational k{0}, l{0}, m{0}, n{0};

    static QuatElement scalar(const Rational& s) { return {s, 0, 0, 0}; }
    static QuatElement one() { return scalar(1); }
    static QuatElement x() { return {0, 1, 0, 0}; }
    static QuatElement y() { return {0, 0, 1, 0}; }
    static QuatElement xy() { return {0, 0, 0, 1}; }

    std::array<Rational, 4> coords() const { return {k, l, m, n}; }
    static QuatElement from_coords(const std::array<Rational, 4>& c) { return {c[0], c[1], c[2], c[3]}; }

    bool is_zero() const { return k == 0 && l == 0 && m == 0 && n == 0; }
    /// l = m = n = 0, i.e. in the kernel of B^x -> PGL2.
    bool is_scalar() const { return l == 0 && m == 0 && n == 0; }

    QuatElement& operator+=(const QuatElement& o);
    QuatElement& operator-=(const QuatElement& o);
    QuatElement& operator*=(const Rational& s);
    friend QuatElement operator+(QuatElement p, const QuatElement& q) { return p += q; }
    friend QuatElement operator-(QuatElement p, const QuatElement& q) { return p -= q; }
    friend QuatElement operator*(QuatElement p, const Rational& s) { return p *= s; }
    friend QuatElement operator*(const Rational& s, QuatElement p) { return p *= s; }
    QuatElement operator-() const { return {-k, -l, -m, -n}; }

    friend bool operator==(const QuatElement&, const QuatElement&) = default;
};

std::string to_string(const QuatElement& q);
std::ostream& operator<<(std::ostream& os, const QuatElement& q);

/// 2x2 matrix over Q(sqrt a).
using Mat2Quad = QuadMatrix;

/// Arithmetic in B together with the fixed embedding
///   x -> diag(sqrt a, -sqrt a),  y -> [[0, b], [1, 0]].
class QuaternionAlgebra {
public:
    explicit QuaternionAlgebra(AlgebraParams params) : params_(std::move(params)) {}

    const AlgebraParams& params() const { return params_; }
    const Rational& a() const { return params_.a; }
    const Rational& b() const { return params_.b; }

    QuatElement mul(const QuatElement& p, const QuatElement& q) const;
    /// Standard involution k + lx + my + nxy -> k - lx - my - nxy.
    QuatElement conj(const QuatElement& q) const { return {q.k, -q.l, -q.m, -q.n}; }
    Rational trd(const QuatElement& q) const { return 2 * q.k; }
    Rational nrd(const QuatElement& q) const;
    /// q' / nrd(q).  Throws std::domain_error for nrd(q) = 0.
    QuatElement inverse(const QuatElement& q) const;

    Mat2Quad embed(const QuatElement& q) const;
    /// Numeric embedded matrix.
    ComplexMatrix embed_numeric(const QuatElement& q, mpfr_prec_t prec) const;

    friend bool operator==(const QuaternionAlgebra& x, const QuaternionAlgebra& y) { return x.params_ == y.params_; }

private:
    AlgebraParams params_;
};

/// A place of Q: a prime p or infinity.
struct Place {
    Integer prime{0};  // 0 encodes infinity

    static Place infinity() { return {}; }
    static Place finite(const Integer& p) { return {p}; }
    bool is_infinite() const { return prime == 0; }
};

/// Local Hilbert symbol (a, b)_p in {+1, -1}.  a, b nonzero.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& place);

/// Prime factors of |n| (n nonzero) by trial division.
std::set<Integer> prime_factors(const Integer& n);

/// Finite primes where (a, b)_p = -1.
std::set<Integer> ramified_primes(const AlgebraParams& params);
/// Product of the ramified finite primes (the discriminant of B).
Integer algebra_discriminant(const AlgebraParams& params);
bool is_indefinite_division(const AlgebraParams& params);

}  // namespace qmsplit
