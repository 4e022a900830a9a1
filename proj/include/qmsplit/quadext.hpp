#pragma once

#include <ostream>
#include <string>

#include "qmsplit/bigfloat.hpp"

namespace qmsplit {

Rational make_rational(long num, long den = 1);
/// Parses "p", "p/q" or a finite decimal ("-0.125", "1e-20") exactly.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

bool is_rational_square(const Rational& q);

/// Exact element u + v*sqrt(a) of the real quadratic field Q(sqrt a).
///
/// A radicand of 0 marks a plain rational (v must then be 0); such values
/// combine with any field.  Mixing two different nonzero radicands throws.
class QuadExt {
public:
    QuadExt() = default;
    QuadExt(Rational u) : u_(std::move(u)) {}  // NOLINT: implicit by design of the field embedding
    QuadExt(long u) : u_(u) {}                 // NOLINT
    /// Throws std::invalid_argument if a <= 0 or a is a rational square.
    QuadExt(Rational u, Rational v, Rational radicand);

    static QuadExt sqrt_of(const Rational& a) { return QuadExt(0, 1, a); }

    const Rational& u() const { return u_; }
    const Rational& v() const { return v_; }
    const Rational& radicand() const { return a_; }

    bool is_zero() const { return u_ == 0 && v_ == 0; }
    bool is_rational() const { return v_ == 0; }
    /// Exact sign of the real number u + v*sqrt(a).
    int sign() const;

    QuadExt conjugate() const;
    /// Field norm u^2 - a v^2.
    Rational norm() const;
    QuadExt inverse() const;

    ApReal to_real(mpfr_prec_t prec = kDefaultPrecision) const;

    QuadExt& operator+=(const QuadExt& o);
    QuadExt& operator-=(const QuadExt& o);
    QuadExt& operator*=(const QuadExt& o);
    QuadExt& operator/=(const QuadExt& o);

    friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
    friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
    friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
    friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
    QuadExt operator-() const;

    friend bool operator==(const QuadExt& x, const QuadExt& y);

private:
    void unify(const QuadExt& o);

    Rational u_{0};
    Rational v_{0};
    Rational a_{0};
};

inline bool is_zero(const Rational& q) { return q == 0; }
inline bool is_zero(const QuadExt& q) { return q.is_zero(); }

std::string to_string(const QuadExt& q);
std::ostream& operator<<(std::ostream& os, const QuadExt& q);

}  // namespace qmsplit
