#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace qmsplit {

using Rational = mpq_class;
using Integer = mpz_class;

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

/// Arbitrary precision real number backed by MPFR.
///
/// Every value carries its own precision. Binary operations produce a result
/// at the larger of the two operand precisions, so a computation seeded with
/// 256-bit inputs stays at 256 bits without any global setting.
class ApReal {
public:
    explicit ApReal(mpfr_prec_t prec = kDefaultPrecision);
    ApReal(double x, mpfr_prec_t prec);
    ApReal(long x, mpfr_prec_t prec);
    ApReal(const Rational& q, mpfr_prec_t prec);
    ApReal(const Integer& z, mpfr_prec_t prec);
    /// Parses a decimal string ("-1.25e-3").  Throws std::invalid_argument.
    static ApReal from_string(const std::string& s, mpfr_prec_t prec);

    ApReal(const ApReal& other);
    ApReal(ApReal&& other) noexcept;
    ApReal& operator=(const ApReal& other);
    ApReal& operator=(ApReal&& other) noexcept;
    ~ApReal();

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    /// Same value rounded to a new precision.
    ApReal with_precision(mpfr_prec_t prec) const;

    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Scientific notation with the given number of significant digits
    /// (0 picks enough digits to round-trip).
    std::string to_string(int digits = 0) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    ApReal& operator+=(const ApReal& o);
    ApReal& operator-=(const ApReal& o);
    ApReal& operator*=(const ApReal& o);
    ApReal& operator/=(const ApReal& o);

    friend ApReal operator+(ApReal a, const ApReal& b) { return a += b; }
    friend ApReal operator-(ApReal a, const ApReal& b) { return a -= b; }
    friend ApReal operator*(ApReal a, const ApReal& b) { return a *= b; }
    friend ApReal operator/(ApReal a, const ApReal& b) { return a /= b; }
    ApReal operator-() const;

    friend bool operator==(const ApReal& a, const ApReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const ApReal& a, const ApReal& b);

private:
    mpfr_t v_;
};

ApReal abs(const ApReal& x);
ApReal sqrt(const ApReal& x);
ApReal hypot(const ApReal& x, const ApReal& y);
ApReal max(const ApReal& x, const ApReal& y);
/// Nearest integer (ties away from zero).
ApReal round(const ApReal& x);
/// 2^e at the given precision.
ApReal pow2(long e, mpfr_prec_t prec);

std::ostream& operator<<(std::ostream& os, const ApReal& x);

/// Complex number with ApReal parts. Both parts share one precision.
class ApComplex {
public:
    explicit ApComplex(mpfr_prec_t prec = kDefaultPrecision) : re_(prec), im_(prec) {}
    ApComplex(ApReal re, ApReal im);
    explicit ApComplex(ApReal re);
    ApComplex(double re, double im, mpfr_prec_t prec) : re_(re, prec), im_(im, prec) {}

    static ApComplex i(mpfr_prec_t prec) { return ApComplex(0.0, 1.0, prec); }

    const ApReal& real() const { return re_; }
    const ApReal& imag() const { return im_; }
    mpfr_prec_t precision() const { return re_.precision(); }
    ApComplex with_precision(mpfr_prec_t prec) const;

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    ApComplex& operator+=(const ApComplex& o);
    ApComplex& operator-=(const ApComplex& o);
    ApComplex& operator*=(const ApComplex& o);
    ApComplex& operator/=(const ApComplex& o);
    ApComplex& operator*=(const ApReal& s);

    friend ApComplex operator+(ApComplex a, const ApComplex& b) { return a += b; }
    friend ApComplex operator-(ApComplex a, const ApComplex& b) { return a -= b; }
    friend ApComplex operator*(ApComplex a, const ApComplex& b) { return a *= b; }
    friend ApComplex operator/(ApComplex a, const ApComplex& b) { return a /= b; }
    friend ApComplex operator*(ApComplex a, const ApReal& s) { return a *= s; }
    friend ApComplex operator*(const ApReal& s, ApComplex a) { return a *= s; }
    ApComplex operator-() const { return ApComplex(-re_, -im_); }

    friend bool operator==(const ApComplex& a, const ApComplex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

private:
    ApReal re_;
    ApReal im_;
};

ApComplex conj(const ApComplex& z);
ApReal abs(const ApComplex& z);
/// |z|^2
ApReal norm(const ApComplex& z);
/// Principal square root.
ApComplex sqrt(const ApComplex& z);

std::ostream& operator<<(std::ostream& os, const ApComplex& z);

}  // namespace qmsplit
