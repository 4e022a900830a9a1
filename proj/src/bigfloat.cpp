#include "qmsplit/bigfloat.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace qmsplit {

ApReal::ApReal(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

ApReal::ApReal(double x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
}

ApReal::ApReal(long x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, x, MPFR_RNDN);
}

ApReal::ApReal(const Rational& q, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

ApReal::ApReal(const Integer& z, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
}

ApReal ApReal::from_string(const std::string& s, mpfr_prec_t prec) {
    ApReal r(prec);
    char* end = nullptr;
    if (!s.empty()) mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
    if (s.empty() || end == s.c_str() || *end != '\0')
        throw std::invalid_argument("not a decimal number: '" + s + "'");
    return r;
}

ApReal::ApReal(const ApReal& other) {
    mpfr_init2(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

ApReal::ApReal(ApReal&& other) noexcept {
    mpfr_init2(v_, other.precision());
    mpfr_swap(v_, other.v_);
}

ApReal& ApReal::operator=(const ApReal& other) {
    if (this != &other) {
        mpfr_set_prec(v_, other.precision());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

ApReal& ApReal::operator=(ApReal&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
}

ApReal::~ApReal() { mpfr_clear(v_); }

ApReal ApReal::with_precision(mpfr_prec_t prec) const {
    ApReal r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

std::string ApReal::to_string(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return "0";
    mpfr_exp_t exp = 0;
    std::unique_ptr<char, void (*)(char*)> raw(
        mpfr_get_str(nullptr, &exp, 10, static_cast<size_t>(std::max(digits, 0)), v_, MPFR_RNDN),
        mpfr_free_str);
    std::string mant(raw.get());
    std::string sign;
    if (!mant.empty() && mant[0] == '-') {
        sign = "-";
        mant.erase(0, 1);
    }
    while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
    std::string out = sign + mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    if (exp - 1 != 0) out += "e" + std::to_string(exp - 1);
    return out;
}

namespace {
mpfr_prec_t joint(const ApReal& a, const ApReal& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

ApReal& ApReal::operator+=(const ApReal& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

ApReal& ApReal::operator-=(const ApReal& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

ApReal& ApReal::operator*=(const ApReal& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

ApReal& ApReal::operator/=(const ApReal& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

ApReal ApReal::operator-() const {
    ApReal r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

std::partial_ordering operator<=>(const ApReal& a, const ApReal& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

ApReal abs(const ApReal& x) {
    ApReal r(x.precision());
    mpfr_abs(r.get(), x.get(), MPFR_RNDN);
    return r;
}

ApReal sqrt(const ApReal& x) {
    ApReal r(x.precision());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

ApReal hypot(const ApReal& x, const ApReal& y) {
    ApReal r(joint(x, y));
    mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

ApReal max(const ApReal& x, const ApReal& y) { return x < y ? y : x; }

ApReal round(const ApReal& x) {
    ApReal r(x.precision());
    mpfr_round(r.get(), x.get());
    return r;
}

ApReal pow2(long e, mpfr_prec_t prec) {
    ApReal r(prec);
    mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDN);
    return r;
}

std::ostream& operator<<(std::ostream& os, const ApReal& x) { return os << x.to_string(20); }

ApComplex::ApComplex(ApReal re, ApReal im) : re_(std::move(re)), im_(std::move(im)) {
    auto p = std::max(re_.precision(), im_.precision());
    if (re_.precision() != p) re_ = re_.with_precision(p);
    if (im_.precision() != p) im_ = im_.with_precision(p);
}

ApComplex::ApComplex(ApReal re) : re_(std::move(re)), im_(re_.precision()) {}

ApComplex ApComplex::with_precision(mpfr_prec_t prec) const {
    return ApComplex(re_.with_precision(prec), im_.with_precision(prec));
}

ApComplex& ApComplex::operator+=(const ApComplex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

ApComplex& ApComplex::operator-=(const ApComplex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

ApComplex& ApComplex::operator*=(const ApComplex& o) {
    ApReal re = re_ * o.re_ - im_ * o.im_;
    ApReal im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

ApComplex& ApComplex::operator/=(const ApComplex& o) {
    ApReal den = o.re_ * o.re_ + o.im_ * o.im_;
    ApReal re = (re_ * o.re_ + im_ * o.im_) / den;
    ApReal im = (im_ * o.re_ - re_ * o.im_) / den;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

ApComplex& ApComplex::operator*=(const ApReal& s) {
    re_ *= s;
    im_ *= s;
    return *this;
}

ApComplex conj(const ApComplex& z) { return ApComplex(z.real(), -z.imag()); }

ApReal abs(const ApComplex& z) { return hypot(z.real(), z.imag()); }

ApReal norm(const ApComplex& z) { return z.real() * z.real() + z.imag() * z.imag(); }

ApComplex sqrt(const ApComplex& z) {
    auto prec = z.precision();
    if (z.is_zero()) return ApComplex(prec);
    ApReal half(0.5, prec);
    ApReal r = abs(z);
    // sqrt((r + |x|)/2) is computed without cancellation; the other part follows.
    ApReal t = sqrt((r + abs(z.real())) * half);
    ApReal u = z.imag() / (t + t);
    if (z.real().sign() >= 0) return ApComplex(t, u);
    return z.imag().sign() >= 0 ? ApComplex(abs(u), t) : ApComplex(abs(u), -t);
}

std::ostream& operator<<(std::ostream& os, const ApComplex& z) {
    return os << "(" << z.real() << ", " << z.imag() << ")";
}

}  // namespace qmsplit
