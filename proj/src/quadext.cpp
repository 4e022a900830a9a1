#include "qmsplit/quadext.hpp"

#include <cctype>
#include <stdexcept>

namespace qmsplit {

Rational make_rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto fail = [&] { return std::invalid_argument("not an exact rational: '" + text + "'"); };
    if (s.empty()) throw fail();

    if (auto slash = s.find('/'); slash != std::string::npos) {
        Integer num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
            throw fail();
        if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    // decimal: [sign] digits [. digits] [e [sign] digits]
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
    std::string digits;
    long scale = 0;
    bool seen_digit = false;
    for (; pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])); ++pos, seen_digit = true)
        digits += s[pos];
    if (pos < s.size() && s[pos] == '.') {
        for (++pos; pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])); ++pos, seen_digit = true) {
            digits += s[pos];
            --scale;
        }
    }
    if (!seen_digit) throw fail();
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        ++pos;
        std::string exp = s.substr(pos);
        if (exp.empty()) throw fail();
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(exp, &used);
        } catch (const std::exception&) {
            throw fail();
        }
        if (used != exp.size()) throw fail();
        scale += e;
        pos = s.size();
    }
    if (pos != s.size()) throw fail();

    Integer mant(digits, 10);
    Integer ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Rational q = scale < 0 ? Rational(mant, ten_pow) : Rational(mant * ten_pow);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

bool is_rational_square(const Rational& q) {
    if (q < 0) return false;
    return mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

QuadExt::QuadExt(Rational u, Rational v, Rational radicand)
    : u_(std::move(u)), v_(std::move(v)), a_(std::move(radicand)) {
    if (a_ <= 0) throw std::invalid_argument("radicand must be positive, got " + a_.get_str());
    if (is_rational_square(a_))
        throw std::invalid_argument("radicand " + a_.get_str() + " is a rational square");
}

void QuadExt::unify(const QuadExt& o) {
    if (o.a_ == 0 || o.a_ == a_) return;
    if (a_ == 0) {
        a_ = o.a_;
        return;
    }
    throw std::invalid_argument("mixing Q(sqrt " + a_.get_str() + ") with Q(sqrt " + o.a_.get_str() + ")");
}

int QuadExt::sign() const {
    int su = sgn(u_);
    int sv = sgn(v_);
    if (sv == 0) return su;
    if (su == 0) return sv;
    if (su == sv) return su;
    // opposite signs: compare u^2 with a v^2
    Rational diff = u_ * u_ - a_ * v_ * v_;
    return sgn(diff) * su;
}

QuadExt QuadExt::conjugate() const {
    QuadExt r = *this;
    r.v_ = -v_;
    return r;
}

Rational QuadExt::norm() const { return u_ * u_ - a_ * v_ * v_; }

QuadExt QuadExt::inverse() const {
    Rational n = norm();
    if (n == 0) throw std::domain_error("inverse of zero in Q(sqrt a)");
    QuadExt r = conjugate();
    r.u_ /= n;
    r.v_ /= n;
    return r;
}

ApReal QuadExt::to_real(mpfr_prec_t prec) const {
    ApReal r(u_, prec);
    if (v_ != 0) r += ApReal(v_, prec) * sqrt(ApReal(a_, prec));
    return r;
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
    unify(o);
    u_ += o.u_;
    v_ += o.v_;
    return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
    unify(o);
    u_ -= o.u_;
    v_ -= o.v_;
    return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
    unify(o);
    Rational u = u_ * o.u_ + a_ * v_ * o.v_;
    Rational v = u_ * o.v_ + v_ * o.u_;
    u_ = std::move(u);
    v_ = std::move(v);
    return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
    unify(o);
    return *this *= o.inverse();
}

QuadExt QuadExt::operator-() const {
    QuadExt r = *this;
    r.u_ = -u_;
    r.v_ = -v_;
    return r;
}

bool operator==(const QuadExt& x, const QuadExt& y) {
    if (x.v_ == 0 && y.v_ == 0) return x.u_ == y.u_;
    return x.u_ == y.u_ && x.v_ == y.v_ && x.a_ == y.a_;
}

std::string to_string(const QuadExt& q) {
    if (q.v() == 0) return q.u().get_str();
    std::string root = "sqrt(" + q.radicand().get_str() + ")";
    std::string vpart = q.v() == 1 ? root : q.v() == -1 ? "-" + root : q.v().get_str() + "*" + root;
    if (q.u() == 0) return vpart;
    return q.u().get_str() + (q.v() > 0 ? "+" : "") + vpart;
}

std::ostream& operator<<(std::ostream& os, const QuadExt& q) { return os << to_string(q); }

}  // namespace qmsplit
