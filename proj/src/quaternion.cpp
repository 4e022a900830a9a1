#include "qmsplit/quaternion.hpp"

#include <sstream>
#include <stdexcept>

namespace qmsplit {

AlgebraParams::AlgebraParams(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {
    a.canonicalize();
    b.canonicalize();
    if (a <= 0) throw std::invalid_argument("algebra parameter a must be positive, got " + a.get_str());
    if (b >= 0) throw std::invalid_argument("algebra parameter b must be negative, got " + b.get_str());
    if (is_rational_square(a))
        throw std::invalid_argument("algebra parameter a = " + a.get_str() + " is a rational square (split algebra)");
}

QuatElement& QuatElement::operator+=(const QuatElement& o) {
    k += o.k;
    l += o.l;
    m += o.m;
    n += o.n;
    return *this;
}

QuatElement& QuatElement::operator-=(const QuatElement& o) {
    k -= o.k;
    l -= o.l;
    m -= o.m;
    n -= o.n;
    return *this;
}

QuatElement& QuatElement::operator*=(const Rational& s) {
    k *= s;
    l *= s;
    m *= s;
    n *= s;
    return *this;
}

std::string to_string(const QuatElement& q) {
    std::ostringstream os;
    os << "(" << q.k.get_str() << ", " << q.l.get_str() << ", " << q.m.get_str() << ", " << q.n.get_str() << ")";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuatElement& q) { return os << to_string(q); }

QuatElement QuaternionAlgebra::mul(const QuatElement& p, const QuatElement& q) const {
    const Rational& a = params_.a;
    const Rational& b = params_.b;
    QuatElement r;
    r.k = p.k * q.k + a * p.l * q.l + b * p.m * q.m - a * b * p.n * q.n;
    r.l = p.k * q.l + p.l * q.k - b * p.m * q.n + b * p.n * q.m;
    r.m = p.k * q.m + p.m * q.k + a * p.l * q.n - a * p.n * q.l;
    r.n = p.k * q.n + p.n * q.k + p.l * q.m - p.m * q.l;
    return r;
}

Rational QuaternionAlgebra::nrd(const QuatElement& q) const {
    const Rational& a = params_.a;
    const Rational& b = params_.b;
    return q.k * q.k - a * q.l * q.l - b * q.m * q.m + a * b * q.n * q.n;
}

QuatElement QuaternionAlgebra::inverse(const QuatElement& q) const {
    Rational n = nrd(q);
    if (n == 0) throw std::domain_error("quaternion " + to_string(q) + " has zero reduced norm");
    return conj(q) * Rational(1 / n);
}

Mat2Quad QuaternionAlgebra::embed(const QuatElement& q) const {
    const Rational& a = params_.a;
    const Rational& b = params_.b;
    // k + l x + m y + n xy with xy = [[0, b sqrt a], [-sqrt a, 0]]
    return Mat2Quad{{QuadExt(q.k, q.l, a), QuadExt(b * q.m, b * q.n, a)},
                    {QuadExt(q.m, -q.n, a), QuadExt(q.k, -q.l, a)}};
}

ComplexMatrix QuaternionAlgebra::embed_numeric(const QuatElement& q, mpfr_prec_t prec) const {
    return to_complex(embed(q), prec);
}

// ---------------------------------------------------------------------------
// Hilbert symbols

namespace {

// Squarefree-equivalent integer representative: a = num/den ~ num*den mod squares.
Integer integral_representative(const Rational& q) { return q.get_num() * q.get_den(); }

// n = p^v * u with p not dividing u.
long split_valuation(const Integer& p, Integer& u) {
    long v = 0;
    while (u % p == 0) {
        u /= p;
        ++v;
    }
    return v;
}

int legendre(const Integer& u, const Integer& p) { return mpz_legendre(u.get_mpz_t(), p.get_mpz_t()); }

// (u - 1)/2 mod 2 and (u^2 - 1)/8 mod 2 for odd u.
int epsilon(const Integer& u) {
    Integer r = u % 4;
    if (r < 0) r += 4;
    return r == 3 ? 1 : 0;
}

int omega(const Integer& u) {
    Integer r = u % 8;
    if (r < 0) r += 8;
    return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, const Place& place) {
    if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: arguments must be nonzero");
    if (place.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;

    const Integer& p = place.prime;
    Integer u = integral_representative(a);
    Integer w = integral_representative(b);
    long alpha = split_valuation(p, u);
    long beta = split_valuation(p, w);

    if (p == 2) {
        int e = epsilon(u) * epsilon(w) + static_cast<int>(alpha % 2) * omega(w) + static_cast<int>(beta % 2) * omega(u);
        return (e % 2 == 0) ? 1 : -1;
    }
    int sign = 1;
    // (-1)^(alpha beta (p-1)/2)
    if ((alpha * beta) % 2 != 0 && Integer(p % 4) == 3) sign = -sign;
    if (beta % 2 != 0) sign *= legendre(u, p);
    if (alpha % 2 != 0) sign *= legendre(w, p);
    return sign;
}

std::set<Integer> prime_factors(const Integer& n) {
    if (n == 0) throw std::invalid_argument("prime_factors of zero");
    std::set<Integer> out;
    Integer m = abs(n);
    for (Integer d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            out.insert(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) out.insert(m);
    return out;
}

std::set<Integer> ramified_primes(const AlgebraParams& params) {
    Integer a = integral_representative(params.a);
    Integer b = integral_representative(params.b);
    auto candidates = prime_factors(2 * a * b);
    std::set<Integer> out;
    for (const auto& p : candidates)
        if (hilbert_symbol(params.a, params.b, Place::finite(p)) == -1) out.insert(p);
    return out;
}

Integer algebra_discriminant(const AlgebraParams& params) {
    Integer d = 1;
    for (const auto& p : ramified_primes(params)) d *= p;
    return d;
}

bool is_indefinite_division(const AlgebraParams& params) {
    return !ramified_primes(params).empty() && hilbert_symbol(params.a, params.b, Place::infinity()) == 1;
}

}  // namespace qmsplit
