#include "qmsplit/cm_points.hpp"

#include <algorithm>
#include <stdexcept>

namespace qmsplit {

bool is_elliptic(const QuaternionAlgebra& algebra, const QuatElement& mu) {
    if (mu.is_zero()) throw std::invalid_argument("is_elliptic needs a nonzero element");
    if (mu.is_scalar()) return false;
    const Rational n = algebra.nrd(mu);
    const Rational t = algebra.trd(mu);
    return n > 0 && t * t < 4 * n;
}

UpperHalfPoint fixed_point(const QuaternionAlgebra& algebra, const QuatElement& mu, mpfr_prec_t prec) {
    if (mu.is_zero() || !is_elliptic(algebra, mu)) throw NotElliptic(to_string(mu) + " is not elliptic");
    auto e = algebra.embed(mu);
    QuadraticData q{e(1, 0), e(1, 1) - e(0, 0), -e(0, 1)};
    auto roots = solve_quadratic(q.c2, q.c1, q.c0, prec);
    return UpperHalfPoint(roots.first, q);
}

ApComplex eigenvalue_tau_prime(const QuaternionAlgebra& algebra, const QuatElement& mu, const UpperHalfPoint& tau,
                               const Rational& tol) {
    const auto prec = tau.precision();
    auto e = algebra.embed_numeric(mu, prec);
    const ApComplex& t = tau.tau();
    ApComplex tau_prime = e(1, 0) * t + e(1, 1);
    if (tau_prime.imag().sign() <= 0)
        throw EigenMismatch("eigenvalue of " + to_string(mu) + " at tau has non-positive imaginary part");
    const ApReal eps(tol, prec);
    const ApReal one(1L, prec);
    ApComplex first = e(0, 0) * t + e(0, 1);
    ApComplex expect_first = tau_prime * t;
    if (abs(first - expect_first) > eps * (one + abs(expect_first)))
        throw EigenMismatch("first coordinate of embed(mu)(tau, 1)^t is not tau' tau");
    ApComplex second = e(1, 0) * t + e(1, 1);
    if (abs(second - tau_prime) > eps * (one + abs(tau_prime)))
        throw EigenMismatch("second coordinate of embed(mu)(tau, 1)^t is not tau'");
    return tau_prime;
}

NormalizedIsogeny normalize_isogeny(const OrderLattice& order, const QuatElement& lambda, const QuatElement& mu) {
    if (lambda.is_zero()) throw std::invalid_argument("lambda must be nonzero");
    const auto& alg = order.algebra();
    QuatElement q = alg.mul(alg.inverse(lambda), mu);
    Integer n = 1;
    for (const auto& c : order.coordinates(q)) mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), c.get_den_mpz_t());
    return {q * Rational(n), n};
}

bool Window::contains(const ApComplex& z) const {
    const auto prec = z.precision();
    return ApReal(re_lo, prec) <= z.real() && z.real() <= ApReal(re_hi, prec) && ApReal(im_lo, prec) <= z.imag() &&
           z.imag() <= ApReal(im_hi, prec);
}

namespace {

Integer coord_norm(const std::array<Integer, 4>& c) {
    Integer s = 0;
    for (const auto& x : c) s += x * x;
    return s;
}

}  // namespace

std::vector<CMPoint> enumerate_cm_points(const OrderLattice& order, long height, const Window& window,
                                         const Rational& tol, unsigned threads, mpfr_prec_t prec) {
    if (height < 1) throw std::invalid_argument("height must be at least 1");
    if (window.empty()) return {};
    const auto& alg = order.algebra();

    auto hits = search_box<CMPoint>(height, threads, [&](const std::array<Integer, 4>& c) -> std::optional<CMPoint> {
        QuatElement mu = order.element(c);
        if (mu.is_zero() || !is_elliptic(alg, mu)) return std::nullopt;
        // C > 0; the negated element reaches the same point from the other half of the box
        if (alg.embed(mu)(1, 0).sign() < 0) return std::nullopt;
        UpperHalfPoint tau = fixed_point(alg, mu, prec);
        if (!window.contains(tau.tau())) return std::nullopt;
        ApComplex tp = eigenvalue_tau_prime(alg, mu, tau, tol);
        return CMPoint{mu, c, tau, tp, alg.trd(mu), alg.nrd(mu)};
    });

    std::vector<CMPoint> kept;
    std::vector<std::pair<QuadExt, QuadExt>> keys;
    for (auto& p : hits) {
        auto key = p.tau.exact()->monic_key();
        auto it = std::find(keys.begin(), keys.end(), key);
        if (it == keys.end()) {
            keys.push_back(key);
            kept.push_back(std::move(p));
            continue;
        }
        auto& incumbent = kept[static_cast<std::size_t>(it - keys.begin())];
        if (coord_norm(p.coords) < coord_norm(incumbent.coords)) incumbent = std::move(p);
    }
    std::sort(kept.begin(), kept.end(), [](const CMPoint& x, const CMPoint& y) { return x.coords < y.coords; });
    return kept;
}

}  // namespace qmsplit
