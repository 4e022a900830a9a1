#pragma once

#include <random>

#include "qmsplit/family.hpp"

namespace qmsplit {

/// Uniform in [-2, 2] x [1/4, 3] (doubles converted exactly).
inline ApComplex random_tau(std::mt19937_64& rng, mpfr_prec_t prec = kDefaultPrecision) {
    std::uniform_real_distribution<double> re(-2.0, 2.0), im(0.25, 3.0);
    const double x = re(rng);
    const double y = im(rng);
    return ApComplex(x, y, prec);
}

/// Point of C^n with real and imaginary parts uniform in [-2, 2].
inline ComplexVector random_vector(std::mt19937_64& rng, std::size_t n, mpfr_prec_t prec = kDefaultPrecision) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    ComplexVector v;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = u(rng);
        const double y = u(rng);
        v.emplace_back(x, y, prec);
    }
    return v;
}

inline std::array<Integer, 4> random_coords(std::mt19937_64& rng, long height) {
    std::uniform_int_distribution<long> u(-height, height);
    std::array<Integer, 4> c;
    for (auto& x : c) x = u(rng);
    return c;
}

inline QuatElement random_order_element(const OrderLattice& order, std::mt19937_64& rng, long height) {
    return order.element(random_coords(rng, height));
}

}  // namespace qmsplit
