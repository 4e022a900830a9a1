#pragma once

// Independent oracles and hand-rolled generators shared by the test binaries.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "qmsplit/family.hpp"

namespace qmsplit::testing {

inline std::mt19937_64 seeded(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed'0000ULL + salt); }

inline Rational random_rational(std::mt19937_64& rng, long num_range = 9, long den_range = 4) {
    std::uniform_int_distribution<long> num(-num_range, num_range), den(1, den_range);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline QuatElement random_quat(std::mt19937_64& rng, long num_range = 9, long den_range = 4) {
    return {random_rational(rng, num_range, den_range), random_rational(rng, num_range, den_range),
            random_rational(rng, num_range, den_range), random_rational(rng, num_range, den_range)};
}

inline RationalMatrix random_rational_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                             long num_range = 3) {
    RationalMatrix m(rows, cols, Rational(0));
    std::uniform_int_distribution<int> sparse(0, 3);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (sparse(rng)) m(i, j) = random_rational(rng, num_range, 3);
    return m;
}

/// Leibniz expansion over all permutations (no elimination involved).
template <class T>
T leibniz_determinant(const Matrix<T>& m) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    T det(0);
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        T term(1);
        for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
        if (inversions % 2) term = -term;
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

/// Largest r with a nonzero r x r minor, by enumerating row and column subsets.
inline std::size_t brute_force_rank(const RationalMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    for (std::size_t r = std::min(rows, cols); r > 0; --r) {
        for (unsigned rmask = 0; rmask < (1u << rows); ++rmask) {
            if (static_cast<std::size_t>(__builtin_popcount(rmask)) != r) continue;
            for (unsigned cmask = 0; cmask < (1u << cols); ++cmask) {
                if (static_cast<std::size_t>(__builtin_popcount(cmask)) != r) continue;
                RationalMatrix minor(r, r, Rational(0));
                std::size_t mi = 0;
                for (std::size_t i = 0; i < rows; ++i) {
                    if (!(rmask >> i & 1u)) continue;
                    std::size_t mj = 0;
                    for (std::size_t j = 0; j < cols; ++j)
                        if (cmask >> j & 1u) minor(mi, mj++) = m(i, j);
                    ++mi;
                }
                if (leibniz_determinant(minor) != 0) return r;
            }
        }
    }
    return 0;
}

/// Squarefree integer in the square class of a nonzero rational.
inline Integer squarefree_part(const Rational& q) {
    Integer n = q.get_num() * q.get_den();
    const int sign = n < 0 ? -1 : 1;
    n = abs(n);
    Integer out = 1;
    for (Integer p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e % 2) out *= p;
    }
    return out * n * sign;
}

/// (a, b)_p by searching for a primitive solution of a X^2 + b Y^2 = Z^2
/// modulo p^k (k = 5 for p = 2, k = 3 otherwise) after reducing a, b to
/// squarefree integers.  Practical for p <= 7.
inline int hilbert_brute_force(const Rational& a, const Rational& b, long p) {
    const long A0 = squarefree_part(a).get_si(), B0 = squarefree_part(b).get_si();
    const int k = p == 2 ? 5 : 3;
    long mod = 1;
    for (int i = 0; i < k; ++i) mod *= p;
    auto red = [&](long v) { return ((v % mod) + mod) % mod; };
    const long A = red(A0), B = red(B0);
    std::vector<char> square_unit(mod, 0), square_any(mod, 0);
    for (long z = 0; z < mod; ++z) {
        const long s = z * z % mod;
        square_any[s] = 1;
        if (z % p) square_unit[s] = 1;
    }
    for (long x = 0; x < mod; ++x)
        for (long y = 0; y < mod; ++y) {
            const long v = red(A * (x * x % mod) + B * (y * y % mod));
            const bool xy_primitive = (x % p) || (y % p);
            if (xy_primitive ? square_any[v] : square_unit[v]) return 1;
        }
    return -1;
}

/// Sup norm of the difference of two complex matrices.
inline ApReal max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    ApReal worst(a(0, 0).precision());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) worst = max(worst, abs(a(r, c) - b(r, c)));
    return worst;
}

inline double to_d(const ApReal& x) { return x.to_double(); }

}  // namespace qmsplit::testing
