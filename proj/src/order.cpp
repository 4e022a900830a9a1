#include "qmsplit/order.hpp"

#include <stdexcept>

namespace qmsplit {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Lower-triangular Hermite normal form of an integer row set spanning Z^4
// (up to finite index).  Row i has its positive pivot in column i and zeros
// to the right; entries left of a pivot are reduced modulo the pivot above.
std::vector<std::array<Integer, 4>> hermite_lower(std::vector<std::array<Integer, 4>> rows) {
    std::vector<std::array<Integer, 4>> out(4);
    for (int c = 3; c >= 0; --c) {
        while (true) {
            // smallest nonzero |entry| in column c
            std::size_t pivot = rows.size();
            for (std::size_t r = 0; r < rows.size(); ++r)
                if (rows[r][c] != 0 && (pivot == rows.size() || abs(rows[r][c]) < abs(rows[pivot][c]))) pivot = r;
            if (pivot == rows.size()) throw std::invalid_argument("generators do not span a full lattice");
            bool clean = true;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (r == pivot || rows[r][c] == 0) continue;
                Integer q = floor_div(rows[r][c], rows[pivot][c]);
                for (int k = 0; k < 4; ++k) rows[r][k] -= q * rows[pivot][k];
                if (rows[r][c] != 0) clean = false;
            }
            if (clean) {
                out[c] = rows[pivot];
                rows.erase(rows.begin() + static_cast<long>(pivot));
                break;
            }
        }
        if (out[c][c] < 0)
            for (auto& x : out[c]) x = -x;
    }
    for (int i = 1; i < 4; ++i)
        for (int j = i - 1; j >= 0; --j) {
            Integer q = floor_div(out[i][j], out[j][j]);
            if (q != 0)
                for (int k = 0; k <= j; ++k) out[i][k] -= q * out[j][k];
        }
    return out;
}

}  // namespace

OrderLattice::OrderLattice(QuaternionAlgebra algebra, RationalMatrix basis)
    : algebra_(std::move(algebra)), basis_(std::move(basis)) {
    if (basis_.rows() != 4 || basis_.cols() != 4) throw std::invalid_argument("order basis must be 4x4");
    if (exact_rank(basis_) != 4) throw std::invalid_argument("order basis must have rank 4");
    inverse_ = exact_inverse(basis_);
}

OrderLattice OrderLattice::standard(const QuaternionAlgebra& algebra) {
    return OrderLattice(algebra, RationalMatrix::identity(4, Rational(0), Rational(1)));
}

OrderLattice OrderLattice::from_generators(const QuaternionAlgebra& algebra, const std::vector<QuatElement>& gens) {
    Integer den = 1;
    for (const auto& g : gens)
        for (const auto& c : g.coords()) den = lcm(den, c.get_den());
    std::vector<std::array<Integer, 4>> rows;
    for (const auto& g : gens) {
        auto c = g.coords();
        std::array<Integer, 4> r;
        for (int k = 0; k < 4; ++k) r[k] = Rational(c[k] * den).get_num();
        rows.push_back(r);
    }
    auto hnf = hermite_lower(std::move(rows));
    RationalMatrix basis(4, 4, Rational(0));
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            Rational q(hnf[i][k], den);
            q.canonicalize();
            basis(i, k) = q;
        }
    return OrderLattice(algebra, std::move(basis));
}

std::vector<QuatElement> OrderLattice::generators() const {
    std::vector<QuatElement> out;
    for (std::size_t i = 0; i < 4; ++i) out.push_back(generator(i));
    return out;
}

QuatElement OrderLattice::generator(std::size_t i) const {
    return {basis_(i, 0), basis_(i, 1), basis_(i, 2), basis_(i, 3)};
}

std::array<Rational, 4> OrderLattice::coordinates(const QuatElement& q) const {
    auto v = q.coords();
    std::array<Rational, 4> c{0, 0, 0, 0};
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) c[j] += v[i] * inverse_(i, j);
    return c;
}

bool OrderLattice::contains(const QuatElement& q) const {
    for (const auto& c : coordinates(q))
        if (!is_integer(c)) return false;
    return true;
}

QuatElement OrderLattice::element(const std::array<Integer, 4>& coords) const {
    QuatElement e;
    for (int i = 0; i < 4; ++i) {
        if (coords[i] == 0) continue;
        e += generator(i) * Rational(coords[i]);
    }
    return e;
}

bool OrderLattice::same_lattice(const OrderLattice& other) const {
    for (const auto& g : other.generators())
        if (!contains(g)) return false;
    for (const auto& g : generators())
        if (!other.contains(g)) return false;
    return true;
}

bool is_integral(const QuaternionAlgebra& algebra, const QuatElement& q) {
    return is_integer(algebra.trd(q)) && is_integer(algebra.nrd(q));
}

OrderCertificate is_order(const OrderLattice& lattice) {
    OrderCertificate cert;
    const auto& alg = lattice.algebra();
    auto gens = lattice.generators();
    if (!lattice.contains(QuatElement::one())) cert.violations.push_back("1 is not in the lattice");
    for (std::size_t i = 0; i < 4; ++i)
        if (!is_integral(alg, gens[i]))
            cert.violations.push_back("generator " + std::to_string(i) + " " + to_string(gens[i]) + " is not integral");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            auto p = alg.mul(gens[i], gens[j]);
            if (!lattice.contains(p))
                cert.violations.push_back("product of generators " + std::to_string(i) + " and " + std::to_string(j) +
                                          " = " + to_string(p) + " is not in the lattice");
        }
    cert.is_order = cert.violations.empty();
    return cert;
}

Integer reduced_discriminant(const OrderLattice& lattice) {
    auto cert = is_order(lattice);
    if (!cert.is_order) throw NotAnOrder("not an order: " + cert.violations.front());
    const auto& alg = lattice.algebra();
    auto gens = lattice.generators();
    RationalMatrix gram(4, 4, Rational(0));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) gram(i, j) = alg.trd(alg.mul(gens[i], gens[j]));
    Rational det = abs(exact_determinant(gram));
    if (!is_integer(det) || !mpz_perfect_square_p(det.get_num_mpz_t()))
        throw NotAnOrder("discriminant " + det.get_str() + " is not a perfect square");
    return sqrt(det.get_num());
}

bool is_maximal(const OrderLattice& lattice) {
    const auto& params = lattice.algebra().params();
    if (!is_indefinite_division(params))
        throw AlgebraSplit("(" + params.a.get_str() + ", " + params.b.get_str() + ") is not a division algebra");
    return reduced_discriminant(lattice) == algebra_discriminant(params);
}

namespace {

// Smallest order containing `gens`, or nullopt when the ring they generate
// contains non-integral elements.
std::optional<OrderLattice> ring_closure(const QuaternionAlgebra& alg, std::vector<QuatElement> gens) {
    gens.push_back(QuatElement::one());
    OrderLattice current = OrderLattice::from_generators(alg, gens);
    for (int iter = 0; iter < 16; ++iter) {
        auto basis = current.generators();
        for (const auto& g : basis)
            if (!is_integral(alg, g)) return std::nullopt;
        std::vector<QuatElement> next = basis;
        bool grew = false;
        for (const auto& p : basis)
            for (const auto& q : basis) {
                auto prod = alg.mul(p, q);
                if (!current.contains(prod)) grew = true;
                next.push_back(prod);
            }
        if (!grew) return current;
        current = OrderLattice::from_generators(alg, next);
    }
    return std::nullopt;
}

}  // namespace

OrderLattice saturate(const OrderLattice& lattice) {
    const auto& alg = lattice.algebra();
    // for a split algebra the target is the empty product 1
    const Integer target = algebra_discriminant(alg.params());
    OrderLattice current = lattice;
    while (true) {
        Integer disc = reduced_discriminant(current);
        if (disc == target) return current;
        if (disc % target != 0)
            throw ComputationError("order discriminant " + disc.get_str() + " is not a multiple of " + target.get_str());
        const Integer gap = disc / target;
        auto gens = current.generators();
        bool enlarged = false;
        for (const auto& p : prime_factors(gap)) {
            const long pl = p.get_si();
            for (long idx = 1; idx < pl * pl * pl * pl && !enlarged; ++idx) {
                std::array<Integer, 4> c;
                long rest = idx;
                for (int k = 3; k >= 0; --k) {
                    c[k] = rest % pl;
                    rest /= pl;
                }
                QuatElement e = current.element(c) * Rational(Integer(1), p);
                if (!is_integral(alg, e)) continue;
                auto bigger = ring_closure(alg, [&] {
                    auto g = gens;
                    g.push_back(e);
                    return g;
                }());
                if (!bigger || !is_order(*bigger).is_order) continue;
                if (reduced_discriminant(*bigger) >= disc) continue;
                current = *bigger;
                enlarged = true;
            }
            if (enlarged) break;
        }
        if (!enlarged)
            throw SearchExhausted("no enlargement of the order with discriminant " + disc.get_str() + " found", current);
    }
}

std::vector<UnitSample> enumerate_units(const OrderLattice& order, long height, unsigned threads) {
    if (height < 0) throw std::invalid_argument("height must be non-negative");
    const auto& alg = order.algebra();
    return search_box<UnitSample>(height, threads, [&](const std::array<Integer, 4>& c) -> std::optional<UnitSample> {
        QuatElement e = order.element(c);
        Rational n = alg.nrd(e);
        if (n != 1) return std::nullopt;
        Rational t = alg.trd(e);
        return UnitSample{e, c, n, t * t < 4 * n};
    });
}

std::vector<UnitSample> congruence_filter(const OrderLattice& order, const std::vector<UnitSample>& units,
                                          const Integer& level) {
    if (level < 1) throw std::invalid_argument("congruence level must be positive");
    std::vector<UnitSample> out;
    for (const auto& u : units) {
        auto c = order.coordinates(u.element - QuatElement::one());
        bool ok = true;
        for (const auto& x : c)
            if (!is_integer(x) || x.get_num() % level != 0) ok = false;
        if (ok) out.push_back(u);
    }
    return out;
}

}  // namespace qmsplit
