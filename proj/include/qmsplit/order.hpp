#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmsplit/errors.hpp"
#include "qmsplit/quaternion.hpp"

namespace qmsplit {

/// Full-rank Z-lattice in B.  Row i of the basis matrix holds the
/// (1, x, y, xy)-coordinates of the generator lambda_i.
class OrderLattice {
public:
    /// Throws std::invalid_argument unless basis is 4x4 of rank 4.
    OrderLattice(QuaternionAlgebra algebra, RationalMatrix basis);

    /// Z<1, x, y, xy>.
    static OrderLattice standard(const QuaternionAlgebra& algebra);
    /// Z-span of arbitrary generators (at least four, spanning B), in
    /// lower-triangular Hermite normal form.  Row 0 of the result spans
    /// L ∩ Q, so for an order it is 1.
    static OrderLattice from_generators(const QuaternionAlgebra& algebra, const std::vector<QuatElement>& gens);

    const QuaternionAlgebra& algebra() const { return algebra_; }
    const RationalMatrix& basis() const { return basis_; }
    std::vector<QuatElement> generators() const;
    QuatElement generator(std::size_t i) const;

    /// Coordinates of q in the lattice basis (rational in general).
    std::array<Rational, 4> coordinates(const QuatElement& q) const;
    bool contains(const QuatElement& q) const;
    QuatElement element(const std::array<Integer, 4>& coords) const;

    /// Same Z-module (bases may differ by a unimodular change).
    bool same_lattice(const OrderLattice& other) const;

private:
    QuaternionAlgebra algebra_;
    RationalMatrix basis_;
    RationalMatrix inverse_;
};

struct OrderCertificate {
    bool is_order = false;
    std::vector<std::string> violations;
};

/// trd(q), nrd(q) in Z.
bool is_integral(const QuaternionAlgebra& algebra, const QuatElement& q);

/// 1 in L, all 16 basis products in L, every basis element integral.
OrderCertificate is_order(const OrderLattice& lattice);

/// sqrt |det(trd(e_i e_j))|.  Throws NotAnOrder.
Integer reduced_discriminant(const OrderLattice& lattice);

/// Reduced discriminant equals the product of ramified primes.
/// Throws NotAnOrder, or AlgebraSplit when B is not a division algebra.
bool is_maximal(const OrderLattice& lattice);

class SearchExhausted : public ComputationError {
public:
    SearchExhausted(const std::string& what, OrderLattice current)
        : ComputationError(what), current_(std::move(current)) {}
    const OrderLattice& current() const { return current_; }

private:
    OrderLattice current_;
};

/// Maximal order containing the given order.  Each step adjoins an integral
/// element v/p (v in the current order, p a prime dividing the index gap
/// disc(L)/disc(B)) and closes under multiplication.
OrderLattice saturate(const OrderLattice& lattice);

struct UnitSample {
    QuatElement element;
    std::array<Integer, 4> coords;  // in the order basis
    Rational norm;
    bool is_elliptic = false;
};

/// All elements with basis coordinates in [-height, height]^4 and nrd = 1,
/// sorted lexicographically by coordinates.  The box is sharded over the
/// first coordinate across `threads` workers (0 = hardware concurrency).
std::vector<UnitSample> enumerate_units(const OrderLattice& order, long height, unsigned threads = 1);

/// Units u with u - 1 in N * L (principal congruence subgroup of level N).
std::vector<UnitSample> congruence_filter(const OrderLattice& order, const std::vector<UnitSample>& units,
                                          const Integer& level);

/// Calls visit(coords) for every point of [-height, height]^4 and collects the
/// non-empty results in lexicographic order of the coordinates.
template <class T>
std::vector<T> search_box(long height, unsigned threads,
                          const std::function<std::optional<T>(const std::array<Integer, 4>&)>& visit);

}  // namespace qmsplit

#include "qmsplit/detail/search_box.hpp"
