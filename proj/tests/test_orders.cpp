#include <gtest/gtest.h>

#include "qmsplit/order.hpp"
#include "qmsplit/sampling.hpp"
#include "support.hpp"

using namespace qmsplit;
using namespace qmsplit::testing;

namespace {

const QuaternionAlgebra kB(AlgebraParams(3, -1));

const OrderLattice& maximal() {
    static const OrderLattice o = saturate(OrderLattice::standard(kB));
    return o;
}

RationalMatrix rows_of(const std::vector<QuatElement>& gens) {
    RationalMatrix m(gens.size(), 4, Rational(0));
    for (std::size_t i = 0; i < gens.size(); ++i) {
        auto c = gens[i].coords();
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = c[j];
    }
    return m;
}

}  // namespace

TEST(OrderLattice, RejectsSingularBasis) {
    EXPECT_THROW(OrderLattice(kB, RationalMatrix(4, 4, Rational(0))), std::invalid_argument);
    EXPECT_THROW(OrderLattice(kB, RationalMatrix(3, 4, Rational(1))), std::invalid_argument);
}

TEST(OrderLattice, CoordinatesRoundTrip) {
    auto rng = seeded(21);
    for (int i = 0; i < 50; ++i) {
        auto c = random_coords(rng, 5);
        QuatElement e = maximal().element(c);
        auto back = maximal().coordinates(e);
        for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(back[k], Rational(c[k]));
        EXPECT_TRUE(maximal().contains(e));
    }
    EXPECT_FALSE(OrderLattice::standard(kB).contains(QuatElement{Rational(1, 2), 0, 0, 0}));
}

TEST(IsOrder, Examples) {
    EXPECT_TRUE(is_order(OrderLattice::standard(kB)).is_order);
    RationalMatrix half = RationalMatrix::identity(4, Rational(0), Rational(1, 2));
    auto cert = is_order(OrderLattice(kB, half));
    EXPECT_FALSE(cert.is_order);
    EXPECT_FALSE(cert.violations.empty());
    EXPECT_TRUE(is_order(maximal()).is_order);
    // 1 missing: Z<2, x, y, xy>
    RationalMatrix no_one = RationalMatrix::identity(4, Rational(0), Rational(1));
    no_one(0, 0) = 2;
    EXPECT_FALSE(is_order(OrderLattice(kB, no_one)).is_order);
}

TEST(ReducedDiscriminant, Examples) {
    EXPECT_EQ(reduced_discriminant(OrderLattice::standard(kB)), 12);
    EXPECT_EQ(reduced_discriminant(maximal()), 6);
    RationalMatrix half = RationalMatrix::identity(4, Rational(0), Rational(1, 2));
    EXPECT_THROW(reduced_discriminant(OrderLattice(kB, half)), NotAnOrder);
}

TEST(ReducedDiscriminant, ScalesWithIndex) {
    // Z<1, 2x, y, 2xy> has index 4 in Z<1, x, y, xy>; Z + 2 O has index 8.
    auto sub = OrderLattice::from_generators(kB, {QuatElement::one(), QuatElement{0, 2, 0, 0}, QuatElement::y(),
                                                  QuatElement{0, 0, 0, 2}});
    ASSERT_TRUE(is_order(sub).is_order);
    EXPECT_EQ(reduced_discriminant(sub), 12 * 4);
    // index 2 inside the maximal order: the standard order
    EXPECT_EQ(reduced_discriminant(OrderLattice::standard(kB)), 2 * reduced_discriminant(maximal()));
    Rational index = abs(exact_determinant(OrderLattice::standard(kB).basis()) / exact_determinant(maximal().basis()));
    EXPECT_EQ(index, 2);
}

TEST(ReducedDiscriminant, InvariantUnderUnimodularChangeProperty) {
    auto rng = seeded(22);
    std::uniform_int_distribution<int> u(-2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        RationalMatrix t = RationalMatrix::identity(4, Rational(0), Rational(1));
        for (int step = 0; step < 6; ++step) {
            std::size_t i = trial % 4, j = (trial + step + 1) % 4;
            if (i == j) continue;
            RationalMatrix e = RationalMatrix::identity(4, Rational(0), Rational(1));
            e(i, j) = u(rng);
            t = e * t;
        }
        ASSERT_EQ(abs(exact_determinant(t)), 1);
        OrderLattice changed(kB, t * maximal().basis());
        EXPECT_TRUE(changed.same_lattice(maximal()));
        EXPECT_EQ(reduced_discriminant(changed), 6);
    }
}

TEST(IsMaximal, Examples) {
    EXPECT_FALSE(is_maximal(OrderLattice::standard(kB)));
    EXPECT_TRUE(is_maximal(maximal()));
    QuaternionAlgebra split(AlgebraParams(2, -1));
    EXPECT_THROW(is_maximal(OrderLattice::standard(split)), AlgebraSplit);
    RationalMatrix half = RationalMatrix::identity(4, Rational(0), Rational(1, 2));
    EXPECT_THROW(is_maximal(OrderLattice(kB, half)), NotAnOrder);
}

TEST(Saturate, AgreesWithCosetOracle) {
    // Every integral v/2, v in {0,1}^4 \ 0, over the standard basis.
    const OrderLattice standard = OrderLattice::standard(kB);
    std::vector<QuatElement> integral_halves;
    for (int mask = 1; mask < 16; ++mask) {
        QuatElement e{Rational(mask & 1, 2), Rational(mask >> 1 & 1, 2), Rational(mask >> 2 & 1, 2),
                      Rational(mask >> 3 & 1, 2)};
        if (is_integral(kB, e)) integral_halves.push_back(e);
    }
    const QuatElement expected{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)};
    ASSERT_EQ(integral_halves.size(), 1u);
    EXPECT_EQ(integral_halves.front(), expected);
    EXPECT_EQ(kB.trd(expected), 1);
    EXPECT_EQ(kB.nrd(expected), -1);

    const OrderLattice& sat = maximal();
    EXPECT_TRUE(sat.contains(expected));
    for (const auto& g : standard.generators()) EXPECT_TRUE(sat.contains(g));
    auto oracle = OrderLattice::from_generators(kB, {QuatElement::one(), QuatElement::x(), QuatElement::y(),
                                                     QuatElement::xy(), expected});
    ASSERT_TRUE(is_order(oracle).is_order);
    EXPECT_TRUE(sat.same_lattice(oracle));
}

TEST(Saturate, FixpointOnMaximalOrder) {
    EXPECT_TRUE(saturate(maximal()).same_lattice(maximal()));
}

TEST(Saturate, OtherAlgebras) {
    // split algebra: reaches disc 1
    QuaternionAlgebra b32(AlgebraParams(3, -2));
    auto s = saturate(OrderLattice::standard(b32));
    EXPECT_EQ(reduced_discriminant(s), algebra_discriminant(b32.params()));
    EXPECT_EQ(reduced_discriminant(s), 1);
    EXPECT_TRUE(is_order(s).is_order);

    for (auto [a, b] : std::vector<std::pair<long, long>>{{2, -5}, {5, -2}, {3, -5}, {7, -1}}) {
        QuaternionAlgebra alg(AlgebraParams(a, b));
        auto m = saturate(OrderLattice::standard(alg));
        EXPECT_TRUE(is_order(m).is_order) << a << "," << b;
        EXPECT_EQ(reduced_discriminant(m), algebra_discriminant(alg.params())) << a << "," << b;
        for (const auto& g : OrderLattice::standard(alg).generators()) EXPECT_TRUE(m.contains(g));
    }
}

TEST(Saturate, RejectsNonOrder) {
    RationalMatrix half = RationalMatrix::identity(4, Rational(0), Rational(1, 2));
    EXPECT_THROW(saturate(OrderLattice(kB, half)), NotAnOrder);
}

TEST(Units, HeightOneExamples) {
    auto units = enumerate_units(maximal(), 1);
    auto has = [&](const QuatElement& q) {
        return std::any_of(units.begin(), units.end(), [&](const UnitSample& u) { return u.element == q; });
    };
    EXPECT_TRUE(has(QuatElement::one()));
    EXPECT_TRUE(has(-QuatElement::one()));
    EXPECT_TRUE(has(QuatElement::y()));
    EXPECT_TRUE(has(-QuatElement::y()));
    EXPECT_TRUE(enumerate_units(maximal(), 0).empty());
    EXPECT_THROW(enumerate_units(maximal(), -1), std::invalid_argument);
}

TEST(Units, InvariantsProperty) {
    auto units = enumerate_units(maximal(), 2);
    ASSERT_GT(units.size(), 4u);
    for (std::size_t i = 0; i < units.size(); ++i) {
        const auto& u = units[i];
        EXPECT_EQ(kB.nrd(u.element), 1);
        EXPECT_EQ(u.norm, 1);
        EXPECT_TRUE(maximal().contains(u.element));
        EXPECT_EQ(maximal().element(u.coords), u.element);
        for (const auto& c : u.coords) EXPECT_LE(abs(c), 2);
        EXPECT_EQ(kB.mul(u.element, kB.conj(u.element)), QuatElement::one());
        EXPECT_TRUE(maximal().contains(kB.conj(u.element)));
        const Rational t = kB.trd(u.element);
        EXPECT_EQ(u.is_elliptic, t * t < 4);
        if (u.is_elliptic) { EXPECT_TRUE(t == -1 || t == 0 || t == 1); }
        if (i > 0) { EXPECT_TRUE(units[i - 1].coords < u.coords); }
    }
}

TEST(Units, ThreadCountDoesNotChangeResult) {
    auto one = enumerate_units(maximal(), 2, 1);
    auto four = enumerate_units(maximal(), 2, 4);
    ASSERT_EQ(one.size(), four.size());
    for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one[i].coords, four[i].coords);
}

TEST(Units, BruteForceBoxOracle) {
    auto units = enumerate_units(maximal(), 1);
    std::size_t count = 0;
    for (long c0 = -1; c0 <= 1; ++c0)
        for (long c1 = -1; c1 <= 1; ++c1)
            for (long c2 = -1; c2 <= 1; ++c2)
                for (long c3 = -1; c3 <= 1; ++c3)
                    if (kB.nrd(maximal().element({c0, c1, c2, c3})) == 1) ++count;
    EXPECT_EQ(units.size(), count);
}

TEST(CongruenceFilter, LevelsAndTorsionFreedom) {
    auto units = enumerate_units(maximal(), 3);
    EXPECT_EQ(congruence_filter(maximal(), units, 1).size(), units.size());
    for (long level : {2L, 3L, 4L}) {
        auto sub = congruence_filter(maximal(), units, level);
        for (const auto& u : sub) {
            auto c = maximal().coordinates(u.element - QuatElement::one());
            for (const auto& x : c) EXPECT_EQ(x.get_den(), 1);
            for (const auto& x : c) EXPECT_EQ(x.get_num() % level, 0);
            if (level >= 3) { EXPECT_FALSE(u.is_elliptic) << to_string(u.element); }
        }
        EXPECT_TRUE(std::any_of(sub.begin(), sub.end(), [](const UnitSample& u) { return u.element == QuatElement::one(); }));
    }
    EXPECT_THROW(congruence_filter(maximal(), units, 0), std::invalid_argument);
}

TEST(FromGenerators, HermiteFormIsCanonical) {
    auto a = OrderLattice::from_generators(kB, maximal().generators());
    auto gens = maximal().generators();
    std::reverse(gens.begin(), gens.end());
    gens.push_back(gens[0] + gens[1]);
    auto b = OrderLattice::from_generators(kB, gens);
    EXPECT_EQ(a.basis(), b.basis());
    EXPECT_EQ(a.generator(0), QuatElement::one());
    EXPECT_EQ(rows_of(a.generators()), a.basis());
}
