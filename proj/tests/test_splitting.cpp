#include <gtest/gtest.h>

#include "qmsplit/sampling.hpp"
#include "qmsplit/splitting.hpp"
#include "support.hpp"

using namespace qmsplit;
using namespace qmsplit::testing;

namespace {

const QuaternionAlgebra kB(AlgebraParams(3, -1));
const Rational kTol = parse_rational("1e-20");
const QuatElement kXplus2Y{0, 1, 2, 0};
const QuatElement kOnePlusY{1, 0, 1, 0};

const OrderLattice& maximal() {
    static const OrderLattice o = saturate(OrderLattice::standard(kB));
    return o;
}

ApComplex c(double re, double im, mpfr_prec_t prec = kDefaultPrecision) { return ApComplex(re, im, prec); }

CMPoint cm_point(const QuatElement& mu) {
    UpperHalfPoint tau = fixed_point(kB, mu);
    ApComplex tp = eigenvalue_tau_prime(kB, mu, tau, kTol);
    return CMPoint{mu, {0, 0, 0, 0}, tau, tp, kB.trd(mu), kB.nrd(mu)};
}

// s(z + period_g) - rho(g) s(z) computed through the exact representation matrix.
ApReal oracle_residual(const FlatRep& rep, const Section& s, const ComplexVector& z) {
    ApReal worst(kDefaultPrecision);
    for (std::size_t g = 0; g < rep.rank(); ++g) {
        std::vector<Integer> coords(rep.rank(), Integer(0));
        coords[g] = 1;
        ComplexMatrix rho = to_complex(rep_matrix(rep, coords), kDefaultPrecision);
        ComplexVector shifted = z;
        for (std::size_t i = 0; i < z.size(); ++i) shifted[i] += rep.periods[g][i];
        ComplexVector lhs = s.evaluate(shifted), base = s.evaluate(z);
        for (std::size_t r = 0; r < lhs.size(); ++r) {
            ApComplex acc(kDefaultPrecision);
            for (std::size_t k = 0; k < base.size(); ++k) acc += rho(r, k) * base[k];
            worst = max(worst, abs(lhs[r] - acc));
        }
    }
    return worst;
}

}  // namespace

TEST(FiberRep, GeneratorVectors) {
    std::vector<QuatElement> gens{QuatElement::one(), QuatElement::y(), QuatElement::x(), QuatElement::xy()};
    FlatRep rep = fiber_rep(kB, gens, UpperHalfPoint(c(0, 1)));
    ASSERT_EQ(rep.rank(), 4u);
    EXPECT_EQ(rep.dim(), 2u);
    EXPECT_EQ(rep.generator_vectors[0], (QuadVector{QuadExt(1), QuadExt(0)}));
    EXPECT_EQ(rep.generator_vectors[1], (QuadVector{QuadExt(0), QuadExt(1)}));
    EXPECT_EQ(rep.generator_vectors[2], (QuadVector{QuadExt::sqrt_of(3), QuadExt(0)}));
}

TEST(FlatRep, HomomorphismExactProperty) {
    auto rng = seeded(61);
    FlatRep rep = fiber_rep(maximal(), UpperHalfPoint(c(0.2, 1.1)));
    std::uniform_int_distribution<long> u(-5, 5);
    for (int t = 0; t < 50; ++t) {
        std::vector<Integer> c1(4), c2(4);
        for (auto& x : c1) x = u(rng);
        for (auto& x : c2) x = u(rng);
        EXPECT_TRUE(homomorphism_check(rep, c1, c2));
    }
    EXPECT_EQ(rep_matrix(rep, {0, 0, 0, 0}), QuadMatrix::identity(3, QuadExt(0), QuadExt(1)));
    EXPECT_THROW(rep_matrix(rep, {1, 2}), std::invalid_argument);
}

TEST(FiberH0, TauIIsNonSplit) {
    auto r = fiber_h0(maximal(), UpperHalfPoint(c(0, 1)));
    ASSERT_TRUE(r.h0.has_value());
    EXPECT_EQ(*r.h0, 1);
    EXPECT_EQ(r.verdict, Verdict::NonSplit);
    EXPECT_EQ(r.kind, SubjectKind::Fiber);
    ASSERT_TRUE(r.fiber.has_value());
    EXPECT_GT(to_d(abs(r.fiber->det_witness)), 1e-12);
    EXPECT_TRUE(r.fiber->witness_verdict.nonzero);
    ASSERT_EQ(r.sections.size(), 1u);
    EXPECT_FALSE(r.citations.empty());
}

TEST(FiberH0, RandomTauProperty) {
    auto rng = seeded(62);
    for (int t = 0; t < 20; ++t) {
        UpperHalfPoint tau(random_tau(rng));
        auto r = fiber_h0(maximal(), tau);
        EXPECT_EQ(r.h0.value_or(-1), 1);
        ASSERT_TRUE(r.fiber.has_value());
        EXPECT_TRUE(r.fiber->witness_verdict.nonzero);
        // column reduction: the complex determinant equals the exact real one
        EXPECT_LT(to_d(r.fiber->factored_defect), 1e-30);
        EXPECT_FALSE(r.fiber->exact_det.is_zero());
    }
}

TEST(FiberH0, ExactDeterminantIsTauIndependent) {
    auto a = fiber_h0(maximal(), UpperHalfPoint(c(0, 1)));
    auto b = fiber_h0(maximal(), UpperHalfPoint(c(-1.5, 0.3)));
    EXPECT_EQ(a.fiber->exact_det, b.fiber->exact_det);
    // the standard basis gives det [[1,0,0,1],[r3,0,0,-r3],[0,1,-1,0],[0,-r3,-r3,0]]
    auto s = fiber_h0(kB, OrderLattice::standard(kB).generators(), UpperHalfPoint(c(0, 1)));
    QuadExt r3 = QuadExt::sqrt_of(3);
    QuadMatrix m{{1, 0, 0, 1}, {r3, 0, 0, -r3}, {0, 1, -1, 0}, {0, -r3, -r3, 0}};
    EXPECT_EQ(s.fiber->exact_det, leibniz_determinant(m));
}

TEST(FiberH0, DegenerateGenerators) {
    std::vector<QuatElement> gens{QuatElement::one(), QuatElement::x(), QuatElement::y(), QuatElement::y()};
    EXPECT_THROW(fiber_h0(kB, gens, UpperHalfPoint(c(0, 1))), DegenerateLattice);
}

TEST(CurveRep, GeneratorVectors) {
    FlatRep rep = curve_rep(kB, cm_point(QuatElement::y()));
    EXPECT_EQ(rep.generator_vectors[0], (QuadVector{QuadExt(1), QuadExt(0)}));
    EXPECT_EQ(rep.generator_vectors[1], (QuadVector{QuadExt(0), QuadExt(1)}));
    EXPECT_EQ(rep.dim(), 2u);
    EXPECT_EQ(rep.periods[0].size(), 1u);

    FlatRep rep2 = curve_rep(kB, cm_point(kXplus2Y));
    EXPECT_EQ(rep2.generator_vectors[1], (QuadVector{QuadExt::sqrt_of(3), QuadExt(2)}));
}

TEST(CurveH0, YAtI) {
    auto r = curve_h0(kB, cm_point(QuatElement::y()));
    EXPECT_EQ(r.h0.value_or(-1), 2);
    EXPECT_EQ(r.verdict, Verdict::Split);
    EXPECT_EQ(r.kind, SubjectKind::EllipticInFiber);
    ASSERT_TRUE(r.curve.has_value());
    const auto& v = r.curve->eigenvector;
    EXPECT_LT(to_d(abs(v[0] - c(1, 0))), 1e-30);
    EXPECT_LT(to_d(abs(v[1] - c(0, 1))), 1e-30);
    EXPECT_LT(to_d(r.curve->eigen_residual), 1e-20);
    // extra section (1, i, -z)
    ASSERT_EQ(r.sections.size(), 2u);
    const Section* moving = nullptr;
    for (const auto& s : r.sections)
        if (!s.f[0].is_zero()) moving = &s;
    ASSERT_NE(moving, nullptr);
    EXPECT_LT(to_d(abs(moving->a[0] - c(-1, 0))), 1e-30);
    ASSERT_TRUE(r.dphi_value.has_value());
    EXPECT_LT(to_d(abs(*r.dphi_value - c(0, 2))), 1e-30);
}

TEST(CurveH0, XPlus2Y) {
    auto r = curve_h0(kB, cm_point(kXplus2Y));
    EXPECT_EQ(r.h0.value_or(-1), 2);
    EXPECT_EQ(r.verdict, Verdict::Split);
    ASSERT_TRUE(r.curve.has_value());
    // proportional to (2, i - sqrt 3)
    const ApReal r3 = QuadExt::sqrt_of(3).to_real();
    ApComplex expected_ratio = ApComplex(-r3, ApReal(1L, kDefaultPrecision)) / c(2, 0);
    const auto& v = r.curve->eigenvector;
    EXPECT_LT(to_d(abs(v[1] / v[0] - expected_ratio)), 1e-30);
    EXPECT_LT(to_d(r.curve->eigen_residual), 1e-20);
    // with (f1, f2) = (2, i - sqrt 3): dphi = 2i + i - sqrt 3; ours is scaled by 1/2
    ApComplex unscaled = c(0, 3) - ApComplex(r3);
    EXPECT_LT(to_d(abs(*r.dphi_value * c(2, 0) - unscaled)), 1e-30);
}

TEST(CurveH0, OnePlusY) {
    auto p = cm_point(kOnePlusY);
    EXPECT_LT(to_d(abs(p.tau_prime - c(1, 1))), 1e-30);
    auto r = curve_h0(kB, p);
    EXPECT_EQ(r.h0.value_or(-1), 2);
    EXPECT_EQ(r.verdict, Verdict::Split);
}

TEST(CurveH0, EnumeratedPointsProperty) {
    auto pts = enumerate_cm_points(maximal(), 2, Window{-100, 100, 0, 100}, kTol);
    ASSERT_GE(pts.size(), 3u);
    for (const auto& p : pts) {
        auto r = curve_h0(kB, p);
        EXPECT_EQ(r.h0.value_or(-1), 2) << to_string(p.mu);
        EXPECT_EQ(r.verdict, Verdict::Split);
        EXPECT_LT(to_d(r.curve->eigen_residual), 1e-20);
        // the tau form equals tau - conj(tau) = 2i Im tau for the (1, -conj tau) normalization
        ApComplex two_i_im(ApReal(kDefaultPrecision), p.tau.tau().imag() * ApReal(2L, kDefaultPrecision));
        EXPECT_LT(to_d(abs(r.curve->dphi_tau - two_i_im)), 1e-25);
    }
}

TEST(DphiCheck, Examples) {
    const ApComplex i = c(0, 1);
    Section s{{c(1, 0), i}, {c(-1, 0)}, c(0, 0)};
    EXPECT_LT(to_d(abs(dphi_check(s, i) - c(0, 2))), 1e-35);
    const ApReal r3 = QuadExt::sqrt_of(3).to_real();
    Section t{{c(2, 0), ApComplex(-r3, ApReal(1L, kDefaultPrecision))}, {c(-2, 0)}, c(0, 0)};
    EXPECT_GT(to_d(abs(dphi_check(t, i))), 1e-12);
    Section constant{{c(0, 0), c(0, 0)}, {c(0, 0)}, c(1, 0)};
    EXPECT_TRUE(dphi_check(constant, i).is_zero());
}

TEST(Sections, FunctionalEquationOracle) {
    auto rng = seeded(63);
    std::vector<std::pair<FlatRep, std::vector<Section>>> cases;
    for (const auto& mu : {QuatElement::y(), kXplus2Y, kOnePlusY}) {
        auto p = cm_point(mu);
        cases.emplace_back(curve_rep(kB, p), curve_h0(kB, p).sections);
    }
    UpperHalfPoint tau(c(0.3, 0.9));
    cases.emplace_back(fiber_rep(maximal(), tau), fiber_h0(maximal(), tau).sections);
    for (const auto& [rep, sections] : cases)
        for (const auto& s : sections) {
            std::vector<ComplexVector> pts;
            for (int k = 0; k < 20; ++k) pts.push_back(random_vector(rng, rep.periods[0].size()));
            EXPECT_LT(to_d(invariance_residual(rep, s, pts)), 1e-20);
            for (const auto& z : pts) EXPECT_LT(to_d(oracle_residual(rep, s, z)), 1e-20);
        }
}

TEST(Sections, NonSectionIsDetected) {
    auto p = cm_point(QuatElement::y());
    FlatRep rep = curve_rep(kB, p);
    Section wrong{{c(1, 0), c(0, 1)}, {c(1, 0)}, c(0, 0)};  // sign of a flipped
    std::vector<ComplexVector> pts{{c(0.1, 0.2)}};
    EXPECT_GT(to_d(invariance_residual(rep, wrong, pts)), 0.5);
    EXPECT_GT(to_d(oracle_residual(rep, wrong, pts[0])), 0.5);
}

TEST(EllipticFamily, Examples) {
    auto r = elliptic_family_fiber_h0(c(0, 1));
    EXPECT_EQ(r.h0.value_or(-1), 1);
    EXPECT_EQ(r.verdict, Verdict::NonSplit);
    EXPECT_EQ(elliptic_family_fiber_h0(c(0, 2)).h0.value_or(-1), 1);
    EXPECT_THROW(elliptic_family_fiber_h0(c(1, 0)), std::invalid_argument);
    EXPECT_THROW(elliptic_family_fiber_h0(c(1, -1)), std::invalid_argument);
}

TEST(EllipticFamily, RandomTauProperty) {
    auto rng = seeded(64);
    for (int t = 0; t < 10; ++t) {
        auto r = elliptic_family_fiber_h0(random_tau(rng));
        EXPECT_EQ(r.h0.value_or(-1), 1);
        EXPECT_TRUE(r.fiber->witness_verdict.nonzero);
    }
}

TEST(DecideNonzero, ThresholdAndRefinement) {
    auto big = decide_nonzero([](mpfr_prec_t p) { return ApComplex(1.0, 0.0, p); });
    EXPECT_TRUE(big.nonzero);
    EXPECT_EQ(big.precision, kDefaultPrecision);

    auto zero = decide_nonzero([](mpfr_prec_t p) { return ApComplex(p); });
    EXPECT_FALSE(zero.nonzero);
    EXPECT_EQ(zero.precision, kDefaultPrecision);

    // near the threshold: re-evaluated at twice the precision
    auto near = decide_nonzero([](mpfr_prec_t p) { return ApComplex(3e-12, 0.0, p); });
    EXPECT_TRUE(near.nonzero);
    EXPECT_EQ(near.precision, 2 * kDefaultPrecision);

    // rounding noise that shrinks with precision is recognized as zero
    auto noise = decide_nonzero([](mpfr_prec_t p) { return ApComplex(pow2(-static_cast<long>(p) / 4, p)); });
    EXPECT_FALSE(noise.nonzero);
    EXPECT_EQ(noise.precision, 2 * kDefaultPrecision);
}

TEST(Classifier, CanonicalInputs) {
    Candidate fiber;
    fiber.dimension = 2;
    fiber.genus = 2;
    fiber.in_fiber = true;
    auto r = classify_candidate(fiber);
    EXPECT_EQ(r.verdict, Verdict::NonSplit);
    EXPECT_EQ(r.kind, SubjectKind::Fiber);

    Candidate elliptic;
    elliptic.genus = 1;
    elliptic.in_fiber = true;
    r = classify_candidate(elliptic);
    EXPECT_EQ(r.verdict, Verdict::Split);
    EXPECT_EQ(r.kind, SubjectKind::EllipticInFiber);

    Candidate etale;
    etale.degree_over_C = 3;
    etale.g_C = 2;
    etale.genus = 4;  // 2*4 - 2 = 3 * (2*2 - 2)
    r = classify_candidate(etale);
    EXPECT_EQ(r.verdict, Verdict::Split);
    EXPECT_EQ(r.kind, SubjectKind::EtaleMultisection);

    Candidate ramified = etale;
    ramified.genus = 5;
    ramified.ramification_degree = 2;
    r = classify_candidate(ramified);
    EXPECT_EQ(r.verdict, Verdict::NonSplit);
}

TEST(Classifier, OtherCasesAndErrors) {
    Candidate rational;
    rational.genus = 0;
    EXPECT_EQ(classify_candidate(rational).verdict, Verdict::NonSplit);

    Candidate genus2_in_fiber;
    genus2_in_fiber.genus = 2;
    genus2_in_fiber.in_fiber = true;
    EXPECT_EQ(classify_candidate(genus2_in_fiber).verdict, Verdict::NonSplit);

    Candidate surface;
    surface.dimension = 2;
    surface.genus = 3;
    EXPECT_EQ(classify_candidate(surface).verdict, Verdict::NonSplit);

    Candidate inconsistent;
    inconsistent.genus = 4;
    inconsistent.degree_over_C = 2;
    EXPECT_THROW(classify_candidate(inconsistent), InconsistentData);

    Candidate no_degree;
    no_degree.genus = 3;
    EXPECT_THROW(classify_candidate(no_degree), InconsistentData);

    Candidate bad;
    bad.g_C = 1;
    EXPECT_THROW(classify_candidate(bad), std::invalid_argument);
    bad = Candidate{};
    bad.dimension = 3;
    EXPECT_THROW(classify_candidate(bad), std::invalid_argument);
    bad = Candidate{};
    bad.genus = -1;
    EXPECT_THROW(classify_candidate(bad), std::invalid_argument);
}

TEST(Classifier, RiemannHurwitzSweepProperty) {
    for (long gC = 2; gC <= 5; ++gC)
        for (long d = 1; d <= 4; ++d)
            for (long R = 0; R <= 6; R += 2) {
                Candidate cand;
                cand.g_C = gC;
                cand.degree_over_C = d;
                cand.ramification_degree = R;
                cand.genus = (d * (2 * gC - 2) + R + 2) / 2;
                auto r = classify_candidate(cand);
                EXPECT_EQ(r.verdict, R == 0 ? Verdict::Split : Verdict::NonSplit);
                cand.genus += 1;
                EXPECT_THROW(classify_candidate(cand), InconsistentData);
            }
}

TEST(Enums, Names) {
    EXPECT_EQ(to_string(Verdict::Split), "Split");
    EXPECT_EQ(to_string(Verdict::NonSplit), "NonSplit");
    EXPECT_EQ(to_string(SubjectKind::EtaleMultisection), "EtaleMultisection");
}
