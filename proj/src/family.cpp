#include "qmsplit/family.hpp"

#include <stdexcept>

namespace qmsplit {

UpperHalfPoint::UpperHalfPoint(ApComplex tau, std::optional<QuadraticData> exact)
    : tau_(std::move(tau)), exact_(std::move(exact)) {
    if (tau_.imag().sign() <= 0) throw std::invalid_argument("point is not in the upper half plane");
}

UpperHalfPoint UpperHalfPoint::with_precision(mpfr_prec_t prec) const {
    if (!exact_) return UpperHalfPoint(tau_.with_precision(prec));
    auto roots = solve_quadratic(exact_->c2, exact_->c1, exact_->c0, prec);
    return UpperHalfPoint(roots.first, exact_);
}

ComplexVector complex_structure(const QuaternionAlgebra& algebra, const QuatElement& m, const ApComplex& tau) {
    auto e = algebra.embed_numeric(m, tau.precision());
    return {e(0, 0) * tau + e(0, 1), e(1, 0) * tau + e(1, 1)};
}

PeriodLattice period_lattice(const QuaternionAlgebra& algebra, const std::vector<QuatElement>& generators,
                             const UpperHalfPoint& tau, const Rational& tol) {
    PeriodLattice out{tau, {}};
    const auto prec = tau.precision();
    ComplexMatrix real_periods(4, generators.size(), ApComplex(prec));
    for (std::size_t i = 0; i < generators.size(); ++i) {
        auto v = complex_structure(algebra, generators[i], tau.tau());
        real_periods(0, i) = ApComplex(v[0].real());
        real_periods(1, i) = ApComplex(v[1].real());
        real_periods(2, i) = ApComplex(v[0].imag());
        real_periods(3, i) = ApComplex(v[1].imag());
        out.vectors.push_back(std::move(v));
    }
    if (generators.size() != 4 || numeric_rank(real_periods, tol) != 4)
        throw DegenerateLattice("period vectors are not R-linearly independent");
    return out;
}

PeriodLattice period_lattice(const OrderLattice& order, const UpperHalfPoint& tau, const Rational& tol) {
    return period_lattice(order.algebra(), order.generators(), tau, tol);
}

namespace {

void check_polarization_element(const QuaternionAlgebra& algebra, const QuatElement& rho) {
    if (rho.k != 0) throw std::invalid_argument("polarization element must satisfy rho' = -rho");
    // rho pure => rho^2 = -nrd(rho)
    if (algebra.nrd(rho) <= 0) throw std::invalid_argument("polarization element must satisfy rho^2 < 0");
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace

Polarization::Polarization(const QuaternionAlgebra& algebra, QuatElement rho, Rational scale)
    : rho_(std::move(rho)), scale_(std::move(scale)) {
    check_polarization_element(algebra, rho_);
    if (scale_ <= 0) throw std::invalid_argument("polarization scale must be positive");
}

Polarization Polarization::minimal(const OrderLattice& order, const QuatElement& rho) {
    check_polarization_element(order.algebra(), rho);
    auto gram = riemann_gram(order, rho);
    Integer scale = 1;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) scale = lcm(scale, gram(i, j).get_den());
    return Polarization(order.algebra(), rho, Rational(scale));
}

Rational riemann_form(const QuaternionAlgebra& algebra, const QuatElement& rho, const QuatElement& m1,
                      const QuatElement& m2) {
    return algebra.trd(algebra.mul(algebra.mul(rho, m1), algebra.conj(m2)));
}

RationalMatrix riemann_gram(const OrderLattice& order, const QuatElement& rho) {
    auto gens = order.generators();
    RationalMatrix g(4, 4, Rational(0));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) g(i, j) = riemann_form(order.algebra(), rho, gens[i], gens[j]);
    return g;
}

namespace {

// adj([[a, b], [c, d]]) = [[d, -b], [-c, a]]: the involution ' on M2(R).
ComplexMatrix adjugate(const ComplexMatrix& m) {
    return ComplexMatrix{{m(1, 1), -m(0, 1)}, {-m(1, 0), m(0, 0)}};
}

ApReal trace_real(const ComplexMatrix& m) { return (m(0, 0) + m(1, 1)).real(); }

}  // namespace

RiemannReport riemann_conditions_check(const OrderLattice& order, const PeriodLattice& lattice,
                                       const Polarization& pol, const Rational& tol) {
    const auto& alg = order.algebra();
    const auto prec = lattice.tau.precision();
    const ApReal eps(tol, prec);
    RiemannReport rep;

    auto gram = riemann_gram(order, pol.rho());
    rep.integral = true;
    for (int i = 0; i < 4 && rep.integral; ++i)
        for (int j = 0; j < 4; ++j)
            if (Rational(pol.scale() * gram(i, j)).get_den() != 1) {
                rep.integral = false;
                rep.integrality_witness = std::make_pair(i, j);
                break;
            }

    // J acts on M2(R) by right multiplication with K, where m K (tau,1)^t = i m (tau,1)^t.
    const ApReal s = lattice.tau.tau().real();
    const ApReal t = lattice.tau.tau().imag();
    const ApReal one(1L, prec);
    ComplexMatrix k{{ApComplex(s / t), ApComplex(-t - s * s / t)}, {ApComplex(one / t), ApComplex(-s / t)}};

    const ComplexMatrix r = alg.embed_numeric(pol.rho(), prec);
    const ApReal scale(pol.scale(), prec);
    auto e = [&](const ComplexMatrix& m1, const ComplexMatrix& m2) { return scale * trace_real(r * m1 * adjugate(m2)); };

    std::vector<ComplexMatrix> basis;
    for (const auto& g : order.generators()) basis.push_back(alg.embed_numeric(g, prec));
    rep.compatibility_defect = ApReal(prec);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            ApReal d = abs(e(basis[i] * k, basis[j] * k) - e(basis[i], basis[j]));
            if (d > rep.compatibility_defect) {
                rep.compatibility_defect = d;
                rep.compatibility_witness = {i, j};
            }
        }
    rep.compatible = rep.compatibility_defect < eps;

    // Preimages of the standard basis of C^2 under m -> m (tau, 1)^t.
    ApComplex zero(prec), unit(1.0, 0.0, prec);
    std::vector<ComplexMatrix> f{ComplexMatrix{{zero, unit}, {zero, zero}}, ComplexMatrix{{zero, zero}, {zero, unit}}};
    rep.hermitian = ComplexMatrix(2, 2, zero);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            rep.hermitian(a, b) = ApComplex(e(f[a], f[b] * k), -e(f[a], f[b]));
    rep.minor1 = rep.hermitian(0, 0).real();
    rep.minor2 = numeric_determinant(rep.hermitian).real();
    rep.positive = rep.minor1 > eps && rep.minor2 > eps;
    return rep;
}

UpperHalfPoint moebius_act(const QuaternionAlgebra& algebra, const QuatElement& gamma, const UpperHalfPoint& tau) {
    if (algebra.nrd(gamma) != 1) throw std::invalid_argument("moebius_act needs nrd(gamma) = 1");
    auto g = algebra.embed_numeric(gamma, tau.precision());
    return UpperHalfPoint((g(0, 0) * tau.tau() + g(0, 1)) / (g(1, 0) * tau.tau() + g(1, 1)));
}

ApComplex automorphy_j(const QuaternionAlgebra& algebra, const QuatElement& gamma, const ApComplex& tau) {
    auto g = algebra.embed_numeric(gamma, tau.precision());
    return g(1, 0) * tau + g(1, 1);
}

namespace {

ComplexMatrix real_coordinates(const std::vector<ComplexVector>& vectors, mpfr_prec_t prec) {
    ComplexMatrix m(4, vectors.size(), ApComplex(prec));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        m(0, i) = ApComplex(vectors[i][0].real());
        m(1, i) = ApComplex(vectors[i][1].real());
        m(2, i) = ApComplex(vectors[i][0].imag());
        m(3, i) = ApComplex(vectors[i][1].imag());
    }
    return m;
}

// Largest distance to an integer of the coordinates of `targets` in `basis`.
ApReal integrality_defect(const std::vector<ComplexVector>& basis, const std::vector<ComplexVector>& targets,
                          mpfr_prec_t prec) {
    ComplexMatrix b = real_coordinates(basis, prec);
    ComplexMatrix t = real_coordinates(targets, prec);
    ApReal worst(prec);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        auto x = numeric_solve(b, t.col(i));
        for (const auto& xi : x) {
            worst = max(worst, abs(xi.real() - round(xi.real())));
            worst = max(worst, abs(xi.imag()));
        }
    }
    return worst;
}

}  // namespace

CheckResult isogeny_lattice_check(const OrderLattice& order, const QuatElement& gamma, const UpperHalfPoint& tau,
                                  const Rational& tol) {
    const auto& alg = order.algebra();
    const auto prec = tau.precision();
    UpperHalfPoint moved = moebius_act(alg, gamma, tau);
    ApComplex j = automorphy_j(alg, gamma, tau.tau());
    std::vector<ComplexVector> left, right;
    for (const auto& g : order.generators()) {
        left.push_back(complex_structure(alg, g, moved.tau()));
        auto v = complex_structure(alg, g, tau.tau());
        right.push_back({v[0] / j, v[1] / j});
    }
    ApReal defect = max(integrality_defect(right, left, prec), integrality_defect(left, right, prec));
    return {defect < ApReal(tol, prec), defect};
}

FamilyGroupElement compose(const QuaternionAlgebra& algebra, const FamilyGroupElement& g1,
                           const FamilyGroupElement& g2) {
    return {g2.lambda + algebra.mul(g1.lambda, g2.gamma), algebra.mul(g1.gamma, g2.gamma)};
}

FamilyGroupElement inverse(const QuaternionAlgebra& algebra, const FamilyGroupElement& g) {
    QuatElement ginv = algebra.inverse(g.gamma);
    return {-algebra.mul(g.lambda, ginv), ginv};
}

FamilyPoint act(const QuaternionAlgebra& algebra, const FamilyGroupElement& g, const FamilyPoint& x) {
    auto gm = algebra.embed_numeric(g.gamma, x.tau.precision());
    ApComplex j = gm(1, 0) * x.tau + gm(1, 1);
    auto lt = complex_structure(algebra, g.lambda, x.tau);
    return {{(x.z[0] + lt[0]) / j, (x.z[1] + lt[1]) / j}, (gm(0, 0) * x.tau + gm(0, 1)) / j};
}

ComplexMatrix automorphy_factor(const QuaternionAlgebra& algebra, const FamilyGroupElement& g, const FamilyPoint& x) {
    const auto prec = x.tau.precision();
    auto gm = algebra.embed_numeric(g.gamma, prec);
    auto lm = algebra.embed_numeric(g.lambda, prec);
    const ApComplex& c = gm(1, 0);
    ApComplex j = c * x.tau + gm(1, 1);
    ApComplex inv_j = ApComplex(1.0, 0.0, prec) / j;
    auto lt = complex_structure(algebra, g.lambda, x.tau);

    ComplexMatrix a(3, 3, ApComplex(prec));
    a(0, 0) = inv_j;
    a(1, 1) = inv_j;
    for (int r = 0; r < 2; ++r) a(r, 2) = (lm(r, 0) - c * (x.z[r] + lt[r]) * inv_j) * inv_j;
    a(2, 2) = inv_j * inv_j;
    return a;
}

namespace {

ApReal max_entry_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    ApReal worst(a(0, 0).precision());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) worst = max(worst, abs(a(r, c) - b(r, c)));
    return worst;
}

}  // namespace

CheckResult cocycle_check(const QuaternionAlgebra& algebra, const FamilyGroupElement& g1,
                          const FamilyGroupElement& g2, const FamilyPoint& x, const Rational& tol) {
    auto lhs = automorphy_factor(algebra, compose(algebra, g1, g2), x);
    auto rhs = automorphy_factor(algebra, g1, act(algebra, g2, x)) * automorphy_factor(algebra, g2, x);
    ApReal d = max_entry_distance(lhs, rhs);
    return {d < ApReal(tol, d.precision()), d};
}

CheckResult canonical_degree_check(const QuaternionAlgebra& algebra, const FamilyGroupElement& g,
                                   const FamilyPoint& x, const Rational& tol) {
    ApComplex det = numeric_determinant(automorphy_factor(algebra, g, x));
    ApComplex j = automorphy_j(algebra, g.gamma, x.tau);
    ApComplex j2 = j * j;
    ApComplex expected = ApComplex(1.0, 0.0, x.tau.precision()) / (j2 * j2);
    ApReal d = abs(det - expected);
    return {d < ApReal(tol, d.precision()), d};
}

}  // namespace qmsplit
