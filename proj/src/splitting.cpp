#include "qmsplit/splitting.hpp"

#include <stdexcept>

namespace qmsplit {

const Rational& nonzero_threshold() {
    static const Rational t = parse_rational("1e-12");
    return t;
}

const Rational& rank_tolerance() {
    static const Rational t = parse_rational("1e-20");
    return t;
}

std::string to_string(SubjectKind k) {
    switch (k) {
        case SubjectKind::Fiber: return "Fiber";
        case SubjectKind::EllipticInFiber: return "EllipticInFiber";
        case SubjectKind::EtaleMultisection: return "EtaleMultisection";
        case SubjectKind::Other: return "Other";
    }
    return "Other";
}

std::string to_string(Verdict v) { return v == Verdict::Split ? "Split" : "NonSplit"; }

QuadMatrix rep_matrix(const FlatRep& rep, const std::vector<Integer>& coords) {
    if (coords.size() != rep.rank()) throw std::invalid_argument("coordinate count does not match the lattice rank");
    const std::size_t d = rep.dim();
    QuadMatrix m = QuadMatrix::identity(d + 1, QuadExt(0), QuadExt(1));
    for (std::size_t i = 0; i < coords.size(); ++i)
        for (std::size_t k = 0; k < d; ++k) m(d, k) -= QuadExt(Rational(coords[i])) * rep.generator_vectors[i][k];
    return m;
}

bool homomorphism_check(const FlatRep& rep, const std::vector<Integer>& c1, const std::vector<Integer>& c2) {
    if (c1.size() != c2.size()) throw std::invalid_argument("coordinate vectors differ in length");
    std::vector<Integer> sum(c1.size());
    for (std::size_t i = 0; i < c1.size(); ++i) sum[i] = c1[i] + c2[i];
    return rep_matrix(rep, sum) == rep_matrix(rep, c1) * rep_matrix(rep, c2);
}

ComplexVector Section::evaluate(const ComplexVector& z) const {
    if (z.size() != a.size()) throw std::invalid_argument("point dimension does not match the section");
    ComplexVector out = f;
    ApComplex last = b;
    for (std::size_t i = 0; i < z.size(); ++i) last += a[i] * z[i];
    out.push_back(last);
    return out;
}

namespace {

ApComplex to_complex(const QuadExt& q, mpfr_prec_t prec) { return ApComplex(q.to_real(prec)); }

ComplexVector to_complex(const QuadVector& v, mpfr_prec_t prec) {
    ComplexVector out;
    for (const auto& x : v) out.push_back(to_complex(x, prec));
    return out;
}

ApComplex dot(const ComplexVector& x, const ComplexVector& y) {
    ApComplex s(x.empty() ? kDefaultPrecision : x.front().precision());
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

}  // namespace

ApReal invariance_residual(const FlatRep& rep, const Section& s, const std::vector<ComplexVector>& points) {
    ApReal worst(s.b.precision());
    for (const auto& z : points)
        for (std::size_t g = 0; g < rep.rank(); ++g) {
            ComplexVector shifted = z;
            for (std::size_t i = 0; i < z.size(); ++i) shifted[i] += rep.periods[g][i];
            ComplexVector lhs = s.evaluate(shifted);
            ComplexVector rhs = s.evaluate(z);
            rhs.back() -= dot(to_complex(rep.generator_vectors[g], s.b.precision()), s.f);
            for (std::size_t i = 0; i < lhs.size(); ++i) worst = max(worst, abs(lhs[i] - rhs[i]));
        }
    return worst;
}

NonzeroVerdict decide_nonzero(const std::function<ApComplex(mpfr_prec_t)>& evaluate, mpfr_prec_t prec) {
    const ApReal thr(nonzero_threshold(), prec);
    const ApReal margin(1000L, prec);
    NonzeroVerdict v;
    v.precision = prec;
    v.magnitude = abs(evaluate(prec));
    if (v.magnitude > thr / margin && v.magnitude < thr * margin) {
        v.precision = 2 * prec;
        v.magnitude = abs(evaluate(v.precision));
    }
    v.nonzero = v.magnitude > ApReal(nonzero_threshold(), v.precision);
    return v;
}

namespace {

// Rows [v_g | period_g]; a null vector (f, a) gives the section (f, a.z).
ComplexMatrix period_system(const FlatRep& rep, mpfr_prec_t prec) {
    const std::size_t d = rep.dim();
    const std::size_t p = rep.periods.front().size();
    ComplexMatrix m(rep.rank(), d + p, ApComplex(prec));
    for (std::size_t g = 0; g < rep.rank(); ++g) {
        for (std::size_t k = 0; k < d; ++k) m(g, k) = to_complex(rep.generator_vectors[g][k], prec);
        for (std::size_t k = 0; k < p; ++k) m(g, d + k) = rep.periods[g][k];
    }
    return m;
}

Section constant_section(std::size_t d, std::size_t p, mpfr_prec_t prec) {
    return {ComplexVector(d, ApComplex(prec)), ComplexVector(p, ApComplex(prec)), ApComplex(1.0, 0.0, prec)};
}

Section section_from_null_vector(const ComplexVector& v, std::size_t d, mpfr_prec_t prec) {
    Section s{{v.begin(), v.begin() + static_cast<long>(d)}, {v.begin() + static_cast<long>(d), v.end()},
              ApComplex(prec)};
    return s;
}

struct FlatSolution {
    int h0 = 1;
    std::vector<Section> sections;
};

FlatSolution solve_flat(const FlatRep& rep, mpfr_prec_t prec) {
    const std::size_t d = rep.dim();
    const std::size_t p = rep.periods.front().size();
    FlatSolution out;
    out.sections.push_back(constant_section(d, p, prec));
    for (const auto& v : numeric_nullspace(period_system(rep, prec), rank_tolerance()))
        out.sections.push_back(section_from_null_vector(v, d, prec));
    out.h0 = static_cast<int>(out.sections.size());
    return out;
}

QuadVector first_column(const QuaternionAlgebra& algebra, const QuatElement& q) {
    auto e = algebra.embed(q);
    return {e(0, 0), e(1, 0)};
}

}  // namespace

FlatRep fiber_rep(const QuaternionAlgebra& algebra, const std::vector<QuatElement>& generators,
                  const UpperHalfPoint& tau) {
    FlatRep rep;
    for (const auto& g : generators) {
        rep.generator_vectors.push_back(first_column(algebra, g));
        rep.periods.push_back(complex_structure(algebra, g, tau.tau()));
    }
    return rep;
}

FlatRep fiber_rep(const OrderLattice& order, const UpperHalfPoint& tau) {
    return fiber_rep(order.algebra(), order.generators(), tau);
}

SplittingReport fiber_h0(const QuaternionAlgebra& algebra, const std::vector<QuatElement>& generators,
                         const UpperHalfPoint& tau) {
    period_lattice(algebra, generators, tau, rank_tolerance());
    const auto prec = tau.precision();
    FlatRep rep = fiber_rep(algebra, generators, tau);
    FlatSolution sol = solve_flat(rep, prec);

    // periods are 1lambda tau + 2lambda, so column operations reduce the
    // system to the real matrix [1lambda | 2lambda]
    QuadMatrix real_basis(4, 4, QuadExt(0));
    for (std::size_t i = 0; i < 4; ++i) {
        auto e = algebra.embed(generators[i]);
        real_basis(i, 0) = e(0, 0);
        real_basis(i, 1) = e(1, 0);
        real_basis(i, 2) = e(0, 1);
        real_basis(i, 3) = e(1, 1);
    }
    FiberCertificate cert{numeric_determinant(period_system(rep, prec)), exact_determinant(real_basis), ApReal(prec),
                          NonzeroVerdict()};
    cert.factored_defect = abs(cert.det_witness - to_complex(cert.exact_det, prec));
    cert.witness_verdict = decide_nonzero(
        [&](mpfr_prec_t p) {
            return numeric_determinant(period_system(fiber_rep(algebra, generators, tau.with_precision(p)), p));
        },
        prec);

    SplittingReport rep_out;
    rep_out.kind = SubjectKind::Fiber;
    rep_out.h0 = sol.h0;
    rep_out.verdict = sol.h0 == 1 ? Verdict::NonSplit : Verdict::Split;
    rep_out.sections = std::move(sol.sections);
    rep_out.fiber = std::move(cert);
    rep_out.citations = {
        "fiber non-splitting: the period system in (f1, f2, a1, a2) is nonsingular because the periods are "
        "R-independent, so the only invariant sections are constant in the normal direction"};
    return rep_out;
}

SplittingReport fiber_h0(const OrderLattice& order, const UpperHalfPoint& tau) {
    return fiber_h0(order.algebra(), order.generators(), tau);
}

FlatRep curve_rep(const QuaternionAlgebra& algebra, const CMPoint& point) {
    const auto prec = point.tau_prime.precision();
    FlatRep rep;
    rep.generator_vectors = {{QuadExt(1), QuadExt(0)}, first_column(algebra, point.mu)};
    rep.periods = {{ApComplex(1.0, 0.0, prec)}, {point.tau_prime}};
    return rep;
}

ApComplex dphi_check(const Section& s, const ApComplex& tau_prime) { return s.f.at(0) * tau_prime + s.f.at(1); }

namespace {

struct CurveSolution {
    FlatSolution flat;
    std::optional<std::size_t> moving;  // index of the section with (f1, f2) != 0
};

// Null vectors scaled so that the first nonzero of (f1, f2) is 1.
CurveSolution solve_curve(const QuaternionAlgebra& algebra, const CMPoint& point) {
    const auto prec = point.tau_prime.precision();
    CurveSolution out{solve_flat(curve_rep(algebra, point), prec), std::nullopt};
    const ApReal tiny(nonzero_threshold(), prec);
    for (std::size_t i = 1; i < out.flat.sections.size(); ++i) {
        auto& s = out.flat.sections[i];
        for (const auto& c : s.f)
            if (abs(c) > tiny) {
                ApComplex scale = c;
                for (auto& x : s.f) x /= scale;
                for (auto& x : s.a) x /= scale;
                if (!out.moving) out.moving = i;
                break;
            }
    }
    return out;
}

CMPoint at_precision(const QuaternionAlgebra& algebra, const CMPoint& point, mpfr_prec_t prec) {
    CMPoint p = point;
    p.tau = point.tau.with_precision(prec);
    p.tau_prime = eigenvalue_tau_prime(algebra, p.mu, p.tau, rank_tolerance());
    return p;
}

}  // namespace

SplittingReport curve_h0(const QuaternionAlgebra& algebra, const CMPoint& point) {
    const auto prec = point.tau_prime.precision();
    CurveSolution sol = solve_curve(algebra, point);

    SplittingReport out;
    out.kind = SubjectKind::EllipticInFiber;
    out.h0 = sol.flat.h0;
    out.citations = {
        "elliptic curves in fibers split: (f1, f2) runs over the tau'-eigenspace of embed(mu)^t, which is a line",
        "the differential of the inclusion is surjective when f1 tau' + f2 is nonzero"};
    if (sol.moving) {
        const Section& s = sol.flat.sections[*sol.moving];
        auto e = algebra.embed_numeric(point.mu, prec);
        ComplexVector residual{e(0, 0) * s.f[0] + e(1, 0) * s.f[1] - point.tau_prime * s.f[0],
                               e(0, 1) * s.f[0] + e(1, 1) * s.f[1] - point.tau_prime * s.f[1]};
        out.curve = CurveCertificate{s.f, vector_norm(residual), dphi_check(s, point.tau.tau())};
        out.dphi_value = dphi_check(s, point.tau_prime);
        auto verdict = decide_nonzero(
            [&](mpfr_prec_t p) {
                if (p == prec) return *out.dphi_value;
                CMPoint hp = at_precision(algebra, point, p);
                auto hi = solve_curve(algebra, hp);
                if (!hi.moving) return ApComplex(p);
                return dphi_check(hi.flat.sections[*hi.moving], hp.tau_prime);
            },
            prec);
        out.verdict = (out.h0 == 2 && verdict.nonzero) ? Verdict::Split : Verdict::NonSplit;
    }
    out.sections = std::move(sol.flat.sections);
    return out;
}

SplittingReport elliptic_family_fiber_h0(const ApComplex& tau) {
    if (tau.imag().sign() <= 0) throw std::invalid_argument("tau must lie in the upper half plane");
    const auto prec = tau.precision();
    FlatRep rep;
    rep.generator_vectors = {{QuadExt(1)}, {QuadExt(0)}};
    rep.periods = {{tau}, {ApComplex(1.0, 0.0, prec)}};
    FlatSolution sol = solve_flat(rep, prec);

    QuadMatrix real_basis{{QuadExt(1), QuadExt(0)}, {QuadExt(0), QuadExt(1)}};
    FiberCertificate cert{numeric_determinant(period_system(rep, prec)), exact_determinant(real_basis), ApReal(prec),
                          NonzeroVerdict()};
    cert.factored_defect = abs(cert.det_witness - to_complex(cert.exact_det, prec));
    cert.witness_verdict = decide_nonzero([&](mpfr_prec_t) { return cert.det_witness; }, prec);

    SplittingReport out;
    out.kind = SubjectKind::Fiber;
    out.h0 = sol.h0;
    out.verdict = sol.h0 == 1 ? Verdict::NonSplit : Verdict::Split;
    out.sections = std::move(sol.sections);
    out.fiber = std::move(cert);
    out.citations = {"fibers of the elliptic modular family do not split: the system [[1, tau], [0, 1]] is unimodular"};
    return out;
}

SplittingReport classify_candidate(const Candidate& c) {
    if (c.g_C < 2) throw std::invalid_argument("base curve genus must be at least 2");
    if (c.genus < 0 || c.degree_over_C < 0 || c.ramification_degree < 0)
        throw std::invalid_argument("genus and degrees must be non-negative");
    if (c.dimension != 1 && c.dimension != 2) throw std::invalid_argument("candidate dimension must be 1 or 2");

    SplittingReport out;
    out.verdict = Verdict::NonSplit;
    if (c.dimension == 2) {
        out.kind = c.in_fiber ? SubjectKind::Fiber : SubjectKind::Other;
        out.citations = {c.in_fiber ? "a fiber is an abelian surface and never splits"
                                    : "a surface that is not a fiber is the whole family up to finite cover, which "
                                      "is hyperbolic, and does not split"};
        return out;
    }
    if (c.genus == 0) {
        out.kind = SubjectKind::Other;
        out.citations = {"the family contains no rational curves"};
        return out;
    }
    if (c.in_fiber) {
        out.kind = c.genus == 1 ? SubjectKind::EllipticInFiber : SubjectKind::Other;
        out.verdict = c.genus == 1 ? Verdict::Split : Verdict::NonSplit;
        out.citations = {c.genus == 1 ? "elliptic curves in fibers split"
                                      : "a split curve in a fiber has canonical degree zero, hence genus 1"};
        return out;
    }
    if (c.degree_over_C == 0) throw InconsistentData("a curve outside the fibers maps onto the base with positive degree");
    const long lhs = 2 * c.genus - 2;
    const long base = c.degree_over_C * (2 * c.g_C - 2);
    if (lhs != base + c.ramification_degree)
        throw InconsistentData("Riemann-Hurwitz fails: 2g - 2 = " + std::to_string(lhs) + " but d(2g_C - 2) + R = " +
                               std::to_string(base + c.ramification_degree));
    if (c.ramification_degree == 0) {
        out.kind = SubjectKind::EtaleMultisection;
        out.verdict = Verdict::Split;
        out.citations = {"etale multisections split: the projection to the base is a local isomorphism"};
    } else {
        out.kind = SubjectKind::Other;
        out.citations = {"splitting forces K_N = K_M|_N / 2 on degree level, so the ramification R must vanish"};
    }
    return out;
}

}  // namespace qmsplit
