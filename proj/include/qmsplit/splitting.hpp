#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmsplit/cm_points.hpp"

namespace qmsplit {

using QuadVector = std::vector<QuadExt>;

/// Unipotent flat representation g -> [[id, 0], [-v_g^t, 1]] of a period
/// lattice, given on generators.  Periods live in C^2 for a fiber and in C
/// for a curve.
struct FlatRep {
    std::vector<QuadVector> generator_vectors;
    std::vector<ComplexVector> periods;

    std::size_t rank() const { return generator_vectors.size(); }
    std::size_t dim() const { return generator_vectors.empty() ? 0 : generator_vectors.front().size(); }
};

/// rho(sum c_i g_i) as an exact (dim + 1) x (dim + 1) matrix.
QuadMatrix rep_matrix(const FlatRep& rep, const std::vector<Integer>& coords);

/// rho(g1 + g2) = rho(g1) rho(g2), exactly.
bool homomorphism_check(const FlatRep& rep, const std::vector<Integer>& c1, const std::vector<Integer>& c2);

/// A section z -> (f, a.z + b) of the restricted cotangent bundle.
struct Section {
    ComplexVector f;  // constant part, size dim
    ComplexVector a;  // linear coefficients of the last coordinate (one per variable)
    ApComplex b;

    /// (f, a.z + b) at z.
    ComplexVector evaluate(const ComplexVector& z) const;
};

/// Max over z and generators of |s(z + period) - rho(gen) s(z)|.
ApReal invariance_residual(const FlatRep& rep, const Section& s, const std::vector<ComplexVector>& points);

struct NonzeroVerdict {
    bool nonzero = false;
    ApReal magnitude;
    mpfr_prec_t precision = kDefaultPrecision;  // precision at which the verdict was taken
};

/// |value| > 1e-12, re-evaluated at twice the precision when the first
/// magnitude is within a factor 1e3 of the threshold.
NonzeroVerdict decide_nonzero(const std::function<ApComplex(mpfr_prec_t)>& evaluate,
                              mpfr_prec_t prec = kDefaultPrecision);

const Rational& nonzero_threshold();
/// Relative singular value threshold for numeric ranks (1e-20).
const Rational& rank_tolerance();

enum class SubjectKind { Fiber, EllipticInFiber, EtaleMultisection, Other };
enum class Verdict { Split, NonSplit };

std::string to_string(SubjectKind k);
std::string to_string(Verdict v);

struct FiberCertificate {
    ApComplex det_witness;      // det of the 4x4 system
    QuadExt exact_det;          // det of the real basis matrix [1lambda | 2lambda]
    ApReal factored_defect;     // |det_witness - exact_det|
    NonzeroVerdict witness_verdict;
};

struct CurveCertificate {
    ComplexVector eigenvector;   // (f1, f2), first nonzero entry 1
    ApReal eigen_residual;       // |embed(mu)^t v - tau' v|
    ApComplex dphi_tau;          // f1 tau + f2
};

struct SplittingReport {
    SubjectKind kind = SubjectKind::Other;
    std::optional<int> h0;
    Verdict verdict = Verdict::NonSplit;
    std::vector<Section> sections;
    std::optional<FiberCertificate> fiber;
    std::optional<CurveCertificate> curve;
    std::optional<ApComplex> dphi_value;
    std::vector<std::string> citations;
};

/// v_i = first column of embed(lambda_i), periods lambda_i (tau, 1)^t.
FlatRep fiber_rep(const OrderLattice& order, const UpperHalfPoint& tau);
FlatRep fiber_rep(const QuaternionAlgebra& algebra, const std::vector<QuatElement>& generators,
                  const UpperHalfPoint& tau);

/// h0 of the restricted cotangent bundle on the fiber A_tau: f1, f2 constant,
/// f3 = a1 z1 + a2 z2 + b, and the four period conditions a.lambda_tau = -v.f.
/// h0 = 1 + nullity of that 4x4 system.  Throws DegenerateLattice when the
/// periods are not R-independent.
SplittingReport fiber_h0(const OrderLattice& order, const UpperHalfPoint& tau);
SplittingReport fiber_h0(const QuaternionAlgebra& algebra, const std::vector<QuatElement>& generators,
                         const UpperHalfPoint& tau);

/// Generators 1 and tau' of E_tau' = C/(Z tau' + Z) embedded by z -> (tau, 1)^t z:
/// v_1 = (1, 0), v_tau' = first column of embed(mu).
FlatRep curve_rep(const QuaternionAlgebra& algebra, const CMPoint& point);

/// h0 = 1 + nullity of the system in (f1, f2, a): a + f1 = 0 and
/// a tau' + mu11 f1 + mu21 f2 = 0.  Sections: (0, 0, 1) and (f1, f2, -f1 z).
SplittingReport curve_h0(const QuaternionAlgebra& algebra, const CMPoint& point);

/// f1 tau' + f2.
ApComplex dphi_check(const Section& s, const ApComplex& tau_prime);

/// One-dimensional analogue on the elliptic modular family over the upper
/// half plane: generators tau, 1 with v = 1, 0.  Throws std::invalid_argument
/// unless Im tau > 0.
SplittingReport elliptic_family_fiber_h0(const ApComplex& tau);

struct Candidate {
    int dimension = 1;  // 1: curve, 2: surface
    long genus = 0;
    bool in_fiber = false;
    long degree_over_C = 0;
    long ramification_degree = 0;
    long g_C = 2;
};

/// Verdict for a compact submanifold from its numerical data.  Throws
/// std::invalid_argument for out-of-range input and InconsistentData when
/// the Riemann-Hurwitz count 2g - 2 = d (2 g_C - 2) + R cannot hold.
SplittingReport classify_candidate(const Candidate& c);

}  // namespace qmsplit
