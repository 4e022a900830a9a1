#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qmsplit/order.hpp"

namespace qmsplit {

/// c2 T^2 + c1 T + c0 over Q(sqrt a).
struct QuadraticData {
    QuadExt c2, c1, c0;

    /// (c1/c2, c0/c2): equal keys <=> same roots.
    std::pair<QuadExt, QuadExt> monic_key() const { return {c1 / c2, c0 / c2}; }
};

/// A point of the upper half plane, optionally with the exact quadratic
/// equation it is the positive-imaginary root of.
class UpperHalfPoint {
public:
    /// Throws std::invalid_argument unless Im(tau) > 0.
    explicit UpperHalfPoint(ApComplex tau, std::optional<QuadraticData> exact = std::nullopt);

    const ApComplex& tau() const { return tau_; }
    const std::optional<QuadraticData>& exact() const { return exact_; }
    mpfr_prec_t precision() const { return tau_.precision(); }

    /// Recomputes from the exact data when present, otherwise pads.
    UpperHalfPoint with_precision(mpfr_prec_t prec) const;

private:
    ApComplex tau_;
    std::optional<QuadraticData> exact_;
};

/// m (tau, 1)^t.
ComplexVector complex_structure(const QuaternionAlgebra& algebra, const QuatElement& m, const ApComplex& tau);

/// Images lambda_i (tau, 1)^t of the order generators.
struct PeriodLattice {
    UpperHalfPoint tau;
    std::vector<ComplexVector> vectors;
};

/// Throws DegenerateLattice unless the four period vectors are R-independent
/// (real 4x4 period matrix of numeric rank 4 at relative tolerance `tol`).
PeriodLattice period_lattice(const QuaternionAlgebra& algebra, const std::vector<QuatElement>& generators,
                             const UpperHalfPoint& tau, const Rational& tol);
PeriodLattice period_lattice(const OrderLattice& order, const UpperHalfPoint& tau, const Rational& tol);

/// rho with rho' = -rho, rho^2 < 0, and a positive integer scale making
/// scale * E integral on the order basis.
class Polarization {
public:
    /// Scale is the lcm of the denominators of E on basis pairs.
    /// Throws std::invalid_argument when rho is not pure or rho^2 >= 0.
    static Polarization minimal(const OrderLattice& order, const QuatElement& rho);
    /// Explicit scale (no integrality guarantee; see riemann_conditions_check).
    Polarization(const QuaternionAlgebra& algebra, QuatElement rho, Rational scale);

    const QuatElement& rho() const { return rho_; }
    const Rational& scale() const { return scale_; }

private:
    QuatElement rho_;
    Rational scale_;
};

/// E(m1, m2) = trd(rho m1 m2').
Rational riemann_form(const QuaternionAlgebra& algebra, const QuatElement& rho, const QuatElement& m1,
                      const QuatElement& m2);

/// Gram matrix of E on the order basis (alternating 4x4).
RationalMatrix riemann_gram(const OrderLattice& order, const QuatElement& rho);

struct RiemannReport {
    bool integral = false;
    std::optional<std::pair<int, int>> integrality_witness;  // basis pair with non-integral scale*E
    bool compatible = false;
    ApReal compatibility_defect;  // max |E(J m1, J m2) - E(m1, m2)| on basis pairs
    std::pair<int, int> compatibility_witness{0, 0};
    bool positive = false;
    ApReal minor1;  // H_11
    ApReal minor2;  // det H
    ComplexMatrix hermitian;

    bool all_pass() const { return integral && compatible && positive; }
};

/// Checks (i) scale*E integral on basis pairs, (ii) E(Jm1, Jm2) = E(m1, m2)
/// for the complex structure J of tau, (iii) the Hermitian form with real part
/// E(m, Jm) is positive definite (leading principal minors > tol).
RiemannReport riemann_conditions_check(const OrderLattice& order, const PeriodLattice& lattice,
                                       const Polarization& pol, const Rational& tol);

/// (A tau + B)/(C tau + D) for embed(gamma) = [[A, B], [C, D]].
/// Throws std::invalid_argument unless nrd(gamma) = 1.
UpperHalfPoint moebius_act(const QuaternionAlgebra& algebra, const QuatElement& gamma, const UpperHalfPoint& tau);

/// C tau + D.
ApComplex automorphy_j(const QuaternionAlgebra& algebra, const QuatElement& gamma, const ApComplex& tau);

struct CheckResult {
    bool ok = false;
    ApReal defect;
};

/// O_{B, gamma tau} = (c tau + d)^{-1} O_{B, tau}: each generator of one side
/// is an integral combination of the other side's generators (numeric real
/// 4x4 solves, distance to the nearest integer vector below tol).
CheckResult isogeny_lattice_check(const OrderLattice& order, const QuatElement& gamma, const UpperHalfPoint& tau,
                                  const Rational& tol);

/// Element of Gamma_{O_B}: the block matrix [[id, lambda], [0, gamma]].
struct FamilyGroupElement {
    QuatElement lambda;
    QuatElement gamma;

    static FamilyGroupElement identity() { return {QuatElement{}, QuatElement::one()}; }
};

FamilyGroupElement compose(const QuaternionAlgebra& algebra, const FamilyGroupElement& g1,
                           const FamilyGroupElement& g2);
FamilyGroupElement inverse(const QuaternionAlgebra& algebra, const FamilyGroupElement& g);

struct FamilyPoint {
    ComplexVector z;  // size 2
    ApComplex tau;
};

/// ((z + lambda_tau)/(c tau + d), gamma tau).
FamilyPoint act(const QuaternionAlgebra& algebra, const FamilyGroupElement& g, const FamilyPoint& x);

/// Factor of automorphy of T_M: the Jacobian of act() at x,
///   (1/j) [[id_2, 1lambda - c (z + lambda_tau)/j], [0, 1/j]],  j = c tau + d,
/// where 1lambda is the first column of embed(lambda).
ComplexMatrix automorphy_factor(const QuaternionAlgebra& algebra, const FamilyGroupElement& g, const FamilyPoint& x);

/// |a(g1 g2, x) - a(g1, g2 x) a(g2, x)| entrywise max below tol.
CheckResult cocycle_check(const QuaternionAlgebra& algebra, const FamilyGroupElement& g1,
                          const FamilyGroupElement& g2, const FamilyPoint& x, const Rational& tol);

/// det a(g, x) = j(gamma, tau)^{-4}.
CheckResult canonical_degree_check(const QuaternionAlgebra& algebra, const FamilyGroupElement& g,
                                   const FamilyPoint& x, const Rational& tol);

}  // namespace qmsplit
