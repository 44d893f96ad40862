#pragma once

#include "vvmf/formspace.hpp"
#include "vvmf/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vvmf {

/// Singular and constant terms sum c(gamma, n) q^n e_gamma with n <= 0,
/// stored once per orbit {gamma, -gamma}.
class PrincipalPart {
  public:
    using Key = std::pair<std::size_t, Rational>; // (orbit representative, n)

    explicit PrincipalPart(FiniteQuadraticModule fqm) : fqm_(std::move(fqm)) {}

    /// Sets c(gamma, n) (and so c(-gamma, n)). InputError unless n <= 0 and
    /// n = q(gamma) mod 1.
    void set(std::size_t gamma, const Rational& n, const Rational& coefficient);
    [[nodiscard]] Rational get(std::size_t gamma, const Rational& n) const;

    [[nodiscard]] const FiniteQuadraticModule& fqm() const noexcept { return fqm_; }
    [[nodiscard]] const std::map<Key, Rational>& terms() const noexcept { return terms_; }
    [[nodiscard]] bool isIntegral() const;
    [[nodiscard]] bool hasConstantTerms() const;
    /// Largest |n| in the support (0 when empty).
    [[nodiscard]] Rational depth() const;

    PrincipalPart& operator+=(const PrincipalPart& rhs);
    PrincipalPart& operator*=(const Rational& s);
    friend PrincipalPart operator+(PrincipalPart a, const PrincipalPart& b) { return a += b; }
    friend PrincipalPart operator*(PrincipalPart a, const Rational& s) { return a *= s; }
    friend bool operator==(const PrincipalPart& a, const PrincipalPart& b) {
        return a.fqm_ == b.fqm_ && a.terms_ == b.terms_;
    }

  private:
    FiniteQuadraticModule fqm_;
    std::map<Key, Rational> terms_;
};

/// Residue pairing sum over all gamma in M'/M and n of c(gamma, n) g(gamma, -n).
Rational pair(const FormExpansion& g, const PrincipalPart& phi);

struct Realizability {
    bool realizable = true;
    RationalVector residuals; // one per basis form
};

Realizability isRealizable(const PrincipalPart& phi, const std::vector<FormExpansion>& basis);

struct ConstantTermSolution {
    std::optional<PrincipalPart> completed;
    /// When infeasible: y with y^T A = 0 and y^T b = 1, indexed by basis form.
    RationalVector witness;
};

/// Chooses constant terms at the isotropic orbits so that phi becomes realizable.
ConstantTermSolution solveConstantTerms(const PrincipalPart& singular, const std::vector<FormExpansion>& basis);

struct DivisorTerm {
    Rational n;
    std::size_t gamma;
    Integer coefficient;
    friend bool operator==(const DivisorTerm&, const DivisorTerm&) = default;
};

struct MultiplicityAudit {
    Rational n;
    std::size_t gamma;
    Integer multiplicity;
    friend bool operator==(const MultiplicityAudit&, const MultiplicityAudit&) = default;
};

struct RelationCertificate {
    PrincipalPart principalPart;
    Rational liftWeight;
    std::vector<DivisorTerm> divisor;
    RationalVector residuals;
    std::string basisFingerprint;
    std::vector<MultiplicityAudit> audit;
    friend bool operator==(const RelationCertificate&, const RelationCertificate&) = default;
};

/// InputError (listing the residuals) when phi is not integral or not realizable.
RelationCertificate certify(const PrincipalPart& phi, const std::vector<FormExpansion>& basis);

/// Stable hex digest of the exact basis coefficients.
std::string basisFingerprint(const std::vector<FormExpansion>& basis);

/// Order of vanishing along lambda-perp for the primitive lambda in M' with
/// lambda^2 / 2 = n0 and class gamma0: sum over integers x >= 1 of
/// c(x gamma0, x^2 n0).
Integer primitiveMultiplicity(const PrincipalPart& phi, const Rational& n0, std::size_t gamma0);

struct RelationLattice {
    std::size_t rankBound = 0;
    std::vector<PrincipalPart::Key> coordinates; // (orbit, n), n ascending then orbit
    std::vector<IntegerVector> relations;        // Hermite normal form rows
    friend bool operator==(const RelationLattice&, const RelationLattice&) = default;
};

/// Integer relations among the Heegner symbols y(n, gamma), -T <= n <= 0.
RelationLattice relationLattice(const FiniteQuadraticModule& fqm, const std::vector<FormExpansion>& basis,
                                std::int64_t truncation);

PrincipalPart relationToPrincipalPart(const RelationLattice& lattice, const IntegerVector& relation,
                                      const FiniteQuadraticModule& fqm);

struct HeegnerPoint {
    std::int64_t a, b, c;
    Rational realPart;
    /// Im(tau) = imagCoefficient * sqrt(imagRadicand), radicand squarefree.
    Rational imagCoefficient;
    std::int64_t imagRadicand;
    friend bool operator==(const HeegnerPoint&, const HeegnerPoint&) = default;
};

/// Integer triples with |A|, |B|, |C| <= bound, N | A, B = gamma mod 2N and
/// B^2 - 4AC = 4Nn, each with its root in the upper half plane.
std::vector<HeegnerPoint> heegnerPoints(std::int64_t level, const Rational& n, std::int64_t gamma,
                                        std::int64_t bound);

} // namespace vvmf
