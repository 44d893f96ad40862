#pragma once

#include "vvmf/linalg.hpp"
#include "vvmf/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vvmf {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

struct Signature {
    int plus = 0;
    int minus = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Nondegenerate even lattice given by its Gram matrix.
class Lattice {
  public:
    /// Validates symmetry, even diagonal and nondegeneracy (InputError).
    explicit Lattice(IntMatrix gram, std::string name = {});

    [[nodiscard]] const IntMatrix& gram() const noexcept { return gram_; }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::size_t rank() const noexcept { return gram_.size(); }
    [[nodiscard]] Signature signature() const noexcept { return signature_; }
    [[nodiscard]] const Integer& determinant() const noexcept { return det_; }

  private:
    IntMatrix gram_;
    std::string name_;
    Signature signature_;
    Integer det_;
};

/// Orthogonal direct sum of Gram matrices.
IntMatrix blockSum(const std::vector<IntMatrix>& blocks);

/// Exact inertia of a symmetric rational matrix by congruence diagonalisation.
Signature inertia(const RationalMatrix& symmetric);

/// Finite quadratic module M'/M = (+) Z/d_i with q(x) = x^T B x / 2 mod 1,
/// where B is the Gram matrix of the chosen generators of M'/M.
///
/// Elements are numbered in mixed radix over the elementary divisors with the
/// first coordinate most significant.
class FiniteQuadraticModule {
  public:
    FiniteQuadraticModule(std::vector<std::int64_t> elementaryDivisors, RationalMatrix dualGram);

    [[nodiscard]] const std::vector<std::int64_t>& elementaryDivisors() const noexcept { return divisors_; }
    [[nodiscard]] const RationalMatrix& dualGram() const noexcept { return dualGram_; }
    [[nodiscard]] std::size_t order() const noexcept { return size_; }
    [[nodiscard]] bool isTrivial() const noexcept { return size_ == 1; }

    [[nodiscard]] std::vector<std::int64_t> coordinates(std::size_t index) const;
    [[nodiscard]] std::size_t indexOf(const std::vector<std::int64_t>& coords) const;

    /// q(gamma) in [0, 1).
    [[nodiscard]] const Rational& q(std::size_t gamma) const { return qValues_[gamma]; }
    /// b(gamma, delta) in [0, 1).
    [[nodiscard]] Rational b(std::size_t gamma, std::size_t delta) const;

    [[nodiscard]] std::size_t negate(std::size_t gamma) const { return negation_[gamma]; }
    [[nodiscard]] std::size_t add(std::size_t gamma, std::size_t delta) const;
    [[nodiscard]] std::size_t scale(std::size_t gamma, std::int64_t k) const;
    [[nodiscard]] std::int64_t elementOrder(std::size_t gamma) const;

    /// min(gamma, -gamma) in element order; the canonical orbit label.
    [[nodiscard]] std::size_t orbitRepresentative(std::size_t gamma) const {
        return std::min(gamma, negation_[gamma]);
    }
    /// Orbit representatives in increasing order.
    [[nodiscard]] std::vector<std::size_t> orbitRepresentatives() const;
    [[nodiscard]] std::size_t orbitSize(std::size_t gamma) const {
        return negation_[gamma] == gamma ? 1 : 2;
    }

    /// Cyclic Z/2N with q(gamma) = gamma^2 / 4N in this element order.
    [[nodiscard]] bool isCyclicModularCurveForm(std::int64_t& indexN) const;

    [[nodiscard]] std::string elementLabel(std::size_t gamma) const;

    friend bool operator==(const FiniteQuadraticModule& a, const FiniteQuadraticModule& b) {
        return a.divisors_ == b.divisors_ && a.qValues_ == b.qValues_;
    }

  private:
    std::vector<std::int64_t> divisors_;
    RationalMatrix dualGram_;
    std::size_t size_ = 1;
    std::vector<Rational> qValues_;
    std::vector<std::size_t> negation_;
};

/// Smith-normal-form presentation of M'/M.
FiniteQuadraticModule discriminantForm(const Lattice& lat);

/// Smallest N with N b(g, d) and N q(g) integral for all g, d.
std::int64_t level(const FiniteQuadraticModule& fqm);

/// Cyclotomic order that contains every Weil-representation entry and phase:
/// lcm(48, 4 |M'/M|, level).
std::int64_t ambientOrder(const FiniteQuadraticModule& fqm);

/// s mod 8 with sum_gamma e(q(gamma)) = sqrt|M'/M| e(s/8), computed exactly.
int signatureMod8(const FiniteQuadraticModule& fqm);

// --- catalog -------------------------------------------------------------

IntMatrix hyperbolicPlane();
IntMatrix e8Negative();

Lattice modularCurveLattice(std::int64_t n);
Lattice hilbertLattice(std::int64_t d);
Lattice unimodular226();
Lattice siegelLattice(std::int64_t n);
Lattice shiftedLattice(std::int64_t n);

/// Looks up a catalog lattice by name ("modularCurve", "hilbert",
/// "unimodular226", "siegel", "shifted"); InputError on bad names or params.
Lattice catalog(const std::string& name, const std::vector<std::int64_t>& params);

} // namespace vvmf
