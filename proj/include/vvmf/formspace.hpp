#pragma once

#include "vvmf/lattice.hpp"
#include "vvmf/series.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vvmf {

/// Exact Bernoulli number B_n (B_1 = -1/2).
Rational bernoulli(unsigned n);

/// E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n up to q^prec; k even >= 4.
SparseSeries eisenstein(std::int64_t k, std::int64_t prec);

/// Echelon basis of level-1 forms of weight k from the monomials E4^a E6^b.
std::vector<SparseSeries> level1Basis(std::int64_t k, std::int64_t prec);

/// sum c(n, r) q^n zeta^r, trusted for n <= precision.
class JacobiSeries {
  public:
    using Key = std::pair<std::int64_t, std::int64_t>; // (n, r)
    using Terms = std::map<Key, Rational>;

    JacobiSeries(std::int64_t weight, std::int64_t index, std::int64_t precision, Terms terms = {});

    [[nodiscard]] std::int64_t weight() const noexcept { return weight_; }
    [[nodiscard]] std::int64_t index() const noexcept { return index_; }
    [[nodiscard]] std::int64_t precision() const noexcept { return precision_; }
    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
    [[nodiscard]] bool isZero() const noexcept { return terms_.empty(); }

    /// PrecisionError for n > precision.
    [[nodiscard]] Rational coefficient(std::int64_t n, std::int64_t r) const;

    friend bool operator==(const JacobiSeries&, const JacobiSeries&) = default;

  private:
    std::int64_t weight_;
    std::int64_t index_;
    std::int64_t precision_;
    Terms terms_;
};

/// First stored pair violating c(n, r) = c(n + r + N, r + 2N), if any.
std::optional<JacobiSeries::Key> periodicityViolation(const JacobiSeries& phi);

/// phi_{-2,1} and phi_{0,1} up to q^prec.
std::pair<JacobiSeries, JacobiSeries> weakJacobiGenerators(std::int64_t prec);

/// Echelon basis of J_{k,N} (holomorphic Jacobi forms), k even >= 2.
std::vector<JacobiSeries> holomorphicJacobiBasis(std::int64_t k, std::int64_t index, std::int64_t prec);

/// Vector-valued expansion sum c(gamma, n) q^n e_gamma of a form of type rho*.
/// Coefficients are stored once per orbit {gamma, -gamma}, keyed by the
/// orbit representative, and trusted for n <= truncation.
struct FormExpansion {
    Rational weight;
    bool dual = true;
    FiniteQuadraticModule fqm;
    Rational truncation;
    std::map<std::pair<std::size_t, Rational>, Rational> coefficients;

    /// PrecisionError for n > truncation.
    [[nodiscard]] Rational coefficient(std::size_t gamma, const Rational& n) const;
    friend bool operator==(const FormExpansion&, const FormExpansion&) = default;
};

/// Description of the first broken invariant (support congruence,
/// holomorphy, orbit keys), or nothing.
std::optional<std::string> expansionViolation(const FormExpansion& f);

/// h_gamma(tau) with coefficient c(n, r) at gamma = r mod 2N, exponent n - r^2/4N.
FormExpansion thetaDecompose(const JacobiSeries& phi, const FiniteQuadraticModule& fqm);
FormExpansion thetaDecompose(const JacobiSeries& phi, std::int64_t index);

/// max(20, ceil(k/12) * zDimension + 5).
std::int64_t defaultPrecision(const Rational& weight, std::size_t zDimension);

/// Basis of HolModForm(k, rho*) for trivial or cyclic Z/2N (q = g^2/4N)
/// discriminant forms, truncated at q^prec (prec < 0 selects the default).
std::vector<FormExpansion> vvmfBasis(const Lattice& lattice, const Rational& weight, std::int64_t prec = -1);

} // namespace vvmf
