#pragma once

#include "vvmf/rational.hpp"

#include <map>
#include <optional>

namespace vvmf {

/// Truncated formal series sum c_n q^n with rational exponents and
/// coefficients. Every stored exponent lies in one coset r + Z, and only
/// exponents n <= truncation() are stored and trusted.
class SparseSeries {
  public:
    using Terms = std::map<Rational, Rational>;

    /// Empty series trusted up to `truncation`.
    explicit SparseSeries(Rational truncation = Rational(0));
    SparseSeries(Terms terms, Rational truncation);

    /// 1 + O(q^(trunc+1)).
    static SparseSeries one(const Rational& truncation);
    /// q^n, trusted up to `truncation`.
    static SparseSeries monomial(const Rational& exponent, const Rational& coefficient,
                                 const Rational& truncation);

    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
    [[nodiscard]] const Rational& truncation() const noexcept { return truncation_; }
    [[nodiscard]] bool isZero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::optional<Rational> lowestExponent() const;

    /// Coefficient of q^n; PrecisionError when n lies beyond the truncation.
    [[nodiscard]] Rational coefficient(const Rational& n) const;

    /// Copy with a lower truncation; terms above it are dropped.
    [[nodiscard]] SparseSeries truncated(const Rational& truncation) const;

    SparseSeries& operator+=(const SparseSeries& rhs);
    SparseSeries& operator-=(const SparseSeries& rhs);
    SparseSeries& operator*=(const Rational& s);

    friend SparseSeries operator+(SparseSeries a, const SparseSeries& b) { return a += b; }
    friend SparseSeries operator-(SparseSeries a, const SparseSeries& b) { return a -= b; }
    friend SparseSeries operator*(SparseSeries a, const Rational& s) { return a *= s; }
    friend bool operator==(const SparseSeries& a, const SparseSeries& b) {
        return a.truncation_ == b.truncation_ && a.terms_ == b.terms_;
    }

  private:
    Terms terms_;
    Rational truncation_;

    void checkCoset() const;
};

/// Cauchy product. A factor with lowest exponent v and truncation T is known
/// modulo q^(>T), so the product is trusted up to
/// min(v_a + T_b, v_b + T_a).
SparseSeries seriesMultiply(const SparseSeries& a, const SparseSeries& b);

/// a^n by repeated multiplication (n >= 0).
SparseSeries seriesPow(const SparseSeries& a, unsigned n);

} // namespace vvmf
