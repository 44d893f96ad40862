#pragma once

#include "vvmf/rational.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace vvmf {

class CyclotomicNumber;

/// The field Q(zeta_L) for a fixed order L.
///
/// Elements are stored on the basis of powers zeta_L^k whose exponent k has,
/// for every prime p with p^e || L, an admissible top base-p digit of
/// (k mod p^e): any nonzero digit for odd p, digit 0 for p = 2. There are
/// exactly phi(L) such exponents, and every element has a unique expansion on
/// them, so equality is coefficientwise.
class CyclotomicField {
  public:
    struct PrimePower {
        std::int64_t prime;
        std::int64_t power;     // p^e
        std::int64_t topWeight; // p^(e-1)
    };

    /// Shared, immutable instance for order L (thread-safe).
    static const CyclotomicField& get(std::int64_t order);

    [[nodiscard]] std::int64_t order() const noexcept { return order_; }
    [[nodiscard]] const std::vector<PrimePower>& primePowers() const noexcept { return primes_; }
    [[nodiscard]] bool isBasisExponent(std::int64_t k) const;
    [[nodiscard]] std::int64_t degree() const; // phi(L)

    [[nodiscard]] CyclotomicNumber zero() const;
    [[nodiscard]] CyclotomicNumber one() const;
    [[nodiscard]] CyclotomicNumber fromRational(const Rational& r) const;

    /// e^(2 pi i numerator/denominator). Throws ConfigurationError if the
    /// denominator does not divide L.
    [[nodiscard]] CyclotomicNumber rootOfUnity(std::int64_t numerator,
                                               std::int64_t denominator) const;

    /// The positive square root of D, built from the quadratic Gauss sum
    /// sum_{x mod 4D} zeta_{4D}^{x^2} = 2 (1 + i) sqrt(D). Requires 4D | L.
    [[nodiscard]] CyclotomicNumber sqrtDiscriminant(std::int64_t d) const;

    explicit CyclotomicField(std::int64_t order);

  private:
    std::int64_t order_;
    std::vector<PrimePower> primes_;
};

/// Exact element of Q(zeta_L): sum of coeff * zeta_L^exponent on the
/// canonical basis of its field.
class CyclotomicNumber {
  public:
    using Term = std::pair<std::int64_t, Rational>;

    CyclotomicNumber() = default; // detached zero; adopts the field of the other operand
    CyclotomicNumber(const CyclotomicField& field, std::vector<Term> terms);

    [[nodiscard]] const CyclotomicField* field() const noexcept { return field_; }
    [[nodiscard]] std::int64_t order() const noexcept;
    [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }

    [[nodiscard]] bool isZero() const noexcept { return terms_.empty(); }
    [[nodiscard]] bool isOne() const;
    [[nodiscard]] bool isRational() const;
    /// Throws InternalError unless isRational().
    [[nodiscard]] Rational toRational() const;

    /// Complex conjugate (zeta -> zeta^-1).
    [[nodiscard]] CyclotomicNumber conj() const;
    [[nodiscard]] CyclotomicNumber pow(std::uint64_t n) const;

    /// Complex embedding zeta_L -> e^(2 pi i/L); display only.
    [[nodiscard]] std::complex<double> toComplex() const;
    [[nodiscard]] std::string toString() const;

    CyclotomicNumber& operator+=(const CyclotomicNumber& rhs);
    CyclotomicNumber& operator-=(const CyclotomicNumber& rhs);
    CyclotomicNumber& operator*=(const CyclotomicNumber& rhs);
    CyclotomicNumber& operator*=(const Rational& rhs);

    friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
    friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
    friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b);
    friend CyclotomicNumber operator*(CyclotomicNumber a, const Rational& b) { return a *= b; }
    friend CyclotomicNumber operator*(const Rational& a, CyclotomicNumber b) { return b *= a; }
    friend CyclotomicNumber operator-(CyclotomicNumber a);
    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);

  private:
    const CyclotomicField* field_ = nullptr;
    std::vector<Term> terms_;

    void adoptField(const CyclotomicNumber& other);
};

/// Reduces an arbitrary list of (exponent, coefficient) terms to canonical form.
std::vector<CyclotomicNumber::Term> canonicalize(const CyclotomicField& field,
                                                 std::vector<CyclotomicNumber::Term> terms);

/// Dense square matrix over Q(zeta_L).
class CycloMatrix {
  public:
    CycloMatrix() = default;
    CycloMatrix(const CyclotomicField& field, std::size_t n);

    static CycloMatrix identity(const CyclotomicField& field, std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] const CyclotomicField& field() const noexcept { return *field_; }

    CyclotomicNumber& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const CyclotomicNumber& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    [[nodiscard]] CycloMatrix transpose() const;
    [[nodiscard]] CycloMatrix conjTranspose() const;
    [[nodiscard]] CyclotomicNumber trace() const;
    [[nodiscard]] bool isIdentity() const;
    [[nodiscard]] bool isDiagonal() const;
    [[nodiscard]] CycloMatrix pow(std::uint64_t e) const;

    friend CycloMatrix operator*(const CycloMatrix& a, const CycloMatrix& b);
    friend CycloMatrix operator*(const CyclotomicNumber& s, const CycloMatrix& m);
    friend bool operator==(const CycloMatrix& a, const CycloMatrix& b);

  private:
    const CyclotomicField* field_ = nullptr;
    std::size_t n_ = 0;
    std::vector<CyclotomicNumber> data_;
};

} // namespace vvmf
