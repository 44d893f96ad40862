#pragma once

#include "vvmf/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace vvmf {

using RationalVector = std::vector<Rational>;
using IntegerVector = std::vector<Integer>;

/// Dense row-major matrix over Q.
class RationalMatrix {
  public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    explicit RationalMatrix(const std::vector<RationalVector>& rows);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] RationalVector row(std::size_t i) const;
    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct Echelon {
    RationalMatrix reduced;           // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;  // pivot column of each row
};

/// Gauss-Jordan elimination over Q.
Echelon rowReduce(RationalMatrix m);

std::size_t rank(const RationalMatrix& m);

/// Basis of {x : m x = 0}, one vector per free column, with x_free = 1.
std::vector<RationalVector> kernelBasis(const RationalMatrix& m);

struct AffineSolution {
    /// A solution of a x = b (free variables set to 0), when consistent.
    std::optional<RationalVector> solution;
    /// Otherwise a row combination y with y a = 0 and y b = 1.
    RationalVector witness;
};

AffineSolution solveAffine(const RationalMatrix& a, const RationalVector& b);

/// Inverse of a square matrix; InputError if singular.
RationalMatrix inverse(const RationalMatrix& m);

/// Z-basis of the saturated lattice {x in Z^n : m x = 0}, returned in
/// row Hermite normal form (canonical for the lattice).
std::vector<IntegerVector> integerKernel(const RationalMatrix& m);

/// Row Hermite normal form of the lattice spanned by `rows`: positive pivots,
/// entries above each pivot reduced into [0, pivot), zero rows dropped.
std::vector<IntegerVector> hermiteForm(std::vector<IntegerVector> rows);

/// Divides out the gcd of the entries and makes the first nonzero entry positive.
IntegerVector primitive(IntegerVector v);

/// Scales a rational vector to a primitive integer vector.
IntegerVector clearDenominators(const RationalVector& v);

} // namespace vvmf
