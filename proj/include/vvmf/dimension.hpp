#pragma once

#include "vvmf/weilrep.hpp"

#include <map>

namespace vvmf {

/// Eigenvalues e(beta) of a finite-order matrix, beta in [0, 1), with multiplicities.
struct EigenvalueProfile {
    std::int64_t order = 1;
    std::map<Rational, std::int64_t> multiplicities;
};

/// Least m >= 1 with x^m = I. Throws InternalError past `cap`.
std::int64_t matrixOrder(const CycloMatrix& x, std::int64_t cap);

EigenvalueProfile eigenvalueProfile(const CycloMatrix& x, std::int64_t cap);

/// Sum of the betas. Pass inverse = true for alpha(x^-1) from the profile of x.
Rational alpha(const EigenvalueProfile& profile, bool inverse = false);
Rational alpha(const CycloMatrix& x, std::int64_t cap);

/// The subrepresentation of rho (or rho*) on which Z acts by e^(-pi i k).
/// Basis vectors are e_g + e_-g (symmetric) or e_g - e_-g (antisymmetric)
/// for the listed representatives g.
struct ZEigenspace {
    std::vector<std::size_t> representatives;
    bool antisymmetric = false;
    CycloMatrix s, t;
};

ZEigenspace zEigenspace(const WeilRepresentation& weil, const Rational& weight, bool dual);

/// Checks that 2k is an integer; throws InputError otherwise.
void requireHalfInteger(const Rational& weight);

/// Dimension of holomorphic forms of weight k for rho (dual = false) or rho* (dual = true).
/// Weights below 2 are an UnsupportedError.
std::int64_t dimHolModForm(const WeilRepresentation& weil, const Rational& weight, bool dual = true);
std::int64_t dimHolModForm(const Lattice& lattice, const Rational& weight, bool dual = true);

} // namespace vvmf
