#pragma once

#include "vvmf/cyclotomic.hpp"
#include "vvmf/lattice.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace vvmf {

enum class Generator { S, T, SInverse, TInverse };

using Word = std::vector<Generator>;

/// Parses a word over {S, T, s, t} where lower case denotes the inverse.
/// Whitespace is ignored; anything else is an InputError.
Word parseWord(std::string_view text);
std::string formatWord(const Word& word);

/// Image of a word under rho_M (dual = false) or its dual rho_M^* (dual = true).
struct WeilMatrix {
    Word word;
    bool dual = false;
    CycloMatrix matrix;
};

/// One matrix entry written as scale * e^(2 pi i phase), for exact dumps.
struct SymbolicEntry {
    bool zero = true;
    Rational phase;              // in [0, 1)
    std::int64_t sqrtDenominator = 1; // entry carries a factor 1/sqrt(sqrtDenominator)
};

/// The Weil representation of Mp2(Z) on C[M'/M].
///
/// rho(T) e_g = e(q(g)) e_g,
/// rho(S) e_g = sqrt(i)^(b- - b+) / sqrt|M'/M| sum_d e(-b(g, d)) e_d,
/// with matrices indexed (row = output element, column = input element) in
/// the element order of the discriminant form. The dual representation is
/// the inverse transpose, i.e. the entrywise conjugate since rho is unitary.
/// Generator matrices are computed once and shared read-only.
class WeilRepresentation {
  public:
    WeilRepresentation(FiniteQuadraticModule fqm, Signature signature);

    [[nodiscard]] const FiniteQuadraticModule& fqm() const noexcept { return fqm_; }
    [[nodiscard]] Signature signature() const noexcept { return signature_; }
    [[nodiscard]] const CyclotomicField& field() const noexcept { return *field_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return fqm_.order(); }
    /// b- - b+
    [[nodiscard]] int signatureDefect() const noexcept { return signature_.minus - signature_.plus; }

    [[nodiscard]] const CycloMatrix& rhoS(bool dual = false) const { return dual ? sDual_ : s_; }
    [[nodiscard]] const CycloMatrix& rhoT(bool dual = false) const { return dual ? tDual_ : t_; }
    /// rho(Z) e_g = i^(b- - b+) e_{-g}, built from the formula (not from S^2).
    [[nodiscard]] CycloMatrix rhoZ(bool dual = false) const;

    [[nodiscard]] const CycloMatrix& generator(Generator g, bool dual) const;
    [[nodiscard]] WeilMatrix evaluate(const Word& word, bool dual = false) const;

    [[nodiscard]] SymbolicEntry symbolicS(std::size_t row, std::size_t col, bool dual = false) const;
    [[nodiscard]] SymbolicEntry symbolicT(std::size_t row, std::size_t col, bool dual = false) const;
    [[nodiscard]] SymbolicEntry symbolicZ(std::size_t row, std::size_t col, bool dual = false) const;

  private:
    FiniteQuadraticModule fqm_;
    Signature signature_;
    const CyclotomicField* field_;
    CycloMatrix s_, t_, sInv_, tInv_;
    CycloMatrix sDual_, tDual_, sInvDual_, tInvDual_;
};

/// Free-function forms of the generator images.
WeilMatrix rhoT(const FiniteQuadraticModule& fqm, Signature signature);
WeilMatrix rhoS(const FiniteQuadraticModule& fqm, Signature signature);
WeilMatrix evaluateWord(const FiniteQuadraticModule& fqm, Signature signature, const Word& word,
                        bool dual);

/// Entrywise conjugate.
CycloMatrix conjugate(const CycloMatrix& m);

} // namespace vvmf
