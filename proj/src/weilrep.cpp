#include "vvmf/weilrep.hpp"

#include "vvmf/errors.hpp"

#include <cctype>

namespace vvmf {

Word parseWord(std::string_view text) {
    Word w;
    for (char c : text) {
        switch (c) {
        case 'S': w.push_back(Generator::S); break;
        case 'T': w.push_back(Generator::T); break;
        case 's': w.push_back(Generator::SInverse); break;
        case 't': w.push_back(Generator::TInverse); break;
        default:
            if (!std::isspace(static_cast<unsigned char>(c)))
                throw InputError(std::string("invalid generator '") + c + "' in word (use S, T, s, t)");
        }
    }
    return w;
}

std::string formatWord(const Word& word) {
    std::string s;
    for (auto g : word) {
        switch (g) {
        case Generator::S: s += 'S'; break;
        case Generator::T: s += 'T'; break;
        case Generator::SInverse: s += 's'; break;
        case Generator::TInverse: s += 't'; break;
        }
    }
    return s;
}

CycloMatrix conjugate(const CycloMatrix& m) {
    CycloMatrix out(m.field(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            out(i, j) = m(i, j).conj();
    return out;
}

namespace {

std::int64_t phaseExponent(const Rational& phase, std::int64_t order) {
    return toInt64(fracPart(phase) * static_cast<long>(order));
}

} // namespace

WeilRepresentation::WeilRepresentation(FiniteQuadraticModule fqm, Signature signature)
    : fqm_(std::move(fqm)), signature_(signature),
      field_(&CyclotomicField::get(ambientOrder(fqm_))) {
    const auto n = fqm_.order();
    const auto L = field_->order();
    t_ = CycloMatrix(*field_, n);
    for (std::size_t g = 0; g < n; ++g)
        t_(g, g) = field_->rootOfUnity(phaseExponent(fqm_.q(g), L), L);

    const auto d = static_cast<std::int64_t>(n);
    // sqrt(i)^(b- - b+) / sqrt(D) = zeta_8^(b- - b+) sqrt(D) / D
    const auto scale = field_->rootOfUnity(signatureDefect(), 8) * field_->sqrtDiscriminant(d) *
                       makeRational(1, d);
    s_ = CycloMatrix(*field_, n);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t delta = 0; delta < n; ++delta)
            s_(delta, g) = scale * field_->rootOfUnity(-phaseExponent(fqm_.b(g, delta), L), L);

    sInv_ = s_.conjTranspose();
    tInv_ = t_.conjTranspose();
    sDual_ = conjugate(s_);
    tDual_ = conjugate(t_);
    sInvDual_ = conjugate(sInv_);
    tInvDual_ = conjugate(tInv_);
}

CycloMatrix WeilRepresentation::rhoZ(bool dual) const {
    const auto n = fqm_.order();
    CycloMatrix z(*field_, n);
    const auto phase = field_->rootOfUnity(signatureDefect(), 4);
    for (std::size_t g = 0; g < n; ++g)
        z(fqm_.negate(g), g) = dual ? phase.conj() : phase;
    return z;
}

const CycloMatrix& WeilRepresentation::generator(Generator g, bool dual) const {
    switch (g) {
    case Generator::S: return dual ? sDual_ : s_;
    case Generator::T: return dual ? tDual_ : t_;
    case Generator::SInverse: return dual ? sInvDual_ : sInv_;
    case Generator::TInverse: return dual ? tInvDual_ : tInv_;
    }
    throw InternalError("unknown generator");
}

WeilMatrix WeilRepresentation::evaluate(const Word& word, bool dual) const {
    CycloMatrix m = CycloMatrix::identity(*field_, fqm_.order());
    for (auto g : word)
        m = m * generator(g, dual);
    return {word, dual, std::move(m)};
}

SymbolicEntry WeilRepresentation::symbolicS(std::size_t row, std::size_t col, bool dual) const {
    SymbolicEntry e;
    e.zero = false;
    Rational phase = makeRational(signatureDefect(), 8) - fqm_.b(col, row);
    e.phase = fracPart(dual ? -phase : phase);
    e.sqrtDenominator = static_cast<std::int64_t>(fqm_.order());
    return e;
}

SymbolicEntry WeilRepresentation::symbolicT(std::size_t row, std::size_t col, bool dual) const {
    SymbolicEntry e;
    if (row != col)
        return e;
    e.zero = false;
    e.phase = fracPart(dual ? -fqm_.q(row) : fqm_.q(row));
    return e;
}

SymbolicEntry WeilRepresentation::symbolicZ(std::size_t row, std::size_t col, bool dual) const {
    SymbolicEntry e;
    if (row != fqm_.negate(col))
        return e;
    e.zero = false;
    const Rational phase = makeRational(signatureDefect(), 4);
    e.phase = fracPart(dual ? -phase : phase);
    return e;
}

WeilMatrix rhoT(const FiniteQuadraticModule& fqm, Signature signature) {
    return WeilRepresentation(fqm, signature).evaluate({Generator::T});
}

WeilMatrix rhoS(const FiniteQuadraticModule& fqm, Signature signature) {
    return WeilRepresentation(fqm, signature).evaluate({Generator::S});
}

WeilMatrix evaluateWord(const FiniteQuadraticModule& fqm, Signature signature, const Word& word,
                        bool dual) {
    return WeilRepresentation(fqm, signature).evaluate(word, dual);
}

} // namespace vvmf
