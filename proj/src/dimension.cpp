#include "vvmf/dimension.hpp"

#include "vvmf/errors.hpp"

namespace vvmf {

std::int64_t matrixOrder(const CycloMatrix& x, std::int64_t cap) {
    CycloMatrix p = x;
    for (std::int64_t m = 1; m <= cap; ++m) {
        if (p.isIdentity())
            return m;
        p = p * x;
    }
    throw InternalError("matrix order exceeds cap " + std::to_string(cap));
}

EigenvalueProfile eigenvalueProfile(const CycloMatrix& x, std::int64_t cap) {
    const auto& f = x.field();
    EigenvalueProfile out;
    out.order = matrixOrder(x, cap);
    const auto m = out.order;
    if (f.order() % m != 0)
        throw InternalError("matrix order " + std::to_string(m) + " does not divide the field order");

    std::vector<CyclotomicNumber> traces;
    traces.reserve(static_cast<std::size_t>(m));
    CycloMatrix p = CycloMatrix::identity(f, x.size());
    for (std::int64_t t = 0; t < m; ++t) {
        traces.push_back(p.trace());
        p = p * x;
    }
    std::int64_t total = 0;
    for (std::int64_t j = 0; j < m; ++j) {
        auto sum = f.zero();
        for (std::int64_t t = 0; t < m; ++t)
            if (!traces[t].isZero())
                sum += traces[t] * f.rootOfUnity(-j * t, m);
        if (!sum.isRational())
            throw InternalError("eigenvalue multiplicity is not rational");
        const Rational mult = sum.toRational() / static_cast<long>(m);
        if (!isInteger(mult) || mult < 0)
            throw InternalError("eigenvalue multiplicity " + toString(mult) + " is not a nonnegative integer");
        if (mult != 0)
            out.multiplicities[makeRational(j, m)] = toInt64(mult);
        total += toInt64(mult);
    }
    if (total != static_cast<std::int64_t>(x.size()))
        throw InternalError("eigenvalue multiplicities do not sum to the dimension");
    return out;
}

Rational alpha(const EigenvalueProfile& profile, bool inverse) {
    Rational sum = 0;
    for (const auto& [beta, mult] : profile.multiplicities)
        sum += (inverse ? fracPart(-beta) : beta) * static_cast<long>(mult);
    return sum;
}

Rational alpha(const CycloMatrix& x, std::int64_t cap) {
    return alpha(eigenvalueProfile(x, cap));
}

void requireHalfInteger(const Rational& weight) {
    if (!isInteger(weight * 2))
        throw InputError("weight " + toString(weight) + " is not a half-integer");
}

ZEigenspace zEigenspace(const WeilRepresentation& weil, const Rational& weight, bool dual) {
    requireHalfInteger(weight);
    const auto& fqm = weil.fqm();
    // Z e_g = c e_-g, so e_g +- e_-g has eigenvalue +-c
    const Rational c = fracPart(makeRational(dual ? -weil.signatureDefect() : weil.signatureDefect(), 4));
    const Rational target = fracPart(-weight / 2);

    ZEigenspace out;
    if (c == target) {
        out.antisymmetric = false;
    } else if (fracPart(c + makeRational(1, 2)) == target) {
        out.antisymmetric = true;
    } else {
        out.s = CycloMatrix(weil.field(), 0);
        out.t = CycloMatrix(weil.field(), 0);
        return out;
    }
    for (auto g : fqm.orbitRepresentatives())
        if (!out.antisymmetric || fqm.negate(g) != g)
            out.representatives.push_back(g);

    const auto n = out.representatives.size();
    const auto restrict = [&](const CycloMatrix& full) {
        CycloMatrix r(weil.field(), n);
        for (std::size_t j = 0; j < n; ++j) {
            const auto g = out.representatives[j];
            const auto ng = fqm.negate(g);
            for (std::size_t i = 0; i < n; ++i) {
                const auto row = out.representatives[i];
                auto v = full(row, g);
                if (ng != g) {
                    if (out.antisymmetric)
                        v -= full(row, ng);
                    else
                        v += full(row, ng);
                }
                r(i, j) = v;
            }
        }
        return r;
    };
    out.s = restrict(weil.rhoS(dual));
    out.t = restrict(weil.rhoT(dual));
    return out;
}

std::int64_t dimHolModForm(const WeilRepresentation& weil, const Rational& weight, bool dual) {
    requireHalfInteger(weight);
    if (weight < 2)
        throw UnsupportedError("dimension formula requires weight >= 2; got " + toString(weight) +
                               ", use the constructive basis instead");
    const auto sub = zEigenspace(weil, weight, dual);
    const auto d = static_cast<long>(sub.representatives.size());
    if (d == 0)
        return 0;

    const auto& f = weil.field();
    const auto twiceK = toInt64(weight * 2);
    const std::int64_t cap = 16 * 12 * level(weil.fqm());
    // e^(pi i k / 2) = e(2k / 8), e^(pi i k / 3) = e(2k / 12)
    const auto x1 = f.rootOfUnity(twiceK, 8) * sub.s;
    const auto x2 = f.rootOfUnity(twiceK, 12) * (sub.s * sub.t);

    const Rational dim = Rational(d) + Rational(d) * weight / 12 - alpha(eigenvalueProfile(x1, cap)) -
                         alpha(eigenvalueProfile(x2, cap), true) - alpha(eigenvalueProfile(sub.t, cap));
    if (!isInteger(dim))
        throw InternalError("dimension formula produced non-integer " + toString(dim));
    if (dim < 0)
        throw InternalError("dimension formula produced negative " + toString(dim));
    return toInt64(dim);
}

std::int64_t dimHolModForm(const Lattice& lattice, const Rational& weight, bool dual) {
    return dimHolModForm(WeilRepresentation(discriminantForm(lattice), lattice.signature()), weight, dual);
}

} // namespace vvmf
