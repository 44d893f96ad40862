#include "vvmf/obstruct.hpp"

#include "vvmf/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

namespace vvmf {

void PrincipalPart::set(std::size_t gamma, const Rational& n, const Rational& coefficient) {
    if (gamma >= fqm_.order())
        throw InputError("class index " + std::to_string(gamma) + " out of range");
    if (n > 0)
        throw InputError("principal part exponent " + toString(n) + " is positive");
    if (!congruentMod1(n, fqm_.q(gamma)))
        throw InputError("exponent " + toString(n) + " is not congruent to q(" + fqm_.elementLabel(gamma) +
                         ") = " + toString(fqm_.q(gamma)) + " mod 1");
    const Key key{fqm_.orbitRepresentative(gamma), n};
    if (coefficient == 0)
        terms_.erase(key);
    else
        terms_[key] = coefficient;
}

Rational PrincipalPart::get(std::size_t gamma, const Rational& n) const {
    const auto it = terms_.find({fqm_.orbitRepresentative(gamma), n});
    return it == terms_.end() ? Rational(0) : it->second;
}

bool PrincipalPart::isIntegral() const {
    for (const auto& [key, c] : terms_)
        if (!isInteger(c))
            return false;
    return true;
}

bool PrincipalPart::hasConstantTerms() const {
    for (const auto& [key, c] : terms_)
        if (key.second == 0)
            return true;
    return false;
}

Rational PrincipalPart::depth() const {
    Rational d = 0;
    for (const auto& [key, c] : terms_)
        d = std::max(d, Rational(-key.second));
    return d;
}

PrincipalPart& PrincipalPart::operator+=(const PrincipalPart& rhs) {
    if (!(fqm_ == rhs.fqm_))
        throw InputError("principal parts over different discriminant forms");
    for (const auto& [key, c] : rhs.terms_) {
        auto& slot = terms_[key];
        slot += c;
        if (slot == 0)
            terms_.erase(key);
    }
    return *this;
}

PrincipalPart& PrincipalPart::operator*=(const Rational& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, c] : terms_)
        c *= s;
    return *this;
}

Rational pair(const FormExpansion& g, const PrincipalPart& phi) {
    if (!(g.fqm == phi.fqm()))
        throw InputError("form and principal part live on different discriminant forms");
    if (phi.depth() > g.truncation)
        throw PrecisionError("basis truncation " + toString(g.truncation) + " is below the principal part depth " +
                             toString(phi.depth()));
    Rational sum = 0;
    for (const auto& [key, c] : phi.terms()) {
        const auto& [gamma, n] = key;
        sum += c * g.coefficient(gamma, -n) * static_cast<long>(phi.fqm().orbitSize(gamma));
    }
    return sum;
}

Realizability isRealizable(const PrincipalPart& phi, const std::vector<FormExpansion>& basis) {
    Realizability out;
    for (const auto& g : basis) {
        out.residuals.push_back(pair(g, phi));
        if (out.residuals.back() != 0)
            out.realizable = false;
    }
    return out;
}

ConstantTermSolution solveConstantTerms(const PrincipalPart& singular, const std::vector<FormExpansion>& basis) {
    if (singular.hasConstantTerms())
        throw InputError("solveConstantTerms expects only singular (n < 0) terms");
    const auto& fqm = singular.fqm();
    std::vector<std::size_t> isotropic;
    for (auto g : fqm.orbitRepresentatives())
        if (fqm.q(g) == 0)
            isotropic.push_back(g);

    RationalMatrix a(basis.size(), isotropic.size());
    RationalVector rhs(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < isotropic.size(); ++j)
            a(i, j) = basis[i].coefficient(isotropic[j], 0) * static_cast<long>(fqm.orbitSize(isotropic[j]));
        rhs[i] = -pair(basis[i], singular);
    }
    ConstantTermSolution out;
    if (basis.empty()) {
        out.completed = singular;
        return out;
    }
    const auto sol = solveAffine(a, rhs);
    if (!sol.solution) {
        out.witness = sol.witness;
        return out;
    }
    PrincipalPart completed = singular;
    for (std::size_t j = 0; j < isotropic.size(); ++j)
        completed.set(isotropic[j], 0, (*sol.solution)[j]);
    out.completed = std::move(completed);
    return out;
}

std::string basisFingerprint(const std::vector<FormExpansion>& basis) {
    std::uint64_t h = 1469598103934665603ULL;
    const auto feed = [&](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 1099511628211ULL;
        }
    };
    for (const auto& f : basis) {
        feed("[" + toString(f.weight) + "|" + toString(f.truncation));
        for (const auto& [key, c] : f.coefficients)
            feed(";" + std::to_string(key.first) + ":" + toString(key.second) + "=" + toString(c));
        feed("]");
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Integer primitiveMultiplicity(const PrincipalPart& phi, const Rational& n0, std::size_t gamma0) {
    if (n0 >= 0)
        throw InputError("primitive multiplicity needs negative norm, got n0 = " + toString(n0));
    if (!congruentMod1(n0, phi.fqm().q(gamma0)))
        throw InputError("n0 is not congruent to q(gamma0) mod 1");
    const Rational depth = phi.depth();
    Rational sum = 0;
    for (std::int64_t x = 1; -n0 * (x * x) <= depth; ++x)
        sum += phi.get(phi.fqm().scale(gamma0, x), n0 * (x * x));
    if (!isInteger(sum))
        throw InputError("primitive multiplicity of a non-integral principal part");
    return sum.get_num();
}

RelationCertificate certify(const PrincipalPart& phi, const std::vector<FormExpansion>& basis) {
    if (!phi.isIntegral())
        throw InputError("certificates need integral principal parts");
    const auto r = isRealizable(phi, basis);
    if (!r.realizable) {
        std::string list;
        for (const auto& x : r.residuals)
            list += (list.empty() ? "" : ", ") + toString(x);
        throw InputError("principal part is not realizable; pairing residuals [" + list + "]");
    }
    RelationCertificate cert{phi, phi.get(0, 0) / 2, {}, r.residuals, basisFingerprint(basis), {}};
    for (const auto& [key, c] : phi.terms()) {
        if (key.second >= 0)
            continue;
        cert.divisor.push_back({key.second, key.first, c.get_num()});
        cert.audit.push_back({key.second, key.first, primitiveMultiplicity(phi, key.second, key.first)});
    }
    return cert;
}

RelationLattice relationLattice(const FiniteQuadraticModule& fqm, const std::vector<FormExpansion>& basis,
                                std::int64_t truncation) {
    if (truncation < 0)
        throw InputError("relation truncation must be nonnegative");
    for (const auto& g : basis)
        if (Rational(truncation) > g.truncation)
            throw PrecisionError("relation truncation " + std::to_string(truncation) + " exceeds basis truncation " +
                                 toString(g.truncation));
    RelationLattice out;
    out.rankBound = basis.size();
    const auto reps = fqm.orbitRepresentatives();
    for (auto g : reps) {
        // largest n <= 0 with n = q(g) mod 1, then step down
        for (Rational n = -fracPart(-fqm.q(g)); n >= -truncation; n -= 1)
            out.coordinates.emplace_back(g, n);
    }
    std::sort(out.coordinates.begin(), out.coordinates.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second < b.second : a.first < b.first;
    });

    const auto cols = out.coordinates.size();
    if (basis.empty()) {
        for (std::size_t j = 0; j < cols; ++j) {
            IntegerVector e(cols);
            e[j] = 1;
            out.relations.push_back(std::move(e));
        }
    } else {
        RationalMatrix m(basis.size(), cols);
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                const auto& [g, n] = out.coordinates[j];
                m(i, j) = basis[i].coefficient(g, -n) * static_cast<long>(fqm.orbitSize(g));
            }
        out.relations = integerKernel(m);
    }
    for (const auto& rel : out.relations)
        if (!isRealizable(relationToPrincipalPart(out, rel, fqm), basis).realizable)
            throw InternalError("relation lattice vector failed the pairing check");
    return out;
}

PrincipalPart relationToPrincipalPart(const RelationLattice& lattice, const IntegerVector& relation,
                                      const FiniteQuadraticModule& fqm) {
    if (relation.size() != lattice.coordinates.size())
        throw InputError("relation length does not match the coordinates");
    PrincipalPart phi(fqm);
    for (std::size_t j = 0; j < relation.size(); ++j)
        phi.set(lattice.coordinates[j].first, lattice.coordinates[j].second, Rational(relation[j]));
    return phi;
}

std::vector<HeegnerPoint> heegnerPoints(std::int64_t level, const Rational& n, std::int64_t gamma,
                                        std::int64_t bound) {
    if (level < 1)
        throw InputError("level must be positive");
    if (bound < 0)
        throw InputError("bound must be nonnegative");
    const Rational disc = n * (4 * level);
    if (!isInteger(disc) || disc >= 0)
        throw InputError("4Nn must be a negative integer, got " + toString(disc));
    const auto d = toInt64(disc);
    const auto modulus = 2 * level;

    // sqrt(-d) = square * radicand with radicand squarefree
    std::int64_t radicand = -d, square = 1;
    for (std::int64_t p = 2; p * p <= radicand; ++p)
        while (radicand % (p * p) == 0) {
            radicand /= p * p;
            square *= p;
        }

    std::vector<HeegnerPoint> out;
    for (std::int64_t a = -bound; a <= bound; ++a) {
        if (a == 0 || a % level != 0)
            continue;
        for (std::int64_t b = -bound; b <= bound; ++b) {
            if (mod64(b - gamma, modulus) != 0)
                continue;
            const auto num = b * b - d; // = 4ac
            if (num % (4 * a) != 0)
                continue;
            const auto c = num / (4 * a);
            if (std::abs(c) > bound)
                continue;
            out.push_back({a, b, c, makeRational(-b, 2 * a), makeRational(square, 2 * std::abs(a)), radicand});
        }
    }
    return out;
}

} // namespace vvmf
