#include "vvmf/formspace.hpp"

#include "vvmf/dimension.hpp"
#include "vvmf/errors.hpp"
#include "vvmf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace vvmf {

Rational bernoulli(unsigned n) {
    static std::mutex mutex;
    static std::vector<Rational> cache{Rational(1)};
    std::lock_guard lock(mutex);
    while (cache.size() <= n) {
        const auto m = static_cast<unsigned long>(cache.size());
        Rational sum = 0;
        Integer binom = 1; // C(m+1, j)
        for (unsigned long j = 0; j < m; ++j) {
            sum += Rational(binom) * cache[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        cache.push_back(-sum / static_cast<long>(m + 1));
    }
    return cache[n];
}

SparseSeries eisenstein(std::int64_t k, std::int64_t prec) {
    if (k < 4 || k % 2 != 0)
        throw InputError("Eisenstein series needs even weight >= 4, got " + std::to_string(k));
    const Rational factor = -Rational(2 * k) / bernoulli(static_cast<unsigned>(k));
    SparseSeries::Terms terms{{Rational(0), Rational(1)}};
    for (std::int64_t n = 1; n <= prec; ++n) {
        Integer sigma = 0;
        for (std::int64_t d = 1; d * d <= n; ++d) {
            if (n % d != 0)
                continue;
            Integer p;
            mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k - 1));
            sigma += p;
            if (d * d != n) {
                mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(n / d), static_cast<unsigned long>(k - 1));
                sigma += p;
            }
        }
        terms.emplace(Rational(n), factor * Rational(sigma));
    }
    return SparseSeries(std::move(terms), Rational(prec));
}

namespace {

// rows of an echelon form of the given series over exponents 0..prec
std::vector<SparseSeries> echelonSeries(const std::vector<SparseSeries>& forms, std::int64_t prec) {
    if (forms.empty())
        return {};
    RationalMatrix m(forms.size(), static_cast<std::size_t>(prec + 1));
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (const auto& [n, c] : forms[i].terms())
            if (n <= prec)
                m(i, toInt64(n)) = c;
    const auto ech = rowReduce(m);
    std::vector<SparseSeries> out;
    for (std::size_t i = 0; i < ech.reduced.rows(); ++i) {
        SparseSeries::Terms t;
        for (std::size_t j = 0; j < ech.reduced.cols(); ++j)
            if (ech.reduced(i, j) != 0)
                t.emplace(Rational(static_cast<long>(j)), ech.reduced(i, j));
        out.emplace_back(std::move(t), Rational(prec));
    }
    return out;
}

std::vector<SparseSeries> level1Monomials(std::int64_t k, std::int64_t prec) {
    std::vector<SparseSeries> out;
    if (k < 0 || k % 2 != 0)
        return out;
    const auto e4 = eisenstein(4, prec);
    const auto e6 = eisenstein(6, prec);
    for (std::int64_t b = 0; 6 * b <= k; ++b) {
        const auto rest = k - 6 * b;
        if (rest % 4 != 0)
            continue;
        out.push_back(seriesMultiply(seriesPow(e4, static_cast<unsigned>(rest / 4)),
                                     seriesPow(e6, static_cast<unsigned>(b))));
    }
    return out;
}

} // namespace

std::vector<SparseSeries> level1Basis(std::int64_t k, std::int64_t prec) {
    return echelonSeries(level1Monomials(k, prec), prec);
}

// --- Jacobi series ------------------------------------------------------------

JacobiSeries::JacobiSeries(std::int64_t weight, std::int64_t index, std::int64_t precision, Terms terms)
    : weight_(weight), index_(index), precision_(precision), terms_(std::move(terms)) {
    std::erase_if(terms_, [&](const auto& kv) { return kv.second == 0 || kv.first.first > precision_; });
}

Rational JacobiSeries::coefficient(std::int64_t n, std::int64_t r) const {
    if (n > precision_)
        throw PrecisionError("Jacobi coefficient at q^" + std::to_string(n) + " beyond precision " +
                             std::to_string(precision_));
    const auto it = terms_.find({n, r});
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<JacobiSeries::Key> periodicityViolation(const JacobiSeries& phi) {
    const auto m = phi.index();
    const auto p = phi.precision();
    for (const auto& [key, c] : phi.terms()) {
        const auto [n, r] = key;
        // compare with both translates that stay in the trusted range
        const std::pair<std::int64_t, std::int64_t> up{n + r + m, r + 2 * m};
        const std::pair<std::int64_t, std::int64_t> down{n - r + m, r - 2 * m};
        for (const auto& [n2, r2] : {up, down}) {
            // nothing is stored below q^0, so a nonzero partner there is a violation
            if (n2 < 0)
                return key;
            if (n2 <= p && phi.coefficient(n2, r2) != c)
                return key;
        }
    }
    return std::nullopt;
}

namespace {

std::int64_t isqrt(std::int64_t x) {
    if (x < 0)
        return -1;
    auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
    while (s * s > x)
        --s;
    while ((s + 1) * (s + 1) <= x)
        ++s;
    return s;
}

// Weak Jacobi form of index m with integer coefficients, stored densely:
// row n holds c(n, r) for |r| <= width(n) = isqrt(4mn + m^2).
struct DenseJacobi {
    std::int64_t index = 0;
    std::int64_t prec = 0;
    std::vector<std::vector<Integer>> rows;

    DenseJacobi(std::int64_t m, std::int64_t p) : index(m), prec(p) {
        for (std::int64_t n = 0; n <= p; ++n)
            rows.emplace_back(static_cast<std::size_t>(2 * width(n) + 1));
    }
    [[nodiscard]] std::int64_t width(std::int64_t n) const { return isqrt(4 * index * n + index * index); }
    Integer& at(std::int64_t n, std::int64_t r) { return rows[n][r + width(n)]; }
    [[nodiscard]] const Integer& at(std::int64_t n, std::int64_t r) const { return rows[n][r + width(n)]; }
};

DenseJacobi multiply(const DenseJacobi& a, const DenseJacobi& b) {
    DenseJacobi out(a.index + b.index, std::min(a.prec, b.prec));
    for (std::int64_t n1 = 0; n1 <= out.prec; ++n1) {
        const auto w1 = a.width(n1);
        for (std::int64_t n2 = 0; n1 + n2 <= out.prec; ++n2) {
            const auto w2 = b.width(n2);
            auto& row = out.rows[n1 + n2];
            const auto wo = out.width(n1 + n2);
            for (std::int64_t r1 = -w1; r1 <= w1; ++r1) {
                const auto& c1 = a.at(n1, r1);
                if (c1 == 0)
                    continue;
                for (std::int64_t r2 = -w2; r2 <= w2; ++r2) {
                    const auto& c2 = b.at(n2, r2);
                    if (c2 != 0)
                        row[r1 + r2 + wo] += c1 * c2;
                }
            }
        }
    }
    return out;
}

DenseJacobi multiplyScalar(const SparseSeries& f, const DenseJacobi& phi) {
    DenseJacobi out(phi.index, phi.prec);
    for (const auto& [e, c] : f.terms()) {
        const auto j = toInt64(e);
        if (j > phi.prec)
            continue;
        if (!isInteger(c))
            throw InternalError("non-integral level-1 monomial coefficient");
        const Integer ci = c.get_num();
        for (std::int64_t n = 0; n + j <= phi.prec; ++n) {
            const auto w = phi.width(n);
            for (std::int64_t r = -w; r <= w; ++r)
                if (phi.at(n, r) != 0)
                    out.at(n + j, r) += ci * phi.at(n, r);
        }
    }
    return out;
}

// Bivariate integer series in (s, zeta), truncated at s^limit.
using Bivariate = std::map<std::pair<std::int64_t, std::int64_t>, Integer>;

// multiply by (1 + sign s^e zeta^z)
void multiplyBinomial(Bivariate& a, std::int64_t e, std::int64_t z, int sign, std::int64_t limit) {
    Bivariate out = a;
    for (const auto& [key, c] : a)
        if (key.first + e <= limit)
            out[{key.first + e, key.second + z}] += sign * c;
    a = std::move(out);
}

void multiplyUnivariate(Bivariate& a, const std::vector<Integer>& u, std::int64_t limit) {
    Bivariate out;
    for (const auto& [key, c] : a)
        for (std::int64_t j = 0; key.first + j <= limit; ++j)
            if (u[j] != 0)
                out[{key.first + j, key.second}] += c * u[j];
    a = std::move(out);
}

// prod_n (1 + sign s^(a n + b))^(-4) as a univariate series up to s^limit
std::vector<Integer> inverseFourthPowerProduct(std::int64_t step, std::int64_t offset, int sign,
                                               std::int64_t limit) {
    std::vector<Integer> u(static_cast<std::size_t>(limit + 1));
    u[0] = 1;
    for (std::int64_t n = 1; step * n + offset <= limit; ++n) {
        const auto e = step * n + offset;
        for (int rep = 0; rep < 4; ++rep) {
            // divide by (1 + sign s^e): u[j] -= sign u[j - e]
            for (std::int64_t j = e; j <= limit; ++j)
                u[j] -= sign * u[j - e];
        }
    }
    return u;
}

// prod_n (1 + sign s^(step n + offset) zeta)^2 (1 + sign s^(step n + offset) zeta^-1)^2 / (1 + sign s^(...))^4
Bivariate thetaQuotient(std::int64_t step, std::int64_t offset, int sign, std::int64_t limit, Bivariate seed) {
    for (std::int64_t n = 1; step * n + offset <= limit; ++n) {
        const auto e = step * n + offset;
        for (int rep = 0; rep < 2; ++rep) {
            multiplyBinomial(seed, e, 1, sign, limit);
            multiplyBinomial(seed, e, -1, sign, limit);
        }
    }
    multiplyUnivariate(seed, inverseFourthPowerProduct(step, offset, sign, limit), limit);
    return seed;
}

// s-exponents must be multiples of `step`; row n = s / step.
DenseJacobi toDense(const Bivariate& b, std::int64_t step, std::int64_t prec) {
    DenseJacobi out(1, prec);
    for (const auto& [key, c] : b) {
        if (c == 0)
            continue;
        if (key.first % step != 0)
            throw InternalError("fractional q-power survived in a weak Jacobi generator");
        const auto n = key.first / step;
        if (n > prec)
            continue;
        if (std::abs(key.second) > out.width(n))
            throw InternalError("weak Jacobi generator coefficient outside the index-1 support");
        out.at(n, key.second) = c;
    }
    return out;
}

struct WeakGenerators {
    DenseJacobi phiMinus2;
    DenseJacobi phi0;
};

WeakGenerators buildWeakGenerators(std::int64_t prec) {
    // (zeta - 2 + zeta^-1) prod (1 - q^n zeta)^2 (1 - q^n zeta^-1)^2 / (1 - q^n)^4
    Bivariate seed{{{0, -1}, Integer(1)}, {{0, 0}, Integer(-2)}, {{0, 1}, Integer(1)}};
    const auto m2 = thetaQuotient(1, 0, -1, prec, seed);

    // 4 sum_{i=2,3,4} theta_i(z)^2 / theta_i(0)^2 with s = q^(1/2)
    const auto limit = 2 * prec;
    Bivariate two{{{0, -1}, Integer(1)}, {{0, 0}, Integer(2)}, {{0, 1}, Integer(1)}};
    auto sum = thetaQuotient(2, 0, 1, limit, two);
    const auto three = thetaQuotient(2, -1, 1, limit, Bivariate{{{0, 0}, Integer(4)}});
    for (const auto& [key, c] : three) {
        // theta_4 is theta_3 at -s, so odd s-powers cancel and even ones double
        if (key.first % 2 == 0)
            sum[key] += 2 * c;
    }
    return {toDense(m2, 1, prec), toDense(sum, 2, prec)};
}

const WeakGenerators& weakGeneratorsCached(std::int64_t prec) {
    static std::mutex mutex;
    static std::map<std::int64_t, WeakGenerators> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(prec);
    if (it == cache.end())
        it = cache.emplace(prec, buildWeakGenerators(prec)).first;
    return it->second;
}

JacobiSeries toSeries(const DenseJacobi& d, std::int64_t weight) {
    JacobiSeries::Terms t;
    for (std::int64_t n = 0; n <= d.prec; ++n) {
        const auto w = d.width(n);
        for (std::int64_t r = -w; r <= w; ++r)
            if (d.at(n, r) != 0)
                t.emplace(JacobiSeries::Key{n, r}, Rational(d.at(n, r)));
    }
    return JacobiSeries(weight, d.index, d.prec, std::move(t));
}

} // namespace

std::pair<JacobiSeries, JacobiSeries> weakJacobiGenerators(std::int64_t prec) {
    if (prec < 0)
        throw InputError("precision must be nonnegative");
    const auto& g = weakGeneratorsCached(prec);
    return {toSeries(g.phiMinus2, -2), toSeries(g.phi0, 0)};
}

std::vector<JacobiSeries> holomorphicJacobiBasis(std::int64_t k, std::int64_t index, std::int64_t prec) {
    if (k % 2 != 0)
        throw UnsupportedError("odd-weight Jacobi forms are not constructed (weight " + std::to_string(k) + ")");
    if (k < 2)
        throw InputError("Jacobi weight must be >= 2, got " + std::to_string(k));
    if (index < 1)
        throw InputError("Jacobi index must be positive");
    const std::int64_t needed = (index + 3) / 4;
    if (prec < needed)
        throw PrecisionError("Jacobi precision " + std::to_string(prec) + " below the holomorphy bound " +
                             std::to_string(needed));
    const auto& gens = weakGeneratorsCached(prec);

    // phi_{-2}^c and phi_0^d for 0 <= c, d <= index
    std::vector<DenseJacobi> powM2{DenseJacobi(0, prec)}, pow0{DenseJacobi(0, prec)};
    powM2[0].at(0, 0) = 1;
    pow0[0].at(0, 0) = 1;
    for (std::int64_t i = 1; i <= index; ++i) {
        powM2.push_back(multiply(powM2.back(), gens.phiMinus2));
        pow0.push_back(multiply(pow0.back(), gens.phi0));
    }

    std::vector<DenseJacobi> monomials;
    for (std::int64_t c = 0; c <= index; ++c) {
        const auto phiPart = multiply(powM2[c], pow0[index - c]);
        for (const auto& f : level1Monomials(k + 2 * c, prec))
            monomials.push_back(multiplyScalar(f, phiPart));
    }
    if (monomials.empty())
        return {};

    // c(n, r) = 0 whenever 4Nn - r^2 < 0, checked on 0 <= n <= ceil(N/4), |r| <= N
    std::vector<std::pair<std::int64_t, std::int64_t>> constraints;
    for (std::int64_t n = 0; n <= needed; ++n)
        for (std::int64_t r = -index; r <= index; ++r)
            if (4 * index * n - r * r < 0)
                constraints.emplace_back(n, r);
    RationalMatrix a(constraints.size(), monomials.size());
    for (std::size_t i = 0; i < constraints.size(); ++i)
        for (std::size_t j = 0; j < monomials.size(); ++j) {
            const auto [n, r] = constraints[i];
            if (std::abs(r) <= monomials[j].width(n))
                a(i, j) = Rational(monomials[j].at(n, r));
        }
    const auto kernel = constraints.empty() ? std::vector<RationalVector>{} : kernelBasis(a);
    std::vector<RationalVector> combos = kernel;
    if (constraints.empty())
        for (std::size_t j = 0; j < monomials.size(); ++j) {
            RationalVector e(monomials.size());
            e[j] = 1;
            combos.push_back(std::move(e));
        }
    if (combos.empty())
        return {};

    // echelonize over coordinates (n, r) in lexicographic order
    const DenseJacobi& shape = monomials.front();
    std::vector<JacobiSeries::Key> coords;
    for (std::int64_t n = 0; n <= prec; ++n)
        for (std::int64_t r = -shape.width(n); r <= shape.width(n); ++r)
            coords.emplace_back(n, r);
    RationalMatrix m(combos.size(), coords.size());
    for (std::size_t i = 0; i < combos.size(); ++i)
        for (std::size_t j = 0; j < monomials.size(); ++j) {
            if (combos[i][j] == 0)
                continue;
            std::size_t col = 0;
            for (std::int64_t n = 0; n <= prec; ++n)
                for (const auto& c : monomials[j].rows[n]) {
                    if (c != 0)
                        m(i, col) += combos[i][j] * Rational(c);
                    ++col;
                }
        }
    const auto ech = rowReduce(m);
    std::vector<JacobiSeries> out;
    for (std::size_t i = 0; i < ech.reduced.rows(); ++i) {
        JacobiSeries::Terms t;
        for (std::size_t j = 0; j < coords.size(); ++j)
            if (ech.reduced(i, j) != 0)
                t.emplace(coords[j], ech.reduced(i, j));
        out.emplace_back(k, index, prec, std::move(t));
    }
    if (out.size() != combos.size())
        throw PrecisionError("Jacobi monomials are dependent at precision " + std::to_string(prec) +
                             "; increase --prec");
    return out;
}

// --- vector-valued expansions -------------------------------------------------

Rational FormExpansion::coefficient(std::size_t gamma, const Rational& n) const {
    if (n > truncation)
        throw PrecisionError("coefficient at q^" + toString(n) + " beyond truncation " + toString(truncation));
    const auto it = coefficients.find({fqm.orbitRepresentative(gamma), n});
    return it == coefficients.end() ? Rational(0) : it->second;
}

std::optional<std::string> expansionViolation(const FormExpansion& f) {
    for (const auto& [key, c] : f.coefficients) {
        const auto& [gamma, n] = key;
        const auto where = "(" + f.fqm.elementLabel(gamma) + ", " + toString(n) + ")";
        if (gamma >= f.fqm.order() || f.fqm.orbitRepresentative(gamma) != gamma)
            return "coefficient keyed by a non-representative " + where;
        if (c == 0)
            continue;
        if (n < 0)
            return "negative exponent at " + where;
        if (n > f.truncation)
            return "coefficient beyond truncation at " + where;
        const Rational expected = f.dual ? -f.fqm.q(gamma) : f.fqm.q(gamma);
        if (!congruentMod1(n, expected))
            return "support congruence fails at " + where;
    }
    return std::nullopt;
}

FormExpansion thetaDecompose(const JacobiSeries& phi, const FiniteQuadraticModule& fqm) {
    const auto m = phi.index();
    std::int64_t n = 0;
    if (!fqm.isCyclicModularCurveForm(n) || n != m)
        throw InputError("theta decomposition needs the cyclic form Z/" + std::to_string(2 * m) +
                         " with q = g^2/" + std::to_string(4 * m));
    if (const auto bad = periodicityViolation(phi))
        throw InputError("Jacobi series is not periodic at (" + std::to_string(bad->first) + ", " +
                         std::to_string(bad->second) + ")");
    FormExpansion out{makeRational(2 * phi.weight() - 1, 2), true, fqm,
                      Rational(phi.precision()) - makeRational(m, 4), {}};
    for (const auto& [key, c] : phi.terms()) {
        const auto [qn, r] = key;
        if (r < 0 || r > m)
            continue;
        const Rational e = Rational(qn) - makeRational(r * r, 4 * m);
        if (e < 0)
            throw InputError("Jacobi series is not holomorphic at (" + std::to_string(qn) + ", " +
                             std::to_string(r) + ")");
        if (phi.coefficient(qn, -r) != c)
            throw InputError("Jacobi series is not symmetric in r at (" + std::to_string(qn) + ", " +
                             std::to_string(r) + ")");
        if (e <= out.truncation)
            out.coefficients.emplace(std::pair{static_cast<std::size_t>(r), e}, c);
    }
    return out;
}

FormExpansion thetaDecompose(const JacobiSeries& phi, std::int64_t index) {
    if (index != phi.index())
        throw InputError("Jacobi index mismatch");
    return thetaDecompose(phi, discriminantForm(modularCurveLattice(index)));
}

std::int64_t defaultPrecision(const Rational& weight, std::size_t zDimension) {
    const auto twelfths = toInt64(ceil(weight / 12));
    return std::max<std::int64_t>(20, twelfths * static_cast<std::int64_t>(zDimension) + 5);
}

namespace {

std::vector<FormExpansion> echelonExpansions(const std::vector<FormExpansion>& forms) {
    if (forms.empty())
        return {};
    std::vector<std::pair<Rational, std::size_t>> coords; // (n, orbit) ordered by n then orbit
    for (const auto& f : forms)
        for (const auto& [key, c] : f.coefficients)
            coords.emplace_back(key.second, key.first);
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    RationalMatrix m(forms.size(), coords.size());
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (const auto& [key, c] : forms[i].coefficients) {
            const auto it = std::lower_bound(coords.begin(), coords.end(), std::pair{key.second, key.first});
            m(i, static_cast<std::size_t>(it - coords.begin())) = c;
        }
    const auto ech = rowReduce(m);
    std::vector<FormExpansion> out;
    for (std::size_t i = 0; i < ech.reduced.rows(); ++i) {
        FormExpansion f{forms.front().weight, true, forms.front().fqm, forms.front().truncation, {}};
        for (std::size_t j = 0; j < coords.size(); ++j)
            if (ech.reduced(i, j) != 0)
                f.coefficients.emplace(std::pair{coords[j].second, coords[j].first}, ech.reduced(i, j));
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace

std::vector<FormExpansion> vvmfBasis(const Lattice& lattice, const Rational& weight, std::int64_t prec) {
    requireHalfInteger(weight);
    const auto fqm = discriminantForm(lattice);
    const WeilRepresentation weil(fqm, lattice.signature());
    const auto sub = zEigenspace(weil, weight, true);
    if (prec < 0)
        prec = defaultPrecision(weight, sub.representatives.size());
    if (sub.representatives.empty() || weight < 0)
        return {};

    if (fqm.isTrivial()) {
        // here the Z-action forces k to be an even integer
        std::vector<FormExpansion> out;
        for (const auto& g : level1Basis(toInt64(weight), prec)) {
            FormExpansion f{weight, true, fqm, Rational(prec), {}};
            for (const auto& [n, c] : g.terms())
                f.coefficients.emplace(std::pair{std::size_t{0}, n}, c);
            out.push_back(std::move(f));
        }
        return out;
    }

    std::int64_t index = 0;
    if (!fqm.isCyclicModularCurveForm(index))
        throw UnsupportedError("no constructive basis for this discriminant form; supported: trivial, or "
                               "cyclic Z/2N with q(g) = g^2/4N");
    const Rational jacobiWeight = weight + makeRational(1, 2);
    if (!isInteger(jacobiWeight) || toInt64(jacobiWeight) % 2 != 0)
        throw UnsupportedError("Jacobi route needs k + 1/2 even; got k = " + toString(weight));
    if (jacobiWeight < 2)
        return {};

    const std::int64_t jacobiPrec = prec + (index + 3) / 4;
    std::vector<FormExpansion> forms;
    for (const auto& phi : holomorphicJacobiBasis(toInt64(jacobiWeight), index, jacobiPrec)) {
        auto f = thetaDecompose(phi, fqm);
        f.truncation = Rational(prec);
        std::erase_if(f.coefficients, [&](const auto& kv) { return kv.first.second > prec; });
        forms.push_back(std::move(f));
    }
    return echelonExpansions(forms);
}

} // namespace vvmf
