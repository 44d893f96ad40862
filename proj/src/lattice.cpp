#include "vvmf/lattice.hpp"

#include "vvmf/cyclotomic.hpp"
#include "vvmf/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace vvmf {

namespace {

RationalMatrix toRational(const IntMatrix& m) {
    RationalMatrix r(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            r(i, j) = Rational(static_cast<long>(m[i][j]));
    return r;
}

Rational determinantOf(RationalMatrix a) {
    const auto n = a.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a(p, c) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0)
                continue;
            const Rational f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j)
                a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

} // namespace

Signature inertia(const RationalMatrix& symmetric) {
    RationalMatrix a = symmetric;
    const auto n = a.rows();
    auto swapIndex = [&](std::size_t i, std::size_t j) {
        if (i == j)
            return;
        for (std::size_t k = 0; k < n; ++k)
            std::swap(a(i, k), a(j, k));
        for (std::size_t k = 0; k < n; ++k)
            std::swap(a(k, i), a(k, j));
    };
    Signature sig;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, p) == 0)
            ++p;
        if (p == n) {
            // all remaining diagonal entries vanish: use e_i + e_j with a_ij != 0
            std::size_t pi = n, pj = n;
            for (std::size_t i = k; i < n && pi == n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (a(i, j) != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == n)
                throw InputError("Gram matrix is degenerate");
            for (std::size_t c = 0; c < n; ++c)
                a(pi, c) += a(pj, c);
            for (std::size_t r = 0; r < n; ++r)
                a(r, pi) += a(r, pj);
            p = pi;
        }
        swapIndex(k, p);
        const Rational pivot = a(k, k);
        (pivot > 0 ? sig.plus : sig.minus) += 1;
        // Schur complement on the trailing block
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0)
                continue;
            const Rational f = a(i, k) / pivot;
            for (std::size_t j = k + 1; j < n; ++j)
                if (a(k, j) != 0)
                    a(i, j) -= f * a(k, j);
        }
        for (std::size_t i = k + 1; i < n; ++i)
            a(i, k) = a(k, i) = 0;
    }
    return sig;
}

Lattice::Lattice(IntMatrix gram, std::string name) : gram_(std::move(gram)), name_(std::move(name)) {
    const auto n = gram_.size();
    if (n == 0)
        throw InputError("Gram matrix is empty");
    for (std::size_t i = 0; i < n; ++i) {
        if (gram_[i].size() != n)
            throw InputError("Gram matrix is not square");
        if (gram_[i][i] % 2 != 0)
            throw InputError("Gram matrix has odd diagonal entry " + std::to_string(gram_[i][i]) +
                             " at position " + std::to_string(i) + "; the lattice must be even");
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (gram_[i][j] != gram_[j][i])
                throw InputError("Gram matrix is not symmetric");
    const auto g = toRational(gram_);
    const Rational det = vvmf::determinantOf(g);
    if (det == 0)
        throw InputError("Gram matrix is degenerate (determinant 0)");
    det_ = det.get_num();
    signature_ = inertia(g);
}

IntMatrix blockSum(const std::vector<IntMatrix>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks)
        n += b.size();
    IntMatrix out(n, std::vector<std::int64_t>(n, 0));
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                out[off + i][off + j] = b[i][j];
        off += b.size();
    }
    return out;
}

// ---------------------------------------------------------------------------
// FiniteQuadraticModule

FiniteQuadraticModule::FiniteQuadraticModule(std::vector<std::int64_t> elementaryDivisors,
                                             RationalMatrix dualGram)
    : divisors_(std::move(elementaryDivisors)), dualGram_(std::move(dualGram)) {
    if (dualGram_.rows() != divisors_.size() || dualGram_.cols() != divisors_.size())
        throw InternalError("dual Gram size does not match the number of elementary divisors");
    for (auto d : divisors_)
        if (d < 2)
            throw InternalError("elementary divisors must be >= 2");
    size_ = 1;
    for (auto d : divisors_)
        size_ *= static_cast<std::size_t>(d);
    // well-definedness: d_i b(e_i, .) and d_i^2 q(e_i) integral
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
        const Rational di(static_cast<long>(divisors_[i]));
        if (!isInteger(di * di * dualGram_(i, i) / 2))
            throw InputError("quadratic form not well defined on Z/" + std::to_string(divisors_[i]));
        for (std::size_t j = 0; j < divisors_.size(); ++j)
            if (!isInteger(di * dualGram_(i, j)))
                throw InputError("bilinear form not well defined on Z/" + std::to_string(divisors_[i]));
    }
    qValues_.resize(size_);
    negation_.resize(size_);
    for (std::size_t g = 0; g < size_; ++g) {
        const auto x = coordinates(g);
        Rational s = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < x.size(); ++j)
                s += dualGram_(i, j) * static_cast<long>(x[i] * x[j]);
        qValues_[g] = fracPart(s / 2);
        auto neg = x;
        for (std::size_t i = 0; i < x.size(); ++i)
            neg[i] = mod64(-x[i], divisors_[i]);
        negation_[g] = indexOf(neg);
    }
}

std::vector<std::int64_t> FiniteQuadraticModule::coordinates(std::size_t index) const {
    std::vector<std::int64_t> x(divisors_.size());
    for (std::size_t i = divisors_.size(); i-- > 0;) {
        const auto d = static_cast<std::size_t>(divisors_[i]);
        x[i] = static_cast<std::int64_t>(index % d);
        index /= d;
    }
    return x;
}

std::size_t FiniteQuadraticModule::indexOf(const std::vector<std::int64_t>& coords) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < divisors_.size(); ++i)
        idx = idx * static_cast<std::size_t>(divisors_[i]) +
              static_cast<std::size_t>(mod64(coords[i], divisors_[i]));
    return idx;
}

Rational FiniteQuadraticModule::b(std::size_t gamma, std::size_t delta) const {
    const auto x = coordinates(gamma);
    const auto y = coordinates(delta);
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0)
            continue;
        for (std::size_t j = 0; j < y.size(); ++j)
            if (y[j] != 0)
                s += dualGram_(i, j) * static_cast<long>(x[i] * y[j]);
    }
    return fracPart(s);
}

std::size_t FiniteQuadraticModule::add(std::size_t gamma, std::size_t delta) const {
    auto x = coordinates(gamma);
    const auto y = coordinates(delta);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] += y[i];
    return indexOf(x);
}

std::size_t FiniteQuadraticModule::scale(std::size_t gamma, std::int64_t k) const {
    auto x = coordinates(gamma);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = mod64(x[i] * mod64(k, divisors_[i]), divisors_[i]);
    return indexOf(x);
}

std::int64_t FiniteQuadraticModule::elementOrder(std::size_t gamma) const {
    const auto x = coordinates(gamma);
    std::int64_t ord = 1;
    for (std::size_t i = 0; i < x.size(); ++i)
        ord = lcm64(ord, divisors_[i] / gcd64(divisors_[i], x[i]));
    return ord;
}

std::vector<std::size_t> FiniteQuadraticModule::orbitRepresentatives() const {
    std::vector<std::size_t> reps;
    for (std::size_t g = 0; g < size_; ++g)
        if (orbitRepresentative(g) == g)
            reps.push_back(g);
    return reps;
}

bool FiniteQuadraticModule::isCyclicModularCurveForm(std::int64_t& indexN) const {
    if (divisors_.size() != 1 || divisors_[0] % 2 != 0)
        return false;
    const auto d = divisors_[0];
    if (qValues_[1] != Rational(1, static_cast<unsigned long>(2 * d)))
        return false;
    indexN = d / 2;
    return true;
}

std::string FiniteQuadraticModule::elementLabel(std::size_t gamma) const {
    const auto x = coordinates(gamma);
    if (x.empty())
        return "0";
    if (x.size() == 1)
        return std::to_string(x[0]);
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < x.size(); ++i)
        out << (i ? "," : "") << x[i];
    out << ')';
    return out.str();
}

// ---------------------------------------------------------------------------
// discriminant form via Smith normal form

FiniteQuadraticModule discriminantForm(const Lattice& lat) {
    const auto n = lat.rank();
    std::vector<IntegerVector> a(n, IntegerVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = static_cast<long>(lat.gram()[i][j]);
    // uinv tracks the inverse of the accumulated row operations: Z^n/G Z^n
    // decomposes along the columns of uinv.
    std::vector<IntegerVector> uinv(n, IntegerVector(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        uinv[i][i] = 1;

    auto rowAdd = [&](std::size_t dst, std::size_t src, const Integer& k) {
        // row_dst += k row_src;  uinv: col_src -= k col_dst
        for (std::size_t j = 0; j < n; ++j)
            a[dst][j] += k * a[src][j];
        for (std::size_t r = 0; r < n; ++r)
            uinv[r][src] -= k * uinv[r][dst];
    };
    auto rowSwap = [&](std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        for (std::size_t r = 0; r < n; ++r)
            std::swap(uinv[r][i], uinv[r][j]);
    };
    auto rowNegate = [&](std::size_t i) {
        for (auto& x : a[i])
            x = -x;
        for (std::size_t r = 0; r < n; ++r)
            uinv[r][i] = -uinv[r][i];
    };
    auto colAdd = [&](std::size_t dst, std::size_t src, const Integer& k) {
        for (std::size_t r = 0; r < n; ++r)
            a[r][dst] += k * a[r][src];
    };
    auto colSwap = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < n; ++r)
            std::swap(a[r][i], a[r][j]);
    };

    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            std::size_t bi = n, bj = n;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a[i][j] != 0 && (bi == n || abs(a[i][j]) < abs(a[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == n)
                throw InternalError("Smith form of a nondegenerate Gram matrix hit a zero block");
            rowSwap(t, bi);
            colSwap(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                if (a[i][t] == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                rowAdd(i, t, -q);
                if (a[i][t] != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                colAdd(j, t, -q);
                if (a[t][j] != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < n && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        rowAdd(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (a[t][t] < 0)
            rowNegate(t);
    }

    const RationalMatrix ginv = inverse(toRational(lat.gram()));
    std::vector<std::int64_t> divisors;
    std::vector<RationalVector> gens;
    for (std::size_t t = 0; t < n; ++t) {
        if (a[t][t] == 1)
            continue;
        divisors.push_back(toInt64(a[t][t]));
        RationalVector g(n);
        for (std::size_t r = 0; r < n; ++r)
            g[r] = Rational(uinv[r][t]);
        gens.push_back(std::move(g));
    }
    const auto r = divisors.size();
    RationalMatrix dual(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            Rational s = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (gens[i][k] == 0)
                    continue;
                for (std::size_t l = 0; l < n; ++l)
                    if (gens[j][l] != 0)
                        s += gens[i][k] * ginv(k, l) * gens[j][l];
            }
            dual(i, j) = s;
        }
    if (r == 1) {
        // cyclic: use the generator u*g with the smallest q value
        const auto d = divisors[0];
        std::int64_t bestU = 1;
        Rational bestQ = fracPart(dual(0, 0) / 2);
        for (std::int64_t u = 2; u < d; ++u) {
            if (gcd64(u, d) != 1)
                continue;
            const Rational qu = fracPart(dual(0, 0) * static_cast<long>(u * u) / 2);
            if (qu < bestQ) {
                bestQ = qu;
                bestU = u;
            }
        }
        dual(0, 0) *= static_cast<long>(bestU * bestU);
    }
    return FiniteQuadraticModule(std::move(divisors), std::move(dual));
}

std::int64_t level(const FiniteQuadraticModule& fqm) {
    const auto& g = fqm.dualGram();
    const auto r = fqm.elementaryDivisors().size();
    Integer lev = 1;
    for (std::size_t i = 0; i < r; ++i) {
        lev = lcm(lev, Rational(g(i, i) / 2).get_den());
        for (std::size_t j = i + 1; j < r; ++j)
            lev = lcm(lev, g(i, j).get_den());
    }
    return toInt64(lev);
}

std::int64_t ambientOrder(const FiniteQuadraticModule& fqm) {
    return lcm64(lcm64(48, 4 * static_cast<std::int64_t>(fqm.order())), level(fqm));
}

int signatureMod8(const FiniteQuadraticModule& fqm) {
    const auto& field = CyclotomicField::get(ambientOrder(fqm));
    const auto L = field.order();
    std::vector<CyclotomicNumber::Term> terms;
    for (std::size_t g = 0; g < fqm.order(); ++g)
        terms.emplace_back(toInt64(fqm.q(g) * static_cast<long>(L)), Rational(1));
    const CyclotomicNumber gauss(field, std::move(terms));
    const auto root = field.sqrtDiscriminant(static_cast<std::int64_t>(fqm.order()));
    for (int s = 0; s < 8; ++s)
        if (gauss == root * field.rootOfUnity(s, 8))
            return s;
    throw InternalError("Gauss sum of the discriminant form has the wrong absolute value");
}

// ---------------------------------------------------------------------------
// catalog

IntMatrix hyperbolicPlane() { return {{0, 1}, {1, 0}}; }

IntMatrix e8Negative() {
    // E8 Cartan matrix (Bourbaki labelling: 1-3-4-5-6-7-8 chain, 2 attached to 4), negated
    const std::vector<std::pair<int, int>> edges = {{0, 2}, {2, 3}, {3, 4}, {4, 5},
                                                    {5, 6}, {6, 7}, {1, 3}};
    IntMatrix m(8, std::vector<std::int64_t>(8, 0));
    for (int i = 0; i < 8; ++i)
        m[i][i] = -2;
    for (auto [i, j] : edges)
        m[i][j] = m[j][i] = 1;
    return m;
}

Lattice modularCurveLattice(std::int64_t n) {
    if (n < 1)
        throw InputError("modularCurve(N) needs N >= 1");
    // v = [[C/N, -B/2N], [-B/2N, A/N]] with A = N a, B = 2N b, C = c;
    // (v, v) = (B^2 - 4AC)/2N = 2N b^2 - 2 a c on the basis (a, b, c)
    IntMatrix g = {{0, 0, -1}, {0, 2 * n, 0}, {-1, 0, 0}};
    return Lattice(std::move(g), "modularCurve(" + std::to_string(n) + ")");
}

Lattice hilbertLattice(std::int64_t d) {
    if (d < 1 || (mod64(d, 4) != 0 && mod64(d, 4) != 1))
        throw InputError("hilbert(D) needs D > 0 with D = 0 or 1 mod 4");
    const auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(d)));
    for (auto t = std::max<std::int64_t>(0, s - 1); t <= s + 1; ++t)
        if (t * t == d)
            throw InputError("hilbert(D) needs D not a square");
    // v = [[C, -B], [-B', A]], (v, v) = -2 det v = 2 B B' - 2 A C, B in Z + Z (D + sqrt D)/2
    const IntMatrix ac = {{0, -1}, {-1, 0}};
    const IntMatrix ring = {{2, d}, {d, d * (d - 1) / 2}};
    return Lattice(blockSum({ac, ring}), "hilbert(" + std::to_string(d) + ")");
}

Lattice unimodular226() {
    const auto h = hyperbolicPlane();
    const auto e = e8Negative();
    return Lattice(blockSum({h, h, e, e, e}), "unimodular226");
}

Lattice siegelLattice(std::int64_t n) {
    if (n < 1)
        throw InputError("siegel(N) needs N >= 1");
    const auto h = hyperbolicPlane();
    return Lattice(blockSum({h, h, {{-2 * n}}}), "siegel(" + std::to_string(n) + ")");
}

Lattice shiftedLattice(std::int64_t n) {
    if (n < 1)
        throw InputError("shifted(N) needs N >= 1");
    return Lattice(blockSum({modularCurveLattice(n).gram(), e8Negative()}),
                   "shifted(" + std::to_string(n) + ")");
}

namespace {

std::string normalizeName(const std::string& s) {
    std::string out;
    for (char c : s)
        if (c != '-' && c != '_')
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

} // namespace

Lattice catalog(const std::string& name, const std::vector<std::int64_t>& params) {
    const auto key = normalizeName(name);
    auto oneParam = [&]() {
        if (params.size() != 1)
            throw InputError("catalog lattice '" + name + "' takes exactly one parameter");
        return params[0];
    };
    if (key == "modularcurve")
        return modularCurveLattice(oneParam());
    if (key == "hilbert")
        return hilbertLattice(oneParam());
    if (key == "siegel")
        return siegelLattice(oneParam());
    if (key == "shifted")
        return shiftedLattice(oneParam());
    if (key == "unimodular226") {
        if (!params.empty())
            throw InputError("unimodular226 takes no parameters");
        return unimodular226();
    }
    throw InputError("unknown catalog lattice '" + name +
                     "' (expected modularCurve, hilbert, unimodular226, siegel, shifted)");
}

} // namespace vvmf
