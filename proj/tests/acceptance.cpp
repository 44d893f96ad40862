// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "vvmf/dimension.hpp"
#include "vvmf/errors.hpp"
#include "vvmf/formspace.hpp"
#include "vvmf/linalg.hpp"
#include "vvmf/obstruct.hpp"
#include "vvmf/weilrep.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace vvmf;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

std::vector<Lattice> catalogLattices() {
    std::vector<Lattice> out;
    for (std::int64_t n = 1; n <= 12; ++n)
        out.push_back(modularCurveLattice(n));
    for (std::int64_t d : {5, 8, 13, 17})
        out.push_back(hilbertLattice(d));
    for (std::int64_t n = 1; n <= 4; ++n)
        out.push_back(siegelLattice(n));
    for (std::int64_t n = 1; n <= 4; ++n)
        out.push_back(shiftedLattice(n));
    out.push_back(unimodular226());
    return out;
}

Outcome weilRelations() {
    Outcome o;
    for (const auto& lat : catalogLattices()) {
        const WeilRepresentation w(discriminantForm(lat), lat.signature());
        const auto& f = w.field();
        const auto& s = w.rhoS();
        const auto& t = w.rhoT();
        const auto z = w.rhoZ();
        const auto st = s * t;
        o.require(s * s == z, lat.name() + ": S^2 != Z");
        o.require(st * st * st == z, lat.name() + ": (ST)^3 != Z");
        o.require(z.pow(4).isIdentity(), lat.name() + ": Z^4 != I");
        o.require(t.pow(static_cast<std::uint64_t>(level(w.fqm()))).isIdentity(), lat.name() + ": T^level != I");
        o.require((s * s.conjTranspose()).isIdentity(), lat.name() + ": S not unitary");
        const auto phase = f.rootOfUnity(lat.signature().minus - lat.signature().plus, 4);
        for (std::size_t g = 0; g < w.dimension(); ++g)
            for (std::size_t r = 0; r < w.dimension(); ++r)
                o.require(z(r, g) == (r == w.fqm().negate(g) ? phase : f.zero()),
                          lat.name() + ": Z e_gamma != i^(b- - b+) e_-gamma");
    }
    return o;
}

Outcome gaussMilgram() {
    Outcome o;
    for (const auto& lat : catalogLattices()) {
        const auto sig = lat.signature().plus - lat.signature().minus;
        o.require(mod64(signatureMod8(discriminantForm(lat)) - sig, 8) == 0, lat.name());
    }
    return o;
}

// dim M_k(SL2(Z)) for even k >= 4
std::int64_t classicalDimension(std::int64_t k) { return k % 12 == 2 ? k / 12 : k / 12 + 1; }

Outcome classicalOracle() {
    Outcome o;
    const auto lat = unimodular226();
    for (std::int64_t k = 4; k <= 40; k += 2)
        o.require(dimHolModForm(lat, k) == classicalDimension(k), "k = " + std::to_string(k));
    o.require(dimHolModForm(lat, 14) == 1, "k = 14");
    return o;
}

Outcome dualOracle() {
    Outcome o;
    std::ostringstream dims;
    for (std::int64_t n = 1; n <= 6; ++n) {
        const auto lat = shiftedLattice(n);
        const auto formula = dimHolModForm(lat, makeRational(11, 2));
        const auto built = static_cast<std::int64_t>(vvmfBasis(lat, makeRational(11, 2)).size());
        dims << (n > 1 ? " " : "") << formula;
        o.require(formula == built, "shifted(" + std::to_string(n) + "): formula " + std::to_string(formula) +
                                        " vs basis " + std::to_string(built));
    }
    if (o.pass)
        o.detail = "dims " + dims.str();
    return o;
}

Integer sigma13(std::int64_t n) {
    Integer s = 0;
    for (std::int64_t d = 1; d <= n; ++d)
        if (n % d == 0) {
            Integer p = 1;
            for (int i = 0; i < 13; ++i)
                p *= d;
            s += p;
        }
    return s;
}

Outcome unimodularWeight14() {
    Outcome o;
    const auto lat = unimodular226();
    const auto fqm = discriminantForm(lat);
    const auto basis = vvmfBasis(lat, 14, 20);
    o.require(basis.size() == 1, "basis is not one-dimensional");
    if (!o.pass)
        return o;
    const auto& e14 = basis.front();
    o.require(e14.coefficient(0, 0) == 1, "E14 constant term");
    for (std::int64_t n = 1; n <= 3; ++n)
        o.require(e14.coefficient(0, n) == Rational(-24 * sigma13(n)), "E14 coefficient at q^" + std::to_string(n));

    PrincipalPart singular(fqm);
    singular.set(0, -1, 1);
    const auto sol = solveConstantTerms(singular, basis);
    o.require(sol.completed && sol.completed->get(0, 0) == 24, "solveConstantTerms(q^-1 e0) != 24");

    auto phi = singular;
    phi.set(0, 0, 24);
    const auto cert = certify(phi, basis);
    o.require(cert.liftWeight == 12, "lift weight");
    o.require(cert.divisor.size() == 1 && cert.divisor[0].n == -1 && cert.divisor[0].coefficient == 1,
              "certified divisor");

    // y_{-n,0} = -24 sigma13(n) y_{0,0}: kernel spanned by e_{-n} + 24 sigma13(n) e_0
    const auto rl = relationLattice(fqm, basis, 3);
    o.require(rl.rankBound == 1, "rankBound");
    std::vector<IntegerVector> expected;
    for (std::int64_t n = 3; n >= 1; --n) {
        IntegerVector v(4);
        v[static_cast<std::size_t>(3 - n)] = 1;
        v[3] = 24 * sigma13(n);
        expected.push_back(v);
    }
    o.require(hermiteForm(rl.relations) == hermiteForm(expected), "relation lattice at T = 3");
    return o;
}

void checkJacobi(Outcome& o, const JacobiSeries& phi, const std::string& tag) {
    const auto n = phi.index();
    o.require(!periodicityViolation(phi), tag + ": periodicity");
    for (const auto& [key, c] : phi.terms()) {
        const auto [q, r] = key;
        o.require(phi.coefficient(q, -r) == c, tag + ": c(n,-r) != c(n,r)");
        o.require(4 * n * q - r * r >= 0, tag + ": holomorphy");
    }
}

void checkTheta(Outcome& o, const JacobiSeries& phi, const std::string& tag) {
    const auto n = phi.index();
    const auto f = thetaDecompose(phi, n);
    if (const auto bad = expansionViolation(f))
        o.require(false, tag + ": " + *bad);
    for (const auto& [key, c] : f.coefficients) {
        o.require(congruentMod1(key.second, -f.fqm.q(key.first)), tag + ": support congruence");
        o.require(f.coefficient(f.fqm.negate(key.first), key.second) == c, tag + ": +-gamma symmetry");
    }
    for (std::int64_t q = 0; q <= 10; ++q)
        for (std::int64_t r = -2 * n * 4; r <= 2 * n * 4; ++r) {
            const Rational e = Rational(q) - makeRational(r * r, 4 * n);
            if (e < 0)
                continue;
            o.require(f.coefficient(static_cast<std::size_t>(mod64(r, 2 * n)), e) == phi.coefficient(q, r),
                      tag + ": theta roundtrip");
        }
}

Outcome jacobiMachinery() {
    Outcome o;
    std::size_t weight2 = 0, checked = 0;
    for (std::int64_t n = 1; n <= 10; ++n) {
        const auto prec = 10 + (n + 3) / 4;
        for (std::int64_t k : {2, 4, 6}) {
            const auto tag = "J_{" + std::to_string(k) + "," + std::to_string(n) + "}";
            const auto basis = holomorphicJacobiBasis(k, n, prec);
            if (k == 2)
                weight2 += basis.size();
            for (const auto& phi : basis) {
                checkJacobi(o, phi, tag);
                checkTheta(o, phi, tag);
                ++checked;
            }
        }
    }
    if (o.pass)
        o.detail = "J_{2,N} = 0 for N <= 10 (" + std::to_string(weight2) + " forms); " + std::to_string(checked) +
                   " forms of weight 4, 6 checked";
    return o;
}

// Relations supported on the old coordinates; coordinates are sorted by n
// ascending, so the extra ones come first and HNF rows with zero prefix span
// exactly the saturated sublattice.
std::vector<IntegerVector> restrictToTail(const RelationLattice& big, std::size_t oldSize) {
    const auto extra = big.coordinates.size() - oldSize;
    std::vector<IntegerVector> out;
    for (const auto& row : hermiteForm(big.relations)) {
        if (std::all_of(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(extra),
                        [](const Integer& x) { return x == 0; }))
            out.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(extra), row.end());
    }
    return hermiteForm(out);
}

void checkStable(Outcome& o, const Lattice& lat, const Rational& k, std::int64_t prec, std::int64_t trunc) {
    const auto fqm = discriminantForm(lat);
    const auto a = vvmfBasis(lat, k, prec);
    const auto b = vvmfBasis(lat, k, prec + 5);
    const auto tag = lat.name() + " weight " + toString(k);
    o.require(a.size() == b.size(), tag + ": rank changes at prec+5");
    const auto small = relationLattice(fqm, a, trunc);
    o.require(hermiteForm(small.relations) == hermiteForm(relationLattice(fqm, b, trunc).relations),
              tag + ": kernel depends on prec");
    const auto big = relationLattice(fqm, b, trunc + 5);
    o.require(restrictToTail(big, small.coordinates.size()) == hermiteForm(small.relations),
              tag + ": kernel changes at T+5");
}

Outcome truncationStability() {
    Outcome o;
    for (std::int64_t n = 1; n <= 6; ++n)
        checkStable(o, shiftedLattice(n), makeRational(11, 2), defaultPrecision(makeRational(11, 2), n + 1), 3);
    checkStable(o, unimodular226(), 14, 20, 3);
    for (std::int64_t n = 1; n <= 10; ++n) {
        const auto lat = modularCurveLattice(n);
        for (const auto& k : {makeRational(3, 2), makeRational(7, 2), makeRational(11, 2)})
            checkStable(o, lat, k, 14, 3);
        for (std::int64_t k : {2, 4, 6}) {
            const auto prec = 10 + (n + 3) / 4;
            o.require(holomorphicJacobiBasis(k, n, prec).size() == holomorphicJacobiBasis(k, n, prec + 5).size(),
                      "J_{" + std::to_string(k) + "," + std::to_string(n) + "} rank changes at prec+5");
        }
    }
    return o;
}

PrincipalPart randomPart(const FiniteQuadraticModule& fqm, std::mt19937& rng, int terms, int maxDepth) {
    std::uniform_int_distribution<std::size_t> cls(0, fqm.order() - 1);
    std::uniform_int_distribution<long> coef(-9, 9);
    std::uniform_int_distribution<int> depth(0, maxDepth);
    PrincipalPart p(fqm);
    for (int i = 0; i < terms; ++i) {
        const auto g = cls(rng);
        p.set(g, -fracPart(-fqm.q(g)) - depth(rng), coef(rng));
    }
    return p;
}

FormExpansion combine(const std::vector<FormExpansion>& basis, const std::vector<long>& weights) {
    auto out = basis.front();
    out.coefficients.clear();
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (const auto& [key, c] : basis[i].coefficients) {
            auto& slot = out.coefficients[key];
            slot += c * weights[i];
        }
    std::erase_if(out.coefficients, [](const auto& kv) { return kv.second == 0; });
    return out;
}

Outcome realizability() {
    Outcome o;
    std::mt19937 rng(20240601);

    std::uniform_int_distribution<std::int64_t> level(1, 10);
    for (int trial = 0; trial < 100; ++trial) {
        const auto lat = modularCurveLattice(level(rng));
        const auto basis = vvmfBasis(lat, makeRational(3, 2));
        o.require(basis.empty(), lat.name() + ": weight 3/2 space is not zero");
        const auto phi = randomPart(discriminantForm(lat), rng, 5, 6);
        o.require(isRealizable(phi, basis).realizable, lat.name() + ": random part not realizable");
    }

    for (const auto& [lat, k] : std::vector<std::pair<Lattice, Rational>>{
             {shiftedLattice(3), makeRational(11, 2)}, {shiftedLattice(5), makeRational(11, 2)}, {unimodular226(), 14}}) {
        const auto fqm = discriminantForm(lat);
        const auto basis = vvmfBasis(lat, k, 14);
        std::uniform_int_distribution<long> scalar(-7, 7);
        for (int trial = 0; trial < 20; ++trial) {
            const auto p = randomPart(fqm, rng, 4, 4);
            const auto q = randomPart(fqm, rng, 4, 4);
            const long a = scalar(rng), b = scalar(rng);
            auto mix = p;
            mix *= a;
            auto qb = q;
            qb *= b;
            mix += qb;
            for (const auto& g : basis)
                o.require(pair(g, mix) == a * pair(g, p) + b * pair(g, q), lat.name() + ": pairing not bilinear");

            // an invertible integer change of basis (unit upper triangular) keeps the verdict
            std::vector<FormExpansion> other;
            for (std::size_t i = 0; i < basis.size(); ++i) {
                std::vector<long> w(basis.size(), 0);
                w[i] = 1;
                for (std::size_t j = i + 1; j < basis.size(); ++j)
                    w[j] = scalar(rng);
                other.push_back(combine(basis, w));
            }
            o.require(isRealizable(p, basis).realizable == isRealizable(p, other).realizable,
                      lat.name() + ": verdict depends on the basis");
            for (const auto& rel : relationLattice(fqm, basis, 2).relations) {
                const auto phi = relationToPrincipalPart(relationLattice(fqm, basis, 2), rel, fqm);
                o.require(isRealizable(phi, other).realizable, lat.name() + ": relation fails in another basis");
            }
        }
    }
    return o;
}

std::string hilbertWeight2() {
    std::ostringstream out;
    for (std::int64_t d : {5, 8, 13, 17}) {
        const auto lat = hilbertLattice(d);
        out << " D=" << d << ":";
        try {
            out << dimHolModForm(lat, 2);
        } catch (const Error& e) {
            out << e.kind();
        }
    }
    return out.str();
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 Weil representation relations on the catalog", weilRelations},
        {"2 Gauss-Milgram signature mod 8", gaussMilgram},
        {"3 dimension formula vs classical level-1 dimensions", classicalOracle},
        {"4 dimension formula vs constructed basis, shifted(1..6) at 11/2", dualOracle},
        {"5 II_{2,26} at weight 14: E14, constant term, certificate, relations", unimodularWeight14},
        {"6 Jacobi forms: invariants and theta decomposition", jacobiMachinery},
        {"7 truncation stability at prec+5 and T+5", truncationStability},
        {"8 realizability, bilinearity, basis independence", realizability},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const auto secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << static_cast<int>(secs * 1000) << " ms)";
        if (!o.detail.empty())
            std::cout << ": " << o.detail;
        std::cout << std::endl;
        failures += o.pass ? 0 : 1;
    }
    std::cout << "INFO dimension formula at weight 2 on hilbert lattices (not binding):" << hilbertWeight2() << "\n";
    return failures == 0 ? 0 : 1;
}
