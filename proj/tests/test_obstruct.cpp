#include "vvmf/errors.hpp"
#include "vvmf/obstruct.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

using namespace vvmf;

namespace {

Integer sigma13(long n) {
    Integer s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) {
            Integer p;
            mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), 13);
            s += p;
        }
    return s;
}

struct E14Setup {
    FiniteQuadraticModule fqm = discriminantForm(unimodular226());
    std::vector<FormExpansion> basis = vvmfBasis(unimodular226(), 14, 20);

    PrincipalPart part(std::initializer_list<std::pair<long, long>> terms) const {
        PrincipalPart p(fqm);
        for (const auto& [n, c] : terms)
            p.set(0, Rational(n), Rational(c));
        return p;
    }
};

} // namespace

TEST_CASE("PrincipalPart validation") {
    const auto fqm = discriminantForm(modularCurveLattice(2));
    PrincipalPart p(fqm);
    CHECK_THROWS_AS(p.set(1, 0, 1), InputError);                 // q(1) = 1/8
    CHECK_THROWS_AS(p.set(1, makeRational(-1, 2), 1), InputError);
    CHECK_THROWS_AS(p.set(0, 1, 1), InputError);
    CHECK_THROWS_AS(p.set(9, -1, 1), InputError);
    p.set(3, makeRational(-7, 8), 2); // -7/8 = 9/8 - 2 = q(3) mod 1
    CHECK(p.get(1, makeRational(-7, 8)) == 2); // -3 = 1 mod 4
    CHECK(p.terms().size() == 1);
    CHECK(p.depth() == makeRational(7, 8));
}

TEST_CASE("pair against E14 on II_{2,26}") {
    const E14Setup ex;
    REQUIRE(ex.basis.size() == 1);
    const auto& e14 = ex.basis[0];
    CHECK(pair(e14, PrincipalPart(ex.fqm)) == 0);
    CHECK(pair(e14, ex.part({{-1, 1}, {0, 24}})) == 0);
    CHECK(pair(e14, ex.part({{-1, 1}, {0, 23}})) == -1);
    CHECK_THROWS_AS(pair(vvmfBasis(unimodular226(), 14, 3)[0], ex.part({{-4, 1}})), PrecisionError);
}

TEST_CASE("isRealizable") {
    const E14Setup ex;
    CHECK(isRealizable(ex.part({{-1, 1}, {0, 24}}), ex.basis).realizable);
    const auto bad = isRealizable(ex.part({{-1, 1}, {0, 23}}), ex.basis);
    CHECK_FALSE(bad.realizable);
    CHECK(bad.residuals == RationalVector{-1});
    CHECK(isRealizable(ex.part({{-3, 5}}), {}).realizable);
}

TEST_CASE("solveConstantTerms") {
    const E14Setup ex;
    for (long n = 1; n <= 5; ++n) {
        const auto sol = solveConstantTerms(ex.part({{-n, 1}}), ex.basis);
        REQUIRE(sol.completed);
        CHECK(sol.completed->get(0, 0) == 24 * Rational(sigma13(n)));
    }
    // empty obstruction space: nothing to solve
    const auto fqm = discriminantForm(modularCurveLattice(1));
    PrincipalPart p(fqm);
    p.set(1, makeRational(-3, 4), 1);
    const auto sol = solveConstantTerms(p, {});
    REQUIRE(sol.completed);
    CHECK(sol.completed->get(0, 0) == 0);
    CHECK_THROWS_AS(solveConstantTerms(ex.part({{0, 1}}), ex.basis), InputError);
}

TEST_CASE("solveConstantTerms reports a witness when inconsistent") {
    // two forms that both vanish at q^0 make the constants unconstrained but
    // can make the singular part infeasible
    const E14Setup ex;
    FormExpansion g{14, true, ex.fqm, 20, {{{0, Rational(1)}, Rational(1)}}};
    const auto sol = solveConstantTerms(ex.part({{-1, 1}}), {g});
    REQUIRE_FALSE(sol.completed);
    REQUIRE(sol.witness.size() == 1);
    CHECK(sol.witness[0] * -pair(g, ex.part({{-1, 1}})) == 1);
}

TEST_CASE("certify") {
    const E14Setup ex;
    const auto cert = certify(ex.part({{-1, 1}, {0, 24}}), ex.basis);
    CHECK(cert.liftWeight == 12);
    REQUIRE(cert.divisor.size() == 1);
    CHECK(cert.divisor[0].n == -1);
    CHECK(cert.divisor[0].coefficient == 1);
    CHECK(cert.residuals == RationalVector{0});
    CHECK(cert.basisFingerprint.size() == 16);
    CHECK(cert.basisFingerprint == basisFingerprint(ex.basis));

    const auto twice = certify(ex.part({{-1, 2}, {0, 48}}), ex.basis);
    CHECK(twice.liftWeight == 24);
    CHECK(twice.divisor[0].coefficient == 2);

    CHECK_THROWS_AS(certify(ex.part({{-1, 1}, {0, 23}}), ex.basis), InputError);
    auto half = ex.part({{-1, 1}});
    half.set(0, 0, makeRational(49, 2));
    CHECK_THROWS_AS(certify(half, ex.basis), InputError);

    // empty obstruction basis: any integral principal part certifies
    const auto fqm = discriminantForm(modularCurveLattice(3));
    PrincipalPart p(fqm);
    p.set(1, makeRational(-11, 12), 3);
    p.set(0, 0, 4);
    const auto c = certify(p, {});
    CHECK(c.liftWeight == 2);
    CHECK(c.residuals.empty());
}

TEST_CASE("primitiveMultiplicity") {
    const E14Setup ex;
    const auto phi = ex.part({{-1, 1}});
    CHECK(primitiveMultiplicity(phi, -1, 0) == 1);
    CHECK(primitiveMultiplicity(phi, -4, 0) == 0);
    // x = 1 and x = 2 both contribute for the norm -2 class
    const auto phi2 = ex.part({{-4, 1}, {-1, 1}});
    CHECK(primitiveMultiplicity(phi2, -1, 0) == 2);
    CHECK(primitiveMultiplicity(phi2, -4, 0) == 1);

    // brute force over classes of Z/2N
    const auto fqm = discriminantForm(modularCurveLattice(3));
    PrincipalPart p(fqm);
    p.set(1, makeRational(-11, 12), 1);
    p.set(2, makeRational(-11, 3), 2); // 2 * class 1 at 4 * (-11/12)
    p.set(2, makeRational(-2, 3), 5);
    for (std::size_t g = 0; g < 6; ++g)
        for (long k = 1; k <= 48; ++k) {
            const Rational n0 = -makeRational(k, 12);
            if (!congruentMod1(n0, fqm.q(g)))
                continue;
            Rational expected = 0;
            for (long x = 1; x <= 10; ++x)
                for (const auto& [key, c] : p.terms())
                    if (key.first == fqm.orbitRepresentative(fqm.scale(g, x)) && key.second == n0 * (x * x))
                        expected += c;
            CHECK(Rational(primitiveMultiplicity(p, n0, g)) == expected);
        }
    CHECK(primitiveMultiplicity(p, makeRational(-11, 12), 1) == 3);
}

TEST_CASE("relationLattice: II_{2,26} at weight 14, T = 3") {
    const E14Setup ex;
    const auto rl = relationLattice(ex.fqm, ex.basis, 3);
    CHECK(rl.rankBound == 1);
    REQUIRE(rl.coordinates.size() == 4);
    CHECK(rl.coordinates[0].second == -3);
    CHECK(rl.coordinates[3].second == 0);
    REQUIRE(rl.relations.size() == 3);
    CHECK(rl.relations[0] == IntegerVector{1, 0, 0, 24 * sigma13(3)});
    CHECK(rl.relations[1] == IntegerVector{0, 1, 0, 24 * sigma13(2)});
    CHECK(rl.relations[2] == IntegerVector{0, 0, 1, 24});
    CHECK_THROWS_AS(relationLattice(ex.fqm, ex.basis, 21), PrecisionError);
}

TEST_CASE("relationLattice: empty basis gives every coordinate") {
    const auto fqm = discriminantForm(modularCurveLattice(2));
    const auto rl = relationLattice(fqm, {}, 2);
    CHECK(rl.rankBound == 0);
    CHECK(rl.relations.size() == rl.coordinates.size());
    // orbits {0}, {1,3}, {2}; q = 0, 1/8, 1/2
    CHECK(rl.coordinates.size() == 3 + 2 + 2);
    for (const auto& [g, n] : rl.coordinates) {
        CHECK(congruentMod1(n, fqm.q(g)));
        CHECK(fqm.orbitRepresentative(g) == g);
    }
}

TEST_CASE("relationLattice: shifted forms, relations are kernel vectors and stable in T") {
    for (std::int64_t n : {1, 3}) {
        const auto lat = shiftedLattice(n);
        const auto fqm = discriminantForm(lat);
        const auto basis = vvmfBasis(lat, makeRational(11, 2), 12);
        const auto small = relationLattice(fqm, basis, 3);
        const auto big = relationLattice(fqm, basis, 8);
        CHECK(small.rankBound == basis.size());
        for (const auto& rel : small.relations) {
            const auto phi = relationToPrincipalPart(small, rel, fqm);
            CHECK(isRealizable(phi, basis).realizable);
            CHECK(isRealizable(relationToPrincipalPart(big, [&] {
                                   IntegerVector v(big.coordinates.size());
                                   for (std::size_t j = 0; j < small.coordinates.size(); ++j) {
                                       const auto it = std::find(big.coordinates.begin(), big.coordinates.end(),
                                                                 small.coordinates[j]);
                                       v[static_cast<std::size_t>(it - big.coordinates.begin())] = rel[j];
                                   }
                                   return v;
                               }(), fqm),
                               basis)
                      .realizable);
        }
    }
}

TEST_CASE("pairing bilinearity and basis independence on random inputs") {
    const auto lat = shiftedLattice(3);
    const auto fqm = discriminantForm(lat);
    const auto basis = vvmfBasis(lat, makeRational(11, 2), 12);
    REQUIRE(basis.size() == 2);
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> coef(-5, 5);
    std::uniform_int_distribution<std::size_t> cls(0, 5);
    std::uniform_int_distribution<long> depth(0, 3);
    const auto randomPart = [&] {
        PrincipalPart p(fqm);
        for (int i = 0; i < 4; ++i) {
            const auto g = cls(rng);
            const Rational n = -fracPart(-fqm.q(g)) - depth(rng);
            p.set(g, n, coef(rng));
        }
        return p;
    };
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = randomPart();
        const auto b = randomPart();
        const Rational s = coef(rng);
        for (const auto& g : basis)
            CHECK(pair(g, a + b * s) == pair(g, a) + s * pair(g, b));
        // recombined basis g0 + 2 g1, g1 - g0 gives the same verdict
        FormExpansion c0 = basis[0], c1 = basis[1];
        for (const auto& [key, v] : basis[1].coefficients)
            c0.coefficients[key] += 2 * v;
        for (const auto& [key, v] : basis[0].coefficients)
            c1.coefficients[key] -= v;
        CHECK(isRealizable(a, basis).realizable == isRealizable(a, {c0, c1}).realizable);
        // completed parts are realizable for both bases
        PrincipalPart singular(fqm);
        for (const auto& [key, v] : a.terms())
            if (key.second < 0)
                singular.set(key.first, key.second, v);
        const auto sol = solveConstantTerms(singular, basis);
        if (sol.completed) {
            CHECK(isRealizable(*sol.completed, basis).realizable);
            CHECK(isRealizable(*sol.completed, {c0, c1}).realizable);
        }
    }
}

TEST_CASE("heegnerPoints") {
    const auto pts = heegnerPoints(1, -1, 0, 1);
    bool foundI = false;
    for (const auto& p : pts) {
        CHECK(p.b * p.b - 4 * p.a * p.c == -4);
        CHECK(p.a % 1 == 0);
        CHECK(mod64(p.b, 2) == 0);
        if (p.a == 1 && p.b == 0 && p.c == 1) {
            foundI = true;
            CHECK(p.realPart == 0);
            CHECK(p.imagCoefficient == 1);
            CHECK(p.imagRadicand == 1);
        }
    }
    CHECK(foundI);

    for (std::int64_t n = 1; n <= 4; ++n)
        for (std::int64_t g = 0; g < 2 * n; ++g) {
            const Rational norm = -makeRational(g * g + 8 * n, 4 * n); // 4Nn = -(g^2 + 8N)
            const auto list = heegnerPoints(n, norm, g, 12);
            std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> triples;
            for (const auto& p : list) {
                CHECK(p.a % n == 0);
                CHECK(mod64(p.b - g, 2 * n) == 0);
                CHECK(Rational(p.b * p.b - 4 * p.a * p.c) == norm * (4 * n));
                CHECK(std::abs(p.a) <= 12);
                CHECK(p.imagCoefficient > 0);
                triples.emplace(p.a, p.b, p.c);
            }
            for (const auto& [a, b, c] : triples)
                CHECK(triples.count({-a, -b, -c}) == (mod64(-b - g, 2 * n) == 0 ? 1u : 0u));
        }
    CHECK_THROWS_AS(heegnerPoints(1, makeRational(1, 4), 1, 3), InputError);
    CHECK_THROWS_AS(heegnerPoints(2, makeRational(-1, 3), 1, 3), InputError);
}
