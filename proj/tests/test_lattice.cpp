#include "vvmf/errors.hpp"
#include "vvmf/lattice.hpp"

#include <doctest.h>

#include <set>

using namespace vvmf;

namespace {

std::vector<Lattice> catalogSample() {
    std::vector<Lattice> out;
    for (std::int64_t n = 1; n <= 12; ++n)
        out.push_back(modularCurveLattice(n));
    for (std::int64_t d : {5, 8, 13, 17})
        out.push_back(hilbertLattice(d));
    for (std::int64_t n = 1; n <= 4; ++n) {
        out.push_back(siegelLattice(n));
        out.push_back(shiftedLattice(n));
    }
    out.push_back(unimodular226());
    return out;
}

// brute-force level from all pairs
std::int64_t bruteLevel(const FiniteQuadraticModule& f) {
    Integer lev = 1;
    for (std::size_t g = 0; g < f.order(); ++g) {
        lev = lcm(lev, f.q(g).get_den());
        for (std::size_t d = 0; d < f.order(); ++d)
            lev = lcm(lev, f.b(g, d).get_den());
    }
    return toInt64(lev);
}

} // namespace

TEST_CASE("lattice validation") {
    CHECK_THROWS_AS(Lattice({{1, 0}, {0, 2}}), InputError);
    CHECK_THROWS_AS(Lattice({{2, 1}, {0, 2}}), InputError);
    CHECK_THROWS_AS(Lattice({{2, 2}, {2, 2}}), InputError);
    CHECK_THROWS_AS(Lattice({}), InputError);
    const Lattice ok({{2, 1}, {1, 2}});
    CHECK(ok.signature() == Signature{2, 0});
    CHECK(ok.determinant() == 3);
}

TEST_CASE("discriminantForm examples") {
    SUBCASE("diag(2,-2)") {
        const auto f = discriminantForm(Lattice({{2, 0}, {0, -2}}));
        CHECK(f.order() == 4);
        CHECK(f.elementaryDivisors() == std::vector<std::int64_t>{2, 2});
        std::multiset<Rational> qs;
        for (std::size_t g = 0; g < 4; ++g)
            qs.insert(f.q(g));
        CHECK(qs == std::multiset<Rational>{0, 0, Rational(1, 4), Rational(3, 4)});
        CHECK(level(f) == 4);
    }
    SUBCASE("hyperbolic plane is unimodular") {
        const auto f = discriminantForm(Lattice(hyperbolicPlane()));
        CHECK(f.isTrivial());
        CHECK(level(f) == 1);
        CHECK(signatureMod8(f) == 0);
    }
    SUBCASE("modularCurve(1)") {
        const auto lat = catalog("modularCurve", {1});
        CHECK(lat.determinant() == -2);
        CHECK(lat.signature() == Signature{2, 1});
        const auto f = discriminantForm(lat);
        CHECK(f.elementaryDivisors() == std::vector<std::int64_t>{2});
        CHECK(f.q(1) == Rational(1, 4));
        CHECK(signatureMod8(f) == 1);
    }
}

TEST_CASE("modularCurve(N) discriminant form is Z/2N with q = g^2/4N") {
    for (std::int64_t n = 1; n <= 12; ++n) {
        const auto f = discriminantForm(modularCurveLattice(n));
        REQUIRE(f.elementaryDivisors() == std::vector<std::int64_t>{2 * n});
        for (std::size_t g = 0; g < f.order(); ++g) {
            const auto gg = static_cast<long>(g);
            CHECK(f.q(g) == fracPart(makeRational(gg * gg, 4 * n)));
        }
        std::int64_t idx = 0;
        CHECK(f.isCyclicModularCurveForm(idx));
        CHECK(idx == n);
        CHECK(level(f) == 4 * n);
        CHECK(level(f) == bruteLevel(f));
    }
}

TEST_CASE("catalog signatures and determinants") {
    CHECK(unimodular226().rank() == 28);
    CHECK(abs(unimodular226().determinant()) == 1);
    CHECK(unimodular226().signature() == Signature{2, 26});
    CHECK(discriminantForm(unimodular226()).isTrivial());
    CHECK(discriminantForm(Lattice(e8Negative())).isTrivial());
    CHECK(signatureMod8(discriminantForm(Lattice(e8Negative()))) == 0);
    for (std::int64_t d : {5, 8, 13, 17}) {
        const auto h = hilbertLattice(d);
        CHECK(h.signature() == Signature{2, 2});
        CHECK(discriminantForm(h).order() == static_cast<std::size_t>(d));
    }
    CHECK(siegelLattice(3).signature() == Signature{2, 3});
    CHECK(shiftedLattice(3).signature() == Signature{2, 9});
    CHECK_THROWS_AS(catalog("hilbert", {9}), InputError);
    CHECK_THROWS_AS(catalog("hilbert", {7}), InputError);
    CHECK_THROWS_AS(catalog("modularCurve", {0}), InputError);
    CHECK_THROWS_AS(catalog("nope", {}), InputError);
    CHECK_THROWS_AS(catalog("unimodular226", {1}), InputError);
}

TEST_CASE("catalog invariants: determinant, Gauss-Milgram, q(-g) = q(g), polarization") {
    for (const auto& lat : catalogSample()) {
        CAPTURE(lat.name());
        const auto f = discriminantForm(lat);
        Integer prod = 1;
        for (auto d : f.elementaryDivisors())
            prod *= static_cast<long>(d);
        CHECK(prod == abs(lat.determinant()));
        const auto sig = lat.signature();
        CHECK(signatureMod8(f) == mod64(sig.plus - sig.minus, 8));
        CHECK(level(f) == bruteLevel(f));
        for (std::size_t g = 0; g < f.order(); ++g) {
            CHECK(f.q(f.negate(g)) == f.q(g));
            for (std::size_t d = 0; d < f.order(); ++d)
                CHECK(congruentMod1(f.q(f.add(g, d)) - f.q(g) - f.q(d), f.b(g, d)));
        }
    }
}

TEST_CASE("adding a hyperbolic plane leaves the discriminant form unchanged") {
    for (const auto& lat : {modularCurveLattice(3), hilbertLattice(13), siegelLattice(2)}) {
        const auto f = discriminantForm(lat);
        const auto g = discriminantForm(Lattice(blockSum({hyperbolicPlane(), lat.gram()})));
        CHECK(f == g);
    }
}

TEST_CASE("shifted(N) shares the discriminant form of modularCurve(N)") {
    for (std::int64_t n = 1; n <= 6; ++n)
        CHECK(discriminantForm(shiftedLattice(n)) == discriminantForm(modularCurveLattice(n)));
}
