#include "vvmf/dimension.hpp"
#include "vvmf/errors.hpp"

#include <doctest.h>

using namespace vvmf;

namespace {

// classical level-1 dimension, independent of the Weil machinery
std::int64_t classicalDimension(std::int64_t k) {
    if (k < 0 || k % 2 != 0)
        return 0;
    if (k % 12 == 2)
        return k / 12;
    return k / 12 + 1;
}

WeilRepresentation weilOf(const Lattice& lat) {
    return WeilRepresentation(discriminantForm(lat), lat.signature());
}

CycloMatrix diagonal(const CyclotomicField& f, const std::vector<CyclotomicNumber>& entries) {
    CycloMatrix m(f, entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i)
        m(i, i) = entries[i];
    return m;
}

} // namespace

TEST_CASE("matrixOrder examples") {
    const auto& f = CyclotomicField::get(48);
    CHECK(matrixOrder(CycloMatrix::identity(f, 3), 10) == 1);
    CHECK(matrixOrder(weilOf(modularCurveLattice(1)).rhoS(), 1000) == 8);
    for (std::int64_t n = 1; n <= 6; ++n)
        CHECK(matrixOrder(weilOf(modularCurveLattice(n)).rhoT(), 1000) == 4 * n);
    CHECK_THROWS_AS(matrixOrder(diagonal(f, {f.rootOfUnity(1, 48)}), 10), InternalError);
}

TEST_CASE("eigenvalueProfile and alpha examples") {
    const auto& f = CyclotomicField::get(48);
    const auto p = eigenvalueProfile(diagonal(f, {f.one(), f.rootOfUnity(1, 4)}), 100);
    CHECK(p.order == 4);
    CHECK(p.multiplicities == std::map<Rational, std::int64_t>{{0, 1}, {makeRational(1, 4), 1}});
    CHECK(alpha(p) == makeRational(1, 4));
    CHECK(alpha(p, true) == makeRational(3, 4));
    CHECK(alpha(CycloMatrix::identity(f, 4), 10) == 0);
    CHECK(alpha(diagonal(f, {f.fromRational(-1), f.fromRational(-1)}), 10) == 1);

    const auto triv = weilOf(unimodular226());
    const auto pz = eigenvalueProfile(triv.rhoZ(), 100);
    CHECK(pz.multiplicities == std::map<Rational, std::int64_t>{{0, 1}});
}

TEST_CASE("profiles of word images sum to the dimension and alpha lies in [0, d)") {
    for (const auto& lat : {modularCurveLattice(1), modularCurveLattice(4), hilbertLattice(5), siegelLattice(2)}) {
        const auto w = weilOf(lat);
        const auto cap = 16 * 12 * level(w.fqm());
        for (const char* word : {"S", "T", "ST", "STS", "TTs", "SSTt"}) {
            const auto m = w.evaluate(parseWord(word)).matrix;
            const auto p = eigenvalueProfile(m, cap);
            std::int64_t total = 0;
            for (const auto& [beta, mult] : p.multiplicities) {
                CHECK(beta >= 0);
                CHECK(beta < 1);
                total += mult;
            }
            CHECK(total == static_cast<std::int64_t>(m.size()));
            const auto a = alpha(p);
            CHECK(a >= 0);
            CHECK(a < static_cast<long>(m.size()));
            // alpha of the inverse computed directly
            CHECK(alpha(m.conjTranspose(), cap) == alpha(p, true));
        }
    }
}

TEST_CASE("dimHolModForm on the trivial representation") {
    const auto w = weilOf(unimodular226());
    CHECK(dimHolModForm(w, 14) == 1);
    CHECK(dimHolModForm(w, 12) == 2);
    CHECK(dimHolModForm(w, 2) == 0);
    CHECK(dimHolModForm(w, 4) == 1);
    for (std::int64_t k = 4; k <= 40; k += 2) {
        CAPTURE(k);
        CHECK(dimHolModForm(w, k) == classicalDimension(k));
    }
    CHECK(dimHolModForm(w, 7) == 0);
    CHECK_THROWS_AS(dimHolModForm(w, makeRational(3, 2)), UnsupportedError);
    CHECK_THROWS_AS(dimHolModForm(w, makeRational(1, 3)), InputError);
}

TEST_CASE("dimHolModForm is unchanged by adding a hyperbolic plane") {
    for (const auto& lat : {siegelLattice(1), hilbertLattice(5), shiftedLattice(2)}) {
        const Lattice bigger(blockSum({hyperbolicPlane(), lat.gram()}));
        for (const auto& k : {makeRational(5, 2), makeRational(11, 2), Rational(4), Rational(6)})
            CHECK(dimHolModForm(lat, k) == dimHolModForm(bigger, k));
    }
}

TEST_CASE("zEigenspace for the dual at the obstruction weight is the symmetric part") {
    const auto lat = shiftedLattice(3);
    const auto w = weilOf(lat);
    const auto sub = zEigenspace(w, makeRational(11, 2), true);
    CHECK_FALSE(sub.antisymmetric);
    CHECK(sub.representatives.size() == 4); // Z/6 orbits {0},{1,5},{2,4},{3}
    CHECK(sub.s * sub.s == w.field().rootOfUnity(-11, 4) * CycloMatrix::identity(w.field(), 4));
}
