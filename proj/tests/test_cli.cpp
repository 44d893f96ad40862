#include "vvmf/cli.hpp"
#include "vvmf/errors.hpp"
#include "vvmf/obstruct.hpp"

#include <doctest.h>

using namespace vvmf;

namespace {

JobSpec job(std::string command, std::string lattice, std::vector<std::int64_t> params = {}) {
    JobSpec s;
    s.command = std::move(command);
    s.lattice = std::move(lattice);
    s.params = std::move(params);
    return s;
}

} // namespace

TEST_CASE("serialization round-trips") {
    const auto lat = shiftedLattice(3);
    const auto fqm = discriminantForm(lat);
    CHECK(fqmFromJson(toJson(fqm)) == fqm);

    const auto basis = vvmfBasis(lat, makeRational(11, 2), 8);
    REQUIRE_FALSE(basis.empty());
    for (const auto& f : basis)
        CHECK(formExpansionFromJson(Json::parse(toJson(f).dump())) == f);

    const auto phi = parsePrincipalPart("-11/12:1=3; -2/3:2=-1; 0:0=4", fqm);
    CHECK(principalPartFromJson(toJson(phi)) == phi);

    const auto rl = relationLattice(fqm, basis, 3);
    CHECK(relationLatticeFromJson(toJson(rl)) == rl);
    const auto cert = certify(relationToPrincipalPart(rl, rl.relations.front(), fqm), basis);
    CHECK(certificateFromJson(toJson(cert)) == cert);

    for (const auto& h : heegnerPoints(3, makeRational(-11, 12), 1, 8))
        CHECK(heegnerPointFromJson(toJson(h)) == h);
}

TEST_CASE("element and principal part parsing") {
    const auto cyclic = discriminantForm(modularCurveLattice(2));
    CHECK(parseElement("3", cyclic) == 3);
    CHECK(parseElement("-1", cyclic) == 3);
    CHECK(parseElement("(1)", cyclic) == 1);
    CHECK_THROWS_AS(parseElement("x", cyclic), InputError);

    const auto trivial = discriminantForm(unimodular226());
    CHECK(parseElement("0", trivial) == 0);
    CHECK_THROWS_AS(parseElement("1", trivial), InputError);

    const auto two = discriminantForm(hilbertLattice(8));
    if (two.elementaryDivisors().size() > 1) {
        CHECK_THROWS_AS(parseElement("1", two), InputError);
        const auto g = parseElement("(1,1)", two);
        CHECK(two.elementLabel(g) == "(1,1)");
    }

    const auto p = parsePrincipalPart("-7/8:1=2;-7/8:3=1", cyclic);
    CHECK(p.get(1, makeRational(-9, 8)) == 0);
    CHECK(p.get(3, makeRational(-7, 8)) == 3); // 1 and 3 share an orbit
    CHECK_THROWS_AS(parsePrincipalPart("-1:1=1", cyclic), InputError);
    CHECK_THROWS_AS(parsePrincipalPart("garbage", cyclic), InputError);
}

TEST_CASE("lattice files") {
    const auto a = parseLatticeFile("name: a2\ngram:\n2 -1\n-1 2\n", "x");
    CHECK(a.name() == "a2");
    CHECK(a.determinant() == 3);
    const auto b = parseLatticeFile(R"({"gram": [[2, 1], [1, -2]]})", "fallback");
    CHECK(b.name() == "fallback");
    CHECK_THROWS_AS(parseLatticeFile("gram:\n1 0\n0 2\n", "odd"), InputError);
    CHECK_THROWS_AS(parseLatticeFile("gram:\n2 x\n", "bad"), InputError);
    CHECK_THROWS_AS(parseLatticeFile("{", "bad"), InputError);
}

TEST_CASE("run: dim on II_{2,26} at weight 14") {
    auto s = job("dim", "unimodular226");
    s.weight = "14";
    const auto r = run(s);
    REQUIRE(r.exitCode == 0);
    CHECK(r.report["dimension"] == 1);
    // 14 is also the default weight 1 + b-/2
    CHECK(run(job("dim", "unimodular226")).report == r.report);
}

TEST_CASE("run: discform on modularCurve(2)") {
    const auto r = run(job("discform", "modularCurve", {2}));
    REQUIRE(r.exitCode == 0);
    CHECK(r.report["order"] == 4);
    CHECK(r.report["level"] == 8);
    CHECK(r.report["q_table"][1]["q"] == "1/8");
}

TEST_CASE("run: certify and refusal") {
    auto s = job("certify", "unimodular226");
    s.phi = "-1:0=1;0:0=24";
    const auto ok = run(s);
    REQUIRE(ok.exitCode == 0);
    CHECK(ok.report["certificate"]["lift_weight"] == "12");

    s.phi = "-1:0=1;0:0=23";
    const auto bad = run(s);
    CHECK(bad.exitCode == 2);
    CHECK(bad.report["error"]["kind"] == "bad_input");
    CHECK(bad.report["error"]["residuals"].size() == 1);

    auto r = job("realizable", "unimodular226");
    r.phi = "-1:0=1";
    const auto rr = run(r);
    REQUIRE(rr.exitCode == 0);
    CHECK(rr.report["realizable"] == false);
    CHECK(rr.report["completion"]["terms"].size() == 2);
}

TEST_CASE("run: exit codes") {
    CHECK(run(job("dim", "nosuch")).exitCode == 2);
    CHECK(run(job("frobnicate", "unimodular226")).exitCode == 2);
    auto w = job("dim", "hilbert", {5});
    w.weight = "1";
    CHECK(run(w).exitCode == 3);
    w.weight = "5/3";
    CHECK(run(w).exitCode == 2);
    CHECK(run(job("basis", "hilbert", {5})).exitCode == 3);
    auto rel = job("relations", "unimodular226");
    rel.prec = 10;
    rel.trunc = 30;
    CHECK(run(rel).exitCode == 0); // precision grows to the truncation
    auto pre = job("certify", "unimodular226");
    pre.phi = "-25:0=1";
    pre.prec = 20;
    CHECK(run(pre).exitCode == 4);
    auto hp = job("heegner-points", "unimodular226");
    hp.norm = "-1";
    hp.gamma = "0";
    CHECK(run(hp).exitCode == 2);
    // validation happens before computation: a bad --phi on a command that ignores it
    auto stray = job("dim", "unimodular226");
    stray.phi = "-1:0=1";
    CHECK(run(stray).exitCode == 2);
}

TEST_CASE("run: deterministic output") {
    auto s = job("relations", "shifted", {3});
    s.weight = "11/2";
    s.trunc = 3;
    const auto a = run(s).render("json");
    CHECK(a == run(s).render("json"));
    CHECK(run(s).render("text").find("rank_bound: 2") != std::string::npos);
}

TEST_CASE("run: heegner-points") {
    auto s = job("heegner-points", "modularCurve", {1});
    s.norm = "-3/4";
    s.gamma = "1";
    s.bound = 3;
    const auto r = run(s);
    REQUIRE(r.exitCode == 0);
    CHECK(r.report["count"] == 12);
}
