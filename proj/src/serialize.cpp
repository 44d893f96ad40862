#include "vvmf/serialize.hpp"

#include "vvmf/errors.hpp"

#include <sstream>

namespace vvmf {

namespace {

std::string str(const Rational& x) { return toString(x); }
std::string str(const Integer& x) { return toString(x); }

Rational rationalField(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string())
        throw InputError(std::string("missing rational field '") + key + "'");
    return parseRational(j.at(key).get<std::string>());
}

Integer integerField(const Json& j, const char* key) {
    const auto r = rationalField(j, key);
    if (!isInteger(r))
        throw InputError(std::string("field '") + key + "' is not an integer");
    return r.get_num();
}

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::size_t elementField(const Json& j, const FiniteQuadraticModule& fqm) {
    return parseElement(member(j, "gamma").get<std::string>(), fqm);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\n");
    return s.substr(b, e - b + 1);
}

} // namespace

Json toJson(const FiniteQuadraticModule& fqm) {
    Json gram = Json::array();
    for (std::size_t i = 0; i < fqm.dualGram().rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < fqm.dualGram().cols(); ++j)
            row.push_back(str(fqm.dualGram()(i, j)));
        gram.push_back(std::move(row));
    }
    return Json{{"divisors", fqm.elementaryDivisors()}, {"dual_gram", std::move(gram)}};
}

FiniteQuadraticModule fqmFromJson(const Json& j) {
    const auto divisors = member(j, "divisors").get<std::vector<std::int64_t>>();
    const auto& rows = member(j, "dual_gram");
    RationalMatrix gram(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size())
            throw InputError("dual_gram is not square");
        for (std::size_t k = 0; k < rows.size(); ++k)
            gram(i, k) = parseRational(rows[i][k].get<std::string>());
    }
    return FiniteQuadraticModule(divisors, std::move(gram));
}

Json toJson(const FormExpansion& f) {
    Json coeffs = Json::array();
    for (const auto& [key, c] : f.coefficients)
        coeffs.push_back({{"gamma", f.fqm.elementLabel(key.first)}, {"n", str(key.second)}, {"c", str(c)}});
    return Json{{"weight", str(f.weight)},
                {"dual", f.dual},
                {"truncation", str(f.truncation)},
                {"discriminant_form", toJson(f.fqm)},
                {"coefficients", std::move(coeffs)}};
}

FormExpansion formExpansionFromJson(const Json& j) {
    FormExpansion f{rationalField(j, "weight"), member(j, "dual").get<bool>(),
                    fqmFromJson(member(j, "discriminant_form")), rationalField(j, "truncation"), {}};
    for (const auto& t : member(j, "coefficients"))
        f.coefficients.emplace(std::pair{f.fqm.orbitRepresentative(elementField(t, f.fqm)), rationalField(t, "n")},
                               rationalField(t, "c"));
    if (const auto bad = expansionViolation(f))
        throw InputError("form expansion: " + *bad);
    return f;
}

Json toJson(const PrincipalPart& p) {
    Json terms = Json::array();
    for (const auto& [key, c] : p.terms())
        terms.push_back({{"n", str(key.second)}, {"gamma", p.fqm().elementLabel(key.first)}, {"coeff", str(c)}});
    return Json{{"discriminant_form", toJson(p.fqm())}, {"terms", std::move(terms)}};
}

PrincipalPart principalPartFromJson(const Json& j) {
    PrincipalPart p(fqmFromJson(member(j, "discriminant_form")));
    for (const auto& t : member(j, "terms"))
        p.set(elementField(t, p.fqm()), rationalField(t, "n"), rationalField(t, "coeff"));
    return p;
}

Json toJson(const RelationCertificate& c) {
    const auto& fqm = c.principalPart.fqm();
    Json relation = Json::array();
    for (const auto& d : c.divisor)
        relation.push_back({{"n", str(d.n)}, {"gamma", fqm.elementLabel(d.gamma)}, {"coeff", str(d.coefficient)}});
    Json residuals = Json::array();
    for (const auto& r : c.residuals)
        residuals.push_back(str(r));
    Json audit = Json::array();
    for (const auto& a : c.audit)
        audit.push_back(
            {{"n", str(a.n)}, {"gamma", fqm.elementLabel(a.gamma)}, {"multiplicity", str(a.multiplicity)}});
    return Json{{"principal_part", toJson(c.principalPart)},
                {"lift_weight", str(c.liftWeight)},
                {"relation", std::move(relation)},
                {"residuals", std::move(residuals)},
                {"basis_fingerprint", c.basisFingerprint},
                {"audit", std::move(audit)}};
}

RelationCertificate certificateFromJson(const Json& j) {
    RelationCertificate c{principalPartFromJson(member(j, "principal_part")),
                          rationalField(j, "lift_weight"),
                          {},
                          {},
                          member(j, "basis_fingerprint").get<std::string>(),
                          {}};
    const auto& fqm = c.principalPart.fqm();
    for (const auto& d : member(j, "relation"))
        c.divisor.push_back({rationalField(d, "n"), fqm.orbitRepresentative(elementField(d, fqm)),
                             integerField(d, "coeff")});
    for (const auto& r : member(j, "residuals"))
        c.residuals.push_back(parseRational(r.get<std::string>()));
    for (const auto& a : member(j, "audit"))
        c.audit.push_back({rationalField(a, "n"), fqm.orbitRepresentative(elementField(a, fqm)),
                           integerField(a, "multiplicity")});
    return c;
}

Json toJson(const RelationLattice& r) {
    // coordinates carry element indices; labels need the form, which the caller adds
    Json coords = Json::array();
    for (const auto& [g, n] : r.coordinates)
        coords.push_back({{"index", g}, {"n", str(n)}});
    Json rels = Json::array();
    for (const auto& v : r.relations) {
        Json row = Json::array();
        for (const auto& x : v)
            row.push_back(str(x));
        rels.push_back(std::move(row));
    }
    return Json{{"rank_bound", r.rankBound}, {"coordinates", std::move(coords)}, {"relations", std::move(rels)}};
}

RelationLattice relationLatticeFromJson(const Json& j) {
    RelationLattice r;
    r.rankBound = member(j, "rank_bound").get<std::size_t>();
    for (const auto& c : member(j, "coordinates"))
        r.coordinates.emplace_back(member(c, "index").get<std::size_t>(), rationalField(c, "n"));
    for (const auto& row : member(j, "relations")) {
        IntegerVector v;
        for (const auto& x : row) {
            const auto q = parseRational(x.get<std::string>());
            if (!isInteger(q))
                throw InputError("relation entry is not an integer");
            v.push_back(q.get_num());
        }
        if (v.size() != r.coordinates.size())
            throw InputError("relation length does not match the coordinates");
        r.relations.push_back(std::move(v));
    }
    return r;
}

Json toJson(const HeegnerPoint& p) {
    return Json{{"A", p.a},
                {"B", p.b},
                {"C", p.c},
                {"tau",
                 {{"re", str(p.realPart)}, {"im_coefficient", str(p.imagCoefficient)}, {"im_radicand", p.imagRadicand}}}};
}

HeegnerPoint heegnerPointFromJson(const Json& j) {
    const auto& tau = member(j, "tau");
    return {member(j, "A").get<std::int64_t>(),     member(j, "B").get<std::int64_t>(),
            member(j, "C").get<std::int64_t>(),     rationalField(tau, "re"),
            rationalField(tau, "im_coefficient"), member(tau, "im_radicand").get<std::int64_t>()};
}

std::size_t parseElement(const std::string& raw, const FiniteQuadraticModule& fqm) {
    const auto text = trim(raw);
    const auto& divisors = fqm.elementaryDivisors();
    std::vector<std::int64_t> coords;
    try {
        if (!text.empty() && text.front() == '(') {
            if (text.back() != ')')
                throw InputError("unterminated tuple");
            std::stringstream in(text.substr(1, text.size() - 2));
            std::string part;
            while (std::getline(in, part, ','))
                coords.push_back(std::stoll(trim(part)));
        } else {
            std::size_t used = 0;
            const auto v = std::stoll(text, &used);
            if (used != text.size())
                throw InputError("trailing characters");
            if (divisors.size() > 1)
                throw InputError("group is not cyclic; give the class as a tuple (a,b,...)");
            coords.push_back(v);
        }
    } catch (const std::logic_error&) {
        throw InputError("cannot parse class '" + raw + "'");
    } catch (const InputError& e) {
        throw InputError("cannot parse class '" + raw + "': " + e.what());
    }
    if (divisors.empty()) {
        for (auto c : coords)
            if (c != 0)
                throw InputError("trivial group has only the class 0");
        return 0;
    }
    if (coords.size() != divisors.size())
        throw InputError("class '" + raw + "' has " + std::to_string(coords.size()) + " coordinates, expected " +
                         std::to_string(divisors.size()));
    for (std::size_t i = 0; i < coords.size(); ++i)
        coords[i] = mod64(coords[i], divisors[i]);
    return fqm.indexOf(coords);
}

PrincipalPart parsePrincipalPart(const std::string& text, const FiniteQuadraticModule& fqm) {
    PrincipalPart p(fqm);
    std::stringstream in(text);
    std::string term;
    while (std::getline(in, term, ';')) {
        term = trim(term);
        if (term.empty())
            continue;
        const auto colon = term.find(':');
        const auto eq = term.find('=');
        if (colon == std::string::npos || eq == std::string::npos || eq < colon)
            throw InputError("principal part term '" + term + "' is not of the form n:gamma=coeff");
        const auto n = parseRational(trim(term.substr(0, colon)));
        const auto gamma = parseElement(term.substr(colon + 1, eq - colon - 1), fqm);
        const auto c = parseRational(trim(term.substr(eq + 1)));
        p.set(gamma, n, p.get(gamma, n) + c);
    }
    return p;
}

} // namespace vvmf
