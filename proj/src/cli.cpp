#include "vvmf/cli.hpp"

#include "vvmf/dimension.hpp"
#include "vvmf/errors.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace vvmf {

const std::vector<std::string>& commandNames() {
    static const std::vector<std::string> names = {"discform", "weilrep",   "dim",       "basis",
                                                   "realizable", "certify", "relations", "heegner-points"};
    return names;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

IntMatrix parseRows(const std::vector<std::string>& lines) {
    IntMatrix gram;
    for (auto line : lines) {
        for (auto& ch : line)
            if (ch == ',' || ch == '[' || ch == ']')
                ch = ' ';
        std::istringstream in(line);
        std::vector<std::int64_t> row;
        std::string tok;
        while (in >> tok) {
            try {
                std::size_t used = 0;
                row.push_back(std::stoll(tok, &used));
                if (used != tok.size())
                    throw std::invalid_argument(tok);
            } catch (const std::logic_error&) {
                throw InputError("Gram entry '" + tok + "' is not an integer");
            }
        }
        if (!row.empty())
            gram.push_back(std::move(row));
    }
    return gram;
}

} // namespace

Lattice parseLatticeFile(const std::string& contents, const std::string& fallbackName) {
    const auto text = trim(contents);
    if (!text.empty() && text.front() == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::exception& e) {
            throw InputError(std::string("lattice file is not valid JSON: ") + e.what());
        }
        if (!j.contains("gram") || !j["gram"].is_array())
            throw InputError("lattice file needs a \"gram\" array");
        IntMatrix gram;
        try {
            gram = j["gram"].get<IntMatrix>();
        } catch (const Json::exception&) {
            throw InputError("Gram matrix entries must be integers");
        }
        return Lattice(gram, j.value("name", fallbackName));
    }
    std::string name = fallbackName;
    std::vector<std::string> rows;
    bool inGram = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line.substr(0, line.find('#')));
        if (line.empty())
            continue;
        if (line.rfind("name:", 0) == 0) {
            name = trim(line.substr(5));
            inGram = false;
        } else if (line.rfind("gram:", 0) == 0) {
            inGram = true;
            if (const auto rest = trim(line.substr(5)); !rest.empty())
                rows.push_back(rest);
        } else if (inGram) {
            rows.push_back(line);
        } else {
            throw InputError("unexpected line in lattice file: '" + line + "'");
        }
    }
    if (rows.empty())
        throw InputError("lattice file has no 'gram:' rows");
    return Lattice(parseRows(rows), name);
}

Lattice loadLattice(const std::string& source, const std::vector<std::int64_t>& params) {
    if (source.empty())
        throw InputError("--lattice is required");
    if (std::filesystem::is_regular_file(source)) {
        if (!params.empty())
            throw InputError("--params applies to catalog lattices only");
        std::ifstream in(source);
        std::stringstream buf;
        buf << in.rdbuf();
        return parseLatticeFile(buf.str(), std::filesystem::path(source).stem().string());
    }
    return catalog(source, params);
}

namespace {

// Everything parsed and checked before any real computation.
struct Prepared {
    Lattice lattice;
    FiniteQuadraticModule fqm;
    Rational weight;
    std::int64_t prec = -1;
    std::optional<PrincipalPart> phi;
};

Rational obstructionWeight(const Lattice& lat) { return 1 + makeRational(lat.signature().minus, 2); }

Json latticeHeader(const Lattice& lat) {
    return Json{{"name", lat.name()},
                {"rank", lat.rank()},
                {"signature", {lat.signature().plus, lat.signature().minus}},
                {"determinant", toString(lat.determinant())}};
}

bool needsWeight(const std::string& c) {
    return c == "dim" || c == "basis" || c == "realizable" || c == "certify" || c == "relations";
}

Prepared prepare(const JobSpec& job) {
    if (std::find(commandNames().begin(), commandNames().end(), job.command) == commandNames().end())
        throw InputError("unknown command '" + job.command + "'");
    if (job.format != "json" && job.format != "text")
        throw InputError("--format must be json or text");
    if (job.prec && *job.prec < 0)
        throw InputError("--prec must be nonnegative");
    if (job.trunc && *job.trunc < 0)
        throw InputError("--trunc must be nonnegative");
    if (job.bound && *job.bound < 0)
        throw InputError("--bound must be nonnegative");

    auto lattice = loadLattice(job.lattice, job.params);
    auto fqm = discriminantForm(lattice);
    Prepared p{lattice, fqm, obstructionWeight(lattice), job.prec.value_or(-1), std::nullopt};
    if (job.weight) {
        if (!needsWeight(job.command))
            throw InputError("--weight does not apply to " + job.command);
        p.weight = parseRational(*job.weight);
        requireHalfInteger(p.weight);
    }
    if (job.command == "realizable" || job.command == "certify") {
        if (trim(job.phi).empty())
            throw InputError("--phi is required for " + job.command);
        p.phi = parsePrincipalPart(job.phi, fqm);
    } else if (!job.phi.empty()) {
        throw InputError("--phi does not apply to " + job.command);
    }
    if (job.command == "heegner-points") {
        std::int64_t n = 0;
        if (!fqm.isCyclicModularCurveForm(n))
            throw InputError("heegner-points needs a modular-curve lattice (cyclic Z/2N with q = g^2/4N)");
        if (!job.norm || !job.gamma)
            throw InputError("heegner-points needs --norm and --gamma");
        (void)parseRational(*job.norm);
        (void)parseElement(*job.gamma, fqm);
    }
    if (!job.word.empty() && job.command != "weilrep")
        throw InputError("--word applies to weilrep only");
    if (!job.word.empty())
        (void)parseWord(job.word);
    return p;
}

Json cyclotomicJson(const CyclotomicNumber& x) {
    Json terms = Json::array();
    for (const auto& [e, c] : x.terms())
        terms.push_back({{"exp", e}, {"c", toString(c)}});
    return terms;
}

Json symbolicMatrix(const WeilRepresentation& w, char which, bool dual) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < w.dimension(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < w.dimension(); ++c) {
            const auto e = which == 'S' ? w.symbolicS(r, c, dual)
                           : which == 'T' ? w.symbolicT(r, c, dual)
                                          : w.symbolicZ(r, c, dual);
            if (e.zero)
                row.push_back(nullptr);
            else
                row.push_back({{"phase", toString(e.phase)}, {"sqrt_den", e.sqrtDenominator}});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json realizabilityJson(const Realizability& r) {
    Json res = Json::array();
    for (const auto& x : r.residuals)
        res.push_back(toString(x));
    return Json{{"realizable", r.realizable}, {"residuals", std::move(res)}};
}

Json execute(const JobSpec& job, const Prepared& p) {
    Json out{{"command", job.command}, {"lattice", latticeHeader(p.lattice)}};
    const auto& fqm = p.fqm;

    if (job.command == "discform") {
        Json table = Json::array();
        for (std::size_t g = 0; g < fqm.order(); ++g)
            table.push_back({{"gamma", fqm.elementLabel(g)}, {"q", toString(fqm.q(g))}, {"order", fqm.elementOrder(g)}});
        out["group"] = fqm.elementaryDivisors();
        out["order"] = fqm.order();
        out["level"] = level(fqm);
        out["signature_mod8"] = signatureMod8(fqm);
        out["q_table"] = std::move(table);
        out["discriminant_form"] = toJson(fqm);
        return out;
    }

    if (job.command == "weilrep") {
        const WeilRepresentation w(fqm, p.lattice.signature());
        out["dual"] = job.dual;
        out["entry_convention"] = "entry = e(phase) / sqrt(sqrt_den); null = 0; rows index outputs";
        Json labels = Json::array();
        for (std::size_t g = 0; g < fqm.order(); ++g)
            labels.push_back(fqm.elementLabel(g));
        out["basis"] = std::move(labels);
        out["S"] = symbolicMatrix(w, 'S', job.dual);
        out["T"] = symbolicMatrix(w, 'T', job.dual);
        out["Z"] = symbolicMatrix(w, 'Z', job.dual);
        if (!job.word.empty()) {
            const auto m = w.evaluate(parseWord(job.word), job.dual);
            Json rows = Json::array();
            for (std::size_t r = 0; r < m.matrix.size(); ++r) {
                Json row = Json::array();
                for (std::size_t c = 0; c < m.matrix.size(); ++c)
                    row.push_back(cyclotomicJson(m.matrix(r, c)));
                rows.push_back(std::move(row));
            }
            out["word"] = {{"word", formatWord(m.word)},
                           {"field_order", w.field().order()},
                           {"convention", "entry = sum c * zeta^exp with zeta = e(1/field_order)"},
                           {"matrix", std::move(rows)}};
        }
        return out;
    }

    out["weight"] = toString(p.weight);
    if (job.command == "dim") {
        const WeilRepresentation w(fqm, p.lattice.signature());
        out["z_eigenspace_dimension"] = zEigenspace(w, p.weight, true).representatives.size();
        out["dimension"] = dimHolModForm(w, p.weight, true);
        return out;
    }

    const auto trunc = job.trunc.value_or(-1);
    auto prec = p.prec;
    if (job.command == "relations" && trunc > prec)
        prec = trunc;
    const auto basis = vvmfBasis(p.lattice, p.weight, prec);
    out["basis_size"] = basis.size();
    out["basis_fingerprint"] = basisFingerprint(basis);

    if (job.command == "basis") {
        Json forms = Json::array();
        for (const auto& f : basis)
            forms.push_back(toJson(f));
        out["forms"] = std::move(forms);
        return out;
    }

    if (job.command == "realizable") {
        out["principal_part"] = toJson(*p.phi);
        const auto r = isRealizable(*p.phi, basis);
        const auto verdict = realizabilityJson(r);
        for (const auto& [k, v] : verdict.items())
            out[k] = v;
        if (!p.phi->hasConstantTerms()) {
            const auto sol = solveConstantTerms(*p.phi, basis);
            if (sol.completed) {
                out["completion"] = toJson(*sol.completed);
                out["completion_integral"] = sol.completed->isIntegral();
            } else {
                Json w = Json::array();
                for (const auto& x : sol.witness)
                    w.push_back(toString(x));
                out["completion_infeasible_witness"] = std::move(w);
            }
        }
        return out;
    }

    if (job.command == "certify") {
        out["certificate"] = toJson(certify(*p.phi, basis));
        return out;
    }

    if (job.command == "relations") {
        const auto t = trunc >= 0 ? trunc : (basis.empty() ? defaultPrecision(p.weight, 0)
                                                           : toInt64(floor(basis.front().truncation)));
        const auto rl = relationLattice(fqm, basis, t);
        out["truncation"] = t;
        auto body = toJson(rl);
        for (std::size_t i = 0; i < rl.coordinates.size(); ++i)
            body["coordinates"][i]["gamma"] = fqm.elementLabel(rl.coordinates[i].first);
        for (auto& [k, v] : body.items())
            out[k] = v;
        out["discriminant_form"] = toJson(fqm);
        return out;
    }

    throw InternalError("unhandled command " + job.command);
}

Json executeHeegner(const JobSpec& job, const Prepared& p) {
    std::int64_t n = 0;
    (void)p.fqm.isCyclicModularCurveForm(n);
    const auto norm = parseRational(*job.norm);
    const auto gamma = static_cast<std::int64_t>(parseElement(*job.gamma, p.fqm));
    const auto bound = job.bound.value_or(10);
    Json pts = Json::array();
    for (const auto& h : heegnerPoints(n, norm, gamma, bound))
        pts.push_back(toJson(h));
    return Json{{"command", job.command},
                {"lattice", latticeHeader(p.lattice)},
                {"N", n},
                {"n", toString(norm)},
                {"gamma", p.fqm.elementLabel(static_cast<std::size_t>(gamma))},
                {"bound", bound},
                {"count", pts.size()},
                {"points", std::move(pts)}};
}

Json errorJson(const char* kind, int code, const std::string& message) {
    return Json{{"error", {{"kind", kind}, {"exit_code", code}, {"message", message}}}};
}

} // namespace

std::string RunResult::render(const std::string& format) const {
    if (format != "text")
        return report.dump(2) + "\n";
    std::string s;
    for (const auto& [k, v] : report.items())
        s += k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    return s;
}

RunResult run(const JobSpec& job) {
    try {
        const auto prepared = prepare(job);
        if (job.command == "certify") {
            // refusal carries the residuals
            const auto basis = vvmfBasis(prepared.lattice, prepared.weight, prepared.prec);
            const auto r = isRealizable(*prepared.phi, basis);
            if (!r.realizable || !prepared.phi->isIntegral()) {
                auto j = errorJson("bad_input", 2,
                                   r.realizable ? "certificates need integral principal parts"
                                                : "principal part is not realizable");
                j["error"]["residuals"] = realizabilityJson(r)["residuals"];
                return {2, j};
            }
        }
        if (job.command == "heegner-points")
            return {0, executeHeegner(job, prepared)};
        return {0, execute(job, prepared)};
    } catch (const Error& e) {
        return {e.exitCode(), errorJson(e.kind(), e.exitCode(), e.what())};
    } catch (const std::exception& e) {
        return {5, errorJson("internal", 5, e.what())};
    }
}

} // namespace vvmf
