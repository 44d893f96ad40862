#include "vvmf/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Vector-valued modular forms for Weil representations: dimensions, bases and\n"
                 "obstruction checks for Borcherds products."};
    app.footer("Catalog lattices: modularCurve N, hilbert p, siegel N, shifted N, unimodular226.\n"
               "unimodular226 is the even unimodular lattice II_{2,26}; its obstruction weight is\n"
               "14 = 1 + 26/2. The default weight of every command is 1 + b-/2.\n"
               "Principal parts: --phi \"-1:0=1;0:0=-24\" (n:class=coefficient, ';' separated).");
    app.require_subcommand(1);

    vvmf::JobSpec job;
    std::string out;
    std::int64_t prec = -1, trunc = -1, bound = -1;
    std::string weight, norm, gamma;

    const auto common = [&](CLI::App* sub) {
        sub->add_option("--lattice", job.lattice, "catalog name or Gram file")->required();
        sub->add_option("--params", job.params, "catalog parameters")->delimiter(',');
        sub->add_option("--out", out, "write the report here instead of stdout");
        sub->add_option("--format", job.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    };
    const auto weighted = [&](CLI::App* sub) {
        sub->add_option("--weight", weight, "weight k, integer or k/2");
        sub->add_option("--prec", prec, "q-expansion precision");
    };

    for (const auto& name : vvmf::commandNames()) {
        auto* sub = app.add_subcommand(name);
        common(sub);
        if (name == "dim" || name == "basis" || name == "realizable" || name == "certify" || name == "relations")
            weighted(sub);
        if (name == "realizable" || name == "certify")
            sub->add_option("--phi", job.phi, "principal part n:class=c;...")->required();
        if (name == "relations")
            sub->add_option("--trunc", trunc, "relation truncation T");
        if (name == "weilrep") {
            sub->add_option("--word", job.word, "word in S, T, s, t (lower case = inverse)");
            sub->add_flag("--dual", job.dual, "report the dual representation");
        }
        if (name == "heegner-points") {
            sub->add_option("--norm", norm, "norm n < 0")->required();
            sub->add_option("--gamma", gamma, "class gamma")->required();
            sub->add_option("--bound", bound, "box bound for |A|, |B|, |C| (default 10)");
        }
        sub->callback([&job, sub] { job.command = sub->get_name(); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (!weight.empty())
        job.weight = weight;
    if (prec >= 0)
        job.prec = prec;
    if (trunc >= 0)
        job.trunc = trunc;
    if (bound >= 0)
        job.bound = bound;
    if (!norm.empty())
        job.norm = norm;
    if (!gamma.empty())
        job.gamma = gamma;

    const auto result = vvmf::run(job);
    const auto text = result.render(job.format);
    if (out.empty()) {
        (result.exitCode == 0 ? std::cout : std::cerr) << text;
    } else {
        std::ofstream file(out);
        if (!file) {
            std::cerr << "cannot open " << out << "\n";
            return 2;
        }
        file << text;
    }
    return result.exitCode;
}
