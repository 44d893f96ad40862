#pragma once

#include "vvmf/lattice.hpp"
#include "vvmf/serialize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace vvmf {

struct JobSpec {
    std::string command;
    std::string lattice;                 // catalog name or path to a Gram file
    std::vector<std::int64_t> params;
    std::optional<std::string> weight;   // "k" or "k/2"
    std::optional<std::int64_t> prec;
    std::optional<std::int64_t> trunc;
    std::string format = "json";         // json | text
    // command-specific
    std::string phi;                     // principal part "n:gamma=c;..."
    std::optional<std::string> norm;     // heegner-points: n
    std::optional<std::string> gamma;    // heegner-points: class
    std::optional<std::int64_t> bound;   // heegner-points: box bound
    std::string word;                    // weilrep: optional word over S, T, s, t
    bool dual = false;                   // weilrep: report rho* instead of rho
};

struct RunResult {
    int exitCode = 0;
    Json report;
    [[nodiscard]] std::string render(const std::string& format) const;
};

const std::vector<std::string>& commandNames();

/// Gram file: JSON {"name": ..., "gram": [[...]]} or text with "name:" and
/// "gram:" followed by one matrix row per line.
Lattice parseLatticeFile(const std::string& contents, const std::string& fallbackName);
Lattice loadLattice(const std::string& source, const std::vector<std::int64_t>& params);

/// Validates every field, then runs it. Library errors become an error
/// report and the matching exit code; nothing escapes.
RunResult run(const JobSpec& job);

} // namespace vvmf
