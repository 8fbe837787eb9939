#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grushin/domain.hpp"
#include "grushin/linsolve.hpp"
#include "grushin/nonlinearity.hpp"
#include "grushin/solvers.hpp"

namespace grushin {

enum class OutputFormat { Csv, Json };

// One JSON document drives every subcommand.  Parsing is strict: unknown
// keys anywhere in the document are rejected before any computation.
struct RunConfig {
    Domain domain;
    double k = 1.0;
    Nonlinearity nonlinearity;
    int nx = 0, ny = 0;
    MpaCfg solver;
    LinearSolverCfg linear;
    std::uint64_t seed = 0;
    std::string out_dir;
    OutputFormat format = OutputFormat::Csv;

    // Subcommand extras.
    std::optional<double> q;               // embed
    std::optional<std::string> field_path; // pohozaev
    std::vector<double> p_list;            // sweep
    std::vector<double> k_list;            // sweep
    std::vector<int> grids;                // sweep / trend refinement levels
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

} // namespace grushin
