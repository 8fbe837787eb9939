#include "grushin/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "grushin/errors.hpp"

namespace grushin {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& where,
                    std::initializer_list<const char*> allowed) {
    if (!j.is_object())
        throw ConfigError(where + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) known = known || it.key() == k;
        if (!known)
            throw ConfigError(where + ": unknown key \"" + it.key() + "\"");
    }
}

double get_num(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key))
        throw ConfigError(where + ": missing key \"" + key + "\"");
    if (!j.at(key).is_number())
        throw ConfigError(where + ": key \"" + key + "\" must be a number");
    return j.at(key).get<double>();
}

Nonlinearity parse_nonlinearity(const json& j, double k) {
    reject_unknown(j, "nonlinearity", {"kind", "p"});
    if (!j.contains("kind"))
        throw ConfigError("nonlinearity: missing \"kind\"");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "power")
        return Nonlinearity::pure_power(get_num(j, "p", "nonlinearity"), k);
    const std::string preset_tag = "preset:";
    if (kind.rfind(preset_tag, 0) == 0) {
        if (j.contains("p"))
            throw ConfigError("nonlinearity: preset kinds take no \"p\"");
        return Nonlinearity::preset(kind.substr(preset_tag.size()), k);
    }
    throw ConfigError("nonlinearity: unknown kind \"" + kind +
                      "\" (expected \"power\" or \"preset:<name>\")");
}

MpaCfg parse_solver(const json& j) {
    reject_unknown(j, "solver",
                   {"path_points", "descent_step0", "armijo_c", "grad_tol",
                    "max_outer", "newton_switch"});
    MpaCfg cfg;
    if (j.contains("path_points")) cfg.path_points = j.at("path_points").get<int>();
    if (j.contains("descent_step0")) cfg.descent_step0 = get_num(j, "descent_step0", "solver");
    if (j.contains("armijo_c")) cfg.armijo_c = get_num(j, "armijo_c", "solver");
    if (j.contains("grad_tol")) cfg.grad_tol = get_num(j, "grad_tol", "solver");
    if (j.contains("max_outer")) cfg.max_outer = j.at("max_outer").get<int>();
    if (j.contains("newton_switch")) cfg.newton_switch = get_num(j, "newton_switch", "solver");
    cfg.validate();
    return cfg;
}

LinearSolverCfg parse_linear(const json& j) {
    reject_unknown(j, "linear", {"tol", "max_iter"});
    LinearSolverCfg cfg;
    if (j.contains("tol")) cfg.tol = get_num(j, "tol", "linear");
    if (j.contains("max_iter")) cfg.max_iter = j.at("max_iter").get<int>();
    if (!(cfg.tol > 0.0 && cfg.tol < 1.0))
        throw ConfigError("linear: tol must lie in (0,1)");
    if (j.contains("max_iter") && cfg.max_iter < 1)
        throw ConfigError("linear: max_iter must be >= 1");
    return cfg;
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    reject_unknown(j, "config",
                   {"domain", "k", "nonlinearity", "grid", "solver", "linear",
                    "seed", "out_dir", "format", "q", "field", "p_list",
                    "k_list", "grids"});

    RunConfig cfg;
    if (!j.contains("domain")) throw ConfigError("config: missing \"domain\"");
    cfg.domain = Domain::from_json(j.at("domain"));

    cfg.k = j.contains("k") ? get_num(j, "k", "config") : 1.0;
    if (!(cfg.k > 0.0)) throw ConfigError("config: k must be positive");

    if (!j.contains("nonlinearity"))
        throw ConfigError("config: missing \"nonlinearity\"");
    cfg.nonlinearity = parse_nonlinearity(j.at("nonlinearity"), cfg.k);

    if (!j.contains("grid")) throw ConfigError("config: missing \"grid\"");
    reject_unknown(j.at("grid"), "grid", {"nx", "ny"});
    cfg.nx = static_cast<int>(get_num(j.at("grid"), "nx", "grid"));
    cfg.ny = static_cast<int>(get_num(j.at("grid"), "ny", "grid"));
    if (cfg.nx < 8 || cfg.ny < 8)
        throw ConfigError("grid: nx and ny must be >= 8");

    if (j.contains("solver")) cfg.solver = parse_solver(j.at("solver"));
    if (j.contains("linear")) cfg.linear = parse_linear(j.at("linear"));

    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned())
            throw ConfigError("config: seed must be an unsigned integer");
        cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();

    if (j.contains("format")) {
        std::string f = j.at("format").get<std::string>();
        if (f == "csv") cfg.format = OutputFormat::Csv;
        else if (f == "json") cfg.format = OutputFormat::Json;
        else throw ConfigError("config: format must be \"csv\" or \"json\"");
    }

    if (j.contains("q")) cfg.q = get_num(j, "q", "config");
    if (j.contains("field")) cfg.field_path = j.at("field").get<std::string>();
    auto read_list = [&](const char* key, auto& out) {
        if (!j.contains(key)) return;
        if (!j.at(key).is_array())
            throw ConfigError(std::string("config: ") + key + " must be an array");
        for (const auto& v : j.at(key)) {
            if (!v.is_number())
                throw ConfigError(std::string("config: ") + key + " entries must be numbers");
            out.push_back(v.get<typename std::decay_t<decltype(out)>::value_type>());
        }
    };
    read_list("p_list", cfg.p_list);
    read_list("k_list", cfg.k_list);
    read_list("grids", cfg.grids);
    for (int n : cfg.grids)
        if (n < 8) throw ConfigError("config: grids entries must be >= 8");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace grushin
