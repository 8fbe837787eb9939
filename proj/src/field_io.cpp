#include "grushin/field_io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "grushin/errors.hpp"

namespace grushin {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void dump_field(const ScalarField& u, double k, const std::string& path) {
    const Grid& g = *u.grid;
    std::ofstream out(path, std::ios::binary); // binary: keep '\n' exact
    if (!out)
        throw ConfigError("dump_field: cannot open " + path);
    out << "# grushin-field nx=" << g.nx << " ny=" << g.ny << " k=" << fmt17(k)
        << " domain=" << g.domain.to_json().dump() << "\n";
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            int n = g.index(i, j);
            double v = n >= 0 ? u.values[n] : 0.0;
            out << i << ' ' << j << ' ' << fmt17(g.x_coord(i)) << ' '
                << fmt17(g.y_coord(j)) << ' ' << fmt17(v) << ' '
                << (n >= 0 ? 1 : 0) << "\n";
        }
    }
    if (!out)
        throw ConfigError("dump_field: write failed for " + path);
}

LoadedField load_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("load_field: cannot open " + path);
    std::string header;
    std::getline(in, header);
    const std::string tag = "# grushin-field ";
    if (header.rfind(tag, 0) != 0)
        throw ConfigError("load_field: not a grushin-field file: " + path);

    int nx = 0, ny = 0;
    double k = 0;
    std::string domain_json;
    {
        std::istringstream hs(header.substr(tag.size()));
        std::string tok;
        while (hs >> tok) {
            if (tok.rfind("nx=", 0) == 0) nx = std::stoi(tok.substr(3));
            else if (tok.rfind("ny=", 0) == 0) ny = std::stoi(tok.substr(3));
            else if (tok.rfind("k=", 0) == 0) k = std::strtod(tok.substr(2).c_str(), nullptr);
            else if (tok.rfind("domain=", 0) == 0) domain_json = tok.substr(7);
            else throw ConfigError("load_field: unknown header token " + tok);
        }
    }
    if (nx <= 0 || ny <= 0 || domain_json.empty())
        throw ConfigError("load_field: incomplete header in " + path);

    LoadedField lf;
    lf.k = k;
    lf.grid = build_grid(Domain::from_json(nlohmann::json::parse(domain_json)), nx, ny);
    lf.values.assign(lf.grid.count(), 0.0);

    std::string line;
    long expected = static_cast<long>(nx) * ny;
    long seen = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        int i, j, inside;
        double x, y, v;
        if (std::sscanf(line.c_str(), "%d %d %lf %lf %lf %d", &i, &j, &x, &y, &v,
                        &inside) != 6)
            throw ConfigError("load_field: malformed line: " + line);
        int n = lf.grid.index(i, j);
        if ((n >= 0) != (inside == 1))
            throw ConfigError("load_field: interior mask mismatch at node " +
                              std::to_string(i) + "," + std::to_string(j));
        if (n >= 0) lf.values[n] = v;
        ++seen;
    }
    if (seen != expected)
        throw ConfigError("load_field: expected " + std::to_string(expected) +
                          " node lines, found " + std::to_string(seen));
    return lf;
}

} // namespace grushin
