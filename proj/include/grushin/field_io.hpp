#pragma once

#include <string>

#include "grushin/grid.hpp"

namespace grushin {

// Plain-text field dump.  Header:
//   # grushin-field nx=<nx> ny=<ny> k=<k> domain=<json>
// then one line per grid node, row-major in i:
//   i j x y value inside
// Values are printed with 17 significant digits so a dump/load round trip is
// bit exact.
void dump_field(const ScalarField& u, double k, const std::string& path);

struct LoadedField {
    Grid grid;
    std::vector<double> values; // per interior unknown, same order as grid
    double k = 0;
};

LoadedField load_field(const std::string& path);

} // namespace grushin
