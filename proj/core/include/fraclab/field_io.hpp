#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "fraclab/grid.hpp"

namespace fraclab {

// Text format: header "# fraclab-field v1 n=<n> N=<N> L=<L> periodic=<0|1>",
// then one value per line in row-major order. Values use the shortest
// representation that round-trips, so write then read is bit-exact.
void write_field(std::ostream& out, const ScalarField& field);
ScalarField read_field(std::istream& in);

void save_field(const std::filesystem::path& path, const ScalarField& field);
ScalarField load_field(const std::filesystem::path& path);

std::string format_double(double value);

}  // namespace fraclab
