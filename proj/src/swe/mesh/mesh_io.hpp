#pragma once
#include <string>

#include "swe/mesh/mesh.hpp"

namespace swe {

// Columnar text format, sections [header] [cells] [edges] [vertices]
// [boundary]. Floats are written as shortest round-trip decimals; geometry is
// recomputed from the stored generator coordinates on load and checked
// against the stored values, so save -> load reproduces every field
// bit-exactly and re-saving an unmodified mesh is byte-identical.
void save_mesh(const Mesh& m, const std::string& path);
Mesh load_mesh(const std::string& path);

std::string format_double(double x);  // shortest round-trip decimal

}  // namespace swe
