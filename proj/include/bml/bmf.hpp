#pragma once

#include <string>

#include "bml/grid.hpp"

namespace bml {

// BMF1 container: 8-byte magic "BMFLD1\0\0", 4-byte little-endian length of a
// UTF-8 JSON header {n, N, L, components, layout:"row-major"}, then raw
// little-endian float64 samples (component-major, row-major per component).
// Round trips are bit-exact.
void write_bmf(const std::string& path, const PhysicalField& field);
PhysicalField read_bmf(const std::string& path);

}  // namespace bml
