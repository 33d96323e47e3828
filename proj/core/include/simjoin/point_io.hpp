#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "simjoin/bit_point.hpp"

namespace simjoin {

// Text format: a header line "d=<dim>", then one binary string of length d per
// line, most significant coordinate first. Blank lines are ignored.

PointSet read_point_set(std::istream& in);
PointSet read_point_set(const std::filesystem::path& path);

void write_point_set(std::ostream& out, const PointSet& set);
void write_point_set(const std::filesystem::path& path, const PointSet& set);

}  // namespace simjoin
