#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "sictower/sic.hpp"

namespace sictower {

// Text format: optional '#' comment lines (a "# label: ..." line populates
// the label), a dimension line, then one "re im" pair per component with 17
// significant digits (bit-exact double round-trip).
Fiducial read_fiducial(std::istream& in);
Fiducial read_fiducial_file(const std::filesystem::path& path);

void write_fiducial(std::ostream& out, const Fiducial& f);
void write_fiducial_file(const std::filesystem::path& path, const Fiducial& f);

}  // namespace sictower
