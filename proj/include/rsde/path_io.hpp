#pragma once

#include <iosfwd>
#include <string>

#include "rsde/path.hpp"

namespace rsde {

// CSV layout: header `t,x1,...,xd`, one row per grid time, sorted by t.
// Lines starting with '#' are comments. Numbers are written with 17
// significant digits so a write/read cycle is lossless.

StepPath read_path_csv(std::istream& in);
StepPath read_path_csv(const std::string& file);
void write_path_csv(std::ostream& out, const StepPath& path);
void write_path_csv(const std::string& file, const StepPath& path);
std::string path_to_csv(const StepPath& path);

/// Shortest-exact formatting with 17 significant digits.
std::string format_number(double value);

}  // namespace rsde
