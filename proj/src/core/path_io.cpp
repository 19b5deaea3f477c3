#include "rsde/path_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rsde/error.hpp"

namespace rsde {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view field, std::size_t line) {
  field = trim(field);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": cannot parse '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

StepPath read_path_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  std::vector<double> times;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    auto view = trim(line);
    if (view.empty() || view.front() == '#') {
      continue;
    }
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      auto comma = view.find(',', start);
      fields.push_back(view.substr(start, comma == std::string_view::npos ? comma : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (columns == 0) {
      if (fields.size() < 2 || trim(fields[0]) != "t") {
        fail(ErrorCode::ParseError, "expected header 't,x1,...,xd'");
      }
      columns = fields.size();
      continue;
    }
    if (fields.size() != columns) {
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected " + std::to_string(columns) +
                                      " fields, got " + std::to_string(fields.size()));
    }
    times.push_back(parse_number(fields[0], line_no));
    for (std::size_t c = 1; c < columns; ++c) {
      values.push_back(parse_number(fields[c], line_no));
    }
  }
  if (columns == 0) {
    fail(ErrorCode::ParseError, "missing CSV header");
  }
  if (times.empty()) {
    fail(ErrorCode::ParseError, "CSV has no data rows");
  }
  return StepPath::make(std::move(times), std::move(values), columns - 1);
}

StepPath read_path_csv(const std::string& file) {
  std::ifstream in(file);
  if (!in) {
    fail(ErrorCode::IoError, "cannot open " + file);
  }
  return read_path_csv(in);
}

void write_path_csv(std::ostream& out, const StepPath& path) {
  out << "t";
  for (std::size_t c = 1; c <= path.dim(); ++c) {
    out << ",x" << c;
  }
  out << '\n';
  for (std::size_t i = 0; i < path.size(); ++i) {
    out << format_number(path.time(i));
    for (std::size_t c = 0; c < path.dim(); ++c) {
      out << ',' << format_number(path.value(i, c));
    }
    out << '\n';
  }
}

void write_path_csv(const std::string& file, const StepPath& path) {
  std::ofstream out(file);
  if (!out) {
    fail(ErrorCode::IoError, "cannot write " + file);
  }
  write_path_csv(out, path);
}

std::string path_to_csv(const StepPath& path) {
  std::ostringstream out;
  write_path_csv(out, path);
  return out.str();
}

}  // namespace rsde
