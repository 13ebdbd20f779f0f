#include "fraclab/field_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace fraclab {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view text, const char* what) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw std::runtime_error(std::string("malformed field file: bad ") + what + " '" +
                             std::string(text) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string_view header_value(const std::string& header, const std::string& key) {
  const std::string token = " " + key + "=";
  const auto pos = header.find(token);
  if (pos == std::string::npos)
    throw std::runtime_error("malformed field file: header lacks " + key);
  std::string_view rest(header);
  rest.remove_prefix(pos + token.size());
  return rest.substr(0, rest.find(' '));
}

}  // namespace

void write_field(std::ostream& out, const ScalarField& field) {
  const Grid& g = field.grid();
  out << "# fraclab-field v1 n=" << g.dim() << " N=" << g.per_axis()
      << " L=" << format_double(g.half_extent()) << " periodic=" << (g.periodic() ? 1 : 0) << '\n';
  for (double v : field.values()) out << format_double(v) << '\n';
}

ScalarField read_field(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.rfind("# fraclab-field v1", 0) != 0)
    throw std::runtime_error("malformed field file: missing fraclab-field v1 header");
  header += ' ';
  const double n = parse_double(header_value(header, "n"), "n");
  const double N = parse_double(header_value(header, "N"), "N");
  const double L = parse_double(header_value(header, "L"), "L");
  const std::string_view per = header_value(header, "periodic");
  if (per != "0" && per != "1") throw std::runtime_error("malformed field file: bad periodic flag");
  if (n != static_cast<int>(n) || N != static_cast<std::size_t>(N) || N < 0)
    throw std::runtime_error("malformed field file: non-integer n or N");
  Grid grid(static_cast<int>(n), static_cast<std::size_t>(N), L, per == "1");
  std::vector<double> values;
  values.reserve(grid.size());
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty()) continue;
    if (values.size() == grid.size())
      throw std::runtime_error("malformed field file: more values than the grid holds");
    values.push_back(parse_double(t, "value"));
  }
  if (values.size() != grid.size())
    throw std::runtime_error("malformed field file: expected " + std::to_string(grid.size()) +
                             " values, found " + std::to_string(values.size()));
  return ScalarField(grid, std::move(values));
}

void save_field(const std::filesystem::path& path, const ScalarField& field) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_field(out, field);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

ScalarField load_field(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_field(in);
}

}  // namespace fraclab
