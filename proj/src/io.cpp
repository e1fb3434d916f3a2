#include "io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "error.hpp"

namespace rocsbb {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) {
    // trim surrounding whitespace and CR
    auto b = field.find_first_not_of(" \t\r");
    auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, std::size_t line_no) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw_data("line " + std::to_string(line_no) + ": unparseable value '" + text + "'");
  }
  return v;
}

}  // namespace

ThreeGroupSample load_csv(const std::string& path, const CsvColumns& columns) {
  std::ifstream in(path);
  if (!in) throw_data("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw_data("'" + path + "' is empty");
  const auto header = split_csv_line(line);

  std::size_t group_idx = header.size(), value_idx = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == columns.group_column) group_idx = i;
    if (header[i] == columns.value_column) value_idx = i;
  }
  if (group_idx == header.size()) throw_data("missing column '" + columns.group_column + "'");
  if (value_idx == header.size()) throw_data("missing column '" + columns.value_column + "'");

  ThreeGroupSample sample;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() <= std::max(group_idx, value_idx)) {
      throw_data("line " + std::to_string(line_no) + ": too few fields");
    }
    const double v = parse_double(fields[value_idx], line_no);
    const std::string& label = fields[group_idx];
    if (label == columns.labels[0]) {
      sample.y1.push_back(v);
    } else if (label == columns.labels[1]) {
      sample.y2.push_back(v);
    } else if (label == columns.labels[2]) {
      sample.y3.push_back(v);
    } else {
      throw_data("line " + std::to_string(line_no) + ": unknown group label '" + label + "'");
    }
  }

  for (int g = 0; g < 3; ++g) {
    const std::size_t n = g == 0 ? sample.n1() : g == 1 ? sample.n2() : sample.n3();
    if (n == 0) throw_data("no rows for group '" + columns.labels[g] + "' in '" + path + "'");
  }
  sample.validate();
  return sample;
}

std::string format_double(double v) {
  // Shortest decimal that round-trips; %.17g always does, shorter forms are
  // used when they reload exactly.
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) return buf;
  }
  return buf;
}

void write_surface_csv(const std::string& path, const RocSurfaceEstimate& surface) {
  std::ofstream out(path, std::ios::binary);  // binary: LF line endings everywhere
  if (!out) throw_data("cannot write '" + path + "'");
  out << "p1,p3,rocs\n";
  for (std::size_t i = 0; i < surface.grid.np1(); ++i) {
    for (std::size_t j = 0; j < surface.grid.np3(); ++j) {
      out << format_double(surface.grid.p1_points[i]) << ','
          << format_double(surface.grid.p3_points[j]) << ','
          << format_double(surface.values(i, j)) << '\n';
    }
  }
  if (!out) throw_data("write failed for '" + path + "'");
}

RocSurfaceEstimate read_surface_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_data("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != std::vector<std::string>{"p1", "p3", "rocs"}) {
    throw_data("'" + path + "': expected header p1,p3,rocs");
  }

  std::vector<double> p1s, p3s, values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) throw_data("line " + std::to_string(line_no) + ": expected 3 fields");
    p1s.push_back(parse_double(fields[0], line_no));
    p3s.push_back(parse_double(fields[1], line_no));
    values.push_back(parse_double(fields[2], line_no));
  }
  if (values.empty()) throw_data("'" + path + "': no data rows");

  // Rows are p1-major: p3 cycles fastest.
  std::vector<double> p3_axis;
  p3_axis.push_back(p3s[0]);
  for (std::size_t k = 1; k < p3s.size(); ++k) {
    if (p3s[k] == p3s[0]) break;
    p3_axis.push_back(p3s[k]);
  }
  const std::size_t np3 = p3_axis.size();
  if (values.size() % np3 != 0) throw_data("'" + path + "': ragged surface grid");
  const std::size_t np1 = values.size() / np3;

  RocSurfaceEstimate surface;
  surface.grid.p3_points = p3_axis;
  surface.grid.p1_points.reserve(np1);
  for (std::size_t i = 0; i < np1; ++i) surface.grid.p1_points.push_back(p1s[i * np3]);
  surface.grid.validate();
  surface.values = Matrix(np1, np3);
  surface.values.data() = std::move(values);
  return surface;
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t sample_checksum(const ThreeGroupSample& sample) {
  std::string canon;
  for (int g = 0; g < 3; ++g) {
    const auto& y = g == 0 ? sample.y1 : g == 1 ? sample.y2 : sample.y3;
    for (double v : y) {
      canon += std::to_string(g + 1);
      canon += ',';
      canon += format_double(v);
      canon += '\n';
    }
  }
  return fnv1a64(canon.data(), canon.size());
}

}  // namespace rocsbb
