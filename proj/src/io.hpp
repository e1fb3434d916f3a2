#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "core.hpp"

namespace rocsbb {

struct CsvColumns {
  std::string group_column = "group";
  std::string value_column = "value";
  // Labels mapped onto groups 1, 2, 3 in order.
  std::array<std::string, 3> labels{"1", "2", "3"};
};

// Loads a three-group dataset from CSV. Row order within each group is
// preserved; parse failures carry the 1-based line number.
ThreeGroupSample load_csv(const std::string& path, const CsvColumns& columns = {});

// Surface grid CSV: header "p1,p3,rocs", rows in p1-major order, values
// printed with up to 17 significant digits (lossless for 64-bit floats).
void write_surface_csv(const std::string& path, const RocSurfaceEstimate& surface);
RocSurfaceEstimate read_surface_csv(const std::string& path);

// Shortest-round-trip decimal for a double (17-significant-digit fallback).
std::string format_double(double v);

// FNV-1a 64-bit over the canonical "group,value" text of a sample; used for
// input checksums in run manifests.
std::uint64_t sample_checksum(const ThreeGroupSample& sample);
std::uint64_t fnv1a64(const void* data, std::size_t len);

}  // namespace rocsbb
