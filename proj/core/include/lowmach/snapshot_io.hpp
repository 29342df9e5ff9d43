#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lowmach/field.hpp"

namespace lowmach {

/// Real samples of a set of named scalar components at one instant.
///
/// On disk (little-endian, see docs/snapshot_format.md):
///   char[8]  magic "LMSNAP01"
///   u32      version (= 1)
///   u32      dim, n, ncomp
///   f64      time
///   ncomp x char[16]   component labels, NUL padded
///   ncomp x n^dim f64  samples, row-major with axis 0 slowest
struct Snapshot {
  TorusGrid grid{2, 4};
  double time = 0.0;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> components;

  void add(std::string label, const ScalarField& f);
  void add(const std::string& label, const VectorField& v);
  ScalarField field(std::size_t component) const;
};

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace lowmach
