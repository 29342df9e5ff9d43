#include "lowmach/snapshot_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "lowmach/error.hpp"

namespace lowmach {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

namespace {

constexpr std::array<char, 8> kMagic{'L', 'M', 'S', 'N', 'A', 'P', '0', '1'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kLabelBytes = 16;

template <class T>
void put(std::ostream& os, const T& value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T value{};
  is.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!is) throw Error(Errc::Io, "truncated snapshot header");
  return value;
}

}  // namespace

void Snapshot::add(std::string label, const ScalarField& f) {
  if (components.empty()) grid = f.grid();
  require_same_grid(grid, f.grid(), "Snapshot::add");
  if (label.size() >= kLabelBytes) label.resize(kLabelBytes - 1);
  labels.push_back(std::move(label));
  components.push_back(f.samples());
}

void Snapshot::add(const std::string& label, const VectorField& v) {
  for (int c = 0; c < v.size(); ++c) add(label + std::to_string(c + 1), v[c]);
}

ScalarField Snapshot::field(std::size_t component) const {
  return ScalarField::from_samples(grid, components.at(component));
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(Errc::Io, "cannot open " + path.string() + " for writing");
  os.write(kMagic.data(), kMagic.size());
  put(os, kVersion);
  put(os, static_cast<std::uint32_t>(snap.grid.dim()));
  put(os, static_cast<std::uint32_t>(snap.grid.n()));
  put(os, static_cast<std::uint32_t>(snap.components.size()));
  put(os, snap.time);
  for (std::size_t c = 0; c < snap.components.size(); ++c) {
    std::array<char, kLabelBytes> label{};
    const std::string& name = c < snap.labels.size() ? snap.labels[c] : std::string();
    std::memcpy(label.data(), name.data(), std::min(name.size(), kLabelBytes - 1));
    os.write(label.data(), label.size());
  }
  for (const auto& comp : snap.components) {
    if (comp.size() != snap.grid.size()) {
      throw Error(Errc::InvalidArgument, "snapshot component has wrong sample count");
    }
    os.write(reinterpret_cast<const char*>(comp.data()),
             static_cast<std::streamsize>(comp.size() * sizeof(double)));
  }
  if (!os) throw Error(Errc::Io, "write failed for " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(Errc::Io, "cannot open " + path.string());
  std::array<char, 8> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) throw Error(Errc::Io, path.string() + " is not a snapshot file");
  const auto version = get<std::uint32_t>(is);
  if (version != kVersion) {
    throw Error(Errc::Io, "unsupported snapshot version " + std::to_string(version));
  }
  const auto dim = get<std::uint32_t>(is);
  const auto n = get<std::uint32_t>(is);
  const auto ncomp = get<std::uint32_t>(is);
  Snapshot snap;
  snap.grid = TorusGrid(static_cast<int>(dim), static_cast<int>(n));
  snap.time = get<double>(is);
  for (std::uint32_t c = 0; c < ncomp; ++c) {
    std::array<char, kLabelBytes> label{};
    is.read(label.data(), label.size());
    if (!is) throw Error(Errc::Io, "truncated snapshot labels");
    snap.labels.emplace_back(label.data(), strnlen(label.data(), kLabelBytes));
  }
  for (std::uint32_t c = 0; c < ncomp; ++c) {
    std::vector<double> comp(snap.grid.size());
    is.read(reinterpret_cast<char*>(comp.data()),
            static_cast<std::streamsize>(comp.size() * sizeof(double)));
    if (!is) throw Error(Errc::Io, "truncated snapshot data");
    snap.components.push_back(std::move(comp));
  }
  return snap;
}

}  // namespace lowmach
