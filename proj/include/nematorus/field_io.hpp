#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "nematorus/sectors.hpp"

namespace nematorus {

/// Provenance lines written at the top of every artifact.
struct ArtifactMeta {
  std::string config_hash;
  std::string version;
  std::uint64_t seed = 0;
};

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

/// Writes '#'-prefixed metadata, a header row and comma-separated rows.
/// Throws IoError with the path on failure.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const ArtifactMeta& meta,
            const std::vector<std::string>& extra_meta, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);
  void close();

 private:
  std::string path_;
  std::ofstream out_;
};

/// Writes a text file in one piece, throwing IoError with the path on failure.
void write_text_file(const std::string& path, const std::string& text);

/// CSV with columns theta, phi, alpha, x, y, z, nx, ny, nz, one row per node in
/// theta-major order. alpha is the unreduced total deviation.
void export_director_field(const SectorField& field, const std::string& path,
                           const ArtifactMeta& meta);

struct ImportedField {
  SectorField field;
  ArtifactMeta meta;
};

/// Reads a file written by export_director_field and decomposes it into (u, h).
ImportedField import_director_field(const std::string& path);

}  // namespace nematorus
