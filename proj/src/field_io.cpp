#include "nematorus/field_io.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "nematorus/errors.hpp"
#include "nematorus/geometry.hpp"

namespace nematorus {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const ArtifactMeta& meta,
                     const std::vector<std::string>& extra_meta,
                     const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw IoError("cannot open '" + path + "' for writing");
  out_ << "# config_hash=" << meta.config_hash << "\n";
  out_ << "# version=" << meta.version << "\n";
  out_ << "# seed=" << meta.seed << "\n";
  for (const auto& line : extra_meta) out_ << "# " << line << "\n";
  for (std::size_t k = 0; k < header.size(); ++k) out_ << (k ? "," : "") << header[k];
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    out_ << (k ? "," : "") << format_double(values[k]);
  }
  out_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t k = 0; k < cells.size(); ++k) out_ << (k ? "," : "") << cells[k];
  out_ << "\n";
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw IoError("failed while writing '" + path_ + "'");
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed while writing '" + path + "'");
}

void export_director_field(const SectorField& field, const std::string& path,
                           const ArtifactMeta& meta) {
  const PeriodicGrid& g = field.grid();
  const TorusShape& shape = field.shape();
  CsvWriter csv(path, meta,
                {"grid n_theta=" + std::to_string(g.n_theta()) +
                     " n_phi=" + std::to_string(g.n_phi()),
                 "shape R=" + format_double(shape.R()) + " r=" + format_double(shape.r()),
                 "sector h_theta=" + std::to_string(field.index().h_theta) +
                     " h_phi=" + std::to_string(field.index().h_phi)},
                {"theta", "phi", "alpha", "x", "y", "z", "nx", "ny", "nz"});
  for (int i = 0; i < g.n_theta(); ++i) {
    for (int j = 0; j < g.n_phi(); ++j) {
      const double th = g.theta(i), ph = g.phi(j);
      const double alpha = field.total_at(i, j);
      const SurfacePoint p(th, ph);
      const Vec3 x = embedding_point(shape, p);
      const Vec3 n = director_from_alpha(shape, p, alpha);
      csv.row(std::vector<double>{th, ph, alpha, x[0], x[1], x[2], n[0], n[1], n[2]});
    }
  }
  csv.close();
}

namespace {

std::map<std::string, std::string> parse_meta_tokens(const std::string& line) {
  std::map<std::string, std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos) out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

double to_double(const std::string& text, const std::string& path) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ValidationError(path + ": malformed number '" + text + "'");
  }
  return v;
}

long to_long(const std::string& text, const std::string& path) {
  long v = 0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ValidationError(path + ": malformed integer '" + text + "'");
  }
  return v;
}

}  // namespace

ImportedField import_director_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read field file '" + path + "'");

  std::map<std::string, std::string> meta;
  std::vector<double> thetas, phis, alphas;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      for (const auto& [k, v] : parse_meta_tokens(line.substr(1))) meta[k] = v;
      continue;
    }
    if (!header_seen) {
      if (line.rfind("theta,phi,alpha", 0) != 0) {
        throw ValidationError(path + ": expected header starting with theta,phi,alpha");
      }
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string cell[3];
    for (auto& c : cell) {
      if (!std::getline(row, c, ',')) throw ValidationError(path + ": short row '" + line + "'");
    }
    thetas.push_back(to_double(cell[0], path));
    phis.push_back(to_double(cell[1], path));
    alphas.push_back(to_double(cell[2], path));
  }
  if (in.bad()) throw IoError("failed while reading '" + path + "'");

  for (const char* key : {"n_theta", "n_phi", "R", "r"}) {
    if (!meta.count(key)) throw ValidationError(path + ": missing metadata '" + key + "'");
  }
  const PeriodicGrid grid(static_cast<int>(to_long(meta["n_theta"], path)),
                          static_cast<int>(to_long(meta["n_phi"], path)));
  const TorusShape shape(to_double(meta["R"], path), to_double(meta["r"], path));
  if (alphas.size() != grid.size()) {
    throw ValidationError(path + ": expected " + std::to_string(grid.size()) + " rows, found " +
                          std::to_string(alphas.size()));
  }
  for (int i = 0; i < grid.n_theta(); ++i) {
    for (int j = 0; j < grid.n_phi(); ++j) {
      const std::size_t k = grid.index(i, j);
      if (std::abs(thetas[k] - grid.theta(i)) > 1e-9 || std::abs(phis[k] - grid.phi(j)) > 1e-9) {
        throw ValidationError(path + ": rows are not in theta-major grid order");
      }
    }
  }

  SectorField field = decompose(ScalarField(grid, std::move(alphas)), shape);
  if (meta.count("h_theta") && meta.count("h_phi")) {
    const WindingIndex declared{to_long(meta["h_theta"], path), to_long(meta["h_phi"], path)};
    if (!(declared == field.index())) {
      throw ValidationError(path + ": declared sector does not match the sampled winding");
    }
  }
  ArtifactMeta am;
  am.config_hash = meta.count("config_hash") ? meta["config_hash"] : "";
  am.version = meta.count("version") ? meta["version"] : "";
  if (meta.count("seed")) {
    const std::string& s = meta["seed"];
    const auto res = std::from_chars(s.data(), s.data() + s.size(), am.seed);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw ValidationError(path + ": malformed seed '" + s + "'");
    }
  }
  return {std::move(field), am};
}

}  // namespace nematorus
