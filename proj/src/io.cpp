#include "cascade/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cascade {
namespace {

constexpr char kMagic[4] = {'C', 'S', 'L', 'B'};

// Samples are written in host order; the format is little-endian and this
// code targets little-endian hosts only.
static_assert(std::endian::native == std::endian::little,
              "snapshot format requires a little-endian host");

struct Header {
  std::uint16_t version;
  std::uint32_t n;
  double time;
  double viscosity;
  std::uint8_t kind;
};

void write_raw(std::ostream& os, const void* p, std::size_t bytes) {
  os.write(static_cast<const char*>(p), static_cast<std::streamsize>(bytes));
}

void read_raw(std::istream& is, void* p, std::size_t bytes) {
  is.read(static_cast<char*>(p), static_cast<std::streamsize>(bytes));
  if (!is) throw std::runtime_error("snapshot: truncated file");
}

void write_header(std::ostream& os, const Header& h) {
  write_raw(os, kMagic, 4);
  write_raw(os, &h.version, 2);
  write_raw(os, &h.n, 4);
  write_raw(os, &h.time, 8);
  write_raw(os, &h.viscosity, 8);
  write_raw(os, &h.kind, 1);
}

Header read_header(std::istream& is, const std::filesystem::path& path) {
  char magic[4];
  read_raw(is, magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("snapshot: bad magic in " + path.string());
  Header h{};
  read_raw(is, &h.version, 2);
  if (h.version != kSnapshotVersion)
    throw std::runtime_error("snapshot: unsupported version in " +
                             path.string());
  read_raw(is, &h.n, 4);
  read_raw(is, &h.time, 8);
  read_raw(is, &h.viscosity, 8);
  read_raw(is, &h.kind, 1);
  return h;
}

class AtomicFile {
 public:
  explicit AtomicFile(const std::filesystem::path& path)
      : target_(path), tmp_(path) {
    tmp_ += ".tmp";
    stream_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!stream_)
      throw std::runtime_error("cannot open " + tmp_.string() + " for write");
  }

  std::ofstream& stream() { return stream_; }

  void commit() {
    stream_.close();
    if (!stream_) throw std::runtime_error("write failed: " + tmp_.string());
    std::filesystem::rename(tmp_, target_);
    committed_ = true;
  }

  ~AtomicFile() {
    if (!committed_) {
      stream_.close();
      std::error_code ec;
      std::filesystem::remove(tmp_, ec);
    }
  }

 private:
  std::filesystem::path target_, tmp_;
  std::ofstream stream_;
  bool committed_ = false;
};

}  // namespace

void write_snapshot(const std::filesystem::path& path, const ScalarField& f,
                    const SnapshotMeta& meta) {
  if (!f.finite()) throw std::runtime_error("write_snapshot: non-finite field");
  AtomicFile out(path);
  Header h{kSnapshotVersion, static_cast<std::uint32_t>(f.grid.n),
           f.time_tag.value_or(meta.time), meta.viscosity, 0};
  write_header(out.stream(), h);
  write_raw(out.stream(), f.values.data(), f.values.size() * sizeof(double));
  out.commit();
}

void write_snapshot(const std::filesystem::path& path, const VectorField& v,
                    const SnapshotMeta& meta) {
  if (!v.x_component.finite() || !v.y_component.finite())
    throw std::runtime_error("write_snapshot: non-finite field");
  AtomicFile out(path);
  Header h{kSnapshotVersion, static_cast<std::uint32_t>(v.grid.n), meta.time,
           meta.viscosity, 1};
  write_header(out.stream(), h);
  write_raw(out.stream(), v.x_component.values.data(),
            v.x_component.values.size() * sizeof(double));
  write_raw(out.stream(), v.y_component.values.data(),
            v.y_component.values.size() * sizeof(double));
  out.commit();
}

ScalarField read_scalar_snapshot(const std::filesystem::path& path,
                                 SnapshotMeta* meta) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  Header h = read_header(is, path);
  if (h.kind != 0)
    throw std::runtime_error("snapshot: expected scalar in " + path.string());
  Grid grid(static_cast<int>(h.n));
  ScalarField f(grid);
  read_raw(is, f.values.data(), f.values.size() * sizeof(double));
  f.time_tag = h.time;
  if (meta) *meta = {h.time, h.viscosity};
  return f;
}

VectorField read_vector_snapshot(const std::filesystem::path& path,
                                 SnapshotMeta* meta) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  Header h = read_header(is, path);
  if (h.kind != 1)
    throw std::runtime_error("snapshot: expected vector in " + path.string());
  Grid grid(static_cast<int>(h.n));
  VectorField v(grid);
  read_raw(is, v.x_component.values.data(),
           v.x_component.values.size() * sizeof(double));
  read_raw(is, v.y_component.values.data(),
           v.y_component.values.size() * sizeof(double));
  if (meta) *meta = {h.time, h.viscosity};
  return v;
}

int snapshot_kind(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return read_header(is, path).kind;
}

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  AtomicFile out(path);
  out.stream() << content;
  out.commit();
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": empty key");
    cfg.entries_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

Config Config::parse_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_string(ss.str());
}

std::string Config::get(const std::string& key,
                        const std::string& fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double Config::get(const std::string& key, double fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config key '" + key + "': bad number '" +
                             it->second + "'");
  }
}

int Config::get(const std::string& key, int fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const int v = std::stoi(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config key '" + key + "': bad integer '" +
                             it->second + "'");
  }
}

bool Config::get(const std::string& key, bool fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::runtime_error("config key '" + key + "': bad boolean '" + v + "'");
}

std::string Config::require(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end())
    throw std::runtime_error("config: missing required key '" + key + "'");
  return it->second;
}

}  // namespace cascade
