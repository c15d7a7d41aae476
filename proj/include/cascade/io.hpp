#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "cascade/field.hpp"

namespace cascade {

// Snapshot container: magic "CSLB", version u16, n u32, time f64,
// viscosity f64, kind u8 (0 = scalar, 1 = vector), then row-major
// little-endian f64 samples (x-component first for vectors).
inline constexpr std::uint16_t kSnapshotVersion = 1;

struct SnapshotMeta {
  double time = 0.0;
  double viscosity = 0.0;
};

// All writes are atomic: temp file in the target directory, then rename.
void write_snapshot(const std::filesystem::path& path, const ScalarField& f,
                    const SnapshotMeta& meta = {});
void write_snapshot(const std::filesystem::path& path, const VectorField& v,
                    const SnapshotMeta& meta = {});

ScalarField read_scalar_snapshot(const std::filesystem::path& path,
                                 SnapshotMeta* meta = nullptr);
VectorField read_vector_snapshot(const std::filesystem::path& path,
                                 SnapshotMeta* meta = nullptr);

// Peek at the kind byte without loading samples. 0 scalar, 1 vector.
int snapshot_kind(const std::filesystem::path& path);

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

// Flat key=value config dialect: one pair per line, '#' comments, blank
// lines ignored. Keys are unique (later wins).
class Config {
 public:
  Config() = default;
  static Config parse_file(const std::filesystem::path& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  void set(const std::string& key, const std::string& value) {
    entries_[key] = value;
  }

  std::string get(const std::string& key, const std::string& fallback) const;
  double get(const std::string& key, double fallback) const;
  int get(const std::string& key, int fallback) const;
  bool get(const std::string& key, bool fallback) const;
  // Throwing variant for required keys.
  std::string require(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace cascade
