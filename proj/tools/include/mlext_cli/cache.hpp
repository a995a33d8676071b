#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace mlext::cli {

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view data);

/// Result files keyed by command, shape, format version and the remaining
/// parameters. Each entry is a header line carrying a checksum and the
/// payload length, followed by the payload bytes.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }

  std::filesystem::path path_for(const std::string& key) const;

  /// nullopt on a miss. Throws ChecksumError on a corrupt entry.
  std::optional<std::string> load(const std::string& key) const;

  /// Writes to a temporary file and renames it into place.
  void store(const std::string& key, std::string_view payload) const;

 private:
  std::filesystem::path dir_;
};

/// Writes `data` to `path` through a temporary file and an atomic rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view data);

std::string read_file(const std::filesystem::path& path);

}  // namespace mlext::cli
