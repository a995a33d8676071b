#include "mlext_cli/cache.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "mlext/errors.hpp"

namespace mlext::cli {

namespace {

constexpr std::string_view kMagic = "mlext-cache";

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view data) {
  static std::atomic<unsigned> counter{0};
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot write " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw ResourceError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::filesystem::path ResultCache::path_for(const std::string& key) const { return dir_ / (key + ".cache"); }

std::optional<std::string> ResultCache::load(const std::string& key) const {
  const auto path = path_for(key);
  if (!std::filesystem::exists(path)) return std::nullopt;
  const std::string raw = read_file(path);
  const auto eol = raw.find('\n');
  if (eol == std::string::npos) throw ChecksumError("cache entry " + path.string() + " has no header");
  std::istringstream header(raw.substr(0, eol));
  std::string magic, checksum;
  std::size_t length = 0;
  header >> magic >> checksum >> length;
  const std::string_view payload = std::string_view(raw).substr(eol + 1);
  if (magic != kMagic || !header || payload.size() != length || checksum != hex(fnv1a64(payload)))
    throw ChecksumError("cache entry " + path.string() + " failed its checksum");
  return std::string(payload);
}

void ResultCache::store(const std::string& key, std::string_view payload) const {
  std::string data(kMagic);
  data += ' ' + hex(fnv1a64(payload)) + ' ' + std::to_string(payload.size()) + '\n';
  data += payload;
  write_file_atomic(path_for(key), data);
}

}  // namespace mlext::cli
