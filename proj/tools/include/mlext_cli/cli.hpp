#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "mlext/io.hpp"

namespace mlext::cli {

enum class Command { enumerate, planar, verify, bh, mixed, khinchin, two_slot, kg, blei, oracle };

std::string command_name(Command command);

enum ExitCode : int { kSuccess = 0, kInvalidInput = 2, kBudgetExceeded = 3, kInternalError = 4 };

struct RunConfig {
  Command command = Command::enumerate;
  std::optional<int> m;
  std::optional<int> n;
  std::optional<int> d;
  std::optional<double> lambda;
  std::optional<double> q;
  int restarts = 64;
  std::uint64_t seed = 0;
  int grid_density = 24;
  int refine_iters = 2000;
  unsigned workers = 1;
  std::filesystem::path cache_dir;
  std::optional<std::filesystem::path> out;
  FileFormat format = FileFormat::json;
  bool use_cache = true;
  std::optional<std::string> point;
  std::optional<std::uint64_t> budget;
  std::optional<std::filesystem::path> resume;
};

/// MLEXT_CACHE_DIR, or ".mlext-cache" when unset.
std::filesystem::path default_cache_dir();

/// Throws DomainError when a command-specific field is missing or out of range.
void validate(const RunConfig& config);

/// Executes one command. Reports go to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and calls run.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mlext::cli
