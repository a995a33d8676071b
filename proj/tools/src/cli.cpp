#include "mlext_cli/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "mlext/mlext.hpp"
#include "mlext_cli/cache.hpp"

namespace mlext::cli {

namespace {

const std::pair<Command, const char*> kCommands[] = {
    {Command::enumerate, "enum"}, {Command::planar, "planar"},   {Command::verify, "verify"},
    {Command::bh, "bh"},          {Command::mixed, "mixed"},     {Command::khinchin, "khinchin"},
    {Command::two_slot, "two-slot"}, {Command::kg, "kg"},        {Command::blei, "blei"},
    {Command::oracle, "oracle"},
};

const char* extension(FileFormat format) { return format == FileFormat::csv ? "csv" : "json"; }

std::string format_double(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

int require(const std::optional<int>& value, const char* flag, Command command) {
  if (!value) throw DomainError("--" + std::string(flag) + " is required for " + command_name(command));
  return *value;
}

/// Cache key: command, shape, format version, then the other result-relevant parameters.
std::string cache_key(const RunConfig& c) {
  std::string key = command_name(c.command);
  key += "-m" + (c.m ? std::to_string(*c.m) : std::string("_"));
  key += "-n" + (c.n ? std::to_string(*c.n) : std::string("_"));
  key += "-v" + std::to_string(kFormatVersion);
  switch (c.command) {
    case Command::enumerate:
    case Command::planar:
    case Command::oracle:
      key += std::string("-") + extension(c.format);
      break;
    case Command::bh:
      if (c.lambda) key += "-l" + format_double(*c.lambda);
      break;
    case Command::mixed:
      break;
    case Command::khinchin:
      key += "-q" + format_double(*c.q);
      break;
    case Command::kg:
      key += "-d" + std::to_string(*c.d) + "-r" + std::to_string(c.restarts) + "-s" + std::to_string(c.seed);
      break;
    case Command::blei:
      key += "-g" + std::to_string(c.grid_density) + "-i" + std::to_string(c.refine_iters);
      break;
    case Command::two_slot:
    case Command::verify:
      break;
  }
  return key;
}

class Runner {
 public:
  Runner(const RunConfig& config, std::ostream& out, std::ostream& err)
      : config_(config), out_(out), err_(err), cache_(config.cache_dir) {}

  int run() {
    switch (config_.command) {
      case Command::verify:
        return verify();
      case Command::enumerate:
      case Command::planar:
      case Command::oracle:
        return extreme_set_command();
      default:
        return report_command();
    }
  }

 private:
  SearchOptions search_options() const {
    SearchOptions options;
    options.workers = config_.workers;
    if (config_.budget) options.budget.max_work_items = *config_.budget;
    return options;
  }

  /// Cached payload for `key`, or the result of `compute` stored under it.
  template <class Compute>
  std::pair<std::string, bool> cached(const std::string& key, Compute compute) {
    if (config_.use_cache) {
      try {
        if (auto hit = cache_.load(key)) return {*hit, true};
      } catch (const ChecksumError& e) {
        err_ << "warning: " << e.what() << "; entry ignored\n";
      }
    }
    std::string payload = compute();
    if (config_.use_cache) cache_.store(key, payload);
    return {std::move(payload), false};
  }

  ExtremeSet compute_extreme_set(Command command, int m, int n) {
    const SearchOptions options = search_options();
    if (command == Command::planar) return planar_extreme_points(m, options);
    if (command == Command::oracle) return brute_force_vertices(make_shape(m, n));
    std::optional<ResumeState> resume;
    if (config_.resume) resume = read_resume_state(read_file(*config_.resume));
    try {
      return extreme_points(make_shape(m, n), options, resume ? &*resume : nullptr);
    } catch (const BudgetExhausted& e) {
      const auto path = config_.cache_dir / ("resume-enum-m" + std::to_string(m) + "-n" + std::to_string(n) + ".json");
      write_file_atomic(path, write_resume_state(e.state()));
      err_ << "budget exhausted after " << e.state().bases_completed << " bases; resume state: " << path.string()
           << "\n";
      throw;
    }
  }

  /// The complete extreme set for (m, n), through the enum cache entry.
  ExtremeSet extreme_set(int m, int n) {
    RunConfig key_config = config_;
    key_config.command = Command::enumerate;
    key_config.m = m;
    key_config.n = n;
    key_config.format = FileFormat::json;
    auto [payload, hit] = cached(cache_key(key_config), [&] {
      return write_extreme_set(compute_extreme_set(Command::enumerate, m, n), FileFormat::json);
    });
    return read_extreme_set(payload, FileFormat::json);
  }

  int extreme_set_command() {
    const Command command = config_.command;
    const int m = require(config_.m, "m", command);
    const int n = command == Command::planar ? 2 : require(config_.n, "n", command);
    const auto start = std::chrono::steady_clock::now();
    auto [payload, hit] = cached(cache_key(config_), [&] {
      return write_extreme_set(compute_extreme_set(command, m, n), config_.format);
    });
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const ExtremeSet set = read_extreme_set(payload, config_.format);
    const auto path = config_.out.value_or(std::filesystem::path("extreme_m" + std::to_string(m) + "_n" +
                                                                 std::to_string(n) + "." + extension(config_.format)));
    write_file_atomic(path, payload);
    out_ << "count: " << set.size() << "\n"
         << "max denominator: " << to_string(max_denominator(set)) << "\n"
         << "wall time: " << std::fixed << std::setprecision(3) << seconds << " s" << (hit ? " (cached)" : "")
         << "\n"
         << "file: " << path.string() << "\n";
    out_.unsetf(std::ios::floatfield);
    return kSuccess;
  }

  int verify() {
    const int m = require(config_.m, "m", Command::verify);
    const int n = require(config_.n, "n", Command::verify);
    if (!config_.point) throw DomainError("--point is required for verify");
    const Shape shape = make_shape(m, n);
    auto coeffs = parse_rational_list(*config_.point);
    if (coeffs.size() != shape.dimension())
      throw DimensionError("--point has " + std::to_string(coeffs.size()) + " coordinates, expected " +
                           std::to_string(shape.dimension()));
    const FormVector a(shape, std::move(coeffs));
    const auto cert = is_extreme(a);
    if (!cert.in_ball) {
      out_ << "not extreme; outside the unit ball, norm " << to_string(cert.norm) << "\n";
    } else if (cert.extreme) {
      out_ << "extreme; rank " << cert.rank << " of " << cert.dimension << "\n";
    } else {
      out_ << "not extreme; rank " << cert.rank << " of " << cert.dimension << "; "
           << (cert.midpoint_witness ? "midpoint witness available" : "no witness") << "\n";
    }
    out_ << "norm: " << to_string(cert.norm) << "\n";
    if (cert.midpoint_witness) {
      out_ << "witness: (" << join(cert.midpoint_witness->first) << ") + (" << join(cert.midpoint_witness->second)
           << ") over 2\n";
    }
    return kSuccess;
  }

  static std::string join(const FormVector& a) {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i) s += ',';
      s += to_string(a[i]);
    }
    return s;
  }

  ConstantReport compute_report() {
    const Command command = config_.command;
    switch (command) {
      case Command::bh:
      case Command::mixed: {
        const int m = require(config_.m, "m", command);
        const int n = require(config_.n, "n", command);
        const ExtremeSet set = extreme_set(m, n);
        if (command == Command::bh && config_.lambda) {
          const double lambda = *config_.lambda;
          if (!(lambda >= 1.0)) throw DomainError("--lambda must be at least 1");
          auto r = maximize_convex(
              set, [lambda](const FormVector& a) { return f_lambda_power(a, lambda); }, "f_lambda_max",
              config_.workers);
          r.m = m;
          r.n = n;
          r.lambda = lambda;
          r.value = std::pow(r.value, 1.0 / lambda);
          r.exact_note = recognize_power_of_two(r.value);
          return r;
        }
        return command == Command::bh ? bh_constant(m, n, set, config_.workers)
                                      : mixed_littlewood_constant(m, n, set, config_.workers);
      }
      case Command::khinchin: {
        ConstantReport r;
        r.name = "khinchin_Aq";
        r.lambda = *config_.q;
        r.value = khinchin_Aq(*config_.q);
        r.exact_note = "q0 = " + format_double(khinchin_q0());
        return r;
      }
      case Command::two_slot: {
        const int m = require(config_.m, "m", command);
        ConstantReport r;
        r.name = "two_slot_constant";
        r.m = m;
        r.value = two_slot_constant(m);
        r.exact_note = recognize_power_of_two(r.value);
        return r;
      }
      case Command::kg: {
        const int m = require(config_.m, "m", command);
        const int d = require(config_.d, "d", command);
        SphereSearchOptions options;
        options.restarts = config_.restarts;
        options.seed = config_.seed;
        // Bilinear extreme sets are enumerated up to m = 3; beyond that a
        // certified partial set is used.
        const ExtremeSet set = m <= 3 ? extreme_set(2, m) : padded_extreme_subset(extreme_set(2, 3), m);
        return kg_lower_bound(m, d, set, options, config_.workers);
      }
      case Command::blei: {
        const BleiResult result = blei_kkt_search(config_.grid_density, config_.refine_iters);
        ConstantReport r;
        r.name = "blei_kkt_max";
        r.value = result.value;
        std::ostringstream note;
        note << std::setprecision(17) << "argmax (a,b,c,d,h) = (" << result.argmax.a << ", " << result.argmax.b
             << ", " << result.argmax.c << ", " << result.argmax.d << ", " << result.argmax.h << "); "
             << result.evaluations << " evaluations, " << result.rejected << " infeasible points rejected";
        r.exact_note = note.str();
        return r;
      }
      default:
        throw InvariantViolation("not a report command");
    }
  }

  int report_command() {
    auto [payload, hit] = cached(cache_key(config_), [&] { return write_constant_report(compute_report()); });
    out_ << payload;
    if (config_.out) write_file_atomic(*config_.out, payload);
    return kSuccess;
  }

  const RunConfig& config_;
  std::ostream& out_;
  std::ostream& err_;
  ResultCache cache_;
};

}  // namespace

std::string command_name(Command command) {
  for (const auto& [c, name] : kCommands) {
    if (c == command) return name;
  }
  return "?";
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("MLEXT_CACHE_DIR"); env && *env) return env;
  return ".mlext-cache";
}

void validate(const RunConfig& c) {
  if (c.workers < 1) throw DomainError("--workers must be at least 1");
  if (c.budget && *c.budget == 0) throw DomainError("--budget must be positive");
  if (c.restarts < 1) throw DomainError("--restarts must be at least 1");
  auto positive = [](const std::optional<int>& v, const char* flag) {
    if (v && *v < 1) throw DomainError(std::string("--") + flag + " must be positive");
  };
  positive(c.m, "m");
  positive(c.n, "n");
  positive(c.d, "d");
  switch (c.command) {
    case Command::enumerate:
    case Command::oracle:
    case Command::verify:
    case Command::bh:
    case Command::mixed:
      require(c.m, "m", c.command);
      require(c.n, "n", c.command);
      break;
    case Command::planar:
    case Command::two_slot:
      require(c.m, "m", c.command);
      if (c.n && *c.n != 2 && c.command == Command::planar) throw DomainError("planar requires n = 2");
      break;
    case Command::kg:
      require(c.m, "m", c.command);
      require(c.d, "d", c.command);
      break;
    case Command::khinchin:
      if (!c.q) throw DomainError("--q is required for khinchin");
      break;
    case Command::blei:
      if (c.grid_density < 8) throw DomainError("--grid must be at least 8");
      if (c.refine_iters < 0) throw DomainError("--iters must be non-negative");
      break;
  }
  if (c.command == Command::verify && !c.point) throw DomainError("--point is required for verify");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    return Runner(config, out, err).run();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extreme points of unit balls of multilinear forms, and the constants built on them"};
  RunConfig config;
  config.cache_dir = default_cache_dir();
  std::map<std::string, Command> commands;
  for (const auto& [c, name] : kCommands) commands.emplace(name, c);
  std::string format = "json";
  bool no_cache = false;
  std::string cache_dir = config.cache_dir.string();
  std::string out_path, resume_path;

  std::string command_name;
  app.add_option("command", command_name, "enum, planar, verify, bh, mixed, khinchin, two-slot, kg, blei, oracle")
      ->required()
      ->type_name("COMMAND")
      ->check([&](const std::string& name) {
        return commands.count(name) ? std::string() : "unknown command '" + name + "'";
      });
  app.add_option("--m", config.m, "Number of arguments m (matrix size for kg)");
  app.add_option("--n", config.n, "Dimension n");
  app.add_option("--d", config.d, "Hilbert-space dimension for kg");
  app.add_option("--lambda", config.lambda, "Exponent for f_lambda");
  app.add_option("--q", config.q, "Exponent q for khinchin");
  app.add_option("--restarts", config.restarts, "Random restarts for kg")->capture_default_str();
  app.add_option("--seed", config.seed, "Seed for kg restarts")->capture_default_str();
  app.add_option("--grid", config.grid_density, "Grid density for blei")->capture_default_str();
  app.add_option("--iters", config.refine_iters, "Refinement sweeps for blei")->capture_default_str();
  app.add_option("--workers", config.workers, "Worker threads")->capture_default_str();
  app.add_option("--cache-dir", cache_dir, "Result cache directory (default $MLEXT_CACHE_DIR)")->capture_default_str();
  app.add_option("--out", out_path, "Output file");
  app.add_option("--format", format, "Extreme-set file format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_flag("--no-cache", no_cache, "Neither read nor write the cache");
  app.add_option("--point", config.point, "Comma separated rationals for verify");
  app.add_option("--budget", config.budget, "Maximum (basis, sign vector) pairs for enum");
  app.add_option("--resume", resume_path, "Resume state written by an exhausted enum run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInvalidInput;
  }
  config.command = commands.at(command_name);
  config.format = format == "csv" ? FileFormat::csv : FileFormat::json;
  config.use_cache = !no_cache;
  config.cache_dir = cache_dir;
  if (!out_path.empty()) config.out = out_path;
  if (!resume_path.empty()) config.resume = resume_path;
  return run(config, out, err);
}

}  // namespace mlext::cli
