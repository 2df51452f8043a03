#include "cli_app.hpp"

#include "cli_commands.hpp"
#include "parspec/error.hpp"
#include "parspec/exec.hpp"
#include "parspec/io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>

namespace parspec::cli {

namespace {

int emit_error(std::ostream& err, int code, const std::string& kind, const std::string& message,
               const std::string& command) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["exit_code"] = code;
  j["command"] = command;
  j["message"] = message;
  err << j.dump() << "\n";
  return code;
}

std::optional<int> env_threads() {
  const char* v = std::getenv("PARSPEC_THREADS");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 0 || n > 4096) raise(ErrorCode::ConfigError, std::string("bad PARSPEC_THREADS value '") + v + "'");
  return static_cast<int>(n);
}

void write_report(const RunConfig& cfg, const Report& rep) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.out);
  nlohmann::ordered_json config = nlohmann::ordered_json::parse(cfg.to_json().dump());
  // destination and thread count do not change any result (reductions are
  // chunked deterministically), so they stay out of the hashed report
  config["run"].erase("out");
  config["run"].erase("threads");
  const std::string config_hash = hash_hex(config.dump());

  nlohmann::ordered_json files = nlohmann::ordered_json::object();
  for (const auto& [name, content] : rep.files) {
    write_file_atomic(dir / name, content);
    files[name] = hash_hex(content);
  }
  for (const auto& [name, field] : rep.fields) {
    write_field(dir / name, field, {{"command", rep.command}, {"config_hash", config_hash}});
    files[name] = read_field_sidecar(dir / name)["payload_hash"];
  }

  nlohmann::ordered_json j;
  j["command"] = rep.command;
  j["config"] = config;
  j["config_hash"] = config_hash;
  j["results"] = rep.results;
  j["files"] = files;
  j["content_hash"] = hash_hex(j.dump());
  write_file_atomic(dir / (rep.command + ".json"), j.dump(2) + "\n");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"parspec: spectral verification campaigns for the linearized compressible and damped-wave systems"};
  app.set_version_flag("--version", "parspec 1.0");
  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool quiet = false;
  app.add_option("--config", config_path, "TOML run configuration");
  app.add_option("--out", out_dir, "output directory (overrides run.out)");
  app.add_option("--seed", seed, "RNG seed (overrides run.seed)");
  app.add_option("--threads", threads, "OpenMP threads (falls back to PARSPEC_THREADS, then run.threads)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--quiet", quiet, "suppress the summary on stdout");
  app.require_subcommand(1);
  const char* descriptions[] = {
      "eigenvalue branches and parabola samples over a |xi| grid",
      "empirical constants of the resolvent bounds",
      "evolve L1-proxy, Lp-proxy or high-frequency data and record norms",
      "fit decay exponents to an evolution or a trajectory CSV",
      "Lorentz, Sobolev and Besov norms of a generated field",
      "weak-L3 and Besov growth study of the translate sum",
      "contour semigroup against the spectral propagator",
  };
  for (std::size_t i = 0; i < command_names().size(); ++i)
    app.add_subcommand(command_names()[i], descriptions[i])->fallthrough();

  std::string command;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    return emit_error(err, 2, "UsageError", e.what(), command);
  }
  command = app.get_subcommands().front()->get_name();

  RunConfig cfg;
  try {
    cfg = config_path.empty() ? parse_config("", "<defaults>") : load_config(config_path);
    if (!cfg.command.empty() && cfg.command != command)
      raise(ErrorCode::ConfigError, "config is for '" + cfg.command + "', not '" + command + "'");
    cfg.command = command;
    if (seed) cfg.seed = *seed;
    if (!out_dir.empty()) cfg.out = out_dir;
    if (threads)
      cfg.threads = *threads;
    else if (auto t = env_threads())
      cfg.threads = *t;
    cfg.validate();
  } catch (const Error& e) {
    return emit_error(err, 2, e.name(), e.what(), command);
  }
  if (cfg.threads > 0) set_num_threads(cfg.threads);

  try {
    const Report rep = run_command(cfg);
    write_report(cfg, rep);
    if (!quiet) {
      for (const auto& line : rep.summary) out << line << "\n";
      out << "wrote " << (std::filesystem::path(cfg.out) / (rep.command + ".json")).string() << "\n";
    }
  } catch (const Error& e) {
    return emit_error(err, e.code() == ErrorCode::ConfigError ? 2 : 3, e.name(), e.what(), command);
  } catch (const std::exception& e) {
    return emit_error(err, 1, "InternalError", e.what(), command);
  }
  return 0;
}

}  // namespace parspec::cli
