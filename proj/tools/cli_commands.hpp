#pragma once

#include "parspec/config.hpp"
#include "parspec/grid.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace parspec::cli {

// What a command produces before anything touches the disk.
struct Report {
  std::string command;
  nlohmann::ordered_json results;
  std::vector<std::pair<std::string, std::string>> files;  // name, content
  std::vector<std::pair<std::string, Field>> fields;        // written in the binary field format
  std::vector<std::string> summary;                         // human-readable lines
};

// One seeded stream per run; commands draw from it in a fixed order.
using Rng = std::mt19937_64;

Report cmd_spectrum(const RunConfig& c, Rng& rng);
Report cmd_resolvent_scan(const RunConfig& c, Rng& rng);
Report cmd_evolve(const RunConfig& c, Rng& rng);
Report cmd_decay_fit(const RunConfig& c, Rng& rng);
Report cmd_norms(const RunConfig& c, Rng& rng);
Report cmd_counterexample(const RunConfig& c, Rng& rng);
Report cmd_contour_check(const RunConfig& c, Rng& rng);

Report run_command(const RunConfig& c);

// Parses a numeric CSV with a header row into named columns.
std::vector<std::pair<std::string, std::vector<double>>> parse_csv_columns(const std::string& text);

}  // namespace parspec::cli
