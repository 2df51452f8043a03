#include "doctest.h"

#include "parspec/config.hpp"
#include "parspec/error.hpp"
#include "parspec/io.hpp"

#include <filesystem>
#include <random>

using namespace parspec;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const char* name) {
  const fs::path d = fs::temp_directory_path() / "parspec_test_io" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

ErrorCode code_of(const std::string& text) {
  try {
    parse_config(text, "t.toml");
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

std::string message_of(const std::string& text) {
  try {
    parse_config(text, "t.toml");
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
  CHECK(hash_hex("a") == "fnv1a64:af63dc4c8601ec8c");
}

TEST_CASE("atomic write replaces content and leaves no temporary") {
  const fs::path d = scratch_dir("atomic");
  const fs::path p = d / "sub" / "r.json";
  write_file_atomic(p, "first");
  write_file_atomic(p, "second");
  CHECK(read_file(p) == "second");
  CHECK_FALSE(fs::exists(p.string() + ".tmp"));
  CHECK_THROWS_AS(read_file(d / "missing"), Error);
}

TEST_CASE("field binary round trip with sidecar") {
  const fs::path d = scratch_dir("field");
  const Grid g = Grid::box(3, {8, 4, 2}, {3.0, 2.0, 1.5});
  Field f(g, 2);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int c = 0; c < 2; ++c)
    for (auto& v : f[c]) v = nd(rng);
  f[1][5] = -0.0;
  write_field(d / "u.bin", f, {{"t", 1.5}});
  CHECK(fs::file_size(d / "u.bin") == 8 + 4 * 4 + 3 * 8 + 4 + 4 + g.size() * 2 * 8);
  const Field r = read_field(d / "u.bin");
  CHECK(r.grid == g);
  REQUIRE(r.components == 2);
  for (int c = 0; c < 2; ++c) CHECK(std::equal(f[c].begin(), f[c].end(), r[c].begin()));
  CHECK(std::signbit(r[1][5]));
  const auto side = read_field_sidecar(d / "u.bin");
  CHECK(side["points"] == nlohmann::json({8, 4, 2}));
  CHECK(side["layout"] == "row-major");
  CHECK(side["meta"]["t"] == 1.5);
  CHECK(side["payload_hash"].get<std::string>().rfind("fnv1a64:", 0) == 0);

  std::string bytes = read_file(d / "u.bin");
  write_file_atomic(d / "short.bin", bytes.substr(0, bytes.size() - 8));
  CHECK_THROWS_AS(read_field(d / "short.bin"), Error);
  bytes[0] = 'X';
  write_file_atomic(d / "bad.bin", bytes);
  try {
    read_field(d / "bad.bin");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}

TEST_CASE("config defaults and overrides") {
  const RunConfig def = parse_config("");
  CHECK(def.seed == 1);
  CHECK(def.points == 64);
  const RunConfig c = parse_config(R"(
[run]
command = "spectrum"
seed = 42

[model]
system = "dwe"
n = 5
mu = 6
mu_prime = 1.5

[norms]
lorentz_q = [1, 2.5, inf]

[counterexample]
N = [8, 16]
)");
  CHECK(c.command == "spectrum");
  CHECK(c.seed == 42);
  CHECK(c.system == "dwe");
  CHECK(c.dwe.n == 5);
  CHECK(c.cns.n == 5);
  CHECK(c.dwe.mu == 6.0);
  CHECK(c.norms_lorentz_q.size() == 3);
  CHECK(std::isinf(c.norms_lorentz_q[2]));
  CHECK(c.ce_N == std::vector<int>{8, 16});
  const auto j = c.to_json();
  CHECK(j["model"]["mu_prime"] == 1.5);
  CHECK(j["norms"]["lorentz_q"][2] == "inf");
  // resolved config is stable
  CHECK(c.to_json().dump() == parse_config(R"([run]
seed = 42
command = "spectrum"
[counterexample]
N = [8, 16]
[norms]
lorentz_q = [1, 2.5, inf]
[model]
mu_prime = 1.5
mu = 6
n = 5
system = "dwe"
)").to_json().dump());
}

TEST_CASE("config rejects unknown and malformed input") {
  CHECK(code_of("[run]\nsede = 3\n") == ErrorCode::ConfigError);
  CHECK(message_of("[run]\nsede = 3\n").find("t.toml:2:") != std::string::npos);
  CHECK(message_of("[run]\nsede = 3\n").find("sede") != std::string::npos);
  CHECK(code_of("[solver]\nx = 1\n") == ErrorCode::ConfigError);
  CHECK(code_of("seed = 1\n") == ErrorCode::ConfigError);
  CHECK(code_of("[run]\nseed = \"x\"\n") == ErrorCode::ConfigError);
  CHECK(code_of("[run]\nseed = -1\n") == ErrorCode::ConfigError);
  CHECK(code_of("[grid]\npoints = 24\n") == ErrorCode::ConfigError);
  CHECK(code_of("[run]\ncommand = \"plot\"\n") == ErrorCode::ConfigError);
  CHECK(code_of("[model]\nalpha = -1\n") == ErrorCode::ConfigError);
  CHECK(code_of("[run\n") == ErrorCode::ConfigError);
  CHECK(code_of("[profile]\nepsilon = 0.5\n") == ErrorCode::ConfigError);
  CHECK(code_of("[grid]\npoints = 32.5\n") == ErrorCode::ConfigError);
  try {
    load_config("/nonexistent/parspec.toml");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
  }
}
