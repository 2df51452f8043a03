#include "parspec/config.hpp"

#include "parspec/error.hpp"
#include "parspec/io.hpp"

#include <toml++/toml.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace parspec {

namespace {

[[noreturn]] void config_error(const std::string& msg) { raise(ErrorCode::ConfigError, msg); }

std::string where(const std::string& source, const toml::source_region& r) {
  std::ostringstream s;
  s << source << ":" << r.begin.line << ":" << r.begin.column;
  return s.str();
}

// One table of the file. Reads typed values, remembers which keys were used and
// rejects the rest in finish().
class Section {
 public:
  Section(const toml::table* t, std::string name, const std::string& source)
      : t_(t), name_(std::move(name)), source_(source) {}

  void get(const char* key, double& v) {
    if (auto n = node(key)) {
      if (auto d = n->value<double>()) {
        v = *d;
        return;
      }
      fail(*n, key, "a number");
    }
  }
  void get(const char* key, int& v) {
    if (auto n = node(key)) {
      if (n->is_integer()) {
        const std::int64_t x = n->as_integer()->get();
        if (x < -2147483647 || x > 2147483647) fail(*n, key, "a 32-bit integer");
        v = static_cast<int>(x);
        return;
      }
      fail(*n, key, "an integer");
    }
  }
  void get(const char* key, std::uint64_t& v) {
    if (auto n = node(key)) {
      if (n->is_integer() && n->as_integer()->get() >= 0) {
        v = static_cast<std::uint64_t>(n->as_integer()->get());
        return;
      }
      fail(*n, key, "a non-negative integer");
    }
  }
  void get(const char* key, bool& v) {
    if (auto n = node(key)) {
      if (n->is_boolean()) {
        v = n->as_boolean()->get();
        return;
      }
      fail(*n, key, "a boolean");
    }
  }
  void get(const char* key, std::string& v) {
    if (auto n = node(key)) {
      if (n->is_string()) {
        v = n->as_string()->get();
        return;
      }
      fail(*n, key, "a string");
    }
  }
  template <class T>
  void get(const char* key, std::vector<T>& v) {
    auto n = node(key);
    if (!n) return;
    const toml::array* a = n->as_array();
    if (!a) fail(*n, key, "an array");
    std::vector<T> out;
    for (const toml::node& e : *a) {
      if constexpr (std::is_same_v<T, double>) {
        auto d = e.value<double>();
        if (!d) fail(e, key, "an array of numbers");
        out.push_back(*d);
      } else if constexpr (std::is_same_v<T, int>) {
        if (!e.is_integer()) fail(e, key, "an array of integers");
        out.push_back(static_cast<int>(e.as_integer()->get()));
      } else {
        if (!e.is_string()) fail(e, key, "an array of strings");
        out.push_back(e.as_string()->get());
      }
    }
    v = std::move(out);
  }

  void finish() const {
    if (!t_) return;
    for (const auto& [k, n] : *t_)
      if (!used_.count(std::string(k.str())))
        config_error(where(source_, n.source()) + ": unknown key '" + std::string(k.str()) + "' in [" + name_ + "]");
  }

 private:
  const toml::node* node(const char* key) {
    if (!t_) return nullptr;
    used_.insert(key);
    return t_->get(key);
  }
  [[noreturn]] void fail(const toml::node& n, const char* key, const char* want) const {
    config_error(where(source_, n.source()) + ": [" + name_ + "] " + key + " must be " + want);
  }

  const toml::table* t_;
  std::string name_;
  const std::string& source_;
  std::set<std::string> used_;
};

const std::set<std::string> kTables{"run",  "model", "grid", "cutoff", "contour", "profile",
                                    "spectrum", "scan", "evolve", "fit", "norms", "counterexample"};

nlohmann::json num(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

nlohmann::json nums(const std::vector<double>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

void RunConfig::validate() const {
  auto check = [](bool ok, const std::string& msg) {
    if (!ok) config_error(msg);
  };
  check(command.empty() || std::find(command_names().begin(), command_names().end(), command) != command_names().end(),
        "unknown command '" + command + "'");
  check(threads >= 0, "threads must be >= 0");
  check(system == "cns" || system == "dwe", "model.system must be cns or dwe");
  try {
    cns.validate();
    dwe.validate();
    cutoff.validate();
    contour.validate();
  } catch (const Error& e) {
    config_error(e.what());
  }
  check(is_power_of_two(points) && points >= 4, "grid.points must be a power of two >= 4");
  check(length > 0.0, "grid.length must be positive");
  check(!contour_times.empty() && contour_xi_count >= 1, "contour needs times and xi_count >= 1");
  for (double t : contour_times) check(t > 0.0, "contour times must be positive");
  check(epsilon >= 0.0 && epsilon <= 0.1, "profile.epsilon must lie in [0, 0.1]");
  check(spectrum_xi_min >= 0.0 && spectrum_xi_max > spectrum_xi_min && spectrum_xi_count >= 2, "bad spectrum grid");
  check(!scan_c0.empty() && scan_n_xi >= 2 && scan_n_a >= 2 && scan_n_re >= 2 && scan_n_im >= 2, "bad scan grid");
  for (double c : scan_c0) check(c > 0.0, "scan.c0 values must be positive");
  check(data == "l1" || data == "lp" || data == "high", "evolve.data must be l1, lp or high");
  check(sigma >= 0.0 && data_p >= 1.0 && data_p <= 2.0, "bad evolve data parameters");
  check(t_first > 0.0 && t_end > t_first && per_decade >= 1, "bad evolve time grid");
  check(dt0 > 0.0 && dt_max >= dt0 && dt_rel >= 0.0, "bad evolve step schedule");
  check(fit_t_hi > fit_t_lo && fit_t_lo > 0.0, "bad fit window");
  check(norms_field == "gaussian" || norms_field == "power" || norms_field == "random", "norms.field must be gaussian, power or random");
  check(norms_sigma > 0.0 && norms_power > 0.0 && norms_trials >= 1, "bad norms parameters");
  for (double p : norms_lp) check(p >= 1.0, "norms.lp values must be >= 1");
  for (double q : norms_lorentz_q) check(q >= 1.0, "norms.lorentz_q values must be >= 1");
  check(!ce_N.empty(), "counterexample.N must be non-empty");
  for (int n : ce_N) check(n >= 1, "counterexample.N values must be >= 1");
  check(ce_L > 2.0 * ce_radius && ce_radius > 0.0 && ce_steps_per_L >= 8 && ce_transverse > 2.0 * ce_radius,
        "bad counterexample geometry");
  check(is_power_of_two(ce_weighted_points) && ce_weighted_length > 0.0 && ce_M1 > 0.0 && ce_M2 > 0.0,
        "bad weighted profile parameters");
}

nlohmann::json RunConfig::to_json() const {
  using nlohmann::json;
  return json{
      {"run", {{"command", command}, {"seed", seed}, {"out", out}, {"threads", threads}}},
      {"model",
       {{"system", system},
        {"n", cns.n},
        {"alpha", cns.alpha},
        {"beta", cns.beta},
        {"gamma", cns.gamma},
        {"mu", dwe.mu},
        {"mu_prime", dwe.mu_prime}}},
      {"grid", {{"points", points}, {"length", length}}},
      {"cutoff", {{"r1p", cutoff.r1p}, {"rinfp", cutoff.rinfp}, {"mollifier_width", cutoff.mollifier_width}}},
      {"contour",
       {{"t", contour.t},
        {"r_max", contour.r_max},
        {"nodes_per_branch", contour.nodes_per_branch},
        {"arc_nodes", contour.arc_nodes},
        {"quadrature", quadrature_name(contour.quadrature)},
        {"tol", contour.tol},
        {"max_doublings", contour.max_doublings},
        {"times", nums(contour_times)},
        {"xi_count", contour_xi_count}}},
      {"profile", {{"epsilon", epsilon}}},
      {"spectrum", {{"xi_min", spectrum_xi_min}, {"xi_max", spectrum_xi_max}, {"xi_count", spectrum_xi_count}}},
      {"scan", {{"c0", nums(scan_c0)}, {"n_xi", scan_n_xi}, {"n_a", scan_n_a}, {"n_re", scan_n_re}, {"n_im", scan_n_im}}},
      {"evolve",
       {{"data", data},
        {"sigma", sigma},
        {"p", data_p},
        {"component", component},
        {"t_first", t_first},
        {"t_end", t_end},
        {"per_decade", per_decade},
        {"dt0", dt0},
        {"dt_rel", dt_rel},
        {"dt_max", dt_max}}},
      {"fit", {{"t_lo", fit_t_lo}, {"t_hi", fit_t_hi}, {"series", fit_series}, {"input", fit_input}}},
      {"norms",
       {{"field", norms_field},
        {"sigma", norms_sigma},
        {"power", norms_power},
        {"lp", nums(norms_lp)},
        {"lorentz_q", nums(norms_lorentz_q)},
        {"sobolev_s", norms_sobolev_s},
        {"besov_s", norms_besov_s},
        {"trials", norms_trials}}},
      {"counterexample",
       {{"N", ce_N},
        {"L", ce_L},
        {"steps_per_L", ce_steps_per_L},
        {"transverse", ce_transverse},
        {"radius", ce_radius},
        {"amplitude_power", ce_amplitude_power},
        {"weighted", ce_weighted},
        {"weighted_points", ce_weighted_points},
        {"weighted_length", ce_weighted_length},
        {"M1", ce_M1},
        {"M2", ce_M2}}},
  };
}

RunConfig parse_config(std::string_view text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    config_error(where(source, e.source()) + ": " + std::string(e.description()));
  }
  for (const auto& [k, n] : root) {
    if (!kTables.count(std::string(k.str())))
      config_error(where(source, n.source()) + ": unknown table or key '" + std::string(k.str()) + "'");
    if (!n.is_table()) config_error(where(source, n.source()) + ": '" + std::string(k.str()) + "' must be a table");
  }
  auto section = [&](const char* name) { return Section(root[name].as_table(), name, source); };

  RunConfig c;
  {
    Section s = section("run");
    s.get("command", c.command);
    s.get("seed", c.seed);
    s.get("out", c.out);
    s.get("threads", c.threads);
    s.finish();
  }
  {
    Section s = section("model");
    int n = 3;
    s.get("system", c.system);
    s.get("n", n);
    s.get("alpha", c.cns.alpha);
    s.get("beta", c.cns.beta);
    s.get("gamma", c.cns.gamma);
    s.get("mu", c.dwe.mu);
    s.get("mu_prime", c.dwe.mu_prime);
    c.cns.n = c.dwe.n = n;
    s.finish();
  }
  {
    Section s = section("grid");
    s.get("points", c.points);
    s.get("length", c.length);
    s.finish();
  }
  {
    Section s = section("cutoff");
    s.get("r1p", c.cutoff.r1p);
    s.get("rinfp", c.cutoff.rinfp);
    s.get("mollifier_width", c.cutoff.mollifier_width);
    s.finish();
  }
  {
    Section s = section("contour");
    std::string quad = "trapezoid";
    s.get("t", c.contour.t);
    s.get("r_max", c.contour.r_max);
    s.get("nodes_per_branch", c.contour.nodes_per_branch);
    s.get("arc_nodes", c.contour.arc_nodes);
    s.get("quadrature", quad);
    s.get("tol", c.contour.tol);
    s.get("max_doublings", c.contour.max_doublings);
    s.get("times", c.contour_times);
    s.get("xi_count", c.contour_xi_count);
    if (quad == "trapezoid")
      c.contour.quadrature = Quadrature::Trapezoid;
    else if (quad == "midpoint")
      c.contour.quadrature = Quadrature::Midpoint;
    else
      config_error(source + ": contour.quadrature must be trapezoid or midpoint");
    s.finish();
  }
  {
    Section s = section("profile");
    s.get("epsilon", c.epsilon);
    s.finish();
  }
  {
    Section s = section("spectrum");
    s.get("xi_min", c.spectrum_xi_min);
    s.get("xi_max", c.spectrum_xi_max);
    s.get("xi_count", c.spectrum_xi_count);
    s.finish();
  }
  {
    Section s = section("scan");
    s.get("c0", c.scan_c0);
    s.get("n_xi", c.scan_n_xi);
    s.get("n_a", c.scan_n_a);
    s.get("n_re", c.scan_n_re);
    s.get("n_im", c.scan_n_im);
    s.finish();
  }
  {
    Section s = section("evolve");
    s.get("data", c.data);
    s.get("sigma", c.sigma);
    s.get("p", c.data_p);
    s.get("component", c.component);
    s.get("t_first", c.t_first);
    s.get("t_end", c.t_end);
    s.get("per_decade", c.per_decade);
    s.get("dt0", c.dt0);
    s.get("dt_rel", c.dt_rel);
    s.get("dt_max", c.dt_max);
    s.finish();
  }
  {
    Section s = section("fit");
    s.get("t_lo", c.fit_t_lo);
    s.get("t_hi", c.fit_t_hi);
    s.get("series", c.fit_series);
    s.get("input", c.fit_input);
    s.finish();
  }
  {
    Section s = section("norms");
    s.get("field", c.norms_field);
    s.get("sigma", c.norms_sigma);
    s.get("power", c.norms_power);
    s.get("lp", c.norms_lp);
    s.get("lorentz_q", c.norms_lorentz_q);
    s.get("sobolev_s", c.norms_sobolev_s);
    s.get("besov_s", c.norms_besov_s);
    s.get("trials", c.norms_trials);
    s.finish();
  }
  {
    Section s = section("counterexample");
    s.get("N", c.ce_N);
    s.get("L", c.ce_L);
    s.get("steps_per_L", c.ce_steps_per_L);
    s.get("transverse", c.ce_transverse);
    s.get("radius", c.ce_radius);
    s.get("amplitude_power", c.ce_amplitude_power);
    s.get("weighted", c.ce_weighted);
    s.get("weighted_points", c.ce_weighted_points);
    s.get("weighted_length", c.ce_weighted_length);
    s.get("M1", c.ce_M1);
    s.get("M2", c.ce_M2);
    s.finish();
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error&) {
    config_error("cannot read config file " + path.string());
  }
  return parse_config(text, path.string());
}

}  // namespace parspec
