#include "hawkes/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hawkes/error.hpp"
#include "hawkes/random.hpp"

namespace hawkes {
namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& items) {
  std::string out = "invalid configuration";
  for (const auto& item : items) out += "\n  " + item;
  return out;
}

// Collects violations while reading one document.
class Reader {
 public:
  std::vector<std::string> violations;

  void fail(const std::string& path, const std::string& message) {
    violations.push_back(path + ": " + message);
  }

  bool object(const json& node, const std::string& path,
              std::initializer_list<std::string_view> allowed) {
    if (!node.is_object()) {
      fail(path, "expected an object");
      return false;
    }
    for (const auto& [key, value] : node.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(path, "unknown key '" + key + "'");
      }
    }
    return true;
  }

  std::optional<double> number(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    const auto& v = obj.at(key);
    if (!v.is_number()) {
      fail(path + "." + key, "expected a number");
      return std::nullopt;
    }
    return v.get<double>();
  }

  void positive(const json& obj, const std::string& key, const std::string& path, double& out) {
    if (auto v = number(obj, key, path)) {
      if (!(*v > 0.0) || !std::isfinite(*v)) {
        fail(path + "." + key, key + " must be strictly positive");
      } else {
        out = *v;
      }
    }
  }

  void nonnegative(const json& obj, const std::string& key, const std::string& path, double& out) {
    if (auto v = number(obj, key, path)) {
      if (!(*v >= 0.0) || !std::isfinite(*v)) {
        fail(path + "." + key, key + " must be >= 0");
      } else {
        out = *v;
      }
    }
  }

  std::optional<std::int64_t> integer(const json& obj, const std::string& key,
                                      const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    const auto& v = obj.at(key);
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (d == std::floor(d) && std::abs(d) < 9e15) return static_cast<std::int64_t>(d);
    }
    fail(path + "." + key, "expected an integer");
    return std::nullopt;
  }

  template <class T>
  void count(const json& obj, const std::string& key, const std::string& path, T& out,
             std::int64_t min_value = 1) {
    if (auto v = integer(obj, key, path)) {
      if (*v < min_value) {
        fail(path + "." + key, key + " must be >= " + std::to_string(min_value));
      } else {
        out = static_cast<T>(*v);
      }
    }
  }

  std::optional<std::vector<std::uint64_t>> sizes(const json& obj, const std::string& key,
                                                  const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    const auto& v = obj.at(key);
    if (!v.is_array() || v.empty()) {
      fail(path + "." + key, "expected a non-empty array of positive integers");
      return std::nullopt;
    }
    std::vector<std::uint64_t> out;
    bool ok = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& e = v[i];
      if (!e.is_number_integer() || e.get<std::int64_t>() < 1 ||
          e.get<std::int64_t>() > 0xFFFFFFFFLL) {
        fail(path + "." + key + "[" + std::to_string(i) + "]",
             "population size must be an integer in [1, 2^32-1]");
        ok = false;
        continue;
      }
      out.push_back(e.get<std::uint64_t>());
    }
    return ok ? std::optional(out) : std::nullopt;
  }

  std::optional<std::vector<double>> numbers(const json& obj, const std::string& key,
                                             const std::string& path, bool positive_only) {
    if (!obj.contains(key)) return std::nullopt;
    const auto& v = obj.at(key);
    if (!v.is_array() || v.empty()) {
      fail(path + "." + key, "expected a non-empty array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    bool ok = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const bool good = v[i].is_number() && std::isfinite(v[i].get<double>()) &&
                        (positive_only ? v[i].get<double>() > 0.0 : v[i].get<double>() >= 0.0);
      if (!good) {
        fail(path + "." + key + "[" + std::to_string(i) + "]",
             positive_only ? "expected a positive number" : "expected a number >= 0");
        ok = false;
        continue;
      }
      out.push_back(v[i].get<double>());
    }
    return ok ? std::optional(out) : std::nullopt;
  }
};

std::optional<Population> read_population(Reader& r, const json& node, const std::string& path) {
  if (!r.object(node, path, {"eta", "nu", "c", "rate"})) return std::nullopt;
  const std::size_t before = r.violations.size();
  Population p;
  for (const char* key : {"eta", "nu", "c", "rate"}) {
    if (!node.contains(key)) r.fail(path, std::string("missing key '") + key + "'");
  }
  if (auto eta = r.integer(node, "eta", path)) {
    if (*eta < 0 || *eta > 1000) {
      r.fail(path + ".eta", "eta must be an integer in [0, 1000]");
    } else {
      p.eta = static_cast<int>(*eta);
    }
  }
  if (auto nu = r.number(node, "nu", path)) {
    if (!(*nu > 0.0) || !std::isfinite(*nu)) {
      r.fail(path + ".nu", "nu must be strictly positive");
    } else {
      p.nu = *nu;
    }
  }
  if (auto c = r.integer(node, "c", path)) {
    if (*c != 1 && *c != -1) {
      r.fail(path + ".c", "c must be -1 or +1");
    } else {
      p.sign = static_cast<int>(*c);
    }
  }
  if (node.contains("rate")) {
    if (!node.at("rate").is_string()) {
      r.fail(path + ".rate", "expected a rate name");
    } else {
      try {
        p.rate = RateFunction::parse(node.at("rate").get<std::string>());
        if (!std::isfinite(p.rate.sup())) r.fail(path + ".rate", "rate must be bounded");
      } catch (const Error& e) {
        r.fail(path + ".rate", e.what());
      }
    }
  }
  if (r.violations.size() != before) return std::nullopt;
  return p;
}

void read_scan_nu(Reader& r, const json& node, ScanNuConfig& out) {
  const std::string path = "scan_nu";
  if (!r.object(node, path, {"nu_min", "nu_max", "step", "eta"})) return;
  r.positive(node, "nu_min", path, out.nu_min);
  r.positive(node, "nu_max", path, out.nu_max);
  r.positive(node, "step", path, out.step);
  if (out.nu_max <= out.nu_min) r.fail(path, "nu_max must exceed nu_min");
  if (auto eta = r.integer(node, "eta", path)) {
    if (*eta < 0 || *eta > 1000) {
      r.fail(path + ".eta", "eta must be an integer in [0, 1000]");
    } else {
      out.eta = static_cast<int>(*eta);
    }
  }
}

void read_scan_kappa(Reader& r, const json& node, ScanKappaConfig& out, std::size_t populations) {
  const std::string path = "scan_kappa";
  if (!r.object(node, path, {"nu", "kappas", "horizon"})) return;
  if (node.contains("nu")) {
    double nu = 1.0;
    r.positive(node, "nu", path, nu);
    out.nu = nu;
  }
  r.positive(node, "horizon", path, out.phase.horizon);
  if (node.contains("kappas")) {
    const auto& v = node.at("kappas");
    if (!v.is_array() || v.empty()) {
      r.fail(path + ".kappas", "expected a non-empty array of integers");
    } else {
      out.phase.kappas.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string at = path + ".kappas[" + std::to_string(i) + "]";
        if (!v[i].is_number_integer()) {
          r.fail(at, "expected an integer");
          continue;
        }
        const auto kappa = v[i].get<std::int64_t>();
        if (kappa < 2 || kappa > 2000 || populations == 0 ||
            kappa % static_cast<std::int64_t>(populations) != 0) {
          r.fail(at, "kappa must be a multiple of the population count and >= 2");
          continue;
        }
        out.phase.kappas.push_back(static_cast<int>(kappa));
      }
    }
  }
}

void read_chaos(Reader& r, const json& node, ChaosOptions& out) {
  const std::string path = "chaos";
  if (!r.object(node, path, {"sizes", "horizon", "replicates"})) return;
  if (auto s = r.sizes(node, "sizes", path)) out.sizes = *s;
  r.positive(node, "horizon", path, out.horizon);
  r.count(node, "replicates", path, out.replicates, 2);
}

void read_clt(Reader& r, const json& node, CltOptions& out) {
  const std::string path = "clt";
  if (!r.object(node, path, {"sizes", "t", "replicates"})) return;
  if (auto s = r.sizes(node, "sizes", path)) out.sizes = *s;
  r.positive(node, "t", path, out.t);
  r.count(node, "replicates", path, out.replicates, 2);
}

void read_weak_error(Reader& r, const json& node, WeakErrorOptions& out) {
  const std::string path = "weak_error";
  if (!r.object(node, path, {"sizes", "t", "dt", "test_functions", "replicates"})) return;
  if (auto s = r.sizes(node, "sizes", path)) out.sizes = *s;
  r.nonnegative(node, "t", path, out.t);
  r.positive(node, "dt", path, out.dt);
  r.count(node, "replicates", path, out.replicates, 2);
  if (node.contains("test_functions")) {
    const auto& v = node.at("test_functions");
    if (!v.is_array()) {
      r.fail(path + ".test_functions", "expected an array of strings");
    } else {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_string()) {
          r.fail(path + ".test_functions[" + std::to_string(i) + "]", "expected a string");
        } else {
          out.test_functions.push_back(v[i].get<std::string>());
        }
      }
    }
  }
}

void read_tube(Reader& r, const json& node, TubeOptions& out) {
  const std::string path = "tube";
  if (!r.object(node, path,
                {"sizes", "horizon", "dt", "epsilons", "transient", "orbit_horizon",
                 "orbit_samples", "sample_every"})) {
    return;
  }
  if (auto s = r.sizes(node, "sizes", path)) out.sizes = *s;
  r.positive(node, "horizon", path, out.horizon);
  r.positive(node, "dt", path, out.dt);
  if (auto e = r.numbers(node, "epsilons", path, true)) out.epsilons = *e;
  r.nonnegative(node, "transient", path, out.transient);
  r.positive(node, "orbit_horizon", path, out.orbit_horizon);
  r.count(node, "orbit_samples", path, out.orbit_samples, 10);
  r.count(node, "sample_every", path, out.sample_every, 1);
  if (out.transient >= out.horizon) r.fail(path + ".transient", "transient must be below horizon");
}

std::string locate(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : Error(join(violations)), violations_(std::move(violations)) {}

std::vector<double> RunConfig::lipschitz_constants() const {
  return lipschitz ? *lipschitz : params.lipschitz();
}

void RunConfig::set_seed(std::uint64_t value) {
  seed = value;
  chaos.seed = clt.seed = weak_error.seed = tube.seed = value;
}

void RunConfig::set_threads(unsigned threads) {
  chaos.threads = clt.threads = weak_error.threads = scan_kappa.phase.threads = threads;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the 1-based byte just past the offending token.
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw ConfigError({"syntax error at " + locate(text, byte) + ": " + e.what()});
  }

  Reader r;
  RunConfig cfg;
  if (!r.object(doc, "config",
                {"populations", "sizes", "horizon", "dt", "sample_dt", "seed", "lipschitz",
                 "scan_nu", "scan_kappa", "chaos", "clt", "weak_error", "tube"})) {
    throw ConfigError(r.violations);
  }

  std::vector<Population> pops;
  bool pops_ok = false;
  if (!doc.contains("populations")) {
    r.fail("config", "missing key 'populations'");
  } else if (!doc.at("populations").is_array() || doc.at("populations").empty()) {
    r.fail("populations", "expected a non-empty array");
  } else {
    pops_ok = true;
    const auto& arr = doc.at("populations");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      auto p = read_population(r, arr[i], "populations[" + std::to_string(i) + "]");
      if (p) {
        pops.push_back(std::move(*p));
      } else {
        pops_ok = false;
      }
    }
  }
  const std::size_t n = doc.contains("populations") && doc.at("populations").is_array()
                            ? doc.at("populations").size()
                            : 0;
  if (pops_ok) {
    try {
      cfg.params = CascadeParams(std::move(pops));
    } catch (const Error& e) {
      r.fail("populations", e.what());
    }
  }

  if (auto s = r.sizes(doc, "sizes", "config")) {
    if (s->size() != n) {
      r.fail("config.sizes", "expected one size per population");
    } else {
      cfg.sizes = *s;
    }
  } else if (!doc.contains("sizes")) {
    cfg.sizes.assign(n, 20);
  }
  r.positive(doc, "horizon", "config", cfg.horizon);
  if (doc.contains("dt")) {
    double dt = 0.01;
    r.positive(doc, "dt", "config", dt);
    cfg.dt = dt;
  }
  r.positive(doc, "sample_dt", "config", cfg.sample_dt);
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) {
      r.fail("config.seed", "seed must be an unsigned 64-bit integer");
    } else {
      cfg.seed = doc.at("seed").get<std::uint64_t>();
    }
  }
  if (doc.contains("lipschitz")) {
    const auto& v = doc.at("lipschitz");
    if (v.is_number()) {
      if (!(v.get<double>() >= 0.0)) {
        r.fail("config.lipschitz", "lipschitz constant must be >= 0");
      } else {
        cfg.lipschitz = std::vector<double>(n, v.get<double>());
      }
    } else if (auto l = r.numbers(doc, "lipschitz", "config", false)) {
      if (l->size() != n) {
        r.fail("config.lipschitz", "expected one constant per population");
      } else {
        cfg.lipschitz = *l;
      }
    }
  }

  if (doc.contains("scan_nu")) read_scan_nu(r, doc.at("scan_nu"), cfg.scan_nu);
  if (doc.contains("scan_kappa")) read_scan_kappa(r, doc.at("scan_kappa"), cfg.scan_kappa, n);
  if (doc.contains("chaos")) read_chaos(r, doc.at("chaos"), cfg.chaos);
  if (doc.contains("clt")) read_clt(r, doc.at("clt"), cfg.clt);
  if (doc.contains("weak_error")) read_weak_error(r, doc.at("weak_error"), cfg.weak_error);
  if (doc.contains("tube")) read_tube(r, doc.at("tube"), cfg.tube);

  if (cfg.clt.sizes.size() != n && (doc.contains("clt") && doc.at("clt").contains("sizes"))) {
    r.fail("clt.sizes", "expected one size per population");
  } else if (cfg.clt.sizes.size() != n) {
    cfg.clt.sizes.assign(n, cfg.clt.sizes.front());
  }
  if (cfg.tube.sizes.size() != n && (doc.contains("tube") && doc.at("tube").contains("sizes"))) {
    r.fail("tube.sizes", "expected one size per population");
  } else if (cfg.tube.sizes.size() != n) {
    cfg.tube.sizes.assign(n, cfg.tube.sizes.front());
  }
  if (pops_ok && r.violations.empty()) {
    for (const auto& spec : cfg.weak_error.test_functions) {
      try {
        make_test_function(spec, cfg.params, 0.0);
      } catch (const Error& e) {
        r.fail("weak_error.test_functions", e.what());
      }
    }
  }

  if (!r.violations.empty()) throw ConfigError(r.violations);
  cfg.canonical = doc.dump();
  cfg.hash = fnv1a64(cfg.canonical);
  cfg.set_seed(cfg.seed);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({"cannot open configuration file '" + path.string() + "'"});
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace hawkes
