#include "qavg/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qavg/extremizers.hpp"

namespace qavg {
namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!known.contains(key))
      throw ConfigError("config: unknown key '" + key + "' in " + where);
}

template <typename T>
void read_into(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config: bad value for '") + key + "'");
  }
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& text,
                                   const ExperimentConfig& base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");

  static const std::set<std::string> known = {
      "q_list", "d",       "coeffs",     "families",
      "seeds",  "n",       "tolerances", "output_dir",
      "grid_budget", "trials", "sets_per_regime"};
  reject_unknown_keys(doc, known, "top level");

  ExperimentConfig cfg = base;
  read_into(doc, "q_list", cfg.q_list);
  read_into(doc, "d", cfg.d);
  read_into(doc, "coeffs", cfg.coeffs);
  read_into(doc, "families", cfg.families);
  read_into(doc, "seeds", cfg.seeds);
  read_into(doc, "output_dir", cfg.output_dir);
  read_into(doc, "grid_budget", cfg.grid_budget);
  read_into(doc, "trials", cfg.trials);
  read_into(doc, "sets_per_regime", cfg.sets_per_regime);

  if (doc.contains("n")) {
    // optional consistency declaration: every q must equal p^n
    const auto n = doc.at("n").get<std::uint32_t>();
    for (auto q : cfg.q_list)
      if (factor_prime_power(q).second != n)
        throw ConfigError("config: q_list entry inconsistent with declared n");
  }

  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    if (!t.is_object()) throw ConfigError("config: tolerances must be an object");
    static const std::set<std::string> tol_keys = {
        "identity",      "kernel_identity", "exact_bound_slack",
        "linf_ceiling",  "khat_ceiling",    "growth_ceiling",
        "ratio_ceiling", "consec_lo",       "consec_hi",
        "slope_lo",      "slope_hi"};
    reject_unknown_keys(t, tol_keys, "tolerances");
    read_into(t, "identity", cfg.tol.identity);
    read_into(t, "kernel_identity", cfg.tol.kernel_identity);
    read_into(t, "exact_bound_slack", cfg.tol.exact_bound_slack);
    read_into(t, "linf_ceiling", cfg.tol.linf_ceiling);
    read_into(t, "khat_ceiling", cfg.tol.khat_ceiling);
    read_into(t, "growth_ceiling", cfg.tol.growth_ceiling);
    read_into(t, "ratio_ceiling", cfg.tol.ratio_ceiling);
    read_into(t, "consec_lo", cfg.tol.consec_lo);
    read_into(t, "consec_hi", cfg.tol.consec_hi);
    read_into(t, "slope_lo", cfg.tol.slope_lo);
    read_into(t, "slope_hi", cfg.tol.slope_hi);
  }

  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config_file(const std::filesystem::path& path,
                                  const ExperimentConfig& base) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config_json(ss.str(), base);
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.q_list.empty()) throw ConfigError("config: empty q_list");
  if (cfg.d < 2) throw ConfigError("config: d must be at least 2");
  for (auto q : cfg.q_list) {
    const auto [p, n] = factor_prime_power(q);  // throws on non prime powers
    if (p == 2) throw EvenCharacteristicError("even characteristic");
    std::uint64_t size = 1;
    for (int i = 0; i < cfg.d; ++i) {
      size *= q;
      if (size > cfg.grid_budget) throw GridBudgetError("grid budget exceeded");
    }
    if (!cfg.coeffs.empty()) {
      if (int(cfg.coeffs.size()) != cfg.d)
        throw ConfigError("config: coeffs length must equal d");
      for (auto c : cfg.coeffs)
        if (c % std::int64_t(p) == 0)
          throw DegenerateFormError("config: zero coefficient mod p");
    }
  }
  for (const auto& fam : cfg.families) parse_family(fam);  // throws on junk
  if (cfg.seeds.empty()) throw ConfigError("config: empty seeds");
  if (cfg.trials < 1) throw ConfigError("config: trials must be positive");
  if (cfg.sets_per_regime < 1)
    throw ConfigError("config: sets_per_regime must be positive");
}

}  // namespace qavg
