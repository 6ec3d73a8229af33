#include "qecmag/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qecmag {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool is_unit_word(const std::string& tok) {
  return tok == "gamma" || tok == "/gamma" || tok == "MHz" || tok == "us" || tok == "ns" ||
         tok == "percent" || tok == "%";
}

std::vector<std::string> split_value(const std::string& value) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : value) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

bool parse_double(const std::string& tok, double& out) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + tok.size() && !tok.empty();
}

const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::pure: return "dimensionless";
    case Quantity::rate: return "rate";
    case Quantity::time_us: return "time";
    case Quantity::coupling: return "coupling";
    case Quantity::probability: return "probability";
  }
  return "?";
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str(), path);
}

Config Config::from_text(const std::string& text, const std::string& source_name) {
  Config cfg;
  cfg.source_name_ = source_name;
  cfg.raw_text_ = text;

  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(source_name + ": unterminated section header", line_number);
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(source_name + ": empty section name", line_number);
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source_name + ": expected key = value", line_number);

    ConfigEntry entry;
    entry.section = section;
    entry.key = trim(line.substr(0, eq));
    entry.line = line_number;
    if (entry.key.empty()) throw ConfigError(source_name + ": empty key", line_number);

    std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError(source_name + ": empty value", line_number);
    entry.raw = value;

    std::vector<std::string> tokens = split_value(value);
    if (!tokens.empty() && is_unit_word(tokens.back())) {
      entry.unit = tokens.back() == "%" ? "percent" : tokens.back();
      tokens.pop_back();
    } else if (!tokens.empty() && tokens.back().size() > 1 && tokens.back().back() == '%') {
      entry.unit = "percent";
      tokens.back().pop_back();
    }

    bool numeric = !tokens.empty();
    std::vector<double> numbers;
    for (const std::string& tok : tokens) {
      double v = 0.0;
      if (!parse_double(tok, v)) {
        numeric = false;
        break;
      }
      numbers.push_back(v);
    }
    if (numeric) {
      entry.numbers = std::move(numbers);
      entry.raw = value.substr(0, value.size());
    } else if (!entry.unit.empty()) {
      throw ConfigError(source_name + ": unit suffix on a non-numeric value", line_number);
    }
    cfg.entries_.push_back(std::move(entry));
  }

  if (const ConfigEntry* g = cfg.find("physics", "gamma"))
    cfg.gamma_ = cfg.resolved_number(*g, Quantity::rate);
  return cfg;
}

const ConfigEntry* Config::find(const std::string& section, const std::string& key) const {
  const ConfigEntry* hit = nullptr;  // later entries win
  for (const ConfigEntry& e : entries_)
    if (e.section == section && e.key == key) hit = &e;
  return hit;
}

const ConfigEntry* Config::find_with_override(const std::string& curve,
                                              const std::string& key) const {
  if (!curve.empty())
    if (const ConfigEntry* e = find("curve " + curve, key)) return e;
  if (const ConfigEntry* e = find("run", key)) return e;
  return find("physics", key);
}

bool Config::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

double Config::resolve(const ConfigEntry& entry, Quantity q, double value) const {
  const std::string& u = entry.unit;
  if (u.empty()) return value;
  if (u == "gamma") {
    if (q == Quantity::rate || q == Quantity::coupling) return value * gamma_;
  } else if (u == "/gamma") {
    if (q == Quantity::time_us) {
      if (gamma_ <= 0.0)
        throw ConfigError(source_name_ + ": '/gamma' units need a positive gamma", entry.line);
      return value / gamma_;
    }
  } else if (u == "MHz") {
    if (q == Quantity::rate || q == Quantity::coupling) return value;  // angular MHz = rad/us
  } else if (u == "us") {
    if (q == Quantity::time_us) return value;
  } else if (u == "ns") {
    if (q == Quantity::time_us) return value * 1e-3;
  } else if (u == "percent") {
    if (q == Quantity::probability) return value / 100.0;
  }
  throw ConfigError(source_name_ + ": unit '" + u + "' does not fit a " + quantity_name(q) +
                        " for key '" + entry.key + "'",
                    entry.line);
}

double Config::resolved_number(const ConfigEntry& entry, Quantity q) const {
  if (entry.numbers.size() != 1)
    throw ConfigError(source_name_ + ": key '" + entry.key + "' is not a single number",
                      entry.line);
  return resolve(entry, q, entry.numbers.front());
}

double Config::number(const std::string& section, const std::string& key, Quantity q) const {
  const ConfigEntry* e = find(section, key);
  if (!e)
    throw ConfigError(source_name_ + ": missing key '" + key + "' in section [" + section + "]",
                      0);
  return resolved_number(*e, q);
}

double Config::number_or(const std::string& section, const std::string& key, Quantity q,
                         double fallback) const {
  const ConfigEntry* e = find(section, key);
  return e ? resolved_number(*e, q) : fallback;
}

std::vector<double> Config::number_list(const std::string& section, const std::string& key,
                                        Quantity q) const {
  const ConfigEntry* e = find(section, key);
  if (!e)
    throw ConfigError(source_name_ + ": missing key '" + key + "' in section [" + section + "]",
                      0);
  if (e->numbers.empty())
    throw ConfigError(source_name_ + ": key '" + key + "' is not numeric", e->line);
  std::vector<double> out;
  out.reserve(e->numbers.size());
  for (double v : e->numbers) out.push_back(resolve(*e, q, v));
  return out;
}

std::string Config::text(const std::string& section, const std::string& key) const {
  const ConfigEntry* e = find(section, key);
  if (!e)
    throw ConfigError(source_name_ + ": missing key '" + key + "' in section [" + section + "]",
                      0);
  return e->raw;
}

std::string Config::text_or(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
  const ConfigEntry* e = find(section, key);
  return e ? e->raw : fallback;
}

std::vector<std::string> Config::curve_names() const {
  std::vector<std::string> names;
  for (const ConfigEntry& e : entries_) {
    if (e.section.rfind("curve ", 0) != 0) continue;
    const std::string name = trim(e.section.substr(6));
    bool seen = false;
    for (const std::string& n : names) seen = seen || n == name;
    if (!seen) names.push_back(name);
  }
  return names;
}

ExperimentConfig Config::experiment(const std::string& curve) const {
  ExperimentConfig cfg;
  cfg.gamma = gamma_;

  auto num = [&](const char* key, Quantity q, double fallback) {
    const ConfigEntry* e = find_with_override(curve, key);
    return e ? resolved_number(*e, q) : fallback;
  };
  auto str = [&](const char* key, const std::string& fallback) {
    const ConfigEntry* e = find_with_override(curve, key);
    return e ? e->raw : fallback;
  };

  cfg.tau_ec = num("tau_ec", Quantity::time_us, cfg.tau_ec);
  cfg.p_gate = num("p_gate", Quantity::probability, cfg.p_gate);
  cfg.g_s = num("g_s", Quantity::coupling, cfg.g_s);
  cfg.total_time = num("total_time", Quantity::time_us, cfg.total_time);
  cfg.n_runs = static_cast<int>(num("runs", Quantity::pure, cfg.n_runs));
  cfg.seed = static_cast<std::uint64_t>(num("seed", Quantity::pure, 0.0));
  cfg.workers = static_cast<int>(num("workers", Quantity::pure, cfg.workers));
  cfg.substeps = static_cast<int>(num("substeps", Quantity::pure, cfg.substeps));
  cfg.fine_sampling = num("fine_sampling", Quantity::pure, 0.0) != 0.0;

  const std::string mode = str("mode", "deterministic");
  if (mode == "deterministic") {
    cfg.mode = RunMode::deterministic;
  } else if (mode == "trajectory") {
    cfg.mode = RunMode::trajectory;
  } else {
    const ConfigEntry* e = find_with_override(curve, "mode");
    throw ConfigError(source_name_ + ": mode must be deterministic or trajectory, got '" +
                          mode + "'",
                      e ? e->line : 0);
  }

  const std::string policy = str("abort_policy", "continue");
  if (policy == "continue" || policy == "continue_uncorrected") {
    cfg.abort_policy = AbortPolicy::continue_uncorrected;
  } else if (policy == "discard" || policy == "discard_shot") {
    cfg.abort_policy = AbortPolicy::discard_shot;
  } else {
    const ConfigEntry* e = find_with_override(curve, "abort_policy");
    throw ConfigError(source_name_ + ": abort_policy must be continue or discard, got '" +
                          policy + "'",
                      e ? e->line : 0);
  }

  cfg.coupler = coupler_params(curve);
  return cfg;
}

std::optional<CouplerParams> Config::coupler_params(const std::string& curve) const {
  (void)curve;  // coupler blocks are shared across curves
  if (!has("coupler", "g_prime")) return std::nullopt;
  CouplerParams params;
  params.g_prime = number("coupler", "g_prime", Quantity::coupling);
  params.delta = number("coupler", "delta", Quantity::coupling);
  params.alpha = number("coupler", "alpha", Quantity::coupling);
  params.g_s = number_or("coupler", "g_s", Quantity::coupling, 0.0);
  params.dgs_dphi = number_or("coupler", "dgs_dphi", Quantity::coupling, 0.0);
  params.area_um2 = number_or("coupler", "area_um2", Quantity::pure, 0.0);
  params.gamma_rates.down = number_or("coupler", "gamma_down", Quantity::rate, 0.0);
  params.gamma_rates.zero = number_or("coupler", "gamma_zero", Quantity::rate, 0.0);
  params.gamma_rates.up = number_or("coupler", "gamma_up", Quantity::rate, 0.0);
  params.hybridization_ratio =
      number_or("coupler", "hybridization_ratio", Quantity::pure, params.hybridization_ratio);
  return params;
}

}  // namespace qecmag
