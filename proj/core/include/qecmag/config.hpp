#pragma once

#include "qecmag/experiments.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// key = value config files with [sections], '#' comments, and explicit unit
// suffixes resolved at parse time:
//   bare      dimensionless, 1/us for rates, us for times, rad/us for couplings
//   gamma     multiples of gamma            (g_s = 10 gamma)
//   /gamma    units of 1/gamma, i.e. time   (tau_ec = 0.05 /gamma)
//   MHz       angular MHz = rad/us          (g_prime = 1 MHz)
//   us, ns    times                         (t_cphase = 40 ns)
//   percent,% probabilities                 (p_gate = 0.1 %)
// [curve NAME] sections override base keys per output curve.

namespace qecmag {

struct ConfigError : std::runtime_error {
  int line = 0;
  ConfigError(const std::string& message, int line_number)
      : std::runtime_error(message), line(line_number) {}
};

enum class Quantity : std::uint8_t {
  pure,         // dimensionless
  rate,         // 1/us
  time_us,      // us
  coupling,     // rad/us
  probability,  // [0,1]
};

struct ConfigEntry {
  std::string section;
  std::string key;
  std::string raw;              // value text without the unit suffix
  std::string unit;             // "", "gamma", "/gamma", "MHz", "us", "ns", "percent"
  std::vector<double> numbers;  // empty if the value is not numeric
  int line = 0;
};

class Config {
 public:
  static Config from_file(const std::string& path);
  static Config from_text(const std::string& text, const std::string& source_name = "<config>");

  bool has(const std::string& section, const std::string& key) const;
  double number(const std::string& section, const std::string& key, Quantity q) const;
  double number_or(const std::string& section, const std::string& key, Quantity q,
                   double fallback) const;
  std::vector<double> number_list(const std::string& section, const std::string& key,
                                  Quantity q) const;
  std::string text(const std::string& section, const std::string& key) const;
  std::string text_or(const std::string& section, const std::string& key,
                      const std::string& fallback) const;

  // Curve sections in file order.
  std::vector<std::string> curve_names() const;

  // [physics] + [run], with [curve NAME] overrides when given.
  ExperimentConfig experiment(const std::string& curve = "") const;
  std::optional<CouplerParams> coupler_params(const std::string& curve = "") const;

  double gamma() const { return gamma_; }
  const std::string& source_name() const { return source_name_; }
  const std::string& raw_text() const { return raw_text_; }
  const std::vector<ConfigEntry>& entries() const { return entries_; }

 private:
  const ConfigEntry* find(const std::string& section, const std::string& key) const;
  const ConfigEntry* find_with_override(const std::string& curve, const std::string& key) const;
  double resolve(const ConfigEntry& entry, Quantity q, double value) const;
  double resolved_number(const ConfigEntry& entry, Quantity q) const;

  std::vector<ConfigEntry> entries_;
  std::string source_name_;
  std::string raw_text_;
  double gamma_ = 1.0;
};

}  // namespace qecmag
