#include "qecmag/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qecmag {

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double rms = 0.0;
};

// Ordinary least squares with the textbook slope variance estimate.
LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw fit_error("degenerate abscissa: all x values coincide");

  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;

  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / static_cast<double>(n));
  if (n > 2) fit.slope_stderr = std::sqrt(ss / static_cast<double>(n - 2) / sxx);
  return fit;
}

bool wants_two_f_minus_one(const TimeSeries& series, CoherenceTransform transform) {
  if (transform == CoherenceTransform::two_f_minus_one) return true;
  if (transform == CoherenceTransform::direct) return false;
  return series.label.rfind("fidelity", 0) == 0;
}

}  // namespace

RateFit fit_gamma_eff(const TimeSeries& series, CoherenceTransform transform) {
  series.validate();
  const bool fidelity_like = wants_two_f_minus_one(series, transform);

  // Skip the first two rounds (transient from the initial correction) and stop
  // once the envelope drops below 0.1, where the log becomes noise dominated.
  constexpr std::size_t kSkip = 2;
  constexpr double kFloor = 0.1;

  std::vector<double> ts;
  std::vector<double> logs;
  ts.reserve(series.times.size());
  logs.reserve(series.times.size());
  double last_coherence = 1.0;
  for (std::size_t i = kSkip; i < series.times.size(); ++i) {
    double c = series.values[i];
    if (fidelity_like) c = 2.0 * c - 1.0;
    last_coherence = c;
    if (c < kFloor) break;
    ts.push_back(series.times[i]);
    logs.push_back(std::log(c));
  }

  if (ts.size() < 10) {
    std::ostringstream msg;
    msg << "rate fit on '" << series.label << "' needs >= 10 usable points, got "
        << ts.size() << " (series length " << series.times.size()
        << ", last coherence " << last_coherence << ")";
    throw fit_error(msg.str());
  }

  const LineFit line = least_squares(ts, logs);
  RateFit out;
  out.gamma_eff = -line.slope;
  const double hw = 1.96 * line.slope_stderr;
  out.ci = {out.gamma_eff - hw, out.gamma_eff + hw};
  out.window = {ts.front(), ts.back()};
  out.residual = line.rms;
  out.points_used = static_cast<int>(ts.size());
  return out;
}

XiFit fit_xi(const std::vector<XiSweepPoint>& sweep, double gamma) {
  if (sweep.size() < 3) throw fit_error("xi fit needs at least 3 sweep points");

  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(sweep.size());
  ys.reserve(sweep.size());
  for (const auto& pt : sweep) {
    if (pt.tau_ec <= 0.0) throw fit_error("xi fit: tau_ec must be positive");
    xs.push_back(pt.p_gate / pt.tau_ec);
    ys.push_back(pt.gamma_eff - 4.0 * gamma * gamma * pt.tau_ec);
  }

  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  int distinct = 1;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] > sorted[i - 1] * (1.0 + 1e-12) + 1e-300) ++distinct;
  if (distinct < 3) throw fit_error("xi fit needs >= 3 distinct p_gate/tau_ec values");

  const LineFit line = least_squares(xs, ys);
  XiFit out;
  out.xi = line.slope;
  const double hw = 1.96 * line.slope_stderr;
  out.ci = {out.xi - hw, out.xi + hw};
  out.intercept = line.intercept;
  out.residual = line.rms;

  // Structured residuals mean a single slope does not describe the sweep.
  // The sharpest probe is the spread of per-tau local slopes: within one tau
  // the intercept cancels, so the local slope is that tau's own per-fault
  // cost. Flag a spread beyond 10% instead of silently averaging.
  std::vector<double> local;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    std::vector<double> gx;
    std::vector<double> gy;
    bool first = true;
    for (std::size_t j = 0; j < sweep.size(); ++j) {
      if (sweep[j].tau_ec != sweep[i].tau_ec) continue;
      if (j < i) { first = false; break; }
      gx.push_back(xs[j]);
      gy.push_back(ys[j]);
    }
    if (!first || gx.size() < 2) continue;
    double mn = *std::min_element(gx.begin(), gx.end());
    double mx = *std::max_element(gx.begin(), gx.end());
    if (mx <= mn * (1.0 + 1e-12) + 1e-300) continue;
    local.push_back(least_squares(gx, gy).slope);
  }
  if (local.size() >= 2) {
    const double lo = *std::min_element(local.begin(), local.end());
    const double hi = *std::max_element(local.begin(), local.end());
    const double mid = 0.5 * (lo + hi);
    if (std::abs(mid) > 0.0 && hi - lo > 0.1 * std::abs(mid)) {
      std::ostringstream msg;
      msg << "per-fault cost varies across tau_ec (local slopes " << lo << " to " << hi
          << "); the single-slope model underfits this sweep";
      out.warning = msg.str();
    }
  }
  double scale = 0.0;
  for (double y : ys) scale = std::max(scale, std::abs(y));
  if (out.warning.empty() && scale > 0.0 && line.rms > 0.05 * scale) {
    out.warning =
        "residual rms exceeds 5% of the signal range; the per-fault cost may "
        "not be constant across the sweep";
  }
  return out;
}

}  // namespace qecmag
