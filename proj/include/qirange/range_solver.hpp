#pragma once

// Maximum detection range for classical (correlated coherent) and quantum
// (TMSV) illumination. With attenuation, F depends on R and the range
// equation is solved by bisection on the monotone effective-SNR curve.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qirange/atmosphere.hpp"
#include "qirange/error.hpp"
#include "qirange/link_budget.hpp"
#include "qirange/quantum_states.hpp"
#include "qirange/radiometry.hpp"

namespace qirange {

enum class Illumination { classical, quantum };

inline const char* to_string(Illumination mode) { return mode == Illumination::classical ? "ci" : "qi"; }

/// SNR-domain sensitivity gain of the quantum transmitter, 1 + 1/N_s.
inline double quantum_snr_gain(MeanPhotonNumber n_s) {
  detail::require_positive(n_s.value, "n_s");
  return 1.0 + 1.0 / n_s.value;
}

/// Range-domain factor (1 + 1/N_s)^(1/4).
inline double quantum_advantage_factor(MeanPhotonNumber n_s) { return std::pow(quantum_snr_gain(n_s), 0.25); }

struct RangeProblem {
  RadarParams radar;
  DetectionSpec detection;
  IntegrationSpec integration;
  MeanPhotonNumber n_s;
  Frequency f;
  Bandwidth b;
  NoiseOccupancy n_b;
  AbsorptionCoefficient gamma;  // 0 = lossless
  Illumination mode = Illumination::classical;
  int four_pi_exponent = 2;
  PhysicalConstants constants = kReferenceConstants;

  void validate() const {
    radar.validate();
    detection.validate();
    detail::require_positive(n_s.value, "n_s");
    detail::require_positive(f.hertz, "frequency");
    detail::require_positive(b.hertz, "bandwidth");
    detail::require_positive(n_b.value, "n_b");
    detail::require_non_negative(gamma.db_per_km, "gamma");
    four_pi_power(four_pi_exponent);
    integration.count(b);
  }

  LinkPoint link_point() const {
    return {radar, n_s, f, b, n_b, gamma, integration.count(b), four_pi_exponent, constants};
  }
};

/// Linear SNR_eff threshold; the quantum mode lowers it by 1 + 1/N_s.
inline double detection_threshold(const RangeProblem& p) {
  const double base = p.detection.snr_min_linear();
  return p.mode == Illumination::quantum ? base / quantum_snr_gain(p.n_s) : base;
}

inline double detection_threshold_db(const RangeProblem& p) { return linear_to_db(detection_threshold(p)); }

/// 10 log10 SNR_eff(R), evaluated in the log domain so it stays finite where
/// F underflows or eta would exceed one.
inline double snr_eff_db_at(const RangeProblem& p, double range_m) {
  const double gain = p.radar.gain(p.f, p.constants);
  const double m = static_cast<double>(p.integration.count(p.b));
  const double free_db = linear_to_db(p.radar.sigma_m2 * gain * p.radar.aperture_m2 * m * p.n_s.value /
                                      (four_pi_power(p.four_pi_exponent) * p.n_b.value)) -
                         40.0 * std::log10(range_m);
  // F^2 in dB: -2 gamma R[km]
  return free_db - 2.0 * p.gamma.db_per_km * (range_m / 1000.0);
}

/// Closed-form range with F = 1 (gamma ignored).
inline double r_max_free(const RangeProblem& p) {
  p.validate();
  const double gain = p.radar.gain(p.f, p.constants);
  const double m = static_cast<double>(p.integration.count(p.b));
  const double ci = std::pow(p.radar.sigma_m2 * gain * p.radar.aperture_m2 * m * p.n_s.value /
                                 (four_pi_power(p.four_pi_exponent) * p.n_b.value * p.detection.snr_min_linear()),
                             0.25);
  return p.mode == Illumination::quantum ? ci * quantum_advantage_factor(p.n_s) : ci;
}

struct RangeSolution {
  double r_max = 0.0;        // m
  double residual_db = 0.0;  // |SNR_eff(r_max) - threshold| in dB
  int iterations = 0;
  std::pair<double, double> bracket{0.0, 0.0};
  bool converged = false;
};

struct SolverOptions {
  double relative_width = 1e-9;
  int max_iterations = 200;
  double lower_bracket_fraction = 1e-9;  // epsilon = fraction * r_max_free
};

inline RangeSolution r_max(const RangeProblem& p, const SolverOptions& opt = {}) {
  const double hi0 = r_max_free(p);
  const double threshold_db = detection_threshold_db(p);
  const auto g = [&](double r) { return snr_eff_db_at(p, r) - threshold_db; };

  RangeSolution sol;
  double lo = hi0 * opt.lower_bracket_fraction;
  double hi = hi0;
  sol.bracket = {lo, hi};

  const double g_hi = g(hi);
  if (p.gamma.db_per_km == 0.0 || std::abs(g_hi) < 1e-12) {
    // F == 1 on the whole axis: the free-space root is exact.
    sol.r_max = hi;
    sol.residual_db = std::abs(g_hi);
    sol.converged = sol.residual_db < 1e-6;
    return sol;
  }
  if (!(g(lo) > 0.0)) {
    throw NoDetectionError("effective SNR stays below threshold down to range " + detail::format_number(lo) +
                           " m");
  }
  while (sol.iterations < opt.max_iterations && (hi - lo) > opt.relative_width * hi) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++sol.iterations;
  }
  sol.r_max = 0.5 * (lo + hi);
  sol.residual_db = std::abs(g(sol.r_max));
  sol.converged = (hi - lo) <= opt.relative_width * hi && sol.residual_db < 1e-6;
  return sol;
}

/// Everything that does not vary along a sweep. Builds RangeProblems per (N_s, f, mode).
struct Scenario {
  RadarParams radar;
  DetectionSpec detection;
  IntegrationSpec integration;
  Bandwidth bandwidth{1e9};
  Power noise_power = Power::from_dbm(-63.82);
  std::optional<AttenuationTable> attenuation;
  int four_pi_exponent = 2;
  PhysicalConstants constants = kReferenceConstants;

  Temperature t_eff() const { return t_eff_from_noise_power(noise_power, bandwidth, constants); }

  RangeProblem problem(MeanPhotonNumber n_s, Frequency f, Illumination mode) const {
    RangeProblem p;
    p.radar = radar;
    p.detection = detection;
    p.integration = integration;
    p.n_s = n_s;
    p.f = f;
    p.b = bandwidth;
    p.n_b = thermal_occupancy(t_eff(), f, constants);
    p.gamma = attenuation ? gamma_at(*attenuation, f) : AbsorptionCoefficient{0.0};
    p.mode = mode;
    p.four_pi_exponent = four_pi_exponent;
    p.constants = constants;
    return p;
  }
};

/// `points` values log-spaced from lo to hi inclusive.
inline std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  detail::require_positive(lo, "grid minimum");
  detail::require_positive(hi, "grid maximum");
  if (!(lo < hi)) throw DomainError("grid minimum must be below maximum");
  if (points < 2) throw DomainError("grid needs at least 2 points");
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    out[i] = std::pow(10.0, a + t * (b - a));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

namespace detail {

inline void require_increasing_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("N_s grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require_positive(grid[i], "N_s grid value");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("N_s grid must be strictly increasing");
  }
}

}  // namespace detail

struct RangeSeries {
  Frequency f;
  Illumination mode;
  std::vector<std::optional<RangeSolution>> points;  // nullopt where the solve failed
  std::vector<std::string> errors;                   // parallel to points; empty on success
};

struct RangeSweep {
  std::vector<double> axis;
  std::vector<RangeSeries> series;  // frequency-major, then mode
};

inline RangeSweep sweep_range(const Scenario& scenario, const std::vector<double>& n_s_grid,
                              const std::vector<Frequency>& frequencies, const std::vector<Illumination>& modes) {
  detail::require_increasing_grid(n_s_grid);
  RangeSweep out;
  out.axis = n_s_grid;
  for (const Frequency f : frequencies) {
    for (const Illumination mode : modes) {
      RangeSeries s{f, mode, {}, {}};
      s.points.reserve(n_s_grid.size());
      for (const double n : n_s_grid) {
        try {
          s.points.emplace_back(r_max(scenario.problem(MeanPhotonNumber{n}, f, mode)));
          s.errors.emplace_back();
        } catch (const Error& e) {
          s.points.emplace_back(std::nullopt);
          s.errors.emplace_back(e.what());
        }
      }
      out.series.push_back(std::move(s));
    }
  }
  return out;
}

struct RatioSweep {
  std::vector<double> axis;
  std::vector<double> ratio;
};

inline RatioSweep sweep_ratio(const std::vector<double>& n_s_grid) {
  detail::require_increasing_grid(n_s_grid);
  RatioSweep out{n_s_grid, {}};
  out.ratio.reserve(n_s_grid.size());
  for (const double n : n_s_grid) out.ratio.push_back(correlation_ratio(MeanPhotonNumber{n}));
  return out;
}

}  // namespace qirange
