#pragma once

// Monostatic link budget: antenna gain, round-trip transmissivity eta,
// received power and the (effective) SNR chain.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "qirange/atmosphere.hpp"
#include "qirange/error.hpp"
#include "qirange/radiometry.hpp"
#include "qirange/types.hpp"

namespace qirange {

/// G = 4 pi A / lambda^2 with lambda = c / f.
inline double antenna_gain(double aperture_m2, Frequency f, const PhysicalConstants& k = kReferenceConstants) {
  detail::require_positive(aperture_m2, "aperture");
  detail::require_positive(f.hertz, "frequency");
  const double lambda = k.speed_of_light / f.hertz;
  return 4.0 * std::numbers::pi * aperture_m2 / (lambda * lambda);
}

struct RadarParams {
  double sigma_m2 = 1.0;     // target cross section
  double aperture_m2 = 0.5;  // effective antenna area

  void validate() const {
    detail::require_positive(sigma_m2, "sigma");
    detail::require_positive(aperture_m2, "aperture");
  }
  double wavelength(Frequency f, const PhysicalConstants& k = kReferenceConstants) const {
    detail::require_positive(f.hertz, "frequency");
    return k.speed_of_light / f.hertz;
  }
  double gain(Frequency f, const PhysicalConstants& k = kReferenceConstants) const {
    return antenna_gain(aperture_m2, f, k);
  }
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

struct DetectionSpec {
  double p_d = 0.7;
  double p_fa = 1e-6;
  double snr_min_db = 10.0;

  void validate() const {
    if (!(p_fa > 0.0 && p_fa < p_d && p_d < 1.0)) {
      throw DomainError("detection spec requires 0 < p_fa < p_d < 1 (p_d = " + detail::format_number(p_d) +
                        ", p_fa = " + detail::format_number(p_fa) + ")");
    }
    if (!std::isfinite(snr_min_db)) throw DomainError("snr_min_db must be finite");
  }
  double snr_min_linear() const { return db_to_linear(snr_min_db); }
};

/// M = round(tau B), at least 1.
inline std::uint64_t integration_count(double tau_s, Bandwidth b) {
  detail::require_positive(tau_s, "tau");
  detail::require_positive(b.hertz, "bandwidth");
  const double m = std::round(tau_s * b.hertz);
  if (m < 1.0) throw DomainError("integration count round(tau * B) is below 1");
  return static_cast<std::uint64_t>(m);
}

struct IntegrationSpec {
  double tau_s = 1.0;
  std::uint64_t count(Bandwidth b) const { return integration_count(tau_s, b); }
};

/// (4 pi)^exponent; 2 follows from the link algebra, 4 is the printed range formula.
inline double four_pi_power(int exponent) {
  if (exponent != 2 && exponent != 4) throw DomainError("four_pi_exponent must be 2 or 4");
  return std::pow(4.0 * std::numbers::pi, exponent);
}

/// eta = sigma G A F^2 / ((4 pi)^2 R^4). Throws UnphysicalGeometryError if eta > 1.
inline double channel_transmissivity(double sigma_m2, double gain, double aperture_m2, FormFactor f_form,
                                     double range_m, int four_pi_exponent = 2) {
  detail::require_positive(sigma_m2, "sigma");
  detail::require_positive(gain, "gain");
  detail::require_positive(aperture_m2, "aperture");
  detail::require_positive(range_m, "range");
  if (!(f_form.value > 0.0 && f_form.value <= 1.0)) throw DomainError("form factor must lie in (0, 1]");
  const double r2 = range_m * range_m;
  const double eta =
      sigma_m2 * gain * aperture_m2 * f_form.value * f_form.value / (four_pi_power(four_pi_exponent) * r2 * r2);
  if (eta > 1.0) {
    throw UnphysicalGeometryError(detail::describe("transmissivity", eta) + " exceeds 1 at range " +
                                  detail::format_number(range_m) + " m");
  }
  return eta;
}

inline void require_transmissivity(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw DomainError(detail::describe("eta", eta) + ": must lie in (0, 1]");
}

inline Power received_power(Power p_t, double eta) {
  require_transmissivity(eta);
  detail::require_non_negative(p_t.watts, "transmit power");
  return Power{p_t.watts * eta};
}

/// SNR = eta N_s / N_B.
inline double snr(double eta, MeanPhotonNumber n_s, NoiseOccupancy n_b) {
  require_transmissivity(eta);
  detail::require_non_negative(n_s.value, "n_s");
  detail::require_positive(n_b.value, "n_b");
  return eta * n_s.value / n_b.value;
}

inline double snr_eff(double eta, std::uint64_t m, MeanPhotonNumber n_s, NoiseOccupancy n_b) {
  if (m < 1) throw DomainError("integration count must be at least 1");
  return static_cast<double>(m) * snr(eta, n_s, n_b);
}

/// Albersheim's single-pulse-equivalent threshold estimate in dB. Valid for
/// 0.1 <= p_d <= 0.9, 1e-7 <= p_fa <= 1e-3, 1 <= m <= 8096.
inline double albersheim_snr_min(double p_d, double p_fa, double m) {
  if (!(p_d >= 0.1 && p_d <= 0.9) || !(p_fa >= 1e-7 && p_fa <= 1e-3) || !(m >= 1.0 && m <= 8096.0)) {
    throw DomainError("Albersheim estimate valid only for 0.1 <= p_d <= 0.9, 1e-7 <= p_fa <= 1e-3, 1 <= m <= 8096");
  }
  const double a = std::log(0.62 / p_fa);
  const double b = std::log(p_d / (1.0 - p_d));
  return -5.0 * std::log10(m) + (6.2 + 4.54 / std::sqrt(m + 0.44)) * std::log10(a + 0.12 * a * b + 1.7 * b);
}

/// Derived quantities at one (R, N_s, f) point.
struct LinkBudget {
  double eta = 0.0;
  FormFactor f_form;
  double snr = 0.0;
  double snr_eff = 0.0;
  Power p_t;
  Power p_r;
};

struct LinkPoint {
  RadarParams radar;
  MeanPhotonNumber n_s;
  Frequency f;
  Bandwidth b;
  NoiseOccupancy n_b;
  AbsorptionCoefficient gamma;
  std::uint64_t m = 1;
  int four_pi_exponent = 2;
  PhysicalConstants constants = kReferenceConstants;
};

inline LinkBudget evaluate_link(const LinkPoint& p, double range_m) {
  p.radar.validate();
  LinkBudget lb;
  lb.f_form = form_factor(p.gamma, range_m);
  lb.eta = channel_transmissivity(p.radar.sigma_m2, p.radar.gain(p.f, p.constants), p.radar.aperture_m2,
                                  lb.f_form, range_m, p.four_pi_exponent);
  lb.snr = snr(lb.eta, p.n_s, p.n_b);
  lb.snr_eff = snr_eff(lb.eta, p.m, p.n_s, p.n_b);
  lb.p_t = transmit_power(p.n_s, p.f, p.b, p.constants);
  lb.p_r = received_power(lb.p_t, lb.eta);
  return lb;
}

}  // namespace qirange
