#pragma once

// Photons-per-mode <-> power conversions and thermal background bookkeeping.
// Occupancy uses the Rayleigh-Jeans form k_B T / (h f) throughout.

#include "qirange/types.hpp"

namespace qirange {

struct PhysicalConstants {
  double planck = 6.63e-34;     // J s
  double boltzmann = 1.38e-23;  // J/K
  double speed_of_light = 3e8;  // m/s

  /// Three-significant-figure reference values.
  static constexpr PhysicalConstants reference() { return {6.63e-34, 1.38e-23, 3e8}; }
  /// Exact SI-defined values.
  static constexpr PhysicalConstants codata() { return {6.62607015e-34, 1.380649e-23, 299792458.0}; }

  friend constexpr bool operator==(const PhysicalConstants&, const PhysicalConstants&) = default;
};

inline constexpr PhysicalConstants kReferenceConstants = PhysicalConstants::reference();

/// P_t = N_s h f B.
inline Power transmit_power(MeanPhotonNumber n_s, Frequency f, Bandwidth b,
                            const PhysicalConstants& k = kReferenceConstants) {
  detail::require_positive(n_s.value, "n_s");
  detail::require_positive(f.hertz, "frequency");
  detail::require_positive(b.hertz, "bandwidth");
  return Power{n_s.value * k.planck * f.hertz * b.hertz};
}

inline MeanPhotonNumber photons_per_mode(Power p, Frequency f, Bandwidth b,
                                         const PhysicalConstants& k = kReferenceConstants) {
  detail::require_positive(p.watts, "power");
  detail::require_positive(f.hertz, "frequency");
  detail::require_positive(b.hertz, "bandwidth");
  return MeanPhotonNumber{p.watts / (k.planck * f.hertz * b.hertz)};
}

/// N_B = k_B T / (h f).
inline NoiseOccupancy thermal_occupancy(Temperature t, Frequency f,
                                        const PhysicalConstants& k = kReferenceConstants) {
  detail::require_positive(t.kelvin, "temperature");
  detail::require_positive(f.hertz, "frequency");
  return NoiseOccupancy{k.boltzmann * t.kelvin / (k.planck * f.hertz)};
}

/// P_B = k_B T B.
inline Power noise_power(Temperature t, Bandwidth b, const PhysicalConstants& k = kReferenceConstants) {
  detail::require_positive(t.kelvin, "temperature");
  detail::require_positive(b.hertz, "bandwidth");
  return Power{k.boltzmann * t.kelvin * b.hertz};
}

inline Temperature t_eff_from_noise_power(Power p_b, Bandwidth b,
                                          const PhysicalConstants& k = kReferenceConstants) {
  detail::require_positive(p_b.watts, "noise power");
  detail::require_positive(b.hertz, "bandwidth");
  return Temperature{p_b.watts / (k.boltzmann * b.hertz)};
}

}  // namespace qirange
