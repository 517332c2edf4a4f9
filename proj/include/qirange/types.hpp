#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <string_view>

#include "qirange/error.hpp"

namespace qirange {

/// Mean photon number per mode (N_s for the transmitter).
struct MeanPhotonNumber {
  double value = 0.0;
};

/// Thermal photons per mode at the receiver (N_B).
struct NoiseOccupancy {
  double value = 0.0;
};

struct Frequency {
  double hertz = 0.0;
};

struct Bandwidth {
  double hertz = 0.0;
};

struct Temperature {
  double kelvin = 0.0;
};

/// Power in watts, with a dBm view for positive values.
struct Power {
  double watts = 0.0;

  static Power from_dbm(double dbm) { return Power{1e-3 * std::pow(10.0, dbm / 10.0)}; }

  double dbm() const {
    if (!(watts > 0.0) || !std::isfinite(watts)) {
      throw DomainError("dBm is undefined for non-positive power");
    }
    return 10.0 * std::log10(watts / 1e-3);
  }
};

/// Specific attenuation of the atmosphere in dB/km (gamma).
struct AbsorptionCoefficient {
  double db_per_km = 0.0;
};

/// One-way power transmission through the atmosphere, in (0, 1].
struct FormFactor {
  double value = 1.0;
};

namespace detail {

inline std::string format_number(double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

inline std::string describe(std::string_view name, double value) {
  return std::string(name) + " = " + format_number(value);
}

inline void require_positive(double v, std::string_view name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(describe(name, v) + ": must be positive and finite");
  }
}

inline void require_non_negative(double v, std::string_view name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError(describe(name, v) + ": must be non-negative and finite");
  }
}

}  // namespace detail
}  // namespace qirange
