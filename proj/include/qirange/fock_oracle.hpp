#pragma once

// Truncated Fock-space re-derivation of the transmitter covariances. The state
// expansion is built explicitly as a two-mode ket and each second moment is
// evaluated by applying ladder operators to it, so nothing here reuses the
// closed forms in quantum_states.hpp.

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qirange/error.hpp"
#include "qirange/quantum_states.hpp"
#include "qirange/types.hpp"

namespace qirange {

/// Largest retained photon number per mode.
struct FockCutoff {
  std::size_t n_max = 1;
};

inline constexpr double kFockTailTolerance = 1e-12;

/// Probability mass of the TMSV expansion beyond n_max: (N/(N+1))^(n_max+1).
inline double tmsv_tail_probability(MeanPhotonNumber n_s, FockCutoff cutoff) {
  detail::require_positive(n_s.value, "n_s");
  const double q = n_s.value / (n_s.value + 1.0);
  return std::pow(q, static_cast<double>(cutoff.n_max + 1));
}

/// Poisson(mean) mass above n_max, summed directly to avoid 1 - cdf cancellation.
inline double poisson_tail_probability(double mean, std::size_t n_max) {
  detail::require_non_negative(mean, "mean");
  if (mean == 0.0) return 0.0;
  // log p_n via lgamma keeps large n_max finite.
  double total = 0.0;
  for (std::size_t n = n_max + 1;; ++n) {
    const double nd = static_cast<double>(n);
    const double term = std::exp(-mean + nd * std::log(mean) - std::lgamma(nd + 1.0));
    total += term;
    if (nd > mean && term < total * 1e-17) break;
    if (term == 0.0 && nd > mean) break;
  }
  return total;
}

/// Mass of |alpha>|alpha> outside the n_max x n_max box, |alpha|^2 = N_s/2.
inline double coherent_pair_tail_probability(MeanPhotonNumber n_s, FockCutoff cutoff) {
  const double t = poisson_tail_probability(n_s.value / 2.0, cutoff.n_max);
  return 2.0 * t - t * t;
}

inline FockCutoff minimal_tmsv_cutoff(MeanPhotonNumber n_s) {
  FockCutoff c{1};
  while (tmsv_tail_probability(n_s, c) >= kFockTailTolerance) ++c.n_max;
  return c;
}

inline FockCutoff minimal_coherent_cutoff(MeanPhotonNumber n_s) {
  FockCutoff c{1};
  while (coherent_pair_tail_probability(n_s, c) >= kFockTailTolerance) ++c.n_max;
  return c;
}

/// Dense two-mode ket |psi> = sum psi(n, m) |n>_S |m>_I, truncated to `levels` per mode.
class TwoModeKet {
 public:
  using Amplitude = std::complex<double>;

  explicit TwoModeKet(std::size_t levels) : levels_(levels), amp_(levels * levels) {}

  std::size_t levels() const { return levels_; }
  Amplitude& at(std::size_t n_signal, std::size_t n_idler) { return amp_[n_signal * levels_ + n_idler]; }
  Amplitude at(std::size_t n_signal, std::size_t n_idler) const { return amp_[n_signal * levels_ + n_idler]; }

  /// Applies a (signal_mode = true) or a_I. Amplitude lowered below |0> vanishes.
  TwoModeKet annihilate(bool signal_mode) const {
    TwoModeKet out(levels_);
    for (std::size_t n = 0; n < levels_; ++n) {
      for (std::size_t m = 0; m < levels_; ++m) {
        const std::size_t k = signal_mode ? n : m;
        if (k == 0) continue;
        const double f = std::sqrt(static_cast<double>(k));
        if (signal_mode) {
          out.at(n - 1, m) += f * at(n, m);
        } else {
          out.at(n, m - 1) += f * at(n, m);
        }
      }
    }
    return out;
  }

  /// Applies a^dag. Throws if amplitude would leave the truncated space.
  TwoModeKet create(bool signal_mode) const {
    TwoModeKet out(levels_);
    for (std::size_t n = 0; n < levels_; ++n) {
      for (std::size_t m = 0; m < levels_; ++m) {
        if (at(n, m) == Amplitude{}) continue;
        const std::size_t k = (signal_mode ? n : m) + 1;
        if (k >= levels_) throw CutoffError("creation operator left the truncated Fock space");
        const double f = std::sqrt(static_cast<double>(k));
        if (signal_mode) {
          out.at(n + 1, m) += f * at(n, m);
        } else {
          out.at(n, m + 1) += f * at(n, m);
        }
      }
    }
    return out;
  }

  /// R |psi> for R in {I_S, Q_S, I_I, Q_I}.
  TwoModeKet quadrature(Quadrature q) const {
    const bool signal = (q == kSignalI || q == kSignalQ);
    const bool in_phase = (q == kSignalI || q == kIdlerI);
    const TwoModeKet lowered = annihilate(signal);
    const TwoModeKet raised = create(signal);
    TwoModeKet out(levels_);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // I = (a + a^dag)/sqrt2, Q = (a - a^dag)/(i sqrt2) = -i (a - a^dag)/sqrt2.
    const Amplitude scale = in_phase ? Amplitude{inv_sqrt2, 0.0} : Amplitude{0.0, -inv_sqrt2};
    const double sign = in_phase ? 1.0 : -1.0;
    for (std::size_t i = 0; i < amp_.size(); ++i) {
      out.amp_[i] = scale * (lowered.amp_[i] + sign * raised.amp_[i]);
    }
    return out;
  }

  /// <this|other>
  Amplitude inner(const TwoModeKet& other) const {
    Amplitude s{};
    for (std::size_t i = 0; i < amp_.size(); ++i) s += std::conj(amp_[i]) * other.amp_[i];
    return s;
  }

  double norm_squared() const { return inner(*this).real(); }

  /// <psi| a^dag a |psi> for the chosen mode.
  double mean_photons(bool signal_mode) const {
    double s = 0.0;
    for (std::size_t n = 0; n < levels_; ++n) {
      for (std::size_t m = 0; m < levels_; ++m) {
        s += static_cast<double>(signal_mode ? n : m) * std::norm(at(n, m));
      }
    }
    return s;
  }

  /// 2 Re <R_j psi | R_k psi> for every quadrature pair.
  QuadratureCovariance second_moments() const {
    std::vector<TwoModeKet> applied;
    applied.reserve(4);
    for (int q = 0; q < 4; ++q) applied.push_back(quadrature(static_cast<Quadrature>(q)));
    QuadratureCovariance::Matrix m;
    for (int j = 0; j < 4; ++j) {
      for (int k = j; k < 4; ++k) {
        m(j, k) = m(k, j) = 2.0 * applied[j].inner(applied[k]).real();
      }
    }
    return QuadratureCovariance(m);
  }

 private:
  std::size_t levels_;
  std::vector<Amplitude> amp_;
};

/// sum_{n <= n_max} sqrt(N^n / (N+1)^(n+1)) |n, n>, with one spare level for a^dag.
inline TwoModeKet tmsv_ket(MeanPhotonNumber n_s, FockCutoff cutoff) {
  detail::require_positive(n_s.value, "n_s");
  const double tail = tmsv_tail_probability(n_s, cutoff);
  if (cutoff.n_max < 1 || !(tail < kFockTailTolerance)) {
    throw CutoffError(detail::describe("TMSV tail probability", tail) + " at n_max = " +
                      std::to_string(cutoff.n_max) + " exceeds 1e-12");
  }
  TwoModeKet psi(cutoff.n_max + 2);
  const double n = n_s.value;
  for (std::size_t k = 0; k <= cutoff.n_max; ++k) {
    const double kd = static_cast<double>(k);
    psi.at(k, k) = std::exp(0.5 * (kd * std::log(n) - (kd + 1.0) * std::log1p(n)));
  }
  return psi;
}

/// |alpha>_S |alpha>_I with alpha = sqrt(N_s / 2) real and positive.
inline TwoModeKet coherent_pair_ket(MeanPhotonNumber n_s, FockCutoff cutoff) {
  detail::require_non_negative(n_s.value, "n_s");
  const double tail = coherent_pair_tail_probability(n_s, cutoff);
  if (cutoff.n_max < 1 || tail > kFockTailTolerance) {
    throw CutoffError(detail::describe("coherent-pair tail probability", tail) + " at n_max = " +
                      std::to_string(cutoff.n_max) + " exceeds 1e-12");
  }
  const double alpha = std::sqrt(n_s.value / 2.0);
  std::vector<double> c(cutoff.n_max + 1);
  for (std::size_t k = 0; k <= cutoff.n_max; ++k) {
    const double kd = static_cast<double>(k);
    // e^{-|a|^2/2} a^k / sqrt(k!)
    c[k] = (alpha == 0.0) ? (k == 0 ? 1.0 : 0.0)
                          : std::exp(-alpha * alpha / 2.0 + kd * std::log(alpha) - 0.5 * std::lgamma(kd + 1.0));
  }
  TwoModeKet psi(cutoff.n_max + 2);
  for (std::size_t n = 0; n <= cutoff.n_max; ++n) {
    for (std::size_t m = 0; m <= cutoff.n_max; ++m) psi.at(n, m) = c[n] * c[m];
  }
  return psi;
}

inline QuadratureCovariance tmsv_covariance_oracle(MeanPhotonNumber n_s, FockCutoff cutoff) {
  return tmsv_ket(n_s, cutoff).second_moments();
}

inline QuadratureCovariance tmsv_covariance_oracle(MeanPhotonNumber n_s) {
  return tmsv_covariance_oracle(n_s, minimal_tmsv_cutoff(n_s));
}

/// I-sector entries reproduce 2N_s + 1 and 2N_s; the Q-sector computes to
/// vacuum diagonal and zero cross term for a real amplitude.
inline QuadratureCovariance coherent_covariance_oracle(MeanPhotonNumber n_s, FockCutoff cutoff) {
  return coherent_pair_ket(n_s, cutoff).second_moments();
}

inline QuadratureCovariance coherent_covariance_oracle(MeanPhotonNumber n_s) {
  return coherent_covariance_oracle(n_s, minimal_coherent_cutoff(n_s));
}

}  // namespace qirange
