#pragma once

// Monte Carlo checks of the covariance model and the detection chain.
//
// Samples are zero-mean Gaussian quadrature vectors whose second moments are
// half the convention-scaled covariance, so that estimate_covariance (2x the
// sample second moments) recovers the input matrix.
//
// Random numbers: std::mt19937_64 (fully specified by the C++ standard) with
// a hand-written 53-bit uniform map and Marsaglia polar normals. Library
// distributions are avoided because their algorithms are implementation
// defined.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "qirange/error.hpp"
#include "qirange/quantum_states.hpp"
#include "qirange/types.hpp"

namespace qirange {

struct Seed {
  std::uint64_t value = 0;
};

/// Derives an independent seed for sub-stream `stream` (SplitMix64 finalizer).
inline Seed split_seed(Seed seed, std::uint64_t stream) {
  std::uint64_t z = seed.value + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return Seed{z ^ (z >> 31)};
}

class NormalSource {
 public:
  explicit NormalSource(Seed seed) : engine_(seed.value) {}

  /// Uniform on (-1, 1) from the top 53 bits.
  double symmetric_uniform() {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;  // [0, 1)
    return 2.0 * u - 1.0;
  }

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = symmetric_uniform();
      v = symmetric_uniform();
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

using SampleMatrix = Eigen::Matrix<double, Eigen::Dynamic, 4, Eigen::RowMajor>;

inline constexpr double kEigenvalueClampTolerance = 1e-9;

/// L with L L^T = cov / 2, from the symmetric eigendecomposition. Eigenvalues
/// in [-1e-9, 0) are clamped to zero.
inline Eigen::Matrix4d sampling_factor(const QuadratureCovariance& cov) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(0.5 * cov.matrix());
  if (es.info() != Eigen::Success) throw NotPositiveSemidefiniteError("eigendecomposition failed", 0.0);
  Eigen::Vector4d ev = es.eigenvalues();
  for (int i = 0; i < 4; ++i) {
    if (ev(i) < -kEigenvalueClampTolerance) {
      throw NotPositiveSemidefiniteError(
          "covariance is not positive semi-definite: " + detail::describe("eigenvalue", 2.0 * ev(i)), 2.0 * ev(i));
    }
    ev(i) = std::max(ev(i), 0.0);
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

inline SampleMatrix sample_quadratures(const QuadratureCovariance& cov, std::size_t n, Seed seed) {
  if (n < 1) throw DomainError("sample count must be at least 1");
  const Eigen::Matrix4d l = sampling_factor(cov);
  NormalSource normal(seed);
  SampleMatrix out(static_cast<Eigen::Index>(n), 4);
  Eigen::Vector4d z;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (int k = 0; k < 4; ++k) z(k) = normal();
    out.row(i) = (l * z).transpose();
  }
  return out;
}

/// 2x the sample non-central second moments, filled upper-triangle then mirrored.
inline QuadratureCovariance estimate_covariance(const SampleMatrix& samples) {
  const Eigen::Index n = samples.rows();
  if (n < 2) throw DomainError("covariance estimate needs at least 2 samples");
  QuadratureCovariance::Matrix m = QuadratureCovariance::Matrix::Zero();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = j; k < 4; ++k) m(j, k) += samples(i, j) * samples(i, k);
    }
  }
  for (int j = 0; j < 4; ++j) {
    for (int k = j; k < 4; ++k) {
      m(j, k) *= 2.0 / static_cast<double>(n);
      m(k, j) = m(j, k);
    }
  }
  return QuadratureCovariance(m);
}

/// Lossy thermal return of the signal mode; the idler is kept at the transmitter.
/// Matrix ordering in the returned covariances is (I_R, Q_R, I_I, Q_I).
struct ReturnChannelModel {
  double eta = 1.0;
  NoiseOccupancy n_b;
  QuadratureCovariance base;

  void validate() const {
    if (!(eta > 0.0 && eta <= 1.0)) throw DomainError(detail::describe("eta", eta) + ": must lie in (0, 1]");
    detail::require_non_negative(n_b.value, "n_b");
  }

  /// Return diagonal 2(eta N_s + (1 - eta) N_B) + 1, cross block scaled by sqrt(eta).
  QuadratureCovariance present() const {
    validate();
    const CovarianceBlocks tx = base.blocks();
    const double n_s = (tx.s - 1.0) / 2.0;
    const double ret = 2.0 * (eta * n_s + (1.0 - eta) * n_b.value) + 1.0;
    return QuadratureCovariance::from_blocks(ret, tx.s, std::sqrt(eta) * tx.c);
  }

  /// Return mode replaced by pure thermal light, no correlation with the idler.
  QuadratureCovariance absent() const {
    validate();
    return QuadratureCovariance::from_blocks(2.0 * n_b.value + 1.0, base.blocks().s, 0.0);
  }
};

/// I_R I_I - Q_R Q_I for one mode.
inline double correlation_statistic(const Eigen::Vector4d& x) {
  return x(kSignalI) * x(kIdlerI) - x(kSignalQ) * x(kIdlerQ);
}

struct DeflectionEstimate {
  double mean_shift = 0.0;      // E[D | present] - E[D | absent], per mode
  double absent_variance = 0.0; // Var[D | absent], per mode
  double deflection = 0.0;      // mean_shift^2 / absent_variance
};

struct GainEstimate {
  DeflectionEstimate quantum;
  DeflectionEstimate classical;
  double ratio = 0.0;           // quantum.deflection / classical.deflection
  double standard_error = 0.0;  // delta method on the paired mean shifts
  std::size_t trials = 0;
};

/// Deflection-SNR gain of the TMSV transmitter over the coherent one for the
/// correlation statistic above. Each trial draws one standard normal vector and
/// pushes it through all four hypothesis factors (common random numbers), so
/// the two transmitters share one absent-hypothesis sample and the mean shifts
/// are paired. The ratio does not depend on how many modes D averages over.
inline GainEstimate detector_gain_experiment(MeanPhotonNumber n_s, double eta, NoiseOccupancy n_b,
                                             std::size_t trials, Seed seed) {
  detail::require_positive(n_s.value, "n_s");
  detail::require_positive(n_b.value, "n_b");
  if (trials < 10000) throw InsufficientTrialsError("detector gain experiment needs at least 1e4 trials");
  const ReturnChannelModel qi{eta, n_b, tmsv_covariance(n_s)};
  const ReturnChannelModel ci{eta, n_b, coherent_covariance(n_s)};
  const Eigen::Matrix4d l_qi = sampling_factor(qi.present());
  const Eigen::Matrix4d l_ci = sampling_factor(ci.present());
  const Eigen::Matrix4d l_absent = sampling_factor(qi.absent());  // identical for both transmitters

  NormalSource normal(seed);
  Eigen::Vector4d z;
  // Paired shifts a = D_qi - D_absent, b = D_ci - D_absent; d = D_absent.
  std::vector<double> a(trials), b(trials);
  double sa = 0, sb = 0, sd = 0, sdd = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    for (int k = 0; k < 4; ++k) z(k) = normal();
    const double d0 = correlation_statistic(l_absent * z);
    a[t] = correlation_statistic(l_qi * z) - d0;
    b[t] = correlation_statistic(l_ci * z) - d0;
    sa += a[t];
    sb += b[t];
    sd += d0;
    sdd += d0 * d0;
  }
  const double n = static_cast<double>(trials);
  const double ma = sa / n, mb = sb / n, md = sd / n;
  const double var_d = (sdd / n - md * md) * n / (n - 1.0);

  GainEstimate out;
  out.trials = trials;
  out.quantum = {ma, var_d, ma * ma / var_d};
  out.classical = {mb, var_d, mb * mb / var_d};
  out.ratio = (ma * ma) / (mb * mb);
  // Delta method for r = (ma/mb)^2 with influence u_i = a_i/ma - b_i/mb:
  // SE(r) = 2 r sd(u) / sqrt(n). Two-pass so strongly paired shifts do not cancel.
  double su = 0, suu = 0;
  for (std::size_t t = 0; t < trials; ++t) su += a[t] / ma - b[t] / mb;
  const double mu = su / n;
  for (std::size_t t = 0; t < trials; ++t) {
    const double u = a[t] / ma - b[t] / mb - mu;
    suu += u * u;
  }
  out.standard_error = 2.0 * std::abs(out.ratio) * std::sqrt(suu / (n - 1.0) / n);
  return out;
}

struct RocEstimate {
  std::vector<double> thresholds;  // ascending
  std::vector<double> p_d;
  std::vector<double> p_fa;
  std::size_t trials = 0;
};

struct RocOptions {
  std::size_t modes_per_trial = 16;  // D averages over this many independent modes
  double p_fa_floor = 1e-2;          // smallest false-alarm level the caller will read off
};

/// Empirical ROC of the mode-averaged correlation statistic: P(D > threshold)
/// under independent present and absent trial batches.
inline RocEstimate roc_estimate(const QuadratureCovariance& present, const QuadratureCovariance& absent,
                                std::vector<double> thresholds, std::size_t trials, Seed seed,
                                const RocOptions& opt = {}) {
  if (trials < 1 || opt.modes_per_trial < 1) throw DomainError("trials and modes_per_trial must be positive");
  if (opt.p_fa_floor * static_cast<double>(trials) < 10.0) {
    throw InsufficientTrialsError("resolving p_fa = " + detail::format_number(opt.p_fa_floor) + " needs at least " +
                                  detail::format_number(std::ceil(10.0 / opt.p_fa_floor)) + " trials");
  }
  std::sort(thresholds.begin(), thresholds.end());

  const auto statistics = [&](const QuadratureCovariance& cov, Seed s) {
    const Eigen::Matrix4d l = sampling_factor(cov);
    NormalSource normal(s);
    Eigen::Vector4d z;
    std::vector<double> d(trials);
    for (auto& value : d) {
      double acc = 0.0;
      for (std::size_t m = 0; m < opt.modes_per_trial; ++m) {
        for (int k = 0; k < 4; ++k) z(k) = normal();
        acc += correlation_statistic(l * z);
      }
      value = acc / static_cast<double>(opt.modes_per_trial);
    }
    std::sort(d.begin(), d.end());
    return d;
  };
  const std::vector<double> d_present = statistics(present, split_seed(seed, 0));
  const std::vector<double> d_absent = statistics(absent, split_seed(seed, 1));

  const auto exceed = [&](const std::vector<double>& sorted, double th) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), th);
    return static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
  };
  RocEstimate out;
  out.trials = trials;
  out.thresholds = thresholds;
  for (const double th : thresholds) {
    out.p_d.push_back(exceed(d_present, th));
    out.p_fa.push_back(exceed(d_absent, th));
  }
  return out;
}

}  // namespace qirange
