#pragma once

// Signal/idler quadrature covariance matrices for the two transmitter states:
// the two-mode squeezed vacuum (entangled) and a pair of correlated coherent
// states (classical benchmark).
//
// Convention: entry(j, k) = 2 <(R_j R_k + R_k R_j) / 2>, non-central, with
// R = (I_S, Q_S, I_I, Q_I) and I = (a + a^dag)/sqrt2, Q = (a - a^dag)/(i sqrt2).
// Vacuum therefore has unit diagonal.

#include <Eigen/Dense>
#include <cmath>

#include "qirange/error.hpp"
#include "qirange/types.hpp"

namespace qirange {

enum Quadrature : int { kSignalI = 0, kSignalQ = 1, kIdlerI = 2, kIdlerQ = 3 };

/// Diagonal entry S and cross-correlation magnitude C of a transmitter covariance.
struct CovarianceBlocks {
  double s = 1.0;
  double c = 0.0;
};

/// Symmetric 4x4 second-moment matrix ordered (I_S, Q_S, I_I, Q_I).
class QuadratureCovariance {
 public:
  using Matrix = Eigen::Matrix4d;

  QuadratureCovariance() : m_(Matrix::Identity()) {}

  /// Throws ValidationError unless `m` is exactly symmetric and finite.
  explicit QuadratureCovariance(const Matrix& m) : m_(m) {
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        if (!std::isfinite(m(r, c))) throw ValidationError("covariance entry is not finite");
        if (m(r, c) != m(c, r)) throw ValidationError("covariance matrix is not symmetric");
      }
    }
  }

  /// Two-mode structure: diag(first, first) and diag(second, second) on the
  /// diagonal, diag(cross, -cross) in both off-diagonal blocks.
  static QuadratureCovariance from_blocks(double first_diag, double second_diag, double cross) {
    Matrix m = Matrix::Zero();
    m(kSignalI, kSignalI) = m(kSignalQ, kSignalQ) = first_diag;
    m(kIdlerI, kIdlerI) = m(kIdlerQ, kIdlerQ) = second_diag;
    m(kSignalI, kIdlerI) = m(kIdlerI, kSignalI) = cross;
    m(kSignalQ, kIdlerQ) = m(kIdlerQ, kSignalQ) = -cross;
    return QuadratureCovariance(m);
  }

  static QuadratureCovariance from_blocks(CovarianceBlocks b) { return from_blocks(b.s, b.s, b.c); }

  double operator()(int row, int col) const { return m_(row, col); }
  const Matrix& matrix() const { return m_; }

  /// (S, C) read from the I_S diagonal and the I_S-I_I entry.
  CovarianceBlocks blocks() const { return {m_(kSignalI, kSignalI), m_(kSignalI, kIdlerI)}; }

  double max_abs_deviation(const QuadratureCovariance& other) const {
    return (m_ - other.m_).cwiseAbs().maxCoeff();
  }

  friend bool operator==(const QuadratureCovariance& a, const QuadratureCovariance& b) {
    return a.m_ == b.m_;
  }

 private:
  Matrix m_;
};

namespace detail {

inline void require_photons(MeanPhotonNumber n_s, bool allow_zero) {
  if (allow_zero) {
    require_non_negative(n_s.value, "n_s");
  } else {
    require_positive(n_s.value, "n_s");
  }
}

}  // namespace detail

/// S = 2 N_s + 1, C_q = 2 sqrt(N_s (N_s + 1)).
inline CovarianceBlocks tmsv_blocks(MeanPhotonNumber n_s) {
  // N_s = 0 is the documented vacuum limit.
  detail::require_photons(n_s, /*allow_zero=*/true);
  const double n = n_s.value;
  return {2.0 * n + 1.0, 2.0 * std::sqrt(n * (n + 1.0))};
}

/// S = 2 N_s + 1, C_c = 2 N_s.
inline CovarianceBlocks coherent_blocks(MeanPhotonNumber n_s) {
  detail::require_photons(n_s, /*allow_zero=*/true);
  const double n = n_s.value;
  return {2.0 * n + 1.0, 2.0 * n};
}

inline QuadratureCovariance tmsv_covariance(MeanPhotonNumber n_s) {
  return QuadratureCovariance::from_blocks(tmsv_blocks(n_s));
}

inline QuadratureCovariance coherent_covariance(MeanPhotonNumber n_s) {
  return QuadratureCovariance::from_blocks(coherent_blocks(n_s));
}

/// C_c / C_q = (1 + 1/N_s)^(-1/2), strictly inside (0, 1).
inline double correlation_ratio(MeanPhotonNumber n_s) {
  detail::require_photons(n_s, /*allow_zero=*/false);
  return 1.0 / std::sqrt(1.0 + 1.0 / n_s.value);
}

}  // namespace qirange
