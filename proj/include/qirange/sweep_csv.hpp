#pragma once

// CSV emission for the range and correlation-ratio sweeps. Numbers use the
// shortest decimal that round-trips; failed points leave their fields empty.

#include <charconv>
#include <cstddef>
#include <ostream>
#include <string>

#include "qirange/range_solver.hpp"

namespace qirange {

inline std::string format_shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

/// Columns n_s,frequency_hz,mode,r_max_m,converged. Returns the data row count.
inline std::size_t write_range_csv(std::ostream& out, const RangeSweep& sweep) {
  out << "n_s,frequency_hz,mode,r_max_m,converged\n";
  std::size_t rows = 0;
  for (const auto& s : sweep.series) {
    for (std::size_t i = 0; i < sweep.axis.size(); ++i) {
      out << format_shortest(sweep.axis[i]) << ',' << format_shortest(s.f.hertz) << ',' << to_string(s.mode) << ',';
      if (const auto& p = s.points[i]) {
        out << format_shortest(p->r_max) << ',' << (p->converged ? "true" : "false");
      } else {
        out << ',';
      }
      out << '\n';
      ++rows;
    }
  }
  return rows;
}

/// Columns n_s,ratio.
inline std::size_t write_ratio_csv(std::ostream& out, const RatioSweep& sweep) {
  out << "n_s,ratio\n";
  for (std::size_t i = 0; i < sweep.axis.size(); ++i) {
    out << format_shortest(sweep.axis[i]) << ',' << format_shortest(sweep.ratio[i]) << '\n';
  }
  return sweep.axis.size();
}

}  // namespace qirange
