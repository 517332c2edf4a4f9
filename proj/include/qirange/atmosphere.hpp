#pragma once

// Tabulated gaseous absorption gamma(f) and the one-way form factor
// F = 10^(-gamma R / 10), gamma in dB/km and R in km.
//
// Table text format:
//   # comment lines anywhere
//   frequency_ghz,gamma_db_per_km
//   7,0.01
//   ...

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qirange/error.hpp"
#include "qirange/types.hpp"

namespace qirange {

struct AttenuationRow {
  double frequency_ghz = 0.0;
  double gamma_db_per_km = 0.0;
};

/// Immutable, validated (frequency, gamma) knots; at least two, strictly increasing.
class AttenuationTable {
 public:
  AttenuationTable(std::vector<AttenuationRow> rows, std::string source)
      : rows_(std::move(rows)), source_(std::move(source)) {
    if (rows_.size() < 2) throw ValidationError("attenuation table needs at least 2 rows");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto& r = rows_[i];
      if (!(r.frequency_ghz > 0.0) || !std::isfinite(r.frequency_ghz)) {
        throw ValidationError("row " + std::to_string(i + 1) + ": frequency must be positive");
      }
      if (!(r.gamma_db_per_km >= 0.0) || !std::isfinite(r.gamma_db_per_km)) {
        throw ValidationError("row " + std::to_string(i + 1) + ": gamma must be non-negative");
      }
      if (i > 0 && !(r.frequency_ghz > rows_[i - 1].frequency_ghz)) {
        throw ValidationError("row " + std::to_string(i + 1) + ": frequency " +
                              detail::format_number(r.frequency_ghz) +
                              " GHz is not strictly above the previous row");
      }
    }
  }

  const std::vector<AttenuationRow>& rows() const { return rows_; }
  const std::string& source() const { return source_; }
  double min_ghz() const { return rows_.front().frequency_ghz; }
  double max_ghz() const { return rows_.back().frequency_ghz; }

 private:
  std::vector<AttenuationRow> rows_;
  std::string source_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace detail

inline AttenuationTable load_table(std::istream& in, std::string source = "<stream>") {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<AttenuationRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    if (!have_header) {
      if (t != "frequency_ghz,gamma_db_per_km") {
        throw ParseError(where + "expected header 'frequency_ghz,gamma_db_per_km'");
      }
      have_header = true;
      continue;
    }
    const auto comma = t.find(',');
    AttenuationRow row;
    if (comma == std::string_view::npos || t.find(',', comma + 1) != std::string_view::npos ||
        !detail::parse_double(t.substr(0, comma), row.frequency_ghz) ||
        !detail::parse_double(t.substr(comma + 1), row.gamma_db_per_km)) {
      throw ParseError(where + "malformed row '" + std::string(t) + "'");
    }
    rows.push_back(row);
  }
  if (!have_header) throw ParseError(source + ": missing header");
  try {
    return AttenuationTable(std::move(rows), source);
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

inline AttenuationTable load_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open attenuation table '" + path + "'");
  return load_table(in, path);
}

/// Interpolates linearly in (log f, log gamma); if either bracketing gamma is
/// zero, linearly in (log f, gamma). No extrapolation.
inline AbsorptionCoefficient gamma_at(const AttenuationTable& table, Frequency f) {
  detail::require_positive(f.hertz, "frequency");
  const double ghz = f.hertz / 1e9;
  const auto& rows = table.rows();
  if (ghz < table.min_ghz() || ghz > table.max_ghz()) {
    std::ostringstream os;
    os << "frequency " << ghz << " GHz outside table span [" << table.min_ghz() << ", " << table.max_ghz()
       << "] GHz";
    throw OutOfRangeError(os.str());
  }
  const auto hi = std::lower_bound(rows.begin(), rows.end(), ghz,
                                   [](const AttenuationRow& r, double v) { return r.frequency_ghz < v; });
  if (hi->frequency_ghz == ghz) return {hi->gamma_db_per_km};
  const auto lo = hi - 1;
  const double t = (std::log(ghz) - std::log(lo->frequency_ghz)) /
                   (std::log(hi->frequency_ghz) - std::log(lo->frequency_ghz));
  if (lo->gamma_db_per_km == 0.0 || hi->gamma_db_per_km == 0.0) {
    return {lo->gamma_db_per_km + t * (hi->gamma_db_per_km - lo->gamma_db_per_km)};
  }
  const double lg = std::log(lo->gamma_db_per_km);
  return {std::exp(lg + t * (std::log(hi->gamma_db_per_km) - lg))};
}

inline FormFactor form_factor(AbsorptionCoefficient gamma, double range_m) {
  detail::require_non_negative(gamma.db_per_km, "gamma");
  detail::require_non_negative(range_m, "range");
  return {std::pow(10.0, -gamma.db_per_km * (range_m / 1000.0) / 10.0)};
}

}  // namespace qirange
