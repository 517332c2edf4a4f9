#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "qirange/atmosphere.hpp"

using namespace qirange;

namespace {

AttenuationTable parse(const std::string& text) {
  std::istringstream in(text);
  return load_table(in, "test");
}

const std::string kBundled = std::string(QIRANGE_DATA_DIR) + "/itu_p676_standard_atmosphere.csv";

}  // namespace

TEST(LoadTable, ParsesMinimalTable) {
  const auto t = parse("frequency_ghz,gamma_db_per_km\n7,0.01\n95,0.5\n1000,100\n");
  ASSERT_EQ(t.rows().size(), 3u);
  EXPECT_EQ(t.rows()[1].frequency_ghz, 95.0);
  EXPECT_EQ(t.rows()[2].gamma_db_per_km, 100.0);
}

TEST(LoadTable, IgnoresCommentsAndCrlf) {
  const auto t = parse("# source\r\nfrequency_ghz,gamma_db_per_km\r\n# mid\r\n1,0\r\n2,3.5e-1\r\n");
  ASSERT_EQ(t.rows().size(), 2u);
  EXPECT_EQ(t.rows()[1].gamma_db_per_km, 0.35);
}

TEST(LoadTable, RejectsBadInput) {
  EXPECT_THROW(parse("freq,gamma\n1,1\n2,2\n"), ParseError);
  EXPECT_THROW(parse("frequency_ghz,gamma_db_per_km\n1,1\n2;2\n"), ParseError);
  EXPECT_THROW(parse("frequency_ghz,gamma_db_per_km\n1,1\n2,abc\n"), ParseError);
  EXPECT_THROW(parse("frequency_ghz,gamma_db_per_km\n1,1,1\n2,2\n"), ParseError);
  EXPECT_THROW(parse("frequency_ghz,gamma_db_per_km\n1,1\n"), ValidationError);
  EXPECT_THROW(parse("frequency_ghz,gamma_db_per_km\n1,1\n2,-1\n"), ValidationError);
  EXPECT_THROW(parse("frequency_ghz,gamma_db_per_km\n1,1\n1,2\n"), ValidationError);
  EXPECT_THROW(parse(""), ParseError);
}

TEST(LoadTable, OrderingErrorNamesRow) {
  try {
    parse("frequency_ghz,gamma_db_per_km\n7,0.01\n95,0.5\n50,1\n");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("50"), std::string::npos) << e.what();
  }
}

TEST(LoadTable, BundledDatasetLoads) {
  const auto t = load_table_file(kBundled);
  EXPECT_GT(t.rows().size(), 100u);
  EXPECT_LE(t.min_ghz(), 7.0);
  EXPECT_GE(t.max_ghz(), 1000.0);
  // oxygen complex near 60 GHz dominates its neighbours
  const double g60 = gamma_at(t, Frequency{60e9}).db_per_km;
  EXPECT_GT(g60, 10.0);
  EXPECT_GT(g60, 10 * gamma_at(t, Frequency{40e9}).db_per_km);
  EXPECT_GT(g60, 10 * gamma_at(t, Frequency{80e9}).db_per_km);
  // water vapour line at 22.235 GHz
  EXPECT_GT(gamma_at(t, Frequency{22.235e9}).db_per_km, gamma_at(t, Frequency{30e9}).db_per_km);
}

TEST(GammaAt, ExactAtKnotsAndLogLogBetween) {
  const auto t = parse("frequency_ghz,gamma_db_per_km\n10,1\n1000,100\n");
  EXPECT_EQ(gamma_at(t, Frequency{10e9}).db_per_km, 1.0);
  EXPECT_EQ(gamma_at(t, Frequency{1000e9}).db_per_km, 100.0);
  EXPECT_NEAR(gamma_at(t, Frequency{100e9}).db_per_km, 10.0, 1e-12);
}

TEST(GammaAt, ZeroGammaInterpolatesLinearly) {
  const auto t = parse("frequency_ghz,gamma_db_per_km\n10,0\n1000,2\n");
  EXPECT_NEAR(gamma_at(t, Frequency{100e9}).db_per_km, 1.0, 1e-12);
}

TEST(GammaAt, NoExtrapolation) {
  const auto t = parse("frequency_ghz,gamma_db_per_km\n10,1\n1000,100\n");
  EXPECT_THROW(gamma_at(t, Frequency{9.99e9}), OutOfRangeError);
  EXPECT_THROW(gamma_at(t, Frequency{1.001e12}), OutOfRangeError);
}

TEST(GammaAt, ContinuousAcrossKnots) {
  const auto t = load_table_file(kBundled);
  const auto& rows = t.rows();
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    const double f = rows[i].frequency_ghz * 1e9;
    const double at = rows[i].gamma_db_per_km;
    const double left = gamma_at(t, Frequency{std::nextafter(f, 0.0)}).db_per_km;
    const double right = gamma_at(t, Frequency{std::nextafter(f, 2 * f)}).db_per_km;
    EXPECT_NEAR(left, at, 1e-12 * at + 1e-300);
    EXPECT_NEAR(right, at, 1e-12 * at + 1e-300);
  }
}

TEST(FormFactor, Values) {
  EXPECT_EQ(form_factor({123.0}, 0.0).value, 1.0);
  EXPECT_NEAR(form_factor({10.0}, 1000.0).value, 0.1, 1e-15);
  EXPECT_NEAR(form_factor({3.0}, 2000.0).value, 0.25118864315095796, 1e-15);
  EXPECT_THROW(form_factor({1.0}, -1.0), DomainError);
}

TEST(FormFactor, MultiplicativeAndMonotone) {
  for (double g : {0.01, 0.4, 15.0, 700.0}) {
    double prev = 1.0;
    for (double r1 : {1.0, 50.0, 400.0}) {
      for (double r2 : {2.0, 30.0, 250.0}) {
        const double joint = form_factor({g}, r1 + r2).value;
        EXPECT_NEAR(joint / (form_factor({g}, r1).value * form_factor({g}, r2).value), 1.0, 1e-12);
      }
      const double f = form_factor({g}, r1).value;
      EXPECT_LT(f, prev);
      EXPECT_LT(form_factor({g * 1.5}, r1).value, f);
      prev = f;
    }
  }
}
