#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qirange/scenario_config.hpp"
#include "qirange/sweep_csv.hpp"

using namespace qirange;

TEST(ScenarioConfig, DefaultsMatchReferenceSystem) {
  const ScenarioConfig c;
  EXPECT_EQ(c.sigma_m2, 1.0);
  EXPECT_EQ(c.aperture_m2, 0.5);
  EXPECT_EQ(c.bandwidth_hz, 1e9);
  EXPECT_EQ(c.tau_s, 1.0);
  EXPECT_EQ(c.noise_power_dbm, -63.82);
  EXPECT_EQ(c.snr_min_db, 10.0);
  EXPECT_EQ(c.p_d, 0.7);
  EXPECT_EQ(c.p_fa, 1e-6);
  EXPECT_EQ(c.frequencies_hz, (std::vector<double>{7e9, 95e9, 1e12}));
  EXPECT_EQ(c.four_pi_exponent, 2);
  EXPECT_FALSE(c.attenuation_table_path.has_value());
  EXPECT_EQ(config_from_json(nlohmann::json::object()), c);
}

TEST(ScenarioConfig, JsonRoundTrip) {
  ScenarioConfig c;
  c.sigma_m2 = 0.1 + 0.2;
  c.frequencies_hz = {1e9, 3.3e11};
  c.attenuation_table_path = "/tmp/atten.csv";
  c.four_pi_exponent = 4;
  c.constants = "codata";
  const std::string text = to_json(c).dump(2);
  EXPECT_EQ(config_from_json(nlohmann::json::parse(text)), c);
}

TEST(ScenarioConfig, RejectsUnknownAndInvalid) {
  EXPECT_THROW(config_from_json(nlohmann::json{{"sigma", 1.0}}), ParseError);
  EXPECT_THROW(config_from_json(nlohmann::json{{"sigma_m2", "big"}}), ParseError);
  EXPECT_THROW(config_from_json(nlohmann::json{{"sigma_m2", -1.0}}), DomainError);
  EXPECT_THROW(config_from_json(nlohmann::json{{"four_pi_exponent", 3}}), DomainError);
  EXPECT_THROW(config_from_json(nlohmann::json{{"constants", "exact"}}), DomainError);
  EXPECT_THROW(config_from_json(nlohmann::json::array()), ParseError);
}

TEST(ScenarioConfig, RelativeTablePathResolvesAgainstConfigDir) {
  const auto dir = std::filesystem::temp_directory_path() / "qirange_cfg_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "atten.csv") << "frequency_ghz,gamma_db_per_km\n1,0\n2000,0\n";
  std::ofstream(dir / "cfg.json") << R"({"attenuation_table_path": "atten.csv"})";
  const ScenarioConfig c = load_config_file((dir / "cfg.json").string());
  ASSERT_TRUE(c.attenuation_table_path.has_value());
  EXPECT_EQ(*c.attenuation_table_path, (dir / "atten.csv").string());
  const Scenario s = c.to_scenario();
  ASSERT_TRUE(s.attenuation.has_value());
  EXPECT_EQ(s.attenuation->rows().size(), 2u);
}

TEST(ScenarioConfig, ToScenario) {
  const Scenario s = ScenarioConfig{}.to_scenario();
  EXPECT_NEAR(s.noise_power.dbm(), -63.82, 1e-12);
  EXPECT_EQ(s.constants, PhysicalConstants::reference());
  EXPECT_NEAR(s.t_eff().kelvin, 30069.133524229223, 1e-6);
}

TEST(SweepCsv, ShortestFormatting) {
  EXPECT_EQ(format_shortest(0.1), "0.1");
  EXPECT_EQ(format_shortest(1e12), "1e+12");
  EXPECT_EQ(format_shortest(95e9), "9.5e+10");
  EXPECT_EQ(format_shortest(1e-3), "0.001");
  const double v = 137.08826844240767;
  EXPECT_EQ(std::stod(format_shortest(v)), v);
}

TEST(SweepCsv, RangeRowsAndAbsentMarkers) {
  RangeSweep sweep;
  sweep.axis = {0.01, 0.1};
  RangeSolution ok;
  ok.r_max = 12.5;
  ok.converged = true;
  sweep.series.push_back({Frequency{7e9}, Illumination::quantum, {ok, std::nullopt}, {"", "boom"}});
  std::ostringstream out;
  EXPECT_EQ(write_range_csv(out, sweep), 2u);
  EXPECT_EQ(out.str(),
            "n_s,frequency_hz,mode,r_max_m,converged\n"
            "0.01,7e+09,qi,12.5,true\n"
            "0.1,7e+09,qi,,\n");
}

TEST(SweepCsv, RatioRows) {
  std::ostringstream out;
  EXPECT_EQ(write_ratio_csv(out, sweep_ratio({0.5, 1.0})), 2u);
  EXPECT_EQ(out.str(), "n_s,ratio\n0.5,0.5773502691896258\n1,0.7071067811865475\n");
}
