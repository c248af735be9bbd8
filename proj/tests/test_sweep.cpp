#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "ewjn/cli/sweep.hpp"

using namespace ewjn;
using namespace ewjn::cli;

namespace {

SweepConfig two_point_z_sweep() {
  SweepConfig cfg;
  cfg.axis = SweepAxis::z;
  cfg.grid = {2e-9, 6e-9, 2, GridSpacing::log};
  cfg.omega = kFigureOmega;
  cfg.qubit = QubitSpec::atomic_charge(0.0);
  cfg.groups = {{ModelSelector::local_quasistatic, std::nullopt, false}};
  cfg.threads = 1;
  return cfg;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

std::string csv_of(const SweepConfig& cfg) {
  std::ostringstream os;
  write_csv(os, cfg, run_sweep(cfg));
  return os.str();
}

}  // namespace

TEST(Grid, LogAndLinearValues) {
  const auto log = GridSpec{1e-9, 1e-6, 4, GridSpacing::log}.values();
  ASSERT_EQ(log.size(), 4u);
  EXPECT_EQ(log.front(), 1e-9);
  EXPECT_EQ(log.back(), 1e-6);
  EXPECT_NEAR(log[1] / 1e-8, 1.0, 1e-14);
  const auto lin = GridSpec{0.0, 3.0, 4, GridSpacing::linear}.values();
  EXPECT_EQ(lin, (std::vector<double>{0.0, 1.0, 2.0, 3.0}));
}

TEST(Grid, Validation) {
  EXPECT_THROW((GridSpec{1.0, 2.0, 1, GridSpacing::log}.validate()), ValidationError);
  EXPECT_THROW((GridSpec{1.0, 2.0, 0, GridSpacing::log}.validate()), ValidationError);
  EXPECT_THROW((GridSpec{2.0, 1.0, 5, GridSpacing::linear}.validate()), ValidationError);
  EXPECT_THROW((GridSpec{0.0, 1.0, 5, GridSpacing::log}.validate()), ValidationError);
}

TEST(Sweep, LocalChargeT1FollowsCubeLaw) {
  const auto cfg = two_point_z_sweep();
  const auto out = run_sweep(cfg);
  ASSERT_EQ(out.rows.size(), 2u);
  EXPECT_EQ(out.exit_code, 0);
  const double t_a = out.rows[0].cells[0].result.t1;
  const double t_b = out.rows[1].cells[0].result.t1;
  EXPECT_NEAR((t_a / t_b) / std::pow(2e-9 / 6e-9, 3), 1.0, 1e-12);
}

TEST(Sweep, EmptyGridOrNoGroupsRejected) {
  auto cfg = two_point_z_sweep();
  cfg.grid.count = 0;
  EXPECT_THROW(run_sweep(cfg), ValidationError);
  cfg = two_point_z_sweep();
  cfg.groups.clear();
  EXPECT_THROW(run_sweep(cfg), ValidationError);
  cfg = two_point_z_sweep();
  cfg.axis = SweepAxis::omega;
  cfg.z = 0.0;
  cfg.grid = {1e8, 1e9, 3, GridSpacing::log};
  EXPECT_THROW(run_sweep(cfg), ValidationError);
}

TEST(Sweep, CsvHeaderCarriesUnitsAndRowsAreOrdered) {
  auto cfg = two_point_z_sweep();
  cfg.groups.push_back({ModelSelector::automatic, 2.0, false});
  const auto lines = split(csv_of(cfg), '\n');
  ASSERT_EQ(lines.size(), 3u);
  for (const auto& col : split(lines[0], ',')) {
    const bool label = col.find(".status") != std::string::npos ||
                       col.find(".model_used") != std::string::npos;
    if (!label) {
      EXPECT_NE(col.find('['), std::string::npos) << col;
    }
  }
  EXPECT_EQ(split(lines[0], ',').front(), "z[m]");
  EXPECT_EQ(split(lines[1], ',').front(), "2.00000000e-09");
  EXPECT_EQ(split(lines[2], ',').front(), "6.00000000e-09");
  EXPECT_NE(lines[0].find("auto@2K.model_used"), std::string::npos);
  EXPECT_EQ(split(lines[1], ',').size(), split(lines[0], ',').size());
}

TEST(Sweep, ParallelAndSerialBytesAgree) {
  SweepConfig cfg;
  cfg.axis = SweepAxis::z;
  cfg.grid = {1e-10, 1e-6, 9, GridSpacing::log};
  cfg.omega = kFigureOmega;
  cfg.qubit = QubitSpec::electron_spin(0.0);
  cfg.groups = {{ModelSelector::nonlocal_quasistatic, std::nullopt, true},
                {ModelSelector::automatic, std::nullopt, false}};
  cfg.threads = 1;
  const std::string serial = csv_of(cfg);
  cfg.threads = 4;
  EXPECT_EQ(csv_of(cfg), serial);
  cfg.threads = 3;
  EXPECT_EQ(csv_of(cfg), serial);
}

TEST(Sweep, PointFailuresAreRecordedNotFatal) {
  auto cfg = two_point_z_sweep();
  cfg.groups.push_back({ModelSelector::nonlocal_quasistatic, std::nullopt, false});
  cfg.quadrature.max_subdivisions = 1;
  const auto out = run_sweep(cfg);
  EXPECT_EQ(out.rows.size(), 2u);
  EXPECT_EQ(out.rows[0].cells[0].status, CellStatus::ok);
  EXPECT_EQ(out.rows[0].cells[1].status, CellStatus::quadrature_error);
  EXPECT_EQ(out.failures, 2);
  EXPECT_EQ(out.exit_code, 3);
  std::ostringstream os;
  write_csv(os, cfg, out);
  EXPECT_NE(os.str().find("nan,quadrature-error"), std::string::npos);
}

TEST(Sweep, TemperatureAxis) {
  SweepConfig cfg = two_point_z_sweep();
  cfg.axis = SweepAxis::temperature;
  cfg.z = 5e-9;
  cfg.grid = {0.0, 4.0, 3, GridSpacing::linear};
  const auto out = run_sweep(cfg);
  const double cold = out.rows[0].cells[0].result.t1;
  for (const auto& row : out.rows) {
    const double T = row.axis_value;
    const double expected =
        T == 0.0 ? 1.0 : std::tanh(constants::hbar * kFigureOmega / (2.0 * constants::boltzmann * T));
    EXPECT_NEAR(row.cells[0].result.t1 / cold / expected, 1.0, 1e-12);
  }
  cfg.groups[0].temperature = 1.0;
  EXPECT_THROW(run_sweep(cfg), ValidationError);
}

TEST(Sweep, JsonOutputIsRounded) {
  const auto cfg = two_point_z_sweep();
  const auto doc = sweep_json(cfg, run_sweep(cfg));
  ASSERT_EQ(doc["rows"].size(), 2u);
  const double t1 = doc["rows"][0]["local-quasistatic"]["t1[s]"].get<double>();
  EXPECT_EQ(format_number(t1), format_number(run_sweep(cfg).rows[0].cells[0].result.t1));
  EXPECT_EQ(doc["chi_units"], "(V/m)^2 s");
}

TEST(Format, NineSignificantDigits) {
  EXPECT_EQ(format_number(1.0), "1.00000000e+00");
  EXPECT_EQ(format_number(-1.234567891234e-10), "-1.23456789e-10");
  EXPECT_EQ(format_number(std::nan("")), "nan");
}

TEST(Groups, ParseLabels) {
  const auto g = parse_group("nonlocal-quasistatic@2K");
  EXPECT_EQ(g.model, ModelSelector::nonlocal_quasistatic);
  ASSERT_TRUE(g.temperature.has_value());
  EXPECT_EQ(*g.temperature, 2.0);
  EXPECT_EQ(g.label(), "nonlocal-quasistatic@2K");
  EXPECT_EQ(parse_group("auto").label(), "auto");
  EXPECT_THROW(parse_group("auto@warm"), ValidationError);
  EXPECT_THROW(parse_group("nonsense"), ValidationError);
}

TEST(Sweep, FromConfigFile) {
  const auto f = FlatConfig::parse_string(
      "axis = \"omega\"\nmin = 1e8\nmax = 1e9\ncount = 3\nz_m = 4.6e-9\n"
      "models = [\"local-quasistatic@0\", \"nonlocal-quasistatic+parts\"]\nqubit = \"spin\"\n");
  const auto cfg = sweep_from_config(f);
  EXPECT_EQ(cfg.axis, SweepAxis::omega);
  EXPECT_EQ(cfg.grid.count, 3);
  ASSERT_EQ(cfg.groups.size(), 2u);
  EXPECT_TRUE(cfg.groups[1].parts);
  EXPECT_EQ(cfg.qubit.kind, QubitKind::spin);
  EXPECT_THROW(sweep_from_config(FlatConfig::parse_string("axis = \"z\"\nbogus = 1\n")),
               ValidationError);
}

TEST(Threads, EnvironmentCap) {
  setenv("EWJN_THREADS", "3", 1);
  EXPECT_EQ(worker_limit(), 3);
  setenv("EWJN_THREADS", "zero", 1);
  EXPECT_THROW(worker_limit(), ValidationError);
  setenv("EWJN_THREADS", "0", 1);
  EXPECT_THROW(worker_limit(), ValidationError);
  unsetenv("EWJN_THREADS");
  EXPECT_GE(worker_limit(), 1);
}

TEST(Figures, GridsAndGroups) {
  const Material cu = copper();
  const auto fig1 = figure_config("fig1");
  const auto z = fig1.grid.values();
  EXPECT_EQ(z.size(), 61u);
  double closest = 1e9;
  for (double v : z) closest = std::min(closest, std::abs(v / (30.0 * cu.fermi_wavelength()) - 1.0));
  EXPECT_LT(closest, 1e-12);
  EXPECT_EQ(fig1.qubit.kind, QubitKind::charge);
  const auto fig4 = figure_config("fig4");
  EXPECT_EQ(fig4.axis, SweepAxis::omega);
  EXPECT_EQ(fig4.qubit.kind, QubitKind::spin);
  bool any_parts = false;
  for (const auto& g : fig4.groups) any_parts = any_parts || g.parts;
  EXPECT_TRUE(any_parts);
  EXPECT_THROW(figure_config("fig5"), ValidationError);
}

TEST(Figures, Fig2ThermalRatioPerRow) {
  auto cfg = figure_config("fig2");
  cfg.threads = 1;
  const auto out = run_sweep(cfg);
  EXPECT_EQ(out.exit_code, 0);
  // groups: local@0, local@2, nonlocal@0, nonlocal@2
  for (const auto& row : out.rows) {
    const double w = row.axis_value;
    const double th = std::tanh(constants::hbar * w / (2.0 * constants::boltzmann * 2.0));
    EXPECT_NEAR(row.cells[1].result.t1 / row.cells[0].result.t1 / th, 1.0, 1e-6);
    EXPECT_NEAR(row.cells[3].result.t1 / row.cells[2].result.t1 / th, 1.0, 1e-6);
  }
}
