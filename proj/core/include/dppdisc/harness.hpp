#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dppdisc/discrepancy.hpp"
#include "dppdisc/ensemble.hpp"

namespace dppdisc {

// Flat experiment configuration. Parsed strictly: unknown keys are rejected
// and the seed is mandatory (no silent entropy defaults).
struct ExperimentConfig {
  std::string space_id;
  std::string ensemble;      // "harmonic" or "projective"
  std::vector<int> levels;   // strictly ascending
  std::vector<double> radii;
  int net_n = -1;            // -1: auto ceil(sqrt(N)); 0: no net; >=1: fixed
  int reps = 200;
  std::int64_t pairs = 20000;
  int workers = 0;           // 0: hardware concurrency
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
};

ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig parse_config_file(const std::string& path);

// One (level, radius) cell of a scaling scan. Columns that failed to compute
// hold NaN; the run continues.
struct ScanRow {
  std::string space_id;
  std::string ensemble;
  int level = 0;
  std::int64_t n_points = 0;
  double radius = 0.0;
  double var_emp = 0.0;
  double var_emp_se = 0.0;
  double var_mc = 0.0;
  double var_mc_se = 0.0;
  double var_bound = 0.0;
  double disc_net = 0.0;    // median net-ball discrepancy over replicates
  double disc_slack = 0.0;  // certification slack of the net
  double threshold_t = 0.0;
  std::uint64_t seed = 0;
};

// Runs the scan described by the config. Row results depend only on the
// master seed and the row's position, never on worker count or run order.
std::vector<ScanRow> run_scaling(const ExperimentConfig& config);

inline constexpr const char* kScanCsvHeader =
    "space,ensemble,L,N,radius,var_emp,var_emp_se,var_mc,var_mc_se,var_bound,"
    "disc_net,disc_slack,threshold_t,seed";

std::string emit_csv(std::span<const ScanRow> rows);
std::vector<ScanRow> parse_csv(const std::string& text);

// Ordinary least squares of log y on log x.
struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;  // in log (natural) units
  double r_squared = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

ScalingFit fit_exponent(std::span<const std::pair<double, double>> xy,
                        double target, double tolerance);

}  // namespace dppdisc
