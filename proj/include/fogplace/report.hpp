#ifndef FOGPLACE_REPORT_HPP
#define FOGPLACE_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fogplace/harness.hpp"
#include "fogplace/instance.hpp"

namespace fogplace {

/// Configuration failure; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
};

/// One run's worth of knobs. Parsed strictly: unknown fields are rejected and
/// every physical constant must be positive.
struct RunConfig {
  InstanceSpec instance;
  TopologyOptions topology;
  IdleAttributionPolicy idle_policy;
  std::vector<Scenario> scenarios;  // first is the savings baseline
  double rate_start_mbps = 0.5;
  double rate_end_mbps = 4.5;
  double rate_step_mbps = 0.5;
  std::string out_dir = "out";
  bool timestamp = true;
  std::optional<std::string> instance_file;  // replay an exact instance

  std::vector<double> rates() const {
    return sweep_rates(rate_start_mbps, rate_end_mbps, rate_step_mbps);
  }
};

/// Built-in configuration reproducing the studied setup end to end.
RunConfig default_config();

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Parameter-range review of a config: values outside the studied ranges
/// (device distance, data rate) come back as warnings. Hard errors are
/// rejected by parse_config already.
std::vector<Violation> check_config(const RunConfig& config);

/// Data-rate range studied in the reference experiment, in Mbps.
inline constexpr double kPaperRateMinMbps = 0.5;
inline constexpr double kPaperRateMaxMbps = 4.5;

nlohmann::json solve_report_to_json(const SolveReport& report, const std::string& scenario,
                                    double rate_mbps);

/// Acceptance bands for the headline savings under the shipped defaults.
struct CalibrationBands {
  double s4_max_target = 0.90, s4_tol = 0.10;  // fog-iot peak saving
  double s3_max_target = 0.67, s3_tol = 0.10;  // fog peak saving
  double s2_avg_target = 0.57, s2_tol = 0.08;  // cloud-sp average saving
};

struct CalibrationMeasurement {
  double s4_max_saving = 0;
  double s3_max_saving = 0;
  double s2_avg_saving = 0;
};

struct CalibrationCheck {
  CalibrationBands bands;
  CalibrationMeasurement measured;
  bool s4_in_band = false;
  bool s3_in_band = false;
  bool s2_in_band = false;
  bool all_in_band() const { return s4_in_band && s3_in_band && s2_in_band; }
};

/// Headline savings of a sweep over the builtin scenario set, checked against
/// the bands. Expects scenarios named cloud-gp/cloud-sp/fog/fog-iot.
CalibrationCheck check_calibration(const SweepResult& result,
                                   const CalibrationBands& bands = {});

/// One sensitivity row: the headline numbers under an alternative value of an
/// unstated parameter (wireless amplifier, core hop count, fabric idle rule).
struct SensitivityEntry {
  std::string parameter;
  std::string value;
  CalibrationMeasurement measured;
};

/// Re-runs the sweep under variations of the three unstated parameters.
std::vector<SensitivityEntry> calibration_sensitivity(const RunConfig& config);

/// power.csv / distribution.csv / summary.json contents. CSV output is
/// byte-stable for a fixed config and seed; the optional timestamp comment is
/// the only varying line.
std::string power_csv(const SweepResult& result, bool timestamp);
std::string distribution_csv(const SweepResult& result, bool timestamp);
nlohmann::json summary_json(const SweepResult& result, const CalibrationCheck* calibration,
                            const std::vector<SensitivityEntry>* sensitivity);

/// Shortest round-trip decimal form of a double; the CSV number format.
std::string format_double(double value);

}  // namespace fogplace

#endif  // FOGPLACE_REPORT_HPP
