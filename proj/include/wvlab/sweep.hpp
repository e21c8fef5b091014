#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wvlab/sampling.hpp"
#include "wvlab/scenarios.hpp"

namespace wvlab {

enum class OutputFormat { csv, json };

struct ThetaGrid {
  double min = 0.0;
  double max = 3.0;
  int steps = 60;
  bool log_spacing = false;

  std::vector<double> points() const;  // validates
};

/// One CLI run: scenario, sweep grid, Monte-Carlo budget, output target.
struct RunConfig {
  std::string scenario = "three-box-weak";
  ThetaGrid grid;
  long long trials = 0;  // 0 -> exact probabilities
  std::uint64_t seed = 0;
  double chi = 0.0;     // 0 -> scenario default (7 pi/16)
  std::string path;     // A|B|C for three-box; pre|post for spin
  double sigma = 1.0;   // Gaussian-probe width for compare-oracles
  std::string output;   // empty -> stdout
  OutputFormat format = OutputFormat::csv;
};

/// Sweep row. Slope estimates are absent at theta = 0 where the finite
/// difference is undefined; columns themselves are present per run mode.
struct SweepRecord {
  double theta = 0.0;
  double probability = 0.0;
  double ratio = 0.0;
  std::optional<double> re_estimate;
  std::optional<double> im_estimate;
  std::optional<double> analytic_re;
  std::optional<double> analytic_im;
  std::optional<double> std_error;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  bool has_im_columns = false;
  bool has_std_error = false;
};

const std::vector<std::pair<std::string, std::string>>& scenario_catalog();

SweepResult run_sweep(const RunConfig& config);

struct OracleRecord {
  double theta = 0.0;
  double re_probe_free = 0.0;  // symmetric probability-ratio estimate
  double re_gaussian = 0.0;    // exact pointer mean / theta
  double re_analytic = 0.0;    // Re<A>_w
  double gap_probe_free = 0.0;
  double gap_gaussian = 0.0;
  double fisher_ratio = 0.0;  // leading-order F / J = 4 sigma^2 / (1 - |<f|i>|^2)
};

/// Probe-free vs Gaussian-probe dual-oracle comparison for the scenario's
/// Hermitian observable. Skips theta = 0 rows.
std::vector<OracleRecord> compare_oracles(const RunConfig& config);

struct FisherRecord {
  double theta = 0.0;
  double classical_F = 0.0;
  double quantum_FQ = 0.0;
  /// Absent where the binary Fisher information vanishes.
  std::optional<double> cr_bound;
  double leading_order_F = 0.0;
  double exact_re_F = 0.0;
};

std::vector<FisherRecord> fisher_sweep(const RunConfig& config);

/// Writers emit 17-significant-digit decimals so 64-bit floats round-trip.
/// CSV carries the reproducibility header as "# key=value" comment lines;
/// JSON carries it as a leading "_meta" object in the array.
void write_csv(std::ostream& os, const RunConfig& config, const SweepResult& result);
void write_json(std::ostream& os, const RunConfig& config, const SweepResult& result);
void write_csv(std::ostream& os, const RunConfig& config,
               const std::vector<OracleRecord>& records);
void write_json(std::ostream& os, const RunConfig& config,
                const std::vector<OracleRecord>& records);
void write_csv(std::ostream& os, const RunConfig& config,
               const std::vector<FisherRecord>& records);
void write_json(std::ostream& os, const RunConfig& config,
                const std::vector<FisherRecord>& records);

}  // namespace wvlab
