#include "wvlab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include <json.hpp>
#endif

#include "wvlab/probe_oracle.hpp"

namespace wvlab {

namespace {

constexpr double kDefaultChi = 7.0 * std::numbers::pi / 16.0;

// Monte-Carlo stream layout: 0 = baseline count, j+1 = count at theta point
// j, high blocks = fringe samples (per point and for the theta=0 reference).
constexpr std::uint64_t kFringeBlock = 1ULL << 32;
constexpr std::uint64_t kFringeRefBlock = 1ULL << 33;

int parse_box_path(const std::string& path, const char* fallback) {
  std::string p = path.empty() ? fallback : path;
  if (p == "A" || p == "a") return kPathA;
  if (p == "B" || p == "b") return kPathB;
  if (p == "C" || p == "c") return kPathC;
  throw InvalidArgument("unknown three-box path: " + p);
}

double effective_chi(const RunConfig& config) {
  return config.chi == 0.0 ? kDefaultChi : config.chi;
}

struct WvaPreset {
  Operator a1 = Operator::pauli_z();
  Operator a2 = Operator::pauli_z();
  Ket i1{1.0, 0.0};
  Ket f1{1.0, 0.0};
  Ket phi_i{1.0, 0.0};
  Ket phi_f{1.0, 0.0};
};

// System selection with <sigma_z>_w = 1/cos(chi); ancilla selection with a
// purely imaginary <sigma_z>_w = -i tan(eta/2). Their product makes the
// probability-ratio slope 2 tan(eta/2)/cos(chi) real.
WvaPreset wva_preset(double cos_chi, double tan_half_eta) {
  WvaPreset p;
  double chi = std::acos(cos_chi);
  p.i1 = spin_pre(chi);
  p.f1 = spin_post(chi);
  double half_eta = std::atan(tan_half_eta);
  double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  p.phi_i = Ket{inv_sqrt2, inv_sqrt2};
  p.phi_f = Ket{std::polar(inv_sqrt2, half_eta), std::polar(inv_sqrt2, -half_eta)};
  return p;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_cell(const std::optional<double>& v) {
  return v ? fmt17(*v) : std::string();
}

}  // namespace

std::vector<double> ThetaGrid::points() const {
  if (steps < 1) throw InvalidArgument("theta grid: steps must be >= 1");
  if (steps == 1) return {min};
  if (!(min < max)) throw InvalidArgument("theta grid: min must be < max for sweeps");
  if (log_spacing && min <= 0.0)
    throw InvalidArgument("theta grid: log spacing needs min > 0");
  std::vector<double> pts(steps);
  if (log_spacing) {
    double l0 = std::log(min), l1 = std::log(max);
    for (int k = 0; k < steps; ++k)
      pts[k] = std::exp(l0 + (l1 - l0) * k / (steps - 1));
  } else {
    for (int k = 0; k < steps; ++k) pts[k] = min + (max - min) * k / (steps - 1);
  }
  return pts;
}

const std::vector<std::pair<std::string, std::string>>& scenario_catalog() {
  static const std::vector<std::pair<std::string, std::string>> catalog = {
      {"three-box-classical",
       "classical three-path system with a probabilistic shutter on --path"},
      {"three-box-pre",
       "pre-selected-only quantum three-box with an attenuator on --path"},
      {"three-box-weak",
       "pre- and post-selected three-box; --path C shows the negative weak probability"},
      {"spin",
       "spin-1/2 relative-phase curves; --path post (default) or pre, angle --chi"},
      {"wva", "composite-system coupling-strength amplification sweep"},
  };
  return catalog;
}

namespace {

// Classical sweep: probability and normalized ratio of the shuttered system.
SweepResult run_classical(const RunConfig& config) {
  int path = parse_box_path(config.path, "A");
  ClassicalThreeBox base{{1.0 / 3, 1.0 / 3, 1.0 / 3}, {1.0 / 3, 1.0 / 3, 1.0 / 3}, path, 0.0};
  double baseline = classical_detection(base);
  double analytic_re = classical_slope(base) / 2.0;

  SweepResult result;
  result.has_std_error = config.trials > 0;
  std::vector<double> thetas = config.grid.points();
  long long base_count =
      config.trials > 0 ? simulate_detections(baseline, config.trials, derive_stream(config.seed, 0))
                        : 0;
  for (size_t j = 0; j < thetas.size(); ++j) {
    ClassicalThreeBox sc = base;
    sc.theta = thetas[j];
    SweepRecord rec;
    rec.theta = thetas[j];
    double p = classical_detection(sc);
    rec.analytic_re = analytic_re;
    if (config.trials > 0) {
      long long c = simulate_detections(p, config.trials, derive_stream(config.seed, j + 1));
      double pt = static_cast<double>(c) / config.trials;
      double p0 = static_cast<double>(base_count) / config.trials;
      rec.probability = pt;
      rec.ratio = base_count > 0 ? static_cast<double>(c) / base_count : 0.0;
      if (rec.theta != 0.0 && base_count > 0) {
        rec.re_estimate = (rec.ratio - 1.0) / (2.0 * rec.theta);
        double var = 0.0;
        if (c > 0) var += rec.ratio * rec.ratio * (1.0 - pt) / (config.trials * pt);
        var += rec.ratio * rec.ratio * (1.0 - p0) / (config.trials * p0);
        rec.std_error = std::sqrt(var) / (2.0 * std::abs(rec.theta));
      }
    } else {
      rec.probability = p;
      rec.ratio = p / baseline;
      if (rec.theta != 0.0) rec.re_estimate = (rec.ratio - 1.0) / (2.0 * rec.theta);
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

struct QuantumPoint {
  double probability = 0.0;  // detection probability in [0, 1] for sampling
  double ratio = 1.0;
  Complex amplitude_ratio{1.0, 0.0};
};

// Quantum sweeps share one record loop; scenario specifics are captured in
// the point evaluator and the analytic reference.
SweepResult run_quantum(const RunConfig& config, const Selection& sel,
                        const SmallTransform& T, Complex analytic,
                        bool pre_only_norm) {
  SweepResult result;
  result.has_im_columns = true;
  result.has_std_error = config.trials > 0;
  std::vector<double> thetas = config.grid.points();

  auto eval_point = [&](double theta) {
    QuantumPoint pt;
    if (pre_only_norm) {
      double n2 = std::pow(apply(T.evaluate(theta), sel.pre_ket()).norm(), 2);
      pt.probability = std::min(n2, 1.0);
      pt.ratio = n2;
      pt.amplitude_ratio = inner(sel.pre_ket(), apply(T.evaluate(theta), sel.pre_ket()));
    } else {
      pt.probability = post_selection_probability(sel, T, theta);
      pt.ratio = pt.probability / sel.baseline_probability();
      pt.amplitude_ratio = amplitude_ratio(sel, T, theta);
    }
    return pt;
  };

  double baseline = pre_only_norm ? 1.0 : sel.baseline_probability();
  long long base_count =
      config.trials > 0 ? simulate_detections(baseline, config.trials, derive_stream(config.seed, 0))
                        : 0;
  const bool sampled_im = config.trials > 0 && config.scenario == "spin";
  InterferometerConfig fringe_cfg = InterferometerConfig::with_default_grid(T);

  // Sampled fringe phase with its delta-method standard error.
  auto sampled_fringe_phase = [&](double theta, std::uint64_t block) {
    std::vector<std::pair<double, double>> samples;
    samples.reserve(fringe_cfg.delta_samples.size());
    for (size_t k = 0; k < fringe_cfg.delta_samples.size(); ++k) {
      double p = fringe_probability(sel, fringe_cfg, theta, fringe_cfg.delta_samples[k]);
      long long c = simulate_detections(std::clamp(p, 0.0, 1.0), config.trials,
                                        derive_stream(config.seed, block + k));
      samples.emplace_back(fringe_cfg.delta_samples[k],
                           static_cast<double>(c) / config.trials);
    }
    double phase = fit_fringe_phase(samples);
    Complex c1 = 0.0;
    for (const auto& [delta, p] : samples) c1 += p * std::polar(1.0, delta);
    double var = 0.0;
    for (const auto& [delta, p] : samples) {
      double dphi = std::sin(delta - phase) / std::abs(c1);
      var += dphi * dphi * p * (1.0 - p) / config.trials;
    }
    return std::pair<double, double>(phase, var);
  };

  std::optional<std::pair<double, double>> ref_phase;
  if (sampled_im) ref_phase = sampled_fringe_phase(0.0, kFringeRefBlock);

  for (size_t j = 0; j < thetas.size(); ++j) {
    const double theta = thetas[j];
    QuantumPoint pt = eval_point(theta);
    SweepRecord rec;
    rec.theta = theta;
    rec.analytic_re = analytic.real();
    rec.analytic_im = analytic.imag();

    if (config.trials > 0) {
      long long c =
          simulate_detections(pt.probability, config.trials, derive_stream(config.seed, j + 1));
      double phat = static_cast<double>(c) / config.trials;
      rec.probability = phat;
      rec.ratio = base_count > 0 ? static_cast<double>(c) / base_count : 0.0;
      if (theta != 0.0 && base_count > 0) {
        rec.re_estimate = (rec.ratio - 1.0) / (2.0 * theta);
        if (!sampled_im) {
          double p0 = static_cast<double>(base_count) / config.trials;
          double var = 0.0;
          if (c > 0) var += rec.ratio * rec.ratio * (1.0 - phat) / (config.trials * phat);
          var += rec.ratio * rec.ratio * (1.0 - p0) / (config.trials * p0);
          rec.std_error = std::sqrt(var) / (2.0 * std::abs(theta));
        }
      }
      if (theta != 0.0) {
        if (sampled_im) {
          auto [phase, var] = sampled_fringe_phase(theta, kFringeBlock + j * 1024);
          rec.im_estimate = wrap_phase(phase - ref_phase->first) / theta;
          rec.std_error = std::sqrt(var + ref_phase->second) / std::abs(theta);
        } else {
          rec.im_estimate = wrap_phase(std::arg(pt.amplitude_ratio)) / theta;
        }
      }
    } else {
      rec.probability = pre_only_norm ? pt.ratio : pt.probability;
      rec.ratio = pt.ratio;
      if (theta != 0.0) {
        rec.re_estimate = (pt.ratio - 1.0) / (2.0 * theta);
        rec.im_estimate = wrap_phase(std::arg(pt.amplitude_ratio)) / theta;
      }
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

}  // namespace

SweepResult run_sweep(const RunConfig& config) {
  const std::string& s = config.scenario;
  if (s == "three-box-classical") return run_classical(config);

  if (s == "three-box-pre") {
    int path = parse_box_path(config.path, "A");
    Ket i = three_box_pre();
    SmallTransform T = attenuation_of(
        Complex(-1.0, 0.0) * Operator::projector(Ket::basis(3, path)), Exactness::exponential);
    // Pre-only runs are post-selections in the completely mixed state.
    Selection sel = Selection::mixed(i, DensityMatrix::maximally_mixed(3));
    Complex analytic = expectation(T.generator(), i);
    return run_quantum(config, sel, T, analytic, /*pre_only_norm=*/true);
  }
  if (s == "three-box-weak") {
    int path = parse_box_path(config.path, "A");
    SmallTransform T = attenuation_of(
        Complex(-1.0, 0.0) * Operator::projector(Ket::basis(3, path)), Exactness::exponential);
    Selection sel = three_box_selection();
    Complex analytic = weak_value(T.generator(), sel).value;
    return run_quantum(config, sel, T, analytic, /*pre_only_norm=*/false);
  }
  if (s == "spin") {
    double chi = effective_chi(config);
    SmallTransform T = unitary_of(Operator::spin_z(), Exactness::exponential);
    std::string branch = config.path.empty() ? "post" : config.path;
    if (branch == "pre") {
      Ket i = spin_pre(chi);
      Selection sel = Selection::mixed(i, DensityMatrix::maximally_mixed(2));
      Complex analytic = expectation(T.generator(), i);
      return run_quantum(config, sel, T, analytic, /*pre_only_norm=*/true);
    }
    if (branch != "post") throw InvalidArgument("spin: --path must be pre or post");
    Selection sel = spin_selection(chi);
    Complex analytic = weak_value(T.generator(), sel).value;
    return run_quantum(config, sel, T, analytic, /*pre_only_norm=*/false);
  }
  if (s == "wva") {
    WvaPreset p = wva_preset(0.1, 2.5);
    Selection sel = Selection::pure(kron(p.i1, p.phi_i), kron(p.f1, p.phi_f));
    SmallTransform T = unitary_of(kron(p.a1, p.a2), Exactness::exponential);
    Complex analytic = weak_value(T.generator(), sel).value;
    SweepResult result = run_quantum(config, sel, T, analytic, /*pre_only_norm=*/false);
    result.has_im_columns = false;
    for (auto& rec : result.records) {
      rec.im_estimate.reset();
      rec.analytic_im.reset();
    }
    return result;
  }
  throw InvalidArgument("unknown scenario: " + s);
}

std::vector<OracleRecord> compare_oracles(const RunConfig& config) {
  Selection sel = three_box_selection();
  Operator observable = Operator::projector(Ket::basis(3, parse_box_path(config.path, "C")));
  if (config.scenario == "spin") {
    sel = spin_selection(effective_chi(config));
    observable = Operator::spin_z();
  } else if (config.scenario != "three-box-weak" && !config.scenario.empty()) {
    throw InvalidArgument("compare-oracles supports scenarios three-box-weak and spin");
  }

  SmallTransform T = attenuation_of(observable, Exactness::exponential);
  double analytic = weak_value(observable, sel).value.real();
  double p0 = sel.baseline_probability();
  GaussianProbe probe{config.sigma, std::nullopt};

  std::vector<OracleRecord> records;
  for (double theta : config.grid.points()) {
    if (theta == 0.0) continue;  // slope columns undefined at 0
    OracleRecord rec;
    rec.theta = theta;
    rec.re_probe_free = estimate_re_symmetric(sel, T, theta).value;
    rec.re_gaussian =
        mean_pointer_shift(pointer_distribution_exact(sel.pre_ket(), sel.post_ket(),
                                                      observable, theta, probe)) /
        theta;
    rec.re_analytic = analytic;
    rec.gap_probe_free = rec.re_probe_free - analytic;
    rec.gap_gaussian = rec.re_gaussian - analytic;
    rec.fisher_ratio = 4.0 * config.sigma * config.sigma / (1.0 - p0);
    records.push_back(rec);
  }
  return records;
}

std::vector<FisherRecord> fisher_sweep(const RunConfig& config) {
  Selection sel = three_box_selection();
  SmallTransform T = attenuation_of(
      Complex(-1.0, 0.0) * Operator::projector(Ket::basis(3, parse_box_path(config.path, "C"))),
      Exactness::exponential);
  if (config.scenario == "spin") {
    sel = spin_selection(effective_chi(config));
    T = unitary_of(Operator::spin_z(), Exactness::exponential);
  } else if (config.scenario != "three-box-weak" && !config.scenario.empty()) {
    throw InvalidArgument("fisher supports scenarios three-box-weak and spin");
  }
  long long n = config.trials > 0 ? config.trials : 1;

  std::vector<FisherRecord> records;
  for (double theta : config.grid.points()) {
    FisherRecord rec;
    rec.theta = theta;
    rec.classical_F = binary_fisher_theta(sel, T, theta);
    rec.quantum_FQ = quantum_fisher_theta(sel.pre_ket(), T.generator());
    if (rec.classical_F > 1e-300)
      rec.cr_bound = 1.0 / std::sqrt(static_cast<double>(n) * rec.classical_F);
    if (theta != 0.0) {
      ClassicalFisher cf = classical_fisher_re(sel, T, theta);
      rec.leading_order_F = cf.leading_order;
      rec.exact_re_F = cf.exact;
    }
    records.push_back(rec);
  }
  return records;
}

namespace {

std::string spacing_name(const ThetaGrid& grid) {
  return grid.log_spacing ? "log" : "linear";
}

void write_meta_comment(std::ostream& os, const RunConfig& config) {
  os << "# scenario=" << config.scenario << " theta_min=" << fmt17(config.grid.min)
     << " theta_max=" << fmt17(config.grid.max) << " steps=" << config.grid.steps
     << " spacing=" << spacing_name(config.grid) << " trials=" << config.trials
     << " seed=" << config.seed;
  if (config.chi != 0.0) os << " chi=" << fmt17(config.chi);
  if (!config.path.empty()) os << " path=" << config.path;
  os << "\n";
}

nlohmann::json meta_json(const RunConfig& config) {
  nlohmann::json meta;
  meta["scenario"] = config.scenario;
  meta["theta"] = {{"min", config.grid.min},
                   {"max", config.grid.max},
                   {"steps", config.grid.steps},
                   {"spacing", spacing_name(config.grid)}};
  meta["trials"] = config.trials;
  meta["seed"] = config.seed;
  if (config.chi != 0.0) meta["chi"] = config.chi;
  if (!config.path.empty()) meta["path"] = config.path;
  return nlohmann::json{{"_meta", meta}};
}

void set_optional(nlohmann::json& obj, const char* key, const std::optional<double>& v) {
  if (v)
    obj[key] = *v;
  else
    obj[key] = nullptr;
}

}  // namespace

void write_csv(std::ostream& os, const RunConfig& config, const SweepResult& result) {
  write_meta_comment(os, config);
  os << "theta,probability,ratio,re_estimate";
  if (result.has_im_columns) os << ",im_estimate";
  os << ",analytic_re";
  if (result.has_im_columns) os << ",analytic_im";
  if (result.has_std_error) os << ",stderr";
  os << "\n";
  for (const auto& rec : result.records) {
    os << fmt17(rec.theta) << ',' << fmt17(rec.probability) << ',' << fmt17(rec.ratio) << ','
       << fmt_cell(rec.re_estimate);
    if (result.has_im_columns) os << ',' << fmt_cell(rec.im_estimate);
    os << ',' << fmt_cell(rec.analytic_re);
    if (result.has_im_columns) os << ',' << fmt_cell(rec.analytic_im);
    if (result.has_std_error) os << ',' << fmt_cell(rec.std_error);
    os << "\n";
  }
}

void write_json(std::ostream& os, const RunConfig& config, const SweepResult& result) {
  nlohmann::json arr = nlohmann::json::array();
  arr.push_back(meta_json(config));
  for (const auto& rec : result.records) {
    nlohmann::json obj;
    obj["theta"] = rec.theta;
    obj["probability"] = rec.probability;
    obj["ratio"] = rec.ratio;
    set_optional(obj, "re_estimate", rec.re_estimate);
    if (result.has_im_columns) set_optional(obj, "im_estimate", rec.im_estimate);
    set_optional(obj, "analytic_re", rec.analytic_re);
    if (result.has_im_columns) set_optional(obj, "analytic_im", rec.analytic_im);
    if (result.has_std_error) set_optional(obj, "stderr", rec.std_error);
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << "\n";
}

void write_csv(std::ostream& os, const RunConfig& config,
               const std::vector<OracleRecord>& records) {
  write_meta_comment(os, config);
  os << "theta,re_probe_free,re_gaussian,re_analytic,gap_probe_free,gap_gaussian,fisher_ratio\n";
  for (const auto& r : records) {
    os << fmt17(r.theta) << ',' << fmt17(r.re_probe_free) << ',' << fmt17(r.re_gaussian) << ','
       << fmt17(r.re_analytic) << ',' << fmt17(r.gap_probe_free) << ',' << fmt17(r.gap_gaussian)
       << ',' << fmt17(r.fisher_ratio) << "\n";
  }
}

void write_json(std::ostream& os, const RunConfig& config,
                const std::vector<OracleRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  arr.push_back(meta_json(config));
  for (const auto& r : records) {
    arr.push_back({{"theta", r.theta},
                   {"re_probe_free", r.re_probe_free},
                   {"re_gaussian", r.re_gaussian},
                   {"re_analytic", r.re_analytic},
                   {"gap_probe_free", r.gap_probe_free},
                   {"gap_gaussian", r.gap_gaussian},
                   {"fisher_ratio", r.fisher_ratio}});
  }
  os << arr.dump(2) << "\n";
}

void write_csv(std::ostream& os, const RunConfig& config,
               const std::vector<FisherRecord>& records) {
  write_meta_comment(os, config);
  os << "theta,classical_F,quantum_FQ,cr_bound,leading_order_F,exact_re_F\n";
  for (const auto& r : records) {
    os << fmt17(r.theta) << ',' << fmt17(r.classical_F) << ',' << fmt17(r.quantum_FQ) << ','
       << fmt_cell(r.cr_bound) << ',' << fmt17(r.leading_order_F) << ',' << fmt17(r.exact_re_F)
       << "\n";
  }
}

void write_json(std::ostream& os, const RunConfig& config,
                const std::vector<FisherRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  arr.push_back(meta_json(config));
  for (const auto& r : records) {
    nlohmann::json obj{{"theta", r.theta},
                       {"classical_F", r.classical_F},
                       {"quantum_FQ", r.quantum_FQ},
                       {"leading_order_F", r.leading_order_F},
                       {"exact_re_F", r.exact_re_F}};
    set_optional(obj, "cr_bound", r.cr_bound);
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << "\n";
}

}  // namespace wvlab
