// Copyright 2026 The realclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "realclone/bound.hpp"
#include "realclone/cloner.hpp"
#include "realclone/constraints.hpp"
#include "realclone/optimize.hpp"
#include "realclone/output_tensor.hpp"
#include "realclone/random.hpp"
#include "realclone/realspace.hpp"
#include "realclone/tolerances.hpp"

#ifndef REALCLONE_VERSION
#define REALCLONE_VERSION "0.0.0"
#endif

namespace realclone::cli {
namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kGapGuard = 1e-5;
constexpr double kNoSignalingDeviationTol = 1e-10;
constexpr double kMaxNormOffset = 1e-6;
constexpr double kSilentNormOffset = 1e-12;

struct RawOptions {
  std::string d;
  std::optional<int> dmin;
  std::optional<int> dmax;
  std::string family = "real";
  std::string state;
  std::uint64_t seed = 0;
  int trials = 100;
  int restarts = 64;
  std::string format;
  std::string out;
  std::string fault;
};

struct RunConfig {
  std::string command;
  int d_min = 0;
  int d_max = 0;
  Family family = Family::Real;
  std::uint64_t seed = 0;
  int trials = 100;
  int restarts = 64;
  std::string format;
  std::string out;
  std::vector<double> state;
  bool negative_lambda_fault = false;
};

struct Document {
  Json config = Json::object();
  Json results = Json::array();
  Json residuals = Json::object();
  bool ok = true;
  std::vector<std::string> warnings;
};

Json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  const std::string text = format_number(x);
  double rounded = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), rounded);
  return rounded;
}

std::optional<int> parse_int(std::string_view text) {
  int value = 0;
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

void resolve_dimensions(const RawOptions& raw, RunConfig& cfg) {
  if (!raw.d.empty() && (raw.dmin || raw.dmax)) {
    throw UsageError("use either --d or --dmin/--dmax, not both");
  }
  if (!raw.d.empty()) {
    const auto dots = raw.d.find("..");
    if (dots == std::string::npos) {
      const auto d = parse_int(raw.d);
      if (!d) throw UsageError("--d expects an integer or a range A..B");
      cfg.d_min = cfg.d_max = *d;
    } else {
      const auto lo = parse_int(std::string_view(raw.d).substr(0, dots));
      const auto hi = parse_int(std::string_view(raw.d).substr(dots + 2));
      if (!lo || !hi) throw UsageError("--d expects an integer or a range A..B");
      cfg.d_min = *lo;
      cfg.d_max = *hi;
    }
  } else if (raw.dmin || raw.dmax) {
    if (!raw.dmin || !raw.dmax) {
      throw UsageError("--dmin and --dmax must be given together");
    }
    cfg.d_min = *raw.dmin;
    cfg.d_max = *raw.dmax;
  } else if (cfg.command == "clone" && !cfg.state.empty()) {
    cfg.d_min = cfg.d_max = static_cast<int>(cfg.state.size());
  } else {
    throw UsageError("a dimension is required (--d N, --d A..B or --dmin/--dmax)");
  }

  const int cap = max_dimension();
  if (cfg.d_min < 2 || cfg.d_max > cap || cfg.d_min > cfg.d_max) {
    throw UsageError(fmt::format(
        "dimension out of range: need 2 <= d <= {} (got {}..{})", cap,
        cfg.d_min, cfg.d_max));
  }
  if (cfg.command == "clone" && cfg.d_min != cfg.d_max) {
    throw UsageError("clone takes a single dimension");
  }
}

RunConfig resolve(const std::string& command, const RawOptions& raw) {
  RunConfig cfg;
  cfg.command = command;
  cfg.family = raw.family == "universal" ? Family::Universal : Family::Real;
  cfg.seed = raw.seed;
  cfg.trials = raw.trials;
  cfg.restarts = raw.restarts;
  cfg.format = raw.format.empty() ? (command == "figure" ? "csv" : "text")
                                  : raw.format;
  cfg.out = raw.out;
  cfg.negative_lambda_fault = raw.fault == "negative-lambda";
  if (command == "clone") {
    if (raw.state.empty()) throw UsageError("clone requires --state");
    try {
      cfg.state = parse_state(raw.state);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  resolve_dimensions(raw, cfg);
  return cfg;
}

Json config_json(const RunConfig& cfg) {
  Json c = Json::object();
  c["d_min"] = cfg.d_min;
  c["d_max"] = cfg.d_max;
  c["family"] = std::string(to_string(cfg.family));
  c["seed"] = cfg.seed;
  c["trials"] = cfg.trials;
  c["restarts"] = cfg.restarts;
  c["format"] = cfg.format;
  if (cfg.command == "clone") {
    Json state = Json::array();
    for (double x : cfg.state) state.push_back(num(x));
    c["state"] = state;
  }
  return c;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(num(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

std::string_view bound_expression(Family family) {
  return family == Family::Real ? "1/2+(sqrt(d^2+4d+20)-d+2)/(4(d+2))"
                                : "1/2+1/(d+1)";
}

void cmd_bound(const RunConfig& cfg, Document& doc) {
  for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
    const BoundResult b = analytic_bound(d, cfg.family);
    Json row = Json::object();
    row["d"] = d;
    row["family"] = std::string(to_string(cfg.family));
    row["f_max"] = num(b.f_max);
    row["optimal_phi"] = b.optimal_phi ? num(*b.optimal_phi) : Json(nullptr);
    row["case"] = std::string(to_string(b.case_label));
    row["expression"] = std::string(bound_expression(cfg.family));
    doc.results.push_back(row);
  }
}

void cmd_optimize(const RunConfig& cfg, Document& doc) {
  double worst_gap = 0.0;
  double worst_lambda_e = 0.0;
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  double worst_kappa7 = 0.0;
  for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
    OptimizerSettings settings;
    settings.restarts = cfg.restarts;
    settings.seed = cfg.seed;
    const OptResult r = numeric_optimize(d, cfg.family, settings);
    const SpectralParams& s = r.best_params;
    const ConstraintReport report =
        constraint_report(s, d, cfg.trials,
                          derive_seed(cfg.seed, "cli/optimize/report", d),
                          Tolerances::optimizer());

    Json row = Json::object();
    row["d"] = d;
    row["family"] = std::string(to_string(cfg.family));
    row["f_numeric"] = num(r.f_numeric);
    row["f_analytic"] = num(r.f_analytic);
    row["gap_to_analytic"] = num(r.gap_to_analytic);
    row["lambda_a"] = num(s.lambda_a);
    row["lambda_b"] = num(s.lambda_b);
    row["lambda_c"] = num(s.lambda_c);
    row["lambda_d"] = num(s.lambda_d);
    row["lambda_e"] = num(s.lambda_e);
    row["alpha"] = num(s.alpha);
    row["phi"] = num(s.phi);
    row["theta"] = num(s.theta);
    row["case"] = std::string(to_string(r.case_label));
    row["restarts_used"] = r.restarts_used;
    row["constraints"] = report.all_ok() ? "pass" : "fail";
    doc.results.push_back(row);

    worst_gap = std::max(worst_gap, std::abs(r.gap_to_analytic));
    worst_lambda_e = std::max(worst_lambda_e, s.lambda_e);
    min_eigenvalue = std::min(min_eigenvalue, report.positive.min_eigenvalue);
    worst_kappa7 = std::max(worst_kappa7, std::abs(report.no_signaling.kappa7));
    if (std::abs(r.gap_to_analytic) > kGapGuard || !report.all_ok()) {
      doc.ok = false;
    }
  }
  doc.residuals["max_abs_gap"] = num(worst_gap);
  doc.residuals["max_lambda_e"] = num(worst_lambda_e);
  doc.residuals["min_eigenvalue"] = num(min_eigenvalue);
  doc.residuals["max_abs_kappa7"] = num(worst_kappa7);
}

RealState normalized_state(const RunConfig& cfg, Document& doc) {
  if (static_cast<int>(cfg.state.size()) != cfg.d_min) {
    throw UsageError(fmt::format("--state has {} components but d = {}",
                                 cfg.state.size(), cfg.d_min));
  }
  Eigen::VectorXd v(cfg.d_min);
  for (int i = 0; i < cfg.d_min; ++i) v[i] = cfg.state[i];
  const double norm = v.norm();
  const double offset = std::abs(norm - 1.0);
  if (!(offset < kMaxNormOffset)) {
    throw UsageError(fmt::format(
        "--state has norm {}, which is not within 1e-6 of 1",
        format_number(norm)));
  }
  if (offset > kSilentNormOffset) {
    doc.warnings.push_back(fmt::format(
        "state norm {} differs from 1; normalizing", format_number(norm)));
  }
  return RealState::from_amplitudes(v / norm);
}

void cmd_clone(const RunConfig& cfg, Document& doc) {
  const int d = cfg.d_min;
  const RealState n = normalized_state(cfg, doc);
  const ClonerCoefficients c = cfg.family == Family::Real
                                   ? optimal_real_coefficients(d)
                                   : universal_coefficients(d);
  const TwoCloneState rho = two_clone_density(n, c);
  const KappaFit fit = extract_kappa(c);
  const ConstraintReport report =
      constraint_report(fit.kappa, rho, cfg.trials,
                        derive_seed(cfg.seed, "cli/clone/report"));
  const double f = fidelity(rho, n);
  const Eigen::MatrixXd marginal = clone_marginal(rho, Clone::First).matrix.real();
  const double marginal_error =
      (marginal - shrunk_marginal(n, f)).cwiseAbs().maxCoeff();
  const double f_bound = analytic_bound(d, cfg.family).f_max;

  Json row = Json::object();
  row["d"] = d;
  row["family"] = std::string(to_string(cfg.family));
  row["a"] = num(c.a);
  row["c"] = num(c.c);
  row["fidelity"] = num(f);
  row["fidelity_closed_form"] = num(clone_fidelity(c));
  row["f_bound"] = num(f_bound);
  row["positive"] = report.positive.ok;
  row["unit_trace"] = report.unit_trace.ok;
  row["no_signaling"] = report.no_signaling.ok;
  row["covariant"] = report.covariant.ok;
  row["swap_symmetric"] = report.swap_symmetric.ok;
  row["marginal"] = matrix_json(marginal);
  doc.results.push_back(row);

  doc.residuals["min_eigenvalue"] = num(report.positive.min_eigenvalue);
  doc.residuals["trace_error"] = num(std::abs(report.unit_trace.trace - 1.0));
  doc.residuals["kappa7"] = num(report.no_signaling.kappa7);
  doc.residuals["no_signaling_deviation"] =
      num(report.no_signaling.max_deviation);
  doc.residuals["covariance"] = num(report.covariant.residual);
  doc.residuals["swap_symmetry"] = num(report.swap_symmetric.residual);
  doc.residuals["marginal_form"] = num(marginal_error);
  doc.residuals["bound_gap"] = num(f_bound - f);
  doc.ok = report.all_ok() && marginal_error <= kEigTol;
}

/// One named property tracked over all draws for a single d.
struct Check {
  std::string name;
  double tolerance;
  /// Lower-is-worse checks (positivity) track a minimum instead of a maximum.
  bool track_minimum = false;
  double worst = 0.0;
  bool ok = true;

  void record(double value) {
    if (track_minimum) {
      worst = std::min(worst, value);
      ok = ok && value >= tolerance;
    } else {
      worst = std::max(worst, value);
      ok = ok && value <= tolerance;
    }
  }
};

void inject_negative_lambda(SpectralParams& s, int d) {
  const auto counts = spectral_multiplicities(d);
  const double shifted = s.lambda_a + 0.05;
  s.lambda_a = -0.05;
  s.lambda_b += counts[0] * shifted;
}

double marginal_residual(const TwoCloneState& rho, const RealState& n,
                         const SpectralParams& s, int d) {
  const double f = fidelity(rho, n);
  const Eigen::MatrixXd expected = shrunk_marginal(n, f);
  double worst = std::abs(f - fidelity_spectral(s, d));
  for (Clone which : {Clone::First, Clone::Second}) {
    const Eigen::MatrixXcd m = clone_marginal(rho, which).matrix;
    worst = std::max(worst, (m - expected.cast<std::complex<double>>())
                                .cwiseAbs()
                                .maxCoeff());
  }
  return worst;
}

std::vector<Check> verify_dimension(const RunConfig& cfg, int d) {
  Check covariance{"covariance", kEigTol};
  Check marginal{"marginal_form", kEigTol};
  Check swap{"swap_symmetry", kAnalyticTol};
  Check positivity{"positivity", kPsdTol, true,
                   std::numeric_limits<double>::infinity()};
  Check trace{"trace", kAnalyticTol};
  Check agreement{"no_signaling_agreement", 0.0};
  Check deviation{"no_signaling_deviation", kNoSignalingDeviationTol};
  Check spectral{"spectral_reconstruction", kEigTol};
  Check saturation{"bound_saturation", kAnalyticTol};

  Rng rng = Rng(cfg.seed, "cli/verify").split(static_cast<std::uint64_t>(d));
  const RealState e0 = RealState::basis(d, 0);
  for (int t = 0; t < cfg.trials; ++t) {
    const KappaParams kappa = random_kappa(rng);
    const Rotation r = random_rotation(d, rng);
    const RealState n = random_state(d, rng);
    covariance.record(covariance_residual(
        [&kappa](const RealState& m) { return rho_from_kappa(kappa, m); }, r,
        n));

    SpectralParams s = random_spectral(d, rng);
    if (cfg.negative_lambda_fault) inject_negative_lambda(s, d);
    const RealState m = random_state(d, rng);
    const TwoCloneState rho = rho_from_spectral(s, m, complement_frame(m, rng()));
    positivity.record(check_positivity(rho).min_eigenvalue);
    trace.record(std::abs(check_trace(rho).trace - 1.0));
    swap.record(check_swap_symmetry(rho).residual);
    marginal.record(marginal_residual(rho, m, s, d));

    const TwoCloneState at_e0 = rho_from_kappa(kappa_from_spectral(s, d), e0);
    const Eigen::VectorXd eig =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(at_e0.matrix(),
                                                        Eigen::EigenvaluesOnly)
            .eigenvalues();
    const std::vector<double> expected = spectral_multiset(s, d);
    double eig_error = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      eig_error = std::max(eig_error, std::abs(eig[i] - expected[i]));
    }
    spectral.record(eig_error);

    KappaParams probe = random_kappa(rng);
    if (t % 2 == 0) probe.k(7) = 0.0;
    const NoSignalingCheck ns = check_no_signaling(probe, d, 2, rng());
    agreement.record(ns.algebraic_ok == ns.operational_ok ? 0.0 : 1.0);
    if (probe.k(7) == 0.0) deviation.record(ns.max_deviation);
  }

  const ClonerCoefficients c = optimal_real_coefficients(d);
  const KappaFit fit = extract_kappa(c);
  const RealState n = random_state(d, rng);
  const ConstraintReport report = constraint_report(
      fit.kappa, two_clone_density(n, c), cfg.trials, rng());
  saturation.record(std::max(
      std::abs(clone_fidelity(c) - analytic_bound_real(d).f_max), fit.residual));
  saturation.ok = saturation.ok && report.all_ok();

  return {covariance, swap,      positivity, trace,     agreement,
          deviation,  marginal,  spectral,   saturation};
}

void cmd_verify(const RunConfig& cfg, Document& doc) {
  std::vector<Check> overall;
  for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
    const std::vector<Check> checks = verify_dimension(cfg, d);
    for (std::size_t i = 0; i < checks.size(); ++i) {
      const Check& check = checks[i];
      Json row = Json::object();
      row["d"] = d;
      row["check"] = check.name;
      row["status"] = check.ok ? "pass" : "fail";
      row["worst"] = num(check.worst);
      row["tolerance"] = num(check.tolerance);
      doc.results.push_back(row);
      doc.ok = doc.ok && check.ok;

      if (overall.size() <= i) {
        overall.push_back(check);
      } else {
        overall[i].worst = check.track_minimum
                               ? std::min(overall[i].worst, check.worst)
                               : std::max(overall[i].worst, check.worst);
      }
    }
  }
  for (const Check& check : overall) {
    doc.residuals[check.name] = num(check.worst);
  }
}

void cmd_figure(const RunConfig& cfg, Document& doc) {
  double min_margin = std::numeric_limits<double>::infinity();
  for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
    const double real = analytic_bound_real(d).f_max;
    const double universal = analytic_bound_universal(d).f_max;
    Json row = Json::object();
    row["d"] = d;
    row["F_real"] = num(real);
    row["F_universal"] = num(universal);
    doc.results.push_back(row);
    min_margin = std::min(min_margin, real - universal);
  }
  doc.residuals["min_real_minus_universal"] = num(min_margin);
  doc.ok = min_margin > 0.0;
}

std::string scalar_text(const Json& value) {
  switch (value.type()) {
    case Json::value_t::number_float:
      return format_number(value.get<double>());
    case Json::value_t::null:
      return "";
    case Json::value_t::string:
      return value.get<std::string>();
    default:
      return value.dump();
  }
}

bool is_scalar(const Json& value) {
  return !value.is_array() && !value.is_object();
}

std::string csv_field(const Json& value) {
  std::string text = scalar_text(value);
  if (text.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char ch : text) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    return quoted + '"';
  }
  return text;
}

std::string render_csv(const Document& doc) {
  std::string text;
  if (doc.results.empty()) return text;
  std::vector<std::string> keys;
  for (const auto& [key, value] : doc.results.front().items()) {
    if (is_scalar(value)) keys.push_back(key);
  }
  text += fmt::format("{}\n", fmt::join(keys, ","));
  for (const Json& row : doc.results) {
    std::vector<std::string> fields;
    for (const auto& key : keys) fields.push_back(csv_field(row.at(key)));
    text += fmt::format("{}\n", fmt::join(fields, ","));
  }
  return text;
}

std::string render_text(const std::string& command, const Document& doc) {
  std::string text;
  for (const Json& row : doc.results) {
    std::vector<std::string> fields;
    std::string blocks;
    for (const auto& [key, value] : row.items()) {
      if (is_scalar(value)) {
        const std::string shown = value.is_null() ? "n/a" : scalar_text(value);
        fields.push_back(fmt::format("{}={}", key, shown));
        continue;
      }
      blocks += fmt::format("{}:\n", key);
      for (const Json& line : value) {
        std::vector<std::string> cells;
        for (const Json& cell : line) cells.push_back(scalar_text(cell));
        blocks += fmt::format("  {}\n", fmt::join(cells, " "));
      }
    }
    text += fmt::format("{} {}\n", command, fmt::join(fields, " "));
    text += blocks;
  }
  for (const auto& [key, value] : doc.residuals.items()) {
    text += fmt::format("residual {}={}\n", key, scalar_text(value));
  }
  text += fmt::format("status={}\n", doc.ok ? "pass" : "fail");
  return text;
}

std::string render(const RunConfig& cfg, const Document& doc) {
  if (cfg.format == "json") {
    Json top = Json::object();
    top["command"] = cfg.command;
    top["config"] = doc.config;
    top["results"] = doc.results;
    top["residuals"] = doc.residuals;
    top["version"] = REALCLONE_VERSION;
    return top.dump(2) + "\n";
  }
  if (cfg.format == "csv" || cfg.command == "figure") return render_csv(doc);
  return render_text(cfg.command, doc);
}

void add_dimension_options(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--d", raw.d, "dimension N or range A..B");
  sub->add_option("--dmin", raw.dmin, "lowest dimension");
  sub->add_option("--dmax", raw.dmax, "highest dimension");
}

void add_output_options(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--format", raw.format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  sub->add_option("--out", raw.out, "write the report to this file");
}

void add_family_option(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--family", raw.family, "real or universal")
      ->check(CLI::IsMember({"real", "universal"}));
}

void add_seed_option(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--seed", raw.seed, "random seed");
}

void add_trials_option(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--trials", raw.trials, "random draws per check")
      ->check(CLI::PositiveNumber);
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  const std::string sci = fmt::format("{:.9e}", x);
  const int exponent = std::stoi(sci.substr(sci.find('e') + 1));
  if (exponent < -6 || exponent >= 6) return sci;
  return fmt::format("{:.{}f}", x, 9 - exponent);
}

std::vector<double> parse_state(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string_view field(text.data() + start,
                           (comma == std::string::npos ? text.size() : comma) -
                               start);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);

    std::string_view digits = field;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
      digits.remove_prefix(1);
    }
    const bool has_digit =
        std::any_of(digits.begin(), digits.end(),
                    [](char ch) { return ch >= '0' && ch <= '9'; });
    const bool plain =
        std::all_of(digits.begin(), digits.end(),
                    [](char ch) { return (ch >= '0' && ch <= '9') || ch == '.'; }) &&
        std::count(digits.begin(), digits.end(), '.') <= 1;
    if (!has_digit || !plain) {
      throw std::invalid_argument(fmt::format(
          "--state component '{}' is not a plain decimal number", field));
    }
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    std::from_chars(field.data(), field.data() + field.size(), value);
    values.push_back(value);

    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RawOptions raw;
  CLI::App app{"Real-state quantum cloning bounds, optimizer and cloner",
               "realclone"};
  app.require_subcommand(1);

  CLI::App* bound = app.add_subcommand("bound", "analytic fidelity bound");
  add_dimension_options(bound, raw);
  add_family_option(bound, raw);
  add_output_options(bound, raw);

  CLI::App* optimize =
      app.add_subcommand("optimize", "numeric maximization of the fidelity");
  add_dimension_options(optimize, raw);
  add_family_option(optimize, raw);
  add_seed_option(optimize, raw);
  add_trials_option(optimize, raw);
  optimize->add_option("--restarts", raw.restarts, "optimizer restarts")
      ->check(CLI::PositiveNumber);
  add_output_options(optimize, raw);

  CLI::App* clone_cmd =
      app.add_subcommand("clone", "run the cloner on one real state");
  add_dimension_options(clone_cmd, raw);
  add_family_option(clone_cmd, raw);
  clone_cmd->add_option("--state", raw.state, "comma-separated amplitudes");
  add_seed_option(clone_cmd, raw);
  add_trials_option(clone_cmd, raw);
  add_output_options(clone_cmd, raw);

  CLI::App* verify = app.add_subcommand("verify", "property suite");
  add_dimension_options(verify, raw);
  add_seed_option(verify, raw);
  add_trials_option(verify, raw);
  add_output_options(verify, raw);
  verify->add_option("--fault", raw.fault)
      ->check(CLI::IsMember({"negative-lambda"}))
      ->group("");

  CLI::App* figure =
      app.add_subcommand("figure", "fidelity against dimension as CSV");
  add_dimension_options(figure, raw);
  add_output_options(figure, raw);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  using Handler = std::function<void(const RunConfig&, Document&)>;
  const Handler handler = command == "bound"      ? Handler(cmd_bound)
                          : command == "optimize" ? Handler(cmd_optimize)
                          : command == "clone"    ? Handler(cmd_clone)
                          : command == "verify"   ? Handler(cmd_verify)
                                                  : Handler(cmd_figure);
  try {
    const RunConfig cfg = resolve(command, raw);
    Document doc;
    doc.config = config_json(cfg);
    handler(cfg, doc);
    for (const auto& warning : doc.warnings) err << "warning: " << warning << "\n";

    const std::string text = render(cfg, doc);
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) throw UsageError("cannot open " + cfg.out + " for writing");
      file << text;
    }
    return doc.ok ? kExitOk : kExitFailure;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace realclone::cli
