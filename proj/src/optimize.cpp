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

#include "realclone/optimize.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "realclone/constraints.hpp"
#include "realclone/nelder_mead.hpp"
#include "realclone/random.hpp"
#include "realclone/tolerances.hpp"

namespace realclone {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegativeLambda = -1e-12;
constexpr int kStartAttempts = 1000;
constexpr int kPolishRounds = 6;

double wrap_phi(double phi) {
  // Everything is pi-periodic in phi; map to [-pi/2, pi/2).
  double w = std::fmod(phi + kPi / 2.0, kPi);
  if (w < 0.0) w += kPi;
  return w - kPi / 2.0;
}

// Variable layout for one branch. Free lambdas are stored as square roots.
struct Layout {
  int d;
  CaseLabel branch;
  double theta;
  bool has_phi;
  bool has_lambda_e;

  int size() const {
    int n = 1 + (has_phi ? 1 : 0) + (has_lambda_e ? 1 : 0);
    if (branch == CaseLabel::A) ++n;  // lambda_b is free in branch (a)
    return n;
  }

  // Solves the two equalities for the dependent lambdas; nullopt if any
  // solved lambda is negative.
  std::optional<SpectralParams> decode(const Eigen::VectorXd& x) const {
    int k = 0;
    SpectralParams s;
    s.theta = theta;
    s.lambda_a = x[k] * x[k];
    ++k;
    if (branch == CaseLabel::A) {
      s.lambda_b = x[k] * x[k];
      ++k;
    }
    if (has_lambda_e) {
      s.lambda_e = x[k] * x[k];
      ++k;
    }
    s.phi = has_phi ? x[k] : 0.0;

    const auto mult = spectral_multiplicities(d);
    const NoSignalingWeights w = no_signaling_weights(d, s.phi);
    const double balance_a = s.lambda_a * w.t_a;
    const double fixed_trace = mult[0] * s.lambda_a + mult[4] * s.lambda_e;
    if (branch == CaseLabel::A) {
      // theta = pi/4: 2 lc = la ta + lb tb; theta = 3pi/4: 2 ld = ...
      const double bound_lambda = (balance_a + s.lambda_b * w.t_b) / 2.0;
      const double other =
          (1.0 - fixed_trace - s.lambda_b - (d - 1) * bound_lambda) / (d - 1);
      if (std::sin(2.0 * theta) > 0.0) {
        s.lambda_c = bound_lambda;
        s.lambda_d = other;
      } else {
        s.lambda_d = bound_lambda;
        s.lambda_c = other;
      }
    } else {
      // 2 l = la ta + lb tb and fixed + lb + 2(d-1) l = 1.
      s.lambda_b = (1.0 - fixed_trace - (d - 1) * balance_a) /
                   (1.0 + (d - 1) * w.t_b);
      s.lambda_c = s.lambda_d = (balance_a + s.lambda_b * w.t_b) / 2.0;
    }
    if (s.lambda_b < kNegativeLambda || s.lambda_c < kNegativeLambda ||
        s.lambda_d < kNegativeLambda) {
      return std::nullopt;
    }
    return s;
  }

  Eigen::VectorXd encode(const SpectralParams& s) const {
    Eigen::VectorXd x(size());
    int k = 0;
    x[k++] = std::sqrt(std::max(0.0, s.lambda_a));
    if (branch == CaseLabel::A) x[k++] = std::sqrt(std::max(0.0, s.lambda_b));
    if (has_lambda_e) x[k++] = std::sqrt(std::max(0.0, s.lambda_e));
    if (has_phi) x[k++] = s.phi;
    return x;
  }
};

struct Candidate {
  SpectralParams params;
  double value = -std::numeric_limits<double>::infinity();
  CaseLabel branch = CaseLabel::A;
  int restart = 0;
};

std::optional<Eigen::VectorXd> feasible_start(const Layout& layout, Rng& rng) {
  const int d = layout.d;
  const auto mult = spectral_multiplicities(d);
  for (int attempt = 0; attempt < kStartAttempts; ++attempt) {
    SpectralParams s;
    s.lambda_a = rng.uniform(0.0, 1.0 / mult[0]);
    s.lambda_b = rng.uniform(0.0, 1.0);
    if (layout.has_lambda_e) s.lambda_e = rng.uniform(0.0, 1.0 / mult[4]);
    s.phi = layout.has_phi ? rng.uniform(-kPi / 2.0, kPi / 2.0) : 0.0;
    Eigen::VectorXd x = layout.encode(s);
    if (layout.decode(x)) return x;
  }
  return std::nullopt;
}

Candidate local_search(const Layout& layout, const Eigen::VectorXd& start,
                       const OptimizerSettings& settings, int restart) {
  auto objective = [&layout](const Eigen::VectorXd& x) {
    const auto s = layout.decode(x);
    if (!s) return -std::numeric_limits<double>::infinity();
    return fidelity_spectral(*s, layout.d);
  };
  NelderMeadOptions options;
  options.f_tolerance = settings.tolerance;
  options.max_evaluations = settings.max_evaluations;

  NelderMeadResult best = nelder_mead_maximize(objective, start, options);
  // Re-seeding the simplex at the incumbent recovers from premature collapse
  // against the feasibility wall.
  for (int round = 0; round < kPolishRounds; ++round) {
    options.initial_step = 0.05 / (round + 1);
    NelderMeadResult next = nelder_mead_maximize(objective, best.x, options);
    const bool improved = next.value > best.value + 1e-16;
    if (next.value >= best.value) best = next;
    if (!improved) break;
  }

  Candidate out;
  out.params = *layout.decode(best.x);
  out.value = best.value;
  out.branch = layout.branch;
  out.restart = restart;
  return out;
}

// Zeroes free lambdas that the search drove to ~0 and keeps the result if
// it is feasible and not worse.
Candidate snap_small_lambdas(const Layout& layout, const Candidate& c) {
  SpectralParams s = c.params;
  if (s.lambda_a < 1e-8) s.lambda_a = 0.0;
  if (s.lambda_e < 1e-8) s.lambda_e = 0.0;
  if (layout.branch == CaseLabel::A && s.lambda_b < 1e-8) s.lambda_b = 0.0;
  const auto snapped = layout.decode(layout.encode(s));
  if (!snapped) return c;
  const double value = fidelity_spectral(*snapped, layout.d);
  if (value + 1e-13 < c.value) return c;
  Candidate out = c;
  out.params = *snapped;
  out.value = value;
  return out;
}

void clip_negative_noise(SpectralParams& s) {
  for (double* l : {&s.lambda_a, &s.lambda_b, &s.lambda_c, &s.lambda_d,
                    &s.lambda_e}) {
    if (*l < 0.0 && *l >= kNegativeLambda) *l = 0.0;
  }
}

}  // namespace

OptResult numeric_optimize(int d, Family family,
                           const OptimizerSettings& settings) {
  require_dimension(d);
  if (settings.restarts < 1) {
    throw std::invalid_argument("restarts must be >= 1");
  }
  const bool has_phi = family == Family::Real;
  const bool has_lambda_e = d >= 3;
  Rng root(settings.seed, "numeric_optimize");

  std::vector<Candidate> candidates;
  int restarts_used = 0;
  for (int r = 0; r < settings.restarts; ++r) {
    Rng rng = root.split(static_cast<std::uint64_t>(r));
    const double theta_a = r % 2 == 0 ? kPi / 4.0 : 3.0 * kPi / 4.0;
    const Layout layouts[] = {
        {d, CaseLabel::A, theta_a, has_phi, has_lambda_e},
        {d, CaseLabel::B, 0.0, has_phi, has_lambda_e},
    };
    bool any = false;
    for (const Layout& layout : layouts) {
      const auto start = feasible_start(layout, rng);
      if (!start) continue;
      any = true;
      candidates.push_back(
          snap_small_lambdas(layout, local_search(layout, *start, settings, r)));
    }
    if (any) ++restarts_used;
  }
  if (candidates.empty()) {
    throw std::runtime_error("numeric_optimize: every restart was infeasible");
  }

  double best_value = -std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) best_value = std::max(best_value, c.value);
  // Among near-ties prefer branch (a), then the lowest restart index.
  const Candidate* chosen = nullptr;
  for (const auto& c : candidates) {
    if (c.value < best_value - 1e-12) continue;
    if (!chosen || (c.branch == CaseLabel::A && chosen->branch == CaseLabel::B) ||
        (c.branch == chosen->branch && c.restart < chosen->restart)) {
      chosen = &c;
    }
  }

  OptResult out;
  out.d = d;
  out.family = family;
  out.best_params = chosen->params;
  out.best_params.phi = wrap_phi(out.best_params.phi);
  clip_negative_noise(out.best_params);
  out.f_numeric = fidelity_spectral(out.best_params, d);
  out.f_analytic = analytic_bound(d, family).f_max;
  out.gap_to_analytic = out.f_analytic - out.f_numeric;
  out.restarts_used = restarts_used;
  out.case_label = chosen->branch;
  return out;
}

}  // namespace realclone
