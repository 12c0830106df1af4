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

#pragma once

#include <cstdint>

#include "realclone/bound.hpp"
#include "realclone/output_tensor.hpp"

namespace realclone {

struct OptimizerSettings {
  int restarts = 64;
  std::uint64_t seed = 0;
  /// Objective spread at which a local search stops.
  double tolerance = 1e-14;
  int max_evaluations = 4000;
};

struct OptResult {
  int d = 0;
  Family family = Family::Real;
  SpectralParams best_params;
  double f_numeric = 0.0;
  double f_analytic = 0.0;
  /// f_analytic - f_numeric
  double gap_to_analytic = 0.0;
  int restarts_used = 0;
  CaseLabel case_label = CaseLabel::A;
};

/// Maximizes the single-clone fidelity over spectral parameters subject to
/// positivity, unit trace and no-signaling, by multi-start Nelder-Mead.
///
/// Each restart searches both clone-symmetry branches. In branch (a)
/// (theta = pi/4 or 3pi/4, alternating by restart) the trace and
/// no-signaling equalities are solved for lambda_c and lambda_d; in branch
/// (b) for lambda_c = lambda_d and lambda_b. The remaining lambdas are free
/// (parametrized as squares) together with phi. The universal family pins
/// phi = 0. Throws std::runtime_error if no restart finds a feasible start.
OptResult numeric_optimize(int d, Family family,
                           const OptimizerSettings& settings = {});

}  // namespace realclone
