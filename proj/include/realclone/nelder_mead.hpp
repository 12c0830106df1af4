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

#include <functional>

#include <Eigen/Dense>

namespace realclone {

struct NelderMeadOptions {
  double initial_step = 0.25;
  /// Stop once the spread of objective values and the simplex diameter both
  /// fall below these.
  double f_tolerance = 1e-14;
  double x_tolerance = 1e-11;
  int max_evaluations = 4000;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Derivative-free simplex maximization. The objective may return -infinity
/// (or NaN) to mark infeasible points; the start point must be feasible.
NelderMeadResult nelder_mead_maximize(
    const std::function<double(const Eigen::VectorXd&)>& objective,
    const Eigen::VectorXd& start, const NelderMeadOptions& options = {});

}  // namespace realclone
