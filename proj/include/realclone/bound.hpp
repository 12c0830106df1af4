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

#include <array>
#include <optional>
#include <string_view>

namespace realclone {

enum class Family { Real, Universal };

/// Which clone-symmetry branch an optimum lives in: (a) cos 2theta = 0,
/// (b) lambda_c = lambda_d.
enum class CaseLabel { A, B };

std::string_view to_string(Family family);
std::string_view to_string(CaseLabel label);

struct BoundResult {
  int d = 0;
  Family family = Family::Real;
  double f_max = 0.0;
  /// Angle of the optimal lambda_b eigenvector; real family only.
  std::optional<double> optimal_phi;
  CaseLabel case_label = CaseLabel::A;
};

/// 1/2 + (sqrt(d^2 + 4d + 20) - d + 2) / (4(d + 2)), attained at
/// tan(phi) = (d + 4 - sqrt(d^2 + 4d + 20)) / (2 sqrt(d - 1)).
BoundResult analytic_bound_real(int d);

/// 1/2 + 1/(d + 1)
BoundResult analytic_bound_universal(int d);

BoundResult analytic_bound(int d, Family family);

/// The three candidate fidelities of branch (a), one per surviving
/// eigenvalue (lambda_a, lambda_b, lambda_d), with t_a and t_b in their
/// closed forms:
///   t_a = cos^2 a ((d-2)/(d-1) sin^2 2p + sin 4p / sqrt(d-1)) + 1
///   t_b = (cos p - sin p / sqrt(d-1))^2
std::array<double, 3> case_a_candidates(int d, double alpha, double phi);

/// The two candidate fidelities of branch (b), lambda_c = lambda_d.
std::array<double, 2> case_b_candidates(int d, double alpha, double phi);

}  // namespace realclone
