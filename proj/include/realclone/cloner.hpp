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

#include <Eigen/Dense>

#include "realclone/output_tensor.hpp"
#include "realclone/realspace.hpp"

namespace realclone {

/// Amplitudes of the covariant cloning tensor
///   u_{ijkl} = A d_il d_jk + A d_jl d_ik + C d_kl d_ij
/// (clone 1, clone 2, ancilla, input). Clone symmetry forces equal A terms.
struct ClonerCoefficients {
  int d = 0;
  double a = 0.0;
  double c = 0.0;

  /// 2(d+1) A^2 + d C^2 + 4 A C; must be 1 for a valid cloner.
  double normalization() const;
};

/// Output of the cloner on one input, amplitude index (i*d + j)*d + k for
/// clone 1 = i, clone 2 = j, ancilla = k.
struct TripartiteState {
  int dim = 0;
  Eigen::VectorXd amplitudes;

  double amplitude(int i, int j, int k) const {
    return amplitudes[(i * dim + j) * dim + k];
  }
};

/// Coefficients reaching the real-state no-signaling bound.
ClonerCoefficients optimal_real_coefficients(int d);

/// C = 0, A = 1/sqrt(2(d+1)).
ClonerCoefficients universal_coefficients(int d);

/// Throws std::invalid_argument on dimension mismatch or if the coefficients
/// are not normalized within kAnalyticTol.
TripartiteState clone(const RealState& n, const ClonerCoefficients& c);

/// (d+3) A^2 + C^2 + 4 A C
double clone_fidelity(const ClonerCoefficients& c);

/// Two-clone state after tracing out the ancilla.
TwoCloneState two_clone_density(const RealState& n, const ClonerCoefficients& c);

/// Least-squares fit of the seven kappa structures to two_clone_density at
/// n = e0 (gauge k3 = 0, k4 = k5 at d = 2). Throws std::runtime_error if the
/// residual exceeds kEigTol.
KappaFit extract_kappa(const ClonerCoefficients& c);

}  // namespace realclone
