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
#include <functional>

#include "realclone/output_tensor.hpp"
#include "realclone/tolerances.hpp"

namespace realclone {

struct Tolerances {
  double analytic = kAnalyticTol;
  double eig = kEigTol;
  double psd = kPsdTol;

  /// Looser set for numerically optimized parameters.
  static Tolerances optimizer() { return {kOptTol, kOptTol, -kOptTol}; }
};

struct PositivityCheck {
  bool ok = false;
  double min_eigenvalue = 0.0;
};

struct TraceCheck {
  bool ok = false;
  double trace = 0.0;
};

struct NoSignalingCheck {
  bool ok = false;
  bool algebraic_ok = false;
  bool operational_ok = false;
  double kappa7 = 0.0;
  /// Worst max-entry difference between the two basis mixtures.
  double max_deviation = 0.0;
};

struct ResidualCheck {
  bool ok = false;
  double residual = 0.0;
};

struct ConstraintReport {
  PositivityCheck positive;
  TraceCheck unit_trace;
  NoSignalingCheck no_signaling;
  ResidualCheck covariant;
  ResidualCheck swap_symmetric;

  bool all_ok() const {
    return positive.ok && unit_trace.ok && no_signaling.ok && covariant.ok &&
           swap_symmetric.ok;
  }
};

/// Throws std::invalid_argument if rho is not Hermitian within tol.eig.
PositivityCheck check_positivity(const TwoCloneState& rho,
                                 const Tolerances& tol = {});
/// Eigenvalues are the lambdas themselves; all must be >= -1e-12.
PositivityCheck check_positivity(const SpectralParams& s);

TraceCheck check_trace(const TwoCloneState& rho, const Tolerances& tol = {});
TraceCheck check_trace(const SpectralParams& s, int d,
                       const Tolerances& tol = {});

/// d(d-1)/2 la + lb + (d-1)(lc + ld) + (d-1)(d-2)/2 le
double spectral_trace(const SpectralParams& s, int d);

/// Sum over mu of rho(n^mu) for a basis {n^mu}.
Eigen::MatrixXcd basis_mixture(const KappaParams& kappa,
                               const RealBasis& basis);

/// Algebraic (|k7| small) and operational (two random basis mixtures agree)
/// no-signaling tests. `ok` requires both; the two are expected to agree.
NoSignalingCheck check_no_signaling(const KappaParams& kappa, int d,
                                    int trials, std::uint64_t seed,
                                    const Tolerances& tol = {});

struct NoSignalingWeights {
  double t_a = 0.0;
  double t_b = 0.0;
};

/// Weights of lambda_a and lambda_b in the no-signaling balance:
///   t_a = 1 + (d-2)/(d-1) sin^2 phi + sin(2 phi)/sqrt(d-1)
///   t_b = (cos phi - sin phi / sqrt(d-1))^2
NoSignalingWeights no_signaling_weights(int d, double phi);

/// la t_a + lb t_b - lc (1 + sin 2theta) - ld (1 - sin 2theta).
/// Equals k7 of the corresponding tensor.
double no_signaling_spectral_residual(const SpectralParams& s, int d);

using CovariantBuilder = std::function<TwoCloneState(const RealState&)>;

/// Compares builder(R n) with (R (x) R) builder(n) (R (x) R)^T over random
/// (R, n); returns the worst max-entry residual.
ResidualCheck check_covariance(const CovariantBuilder& builder, int d,
                               int trials, std::uint64_t seed,
                               const Tolerances& tol = {});
ResidualCheck check_covariance(const KappaParams& kappa, int d, int trials,
                               std::uint64_t seed, const Tolerances& tol = {});

/// Covariance residual for a single rotation / state pair.
double covariance_residual(const CovariantBuilder& builder, const Rotation& r,
                           const RealState& n);

/// || S rho S - rho ||_max with S the clone swap.
ResidualCheck check_swap_symmetry(const TwoCloneState& rho,
                                  const Tolerances& tol = {});

/// d^2 x d^2 permutation |ij> -> |ji>.
Eigen::MatrixXd swap_operator(int d);

/// Kronecker square R (x) R.
Eigen::MatrixXd tensor_square(const Eigen::MatrixXd& r);

/// Full report for a covariant tensor given by kappa, evaluated at rho.
ConstraintReport constraint_report(const KappaParams& kappa,
                                   const TwoCloneState& rho, int trials,
                                   std::uint64_t seed,
                                   const Tolerances& tol = {});

/// Builds rho_from_spectral at a seeded random state and frame, converts to
/// kappa, and runs every check.
ConstraintReport constraint_report(const SpectralParams& s, int d, int trials,
                                   std::uint64_t seed,
                                   const Tolerances& tol = {});

}  // namespace realclone
