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

#include "realclone/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "realclone/random.hpp"

namespace realclone {

PositivityCheck check_positivity(const TwoCloneState& rho,
                                 const Tolerances& tol) {
  const Eigen::MatrixXcd& m = rho.matrix();
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol.eig) {
    throw std::invalid_argument("check_positivity: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      m, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  return {min_eig >= tol.psd, min_eig};
}

PositivityCheck check_positivity(const SpectralParams& s) {
  const double min_lambda = std::min(
      {s.lambda_a, s.lambda_b, s.lambda_c, s.lambda_d, s.lambda_e});
  return {min_lambda >= kSpectralPsdTol, min_lambda};
}

TraceCheck check_trace(const TwoCloneState& rho, const Tolerances& tol) {
  const double trace = rho.matrix().trace().real();
  return {std::abs(trace - 1.0) <= tol.eig, trace};
}

double spectral_trace(const SpectralParams& s, int d) {
  const auto mult = spectral_multiplicities(d);
  return mult[0] * s.lambda_a + mult[1] * s.lambda_b + mult[2] * s.lambda_c +
         mult[3] * s.lambda_d + mult[4] * s.lambda_e;
}

TraceCheck check_trace(const SpectralParams& s, int d, const Tolerances& tol) {
  const double trace = spectral_trace(s, d);
  return {std::abs(trace - 1.0) <= tol.analytic, trace};
}

Eigen::MatrixXcd basis_mixture(const KappaParams& kappa,
                               const RealBasis& basis) {
  const int d = basis.dim();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (const auto& state : basis.states) {
    sum += rho_from_kappa(kappa, state).matrix();
  }
  return sum;
}

NoSignalingCheck check_no_signaling(const KappaParams& kappa, int d,
                                    int trials, std::uint64_t seed,
                                    const Tolerances& tol) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  require_matrix_dimension(d);
  NoSignalingCheck out;
  out.kappa7 = kappa.k(7);
  out.algebraic_ok = std::abs(out.kappa7) <= tol.analytic;
  for (int t = 0; t < trials; ++t) {
    const RealBasis first =
        random_basis(d, derive_seed(seed, "no_signaling/first", t));
    const RealBasis second =
        random_basis(d, derive_seed(seed, "no_signaling/second", t));
    const double deviation =
        (basis_mixture(kappa, first) - basis_mixture(kappa, second))
            .cwiseAbs()
            .maxCoeff();
    out.max_deviation = std::max(out.max_deviation, deviation);
  }
  out.operational_ok = out.max_deviation <= tol.eig;
  out.ok = out.algebraic_ok && out.operational_ok;
  return out;
}

NoSignalingWeights no_signaling_weights(int d, double phi) {
  const double root = std::sqrt(static_cast<double>(d - 1));
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  NoSignalingWeights w;
  w.t_a = 1.0 + (d - 2.0) / (d - 1.0) * s * s + std::sin(2.0 * phi) / root;
  const double tb = c - s / root;
  w.t_b = tb * tb;
  return w;
}

double no_signaling_spectral_residual(const SpectralParams& s, int d) {
  const NoSignalingWeights w = no_signaling_weights(d, s.phi);
  const double sin2theta = std::sin(2.0 * s.theta);
  return s.lambda_a * w.t_a + s.lambda_b * w.t_b -
         s.lambda_c * (1.0 + sin2theta) - s.lambda_d * (1.0 - sin2theta);
}

Eigen::MatrixXd tensor_square(const Eigen::MatrixXd& r) {
  const auto d = r.rows();
  Eigen::MatrixXd out(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index k = 0; k < d; ++k) {
      out.block(i * d, k * d, d, d) = r(i, k) * r;
    }
  }
  return out;
}

Eigen::MatrixXd swap_operator(int d) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
  }
  return s;
}

double covariance_residual(const CovariantBuilder& builder, const Rotation& r,
                           const RealState& n) {
  const Eigen::MatrixXd rr = tensor_square(r.matrix());
  const Eigen::MatrixXcd lhs = builder(rotate_state(r, n)).matrix();
  const Eigen::MatrixXcd rhs = rr * builder(n).matrix() * rr.transpose();
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

ResidualCheck check_covariance(const CovariantBuilder& builder, int d,
                               int trials, std::uint64_t seed,
                               const Tolerances& tol) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  ResidualCheck out;
  for (int t = 0; t < trials; ++t) {
    const Rotation r =
        random_rotation(d, derive_seed(seed, "covariance/rotation", t));
    const RealState n =
        random_state(d, derive_seed(seed, "covariance/state", t));
    out.residual = std::max(out.residual, covariance_residual(builder, r, n));
  }
  out.ok = out.residual <= tol.eig;
  return out;
}

ResidualCheck check_covariance(const KappaParams& kappa, int d, int trials,
                               std::uint64_t seed, const Tolerances& tol) {
  return check_covariance(
      [&kappa](const RealState& n) { return rho_from_kappa(kappa, n); }, d,
      trials, seed, tol);
}

ResidualCheck check_swap_symmetry(const TwoCloneState& rho,
                                  const Tolerances& tol) {
  const Eigen::MatrixXd s = swap_operator(rho.dim());
  ResidualCheck out;
  out.residual = (s * rho.matrix() * s - rho.matrix()).cwiseAbs().maxCoeff();
  out.ok = out.residual <= tol.eig;
  return out;
}

ConstraintReport constraint_report(const KappaParams& kappa,
                                   const TwoCloneState& rho, int trials,
                                   std::uint64_t seed, const Tolerances& tol) {
  const int d = rho.dim();
  ConstraintReport report;
  report.positive = check_positivity(rho, tol);
  report.unit_trace = check_trace(rho, tol);
  report.no_signaling =
      check_no_signaling(kappa, d, trials, derive_seed(seed, "ns"), tol);
  report.covariant =
      check_covariance(kappa, d, trials, derive_seed(seed, "cov"), tol);
  report.swap_symmetric = check_swap_symmetry(rho, tol);
  return report;
}

ConstraintReport constraint_report(const SpectralParams& s, int d, int trials,
                                   std::uint64_t seed, const Tolerances& tol) {
  const RealState n = random_state(d, derive_seed(seed, "report/state"));
  const ComplementFrame frame =
      complement_frame(n, derive_seed(seed, "report/frame"));
  const TwoCloneState rho = rho_from_spectral(s, n, frame);
  return constraint_report(kappa_from_spectral(s, d), rho, trials, seed, tol);
}

}  // namespace realclone
