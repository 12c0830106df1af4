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

#include "realclone/cloner.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "realclone/tolerances.hpp"

namespace realclone {
namespace {

void require_normalized(const ClonerCoefficients& c) {
  require_dimension(c.d);
  if (std::abs(c.normalization() - 1.0) > kAnalyticTol) {
    throw std::invalid_argument("cloner coefficients are not normalized (" +
                                std::to_string(c.normalization()) + ")");
  }
}

}  // namespace

double ClonerCoefficients::normalization() const {
  return 2.0 * (d + 1) * a * a + d * c * c + 4.0 * a * c;
}

ClonerCoefficients optimal_real_coefficients(int d) {
  require_dimension(d);
  const double root = std::sqrt(static_cast<double>(d * d + 4 * d + 20));
  const double a2 = (d * root + 2.0 * d + d * d - 8.0) /
                    (4.0 * (d - 1.0) * (d + 2.0) * root);
  const double a = std::sqrt(a2);
  return {d, a, (root - d - 2.0) / 4.0 * a};
}

ClonerCoefficients universal_coefficients(int d) {
  require_dimension(d);
  return {d, 1.0 / std::sqrt(2.0 * (d + 1.0)), 0.0};
}

double clone_fidelity(const ClonerCoefficients& c) {
  return (c.d + 3.0) * c.a * c.a + c.c * c.c + 4.0 * c.a * c.c;
}

TripartiteState clone(const RealState& n, const ClonerCoefficients& c) {
  if (n.dim() != c.d) {
    throw std::invalid_argument("clone: state and cloner dimensions differ");
  }
  require_normalized(c);
  const int d = c.d;
  TripartiteState out;
  out.dim = d;
  out.amplitudes = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d) * d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        out.amplitudes[(i * d + j) * d + k] =
            c.a * n[i] * (j == k) + c.a * n[j] * (i == k) + c.c * n[k] * (i == j);
      }
    }
  }
  return out;
}

TwoCloneState two_clone_density(const RealState& n,
                                const ClonerCoefficients& c) {
  require_matrix_dimension(c.d);
  const TripartiteState out = clone(n, c);
  const int d = c.d;
  // Rows of `psi` are clone pairs (i*d + j), columns the ancilla index.
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
      psi(out.amplitudes.data(), d * d, d);
  const Eigen::MatrixXd rho = psi * psi.transpose();
  return TwoCloneState(d, rho.cast<std::complex<double>>());
}

KappaFit extract_kappa(const ClonerCoefficients& c) {
  const int d = c.d;
  const RealState e0 = RealState::basis(d, 0);
  const TwoCloneState rho = two_clone_density(e0, c);
  const auto structures = kappa_structures(e0);

  const Eigen::Index entries = static_cast<Eigen::Index>(d) * d * d * d;
  const Eigen::Index gauge_rows = d == 2 ? 2 : 0;
  Eigen::MatrixXd design(entries + gauge_rows, 7);
  Eigen::VectorXd target(entries + gauge_rows);
  const Eigen::MatrixXd real = rho.matrix().real();
  for (int alpha = 0; alpha < 7; ++alpha) {
    design.col(alpha).head(entries) =
        Eigen::Map<const Eigen::VectorXd>(structures[alpha].data(), entries);
  }
  target.head(entries) = Eigen::Map<const Eigen::VectorXd>(real.data(), entries);
  if (d == 2) {
    design.bottomRows(2).setZero();
    design(entries, 2) = 1.0;      // k3 = 0
    design(entries + 1, 3) = 1.0;  // k4 - k5 = 0
    design(entries + 1, 4) = -1.0;
    target.tail(2).setZero();
  }

  const Eigen::VectorXd x = design.colPivHouseholderQr().solve(target);
  KappaFit fit;
  for (int alpha = 0; alpha < 7; ++alpha) fit.kappa.values[alpha] = x[alpha];
  fit.residual =
      (rho.matrix() - rho_from_kappa(fit.kappa, e0).matrix()).cwiseAbs().maxCoeff();
  if (fit.residual > kEigTol) {
    throw std::runtime_error("cloner output is not of covariant kappa form");
  }
  return fit;
}

}  // namespace realclone
