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

#include "realclone/output_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "realclone/random.hpp"
#include "realclone/tolerances.hpp"

namespace realclone {
namespace {

using Complex = std::complex<double>;

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

// Value of structure `alpha` (0-based) at r_{ij,kl}.
double structure_entry(int alpha, const Eigen::VectorXd& n, int i, int j,
                       int k, int l) {
  switch (alpha) {
    case 0: return delta(i, k) * delta(j, l);
    case 1: return delta(i, l) * delta(j, k);
    case 2: return delta(i, j) * delta(k, l);
    case 3: return n[i] * n[k] * delta(j, l) + n[j] * n[l] * delta(i, k);
    case 4: return n[i] * n[l] * delta(j, k) + n[j] * n[k] * delta(i, l);
    case 5: return n[i] * n[j] * delta(k, l) + n[k] * n[l] * delta(i, j);
    case 6: return n[i] * n[j] * n[k] * n[l];
    default: throw std::out_of_range("kappa structure index");
  }
}

void require_frame_of(const ComplementFrame& frame, const RealState& n) {
  if (frame.dim() != n.dim() ||
      (frame.base().amplitudes() - n.amplitudes()).cwiseAbs().maxCoeff() >
          kAnalyticTol) {
    throw std::invalid_argument("complement frame was built for another state");
  }
}

Eigen::MatrixXd outer_to_pair_matrix(const Eigen::VectorXd& n) {
  return n * n.transpose();
}

// Row-major vectorization of a d x d matrix: index i*d + j.
Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& m) {
  const auto d = m.rows();
  Eigen::VectorXcd v(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) v[i * d + j] = m(i, j);
  }
  return v;
}

}  // namespace

double SpectralParams::permutation_residual() const {
  return (lambda_c - lambda_d) * std::cos(2.0 * theta);
}

TwoCloneState::TwoCloneState(int dim, Eigen::MatrixXcd matrix)
    : dim_(dim), matrix_(std::move(matrix)) {
  const Eigen::Index size = static_cast<Eigen::Index>(dim) * dim;
  if (matrix_.rows() != size || matrix_.cols() != size) {
    throw std::invalid_argument("two-clone matrix must be d^2 x d^2");
  }
}

std::array<int, 5> EigenFamilies::multiplicities() const {
  std::array<int, 5> counts{};
  for (const auto& v : vectors) ++counts[static_cast<int>(v.label)];
  return counts;
}

std::array<int, 5> spectral_multiplicities(int d) {
  return {d * (d - 1) / 2, 1, d - 1, d - 1, (d - 1) * (d - 2) / 2};
}

std::vector<double> spectral_multiset(const SpectralParams& s, int d) {
  const auto counts = spectral_multiplicities(d);
  const std::array<double, 5> lambdas = {s.lambda_a, s.lambda_b, s.lambda_c,
                                         s.lambda_d, s.lambda_e};
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(d) * d);
  for (int label = 0; label < 5; ++label) {
    values.insert(values.end(), counts[label], lambdas[label]);
  }
  std::sort(values.begin(), values.end());
  return values;
}

SpectralParams random_spectral(int d, Rng& rng) {
  require_dimension(d);
  const auto counts = spectral_multiplicities(d);
  std::array<double, 5> w{};
  double total = 0.0;
  for (int label = 0; label < 5; ++label) {
    w[label] = counts[label] > 0 ? rng.uniform(0.0, 1.0) : 0.0;
  }
  SpectralParams s;
  s.alpha = rng.uniform(-std::numbers::pi, std::numbers::pi);
  s.phi = rng.uniform(-std::numbers::pi, std::numbers::pi);
  if (rng.uniform(0.0, 1.0) < 0.5) {
    w[3] = w[2];
    s.theta = rng.uniform(-std::numbers::pi, std::numbers::pi);
  } else {
    s.theta = std::numbers::pi / 4.0 +
              std::floor(rng.uniform(0.0, 4.0)) * std::numbers::pi / 2.0;
  }
  for (int label = 0; label < 5; ++label) total += counts[label] * w[label];
  s.lambda_a = w[0] / total;
  s.lambda_b = w[1] / total;
  s.lambda_c = w[2] / total;
  s.lambda_d = w[3] / total;
  s.lambda_e = w[4] / total;
  return s;
}

KappaParams random_kappa(Rng& rng) {
  KappaParams kappa;
  for (double& v : kappa.values) v = rng.uniform(-1.0, 1.0);
  return kappa;
}

Eigen::VectorXd pair_vector(const Eigen::VectorXd& a,
                            const Eigen::VectorXd& b) {
  const auto d = a.size();
  Eigen::VectorXd v(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) v[i * d + j] = a[i] * b[j];
  }
  return v;
}

std::array<Eigen::MatrixXd, 7> kappa_structures(const RealState& n) {
  const int d = n.dim();
  require_matrix_dimension(d);
  const int size = d * d;
  std::array<Eigen::MatrixXd, 7> out;
  for (auto& m : out) m = Eigen::MatrixXd::Zero(size, size);
  const Eigen::VectorXd& a = n.amplitudes();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
          for (int alpha = 0; alpha < 7; ++alpha) {
            out[alpha](i * d + j, k * d + l) =
                structure_entry(alpha, a, i, j, k, l);
          }
        }
      }
    }
  }
  return out;
}

TwoCloneState rho_from_kappa(const KappaParams& kappa, const RealState& n) {
  const int d = n.dim();
  require_matrix_dimension(d);
  const int size = d * d;
  const Eigen::VectorXd& a = n.amplitudes();
  const auto& c = kappa.values;
  Eigen::MatrixXd r(size, size);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
          double value = 0.0;
          for (int alpha = 0; alpha < 7; ++alpha) {
            if (c[alpha] != 0.0) {
              value += c[alpha] * structure_entry(alpha, a, i, j, k, l);
            }
          }
          r(i * d + j, k * d + l) = value;
        }
      }
    }
  }
  return TwoCloneState(d, r.cast<Complex>());
}

EigenFamilies table1_eigenvectors(const RealState& n,
                                  const ComplementFrame& frame, double alpha,
                                  double phi, double theta) {
  require_frame_of(frame, n);
  const int d = n.dim();
  require_matrix_dimension(d);
  const Eigen::VectorXd& nv = n.amplitudes();
  const auto& m = frame.vectors();
  const double root = std::sqrt(static_cast<double>(d - 1));
  const Complex phase = std::polar(1.0, alpha);

  // n n - 1, the (negated) projector onto the complement.
  const Eigen::MatrixXd nn_minus_one =
      outer_to_pair_matrix(nv) - Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd nn = outer_to_pair_matrix(nv);

  EigenFamilies fam;
  auto push = [&fam](EigenLabel label, int mu, int nu, double weight,
                     Eigen::VectorXcd v) {
    fam.vectors.push_back({label, mu, nu, weight, std::move(v)});
  };

  // lambda_a
  for (int mu = 0; mu < d - 1; ++mu) {
    Eigen::MatrixXd diag = m[mu] * m[mu].transpose() -
                           std::sin(phi) / root * nn +
                           (1.0 - std::cos(phi)) / (d - 1) * nn_minus_one;
    push(EigenLabel::A, mu, mu, 1.0,
         phase * vectorize(diag.cast<Complex>()));
    for (int nu = mu + 1; nu < d - 1; ++nu) {
      Eigen::VectorXd sym =
          0.5 * (pair_vector(m[mu], m[nu]) + pair_vector(m[nu], m[mu]));
      push(EigenLabel::A, mu, nu, 2.0, phase * sym.cast<Complex>());
    }
  }

  // lambda_b
  {
    Eigen::MatrixXd vb = std::cos(phi) * nn - std::sin(phi) / root * nn_minus_one;
    push(EigenLabel::B, 0, 0, 1.0, vectorize(vb.cast<Complex>()));
  }

  // lambda_c, lambda_d
  for (int mu = 0; mu < d - 1; ++mu) {
    Eigen::VectorXd nm = pair_vector(nv, m[mu]);
    Eigen::VectorXd mn = pair_vector(m[mu], nv);
    push(EigenLabel::C, mu, mu, 1.0,
         (std::cos(theta) * nm + std::sin(theta) * mn).cast<Complex>());
    push(EigenLabel::D, mu, mu, 1.0,
         (-std::sin(theta) * nm + std::cos(theta) * mn).cast<Complex>());
  }

  // lambda_e: antisymmetric pairs of complement vectors.
  for (int mu = 0; mu < d - 1; ++mu) {
    for (int nu = mu + 1; nu < d - 1; ++nu) {
      Eigen::VectorXd anti =
          (pair_vector(m[mu], m[nu]) - pair_vector(m[nu], m[mu])) /
          std::sqrt(2.0);
      push(EigenLabel::E, mu, nu, 1.0, anti.cast<Complex>());
    }
  }
  return fam;
}

TwoCloneState assemble_spectral(const SpectralParams& s, const RealState& n,
                                const ComplementFrame& frame) {
  const int d = n.dim();
  const EigenFamilies fam =
      table1_eigenvectors(n, frame, s.alpha, s.phi, s.theta);
  const std::array<double, 5> lambdas{s.lambda_a, s.lambda_b, s.lambda_c,
                                      s.lambda_d, s.lambda_e};
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (const auto& v : fam.vectors) {
    const double scale = lambdas[static_cast<int>(v.label)] * v.weight;
    if (scale == 0.0) continue;
    r.noalias() += scale * (v.vector * v.vector.adjoint());
  }
  return TwoCloneState(d, std::move(r));
}

TwoCloneState rho_from_spectral(const SpectralParams& s, const RealState& n,
                                const ComplementFrame& frame) {
  if (std::abs(s.permutation_residual()) > kAnalyticTol) {
    throw std::invalid_argument(
        "spectral parameters break clone symmetry: (lambda_c - lambda_d) "
        "cos(2 theta) = " +
        std::to_string(s.permutation_residual()));
  }
  require_frame_of(frame, n);
  return assemble_spectral(s, n, frame);
}

KappaFit fit_kappa_at_e0(const TwoCloneState& rho) {
  const int d = rho.dim();
  auto r = [&rho](int i, int j, int k, int l) {
    return rho.element(i, j, k, l).real();
  };

  // Rows: coefficients of (k1..k7) in each probe; rhs: probe value.
  Eigen::Matrix<double, 7, 7> a = Eigen::Matrix<double, 7, 7>::Zero();
  Eigen::Matrix<double, 7, 1> b;
  if (d >= 3) {
    a.row(0) << 1, 0, 0, 0, 0, 0, 0;  b[0] = r(1, 2, 1, 2);
    a.row(1) << 0, 1, 0, 0, 0, 0, 0;  b[1] = r(1, 2, 2, 1);
    a.row(2) << 0, 0, 1, 0, 0, 0, 0;  b[2] = r(1, 1, 2, 2);
  } else {
    a.row(0) << 1, 1, 1, 0, 0, 0, 0;  b[0] = r(1, 1, 1, 1);
    a.row(1) << 0, 0, 1, 0, 0, 0, 0;  b[1] = 0.0;
    a.row(2) << 0, 0, 0, 1, -1, 0, 0; b[2] = 0.0;
  }
  a.row(3) << 1, 0, 0, 1, 0, 0, 0;    b[3] = r(0, 1, 0, 1);
  a.row(4) << 0, 1, 0, 0, 1, 0, 0;    b[4] = r(0, 1, 1, 0);
  a.row(5) << 0, 0, 1, 0, 0, 1, 0;    b[5] = r(0, 0, 1, 1);
  a.row(6) << 1, 1, 1, 2, 2, 2, 1;    b[6] = r(0, 0, 0, 0);

  const Eigen::Matrix<double, 7, 1> x = a.partialPivLu().solve(b);
  KappaFit fit;
  for (int alpha = 0; alpha < 7; ++alpha) fit.kappa.values[alpha] = x[alpha];
  const TwoCloneState rebuilt = rho_from_kappa(fit.kappa, RealState::basis(d, 0));
  fit.residual = (rho.matrix() - rebuilt.matrix()).cwiseAbs().maxCoeff();
  return fit;
}

KappaParams kappa_from_spectral(const SpectralParams& s, int d) {
  const RealState e0 = RealState::basis(d, 0);
  const TwoCloneState rho =
      rho_from_spectral(s, e0, canonical_complement_frame(e0));
  const KappaFit fit = fit_kappa_at_e0(rho);
  if (fit.residual > kEigTol) {
    throw std::runtime_error(
        "spectral tensor is not of covariant kappa form (residual " +
        std::to_string(fit.residual) + ")");
  }
  return fit.kappa;
}

CloneMarginal clone_marginal(const TwoCloneState& rho, Clone which) {
  const int d = rho.dim();
  CloneMarginal out;
  out.dim = d;
  out.matrix = Eigen::MatrixXcd::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      Complex sum = 0.0;
      for (int t = 0; t < d; ++t) {
        sum += which == Clone::First ? rho.element(a, t, b, t)
                                     : rho.element(t, a, t, b);
      }
      out.matrix(a, b) = sum;
    }
  }
  out.parent_trace = rho.matrix().trace().real();
  out.unit_trace = std::abs(out.parent_trace - 1.0) <= kEigTol;
  return out;
}

double fidelity(const TwoCloneState& rho, const RealState& n) {
  if (rho.dim() != n.dim()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  const CloneMarginal first = clone_marginal(rho, Clone::First);
  const Eigen::VectorXcd v = n.amplitudes().cast<Complex>();
  return (v.adjoint() * first.matrix * v)(0).real();
}

double fidelity_spectral(const SpectralParams& s, int d) {
  const double sin_phi = std::sin(s.phi);
  const double cos_phi = std::cos(s.phi);
  const double cos_theta = std::cos(s.theta);
  const double sin_theta = std::sin(s.theta);
  return s.lambda_a * sin_phi * sin_phi + s.lambda_b * cos_phi * cos_phi +
         (s.lambda_c * cos_theta * cos_theta +
          s.lambda_d * sin_theta * sin_theta) *
             (d - 1);
}

Eigen::MatrixXd shrunk_marginal(const RealState& n, double f) {
  const int d = n.dim();
  const Eigen::MatrixXd p = n.amplitudes() * n.amplitudes().transpose();
  return f * p + (1.0 - f) / (d - 1) * (Eigen::MatrixXd::Identity(d, d) - p);
}

}  // namespace realclone
