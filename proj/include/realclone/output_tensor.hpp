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
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "realclone/realspace.hpp"

namespace realclone {

/// Coefficients of the seven rotation-covariant, clone-symmetric tensor
/// structures of the two-clone output:
///
///   r_{ij,kl} = k1 d_ik d_jl + k2 d_il d_jk + k3 d_ij d_kl
///             + k4 (n_i n_k d_jl + n_j n_l d_ik)
///             + k5 (n_i n_l d_jk + n_j n_k d_il)
///             + k6 (n_i n_j d_kl + n_k n_l d_ij)
///             + k7 n_i n_j n_k n_l
///
/// values[0] holds k1. Physicality is not implied.
struct KappaParams {
  std::array<double, 7> values{};

  /// 1-based access matching the k1..k7 naming.
  double& k(int index) { return values.at(index - 1); }
  double k(int index) const { return values.at(index - 1); }
};

/// Eigenvalues and eigenvector angles of the two-clone tensor.
///
/// lambda_a..lambda_e carry degeneracies d(d-1)/2, 1, d-1, d-1, (d-1)(d-2)/2.
/// phi rotates the perfect-cloning direction n(x)n into the trace direction
/// of the complement, theta mixes n(x)m and m(x)n. alpha is the phase of the
/// lambda_a eigenvectors; it never changes the assembled matrix.
struct SpectralParams {
  double lambda_a = 0.0;
  double lambda_b = 0.0;
  double lambda_c = 0.0;
  double lambda_d = 0.0;
  double lambda_e = 0.0;
  double alpha = 0.0;
  double phi = 0.0;
  double theta = 0.0;

  /// (lambda_c - lambda_d) cos(2 theta); zero for clone-swap symmetric
  /// tensors.
  double permutation_residual() const;
};

/// d^2 x d^2 two-clone density matrix; row (i*d + j), column (k*d + l) holds
/// r_{ij,kl} with i,k on clone 1 and j,l on clone 2.
class TwoCloneState {
 public:
  TwoCloneState(int dim, Eigen::MatrixXcd matrix);

  int dim() const { return dim_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  std::complex<double> element(int i, int j, int k, int l) const {
    return matrix_(i * dim_ + j, k * dim_ + l);
  }

 private:
  int dim_;
  Eigen::MatrixXcd matrix_;
};

enum class Clone { First, Second };

/// Reduced state of a single clone.
struct CloneMarginal {
  int dim = 0;
  Eigen::MatrixXcd matrix;
  /// Trace of the parent; the marginal is only a density matrix if this is 1.
  double parent_trace = 0.0;
  bool unit_trace = false;
};

enum class EigenLabel { A, B, C, D, E };

/// One eigenvector of the spectral decomposition. `weight` is the number of
/// times it enters the sum: the off-diagonal lambda_a vectors are stored once
/// per unordered pair (mu < nu) with squared norm 1/2, so they carry weight 2.
struct LabeledEigenvector {
  EigenLabel label;
  int mu = 0;
  int nu = 0;
  double weight = 1.0;
  Eigen::VectorXcd vector;
};

struct EigenFamilies {
  std::vector<LabeledEigenvector> vectors;

  /// Count per label, in A..E order.
  std::array<int, 5> multiplicities() const;
};

/// Table-I degeneracies (d(d-1)/2, 1, d-1, d-1, (d-1)(d-2)/2).
std::array<int, 5> spectral_multiplicities(int d);

/// The d^2 eigenvalues implied by s and the multiplicities, ascending.
std::vector<double> spectral_multiset(const SpectralParams& s, int d);

/// Non-negative, unit-trace parameters with lambda_c = lambda_d or theta on
/// pi/4 + k pi/2, so the tensor is clone-swap symmetric. lambda_e is zero at
/// d = 2, where that family is empty.
SpectralParams random_spectral(int d, Rng& rng);

/// Each kappa uniform in [-1, 1].
KappaParams random_kappa(Rng& rng);

/// The seven structures of KappaParams evaluated at n, as d^2 x d^2 matrices.
std::array<Eigen::MatrixXd, 7> kappa_structures(const RealState& n);

TwoCloneState rho_from_kappa(const KappaParams& kappa, const RealState& n);

/// Orthonormal eigenbasis of the covariant two-clone tensor for state n.
///
/// lambda_b:  cos(phi) n n - sin(phi)/sqrt(d-1) (n n - 1)
/// lambda_a:  e^{i alpha} [m^mu m^mu - sin(phi)/sqrt(d-1) n n
///                         + (1 - cos(phi))/(d-1) (n n - 1)]          (mu = nu)
///            e^{i alpha}/2 (m^mu m^nu + m^nu m^mu)                   (mu < nu)
/// lambda_c:  cos(theta) n m^mu + sin(theta) m^mu n
/// lambda_d: -sin(theta) n m^mu + cos(theta) m^mu n
/// lambda_e:  (m^mu m^nu - m^nu m^mu) / sqrt(2)                      (mu < nu)
///
/// The diagonal lambda_a vectors share the trace direction of the complement
/// with V_B; their n n component is fixed so the two stay orthogonal.
EigenFamilies table1_eigenvectors(const RealState& n,
                                  const ComplementFrame& frame, double alpha,
                                  double phi, double theta);

/// sum over families of lambda * weight * V V^dagger, with no validation.
TwoCloneState assemble_spectral(const SpectralParams& s, const RealState& n,
                                const ComplementFrame& frame);

/// As assemble_spectral, but throws std::invalid_argument if s breaks clone
/// symmetry ((lambda_c - lambda_d) cos 2theta != 0) or the frame belongs to a
/// different state.
TwoCloneState rho_from_spectral(const SpectralParams& s, const RealState& n,
                                const ComplementFrame& frame);

struct KappaFit {
  KappaParams kappa;
  /// max entry of |rho - rho_from_kappa(kappa, e0)|
  double residual = 0.0;
};

/// Reads the seven kappas off a covariant tensor evaluated at n = e0.
///
/// d >= 3 uses the probes r_{12,12}, r_{12,21}, r_{11,22}, r_{01,01},
/// r_{01,10}, r_{00,11}, r_{00,00}. At d = 2 the structures are linearly
/// dependent (two-dimensional kernel, never touching k7); the gauge k3 = 0,
/// k4 = k5 is imposed and r_{11,11} replaces the unavailable probes.
KappaFit fit_kappa_at_e0(const TwoCloneState& rho);

/// The unique (gauge-fixed at d = 2) kappa reproducing rho_from_spectral.
/// Throws std::runtime_error if the fit residual exceeds kEigTol.
KappaParams kappa_from_spectral(const SpectralParams& s, int d);

/// Partial trace keeping `which`. Non-unit parent trace is reported through
/// CloneMarginal::unit_trace rather than rejected.
CloneMarginal clone_marginal(const TwoCloneState& rho, Clone which);

/// n_i n_k sum_j r_{ij,kj}
double fidelity(const TwoCloneState& rho, const RealState& n);

/// lambda_a sin^2 phi + lambda_b cos^2 phi
///   + (lambda_c cos^2 theta + lambda_d sin^2 theta)(d-1)
double fidelity_spectral(const SpectralParams& s, int d);

/// F |n><n| + (1-F)/(d-1) (1 - |n><n|)
Eigen::MatrixXd shrunk_marginal(const RealState& n, double fidelity);

/// Vectorized product a (x) b with index i*d + j.
Eigen::VectorXd pair_vector(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace realclone
