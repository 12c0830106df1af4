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
#include <vector>

#include <Eigen/Dense>

namespace realclone {

class Rng;

/// A pure state of a qudit with real amplitudes, sum_i n_i^2 = 1.
class RealState {
 public:
  /// Throws std::invalid_argument if the length is < 2 or the vector is not
  /// unit-norm within kAnalyticTol.
  static RealState from_amplitudes(Eigen::VectorXd amplitudes);

  /// The computational basis state e_index.
  static RealState basis(int d, int index);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Eigen::VectorXd& amplitudes() const { return amplitudes_; }
  double operator[](int i) const { return amplitudes_[i]; }

 private:
  explicit RealState(Eigen::VectorXd amplitudes)
      : amplitudes_(std::move(amplitudes)) {}

  Eigen::VectorXd amplitudes_;
};

/// An element of SO(d).
class Rotation {
 public:
  /// Throws std::invalid_argument unless R R^T = I and det R = +1 within
  /// kAnalyticTol.
  static Rotation from_matrix(Eigen::MatrixXd matrix);
  static Rotation identity(int d);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

 private:
  explicit Rotation(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {}

  Eigen::MatrixXd matrix_;
};

/// d-1 orthonormal vectors m^mu spanning the complement of a state n.
class ComplementFrame {
 public:
  /// Throws std::invalid_argument if the vectors are not orthonormal or not
  /// orthogonal to base.
  ComplementFrame(RealState base, std::vector<Eigen::VectorXd> vectors);

  const RealState& base() const { return base_; }
  const std::vector<Eigen::VectorXd>& vectors() const { return vectors_; }
  int dim() const { return base_.dim(); }

  /// Applies the same rotation to n and every m^mu.
  ComplementFrame rotated(const Rotation& r) const;

 private:
  RealState base_;
  std::vector<Eigen::VectorXd> vectors_;
};

/// An orthonormal basis {n^mu} of R^d.
struct RealBasis {
  std::vector<RealState> states;

  int dim() const { return states.empty() ? 0 : states.front().dim(); }
};

RealState random_state(int d, std::uint64_t seed);
RealState random_state(int d, Rng& rng);

/// Gram-Schmidt of n followed by d-1 seeded Gaussian vectors.
ComplementFrame complement_frame(const RealState& n, std::uint64_t seed);
/// Gram-Schmidt of n followed by the canonical basis vectors.
ComplementFrame canonical_complement_frame(const RealState& n);

/// Haar-distributed element of SO(d).
Rotation random_rotation(int d, std::uint64_t seed);
Rotation random_rotation(int d, Rng& rng);

RealState rotate_state(const Rotation& r, const RealState& n);

/// Columns of a random rotation.
RealBasis random_basis(int d, std::uint64_t seed);
RealBasis canonical_basis(int d);

/// max_{ij} |sum_mu n_i^mu n_j^mu - delta_ij|
double completion_residual(const RealBasis& basis);

/// max entry of |R R^T - I| and |det R - 1|.
double orthogonality_residual(const Eigen::MatrixXd& r);

}  // namespace realclone
