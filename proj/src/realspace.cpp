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

#include "realclone/realspace.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "realclone/random.hpp"
#include "realclone/tolerances.hpp"

namespace realclone {
namespace {

void require_same_dim(int a, int b) {
  if (a != b) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a) +
                                " vs " + std::to_string(b));
  }
}

// Orthonormalizes `fill` against n and against each other, keeping the
// first d-1 vectors that survive. Runs Gram-Schmidt twice per vector.
std::vector<Eigen::VectorXd> gram_schmidt_complement(
    const RealState& n, const std::vector<Eigen::VectorXd>& fill) {
  const int d = n.dim();
  std::vector<Eigen::VectorXd> accepted;
  accepted.reserve(d);
  accepted.push_back(n.amplitudes());
  for (const auto& candidate : fill) {
    if (static_cast<int>(accepted.size()) == d) break;
    Eigen::VectorXd v = candidate;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : accepted) v -= u.dot(v) * u;
    }
    const double norm = v.norm();
    if (norm < 1e-6) continue;
    accepted.push_back(v / norm);
  }
  if (static_cast<int>(accepted.size()) != d) {
    throw std::runtime_error("complement frame: degenerate fill vectors");
  }
  accepted.erase(accepted.begin());
  return accepted;
}

}  // namespace

RealState RealState::from_amplitudes(Eigen::VectorXd amplitudes) {
  require_dimension(static_cast<int>(amplitudes.size()));
  if (std::abs(amplitudes.squaredNorm() - 1.0) > kAnalyticTol) {
    throw std::invalid_argument("state is not unit-norm (norm^2 = " +
                                std::to_string(amplitudes.squaredNorm()) + ")");
  }
  return RealState(std::move(amplitudes));
}

RealState RealState::basis(int d, int index) {
  require_dimension(d);
  if (index < 0 || index >= d) {
    throw std::out_of_range("basis index out of range");
  }
  return RealState(Eigen::VectorXd::Unit(d, index));
}

Rotation Rotation::from_matrix(Eigen::MatrixXd matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw std::invalid_argument("rotation matrix must be square");
  }
  require_dimension(static_cast<int>(matrix.rows()));
  if (orthogonality_residual(matrix) > kAnalyticTol) {
    throw std::invalid_argument("matrix is not in SO(d)");
  }
  return Rotation(std::move(matrix));
}

Rotation Rotation::identity(int d) {
  require_dimension(d);
  return Rotation(Eigen::MatrixXd::Identity(d, d));
}

ComplementFrame::ComplementFrame(RealState base,
                                 std::vector<Eigen::VectorXd> vectors)
    : base_(std::move(base)), vectors_(std::move(vectors)) {
  const int d = base_.dim();
  if (static_cast<int>(vectors_.size()) != d - 1) {
    throw std::invalid_argument("complement frame needs d-1 vectors");
  }
  for (std::size_t a = 0; a < vectors_.size(); ++a) {
    require_same_dim(d, static_cast<int>(vectors_[a].size()));
    if (std::abs(vectors_[a].dot(base_.amplitudes())) > kAnalyticTol) {
      throw std::invalid_argument("frame vector not orthogonal to the state");
    }
    for (std::size_t b = a; b < vectors_.size(); ++b) {
      const double expected = a == b ? 1.0 : 0.0;
      if (std::abs(vectors_[a].dot(vectors_[b]) - expected) > kAnalyticTol) {
        throw std::invalid_argument("frame vectors not orthonormal");
      }
    }
  }
}

ComplementFrame ComplementFrame::rotated(const Rotation& r) const {
  std::vector<Eigen::VectorXd> out;
  out.reserve(vectors_.size());
  for (const auto& m : vectors_) out.push_back(r.matrix() * m);
  return ComplementFrame(rotate_state(r, base_), std::move(out));
}

RealState random_state(int d, Rng& rng) {
  require_dimension(d);
  Eigen::VectorXd v(d);
  double norm = 0.0;
  while (norm < 1e-8) {
    for (int i = 0; i < d; ++i) v[i] = rng.normal();
    norm = v.norm();
  }
  return RealState::from_amplitudes(v / norm);
}

RealState random_state(int d, std::uint64_t seed) {
  Rng rng(seed, "random_state");
  return random_state(d, rng);
}

ComplementFrame complement_frame(const RealState& n, std::uint64_t seed) {
  const int d = n.dim();
  Rng rng(seed, "complement_frame");
  std::vector<Eigen::VectorXd> fill;
  // Extra candidates only matter on the measure-zero degenerate draws.
  for (int k = 0; k < d + 4; ++k) {
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) v[i] = rng.normal();
    fill.push_back(std::move(v));
  }
  return ComplementFrame(n, gram_schmidt_complement(n, fill));
}

ComplementFrame canonical_complement_frame(const RealState& n) {
  const int d = n.dim();
  std::vector<Eigen::VectorXd> fill;
  for (int k = 0; k < d; ++k) fill.push_back(Eigen::VectorXd::Unit(d, k));
  return ComplementFrame(n, gram_schmidt_complement(n, fill));
}

Rotation random_rotation(int d, Rng& rng) {
  require_dimension(d);
  Eigen::MatrixXd g(d, d);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) g(r, c) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd& packed = qr.matrixQR();
  // Positive diagonal in the triangular factor makes Q Haar on O(d).
  for (int c = 0; c < d; ++c) {
    if (packed(c, c) < 0.0) q.col(c) *= -1.0;
  }
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return Rotation::from_matrix(std::move(q));
}

Rotation random_rotation(int d, std::uint64_t seed) {
  Rng rng(seed, "random_rotation");
  return random_rotation(d, rng);
}

RealState rotate_state(const Rotation& r, const RealState& n) {
  require_same_dim(r.dim(), n.dim());
  Eigen::VectorXd out = r.matrix() * n.amplitudes();
  // Renormalize away rounding so long rotation chains stay valid states.
  out /= out.norm();
  return RealState::from_amplitudes(std::move(out));
}

RealBasis random_basis(int d, std::uint64_t seed) {
  Rng rng(seed, "random_basis");
  const Rotation r = random_rotation(d, rng);
  RealBasis basis;
  basis.states.reserve(d);
  for (int c = 0; c < d; ++c) {
    basis.states.push_back(RealState::from_amplitudes(r.matrix().col(c)));
  }
  return basis;
}

RealBasis canonical_basis(int d) {
  require_dimension(d);
  RealBasis basis;
  for (int k = 0; k < d; ++k) basis.states.push_back(RealState::basis(d, k));
  return basis;
}

double completion_residual(const RealBasis& basis) {
  const int d = basis.dim();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d);
  for (const auto& s : basis.states) {
    sum += s.amplitudes() * s.amplitudes().transpose();
  }
  return (sum - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
}

double orthogonality_residual(const Eigen::MatrixXd& r) {
  const auto d = r.rows();
  const double ortho =
      (r * r.transpose() - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  return std::max(ortho, std::abs(r.determinant() - 1.0));
}

}  // namespace realclone
