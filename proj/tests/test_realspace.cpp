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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "realclone/random.hpp"
#include "realclone/realspace.hpp"
#include "realclone/tolerances.hpp"

using namespace realclone;

namespace {

double frame_defect(const ComplementFrame& frame) {
  const auto& m = frame.vectors();
  const Eigen::VectorXd& n = frame.base().amplitudes();
  double worst = 0.0;
  for (std::size_t a = 0; a < m.size(); ++a) {
    worst = std::max(worst, std::abs(m[a].dot(n)));
    for (std::size_t b = 0; b < m.size(); ++b) {
      worst = std::max(worst, std::abs(m[a].dot(m[b]) - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

}  // namespace

TEST_SUITE("realspace") {
  TEST_CASE("random states are unit vectors and reproducible") {
    const RealState n = random_state(2, 11);
    CHECK(n.amplitudes().squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
    const RealState a = random_state(5, 42);
    const RealState b = random_state(5, 42);
    CHECK((a.amplitudes() - b.amplitudes()).norm() == 0.0);
    CHECK((random_state(5, 43).amplitudes() - a.amplitudes()).norm() > 1e-3);
  }

  TEST_CASE("dimension below two is rejected") {
    CHECK_THROWS_AS(random_state(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(random_rotation(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(RealState::basis(1, 0), std::invalid_argument);
  }

  TEST_CASE("states must be unit norm") {
    CHECK_THROWS_AS(RealState::from_amplitudes(Eigen::Vector2d(1.0, 1.0)),
                    std::invalid_argument);
    CHECK_NOTHROW(RealState::from_amplitudes(Eigen::Vector2d(0.6, 0.8)));
  }

  TEST_CASE("complement of e0 in two dimensions is +-e1") {
    const ComplementFrame frame = complement_frame(RealState::basis(2, 0), 9);
    REQUIRE(frame.vectors().size() == 1);
    CHECK(std::abs(frame.vectors()[0][0]) < 1e-12);
    CHECK(std::abs(std::abs(frame.vectors()[0][1]) - 1.0) < 1e-12);
  }

  TEST_CASE("complement of e0 in three dimensions spans the e1-e2 plane") {
    const ComplementFrame frame = complement_frame(RealState::basis(3, 0), 9);
    REQUIRE(frame.vectors().size() == 2);
    for (const auto& m : frame.vectors()) CHECK(std::abs(m[0]) < 1e-12);
    CHECK(frame_defect(frame) < kAnalyticTol);
  }

  TEST_CASE("frames are orthonormal and orthogonal to the base") {
    for (int d : {2, 3, 5, 8, 16}) {
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const RealState n = random_state(d, seed);
        CHECK(frame_defect(complement_frame(n, seed + 100)) < kAnalyticTol);
        CHECK(frame_defect(canonical_complement_frame(n)) < kAnalyticTol);
      }
    }
  }

  TEST_CASE("invalid frames are rejected") {
    const RealState n = RealState::basis(3, 0);
    std::vector<Eigen::VectorXd> bad = {Eigen::Vector3d(1, 0, 0),
                                        Eigen::Vector3d(0, 1, 0)};
    CHECK_THROWS_AS(ComplementFrame(n, bad), std::invalid_argument);
    std::vector<Eigen::VectorXd> short_frame = {Eigen::Vector3d(0, 1, 0)};
    CHECK_THROWS_AS(ComplementFrame(n, short_frame), std::invalid_argument);
  }

  TEST_CASE("random rotations lie in SO(d) for every supported dimension") {
    for (int d = 2; d <= 32; ++d) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Rotation r = random_rotation(d, seed);
        const Eigen::MatrixXd& m = r.matrix();
        CHECK((m * m.transpose() - Eigen::MatrixXd::Identity(d, d))
                  .cwiseAbs()
                  .maxCoeff() < kAnalyticTol);
        CHECK(std::abs(m.determinant() - 1.0) < kAnalyticTol);
      }
    }
  }

  TEST_CASE("rotations are reproducible") {
    CHECK((random_rotation(2, 5).matrix() - random_rotation(2, 5).matrix())
              .norm() == 0.0);
  }

  TEST_CASE("Haar mean of R00 vanishes") {
    Rng rng(2024, "haar-mean");
    double sum = 0.0;
    const int samples = 10000;
    for (int i = 0; i < samples; ++i) sum += random_rotation(3, rng).matrix()(0, 0);
    CHECK(std::abs(sum / samples) < 0.05);
  }

  TEST_CASE("Haar second moment of R00 is 1/d") {
    // E[R00^2] = 1/d for the Haar measure on SO(d), d >= 2.
    for (int d : {2, 4}) {
      Rng rng(99, "haar-second-moment");
      double sum = 0.0;
      const int samples = 10000;
      for (int i = 0; i < samples; ++i) {
        const double r = random_rotation(d, rng).matrix()(0, 0);
        sum += r * r;
      }
      CHECK(sum / samples == doctest::Approx(1.0 / d).epsilon(0.05));
    }
  }

  TEST_CASE("non-rotations are rejected") {
    Eigen::Matrix2d reflection;
    reflection << 1, 0, 0, -1;
    CHECK_THROWS_AS(Rotation::from_matrix(reflection), std::invalid_argument);
    Eigen::Matrix2d scaled = 2.0 * Eigen::Matrix2d::Identity();
    CHECK_THROWS_AS(Rotation::from_matrix(scaled), std::invalid_argument);
  }

  TEST_CASE("rotate_state") {
    const RealState n = random_state(4, 1);
    CHECK((rotate_state(Rotation::identity(4), n).amplitudes() - n.amplitudes())
              .norm() < 1e-15);

    Eigen::Matrix2d quarter;
    quarter << 0, -1, 1, 0;
    const RealState e1 =
        rotate_state(Rotation::from_matrix(quarter), RealState::basis(2, 0));
    CHECK(std::abs(e1[0]) < 1e-15);
    CHECK(std::abs(std::abs(e1[1]) - 1.0) < 1e-15);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const RealState m =
          rotate_state(random_rotation(6, seed), random_state(6, seed + 1));
      CHECK(m.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("rotated frames stay valid for the rotated state") {
    for (int d : {2, 3, 6}) {
      const RealState n = random_state(d, 4);
      const Rotation r = random_rotation(d, 5);
      const ComplementFrame moved = complement_frame(n, 6).rotated(r);
      CHECK(frame_defect(moved) < kAnalyticTol);
      CHECK((moved.base().amplitudes() - r.matrix() * n.amplitudes()).norm() <
            1e-12);
    }
  }

  TEST_CASE("canonical and random bases satisfy the completion relation") {
    for (int d : {2, 3, 5, 8}) {
      CHECK(completion_residual(canonical_basis(d)) < 1e-15);
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const RealBasis basis = random_basis(d, seed);
        REQUIRE(basis.states.size() == static_cast<std::size_t>(d));
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d);
        for (const auto& s : basis.states) {
          sum += s.amplitudes() * s.amplitudes().transpose();
        }
        CHECK((sum - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() <
              kAnalyticTol);
      }
    }
  }

  TEST_CASE("different seeds give different bases with the same mixture") {
    const RealBasis a = random_basis(3, 1);
    const RealBasis b = random_basis(3, 2);
    CHECK((a.states[0].amplitudes() - b.states[0].amplitudes()).norm() > 1e-3);
    CHECK(completion_residual(a) < kAnalyticTol);
    CHECK(completion_residual(b) < kAnalyticTol);
  }

  TEST_CASE("maximum dimension follows the environment") {
    CHECK(max_dimension() >= 2);
    CHECK_THROWS_AS(require_matrix_dimension(max_dimension() + 1),
                    std::invalid_argument);
    CHECK_NOTHROW(require_matrix_dimension(2));
  }
}
