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

#include "oracles.hpp"
#include "realclone/output_tensor.hpp"
#include "realclone/random.hpp"
#include "realclone/realspace.hpp"
#include "realclone/tolerances.hpp"

using namespace realclone;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXcd complexify(const Eigen::MatrixXd& m) {
  return m.cast<std::complex<double>>();
}

SpectralParams draw(int d, Rng& rng) { return random_spectral(d, rng); }

}  // namespace

TEST_SUITE("output_tensor") {
  TEST_CASE("kappa builder agrees with the written-out tensor") {
    Rng rng(1, "kappa-builder");
    for (int d = 2; d <= 5; ++d) {
      for (int t = 0; t < 10; ++t) {
        const KappaParams k = random_kappa(rng);
        const RealState n = random_state(d, rng);
        const Eigen::MatrixXd expected =
            oracle::covariant_matrix(k.values, n.amplitudes());
        CHECK(max_abs(rho_from_kappa(k, n).matrix() - complexify(expected)) <
              1e-14);
      }
    }
  }

  TEST_CASE("kappa special cases") {
    const int d = 3;
    const RealState n = random_state(d, 8);

    KappaParams mixed;
    mixed.k(1) = 1.0 / (d * d);
    CHECK(max_abs(rho_from_kappa(mixed, n).matrix() -
                  complexify(Eigen::MatrixXd::Identity(d * d, d * d) / (d * d))) <
          1e-15);

    KappaParams perfect;
    perfect.k(7) = 1.0;
    const Eigen::VectorXd nn = pair_vector(n.amplitudes(), n.amplitudes());
    CHECK(max_abs(rho_from_kappa(perfect, n).matrix() -
                  complexify(nn * nn.transpose())) < 1e-15);

    CHECK(max_abs(rho_from_kappa(KappaParams{}, n).matrix()) == 0.0);
  }

  TEST_CASE("two-clone matrix must be d^2 square") {
    CHECK_THROWS_AS(TwoCloneState(2, Eigen::MatrixXcd::Zero(3, 3)),
                    std::invalid_argument);
  }

  TEST_CASE("eigenvector family multiplicities") {
    CHECK(spectral_multiplicities(2) == std::array<int, 5>{1, 1, 1, 1, 0});
    CHECK(spectral_multiplicities(3) == std::array<int, 5>{3, 1, 2, 2, 1});
    CHECK(spectral_multiplicities(4) == std::array<int, 5>{6, 1, 3, 3, 3});
    for (int d = 2; d <= 8; ++d) {
      const RealState n = random_state(d, d);
      const EigenFamilies fam =
          table1_eigenvectors(n, complement_frame(n, 3), 0.3, 0.7, 0.2);
      CHECK(fam.multiplicities() == spectral_multiplicities(d));
      CHECK(fam.vectors.size() == static_cast<std::size_t>(d * d));
    }
  }

  TEST_CASE("at phi = 0 the B vector is the product n n") {
    const RealState n = random_state(4, 17);
    const EigenFamilies fam =
        table1_eigenvectors(n, complement_frame(n, 1), 0.0, 0.0, 0.0);
    const Eigen::VectorXd nn = pair_vector(n.amplitudes(), n.amplitudes());
    int found = 0;
    for (const auto& v : fam.vectors) {
      if (v.label != EigenLabel::B) continue;
      ++found;
      CHECK((v.vector - nn.cast<std::complex<double>>()).cwiseAbs().maxCoeff() <
            1e-15);
    }
    CHECK(found == 1);
  }

  TEST_CASE("Gram matrix of the eigenvector family") {
    Rng rng(2, "gram");
    for (int d = 2; d <= 6; ++d) {
      for (int t = 0; t < 5; ++t) {
        const RealState n = random_state(d, rng);
        const EigenFamilies fam = table1_eigenvectors(
            n, complement_frame(n, rng()), rng.uniform(-kPi, kPi),
            rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi));
        const auto count = static_cast<Eigen::Index>(fam.vectors.size());
        Eigen::MatrixXcd basis(d * d, count);
        Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(count, count);
        for (Eigen::Index a = 0; a < count; ++a) {
          basis.col(a) = fam.vectors[a].vector;
          const auto& v = fam.vectors[a];
          // Off-diagonal symmetric vectors are normalized to 1/2.
          const bool half = v.label == EigenLabel::A && v.mu != v.nu;
          expected(a, a) = half ? 0.5 : 1.0;
        }
        CHECK(max_abs(basis.adjoint() * basis - expected) < kEigTol);
      }
    }
  }

  TEST_CASE("each family vector is an eigenvector with its eigenvalue") {
    Rng rng(3, "eigen-equation");
    for (int d = 2; d <= 5; ++d) {
      const SpectralParams s = draw(d, rng);
      const RealState n = random_state(d, rng);
      const ComplementFrame frame = complement_frame(n, rng());
      const Eigen::MatrixXcd rho = rho_from_spectral(s, n, frame).matrix();
      const std::array<double, 5> lambdas{s.lambda_a, s.lambda_b, s.lambda_c,
                                          s.lambda_d, s.lambda_e};
      for (const auto& v :
           table1_eigenvectors(n, frame, s.alpha, s.phi, s.theta).vectors) {
        const double lambda = lambdas[static_cast<int>(v.label)];
        CHECK((rho * v.vector - lambda * v.vector).cwiseAbs().maxCoeff() <
              kEigTol);
      }
    }
  }

  TEST_CASE("spectral tensor eigenvalues reproduce the multiset") {
    Rng rng(4, "spectral-eigs");
    for (int d = 2; d <= 5; ++d) {
      for (int t = 0; t < 20; ++t) {
        const SpectralParams s = draw(d, rng);
        const RealState n = random_state(d, rng);
        const auto eig = oracle::sorted_eigenvalues(
            rho_from_spectral(s, n, complement_frame(n, rng())).matrix());
        CHECK(oracle::max_abs_difference(eig, spectral_multiset(s, d)) <
              kEigTol);
      }
    }
  }

  TEST_CASE("spectral tensor is real and Hermitian for any phase alpha") {
    Rng rng(5, "hermitian");
    const SpectralParams s = draw(4, rng);
    const RealState n = random_state(4, rng);
    const Eigen::MatrixXcd rho =
        rho_from_spectral(s, n, complement_frame(n, 1)).matrix();
    CHECK(max_abs(rho - rho.adjoint()) < 1e-14);
    CHECK(rho.imag().cwiseAbs().maxCoeff() < 1e-14);
  }

  TEST_CASE("spectral tensor does not depend on the complement frame") {
    Rng rng(6, "frame-independence");
    for (int d = 2; d <= 6; ++d) {
      const SpectralParams s = draw(d, rng);
      const RealState n = random_state(d, rng);
      const Eigen::MatrixXcd a =
          rho_from_spectral(s, n, complement_frame(n, 10)).matrix();
      const Eigen::MatrixXcd b =
          rho_from_spectral(s, n, complement_frame(n, 20)).matrix();
      const Eigen::MatrixXcd c =
          rho_from_spectral(s, n, canonical_complement_frame(n)).matrix();
      CHECK(max_abs(a - b) < kEigTol);
      CHECK(max_abs(a - c) < kEigTol);
    }
  }

  TEST_CASE("perfect-cloning direction") {
    SpectralParams s;
    s.lambda_b = 1.0;
    for (int d = 2; d <= 4; ++d) {
      const RealState n = random_state(d, 31);
      const Eigen::VectorXd nn = pair_vector(n.amplitudes(), n.amplitudes());
      CHECK(max_abs(rho_from_spectral(s, n, complement_frame(n, 3)).matrix() -
                    complexify(nn * nn.transpose())) < kEigTol);
      const KappaParams k = kappa_from_spectral(s, d);
      for (int a = 1; a <= 6; ++a) CHECK(std::abs(k.k(a)) < kEigTol);
      CHECK(k.k(7) == doctest::Approx(1.0).epsilon(kEigTol));
    }
  }

  TEST_CASE("clone-symmetry precondition") {
    SpectralParams s;
    s.lambda_c = 0.3;
    s.lambda_d = 0.1;
    s.theta = 0.2;
    const RealState n = RealState::basis(3, 0);
    const ComplementFrame frame = canonical_complement_frame(n);
    CHECK_THROWS_AS(rho_from_spectral(s, n, frame), std::invalid_argument);
    CHECK_NOTHROW(assemble_spectral(s, n, frame));
    s.theta = kPi / 4.0;
    CHECK_NOTHROW(rho_from_spectral(s, n, frame));
  }

  TEST_CASE("frame must belong to the state") {
    const RealState n = RealState::basis(3, 0);
    const ComplementFrame other = canonical_complement_frame(RealState::basis(3, 1));
    CHECK_THROWS_AS(rho_from_spectral(SpectralParams{}, n, other),
                    std::invalid_argument);
  }

  TEST_CASE("kappa round trip through the spectral form") {
    Rng rng(7, "round-trip");
    for (int d = 2; d <= 5; ++d) {
      for (int t = 0; t < 20; ++t) {
        const SpectralParams s = draw(d, rng);
        const RealState n = random_state(d, rng);
        const KappaParams k = kappa_from_spectral(s, d);
        CHECK(max_abs(rho_from_kappa(k, n).matrix() -
                      rho_from_spectral(s, n, complement_frame(n, rng()))
                          .matrix()) < kEigTol);
      }
    }
  }

  TEST_CASE("equal eigenvalues give an n-independent tensor") {
    for (int d = 2; d <= 5; ++d) {
      SpectralParams s;
      s.lambda_a = s.lambda_b = s.lambda_c = s.lambda_d = s.lambda_e =
          1.0 / (d * d);
      s.alpha = 0.4;
      s.phi = 1.1;
      s.theta = 0.3;
      const KappaParams k = kappa_from_spectral(s, d);
      for (int a = 4; a <= 7; ++a) CHECK(std::abs(k.k(a)) < kEigTol);
    }
  }

  TEST_CASE("kappa fit inverts the builder") {
    Rng rng(8, "fit");
    for (int d = 3; d <= 5; ++d) {
      const KappaParams k = random_kappa(rng);
      const KappaFit fit = fit_kappa_at_e0(rho_from_kappa(k, RealState::basis(d, 0)));
      for (int a = 0; a < 7; ++a) {
        CHECK(fit.kappa.values[a] == doctest::Approx(k.values[a]).epsilon(1e-12));
      }
      CHECK(fit.residual < 1e-13);
    }
    // At d = 2 the structures are dependent; the fit reproduces the matrix.
    const KappaParams k = random_kappa(rng);
    const RealState e0 = RealState::basis(2, 0);
    const KappaFit fit = fit_kappa_at_e0(rho_from_kappa(k, e0));
    CHECK(fit.residual < 1e-13);
    CHECK(std::abs(fit.kappa.k(3)) < 1e-15);
    CHECK(fit.kappa.k(4) == doctest::Approx(fit.kappa.k(5)));
    CHECK(fit.kappa.k(7) == doctest::Approx(k.k(7)).epsilon(1e-12));
  }

  TEST_CASE("two-dimensional structures span five dimensions") {
    const auto structures = kappa_structures(random_state(2, 3));
    Eigen::MatrixXd stacked(16, 7);
    for (int a = 0; a < 7; ++a) {
      stacked.col(a) = Eigen::Map<const Eigen::VectorXd>(structures[a].data(), 16);
    }
    CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(stacked).rank() == 5);
    const auto three = kappa_structures(random_state(3, 3));
    Eigen::MatrixXd stacked3(81, 7);
    for (int a = 0; a < 7; ++a) {
      stacked3.col(a) = Eigen::Map<const Eigen::VectorXd>(three[a].data(), 81);
    }
    CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(stacked3).rank() == 7);
  }

  TEST_CASE("covariance of kappa tensors") {
    Rng rng(9, "covariance");
    for (int d = 2; d <= 5; ++d) {
      for (int t = 0; t < 20; ++t) {
        const KappaParams k = random_kappa(rng);
        const RealState n = random_state(d, rng);
        const Rotation r = random_rotation(d, rng);
        const Eigen::MatrixXcd lhs = rho_from_kappa(k, rotate_state(r, n)).matrix();
        const Eigen::MatrixXcd rhs =
            oracle::conjugate_pair(r.matrix(), rho_from_kappa(k, n).matrix());
        CHECK(max_abs(lhs - rhs) < kEigTol);
      }
    }
  }

  TEST_CASE("kappa tensors are symmetric under clone exchange") {
    Rng rng(10, "swap");
    for (int d = 2; d <= 4; ++d) {
      const TwoCloneState rho = rho_from_kappa(random_kappa(rng), random_state(d, rng));
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l)
              CHECK(std::abs(rho.element(i, j, k, l) - rho.element(j, i, l, k)) <
                    1e-15);
    }
  }

  TEST_CASE("clone marginals") {
    const int d = 3;
    const RealState n = random_state(d, 12);
    KappaParams mixed;
    mixed.k(1) = 1.0 / (d * d);
    const CloneMarginal m = clone_marginal(rho_from_kappa(mixed, n), Clone::First);
    CHECK(max_abs(m.matrix - complexify(Eigen::MatrixXd::Identity(d, d) / d)) <
          1e-15);
    CHECK(m.unit_trace);
    CHECK(fidelity(rho_from_kappa(mixed, n), n) ==
          doctest::Approx(1.0 / d).epsilon(1e-14));

    KappaParams perfect;
    perfect.k(7) = 1.0;
    const TwoCloneState p = rho_from_kappa(perfect, n);
    CHECK(max_abs(clone_marginal(p, Clone::Second).matrix -
                  complexify(n.amplitudes() * n.amplitudes().transpose())) <
          1e-15);
    CHECK(fidelity(p, n) == doctest::Approx(1.0).epsilon(1e-14));

    KappaParams loose;
    loose.k(1) = 1.0;
    CHECK_FALSE(clone_marginal(rho_from_kappa(loose, n), Clone::First).unit_trace);
  }

  TEST_CASE("marginals of covariant tensors have the shrunk-state form") {
    Rng rng(11, "shrunk");
    for (int d = 2; d <= 5; ++d) {
      for (int t = 0; t < 20; ++t) {
        const SpectralParams s = draw(d, rng);
        const RealState n = random_state(d, rng);
        const Eigen::MatrixXcd rho =
            rho_from_spectral(s, n, complement_frame(n, rng())).matrix();
        const double f = oracle::fidelity(rho, n.amplitudes());
        const Eigen::MatrixXcd expected =
            complexify(oracle::shrunk_state(n.amplitudes(), f));
        const TwoCloneState state(d, rho);
        CHECK(max_abs(clone_marginal(state, Clone::First).matrix - expected) < kEigTol);
        CHECK(max_abs(clone_marginal(state, Clone::Second).matrix - expected) < kEigTol);
        CHECK(max_abs(oracle::first_marginal(rho, d) - expected) < kEigTol);
        CHECK(max_abs(oracle::second_marginal(rho, d) - expected) < kEigTol);
        CHECK(max_abs(complexify(shrunk_marginal(n, f)) - expected) < 1e-14);
      }
    }
  }

  TEST_CASE("spectral fidelity formula matches the direct contraction") {
    Rng rng(12, "fidelity");
    for (int d = 2; d <= 5; ++d) {
      for (int t = 0; t < 20; ++t) {
        const SpectralParams s = draw(d, rng);
        const RealState n = random_state(d, rng);
        const TwoCloneState rho = rho_from_spectral(s, n, complement_frame(n, rng()));
        CHECK(fidelity(rho, n) ==
              doctest::Approx(fidelity_spectral(s, d)).epsilon(kEigTol));
        CHECK(oracle::fidelity(rho.matrix(), n.amplitudes()) ==
              doctest::Approx(fidelity_spectral(s, d)).epsilon(kEigTol));
      }
    }
  }

  TEST_CASE("spectral fidelity special values") {
    for (int d = 2; d <= 6; ++d) {
      SpectralParams b;
      b.lambda_b = 1.0;
      CHECK(fidelity_spectral(b, d) == doctest::Approx(1.0));
      SpectralParams c;
      c.lambda_c = 1.0 / (d - 1);
      CHECK(fidelity_spectral(c, d) == doctest::Approx(1.0));
    }
  }

  TEST_CASE("fidelity is the same for every input state") {
    Rng rng(13, "state-independence");
    for (int d = 2; d <= 5; ++d) {
      const KappaParams k = random_kappa(rng);
      const RealState first = random_state(d, rng);
      const double f0 = fidelity(rho_from_kappa(k, first), first);
      for (int t = 0; t < 10; ++t) {
        const RealState n = random_state(d, rng);
        CHECK(fidelity(rho_from_kappa(k, n), n) == doctest::Approx(f0).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("random spectral draws are physical and clone-symmetric") {
    Rng rng(14, "draws");
    for (int d = 2; d <= 6; ++d) {
      for (int t = 0; t < 50; ++t) {
        const SpectralParams s = draw(d, rng);
        const auto m = spectral_multiplicities(d);
        const double trace = m[0] * s.lambda_a + m[1] * s.lambda_b +
                             m[2] * s.lambda_c + m[3] * s.lambda_d +
                             m[4] * s.lambda_e;
        CHECK(trace == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(s.permutation_residual()) < 1e-15);
        CHECK(s.lambda_a >= 0.0);
        CHECK(s.lambda_e >= 0.0);
        if (d == 2) CHECK(s.lambda_e == 0.0);
      }
    }
  }
}
