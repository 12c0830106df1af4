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

#include "realclone/bound.hpp"

#include <cmath>

#include "realclone/tolerances.hpp"

namespace realclone {
namespace {

struct BracketWeights {
  double s;        // cos^2 a sin^2 2p
  double cos2;     // cos^2 p
  double t_a;
  double t_b;
};

BracketWeights bracket_weights(int d, double alpha, double phi) {
  const double root = std::sqrt(static_cast<double>(d - 1));
  const double ca2 = std::cos(alpha) * std::cos(alpha);
  const double s2p = std::sin(2.0 * phi);
  BracketWeights w;
  w.s = ca2 * s2p * s2p;
  w.cos2 = std::cos(phi) * std::cos(phi);
  w.t_a = ca2 * ((d - 2.0) / (d - 1.0) * s2p * s2p +
                 std::sin(4.0 * phi) / root) +
          1.0;
  const double tb = std::cos(phi) - std::sin(phi) / root;
  w.t_b = tb * tb;
  return w;
}

}  // namespace

std::string_view to_string(Family family) {
  return family == Family::Real ? "real" : "universal";
}

std::string_view to_string(CaseLabel label) {
  return label == CaseLabel::A ? "a" : "b";
}

BoundResult analytic_bound_real(int d) {
  require_dimension(d);
  const double root = std::sqrt(static_cast<double>(d * d + 4 * d + 20));
  BoundResult out;
  out.d = d;
  out.family = Family::Real;
  out.f_max = 0.5 + (root - d + 2.0) / (4.0 * (d + 2.0));
  out.optimal_phi =
      std::atan((d + 4.0 - root) / (2.0 * std::sqrt(d - 1.0)));
  return out;
}

BoundResult analytic_bound_universal(int d) {
  require_dimension(d);
  BoundResult out;
  out.d = d;
  out.family = Family::Universal;
  out.f_max = 0.5 + 1.0 / (d + 1.0);
  return out;
}

BoundResult analytic_bound(int d, Family family) {
  return family == Family::Real ? analytic_bound_real(d)
                                : analytic_bound_universal(d);
}

std::array<double, 3> case_a_candidates(int d, double alpha, double phi) {
  require_dimension(d);
  const BracketWeights w = bracket_weights(d, alpha, phi);
  const double q = (d - 1.0) / 4.0;
  return {(w.s + q * w.t_a) / ((d - 1.0) / 2.0 * (d + w.t_a)),
          (w.cos2 + q * w.t_b) / (1.0 + (d - 1.0) / 2.0 * w.t_b), 0.5};
}

std::array<double, 2> case_b_candidates(int d, double alpha, double phi) {
  require_dimension(d);
  const BracketWeights w = bracket_weights(d, alpha, phi);
  const double h = (d - 1.0) / 2.0;
  return {(w.s + h * w.t_a) / (h * (d + 2.0 * w.t_a)),
          (w.cos2 + h * w.t_b) / (1.0 + (d - 1.0) * w.t_b)};
}

}  // namespace realclone
