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

#include "realclone/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace realclone {
namespace {

constexpr double kInfeasible = std::numeric_limits<double>::infinity();

}  // namespace

NelderMeadResult nelder_mead_maximize(
    const std::function<double(const Eigen::VectorXd&)>& objective,
    const Eigen::VectorXd& start, const NelderMeadOptions& options) {
  const auto dim = start.size();
  int evaluations = 0;
  // Minimize the negated objective; infeasible maps to +inf.
  auto cost = [&](const Eigen::VectorXd& x) {
    ++evaluations;
    const double v = objective(x);
    return std::isfinite(v) ? -v : kInfeasible;
  };

  std::vector<Eigen::VectorXd> simplex;
  std::vector<double> costs;
  simplex.push_back(start);
  costs.push_back(cost(start));
  if (!std::isfinite(costs.front())) {
    throw std::invalid_argument("nelder_mead: start point is infeasible");
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    // Try +step, -step, then shrink until the vertex is feasible.
    double step = options.initial_step;
    Eigen::VectorXd vertex = start;
    double c = kInfeasible;
    for (int attempt = 0; attempt < 40 && !std::isfinite(c); ++attempt) {
      vertex = start;
      vertex[i] += (attempt % 2 == 0 ? step : -step);
      c = cost(vertex);
      if (attempt % 2 == 1) step *= 0.5;
    }
    simplex.push_back(vertex);
    costs.push_back(c);
  }

  std::vector<std::size_t> order(simplex.size());
  bool converged = false;
  while (evaluations < options.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];

    double diameter = 0.0;
    for (const auto& v : simplex) {
      diameter = std::max(diameter, (v - simplex[best]).cwiseAbs().maxCoeff());
    }
    if (std::isfinite(costs[worst]) &&
        costs[worst] - costs[best] <= options.f_tolerance &&
        diameter <= options.x_tolerance) {
      converged = true;
      break;
    }
    if (diameter <= 1e-3 * options.x_tolerance) {
      converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (std::size_t k = 0; k < simplex.size(); ++k) {
      if (k != worst) centroid += simplex[k];
    }
    centroid /= static_cast<double>(dim);

    const Eigen::VectorXd reflected = centroid + (centroid - simplex[worst]);
    const double c_reflected = cost(reflected);
    if (c_reflected < costs[best]) {
      const Eigen::VectorXd expanded =
          centroid + 2.0 * (centroid - simplex[worst]);
      const double c_expanded = cost(expanded);
      if (c_expanded < c_reflected) {
        simplex[worst] = expanded;
        costs[worst] = c_expanded;
      } else {
        simplex[worst] = reflected;
        costs[worst] = c_reflected;
      }
      continue;
    }
    if (c_reflected < costs[second_worst]) {
      simplex[worst] = reflected;
      costs[worst] = c_reflected;
      continue;
    }
    const bool outside = c_reflected < costs[worst];
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                : Eigen::VectorXd(centroid + 0.5 * (simplex[worst] - centroid));
    const double c_contracted = cost(contracted);
    if (c_contracted < std::min(c_reflected, costs[worst])) {
      simplex[worst] = contracted;
      costs[worst] = c_contracted;
      continue;
    }
    for (std::size_t k = 0; k < simplex.size(); ++k) {
      if (k == best) continue;
      simplex[k] = simplex[best] + 0.5 * (simplex[k] - simplex[best]);
      costs[k] = cost(simplex[k]);
    }
  }

  const auto best_it = std::min_element(costs.begin(), costs.end());
  const auto best_index = static_cast<std::size_t>(best_it - costs.begin());
  return {simplex[best_index], -costs[best_index], evaluations, converged};
}

}  // namespace realclone
