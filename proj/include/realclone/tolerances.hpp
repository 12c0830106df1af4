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

namespace realclone {

/// Closed-form and exact-construction checks.
inline constexpr double kAnalyticTol = 1e-9;
/// Anything that goes through a dense eigensolve or linear solve.
inline constexpr double kEigTol = 1e-8;
/// Minimum eigenvalue accepted as positive semidefinite.
inline constexpr double kPsdTol = -1e-10;
/// Same, when eigenvalues are read directly from spectral parameters.
inline constexpr double kSpectralPsdTol = -1e-12;
/// Feasibility of numerically optimized parameters.
inline constexpr double kOptTol = 1e-6;

/// Upper bound on d for anything that materializes a d^2 x d^2 matrix.
/// Defaults to 32; overridden by the REALCLONE_MAX_DIM environment variable.
int max_dimension();

/// Throws std::invalid_argument unless 2 <= d <= max_dimension().
void require_matrix_dimension(int d);

/// Throws std::invalid_argument unless d >= 2.
void require_dimension(int d);

}  // namespace realclone
