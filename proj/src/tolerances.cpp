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

#include "realclone/tolerances.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace realclone {

int max_dimension() {
  if (const char* env = std::getenv("REALCLONE_MAX_DIM")) {
    try {
      int value = std::stoi(env);
      if (value >= 2) return value;
    } catch (const std::exception&) {
    }
  }
  return 32;
}

void require_dimension(int d) {
  if (d < 2) {
    throw std::invalid_argument("dimension must be >= 2, got " +
                                std::to_string(d));
  }
}

void require_matrix_dimension(int d) {
  require_dimension(d);
  if (d > max_dimension()) {
    throw std::invalid_argument(
        "dimension " + std::to_string(d) + " exceeds the maximum of " +
        std::to_string(max_dimension()) + " (set REALCLONE_MAX_DIM)");
  }
}

}  // namespace realclone
