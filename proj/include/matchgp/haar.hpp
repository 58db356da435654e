// Copyright 2026 The matchgp developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include "matchgp/common.hpp"

namespace matchgp {

/// Element of SO(2n): q^T q = I, det q = +1.
struct OrthogonalMatrix {
  Eigen::MatrixXd q;

  int dim() const { return static_cast<int>(q.rows()); }
  static OrthogonalMatrix identity(int dim);
};

/// Haar sample on O(dim) via QR of a Gaussian matrix with the R-diagonal
/// sign fix, then determinant corrected to +1 by negating the last column.
OrthogonalMatrix haar_so(int dim, Rng& rng);

}  // namespace matchgp
