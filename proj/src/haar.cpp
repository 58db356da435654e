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

#include "matchgp/haar.hpp"

namespace matchgp {

OrthogonalMatrix OrthogonalMatrix::identity(int dim) {
  return {Eigen::MatrixXd::Identity(dim, dim)};
}

OrthogonalMatrix haar_so(int dim, Rng& rng) {
  if (dim < 2 || dim % 2 != 0)
    throw std::invalid_argument("haar_so needs an even dimension >= 2");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge: make the R diagonal positive so Q is Haar on O(dim).
  for (int j = 0; j < dim; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  if (q.determinant() < 0) q.col(dim - 1) = -q.col(dim - 1);
  return {std::move(q)};
}

}  // namespace matchgp
