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

#include "matchgp/transform.hpp"

#include <cmath>

namespace matchgp {

namespace {

double minor_det(const Eigen::MatrixXd& q, const std::vector<int>& rows,
                 const std::vector<int>& cols) {
  int m = static_cast<int>(rows.size());
  switch (m) {
    case 1:
      return q(rows[0] - 1, cols[0] - 1);
    case 2:
      return q(rows[0] - 1, cols[0] - 1) * q(rows[1] - 1, cols[1] - 1) -
             q(rows[0] - 1, cols[1] - 1) * q(rows[1] - 1, cols[0] - 1);
    case 3: {
      Eigen::Matrix3d s;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s(i, j) = q(rows[i] - 1, cols[j] - 1);
      return s.determinant();
    }
    case 4: {
      Eigen::Matrix4d s;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s(i, j) = q(rows[i] - 1, cols[j] - 1);
      return s.determinant();
    }
    default: {
      Eigen::MatrixXd s(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) s(i, j) = q(rows[i] - 1, cols[j] - 1);
      return Eigen::PartialPivLU<Eigen::MatrixXd>(s).determinant();
    }
  }
}

}  // namespace

ModuleCoefficients transform_coeffs(const ModuleCoefficients& a, const OrthogonalMatrix& q) {
  int twon = 2 * a.n();
  if (q.dim() != twon) throw std::invalid_argument("orthogonal matrix dimension mismatch");
  int m = a.m();
  if (m == 0) return a;
  if (m == 1) {
    Eigen::VectorXd out = q.q * a.values();
    return ModuleCoefficients(a.n(), 1, a.kind(), std::move(out));
  }
  if (m == 2) {
    // Congruence on the antisymmetric frame matrix: A' = Q A Q^T.
    Eigen::MatrixXd frame = coeffs_as_matrix(a);
    Eigen::MatrixXd rotated = q.q * frame * q.q.transpose();
    ModuleCoefficients out(a.n(), 2, a.kind());
    const auto& idx = out.index();
    double sqrt2 = std::sqrt(2.0);
    for (int64_t r = 0; r < idx.count(); ++r) {
      const auto& s = idx.subset(r);
      out.value(r) = sqrt2 * rotated(s[0] - 1, s[1] - 1);
    }
    return out;
  }
  // General m: row-by-row minor expansion over the nonzero source entries.
  std::vector<int64_t> support;
  for (int64_t w = 0; w < a.size(); ++w)
    if (a.value(w) != 0.0) support.push_back(w);
  ModuleCoefficients out(a.n(), m, a.kind());
  const auto& idx = out.index();
  parallel_for(0, idx.count(), [&](int64_t v) {
    const auto& rows = idx.subset(v);
    double acc = 0.0;
    for (int64_t w : support)
      acc += minor_det(q.q, rows, idx.subset(w)) * a.value(w);
    out.value(v) = acc;
  });
  return out;
}

double sample_expectation(const ModuleCoefficients& state_coeffs,
                          const ModuleCoefficients& obs_coeffs,
                          const OrthogonalMatrix& q) {
  if (state_coeffs.n() != obs_coeffs.n() || state_coeffs.m() != obs_coeffs.m())
    throw std::invalid_argument("state/observable shape mismatch");
  int m = obs_coeffs.m();
  OrthogonalMatrix qt{q.q.transpose()};
  if (m > 2) {
    // The heavy direction only needs <transform(obs, Q^T), state>; expand
    // minors over the joint support instead of forming the full compound.
    std::vector<int64_t> obs_support, state_support;
    for (int64_t w = 0; w < obs_coeffs.size(); ++w)
      if (obs_coeffs.value(w) != 0.0) obs_support.push_back(w);
    for (int64_t v = 0; v < state_coeffs.size(); ++v)
      if (state_coeffs.value(v) != 0.0) state_support.push_back(v);
    const auto& idx = obs_coeffs.index();
    double acc = 0.0;
    for (int64_t v : state_support) {
      const auto& rows = idx.subset(v);
      double inner = 0.0;
      for (int64_t w : obs_support)
        inner += minor_det(qt.q, rows, idx.subset(w)) * obs_coeffs.value(w);
      acc += inner * state_coeffs.value(v);
    }
    return acc;
  }
  return overlap(transform_coeffs(obs_coeffs, qt), state_coeffs);
}

Eigen::MatrixXd sample_batch(const std::vector<ModuleCoefficients>& state_coeff_list,
                             const ModuleCoefficients& obs_coeffs,
                             int64_t num_samples, uint64_t seed) {
  if (state_coeff_list.empty() || num_samples <= 0)
    throw std::invalid_argument("sample_batch needs states and samples");
  int dim = 2 * obs_coeffs.n();
  int64_t cols = static_cast<int64_t>(state_coeff_list.size());
  Eigen::MatrixXd out(num_samples, cols);
  parallel_for(0, num_samples, [&](int64_t i) {
    Rng rng = substream(seed, static_cast<uint64_t>(i));
    OrthogonalMatrix q = haar_so(dim, rng);
    for (int64_t s = 0; s < cols; ++s)
      out(i, s) = sample_expectation(state_coeff_list[s], obs_coeffs, q);
  });
  return out;
}

}  // namespace matchgp
