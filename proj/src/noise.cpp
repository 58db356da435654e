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

#include "matchgp/noise.hpp"

#include <algorithm>
#include <cmath>

namespace matchgp {

NoisyValue noisy_observation(double y, int64_t n_obs, Rng& rng) {
  if (std::abs(y) > 1.0 + 1e-12) throw std::invalid_argument("expectation outside [-1, 1]");
  y = std::clamp(y, -1.0, 1.0);
  if (n_obs <= 0) return {y, 0.0};
  std::binomial_distribution<int64_t> bin(n_obs, (1.0 + y) / 2.0);
  double noisy = 2.0 / static_cast<double>(n_obs) * bin(rng) - 1.0;
  return {noisy, (1.0 - y * y) / static_cast<double>(n_obs)};
}

KernelMatrix noisy_kernel(const KernelMatrix& k, int m, int n, int64_t n_kappa, Rng& rng) {
  KernelMatrix out = k;
  if (n_kappa <= 0) return out;
  if (k.prefactor == 0.0)
    throw std::invalid_argument("kernel matrix carries no prefactor metadata");
  double sigma_eff = std::sqrt(binomial_coefficient(2 * n, m) / static_cast<double>(n_kappa));
  double sigma = k.prefactor * sigma_eff;
  std::normal_distribution<double> gauss(0.0, sigma);
  int64_t size = k.size();
  for (int64_t i = 0; i < size; ++i) {
    for (int64_t j = i; j < size; ++j) {
      double eps = gauss(rng);
      out.values(i, j) += eps;
      if (j != i) out.values(j, i) = out.values(i, j);
      out.noise_variance(i, j) = sigma * sigma;
      out.noise_variance(j, i) = sigma * sigma;
    }
  }
  return out;
}

Eigen::MatrixXd noisy_cross_kernel(const Eigen::MatrixXd& k, double prefactor, int m, int n,
                                   int64_t n_kappa, Rng& rng) {
  if (n_kappa <= 0) return k;
  double sigma = prefactor * std::sqrt(binomial_coefficient(2 * n, m) / static_cast<double>(n_kappa));
  std::normal_distribution<double> gauss(0.0, sigma);
  Eigen::MatrixXd out = k;
  for (int64_t i = 0; i < out.rows(); ++i)
    for (int64_t j = 0; j < out.cols(); ++j) out(i, j) += gauss(rng);
  return out;
}

namespace {

void require_symmetric(const Eigen::MatrixXd& k) {
  if ((k - k.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("PSD repair needs a symmetric matrix");
}

}  // namespace

KernelMatrix psd_clip(const KernelMatrix& k) {
  require_symmetric(k.values);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k.values);
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  KernelMatrix out = k;
  out.values = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
  out.values = 0.5 * (out.values + out.values.transpose());
  return out;
}

PsdRepairResult psd_shift_min(const KernelMatrix& k) {
  require_symmetric(k.values);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k.values);
  double lam_min = es.eigenvalues().minCoeff();
  double shift = std::max(0.0, -lam_min);
  KernelMatrix out = k;
  out.values.diagonal().array() += shift;
  return {std::move(out), shift};
}

PsdRepairResult psd_shift_wigner(const KernelMatrix& k, int64_t n_points, double sigma_kappa) {
  require_symmetric(k.values);
  if (sigma_kappa < 0.0) throw std::invalid_argument("negative noise scale");
  double shift = 2.0 * std::sqrt(static_cast<double>(n_points)) * sigma_kappa;
  KernelMatrix out = k;
  out.values.diagonal().array() += shift;
  return {std::move(out), shift};
}

}  // namespace matchgp
