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

#include "matchgp/kernels.hpp"

#include <cmath>

namespace matchgp {

double matchgate_kernel_prefactor(const ModuleCoefficients& obs, KernelMode mode) {
  int n = obs.n();
  int m = obs.m();
  double d = std::pow(2.0, n);
  double norm_sq = purity(obs);
  if (mode == KernelMode::Exact) {
    if (m != 1 && m != 2)
      throw std::invalid_argument("exact kernel constants are only established for m in {1, 2}");
    return norm_sq / (d * binomial_coefficient(2 * n, m));
  }
  if (mode == KernelMode::InverseDimension)
    return norm_sq / (d * binomial_coefficient(2 * n, m));
  double fact = 1.0;
  for (int i = 2; i <= m; ++i) fact *= i;
  return fact / std::pow(2.0 * n, m) * norm_sq / d;
}

double matchgate_kernel(const ModuleCoefficients& a, const ModuleCoefficients& b,
                        const ModuleCoefficients& obs, KernelMode mode) {
  if (a.n() != obs.n() || a.m() != obs.m())
    throw std::invalid_argument("state/observable module mismatch");
  double d = std::pow(2.0, obs.n());
  return matchgate_kernel_prefactor(obs, mode) * (d * overlap(a, b));
}

double fidelity_kernel(const QuantumState& rho, const QuantumState& rho_prime,
                       double obs_norm_sq, int n) {
  check_dense_cap(n);
  return obs_norm_sq / std::pow(4.0, n) * rho.fidelity_overlap(rho_prime);
}

double multi_sector_kernel(const std::vector<ModuleCoefficients>& a,
                           const std::vector<ModuleCoefficients>& b,
                           const std::vector<KernelSector>& sectors) {
  if (a.size() != sectors.size() || b.size() != sectors.size())
    throw std::invalid_argument("sector count mismatch");
  for (size_t i = 0; i < sectors.size(); ++i)
    for (size_t j = i + 1; j < sectors.size(); ++j)
      if (sectors[i].obs.m() == sectors[j].obs.m())
        throw std::invalid_argument("sectors must be distinct modules");
  double acc = 0.0;
  for (size_t s = 0; s < sectors.size(); ++s)
    acc += matchgate_kernel(a[s], b[s], sectors[s].obs, sectors[s].mode);
  return acc;
}

KernelFn combined_kernel(std::vector<KernelFn> base, std::vector<double> theta) {
  if (base.size() != theta.size() || base.empty())
    throw std::invalid_argument("kernel/weight count mismatch");
  for (double t : theta)
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("combination weight outside [0, 1]");
  double inv_k = 1.0 / static_cast<double>(base.size());
  return [base = std::move(base), theta = std::move(theta), inv_k](int64_t i, int64_t j) {
    double acc = 0.0;
    for (size_t s = 0; s < base.size(); ++s) acc += theta[s] * base[s](i, j);
    return inv_k * acc;
  };
}

KernelMatrix gram_matrix(const std::vector<std::string>& labels, const KernelFn& kernel) {
  int64_t n = static_cast<int64_t>(labels.size());
  if (n == 0) throw std::invalid_argument("empty dataset");
  KernelMatrix out;
  out.labels = labels;
  out.values = Eigen::MatrixXd::Zero(n, n);
  out.noise_variance = Eigen::MatrixXd::Zero(n, n);
  parallel_for(0, n, [&](int64_t i) {
    for (int64_t j = i; j < n; ++j) out.values(i, j) = kernel(i, j);
  });
  for (int64_t i = 0; i < n; ++i)
    for (int64_t j = 0; j < i; ++j) out.values(i, j) = out.values(j, i);
  return out;
}

}  // namespace matchgp
