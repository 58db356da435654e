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

#include <functional>
#include <string>
#include <vector>

#include "matchgp/module_coeffs.hpp"
#include "matchgp/states.hpp"

namespace matchgp {

enum class KernelMode { Exact, Asymptotic, InverseDimension };

/// kappa = prefactor * (d * <rho, rho'>_m) with
///   exact              prefactor = ||O||_m^2 / (d * C(2n, m)),  m in {1, 2}
///   asymptotic         prefactor = m!/(2n)^m * ||O||_m^2 / d
///   inverse_dimension  the 1/C(2n, m) constant extended to every m; the
///                      second moment is established only for m <= 2, so
///                      this mode is an experiment, never a default.
/// The prefactor is the single place kernel units live; shot noise on the
/// effective overlap d<.,.>_m composes with it (see noise.hpp).
double matchgate_kernel_prefactor(const ModuleCoefficients& obs, KernelMode mode);

double matchgate_kernel(const ModuleCoefficients& a, const ModuleCoefficients& b,
                        const ModuleCoefficients& obs, KernelMode mode);

/// (1/4^n) * ||O||_2^2 * Tr[rho rho'].
double fidelity_kernel(const QuantumState& rho, const QuantumState& rho_prime,
                       double obs_norm_sq, int n);

struct KernelSector {
  ModuleCoefficients obs;
  KernelMode mode;
};

/// Sum of per-sector matchgate kernels over disjoint sectors. `a` and `b`
/// hold the per-sector state projections, aligned with `sectors`.
double multi_sector_kernel(const std::vector<ModuleCoefficients>& a,
                           const std::vector<ModuleCoefficients>& b,
                           const std::vector<KernelSector>& sectors);

using KernelFn = std::function<double(int64_t, int64_t)>;

/// (1/K) * sum_i theta_i * kappa_i with theta_i in [0, 1].
KernelFn combined_kernel(std::vector<KernelFn> base, std::vector<double> theta);

/// Symmetric N x N Gram matrix with per-entry noise metadata (0 = exact).
struct KernelMatrix {
  Eigen::MatrixXd values;
  Eigen::MatrixXd noise_variance;
  std::vector<std::string> labels;
  double prefactor = 0.0;  // matchgate prefactor when applicable, else 0

  int64_t size() const { return values.rows(); }
};

/// Upper triangle computed, mirrored exactly (never recomputed).
KernelMatrix gram_matrix(const std::vector<std::string>& labels, const KernelFn& kernel);

}  // namespace matchgp
