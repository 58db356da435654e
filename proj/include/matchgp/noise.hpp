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

#include "matchgp/kernels.hpp"

namespace matchgp {

struct ShotBudget {
  int64_t n_obs = 0;    // shots per training observation; 0 = infinite
  int64_t n_kappa = 0;  // shots per kernel entry; 0 = infinite
};

struct NoisyValue {
  double value;
  double variance;
};

/// Binomial shot noise on a Pauli expectation in [-1, 1]:
/// y~ = (2/n) Bin(n, (1+y)/2) - 1, reported variance (1 - y^2)/n.
NoisyValue noisy_observation(double y, int64_t n_obs, Rng& rng);

/// Symmetric i.i.d. Gaussian perturbation with the worst-case variance
/// sigma_kappa^2 = C(2n, m)/n_kappa at the effective-overlap scale, mapped
/// through the kernel prefactor. n_kappa = 0 returns K unchanged.
KernelMatrix noisy_kernel(const KernelMatrix& k, int m, int n, int64_t n_kappa, Rng& rng);

/// Same noise model for a rectangular cross-kernel block (test x train).
Eigen::MatrixXd noisy_cross_kernel(const Eigen::MatrixXd& k, double prefactor, int m, int n,
                                   int64_t n_kappa, Rng& rng);

struct PsdRepairResult {
  KernelMatrix repaired;
  double shift = 0.0;  // diagonal shift routed into R (0 for clipping)
};

/// Eigenvalue clipping: the Frobenius-closest PSD matrix.
KernelMatrix psd_clip(const KernelMatrix& k);

/// Diagonal shift by max(0, -lambda_min).
PsdRepairResult psd_shift_min(const KernelMatrix& k);

/// Diagonal shift by the Wigner semicircle edge 2 sqrt(N) sigma_kappa,
/// independent of the realized eigenvalues.
PsdRepairResult psd_shift_wigner(const KernelMatrix& k, int64_t n_points, double sigma_kappa);

}  // namespace matchgp
