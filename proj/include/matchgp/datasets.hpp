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

#include <map>

#include "matchgp/bayesopt.hpp"
#include "matchgp/noise.hpp"
#include "matchgp/transform.hpp"

namespace matchgp {

/// Synthetic B_1 regression task: states rho(t) from the 1D synthetic
/// family, observable a Pauli in B_1, labels y(t) = Tr[U rho(t) U^dag O]
/// for one fixed Haar matchgate (its adjoint action Q*).
struct SyntheticB1Task {
  int n;
  ModuleCoefficients obs;             // B_1 Pauli observable
  ModuleCoefficients obs_heisenberg;  // transform_coeffs(obs, Q*^T)
  std::vector<double> inputs;
  std::vector<ModuleCoefficients> coeffs;  // B_1 projections per state
  std::vector<double> labels;              // exact f_U(t)
};

SyntheticB1Task make_synthetic_b1_task(int n, const std::vector<double>& inputs,
                                       uint64_t dataset_seed, uint64_t unitary_seed);

/// 30-qubit-style 2D BO landscape at desk scale: grid over [0, 3]^2 with
/// the given step, objective from a B_1 observable through a fixed Q*.
struct Synthetic2dTask {
  int n;
  double step;
  int side;                       // grid points per axis
  std::vector<double> objective;  // row-major over (i * side + j)
  Eigen::MatrixXd features;       // B_1 coefficient vectors (2n x grid)
  double kernel_prefactor;        // exact B_1 matchgate prefactor
  int64_t argmax = 0;
};

Synthetic2dTask make_synthetic_2d_task(int n, double step, uint64_t dataset_seed,
                                       uint64_t unitary_seed);

/// Bond-alternating XXX ground-state dataset over ratios J1/J2 in (0, 2].
struct XxxTask {
  int n;
  std::vector<double> ratios;            // J1/J2 grid
  std::vector<double> order_parameter;   // <O> on each ground state
  std::vector<ModuleCoefficients> b2_coeffs;
  std::vector<ModuleCoefficients> b4_coeffs;
  KernelSector b2_sector;
  KernelSector b4_sector;

  double kernel(int64_t i, int64_t j) const;
};

XxxTask make_xxx_task(int n, int num_points);

/// Magnetometry probe-optimization task: grid over t in [pi/8, 15pi/8],
/// observation y(t) = <O> at alpha = delta_alpha, objective y^2.
struct MagnetometryTask {
  int n;
  double delta_alpha;
  std::vector<double> grid;
  std::vector<double> observation;  // raw <O>(t, delta_alpha)
  Eigen::MatrixXd b2_frames_flat;   // per grid point, flattened B_2 coeff vector
  double kernel_prefactor;          // exact B_2 matchgate prefactor
  int64_t argmax = 0;               // of observation^2

  double kernel(int64_t i, int64_t j) const;
};

MagnetometryTask make_magnetometry_task(int n, double step, double delta_alpha = 0.05);

/// Product-state regression dataset from the benchmarking setup: each qubit
/// rotated by 2 pi (sin t + cos(2t)/2) about x then y; B_2 Pauli observable
/// through a fixed Q*.
struct BenchRegressionTask {
  int n;
  ModuleCoefficients obs;
  ModuleCoefficients obs_heisenberg;
  std::vector<double> inputs;
  std::vector<ModuleCoefficients> coeffs;
  std::vector<double> labels;
};

BenchRegressionTask make_bench_regression_task(int n, const std::vector<double>& inputs,
                                               uint64_t unitary_seed);

/// One noisy-kernel regression trial on the bench task: binomial noise on
/// the training labels, Gaussian kernel noise on the train Gram and the
/// test cross block, then a GP fit per repair method. Returns test MSE per
/// method ("none", "clip", "shift_min", "shift_wigner"); all methods share
/// the same noise draw (paired comparison).
std::map<std::string, double> psd_bench_trial(const BenchRegressionTask& task,
                                              const std::vector<int64_t>& train_idx,
                                              const std::vector<int64_t>& test_idx,
                                              int64_t n_obs, int64_t n_kappa, uint64_t seed);

/// Kernel-identification task: unknown single-qubit unitary on qubit
/// `target`, single-layer synthetic states, base kernels
/// kappa_i = (1/4) ||O_i||^2 Tr[rho_i(t) rho_i(t')] per qubit.
struct KernelIdTask {
  int n;
  int target;                          // true qubit (1-based)
  std::vector<double> inputs;
  std::vector<Eigen::MatrixXd> base_grams;  // one per qubit
  Eigen::VectorXd labels;
};

KernelIdTask make_kernel_id_task(int n, int target, const std::vector<double>& inputs,
                                 uint64_t dataset_seed, uint64_t unitary_seed);

}  // namespace matchgp
