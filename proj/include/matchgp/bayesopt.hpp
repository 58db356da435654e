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

#include "matchgp/gp.hpp"

namespace matchgp {

struct AcquisitionSpec {
  enum class Kind { ExpectedImprovement, Ucb };
  Kind kind = Kind::ExpectedImprovement;
  double xi = 0.01;    // EI improvement margin
  double beta = 1.96;  // UCB trade-off
  bool chi2_composite = false;  // square the GP surrogate before scoring
};

/// Closed-form Gaussian EI with improvement margin xi.
double expected_improvement(double mu, double sigma, double y_plus, double xi);

double ucb(double mu, double sigma, double beta);

/// Moment map for the square of a Gaussian: mean mu^2 + sigma^2, variance
/// 2 sigma^2 (2 mu^2 + sigma^2). Returns (mean, sqrt(variance)).
std::pair<double, double> chi2_surrogate(double mu_gp, double sigma_gp);

struct BOTrace {
  std::vector<int64_t> queries;        // grid indices queried, in order
  std::vector<double> observed;        // objective values at the queries
  std::vector<double> acquisition;     // acquisition value at each query
  std::vector<double> best_so_far;     // nondecreasing
  bool reached_known_optimum = false;
  int64_t evaluations_to_optimum = -1;  // -1 when not reached
};

struct BOProblem {
  /// Objective value at a grid index (deterministic for the run).
  std::function<double(int64_t)> objective;
  /// Kernel value between two grid indices (columns are cached internally).
  KernelFn kernel;
  int64_t grid_size = 0;
  /// Known optimum grid index for benchmark mode; -1 disables the stop.
  int64_t known_optimum = -1;
  double observation_variance = 1e-10;
};

/// Grid-search BO: fit GP on observations, score the acquisition on the
/// full grid, query the argmax (ties to the smallest index). Benchmark mode
/// stops once the grid argmax of the surrogate mean hits the known optimum.
BOTrace bo_loop(const BOProblem& problem, const AcquisitionSpec& acq,
                const std::vector<int64_t>& init, int max_iters);

}  // namespace matchgp
