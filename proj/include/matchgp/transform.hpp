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

#include "matchgp/haar.hpp"
#include "matchgp/module_coeffs.hpp"

namespace matchgp {

/// Compound-matrix action a'_V = sum_W det(Q[V, W]) a_W, i.e. Q^{tensor m}
/// restricted to the antisymmetric sector. Linear isometry for orthogonal Q.
/// Fast paths: m = 1 (matvec), m = 2 (frame-matrix congruence Q A Q^T),
/// sparse inputs (minor expansion over nonzero W only).
ModuleCoefficients transform_coeffs(const ModuleCoefficients& a, const OrthogonalMatrix& q);

/// One draw of X = Tr[U rho U^dagger O]: measuring O after evolving rho by
/// the matchgate whose adjoint action is Q. Equals
/// overlap(transform_coeffs(obs, Q^T), state).
double sample_expectation(const ModuleCoefficients& state_coeffs,
                          const ModuleCoefficients& obs_coeffs,
                          const OrthogonalMatrix& q);

/// num_samples x num_states matrix; one Haar Q per row shared across all
/// states (the joint law of the process). Row i uses substream(seed, i), so
/// results are independent of the worker count.
Eigen::MatrixXd sample_batch(const std::vector<ModuleCoefficients>& state_coeff_list,
                             const ModuleCoefficients& obs_coeffs,
                             int64_t num_samples, uint64_t seed);

}  // namespace matchgp
