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
#include "matchgp/states.hpp"

namespace matchgp {

/// Bell measurement outcome |P>, identified by the letters of P.
struct BellOutcome {
  PauliString pauli_word;  // phase +1
};

/// f_m(P) = sum_V s(P, P_V) (-1)^{#Y(P_V)} over the C(2n, m) module Pauli
/// words P_V, with s = +1 when [P, P_V] = 0 and -1 otherwise. The sign of
/// s is pinned by the dense Bell-basis diagonalization oracle (tested for
/// n <= 3) rather than re-derived.
double f_m(const BellOutcome& outcome, int m, int n);

/// Samples from Pr[P] = <P| rho x rho' |P>, computed densely over all 4^n
/// outcomes (n <= 6) and verified to sum to 1.
std::vector<BellOutcome> bell_sample(const QuantumState& rho, const QuantumState& rho_prime,
                                     int64_t num_shots, Rng& rng);

/// Bell-basis probabilities in letter-index order (base-4 digits per qubit,
/// qubit 1 most significant; digit order I, X, Y, Z).
Eigen::VectorXd bell_probabilities(const QuantumState& rho, const QuantumState& rho_prime);

/// Sample mean of f_m over outcomes; unbiased for d<rho, rho'>_m.
double direct_estimate(const std::vector<BellOutcome>& outcomes, int m, int n);

/// Naive protocol: binomial estimates of all 2 C(2n, m) rescaled
/// coefficients, then the inner product. shots_per_coeff = 0 gives the
/// exact d<rho, rho'>_m.
double indirect_estimate(const QuantumState& rho, const QuantumState& rho_prime, int m,
                         int64_t shots_per_coeff, Rng& rng);

struct SeparationReport {
  int64_t repeats = 0;
  double threshold = 0.0;               // sqrt(2 d_m^3) / T
  double indirect_exceed_frequency = 0.0;
  double indirect_exceed_ci_lo = 0.0;   // 95% Wilson interval
  double indirect_exceed_ci_hi = 0.0;
  double hoeffding_envelope = 0.0;      // d_m sqrt(2 ln(2/0.05) / T)
  double direct_within_envelope_frequency = 0.0;
  std::vector<double> direct_error_quantiles;    // 50/90/95/99%
  std::vector<double> indirect_error_quantiles;
};

/// Budget-matched direct-vs-indirect comparison on the zero-coefficient
/// hard instance (computational basis states, odd m). Direct spends M = T
/// Bell shots; indirect spends t = T / (2 C(2n, m)) per coefficient.
SeparationReport separation_experiment(int n, int m, int64_t total_budget, int64_t repeats,
                                       uint64_t seed);

/// Hamiltonian-learning baseline: per module basis Pauli P_V, prepare
/// (1 + P_V)/d via the random-eigenstate recipe with the sign factor eta,
/// push through the Q-action, and estimate <O>. The per-shot law of
/// eta * outcome is a +-1 coin with mean q_V / sqrt(d) for q =
/// transform_coeffs(obs, Q^T), which is sampled directly. Shots split
/// evenly across the C(2n, m) coefficients; total_shots = 0 is exact.
ModuleCoefficients hl_learn(const OrthogonalMatrix& q, const ModuleCoefficients& obs_coeffs,
                            int64_t total_shots, Rng& rng);

}  // namespace matchgp
