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

#include <Eigen/Dense>
#include <map>
#include <string>

#include "matchgp/pauli.hpp"

namespace matchgp {

/// Dense n-qubit state: pure state vector or density operator.
class QuantumState {
 public:
  static QuantumState pure(int n, Eigen::VectorXcd amplitudes);
  static QuantumState mixed(int n, Eigen::MatrixXcd density);
  static QuantumState zero(int n);

  int n() const { return n_; }
  bool is_pure() const { return pure_; }
  const Eigen::VectorXcd& amplitudes() const;
  const Eigen::MatrixXcd& density_view() const;  // materializes for pure states
  Eigen::MatrixXcd density() const;

  /// Tr[rho * p] for Hermitian p (phase +-1).
  double expectation(const PauliString& p) const;

  double fidelity_overlap(const QuantumState& other) const;  // Tr[rho rho']

  /// Von Neumann entropy of qubits 1..k (base 2).
  double subsystem_entropy(int k) const;

 private:
  QuantumState() = default;
  int n_ = 0;
  bool pure_ = true;
  Eigen::VectorXcd amps_;
  mutable Eigen::MatrixXcd dens_;
  mutable bool dens_valid_ = false;
};

/// 1D synthetic dataset state: `layers` repetitions of per-qubit rotations
/// exp(-i pi a_i t P_i) (P_i uniform over {X,Y,Z}, a_i ~ N(0,1), drawn from
/// the seed) followed by a nearest-neighbor CNOT ladder.
QuantumState synthetic_state(double t, int n, uint64_t seed, int layers = 2);

/// 2D variant: one layer; rotations driven by t1, entangling ladder of
/// controlled-Z rotations with angles pi b_i t2 driven by t2.
QuantumState synthetic_state_2d(double t1, double t2, int n, uint64_t seed);

/// exp(sum h_{mu nu} C_mu C_nu)|0...0> for real antisymmetric h.
QuantumState gaussian_state(const Eigen::MatrixXd& h, int n);

/// (cos(theta/4)|0000> + sin(theta/4)|1111>)^{n/4}; n divisible by 4.
QuantumState magic_extent_state(double theta, int n);

/// Haar-random pure state in the +1 eigenspace of Z^{otimes n}.
QuantumState random_fermionic_state(int n, uint64_t seed);

struct HamiltonianSpec {
  enum class Variant { XxxBondAlternating, XxzAlternatingField, Magnetometry };
  Variant variant;
  int n;
  std::map<std::string, double> parameters;  // J1, J2 | h1, h2, J, Jz | alpha
};

Eigen::MatrixXd build_hamiltonian(const HamiltonianSpec& spec);

/// Normalized eigenvector of minimal eigenvalue; degenerate ground spaces
/// resolve to the first eigenvector in the solver's deterministic ordering.
QuantumState ground_state(const HamiltonianSpec& spec);

/// One-axis-twist probe exp(-i t sum_{i<j} X_i X_j)|0...0> (unitary, the
/// default) or exp(t sum_{i<j} X_i X_j)|0...0> normalized (literal variant).
QuantumState probe_state(double t, int n, bool unitary = true);

/// Probe evolved under the magnetometry field exp(-i alpha/2 sum Z_i).
QuantumState apply_field(const QuantumState& probe, double alpha);

}  // namespace matchgp
