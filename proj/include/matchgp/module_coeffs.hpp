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
#include <memory>
#include <vector>

#include "matchgp/pauli.hpp"
#include "matchgp/subsets.hpp"

namespace matchgp {

class QuantumState;

enum class CoeffKind { State, Observable };

/// Real coefficients a_V = Tr[C_V A] of a Hermitian operator's projection
/// onto the module B_m, indexed by sorted m-subsets of [2n]. The 1/sqrt(d)
/// normalization of the basis operators C_V is included in the values.
///
/// Frame coefficients are never stored: the entry for an index vector nu is
/// sgn(pi) * a_{set(nu)} / sqrt(m!), reconstructed on demand.
class ModuleCoefficients {
 public:
  ModuleCoefficients(int n, int m, CoeffKind kind);
  ModuleCoefficients(int n, int m, CoeffKind kind, Eigen::VectorXd values);

  int n() const { return n_; }
  int m() const { return m_; }
  CoeffKind kind() const { return kind_; }
  const SubsetIndex& index() const { return *index_; }
  int64_t size() const { return values_.size(); }

  double value(int64_t rank) const { return values_[rank]; }
  double& value(int64_t rank) { return values_[rank]; }
  double value(const std::vector<int>& sorted_subset) const {
    return values_[index_->rank(sorted_subset)];
  }
  double& value(const std::vector<int>& sorted_subset) {
    return values_[index_->rank(sorted_subset)];
  }
  // Braced subset lists must hit the subset accessor, not the rank one.
  double value(std::initializer_list<int> subset) const {
    return value(std::vector<int>(subset));
  }
  double& value(std::initializer_list<int> subset) {
    return values_[index_->rank(std::vector<int>(subset))];
  }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }

  /// Frame coefficient for an arbitrary index vector (0 on repeats).
  double frame_value(const std::vector<int>& nu) const;

 private:
  int n_, m_;
  CoeffKind kind_;
  std::shared_ptr<const SubsetIndex> index_;
  Eigen::VectorXd values_;
};

/// a_V = Tr[C_V rho] over all C(2n, m) subsets, evaluated densely.
ModuleCoefficients project_state(const QuantumState& rho, int m);

/// Projection of a Hermitian Pauli word that lies entirely in B_m: a single
/// basis coefficient +-sqrt(d). Throws (naming the module the word does
/// belong to) when the word is not in B_m.
ModuleCoefficients project_pauli_observable(const PauliString& p, int m);

/// The Majorana subset a Pauli word corresponds to (every Pauli word is a
/// phase times a product of distinct Majoranas).
MajoranaIndexSet pauli_majorana_support(const PauliString& p);

double overlap(const ModuleCoefficients& a, const ModuleCoefficients& b);
double purity(const ModuleCoefficients& a);

/// O = sum_j w_j P_{V(j)} over pairwise disjoint m-subsets: basis
/// coefficient sqrt(d) * w_j on each subset.
ModuleCoefficients special_partition_observable(int n,
                                                const std::vector<std::vector<int>>& partition,
                                                const std::vector<double>& weights);

/// Coefficients of A*Gamma in B_{2n-m}, Gamma = i^n C_1...C_{2n}. Dense at
/// small n; the result is re-Hermitianized by the global phase of the
/// product before coefficients are read off.
ModuleCoefficients gamma_dual(const ModuleCoefficients& a);

/// m = 2: the antisymmetric 2n x 2n frame matrix (entry (mu, nu), mu < nu,
/// equals a_{mu nu} = a_{{mu,nu}} / sqrt(2)).
/// m = 4: the (ij),(kl) reshape of the frame tensor restricted to the
/// antisymmetric sector, a C(2n,2) x C(2n,2) matrix over the basis
/// e_i ^ e_j (i < j) in subset-rank order.
Eigen::MatrixXd coeffs_as_matrix(const ModuleCoefficients& a);

/// Dense reconstruction sum_V a_V C_V (n within cap).
Eigen::MatrixXcd coeffs_to_dense(const ModuleCoefficients& a);

/// Analytic coefficients of |0...0><0...0| in an even module B_m:
/// 1/sqrt(d) on every subset that is a union of m/2 pairs {2i-1, 2i}.
ModuleCoefficients zero_state_coeffs(int n, int m);

/// Analytic B_2 coefficient matrix family cos(theta/2)/sqrt(2d) * J covers
/// |0..0> (theta = 0) and the magic extent states.
ModuleCoefficients jform_b2_coeffs(int n, double scale_cos);

}  // namespace matchgp
