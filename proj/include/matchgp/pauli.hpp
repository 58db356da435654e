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
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "matchgp/common.hpp"

namespace matchgp {

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Global phase restricted to the fourth roots of unity, stored as the
/// exponent k of i^k. Exact; no floating point.
class Phase {
 public:
  constexpr Phase() : k_(0) {}
  explicit constexpr Phase(int k) : k_(((k % 4) + 4) % 4) {}

  constexpr int exponent() const { return k_; }
  constexpr bool is_real() const { return k_ == 0 || k_ == 2; }
  std::complex<double> value() const {
    static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[k_];
  }
  constexpr Phase operator*(Phase o) const { return Phase(k_ + o.k_); }
  constexpr bool operator==(Phase o) const { return k_ == o.k_; }
  std::string str() const {
    static const char* table[4] = {"+", "+i", "-", "-i"};
    return table[k_];
  }

 private:
  int k_;
};

/// n-qubit Pauli word with a global phase in {+1, +i, -1, -i}.
/// Letters are stored per qubit; qubit indices are 1-based in the API.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n) : letters_(n, Pauli::I) {}
  PauliString(std::vector<Pauli> letters, Phase phase)
      : letters_(std::move(letters)), phase_(phase) {}

  static PauliString identity(int n) { return PauliString(n); }
  static PauliString single(int n, int qubit, Pauli p, Phase phase = Phase());

  /// Parses textual notation like "XZIY", "-XZ", "+iYY", "-iZI".
  static PauliString parse(const std::string& text);

  int num_qubits() const { return static_cast<int>(letters_.size()); }
  Pauli letter(int qubit) const { return letters_[qubit - 1]; }
  void set_letter(int qubit, Pauli p) { letters_[qubit - 1] = p; }
  Phase phase() const { return phase_; }
  void set_phase(Phase p) { phase_ = p; }
  const std::vector<Pauli>& letters() const { return letters_; }

  bool is_hermitian() const { return phase_.is_real(); }
  bool is_identity_letters() const;
  int weight() const;
  int count_y() const;

  std::string str() const;

  bool operator==(const PauliString& o) const {
    return letters_ == o.letters_ && phase_ == o.phase_;
  }

 private:
  std::vector<Pauli> letters_;
  Phase phase_;
};

/// Product p*q with exact phase tracking.
PauliString pauli_multiply(const PauliString& p, const PauliString& q);

/// True iff pq = qp, from per-site anticommutation parity.
bool commutes(const PauliString& p, const PauliString& q);

/// Jordan-Wigner Majorana operator C_mu, mu in [1, 2n].
/// Odd mu = 2k-1 -> Z_1..Z_{k-1} X_k; even mu = 2k -> Z_1..Z_{k-1} Y_k.
PauliString majorana(int mu, int n);

/// Ordered product C_{nu_1} ... C_{nu_m}; repeated indices square away.
PauliString majorana_product(const std::vector<int>& nu, int n);

/// Strictly increasing Majorana index subset of {1, ..., 2n}.
struct MajoranaIndexSet {
  int n = 0;
  std::vector<int> indices;

  MajoranaIndexSet() = default;
  MajoranaIndexSet(int n_, std::vector<int> idx);
  int m() const { return static_cast<int>(indices.size()); }
};

/// h_m * C_{nu_1}...C_{nu_m} with h_m = (-i)^{m(m-1)/2}; phase comes out
/// real (Hermitian). The 1/sqrt(d) basis normalization is applied by the
/// projection code, not stored in the word.
PauliString hermitian_majorana_basis_op(const MajoranaIndexSet& v);

/// Dense 2^n x 2^n matrix; qubit 1 is the leftmost tensor factor.
Eigen::MatrixXcd to_matrix(const PauliString& p);

/// <psi|phase*word|psi> (pure) or Tr[rho * phase*word] (mixed callers use
/// the overloads in states.hpp). Bare-word action on a basis index:
/// word|j> = i^{#Y} (-1)^{popcount(j & zmask)} |j ^ xmask>.
struct PauliMasks {
  uint64_t xmask = 0;
  uint64_t zmask = 0;
  int ny = 0;
};
PauliMasks pauli_masks(const PauliString& p);

}  // namespace matchgp
