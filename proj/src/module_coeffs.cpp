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

#include "matchgp/module_coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "matchgp/states.hpp"

namespace matchgp {

SubsetIndex::SubsetIndex(int N, int m) : N_(N), m_(m) {
  if (m < 0 || m > N) throw std::invalid_argument("subset size out of range");
  count_ = static_cast<int64_t>(binomial_coefficient(N, m));
  subsets_.reserve(count_);
  std::vector<int> cur(m);
  for (int i = 0; i < m; ++i) cur[i] = i + 1;
  if (m == 0) {
    subsets_.push_back({});
  } else {
    while (true) {
      subsets_.push_back(cur);
      int i = m - 1;
      while (i >= 0 && cur[i] == N - (m - 1 - i)) --i;
      if (i < 0) break;
      ++cur[i];
      for (int j = i + 1; j < m; ++j) cur[j] = cur[j - 1] + 1;
    }
  }
}

int64_t SubsetIndex::rank(const std::vector<int>& s) const {
  if (static_cast<int>(s.size()) != m_) throw std::invalid_argument("subset size mismatch");
  // Lexicographic combinadic rank.
  int64_t r = 0;
  int prev = 0;
  for (int i = 0; i < m_; ++i) {
    for (int v = prev + 1; v < s[i]; ++v)
      r += static_cast<int64_t>(binomial_coefficient(N_ - v, m_ - 1 - i));
    prev = s[i];
  }
  return r;
}

int permutation_sort_sign(std::vector<int> v) {
  int sign = 1;
  for (size_t i = 0; i < v.size(); ++i) {
    for (size_t j = i + 1; j < v.size(); ++j) {
      if (v[j] < v[i]) {
        std::swap(v[i], v[j]);
        sign = -sign;
      } else if (v[j] == v[i]) {
        return 0;
      }
    }
  }
  return sign;
}

namespace {

std::shared_ptr<const SubsetIndex> cached_index(int N, int m) {
  static std::map<std::pair<int, int>, std::shared_ptr<const SubsetIndex>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(N, m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto idx = std::make_shared<SubsetIndex>(N, m);
  cache[key] = idx;
  return idx;
}

}  // namespace

ModuleCoefficients::ModuleCoefficients(int n, int m, CoeffKind kind)
    : n_(n), m_(m), kind_(kind), index_(cached_index(2 * n, m)) {
  if (m > 2 * n) throw std::invalid_argument("module order m exceeds 2n");
  values_ = Eigen::VectorXd::Zero(index_->count());
}

ModuleCoefficients::ModuleCoefficients(int n, int m, CoeffKind kind, Eigen::VectorXd values)
    : n_(n), m_(m), kind_(kind), index_(cached_index(2 * n, m)), values_(std::move(values)) {
  if (values_.size() != index_->count())
    throw std::invalid_argument("coefficient vector length mismatch");
}

double ModuleCoefficients::frame_value(const std::vector<int>& nu) const {
  int sign = permutation_sort_sign(nu);
  if (sign == 0) return 0.0;
  std::vector<int> sorted = nu;
  std::sort(sorted.begin(), sorted.end());
  double fact = 1.0;
  for (int i = 2; i <= m_; ++i) fact *= i;
  return sign * value(sorted) / std::sqrt(fact);
}

ModuleCoefficients project_state(const QuantumState& rho, int m) {
  int n = rho.n();
  check_dense_cap(n);
  if (m > 2 * n) throw std::invalid_argument("module order m exceeds 2n");
  ModuleCoefficients out(n, m, CoeffKind::State);
  const auto& idx = out.index();
  double inv_sqrt_d = std::pow(2.0, -0.5 * n);
  parallel_for(0, idx.count(), [&](int64_t r) {
    PauliString op = hermitian_majorana_basis_op(MajoranaIndexSet(n, idx.subset(r)));
    out.value(r) = inv_sqrt_d * rho.expectation(op);
  });
  return out;
}

MajoranaIndexSet pauli_majorana_support(const PauliString& p) {
  int n = p.num_qubits();
  std::vector<int> indices;
  PauliString cur = p;
  cur.set_phase(Phase());
  while (!cur.is_identity_letters()) {
    int site = 0;
    for (int i = n; i >= 1; --i) {
      if (cur.letter(i) != Pauli::I) {
        site = i;
        break;
      }
    }
    int mu;
    switch (cur.letter(site)) {
      case Pauli::X: mu = 2 * site - 1; break;
      case Pauli::Y: mu = 2 * site; break;
      default: mu = 2 * site; break;  // Z consumes 2k then 2k-1 next round
    }
    indices.push_back(mu);
    cur = pauli_multiply(cur, majorana(mu, n));
    cur.set_phase(Phase());
  }
  std::sort(indices.begin(), indices.end());
  return MajoranaIndexSet(n, indices);
}

ModuleCoefficients project_pauli_observable(const PauliString& p, int m) {
  if (!p.is_hermitian()) throw std::invalid_argument("observable phase must be +-1");
  int n = p.num_qubits();
  MajoranaIndexSet support = pauli_majorana_support(p);
  if (support.m() != m)
    throw std::invalid_argument("Pauli word lies in B_" + std::to_string(support.m()) +
                                ", not B_" + std::to_string(m));
  ModuleCoefficients out(n, m, CoeffKind::Observable);
  // a_V = Tr[C_V p] = sqrt(d) * s where C_V * p = s * Identity, s = +-1.
  PauliString basis_op = hermitian_majorana_basis_op(support);
  PauliString prod = pauli_multiply(basis_op, p);
  if (!prod.is_identity_letters()) throw std::logic_error("support inversion failed");
  double s = prod.phase().value().real();
  out.value(support.indices) = s * std::pow(2.0, 0.5 * n);
  return out;
}

double overlap(const ModuleCoefficients& a, const ModuleCoefficients& b) {
  if (a.n() != b.n() || a.m() != b.m())
    throw std::invalid_argument("module coefficient shape mismatch");
  return a.values().dot(b.values());
}

double purity(const ModuleCoefficients& a) { return a.values().squaredNorm(); }

ModuleCoefficients special_partition_observable(int n,
                                                const std::vector<std::vector<int>>& partition,
                                                const std::vector<double>& weights) {
  if (partition.empty() || partition.size() != weights.size())
    throw std::invalid_argument("partition/weight count mismatch");
  size_t m = partition[0].size();
  if (partition.size() > static_cast<size_t>(2 * n / m))
    throw std::invalid_argument("too many partition subsets");
  std::vector<bool> used(2 * n + 1, false);
  for (const auto& v : partition) {
    if (v.size() != m) throw std::invalid_argument("partition subsets must share one size");
    MajoranaIndexSet checked(n, v);
    for (int idx : v) {
      if (used[idx]) throw std::invalid_argument("partition subsets overlap");
      used[idx] = true;
    }
  }
  for (double w : weights)
    if (w == 0.0) throw std::invalid_argument("weights must be nonzero");
  ModuleCoefficients out(n, static_cast<int>(m), CoeffKind::Observable);
  double sqrt_d = std::pow(2.0, 0.5 * n);
  for (size_t j = 0; j < partition.size(); ++j) {
    std::vector<int> v = partition[j];
    std::sort(v.begin(), v.end());
    out.value(v) = sqrt_d * weights[j];
  }
  return out;
}

Eigen::MatrixXcd coeffs_to_dense(const ModuleCoefficients& a) {
  int n = a.n();
  check_dense_cap(n);
  int64_t d = int64_t(1) << n;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  double inv_sqrt_d = std::pow(2.0, -0.5 * n);
  for (int64_t r = 0; r < a.size(); ++r) {
    if (a.value(r) == 0.0) continue;
    PauliString op = hermitian_majorana_basis_op(MajoranaIndexSet(n, a.index().subset(r)));
    out += (a.value(r) * inv_sqrt_d) * to_matrix(op);
  }
  return out;
}

ModuleCoefficients gamma_dual(const ModuleCoefficients& a) {
  int n = a.n();
  check_dense_cap(n);
  int m_dual = 2 * n - a.m();
  std::vector<int> all(2 * n);
  for (int i = 0; i < 2 * n; ++i) all[i] = i + 1;
  PauliString gamma_word = majorana_product(all, n);
  gamma_word.set_phase(gamma_word.phase() * Phase(n % 4));  // i^n
  Eigen::MatrixXcd dense = coeffs_to_dense(a) * to_matrix(gamma_word);

  // A*Gamma is Hermitian for even m and anti-Hermitian for odd m; the fixed
  // Hermitianizing phase is 1 resp. -i. With this convention the double
  // application returns +A on even modules and -A on odd ones.
  bool odd = a.m() % 2 != 0;
  ModuleCoefficients out(n, m_dual, a.kind());
  const auto& idx = out.index();
  double inv_sqrt_d = std::pow(2.0, -0.5 * n);
  parallel_for(0, idx.count(), [&](int64_t r) {
    PauliString op = hermitian_majorana_basis_op(MajoranaIndexSet(n, idx.subset(r)));
    PauliMasks mk = pauli_masks(op);
    std::complex<double> base = Phase(mk.ny).value() * op.phase().value();
    std::complex<double> tr = 0.0;
    int64_t d = dense.rows();
    for (int64_t k = 0; k < d; ++k) {
      int par = __builtin_popcountll(static_cast<uint64_t>(k) & mk.zmask) & 1;
      tr += (par ? -base : base) * dense(k, k ^ mk.xmask);
    }
    std::complex<double> raw = inv_sqrt_d * tr;
    out.value(r) = odd ? raw.imag() : raw.real();
  });
  return out;
}

Eigen::MatrixXd coeffs_as_matrix(const ModuleCoefficients& a) {
  int twon = 2 * a.n();
  if (a.m() == 2) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(twon, twon);
    const auto& idx = a.index();
    double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int64_t r = 0; r < a.size(); ++r) {
      const auto& s = idx.subset(r);
      double v = a.value(r) * inv_sqrt2;
      out(s[0] - 1, s[1] - 1) = v;
      out(s[1] - 1, s[0] - 1) = -v;
    }
    return out;
  }
  if (a.m() == 4) {
    SubsetIndex pairs(twon, 2);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(pairs.count(), pairs.count());
    for (int64_t r = 0; r < pairs.count(); ++r) {
      const auto& ij = pairs.subset(r);
      for (int64_t c = 0; c < pairs.count(); ++c) {
        const auto& kl = pairs.subset(c);
        out(r, c) = a.frame_value({ij[0], ij[1], kl[0], kl[1]});
      }
    }
    return out;
  }
  throw std::invalid_argument("coeffs_as_matrix supports m in {2, 4}");
}

ModuleCoefficients zero_state_coeffs(int n, int m) {
  if (m % 2 != 0) throw std::invalid_argument("zero-state coefficients exist only for even m");
  ModuleCoefficients out(n, m, CoeffKind::State);
  double inv_sqrt_d = std::pow(2.0, -0.5 * n);
  SubsetIndex pair_choice(n, m / 2);
  for (int64_t r = 0; r < pair_choice.count(); ++r) {
    std::vector<int> subset;
    for (int q : pair_choice.subset(r)) {
      subset.push_back(2 * q - 1);
      subset.push_back(2 * q);
    }
    std::sort(subset.begin(), subset.end());
    out.value(subset) = inv_sqrt_d;
  }
  return out;
}

ModuleCoefficients jform_b2_coeffs(int n, double scale_cos) {
  ModuleCoefficients out(n, 2, CoeffKind::State);
  double v = scale_cos * std::pow(2.0, -0.5 * n);
  for (int q = 1; q <= n; ++q) out.value({2 * q - 1, 2 * q}) = v;
  return out;
}

}  // namespace matchgp
