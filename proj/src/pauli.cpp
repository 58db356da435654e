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

#include "matchgp/pauli.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace matchgp {

int dense_cap() {
  static const int cap = [] {
    if (const char* env = std::getenv("QGP_DENSE_CAP")) {
      int v = std::atoi(env);
      if (v > 0) return v;
    }
    return 12;
  }();
  return cap;
}

namespace {
std::atomic<int> g_threads{0};
}

int worker_threads() {
  int k = g_threads.load();
  if (k > 0) return k;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void set_worker_threads(int k) { g_threads.store(k); }

namespace {
thread_local bool g_inside_parallel = false;
}

void parallel_for(int64_t begin, int64_t end, const std::function<void(int64_t)>& fn) {
  int64_t count = end - begin;
  if (count <= 0) return;
  int k = std::min<int64_t>(worker_threads(), count);
  // Nested regions run serially; only the outermost loop fans out.
  if (k <= 1 || g_inside_parallel) {
    for (int64_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(k);
  int64_t chunk = (count + k - 1) / k;
  for (int w = 0; w < k; ++w) {
    int64_t lo = begin + w * chunk;
    int64_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      g_inside_parallel = true;
      for (int64_t i = lo; i < hi; ++i) fn(i);
      g_inside_parallel = false;
    });
  }
  for (auto& t : pool) t.join();
}

double binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  // Exact for the sizes used here (fits in a double's integer range).
  return std::round(r);
}

PauliString PauliString::single(int n, int qubit, Pauli p, Phase phase) {
  PauliString out(n);
  out.set_letter(qubit, p);
  out.set_phase(phase);
  return out;
}

bool PauliString::is_identity_letters() const {
  return std::all_of(letters_.begin(), letters_.end(),
                     [](Pauli p) { return p == Pauli::I; });
}

int PauliString::weight() const {
  int w = 0;
  for (Pauli p : letters_)
    if (p != Pauli::I) ++w;
  return w;
}

int PauliString::count_y() const {
  int w = 0;
  for (Pauli p : letters_)
    if (p == Pauli::Y) ++w;
  return w;
}

std::string PauliString::str() const {
  std::string s = phase_.str() == "+" ? "" : phase_.str();
  static const char table[4] = {'I', 'X', 'Y', 'Z'};
  for (Pauli p : letters_) s += table[static_cast<int>(p)];
  return s;
}

PauliString PauliString::parse(const std::string& text) {
  size_t pos = 0;
  Phase phase;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    bool neg = text[pos] == '-';
    ++pos;
    bool imag = pos < text.size() && text[pos] == 'i';
    if (imag) ++pos;
    int k = (imag ? 1 : 0) + (neg ? 2 : 0);
    phase = Phase(k);
  }
  std::vector<Pauli> letters;
  for (; pos < text.size(); ++pos) {
    switch (text[pos]) {
      case 'I': letters.push_back(Pauli::I); break;
      case 'X': letters.push_back(Pauli::X); break;
      case 'Y': letters.push_back(Pauli::Y); break;
      case 'Z': letters.push_back(Pauli::Z); break;
      default:
        throw std::invalid_argument("invalid Pauli letter '" + std::string(1, text[pos]) + "'");
    }
  }
  if (letters.empty()) throw std::invalid_argument("empty Pauli word");
  return PauliString(std::move(letters), phase);
}

namespace {

// Single-qubit products a*b = i^k * c over exponents of i.
// Rows/cols indexed by I,X,Y,Z.
struct SiteProduct {
  Pauli letter;
  int phase_k;
};

SiteProduct site_multiply(Pauli a, Pauli b) {
  static const SiteProduct table[4][4] = {
      // a = I
      {{Pauli::I, 0}, {Pauli::X, 0}, {Pauli::Y, 0}, {Pauli::Z, 0}},
      // a = X
      {{Pauli::X, 0}, {Pauli::I, 0}, {Pauli::Z, 1}, {Pauli::Y, 3}},
      // a = Y
      {{Pauli::Y, 0}, {Pauli::Z, 3}, {Pauli::I, 0}, {Pauli::X, 1}},
      // a = Z
      {{Pauli::Z, 0}, {Pauli::Y, 1}, {Pauli::X, 3}, {Pauli::I, 0}},
  };
  return table[static_cast<int>(a)][static_cast<int>(b)];
}

}  // namespace

PauliString pauli_multiply(const PauliString& p, const PauliString& q) {
  if (p.num_qubits() != q.num_qubits())
    throw std::invalid_argument("Pauli length mismatch");
  int n = p.num_qubits();
  std::vector<Pauli> letters(n);
  int k = p.phase().exponent() + q.phase().exponent();
  for (int i = 1; i <= n; ++i) {
    SiteProduct sp = site_multiply(p.letter(i), q.letter(i));
    letters[i - 1] = sp.letter;
    k += sp.phase_k;
  }
  return PauliString(std::move(letters), Phase(k));
}

bool commutes(const PauliString& p, const PauliString& q) {
  if (p.num_qubits() != q.num_qubits())
    throw std::invalid_argument("Pauli length mismatch");
  int anti = 0;
  for (int i = 1; i <= p.num_qubits(); ++i) {
    Pauli a = p.letter(i), b = q.letter(i);
    if (a != Pauli::I && b != Pauli::I && a != b) ++anti;
  }
  return (anti % 2) == 0;
}

PauliString majorana(int mu, int n) {
  if (mu < 1 || mu > 2 * n)
    throw std::invalid_argument("Majorana index " + std::to_string(mu) +
                                " out of range [1," + std::to_string(2 * n) + "]");
  int site = (mu + 1) / 2;  // qubit carrying the X or Y
  PauliString out(n);
  for (int i = 1; i < site; ++i) out.set_letter(i, Pauli::Z);
  out.set_letter(site, (mu % 2 == 1) ? Pauli::X : Pauli::Y);
  return out;
}

PauliString majorana_product(const std::vector<int>& nu, int n) {
  PauliString out = PauliString::identity(n);
  for (int mu : nu) out = pauli_multiply(out, majorana(mu, n));
  return out;
}

MajoranaIndexSet::MajoranaIndexSet(int n_, std::vector<int> idx) : n(n_), indices(std::move(idx)) {
  for (size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 1 || indices[i] > 2 * n)
      throw std::invalid_argument("Majorana index out of range");
    if (i > 0 && indices[i] <= indices[i - 1])
      throw std::invalid_argument("Majorana indices must be strictly increasing");
  }
}

PauliString hermitian_majorana_basis_op(const MajoranaIndexSet& v) {
  int m = v.m();
  PauliString word = majorana_product(v.indices, v.n);
  // h_m = (-i)^{m(m-1)/2} = i^{3*m(m-1)/2 mod 4}
  int hm_k = (3 * ((m * (m - 1) / 2) % 4)) % 4;
  word.set_phase(word.phase() * Phase(hm_k));
  if (!word.is_hermitian())
    throw std::logic_error("basis op phase not real");
  return word;
}

PauliMasks pauli_masks(const PauliString& p) {
  PauliMasks out;
  int n = p.num_qubits();
  for (int i = 1; i <= n; ++i) {
    uint64_t bit = 1ULL << (n - i);  // qubit 1 = most significant bit
    switch (p.letter(i)) {
      case Pauli::I: break;
      case Pauli::X: out.xmask |= bit; break;
      case Pauli::Y: out.xmask |= bit; out.zmask |= bit; ++out.ny; break;
      case Pauli::Z: out.zmask |= bit; break;
    }
  }
  return out;
}

Eigen::MatrixXcd to_matrix(const PauliString& p) {
  int n = p.num_qubits();
  check_dense_cap(n);
  int64_t d = int64_t(1) << n;
  PauliMasks mk = pauli_masks(p);
  std::complex<double> base = Phase(mk.ny).value() * p.phase().value();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (int64_t j = 0; j < d; ++j) {
    int par = __builtin_popcountll(static_cast<uint64_t>(j) & mk.zmask) & 1;
    out(j ^ mk.xmask, j) = par ? -base : base;
  }
  return out;
}

}  // namespace matchgp
