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

#include "matchgp/states.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <map>
#include <mutex>

namespace matchgp {

namespace {
constexpr double kStateTol = 1e-10;
}

QuantumState QuantumState::pure(int n, Eigen::VectorXcd amplitudes) {
  check_dense_cap(n);
  if (amplitudes.size() != (int64_t(1) << n))
    throw std::invalid_argument("amplitude vector has wrong length");
  if (std::abs(amplitudes.norm() - 1.0) > kStateTol)
    throw std::invalid_argument("state vector not normalized");
  QuantumState s;
  s.n_ = n;
  s.pure_ = true;
  s.amps_ = std::move(amplitudes);
  return s;
}

QuantumState QuantumState::mixed(int n, Eigen::MatrixXcd density) {
  check_dense_cap(n);
  int64_t d = int64_t(1) << n;
  if (density.rows() != d || density.cols() != d)
    throw std::invalid_argument("density matrix has wrong shape");
  if ((density - density.adjoint()).cwiseAbs().maxCoeff() > kStateTol)
    throw std::invalid_argument("density matrix not Hermitian");
  if (std::abs(density.trace().real() - 1.0) > kStateTol)
    throw std::invalid_argument("density matrix trace != 1");
  QuantumState s;
  s.n_ = n;
  s.pure_ = false;
  s.dens_ = std::move(density);
  s.dens_valid_ = true;
  return s;
}

QuantumState QuantumState::zero(int n) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(int64_t(1) << n);
  amps(0) = 1.0;
  return pure(n, std::move(amps));
}

const Eigen::VectorXcd& QuantumState::amplitudes() const {
  if (!pure_) throw std::logic_error("mixed state has no amplitude vector");
  return amps_;
}

const Eigen::MatrixXcd& QuantumState::density_view() const {
  if (!dens_valid_) {
    dens_ = amps_ * amps_.adjoint();
    dens_valid_ = true;
  }
  return dens_;
}

Eigen::MatrixXcd QuantumState::density() const { return density_view(); }

double QuantumState::expectation(const PauliString& p) const {
  if (!p.is_hermitian()) throw std::invalid_argument("expectation needs phase +-1");
  if (p.num_qubits() != n_) throw std::invalid_argument("qubit count mismatch");
  PauliMasks mk = pauli_masks(p);
  std::complex<double> base = Phase(mk.ny).value() * p.phase().value();
  std::complex<double> acc = 0.0;
  int64_t d = int64_t(1) << n_;
  if (pure_) {
    for (int64_t j = 0; j < d; ++j) {
      int par = __builtin_popcountll(static_cast<uint64_t>(j) & mk.zmask) & 1;
      acc += (par ? -base : base) * std::conj(amps_(j ^ mk.xmask)) * amps_(j);
    }
  } else {
    for (int64_t j = 0; j < d; ++j) {
      int par = __builtin_popcountll(static_cast<uint64_t>(j) & mk.zmask) & 1;
      acc += (par ? -base : base) * dens_(j, j ^ mk.xmask);
    }
  }
  return acc.real();
}

double QuantumState::fidelity_overlap(const QuantumState& other) const {
  if (n_ != other.n_) throw std::invalid_argument("qubit count mismatch");
  if (pure_ && other.pure_) return std::norm(amps_.dot(other.amps_));
  return (density_view() * other.density_view()).trace().real();
}

double QuantumState::subsystem_entropy(int k) const {
  if (!pure_) throw std::logic_error("subsystem entropy implemented for pure states");
  int64_t da = int64_t(1) << k;
  int64_t db = int64_t(1) << (n_ - k);
  Eigen::MatrixXcd m(da, db);
  for (int64_t a = 0; a < da; ++a)
    for (int64_t b = 0; b < db; ++b) m(a, b) = amps_(a * db + b);
  Eigen::MatrixXcd rho_a = m * m.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_a);
  double h = 0.0;
  for (int64_t i = 0; i < da; ++i) {
    double lam = es.eigenvalues()(i);
    if (lam > 1e-14) h -= lam * std::log2(lam);
  }
  return h;
}

namespace {

void apply_single_qubit(Eigen::VectorXcd& psi, int n, int qubit,
                        const Eigen::Matrix2cd& u) {
  int64_t bit = int64_t(1) << (n - qubit);
  int64_t d = psi.size();
  for (int64_t j = 0; j < d; ++j) {
    if (j & bit) continue;
    std::complex<double> a0 = psi(j), a1 = psi(j | bit);
    psi(j) = u(0, 0) * a0 + u(0, 1) * a1;
    psi(j | bit) = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

Eigen::Matrix2cd pauli_rotation(Pauli p, double angle) {
  // exp(-i * angle * P)
  std::complex<double> i(0.0, 1.0);
  Eigen::Matrix2cd m;
  double c = std::cos(angle), s = std::sin(angle);
  switch (p) {
    case Pauli::X: m << c, -i * s, -i * s, c; break;
    case Pauli::Y: m << c, -s, s, c; break;
    case Pauli::Z: m << c - i * s, 0, 0, c + i * s; break;
    default: m.setIdentity(); break;
  }
  return m;
}

void apply_cnot(Eigen::VectorXcd& psi, int n, int control, int target) {
  int64_t cbit = int64_t(1) << (n - control);
  int64_t tbit = int64_t(1) << (n - target);
  int64_t d = psi.size();
  for (int64_t j = 0; j < d; ++j) {
    if ((j & cbit) && !(j & tbit)) std::swap(psi(j), psi(j | tbit));
  }
}

void apply_crz(Eigen::VectorXcd& psi, int n, int control, int target, double theta) {
  int64_t cbit = int64_t(1) << (n - control);
  int64_t tbit = int64_t(1) << (n - target);
  std::complex<double> ph = std::exp(std::complex<double>(0.0, theta));
  int64_t d = psi.size();
  for (int64_t j = 0; j < d; ++j) {
    if ((j & cbit) && (j & tbit)) psi(j) *= ph;
  }
}

}  // namespace

QuantumState synthetic_state(double t, int n, uint64_t seed, int layers) {
  check_dense_cap(n);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(int64_t(1) << n);
  psi(0) = 1.0;
  for (int layer = 0; layer < layers; ++layer) {
    for (int q = 1; q <= n; ++q) {
      Rng rng = substream(seed, uint64_t(layer) * n + (q - 1));
      std::uniform_int_distribution<int> axis(1, 3);
      std::normal_distribution<double> gauss(0.0, 1.0);
      Pauli p = static_cast<Pauli>(axis(rng));
      double alpha = gauss(rng);
      apply_single_qubit(psi, n, q, pauli_rotation(p, M_PI * alpha * t));
    }
    for (int q = 1; q < n; ++q) apply_cnot(psi, n, q, q + 1);
  }
  psi /= psi.norm();
  return QuantumState::pure(n, std::move(psi));
}

QuantumState synthetic_state_2d(double t1, double t2, int n, uint64_t seed) {
  check_dense_cap(n);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(int64_t(1) << n);
  psi(0) = 1.0;
  for (int q = 1; q <= n; ++q) {
    Rng rng = substream(seed, q - 1);
    std::uniform_int_distribution<int> axis(1, 3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Pauli p = static_cast<Pauli>(axis(rng));
    double alpha = gauss(rng);
    apply_single_qubit(psi, n, q, pauli_rotation(p, M_PI * alpha * t1));
  }
  for (int q = 1; q < n; ++q) {
    Rng rng = substream(seed, 1000 + q);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double beta = gauss(rng);
    apply_crz(psi, n, q, q + 1, M_PI * beta * t2);
  }
  psi /= psi.norm();
  return QuantumState::pure(n, std::move(psi));
}

QuantumState gaussian_state(const Eigen::MatrixXd& h, int n) {
  check_dense_cap(n);
  if (h.rows() != 2 * n || h.cols() != 2 * n)
    throw std::invalid_argument("h must be 2n x 2n");
  if ((h + h.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("h must be antisymmetric");
  int64_t d = int64_t(1) << n;
  Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(d, d);
  for (int mu = 1; mu <= 2 * n; ++mu) {
    for (int nu = mu + 1; nu <= 2 * n; ++nu) {
      if (h(mu - 1, nu - 1) == 0.0) continue;
      PauliString word = majorana_product({mu, nu}, n);
      gen += 2.0 * h(mu - 1, nu - 1) * to_matrix(word);
    }
  }
  Eigen::MatrixXcd u = gen.exp();
  Eigen::VectorXcd psi = u.col(0);
  psi /= psi.norm();
  return QuantumState::pure(n, std::move(psi));
}

QuantumState magic_extent_state(double theta, int n) {
  if (n % 4 != 0) throw std::invalid_argument("magic extent state needs n divisible by 4");
  check_dense_cap(n);
  Eigen::VectorXcd block = Eigen::VectorXcd::Zero(16);
  block(0) = std::cos(theta / 4.0);
  block(15) = std::sin(theta / 4.0);
  Eigen::VectorXcd psi = block;
  for (int b = 1; b < n / 4; ++b) {
    Eigen::VectorXcd next(psi.size() * 16);
    for (int64_t i = 0; i < psi.size(); ++i)
      for (int64_t j = 0; j < 16; ++j) next(i * 16 + j) = psi(i) * block(j);
    psi = std::move(next);
  }
  return QuantumState::pure(n, std::move(psi));
}

QuantumState random_fermionic_state(int n, uint64_t seed) {
  check_dense_cap(n);
  int64_t d = int64_t(1) << n;
  Rng rng = substream(seed, 0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
  for (int64_t j = 0; j < d; ++j) {
    if (__builtin_popcountll(j) % 2 == 0)
      psi(j) = std::complex<double>(gauss(rng), gauss(rng));
  }
  psi /= psi.norm();
  return QuantumState::pure(n, std::move(psi));
}

Eigen::MatrixXd build_hamiltonian(const HamiltonianSpec& spec) {
  int n = spec.n;
  check_dense_cap(n);
  int64_t d = int64_t(1) << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  auto term = [&](const PauliString& p, double coeff) {
    if (coeff != 0.0) h += coeff * to_matrix(p).real();
  };
  auto two_site = [&](int i, Pauli a, Pauli b) {
    PauliString p(n);
    p.set_letter(i, a);
    p.set_letter(i + 1, b);
    return p;
  };
  auto get = [&](const std::string& key) {
    auto it = spec.parameters.find(key);
    if (it == spec.parameters.end())
      throw std::invalid_argument("missing Hamiltonian parameter " + key);
    if (!std::isfinite(it->second)) throw std::invalid_argument("parameter not finite: " + key);
    return it->second;
  };
  switch (spec.variant) {
    case HamiltonianSpec::Variant::XxxBondAlternating: {
      double j1 = get("J1"), j2 = get("J2");
      for (int i = 1; i < n; ++i) {
        double j = (i % 2 == 1) ? j1 : j2;
        term(two_site(i, Pauli::X, Pauli::X), j);
        term(two_site(i, Pauli::Y, Pauli::Y), j);
        term(two_site(i, Pauli::Z, Pauli::Z), j);
      }
      break;
    }
    case HamiltonianSpec::Variant::XxzAlternatingField: {
      // H = sum_i h^i Z_i - J sum (XX + YY) + J_z sum ZZ.
      double h1 = get("h1"), h2 = get("h2"), j = get("J"), jz = get("Jz");
      for (int i = 1; i <= n; ++i)
        term(PauliString::single(n, i, Pauli::Z), (i % 2 == 1) ? h1 : h2);
      for (int i = 1; i < n; ++i) {
        term(two_site(i, Pauli::X, Pauli::X), -j);
        term(two_site(i, Pauli::Y, Pauli::Y), -j);
        term(two_site(i, Pauli::Z, Pauli::Z), jz);
      }
      break;
    }
    case HamiltonianSpec::Variant::Magnetometry: {
      double alpha = get("alpha");
      for (int i = 1; i <= n; ++i)
        term(PauliString::single(n, i, Pauli::Z), alpha / 2.0);
      break;
    }
  }
  return h;
}

QuantumState ground_state(const HamiltonianSpec& spec) {
  Eigen::MatrixXd h = build_hamiltonian(spec);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  Eigen::VectorXcd psi = es.eigenvectors().col(0).cast<std::complex<double>>();
  psi /= psi.norm();
  return QuantumState::pure(spec.n, std::move(psi));
}

namespace {

struct TwistEigen {
  Eigen::MatrixXd vectors;
  Eigen::VectorXd values;
};

const TwistEigen& twist_eigen(int n) {
  static std::map<int, TwistEigen> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  int64_t d = int64_t(1) << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      PauliString p(n);
      p.set_letter(i, Pauli::X);
      p.set_letter(j, Pauli::X);
      h += to_matrix(p).real();
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  TwistEigen te{es.eigenvectors(), es.eigenvalues()};
  return cache.emplace(n, std::move(te)).first->second;
}

}  // namespace

QuantumState probe_state(double t, int n, bool unitary) {
  check_dense_cap(n);
  const TwistEigen& te = twist_eigen(n);
  Eigen::VectorXd e0 = te.vectors.row(0).transpose();  // V^T |0...0>
  Eigen::VectorXcd psi;
  if (unitary) {
    Eigen::VectorXcd phased(e0.size());
    for (int64_t k = 0; k < e0.size(); ++k)
      phased(k) = e0(k) * std::exp(std::complex<double>(0.0, -t * te.values(k)));
    psi = te.vectors.cast<std::complex<double>>() * phased;
  } else {
    Eigen::VectorXd scaled(e0.size());
    double vmax = (t * te.values).maxCoeff();
    for (int64_t k = 0; k < e0.size(); ++k)
      scaled(k) = e0(k) * std::exp(t * te.values(k) - vmax);
    Eigen::VectorXd real_psi = te.vectors * scaled;
    psi = real_psi.cast<std::complex<double>>();
  }
  psi /= psi.norm();
  return QuantumState::pure(n, std::move(psi));
}

QuantumState apply_field(const QuantumState& probe, double alpha) {
  int n = probe.n();
  Eigen::VectorXcd psi = probe.amplitudes();
  for (int64_t j = 0; j < psi.size(); ++j) {
    double z = n - 2.0 * __builtin_popcountll(j);
    psi(j) *= std::exp(std::complex<double>(0.0, -0.5 * alpha * z));
  }
  return QuantumState::pure(n, std::move(psi));
}

}  // namespace matchgp
