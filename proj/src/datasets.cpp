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

#include "matchgp/datasets.hpp"

#include <cmath>

namespace matchgp {

namespace {

// Deterministic B_1 Pauli pick: the Majorana word C_1 (X on qubit 1).
ModuleCoefficients b1_observable(int n) {
  return project_pauli_observable(majorana(1, n), 1);
}

}  // namespace

SyntheticB1Task make_synthetic_b1_task(int n, const std::vector<double>& inputs,
                                       uint64_t dataset_seed, uint64_t unitary_seed) {
  ModuleCoefficients obs = b1_observable(n);
  Rng rng = substream(unitary_seed, 0);
  OrthogonalMatrix q = haar_so(2 * n, rng);
  ModuleCoefficients heis = transform_coeffs(obs, OrthogonalMatrix{q.q.transpose()});
  SyntheticB1Task task{n, std::move(obs), std::move(heis), inputs, {}, {}};
  task.coeffs.reserve(inputs.size());
  for (double t : inputs) {
    QuantumState state = synthetic_state(t, n, dataset_seed);
    task.coeffs.push_back(project_state(state, 1));
    // Orthonormal basis: Tr[U rho U^dag O] is the plain coefficient dot.
    task.labels.push_back(overlap(task.obs_heisenberg, task.coeffs.back()));
  }
  return task;
}

Synthetic2dTask make_synthetic_2d_task(int n, double step, uint64_t dataset_seed,
                                       uint64_t unitary_seed) {
  Synthetic2dTask task;
  task.n = n;
  task.step = step;
  task.side = static_cast<int>(std::floor(3.0 / step)) + 1;
  int64_t grid = static_cast<int64_t>(task.side) * task.side;
  task.objective.resize(grid);
  ModuleCoefficients obs = b1_observable(n);
  task.kernel_prefactor = matchgate_kernel_prefactor(obs, KernelMode::Exact);
  Rng rng = substream(unitary_seed, 0);
  OrthogonalMatrix q = haar_so(2 * n, rng);
  ModuleCoefficients heis = transform_coeffs(obs, OrthogonalMatrix{q.q.transpose()});
  task.features.resize(2 * n, grid);
  parallel_for(0, grid, [&](int64_t g) {
    double t1 = (g / task.side) * step;
    double t2 = (g % task.side) * step;
    QuantumState state = synthetic_state_2d(t1, t2, n, dataset_seed);
    ModuleCoefficients c = project_state(state, 1);
    task.features.col(g) = c.values();
    task.objective[g] = heis.values().dot(c.values());
  });
  for (int64_t g = 1; g < grid; ++g)
    if (task.objective[g] > task.objective[task.argmax]) task.argmax = g;
  return task;
}

double XxxTask::kernel(int64_t i, int64_t j) const {
  return multi_sector_kernel({b2_coeffs[i], b4_coeffs[i]}, {b2_coeffs[j], b4_coeffs[j]},
                             {b2_sector, b4_sector});
}

XxxTask make_xxx_task(int n, int num_points) {
  int mid = n / 2;
  // Order-parameter proxy at the chain center: XX + YY in B_2, ZZ in B_4.
  PauliString xx(n), yy(n), zz(n);
  xx.set_letter(mid, Pauli::X);
  xx.set_letter(mid + 1, Pauli::X);
  yy.set_letter(mid, Pauli::Y);
  yy.set_letter(mid + 1, Pauli::Y);
  zz.set_letter(mid, Pauli::Z);
  zz.set_letter(mid + 1, Pauli::Z);
  ModuleCoefficients b2_obs(n, 2, CoeffKind::Observable);
  b2_obs.values() =
      project_pauli_observable(xx, 2).values() + project_pauli_observable(yy, 2).values();
  ModuleCoefficients b4_obs = project_pauli_observable(zz, 4);
  XxxTask task{n, {}, {}, {}, {}, {b2_obs, KernelMode::Exact}, {b4_obs, KernelMode::Asymptotic}};

  std::vector<QuantumState> states;
  for (int i = 1; i <= num_points; ++i) {
    double ratio = 2.0 * i / num_points;  // J1/J2 in (0, 2]
    task.ratios.push_back(ratio);
    HamiltonianSpec spec{HamiltonianSpec::Variant::XxxBondAlternating, n,
                         {{"J1", ratio}, {"J2", 1.0}}};
    states.push_back(ground_state(spec));
  }
  task.b2_coeffs.reserve(num_points);
  task.b4_coeffs.reserve(num_points);
  for (const auto& s : states) {
    task.b2_coeffs.push_back(project_state(s, 2));
    task.b4_coeffs.push_back(project_state(s, 4));
    double op = s.expectation(xx) + s.expectation(yy) + s.expectation(zz);
    task.order_parameter.push_back(op);
  }
  return task;
}

double MagnetometryTask::kernel(int64_t i, int64_t j) const {
  double d = std::pow(2.0, n);
  return kernel_prefactor * d * b2_frames_flat.col(i).dot(b2_frames_flat.col(j));
}

MagnetometryTask make_magnetometry_task(int n, double step, double delta_alpha) {
  MagnetometryTask task;
  task.n = n;
  task.delta_alpha = delta_alpha;
  double lo = M_PI / 8.0, hi = 15.0 * M_PI / 8.0;
  for (double t = lo; t <= hi + 1e-12; t += step) task.grid.push_back(t);
  int64_t grid = static_cast<int64_t>(task.grid.size());

  // O = sum_i X_i X_{i+1} in B_2.
  ModuleCoefficients obs(n, 2, CoeffKind::Observable);
  for (int i = 1; i < n; ++i) {
    PauliString xx(n);
    xx.set_letter(i, Pauli::X);
    xx.set_letter(i + 1, Pauli::X);
    obs.values() += project_pauli_observable(xx, 2).values();
  }
  task.kernel_prefactor = matchgate_kernel_prefactor(obs, KernelMode::Exact);

  int64_t coeff_dim = obs.size();
  task.b2_frames_flat.resize(coeff_dim, grid);
  task.observation.resize(grid);
  std::vector<PauliString> obs_terms;
  for (int i = 1; i < n; ++i) {
    PauliString xx(n);
    xx.set_letter(i, Pauli::X);
    xx.set_letter(i + 1, Pauli::X);
    obs_terms.push_back(xx);
  }
  parallel_for(0, grid, [&](int64_t g) {
    QuantumState probe = probe_state(task.grid[g], n);
    QuantumState evolved = apply_field(probe, task.delta_alpha);
    double y = 0.0;
    for (const auto& term : obs_terms) y += evolved.expectation(term);
    task.observation[g] = y;
    task.b2_frames_flat.col(g) = project_state(evolved, 2).values();
  });
  for (int64_t g = 1; g < grid; ++g) {
    if (task.observation[g] * task.observation[g] >
        task.observation[task.argmax] * task.observation[task.argmax])
      task.argmax = g;
  }
  return task;
}

BenchRegressionTask make_bench_regression_task(int n, const std::vector<double>& inputs,
                                               uint64_t unitary_seed) {
  PauliString z1 = PauliString::single(n, 1, Pauli::Z);
  ModuleCoefficients obs = project_pauli_observable(z1, 2);
  Rng rng = substream(unitary_seed, 0);
  OrthogonalMatrix q = haar_so(2 * n, rng);
  ModuleCoefficients heis = transform_coeffs(obs, OrthogonalMatrix{q.q.transpose()});
  BenchRegressionTask task{n, std::move(obs), std::move(heis), inputs, {}, {}};
  for (double t : inputs) {
    double angle = 2.0 * M_PI * (std::sin(t) + std::cos(2.0 * t) / 2.0);
    // Same rotation on every qubit: about x then y by `angle`.
    Eigen::Matrix2cd rx, ry;
    std::complex<double> im(0.0, 1.0);
    rx << std::cos(angle / 2.0), -im * std::sin(angle / 2.0), -im * std::sin(angle / 2.0),
        std::cos(angle / 2.0);
    ry << std::cos(angle / 2.0), -std::sin(angle / 2.0), std::sin(angle / 2.0),
        std::cos(angle / 2.0);
    QuantumState state = QuantumState::zero(n);
    {
      Eigen::VectorXcd v = state.amplitudes();
      for (int qubit = 1; qubit <= n; ++qubit) {
        int64_t bit = int64_t(1) << (n - qubit);
        for (int64_t j = 0; j < v.size(); ++j) {
          if (j & bit) continue;
          std::complex<double> a0 = v(j), a1 = v(j | bit);
          v(j) = rx(0, 0) * a0 + rx(0, 1) * a1;
          v(j | bit) = rx(1, 0) * a0 + rx(1, 1) * a1;
        }
        for (int64_t j = 0; j < v.size(); ++j) {
          if (j & bit) continue;
          std::complex<double> a0 = v(j), a1 = v(j | bit);
          v(j) = ry(0, 0) * a0 + ry(0, 1) * a1;
          v(j | bit) = ry(1, 0) * a0 + ry(1, 1) * a1;
        }
      }
      v /= v.norm();
      state = QuantumState::pure(n, std::move(v));
    }
    task.coeffs.push_back(project_state(state, 2));
    task.labels.push_back(task.obs_heisenberg.values().dot(task.coeffs.back().values()));
  }
  return task;
}

std::map<std::string, double> psd_bench_trial(const BenchRegressionTask& task,
                                              const std::vector<int64_t>& train_idx,
                                              const std::vector<int64_t>& test_idx,
                                              int64_t n_obs, int64_t n_kappa, uint64_t seed) {
  int n = task.n;
  int64_t nt = static_cast<int64_t>(train_idx.size());
  int64_t ns = static_cast<int64_t>(test_idx.size());
  double prefactor = matchgate_kernel_prefactor(task.obs, KernelMode::Exact);

  KernelMatrix gram;
  gram.values.resize(nt, nt);
  gram.noise_variance = Eigen::MatrixXd::Zero(nt, nt);
  gram.labels.assign(nt, "");
  gram.prefactor = prefactor;
  for (int64_t i = 0; i < nt; ++i)
    for (int64_t j = 0; j < nt; ++j)
      gram.values(i, j) = matchgate_kernel(task.coeffs[train_idx[i]], task.coeffs[train_idx[j]],
                                           task.obs, KernelMode::Exact);
  Eigen::MatrixXd cross(ns, nt);
  Eigen::VectorXd test_prior(ns);
  for (int64_t t = 0; t < ns; ++t) {
    for (int64_t j = 0; j < nt; ++j)
      cross(t, j) = matchgate_kernel(task.coeffs[test_idx[t]], task.coeffs[train_idx[j]],
                                     task.obs, KernelMode::Exact);
    test_prior(t) = matchgate_kernel(task.coeffs[test_idx[t]], task.coeffs[test_idx[t]],
                                     task.obs, KernelMode::Exact);
  }

  Rng rng = substream(seed, 0);
  Eigen::VectorXd y(nt), r(nt);
  for (int64_t i = 0; i < nt; ++i) {
    NoisyValue nv = noisy_observation(task.labels[train_idx[i]], n_obs, rng);
    y(i) = nv.value;
    r(i) = std::max(nv.variance, 1e-12);
  }
  KernelMatrix noisy = noisy_kernel(gram, 2, n, n_kappa, rng);
  double sigma_kappa = std::sqrt(noisy.noise_variance(0, 0));
  Eigen::MatrixXd noisy_cross = noisy_cross_kernel(cross, prefactor, 2, n, n_kappa, rng);

  auto mse_of = [&](const KernelMatrix& k, double shift) {
    Eigen::VectorXd r_used = r.array() + shift;
    GPModel model(k, y, r_used);
    double mse = 0.0;
    for (int64_t t = 0; t < ns; ++t) {
      Posterior post = model.posterior(test_prior(t), noisy_cross.row(t).transpose());
      double err = post.mean - task.labels[test_idx[t]];
      mse += err * err;
    }
    return mse / ns;
  };

  std::map<std::string, double> out;
  out["none"] = mse_of(noisy, 0.0);
  out["clip"] = mse_of(psd_clip(noisy), 0.0);
  {
    auto res = psd_shift_min(noisy);
    // The shift lives in R; keep the Gram itself unshifted.
    out["shift_min"] = mse_of(noisy, res.shift);
  }
  {
    auto res = psd_shift_wigner(noisy, nt, sigma_kappa);
    out["shift_wigner"] = mse_of(noisy, res.shift);
  }
  return out;
}

KernelIdTask make_kernel_id_task(int n, int target, const std::vector<double>& inputs,
                                 uint64_t dataset_seed, uint64_t unitary_seed) {
  KernelIdTask task;
  task.n = n;
  task.target = target;
  task.inputs = inputs;
  int64_t count = static_cast<int64_t>(inputs.size());

  // Reduced single-qubit density matrices per state and qubit.
  std::vector<std::vector<Eigen::Matrix2cd>> reduced(count);
  for (int64_t i = 0; i < count; ++i) {
    QuantumState state = synthetic_state(inputs[i], n, dataset_seed, 1);
    const Eigen::VectorXcd& psi = state.amplitudes();
    reduced[i].resize(n);
    for (int qubit = 1; qubit <= n; ++qubit) {
      int64_t bit = int64_t(1) << (n - qubit);
      Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
      // Direct partial trace: rho_{ab} = sum over the other bits.
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          std::complex<double> acc = 0.0;
          for (int64_t j = 0; j < psi.size(); ++j) {
            if (((j & bit) != 0) != (a == 1)) continue;
            int64_t k = b ? (j | bit) : (j & ~bit);
            acc += psi(j) * std::conj(psi(k));
          }
          rho(a, b) = acc;
        }
      }
      reduced[i][qubit - 1] = rho;
    }
  }

  // Base kernels kappa_i(t, t') = (1/4) * 2 * Tr[rho_i(t) rho_i(t')].
  for (int qubit = 1; qubit <= n; ++qubit) {
    Eigen::MatrixXd gram(count, count);
    for (int64_t i = 0; i < count; ++i)
      for (int64_t j = 0; j < count; ++j)
        gram(i, j) = 0.5 * (reduced[i][qubit - 1] * reduced[j][qubit - 1]).trace().real();
    task.base_grams.push_back(gram);
  }

  // Labels: a Haar single-qubit unitary on the target qubit, measured in Z.
  Rng rng = substream(unitary_seed, 0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix2cd g;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) g(r, c) = std::complex<double>(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(g);
  Eigen::Matrix2cd u = qr.householderQ();
  Eigen::Matrix2cd z;
  z << 1, 0, 0, -1;
  Eigen::Matrix2cd heis = u.adjoint() * z * u;
  task.labels.resize(count);
  for (int64_t i = 0; i < count; ++i)
    task.labels(i) = (reduced[i][target - 1] * heis).trace().real();
  return task;
}

}  // namespace matchgp
