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

#include <doctest.h>

#include <random>

#include "matchgp/moments.hpp"
#include "matchgp/states.hpp"
#include "matchgp/transform.hpp"

using namespace matchgp;

TEST_CASE("isserlis moments") {
  Eigen::MatrixXd cov(2, 2);
  cov << 1.3, 0.4, 0.4, 0.9;
  CHECK(isserlis_moment(cov, {0, 1}) == doctest::Approx(0.4));
  CHECK(isserlis_moment(cov, {0, 0, 0}) == 0.0);
  // Univariate k = 4: 3 sigma^4.
  CHECK(isserlis_moment(cov, {0, 0, 0, 0}) == doctest::Approx(3.0 * 1.3 * 1.3));
  // Mixed k = 4 pairing sum: c00 c11 + 2 c01^2.
  CHECK(isserlis_moment(cov, {0, 0, 1, 1}) ==
        doctest::Approx(1.3 * 0.9 + 2.0 * 0.4 * 0.4));
  // k = 6 univariate: 15 sigma^6.
  CHECK(isserlis_moment(cov, {1, 1, 1, 1, 1, 1}) ==
        doctest::Approx(15.0 * std::pow(0.9, 3)));
}

TEST_CASE("moment report calibrates on synthetic Gaussian input") {
  const int64_t draws = 100000;
  Eigen::MatrixXd samples(draws, 2);
  for (int64_t i = 0; i < draws; ++i) {
    Rng rng = substream(101, i);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double a = gauss(rng), b = gauss(rng);
    samples(i, 0) = a;
    samples(i, 1) = 0.6 * a + 0.8 * b;
  }
  MomentReport report = moment_report(samples, 6);
  CHECK(report.max_abs_z <= 4.0);
  CHECK(std::abs(report.skewness[0]) < 0.05);
  CHECK(std::abs(report.excess_kurtosis[0]) < 0.1);
  CHECK_THROWS_AS(moment_report(Eigen::MatrixXd::Zero(10, 2), 4), std::invalid_argument);
}

TEST_CASE("schatten ratio exact anchors") {
  // Gaussian state, m = 2: ratio = 1/(2n) at ell = 2.
  for (int n : {2, 3, 4}) {
    ModuleCoefficients c = project_state(QuantumState::zero(n), 2);
    CHECK(schatten_ratio(coeffs_as_matrix(c), 2) ==
          doctest::Approx(1.0 / (2.0 * n)).epsilon(1e-12));
  }

  // Gaussian state, m = 4: ratio^2 = (n^2 - 3n + 5) / (9 n (n - 1)).
  for (int n : {4, 6}) {
    ModuleCoefficients c = zero_state_coeffs(n, 4);
    double expected = (n * n - 3.0 * n + 5.0) / (9.0 * n * (n - 1.0));
    CHECK(schatten_ratio(coeffs_as_matrix(c), 2) == doctest::Approx(expected).epsilon(1e-10));
  }

  // Pauli observable, m = 4: ratio^2 = 1/6 for all n.
  for (int n : {3, 5}) {
    PauliString zz(n);
    zz.set_letter(1, Pauli::Z);
    zz.set_letter(2, Pauli::Z);
    ModuleCoefficients obs = project_pauli_observable(zz, 4);
    CHECK(schatten_ratio(coeffs_as_matrix(obs), 2) == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  }

  // Scale invariance.
  ModuleCoefficients c = project_state(synthetic_state(0.5, 3, 5), 2);
  Eigen::MatrixXd m = coeffs_as_matrix(c);
  CHECK(schatten_ratio(m, 4) == doctest::Approx(schatten_ratio(3.7 * m, 4)).epsilon(1e-12));
  CHECK_THROWS_AS(schatten_ratio(m, 3), std::invalid_argument);
}

TEST_CASE("B_2 product condition bound") {
  // observable ratio x state ratio <= 1; for Gaussian states the state
  // factor alone is 1/(2n).
  int n = 3;
  ModuleCoefficients state = project_state(QuantumState::zero(n), 2);
  ModuleCoefficients obs = project_pauli_observable(PauliString::single(n, 1, Pauli::Z), 2);
  double rho_ratio = schatten_ratio(coeffs_as_matrix(state), 2);
  double obs_ratio = schatten_ratio(coeffs_as_matrix(obs), 2);
  CHECK(rho_ratio == doctest::Approx(1.0 / (2.0 * n)));
  CHECK(rho_ratio * obs_ratio <= 1.0 / (2.0 * n) + 1e-12);
  CHECK(obs_ratio <= 1.0 + 1e-12);
}

TEST_CASE("catalan convergence, small sample") {
  auto cells = catalan_convergence_check({30}, {2, 4}, 40, 202);
  for (const auto& cell : cells) {
    double tol = cell.ell == 2 ? 0.15 : 0.3;
    CHECK(std::abs(cell.mean_scaled_ratio - cell.catalan) / cell.catalan < tol);
  }
  // Deviation from Cat(2) shrinks with n.
  auto trend = catalan_convergence_check({4, 64}, {2}, 60, 203);
  double dev_small = std::abs(trend[0].mean_scaled_ratio - 2.0);
  double dev_large = std::abs(trend[1].mean_scaled_ratio - 2.0);
  CHECK(dev_large < dev_small);
}

TEST_CASE("multivariate B_2 overlap bound diagnostic") {
  int n = 4;
  double d = std::pow(2.0, n);
  Eigen::MatrixXd overlaps(2, 2);
  overlaps << n / d, 0.0, 0.0, n / d;  // identical states on the diagonal
  auto flags = multivariate_b2_bound_check(overlaps, n);
  CHECK(flags(0, 0));
  CHECK_FALSE(flags(0, 1));  // zero overlap is never certified
}

TEST_CASE("magic distribution check, small") {
  auto rows = magic_state_distribution_check({0.0, 2.0 * M_PI / 3.0}, 8, 20000, 404);
  for (const auto& row : rows) {
    CHECK(row.empirical_std == doctest::Approx(row.predicted_std).epsilon(0.03));
    CHECK(row.kl_divergence < 0.01);
  }
  // theta = pi: predicted std 0; all samples vanish.
  auto degenerate = magic_state_distribution_check({M_PI}, 8, 2000, 405);
  CHECK(degenerate[0].empirical_std < 1e-12);
}

TEST_CASE("odd moments vanish for special partition observables") {
  // m = 2 partition observable on a synthetic state: orders 1, 3, 5.
  int n = 4;
  ModuleCoefficients obs =
      special_partition_observable(n, {{1, 2}, {3, 4}, {5, 6}, {7, 8}}, {1.0, -0.5, 2.0, 1.0});
  ModuleCoefficients state = project_state(synthetic_state(0.7, n, 21), 2);
  Eigen::MatrixXd draws = sample_batch({state}, obs, 60000, 505);
  MomentReport report = moment_report(draws, 5);
  for (const auto& check : report.checks) {
    if (check.indices.size() % 2 == 1) REQUIRE(std::abs(check.z) <= 4.0);
  }
}

TEST_CASE("odd moments vanish exactly for m = 2 and for odd m") {
  // Exact at any n (the -Q symmetry), so large samples are fine here.
  int n = 5;
  // m = 2, non-Gaussian state, multi-coefficient observable.
  {
    ModuleCoefficients obs(n, 2, CoeffKind::Observable);
    obs.values() =
        project_pauli_observable(PauliString::single(n, 1, Pauli::Z), 2).values() +
        0.6 * project_pauli_observable(PauliString::single(n, 3, Pauli::Z), 2).values();
    ModuleCoefficients state = project_state(synthetic_state(0.8, n, 61), 2);
    Eigen::MatrixXd draws = sample_batch({state}, obs, 100000, 606);
    MomentReport report = moment_report(draws, 5);
    for (const auto& check : report.checks)
      if (check.indices.size() % 2 == 1) REQUIRE(std::abs(check.z) <= 4.0);
  }
  // Odd m = 3: every odd moment is zero since mk is odd.
  {
    PauliString word = majorana_product({1, 2, 3}, n);
    word = hermitian_majorana_basis_op(MajoranaIndexSet(n, {1, 2, 3}));
    ModuleCoefficients obs = project_pauli_observable(word, 3);
    ModuleCoefficients state = project_state(random_fermionic_state(n, 62), 3);
    Eigen::MatrixXd draws = sample_batch({state}, obs, 50000, 607);
    MomentReport report = moment_report(draws, 5);
    for (const auto& check : report.checks)
      if (check.indices.size() % 2 == 1) REQUIRE(std::abs(check.z) <= 4.0);
  }
}

TEST_CASE("gaussian + pauli B_4 is non-Gaussian at n = 8") {
  ModuleCoefficients state = zero_state_coeffs(8, 4);
  PauliString zz(8);
  zz.set_letter(1, Pauli::Z);
  zz.set_letter(2, Pauli::Z);
  ModuleCoefficients obs = project_pauli_observable(zz, 4);
  Eigen::MatrixXd draws = sample_batch({state}, obs, 60000, 506);
  MomentReport report = moment_report(draws, 4);
  double z4 = 0.0;
  for (const auto& check : report.checks)
    if (check.indices.size() == 4) z4 = check.z;
  CHECK(std::abs(z4) >= 5.0);
}
