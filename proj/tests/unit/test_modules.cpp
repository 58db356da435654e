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

#include "matchgp/io.hpp"
#include "matchgp/module_coeffs.hpp"
#include "matchgp/states.hpp"

using namespace matchgp;

namespace {

QuantumState random_pure(int n, uint64_t seed) {
  Rng rng = substream(seed, 0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd psi(int64_t(1) << n);
  for (int64_t i = 0; i < psi.size(); ++i)
    psi(i) = std::complex<double>(gauss(rng), gauss(rng));
  psi /= psi.norm();
  return QuantumState::pure(n, std::move(psi));
}

}  // namespace

TEST_CASE("project_state anchors") {
  // |00><00| in B_2: {1,2} and {3,4} carry 1/2, the rest vanish.
  ModuleCoefficients c = project_state(QuantumState::zero(2), 2);
  CHECK(c.value({1, 2}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.value({3, 4}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(c.value({1, 3})) < 1e-12);
  CHECK(std::abs(c.value({1, 4})) < 1e-12);
  CHECK(std::abs(c.value({2, 3})) < 1e-12);
  CHECK(std::abs(c.value({2, 4})) < 1e-12);

  // Maximally mixed: all coefficients vanish for m >= 1.
  QuantumState mixed = QuantumState::mixed(2, Eigen::MatrixXcd::Identity(4, 4) / 4.0);
  for (int m = 1; m <= 4; ++m) CHECK(purity(project_state(mixed, m)) < 1e-20);

  // |+><+| in B_1.
  Eigen::VectorXcd plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  ModuleCoefficients cp = project_state(QuantumState::pure(1, plus), 1);
  CHECK(cp.value({1}) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(cp.value({2})) < 1e-12);
}

TEST_CASE("project_pauli_observable") {
  ModuleCoefficients z1 = project_pauli_observable(PauliString::parse("ZI"), 2);
  CHECK(z1.value({1, 2}) == doctest::Approx(2.0));  // sqrt(d) = 2
  CHECK(purity(z1) == doctest::Approx(4.0));        // module norm d

  ModuleCoefficients x1 = project_pauli_observable(PauliString::parse("X"), 1);
  CHECK(x1.value({1}) == doctest::Approx(std::sqrt(2.0)));

  CHECK_THROWS_WITH_AS(project_pauli_observable(PauliString::parse("ZI"), 1),
                       doctest::Contains("B_2"), std::invalid_argument);
}

TEST_CASE("overlap and purity anchors") {
  // <rho_+, rho_->_{B_1} = -1/2 for the +-X eigenstates.
  Eigen::VectorXcd plus(2), minus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  ModuleCoefficients a = project_state(QuantumState::pure(1, plus), 1);
  ModuleCoefficients b = project_state(QuantumState::pure(1, minus), 1);
  CHECK(overlap(a, b) == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(purity(a) == doctest::Approx(0.5).epsilon(1e-10));

  ModuleCoefficients zero_b2 = project_state(QuantumState::zero(2), 2);
  CHECK(overlap(zero_b2, zero_b2) == doctest::Approx(0.5).epsilon(1e-10));

  ModuleCoefficients zeros(2, 2, CoeffKind::State);
  CHECK(overlap(zeros, zero_b2) == 0.0);
  CHECK(purity(zeros) == 0.0);
}

TEST_CASE("Parseval completeness over all modules") {
  // sum_m ||A_m||^2 = Tr[A^dag A] for Hermitian A; states have Tr[rho^2].
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 17; ++trial) {
      QuantumState psi = random_pure(n, 100 * n + trial);
      double total = 0.0;
      for (int m = 0; m <= 2 * n; ++m) total += purity(project_state(psi, m));
      REQUIRE(total == doctest::Approx(1.0).epsilon(1e-9));  // pure: Tr[rho^2] = 1
    }
  }
}

TEST_CASE("state module overlap bound") {
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + trial % 2;
    QuantumState a = random_pure(n, 500 + trial);
    QuantumState b = random_pure(n, 900 + trial);
    for (int m = 1; m <= 2; ++m) {
      double ov = overlap(project_state(a, m), project_state(b, m));
      double bound = binomial_coefficient(2 * n, m) / std::pow(2.0, n);
      REQUIRE(std::abs(ov) <= bound + 1e-12);
    }
  }
}

TEST_CASE("special partition observables") {
  ModuleCoefficients obs = special_partition_observable(2, {{1, 2}, {3, 4}}, {1.0, 1.0});
  // Z_1 + Z_2: the dense projection oracle.
  PauliString z1 = PauliString::parse("ZI"), z2 = PauliString::parse("IZ");
  Eigen::MatrixXcd dense = to_matrix(z1) + to_matrix(z2);
  ModuleCoefficients oracle(2, 2, CoeffKind::Observable);
  const auto& idx = oracle.index();
  for (int64_t r = 0; r < idx.count(); ++r) {
    PauliString op = hermitian_majorana_basis_op(MajoranaIndexSet(2, idx.subset(r)));
    oracle.value(r) = ((to_matrix(op) * dense).trace() / 2.0).real();
  }
  CHECK((obs.values() - oracle.values()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(obs.value({1, 2}) == doctest::Approx(2.0));
  CHECK(obs.value({3, 4}) == doctest::Approx(2.0));

  // Single subset reduces to a scaled Pauli observable.
  ModuleCoefficients single = special_partition_observable(2, {{1, 2}}, {0.5});
  ModuleCoefficients pauli = project_pauli_observable(PauliString::parse("ZI"), 2);
  CHECK((single.values() - 0.5 * pauli.values()).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(special_partition_observable(2, {{1, 2}, {2, 3}}, {1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(special_partition_observable(2, {{1, 2}, {3}}, {1.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("gamma_dual") {
  // X at n=1 maps into B_1 again (2n - m = 1); the dual of the dual is -X
  // on odd modules under the fixed -i Hermitian convention.
  ModuleCoefficients x = project_pauli_observable(PauliString::parse("X"), 1);
  ModuleCoefficients dual = gamma_dual(x);
  CHECK(dual.m() == 1);
  CHECK(std::abs(dual.value({2})) == doctest::Approx(std::sqrt(2.0)));
  ModuleCoefficients dd = gamma_dual(dual);
  CHECK((dd.values() + x.values()).cwiseAbs().maxCoeff() < 1e-10);

  // Even modules round-trip to +identity.
  ModuleCoefficients z = project_pauli_observable(PauliString::parse("ZI"), 2);
  ModuleCoefficients zdd = gamma_dual(gamma_dual(z));
  CHECK((zdd.values() - z.values()).cwiseAbs().maxCoeff() < 1e-10);

  // Purity is preserved (20 random states, n <= 3).
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + trial % 3;
    int m = 1 + trial % (2 * n);
    QuantumState psi = random_pure(n, 2000 + trial);
    ModuleCoefficients c = project_state(psi, m);
    ModuleCoefficients g = gamma_dual(c);
    REQUIRE(g.m() == 2 * n - m);
    REQUIRE(purity(g) == doctest::Approx(purity(c)).epsilon(1e-9));
  }
}

TEST_CASE("coeffs_as_matrix") {
  // rho_0 at any n: (1/sqrt(2d)) J.
  for (int n : {2, 3}) {
    ModuleCoefficients c = project_state(QuantumState::zero(n), 2);
    Eigen::MatrixXd mat = coeffs_as_matrix(c);
    double v = 1.0 / std::sqrt(2.0 * std::pow(2.0, n));
    for (int q = 1; q <= n; ++q) {
      CHECK(mat(2 * q - 2, 2 * q - 1) == doctest::Approx(v).epsilon(1e-10));
      CHECK(mat(2 * q - 1, 2 * q - 2) == doctest::Approx(-v).epsilon(1e-10));
    }
    CHECK((mat + mat.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }

  ModuleCoefficients zeros(2, 2, CoeffKind::State);
  CHECK(coeffs_as_matrix(zeros).cwiseAbs().maxCoeff() == 0.0);
  ModuleCoefficients m3(2, 3, CoeffKind::State);
  CHECK_THROWS_AS(coeffs_as_matrix(m3), std::invalid_argument);
}

TEST_CASE("analytic zero-state coefficients match dense projection") {
  for (int n : {2, 3, 4}) {
    for (int m : {2, 4}) {
      if (m > 2 * n) continue;
      ModuleCoefficients analytic = zero_state_coeffs(n, m);
      ModuleCoefficients dense = project_state(QuantumState::zero(n), m);
      REQUIRE((analytic.values() - dense.values()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("module coefficient JSON round trip") {
  ModuleCoefficients obs = special_partition_observable(3, {{1, 2}, {5, 6}}, {0.25, -1.5});
  Json j = coeffs_to_json(obs);
  ModuleCoefficients back = coeffs_from_json(j);
  CHECK(back.n() == obs.n());
  CHECK(back.m() == obs.m());
  CHECK((back.values() - obs.values()).cwiseAbs().maxCoeff() == 0.0);
}
