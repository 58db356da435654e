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

#include "matchgp/bell.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "matchgp/transform.hpp"

namespace matchgp {

namespace {

PauliString word_from_letter_index(int64_t idx, int n) {
  PauliString p(n);
  for (int q = n; q >= 1; --q) {
    p.set_letter(q, static_cast<Pauli>(idx & 3));
    idx >>= 2;
  }
  return p;
}

int64_t letter_index_of(const PauliString& p) {
  int64_t idx = 0;
  for (int q = 1; q <= p.num_qubits(); ++q)
    idx = (idx << 2) | static_cast<int64_t>(p.letter(q));
  return idx;
}

}  // namespace

double f_m(const BellOutcome& outcome, int m, int n) {
  if (m > 2 * n) throw std::invalid_argument("module order exceeds 2n");
  const SubsetIndex idx(2 * n, m);
  double acc = 0.0;
  for (int64_t r = 0; r < idx.count(); ++r) {
    PauliString pv = majorana_product(idx.subset(r), n);
    double sym = (pv.count_y() % 2 == 0) ? 1.0 : -1.0;
    double comm = commutes(outcome.pauli_word, pv) ? 1.0 : -1.0;
    acc += sym * comm;
  }
  return acc;
}

Eigen::VectorXd bell_probabilities(const QuantumState& rho, const QuantumState& rho_prime) {
  int n = rho.n();
  if (n != rho_prime.n()) throw std::invalid_argument("qubit count mismatch");
  if (n > 6) throw std::invalid_argument("Bell enumeration capped at n = 6");
  int64_t d = int64_t(1) << n;
  int64_t outcomes = int64_t(1) << (2 * n);
  // <P| rho x rho' |P> = (1/d) sum_{jk} (-1)^{pc(j&z) + pc(k&z)}
  //                      rho_{j^x, k^x} rho'_{jk}; the i^{#Y} action phase
  //                      cancels against its conjugate.
  Eigen::MatrixXcd rho_m = rho.density();
  Eigen::MatrixXcd rho_p = rho_prime.density();
  Eigen::VectorXd probs(outcomes);
  parallel_for(0, outcomes, [&](int64_t o) {
    PauliString p = word_from_letter_index(o, n);
    PauliMasks mk = pauli_masks(p);
    std::complex<double> acc = 0.0;
    for (int64_t j = 0; j < d; ++j) {
      int pj = __builtin_popcountll(static_cast<uint64_t>(j) & mk.zmask) & 1;
      for (int64_t k = 0; k < d; ++k) {
        int pk = __builtin_popcountll(static_cast<uint64_t>(k) & mk.zmask) & 1;
        double sign = (pj ^ pk) ? -1.0 : 1.0;
        acc += sign * rho_m(j ^ mk.xmask, k ^ mk.xmask) * rho_p(j, k);
      }
    }
    probs(o) = acc.real() / static_cast<double>(d);
  });
  double total = probs.sum();
  if (std::abs(total - 1.0) > 1e-9)
    throw std::runtime_error("Bell probabilities do not sum to 1");
  return probs;
}

std::vector<BellOutcome> bell_sample(const QuantumState& rho, const QuantumState& rho_prime,
                                     int64_t num_shots, Rng& rng) {
  Eigen::VectorXd probs = bell_probabilities(rho, rho_prime);
  int n = rho.n();
  // Inverse-CDF sampling over the enumerated outcomes.
  std::vector<double> cdf(probs.size());
  double run = 0.0;
  for (int64_t o = 0; o < probs.size(); ++o) {
    run += std::max(probs(o), 0.0);
    cdf[o] = run;
  }
  std::uniform_real_distribution<double> unif(0.0, run);
  std::vector<BellOutcome> outcomes;
  outcomes.reserve(num_shots);
  for (int64_t s = 0; s < num_shots; ++s) {
    double u = unif(rng);
    auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    int64_t o = std::distance(cdf.begin(), it);
    if (o >= probs.size()) o = probs.size() - 1;
    outcomes.push_back({word_from_letter_index(o, n)});
  }
  return outcomes;
}

double direct_estimate(const std::vector<BellOutcome>& outcomes, int m, int n) {
  if (outcomes.empty()) throw std::invalid_argument("no Bell outcomes");
  // f_m only depends on the outcome letters; bucket repeats first.
  std::map<int64_t, int64_t> counts;
  for (const auto& o : outcomes) counts[letter_index_of(o.pauli_word)] += 1;
  double acc = 0.0;
  for (const auto& [idx, count] : counts) {
    BellOutcome o{word_from_letter_index(idx, n)};
    acc += static_cast<double>(count) * f_m(o, m, n);
  }
  return acc / static_cast<double>(outcomes.size());
}

double indirect_estimate(const QuantumState& rho, const QuantumState& rho_prime, int m,
                         int64_t shots_per_coeff, Rng& rng) {
  int n = rho.n();
  if (n != rho_prime.n()) throw std::invalid_argument("qubit count mismatch");
  const SubsetIndex idx(2 * n, m);
  double acc = 0.0;
  for (int64_t r = 0; r < idx.count(); ++r) {
    PauliString pv = hermitian_majorana_basis_op(MajoranaIndexSet(n, idx.subset(r)));
    double c = rho.expectation(pv);
    double c_prime = rho_prime.expectation(pv);
    if (shots_per_coeff > 0) {
      std::binomial_distribution<int64_t> bin_a(shots_per_coeff, (1.0 + c) / 2.0);
      std::binomial_distribution<int64_t> bin_b(shots_per_coeff, (1.0 + c_prime) / 2.0);
      c = 2.0 / static_cast<double>(shots_per_coeff) * bin_a(rng) - 1.0;
      c_prime = 2.0 / static_cast<double>(shots_per_coeff) * bin_b(rng) - 1.0;
    }
    acc += c * c_prime;
  }
  return acc;
}

namespace {

std::vector<double> quantiles(std::vector<double> v, const std::vector<double>& qs) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double q : qs) {
    double pos = q * (v.size() - 1);
    int64_t lo = static_cast<int64_t>(pos);
    int64_t hi = std::min<int64_t>(lo + 1, v.size() - 1);
    out.push_back(v[lo] + (pos - lo) * (v[hi] - v[lo]));
  }
  return out;
}

std::pair<double, double> wilson_interval(double freq, int64_t trials) {
  double z = 1.96;
  double denom = 1.0 + z * z / trials;
  double center = (freq + z * z / (2.0 * trials)) / denom;
  double half = z * std::sqrt(freq * (1.0 - freq) / trials + z * z / (4.0 * trials * trials)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace

SeparationReport separation_experiment(int n, int m, int64_t total_budget, int64_t repeats,
                                       uint64_t seed) {
  double dm = binomial_coefficient(2 * n, m);
  int64_t t = total_budget / (2 * static_cast<int64_t>(dm));
  if (t < 1) throw std::invalid_argument("budget below one shot per coefficient");
  SeparationReport report;
  report.repeats = repeats;
  report.threshold = std::sqrt(2.0 * dm * dm * dm) / static_cast<double>(total_budget);
  report.hoeffding_envelope = dm * std::sqrt(2.0 * std::log(2.0 / 0.05) / total_budget);

  QuantumState rho = QuantumState::zero(n);
  // Both protocols target d<rho, rho>_m = 0 (zero-coefficient hard instance).
  std::vector<double> direct_err(repeats), indirect_err(repeats);
  parallel_for(0, repeats, [&](int64_t rep) {
    Rng rng = substream(seed, rep);
    auto outcomes = bell_sample(rho, rho, total_budget, rng);
    direct_err[rep] = std::abs(direct_estimate(outcomes, m, n));
    indirect_err[rep] = std::abs(indirect_estimate(rho, rho, m, t, rng));
  });

  int64_t exceed = 0, within = 0;
  for (int64_t rep = 0; rep < repeats; ++rep) {
    if (indirect_err[rep] > report.threshold) ++exceed;
    if (direct_err[rep] <= report.hoeffding_envelope) ++within;
  }
  report.indirect_exceed_frequency = static_cast<double>(exceed) / repeats;
  report.direct_within_envelope_frequency = static_cast<double>(within) / repeats;
  std::tie(report.indirect_exceed_ci_lo, report.indirect_exceed_ci_hi) =
      wilson_interval(report.indirect_exceed_frequency, repeats);
  report.direct_error_quantiles = quantiles(direct_err, {0.5, 0.9, 0.95, 0.99});
  report.indirect_error_quantiles = quantiles(indirect_err, {0.5, 0.9, 0.95, 0.99});
  return report;
}

ModuleCoefficients hl_learn(const OrthogonalMatrix& q, const ModuleCoefficients& obs_coeffs,
                            int64_t total_shots, Rng& rng) {
  int n = obs_coeffs.n();
  double sqrt_d = std::pow(2.0, 0.5 * n);
  OrthogonalMatrix qt{q.q.transpose()};
  ModuleCoefficients heisenberg = transform_coeffs(obs_coeffs, qt);
  if (total_shots <= 0) return heisenberg;
  int64_t dm = heisenberg.size();
  int64_t per_coeff = total_shots / dm;
  if (per_coeff < 1) throw std::invalid_argument("budget below one shot per coefficient");
  ModuleCoefficients out(n, obs_coeffs.m(), CoeffKind::Observable);
  for (int64_t r = 0; r < dm; ++r) {
    // eta * outcome is a +-1 coin with mean Tr[P_V U^dag O U]/d = q_V/sqrt(d).
    double mean = std::clamp(heisenberg.value(r) / sqrt_d, -1.0, 1.0);
    std::binomial_distribution<int64_t> bin(per_coeff, (1.0 + mean) / 2.0);
    double est = 2.0 / static_cast<double>(per_coeff) * bin(rng) - 1.0;
    out.value(r) = sqrt_d * est;
  }
  return out;
}

}  // namespace matchgp
