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
//
// End-to-end acceptance suite. One pass/fail line per criterion; exit code
// is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "matchgp/bell.hpp"
#include "matchgp/datasets.hpp"
#include "matchgp/moments.hpp"

using namespace matchgp;

namespace {

struct Harness {
  int failures = 0;

  void run(const std::string& name, const std::function<bool(std::string&)>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

Eigen::MatrixXd random_antisymmetric(int dim, double scale, uint64_t seed) {
  Rng rng = substream(seed, 0);
  std::normal_distribution<double> gauss(0.0, scale);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      h(i, j) = gauss(rng);
      h(j, i) = -h(i, j);
    }
  return h;
}

// ------------------------------------------------------------ criterion 1

bool exact_covariance(std::string& detail) {
  const int64_t draws = 100000;
  char buf[160];
  for (int n : {2, 4, 6}) {
    for (int m : {1, 2}) {
      for (int family = 0; family < 2; ++family) {
        ModuleCoefficients state =
            family == 0
                ? project_state(gaussian_state(random_antisymmetric(2 * n, 0.25, 11 * n + m), n),
                                m)
                : project_state(synthetic_state(0.45, n, 17 * n + m), m);
        PauliString word = m == 1 ? majorana(1, n) : PauliString::single(n, 1, Pauli::Z);
        ModuleCoefficients obs = project_pauli_observable(word, m);
        double expected = purity(obs) * purity(state) / binomial_coefficient(2 * n, m);

        Eigen::MatrixXd x = sample_batch({state}, obs, draws, 1000 + 10 * n + m + family);
        double mean = x.col(0).mean();
        double var = (x.col(0).array() - mean).square().mean();
        double m4 = (x.col(0).array() - mean).pow(4).mean();
        double se_var = std::sqrt(std::max(m4 - var * var, 0.0) / draws);
        if (std::abs(var - expected) > 3.0 * se_var) {
          std::snprintf(buf, sizeof(buf),
                        "n=%d m=%d family=%s: var=%.6g expected=%.6g se=%.2g", n, m,
                        family == 0 ? "gaussian" : "synthetic", var, expected, se_var);
          detail = buf;
          return false;
        }
      }
    }
  }
  return true;
}

// ------------------------------------------------------------ criterion 2

bool magic_gaussianity(std::string& detail) {
  const int n = 12;
  const int64_t samples = 50000;
  std::vector<double> thetas;
  for (int i = 0; i < 7; ++i) thetas.push_back(2.0 * M_PI / 3.0 * i / 6.0);
  auto rows = magic_state_distribution_check(thetas, n, samples, 2026);
  char buf[160];
  for (const auto& row : rows) {
    if (std::abs(row.empirical_std - row.predicted_std) > 0.02 * row.predicted_std) {
      std::snprintf(buf, sizeof(buf), "theta=%.3f std=%.5f predicted=%.5f", row.theta,
                    row.empirical_std, row.predicted_std);
      detail = buf;
      return false;
    }
    if (row.kl_divergence > 0.01) {
      std::snprintf(buf, sizeof(buf), "theta=%.3f KL=%.4f", row.theta, row.kl_divergence);
      detail = buf;
      return false;
    }
  }
  return true;
}

// ------------------------------------------------------------ criterion 3

bool isserlis_suite(std::string& detail) {
  char buf[420];
  // Note: the GP statements behind this criterion are asymptotic in n. At
  // n = 6 the exact Haar moments deviate from the Isserlis form by
  // O(1/n) (for B_1 the 4th-to-2nd moment ratio is 3N/(N+2) instead of 3,
  // N = 2n), which a z-test resolves at any admissible sample size. The
  // kurtosis cross-check below separates that genuine finite-n bias from
  // an implementation defect: the measured ratio must match the exact
  // finite-n value even while the |z| <= 4 thresholds fail.
  double z_b1 = 0.0, z_b2 = 0.0, z4 = 0.0;
  double kurt_ratio_measured = 0.0;
  const double kurt_ratio_exact = 3.0 * 12.0 / 14.0;  // 3N/(N+2) at N = 12
  {
    int n = 6;
    ModuleCoefficients obs = project_pauli_observable(majorana(1, n), 1);
    std::vector<ModuleCoefficients> states;
    for (int i = 0; i < 3; ++i)
      states.push_back(project_state(synthetic_state(0.3 + 0.25 * i, n, 300 + i), 1));
    Eigen::MatrixXd draws = sample_batch(states, obs, 100000, 3001);
    z_b1 = moment_report(draws, 6).max_abs_z;
    double m2 = draws.col(0).array().square().mean();
    double m4 = draws.col(0).array().pow(4).mean();
    kurt_ratio_measured = m4 / (m2 * m2);
  }
  {
    int n = 6;
    ModuleCoefficients obs = project_pauli_observable(PauliString::single(n, 1, Pauli::Z), 2);
    std::vector<ModuleCoefficients> states;
    for (int i = 0; i < 3; ++i)
      states.push_back(
          project_state(gaussian_state(random_antisymmetric(2 * n, 0.15, 310 + i), n), 2));
    Eigen::MatrixXd draws = sample_batch(states, obs, 100000, 3002);
    z_b2 = moment_report(draws, 6).max_abs_z;
  }
  {
    int n = 10;
    PauliString zz(n);
    zz.set_letter(1, Pauli::Z);
    zz.set_letter(2, Pauli::Z);
    ModuleCoefficients obs = project_pauli_observable(zz, 4);
    ModuleCoefficients state = zero_state_coeffs(n, 4);
    Eigen::MatrixXd draws = sample_batch({state}, obs, 200000, 3003);
    MomentReport report = moment_report(draws, 4);
    for (const auto& check : report.checks)
      if (check.indices.size() == 4) z4 = check.z;
  }
  bool sampler_exact = std::abs(kurt_ratio_measured - kurt_ratio_exact) < 0.05;
  std::snprintf(buf, sizeof(buf),
                "B_1 max|z|=%.2f, B_2 max|z|=%.2f (threshold 4; deviations are the exact "
                "finite-n Haar moments: B_1 kurtosis ratio %.4f vs exact 3N/(N+2)=%.4f, "
                "Gaussian only as n grows); B_4 4th |z|=%.2f (>= 5)",
                z_b1, z_b2, kurt_ratio_measured, kurt_ratio_exact, std::abs(z4));
  detail = buf;
  return z_b1 <= 4.0 && z_b2 <= 4.0 && std::abs(z4) >= 5.0 && sampler_exact;
}

// ------------------------------------------------------------ criterion 4

bool schatten_exact(std::string& detail) {
  char buf[160];
  for (int n = 4; n <= 12; ++n) {
    double expected = (n * n - 3.0 * n + 5.0) / (9.0 * n * (n - 1.0));
    double got = schatten_ratio(coeffs_as_matrix(zero_state_coeffs(n, 4)), 2);
    if (std::abs(got - expected) > 1e-10) {
      std::snprintf(buf, sizeof(buf), "Gaussian B_4 n=%d: %.12g vs %.12g", n, got, expected);
      detail = buf;
      return false;
    }
  }
  for (int n : {4, 8, 12}) {
    PauliString zz(n);
    zz.set_letter(1, Pauli::Z);
    zz.set_letter(2, Pauli::Z);
    double got = schatten_ratio(coeffs_as_matrix(project_pauli_observable(zz, 4)), 2);
    if (std::abs(got - 1.0 / 6.0) > 1e-10) {
      std::snprintf(buf, sizeof(buf), "Pauli B_4 n=%d: %.12g vs 1/6", n, got);
      detail = buf;
      return false;
    }
  }
  for (int n = 4; n <= 12; ++n) {
    double got = schatten_ratio(coeffs_as_matrix(jform_b2_coeffs(n, 1.0)), 2);
    if (std::abs(got - 1.0 / (2.0 * n)) > 1e-10) {
      std::snprintf(buf, sizeof(buf), "Gaussian B_2 n=%d: %.12g vs 1/(2n)", n, got);
      detail = buf;
      return false;
    }
  }
  return true;
}

// ------------------------------------------------------------ criterion 5

bool catalan_limit(std::string& detail) {
  auto cells = catalan_convergence_check({100}, {2, 4}, 100, 2025);
  char buf[160];
  for (const auto& cell : cells) {
    if (std::abs(cell.mean_scaled_ratio - cell.catalan) > 0.1 * cell.catalan) {
      std::snprintf(buf, sizeof(buf), "ell=%d mean=%.4f Cat=%.1f", cell.ell,
                    cell.mean_scaled_ratio, cell.catalan);
      detail = buf;
      return false;
    }
  }
  return true;
}

// ------------------------------------------------------------ criterion 6

bool extrapolation_contrast(std::string& detail) {
  const int n = 10;
  const uint64_t dataset_seed = 19, unitary_seed = 20;
  std::vector<double> train;
  for (int i = 0; i < 15; ++i) train.push_back(i / 14.0);
  std::vector<double> test;
  for (int i = 0; i < 200; ++i) test.push_back(10.0 * i / 199.0);
  std::vector<double> all = train;
  all.insert(all.end(), test.begin(), test.end());

  SyntheticB1Task task = make_synthetic_b1_task(n, all, dataset_seed, unitary_seed);
  int64_t nt = 15;
  int64_t ns = static_cast<int64_t>(test.size());

  double signal_var = 0.0, signal_mean = 0.0;
  for (int64_t i = nt; i < nt + ns; ++i) signal_mean += task.labels[i];
  signal_mean /= ns;
  for (int64_t i = nt; i < nt + ns; ++i)
    signal_var += (task.labels[i] - signal_mean) * (task.labels[i] - signal_mean);
  signal_var /= ns;

  // Matchgate B_1 kernel.
  KernelMatrix gram;
  gram.values.resize(nt, nt);
  gram.noise_variance = Eigen::MatrixXd::Zero(nt, nt);
  gram.labels.assign(nt, "");
  for (int64_t i = 0; i < nt; ++i)
    for (int64_t j = 0; j < nt; ++j)
      gram.values(i, j) =
          matchgate_kernel(task.coeffs[i], task.coeffs[j], task.obs, KernelMode::Exact);
  Eigen::VectorXd y(nt);
  for (int64_t i = 0; i < nt; ++i) y(i) = task.labels[i];
  GPModel model(gram, y, Eigen::VectorXd::Constant(nt, 1e-12));
  double mse_matchgate = 0.0;
  for (int64_t t = 0; t < ns; ++t) {
    Eigen::VectorXd col(nt);
    for (int64_t j = 0; j < nt; ++j)
      col(j) = matchgate_kernel(task.coeffs[nt + t], task.coeffs[j], task.obs, KernelMode::Exact);
    double prior = matchgate_kernel(task.coeffs[nt + t], task.coeffs[nt + t], task.obs,
                                    KernelMode::Exact);
    Posterior post = model.posterior(prior, col);
    mse_matchgate += (post.mean - task.labels[nt + t]) * (post.mean - task.labels[nt + t]);
  }
  mse_matchgate /= ns;

  // Fidelity kernel baseline.
  std::vector<QuantumState> states;
  for (double t : all) states.push_back(synthetic_state(t, n, dataset_seed));
  double norm_sq = std::pow(2.0, n);
  KernelMatrix fgram;
  fgram.values.resize(nt, nt);
  fgram.noise_variance = Eigen::MatrixXd::Zero(nt, nt);
  fgram.labels.assign(nt, "");
  for (int64_t i = 0; i < nt; ++i)
    for (int64_t j = 0; j < nt; ++j)
      fgram.values(i, j) = fidelity_kernel(states[i], states[j], norm_sq, n);
  GPModel fmodel(fgram, y, Eigen::VectorXd::Constant(nt, 1e-12));
  double mse_fidelity = 0.0;
  for (int64_t t = 0; t < ns; ++t) {
    Eigen::VectorXd col(nt);
    for (int64_t j = 0; j < nt; ++j)
      col(j) = fidelity_kernel(states[nt + t], states[j], norm_sq, n);
    Posterior post = fmodel.posterior(fidelity_kernel(states[nt + t], states[nt + t], norm_sq, n),
                                      col);
    mse_fidelity += (post.mean - task.labels[nt + t]) * (post.mean - task.labels[nt + t]);
  }
  mse_fidelity /= ns;

  char buf[200];
  std::snprintf(buf, sizeof(buf), "matchgate MSE=%.3g, fidelity MSE=%.3g, signal var=%.3g",
                mse_matchgate, mse_fidelity, signal_var);
  detail = buf;
  return mse_matchgate <= 1e-3 && mse_fidelity >= 0.25 * signal_var;
}

// ------------------------------------------------------------ criterion 7

bool psd_benchmark(std::string& detail) {
  const int n = 8, train_count = 10, test_count = 120, seeds = 50;
  std::vector<double> all_t;
  for (int i = 0; i < train_count + test_count; ++i)
    all_t.push_back(2.0 * M_PI * i / (train_count + test_count - 1));
  std::vector<int64_t> train_idx, test_idx;
  int stride = (train_count + test_count) / train_count;
  for (int i = 0; i < train_count + test_count; ++i) {
    if (i % stride == 0 && static_cast<int>(train_idx.size()) < train_count)
      train_idx.push_back(i);
    else
      test_idx.push_back(i);
  }
  BenchRegressionTask task = make_bench_regression_task(n, all_t, 501);

  // Regime n_obs / n_kappa >= 1e4: Wigner shift beats clipping per seed.
  int wigner_wins = 0;
  for (int s = 0; s < seeds; ++s) {
    auto mses = psd_bench_trial(task, train_idx, test_idx, 10000000, 1000, 7000 + s);
    if (mses["shift_wigner"] <= mses["clip"]) ++wigner_wins;
  }

  // Fixed-budget slice (n_obs + n_kappa ~ 1e6): Wigner MSE minimized at the
  // balanced allocation within one grid step.
  std::vector<std::pair<int64_t, int64_t>> slice{
      {10, 1000000}, {100, 100000}, {1000, 10000}, {10000, 10000},
      {10000, 1000}, {100000, 100}, {1000000, 10}};
  // log-symmetric allocations around the balanced point (10^4, 10^4)? The
  // slice follows the paper's n_obs + n_kappa order 1e6; balanced cell is
  // (5e5, 5e5).
  slice = {{10, 999990},     {100, 999900},   {1000, 999000}, {10000, 990000},
           {500000, 500000}, {990000, 10000}, {999000, 1000}, {999900, 100},
           {999990, 10}};
  int balanced_cell = 4;
  std::vector<double> slice_mse(slice.size(), 0.0);
  for (size_t c = 0; c < slice.size(); ++c) {
    for (int s = 0; s < seeds; ++s) {
      auto mses = psd_bench_trial(task, train_idx, test_idx, slice[c].first, slice[c].second,
                                  8000 + 100 * c + s);
      slice_mse[c] += mses["shift_wigner"];
    }
    slice_mse[c] /= seeds;
  }
  size_t argmin = 0;
  for (size_t c = 1; c < slice.size(); ++c)
    if (slice_mse[c] < slice_mse[argmin]) argmin = c;

  char buf[200];
  std::snprintf(buf, sizeof(buf), "wigner<=clip in %d/%d seeds; slice argmin cell %zu (balanced %d)",
                wigner_wins, seeds, argmin, balanced_cell);
  detail = buf;
  bool regime_ok = wigner_wins >= static_cast<int>(0.9 * seeds);
  bool slice_ok = std::abs(static_cast<int>(argmin) - balanced_cell) <= 1;
  return regime_ok && slice_ok;
}

// ------------------------------------------------------------ criterion 8

bool bo_benchmarks(std::string& detail) {
  char buf[240];
  // 2D synthetic at n = 8, grid step 0.06.
  int found = 0;
  std::vector<int> evals;
  const int seeds_2d = 100;
  for (int s = 0; s < seeds_2d; ++s) {
    Synthetic2dTask task = make_synthetic_2d_task(8, 0.06, 9000 + s, 9500 + s);
    double d = std::pow(2.0, 8);
    BOProblem problem;
    problem.grid_size = static_cast<int64_t>(task.objective.size());
    problem.known_optimum = task.argmax;
    problem.objective = [&task](int64_t g) { return task.objective[g]; };
    problem.kernel = [&task, d](int64_t i, int64_t j) {
      return task.kernel_prefactor * d * task.features.col(i).dot(task.features.col(j));
    };
    Rng rng = substream(9700 + s, 0);
    std::uniform_int_distribution<int64_t> start(0, problem.grid_size - 1);
    AcquisitionSpec acq;  // EI, xi = 0.01
    BOTrace trace = bo_loop(problem, acq, {start(rng)}, 30);
    if (trace.reached_known_optimum) {
      ++found;
      evals.push_back(static_cast<int>(trace.evaluations_to_optimum));
    }
  }

  // Uniform-random-query baseline on the same grids.
  std::vector<int> random_evals;
  for (int s = 0; s < seeds_2d; ++s) {
    Synthetic2dTask task = make_synthetic_2d_task(8, 0.06, 9000 + s, 9500 + s);
    Rng rng = substream(9800 + s, 0);
    std::uniform_int_distribution<int64_t> pick(0, static_cast<int64_t>(task.objective.size()) - 1);
    int count = 0;
    while (true) {
      ++count;
      if (pick(rng) == task.argmax) break;
    }
    random_evals.push_back(count);
  }
  auto median = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v.empty() ? -1 : v[v.size() / 2];
  };
  int bo_median = median(evals);
  int random_median = median(random_evals);

  // Magnetometry chi^2 + UCB at n = 8.
  MagnetometryTask mag = make_magnetometry_task(8, 0.006);
  std::vector<int> mag_evals;
  const int seeds_mag = 50;
  int mag_found = 0;
  for (int s = 0; s < seeds_mag; ++s) {
    BOProblem problem;
    problem.grid_size = static_cast<int64_t>(mag.grid.size());
    problem.known_optimum = mag.argmax;
    problem.objective = [&mag](int64_t g) { return mag.observation[g]; };
    problem.kernel = [&mag](int64_t i, int64_t j) { return mag.kernel(i, j); };
    Rng rng = substream(9900 + s, 0);
    std::uniform_int_distribution<int64_t> start(0, problem.grid_size - 1);
    AcquisitionSpec acq;
    acq.kind = AcquisitionSpec::Kind::Ucb;
    acq.beta = 1.96;
    acq.chi2_composite = true;
    BOTrace trace = bo_loop(problem, acq, {start(rng)}, 40);
    if (trace.reached_known_optimum) {
      ++mag_found;
      mag_evals.push_back(static_cast<int>(trace.evaluations_to_optimum));
    } else {
      mag_evals.push_back(41);
    }
  }
  int mag_median = median(mag_evals);

  std::snprintf(buf, sizeof(buf),
                "2d: %d/100 within 30 evals (median %d, random median %d); "
                "magnetometry: median %d evals (%d/%d reached)",
                found, bo_median, random_median, mag_median, mag_found, seeds_mag);
  detail = buf;
  return found >= 90 && bo_median < random_median && mag_median <= 15;
}

// ------------------------------------------------------------ criterion 9

bool estimator_separation(std::string& detail) {
  SeparationReport rep = separation_experiment(3, 1, 1200, 2000, 424242);
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "indirect exceed freq=%.4f (CI %.4f-%.4f, bound 1/36=%.4f); direct within "
                "envelope %.3f",
                rep.indirect_exceed_frequency, rep.indirect_exceed_ci_lo,
                rep.indirect_exceed_ci_hi, 1.0 / 36.0, rep.direct_within_envelope_frequency);
  detail = buf;
  // The CI must be consistent with the >= 1/36 lower bound.
  bool ci_consistent = rep.indirect_exceed_ci_hi >= 1.0 / 36.0;
  return ci_consistent && rep.indirect_exceed_frequency >= 0.015 &&
         rep.direct_within_envelope_frequency >= 0.95;
}

// ------------------------------------------------------------ criterion 10

bool classification_xxx(std::string& detail) {
  const int n = 8;
  XxxTask task = make_xxx_task(n, 41);

  // One training point per phase: J1/J2 = 0.5 and 1.5.
  std::vector<int64_t> train_idx;
  for (double target : {0.5, 1.5}) {
    int64_t best = 0;
    for (int64_t i = 1; i < static_cast<int64_t>(task.ratios.size()); ++i)
      if (std::abs(task.ratios[i] - target) < std::abs(task.ratios[best] - target)) best = i;
    train_idx.push_back(best);
  }
  int64_t nt = 2;
  KernelMatrix gram;
  gram.values.resize(nt, nt);
  gram.noise_variance = Eigen::MatrixXd::Zero(nt, nt);
  gram.labels.assign(nt, "");
  for (int64_t i = 0; i < nt; ++i)
    for (int64_t j = 0; j < nt; ++j)
      gram.values(i, j) = task.kernel(train_idx[i], train_idx[j]);
  Eigen::VectorXi labels(2);
  labels << 0, 1;
  LaplaceClassifier cls = fit_laplace_classifier(gram, labels);

  int64_t correct = 0, decidable = 0;
  std::vector<double> latent, order;
  for (int64_t g = 0; g < static_cast<int64_t>(task.ratios.size()); ++g) {
    Eigen::VectorXd col(nt);
    for (int64_t j = 0; j < nt; ++j) col(j) = task.kernel(g, train_idx[j]);
    ClassPrediction pred = classify_posterior(cls, task.kernel(g, g), col);
    latent.push_back(pred.latent_mean);
    order.push_back(task.order_parameter[g]);
    if (std::abs(task.ratios[g] - 1.0) >= 0.2) {
      ++decidable;
      int truth = task.ratios[g] < 1.0 ? 0 : 1;
      if ((pred.probability >= 0.5 ? 1 : 0) == truth) ++correct;
    }
  }
  double accuracy = static_cast<double>(correct) / decidable;

  double lm = 0, om = 0;
  for (size_t i = 0; i < latent.size(); ++i) {
    lm += latent[i];
    om += order[i];
  }
  lm /= latent.size();
  om /= latent.size();
  double num = 0, dl = 0, dr = 0;
  for (size_t i = 0; i < latent.size(); ++i) {
    num += (latent[i] - lm) * (order[i] - om);
    dl += (latent[i] - lm) * (latent[i] - lm);
    dr += (order[i] - om) * (order[i] - om);
  }
  double corr = num / std::sqrt(dl * dr);

  char buf[160];
  std::snprintf(buf, sizeof(buf), "accuracy=%.3f correlation=%.4f", accuracy, corr);
  detail = buf;
  return accuracy >= 0.9 && std::abs(corr) >= 0.95;
}

// ------------------------------------------------------------ criterion 11

bool marginal_likelihood_machinery(std::string& detail) {
  char buf[160];
  // Gradient vs central differences, 20 random instances.
  Rng rng = substream(1111, 0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int pts = 6, bases = 4;
    std::vector<Eigen::MatrixXd> grams;
    for (int b = 0; b < bases; ++b) {
      Eigen::MatrixXd g(pts, pts);
      for (int i = 0; i < pts; ++i)
        for (int j = 0; j < pts; ++j) g(i, j) = gauss(rng);
      grams.push_back(g * g.transpose());
    }
    Eigen::VectorXd y(pts), theta(bases);
    for (int i = 0; i < pts; ++i) y(i) = gauss(rng);
    for (int b = 0; b < bases; ++b) theta(b) = 0.3 + 0.1 * (b % 3);
    Eigen::VectorXd r = Eigen::VectorXd::Constant(pts, 0.05);
    Eigen::VectorXd grad = lml_gradient_weights(grams, theta, y, r);
    auto lml_at = [&](const Eigen::VectorXd& th) {
      Eigen::MatrixXd k = Eigen::MatrixXd::Zero(pts, pts);
      for (int b = 0; b < bases; ++b) k += th(b) * grams[b];
      k /= bases;
      KernelMatrix km;
      km.values = k;
      km.noise_variance = Eigen::MatrixXd::Zero(pts, pts);
      km.labels.assign(pts, "");
      GPModel model(km, y, r);
      return model.log_marginal_likelihood();
    };
    const double h = 1e-5;
    for (int b = 0; b < bases; ++b) {
      Eigen::VectorXd up = theta, dn = theta;
      up(b) += h;
      dn(b) -= h;
      double fd = (lml_at(up) - lml_at(dn)) / (2.0 * h);
      if (std::abs(grad(b) - fd) > 1e-6 * std::max(1.0, std::abs(fd))) {
        std::snprintf(buf, sizeof(buf), "gradient mismatch %.3g vs %.3g", grad(b), fd);
        detail = buf;
        return false;
      }
    }
  }

  // Kernel identification at n = 8: the true local kernel weight dominates.
  const int n = 8, target = 3;
  std::vector<double> inputs;
  for (int i = 0; i < 15; ++i) inputs.push_back(i / 14.0);
  KernelIdTask task = make_kernel_id_task(n, target, inputs, 77, 78);
  Eigen::VectorXd theta0 = Eigen::VectorXd::Ones(n);
  WeightOptResult res = optimize_kernel_weights(
      task.base_grams, task.labels, Eigen::VectorXd::Constant(15, 1e-6), theta0);
  double true_weight = res.theta(target - 1);
  double max_other = 0.0;
  for (int i = 0; i < n; ++i)
    if (i != target - 1) max_other = std::max(max_other, res.theta(i));
  std::snprintf(buf, sizeof(buf), "true weight=%.4f max other=%.4f (%d iters)", true_weight,
                max_other, res.iterations);
  detail = buf;
  return true_weight >= 10.0 * max_other;
}

// ------------------------------------------------------------ criterion 12

bool structural_invariants(std::string& detail) {
  // Majorana anticommutation, dense n <= 4.
  for (int n = 1; n <= 4; ++n) {
    int64_t d = int64_t(1) << n;
    for (int mu = 1; mu <= 2 * n; ++mu) {
      for (int nu = mu; nu <= 2 * n; ++nu) {
        Eigen::MatrixXcd a = to_matrix(majorana(mu, n));
        Eigen::MatrixXcd b = to_matrix(majorana(nu, n));
        Eigen::MatrixXcd anti = a * b + b * a;
        double err = mu == nu
                         ? (anti - 2.0 * Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff()
                         : anti.cwiseAbs().maxCoeff();
        if (err > 1e-12) {
          detail = "anticommutation violated";
          return false;
        }
      }
    }
  }
  // Parseval completeness.
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + trial % 2;
    QuantumState s = synthetic_state(0.1 + 0.17 * trial, n, 5000 + trial);
    double total = 0.0;
    for (int m = 0; m <= 2 * n; ++m) total += purity(project_state(s, m));
    if (std::abs(total - 1.0) > 1e-9) {
      detail = "Parseval completeness violated";
      return false;
    }
  }
  // Compound transform isometry.
  Rng rng = substream(5001, 0);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 3;
    int m = 1 + trial % 3;
    ModuleCoefficients c = project_state(synthetic_state(0.4 + 0.1 * trial, n, 42), m);
    OrthogonalMatrix q = haar_so(2 * n, rng);
    if (std::abs(purity(transform_coeffs(c, q)) - purity(c)) > 1e-9) {
      detail = "compound transform not an isometry";
      return false;
    }
  }
  // Posterior variance contraction.
  {
    std::vector<double> t{0.0, 0.5, 1.1, 2.0};
    KernelMatrix gram;
    gram.values.resize(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        gram.values(i, j) = std::exp(-0.5 * (t[i] - t[j]) * (t[i] - t[j]));
    gram.noise_variance = Eigen::MatrixXd::Zero(4, 4);
    gram.labels.assign(4, "");
    Eigen::VectorXd y(4);
    y << 0.2, -0.4, 0.9, 0.1;
    GPModel model(gram, y, Eigen::VectorXd::Constant(4, 0.01));
    for (double star = -1.0; star <= 3.0; star += 0.1) {
      Eigen::VectorXd col(4);
      for (int j = 0; j < 4; ++j)
        col(j) = std::exp(-0.5 * (t[j] - star) * (t[j] - star));
      Posterior post = model.posterior(1.0, col);
      if (post.variance < 0.0 || post.variance > 1.0 + 1e-9) {
        detail = "posterior variance outside [0, prior]";
        return false;
      }
    }
  }
  // PSD repair idempotence.
  {
    Rng nrng = substream(5002, 0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd g(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) g(i, j) = gauss(nrng);
    KernelMatrix k;
    k.values = 0.5 * (g + g.transpose());
    k.noise_variance = Eigen::MatrixXd::Zero(8, 8);
    k.labels.assign(8, "");
    KernelMatrix once = psd_clip(k);
    if ((psd_clip(once).values - once.values).cwiseAbs().maxCoeff() > 1e-10) {
      detail = "clip not idempotent";
      return false;
    }
    auto shifted = psd_shift_min(k);
    if (psd_shift_min(shifted.repaired).shift > 1e-10) {
      detail = "min shift not idempotent";
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  Harness h;
  h.run("1. exact covariance reproduction (n in {2,4,6}, m in {1,2})", exact_covariance);
  h.run("2. magic-state Gaussianity (n=12, 5e4 samples)", magic_gaussianity);
  h.run("3. Isserlis suite (B_1, B_2 Gaussian, B_4 obstruction)", isserlis_suite);
  h.run("4. analytic Schatten diagnostics, exact", schatten_exact);
  h.run("5. Catalan convergence at n=100", catalan_limit);
  h.run("6. extrapolation contrast (matchgate vs fidelity)", extrapolation_contrast);
  h.run("7. PSD repair benchmark", psd_benchmark);
  h.run("8. Bayesian optimization benchmarks", bo_benchmarks);
  h.run("9. estimator separation (direct vs indirect)", estimator_separation);
  h.run("10. XXX phase classification", classification_xxx);
  h.run("11. marginal-likelihood machinery", marginal_likelihood_machinery);
  h.run("12. structural invariant suite", structural_invariants);
  std::printf("acceptance: %d/12 criteria passed\n", 12 - h.failures);
  if (h.failures == 0) std::printf("All acceptance criteria passed.\n");
  return h.failures;
}
