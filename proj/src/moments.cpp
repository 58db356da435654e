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

#include "matchgp/moments.hpp"

#include <cmath>

#include "matchgp/haar.hpp"

namespace matchgp {

double isserlis_moment(const Eigen::MatrixXd& cov, const std::vector<int>& idx) {
  size_t k = idx.size();
  if (k % 2 != 0) return 0.0;
  if (k == 0) return 1.0;
  // Pair the first index with each remaining one, recurse.
  double acc = 0.0;
  for (size_t j = 1; j < k; ++j) {
    std::vector<int> rest;
    rest.reserve(k - 2);
    for (size_t l = 1; l < k; ++l)
      if (l != j) rest.push_back(idx[l]);
    acc += cov(idx[0], idx[j]) * isserlis_moment(cov, rest);
  }
  return acc;
}

namespace {

void enumerate_multisets(int num_vars, int order, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out, int start) {
  if (static_cast<int>(cur.size()) == order) {
    out.push_back(cur);
    return;
  }
  for (int v = start; v < num_vars; ++v) {
    cur.push_back(v);
    enumerate_multisets(num_vars, order, cur, out, v);
    cur.pop_back();
  }
}

}  // namespace

MomentReport moment_report(const Eigen::MatrixXd& samples, int max_order) {
  int64_t count = samples.rows();
  int num_vars = static_cast<int>(samples.cols());
  if (count < 1000) throw std::invalid_argument("need at least 1e3 samples");

  MomentReport report;
  report.covariance = (samples.transpose() * samples) / static_cast<double>(count);

  // Per-variable normality summary.
  for (int v = 0; v < num_vars; ++v) {
    double mean = samples.col(v).mean();
    Eigen::ArrayXd c = samples.col(v).array() - mean;
    double m2 = (c * c).mean();
    double m3 = (c * c * c).mean();
    double m4 = (c * c * c * c).mean();
    report.skewness.push_back(m3 / std::pow(m2, 1.5));
    report.excess_kurtosis.push_back(m4 / (m2 * m2) - 3.0);
  }

  // Jackknife over fixed blocks. Per block: sums of every moment product
  // and of every pairwise product, so leave-one-out statistics are cheap.
  const int kBlocks = 50;
  std::vector<std::vector<int>> moment_sets;
  for (int order = 1; order <= max_order; ++order) {
    std::vector<int> cur;
    enumerate_multisets(num_vars, order, cur, moment_sets, 0);
  }
  int64_t num_moments = static_cast<int64_t>(moment_sets.size());
  Eigen::MatrixXd block_moment_sums = Eigen::MatrixXd::Zero(kBlocks, num_moments);
  Eigen::VectorXd block_counts = Eigen::VectorXd::Zero(kBlocks);
  for (int64_t s = 0; s < count; ++s) {
    int b = static_cast<int>(s % kBlocks);
    block_counts(b) += 1.0;
    for (int64_t mi = 0; mi < num_moments; ++mi) {
      double prod = 1.0;
      for (int v : moment_sets[mi]) prod *= samples(s, v);
      block_moment_sums(b, mi) += prod;
    }
  }

  // Leave-one-block-out moment means, computed once.
  Eigen::VectorXd total_moment_sum = block_moment_sums.colwise().sum();
  std::vector<Eigen::VectorXd> loo_moments(kBlocks);
  for (int b = 0; b < kBlocks; ++b) {
    double cnt = count - block_counts(b);
    loo_moments[b] = (total_moment_sum - block_moment_sums.row(b).transpose()) / cnt;
  }

  Eigen::VectorXd full_moments = total_moment_sum / static_cast<double>(count);
  for (int64_t mi = 0; mi < num_moments; ++mi) {
    MomentCheck check;
    check.indices = moment_sets[mi];
    check.empirical = full_moments(mi);
    check.isserlis = isserlis_moment(report.covariance, moment_sets[mi]);
    if (check.indices.size() == 2) {
      // Order-2 predictions come from the empirical covariance itself; the
      // deviation is identically zero, not a statistical statement.
      check.std_error = 0.0;
      check.z = 0.0;
      report.checks.push_back(std::move(check));
      continue;
    }

    // Jackknife SE of the empirical moment estimate itself.
    double jk_mean = 0.0;
    std::vector<double> jk(kBlocks);
    for (int b = 0; b < kBlocks; ++b) {
      jk[b] = loo_moments[b](mi);
      jk_mean += jk[b];
    }
    jk_mean /= kBlocks;
    double var = 0.0;
    for (int b = 0; b < kBlocks; ++b) var += (jk[b] - jk_mean) * (jk[b] - jk_mean);
    var *= static_cast<double>(kBlocks - 1) / kBlocks;
    check.std_error = std::sqrt(std::max(var, 1e-300));
    check.z = (check.empirical - check.isserlis) / check.std_error;
    report.max_abs_z = std::max(report.max_abs_z, std::abs(check.z));
    report.checks.push_back(std::move(check));
  }
  return report;
}

double schatten_ratio(const Eigen::MatrixXd& m, int ell) {
  if (ell < 2 || ell % 2 != 0) throw std::invalid_argument("ell must be even and >= 2");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  Eigen::ArrayXd sv = svd.singularValues().array();
  double denom = sv.square().sum();  // ||M^T M||_1
  double numer = sv.pow(2 * ell).sum();
  return numer / std::pow(denom, ell);
}

double catalan_number(int ell) {
  return binomial_coefficient(2 * ell, ell) / (ell + 1.0);
}

std::vector<CatalanCell> catalan_convergence_check(const std::vector<int>& n_list,
                                                   const std::vector<int>& ell_list,
                                                   int samples_per_n, uint64_t seed) {
  std::vector<CatalanCell> cells;
  for (int n : n_list) {
    int twon = 2 * n;
    Eigen::MatrixXd ratios(samples_per_n, static_cast<int64_t>(ell_list.size()));
    parallel_for(0, samples_per_n, [&](int64_t s) {
      Rng rng = substream(seed, static_cast<uint64_t>(n) * 100000 + s);
      std::normal_distribution<double> gauss(0.0, 1.0);
      Eigen::MatrixXd o = Eigen::MatrixXd::Zero(twon, twon);
      for (int i = 0; i < twon; ++i) {
        for (int j = i + 1; j < twon; ++j) {
          double v = gauss(rng);
          o(i, j) = v;
          o(j, i) = -v;
        }
      }
      for (size_t li = 0; li < ell_list.size(); ++li)
        ratios(s, li) = schatten_ratio(o, ell_list[li]);
    });
    for (size_t li = 0; li < ell_list.size(); ++li) {
      double scale = std::pow(static_cast<double>(twon), ell_list[li] - 1);
      Eigen::ArrayXd scaled = ratios.col(li).array() * scale;
      CatalanCell cell;
      cell.n = n;
      cell.ell = ell_list[li];
      cell.mean_scaled_ratio = scaled.mean();
      cell.std_scaled_ratio = std::sqrt((scaled - scaled.mean()).square().mean());
      cell.catalan = catalan_number(ell_list[li]);
      cells.push_back(cell);
    }
  }
  return cells;
}

Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> multivariate_b2_bound_check(
    const Eigen::MatrixXd& overlaps, int n, double c) {
  double d = std::pow(2.0, n);
  double threshold = c * std::pow(static_cast<double>(n), 2.0 / 3.0) / d;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> certified(overlaps.rows(), overlaps.cols());
  for (int64_t i = 0; i < overlaps.rows(); ++i)
    for (int64_t j = 0; j < overlaps.cols(); ++j) certified(i, j) = overlaps(i, j) > threshold;
  return certified;
}

double histogram_gaussian_kl(const std::vector<double>& samples, double mu, double sigma,
                             int bins) {
  if (sigma <= 0.0) throw std::invalid_argument("need positive sigma");
  double lo = mu - 4.5 * sigma, hi = mu + 4.5 * sigma;
  double width = (hi - lo) / bins;
  std::vector<double> counts(bins, 0.0);
  double inside = 0.0;
  for (double x : samples) {
    if (x < lo || x >= hi) continue;
    counts[static_cast<int>((x - lo) / width)] += 1.0;
    inside += 1.0;
  }
  if (inside == 0.0) return 1e300;
  auto gauss_cdf = [&](double x) { return 0.5 * std::erfc(-(x - mu) / (sigma * std::sqrt(2.0))); };
  double kl = 0.0;
  double qnorm = gauss_cdf(hi) - gauss_cdf(lo);
  for (int b = 0; b < bins; ++b) {
    double p = counts[b] / inside;
    if (p <= 0.0) continue;
    double q = (gauss_cdf(lo + (b + 1) * width) - gauss_cdf(lo + b * width)) / qnorm;
    kl += p * std::log(p / std::max(q, 1e-300));
  }
  return kl;
}

std::vector<MagicCheckRow> magic_state_distribution_check(const std::vector<double>& theta_list,
                                                          int n, int64_t samples, uint64_t seed) {
  std::vector<MagicCheckRow> rows;
  double sqrt_d = std::pow(2.0, 0.5 * n);
  for (size_t ti = 0; ti < theta_list.size(); ++ti) {
    double theta = theta_list[ti];
    // State B_2 frame matrix is cos(theta/2)/sqrt(2d) J; the observable is
    // the Pauli Z_1 with single basis coefficient sqrt(d) on {1, 2}. Only
    // the (1,2) frame entry of Q^T S Q is needed per draw.
    Eigen::MatrixXd s_frame =
        coeffs_as_matrix(jform_b2_coeffs(n, std::cos(theta / 2.0)));
    std::vector<double> draws(samples);
    parallel_for(0, samples, [&](int64_t i) {
      Rng rng = substream(seed, ti * 1000003ULL + i);
      OrthogonalMatrix q = haar_so(2 * n, rng);
      // X = <transform(obs, Q^T), state> = sqrt(2d) * (Q S Q^T)_{12}
      Eigen::VectorXd tmp = s_frame * q.q.row(1).transpose();
      double entry = q.q.row(0).dot(tmp);
      draws[i] = sqrt_d * std::sqrt(2.0) * entry;
    });
    double mean = 0.0;
    for (double x : draws) mean += x;
    mean /= samples;
    double var = 0.0;
    for (double x : draws) var += (x - mean) * (x - mean);
    var /= samples;
    MagicCheckRow row;
    row.theta = theta;
    row.empirical_std = std::sqrt(var);
    row.predicted_std = std::abs(std::cos(theta / 2.0)) / std::sqrt(2.0 * n - 1.0);
    row.kl_divergence = row.predicted_std > 1e-12
                            ? histogram_gaussian_kl(draws, 0.0, row.predicted_std)
                            : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace matchgp
