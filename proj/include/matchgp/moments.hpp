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

#include "matchgp/module_coeffs.hpp"

namespace matchgp {

/// Isserlis (Wick) moment of a zero-mean Gaussian: sum over all (k-1)!!
/// pairings of products of covariances. Odd k gives 0.
double isserlis_moment(const Eigen::MatrixXd& cov, const std::vector<int>& index_multiset);

struct MomentCheck {
  std::vector<int> indices;  // variable index multiset
  double empirical;
  double isserlis;           // prediction from the empirical covariance
  double std_error;          // jackknife
  double z;                  // (empirical - isserlis) / std_error
};

struct MomentReport {
  std::vector<MomentCheck> checks;
  Eigen::MatrixXd covariance;
  std::vector<double> skewness;         // per variable
  std::vector<double> excess_kurtosis;  // per variable
  double max_abs_z = 0.0;
};

/// Empirical mixed moments of the sample columns up to max_order, compared
/// against Isserlis predictions built from the empirical covariance;
/// standard errors by 50-block jackknife of the deviation statistic.
MomentReport moment_report(const Eigen::MatrixXd& samples, int max_order);

/// (||MM||_ell / ||MM||_1)^ell with MM = M^T M, via singular values of M.
double schatten_ratio(const Eigen::MatrixXd& coeff_matrix, int ell);

struct CatalanCell {
  int n;
  int ell;
  double mean_scaled_ratio;  // mean of ratio * (2n)^(ell-1)
  double std_scaled_ratio;
  double catalan;
};

/// Random B_2 observables with i.i.d. N(0,1) basis coefficients:
/// ratio * (2n)^{ell-1} -> Cat(ell).
std::vector<CatalanCell> catalan_convergence_check(const std::vector<int>& n_list,
                                                   const std::vector<int>& ell_list,
                                                   int samples_per_n, uint64_t seed);

/// Diagnostic flags: pair (i, j) certified when <rho_i, rho_j>_{B2}
/// exceeds c * n^{2/3} / d.
Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> multivariate_b2_bound_check(
    const Eigen::MatrixXd& overlaps, int n, double c = 1.0);

struct MagicCheckRow {
  double theta;
  double empirical_std;
  double predicted_std;  // |cos(theta/2)| / sqrt(2n - 1)
  double kl_divergence;  // histogram vs fitted Gaussian
};

/// Coefficient-level sampling of Z_1 expectations over Haar matchgates for
/// the magic extent states; no dense state needed.
std::vector<MagicCheckRow> magic_state_distribution_check(const std::vector<double>& theta_list,
                                                          int n, int64_t samples, uint64_t seed);

/// KL divergence of a sample histogram against the N(mu, sigma) density,
/// over equal-width bins spanning [-4.5, 4.5] sigma around mu.
double histogram_gaussian_kl(const std::vector<double>& samples, double mu, double sigma,
                             int bins = 61);

double catalan_number(int ell);

}  // namespace matchgp
