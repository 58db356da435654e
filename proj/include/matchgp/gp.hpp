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

#include <optional>

#include "matchgp/kernels.hpp"

namespace matchgp {

struct Posterior {
  double mean;
  double variance;
};

/// Zero-prior-mean GP over a fixed training set. Solves go through an LLT
/// factorization of K + R with jitter escalation 1e-12 -> 1e-6 (x10 steps);
/// the jitter actually used is recorded.
class GPModel {
 public:
  GPModel(KernelMatrix gram, Eigen::VectorXd y, Eigen::VectorXd r_diagonal);

  static GPModel empty();

  int64_t size() const { return y_.size(); }
  const KernelMatrix& gram() const { return gram_; }
  const Eigen::VectorXd& y() const { return y_; }
  const Eigen::VectorXd& r_diagonal() const { return r_; }
  double jitter_used() const { return jitter_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }  // (K+R)^{-1} y

  /// Posterior at a test point given its prior variance and the kernel
  /// column against the training set.
  Posterior posterior(double k_star_star, const Eigen::VectorXd& k_star) const;

  double log_marginal_likelihood() const;

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

 private:
  GPModel() = default;
  KernelMatrix gram_;
  Eigen::VectorXd y_, r_;
  Eigen::LDLT<Eigen::MatrixXd> ldlt_;
  Eigen::VectorXd alpha_;
  double jitter_ = 0.0;
  double log_det_ = 0.0;
  bool proper_ = true;  // false when K+R came out indefinite (LML undefined)
};

/// dLML/dtheta_i = 0.5 tr[(alpha alpha^T - (K+R)^{-1}) K_i / K_count] for a
/// combination kernel with cached per-base Grams.
Eigen::VectorXd lml_gradient_weights(const std::vector<Eigen::MatrixXd>& base_grams,
                                     const Eigen::VectorXd& theta,
                                     const Eigen::VectorXd& y,
                                     const Eigen::VectorXd& r_diagonal);

struct WeightOptResult {
  Eigen::VectorXd theta;
  double lml;
  int iterations;
};

/// Projected gradient ascent on the LML over the weight box, with
/// backtracking; stops at projected-gradient norm <= 1e-6 or 500 steps.
WeightOptResult optimize_kernel_weights(const std::vector<Eigen::MatrixXd>& base_grams,
                                        const Eigen::VectorXd& y,
                                        const Eigen::VectorXd& r_diagonal,
                                        const Eigen::VectorXd& theta0,
                                        double box_lo = 0.0, double box_hi = 1.0);

struct LaplaceClassifier {
  Eigen::MatrixXd k;          // renormalized training Gram
  Eigen::VectorXd f_hat;      // Laplace mode
  Eigen::VectorXd grad;       // y - sigma(f_hat)
  Eigen::VectorXd w_sqrt;     // sqrt of logistic Hessian at the mode
  Eigen::LLT<Eigen::MatrixXd> b_llt;  // chol(I + W^1/2 K W^1/2)
  double scale = 1.0;         // kernel renormalization factor applied
  int newton_iterations = 0;
};

/// Laplace approximation for binary labels in {0, 1} with the logistic
/// link. The Gram is rescaled so its mean diagonal is `diag_target`.
LaplaceClassifier fit_laplace_classifier(const KernelMatrix& gram,
                                         const Eigen::VectorXi& labels,
                                         double diag_target = 1.0);

struct ClassPrediction {
  double probability;   // sigma(mu_z / sqrt(1 + pi sigma_z^2 / 8))
  double latent_mean;
  double latent_variance;
};

/// k_star / k_star_star are raw (un-renormalized) kernel values; the
/// classifier's scale is applied internally.
ClassPrediction classify_posterior(const LaplaceClassifier& cls, double k_star_star,
                                   const Eigen::VectorXd& k_star);

/// Pool index with maximal posterior variance; ties break to the smallest
/// index.
int64_t active_learning_step(const GPModel& model,
                             const std::vector<double>& pool_prior_variance,
                             const std::vector<Eigen::VectorXd>& pool_k_star);

}  // namespace matchgp
