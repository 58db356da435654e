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

#include "matchgp/gp.hpp"

#include <cmath>

namespace matchgp {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

GPModel GPModel::empty() { return GPModel(); }

GPModel::GPModel(KernelMatrix gram, Eigen::VectorXd y, Eigen::VectorXd r_diagonal)
    : gram_(std::move(gram)), y_(std::move(y)), r_(std::move(r_diagonal)) {
  int64_t n = y_.size();
  if (gram_.size() != n || r_.size() != n)
    throw std::invalid_argument("gram/y/R size mismatch");
  if (r_.minCoeff() < 0.0) throw std::invalid_argument("R must be nonnegative");
  Eigen::MatrixXd kr = gram_.values;
  kr.diagonal() += r_;
  double jitter = 0.0;
  for (int attempt = 0; attempt <= 7; ++attempt) {
    Eigen::MatrixXd sys = kr;
    if (jitter > 0.0) sys.diagonal().array() += jitter;
    ldlt_.compute(sys);
    if (ldlt_.info() == Eigen::Success && ldlt_.isPositive()) {
      jitter_ = jitter;
      alpha_ = ldlt_.solve(y_);
      log_det_ = ldlt_.vectorD().array().log().sum();
      return;
    }
    jitter = (jitter == 0.0) ? 1e-12 : jitter * 10.0;
    if (jitter > 1e-6 * 1.0000001) break;
  }
  // Boundary case: noisy kernels can sit mildly indefinite even after the
  // max jitter. The symmetric factorization still solves the system; only
  // the marginal likelihood stops being defined.
  ldlt_.compute(kr);
  if (ldlt_.info() != Eigen::Success)
    throw std::runtime_error("GP factorization failed after max jitter escalation");
  jitter_ = 0.0;
  proper_ = false;
  alpha_ = ldlt_.solve(y_);
  log_det_ = 0.0;
}

Posterior GPModel::posterior(double k_star_star, const Eigen::VectorXd& k_star) const {
  if (size() == 0) return {0.0, k_star_star};
  Eigen::VectorXd v = ldlt_.solve(k_star);
  double mean = k_star.dot(alpha_);
  double var = k_star_star - k_star.dot(v);
  return {mean, std::max(var, 0.0)};
}

double GPModel::log_marginal_likelihood() const {
  if (!proper_)
    throw std::runtime_error("marginal likelihood undefined: K+R not positive definite");
  int64_t n = size();
  return -0.5 * y_.dot(alpha_) - 0.5 * log_det_ - 0.5 * n * std::log(2.0 * kPi);
}

Eigen::VectorXd GPModel::solve(const Eigen::VectorXd& rhs) const { return ldlt_.solve(rhs); }

namespace {

Eigen::MatrixXd combo_gram(const std::vector<Eigen::MatrixXd>& base_grams,
                           const Eigen::VectorXd& theta) {
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(base_grams[0].rows(), base_grams[0].cols());
  for (size_t i = 0; i < base_grams.size(); ++i) k += theta(i) * base_grams[i];
  return k / static_cast<double>(base_grams.size());
}

double combo_lml(const std::vector<Eigen::MatrixXd>& base_grams, const Eigen::VectorXd& theta,
                 const Eigen::VectorXd& y, const Eigen::VectorXd& r) {
  KernelMatrix km;
  km.values = combo_gram(base_grams, theta);
  km.noise_variance = Eigen::MatrixXd::Zero(km.values.rows(), km.values.cols());
  GPModel model(std::move(km), y, r);
  return model.log_marginal_likelihood();
}

}  // namespace

Eigen::VectorXd lml_gradient_weights(const std::vector<Eigen::MatrixXd>& base_grams,
                                     const Eigen::VectorXd& theta,
                                     const Eigen::VectorXd& y,
                                     const Eigen::VectorXd& r_diagonal) {
  if (base_grams.empty() || theta.size() != static_cast<int64_t>(base_grams.size()))
    throw std::invalid_argument("base gram/theta mismatch");
  Eigen::MatrixXd k = combo_gram(base_grams, theta);
  k.diagonal() += r_diagonal;
  Eigen::LLT<Eigen::MatrixXd> llt(k);
  if (llt.info() != Eigen::Success) {
    k.diagonal().array() += 1e-10;
    llt.compute(k);
    if (llt.info() != Eigen::Success) throw std::runtime_error("LML gradient factorization failed");
  }
  Eigen::VectorXd alpha = llt.solve(y);
  Eigen::MatrixXd kinv = llt.solve(Eigen::MatrixXd::Identity(k.rows(), k.cols()));
  Eigen::MatrixXd outer = alpha * alpha.transpose() - kinv;
  Eigen::VectorXd grad(theta.size());
  double inv_count = 1.0 / static_cast<double>(base_grams.size());
  for (size_t i = 0; i < base_grams.size(); ++i)
    grad(i) = 0.5 * inv_count * outer.cwiseProduct(base_grams[i]).sum();
  return grad;
}

WeightOptResult optimize_kernel_weights(const std::vector<Eigen::MatrixXd>& base_grams,
                                        const Eigen::VectorXd& y,
                                        const Eigen::VectorXd& r_diagonal,
                                        const Eigen::VectorXd& theta0,
                                        double box_lo, double box_hi) {
  auto project = [&](Eigen::VectorXd t) {
    return t.cwiseMax(box_lo).cwiseMin(box_hi);
  };
  Eigen::VectorXd theta = project(theta0);
  double lml = combo_lml(base_grams, theta, y, r_diagonal);
  int iter = 0;
  for (; iter < 500; ++iter) {
    Eigen::VectorXd grad = lml_gradient_weights(base_grams, theta, y, r_diagonal);
    Eigen::VectorXd projected_grad = project(theta + grad) - theta;
    if (projected_grad.norm() <= 1e-6) break;
    double step = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      Eigen::VectorXd cand = project(theta + step * grad);
      if ((cand - theta).norm() < 1e-15) break;
      double cand_lml = combo_lml(base_grams, cand, y, r_diagonal);
      if (cand_lml > lml) {
        theta = cand;
        lml = cand_lml;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return {theta, lml, iter};
}

LaplaceClassifier fit_laplace_classifier(const KernelMatrix& gram,
                                         const Eigen::VectorXi& labels,
                                         double diag_target) {
  int64_t n = labels.size();
  if (gram.size() != n) throw std::invalid_argument("gram/label size mismatch");
  for (int64_t i = 0; i < n; ++i)
    if (labels(i) != 0 && labels(i) != 1)
      throw std::invalid_argument("labels must be binary 0/1");
  double mean_diag = gram.values.diagonal().mean();
  if (mean_diag <= 0.0) throw std::invalid_argument("degenerate kernel diagonal");
  LaplaceClassifier cls;
  cls.scale = diag_target / mean_diag;
  cls.k = cls.scale * gram.values;

  // Newton iteration for the Laplace mode (GPML algorithm 3.1).
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd yf = labels.cast<double>();
  double prev_obj = -1e300;
  bool converged = false;
  for (int it = 0; it < 100; ++it) {
    Eigen::VectorXd pi(n), w(n);
    for (int64_t i = 0; i < n; ++i) {
      pi(i) = sigmoid(f(i));
      w(i) = std::max(pi(i) * (1.0 - pi(i)), 1e-12);
    }
    Eigen::VectorXd w_sqrt = w.cwiseSqrt();
    Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n) +
                        w_sqrt.asDiagonal() * cls.k * w_sqrt.asDiagonal();
    Eigen::LLT<Eigen::MatrixXd> b_llt(b);
    if (b_llt.info() != Eigen::Success) throw std::runtime_error("Laplace factorization failed");
    Eigen::VectorXd grad = yf - pi;
    Eigen::VectorXd bvec = w.cwiseProduct(f) + grad;
    Eigen::VectorXd a = bvec - w_sqrt.cwiseProduct(
                                   b_llt.solve(w_sqrt.cwiseProduct(cls.k * bvec)));
    f = cls.k * a;
    double obj = -0.5 * a.dot(f);
    for (int64_t i = 0; i < n; ++i) {
      double z = f(i);
      obj += yf(i) * z - std::log1p(std::exp(z));  // log p(y | f)
    }
    cls.newton_iterations = it + 1;
    if (std::abs(obj - prev_obj) < 1e-12) {
      converged = true;
      prev_obj = obj;
      break;
    }
    prev_obj = obj;
  }
  if (!converged && cls.newton_iterations >= 100)
    throw std::runtime_error("Laplace Newton iteration did not converge");

  cls.f_hat = f;
  cls.grad.resize(n);
  cls.w_sqrt.resize(n);
  for (int64_t i = 0; i < n; ++i) {
    double pi_i = sigmoid(f(i));
    cls.grad(i) = yf(i) - pi_i;
    cls.w_sqrt(i) = std::sqrt(std::max(pi_i * (1.0 - pi_i), 1e-12));
  }
  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n) +
                      cls.w_sqrt.asDiagonal() * cls.k * cls.w_sqrt.asDiagonal();
  cls.b_llt.compute(b);
  return cls;
}

ClassPrediction classify_posterior(const LaplaceClassifier& cls, double k_star_star,
                                   const Eigen::VectorXd& k_star) {
  Eigen::VectorXd ks = cls.scale * k_star;
  double kss = cls.scale * k_star_star;
  double mu = ks.dot(cls.grad);
  Eigen::VectorXd v = cls.b_llt.matrixL().solve(cls.w_sqrt.cwiseProduct(ks));
  double var = std::max(kss - v.squaredNorm(), 0.0);
  double prob = sigmoid(mu / std::sqrt(1.0 + kPi * var / 8.0));
  return {prob, mu, var};
}

int64_t active_learning_step(const GPModel& model,
                             const std::vector<double>& pool_prior_variance,
                             const std::vector<Eigen::VectorXd>& pool_k_star) {
  if (pool_prior_variance.empty() || pool_prior_variance.size() != pool_k_star.size())
    throw std::invalid_argument("empty or mismatched candidate pool");
  int64_t best = 0;
  double best_var = -1.0;
  for (size_t i = 0; i < pool_prior_variance.size(); ++i) {
    double var = model.posterior(pool_prior_variance[i], pool_k_star[i]).variance;
    if (var > best_var + 1e-15) {
      best_var = var;
      best = static_cast<int64_t>(i);
    }
  }
  return best;
}

}  // namespace matchgp
