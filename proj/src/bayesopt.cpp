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

#include "matchgp/bayesopt.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace matchgp {

namespace {

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI); }
double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

double expected_improvement(double mu, double sigma, double y_plus, double xi) {
  if (sigma < 0.0) throw std::invalid_argument("negative sigma");
  if (xi < 0.0) throw std::invalid_argument("negative xi");
  double delta = mu - y_plus - xi;
  if (sigma == 0.0) return std::max(0.0, delta);
  double z = delta / sigma;
  return delta * normal_cdf(z) + sigma * normal_pdf(z);
}

double ucb(double mu, double sigma, double beta) {
  if (sigma < 0.0) throw std::invalid_argument("negative sigma");
  if (beta < 0.0) throw std::invalid_argument("negative beta");
  return mu + beta * sigma;
}

std::pair<double, double> chi2_surrogate(double mu_gp, double sigma_gp) {
  if (sigma_gp < 0.0) throw std::invalid_argument("negative sigma");
  double mean = mu_gp * mu_gp + sigma_gp * sigma_gp;
  double var = 2.0 * sigma_gp * sigma_gp * (2.0 * mu_gp * mu_gp + sigma_gp * sigma_gp);
  return {mean, std::sqrt(var)};
}

BOTrace bo_loop(const BOProblem& problem, const AcquisitionSpec& acq,
                const std::vector<int64_t>& init, int max_iters) {
  if (problem.grid_size <= 0) throw std::invalid_argument("empty grid");
  BOTrace trace;
  std::vector<int64_t> queried;
  std::vector<double> raw_obs;  // values modeled by the GP
  std::set<int64_t> queried_set;
  std::vector<Eigen::VectorXd> columns;  // kernel column over the grid per query

  auto objective_of = [&](double raw) {
    return acq.chi2_composite ? raw * raw : raw;
  };

  auto add_query = [&](int64_t g, double acq_value) {
    double raw = problem.objective(g);
    queried.push_back(g);
    queried_set.insert(g);
    raw_obs.push_back(raw);
    Eigen::VectorXd col(problem.grid_size);
    for (int64_t i = 0; i < problem.grid_size; ++i) col(i) = problem.kernel(i, g);
    columns.push_back(std::move(col));
    trace.queries.push_back(g);
    trace.observed.push_back(objective_of(raw));
    trace.acquisition.push_back(acq_value);
    double best = trace.best_so_far.empty() ? objective_of(raw)
                                            : std::max(trace.best_so_far.back(), objective_of(raw));
    trace.best_so_far.push_back(best);
  };

  for (int64_t g : init) add_query(g, std::numeric_limits<double>::quiet_NaN());

  while (static_cast<int>(queried.size()) < max_iters) {
    int64_t nq = static_cast<int64_t>(queried.size());
    KernelMatrix gram;
    gram.values.resize(nq, nq);
    gram.noise_variance = Eigen::MatrixXd::Zero(nq, nq);
    gram.labels.assign(nq, "");
    for (int64_t i = 0; i < nq; ++i)
      for (int64_t j = 0; j < nq; ++j) gram.values(i, j) = columns[j](queried[i]);
    gram.values = 0.5 * (gram.values + gram.values.transpose());
    Eigen::VectorXd y = Eigen::Map<Eigen::VectorXd>(raw_obs.data(), nq);
    Eigen::VectorXd r = Eigen::VectorXd::Constant(nq, problem.observation_variance);
    GPModel model(std::move(gram), y, r);

    // Surrogate mean and acquisition on the full grid.
    double y_plus = trace.best_so_far.back();
    std::vector<double> surrogate_mean(problem.grid_size);
    std::vector<double> score(problem.grid_size);
    parallel_for(0, problem.grid_size, [&](int64_t g) {
      Eigen::VectorXd k_star(nq);
      for (int64_t j = 0; j < nq; ++j) k_star(j) = columns[j](g);
      Posterior post = model.posterior(problem.kernel(g, g), k_star);
      double mu = post.mean, sigma = std::sqrt(post.variance);
      if (acq.chi2_composite) std::tie(mu, sigma) = chi2_surrogate(mu, sigma);
      surrogate_mean[g] = mu;
      score[g] = acq.kind == AcquisitionSpec::Kind::ExpectedImprovement
                     ? expected_improvement(mu, sigma, y_plus, acq.xi)
                     : ucb(mu, sigma, acq.beta);
    });

    if (problem.known_optimum >= 0) {
      int64_t mean_argmax = 0;
      for (int64_t g = 1; g < problem.grid_size; ++g)
        if (surrogate_mean[g] > surrogate_mean[mean_argmax]) mean_argmax = g;
      if (mean_argmax == problem.known_optimum) {
        trace.reached_known_optimum = true;
        trace.evaluations_to_optimum = nq;
        break;
      }
    }

    int64_t next = -1;
    for (int64_t g = 0; g < problem.grid_size; ++g) {
      if (queried_set.count(g)) continue;
      if (next < 0 || score[g] > score[next]) next = g;
    }
    if (next < 0) break;  // grid exhausted
    add_query(next, score[next]);
  }
  return trace;
}

}  // namespace matchgp
