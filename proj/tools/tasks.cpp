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

#include "tasks.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>

#include "matchgp/bell.hpp"
#include "matchgp/datasets.hpp"
#include "matchgp/moments.hpp"

namespace matchgp::tasks {

namespace fs = std::filesystem;

namespace {

struct RunContext {
  fs::path dir;
  Json manifest_outputs = Json::array();

  void write(const std::string& name, const std::string& content) {
    write_text_file((dir / name).string(), content);
    manifest_outputs.push_back(name);
  }
};

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  if (count == 1) {
    out.push_back(lo);
    return out;
  }
  for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
  return out;
}

// ---------------------------------------------------------------- regress

struct RegressionData {
  std::vector<double> train_inputs, test_inputs;
  std::vector<double> train_labels, test_labels;
  KernelFn train_kernel;                       // over train indices
  std::function<double(int64_t, int64_t)> cross_kernel;  // (test, train)
  std::function<double(int64_t)> test_prior;   // kappa(t*, t*)
  double prefactor = 0.0;
  int m = 0;
  int n = 0;
};

RegressionData build_regression_data(const Json& cfg, uint64_t seed) {
  const Json& ds = cfg.at("dataset");
  std::string name = ds.at("name").get<std::string>();
  int n = ds.at("n").get<int>();
  const Json& train = cfg.at("train");
  const Json& test = cfg.at("test");
  std::vector<double> train_t = linspace(train.at("lo").get<double>(),
                                         train.at("hi").get<double>(),
                                         train.at("count").get<int>());
  std::vector<double> test_t = linspace(test.at("lo").get<double>(),
                                        test.at("hi").get<double>(),
                                        test.at("count").get<int>());
  std::string family = cfg.at("kernel").at("family").get<std::string>();
  if (family != "matchgate_exact" && family != "matchgate_asymptotic" &&
      family != "fidelity" && family != "multi_sector")
    throw std::invalid_argument("unknown kernel family: " + family);

  RegressionData out;
  out.train_inputs = train_t;
  out.test_inputs = test_t;
  out.n = n;

  std::vector<double> all_t = train_t;
  all_t.insert(all_t.end(), test_t.begin(), test_t.end());
  int64_t nt = static_cast<int64_t>(train_t.size());

  if (name == "synthetic_b1") {
    uint64_t dseed = ds.value("dataset_seed", seed);
    uint64_t useed = ds.value("unitary_seed", seed + 1);
    if (family == "fidelity") {
      std::vector<QuantumState> states;
      for (double t : all_t) states.push_back(synthetic_state(t, n, dseed));
      auto task = make_synthetic_b1_task(n, all_t, dseed, useed);
      for (int64_t i = 0; i < nt; ++i) out.train_labels.push_back(task.labels[i]);
      for (size_t i = nt; i < all_t.size(); ++i) out.test_labels.push_back(task.labels[i]);
      double norm_sq = std::pow(2.0, n);  // Pauli observable
      auto shared = std::make_shared<std::vector<QuantumState>>(std::move(states));
      out.train_kernel = [shared, norm_sq, n](int64_t i, int64_t j) {
        return fidelity_kernel((*shared)[i], (*shared)[j], norm_sq, n);
      };
      out.cross_kernel = [shared, norm_sq, n, nt](int64_t ti, int64_t tj) {
        return fidelity_kernel((*shared)[nt + ti], (*shared)[tj], norm_sq, n);
      };
      out.test_prior = [shared, norm_sq, n, nt](int64_t ti) {
        return fidelity_kernel((*shared)[nt + ti], (*shared)[nt + ti], norm_sq, n);
      };
      return out;
    }
    auto task = std::make_shared<SyntheticB1Task>(make_synthetic_b1_task(n, all_t, dseed, useed));
    KernelMode mode = family == "matchgate_asymptotic" ? KernelMode::Asymptotic : KernelMode::Exact;
    out.m = 1;
    out.prefactor = matchgate_kernel_prefactor(task->obs, mode);
    for (int64_t i = 0; i < nt; ++i) out.train_labels.push_back(task->labels[i]);
    for (size_t i = nt; i < all_t.size(); ++i) out.test_labels.push_back(task->labels[i]);
    auto kernel = [task, mode](int64_t i, int64_t j) {
      return matchgate_kernel(task->coeffs[i], task->coeffs[j], task->obs, mode);
    };
    out.train_kernel = kernel;
    out.cross_kernel = [kernel, nt](int64_t ti, int64_t tj) { return kernel(nt + ti, tj); };
    out.test_prior = [kernel, nt](int64_t ti) { return kernel(nt + ti, nt + ti); };
    return out;
  }
  if (name == "bench_b2") {
    uint64_t useed = ds.value("unitary_seed", seed + 1);
    auto task =
        std::make_shared<BenchRegressionTask>(make_bench_regression_task(n, all_t, useed));
    KernelMode mode = family == "matchgate_asymptotic" ? KernelMode::Asymptotic : KernelMode::Exact;
    out.m = 2;
    out.prefactor = matchgate_kernel_prefactor(task->obs, mode);
    for (int64_t i = 0; i < nt; ++i) out.train_labels.push_back(task->labels[i]);
    for (size_t i = nt; i < all_t.size(); ++i) out.test_labels.push_back(task->labels[i]);
    auto kernel = [task, mode](int64_t i, int64_t j) {
      return matchgate_kernel(task->coeffs[i], task->coeffs[j], task->obs, mode);
    };
    out.train_kernel = kernel;
    out.cross_kernel = [kernel, nt](int64_t ti, int64_t tj) { return kernel(nt + ti, tj); };
    out.test_prior = [kernel, nt](int64_t ti) { return kernel(nt + ti, nt + ti); };
    return out;
  }
  if (name == "xxz_cut") {
    // h1 = r cos(theta), h2 = r sin(theta); inputs are theta values.
    double j = ds.value("J", 1.0), jz = ds.value("Jz", 1.0);
    double radius = ds.value("radius", 100.0);
    std::vector<ModuleCoefficients> coeffs;
    std::vector<double> labels;
    ModuleCoefficients obs(n, 2, CoeffKind::Observable);
    for (int i = 1; i <= n; ++i) {
      obs.values() +=
          project_pauli_observable(PauliString::single(n, i, Pauli::Z), 2).values() / n;
    }
    for (double theta : all_t) {
      HamiltonianSpec spec{HamiltonianSpec::Variant::XxzAlternatingField, n,
                           {{"h1", radius * std::cos(theta)},
                            {"h2", radius * std::sin(theta)},
                            {"J", j},
                            {"Jz", jz}}};
      QuantumState gs = ground_state(spec);
      coeffs.push_back(project_state(gs, 2));
      double mag = 0.0;
      for (int i = 1; i <= n; ++i)
        mag += gs.expectation(PauliString::single(n, i, Pauli::Z)) / n;
      labels.push_back(mag);
    }
    out.m = 2;
    auto shared_coeffs = std::make_shared<std::vector<ModuleCoefficients>>(std::move(coeffs));
    auto shared_obs = std::make_shared<ModuleCoefficients>(std::move(obs));
    out.prefactor = matchgate_kernel_prefactor(*shared_obs, KernelMode::Exact);
    for (int64_t i = 0; i < nt; ++i) out.train_labels.push_back(labels[i]);
    for (size_t i = nt; i < all_t.size(); ++i) out.test_labels.push_back(labels[i]);
    auto kernel = [shared_coeffs, shared_obs](int64_t i, int64_t j) {
      return matchgate_kernel((*shared_coeffs)[i], (*shared_coeffs)[j], *shared_obs,
                              KernelMode::Exact);
    };
    out.train_kernel = kernel;
    out.cross_kernel = [kernel, nt](int64_t ti, int64_t tj) { return kernel(nt + ti, tj); };
    out.test_prior = [kernel, nt](int64_t ti) { return kernel(nt + ti, nt + ti); };
    return out;
  }
  if (name == "xxx") {
    // Inputs are J1/J2 ratios; multi-sector B_2 + B_4 kernel.
    if (family != "multi_sector")
      throw std::invalid_argument("the xxx dataset uses the multi_sector kernel family");
    XxxTask task = make_xxx_task(n, 1);
    task.ratios.clear();
    task.order_parameter.clear();
    task.b2_coeffs.clear();
    task.b4_coeffs.clear();
    std::string b4_mode = cfg.at("kernel").value("b4_mode", std::string("asymptotic"));
    task.b4_sector.mode = b4_mode == "exact"
                              ? KernelMode::Exact
                              : (b4_mode == "inverse_dimension" ? KernelMode::InverseDimension
                                                                : KernelMode::Asymptotic);
    // Exact constants exist only for m <= 2; fail fast with the constraint.
    (void)matchgate_kernel_prefactor(task.b4_sector.obs, task.b4_sector.mode);
    PauliString xx(n), yy(n), zz(n);
    int mid = n / 2;
    xx.set_letter(mid, Pauli::X);
    xx.set_letter(mid + 1, Pauli::X);
    yy.set_letter(mid, Pauli::Y);
    yy.set_letter(mid + 1, Pauli::Y);
    zz.set_letter(mid, Pauli::Z);
    zz.set_letter(mid + 1, Pauli::Z);
    for (double ratio : all_t) {
      HamiltonianSpec spec{HamiltonianSpec::Variant::XxxBondAlternating, n,
                           {{"J1", ratio}, {"J2", 1.0}}};
      QuantumState gs = ground_state(spec);
      task.ratios.push_back(ratio);
      task.b2_coeffs.push_back(project_state(gs, 2));
      task.b4_coeffs.push_back(project_state(gs, 4));
      task.order_parameter.push_back(gs.expectation(xx) + gs.expectation(yy) +
                                     gs.expectation(zz));
    }
    auto shared = std::make_shared<XxxTask>(std::move(task));
    out.m = 2;
    out.prefactor = matchgate_kernel_prefactor(shared->b2_sector.obs, KernelMode::Exact);
    for (int64_t i = 0; i < nt; ++i) out.train_labels.push_back(shared->order_parameter[i]);
    for (size_t i = nt; i < all_t.size(); ++i)
      out.test_labels.push_back(shared->order_parameter[i]);
    auto kernel = [shared](int64_t i, int64_t j) { return shared->kernel(i, j); };
    out.train_kernel = kernel;
    out.cross_kernel = [kernel, nt](int64_t ti, int64_t tj) { return kernel(nt + ti, tj); };
    out.test_prior = [kernel, nt](int64_t ti) { return kernel(nt + ti, nt + ti); };
    return out;
  }
  throw std::invalid_argument("unknown dataset name: " + name);
}

int run_regress(const Json& cfg, RunContext& ctx, uint64_t seed) {
  RegressionData data = build_regression_data(cfg, seed);
  int64_t nt = static_cast<int64_t>(data.train_inputs.size());
  int64_t ns = static_cast<int64_t>(data.test_inputs.size());

  std::vector<std::string> labels;
  for (double t : data.train_inputs) labels.push_back(format_double(t));
  KernelMatrix gram = gram_matrix(labels, data.train_kernel);
  gram.prefactor = data.prefactor;

  Json shots = cfg.value("shots", Json{{"n_obs", 0}, {"n_kappa", 0}});
  int64_t n_obs = shots.value("n_obs", 0);
  int64_t n_kappa = shots.value("n_kappa", 0);
  Rng rng = substream(seed, 1);

  Eigen::VectorXd y(nt), r = Eigen::VectorXd::Constant(nt, 1e-10);
  for (int64_t i = 0; i < nt; ++i) {
    NoisyValue nv = noisy_observation(data.train_labels[i], n_obs, rng);
    y(i) = nv.value;
    if (nv.variance > 0) r(i) = nv.variance;
  }

  double sigma_kappa = 0.0;
  if (n_kappa > 0) {
    if (data.prefactor == 0.0)
      throw std::invalid_argument("shot noise on kernels requires a matchgate kernel");
    gram = noisy_kernel(gram, data.m, data.n, n_kappa, rng);
    sigma_kappa = std::sqrt(gram.noise_variance(0, 0));
  }

  std::string repair = cfg.value("psd_repair", std::string("none"));
  double shift = 0.0;
  if (repair == "clip") {
    gram = psd_clip(gram);
  } else if (repair == "shift_min") {
    auto res = psd_shift_min(gram);
    gram = res.repaired;
    shift = res.shift;
  } else if (repair == "shift_wigner") {
    auto res = psd_shift_wigner(gram, nt, sigma_kappa);
    gram = res.repaired;
    shift = res.shift;
  } else if (repair != "none") {
    throw std::invalid_argument("unknown psd_repair: " + repair);
  }

  GPModel model(gram, y, r);

  std::string csv = "t,y_true,mu,sigma\n";
  double mse = 0.0;
  for (int64_t ti = 0; ti < ns; ++ti) {
    Eigen::VectorXd k_star(nt);
    for (int64_t j = 0; j < nt; ++j) k_star(j) = data.cross_kernel(ti, j);
    if (n_kappa > 0) {
      Eigen::MatrixXd noisy_col =
          noisy_cross_kernel(k_star.transpose(), data.prefactor, data.m, data.n, n_kappa, rng);
      k_star = noisy_col.row(0).transpose();
    }
    Posterior post = model.posterior(data.test_prior(ti), k_star);
    mse += (post.mean - data.test_labels[ti]) * (post.mean - data.test_labels[ti]);
    csv += csv_row({data.test_inputs[ti], data.test_labels[ti], post.mean,
                    std::sqrt(post.variance)}) + "\n";
  }
  mse /= ns;
  ctx.write("predictions.csv", csv);

  Json model_dump = {{"inputs", data.train_inputs},
                     {"y", std::vector<double>(y.data(), y.data() + nt)},
                     {"r_diagonal", std::vector<double>(r.data(), r.data() + nt)},
                     {"kernel", cfg.at("kernel")},
                     {"psd_repair", repair},
                     {"psd_shift", shift},
                     {"jitter_used", model.jitter_used()},
                     {"test_mse", mse}};
  ctx.write("model.json", model_dump.dump(2) + "\n");
  ctx.write("gram.csv", gram_to_csv(gram));
  ctx.write("gram.json", gram_to_json(gram).dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------- classify

int run_classify(const Json& cfg, RunContext& ctx, uint64_t seed) {
  (void)seed;
  const Json& ds = cfg.at("dataset");
  int n = ds.at("n").get<int>();
  int num_points = ds.value("num_points", 41);
  XxxTask task = make_xxx_task(n, num_points);
  std::vector<double> train_ratios = cfg.at("train_ratios").get<std::vector<double>>();

  // Map requested training ratios to nearest grid indices.
  std::vector<int64_t> train_idx;
  for (double r : train_ratios) {
    int64_t best = 0;
    for (int64_t i = 1; i < static_cast<int64_t>(task.ratios.size()); ++i)
      if (std::abs(task.ratios[i] - r) < std::abs(task.ratios[best] - r)) best = i;
    train_idx.push_back(best);
  }

  int64_t nt = static_cast<int64_t>(train_idx.size());
  KernelMatrix gram;
  gram.values.resize(nt, nt);
  gram.noise_variance = Eigen::MatrixXd::Zero(nt, nt);
  for (int64_t i = 0; i < nt; ++i) {
    gram.labels.push_back(format_double(task.ratios[train_idx[i]]));
    for (int64_t j = 0; j < nt; ++j)
      gram.values(i, j) = task.kernel(train_idx[i], train_idx[j]);
  }
  Eigen::VectorXi labels(nt);
  for (int64_t i = 0; i < nt; ++i)
    labels(i) = task.ratios[train_idx[i]] < 1.0 ? 0 : 1;

  LaplaceClassifier cls = fit_laplace_classifier(gram, labels);

  std::string csv = "ratio,true_label,probability,latent_mean,latent_sigma\n";
  int64_t correct = 0, decidable = 0;
  std::vector<double> latent, order_param;
  for (int64_t g = 0; g < static_cast<int64_t>(task.ratios.size()); ++g) {
    Eigen::VectorXd k_star(nt);
    for (int64_t j = 0; j < nt; ++j) k_star(j) = task.kernel(g, train_idx[j]);
    ClassPrediction pred = classify_posterior(cls, task.kernel(g, g), k_star);
    int true_label = task.ratios[g] < 1.0 ? 0 : 1;
    csv += csv_row({task.ratios[g], static_cast<double>(true_label), pred.probability,
                    pred.latent_mean, std::sqrt(pred.latent_variance)}) + "\n";
    latent.push_back(pred.latent_mean);
    order_param.push_back(task.order_parameter[g]);
    if (std::abs(task.ratios[g] - 1.0) >= 0.2) {
      ++decidable;
      if ((pred.probability >= 0.5 ? 1 : 0) == true_label) ++correct;
    }
  }
  ctx.write("predictions.csv", csv);

  // Pearson correlation of latent mean with the order parameter.
  double lm = 0, om = 0;
  for (size_t i = 0; i < latent.size(); ++i) {
    lm += latent[i];
    om += order_param[i];
  }
  lm /= latent.size();
  om /= latent.size();
  double num = 0, dl = 0, dom = 0;
  for (size_t i = 0; i < latent.size(); ++i) {
    num += (latent[i] - lm) * (order_param[i] - om);
    dl += (latent[i] - lm) * (latent[i] - lm);
    dom += (order_param[i] - om) * (order_param[i] - om);
  }
  double corr = num / std::sqrt(dl * dom);
  Json metrics = {{"accuracy_decidable", static_cast<double>(correct) / decidable},
                  {"latent_order_correlation", corr},
                  {"newton_iterations", cls.newton_iterations}};
  ctx.write("metrics.json", metrics.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------- bo

int run_bo(const Json& cfg, RunContext& ctx, uint64_t seed) {
  std::string problem_name = cfg.at("problem").get<std::string>();
  int n = cfg.at("n").get<int>();
  int max_iters = cfg.value("max_iters", 50);
  const Json& acq_cfg = cfg.value("acquisition", Json::object());
  AcquisitionSpec acq;
  std::string kind = acq_cfg.value("kind", std::string("ei"));
  acq.kind = kind == "ucb" ? AcquisitionSpec::Kind::Ucb
                           : AcquisitionSpec::Kind::ExpectedImprovement;
  acq.xi = acq_cfg.value("xi", 0.01);
  acq.beta = acq_cfg.value("beta", 1.96);
  acq.chi2_composite = acq_cfg.value("chi2", false);

  BOProblem problem;
  std::function<double(int64_t)> grid_coord;
  if (problem_name == "synthetic_2d") {
    double step = cfg.value("step", 0.06);
    auto task = std::make_shared<Synthetic2dTask>(make_synthetic_2d_task(
        n, step, cfg.value("dataset_seed", seed), cfg.value("unitary_seed", seed + 1)));
    double d = std::pow(2.0, n);
    problem.objective = [task](int64_t g) { return task->objective[g]; };
    problem.kernel = [task, d](int64_t i, int64_t j) {
      return task->kernel_prefactor * d * task->features.col(i).dot(task->features.col(j));
    };
    problem.grid_size = static_cast<int64_t>(task->objective.size());
    problem.known_optimum = task->argmax;
    grid_coord = [task](int64_t g) { return static_cast<double>(g); };
  } else if (problem_name == "magnetometry") {
    double step = cfg.value("step", 0.006);
    auto task = std::make_shared<MagnetometryTask>(
        make_magnetometry_task(n, step, cfg.value("delta_alpha", 0.05)));
    problem.objective = [task](int64_t g) { return task->observation[g]; };
    problem.kernel = [task](int64_t i, int64_t j) { return task->kernel(i, j); };
    problem.grid_size = static_cast<int64_t>(task->grid.size());
    problem.known_optimum = task->argmax;
    acq.chi2_composite = acq_cfg.value("chi2", true);
    grid_coord = [task](int64_t g) { return task->grid[g]; };
  } else {
    throw std::invalid_argument("unknown BO problem: " + problem_name);
  }
  if (!cfg.value("benchmark_mode", true)) problem.known_optimum = -1;

  Rng rng = substream(seed, 2);
  std::uniform_int_distribution<int64_t> start(0, problem.grid_size - 1);
  BOTrace trace = bo_loop(problem, acq, {start(rng)}, max_iters);

  std::string csv = "iteration,query_index,query_coord,observed,best_so_far,acquisition\n";
  for (size_t i = 0; i < trace.queries.size(); ++i) {
    csv += csv_row({static_cast<double>(i), static_cast<double>(trace.queries[i]),
                    grid_coord(trace.queries[i]), trace.observed[i], trace.best_so_far[i],
                    trace.acquisition[i]}) + "\n";
  }
  ctx.write("trace.csv", csv);
  Json summary = {{"reached_known_optimum", trace.reached_known_optimum},
                  {"evaluations_to_optimum", trace.evaluations_to_optimum},
                  {"queries", trace.queries.size()}};
  ctx.write("summary.json", summary.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------- verify-moments

int run_verify_moments(const Json& cfg, RunContext& ctx, uint64_t seed) {
  std::string suite = cfg.at("suite").get<std::string>();
  Json report;
  if (suite == "magic") {
    int n = cfg.value("n", 12);
    int64_t samples = cfg.value("samples", 50000);
    std::vector<double> thetas;
    int count = cfg.value("theta_count", 7);
    for (int i = 0; i < count; ++i) thetas.push_back(2.0 * M_PI / 3.0 * i / (count - 1));
    auto rows = magic_state_distribution_check(thetas, n, samples, seed);
    report["rows"] = Json::array();
    std::string csv = "theta,empirical_std,predicted_std,kl\n";
    for (const auto& row : rows) {
      report["rows"].push_back({{"theta", row.theta},
                                {"empirical_std", row.empirical_std},
                                {"predicted_std", row.predicted_std},
                                {"kl", row.kl_divergence}});
      csv += csv_row({row.theta, row.empirical_std, row.predicted_std, row.kl_divergence}) + "\n";
    }
    ctx.write("magic.csv", csv);
  } else if (suite == "catalan") {
    std::vector<int> n_list = cfg.value("n_list", std::vector<int>{100});
    std::vector<int> ell_list = cfg.value("ell_list", std::vector<int>{2, 4});
    int samples = cfg.value("samples", 100);
    auto cells = catalan_convergence_check(n_list, ell_list, samples, seed);
    report["cells"] = Json::array();
    std::string csv = "n,ell,mean_scaled_ratio,std,catalan\n";
    for (const auto& c : cells) {
      report["cells"].push_back({{"n", c.n},
                                 {"ell", c.ell},
                                 {"mean_scaled_ratio", c.mean_scaled_ratio},
                                 {"std", c.std_scaled_ratio},
                                 {"catalan", c.catalan}});
      csv += csv_row({static_cast<double>(c.n), static_cast<double>(c.ell),
                      c.mean_scaled_ratio, c.std_scaled_ratio, c.catalan}) + "\n";
    }
    ctx.write("catalan.csv", csv);
  } else if (suite == "b1" || suite == "b2_gaussian" || suite == "b4_pauli_gaussian") {
    int n = cfg.value("n", 6);
    int64_t samples = cfg.value("samples", 200000);
    int max_order = cfg.value("max_order", 6);
    std::vector<ModuleCoefficients> states;
    ModuleCoefficients obs(n, 1, CoeffKind::Observable);
    if (suite == "b1") {
      obs = project_pauli_observable(majorana(1, n), 1);
      for (int i = 0; i < 3; ++i) {
        QuantumState s = synthetic_state(0.3 + 0.2 * i, n, seed + 10 + i);
        states.push_back(project_state(s, 1));
      }
    } else if (suite == "b2_gaussian") {
      obs = project_pauli_observable(PauliString::single(n, 1, Pauli::Z), 2);
      for (int i = 0; i < 3; ++i) {
        Rng hrng = substream(seed, 20 + i);
        std::normal_distribution<double> gauss(0.0, 0.2);
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n, 2 * n);
        for (int a = 0; a < 2 * n; ++a)
          for (int b = a + 1; b < 2 * n; ++b) {
            h(a, b) = gauss(hrng);
            h(b, a) = -h(a, b);
          }
        states.push_back(project_state(gaussian_state(h, n), 2));
      }
    } else {
      // Gaussian state + Pauli B_4: the analytic |0...0> coefficients.
      PauliString zz(n);
      zz.set_letter(1, Pauli::Z);
      zz.set_letter(2, Pauli::Z);
      obs = project_pauli_observable(zz, 4);
      states.push_back(zero_state_coeffs(n, 4));
    }
    Eigen::MatrixXd draws = sample_batch(states, obs, samples, seed);
    MomentReport mr = moment_report(draws, max_order);
    report["max_abs_z"] = mr.max_abs_z;
    report["skewness"] = mr.skewness;
    report["excess_kurtosis"] = mr.excess_kurtosis;
    report["checks"] = Json::array();
    for (const auto& c : mr.checks) {
      report["checks"].push_back({{"indices", c.indices},
                                  {"empirical", c.empirical},
                                  {"isserlis", c.isserlis},
                                  {"std_error", c.std_error},
                                  {"z", c.z}});
    }
    // Raw sample dump: header of state labels, one row per Haar draw.
    std::string samples_csv;
    for (int64_t s = 0; s < draws.cols(); ++s) {
      if (s) samples_csv += ",";
      samples_csv += "state" + std::to_string(s);
    }
    samples_csv += "\n";
    for (int64_t i = 0; i < draws.rows(); ++i) {
      std::vector<double> row(draws.cols());
      for (int64_t s = 0; s < draws.cols(); ++s) row[s] = draws(i, s);
      samples_csv += csv_row(row) + "\n";
    }
    ctx.write("samples.csv", samples_csv);
    // Histogram of the first column, 61 bins over +-4.5 empirical sigma.
    double sigma = std::sqrt(draws.col(0).array().square().mean());
    std::string hist_csv = "bin_center,count\n";
    if (sigma > 0) {
      const int bins = 61;
      double lo = -4.5 * sigma, width = 9.0 * sigma / bins;
      std::vector<int64_t> counts(bins, 0);
      for (int64_t i = 0; i < draws.rows(); ++i) {
        double x = draws(i, 0);
        if (x < lo || x >= -lo) continue;
        counts[static_cast<int>((x - lo) / width)] += 1;
      }
      for (int b = 0; b < bins; ++b)
        hist_csv += csv_row({lo + (b + 0.5) * width, static_cast<double>(counts[b])}) + "\n";
    }
    ctx.write("histogram.csv", hist_csv);
  } else {
    throw std::invalid_argument("unknown moments suite: " + suite);
  }
  ctx.write("report.json", report.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------- estimate-kernel

int run_estimate_kernel(const Json& cfg, RunContext& ctx, uint64_t seed) {
  std::string mode = cfg.value("mode", std::string("separation"));
  if (mode == "separation") {
    int n = cfg.value("n", 3);
    int m = cfg.value("m", 1);
    int64_t budget = cfg.value("budget", 1200);
    int64_t repeats = cfg.value("repeats", 2000);
    SeparationReport rep = separation_experiment(n, m, budget, repeats, seed);
    Json report = {{"repeats", rep.repeats},
                   {"threshold", rep.threshold},
                   {"indirect_exceed_frequency", rep.indirect_exceed_frequency},
                   {"indirect_exceed_ci", {rep.indirect_exceed_ci_lo, rep.indirect_exceed_ci_hi}},
                   {"hoeffding_envelope", rep.hoeffding_envelope},
                   {"direct_within_envelope_frequency", rep.direct_within_envelope_frequency},
                   {"direct_error_quantiles", rep.direct_error_quantiles},
                   {"indirect_error_quantiles", rep.indirect_error_quantiles}};
    ctx.write("report.json", report.dump(2) + "\n");
    return 0;
  }
  if (mode == "direct") {
    int n = cfg.value("n", 4);
    int m = cfg.value("m", 2);
    int64_t shots = cfg.value("shots", 100000);
    double t1 = cfg.value("t1", 0.3), t2 = cfg.value("t2", 0.7);
    QuantumState rho = synthetic_state(t1, n, seed + 1);
    QuantumState rho_prime = synthetic_state(t2, n, seed + 2);
    Rng rng = substream(seed, 0);
    auto outcomes = bell_sample(rho, rho_prime, shots, rng);
    double est = direct_estimate(outcomes, m, n);
    double exact = std::pow(2.0, n) * overlap(project_state(rho, m), project_state(rho_prime, m));
    Json report = {{"estimate", est}, {"exact", exact}, {"shots", shots}};
    ctx.write("report.json", report.dump(2) + "\n");
    return 0;
  }
  throw std::invalid_argument("unknown estimate-kernel mode: " + mode);
}

// ---------------------------------------------------------------- psd-bench

int run_psd_bench(const Json& cfg, RunContext& ctx, uint64_t seed) {
  int n = cfg.value("n", 8);
  int train_count = cfg.value("train", 10);
  int test_count = cfg.value("test", 100);
  int seeds = cfg.value("seeds", 50);
  std::vector<int64_t> n_obs_grid = cfg.value("n_obs", std::vector<int64_t>{10, 100, 1000, 10000, 100000});
  std::vector<int64_t> n_kappa_grid = cfg.value("n_kappa", std::vector<int64_t>{10, 100, 1000, 10000, 100000});

  std::vector<double> all_t = linspace(0.0, 2.0 * M_PI, train_count + test_count);
  std::vector<int64_t> train_idx, test_idx;
  int stride = (train_count + test_count) / train_count;
  for (int i = 0; i < train_count + test_count; ++i) {
    if (i % stride == 0 && static_cast<int>(train_idx.size()) < train_count)
      train_idx.push_back(i);
    else
      test_idx.push_back(i);
  }
  BenchRegressionTask task = make_bench_regression_task(n, all_t, cfg.value("unitary_seed", seed + 1));

  std::vector<std::string> methods = cfg.value(
      "methods", std::vector<std::string>{"none", "clip", "shift_min", "shift_wigner"});
  std::string csv = "n_obs,n_kappa,method,mean_mse\n";
  for (int64_t n_obs : n_obs_grid) {
    for (int64_t n_kappa : n_kappa_grid) {
      std::map<std::string, double> sums;
      for (int s = 0; s < seeds; ++s) {
        auto mses = psd_bench_trial(task, train_idx, test_idx, n_obs, n_kappa,
                                    splitmix64(seed) + s);
        for (const auto& [k, v] : mses) sums[k] += v;
      }
      for (const std::string& method : methods) {
        auto it = sums.find(method);
        if (it == sums.end()) throw std::invalid_argument("unknown repair method: " + method);
        csv += std::to_string(n_obs) + "," + std::to_string(n_kappa) + "," + method + "," +
               format_double(it->second / seeds) + "\n";
      }
    }
  }
  ctx.write("mse.csv", csv);
  return 0;
}

// ---------------------------------------------------------------- datasets

int run_datasets(const Json& cfg, RunContext& ctx, uint64_t seed) {
  std::string name = cfg.at("name").get<std::string>();
  Json manifest = Json::array();
  if (name == "synthetic_b1" || name == "synthetic_2d") {
    int n = cfg.at("n").get<int>();
    uint64_t dseed = cfg.value("dataset_seed", seed);
    for (const auto& t : cfg.at("points")) {
      Json entry = {{"constructor", name},
                    {"parameters", {{"n", n}, {"layers", name == "synthetic_b1" ? 2 : 1}}},
                    {"seed", dseed},
                    {"label", t}};
      manifest.push_back(entry);
    }
  } else if (name == "xxx") {
    int n = cfg.at("n").get<int>();
    for (const auto& r : cfg.at("points")) {
      manifest.push_back({{"constructor", "xxx_ground_state"},
                          {"parameters", {{"n", n}, {"J1", r}, {"J2", 1.0}}},
                          {"seed", 0},
                          {"label", r}});
    }
  } else {
    throw std::invalid_argument("unknown dataset: " + name);
  }
  ctx.write("manifest.json", manifest.dump(2) + "\n");
  return 0;
}

}  // namespace

int run(const Json& config, const std::string& out_dir) {
  auto start = std::chrono::steady_clock::now();
  std::string task;
  uint64_t seed = 0;
  try {
    task = config.at("task").get<std::string>();
    if (!config.contains("seed")) throw std::invalid_argument("seed is mandatory");
    seed = config.at("seed").get<uint64_t>();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  RunContext ctx;
  std::string hash = config_hash(config);
  ctx.dir = fs::path(out_dir) / (task + "-" + hash);
  std::error_code ec;
  fs::create_directories(ctx.dir, ec);

  int code = 0;
  try {
    if (task == "regress") code = run_regress(config, ctx, seed);
    else if (task == "classify") code = run_classify(config, ctx, seed);
    else if (task == "bo") code = run_bo(config, ctx, seed);
    else if (task == "verify-moments") code = run_verify_moments(config, ctx, seed);
    else if (task == "estimate-kernel") code = run_estimate_kernel(config, ctx, seed);
    else if (task == "psd-bench") code = run_psd_bench(config, ctx, seed);
    else if (task == "datasets") code = run_datasets(config, ctx, seed);
    else {
      std::cerr << "unknown task: " << task << "\n";
      return 2;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }

  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Json manifest = {{"task", task},
                   {"config", config},
                   {"config_hash", hash},
                   {"seed", seed},
                   {"wall_time_s", wall},
                   {"outputs", ctx.manifest_outputs},
                   {"version", "0.1.0"}};
  write_text_file((ctx.dir / "run_manifest.json").string(), manifest.dump(2) + "\n");
  std::cout << ctx.dir.string() << "\n";
  return code;
}

}  // namespace matchgp::tasks
